//! Exact arithmetic in GF(p^k).
//!
//! Elements are packed as integers in [0, q): the base-p digits of the
//! integer are the coefficients of the residue polynomial, constant
//! coefficient least significant. That makes enumeration of assignment
//! spaces a plain integer counter. Extension arithmetic goes through a
//! precomputed q x q multiplication table for small q; prime fields fall
//! back to modular arithmetic directly.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::partitions::factorize;

const MAX_Q: u64 = 1 << 16;
const TABLE_LIMIT: u64 = 512;

pub struct Field {
    p: u64,
    k: u32,
    q: u64,
    /// Monic modulus of degree k, constant coefficient first (length k+1).
    /// For k = 1 the modulus is x itself, i.e. [0, 1].
    modulus: Vec<u64>,
    mul_table: Option<Box<[u64]>>,
    inv_table: Box<[u64]>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) mod {:?}", self.q, self.modulus)
    }
}

/// Builds GF(q) with the canonical modulus: the monic irreducible whose
/// coefficient vector, read as a base-p integer, is smallest.
pub fn make_field(q: u64) -> Result<Arc<Field>> {
    let (p, k) = prime_power(q)?;
    if k == 1 {
        return Ok(Arc::new(Field::build(p, 1, vec![0, 1])));
    }
    for low in 0..q {
        let mut coeffs = digits(low, p, k as usize);
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            return Ok(Arc::new(Field::build(p, k, coeffs)));
        }
    }
    unreachable!("an irreducible polynomial of degree {k} over Z_{p} always exists");
}

fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q > MAX_Q {
        return Err(Error::FieldTooLarge(q));
    }
    let f = factorize(q);
    if q < 2 || f.len() != 1 {
        let s = f
            .iter()
            .map(|(p, e)| {
                if *e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" * ");
        return Err(Error::NotPrimePower {
            n: q,
            factorization: s,
        });
    }
    Ok((f[0].0, f[0].1))
}

fn digits(mut n: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = n % p;
        n /= p;
    }
    out
}

fn undigits(ds: &[u64], p: u64) -> u64 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of a by b over Z_p; b must be monic. Coefficients low-first.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for i in 0..=db {
                let sub = lead * b[i] % p;
                let idx = shift + i;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
    }
    while r.len() > 1 && *r.last().unwrap() == 0 {
        r.pop();
    }
    r
}

fn is_zero_poly(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Exhaustive trial division by every monic polynomial of degree <= k/2.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    for d in 1..=(k / 2) {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut div = digits(low, p, d);
            div.push(1);
            if is_zero_poly(&poly_rem(f, &div, p)) {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Builds GF(p^k) from an explicit monic modulus (used to check that
    /// the counts do not depend on the modulus choice).
    pub fn with_modulus(p: u64, coeffs: Vec<u64>) -> Result<Arc<Field>> {
        let k = (coeffs.len() - 1) as u32;
        if !crate::partitions::is_prime(p) {
            return Err(Error::NotPrimePower {
                n: p,
                factorization: format!("{:?}", factorize(p)),
            });
        }
        if k == 0 || *coeffs.last().unwrap() != 1 || coeffs.iter().any(|&c| c >= p) {
            return Err(Error::Config(format!(
                "modulus must be monic with coefficients in [0, {p}), got {coeffs:?}"
            )));
        }
        let q = p.pow(k);
        if q > MAX_Q {
            return Err(Error::FieldTooLarge(q));
        }
        if k > 1 && !is_irreducible(&coeffs, p) {
            return Err(Error::ReducibleModulus(format!("{coeffs:?}"), p));
        }
        Ok(Arc::new(Field::build(p, k, coeffs)))
    }

    fn build(p: u64, k: u32, modulus: Vec<u64>) -> Field {
        let q = p.pow(k);
        let mut f = Field {
            p,
            k,
            q,
            modulus,
            mul_table: None,
            inv_table: vec![0; q as usize].into_boxed_slice(),
        };
        if q <= TABLE_LIMIT {
            let mut t = vec![0u64; (q * q) as usize];
            for a in 0..q {
                for b in a..q {
                    let v = f.mul_raw(a, b);
                    t[(a * q + b) as usize] = v;
                    t[(b * q + a) as usize] = v;
                }
            }
            f.mul_table = Some(t.into_boxed_slice());
        }
        let mut inv = vec![0u64; q as usize];
        for a in 1..q {
            inv[a as usize] = f.pow_raw(a, q - 2);
        }
        f.inv_table = inv.into_boxed_slice();
        f
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.q
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else {
            let mut out = 0;
            let mut mult = 1;
            let (mut a, mut b) = (a, b);
            for _ in 0..self.k {
                let s = (a % self.p + b % self.p) % self.p;
                out += s * mult;
                mult *= self.p;
                a /= self.p;
                b /= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if self.k == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else {
            let mut out = 0;
            let mut mult = 1;
            let mut a = a;
            for _ in 0..self.k {
                let d = a % self.p;
                out += if d == 0 { 0 } else { self.p - d } * mult;
                mult *= self.p;
                a /= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.mul_table {
            Some(t) => t[(a * self.q + b) as usize],
            None => self.mul_raw(a, b),
        }
    }

    fn mul_raw(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return a * b % self.p;
        }
        let k = self.k as usize;
        let da = digits(a, self.p, k);
        let db = digits(b, self.p, k);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(k, 0);
        undigits(&r, self.p)
    }

    /// Multiplicative inverse; a must be nonzero.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            Err(Error::DivisionByZero(self.q))
        } else {
            Ok(self.inv_table[a as usize])
        }
    }

    #[inline]
    pub fn inv_unchecked(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.inv_table[a as usize]
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        let mut acc = 1;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn pow_raw(&self, a: u64, e: u64) -> u64 {
        let mut acc = 1;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    /// Least t >= 1 with b^t = 1; divides q - 1.
    pub fn mult_order(&self, b: u64) -> Result<u64> {
        if b == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut t = self.q - 1;
        for (prime, _) in factorize(self.q - 1) {
            while t % prime == 0 && self.pow(b, t / prime) == 1 {
                t /= prime;
            }
        }
        Ok(t)
    }

    /// Embeds a signed integer into the prime subfield.
    pub fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

/// In-place determinant by Gaussian elimination, row-major n x n.
pub fn det_in_place(f: &Field, a: &mut [u64], n: usize) -> u64 {
    let mut det: u64 = 1;
    let mut negate = false;
    for col in 0..n {
        let mut pivot = None;
        for r in col..n {
            if a[r * n + col] != 0 {
                pivot = Some(r);
                break;
            }
        }
        let Some(pr) = pivot else {
            return 0;
        };
        if pr != col {
            for c in col..n {
                a.swap(pr * n + c, col * n + c);
            }
            negate = !negate;
        }
        let pv = a[col * n + col];
        det = f.mul(det, pv);
        let pv_inv = f.inv_unchecked(pv);
        for r in col + 1..n {
            let factor = a[r * n + col];
            if factor == 0 {
                continue;
            }
            let scale = f.mul(factor, pv_inv);
            a[r * n + col] = 0;
            for c in col + 1..n {
                let s = f.mul(scale, a[col * n + c]);
                a[r * n + c] = f.sub(a[r * n + c], s);
            }
        }
    }
    if negate {
        f.neg(det)
    } else {
        det
    }
}
