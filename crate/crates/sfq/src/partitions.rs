//! Integer partitions, the shape families that matter for vanishing
//! probabilities, compositions, and the small amount of multiplicative
//! number theory used by the rectangle value-distribution formulas.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A partition: weakly decreasing positive parts, largest first.
/// The empty partition is allowed and acts as the identity shape.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidPartition(format!(
                    "parts must be weakly decreasing, got {:?}",
                    parts
                )));
            }
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!(
                "parts must be positive, got {:?}",
                parts
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `(b, b, ..., b)` with `n` parts.
    pub fn rectangle(b: u32, n: u32) -> Self {
        Partition {
            parts: vec![b; n as usize],
        }
    }

    /// The staircase `(k, k-1, ..., 1)`.
    pub fn staircase(k: u32) -> Self {
        Partition {
            parts: (1..=k).rev().collect(),
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Largest index among the variables of the h-basis Jacobi-Trudi matrix,
    /// i.e. `lambda_1 + k - 1`. Zero for the empty partition. The e-basis
    /// matrix (built from the transpose) has the same maximum.
    pub fn max_label(&self) -> u32 {
        if self.parts.is_empty() {
            0
        } else {
            self.parts[0] + self.parts.len() as u32 - 1
        }
    }

    /// Column lengths of the Young diagram. An involution.
    pub fn transpose(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0] as usize;
        let mut t = Vec::with_capacity(cols);
        for j in 1..=cols as u32 {
            t.push(self.parts.iter().filter(|&&p| p >= j).count() as u32);
        }
        Partition { parts: t }
    }

    pub fn classify(&self) -> ShapeClass {
        let p = &self.parts;
        if p.is_empty() {
            return ShapeClass::default();
        }
        let hook = p[1..].iter().all(|&x| x == 1);
        let rectangle = p.iter().all(|&x| x == p[0]);
        let k = p.len() as u32;
        let staircase = p
            .iter()
            .enumerate()
            .all(|(i, &x)| x == k - i as u32);
        // (a^n, b^m) with a > b >= 1; the a = b case is already a rectangle.
        let distinct: Vec<u32> = {
            let mut d = p.clone();
            d.dedup();
            d
        };
        let fattened_hook = distinct.len() == 2;
        ShapeClass {
            hook,
            rectangle,
            staircase,
            fattened_hook,
        }
    }

    /// Hook, rectangle or staircase: exactly the shapes with vanishing
    /// probability 1/q.
    pub fn is_exact_family(&self) -> bool {
        let c = self.classify();
        c.hook || c.rectangle || c.staircase
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts "4,4,2,2" and the exponent shorthand "4^2,2^2".
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = Vec::new();
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        for piece in s.split(',') {
            let piece = piece.trim();
            let (base, rep) = match piece.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim()),
                None => (piece, "1"),
            };
            let b: u32 = base
                .parse()
                .map_err(|_| Error::InvalidPartition(format!("bad part {piece:?}")))?;
            let e: u32 = rep
                .parse()
                .map_err(|_| Error::InvalidPartition(format!("bad exponent {piece:?}")))?;
            if e == 0 {
                return Err(Error::InvalidPartition(format!("zero exponent in {piece:?}")));
            }
            for _ in 0..e {
                parts.push(b);
            }
        }
        Partition::new(parts)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ShapeClass {
    pub hook: bool,
    pub rectangle: bool,
    pub staircase: bool,
    pub fattened_hook: bool,
}

/// A composition: ordered positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(pub Vec<u32>);

impl Composition {
    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// All compositions of `n` in lexicographically ascending order.
/// There are 2^(n-1) of them; `n = 0` yields the single empty composition.
pub fn compositions(n: u32) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition(Vec::new())];
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if remaining == 0 {
            out.push(Composition(cur.clone()));
            return;
        }
        for first in 1..=remaining {
            cur.push(first);
            rec(remaining - first, cur, out);
            cur.pop();
        }
    }
    rec(n, &mut cur, &mut out);
    out
}

/// All partitions of `n`, largest part first, in lexicographically
/// descending order of parts.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(remaining: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        let top = remaining.min(max);
        for next in (1..=top).rev() {
            cur.push(next);
            rec(remaining - next, next, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// All nonempty partitions whose h-basis Jacobi-Trudi matrix uses only
/// variables x_1..x_l, i.e. lambda_1 + parts - 1 <= l. Sorted by
/// (size, parts) for reproducible scan order.
pub fn shapes_with_max_label(l: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    for k in 1..=l {
        let max_first = l + 1 - k;
        let mut cur = Vec::new();
        fn rec_desc(rows_left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rows_left == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for next in (1..=max).rev() {
                cur.push(next);
                rec_desc(rows_left - 1, next, cur, out);
                cur.pop();
            }
        }
        rec_desc(k, max_first, &mut cur, &mut out);
    }
    out.sort_by(|a, b| (a.size(), &a.parts).cmp(&(b.size(), &b.parts)));
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Prime factorization by trial division; all inputs here are < 10^6.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// Classical Moebius function.
pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1, "moebius requires n >= 1");
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    assert!(n >= 1, "totient requires n >= 1");
    let mut t = n;
    for (p, _) in factorize(n) {
        t = t / p * (p - 1);
    }
    t
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p("4,2,1").transpose(), p("3,2,1,1"));
        assert_eq!(p("1").transpose(), p("1"));
        assert_eq!(p("5,5").transpose(), p("2,2,2,2,2"));
    }

    #[test]
    fn transpose_is_involution_up_to_size_12() {
        for n in 1..=12 {
            for lam in partitions_of(n) {
                assert_eq!(lam.transpose().transpose(), lam, "at {lam}");
            }
        }
    }

    #[test]
    fn classify_examples() {
        let c = p("3,1,1").classify();
        assert!(c.hook && !c.rectangle && !c.staircase);
        let c = p("3,2,1").classify();
        assert!(c.staircase && !c.hook && !c.rectangle);
        let c = p("1").classify();
        assert!(c.hook && c.rectangle && c.staircase && !c.fattened_hook);
        let c = p("4,4,2,2").classify();
        assert!(c.fattened_hook && !c.hook && !c.rectangle && !c.staircase);
        // degenerate a = b collapses to a rectangle, not a fattened hook
        let c = p("3,3").classify();
        assert!(c.rectangle && !c.fattened_hook);
        assert_eq!(Partition::empty().classify(), ShapeClass::default());
    }

    #[test]
    fn hook_and_rectangle_iff_single_row_or_column() {
        for n in 1..=10 {
            for lam in partitions_of(n) {
                let c = lam.classify();
                let single = lam.num_parts() == 1 || lam.parts().iter().all(|&x| x == 1);
                assert_eq!(c.hook && c.rectangle, single, "at {lam}");
            }
        }
    }

    #[test]
    fn compositions_examples() {
        let c3: Vec<String> = compositions(3).iter().map(|c| c.to_string()).collect();
        assert_eq!(c3, vec!["(1,1,1)", "(1,2)", "(2,1)", "(3)"]);
        assert_eq!(compositions(1).len(), 1);
        assert_eq!(compositions(5).len(), 16);
        assert_eq!(compositions(0), vec![Composition(vec![])]);
    }

    #[test]
    fn composition_count_is_2_pow_n_minus_1() {
        for n in 1..=15u32 {
            let cs = compositions(n);
            assert_eq!(cs.len(), 1 << (n - 1));
            assert!(cs.iter().all(|c| c.sum() == n));
        }
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius(4), 0);
        assert_eq!(moebius(30), -1);
        assert_eq!(moebius(1), 1);
    }

    #[test]
    fn totient_examples() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(6), 2);
        // direct count of coprime residues
        let direct = (1..=9).filter(|&k| gcd(k, 9) == 1).count() as u64;
        assert_eq!(totient(9), direct);
        assert_eq!(totient(9), 6);
    }

    #[test]
    fn moebius_inversion_recovers_totient() {
        for n in 1..=1000u64 {
            let sum: i64 = divisors(n)
                .iter()
                .map(|&d| moebius(d) * (n / d) as i64)
                .sum();
            assert_eq!(sum, totient(n) as i64, "at n = {n}");
        }
    }

    #[test]
    fn parse_accepts_exponent_shorthand() {
        assert_eq!(p("4^2,2^2"), p("4,4,2,2"));
        assert_eq!(p(" 3 , 1 "), p("3,1"));
        assert_eq!(p("4,4,2,2").to_string(), "4,4,2,2");
        assert!("2,3".parse::<Partition>().is_err());
        assert!("0".parse::<Partition>().is_err());
    }

    #[test]
    fn shape_enumeration_matches_filter() {
        for l in 1..=7u32 {
            let fast = shapes_with_max_label(l);
            let bound = (l + 1) * (l + 1) / 4;
            let mut slow = Vec::new();
            for n in 1..=bound {
                for lam in partitions_of(n) {
                    if lam.max_label() <= l {
                        slow.push(lam);
                    }
                }
            }
            assert_eq!(fast.len(), slow.len(), "at max label {l}");
            let set: std::collections::HashSet<_> = fast.iter().cloned().collect();
            assert!(slow.iter().all(|s| set.contains(s)));
        }
    }

    #[test]
    fn staircase_and_rectangle_builders() {
        assert_eq!(Partition::staircase(4), p("4,3,2,1"));
        assert_eq!(Partition::rectangle(3, 2), p("3,3"));
        assert_eq!(Partition::staircase(0), Partition::empty());
    }
}
