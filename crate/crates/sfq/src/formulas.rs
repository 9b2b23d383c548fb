//! Closed-form predictions for vanishing probabilities and value
//! distributions, plus exact quasi-polynomial fitting.
//!
//! `matching_predictions` returns every family rule that applies to a
//! shape, in a fixed priority order; overlapping rules must agree and the
//! harness asserts that rather than trusting priority.

use std::collections::BTreeMap;


use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::partitions::{compositions, divisors, gcd, moebius, Partition};


fn bi(n: u64) -> BigInt {
    BigInt::from(n)
}

fn qpow(q: u64, e: u32) -> BigInt {
    bi(q).pow(e)
}

fn rat(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

pub fn one_over_q(q: u64) -> BigRational {
    rat(BigInt::one(), bi(q))
}

/// |GL_k(F_q)| = prod_{j=0}^{k-1} (q^k - q^j).
pub fn gl_order(k: u32, q: u64) -> BigInt {
    let qk = qpow(q, k);
    (0..k).map(|j| &qk - qpow(q, j)).product()
}

/// 1 - |GL_k|/q^(k^2): vanishing probability when all entries of the k x k
/// matrix are distinct free variables.
pub fn far_apart_value(k: u32, q: u64) -> BigRational {
    BigRational::one() - rat(gl_order(k, q), qpow(q, k * k))
}

/// (q^2 + q - 1) / q^3.
pub fn q2q1_over_q3(q: u64) -> BigRational {
    rat(qpow(q, 2) + bi(q) - BigInt::one(), qpow(q, 3))
}

pub fn quasi_4422(q: u64) -> BigRational {
    let extra = if q % 2 == 0 {
        qpow(q, 2) - bi(q)
    } else {
        qpow(q, 2) - bi(q) + BigInt::one()
    };
    rat(qpow(q, 4) + (bi(q) - BigInt::one()) * extra, qpow(q, 5))
}

pub fn quasi_4433(q: u64) -> BigRational {
    let extra = match q % 3 {
        0 => qpow(q, 3),
        1 => qpow(q, 3) - BigInt::one(),
        _ => qpow(q, 3) + BigInt::one(),
    };
    rat(qpow(q, 5) + (bi(q) - BigInt::one()) * extra, qpow(q, 6))
}

pub fn quasi_4432(q: u64) -> BigRational {
    let extra = if q % 2 == 0 {
        qpow(q, 2) + bi(q) - BigInt::one()
    } else {
        qpow(q, 2) + bi(q) - bi(2)
    };
    rat(qpow(q, 4) + (bi(q) - BigInt::one()) * extra, qpow(q, 5))
}

/// Exactly one row gap equal to k - 2, the rest at least k - 1, last part
/// at least k: one repeated variable in an otherwise free matrix.
pub fn one_narrow_gap_value(k: u32, q: u64) -> BigRational {
    let kk = k * k - 2 * k + 2;
    let head = qpow(q, 2 * k - 2) - qpow(q, k - 1) - qpow(q, k - 2) + BigInt::one();
    let tail: BigInt = (0..k.saturating_sub(2))
        .map(|i| qpow(q, k - 2) - qpow(q, i))
        .product();
    rat(qpow(q, kk) - head * tail, qpow(q, kk))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub rule: &'static str,
    pub value: BigRational,
    pub conjecture: bool,
}

impl Prediction {
    fn proven(rule: &'static str, value: BigRational) -> Self {
        debug_assert!(!value.is_negative() && value <= BigRational::one());
        Prediction {
            rule,
            value,
            conjecture: false,
        }
    }
}

fn gaps(parts: &[u32]) -> Vec<u32> {
    parts.windows(2).map(|w| w[0] - w[1]).collect()
}

/// Every known closed form that covers the shape, in priority order:
/// the 1/q families first, then the explicit quasi-polynomials, then the
/// (q^2+q-1)/q^3 families, then the free-matrix GL forms.
pub fn matching_predictions(shape: &Partition, q: u64) -> Vec<Prediction> {
    let mut out = Vec::new();
    let parts = shape.parts();
    if parts.is_empty() {
        return out;
    }
    let c = shape.classify();
    let k = parts.len() as u32;
    if c.hook {
        out.push(Prediction::proven("hook", one_over_q(q)));
    }
    if c.rectangle {
        out.push(Prediction::proven("rectangle", one_over_q(q)));
    }
    if c.staircase {
        out.push(Prediction::proven("staircase", one_over_q(q)));
    }
    if parts == [4, 4, 2, 2] {
        out.push(Prediction::proven("quasi-4422", quasi_4422(q)));
    }
    if parts == [4, 4, 3, 3] {
        out.push(Prediction::proven("quasi-4433", quasi_4433(q)));
    }
    if parts == [4, 4, 3, 2] {
        out.push(Prediction::proven("quasi-4432", quasi_4432(q)));
    }
    // (a, a-1, a-2) with a >= 5
    if k == 3 && gaps(parts) == [1, 1] && parts[0] >= 5 {
        out.push(Prediction::proven("three-consecutive", q2q1_over_q3(q)));
    }
    // (a, b, 1^m) with b >= 2 and a != b + m
    if k >= 2 && parts[1] >= 2 && parts[2..].iter().all(|&x| x == 1) {
        let m = k - 2;
        if parts[0] != parts[1] + m {
            out.push(Prediction::proven("thick-hook", q2q1_over_q3(q)));
        }
    }
    // (a^m, 1^n) with a, m > 1 and n >= 1
    if parts[0] > 1 {
        let m = parts.iter().take_while(|&&x| x == parts[0]).count() as u32;
        if m > 1 && m < k && parts[m as usize..].iter().all(|&x| x == 1) {
            out.push(Prediction::proven("flat-hook", q2q1_over_q3(q)));
        }
    }
    // all gaps >= k - 1: no constants or repeats among the entries
    if gaps(parts).iter().all(|&g| g >= k - 1) {
        if parts[k as usize - 1] >= k {
            out.push(Prediction::proven("far-apart", far_apart_value(k, q)));
        } else {
            out.push(Prediction::proven(
                "far-apart-short",
                far_apart_value(k - 1, q),
            ));
        }
    }
    // exactly one gap of k - 2, the rest >= k - 1, last part >= k
    if k >= 2 && parts[k as usize - 1] >= k {
        let gs = gaps(parts);
        let narrow = gs.iter().filter(|&&g| g == k - 2).count();
        if narrow == 1 && gs.iter().all(|&g| g == k - 2 || g >= k - 1) {
            out.push(Prediction::proven(
                "one-narrow-gap",
                one_narrow_gap_value(k, q),
            ));
        }
    }
    out
}

/// First matching rule, or None when no family covers the shape.
pub fn predicted_prob_zero(shape: &Partition, q: u64) -> Option<Prediction> {
    matching_predictions(shape, q).into_iter().next()
}

/// Conjectured value for 2-staircases (2n, 2n-2, ..., 2).
pub fn two_staircase_conjecture(q: u64) -> Prediction {
    Prediction {
        rule: "two-staircase-conjecture",
        value: q2q1_over_q3(q),
        conjecture: true,
    }
}

/// Conjectured upper bound 1 - |GL_k|/q^(k^2) for a shape with k parts.
pub fn upper_bound_conjecture(shape: &Partition, q: u64) -> BigRational {
    far_apart_value(shape.num_parts() as u32, q)
}

/// Number of rows of the h-basis Jacobi-Trudi matrix that survive psi:
/// rows without a constant entry, i.e. rows with lambda_i >= i.
pub fn psi_size(shape: &Partition) -> usize {
    shape
        .parts()
        .iter()
        .enumerate()
        .filter(|&(i, &p)| p as usize >= i + 1)
        .count()
}

/// 1/q + n(n-1)/q^2 with n the size of psi of the h-basis matrix: an upper
/// bound on the vanishing probability of any shape.
pub fn asymptotic_bound(shape: &Partition, q: u64) -> BigRational {
    let n = psi_size(shape) as u64;
    one_over_q(q) + rat(bi(n * (n - 1)), qpow(q, 2))
}

/// g_b(d) = d when d divides (q-1)/ord(b), else 0, and its Moebius
/// inverse f_b; these govern the distribution of nonzero rectangle values.
pub struct GFunction {
    q: u64,
    ord_b: u64,
}

impl GFunction {
    pub fn new(field: &Field, b: u64) -> Result<Self> {
        if b == 0 {
            return Err(Error::ZeroTarget);
        }
        Ok(GFunction {
            q: field.q(),
            ord_b: field.mult_order(b)?,
        })
    }

    pub fn g(&self, d: u64) -> u64 {
        debug_assert!(d >= 1);
        if ((self.q - 1) / self.ord_b) % d == 0 {
            d
        } else {
            0
        }
    }

    pub fn f(&self, d: u64) -> i64 {
        divisors(d)
            .iter()
            .map(|&e| moebius(e) * self.g(d / e) as i64)
            .sum()
    }
}

/// P(rectangle (a^n) determinant = b), b nonzero, as the sum over all
/// compositions of n weighted by (q-1)^(k-1) g_b(gcd of parts and q-1).
pub fn rect_value_prob_compositions(a: u32, n: u32, field: &Field, b: u64) -> Result<BigRational> {
    if a < n || n == 0 {
        return Err(Error::Config(format!(
            "rectangle ({a}^{n}) must have a >= n >= 1"
        )));
    }
    let gf = GFunction::new(field, b)?;
    let q = field.q();
    let mut num = BigInt::zero();
    for comp in compositions(n) {
        let k = comp.0.len();
        let mut d = q - 1;
        for &part in &comp.0 {
            d = gcd(d, part as u64);
        }
        let g = gf.g(d);
        if g != 0 {
            num += (bi(q) - BigInt::one()).pow(k as u32 - 1) * bi(g);
        }
    }
    Ok(rat(num, qpow(q, n)))
}

/// The same probability as a Moebius sum over divisors of gcd(q-1, n):
/// sum of f_b(d) / q^(n(d-1)/d + 1).
pub fn rect_value_prob_moebius(a: u32, n: u32, field: &Field, b: u64) -> Result<BigRational> {
    if a < n || n == 0 {
        return Err(Error::Config(format!(
            "rectangle ({a}^{n}) must have a >= n >= 1"
        )));
    }
    let gf = GFunction::new(field, b)?;
    let q = field.q();
    let mut sum = BigRational::zero();
    for d in divisors(gcd(q - 1, n as u64)) {
        let fb = gf.f(d);
        if fb == 0 {
            continue;
        }
        let e = (n as u64 * (d - 1) / d + 1) as u32;
        sum += rat(BigInt::from(fb), qpow(q, e));
    }
    Ok(sum)
}

/// One polynomial per residue class of q, low coefficients first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPoly {
    pub modulus: u64,
    pub classes: BTreeMap<u64, Vec<BigRational>>,
}

impl QuasiPoly {
    pub fn eval(&self, q: u64) -> Option<BigRational> {
        let coeffs = self.classes.get(&(q % self.modulus))?;
        let mut acc = BigRational::zero();
        let x = rat(bi(q), BigInt::one());
        for c in coeffs.iter().rev() {
            acc = acc * &x + c;
        }
        Some(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FitResult {
    Fit(QuasiPoly),
    NoFit(String),
}

fn eval_poly(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Exact Newton interpolation; returns monomial coefficients, low first,
/// with trailing zeros trimmed.
fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.to_vec();
    let mut newton = Vec::with_capacity(n);
    newton.push(dd[0].clone());
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - level];
            dd[i] = num / den;
        }
        newton.push(dd[level].clone());
    }
    let mut out = vec![BigRational::zero(); n];
    let mut basis = vec![BigRational::one()];
    for (i, c) in newton.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            out[j] += c * b;
        }
        if i + 1 < n {
            // basis *= (x - xs[i])
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (j, b) in basis.iter().enumerate() {
                next[j + 1] += b;
                next[j] -= b * &xs[i];
            }
            basis = next;
        }
    }
    while out.len() > 1 && out.last().map_or(false, |c| c.is_zero()) {
        out.pop();
    }
    out
}

fn group_by_class(
    points: &[(u64, BigInt)],
    modulus: u64,
) -> BTreeMap<u64, Vec<(u64, BigInt)>> {
    let mut classes: BTreeMap<u64, Vec<(u64, BigInt)>> = BTreeMap::new();
    for (q, v) in points {
        classes.entry(q % modulus).or_default().push((*q, v.clone()));
    }
    for pts in classes.values_mut() {
        pts.sort_by_key(|&(q, _)| q);
        pts.dedup_by_key(|p| p.0);
    }
    classes
}

/// Per-residue-class exact interpolation with degree bound. Points beyond
/// degree+1 in a class are held out and validated; a mismatch yields
/// NoFit. A nonempty class with fewer than degree+1 points is an error.
pub fn quasipoly_fit(points: &[(u64, BigInt)], modulus: u64, degree: usize) -> Result<FitResult> {
    let mut classes = BTreeMap::new();
    for (class, pts) in group_by_class(points, modulus) {
        let need = degree + 1;
        if pts.len() < need {
            return Err(Error::InsufficientPoints {
                class,
                modulus,
                have: pts.len(),
                need,
            });
        }
        let xs: Vec<BigRational> = pts[..need]
            .iter()
            .map(|&(q, _)| rat(bi(q), BigInt::one()))
            .collect();
        let ys: Vec<BigRational> = pts[..need]
            .iter()
            .map(|(_, v)| rat(v.clone(), BigInt::one()))
            .collect();
        let coeffs = interpolate(&xs, &ys);
        for (q, v) in &pts[need..] {
            let want = rat(v.clone(), BigInt::one());
            if eval_poly(&coeffs, &rat(bi(*q), BigInt::one())) != want {
                return Ok(FitResult::NoFit(format!(
                    "held-out point q={q} in class {class} mod {modulus} does not interpolate"
                )));
            }
        }
        classes.insert(class, coeffs);
    }
    Ok(FitResult::Fit(QuasiPoly { modulus, classes }))
}

/// Fits zero-count data count(q) for a fixed shape, using what the bounds
/// force: on each residue class the count, if polynomial, is monic of
/// degree exactly total_degree (the probability is 1/q + O(1/q^2)) and
/// divisible by a fixed power of q. Stripping the q-power and the leading
/// term leaves an interpolation that the small prime-power data sets can
/// actually pin down.
pub fn fit_count_quasipoly(
    points: &[(u64, BigUint)],
    modulus: u64,
    total_degree: u32,
) -> Result<FitResult> {
    let int_points: Vec<(u64, BigInt)> = points
        .iter()
        .map(|(q, v)| (*q, BigInt::from(v.clone())))
        .collect();
    let mut classes = BTreeMap::new();
    for (class, pts) in group_by_class(&int_points, modulus) {
        // common q-adic valuation across the class
        let mut s = total_degree;
        for (q, v) in &pts {
            let mut val = 0u32;
            let mut rest = v.clone();
            let qb = bi(*q);
            while val < s {
                let (d, r) = num_integer::Integer::div_rem(&rest, &qb);
                if r.is_zero() && !d.is_zero() {
                    rest = d;
                    val += 1;
                } else {
                    break;
                }
            }
            s = s.min(val);
        }
        let d = (total_degree - s) as usize;
        // residual g with count = q^s * g, g monic of degree d
        let mut shifted = Vec::with_capacity(pts.len());
        for (q, v) in &pts {
            let qs = qpow(*q, s);
            let (g, r) = num_integer::Integer::div_rem(v, &qs);
            if !r.is_zero() {
                return Ok(FitResult::NoFit(format!(
                    "count at q={q} is not divisible by q^{s}"
                )));
            }
            shifted.push((*q, g - qpow(*q, d as u32)));
        }
        if pts.len() < d.max(1) {
            return Err(Error::InsufficientPoints {
                class,
                modulus,
                have: pts.len(),
                need: d.max(1),
            });
        }
        let low = if d == 0 {
            Vec::new()
        } else {
            let xs: Vec<BigRational> = shifted[..d]
                .iter()
                .map(|&(q, _)| rat(bi(q), BigInt::one()))
                .collect();
            let ys: Vec<BigRational> = shifted[..d]
                .iter()
                .map(|(_, v)| rat(v.clone(), BigInt::one()))
                .collect();
            interpolate(&xs, &ys)
        };
        if low.len() > d {
            return Ok(FitResult::NoFit(format!(
                "residual in class {class} needs degree {} > {}",
                low.len() - 1,
                d.saturating_sub(1)
            )));
        }
        for (q, v) in &shifted[d.min(shifted.len())..] {
            let want = rat(v.clone(), BigInt::one());
            if eval_poly(&low, &rat(bi(*q), BigInt::one())) != want {
                return Ok(FitResult::NoFit(format!(
                    "held-out point q={q} in class {class} mod {modulus} does not interpolate"
                )));
            }
        }
        // reassemble: coefficients of q^s * (low(q) + q^d)
        let mut coeffs = vec![BigRational::zero(); s as usize];
        let mut padded = low;
        padded.resize(d, BigRational::zero());
        coeffs.extend(padded);
        coeffs.push(BigRational::one());
        classes.insert(class, coeffs);
    }
    Ok(FitResult::Fit(QuasiPoly { modulus, classes }))
}

/// Expanded zero-count polynomials for (4,4,2,2) over q^7, one per parity
/// of q; derived from the printed branch numerators times q^2.
pub fn quasi_4422_count_coeffs(parity: u64) -> Vec<BigRational> {
    let ints: Vec<i64> = if parity == 0 {
        vec![0, 0, 0, 1, -2, 1, 1]
    } else {
        vec![0, 0, -1, 2, -2, 1, 1]
    };
    ints.iter()
        .map(|&c| rat(BigInt::from(c), BigInt::one()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{fast_distribution, CountConfig};
    use crate::field::make_field;
    use crate::partitions::shapes_with_max_label;
    use crate::schur::{jt_matrix, psi, Basis};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn gl_order_examples() {
        assert_eq!(gl_order(1, 7), bi(6));
        assert_eq!(gl_order(2, 2), bi(6));
        assert_eq!(gl_order(2, 3), bi(48));
        assert_eq!(gl_order(4, 2), bi(20160));
    }

    #[test]
    fn predicted_examples() {
        let pr = predicted_prob_zero(&p("3,1,1"), 7).unwrap();
        assert_eq!((pr.rule, pr.value), ("hook", r(1, 7)));

        let pr = predicted_prob_zero(&p("4,4,2,2"), 3).unwrap();
        assert_eq!((pr.rule, pr.value), ("quasi-4422", r(95, 243)));
        assert_eq!(predicted_prob_zero(&p("4,4,2,2"), 2).unwrap().value, r(9, 16));

        let pr = predicted_prob_zero(&p("7,5,3"), 2).unwrap();
        assert_eq!(pr.rule, "far-apart");
        assert_eq!(pr.value, BigRational::one() - r(7 * 6 * 4, 512));

        let pr = predicted_prob_zero(&p("7,5,2"), 2).unwrap();
        assert_eq!(pr.rule, "far-apart-short");
        assert_eq!(pr.value, q2q1_over_q3(2));

        let pr = predicted_prob_zero(&p("7,6,3"), 2).unwrap();
        assert_eq!(pr.rule, "one-narrow-gap");
        assert_eq!(pr.value, r(21, 32));

        assert_eq!(predicted_prob_zero(&p("4,3,1"), 2), None);
        // (4,3,1) breaks the (a,b,1^m) pattern: a = b + m
        assert!(matching_predictions(&p("4,3,1"), 2).is_empty());
    }

    #[test]
    fn family_rules_cover_expected_shapes() {
        for q in [2u64, 3] {
            for s in ["5,4,3", "3,2,1,1", "2,2,1"] {
                let preds = matching_predictions(&p(s), q);
                assert!(!preds.is_empty(), "{s} should be covered");
                for pr in &preds {
                    assert_eq!(pr.value, q2q1_over_q3(q), "{s} rule {}", pr.rule);
                }
            }
        }
        // two-row rectangle: both rectangle and the k=2 narrow-gap rule hit 1/q
        let preds = matching_predictions(&p("3,3"), 5);
        let rules: Vec<_> = preds.iter().map(|x| x.rule).collect();
        assert!(rules.contains(&"rectangle") && rules.contains(&"one-narrow-gap"));
        assert!(preds.iter().all(|x| x.value == r(1, 5)));
    }

    #[test]
    fn overlapping_rules_agree_everywhere() {
        for q in [2u64, 3, 4, 5] {
            for shape in shapes_with_max_label(7) {
                let preds = matching_predictions(&shape, q);
                for w in preds.windows(2) {
                    assert_eq!(
                        w[0].value, w[1].value,
                        "rules {} and {} disagree on {shape} at q={q}",
                        w[0].rule, w[1].rule
                    );
                }
                for pr in &preds {
                    assert!(pr.value >= one_over_q(q), "{shape} {} below 1/q", pr.rule);
                    assert!(
                        pr.value <= upper_bound_conjecture(&shape, q),
                        "{shape} {} above the GL bound",
                        pr.rule
                    );
                }
            }
        }
    }

    #[test]
    fn quasi_branches_match_printed_count_tables() {
        // (4,4,3,3) and (4,4,3,2): published zero counts over q^7
        let table_4433: [(u64, u64); 8] = [
            (2, 82),
            (3, 891),
            (4, 4852),
            (5, 18145),
            (7, 132013),
            (8, 290872),
            (9, 583929),
            (11, 1918081),
        ];
        for (q, count) in table_4433 {
            let expect = rat(BigInt::from(count), qpow(q, 7));
            assert_eq!(quasi_4433(q), expect, "4433 at q={q}");
        }
        let table_4432: [(u64, u64); 8] = [
            (2, 84),
            (3, 909),
            (4, 5008),
            (5, 18425),
            (7, 133525),
            (8, 293952),
            (9, 588465),
            (11, 1928861),
        ];
        for (q, count) in table_4432 {
            let expect = rat(BigInt::from(count), qpow(q, 7));
            assert_eq!(quasi_4432(q), expect, "4432 at q={q}");
        }
    }

    #[test]
    fn psi_size_matches_actual_psi() {
        let f = make_field(3).unwrap();
        for shape in shapes_with_max_label(7) {
            let m = jt_matrix(&shape, Basis::H, &f);
            let out = psi(&m).unwrap();
            assert_eq!(out.matrix.size(), psi_size(&shape), "at {shape}");
        }
    }

    #[test]
    fn asymptotic_bound_examples() {
        assert_eq!(asymptotic_bound(&p("3,1,1"), 5), r(1, 5));
        assert_eq!(asymptotic_bound(&p("4,4,2,2"), 3), r(1, 3) + r(2, 9));
        assert_eq!(asymptotic_bound(&p("3,3,3"), 2), r(1, 2) + r(6, 4));
    }

    #[test]
    fn rect_value_examples() {
        let f3 = make_field(3).unwrap();
        assert_eq!(rect_value_prob_compositions(2, 2, &f3, 1).unwrap(), r(4, 9));
        assert_eq!(rect_value_prob_compositions(2, 2, &f3, 2).unwrap(), r(2, 9));
        assert_eq!(rect_value_prob_moebius(2, 2, &f3, 1).unwrap(), r(4, 9));
        assert_eq!(rect_value_prob_moebius(2, 2, &f3, 2).unwrap(), r(2, 9));
        for q in [2u64, 3, 4, 5, 7] {
            let f = make_field(q).unwrap();
            for b in 1..q {
                assert_eq!(
                    rect_value_prob_compositions(1, 1, &f, b).unwrap(),
                    one_over_q(q)
                );
            }
        }
        assert!(rect_value_prob_compositions(2, 2, &f3, 0).is_err());
    }

    #[test]
    fn composition_and_moebius_forms_agree() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = make_field(q).unwrap();
            for n in 1..=8u32 {
                let mut total = one_over_q(q);
                for b in 1..q {
                    let a = rect_value_prob_compositions(n + 7, n, &f, b).unwrap();
                    let m = rect_value_prob_moebius(n + 7, n, &f, b).unwrap();
                    assert_eq!(a, m, "q={q} n={n} b={b}");
                    total += a;
                }
                assert_eq!(total, BigRational::one(), "conservation q={q} n={n}");
            }
        }
    }

    #[test]
    fn gcd_one_gives_uniform_nonzero() {
        for (q, n) in [(3u64, 3u32), (4, 4), (5, 3), (7, 5), (8, 4)] {
            assert_eq!(gcd(q - 1, n as u64), 1);
            let f = make_field(q).unwrap();
            for b in 1..q {
                assert_eq!(
                    rect_value_prob_moebius(n + 8, n, &f, b).unwrap(),
                    one_over_q(q)
                );
            }
        }
    }

    #[test]
    fn narrow_gap_at_k2_simplifies_to_rectangle() {
        for q in [2u64, 3, 5, 7] {
            assert_eq!(one_narrow_gap_value(2, q), one_over_q(q));
        }
    }

    #[test]
    fn quasipoly_fit_basic() {
        // constant data
        let pts: Vec<(u64, BigInt)> = [2u64, 3, 5, 7].iter().map(|&q| (q, bi(9))).collect();
        match quasipoly_fit(&pts, 1, 0).unwrap() {
            FitResult::Fit(qp) => {
                assert_eq!(qp.classes[&0], vec![r(9, 1)]);
            }
            other => panic!("{other:?}"),
        }
        // a known quadratic with a held-out point
        let pts: Vec<(u64, BigInt)> = [2u64, 3, 5, 7]
            .iter()
            .map(|&q| (q, bi(q * q + 3 * q + 1)))
            .collect();
        match quasipoly_fit(&pts, 1, 2).unwrap() {
            FitResult::Fit(qp) => {
                assert_eq!(qp.classes[&0], vec![r(1, 1), r(3, 1), r(1, 1)]);
                assert_eq!(qp.eval(11).unwrap(), r(121 + 33 + 1, 1));
            }
            other => panic!("{other:?}"),
        }
        // held-out validation failure
        let mut pts: Vec<(u64, BigInt)> = [2u64, 3, 5]
            .iter()
            .map(|&q| (q, bi(q * q)))
            .collect();
        pts.push((7, bi(50)));
        assert!(matches!(
            quasipoly_fit(&pts, 1, 2).unwrap(),
            FitResult::NoFit(_)
        ));
        // insufficient points
        assert!(quasipoly_fit(&pts[..2], 1, 2).is_err());
    }

    #[test]
    fn count_fit_recovers_4422_branches() {
        let qs = [2u64, 3, 4, 5, 7, 8, 9];
        let cfg = CountConfig::default();
        let mut pts = Vec::new();
        for &q in &qs {
            let f = make_field(q).unwrap();
            let d = fast_distribution(&p("4,4,2,2"), &f, Basis::H, &cfg).unwrap();
            pts.push((q, BigUint::from(d.count(0))));
        }
        match fit_count_quasipoly(&pts, 2, 6).unwrap() {
            FitResult::Fit(qp) => {
                assert_eq!(qp.classes[&0], quasi_4422_count_coeffs(0));
                assert_eq!(qp.classes[&1], quasi_4422_count_coeffs(1));
            }
            other => panic!("{other:?}"),
        }
    }
}
