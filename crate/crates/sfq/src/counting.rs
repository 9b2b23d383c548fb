//! The exact probability engine: enumerate all assignments of x_1..x_m to
//! field values and tally where each Schur determinant lands.
//!
//! `brute_force_distribution` walks the full q^m space and is the
//! definitional oracle. `fast_distribution` peels off the top-label
//! variable: the determinant is affine in it (the top variable occurs in
//! exactly one matrix cell), so each fiber of q assignments either spreads
//! one hit per target or puts all q on a single value. Everything is an
//! exact integer count; the sample space is split into contiguous counter
//! ranges per worker and tallies are merged by summation, so results are
//! identical for any worker count.

use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{det_in_place, Field};
use crate::partitions::Partition;
use crate::schur::Basis;

#[derive(Clone, Copy, Debug)]
pub struct CountConfig {
    /// Maximum number of determinant evaluations for one counting call.
    pub budget: u128,
    pub workers: usize,
}

impl Default for CountConfig {
    fn default() -> Self {
        CountConfig {
            budget: 1_000_000_000,
            workers: 1,
        }
    }
}

/// An exact count over the assignment space F_q^m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactProb {
    pub count: BigUint,
    pub q: u64,
    pub m: u32,
}

impl ExactProb {
    pub fn new(count: u64, q: u64, m: u32) -> Self {
        ExactProb {
            count: BigUint::from(count),
            q,
            m,
        }
    }

    pub fn total(&self) -> BigUint {
        BigUint::from(self.q).pow(self.m)
    }

    pub fn reduced(&self) -> (BigUint, BigUint) {
        let total = self.total();
        if self.count.is_zero() {
            return (BigUint::zero(), BigUint::one());
        }
        let g = self.count.gcd(&total);
        (&self.count / &g, total / g)
    }

    pub fn ratio(&self) -> BigRational {
        let (n, d) = self.reduced();
        BigRational::new(n.into(), d.into())
    }

    /// Reduced fraction as "num/den".
    pub fn fraction_string(&self) -> String {
        let (n, d) = self.reduced();
        format!("{n}/{d}")
    }

    /// The unreduced denominator as "q^m".
    pub fn total_string(&self) -> String {
        format!("{}^{}", self.q, self.m)
    }
}

/// Exact per-target counts for one shape; counts are indexed by the packed
/// element representation and always sum to q^m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueDistribution {
    pub shape: Partition,
    pub basis: Basis,
    pub q: u64,
    pub m: u32,
    pub counts: Vec<u64>,
}

impl ValueDistribution {
    pub fn count(&self, target: u64) -> u64 {
        self.counts[target as usize]
    }

    pub fn prob(&self, target: u64) -> ExactProb {
        ExactProb::new(self.count(target), self.q, self.m)
    }

    pub fn prob_zero(&self) -> ExactProb {
        self.prob(0)
    }

    pub fn total(&self) -> BigUint {
        BigUint::from(self.q).pow(self.m)
    }
}

/// Joint event: shape i's determinant maps to targets[i]. Variables are
/// shared across shapes by label.
#[derive(Clone, Debug)]
pub struct JointSpec {
    pub shapes: Vec<Partition>,
    pub targets: Vec<u64>,
}

impl JointSpec {
    pub fn new(shapes: Vec<Partition>, targets: Vec<u64>) -> Result<Self> {
        if shapes.is_empty() || shapes.len() != targets.len() {
            return Err(Error::Config(
                "joint spec needs equally many shapes and targets".into(),
            ));
        }
        Ok(JointSpec { shapes, targets })
    }

    pub fn max_label(&self) -> u32 {
        self.shapes.iter().map(|s| s.max_label()).max().unwrap_or(0)
    }
}

/// Matrix template: cell values are -1 for zero, 0 for the constant one,
/// k > 0 for the variable x_k.
struct DetTemplate {
    n: usize,
    cells: Vec<i64>,
}

impl DetTemplate {
    fn new(shape: &Partition, basis: Basis) -> DetTemplate {
        let parts = match basis {
            Basis::H => shape.parts().to_vec(),
            Basis::E => shape.transpose().parts().to_vec(),
        };
        let k = parts.len();
        let mut cells = Vec::with_capacity(k * k);
        for i in 1..=k {
            for j in 1..=k {
                let idx = parts[i - 1] as i64 - i as i64 + j as i64;
                cells.push(if idx >= 0 { idx } else { -1 });
            }
        }
        DetTemplate { n: k, cells }
    }

    #[inline]
    fn eval(&self, f: &Field, vals: &[u64], scratch: &mut [u64]) -> u64 {
        for (slot, &cell) in scratch.iter_mut().zip(self.cells.iter()) {
            *slot = match cell {
                -1 => 0,
                0 => 1,
                k => vals[(k - 1) as usize],
            };
        }
        det_in_place(f, scratch, self.n)
    }
}

fn checked_pow(q: u64, e: u32) -> u128 {
    (q as u128).pow(e)
}

fn check_budget(needed: u128, cfg: &CountConfig) -> Result<()> {
    if needed > cfg.budget {
        return Err(Error::BudgetExceeded {
            needed,
            budget: cfg.budget,
        });
    }
    Ok(())
}

/// Splits [0, total) into at most `workers` contiguous ranges.
fn split_ranges(total: u128, workers: usize) -> Vec<(u128, u128)> {
    let w = workers.max(1).min(total.max(1) as usize);
    let chunk = total / w as u128;
    let rem = total % w as u128;
    let mut out = Vec::with_capacity(w);
    let mut lo = 0;
    for i in 0..w {
        let len = chunk + if (i as u128) < rem { 1 } else { 0 };
        out.push((lo, lo + len));
        lo += len;
    }
    out
}

/// Decodes `counter` into base-q digits, x_1 least significant.
fn decode(mut counter: u128, q: u64, vals: &mut [u64]) {
    for v in vals.iter_mut() {
        *v = (counter % q as u128) as u64;
        counter /= q as u128;
    }
}

/// Advances the odometer by one; `vals[..len]` are the active digits.
#[inline]
fn bump(q: u64, vals: &mut [u64], len: usize) {
    for v in vals.iter_mut().take(len) {
        *v += 1;
        if *v < q {
            return;
        }
        *v = 0;
    }
}

/// Full enumeration of F_q^m; one determinant evaluation per assignment.
pub fn brute_force_distribution(
    shape: &Partition,
    field: &Arc<Field>,
    basis: Basis,
    cfg: &CountConfig,
) -> Result<ValueDistribution> {
    let q = field.q();
    let m = shape.max_label();
    let t = DetTemplate::new(shape, basis);
    let space = checked_pow(q, m);
    check_budget(space, cfg)?;
    let mut counts = vec![0u64; q as usize];
    if m == 0 {
        counts[1] += 1; // the empty determinant is 1
        return Ok(ValueDistribution {
            shape: shape.clone(),
            basis,
            q,
            m,
            counts,
        });
    }
    let ranges = split_ranges(space, cfg.workers);
    let tallies: Vec<Vec<u64>> = std::thread::scope(|s| {
        let handles: Vec<_> = ranges
            .iter()
            .map(|&(lo, hi)| {
                let t = &t;
                let field = field.as_ref();
                s.spawn(move || {
                    let mut counts = vec![0u64; q as usize];
                    let mut vals = vec![0u64; m as usize];
                    let mut scratch = vec![0u64; t.n * t.n];
                    decode(lo, q, &mut vals);
                    for _ in lo..hi {
                        let d = t.eval(field, &vals, &mut scratch);
                        counts[d as usize] += 1;
                        bump(q, &mut vals, m as usize);
                    }
                    counts
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    for tally in tallies {
        for (c, v) in counts.iter_mut().zip(tally) {
            *c += v;
        }
    }
    debug_assert_eq!(
        counts.iter().map(|&c| c as u128).sum::<u128>(),
        space,
        "counts must sum to q^m"
    );
    Ok(ValueDistribution {
        shape: shape.clone(),
        basis,
        q,
        m,
        counts,
    })
}

/// Same output as the oracle, but enumerates only x_1..x_{m-1}: per fiber,
/// the determinant at x_m = 0 and x_m = 1 pins the affine form c*x_m + r.
/// A c != 0 fiber contributes one assignment to every target; a c = 0
/// fiber contributes q to the target r.
pub fn fast_distribution(
    shape: &Partition,
    field: &Arc<Field>,
    basis: Basis,
    cfg: &CountConfig,
) -> Result<ValueDistribution> {
    let q = field.q();
    let m = shape.max_label();
    let t = DetTemplate::new(shape, basis);
    if m == 0 {
        let mut counts = vec![0u64; q as usize];
        counts[1] += 1;
        return Ok(ValueDistribution {
            shape: shape.clone(),
            basis,
            q,
            m,
            counts,
        });
    }
    debug_assert_eq!(
        t.cells.iter().filter(|&&c| c == m as i64).count(),
        1,
        "the top-label variable must occur exactly once"
    );
    let fibers = checked_pow(q, m - 1);
    check_budget(fibers.saturating_mul(2), cfg)?;
    let ranges = split_ranges(fibers, cfg.workers);
    let tallies: Vec<(u64, Vec<u64>)> = std::thread::scope(|s| {
        let handles: Vec<_> = ranges
            .iter()
            .map(|&(lo, hi)| {
                let t = &t;
                let field = field.as_ref();
                s.spawn(move || {
                    let mut spread = 0u64; // fibers where the top coefficient is nonzero
                    let mut fixed = vec![0u64; q as usize];
                    let mut vals = vec![0u64; m as usize];
                    let mut scratch = vec![0u64; t.n * t.n];
                    decode(lo, q, &mut vals[..(m - 1) as usize]);
                    for _ in lo..hi {
                        vals[(m - 1) as usize] = 0;
                        let r = t.eval(field, &vals, &mut scratch);
                        vals[(m - 1) as usize] = 1;
                        let s1 = t.eval(field, &vals, &mut scratch);
                        if r == s1 {
                            fixed[r as usize] += 1;
                        } else {
                            spread += 1;
                        }
                        bump(q, &mut vals, (m - 1) as usize);
                    }
                    (spread, fixed)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut spread = 0u64;
    let mut fixed = vec![0u64; q as usize];
    for (sp, fx) in tallies {
        spread += sp;
        for (a, b) in fixed.iter_mut().zip(fx) {
            *a += b;
        }
    }
    let counts: Vec<u64> = fixed.iter().map(|&z| spread + q * z).collect();
    debug_assert_eq!(
        counts.iter().map(|&c| c as u128).sum::<u128>(),
        checked_pow(q, m)
    );
    Ok(ValueDistribution {
        shape: shape.clone(),
        basis,
        q,
        m,
        counts,
    })
}

fn joint_counts(
    spec: &JointSpec,
    field: &Arc<Field>,
    cfg: &CountConfig,
) -> Result<(u64, u64, u32)> {
    let q = field.q();
    let m = spec.max_label();
    let templates: Vec<DetTemplate> = spec
        .shapes
        .iter()
        .map(|s| DetTemplate::new(s, Basis::H))
        .collect();
    let space = checked_pow(q, m);
    check_budget(space.saturating_mul(templates.len() as u128), cfg)?;
    let ranges = split_ranges(space, cfg.workers);
    let max_cells = templates.iter().map(|t| t.n * t.n).max().unwrap_or(0);
    let tallies: Vec<(u64, u64)> = std::thread::scope(|s| {
        let handles: Vec<_> = ranges
            .iter()
            .map(|&(lo, hi)| {
                let templates = &templates;
                let targets = &spec.targets;
                let field = field.as_ref();
                s.spawn(move || {
                    let mut all = 0u64;
                    let mut last = 0u64; // the final (conditioning) event alone
                    let mut vals = vec![0u64; m as usize];
                    let mut scratch = vec![0u64; max_cells];
                    let tl = templates.last().unwrap();
                    let tl_target = *targets.last().unwrap();
                    decode(lo, q, &mut vals);
                    for _ in lo..hi {
                        if tl.eval(field, &vals, &mut scratch[..tl.n * tl.n]) == tl_target {
                            last += 1;
                            let rest = &templates[..templates.len() - 1];
                            if rest.iter().zip(targets.iter()).all(|(t, &target)| {
                                t.eval(field, &vals, &mut scratch[..t.n * t.n]) == target
                            }) {
                                all += 1;
                            }
                        }
                        bump(q, &mut vals, m as usize);
                    }
                    (all, last)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let (mut all, mut last) = (0u64, 0u64);
    for (a, l) in tallies {
        all += a;
        last += l;
    }
    Ok((all, last, m))
}

/// Count of assignments sending every shape's determinant to its paired
/// target, over q^m with m the joint max label.
pub fn joint_distribution(
    spec: &JointSpec,
    field: &Arc<Field>,
    cfg: &CountConfig,
) -> Result<ExactProb> {
    let (all, _, m) = joint_counts(spec, field, cfg)?;
    Ok(ExactProb::new(all, field.q(), m))
}

/// For a two-event spec, the joint probability and the exact conditional
/// P(first event | second event) = joint count / marginal count.
pub fn conditional_prob(
    spec: &JointSpec,
    field: &Arc<Field>,
    cfg: &CountConfig,
) -> Result<(ExactProb, BigRational)> {
    if spec.shapes.len() != 2 {
        return Err(Error::Config(
            "conditional probability needs exactly two shapes".into(),
        ));
    }
    let (all, cond, m) = joint_counts(spec, field, cfg)?;
    if cond == 0 {
        return Err(Error::EmptyConditioningEvent);
    }
    let joint = ExactProb::new(all, field.q(), m);
    let conditional = BigRational::new(all.into(), cond.into());
    Ok((joint, conditional))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::partitions::partitions_of;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn cfg() -> CountConfig {
        CountConfig::default()
    }

    #[test]
    fn single_box_distribution() {
        let f3 = make_field(3).unwrap();
        let d = brute_force_distribution(&p("1"), &f3, Basis::H, &cfg()).unwrap();
        assert_eq!((d.m, d.counts.clone()), (1, vec![1, 1, 1]));
        let d = fast_distribution(&p("1"), &f3, Basis::H, &cfg()).unwrap();
        assert_eq!(d.counts, vec![1, 1, 1]);
    }

    #[test]
    fn two_one_over_f2() {
        let f2 = make_field(2).unwrap();
        let d = brute_force_distribution(&p("2,1"), &f2, Basis::H, &cfg()).unwrap();
        assert_eq!(d.m, 3);
        assert_eq!(d.count(0), 4);
        assert_eq!(d.prob_zero().fraction_string(), "1/2");
    }

    #[test]
    fn square_22_over_f3() {
        let f3 = make_field(3).unwrap();
        let d = brute_force_distribution(&p("2,2"), &f3, Basis::H, &cfg()).unwrap();
        assert_eq!(d.counts, vec![9, 12, 6]);
        assert_eq!(d.m, 3);
        let fast = fast_distribution(&p("2,2"), &f3, Basis::H, &cfg()).unwrap();
        assert_eq!(fast, d);
    }

    #[test]
    fn fast_equals_oracle_exhaustive() {
        for q in [2u64, 3] {
            let f = make_field(q).unwrap();
            for lam in crate::partitions::shapes_with_max_label(6) {
                for basis in [Basis::H, Basis::E] {
                    let a = brute_force_distribution(&lam, &f, basis, &cfg()).unwrap();
                    let b = fast_distribution(&lam, &f, basis, &cfg()).unwrap();
                    assert_eq!(a, b, "shape {lam} basis {basis} q {q}");
                }
            }
        }
    }

    #[test]
    fn fast_equals_oracle_random_larger_shapes() {
        let f2 = make_field(2).unwrap();
        let mut state = 0x5EEDu64;
        let mut all: Vec<Partition> = Vec::new();
        for l in 7..=10u32 {
            for s in crate::partitions::shapes_with_max_label(l) {
                if s.max_label() == l {
                    all.push(s);
                }
            }
        }
        for _ in 0..20 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let lam = &all[(state >> 33) as usize % all.len()];
            let a = brute_force_distribution(lam, &f2, Basis::H, &cfg()).unwrap();
            let b = fast_distribution(lam, &f2, Basis::H, &cfg()).unwrap();
            assert_eq!(a, b, "shape {lam}");
        }
    }

    #[test]
    fn conservation() {
        let f4 = make_field(4).unwrap();
        for lam in partitions_of(5) {
            let d = fast_distribution(&lam, &f4, Basis::H, &cfg()).unwrap();
            let sum: u128 = d.counts.iter().map(|&c| c as u128).sum();
            assert_eq!(sum, (4u128).pow(d.m));
        }
    }

    #[test]
    fn worker_split_invariance() {
        let f3 = make_field(3).unwrap();
        let base = fast_distribution(&p("3,2"), &f3, Basis::H, &cfg()).unwrap();
        for workers in [2usize, 3, 7, 16] {
            let c = CountConfig {
                workers,
                ..Default::default()
            };
            assert_eq!(fast_distribution(&p("3,2"), &f3, Basis::H, &c).unwrap(), base);
            let b = brute_force_distribution(&p("3,2"), &f3, Basis::H, &c).unwrap();
            assert_eq!(b, base);
        }
    }

    #[test]
    fn budget_enforced() {
        let f3 = make_field(3).unwrap();
        let tiny = CountConfig {
            budget: 10,
            workers: 1,
        };
        match brute_force_distribution(&p("3,2"), &f3, Basis::H, &tiny) {
            Err(Error::BudgetExceeded { needed, budget }) => {
                assert_eq!(needed, 3u128.pow(4));
                assert_eq!(budget, 10);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn joint_examples() {
        let f3 = make_field(3).unwrap();
        let spec = JointSpec::new(vec![p("1"), p("2,1")], vec![0, 0]).unwrap();
        let j = joint_distribution(&spec, &f3, &cfg()).unwrap();
        assert_eq!(j.ratio(), BigRational::new(1.into(), 9.into()));

        let f2 = make_field(2).unwrap();
        let spec = JointSpec::new(vec![p("1"), p("2,2")], vec![0, 0]).unwrap();
        let j = joint_distribution(&spec, &f2, &cfg()).unwrap();
        assert_eq!(j.ratio(), BigRational::new(1.into(), 4.into()));

        // the designated dependent pair
        let spec = JointSpec::new(vec![p("2,2"), p("3,3")], vec![0, 0]).unwrap();
        let j = joint_distribution(&spec, &f2, &cfg()).unwrap();
        assert_ne!(j.ratio(), BigRational::new(1.into(), 4.into()));
    }

    #[test]
    fn conditional_examples() {
        let f3 = make_field(3).unwrap();
        let spec = JointSpec::new(
            vec![Partition::staircase(3), Partition::staircase(1)],
            vec![0, 0],
        )
        .unwrap();
        let (_, c) = conditional_prob(&spec, &f3, &cfg()).unwrap();
        assert_eq!(c, BigRational::new(1.into(), 3.into()));

        let f2 = make_field(2).unwrap();
        let spec = JointSpec::new(
            vec![Partition::staircase(4), Partition::staircase(2)],
            vec![0, 0],
        )
        .unwrap();
        let (_, c) = conditional_prob(&spec, &f2, &cfg()).unwrap();
        assert_eq!(c, BigRational::new(1.into(), 2.into()));

        let spec = JointSpec::new(vec![p("1"), p("1")], vec![0, 0]).unwrap();
        let (_, c) = conditional_prob(&spec, &f2, &cfg()).unwrap();
        assert_eq!(c, BigRational::one());
    }

    #[test]
    fn exact_prob_reduction() {
        let e = ExactProb::new(72, 2, 7);
        assert_eq!(e.fraction_string(), "9/16");
        assert_eq!(e.total_string(), "2^7");
        let z = ExactProb::new(0, 3, 4);
        assert_eq!(z.fraction_string(), "0/1");
    }
}
