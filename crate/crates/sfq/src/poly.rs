//! Sparse multivariate polynomials over GF(q) in variables x_1, x_2, ...
//!
//! Terms are kept in a map keyed by monomial, ordered graded-lex with
//! higher-index variables taking precedence, so equal polynomials always
//! have identical term maps and a stable textual rendering. No zero
//! coefficients are stored.

use std::collections::BTreeMap;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;

/// Exponent vector, sparse: (variable index >= 1, exponent >= 1) pairs
/// sorted by variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: u32) -> Self {
        assert!(v >= 1, "variables are 1-indexed");
        Monomial(vec![(v, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn max_var(&self) -> u32 {
        self.0.last().map_or(0, |&(v, _)| v)
    }

    pub fn exponent_of(&self, v: u32) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map_or(0, |&(_, e)| e)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }
}

// Graded lexicographic with x_m > ... > x_1: compare total degree first,
// then exponents from the highest variable down.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let mut a = self.0.iter().rev();
            let mut b = other.0.iter().rev();
            loop {
                match (a.next(), b.next()) {
                    (None, None) => return Ordering::Equal,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(_), None) => return Ordering::Greater,
                    (Some(&(va, ea)), Some(&(vb, eb))) => {
                        match va.cmp(&vb).then(ea.cmp(&eb)) {
                            Ordering::Equal => continue,
                            ord => return ord,
                        }
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: Arc<Field>,
    terms: BTreeMap<Monomial, u64>,
}

/// Label of a matrix entry: k for x_k - f(x_1..x_{k-1}), 0 for a nonzero
/// constant; the zero polynomial has no label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Label {
    Undefined,
    Value(u32),
}

/// Structural analysis of an entry, shared by the matrix machinery.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryForm {
    Zero,
    Constant(u64),
    /// c * x_k - f(x_1..x_{k-1}) with c nonzero; `lead` is c.
    Labeled { label: u32, lead: u64 },
    Malformed,
}

impl MultiPoly {
    pub fn zero(field: &Arc<Field>) -> Self {
        MultiPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Arc<Field>, c: u64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(Monomial::one(), c);
        }
        MultiPoly {
            field: field.clone(),
            terms,
        }
    }

    pub fn var(field: &Arc<Field>, v: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), 1);
        MultiPoly {
            field: field.clone(),
            terms,
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Some(c) iff the polynomial is the constant c (zero included).
    pub fn constant_value(&self) -> Option<u64> {
        match self.terms.len() {
            0 => Some(0),
            1 => {
                let (m, &c) = self.terms.iter().next().unwrap();
                if m.is_one() {
                    Some(c)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Coefficient of the empty monomial.
    pub fn constant_term(&self) -> u64 {
        self.terms.get(&Monomial::one()).copied().unwrap_or(0)
    }

    pub fn max_var(&self) -> u32 {
        self.terms.keys().map(|m| m.max_var()).max().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    fn same_field(&self, other: &MultiPoly) {
        assert!(
            self.field == other.field,
            "mixed fields: GF({}) vs GF({})",
            self.field.q(),
            other.field.q()
        );
    }

    fn insert_term(&mut self, m: Monomial, c: u64) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = self.field.add(*e.get(), c);
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.same_field(other);
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.insert_term(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.field);
        for (m, &c) in &self.terms {
            out.terms.insert(m.clone(), self.field.neg(c));
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, c: u64) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.field);
        if c == 0 {
            return out;
        }
        for (m, &a) in &self.terms {
            out.terms.insert(m.clone(), self.field.mul(a, c));
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.same_field(other);
        let mut out = MultiPoly::zero(&self.field);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                out.insert_term(ma.mul(mb), self.field.mul(ca, cb));
            }
        }
        out
    }

    /// Exact partial evaluation. Bindings on absent variables are no-ops;
    /// binding every variable yields a constant polynomial.
    pub fn substitute(&self, bindings: &[(u32, u64)]) -> MultiPoly {
        let lookup = |v: u32| bindings.iter().find(|&&(w, _)| w == v).map(|&(_, a)| a);
        let mut out = MultiPoly::zero(&self.field);
        for (m, &c) in &self.terms {
            let mut coeff = c;
            let mut free = Vec::new();
            for &(v, e) in m.pairs() {
                match lookup(v) {
                    Some(a) => coeff = self.field.mul(coeff, self.field.pow(a, e as u64)),
                    None => free.push((v, e)),
                }
            }
            out.insert_term(Monomial(free), coeff);
        }
        out
    }

    pub fn substitute_one(&self, var: u32, val: u64) -> MultiPoly {
        self.substitute(&[(var, val)])
    }

    /// Full evaluation; `vals[i]` is the value of x_{i+1}.
    pub fn eval(&self, vals: &[u64]) -> u64 {
        let f = &self.field;
        let mut acc = 0;
        for (m, &c) in &self.terms {
            let mut t = c;
            for &(v, e) in m.pairs() {
                let val = vals[(v - 1) as usize];
                t = f.mul(t, f.pow(val, e as u64));
            }
            acc = f.add(acc, t);
        }
        acc
    }

    /// Classifies the entry shape. `Labeled` requires the top variable x_k
    /// to occur exactly once, as the single monomial c * x_k.
    pub fn entry_form(&self) -> EntryForm {
        if self.terms.is_empty() {
            return EntryForm::Zero;
        }
        let k = self.max_var();
        if k == 0 {
            return EntryForm::Constant(self.constant_term());
        }
        let mut lead = None;
        for (m, &c) in &self.terms {
            if m.exponent_of(k) == 0 {
                continue;
            }
            if m.pairs() == [(k, 1)] {
                lead = Some(c);
            } else {
                return EntryForm::Malformed;
            }
        }
        match lead {
            Some(c) => EntryForm::Labeled { label: k, lead: c },
            None => EntryForm::Malformed,
        }
    }

    /// Strict label: requires unit leading coefficient, per the definition
    /// x_k - f(x_1..x_{k-1}).
    pub fn label_of(&self) -> Result<Label> {
        match self.entry_form() {
            EntryForm::Zero => Ok(Label::Undefined),
            EntryForm::Constant(_) => Ok(Label::Value(0)),
            EntryForm::Labeled { label, lead } if lead == 1 => Ok(Label::Value(label)),
            EntryForm::Labeled { label, lead } => Err(Error::NotLabelForm(format!(
                "x_{label} has coefficient {lead}, expected 1: {self}"
            ))),
            EntryForm::Malformed => Err(Error::NotLabelForm(format!(
                "highest variable appears nonlinearly or in a product: {self}"
            ))),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let q = self.field.q();
        let mut first = true;
        // leading (graded-lex greatest) term first
        for (m, &c) in self.terms.iter().rev() {
            // render q - c as a subtraction when that is shorter
            let (neg, mag) = if c > q - c { (true, q - c) } else { (false, c) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if mag != 1 {
                    write!(f, "{mag}*")?;
                }
                let mut firstv = true;
                for &(v, e) in m.pairs() {
                    if !firstv {
                        write!(f, "*")?;
                    }
                    firstv = false;
                    if e == 1 {
                        write!(f, "x{v}")?;
                    } else {
                        write!(f, "x{v}^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// x_k - f, built from an integer-coefficient description of f for tests
/// and golden matrices: each (coeff, vars) pair contributes coeff * prod
/// of the listed variables.
pub fn label_entry(field: &Arc<Field>, k: u32, f_terms: &[(i64, &[u32])]) -> MultiPoly {
    let mut p = MultiPoly::var(field, k);
    for &(c, vars) in f_terms {
        let mut t = MultiPoly::constant(field, field.from_int(-c));
        for &v in vars {
            t = t.mul(&MultiPoly::var(field, v));
        }
        p = p.add(&t);
    }
    p
}

/// Integer-coefficient polynomial builder: sum of coeff * monomial terms.
pub fn int_poly(field: &Arc<Field>, terms: &[(i64, &[u32])]) -> MultiPoly {
    let mut p = MultiPoly::zero(field);
    for &(c, vars) in terms {
        let mut t = MultiPoly::constant(field, field.from_int(c));
        for &v in vars {
            t = t.mul(&MultiPoly::var(field, v));
        }
        p = p.add(&t);
    }
    p
}
