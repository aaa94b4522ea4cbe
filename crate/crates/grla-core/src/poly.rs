//! Sparse multivariate polynomials over the rationals.
//!
//! Monomials are packed into a single `u128`: the top byte holds the total
//! degree and the remaining fifteen bytes hold per-variable exponents in the
//! declared variable order, so the natural integer order on keys *is*
//! graded lexicographic order. Terms are kept sorted by key with no zero
//! coefficients, which makes equality, display order, and iteration
//! deterministic, and lets addition run as a linear merge that moves (never
//! clones) the big-rational coefficients.

use crate::rational::Rat;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// An ordered set of variable names shared by the polynomials of one
/// computation. Cheap to clone; compared by content.
#[derive(Debug, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new(names: Vec<String>) -> Arc<Self> {
        let mut seen = names.clone();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), names.len(), "duplicate variable name");
        Arc::new(VarSet { names })
    }

    /// Polynomials can only be formed over this many variables; name sets
    /// beyond it are still fine for bookkeeping.
    pub fn supports_polynomials(&self) -> bool {
        self.names.len() <= Mono::MAX_VARS
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Packed exponent vector; ordering of the raw key is graded lex.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono(u128);

impl Mono {
    pub const MAX_VARS: usize = 15;
    const MAX_EXP: u16 = 255;

    pub fn one() -> Mono {
        Mono(0)
    }

    pub fn from_exps(exps: &[u16]) -> Mono {
        assert!(exps.len() <= Self::MAX_VARS);
        let mut key: u128 = 0;
        let mut deg: u32 = 0;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= Self::MAX_EXP, "exponent too large to pack");
            deg += e as u32;
            key |= (e as u128) << Self::shift(i);
        }
        assert!(deg <= Self::MAX_EXP as u32, "total degree too large to pack");
        key |= (deg as u128) << 120;
        Mono(key)
    }

    pub fn var(i: usize) -> Mono {
        Mono((1u128 << Self::shift(i)) | (1u128 << 120))
    }

    #[inline]
    fn shift(i: usize) -> u32 {
        debug_assert!(i < Self::MAX_VARS);
        112 - 8 * i as u32
    }

    /// The packed key itself (degree byte on top, exponent bytes below).
    #[inline]
    pub fn raw(&self) -> u128 {
        self.0
    }

    #[inline]
    pub fn from_raw(key: u128) -> Mono {
        Mono(key)
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        (self.0 >> 120) as u32
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u16 {
        ((self.0 >> Self::shift(i)) & 0xff) as u16
    }

    pub fn exponents(&self, len: usize) -> Vec<u16> {
        (0..len).map(|i| self.exponent(i)).collect()
    }

    #[inline]
    pub fn mul(&self, other: &Mono) -> Mono {
        let sum = self.0 + other.0;
        debug_assert!(
            {
                let a = self.0.to_be_bytes();
                let s = sum.to_be_bytes();
                a.iter().zip(&s).all(|(x, y)| y >= x)
            },
            "monomial exponent overflow"
        );
        Mono(sum)
    }

    /// Componentwise division; `None` when some exponent of `other` exceeds.
    pub fn try_div(&self, other: &Mono) -> Option<Mono> {
        let a = self.0.to_be_bytes();
        let b = other.0.to_be_bytes();
        if a.iter().zip(&b).any(|(x, y)| x < y) {
            return None;
        }
        Some(Mono(self.0 - other.0))
    }

    /// Exponent of variable `i` set to zero (degree byte adjusted).
    pub fn without_var(&self, i: usize) -> Mono {
        let e = self.exponent(i) as u128;
        Mono(self.0 - (e << Self::shift(i)) - (e << 120))
    }

    /// Do the exponents over `0..n` agree with `other`'s?
    #[inline]
    pub fn agrees_on_prefix(&self, other: &Mono, n: usize) -> bool {
        if n == 0 {
            return true;
        }
        let mask = if n >= Self::MAX_VARS {
            (1u128 << 120) - 1
        } else {
            ((1u128 << 120) - 1) & !((1u128 << Self::shift(n - 1)) - 1)
        };
        (self.0 & mask) == (other.0 & mask)
    }

    /// Exponents over `0..n` cleared, keeping the rest (degree re-derived).
    pub fn clear_prefix(&self, n: usize, total_len: usize) -> Mono {
        let mut exps = self.exponents(total_len);
        for e in exps.iter_mut().take(n) {
            *e = 0;
        }
        Mono::from_exps(&exps)
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mono[deg {}]", self.degree())
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct SymbolicPoly {
    vars: Arc<VarSet>,
    /// Sorted ascending by packed key; no zero coefficients.
    terms: Vec<(Mono, Rat)>,
}

impl SymbolicPoly {
    pub fn zero(vars: Arc<VarSet>) -> Self {
        SymbolicPoly {
            vars,
            terms: Vec::new(),
        }
    }

    pub fn constant(vars: Arc<VarSet>, c: Rat) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.push((Mono::one(), c));
        }
        p
    }

    pub fn var(vars: Arc<VarSet>, name: &str) -> Self {
        let i = vars
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown variable `{name}`"));
        Self::var_by_index(vars, i)
    }

    pub fn var_by_index(vars: Arc<VarSet>, i: usize) -> Self {
        assert!(i < vars.len());
        assert!(
            i < Mono::MAX_VARS,
            "variable index {i} beyond the packed-monomial capacity"
        );
        SymbolicPoly {
            vars,
            terms: vec![(Mono::var(i), Rat::one())],
        }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.last().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rat)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn constant_term(&self) -> Rat {
        match self.terms.first() {
            Some((m, c)) if *m == Mono::one() => c.clone(),
            _ => Rat::zero(),
        }
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 if self.terms[0].0 == Mono::one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    /// Leading term under graded lex.
    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.last().map(|(m, c)| (m, c))
    }

    fn assert_same_vars(&self, other: &Self) {
        debug_assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "mixed variable sets"
        );
    }

    /// Merge a sorted term list into a canonical one, summing equal keys.
    fn from_sorted(vars: Arc<VarSet>, sorted: Vec<(Mono, Rat)>) -> Self {
        let mut terms: Vec<(Mono, Rat)> = Vec::with_capacity(sorted.len());
        for (m, c) in sorted {
            match terms.last_mut() {
                Some((lm, lc)) if *lm == m => {
                    *lc += &c;
                    if lc.is_zero() {
                        terms.pop();
                    }
                }
                _ => {
                    if !c.is_zero() {
                        terms.push((m, c));
                    }
                }
            }
        }
        SymbolicPoly { vars, terms }
    }

    pub fn add_term(&mut self, mono: Mono, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.binary_search_by(|(m, _)| m.cmp(&mono)) {
            Ok(idx) => {
                self.terms[idx].1 += &coeff;
                if self.terms[idx].1.is_zero() {
                    self.terms.remove(idx);
                }
            }
            Err(idx) => self.terms.insert(idx, (mono, coeff)),
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.assert_same_vars(other);
        let rhs = other.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        let lhs = std::mem::take(&mut self.terms);
        *self = Self::merge(self.vars.clone(), lhs, rhs);
    }

    /// Consuming add; coefficients are moved, not cloned.
    pub fn add_owned(self, other: Self) -> Self {
        self.assert_same_vars(&other);
        let vars = self.vars.clone();
        Self::merge(vars, self.terms, other.terms)
    }

    fn merge(vars: Arc<VarSet>, a: Vec<(Mono, Rat)>, b: Vec<(Mono, Rat)>) -> Self {
        let mut out: Vec<(Mono, Rat)> = Vec::with_capacity(a.len() + b.len());
        let mut ia = a.into_iter().peekable();
        let mut ib = b.into_iter().peekable();
        loop {
            let take_a = match (ia.peek(), ib.peek()) {
                (None, None) => break,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (Some((ma, _)), Some((mb, _))) => match ma.cmp(mb) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => {
                        let (m, mut ca) = ia.next().unwrap();
                        let (_, cb) = ib.next().unwrap();
                        ca += &cb;
                        if !ca.is_zero() {
                            out.push((m, ca));
                        }
                        continue;
                    }
                },
            };
            let item = if take_a { ia.next() } else { ib.next() };
            out.push(item.unwrap());
        }
        SymbolicPoly { vars, terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.clone().add_owned(other.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.clone().add_owned(other.neg())
    }

    pub fn neg(&self) -> Self {
        SymbolicPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        SymbolicPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_vars(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.vars.clone());
        }
        // Iterate the smaller operand outermost; accumulate then sort once.
        let (a, b) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if a.terms.len() == 1 {
            let (m, c) = &a.terms[0];
            return b.mul_term(m, c);
        }
        let mut prods: Vec<(Mono, Rat)> = Vec::with_capacity(a.terms.len() * b.terms.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                prods.push((ma.mul(mb), ca * cb));
            }
        }
        prods.sort_unstable_by_key(|(m, _)| *m);
        Self::from_sorted(self.vars.clone(), prods)
    }

    /// Multiply by a single monomial term (order-preserving).
    pub fn mul_term(&self, mono: &Mono, coeff: &Rat) -> Self {
        if coeff.is_zero() {
            return Self::zero(self.vars.clone());
        }
        SymbolicPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c * coeff))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut out = Self::constant(self.vars.clone(), Rat::one());
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }

    /// Exact partial derivative with respect to a declared variable.
    pub fn derive(&self, var: &str) -> Result<Self, crate::error::Error> {
        let i = self
            .vars
            .index_of(var)
            .ok_or_else(|| crate::error::Error::UnknownVariable(var.to_string()))?;
        Ok(self.derive_by_index(i))
    }

    pub fn derive_by_index(&self, i: usize) -> Self {
        let step = Mono::var(i);
        // Subtracting the same key keeps the order; zero-exponent terms drop.
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.exponent(i);
                if e == 0 {
                    return None;
                }
                Some((Mono(m.0 - step.0), c * &Rat::from(e as i64)))
            })
            .collect();
        SymbolicPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Substitute rational values for a subset of the variables (by index).
    pub fn eval_partial(&self, assignment: &std::collections::BTreeMap<usize, Rat>) -> Self {
        let n = self.vars.len();
        let mut out: Vec<(Mono, Rat)> = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.exponents(n);
            for (&i, v) in assignment {
                let e = exps[i];
                if e > 0 {
                    coeff *= &v.pow(e as i32);
                    exps[i] = 0;
                }
            }
            out.push((Mono::from_exps(&exps), coeff));
        }
        out.sort_unstable_by_key(|(m, _)| *m);
        Self::from_sorted(self.vars.clone(), out)
    }

    /// Full evaluation; every variable must be assigned.
    pub fn eval_full(&self, values: &[Rat]) -> Rat {
        assert_eq!(values.len(), self.vars.len());
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, v) in values.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    t *= &v.pow(e as i32);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Rescale each variable: `x_i -> lambda_i * x_i`.
    pub fn scale_vars(&self, lambda: &[Rat]) -> Self {
        assert_eq!(lambda.len(), self.vars.len());
        SymbolicPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut coeff = c.clone();
                    for (i, l) in lambda.iter().enumerate() {
                        let e = m.exponent(i);
                        if e > 0 {
                            coeff *= &l.pow(e as i32);
                        }
                    }
                    (*m, coeff)
                })
                .collect(),
        }
    }

    /// Coefficient polynomials indexed by the exponent of one variable.
    pub fn coefficients_in(&self, var_idx: usize) -> Vec<SymbolicPoly> {
        let deg = self
            .terms
            .iter()
            .map(|(m, _)| m.exponent(var_idx) as usize)
            .max()
            .unwrap_or(0);
        let mut buckets: Vec<Vec<(Mono, Rat)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(var_idx) as usize;
            buckets[e].push((m.without_var(var_idx), c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut b| {
                b.sort_unstable_by_key(|(m, _)| *m);
                Self::from_sorted(self.vars.clone(), b)
            })
            .collect()
    }

    /// Re-express over a larger variable set whose leading names coincide
    /// with this polynomial's names. With packed keys this is the identity
    /// on terms.
    pub fn extend_to(&self, bigger: &Arc<VarSet>) -> Self {
        assert!(
            bigger.len() >= self.vars.len()
                && bigger.names()[..self.vars.len()] == *self.vars.names(),
            "variable sets are not nested"
        );
        SymbolicPoly {
            vars: bigger.clone(),
            terms: self.terms.clone(),
        }
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        self.assert_same_vars(divisor);
        let (dm, dc) = divisor.leading()?;
        let (dm, dc) = (*dm, dc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.vars.clone());
        while let Some((rm, rc)) = rem.leading() {
            let mono = rm.try_div(&dm)?;
            let coeff = rc / &dc;
            quot.add_term(mono, coeff.clone());
            let piece = divisor.mul_term(&mono, &coeff);
            rem = rem.sub(&piece);
        }
        Some(quot)
    }
}

impl fmt::Display for SymbolicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if !mag.is_one() || m.degree() == 0 {
                factors.push(mag.to_string());
            }
            for vi in 0..self.vars.len() {
                match m.exponent(vi) {
                    0 => {}
                    1 => factors.push(self.vars.name(vi).to_string()),
                    e => factors.push(format!("{}^{}", self.vars.name(vi), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymbolicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Arc<VarSet> {
        VarSet::new(vec!["x".into(), "y".into()])
    }

    fn p(vars: &Arc<VarSet>, s: &[(i64, &[u16])]) -> SymbolicPoly {
        let mut out = SymbolicPoly::zero(vars.clone());
        for (c, e) in s {
            out.add_term(Mono::from_exps(e), Rat::from(*c));
        }
        out
    }

    #[test]
    fn packed_key_order_is_graded_lex() {
        let x2 = Mono::from_exps(&[2, 0]);
        let xy = Mono::from_exps(&[1, 1]);
        let y2 = Mono::from_exps(&[0, 2]);
        let x = Mono::from_exps(&[1, 0]);
        assert!(x < y2 && y2 < xy && xy < x2);
        assert_eq!(x2.degree(), 2);
        assert_eq!(xy.exponent(1), 1);
        assert_eq!(x2.try_div(&x), Some(x));
        assert_eq!(y2.try_div(&x), None);
    }

    #[test]
    fn derive_power_rule() {
        let vars = xy();
        let f = p(&vars, &[(1, &[2, 1])]);
        assert_eq!(f.derive("x").unwrap(), p(&vars, &[(2, &[1, 1])]));
        let c = SymbolicPoly::constant(vars.clone(), Rat::from(5));
        assert!(c.derive("x").unwrap().is_zero());
        assert!(c.derive("z").is_err());
    }

    #[test]
    fn derive_sum_of_squares() {
        let vars = xy();
        let f = p(&vars, &[(1, &[2, 0]), (1, &[0, 2])]);
        assert_eq!(f.derive("x").unwrap(), p(&vars, &[(2, &[1, 0])]));
    }

    #[test]
    fn mul_and_cancellation() {
        let vars = xy();
        let a = p(&vars, &[(1, &[1, 0]), (1, &[0, 1])]);
        let b = p(&vars, &[(1, &[1, 0]), (-1, &[0, 1])]);
        let prod = a.mul(&b);
        assert_eq!(prod, p(&vars, &[(1, &[2, 0]), (-1, &[0, 2])]));
    }

    #[test]
    fn exact_division() {
        let vars = xy();
        let a = p(&vars, &[(1, &[1, 0]), (1, &[0, 1])]);
        let b = p(&vars, &[(2, &[1, 0]), (-1, &[0, 1])]);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(prod
            .div_exact(&p(&vars, &[(1, &[1, 0]), (1, &[0, 0])]))
            .is_none());
    }

    #[test]
    fn display_is_graded_lex_descending() {
        let vars = xy();
        let f = p(&vars, &[(1, &[0, 0]), (-2, &[1, 1]), (1, &[0, 1])]);
        assert_eq!(f.to_string(), "-2*x*y + y + 1");
    }

    #[test]
    fn coefficients_in_one_variable() {
        let vars = xy();
        // x^2 y + x + 3 in x: [3, 1, y]
        let f = p(&vars, &[(1, &[2, 1]), (1, &[1, 0]), (3, &[0, 0])]);
        let cs = f.coefficients_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0].to_string(), "3");
        assert_eq!(cs[1].to_string(), "1");
        assert_eq!(cs[2].to_string(), "y");
    }
}
