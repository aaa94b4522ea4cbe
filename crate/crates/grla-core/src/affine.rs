//! Affine-linear forms in named formal parameters, e.g. `s + s1 + 1/2`.
//!
//! These carry the b-function root data: each b-function factor is an affine
//! form with unit coefficient on `s` and rational coefficients on the free
//! exponent parameters `s1, s2, ...`.

use crate::error::{Error, Result};
use crate::rational::Rat;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// `constant + sum coeff_name * name`, canonical: no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct AffineForm {
    constant: Rat,
    coeffs: BTreeMap<String, Rat>,
}

impl AffineForm {
    pub fn constant(c: Rat) -> Self {
        AffineForm {
            constant: c,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn zero() -> Self {
        Self::constant(Rat::zero())
    }

    pub fn param(name: &str) -> Self {
        Self::term(name, Rat::one())
    }

    pub fn term(name: &str, coeff: Rat) -> Self {
        let mut f = Self::zero();
        f.add_coeff(name, coeff);
        f
    }

    pub fn constant_part(&self) -> &Rat {
        &self.constant
    }

    pub fn coeff(&self, name: &str) -> Rat {
        self.coeffs.get(name).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&String, &Rat)> {
        self.coeffs.iter()
    }

    pub fn params(&self) -> impl Iterator<Item = &String> {
        self.coeffs.keys()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.constant.is_zero()
    }

    pub fn add_coeff(&mut self, name: &str, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let slot = self
            .coeffs
            .entry(name.to_string())
            .or_insert_with(Rat::zero);
        *slot += &coeff;
        if slot.is_zero() {
            self.coeffs.remove(name);
        }
    }

    pub fn add_constant(&mut self, c: &Rat) {
        self.constant += c;
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.constant += &other.constant;
        for (n, c) in &other.coeffs {
            out.add_coeff(n, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::constant(-&self.constant);
        for (n, c) in &self.coeffs {
            out.coeffs.insert(n.clone(), -c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        let mut out = Self::constant(&self.constant * k);
        for (n, c) in &self.coeffs {
            out.coeffs.insert(n.clone(), c * k);
        }
        out
    }

    /// Exact evaluation; every parameter of the form must be assigned.
    pub fn specialize(&self, assignment: &BTreeMap<String, Rat>) -> Result<Rat> {
        let mut acc = self.constant.clone();
        for (n, c) in &self.coeffs {
            let v = assignment
                .get(n)
                .ok_or_else(|| Error::MissingParameter(n.clone()))?;
            acc += &(c * v);
        }
        Ok(acc)
    }

    /// Evaluate the parameters present in `assignment`, leaving the rest
    /// symbolic.
    pub fn specialize_partial(&self, assignment: &BTreeMap<String, Rat>) -> Self {
        let mut out = Self::constant(self.constant.clone());
        for (n, c) in &self.coeffs {
            match assignment.get(n) {
                Some(v) => out.constant += &(c * v),
                None => out.add_coeff(n, c.clone()),
            }
        }
        out
    }

    /// Substitute affine forms for parameters (parameters not in the map are
    /// kept). Affine-in-affine composition stays affine.
    pub fn compose(&self, map: &BTreeMap<String, AffineForm>) -> Self {
        let mut out = Self::constant(self.constant.clone());
        for (n, c) in &self.coeffs {
            match map.get(n) {
                Some(g) => out = out.add(&g.scale(c)),
                None => out.add_coeff(n, c.clone()),
            }
        }
        out
    }
}

/// Order parameter names naturally: `s < s1 < s2 < s10`.
fn natural_cmp(a: &str, b: &str) -> Ordering {
    let split = |s: &str| {
        let pos = s
            .char_indices()
            .find(|(_, c)| c.is_ascii_digit())
            .map(|(i, _)| i)
            .unwrap_or(s.len());
        let (head, tail) = s.split_at(pos);
        (head.to_string(), tail.parse::<u64>().ok())
    };
    let (ha, na) = split(a);
    let (hb, nb) = split(b);
    ha.cmp(&hb).then(na.cmp(&nb)).then(a.cmp(b))
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut names: Vec<&String> = self.coeffs.keys().collect();
        names.sort_by(|a, b| natural_cmp(a, b));
        let mut first = true;
        for n in names {
            let c = &self.coeffs[n];
            let neg = c.is_negative();
            let mag = c.abs();
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
            if mag.is_one() {
                write!(f, "{n}")?;
            } else {
                write!(f, "{mag}*{n}")?;
            }
        }
        if first {
            write!(f, "{}", self.constant)?;
        } else if !self.constant.is_zero() {
            if self.constant.is_negative() {
                write!(f, " - {}", self.constant.abs())?;
            } else {
                write!(f, " + {}", self.constant)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for AffineForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assign(pairs: &[(&str, Rat)]) -> BTreeMap<String, Rat> {
        pairs
            .iter()
            .map(|(n, v)| (n.to_string(), v.clone()))
            .collect()
    }

    #[test]
    fn specialize_examples() {
        // (s + s1 + 1/2) at s=0, s1=-1/2 -> 0
        let mut f = AffineForm::constant(Rat::half(1));
        f.add_coeff("s", Rat::one());
        f.add_coeff("s1", Rat::one());
        let v = f
            .specialize(&assign(&[("s", Rat::zero()), ("s1", Rat::half(-1))]))
            .unwrap();
        assert!(v.is_zero());

        // (s) at s=3/4 -> 3/4
        let id = AffineForm::param("s");
        assert_eq!(
            id.specialize(&assign(&[("s", Rat::new(3, 4))])).unwrap(),
            Rat::new(3, 4)
        );

        // (s + s1 + s2 + 1) at s=0, s1=s2=-1/2 -> 0
        let mut g = AffineForm::constant(Rat::one());
        for n in ["s", "s1", "s2"] {
            g.add_coeff(n, Rat::one());
        }
        let v = g
            .specialize(&assign(&[
                ("s", Rat::zero()),
                ("s1", Rat::half(-1)),
                ("s2", Rat::half(-1)),
            ]))
            .unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn missing_parameter_is_an_error() {
        let f = AffineForm::param("s1");
        assert_eq!(
            f.specialize(&BTreeMap::new()),
            Err(Error::MissingParameter("s1".into()))
        );
    }

    #[test]
    fn display_format() {
        let mut f = AffineForm::constant(Rat::half(1));
        f.add_coeff("s", Rat::one());
        f.add_coeff("s1", Rat::one());
        assert_eq!(f.to_string(), "s + s1 + 1/2");

        let mut g = AffineForm::constant(Rat::half(-1));
        g.add_coeff("s", Rat::one());
        g.add_coeff("s2", Rat::half(1));
        assert_eq!(g.to_string(), "s + 1/2*s2 - 1/2");

        assert_eq!(AffineForm::zero().to_string(), "0");
        // natural order: s10 after s2
        let mut h = AffineForm::zero();
        h.add_coeff("s10", Rat::one());
        h.add_coeff("s2", Rat::one());
        assert_eq!(h.to_string(), "s2 + s10");
    }

    #[test]
    fn compose_keeps_affine() {
        // substitute s1 -> 1 - s1 in (s + 2*s1 + 1): get s - 2*s1 + 3
        let mut f = AffineForm::constant(Rat::one());
        f.add_coeff("s", Rat::one());
        f.add_coeff("s1", Rat::from(2));
        let mut sub = BTreeMap::new();
        let mut g = AffineForm::constant(Rat::one());
        g.add_coeff("s1", -Rat::one());
        sub.insert("s1".to_string(), g);
        let h = f.compose(&sub);
        assert_eq!(h.coeff("s1"), -Rat::from(2));
        assert_eq!(h.constant_part(), &Rat::from(3));
    }
}
