//! Internal polynomial kernel for the b-function oracle.
//!
//! Same packed-key representation as [`crate::poly::SymbolicPoly`], but with
//! fixed-width rational coefficients: numerator and denominator in `i128`,
//! always reduced, every operation overflow-checked. Nothing is ever rounded
//! or wrapped; an overflow aborts the run with a typed error and the caller
//! reports it. Conversion back to arbitrary-precision rationals happens at
//! the module boundary.

use crate::error::{Error, Result};
use crate::poly::{Mono, SymbolicPoly};
use crate::rational::Rat;
use num::bigint::BigInt;
use num::ToPrimitive;
use std::cmp::Ordering;

const OVERFLOW: Error = Error::ArithmeticOverflow;

/// Reduced rational on checked 128-bit integers; denominator positive.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Q128 {
    n: i128,
    d: i128,
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Q128 {
    pub const ZERO: Q128 = Q128 { n: 0, d: 1 };

    pub fn from_int(n: i128) -> Q128 {
        Q128 { n, d: 1 }
    }

    fn new_reduced(n: i128, d: i128) -> Q128 {
        debug_assert!(d > 0);
        if n == 0 {
            return Q128::ZERO;
        }
        let g = gcd_i128(n, d);
        Q128 { n: n / g, d: d / g }
    }

    pub fn is_zero(&self) -> bool {
        self.n == 0
    }

    pub fn neg(&self) -> Q128 {
        Q128 {
            n: -self.n,
            d: self.d,
        }
    }

    pub fn add(&self, o: &Q128) -> Result<Q128> {
        if self.n == 0 {
            return Ok(*o);
        }
        if o.n == 0 {
            return Ok(*self);
        }
        let g = gcd_i128(self.d, o.d);
        let (da, db) = (self.d / g, o.d / g);
        let lhs = self.n.checked_mul(db).ok_or(OVERFLOW)?;
        let rhs = o.n.checked_mul(da).ok_or(OVERFLOW)?;
        let num = lhs.checked_add(rhs).ok_or(OVERFLOW)?;
        let den = self.d.checked_mul(db).ok_or(OVERFLOW)?;
        Ok(Q128::new_reduced(num, den))
    }

    pub fn mul(&self, o: &Q128) -> Result<Q128> {
        if self.n == 0 || o.n == 0 {
            return Ok(Q128::ZERO);
        }
        let g1 = gcd_i128(self.n, o.d);
        let g2 = gcd_i128(o.n, self.d);
        let n = (self.n / g1).checked_mul(o.n / g2).ok_or(OVERFLOW)?;
        let d = (self.d / g2).checked_mul(o.d / g1).ok_or(OVERFLOW)?;
        Ok(Q128 { n, d })
    }

    pub fn div(&self, o: &Q128) -> Result<Q128> {
        assert!(o.n != 0, "division by zero");
        let inv = if o.n > 0 {
            Q128 { n: o.d, d: o.n }
        } else {
            Q128 { n: -o.d, d: -o.n }
        };
        self.mul(&inv)
    }

    pub fn from_rat(r: &Rat) -> Result<Q128> {
        let n = r.numer().to_i128().ok_or(OVERFLOW)?;
        let d = r.denom().to_i128().ok_or(OVERFLOW)?;
        Ok(Q128 { n, d })
    }

    pub fn to_rat(&self) -> Rat {
        Rat::from_bigint(BigInt::from(self.n)) / Rat::from_bigint(BigInt::from(self.d))
    }
}

/// Sparse polynomial on packed keys with `Q128` coefficients, sorted by key.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EPoly {
    pub terms: Vec<(u128, Q128)>,
}

impl EPoly {
    pub fn zero() -> EPoly {
        EPoly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn from_symbolic(p: &SymbolicPoly) -> Result<EPoly> {
        let terms = p
            .terms()
            .map(|(m, c)| Ok((m.raw(), Q128::from_rat(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(EPoly { terms })
    }

    pub fn to_symbolic(&self, vars: &std::sync::Arc<crate::poly::VarSet>) -> SymbolicPoly {
        let mut out = SymbolicPoly::zero(vars.clone());
        for (k, c) in &self.terms {
            out.add_term(Mono::from_raw(*k), c.to_rat());
        }
        out
    }

    /// Merge-add, consuming both operands; coefficients move.
    pub fn add_owned(self, other: EPoly) -> Result<EPoly> {
        if self.is_zero() {
            return Ok(other);
        }
        if other.is_zero() {
            return Ok(self);
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut ia = self.terms.into_iter().peekable();
        let mut ib = other.terms.into_iter().peekable();
        loop {
            let take_a = match (ia.peek(), ib.peek()) {
                (None, None) => break,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (Some((ka, _)), Some((kb, _))) => match ka.cmp(kb) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => {
                        let (k, ca) = ia.next().unwrap();
                        let (_, cb) = ib.next().unwrap();
                        let c = ca.add(&cb)?;
                        if !c.is_zero() {
                            out.push((k, c));
                        }
                        continue;
                    }
                },
            };
            out.push(if take_a {
                ia.next().unwrap()
            } else {
                ib.next().unwrap()
            });
        }
        Ok(EPoly { terms: out })
    }

    /// Multiply by a polynomial with few terms via a k-way ordered merge.
    /// Memory stays proportional to the output.
    pub fn mul_small(&self, small: &EPoly) -> Result<EPoly> {
        if self.is_zero() || small.is_zero() {
            return Ok(EPoly::zero());
        }
        if small.terms.len() == 1 {
            let (ks, cs) = small.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (k, c) in &self.terms {
                terms.push((k + ks, c.mul(&cs)?));
            }
            return Ok(EPoly { terms });
        }
        use std::collections::BinaryHeap;
        // Min-heap over (next key, stream index); streams are `self` shifted
        // by each term of `small`, which preserves sortedness.
        #[derive(PartialEq, Eq)]
        struct Head(u128, usize);
        impl Ord for Head {
            fn cmp(&self, o: &Self) -> Ordering {
                o.0.cmp(&self.0).then(o.1.cmp(&self.1))
            }
        }
        impl PartialOrd for Head {
            fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
                Some(self.cmp(o))
            }
        }
        let k = small.terms.len();
        let mut pos = vec![0usize; k];
        let mut heap = BinaryHeap::with_capacity(k);
        for (j, (ks, _)) in small.terms.iter().enumerate() {
            heap.push(Head(self.terms[0].0 + ks, j));
        }
        let mut out: Vec<(u128, Q128)> = Vec::with_capacity(self.terms.len() * 2);
        while let Some(Head(key, j)) = heap.pop() {
            let (_, cs) = small.terms[j];
            let (_, c) = self.terms[pos[j]];
            let prod = c.mul(&cs)?;
            match out.last_mut() {
                Some((lk, lc)) if *lk == key => {
                    *lc = lc.add(&prod)?;
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                _ => {
                    if !prod.is_zero() {
                        out.push((key, prod));
                    }
                }
            }
            pos[j] += 1;
            if pos[j] < self.terms.len() {
                heap.push(Head(self.terms[pos[j]].0 + small.terms[j].0, j));
            }
        }
        Ok(EPoly { terms: out })
    }

    pub fn scale(&self, c: &Q128) -> Result<EPoly> {
        if c.is_zero() {
            return Ok(EPoly::zero());
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| Ok((*k, v.mul(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(EPoly { terms })
    }

    /// d/dx_i with the shared packed-key layout.
    pub fn derive(&self, i: usize) -> Result<EPoly> {
        let step = Mono::var(i).raw();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (k, c) in &self.terms {
            let e = Mono::from_raw(*k).exponent(i);
            if e == 0 {
                continue;
            }
            terms.push((k - step, c.mul(&Q128::from_int(e as i128))?));
        }
        Ok(EPoly { terms })
    }

    /// Leading (maximal) key.
    pub fn leading(&self) -> Option<(u128, Q128)> {
        self.terms.last().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarSet;

    #[test]
    fn q128_arithmetic() {
        let a = Q128::new_reduced(6, 4);
        assert_eq!(a, Q128 { n: 3, d: 2 });
        let b = Q128::from_int(-2);
        assert_eq!(a.mul(&b).unwrap(), Q128 { n: -3, d: 1 });
        assert_eq!(a.add(&b).unwrap(), Q128 { n: -1, d: 2 });
        assert!(Q128::from_int(i128::MAX / 2)
            .mul(&Q128::from_int(4))
            .is_err());
    }

    #[test]
    fn round_trip_and_mul_small() {
        let vars = VarSet::new(vec!["x".into(), "y".into()]);
        let mut p = SymbolicPoly::zero(vars.clone());
        p.add_term(Mono::from_exps(&[2, 0]), Rat::from(1));
        p.add_term(Mono::from_exps(&[0, 1]), Rat::from(-3));
        let e = EPoly::from_symbolic(&p).unwrap();
        assert_eq!(e.to_symbolic(&vars), p);

        let prod = e.mul_small(&e).unwrap().to_symbolic(&vars);
        assert_eq!(prod, p.mul(&p));
    }
}
