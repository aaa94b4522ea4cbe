//! Enumeration of the conjecturally cuspidal character-sheaf labels: Hecke
//! algebra descriptors per orbit representative, multipartition labels of
//! irreducibles under the generic-parameter count, the delta-splitting and
//! unordered identification at the middle representative, induced module
//! dimensions, and the monodromy polynomials attached to the distinguished
//! characters.
//!
//! Irreducibles of the unequal-parameter Hecke algebras are *labeled* by the
//! multipartitions indexing the underlying reflection group's irreducibles;
//! every enumeration output carries the `generic_parameter_labeling` marker
//! recording that assumption.

use crate::b_function::DistinguishedCharacter;
use crate::error::{Error, Result};
use crate::grading::{Family, GradingSpec, ReflectionGroupDesc};
use crate::rational::Rat;
use crate::rotation::RotationNumber;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// An unequal-parameter Hecke algebra descriptor `H^{a,b}(G(m,1,k))`,
/// treated as opaque: only its irreducible count (generic = the group's) is
/// consumed here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeDesc {
    pub group: ReflectionGroupDesc,
    pub params: (i64, i64),
}

impl fmt::Display for HeckeDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "H^{{{},{}}}({})",
            self.params.0, self.params.1, self.group
        )
    }
}

impl Serialize for HeckeDesc {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Weakly decreasing parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Partition(pub Vec<usize>);

impl Partition {
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Standard Young tableaux count by the hook length formula.
    pub fn standard_tableaux(&self) -> u64 {
        let n = self.size();
        if n == 0 {
            return 1;
        }
        let conj = self.conjugate();
        let mut hooks: u64 = 1;
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                let hook = (row - j) + (conj.0[j] - i) - 1;
                hooks *= hook as u64;
            }
        }
        factorial(n) / hooks
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition(
            (0..cols)
                .map(|j| self.0.iter().filter(|&&r| r > j).count())
                .collect(),
        )
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// An m-tuple of partitions with total size k.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct MultiPartition {
    pub components: Vec<Partition>,
}

impl MultiPartition {
    pub fn total(&self) -> usize {
        self.components.iter().map(Partition::size).sum()
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|p| {
                if p.0.is_empty() {
                    "-".to_string()
                } else {
                    p.0.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                }
            })
            .collect();
        write!(f, "({})", parts.join(";"))
    }
}

/// All partitions of n, descending lexicographic.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n.max(1), &mut Vec::new(), &mut out);
    out
}

/// All m-multipartitions of k, ordered deterministically.
pub fn multipartitions(m: usize, k: usize) -> Vec<MultiPartition> {
    fn go(
        m: usize,
        k: usize,
        slot: usize,
        acc: &mut Vec<Partition>,
        out: &mut Vec<MultiPartition>,
    ) {
        if slot == m {
            if k == 0 {
                out.push(MultiPartition {
                    components: acc.clone(),
                });
            }
            return;
        }
        for size in 0..=k {
            for p in partitions(size) {
                acc.push(p);
                go(m, k - size, slot + 1, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(m, k, 0, &mut Vec::new(), &mut out);
    out.sort();
    out
}

pub fn multipartition_count(m: usize, k: usize) -> u64 {
    multipartitions(m, k).len() as u64
}

/// The labels of the irreducibles of a Hecke descriptor under generic
/// parameters: all multipartitions for its reflection group.
pub fn irr_labels(h: &HeckeDesc) -> Vec<MultiPartition> {
    multipartitions(h.group.m_param, h.group.rank)
}

/// Irreducible dimension of G(m,1,k) at a multipartition label:
/// multinomial across components times standard-tableaux counts.
pub fn irrep_dimension(group: &ReflectionGroupDesc, label: &MultiPartition) -> u64 {
    assert_eq!(group.m_param, label.components.len());
    assert_eq!(group.rank, label.total());
    let mut remaining = group.rank;
    let mut dim: u64 = 1;
    for part in &label.components {
        let size = part.size();
        dim *= binomial(remaining, size);
        dim *= part.standard_tableaux();
        remaining -= size;
    }
    dim
}

/// The ordered pair of Hecke descriptors at the k-th orbit representative.
pub fn hecke_descriptors(spec: &GradingSpec, k: usize) -> Result<(HeckeDesc, HeckeDesc)> {
    spec.require_positive_rank()?;
    let (l, p, q, r) = (spec.l as i64, spec.p as i64, spec.q as i64, spec.r);
    if k > r {
        return Err(Error::IndexOutOfRange {
            index: k,
            lo: 0,
            hi: r,
        });
    }
    let m0 = spec.m_zero();
    let (first, second) = match spec.family {
        Family::A => ((l + p + q + 1, l - p - q), (l + 1 + p - q, l + q - p)),
        Family::C => ((l - p + q, l + p - q), (l + p + q + 1, l - p - q - 1)),
        Family::BD => {
            if p == 0 && q == 0 {
                return Err(Error::StableBdUnsupported(
                    "its Hecke parameters come from the stable-case analysis",
                ));
            }
            let a = p.max(q);
            let b = p.min(q);
            ((l - b + a, l + b - a), (l + b + a, l - b - a))
        }
    };
    let (pk, prk) = if (spec.p + spec.q) % 2 == 0 {
        (first, second)
    } else {
        (second, first)
    };
    Ok((
        HeckeDesc {
            group: ReflectionGroupDesc::new(m0, 1, k),
            params: pk,
        },
        HeckeDesc {
            group: ReflectionGroupDesc::new(m0, 1, r - k),
            params: prk,
        },
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Delta {
    I,
    II,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SheafLabel {
    pub k: usize,
    pub rho1: MultiPartition,
    pub rho2: MultiPartition,
    pub delta: Option<Delta>,
}

#[derive(Debug, Clone)]
pub struct SheafEnumeration {
    pub spec: GradingSpec,
    /// Irreducible counts taken at generic Hecke parameters.
    pub generic_parameter_labeling: bool,
    pub labels: Vec<SheafLabel>,
}

/// Is the k-range folded to `[0, r/2]` with the unordered identification at
/// the midpoint?
pub fn quotient_case(spec: &GradingSpec) -> bool {
    match spec.family {
        Family::A => spec.q == 0,
        Family::C => false,
        Family::BD => spec.p.min(spec.q) == 0,
    }
}

/// The full label set of the main enumeration.
pub fn enumerate_sheaves(spec: &GradingSpec) -> Result<SheafEnumeration> {
    spec.require_positive_rank()?;
    let r = spec.r;
    let mut labels = Vec::new();
    if quotient_case(spec) {
        for k in 0..=r / 2 {
            let (h1, h2) = hecke_descriptors(spec, k)?;
            let rho1s = irr_labels(&h1);
            let rho2s = irr_labels(&h2);
            if 2 * k < r {
                for rho1 in &rho1s {
                    for rho2 in &rho2s {
                        labels.push(SheafLabel {
                            k,
                            rho1: rho1.clone(),
                            rho2: rho2.clone(),
                            delta: None,
                        });
                    }
                }
            } else {
                // midpoint: unordered distinct pairs once, equal pairs split
                assert_eq!(h1.params, h2.params, "midpoint parameter pairs differ");
                for (i, rho1) in rho1s.iter().enumerate() {
                    for rho2 in rho2s.iter().skip(i + 1) {
                        labels.push(SheafLabel {
                            k,
                            rho1: rho1.clone(),
                            rho2: rho2.clone(),
                            delta: None,
                        });
                    }
                    for delta in [Delta::I, Delta::II] {
                        labels.push(SheafLabel {
                            k,
                            rho1: rho1.clone(),
                            rho2: rho1.clone(),
                            delta: Some(delta),
                        });
                    }
                }
            }
        }
    } else {
        for k in 0..=r {
            let (h1, h2) = hecke_descriptors(spec, k)?;
            for rho1 in irr_labels(&h1) {
                for rho2 in irr_labels(&h2) {
                    labels.push(SheafLabel {
                        k,
                        rho1: rho1.clone(),
                        rho2,
                        delta: None,
                    });
                }
            }
        }
    }
    labels.sort();
    Ok(SheafEnumeration {
        spec: spec.clone(),
        generic_parameter_labeling: true,
        labels,
    })
}

/// The closed count the enumeration must reproduce.
pub fn expected_label_count(spec: &GradingSpec) -> Result<u64> {
    spec.require_positive_rank()?;
    if spec.family == Family::BD && spec.p == 0 && spec.q == 0 {
        return Err(Error::StableBdUnsupported(
            "its Hecke parameters come from the stable-case analysis",
        ));
    }
    let m0 = spec.m_zero();
    let r = spec.r;
    let count = |k: usize| multipartition_count(m0, k);
    Ok(if quotient_case(spec) {
        let mut total: u64 = (0..r.div_ceil(2)).map(|k| count(k) * count(r - k)).sum();
        if r % 2 == 0 {
            let c = count(r / 2);
            total += c * (c - 1) / 2 + 2 * c;
        }
        total
    } else {
        (0..=r).map(|k| count(k) * count(r - k)).sum()
    })
}

/// `dim V = [W_a : W0] * dim rho1 * dim rho2`, halved at delta-split labels.
pub fn induced_dimension(spec: &GradingSpec, label: &SheafLabel) -> Result<u64> {
    let (h1, h2) = hecke_descriptors(spec, label.k)?;
    let w = spec.little_weyl().order();
    let sub = h1.group.order() * h2.group.order();
    assert_eq!(w % sub, 0, "stabilizer order must divide the group order");
    let index = w / sub;
    let dim = index
        * irrep_dimension(&h1.group, &label.rho1)
        * irrep_dimension(&h2.group, &label.rho2);
    if label.delta.is_some() {
        if dim % 2 != 0 {
            return Err(Error::OddSplitDimension(dim));
        }
        Ok(dim / 2)
    } else {
        Ok(dim)
    }
}

/// Rank check of the induced module at one representative:
/// `sum over ordered pairs of dim(rho1 x rho2) * dim V = |W_a|`.
pub fn isotypic_rank(spec: &GradingSpec, k: usize) -> Result<u64> {
    let (h1, h2) = hecke_descriptors(spec, k)?;
    let w = spec.little_weyl().order();
    let sub = h1.group.order() * h2.group.order();
    let index = w / sub;
    let mut total = 0u64;
    for rho1 in irr_labels(&h1) {
        for rho2 in irr_labels(&h2) {
            let d1 = irrep_dimension(&h1.group, &rho1);
            let d2 = irrep_dimension(&h2.group, &rho2);
            total += d1 * d2 * (index * d1 * d2);
        }
    }
    Ok(total)
}

/// The characteristic (= minimal) polynomial of the monodromy, with exact
/// unit-circle eigenvalues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyPolynomial {
    pub factors: Vec<(RotationNumber, u32)>,
}

impl MonodromyPolynomial {
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }
}

impl fmt::Display for MonodromyPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (ev, m)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if *m == 1 {
                write!(f, "({})", ev.factor_string())?;
            } else {
                write!(f, "({})^{}", ev.factor_string(), m)?;
            }
        }
        Ok(())
    }
}

impl Serialize for MonodromyPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Factor<'a> {
            alpha: &'a Rat,
            mult: u32,
        }
        serializer.collect_seq(self.factors.iter().map(|(ev, m)| Factor {
            alpha: ev.value(),
            mult: *m,
        }))
    }
}

/// Monodromy polynomial of a distinguished character: eigenvalues
/// `exp(2 pi i alpha)` over the Fourier-dual b-function roots `alpha`,
/// with the unit-interval preconditions verified.
pub fn monodromy_polynomial(
    spec: &GradingSpec,
    dc: &DistinguishedCharacter,
) -> Result<MonodromyPolynomial> {
    spec.require_rank_one()?;
    let roots = dc.b.specialized_roots(&dc.params)?;
    for (root, _) in &roots {
        if root.is_negative() || root >= &Rat::one() {
            return Err(Error::Precondition(format!(
                "b-function root {root} outside [0,1)"
            )));
        }
    }
    // Dual roots are the negatives; where the closed form is displayed,
    // recompute them independently from the dual exponents.
    if let Ok(b) = crate::b_function::closed_form_b(spec) {
        let dual_params = crate::b_function::dual_params(spec, &dc.params)?;
        let dual_roots = b.specialized_roots(&dual_params)?;
        let negated: BTreeMap<Rat, u32> = roots.iter().map(|(r, m)| (-r, *m)).collect();
        if dual_roots.into_iter().collect::<BTreeMap<_, _>>() != negated {
            return Err(Error::Precondition(format!(
                "dual roots are not the negatives of the primal roots for {spec}"
            )));
        }
    }
    let mut factors: BTreeMap<RotationNumber, u32> = BTreeMap::new();
    for (root, mult) in &roots {
        let dual = -root;
        debug_assert!(dual > -Rat::one() && dual <= Rat::zero(), "dual root in (-1,0]");
        *factors.entry(RotationNumber::of(&dual)).or_insert(0) += mult;
    }
    let poly = MonodromyPolynomial {
        factors: factors.into_iter().collect(),
    };
    assert_eq!(poly.degree() as usize, spec.m_zero());
    Ok(poly)
}

impl Serialize for SheafLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(4))?;
        map.serialize_entry("k", &self.k)?;
        let as_rows = |mp: &MultiPartition| -> Vec<Vec<usize>> {
            mp.components.iter().map(|p| p.0.clone()).collect()
        };
        map.serialize_entry("rho1", &as_rows(&self.rho1))?;
        map.serialize_entry("rho2", &as_rows(&self.rho2))?;
        map.serialize_entry("delta", &self.delta)?;
        map.end()
    }
}
