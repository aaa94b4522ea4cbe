//! Fundamental semi-invariants of the rank-one gradings: degrees, character
//! weights, the factorization of the invariant, the determinant character of
//! the K-action, integrality conditions on exponent tuples, and exact
//! symbolic construction of the polynomials themselves.
//!
//! Everything in this module requires `r = 1`; the tables do not exist in
//! higher rank.

use crate::coords::{Coordinates, Matrix};
use crate::error::{Error, Result};
use crate::grading::{Family, GradingSpec, KFactorKind};
use crate::poly::SymbolicPoly;
use crate::rational::Rat;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// How a semi-invariant enters the bookkeeping: as a free exponent of the
/// character `u_chi`, as a factor of the invariant `f`, or both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Role {
    FreeParameter,
    InvariantFactor,
    Both,
}

/// Exponents of `det(g_j)` over the GL factors of K, in the order of
/// `SemiInvariantTable::gl_indices`. SO factors carry no coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn zero(len: usize) -> Self {
        WeightVector(vec![0; len])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        WeightVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, k: i64) -> Self {
        WeightVector(self.0.iter().map(|c| c * k).collect())
    }
}

#[derive(Debug, Clone)]
pub struct SemiInvariant {
    pub index: usize,
    pub degree: usize,
    pub weight: WeightVector,
    pub role: Role,
    /// Expanded polynomial, attached on demand.
    pub symbolic: Option<SymbolicPoly>,
}

/// Exponents `n_i` with `f = prod f_i^{n_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantFactorization {
    pub exponents: BTreeMap<usize, u32>,
}

/// The free exponents `s_j` of `u_chi`, indexed by the family's free set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterParams {
    values: BTreeMap<usize, Rat>,
}

impl CharacterParams {
    pub fn new(table: &SemiInvariantTable, values: BTreeMap<usize, Rat>) -> Result<Self> {
        for &i in values.keys() {
            if !table.free_indices.contains(&i) {
                return Err(Error::IndexOutsideFreeSet(i, table.free_indices.clone()));
            }
        }
        for &i in &table.free_indices {
            if !values.contains_key(&i) {
                return Err(Error::MissingParameter(format!("s{i}")));
            }
        }
        Ok(CharacterParams { values })
    }

    /// All-zero parameters (the trivial character direction).
    pub fn zeros(table: &SemiInvariantTable) -> Self {
        CharacterParams {
            values: table
                .free_indices
                .iter()
                .map(|&i| (i, Rat::zero()))
                .collect(),
        }
    }

    pub fn get(&self, index: usize) -> Result<&Rat> {
        self.values
            .get(&index)
            .ok_or_else(|| Error::MissingParameter(format!("s{index}")))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&usize, &Rat)> {
        self.values.iter()
    }

    /// As an `s{i} -> value` map for affine-form specialization.
    pub fn as_name_map(&self) -> BTreeMap<String, Rat> {
        self.values
            .iter()
            .map(|(i, v)| (format!("s{i}"), v.clone()))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct SemiInvariantTable {
    pub spec: GradingSpec,
    pub entries: Vec<SemiInvariant>,
    /// Paper indices of the GL factors of K, aligning every WeightVector.
    pub gl_indices: Vec<usize>,
    pub free_indices: Vec<usize>,
    pub factorization: InvariantFactorization,
    /// Table indices whose polynomial splits into two linear factors
    /// (q = 1 in type A; q = 1 or p = 1 in type BD).
    pub reducible: Vec<usize>,
    /// The family's unit sentinels (f_0, and f_{l+1} in type BD).
    pub sentinels: Vec<usize>,
}

impl SemiInvariantTable {
    pub fn entry(&self, index: usize) -> Result<&SemiInvariant> {
        self.entries
            .iter()
            .find(|e| e.index == index)
            .ok_or(Error::IndexOutOfRange {
                index,
                lo: self.entries.first().map_or(0, |e| e.index),
                hi: self.entries.last().map_or(0, |e| e.index),
            })
    }

    /// Position of a paper GL-factor index inside weight vectors.
    fn gl_slot(&self, paper_index: usize) -> Option<usize> {
        self.gl_indices.iter().position(|&j| j == paper_index)
    }

    /// Unit weight at the given paper index; zero when the factor is special
    /// orthogonal (its determinant character is trivial).
    fn unit_weight(&self, paper_index: usize, exponent: i64) -> WeightVector {
        let mut w = WeightVector::zero(self.gl_indices.len());
        if let Some(slot) = self.gl_slot(paper_index) {
            w.0[slot] = exponent;
        }
        w
    }
}

/// The complete semi-invariant table of a rank-one grading.
pub fn semi_invariant_table(spec: &GradingSpec) -> Result<SemiInvariantTable> {
    spec.require_rank_one()?;
    let (l, p, q) = (spec.l, spec.p, spec.q);
    let gl_indices: Vec<usize> = spec
        .k_factors()
        .iter()
        .filter(|f| f.kind == KFactorKind::GL)
        .map(|f| f.index)
        .collect();

    let mut table = SemiInvariantTable {
        spec: spec.clone(),
        entries: Vec::new(),
        gl_indices,
        free_indices: free_index_set(spec),
        factorization: InvariantFactorization {
            exponents: BTreeMap::new(),
        },
        reducible: Vec::new(),
        sentinels: Vec::new(),
    };

    let free = table.free_indices.clone();
    let role_of = |i: usize, in_f: bool| -> Role {
        match (free.contains(&i), in_f) {
            (true, true) => Role::Both,
            (true, false) => Role::FreeParameter,
            (false, true) => Role::InvariantFactor,
            (false, false) => unreachable!("semi-invariant {i} neither free nor a factor"),
        }
    };
    let fact = factorization_exponents(spec);
    let in_f = |i: usize| fact.contains_key(&i);

    match spec.family {
        Family::A => {
            table.sentinels.push(0);
            for i in 1..=q {
                table.entries.push(SemiInvariant {
                    index: i,
                    degree: 2 * i * spec.dim(i),
                    weight: table.unit_weight(i, -2),
                    role: role_of(i, in_f(i)),
                    symbolic: None,
                });
            }
            for i in q + 1..=l - p {
                let w = table.unit_weight(i - 1, 1).add(&table.unit_weight(i, -1));
                table.entries.push(SemiInvariant {
                    index: i,
                    degree: 1,
                    weight: w,
                    role: role_of(i, in_f(i)),
                    symbolic: None,
                });
            }
            for i in l - p + 1..=l {
                table.entries.push(SemiInvariant {
                    index: i,
                    degree: spec.dim(i - 1) * (2 * (l - i + 1) + 1),
                    weight: table.unit_weight(i - 1, 2),
                    role: role_of(i, in_f(i)),
                    symbolic: None,
                });
            }
            table.entries.push(SemiInvariant {
                index: l + 1,
                degree: spec.dim(l),
                weight: table.unit_weight(l, 2),
                role: role_of(l + 1, in_f(l + 1)),
                symbolic: None,
            });
            if q == 1 {
                table.reducible.push(1);
            }
        }
        Family::C => {
            table.entries.push(SemiInvariant {
                index: 1,
                degree: spec.dim(1),
                weight: table.unit_weight(1, -2),
                role: role_of(1, in_f(1)),
                symbolic: None,
            });
            for i in 2..=q + 1 {
                table.entries.push(SemiInvariant {
                    index: i,
                    degree: (2 * i - 1) * spec.dim(i),
                    weight: table.unit_weight(i, -2),
                    role: role_of(i, in_f(i)),
                    symbolic: None,
                });
            }
            for i in q + 2..=l - p {
                let w = table.unit_weight(i - 1, 1).add(&table.unit_weight(i, -1));
                table.entries.push(SemiInvariant {
                    index: i,
                    degree: 1,
                    weight: w,
                    role: role_of(i, in_f(i)),
                    symbolic: None,
                });
            }
            for i in l - p + 1..=l {
                table.entries.push(SemiInvariant {
                    index: i,
                    degree: spec.dim(i - 1) * (2 * (l - i + 1) + 1),
                    weight: table.unit_weight(i - 1, 2),
                    role: role_of(i, in_f(i)),
                    symbolic: None,
                });
            }
            table.entries.push(SemiInvariant {
                index: l + 1,
                degree: spec.dim(l),
                weight: table.unit_weight(l, 2),
                role: role_of(l + 1, in_f(l + 1)),
                symbolic: None,
            });
        }
        Family::BD => {
            table.sentinels.push(0);
            table.sentinels.push(l + 1);
            for i in 1..=q {
                table.entries.push(SemiInvariant {
                    index: i,
                    degree: 2 * i * spec.dim(i),
                    weight: table.unit_weight(i, -2),
                    role: role_of(i, in_f(i)),
                    symbolic: None,
                });
            }
            for i in q + 1..=l - p {
                let w = table.unit_weight(i - 1, 1).add(&table.unit_weight(i, -1));
                table.entries.push(SemiInvariant {
                    index: i,
                    degree: 1,
                    weight: w,
                    role: role_of(i, in_f(i)),
                    symbolic: None,
                });
            }
            for i in l - p + 1..=l {
                table.entries.push(SemiInvariant {
                    index: i,
                    degree: spec.dim(i - 1) * 2 * (l - i + 1),
                    weight: table.unit_weight(i - 1, 2),
                    role: role_of(i, in_f(i)),
                    symbolic: None,
                });
            }
            if q == 1 {
                table.reducible.push(1);
            }
            if p == 1 {
                table.reducible.push(l);
            }
        }
    }

    table.factorization = InvariantFactorization { exponents: fact };
    Ok(table)
}

/// Free index set of the exponent tuple `s_bullet` per family.
pub fn free_index_set(spec: &GradingSpec) -> Vec<usize> {
    let (l, p, q) = (spec.l, spec.p, spec.q);
    match spec.family {
        Family::A => (1..=l - p).chain(l - p + 2..=l + 1).collect(),
        Family::C => (1..=q).chain(q + 2..=l + 1).collect(),
        Family::BD => (1..q.max(1)).chain(q + 1..=l).collect(),
    }
}

fn factorization_exponents(spec: &GradingSpec) -> BTreeMap<usize, u32> {
    let (l, p, q) = (spec.l, spec.p, spec.q);
    let mut n = BTreeMap::new();
    match spec.family {
        Family::A | Family::BD => {
            if q >= 1 {
                n.insert(q, 1);
            }
            for i in q + 1..=l - p {
                n.insert(i, 2);
            }
            // In type BD the l-p+1 slot is the unit sentinel when p = 0.
            if spec.family == Family::A || p >= 1 {
                n.insert(l - p + 1, 1);
            }
        }
        Family::C => {
            n.insert(q + 1, 1);
            for i in q + 2..=l - p {
                n.insert(i, 2);
            }
            n.insert(l - p + 1, 1);
        }
    }
    n
}

/// `invariant_factorization(spec)`: exponents with both degree and weight
/// identities holding.
pub fn invariant_factorization(spec: &GradingSpec) -> Result<InvariantFactorization> {
    Ok(semi_invariant_table(spec)?.factorization)
}

/// Paper GL-factor indices of K (the coordinates of every WeightVector).
pub fn gl_factor_indices(spec: &GradingSpec) -> Vec<usize> {
    spec.k_factors()
        .iter()
        .filter(|f| f.kind == KFactorKind::GL)
        .map(|f| f.index)
        .collect()
}

fn unit_gl_weight(gl: &[usize], paper_index: usize, exponent: i64) -> WeightVector {
    let mut w = WeightVector::zero(gl.len());
    if let Some(slot) = gl.iter().position(|&j| j == paper_index) {
        w.0[slot] = exponent;
    }
    w
}

/// Weight of the determinant of the K-action on g_1, per the closed formula.
/// Valid in any rank; factor indices landing on orthogonal factors contribute
/// trivially.
pub fn det_weight(spec: &GradingSpec) -> Result<WeightVector> {
    spec.require_positive_rank()?;
    let gl = gl_factor_indices(spec);
    let (l, p, q) = (spec.l, spec.p, spec.q);
    let mut w = WeightVector::zero(gl.len());
    match spec.family {
        Family::A | Family::BD => {
            for i in 1..q {
                w = w.add(&unit_gl_weight(&gl, i, -2));
            }
            if q >= 1 {
                w = w.add(&unit_gl_weight(&gl, q, -1));
            }
            w = w.add(&unit_gl_weight(&gl, l - p, 1));
            let hi = if spec.family == Family::A { l } else { l - 1 };
            for i in (l - p + 1).min(hi + 1)..=hi {
                w = w.add(&unit_gl_weight(&gl, i, 2));
            }
        }
        Family::C => {
            for i in 1..=q {
                w = w.add(&unit_gl_weight(&gl, i, -2));
            }
            w = w.add(&unit_gl_weight(&gl, q + 1, -1));
            w = w.add(&unit_gl_weight(&gl, l - p, 1));
            for i in l - p + 1..=l {
                w = w.add(&unit_gl_weight(&gl, i, 2));
            }
        }
    }
    Ok(w)
}

/// Independent recomputation of the determinant weight: sum the diagonal
/// torus weights of every coordinate of g_1 and check that each GL factor's
/// slots contribute uniformly.
pub fn det_weight_from_torus(spec: &GradingSpec) -> Result<WeightVector> {
    spec.require_positive_rank()?;
    let gl = gl_factor_indices(spec);
    let coords = Coordinates::new(spec);
    let mut per_slot: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
    for f in spec.k_factors() {
        if f.kind == KFactorKind::GL {
            per_slot.insert(f.index, vec![0; f.size]);
        }
    }
    for vi in 0..coords.num_vars() {
        for &(factor, slot, e) in &coords.var_info(vi).torus_weight {
            if let Some(v) = per_slot.get_mut(&factor) {
                v[slot] += e;
            }
        }
    }
    let mut w = WeightVector::zero(gl.len());
    for (pos, &j) in gl.iter().enumerate() {
        let slots = &per_slot[&j];
        let first = slots[0];
        if slots.iter().any(|&c| c != first) {
            return Err(Error::InconsistentWeightSystem(format!(
                "determinant weight non-uniform on GL factor g{j}"
            )));
        }
        w.0[pos] = first;
    }
    Ok(w)
}

/// Per-family integrality pattern defining `X^*(K)` membership.
pub fn lattice_condition(spec: &GradingSpec, params: &CharacterParams) -> Result<bool> {
    let table = semi_invariant_table(spec)?;
    let (l, p, q) = (spec.l, spec.p, spec.q);
    // (half-integer range 1, integer range, half-integer range 2)
    let (half1, ints, half2): (Vec<usize>, Vec<usize>, Vec<usize>) = match spec.family {
        Family::A => (
            (1..=q).collect(),
            (q + 1..=l - p).collect(),
            (l - p + 2..=l + 1).collect(),
        ),
        Family::C => (
            (1..=q).collect(),
            (q + 2..=l - p).collect(),
            (l - p + 1..=l + 1).collect(),
        ),
        Family::BD => (
            (1..q.max(1)).collect(),
            (q + 1..=l - p).collect(),
            (l - p + 1..=l).collect(),
        ),
    };
    let _ = &table;
    for i in half1.into_iter().chain(half2) {
        if !params.get(i)?.is_half_integer() {
            return Ok(false);
        }
    }
    for i in ints {
        if !params.get(i)?.is_integer() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Build the expanded polynomial of the i-th semi-invariant.
pub fn build_symbolic(spec: &GradingSpec, index: usize) -> Result<SymbolicPoly> {
    build_symbolic_budgeted(spec, index, default_build_budget())
}

/// Dimension guard for determinant expansion; override with `GRLA_BUDGET`.
pub fn default_build_budget() -> usize {
    std::env::var("GRLA_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(12)
}

pub fn build_symbolic_budgeted(
    spec: &GradingSpec,
    index: usize,
    budget: usize,
) -> Result<SymbolicPoly> {
    spec.require_rank_one()?;
    let cap = budget.min(crate::poly::Mono::MAX_VARS);
    if spec.dim_g1() > cap {
        return Err(Error::BudgetExceeded(format!(
            "dim g_1 = {} exceeds the expansion budget {cap}",
            spec.dim_g1()
        )));
    }
    let coords = Coordinates::new(spec);
    build_symbolic_with(spec, &coords, index)
}

/// Chain product `x_a x_{a+1} ... x_b` of Hom-piece matrices.
fn hom_chain(coords: &Coordinates, a: usize, b: usize) -> Matrix {
    let mut acc: Option<Matrix> = None;
    for i in a..=b {
        let piece = coords
            .piece_by_label(i)
            .unwrap_or_else(|| panic!("missing Hom piece x{i}"));
        let m = coords.matrix(piece);
        acc = Some(match acc {
            None => m,
            Some(prev) => prev.mul(&m),
        });
    }
    acc.expect("empty chain")
}

pub(crate) fn build_symbolic_with(
    spec: &GradingSpec,
    coords: &Coordinates,
    index: usize,
) -> Result<SymbolicPoly> {
    let (l, p, q) = (spec.l, spec.p, spec.q);
    let table = semi_invariant_table(spec)?;
    table.entry(index)?;
    let sym_end = || coords.matrix(coords.piece_by_label(l + 1).expect("Sym2 end piece"));
    let poly = match spec.family {
        Family::A => {
            if index <= q {
                let chain = hom_chain(coords, 1, index);
                chain.transpose().mul(&chain).det()
            } else if index <= l - p {
                hom_chain(coords, index, index).rows[0][0].clone()
            } else if index <= l {
                let chain = hom_chain(coords, index, l);
                chain.mul(&sym_end()).mul(&chain.transpose()).det()
            } else {
                sym_end().det()
            }
        }
        Family::C => {
            let x1 = coords.matrix(coords.piece_by_label(1).expect("Sym2 dual piece"));
            if index == 1 {
                x1.det()
            } else if index <= q + 1 {
                let chain = hom_chain(coords, 2, index);
                chain.transpose().mul(&x1).mul(&chain).det()
            } else if index <= l - p {
                hom_chain(coords, index, index).rows[0][0].clone()
            } else if index <= l {
                let chain = hom_chain(coords, index, l);
                chain.mul(&sym_end()).mul(&chain.transpose()).det()
            } else {
                sym_end().det()
            }
        }
        Family::BD => {
            if index <= q {
                let chain = hom_chain(coords, 1, index);
                chain.transpose().mul(&chain).det()
            } else if index <= l - p {
                hom_chain(coords, index, index).rows[0][0].clone()
            } else {
                let chain = hom_chain(coords, index, l);
                chain.mul(&chain.transpose()).det()
            }
        }
    };
    let declared = table.entry(index)?.degree;
    assert_eq!(
        poly.total_degree() as usize,
        declared,
        "symbolic degree disagrees with the table for f_{index} of {spec}"
    );
    Ok(poly)
}

/// The invariant `f` as an expanded polynomial.
pub fn invariant_polynomial(spec: &GradingSpec, coords: &Coordinates) -> Result<SymbolicPoly> {
    let fact = factorization_exponents(spec);
    let mut f = SymbolicPoly::constant(coords.vars.clone(), Rat::one());
    for (&i, &n) in &fact {
        let fi = build_symbolic_with(spec, coords, i)?;
        f = f.mul(&fi.pow(n));
    }
    Ok(f)
}

/// One trial of the semi-invariance check.
#[derive(Debug, Clone, Serialize)]
pub struct SemiInvarianceTrial {
    pub trial: usize,
    pub pass: bool,
    /// The character value chi_i(g) of the sampled torus element.
    pub character_value: Rat,
}

#[derive(Debug, Clone, Serialize)]
pub struct SemiInvarianceReport {
    pub index: usize,
    pub trials: Vec<SemiInvarianceTrial>,
    pub all_pass: bool,
}

/// Check `f_i(g x) = chi_i(g) f_i(x)` identically in x for deterministic
/// rational elements of the diagonal torus of K (signs on the orthogonal
/// factors, arbitrary rationals on the GL factors).
pub fn verify_semi_invariance(
    spec: &GradingSpec,
    index: usize,
    trials: usize,
) -> Result<SemiInvarianceReport> {
    let table = semi_invariant_table(spec)?;
    let entry = table.entry(index)?.clone();
    let coords = Coordinates::new(spec);
    let f = build_symbolic_with(spec, &coords, index)?;

    // Fixed rational stream; no randomness, runs are reproducible.
    let pool = [
        Rat::from(2),
        Rat::half(1),
        Rat::from(-3),
        Rat::new(5, 7),
        Rat::from(1),
        Rat::new(-2, 3),
        Rat::from(5),
        Rat::new(7, 2),
    ];
    let mut results = Vec::with_capacity(trials);
    for t in 0..trials {
        let mut torus: BTreeMap<usize, Vec<Rat>> = BTreeMap::new();
        let mut cursor = t;
        for factor in spec.k_factors() {
            let entries: Vec<Rat> = match factor.kind {
                KFactorKind::GL => (0..factor.size)
                    .map(|k| {
                        let v = pool[(cursor + k) % pool.len()].clone();
                        v
                    })
                    .collect(),
                // Diagonal orthogonal elements: signs with determinant +1.
                KFactorKind::SO | KFactorKind::Sp => {
                    let mut signs: Vec<Rat> = (0..factor.size)
                        .map(|k| {
                            if (cursor + k) % 3 == 0 && factor.size >= 2 {
                                Rat::from(-1)
                            } else {
                                Rat::from(1)
                            }
                        })
                        .collect();
                    let minus: usize = signs.iter().filter(|s| s.is_negative()).count();
                    if minus % 2 == 1 {
                        for s in signs.iter_mut() {
                            if s.is_negative() {
                                *s = Rat::from(1);
                                break;
                            }
                        }
                    }
                    signs
                }
            };
            cursor += factor.size + 1;
            torus.insert(factor.index, entries);
        }

        let lambda = coords.torus_scalings(&torus);
        let transformed = f.scale_vars(&lambda);
        // chi_i(g) = prod det(g_j)^{w_j} over the GL factors.
        let mut chi = Rat::one();
        for (pos, &j) in table.gl_indices.iter().enumerate() {
            let det: Rat = torus[&j]
                .iter()
                .fold(Rat::one(), |acc, t| &acc * t);
            chi *= &det.pow(entry.weight.0[pos] as i32);
        }
        let expected = f.scale(&chi);
        results.push(SemiInvarianceTrial {
            trial: t,
            pass: transformed == expected,
            character_value: chi,
        });
    }
    let all_pass = results.iter().all(|t| t.pass);
    Ok(SemiInvarianceReport {
        index,
        trials: results,
        all_pass,
    })
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// JSON view of one table row: `{"index":1,"degree":2,"weight":{"g1":-2},...}`.
impl Serialize for SemiInvariantTableRow<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("index", &self.entry.index)?;
        map.serialize_entry("degree", &self.entry.degree)?;
        let weight: BTreeMap<String, i64> = self
            .gl_indices
            .iter()
            .zip(&self.entry.weight.0)
            .filter(|(_, &w)| w != 0)
            .map(|(j, &w)| (format!("g{j}"), w))
            .collect();
        map.serialize_entry("weight", &weight)?;
        map.serialize_entry("role", &self.entry.role)?;
        map.end()
    }
}

pub struct SemiInvariantTableRow<'a> {
    pub entry: &'a SemiInvariant,
    pub gl_indices: &'a [usize],
}

impl Serialize for SemiInvariantTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.entries.iter().map(|e| SemiInvariantTableRow {
            entry: e,
            gl_indices: &self.gl_indices,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::GradingSpec;

    fn spec(f: Family, o: usize, p: usize, q: usize) -> GradingSpec {
        GradingSpec::new(f, o, p, q, 1).unwrap()
    }

    fn weights_of(t: &SemiInvariantTable) -> BTreeMap<usize, Vec<i64>> {
        t.entries
            .iter()
            .map(|e| (e.index, e.weight.0.clone()))
            .collect()
    }

    #[test]
    fn table_type_a_examples() {
        // (A, d=3, p=0, q=1): f1 deg 2 weight det(g1)^-2; f2 deg 1 weight det(g1)^2
        let t = semi_invariant_table(&spec(Family::A, 3, 0, 1)).unwrap();
        let w = weights_of(&t);
        assert_eq!(t.entries.len(), 2);
        assert_eq!(t.entry(1).unwrap().degree, 2);
        assert_eq!(w[&1], vec![-2]);
        assert_eq!(t.entry(2).unwrap().degree, 1);
        assert_eq!(w[&2], vec![2]);
        assert_eq!(t.reducible, vec![1]);
    }

    #[test]
    fn table_type_c_examples() {
        // (C, m=4, p=q=0): f1 = det(x1) w -2e1; f2 = x2 w e1-e2; f3 w 2e2
        let t = semi_invariant_table(&spec(Family::C, 4, 0, 0)).unwrap();
        let w = weights_of(&t);
        assert_eq!(w[&1], vec![-2, 0]);
        assert_eq!(w[&2], vec![1, -1]);
        assert_eq!(w[&3], vec![0, 2]);
        assert_eq!(t.entry(1).unwrap().role, Role::InvariantFactor);
        assert_eq!(t.entry(2).unwrap().role, Role::Both);
        assert_eq!(t.entry(3).unwrap().role, Role::Both);
    }

    #[test]
    fn table_type_bd_examples() {
        // (BD, m=4, p=1, q=1): f1 w det(g1)^-2, f2 w det(g1)^2
        let t = semi_invariant_table(&spec(Family::BD, 4, 1, 1)).unwrap();
        let w = weights_of(&t);
        assert_eq!(t.entries.len(), 2);
        assert_eq!(w[&1], vec![-2]);
        assert_eq!(t.entry(1).unwrap().degree, 2);
        assert_eq!(w[&2], vec![2]);
        assert_eq!(t.entry(2).unwrap().degree, 2);
        assert_eq!(t.reducible, vec![1, 2]);
        assert_eq!(t.sentinels, vec![0, 3]);
    }

    #[test]
    fn factorization_examples() {
        // (A, d=3, p=0, q=0): f = f1^2 f2, total degree 3
        let s = spec(Family::A, 3, 0, 0);
        let t = semi_invariant_table(&s).unwrap();
        let n = &t.factorization.exponents;
        assert_eq!(n.get(&1), Some(&2));
        assert_eq!(n.get(&2), Some(&1));
        let deg: usize = n
            .iter()
            .map(|(&i, &e)| t.entry(i).unwrap().degree * e as usize)
            .sum();
        assert_eq!(deg, 3);

        // (C, m=4, p=q=0): f = f1 f2^2 f3, total degree 4
        let s = spec(Family::C, 4, 0, 0);
        let t = semi_invariant_table(&s).unwrap();
        assert_eq!(
            t.factorization.exponents,
            [(1, 1), (2, 2), (3, 1)].into_iter().collect()
        );

        // (A, d=3, p=0, q=1): f = f1 f2, degree 3
        let s = spec(Family::A, 3, 0, 1);
        let t = semi_invariant_table(&s).unwrap();
        assert_eq!(
            t.factorization.exponents,
            [(1, 1), (2, 1)].into_iter().collect()
        );
        let deg: usize = t
            .factorization
            .exponents
            .iter()
            .map(|(&i, &e)| t.entry(i).unwrap().degree * e as usize)
            .sum();
        assert_eq!(deg, 3);
    }

    #[test]
    fn degree_and_weight_identities_across_grid() {
        for (family, orders) in [
            (Family::A, vec![1usize, 3, 5, 7, 9, 11, 13]),
            (Family::C, vec![2, 4, 6, 8, 10, 12]),
            (Family::BD, vec![2, 4, 6, 8, 10, 12]),
        ] {
            for &o in &orders {
                for p in 0..=6 {
                    for q in 0..=6 {
                        let Ok(s) = GradingSpec::new(family, o, p, q, 1) else {
                            continue;
                        };
                        let t = semi_invariant_table(&s).unwrap();
                        // sum n_i deg f_i = d or m
                        let deg: usize = t
                            .factorization
                            .exponents
                            .iter()
                            .map(|(&i, &e)| t.entry(i).unwrap().degree * e as usize)
                            .sum();
                        assert_eq!(deg, s.m_zero(), "degree identity fails for {s}");
                        // sum n_i weight(chi_i) = 0
                        let mut w = WeightVector::zero(t.gl_indices.len());
                        for (&i, &e) in &t.factorization.exponents {
                            w = w.add(&t.entry(i).unwrap().weight.scale(e as i64));
                        }
                        assert!(w.is_zero(), "weight relation fails for {s}");
                        // det weight: closed formula equals torus computation
                        assert_eq!(
                            det_weight(&s).unwrap(),
                            det_weight_from_torus(&s).unwrap(),
                            "determinant weight mismatch for {s}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn det_weight_examples() {
        // (A,3,0,1): paper formula gives det(g_q)^-1 det(g_{l-p}) = trivial
        let w = det_weight(&spec(Family::A, 3, 0, 1)).unwrap();
        assert!(w.is_zero());
        // (C,4,0,0): det(g1)^-1 det(g2)
        let w = det_weight(&spec(Family::C, 4, 0, 0)).unwrap();
        assert_eq!(w.0, vec![-1, 1]);
        // (BD,4,0,0,r=2): trivial on GL factors
        let s = GradingSpec::new(Family::BD, 4, 0, 0, 2).unwrap();
        assert!(det_weight(&s).unwrap().is_zero());
    }

    #[test]
    fn build_symbolic_examples() {
        // (C, m=4, p=q=0): f1 is the single coordinate of the 1x1 block
        let f1 = build_symbolic(&spec(Family::C, 4, 0, 0), 1).unwrap();
        assert_eq!(f1.to_string(), "x1_1_1");

        // (A, d=3, p=0, q=1): f1 = x1_1_1^2 + x1_2_1^2
        let f1 = build_symbolic(&spec(Family::A, 3, 0, 1), 1).unwrap();
        assert_eq!(f1.to_string(), "x1_1_1^2 + x1_2_1^2");

        // (A, d=3, p=0, q=0): f = x1^2 x2 with 1-dimensional pieces
        let s = spec(Family::A, 3, 0, 0);
        let coords = Coordinates::new(&s);
        let f = invariant_polynomial(&s, &coords).unwrap();
        assert_eq!(f.to_string(), "x1_1_1^2*x2_1_1");
    }

    #[test]
    fn lattice_condition_patterns() {
        // (A, d=5, p=0, q=1): free set {1, 2}; s1 half-integral, s2 integral
        let s = spec(Family::A, 5, 0, 1);
        let t = semi_invariant_table(&s).unwrap();
        assert_eq!(t.free_indices, vec![1, 2]);
        let params = |v1: Rat, v2: Rat| {
            CharacterParams::new(&t, [(1, v1), (2, v2)].into_iter().collect()).unwrap()
        };
        assert!(lattice_condition(&s, &params(Rat::half(-1), Rat::zero())).unwrap());
        assert!(!lattice_condition(&s, &params(Rat::half(-1), Rat::half(1))).unwrap());
        assert!(lattice_condition(&s, &params(Rat::zero(), Rat::zero())).unwrap());
        // index outside the free set is an error
        assert!(CharacterParams::new(&t, [(3, Rat::zero())].into_iter().collect()).is_err());
    }

    #[test]
    fn semi_invariance_examples() {
        // (C, m=4, p=q=0), g=(2,1): f1(gx) = 2^-2 f1(x)
        let s = spec(Family::C, 4, 0, 0);
        let rep = verify_semi_invariance(&s, 1, 4).unwrap();
        assert!(rep.all_pass);

        // every semi-invariant of small rank-one specs passes
        for s in [
            spec(Family::A, 3, 0, 1),
            spec(Family::A, 3, 1, 0),
            spec(Family::A, 5, 1, 1),
            spec(Family::C, 4, 1, 0),
            spec(Family::C, 6, 0, 1),
            spec(Family::BD, 4, 1, 1),
            spec(Family::BD, 6, 1, 2),
        ] {
            let t = semi_invariant_table(&s).unwrap();
            for e in &t.entries {
                let rep = verify_semi_invariance(&s, e.index, 3).unwrap();
                assert!(rep.all_pass, "semi-invariance fails for f_{} of {s}", e.index);
            }
        }
    }

    #[test]
    fn torus_scaling_matches_character_for_explicit_element() {
        // (C, m=4, p=q=0) with g = (2, 1): f1 = x1_1_1 picks up 2^{-2}.
        let s = spec(Family::C, 4, 0, 0);
        let coords = Coordinates::new(&s);
        let f1 = build_symbolic_with(&s, &coords, 1).unwrap();
        let torus: BTreeMap<usize, Vec<Rat>> =
            [(1, vec![Rat::from(2)]), (2, vec![Rat::from(1)])]
                .into_iter()
                .collect();
        let lambda = coords.torus_scalings(&torus);
        let scaled = f1.scale_vars(&lambda);
        assert_eq!(scaled, f1.scale(&Rat::new(1, 4)));
    }
}
