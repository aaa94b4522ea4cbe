//! Brute-force symbolic verifier of the b-function identity
//! `D f^s u = b(s, s_bullet) f^{s-1} u`.
//!
//! The dual constant-coefficient operator `D` is applied in full to
//! `f^s * prod f_j^{s_j}` with `s` and every `s_j` kept symbolic, by tracking
//! terms `P * f^{s-a} * prod f_j^{s_j - a_j}` with polynomial numerators and
//! integer shift vectors. The result is asserted to be exactly proportional
//! to `f^{s-1} u`; the proportionality factor is then split into its leading
//! scalar and a monic product of affine-linear factors by exact division.
//!
//! No modular arithmetic, no floating point, no probabilistic shortcut: the
//! default path is a single exact computation, and the optional fail-fast
//! pre-check is itself exact (it merely pins the `s_j` at fixed rationals).

use crate::affine::AffineForm;
use crate::b_function::{closed_form_b, BFunction};
use crate::coords::Coordinates;
use crate::error::{Error, Result};
use crate::fastpoly::{EPoly, Q128};
use crate::grading::GradingSpec;
use crate::poly::{Mono, SymbolicPoly, VarSet};
use crate::rational::Rat;
use crate::semi_invariants::{free_index_set, invariant_polynomial};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

/// How coordinates pair with their dual derivative symbols.
///
/// `ApolaritySym2` is the K-equivariant pairing: off-diagonal coordinates of
/// symmetric blocks dualize to half the plain partial. `PlainPartial` treats
/// every coordinate as orthonormal; on symmetric blocks of dimension >= 2 it
/// is not equivariant and the b-function identity genuinely fails there
/// (reported as a residue error, not papered over).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum PairingConvention {
    PlainPartial,
    #[default]
    ApolaritySym2,
}

/// The dual operator: a polynomial whose monomials are read as derivative
/// monomials in the coordinate symbols.
#[derive(Debug, Clone)]
pub struct DualOperator {
    pub polynomial: SymbolicPoly,
    pub convention: PairingConvention,
}

/// Size guard for the symbolic expansion.
#[derive(Debug, Clone, Copy)]
pub struct OracleBudget {
    pub max_dim_g1: usize,
    pub max_deg_f: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_dim_g1: std::env::var("GRLA_BUDGET")
                .ok()
                .and_then(|v| v.parse().ok())
                .unwrap_or(10),
            max_deg_f: 6,
        }
    }
}

/// One tracked term `numerator * f^{s-a} * prod_j f_j^{s_j - a_j}`;
/// `shifts[0] = a`, then one slot per u-factor in engine order.
#[derive(Debug, Clone)]
pub struct LogDerivTerm {
    pub numerator: SymbolicPoly,
    pub shifts: Vec<u32>,
}

struct UFactor {
    poly: EPoly,
    partials: Vec<EPoly>,
    /// `s_j` as a polynomial (a variable, or a constant in pre-check mode).
    exponent: EPoly,
}

/// The logarithmic-derivative engine for one invariant and one character.
/// Internally it runs on the checked fixed-width kernel of [`crate::fastpoly`]
/// and converts back to arbitrary-precision rationals at the boundary.
pub struct LogDerivEngine {
    vars: Arc<VarSet>,
    n_coords: usize,
    s_index: usize,
    f: EPoly,
    f_partials: Vec<EPoly>,
    u_factors: Vec<UFactor>,
}

type State = BTreeMap<Vec<u32>, EPoly>;

impl LogDerivEngine {
    /// `vars` must list the coordinate variables first, then `s`, then the
    /// exponent parameters.
    pub fn new(
        vars: Arc<VarSet>,
        n_coords: usize,
        f: SymbolicPoly,
        u_factors: Vec<(SymbolicPoly, SymbolicPoly)>,
    ) -> Result<Self> {
        let s_index = vars.index_of("s").expect("engine variable set lacks `s`");
        let f = EPoly::from_symbolic(&f)?;
        let f_partials = (0..n_coords)
            .map(|v| f.derive(v))
            .collect::<Result<Vec<_>>>()?;
        let u_factors = u_factors
            .into_iter()
            .map(|(poly, exponent)| {
                let poly = EPoly::from_symbolic(&poly)?;
                Ok(UFactor {
                    partials: (0..n_coords)
                        .map(|v| poly.derive(v))
                        .collect::<Result<Vec<_>>>()?,
                    poly,
                    exponent: EPoly::from_symbolic(&exponent)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LogDerivEngine {
            vars,
            n_coords,
            s_index,
            f,
            f_partials,
            u_factors,
        })
    }

    /// `s - a` as a kernel polynomial.
    fn s_minus(&self, a: u32) -> EPoly {
        let mut p = EPoly {
            terms: vec![(Mono::var(self.s_index).raw(), Q128::from_int(1))],
        };
        if a > 0 {
            p.terms
                .insert(0, (Mono::one().raw(), Q128::from_int(-(a as i128))));
        }
        p
    }

    fn exponent_minus(&self, j: usize, a: u32) -> Result<EPoly> {
        let shift = EPoly {
            terms: vec![(Mono::one().raw(), Q128::from_int(-(a as i128)))],
        };
        self.u_factors[j].exponent.clone().add_owned(shift)
    }

    /// The exact logarithmic derivative rule for a single term, on the
    /// public polynomial type.
    pub fn apply_partial(&self, term: &LogDerivTerm, var: usize) -> Result<Vec<LogDerivTerm>> {
        let numerator = EPoly::from_symbolic(&term.numerator)?;
        let mut out = Vec::new();
        for (shifts, p) in self.branches(&term.shifts, &numerator, var)? {
            out.push(LogDerivTerm {
                numerator: p.to_symbolic(&self.vars),
                shifts,
            });
        }
        Ok(out)
    }

    fn branches(
        &self,
        shifts: &[u32],
        numerator: &EPoly,
        var: usize,
    ) -> Result<Vec<(Vec<u32>, EPoly)>> {
        let mut out = Vec::with_capacity(2 + self.u_factors.len());
        let d_num = numerator.derive(var)?;
        if !d_num.is_zero() {
            out.push((shifts.to_vec(), d_num));
        }
        if !self.f_partials[var].is_zero() {
            let num = numerator
                .mul_small(&self.f_partials[var])?
                .mul_small(&self.s_minus(shifts[0]))?;
            if !num.is_zero() {
                let mut sh = shifts.to_vec();
                sh[0] += 1;
                out.push((sh, num));
            }
        }
        for (j, uf) in self.u_factors.iter().enumerate() {
            if uf.partials[var].is_zero() {
                continue;
            }
            let num = numerator
                .mul_small(&uf.partials[var])?
                .mul_small(&self.exponent_minus(j, shifts[j + 1])?)?;
            if num.is_zero() {
                continue;
            }
            let mut sh = shifts.to_vec();
            sh[j + 1] += 1;
            out.push((sh, num));
        }
        Ok(out)
    }

    fn apply_partial_state(&self, state: State, var: usize) -> Result<State> {
        let mut next = State::new();
        for (shifts, numerator) in state {
            for (sh, p) in self.branches(&shifts, &numerator, var)? {
                match next.entry(sh) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(p);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let merged = std::mem::replace(e.get_mut(), EPoly::zero()).add_owned(p)?;
                        if merged.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = merged;
                        }
                    }
                }
            }
        }
        Ok(next)
    }

    /// Apply the full operator to `f^s u`; parallel over the operator's
    /// monomials with a deterministic merge (exact addition commutes).
    pub fn apply_operator(&self, op: &SymbolicPoly) -> Result<State> {
        let monomials: Vec<(Mono, Rat)> = op.terms().map(|(m, c)| (*m, c.clone())).collect();
        let states: Vec<Result<State>> = monomials
            .par_iter()
            .map(|(mono, coeff)| {
                let mut state = State::new();
                state.insert(
                    vec![0; 1 + self.u_factors.len()],
                    EPoly {
                        terms: vec![(Mono::one().raw(), Q128::from_rat(coeff)?)],
                    },
                );
                for v in 0..self.n_coords {
                    for _ in 0..mono.exponent(v) {
                        state = self.apply_partial_state(state, v)?;
                    }
                }
                Ok(state)
            })
            .collect();
        let mut total = State::new();
        for s in states {
            for (k, p) in s? {
                match total.entry(k) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(p);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let merged = std::mem::replace(e.get_mut(), EPoly::zero()).add_owned(p)?;
                        if merged.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = merged;
                        }
                    }
                }
            }
        }
        Ok(total)
    }

    /// Normalize the final state against `f^{s-1} u` and return the
    /// proportionality factor `c(s, s_bullet)`.
    ///
    /// The common-denominator polynomial is assembled Horner-style: the
    /// running sum is repeatedly multiplied by the small base polynomials
    /// `f_j` and `f` instead of by precomputed high powers, which keeps every
    /// multiplication sparse-by-small.
    pub fn proportionality_factor(&self, state: &State) -> Result<SymbolicPoly> {
        let slots = 1 + self.u_factors.len();
        let mut max_shift = vec![0u32; slots];
        for shifts in state.keys() {
            for (m, &v) in max_shift.iter_mut().zip(shifts) {
                *m = (*m).max(v);
            }
        }
        max_shift[0] = max_shift[0].max(1);

        // Clear the u-shifts one factor at a time (innermost last): after
        // clearing factor j, cells are keyed by the remaining shifts only.
        let mut cells: BTreeMap<Vec<u32>, EPoly> =
            state.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        for j in (1..slots).rev() {
            let base = &self.u_factors[j - 1].poly;
            let mut grouped: BTreeMap<Vec<u32>, Vec<(u32, EPoly)>> = BTreeMap::new();
            for (key, p) in cells {
                let mut rest = key.clone();
                let a_j = rest.remove(j);
                grouped.entry(rest).or_default().push((a_j, p));
            }
            let reduced: Vec<(Vec<u32>, Result<EPoly>)> = grouped
                .into_iter()
                .collect::<Vec<_>>()
                .into_par_iter()
                .map(|(rest, levels)| {
                    let horner = horner_sum(levels, base, max_shift[j]);
                    (rest, horner)
                })
                .collect();
            cells = BTreeMap::new();
            for (rest, p) in reduced {
                cells.insert(rest, p?);
            }
        }
        // Clear the f-shift down to exponent A - 1.
        let levels: Vec<(u32, EPoly)> = cells.into_iter().map(|(k, p)| (k[0], p)).collect();
        let q = horner_sum(levels, &self.f, max_shift[0])?;

        // Target R = f^{A-1} * prod f_j^{B_j}.
        let mut r = EPoly {
            terms: vec![(Mono::one().raw(), Q128::from_int(1))],
        };
        for _ in 0..max_shift[0] - 1 {
            r = r.mul_small(&self.f)?;
        }
        for (j, uf) in self.u_factors.iter().enumerate() {
            for _ in 0..max_shift[j + 1] {
                r = r.mul_small(&uf.poly)?;
            }
        }

        // c = the s-polynomial multiplying R's leading coordinate monomial.
        let (r_lead, r_coeff) = r.leading().ok_or(Error::ResidueNotProportional(
            "zero normalization target".into(),
        ))?;
        let r_lead_m = Mono::from_raw(r_lead);
        let n_vars = self.vars.len();
        let mut c = SymbolicPoly::zero(self.vars.clone());
        for (k, v) in &q.terms {
            let m = Mono::from_raw(*k);
            if m.agrees_on_prefix(&r_lead_m, self.n_coords) {
                c.add_term(
                    m.clear_prefix(self.n_coords, n_vars),
                    v.div(&r_coeff)?.to_rat(),
                );
            }
        }
        let c_fast = EPoly::from_symbolic(&c)?;
        let expected = r.mul_small(&c_fast)?;
        if q != expected {
            let sample = first_difference(&q, &expected);
            return Err(Error::ResidueNotProportional(sample));
        }
        Ok(c)
    }
}

/// `sum_t levels[t] * base^{B - t}` via Horner in ascending `t`.
fn horner_sum(levels: Vec<(u32, EPoly)>, base: &EPoly, b_max: u32) -> Result<EPoly> {
    let mut by_level: BTreeMap<u32, EPoly> = BTreeMap::new();
    for (t, p) in levels {
        match by_level.entry(t) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let merged = std::mem::replace(e.get_mut(), EPoly::zero()).add_owned(p)?;
                *e.get_mut() = merged;
            }
        }
    }
    let mut acc = by_level.remove(&0).unwrap_or_else(EPoly::zero);
    for t in 1..=b_max {
        acc = acc.mul_small(base)?;
        if let Some(p) = by_level.remove(&t) {
            acc = acc.add_owned(p)?;
        }
    }
    Ok(acc)
}

fn first_difference(a: &EPoly, b: &EPoly) -> String {
    for ((ka, ca), (kb, cb)) in a.terms.iter().zip(&b.terms) {
        if ka != kb || ca != cb {
            return format!("at key degree {}", Mono::from_raw(*ka).degree());
        }
    }
    format!("term counts {} vs {}", a.num_terms(), b.num_terms())
}

/// Outcome of a full oracle run: the leading scalar and the monic factor
/// multiset.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub scalar: Rat,
    pub monic: BFunction,
}

/// Build the dual operator of the invariant.
pub fn dual_operator(spec: &GradingSpec, convention: PairingConvention) -> Result<DualOperator> {
    spec.require_rank_one()?;
    let coords = Coordinates::new(spec);
    let f = invariant_polynomial(spec, &coords)?;
    Ok(DualOperator {
        polynomial: dualize(&coords, &f, convention),
        convention,
    })
}

fn dualize(
    coords: &Coordinates,
    f: &SymbolicPoly,
    convention: PairingConvention,
) -> SymbolicPoly {
    let mut out = SymbolicPoly::zero(f.vars().clone());
    for (m, c) in f.terms() {
        let mut coeff = c.clone();
        if convention == PairingConvention::ApolaritySym2 {
            for v in 0..coords.num_vars() {
                let e = m.exponent(v);
                if e > 0 && coords.var_info(v).sym_off_diagonal {
                    coeff *= &Rat::new(1, 2).pow(e as i32);
                }
            }
        }
        out.add_term(*m, coeff);
    }
    out
}

/// Run the full symbolic oracle for a rank-one grading.
pub fn compute_b_oracle(spec: &GradingSpec) -> Result<OracleResult> {
    compute_b_oracle_with(
        spec,
        PairingConvention::ApolaritySym2,
        OracleBudget::default(),
        true,
    )
}

pub fn compute_b_oracle_with(
    spec: &GradingSpec,
    convention: PairingConvention,
    budget: OracleBudget,
    precheck: bool,
) -> Result<OracleResult> {
    spec.require_rank_one()?;
    let coords = Coordinates::new(spec);
    let deg_f = spec.m_zero();
    if spec.dim_g1() > budget.max_dim_g1 || deg_f > budget.max_deg_f {
        return Err(Error::BudgetExceeded(format!(
            "{spec}: dim g_1 = {}, deg f = {} against budget ({}, {})",
            spec.dim_g1(),
            deg_f,
            budget.max_dim_g1,
            budget.max_deg_f
        )));
    }

    let free = free_index_set(spec);
    let mut names: Vec<String> = coords.vars.names().to_vec();
    names.push("s".to_string());
    for &i in &free {
        names.push(format!("s{i}"));
    }
    if names.len() > Mono::MAX_VARS {
        return Err(Error::BudgetExceeded(format!(
            "{spec}: {} engine variables exceed the packed capacity {}",
            names.len(),
            Mono::MAX_VARS
        )));
    }
    let vars = VarSet::new(names);
    let n_coords = coords.num_vars();

    let f = invariant_polynomial(spec, &coords)?.extend_to(&vars);
    let op = dualize(&coords, &invariant_polynomial(spec, &coords)?, convention).extend_to(&vars);
    let u_polys: Vec<SymbolicPoly> = free
        .iter()
        .map(|&i| {
            crate::semi_invariants::build_symbolic_with(spec, &coords, i)
                .map(|p| p.extend_to(&vars))
        })
        .collect::<Result<_>>()?;

    if precheck {
        // Same exact pipeline with the s_j pinned at generic rationals;
        // catches residue failures before the full symbolic run.
        let mut value = Rat::new(3, 7);
        let factors = u_polys
            .iter()
            .map(|p| {
                value = &value * &Rat::new(3, 1);
                (p.clone(), SymbolicPoly::constant(vars.clone(), value.clone()))
            })
            .collect();
        let engine = LogDerivEngine::new(vars.clone(), n_coords, f.clone(), factors)?;
        let state = engine.apply_operator(&op)?;
        engine.proportionality_factor(&state)?;
    }

    let factors = free
        .iter()
        .zip(&u_polys)
        .map(|(&i, p)| {
            (
                p.clone(),
                SymbolicPoly::var(vars.clone(), &format!("s{i}")),
            )
        })
        .collect();
    let engine = LogDerivEngine::new(vars.clone(), n_coords, f, factors)?;
    let trace = std::env::var("GRLA_TRACE").is_ok();
    let t0 = std::time::Instant::now();
    let state = engine.apply_operator(&op)?;
    if trace {
        let cells = state.len();
        let terms: usize = state.values().map(|p| p.num_terms()).sum();
        eprintln!(
            "[oracle] {spec}: apply {:.1?}, {cells} cells, {terms} numerator terms",
            t0.elapsed()
        );
    }
    let t1 = std::time::Instant::now();
    let c = engine.proportionality_factor(&state)?;
    if trace {
        eprintln!("[oracle] {spec}: normalize {:.1?}", t1.elapsed());
    }

    let (scalar, factors) = split_affine_factors(&c, &vars, n_coords, &free, deg_f as u32)?;
    Ok(OracleResult {
        scalar,
        monic: BFunction::new(factors, Rat::one()),
    })
}

/// Factor `c(s, s_bullet)` as `scalar * prod (s + g_i)^{d_i}` with affine
/// `g_i`, by exact synthetic division against a candidate lattice:
/// contiguous blocks of the free indices with unit coefficients, single
/// indices with coefficient 1/2, and half-integer constants bounded by the
/// degree. The factorization is verified by construction (division is
/// exact); failure to exhaust the polynomial is a hard error.
fn split_affine_factors(
    c: &SymbolicPoly,
    vars: &Arc<VarSet>,
    n_coords: usize,
    free: &[usize],
    expected_deg: u32,
) -> Result<(Rat, Vec<(AffineForm, u32)>)> {
    let s_index = vars.index_of("s").expect("`s` variable");
    let mut coeffs = c.coefficients_in(s_index);
    if coeffs.len() as u32 != expected_deg + 1 {
        return Err(Error::FactorizationIncomplete(
            coeffs.len().saturating_sub(1) as u32,
            format!("s-degree {} != deg f {}", coeffs.len() - 1, expected_deg),
        ));
    }
    let scalar = coeffs
        .last()
        .unwrap()
        .as_constant()
        .ok_or_else(|| Error::FactorizationIncomplete(expected_deg, "non-constant leading coefficient".into()))?;
    if scalar.is_zero() {
        return Err(Error::FactorizationIncomplete(
            expected_deg,
            "vanishing leading coefficient".into(),
        ));
    }
    let inv = scalar.recip();
    for co in coeffs.iter_mut() {
        *co = co.scale(&inv);
    }

    let mut factors: Vec<(AffineForm, u32)> = Vec::new();
    for g in factor_candidates(free, expected_deg) {
        let g_poly = affine_to_poly(&g, vars);
        let mut mult = 0u32;
        loop {
            match divide_linear(&coeffs, &g_poly) {
                Some(q) => {
                    coeffs = q;
                    mult += 1;
                }
                None => break,
            }
            if coeffs.len() == 1 {
                break;
            }
        }
        if mult > 0 {
            let mut factor = AffineForm::param("s");
            factor = factor.add(&g);
            factors.push((factor, mult));
        }
        if coeffs.len() == 1 {
            break;
        }
    }
    if coeffs.len() != 1 {
        return Err(Error::FactorizationIncomplete(
            coeffs.len() as u32 - 1,
            format!("residual {}", poly_in_s(&coeffs, vars, s_index)),
        ));
    }
    let unit = coeffs[0]
        .as_constant()
        .filter(|v| v.is_one())
        .is_some();
    if !unit {
        return Err(Error::FactorizationIncomplete(
            0,
            format!("non-unit residual {}", coeffs[0]),
        ));
    }
    let _ = n_coords;
    Ok((scalar, factors))
}

fn poly_in_s(coeffs: &[SymbolicPoly], vars: &Arc<VarSet>, s_index: usize) -> SymbolicPoly {
    let s = SymbolicPoly::var_by_index(vars.clone(), s_index);
    let mut acc = SymbolicPoly::zero(vars.clone());
    for (e, co) in coeffs.iter().enumerate() {
        acc.add_assign(&co.mul(&s.pow(e as u32)));
    }
    acc
}

fn affine_to_poly(g: &AffineForm, vars: &Arc<VarSet>) -> SymbolicPoly {
    let mut p = SymbolicPoly::constant(vars.clone(), g.constant_part().clone());
    for (name, coeff) in g.coeffs() {
        p.add_assign(&SymbolicPoly::var(vars.clone(), name).scale(coeff));
    }
    p
}

/// Synthetic division of `sum coeffs[j] s^j` by `(s + g)`; `None` when the
/// remainder is nonzero.
fn divide_linear(coeffs: &[SymbolicPoly], g: &SymbolicPoly) -> Option<Vec<SymbolicPoly>> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return None;
    }
    let mut quot = vec![SymbolicPoly::zero(g.vars().clone()); n];
    quot[n - 1] = coeffs[n].clone();
    for j in (1..n).rev() {
        quot[j - 1] = coeffs[j].sub(&g.mul(&quot[j]));
    }
    let rem = coeffs[0].sub(&g.mul(&quot[0]));
    rem.is_zero().then_some(quot)
}

fn factor_candidates(free: &[usize], deg: u32) -> Vec<AffineForm> {
    let mut supports: Vec<Vec<(usize, Rat)>> = vec![Vec::new()];
    for start in 0..free.len() {
        for end in start..free.len() {
            supports.push(
                free[start..=end]
                    .iter()
                    .map(|&i| (i, Rat::one()))
                    .collect(),
            );
        }
    }
    for &i in free {
        supports.push(vec![(i, Rat::half(1))]);
    }
    let mut out = Vec::new();
    for support in supports {
        for k in -2..=(deg as i64 + 2) {
            let mut g = AffineForm::constant(Rat::half(k));
            for (i, coeff) in &support {
                g.add_coeff(&format!("s{i}"), coeff.clone());
            }
            out.push(g);
        }
    }
    out
}

/// Report comparing the oracle against the closed form.
#[derive(Debug, Clone, Serialize)]
pub struct CrosscheckReport {
    pub spec: GradingSpec,
    pub oracle_scalar: Rat,
    pub oracle_roots: Vec<(AffineForm, u32)>,
    /// `None` when the closed form is flagged (type BD, q <= 1).
    pub closed_form_roots: Option<Vec<(AffineForm, u32)>>,
    pub closed_form_flagged: bool,
    #[serde(rename = "match")]
    pub matched: Option<bool>,
    /// oracle scalar : paper scalar, as a single rational.
    pub scalar_ratio: Option<Rat>,
}

/// Run the oracle and compare monic factor multisets with the closed form.
/// A mismatch is a report outcome, not an error.
pub fn crosscheck(spec: &GradingSpec) -> Result<CrosscheckReport> {
    crosscheck_with(spec, OracleBudget::default())
}

pub fn crosscheck_with(spec: &GradingSpec, budget: OracleBudget) -> Result<CrosscheckReport> {
    let oracle = compute_b_oracle_with(
        spec,
        PairingConvention::ApolaritySym2,
        budget,
        true,
    )?;
    let oracle_roots: Vec<(AffineForm, u32)> = oracle.monic.factors().to_vec();
    match closed_form_b(spec) {
        Ok(closed) => {
            let closed_roots = closed.factors().to_vec();
            let matched = sorted(&oracle_roots) == sorted(&closed_roots);
            Ok(CrosscheckReport {
                spec: spec.clone(),
                oracle_scalar: oracle.scalar.clone(),
                oracle_roots,
                closed_form_roots: Some(closed_roots),
                closed_form_flagged: false,
                matched: Some(matched),
                scalar_ratio: Some(&oracle.scalar / &closed.scalar),
            })
        }
        Err(Error::BdClosedFormUndisplayed(_)) => Ok(CrosscheckReport {
            spec: spec.clone(),
            oracle_scalar: oracle.scalar,
            oracle_roots,
            closed_form_roots: None,
            closed_form_flagged: true,
            matched: None,
            scalar_ratio: None,
        }),
        Err(e) => Err(e),
    }
}

fn sorted(v: &[(AffineForm, u32)]) -> Vec<(AffineForm, u32)> {
    let mut s = v.to_vec();
    s.sort();
    s
}

/// Stand-alone fixture: `f = x_1^2 + ... + x_n^2`, whose dual operator is the
/// Laplacian. The classical identity gives `4 s (s - 1 + n/2)`.
pub fn laplacian_fixture(n: usize) -> Result<OracleResult> {
    let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    names.push("s".to_string());
    let vars = VarSet::new(names);
    let mut f = SymbolicPoly::zero(vars.clone());
    for i in 0..n {
        let x = SymbolicPoly::var_by_index(vars.clone(), i);
        f.add_assign(&x.mul(&x));
    }
    let engine = LogDerivEngine::new(vars.clone(), n, f.clone(), Vec::new())?;
    let state = engine.apply_operator(&f)?;
    let c = engine.proportionality_factor(&state)?;
    let (scalar, factors) = split_affine_factors(&c, &vars, n, &[], 2)?;
    Ok(OracleResult {
        scalar,
        monic: BFunction::new(factors, Rat::one()),
    })
}
