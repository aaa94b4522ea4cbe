//! Closed-form b-functions of the rank-one gradings, the classification of
//! their roots relative to the unit interval, Fourier-dual exponents (both
//! the explicit per-family rules and an independent derivation from the
//! character weights), negation duality, and the distinguished characters
//! with their specialized b-functions and gamma-signs.

use crate::affine::AffineForm;
use crate::error::{Error, Result};
use crate::grading::{Family, GradingSpec};
use crate::rational::Rat;
use crate::semi_invariants::{det_weight, semi_invariant_table, CharacterParams};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// A product of affine-linear factors in `(s; s_1, ...)` with multiplicities,
/// together with the normalization constant in front of the monic product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFunction {
    factors: Vec<(AffineForm, u32)>,
    pub scalar: Rat,
}

impl BFunction {
    pub fn new(raw: Vec<(AffineForm, u32)>, scalar: Rat) -> Self {
        let mut map: BTreeMap<AffineForm, u32> = BTreeMap::new();
        for (f, m) in raw {
            if m > 0 {
                *map.entry(f).or_insert(0) += m;
            }
        }
        let mut factors: Vec<(AffineForm, u32)> = map.into_iter().collect();
        factors.sort_by(|(a, _), (b, _)| factor_order(a, b));
        BFunction { factors, scalar }
    }

    pub fn factors(&self) -> &[(AffineForm, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    /// Roots as affine forms in the parameters (the factor is `s + g`, the
    /// root is `-g`).
    pub fn symbolic_roots(&self) -> Vec<(AffineForm, u32)> {
        self.factors
            .iter()
            .map(|(f, m)| {
                let mut g = f.clone();
                g.add_coeff("s", -Rat::one());
                (g.neg(), *m)
            })
            .collect()
    }

    /// Substitute affine forms for the parameters `s1, s2, ...` inside every
    /// factor (the `s` variable is untouched).
    pub fn substitute_params(&self, map: &BTreeMap<String, AffineForm>) -> BFunction {
        BFunction::new(
            self.factors
                .iter()
                .map(|(f, m)| (f.compose(map), *m))
                .collect(),
            self.scalar.clone(),
        )
    }

    /// Rational roots at a parameter point, ascending with multiplicities.
    pub fn specialized_roots(&self, params: &CharacterParams) -> Result<Vec<(Rat, u32)>> {
        let mut assignment = params.as_name_map();
        assignment.insert("s".to_string(), Rat::zero());
        let mut out: BTreeMap<Rat, u32> = BTreeMap::new();
        for (f, m) in &self.factors {
            let v = f.specialize(&assignment)?;
            *out.entry(-v).or_insert(0) += m;
        }
        Ok(out.into_iter().collect())
    }
}

impl fmt::Display for BFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.scalar.is_one() {
            write!(f, "{} * ", self.scalar)?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (form, m)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if *m == 1 {
                write!(f, "({form})")?;
            } else {
                write!(f, "({form})^{m}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for BFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Root<'a> {
            form: &'a AffineForm,
            mult: u32,
        }
        let mut map = serializer.serialize_map(Some(2))?;
        let roots: Vec<Root> = self
            .factors
            .iter()
            .map(|(f, m)| Root { form: f, mult: *m })
            .collect();
        map.serialize_entry("roots", &roots)?;
        map.serialize_entry("scalar", &self.scalar)?;
        map.end()
    }
}

/// Display order mirroring the paper: parameter-free factors first with
/// constants descending (`s` before `s - 1/2`), then factors with parameters.
fn factor_order(a: &AffineForm, b: &AffineForm) -> std::cmp::Ordering {
    let count = |f: &AffineForm| f.params().filter(|n| n.as_str() != "s").count();
    count(a)
        .cmp(&count(b))
        .then_with(|| b.constant_part().cmp(a.constant_part()))
        .then_with(|| a.cmp(b))
}

fn s_term() -> AffineForm {
    AffineForm::param("s")
}

/// `s + sum_{a in indices} s_a + c`
fn factor(indices: impl IntoIterator<Item = usize>, c: Rat) -> AffineForm {
    let mut f = s_term();
    f.add_constant(&c);
    for a in indices {
        f.add_coeff(&format!("s{a}"), Rat::one());
    }
    f
}

/// `s + coeff*s_a + c`
fn factor_scaled(a: usize, coeff: Rat, c: Rat) -> AffineForm {
    let mut f = s_term();
    f.add_constant(&c);
    f.add_coeff(&format!("s{a}"), coeff);
    f
}

/// The closed-form b-function, fully symbolic in the free exponents.
///
/// Type BD is only displayed for q >= 2; smaller q must go through the
/// symbolic oracle and is reported as a typed error here.
pub fn closed_form_b(spec: &GradingSpec) -> Result<BFunction> {
    spec.require_rank_one()?;
    let (l, p, q) = (spec.l, spec.p, spec.q);
    let mut factors: Vec<(AffineForm, u32)> = Vec::new();
    let scalar;

    match spec.family {
        Family::A => {
            scalar = Rat::from(2).pow(spec.order_param as i32);
            // b^1: prod_{j=1}^{q} (s + sum_{a=j}^{q} s_a + (q-j)/2)^2
            for j in 1..=q {
                factors.push((factor(j..=q, Rat::half((q - j) as i64)), 2));
            }
            // b^2
            if p == 0 {
                factors.push((s_term(), 1));
            } else {
                factors.push((s_term(), 2));
                factors.push((
                    factor((l - p + 2)..=(l + 1), Rat::half(p as i64)),
                    1,
                ));
                for j in 1..p {
                    factors.push((
                        factor((l - p + 2)..=(l - p + 1 + j), Rat::half(j as i64)),
                        2,
                    ));
                }
            }
            // b^3: prod_{j=q+1}^{l-p} (s + s_j/2)(s + (s_j - 1)/2)
            for j in q + 1..=l - p {
                factors.push((factor_scaled(j, Rat::half(1), Rat::zero()), 1));
                factors.push((factor_scaled(j, Rat::half(1), Rat::half(-1)), 1));
            }
        }
        Family::C => {
            scalar = Rat::one();
            // b^1
            if q == 0 {
                factors.push((s_term(), 1));
            } else {
                factors.push((s_term(), 2));
                factors.push((factor(1..=q, Rat::half(q as i64)), 1));
                for j in 2..=q {
                    factors.push((factor(j..=q, Rat::half((q - j + 1) as i64)), 2));
                }
            }
            // b^2
            if p == 0 {
                factors.push((factor([l + 1], Rat::zero()), 1));
            } else {
                factors.push((factor([l - p + 1], Rat::zero()), 2));
                factors.push((
                    factor((l - p + 1)..=(l + 1), Rat::half(p as i64)),
                    1,
                ));
                for j in 1..p {
                    factors.push((
                        factor((l - p + 1)..=(l - p + 1 + j), Rat::half(j as i64)),
                        2,
                    ));
                }
            }
            // b^3
            for j in q + 2..=l - p {
                factors.push((factor_scaled(j, Rat::half(1), Rat::zero()), 1));
                factors.push((factor_scaled(j, Rat::half(1), Rat::half(-1)), 1));
            }
        }
        Family::BD => {
            if q < 2 {
                return Err(Error::BdClosedFormUndisplayed(q));
            }
            scalar = Rat::from(2).pow(spec.order_param as i32);
            factors.push((s_term(), 2));
            for j in 1..q {
                factors.push((factor(j..q, Rat::half((q - j) as i64)), 2));
            }
            for j in 0..p {
                factors.push((
                    factor((l - p + 1)..=(l - p + 1 + j), Rat::half(j as i64)),
                    2,
                ));
            }
            for j in q + 1..=l - p {
                factors.push((factor_scaled(j, Rat::half(1), Rat::zero()), 1));
                factors.push((factor_scaled(j, Rat::half(1), Rat::half(-1)), 1));
            }
        }
    }

    let b = BFunction::new(factors, scalar);
    debug_assert_eq!(b.degree() as usize, spec.m_zero());
    Ok(b)
}

/// All specialized roots in `[0,1)`? Closed at 0, open at 1.
pub fn roots_in_unit_interval(spec: &GradingSpec, params: &CharacterParams) -> Result<bool> {
    if !crate::semi_invariants::lattice_condition(spec, params)? {
        return Err(Error::LatticeConditionFailed);
    }
    let b = closed_form_b(spec)?;
    let roots = b.specialized_roots(params)?;
    Ok(roots
        .iter()
        .all(|(r, _)| !r.is_negative() && r < &Rat::one()))
}

/// The per-family "if and only if" lists for the roots to lie in `[0,1)`:
/// vanishing of the middle exponents plus partial-sum membership conditions.
pub fn paper_iff_conditions(spec: &GradingSpec, params: &CharacterParams) -> Result<bool> {
    spec.require_rank_one()?;
    let (l, p, q) = (spec.l, spec.p, spec.q);
    let member = |v: Rat, j: i64| -> bool { v == Rat::half(-j) || v == Rat::half(-(j + 1)) };
    let sum = |params: &CharacterParams, idx: &mut dyn Iterator<Item = usize>| -> Result<Rat> {
        let mut acc = Rat::zero();
        for i in idx {
            acc += params.get(i)?;
        }
        Ok(acc)
    };

    match spec.family {
        Family::A => {
            for j in q + 1..=l - p {
                if !params.get(j)?.is_zero() {
                    return Ok(false);
                }
            }
            for j in 1..=p {
                let v = sum(params, &mut ((l - p + 2)..=(l - p + 1 + j)))?;
                if !member(v, j as i64) {
                    return Ok(false);
                }
            }
            for j in 0..q {
                // sum_{i=0}^{j} s_{q-i} in {-j/2, -(j+1)/2}
                let v = sum(params, &mut ((q - j)..=q))?;
                if !member(v, j as i64) {
                    return Ok(false);
                }
            }
        }
        Family::C => {
            for j in 0..q {
                // sum_{i=0}^{j} s_{q-i} in {-(j+1)/2, -(j+2)/2}
                let v = sum(params, &mut ((q - j)..=q))?;
                if !member(v, j as i64 + 1) {
                    return Ok(false);
                }
            }
            for j in q + 2..=l - p {
                if !params.get(j)?.is_zero() {
                    return Ok(false);
                }
            }
            for j in 0..=p {
                let v = sum(params, &mut ((l - p + 1)..=(l - p + 1 + j)))?;
                if !member(v, j as i64) {
                    return Ok(false);
                }
            }
        }
        Family::BD => {
            for j in 1..q {
                // sum_{i=1}^{j} s_{q-i}
                let v = sum(params, &mut ((q - j)..q))?;
                if !member(v, j as i64) {
                    return Ok(false);
                }
            }
            for j in q + 1..=l - p {
                if !params.get(j)?.is_zero() {
                    return Ok(false);
                }
            }
            for j in 0..p {
                let v = sum(params, &mut ((l - p + 1)..=(l - p + 1 + j)))?;
                if !member(v, j as i64) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Fourier-dual exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualExponents {
    pub s_star: BTreeMap<usize, Rat>,
}

/// The per-family dual rule in shift form: `s*_i = shift_i - s_i`.
pub fn dual_shift(spec: &GradingSpec) -> Result<BTreeMap<usize, Rat>> {
    spec.require_rank_one()?;
    let (l, p, q) = (spec.l, spec.p, spec.q);
    let free = crate::semi_invariants::free_index_set(spec);
    let mut shift = BTreeMap::new();
    let mut put = |i: usize, v: Rat| {
        shift.insert(i, v);
    };
    match spec.family {
        Family::A => {
            for i in 1..q {
                put(i, -Rat::one());
            }
            if q >= 1 {
                put(q, Rat::zero());
            }
            for i in q + 1..=l - p {
                put(i, Rat::one());
            }
            for i in l - p + 2..=l + 1 {
                put(i, -Rat::one());
            }
        }
        Family::C => {
            for i in 1..=q {
                put(i, -Rat::one());
            }
            for i in q + 2..=l - p {
                put(i, Rat::one());
            }
            put(l - p + 1, Rat::zero());
            for i in l - p + 2..=l + 1 {
                put(i, -Rat::one());
            }
        }
        Family::BD => {
            for i in 1..q.max(1) {
                put(i, -Rat::one());
            }
            for i in q + 1..=l - p {
                put(i, Rat::one());
            }
            if p >= 1 {
                put(l - p + 1, Rat::zero());
                for i in l - p + 2..=l {
                    put(i, -Rat::one());
                }
            }
        }
    }
    debug_assert_eq!(shift.keys().copied().collect::<Vec<_>>(), free);
    Ok(shift)
}

/// The paper's explicit dual exponents `s*_i` at a parameter point.
pub fn dual_exponents(spec: &GradingSpec, params: &CharacterParams) -> Result<DualExponents> {
    let shift = dual_shift(spec)?;
    let mut s_star = BTreeMap::new();
    for (&i, sh) in &shift {
        s_star.insert(i, sh - params.get(i)?);
    }
    Ok(DualExponents { s_star })
}

/// Dual exponents as `CharacterParams`, for feeding back into the closed form.
pub fn dual_params(spec: &GradingSpec, params: &CharacterParams) -> Result<CharacterParams> {
    let table = semi_invariant_table(spec)?;
    let d = dual_exponents(spec, params)?;
    CharacterParams::new(&table, d.s_star)
}

/// Substitution map `s_i -> shift_i - s_i` for symbolic duality checks.
pub fn dual_substitution(spec: &GradingSpec) -> Result<BTreeMap<String, AffineForm>> {
    let shift = dual_shift(spec)?;
    Ok(shift
        .into_iter()
        .map(|(i, sh)| {
            let name = format!("s{i}");
            let mut f = AffineForm::constant(sh);
            f.add_coeff(&name, -Rat::one());
            (name, f)
        })
        .collect())
}

/// Solve `sum_i (s*_i + s_i) w(chi_i) = -w(Det)` over the free indices and
/// return `s*_i = x_i - s_i`. The solution is produced by deterministic
/// Gaussian elimination; when the free weights are dependent the particular
/// solution can differ from the explicit rule by a multiple of the
/// factorization exponent vector, which is exactly the relation lattice.
pub fn dual_exponents_from_weights(
    spec: &GradingSpec,
    params: &CharacterParams,
) -> Result<DualExponents> {
    let x = dual_shift_from_weights(spec)?;
    let mut s_star = BTreeMap::new();
    for (&i, xi) in &x {
        s_star.insert(i, xi - params.get(i)?);
    }
    Ok(DualExponents { s_star })
}

/// The shift vector solved from the weight system (the `x` in
/// `s*_i = x_i - s_i`).
pub fn dual_shift_from_weights(spec: &GradingSpec) -> Result<BTreeMap<usize, Rat>> {
    let table = semi_invariant_table(spec)?;
    let free = &table.free_indices;
    let n_rows = table.gl_indices.len();
    let n_cols = free.len();

    // Augmented system [W | -w(Det)].
    let det_w = det_weight(spec)?;
    let mut aug: Vec<Vec<Rat>> = vec![vec![Rat::zero(); n_cols + 1]; n_rows];
    for (c, &i) in free.iter().enumerate() {
        let w = &table.entry(i)?.weight;
        for r in 0..n_rows {
            aug[r][c] = Rat::from(w.0[r]);
        }
    }
    for r in 0..n_rows {
        aug[r][n_cols] = Rat::from(-det_w.0[r]);
    }

    // Row reduce with first-nonzero pivoting.
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n_cols];
    let mut row = 0usize;
    for col in 0..n_cols {
        let Some(pr) = (row..n_rows).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(row, pr);
        let inv = aug[row][col].recip();
        for v in aug[row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n_rows {
            if r != row && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for c in 0..=n_cols {
                    let delta = &factor * &aug[row][c];
                    aug[r][c] -= &delta;
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == n_rows {
            break;
        }
    }
    // Consistency: no row of the form (0 ... 0 | nonzero).
    for r in row..n_rows {
        if !aug[r][n_cols].is_zero() {
            return Err(Error::InconsistentWeightSystem(format!(
                "no solution for {spec}; the semi-invariant weight table is wrong"
            )));
        }
    }
    // Particular solution: zero on non-pivot columns.
    let mut x = BTreeMap::new();
    for (c, &i) in free.iter().enumerate() {
        let v = match pivot_of_col[c] {
            Some(r) => aug[r][n_cols].clone(),
            None => Rat::zero(),
        };
        x.insert(i, v);
    }
    Ok(x)
}

/// Check that the weight-derived dual exponents agree with the explicit rule
/// modulo the relation lattice spanned by the factorization exponents.
pub fn dual_exponents_agree_mod_relations(spec: &GradingSpec) -> Result<bool> {
    let table = semi_invariant_table(spec)?;
    let explicit = dual_shift(spec)?;
    let solved = dual_shift_from_weights(spec)?;
    let free = &table.free_indices;
    let n_free: BTreeMap<usize, Rat> = free
        .iter()
        .map(|&i| {
            let e = table
                .factorization
                .exponents
                .get(&i)
                .copied()
                .unwrap_or(0);
            (i, Rat::from(e as i64))
        })
        .collect();

    let diff: BTreeMap<usize, Rat> = free
        .iter()
        .map(|&i| (i, &solved[&i] - &explicit[&i]))
        .collect();
    // diff must be t * n_free for a single rational t.
    let mut t: Option<Rat> = None;
    for &i in free {
        let (d, n) = (&diff[&i], &n_free[&i]);
        if n.is_zero() {
            if !d.is_zero() {
                return Ok(false);
            }
        } else {
            let ratio = d / n;
            match &t {
                None => t = Some(ratio),
                Some(t0) => {
                    if *t0 != ratio {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Multiset equality `roots(b at s*) = -roots(b at s)` at a parameter point.
pub fn negation_duality_check(spec: &GradingSpec, params: &CharacterParams) -> Result<bool> {
    let b = closed_form_b(spec)?;
    let primal = b.specialized_roots(params)?;
    let dual = b.specialized_roots(&dual_params(spec, params)?)?;
    let negated: BTreeMap<Rat, u32> = primal.into_iter().map(|(r, m)| (-r, m)).collect();
    Ok(dual.into_iter().collect::<BTreeMap<_, _>>() == negated)
}

/// Symbolic version: the substituted factors must have root multiset equal to
/// the negatives of the original roots as affine forms.
pub fn negation_duality_symbolic(spec: &GradingSpec) -> Result<bool> {
    let b = closed_form_b(spec)?;
    let dual = b.substitute_params(&dual_substitution(spec)?);
    let mut dual_roots: Vec<(AffineForm, u32)> = dual.symbolic_roots();
    let mut negated: Vec<(AffineForm, u32)> = b
        .symbolic_roots()
        .into_iter()
        .map(|(r, m)| (r.neg(), m))
        .collect();
    dual_roots.sort();
    negated.sort();
    Ok(dual_roots == negated)
}

/// A distinguished character: its exponent tuple, the specialized display
/// b-function, and the sign on the generator gamma_1 when it exists.
#[derive(Debug, Clone)]
pub struct DistinguishedCharacter {
    pub params: CharacterParams,
    pub b: BFunction,
    /// `chi(gamma_1)`, only when gamma_1 exists in the component group.
    pub sign: Option<i8>,
}

fn constant_factor(c: Rat) -> AffineForm {
    let mut f = s_term();
    f.add_constant(&c);
    f
}

fn display_b(powers: &[(Rat, usize)], scalar: Rat) -> BFunction {
    BFunction::new(
        powers
            .iter()
            .filter(|(_, m)| *m > 0)
            .map(|(c, m)| (constant_factor(c.clone()), *m as u32))
            .collect(),
        scalar,
    )
}

/// The one or two distinguished characters of a rank-one grading, with the
/// paper's specialized b-function displays and gamma_1 signs.
pub fn distinguished_characters(spec: &GradingSpec) -> Result<Vec<DistinguishedCharacter>> {
    let table = semi_invariant_table(spec)?;
    let (l, p, q) = (spec.l, spec.p, spec.q);
    let scalar = match spec.family {
        Family::A | Family::BD => Rat::from(2).pow(spec.order_param as i32),
        Family::C => Rat::one(),
    };

    let build = |choice: Option<Rat>| -> Result<DistinguishedCharacter> {
        let mut values: BTreeMap<usize, Rat> = BTreeMap::new();
        let mut set = |i: usize, v: Rat| {
            values.insert(i, v);
        };
        let (b, sign_exponent, gamma1_exists): (BFunction, i64, bool);
        match spec.family {
            Family::A => {
                for i in 1..q {
                    set(i, Rat::half(-1));
                }
                for i in q + 1..=l - p {
                    set(i, Rat::zero());
                }
                for i in l - p + 2..=l + 1 {
                    set(i, Rat::half(-1));
                }
                let s_q = choice.clone().unwrap_or_else(Rat::zero);
                if q >= 1 {
                    set(q, s_q.clone());
                }
                b = display_b(
                    &[
                        (Rat::zero(), l + p - q + 1),
                        (Rat::half(-1), l - p - q),
                        (s_q.clone(), 2 * q),
                    ],
                    scalar.clone(),
                );
                let two_sq = if s_q.is_zero() { 0 } else { -1 };
                sign_exponent = (p + q + 1) as i64 + two_sq;
                gamma1_exists = q >= 1;
            }
            Family::C => {
                for i in 1..=q {
                    set(i, Rat::half(-1));
                }
                for i in q + 2..=l - p {
                    set(i, Rat::zero());
                }
                for i in l - p + 2..=l + 1 {
                    set(i, Rat::half(-1));
                }
                let s_t = choice.clone().unwrap_or_else(Rat::zero);
                set(l - p + 1, s_t.clone());
                b = display_b(
                    &[
                        (Rat::zero(), l - p + q),
                        (Rat::half(-1), l - p - q - 1),
                        (s_t.clone(), 2 * p + 1),
                    ],
                    scalar.clone(),
                );
                let two_st = if s_t.is_zero() { 0 } else { -1 };
                sign_exponent = (p + q) as i64 + two_st;
                gamma1_exists = true;
            }
            Family::BD => {
                for i in 1..q.max(1) {
                    set(i, Rat::half(-1));
                }
                for i in q + 1..=l - p {
                    set(i, Rat::zero());
                }
                let s_t = choice.clone().unwrap_or_else(Rat::zero);
                if p >= 1 {
                    set(l - p + 1, s_t.clone());
                    for i in l - p + 2..=l {
                        set(i, Rat::half(-1));
                    }
                }
                b = display_b(
                    &[
                        (Rat::zero(), l - p + q),
                        (Rat::half(-1), l - p - q),
                        (s_t.clone(), 2 * p),
                    ],
                    scalar.clone(),
                );
                let two_st = if s_t.is_zero() { 0 } else { -1 };
                sign_exponent = (p + q) as i64 + two_st;
                gamma1_exists = p >= 1 && q >= 1;
            }
        }
        let params = CharacterParams::new(&table, values)?;
        let sign = gamma1_exists.then(|| if sign_exponent.rem_euclid(2) == 0 { 1 } else { -1 });
        Ok(DistinguishedCharacter { params, b, sign })
    };

    let two_choices = match spec.family {
        Family::A => q >= 1,
        Family::C => true,
        Family::BD => p >= 1,
    };
    if two_choices {
        Ok(vec![
            build(Some(Rat::zero()))?,
            build(Some(Rat::half(-1)))?,
        ])
    } else {
        Ok(vec![build(None)?])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::GradingSpec;

    fn spec(f: Family, o: usize, p: usize, q: usize) -> GradingSpec {
        GradingSpec::new(f, o, p, q, 1).unwrap()
    }

    fn params(spec: &GradingSpec, pairs: &[(usize, Rat)]) -> CharacterParams {
        let table = semi_invariant_table(spec).unwrap();
        CharacterParams::new(&table, pairs.iter().cloned().collect()).unwrap()
    }

    fn roots_str(b: &BFunction) -> Vec<(String, u32)> {
        b.symbolic_roots()
            .into_iter()
            .map(|(f, m)| (f.to_string(), m))
            .collect()
    }

    #[test]
    fn closed_form_type_a_examples() {
        // (A, d=3, p=0, q=1): b = s (s + s1)^2
        let b = closed_form_b(&spec(Family::A, 3, 0, 1)).unwrap();
        assert_eq!(b.to_string(), "8 * (s) (s + s1)^2");
        assert_eq!(roots_str(&b), vec![("0".to_string(), 1), ("-s1".into(), 2)]);

        // (A, d=3, p=0, q=0): roots {0, -s1/2, (1-s1)/2}
        let b = closed_form_b(&spec(Family::A, 3, 0, 0)).unwrap();
        let roots: Vec<String> = roots_str(&b).into_iter().map(|(f, _)| f).collect();
        assert_eq!(roots, vec!["0", "-1/2*s1", "-1/2*s1 + 1/2"]);
    }

    #[test]
    fn closed_form_type_c_example() {
        // (C, m=4, p=q=0): roots {0, -s3, -s2/2, (1-s2)/2}
        let b = closed_form_b(&spec(Family::C, 4, 0, 0)).unwrap();
        let mut roots: Vec<String> = roots_str(&b).into_iter().map(|(f, _)| f).collect();
        roots.sort();
        assert_eq!(b.degree(), 4);
        let mut expected = vec![
            "0".to_string(),
            "-s3".into(),
            "-1/2*s2".into(),
            "-1/2*s2 + 1/2".into(),
        ];
        expected.sort();
        assert_eq!(roots, expected);
    }

    #[test]
    fn bd_closed_form_flagged_below_q2() {
        assert_eq!(
            closed_form_b(&spec(Family::BD, 4, 0, 0)),
            Err(Error::BdClosedFormUndisplayed(0))
        );
        assert!(closed_form_b(&spec(Family::BD, 4, 0, 2)).is_ok());
    }

    #[test]
    fn degree_identity_symbolic() {
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
                        match closed_form_b(&s) {
                            Ok(b) => assert_eq!(b.degree() as usize, s.m_zero(), "{s}"),
                            Err(Error::BdClosedFormUndisplayed(_)) => {
                                assert!(family == Family::BD && q < 2)
                            }
                            Err(e) => panic!("unexpected error for {s}: {e}"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unit_interval_examples() {
        // (A, d=5, q=1, p=0), s1=-1/2, s2=0 -> true
        let s = spec(Family::A, 5, 0, 1);
        let pt = params(&s, &[(1, Rat::half(-1)), (2, Rat::zero())]);
        assert!(roots_in_unit_interval(&s, &pt).unwrap());
        assert!(paper_iff_conditions(&s, &pt).unwrap());

        // all zero: roots 0 and 1/2
        let pt0 = params(&s, &[(1, Rat::zero()), (2, Rat::zero())]);
        assert!(roots_in_unit_interval(&s, &pt0).unwrap());

        // (A, d=3, q=1, p=0), s1=+1/2 -> false (root -1/2)
        let s3 = spec(Family::A, 3, 0, 1);
        let bad = params(&s3, &[(1, Rat::half(1))]);
        assert!(!roots_in_unit_interval(&s3, &bad).unwrap());
        assert!(!paper_iff_conditions(&s3, &bad).unwrap());

        // non-lattice point is an error
        let t = semi_invariant_table(&s3).unwrap();
        let odd = CharacterParams::new(&t, [(1, Rat::new(1, 3))].into_iter().collect()).unwrap();
        assert_eq!(
            roots_in_unit_interval(&s3, &odd),
            Err(Error::LatticeConditionFailed)
        );
    }

    #[test]
    fn iff_conditions_partial_sums() {
        // (A, d=5, q=2, p=0): j=0 requires s_q = s_2 in {0, -1/2}
        let s = spec(Family::A, 5, 0, 2);
        let good = params(&s, &[(1, Rat::zero()), (2, Rat::zero())]);
        // j=1 requires s_1 + s_2 in {-1/2, -1}: (0,0) fails j=1
        assert!(!paper_iff_conditions(&s, &good).unwrap());
        let better = params(&s, &[(1, Rat::half(-1)), (2, Rat::zero())]);
        assert!(paper_iff_conditions(&s, &better).unwrap());
        let bad = params(&s, &[(1, Rat::half(-1)), (2, Rat::half(1))]);
        assert!(!paper_iff_conditions(&s, &bad).unwrap());
    }

    #[test]
    fn dual_exponent_rules() {
        // (A): s_q* = -s_q; middle s_j* = 1 - s_j
        let s = spec(Family::A, 5, 0, 1);
        let pt = params(&s, &[(1, Rat::half(-1)), (2, Rat::zero())]);
        let d = dual_exponents(&s, &pt).unwrap();
        assert_eq!(d.s_star[&1], Rat::half(1));
        assert_eq!(d.s_star[&2], Rat::one());

        // (C): s*_{l-p+1} = -s_{l-p+1}
        let sc = spec(Family::C, 4, 0, 0);
        let pt = params(&sc, &[(2, Rat::zero()), (3, Rat::half(-1))]);
        let d = dual_exponents(&sc, &pt).unwrap();
        assert_eq!(d.s_star[&3], Rat::half(1));
        assert_eq!(d.s_star[&2], Rat::one());
    }

    #[test]
    fn weight_solve_reproduces_dual_rule() {
        // (A, d=3, p=0, q=1): unique solve gives s1* = -s1
        let s = spec(Family::A, 3, 0, 1);
        let solved = dual_shift_from_weights(&s).unwrap();
        assert_eq!(solved[&1], Rat::zero());
        assert!(dual_exponents_agree_mod_relations(&s).unwrap());

        // (C, m=4, p=q=0): shifts (1, 0) on indices (2, 3)
        let sc = spec(Family::C, 4, 0, 0);
        let solved = dual_shift_from_weights(&sc).unwrap();
        assert_eq!(solved[&2], Rat::one());
        assert_eq!(solved[&3], Rat::zero());
        assert!(dual_exponents_agree_mod_relations(&sc).unwrap());

        // BD p=q=0 has a genuinely dependent system; agreement is mod the
        // relation lattice spanned by the factorization exponents.
        let sbd = GradingSpec::new(Family::BD, 6, 0, 0, 1).unwrap();
        assert!(dual_exponents_agree_mod_relations(&sbd).unwrap());
    }

    #[test]
    fn negation_duality_examples() {
        // (A, d=3, q=1, p=0), s1=-1/2: roots {0, 1/2 x2} vs dual negatives
        let s = spec(Family::A, 3, 0, 1);
        let pt = params(&s, &[(1, Rat::half(-1))]);
        assert!(negation_duality_check(&s, &pt).unwrap());
        assert!(negation_duality_symbolic(&s).unwrap());

        // p=q=0 type C at s=0
        let sc = spec(Family::C, 4, 0, 0);
        let pt = params(&sc, &[(2, Rat::zero()), (3, Rat::zero())]);
        assert!(negation_duality_check(&sc, &pt).unwrap());
        assert!(negation_duality_symbolic(&sc).unwrap());
    }

    #[test]
    fn distinguished_characters_examples() {
        // (A, d=5, p=1, q=1): s_q = 0 gives b = s^5, sign -1
        let s = spec(Family::A, 5, 1, 1);
        let list = distinguished_characters(&s).unwrap();
        assert_eq!(list.len(), 2);
        let first = &list[0];
        assert_eq!(first.b.degree(), 5);
        let roots = first.b.specialized_roots(&CharacterParams::zeros(
            &semi_invariant_table(&s).unwrap(),
        ));
        // b = s^5: single root 0 with multiplicity 5
        let roots = roots.unwrap();
        assert_eq!(roots, vec![(Rat::zero(), 5)]);
        assert_eq!(first.sign, Some(-1));

        // (C, m=4, p=0, q=0): b = s^2 (s - 1/2) (s + s3); signs +1 and -1
        let sc = spec(Family::C, 4, 0, 0);
        let list = distinguished_characters(&sc).unwrap();
        assert_eq!(list.len(), 2);
        assert_eq!(list[0].b.to_string(), "(s)^3 (s - 1/2)");
        assert_eq!(list[0].sign, Some(1));
        assert_eq!(list[1].b.to_string(), "(s)^2 (s - 1/2)^2");
        assert_eq!(list[1].sign, Some(-1));

        // (BD, p=0, q=1, m=4): single character, b = s^3 (s - 1/2)
        let sbd = spec(Family::BD, 4, 0, 1);
        let list = distinguished_characters(&sbd).unwrap();
        assert_eq!(list.len(), 1);
        assert_eq!(list[0].b.to_string(), "16 * (s)^3 (s - 1/2)");
        assert_eq!(list[0].sign, None);
    }

    #[test]
    fn distinguished_matches_closed_form_where_displayed() {
        for (family, orders) in [
            (Family::A, vec![3usize, 5, 7, 9]),
            (Family::C, vec![4, 6, 8]),
            (Family::BD, vec![4, 6, 8]),
        ] {
            for &o in &orders {
                for p in 0..=4 {
                    for q in 0..=4 {
                        let Ok(s) = GradingSpec::new(family, o, p, q, 1) else {
                            continue;
                        };
                        let Ok(b) = closed_form_b(&s) else { continue };
                        for dc in distinguished_characters(&s).unwrap() {
                            let specialized = b.specialized_roots(&dc.params).unwrap();
                            let display = dc
                                .b
                                .specialized_roots(&dc.params)
                                .unwrap();
                            assert_eq!(
                                specialized, display,
                                "distinguished display disagrees with closed form for {s}"
                            );
                            assert!(roots_in_unit_interval(&s, &dc.params).unwrap());
                        }
                    }
                }
            }
        }
    }
}
