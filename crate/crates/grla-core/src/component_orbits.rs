//! The component group `I` of the regular stabilizer: an elementary abelian
//! 2-group with generators gamma_i, alpha_i, beta_i, its distinguished
//! character set, the chi_k representatives, and the orbit/stabilizer
//! structure of the little Weyl group action on characters.
//!
//! The action is modeled as: the symmetric group permutes the eta-blocks, the
//! order-m_0 diagonal reflections act trivially on sign characters, and when
//! gamma_r is absent characters are identified with their global flip. This
//! model is not assumed silently: `weyl_orbits` recomputes every orbit by
//! brute force and hard-fails if the representative or stabilizer data
//! disagrees with the expected group-theoretic values.

use crate::error::{Error, Result};
use crate::grading::{Family, GradingSpec, ReflectionGroupDesc};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::collections::BTreeSet;

/// Ranks and generator inventory of `I` for one grading.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentGroup {
    /// gamma_1 .. gamma_{r-1}, plus gamma_r when present.
    pub gamma_count: usize,
    pub alpha_count: usize,
    pub beta_count: usize,
    pub gamma_r_present: bool,
    pub rank: usize,
    /// rank of I^0 = <alpha, beta>
    pub inert_rank: usize,
    /// rank of I^rs = <gamma>
    pub rs_rank: usize,
    r: usize,
}

/// Values of a character on the generator set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SignCharacter {
    pub gamma: Vec<i8>,
    pub alpha: Vec<i8>,
    pub beta: Vec<i8>,
}

impl SignCharacter {
    pub fn gamma_value(&self, i: usize) -> i8 {
        self.gamma[i - 1]
    }
}

/// Block signs `(eta_1, ..., eta_r)`; when `quotient` is set the vector is
/// only defined up to a global flip and is stored as the lexicographically
/// smaller of the pair (with -1 ordered before +1).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct EtaVector {
    pub signs: Vec<i8>,
    pub quotient: bool,
}

impl EtaVector {
    fn canonicalize(mut signs: Vec<i8>, quotient: bool) -> EtaVector {
        if quotient {
            let flipped: Vec<i8> = signs.iter().map(|s| -s).collect();
            if flipped < signs {
                signs = flipped;
            }
        }
        EtaVector { signs, quotient }
    }

    pub fn minus_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    /// Number of -1 entries as an orbit label: in the quotient case the
    /// smaller of the pair.
    pub fn orbit_label(&self) -> usize {
        let k = self.minus_count();
        if self.quotient {
            k.min(self.signs.len() - k)
        } else {
            k
        }
    }
}

pub fn component_group(spec: &GradingSpec) -> Result<ComponentGroup> {
    spec.require_positive_rank()?;
    let (r, p, q) = (spec.r, spec.p, spec.q);
    let (gamma_r_present, alpha_count, beta_count) = match spec.family {
        Family::A => (q >= 1, q.saturating_sub(1), p),
        Family::C => (true, q, p),
        Family::BD => (p >= 1 && q >= 1, q.saturating_sub(1), p.saturating_sub(1)),
    };
    let gamma_count = r - 1 + usize::from(gamma_r_present);
    let rank = gamma_count + alpha_count + beta_count;
    let expected_rank = match spec.family {
        Family::A => r + p + q - 1,
        Family::C => r + p + q,
        Family::BD => {
            if p + q >= 1 {
                r + p + q - 2
            } else {
                r - 1
            }
        }
    };
    assert_eq!(rank, expected_rank, "component group rank bookkeeping");
    Ok(ComponentGroup {
        gamma_count,
        alpha_count,
        beta_count,
        gamma_r_present,
        rank,
        inert_rank: alpha_count + beta_count,
        rs_rank: gamma_count,
        r,
    })
}

/// The forced alpha/beta values of the distinguished character set.
fn forced_signs(count: usize) -> Vec<i8> {
    (1..=count).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect()
}

/// All characters with `chi(alpha_i) = chi(beta_i) = (-1)^i` and free gamma
/// values; `2^{gamma_count}` of them, in binary order with +1 first.
pub fn zero_hat_characters(spec: &GradingSpec) -> Result<Vec<SignCharacter>> {
    let g = component_group(spec)?;
    let mut out = Vec::with_capacity(1 << g.gamma_count);
    for bits in 0..(1u32 << g.gamma_count) {
        let gamma: Vec<i8> = (0..g.gamma_count)
            .map(|i| if bits >> i & 1 == 0 { 1 } else { -1 })
            .collect();
        out.push(SignCharacter {
            gamma,
            alpha: forced_signs(g.alpha_count),
            beta: forced_signs(g.beta_count),
        });
    }
    Ok(out)
}

/// The representative `chi_k`: -1 on gamma_k only (k = 0 is trivial).
pub fn chi_k(spec: &GradingSpec, k: usize) -> Result<SignCharacter> {
    let g = component_group(spec)?;
    if k > g.gamma_count {
        return Err(Error::IndexOutOfRange {
            index: k,
            lo: 0,
            hi: g.gamma_count,
        });
    }
    let gamma: Vec<i8> = (1..=g.gamma_count)
        .map(|i| if i == k { -1 } else { 1 })
        .collect();
    Ok(SignCharacter {
        gamma,
        alpha: forced_signs(g.alpha_count),
        beta: forced_signs(g.beta_count),
    })
}

/// Solve the block signs from the gamma values:
/// `chi(gamma_i) = eta_i eta_{i+1}` for i < r and `chi(gamma_r) = eta_r`.
pub fn eta_vector(spec: &GradingSpec, chi: &SignCharacter) -> Result<EtaVector> {
    let g = component_group(spec)?;
    assert_eq!(chi.gamma.len(), g.gamma_count);
    let r = g.r;
    let mut signs = vec![1i8; r];
    if g.gamma_r_present {
        signs[r - 1] = chi.gamma[r - 1];
    }
    for i in (0..r.saturating_sub(1)).rev() {
        signs[i] = chi.gamma[i] * signs[i + 1];
    }
    Ok(EtaVector::canonicalize(signs, !g.gamma_r_present))
}

/// Inverse of [`eta_vector`] on the gamma generators.
pub fn character_from_eta(signs: &[i8], g: &ComponentGroup) -> SignCharacter {
    let r = signs.len();
    let mut gamma = Vec::with_capacity(g.gamma_count);
    for i in 0..r - 1 {
        gamma.push(signs[i] * signs[i + 1]);
    }
    if g.gamma_r_present {
        gamma.push(signs[r - 1]);
    }
    SignCharacter {
        gamma,
        alpha: forced_signs(g.alpha_count),
        beta: forced_signs(g.beta_count),
    }
}

/// One little-Weyl-group orbit on the distinguished character set.
#[derive(Debug, Clone)]
pub struct OrbitDatum {
    pub representative: SignCharacter,
    pub k: usize,
    pub orbit_size: u64,
    pub stabilizer_order: u64,
    pub stabilizer0: (ReflectionGroupDesc, ReflectionGroupDesc),
    pub extra_z2: bool,
}

impl Serialize for OrbitDatum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(4))?;
        map.serialize_entry("k", &self.k)?;
        map.serialize_entry("orbit_size", &self.orbit_size)?;
        map.serialize_entry(
            "stab0",
            &[
                self.stabilizer0.0.to_string(),
                self.stabilizer0.1.to_string(),
            ],
        )?;
        map.serialize_entry("extra_z2", &self.extra_z2)?;
        map.end()
    }
}

/// The expected inclusive upper end of the representative range per family.
pub fn representative_range_end(spec: &GradingSpec) -> Result<usize> {
    let r = spec.r;
    Ok(match spec.family {
        Family::A => {
            if spec.q == 0 {
                r / 2
            } else {
                r
            }
        }
        Family::C => r,
        Family::BD => {
            if spec.p.min(spec.q) == 0 {
                r / 2
            } else {
                r
            }
        }
    })
}

/// Brute-force orbit enumeration of the modeled action, validated against
/// the expected representative set and stabilizer structure.
pub fn weyl_orbits(spec: &GradingSpec) -> Result<Vec<OrbitDatum>> {
    spec.require_positive_rank()?;
    if spec.family == Family::BD && spec.p == 0 && spec.q == 0 {
        return Err(Error::StableBdUnsupported(
            "its orbit data belongs to the stable-case analysis and does not fit \
             the G(m,1,k) stabilizer tables",
        ));
    }
    let g = component_group(spec)?;
    let r = g.r;
    let quotient = !g.gamma_r_present;
    let w = spec.little_weyl();
    assert_eq!(w.p_param, 1, "quotient families still act through G(m,1,r)");
    let order_w = w.order();
    let m0 = spec.m_zero();

    // All eta-classes.
    let mut points: BTreeSet<Vec<i8>> = BTreeSet::new();
    for bits in 0..(1u32 << r) {
        let signs: Vec<i8> = (0..r)
            .map(|i| if bits >> i & 1 == 0 { 1 } else { -1 })
            .collect();
        points.insert(EtaVector::canonicalize(signs, quotient).signs);
    }
    if points.len() != 1 << g.rs_rank {
        return Err(Error::OrbitModelMismatch(format!(
            "{} character classes, expected 2^{}",
            points.len(),
            g.rs_rank
        )));
    }

    // Permutations of r letters, applied to eta coordinates.
    let perms = permutations(r);
    let mut seen: BTreeSet<Vec<i8>> = BTreeSet::new();
    let mut orbits: Vec<OrbitDatum> = Vec::new();
    for start in &points {
        if seen.contains(start) {
            continue;
        }
        let mut orbit: BTreeSet<Vec<i8>> = BTreeSet::new();
        for perm in &perms {
            let image: Vec<i8> = perm.iter().map(|&j| start[j]).collect();
            orbit.insert(EtaVector::canonicalize(image, quotient).signs);
        }
        let size = orbit.len() as u64;
        let k = orbit
            .iter()
            .map(|signs| {
                EtaVector {
                    signs: signs.clone(),
                    quotient,
                }
                .orbit_label()
            })
            .min()
            .unwrap();
        seen.extend(orbit);

        if order_w % size != 0 {
            return Err(Error::OrbitModelMismatch(format!(
                "orbit size {size} does not divide |W_a| = {order_w}"
            )));
        }
        let stabilizer_order = order_w / size;
        let stab0 = (
            ReflectionGroupDesc::new(m0, 1, k),
            ReflectionGroupDesc::new(m0, 1, r - k),
        );
        let product = stab0.0.order() * stab0.1.order();
        let extra_z2 = match stabilizer_order {
            s if s == product => false,
            s if s == 2 * product => true,
            other => {
                return Err(Error::OrbitModelMismatch(format!(
                    "stabilizer order {other} is neither |G({m0},1,{k})|*|G({m0},1,{})| nor twice it",
                    r - k
                )))
            }
        };
        orbits.push(OrbitDatum {
            representative: chi_k(spec, k)?,
            k,
            orbit_size: size,
            stabilizer_order,
            stabilizer0: stab0,
            extra_z2,
        });
    }
    orbits.sort_by_key(|o| o.k);

    // Validate against the expected representative list and the extra-Z/2
    // rule: the quotient happens only at k = r/2 in the quotient families.
    let end = representative_range_end(spec)?;
    let ks: Vec<usize> = orbits.iter().map(|o| o.k).collect();
    let expected: Vec<usize> = (0..=end).collect();
    if ks != expected {
        return Err(Error::OrbitModelMismatch(format!(
            "representatives {ks:?}, expected {expected:?} for {spec}"
        )));
    }
    for o in &orbits {
        let at_half = quotient && 2 * o.k == r;
        if o.extra_z2 != at_half {
            return Err(Error::OrbitModelMismatch(format!(
                "extra Z/2 at k = {} of {spec} contradicts the stabilizer rule",
                o.k
            )));
        }
    }
    Ok(orbits)
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for i in 0..r {
        let mut next = Vec::new();
        for p in out {
            for pos in 0..=i {
                let mut q = p.clone();
                q.insert(pos, i);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(f: Family, o: usize, p: usize, q: usize, r: usize) -> GradingSpec {
        GradingSpec::new(f, o, p, q, r).unwrap()
    }

    #[test]
    fn component_group_examples() {
        // rank r+p+q-1 with gamma_r present (q >= 1); the smallest valid
        // type A grading carrying (p, q) = (1, 1) needs d = 5.
        let g = component_group(&spec(Family::A, 5, 1, 1, 2)).unwrap();
        assert_eq!(g.rank, 3);
        assert!(g.gamma_r_present);

        let g = component_group(&spec(Family::C, 4, 0, 0, 2)).unwrap();
        assert_eq!(g.rank, 2);
        assert!(g.gamma_r_present);

        let g = component_group(&spec(Family::BD, 4, 0, 0, 3)).unwrap();
        assert_eq!(g.rank, 2);
        assert!(!g.gamma_r_present);
        assert_eq!(g.rs_rank, 2);

        assert!(component_group(&spec(Family::C, 4, 0, 0, 0)).is_err());
    }

    #[test]
    fn zero_hat_examples() {
        // (C, r=1, p=1, q=1): alpha_1, beta_1 forced to -1; gamma_1 free
        let s = spec(Family::C, 6, 1, 1, 1);
        let chars = zero_hat_characters(&s).unwrap();
        assert_eq!(chars.len(), 2);
        for c in &chars {
            assert_eq!(c.alpha, vec![-1]);
            assert_eq!(c.beta, vec![-1]);
        }

        // (BD, p=q=0, r=2): two characters on gamma_1
        let s = spec(Family::BD, 4, 0, 0, 2);
        let chars = zero_hat_characters(&s).unwrap();
        assert_eq!(chars.len(), 2);
        assert!(chars.iter().all(|c| c.alpha.is_empty() && c.beta.is_empty()));

        // (A, q=0, p=0, r=2): gamma_1 only
        let s = spec(Family::A, 3, 0, 0, 2);
        assert_eq!(zero_hat_characters(&s).unwrap().len(), 2);
    }

    #[test]
    fn chi_k_eta_vectors() {
        // k=0: trivial, eta all +1
        let s = spec(Family::C, 4, 0, 0, 3);
        let chi0 = chi_k(&s, 0).unwrap();
        assert_eq!(eta_vector(&s, &chi0).unwrap().signs, vec![1, 1, 1]);

        // k=r with gamma_r present: eta all -1
        let chi3 = chi_k(&s, 3).unwrap();
        assert_eq!(eta_vector(&s, &chi3).unwrap().signs, vec![-1, -1, -1]);

        // k=1, r=2: eta = (-1, +1)
        let s2 = spec(Family::C, 4, 0, 0, 2);
        let chi1 = chi_k(&s2, 1).unwrap();
        assert_eq!(eta_vector(&s2, &chi1).unwrap().signs, vec![-1, 1]);

        // out of range
        assert!(chi_k(&s2, 3).is_err());
    }

    #[test]
    fn weyl_orbit_examples() {
        // (A, d=3, q=0, p=0, r=2): representatives {chi_0, chi_1}, extra Z/2 at k=1
        let s = spec(Family::A, 3, 0, 0, 2);
        let orbits = weyl_orbits(&s).unwrap();
        assert_eq!(orbits.len(), 2);
        assert_eq!(orbits[0].k, 0);
        assert!(!orbits[0].extra_z2);
        assert_eq!(orbits[1].k, 1);
        assert!(orbits[1].extra_z2);
        assert_eq!(
            orbits[1].stabilizer0,
            (
                ReflectionGroupDesc::new(3, 1, 1),
                ReflectionGroupDesc::new(3, 1, 1)
            )
        );

        // (C, m=4, r=2): {chi_0, chi_1, chi_2}
        let s = spec(Family::C, 4, 1, 0, 2);
        let orbits = weyl_orbits(&s).unwrap();
        assert_eq!(orbits.iter().map(|o| o.k).collect::<Vec<_>>(), vec![0, 1, 2]);

        // (BD, m=4, p=1, q=1, r=2): {chi_0, chi_1, chi_2}
        let s = spec(Family::BD, 4, 1, 1, 2);
        let orbits = weyl_orbits(&s).unwrap();
        assert_eq!(orbits.len(), 3);

        // BD stable case is rejected
        assert!(matches!(
            weyl_orbits(&spec(Family::BD, 4, 0, 0, 2)),
            Err(Error::StableBdUnsupported(_))
        ));
    }

    #[test]
    fn eta_character_round_trip() {
        for (family, order) in [(Family::A, 5), (Family::C, 4), (Family::BD, 6)] {
            for q in 0..=1 {
                for r in 1..=4 {
                    let Ok(s) = GradingSpec::new(family, order, 1, q, r) else {
                        continue;
                    };
                    let g = component_group(&s).unwrap();
                    for k in 0..=g.gamma_count {
                        let chi = chi_k(&s, k).unwrap();
                        let eta = eta_vector(&s, &chi).unwrap();
                        assert_eq!(eta.minus_count().min(if eta.quotient { r - eta.minus_count() } else { r }), k.min(if eta.quotient { r - k } else { r }));
                        let back = character_from_eta(&eta.signs, &g);
                        // up to the global flip in the quotient case
                        if back != chi {
                            assert!(eta.quotient, "round trip failed for {s}, k={k}");
                            let flipped: Vec<i8> = eta.signs.iter().map(|x| -x).collect();
                            assert_eq!(character_from_eta(&flipped, &g), chi);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn orbit_structure_across_grid() {
        for (family, order) in [(Family::A, 3), (Family::C, 4), (Family::BD, 4)] {
            for p in 0..=3 {
                for q in 0..=3 {
                    for r in 1..=6 {
                        let Ok(s) = GradingSpec::new(family, order, p, q, r) else {
                            continue;
                        };
                        if family == Family::BD && p == 0 && q == 0 {
                            continue;
                        }
                        let orbits = weyl_orbits(&s).unwrap();
                        let g = component_group(&s).unwrap();
                        // orbit sizes sum to the distinguished character count
                        let total: u64 = orbits.iter().map(|o| o.orbit_size).sum();
                        assert_eq!(total, 1 << g.rs_rank, "{s}");
                        // orbit-stabilizer
                        let w = s.little_weyl().order();
                        for o in &orbits {
                            assert_eq!(o.orbit_size * o.stabilizer_order, w, "{s}");
                        }
                        // chi_k ~ chi_{r-k} exactly in the quotient cases
                        let quotient = !g.gamma_r_present;
                        if r >= 2 {
                            let a = eta_vector(&s, &chi_k(&s, 1).unwrap()).unwrap();
                            let b = eta_vector(
                                &s,
                                &chi_k(&s, (r - 1).min(g.gamma_count)).unwrap(),
                            )
                            .unwrap();
                            let same_orbit = a.orbit_label() == b.orbit_label();
                            if quotient && r == 2 {
                                assert!(same_orbit, "{s}");
                            }
                        }
                    }
                }
            }
        }
    }
}
