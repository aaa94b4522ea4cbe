//! Graded classical Lie algebra models: validated parameters, eigenspace
//! dimension vectors, the structure of the fixed-point group K, the summands
//! of the degree-one eigenspace, and the little Weyl group G(m,p,r).
//!
//! Three families are modeled. The order parameter is `d` (odd) in type A,
//! where the automorphism has order 2d, and `m` (even) in types C and BD.
//! Eigenspace indices follow the family's natural range: `0..d-1` in type A,
//! `1..m` in type C, `0..m-1` in type BD; internal storage is a zero-based
//! array behind an index translation.

use crate::error::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    C,
    BD,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::C => "C",
            Family::BD => "BD",
        }
    }

    /// Key used for the order parameter in JSON (`d` in type A, else `m`).
    fn order_key(self) -> &'static str {
        match self {
            Family::A => "d",
            _ => "m",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Family::A),
            "C" | "c" => Ok(Family::C),
            "BD" | "bd" | "Bd" => Ok(Family::BD),
            other => Err(Error::InvalidGrading(format!("unknown family `{other}`"))),
        }
    }
}

/// Eigenspace dimensions over the family's full index range, with the mirror
/// pairing already enforced: `dim M_i = dim M_{mirror(i)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimVector {
    dims: Vec<usize>,
    /// Paper index of `dims[0]` (1 in type C, 0 otherwise).
    offset: usize,
}

impl DimVector {
    pub fn dim(&self, paper_index: usize) -> usize {
        self.dims[paper_index - self.offset]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.dims
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KFactorKind {
    SO,
    GL,
    Sp,
}

/// One factor of K, acting on the eigenspace with the given paper index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KFactor {
    pub kind: KFactorKind,
    pub size: usize,
    pub index: usize,
}

impl KFactor {
    pub fn dim(&self) -> usize {
        let n = self.size;
        match self.kind {
            KFactorKind::SO => n * n.saturating_sub(1) / 2,
            KFactorKind::GL => n * n,
            KFactorKind::Sp => (n / 2) * (n + 1),
        }
    }
}

impl fmt::Display for KFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            KFactorKind::SO => write!(f, "SO{}", self.size),
            KFactorKind::GL => write!(f, "GL{}", self.size),
            KFactorKind::Sp => write!(f, "Sp{}", self.size),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum G1PieceKind {
    /// `Hom(M_source, M_target)`, the action `x -> g_target x g_source^{-1}`.
    Hom,
    /// `Sym^2(M_source)`, the action `x -> g x g^t`.
    Sym2,
    /// `Sym^2(M_source^*)`, the action `x -> (g^t)^{-1} x g^{-1}`.
    Sym2Dual,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct G1Piece {
    pub kind: G1PieceKind,
    pub source: usize,
    pub target: usize,
    pub dim: usize,
}

impl fmt::Display for G1Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            G1PieceKind::Hom => write!(f, "Hom(M{},M{})", self.source, self.target),
            G1PieceKind::Sym2 => write!(f, "Sym2(M{})", self.source),
            G1PieceKind::Sym2Dual => write!(f, "Sym2(M{}*)", self.source),
        }
    }
}

/// The imprimitive complex reflection group G(m, p, rank).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReflectionGroupDesc {
    pub m_param: usize,
    pub p_param: usize,
    pub rank: usize,
}

impl ReflectionGroupDesc {
    pub fn new(m_param: usize, p_param: usize, rank: usize) -> Self {
        assert!(p_param >= 1 && m_param % p_param == 0);
        ReflectionGroupDesc {
            m_param,
            p_param,
            rank,
        }
    }

    /// `m^rank * rank! / p`; the rank-zero group is trivial.
    pub fn order(&self) -> u64 {
        if self.rank == 0 {
            return 1;
        }
        let mut o: u64 = 1;
        for _ in 0..self.rank {
            o *= self.m_param as u64;
        }
        for k in 1..=self.rank {
            o *= k as u64;
        }
        o / self.p_param as u64
    }
}

impl fmt::Display for ReflectionGroupDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{},{})", self.m_param, self.p_param, self.rank)
    }
}

impl Serialize for ReflectionGroupDesc {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// A validated grading: family, order parameter, the pair (p,q), the rank r,
/// and all derived dimension data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingSpec {
    pub family: Family,
    pub order_param: usize,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub l: usize,
    /// N in types A and BD, 2n in type C.
    pub ambient_dim: usize,
    dims: DimVector,
}

/// Validated constructor; reports which constraint failed.
pub fn build_grading(
    family: Family,
    order_param: usize,
    p: usize,
    q: usize,
    r: usize,
) -> Result<GradingSpec> {
    GradingSpec::new(family, order_param, p, q, r)
}

impl GradingSpec {
    pub fn new(family: Family, order_param: usize, p: usize, q: usize, r: usize) -> Result<Self> {
        let fail = |msg: String| Err(Error::InvalidGrading(msg));
        let l = match family {
            Family::A => {
                if order_param % 2 == 0 || order_param == 0 {
                    return fail(format!("type A requires odd d >= 1, got d = {order_param}"));
                }
                (order_param - 1) / 2
            }
            Family::C | Family::BD => {
                if order_param % 2 != 0 || order_param == 0 {
                    return fail(format!(
                        "type {family} requires even m >= 2, got m = {order_param}"
                    ));
                }
                order_param / 2
            }
        };
        let budget = match family {
            Family::A | Family::BD => l,
            Family::C => {
                if l == 0 {
                    return fail("type C requires m >= 2".into());
                }
                l - 1
            }
        };
        if p + q > budget {
            return fail(format!(
                "p + q = {} exceeds the bound {} for type {} with order parameter {}",
                p + q,
                budget,
                family,
                order_param
            ));
        }

        let dims = Self::dim_vector(family, order_param, l, p, q, r);
        let ambient_dim = dims.total();
        let expected = match family {
            Family::A => order_param * r + p * (p + 1) + q * q,
            Family::C => order_param * r + p * (p + 1) + q * (q + 1),
            Family::BD => order_param * r + p * p + q * q,
        };
        assert_eq!(ambient_dim, expected, "ambient dimension bookkeeping");

        Ok(GradingSpec {
            family,
            order_param,
            p,
            q,
            r,
            l,
            ambient_dim,
            dims,
        })
    }

    fn dim_vector(
        family: Family,
        order_param: usize,
        l: usize,
        p: usize,
        q: usize,
        r: usize,
    ) -> DimVector {
        // Half-range dimensions, then mirror across the pairing.
        let half_dim = |i: usize| -> usize {
            match family {
                Family::A | Family::BD => {
                    if i < q {
                        q - i + r
                    } else if i <= l - p {
                        r
                    } else {
                        r + i + p - l
                    }
                }
                Family::C => {
                    if i <= q {
                        // range 1..=q
                        q - i + r + 1
                    } else if i <= l - p {
                        r
                    } else {
                        r + i + p - l
                    }
                }
            }
        };
        let (offset, count) = match family {
            Family::A | Family::BD => (0usize, order_param),
            Family::C => (1usize, order_param),
        };
        let mirror = |i: usize| -> usize {
            match family {
                Family::A => (order_param - i) % order_param,
                Family::C => order_param + 1 - i,
                Family::BD => (order_param - i) % order_param,
            }
        };
        let mut dims = vec![0usize; count];
        for slot in 0..count {
            let i = slot + offset;
            dims[slot] = if i <= l { half_dim(i) } else { half_dim(mirror(i)) };
        }
        DimVector { dims, offset }
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn dim(&self, paper_index: usize) -> usize {
        self.dims.dim(paper_index)
    }

    /// Index of the last half-range eigenspace paired with itself or its
    /// mirror under the family rule.
    pub fn mirror(&self, i: usize) -> usize {
        match self.family {
            Family::A => (self.order_param - i) % self.order_param,
            Family::C => self.order_param + 1 - i,
            Family::BD => (self.order_param - i) % self.order_param,
        }
    }

    /// `d` in type A, `m` in types C and BD; also the degree of the
    /// fundamental invariant in rank one.
    pub fn m_zero(&self) -> usize {
        self.order_param
    }

    pub fn k_factors(&self) -> Vec<KFactor> {
        let gl = |i: usize| KFactor {
            kind: KFactorKind::GL,
            size: self.dim(i),
            index: i,
        };
        let so = |i: usize| KFactor {
            kind: KFactorKind::SO,
            size: self.dim(i),
            index: i,
        };
        match self.family {
            Family::A => std::iter::once(so(0)).chain((1..=self.l).map(gl)).collect(),
            Family::C => (1..=self.l).map(gl).collect(),
            Family::BD => std::iter::once(so(0))
                .chain((1..self.l).map(gl))
                .chain(std::iter::once(so(self.l)))
                .collect(),
        }
    }

    pub fn dim_k(&self) -> usize {
        self.k_factors().iter().map(KFactor::dim).sum()
    }

    pub fn g1_pieces(&self) -> Vec<G1Piece> {
        let hom = |i: usize| G1Piece {
            kind: G1PieceKind::Hom,
            source: i,
            target: i - 1,
            dim: self.dim(i) * self.dim(i - 1),
        };
        let sym2 = |i: usize, kind: G1PieceKind| {
            let n = self.dim(i);
            G1Piece {
                kind,
                source: i,
                target: i,
                dim: n * (n + 1) / 2,
            }
        };
        let pieces: Vec<G1Piece> = match self.family {
            Family::A => (1..=self.l)
                .map(hom)
                .chain(std::iter::once(sym2(self.l, G1PieceKind::Sym2)))
                .collect(),
            Family::C => std::iter::once(sym2(1, G1PieceKind::Sym2Dual))
                .chain((2..=self.l).map(hom))
                .chain(std::iter::once(sym2(self.l, G1PieceKind::Sym2)))
                .collect(),
            Family::BD => (1..=self.l).map(hom).collect(),
        };
        let dim_g1: usize = pieces.iter().map(|p| p.dim).sum();
        assert_eq!(dim_g1, self.dim_k() + self.r, "dim g_1 = dim K + r");
        pieces
    }

    pub fn dim_g1(&self) -> usize {
        self.g1_pieces().iter().map(|p| p.dim).sum()
    }

    pub fn little_weyl(&self) -> ReflectionGroupDesc {
        match self.family {
            Family::A => ReflectionGroupDesc::new(self.order_param, 1, self.r),
            Family::C => ReflectionGroupDesc::new(self.order_param, 1, self.r),
            Family::BD => {
                if self.dim(0) == self.r && self.dim(self.l) == self.r {
                    ReflectionGroupDesc::new(self.order_param, 2, self.r)
                } else {
                    ReflectionGroupDesc::new(self.order_param, 1, self.r)
                }
            }
        }
    }

    pub fn require_rank_one(&self) -> Result<()> {
        if self.r != 1 {
            return Err(Error::RankNotOne(self.r));
        }
        Ok(())
    }

    pub fn require_positive_rank(&self) -> Result<()> {
        if self.r == 0 {
            return Err(Error::RankZero);
        }
        Ok(())
    }
}

impl fmt::Display for GradingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({}={}, p={}, q={}, r={})",
            self.family,
            self.family.order_key(),
            self.order_param,
            self.p,
            self.q,
            self.r
        )
    }
}

impl Serialize for GradingSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(5))?;
        map.serialize_entry("family", self.family.as_str())?;
        map.serialize_entry(self.family.order_key(), &self.order_param)?;
        map.serialize_entry("p", &self.p)?;
        map.serialize_entry("q", &self.q)?;
        map.serialize_entry("r", &self.r)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for GradingSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            family: String,
            d: Option<usize>,
            m: Option<usize>,
            order: Option<usize>,
            p: usize,
            q: usize,
            r: usize,
        }
        let raw = Raw::deserialize(deserializer)?;
        let family: Family = raw.family.parse().map_err(D::Error::custom)?;
        let order = raw
            .d
            .or(raw.m)
            .or(raw.order)
            .ok_or_else(|| D::Error::custom("missing order parameter (`d`, `m` or `order`)"))?;
        GradingSpec::new(family, order, raw.p, raw.q, raw.r).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(f: Family, o: usize, p: usize, q: usize, r: usize) -> GradingSpec {
        GradingSpec::new(f, o, p, q, r).unwrap()
    }

    #[test]
    fn build_grading_examples() {
        let a = spec(Family::A, 3, 0, 1, 1);
        assert_eq!((a.l, a.ambient_dim), (1, 4));
        assert_eq!(a.dims().as_slice(), &[2, 1, 1]);

        let c = spec(Family::C, 4, 0, 0, 1);
        assert_eq!((c.l, c.ambient_dim), (2, 4));
        assert_eq!(c.dims().as_slice(), &[1, 1, 1, 1]);

        let bd = spec(Family::BD, 4, 1, 1, 1);
        assert_eq!((bd.l, bd.ambient_dim), (2, 6));
        assert_eq!(bd.dims().as_slice(), &[2, 1, 2, 1]);
    }

    #[test]
    fn constraint_violations_are_reported() {
        assert!(matches!(
            GradingSpec::new(Family::A, 4, 0, 0, 1),
            Err(Error::InvalidGrading(_))
        ));
        let err = GradingSpec::new(Family::C, 4, 1, 1, 1).unwrap_err();
        match err {
            Error::InvalidGrading(msg) => assert!(msg.contains("p + q")),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(GradingSpec::new(Family::BD, 3, 0, 0, 1).is_err());
    }

    #[test]
    fn k_factors_examples() {
        let a = spec(Family::A, 3, 0, 1, 1);
        let f = a.k_factors();
        assert_eq!(f.len(), 2);
        assert_eq!((f[0].kind, f[0].size), (KFactorKind::SO, 2));
        assert_eq!((f[1].kind, f[1].size), (KFactorKind::GL, 1));
        assert_eq!(a.dim_k(), 2);

        let c = spec(Family::C, 4, 0, 0, 1);
        assert_eq!(c.dim_k(), 2);
        assert!(c.k_factors().iter().all(|k| k.kind == KFactorKind::GL));

        let bd = spec(Family::BD, 4, 0, 0, 2);
        let f = bd.k_factors();
        assert_eq!(
            f.iter().map(|k| (k.kind, k.size)).collect::<Vec<_>>(),
            vec![
                (KFactorKind::SO, 2),
                (KFactorKind::GL, 2),
                (KFactorKind::SO, 2)
            ]
        );
        assert_eq!(bd.dim_k(), 6);
    }

    #[test]
    fn g1_pieces_examples() {
        let a = spec(Family::A, 3, 0, 1, 1);
        let pieces = a.g1_pieces();
        assert_eq!(
            pieces.iter().map(|p| (p.kind, p.dim)).collect::<Vec<_>>(),
            vec![(G1PieceKind::Hom, 2), (G1PieceKind::Sym2, 1)]
        );
        assert_eq!(a.dim_g1(), a.dim_k() + 1);

        let c = spec(Family::C, 4, 0, 0, 1);
        assert_eq!(
            c.g1_pieces()
                .iter()
                .map(|p| (p.kind, p.dim))
                .collect::<Vec<_>>(),
            vec![
                (G1PieceKind::Sym2Dual, 1),
                (G1PieceKind::Hom, 1),
                (G1PieceKind::Sym2, 1)
            ]
        );

        let bd = spec(Family::BD, 4, 0, 0, 1);
        assert_eq!(
            bd.g1_pieces()
                .iter()
                .map(|p| (p.kind, p.dim))
                .collect::<Vec<_>>(),
            vec![(G1PieceKind::Hom, 1), (G1PieceKind::Hom, 1)]
        );
        assert_eq!(bd.dim_k(), 1);
        assert_eq!(bd.dim_g1(), 2);
    }

    #[test]
    fn little_weyl_examples() {
        let a = spec(Family::A, 3, 0, 1, 2);
        assert_eq!(a.little_weyl(), ReflectionGroupDesc::new(3, 1, 2));
        assert_eq!(a.little_weyl().order(), 18);

        let bd_stable = spec(Family::BD, 4, 0, 0, 2);
        assert_eq!(bd_stable.little_weyl(), ReflectionGroupDesc::new(4, 2, 2));
        assert_eq!(bd_stable.little_weyl().order(), 16);

        let bd = spec(Family::BD, 4, 1, 0, 2);
        assert_eq!(bd.little_weyl(), ReflectionGroupDesc::new(4, 1, 2));
        assert_eq!(bd.little_weyl().order(), 32);
    }

    #[test]
    fn ambient_dimension_is_dim_sum_across_grid() {
        for (family, orders) in [
            (Family::A, vec![1usize, 3, 5, 7, 9]),
            (Family::C, vec![2, 4, 6, 8]),
            (Family::BD, vec![2, 4, 6, 8]),
        ] {
            for &o in &orders {
                for p in 0..4 {
                    for q in 0..4 {
                        for r in 0..4 {
                            if let Ok(s) = GradingSpec::new(family, o, p, q, r) {
                                assert_eq!(s.dims().total(), s.ambient_dim);
                                if s.r >= 1 {
                                    // mirror symmetry
                                    let range = match family {
                                        Family::C => 1..=s.order_param,
                                        _ => 0..=s.order_param - 1,
                                    };
                                    for i in range {
                                        assert_eq!(s.dim(i), s.dim(s.mirror(i)));
                                    }
                                    // dim g1 = dim K + r is asserted inside
                                    let _ = s.g1_pieces();
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let a = spec(Family::A, 3, 0, 1, 1);
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, r#"{"family":"A","d":3,"p":0,"q":1,"r":1}"#);
        let back: GradingSpec = serde_json::from_str(&js).unwrap();
        assert_eq!(back, a);

        let c: GradingSpec = serde_json::from_str(r#"{"family":"C","m":4,"p":0,"q":0,"r":1}"#)
            .unwrap();
        assert_eq!(c, spec(Family::C, 4, 0, 0, 1));
    }
}
