//! Coordinates on the degree-one eigenspace.
//!
//! Each summand gets matrix coordinates named `x{i}_{row}_{col}` (1-based),
//! where `i` is the summand's paper index: `x1..xl` for the Hom pieces and
//! `x{l+1}` for the symmetric end piece in types A and C (in type C `x1` is
//! the symmetric piece on `M_1^*`). Symmetric pieces store one variable per
//! upper-triangle slot; the bilinear forms on the orthogonal factors are the
//! identity in these bases, so transposes are literal matrix transposes.

use crate::grading::{G1Piece, G1PieceKind, GradingSpec};
use crate::poly::{SymbolicPoly, VarSet};
use crate::rational::Rat;
use std::sync::Arc;

/// One variable of the coordinate system.
#[derive(Debug, Clone)]
pub struct CoordVar {
    pub name: String,
    /// Paper label of the summand this entry belongs to.
    pub piece_label: usize,
    pub row: usize,
    pub col: usize,
    /// Off-diagonal entry of a symmetric block (carries pairing weight 2).
    pub sym_off_diagonal: bool,
    /// Torus weight: (K-factor paper index, diagonal slot, exponent).
    pub torus_weight: Vec<(usize, usize, i64)>,
}

#[derive(Debug, Clone)]
pub struct PieceCoords {
    pub piece: G1Piece,
    /// Paper label (index in `x{label}`).
    pub label: usize,
    pub rows: usize,
    pub cols: usize,
    /// Variable index at (row, col); symmetric blocks mirror across the
    /// diagonal.
    entry: Vec<Vec<usize>>,
}

pub struct Coordinates {
    pub vars: Arc<VarSet>,
    pub pieces: Vec<PieceCoords>,
    var_info: Vec<CoordVar>,
}

impl Coordinates {
    pub fn new(spec: &GradingSpec) -> Self {
        let pieces_desc = spec.g1_pieces();
        let mut names: Vec<String> = Vec::new();
        let mut var_info: Vec<CoordVar> = Vec::new();
        let mut pieces: Vec<PieceCoords> = Vec::new();

        for piece in &pieces_desc {
            let label = match piece.kind {
                G1PieceKind::Hom => piece.source,
                G1PieceKind::Sym2 => piece.source + 1,
                G1PieceKind::Sym2Dual => piece.source,
            };
            let (rows, cols) = match piece.kind {
                G1PieceKind::Hom => (spec.dim(piece.target), spec.dim(piece.source)),
                G1PieceKind::Sym2 | G1PieceKind::Sym2Dual => {
                    let n = spec.dim(piece.source);
                    (n, n)
                }
            };
            let mut entry = vec![vec![usize::MAX; cols]; rows];
            for a in 0..rows {
                for b in 0..cols {
                    let symmetric = matches!(
                        piece.kind,
                        G1PieceKind::Sym2 | G1PieceKind::Sym2Dual
                    );
                    if symmetric && b < a {
                        entry[a][b] = entry[b][a];
                        continue;
                    }
                    let idx = names.len();
                    let name = format!("x{}_{}_{}", label, a + 1, b + 1);
                    let torus_weight = match piece.kind {
                        G1PieceKind::Hom => vec![
                            (piece.target, a, 1i64),
                            (piece.source, b, -1i64),
                        ],
                        G1PieceKind::Sym2 => {
                            if a == b {
                                vec![(piece.source, a, 2)]
                            } else {
                                vec![(piece.source, a, 1), (piece.source, b, 1)]
                            }
                        }
                        G1PieceKind::Sym2Dual => {
                            if a == b {
                                vec![(piece.source, a, -2)]
                            } else {
                                vec![(piece.source, a, -1), (piece.source, b, -1)]
                            }
                        }
                    };
                    names.push(name.clone());
                    var_info.push(CoordVar {
                        name,
                        piece_label: label,
                        row: a,
                        col: b,
                        sym_off_diagonal: symmetric && a != b,
                        torus_weight,
                    });
                    entry[a][b] = idx;
                }
            }
            pieces.push(PieceCoords {
                piece: piece.clone(),
                label,
                rows,
                cols,
                entry,
            });
        }

        Coordinates {
            vars: VarSet::new(names),
            pieces,
            var_info,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.var_info.len()
    }

    pub fn var_info(&self, idx: usize) -> &CoordVar {
        &self.var_info[idx]
    }

    pub fn piece_by_label(&self, label: usize) -> Option<&PieceCoords> {
        self.pieces.iter().find(|p| p.label == label)
    }

    /// The summand's matrix with polynomial entries.
    pub fn matrix(&self, piece: &PieceCoords) -> Matrix {
        let mut rows = Vec::with_capacity(piece.rows);
        for a in 0..piece.rows {
            let mut row = Vec::with_capacity(piece.cols);
            for b in 0..piece.cols {
                row.push(SymbolicPoly::var_by_index(
                    self.vars.clone(),
                    piece.entry[a][b],
                ));
            }
            rows.push(row);
        }
        Matrix { rows }
    }

    /// Per-variable scaling factors under a diagonal torus element of K.
    /// `torus` maps a K-factor paper index to its diagonal entries.
    pub fn torus_scalings(&self, torus: &std::collections::BTreeMap<usize, Vec<Rat>>) -> Vec<Rat> {
        self.var_info
            .iter()
            .map(|v| {
                let mut acc = Rat::one();
                for &(factor, slot, exp) in &v.torus_weight {
                    let t = &torus[&factor][slot];
                    acc *= &t.pow(exp as i32);
                }
                acc
            })
            .collect()
    }
}

/// Dense matrix of polynomials, just big enough for the determinant and
/// product expressions of the semi-invariant tables.
#[derive(Clone)]
pub struct Matrix {
    pub rows: Vec<Vec<SymbolicPoly>>,
}

impl Matrix {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let (n, k, m) = (self.nrows(), self.ncols(), other.ncols());
        assert_eq!(k, other.nrows(), "matrix dimension mismatch");
        let vars = self.rows[0][0].vars().clone();
        let mut rows = vec![vec![SymbolicPoly::zero(vars); m]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                for t in 0..k {
                    slot.add_assign(&self.rows[i][t].mul(&other.rows[t][j]));
                }
            }
        }
        Matrix { rows }
    }

    pub fn transpose(&self) -> Matrix {
        let (n, m) = (self.nrows(), self.ncols());
        let mut rows = Vec::with_capacity(m);
        for j in 0..m {
            rows.push((0..n).map(|i| self.rows[i][j].clone()).collect());
        }
        Matrix { rows }
    }

    /// Laplace expansion along the first row; matrices here stay small.
    pub fn det(&self) -> SymbolicPoly {
        let n = self.nrows();
        assert_eq!(n, self.ncols(), "determinant of a non-square matrix");
        assert!(n > 0);
        if n == 1 {
            return self.rows[0][0].clone();
        }
        let vars = self.rows[0][0].vars().clone();
        let mut acc = SymbolicPoly::zero(vars);
        for j in 0..n {
            let mut minor_rows = Vec::with_capacity(n - 1);
            for i in 1..n {
                let mut row = Vec::with_capacity(n - 1);
                for (jj, e) in self.rows[i].iter().enumerate() {
                    if jj != j {
                        row.push(e.clone());
                    }
                }
                minor_rows.push(row);
            }
            let minor = Matrix { rows: minor_rows }.det();
            let signed = if j % 2 == 0 {
                self.rows[0][j].clone()
            } else {
                self.rows[0][j].neg()
            };
            acc.add_assign(&signed.mul(&minor));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::Family;

    #[test]
    fn variable_layout_type_a() {
        let spec = GradingSpec::new(Family::A, 3, 0, 1, 1).unwrap();
        let coords = Coordinates::new(&spec);
        // Hom(M1, M0) is 2x1, Sym2(M1) is 1x1.
        assert_eq!(
            coords.vars.names(),
            &["x1_1_1".to_string(), "x1_2_1".into(), "x2_1_1".into()]
        );
        assert!(!coords.var_info(2).sym_off_diagonal);
    }

    #[test]
    fn symmetric_block_shares_upper_triangle() {
        // (A, d=3, p=1, q=0): Sym2(M_1) with dim M_1 = 2.
        let spec = GradingSpec::new(Family::A, 3, 1, 0, 1).unwrap();
        let coords = Coordinates::new(&spec);
        let sym = coords.piece_by_label(2).unwrap();
        assert_eq!(sym.entry[0][1], sym.entry[1][0]);
        let names: Vec<&str> = coords
            .vars
            .names()
            .iter()
            .map(String::as_str)
            .collect();
        assert!(names.contains(&"x2_1_2"));
        assert!(!names.contains(&"x2_2_1"));
        let off = coords
            .vars
            .index_of("x2_1_2")
            .map(|i| coords.var_info(i).sym_off_diagonal)
            .unwrap();
        assert!(off);
    }

    #[test]
    fn det_of_product_matches_hand_expansion() {
        let spec = GradingSpec::new(Family::A, 3, 0, 1, 1).unwrap();
        let coords = Coordinates::new(&spec);
        let x1 = coords.matrix(&coords.pieces[0]);
        let prod = x1.transpose().mul(&x1);
        // t(x1) x1 = x1_1_1^2 + x1_2_1^2
        let f = prod.det();
        assert_eq!(f.to_string(), "x1_1_1^2 + x1_2_1^2");
    }
}
