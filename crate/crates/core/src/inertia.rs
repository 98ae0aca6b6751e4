//! Exact inertia and determinant of symmetric rational matrices.
//!
//! [`congruent_diagonalize`] performs symmetric Gaussian elimination over the
//! rationals, producing a block-diagonal matrix congruent to the input. By
//! Sylvester's law of inertia the block signs give the inertia triple of the
//! original matrix. Adjacency matrices have a zero diagonal, so besides 1×1
//! pivots the elimination also uses anti-diagonal 2×2 pivots `[[0, c], [c, 0]]`,
//! each contributing one positive and one negative eigenvalue.
//!
//! Pivot rule: prefer the nonzero diagonal entry of largest absolute value
//! (lowest index on ties); when the remaining diagonal is all zero, pivot on
//! the first nonzero off-diagonal entry in row-major order.

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::sgraph::{InertiaTriple, SignedGraph};

/// Dense symmetric matrix over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSymmetricMatrix {
    order: usize,
    entries: Vec<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is not square: row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("transform has order {got}, expected {expected}")]
    OrderMismatch { got: usize, expected: usize },
}

impl RationalSymmetricMatrix {
    pub fn zeros(order: usize) -> Self {
        RationalSymmetricMatrix {
            order,
            entries: vec![BigRational::zero(); order * order],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self, MatrixError> {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != order {
                return Err(MatrixError::NotSquare {
                    row,
                    len: r.len(),
                    order,
                });
            }
            entries.extend(r);
        }
        let m = RationalSymmetricMatrix { order, entries };
        for i in 0..order {
            for j in i + 1..order {
                if m.get(i, j) != m.get(j, i) {
                    return Err(MatrixError::NotSymmetric { i, j });
                }
            }
        }
        Ok(m)
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.order + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        self.entries[j * self.order + i] = value.clone();
        self.entries[i * self.order + j] = value;
    }

    pub fn rows(&self) -> Vec<Vec<BigRational>> {
        self.entries
            .chunks(self.order.max(1))
            .map(|r| r.to_vec())
            .take(self.order)
            .collect()
    }

    /// `Sᵀ M S` for a square rational `s` given row-major.
    #[allow(clippy::needless_range_loop)]
    pub fn congruence_transform(&self, s: &[Vec<BigRational>]) -> Result<Self, MatrixError> {
        let n = self.order;
        if s.len() != n || s.iter().any(|r| r.len() != n) {
            return Err(MatrixError::OrderMismatch {
                got: s.len(),
                expected: n,
            });
        }
        // ms = M S
        let mut ms = vec![BigRational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    ms[i * n + j] += a * &s[k][j];
                }
            }
        }
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = BigRational::zero();
                for k in 0..n {
                    acc += &s[k][i] * &ms[k * n + j];
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        use num_traits::ToPrimitive;
        DMatrix::from_fn(self.order, self.order, |i, j| {
            self.get(i, j).to_f64().unwrap_or(f64::NAN)
        })
    }
}

/// `A(Γ)`: entry `σ(uv)` for every edge, zero elsewhere.
pub fn adjacency_matrix(g: &SignedGraph) -> RationalSymmetricMatrix {
    let mut m = RationalSymmetricMatrix::zeros(g.order());
    for e in g.edges() {
        m.set(e.u, e.v, BigRational::from_integer(BigInt::from(e.sign.value())));
    }
    m
}

/// One diagonal block of the congruent form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PivotBlock {
    /// 1×1 block `[d]`, `d ≠ 0`.
    Single(BigRational),
    /// 2×2 block `[[0, c], [c, 0]]`, `c ≠ 0`.
    Pair(BigRational),
    /// A zero row left after elimination.
    Zero,
}

impl PivotBlock {
    pub fn dimension(&self) -> usize {
        match self {
            PivotBlock::Pair(_) => 2,
            _ => 1,
        }
    }

    pub fn determinant(&self) -> BigRational {
        match self {
            PivotBlock::Single(d) => d.clone(),
            PivotBlock::Pair(c) => -(c * c),
            PivotBlock::Zero => BigRational::zero(),
        }
    }
}

impl fmt::Display for PivotBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PivotBlock::Single(d) => write!(f, "[{d}]"),
            PivotBlock::Pair(c) => write!(f, "[[0,{c}],[{c},0]]"),
            PivotBlock::Zero => write!(f, "[0]"),
        }
    }
}

/// Block-diagonal congruent form of a symmetric matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceResult {
    /// Blocks in elimination order.
    pub pivots: Vec<PivotBlock>,
    /// Original row indices eliminated by each block (one or two per block).
    pub pivot_rows: Vec<Vec<usize>>,
    pub inertia: InertiaTriple,
    pub det: BigRational,
    /// Parity of the symmetric row/column permutation that brings the pivot
    /// rows into block order. A symmetric permutation `PMPᵀ` multiplies the
    /// determinant by `det(P)² = 1`, so this never changes the sign of `det`.
    pub swap_parity: bool,
}

impl CongruenceResult {
    /// Inertia recomputed from the block list alone.
    pub fn inertia_from_pivots(&self) -> InertiaTriple {
        inertia_of_blocks(&self.pivots)
    }

    /// Determinant recomputed from the block list alone.
    pub fn det_from_pivots(&self) -> BigRational {
        self.pivots.iter().map(PivotBlock::determinant).product()
    }
}

pub fn inertia_of_blocks(blocks: &[PivotBlock]) -> InertiaTriple {
    let mut t = InertiaTriple::default();
    for b in blocks {
        match b {
            PivotBlock::Single(d) if d.is_positive() => t.i_plus += 1,
            PivotBlock::Single(_) => t.i_minus += 1,
            PivotBlock::Pair(_) => {
                t.i_plus += 1;
                t.i_minus += 1;
            }
            PivotBlock::Zero => t.nullity += 1,
        }
    }
    t
}

/// Symmetric elimination to block-diagonal form, exact over `Q`.
pub fn congruent_diagonalize(m: &RationalSymmetricMatrix) -> CongruenceResult {
    let n = m.order();
    let mut a: Vec<Vec<BigRational>> = m.rows();
    let mut active: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::new();
    let mut pivot_rows = Vec::new();

    while !active.is_empty() {
        let mut best: Option<usize> = None;
        for &i in &active {
            if a[i][i].is_zero() {
                continue;
            }
            match best {
                Some(b) if a[b][b].abs() >= a[i][i].abs() => {}
                _ => best = Some(i),
            }
        }
        if let Some(p) = best {
            let d = a[p][p].clone();
            active.retain(|&i| i != p);
            let col: Vec<(usize, BigRational)> = active
                .iter()
                .filter(|&&i| !a[i][p].is_zero())
                .map(|&i| (i, &a[i][p] / &d))
                .collect();
            for (x, (i, ri)) in col.iter().enumerate() {
                for (j, _) in &col[x..] {
                    let upd = ri * &a[p][*j];
                    let v = &a[*i][*j] - upd;
                    a[*j][*i] = v.clone();
                    a[*i][*j] = v;
                }
            }
            pivots.push(PivotBlock::Single(d));
            pivot_rows.push(vec![p]);
            continue;
        }

        let mut pair = None;
        'search: for (x, &i) in active.iter().enumerate() {
            for &j in &active[x + 1..] {
                if !a[i][j].is_zero() {
                    pair = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((p, q)) = pair else {
            for &i in &active {
                pivots.push(PivotBlock::Zero);
                pivot_rows.push(vec![i]);
            }
            break;
        };
        let c = a[p][q].clone();
        active.retain(|&i| i != p && i != q);
        // Schur complement with E⁻¹ = [[0, 1/c], [1/c, 0]]:
        // a[i][j] -= (a[i][p] a[q][j] + a[i][q] a[p][j]) / c
        let touched: Vec<(usize, BigRational, BigRational)> = active
            .iter()
            .filter(|&&i| !a[i][p].is_zero() || !a[i][q].is_zero())
            .map(|&i| (i, &a[i][p] / &c, &a[i][q] / &c))
            .collect();
        for (x, (i, ip, iq)) in touched.iter().enumerate() {
            for (j, _, _) in &touched[x..] {
                let upd = ip * &a[q][*j] + iq * &a[p][*j];
                let v = &a[*i][*j] - upd;
                a[*j][*i] = v.clone();
                a[*i][*j] = v;
            }
        }
        pivots.push(PivotBlock::Pair(c));
        pivot_rows.push(vec![p, q]);
    }

    let order: Vec<usize> = pivot_rows.iter().flatten().copied().collect();
    let inertia = inertia_of_blocks(&pivots);
    let det = if inertia.nullity > 0 {
        BigRational::zero()
    } else {
        pivots.iter().map(PivotBlock::determinant).product()
    };
    CongruenceResult {
        pivots,
        pivot_rows,
        inertia,
        det,
        swap_parity: permutation_parity(&order),
    }
}

fn permutation_parity(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut odd = false;
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut v = s;
        while !seen[v] {
            seen[v] = true;
            v = perm[v];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

/// Exact inertia of `A(g)`.
pub fn inertia(g: &SignedGraph) -> InertiaTriple {
    congruent_diagonalize(&adjacency_matrix(g)).inertia
}

pub fn negative_inertia(g: &SignedGraph) -> usize {
    inertia(g).i_minus
}

pub fn determinant_exact(m: &RationalSymmetricMatrix) -> BigRational {
    congruent_diagonalize(m).det
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rational_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn one() -> BigRational {
    BigRational::one()
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CrosscheckError {
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("eigenvalue {value:e} lies in the ambiguous band [{tol:e}, {upper:e})", upper = tol * 10.0)]
    Ambiguous { value: f64, tol: f64 },
}

pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// Inertia counted from a floating-point symmetric eigensolve. Eigenvalues
/// with `|λ| < tol` count as zero; any `|λ|` in `[tol, 10·tol)` is reported
/// as ambiguous. Independent of the exact path; used to cross-validate it.
pub fn float_crosscheck(g: &SignedGraph, tol: f64) -> Result<InertiaTriple, CrosscheckError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(CrosscheckError::BadTolerance(tol));
    }
    let n = g.order();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for e in g.edges() {
        let s = f64::from(e.sign.value());
        a[(e.u, e.v)] = s;
        a[(e.v, e.u)] = s;
    }
    float_inertia(a, tol)
}

pub fn float_inertia(a: DMatrix<f64>, tol: f64) -> Result<InertiaTriple, CrosscheckError> {
    if a.nrows() == 0 {
        return Ok(InertiaTriple::default());
    }
    let eig = a.symmetric_eigen();
    let mut t = InertiaTriple::default();
    for &l in eig.eigenvalues.iter() {
        let m = l.abs();
        if m < tol {
            t.nullity += 1;
        } else if m < 10.0 * tol {
            return Err(CrosscheckError::Ambiguous { value: l, tol });
        } else if l > 0.0 {
            t.i_plus += 1;
        } else {
            t.i_minus += 1;
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sgraph::Sign::{Neg, Pos};

    fn cycle(n: usize, neg_last: bool) -> SignedGraph {
        SignedGraph::from_edge_list(
            n,
            (0..n).map(|i| {
                let s = if neg_last && i == n - 1 { Neg } else { Pos };
                (i, (i + 1) % n, s)
            }),
        )
        .unwrap()
    }

    fn path(n: usize) -> SignedGraph {
        SignedGraph::from_unsigned(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn adjacency_entries() {
        let p2 = SignedGraph::from_edge_list(2, [(0, 1, Pos)]).unwrap();
        assert_eq!(
            adjacency_matrix(&p2),
            RationalSymmetricMatrix::from_integer_rows(&[vec![0, 1], vec![1, 0]]).unwrap()
        );
        let n2 = SignedGraph::from_edge_list(2, [(0, 1, Neg)]).unwrap();
        assert_eq!(
            adjacency_matrix(&n2),
            RationalSymmetricMatrix::from_integer_rows(&[vec![0, -1], vec![-1, 0]]).unwrap()
        );
        let c4 = adjacency_matrix(&cycle(4, true));
        assert_eq!(*c4.get(3, 0), rational(-1));
        assert_eq!(*c4.get(0, 1), rational(1));
        assert_eq!(*c4.get(0, 2), rational(0));
    }

    #[test]
    fn zero_matrix() {
        let r = congruent_diagonalize(&RationalSymmetricMatrix::zeros(3));
        assert_eq!(r.inertia, InertiaTriple::new(0, 0, 3));
        assert!(r.det.is_zero());
    }

    #[test]
    fn small_graphs() {
        let p2 = SignedGraph::from_edge_list(2, [(0, 1, Pos)]).unwrap();
        let r = congruent_diagonalize(&adjacency_matrix(&p2));
        assert_eq!(r.inertia, InertiaTriple::new(1, 1, 0));
        assert_eq!(r.det, rational(-1));
        assert_eq!(r.pivots, vec![PivotBlock::Pair(rational(1))]);

        // 3x3 expansion of P3: 0·(0-1) - 1·(0-0) + 0 = 0
        assert!(determinant_exact(&adjacency_matrix(&path(3))).is_zero());
        // C4 balanced: eigenvalues 2, 0, 0, -2
        let c4 = congruent_diagonalize(&adjacency_matrix(&cycle(4, false)));
        assert!(c4.det.is_zero());
        assert_eq!(c4.inertia, InertiaTriple::new(1, 1, 2));

        assert_eq!(inertia(&cycle(6, false)), InertiaTriple::new(3, 3, 0));
        assert_eq!(inertia(&cycle(4, true)).i_minus, 2);
        assert_eq!(inertia(&SignedGraph::empty(1)), InertiaTriple::new(0, 0, 1));
    }

    #[test]
    fn diagonal_pivot_rule() {
        // largest |d| first, lowest index on ties
        let m = RationalSymmetricMatrix::from_integer_rows(&[vec![1, 0, 0], vec![0, -3, 0], vec![0, 0, 3]]).unwrap();
        let r = congruent_diagonalize(&m);
        assert_eq!(r.pivot_rows, vec![vec![1], vec![2], vec![0]]);
        assert_eq!(r.inertia, InertiaTriple::new(2, 1, 0));
        assert_eq!(r.det, rational(-9));
        assert_eq!(r.det_from_pivots(), r.det);
    }

    #[test]
    fn crosscheck_small() {
        assert_eq!(float_crosscheck(&path(5), DEFAULT_TOLERANCE).unwrap().i_minus, 2);
        assert_eq!(
            float_crosscheck(&SignedGraph::empty(1), DEFAULT_TOLERANCE).unwrap(),
            InertiaTriple::new(0, 0, 1)
        );
        assert_eq!(
            float_crosscheck(&cycle(6, false), DEFAULT_TOLERANCE).unwrap(),
            inertia(&cycle(6, false))
        );
        assert!(float_crosscheck(&path(2), 0.0).is_err());
        let amb = float_inertia(DMatrix::from_diagonal_element(1, 1, 5e-8), 1e-8);
        assert!(matches!(amb, Err(CrosscheckError::Ambiguous { .. })));
    }

    #[test]
    fn congruence_transform_identity() {
        let m = adjacency_matrix(&cycle(5, true));
        let id: Vec<Vec<BigRational>> = (0..5)
            .map(|i| (0..5).map(|j| rational((i == j) as i64)).collect())
            .collect();
        assert_eq!(m.congruence_transform(&id).unwrap(), m);
    }

    #[test]
    fn rejects_asymmetric() {
        assert!(RationalSymmetricMatrix::from_integer_rows(&[vec![0, 1], vec![0, 0]]).is_err());
        assert!(RationalSymmetricMatrix::from_integer_rows(&[vec![0, 1]]).is_err());
    }
}
