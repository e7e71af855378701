//! Linear subspaces with canonical reduced-echelon bases.
//!
//! A subspace is stored as the unique reduced-row-echelon basis of its row
//! space, so equal subspaces have bit-identical representations and subspace
//! equality is plain structural equality.

use crate::scalar::Scalar;
use crate::sparse::{row_axpy, LinalgError, SparseMatrix, SparseRow};
use num::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSubspace {
    ambient_dim: usize,
    /// Rows form the canonical RREF basis; may have zero rows only if dim 0.
    basis: SparseMatrix,
    pivots: Vec<usize>,
}

impl LinearSubspace {
    /// The zero subspace of `ℚ^n`.
    pub fn zero(ambient_dim: usize) -> Self {
        LinearSubspace {
            ambient_dim,
            basis: SparseMatrix::zero(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    /// The full space `ℚ^n`.
    pub fn full(ambient_dim: usize) -> Self {
        LinearSubspace {
            ambient_dim,
            basis: SparseMatrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Canonicalizes an arbitrary spanning set given as matrix rows.
    pub fn from_spanning_rows(spanning: &SparseMatrix) -> Self {
        let (rows, pivots) = spanning.rref();
        let dim = rows.len();
        LinearSubspace {
            ambient_dim: spanning.cols(),
            basis: SparseMatrix::from_triplets(
                dim,
                spanning.cols(),
                rows.into_iter()
                    .enumerate()
                    .flat_map(|(r, row)| row.into_iter().map(move |(c, v)| (r, c, v))),
            ),
            pivots,
        }
    }

    /// Canonicalizes a spanning set given as matrix columns.
    pub fn from_spanning_cols(spanning: &SparseMatrix) -> Self {
        Self::from_spanning_rows(&spanning.transpose())
    }

    /// Block-diagonal direct sum `⊕ᵢ Vᵢ ⊆ ⊕ᵢ ℚ^{nᵢ}`. Canonical bases compose
    /// block-wise, so no re-elimination is needed.
    pub fn direct_sum(parts: &[&LinearSubspace]) -> LinearSubspace {
        let ambient: usize = parts.iter().map(|p| p.ambient_dim).sum();
        let dim: usize = parts.iter().map(|p| p.dim()).sum();
        let mut triplets = Vec::new();
        let mut pivots = Vec::new();
        let mut row_off = 0;
        let mut col_off = 0;
        for p in parts {
            for (r, c, v) in p.basis.entries() {
                triplets.push((row_off + r, col_off + c, v.clone()));
            }
            pivots.extend(p.pivots.iter().map(|&q| q + col_off));
            row_off += p.dim();
            col_off += p.ambient_dim;
        }
        LinearSubspace {
            ambient_dim: ambient,
            basis: SparseMatrix::from_triplets(dim, ambient, triplets),
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical basis, one subspace vector per row.
    pub fn basis_rows(&self) -> &SparseMatrix {
        &self.basis
    }

    /// Canonical basis as a `ambient_dim × dim` matrix of column vectors —
    /// the inclusion map of the subspace into its ambient space.
    pub fn inclusion(&self) -> SparseMatrix {
        self.basis.transpose()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    fn check_ambient(&self, other: &LinearSubspace) -> Result<(), LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &LinearSubspace) -> Result<LinearSubspace, LinalgError> {
        self.check_ambient(other)?;
        Ok(LinearSubspace::from_spanning_rows(&SparseMatrix::vstack(
            &[&self.basis, &other.basis],
        )))
    }

    /// Exact intersection via annihilators: `V ∩ W = (ann V ∪ ann W)^⊥`.
    pub fn intersection(&self, other: &LinearSubspace) -> Result<LinearSubspace, LinalgError> {
        self.check_ambient(other)?;
        let ann_self = nullspace(&self.basis);
        let ann_other = nullspace(&other.basis);
        Ok(nullspace(&SparseMatrix::vstack(&[
            &ann_self.basis,
            &ann_other.basis,
        ])))
    }

    /// Does `self` contain `other`?
    pub fn contains(&self, other: &LinearSubspace) -> Result<bool, LinalgError> {
        self.check_ambient(other)?;
        Ok((0..other.basis.rows()).all(|r| self.contains_vector(other.basis.row(r))))
    }

    /// Membership test for a single (sparse) ambient vector.
    pub fn contains_vector(&self, vec: &SparseRow) -> bool {
        self.coordinates(vec).is_some()
    }

    /// Re-expresses a contained subspace in this subspace's canonical basis:
    /// the result lives in `ℚ^{dim self}`. `None` when `sub ⊄ self`.
    pub fn express_in_basis(&self, sub: &LinearSubspace) -> Option<LinearSubspace> {
        let mut triplets = Vec::new();
        for i in 0..sub.dim() {
            let coords = self.coordinates(sub.basis_rows().row(i))?;
            for (c, v) in coords {
                triplets.push((i, c, v));
            }
        }
        let spanning = SparseMatrix::from_triplets(sub.dim(), self.dim(), triplets);
        Some(LinearSubspace::from_spanning_rows(&spanning))
    }

    /// Expresses `vec` in the canonical basis, or `None` if it lies outside.
    /// Reading coefficients off the pivot columns makes this elimination-free.
    pub fn coordinates(&self, vec: &SparseRow) -> Option<SparseRow> {
        let mut residual = vec.clone();
        let mut coords: SparseRow = Vec::new();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = residual
                .binary_search_by_key(&p, |e| e.0)
                .ok()
                .map(|k| residual[k].1.clone());
            if let Some(c) = c {
                residual = row_axpy(&residual, self.basis.row(i), &-c.clone());
                if !c.is_zero() {
                    coords.push((i, c));
                }
            }
        }
        residual.is_empty().then_some(coords)
    }
}

/// Exact rank of a sparse matrix (re-exported convenience).
pub fn rank(m: &SparseMatrix) -> usize {
    m.rank()
}

/// Kernel `{v : m·v = 0}` as a canonical subspace; `dim = cols − rank`.
pub fn nullspace(m: &SparseMatrix) -> LinearSubspace {
    let (rows, pivots) = m.rref();
    let is_pivot = {
        let mut flags = vec![false; m.cols()];
        for &p in &pivots {
            flags[p] = true;
        }
        flags
    };
    let mut vectors: Vec<(usize, usize, Scalar)> = Vec::new();
    let mut vec_idx = 0;
    for (free, _) in is_pivot.iter().enumerate().filter(|(_, flag)| !**flag) {
        vectors.push((vec_idx, free, Scalar::one()));
        for (i, &p) in pivots.iter().enumerate() {
            if let Ok(k) = rows[i].binary_search_by_key(&free, |e| e.0) {
                vectors.push((vec_idx, p, -rows[i][k].1.clone()));
            }
        }
        vec_idx += 1;
    }
    let spanning = SparseMatrix::from_triplets(vec_idx, m.cols(), vectors);
    LinearSubspace::from_spanning_rows(&spanning)
}

/// Matrix of `m` restricted to `domain → codomain` in their canonical bases.
///
/// Errors with [`LinalgError::ImageEscapesCodomain`] when some domain basis
/// vector maps outside the codomain; this error doubles as a
/// subcomplex-closure check.
pub fn restrict_operator(
    m: &SparseMatrix,
    domain: &LinearSubspace,
    codomain: &LinearSubspace,
) -> Result<SparseMatrix, LinalgError> {
    if m.cols() != domain.ambient_dim() {
        return Err(LinalgError::DimensionMismatch(format!(
            "operator has {} columns but domain ambient dim is {}",
            m.cols(),
            domain.ambient_dim()
        )));
    }
    if m.rows() != codomain.ambient_dim() {
        return Err(LinalgError::DimensionMismatch(format!(
            "operator has {} rows but codomain ambient dim is {}",
            m.rows(),
            codomain.ambient_dim()
        )));
    }
    let mut triplets = Vec::new();
    for i in 0..domain.dim() {
        let image = m.apply(domain.basis_rows().row(i));
        let coords =
            codomain
                .coordinates(&image)
                .ok_or_else(|| LinalgError::ImageEscapesCodomain {
                    context: format!("image of domain basis vector {i} is outside the codomain"),
                })?;
        for (r, v) in coords {
            triplets.push((r, i, v));
        }
    }
    Ok(SparseMatrix::from_triplets(
        codomain.dim(),
        domain.dim(),
        triplets,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use proptest::prelude::*;

    #[test]
    fn nullspace_of_identity_is_zero() {
        let ns = nullspace(&SparseMatrix::identity(3));
        assert_eq!(ns.dim(), 0);
    }

    #[test]
    fn nullspace_of_zero_matrix_is_full() {
        let ns = nullspace(&SparseMatrix::zero(2, 3));
        assert_eq!(ns.dim(), 3);
        assert_eq!(ns, LinearSubspace::full(3));
    }

    #[test]
    fn nullspace_of_row_matrix() {
        // (1,1) → span{(1,−1)} in canonical form
        let m = SparseMatrix::from_int_rows(vec![vec![1, 1]]);
        let ns = nullspace(&m);
        assert_eq!(ns.dim(), 1);
        assert_eq!(ns.basis_rows().row(0), &vec![(0, int(1)), (1, int(-1))]);
    }

    #[test]
    fn subspace_calculus_trivial_cases() {
        let v = LinearSubspace::from_spanning_rows(&SparseMatrix::from_int_rows(vec![
            vec![1, 0, 2],
            vec![0, 1, 1],
        ]));
        let zero = LinearSubspace::zero(3);
        assert_eq!(v.intersection(&v).unwrap(), v);
        assert_eq!(v.intersection(&zero).unwrap(), zero);
        assert_eq!(v.sum(&zero).unwrap(), v);
        assert!(v.contains(&zero).unwrap());
        assert!(!zero.contains(&v).unwrap());

        let e0 = LinearSubspace::from_spanning_rows(&SparseMatrix::from_int_rows(vec![vec![1, 0]]));
        let e1 = LinearSubspace::from_spanning_rows(&SparseMatrix::from_int_rows(vec![vec![0, 1]]));
        assert_eq!(e0.sum(&e1).unwrap(), LinearSubspace::full(2));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let v = LinearSubspace::full(2);
        let w = LinearSubspace::full(3);
        assert!(matches!(
            v.sum(&w),
            Err(LinalgError::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn restrict_identity_and_zero() {
        let v = LinearSubspace::from_spanning_rows(&SparseMatrix::from_int_rows(vec![
            vec![1, 2, 0],
            vec![0, 0, 1],
        ]));
        let id = SparseMatrix::identity(3);
        assert_eq!(
            restrict_operator(&id, &v, &v).unwrap(),
            SparseMatrix::identity(2)
        );
        let z = SparseMatrix::zero(3, 3);
        assert_eq!(
            restrict_operator(&z, &v, &v).unwrap(),
            SparseMatrix::zero(2, 2)
        );
    }

    #[test]
    fn restrict_shear_between_lines() {
        // m = ((0,1),(0,0)) sends (0,1) ↦ (1,0); domain span{(0,1)}, codomain span{(1,0)}
        let m = SparseMatrix::from_int_rows(vec![vec![0, 1], vec![0, 0]]);
        let dom =
            LinearSubspace::from_spanning_rows(&SparseMatrix::from_int_rows(vec![vec![0, 1]]));
        let cod =
            LinearSubspace::from_spanning_rows(&SparseMatrix::from_int_rows(vec![vec![1, 0]]));
        let r = restrict_operator(&m, &dom, &cod).unwrap();
        assert_eq!(r, SparseMatrix::from_int_rows(vec![vec![1]]));
    }

    #[test]
    fn restrict_detects_escape() {
        let m = SparseMatrix::identity(2);
        let dom =
            LinearSubspace::from_spanning_rows(&SparseMatrix::from_int_rows(vec![vec![1, 1]]));
        let cod =
            LinearSubspace::from_spanning_rows(&SparseMatrix::from_int_rows(vec![vec![1, 0]]));
        assert!(matches!(
            restrict_operator(&m, &dom, &cod),
            Err(LinalgError::ImageEscapesCodomain { .. })
        ));
    }

    fn arb_matrix() -> impl Strategy<Value = SparseMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |vals| {
                SparseMatrix::from_triplets(
                    r,
                    c,
                    vals.into_iter()
                        .enumerate()
                        .map(|(idx, v)| (idx / c, idx % c, int(v))),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix()) {
            prop_assert_eq!(nullspace(&m).dim() + m.rank(), m.cols());
        }

        /// Two different spanning sets of the same space canonicalize to
        /// bit-identical representations.
        #[test]
        fn canonical_form_deterministic(m in arb_matrix()) {
            let v = LinearSubspace::from_spanning_rows(&m);
            // rescale and duplicate rows: same row space
            let doubled = SparseMatrix::vstack(&[&m.scale(&int(-3)), &m]);
            let w = LinearSubspace::from_spanning_rows(&doubled);
            prop_assert_eq!(v, w);
        }

        #[test]
        fn nullspace_vectors_annihilate(m in arb_matrix()) {
            let ns = nullspace(&m);
            for i in 0..ns.dim() {
                prop_assert!(m.apply(ns.basis_rows().row(i)).is_empty());
            }
        }
    }
}
