//! Finite-dimensional unital associative algebras by structure constants.

use crate::report::{CheckOutcome, ValidationReport};
use crate::scalar::{format_scalar, Scalar};
use crate::sparse::{row_axpy, SparseMatrix, SparseRow};
use crate::subspace::LinearSubspace;
use num::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("vector length {got} does not match algebra dimension {dim}")]
    LengthMismatch { dim: usize, got: usize },
    #[error("inconsistent structure data: {0}")]
    Shape(String),
}

/// Unital associative algebra over ℚ given by its multiplication tensor:
/// `e_i · e_j = Σ_k μ[i][j][k] e_k`.
#[derive(Debug, Clone, Eq)]
pub struct StructureConstantAlgebra {
    name: String,
    dim: usize,
    basis_labels: Vec<String>,
    /// `mul[i][j]` is the sparse coordinate vector of `e_i · e_j`.
    mul: Vec<Vec<SparseRow>>,
    /// Sparse coordinates of the unit element.
    unit: SparseRow,
}

/// Equality is structural — basis labels, multiplication tensor, and unit —
/// ignoring the display name.
impl PartialEq for StructureConstantAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.basis_labels == other.basis_labels
            && self.mul == other.mul
            && self.unit == other.unit
    }
}

impl StructureConstantAlgebra {
    pub fn new(
        name: impl Into<String>,
        basis_labels: Vec<String>,
        mul_triples: Vec<(usize, usize, usize, Scalar)>,
        unit: Vec<Scalar>,
    ) -> Result<Self, AlgebraError> {
        let dim = basis_labels.len();
        if unit.len() != dim {
            return Err(AlgebraError::LengthMismatch {
                dim,
                got: unit.len(),
            });
        }
        let mut mul = vec![vec![Vec::new(); dim]; dim];
        for (i, j, k, c) in mul_triples {
            if i >= dim || j >= dim || k >= dim {
                return Err(AlgebraError::Shape(format!(
                    "mul triple ({i},{j},{k}) out of range for dimension {dim}"
                )));
            }
            mul[i][j].push((k, c));
        }
        for row in mul.iter_mut().flatten() {
            row.sort_by_key(|e| e.0);
            let mut out: SparseRow = Vec::with_capacity(row.len());
            for (k, c) in row.drain(..) {
                match out.last_mut() {
                    Some((lk, lc)) if *lk == k => *lc += c,
                    _ => out.push((k, c)),
                }
            }
            out.retain(|(_, c)| !c.is_zero());
            *row = out;
        }
        let unit = dense_to_sparse(&unit);
        Ok(StructureConstantAlgebra {
            name: name.into(),
            dim,
            basis_labels,
            mul,
            unit,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn unit(&self) -> &SparseRow {
        &self.unit
    }

    /// Sparse coordinates of `e_i · e_j`.
    pub fn product_basis(&self, i: usize, j: usize) -> &SparseRow {
        &self.mul[i][j]
    }

    /// Bilinear product of two sparse coordinate vectors.
    pub fn mul_sparse(&self, u: &SparseRow, v: &SparseRow) -> SparseRow {
        let mut acc: SparseRow = Vec::new();
        for (i, ci) in u {
            for (j, cj) in v {
                let c = ci * cj;
                acc = row_axpy(&acc, &self.mul[*i][*j], &c);
            }
        }
        acc
    }

    /// Bilinear product of dense coordinate vectors, with length checking.
    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>, AlgebraError> {
        for w in [u, v] {
            if w.len() != self.dim {
                return Err(AlgebraError::LengthMismatch {
                    dim: self.dim,
                    got: w.len(),
                });
            }
        }
        let sparse = self.mul_sparse(&dense_to_sparse(u), &dense_to_sparse(v));
        Ok(sparse_to_dense(&sparse, self.dim))
    }

    /// Every violated associativity quadruple `(i,j,k,l)` and unit failure.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new(format!("algebra {}", self.name));
        let mut assoc = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let left = self.mul_sparse(&self.mul[i][j], &basis_vec(k));
                    let right = self.mul_sparse(&basis_vec(i), &self.mul[j][k]);
                    let diff = row_axpy(&left, &right, &-Scalar::one());
                    for (l, c) in diff {
                        assoc.push(format!(
                            "(e{i}·e{j})·e{k} − e{i}·(e{j}·e{k}) has coefficient {} at e{l}",
                            format_scalar(&c)
                        ));
                    }
                }
            }
        }
        report.push(CheckOutcome::new("associativity", assoc));
        let mut unit_viol = Vec::new();
        for j in 0..self.dim {
            let ej = basis_vec(j);
            let left = self.mul_sparse(&self.unit, &ej);
            let right = self.mul_sparse(&ej, &self.unit);
            if left != ej {
                unit_viol.push(format!("1·e{j} ≠ e{j}"));
            }
            if right != ej {
                unit_viol.push(format!("e{j}·1 ≠ e{j}"));
            }
        }
        report.push(CheckOutcome::new("unit axiom", unit_viol));
        report
    }

    /// Commutator `[u, v] = uv − vu` as a sparse vector.
    pub fn commutator(&self, u: &SparseRow, v: &SparseRow) -> SparseRow {
        let uv = self.mul_sparse(u, v);
        let vu = self.mul_sparse(v, u);
        row_axpy(&uv, &vu, &-Scalar::one())
    }
}

/// `e_k` as a sparse vector.
pub fn basis_vec(k: usize) -> SparseRow {
    vec![(k, Scalar::one())]
}

pub fn dense_to_sparse(v: &[Scalar]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseRow, dim: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); dim];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// A unital algebra embedding `small ↪ big` given by an explicit matrix
/// (`dim big × dim small`), not necessarily basis-aligned.
#[derive(Debug, Clone)]
pub struct SubalgebraInclusion {
    pub small: StructureConstantAlgebra,
    pub big: StructureConstantAlgebra,
    pub embed: SparseMatrix,
}

impl SubalgebraInclusion {
    pub fn new(
        small: StructureConstantAlgebra,
        big: StructureConstantAlgebra,
        embed: SparseMatrix,
    ) -> Result<Self, AlgebraError> {
        if embed.rows() != big.dim() || embed.cols() != small.dim() {
            return Err(AlgebraError::Shape(format!(
                "embedding must be {}×{}, got {}×{}",
                big.dim(),
                small.dim(),
                embed.rows(),
                embed.cols()
            )));
        }
        Ok(SubalgebraInclusion { small, big, embed })
    }

    /// Builds an inclusion from an embedding matrix alone, deriving the small
    /// algebra's structure constants by solving `embed·μ(x,y) = embed(x)·embed(y)`.
    /// Errors when the embedding is not injective, the image is not closed
    /// under multiplication, or the unit is not in the image.
    pub fn from_embedding(
        big: &StructureConstantAlgebra,
        embed: SparseMatrix,
        name: impl Into<String>,
        labels: Vec<String>,
    ) -> Result<Self, AlgebraError> {
        let small_dim = labels.len();
        if embed.rows() != big.dim() || embed.cols() != small_dim {
            return Err(AlgebraError::Shape(format!(
                "embedding must be {}×{small_dim}, got {}×{}",
                big.dim(),
                embed.rows(),
                embed.cols()
            )));
        }
        if embed.rank() != small_dim {
            return Err(AlgebraError::Shape(
                "embedding is not injective".to_string(),
            ));
        }
        let mut products = Vec::new();
        for x in 0..small_dim {
            for y in 0..small_dim {
                products
                    .push(big.mul_sparse(&embed.apply(&basis_vec(x)), &embed.apply(&basis_vec(y))));
            }
        }
        let rhs = SparseMatrix::from_triplets(
            big.dim(),
            products.len() + 1,
            products
                .iter()
                .enumerate()
                .flat_map(|(col, v)| v.iter().map(move |(r, c)| (*r, col, c.clone())))
                .chain(
                    big.unit()
                        .iter()
                        .map(|(r, c)| (*r, products.len(), c.clone())),
                ),
        );
        let solved = embed.solve_columns(&rhs).ok_or_else(|| {
            AlgebraError::Shape(
                "image is not closed under multiplication (or the unit is missing)".to_string(),
            )
        })?;
        let mut mul_triples = Vec::new();
        for x in 0..small_dim {
            for y in 0..small_dim {
                let col = x * small_dim + y;
                for k in 0..small_dim {
                    let v = solved.get(k, col);
                    if !v.is_zero() {
                        mul_triples.push((x, y, k, v));
                    }
                }
            }
        }
        let unit: Vec<Scalar> = (0..small_dim)
            .map(|k| solved.get(k, products.len()))
            .collect();
        let small = StructureConstantAlgebra::new(name, labels, mul_triples, unit)?;
        Ok(SubalgebraInclusion {
            small,
            big: big.clone(),
            embed,
        })
    }

    /// Identity inclusion `A ⊆ A`.
    pub fn identity(alg: &StructureConstantAlgebra) -> Self {
        SubalgebraInclusion {
            small: alg.clone(),
            big: alg.clone(),
            embed: SparseMatrix::identity(alg.dim()),
        }
    }

    /// The span of the unit, `k·1 ⊆ A`, as an inclusion of the ground field.
    pub fn unit_span(alg: &StructureConstantAlgebra) -> Self {
        let small = ground_field();
        let embed = SparseMatrix::from_triplets(
            alg.dim(),
            1,
            alg.unit().iter().map(|(i, c)| (*i, 0, c.clone())),
        );
        SubalgebraInclusion {
            small,
            big: alg.clone(),
            embed,
        }
    }

    /// Image of a small-algebra coordinate vector inside the big algebra.
    pub fn embed_vec(&self, v: &SparseRow) -> SparseRow {
        self.embed.apply(v)
    }

    /// Image subspace of the embedding inside the big algebra.
    pub fn image(&self) -> LinearSubspace {
        LinearSubspace::from_spanning_cols(&self.embed)
    }

    /// Injectivity, unitality, and multiplicativity on all basis pairs.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new(format!(
            "inclusion {} ⊆ {}",
            self.small.name(),
            self.big.name()
        ));
        let inj = self.embed.rank() == self.small.dim();
        report.push(CheckOutcome::new(
            "injectivity",
            if inj {
                Vec::new()
            } else {
                vec![format!(
                    "embedding has rank {} < {}",
                    self.embed.rank(),
                    self.small.dim()
                )]
            },
        ));
        let unit_image = self.embed_vec(self.small.unit());
        report.push(CheckOutcome::new(
            "unitality",
            if unit_image == *self.big.unit() {
                Vec::new()
            } else {
                vec!["embed(1_small) ≠ 1_big".to_string()]
            },
        ));
        let mut mult = Vec::new();
        for x in 0..self.small.dim() {
            for y in 0..self.small.dim() {
                let via_small = self.embed_vec(self.small.product_basis(x, y));
                let via_big = self.big.mul_sparse(
                    &self.embed_vec(&basis_vec(x)),
                    &self.embed_vec(&basis_vec(y)),
                );
                if via_small != via_big {
                    mult.push(format!("embed(e{x}·e{y}) ≠ embed(e{x})·embed(e{y})"));
                }
            }
        }
        report.push(CheckOutcome::new("multiplicativity", mult));
        report
    }
}

/// The ground field ℚ as a one-dimensional algebra.
pub fn ground_field() -> StructureConstantAlgebra {
    StructureConstantAlgebra::new(
        "ground-field",
        vec!["1".to_string()],
        vec![(0, 0, 0, Scalar::one())],
        vec![Scalar::one()],
    )
    .expect("ground field is well-formed")
}

/// Dual numbers ℚ[x]/(x²) with basis {1, x}.
pub fn dual_numbers() -> StructureConstantAlgebra {
    let one = Scalar::one();
    StructureConstantAlgebra::new(
        "dual-numbers",
        vec!["1".to_string(), "x".to_string()],
        vec![
            (0, 0, 0, one.clone()),
            (0, 1, 1, one.clone()),
            (1, 0, 1, one.clone()),
        ],
        vec![one, Scalar::zero()],
    )
    .expect("dual numbers are well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::subspace::LinearSubspace;
    use proptest::prelude::*;

    #[test]
    fn ground_field_validates() {
        assert!(ground_field().validate().passed());
    }

    #[test]
    fn dual_numbers_validate() {
        assert!(dual_numbers().validate().passed());
    }

    #[test]
    fn bad_unit_reports_failure() {
        // dual numbers with the unit vector set to x
        let a = StructureConstantAlgebra::new(
            "bad-unit",
            vec!["1".into(), "x".into()],
            vec![(0, 0, 0, int(1)), (0, 1, 1, int(1)), (1, 0, 1, int(1))],
            vec![int(0), int(1)],
        )
        .unwrap();
        let report = a.validate();
        assert!(!report.passed());
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "unit axiom" && !c.passed));
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "associativity" && c.passed));
    }

    #[test]
    fn multiply_examples() {
        let a = dual_numbers();
        // 1·v = v
        let v = vec![int(3), int(-2)];
        assert_eq!(a.multiply(&[int(1), int(0)], &v).unwrap(), v);
        // x·x = 0
        let x = vec![int(0), int(1)];
        assert_eq!(a.multiply(&x, &x).unwrap(), vec![int(0), int(0)]);
        // (1+x)(1−x) = 1
        let p = vec![int(1), int(1)];
        let q = vec![int(1), int(-1)];
        assert_eq!(a.multiply(&p, &q).unwrap(), vec![int(1), int(0)]);
    }

    #[test]
    fn multiply_length_mismatch() {
        let a = dual_numbers();
        assert!(matches!(
            a.multiply(&[int(1)], &[int(1), int(0)]),
            Err(AlgebraError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn identity_inclusion_validates() {
        let a = dual_numbers();
        assert!(SubalgebraInclusion::identity(&a).validate().passed());
    }

    #[test]
    fn unit_span_inclusion_validates() {
        let a = dual_numbers();
        let inc = SubalgebraInclusion::unit_span(&a);
        assert!(inc.validate().passed());
        assert_eq!(inc.image().dim(), 1);
    }

    #[test]
    fn non_multiplicative_embedding_fails() {
        // g ↦ x with g² = 1 but x² = 0
        let z2 = StructureConstantAlgebra::new(
            "z2",
            vec!["1".into(), "g".into()],
            vec![
                (0, 0, 0, int(1)),
                (0, 1, 1, int(1)),
                (1, 0, 1, int(1)),
                (1, 1, 0, int(1)),
            ],
            vec![int(1), int(0)],
        )
        .unwrap();
        let inc = SubalgebraInclusion::new(z2, dual_numbers(), SparseMatrix::identity(2)).unwrap();
        let report = inc.validate();
        assert!(!report.passed());
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "multiplicativity" && !c.passed));
    }

    #[test]
    fn image_closed_under_multiplication_for_valid_inclusion() {
        let a = dual_numbers();
        let inc = SubalgebraInclusion::unit_span(&a);
        let image = inc.image();
        for x in 0..inc.small.dim() {
            for y in 0..inc.small.dim() {
                let prod =
                    a.mul_sparse(&inc.embed_vec(&basis_vec(x)), &inc.embed_vec(&basis_vec(y)));
                assert!(image.contains_vector(&prod));
            }
        }
        let _ = LinearSubspace::full(2); // silence unused import in cfg(test)
    }

    proptest! {
        /// multiply is bilinear in the first argument.
        #[test]
        fn multiply_bilinear(u in proptest::collection::vec(-3i64..4, 2),
                             u2 in proptest::collection::vec(-3i64..4, 2),
                             v in proptest::collection::vec(-3i64..4, 2)) {
            let a = dual_numbers();
            let iv = |w: &[i64]| w.iter().map(|&x| int(x)).collect::<Vec<_>>();
            let (u, u2, v) = (iv(&u), iv(&u2), iv(&v));
            let sum: Vec<_> = u.iter().zip(&u2).map(|(a, b)| a + b).collect();
            let lhs = a.multiply(&sum, &v).unwrap();
            let r1 = a.multiply(&u, &v).unwrap();
            let r2 = a.multiply(&u2, &v).unwrap();
            let rhs: Vec<_> = r1.iter().zip(&r2).map(|(a, b)| a + b).collect();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
