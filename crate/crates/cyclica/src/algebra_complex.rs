//! The standard cocyclic module of a unital algebra and its cyclic,
//! normalized, and constant subcomplexes.
//!
//! A degree-n cochain over an algebra of dimension d is a coordinate vector
//! of length d^{n+1}, indexed lexicographically by basis tuples
//! (i₀,…,iₙ) with i₀ major. Operators act by structure-constant contraction:
//! faces multiply adjacent arguments (with a wrap-around last face),
//! degeneracies insert the unit, the cyclic operator rotates arguments.

use crate::algebra::{StructureConstantAlgebra, SubalgebraInclusion};
use crate::cocyclic::{CocyclicError, MatrixCocyclicModule, TotalComplex};
use crate::report::HcReport;
use crate::scalar::Scalar;
use crate::sparse::{SparseMatrix, SparseRow};
use crate::subspace::{nullspace, restrict_operator, LinearSubspace};
use num::One;
use rayon::prelude::*;

/// Decodes a row index into the basis tuple it represents (i₀ major).
fn decode_tuple(mut index: usize, dim: usize, len: usize, out: &mut [usize]) {
    for slot in (0..len).rev() {
        out[slot] = index % dim;
        index /= dim;
    }
    debug_assert_eq!(index, 0);
    let _ = &out[..len];
}

/// Encodes a basis tuple lexicographically (i₀ major).
fn encode_tuple(tuple: &[usize], dim: usize) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * dim + i)
}

/// The standard cocyclic module of `algebra`, with operators built for domain
/// degrees `0..=n_max`.
#[derive(Debug, Clone)]
pub struct AlgebraCochainComplex {
    algebra: StructureConstantAlgebra,
    module: MatrixCocyclicModule,
    n_max: usize,
}

impl AlgebraCochainComplex {
    pub fn build(algebra: &StructureConstantAlgebra, n_max: usize) -> Self {
        let d = algebra.dim();
        let dims: Vec<usize> = (0..=n_max + 1).map(|n| d.pow((n + 1) as u32)).collect();
        let faces: Vec<Vec<SparseMatrix>> = (0..=n_max)
            .map(|n| (0..=n + 1).map(|i| face_matrix(algebra, n, i)).collect())
            .collect();
        let degens: Vec<Vec<SparseMatrix>> = (0..=n_max)
            .map(|n| (0..n).map(|j| degeneracy_matrix(algebra, n, j)).collect())
            .collect();
        let cyclic: Vec<SparseMatrix> = (0..=n_max).map(|n| cyclic_matrix(algebra, n)).collect();
        let module = MatrixCocyclicModule::new(
            format!("C*({})", algebra.name()),
            dims,
            faces,
            degens,
            cyclic,
            None,
        );
        AlgebraCochainComplex {
            algebra: algebra.clone(),
            module,
            n_max,
        }
    }

    pub fn algebra(&self) -> &StructureConstantAlgebra {
        &self.algebra
    }

    pub fn module(&self) -> &MatrixCocyclicModule {
        &self.module
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn space_dim(&self, n: usize) -> usize {
        self.module.space_dim(n)
    }

    /// Hochschild coboundary from the two-term direct formula, assembled
    /// independently of the face matrices (dual-route check).
    pub fn direct_b(&self, n: usize) -> SparseMatrix {
        let d = self.algebra.dim();
        let rows_out = d.pow((n + 2) as u32);
        let cols = d.pow((n + 1) as u32);
        let alg = &self.algebra;
        let rows: Vec<SparseRow> = (0..rows_out)
            .into_par_iter()
            .map(|r| {
                let mut tau = vec![0usize; n + 2];
                decode_tuple(r, d, n + 2, &mut tau);
                let mut entries: SparseRow = Vec::new();
                let mut sigma = vec![0usize; n + 1];
                for j in 0..=n {
                    let sign_neg = j % 2 == 1;
                    sigma[..j].copy_from_slice(&tau[..j]);
                    sigma[j + 1..].copy_from_slice(&tau[j + 2..]);
                    for (k, c) in alg.product_basis(tau[j], tau[j + 1]) {
                        sigma[j] = *k;
                        let v = if sign_neg { -c.clone() } else { c.clone() };
                        entries.push((encode_tuple(&sigma, d), v));
                    }
                }
                // wrap term (−1)^{n+1} φ(a^{n+1}a⁰, a¹,…,aⁿ)
                let wrap_neg = (n + 1) % 2 == 1;
                sigma[1..].copy_from_slice(&tau[1..=n]);
                for (k, c) in alg.product_basis(tau[n + 1], tau[0]) {
                    sigma[0] = *k;
                    let v = if wrap_neg { -c.clone() } else { c.clone() };
                    entries.push((encode_tuple(&sigma, d), v));
                }
                entries
            })
            .collect();
        SparseMatrix::from_rows(cols, rows)
    }

    /// Connes boundary from the direct two-term formula `B = A·B₀` with
    /// `B₀φ = φ(1,·) + (−1)ⁿ φ(·,1)` and `Aφ(a⁰,…,aⁿ) = Σ (−1)^{nj} φ(aʲ,…)`,
    /// both assembled independently of the cocyclic operator matrices.
    pub fn direct_big_b(&self, n: usize) -> SparseMatrix {
        let d = self.algebra.dim();
        let rows_out = d.pow((n + 1) as u32);
        let cols_in = d.pow((n + 2) as u32);
        let unit = self.algebra.unit().clone();
        let b0_rows: Vec<SparseRow> = (0..rows_out)
            .into_par_iter()
            .map(|r| {
                let mut tau = vec![0usize; n + 1];
                decode_tuple(r, d, n + 1, &mut tau);
                let mut entries: SparseRow = Vec::new();
                let mut with_front = vec![0usize; n + 2];
                with_front[1..].copy_from_slice(&tau);
                let mut with_back = vec![0usize; n + 2];
                with_back[..=n].copy_from_slice(&tau);
                for (k, c) in &unit {
                    with_front[0] = *k;
                    entries.push((encode_tuple(&with_front, d), c.clone()));
                    with_back[n + 1] = *k;
                    let v = if n.is_multiple_of(2) {
                        c.clone()
                    } else {
                        -c.clone()
                    };
                    entries.push((encode_tuple(&with_back, d), v));
                }
                entries
            })
            .collect();
        let b0 = SparseMatrix::from_rows(cols_in, b0_rows);
        let a_rows: Vec<SparseRow> = (0..rows_out)
            .into_par_iter()
            .map(|r| {
                let mut tau = vec![0usize; n + 1];
                decode_tuple(r, d, n + 1, &mut tau);
                let mut entries: SparseRow = Vec::new();
                let mut rotated = vec![0usize; n + 1];
                for j in 0..=n {
                    for (slot, value) in rotated.iter_mut().enumerate() {
                        *value = tau[(j + slot) % (n + 1)];
                    }
                    let v = if (n * j).is_multiple_of(2) {
                        Scalar::one()
                    } else {
                        -Scalar::one()
                    };
                    entries.push((encode_tuple(&rotated, d), v));
                }
                entries
            })
            .collect();
        let a = SparseMatrix::from_rows(rows_out, a_rows);
        a.matmul(&b0)
    }

    /// `ker(id − (−1)ⁿ tₙ)`: the cyclic cochains in degree `n`.
    pub fn cyclic_subspace(&self, n: usize) -> LinearSubspace {
        let t = self.module.cyclic(n);
        let sign = if n.is_multiple_of(2) {
            Scalar::one()
        } else {
            -Scalar::one()
        };
        let condition = SparseMatrix::identity(self.space_dim(n)).sub(&t.scale(&sign));
        nullspace(&condition)
    }

    /// `∩ⱼ ker sₙ^j`: cochains vanishing when a unit occupies positions 1..n.
    pub fn normalized_subspace(&self, n: usize) -> LinearSubspace {
        if n == 0 {
            return LinearSubspace::full(self.space_dim(0));
        }
        let stacked: Vec<&SparseMatrix> = (0..n).map(|j| self.module.degeneracy(n, j)).collect();
        nullspace(&SparseMatrix::vstack(&stacked))
    }

    /// Evaluation rows for all degree-`m` tuples carrying an image basis
    /// vector of `inc` in some position `j ≥ 1`.
    fn flagged_evaluation_rows(&self, inc: &SubalgebraInclusion, m: usize) -> SparseMatrix {
        flagged_evaluation_rows(&self.algebra, inc, m)
    }

    /// 𝒞-constant cochains of degree `n`: φ and bφ vanish whenever an
    /// argument in position ≥ 1 lies in the image of the subalgebra.
    pub fn constant_subspace(&self, inc: &SubalgebraInclusion, n: usize) -> LinearSubspace {
        assert!(
            n <= self.n_max,
            "constant subspace at degree {n} needs b at degree {n}"
        );
        let eval_next = self.flagged_evaluation_rows(inc, n + 1);
        let via_b = eval_next.matmul(&self.module.derived_b(n));
        if n == 0 {
            nullspace(&via_b)
        } else {
            let eval_here = self.flagged_evaluation_rows(inc, n);
            nullspace(&SparseMatrix::vstack(&[&eval_here, &via_b]))
        }
    }

    /// Constant subspaces for all degrees `0..=top`.
    pub fn constant_subspaces(&self, inc: &SubalgebraInclusion, top: usize) -> Vec<LinearSubspace> {
        (0..=top).map(|q| self.constant_subspace(inc, q)).collect()
    }

    pub fn total_complex(&self, max_degree: usize) -> Result<TotalComplex, CocyclicError> {
        self.module.build_total_complex(max_degree)
    }
}

/// Flagged evaluation rows for an arbitrary algebra: one row per
/// `(position j ≥ 1, subalgebra basis vector, remaining tuple)`.
pub(crate) fn flagged_evaluation_rows(
    algebra: &StructureConstantAlgebra,
    inc: &SubalgebraInclusion,
    m: usize,
) -> SparseMatrix {
    let d = algebra.dim();
    let cols = d.pow((m + 1) as u32);
    let rest_count = d.pow(m as u32);
    let small_dim = inc.small.dim();
    let embed_cols: Vec<SparseRow> = (0..small_dim)
        .map(|c| inc.embed_vec(&crate::algebra::basis_vec(c)))
        .collect();
    let mut rows: Vec<SparseRow> = Vec::with_capacity(m * small_dim * rest_count);
    let mut rest = vec![0usize; m];
    let mut tuple = vec![0usize; m + 1];
    for j in 1..=m {
        for embedded in &embed_cols {
            for r in 0..rest_count {
                decode_tuple(r, d, m, &mut rest);
                tuple[..j].copy_from_slice(&rest[..j]);
                tuple[j + 1..].copy_from_slice(&rest[j..]);
                let mut entries: SparseRow = Vec::with_capacity(embedded.len());
                for (k, c) in embedded {
                    tuple[j] = *k;
                    entries.push((encode_tuple(&tuple, d), c.clone()));
                }
                rows.push(entries);
            }
        }
    }
    SparseMatrix::from_rows(cols, rows)
}

fn face_matrix(algebra: &StructureConstantAlgebra, n: usize, i: usize) -> SparseMatrix {
    let d = algebra.dim();
    let rows_out = d.pow((n + 2) as u32);
    let cols = d.pow((n + 1) as u32);
    let rows: Vec<SparseRow> = (0..rows_out)
        .into_par_iter()
        .map(|r| {
            let mut tau = vec![0usize; n + 2];
            decode_tuple(r, d, n + 2, &mut tau);
            let mut sigma = vec![0usize; n + 1];
            let mut entries: SparseRow = Vec::new();
            if i <= n {
                sigma[..i].copy_from_slice(&tau[..i]);
                sigma[i + 1..].copy_from_slice(&tau[i + 2..]);
                for (k, c) in algebra.product_basis(tau[i], tau[i + 1]) {
                    sigma[i] = *k;
                    entries.push((encode_tuple(&sigma, d), c.clone()));
                }
            } else {
                sigma[1..].copy_from_slice(&tau[1..=n]);
                for (k, c) in algebra.product_basis(tau[n + 1], tau[0]) {
                    sigma[0] = *k;
                    entries.push((encode_tuple(&sigma, d), c.clone()));
                }
            }
            entries
        })
        .collect();
    SparseMatrix::from_rows(cols, rows)
}

fn degeneracy_matrix(algebra: &StructureConstantAlgebra, n: usize, j: usize) -> SparseMatrix {
    let d = algebra.dim();
    let rows_out = d.pow(n as u32);
    let cols = d.pow((n + 1) as u32);
    let unit = algebra.unit().clone();
    let rows: Vec<SparseRow> = (0..rows_out)
        .into_par_iter()
        .map(|r| {
            let mut tau = vec![0usize; n];
            decode_tuple(r, d, n, &mut tau);
            let mut sigma = vec![0usize; n + 1];
            sigma[..=j].copy_from_slice(&tau[..=j]);
            sigma[j + 2..].copy_from_slice(&tau[j + 1..]);
            let mut entries: SparseRow = Vec::with_capacity(unit.len());
            for (k, c) in &unit {
                sigma[j + 1] = *k;
                entries.push((encode_tuple(&sigma, d), c.clone()));
            }
            entries
        })
        .collect();
    SparseMatrix::from_rows(cols, rows)
}

fn cyclic_matrix(algebra: &StructureConstantAlgebra, n: usize) -> SparseMatrix {
    let d = algebra.dim();
    let size = d.pow((n + 1) as u32);
    let rows: Vec<SparseRow> = (0..size)
        .into_par_iter()
        .map(|r| {
            let mut tau = vec![0usize; n + 1];
            decode_tuple(r, d, n + 1, &mut tau);
            let mut sigma = vec![0usize; n + 1];
            sigma[0] = tau[n];
            sigma[1..].copy_from_slice(&tau[..n]);
            vec![(encode_tuple(&sigma, d), Scalar::one())]
        })
        .collect();
    SparseMatrix::from_rows(size, rows)
}

/// Plain cyclic cohomology of `d` via the (b,B) total complex; reports
/// degrees `0..max_degree−1`.
pub fn hc_plain(
    algebra: &StructureConstantAlgebra,
    max_degree: usize,
) -> Result<HcReport, CocyclicError> {
    let complex = AlgebraCochainComplex::build(algebra, max_degree);
    Ok(complex.total_complex(max_degree)?.cohomology_dims())
}

/// 𝒞-constant cyclic cohomology: the (b,B) total complex restricted to the
/// constant subcomplex.
pub fn hc_constant(
    algebra: &StructureConstantAlgebra,
    inc: &SubalgebraInclusion,
    max_degree: usize,
) -> Result<HcReport, CocyclicError> {
    let complex = AlgebraCochainComplex::build(algebra, max_degree + 1);
    let sub = complex.constant_subspaces(inc, max_degree + 1);
    let total = complex.total_complex(max_degree)?;
    Ok(total.restrict_to_subcomplex(&sub)?.cohomology_dims())
}

/// λ-complex oracle: cohomology of (cyclic cochains, b). Agrees with
/// [`hc_plain`] in characteristic zero; used as an independent cross-check.
pub fn hc_lambda(
    algebra: &StructureConstantAlgebra,
    max_degree: usize,
) -> Result<HcReport, CocyclicError> {
    let complex = AlgebraCochainComplex::build(algebra, max_degree);
    let sub: Vec<LinearSubspace> = (0..=max_degree)
        .map(|n| complex.cyclic_subspace(n))
        .collect();
    let mut restricted_b = Vec::new();
    for n in 0..max_degree {
        restricted_b.push(restrict_operator(
            &complex.module.derived_b(n),
            &sub[n],
            &sub[n + 1],
        )?);
    }
    let mut rows = Vec::new();
    let mut prev_rank = 0usize;
    for n in 0..max_degree {
        let rank = restricted_b[n].rank();
        let kernel_dim = sub[n].dim() - rank;
        rows.push(crate::report::HcRow {
            degree: n,
            kernel_dim,
            image_rank: prev_rank,
            hc_dim: kernel_dim - prev_rank,
            truncation_stable: true,
        });
        prev_rank = rank;
    }
    Ok(HcReport { rows })
}
