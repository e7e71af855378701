//! Equivariant cochain spaces `Cⁿ_H(A) ⊆ Hom(H ⊗ A^{⊗(n+1)}, ℚ)` and their
//! cocyclic structure.
//!
//! Coordinates are indexed `(h; i₀,…,iₙ)` with the H-index major. All
//! operators are built on the full ambient coordinate space and then
//! restricted to the equivariant carrier, so closure is *tested* rather than
//! assumed; the cocyclic identities (notably `t^{n+1} = id`) hold only on the
//! carrier.
//!
//! The equivariance constraint distributes the iterated coproduct legs of `g`
//! to the arguments in their written order — `a^j` receives leg `j+1`, the
//! adjoint slot the last two legs — the unique reading equivalent to its
//! antipode-flipped form (the two-sided condition of the equivalence lemma),
//! which is pinned down by the unambiguous leg numbering of that second form.

use crate::algebra::SubalgebraInclusion;
use crate::cocyclic::{CocyclicError, MatrixCocyclicModule};
use crate::hopf::{HopfError, ModuleAlgebraAction};
use crate::report::HcReport;
use crate::scalar::Scalar;
use crate::sparse::{SparseMatrix, SparseRow};
use crate::subspace::{nullspace, LinearSubspace};
use num::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum EquivariantError {
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Cocyclic(#[from] CocyclicError),
    #[error("normalized subspace escapes the carrier (internal invariant)")]
    NormalizationEscapesCarrier,
}

/// Expands a product of sparse factors, invoking `visit(choice, coeff)` for
/// every combination of one entry per factor.
pub(crate) fn expand_product(factors: &[&SparseRow], visit: &mut impl FnMut(&[usize], &Scalar)) {
    fn rec(
        factors: &[&SparseRow],
        depth: usize,
        choice: &mut Vec<usize>,
        coeff: &Scalar,
        visit: &mut impl FnMut(&[usize], &Scalar),
    ) {
        if depth == factors.len() {
            visit(choice, coeff);
            return;
        }
        for (idx, c) in factors[depth] {
            choice.push(*idx);
            let next = coeff * c;
            if !next.is_zero() {
                rec(factors, depth + 1, choice, &next, visit);
            }
            choice.pop();
        }
    }
    rec(
        factors,
        0,
        &mut Vec::with_capacity(factors.len()),
        &Scalar::one(),
        visit,
    );
}

/// The equivariant complex of a module-algebra action: ambient cocyclic
/// operators plus the carrier of equivariant cochains and its restriction.
#[derive(Debug, Clone)]
pub struct EquivariantComplex {
    action: ModuleAlgebraAction,
    ambient: MatrixCocyclicModule,
    restricted: MatrixCocyclicModule,
}

impl EquivariantComplex {
    /// Builds all ambient operators through domain degree `n_max`, computes
    /// the carrier per degree, and verifies carrier closure by restriction.
    pub fn build(action: &ModuleAlgebraAction, n_max: usize) -> Result<Self, EquivariantError> {
        let (dh, da) = (action.hopf().dim(), action.alg().dim());
        let dims: Vec<usize> = (0..=n_max + 1)
            .map(|n| dh * da.pow((n + 1) as u32))
            .collect();
        let faces: Vec<Vec<SparseMatrix>> = (0..=n_max)
            .map(|n| (0..=n + 1).map(|i| face_matrix(action, n, i)).collect())
            .collect();
        let degens: Vec<Vec<SparseMatrix>> = (0..=n_max)
            .map(|n| (0..n).map(|j| degeneracy_matrix(action, n, j)).collect())
            .collect();
        let cyclic: Vec<SparseMatrix> = (0..=n_max).map(|n| cyclic_matrix(action, n)).collect();
        let carrier: Vec<LinearSubspace> = (0..=n_max + 1)
            .map(|n| equivariant_subspace(action, n))
            .collect();
        let ambient = MatrixCocyclicModule::new(
            format!("C*_H({})", action.name()),
            dims,
            faces,
            degens,
            cyclic,
            Some(carrier.clone()),
        );
        // closure of the carrier under every operator is a theorem; verify it
        let restricted = ambient.restrict_to_subcomplex(&carrier)?;
        Ok(EquivariantComplex {
            action: action.clone(),
            ambient,
            restricted,
        })
    }

    pub fn action(&self) -> &ModuleAlgebraAction {
        &self.action
    }

    /// Ambient operators with the carrier attached.
    pub fn ambient(&self) -> &MatrixCocyclicModule {
        &self.ambient
    }

    /// The honest cocyclic module on carrier coordinates.
    pub fn restricted(&self) -> &MatrixCocyclicModule {
        &self.restricted
    }

    pub fn carrier(&self, n: usize) -> &LinearSubspace {
        &self
            .ambient
            .carrier()
            .expect("equivariant complex always has a carrier")[n]
    }

    pub fn ambient_dim(&self, n: usize) -> usize {
        self.ambient.space_dim(n)
    }

    /// Carrier cochains killed by every degeneracy (ambient coordinates).
    pub fn normalized_subspace(&self, n: usize) -> LinearSubspace {
        let mut parts: Vec<SparseMatrix> = vec![equivariance_rows(&self.action, n)];
        for j in 0..n {
            parts.push(self.ambient.degeneracy(n, j).clone());
        }
        let refs: Vec<&SparseMatrix> = parts.iter().collect();
        nullspace(&SparseMatrix::vstack(&refs))
    }

    /// B-constant equivariant cochains for an action-stable `B ⊆ A`
    /// (ambient coordinates): carrier ∩ {φ, bφ vanish when some aʲ ∈ B, j ≥ 1}.
    pub fn bconstant_subspace(
        &self,
        inc: &SubalgebraInclusion,
        n: usize,
    ) -> Result<LinearSubspace, EquivariantError> {
        // stability gate: ρ(h)(im B) ⊆ im B
        self.action.restrict_to(inc)?;
        let eval_next = flagged_rows(&self.action, inc, n + 1);
        let via_b = eval_next.matmul(&self.ambient.derived_b(n));
        let mut parts: Vec<SparseMatrix> = vec![equivariance_rows(&self.action, n), via_b];
        if n >= 1 {
            parts.push(flagged_rows(&self.action, inc, n));
        }
        let refs: Vec<&SparseMatrix> = parts.iter().collect();
        Ok(nullspace(&SparseMatrix::vstack(&refs)))
    }

    /// Expresses an ambient subspace of degree `n` (must lie in the carrier)
    /// in carrier coordinates.
    pub fn in_carrier_coords(
        &self,
        n: usize,
        sub: &LinearSubspace,
    ) -> Result<LinearSubspace, EquivariantError> {
        self.carrier(n)
            .express_in_basis(sub)
            .ok_or(EquivariantError::NormalizationEscapesCarrier)
    }
}

/// Ambient face `dₙ^i`. For `i ≤ n` adjacent A-arguments multiply; the last
/// face twists through the antipode:
/// `d^{n+1}φ(h, a⁰,…,aⁿ⁺¹) = φ(h₍₂₎, S⁻¹(h₍₁₎)(aⁿ⁺¹)·a⁰, a¹,…,aⁿ)`.
fn face_matrix(action: &ModuleAlgebraAction, n: usize, i: usize) -> SparseMatrix {
    let (dh, da) = (action.hopf().dim(), action.alg().dim());
    let alg = action.alg();
    let hopf = action.hopf();
    let rows_out = dh * da.pow((n + 2) as u32);
    let cols = dh * da.pow((n + 1) as u32);
    let a_block = da.pow((n + 1) as u32);
    let sinv_rows = hopf.antipode_inv().transpose();
    let rows: Vec<SparseRow> = (0..rows_out)
        .into_par_iter()
        .map(|r| {
            let h = r / da.pow((n + 2) as u32);
            let mut tau = vec![0usize; n + 2];
            decode(r % da.pow((n + 2) as u32), da, &mut tau);
            let mut entries: SparseRow = Vec::new();
            let mut sigma = vec![0usize; n + 1];
            if i <= n {
                sigma[..i].copy_from_slice(&tau[..i]);
                sigma[i + 1..].copy_from_slice(&tau[i + 2..]);
                for (k, c) in alg.product_basis(tau[i], tau[i + 1]) {
                    sigma[i] = *k;
                    entries.push((h * a_block + encode(&sigma, da), c.clone()));
                }
            } else {
                sigma[1..].copy_from_slice(&tau[1..=n]);
                for (p, q, c0) in hopf.coproduct_terms(h) {
                    let twisted = action
                        .act_sparse(sinv_rows.row(*p), &crate::algebra::basis_vec(tau[n + 1]));
                    for (m0, c1) in &twisted {
                        for (k, c2) in alg.product_basis(*m0, tau[0]) {
                            sigma[0] = *k;
                            entries.push((q * a_block + encode(&sigma, da), c0 * c1 * c2));
                        }
                    }
                }
            }
            entries
        })
        .collect();
    SparseMatrix::from_rows(cols, rows)
}

/// Ambient degeneracy `sₙ^j`: inserts `1_A` after position `j`.
fn degeneracy_matrix(action: &ModuleAlgebraAction, n: usize, j: usize) -> SparseMatrix {
    let (dh, da) = (action.hopf().dim(), action.alg().dim());
    let unit = action.alg().unit().clone();
    let rows_out = dh * da.pow(n as u32);
    let cols = dh * da.pow((n + 1) as u32);
    let a_block = da.pow((n + 1) as u32);
    let rows: Vec<SparseRow> = (0..rows_out)
        .into_par_iter()
        .map(|r| {
            let h = r / da.pow(n as u32);
            let mut tau = vec![0usize; n];
            decode(r % da.pow(n as u32), da, &mut tau);
            let mut sigma = vec![0usize; n + 1];
            sigma[..=j].copy_from_slice(&tau[..=j]);
            sigma[j + 2..].copy_from_slice(&tau[j + 1..]);
            let mut entries: SparseRow = Vec::with_capacity(unit.len());
            for (k, c) in &unit {
                sigma[j + 1] = *k;
                entries.push((h * a_block + encode(&sigma, da), c.clone()));
            }
            entries
        })
        .collect();
    SparseMatrix::from_rows(cols, rows)
}

/// Ambient cyclic operator:
/// `tφ(h, a⁰,…,aⁿ) = φ(h₍₂₎, S⁻¹(h₍₁₎)(aⁿ), a⁰,…,aⁿ⁻¹)`.
fn cyclic_matrix(action: &ModuleAlgebraAction, n: usize) -> SparseMatrix {
    let (dh, da) = (action.hopf().dim(), action.alg().dim());
    let hopf = action.hopf();
    let size = dh * da.pow((n + 1) as u32);
    let a_block = da.pow((n + 1) as u32);
    let sinv_rows = hopf.antipode_inv().transpose();
    let rows: Vec<SparseRow> = (0..size)
        .into_par_iter()
        .map(|r| {
            let h = r / a_block;
            let mut tau = vec![0usize; n + 1];
            decode(r % a_block, da, &mut tau);
            let mut entries: SparseRow = Vec::new();
            let mut sigma = vec![0usize; n + 1];
            sigma[1..].copy_from_slice(&tau[..n]);
            for (p, q, c0) in hopf.coproduct_terms(h) {
                let twisted =
                    action.act_sparse(sinv_rows.row(*p), &crate::algebra::basis_vec(tau[n]));
                for (m0, c1) in &twisted {
                    sigma[0] = *m0;
                    entries.push((q * a_block + encode(&sigma, da), c0 * c1));
                }
            }
            entries
        })
        .collect();
    SparseMatrix::from_rows(size, rows)
}

/// Constraint rows of the equivariance condition
/// `φ(g₍ₙ₊₂₎ h S⁻¹(g₍ₙ₊₃₎), g₍₁₎(a⁰),…,g₍ₙ₊₁₎(aⁿ)) = ε(g)·φ(h, a⁰,…,aⁿ)`,
/// one row per basis tuple `(g, h, a⁰,…,aⁿ)`.
pub fn equivariance_rows(action: &ModuleAlgebraAction, n: usize) -> SparseMatrix {
    let (dh, da) = (action.hopf().dim(), action.alg().dim());
    let hopf = action.hopf();
    let a_block = da.pow((n + 1) as u32);
    let ambient = dh * a_block;
    let cop = hopf.iterated_coproduct(n + 3);
    let sinv_rows = hopf.antipode_inv().transpose();
    let halg = hopf.alg();
    let rows: Vec<SparseRow> = (0..dh * ambient)
        .into_par_iter()
        .map(|row_index| {
            let g = row_index / ambient;
            let h = (row_index % ambient) / a_block;
            let mut tau = vec![0usize; n + 1];
            decode(row_index % a_block, da, &mut tau);
            let mut entries: SparseRow = Vec::new();
            for (legs, c0) in &cop.terms[g] {
                // adjoint slot: g₍ₙ₊₂₎ · h · S⁻¹(g₍ₙ₊₃₎)
                let hv = halg.mul_sparse(
                    &halg.mul_sparse(
                        &crate::algebra::basis_vec(legs[n + 1]),
                        &crate::algebra::basis_vec(h),
                    ),
                    sinv_rows.row(legs[n + 2]),
                );
                // a-slots: aʲ receives leg j+1
                let avecs: Vec<&SparseRow> =
                    (0..=n).map(|i| action.act_basis(legs[i], tau[i])).collect();
                expand_product(&avecs, &mut |choice, coeff| {
                    for (hh, ch) in &hv {
                        entries.push((hh * a_block + encode(choice, da), c0 * coeff * ch));
                    }
                });
            }
            let eps = &hopf.counit()[g];
            if !eps.is_zero() {
                entries.push((h * a_block + encode(&tau, da), -eps.clone()));
            }
            entries
        })
        .collect();
    SparseMatrix::from_rows(ambient, rows)
}

/// Constraint rows of the equivalent condition
/// `φ(S(g₍₂₎) h g₍₁₎, a⁰,…,aⁿ) = φ(h, g₍₁₎(a⁰),…,g₍ₙ₊₁₎(aⁿ))`.
pub fn equivariance_rows_alt(action: &ModuleAlgebraAction, n: usize) -> SparseMatrix {
    let (dh, da) = (action.hopf().dim(), action.alg().dim());
    let hopf = action.hopf();
    let a_block = da.pow((n + 1) as u32);
    let ambient = dh * a_block;
    let cop_pair = hopf.iterated_coproduct(2);
    let cop_diag = hopf.iterated_coproduct(n + 1);
    let s_rows = hopf.antipode().transpose();
    let halg = hopf.alg();
    let rows: Vec<SparseRow> = (0..dh * ambient)
        .into_par_iter()
        .map(|row_index| {
            let g = row_index / ambient;
            let h = (row_index % ambient) / a_block;
            let mut tau = vec![0usize; n + 1];
            decode(row_index % a_block, da, &mut tau);
            let mut entries: SparseRow = Vec::new();
            for (legs, c0) in &cop_pair.terms[g] {
                let hv = halg.mul_sparse(
                    &halg.mul_sparse(s_rows.row(legs[1]), &crate::algebra::basis_vec(h)),
                    &crate::algebra::basis_vec(legs[0]),
                );
                for (hh, ch) in &hv {
                    entries.push((hh * a_block + encode(&tau, da), c0 * ch));
                }
            }
            for (legs, c0) in &cop_diag.terms[g] {
                let avecs: Vec<&SparseRow> =
                    (0..=n).map(|i| action.act_basis(legs[i], tau[i])).collect();
                expand_product(&avecs, &mut |choice, coeff| {
                    entries.push((h * a_block + encode(choice, da), -(c0 * coeff)));
                });
            }
            entries
        })
        .collect();
    SparseMatrix::from_rows(ambient, rows)
}

/// Equivariant cochains of degree `n` as the nullspace of the constraint rows.
pub fn equivariant_subspace(action: &ModuleAlgebraAction, n: usize) -> LinearSubspace {
    nullspace(&equivariance_rows(action, n))
}

/// Equivariant cochains via the antipode-flipped condition; equals
/// [`equivariant_subspace`] (the equivalence lemma, verified as canonical
/// basis equality in the test suites).
pub fn equivariant_subspace_alt(action: &ModuleAlgebraAction, n: usize) -> LinearSubspace {
    nullspace(&equivariance_rows_alt(action, n))
}

/// Evaluation rows flagging tuples whose `aʲ` (j ≥ 1) lies in the image of
/// the subalgebra, over the equivariant ambient coordinates.
fn flagged_rows(action: &ModuleAlgebraAction, inc: &SubalgebraInclusion, m: usize) -> SparseMatrix {
    let (dh, da) = (action.hopf().dim(), action.alg().dim());
    let a_block = da.pow((m + 1) as u32);
    let cols = dh * a_block;
    let rest_count = da.pow(m as u32);
    let embed_cols: Vec<SparseRow> = (0..inc.small.dim())
        .map(|c| inc.embed_vec(&crate::algebra::basis_vec(c)))
        .collect();
    let mut rows: Vec<SparseRow> = Vec::new();
    let mut rest = vec![0usize; m];
    let mut tuple = vec![0usize; m + 1];
    for h in 0..dh {
        for j in 1..=m {
            for embedded in &embed_cols {
                for r in 0..rest_count {
                    decode(r, da, &mut rest);
                    tuple[..j].copy_from_slice(&rest[..j]);
                    tuple[j + 1..].copy_from_slice(&rest[j..]);
                    let mut entries: SparseRow = Vec::with_capacity(embedded.len());
                    for (k, c) in embedded {
                        tuple[j] = *k;
                        entries.push((h * a_block + encode(&tuple, da), c.clone()));
                    }
                    rows.push(entries);
                }
            }
        }
    }
    SparseMatrix::from_rows(cols, rows)
}

fn decode(mut index: usize, dim: usize, out: &mut [usize]) {
    for slot in (0..out.len()).rev() {
        out[slot] = index % dim;
        index /= dim;
    }
}

fn encode(tuple: &[usize], dim: usize) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * dim + i)
}

/// Equivariant cyclic cohomology from the full carrier.
pub fn hc_equivariant(
    action: &ModuleAlgebraAction,
    max_degree: usize,
) -> Result<HcReport, EquivariantError> {
    let complex = EquivariantComplex::build(action, max_degree)?;
    Ok(complex
        .restricted()
        .build_total_complex(max_degree)?
        .cohomology_dims())
}

/// Equivariant cyclic cohomology from the normalized subcomplex of the
/// carrier (quasi-isomorphic; computed for the cross-check).
pub fn hc_equivariant_normalized(
    action: &ModuleAlgebraAction,
    max_degree: usize,
) -> Result<HcReport, EquivariantError> {
    let complex = EquivariantComplex::build(action, max_degree + 1)?;
    let mut sub = Vec::new();
    for n in 0..=max_degree + 1 {
        let normalized = complex.normalized_subspace(n);
        sub.push(complex.in_carrier_coords(n, &normalized)?);
    }
    let total = complex.restricted().build_total_complex(max_degree)?;
    Ok(total.restrict_to_subcomplex(&sub)?.cohomology_dims())
}

/// Cyclic cohomology of the B-constant equivariant subcomplex.
pub fn hc_bconstant_equivariant(
    action: &ModuleAlgebraAction,
    inc: &SubalgebraInclusion,
    max_degree: usize,
) -> Result<HcReport, EquivariantError> {
    let complex = EquivariantComplex::build(action, max_degree + 1)?;
    let mut sub = Vec::new();
    for n in 0..=max_degree + 1 {
        let bconst = complex.bconstant_subspace(inc, n)?;
        sub.push(complex.in_carrier_coords(n, &bconst)?);
    }
    let total = complex.restricted().build_total_complex(max_degree)?;
    Ok(total.restrict_to_subcomplex(&sub)?.cohomology_dims())
}
