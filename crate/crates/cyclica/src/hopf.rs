//! Hopf algebra data with invertible antipode, module-algebra actions, and
//! crossed products.
//!
//! Coproducts are stored as sparse tensors `Δ(e_i) = Σ c · e_j ⊗ e_k`, the
//! antipode and its inverse as explicit matrices. Sweedler legs
//! `h₍₁₎ ⊗ … ⊗ h₍ₖ₎` are materialized by [`HopfAlgebraData::iterated_coproduct`].

use crate::algebra::{basis_vec, AlgebraError, StructureConstantAlgebra, SubalgebraInclusion};
use crate::report::{CheckOutcome, ValidationReport};
use crate::scalar::Scalar;
use crate::sparse::{row_axpy, SparseMatrix, SparseRow};
use num::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum HopfError {
    #[error("invalid module-algebra action: {0}")]
    InvalidAction(String),
    #[error("subalgebra is not stable under the action: {0}")]
    NotActionStable(String),
    #[error("inconsistent Hopf data: {0}")]
    Shape(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Hopf algebra: underlying algebra plus coproduct, counit, antipode and its
/// inverse, and an optional declared-semisimple flag.
#[derive(Debug, Clone)]
pub struct HopfAlgebraData {
    alg: StructureConstantAlgebra,
    /// `coproduct[i]` lists `(j, k, c)` with `Δ(e_i) = Σ c · e_j ⊗ e_k`.
    coproduct: Vec<Vec<(usize, usize, Scalar)>>,
    counit: Vec<Scalar>,
    antipode: SparseMatrix,
    antipode_inv: SparseMatrix,
    /// Declared in the spec file; `None` means undeclared.
    semisimple: Option<bool>,
}

/// Sparse iterated coproduct `Δ^{(legs)} : H → H^{⊗legs}`.
#[derive(Debug, Clone)]
pub struct IteratedCoproduct {
    pub legs: usize,
    /// `terms[i]` lists `(leg indices, coefficient)` for basis input `e_i`.
    pub terms: Vec<Vec<(Vec<usize>, Scalar)>>,
}

impl HopfAlgebraData {
    pub fn new(
        alg: StructureConstantAlgebra,
        coproduct_triples: Vec<(usize, usize, usize, Scalar)>,
        counit: Vec<Scalar>,
        antipode: SparseMatrix,
        antipode_inv: SparseMatrix,
        semisimple: Option<bool>,
    ) -> Result<Self, HopfError> {
        let d = alg.dim();
        if counit.len() != d {
            return Err(HopfError::Shape(format!(
                "counit length {} ≠ {}",
                counit.len(),
                d
            )));
        }
        for (m, name) in [(&antipode, "antipode"), (&antipode_inv, "antipode inverse")] {
            if m.rows() != d || m.cols() != d {
                return Err(HopfError::Shape(format!(
                    "{name} must be {d}×{d}, got {}×{}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let mut coproduct = vec![Vec::new(); d];
        for (i, j, k, c) in coproduct_triples {
            if i >= d || j >= d || k >= d {
                return Err(HopfError::Shape(format!(
                    "coproduct triple ({i},{j},{k}) out of range for dimension {d}"
                )));
            }
            coproduct[i].push((j, k, c));
        }
        for terms in &mut coproduct {
            terms.sort_by_key(|t| (t.0, t.1));
            let mut out: Vec<(usize, usize, Scalar)> = Vec::with_capacity(terms.len());
            for (j, k, c) in terms.drain(..) {
                match out.last_mut() {
                    Some((lj, lk, lc)) if *lj == j && *lk == k => *lc += c,
                    _ => out.push((j, k, c)),
                }
            }
            out.retain(|(_, _, c)| !c.is_zero());
            *terms = out;
        }
        Ok(HopfAlgebraData {
            alg,
            coproduct,
            counit,
            antipode,
            antipode_inv,
            semisimple,
        })
    }

    pub fn alg(&self) -> &StructureConstantAlgebra {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn coproduct_terms(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.coproduct[i]
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn counit_of(&self, v: &SparseRow) -> Scalar {
        v.iter().map(|(i, c)| &self.counit[*i] * c).sum()
    }

    pub fn antipode(&self) -> &SparseMatrix {
        &self.antipode
    }

    pub fn antipode_inv(&self) -> &SparseMatrix {
        &self.antipode_inv
    }

    pub fn semisimple_flag(&self) -> Option<bool> {
        self.semisimple
    }

    /// `Δ^{(legs)}`, expanding the first leg at each step; `legs = 1` is the
    /// identity. Coassociativity makes the bracketing immaterial — see
    /// [`Self::iterated_coproduct_alt`] for the cross-check.
    pub fn iterated_coproduct(&self, legs: usize) -> IteratedCoproduct {
        assert!(legs >= 1, "legs must be ≥ 1");
        let d = self.dim();
        let mut terms: Vec<Vec<(Vec<usize>, Scalar)>> =
            (0..d).map(|i| vec![(vec![i], Scalar::one())]).collect();
        for _ in 1..legs {
            terms = terms
                .into_iter()
                .map(|old| {
                    let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
                    for (tuple, c) in old {
                        for (j, k, cc) in &self.coproduct[tuple[0]] {
                            let mut nt = Vec::with_capacity(tuple.len() + 1);
                            nt.push(*j);
                            nt.push(*k);
                            nt.extend_from_slice(&tuple[1..]);
                            let v = acc.entry(nt).or_insert_with(Scalar::zero);
                            *v += &c * cc;
                        }
                    }
                    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
                })
                .collect();
        }
        IteratedCoproduct { legs, terms }
    }

    /// Same tensor computed with the opposite bracketing (expanding the last
    /// leg); equals [`Self::iterated_coproduct`] by coassociativity.
    pub fn iterated_coproduct_alt(&self, legs: usize) -> IteratedCoproduct {
        assert!(legs >= 1, "legs must be ≥ 1");
        let d = self.dim();
        let mut terms: Vec<Vec<(Vec<usize>, Scalar)>> =
            (0..d).map(|i| vec![(vec![i], Scalar::one())]).collect();
        for _ in 1..legs {
            terms = terms
                .into_iter()
                .map(|old| {
                    let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
                    for (tuple, c) in old {
                        let last = *tuple.last().expect("nonempty leg tuple");
                        for (j, k, cc) in &self.coproduct[last] {
                            let mut nt = tuple[..tuple.len() - 1].to_vec();
                            nt.push(*j);
                            nt.push(*k);
                            let v = acc.entry(nt).or_insert_with(Scalar::zero);
                            *v += &c * cc;
                        }
                    }
                    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
                })
                .collect();
        }
        IteratedCoproduct { legs, terms }
    }

    /// Adjoint action tensor: `ad[g][h]` = coordinates of
    /// `g·h = g₍₁₎ h S⁻¹(g₍₂₎)`.
    pub fn adjoint_action(&self) -> Vec<Vec<SparseRow>> {
        let d = self.dim();
        (0..d)
            .map(|g| {
                (0..d)
                    .map(|h| {
                        let mut acc: SparseRow = Vec::new();
                        for (p, q, c) in &self.coproduct[g] {
                            let right = self.antipode_inv.apply(&basis_vec(*q));
                            let term = self.alg.mul_sparse(
                                &self.alg.mul_sparse(&basis_vec(*p), &basis_vec(h)),
                                &right,
                            );
                            acc = row_axpy(&acc, &term, c);
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    /// All Hopf axioms, every violation reported.
    pub fn validate(&self) -> ValidationReport {
        let mut report = self.alg.validate();
        report.subject = format!("hopf {}", self.alg.name());
        let d = self.dim();

        // coassociativity: (Δ⊗id)Δ = (id⊗Δ)Δ
        let mut coassoc = Vec::new();
        for i in 0..d {
            let left = self.iterated_coproduct(3).terms[i].clone();
            let right = self.iterated_coproduct_alt(3).terms[i].clone();
            if left != right {
                coassoc.push(format!("(Δ⊗id)Δ(e{i}) ≠ (id⊗Δ)Δ(e{i})"));
            }
        }
        report.push(CheckOutcome::new("coassociativity", coassoc));

        // Δ is an algebra map
        let mut delta_mul = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let mut lhs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
                for (k, c) in self.alg.product_basis(i, j) {
                    for (p, q, cc) in &self.coproduct[*k] {
                        *lhs.entry((*p, *q)).or_insert_with(Scalar::zero) += c * cc;
                    }
                }
                let mut rhs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
                for (p1, q1, c1) in &self.coproduct[i] {
                    for (p2, q2, c2) in &self.coproduct[j] {
                        for (p, cp) in self.alg.product_basis(*p1, *p2) {
                            for (q, cq) in self.alg.product_basis(*q1, *q2) {
                                *rhs.entry((*p, *q)).or_insert_with(Scalar::zero) +=
                                    c1 * c2 * cp * cq;
                            }
                        }
                    }
                }
                lhs.retain(|_, c| !c.is_zero());
                rhs.retain(|_, c| !c.is_zero());
                if lhs != rhs {
                    delta_mul.push(format!("Δ(e{i}·e{j}) ≠ Δ(e{i})Δ(e{j})"));
                }
            }
        }
        // Δ(1) = 1⊗1
        let mut delta_unit: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (i, c) in self.alg.unit() {
            for (p, q, cc) in &self.coproduct[*i] {
                *delta_unit.entry((*p, *q)).or_insert_with(Scalar::zero) += c * cc;
            }
        }
        delta_unit.retain(|_, c| !c.is_zero());
        let mut expected: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (p, cp) in self.alg.unit() {
            for (q, cq) in self.alg.unit() {
                *expected.entry((*p, *q)).or_insert_with(Scalar::zero) += cp * cq;
            }
        }
        expected.retain(|_, c| !c.is_zero());
        if delta_unit != expected {
            delta_mul.push("Δ(1) ≠ 1⊗1".to_string());
        }
        report.push(CheckOutcome::new("coproduct is an algebra map", delta_mul));

        // counit axioms (ε⊗id)Δ = id = (id⊗ε)Δ
        let mut counit_ax = Vec::new();
        for i in 0..d {
            let mut left: SparseRow = Vec::new();
            let mut right: SparseRow = Vec::new();
            for (p, q, c) in &self.coproduct[i] {
                left = row_axpy(&left, &basis_vec(*q), &(c * &self.counit[*p]));
                right = row_axpy(&right, &basis_vec(*p), &(c * &self.counit[*q]));
            }
            if left != basis_vec(i) {
                counit_ax.push(format!("(ε⊗id)Δ(e{i}) ≠ e{i}"));
            }
            if right != basis_vec(i) {
                counit_ax.push(format!("(id⊗ε)Δ(e{i}) ≠ e{i}"));
            }
        }
        report.push(CheckOutcome::new("counit axioms", counit_ax));

        // ε is an algebra map
        let mut counit_mul = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let prod_counit = self.counit_of(self.alg.product_basis(i, j));
                let expected = &self.counit[i] * &self.counit[j];
                if prod_counit != expected {
                    counit_mul.push(format!("ε(e{i}·e{j}) ≠ ε(e{i})ε(e{j})"));
                }
            }
        }
        if !self.counit_of(self.alg.unit()).is_one() {
            counit_mul.push("ε(1) ≠ 1".to_string());
        }
        report.push(CheckOutcome::new("counit is an algebra map", counit_mul));

        // antipode convolution identities
        let mut conv = Vec::new();
        for i in 0..d {
            let mut s_id: SparseRow = Vec::new();
            let mut id_s: SparseRow = Vec::new();
            for (p, q, c) in &self.coproduct[i] {
                let sp = self.antipode.apply(&basis_vec(*p));
                let sq = self.antipode.apply(&basis_vec(*q));
                s_id = row_axpy(&s_id, &self.alg.mul_sparse(&sp, &basis_vec(*q)), c);
                id_s = row_axpy(&id_s, &self.alg.mul_sparse(&basis_vec(*p), &sq), c);
            }
            let target: SparseRow = self
                .alg
                .unit()
                .iter()
                .map(|(k, c)| (*k, c * &self.counit[i]))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if s_id != target {
                conv.push(format!("m(S⊗id)Δ(e{i}) ≠ ε(e{i})·1"));
            }
            if id_s != target {
                conv.push(format!("m(id⊗S)Δ(e{i}) ≠ ε(e{i})·1"));
            }
        }
        report.push(CheckOutcome::new("antipode convolution identities", conv));

        // S·S⁻¹ = S⁻¹·S = id
        let id = SparseMatrix::identity(d);
        let mut inv = Vec::new();
        if self.antipode.matmul(&self.antipode_inv) != id {
            inv.push("S∘S⁻¹ ≠ id".to_string());
        }
        if self.antipode_inv.matmul(&self.antipode) != id {
            inv.push("S⁻¹∘S ≠ id".to_string());
        }
        report.push(CheckOutcome::new("antipode inverse", inv));

        // derived: S is an anti-homomorphism (follows from the axioms)
        let mut anti = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let s_prod = self.antipode.apply(self.alg.product_basis(i, j));
                let prod_s = self.alg.mul_sparse(
                    &self.antipode.apply(&basis_vec(j)),
                    &self.antipode.apply(&basis_vec(i)),
                );
                if s_prod != prod_s {
                    anti.push(format!("S(e{i}e{j}) ≠ S(e{j})S(e{i})"));
                }
            }
        }
        report.push(CheckOutcome::new("antipode anti-homomorphism", anti));

        report
    }
}

/// A left action of a Hopf algebra on an algebra making it a module algebra.
#[derive(Debug, Clone)]
pub struct ModuleAlgebraAction {
    name: String,
    hopf: HopfAlgebraData,
    alg: StructureConstantAlgebra,
    /// `action[h][a]` = sparse coordinates of `e_h(a_a)`.
    action: Vec<Vec<SparseRow>>,
}

impl ModuleAlgebraAction {
    pub fn new(
        name: impl Into<String>,
        hopf: HopfAlgebraData,
        alg: StructureConstantAlgebra,
        action_triples: Vec<(usize, usize, usize, Scalar)>,
    ) -> Result<Self, HopfError> {
        let (dh, da) = (hopf.dim(), alg.dim());
        let mut action = vec![vec![Vec::new(); da]; dh];
        for (h, a, k, c) in action_triples {
            if h >= dh || a >= da || k >= da {
                return Err(HopfError::Shape(format!(
                    "action triple ({h},{a},{k}) out of range for H-dim {dh}, A-dim {da}"
                )));
            }
            action[h][a].push((k, c));
        }
        for row in action.iter_mut().flatten() {
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
        Ok(ModuleAlgebraAction {
            name: name.into(),
            hopf,
            alg,
            action,
        })
    }

    /// The trivial action `h(a) = ε(h)·a`.
    pub fn trivial(hopf: HopfAlgebraData, alg: StructureConstantAlgebra) -> Self {
        let name = format!("trivial:{}-on-{}", hopf.alg().name(), alg.name());
        let action = (0..hopf.dim())
            .map(|h| {
                let eps = hopf.counit()[h].clone();
                (0..alg.dim())
                    .map(|a| {
                        if eps.is_zero() {
                            Vec::new()
                        } else {
                            vec![(a, eps.clone())]
                        }
                    })
                    .collect()
            })
            .collect();
        ModuleAlgebraAction {
            name,
            hopf,
            alg,
            action,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn hopf(&self) -> &HopfAlgebraData {
        &self.hopf
    }

    pub fn alg(&self) -> &StructureConstantAlgebra {
        &self.alg
    }

    pub fn act_basis(&self, h: usize, a: usize) -> &SparseRow {
        &self.action[h][a]
    }

    /// Action of a sparse H-vector on a sparse A-vector.
    pub fn act_sparse(&self, hv: &SparseRow, av: &SparseRow) -> SparseRow {
        let mut acc: SparseRow = Vec::new();
        for (h, ch) in hv {
            for (a, ca) in av {
                let c = ch * ca;
                acc = row_axpy(&acc, &self.action[*h][*a], &c);
            }
        }
        acc
    }

    pub fn action_triples(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (h, per_a) in self.action.iter().enumerate() {
            for (a, row) in per_a.iter().enumerate() {
                for (k, c) in row {
                    out.push((h, a, *k, c.clone()));
                }
            }
        }
        out
    }

    /// All four module-algebra invariants on basis elements.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new(format!("action {}", self.name));
        let (dh, da) = (self.hopf.dim(), self.alg.dim());

        // ρ(1_H) = identity
        let mut unit_violations = Vec::new();
        for a in 0..da {
            let image = self.act_sparse(self.hopf.alg().unit(), &basis_vec(a));
            if image != basis_vec(a) {
                unit_violations.push(format!("1_H(a{a}) ≠ a{a}"));
            }
        }
        report.push(CheckOutcome::new("unit acts as identity", unit_violations));

        // ρ(gh) = ρ(g)∘ρ(h)
        let mut rep_violations = Vec::new();
        for g in 0..dh {
            for h in 0..dh {
                for a in 0..da {
                    let via_product =
                        self.act_sparse(self.hopf.alg().product_basis(g, h), &basis_vec(a));
                    let composed = self.act_sparse(&basis_vec(g), &self.action[h][a]);
                    if via_product != composed {
                        rep_violations.push(format!("(e{g}e{h})(a{a}) ≠ e{g}(e{h}(a{a}))"));
                    }
                }
            }
        }
        report.push(CheckOutcome::new(
            "action is multiplicative in H",
            rep_violations,
        ));

        // h(ab) = h₍₁₎(a)h₍₂₎(b)
        let mut leibniz = Vec::new();
        for h in 0..dh {
            for a in 0..da {
                for b in 0..da {
                    let lhs = self.act_sparse(&basis_vec(h), self.alg.product_basis(a, b));
                    let mut rhs: SparseRow = Vec::new();
                    for (p, q, c) in self.hopf.coproduct_terms(h) {
                        let term = self
                            .alg
                            .mul_sparse(&self.action[*p][a], &self.action[*q][b]);
                        rhs = row_axpy(&rhs, &term, c);
                    }
                    if lhs != rhs {
                        leibniz.push(format!("e{h}(a{a}·a{b}) ≠ e{h}₍₁₎(a{a})·e{h}₍₂₎(a{b})"));
                    }
                }
            }
        }
        report.push(CheckOutcome::new("multiplication is H-linear", leibniz));

        // h(1_A) = ε(h)·1_A
        let mut unit_image = Vec::new();
        for h in 0..dh {
            let image = self.act_sparse(&basis_vec(h), self.alg.unit());
            let expected: SparseRow = self
                .alg
                .unit()
                .iter()
                .map(|(k, c)| (*k, c * &self.hopf.counit()[h]))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if image != expected {
                unit_image.push(format!("e{h}(1_A) ≠ ε(e{h})·1_A"));
            }
        }
        report.push(CheckOutcome::new("unit map is H-linear", unit_image));

        report
    }

    /// Restricts the action along a subalgebra inclusion `B ⊆ A`. Errors with
    /// [`HopfError::NotActionStable`] when `ρ(h)(im B) ⊄ im B`.
    pub fn restrict_to(&self, inc: &SubalgebraInclusion) -> Result<ModuleAlgebraAction, HopfError> {
        let db = inc.small.dim();
        let mut images = Vec::new();
        for h in 0..self.hopf.dim() {
            for b in 0..db {
                let image = self.act_sparse(&basis_vec(h), &inc.embed_vec(&basis_vec(b)));
                images.push(((h, b), image));
            }
        }
        let rhs = SparseMatrix::from_triplets(
            self.alg.dim(),
            images.len(),
            images
                .iter()
                .enumerate()
                .flat_map(|(col, (_, v))| v.iter().map(move |(r, c)| (*r, col, c.clone()))),
        );
        let solved = inc.embed.solve_columns(&rhs).ok_or_else(|| {
            HopfError::NotActionStable(format!(
                "some e_h(embed(b)) lies outside the image of {} in {}",
                inc.small.name(),
                inc.big.name()
            ))
        })?;
        let mut triples = Vec::new();
        for (col, ((h, b), _)) in images.iter().enumerate() {
            for r in 0..db {
                let v = solved.get(r, col);
                if !v.is_zero() {
                    triples.push((*h, *b, r, v));
                }
            }
        }
        ModuleAlgebraAction::new(
            format!("{}|{}", self.name, inc.small.name()),
            self.hopf.clone(),
            inc.small.clone(),
            triples,
        )
    }

    /// The crossed (smash) product `A⋊H` with its two canonical inclusions.
    /// Validates the action first; the resulting algebra is certified
    /// associative by construction of the module-algebra axioms, and
    /// re-checked by `validate_algebra` in the test suites.
    pub fn crossed_product(&self) -> Result<CrossedProductAlgebra, HopfError> {
        let action_report = self.validate();
        if !action_report.passed() {
            return Err(HopfError::InvalidAction(
                action_report.violations().join("; "),
            ));
        }
        Ok(self.crossed_product_unchecked())
    }

    /// Crossed product without the validation gate (registry fast path).
    pub fn crossed_product_unchecked(&self) -> CrossedProductAlgebra {
        let (da, dh) = (self.alg.dim(), self.hopf.dim());
        let dim = da * dh;
        let enc = |a: usize, h: usize| a * dh + h;
        let labels: Vec<String> = (0..da)
            .flat_map(|a| (0..dh).map(move |h| (a, h)))
            .map(|(a, h)| {
                format!(
                    "{}⊗{}",
                    self.alg.basis_labels()[a],
                    self.hopf.alg().basis_labels()[h]
                )
            })
            .collect();
        let mut triples = Vec::new();
        // (a⊗h)(b⊗g) = a·h₍₁₎(b) ⊗ h₍₂₎·g
        for a in 0..da {
            for h in 0..dh {
                for b in 0..da {
                    for g in 0..dh {
                        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                        for (p, q, c0) in self.hopf.coproduct_terms(h) {
                            for (m, c1) in &self.action[*p][b] {
                                for (r, c2) in self.alg.product_basis(a, *m) {
                                    for (s, c3) in self.hopf.alg().product_basis(*q, g) {
                                        *acc.entry(enc(*r, *s)).or_insert_with(Scalar::zero) +=
                                            c0 * c1 * c2 * c3;
                                    }
                                }
                            }
                        }
                        for (k, c) in acc {
                            if !c.is_zero() {
                                triples.push((enc(a, h), enc(b, g), k, c));
                            }
                        }
                    }
                }
            }
        }
        let mut unit = vec![Scalar::zero(); dim];
        for (a, ca) in self.alg.unit() {
            for (h, ch) in self.hopf.alg().unit() {
                unit[enc(*a, *h)] = ca * ch;
            }
        }
        let product = StructureConstantAlgebra::new(
            format!("{}⋊{}", self.alg.name(), self.hopf.alg().name()),
            labels,
            triples,
            unit,
        )
        .expect("crossed product structure constants are well-formed");

        let embed_a = SparseMatrix::from_triplets(
            dim,
            da,
            (0..da).flat_map(|a| {
                self.hopf
                    .alg()
                    .unit()
                    .iter()
                    .map(move |(h, c)| (enc(a, *h), a, c.clone()))
                    .collect::<Vec<_>>()
            }),
        );
        let embed_h = SparseMatrix::from_triplets(
            dim,
            dh,
            (0..dh).flat_map(|h| {
                self.alg
                    .unit()
                    .iter()
                    .map(move |(a, c)| (enc(*a, h), h, c.clone()))
                    .collect::<Vec<_>>()
            }),
        );
        let include_a = SubalgebraInclusion {
            small: self.alg.clone(),
            big: product.clone(),
            embed: embed_a,
        };
        let include_h = SubalgebraInclusion {
            small: self.hopf.alg().clone(),
            big: product.clone(),
            embed: embed_h,
        };
        CrossedProductAlgebra {
            product,
            include_a,
            include_h,
        }
    }
}

/// Crossed product `A⋊H` with the canonical inclusions `a ↦ a⊗1`, `h ↦ 1⊗h`.
#[derive(Debug, Clone)]
pub struct CrossedProductAlgebra {
    pub product: StructureConstantAlgebra,
    pub include_a: SubalgebraInclusion,
    pub include_h: SubalgebraInclusion,
}

impl CrossedProductAlgebra {
    /// Full validation: product algebra axioms plus both inclusions.
    pub fn validate(&self) -> ValidationReport {
        let mut report = self.product.validate();
        report.subject = format!("crossed product {}", self.product.name());
        report.merge(self.include_a.validate());
        report.merge(self.include_h.validate());
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_numbers, ground_field};
    use crate::registry::{
        ground_field_hopf, group_algebra, h4_on_dual_numbers, sweedler_h4, z2_on_dual_numbers,
    };
    use crate::scalar::int;

    #[test]
    fn z2_group_algebra_is_a_hopf_algebra() {
        assert!(group_algebra(2).validate().passed());
    }

    #[test]
    fn sweedler_h4_validates_with_antipode_of_order_four() {
        let h = sweedler_h4();
        assert!(h.validate().passed());
        let s2 = h.antipode().matmul(h.antipode());
        assert_ne!(s2, SparseMatrix::identity(4), "S² must differ from id");
        assert_eq!(s2.matmul(&s2), SparseMatrix::identity(4), "S⁴ = id");
    }

    #[test]
    fn corrupted_antipode_fails_convolution() {
        // ℚ[ℤ/2] with S(g) redefined to 1
        let z2 = group_algebra(2);
        let bad_s = SparseMatrix::from_int_rows(vec![vec![1, 1], vec![0, 0]]);
        let h = HopfAlgebraData::new(
            z2.alg().clone(),
            vec![(0, 0, 0, int(1)), (1, 1, 1, int(1))],
            vec![int(1), int(1)],
            bad_s.clone(),
            bad_s,
            Some(true),
        )
        .unwrap();
        let report = h.validate();
        assert!(!report.passed());
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "antipode convolution identities" && !c.passed));
    }

    #[test]
    fn iterated_coproduct_one_leg_is_identity() {
        let h = sweedler_h4();
        let cop = h.iterated_coproduct(1);
        for i in 0..4 {
            assert_eq!(cop.terms[i], vec![(vec![i], int(1))]);
        }
    }

    #[test]
    fn iterated_coproduct_of_grouplike() {
        let h = group_algebra(2);
        let cop = h.iterated_coproduct(3);
        assert_eq!(cop.terms[1], vec![(vec![1, 1, 1], int(1))]);
    }

    #[test]
    fn iterated_coproduct_of_sweedler_x() {
        // Δ²(x) = x⊗1⊗1 + g⊗x⊗1 + g⊗g⊗x
        let h = sweedler_h4();
        let cop = h.iterated_coproduct(3);
        let expected = vec![
            (vec![1, 1, 2], int(1)),
            (vec![1, 2, 0], int(1)),
            (vec![2, 0, 0], int(1)),
        ];
        assert_eq!(cop.terms[2], expected);
    }

    #[test]
    fn iterated_coproduct_bracketing_independent() {
        let h = sweedler_h4();
        for legs in 1..=4 {
            let a = h.iterated_coproduct(legs);
            let b = h.iterated_coproduct_alt(legs);
            assert_eq!(a.terms, b.terms, "legs = {legs}");
        }
    }

    #[test]
    fn adjoint_action_examples() {
        let z2 = group_algebra(2);
        let ad = z2.adjoint_action();
        // 1·h = h and g·g = g
        assert_eq!(ad[0][1], basis_vec(1));
        assert_eq!(ad[1][1], basis_vec(1));

        let h4 = sweedler_h4();
        let ad4 = h4.adjoint_action();
        // x·g = xg·S⁻¹(1) + g·g·S⁻¹(x) = xg + gx = 0
        assert!(ad4[2][1].is_empty());
    }

    #[test]
    fn adjoint_action_is_an_action() {
        for h in [group_algebra(3), sweedler_h4()] {
            let d = h.dim();
            let ad = h.adjoint_action();
            let act = |gv: &SparseRow, hv: &SparseRow| -> SparseRow {
                let mut acc: SparseRow = Vec::new();
                for (g, cg) in gv {
                    for (k, ck) in hv {
                        let c = cg * ck;
                        acc = row_axpy(&acc, &ad[*g][*k], &c);
                    }
                }
                acc
            };
            for g in 0..d {
                for g2 in 0..d {
                    for k in 0..d {
                        let nested = act(&basis_vec(g), &act(&basis_vec(g2), &basis_vec(k)));
                        let direct = act(h.alg().product_basis(g, g2), &basis_vec(k));
                        assert_eq!(nested, direct, "action law at ({g},{g2},{k})");
                    }
                }
            }
        }
    }

    #[test]
    fn invalid_action_is_rejected_by_crossed_product() {
        // g(x) = 2x breaks ρ(g²) = ρ(g)²
        let bad = ModuleAlgebraAction::new(
            "bad",
            group_algebra(2),
            dual_numbers(),
            vec![
                (0, 0, 0, int(1)),
                (0, 1, 1, int(1)),
                (1, 0, 0, int(1)),
                (1, 1, 1, int(2)),
            ],
        )
        .unwrap();
        assert!(!bad.validate().passed());
        assert!(matches!(
            bad.crossed_product(),
            Err(HopfError::InvalidAction(_))
        ));
    }

    #[test]
    fn crossed_product_with_ground_field_is_the_algebra_itself() {
        let act = ModuleAlgebraAction::trivial(ground_field_hopf(), dual_numbers());
        let cp = act.crossed_product().unwrap();
        let a = dual_numbers();
        assert_eq!(cp.product.dim(), a.dim());
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                assert_eq!(cp.product.product_basis(i, j), a.product_basis(i, j));
            }
        }
    }

    #[test]
    fn crossed_product_of_z2_on_dual_numbers() {
        let cp = z2_on_dual_numbers().crossed_product().unwrap();
        assert!(cp.validate().passed());
        // basis order: 1⊗1, 1⊗g, x⊗1, x⊗g  (a-major)
        let enc = |a: usize, h: usize| a * 2 + h;
        // (x⊗g)(x⊗1) = x·g(x)⊗g = −x²⊗g = 0
        assert!(cp.product.product_basis(enc(1, 1), enc(1, 0)).is_empty());
        // (1⊗g)(x⊗1) = g(x)⊗g = −x⊗g
        assert_eq!(
            cp.product.product_basis(enc(0, 1), enc(1, 0)),
            &vec![(enc(1, 1), int(-1))]
        );
    }

    #[test]
    fn crossed_product_of_h4_validates() {
        let cp = h4_on_dual_numbers().crossed_product().unwrap();
        assert!(cp.validate().passed());
        assert_eq!(cp.product.dim(), 8);
    }

    #[test]
    fn restrict_action_to_unit_span() {
        let act = h4_on_dual_numbers();
        let inc = SubalgebraInclusion::unit_span(act.alg());
        let restricted = act.restrict_to(&inc).unwrap();
        assert!(restricted.validate().passed());
        assert_eq!(restricted.alg().dim(), 1);
    }

    #[test]
    fn restrict_action_detects_unstable_subspace() {
        // span{x} is not stable under x_H (x_H(x) = 1)
        let act = h4_on_dual_numbers();
        let embed = SparseMatrix::from_int_rows(vec![vec![0], vec![1]]);
        let inc = SubalgebraInclusion::new(ground_field(), dual_numbers(), embed).unwrap();
        assert!(matches!(
            act.restrict_to(&inc),
            Err(HopfError::NotActionStable(_))
        ));
    }
}
