//! Generic cocyclic-module machinery on per-degree matrices.
//!
//! A cocyclic module is presented as face, degeneracy, and cyclic operator
//! matrices per degree, optionally living on a carrier subspace of each
//! ambient coordinate space. From these the engine derives the Hochschild
//! coboundary b, the Connes boundary B, the (b,B) total complex, and
//! cohomology dimension tables.

use crate::report::{CheckOutcome, HcReport, HcRow, ValidationReport};
use crate::scalar::Scalar;
use crate::sparse::{LinalgError, SparseMatrix};
use crate::subspace::{restrict_operator, LinearSubspace};
use num::One;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum CocyclicError {
    #[error("D² ≠ 0 at degree {degree} (an upstream operator is wrong)")]
    DifferentialSquareNonzero { degree: usize },
    #[error("degree {requested} exceeds built operators (n_max = {available})")]
    DegreeOutOfRange { requested: usize, available: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Cocyclic module with operators for domain degrees `0..=n_max`.
///
/// `faces[n][i] : Cⁿ → Cⁿ⁺¹` for `0 ≤ i ≤ n+1`; `degens[n][j] : Cⁿ → Cⁿ⁻¹`
/// for `0 ≤ j ≤ n−1`; `cyclic[n] : Cⁿ → Cⁿ`. When a `carrier` is present the
/// cocyclic identities are only claimed on it.
#[derive(Debug, Clone)]
pub struct MatrixCocyclicModule {
    name: String,
    n_max: usize,
    /// Ambient dimensions for degrees `0..=n_max+1`.
    dims: Vec<usize>,
    faces: Vec<Vec<SparseMatrix>>,
    degens: Vec<Vec<SparseMatrix>>,
    cyclic: Vec<SparseMatrix>,
    carrier: Option<Vec<LinearSubspace>>,
}

impl MatrixCocyclicModule {
    pub fn new(
        name: impl Into<String>,
        dims: Vec<usize>,
        faces: Vec<Vec<SparseMatrix>>,
        degens: Vec<Vec<SparseMatrix>>,
        cyclic: Vec<SparseMatrix>,
        carrier: Option<Vec<LinearSubspace>>,
    ) -> Self {
        let n_max = cyclic.len().saturating_sub(1);
        assert_eq!(dims.len(), n_max + 2, "dims must cover degrees 0..=n_max+1");
        assert_eq!(faces.len(), n_max + 1);
        assert_eq!(degens.len(), n_max + 1);
        for n in 0..=n_max {
            assert_eq!(faces[n].len(), n + 2, "need n+2 faces at degree {n}");
            assert_eq!(degens[n].len(), n, "need n degeneracies at degree {n}");
            for f in &faces[n] {
                assert_eq!((f.rows(), f.cols()), (dims[n + 1], dims[n]));
            }
            for s in &degens[n] {
                assert_eq!((s.rows(), s.cols()), (dims[n.saturating_sub(1)], dims[n]));
            }
            assert_eq!((cyclic[n].rows(), cyclic[n].cols()), (dims[n], dims[n]));
        }
        if let Some(c) = &carrier {
            assert_eq!(c.len(), n_max + 2, "carrier must cover degrees 0..=n_max+1");
        }
        MatrixCocyclicModule {
            name: name.into(),
            n_max,
            dims,
            faces,
            degens,
            cyclic,
            carrier,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn space_dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn face(&self, n: usize, i: usize) -> &SparseMatrix {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, j: usize) -> &SparseMatrix {
        &self.degens[n][j]
    }

    pub fn cyclic(&self, n: usize) -> &SparseMatrix {
        &self.cyclic[n]
    }

    pub fn carrier(&self) -> Option<&[LinearSubspace]> {
        self.carrier.as_deref()
    }

    /// Inclusion of the carrier at degree `n` (identity when no carrier).
    fn carrier_inclusion(&self, n: usize) -> SparseMatrix {
        match &self.carrier {
            Some(c) => c[n].inclusion(),
            None => SparseMatrix::identity(self.dims[n]),
        }
    }

    /// Hochschild coboundary `b = Σ_{i=0}^{n+1} (−1)^i dₙ^i : Cⁿ → Cⁿ⁺¹`.
    pub fn derived_b(&self, n: usize) -> SparseMatrix {
        let mut acc = SparseMatrix::zero(self.dims[n + 1], self.dims[n]);
        let mut sign = Scalar::one();
        for face in &self.faces[n] {
            acc = acc.add(&face.scale(&sign));
            sign = -sign;
        }
        acc
    }

    /// Norm operator `A = Σ_{j=0}^{n} (−1)^{nj} tₙ^j` on `Cⁿ`.
    pub fn norm_operator(&self, n: usize) -> SparseMatrix {
        let t = &self.cyclic[n];
        let mut acc = SparseMatrix::zero(self.dims[n], self.dims[n]);
        let mut power = SparseMatrix::identity(self.dims[n]);
        let minus_one = -Scalar::one();
        for j in 0..=n {
            let sign = if (n * j).is_multiple_of(2) {
                Scalar::one()
            } else {
                minus_one.clone()
            };
            acc = acc.add(&power.scale(&sign));
            if j < n {
                power = t.matmul(&power);
            }
        }
        acc
    }

    /// Connes boundary `B = A·B₀ : Cⁿ⁺¹ → Cⁿ` with
    /// `B₀ = s_top ∘ ((−1)ⁿ·id + t_{n+1})`, the operator reading of the
    /// degeneracy/cyclic formula that reproduces the direct two-term formula
    /// entrywise and anticommutes with b.
    pub fn derived_big_b(&self, n: usize) -> SparseMatrix {
        assert!(
            n < self.n_max,
            "derived_big_b({n}) needs degree {} operators",
            n + 1
        );
        let s_top = &self.degens[n + 1][n];
        let t_next = &self.cyclic[n + 1];
        let sign = if n.is_multiple_of(2) {
            Scalar::one()
        } else {
            -Scalar::one()
        };
        let inner = SparseMatrix::identity(self.dims[n + 1])
            .scale(&sign)
            .add(t_next);
        self.norm_operator(n).matmul(&s_top.matmul(&inner))
    }

    /// All cocyclic identities on the carrier, every violated instance listed.
    pub fn verify_cocyclic(&self) -> ValidationReport {
        let mut report = ValidationReport::new(format!("cocyclic module {}", self.name));
        let n_max = self.n_max;
        let vanishes_on_carrier = |m: &SparseMatrix, domain_degree: usize| -> bool {
            m.matmul(&self.carrier_inclusion(domain_degree)).is_zero()
        };

        // cosimplicial: d^j d^i = d^i d^{j−1} for i < j
        let mut face_face = Vec::new();
        for n in 0..n_max {
            for j in 0..=n + 2 {
                for i in 0..j {
                    let lhs = self.faces[n + 1][j].matmul(&self.faces[n][i]);
                    let rhs = self.faces[n + 1][i].matmul(&self.faces[n][j - 1]);
                    if !vanishes_on_carrier(&lhs.sub(&rhs), n) {
                        face_face.push(format!("d^{j}d^{i} ≠ d^{i}d^{} at n={n}", j - 1));
                    }
                }
            }
        }
        report.push(CheckOutcome::new("cosimplicial face-face", face_face));

        // s^j s^i = s^i s^{j+1} for i ≤ j
        let mut degen_degen = Vec::new();
        for n in 2..=n_max {
            for j in 0..n - 1 {
                for i in 0..=j {
                    let lhs = self.degens[n - 1][j].matmul(&self.degens[n][i]);
                    let rhs = self.degens[n - 1][i].matmul(&self.degens[n][j + 1]);
                    if !vanishes_on_carrier(&lhs.sub(&rhs), n) {
                        degen_degen.push(format!("s^{j}s^{i} ≠ s^{i}s^{} at n={n}", j + 1));
                    }
                }
            }
        }
        report.push(CheckOutcome::new(
            "cosimplicial degeneracy-degeneracy",
            degen_degen,
        ));

        // s^j d^i mixed relations
        let mut mixed = Vec::new();
        for n in 0..n_max {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = self.degens[n + 1][j].matmul(&self.faces[n][i]);
                    let rhs = if i == j || i == j + 1 {
                        SparseMatrix::identity(self.dims[n])
                    } else if i < j {
                        self.faces[n - 1][i].matmul(&self.degens[n][j - 1])
                    } else {
                        self.faces[n - 1][i - 1].matmul(&self.degens[n][j])
                    };
                    if !vanishes_on_carrier(&lhs.sub(&rhs), n) {
                        mixed.push(format!("s^{j}d^{i} relation fails at n={n}"));
                    }
                }
            }
        }
        report.push(CheckOutcome::new("cosimplicial mixed", mixed));

        // cyclic-face: t_{n+1} d^i = d^{i−1} t_n (i ≥ 1), t_{n+1} d^0 = d^{n+1}
        let mut cyc_face = Vec::new();
        for n in 0..n_max {
            let t_next = &self.cyclic[n + 1];
            for i in 1..=n + 1 {
                let lhs = t_next.matmul(&self.faces[n][i]);
                let rhs = self.faces[n][i - 1].matmul(&self.cyclic[n]);
                if !vanishes_on_carrier(&lhs.sub(&rhs), n) {
                    cyc_face.push(format!("t·d^{i} ≠ d^{}·t at n={n}", i - 1));
                }
            }
            let lhs = t_next.matmul(&self.faces[n][0]);
            if !vanishes_on_carrier(&lhs.sub(&self.faces[n][n + 1]), n) {
                cyc_face.push(format!("t·d^0 ≠ d^{} at n={n}", n + 1));
            }
        }
        report.push(CheckOutcome::new("cyclic-face compatibility", cyc_face));

        // cyclic-degeneracy: t_{n−1} s^j = s^{j−1} t_n (j ≥ 1), t_{n−1} s^0 = s^{n−1} t_n²
        let mut cyc_degen = Vec::new();
        for n in 1..=n_max {
            let t_prev = &self.cyclic[n - 1];
            for j in 1..n {
                let lhs = t_prev.matmul(&self.degens[n][j]);
                let rhs = self.degens[n][j - 1].matmul(&self.cyclic[n]);
                if !vanishes_on_carrier(&lhs.sub(&rhs), n) {
                    cyc_degen.push(format!("t·s^{j} ≠ s^{}·t at n={n}", j - 1));
                }
            }
            let lhs = t_prev.matmul(&self.degens[n][0]);
            let t_sq = self.cyclic[n].matmul(&self.cyclic[n]);
            let rhs = self.degens[n][n - 1].matmul(&t_sq);
            if !vanishes_on_carrier(&lhs.sub(&rhs), n) {
                cyc_degen.push(format!("t·s^0 ≠ s^{}·t² at n={n}", n - 1));
            }
        }
        report.push(CheckOutcome::new(
            "cyclic-degeneracy compatibility",
            cyc_degen,
        ));

        // t^{n+1} = id
        let mut t_order = Vec::new();
        for n in 0..=n_max {
            let mut power = SparseMatrix::identity(self.dims[n]);
            for _ in 0..=n {
                power = self.cyclic[n].matmul(&power);
            }
            let diff = power.sub(&SparseMatrix::identity(self.dims[n]));
            if !vanishes_on_carrier(&diff, n) {
                t_order.push(format!("t^{} ≠ id at n={n}", n + 1));
            }
        }
        report.push(CheckOutcome::new("cyclic order t^{n+1} = id", t_order));

        report
    }

    /// Restricts every operator to the given per-degree subspaces
    /// (`sub[0..=n_max+1]`), which must form a sub-cocyclic-module; closure
    /// failures surface as [`LinalgError::ImageEscapesCodomain`].
    pub fn restrict_to_subcomplex(
        &self,
        sub: &[LinearSubspace],
    ) -> Result<MatrixCocyclicModule, CocyclicError> {
        assert_eq!(
            sub.len(),
            self.n_max + 2,
            "need subspaces for degrees 0..=n_max+1"
        );
        let dims: Vec<usize> = sub.iter().map(|s| s.dim()).collect();
        let mut faces = Vec::new();
        let mut degens = Vec::new();
        let mut cyclic = Vec::new();
        let wrap = |op: &str, n: usize, e: LinalgError| -> CocyclicError {
            match e {
                LinalgError::ImageEscapesCodomain { context } => {
                    LinalgError::ImageEscapesCodomain {
                        context: format!("{op} at degree {n}: {context}"),
                    }
                    .into()
                }
                other => other.into(),
            }
        };
        for n in 0..=self.n_max {
            let mut fs = Vec::new();
            for (i, f) in self.faces[n].iter().enumerate() {
                fs.push(
                    restrict_operator(f, &sub[n], &sub[n + 1])
                        .map_err(|e| wrap(&format!("face d^{i}"), n, e))?,
                );
            }
            faces.push(fs);
            let mut ss = Vec::new();
            for (j, s) in self.degens[n].iter().enumerate() {
                ss.push(
                    restrict_operator(s, &sub[n], &sub[n - 1])
                        .map_err(|e| wrap(&format!("degeneracy s^{j}"), n, e))?,
                );
            }
            degens.push(ss);
            cyclic.push(
                restrict_operator(&self.cyclic[n], &sub[n], &sub[n])
                    .map_err(|e| wrap("cyclic t", n, e))?,
            );
        }
        Ok(MatrixCocyclicModule {
            name: format!("{}|restricted", self.name),
            n_max: self.n_max,
            dims,
            faces,
            degens,
            cyclic,
            carrier: None,
        })
    }

    /// Assembles the (b,B) total complex `Tⁿ = ⊕_m C^{n−2m}` with
    /// differentials `D⁰..D^N`; `D² = 0` is verified on construction.
    pub fn build_total_complex(&self, n_max: usize) -> Result<TotalComplex, CocyclicError> {
        if n_max > self.n_max {
            return Err(CocyclicError::DegreeOutOfRange {
                requested: n_max,
                available: self.n_max,
            });
        }
        let b: Vec<SparseMatrix> = (0..=n_max).map(|n| self.derived_b(n)).collect();
        let big_b: Vec<SparseMatrix> = (0..n_max).map(|n| self.derived_big_b(n)).collect();
        TotalComplex::assemble(&self.dims, &b, &big_b, n_max)
    }
}

/// Component degrees of `Tⁿ`, outer column index m ↦ degree n−2m.
fn total_components(n: usize) -> Vec<usize> {
    (0..=n / 2).map(|m| n - 2 * m).collect()
}

/// The (b,B) total complex with differentials `Dⁿ : Tⁿ → Tⁿ⁺¹`.
#[derive(Debug, Clone)]
pub struct TotalComplex {
    n_max: usize,
    /// dims of the graded pieces `C⁰..C^{n_max+1}` the totals are built from
    piece_dims: Vec<usize>,
    /// `differentials[n] = Dⁿ` for `n = 0..=n_max`
    differentials: Vec<SparseMatrix>,
}

impl TotalComplex {
    fn assemble(
        piece_dims: &[usize],
        b: &[SparseMatrix],
        big_b: &[SparseMatrix],
        n_max: usize,
    ) -> Result<TotalComplex, CocyclicError> {
        let total_dim =
            |n: usize| -> usize { total_components(n).iter().map(|&q| piece_dims[q]).sum() };
        let mut differentials = Vec::new();
        for n in 0..=n_max {
            let src = total_components(n);
            let dst = total_components(n + 1);
            let mut col_off = Vec::new();
            let mut acc = 0;
            for &q in &src {
                col_off.push(acc);
                acc += piece_dims[q];
            }
            let mut row_off = Vec::new();
            let mut acc = 0;
            for &q in &dst {
                row_off.push(acc);
                acc += piece_dims[q];
            }
            let mut triplets = Vec::new();
            for (m, &q) in src.iter().enumerate() {
                // b keeps the column index m
                for (r, c, v) in b[q].entries() {
                    triplets.push((row_off[m] + r, col_off[m] + c, v.clone()));
                }
                // B shifts to column m+1 (degree q−1)
                if q >= 1 {
                    for (r, c, v) in big_b[q - 1].entries() {
                        triplets.push((row_off[m + 1] + r, col_off[m] + c, v.clone()));
                    }
                }
            }
            differentials.push(SparseMatrix::from_triplets(
                total_dim(n + 1),
                total_dim(n),
                triplets,
            ));
        }
        let total = TotalComplex {
            n_max,
            piece_dims: piece_dims.to_vec(),
            differentials,
        };
        for n in 0..n_max {
            if !total.differentials[n + 1]
                .matmul(&total.differentials[n])
                .is_zero()
            {
                return Err(CocyclicError::DifferentialSquareNonzero { degree: n });
            }
        }
        Ok(total)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn differential(&self, n: usize) -> &SparseMatrix {
        &self.differentials[n]
    }

    pub fn total_dim(&self, n: usize) -> usize {
        total_components(n)
            .iter()
            .map(|&q| self.piece_dims[q])
            .sum()
    }

    /// Restricts the total complex to per-degree subspaces of the graded
    /// pieces (a (b,B)-subcomplex); closure failures surface as errors.
    pub fn restrict_to_subcomplex(
        &self,
        sub: &[LinearSubspace],
    ) -> Result<TotalComplex, CocyclicError> {
        assert!(
            sub.len() >= self.n_max + 2,
            "need subspaces for degrees 0..=n_max+1"
        );
        let piece_dims: Vec<usize> = sub.iter().map(|s| s.dim()).collect();
        let mut differentials = Vec::new();
        for n in 0..=self.n_max {
            let src: Vec<&LinearSubspace> = total_components(n).iter().map(|&q| &sub[q]).collect();
            let dst: Vec<&LinearSubspace> =
                total_components(n + 1).iter().map(|&q| &sub[q]).collect();
            let domain = LinearSubspace::direct_sum(&src);
            let codomain = LinearSubspace::direct_sum(&dst);
            differentials.push(
                restrict_operator(&self.differentials[n], &domain, &codomain).map_err(
                    |e| match e {
                        LinalgError::ImageEscapesCodomain { context } => {
                            LinalgError::ImageEscapesCodomain {
                                context: format!("total differential D^{n}: {context}"),
                            }
                        }
                        other => other,
                    },
                )?,
            );
        }
        let total = TotalComplex {
            n_max: self.n_max,
            piece_dims,
            differentials,
        };
        for n in 0..self.n_max {
            if !total.differentials[n + 1]
                .matmul(&total.differentials[n])
                .is_zero()
            {
                return Err(CocyclicError::DifferentialSquareNonzero { degree: n });
            }
        }
        Ok(total)
    }

    /// Dimension table for degrees `0..=n_max−1`; the top degree is dropped
    /// because its kernel is not truncation-stable.
    pub fn cohomology_dims(&self) -> HcReport {
        let mut rows = Vec::new();
        let mut prev_rank = 0usize;
        for n in 0..self.n_max {
            let rank = self.differentials[n].rank();
            let kernel_dim = self.total_dim(n) - rank;
            rows.push(HcRow {
                degree: n,
                kernel_dim,
                image_rank: prev_rank,
                hc_dim: kernel_dim - prev_rank,
                truncation_stable: true,
            });
            prev_rank = rank;
        }
        HcReport { rows }
    }
}
