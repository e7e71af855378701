//! Acceptance suite: every criterion runs as one test and prints a PASS line.
//!
//! Criteria:
//!  1. axiom suites on every built-in
//!  2. b² = B² = bB+Bb = D² = 0 as exact matrix identities
//!  3. cocyclic identity suite, plus the ambient negative control
//!  4. derived B equals the direct two-term formula entrywise
//!  5. the two equivariance conditions cut out the same subspace
//!  6. Ψ commutes with every cosimplicial and cyclic operator
//!  7. Ψ/Φ isomorphism and matching cohomology tables
//!  8. semisimple corollary: constant = plain HC of the crossed product
//!  9. hand-derived dimension values
//! 10. λ-complex oracle agrees with the (b,B) total complex
//! 11. constant complex with the unit subalgebra reproduces the plain theory
//! 12. byte-identical CLI output across runs

use cyclica::algebra::{dual_numbers, ground_field, SubalgebraInclusion};
use cyclica::algebra_complex::{hc_constant, hc_lambda, hc_plain, AlgebraCochainComplex};
use cyclica::cocyclic::MatrixCocyclicModule;
use cyclica::correspondence::{
    verify_bconstant_generalization, verify_corollary_semisimple, CorrespondencePair,
};
use cyclica::equivariant::{
    equivariant_subspace, equivariant_subspace_alt, hc_equivariant, hc_equivariant_normalized,
    EquivariantComplex,
};
use cyclica::hopf::ModuleAlgebraAction;
use cyclica::registry::{
    action_by_name, algebra_by_name, group_algebra, h4_on_dual_numbers, hopf_by_name,
    z2_on_dual_numbers, ALGEBRA_NAMES, HOPF_NAMES,
};
use cyclica::sparse::SparseMatrix;
use std::time::Instant;

fn crossed_products() -> Vec<cyclica::hopf::CrossedProductAlgebra> {
    vec![
        z2_on_dual_numbers().crossed_product().unwrap(),
        h4_on_dual_numbers().crossed_product().unwrap(),
    ]
}

/// Degree budget per criterion 2/3/4: deeper for small algebras.
fn identity_depth(dim: usize) -> usize {
    if dim <= 2 {
        4
    } else {
        3
    }
}

#[test]
fn criterion_01_axiom_suites() {
    let start = Instant::now();
    for name in ALGEBRA_NAMES {
        let report = algebra_by_name(name).unwrap().validate();
        assert!(report.passed(), "{name}: {:?}", report.violations());
    }
    for name in HOPF_NAMES {
        let report = hopf_by_name(name).unwrap().validate();
        assert!(report.passed(), "{name}: {:?}", report.violations());
    }
    for name in ["z2-on-dual-numbers", "h4-on-dual-numbers"] {
        let action = action_by_name(name).unwrap();
        let report = action.validate();
        assert!(report.passed(), "{name}: {:?}", report.violations());
    }
    for crossed in crossed_products() {
        let report = crossed.validate();
        assert!(
            report.passed(),
            "{}: {:?}",
            crossed.product.name(),
            report.violations()
        );
        assert!(crossed.include_a.validate().passed());
        assert!(crossed.include_h.validate().passed());
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "axiom suites took {elapsed:?} (budget 5 s)"
    );
    println!("PASS criterion 1: axiom suites on every built-in ({elapsed:?})");
}

#[test]
fn criterion_02_complex_identities() {
    let start = Instant::now();
    let mut subjects: Vec<cyclica::algebra::StructureConstantAlgebra> =
        vec![ground_field(), dual_numbers()];
    subjects.push(z2_on_dual_numbers().crossed_product().unwrap().product);
    for algebra in subjects {
        let depth = identity_depth(algebra.dim());
        let complex = AlgebraCochainComplex::build(&algebra, depth);
        let module = complex.module();
        for n in 0..depth {
            let bb = module.derived_b(n + 1).matmul(&module.derived_b(n));
            assert!(bb.is_zero(), "b² ≠ 0 at n={n} for {}", algebra.name());
        }
        for n in 0..depth.saturating_sub(1) {
            let big_bb = module.derived_big_b(n).matmul(&module.derived_big_b(n + 1));
            assert!(big_bb.is_zero(), "B² ≠ 0 at n={n} for {}", algebra.name());
            let anti = module
                .derived_b(n)
                .matmul(&module.derived_big_b(n))
                .add(&module.derived_big_b(n + 1).matmul(&module.derived_b(n + 1)));
            assert!(anti.is_zero(), "bB+Bb ≠ 0 at n={n} for {}", algebra.name());
        }
        // D² = 0 is verified inside build_total_complex; an error here fails the test
        let total = module.build_total_complex(depth).unwrap();
        for n in 0..depth {
            let dd = total.differential(n + 1).matmul(total.differential(n));
            assert!(dd.is_zero(), "D² ≠ 0 at n={n} for {}", algebra.name());
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 60.0,
        "complex identities took {elapsed:?} (budget 60 s)"
    );
    println!("PASS criterion 2: b², B², bB+Bb, D² all vanish exactly ({elapsed:?})");
}

#[test]
fn criterion_03_cocyclic_identity_suite() {
    let start = Instant::now();
    for name in ALGEBRA_NAMES {
        let algebra = algebra_by_name(name).unwrap();
        let complex = AlgebraCochainComplex::build(&algebra, 3);
        let report = complex.module().verify_cocyclic();
        assert!(report.passed(), "{name}: {:?}", report.violations());
    }
    for name in ["z2-on-dual-numbers", "h4-on-dual-numbers"] {
        let action = action_by_name(name).unwrap();
        let complex = EquivariantComplex::build(&action, 3).unwrap();
        let report = complex.ambient().verify_cocyclic();
        assert!(report.passed(), "{name} carrier: {:?}", report.violations());
    }
    // negative control: on the ambient space of the ℤ/2 action, t² ≠ id at n = 1
    let complex = EquivariantComplex::build(&z2_on_dual_numbers(), 1).unwrap();
    let t1 = complex.ambient().cyclic(1);
    assert_ne!(
        t1.matmul(t1),
        SparseMatrix::identity(complex.ambient_dim(1)),
        "ambient t² = id would make the carrier test vacuous"
    );
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 60.0,
        "cocyclic suite took {elapsed:?} (budget 60 s)"
    );
    println!(
        "PASS criterion 3: cocyclic identities on carriers, ambient control fails ({elapsed:?})"
    );
}

#[test]
fn criterion_04_derived_b_equals_direct_formula() {
    let start = Instant::now();
    for name in ALGEBRA_NAMES {
        let algebra = algebra_by_name(name).unwrap();
        let complex = AlgebraCochainComplex::build(&algebra, 4);
        for n in 0..=3 {
            assert_eq!(
                complex.module().derived_big_b(n),
                complex.direct_big_b(n),
                "{name} at n={n}"
            );
        }
    }
    println!(
        "PASS criterion 4: derived B equals the direct two-term formula entrywise ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_05_equivariance_conditions_agree() {
    let start = Instant::now();
    let z2 = z2_on_dual_numbers();
    for n in 0..=3 {
        assert_eq!(
            equivariant_subspace(&z2, n),
            equivariant_subspace_alt(&z2, n),
            "z2 at n={n}"
        );
    }
    let h4 = h4_on_dual_numbers();
    for n in 0..=2 {
        assert_eq!(
            equivariant_subspace(&h4, n),
            equivariant_subspace_alt(&h4, n),
            "h4 at n={n}"
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "subspace comparison took {elapsed:?} (budget 30 s)"
    );
    println!(
        "PASS criterion 5: both equivariance conditions cut out the same subspace ({elapsed:?})"
    );
}

#[test]
fn criterion_06_psi_commutes_with_operators() {
    let start = Instant::now();
    for action in [z2_on_dual_numbers(), h4_on_dual_numbers()] {
        let pair = CorrespondencePair::build(&action, 3).unwrap();
        let report = pair.verify_cyclic_map();
        assert!(
            report.passed(),
            "{}: {:?}",
            action.name(),
            report.violations()
        );
    }
    println!(
        "PASS criterion 6: all operator-commutation residuals vanish on the carrier ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_07_theorem() {
    let start = Instant::now();
    // ℤ/2: matrix identities at n ≤ 3, cohomology tables at n = 0..2
    let z2_pair = CorrespondencePair::build(&z2_on_dual_numbers(), 3).unwrap();
    assert!(z2_pair.verify_image_constant().passed());
    assert!(z2_pair.verify_theorem().passed());
    assert!(z2_pair.verify_psi_injective().passed());
    let (match_report, equivariant, constant) = z2_pair.verify_hc_match().unwrap();
    assert!(match_report.passed());
    assert_eq!(equivariant.dims(), constant.dims());

    // Sweedler H₄: matrix identities at n ≤ 2, tables at n = 0..1
    let h4_pair = CorrespondencePair::build(&h4_on_dual_numbers(), 2).unwrap();
    assert!(h4_pair.verify_image_constant().passed());
    assert!(h4_pair.verify_theorem().passed());
    assert!(h4_pair.verify_psi_injective().passed());
    let (match_report, equivariant, constant) = h4_pair.verify_hc_match().unwrap();
    assert!(match_report.passed());
    assert_eq!(equivariant.dims(), constant.dims());

    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 300.0,
        "theorem suite took {elapsed:?} (budget 5 min)"
    );
    println!("PASS criterion 7: Ψ/Φ isomorphism and HC*_H(A) = HC*(A⋊H; H) ({elapsed:?})");
}

#[test]
fn criterion_08_semisimple_corollary() {
    let start = Instant::now();
    // H = ℚ[ℤ/2] with the sign action on the dual numbers
    let (report, constant, plain) = verify_corollary_semisimple(&z2_on_dual_numbers(), 3).unwrap();
    assert!(report.passed(), "{:?}", report.violations());
    assert_eq!(constant.dims(), plain.dims());
    assert_eq!(constant.rows.len(), 3);

    // H = ℚ[ℤ/3] acting trivially on the dual numbers
    let z3 = ModuleAlgebraAction::trivial(group_algebra(3), dual_numbers());
    let (report, constant, plain) = verify_corollary_semisimple(&z3, 3).unwrap();
    assert!(report.passed(), "{:?}", report.violations());
    assert_eq!(constant.dims(), plain.dims());
    println!(
        "PASS criterion 8: semisimple corollary for ℚ[ℤ/2] and ℚ[ℤ/3] ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_09_known_dimension_values() {
    let start = Instant::now();
    assert_eq!(
        hc_plain(&ground_field(), 4).unwrap().dims(),
        vec![1, 0, 1, 0]
    );
    assert_eq!(hc_plain(&dual_numbers(), 1).unwrap().dim_at(0), Some(2));
    let crossed = z2_on_dual_numbers().crossed_product().unwrap();
    assert_eq!(hc_plain(&crossed.product, 1).unwrap().dim_at(0), Some(2));
    assert_eq!(
        hc_constant(&crossed.product, &crossed.include_h, 1)
            .unwrap()
            .dim_at(0),
        Some(2)
    );
    println!(
        "PASS criterion 9: hand-derived dimension values ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_10_lambda_oracle() {
    let start = Instant::now();
    for name in ALGEBRA_NAMES {
        let algebra = algebra_by_name(name).unwrap();
        let depth = if algebra.dim() <= 2 { 4 } else { 3 };
        let plain = hc_plain(&algebra, depth).unwrap();
        let lambda = hc_lambda(&algebra, depth).unwrap();
        assert_eq!(plain.dims(), lambda.dims(), "{name}");
    }
    println!(
        "PASS criterion 10: λ-complex oracle agrees with the (b,B) total complex ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_11_normalization_consistency() {
    let start = Instant::now();
    for name in ALGEBRA_NAMES {
        let algebra = algebra_by_name(name).unwrap();
        let inc = SubalgebraInclusion::unit_span(&algebra);
        let plain = hc_plain(&algebra, 3).unwrap();
        let constant = hc_constant(&algebra, &inc, 3).unwrap();
        assert_eq!(plain.dims(), constant.dims(), "{name}");
    }
    // B = k·1 in the equivariant theory reproduces the theorem pipeline
    let action = z2_on_dual_numbers();
    let unit = SubalgebraInclusion::unit_span(action.alg());
    let report = verify_bconstant_generalization(&action, &unit, 2).unwrap();
    assert!(report.passed(), "{:?}", report.violations());
    // and the full-carrier vs normalized equivariant dims coincide
    assert_eq!(
        hc_equivariant(&action, 3).unwrap().dims(),
        hc_equivariant_normalized(&action, 3).unwrap().dims()
    );
    println!(
        "PASS criterion 11: unit-subalgebra constant theory = plain theory ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_12_deterministic_cli_output() {
    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_cyclica");
    let run = || {
        std::process::Command::new(bin)
            .args([
                "verify",
                "theorem",
                "--action",
                "z2-on-dual-numbers",
                "--max-degree",
                "3",
                "--format",
                "json",
            ])
            .output()
            .expect("cyclica binary runs")
    };
    let first = run();
    let second = run();
    assert!(
        first.status.success(),
        "{}",
        String::from_utf8_lossy(&first.stderr)
    );
    assert_eq!(first.stdout, second.stdout, "output differs between runs");
    assert!(!first.stdout.is_empty());
    println!(
        "PASS criterion 12: byte-identical CLI output across runs ({:?})",
        start.elapsed()
    );
}

/// Extra guard: the corrupted-module control from the engine must FAIL, so
/// the identity suite is known to be non-vacuous at the matrix level too.
#[test]
fn corrupted_cyclic_operator_fails_the_suite() {
    let algebra = z2_on_dual_numbers().crossed_product().unwrap().product;
    let complex = AlgebraCochainComplex::build(&algebra, 2);
    let m = complex.module();
    let mut cyclic: Vec<SparseMatrix> = (0..=2).map(|n| m.cyclic(n).clone()).collect();
    cyclic[1] = SparseMatrix::identity(m.space_dim(1));
    let broken = MatrixCocyclicModule::new(
        "broken",
        (0..=3).map(|n| m.space_dim(n)).collect(),
        (0..=2)
            .map(|n| (0..=n + 1).map(|i| m.face(n, i).clone()).collect())
            .collect(),
        (0..=2)
            .map(|n| (0..n).map(|j| m.degeneracy(n, j).clone()).collect())
            .collect(),
        cyclic,
        None,
    );
    assert!(!broken.verify_cocyclic().passed());
}
