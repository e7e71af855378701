//! Built-in example registry: named algebras, Hopf algebras, and actions.
//!
//! Every entry passes its validators; `validate_all_builtins` re-proves that
//! and is run by the acceptance suite.

use crate::algebra::{dual_numbers, ground_field, StructureConstantAlgebra};
use crate::hopf::{HopfAlgebraData, ModuleAlgebraAction};
use crate::scalar::{int, Scalar};
use crate::sparse::SparseMatrix;
use num::One;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RegistryError {
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("unknown hopf algebra `{0}`")]
    UnknownHopf(String),
    #[error("unknown action `{0}`")]
    UnknownAction(String),
}

pub const ALGEBRA_NAMES: &[&str] = &[
    "ground-field",
    "dual-numbers",
    "group-algebra:z2",
    "group-algebra:z3",
    "group-algebra:z4",
    "group-algebra:z5",
    "group-algebra:z6",
    "sweedler-h4",
];

pub const HOPF_NAMES: &[&str] = &[
    "ground-field",
    "group-algebra:z2",
    "group-algebra:z3",
    "group-algebra:z4",
    "group-algebra:z5",
    "group-algebra:z6",
    "sweedler-h4",
];

pub const ACTION_NAMES: &[&str] = &["z2-on-dual-numbers", "h4-on-dual-numbers"];

/// The ground field as a (trivially semisimple) Hopf algebra.
pub fn ground_field_hopf() -> HopfAlgebraData {
    HopfAlgebraData::new(
        ground_field(),
        vec![(0, 0, 0, int(1))],
        vec![int(1)],
        SparseMatrix::identity(1),
        SparseMatrix::identity(1),
        Some(true),
    )
    .expect("ground field hopf data is well-formed")
}

/// Group algebra ℚ[ℤ/n] with basis `1, g, …, g^{n−1}`; grouplike coproduct,
/// antipode `g^i ↦ g^{−i}`. Semisimple (characteristic zero).
pub fn group_algebra(n: usize) -> HopfAlgebraData {
    assert!(n >= 1, "group order must be positive");
    let labels: Vec<String> = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        })
        .collect();
    let mut mul = Vec::new();
    for i in 0..n {
        for j in 0..n {
            mul.push((i, j, (i + j) % n, int(1)));
        }
    }
    let mut unit = vec![Scalar::one()];
    unit.resize(n, int(0));
    let alg = StructureConstantAlgebra::new(format!("group-algebra:z{n}"), labels, mul, unit)
        .expect("group algebra structure constants are well-formed");
    let coproduct = (0..n).map(|i| (i, i, i, int(1))).collect();
    let counit = vec![Scalar::one(); n];
    let antipode = SparseMatrix::from_triplets(n, n, (0..n).map(|i| ((n - i) % n, i, int(1))));
    HopfAlgebraData::new(
        alg,
        coproduct,
        counit,
        antipode.clone(),
        antipode,
        Some(true),
    )
    .expect("group algebra hopf data is well-formed")
}

/// Sweedler's four-dimensional Hopf algebra H₄ with basis `{1, g, x, gx}`:
/// `g² = 1`, `x² = 0`, `xg = −gx`, `Δx = x⊗1 + g⊗x`, `S(x) = −gx`,
/// `S⁻¹(x) = gx`. Not semisimple; `S² ≠ id`.
pub fn sweedler_h4() -> HopfAlgebraData {
    let (one, g, x, gx) = (0usize, 1usize, 2usize, 3usize);
    let labels = vec![
        "1".to_string(),
        "g".to_string(),
        "x".to_string(),
        "gx".to_string(),
    ];
    let mut mul = Vec::new();
    for i in 0..4 {
        mul.push((one, i, i, int(1)));
        if i != one {
            mul.push((i, one, i, int(1)));
        }
    }
    mul.push((g, g, one, int(1)));
    mul.push((g, x, gx, int(1)));
    mul.push((g, gx, x, int(1)));
    mul.push((x, g, gx, int(-1)));
    mul.push((gx, g, x, int(-1)));
    // x·x = x·gx = gx·x = gx·gx = 0: no triples
    let alg = StructureConstantAlgebra::new(
        "sweedler-h4",
        labels,
        mul,
        vec![int(1), int(0), int(0), int(0)],
    )
    .expect("sweedler structure constants are well-formed");
    let coproduct = vec![
        (one, one, one, int(1)),
        (g, g, g, int(1)),
        (x, x, one, int(1)),
        (x, g, x, int(1)),
        (gx, gx, g, int(1)),
        (gx, one, gx, int(1)),
    ];
    let counit = vec![int(1), int(1), int(0), int(0)];
    // S: 1↦1, g↦g, x↦−gx, gx↦x
    let antipode = SparseMatrix::from_triplets(
        4,
        4,
        vec![
            (one, one, int(1)),
            (g, g, int(1)),
            (gx, x, int(-1)),
            (x, gx, int(1)),
        ],
    );
    // S⁻¹: 1↦1, g↦g, x↦gx, gx↦−x
    let antipode_inv = SparseMatrix::from_triplets(
        4,
        4,
        vec![
            (one, one, int(1)),
            (g, g, int(1)),
            (gx, x, int(1)),
            (x, gx, int(-1)),
        ],
    );
    HopfAlgebraData::new(alg, coproduct, counit, antipode, antipode_inv, Some(false))
        .expect("sweedler hopf data is well-formed")
}

/// ℤ/2 on the dual numbers: `g(x) = −x`.
pub fn z2_on_dual_numbers() -> ModuleAlgebraAction {
    ModuleAlgebraAction::new(
        "z2-on-dual-numbers",
        group_algebra(2),
        dual_numbers(),
        vec![
            (0, 0, 0, int(1)),
            (0, 1, 1, int(1)),
            (1, 0, 0, int(1)),
            (1, 1, 1, int(-1)),
        ],
    )
    .expect("z2 action data is well-formed")
}

/// Sweedler H₄ on the dual numbers: `g(x) = −x`, `x_H(1) = 0`, `x_H(x) = 1`.
pub fn h4_on_dual_numbers() -> ModuleAlgebraAction {
    ModuleAlgebraAction::new(
        "h4-on-dual-numbers",
        sweedler_h4(),
        dual_numbers(),
        vec![
            (0, 0, 0, int(1)),
            (0, 1, 1, int(1)),
            (1, 0, 0, int(1)),
            (1, 1, 1, int(-1)),
            // x_H: 1 ↦ 0, x ↦ 1; gx acts as g∘x_H: 1 ↦ 0, x ↦ 1
            (2, 1, 0, int(1)),
            (3, 1, 0, int(1)),
        ],
    )
    .expect("h4 action data is well-formed")
}

pub fn algebra_by_name(name: &str) -> Result<StructureConstantAlgebra, RegistryError> {
    if let Ok(h) = hopf_by_name(name) {
        return Ok(h.alg().clone());
    }
    match name {
        "dual-numbers" => Ok(dual_numbers()),
        _ => Err(RegistryError::UnknownAlgebra(name.to_string())),
    }
}

pub fn hopf_by_name(name: &str) -> Result<HopfAlgebraData, RegistryError> {
    match name {
        "ground-field" => Ok(ground_field_hopf()),
        "sweedler-h4" => Ok(sweedler_h4()),
        _ => {
            if let Some(rest) = name.strip_prefix("group-algebra:z") {
                if let Ok(n) = rest.parse::<usize>() {
                    if (2..=6).contains(&n) {
                        return Ok(group_algebra(n));
                    }
                }
            }
            Err(RegistryError::UnknownHopf(name.to_string()))
        }
    }
}

/// Resolves an action name: the two concrete built-ins plus the parametric
/// family `trivial:<hopf>-on-<alg>`.
pub fn action_by_name(name: &str) -> Result<ModuleAlgebraAction, RegistryError> {
    match name {
        "z2-on-dual-numbers" => Ok(z2_on_dual_numbers()),
        "h4-on-dual-numbers" => Ok(h4_on_dual_numbers()),
        _ => {
            if let Some(rest) = name.strip_prefix("trivial:") {
                if let Some((hopf_name, alg_name)) = rest.split_once("-on-") {
                    let hopf = hopf_by_name(hopf_name)
                        .map_err(|_| RegistryError::UnknownAction(name.to_string()))?;
                    let alg = algebra_by_name(alg_name)
                        .map_err(|_| RegistryError::UnknownAction(name.to_string()))?;
                    return Ok(ModuleAlgebraAction::trivial(hopf, alg));
                }
            }
            Err(RegistryError::UnknownAction(name.to_string()))
        }
    }
}

/// Names listed by `cyclica list`, grouped and sorted.
pub fn listing() -> Vec<(String, Vec<String>)> {
    vec![
        (
            "algebras".to_string(),
            ALGEBRA_NAMES.iter().map(|s| s.to_string()).collect(),
        ),
        (
            "hopf-algebras".to_string(),
            HOPF_NAMES.iter().map(|s| s.to_string()).collect(),
        ),
        (
            "actions".to_string(),
            ACTION_NAMES
                .iter()
                .map(|s| s.to_string())
                .chain(std::iter::once("trivial:<hopf>-on-<algebra>".to_string()))
                .collect(),
        ),
    ]
}
