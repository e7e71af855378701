//! Command-line workbench: validate spec files, compute cyclic cohomology
//! tables, and run the verification suites.
//!
//! Exit codes: 0 on success / all checks pass, 1 on a verification or
//! validation failure, 2 on bad input. Output is byte-deterministic for
//! identical inputs. `CYCLICA_THREADS` bounds worker parallelism.

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclica::algebra::{StructureConstantAlgebra, SubalgebraInclusion};
use cyclica::algebra_complex::{hc_constant, hc_lambda, hc_plain, AlgebraCochainComplex};
use cyclica::correspondence::{
    verify_bconstant_generalization, verify_corollary_semisimple, CorrespondencePair,
};
use cyclica::equivariant::{
    equivariant_subspace, equivariant_subspace_alt, hc_equivariant, EquivariantComplex,
};
use cyclica::hopf::ModuleAlgebraAction;
use cyclica::registry;
use cyclica::report::{CheckOutcome, HcReport, ValidationReport};
use cyclica::specfile::SpecFile;
use serde::Serialize;
use std::path::Path;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cyclica", version, about = "Exact cyclic cohomology workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// List the built-in algebras, Hopf algebras, and actions.
    List,
    /// Validate a built-in or spec file (all axioms, every violation listed).
    Validate {
        /// Built-in name or path to a JSON spec file.
        target: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compute cohomology dimension tables.
    #[command(subcommand)]
    Compute(ComputeKind),
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        which: VerifyWhich,
        #[command(flatten)]
        input: InputArgs,
    },
}

#[derive(Subcommand)]
enum ComputeKind {
    /// Cyclic cohomology dimensions HCⁿ for n < max-degree.
    Hc(InputArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Built-in algebra name or spec file.
    #[arg(long, conflicts_with = "action")]
    algebra: Option<String>,
    /// Built-in action name or spec file; computations run on the crossed
    /// product (or the equivariant complex).
    #[arg(long)]
    action: Option<String>,
    /// Which complex to compute/verify on.
    #[arg(long, value_enum, default_value_t = ComplexKind::Plain)]
    complex: ComplexKind,
    /// Subalgebra for constant/B-constant complexes: "unit", "full", or a
    /// spec file with a subalgebra block. Defaults to 1⊗H on crossed products
    /// and to "unit" otherwise.
    #[arg(long)]
    subalgebra: Option<String>,
    /// Top total degree; the table reports degrees 0..max-degree−1.
    /// Defaults to 3 for dimension ≤ 2 and 2 otherwise.
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Allow algebras of dimension > 8 (cochain spaces grow as d^{n+1}).
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ComplexKind {
    Plain,
    Lambda,
    Constant,
    Equivariant,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyWhich {
    /// Cocyclic identity suite (on the equivariant carrier for actions).
    Cocyclic,
    /// The two equivariance conditions cut out the same subspace.
    Lemma1,
    /// Ψ commutes with all cosimplicial and cyclic operators.
    PsiCyclic,
    /// Ψ maps normalized equivariant cochains into constant cochains.
    ImageConstant,
    /// The full isomorphism: matrix identities plus dimension tables.
    Theorem,
    /// Semisimple corollary: constant = plain HC of the crossed product.
    Corollary,
    /// The B-constant generalization for a sub-module-algebra B ⊆ A.
    Bconstant,
    /// Everything applicable to the input.
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// Anything a computation can run on.
#[allow(clippy::large_enum_variant)]
enum Target {
    Algebra(StructureConstantAlgebra),
    Action(ModuleAlgebraAction),
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    BadInput(String),
    #[error("{0}")]
    Failure(String),
}

fn bad_input(msg: impl Into<String>) -> CliError {
    CliError::BadInput(msg.into())
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::List => cmd_list(),
        Command::Validate { target, format } => cmd_validate(&target, format),
        Command::Compute(ComputeKind::Hc(input)) => cmd_compute_hc(&input),
        Command::Verify { which, input } => cmd_verify(which, &input),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failure(msg)) => {
            eprintln!("FAIL: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::BadInput(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() {
    if let Ok(value) = std::env::var("CYCLICA_THREADS") {
        match value.parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => eprintln!("warning: ignoring invalid CYCLICA_THREADS=`{value}`"),
        }
    }
}

fn cmd_list() -> Result<(), CliError> {
    for (group, names) in registry::listing() {
        println!("{group}:");
        for name in names {
            println!("  {name}");
        }
    }
    Ok(())
}

/// Resolves a name-or-path to the most specific kind it denotes.
fn resolve_target(target: &str) -> Result<Target, CliError> {
    if let Ok(action) = registry::action_by_name(target) {
        return Ok(Target::Action(action));
    }
    if let Ok(algebra) = registry::algebra_by_name(target) {
        return Ok(Target::Algebra(algebra));
    }
    let path = Path::new(target);
    if path.exists() {
        let spec = SpecFile::parse_path(path).map_err(|e| bad_input(e.to_string()))?;
        let resolved = spec.resolve().map_err(|e| match e {
            cyclica::specfile::SpecError::Validation {
                subject,
                violations,
            } => CliError::Failure(format!("{subject}: {}", violations.join("; "))),
            other => bad_input(other.to_string()),
        })?;
        if let Some(action) = resolved.action {
            return Ok(Target::Action(action));
        }
        if let Some(hopf) = resolved.hopf {
            return Ok(Target::Algebra(hopf.alg().clone()));
        }
        return Ok(Target::Algebra(resolved.algebra));
    }
    Err(bad_input(format!(
        "`{target}` is neither a built-in (see `cyclica list`) nor an existing file"
    )))
}

fn cmd_validate(target: &str, format: Format) -> Result<(), CliError> {
    let mut report = ValidationReport::new(target.to_string());
    if let Ok(action) = registry::action_by_name(target) {
        report.merge(action.hopf().validate());
        report.merge(action.alg().validate());
        report.merge(action.validate());
        let crossed = action.crossed_product_unchecked();
        report.merge(crossed.validate());
    } else if let Ok(hopf) = registry::hopf_by_name(target) {
        report.merge(hopf.validate());
    } else if let Ok(algebra) = registry::algebra_by_name(target) {
        report.merge(algebra.validate());
    } else {
        let path = Path::new(target);
        if !path.exists() {
            return Err(bad_input(format!(
                "`{target}` is neither a built-in nor an existing file"
            )));
        }
        let spec = SpecFile::parse_path(path).map_err(|e| bad_input(e.to_string()))?;
        match spec.resolve() {
            Ok(resolved) => {
                report.merge(resolved.algebra.validate());
                if let Some(h) = &resolved.hopf {
                    report.merge(h.validate());
                }
                if let Some(a) = &resolved.action {
                    report.merge(a.validate());
                }
                if let Some(s) = &resolved.subalgebra {
                    report.merge(s.validate());
                }
            }
            Err(cyclica::specfile::SpecError::Validation {
                subject,
                violations,
            }) => {
                report.push(CheckOutcome::new(subject, violations));
            }
            Err(other) => return Err(bad_input(other.to_string())),
        }
    }
    print_validation(&report, format, "validate", target);
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Failure(format!(
            "{} check(s) failed",
            report.violations().len()
        )))
    }
}

/// Degree defaults and the dimension gate. `--max-degree 0` still reports
/// degree 0, so the total-complex parameter is clamped to at least 1.
fn effective_degree(input: &InputArgs, dim: usize) -> Result<usize, CliError> {
    if dim > 8 && !input.force {
        return Err(bad_input(format!(
            "dimension {dim} exceeds 8; cochain spaces grow as d^(n+1) — pass --force to proceed"
        )));
    }
    Ok(input
        .max_degree
        .unwrap_or(if dim <= 2 { 3 } else { 2 })
        .max(1))
}

fn resolve_input(input: &InputArgs) -> Result<Target, CliError> {
    match (&input.algebra, &input.action) {
        (Some(_), Some(_)) => Err(bad_input("pass either --algebra or --action, not both")),
        (Some(name), None) => match resolve_target(name)? {
            Target::Algebra(a) => Ok(Target::Algebra(a)),
            Target::Action(act) => Ok(Target::Algebra(act.alg().clone())),
        },
        (None, Some(name)) => match resolve_target(name)? {
            Target::Action(act) => Ok(Target::Action(act)),
            Target::Algebra(_) => Err(bad_input(format!("`{name}` does not describe an action"))),
        },
        (None, None) => Err(bad_input("pass --algebra or --action")),
    }
}

/// Subalgebra resolution for constant/B-constant complexes.
fn resolve_subalgebra(
    spec: Option<&str>,
    algebra: &StructureConstantAlgebra,
) -> Result<SubalgebraInclusion, CliError> {
    match spec.unwrap_or("unit") {
        "unit" => Ok(SubalgebraInclusion::unit_span(algebra)),
        "full" => Ok(SubalgebraInclusion::identity(algebra)),
        path => {
            let file =
                SpecFile::parse_path(Path::new(path)).map_err(|e| bad_input(e.to_string()))?;
            let resolved = file.resolve().map_err(|e| bad_input(e.to_string()))?;
            let inc = resolved
                .subalgebra
                .ok_or_else(|| bad_input(format!("`{path}` has no subalgebra block")))?;
            if inc.big != *algebra {
                return Err(bad_input(format!(
                    "subalgebra in `{path}` embeds into a different algebra"
                )));
            }
            Ok(inc)
        }
    }
}

fn cmd_compute_hc(input: &InputArgs) -> Result<(), CliError> {
    let target = resolve_input(input)?;
    let run = |e: cyclica::cocyclic::CocyclicError| CliError::Failure(e.to_string());
    let (subject, report) = match &target {
        Target::Algebra(algebra) => {
            let max_degree = effective_degree(input, algebra.dim())?;
            let report = match input.complex {
                ComplexKind::Plain => hc_plain(algebra, max_degree).map_err(run)?,
                ComplexKind::Lambda => hc_lambda(algebra, max_degree).map_err(run)?,
                ComplexKind::Constant => {
                    let inc = resolve_subalgebra(input.subalgebra.as_deref(), algebra)?;
                    hc_constant(algebra, &inc, max_degree).map_err(run)?
                }
                ComplexKind::Equivariant => {
                    return Err(bad_input("--complex equivariant requires --action"));
                }
            };
            (algebra.name().to_string(), report)
        }
        Target::Action(action) => {
            let crossed = action
                .crossed_product()
                .map_err(|e| CliError::Failure(e.to_string()))?;
            let max_degree = effective_degree(input, crossed.product.dim())?;
            let report = match input.complex {
                ComplexKind::Plain => hc_plain(&crossed.product, max_degree).map_err(run)?,
                ComplexKind::Lambda => hc_lambda(&crossed.product, max_degree).map_err(run)?,
                ComplexKind::Constant => {
                    let inc = match input.subalgebra.as_deref() {
                        None => crossed.include_h.clone(),
                        Some(spec) => resolve_subalgebra(Some(spec), &crossed.product)?,
                    };
                    hc_constant(&crossed.product, &inc, max_degree).map_err(run)?
                }
                ComplexKind::Equivariant => hc_equivariant(action, max_degree)
                    .map_err(|e| CliError::Failure(e.to_string()))?,
            };
            let subject = match input.complex {
                ComplexKind::Equivariant => action.name().to_string(),
                _ => crossed.product.name().to_string(),
            };
            (subject, report)
        }
    };
    print_hc(&report, input.format, &subject, complex_name(input.complex));
    Ok(())
}

fn complex_name(kind: ComplexKind) -> &'static str {
    match kind {
        ComplexKind::Plain => "plain",
        ComplexKind::Lambda => "lambda",
        ComplexKind::Constant => "constant",
        ComplexKind::Equivariant => "equivariant",
    }
}

fn cmd_verify(which: VerifyWhich, input: &InputArgs) -> Result<(), CliError> {
    let target = resolve_input(input)?;
    let mut report = ValidationReport::new(match &target {
        Target::Algebra(a) => a.name().to_string(),
        Target::Action(a) => a.name().to_string(),
    });
    match (&target, which) {
        (Target::Algebra(algebra), VerifyWhich::Cocyclic | VerifyWhich::All) => {
            let max_degree = effective_degree(input, algebra.dim())?;
            let complex = AlgebraCochainComplex::build(algebra, max_degree);
            report.merge(complex.module().verify_cocyclic());
        }
        (Target::Algebra(_), _) => {
            return Err(bad_input("this verification requires --action"));
        }
        (Target::Action(action), which) => {
            let crossed_dim = action.alg().dim() * action.hopf().dim();
            let max_degree = effective_degree(input, crossed_dim)?;
            let wanted = |w: VerifyWhich| which == w || which == VerifyWhich::All;
            if wanted(VerifyWhich::Cocyclic) {
                let complex = EquivariantComplex::build(action, max_degree)
                    .map_err(|e| CliError::Failure(e.to_string()))?;
                report.merge(complex.ambient().verify_cocyclic());
            }
            if wanted(VerifyWhich::Lemma1) {
                for n in 0..=max_degree {
                    let main = equivariant_subspace(action, n);
                    let alt = equivariant_subspace_alt(action, n);
                    report.push(
                        CheckOutcome::new(
                            format!("equivariance conditions agree at n={n}"),
                            if main == alt {
                                Vec::new()
                            } else {
                                vec![format!("dims {} vs {}", main.dim(), alt.dim())]
                            },
                        )
                        .with_notes(vec![format!("dim = {}", main.dim())]),
                    );
                }
            }
            if wanted(VerifyWhich::PsiCyclic)
                || wanted(VerifyWhich::ImageConstant)
                || wanted(VerifyWhich::Theorem)
            {
                let pair = CorrespondencePair::build(action, max_degree)
                    .map_err(|e| CliError::Failure(e.to_string()))?;
                if wanted(VerifyWhich::PsiCyclic) {
                    report.merge(pair.verify_cyclic_map());
                }
                if wanted(VerifyWhich::ImageConstant) {
                    report.merge(pair.verify_image_constant());
                }
                if wanted(VerifyWhich::Theorem) {
                    report.merge(pair.verify_theorem());
                    report.merge(pair.verify_psi_injective());
                    let (hc_report, _, _) = pair
                        .verify_hc_match()
                        .map_err(|e| CliError::Failure(e.to_string()))?;
                    report.merge(hc_report);
                }
            }
            if wanted(VerifyWhich::Corollary) {
                let (corollary, _, _) =
                    verify_corollary_semisimple(action, max_degree).map_err(|e| match e {
                        cyclica::correspondence::CorrespondenceError::NotDeclaredSemisimple => {
                            bad_input(e.to_string())
                        }
                        other => CliError::Failure(other.to_string()),
                    })?;
                report.merge(corollary);
            }
            if wanted(VerifyWhich::Bconstant) {
                let inc = resolve_subalgebra(input.subalgebra.as_deref(), action.alg())?;
                let bconstant = verify_bconstant_generalization(action, &inc, max_degree)
                    .map_err(|e| CliError::Failure(e.to_string()))?;
                report.merge(bconstant);
            }
        }
    }
    let subject = report.subject.clone();
    print_validation(&report, input.format, "verify", &subject);
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Failure(format!(
            "{} check(s) failed",
            report.violations().len()
        )))
    }
}

// ---- output ----------------------------------------------------------------

#[derive(Serialize)]
struct HcOutput<'a> {
    command: &'static str,
    subject: &'a str,
    complex: &'a str,
    rows: &'a [cyclica::report::HcRow],
}

fn print_hc(report: &HcReport, format: Format, subject: &str, complex: &str) {
    match format {
        Format::Text => {
            println!("HC table for {subject} ({complex} complex)");
            println!(
                "{:>6} {:>10} {:>10} {:>6}  stable",
                "degree", "ker D^n", "im D^n-1", "HC^n"
            );
            for row in &report.rows {
                println!(
                    "{:>6} {:>10} {:>10} {:>6}  {}",
                    row.degree, row.kernel_dim, row.image_rank, row.hc_dim, row.truncation_stable
                );
            }
        }
        Format::Json => {
            let out = HcOutput {
                command: "compute-hc",
                subject,
                complex,
                rows: &report.rows,
            };
            println!(
                "{}",
                serde_json::to_string(&out).expect("hc output serializes")
            );
        }
        Format::Csv => {
            println!("degree,kernel_dim,image_rank,hc_dim,truncation_stable");
            for row in &report.rows {
                println!(
                    "{},{},{},{},{}",
                    row.degree, row.kernel_dim, row.image_rank, row.hc_dim, row.truncation_stable
                );
            }
        }
    }
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    command: &'a str,
    subject: &'a str,
    passed: bool,
    checks: &'a [CheckOutcome],
}

fn print_validation(report: &ValidationReport, format: Format, command: &str, subject: &str) {
    match format {
        Format::Text => {
            for check in &report.checks {
                let verdict = if check.passed { "PASS" } else { "FAIL" };
                println!("[{verdict}] {}", check.name);
                for note in &check.notes {
                    println!("       {note}");
                }
                for violation in &check.violations {
                    println!("       violation: {violation}");
                }
            }
            println!(
                "{}: {} — {}",
                command,
                subject,
                if report.passed() {
                    "all checks passed"
                } else {
                    "FAILED"
                }
            );
        }
        Format::Json => {
            let out = VerifyOutput {
                command,
                subject,
                passed: report.passed(),
                checks: &report.checks,
            };
            println!(
                "{}",
                serde_json::to_string(&out).expect("verify output serializes")
            );
        }
        Format::Csv => {
            println!("check,passed,violations,notes");
            for check in &report.checks {
                println!(
                    "{:?},{},{:?},{:?}",
                    check.name,
                    check.passed,
                    check.violations.join("; "),
                    check.notes.join("; ")
                );
            }
        }
    }
}
