//! `wilsoneq`: exact verification of Wilson-type functional equation
//! classifications on finite semigroups, plus the symbolic (ℚᵈ,+) backend.
//!
//! Exit-code contract, stable across subcommands:
//!   0 = verified / valid, 1 = mathematical counterexample or invalid
//!   structure, 2 = usage or input error.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use wilsoneq::funcspace::enumerate_multiplicative;
use wilsoneq::io::{load_draw, load_instance, LoadError};
use wilsoneq::oracle::{
    central_weighted_check, companion_grid_completeness, cube_vanishing_check, census_verify,
    transpose_symmetry_check, verify_completeness_opts, CensusConfig, CensusReport,
    CompanionGridReport, CompletenessReport, CentralWeightedReport, CubeVanishingReport,
    Equation, TransposeSymmetryReport,
};
use wilsoneq::qspace::{self, verify_explicit_draw, verify_family3_grid, GaussQ, LinFormQ};
use wilsoneq::semigroup::ENUMERATION_CAP;
use wilsoneq::wilson::{
    classify_eq1, classify_eq2, make_dalembert, residual_dalembert_variant, SolutionFamily,
    StructureInstance,
};

const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "wilsoneq",
    version,
    about = "Construct and independently verify the complete solution families of \
             Wilson-type functional equations on finite semigroups, exactly."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum EquationArg {
    /// f(xy) + μ(y)f(σ(y)x) = 2f(x)g(y)
    Eq1,
    /// f(xy) + μ(y)f(σ(y)x) = 2f(y)g(x)
    Eq2,
    /// g(xy) + μ(y)g(σ(y)x) = 2g(x)g(y)
    Dalembert,
}

#[derive(Subcommand)]
enum Command {
    /// Check a semigroup table or instance file: associativity,
    /// square-generation, and σ/μ admissibility when provided.
    Validate {
        /// Table file (text or JSON) or instance spec (JSON).
        path: PathBuf,
    },
    /// List the complete solution families for an instance.
    Classify {
        /// Instance spec or bare table file.
        path: PathBuf,
        /// Which equation to classify.
        #[arg(long, value_enum, default_value = "eq1")]
        equation: EquationArg,
        /// Write the structured report as JSON to this path.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Verify the classification against the exact kernel oracle on one
    /// instance (both equations plus structural checks by default).
    Verify {
        /// Instance spec or bare table file.
        path: PathBuf,
        /// Restrict to one equation (default: both plus structural checks).
        #[arg(long, value_enum)]
        equation: Option<EquationArg>,
        /// Number of seeded random g candidates per equation.
        #[arg(long, default_value_t = 20)]
        random_g: usize,
        /// Master seed for the random candidates.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the structured report as JSON to this path.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Deliberately corrupt every predicted space (self-test of the
        /// failure detector; must exit 1).
        #[arg(long, hide = true)]
        corrupt_predicted: bool,
    },
    /// Enumerate every semigroup up to an order and run the full
    /// soundness/completeness suite on each admissible instance.
    Census {
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of seeded random g candidates per instance and equation.
        #[arg(long, default_value_t = 20)]
        random_g: usize,
        /// Worker threads (default: all cores). Parallel across instances
        /// only; reports merge in enumeration order.
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the structured report as JSON to this path.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Verify singular-family draws on the symbolic (ℚᵈ,+) backend:
    /// a draw file if given, otherwise the default seeded grid.
    QspaceVerify {
        /// Draw file {"d", "sigma", "chi_exponent", "A", "c", "seed"}.
        draw: Option<PathBuf>,
        /// Master seed for the default grid.
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Write the structured report as JSON to this path.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> Result<u8, LoadError> {
    match command {
        Command::Validate { path } => cmd_validate(&path),
        Command::Classify {
            path,
            equation,
            output,
        } => cmd_classify(&path, equation, output.as_deref()),
        Command::Verify {
            path,
            equation,
            random_g,
            seed,
            output,
            corrupt_predicted,
        } => cmd_verify(
            &path,
            equation,
            random_g,
            seed,
            output.as_deref(),
            corrupt_predicted,
        ),
        Command::Census {
            max_order,
            seed,
            random_g,
            jobs,
            output,
        } => cmd_census(max_order, seed, random_g, jobs, output.as_deref()),
        Command::QspaceVerify { draw, seed, output } => {
            cmd_qspace_verify(draw.as_deref(), seed, output.as_deref())
        }
    }
}

fn write_output(output: Option<&Path>, report: &impl Serialize) -> Result<(), LoadError> {
    if let Some(path) = output {
        let json = serde_json::to_string_pretty(report).expect("reports serialize");
        std::fs::write(path, json).map_err(|e| LoadError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

fn cmd_validate(path: &Path) -> Result<u8, LoadError> {
    let instance = load_instance(path)?;
    println!(
        "valid: order={} associative=yes square_generated=yes sigma=admissible \
         mu=admissible conductor={}",
        instance.order(),
        instance.field().conductor()
    );
    Ok(0)
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ClassifyReport {
    tool_version: &'static str,
    instance: StructureInstance,
    equation: String,
    families: Option<Vec<SolutionFamily>>,
    /// Complete d'Alembert solution list (even parts of multiplicative
    /// functions), when the companion equation was requested.
    dalembert_solutions: Option<Vec<wilsoneq::funcspace::SFunc>>,
}

fn cmd_classify(
    path: &Path,
    equation: EquationArg,
    output: Option<&Path>,
) -> Result<u8, LoadError> {
    let instance = load_instance(path)?;
    let mut families = None;
    let mut dalembert_solutions = None;
    match equation {
        EquationArg::Eq1 | EquationArg::Eq2 => {
            let list = if equation == EquationArg::Eq1 {
                classify_eq1(&instance)
            } else {
                classify_eq2(&instance)
            };
            for f in &list {
                println!("{}: {}", tag_name(f), f.description);
            }
            println!("families={}", list.len());
            families = Some(list);
        }
        EquationArg::Dalembert => {
            let mults = enumerate_multiplicative(instance.table(), instance.field());
            let mut seen = std::collections::BTreeSet::new();
            let mut sols = Vec::new();
            for m in &mults {
                let g = make_dalembert(m, &instance).expect("enumerated m is multiplicative");
                if seen.insert(g.clone()) {
                    sols.push(g);
                }
            }
            println!(
                "dalembert solutions (even parts of the {} multiplicative functions): {}",
                mults.len(),
                sols.len()
            );
            dalembert_solutions = Some(sols);
        }
    }
    let report = ClassifyReport {
        tool_version: TOOL_VERSION,
        instance,
        equation: equation_label(equation).into(),
        families,
        dalembert_solutions,
    };
    write_output(output, &report)?;
    Ok(0)
}

fn tag_name(f: &SolutionFamily) -> String {
    serde_json::to_value(f.tag)
        .expect("tag serializes")
        .as_str()
        .expect("tag is a string")
        .to_string()
}

fn equation_label(eq: EquationArg) -> &'static str {
    match eq {
        EquationArg::Eq1 => "eq1",
        EquationArg::Eq2 => "eq2",
        EquationArg::Dalembert => "dalembert",
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CompanionSection {
    /// Each constructed solution's residual violation count (must be 0) and
    /// star-evenness.
    constructed: usize,
    residual_violations: usize,
    all_star_fixed: bool,
    grid: Option<CompanionGridReport>,
    grid_skipped_reason: Option<String>,
    pass: bool,
}

#[derive(Serialize)]
struct ChecksSection {
    transpose: TransposeSymmetryReport,
    cube: Vec<CubeVanishingReport>,
    central: Vec<CentralWeightedReport>,
    pass: bool,
}

#[derive(Serialize)]
struct EquationSection {
    equation: Equation,
    candidates: usize,
    reports: Vec<CompletenessReport>,
    pass: bool,
}

#[derive(Serialize)]
struct VerifyReport {
    tool_version: &'static str,
    seed: u64,
    random_g_count: usize,
    corrupt_predicted: bool,
    instance: StructureInstance,
    equations: Vec<EquationSection>,
    companion: Option<CompanionSection>,
    checks: Option<ChecksSection>,
    pass: bool,
}

fn cmd_verify(
    path: &Path,
    equation: Option<EquationArg>,
    random_g: usize,
    seed: u64,
    output: Option<&Path>,
    corrupt_predicted: bool,
) -> Result<u8, LoadError> {
    let instance = load_instance(path)?;
    let id = path.display().to_string();

    let mut equations = Vec::new();
    let mut companion = None;
    let mut checks = None;

    let eqs: &[Equation] = match equation {
        None => &[Equation::Eq1, Equation::Eq2],
        Some(EquationArg::Eq1) => &[Equation::Eq1],
        Some(EquationArg::Eq2) => &[Equation::Eq2],
        Some(EquationArg::Dalembert) => &[],
    };
    for &eq in eqs {
        let reports =
            verify_completeness_opts(eq, &instance, random_g, seed, &id, corrupt_predicted);
        let pass = reports.iter().all(|r| r.verdict);
        if let Some(bad) = reports.iter().find(|r| !r.verdict) {
            println!(
                "{eq}: kernel/predicted mismatch for g of kind {}: kernel_dim={} predicted_dim={}",
                serde_json::to_value(bad.g_kind).expect("kind serializes"),
                bad.kernel_dim,
                bad.predicted_dim
            );
        }
        println!(
            "{eq}: candidates={} mismatches={}",
            reports.len(),
            reports.iter().filter(|r| !r.verdict).count()
        );
        equations.push(EquationSection {
            equation: eq,
            candidates: reports.len(),
            reports,
            pass,
        });
    }

    if matches!(equation, Some(EquationArg::Dalembert)) {
        companion = Some(run_companion(&instance)?);
    }

    if equation.is_none() {
        checks = Some(run_checks(&instance)?);
    }

    let pass = equations.iter().all(|e| e.pass)
        && companion.as_ref().is_none_or(|c| c.pass)
        && checks.as_ref().is_none_or(|c| c.pass);
    println!("verify: {}", if pass { "PASS" } else { "FAIL" });

    let report = VerifyReport {
        tool_version: TOOL_VERSION,
        seed,
        random_g_count: random_g,
        corrupt_predicted,
        instance,
        equations,
        companion,
        checks,
        pass,
    };
    write_output(output, &report)?;
    Ok(if pass { 0 } else { 1 })
}

fn run_companion(instance: &StructureInstance) -> Result<CompanionSection, LoadError> {
    let mults = enumerate_multiplicative(instance.table(), instance.field());
    let mut violations = 0usize;
    let mut all_star_fixed = true;
    let mut seen = std::collections::BTreeSet::new();
    for m in &mults {
        let g = make_dalembert(m, instance).expect("enumerated m is multiplicative");
        if !seen.insert(g.clone()) {
            continue;
        }
        violations += residual_dalembert_variant(&g, instance).violations;
        let star = wilsoneq::funcspace::star(&g, instance.sigma(), instance.mu());
        all_star_fixed &= star == g;
    }
    let (grid, grid_skipped_reason) = if instance.order() <= 3 {
        match companion_grid_completeness(instance) {
            Ok(r) => (Some(r), None),
            Err(e) => return Err(LoadError::Invalid(e.to_string())),
        }
    } else {
        (
            None,
            Some(format!(
                "grid search runs on orders <= 3; instance has order {}",
                instance.order()
            )),
        )
    };
    let pass =
        violations == 0 && all_star_fixed && grid.as_ref().is_none_or(|g| g.pass);
    println!(
        "dalembert: constructed={} residual_violations={} grid={}",
        seen.len(),
        violations,
        match &grid {
            Some(g) => {
                if g.pass {
                    "complete".to_string()
                } else {
                    format!("INCOMPLETE (unmatched={})", g.unmatched.len())
                }
            }
            None => "skipped".to_string(),
        }
    );
    Ok(CompanionSection {
        constructed: seen.len(),
        residual_violations: violations,
        all_star_fixed,
        grid,
        grid_skipped_reason,
        pass,
    })
}

fn run_checks(instance: &StructureInstance) -> Result<ChecksSection, LoadError> {
    let table = instance.table();
    let field = instance.field();
    let transpose = transpose_symmetry_check(table, field);

    let mults = enumerate_multiplicative(table, field);
    let mut cube = Vec::new();
    for phi in table.involutive_automorphisms() {
        for chi in &mults {
            let report = cube_vanishing_check(chi, phi.perm(), table)
                .map_err(|e| LoadError::Invalid(e.to_string()))?;
            cube.push(report);
        }
    }

    let mut central = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for m in &mults {
        let g = make_dalembert(m, instance).expect("enumerated m is multiplicative");
        if seen.insert(g.clone()) {
            central.push(central_weighted_check(&g, instance));
        }
    }

    let pass = transpose.pass && cube.iter().all(|c| c.pass) && central.iter().all(|c| c.pass);
    println!(
        "checks: transpose={} cube={}/{} central={}/{}",
        if transpose.pass { "ok" } else { "FAIL" },
        cube.iter().filter(|c| c.pass).count(),
        cube.len(),
        central.iter().filter(|c| c.pass).count(),
        central.len()
    );
    Ok(ChecksSection {
        transpose,
        cube,
        central,
        pass,
    })
}

// ---------------------------------------------------------------------------
// census
// ---------------------------------------------------------------------------

fn cmd_census(
    max_order: usize,
    seed: u64,
    random_g: usize,
    jobs: Option<usize>,
    output: Option<&Path>,
) -> Result<u8, LoadError> {
    if max_order == 0 || max_order > ENUMERATION_CAP {
        return Err(LoadError::CapExceeded(format!(
            "--max-order must be between 1 and {ENUMERATION_CAP}, got {max_order}"
        )));
    }
    if let Some(jobs) = jobs {
        // Ignore the error when a global pool already exists (e.g. in tests).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let config = CensusConfig {
        max_order,
        seed,
        random_g_count: random_g,
        ..CensusConfig::default()
    };
    let report: CensusReport = census_verify(&config).map_err(LoadError::from)?;
    for o in &report.orders {
        println!(
            "order={} scanned={} square_generated={} instances={} completeness_reports={} failures={}",
            o.order, o.tables_scanned, o.square_generated, o.instances,
            o.completeness_reports, o.failures
        );
    }
    println!(
        "total: scanned={} failures={}",
        report.total_scanned, report.total_failures
    );
    for f in report.failures.iter().take(10) {
        println!("failure: instance={} check={} detail={}", f.instance, f.check, f.detail);
    }
    write_output(output, &report)?;
    Ok(if report.total_failures == 0 { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// qspace-verify
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct QspaceCmdReport {
    tool_version: &'static str,
    grid: Option<qspace::QspaceGridReport>,
    explicit: Option<qspace::ExplicitDrawReport>,
    pass: bool,
}

fn cmd_qspace_verify(
    draw: Option<&Path>,
    seed: u64,
    output: Option<&Path>,
) -> Result<u8, LoadError> {
    let (grid, explicit, pass) = match draw {
        Some(path) => {
            let spec = load_draw(path)?;
            let chi = LinFormQ::from_rationals(spec.chi_exponent.clone());
            let a = LinFormQ::from_rationals(spec.a.clone());
            let c = GaussQ::from_rational(spec.c.clone());
            let report = verify_explicit_draw(spec.d, spec.sigma.clone(), &chi, &a, &c)
                .map_err(LoadError::from)?;
            println!(
                "draw: d={} residual_zero={}",
                report.dimension, report.residual_zero
            );
            let pass = report.pass;
            (None, Some(report), pass)
        }
        None => {
            let report = verify_family3_grid(&qspace::default_grid(), seed);
            println!(
                "grid: draws={} zero_residuals={} perturbed_nonzero={}",
                report.draws.len(),
                report.draws.iter().filter(|d| d.residual_zero).count(),
                report
                    .draws
                    .iter()
                    .filter(|d| d.perturbed_residual_nonzero)
                    .count()
            );
            let pass = report.pass;
            (Some(report), None, pass)
        }
    };
    println!("qspace-verify: {}", if pass { "PASS" } else { "FAIL" });
    let report = QspaceCmdReport {
        tool_version: TOOL_VERSION,
        grid,
        explicit,
        pass,
    };
    write_output(output, &report)?;
    Ok(if pass { 0 } else { 1 })
}
