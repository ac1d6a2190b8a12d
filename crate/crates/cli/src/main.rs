use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cscc::complex::MIN_TRUNCATED_EXTENT;
use cscc::css::{assemble, logical_basis, match_geometric_basis, CssCode, LogicalBasis};
use cscc::phase_poly::SignVector;
use cscc::verify::{self, CommutatorEvidence, CrosscheckSummary, VerificationReport};
use cscc::{build_cube, build_truncated_cube, validate, ColoredComplex, Error};

#[derive(Parser, Debug)]
#[command(name = "cscc", version, about = "Build and verify 3D color codes with a transversal control-S gate")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for the phase polynomial engine.
    #[arg(long, global = true, env = "CSCC_THREADS", default_value_t = 1,
          value_parser = clap::value_parser!(u16).range(1..))]
    threads: u16,

    /// Write the artifact here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Variant {
    Cube,
    Truncated,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit a colored complex as JSON.
    Build {
        #[arg(long, value_enum, default_value_t = Variant::Cube)]
        variant: Variant,
        /// X,Y,Z
        #[arg(long, value_parser = parse_extent)]
        extent: [usize; 3],
    },
    /// Run the structural validators on a complex (file or stdin).
    Validate {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Symplectic logical basis of a complex or code (file or stdin).
    Logicals {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Run a named fixture, or the control-S pipeline on a complex or extent.
    Verify {
        #[arg(long, conflicts_with_all = ["input", "extent"])]
        fixture: Option<String>,
        #[arg(long, conflicts_with = "extent")]
        input: Option<PathBuf>,
        #[arg(long, value_parser = parse_extent)]
        extent: Option<[usize; 3]>,
    },
    /// Compare the phase polynomial engine with the state-vector oracle on
    /// seeded random codes.
    OracleCrosscheck {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
    /// Commutator phases φ and η with their coset evidence.
    Commutators {
        #[arg(long, value_parser = parse_extent)]
        extent: Option<[usize; 3]>,
    },
}

fn parse_extent(s: &str) -> Result<[usize; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected X,Y,Z, got {s:?}"));
    }
    let mut e = [0usize; 3];
    for (slot, p) in e.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| format!("not a positive integer: {p:?}"))?;
        if *slot == 0 {
            return Err("extent components must be positive".to_string());
        }
    }
    Ok(e)
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn failed(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Json(_) | Error::Malformed(_) | Error::UnknownFixture(_) | Error::InvalidExtent(_) => {
                Failure::usage(e.to_string())
            }
            other => Failure::failed(other.to_string()),
        }
    }
}

/// The artifact plus whether the command succeeded.
struct Output {
    json: String,
    text: String,
    ok: bool,
    diagnostics: Vec<String>,
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::usage(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable artifact")
}

fn build(variant: Variant, extent: [usize; 3]) -> Result<Output, Failure> {
    let c = match variant {
        Variant::Cube => build_cube(extent),
        Variant::Truncated => build_truncated_cube(extent),
    }
    .map_err(|e| match e {
        Error::InvalidExtent(_) => Failure::usage(e.to_string()),
        other => Failure::failed(other.to_string()),
    })?;
    let text = format!(
        "qubits {}\nedges {}\nfaces {}\ncells {}\nboundaries {}\ntruncation region {}\n",
        c.qubits.len(),
        c.edges.len(),
        c.faces.len(),
        c.cells.len(),
        c.boundaries.len(),
        c.truncation_region.len()
    );
    Ok(Output { json: c.to_json(), text, ok: true, diagnostics: Vec::new() })
}

fn run_validate(input: &Option<PathBuf>) -> Result<Output, Failure> {
    let c = ColoredComplex::from_json(&read_input(input)?)?;
    let report = validate(&c);
    let mut text = String::new();
    let mut diagnostics = Vec::new();
    for check in &report.checks {
        text += &format!("[{}] {}\n", if check.passed { "PASS" } else { "FAIL" }, check.name);
        if let Some(w) = &check.witness {
            diagnostics.push(format!("{}: witness {:?}", check.name, w));
        }
    }
    Ok(Output { json: to_json(&report), text, ok: report.all_passed(), diagnostics })
}

/// Complex input goes through assembly, projection and geometric matching;
/// code input gets the plain symplectic basis.
fn run_logicals(input: &Option<PathBuf>) -> Result<Output, Failure> {
    let raw = read_input(input)?;
    let basis: LogicalBasis = match ColoredComplex::from_json(&raw) {
        Ok(c) => {
            let mut code = assemble(&c)?;
            if !c.truncation_region.is_empty() {
                code = code.project_z(&c.truncation_region)?;
            }
            let b = logical_basis(&code)?;
            match_geometric_basis(&c, &code, &b)
        }
        Err(_) => {
            let code = CssCode::from_json(&raw)?;
            logical_basis(&code)?
        }
    };
    let mut text = String::new();
    for p in &basis.pairs {
        text += &format!("{}: |X| = {}, |Z| = {}\n", p.label, p.x.count_ones(), p.z.count_ones());
    }
    for a in &basis.annotations {
        text += &format!("{a}\n");
    }
    Ok(Output { json: basis.to_json(), text, ok: true, diagnostics: Vec::new() })
}

fn report_output(report: VerificationReport) -> Output {
    let diagnostics = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("FAIL {}: {}", c.name, c.detail))
        .chain(
            report
                .codespace
                .iter()
                .flat_map(|v| v.witnesses.iter())
                .take(20)
                .map(|w| format!("witness {:?} coefficient {}", w.monomial, w.coeff)),
        )
        .collect();
    Output { json: report.to_json(), text: report.summary_text(), ok: report.passed, diagnostics }
}

fn run_verify(
    fixture: &Option<String>,
    input: &Option<PathBuf>,
    extent: &Option<[usize; 3]>,
) -> Result<Output, Failure> {
    let report = match (fixture, input, extent) {
        (Some(name), _, _) => verify::run_fixture(name)?,
        (None, Some(path), _) => {
            let c = ColoredComplex::from_json(&read_input(&Some(path.clone()))?)?;
            verify::verify_cs_complex(&c, &path.display().to_string())?
        }
        (None, None, Some(e)) => verify::verify_cs_protocol(*e)?,
        (None, None, None) => {
            return Err(Failure::usage("verify needs --fixture, --input or --extent"))
        }
    };
    Ok(report_output(report))
}

fn crosscheck_text(s: &CrosscheckSummary) -> String {
    let mut text = format!("{}/{} agree\n", s.agree, s.trials);
    for m in &s.mismatches {
        text += &format!(
            "trial {} ({}, n={}, k={}): engine {:?} oracle {:?}\n",
            m.trial, m.family, m.n, m.k, m.engine_action, m.oracle_action
        );
    }
    text
}

fn run_crosscheck(seed: u64, trials: u64) -> Result<Output, Failure> {
    let s = verify::oracle_crosscheck(seed, trials as usize)?;
    let diagnostics = s.mismatches.iter().map(|m| format!("mismatch: {}", to_json(m))).collect();
    Ok(Output { json: to_json(&s), text: crosscheck_text(&s), ok: s.all_agree(), diagnostics })
}

fn run_commutators(extent: [usize; 3]) -> Result<Output, Failure> {
    let c = build_truncated_cube(extent)?;
    let full = assemble(&c)?;
    let code = full.project_z(&c.truncation_region)?;
    let bip = cscc::complex::bipartition(&c)?;
    let signs = SignVector::from_bipartition(&bip, &code.qubit_map)?;
    let basis = logical_basis(&code)?;
    let basis = match_geometric_basis(&c, &code, &basis);
    let ev: CommutatorEvidence = verify::check_commutators(&code, &basis, &signs)?;
    let text = format!(
        "{}\nphi_exp = {} (Zbar_B coset {:?})\neta_exp = {} (Zbar_A·Zbar_B coset {:?})\n",
        verify::CONVENTION,
        ev.phi.phase_exp,
        ev.phi.membership.logicals,
        ev.eta.phase_exp,
        ev.eta.membership.logicals
    );
    let ok = ev.phi.membership.matches_target && ev.eta.membership.matches_target;
    Ok(Output { json: to_json(&ev), text, ok, diagnostics: Vec::new() })
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Build { variant, extent } => build(*variant, *extent),
        Command::Validate { input } => run_validate(input),
        Command::Logicals { input } => run_logicals(input),
        Command::Verify { fixture, input, extent } => run_verify(fixture, input, extent),
        Command::OracleCrosscheck { seed, trials } => run_crosscheck(*seed, *trials),
        Command::Commutators { extent } => run_commutators(extent.unwrap_or(MIN_TRUNCATED_EXTENT)),
    }
}

fn emit(cli: &Cli, out: &Output) -> Result<(), Failure> {
    let mut body = match cli.format {
        Format::Json => out.json.clone(),
        Format::Text => out.text.clone(),
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &cli.output {
        Some(p) => fs::write(p, body).map_err(|e| Failure::failed(format!("{}: {e}", p.display()))),
        None => io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| Failure::failed(format!("stdout: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads as usize).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = pool.install(|| dispatch(&cli)).and_then(|out| {
        emit(&cli, &out)?;
        for d in &out.diagnostics {
            eprintln!("{d}");
        }
        Ok(out.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
