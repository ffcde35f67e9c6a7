//! Command-line surface.  Exit codes: 0 success, 1 parse or validation
//! error, 2 assert-mode theorem failure, 3 budget exhausted.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::RestrictedLieAlgebra;
use crate::error::Error;
use crate::families::{self, FamilySpec};
use crate::field::{FiniteField, Scalar};
use crate::format::{self, AlgebraSpec};
use crate::harness::{self, Analysis, CorpusConfig, Mode, SkippedCheck};
use crate::lattice::{LatticeMode, SubalgebraLattice};
use crate::DEFAULT_BUDGET;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Restricted,
    Ordinary,
}

impl From<ModeArg> for LatticeMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Restricted => LatticeMode::Restricted,
            ModeArg::Ordinary => LatticeMode::Ordinary,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "rla",
    version,
    about = "Workbench for finite-dimensional restricted Lie algebras over finite fields"
)]
pub struct Cli {
    /// Report format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the Lie and p-map axioms of an algebra file.
    Validate {
        file: PathBuf,
    },
    /// Structure report: flags, series, radicals, Frattini objects, socle,
    /// maximal torus, and root spaces.
    Analyze {
        file: PathBuf,
        /// Enumeration budget (default RLA_BUDGET or 1000000).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Subalgebra lattice with predicate scans; optionally write the Hasse
    /// diagram as DOT.
    Lattice {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Restricted)]
        mode: ModeArg,
        /// Write the cover graph to this path in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Check catalog theorems against one algebra.
    Verify {
        file: PathBuf,
        /// Comma-separated theorem ids (T1..T15), or "all".
        #[arg(long, value_delimiter = ',')]
        theorems: Option<Vec<String>>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run the theorem catalog over the generated corpus.
    Corpus {
        /// JSON config {fields, budget, sweeps, theorems}; defaults apply
        /// per missing key.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Emit a family instance as an algebra file.
    Gen {
        /// Family name: abelian, torus, almost_abelian, heisenberg_null,
        /// usmn, sl2, cyclic, prop_solvable.
        family: String,
        #[arg(long)]
        p: u64,
        /// Extension degree of the base field.
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Dimension parameter for abelian, torus, almost_abelian.
        #[arg(long)]
        n: Option<usize>,
        /// Abelian p-map: zero or toral.
        #[arg(long)]
        pmap: Option<String>,
        /// Skew polynomials, low coefficient first: "0,1;-1,1" is t and t-1.
        #[arg(long)]
        factors: Option<String>,
        /// Number of non-central lines for prop_solvable.
        #[arg(long)]
        lines: Option<usize>,
        /// Output file (stdout when absent).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Jordan-Chevalley decomposition of one element.
    Jc {
        file: PathBuf,
        /// Coordinates, comma-separated; each is an integer, or base-p
        /// digits joined by ':' over an extension field.
        #[arg(long)]
        element: String,
    },
}

/// Parses argv and runs one command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn env_budget() -> Result<Option<u64>, Error> {
    match std::env::var("RLA_BUDGET") {
        Ok(s) => s
            .trim()
            .parse::<u64>()
            .map(Some)
            .map_err(|_| Error::Parse(format!("RLA_BUDGET: {s:?} is not an integer"))),
        Err(_) => Ok(None),
    }
}

fn effective_budget(flag: Option<u64>) -> Result<u64, Error> {
    Ok(flag.or(env_budget()?).unwrap_or(DEFAULT_BUDGET))
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<(AlgebraSpec, RestrictedLieAlgebra), Error> {
    let text = read_file(path)?;
    let spec = format::parse_spec(&text)?;
    let l = format::algebra_from_spec(&spec)?;
    Ok((spec, l))
}

/// Loads and insists the axioms hold; analysis commands refuse non-algebras.
fn load_valid(path: &Path) -> Result<RestrictedLieAlgebra, Error> {
    let (_, l) = load(path)?;
    let report = l.validate();
    if !report.ok {
        return Err(Error::Validation(report));
    }
    Ok(l)
}

fn emit<R: Serialize>(fmt: OutputFormat, report: &R, text: impl FnOnce(&R) -> String) {
    match fmt {
        OutputFormat::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(report).expect("report serialization cannot fail")
            );
        }
        OutputFormat::Text => print!("{}", text(report)),
    }
}

/// Splits a `;`-separated list of `,`-separated integer coefficient lists,
/// low degree first, skipping empty segments.
pub fn parse_factors(s: &str) -> Result<Vec<Vec<i64>>, Error> {
    let mut out = Vec::new();
    for part in s.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let mut coeffs = Vec::new();
        for tok in part.split(',') {
            let tok = tok.trim();
            coeffs.push(
                tok.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("factors: {tok:?} is not an integer")))?,
            );
        }
        out.push(coeffs);
    }
    Ok(out)
}

/// Parses a comma-separated coordinate vector; a token may be a `:`-joined
/// digit array for extension-field coefficients.
pub fn parse_element(s: &str, l: &RestrictedLieAlgebra) -> Result<Vec<Scalar>, Error> {
    let f = l.field();
    let mut coords = Vec::new();
    for tok in s.split(',') {
        let tok = tok.trim();
        if tok.contains(':') {
            let digits: Result<Vec<i64>, Error> = tok
                .split(':')
                .map(|d| {
                    d.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("element: {d:?} is not an integer")))
                })
                .collect();
            coords.push(f.from_residues(&digits?)?);
        } else {
            let v = tok
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("element: {tok:?} is not an integer")))?;
            coords.push(f.from_int(v));
        }
    }
    if coords.len() != l.dim() {
        return Err(Error::Parse(format!(
            "element: expected {} coordinates, found {}",
            l.dim(),
            coords.len()
        )));
    }
    Ok(coords)
}

fn corpus_text(r: &harness::AggregateReport) -> String {
    let mut out = Vec::new();
    let t = &r.totals;
    out.push(format!(
        "corpus: {} instances, {} checks, {} assert passes, {} assert failures, {} observed, {} discrepancies, {} inapplicable, {} skipped",
        t.instances, t.checks, t.asserts_passed, t.assert_failures, t.observe_checked,
        t.observe_discrepancies, t.inapplicable, t.skipped
    ));
    for f in &r.assert_failures {
        out.push(format!(
            "FAIL {} {}{}",
            f.instance,
            f.theorem,
            f.witness.as_ref().map(|w| format!(": {w}")).unwrap_or_default()
        ));
    }
    for inst in &r.instances {
        for o in &inst.outcomes {
            if o.mode == Mode::Observe && o.holds == Some(false) {
                out.push(format!(
                    "observe {} {}{}",
                    inst.key,
                    o.theorem,
                    o.witness.as_ref().map(|w| format!(": {w}")).unwrap_or_default()
                ));
            }
        }
        for s in &inst.skipped {
            out.push(format!("skip {} {}: {}", inst.key, s.theorem, s.reason));
        }
    }
    out.join("\n") + "\n"
}

fn dispatch(cli: &Cli) -> Result<i32, Error> {
    let fmt = cli.format;
    match &cli.command {
        Command::Validate { file } => {
            let (_, l) = load(file)?;
            let report = l.validate();
            let ok = report.ok;
            let doc = format::ValidateReport { schema_version: crate::SCHEMA_VERSION, report };
            emit(fmt, &doc, format::validate_text);
            Ok(if ok { 0 } else { 1 })
        }
        Command::Analyze { file, budget } => {
            let l = load_valid(file)?;
            let budget = effective_budget(*budget)?;
            let doc = format::structure_report(&l, budget)?;
            emit(fmt, &doc, format::structure_text);
            Ok(0)
        }
        Command::Lattice { file, mode, dot, budget } => {
            let l = load_valid(file)?;
            let budget = effective_budget(*budget)?;
            let lat = SubalgebraLattice::enumerate(&l, (*mode).into(), budget)?;
            if let Some(path) = dot {
                write_file(path, &lat.to_dot())?;
            }
            let doc = format::lattice_report(&lat, budget)?;
            emit(fmt, &doc, format::lattice_text);
            Ok(0)
        }
        Command::Verify { file, theorems, budget } => {
            let l = load_valid(file)?;
            let budget = effective_budget(*budget)?;
            let ids: Vec<String> = match theorems {
                None => harness::catalog().iter().map(|r| r.id.to_string()).collect(),
                Some(list) if list.iter().any(|s| s == "all") => {
                    harness::catalog().iter().map(|r| r.id.to_string()).collect()
                }
                Some(list) => {
                    for id in list {
                        if harness::theorem(id).is_none() {
                            return Err(Error::Parse(format!("unknown theorem id: {id}")));
                        }
                    }
                    list.clone()
                }
            };
            let mut analysis = Analysis::new(&l, budget);
            let mut outcomes = Vec::new();
            for id in &ids {
                outcomes.push(analysis.outcome(id)?);
            }
            let failures = outcomes
                .iter()
                .filter(|o| {
                    o.applicable && o.mode == Mode::Assert && o.holds == Some(false)
                })
                .count();
            let doc = format::VerifyReport {
                schema_version: crate::SCHEMA_VERSION,
                outcomes,
                skipped: Vec::<SkippedCheck>::new(),
                assert_failures: failures,
            };
            emit(fmt, &doc, format::verify_text);
            Ok(if failures > 0 { 2 } else { 0 })
        }
        Command::Corpus { config } => {
            let cfg = match config {
                Some(path) => {
                    let text = read_file(path)?;
                    let value: serde_json::Value = serde_json::from_str(&text)
                        .map_err(|e| Error::Parse(e.to_string()))?;
                    let mut cfg: CorpusConfig = serde_json::from_value(value.clone())
                        .map_err(|e| Error::Parse(e.to_string()))?;
                    if value.get("budget").is_none() {
                        if let Some(b) = env_budget()? {
                            cfg.budget = b;
                        }
                    }
                    cfg
                }
                None => {
                    let mut cfg = CorpusConfig::default();
                    if let Some(b) = env_budget()? {
                        cfg.budget = b;
                    }
                    cfg
                }
            };
            let report = harness::corpus(&cfg)?;
            let failures = report.totals.assert_failures;
            emit(fmt, &report, corpus_text);
            Ok(if failures > 0 { 2 } else { 0 })
        }
        Command::Gen { family, p, k, n, pmap, factors, lines, out } => {
            let f = FiniteField::new(*p, *k, None)?;
            let spec = FamilySpec {
                family: family.clone(),
                n: *n,
                pmap: pmap.clone(),
                custom_pmap: None,
                factors: factors.as_deref().map(parse_factors).transpose()?.unwrap_or_default(),
                lines: *lines,
            };
            let alg = families::gen(&f, &spec)?;
            let text = format::serialize_spec(&format::spec_from_algebra(&alg));
            match out {
                Some(path) => write_file(path, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Jc { file, element } => {
            let l = load_valid(file)?;
            let x = parse_element(element, &l)?;
            let (s, n) = crate::structure::jordan_chevalley(&l, &x);
            let doc = format::JcReport {
                schema_version: crate::SCHEMA_VERSION,
                element: format::element_doc(&l, &x),
                semisimple: format::element_doc(&l, s.coords()),
                p_nilpotent: format::element_doc(&l, n.coords()),
            };
            emit(fmt, &doc, format::jc_text);
            Ok(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{self, SkewPolynomial};

    #[test]
    fn factor_lists_parse() {
        let fs = parse_factors("0,1;-1,1").unwrap();
        assert_eq!(fs, vec![vec![0, 1], vec![-1, 1]]);
        let f = FiniteField::prime(3).unwrap();
        let polys: Vec<SkewPolynomial> =
            fs.iter().map(|c| SkewPolynomial::from_ints(&f, c)).collect();
        assert_eq!(format!("{:?}", polys[0]), "t");
        assert_eq!(format!("{:?}", polys[1]), "t + 2");
        // Empty segments are skipped so trailing separators are harmless.
        assert_eq!(parse_factors("0,1;").unwrap().len(), 1);
        assert!(parse_factors("x").is_err());
    }

    #[test]
    fn elements_parse_in_both_notations() {
        let f5 = FiniteField::prime(5).unwrap();
        let l = families::sl2(&f5).unwrap();
        let x = parse_element("1,4,0", &l).unwrap();
        assert_eq!(l.render_vec(&x), "e + 4h");
        assert!(parse_element("1,2", &l).is_err());
        assert!(parse_element("1,2,a", &l).is_err());

        let f4 = FiniteField::new(2, 2, None).unwrap();
        let t = families::torus(&f4, 2);
        let x = parse_element("0:1,1", &t).unwrap();
        assert_eq!(t.field().residues(x[0]), vec![0, 1]);
        assert_eq!(t.field().residues(x[1]), vec![1, 0]);
        assert!(parse_element("0:1:1,0", &t).is_err());
    }

    #[test]
    fn budget_resolution_prefers_flag_then_env() {
        // Env access is process-global; keep every case inside one test.
        std::env::remove_var("RLA_BUDGET");
        assert_eq!(effective_budget(None).unwrap(), DEFAULT_BUDGET);
        assert_eq!(effective_budget(Some(7)).unwrap(), 7);
        std::env::set_var("RLA_BUDGET", "123");
        assert_eq!(effective_budget(None).unwrap(), 123);
        assert_eq!(effective_budget(Some(7)).unwrap(), 7);
        std::env::set_var("RLA_BUDGET", "nope");
        assert!(effective_budget(None).is_err());
        std::env::remove_var("RLA_BUDGET");
    }

    #[test]
    fn run_round_trips_a_generated_file() {
        let dir = std::env::temp_dir().join(format!("rla-cli-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let file = dir.join("u.json");
        let path = file.to_str().unwrap();
        assert_eq!(run(["rla", "gen", "usmn", "--p", "2", "-o", path]), 0);
        assert_eq!(run(["rla", "validate", path]), 0);
        // Explicit budget keeps this independent of the env-var test running in parallel.
        assert_eq!(run(["rla", "verify", path, "--theorems", "T1,T7", "--budget", "100000"]), 0);
        assert_eq!(run(["rla", "jc", path, "--element", "1,0,0,0"]), 0);
        assert_eq!(run(["rla", "verify", path, "--theorems", "T99", "--budget", "100000"]), 1);
        assert_eq!(run(["rla", "gen", "nosuch", "--p", "2", "-o", path]), 1);
        assert_eq!(run(["rla", "validate", dir.join("absent.json").to_str().unwrap()]), 1);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
