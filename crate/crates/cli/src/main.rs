//! `hopfcoh`: check Hopf algebra files, compute cohomology and cup products,
//! run the verification suites.
//!
//! Exit codes: 0 success, 1 a mathematical check failed, 2 unreadable or
//! invalid input, 3 the resource guard refused a construction.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use hopfcoh::bimodule::HopfBimodule;
use hopfcoh::cohomology::{build_double_complex, reduced_b_complex, total_cohomology, Limits, Theory};
use hopfcoh::cup::cup_table;
use hopfcoh::hopf::FiniteHopfAlgebra;
use hopfcoh::spec_file::{AlgebraSpec, BimoduleSpec, LoadedAlgebra};
use hopfcoh::verify::{run_suite_with_threads, Suite, VerifyOptions};
use hopfcoh::{Error, Field};

use output::{CohomologyJson, CupJson};

#[derive(Parser)]
#[command(name = "hopfcoh", version, about = "Exact cohomology of finite-dimensional Hopf algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Hopf algebra axioms of an algebra file.
    Check { file: PathBuf },
    /// Dimensions of H^n for n = 0..=N.
    Cohomology {
        file: PathBuf,
        #[arg(long, default_value = "b")]
        theory: String,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Hopf bimodule file for the first argument (defaults to H).
        #[arg(long)]
        module: Option<PathBuf>,
        /// Hopf bimodule file for the second argument (defaults to H).
        #[arg(long)]
        comodule: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        /// Entry budget of the resource guard.
        #[arg(long, default_value_t = Limits::default().max_entries)]
        max_entries: u128,
    },
    /// Cup products of the representative classes of H_b(H, H).
    Cup {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = Limits::default().max_entries)]
        max_entries: u128,
    },
    /// Run a verification suite.
    Verify {
        file: PathBuf,
        #[arg(long, default_value = "all")]
        suite: String,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

/// Why a command did not succeed, with its exit code.
#[derive(Debug)]
enum Failure {
    Math(String),
    Input(String),
    Resource(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Math(_) => 1,
            Failure::Input(_) => 2,
            Failure::Resource(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Math(m) | Failure::Input(m) | Failure::Resource(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Input(_) => Failure::Input(e.to_string()),
            Error::Resource { .. } => Failure::Resource(e.to_string()),
            Error::Internal(_) => Failure::Math(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("hopfcoh: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

/// Runs `$body` with `$h: Arc<FiniteHopfAlgebra<_>>` over whichever field was loaded.
macro_rules! with_algebra {
    ($loaded:expr, $h:ident => $body:expr) => {
        match $loaded {
            LoadedAlgebra::Rational(h) => {
                let $h = Arc::new(h);
                $body
            }
            LoadedAlgebra::Prime(h) => {
                let $h = Arc::new(h);
                $body
            }
        }
    };
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Check { file } => {
            let (_, loaded) = read_algebra(&file)?;
            let report = with_algebra!(loaded, h => h.check_axioms());
            for (name, ok) in &report.checks {
                println!("{} {name}", if *ok { "PASS" } else { "FAIL" });
            }
            if report.all_pass() {
                Ok(())
            } else {
                Err(Failure::Math(format!("Hopf axioms fail: {}", report.failures().join(", "))))
            }
        }
        Command::Cohomology { file, theory, max_degree, module, comodule, json, max_entries } => {
            let theory = Theory::parse(&theory)?;
            let (spec, loaded) = read_algebra(&file)?;
            let limits = Limits { max_entries };
            let coeffs = Coefficients { spec: &spec, module: module.as_deref(), comodule: comodule.as_deref() };
            with_algebra!(loaded, h => {
                require_axioms(&h)?;
                cohomology(&h, theory, max_degree, &coeffs, &limits, json)
            })
        }
        Command::Cup { file, max_degree, json, max_entries } => {
            let (_, loaded) = read_algebra(&file)?;
            let limits = Limits { max_entries };
            with_algebra!(loaded, h => {
                require_axioms(&h)?;
                cup(&h, max_degree, &limits, json)
            })
        }
        Command::Verify { file, suite, threads, json } => {
            let suite: Suite = suite.parse()?;
            let (_, loaded) = read_algebra(&file)?;
            let threads = threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let report = with_algebra!(loaded, h => {
                require_axioms(&h)?;
                run_suite_with_threads(&h, suite, &VerifyOptions::default(), threads)?
            });
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                println!("{report}");
            }
            if report.all_pass() {
                Ok(())
            } else {
                let failed: Vec<String> = report.failures().map(|l| format!("[{}] {}", l.suite, l.name)).collect();
                Err(Failure::Math(format!("failed: {}", failed.join("; "))))
            }
        }
    }
}

fn read_algebra(path: &Path) -> Result<(AlgebraSpec, LoadedAlgebra), Failure> {
    let spec = AlgebraSpec::read(path)?;
    let loaded = spec.load_unchecked()?;
    Ok((spec, loaded))
}

fn require_axioms<F: Field>(h: &FiniteHopfAlgebra<F>) -> Outcome {
    let report = h.check_axioms();
    if report.all_pass() {
        Ok(())
    } else {
        Err(Failure::Math(format!("Hopf axioms fail: {}", report.failures().join(", "))))
    }
}

struct Coefficients<'a> {
    spec: &'a AlgebraSpec,
    module: Option<&'a Path>,
    comodule: Option<&'a Path>,
}

impl Coefficients<'_> {
    fn is_default(&self) -> bool {
        self.module.is_none() && self.comodule.is_none()
    }

    fn load<F: Field>(&self, h: &Arc<FiniteHopfAlgebra<F>>, path: Option<&Path>) -> Result<HopfBimodule<F>, Failure> {
        let Some(path) = path else {
            return Ok(HopfBimodule::regular(h.clone()));
        };
        let spec = BimoduleSpec::read(path)?;
        let alg_path = spec.algebra_path(path);
        if AlgebraSpec::read(&alg_path)? != *self.spec {
            return Err(Failure::Input(format!(
                "{} is a bimodule over {}, which differs from the algebra being computed with",
                path.display(),
                alg_path.display()
            )));
        }
        let m = spec.build_unchecked(h.clone())?;
        let report = m.check();
        if !report.all_pass() {
            return Err(Failure::Math(format!("{} is not a Hopf bimodule: {}", path.display(), report.failures().join(", "))));
        }
        Ok(m)
    }
}

fn cohomology<F: Field>(
    h: &Arc<FiniteHopfAlgebra<F>>,
    theory: Theory,
    n_max: usize,
    coeffs: &Coefficients,
    limits: &Limits,
    json: bool,
) -> Outcome {
    // theory b with regular coefficients uses the reduced complex
    let dc = if theory == Theory::B && coeffs.is_default() {
        reduced_b_complex(h, n_max, limits)?
    } else {
        let m = coeffs.load(h, coeffs.module)?;
        let n = coeffs.load(h, coeffs.comodule)?;
        build_double_complex(theory, &m, &n, n_max, limits)?
    };
    let result = total_cohomology(&dc, json);
    if json {
        let out = CohomologyJson::new(h.field(), theory, n_max, coeffs.module, coeffs.comodule, &result);
        println!("{}", serde_json::to_string_pretty(&out).expect("result serializes"));
    } else {
        println!("theory {theory} over {}, dim H = {}", h.field().descriptor(), h.dim());
        println!("{:>3} {:>10} {:>10} {:>8}", "n", "dim T^n", "rank D^n", "dim H^n");
        for k in 0..=n_max {
            println!("{k:>3} {:>10} {:>10} {:>8}", result.total_dims[k], result.ranks[k], result.dims[k]);
        }
        println!("H^n: {}", output::join(&result.dims));
    }
    Ok(())
}

fn cup<F: Field>(h: &Arc<FiniteHopfAlgebra<F>>, n_max: usize, limits: &Limits, json: bool) -> Outcome {
    let dc = reduced_b_complex(h, n_max, limits)?;
    let coh = total_cohomology(&dc, true);
    let table = cup_table(&dc, &coh.representatives)?;
    let out = CupJson::new(h.field(), n_max, &table);
    if json {
        println!("{}", serde_json::to_string_pretty(&out).expect("table serializes"));
    } else {
        print!("{out}");
    }
    if out.products.iter().all(|p| p.commutator == output::COBOUNDARY) {
        Ok(())
    } else {
        Err(Failure::Math("a graded commutator is not a coboundary".into()))
    }
}
