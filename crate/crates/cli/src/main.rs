//! Command-line driver: configure and run the verification suites, print
//! objects, emit JSON reports.
//!
//! Exit codes: 0 when every case passes, 1 on any fail/error case, 2 on an
//! invalid configuration.

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use qcgl::coeff::Monomial;
use qcgl::coeff::Var;
use qcgl::partition::{Partition, TailSpec};
use qcgl::relations::{
    all_relations, CheckSpec, FamilyConfig, QMode, Report, SuiteConfig,
};
use qcgl::reps::Module;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qcgl", about = "Exact verification suites for quantum continuous gl_infinity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Args)]
struct CommonOpts {
    /// Mode window W for generator indices.
    #[arg(long)]
    mode_window: Option<i64>,
    /// Series truncation order K (default W+3; must be >= W+3).
    #[arg(long)]
    series_order: Option<usize>,
    /// Parameter mode: "symbolic" or "numeric:<seed>".
    #[arg(long, default_value = "symbolic")]
    qmode: String,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run relation suites on a module family, or the whole standard run.
    Verify {
        #[command(flatten)]
        common: CommonOpts,
        /// Module family: vector | tensor | wn | fock | resonance.
        #[arg(long)]
        module: Option<String>,
        /// Run the complete standard verification (all suites).
        #[arg(long)]
        all: bool,
        /// Basis/entry window "lo,hi" (vector basis, tensor/wn entries).
        #[arg(long, allow_hyphen_values = true)]
        entry_window: Option<String>,
        /// Maximum weight of Fock shapes.
        #[arg(long)]
        max_weight: Option<i64>,
        /// Tensor/W^N rank.
        #[arg(long, short = 'N')]
        n: Option<usize>,
        /// Resonance k.
        #[arg(long)]
        k: Option<i64>,
        /// Resonance r.
        #[arg(long)]
        r: Option<i64>,
        /// Resonance offsets c as comma-separated integers ("" for none).
        #[arg(long)]
        c: Option<String>,
    },
    /// The full Fock-module suite: relations, factorized coefficients,
    /// stability of the modified operators.
    Fock {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, default_value_t = 6)]
        max_weight: i64,
    },
    /// The W^N suite for N = 2, 3 with the antisymmetrization consistency.
    Wn {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Macdonald cross-check suite, or print one Macdonald polynomial.
    Macdonald {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, short = 'N', default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        max_weight: i64,
        /// Shape to print, e.g. "2,0".
        #[arg(long, allow_hyphen_values = true)]
        shape: Option<String>,
        /// Print the polynomial instead of running checks.
        #[arg(long)]
        print: bool,
    },
    /// The resonance suite for one (k, r, c).
    Resonance {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        r: i64,
        /// Offsets c as comma-separated integers ("" for none).
        #[arg(long, default_value = "")]
        c: String,
        #[arg(long, default_value_t = 5)]
        max_weight: i64,
    },
    /// The DAHA-bridge suite: mode recursion, mode reconstruction, c-ratios.
    Daha {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Print a canonical rendering of an object.
    Print {
        /// Object kind: gamma | fock-row | tail.
        #[arg(long)]
        kind: String,
        /// Basis index i for gamma.
        #[arg(long, default_value_t = 0)]
        i: i64,
        /// Partition for fock-row, e.g. "1" or "2,1".
        #[arg(long, allow_hyphen_values = true)]
        shape: Option<String>,
        /// Mode list for fock-row, e.g. "-1,0,1".
        #[arg(long, allow_hyphen_values = true)]
        modes: Option<String>,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        r: Option<i64>,
        #[arg(long)]
        c: Option<String>,
        /// Number of tail entries to print.
        #[arg(long, default_value_t = 6)]
        count: usize,
    },
}

fn parse_qmode(s: &str) -> anyhow::Result<QMode> {
    if s == "symbolic" {
        return Ok(QMode::Symbolic);
    }
    if let Some(seed) = s.strip_prefix("numeric:") {
        return Ok(QMode::Numeric(seed.parse().context("numeric seed")?));
    }
    anyhow::bail!("qmode must be 'symbolic' or 'numeric:<seed>'")
}

fn parse_ints(s: &str) -> anyhow::Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| p.trim().parse::<i64>().context("integer list"))
        .collect()
}

fn parse_window(s: Option<&str>, default: (i64, i64)) -> anyhow::Result<(i64, i64)> {
    match s {
        None => Ok(default),
        Some(s) => {
            let v = parse_ints(s)?;
            anyhow::ensure!(v.len() == 2 && v[0] <= v[1], "window must be 'lo,hi'");
            Ok((v[0], v[1]))
        }
    }
}

fn check_spec(common: &CommonOpts, default_window: i64) -> anyhow::Result<CheckSpec> {
    let w = common.mode_window.unwrap_or(default_window);
    let k = common.series_order.unwrap_or((w + 3) as usize);
    anyhow::ensure!(
        k as i64 >= w + 3,
        "series order must be at least mode window + 3"
    );
    Ok(CheckSpec::new(w, k))
}

fn tail_spec(k: i64, r: i64, c: &str) -> anyhow::Result<TailSpec> {
    // the lattice map is faithful only for coprime (k+1, r-1)
    qcgl::coeff::Resonance::new(k, r)
        .map_err(|e| anyhow::anyhow!(e.to_string()))?;
    TailSpec::new(k, r, parse_ints(c)?).map_err(|e| anyhow::anyhow!(e.to_string()))
}

/// Write the report (seconds zeroed for byte-identical runs) and print the
/// human summary; the measured wall time goes to standard output only.
fn finish(report: Report, out: Option<&PathBuf>) -> anyhow::Result<ExitCode> {
    let seconds = report.seconds;
    let mut stable = report;
    stable.seconds = 0.0;
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(&stable)?;
        std::fs::write(path, json).with_context(|| format!("writing {}", path.display()))?;
    }
    println!(
        "suite {}: {} pass, {} fail, {} error ({:.2}s)",
        stable.suite, stable.summary.pass, stable.summary.fail, stable.summary.error, seconds
    );
    if !stable.passed() {
        for c in stable
            .cases
            .iter()
            .filter(|c| c.status != qcgl::relations::Status::Pass)
            .take(10)
        {
            println!("  {:?} {}: {}", c.status, c.id, c.detail);
        }
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

/// The complete standard verification run (the acceptance windows).
fn full_run(qmode: QMode) -> Report {
    use qcgl::suites::*;
    let parts = vec![
        vector_suite(qmode),
        tensor_suite(qmode),
        wn_suite(qmode),
        fock_suite(qmode),
        macdonald_suite(),
        daha_suite(),
        all_resonance_suites(qmode),
        wheel_suite(),
        c_ratio_suite(),
        lemma_sp_suite(20260809),
    ];
    Report::merged("all", serde_json::json!({"standard": true}), parts)
}

fn run_verify(
    common: &CommonOpts,
    module: Option<&str>,
    all: bool,
    entry_window: Option<&str>,
    max_weight: Option<i64>,
    n: Option<usize>,
    k: Option<i64>,
    r: Option<i64>,
    c: Option<&str>,
) -> anyhow::Result<ExitCode> {
    let qmode = parse_qmode(&common.qmode)?;
    if all {
        return finish(full_run(qmode), common.out.as_ref());
    }
    let module = module.context("--module or --all is required")?;
    let (family, default_w) = match module {
        "vector" => {
            let (lo, hi) = parse_window(entry_window, (-3, 3))?;
            (
                FamilyConfig::Vector {
                    basis_lo: lo,
                    basis_hi: hi,
                },
                3,
            )
        }
        "tensor" => {
            let (lo, hi) = parse_window(entry_window, (-2, 2))?;
            (
                FamilyConfig::Tensor {
                    n: n.unwrap_or(2),
                    entry_lo: lo,
                    entry_hi: hi,
                },
                3,
            )
        }
        "wn" => {
            let (lo, hi) = parse_window(entry_window, (-2, 3))?;
            (
                FamilyConfig::Wn {
                    n: n.unwrap_or(2),
                    entry_lo: lo,
                    entry_hi: hi,
                },
                2,
            )
        }
        "fock" => (
            FamilyConfig::Fock {
                max_weight: max_weight.unwrap_or(6),
            },
            3,
        ),
        "resonance" => {
            let spec = tail_spec(
                k.context("--k required")?,
                r.context("--r required")?,
                c.unwrap_or(""),
            )?;
            (
                FamilyConfig::Resonance {
                    spec,
                    max_rel_weight: max_weight.unwrap_or(5),
                },
                2,
            )
        }
        other => anyhow::bail!("unknown module family '{}'", other),
    };
    let cfg = SuiteConfig {
        family,
        spec: check_spec(common, default_w)?,
        relations: all_relations(),
        qmode,
        ee_antisym: module == "wn",
    };
    finish(qcgl::relations::run_suite(&cfg), common.out.as_ref())
}

fn cmd_print(
    kind: &str,
    i: i64,
    shape: Option<&str>,
    modes: Option<&str>,
    k: Option<i64>,
    r: Option<i64>,
    c: Option<&str>,
    count: usize,
) -> anyhow::Result<ExitCode> {
    match kind {
        "gamma" => {
            let g = qcgl::reps::gamma::gamma_fn(i, &Monomial::var(Var::U));
            println!("gamma_{{{},u}}(z) = {}", i, g);
        }
        "fock-row" => {
            let parts = parse_ints(shape.context("--shape required")?)?;
            let lam = Partition::nonneg(parts).map_err(|e| anyhow::anyhow!(e.to_string()))?;
            let modes = parse_ints(modes.unwrap_or("-1,0,1"))?;
            let fock = qcgl::reps::FockModule::new();
            for m in modes {
                let deltas = fock
                    .e_delta(&lam)
                    .map_err(|e| anyhow::anyhow!(e.to_string()))?;
                let terms: Vec<String> = deltas
                    .iter()
                    .map(|dt| {
                        let coeff = dt.mode_coeff(m).expand().expect("regular coefficient");
                        format!("{} |{}>", coeff, dt.target)
                    })
                    .collect();
                println!("e_{{{}}} |{}> = {}", m, lam, terms.join(" + "));
            }
        }
        "tail" => {
            let spec = tail_spec(
                k.context("--k required")?,
                r.context("--r required")?,
                c.unwrap_or(""),
            )?;
            let vals: Vec<String> = (1..=count as i64)
                .map(|j| spec.tail_value(j).to_string())
                .collect();
            println!("[{}]", vals.join(","));
        }
        other => anyhow::bail!("unknown print kind '{}'", other),
    }
    Ok(ExitCode::SUCCESS)
}

fn real_main() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Verify {
            common,
            module,
            all,
            entry_window,
            max_weight,
            n,
            k,
            r,
            c,
        } => run_verify(
            common,
            module.as_deref(),
            *all,
            entry_window.as_deref(),
            *max_weight,
            *n,
            *k,
            *r,
            c.as_deref(),
        ),
        Command::Fock { common, max_weight } => {
            let qmode = parse_qmode(&common.qmode)?;
            let report = if *max_weight == 6 {
                qcgl::suites::fock_suite(qmode)
            } else {
                qcgl::relations::run_suite(&SuiteConfig {
                    family: FamilyConfig::Fock {
                        max_weight: *max_weight,
                    },
                    spec: check_spec(common, 3)?,
                    relations: all_relations(),
                    qmode,
                    ee_antisym: false,
                })
            };
            finish(report, common.out.as_ref())
        }
        Command::Wn { common } => {
            let qmode = parse_qmode(&common.qmode)?;
            finish(qcgl::suites::wn_suite(qmode), common.out.as_ref())
        }
        Command::Macdonald {
            common,
            n,
            max_weight,
            shape,
            print,
        } => {
            if *print {
                let parts = parse_ints(shape.as_deref().context("--shape required with --print")?)?;
                let lam =
                    Partition::zvalued(parts).map_err(|e| anyhow::anyhow!(e.to_string()))?;
                let table = qcgl::macdonald::MacdonaldTable::new();
                let p = table.macdonald_p_laurent(&lam, *n);
                println!("P_{} in {} variables (monomial basis):", lam, n);
                for (s, coeff) in p.terms.iter().rev() {
                    println!("  m_{}: {}", s, coeff);
                }
                return Ok(ExitCode::SUCCESS);
            }
            let table = qcgl::macdonald::MacdonaldTable::new();
            finish(
                qcgl::daha::check_identification(*n, *max_weight, &table),
                common.out.as_ref(),
            )
        }
        Command::Resonance {
            common,
            k,
            r,
            c,
            max_weight,
        } => {
            let spec = tail_spec(*k, *r, c)?;
            let qmode = parse_qmode(&common.qmode)?;
            let report = if *max_weight == 5 {
                qcgl::suites::resonance_suite(&spec, qmode)
            } else {
                qcgl::relations::run_suite(&SuiteConfig {
                    family: FamilyConfig::Resonance {
                        spec,
                        max_rel_weight: *max_weight,
                    },
                    spec: check_spec(common, 2)?,
                    relations: all_relations(),
                    qmode,
                    ee_antisym: false,
                })
            };
            finish(report, common.out.as_ref())
        }
        Command::Daha { common } => {
            let report = qcgl::suites::daha_suite();
            let parts = vec![report, qcgl::suites::c_ratio_suite()];
            finish(
                Report::merged("daha", serde_json::json!({}), parts),
                common.out.as_ref(),
            )
        }
        Command::Print {
            kind,
            i,
            shape,
            modes,
            k,
            r,
            c,
            count,
        } => cmd_print(
            kind,
            *i,
            shape.as_deref(),
            modes.as_deref(),
            *k,
            *r,
            c.as_deref(),
            *count,
        ),
    }
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}
