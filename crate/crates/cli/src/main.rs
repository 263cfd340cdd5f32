//! Command-line surface for the stretching generators and their
//! experiments. Exit code is 0 iff every assertion of the invoked
//! experiment passes.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use stretchgen_core::bits::BitString;
use stretchgen_core::circuits::{enumerate_circuits, tt, Budget};
use stretchgen_core::codec::CodeTable;
use stretchgen_core::gen_fo::GenConfig;
use stretchgen_core::gen_prop::PropGenConfig;
use stretchgen_core::harness::{
    backend_by_name, run, system_by_name, template_by_name, ExperimentKind, ExperimentSpec, Report,
};
use stretchgen_core::proplogic::{is_tautology_bruteforce, proof_to_hex, translate};
use stretchgen_core::sigma1::TemplateLibrary;

/// Stretching-generator workbench: run the generators, scan ranges, audit
/// translations and proof systems, and reproduce every report from a seed.
#[derive(Parser)]
#[command(name = "stretchgen", version, about)]
struct Cli {
    /// Configuration file (JSON with optional "code_table" and "library"
    /// documents). The STRETCHGEN_CONFIG environment variable overrides
    /// the default path ("stretchgen.json" if present).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a generator on one input.
    Gen {
        #[command(subcommand)]
        which: GenWhich,
    },
    /// Exhaustively scan the generator range at one input length.
    ScanRange {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Check that generator outputs land back inside the template's set.
    HitTest {
        #[arg(long, default_value = "BEGINS_WITH_1")]
        template: String,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Bounded-horizon unprovability sweep over the range complement.
    IncompletenessDemo {
        #[arg(long, default_value_t = 12)]
        horizon: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Translate a template/w/n triple and export or check the formula.
    Translate {
        #[arg(long)]
        template: String,
        #[arg(long)]
        w: String,
        #[arg(long)]
        n: usize,
        /// print the DIMACS CNF export instead of the JSON AST
        #[arg(long)]
        dimacs: bool,
        /// brute-force the tautology status (atom count permitting)
        #[arg(long)]
        check: bool,
        /// emit an accepted proof in the named system, when one exists
        #[arg(long)]
        proof: Option<String>,
    },
    /// Enumerate circuits within a budget.
    EnumCircuits {
        #[arg(long)]
        inputs: usize,
        #[arg(long)]
        size: usize,
        /// print only the total count
        #[arg(long)]
        count: bool,
        /// cap on listed circuits
        #[arg(long, default_value_t = 32)]
        limit: usize,
    },
    /// Run the full audit sweep (every experiment kind) or one kind.
    Audit {
        /// all | range | hit | incompleteness | translate | step
        #[arg(long, default_value = "all")]
        kind: String,
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Subcommand)]
enum GenWhich {
    /// first-order generator (theory-backend proof search)
    Fo {
        #[arg(long)]
        input: String,
        #[command(flatten)]
        common: CommonOpts,
        /// print the full trace JSON
        #[arg(long)]
        trace: bool,
    },
    /// propositional generator (circuit proof search)
    Prop {
        #[arg(long)]
        input: String,
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// theory backend: cert | empty
    #[arg(long, default_value = "cert")]
    backend: String,
    /// proof system: tt | sch
    #[arg(long, default_value = "sch")]
    system: String,
    /// bound profile: desk | paper
    #[arg(long, default_value = "desk")]
    profile: String,
    /// seed for any sampled sweep
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// append the report (JSON lines) here
    #[arg(long)]
    out: Option<PathBuf>,
    /// also flatten assertions to CSV next to --out
    #[arg(long)]
    csv: bool,
}

#[derive(Deserialize, Default)]
struct ConfigFile {
    code_table: Option<serde_json::Value>,
    library: Option<serde_json::Value>,
}

struct Loaded {
    code_table: CodeTable,
    library: TemplateLibrary,
}

fn load_config(path: Option<PathBuf>) -> Result<Loaded> {
    let path = path
        .or_else(|| std::env::var_os("STRETCHGEN_CONFIG").map(PathBuf::from))
        .or_else(|| {
            let default = PathBuf::from("stretchgen.json");
            default.exists().then_some(default)
        });
    let mut loaded = Loaded {
        code_table: CodeTable::default_table(),
        library: TemplateLibrary::default_library(),
    };
    if let Some(path) = path {
        let doc = std::fs::read_to_string(&path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let cfg: ConfigFile = serde_json::from_str(&doc)
            .with_context(|| format!("parsing config {}", path.display()))?;
        if let Some(table) = cfg.code_table {
            loaded.code_table = CodeTable::from_json(&table.to_string())
                .with_context(|| "loading code_table from config")?;
        }
        if let Some(lib) = cfg.library {
            loaded.library = TemplateLibrary::from_json(&lib.to_string())
                .with_context(|| "loading template library from config")?;
        }
    }
    Ok(loaded)
}

fn fo_config(common: &CommonOpts, loaded: &Loaded) -> Result<GenConfig> {
    let backend = backend_by_name(&common.backend)
        .ok_or_else(|| anyhow!("unknown backend {:?} (cert|empty)", common.backend))?;
    let mut cfg = match common.profile.as_str() {
        "desk" => GenConfig::desk(backend),
        "paper" => GenConfig::paper(backend),
        other => bail!("unknown profile {other:?} (desk|paper)"),
    };
    cfg.code_table = loaded.code_table.clone();
    cfg.library = loaded.library.clone();
    Ok(cfg)
}

fn prop_config(common: &CommonOpts, loaded: &Loaded) -> Result<PropGenConfig> {
    let system = system_by_name(&common.system)
        .ok_or_else(|| anyhow!("unknown system {:?} (tt|sch)", common.system))?;
    let mut cfg = match common.profile.as_str() {
        "desk" => PropGenConfig::desk(system),
        "paper" => PropGenConfig::paper(system),
        other => bail!("unknown profile {other:?} (desk|paper)"),
    };
    cfg.code_table = loaded.code_table.clone();
    cfg.library = loaded.library.clone();
    Ok(cfg)
}

fn parse_bits(s: &str) -> Result<BitString> {
    s.parse::<BitString>()
        .map_err(|e| anyhow!("input must be a 0/1 string: {e}"))
}

fn finish_report(report: &Report, common: &CommonOpts) -> Result<bool> {
    for a in &report.assertions {
        println!("{}: {}", a.name, if a.pass { "pass" } else { "FAIL" });
    }
    if let Some(out) = &common.out {
        if common.csv {
            let csv_path = out.with_extension("csv");
            std::fs::write(&csv_path, report.assertions_csv())
                .with_context(|| format!("writing {}", csv_path.display()))?;
        }
    }
    Ok(report.all_pass())
}

fn experiment(
    kind: ExperimentKind,
    params: serde_json::Map<String, serde_json::Value>,
    common: &CommonOpts,
) -> Result<bool> {
    let mut spec = ExperimentSpec::new(kind);
    for (k, v) in params {
        spec.params.insert(k, v);
    }
    spec.params
        .insert("backend".into(), json!(common.backend.clone()));
    spec.params
        .insert("profile".into(), json!(common.profile.clone()));
    spec.seed = common.seed;
    spec.output_path = common.out.clone();
    let report = run(&spec).with_context(|| format!("experiment {}", kind.name()))?;
    println!("== {} ==", kind.name());
    println!("{}", serde_json::to_string_pretty(&report.results)?);
    finish_report(&report, common)
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let loaded = load_config(cli.config.clone())?;
    let ok = dispatch(cli, &loaded)?;
    if !ok {
        std::process::exit(1);
    }
    Ok(())
}

fn dispatch(cli: Cli, loaded: &Loaded) -> Result<bool> {
    match cli.command {
        Command::Gen { which } => match which {
            GenWhich::Fo {
                input,
                common,
                trace,
            } => {
                let cfg = fo_config(&common, loaded)?;
                let u = parse_bits(&input)?;
                let (out, t) = stretchgen_core::gen_fo::generate(&u, &cfg)?;
                println!("{out}");
                if trace {
                    println!("{}", serde_json::to_string_pretty(&t)?);
                }
                Ok(true)
            }
            GenWhich::Prop {
                input,
                common,
                trace,
            } => {
                let cfg = prop_config(&common, loaded)?;
                let u = parse_bits(&input)?;
                let (out, t) = stretchgen_core::gen_prop::generate_prop(&u, &cfg)?;
                println!("{out}");
                if trace {
                    println!("{}", serde_json::to_string_pretty(&t)?);
                }
                Ok(true)
            }
        },
        Command::ScanRange { n, common } => experiment(
            ExperimentKind::RangeScan,
            serde_json::Map::from_iter([("n".to_string(), json!(n))]),
            &common,
        ),
        Command::HitTest {
            template,
            n_min,
            n_max,
            common,
        } => experiment(
            ExperimentKind::HitTest,
            serde_json::Map::from_iter([
                ("template".to_string(), json!(template)),
                ("n_min".to_string(), json!(n_min)),
                ("n_max".to_string(), json!(n_max)),
            ]),
            &common,
        ),
        Command::IncompletenessDemo { horizon, common } => experiment(
            ExperimentKind::Incompleteness,
            serde_json::Map::from_iter([("horizon".to_string(), json!(horizon))]),
            &common,
        ),
        Command::Translate {
            template,
            w,
            n,
            dimacs,
            check,
            proof,
        } => {
            let phi = template_by_name(&template)
                .ok_or_else(|| anyhow!("unknown analytic template {template:?}"))?;
            let w = parse_bits(&w)?;
            let (f, steps) = translate(&phi, &w, n)?;
            if dimacs {
                print!("{}", f.to_dimacs());
            } else {
                println!("{}", f.to_json());
            }
            eprintln!("construction steps: {steps}");
            if check {
                let taut = is_tautology_bruteforce(&f)?;
                println!("tautology: {taut}");
            }
            if let Some(system) = proof {
                let sys = system_by_name(&system)
                    .ok_or_else(|| anyhow!("unknown system {system:?} (tt|sch)"))?;
                let prepared = sys.prepare(&f, 24);
                let first = prepared.proofs().next().cloned();
                match first {
                    Some(p) => println!("{}", proof_to_hex(sys.name(), &p)),
                    None => {
                        // fall back to the full table when it verifies
                        let table = f.truth_table()?;
                        let candidate = if system == "sch" {
                            BitString::from_bits(
                                std::iter::once(false).chain(table.bits()).collect(),
                            )
                        } else {
                            table
                        };
                        if sys.verify(&f, &candidate) {
                            println!("{}", proof_to_hex(sys.name(), &candidate));
                        } else {
                            println!("no {system} proof");
                        }
                    }
                }
            }
            Ok(true)
        }
        Command::EnumCircuits {
            inputs,
            size,
            count,
            limit,
        } => {
            let b = Budget {
                k_max: inputs,
                size_max: size,
            };
            let stream = enumerate_circuits(&b, inputs)?;
            if count {
                println!("{}", stream.count());
            } else {
                for (i, c) in stream.enumerate() {
                    if i >= limit {
                        println!("... (use --count for the total)");
                        break;
                    }
                    let table = tt(&c)?;
                    println!("# tt {table}");
                    println!("{}", c.to_text());
                }
            }
            Ok(true)
        }
        Command::Audit { kind, common } => {
            let kinds: Vec<ExperimentKind> = match kind.as_str() {
                "all" => ExperimentKind::ALL.to_vec(),
                "range" => vec![ExperimentKind::RangeScan],
                "hit" => vec![ExperimentKind::HitTest],
                "incompleteness" => vec![ExperimentKind::Incompleteness],
                "translate" => vec![ExperimentKind::TranslateAudit],
                "step" => vec![ExperimentKind::StepAudit],
                other => bail!("unknown audit kind {other:?}"),
            };
            let mut all_ok = true;
            for k in kinds {
                all_ok &= experiment(k, serde_json::Map::new(), &common)?;
            }
            Ok(all_ok)
        }
    }
}
