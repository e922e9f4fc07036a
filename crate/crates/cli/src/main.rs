use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tlk_core::algebra::{
    abelian_invariants, builtin_target, count_colorings, lower_group, lower_quandle,
    twisted_group, twisted_quandle, upper_group, upper_quandle, FiniteTarget, Presentation,
    TargetKind,
};
use tlk_core::catalog::{catalog_find, catalog_load, CatalogEntry};
use tlk_core::cover::double_cover;
use tlk_core::gauss::TwistedCode;
use tlk_core::moves::{enumerate_moves, random_walk};
use tlk_core::ribbon::{abstract_diagram, surface_invariants};
use tlk_core::verify::{run_all, run_suite, SuiteReport, VerifyOptions, SUITE_NAMES};

/// Compute with twisted link diagrams given as bar-extended Gauss codes.
#[derive(Parser)]
#[command(name = "tlk", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// Where the input diagram comes from: a literal code or a catalog name.
#[derive(Args)]
struct Input {
    /// Bar-extended Gauss code, e.g. "(O1+ U2+ O3+ U1+ O2+ U3+)"
    code: Option<String>,
    /// Use the catalog entry with this name instead of a literal code
    #[arg(long, conflicts_with = "code")]
    name: Option<String>,
    /// Load the catalog from this JSON file instead of the built-in one
    #[arg(long)]
    catalog: Option<PathBuf>,
}

#[derive(Args)]
struct JsonFlag {
    /// Emit machine-readable JSON
    #[arg(long)]
    json: bool,
}

#[derive(Copy, Clone, clap::ValueEnum)]
enum Variant {
    Twisted,
    Upper,
    Lower,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a code and check its validity
    Validate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Crossing, bar, writhe, and component statistics
    Stats {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// The double covering diagram
    Cover {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Surface invariants of the associated ribbon diagram
    Surface {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Group presentation (twisted, upper, or lower)
    Group {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "twisted")]
        variant: Variant,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Quandle presentation (twisted, upper, or lower)
    Quandle {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "twisted")]
        variant: Variant,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Count colorings into a finite target, e.g. --target group:S3
    Color {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "twisted")]
        variant: Variant,
        #[arg(long)]
        target: String,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Abelian invariants (free rank and torsion) of a group presentation
    Abelian {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "twisted")]
        variant: Variant,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Enumerate the applicable moves
    Moves {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Random move walks checking coloring invariance
    Fuzz {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 15)]
        steps: usize,
        #[arg(long, default_value_t = 200)]
        walks: usize,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Run the verification suites
    Verify {
        /// Run only this suite (default: all)
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_crossings: usize,
        #[arg(long, default_value_t = 2)]
        max_bars: usize,
        #[arg(long, default_value_t = 200)]
        walks: usize,
        #[arg(long, default_value_t = 15)]
        steps: usize,
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// List the catalog entries
    Catalog {
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[command(flatten)]
        json: JsonFlag,
    },
}

/// Domain error: message, exit code 1.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn resolve(input: &Input) -> Result<TwistedCode, Failure> {
    match (&input.code, &input.name) {
        (Some(code), None) => Ok(TwistedCode::parse(code)?),
        (None, Some(name)) => {
            let entries = catalog_load(input.catalog.as_deref())?;
            let entry = catalog_find(&entries, name)
                .ok_or_else(|| Failure(format!("no catalog entry named '{name}'")))?;
            Ok(entry.parsed())
        }
        (None, None) => {
            // usage error, not a domain error
            Cli::command_usage_exit("either a code or --name is required");
        }
        (Some(_), Some(_)) => unreachable!("clap rejects code with --name"),
    }
}

impl Cli {
    fn command_usage_exit(msg: &str) -> ! {
        eprintln!("error: {msg}");
        std::process::exit(2);
    }
}

fn parse_target(spec: &str) -> Result<FiniteTarget, Failure> {
    let (kind, name) = spec
        .split_once(':')
        .ok_or_else(|| Failure(format!("target '{spec}' is not group:<name> or quandle:<name>")))?;
    let target = builtin_target(name)?;
    let want = match kind {
        "group" => TargetKind::Group,
        "quandle" => TargetKind::Quandle,
        other => return Err(Failure(format!("unknown target kind '{other}'"))),
    };
    if target.kind != want {
        return Err(Failure(format!("target '{name}' is not a {kind}")));
    }
    Ok(target)
}

fn presentation(
    code: &TwistedCode,
    variant: Variant,
    kind: TargetKind,
) -> Result<Presentation, Failure> {
    Ok(match (variant, kind) {
        (Variant::Twisted, TargetKind::Group) => twisted_group(code),
        (Variant::Twisted, TargetKind::Quandle) => twisted_quandle(code),
        (Variant::Upper, TargetKind::Group) => upper_group(code)?,
        (Variant::Upper, TargetKind::Quandle) => upper_quandle(code)?,
        (Variant::Lower, TargetKind::Group) => lower_group(code)?,
        (Variant::Lower, TargetKind::Quandle) => lower_quandle(code)?,
    })
}

fn emit(json: bool, value: serde_json::Value, human: String) {
    if json {
        println!("{value}");
    } else {
        println!("{human}");
    }
}

fn fuzz_entries(input: &Input) -> Result<Vec<CatalogEntry>, Failure> {
    match (&input.code, &input.name) {
        (Some(code), None) => Ok(vec![CatalogEntry {
            name: "input".into(),
            code: TwistedCode::parse(code)?.serialize(),
            notes: String::new(),
            expected: Default::default(),
        }]),
        (None, Some(name)) => {
            let entries = catalog_load(input.catalog.as_deref())?;
            let entry = catalog_find(&entries, name)
                .ok_or_else(|| Failure(format!("no catalog entry named '{name}'")))?;
            Ok(vec![entry.clone()])
        }
        (None, None) => Ok(catalog_load(input.catalog.as_deref())?),
        (Some(_), Some(_)) => unreachable!(),
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.cmd {
        Cmd::Validate { input, json } => {
            let code = resolve(&input)?;
            emit(
                json.json,
                serde_json::json!({"valid": true, "code": code.serialize()}),
                format!("valid: {}", code.serialize()),
            );
        }
        Cmd::Stats { input, json } => {
            let stats = resolve(&input)?.stats();
            emit(
                json.json,
                serde_json::to_value(&stats).unwrap(),
                format!(
                    "crossings: {}\nbars per component: {:?}\nwrithe: {}\ncomponents: {}",
                    stats.crossing_count,
                    stats.bar_count_per_component,
                    stats.writhe,
                    stats.component_count
                ),
            );
        }
        Cmd::Cover { input, json } => {
            let result = double_cover(&resolve(&input)?);
            emit(
                json.json,
                serde_json::to_value(&result).unwrap(),
                result.cover.serialize(),
            );
        }
        Cmd::Surface { input, json } => {
            let inv = surface_invariants(&abstract_diagram(&resolve(&input)?));
            let human = inv
                .pieces
                .iter()
                .map(|p| {
                    format!(
                        "piece: crossings {:?}, {}, euler characteristic {}, boundary components {}, {} {}",
                        p.crossings,
                        if p.orientable { "orientable" } else { "non-orientable" },
                        p.euler_characteristic,
                        p.boundary_components,
                        if p.orientable { "genus" } else { "crosscaps" },
                        p.genus_or_crosscaps,
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            emit(json.json, serde_json::to_value(&inv).unwrap(), human);
        }
        Cmd::Group { input, variant, json } => {
            let p = presentation(&resolve(&input)?, variant, TargetKind::Group)?;
            emit(json.json, p.display_json(), present_human(&p));
        }
        Cmd::Quandle { input, variant, json } => {
            let p = presentation(&resolve(&input)?, variant, TargetKind::Quandle)?;
            emit(json.json, p.display_json(), present_human(&p));
        }
        Cmd::Color { input, variant, target, json } => {
            let target = parse_target(&target)?;
            let p = presentation(&resolve(&input)?, variant, target.kind)?;
            let n = count_colorings(&p, &target)?;
            emit(json.json, serde_json::json!(n), n.to_string());
        }
        Cmd::Abelian { input, variant, json } => {
            let p = presentation(&resolve(&input)?, variant, TargetKind::Group)?;
            let inv = abelian_invariants(&p)?;
            emit(
                json.json,
                serde_json::to_value(&inv).unwrap(),
                format!("free rank: {}\ntorsion: {:?}", inv.free_rank, inv.torsion),
            );
        }
        Cmd::Moves { input, json } => {
            let sites = enumerate_moves(&resolve(&input)?);
            let human = sites.iter().map(|s| format!("{s:?}")).collect::<Vec<_>>().join("\n");
            emit(json.json, serde_json::to_value(&sites).unwrap(), human);
        }
        Cmd::Fuzz { input, seed, steps, walks, json } => {
            let entries = fuzz_entries(&input)?;
            let battery: Vec<FiniteTarget> = ["Z2", "Z3", "S3", "D4", "R3"]
                .iter()
                .map(|n| builtin_target(n).unwrap())
                .collect();
            let counts = |code: &TwistedCode| -> Result<Vec<u64>, Failure> {
                battery
                    .iter()
                    .map(|t| {
                        let p = match t.kind {
                            TargetKind::Group => twisted_group(code),
                            TargetKind::Quandle => twisted_quandle(code),
                        };
                        Ok(count_colorings(&p, t)?)
                    })
                    .collect()
            };
            let mut reports = Vec::new();
            let mut all_ok = true;
            for entry in &entries {
                let code = entry.parsed();
                let base = counts(&code)?;
                let mut failures = Vec::new();
                for w in 0..walks {
                    let walk_seed = seed.wrapping_add(w as u64);
                    let trace = random_walk(&code, steps, walk_seed);
                    let got = counts(&trace.final_code)?;
                    if got != base {
                        failures.push(serde_json::json!({
                            "seed": walk_seed,
                            "final": trace.final_code.serialize(),
                            "counts": got,
                        }));
                    }
                }
                all_ok &= failures.is_empty();
                reports.push(serde_json::json!({
                    "name": entry.name,
                    "walks": walks,
                    "passed": failures.is_empty(),
                    "base_counts": base,
                    "failures": failures,
                }));
            }
            let human = reports
                .iter()
                .map(|r| {
                    format!(
                        "{}: {} ({} walks)",
                        r["name"].as_str().unwrap(),
                        if r["passed"].as_bool().unwrap() { "PASS" } else { "FAIL" },
                        walks
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            emit(json.json, serde_json::Value::Array(reports), human);
            return Ok(all_ok);
        }
        Cmd::Verify { suite, seed, max_crossings, max_bars, walks, steps, catalog, json } => {
            let opts = VerifyOptions {
                seed,
                max_crossings,
                max_bars,
                walks,
                steps,
                catalog: catalog_load(catalog.as_deref())?,
            };
            let reports: Vec<SuiteReport> = match &suite {
                None => run_all(&opts),
                Some(name) => vec![run_suite(name, &opts).ok_or_else(|| {
                    Failure(format!("unknown suite '{name}' (known: {})", SUITE_NAMES.join(", ")))
                })?],
            };
            let all_ok = reports.iter().all(|r| r.passed);
            let human = reports
                .iter()
                .map(|r| {
                    let mut line = format!(
                        "{}: {} [{} checks]",
                        r.suite,
                        if r.passed { "PASS" } else { "FAIL" },
                        r.checks
                    );
                    for f in r.failures.iter().take(5) {
                        line.push_str(&format!("\n  {f}"));
                    }
                    line
                })
                .collect::<Vec<_>>()
                .join("\n");
            emit(json.json, serde_json::to_value(&reports).unwrap(), human);
            return Ok(all_ok);
        }
        Cmd::Catalog { catalog, json } => {
            let entries = catalog_load(catalog.as_deref())?;
            let human = entries
                .iter()
                .map(|e| format!("{}: {}\n  {}", e.name, e.code, e.notes))
                .collect::<Vec<_>>()
                .join("\n");
            emit(json.json, serde_json::to_value(&entries).unwrap(), human);
        }
    }
    Ok(true)
}

fn present_human(p: &Presentation) -> String {
    let mut out = format!("generators: {}", p.generators.join(", "));
    for r in p.relation_strings() {
        out.push_str(&format!("\n{r}"));
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
