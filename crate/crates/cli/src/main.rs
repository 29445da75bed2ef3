use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use morse_germ::barannikov::{self, FieldSpec};
use morse_germ::generate::{self, GenParams};
use morse_germ::germfile::{self, int_json, matrix_json, to_pretty};
use morse_germ::intmat::{self, IntMatrix};
use morse_germ::omega::{self, OmegaInstance};
use morse_germ::report::{self, canonical_json, move_json, omega_obstruction_json};
use morse_germ::GermComplex;

const INPUT_ERROR: u8 = 64;

#[derive(Parser)]
#[command(
    name = "germcheck",
    version,
    about = "Exact checks on Morse germs along spheres"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide property P over Z and run the field comparison.
    Check(CheckArgs),
    /// Smith normal form with transforms.
    Snf { matrix: Option<PathBuf> },
    /// Hermite normal form by column operations.
    Hnf { matrix: Option<PathBuf> },
    /// Find N with det(B + C N) = +-1, or an obstruction.
    Omega {
        /// One file holding B then C, or two files. Reads stdin when absent.
        files: Vec<PathBuf>,
    },
    /// Integral homology of a germ's complex.
    Homology { germ: PathBuf },
    /// Canonical pairing over a field and reducibility of the diagram.
    Barannikov {
        germ: PathBuf,
        #[arg(long = "field", default_value = "0")]
        fields: Vec<u64>,
        /// List the moves of a reduction, one JSON object per line.
        #[arg(long)]
        trace: bool,
    },
    /// Emit a random germ with sphere homology.
    Gen(GenArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Germ file (omit with --batch).
    germ: Option<PathBuf>,
    /// Field characteristic for the comparison (0 or a prime); repeatable.
    #[arg(long = "field")]
    fields: Vec<u64>,
    /// Gauge entries are searched in [-bound, bound].
    #[arg(long, default_value_t = 3)]
    bound: u64,
    #[arg(long)]
    trace: bool,
    /// Check every *.json file in this directory.
    #[arg(long)]
    batch: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 2)]
    pairs: usize,
    #[arg(long, default_value_t = 0)]
    slides: usize,
    /// Put every plus point above every minus point in the middle degrees.
    #[arg(long)]
    max_gauge: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("germcheck: {msg}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

fn read_input(path: Option<&Path>) -> Result<String, String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| format!("stdin: {e}"))?;
            Ok(s)
        }
    }
}

fn load_germ(path: &Path) -> Result<GermComplex, String> {
    let text = read_input(Some(path))?;
    let germ = germfile::parse_germ(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    germ.ensure_valid()
        .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(germ)
}

fn fields(chars: &[u64]) -> Result<Vec<FieldSpec>, String> {
    chars
        .iter()
        .map(|&c| FieldSpec::new(c).map_err(|e| e.to_string()))
        .collect()
}

fn run(cli: &Cli) -> Result<u8, String> {
    match &cli.command {
        Command::Check(args) => check(args, cli.json),
        Command::Snf { matrix } => {
            let m = IntMatrix::parse(&read_input(matrix.as_deref())?).map_err(|e| e.to_string())?;
            let r = intmat::snf(&m);
            if cli.json {
                print!(
                    "{}",
                    to_pretty(&json!({
                        "S": matrix_json(&r.s),
                        "U": matrix_json(&r.u),
                        "V": matrix_json(&r.v),
                        "elementary_divisors": r.elementary_divisors.iter().map(int_json).collect::<Vec<_>>(),
                        "determinantal_divisors": r.determinantal_divisors.iter().map(int_json).collect::<Vec<_>>(),
                    }))
                );
            } else {
                print!(
                    "S\n{}U\n{}V\n{}",
                    r.s.to_text(),
                    r.u.to_text(),
                    r.v.to_text()
                );
            }
            Ok(0)
        }
        Command::Hnf { matrix } => {
            let m = IntMatrix::parse(&read_input(matrix.as_deref())?).map_err(|e| e.to_string())?;
            let r = intmat::hnf(&m).map_err(|e| e.to_string())?;
            if cli.json {
                print!(
                    "{}",
                    to_pretty(&json!({"H": matrix_json(&r.h), "U": matrix_json(&r.u)}))
                );
            } else {
                print!("H\n{}U\n{}", r.h.to_text(), r.u.to_text());
            }
            Ok(0)
        }
        Command::Omega { files } => {
            let (b, c) = read_omega_pair(files)?;
            let inst = OmegaInstance::new(b, c).map_err(|e| e.to_string())?;
            let v = omega::omega_construct(&inst).map_err(|e| e.to_string())?;
            print!(
                "{}",
                to_pretty(&json!({
                    "extendable_direction": v.decided_yes(),
                    "witness": v.witness().map(matrix_json),
                    "obstruction": v.obstruction().map(omega_obstruction_json),
                }))
            );
            Ok(0)
        }
        Command::Homology { germ } => {
            let text = read_input(Some(germ))?;
            let g = germfile::parse_germ(&text).map_err(|e| format!("{}: {e}", germ.display()))?;
            let groups = g.homology().map_err(|e| e.to_string())?;
            if cli.json {
                let out: Vec<Value> = groups
                    .iter()
                    .enumerate()
                    .map(|(k, h)| {
                        json!({
                            "degree": k,
                            "rank": h.rank,
                            "torsion": h.torsion.iter().map(int_json).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                print!("{}", to_pretty(&Value::Array(out)));
            } else {
                for (k, h) in groups.iter().enumerate() {
                    println!("H_{k} = {h}");
                }
            }
            Ok(0)
        }
        Command::Barannikov {
            germ,
            fields: chars,
            trace,
        } => {
            let g = load_germ(germ)?;
            let mut results = Vec::new();
            for field in fields(chars)? {
                let cf = barannikov::canonical_form(&g, field).map_err(|e| e.to_string())?;
                let state = barannikov::fmc_from_germ(&g, field).map_err(|e| e.to_string())?;
                let red = barannikov::reduce_to_trivial(&state).map_err(|e| e.to_string())?;
                results.push((field, cf, red));
            }
            if cli.json {
                let out: Vec<Value> = results
                    .iter()
                    .map(|(field, cf, red)| {
                        let mut v = json!({
                            "characteristic": field.characteristic(),
                            "canonical_form": canonical_json(cf),
                            "reducible": red.reducible,
                        });
                        if *trace {
                            v["trace"] = red.trace.iter().map(move_json).collect();
                        }
                        v
                    })
                    .collect();
                print!("{}", to_pretty(&Value::Array(out)));
            } else {
                for (field, cf, red) in &results {
                    let pairs: Vec<String> = cf
                        .pairs
                        .iter()
                        .map(|p| format!("{} -> {}", p.source, p.target))
                        .collect();
                    println!("over {field}: pairs [{}]", pairs.join(", "));
                    println!("  unpaired: [{}]", cf.unpaired.join(", "));
                    println!(
                        "  {}",
                        if red.reducible {
                            "reducible to the trivial diagram"
                        } else {
                            "not reducible"
                        }
                    );
                    if *trace {
                        for m in &red.trace {
                            println!("{}", move_json(m));
                        }
                    }
                }
            }
            Ok(0)
        }
        Command::Gen(args) => {
            let g = generate::generate(&GenParams {
                seed: args.seed,
                n: args.n,
                k: args.k,
                pairs: args.pairs,
                slides: args.slides,
                max_gauge: args.max_gauge,
            })
            .map_err(|e| e.to_string())?;
            print!("{}", to_pretty(&germfile::germ_json(&g)));
            Ok(0)
        }
    }
}

fn read_omega_pair(files: &[PathBuf]) -> Result<(IntMatrix, IntMatrix), String> {
    let mats = match files {
        [] | [_] => {
            let text = read_input(files.first().map(PathBuf::as_path))?;
            IntMatrix::parse_many(&text).map_err(|e| e.to_string())?
        }
        [b, c] => {
            let b = IntMatrix::parse(&read_input(Some(b))?)
                .map_err(|e| format!("{}: {e}", b.display()))?;
            let c = IntMatrix::parse(&read_input(Some(c))?)
                .map_err(|e| format!("{}: {e}", c.display()))?;
            vec![b, c]
        }
        _ => return Err("omega takes at most two matrix files".into()),
    };
    match <[IntMatrix; 2]>::try_from(mats) {
        Ok([b, c]) => Ok((b, c)),
        Err(m) => Err(format!(
            "expected two matrices (B then C), found {}",
            m.len()
        )),
    }
}

fn check(args: &CheckArgs, as_json: bool) -> Result<u8, String> {
    let fields = fields(&args.fields)?;
    let paths: Vec<PathBuf> = match (&args.germ, &args.batch) {
        (Some(p), None) => vec![p.clone()],
        (None, Some(dir)) => {
            let mut v: Vec<PathBuf> = fs::read_dir(dir)
                .map_err(|e| format!("{}: {e}", dir.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            v.sort();
            v
        }
        _ => return Err("check needs exactly one of a germ file or --batch <dir>".into()),
    };
    let batch = args.batch.is_some();
    let mut worst = 0u8;
    let mut batch_json = Vec::new();
    for path in &paths {
        let outcome = load_germ(path).and_then(|g| {
            report::check_germ(&g, &fields, args.bound)
                .map_err(|e| format!("{}: {e}", path.display()))
        });
        let (code, value, text) = match outcome {
            Ok(r) => (
                r.exit_code() as u8,
                r.to_json(args.trace),
                r.to_text(args.trace),
            ),
            Err(msg) if batch => (
                INPUT_ERROR,
                json!({"error": msg}),
                format!("error: {msg}\n"),
            ),
            Err(msg) => return Err(msg),
        };
        worst = worst.max(code);
        if !batch {
            if as_json {
                print!("{}", to_pretty(&value));
            } else {
                print!("{text}");
            }
        } else if as_json {
            batch_json.push(json!({"file": path.display().to_string(), "report": value}));
        } else {
            println!("== {}", path.display());
            print!("{text}");
        }
    }
    if batch && as_json {
        print!("{}", to_pretty(&Value::Array(batch_json)));
    }
    Ok(worst)
}
