//! Command-line front end. [`run`] is the whole program minus process I/O.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::calculus_towers::{
    hm_factors, tower_stage, wedge_divergence_report, wedge_layer_decomposition, StabilizationRule,
};
use crate::cofibre_filtration::{
    layer_filtration, moore_layer_simplified, moore_layer_summary, smash_power_graded, FiltrationPiece,
    MapDescriptor,
};
use crate::error::{CalcError, Result};
use crate::k_euler_reports::{layer_euler_breakdown, moore_nonvanishing_report, moore_split_limit_report};
use crate::lie_words::hall_basis;
use crate::partition_homology::{chain_counts, order_complex_betti, partition_poset, Coefficients, PARTITION_N_HARD_LIMIT};
use crate::stable_complex::{parse_complex, parse_complex_list, OddPrime, StableComplex};
use crate::arith::is_prime;

#[derive(Debug, Parser)]
#[command(name = "towercalc", version, about = "Goodwillie tower bookkeeping on wedges and Moore spectra")]
struct Cli {
    /// The prime p (odd wherever Moore cells are involved).
    #[arg(long, global = true, default_value_t = 3)]
    prime: u32,

    /// Height h of the periodicity.
    #[arg(long, global = true, default_value_t = 1)]
    height: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(flatten)]
    limits: Limits,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Text,
}

/// Safety limits on enumeration sizes.
#[derive(Debug, Clone, Copy, Args)]
pub struct Limits {
    /// Longest Lie word enumerated.
    #[arg(long, global = true, env = "TOWERCALC_MAX_LENGTH", default_value_t = 12)]
    pub max_word_length: u32,

    /// Largest number of wedge summands k.
    #[arg(long, global = true, env = "TOWERCALC_MAX_K", default_value_t = 4)]
    pub max_k: usize,

    /// Largest n for the partition complex (at most 8).
    #[arg(long, global = true, env = "TOWERCALC_MAX_PARTITION_N", default_value_t = 7)]
    pub max_partition_n: u32,

    /// Largest layer index for word-free layer computations.
    #[arg(long, global = true, env = "TOWERCALC_MAX_LAYER", default_value_t = 101)]
    pub max_layer: u32,
}

#[derive(Debug, Args)]
struct Inputs {
    /// Sphere dimensions, e.g. `2,2` for S^2 ∨ S^2.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with = "complexes")]
    spheres: Option<Vec<i64>>,

    /// JSON array of complexes, or `@path` to read one from a file.
    #[arg(long)]
    complexes: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ordered Lyndon basis of the free Lie algebra.
    HallBasis {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_length: u32,
    },
    /// Hilton–Milnor factors Σw(X) of a wedge.
    HmFactors {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        max_length: u32,
    },
    /// Factor list of stage n of the tower on a wedge.
    Tower {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Terms of the n-th layer on a wedge.
    WedgeLayers {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Filtration of D_n cof(f), or one graded piece of cof(f)^{∧n}.
    CofFiltration {
        /// Use f = degree p on S^ell.
        #[arg(long, allow_negative_numbers = true, required_unless_present = "zero_source")]
        ell: Option<i64>,
        /// Use the zero map from this complex (JSON) instead.
        #[arg(long, requires = "zero_target", conflicts_with = "ell")]
        zero_source: Option<String>,
        #[arg(long)]
        zero_target: Option<String>,
        #[arg(long)]
        n: u32,
        /// Report graded piece k of cof(f)^{∧n} instead of the layer filtration.
        #[arg(long)]
        graded_k: Option<u32>,
    },
    /// Closed-form filtration of the layer D_n M^ell for prime n.
    MooreLayers {
        #[arg(long, allow_negative_numbers = true)]
        ell: i64,
        #[arg(long)]
        n: u32,
        /// Word counts instead of word lists.
        #[arg(long)]
        compact: bool,
    },
    /// Reduced Betti numbers of the partition complex.
    PartitionBetti {
        #[arg(long)]
        n: u32,
        /// `Q` or `F<q>`.
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        dump_simplices: bool,
    },
    /// Euler characteristic of K-theory of D_n M^ell.
    MooreEuler {
        #[arg(long, allow_negative_numbers = true)]
        ell: i64,
        #[arg(long)]
        n: u32,
    },
    /// Stabilization stages witnessing divergence on a wedge of spheres.
    DivergenceWedge {
        #[arg(long, value_delimiter = ',', required = true)]
        spheres: Vec<i64>,
        #[arg(long)]
        max_length: u32,
    },
    /// Nonvanishing certificate for the layers of M^ell.
    DivergenceMoore {
        #[arg(long, allow_negative_numbers = true)]
        ell: i64,
        #[arg(long)]
        n_max: u32,
        /// Include the split-tower limit statement (needs ell ≥ 5).
        #[arg(long)]
        split: bool,
    },
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Column table used for the tsv and text formats.
struct Table {
    headers: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(headers: Vec<&'static str>) -> Self {
        Table { headers, rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn tsv(&self) -> String {
        let mut out = self.headers.join("\t");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }

    fn text(&self) -> String {
        let widths: Vec<usize> = (0..self.headers.len())
            .map(|i| {
                self.rows
                    .iter()
                    .map(|r| r[i].chars().count())
                    .chain([self.headers[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        let line = |cells: Vec<&str>, out: &mut String| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(self.headers.clone(), &mut out);
        for row in &self.rows {
            line(row.iter().map(String::as_str).collect(), &mut out);
        }
        out
    }
}

struct Report {
    json: Value,
    table: Table,
}

fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("reports serialize")
}

fn degree_string(d: &[u32]) -> String {
    let parts: Vec<String> = d.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

fn check_bound(what: &'static str, value: u64, limit: u64) -> Result<()> {
    if value > limit {
        return Err(CalcError::BoundExceeded { what, value, limit });
    }
    Ok(())
}

fn odd_prime(p: u32) -> Result<OddPrime> {
    OddPrime::new(p)
}

/// Prime carried by complexes built from `--spheres`; sphere cells do not see
/// it, so `p = 2` falls back to the default.
fn sphere_prime(p: u32) -> Result<OddPrime> {
    if p == 2 {
        Ok(OddPrime::default())
    } else {
        odd_prime(p)
    }
}

fn read_inputs(inputs: &Inputs, p: u32, limits: &Limits) -> Result<Vec<StableComplex>> {
    let xs = match (&inputs.spheres, &inputs.complexes) {
        (Some(dims), None) => {
            let prime = sphere_prime(p)?;
            dims.iter().map(|&d| StableComplex::sphere(prime, d)).collect()
        }
        (None, Some(src)) => {
            let text = match src.strip_prefix('@') {
                Some(path) => std::fs::read_to_string(path)
                    .map_err(|e| CalcError::Schema(format!("cannot read {path}: {e}")))?,
                None => src.clone(),
            };
            parse_complex_list(&text, odd_prime(p)?)?
        }
        _ => return Err(CalcError::precondition("give exactly one of --spheres or --complexes")),
    };
    if xs.is_empty() {
        return Err(CalcError::precondition("at least one complex is required"));
    }
    check_bound("k", xs.len() as u64, limits.max_k as u64)?;
    Ok(xs)
}

fn check_stab_prime(p: u32) -> Result<()> {
    if !is_prime(u64::from(p)) {
        return Err(CalcError::NotPrime(u64::from(p)));
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let limits = &cli.limits;
    check_bound("max partition n", u64::from(limits.max_partition_n), u64::from(PARTITION_N_HARD_LIMIT))?;
    let p = cli.prime;
    match &cli.command {
        Command::HallBasis { k, max_length } => {
            check_bound("k", *k as u64, limits.max_k as u64)?;
            check_bound("max_length", u64::from(*max_length), u64::from(limits.max_word_length))?;
            if *k == 0 || *max_length == 0 {
                return Err(CalcError::precondition("k and max_length must be at least 1"));
            }
            let words = hall_basis(*k, *max_length);
            let mut table = Table::new(vec!["word", "multidegree", "length"]);
            let records: Vec<Value> = words
                .iter()
                .map(|w| {
                    table.push(vec![w.to_string(), degree_string(w.multidegree()), w.length().to_string()]);
                    json!({"word": w, "multidegree": w.multidegree(), "length": w.length()})
                })
                .collect();
            Ok(Report {
                json: json!({"k": k, "max_length": max_length, "words": records}),
                table,
            })
        }
        Command::HmFactors { inputs, max_length } => {
            check_bound("max_length", u64::from(*max_length), u64::from(limits.max_word_length))?;
            let xs = read_inputs(inputs, p, limits)?;
            let factors = hm_factors(&xs, *max_length)?;
            let mut table = Table::new(vec!["word", "multidegree", "length", "target"]);
            let records: Vec<Value> = factors
                .iter()
                .map(|f| {
                    table.push(vec![
                        f.word.to_string(),
                        degree_string(f.word.multidegree()),
                        f.word.length().to_string(),
                        f.target.to_string(),
                    ]);
                    json!({"word": f.word, "multidegree": f.word.multidegree(), "length": f.word.length(), "target": f.target})
                })
                .collect();
            Ok(Report {
                json: Value::Array(records),
                table,
            })
        }
        Command::Tower { n, inputs } => {
            check_bound("n", u64::from(*n), u64::from(limits.max_word_length))?;
            check_stab_prime(p)?;
            let xs = read_inputs(inputs, p, limits)?;
            let rule = StabilizationRule::new(u64::from(p), cli.height);
            let tower = tower_stage(*n, &xs, Some(&rule))?;
            let mut table = Table::new(vec!["word", "multidegree", "length", "target", "trunc", "stab_stage"]);
            for f in &tower.factors {
                table.push(vec![
                    f.word.to_string(),
                    degree_string(&f.multidegree),
                    f.length.to_string(),
                    f.target.to_string(),
                    f.trunc.to_string(),
                    f.stab_stage.map_or_else(|| "-".into(), |s| s.to_string()),
                ]);
            }
            Ok(Report {
                json: to_json(&tower),
                table,
            })
        }
        Command::WedgeLayers { n, inputs } => {
            check_bound("n", u64::from(*n), u64::from(limits.max_word_length))?;
            let xs = read_inputs(inputs, p, limits)?;
            let layers = wedge_layer_decomposition(*n, &xs)?;
            let mut table = Table::new(vec!["composition", "d", "word", "target"]);
            for t in &layers.terms {
                table.push(vec![
                    degree_string(&t.composition),
                    t.divisor.to_string(),
                    t.word.to_string(),
                    format!("D_{}({})", t.derivative_index, t.target),
                ]);
            }
            Ok(Report {
                json: to_json(&layers),
                table,
            })
        }
        Command::CofFiltration {
            ell,
            zero_source,
            zero_target,
            n,
            graded_k,
        } => {
            check_bound("n", u64::from(*n), u64::from(limits.max_word_length))?;
            let prime = odd_prime(p)?;
            let (e, f) = match (ell, zero_source, zero_target) {
                (Some(ell), None, None) => (StableComplex::sphere(prime, *ell), MapDescriptor::DegreeP { source_dim: *ell }),
                (None, Some(src), Some(tgt)) => {
                    let source = parse_complex(src, prime)?;
                    let target = parse_complex(tgt, prime)?;
                    (source.clone(), MapDescriptor::ZeroMap { source, target })
                }
                _ => return Err(CalcError::precondition("give --ell, or both --zero-source and --zero-target")),
            };
            if let Some(k) = graded_k {
                let piece = smash_power_graded(&e, &f, *n, *k)?;
                let mut table = Table::new(vec!["k", "expanded"]);
                table.push(vec![
                    k.to_string(),
                    piece.expanded().map_or_else(|| "opaque".into(), |c| c.to_string()),
                ]);
                return Ok(Report {
                    json: json!({"n": n, "k": k, "map": f, "piece": piece}),
                    table,
                });
            }
            let filtration = layer_filtration(&e, &f, *n)?;
            Ok(Report {
                table: filtration_table(&filtration.pieces),
                json: to_json(&filtration),
            })
        }
        Command::MooreLayers { ell, n, compact } => {
            let prime = odd_prime(p)?;
            if *compact {
                check_bound("n", u64::from(*n), u64::from(limits.max_layer))?;
                let summary = moore_layer_summary(*ell, *n, prime)?;
                let mut table = Table::new(vec!["k", "copies", "term"]);
                for piece in &summary {
                    table.push(vec![piece.k.to_string(), piece.copies.to_string(), piece.term.to_string()]);
                }
                let null_flag = u64::from(*n) > 2 * u64::from(p);
                return Ok(Report {
                    json: json!({"n": n, "ell": ell, "k0": {"k0": "opaque", "null_flag": null_flag}, "pieces": summary}),
                    table,
                });
            }
            check_bound("n", u64::from(*n), u64::from(limits.max_word_length))?;
            let filtration = moore_layer_simplified(*ell, *n, prime)?;
            Ok(Report {
                table: filtration_table(&filtration.pieces),
                json: to_json(&filtration),
            })
        }
        Command::PartitionBetti { n, field, dump_simplices } => {
            check_bound("partition n", u64::from(*n), u64::from(limits.max_partition_n))?;
            let field: Coefficients = field.parse()?;
            let table_data = order_complex_betti(*n, field)?;
            let betti: serde_json::Map<String, Value> =
                table_data.betti.iter().map(|(d, b)| (d.to_string(), json!(b))).collect();
            let mut out = json!({"n": n, "field": table_data.field, "betti": betti});
            if let Some(agree) = table_data.primes_agree {
                out["primes_agree"] = json!(agree);
            }
            if *dump_simplices {
                out["simplex_counts"] = json!(table_data.simplex_counts);
                let counted: Vec<String> = chain_counts(&partition_poset(*n)?).iter().map(u128::to_string).collect();
                out["poset_size"] = json!(partition_poset(*n)?.len());
                out["chain_counts_by_dp"] = json!(counted);
            }
            let mut table = Table::new(vec!["degree", "betti"]);
            for (d, b) in &table_data.betti {
                table.push(vec![d.to_string(), b.to_string()]);
            }
            Ok(Report { json: out, table })
        }
        Command::MooreEuler { ell, n } => {
            check_bound("n", u64::from(*n), u64::from(limits.max_layer))?;
            let breakdown = layer_euler_breakdown(*ell, *n, odd_prime(p)?)?;
            let mut table = Table::new(vec!["k", "chi"]);
            for (k, chi) in &breakdown.per_piece {
                table.push(vec![k.to_string(), chi.to_string()]);
            }
            Ok(Report {
                json: json!({"ell": ell, "prime": p, "n": n, "chi": breakdown.total, "per_piece": breakdown.per_piece}),
                table,
            })
        }
        Command::DivergenceWedge { spheres, max_length } => {
            check_bound("max_length", u64::from(*max_length), u64::from(limits.max_word_length))?;
            check_bound("k", spheres.len() as u64, limits.max_k as u64)?;
            check_stab_prime(p)?;
            let rule = StabilizationRule::new(u64::from(p), cli.height);
            let report = wedge_divergence_report(spheres, &rule, *max_length, sphere_prime(p)?)?;
            let mut table = Table::new(vec!["word", "multidegree", "length", "target", "stab_stage"]);
            for e in &report.entries {
                table.push(vec![
                    e.word.to_string(),
                    degree_string(&e.multidegree),
                    e.length.to_string(),
                    e.target.to_string(),
                    e.stab_stage.to_string(),
                ]);
            }
            Ok(Report {
                json: to_json(&report),
                table,
            })
        }
        Command::DivergenceMoore { ell, n_max, split } => {
            check_bound("n_max", u64::from(*n_max), u64::from(limits.max_layer))?;
            let prime = odd_prime(p)?;
            let (json, chi) = if *split {
                let r = moore_split_limit_report(*ell, *n_max, prime)?;
                let chi = r.certificate.chi.clone();
                (to_json(&r), chi)
            } else {
                let r = moore_nonvanishing_report(*ell, *n_max, prime)?;
                let chi = r.chi.clone();
                (to_json(&r), chi)
            };
            let mut table = Table::new(vec!["n", "chi"]);
            for (n, c) in chi {
                table.push(vec![n.to_string(), c.to_string()]);
            }
            Ok(Report { json, table })
        }
    }
}

fn filtration_table(pieces: &[FiltrationPiece]) -> Table {
    let mut table = Table::new(vec!["k", "d", "shift", "word", "inner"]);
    for piece in pieces {
        match piece {
            FiltrationPiece::Bottom { null_flag, .. } => table.push(vec![
                "0".into(),
                "-".into(),
                "-".into(),
                "-".into(),
                if *null_flag { "opaque (null)".into() } else { "opaque".into() },
            ]),
            FiltrationPiece::Terms { k, terms } => {
                for t in terms {
                    table.push(vec![
                        k.to_string(),
                        t.d.to_string(),
                        t.shift.to_string(),
                        t.word.to_string(),
                        t.inner.to_string(),
                    ]);
                }
            }
        }
    }
    table
}

fn error_line(code: &str, message: &str) -> String {
    format!("{}\n", json!({"code": code, "message": message}))
}

/// Parses `argv` (including the program name) and runs one subcommand.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: error_line("usage", e.to_string().lines().next().unwrap_or("invalid arguments")),
                },
            };
        }
    };
    match dispatch(&cli) {
        Ok(report) => Outcome {
            code: 0,
            stdout: match cli.format {
                Format::Json => format!("{}\n", report.json),
                Format::Tsv => report.table.tsv(),
                Format::Text => report.table.text(),
            },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: error_line(e.code(), &e.to_string()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(args: &[&str]) -> Value {
        let out = run(std::iter::once("towercalc").chain(args.iter().copied()));
        assert_eq!(out.code, 0, "stderr: {}", out.stderr);
        serde_json::from_str(&out.stdout).unwrap()
    }

    fn fails(args: &[&str]) -> Value {
        let out = run(std::iter::once("towercalc").chain(args.iter().copied()));
        assert_eq!(out.code, 2);
        assert!(out.stdout.is_empty());
        assert_eq!(out.stderr.lines().count(), 1);
        serde_json::from_str(&out.stderr).unwrap()
    }

    #[test]
    fn tower_example() {
        let v = ok(&["tower", "--n", "2", "--spheres", "2,2"]);
        assert_eq!(v["factors"].as_array().unwrap().len(), 3);
        assert_eq!(v["factors"][2]["word"], "[x1,x2]");
        assert_eq!(v["factors"][2]["trunc"], 1);
    }

    #[test]
    fn partition_betti_example() {
        let v = ok(&["partition-betti", "--n", "4"]);
        assert_eq!(v["betti"], json!({"1": 6}));
    }

    #[test]
    fn moore_euler_example() {
        let v = ok(&["moore-euler", "--ell", "5", "--prime", "3", "--n", "7"]);
        assert_eq!(v["chi"], 1);
    }

    #[test]
    fn precondition_errors_exit_2() {
        assert_eq!(fails(&["moore-euler", "--ell", "5", "--n", "5"])["code"], "precondition");
        assert_eq!(fails(&["moore-euler", "--ell", "5", "--n", "9"])["code"], "not_prime");
        assert_eq!(fails(&["partition-betti", "--n", "8"])["code"], "bound_exceeded");
        assert_eq!(fails(&["hall-basis", "--k", "2", "--max-length", "13"])["code"], "bound_exceeded");
        assert_eq!(fails(&["moore-layers", "--ell", "5", "--n", "7", "--prime", "9"])["code"], "invalid_prime");
        assert_eq!(fails(&["divergence-moore", "--ell", "4", "--n-max", "20", "--split"])["code"], "precondition");
        assert_eq!(fails(&["no-such-command"])["code"], "usage");
    }

    #[test]
    fn complexes_are_parsed_against_the_prime() {
        let xs = r#"[{"prime":3,"cells":[{"kind":"moore","dim":5,"mult":1}]}]"#;
        let v = ok(&["hm-factors", "--complexes", xs, "--max-length", "4"]);
        assert_eq!(v.as_array().unwrap().len(), 1);
        assert_eq!(v[0]["target"]["cells"][0]["dim"], 6);
        assert_eq!(fails(&["hm-factors", "--complexes", xs, "--max-length", "4", "--prime", "5"])["code"], "prime_mismatch");
    }

    #[test]
    fn limits_read_from_flags() {
        let v = fails(&["hall-basis", "--k", "2", "--max-length", "6", "--max-word-length", "5"]);
        assert_eq!(v["code"], "bound_exceeded");
        assert_eq!(fails(&["partition-betti", "--n", "5", "--max-partition-n", "9"])["code"], "bound_exceeded");
    }

    #[test]
    fn tsv_and_text_formats() {
        let out = run(["towercalc", "--format", "tsv", "tower", "--n", "2", "--spheres", "2,2"]);
        assert_eq!(
            out.stdout,
            "word\tmultidegree\tlength\ttarget\ttrunc\tstab_stage\n\
             x1\t(1,0)\t1\tS^3\t2\t3\n\
             x2\t(0,1)\t1\tS^3\t2\t3\n\
             [x1,x2]\t(1,1)\t2\tS^5\t1\t6\n"
        );
        let out = run(["towercalc", "--format", "text", "partition-betti", "--n", "3"]);
        assert_eq!(out.stdout, "degree  betti\n0       2\n");
    }

    #[test]
    fn output_is_deterministic() {
        let args = ["towercalc", "divergence-wedge", "--spheres", "2,3", "--max-length", "6", "--prime", "2"];
        assert_eq!(run(args), run(args));
    }
}
