use clap::{Parser, Subcommand};
use serde_json::json;

use sfq::counting::{
    brute_force_distribution, conditional_prob, fast_distribution, joint_distribution, JointSpec,
};
use sfq::error::{Error, Result};
use sfq::field::make_field;
use sfq::formulas::predicted_prob_zero;
use sfq::harness::{
    conjecture_scan, independence_suite, scan_classification, verify_scan, ConjectureKind, Family,
    ScanConfig, ScanReport,
};
use sfq::partitions::Partition;
use sfq::report::{report_emit, Format};
use sfq::schur::{classify_matrix, jt_matrix, psi_with_trace, Basis};

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[derive(Parser)]
#[command(
    name = "sfq",
    about = "Exact value distributions of Jacobi-Trudi determinants over finite fields",
    version
)]
struct Cli {
    /// Worker threads for counting sweeps; results are identical for any value.
    #[arg(long, global = true, default_value_t = default_workers())]
    workers: usize,

    /// Maximum determinant evaluations per counting call.
    #[arg(long, global = true, default_value_t = 1_000_000_000u128)]
    budget: u128,

    /// Report format for the scan subcommands.
    #[arg(long, global = true, default_value = "json")]
    format: String,

    /// Zero out wall-clock fields so reports are byte-identical across runs.
    #[arg(long, global = true)]
    stable: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Probability that the shape's determinant maps to zero.
    Prob {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "h")]
        basis: String,
        /// Emit JSON instead of a summary line.
        #[arg(long)]
        json: bool,
        /// Use the full-enumeration oracle instead of fiber counting.
        #[arg(long)]
        oracle: bool,
    },
    /// Full value distribution of the shape's determinant.
    Dist {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "h")]
        basis: String,
    },
    /// Joint count: every shape's determinant hits its paired target.
    Joint {
        /// Semicolon-separated shapes, e.g. "2,2;3,3".
        #[arg(long)]
        shapes: String,
        /// Semicolon-separated field elements, e.g. "0;0".
        #[arg(long)]
        targets: String,
        #[arg(long)]
        q: u64,
        /// Also report P(first | last event) exactly (two shapes only).
        #[arg(long)]
        conditional: bool,
    },
    /// Show the Jacobi-Trudi matrix, its pivot reduction, and class flags.
    Reduce {
        #[arg(long)]
        shape: String,
        /// Coefficient field for the symbolic reduction.
        #[arg(long, default_value_t = 101)]
        q: u64,
        #[arg(long, default_value = "h")]
        basis: String,
        /// Print each pivot step.
        #[arg(long)]
        trace: bool,
    },
    /// Closed-form prediction for the zero probability of a shape.
    Predict {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        q: u64,
    },
    /// Sweep all shapes up to a maximum variable index against predictions.
    Verify {
        #[arg(long = "max-label")]
        max_label: u32,
        #[arg(long, value_delimiter = ',')]
        q: Vec<u64>,
    },
    /// Check that P(0) = 1/q exactly iff hook, rectangle or staircase.
    Classify {
        #[arg(long = "max-label")]
        max_label: u32,
        #[arg(long, value_delimiter = ',')]
        q: Vec<u64>,
    },
    /// Joint-vanishing independence checks for a shape family.
    Independence {
        /// hooks-by-size | squares | rect-diff-c | rect-sum-c |
        /// staircase-step2 | negative-pair
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 3)]
        limit: u32,
        #[arg(long, value_delimiter = ',')]
        q: Vec<u64>,
        /// The c parameter for the rect-diff-c / rect-sum-c families.
        #[arg(long, default_value_t = 1)]
        c: i64,
    },
    /// Report measured support for a conjecture (never a hard failure).
    Conjecture {
        /// upper-bound | two-staircase | quasi-poly
        #[arg(long)]
        which: String,
        #[arg(long = "max-label", default_value_t = 6)]
        max_label: u32,
        #[arg(long, value_delimiter = ',')]
        q: Vec<u64>,
    },
}

fn parse_shape(s: &str) -> Result<Partition> {
    s.parse()
}

fn parse_shapes(s: &str) -> Result<Vec<Partition>> {
    s.split(';').map(|p| p.trim().parse()).collect()
}

fn parse_targets(s: &str, q: u64) -> Result<Vec<u64>> {
    s.split(';')
        .map(|t| {
            let v: u64 = t
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad target {t:?}")))?;
            if v >= q {
                return Err(Error::Config(format!("target {v} is not an element of GF({q})")));
            }
            Ok(v)
        })
        .collect()
}

fn modulus_json(f: &sfq::field::Field) -> serde_json::Value {
    json!(f.modulus().to_vec())
}

fn print_report(report: &ScanReport, format: &str) -> Result<i32> {
    let fmt: Format = format.parse()?;
    println!("{}", report_emit(report, fmt));
    Ok(report.exit_code())
}

fn run(cli: Cli) -> Result<i32> {
    let scan_cfg = ScanConfig {
        budget: cli.budget,
        workers: cli.workers,
        stable: cli.stable,
    };
    let count_cfg = scan_cfg.count_cfg();
    match cli.cmd {
        Cmd::Prob {
            shape,
            q,
            basis,
            json,
            oracle,
        } => {
            let shape = parse_shape(&shape)?;
            let basis: Basis = basis.parse()?;
            let field = make_field(q)?;
            let dist = if oracle {
                brute_force_distribution(&shape, &field, basis, &count_cfg)?
            } else {
                fast_distribution(&shape, &field, basis, &count_cfg)?
            };
            let p0 = dist.prob_zero();
            let pred = predicted_prob_zero(&shape, q);
            if json {
                let mut obj = serde_json::Map::new();
                obj.insert("shape".into(), json!(shape.parts()));
                obj.insert("basis".into(), json!(basis.to_string()));
                obj.insert("q".into(), json!(q));
                obj.insert("m".into(), json!(dist.m));
                obj.insert("modulus".into(), modulus_json(&field));
                obj.insert("count0".into(), json!(p0.count.to_string()));
                obj.insert("total".into(), json!(p0.total_string()));
                obj.insert("prob_zero".into(), json!(p0.fraction_string()));
                if let Some(p) = pred {
                    obj.insert("rule".into(), json!(p.rule));
                    obj.insert(
                        "predicted".into(),
                        json!(format!("{}/{}", p.value.numer(), p.value.denom())),
                    );
                }
                println!("{}", serde_json::to_string(&obj).unwrap());
            } else {
                println!(
                    "P(s_{} -> 0) over GF({q}) = {} ({} of {})",
                    shape,
                    p0.fraction_string(),
                    p0.count,
                    p0.total_string()
                );
                if let Some(p) = pred {
                    println!(
                        "predicted by rule {}: {}/{}",
                        p.rule,
                        p.value.numer(),
                        p.value.denom()
                    );
                }
            }
            Ok(0)
        }
        Cmd::Dist { shape, q, basis } => {
            let shape = parse_shape(&shape)?;
            let basis: Basis = basis.parse()?;
            let field = make_field(q)?;
            let dist = fast_distribution(&shape, &field, basis, &count_cfg)?;
            let mut counts = serde_json::Map::new();
            for (elem, &c) in dist.counts.iter().enumerate() {
                counts.insert(elem.to_string(), json!(c.to_string()));
            }
            let mut obj = serde_json::Map::new();
            obj.insert("shape".into(), json!(shape.parts()));
            obj.insert("basis".into(), json!(basis.to_string()));
            obj.insert("q".into(), json!(q));
            obj.insert("m".into(), json!(dist.m));
            obj.insert("modulus".into(), modulus_json(&field));
            obj.insert("counts".into(), serde_json::Value::Object(counts));
            obj.insert("total".into(), json!(format!("{q}^{}", dist.m)));
            obj.insert(
                "prob_zero".into(),
                json!(dist.prob_zero().fraction_string()),
            );
            println!("{}", serde_json::to_string(&obj).unwrap());
            Ok(0)
        }
        Cmd::Joint {
            shapes,
            targets,
            q,
            conditional,
        } => {
            let shapes = parse_shapes(&shapes)?;
            let targets = parse_targets(&targets, q)?;
            let field = make_field(q)?;
            let spec = JointSpec::new(shapes.clone(), targets.clone())?;
            let joint = joint_distribution(&spec, &field, &count_cfg)?;
            let mut obj = serde_json::Map::new();
            obj.insert(
                "shapes".into(),
                json!(shapes.iter().map(|s| s.parts().to_vec()).collect::<Vec<_>>()),
            );
            obj.insert(
                "targets".into(),
                json!(targets.iter().map(|t| t.to_string()).collect::<Vec<_>>()),
            );
            obj.insert("q".into(), json!(q));
            obj.insert("m".into(), json!(joint.m));
            obj.insert("count".into(), json!(joint.count.to_string()));
            obj.insert("total".into(), json!(joint.total_string()));
            obj.insert("prob".into(), json!(joint.fraction_string()));
            if conditional {
                let (_, cond) = conditional_prob(&spec, &field, &count_cfg)?;
                obj.insert(
                    "conditional".into(),
                    json!(format!("{}/{}", cond.numer(), cond.denom())),
                );
            }
            println!("{}", serde_json::to_string(&obj).unwrap());
            Ok(0)
        }
        Cmd::Reduce {
            shape,
            q,
            basis,
            trace,
        } => {
            let shape = parse_shape(&shape)?;
            let basis: Basis = basis.parse()?;
            let field = make_field(q)?;
            let m = jt_matrix(&shape, basis, &field);
            println!("Jacobi-Trudi matrix of ({shape}) in basis {basis} over GF({q}):");
            print!("{m}");
            let before = classify_matrix(&m);
            println!(
                "classes: general={} reduced={} special={}",
                before.general, before.reduced, before.special
            );
            let (out, steps) = psi_with_trace(&m)?;
            if trace {
                for s in &steps {
                    println!("  {s}");
                }
            }
            println!("reduced matrix (det scale alpha = {}):", out.alpha);
            print!("{}", out.matrix);
            let after = classify_matrix(&out.matrix);
            println!(
                "classes: general={} reduced={} special={}",
                after.general, after.reduced, after.special
            );
            Ok(0)
        }
        Cmd::Predict { shape, q } => {
            let shape = parse_shape(&shape)?;
            make_field(q)?; // validate q
            match predicted_prob_zero(&shape, q) {
                Some(p) => println!(
                    "{}",
                    json!({
                        "rule": p.rule,
                        "value": format!("{}/{}", p.value.numer(), p.value.denom()),
                    })
                ),
                None => println!("{}", json!({ "rule": "not-covered" })),
            }
            Ok(0)
        }
        Cmd::Verify { max_label, q } => {
            let report = verify_scan(max_label, &q, &scan_cfg)?;
            print_report(&report, &cli.format)
        }
        Cmd::Classify { max_label, q } => {
            let report = scan_classification(max_label, &q, &scan_cfg)?;
            print_report(&report, &cli.format)
        }
        Cmd::Independence {
            family,
            limit,
            q,
            c,
        } => {
            let family = Family::parse(&family, c)?;
            let report = independence_suite(family, limit, &q, &scan_cfg)?;
            print_report(&report, &cli.format)
        }
        Cmd::Conjecture { which, max_label, q } => {
            let which: ConjectureKind = which.parse()?;
            let report = conjecture_scan(which, max_label, &q, &scan_cfg)?;
            print_report(&report, &cli.format)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
