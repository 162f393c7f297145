//! `equicat`: certified bounds for the equivariant Lusternik-Schnirelmann
//! category of finite group actions, plus exact Weyl-model certificates.
//!
//! Exit codes: 0 success/verified, 1 verification or bound failure, 2 input
//! error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use equicat_core::cover::{brute_force_cat, verify_cover, BruteForceOutcome, SearchBudget};
use equicat_core::strata::{self, build_hierarchy, check_semicontinuity, stratify, HierarchyKind};
use equicat_core::weyl::circle::CircleModel;
use equicat_core::weyl::projective::ProjModel;
use equicat_core::weyl::rat::{parse_rat, rat, Rat};
use equicat_core::weyl::torus::TorusModel;
use equicat_core::weyl::{certify_weyl_cat, WeylModel};

use equicat_cli::certformat::CoverCertificate;
use equicat_cli::document::ActionDocument;
use equicat_cli::report::{self, rat_str, WeylParamsJson};

#[derive(Parser)]
#[command(name = "equicat", version, about = "Certified equivariant LS-category bounds")]
struct Cli {
    /// Emit machine-readable JSON instead of a human summary
    #[arg(long, global = true)]
    json: bool,
    /// Run the shipped fixture corpus through the bounds engine
    #[arg(long)]
    seed_corpus: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Orbit-type stratification report for an action document
    Stratify { file: PathBuf },
    /// Certified lower/upper bounds for an action document
    Bounds {
        file: PathBuf,
        /// Search budget (states explored)
        #[arg(long, default_value_t = 200_000)]
        budget: usize,
        /// Largest cover size to try
        #[arg(long, default_value_t = 6)]
        max_pieces: usize,
        /// Longest witness contiguity chain
        #[arg(long, default_value_t = 48)]
        depth: usize,
    },
    /// Cover certificates: verify or search
    Cover {
        #[command(subcommand)]
        action: CoverCmd,
    },
    /// Exact PL Weyl-model certificates
    Weyl {
        #[command(subcommand)]
        model: WeylCmd,
    },
}

#[derive(Subcommand)]
enum CoverCmd {
    /// Verify a certificate file against an action document
    Verify { file: PathBuf, certificate: PathBuf },
    /// Search for a categorical cover and emit its certificate
    Search {
        file: PathBuf,
        #[arg(long, default_value_t = 200_000)]
        budget: usize,
        #[arg(long, default_value_t = 6)]
        max_pieces: usize,
        #[arg(long, default_value_t = 48)]
        depth: usize,
    },
}

#[derive(Subcommand)]
enum WeylCmd {
    /// Torus with coordinate permutations: the conjugation action model
    Torus {
        /// Torus dimension n (bounds the category of SU(n+1))
        #[arg(long)]
        n: usize,
        /// Required covering margin, e.g. "1/32" (default 0: any positive)
        #[arg(long)]
        epsilon: Option<String>,
        /// Cell inflation, e.g. "1/10" (default 1/(2n); injectivity needs < 1/n)
        #[arg(long)]
        delta: Option<String>,
        /// Covering grid mesh, e.g. "1/96" (default 1/(16(n+1)))
        #[arg(long)]
        mesh: Option<String>,
    },
    /// Projective space with even sign changes: the torus action model
    Cpn {
        #[arg(long)]
        n: usize,
        /// Accepted for interface parity; the charts take no parameters
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        mesh: Option<String>,
    },
    /// Circle with one reflection: the rotation-on-the-sphere model
    Circle {
        /// Arc radius in turns, strictly between 1/4 and 1/2 (default 3/8)
        #[arg(long)]
        epsilon: Option<String>,
    },
}

const FIXTURES: &[(&str, &str)] = &[
    ("point", include_str!("../fixtures/point.json")),
    ("hexagon-trivial", include_str!("../fixtures/hexagon_trivial.json")),
    ("hexagon-antipodal", include_str!("../fixtures/hexagon_antipodal.json")),
    ("hexagon-rot3", include_str!("../fixtures/hexagon_rot3.json")),
    ("square-reflection", include_str!("../fixtures/square_reflection.json")),
    ("octagon-reflection", include_str!("../fixtures/octagon_reflection.json")),
    ("triangle-s3", include_str!("../fixtures/triangle_s3.json")),
];

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.seed_corpus {
        return run_seed_corpus(cli.json);
    }
    let Some(command) = cli.command else {
        eprintln!("error: no command given (try --help or --seed-corpus)");
        return ExitCode::from(2);
    };
    match command {
        Command::Stratify { file } => cmd_stratify(&file, cli.json),
        Command::Bounds { file, budget, max_pieces, depth } => {
            cmd_bounds(&file, budget, max_pieces, depth, cli.json)
        }
        Command::Cover { action } => match action {
            CoverCmd::Verify { file, certificate } => {
                cmd_cover_verify(&file, &certificate, cli.json)
            }
            CoverCmd::Search { file, budget, max_pieces, depth } => {
                cmd_cover_search(&file, budget, max_pieces, depth)
            }
        },
        Command::Weyl { model } => cmd_weyl(model, cli.json),
    }
}

fn read_document(path: &Path) -> Result<ActionDocument, ExitCode> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return Err(ExitCode::from(2));
        }
    };
    match ActionDocument::parse(&text) {
        Ok(doc) => Ok(doc),
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            Err(ExitCode::from(2))
        }
    }
}

fn built_hierarchies(
    gc: &equicat_core::GComplex,
    report: &strata::StratificationReport,
) -> Vec<(strata::Hierarchy, bool)> {
    let mut out = Vec::new();
    for kind in [
        HierarchyKind::OrbitSize,
        HierarchyKind::ChainFromPrincipal,
        HierarchyKind::ChainFromMinimal,
    ] {
        if let Ok(h) = build_hierarchy(gc, report, kind) {
            let semi = check_semicontinuity(gc, report, &h);
            out.push((h, semi));
        }
    }
    out
}

fn cmd_stratify(file: &Path, json: bool) -> ExitCode {
    let doc = match read_document(file) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let gc = match doc.to_gcomplex() {
        Ok(gc) => gc,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match stratify(&gc) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let lb = strata::lower_bound(&report);
    let hierarchies = built_hierarchies(&gc, &report);
    let out = report::stratify_json(&doc.name, doc.regularize, &gc, &report, &lb, &hierarchies);
    if json {
        println!("{}", serde_json::to_string_pretty(&out).expect("serialize"));
    } else {
        println!(
            "{}: {} strata over {} orbit types",
            doc.name,
            out.strata.len(),
            out.orbit_types.len()
        );
        for s in &out.strata {
            println!(
                "  stratum {} (type {}): {} simplices{}",
                s.id,
                s.orbit_type,
                s.simplices.len(),
                if s.closed { ", closed" } else { "" }
            );
        }
        println!("  locally minimal: {:?}", out.minimal);
        println!("  fixed components: {}", out.fixed_components.len());
        println!(
            "  lower bound {} via {}",
            out.lower_bound.value, out.lower_bound.certificate
        );
    }
    ExitCode::SUCCESS
}

fn cmd_bounds(file: &Path, budget: usize, max_pieces: usize, depth: usize, json: bool) -> ExitCode {
    let doc = match read_document(file) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let gc = match doc.to_gcomplex() {
        Ok(gc) => gc,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let limits = SearchBudget {
        max_simplices: 96,
        max_pieces,
        max_witness_steps: depth,
        max_states: budget,
    };
    let outcome = match brute_force_cat(&gc, &limits) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let (lower, upper, cover) = match outcome {
        BruteForceOutcome::Exact { cover, lower, .. } => {
            let u = cover.pieces.len();
            (lower, Some(u), Some(cover))
        }
        BruteForceOutcome::Bounds { lower, upper, cover } => (lower, Some(upper), Some(cover)),
        BruteForceOutcome::OnlyLower { lower } => (lower, None, None),
    };
    let exact = upper == Some(lower.value);
    let out = report::BoundsJson {
        name: doc.name.clone(),
        complex: report::ComplexSummary::of(&gc),
        lower: report::LowerBoundJson::of(&lower),
        upper,
        exact,
        engine: "brute-force".to_string(),
        budget: report::BudgetJson {
            states: budget,
            max_pieces,
            depth,
        },
        cover: cover
            .as_ref()
            .map(|c| CoverCertificate::from_cover(&doc.name, gc.complex(), c)),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&out).expect("serialize"));
    } else {
        match upper {
            Some(u) => println!(
                "{}: lower {} (via {}), upper {}, exact: {}",
                doc.name, lower.value, out.lower.certificate, u, exact
            ),
            None => println!(
                "{}: lower {} (via {}), no cover found within budget",
                doc.name, lower.value, out.lower.certificate
            ),
        }
    }
    if upper.is_some() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_cover_verify(file: &Path, certificate: &Path, json: bool) -> ExitCode {
    let doc = match read_document(file) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let gc = match doc.to_gcomplex() {
        Ok(gc) => gc,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cert_text = match std::fs::read_to_string(certificate) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", certificate.display());
            return ExitCode::from(2);
        }
    };
    let cert: CoverCertificate = match serde_json::from_str(&cert_text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}: invalid certificate: {e}", certificate.display());
            return ExitCode::from(2);
        }
    };
    let cover = match cert.to_cover(gc.complex()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match verify_cover(&gc, &cover) {
        Ok(pieces) => {
            let out = report::VerifyJson {
                name: doc.name,
                verdict: "pass".to_string(),
                pieces: Some(pieces),
                error: None,
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&out).expect("serialize"));
            } else {
                println!("{}: certificate verifies, {} pieces", out.name, pieces);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let out = report::VerifyJson {
                name: doc.name,
                verdict: "fail".to_string(),
                pieces: None,
                error: Some(format!("{e}")),
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&out).expect("serialize"));
            } else {
                println!("{}: certificate rejected: {e}", out.name);
            }
            ExitCode::from(1)
        }
    }
}

fn cmd_cover_search(file: &Path, budget: usize, max_pieces: usize, depth: usize) -> ExitCode {
    let doc = match read_document(file) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let gc = match doc.to_gcomplex() {
        Ok(gc) => gc,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let limits = SearchBudget {
        max_simplices: 96,
        max_pieces,
        max_witness_steps: depth,
        max_states: budget,
    };
    let outcome = match brute_force_cat(&gc, &limits) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let cover = match outcome {
        BruteForceOutcome::Exact { cover, .. } | BruteForceOutcome::Bounds { cover, .. } => cover,
        BruteForceOutcome::OnlyLower { .. } => {
            eprintln!("error: no cover found within budget");
            return ExitCode::from(1);
        }
    };
    let cert = CoverCertificate::from_cover(&doc.name, gc.complex(), &cover);
    println!("{}", serde_json::to_string_pretty(&cert).expect("serialize"));
    ExitCode::SUCCESS
}

fn parse_rat_flag(flag: &str, value: Option<String>) -> Result<Option<Rat>, ExitCode> {
    match value {
        None => Ok(None),
        Some(s) => match parse_rat(&s) {
            Ok(r) => Ok(Some(r)),
            Err(e) => {
                eprintln!("error: --{flag}: {e}");
                Err(ExitCode::from(2))
            }
        },
    }
}

fn cmd_weyl(model: WeylCmd, json: bool) -> ExitCode {
    let (model, params) = match model {
        WeylCmd::Torus { n, epsilon, delta, mesh } => {
            let epsilon = match parse_rat_flag("epsilon", epsilon) {
                Ok(v) => v,
                Err(code) => return code,
            };
            let delta = match parse_rat_flag("delta", delta) {
                Ok(v) => v,
                Err(code) => return code,
            };
            let mesh_flag = match parse_rat_flag("mesh", mesh) {
                Ok(v) => v,
                Err(code) => return code,
            };
            if n == 0 {
                eprintln!("error: --n must be at least 1");
                return ExitCode::from(2);
            }
            let inflation = delta.unwrap_or_else(|| rat(1, 2 * n as i128));
            let min_margin = epsilon.unwrap_or_else(|| rat(0, 1));
            let mesh = mesh_flag.unwrap_or_else(|| rat(1, 16 * (n as i128 + 1)));
            let m = match TorusModel::new(n, inflation, min_margin, mesh) {
                Ok(m) => m,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let params = WeylParamsJson {
                inflation: Some(rat_str(&inflation)),
                min_margin: Some(rat_str(&min_margin)),
                mesh: Some(rat_str(&mesh)),
                arc_radius: None,
            };
            (WeylModel::Torus(m), params)
        }
        WeylCmd::Cpn { n, .. } => {
            let m = match ProjModel::new(n) {
                Ok(m) => m,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let params = WeylParamsJson {
                inflation: None,
                min_margin: None,
                mesh: None,
                arc_radius: None,
            };
            (WeylModel::Projective(m), params)
        }
        WeylCmd::Circle { epsilon } => {
            let epsilon = match parse_rat_flag("epsilon", epsilon) {
                Ok(v) => v,
                Err(code) => return code,
            };
            let m = match epsilon {
                Some(r) => match CircleModel::new(r) {
                    Ok(m) => m,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                },
                None => CircleModel::with_defaults(),
            };
            let params = WeylParamsJson {
                inflation: None,
                min_margin: None,
                mesh: None,
                arc_radius: Some(rat_str(&m.arc_radius())),
            };
            (WeylModel::Circle(m), params)
        }
    };
    match certify_weyl_cat(&model) {
        Ok(bounds) => {
            let out = report::weyl_json(&bounds, params);
            if json {
                println!("{}", serde_json::to_string_pretty(&out).expect("serialize"));
            } else {
                println!(
                    "{}: lower {} = upper {} ({}); {}",
                    out.model,
                    out.lower.value,
                    out.upper.value,
                    if out.exact { "exact" } else { "bounds only" },
                    out.conclusion
                );
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: verifier failed: {e}");
            ExitCode::from(1)
        }
    }
}

fn run_seed_corpus(json: bool) -> ExitCode {
    let mut all_ok = true;
    let mut rows = Vec::new();
    for (name, text) in FIXTURES {
        let doc = match ActionDocument::parse(text) {
            Ok(d) => d,
            Err(e) => {
                eprintln!("error: fixture {name}: {e}");
                return ExitCode::from(2);
            }
        };
        let gc = match doc.to_gcomplex() {
            Ok(gc) => gc,
            Err(e) => {
                eprintln!("error: fixture {name}: {e}");
                return ExitCode::from(2);
            }
        };
        let outcome = match brute_force_cat(&gc, &SearchBudget::default()) {
            Ok(o) => o,
            Err(e) => {
                eprintln!("error: fixture {name}: {e}");
                return ExitCode::from(1);
            }
        };
        let (lower, upper) = match &outcome {
            BruteForceOutcome::Exact { cover, lower, .. } => {
                (lower.value, Some(cover.pieces.len()))
            }
            BruteForceOutcome::Bounds { lower, upper, .. } => (lower.value, Some(*upper)),
            BruteForceOutcome::OnlyLower { lower } => (lower.value, None),
        };
        let consistent = upper.map(|u| lower <= u).unwrap_or(true);
        all_ok &= consistent && upper.is_some();
        rows.push((name.to_string(), lower, upper, consistent));
    }
    if json {
        let value: Vec<serde_json::Value> = rows
            .iter()
            .map(|(name, lower, upper, consistent)| {
                serde_json::json!({
                    "fixture": name,
                    "lower": lower,
                    "upper": upper,
                    "consistent": consistent,
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&value).expect("serialize"));
    } else {
        for (name, lower, upper, consistent) in &rows {
            println!(
                "{name}: lower {lower}, upper {}, {}",
                upper.map(|u| u.to_string()).unwrap_or_else(|| "-".to_string()),
                if *consistent { "ok" } else { "INCONSISTENT" }
            );
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
