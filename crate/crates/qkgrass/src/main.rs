//! qkgrass: batch front-end for quantum K-theory of Gr(r, N).
//!
//! Three subcommands: `table` emits the structure-constant table, `verify`
//! runs named identity suites, `tqft` evaluates a cobordism spec. Results go
//! to stdout (or `--out`), progress to stderr unless `--quiet`. Exit codes:
//! 0 success, 1 verification failure, 2 usage error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_traits::Zero;
use serde::Serialize;

use qk_core::grothendieck::{grothendieck_class, quantized_dual};
use qk_core::partition::{complement, enumerate_box, BoxContext, Partition};
use qk_core::qkring::{
    invariant_series, kappa, quantum_product, sample_elements, structure_table, verify_whitney,
    QKElement,
};
use qk_core::qseries::QSeries;
use qk_core::repring::RepRingElement;
use qk_core::tqft::{
    degeneration_check, genus0_invariant, tqft_data, CobordismSpec, GluingPlan,
};

#[derive(Parser)]
#[command(name = "qkgrass", version, about = "quantum K-theory of Gr(r,N): tables, checks, TQFT")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Rank of the tautological subbundle
    #[arg(long, global = true, default_value_t = 2)]
    r: usize,

    /// Dimension of the ambient space
    #[arg(long = "N", global = true, default_value_t = 4)]
    n: usize,

    /// Truncation order in q
    #[arg(long, global = true, default_value_t = 3)]
    dmax: usize,

    /// Genus bound for TQFT checks
    #[arg(long, global = true, default_value_t = 1)]
    genus: usize,

    /// RNG seed for the localization subgroup (QKGRASS_SEED overrides)
    #[arg(long, global = true, default_value_t = qk_core::DEFAULT_SEED)]
    seed: u64,

    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Flatten output to CSV instead of JSON
    #[arg(long, global = true)]
    csv: bool,

    /// Write results to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Suppress progress reporting
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit the structure-constant table N_{lambda,mu}^nu
    Table,
    /// Run a verification suite
    Verify {
        /// orthogonality|vanishing|whitney|s3|assoc|kappa|tqft|degeneration|all
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Evaluate a cobordism, e.g. "g=1; in=[2,1],[1]; out=[]"
    Tqft { spec: String },
}

#[derive(Serialize)]
struct SeriesOut {
    r: usize,
    #[serde(rename = "N")]
    n: usize,
    genus: usize,
    inputs: Vec<Partition>,
    outputs: Vec<Partition>,
    dmax: usize,
    coeffs: Vec<String>,
}

#[derive(Serialize)]
struct Check {
    suite: &'static str,
    identity: String,
    status: &'static str,
}

#[derive(Serialize)]
struct Report {
    r: usize,
    #[serde(rename = "N")]
    n: usize,
    dmax: usize,
    genus: usize,
    seed: u64,
    suite: String,
    checks: Vec<Check>,
    failures: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = match std::env::var("QKGRASS_SEED") {
        Ok(s) => match s.parse() {
            Ok(v) => v,
            Err(_) => return usage(&format!("QKGRASS_SEED is not an integer: {:?}", s)),
        },
        Err(_) => cli.seed,
    };
    if !(1 <= cli.r && cli.r <= cli.n && cli.n <= 6) {
        return usage(&format!("need 1 <= r <= N <= 6, got r={}, N={}", cli.r, cli.n));
    }
    if cli.dmax > 6 {
        return usage(&format!("need dmax <= 6, got {}", cli.dmax));
    }
    if cli.genus > 3 {
        return usage(&format!("need genus <= 3, got {}", cli.genus));
    }
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return usage("--jobs must be positive");
        }
        // deterministic results regardless of pool size
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let ctx = BoxContext::new(cli.r, cli.n);
    let progress = |msg: &str| {
        if !cli.quiet {
            eprintln!("[qkgrass] {}", msg);
        }
    };
    match &cli.cmd {
        Cmd::Table => {
            progress(&format!("building structure table for Gr({},{})", cli.r, cli.n));
            let table = structure_table(ctx, seed);
            let text = if cli.csv {
                table.to_csv()
            } else {
                pretty(&table.to_json())
            };
            emit(&cli.out, &text)
        }
        Cmd::Tqft { spec } => {
            let spec = match CobordismSpec::parse(spec, ctx) {
                Ok(s) => s,
                Err(e) => return usage(&format!("bad cobordism spec: {}", e)),
            };
            progress(&format!(
                "evaluating genus-{} cobordism with {} inputs, {} outputs",
                spec.genus,
                spec.inputs.len(),
                spec.outputs.len()
            ));
            let series = qk_core::tqft::invariant(&spec, cli.dmax, seed);
            let coeffs: Vec<String> =
                series.to_int_coeffs().iter().map(|c| c.to_string()).collect();
            let text = if cli.csv {
                let mut s = String::from("d,coeff\n");
                for (d, c) in coeffs.iter().enumerate() {
                    s.push_str(&format!("{},{}\n", d, c));
                }
                s
            } else {
                pretty(&SeriesOut {
                    r: cli.r,
                    n: cli.n,
                    genus: spec.genus,
                    inputs: spec.inputs.clone(),
                    outputs: spec.outputs.clone(),
                    dmax: cli.dmax,
                    coeffs,
                })
            };
            emit(&cli.out, &text)
        }
        Cmd::Verify { suite } => {
            let suites: Vec<&str> = match suite.as_str() {
                "all" => vec![
                    "orthogonality",
                    "vanishing",
                    "whitney",
                    "s3",
                    "assoc",
                    "kappa",
                    "tqft",
                    "degeneration",
                ],
                s @ ("orthogonality" | "vanishing" | "whitney" | "s3" | "assoc" | "kappa"
                | "tqft" | "degeneration") => vec![s],
                other => return usage(&format!("unknown suite {:?}", other)),
            };
            let mut checks = Vec::new();
            for s in suites {
                progress(&format!("running suite {}", s));
                run_suite(s, ctx, cli.dmax, cli.genus, seed, &mut checks);
            }
            let failures = checks.iter().filter(|c| c.status == "fail").count();
            let report = Report {
                r: cli.r,
                n: cli.n,
                dmax: cli.dmax,
                genus: cli.genus,
                seed,
                suite: suite.clone(),
                checks,
                failures,
            };
            let text = if cli.csv {
                let mut s = String::from("suite,identity,status\n");
                for c in &report.checks {
                    s.push_str(&format!("{},\"{}\",{}\n", c.suite, c.identity, c.status));
                }
                s
            } else {
                pretty(&report)
            };
            let code = emit(&cli.out, &text);
            if code != ExitCode::SUCCESS {
                return code;
            }
            if failures > 0 {
                progress(&format!("{} check(s) failed", failures));
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {}", msg);
    ExitCode::from(2)
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization");
    s.push('\n');
    s
}

fn emit(out: &Option<PathBuf>, text: &str) -> ExitCode {
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {}", path.display(), e);
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).expect("stdout");
            ExitCode::SUCCESS
        }
    }
}

fn run_suite(
    suite: &str,
    ctx: BoxContext,
    dmax: usize,
    genus: usize,
    seed: u64,
    checks: &mut Vec<Check>,
) {
    let mut push = |suite: &'static str, identity: String, ok: bool| {
        checks.push(Check { suite, identity, status: if ok { "pass" } else { "fail" } });
    };
    let basis = enumerate_box(ctx);
    let r = ctx.r;
    match suite {
        "orthogonality" => {
            for l in &basis {
                for nu in &basis {
                    let s = invariant_series(
                        ctx,
                        &[grothendieck_class(l, r), quantized_dual(nu, ctx)],
                        dmax,
                        seed,
                    );
                    let expect = if l == nu { QSeries::one(dmax) } else { QSeries::zero(dmax) };
                    push(
                        "orthogonality",
                        format!("<<O_{},O*_{}>> = {}", l, nu, usize::from(l == nu)),
                        s == expect,
                    );
                }
            }
        }
        "vanishing" => {
            // Schur-functor vanishing: <S^lambda(S)>_{0,d} = 0 when
            // (i) d >= lambda_1 - (N-r), or
            // (ii) d >= lambda_1 - 2(N-r), d > 0, r != N, lambda_r > 0
            let k = ctx.k as u32;
            let lam_ctx = BoxContext { r, k: (2 * k + 2) as usize };
            for lam in enumerate_box(lam_ctx) {
                if lam.is_empty() {
                    continue;
                }
                let l1 = lam.part(0);
                let covered = |d: u32| {
                    let i = d + k >= l1;
                    let ii = d + 2 * k >= l1 && d > 0 && ctx.k != 0 && lam.len() == r;
                    i || ii
                };
                if (0..=dmax as u32).all(|d| !covered(d)) {
                    continue;
                }
                let s = invariant_series(ctx, &[RepRingElement::schur_of_s(&lam, r)], dmax, seed);
                for d in 0..=dmax as u32 {
                    if covered(d) {
                        push(
                            "vanishing",
                            format!("<S^{}(S)>_{{0,{}}} = 0", lam, d),
                            s.coeff(d as usize).is_zero(),
                        );
                    }
                }
            }
        }
        "whitney" => {
            let report = verify_whitney(ctx, dmax, seed);
            push("whitney", "quantum K-Whitney + Coulomb + wedge-detQ".to_string(), report.is_ok());
            for f in report.failures {
                push(
                    "whitney",
                    format!("{} fails at y^{}, O_{}, q^{}", f.relation, f.y_power, f.coordinate, f.q_power),
                    false,
                );
            }
        }
        "s3" => {
            let t = structure_table(ctx, seed);
            for l in &basis {
                for m in &basis {
                    for nu in &basis {
                        let a = t.entry(l, m, nu);
                        let comm = a == t.entry(m, l, nu);
                        let s3 = a == t.entry(l, &complement(nu, ctx), &complement(m, ctx));
                        push(
                            "s3",
                            format!("N_{{{},{}}}^{} symmetric", l, m, nu),
                            comm && s3,
                        );
                    }
                }
            }
        }
        "assoc" => {
            let t = structure_table(ctx, seed);
            for l in &basis {
                for m in &basis {
                    let lm = quantum_product(
                        &t,
                        &QKElement::basis(ctx, l, dmax),
                        &QKElement::basis(ctx, m, dmax),
                    );
                    for nu in &basis {
                        let e_nu = QKElement::basis(ctx, nu, dmax);
                        let m_nu = quantum_product(&t, &QKElement::basis(ctx, m, dmax), &e_nu);
                        let left = quantum_product(&t, &lm, &e_nu);
                        let right = quantum_product(&t, &QKElement::basis(ctx, l, dmax), &m_nu);
                        push(
                            "assoc",
                            format!("(O_{} . O_{}) . O_{} associative", l, m, nu),
                            left == right,
                        );
                    }
                }
            }
        }
        "kappa" => {
            for l in &basis {
                let e = kappa(&grothendieck_class(l, r), ctx, dmax, seed);
                push(
                    "kappa",
                    format!("kappa(O_{}) = O_{}", l, l),
                    e == QKElement::basis(ctx, l, dmax),
                );
            }
            let e = kappa(&RepRingElement::det_s_dual(r), ctx, dmax, seed);
            let ok = basis.iter().all(|l| e.coeff(l) == QSeries::one_over_one_minus_q(dmax));
            push("kappa", "kappa(det S^v) = det Q/(1-q)".to_string(), ok);
            // multiplicativity on a small fixed sample
            let t = structure_table(ctx, seed);
            let samples = sample_elements(r, ctx.k as i64 + 2, 4, seed);
            for pair in samples.chunks(2) {
                if pair.len() < 2 {
                    break;
                }
                let (v, w) = (&pair[0], &pair[1]);
                let lhs = kappa(&v.multiply(w), ctx, dmax, seed);
                let rhs =
                    quantum_product(&t, &kappa(v, ctx, dmax, seed), &kappa(w, ctx, dmax, seed));
                push("kappa", "kappa(V.W) = kappa(V) bullet kappa(W)".to_string(), lhs == rhs);
            }
        }
        "tqft" => {
            let data = tqft_data(ctx, dmax, seed);
            let specs = [
                CobordismSpec::new(ctx, genus, vec![basis[basis.len() - 1].clone()], vec![]),
                CobordismSpec::new(ctx, genus, vec![], vec![]),
                CobordismSpec::new(
                    ctx,
                    genus,
                    vec![basis[1].clone()],
                    vec![basis[basis.len() / 2].clone()],
                ),
            ];
            for spec in &specs {
                let canonical = data.evaluate(&GluingPlan::canonical(spec));
                let ok = GluingPlan::alternates(spec)
                    .iter()
                    .all(|p| data.evaluate(p) == canonical);
                push(
                    "tqft",
                    format!(
                        "plans agree: g={}, in={:?}, out={:?}",
                        spec.genus, spec.inputs, spec.outputs
                    ),
                    ok,
                );
            }
            // genus 0 gluing reproduces localization
            let spec0 = CobordismSpec::new(
                ctx,
                0,
                vec![basis[1].clone(), basis[basis.len() - 1].clone()],
                vec![basis[basis.len() / 2].clone()],
            );
            let glued = data.evaluate(&GluingPlan::canonical(&spec0));
            let direct = genus0_invariant(ctx, &spec0.inputs, &spec0.outputs, dmax, seed);
            push("tqft", "genus-0 gluing matches localization".to_string(), glued == direct);
        }
        "degeneration" => {
            let v = grothendieck_class(&basis[basis.len() - 1], r);
            let det = RepRingElement::det_s_dual(r);
            for (a, b, g1, g2) in [
                (&v, &v, 0usize, 0usize),
                (&det, &v, 0, 0),
                (&v, &det, genus.min(1), 0),
                (&v, &v, genus.min(1), genus.min(1)),
            ] {
                let rep = degeneration_check(ctx, a, b, g1, g2, dmax, seed);
                push(
                    "degeneration",
                    format!("degeneration at g1={}, g2={}", g1, g2),
                    rep.is_ok(),
                );
            }
        }
        _ => unreachable!("suite validated by caller"),
    }
}
