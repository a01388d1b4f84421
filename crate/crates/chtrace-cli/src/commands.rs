//! Command handlers. Every handler returns the process exit code:
//! 0 pass, 1 validation/verification failure, 3 inconclusive trials
//! without `--allow-inconclusive`.

use std::path::Path;
use std::process::ExitCode;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use chtrace::arith::Scalar;
use chtrace::decompose::{
    branch_trial_report, cg_trial_report, verify_rescaled_restriction_with, DecompTolerances,
    Expected, VerdictReport,
};
use chtrace::error::{Error, Result};
use chtrace::generic_matrices::{
    artin_semisimple, ch_multilinear, discriminant_probe, eval, parse_expr, MatrixTuple, Value,
};
use chtrace::linalg::ScalarMatrix;
use chtrace::root_data::{parse_type_name, RootDatum};
use chtrace::trace_algebra::{algebra_from_json, block_decompose_seeded, radical, reduced_trace};
use chtrace::uq_sl2::{build_cyclic_rep_with, CentralCharZ0, RepTolerances};

use crate::render;

pub struct TrialConfig {
    pub ell: u32,
    pub trials: usize,
    pub seed: u64,
    pub jobs: usize,
    pub allow_inconclusive: bool,
}

fn env_tol(name: &str, default: f64) -> f64 {
    std::env::var(name)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}

/// Tolerances with CHTRACE_TOL_* environment overrides applied.
pub fn decomp_tolerances() -> DecompTolerances {
    let mut tol = DecompTolerances::default();
    tol.cluster_gap = env_tol("CHTRACE_TOL_CLUSTER", tol.cluster_gap);
    tol.gram = env_tol("CHTRACE_TOL_GRAM", tol.gram);
    tol
}

pub fn rep_tolerances() -> RepTolerances {
    let mut tol = RepTolerances::default();
    tol.relation = env_tol("CHTRACE_TOL_RELATION", tol.relation);
    tol
}

pub fn predict(type_name: &str, ell: u32, as_json: bool) -> Result<ExitCode> {
    let (letter, rank) = parse_type_name(type_name)?;
    let rd = RootDatum::build(letter, rank)?;
    let table = rd.predict(ell)?;
    if as_json {
        let payload = json!({
            "schema": "chtrace/1",
            "command": "predict",
            "table": table,
        });
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    } else {
        print!("{}", render::prediction_table(&table));
    }
    Ok(ExitCode::SUCCESS)
}

fn load_json(path: &Path) -> Result<serde_json::Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn algebra_check(path: &Path, samples: usize, seed: u64, as_json: bool) -> Result<ExitCode> {
    let alg = algebra_from_json(&load_json(path)?)?;
    let report = alg.check_axioms();
    let ch_ok = report.passed() && alg.ch_check(samples, seed);
    if as_json {
        let payload = json!({
            "schema": "chtrace/1",
            "command": "algebra check",
            "dim": alg.dim(),
            "ch_degree": alg.ch_degree(),
            "axioms": report,
            "axioms_pass": report.passed(),
            "ch_identity_pass": ch_ok,
        });
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    } else {
        println!(
            "algebra: dim {}, ch degree {}, field {}",
            alg.dim(),
            alg.ch_degree(),
            alg.tag()
        );
        println!("axioms: {report}");
        println!(
            "CH identity (degree {}): {}",
            alg.ch_degree(),
            if ch_ok { "pass" } else { "FAIL" }
        );
    }
    Ok(if ch_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

pub fn algebra_radical(path: &Path, as_json: bool) -> Result<ExitCode> {
    let alg = algebra_from_json(&load_json(path)?)?;
    let rad = radical(&alg)?;
    if as_json {
        let payload = json!({
            "schema": "chtrace/1",
            "command": "algebra radical",
            "dim": alg.dim(),
            "radical_dim": rad.len(),
            "basis": rad,
        });
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    } else {
        println!("radical dimension: {}", rad.len());
        for (i, v) in rad.iter().enumerate() {
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| format!("({c})·{}", alg.labels()[j]))
                .collect();
            println!("  r{i} = {}", terms.join(" + "));
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn algebra_blocks(path: &Path, seed: u64, as_json: bool) -> Result<ExitCode> {
    let alg = algebra_from_json(&load_json(path)?)?;
    let spectrum = block_decompose_seeded(&alg, seed)?;
    if as_json {
        let payload = json!({
            "schema": "chtrace/1",
            "command": "algebra blocks",
            "ch_degree": alg.ch_degree(),
            "blocks": spectrum.blocks,
        });
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    } else {
        println!(
            "block spectrum (k_i, h_i): {spectrum}  with sum h·k = {}",
            spectrum.total_degree()
        );
    }
    Ok(ExitCode::SUCCESS)
}

pub fn algebra_reduce(path: &Path, as_json: bool) -> Result<ExitCode> {
    let alg = algebra_from_json(&load_json(path)?)?;
    let red = reduced_trace(&alg)?;
    if as_json {
        let payload = json!({
            "schema": "chtrace/1",
            "command": "algebra reduce",
            "multiplier": red.multiplier,
            "blocks": red.spectrum.blocks,
            "reduced_trace": red.trace_vec,
        });
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    } else {
        match red.multiplier {
            Some(r) => println!("trace = {r} x reduced trace"),
            None => println!("trace has mixed block multiplicities; reduced numerically"),
        }
        println!("blocks: {}", red.spectrum);
        let entries: Vec<String> = red.trace_vec.iter().map(|t| t.to_string()).collect();
        println!("reduced trace vector: [{}]", entries.join(", "));
    }
    Ok(ExitCode::SUCCESS)
}

pub fn chcheck(n: usize, size: usize, trials: usize, seed: u64, as_json: bool) -> Result<ExitCode> {
    if n == 0 || size == 0 {
        return Err(Error::invalid_parameter("n and size must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut zero_count = 0usize;
    for _ in 0..trials {
        let tuple = MatrixTuple::new(
            (0..n)
                .map(|_| {
                    let rows: Vec<Vec<Scalar>> = (0..size)
                        .map(|_| {
                            (0..size)
                                .map(|_| Scalar::from_i64(rng.gen_range(-5..6)))
                                .collect()
                        })
                        .collect();
                    ScalarMatrix::from_rows(rows).unwrap()
                })
                .collect(),
        )?;
        if ch_multilinear(n, &tuple)?.is_zero() {
            zero_count += 1;
        }
    }
    // on n×n (or smaller) tuples the identity must vanish identically;
    // on larger matrices it is generically nonzero
    let pass = if size <= n {
        zero_count == trials
    } else {
        zero_count < trials
    };
    if as_json {
        let payload = json!({
            "schema": "chtrace/1",
            "command": "chcheck",
            "n": n, "size": size, "trials": trials, "seed": seed,
            "vanished": zero_count,
            "expected_identity": size <= n,
            "pass": pass,
        });
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    } else {
        println!(
            "CH({n}) on {trials} random {size}x{size} tuples: {zero_count} vanished ({})",
            if pass { "pass" } else { "FAIL" }
        );
    }
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn tuple_from_json(v: &serde_json::Value) -> Result<MatrixTuple> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("tuple file must be a JSON array of matrices".into()))?;
    let mut matrices = Vec::with_capacity(arr.len());
    for m in arr {
        let rows_v = m
            .as_array()
            .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
        let mut rows = Vec::with_capacity(rows_v.len());
        for row in rows_v {
            let cells = row
                .as_array()
                .ok_or_else(|| Error::Parse("row must be an array".into()))?;
            let parsed: Result<Vec<Scalar>> = cells
                .iter()
                .map(chtrace::arith::scalar_from_json_value)
                .collect();
            rows.push(parsed?);
        }
        matrices.push(ScalarMatrix::from_rows(rows)?);
    }
    MatrixTuple::new(matrices)
}

pub fn matinv(
    path: &Path,
    expr: Option<&str>,
    trials: usize,
    seed: u64,
    as_json: bool,
) -> Result<ExitCode> {
    let tuple = tuple_from_json(&load_json(path)?)?;
    let semisimple = artin_semisimple(&tuple)?;
    let probe = discriminant_probe(&tuple, trials, seed)?;
    let expr_result = match expr {
        Some(src) => {
            let parsed = parse_expr(src)?;
            Some(match eval(&parsed, &tuple)? {
                Value::Scalar(s) => format!("scalar {s}"),
                Value::Matrix(m) => {
                    let rows: Vec<String> = (0..m.n)
                        .map(|i| {
                            let cells: Vec<String> =
                                (0..m.n).map(|j| m.get(i, j).to_string()).collect();
                            format!("[{}]", cells.join(", "))
                        })
                        .collect();
                    format!("matrix {}", rows.join(" "))
                }
            })
        }
        None => None,
    };
    if as_json {
        let payload = json!({
            "schema": "chtrace/1",
            "command": "matinv",
            "size": tuple.size(),
            "tuple_len": tuple.len(),
            "artin_semisimple": semisimple,
            "discriminant_probe": probe,
            "discriminant_nonzero": !probe.is_zero(),
            "expr_result": expr_result,
        });
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    } else {
        println!("tuple: {} matrices of size {}", tuple.len(), tuple.size());
        println!("artin semisimple: {semisimple}");
        println!(
            "discriminant probe ({trials} trials): {} ({})",
            probe,
            if probe.is_zero() { "zero" } else { "nonzero" }
        );
        if let Some(r) = expr_result {
            println!("expr: {r}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_complex(s: &str) -> Result<Complex64> {
    let t = s.trim().replace(' ', "");
    if t.is_empty() {
        return Err(Error::Parse("empty complex literal".into()));
    }
    // forms: a, bi, a+bi, a-bi
    if let Some(body) = t.strip_suffix('i') {
        // split at the last +/- that is not an exponent sign or leading
        let chars: Vec<char> = body.chars().collect();
        let mut split = None;
        for i in (1..chars.len()).rev() {
            if (chars[i] == '+' || chars[i] == '-') && chars[i - 1] != 'e' && chars[i - 1] != 'E' {
                split = Some(i);
                break;
            }
        }
        match split {
            Some(i) => {
                let re: f64 = body[..i]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad complex literal {s:?}")))?;
                let im_str = &body[i..];
                let im: f64 = if im_str == "+" {
                    1.0
                } else if im_str == "-" {
                    -1.0
                } else {
                    im_str
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad complex literal {s:?}")))?
                };
                Ok(Complex64::new(re, im))
            }
            None => {
                let im: f64 = if body.is_empty() {
                    1.0
                } else if body == "-" {
                    -1.0
                } else {
                    body.parse()
                        .map_err(|_| Error::Parse(format!("bad complex literal {s:?}")))?
                };
                Ok(Complex64::new(0.0, im))
            }
        }
    } else {
        let re: f64 = t
            .parse()
            .map_err(|_| Error::Parse(format!("bad complex literal {s:?}")))?;
        Ok(Complex64::new(re, 0.0))
    }
}

fn parse_chi(s: &str) -> Result<CentralCharZ0> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!(
            "--chi needs three comma-separated values, got {s:?}"
        )));
    }
    CentralCharZ0::new(
        parse_complex(parts[0])?,
        parse_complex(parts[1])?,
        parse_complex(parts[2])?,
    )
}

fn cmat_json(m: &chtrace::linalg::CMat) -> serde_json::Value {
    let rows: Vec<Vec<[f64; 2]>> = (0..m.rows)
        .map(|i| (0..m.cols).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect();
    json!(rows)
}

pub fn sl2_build(
    ell: u32,
    chi_str: &str,
    branch: usize,
    out_file: Option<&Path>,
    as_json: bool,
) -> Result<ExitCode> {
    let chi = parse_chi(chi_str)?;
    let rep = build_cyclic_rep_with(ell, &chi, branch, rep_tolerances())?;
    let payload = json!({
        "schema": "chtrace/1",
        "command": "sl2 build",
        "ell": ell,
        "branch": branch,
        "chi": chi,
        "casimir": [rep.casimir_value.re, rep.casimir_value.im],
        "E": cmat_json(&rep.e),
        "F": cmat_json(&rep.f),
        "K": cmat_json(&rep.k),
    });
    if let Some(path) = out_file {
        std::fs::write(path, serde_json::to_string_pretty(&payload).unwrap())
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
    }
    if as_json {
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    } else {
        println!("built {ell}-dimensional representation, branch {branch}");
        println!("  chi     = {chi}");
        println!(
            "  casimir = {:+.6}{:+.6}i",
            rep.casimir_value.re, rep.casimir_value.im
        );
        if let Some(path) = out_file {
            println!("  matrices written to {}", path.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verdict_exit(verdict: &VerdictReport, allow_inconclusive: bool) -> ExitCode {
    if verdict.fail_count > 0 {
        ExitCode::from(1)
    } else if verdict.inconclusive_count > 0 && !allow_inconclusive {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

fn run_trials(
    cfg: &TrialConfig,
    kind: &str,
    runner: impl Fn(usize) -> chtrace::decompose::TrialReport + Sync,
) -> Result<VerdictReport> {
    let rd = RootDatum::build(chtrace::root_data::TypeLetter::A, 1)?;
    if !rd.validate_ell(cfg.ell) {
        return Err(Error::invalid_parameter(format!(
            "ell = {} must be odd and >= 3",
            cfg.ell
        )));
    }
    let expected = Expected::for_ell(cfg.ell)?;
    let trials: Vec<chtrace::decompose::TrialReport> = if cfg.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
        pool.install(|| {
            use rayon::prelude::*;
            (0..cfg.trials).into_par_iter().map(&runner).collect()
        })
    } else {
        (0..cfg.trials).map(&runner).collect()
    };
    Ok(VerdictReport::from_trials(kind, cfg.ell, expected, trials))
}

fn emit_verdict(verdict: &VerdictReport, as_json: bool, allow_inconclusive: bool) -> ExitCode {
    if as_json {
        let payload = json!({
            "schema": "chtrace/1",
            "command": format!("sl2 {}", verdict.kind),
            "verdict": verdict,
        });
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    } else {
        print!("{}", render::verdict(verdict));
    }
    verdict_exit(verdict, allow_inconclusive)
}

pub fn sl2_cg(cfg: &TrialConfig, as_json: bool) -> Result<ExitCode> {
    let tol = decomp_tolerances();
    let expected = Expected::for_ell(cfg.ell)?;
    let verdict = run_trials(cfg, "clebsch-gordan", |i| {
        cg_trial_report(cfg.ell, i, cfg.seed, &expected, &tol)
    })?;
    Ok(emit_verdict(&verdict, as_json, cfg.allow_inconclusive))
}

pub fn sl2_branch(cfg: &TrialConfig, as_json: bool) -> Result<ExitCode> {
    let tol = decomp_tolerances();
    let expected = Expected::for_ell(cfg.ell)?;
    let verdict = run_trials(cfg, "branching", |i| {
        branch_trial_report(cfg.ell, i, cfg.seed, &expected, &tol)
    })?;
    Ok(emit_verdict(&verdict, as_json, cfg.allow_inconclusive))
}

pub fn sl2_rescale(
    ell: u32,
    r: usize,
    seed: u64,
    allow_inconclusive: bool,
    as_json: bool,
) -> Result<ExitCode> {
    let tol = decomp_tolerances();
    let verdict = verify_rescaled_restriction_with(ell, r, seed, &tol)?;
    Ok(emit_verdict(&verdict, as_json, allow_inconclusive))
}
