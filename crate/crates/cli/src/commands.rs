use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use cspoly::certifier::{is_edge, write_certificates, CertifyOptions, EdgeVerdict, TheoremReport};
use cspoly::format::{read_point_set_file, write_point_set};
use cspoly::oracle::brute_force_face_lattice;
use cspoly::{bounds, certify_theorem, construct, scalar, ConstructionParams, ConstructionTrace, Error, PointSet};
use serde_json::{json, Map, Value};

use crate::{BoundsArgs, BuildArgs, CertifyArgs, Cli, Command, ConstructArgs, DemoArgs};

const OK: u8 = 0;
const CHECK_FAILED: u8 = 1;
const BAD_INPUT: u8 = 2;
const CONSTRUCTION_FAILED: u8 = 3;

pub fn run(cli: &Cli) -> u8 {
    match &cli.command {
        Command::Construct(a) => cmd_construct(a),
        Command::Certify(a) => cmd_certify(cli, a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Demo(a) => cmd_demo(cli, a),
    }
}

fn tool() -> Value {
    json!({ "name": "cspoly", "version": env!("CARGO_PKG_VERSION") })
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

/// Writes `report` and returns `code`, or `BAD_INPUT` if the write fails.
fn finish(path: Option<&Path>, report: &Value, code: u8) -> u8 {
    match emit(path, &to_json(report)) {
        Ok(()) => code,
        Err(e) => {
            eprintln!("error: {e}");
            BAD_INPUT
        }
    }
}

fn error_report(config: Value, message: &str) -> Value {
    json!({ "tool": tool(), "config": config, "error": message, "theorem_ok": false })
}

fn build_params(b: &BuildArgs) -> Result<ConstructionParams, String> {
    let mut params = ConstructionParams::new(b.dim, b.seed).map_err(|e| e.to_string())?;
    if let Some(c) = &b.c {
        let c = scalar::parse(c).ok_or_else(|| format!("--c: cannot parse {c:?} as a rational"))?;
        params = params.with_c(c).map_err(|e| e.to_string())?;
    }
    Ok(params)
}

fn build_config(command: &str, b: &BuildArgs, c: Option<&ConstructionParams>) -> Value {
    json!({
        "command": command,
        "dim": b.dim,
        "seed": b.seed,
        "c": c.map_or_else(|| b.c.clone().map_or(Value::Null, Value::String), |p| Value::String(scalar::format(&p.c))),
    })
}

fn construction_exit(e: &Error) -> u8 {
    match e {
        Error::InvalidParameter(_) | Error::Io(_) => BAD_INPUT,
        _ => CONSTRUCTION_FAILED,
    }
}

fn timed_construct(params: &ConstructionParams) -> cspoly::Result<(PointSet, ConstructionTrace)> {
    let t = Instant::now();
    let out = construct(params);
    eprintln!("construct d={}: {:.2?}", params.d, t.elapsed());
    out
}

fn cmd_construct(a: &ConstructArgs) -> u8 {
    let params = match build_params(&a.build) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return BAD_INPUT;
        }
    };
    let (set, trace) = match timed_construct(&params) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: construction failed: {e}");
            return construction_exit(&e);
        }
    };
    let written = emit(a.out.as_deref(), &write_point_set(&set)).and_then(|()| match &a.trace {
        Some(p) => emit(Some(p), &trace.to_json()),
        None => Ok(()),
    });
    match written {
        Ok(()) => OK,
        Err(e) => {
            eprintln!("error: {e}");
            BAD_INPUT
        }
    }
}

fn certify_options(cli: &Cli, lp_only: bool) -> CertifyOptions {
    CertifyOptions {
        direct: !lp_only,
        max_violations: cli.max_violations,
    }
}

fn timed_certify(set: &PointSet, d: usize, opts: &CertifyOptions) -> cspoly::Result<TheoremReport> {
    let t = Instant::now();
    let out = certify_theorem(set, d, opts);
    eprintln!("certify d={d} n={}: {:.2?}", set.len(), t.elapsed());
    out
}

fn theorem_value(report: &TheoremReport) -> Map<String, Value> {
    match serde_json::to_value(report).expect("report serializes") {
        Value::Object(m) => m,
        _ => unreachable!("theorem report is a struct"),
    }
}

fn write_certs(path: Option<&PathBuf>, report: &TheoremReport) -> Result<(), String> {
    match path {
        Some(p) => emit(Some(p), &write_certificates(report.certificates())),
        None => Ok(()),
    }
}

enum Oracle {
    Agrees(Value),
    Disagrees(Value),
    Refused(String),
}

fn run_oracle(set: &PointSet, opts: &CertifyOptions) -> Oracle {
    let lattice = match brute_force_face_lattice(set) {
        Ok(l) => l,
        Err(Error::GuardRail(m)) => return Oracle::Refused(m),
        Err(e) => {
            return Oracle::Disagrees(json!({ "ran": false, "error": e.to_string() }));
        }
    };
    let mut disagreements = Vec::new();
    let mut checked = 0usize;
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            checked += 1;
            let lp_edge = match is_edge(set, i, j, opts) {
                Ok(r) => r.verdict == EdgeVerdict::Edge,
                Err(e) => return Oracle::Disagrees(json!({ "ran": false, "error": e.to_string() })),
            };
            if lp_edge != lattice.is_edge(i, j) {
                disagreements.push([i, j]);
            }
        }
    }
    let v = json!({
        "ran": true,
        "facets": lattice.facets.len(),
        "edges": lattice.edges.len(),
        "pairs_checked": checked,
        "disagreements": disagreements,
    });
    if disagreements.is_empty() {
        Oracle::Agrees(v)
    } else {
        Oracle::Disagrees(v)
    }
}

fn cmd_certify(cli: &Cli, a: &CertifyArgs) -> u8 {
    let config = json!({
        "command": "certify",
        "input": a.input.display().to_string(),
        "dim": a.dim,
        "brute_force": a.brute_force,
        "lp_only": a.lp_only,
        "max_violations": cli.max_violations,
    });
    let out = a.report.as_deref();
    let set = match read_point_set_file(&a.input) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            finish(out, &error_report(config, &e.to_string()), BAD_INPUT);
            return BAD_INPUT;
        }
    };
    let d = a.dim.unwrap_or(set.dim());
    let opts = certify_options(cli, a.lp_only);
    let report = match timed_certify(&set, d, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            finish(out, &error_report(config, &e.to_string()), BAD_INPUT);
            return BAD_INPUT;
        }
    };
    let mut body = theorem_value(&report);
    let mut code = if report.theorem_ok { OK } else { CHECK_FAILED };
    if a.brute_force {
        match run_oracle(&set, &opts) {
            Oracle::Agrees(v) => {
                body.insert("brute_force".into(), v);
            }
            Oracle::Disagrees(v) => {
                body.insert("brute_force".into(), v);
                body.insert("theorem_ok".into(), Value::Bool(false));
                code = CHECK_FAILED;
            }
            Oracle::Refused(m) => {
                eprintln!("error: {m}");
                body.insert("brute_force".into(), json!({ "ran": false, "error": m }));
                body.insert("theorem_ok".into(), Value::Bool(false));
                code = BAD_INPUT;
            }
        }
    }
    body.insert("tool".into(), tool());
    body.insert("config".into(), config);
    if let Err(e) = write_certs(a.certs.as_ref(), &report) {
        eprintln!("error: {e}");
        code = BAD_INPUT;
    }
    finish(out, &Value::Object(body), code)
}

fn cmd_bounds(a: &BoundsArgs) -> u8 {
    let table = match bounds::bounds_table(a.dim) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return BAD_INPUT;
        }
    };
    let mut body = json!({ "tool": tool(), "table": table });
    if let Some(n) = a.n {
        match bounds::edge_bounds(a.dim, n) {
            Ok((lower, upper)) => {
                body["edges"] = json!({
                    "n": n,
                    "lower": scalar::format(&lower),
                    "upper": scalar::format(&upper),
                });
            }
            Err(e) => {
                eprintln!("error: {e}");
                return BAD_INPUT;
            }
        }
    }
    finish(None, &body, OK)
}

fn cmd_demo(cli: &Cli, a: &DemoArgs) -> u8 {
    let params = build_params(&a.build);
    let mut config = build_config("demo", &a.build, params.as_ref().ok());
    config["lp_only"] = Value::Bool(a.lp_only);
    config["max_violations"] = json!(cli.max_violations);
    let out = a.report.as_deref();
    let params = match params {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            finish(out, &error_report(config, &e), BAD_INPUT);
            return BAD_INPUT;
        }
    };
    let (set, trace) = match timed_construct(&params) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: construction failed: {e}");
            let code = construction_exit(&e);
            finish(out, &error_report(config, &e.to_string()), code);
            return code;
        }
    };
    if let Some(p) = &a.out {
        if let Err(e) = emit(Some(p), &write_point_set(&set)) {
            eprintln!("error: {e}");
            finish(out, &error_report(config, &e), BAD_INPUT);
            return BAD_INPUT;
        }
    }
    let opts = certify_options(cli, a.lp_only);
    let report = match timed_certify(&set, params.d, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            finish(out, &error_report(config, &e.to_string()), CHECK_FAILED);
            return CHECK_FAILED;
        }
    };
    let mut body = theorem_value(&report);
    body.insert("tool".into(), tool());
    body.insert("config".into(), config);
    body.insert(
        "construction".into(),
        serde_json::to_value(&trace).expect("trace serializes"),
    );
    let mut code = if report.theorem_ok { OK } else { CHECK_FAILED };
    if let Err(e) = write_certs(a.certs.as_ref(), &report) {
        eprintln!("error: {e}");
        code = BAD_INPUT;
    }
    eprintln!(
        "d={} n={} edges={}/{} theorem_ok={}",
        report.d, report.n, report.edges.confirmed, report.edges.expected, report.theorem_ok
    );
    finish(out, &Value::Object(body), code)
}
