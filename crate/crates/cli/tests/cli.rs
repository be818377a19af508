use std::io::Write;
use std::process::{Command, Stdio};

use primult::arith::{MonomialOrder, Poly, PolyRing};
use primult::multiring::TruncRing;
use primult_cli::{run, run_document, Options, COMMANDS};
use serde_json::{json, Value};

fn ok(job: Value) -> Value {
    let out = run(&job, &Options::default()).unwrap_or_else(|e| panic!("{job}: {e:?}"));
    assert_eq!(out["command"], job["command"]);
    assert!(out["meta"]["elapsed_ms"].is_number());
    out["result"].clone()
}

fn j_ideal() -> Value {
    json!({
        "command": "module.balanced",
        "ring": { "vars": ["X", "Y"], "n": 2 },
        "payload": { "ideal": ["X^2", "Y^2 + t", "X*Y"] },
    })
}

#[test]
fn balanced_ideal_job() {
    let r = ok(j_ideal());
    assert_eq!(r["balanced"], false);
    // printed in the ring's variable order, so t comes last
    let ring = TruncRing::new(&["X", "Y"], 2).unwrap();
    assert_eq!(ring.parse(r["witness"].as_str().unwrap()).unwrap(), ring.parse("t*X").unwrap());
    let mut job = j_ideal();
    job["payload"]["ideal"] = json!(["X^2", "Y^2", "X*Y"]);
    assert_eq!(ok(job)["balanced"], true);
    let mut job = j_ideal();
    job["options"] = json!({ "locality": "origin" });
    assert_eq!(ok(job)["balanced"], false);
}

#[test]
fn tau_job() {
    let r = ok(json!({ "command": "ideal.tau", "payload": { "a": "1", "b": "0" } }));
    assert_eq!(r, json!({ "tau": [0, -1] }));
    let r = ok(json!({ "command": "ideal.lambda", "payload": { "a": "1", "b": "2" } }));
    assert_eq!(r["lambda"], json!([-1, -2]));
    let r = ok(json!({ "command": "ideal.eq", "payload": { "a": "1", "b": "0", "a2": "1 + x", "b2": "y" } }));
    assert_eq!(r["equal"], true);
}

#[test]
fn reduced_hilbert_job() {
    let r = ok(json!({
        "command": "hilbert.pred",
        "ring": { "vars": ["x0", "x1", "x2"], "n": 2, "t_weight": 1 },
        "payload": { "free": 1 },
    }));
    // C(d+2,2) + C(d+1,2) = d^2 + 2d + 1
    assert_eq!(r["coefficients"], json!([1, 2, 1]));
    assert_eq!(r["polynomial"], "d^2 + 2*d + 1");
    assert_eq!(r["rank"], 2);
}

#[test]
fn groebner_jobs() {
    let base = |cmd: &str| {
        json!({
            "command": cmd,
            "ring": { "vars": ["x", "y"] },
            "payload": { "generators": ["x^2 - y", "x*y - 1"], "element": "y^3 - 1" },
        })
    };
    let gb = ok(base("gb"));
    assert!(!gb["basis"].as_array().unwrap().is_empty());
    assert_eq!(ok(base("nf"))["member"], true);
    let syz = ok(base("syz"));
    assert!(!syz["syzygies"].as_array().unwrap().is_empty());
    let mut trunc = base("nf");
    trunc["ring"]["n"] = json!(2);
    trunc["payload"] = json!({ "generators": ["x"], "element": "t^2 + y" });
    let r = ok(trunc);
    assert_eq!(r["member"], false);
    assert_eq!(r["normal_form"], "y");
}

#[test]
fn module_jobs() {
    let ring = json!({ "vars": ["x"], "n": 2 });
    let q = |cmd: &str| json!({ "command": cmd, "ring": ring, "payload": { "quotient": ["x*t"] } });
    assert_eq!(ok(q("module.torsion"))["torsion_free"], false);
    assert_eq!(ok(q("module.quasifree"))["quasi_free"], false);
    let free = json!({ "command": "module.quasifree", "ring": ring, "payload": { "free": 2 } });
    assert_eq!(ok(free)["type"], json!([0, 2]));
    let ext = ok(json!({ "command": "module.extend", "ring": ring, "payload": { "sigma": "1", "i": 1 } }));
    assert_eq!(ext["type"], json!([0, 1]));
    for cmd in ["module.filtration", "module.dual", "module.generictype"] {
        ok(q(cmd));
    }
    let mut refine = q("module.refine");
    refine["ring"]["t_weight"] = json!(1);
    let r = ok(refine);
    assert_eq!(r["first"].as_array().unwrap().len(), r["second"].as_array().unwrap().len());
}

#[test]
fn ring_and_sequence_jobs() {
    let ring = json!({ "vars": ["x", "y", "z"], "n": 2 });
    let r = ok(json!({ "command": "regseq.check", "ring": ring, "payload": { "sequence": ["x + t", "y"] } }));
    assert_eq!(r["regular"], true);
    let r = ok(json!({ "command": "regseq.check", "ring": ring, "payload": { "sequence": ["x", "x"] } }));
    assert_eq!(r["regular"], false);
    assert_eq!(r["witness"]["k"], 2);
    let r = ok(json!({ "command": "regseq.shadow", "ring": ring, "payload": { "sequence": ["x", "y"], "y": "x*z" } }));
    assert_eq!(r["member"], true);
    let r = ok(json!({ "command": "ring.zerodivisor", "ring": ring, "payload": { "element": "x*t" } }));
    assert_eq!(r["zero_divisor"], true);
}

#[test]
fn automorphism_jobs() {
    let ring = json!({ "vars": ["x", "y"], "n": 2 });
    let phi = json!({ "derivation": ["y", "0"], "alpha": "1" });
    let psi = json!({ "derivation": ["0", "x"], "alpha": "2" });
    let c = ok(json!({ "command": "aut.compose", "ring": ring, "payload": { "phi": phi, "psi": psi } }));
    // D_ik = D_ij + alpha_ij D_jk
    assert_eq!(c["derivation"], json!(["y", "x"]));
    assert_eq!(c["alpha"], "2");
    let ik = json!({ "derivation": c["derivation"], "alpha": c["alpha"] });
    let job = json!({ "command": "aut.cocycle", "ring": ring, "payload": { "ij": phi, "jk": psi, "ik": ik } });
    assert_eq!(ok(job.clone())["consistent"], true);
    let mut bad = job;
    bad["payload"]["ik"]["alpha"] = json!("3");
    assert_eq!(ok(bad)["consistent"], false);
}

#[test]
fn double_point_jobs() {
    let r = ok(json!({ "command": "ideal.chart", "payload": { "a": "1", "b": "0", "chart": { "alpha": "0", "beta": "1", "gamma": "1", "delta": "0" } } }));
    assert_eq!(r["det"], -1);
    let rec = ok(json!({ "command": "ideal.recover", "payload": { "tau_bar": "x*t" } }));
    assert_eq!(rec["a"], "0");
    assert_eq!(rec["b"], "1");
    let ext = ok(json!({ "command": "ideal.extend", "payload": { "tau_bar": "x*t", "rho": "1" } }));
    assert_eq!(ext["balanced"], true);
    let ext = ok(json!({ "command": "ideal.extend", "payload": { "tau_bar": "x*t", "rho": "x" } }));
    assert_eq!(ext["balanced"], false);
    let res = ok(json!({ "command": "ideal.resolution", "options": { "degree_bound": 3 } }));
    assert_eq!(res["passed"], true);
    let ext = ok(json!({ "command": "ideal.extcheck", "options": { "degree_bound": 3 } }));
    assert_eq!(ext["passed"], true);
}

#[test]
fn errors_are_structured() {
    let (doc, code) = run_document("{ not json", &Options::default());
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["code"], "parse_error");
    let (doc, code) = run_document(&json!({ "command": "nope" }).to_string(), &Options::default());
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["location"], "command");
    let mut job = j_ideal();
    job["payload"]["ideal"][1] = json!("Y^^2");
    let (doc, code) = run_document(&job.to_string(), &Options::default());
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["code"], "parse_error");
    assert_eq!(doc["error"]["location"], "payload.ideal[1]");
}

#[test]
fn polynomial_round_trip() {
    let job = json!({
        "command": "gb",
        "ring": { "vars": ["x", "y", "z"] },
        "payload": { "generators": ["x^2*y - 3/4*z", "y^3 - x*z + 2", "x*z^2 - y"] },
    });
    let r = ok(job);
    let ring = PolyRing::new(&["x", "y", "z"], MonomialOrder::GrevLex).unwrap();
    for p in r["basis"].as_array().unwrap() {
        let s = p.as_str().unwrap();
        let parsed = Poly::parse(&ring, s).unwrap();
        assert_eq!(parsed.to_string(), s);
    }
}

#[test]
fn deterministic_output() {
    let a = ok(j_ideal());
    let b = ok(j_ideal());
    assert_eq!(a, b);
    assert_eq!(COMMANDS.len(), 27);
}

fn binary(args: &[&str], input: &str) -> (Value, i32) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_primult"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (serde_json::from_slice(&out.stdout).unwrap(), out.status.code().unwrap())
}

#[test]
fn exit_codes() {
    // a false verdict is still a completed computation
    let (doc, code) = binary(&["--verify"], &j_ideal().to_string());
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["balanced"], false);
    assert_eq!(doc["meta"]["verify"], true);
    let (doc, code) = binary(&[], "[]");
    assert_ne!(code, 0);
    assert_eq!(doc["error"]["code"], "schema_error");
    let (_, code) = binary(&["--jet-order", "2"], &json!({ "command": "ideal.tau", "payload": { "a": "1", "b": "0" } }).to_string());
    assert_ne!(code, 0);
}
