//! JSON job runner: one document in, one document out.
//!
//! A job looks like
//!
//! ```json
//! { "command": "module.balanced",
//!   "ring": { "vars": ["X", "Y"], "n": 2 },
//!   "payload": { "ideal": ["X^2", "Y^2 + t", "X*Y"] },
//!   "options": { "locality": "global" } }
//! ```
//!
//! Polynomials are strings in the library's grammar, and every polynomial in
//! a result is printed in canonical form so that it parses back to the same
//! value.

use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Map, Value};

use primult::arith::{format_rational, MonomialOrder, Poly, PolyRing, Rational};
use primult::doublepoint::{self as dp, Chart, LocalDoubleRing, PointIdeal, VerificationReport};
use primult::fpmod::{
    self, first_canonical_filtration, is_balanced_at, second_canonical_filtration, BalanceCertificate, FiltrationChain,
    Grading, IdealModule, Locality, PresMod, QuasiFreeType,
};
use primult::groebner::{self, FreeModuleElement};
use primult::hilbert;
use primult::multiring::{self, AutMap, TruncElem, TruncRing};
use primult::regseq::{self, SequenceWitness};

pub const COMMANDS: &[&str] = &[
    "gb",
    "nf",
    "syz",
    "ring.zerodivisor",
    "aut.compose",
    "aut.cocycle",
    "module.filtration",
    "module.balanced",
    "module.quasifree",
    "module.generictype",
    "module.torsion",
    "module.dual",
    "module.ext1",
    "module.extend",
    "module.refine",
    "regseq.check",
    "regseq.shadow",
    "ideal.tau",
    "ideal.eq",
    "ideal.lambda",
    "ideal.chart",
    "ideal.resolution",
    "ideal.extcheck",
    "ideal.extend",
    "ideal.recover",
    "hilbert.poly",
    "hilbert.pred",
];

/// Settings given on the command line; they override the job's options.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub jet_order: Option<u32>,
    pub order: Option<MonomialOrder>,
    pub degree_bound: Option<u32>,
    /// Run the extra checks that are too slow to do by default.
    pub verify: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobError {
    pub code: String,
    pub message: String,
    pub location: Option<String>,
}

impl JobError {
    fn schema(location: &str, message: impl Into<String>) -> Self {
        JobError { code: "schema_error".into(), message: message.into(), location: Some(location.into()) }
    }

    fn at(e: primult::Error, location: &str) -> Self {
        let mut j = JobError::from(e);
        j.location = Some(location.into());
        j
    }

    pub fn to_json(&self) -> Value {
        json!({ "code": self.code, "message": self.message, "location": self.location })
    }
}

impl From<primult::Error> for JobError {
    fn from(e: primult::Error) -> Self {
        JobError { code: e.code().into(), message: e.to_string(), location: None }
    }
}

type JResult<T> = std::result::Result<T, JobError>;

pub fn parse_order(s: &str) -> Option<MonomialOrder> {
    match s {
        "grevlex" => Some(MonomialOrder::GrevLex),
        "lex" => Some(MonomialOrder::Lex),
        _ => None,
    }
}

/// Parses `text` and runs it. Returns the output document and the process
/// exit code: 0 when the computation finished, whatever the verdict.
pub fn run_document(text: &str, opts: &Options) -> (Value, i32) {
    let job: Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => {
            let err = JobError {
                code: "parse_error".into(),
                message: e.to_string(),
                location: Some(format!("line {}, column {}", e.line(), e.column())),
            };
            return (json!({ "error": err.to_json() }), 1);
        }
    };
    match run(&job, opts) {
        Ok(v) => (v, 0),
        Err(e) => {
            let mut out = Map::new();
            if let Some(c) = job.get("command") {
                out.insert("command".into(), c.clone());
            }
            out.insert("error".into(), e.to_json());
            (Value::Object(out), 1)
        }
    }
}

pub fn run(job: &Value, opts: &Options) -> JResult<Value> {
    let obj = job.as_object().ok_or_else(|| JobError::schema("$", "job must be an object"))?;
    for k in obj.keys() {
        if !["command", "ring", "payload", "options"].contains(&k.as_str()) {
            return Err(JobError::schema(k, format!("unknown field {k:?}")));
        }
    }
    let command = obj
        .get("command")
        .and_then(Value::as_str)
        .ok_or_else(|| JobError::schema("command", "missing command"))?;
    if !COMMANDS.contains(&command) {
        return Err(JobError::schema("command", format!("unknown command {command:?}")));
    }
    let empty = Value::Object(Map::new());
    let ctx = Ctx {
        ring: obj.get("ring").unwrap_or(&empty),
        payload: obj.get("payload").unwrap_or(&empty),
        options: obj.get("options").unwrap_or(&empty),
        cli: opts,
    };
    let start = Instant::now();
    let result = dispatch(command, &ctx)?;
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    Ok(json!({
        "command": command,
        "result": result,
        "meta": { "elapsed_ms": elapsed, "verify": ctx.verify() },
    }))
}

struct Ctx<'a> {
    ring: &'a Value,
    payload: &'a Value,
    options: &'a Value,
    cli: &'a Options,
}

fn field<'v>(v: &'v Value, key: &str, loc: &str) -> JResult<&'v Value> {
    v.get(key).ok_or_else(|| JobError::schema(&format!("{loc}.{key}"), format!("missing field {key:?}")))
}

fn as_str<'v>(v: &'v Value, loc: &str) -> JResult<&'v str> {
    v.as_str().ok_or_else(|| JobError::schema(loc, "expected a string"))
}

fn as_array<'v>(v: &'v Value, loc: &str) -> JResult<&'v Vec<Value>> {
    v.as_array().ok_or_else(|| JobError::schema(loc, "expected an array"))
}

fn as_u64(v: &Value, loc: &str) -> JResult<u64> {
    v.as_u64().ok_or_else(|| JobError::schema(loc, "expected a non-negative integer"))
}

fn as_i64(v: &Value, loc: &str) -> JResult<i64> {
    v.as_i64().ok_or_else(|| JobError::schema(loc, "expected an integer"))
}

fn str_list(v: &Value, loc: &str) -> JResult<Vec<String>> {
    as_array(v, loc)?
        .iter()
        .enumerate()
        .map(|(i, s)| as_str(s, &format!("{loc}[{i}]")).map(str::to_string))
        .collect()
}

fn rat_json(q: &Rational) -> Value {
    if q.is_integer() {
        if let Ok(i) = i64::try_from(q.to_integer()) {
            return json!(i);
        }
    }
    json!(format_rational(q))
}

fn elems_json(v: &[TruncElem]) -> Value {
    Value::Array(v.iter().map(|e| json!(e.to_string())).collect())
}

fn presentation_json(m: &PresMod) -> Value {
    let rels: Vec<Value> = m.relations().iter().map(|r| elems_json(r)).collect();
    json!({
        "ngens": m.ngens(),
        "relations": rels,
        "gen_degrees": m.grading().map(|g| g.gen_degrees.clone()),
    })
}

fn report_json(r: &VerificationReport) -> Value {
    json!({
        "passed": r.passed(),
        "degree_bound": r.degree_bound,
        "checks": r.checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect::<Vec<_>>(),
        "degrees": r.degrees.iter().map(|d| json!({ "degree": d.degree, "computed": d.computed, "expected": d.expected })).collect::<Vec<_>>(),
    })
}

fn chain_json(c: &FiltrationChain) -> Value {
    Value::Array(
        c.members()
            .iter()
            .map(|s| Value::Array(s.generators().iter().map(|g| elems_json(g)).collect()))
            .collect(),
    )
}

impl Ctx<'_> {
    fn verify(&self) -> bool {
        self.cli.verify || self.options.get("verify").and_then(Value::as_bool).unwrap_or(false)
    }

    fn order(&self) -> JResult<MonomialOrder> {
        if let Some(o) = self.cli.order {
            return Ok(o);
        }
        let v = self.options.get("order").or_else(|| self.ring.get("order"));
        match v {
            None => Ok(MonomialOrder::GrevLex),
            Some(s) => {
                let s = as_str(s, "options.order")?;
                parse_order(s).ok_or_else(|| JobError::schema("options.order", format!("unknown order {s:?}")))
            }
        }
    }

    fn jet_order(&self) -> JResult<u32> {
        if let Some(j) = self.cli.jet_order {
            return Ok(j);
        }
        match self.options.get("jet_order") {
            None => Ok(dp::DEFAULT_JET_ORDER),
            Some(v) => Ok(as_u64(v, "options.jet_order")? as u32),
        }
    }

    fn degree_bound(&self, default: u32) -> JResult<u32> {
        if let Some(d) = self.cli.degree_bound {
            return Ok(d);
        }
        match self.options.get("degree_bound") {
            None => Ok(default),
            Some(v) => Ok(as_u64(v, "options.degree_bound")? as u32),
        }
    }

    fn locality(&self) -> JResult<Locality> {
        match self.options.get("locality").map(|v| as_str(v, "options.locality")).transpose()? {
            None | Some("global") => Ok(Locality::Global),
            Some("origin") => Ok(Locality::AtOrigin),
            Some(s) => Err(JobError::schema("options.locality", format!("expected \"global\" or \"origin\", got {s:?}"))),
        }
    }

    fn vars(&self) -> JResult<Vec<String>> {
        str_list(field(self.ring, "vars", "ring")?, "ring.vars")
    }

    fn n(&self) -> JResult<Option<u32>> {
        self.ring.get("n").map(|v| as_u64(v, "ring.n").map(|n| n as u32)).transpose()
    }

    fn trunc_ring(&self) -> JResult<TruncRing> {
        let n = self.n()?.unwrap_or(1);
        TruncRing::with_order(&self.vars()?, n, self.order()?).map_err(|e| JobError::at(e, "ring"))
    }

    fn t_weight(&self) -> JResult<Option<i64>> {
        self.ring.get("t_weight").map(|v| as_i64(v, "ring.t_weight")).transpose()
    }

    fn local_ring(&self) -> JResult<LocalDoubleRing> {
        LocalDoubleRing::new(self.jet_order()?).map_err(|e| JobError::at(e, "options.jet_order"))
    }
}

fn elem(r: &TruncRing, v: &Value, loc: &str) -> JResult<TruncElem> {
    r.parse(as_str(v, loc)?).map_err(|e| JobError::at(e, loc))
}

fn elems(r: &TruncRing, v: &Value, loc: &str) -> JResult<Vec<TruncElem>> {
    as_array(v, loc)?.iter().enumerate().map(|(i, x)| elem(r, x, &format!("{loc}[{i}]"))).collect()
}

fn base_poly(r: &TruncRing, v: &Value, loc: &str) -> JResult<Poly> {
    r.parse_base(as_str(v, loc)?).map_err(|e| JobError::at(e, loc))
}

/// A module given by `{"ngens", "relations", "gen_degrees"?}`,
/// `{"free": k}`, `{"quotient": [..]}` (cyclic `R[n]/I`) or `{"ideal": [..]}`.
/// It is graded when the ring has a `t_weight`.
fn module(ctx: &Ctx, desc: &Value, loc: &str) -> JResult<(PresMod, Option<IdealModule>)> {
    let r = ctx.trunc_ring()?;
    let tw = ctx.t_weight()?;
    let degrees = |k: usize| -> JResult<Vec<i64>> {
        match desc.get("gen_degrees") {
            None => Ok(vec![0; k]),
            Some(v) => {
                let d: Vec<i64> = as_array(v, &format!("{loc}.gen_degrees"))?
                    .iter()
                    .enumerate()
                    .map(|(i, x)| as_i64(x, &format!("{loc}.gen_degrees[{i}]")))
                    .collect::<JResult<_>>()?;
                if d.len() != k {
                    return Err(JobError::schema(&format!("{loc}.gen_degrees"), format!("expected {k} degrees")));
                }
                Ok(d)
            }
        }
    };
    let grading = |k: usize| -> JResult<Option<Grading>> {
        Ok(match tw {
            Some(w) => Some(Grading::standard(r.nbase(), w, degrees(k)?)),
            None => None,
        })
    };
    if let Some(g) = desc.get("ideal") {
        let gens = elems(&r, g, &format!("{loc}.ideal"))?;
        let im = IdealModule::new(&r, &gens, tw).map_err(|e| JobError::at(e, loc))?;
        return Ok((im.module().clone(), Some(im)));
    }
    if let Some(g) = desc.get("quotient") {
        let gens = elems(&r, g, &format!("{loc}.quotient"))?;
        let m = PresMod::cyclic(&r, &gens, grading(1)?).map_err(|e| JobError::at(e, loc))?;
        return Ok((m, None));
    }
    if let Some(k) = desc.get("free") {
        let k = as_u64(k, &format!("{loc}.free"))? as usize;
        let m = PresMod::new(&r, k, &[], grading(k)?).map_err(|e| JobError::at(e, loc))?;
        return Ok((m, None));
    }
    let k = as_u64(field(desc, "ngens", loc)?, &format!("{loc}.ngens"))? as usize;
    let rl = format!("{loc}.relations");
    let rels: Vec<Vec<TruncElem>> = match desc.get("relations") {
        None => Vec::new(),
        Some(v) => as_array(v, &rl)?
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let row = elems(&r, row, &format!("{rl}[{i}]"))?;
                if row.len() != k {
                    return Err(JobError::schema(&format!("{rl}[{i}]"), format!("expected {k} entries")));
                }
                Ok(row)
            })
            .collect::<JResult<_>>()?,
    };
    let m = PresMod::new(&r, k, &rels, grading(k)?).map_err(|e| JobError::at(e, loc))?;
    Ok((m, None))
}

fn payload_module(ctx: &Ctx) -> JResult<(PresMod, Option<IdealModule>)> {
    module(ctx, ctx.payload, "payload")
}

fn dispatch(command: &str, ctx: &Ctx) -> JResult<Value> {
    match command {
        "gb" | "nf" | "syz" => groebner_job(command, ctx),
        "ring.zerodivisor" => {
            let r = ctx.trunc_ring()?;
            let u = elem(&r, field(ctx.payload, "element", "payload")?, "payload.element")?;
            Ok(json!({
                "zero_divisor": multiring::is_zero_divisor(&u),
                "unit": u.is_unit(),
                "unit_at_origin": u.is_unit_at_origin(),
                "reduction": u.u0().to_string(),
            }))
        }
        "aut.compose" => {
            let r = ctx.trunc_ring()?;
            let phi = aut(&r, field(ctx.payload, "phi", "payload")?, "payload.phi")?;
            let psi = aut(&r, field(ctx.payload, "psi", "payload")?, "payload.psi")?;
            Ok(aut_json(&multiring::compose(&phi, &psi)?))
        }
        "aut.cocycle" => {
            let r = ctx.trunc_ring()?;
            let get = |k: &str| aut(&r, field(ctx.payload, k, "payload")?, &format!("payload.{k}"));
            Ok(json!({ "consistent": multiring::verify_cocycle(&get("ij")?, &get("jk")?, &get("ik")?)? }))
        }
        "module.filtration" => {
            let (m, _) = payload_module(ctx)?;
            Ok(json!({
                "first": chain_json(&first_canonical_filtration(&m)),
                "second": chain_json(&second_canonical_filtration(&m)),
            }))
        }
        "module.balanced" => {
            let (m, ideal) = payload_module(ctx)?;
            let loc = ctx.locality()?;
            if let (Some(im), Locality::Global) = (ideal, loc) {
                let b = im.balance()?;
                return Ok(json!({
                    "balanced": b.balanced,
                    "level": b.level,
                    "witness": b.witness.map(|w| w.to_string()),
                    "certificate": b.certificate.map(|c| elems_json(&c)),
                }));
            }
            let (ok, cert) = is_balanced_at(&m, loc)?;
            Ok(match cert {
                BalanceCertificate::AllGammaZero => json!({ "balanced": ok, "level": null, "witness": null }),
                BalanceCertificate::Witness { i, element } => {
                    json!({ "balanced": ok, "level": i, "witness": elems_json(&element) })
                }
            })
        }
        "module.quasifree" => {
            let (m, _) = payload_module(ctx)?;
            Ok(match fpmod::quasi_free_type(&m)? {
                QuasiFreeType::Type(v) => json!({ "quasi_free": true, "type": v, "first_nonfree": null }),
                QuasiFreeType::Absent { first_nonfree } => {
                    json!({ "quasi_free": false, "type": null, "first_nonfree": first_nonfree })
                }
            })
        }
        "module.generictype" => {
            let (m, _) = payload_module(ctx)?;
            Ok(json!({ "type": fpmod::generic_type(&m)? }))
        }
        "module.torsion" => {
            let (m, _) = payload_module(ctx)?;
            let t = primult::dualtor::torsion(&m)?;
            Ok(json!({
                "torsion_free": t.is_torsion_free(),
                "generators": t.torsion.generators().iter().map(|g| elems_json(g)).collect::<Vec<_>>(),
                "witnesses": t.witnesses.iter().map(|(g, s)| json!({ "element": elems_json(g), "annihilator": s.to_string() })).collect::<Vec<_>>(),
            }))
        }
        "module.dual" => {
            let (m, _) = payload_module(ctx)?;
            Ok(json!({ "dual": presentation_json(&primult::dualtor::dual(&m)?) }))
        }
        "module.ext1" => {
            let (m, _) = module(ctx, field(ctx.payload, "source", "payload")?, "payload.source")?;
            let (n, _) = module(ctx, field(ctx.payload, "target", "payload")?, "payload.target")?;
            let e = fpmod::ext1_module(&m, &n)?;
            let mut out = json!({ "ext1": presentation_json(&e), "fiber_dim": e.fiber_dim(), "is_zero": e.is_zero() });
            if e.is_graded() {
                let h = e.hilbert_series()?;
                let bound = ctx.degree_bound(4)? as i64;
                let dims: Vec<String> = (0..=bound).map(|d| h.coefficient(d).to_string()).collect();
                out["hilbert_function"] = json!(dims);
            }
            Ok(out)
        }
        "module.extend" => {
            let r = ctx.trunc_ring()?;
            let sigma = base_poly(&r, field(ctx.payload, "sigma", "payload")?, "payload.sigma")?;
            let i = as_u64(field(ctx.payload, "i", "payload")?, "payload.i")? as u32;
            let ext = fpmod::extension_R_by_Ri(&r, &sigma, i)?;
            let ty = fpmod::quasi_free_type(&ext.module)?;
            let mut out = json!({
                "module": presentation_json(&ext.module),
                "type": ty.type_vector(),
            });
            if ctx.verify() {
                out["exact"] = json!(ext.is_exact()?);
            }
            Ok(out)
        }
        "module.refine" => {
            let (m, _) = payload_module(ctx)?;
            let (d, f) = fpmod::refine_filtrations(&first_canonical_filtration(&m), &second_canonical_filtration(&m))?;
            Ok(json!({ "first": chain_json(&d), "second": chain_json(&f) }))
        }
        "regseq.check" => {
            let r = ctx.trunc_ring()?;
            let seq = elems(&r, field(ctx.payload, "sequence", "payload")?, "payload.sequence")?;
            let rep = regseq::is_regular_sequence(&seq, ctx.locality()?)?;
            let witness = match rep.witness {
                None => Value::Null,
                Some(SequenceWitness::ZeroDivisor { k, a }) => json!({ "kind": "zero_divisor", "k": k, "element": a.to_string() }),
                Some(SequenceWitness::UnitIdeal { k }) => json!({ "kind": "unit_ideal", "k": k }),
            };
            Ok(json!({
                "regular": rep.regular,
                "reductions": rep.reductions.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "witness": witness,
            }))
        }
        "regseq.shadow" => {
            let r = ctx.trunc_ring()?;
            let seq = elems(&r, field(ctx.payload, "sequence", "payload")?, "payload.sequence")?;
            let y = base_poly(&r, field(ctx.payload, "y", "payload")?, "payload.y")?;
            Ok(json!({ "member": regseq::shadow_membership(&y, &seq, ctx.locality()?)? }))
        }
        c if c.starts_with("ideal.") => ideal_job(c, ctx),
        "hilbert.poly" => {
            let (m, _) = payload_module(ctx)?;
            Ok(hilb_json(&hilbert::hilbert_polynomial(&m)?))
        }
        "hilbert.pred" => {
            let (m, _) = payload_module(ctx)?;
            let rd = hilbert::rank_degree_reduced(&m)?;
            let mut out = hilb_json(&rd.polynomial);
            out["rank"] = rat_json(&rd.rank);
            out["subleading"] = rat_json(&rd.subleading);
            Ok(out)
        }
        _ => unreachable!("command list checked above"),
    }
}

fn hilb_json(p: &hilbert::HilbPoly) -> Value {
    json!({
        "polynomial": p.to_string(),
        "coefficients": p.coeffs().iter().map(rat_json).collect::<Vec<_>>(),
    })
}

fn aut(r: &TruncRing, v: &Value, loc: &str) -> JResult<AutMap> {
    if let Some(d) = v.get("derivation") {
        let dl = format!("{loc}.derivation");
        let d: Vec<Poly> = as_array(d, &dl)?
            .iter()
            .enumerate()
            .map(|(i, x)| base_poly(r, x, &format!("{dl}[{i}]")))
            .collect::<JResult<_>>()?;
        let alpha = base_poly(r, field(v, "alpha", loc)?, &format!("{loc}.alpha"))?;
        return AutMap::from_derivation(r, &d, &alpha).map_err(|e| JobError::at(e, loc));
    }
    let xs = elems(r, field(v, "x_images", loc)?, &format!("{loc}.x_images"))?;
    let t = elem(r, field(v, "t_image", loc)?, &format!("{loc}.t_image"))?;
    AutMap::new(r, xs, t).map_err(|e| JobError::at(e, loc))
}

fn aut_json(a: &AutMap) -> Value {
    let mut out = json!({ "x_images": elems_json(a.x_images()), "t_image": a.t_image().to_string() });
    if a.ring().n() == 2 {
        out["derivation"] = json!(a.derivation().iter().map(|p| p.to_string()).collect::<Vec<_>>());
        out["alpha"] = json!(a.alpha().to_string());
    }
    out
}

/// Generators are strings (ideals) or arrays of strings (submodules of a
/// free module). With `n` in the ring, the ring is `Q[vars, t]` and `t^n`
/// is adjoined.
fn groebner_job(command: &str, ctx: &Ctx) -> JResult<Value> {
    let mut vars = ctx.vars()?;
    let n = ctx.n()?;
    if n.is_some() {
        vars.push("t".into());
    }
    let ring: Arc<PolyRing> = PolyRing::new(&vars, ctx.order()?).map_err(|e| JobError::at(e, "ring"))?;
    let el = |v: &Value, loc: &str| -> JResult<FreeModuleElement> {
        let polys: Vec<Value> = match v {
            Value::String(_) => vec![v.clone()],
            _ => as_array(v, loc)?.clone(),
        };
        let ps = polys
            .iter()
            .enumerate()
            .map(|(i, p)| Poly::parse(&ring, as_str(p, &format!("{loc}[{i}]"))?).map_err(|e| JobError::at(e, &format!("{loc}[{i}]"))))
            .collect::<JResult<Vec<_>>>()?;
        FreeModuleElement::new(&ring, ps).map_err(|e| JobError::at(e, loc))
    };
    let gl = "payload.generators";
    let mut gens: Vec<FreeModuleElement> = as_array(field(ctx.payload, "generators", "payload")?, gl)?
        .iter()
        .enumerate()
        .map(|(i, g)| el(g, &format!("{gl}[{i}]")))
        .collect::<JResult<_>>()?;
    let rank = gens.first().map_or(1, FreeModuleElement::rank);
    let fmt = |f: &FreeModuleElement| -> Value {
        if rank == 1 {
            json!(f.components()[0].to_string())
        } else {
            json!(f.components().iter().map(|p| p.to_string()).collect::<Vec<_>>())
        }
    };
    if command == "syz" {
        let syz = groebner::syzygy_basis(&gens)?;
        return Ok(json!({ "syzygies": syz.iter().map(|s| json!(s.components().iter().map(|p| p.to_string()).collect::<Vec<_>>())).collect::<Vec<_>>() }));
    }
    if let Some(n) = n {
        gens.extend(groebner::truncation_relations(&ring, rank, vars.len() - 1, n));
    }
    let gb = groebner::groebner_basis_in(&ring, rank, &gens, ctx.order()?)?;
    if command == "gb" {
        let mut out = json!({ "basis": gb.generators().iter().map(fmt).collect::<Vec<_>>() });
        if ctx.verify() {
            out["buchberger_criterion"] = json!(gb.satisfies_buchberger_criterion());
        }
        return Ok(out);
    }
    let f = el(field(ctx.payload, "element", "payload")?, "payload.element")?;
    let nf = gb.normal_form(&f)?;
    Ok(json!({ "normal_form": fmt(&nf), "member": nf.is_zero() }))
}

fn point_ideal(r: &LocalDoubleRing, v: &Value, ka: &str, kb: &str) -> JResult<PointIdeal> {
    let a = r.parse_base(as_str(field(v, ka, "payload")?, &format!("payload.{ka}"))?).map_err(|e| JobError::at(e, &format!("payload.{ka}")))?;
    let b = r.parse_base(as_str(field(v, kb, "payload")?, &format!("payload.{kb}"))?).map_err(|e| JobError::at(e, &format!("payload.{kb}")))?;
    Ok(PointIdeal::new(r, &a, &b)?)
}

fn point_json(j: &PointIdeal) -> Value {
    json!({
        "a": j.a().to_string(),
        "b": j.b().to_string(),
        "generators": elems_json(&j.generators()),
    })
}

fn ideal_job(command: &str, ctx: &Ctx) -> JResult<Value> {
    let r = ctx.local_ring()?;
    let p = ctx.payload;
    let tau_bar = || -> JResult<TruncElem> {
        r.parse(as_str(field(p, "tau_bar", "payload")?, "payload.tau_bar")?).map_err(|e| JobError::at(e, "payload.tau_bar"))
    };
    match command {
        "ideal.tau" => {
            let t = dp::tau(&point_ideal(&r, p, "a", "b")?)?;
            Ok(json!({ "tau": [rat_json(&t.c_x), rat_json(&t.c_y)] }))
        }
        "ideal.eq" => {
            let j1 = point_ideal(&r, p, "a", "b")?;
            let j2 = point_ideal(&r, p, "a2", "b2")?;
            Ok(json!({ "equal": dp::ideals_equal(&j1, &j2)? }))
        }
        "ideal.lambda" => {
            let l = dp::lambda_coord(&point_ideal(&r, p, "a", "b")?)?;
            Ok(json!({ "lambda": l.coords.iter().map(rat_json).collect::<Vec<_>>() }))
        }
        "ideal.chart" => {
            let j = point_ideal(&r, p, "a", "b")?;
            let c = field(p, "chart", "payload")?;
            let get_base = |k: &str, default: &str| -> JResult<Poly> {
                let s = match c.get(k) {
                    Some(v) => as_str(v, &format!("payload.chart.{k}"))?,
                    None => default,
                };
                r.parse_base(s).map_err(|e| JobError::at(e, &format!("payload.chart.{k}")))
            };
            let get_elem = |k: &str| -> JResult<TruncElem> {
                let s = match c.get(k) {
                    Some(v) => as_str(v, &format!("payload.chart.{k}"))?,
                    None => "0",
                };
                r.parse(s).map_err(|e| JobError::at(e, &format!("payload.chart.{k}")))
            };
            let chart = Chart::new(
                &r,
                [get_base("alpha", "1")?, get_base("beta", "0")?, get_base("gamma", "0")?, get_base("delta", "1")?],
                get_elem("u")?,
                get_elem("v")?,
            )
            .map_err(|e| JobError::at(e, "payload.chart"))?;
            let l = dp::change_chart(&j, &chart)?;
            Ok(json!({
                "lambda": l.coords.iter().map(rat_json).collect::<Vec<_>>(),
                "lambda_in_chart_basis": l.chart_coords().iter().map(rat_json).collect::<Vec<_>>(),
                "det": rat_json(&chart.det0()),
            }))
        }
        "ideal.resolution" => Ok(report_json(&dp::verify_maximal_ideal_resolution(&r, ctx.degree_bound(4)?)?)),
        "ideal.extcheck" => Ok(report_json(&dp::ext_complex_check(&r, ctx.degree_bound(4)?)?)),
        "ideal.extend" => {
            let tb = tau_bar()?;
            let rho = r.parse_base(as_str(field(p, "rho", "payload")?, "payload.rho")?).map_err(|e| JobError::at(e, "payload.rho"))?;
            let ext = dp::extension_sequence(&r, &tb, &rho)?;
            let mut out = json!({
                "module": presentation_json(&ext.module),
                "balanced": dp::is_balanced_extension(&r, &tb, &rho)?,
            });
            if ctx.verify() {
                out["exact"] = json!(ext.is_exact()?);
            }
            Ok(out)
        }
        "ideal.recover" => Ok(point_json(&dp::recover_ideal(&r, &tau_bar()?)?)),
        _ => unreachable!("command list checked above"),
    }
}
