//! Command dispatch: one JSON document per invocation.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Map, Value};
use tightlab_core::differentials::{fitting_chain, smoothness_caveats};
use tightlab_core::{
    big_height, frobenius_closure_member, frobenius_power, height, is_equiheight, jacobian_ideal,
    jacobian_matrix, krull_dim, krull_truncation_check, rank_at_prime, regular_at, singular_locus,
    tc_certify_in, tc_refute_in, test_multiplier_harness, truncate_presentation, CharPContext, ComponentData,
    Error, ErrorKind, HarnessStatus, Ideal, PolyMatrix, PresentedAlgebra, PrimeWitness, Provenance, Result, Ring,
};

use crate::args::{Cli, Command, Common};
use crate::report;
use crate::ringfile::{parse_components, RingFile, Scope};
use crate::sweep;

pub const SEMI_DECISION_CAVEAT: &str = "bounded evidence: only e <= e_max examined";
pub const USER_COMPONENTS_CAVEAT: &str =
    "minimal primes user-supplied: primality asserted; containment, minimality and radical verified";
pub const JACOBIAN_ZERO_CAVEAT: &str = "Jacobian ideal is zero in R";

/// Rendered output and the process exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
    pub out_path: Option<PathBuf>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e.kind() {
        ErrorKind::Argument | ErrorKind::Parse => 1,
        ErrorKind::Domain => 2,
        ErrorKind::Verification => 3,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::InvalidArgument(format!("missing {flag}")))
}

/// Everything a ring-based command needs.
pub struct Session {
    pub file: RingFile,
    pub ring: Arc<Ring>,
    pub scope: Scope,
    pub algebra: PresentedAlgebra,
    claimed: Option<Vec<Ideal>>,
}

impl Session {
    pub fn new(file: RingFile, order: Option<&str>, components_text: Option<&str>) -> Result<Session> {
        let ring = file.ring(order)?;
        let scope = file.scope(&ring)?;
        let gens = file.ideal.iter().map(|e| scope.eval(e)).collect::<Result<Vec<_>>>()?;
        let algebra = PresentedAlgebra::new(&ring, gens, file.flags)?;
        let exprs = match components_text {
            Some(text) => parse_components(text, &file)?,
            None => file.components.clone(),
        };
        let claimed = if exprs.is_empty() {
            None
        } else {
            let mut list = Vec::new();
            for c in &exprs {
                let gens = c.iter().map(|e| scope.eval(e)).collect::<Result<Vec<_>>>()?;
                list.push(Ideal::new(&ring, gens)?);
            }
            Some(list)
        };
        Ok(Session { file, ring, scope, algebra, claimed })
    }

    fn load(common: &Common) -> Result<Session> {
        let path = common.ring.as_ref().ok_or_else(|| Error::InvalidArgument("missing --ring".into()))?;
        let file = RingFile::parse(&read(path)?)?;
        let comps = common.components.as_deref().map(read).transpose()?;
        Session::new(file, common.order.as_deref(), comps.as_deref())
    }

    /// Verified user components, or primes derived from a monomial ideal.
    pub fn components(&self) -> Result<ComponentData> {
        self.algebra.components(self.claimed.clone())
    }

    /// Components when they can be had; `None` for a non-monomial ideal
    /// without a claimed list.
    pub fn components_if_available(&self) -> Result<Option<ComponentData>> {
        match self.components() {
            Ok(c) => Ok(Some(c)),
            Err(Error::MissingComponents) => Ok(None),
            Err(e) => Err(e),
        }
    }

    pub fn ring_echo(&self) -> Value {
        json!({
            "char": self.file.characteristic.to_string(),
            "vars": self.file.vars,
            "order": self.ring.order().name(),
            "ideal": self.file.ideal.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "flags": {
                "reduced": self.file.flags.assume_reduced,
                "equidimensional": self.file.flags.assume_equidimensional,
            },
        })
    }

    fn ideal_or_defining(&self, text: &Option<String>) -> Result<Ideal> {
        match text {
            Some(t) => self.scope.parse_ideal(t),
            None => Ok(self.algebra.defining_ideal().clone()),
        }
    }

    fn maximal_or(&self, text: &Option<String>) -> Result<Ideal> {
        match text {
            Some(t) => self.scope.parse_ideal(t),
            None => Ok(Ideal::maximal_at_origin(&self.ring)),
        }
    }

    pub fn jacobian_is_zero(&self, comps: &ComponentData) -> Result<bool> {
        let j = jacobian_ideal(&self.algebra, comps)?;
        self.algebra.defining_ideal().contains_ideal(&j)
    }
}

struct Reply {
    args: Map<String, Value>,
    result: Map<String, Value>,
    caveats: Vec<String>,
    exit_code: i32,
}

impl Reply {
    fn new() -> Self {
        Reply { args: Map::new(), result: Map::new(), caveats: Vec::new(), exit_code: 0 }
    }

    fn arg(&mut self, k: &str, v: impl Into<Value>) {
        self.args.insert(k.into(), v.into());
    }

    fn set(&mut self, k: &str, v: impl Into<Value>) {
        self.result.insert(k.into(), v.into());
    }

    fn caveat(&mut self, c: impl Into<String>) {
        let c = c.into();
        if !self.caveats.contains(&c) {
            self.caveats.push(c);
        }
    }

    fn provenance(&mut self, comps: &ComponentData) {
        if comps.provenance() == Provenance::UserSupplied {
            self.caveat(USER_COMPONENTS_CAVEAT);
        }
    }
}

fn char_p_context(s: &Session, e_max: u32) -> Result<CharPContext> {
    CharPContext::for_ring(&s.ring, e_max)
}

fn prime_witness(s: &Session, text: &Option<String>, reply: &mut Reply) -> Result<PrimeWitness> {
    let q = PrimeWitness::new(s.scope.parse_ideal(required(text, "--prime")?)?);
    reply.arg("prime", report::generators(&q.ideal));
    reply.set("prime_provenance", q.provenance());
    if !q.verified {
        reply.caveat("primality of --prime asserted by user, not verified");
    }
    Ok(q)
}

fn execute(cmd: &Command, s: &Session) -> Result<Reply> {
    let mut reply = Reply::new();
    match cmd {
        Command::Gb { ideal, .. } => {
            let i = s.ideal_or_defining(ideal)?;
            reply.arg("ideal", ideal.clone());
            reply.set("ideal", report::ideal(&i));
        }
        Command::Dim { .. } => {
            reply.set("krull_dim", krull_dim(&s.algebra)?);
        }
        Command::Height { ideal, .. } => {
            reply.arg("ideal", ideal.clone());
            match ideal {
                Some(t) => {
                    let i = s.scope.parse_ideal(t)?;
                    reply.set("height", height(&i)?);
                }
                None => {
                    let i = s.algebra.defining_ideal();
                    reply.set("height", height(i)?);
                    let comps = s.components_if_available()?;
                    match &comps {
                        Some(c) => {
                            reply.provenance(c);
                            reply.set("big_height", big_height(i, Some(c))?);
                        }
                        None => {
                            reply.set("big_height", Value::Null);
                            reply.caveat("big height needs minimal primes; supply --components");
                        }
                    }
                }
            }
        }
        Command::MinPrimes { .. } => {
            let comps = s.components()?;
            reply.provenance(&comps);
            reply.set("components", report::components(&comps));
        }
        Command::Equiheight { .. } => {
            let comps = s.components()?;
            reply.provenance(&comps);
            reply.set("equiheight", is_equiheight(&s.algebra, &comps)?);
            reply.set("heights", comps.heights().to_vec());
        }
        Command::Jacobian { .. } => {
            reply.set("matrix", report::matrix(&jacobian_matrix(&s.algebra)));
        }
        Command::Fitting { index, .. } => {
            let m = jacobian_matrix(&s.algebra);
            reply.arg("index", *index);
            let chain: Vec<Value> = match index {
                Some(i) => vec![fitting_json(&m, *i, s)?],
                None => (0..=m.cols()).map(|i| fitting_json(&m, i, s)).collect::<Result<_>>()?,
            };
            if index.is_none() {
                let full = fitting_chain(&m, s.algebra.defining_ideal())?;
                let ascending =
                    full.windows(2).map(|w| w[1].ideal.contains_ideal(&w[0].ideal)).collect::<Result<Vec<_>>>()?;
                reply.set("ascending", ascending.iter().all(|&b| b));
            }
            reply.set("shape", vec![m.rows(), m.cols()]);
            reply.set("fitting", chain);
        }
        Command::JacobianIdeal { .. } => {
            let comps = s.components()?;
            reply.provenance(&comps);
            let j = jacobian_ideal(&s.algebra, &comps)?;
            reply.set("big_height", comps.big_height());
            reply.set("minor_size", comps.big_height());
            reply.set("ideal", report::ideal(&j));
            if s.algebra.defining_ideal().contains_ideal(&j)? {
                reply.caveat(JACOBIAN_ZERO_CAVEAT);
            }
        }
        Command::RankAt { prime, .. } => {
            let q = prime_witness(s, prime, &mut reply)?;
            if !q.ideal.contains_ideal(s.algebra.defining_ideal())? {
                return Err(Error::PrimeDoesNotContainIdeal);
            }
            reply.set("rank", rank_at_prime(&jacobian_matrix(&s.algebra), &q)?);
        }
        Command::RegularAt { prime, .. } => {
            let q = prime_witness(s, prime, &mut reply)?;
            let comps = s.components()?;
            reply.provenance(&comps);
            let regular = regular_at(&s.algebra, &q, &comps)?;
            reply.set("regular", regular);
            reply.set("rank", rank_at_prime(&jacobian_matrix(&s.algebra), &q)?);
            reply.set("local_height", comps.height_at(&q.ideal)?);
            for c in smoothness_caveats(&s.ring) {
                reply.caveat(c);
            }
        }
        Command::SingLocus { .. } => {
            let comps = s.components()?;
            reply.provenance(&comps);
            reply.set("equiheight", is_equiheight(&s.algebra, &comps)?);
            reply.set("ideal", report::ideal(&singular_locus(&s.algebra, &comps)?));
            for c in smoothness_caveats(&s.ring) {
                reply.caveat(c);
            }
        }
        Command::FrobPower { ideal, q, e, .. } => {
            let i = s.ideal_or_defining(ideal)?;
            let p = s.ring.characteristic();
            if p == 0 {
                return Err(Error::CharacteristicZero);
            }
            let q = match (q, e) {
                (Some(q), None) => *q,
                (None, Some(e)) => p
                    .checked_pow(*e)
                    .ok_or_else(|| Error::InvalidArgument(format!("{p}^{e} overflows 32 bits")))?,
                (None, None) => return Err(Error::InvalidArgument("missing --q or --e".into())),
                (Some(_), Some(_)) => return Err(Error::InvalidArgument("give only one of --q and --e".into())),
            };
            reply.arg("ideal", ideal.clone());
            reply.arg("q", q);
            let bracket = frobenius_power(&i, q)?;
            reply.set("q", q);
            reply.set("ideal", report::ideal(&bracket));
            reply.set("in_ring", report::ideal(&s.algebra.lift(&bracket)?));
        }
        Command::TcCertify { u, ideal, c, e_max, .. } => {
            let (ut, it, ct) = (required(u, "--u")?, required(ideal, "--ideal")?, required(c, "--c")?);
            reply.arg("u", ut);
            reply.arg("ideal", it);
            reply.arg("c", ct);
            reply.arg("e_max", *e_max);
            let ctx = char_p_context(s, *e_max)?;
            let (uu, ii, cc) = (s.scope.parse_poly(ut)?, s.scope.parse_ideal(it)?, s.scope.parse_poly(ct)?);
            let comps = s.components_if_available()?;
            if let Some(c) = &comps {
                reply.provenance(c);
                if s.jacobian_is_zero(c)? {
                    reply.caveat(JACOBIAN_ZERO_CAVEAT);
                }
            }
            let v = tc_certify_in(&uu, &ii, &cc, &s.algebra, &ctx, comps.as_ref())?;
            reply.set("verdict", report::verdict(&v));
            reply.caveat(SEMI_DECISION_CAVEAT);
        }
        Command::TcRefute { u, ideal, .. } => {
            let (ut, it) = (required(u, "--u")?, required(ideal, "--ideal")?);
            reply.arg("u", ut);
            reply.arg("ideal", it);
            if s.ring.characteristic() == 0 {
                return Err(Error::CharacteristicZero);
            }
            let comps = s.components()?;
            reply.provenance(&comps);
            let v = tc_refute_in(&s.scope.parse_poly(ut)?, &s.scope.parse_ideal(it)?, &s.algebra, &comps)?;
            if s.file.flags.assume_reduced {
                reply.caveat("reducedness asserted by ring-file flag");
            }
            reply.set("verdict", report::verdict(&v));
        }
        Command::FrobClosure { u, ideal, e_max, .. } => {
            let (ut, it) = (required(u, "--u")?, required(ideal, "--ideal")?);
            reply.arg("u", ut);
            reply.arg("ideal", it);
            reply.arg("e_max", *e_max);
            let ctx = char_p_context(s, *e_max)?;
            let v = frobenius_closure_member(&s.scope.parse_poly(ut)?, &s.scope.parse_ideal(it)?, &s.algebra, &ctx)?;
            reply.set("verdict", report::verdict(&v));
            reply.caveat(SEMI_DECISION_CAVEAT);
        }
        Command::Harness { ideal, candidates, e_max, .. } => {
            let (it, ct) = (required(ideal, "--ideal")?, required(candidates, "--candidates")?);
            reply.arg("ideal", it);
            reply.arg("candidates", ct);
            reply.arg("e_max", *e_max);
            let ctx = char_p_context(s, *e_max)?;
            let comps = s.components()?;
            reply.provenance(&comps);
            let cands = s.scope.parse_poly_list(ct)?;
            let h = test_multiplier_harness(&s.algebra, &s.scope.parse_ideal(it)?, &cands, &ctx, &comps)?;
            if h.status == HarnessStatus::Violation {
                reply.exit_code = 3;
            }
            reply.set("harness", report::harness(&h));
            reply.caveat(SEMI_DECISION_CAVEAT);
        }
        Command::KrullCheck { delta, u, ideal, m, n_max, .. } => {
            let (dt, ut, it) = (required(delta, "--delta")?, required(u, "--u")?, required(ideal, "--ideal")?);
            reply.arg("delta", dt);
            reply.arg("u", ut);
            reply.arg("ideal", it);
            reply.arg("m", m.clone());
            reply.arg("n_max", *n_max);
            let mm = s.maximal_or(m)?;
            let k = krull_truncation_check(
                &s.scope.parse_poly(dt)?,
                &s.scope.parse_poly(ut)?,
                &s.scope.parse_ideal(it)?,
                &mm,
                &s.algebra,
                *n_max,
            )?;
            reply.set("krull", report::krull(&k));
            reply.caveat(format!("finitely many N checked (N <= {n_max})"));
        }
        Command::Truncate { degree, m, .. } => {
            let n = degree.ok_or_else(|| Error::InvalidArgument("missing --degree".into()))?;
            reply.arg("degree", n);
            reply.arg("m", m.clone());
            let t = truncate_presentation(&s.algebra, n, &s.maximal_or(m)?)?;
            if !t.residuals_ok {
                reply.exit_code = 3;
            }
            reply.set("truncation", report::truncation(&t));
        }
        Command::Sweep { .. } => unreachable!("sweep is dispatched separately"),
    }
    Ok(reply)
}

fn fitting_json(m: &PolyMatrix, i: usize, s: &Session) -> Result<Value> {
    let f = tightlab_core::fitting_ideal(m, i, s.algebra.defining_ideal())?;
    let size = m.cols().saturating_sub(i);
    Ok(json!({ "index": i, "minor_size": size, "ideal": report::ideal(&f.ideal) }))
}

/// JSON document for a ring-based command.
pub fn run_json(cmd: &Command) -> (Value, i32) {
    let common = cmd.common().expect("ring-based command");
    let mut doc = Map::new();
    doc.insert("schema".into(), report::SCHEMA.into());
    doc.insert("command".into(), cmd.name().into());
    let session = Session::load(common);
    if let Ok(s) = &session {
        doc.insert("ring".into(), s.ring_echo());
    }
    let outcome = session.and_then(|s| execute(cmd, &s));
    let code = match outcome {
        Ok(reply) => {
            doc.insert("args".into(), Value::Object(reply.args));
            doc.insert("result".into(), Value::Object(reply.result));
            doc.insert("caveats".into(), reply.caveats.into());
            reply.exit_code
        }
        Err(e) => {
            doc.insert("error".into(), report::error(&e));
            exit_code(&e)
        }
    };
    (Value::Object(doc), code)
}

pub fn run(cli: &Cli) -> Outcome {
    if let Command::Sweep { rings, primes, e_max, no_timing, jobs, out } = &cli.command {
        let (output, exit_code) = match sweep::run_files(rings, primes, *e_max, !*no_timing, *jobs) {
            Ok(rows) => (sweep::to_csv(&rows), 0),
            Err(e) => (format!("error[{}]: {e}\n", e.code()), exit_code(&e)),
        };
        return Outcome { output, exit_code, out_path: out.clone() };
    }
    let common = cli.command.common().expect("ring-based command");
    let (doc, exit_code) = run_json(&cli.command);
    let output = if common.json {
        let mut s = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
        s.push('\n');
        s
    } else {
        match doc.get("error") {
            Some(e) => format!("error[{}]: {}\n", e["code"].as_str().unwrap_or(""), e["message"].as_str().unwrap_or("")),
            None => {
                let mut v = doc.clone();
                if let Some(map) = v.as_object_mut() {
                    map.remove("schema");
                    map.remove("ring");
                    map.remove("args");
                }
                report::to_text(&v)
            }
        }
    };
    Outcome { output, exit_code, out_path: common.out.clone() }
}
