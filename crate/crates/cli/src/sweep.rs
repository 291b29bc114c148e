//! Runs the queries of ring files across primes, one CSV row per
//! `(instance, p, query)`.

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use tightlab_core::{
    frobenius_closure_member, tc_certify_in, tc_refute_in, test_multiplier_harness, CharPContext, ComponentData,
    Error, Result, TcVerdict,
};

use crate::commands::{Session, JACOBIAN_ZERO_CAVEAT};
use crate::ringfile::{Characteristic, Query, QueryKind, RingFile};

pub const HEADER: [&str; 8] = ["instance", "p", "query", "status", "bound_e", "wall_ms", "caveat", "error"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub instance: String,
    pub p: u32,
    pub query: String,
    pub status: String,
    pub bound_e: Option<u32>,
    pub wall_ms: Option<u128>,
    pub caveat: String,
    pub error: String,
}

/// A named ring file; the name labels its rows.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub file: RingFile,
}

/// Instances with a fixed characteristic only run at that prime.
fn runs_at(file: &RingFile, p: u32) -> bool {
    match file.characteristic {
        Characteristic::Param => true,
        Characteristic::Prime(q) => q == p,
        Characteristic::Zero => false,
    }
}

pub fn run(instances: &[Instance], primes: &[u32], e_max: u32, timing: bool, jobs: Option<usize>) -> Result<Vec<Row>> {
    let tasks: Vec<(&Instance, u32)> = instances
        .iter()
        .flat_map(|inst| primes.iter().filter(|&&p| runs_at(&inst.file, p)).map(move |&p| (inst, p)))
        .collect();
    let work = || -> Vec<Row> {
        tasks.par_iter().map(|(inst, p)| run_instance(inst, *p, e_max, timing)).collect::<Vec<_>>().concat()
    };
    match jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
            Ok(pool.install(work))
        }
        None => Ok(work()),
    }
}

pub fn run_files(paths: &[PathBuf], primes: &[u32], e_max: u32, timing: bool, jobs: Option<usize>) -> Result<Vec<Row>> {
    let mut instances = Vec::new();
    for path in paths {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        instances.push(Instance { name, file: RingFile::parse(&text)? });
    }
    run(&instances, primes, e_max, timing, jobs)
}

fn error_rows(inst: &Instance, p: u32, e: &Error) -> Vec<Row> {
    inst.file
        .queries
        .iter()
        .map(|q| Row {
            instance: inst.name.clone(),
            p,
            query: q.name.clone(),
            status: String::new(),
            bound_e: None,
            wall_ms: None,
            caveat: String::new(),
            error: format!("{}: {e}", e.code()),
        })
        .collect()
}

fn run_instance(inst: &Instance, p: u32, e_max: u32, timing: bool) -> Vec<Row> {
    let prepared = inst
        .file
        .instantiate(p)
        .and_then(|f| Session::new(f, None, None))
        .and_then(|s| {
            let comps = s.components_if_available()?;
            let degenerate = match &comps {
                Some(c) => s.jacobian_is_zero(c)?,
                None => false,
            };
            let ctx = CharPContext::new(p, e_max)?;
            Ok((s, comps, degenerate, ctx))
        });
    let (session, comps, degenerate, ctx) = match prepared {
        Ok(x) => x,
        Err(e) => return error_rows(inst, p, &e),
    };
    inst.file
        .queries
        .iter()
        .map(|q| {
            let start = Instant::now();
            let result = run_query(q, &session, comps.as_ref(), &ctx);
            let wall_ms = timing.then(|| start.elapsed().as_millis());
            let mut row = Row {
                instance: inst.name.clone(),
                p,
                query: q.name.clone(),
                status: String::new(),
                bound_e: None,
                wall_ms,
                caveat: String::new(),
                error: String::new(),
            };
            let mut caveats = Vec::new();
            match result {
                Ok(out) => {
                    row.status = out.status;
                    row.bound_e = Some(out.bound_e);
                    caveats = out.caveats;
                }
                Err(e) => row.error = format!("{}: {e}", e.code()),
            }
            if degenerate && !caveats.iter().any(|c| c.starts_with(JACOBIAN_ZERO_CAVEAT)) {
                caveats.insert(0, JACOBIAN_ZERO_CAVEAT.to_string());
            }
            row.caveat = caveats.join("; ");
            row
        })
        .collect()
}

struct QueryOutcome {
    status: String,
    bound_e: u32,
    caveats: Vec<String>,
}

fn from_verdict(v: TcVerdict) -> QueryOutcome {
    let mut caveats = vec![v.summary()];
    if v.status == tightlab_core::TcStatus::Undetermined {
        caveats.extend(v.notes.iter().filter(|n| !n.starts_with("c avoids") && **n != v.summary()).cloned());
    }
    QueryOutcome { status: v.status.as_str().to_string(), bound_e: v.bound_e, caveats }
}

fn run_query(q: &Query, s: &Session, comps: Option<&ComponentData>, ctx: &CharPContext) -> Result<QueryOutcome> {
    let a = &s.algebra;
    let need = || comps.ok_or(Error::MissingComponents);
    match q.kind {
        QueryKind::Certify => {
            let (u, i, c) = (s.scope.poly(&q.args[0])?, s.scope.ideal(&q.args[1])?, s.scope.poly(&q.args[2])?);
            Ok(from_verdict(tc_certify_in(&u, &i, &c, a, ctx, comps)?))
        }
        QueryKind::Refute => {
            let (u, i) = (s.scope.poly(&q.args[0])?, s.scope.ideal(&q.args[1])?);
            Ok(from_verdict(tc_refute_in(&u, &i, a, need()?)?))
        }
        QueryKind::Frob => {
            let (u, i) = (s.scope.poly(&q.args[0])?, s.scope.ideal(&q.args[1])?);
            Ok(from_verdict(frobenius_closure_member(&u, &i, a, ctx)?))
        }
        QueryKind::Harness => {
            let i = s.scope.ideal(&q.args[0])?;
            let cands = q.args[1..].iter().map(|x| s.scope.poly(x)).collect::<Result<Vec<_>>>()?;
            let h = test_multiplier_harness(a, &i, &cands, ctx, need()?)?;
            let certified = h.rows.iter().filter(|r| r.certified_by.is_some()).count();
            let mut caveats = vec![format!("{certified} of {} candidates certified", h.rows.len())];
            caveats.extend(h.notes.iter().cloned());
            Ok(QueryOutcome { status: h.status.as_str().to_string(), bound_e: ctx.e_max(), caveats })
        }
    }
}

pub fn to_csv(rows: &[Row]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER).expect("in-memory write");
    for r in rows {
        w.write_record([
            r.instance.clone(),
            r.p.to_string(),
            r.query.clone(),
            r.status.clone(),
            r.bound_e.map(|b| b.to_string()).unwrap_or_default(),
            r.wall_ms.map(|t| t.to_string()).unwrap_or_default(),
            r.caveat.clone(),
            r.error.clone(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV of UTF-8 fields")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fermat() -> Instance {
        let text = "char p; vars x, y, z; ideal x^3+y^3+z^3; component x^3+y^3+z^3;\n\
                    flags reduced, equidimensional; let I = <x, y>;\n\
                    query tc = certify(z^2, I, x^2); query jr = refute(1, I);";
        Instance { name: "fermat".into(), file: RingFile::parse(text).unwrap() }
    }

    #[test]
    fn empty_prime_list_gives_header_only() {
        let rows = run(&[fermat()], &[], 2, false, None).unwrap();
        assert!(rows.is_empty());
        assert_eq!(to_csv(&rows), "instance,p,query,status,bound_e,wall_ms,caveat,error\n");
    }

    #[test]
    fn fermat_rows_in_input_order() {
        let rows = run(&[fermat()], &[13, 7], 2, false, Some(2)).unwrap();
        let keys: Vec<(u32, &str, &str)> = rows.iter().map(|r| (r.p, r.query.as_str(), r.status.as_str())).collect();
        assert_eq!(
            keys,
            vec![(13, "tc", "CertifiedIn"), (13, "jr", "RefutedOut"), (7, "tc", "CertifiedIn"), (7, "jr", "RefutedOut")]
        );
        assert!(rows.iter().all(|r| r.wall_ms.is_none() && r.error.is_empty()));
    }

    #[test]
    fn degenerate_characteristic_is_flagged() {
        let rows = run(&[fermat()], &[3], 2, false, None).unwrap();
        let jr = rows.iter().find(|r| r.query == "jr").unwrap();
        assert_eq!(jr.status, "Undetermined");
        assert!(jr.caveat.contains(JACOBIAN_ZERO_CAVEAT));
        assert!(rows.iter().all(|r| r.caveat.contains(JACOBIAN_ZERO_CAVEAT)));
    }

    #[test]
    fn bad_prime_is_a_row_error() {
        let rows = run(&[fermat()], &[4], 2, false, None).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.error.starts_with("E_NOT_PRIME")));
    }
}
