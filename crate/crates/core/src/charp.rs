//! Characteristic-`p` experiments: bracket powers, bounded tight-closure
//! certificates, refutation by Jacobian multipliers, Frobenius closure, and
//! the Krull-intersection truncation check.
//!
//! Every verdict states the Frobenius exponents it actually examined. A
//! certificate covers `q = p^e` for `e ≤ bound_e` only.

use std::fmt;
use std::sync::Arc;

use crate::arith::{masked_degree, Field, Polynomial, Ring};
use crate::differentials::jacobian_ideal;
use crate::dimension::{is_equiheight, ComponentData, PresentedAlgebra};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::ideal_ops::{ideal_power, variable_ideal_power};

pub const DEFAULT_E_MAX: u32 = 3;

/// Largest total degree a single Frobenius check may produce.
pub const DEFAULT_DEGREE_BUDGET: u64 = 8192;

/// Prime, exponent bound and degree budget for a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharPContext {
    p: u32,
    e_max: u32,
    degree_budget: u64,
}

impl CharPContext {
    pub fn new(p: u32, e_max: u32) -> Result<Self> {
        Field::prime(p as u64)?;
        p.checked_pow(e_max).ok_or(Error::ExponentOverflow)?;
        Ok(CharPContext { p, e_max, degree_budget: DEFAULT_DEGREE_BUDGET })
    }

    /// Context matching the characteristic of `ring`.
    pub fn for_ring(ring: &Ring, e_max: u32) -> Result<Self> {
        match ring.characteristic() {
            0 => Err(Error::CharacteristicZero),
            p => CharPContext::new(p, e_max),
        }
    }

    pub fn with_degree_budget(mut self, budget: u64) -> Self {
        self.degree_budget = budget;
        self
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e_max(&self) -> u32 {
        self.e_max
    }

    pub fn degree_budget(&self) -> u64 {
        self.degree_budget
    }

    /// `p^e`, or `None` past the exponent word.
    pub fn q(&self, e: u32) -> Option<u32> {
        self.p.checked_pow(e)
    }

    fn check_ring(&self, ring: &Ring) -> Result<()> {
        match ring.characteristic() {
            0 => Err(Error::CharacteristicZero),
            p if p != self.p => Err(Error::InvalidArgument(format!(
                "context prime {} differs from ring characteristic {p}",
                self.p
            ))),
            _ => Ok(()),
        }
    }
}

/// `I^[q]`: the ideal generated by `q`-th powers of the given generators.
pub fn frobenius_power(ideal: &Ideal, q: u32) -> Result<Ideal> {
    let ring = ideal.ring();
    if ring.characteristic() == 0 {
        return Err(Error::CharacteristicZero);
    }
    let gens = ideal.generators().iter().map(|g| g.frobenius(q)).collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TcStatus {
    CertifiedIn,
    RefutedOut,
    Undetermined,
}

impl TcStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            TcStatus::CertifiedIn => "CertifiedIn",
            TcStatus::RefutedOut => "RefutedOut",
            TcStatus::Undetermined => "Undetermined",
        }
    }
}

impl fmt::Display for TcStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One examined membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    pub e: u32,
    pub q: u64,
    /// The element whose membership was tested, in display form.
    pub witness: String,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct TcVerdict {
    pub status: TcStatus,
    pub bound_e: u32,
    pub evidence: Vec<Evidence>,
    pub notes: Vec<String>,
}

impl TcVerdict {
    fn new(status: TcStatus, bound_e: u32) -> Self {
        TcVerdict { status, bound_e, evidence: Vec::new(), notes: Vec::new() }
    }

    /// The δ of a refutation.
    pub fn multiplier(&self) -> Option<&str> {
        match self.status {
            TcStatus::RefutedOut => self.evidence.iter().find(|e| !e.holds).map(|e| e.witness.as_str()),
            _ => None,
        }
    }

    pub fn summary(&self) -> String {
        match self.status {
            TcStatus::CertifiedIn => format!("certified to bound e_max = {}", self.bound_e),
            TcStatus::RefutedOut => {
                format!("refuted by Jacobian multiplier {}", self.multiplier().unwrap_or("?"))
            }
            TcStatus::Undetermined => format!("undetermined at bound e_max = {}", self.bound_e),
        }
    }
}

fn degree(f: &Polynomial) -> u64 {
    f.total_degree().unwrap_or(0)
}

/// Projected total degree of the `q`-th stage, `None` on overflow.
fn stage_degree(q: u32, deg_c: u64, deg_u: u64, ideal_deg: u64) -> Option<u64> {
    let q = q as u64;
    let a = deg_u.checked_mul(q)?.checked_add(deg_c)?;
    let b = ideal_deg.checked_mul(q)?;
    Some(a.max(b))
}

fn max_generator_degree(i: &Ideal) -> u64 {
    i.generators().iter().map(degree).max().unwrap_or(0)
}

/// `I^[q] + I_def` together with a plain-text record of skipped stages.
enum Stage {
    Ready { q: u32, ideal: Ideal },
    Skipped(String),
}

fn stage(ctx: &CharPContext, r: &PresentedAlgebra, i: &Ideal, e: u32, deg_c: u64, deg_u: u64) -> Result<Stage> {
    let Some(q) = ctx.q(e) else {
        return Ok(Stage::Skipped(format!("e = {e}: p^e exceeds the exponent word")));
    };
    match stage_degree(q, deg_c, deg_u, max_generator_degree(i)) {
        Some(d) if d <= ctx.degree_budget => {}
        _ => {
            return Ok(Stage::Skipped(format!(
                "e = {e}: degree exceeds budget {} (skipped)",
                ctx.degree_budget
            )))
        }
    }
    match frobenius_power(i, q) {
        Ok(b) => Ok(Stage::Ready { q, ideal: b.sum(r.defining_ideal())? }),
        Err(Error::ExponentOverflow) => Ok(Stage::Skipped(format!("e = {e}: exponent overflow (skipped)"))),
        Err(err) => Err(err),
    }
}

fn frobenius_term(c: Option<&Polynomial>, u: &Polynomial, q: u32) -> Result<Polynomial> {
    let uq = u.frobenius(q)?;
    match c {
        Some(c) => c.try_mul(&uq),
        None => Ok(uq),
    }
}

fn witness_text(c: Option<&Polynomial>, u: &Polynomial, q: u32) -> String {
    match c {
        Some(c) => format!("({c})*({u})^{q}"),
        None => format!("({u})^{q}"),
    }
}

/// Bounded certificate for `u ∈ I*` in `R`: checks `c·u^q ∈ I^[q] + I_def`
/// for every `q = p^e`, `e ≤ e_max`.
///
/// `c` must be nonzero in `R`; when `components` is given it must also avoid
/// every minimal prime.
pub fn tc_certify_in(
    u: &Polynomial,
    i: &Ideal,
    c: &Polynomial,
    r: &PresentedAlgebra,
    ctx: &CharPContext,
    components: Option<&ComponentData>,
) -> Result<TcVerdict> {
    ctx.check_ring(r.ring())?;
    r.ensure_proper()?;
    let ring = r.ring();
    let (u, i, c) = (u.rehome(ring)?, i.rehome(ring)?, c.rehome(ring)?);
    if r.defining_ideal().contains(&c)? {
        return Err(Error::MultiplierNotInRingCirc(format!("{c} is zero in R")));
    }
    let mut verdict = TcVerdict::new(TcStatus::CertifiedIn, ctx.e_max);
    match components {
        Some(comps) => {
            if !comps.avoids_all(&c)? {
                return Err(Error::MultiplierNotInRingCirc(format!("{c} lies in a minimal prime")));
            }
            verdict.notes.push(format!("c avoids every minimal prime ({})", comps.provenance().as_str()));
        }
        None => {
            let reduced = if r.flags().assume_reduced { "reduced flag set" } else { "reduced flag not set" };
            verdict.notes.push(format!("c checked nonzero in R only; {reduced}"));
        }
    }
    let (deg_c, deg_u) = (degree(&c), degree(&u));
    for e in 0..=ctx.e_max {
        match stage(ctx, r, &i, e, deg_c, deg_u)? {
            Stage::Skipped(why) => {
                verdict.status = TcStatus::Undetermined;
                verdict.notes.push(why);
            }
            Stage::Ready { q, ideal } => {
                let holds = ideal.contains(&frobenius_term(Some(&c), &u, q)?)?;
                verdict.evidence.push(Evidence { e, q: q as u64, witness: witness_text(Some(&c), &u, q), holds });
                if !holds {
                    verdict.status = TcStatus::Undetermined;
                    verdict.notes.push(format!("membership fails at e = {e}; a single multiplier failing is not a refutation"));
                    break;
                }
            }
        }
    }
    verdict.notes.push(verdict.summary());
    Ok(verdict)
}

/// Nonzero reduced-basis elements of `𝒥(R/K)` outside `I_def`.
fn jacobian_multipliers(r: &PresentedAlgebra, components: &ComponentData) -> Result<Vec<Polynomial>> {
    let j = jacobian_ideal(r, components)?;
    let mut out = Vec::new();
    for g in j.groebner().generators() {
        if !r.defining_ideal().contains(g)? {
            out.push(g.clone());
        }
    }
    Ok(out)
}

/// Why the Jacobian test-element hypotheses fail, if they do.
fn hypothesis_gap(r: &PresentedAlgebra, components: &ComponentData) -> Result<Option<String>> {
    if !is_equiheight(r, components)? {
        return Ok(Some("hypotheses not established: minimal primes have different heights".into()));
    }
    if !r.flags().assume_reduced {
        return Ok(Some("hypotheses not established: reduced flag not set".into()));
    }
    Ok(None)
}

/// Refutes `u ∈ I*` by exhibiting `δ ∈ 𝒥(R/K)` with `δu ∉ I`. Requires an
/// equiheight defining ideal and the reduced flag; otherwise the verdict is
/// `Undetermined` with the reason.
pub fn tc_refute_in(
    u: &Polynomial,
    i: &Ideal,
    r: &PresentedAlgebra,
    components: &ComponentData,
) -> Result<TcVerdict> {
    if r.characteristic() == 0 {
        return Err(Error::CharacteristicZero);
    }
    r.ensure_proper()?;
    let mut verdict = TcVerdict::new(TcStatus::Undetermined, 0);
    if let Some(gap) = hypothesis_gap(r, components)? {
        verdict.notes.push(gap);
        return Ok(verdict);
    }
    verdict.notes.push("equiheight verified; reduced asserted by flag".into());
    let deltas = jacobian_multipliers(r, components)?;
    if deltas.is_empty() {
        verdict.notes.push("Jacobian ideal is zero in R; no multipliers available".into());
        return Ok(verdict);
    }
    let ring = r.ring();
    let u = u.rehome(ring)?;
    let target = r.lift(i)?;
    for d in deltas {
        let holds = target.contains(&d.try_mul(&u)?)?;
        verdict.evidence.push(Evidence { e: 0, q: 1, witness: d.to_string(), holds });
        if !holds {
            verdict.status = TcStatus::RefutedOut;
            break;
        }
    }
    if verdict.status == TcStatus::Undetermined {
        verdict.notes.push("every Jacobian multiplier sends u into I".into());
    }
    verdict.notes.push(verdict.summary());
    Ok(verdict)
}

/// `u ∈ I^F`: some `e ≤ e_max` with `u^q ∈ I^[q] + I_def`.
pub fn frobenius_closure_member(
    u: &Polynomial,
    i: &Ideal,
    r: &PresentedAlgebra,
    ctx: &CharPContext,
) -> Result<TcVerdict> {
    ctx.check_ring(r.ring())?;
    r.ensure_proper()?;
    let ring = r.ring();
    let (u, i) = (u.rehome(ring)?, i.rehome(ring)?);
    let mut verdict = TcVerdict::new(TcStatus::Undetermined, ctx.e_max);
    let deg_u = degree(&u);
    for e in 0..=ctx.e_max {
        match stage(ctx, r, &i, e, 0, deg_u)? {
            Stage::Skipped(why) => verdict.notes.push(why),
            Stage::Ready { q, ideal } => {
                let holds = ideal.contains(&frobenius_term(None, &u, q)?)?;
                verdict.evidence.push(Evidence { e, q: q as u64, witness: witness_text(None, &u, q), holds });
                if holds {
                    verdict.status = TcStatus::CertifiedIn;
                    verdict.notes.push(format!("u^q lies in I^[q] at e = {e}"));
                    return Ok(verdict);
                }
            }
        }
    }
    verdict.notes.push(verdict.summary());
    Ok(verdict)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HarnessStatus {
    Pass,
    Violation,
    Refused,
}

impl HarnessStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            HarnessStatus::Pass => "Pass",
            HarnessStatus::Violation => "Violation",
            HarnessStatus::Refused => "Refused",
        }
    }
}

#[derive(Clone, Debug)]
pub struct HarnessRow {
    pub candidate: String,
    /// The multiplier `c` that produced a certificate, if any.
    pub certified_by: Option<String>,
    pub verdict: TcStatus,
    /// `(δ, δ·u ∈ I)` for each Jacobian multiplier, filled for certified rows.
    pub products: Vec<(String, bool)>,
}

#[derive(Clone, Debug)]
pub struct HarnessReport {
    pub status: HarnessStatus,
    pub rows: Vec<HarnessRow>,
    pub notes: Vec<String>,
}

impl HarnessReport {
    pub fn violations(&self) -> impl Iterator<Item = (&HarnessRow, &str)> {
        self.rows
            .iter()
            .flat_map(|r| r.products.iter().filter(|(_, ok)| !ok).map(move |(d, _)| (r, d.as_str())))
    }
}

/// For every candidate certified in `I*` by some Jacobian multiplier, checks
/// that every Jacobian multiplier sends it into `I`. A violation means an
/// implementation fault.
pub fn test_multiplier_harness(
    r: &PresentedAlgebra,
    i: &Ideal,
    candidates: &[Polynomial],
    ctx: &CharPContext,
    components: &ComponentData,
) -> Result<HarnessReport> {
    let mut report = HarnessReport { status: HarnessStatus::Pass, rows: Vec::new(), notes: Vec::new() };
    if let Some(gap) = hypothesis_gap(r, components)? {
        report.status = HarnessStatus::Refused;
        report.notes.push(gap);
        return Ok(report);
    }
    ctx.check_ring(r.ring())?;
    r.ensure_proper()?;
    let deltas = jacobian_multipliers(r, components)?;
    let mut admissible = Vec::new();
    for d in &deltas {
        if components.avoids_all(d)? {
            admissible.push(d.clone());
        }
    }
    if admissible.is_empty() {
        report.notes.push("no Jacobian multiplier avoids every minimal prime; nothing certified".into());
    }
    let target = r.lift(i)?;
    for u in candidates {
        let u = u.rehome(r.ring())?;
        let mut row = HarnessRow {
            candidate: u.to_string(),
            certified_by: None,
            verdict: TcStatus::Undetermined,
            products: Vec::new(),
        };
        for c in &admissible {
            let v = tc_certify_in(&u, i, c, r, ctx, Some(components))?;
            if v.status == TcStatus::CertifiedIn {
                row.certified_by = Some(c.to_string());
                row.verdict = TcStatus::CertifiedIn;
                break;
            }
        }
        if row.verdict == TcStatus::CertifiedIn {
            for d in &deltas {
                let ok = target.contains(&d.try_mul(&u)?)?;
                if !ok {
                    report.status = HarnessStatus::Violation;
                }
                row.products.push((d.to_string(), ok));
            }
        }
        report.rows.push(row);
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct KrullReport {
    /// `(N, δu ∈ I + m^N + I_def)` for `N = 1..=n_max`.
    pub rows: Vec<(u32, bool)>,
    pub monotone: bool,
    pub held_through: bool,
}

impl KrullReport {
    pub fn final_line(&self) -> String {
        let n = self.rows.len();
        if self.held_through {
            format!("delta*u lies in I + m^N for every N <= {n}")
        } else {
            let first = self.rows.iter().find(|(_, ok)| !ok).map(|(k, _)| *k).unwrap_or(0);
            format!("delta*u leaves I + m^N at N = {first} (checked through {n})")
        }
    }
}

fn power_of(m: &Ideal, k: u32) -> Result<Ideal> {
    let ring = m.ring();
    let gens = m.nonzero_generators();
    let vars: Option<Vec<usize>> = gens
        .iter()
        .map(|g| {
            if g.is_monomial() && g.total_degree() == Some(1) {
                let mask = g.support_mask();
                Some(mask.trailing_zeros() as usize)
            } else {
                None
            }
        })
        .collect();
    match vars {
        Some(v) => Ok(variable_ideal_power(ring, &v, k)),
        None => ideal_power(m, k),
    }
}

/// Membership of `δu` in `I + m^N + I_def` for `N = 1..=n_max`.
pub fn krull_truncation_check(
    delta: &Polynomial,
    u: &Polynomial,
    i: &Ideal,
    m: &Ideal,
    r: &PresentedAlgebra,
    n_max: u32,
) -> Result<KrullReport> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let ring = r.ring();
    let du = delta.rehome(ring)?.try_mul(&u.rehome(ring)?)?;
    let base = r.lift(i)?;
    let m = m.rehome(ring)?;
    let mut rows = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let ideal = base.sum(&power_of(&m, n)?)?;
        rows.push((n, ideal.contains(&du)?));
    }
    let monotone = rows.windows(2).all(|w| w[0].1 || !w[1].1);
    let held_through = rows.iter().all(|(_, ok)| *ok);
    Ok(KrullReport { rows, monotone, held_through })
}

#[derive(Clone, Debug)]
pub struct TruncationReport {
    pub algebra: PresentedAlgebra,
    /// `(f, f^{≤N}, f − f^{≤N} ∈ m^{N+1})` per relation.
    pub rows: Vec<(String, String, bool)>,
    pub residuals_ok: bool,
}

/// Replaces each relation by its part of degree `≤ n` in the variables
/// generating `m`, and checks the dropped tail lies in `m^{n+1}`.
pub fn truncate_presentation(r: &PresentedAlgebra, n: u32, m: &Ideal) -> Result<TruncationReport> {
    let ring: &Arc<Ring> = r.ring();
    let m = m.rehome(ring)?;
    let mut mask = 0u32;
    for g in m.nonzero_generators() {
        if !(g.is_monomial() && g.total_degree() == Some(1)) {
            return Err(Error::InvalidArgument(format!("m must be generated by variables; found {g}")));
        }
        mask |= g.support_mask();
    }
    let tail_ideal = power_of(&m, n + 1)?;
    let mut rows = Vec::new();
    let mut truncated = Vec::new();
    let mut ok_all = true;
    for f in r.relations() {
        let t = f.truncate_degree(mask, n as u64);
        let tail = f.try_sub(&t)?;
        debug_assert!(tail.terms().iter().all(|(mono, _)| masked_degree(mono, mask) > n as u64));
        let ok = tail_ideal.contains(&tail)?;
        ok_all &= ok;
        rows.push((f.to_string(), t.to_string(), ok));
        truncated.push(t);
    }
    let algebra = PresentedAlgebra::new(ring, truncated, r.flags())?;
    Ok(TruncationReport { algebra, rows, residuals_ok: ok_all })
}
