//! Elimination-based ideal operations: intersection, colon, saturation,
//! radical membership, powers.

use std::sync::Arc;

use crate::arith::{Monomial, MonomialOrder, Polynomial, Ring};
use crate::error::{Error, Result};
use crate::groebner::{compute_groebner, Ideal};

const AUX_T: &str = "@t";
const AUX_W: &str = "@w";

/// `I ∩ K[remaining variables]`, via a block order with `drop_vars` first.
pub fn eliminate(ideal: &Ideal, drop_vars: &[usize]) -> Result<Ideal> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if let Some(bad) = drop_vars.iter().find(|&&v| v >= n) {
        return Err(Error::InvalidArgument(format!("variable index {bad} out of range")));
    }
    if drop_vars.is_empty() {
        return Ok(ideal.clone());
    }
    let mask: u32 = drop_vars.iter().fold(0, |m, &v| m | (1 << v));
    let order = MonomialOrder::elimination(drop_vars, n);
    let gb = ideal.groebner_in(&order)?;
    let kept: Vec<Polynomial> = gb
        .generators()
        .iter()
        .filter(|g| g.support_mask() & mask == 0)
        .cloned()
        .collect();
    Ideal::new(ring, kept)
}

/// Adds one auxiliary variable placed first in an elimination order.
fn aux_ring(ring: &Arc<Ring>, name: &str) -> Result<Arc<Ring>> {
    let n = ring.nvars();
    ring.extend(&[name], MonomialOrder::elimination(&[n], n + 1))
}

/// Generators of the elimination ideal of `gens` (in an [`aux_ring`]) with
/// the auxiliary variable removed, projected back to `base`.
fn eliminate_aux(base: &Arc<Ring>, ext: &Arc<Ring>, gens: &[Polynomial]) -> Result<Ideal> {
    let gb = compute_groebner(ext, gens)?;
    let aux_mask = 1u32 << base.nvars();
    let mut kept = Vec::new();
    for g in gb.generators() {
        if g.support_mask() & aux_mask == 0 {
            kept.push(g.project(base)?);
        }
    }
    Ideal::new(base, kept)
}

/// `I ∩ J` as the `t`-free part of `t·I + (1 − t)·J`.
pub fn intersect(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    let ring = a.ring();
    if !ring.same_ambient(b.ring()) {
        return Err(Error::RingMismatch);
    }
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let ext = aux_ring(ring, AUX_T)?;
    let t = Polynomial::var(&ext, ring.nvars());
    let one_minus_t = &Polynomial::one(&ext) - &t;
    let mut gens = Vec::new();
    for f in a.nonzero_generators() {
        gens.push(&t * &f.embed(&ext)?);
    }
    for g in b.nonzero_generators() {
        gens.push(&one_minus_t * &g.embed(&ext)?);
    }
    eliminate_aux(ring, &ext, &gens)
}

/// Exact quotient `h / g`; fails if `g` does not divide `h`.
pub fn exact_divide(h: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let field = h.field();
    let (gm, gc) = g.lt().unwrap().clone();
    let ginv = field.inv(&gc)?;
    let mut rest = h.clone();
    let mut quotient = Vec::new();
    while let Some((m, c)) = rest.lt().cloned() {
        if !gm.divides(&m) {
            return Err(Error::InvalidArgument(format!("`{g}` does not divide `{h}`")));
        }
        let qm = gm.quotient(&m);
        let qc = field.mul(&c, &ginv);
        rest = rest.add_scaled(&field.neg(&qc), &qm, g);
        quotient.push((qm, qc));
    }
    Ok(Polynomial::from_terms(h.ring(), quotient))
}

/// `I : (g) = (I ∩ (g)) / g`.
fn quotient_principal(a: &Ideal, g: &Polynomial) -> Result<Ideal> {
    let ring = a.ring();
    if g.is_zero() {
        return Ok(Ideal::unit(ring));
    }
    let cap = intersect(a, &Ideal::new(ring, vec![g.clone()])?)?;
    let mut gens = Vec::new();
    for h in cap.nonzero_generators() {
        gens.push(exact_divide(&h, g)?);
    }
    Ideal::new(ring, gens)
}

/// `I : J = {f : f·J ⊆ I}`, the intersection of the per-generator colons.
pub fn quotient(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    let ring = a.ring();
    if !ring.same_ambient(b.ring()) {
        return Err(Error::RingMismatch);
    }
    let mut acc: Option<Ideal> = None;
    for g in b.nonzero_generators() {
        let q = quotient_principal(a, &g.rehome(ring)?)?;
        acc = Some(match acc {
            None => q,
            Some(prev) => intersect(&prev, &q)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Ideal::unit(ring)))
}

/// `I : f^∞`, eliminating `w` from `I + (1 − w f)`.
pub fn saturate(a: &Ideal, f: &Polynomial) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ring = a.ring();
    let ext = aux_ring(ring, AUX_W)?;
    let mut gens = Vec::new();
    for g in a.nonzero_generators() {
        gens.push(g.embed(&ext)?);
    }
    gens.push(rabinowitsch(&ext, ring.nvars(), &f.rehome(ring)?.embed(&ext)?));
    eliminate_aux(ring, &ext, &gens)
}

fn rabinowitsch(ext: &Arc<Ring>, w_index: usize, f: &Polynomial) -> Polynomial {
    let w = Polynomial::var(ext, w_index);
    &Polynomial::one(ext) - &(&w * f)
}

/// `f ∈ √I` iff `1 ∈ I + (1 − w f)`.
pub fn radical_member(f: &Polynomial, a: &Ideal) -> Result<bool> {
    let ring = a.ring();
    let f = f.rehome(ring)?;
    if f.is_zero() {
        return Ok(true);
    }
    let n = ring.nvars();
    let ext = ring.extend(&[AUX_W], MonomialOrder::grevlex())?;
    let mut gens = Vec::new();
    for g in a.nonzero_generators() {
        gens.push(g.embed(&ext)?);
    }
    gens.push(rabinowitsch(&ext, n, &f.embed(&ext)?));
    Ok(compute_groebner(&ext, &gens)?.is_unit())
}

/// `I^k`, generated by all `k`-fold products of generators.
pub fn ideal_power(a: &Ideal, k: u32) -> Result<Ideal> {
    if k == 0 {
        return Err(Error::InvalidArgument("ideal power must be at least 1".into()));
    }
    let ring = a.ring();
    let gens = a.nonzero_generators();
    if gens.is_empty() {
        return Ok(Ideal::zero(ring));
    }
    // multisets of size k over the generators, as nondecreasing index tuples
    let mut out: Vec<Polynomial> = Vec::new();
    let mut idx = vec![0usize; k as usize];
    loop {
        let mut prod = Polynomial::one(ring);
        for &i in &idx {
            prod = prod.try_mul(&gens[i])?;
        }
        if !out.contains(&prod) {
            out.push(prod);
        }
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return Ideal::new(ring, out);
            }
            pos -= 1;
            if idx[pos] + 1 < gens.len() {
                let v = idx[pos] + 1;
                for slot in idx[pos..].iter_mut() {
                    *slot = v;
                }
                break;
            }
        }
    }
}

/// `m^k` for `m` generated by variables: all monomials of degree `k` in them.
pub fn variable_ideal_power(ring: &Arc<Ring>, vars: &[usize], k: u32) -> Ideal {
    let mut out = Vec::new();
    let mut exps = vec![0u32; vars.len()];
    fn rec(ring: &Arc<Ring>, vars: &[usize], exps: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Polynomial>) {
        if pos + 1 == vars.len() {
            exps[pos] = left;
            let mut m = Monomial::ONE;
            for (v, e) in vars.iter().zip(exps.iter()) {
                m.set_exp(*v, *e);
            }
            out.push(Polynomial::term(ring, m, ring.field().one()));
            return;
        }
        for e in (0..=left).rev() {
            exps[pos] = e;
            rec(ring, vars, exps, pos + 1, left - e, out);
        }
    }
    if vars.is_empty() {
        return Ideal::zero(ring);
    }
    rec(ring, vars, &mut exps, 0, k, &mut out);
    Ideal::new(ring, out).unwrap()
}

/// `I + J`.
pub fn ideal_sum(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.sum(b)
}

/// `I · J`.
pub fn ideal_product(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.product(b)
}
