//! Division, S-polynomials, Buchberger's algorithm and ideal membership.
//!
//! Pairs are processed by the normal strategy (smallest lcm under the active
//! order first) and pruned with the Gebauer–Möller update, which subsumes
//! Buchberger's coprimality and chain criteria. The emitted basis is reduced,
//! monic and sorted by ascending leading monomial.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::One;

use crate::arith::{primitive_scale, Field, Monomial, MonomialOrder, Polynomial, Ring, Scalar};
use crate::error::{Error, Result};

/// A reduced Gröbner basis; the order is the one its ring stores terms in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// The basis of the unit ideal is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_one()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|g| g.lm().expect("nonzero basis element")).collect()
    }

    /// Remainder of `f` on division by the basis.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        normal_form(f, self)
    }

    /// Whether the (exhaustively checked) Buchberger criterion holds.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let refs: Vec<&Polynomial> = self.polys.iter().collect();
        let divs = Divisors::new(&refs);
        for i in 0..self.polys.len() {
            for j in i + 1..self.polys.len() {
                let s = spoly(&self.polys[i], &self.polys[j]);
                if !reduce_with(&s, &divs, true, false).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.polys.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Leading-monomial lookup table for a list of divisors.
struct Divisors<'a> {
    entries: Vec<(Monomial, u32, &'a Polynomial)>,
}

impl<'a> Divisors<'a> {
    fn new(polys: &[&'a Polynomial]) -> Self {
        let entries = polys
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| {
                let lm = p.lm().unwrap();
                (lm, lm.support_mask(), *p)
            })
            .collect();
        Divisors { entries }
    }

    #[inline]
    fn find(&self, m: &Monomial) -> Option<(Monomial, &'a Polynomial)> {
        let mask = m.support_mask();
        self.entries
            .iter()
            .find(|(lm, lmask, _)| lmask & !mask == 0 && lm.divides(m))
            .map(|(lm, _, p)| (*lm, *p))
    }
}

/// Division of `f` by the divisors. `full` also reduces non-leading terms.
/// With `scale_free`, the result is only determined up to a nonzero scalar
/// and rational coefficients are kept primitive along the way.
fn reduce_with(f: &Polynomial, divs: &Divisors<'_>, full: bool, scale_free: bool) -> Polynomial {
    let ring = f.ring().clone();
    let field = ring.field();
    let strip = scale_free && field == Field::Rational;
    let mut work: Vec<(Monomial, Scalar)> = f.terms().to_vec();
    let mut start = 0usize;
    let mut rem: Vec<(Monomial, Scalar)> = Vec::new();
    while start < work.len() {
        let (m, c) = &work[start];
        match divs.find(m) {
            Some((lm, g)) => {
                let glc = g.lc().unwrap();
                let factor = if field.is_one(glc) {
                    field.neg(c)
                } else {
                    field.neg(&field.div(c, glc).expect("nonzero leading coefficient"))
                };
                let shift = lm.quotient(m);
                let tail = Polynomial::from_sorted_unchecked(&ring, work.split_off(start + 1));
                // the leading terms cancel exactly; merge the tails
                let gtail = Polynomial::from_sorted_unchecked(&ring, g.terms()[1..].to_vec());
                work = tail.add_scaled(&factor, &shift, &gtail).into_terms();
                start = 0;
                if strip {
                    normalize_jointly(&mut rem, &mut work);
                }
            }
            None => {
                if !full {
                    break;
                }
                rem.push(work[start].clone());
                start += 1;
            }
        }
    }
    rem.extend(work.drain(start..));
    Polynomial::from_sorted_unchecked(&ring, rem)
}

/// Rescales the concatenation `rem ++ work` to its primitive part.
fn normalize_jointly(rem: &mut [(Monomial, Scalar)], work: &mut [(Monomial, Scalar)]) {
    let Some(lead) = rem.first().or(work.first()).map(|t| t.1.clone()) else {
        return;
    };
    let scale = primitive_scale(rem.iter().chain(work.iter()).map(|t| &t.1), &lead);
    if scale.is_one() {
        return;
    }
    let field = Field::Rational;
    let scale = Scalar::Rat(Box::new(scale));
    for t in rem.iter_mut().chain(work.iter_mut()) {
        t.1 = field.mul(&t.1, &scale);
    }
}

fn spoly(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let field = f.field();
    let (fm, fc) = f.lt().unwrap();
    let (gm, gc) = g.lt().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.quotient(&l), &field.inv(fc).unwrap());
    let b_scale = field.neg(&field.inv(gc).unwrap());
    a.add_scaled(&b_scale, &gm.quotient(&l), g)
}

/// Remainder of `f` on division by `basis`. `f` must live in the basis ring
/// (same variables, field and order).
pub fn normal_form(f: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial> {
    check_same_ring(f.ring(), &basis.ring)?;
    let refs: Vec<&Polynomial> = basis.polys.iter().collect();
    Ok(reduce_with(f, &Divisors::new(&refs), true, false))
}

/// Division by an arbitrary list (not necessarily a Gröbner basis).
pub fn reduce_by_list(f: &Polynomial, divisors: &[Polynomial]) -> Result<Polynomial> {
    for d in divisors {
        check_same_ring(f.ring(), d.ring())?;
    }
    let refs: Vec<&Polynomial> = divisors.iter().collect();
    Ok(reduce_with(f, &Divisors::new(&refs), true, false))
}

fn check_same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else if a.same_ambient(b) {
        Err(Error::OrderMismatch)
    } else {
        Err(Error::RingMismatch)
    }
}

/// `lcm(LT f, LT g)/LT f * f - lcm/LT g * g`, normalized so the leading
/// terms cancel, computed under `order`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Result<Polynomial> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    check_same_ring(f.ring(), g.ring())?;
    let ring = f.ring().with_order(order.clone())?;
    let s = spoly(&f.rehome(&ring)?, &g.rehome(&ring)?);
    s.rehome(f.ring())
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Buchberger {
    ring: Arc<Ring>,
    polys: Vec<Polynomial>,
    lms: Vec<Monomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Buchberger {
    fn new(ring: &Arc<Ring>) -> Self {
        Buchberger { ring: ring.clone(), polys: Vec::new(), lms: Vec::new(), active: Vec::new(), pairs: Vec::new() }
    }

    fn active_polys(&self) -> Vec<&Polynomial> {
        self.polys.iter().zip(&self.active).filter(|(_, a)| **a).map(|(p, _)| p).collect()
    }

    fn reduce(&self, f: &Polynomial) -> Polynomial {
        let act = self.active_polys();
        reduce_with(f, &Divisors::new(&act), true, true)
    }

    /// Gebauer–Möller installation of a new, nonzero, reduced element.
    fn update(&mut self, h: Polynomial) {
        let h = h.monic();
        let hl = h.lm().unwrap();
        let k = self.polys.len();
        let mut cands: Vec<usize> = (0..k).filter(|&g| self.active[g]).collect();
        let mut kept: Vec<usize> = Vec::new();
        while let Some(g1) = (!cands.is_empty()).then(|| cands.remove(0)) {
            let l1 = hl.lcm(&self.lms[g1]);
            let coprime = hl.is_coprime(&self.lms[g1]);
            let dominated = cands.iter().chain(kept.iter()).any(|&g2| hl.lcm(&self.lms[g2]).divides(&l1));
            if coprime || !dominated {
                kept.push(g1);
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|&g| !hl.is_coprime(&self.lms[g]))
            .map(|g| Pair { i: g, j: k, lcm: hl.lcm(&self.lms[g]) })
            .collect();
        let lms = &self.lms;
        self.pairs.retain(|p| {
            !(hl.divides(&p.lcm) && hl.lcm(&lms[p.i]) != p.lcm && hl.lcm(&lms[p.j]) != p.lcm)
        });
        self.pairs.extend(new_pairs);
        for g in 0..k {
            if self.active[g] && hl.divides(&self.lms[g]) {
                self.active[g] = false;
            }
        }
        self.polys.push(h);
        self.lms.push(hl);
        self.active.push(true);
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.ring.order();
        let n = self.ring.nvars();
        let mut best = 0;
        for (idx, p) in self.pairs.iter().enumerate().skip(1) {
            let b = &self.pairs[best];
            let c = order.compare(&p.lcm, &b.lcm, n).then((p.j, p.i).cmp(&(b.j, b.i)));
            if c == std::cmp::Ordering::Less {
                best = idx;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn run(mut self, gens: &[Polynomial]) -> Vec<Polynomial> {
        let mut input: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        let order = self.ring.order().clone();
        let n = self.ring.nvars();
        input.sort_by(|a, b| order.compare(&a.lm().unwrap(), &b.lm().unwrap(), n).then_with(|| a.len().cmp(&b.len())));
        for g in input {
            let h = self.reduce(&g);
            if !h.is_zero() {
                if h.is_unit() {
                    return vec![Polynomial::one(&self.ring)];
                }
                self.update(h);
            }
        }
        while let Some(pair) = self.select() {
            let s = spoly(&self.polys[pair.i], &self.polys[pair.j]);
            let h = self.reduce(&s);
            if !h.is_zero() {
                if h.is_unit() {
                    return vec![Polynomial::one(&self.ring)];
                }
                self.update(h);
            }
        }
        let minimal: Vec<Polynomial> = self.active_polys().into_iter().cloned().collect();
        interreduce(minimal)
    }
}

/// Turns a minimal Gröbner basis into the reduced one, sorted ascending by
/// leading monomial.
fn interreduce(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    if basis.is_empty() {
        return basis;
    }
    let ring = basis[0].ring().clone();
    let order = ring.order().clone();
    let n = ring.nvars();
    basis.sort_by(|a, b| order.compare(&a.lm().unwrap(), &b.lm().unwrap(), n));
    let mut out: Vec<Polynomial> = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let others: Vec<&Polynomial> = basis.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p).collect();
        let divs = Divisors::new(&others);
        let g = &basis[i];
        let head = Polynomial::from_sorted_unchecked(&ring, vec![g.terms()[0].clone()]);
        let tail = Polynomial::from_sorted_unchecked(&ring, g.terms()[1..].to_vec());
        let reduced_tail = reduce_with(&tail, &divs, true, false);
        out.push((&head + &reduced_tail).monic());
    }
    out
}

/// Reduced Gröbner basis of `gens` under the order of their ring.
pub fn compute_groebner(ring: &Arc<Ring>, gens: &[Polynomial]) -> Result<GroebnerBasis> {
    let mut homed = Vec::with_capacity(gens.len());
    for g in gens {
        homed.push(g.rehome(ring)?);
    }
    let polys = Buchberger::new(ring).run(&homed);
    Ok(GroebnerBasis { ring: ring.clone(), polys })
}

/// A finitely generated ideal with cached Gröbner bases per order.
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    cache: Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let cache = self.cache.lock().expect("gb cache poisoned").clone();
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), cache: Mutex::new(cache) }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Ideal {
    /// Generators may live in any ring with the same variables and field;
    /// they are re-sorted under `ring`'s order. An empty list means `(0)`.
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Ideal> {
        let mut homed = Vec::with_capacity(gens.len().max(1));
        for g in gens {
            homed.push(g.rehome(ring)?);
        }
        if homed.is_empty() {
            homed.push(Polynomial::zero(ring));
        }
        Ok(Ideal { ring: ring.clone(), gens: homed, cache: Mutex::new(HashMap::new()) })
    }

    pub fn zero(ring: &Arc<Ring>) -> Ideal {
        Ideal::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &Arc<Ring>) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)]).unwrap()
    }

    /// The ideal generated by the listed variables.
    pub fn of_variables(ring: &Arc<Ring>, vars: &[usize]) -> Ideal {
        Ideal::new(ring, vars.iter().map(|&i| Polynomial::var(ring, i)).collect()).unwrap()
    }

    /// `(x_1, ..., x_n)`.
    pub fn maximal_at_origin(ring: &Arc<Ring>) -> Ideal {
        let all: Vec<usize> = (0..ring.nvars()).collect();
        Ideal::of_variables(ring, &all)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Generators with zeros dropped.
    pub fn nonzero_generators(&self) -> Vec<Polynomial> {
        self.gens.iter().filter(|g| !g.is_zero()).cloned().collect()
    }

    /// Reduced Gröbner basis under the ring's order (cached).
    pub fn groebner(&self) -> Arc<GroebnerBasis> {
        self.groebner_in(self.ring.order()).expect("own order is always valid")
    }

    /// Reduced Gröbner basis under `order` (cached, insert-once).
    pub fn groebner_in(&self, order: &MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.cache.lock().expect("gb cache poisoned").get(order) {
            return Ok(gb.clone());
        }
        let ring = if order == self.ring.order() { self.ring.clone() } else { self.ring.with_order(order.clone())? };
        let gb = Arc::new(compute_groebner(&ring, &self.gens)?);
        let mut cache = self.cache.lock().expect("gb cache poisoned");
        Ok(cache.entry(order.clone()).or_insert(gb).clone())
    }

    /// Ideal membership by normal form.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        let gb = self.groebner();
        Ok(normal_form(&f.rehome(&self.ring)?, &gb)?.is_zero())
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals (equal reduced bases).
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        if !self.ring.same_ambient(&other.ring) {
            return Err(Error::RingMismatch);
        }
        let other = if *other.ring == *self.ring { other.clone() } else { other.rehome(&self.ring)? };
        Ok(self.groebner().generators() == other.groebner().generators())
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|g| g.is_zero())
    }

    /// Every generator is a single term.
    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_zero() || g.is_monomial())
    }

    pub fn rehome(&self, ring: &Arc<Ring>) -> Result<Ideal> {
        Ideal::new(ring, self.gens.clone())
    }

    /// `I + J`.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        for g in other.generators() {
            gens.push(g.rehome(&self.ring)?);
        }
        Ideal::new(&self.ring, gens)
    }

    /// `I + (f_1, ...)`.
    pub fn with_generators(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        for g in extra {
            gens.push(g.rehome(&self.ring)?);
        }
        Ideal::new(&self.ring, gens)
    }

    /// `I J`.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in other.generators() {
                gens.push(a.try_mul(&b.rehome(&self.ring)?)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// Reduced Gröbner basis elements as canonical text.
    pub fn canonical_strings(&self) -> Vec<String> {
        self.groebner().generators().iter().map(|g| g.to_string()).collect()
    }
}

/// Reduced Gröbner basis of `ideal` under `order`.
pub fn groebner_basis(ideal: &Ideal, order: &MonomialOrder) -> Result<Arc<GroebnerBasis>> {
    ideal.groebner_in(order)
}

/// `f ∈ I`, decided by normal form against the reduced basis.
pub fn ideal_member(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    ideal.contains(f)
}
