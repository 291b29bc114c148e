//! Krull dimension, height and big height, minimal primes of monomial
//! ideals, and the consistency gate for user-supplied minimal primes.
//!
//! Dimension comes from the initial ideal: `dim T/I = dim T/in(I)`, which is
//! the size of a largest set of variables containing the support of no
//! leading monomial. No primary decomposition is ever attempted; for
//! non-monomial ideals the minimal primes must be supplied and then pass
//! [`verify_components`].

use std::sync::Arc;

use crate::arith::{Polynomial, Ring};
use crate::error::{ComponentCheck, Error, Result};
use crate::groebner::Ideal;
use crate::ideal_ops::{intersect, radical_member};

/// User assertions about a presented algebra. They are recorded in outputs
/// and never assumed true silently.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub assume_equidimensional: bool,
    pub assume_reduced: bool,
}

/// `R = T/I` with `T = K[x_1..x_n]`.
#[derive(Clone, Debug)]
pub struct PresentedAlgebra {
    ring: Arc<Ring>,
    ideal: Ideal,
    flags: Flags,
}

impl PresentedAlgebra {
    pub fn new(ring: &Arc<Ring>, relations: Vec<Polynomial>, flags: Flags) -> Result<Self> {
        Ok(PresentedAlgebra { ring: ring.clone(), ideal: Ideal::new(ring, relations)?, flags })
    }

    pub fn from_ideal(ideal: Ideal, flags: Flags) -> Self {
        PresentedAlgebra { ring: ideal.ring().clone(), ideal, flags }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn defining_ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// The nonzero defining relations `f_1..f_r` as given.
    pub fn relations(&self) -> Vec<Polynomial> {
        self.ideal.nonzero_generators()
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn set_flags(&mut self, flags: Flags) {
        self.flags = flags;
    }

    pub fn characteristic(&self) -> u32 {
        self.ring.characteristic()
    }

    /// `n = dim T`.
    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// Errors with [`Error::UnitIdeal`] when `R` is the zero ring.
    pub fn ensure_proper(&self) -> Result<()> {
        if self.ideal.is_unit() {
            Err(Error::UnitIdeal)
        } else {
            Ok(())
        }
    }

    /// The image in `R` of an ideal of `T`, represented by its preimage
    /// `J + I`.
    pub fn lift(&self, j: &Ideal) -> Result<Ideal> {
        j.rehome(&self.ring)?.sum(&self.ideal)
    }

    /// Membership in `R`: `f ∈ J + I`.
    pub fn contains_in_quotient(&self, j: &Ideal, f: &Polynomial) -> Result<bool> {
        self.lift(j)?.contains(f)
    }

    /// Minimal primes: monomial-derived when possible, otherwise the
    /// verified `claimed` list.
    pub fn components(&self, claimed: Option<Vec<Ideal>>) -> Result<ComponentData> {
        self.ensure_proper()?;
        match claimed {
            Some(list) => verify_components(&self.ideal, list),
            None if self.ideal.is_monomial() => monomial_min_primes(&self.ideal),
            None => Err(Error::MissingComponents),
        }
    }
}

/// Where a list of minimal primes came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    DerivedMonomial,
    UserSupplied,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::DerivedMonomial => "derived-monomial",
            Provenance::UserSupplied => "user-supplied",
        }
    }
}

/// The minimal primes of a defining ideal with their heights.
#[derive(Clone, Debug)]
pub struct ComponentData {
    primes: Vec<Ideal>,
    heights: Vec<usize>,
    provenance: Provenance,
}

impl ComponentData {
    pub fn primes(&self) -> &[Ideal] {
        &self.primes
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn big_height(&self) -> usize {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    pub fn min_height(&self) -> usize {
        self.heights.iter().copied().min().unwrap_or(0)
    }

    /// `ht_Q(I)`: the least height of a listed component contained in `q`,
    /// or `None` if `q` contains none of them.
    pub fn height_at(&self, q: &Ideal) -> Result<Option<usize>> {
        let mut best: Option<usize> = None;
        for (p, &h) in self.primes.iter().zip(&self.heights) {
            if q.contains_ideal(p)? {
                best = Some(best.map_or(h, |b| b.min(h)));
            }
        }
        Ok(best)
    }

    /// Whether `c` lies outside every listed component.
    pub fn avoids_all(&self, c: &Polynomial) -> Result<bool> {
        for p in &self.primes {
            if p.contains(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Bitmasks of the variables occurring in the leading monomials of the
/// reduced basis.
fn leading_supports(ideal: &Ideal) -> Vec<u32> {
    ideal
        .groebner()
        .generators()
        .iter()
        .map(|g| g.lm().expect("nonzero basis element").support_mask())
        .collect()
}

/// `dim T/I` for a proper ideal `I`.
pub fn dimension_of_quotient(ideal: &Ideal) -> Result<usize> {
    let gb = ideal.groebner();
    if gb.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let n = ideal.ring().nvars();
    let supports = leading_supports(ideal);
    let mut best = 0usize;
    for s in 0u32..(1u32 << n) {
        let size = s.count_ones() as usize;
        if size > best && supports.iter().all(|&l| l & !s != 0) {
            best = size;
        }
    }
    Ok(best)
}

/// Krull dimension of `R = T/I`.
pub fn krull_dim(r: &PresentedAlgebra) -> Result<usize> {
    r.ensure_proper()?;
    dimension_of_quotient(r.defining_ideal())
}

/// `ht(I) = n − dim T/I`; the zero ideal has height 0.
pub fn height(ideal: &Ideal) -> Result<usize> {
    if ideal.is_zero() {
        return Ok(0);
    }
    Ok(ideal.ring().nvars() - dimension_of_quotient(ideal)?)
}

/// Minimal vertex covers of a hypergraph given by edge bitmasks.
pub(crate) fn minimal_vertex_covers(edges: &[u32]) -> Vec<u32> {
    fn rec(edges: &[u32], chosen: u32, out: &mut Vec<u32>) {
        match edges.iter().find(|&&e| e & chosen == 0) {
            None => out.push(chosen),
            Some(&e) => {
                let mut rest = e;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    rest &= rest - 1;
                    rec(edges, chosen | bit, out);
                }
            }
        }
    }
    let mut covers = Vec::new();
    rec(edges, 0, &mut covers);
    covers.sort_unstable_by_key(|c| (c.count_ones(), c.reverse_bits()));
    covers.dedup();
    let mut minimal: Vec<u32> = Vec::new();
    for c in covers {
        if !minimal.iter().any(|&m| m & !c == 0) {
            minimal.push(c);
        }
    }
    minimal
}

/// Minimal primes of a monomial ideal: the variable sets that minimally
/// meet the support of every generator.
pub fn monomial_min_primes(ideal: &Ideal) -> Result<ComponentData> {
    let ring = ideal.ring();
    let mut edges = Vec::new();
    for g in ideal.generators() {
        if g.is_zero() {
            continue;
        }
        if !g.is_monomial() {
            return Err(Error::NotMonomial(g.to_string()));
        }
        let mask = g.support_mask();
        if mask == 0 {
            return Err(Error::UnitIdeal);
        }
        edges.push(mask);
    }
    let covers = minimal_vertex_covers(&edges);
    let mut primes = Vec::with_capacity(covers.len());
    let mut heights = Vec::with_capacity(covers.len());
    for c in covers {
        let vars: Vec<usize> = (0..ring.nvars()).filter(|i| c & (1 << i) != 0).collect();
        heights.push(vars.len());
        primes.push(Ideal::of_variables(ring, &vars));
    }
    Ok(ComponentData { primes, heights, provenance: Provenance::DerivedMonomial })
}

/// Machine-checks a claimed list of minimal primes of `ideal`:
/// containment `I ⊆ P`, pairwise incomparability, and `⋂ P ⊆ √I`.
/// Primality itself is the caller's assertion.
pub fn verify_components(ideal: &Ideal, claimed: Vec<Ideal>) -> Result<ComponentData> {
    let ring = ideal.ring();
    let mut primes = Vec::with_capacity(claimed.len());
    for p in claimed {
        primes.push(p.rehome(ring)?);
    }
    for (k, p) in primes.iter().enumerate() {
        if p.is_unit() {
            return Err(Error::Verification {
                check: ComponentCheck::Containment,
                detail: format!("component #{} {p} is the unit ideal", k + 1),
            });
        }
        if !p.contains_ideal(ideal)? {
            return Err(Error::Verification {
                check: ComponentCheck::Containment,
                detail: format!("defining ideal is not contained in component #{} {p}", k + 1),
            });
        }
    }
    for i in 0..primes.len() {
        for j in 0..primes.len() {
            if i != j && primes[j].contains_ideal(&primes[i])? {
                return Err(Error::Verification {
                    check: ComponentCheck::Minimality,
                    detail: format!("component #{} {} contains component #{} {}", j + 1, primes[j], i + 1, primes[i]),
                });
            }
        }
    }
    let mut cap: Option<Ideal> = None;
    for p in &primes {
        cap = Some(match cap {
            None => p.clone(),
            Some(acc) => intersect(&acc, p)?,
        });
    }
    let cap = cap.ok_or_else(|| Error::Verification {
        check: ComponentCheck::Radical,
        detail: "no components supplied".into(),
    })?;
    for g in cap.groebner().generators() {
        if !radical_member(g, ideal)? {
            return Err(Error::Verification {
                check: ComponentCheck::Radical,
                detail: format!("`{g}` lies in every component but not in the radical of the defining ideal"),
            });
        }
    }
    let mut heights = Vec::with_capacity(primes.len());
    for p in &primes {
        heights.push(height(p)?);
    }
    Ok(ComponentData { primes, heights, provenance: Provenance::UserSupplied })
}

/// `bight(I)`: the largest height of a minimal prime.
pub fn big_height(ideal: &Ideal, components: Option<&ComponentData>) -> Result<usize> {
    match components {
        Some(c) => Ok(c.big_height()),
        None if ideal.is_monomial() => Ok(monomial_min_primes(ideal)?.big_height()),
        None => Err(Error::MissingComponents),
    }
}

/// All minimal primes of the defining ideal share one height.
pub fn is_equiheight(r: &PresentedAlgebra, components: &ComponentData) -> Result<bool> {
    r.ensure_proper()?;
    if let Some(p) = components.primes.first() {
        if !p.ring().same_ambient(r.ring()) {
            return Err(Error::RingMismatch);
        }
    }
    Ok(components.heights.windows(2).all(|w| w[0] == w[1]))
}
