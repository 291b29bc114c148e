//! Randomized comparisons between the library and the oracles.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tightlab_core::arith::Scalar;
use tightlab_core::dimension::dimension_of_quotient;
use tightlab_core::{
    height, monomial_min_primes, parse_poly, Field, Ideal, MonomialOrder, Polynomial, Ring,
};

use super::{
    brute_min_primes, brute_monomial_dim, grevlex, random_monomial_ideal, random_nonzero_poly, random_poly,
    remainder, render_monomial, s_poly, Exps, Macaulay, OPoly, VARS,
};

pub fn grevlex_ring(p: u32, n: usize) -> Arc<Ring> {
    let field = if p == 0 { Field::Rational } else { Field::Prime(p) };
    Ring::new(field, &VARS[..n], MonomialOrder::grevlex()).unwrap()
}

pub fn to_core(f: &OPoly, ring: &Arc<Ring>) -> Polynomial {
    parse_poly(ring, &f.render(&VARS[..f.n])).unwrap()
}

pub fn from_core(f: &Polynomial, n: usize, p: u64) -> OPoly {
    let mut out = OPoly::zero(n, p);
    for (m, c) in f.terms() {
        let Scalar::Mod(c) = c else { panic!("expected a prime-field coefficient") };
        out.add_term(m.exponents()[..n].to_vec(), *c as u64);
    }
    out
}

#[derive(Debug, Default)]
pub struct GbSuiteReport {
    pub ideals: usize,
    pub probes: usize,
    pub members: usize,
    /// Failures of Buchberger's criterion, reducedness or generation.
    pub basis_failures: Vec<String>,
    /// Probes where the library and the Macaulay oracle disagree.
    pub disagreements: Vec<String>,
}

impl GbSuiteReport {
    pub fn ok(&self) -> bool {
        self.basis_failures.is_empty() && self.disagreements.is_empty()
    }
}

const P: u64 = 7;
const D_MAX: u32 = 12;

/// Random ideals over `F_7` in at most three variables with at most three
/// generators of degree at most three. Each basis is checked independently
/// and ten probes per ideal are decided by both the library and the
/// Macaulay-matrix oracle.
pub fn groebner_suite(seed: u64, count: usize) -> GbSuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = GbSuiteReport::default();
    for _ in 0..count {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=3);
        let gens: Vec<OPoly> = (0..k).map(|_| random_nonzero_poly(&mut rng, n, P, 3, 4)).collect();
        let ring = grevlex_ring(P as u32, n);
        let ideal = Ideal::new(&ring, gens.iter().map(|g| to_core(g, &ring)).collect()).unwrap();
        let label = gens.iter().map(|g| g.render(&VARS[..n])).collect::<Vec<_>>().join(", ");
        report.ideals += 1;

        let basis: Vec<OPoly> =
            ideal.groebner().generators().iter().map(|g| from_core(g, n, P)).collect();
        check_basis(&gens, &basis, &label, &mut report);

        let mut probes = Vec::new();
        for _ in 0..5 {
            let mut f = OPoly::zero(n, P);
            for g in &gens {
                f = f.add(&random_poly(&mut rng, n, P, 2, 3).mul(g));
            }
            probes.push(f);
        }
        for _ in 0..5 {
            probes.push(random_poly(&mut rng, n, P, 3, 4));
        }
        let verdicts: Vec<bool> = probes.iter().map(|f| ideal.contains(&to_core(f, &ring)).unwrap()).collect();
        report.probes += probes.len();
        report.members += verdicts.iter().filter(|&&v| v).count();

        let mut expected: Vec<(&OPoly, bool)> = probes.iter().zip(verdicts.iter().copied()).collect();
        expected.extend(basis.iter().map(|b| (b, true)));
        let mut d = expected.iter().map(|(f, _)| f.degree()).max().unwrap_or(0);
        let mut mac = Macaulay::build(&gens, n, P, d);
        while d < D_MAX && expected.iter().any(|(f, v)| *v && !mac.spans(f)) {
            d += 1;
            mac = Macaulay::build(&gens, n, P, d);
        }
        for (f, v) in &expected {
            let oracle = mac.spans(f);
            if oracle != *v {
                report.disagreements.push(format!(
                    "ideal ({label}); probe {}: library {v}, oracle {oracle} at degree {d}",
                    f.render(&VARS[..n])
                ));
            }
        }
    }
    report
}

fn check_basis(gens: &[OPoly], basis: &[OPoly], label: &str, report: &mut GbSuiteReport) {
    for (i, f) in basis.iter().enumerate() {
        let (lead, lc) = f.lead().expect("basis elements are nonzero");
        if lc != 1 {
            report.basis_failures.push(format!("({label}): element {i} not monic"));
        }
        for (j, g) in basis.iter().enumerate() {
            if i == j {
                continue;
            }
            let (gl, _) = g.lead().unwrap();
            if f.terms.keys().any(|e| super::divides(&gl, e)) {
                report.basis_failures.push(format!("({label}): element {i} not reduced by {j}"));
            }
            if j > i && !remainder(&s_poly(f, g), basis).is_zero() {
                report.basis_failures.push(format!("({label}): S({i},{j}) does not reduce to 0"));
            }
        }
        if i > 0 && grevlex(&basis[i - 1].lead().unwrap().0, &lead).is_ge() {
            report.basis_failures.push(format!("({label}): basis not sorted by leading monomial"));
        }
    }
    for g in gens {
        if !remainder(g, basis).is_zero() {
            report.basis_failures.push(format!("({label}): generator does not reduce to 0"));
        }
    }
}

#[derive(Debug, Default)]
pub struct DimSuiteReport {
    pub ideals: usize,
    pub disagreements: Vec<String>,
}

fn monomial_ideal(ring: &Arc<Ring>, gens: &[Exps]) -> Ideal {
    let n = ring.nvars();
    let polys = gens.iter().map(|e| parse_poly(ring, &render_monomial(e, &VARS[..n])).unwrap()).collect();
    Ideal::new(ring, polys).unwrap()
}

/// Random monomial ideals in at most six variables; Krull dimension and
/// minimal primes compared against subset enumeration.
pub fn dimension_suite(seed: u64, count: usize) -> DimSuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = DimSuiteReport::default();
    for _ in 0..count {
        let n = rng.gen_range(1..=6);
        let gens = random_monomial_ideal(&mut rng, n, 5, 3);
        let ring = grevlex_ring(if rng.gen_bool(0.5) { 0 } else { 7 }, n);
        let ideal = monomial_ideal(&ring, &gens);
        report.ideals += 1;
        let label = gens.iter().map(|e| render_monomial(e, &VARS[..n])).collect::<Vec<_>>().join(", ");

        let dim = dimension_of_quotient(&ideal).unwrap();
        let brute_dim = brute_monomial_dim(n, &gens);
        if dim != brute_dim {
            report.disagreements.push(format!("({label}): dim {dim}, brute force {brute_dim}"));
        }
        let mut primes: Vec<Vec<usize>> = monomial_min_primes(&ideal)
            .unwrap()
            .primes()
            .iter()
            .map(|p| {
                let mut v: Vec<usize> = p
                    .generators()
                    .iter()
                    .map(|g| g.support_mask().trailing_zeros() as usize)
                    .collect();
                v.sort_unstable();
                v
            })
            .collect();
        primes.sort();
        let mut brute = brute_min_primes(n, &gens);
        brute.sort();
        if primes != brute {
            report.disagreements.push(format!("({label}): primes {primes:?}, brute force {brute:?}"));
        }
    }
    report
}

#[derive(Debug, Default)]
pub struct SerreReport {
    pub samples: usize,
    pub violations: Vec<String>,
}

/// `ht(I) + ht(J) ≥ ht(I + J)` on random monomial pairs with proper sum.
pub fn serre_suite(seed: u64, count: usize) -> SerreReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SerreReport::default();
    while report.samples < count {
        let n = rng.gen_range(2..=6);
        let ring = grevlex_ring(7, n);
        let a = random_monomial_ideal(&mut rng, n, 4, 3);
        let b = random_monomial_ideal(&mut rng, n, 4, 3);
        let (i, j) = (monomial_ideal(&ring, &a), monomial_ideal(&ring, &b));
        let s = i.sum(&j).unwrap();
        if s.is_unit() {
            continue;
        }
        report.samples += 1;
        let (hi, hj, hs) = (height(&i).unwrap(), height(&j).unwrap(), height(&s).unwrap());
        if hi + hj < hs {
            report.violations.push(format!("ht {hi} + ht {hj} < ht(sum) {hs} for {i} and {j}"));
        }
    }
    report
}
