//! Independent reference implementations used as test oracles.
//!
//! The oracles in this file never call into the library's arithmetic:
//! polynomials are plain maps from exponent vectors to residues mod `p`,
//! ideal membership is decided by row reduction of Macaulay matrices, and
//! monomial-ideal primes by exhaustive enumeration of variable subsets.
//! [`suites`] drives randomized comparisons against the library.

#![allow(dead_code)]

pub mod suites;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rand::Rng;

pub type Exps = Vec<u32>;

/// A polynomial over `F_p` as a map from exponent vectors to nonzero residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OPoly {
    pub n: usize,
    pub p: u64,
    pub terms: BTreeMap<Exps, u64>,
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t, mut r, mut new_r) = (0i64, 1i64, p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "{a} not invertible mod {p}");
    t.rem_euclid(p as i64) as u64
}

impl OPoly {
    pub fn zero(n: usize, p: u64) -> Self {
        OPoly { n, p, terms: BTreeMap::new() }
    }

    pub fn monomial(n: usize, p: u64, e: Exps, c: u64) -> Self {
        let mut z = OPoly::zero(n, p);
        z.add_term(e, c);
        z
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Exps, c: u64) {
        let c = c % self.p;
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert(0);
        *entry = (*entry + c) % self.p;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &OPoly) -> OPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }

    pub fn scale(&self, c: u64) -> OPoly {
        let mut out = OPoly::zero(self.n, self.p);
        for (e, d) in &self.terms {
            out.add_term(e.clone(), c * d);
        }
        out
    }

    pub fn sub(&self, other: &OPoly) -> OPoly {
        self.add(&other.scale(self.p - 1))
    }

    pub fn mul(&self, other: &OPoly) -> OPoly {
        let mut out = OPoly::zero(self.n, self.p);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(a.iter().zip(b).map(|(x, y)| x + y).collect(), c * d);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &[u32], c: u64) -> OPoly {
        let mut out = OPoly::zero(self.n, self.p);
        for (a, d) in &self.terms {
            out.add_term(a.iter().zip(m).map(|(x, y)| x + y).collect(), c * d);
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Leading term under grevlex.
    pub fn lead(&self) -> Option<(Exps, u64)> {
        self.terms.iter().max_by(|a, b| grevlex(a.0, b.0)).map(|(e, c)| (e.clone(), *c))
    }

    /// Text in the library's input grammar, coefficients as residues `0..p`.
    pub fn render(&self, vars: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mut factors = vec![c.to_string()];
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(vars[i].to_string()),
                    _ => factors.push(format!("{}^{k}", vars[i])),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join("+")
    }
}

/// Graded reverse lexicographic comparison with `x_0 > x_1 > ...`.
pub fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Full multivariate division remainder under grevlex.
pub fn remainder(f: &OPoly, basis: &[OPoly]) -> OPoly {
    let mut work = f.clone();
    let mut rem = OPoly::zero(f.n, f.p);
    let leads: Vec<(Exps, u64)> = basis.iter().filter_map(|g| g.lead()).collect();
    while let Some((e, c)) = work.lead() {
        match leads.iter().position(|(l, _)| divides(l, &e)) {
            Some(k) => {
                let (l, lc) = &leads[k];
                let shift: Exps = e.iter().zip(l).map(|(x, y)| x - y).collect();
                let factor = c * inv_mod(*lc, f.p) % f.p;
                work = work.sub(&basis[k].mul_monomial(&shift, factor));
            }
            None => {
                rem.add_term(e.clone(), c);
                work.terms.remove(&e);
            }
        }
    }
    rem
}

pub fn s_poly(f: &OPoly, g: &OPoly) -> OPoly {
    let (a, ca) = f.lead().expect("nonzero");
    let (b, cb) = g.lead().expect("nonzero");
    let l: Exps = a.iter().zip(&b).map(|(x, y)| *x.max(y)).collect();
    let sa: Exps = l.iter().zip(&a).map(|(x, y)| x - y).collect();
    let sb: Exps = l.iter().zip(&b).map(|(x, y)| x - y).collect();
    f.mul_monomial(&sa, inv_mod(ca, f.p)).sub(&g.mul_monomial(&sb, inv_mod(cb, f.p)))
}

/// All exponent vectors in `n` variables of total degree at most `d`.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Exps> {
    fn rec(n: usize, left: u32, cur: &mut Exps, out: &mut Vec<Exps>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Row-echelon span of the Macaulay matrix of `gens` in degree `≤ d`.
pub struct Macaulay {
    n: usize,
    p: u64,
    pub degree: u32,
    /// Pivot exponent -> reduced row with that leading (grevlex-largest) term.
    rows: BTreeMap<Exps, OPoly>,
}

impl Macaulay {
    pub fn build(gens: &[OPoly], n: usize, p: u64, d: u32) -> Self {
        let mut mac = Macaulay { n, p, degree: d, rows: BTreeMap::new() };
        for g in gens.iter().filter(|g| !g.is_zero()) {
            let dg = g.degree();
            if dg > d {
                continue;
            }
            for m in monomials_up_to(n, d - dg) {
                mac.insert(g.mul_monomial(&m, 1));
            }
        }
        mac
    }

    fn reduce(&self, f: &OPoly) -> OPoly {
        let mut work = f.clone();
        let mut rem = OPoly::zero(self.n, self.p);
        while let Some((e, c)) = work.lead() {
            match self.rows.get(&e) {
                Some(row) => work = work.sub(&row.scale(c)),
                None => {
                    rem.add_term(e.clone(), c);
                    work.terms.remove(&e);
                }
            }
        }
        rem
    }

    fn insert(&mut self, f: OPoly) {
        let r = self.reduce(&f);
        if let Some((e, c)) = r.lead() {
            self.rows.insert(e, r.scale(inv_mod(c, self.p)));
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// `f` is a combination `Σ h_i g_i` with every `deg(h_i g_i) ≤ d`.
    pub fn spans(&self, f: &OPoly) -> bool {
        f.degree() <= self.degree && self.reduce(f).is_zero()
    }
}

/// Membership by Macaulay matrices of increasing degree up to `d_max`;
/// returns the first degree that exhibits a certificate.
pub fn macaulay_member(f: &OPoly, gens: &[OPoly], d_max: u32) -> Option<u32> {
    if f.is_zero() {
        return Some(0);
    }
    let start = f.degree().max(gens.iter().map(|g| g.degree()).min().unwrap_or(0));
    (start..=d_max).find(|&d| Macaulay::build(gens, f.n, f.p, d).spans(f))
}

pub fn random_poly<R: Rng>(rng: &mut R, n: usize, p: u64, max_deg: u32, max_terms: usize) -> OPoly {
    let mons = monomials_up_to(n, max_deg);
    let mut f = OPoly::zero(n, p);
    let k = rng.gen_range(1..=max_terms);
    for _ in 0..k {
        let e = mons[rng.gen_range(0..mons.len())].clone();
        f.add_term(e, rng.gen_range(1..p));
    }
    f
}

pub fn random_nonzero_poly<R: Rng>(rng: &mut R, n: usize, p: u64, max_deg: u32, max_terms: usize) -> OPoly {
    loop {
        let f = random_poly(rng, n, p, max_deg, max_terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Minimal variable sets meeting the support of every generator, found by
/// checking all `2^n` subsets.
pub fn brute_min_primes(n: usize, gens: &[Exps]) -> Vec<Vec<usize>> {
    let supports: Vec<u32> = gens
        .iter()
        .map(|e| e.iter().enumerate().filter(|(_, &k)| k > 0).fold(0u32, |m, (i, _)| m | 1 << i))
        .collect();
    let covers: Vec<u32> = (0u32..1 << n).filter(|s| supports.iter().all(|g| g & s != 0)).collect();
    let mut minimal: Vec<u32> = covers
        .iter()
        .copied()
        .filter(|&s| !covers.iter().any(|&t| t != s && t & s == t))
        .collect();
    minimal.sort_unstable();
    minimal.into_iter().map(|s| (0..n).filter(|i| s & (1 << i) != 0).collect()).collect()
}

/// `dim K[x]/I` for a proper monomial ideal: `n` minus the least cover size.
pub fn brute_monomial_dim(n: usize, gens: &[Exps]) -> usize {
    n - brute_min_primes(n, gens).iter().map(|s| s.len()).min().unwrap_or(0)
}

pub fn random_monomial_ideal<R: Rng>(rng: &mut R, n: usize, max_gens: usize, max_deg: u32) -> Vec<Exps> {
    let k = rng.gen_range(1..=max_gens);
    (0..k)
        .map(|_| loop {
            let e: Exps = (0..n).map(|_| rng.gen_range(0..=max_deg)).collect();
            let d: u32 = e.iter().sum();
            if d > 0 && d <= max_deg + 1 {
                break e;
            }
        })
        .collect()
}

pub fn render_monomial(e: &[u32], vars: &[&str]) -> String {
    OPoly::monomial(e.len(), 2, e.to_vec(), 1).render(vars).trim_start_matches("1*").to_string()
}

pub const VARS: [&str; 8] = ["x", "y", "z", "w", "u", "v", "s", "t"];
