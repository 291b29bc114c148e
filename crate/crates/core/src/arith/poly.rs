//! Sparse multivariate polynomials with terms sorted by the ring's order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{Field, Scalar};
use super::monomial::{Monomial, MonomialOrder};
use super::ring::Ring;
use crate::error::{Error, Result};

/// A polynomial in a [`Ring`]. Terms are nonzero and sorted in strictly
/// descending order under the ring's monomial order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<Ring>, c: Scalar) -> Self {
        Self::term(ring, Monomial::ONE, c)
    }

    pub fn from_i64(ring: &Arc<Ring>, c: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(c))
    }

    pub fn term(ring: &Arc<Ring>, m: Monomial, c: Scalar) -> Self {
        let terms = if ring.field().is_zero(&c) { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// The variable `x_i`.
    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Self::term(ring, Monomial::var(i, 1), ring.field().one())
    }

    /// Collects arbitrary terms: like monomials are combined, zeros pruned,
    /// and the result sorted.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(ring: &Arc<Ring>, terms: I) -> Self {
        let field = ring.field();
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, Scalar)> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        sort_terms(&mut terms, ring);
        Polynomial { ring: ring.clone(), terms }
    }

    /// Wraps terms already sorted, combined and nonzero.
    pub(crate) fn from_sorted_unchecked(ring: &Arc<Ring>, terms: Vec<(Monomial, Scalar)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order().compare(&w[0].0, &w[1].0, ring.nvars()) == Ordering::Greater));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_one(&self) -> bool {
        self.is_unit() && self.field().is_one(&self.terms[0].1)
    }

    /// A single term (any nonzero coefficient).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Leading term under the storage order.
    pub fn lt(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn lm(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn lc(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.1)
    }

    /// The maximal term under an arbitrary order.
    pub fn leading_term(&self, order: &MonomialOrder) -> Result<(Monomial, Scalar)> {
        let n = self.ring.nvars();
        self.terms
            .iter()
            .max_by(|a, b| order.compare(&a.0, &b.0, n))
            .cloned()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Union of the variables occurring in any term.
    pub fn support_mask(&self) -> u32 {
        self.terms.iter().fold(0, |acc, (m, _)| acc | m.support_mask())
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else if self.ring.same_ambient(&other.ring) {
            Err(Error::OrderMismatch)
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(&self.field().one(), &Monomial::ONE, other))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(&self.field().from_i64(-1), &Monomial::ONE, other))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.checked_mul_term(m, c);
        }
        let field = self.field();
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(small.len() * big.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = ma.checked_mul(mb).ok_or(Error::ExponentOverflow)?;
                let c = field.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = field.add(v, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, Scalar)> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        sort_terms(&mut terms, &self.ring);
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    /// `self + c * m * g`, merging sorted term lists. Panics on overflow.
    pub fn add_scaled(&self, c: &Scalar, m: &Monomial, g: &Polynomial) -> Polynomial {
        let field = self.field();
        if field.is_zero(c) || g.is_zero() {
            return self.clone();
        }
        let order = self.ring.order();
        let n = self.ring.nvars();
        let mut out = Vec::with_capacity(self.len() + g.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(gm, gc)| (m.mul(gm), gc)).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => order.compare(&x.0, &y.0, n),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => break,
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => {
                    let (bm, bc) = b.next().unwrap();
                    out.push((bm, field.mul(c, bc)));
                }
                Ordering::Equal => {
                    let (am, ac) = a.next().unwrap();
                    let (_, bc) = b.next().unwrap();
                    let s = field.add(ac, &field.mul(c, bc));
                    if !field.is_zero(&s) {
                        out.push((*am, s));
                    }
                }
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    /// `c * m * self`; the order is multiplicative so no re-sort is needed.
    pub fn checked_mul_term(&self, m: &Monomial, c: &Scalar) -> Result<Polynomial> {
        let field = self.field();
        if field.is_zero(c) {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut terms = Vec::with_capacity(self.len());
        for (tm, tc) in &self.terms {
            terms.push((tm.checked_mul(m).ok_or(Error::ExponentOverflow)?, field.mul(tc, c)));
        }
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    /// `c * m * self`; panics on exponent overflow.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        self.checked_mul_term(m, c).expect("monomial exponent overflow")
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        self.mul_term(&Monomial::ONE, c)
    }

    /// `self^k` by binary powering.
    pub fn pow(&self, mut k: u64) -> Result<Polynomial> {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// The `q`-th power in characteristic `p`, where `q` is a power of `p`:
    /// coefficients are fixed by Frobenius on `F_p`, so only exponents scale.
    pub fn frobenius(&self, q: u32) -> Result<Polynomial> {
        let p = self.ring.characteristic();
        if p == 0 || !is_power_of(q as u64, p as u64) {
            return Err(Error::NotPowerOfCharacteristic { q: q as u64, p });
        }
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            terms.push((m.checked_pow(q).ok_or(Error::ExponentOverflow)?, c.clone()));
        }
        // scaling every exponent by q preserves any monomial order
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    /// Divides by the leading coefficient of `order`.
    pub fn normalize_monic(&self, order: &MonomialOrder) -> Result<Polynomial> {
        let (_, lc) = self.leading_term(order)?;
        Ok(self.scale(&self.field().inv(&lc)?))
    }

    /// Monic under the storage order; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.lc() {
            None => self.clone(),
            Some(lc) if self.field().is_one(lc) => self.clone(),
            Some(lc) => self.scale(&self.field().inv(lc).expect("nonzero leading coefficient")),
        }
    }

    /// Over `Q`, rescales to coprime integer coefficients with positive
    /// leading coefficient. Other fields: unchanged.
    pub fn primitive_part(&self) -> Polynomial {
        if self.field() != Field::Rational || self.is_zero() {
            return self.clone();
        }
        let scale = primitive_scale(self.terms.iter().map(|t| &t.1), self.lc().unwrap());
        if scale.is_one() {
            return self.clone();
        }
        self.scale(&Scalar::Rat(Box::new(scale)))
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let field = self.field();
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exp(i);
            if e == 0 {
                return None;
            }
            let mut dm = *m;
            dm.set_exp(i, e - 1);
            let dc = field.mul(c, &field.from_i64(e as i64));
            (!field.is_zero(&dc)).then_some((dm, dc))
        });
        Polynomial::from_terms(&self.ring, terms.collect::<Vec<_>>())
    }

    /// Moves this polynomial into a ring with the same variables and field
    /// but possibly another order.
    pub fn rehome(&self, ring: &Arc<Ring>) -> Result<Polynomial> {
        if Arc::ptr_eq(&self.ring, ring) || *self.ring == **ring {
            return Ok(Polynomial { ring: ring.clone(), terms: self.terms.clone() });
        }
        if !self.ring.same_ambient(ring) {
            return Err(Error::RingMismatch);
        }
        let mut terms = self.terms.clone();
        sort_terms(&mut terms, ring);
        Ok(Polynomial { ring: ring.clone(), terms })
    }

    /// Embeds into a ring whose variables extend this ring's variables.
    pub fn embed(&self, ext: &Arc<Ring>) -> Result<Polynomial> {
        let n = self.ring.nvars();
        if ext.field() != self.field() || ext.nvars() < n || ext.vars()[..n] != *self.ring.vars() {
            return Err(Error::RingMismatch);
        }
        let mut terms = self.terms.clone();
        sort_terms(&mut terms, ext);
        Ok(Polynomial { ring: ext.clone(), terms })
    }

    /// Inverse of [`embed`](Self::embed); fails if an auxiliary variable
    /// occurs.
    pub fn project(&self, base: &Arc<Ring>) -> Result<Polynomial> {
        let n = base.nvars();
        if base.field() != self.field() || self.ring.nvars() < n || self.ring.vars()[..n] != *base.vars() {
            return Err(Error::RingMismatch);
        }
        let high = !0u32 << n;
        if self.support_mask() & high != 0 {
            return Err(Error::InvalidArgument("polynomial involves auxiliary variables".into()));
        }
        let mut terms = self.terms.clone();
        sort_terms(&mut terms, base);
        Ok(Polynomial { ring: base.clone(), terms })
    }

    /// Terms whose degree in the variables of `mask` is at most `n`.
    pub fn truncate_degree(&self, mask: u32, n: u64) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| masked_degree(m, mask) <= n)
            .cloned()
            .collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Canonical text: `x^2*y-3*z+1`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

/// The rational factor turning the given coefficients into coprime integers
/// with `lead` mapped to a positive value.
pub(crate) fn primitive_scale<'a>(coeffs: impl Iterator<Item = &'a Scalar>, lead: &Scalar) -> BigRational {
    let coeffs: Vec<&BigRational> = coeffs.filter_map(|c| c.as_rational()).collect();
    let mut den = BigInt::one();
    for c in &coeffs {
        den = den.lcm(c.denom());
    }
    let mut num = BigInt::zero();
    for c in &coeffs {
        num = num.gcd(&(c.numer() * (&den / c.denom())));
    }
    if num.is_zero() {
        return BigRational::one();
    }
    let scale = BigRational::new(den, num);
    if lead.as_rational().is_some_and(|l| l.is_negative()) {
        -scale
    } else {
        scale
    }
}

pub(crate) fn masked_degree(m: &Monomial, mask: u32) -> u64 {
    (0..32).filter(|i| mask & (1 << i) != 0 && *i < super::monomial::MAX_VARS).map(|i| m.exp(i) as u64).sum()
}

pub(crate) fn is_power_of(q: u64, p: u64) -> bool {
    if p < 2 || q == 0 {
        return false;
    }
    let mut q = q;
    while q.is_multiple_of(p) {
        q /= p;
    }
    q == 1
}

fn sort_terms(terms: &mut [(Monomial, Scalar)], ring: &Ring) {
    let order = ring.order();
    let n = ring.nvars();
    terms.sort_unstable_by(|a, b| order.compare(&b.0, &a.0, n));
}

pub(crate) fn render_monomial(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, v) in vars.iter().enumerate() {
        match m.exp(i) {
            0 => {}
            1 => parts.push(v.clone()),
            e => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono = render_monomial(m, self.ring.vars());
            let coeff = field.render(c);
            let term = if mono.is_empty() {
                coeff
            } else if coeff == "1" {
                mono
            } else if coeff == "-1" {
                format!("-{mono}")
            } else {
                format!("{coeff}*{mono}")
            };
            if k > 0 && !term.starts_with('-') {
                write!(f, "+")?;
            }
            write!(f, "{term}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomials from different rings")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomials from different rings")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial product failed")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&self.field().from_i64(-1))
    }
}
