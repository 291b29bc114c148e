//! Dense exponent-vector monomials and the monomial orders the engine uses.

use std::cmp::Ordering;
use std::fmt;

/// Upper bound on the number of variables of a ring, auxiliary variables
/// included.
pub const MAX_VARS: usize = 16;

/// A monomial `x^a` stored as a dense exponent vector. Slots beyond the
/// ring's arity are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: [u32; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS] };

    /// Panics if `exps.len() > MAX_VARS`; rings enforce the arity bound.
    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::ONE;
        m.exps[..exps.len()].copy_from_slice(exps);
        m
    }

    pub fn var(i: usize, e: u32) -> Self {
        let mut m = Monomial::ONE;
        m.exps[i] = e;
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    #[inline]
    pub fn exponents(&self) -> &[u32; MAX_VARS] {
        &self.exps
    }

    pub fn set_exp(&mut self, i: usize, e: u32) {
        self.exps[i] = e;
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Product, or `None` on exponent overflow.
    #[inline]
    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].checked_add(other.exps[i])?;
        }
        Some(out)
    }

    /// Product; panics on exponent overflow.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    /// `self^k`, or `None` on overflow.
    pub fn checked_pow(&self, k: u32) -> Option<Monomial> {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].checked_mul(k)?;
        }
        Some(out)
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self | other`.
    #[inline]
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = other.exps[i] - self.exps[i];
        }
        out
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].max(other.exps[i]);
        }
        out
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].min(other.exps[i]);
        }
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit `i` is set iff variable `i` occurs.
    #[inline]
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// Which family of monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderKind {
    Lex,
    GrevLex,
    /// The first `k` variables (in permuted position) form a block compared
    /// before the remaining ones; both blocks use grevlex. Used for
    /// elimination.
    Block(usize),
}

/// A monomial order together with the variable precedence it uses.
/// `perm[0]` is the largest variable; an empty `perm` means declaration
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    perm: Vec<usize>,
}

impl MonomialOrder {
    pub fn lex() -> Self {
        MonomialOrder { kind: OrderKind::Lex, perm: Vec::new() }
    }

    pub fn grevlex() -> Self {
        MonomialOrder { kind: OrderKind::GrevLex, perm: Vec::new() }
    }

    pub fn block(k: usize) -> Self {
        MonomialOrder { kind: OrderKind::Block(k), perm: Vec::new() }
    }

    /// An order of the given kind with an explicit variable precedence.
    /// `perm` must be a permutation of `0..perm.len()`.
    pub fn with_perm(kind: OrderKind, perm: Vec<usize>) -> Self {
        let mut seen = vec![false; perm.len()];
        for &i in &perm {
            assert!(i < perm.len() && !seen[i], "not a permutation: {perm:?}");
            seen[i] = true;
        }
        let identity = perm.iter().enumerate().all(|(i, &p)| i == p);
        MonomialOrder { kind, perm: if identity { Vec::new() } else { perm } }
    }

    /// An elimination order for the variables in `block` (indices into a
    /// ring of `n` variables): block variables first, then the rest, each in
    /// declaration order.
    pub fn elimination(block: &[usize], n: usize) -> Self {
        let mut perm: Vec<usize> = block.to_vec();
        perm.sort_unstable();
        perm.dedup();
        let k = perm.len();
        perm.extend((0..n).filter(|i| !block.contains(i)));
        MonomialOrder::with_perm(OrderKind::Block(k), perm)
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Parses `lex`, `grevlex` or `elim:K`.
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "lex" => Some(Self::lex()),
            "grevlex" => Some(Self::grevlex()),
            _ => {
                let k = name.strip_prefix("elim:")?.parse().ok()?;
                Some(Self::block(k))
            }
        }
    }

    pub fn name(&self) -> String {
        let base = match self.kind {
            OrderKind::Lex => "lex".to_string(),
            OrderKind::GrevLex => "grevlex".to_string(),
            OrderKind::Block(k) => format!("elim:{k}"),
        };
        if self.perm.is_empty() {
            base
        } else {
            format!("{base}{:?}", self.perm)
        }
    }

    #[inline]
    fn var_at(&self, pos: usize) -> usize {
        if self.perm.is_empty() {
            pos
        } else {
            self.perm[pos]
        }
    }

    /// Compares `a` and `b` on the `n` leading variables.
    pub fn compare(&self, a: &Monomial, b: &Monomial, n: usize) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for pos in 0..n {
                    let v = self.var_at(pos);
                    match a.exps[v].cmp(&b.exps[v]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::GrevLex => self.grevlex_range(a, b, 0, n),
            OrderKind::Block(k) => {
                let k = k.min(n);
                match self.grevlex_range(a, b, 0, k) {
                    Ordering::Equal => self.grevlex_range(a, b, k, n),
                    o => o,
                }
            }
        }
    }

    fn grevlex_range(&self, a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
        if self.perm.is_empty() && lo == 0 {
            let da = a.degree();
            let db = b.degree();
            if da != db {
                return da.cmp(&db);
            }
            for v in (0..hi).rev() {
                match a.exps[v].cmp(&b.exps[v]) {
                    Ordering::Equal => continue,
                    o => return o.reverse(),
                }
            }
            return Ordering::Equal;
        }
        let (mut da, mut db) = (0u64, 0u64);
        for pos in lo..hi {
            let v = self.var_at(pos);
            da += a.exps[v] as u64;
            db += b.exps[v] as u64;
        }
        if da != db {
            return da.cmp(&db);
        }
        for pos in (lo..hi).rev() {
            let v = self.var_at(pos);
            match a.exps[v].cmp(&b.exps[v]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::grevlex()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_tie_break() {
        // xz vs yz: equal degree, z exponents tie, y exponent decides.
        let o = MonomialOrder::grevlex();
        assert_eq!(o.compare(&m(&[1, 0, 1]), &m(&[0, 1, 1]), 3), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 0, 2]), &m(&[0, 1, 1]), 3), Ordering::Less);
        // x^2 z < x y^2 in grevlex but > in lex
        assert_eq!(o.compare(&m(&[2, 0, 1]), &m(&[1, 2, 0]), 3), Ordering::Less);
        assert_eq!(MonomialOrder::lex().compare(&m(&[2, 0, 1]), &m(&[1, 2, 0]), 3), Ordering::Greater);
    }

    #[test]
    fn elimination_puts_block_first() {
        // eliminate t = var 2 from k[x,y,t]: any t-power beats t-free terms
        let o = MonomialOrder::elimination(&[2], 3);
        assert_eq!(o.compare(&m(&[0, 0, 1]), &m(&[5, 5, 0]), 3), Ordering::Greater);
        assert_eq!(o.compare(&m(&[2, 0, 0]), &m(&[0, 1, 0]), 3), Ordering::Greater);
    }

    #[test]
    fn order_names_round_trip() {
        for name in ["lex", "grevlex", "elim:2"] {
            assert_eq!(MonomialOrder::from_name(name).unwrap().name(), name);
        }
        assert!(MonomialOrder::from_name("deglex").is_none());
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..6, 4).prop_map(|v| Monomial::from_exponents(&v))
    }

    fn arb_order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::lex()),
            Just(MonomialOrder::grevlex()),
            (0usize..=4).prop_map(MonomialOrder::block),
            Just(MonomialOrder::elimination(&[1, 3], 4)),
            Just(MonomialOrder::with_perm(OrderKind::Lex, vec![3, 1, 0, 2])),
        ]
    }

    proptest! {
        #[test]
        fn order_axioms(a in arb_mono(), b in arb_mono(), c in arb_mono(), o in arb_order()) {
            let ab = o.compare(&a, &b, 4);
            prop_assert_eq!(ab, o.compare(&b, &a, 4).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            if ab == Ordering::Less {
                prop_assert_eq!(o.compare(&a.mul(&c), &b.mul(&c), 4), Ordering::Less);
            }
            prop_assert_ne!(o.compare(&Monomial::ONE, &a, 4), Ordering::Greater);
        }
    }
}
