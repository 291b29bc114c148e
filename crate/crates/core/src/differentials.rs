//! Jacobian matrices, determinantal ideals and the Jacobian criterion.
//!
//! Ideals of `R = T/I` are carried as their preimages in `T`, so every
//! Fitting ideal, Jacobian ideal and singular-locus ideal returned here
//! already contains the defining ideal.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::arith::{Polynomial, Ring};
use crate::dimension::{is_equiheight, ComponentData, PresentedAlgebra};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::ideal_ops::intersect;

/// Label attached to regularity statements in positive characteristic.
pub const PERFECT_BASE_CAVEAT: &str = "smoothness criterion (perfect base)";

/// Caveats that apply to Jacobian-criterion output over `ring`.
pub fn smoothness_caveats(ring: &Ring) -> Vec<&'static str> {
    if ring.characteristic() == 0 {
        Vec::new()
    } else {
        vec![PERFECT_BASE_CAVEAT]
    }
}

/// A rectangular matrix of polynomials with row and column labels.
#[derive(Clone, Debug)]
pub struct PolyMatrix {
    ring: Arc<Ring>,
    entries: Vec<Vec<Polynomial>>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

impl PolyMatrix {
    pub fn new(
        ring: &Arc<Ring>,
        entries: Vec<Vec<Polynomial>>,
        row_labels: Vec<String>,
        col_labels: Vec<String>,
    ) -> Result<Self> {
        if entries.len() != row_labels.len() {
            return Err(Error::InvalidArgument(format!(
                "{} rows but {} row labels",
                entries.len(),
                row_labels.len()
            )));
        }
        if col_labels.len() > 32 || entries.len() > 32 {
            return Err(Error::InvalidArgument("matrix larger than 32x32".into()));
        }
        let mut rows = Vec::with_capacity(entries.len());
        for (i, row) in entries.into_iter().enumerate() {
            if row.len() != col_labels.len() {
                return Err(Error::InvalidArgument(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    col_labels.len()
                )));
            }
            let mut out = Vec::with_capacity(row.len());
            for e in row {
                out.push(e.rehome(ring)?);
            }
            rows.push(out);
        }
        Ok(PolyMatrix { ring: ring.clone(), entries: rows, row_labels, col_labels })
    }

    pub fn zero(ring: &Arc<Ring>, rows: usize, cols: usize) -> Result<Self> {
        let entries = vec![vec![Polynomial::zero(ring); cols]; rows];
        let rl = (1..=rows).map(|i| format!("r{i}")).collect();
        let cl = (1..=cols).map(|j| format!("c{j}")).collect();
        PolyMatrix::new(ring, entries, rl, cl)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows(), self.cols())
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    /// Appends a row; used to add redundant relations.
    pub fn push_row(&mut self, label: String, row: Vec<Polynomial>) -> Result<()> {
        if row.len() != self.cols() {
            return Err(Error::InvalidArgument(format!("row has {} entries, expected {}", row.len(), self.cols())));
        }
        let mut out = Vec::with_capacity(row.len());
        for e in row {
            out.push(e.rehome(&self.ring)?);
        }
        self.entries.push(out);
        self.row_labels.push(label);
        Ok(())
    }

    /// Entries as display strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// `(∂f_i/∂x_j)` over the nonzero defining relations.
pub fn jacobian_matrix(r: &PresentedAlgebra) -> PolyMatrix {
    let ring = r.ring();
    let rels = r.relations();
    let entries: Vec<Vec<Polynomial>> =
        rels.iter().map(|f| (0..ring.nvars()).map(|j| f.derivative(j)).collect()).collect();
    let row_labels = (1..=rels.len()).map(|i| format!("f{i}")).collect();
    PolyMatrix::new(ring, entries, row_labels, ring.vars().to_vec()).expect("jacobian is rectangular")
}

struct MinorTable<'a> {
    m: &'a PolyMatrix,
    memo: HashMap<(u32, u32), Polynomial>,
}

impl MinorTable<'_> {
    fn det(&mut self, rows: u32, cols: u32) -> Polynomial {
        if rows == 0 {
            return Polynomial::one(&self.m.ring);
        }
        if let Some(d) = self.memo.get(&(rows, cols)) {
            return d.clone();
        }
        let top = rows.trailing_zeros() as usize;
        let rest = rows & (rows - 1);
        let mut acc = Polynomial::zero(&self.m.ring);
        let mut bits = cols;
        let mut k = 0;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let a = &self.m.entries[top][j];
            if !a.is_zero() {
                let sub = self.det(rest, cols & !(1 << j));
                let term = a * &sub;
                acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            k += 1;
        }
        self.memo.insert((rows, cols), acc.clone());
        acc
    }
}

fn subsets(n: usize, k: usize) -> Vec<u32> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    for s in 0u64..(1u64 << n) {
        if s.count_ones() as usize == k {
            out.push(s as u32);
        }
    }
    out
}

/// All nonzero `r × r` minors, made monic and deduplicated, in
/// enumeration order.
pub fn minor_list(m: &PolyMatrix, r: usize) -> Vec<Polynomial> {
    if r == 0 {
        return vec![Polynomial::one(&m.ring)];
    }
    let mut table = MinorTable { m, memo: HashMap::new() };
    let mut out: Vec<Polynomial> = Vec::new();
    for rows in subsets(m.rows(), r) {
        for cols in subsets(m.cols(), r) {
            let d = table.det(rows, cols);
            if !d.is_zero() {
                let d = d.monic();
                if !out.contains(&d) {
                    out.push(d);
                }
            }
        }
    }
    out
}

/// The ideal of `T` generated by all `r × r` minors; `r = 0` gives the unit
/// ideal and `r` beyond the matrix size gives zero.
pub fn minors(m: &PolyMatrix, r: usize) -> Ideal {
    Ideal::new(&m.ring, minor_list(m, r)).expect("minors share the matrix ring")
}

/// A Fitting ideal of a presentation matrix, as an ideal of `R`.
#[derive(Clone, Debug)]
pub struct FittingResult {
    pub index: usize,
    pub ideal: Ideal,
    pub matrix_shape: (usize, usize),
}

/// `𝒥_i`: minors of size `cols − i`, with the unit ideal when that size is
/// `≤ 0` and the zero ideal when it exceeds `min(rows, cols)`. The result is
/// taken modulo `defining`.
pub fn fitting_ideal(m: &PolyMatrix, i: usize, defining: &Ideal) -> Result<FittingResult> {
    let n = m.cols();
    let ideal = if i >= n {
        Ideal::unit(&m.ring)
    } else {
        let size = n - i;
        if size > m.rows().min(n) {
            defining.rehome(&m.ring)?
        } else {
            minors(m, size).sum(defining)?
        }
    };
    Ok(FittingResult { index: i, ideal, matrix_shape: m.shape() })
}

/// `𝒥_0, 𝒥_1, ..., 𝒥_cols`.
pub fn fitting_chain(m: &PolyMatrix, defining: &Ideal) -> Result<Vec<FittingResult>> {
    (0..=m.cols()).map(|i| fitting_ideal(m, i, defining)).collect()
}

/// `𝒥(R/K) = 𝒥_{n − bight(I)}`: minors of size `bight(I)` plus `I`.
pub fn jacobian_ideal(r: &PresentedAlgebra, components: &ComponentData) -> Result<Ideal> {
    r.ensure_proper()?;
    let jac = jacobian_matrix(r);
    let n = r.nvars();
    let bight = components.big_height();
    Ok(fitting_ideal(&jac, n - bight, r.defining_ideal())?.ideal)
}

/// A prime of `T`, either generated by variables (machine-verified) or
/// asserted prime by the user.
#[derive(Clone, Debug)]
pub struct PrimeWitness {
    pub ideal: Ideal,
    pub verified: bool,
}

impl PrimeWitness {
    /// Marks the witness verified exactly when its generators are variables.
    pub fn new(ideal: Ideal) -> Self {
        let verified = ideal.generators().iter().all(|g| {
            g.is_zero() || (g.is_monomial() && g.total_degree() == Some(1))
        });
        PrimeWitness { ideal, verified }
    }

    pub fn of_variables(ring: &Arc<Ring>, vars: &[usize]) -> Self {
        PrimeWitness { ideal: Ideal::of_variables(ring, vars), verified: true }
    }

    pub fn provenance(&self) -> &'static str {
        if self.verified {
            "generated-by-variables"
        } else {
            "user-asserted"
        }
    }
}

/// Determinantal rank of `m` at `q`: the largest `r` with an `r × r` minor
/// outside `q`.
pub fn rank_at_prime(m: &PolyMatrix, q: &PrimeWitness) -> Result<usize> {
    if q.ideal.is_unit() {
        return Err(Error::InvalidArgument("prime witness is the unit ideal".into()));
    }
    let q_ideal = q.ideal.rehome(&m.ring)?;
    for r in (1..=m.rows().min(m.cols())).rev() {
        for d in minor_list(m, r) {
            if !q_ideal.contains(&d)? {
                return Ok(r);
            }
        }
    }
    Ok(0)
}

/// Jacobian criterion at `q`: regular iff `𝒥_{n − ht_Q(I)} ⊄ q`, where
/// `ht_Q(I)` is the least height of a component inside `q`.
pub fn regular_at(r: &PresentedAlgebra, q: &PrimeWitness, components: &ComponentData) -> Result<bool> {
    r.ensure_proper()?;
    let q_ideal = q.ideal.rehome(r.ring())?;
    if q_ideal.is_unit() || !q_ideal.contains_ideal(r.defining_ideal())? {
        return Err(Error::PrimeDoesNotContainIdeal);
    }
    let ht = components.height_at(&q_ideal)?.ok_or(Error::PrimeDoesNotContainIdeal)?;
    let jac = jacobian_matrix(r);
    for d in minor_list(&jac, ht) {
        if !q_ideal.contains(&d)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// An ideal of `T` whose zero set in `Spec R` is the singular locus.
pub fn singular_locus(r: &PresentedAlgebra, components: &ComponentData) -> Result<Ideal> {
    if is_equiheight(r, components)? {
        return jacobian_ideal(r, components);
    }
    let jac = jacobian_matrix(r);
    let n = r.nvars();
    let mut acc: Option<Ideal> = None;
    for (p, &h) in components.primes().iter().zip(components.heights()) {
        let piece = fitting_ideal(&jac, n - h, r.defining_ideal())?.ideal.sum(p)?;
        acc = Some(match acc {
            None => piece,
            Some(a) => intersect(&a, &piece)?,
        });
    }
    acc.ok_or(Error::MissingComponents)
}
