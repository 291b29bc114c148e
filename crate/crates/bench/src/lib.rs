//! Workload builders shared by the criterion benches.

use std::sync::Arc;

use tightlab_core::{parse_poly, Field, Flags, Ideal, MonomialOrder, PolyMatrix, PresentedAlgebra, Ring};

pub fn ring(p: u32, vars: &[&str]) -> Arc<Ring> {
    let field = if p == 0 { Field::Rational } else { Field::Prime(p) };
    Ring::new(field, vars, MonomialOrder::grevlex()).expect("valid ring")
}

pub fn ideal(ring: &Arc<Ring>, gens: &[&str]) -> Ideal {
    Ideal::new(ring, gens.iter().map(|g| parse_poly(ring, g).expect("valid polynomial")).collect())
        .expect("valid ideal")
}

/// `F_p[x,y,z]/(x^3+y^3+z^3)` with the reduced and equidimensional flags.
pub fn fermat_cubic(p: u32) -> PresentedAlgebra {
    let r = ring(p, &["x", "y", "z"]);
    let flags = Flags { assume_equidimensional: true, assume_reduced: true };
    PresentedAlgebra::from_ideal(ideal(&r, &["x^3+y^3+z^3"]), flags)
}

/// A dense `n x n` matrix of linear forms `x_{(i+j) mod k}` plus constants.
pub fn circulant(n: usize) -> PolyMatrix {
    let names = ["a", "b", "c", "d", "e", "f"];
    let r = ring(7, &names);
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| parse_poly(&r, &format!("{}+{}", names[(i + j) % names.len()], (i * n + j) % 5)).unwrap())
                .collect()
        })
        .collect();
    let labels: Vec<String> = (0..n).map(|i| format!("r{i}")).collect();
    PolyMatrix::new(&r, entries, labels.clone(), labels).expect("rectangular")
}

/// Three generic-looking cubics in three variables over `F_32003`.
pub fn cubic_system() -> Ideal {
    let r = ring(32003, &["x", "y", "z"]);
    ideal(&r, &["x^3+2*x*y*z-z^2", "y^3-x^2*z+3*y", "z^3+x*y^2-5*x"])
}
