//! Computational commutative algebra for quotients of polynomial rings:
//! Gröbner bases, elimination-based ideal operations, dimension and height,
//! Jacobian and Fitting ideals, singular loci, and bounded tight-closure
//! certificates in characteristic `p`.

pub mod arith;
pub mod charp;
pub mod differentials;
pub mod dimension;
pub mod error;
pub mod expr;
pub mod groebner;
pub mod ideal_ops;

pub use arith::{Field, Monomial, MonomialOrder, OrderKind, Polynomial, Ring, Scalar};
pub use charp::{
    frobenius_closure_member, frobenius_power, krull_truncation_check, tc_certify_in, tc_refute_in,
    test_multiplier_harness, truncate_presentation, CharPContext, HarnessReport, HarnessStatus, KrullReport, TcStatus,
    TcVerdict, TruncationReport,
};
pub use differentials::{
    fitting_ideal, jacobian_ideal, jacobian_matrix, minors, rank_at_prime, regular_at, singular_locus, FittingResult,
    PolyMatrix, PrimeWitness,
};
pub use dimension::{
    big_height, height, is_equiheight, krull_dim, monomial_min_primes, verify_components, ComponentData, Flags,
    PresentedAlgebra, Provenance,
};
pub use error::{ComponentCheck, Error, ErrorKind, Result};
pub use expr::{parse_expr, parse_poly, parse_poly_list, Expr};
pub use groebner::{groebner_basis, ideal_member, normal_form, s_polynomial, GroebnerBasis, Ideal};
pub use ideal_ops::{eliminate, ideal_power, intersect, quotient, radical_member, saturate};
