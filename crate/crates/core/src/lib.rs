//! Exact symbolic computation for the differential nilalgebras
//! `D_m = k₊{x}/[xᵐ]`.
//!
//! The crate implements, over arbitrary-precision rationals:
//!
//! - the differential polynomial ring `k{x}` with its bigrading, basis
//!   (`α_m`) monomials and monomial order ([`diffpoly`]);
//! - the Grassmann algebra Λ(V_m) with derivation ([`grassmann`]) and the
//!   embedding `φ_m : D_m → Λ₀(V_m)` with its injectivity witnesses
//!   ([`embedding`]);
//! - ideal-membership and normal-form oracles for `[xᵐ]`, with re-expandable
//!   certificates, dimension counts and nilpotency indices ([`ideal`]);
//! - the ring of differential operators over the quotient at m = 2, its
//!   nilpotency bound, and the primality witness searches ([`diffop`]);
//! - text grammars ([`parse`]), structured report records ([`records`]) and
//!   seeded samplers for the verification sweeps ([`sample`]).
//!
//! All values are immutable and all operations are pure; the only shared
//! state consists of idempotent memo tables for generator images and
//! generator derivatives.

pub mod diffop;
pub mod diffpoly;
pub mod embedding;
pub mod error;
pub mod grassmann;
pub mod ideal;
pub mod limits;
pub mod linalg;
pub mod parse;
pub mod rational;
pub mod records;
pub mod sample;

pub use diffop::{
    commutator, nil_bound, nil_index_operator, witness_corollary, witness_theorem2, DiffOperator,
    OperatorCoefficient, PrimalityWitness, WitnessOutcome,
};
pub use diffpoly::{
    compare_order, enumerate_alpha, enumerate_monomials, DiffMonomial, DiffPolynomial,
};
pub use embedding::{
    coefficient_of, injectivity_rank, mu_witness, phi, phi_generator, phi_power_nil_index,
    witness_matrix, WitnessMatrix,
};
pub use error::{Error, Result};
pub use grassmann::{weight_lower_bound, BasisVector, GeneratorKind, GrassmannElement, GrassmannMonomial};
pub use ideal::{
    component_dimension, derivation_kernel_dimension, generator_derivative, ideal_spanning_set,
    membership, nil_index_element, normal_form, normal_form_via_embedding, reduce,
    CertificateTerm, MembershipCertificate, NormalForm,
};
pub use parse::{parse_operator, parse_polynomial};
pub use rational::Rational;
