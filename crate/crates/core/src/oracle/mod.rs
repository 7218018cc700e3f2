//! Independent referees: a breadth-first search for reduced representatives,
//! checks of the Q_n polynomials, ghost-component validation of the cached
//! universal polynomials, and generator sampling for fil'_n.

mod brute;
mod polynomials;

pub use brute::{brute_reduce, BruteConfig, BruteResult};
pub use polynomials::{
    fil_prime_generator_sample, validate_context, verify_q_identity, verify_q_symbolic,
    FilPrimeReport, QIdentityReport,
};
