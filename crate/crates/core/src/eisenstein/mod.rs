//! Exact arithmetic, factorization and enumeration in `Z[ω]`.

pub mod enumerate;
pub mod factor;
pub mod ring;

pub use enumerate::{count_primary, enumerate_primary, primary_primes, rational_primes, SquarefreeElement, SquarefreeTable};
pub use factor::{factor, is_squarefree, mobius, split_prime, Factorization, FACTOR_NORM_LIMIT};
pub use ring::EisensteinInt;
