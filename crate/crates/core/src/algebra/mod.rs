//! Direct-product factorization and projectivity.

mod factor;
mod projective;

pub use factor::{factorize_prime, is_indecomposable, verify_factorization, Factorization};
pub use projective::{
    decomposable_nonprojective_witness, is_projective, validate_nonprojection, truly_projective_check,
    Projectivity, ProjectivityReport, TrulyProjectiveReport, WitnessClass, PROJECTIVITY_SIZE_CAP,
};
