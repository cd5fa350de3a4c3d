//! The quantum grassmannian `O_q(G(m,n))` inside `O_q(M_{m,n})`.

pub mod dehom;
pub mod localize;
pub mod quasi;
pub mod relations;

pub use dehom::{dehom_x, phi_of_minor, rho, rho_any, sigma_exponent, verify_dehom_qmatrix, PhiImage};
pub use localize::{Localization, LocalizedElement};
pub use quasi::{
    consecutive_normality_table, quasi_exponent, verify_consecutive_normality, NormalityEntry, QuasiExponent,
};
pub use relations::{
    evaluate_terms, muir_extend, nonautomorphism_witness, quadratic_relations, relation_in_span, MinorTable,
    QuadraticRelation, RelationTerm,
};
