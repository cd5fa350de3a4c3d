//! The cocycle twist of the quantum grassmannian and the cycling isomorphism.

pub mod cocycle;
pub mod minorset;
pub mod theta;
pub mod twisted;

pub use cocycle::{check_cocycle_identity, cocycle_value, Cocycle};
pub use minorset::{cycle_minor_set, domain_probe, DomainProbe, MinorSet};
pub use theta::{
    theta_minor, verify_composite, verify_theta_transport, verify_twisted_qmatrix, verify_z_model, Models,
};
pub use twisted::{Carrier, TwistModel, TwistedElement};
