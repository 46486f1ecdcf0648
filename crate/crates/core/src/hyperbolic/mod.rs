//! Cocompact Fuchsian groups on the upper half-plane: element
//! classification, group constructions, orbit enumeration, and Dirichlet
//! fundamental domains.

pub mod bolza;
mod config;
mod dirichlet;
mod fenchel;
mod group;
mod moebius;
pub mod orbit;

pub use config::parse_group_config;
pub use dirichlet::{dirichlet_domain, dirichlet_domain_unchecked, DirichletDomain, DomainError};
pub use group::{build_group, relator_defect, FuchsianGroupModel, GroupError, GroupSpec, Provenance, RELATOR_TOL};
pub use moebius::{classify_element, hyp_dist, ElementClass, MoebiusElement, CLASSIFY_TOL};
