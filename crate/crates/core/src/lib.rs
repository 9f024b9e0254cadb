//! Reeb dynamics of toric contact forms on T³, the degree-0 embedded contact
//! homology of `(T³, ξ0)`, the homology algebra of torus surgeries, and index
//! arithmetic on intersection-form models of closed 4-manifolds.

pub mod census;
pub mod contact;
pub mod conventions;
pub mod document;
pub mod ech;
pub mod error;
pub mod flow;
pub mod index;
pub mod surgery;
pub mod trig;

pub use census::{
    bourgeois_census, degree_zero_generators, enumeration_radius, find_families, DegreeZeroGenerator,
    MorseBottFamily, OrbitCensus, OrbitClass, OrbitKind, PerturbedOrbit,
};
pub use contact::{
    reeb_sample, reeb_sample_exact, rotation_sign_profile, validate_contact, ReebSample, Sign, ToricContactForm,
    ValidationReport,
};
pub use conventions::{Conventions, HIdentification};
pub use document::{DocumentError, WorkspaceDocument};
pub use ech::{act_contactomorphism, contact_invariant, gr_from_surgeries, h_class, h_class_with, EchZeroClass, GrTriple};
pub use error::{CensusError, ContactError, EchError, IndexError, SurgeryError};
pub use flow::{numeric_flow_oracle, Closure};
pub use index::{
    chamber_side, d_invariant, ech_index_closed, gr_sw_bridge, lift_invariance_check, ChamberData, ChamberSide,
    FourManifoldModel, LiftCheck, LiftTarget, SpinCClass,
};
pub use surgery::{
    assemble_swl, complete_sl3, is_luttinger, phi_n, predict_surgery, product_formula, solve_gromov,
    GromovEquation, GromovSolution, LocalTorusInvariant, TorusDiffeo,
};
pub use num_rational::BigRational;
pub use trig::{rat, TrigPoly};
