//! Exact computations for counting framings and tangential structures on the
//! manifolds `W_{g,1} = D^{2n} # (S^n × S^n)^{#g}` up to homotopy and
//! diffeomorphism.
//!
//! The crate is organised as integer linear algebra ([`exactlin`]), forms
//! and their isometries ([`forms`]), quadratic refinements ([`quad`]), orbit
//! enumeration ([`orbit`]), replayable low-genus computations
//! ([`witnesses`]), the classification itself ([`classifier`]), and the
//! golden verification suite ([`suite`]).

pub mod classifier;
pub mod error;
pub mod exactlin;
pub mod forms;
pub mod orbit;
pub mod quad;
pub mod suite;
pub mod witnesses;

pub use classifier::{classify_framings, classify_theta, FramingReport, ThetaInput, ThetaReport};
pub use error::{Error, Result};
pub use exactlin::{
    coinvariants, hom_cokernel, in_row_lattice, presentation_abelianization, smith_normal_form,
    AbGroupPresentation, AbHom, FinAbGroup, IntMatrix, SmithDecomposition,
};
pub use forms::{EpsSymmetricForm, Epsilon, Isometry};
pub use orbit::{orbits, GroupAction, OrbitDecomposition};
pub use quad::{F2Matrix, QuadraticRefinement};
pub use witnesses::{Provenance, WitnessReport};
