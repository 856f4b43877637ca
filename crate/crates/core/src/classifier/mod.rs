//! Orbit counts and stabilisers of framings and θ-structures on `W_{g,1}`.

mod framing;
mod tables;
mod theta;

pub use framing::{
    classify_framings, image_of_h, rel_point_classification, theorem_a_orbits, BoundaryStabiliser,
    FramingReport, GroupName, Note, RelPointClass, Subgroup,
};
pub use tables::{
    h1_table, h1_table_citation, table_pi_2n_so_2n, table_s_pi_n_so_n, FiniteAbelianDescriptor,
    Genus, H1Family,
};
pub use theta::{
    classify_theta, stable_framing_preset, tautological_input, ThetaCase, ThetaInput,
    ThetaInputDoc, ThetaReport,
};
