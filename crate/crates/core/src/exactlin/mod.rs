//! Exact integer linear algebra: Smith normal form, finitely generated
//! abelian groups, homomorphism cokernels and coinvariants.

mod abelian;
pub mod json;
mod matrix;
mod smith;

pub use abelian::{
    coinvariants, hom_cokernel, in_row_lattice, presentation_abelianization, AbGroupPresentation,
    AbHom, FinAbGroup,
};
pub use matrix::IntMatrix;
pub use smith::{smith_normal_form, SmithDecomposition};
