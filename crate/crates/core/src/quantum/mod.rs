//! Small-dimension complex linear algebra: state vectors, density matrices,
//! Bloch geometry and purity.

mod bloch;
mod density;
mod state;

pub use bloch::{bloch_from_density, bloch_from_pure, BlochVector};
pub use density::{
    density_from_pure, eigen2, mix, purity, reduced_density, DensityMatrix, Ensemble,
};
pub use state::{
    basis_state, format_amp, inner_product, ket_label, pure_from_angles, tensor, ComplexAmp,
    PureState,
};
