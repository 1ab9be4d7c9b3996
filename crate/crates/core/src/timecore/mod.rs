//! Time meshes, quadrature, broken polynomial functions and the discrete
//! time-derivative forms.

mod basis;
mod broken;
mod forms;
mod mesh;
mod quadrature;

pub use basis::{legendre, slab_mass_matrix, LegendreValues};
pub use broken::{BrokenFunction, Side, SlabPoly};
pub use forms::{dh_form, dh_star_form};
pub use mesh::TimeMesh;
pub use quadrature::{gauss_legendre, Quadrature, MAX_GAUSS_POINTS};
