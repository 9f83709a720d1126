//! Finitely presented graded R-modules: minimal presentations, Hom,
//! tensor products, Ext, canonical maps and the canonical module.

mod functors;
mod presentation;

pub use functors::{
    canonical_module, evaluation_map, ext_module, hom_coordinates, hom_cohomology, hom_free,
    hom_modules, homothety_map, postcompose, precompose, resolution, syzygy, tensor_modules,
    HomModule,
};
pub use presentation::{
    minimal_presentation, minimize_tracked, subquotient, Minimized, ModuleMap,
    ModulePresentation,
};
pub(crate) use presentation::matrix_of;
