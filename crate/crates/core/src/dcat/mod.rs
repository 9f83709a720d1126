//! Bounded complexes as representatives of objects of the derived
//! category: shifts, cones, Hom and tensor totals, resolutions of
//! complexes, minimization, homology and the biduality and γ maps.

mod complex;
mod maps;
mod ops;
mod resolve;

pub use complex::{ChainMap, Complex, Window, INF};
pub use maps::{biduality_rep, gamma_rep};
pub use ops::{
    cone, direct_sum, from_module, hom_blocks, hom_complex, shift, shift_map, tensor_blocks, tensor_complex,
    truncate_quotient, truncation_map, Blocks,
};
pub use resolve::{
    homology_dims, homology_hs, homology_module, minimize, minimize_source, resolve_complex,
    DegreeHomology, HomologyDims,
};

/// Complexes in this crate carry optional relations per term; a free
/// complex is one where all of them are empty.
pub type FreeComplex<K> = Complex<K>;
