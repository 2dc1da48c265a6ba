//! Finite posets, their order complexes, reduced homology over F_p, and
//! cellular chain complexes of CW posets.

mod band;
mod chain;
mod cw;
mod poset;
mod simplicial;

pub use band::{band_subposet, boundary_subposet, BandSubposet};
pub use chain::ChainComplex;
pub use cw::{cellular_chain_complex, incidence_numbers, is_cw_poset, IncidenceNumbers};
pub use poset::FinitePoset;
pub use simplicial::{order_complex, reduced_betti, ReducedBetti, SimplicialComplex};
