//! Galois data as finite group actions, and ranks of Homs between Artin
//! motives and twisted projective spaces.

mod etale;
mod gset;
mod hom;
mod perm;

pub use etale::{
    etale_from_matrix, recover_invariant, small_galois_groups, EtaleAlgebra, EtaleIngestion,
    InvariantVerdict,
};
pub use gset::{artin_hom_rank, burnside_count, orbit_count, GSet};
pub use hom::{generator_hom_rank, motive_hom_rank};
pub use perm::{Perm, PermGroup};
