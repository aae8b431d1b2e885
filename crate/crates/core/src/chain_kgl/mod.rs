//! Combinatorics of the special fiber: partitions and flags, stratum
//! indices, chains of projective lines, and points of the local model.

mod admissible;
mod kgl;
mod partition;
mod strata;

pub use admissible::{check_admissible, ChainBundleDescription, ProjectiveChain, Summand};
pub use kgl::{flag_dims, HomothetyClass, KglPoint, Subquotient, Subspace};
pub use partition::{parabolic_flag, ParabolicFlag, Partition, Weight};
pub use strata::{
    chain_from_stratum, enumerate_strata, stratum_indices_from_chain, validate_stratum, ChainData,
    Stratum,
};
