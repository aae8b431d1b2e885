//! Independence of the Gieseker germ from the choices made along the way:
//! node coordinates, branch order, and both trivializations.

mod random;
mod reparam;
mod swap;
mod trial;
mod triv;

pub use random::{
    random_cocycle, random_exponents, random_fp, random_germ, random_glue, random_invertible,
    random_nodal_invertible, random_nonzero, random_series, random_unit, GermSampler,
};
pub use reparam::{reparam_square_holds, reparam_transform, FiberMaps, NodeReparam};
pub use swap::{branch_swap_chart_holds, branch_swap_transform, swap_permutation, swapped_exponents};
pub use trial::{run_trial, CheckOutcome, TrialConfig, TrialReport};
pub use triv::{
    cond_on_a, eta_triv_chart_holds, eta_triv_transform, sample_eta_change, xi_triv_chart_holds,
    xi_triv_transform, EtaTrivChange,
};
