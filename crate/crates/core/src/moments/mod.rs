//! Log-domain evaluation of the first and second moment quantities.

mod expectation;
mod logreal;
mod partition;
mod profile;
pub mod special;
mod variance;

pub use expectation::{gamma, gamma_prime, ln_b, log_expected_trees};
pub use logreal::{log_sum_exp, LogReal};
pub use partition::{default_w, partition_points, PartitionPoints, DEFAULT_W_EXPONENT};
pub use profile::{
    epsilon_closed_form, g_threshold, k_hat_closed_form, k_star, moment_profile, solve_k_hat, KHat,
    MomentProfile, Threshold, NEAR_TIE, ROOT_TOL,
};
pub use variance::{
    ln_f_hat, ln_h, ln_i_hat, ln_overlap_ratio, part1_log, r_star, regime, variance_ratio_bound,
    PartSum, Regime, Summand, VarianceBound,
};
