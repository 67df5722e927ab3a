//! Numeric representations on tensor powers of C^n: candidate Hermitian
//! generators, projector images, and the window checks on gamma.

mod dense;
mod props;
mod seeds;

pub use dense::{DenseOperator, DenseOperatorJson};
pub use props::{
    f_gamma, gamma0_root, projector_images, projector_tower_numeric, scan_gamma, t_k_matrix,
    tau_consistency, tau_consistency_at, tau_of_element, verify_prop3, verify_prop4, Prop3Report,
    Prop4Report, ScanRow, ScanTable, TauReport, MAX_TENSOR_DIM, PROP_NORM_TOL, PSD_EIG_TOL,
};
pub use seeds::{
    check_ttt, cubic_residual, quadratic_residual, r_unitarity_residual, rank_one_family,
    scan_rank_one_family, standard_r_seed, trivial_seed, yang_baxter_residual, AnsatzScanRow,
    HermitianHeckeSeed, Provenance, SeedJson, TtReport, HERM_TOL, TT_TOL,
};
