//! Coefficient bounds and the constructive objects behind them.

pub mod antiderivative;
pub mod coefficients;
pub mod dilation;
pub mod fixed_point;
pub mod region_a2;
pub mod sharpness;

pub use antiderivative::{b_a, b_a_taylor, max_boundary_ba, v_of_omega, v_of_x};
pub use coefficients::{
    cauchy_schwarz_bound, conjecture_bound, fmt17, rogosinski_check, BoundRow, BoundTable, RogosinskiReport,
    BOUND_TABLE_HEADER,
};
pub use dilation::{f_from_dilation, f_quadratic, f_root_in_unit_interval, r_star, root_predicted};
pub use fixed_point::{fixed_point_zero, FixedPointWitness};
pub use region_a2::{c_omega, c_omega_curve, RegionA2};
pub use sharpness::{sharp_a2_boundary_max, sharp_a2_real_base, BoundaryMaxSharpness, RealBaseSharpness};
