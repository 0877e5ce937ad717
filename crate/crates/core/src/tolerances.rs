//! Pass/fail tolerances shared by the reproduction experiments and the acceptance suite.

/// Standard-partition formula vs direct evaluation.
pub const STANDARD_DM: f64 = 1e-6;
/// Closed-form `d_M` values for discs and regular polygons.
pub const EXACT_DM: f64 = 1e-9;
/// Allowed violation of a proven lower bound.
pub const LOWER_BOUND_SLACK: f64 = 1e-9;
/// Random trials per (body, k) in the falsification suites.
pub const FALSIFICATION_TRIALS: usize = 1000;
/// Reported heptagon value and the allowed deviation from it.
pub const HEPTAGON_REPORTED: f64 = 0.9892;
pub const HEPTAGON_WINDOW: f64 = 5e-3;
/// Window for the eight-region disc subdivision.
pub const CIRCLE8_RANGE: (f64, f64) = (0.86, 0.87);
/// Reported LP constant per region.
pub const LP_CONSTANT: f64 = 0.6884515;
pub const LP_WINDOW: f64 = 1e-6;
/// Printed decimals of the polygon-area table.
pub const M_TABLE_PRINTED: [(usize, f64); 4] =
    [(3, 0.433012), (5, 0.657163), (7, 0.719740), (9, 0.745619)];
pub const M_TABLE_WINDOW: f64 = 5e-6;
/// Optimal-body quotient margin and dilation invariance.
pub const QUOTIENT_MARGIN: f64 = 1e-6;
pub const QUOTIENT_DILATION: f64 = 1e-9;
/// Hexagonal construction slack over `d_k`.
pub const HEX_SLACK: f64 = 1e-5;
/// Minimal vertex displacement and allowed `d_M` drift of a perturbed partition.
pub const PERTURB_MIN_DISPLACEMENT: f64 = 0.01;
pub const PERTURB_DM_DRIFT: f64 = 1e-6;
