//! Builders for named partitions, bodies, counterexamples and the hexagonal subdivision.

mod counterexamples;
mod hex;
mod perturb;
pub mod random;
mod standard;

pub use counterexamples::{
    circle8_counterexample, heptagon_counterexample, heptagon_rho_range, search_heptagon,
    CounterexampleSpec, HeptagonProbe, HeptagonSearch, CIRCLE8_INNER_RADIUS,
};
pub use hex::{hex_cell_diameter, hex_subdivision, HexLattice};
pub use perturb::perturb_partition;
pub use standard::{d_m_standard_formula, optimal_body, quotient, standard_partition};
