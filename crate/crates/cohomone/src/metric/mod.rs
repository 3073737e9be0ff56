//! Invariant metrics on the Brieskorn family as profile functions along a normal geodesic.

mod curve;
mod presets;
mod profile;
mod random;
mod smoothness;

pub use curve::{Curve, Jet};
pub use presets::{preset_round, preset_stiefel, PRESET_KNOTS};
pub use profile::{Functions, MetricJet, MetricProfile};
pub use random::{random_admissible, Ansatz};
pub use smoothness::{smoothness_check, Clause, SmoothnessReport, PD_GRID};
