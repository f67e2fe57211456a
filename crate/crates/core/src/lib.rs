//! Rainbow connection of random graphs: generators, colourings, the two-round
//! construction, the flag-and-recolour algorithm, exact oracles and Monte Carlo
//! experiments.

pub mod bits;
pub mod coloring;
pub mod danger;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod process;
pub mod recolor;
pub mod two_round;

pub use coloring::{color_edges_random, is_rainbow_connected, rainbow_two_path_count, Colour, EdgeColoring};
pub use danger::{audit_property_m, classify_pairs, MAuditReport, PairReport, DEFAULT_D};
pub use error::{Error, Result};
pub use graph::{gen_gnp, Diameter, Graph, Pair};
pub use oracle::{rc_at_most_2, rc_exact, OracleBudget, Rc2Answer, RcValue};
pub use process::{gen_weighted_process, EdgeWeights, ProcessSequence};
pub use recolor::{recolor, verify_rc2_coloring, RecolorFailure, RecolorOutcome, RecolorTrace};
pub use two_round::{build_two_round, TwoRoundOutput, TwoRoundParams};
