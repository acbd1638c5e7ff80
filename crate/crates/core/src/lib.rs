//! Depth-optimal scheduling of quantum circuits on linear nearest neighbour
//! chains.
//!
//! Everything is built on one schedule, the skeleton: the gate on wires
//! `(a, b)` runs in stage `a + b` and is followed by a SWAP of the same pair,
//! which reverses the chain after `2n - 3` stages. The QFT, linear reversible
//! circuits, stabilizer circuits and CSS encoders are all laid out on it.
//!
//! ```
//! use chainforge::qft::{qft_lnn, QftSpec};
//!
//! let sc = qft_lnn(&QftSpec::new(5).unwrap());
//! assert_eq!(sc.circuit().two_qubit_layer_count(), 14);
//! assert!(sc.arch().validate(sc.circuit()).is_ok());
//! ```

pub mod arch;
pub mod bounds;
pub mod circuit;
pub mod css;
pub mod error;
pub mod gate;
pub mod gf2;
pub mod linsynth;
pub mod oracle;
pub mod perm;
pub mod qasm;
pub mod qft;
pub mod schedule;
pub mod skeleton;
pub mod stabilizer;
pub mod text;

pub use arch::Architecture;
pub use circuit::Circuit;
pub use error::{Error, Result};
pub use gate::{Gate, GateKind};
pub use gf2::Gf2Matrix;
pub use perm::Permutation;
pub use schedule::ScheduledCircuit;
