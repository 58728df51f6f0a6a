//! knotforge: a knot-diagram computation toolkit.
//!
//! The crate works with oriented link diagrams in PD encoding and provides:
//!
//! - parsing and serialization (PD text, signed Gauss codes, JSON),
//! - exact polynomial invariants (Kauffman bracket, Jones, Alexander via
//!   Fox calculus, determinant) and genus bounds from Seifert's algorithm,
//! - a budgeted Reidemeister simplification search that emits replayable
//!   move traces,
//! - a three-valued classifier (`Unknot`/`Unlink` with a trace, `Knotted`
//!   with an invariant certificate, `Unknown` with a budget report),
//! - exhaustive verification and search of strong trivializers (crossing
//!   sets all of whose nonempty subset changes unknot the diagram),
//! - a generator for a doubling family of strongly trivial knots together
//!   with their auxiliary Brunnian links, and
//! - an auditor for the genus bound `m <= 3g - 2` on verified orders.

pub mod diagram;
pub mod invariants;
pub mod moves;
pub mod poly;

pub use diagram::{Crossing, Diagram, DiagramError, ErrorKind};
pub use invariants::GenusBracket;
pub use moves::{apply_move, enumerate_moves, is_trivial_diagram, simplify, Move, MoveKind, MoveTrace, SearchBudget};
pub use poly::{LaurentPoly, Var};
