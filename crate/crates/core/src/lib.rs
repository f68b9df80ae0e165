//! Exact arithmetic and combinatorics for the Pascal-rule cellular automaton
//! over `Z/nZ`.
//!
//! The automaton maps a sequence `(a_j)` to its derived sequence
//! `(a_j + a_{j+1})`. Iterating it from a finite sequence produces a
//! Steinhaus triangle; other windows of the orbit give trapezoids, Pascal
//! triangles and lozenges. A multiset in `Z/nZ` is *balanced* when every
//! residue occurs equally often.
//!
//! Modules, bottom-up:
//!
//! - [`residue`]: residues, multiplicity tables and the balance predicate.
//! - [`sequence`]: finite sequences, interlaced arithmetic progressions and
//!   the universal sequence with its closed forms.
//! - [`figure`]: construction, rotation and rendering of every figure kind.
//! - [`idao`]: exact integer matrices (circulant, Toeplitz, Wendt), rank and
//!   kernel, and the interlaced doubly arithmetic orbit system.
//! - [`lab`]: balance sweeps over families of figures, admissible orders and
//!   proportion reports.
//! - [`search`]: exhaustive parallel search for balanced figures.
//! - [`tetra`]: the two-dimensional automaton and its tetrahedra.

pub mod error;
pub mod figure;
pub mod idao;
pub mod lab;
pub mod residue;
pub mod search;
pub mod sequence;
pub mod tetra;

mod binomial;

pub use error::{Error, Result};
pub use figure::{Figure, FigureKind, FigureParams};
pub use residue::{MultiplicityTable, Residue};
pub use sequence::{FiniteSeq, IapSpec, Ring, Weights};
