//! Private quantum channels, conditional expectations and trace vectors.
//!
//! The crate works with dense complex matrices throughout:
//!
//! - [`matrix`]: tensor products, direct sums, partial traces, numerical
//!   nullspaces and positivity tests.
//! - [`channel`]: channels in Kraus form, Choi matrices, the depolarizing
//!   and random-unitary families.
//! - [`bloch`]: the affine Bloch-sphere picture of qubit channels and the
//!   classification of private states of unital qubit channels.
//! - [`algebra`]: block-form C*-algebras, trace vectors and separating
//!   vectors.
//! - [`condexp`]: conditional expectation channels, axiom checks and private
//!   quantum channel verification.
//!
//! ```
//! use pqclab_core::{bloch, condexp, AlgebraSpec, PrivateStateSet, Tolerance};
//!
//! let tol = Tolerance::default();
//! let dephasing = condexp::condexp_channel(&AlgebraSpec::diagonal(2)).unwrap();
//! let set = bloch::classify(&dephasing, tol).unwrap();
//! assert!(matches!(set, PrivateStateSet::GreatCircle { .. }));
//! ```

pub mod algebra;
pub mod bloch;
pub mod channel;
pub mod condexp;
pub mod error;
pub mod matrix;
pub mod random;

pub use algebra::{AlgebraSpec, TraceVectorReport};
pub use bloch::{BlochVector, PauliTransfer, PrivateStateSet};
pub use channel::{Channel, DensityOperator};
pub use condexp::{AxiomReport, PQCInstance, PqcVerdict};
pub use error::{Error, Result};
pub use matrix::{CMatrix, CVector, Tolerance, C64};
