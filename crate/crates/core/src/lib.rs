//! Robustness of multi-qubit entanglement under independent local
//! depolarizing noise.
//!
//! The crate quantifies how much per-qubit depolarization an entangled state
//! survives, using the partial-transpose criterion across bipartite cuts:
//!
//! - [`linalg`]: dense complex matrices, Kronecker products, a Hermitian
//!   Jacobi eigensolver, and spectral matrix exponentials.
//! - [`states`]: GHZ, W/Dicke, and the other named comparison states.
//! - [`ketparse`]: a bra-ket expression mini-language for user-supplied states.
//! - [`channels`]: per-qubit depolarizing channels (two independent
//!   implementations), random-basis measurement averaging, and probabilistic
//!   computational-basis measurement.
//! - [`separability`]: partial transposition, NPT classification over all
//!   cuts, partial trace, entropy, Schmidt rank.
//! - [`robustness`]: critical-depolarization search by bisection plus the
//!   GHZ closed forms.
//! - [`squeezing`]: spin-squeezing parameter, one-axis twisting, and the
//!   closed-form noise bound for squeezed states.

pub mod channels;
pub mod error;
pub mod ketparse;
pub mod linalg;
pub mod robustness;
pub mod separability;
pub mod squeezing;
pub mod states;
pub mod testing;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Spectrum};
pub use states::{DensityMatrix, NamedState, QubitSubset, StateVector};
