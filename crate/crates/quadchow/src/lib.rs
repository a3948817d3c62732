//! Exact intersection theory on a split quadric `X`, its powers `X^m`, and
//! the orthogonal grassmannians and partial flag varieties attached to it.
//!
//! The crate is `no_std` (it needs `alloc`). Chow rings of flag varieties are
//! realised through the Borel presentation: Schubert classes are obtained from
//! the point class by divided differences over signed-permutation Weyl groups,
//! and every structure constant is checked to be an integer before it is
//! exposed. Powers of the quadric use the explicit monomial basis in `h^a`,
//! `l_b` (and `l_d'` in even dimension), and the two models are tied together
//! by Künneth-mixed cycles in [`bridge`].

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bridge;
pub mod coeff;
pub mod context;
pub mod edi;
pub mod error;
pub mod polyring;
pub mod quadpow;
pub mod schubert;
pub mod verify;
pub mod weyl;

pub use coeff::CoeffRing;
pub use context::{Orientation, QuadricContext};
pub use error::{Error, Result};
