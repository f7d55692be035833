//! Quaternionic geometry of the cosets Sp(n)/Sp(k) x Sp(n-k), the matching
//! differential-operator realization of sp(n), radial solutions on S^4,
//! quaternionic electromagnetism and the C_n root system.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod config;
pub mod coset;
pub mod dynamics;
pub mod emfield;
pub mod error;
pub mod forms;
pub mod liealg;
pub mod poly;
pub mod quaternion;
pub mod quatmat;
pub mod roots;
pub mod s4lb;
pub mod sample;
pub mod verify;

pub use config::Tolerances;
pub use error::{Error, Result};
pub use quaternion::{Quaternion, M2C};
pub use quatmat::{GroupElement, QuatMatrix, ScalarFn};
