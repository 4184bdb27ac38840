//! Guessing, analysing and factorising linear differential operators from
//! truncated power series over prime fields and the rationals.

pub mod catalog;
pub mod crt;
pub mod error;
pub mod factor;
pub mod field;
pub mod guess;
pub mod linalg;
pub mod local;
pub mod op;
pub mod poly;
pub mod polyfactor;
pub mod series;
pub mod textio;

pub use error::{Error, Result};
