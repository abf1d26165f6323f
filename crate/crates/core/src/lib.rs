//! Exact parabolic cohomology of local systems on the punctured sphere.
//!
//! The crate computes the braid companion W_g = H_g/E_g of a tuple of matrices with
//! product one, the monodromy of braid moves on it, and the Nielsen-class orbit data
//! needed to drive those moves for a finite matrix group.

pub mod braidact;
pub mod error;
pub mod exactla;
pub mod exactnum;
pub mod fingrp;
pub mod hurworb;
pub mod locsys;
pub mod scenarios;

pub use error::{Error, Result};
