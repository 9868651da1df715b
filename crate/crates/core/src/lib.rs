//! Exact Virasoro minimal-model data and FFK braiding matrices.
//!
//! The crate is layered bottom-up:
//!
//! - [`exact_arith`]: rationals and cyclotomic fields, with a complex
//!   embedding used as an independent numeric check;
//! - [`minimal_model`]: central charges, conformal weights, Kac labels,
//!   admissible triples, fusion products and quantum dimensions;
//! - [`ffk_braiding`]: the Felder–Fröhlich–Keller r-matrix recursion and the
//!   braiding matrices assembled from it;
//! - [`voa_algebra`]: the 3C and 5A algebras built from tensor products of
//!   minimal models, their sector fusion, simple-current chains,
//!   structure-constant systems and module fusion rings.
//!
//! ```
//! use minimal_fusion::minimal_model::MinimalModel;
//!
//! let m = MinimalModel::new(7, 8).unwrap();
//! assert_eq!(m.central_charge().to_string(), "25/28");
//! ```

pub mod error;
pub mod exact_arith;
pub mod ffk_braiding;
pub mod minimal_model;
pub mod voa_algebra;

pub use error::{Error, Result};
