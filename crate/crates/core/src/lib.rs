//! Area sequences of Dyck paths and the iterative zeta map.
//!
//! * [`dyck`]: validated area sequences, step words, lexicographic enumeration
//!   and Catalan numbers.
//! * [`stats`]: the area, dinv and bounce statistics.
//! * [`zeta`]: admissible insertions, the map ψ = ζ⁻¹ and its inverse.
//! * [`lab`]: exhaustive invariant checks and joint distribution matrices,
//!   parallel over prefix partitions when the `parallel` feature is on.
//! * [`render`] and [`cli`]: terminal front end.
//!
//! ```
//! use areaseq::{psi, psi_inverse, stats, AreaSequence};
//!
//! let w: AreaSequence = "0121".parse().unwrap();
//! let image = psi(&w);
//! assert_eq!(image.to_string(), "0,0,1,0");
//! assert_eq!(stats::dinv(&image), stats::area(&w));
//! assert_eq!(stats::area(&image), stats::bounce(&w));
//! assert_eq!(psi_inverse(&image), w);
//! ```

pub mod cli;
pub mod dyck;
pub mod error;
pub mod lab;
pub mod render;
pub mod stats;
pub mod zeta;

pub use dyck::{catalan, enumerate, parse_word, validate, AreaSequence, Step, StepWord, ValidationReport};
pub use error::{Error, Result};
pub use lab::{
    partitioned_enumerate, qt_matrix, verify, Check, Execution, LabConfig, QtMatrix, Statistic, VerifyReport,
};
pub use zeta::{
    admissible, insert, last_insertion_point, psi, psi_inverse, psi_step, psi_trace, AdmissibleInsertions, PsiTrace,
};
