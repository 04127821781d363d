//! Numerical core for the diatomic image/label dataset pipeline.
//!
//! Everything here is pure computation over in-memory values: the toy
//! self-consistent-charge tight-binding engine ([`scc`]), scalar label
//! derivation ([`labels`]), the 10-channel image encoder ([`image`]) and the
//! dataset-level statistics ([`stats`]). The crate is `no_std` and only needs
//! `alloc`; file formats, the CLI and threading live in the `qcanvas` crate.
//!
//! Internally the engine works in atomic units (Hartree, bohr, e·bohr).
//! Conversion to eV / Å / Debye happens once, when a [`model::DiatomicRecord`]
//! is assembled.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod image;
pub mod labels;
pub mod linalg;
pub mod model;
pub mod scc;
pub mod stats;
pub mod units;

pub use image::{encode_tensor, ImageTensor};
pub use labels::{assemble_labels, ScalarLabels};
pub use model::{validate_record, DiatomicRecord, ElementParams, Shell};
pub use scc::{simulate_pair, RelaxOptions, SccOptions};
