//! Exact computer algebra for quantized enveloping algebras at generic `q`
//! and at roots of unity.
//!
//! The layers build on each other:
//!
//! - [`qscalar`]: exact coefficients (`Q`, `Q[q^±1]`, `Q(q)`, `Q(ζ)`) and root-of-unity data.
//! - [`rootlat`]: root systems, reduced words, lattices and Smith normal form.
//! - [`uqpbw`]: the generic algebra engine (pairing, braid action, PBW normal form).
//! - [`modrep`]: irreducible highest-weight modules as explicit matrices.
//! - [`uzeta`]: the specialized algebra, commutation laws, and the twist layer.
//! - [`center`]: central elements from traces and their Harish-Chandra images.
//! - [`frob`]: the rescaled root system, the Frobenius map and counting tables.
//! - [`report`]: verification suites producing machine-readable reports.
//! - [`runner`]: named suites with validated parameters.

pub mod center;
pub mod frob;
pub mod modrep;
pub mod qscalar;
pub mod report;
pub mod rootlat;
pub mod runner;
pub mod uqpbw;
pub mod uzeta;
