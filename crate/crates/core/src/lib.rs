//! Link homology workbench over F2.
//!
//! Pipeline: planar diagram codes ([`diagram`]) feed a cube of resolutions
//! ([`khovanov`]) for reduced and unreduced Khovanov homology, a Goeritz-form
//! computation of link determinants and first homology of branched double
//! covers ([`branched`]), and a weight-filtered total complex whose spectral
//! sequence pages are computed by [`specseq`]. The [`hmr`] module provides
//! symbolic mapping-cone model complexes (reducible towers plus graded
//! irreducibles with a degree (-1) endomorphism) together with their Euler
//! characteristic arithmetic and the skein triangle rank check.

pub mod branched;
pub mod corpus;
pub mod diagram;
pub mod hmr;
pub mod khovanov;
pub mod linalg;
pub mod report;
pub mod specseq;
