//! Exact computation with ample groupoid convolution algebras over
//! semifields.
//!
//! The crate has three layers: finite hemiring tables with a brute-force
//! congruence oracle (`semiring`), convolution algebras of finite discrete
//! groupoids with the matrix-algebra decomposition (`groupkit`,
//! `fingroupoid`), and a symbolic layer for self-similar graphs, their
//! inverse semigroups and tight groupoids (`selfsim`, `tightalg`). The
//! `acceptance` module bundles the end-to-end checks.

pub mod semiring;
pub mod selfsim;
pub mod groupkit;
pub mod fingroupoid;
pub mod tightalg;
pub mod acceptance;
