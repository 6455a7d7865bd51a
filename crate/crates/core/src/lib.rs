//! Exact integer normal forms, the finite abelian groups `Z^n / M Z^n`, and
//! the multidimensional circulant (di)graphs built on them, together with
//! brute-force oracles for checking the closed-form results on small cases.
#![allow(clippy::needless_range_loop)]

pub mod circulant;
pub mod dimension;
pub mod graph;
pub mod intmat;
pub mod oracle;
pub mod quotient;
pub mod sweep;
