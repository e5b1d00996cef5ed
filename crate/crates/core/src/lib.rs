//! Jet-scheme ideals of pfaffian varieties.

pub mod cli;
pub mod formulas;
pub mod groebner;
pub mod hilbert;
pub mod pfaffian;
pub mod polyring;
pub mod witness;
