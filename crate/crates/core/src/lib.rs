//! Exact Casson-Gordon and Tristram-Levine signature computations for
//! satellite knots, and certificates that a knot's topological 4-genus
//! exceeds a given bound.

pub mod exact_algebra;
pub mod json;
pub mod knot_model;
pub mod signatures;
pub mod gilmer;
pub mod reproduce;
