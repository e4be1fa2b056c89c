//! Orbit codes in Grassmannians over finite fields: field arithmetic, subspaces,
//! group actions, orbit codes, GU partitions and multishot constructions.

pub mod finite_field;
pub mod matrix_fq;
pub mod subspace;
pub mod group_action;
pub mod orbit_code;
pub mod abelian_unipotent;
pub mod gu_partition;
pub mod multishot;
pub mod reproduce;
