//! Exact calculus for free and affine actions of groups on Λ-trees.
//!
//! The crate is organised bottom-up:
//!
//! * [`ogroup`]: finite-rank lexicographic groups over ℤ and ℚ, their
//!   order-preserving automorphisms and affine maps on ℤ×Λ₀.
//! * [`freegrp`]: reduced words, cyclic cores, conjugacy and proper powers.
//! * [`treecalc`]: free actions on weighted Cayley trees (lengths, axes, ends).
//! * [`combine`]: graphs of groups with cyclic edge groups and the
//!   construction of affine actions of their fundamental groups.
//! * [`classify`]: the decision procedure for the groups Γ(m,n;r,s) and the Γ₁
//!   case study.
//! * [`cli`]: command-line front end.

pub mod classify;
pub mod cli;
pub mod combine;
pub mod freegrp;
pub mod ogroup;
pub mod treecalc;
