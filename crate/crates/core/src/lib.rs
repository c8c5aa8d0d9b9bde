//! Exact Hilbert–Kunz density functions: piecewise-polynomial constructions,
//! curve-level invariants and a finite-field colength oracle.

pub mod exactnum;
pub mod bundle;
pub mod density;
pub mod oracle;
pub mod trinomial;
pub mod verify;
pub mod volume;
