//! Kernel for MLTT with unit, Π and Σ types over user signatures, together
//! with the strict categorical model interface it is interpreted into.

#![no_std]

extern crate alloc;

pub mod syntax;
pub mod parser;
pub mod print;
pub mod signature;
pub mod checker;
pub mod cwf;
pub mod finset;
pub mod term_model;
pub mod interp;
pub mod bridge;
pub mod fixtures;
pub mod env;
pub mod mutants;
pub mod suites;

pub use syntax::{Ctx, CtxMor, Name, Sym, Tm, Ty, Var};
