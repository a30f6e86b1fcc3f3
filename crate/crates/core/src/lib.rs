pub mod arith;
pub mod config;
pub mod ffield;
pub mod wittring;
pub mod polytope;
pub mod nondegen;
pub mod charsum;
pub mod lfunction;
pub mod cli;
