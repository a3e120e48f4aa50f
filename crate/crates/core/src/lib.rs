pub mod exactalg;
pub mod poisson;
pub mod subspaces;
pub mod classical_reduce;
pub mod conditions;
pub mod liejordan;
pub mod cli;
