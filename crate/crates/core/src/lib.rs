pub mod action;
pub mod cli;
pub mod linalg;
pub mod poisson;
pub mod problem;
pub mod reduction;
pub mod report;
pub mod sampling;
pub mod simplex;
pub mod symexpr;
