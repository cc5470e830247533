pub mod coeffring;
pub mod cover;
pub mod error;
pub mod graphmap;
pub mod qtorus;
pub mod spin;
pub mod operators;
pub mod waverep;
pub mod corpus;
pub mod cli;
