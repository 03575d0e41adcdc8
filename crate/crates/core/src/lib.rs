pub mod arith;
pub mod classnumbers;
pub mod cli;
pub mod config;
pub mod curves;
pub mod field;
pub mod hypergeom;
pub mod moments;
pub mod rc;
pub mod verify;
