pub mod analyzer;
pub mod arith;
pub mod blowup;
pub mod form;
pub mod hirzebruch;
pub mod poly;
