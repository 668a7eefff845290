//! Exact arithmetic building blocks.

pub mod cyclotomic;
pub mod matrix;
pub mod modular;
pub mod multipoly;
pub mod ring;
pub mod smith;
pub mod unipoly;

pub use cyclotomic::CycInt;
pub use matrix::Matrix;
pub use multipoly::MultiPoly;
pub use ring::Ring;
pub use smith::{smith_normal_form, SmithForm};
pub use unipoly::UniPoly;
