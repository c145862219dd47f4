#![no_std]
extern crate alloc;

pub mod field;
pub mod poly;
pub mod factor;
pub mod dirichlet;
pub mod perm;
pub mod permgroup;
pub mod certify;
pub mod group;
pub mod wreath;
pub mod fiber;
pub mod quasi_p;
pub mod embedding;
