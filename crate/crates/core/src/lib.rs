pub mod algebras;
pub mod degree;
pub mod exec;
pub mod field;
pub mod freelie;
pub mod independence;
pub mod linalg;
pub mod selftest;
pub mod tideal;
pub mod tuples;
