//! Exact computations for explicit isogenies between hyperelliptic
//! Jacobians arising from factorizations f(x1) − g(x2) = A·B.

pub mod fields;
pub mod poly;
pub mod catalog;
pub mod kernel;
pub mod differential;
pub mod jacobian;
pub mod simplicity;
