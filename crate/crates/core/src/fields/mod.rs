//! Coefficient fields: rationals, number-field towers with an involution,
//! prime-power finite fields, and reductions from the former to the latter.

mod finite;
mod number_field;
pub(crate) mod primes;
mod rational;
mod reduction;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use finite::{FfElem, FfEmbedding, FiniteField};
pub use number_field::{FieldTower, Generator, NfElem, NumberField};
pub use primes::{factor_u64, is_prime_u64};
pub use rational::{format_rational, parse_rational, Rationals};
pub use reduction::ReductionMap;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field has no involution")]
    NoInvolution,
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    #[error("invalid finite field: {0}")]
    InvalidFiniteField(String),
    #[error("no prime above {p}: {reason}")]
    NoPrimeAbove { p: u64, reason: String },
    #[error("cannot parse `{0}`")]
    Parse(String),
}

/// A field, used as a context object: elements are plain data and every
/// operation goes through the field value.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Image of a rational number; `None` when the denominator is not invertible.
    fn from_rational(&self, r: &BigRational) -> Option<Self::Elem>;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&BigRational::from_integer(BigInt::from(n)))
            .expect("integers always map into a field")
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}
