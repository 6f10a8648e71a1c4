//! Weil polynomials from Weil coefficients, irreducibility witnesses, and the
//! Howe–Zhu criterion for absolute simplicity.

pub mod intpoly;
mod weil;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::fields::{factor_u64, is_prime_u64, FiniteField};
use intpoly::{Integers, ModPrime, ZPoly};

pub use weil::{is_palindromic, real_weil_polynomial, satisfies_weil_bound, weil_expand, WeilData};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicityError {
    #[error("line {line}: bad {what}")]
    Parse { line: usize, what: String },
    #[error("missing header `{0}`")]
    MissingHeader(&'static str),
    #[error("expected {expected} coefficients, found {found}")]
    WrongCount { expected: u32, found: usize },
    #[error("{0}")]
    Io(String),
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    factor_u64(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// {d > 1 : φ(d) divides 2g}.
pub fn candidate_set(g: u32) -> Vec<u64> {
    let n = 2 * g as u64;
    // φ(d) ≥ √(d/2), so d ≤ 2n²
    (2..=2 * n * n + 2).filter(|&d| n.is_multiple_of(totient(d))).collect()
}

/// Smallest prime p ≤ bound with χ irreducible mod p.
pub fn irreducibility_witness(chi: &[BigInt], bound: u64) -> Option<u64> {
    if intpoly::degree(chi).unwrap_or(0) == 0 {
        return None;
    }
    (2..=bound).filter(|&p| is_prime_u64(p)).find(|&p| {
        let f = FiniteField::prime(p).expect("prime");
        let red = intpoly::to_ff(chi, &f);
        red.degree() == intpoly::degree(chi) && red.is_irreducible()
    })
}

/// Whether χ(x) lies in Z[x^d].
pub fn in_z_x_d(chi: &[BigInt], d: u64) -> bool {
    chi.iter().enumerate().all(|(i, c)| c.is_zero() || (i as u64).is_multiple_of(d))
}

/// R_d(x) = Res_y(χ(y), x − y^d), monic with roots π^d, from the power sums of χ's roots.
pub fn r_d(chi: &[BigInt], d: u64) -> ZPoly {
    let n = chi.len() - 1;
    let p = intpoly::power_sums(chi, n * d as usize, BigInt::zero(), &Integers);
    let pd: Vec<BigInt> = (0..=n).map(|k| p[k * d as usize].clone()).collect();
    intpoly::from_power_sums(&pd, n, BigInt::from(1), &Integers)
}

fn r_d_mod(chi: &[BigInt], d: u64, l: u64) -> Vec<u64> {
    let n = chi.len() - 1;
    let ops = ModPrime(l);
    let p = intpoly::power_sums(&intpoly::reduce_mod(chi, l), n * d as usize, 0, &ops);
    let pd: Vec<u64> = (0..=n).map(|k| p[k * d as usize]).collect();
    intpoly::from_power_sums(&pd, n, 1, &ops)
}

/// Primes just below 2³¹ for modular squarefreeness certificates.
fn modular_primes() -> impl Iterator<Item = u64> {
    (1u64 << 30..1u64 << 31).rev().filter(|&l| is_prime_u64(l))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SquarefreeEvidence {
    /// R_d is squarefree modulo this prime, hence over Z.
    Modular(u64),
    /// gcd(R_d, R_d') computed over Z.
    ExactGcd,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DEvidence {
    pub d: u64,
    /// Condition (1): χ ∈ Z[x^d].
    pub in_z_x_d: bool,
    pub r_d_squarefree: bool,
    pub evidence: SquarefreeEvidence,
}

impl DEvidence {
    /// d leaves the candidate set: (1) fails and [Q(π):Q(π^d)] = 1.
    pub fn excluded(&self) -> bool {
        !self.in_z_x_d && self.r_d_squarefree
    }

    pub fn reason(&self) -> String {
        match (self.in_z_x_d, self.r_d_squarefree) {
            (true, _) => format!("χ ∈ Z[x^{}]", self.d),
            (false, false) => format!("R_{} not squarefree: [Q(π):Q(π^{})] > 1", self.d, self.d),
            (false, true) => "excluded".into(),
        }
    }
}

pub fn check_d(chi: &[BigInt], d: u64) -> DEvidence {
    let in_z = in_z_x_d(chi, d);
    let n = chi.len() - 1;
    for l in modular_primes().take(3) {
        let r = intpoly::to_ff(&r_d_mod(chi, d, l).into_iter().map(BigInt::from).collect::<Vec<_>>(), &FiniteField::prime(l).unwrap());
        if r.degree() == Some(n) && r.gcd(&r.derivative()).degree() == Some(0) {
            return DEvidence { d, in_z_x_d: in_z, r_d_squarefree: true, evidence: SquarefreeEvidence::Modular(l) };
        }
    }
    let r = r_d(chi, d);
    let sf = intpoly::is_one(&intpoly::gcd(&r, &intpoly::derivative(&r)));
    DEvidence { d, in_z_x_d: in_z, r_d_squarefree: sf, evidence: SquarefreeEvidence::ExactGcd }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SimplicityVerdict {
    AbsolutelySimple { witness: u64, checked: Vec<DEvidence> },
    Inconclusive { witness: u64, remaining: Vec<(u64, String)>, checked: Vec<DEvidence> },
    IrreducibilityUnknown { primes_tried: usize, bound: u64 },
}

impl SimplicityVerdict {
    pub fn is_absolutely_simple(&self) -> bool {
        matches!(self, SimplicityVerdict::AbsolutelySimple { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            SimplicityVerdict::AbsolutelySimple { .. } => "absolutely simple",
            SimplicityVerdict::Inconclusive { .. } => "inconclusive",
            SimplicityVerdict::IrreducibilityUnknown { .. } => "irreducibility unknown",
        }
    }
}

/// Sufficient test: χ irreducible, and every candidate d has χ ∉ Z[x^d] and
/// R_d squarefree, so that the set D of the criterion is empty.
pub fn howe_zhu_check(data: &WeilData, prime_bound: u64) -> SimplicityVerdict {
    let chi = weil_expand(data);
    let Some(witness) = irreducibility_witness(&chi, prime_bound) else {
        let primes_tried = (2..=prime_bound).filter(|&p| is_prime_u64(p)).count();
        return SimplicityVerdict::IrreducibilityUnknown { primes_tried, bound: prime_bound };
    };
    let checked: Vec<DEvidence> = candidate_set(data.g).into_iter().map(|d| check_d(&chi, d)).collect();
    let remaining: Vec<(u64, String)> = checked.iter().filter(|e| !e.excluded()).map(|e| (e.d, e.reason())).collect();
    if remaining.is_empty() {
        SimplicityVerdict::AbsolutelySimple { witness, checked }
    } else {
        SimplicityVerdict::Inconclusive { witness, remaining, checked }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn expansion() {
        assert_eq!(weil_expand(&WeilData::from_ints(5, &[-2])), ints(&[5, -2, 1]));
        assert_eq!(weil_expand(&WeilData::from_ints(3, &[1, 2])), ints(&[9, 3, 2, 1, 1]));
    }

    #[test]
    fn totients() {
        let phi: Vec<u64> = (1..=12).map(totient).collect();
        assert_eq!(phi, [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    }

    #[test]
    fn r_d_of_quadratic() {
        // π = ±i√p: π² = −p twice, π³ = ∓ip√p
        let chi = ints(&[7, 0, 1]);
        assert_eq!(r_d(&chi, 2), ints(&[49, 14, 1]));
        assert_eq!(r_d(&chi, 3), ints(&[343, 0, 1]));
    }

    #[test]
    fn real_weil_polynomial_of_genus_two() {
        // x⁴ + x³ + 2x² + 3x + 9 = x²·((x+3/x)² + (x+3/x) − 4)
        let chi = weil_expand(&WeilData::from_ints(3, &[1, 2]));
        assert_eq!(real_weil_polynomial(&chi, 3), Some(ints(&[-4, 1, 1])));
    }
}
