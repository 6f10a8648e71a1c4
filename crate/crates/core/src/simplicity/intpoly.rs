//! Dense integer polynomials as coefficient vectors, lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::fields::{FiniteField, Rationals};
use crate::poly::UPoly;

pub type ZPoly = Vec<BigInt>;

pub fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

pub fn degree(a: &[BigInt]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub fn derivative(a: &[BigInt]) -> ZPoly {
    trim(a.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
}

pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides out the content and makes the leading coefficient positive.
pub fn primitive(a: &[BigInt]) -> ZPoly {
    let a = trim(a.to_vec());
    let Some(lead) = a.last() else { return a };
    let mut c = content(&a);
    if lead.is_negative() {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

/// lc(b)^(deg a − deg b + 1)·a mod b.
fn prem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = degree(b).expect("nonzero divisor");
    let lb = &b[db];
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, c) in b.iter().enumerate() {
            r[dr - db + i] -= &lr * c;
        }
        r = trim(r);
    }
    r
}

/// Primitive gcd over Z by the primitive remainder sequence.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let (mut a, mut b) = (primitive(a), primitive(b));
    if degree(&a) < degree(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    while degree(&b).is_some() {
        let r = prem(&a, &b);
        a = b;
        b = primitive(&r);
    }
    a
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn to_ff(a: &[BigInt], f: &FiniteField) -> UPoly<FiniteField> {
    UPoly::new(f.clone(), a.iter().map(|c| f.from_bigint(c)).collect())
}

pub fn to_q(a: &[BigInt]) -> UPoly<Rationals> {
    UPoly::new(Rationals, a.iter().map(|c| BigRational::from_integer(c.clone())).collect())
}

/// Power sums p_1 … p_n of the roots of a monic polynomial (Newton's identities).
pub fn power_sums<T>(monic: &[T], n: usize, zero: T, ops: &impl RingOps<T>) -> Vec<T>
where
    T: Clone,
{
    let deg = monic.len() - 1;
    let mut p: Vec<T> = Vec::with_capacity(n + 1);
    p.push(zero.clone());
    for k in 1..=n {
        let mut s = zero.clone();
        for i in 1..k.min(deg + 1) {
            s = ops.add(&s, &ops.mul(&monic[deg - i], &p[k - i]));
        }
        if k <= deg {
            s = ops.add(&s, &ops.scale(&monic[deg - k], k as u64));
        }
        p.push(ops.neg(&s));
    }
    p
}

/// The monic polynomial of degree `deg` whose roots have the given power sums p_1 … p_deg.
pub fn from_power_sums<T: Clone>(p: &[T], deg: usize, one: T, ops: &impl RingOps<T>) -> Vec<T> {
    let mut e = vec![one];
    for k in 1..=deg {
        let mut s = ops.scale(&e[0], 0);
        for i in 1..=k {
            let term = ops.mul(&e[k - i], &p[i]);
            s = if i % 2 == 1 { ops.add(&s, &term) } else { ops.sub(&s, &term) };
        }
        e.push(ops.div_exact(&s, k as u64));
    }
    // x^deg − e1 x^(deg−1) + e2 x^(deg−2) − …
    (0..=deg).map(|i| if (deg - i).is_multiple_of(2) { e[deg - i].clone() } else { ops.neg(&e[deg - i]) }).collect()
}

pub trait RingOps<T> {
    fn add(&self, a: &T, b: &T) -> T;
    fn sub(&self, a: &T, b: &T) -> T;
    fn mul(&self, a: &T, b: &T) -> T;
    fn neg(&self, a: &T) -> T;
    fn scale(&self, a: &T, k: u64) -> T;
    fn div_exact(&self, a: &T, k: u64) -> T;
}

pub struct Integers;

impl RingOps<BigInt> for Integers {
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn scale(&self, a: &BigInt, k: u64) -> BigInt {
        a * BigInt::from(k)
    }
    fn div_exact(&self, a: &BigInt, k: u64) -> BigInt {
        let (q, r) = a.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        q
    }
}

/// Z/ℓ for a prime ℓ < 2^32.
pub struct ModPrime(pub u64);

impl RingOps<u64> for ModPrime {
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a) % self.0
    }
    fn scale(&self, a: &u64, k: u64) -> u64 {
        a * (k % self.0) % self.0
    }
    fn div_exact(&self, a: &u64, k: u64) -> u64 {
        let inv = crate::fields::primes::pow_mod(k % self.0, self.0 - 2, self.0);
        a * inv % self.0
    }
}

pub fn reduce_mod(a: &[BigInt], l: u64) -> Vec<u64> {
    let m = BigInt::from(l);
    a.iter().map(|c| c.mod_floor(&m).try_into().expect("residue fits")).collect()
}

fn sign(c: &BigInt) -> i8 {
    if c.is_zero() {
        0
    } else if c.is_positive() {
        1
    } else {
        -1
    }
}

/// A Sturm sequence of the squarefree part of `a`, each term scaled by a positive integer.
fn sturm_sequence(a: &[BigInt]) -> Vec<ZPoly> {
    let g = gcd(a, &derivative(a));
    let sq = primitive(&exact_quo(a, &g));
    let mut seq = vec![sq.clone(), primitive(&derivative(&sq))];
    loop {
        let n = seq.len();
        if degree(&seq[n - 1]).unwrap_or(0) == 0 {
            break;
        }
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        let delta = degree(a).unwrap() - degree(b).unwrap();
        let mut r = prem(a, b);
        // prem scales by lc(b)^(δ+1); keep the factor positive, then negate
        if b[degree(b).unwrap()].is_negative() && delta.is_multiple_of(2) {
            r = r.iter().map(|c| -c).collect();
        }
        if degree(&r).is_none() {
            break;
        }
        let c = content(&r);
        seq.push(r.iter().map(|x| -(x / &c)).collect());
    }
    seq
}

fn exact_quo(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let q = to_q(a).exact_div(&to_q(b)).expect("divisor");
    let den = q.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    q.coeffs().iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect()
}

fn eval(a: &[BigInt], x: &BigInt) -> BigInt {
    a.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Number of distinct real roots of an integer polynomial in (lo, ∞), or on
/// the whole line when `lo` is `None`, by Sturm's theorem.
pub fn real_roots_above(a: &[BigInt], lo: Option<&BigInt>) -> usize {
    let seq = sturm_sequence(a);
    let changes = |s: Vec<i8>| {
        let nz: Vec<i8> = s.into_iter().filter(|&x| x != 0).collect();
        nz.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let lead = |p: &ZPoly| sign(&p[degree(p).unwrap()]);
    let at_lo = match lo {
        Some(x) => changes(seq.iter().map(|p| sign(&eval(p, x))).collect()),
        None => changes(seq.iter().map(|p| if degree(p).unwrap() % 2 == 1 { -lead(p) } else { lead(p) }).collect()),
    };
    at_lo - changes(seq.iter().map(lead).collect())
}

pub fn is_one(a: &[BigInt]) -> bool {
    degree(a) == Some(0) && a[0].abs().is_one()
}
