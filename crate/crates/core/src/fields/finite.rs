use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;

use super::primes::{is_prime_u64, mul_mod, pow_mod};
use super::{Field, FieldError};
use crate::poly::UPoly;

#[derive(Debug, PartialEq, Eq)]
struct FfInner {
    p: u64,
    /// Monic, constant term first; length k+1.
    modulus: Vec<u64>,
}

/// F_{p^k} = F_p[x]/(modulus), with p < 2^31.
#[derive(Clone)]
pub struct FiniteField(Arc<FfInner>);

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.p(), self.k())
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

/// Element of a [`FiniteField`]: coordinates on 1, x, ..., x^{k-1}.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct FfElem(pub(crate) Vec<u64>);

impl FfElem {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl FiniteField {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if !is_prime_u64(p) || p >= 1 << 31 {
            return Err(FieldError::InvalidFiniteField(format!("{p} is not a prime below 2^31")));
        }
        Ok(FiniteField(Arc::new(FfInner { p, modulus: vec![0, 1] })))
    }

    /// F_p[x]/(modulus); the modulus must be monic and irreducible.
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Self, FieldError> {
        let fp = Self::prime(p)?;
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::InvalidFiniteField("modulus must be monic with reduced coefficients".into()));
        }
        if modulus.len() == 2 {
            return Ok(fp);
        }
        let poly = UPoly::new(fp.clone(), modulus.iter().map(|&c| FfElem(vec![c])).collect());
        if !poly.is_irreducible() {
            return Err(FieldError::InvalidFiniteField(format!("modulus {modulus:?} is reducible mod {p}")));
        }
        Ok(FiniteField(Arc::new(FfInner { p, modulus })))
    }

    /// F_{p^k} with the first irreducible monic modulus in lexicographic order
    /// (leading coefficients compared first, i.e. by Σ c_i p^i).
    pub fn with_degree(p: u64, k: usize) -> Result<Self, FieldError> {
        let fp = Self::prime(p)?;
        if k <= 1 {
            return Ok(fp);
        }
        let mut coeffs = vec![0u64; k];
        loop {
            let mut m = coeffs.clone();
            m.push(1);
            let poly = UPoly::new(fp.clone(), m.iter().map(|&c| FfElem(vec![c])).collect());
            if coeffs[0] != 0 && poly.is_irreducible() {
                return Ok(FiniteField(Arc::new(FfInner { p, modulus: m })));
            }
            let mut i = 0;
            loop {
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
                if i == k {
                    return Err(FieldError::InvalidFiniteField(format!("no irreducible of degree {k} mod {p}")));
                }
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn k(&self) -> usize {
        self.0.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.p()).pow(self.k() as u32)
    }

    /// Field size when it fits in a u128.
    pub fn order_u128(&self) -> Option<u128> {
        (self.p() as u128).checked_pow(self.k() as u32)
    }

    pub fn prime_field(&self) -> FiniteField {
        FiniteField::prime(self.p()).expect("characteristic is prime")
    }

    pub fn from_u64(&self, c: u64) -> FfElem {
        let mut v = vec![0; self.k()];
        v[0] = c % self.p();
        FfElem(v)
    }

    pub fn from_coords(&self, c: &[u64]) -> FfElem {
        let mut v: Vec<u64> = c.iter().map(|&x| x % self.p()).collect();
        v.resize(self.k(), 0);
        FfElem(v)
    }

    /// The class of x in F_p[x]/(modulus).
    pub fn generator(&self) -> FfElem {
        if self.k() == 1 {
            return self.from_u64(self.p() - self.0.modulus[0]);
        }
        let mut v = vec![0; self.k()];
        v[1] = 1;
        FfElem(v)
    }

    /// Element whose coordinates are the base-p digits of `n`.
    pub fn elem_from_index(&self, mut n: u128) -> FfElem {
        let p = self.p() as u128;
        FfElem((0..self.k()).map(|_| {
            let d = (n % p) as u64;
            n /= p;
            d
        }).collect())
    }

    /// Sort key agreeing with [`Self::index_of`] without its size limit.
    pub fn order_key(&self, a: &FfElem) -> Vec<u64> {
        a.0.iter().rev().copied().collect()
    }

    /// Inverse of [`Self::elem_from_index`]; defines the element ordering.
    pub fn index_of(&self, a: &FfElem) -> u128 {
        a.0.iter().rev().fold(0u128, |acc, &c| acc * self.p() as u128 + c as u128)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FfElem {
        FfElem((0..self.k()).map(|_| rng.gen_range(0..self.p())).collect())
    }

    pub fn pow_big(&self, a: &FfElem, e: &BigUint) -> FfElem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn frobenius(&self, a: &FfElem) -> FfElem {
        self.pow(a, self.p())
    }

    /// Whether `a` is a square (zero counts as a square).
    pub fn is_square(&self, a: &FfElem) -> bool {
        if self.is_zero(a) || self.p() == 2 {
            return true;
        }
        let e = (self.order() - 1u32) >> 1;
        self.is_one(&self.pow_big(a, &e))
    }

    /// A square root by Tonelli–Shanks (odd characteristic), smallest
    /// non-residue by element index used as the auxiliary element.
    pub fn sqrt(&self, a: &FfElem) -> Option<FfElem> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        if self.p() == 2 {
            let e = self.order() >> 1;
            return Some(self.pow_big(a, &e));
        }
        if !self.is_square(a) {
            return None;
        }
        let qm1 = self.order() - 1u32;
        let s = qm1.trailing_zeros().unwrap_or(0);
        let t = &qm1 >> s;
        let z = (2u128..)
            .map(|i| self.elem_from_index(i))
            .find(|z| !self.is_square(z))
            .expect("non-residue exists");
        let mut m = s;
        let mut c = self.pow_big(&z, &t);
        let mut tt = self.pow_big(a, &t);
        let mut r = self.pow_big(a, &((&t + 1u32) >> 1));
        while !self.is_one(&tt) {
            let mut i = 0;
            let mut t2 = tt.clone();
            while !self.is_one(&t2) {
                t2 = self.mul(&t2, &t2);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = self.mul(&b, &b);
            }
            m = i;
            c = self.mul(&b, &b);
            tt = self.mul(&tt, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }

    /// Reduction of an integer.
    pub fn from_bigint(&self, n: &BigInt) -> FfElem {
        let p = BigInt::from(self.p());
        let r = ((n % &p) + &p) % &p;
        self.from_u64(r.to_u64().expect("reduced below p"))
    }

    /// Every element, in index order; only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FfElem> + '_ {
        let n = self.order_u128().expect("small field");
        (0..n).map(move |i| self.elem_from_index(i))
    }

    /// An embedding of `self` into `target`, sending the generator to the
    /// smallest root of the modulus there.
    pub fn embedding_into(&self, target: &FiniteField) -> Option<FfEmbedding> {
        if target.p() != self.p() || !target.k().is_multiple_of(self.k()) {
            return None;
        }
        let m = UPoly::new(target.clone(), self.modulus().iter().map(|&c| target.from_u64(c)).collect());
        let mut roots: Vec<FfElem> = m.roots().into_iter().map(|(r, _)| r).collect();
        roots.sort_by_key(|r| target.order_key(r));
        let image = roots.into_iter().next()?;
        Some(FfEmbedding { source: self.clone(), target: target.clone(), image })
    }

    fn reduce_poly(&self, mut v: Vec<u64>) -> Vec<u64> {
        let p = self.p();
        let k = self.k();
        let m = &self.0.modulus;
        for i in (k..v.len()).rev() {
            let c = v[i];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                if m[j] != 0 {
                    let t = mul_mod(c, m[j], p);
                    v[i - k + j] = (v[i - k + j] + p - t) % p;
                }
            }
            v[i] = 0;
        }
        v.truncate(k);
        v.resize(k, 0);
        v
    }
}

/// Inclusion F_{p^k} → F_{p^K}.
#[derive(Clone, Debug)]
pub struct FfEmbedding {
    pub source: FiniteField,
    pub target: FiniteField,
    pub image: FfElem,
}

impl FfEmbedding {
    pub fn apply(&self, a: &FfElem) -> FfElem {
        let t = &self.target;
        let mut acc = t.zero();
        for &c in a.0.iter().rev() {
            acc = t.add(&t.mul(&acc, &self.image), &t.from_u64(c));
        }
        acc
    }

    /// The element of the source mapping to `c`, if `c` lies in the image.
    pub fn preimage(&self, c: &FfElem) -> Option<FfElem> {
        let k = self.source.k();
        if k == 1 {
            return c.0[1..].iter().all(|&x| x == 0).then(|| self.source.from_u64(c.0[0]));
        }
        let t = &self.target;
        let mut basis = Vec::with_capacity(k);
        let mut pw = t.one();
        for _ in 0..k {
            basis.push(pw.clone());
            pw = t.mul(&pw, &self.image);
        }
        t.coordinates_in(&basis, c).map(FfElem)
    }
}

impl FiniteField {
    /// F_p-coordinates of `c` on a linearly independent family, or `None`
    /// when `c` lies outside its span.
    pub fn coordinates_in(&self, basis: &[FfElem], c: &FfElem) -> Option<Vec<u64>> {
        let p = self.p();
        let n = self.k();
        let k = basis.len();
        let mut rows: Vec<Vec<u64>> = (0..n).map(|r| basis.iter().map(|b| b.0[r]).chain([c.0[r]]).collect()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..k {
            let Some(piv) = (r..n).find(|&i| rows[i][col] != 0) else { continue };
            rows.swap(r, piv);
            let inv = pow_mod(rows[r][col], p - 2, p);
            for x in rows[r].iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            for i in 0..n {
                if i != r && rows[i][col] != 0 {
                    let f = rows[i][col];
                    for j in 0..=k {
                        let s = mul_mod(f, rows[r][j], p);
                        rows[i][j] = (rows[i][j] + p - s) % p;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        if rows[r..].iter().any(|row| row[k] != 0) {
            return None;
        }
        let mut x = vec![0u64; k];
        for (i, &col) in pivots.iter().enumerate() {
            x[col] = rows[i][k];
        }
        Some(x)
    }
}

impl Field for FiniteField {
    type Elem = FfElem;

    fn zero(&self) -> FfElem {
        FfElem(vec![0; self.k()])
    }

    fn one(&self) -> FfElem {
        self.from_u64(1)
    }

    fn is_zero(&self, a: &FfElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    fn add(&self, a: &FfElem, b: &FfElem) -> FfElem {
        let p = self.p();
        FfElem(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % p).collect())
    }

    fn sub(&self, a: &FfElem, b: &FfElem) -> FfElem {
        let p = self.p();
        FfElem(a.0.iter().zip(&b.0).map(|(x, y)| (x + p - y) % p).collect())
    }

    fn mul(&self, a: &FfElem, b: &FfElem) -> FfElem {
        let p = self.p();
        let k = self.k();
        if k == 1 {
            return FfElem(vec![mul_mod(a.0[0], b.0[0], p)]);
        }
        // p < 2^31, so every product fits in 62 bits and a u128 sum of at
        // most k of them never overflows.
        let mut v = vec![0u64; 2 * k - 1];
        for (n, out) in v.iter_mut().enumerate() {
            let lo = n.saturating_sub(k - 1);
            let hi = n.min(k - 1);
            let mut acc: u128 = 0;
            for i in lo..=hi {
                acc += (a.0[i] * b.0[n - i]) as u128;
            }
            *out = (acc % p as u128) as u64;
        }
        FfElem(self.reduce_poly(v))
    }

    fn neg(&self, a: &FfElem) -> FfElem {
        let p = self.p();
        FfElem(a.0.iter().map(|&x| (p - x) % p).collect())
    }

    fn inv(&self, a: &FfElem) -> Option<FfElem> {
        if self.is_zero(a) {
            return None;
        }
        if self.k() == 1 {
            return Some(FfElem(vec![pow_mod(a.0[0], self.p() - 2, self.p())]));
        }
        let e = self.order() - 2u32;
        Some(self.pow_big(a, &e))
    }

    fn from_rational(&self, r: &BigRational) -> Option<FfElem> {
        let n = self.from_bigint(r.numer());
        let d = self.from_bigint(r.denom());
        self.div(&n, &d)
    }

    fn characteristic(&self) -> u64 {
        self.p()
    }

    fn fmt_elem(&self, a: &FfElem) -> String {
        if self.k() == 1 {
            return a.0[0].to_string();
        }
        let parts: Vec<String> = a.0.iter().map(u64::to_string).collect();
        format!("[{}]", parts.join(", "))
    }

    fn is_one(&self, a: &FfElem) -> bool {
        a.0[0] == 1 && a.0[1..].iter().all(|&c| c == 0)
    }
}

impl FiniteField {
    /// Rational image, or an error naming the offending denominator.
    pub fn try_from_rational(&self, r: &BigRational) -> Result<FfElem, FieldError> {
        self.from_rational(r).ok_or_else(|| FieldError::NoPrimeAbove {
            p: self.p(),
            reason: format!("denominator {} vanishes", r.denom()),
        })
    }

    pub fn is_prime_field(&self) -> bool {
        self.k() == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field_basics() {
        let f = FiniteField::prime(31).unwrap();
        let a = f.from_u64(7);
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        assert_eq!(f.fmt_elem(&f.from_rational(&BigRational::new(1.into(), 15.into())).unwrap()), "29");
        assert!(FiniteField::prime(33).is_err());
        assert!(f.from_rational(&BigRational::new(1.into(), 31.into())).is_none());
    }

    #[test]
    fn extension_fields() {
        let f = FiniteField::with_degree(13, 2).unwrap();
        assert_eq!(f.modulus(), &[2, 0, 1]);
        assert!(FiniteField::new(13, vec![1, 0, 1]).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let a = f.random(&mut rng);
            if f.is_zero(&a) {
                continue;
            }
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            let sq = f.mul(&a, &a);
            let r = f.sqrt(&sq).unwrap();
            assert_eq!(f.mul(&r, &r), sq);
        }
        for i in 0..f.order_u128().unwrap() {
            assert_eq!(f.index_of(&f.elem_from_index(i)), i);
        }
    }

    #[test]
    fn embedding_is_homomorphism() {
        let small = FiniteField::with_degree(5, 2).unwrap();
        let big = FiniteField::with_degree(5, 4).unwrap();
        let e = small.embedding_into(&big).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..30 {
            let (a, b) = (small.random(&mut rng), small.random(&mut rng));
            assert_eq!(e.apply(&small.mul(&a, &b)), big.mul(&e.apply(&a), &e.apply(&b)));
            assert_eq!(e.apply(&small.add(&a, &b)), big.add(&e.apply(&a), &e.apply(&b)));
        }
        assert!(small.embedding_into(&FiniteField::with_degree(5, 3).unwrap()).is_none());
    }
}
