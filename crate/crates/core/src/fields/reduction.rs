use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{FfElem, Field, FieldError, FiniteField, NfElem, NumberField};
use crate::poly::UPoly;

/// A ring map from the p-integral part of a number field tower to a finite
/// field, fixed by the images of the generators.
#[derive(Clone, Debug)]
pub struct ReductionMap {
    source: NumberField,
    target: FiniteField,
    images: Vec<FfElem>,
    basis_images: Vec<FfElem>,
}

impl ReductionMap {
    /// Chooses generator images one level at a time, extending the residue
    /// field by the smallest factor degree whenever a minimal polynomial has
    /// no root. Without a seed the smallest root (by element index) is taken.
    pub fn build(source: &NumberField, p: u64, seed: Option<u64>) -> Result<Self, FieldError> {
        let mut target = FiniteField::prime(p)?;
        let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
        let mut images: Vec<FfElem> = Vec::new();
        for (level, gen) in source.generators().iter().enumerate() {
            let sub = source.sub_degree(level);
            loop {
                let partial = ReductionMap::with_images(source, &target, &images, sub)?;
                let coeffs = gen
                    .min_poly
                    .iter()
                    .map(|c| partial.apply_coords(c))
                    .collect::<Result<Vec<_>, _>>()?;
                let poly = UPoly::new(target.clone(), coeffs);
                let mut roots: Vec<FfElem> = poly.roots().into_iter().map(|(r, _)| r).collect();
                if !roots.is_empty() {
                    roots.sort_by_key(|r| target.order_key(r));
                    let pick = match rng.as_mut() {
                        Some(rng) => roots.choose(rng).expect("nonempty").clone(),
                        None => roots[0].clone(),
                    };
                    images.push(pick);
                    break;
                }
                let d = poly
                    .factor()
                    .iter()
                    .map(|(f, _)| f.degree().unwrap_or(0))
                    .min()
                    .unwrap_or(1);
                let bigger = FiniteField::with_degree(p, target.k() * d)?;
                let emb = target.embedding_into(&bigger).ok_or_else(|| FieldError::NoPrimeAbove {
                    p,
                    reason: "cannot embed residue field".into(),
                })?;
                images = images.iter().map(|a| emb.apply(a)).collect();
                target = bigger;
            }
        }
        ReductionMap::with_images(source, &target, &images, source.degree())
    }

    /// Every map into the residue field of [`Self::build`], one per choice of
    /// generator images; the unseeded map comes first.
    pub fn enumerate(source: &NumberField, p: u64) -> Result<Vec<Self>, FieldError> {
        let first = Self::build(source, p, None)?;
        let target = first.target.clone();
        let mut partial: Vec<Vec<FfElem>> = vec![Vec::new()];
        for (level, gen) in source.generators().iter().enumerate() {
            let sub = source.sub_degree(level);
            let mut next = Vec::new();
            for images in &partial {
                let map = ReductionMap::with_images(source, &target, images, sub)?;
                let coeffs = gen.min_poly.iter().map(|c| map.apply_coords(c)).collect::<Result<Vec<_>, _>>()?;
                for (r, _) in UPoly::new(target.clone(), coeffs).roots() {
                    let mut v = images.clone();
                    v.push(r);
                    next.push(v);
                }
            }
            partial = next;
        }
        let mut out = vec![first.clone()];
        for images in partial {
            if images != first.images {
                out.push(ReductionMap::with_images(source, &target, &images, source.degree())?);
            }
        }
        Ok(out)
    }

    /// Map with explicit generator images; each minimal polynomial must vanish at its image.
    pub fn from_images(source: &NumberField, target: &FiniteField, images: Vec<FfElem>) -> Result<Self, FieldError> {
        let map = ReductionMap::with_images(source, target, &images, source.degree())?;
        for (level, gen) in source.generators().iter().enumerate() {
            let mut acc = target.zero();
            for c in gen.min_poly.iter().rev() {
                acc = target.add(&target.mul(&acc, &images[level]), &map.apply_coords(&pad(c, source.degree()))?);
            }
            if !target.is_zero(&acc) {
                return Err(FieldError::NoPrimeAbove {
                    p: target.p(),
                    reason: format!("image of {} is not a root of its minimal polynomial", gen.name),
                });
            }
        }
        Ok(map)
    }

    fn with_images(source: &NumberField, target: &FiniteField, images: &[FfElem], len: usize) -> Result<Self, FieldError> {
        let mut basis_images = Vec::with_capacity(len);
        for idx in 0..len {
            let mut rem = idx;
            let mut acc = target.one();
            for (g, img) in source.generators().iter().zip(images) {
                let e = rem % g.degree();
                rem /= g.degree();
                acc = target.mul(&acc, &target.pow(img, e as u64));
            }
            basis_images.push(acc);
        }
        Ok(ReductionMap { source: source.clone(), target: target.clone(), images: images.to_vec(), basis_images })
    }

    fn apply_coords(&self, c: &[BigRational]) -> Result<FfElem, FieldError> {
        let t = &self.target;
        let mut acc = t.zero();
        for (ci, bi) in c.iter().zip(&self.basis_images) {
            let x = t.try_from_rational(ci)?;
            acc = t.add(&acc, &t.mul(&x, bi));
        }
        Ok(acc)
    }

    pub fn source(&self) -> &NumberField {
        &self.source
    }

    pub fn target(&self) -> &FiniteField {
        &self.target
    }

    pub fn images(&self) -> &[FfElem] {
        &self.images
    }

    /// Image of `a`; fails when a coordinate denominator vanishes mod p.
    pub fn apply(&self, a: &NfElem) -> Result<FfElem, FieldError> {
        let t = &self.target;
        let den = t.from_bigint(a.denominator());
        let den_inv = t.inv(&den).ok_or_else(|| FieldError::NoPrimeAbove {
            p: t.p(),
            reason: format!("denominator {} vanishes", a.denominator()),
        })?;
        let mut acc = t.zero();
        for (n, bi) in a.numerators().iter().zip(&self.basis_images) {
            if *n != BigInt::from(0) {
                acc = t.add(&acc, &t.mul(&t.from_bigint(n), bi));
            }
        }
        Ok(t.mul(&acc, &den_inv))
    }
}

fn pad(c: &[BigRational], len: usize) -> Vec<BigRational> {
    let mut v = c.to_vec();
    v.resize(len, BigRational::from_integer(0.into()));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Generator;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn quad(c0: i64, c1: i64) -> NumberField {
        let g = Generator { name: "a".into(), min_poly: vec![vec![q(c0)], vec![q(c1)], vec![q(1)]] };
        NumberField::new(vec![g], None).unwrap()
    }

    #[test]
    fn alpha7_at_11_and_13() {
        let k = quad(2, 1);
        let r = ReductionMap::build(&k, 11, None).unwrap();
        assert_eq!(r.target().k(), 1);
        assert_eq!(r.images()[0], r.target().from_u64(4));
        let r13 = ReductionMap::build(&k, 13, None).unwrap();
        assert_eq!(r13.target().k(), 2);
        let a = r13.apply(&k.gen(0)).unwrap();
        let t = r13.target();
        assert!(t.is_zero(&t.add(&t.add(&t.mul(&a, &a), &a), &t.from_u64(2))));
    }

    #[test]
    fn alpha15_at_31_and_seeded_choice() {
        let k = quad(4, -1);
        let r = ReductionMap::build(&k, 31, None).unwrap();
        assert_eq!(r.target().k(), 1);
        let a = &r.images()[0];
        let t = r.target();
        assert!(t.is_zero(&t.add(&t.sub(&t.mul(a, a), a), &t.from_u64(4))));
        let s = ReductionMap::build(&k, 31, Some(9)).unwrap();
        assert_eq!(ReductionMap::build(&k, 31, Some(9)).unwrap().images(), s.images());
    }

    #[test]
    fn vanishing_denominator_is_reported() {
        let k = quad(2, 1);
        let r = ReductionMap::build(&k, 11, None).unwrap();
        let x = k.from_rational(&BigRational::new(1.into(), 11.into())).unwrap();
        assert!(r.apply(&x).is_err());
        assert!(ReductionMap::from_images(&k, r.target(), vec![r.target().from_u64(1)]).is_err());
    }
}
