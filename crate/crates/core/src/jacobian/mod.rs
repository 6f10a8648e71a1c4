//! Divisor classes on odd-degree hyperelliptic Jacobians over finite fields,
//! in Mumford form with Cantor's composition and reduction, and the action of
//! a correspondence on them by pullback and pushforward.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::catalog::{Correspondence, HyperellipticModel};
use crate::fields::{FfElem, FfEmbedding, Field, FieldError, FiniteField};
use crate::poly::{PolyError, UPoly, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JacError {
    #[error("model has even degree {0}; only odd-degree models are supported")]
    EvenDegree(usize),
    #[error("hyperelliptic polynomial is not squarefree")]
    Singular,
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("A(a, x2) drops degree at a point of the support")]
    LeadingDrop,
    #[error("hyperelliptic polynomial does not split with simple roots over the base field")]
    RequiresSplitModel,
    #[error("two-torsion index {index} outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("image divisor is not defined over the base field")]
    NotGaloisStable,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("the correspondence still has free parameters")]
    NotSpecialized,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A reduced divisor class (u, v): u monic, deg v < deg u ≤ g, u | v² − h.
#[derive(Debug, Clone, PartialEq)]
pub struct MumfordDivisor {
    pub u: UPoly<FiniteField>,
    pub v: UPoly<FiniteField>,
}

impl MumfordDivisor {
    pub fn identity(field: &FiniteField) -> Self {
        MumfordDivisor { u: UPoly::one(field), v: UPoly::zero(field) }
    }

    pub fn is_identity(&self) -> bool {
        self.u.degree() == Some(0)
    }

    pub fn degree(&self) -> usize {
        self.u.degree().unwrap_or(0)
    }

    pub fn to_text(&self) -> String {
        format!("({}, {})", self.u.fmt_with("x"), self.v.fmt_with("x"))
    }
}

/// y² = h(x) over F_q with deg h = 2g + 1 and h squarefree.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobianCtx {
    h: UPoly<FiniteField>,
    genus: usize,
}

impl JacobianCtx {
    pub fn new(h: UPoly<FiniteField>) -> Result<Self, JacError> {
        let d = h.degree().unwrap_or(0);
        if d.is_multiple_of(2) {
            return Err(JacError::EvenDegree(d));
        }
        if !h.is_squarefree() {
            return Err(JacError::Singular);
        }
        Ok(JacobianCtx { h, genus: (d - 1) / 2 })
    }

    pub fn from_model(model: &HyperellipticModel<FiniteField>) -> Result<Self, JacError> {
        Self::new(model.h.to_upoly(Var::X)?)
    }

    pub fn field(&self) -> &FiniteField {
        self.h.field()
    }

    pub fn h(&self) -> &UPoly<FiniteField> {
        &self.h
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn identity(&self) -> MumfordDivisor {
        MumfordDivisor::identity(self.field())
    }

    pub fn is_valid(&self, d: &MumfordDivisor) -> bool {
        self.check(d).is_ok()
    }

    pub fn check(&self, d: &MumfordDivisor) -> Result<(), JacError> {
        let bad = |m: &str| Err(JacError::InvalidDivisor(m.into()));
        let Some(du) = d.u.degree() else { return bad("u = 0") };
        if !self.field().is_one(d.u.lc().unwrap()) {
            return bad("u is not monic");
        }
        if du > self.genus {
            return bad("deg u exceeds the genus");
        }
        if d.v.degree().is_some_and(|dv| dv >= du) {
            return bad("deg v ≥ deg u");
        }
        if !d.v.mul(&d.v).sub(&self.h).rem(&d.u).is_zero() {
            return bad("u does not divide v² − h");
        }
        Ok(())
    }

    /// The class of (a, b) − ∞.
    pub fn point(&self, a: &FfElem, b: &FfElem) -> Result<MumfordDivisor, JacError> {
        let f = self.field();
        if f.mul(b, b) != self.h.eval(a) {
            return Err(JacError::NotOnCurve);
        }
        Ok(MumfordDivisor { u: UPoly::linear(f, a), v: UPoly::constant(f, b.clone()) })
    }

    pub fn neg(&self, d: &MumfordDivisor) -> MumfordDivisor {
        MumfordDivisor { u: d.u.clone(), v: d.v.neg().rem(&d.u) }
    }

    /// Cantor composition followed by reduction, on validated inputs.
    pub fn cantor_add(&self, d1: &MumfordDivisor, d2: &MumfordDivisor) -> Result<MumfordDivisor, JacError> {
        self.check(d1)?;
        self.check(d2)?;
        Ok(self.add(d1, d2))
    }

    /// Unchecked [`Self::cantor_add`].
    pub fn add(&self, d1: &MumfordDivisor, d2: &MumfordDivisor) -> MumfordDivisor {
        let (d0, e1, e2) = d1.u.ext_gcd(&d2.u);
        let (d, c1, c2) = d0.ext_gcd(&d1.v.add(&d2.v));
        let s1 = c1.mul(&e1);
        let s2 = c1.mul(&e2);
        let u = d1.u.mul(&d2.u).exact_div(&d.mul(&d)).expect("d² divides u1·u2");
        let num = s1
            .mul(&d1.u)
            .mul(&d2.v)
            .add(&s2.mul(&d2.u).mul(&d1.v))
            .add(&c2.mul(&d1.v.mul(&d2.v).add(&self.h)));
        let v = num.exact_div(&d).expect("d divides the composed v").rem(&u);
        self.reduce(u, v)
    }

    /// Reduces a semi-reduced pair (u, v) with u | v² − h.
    pub fn reduce(&self, mut u: UPoly<FiniteField>, mut v: UPoly<FiniteField>) -> MumfordDivisor {
        v = v.rem(&u);
        while u.degree().unwrap_or(0) > self.genus {
            let u2 = self.h.sub(&v.mul(&v)).exact_div(&u).expect("u divides h − v²").monic();
            v = v.neg().rem(&u2);
            u = u2;
        }
        MumfordDivisor { u: u.monic(), v }
    }

    pub fn double(&self, d: &MumfordDivisor) -> MumfordDivisor {
        self.add(d, d)
    }

    /// [m]D by double-and-add; negative m goes through negation.
    pub fn scalar_mul(&self, d: &MumfordDivisor, m: i64) -> MumfordDivisor {
        let base = if m < 0 { self.neg(d) } else { d.clone() };
        self.scalar_mul_big(&base, &BigUint::from(m.unsigned_abs()))
    }

    pub fn scalar_mul_big(&self, d: &MumfordDivisor, m: &BigUint) -> MumfordDivisor {
        let mut acc = self.identity();
        for i in (0..m.bits()).rev() {
            acc = self.double(&acc);
            if m.bit(i) {
                acc = self.add(&acc, d);
            }
        }
        acc
    }

    /// Roots of h in index order, when h splits with simple roots.
    pub fn weierstrass_roots(&self) -> Result<Vec<FfElem>, JacError> {
        let roots = self.h.roots();
        if roots.len() != self.h.degree().unwrap_or(0) || roots.iter().any(|(_, m)| *m != 1) {
            return Err(JacError::RequiresSplitModel);
        }
        Ok(roots.into_iter().map(|(r, _)| r).collect())
    }

    /// The class (x − γᵢ, 0) for the i-th root of h, 1 ≤ i ≤ 2g.
    pub fn two_torsion_class(&self, i: usize) -> Result<MumfordDivisor, JacError> {
        let max = 2 * self.genus;
        if i == 0 || i > max {
            return Err(JacError::IndexOutOfRange { index: i, max });
        }
        let roots = self.weierstrass_roots()?;
        Ok(MumfordDivisor { u: UPoly::linear(self.field(), &roots[i - 1]), v: UPoly::zero(self.field()) })
    }

    /// A seeded random class with deg u = g: u is drawn until it is
    /// squarefree and h is a square modulo each of its irreducible factors.
    pub fn random_divisor(&self, seed: u64) -> MumfordDivisor {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = self.field().clone();
        loop {
            let mut c: Vec<FfElem> = (0..self.genus).map(|_| f.random(&mut rng)).collect();
            c.push(f.one());
            let u = UPoly::new(f.clone(), c);
            if let Some(v) = self.sqrt_mod(&u, &mut rng) {
                let d = MumfordDivisor { u, v };
                debug_assert!(self.is_valid(&d));
                return d;
            }
        }
    }

    /// v with v² ≡ h (mod u), for u monic squarefree, with random signs.
    fn sqrt_mod(&self, u: &UPoly<FiniteField>, rng: &mut ChaCha8Rng) -> Option<UPoly<FiniteField>> {
        let f = self.field();
        let factors = u.factor();
        if factors.iter().any(|(_, m)| *m > 1) {
            return None;
        }
        let mut big_u = UPoly::one(f);
        let mut big_v = UPoly::zero(f);
        for (w, _) in factors {
            let e = w.degree().unwrap();
            let ext = Extension::new(f, e).ok()?;
            let a = ext.root_of(&w)?;
            let l = &ext.field;
            let b = l.sqrt(&ext.lift_poly(&self.h).eval(&a))?;
            let b = if rng.gen::<bool>() { l.neg(&b) } else { b };
            let vw = ext.descend_value(&a, e, &b)?;
            let (_, s, _) = big_u.ext_gcd(&w);
            let lift = big_v.add(&big_u.mul(&s).mul(&vw.sub(&big_v)));
            big_u = big_u.mul(&w);
            big_v = lift.rem(&big_u);
        }
        Some(big_v)
    }

    /// The same curve over an extension field.
    pub fn base_change(&self, emb: &FfEmbedding) -> JacobianCtx {
        JacobianCtx { h: self.h.map(&emb.target, |c| emb.apply(c)), genus: self.genus }
    }

    /// #X(F_q) by enumeration, counting the single point at infinity.
    pub fn count_points(&self) -> u128 {
        let f = self.field();
        1 + f
            .elements()
            .map(|x| {
                let y2 = self.h.eval(&x);
                if f.is_zero(&y2) {
                    1
                } else if f.is_square(&y2) {
                    2
                } else {
                    0
                }
            })
            .sum::<u128>()
    }
}

/// F_{q^e} over the base field F_q, with its embedding.
struct Extension {
    base: FiniteField,
    field: FiniteField,
    emb: Option<FfEmbedding>,
}

impl Extension {
    fn new(base: &FiniteField, e: usize) -> Result<Self, FieldError> {
        if e == 1 {
            return Ok(Extension { base: base.clone(), field: base.clone(), emb: None });
        }
        let field = FiniteField::with_degree(base.p(), base.k() * e)?;
        let emb = base.embedding_into(&field).ok_or(FieldError::InvalidFiniteField("no embedding".into()))?;
        Ok(Extension { base: base.clone(), field, emb: Some(emb) })
    }

    fn lift(&self, c: &FfElem) -> FfElem {
        match &self.emb {
            None => c.clone(),
            Some(e) => e.apply(c),
        }
    }

    fn lift_poly(&self, p: &UPoly<FiniteField>) -> UPoly<FiniteField> {
        p.map(&self.field, |c| self.lift(c))
    }

    fn descend(&self, c: &FfElem) -> Option<FfElem> {
        match &self.emb {
            None => Some(c.clone()),
            Some(e) => e.preimage(c),
        }
    }

    fn descend_poly(&self, p: &UPoly<FiniteField>) -> Option<UPoly<FiniteField>> {
        let c = p.coeffs().iter().map(|c| self.descend(c)).collect::<Option<Vec<_>>>()?;
        Some(UPoly::new(self.base.clone(), c))
    }

    /// Smallest root of an irreducible base polynomial.
    fn root_of(&self, w: &UPoly<FiniteField>) -> Option<FfElem> {
        self.lift_poly(w).roots().into_iter().next().map(|(r, _)| r)
    }

    /// The base polynomial v of degree < e with v(a) = b, where a generates
    /// the extension.
    fn descend_value(&self, a: &FfElem, e: usize, b: &FfElem) -> Option<UPoly<FiniteField>> {
        let base = &self.base;
        let k = base.k();
        let units: Vec<FfElem> = (0..k)
            .map(|l| {
                let mut c = vec![0u64; k];
                c[l] = 1;
                self.lift(&base.from_coords(&c))
            })
            .collect();
        let mut family = Vec::with_capacity(e * k);
        let mut pw = self.field.one();
        for _ in 0..e {
            family.extend(units.iter().map(|u| self.field.mul(u, &pw)));
            pw = self.field.mul(&pw, a);
        }
        let x = self.field.coordinates_in(&family, b)?;
        Some(UPoly::new(base.clone(), x.chunks(k).map(|c| base.from_coords(c)).collect()))
    }

    /// x ↦ x^q on coefficients, q = |base|.
    fn frobenius_poly(&self, p: &UPoly<FiniteField>) -> UPoly<FiniteField> {
        let l = &self.field;
        p.map(l, |c| (0..self.base.k()).fold(c.clone(), |acc, _| l.frobenius(&acc)))
    }

    fn frobenius(&self, d: &MumfordDivisor) -> MumfordDivisor {
        MumfordDivisor { u: self.frobenius_poly(&d.u), v: self.frobenius_poly(&d.v) }
    }
}

/// The homomorphism Jac X → Jac Y induced by a specialized correspondence
/// over F_q with odd-degree models.
#[derive(Debug, Clone)]
pub struct CorrespondenceAction {
    pub source: JacobianCtx,
    pub target: JacobianCtx,
    /// Coefficients of A: `grid[j][i]` multiplies x1^i·x2^j.
    grid: Vec<Vec<FfElem>>,
}

impl CorrespondenceAction {
    pub fn new(corr: &Correspondence<FiniteField>) -> Result<Self, JacError> {
        if !corr.params.is_empty() {
            return Err(JacError::NotSpecialized);
        }
        let source = JacobianCtx::from_model(&corr.x)?;
        let target = JacobianCtx::from_model(&corr.y)?;
        let f = corr.field();
        let grid = corr
            .a
            .coeffs_in(Var::X2)
            .iter()
            .map(|c| c.to_upoly(Var::X1).map(|p| p.coeffs().to_vec()))
            .collect::<Result<Vec<_>, _>>()?;
        if grid.last().is_none_or(|top| top.iter().all(|c| f.is_zero(c))) {
            return Err(JacError::Poly(PolyError::ConstantInput));
        }
        Ok(CorrespondenceAction { source, target, grid })
    }

    /// A(a, x2) over the field of `a`.
    fn fiber_poly(&self, ext: &Extension, a: &FfElem) -> UPoly<FiniteField> {
        let l = &ext.field;
        let coeffs = self
            .grid
            .iter()
            .map(|col| col.iter().rev().fold(l.zero(), |acc, c| l.add(&l.mul(&acc, a), &ext.lift(c))))
            .collect();
        UPoly::new(l.clone(), coeffs)
    }

    /// Image of (a, b) − ∞ over the field of a: Σ μ·(r, b) over the roots r
    /// of A(a, x2), grouped by irreducible factor.
    fn image_of_point(&self, ext: &Extension, jy: &JacobianCtx, a: &FfElem, b: &FfElem) -> Result<MumfordDivisor, JacError> {
        let fiber = self.fiber_poly(ext, a);
        if fiber.degree() != Some(self.grid.len() - 1) {
            return Err(JacError::LeadingDrop);
        }
        let l = &ext.field;
        let mut acc = jy.identity();
        for (r, mu) in fiber.factor() {
            let d = jy.reduce(r, UPoly::constant(l, b.clone()));
            acc = jy.add(&acc, &jy.scalar_mul(&d, mu as i64));
        }
        Ok(acc)
    }

    /// φ([D]) for a reduced divisor D on X.
    pub fn apply(&self, d: &MumfordDivisor) -> Result<MumfordDivisor, JacError> {
        self.source.check(d)?;
        let base = self.source.field();
        let mut acc = self.target.identity();
        for (w, mult) in d.u.factor() {
            let e = w.degree().unwrap();
            let ext = Extension::new(base, e)?;
            let a = ext.root_of(&w).ok_or(JacError::InvalidDivisor("factor of u has no root".into()))?;
            let b = ext.lift_poly(&d.v).eval(&a);
            let jy = match &ext.emb {
                None => self.target.clone(),
                Some(emb) => self.target.base_change(emb),
            };
            let img = self.image_of_point(&ext, &jy, &a, &b)?;
            // Sum over the Galois orbit of (a, b), then descend.
            let mut orbit = img.clone();
            let mut cur = img;
            for _ in 1..e {
                cur = ext.frobenius(&cur);
                orbit = jy.add(&orbit, &cur);
            }
            let down = MumfordDivisor {
                u: ext.descend_poly(&orbit.u).ok_or(JacError::NotGaloisStable)?,
                v: ext.descend_poly(&orbit.v).ok_or(JacError::NotGaloisStable)?,
            };
            acc = self.target.add(&acc, &self.target.scalar_mul(&down, mult as i64));
        }
        Ok(acc)
    }
}

/// φ([D]) for the correspondence `corr`; see [`CorrespondenceAction`].
pub fn apply_correspondence(corr: &Correspondence<FiniteField>, d: &MumfordDivisor) -> Result<MumfordDivisor, JacError> {
    CorrespondenceAction::new(corr)?.apply(d)
}

/// Outcome of one φ̂(φ(D)) = [m]D trial.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundtripTrial {
    pub seed: u64,
    pub divisor: MumfordDivisor,
    pub passed: bool,
}

/// Checks φ̂(φ(D)) = [m]D on the random classes D drawn from `seeds`.
pub fn roundtrip(
    corr: &Correspondence<FiniteField>,
    m: i64,
    seeds: impl IntoIterator<Item = u64>,
) -> Result<Vec<RoundtripTrial>, JacError> {
    let phi = CorrespondenceAction::new(corr)?;
    let dual = CorrespondenceAction::new(&corr.swap_roles())?;
    let jx = &phi.source;
    seeds
        .into_iter()
        .map(|seed| {
            let d = jx.random_divisor(seed);
            let back = dual.apply(&phi.apply(&d)?)?;
            let passed = back == jx.scalar_mul(&d, m);
            Ok(RoundtripTrial { seed, divisor: d, passed })
        })
        .collect()
}
