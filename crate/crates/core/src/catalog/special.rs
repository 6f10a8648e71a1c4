use num_rational::BigRational;

use super::{CatalogError, Construction};
use crate::fields::{Field, FiniteField, NumberField, ReductionMap};
use crate::poly::{MPoly, Var};

/// y² = h(x), with h possibly depending on parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperellipticModel<F: Field> {
    pub h: MPoly<F>,
    pub genus: u32,
}

impl<F: Field> HyperellipticModel<F> {
    pub fn new(h: MPoly<F>, genus: u32) -> Self {
        HyperellipticModel { h, genus }
    }

    pub fn degree(&self) -> u32 {
        self.h.degree_in(Var::X).unwrap_or(0)
    }

    pub fn is_odd(&self) -> bool {
        self.degree() % 2 == 1
    }
}

/// The curve cut out by A(x1, x2) = 0 and y1 = y2 on X × Y.
#[derive(Debug, Clone, PartialEq)]
pub struct Correspondence<F: Field> {
    pub construction: Construction,
    pub x: HyperellipticModel<F>,
    pub y: HyperellipticModel<F>,
    pub a: MPoly<F>,
    /// Parameters still free in the models.
    pub params: Vec<Var>,
}

impl<F: Field> Correspondence<F> {
    /// The same curve read from Y to X; it induces the Rosati dual.
    pub fn swap_roles(&self) -> Self {
        Correspondence {
            construction: self.construction,
            x: self.y.clone(),
            y: self.x.clone(),
            a: self.a.swap(Var::X1, Var::X2),
            params: self.params.clone(),
        }
    }

    pub fn field(&self) -> &F {
        self.a.field()
    }
}

/// Substitutes parameter values and certifies that neither curve
/// degenerates. Values for parameters the correspondence lacks are ignored.
pub fn specialize(
    corr: &Correspondence<NumberField>,
    values: &[(Var, BigRational)],
) -> Result<Correspondence<NumberField>, CatalogError> {
    let k = corr.field().clone();
    let mut bindings = Vec::new();
    for p in &corr.params {
        let (_, v) = values.iter().find(|(w, _)| w == p).ok_or(CatalogError::UnboundParameter(*p))?;
        bindings.push((*p, MPoly::constant(&k, k.from_rational(v).expect("rational"))));
    }
    let sub = |p: &MPoly<NumberField>| p.substitute(&bindings);
    let out = Correspondence {
        construction: corr.construction,
        x: HyperellipticModel::new(sub(&corr.x.h), corr.x.genus),
        y: HyperellipticModel::new(sub(&corr.y.h), corr.y.genus),
        a: sub(&corr.a),
        params: Vec::new(),
    };
    for (name, model, orig) in [("X", &out.x, &corr.x), ("Y", &out.y, &corr.y)] {
        if model.degree() != orig.degree() || !squarefree_over_number_field(&model.h)? {
            return Err(CatalogError::OnDiscriminantLocus { curve: name.into() });
        }
    }
    Ok(out)
}

/// Squarefreeness in characteristic zero. A squarefree reduction at some
/// good prime certifies it cheaply; otherwise Euclid over K decides.
fn squarefree_over_number_field(h: &MPoly<NumberField>) -> Result<bool, CatalogError> {
    let k = h.field();
    let deg = h.degree_in(Var::X).unwrap_or(0);
    for p in [1_000_003u64, 1_000_033, 1_000_037] {
        let Ok(map) = ReductionMap::build(k, p, None) else { continue };
        let Ok(hb) = h.try_map_coeffs(map.target(), |c| map.apply(c)) else { continue };
        if hb.degree_in(Var::X).unwrap_or(0) == deg && hb.to_upoly(Var::X)?.is_squarefree() {
            return Ok(true);
        }
    }
    Ok(h.to_upoly(Var::X)?.is_squarefree())
}

/// Reduces a fully specialized correspondence modulo the prime of `map`.
pub fn reduce(
    corr: &Correspondence<NumberField>,
    map: &ReductionMap,
) -> Result<Correspondence<FiniteField>, CatalogError> {
    if let Some(p) = corr.params.first() {
        return Err(CatalogError::UnboundParameter(*p));
    }
    let t = map.target();
    let red = |p: &MPoly<NumberField>| {
        p.try_map_coeffs(t, |c| map.apply(c)).map_err(|e| CatalogError::BadReduction(e.to_string()))
    };
    let out = Correspondence {
        construction: corr.construction,
        x: HyperellipticModel::new(red(&corr.x.h)?, corr.x.genus),
        y: HyperellipticModel::new(red(&corr.y.h)?, corr.y.genus),
        a: red(&corr.a)?,
        params: Vec::new(),
    };
    for (name, model, orig) in [("X", &out.x, &corr.x), ("Y", &out.y, &corr.y)] {
        if model.degree() != orig.degree() {
            return Err(CatalogError::BadReduction(format!("leading coefficient of {name} vanishes mod {}", t.p())));
        }
        if !model.h.to_upoly(Var::X)?.is_squarefree() {
            return Err(CatalogError::BadReduction(format!("{name} is singular mod {}", t.p())));
        }
    }
    for v in [Var::X1, Var::X2] {
        if out.a.degree_in(v) != corr.a.degree_in(v) || !out.a.leading_coeff_in(v).is_constant() {
            return Err(CatalogError::BadReduction(format!("A drops degree in {v} mod {}", t.p())));
        }
    }
    Ok(out)
}
