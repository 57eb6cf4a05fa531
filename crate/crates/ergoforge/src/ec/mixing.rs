use std::collections::BTreeMap;

use num::{One, Signed, Zero};

use crate::action::FiniteAction;
use crate::error::{Error, Result};
use crate::group::{Element, GroupContext};
use crate::rational::Q;

/// A measure-preserving action in which `μ(A ∩ γB)` can be evaluated exactly.
pub trait MixingModel {
    type Set;
    fn measure(&self, s: &Self::Set) -> Result<Q>;
    /// `μ(A ∩ γB)`.
    fn meet_translate(&self, a: &Self::Set, g: &Element, b: &Self::Set) -> Result<Q>;
}

impl MixingModel for FiniteAction {
    type Set = Vec<bool>;

    fn measure(&self, s: &Vec<bool>) -> Result<Q> {
        if s.len() != self.len() {
            return Err(Error::Mismatch("set does not match the space".into()));
        }
        Ok(self.space.measure(s))
    }

    fn meet_translate(&self, a: &Vec<bool>, g: &Element, b: &Vec<bool>) -> Result<Q> {
        let gb = self.image(g, b);
        let meet: Vec<bool> = a.iter().zip(&gb).map(|(x, y)| *x && *y).collect();
        self.measure(&meet)
    }
}

/// A cylinder set `{x : x(h) = v for each (h, v)}` in `p^Γ`.
pub type Cylinder = BTreeMap<Element, usize>;

/// The Bernoulli shift `(γx)(h) = x(γ^{-1}h)` on `p^Γ` with i.i.d. coordinates of law
/// `base`, evaluated on cylinder sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliCylinders {
    pub ctx: GroupContext,
    pub base: Vec<Q>,
}

impl BernoulliCylinders {
    pub fn new(ctx: GroupContext, base: Vec<Q>) -> Result<Self> {
        let total: Q = base.iter().sum();
        if base.iter().any(|w| w.is_negative()) || !total.is_one() {
            return Err(Error::InvalidMeasure("base law is not a probability".into()));
        }
        Ok(BernoulliCylinders { ctx, base })
    }

    /// `γ·C = {x : x(γh) = v}`.
    pub fn translate(&self, g: &Element, c: &Cylinder) -> Cylinder {
        c.iter().map(|(h, &v)| (self.ctx.multiply(g, h), v)).collect()
    }

    fn cylinder_mass<'a>(&self, constraints: impl IntoIterator<Item = (&'a Element, &'a usize)>) -> Result<Q> {
        let mut seen: BTreeMap<&Element, usize> = BTreeMap::new();
        let mut m = Q::one();
        for (h, &v) in constraints {
            if v >= self.base.len() {
                return Err(Error::Mismatch(format!("symbol {v} outside the alphabet")));
            }
            match seen.get(h) {
                Some(&u) if u != v => return Ok(Q::zero()),
                Some(_) => {}
                None => {
                    seen.insert(h, v);
                    m *= &self.base[v];
                }
            }
        }
        Ok(m)
    }
}

impl MixingModel for BernoulliCylinders {
    type Set = Cylinder;

    fn measure(&self, s: &Cylinder) -> Result<Q> {
        self.cylinder_mass(s.iter())
    }

    fn meet_translate(&self, a: &Cylinder, g: &Element, b: &Cylinder) -> Result<Q> {
        let gb = self.translate(g, b);
        self.cylinder_mass(a.iter().chain(gb.iter()))
    }
}

/// Outcome of the weak-mixing search: the first `γ` (in search order) meeting every
/// inequality, and each candidate's worst defect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixingReport {
    pub witness: Option<Element>,
    pub defects: Vec<(Element, Q)>,
}

/// Looks for `γ ∈ G₀` with `|μ(A_i ∩ γB_i) - μ(A_i)μ(B_i)| < ε` for every pair.
pub fn weak_mixing_certificate<M: MixingModel>(m: &M, pairs: &[(M::Set, M::Set)], eps: &Q, g0: &[Element]) -> Result<MixingReport> {
    let products = pairs.iter().map(|(a, b)| Ok(m.measure(a)? * m.measure(b)?)).collect::<Result<Vec<Q>>>()?;
    let mut defects = Vec::with_capacity(g0.len());
    let mut witness = None;
    for g in g0 {
        let mut worst = Q::zero();
        for ((a, b), p) in pairs.iter().zip(&products) {
            let d = (m.meet_translate(a, g, b)? - p).abs();
            if d > worst {
                worst = d;
            }
        }
        if witness.is_none() && &worst < eps {
            witness = Some(g.clone());
        }
        defects.push((g.clone(), worst));
    }
    Ok(MixingReport { witness, defects })
}
