use num::Zero;

use super::{cocycle_defect, Cochain, DefectWeights};
use crate::action::{ExtensionTriple, FiniteAction, FiniteProbSpace};
use crate::error::{Error, Result};
use crate::finite_group::FiniteGroupTable;
use crate::perm::Perm;
use crate::rational::Q;

/// How the cocycle's values act on the fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberMode {
    /// Values are permutations of `0..k` (the group must be a symmetric group).
    Permutation,
    /// `K` acts on itself by left translation.
    Regular,
}

/// `X ×_σ k` with `γ(x, u) = (γx, σ(γ, x)u)`; point `(x, u)` has index `x·k + u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewProduct {
    pub action: FiniteAction,
    pub fiber: usize,
    pub projection: Vec<usize>,
}

impl SkewProduct {
    pub fn extension(&self, base: &FiniteAction) -> Result<ExtensionTriple> {
        ExtensionTriple::new(self.action.clone(), base.clone(), self.projection.clone())
    }
}

fn fiber_size(group: &FiniteGroupTable, mode: FiberMode) -> Result<usize> {
    match mode {
        FiberMode::Permutation => group.degree().ok_or_else(|| Error::Mismatch("group has no permutation representation".into())),
        FiberMode::Regular => Ok(group.order()),
    }
}

/// Builds the skew product of a cocycle given on (at least) the generators.
pub fn skew_product(a: &FiniteAction, sigma: &Cochain, mode: FiberMode) -> Result<SkewProduct> {
    let w = DefectWeights::canonical(&a.ctx, sigma);
    if !cocycle_defect(a, sigma, &w)?.value.is_zero() {
        return Err(Error::NotCocycle("cocycle defect is nonzero".into()));
    }
    let gv = sigma.generator_values(&a.ctx)?;
    skew_from_generators(a, &sigma.group, &gv, mode)
}

/// Skew product from generator values alone; fails when they violate a relation.
pub fn skew_from_generators(a: &FiniteAction, group: &FiniteGroupTable, gv: &[Vec<usize>], mode: FiberMode) -> Result<SkewProduct> {
    let k = fiber_size(group, mode)?;
    let fperms: Vec<Perm> = (0..group.order()).map(|g| group.fiber_perm(g, mode == FiberMode::Regular)).collect();
    let n = a.len();
    let gens = (0..a.ctx.rank())
        .map(|i| Perm((0..n * k).map(|p| a.gens[i].apply(p / k) * k + fperms[gv[i][p / k]].apply(p % k)).collect()))
        .collect();
    let kq = Q::from_integer((k as i64).into());
    let weights = (0..n * k).map(|p| a.weight(p / k) / &kq).collect();
    let space = FiniteProbSpace::new(weights)?;
    let action = FiniteAction::new(a.ctx.clone(), space, gens).map_err(|e| Error::NotCocycle(e.to_string()))?;
    Ok(SkewProduct { action, fiber: k, projection: (0..n * k).map(|p| p / k).collect() })
}

/// `(x, u) ↦ (x, f(x)^{-1}u)`, the map from the skew product of the coboundary of `f`
/// onto the trivial extension.
pub fn coboundary_isomorphism(group: &FiniteGroupTable, f: &[usize], mode: FiberMode) -> Result<Vec<usize>> {
    let k = fiber_size(group, mode)?;
    Ok((0..f.len() * k)
        .map(|p| {
            let x = p / k;
            x * k + group.fiber_perm(group.inverse(f[x]), mode == FiberMode::Regular).apply(p % k)
        })
        .collect())
}
