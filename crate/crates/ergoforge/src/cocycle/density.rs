use num::Zero;

use super::Cochain;
use crate::action::FiniteAction;
use crate::error::{Error, Result};
use crate::group::Element;
use crate::rational::{one, Q};
use crate::search::{minimize, Engine, SearchConfig};

/// Result of [`coboundary_density_search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensitySearch {
    pub engine: Engine,
    pub seed: u64,
    /// Agreement mass of the best transfer function found.
    pub mass: Q,
    pub witness: Vec<usize>,
    pub success: bool,
}

/// `μ({x : f(γx) f(x)^{-1} = σ(γ, x) for all γ ∈ F})`.
pub fn agreement_mass(a: &FiniteAction, sigma: &Cochain, f_set: &[(Vec<usize>, Vec<usize>)], f: &[usize]) -> Q {
    let k = &sigma.group;
    let mut m = Q::zero();
    'points: for x in 0..a.len() {
        for (perm, row) in f_set {
            if k.op(f[perm[x]], k.inverse(f[x])) != row[x] {
                continue 'points;
            }
        }
        m += a.weight(x);
    }
    m
}

/// Searches for `f: X → K` whose coboundary agrees with `σ` on `F` on a set of mass
/// `> 1 - ε` (mass exactly `1` counts as success at `ε = 0`).
pub fn coboundary_density_search(
    a: &FiniteAction,
    sigma: &Cochain,
    f: &[Element],
    eps: &Q,
    cfg: &SearchConfig,
) -> Result<DensitySearch> {
    let f_set: Vec<(Vec<usize>, Vec<usize>)> = f
        .iter()
        .map(|g| {
            let p = sigma.position(g).ok_or_else(|| Error::WindowEscape(format!("{g} outside the cochain support")))?;
            Ok((a.perm_of(g).0, sigma.values[p].clone()))
        })
        .collect::<Result<_>>()?;
    let kk = sigma.group.order();
    let best = minimize(a.len(), kk, cfg, &Q::zero(), None, |w| Some(one() - agreement_mass(a, sigma, &f_set, w)))?
        .expect("every transfer function is feasible");
    let mass = one() - &best.value;
    let success = mass > one() - eps || mass == one();
    Ok(DensitySearch { engine: best.engine, seed: cfg.seed, mass, witness: best.witness, success })
}
