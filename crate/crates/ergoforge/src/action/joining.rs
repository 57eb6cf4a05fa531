use std::collections::BTreeMap;

use num::Zero;

use super::{FiniteAction, FiniteProbSpace};
use crate::error::{Error, Result};
use crate::rational::Q;

/// A joint measure on `X × Y`, stored on its support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Joining {
    pub nx: usize,
    pub ny: usize,
    pub mass: BTreeMap<(usize, usize), Q>,
}

impl Joining {
    pub fn get(&self, x: usize, y: usize) -> Q {
        self.mass.get(&(x, y)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn marginal_x(&self) -> Vec<Q> {
        let mut m = vec![Q::zero(); self.nx];
        for ((x, _), w) in &self.mass {
            m[*x] += w;
        }
        m
    }

    pub fn marginal_y(&self) -> Vec<Q> {
        let mut m = vec![Q::zero(); self.ny];
        for ((_, y), w) in &self.mass {
            m[*y] += w;
        }
        m
    }

    /// Invariance under the diagonal action `γ(x, y) = (γx, γy)`.
    pub fn is_invariant(&self, a: &FiniteAction, b: &FiniteAction) -> bool {
        a.gens.iter().zip(&b.gens).all(|(pa, pb)| {
            self.mass.iter().all(|((x, y), w)| self.get(pa.apply(*x), pb.apply(*y)) == *w)
        })
    }
}

fn pushforward(space: &FiniteProbSpace, map: &[usize], nz: usize) -> Result<Vec<Q>> {
    if map.len() != space.len() || map.iter().any(|&z| z >= nz) {
        return Err(Error::Mismatch("map does not match its space".into()));
    }
    let mut eta = vec![Q::zero(); nz];
    for (x, &z) in map.iter().enumerate() {
        eta[z] += &space.weights[x];
    }
    Ok(eta)
}

/// `λ(x, y) = μ(x)ν(y)/η(z)` when `φ(x) = ψ(y) = z`, and `0` otherwise, where `η` is
/// the common image measure on `0..nz`.
pub fn relative_independent_joining(
    mu: &FiniteProbSpace,
    phi: &[usize],
    nu: &FiniteProbSpace,
    psi: &[usize],
    nz: usize,
) -> Result<Joining> {
    let eta = pushforward(mu, phi, nz)?;
    let eta2 = pushforward(nu, psi, nz)?;
    if eta != eta2 {
        return Err(Error::InvalidMeasure("the two maps push to different measures on Z".into()));
    }
    let mut mass = BTreeMap::new();
    for (x, &z) in phi.iter().enumerate() {
        for (y, &z2) in psi.iter().enumerate() {
            if z != z2 || eta[z].is_zero() {
                continue;
            }
            let w = &mu.weights[x] * &nu.weights[y] / &eta[z];
            if !w.is_zero() {
                mass.insert((x, y), w);
            }
        }
    }
    Ok(Joining { nx: mu.len(), ny: nu.len(), mass })
}
