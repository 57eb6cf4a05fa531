use std::collections::BTreeMap;

use super::Cochain;
use crate::action::FiniteAction;
use crate::error::{Error, Result};
use crate::finite_group::FiniteGroupTable;
use crate::group::{Element, GroupContext, Window};

/// A partial cochain `c: Γ → G^Γ` on a window, stored as `(β, α) ↦ c(β)(α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowCochain {
    pub group: FiniteGroupTable,
    pub values: BTreeMap<(Element, Element), usize>,
}

impl WindowCochain {
    pub fn new(group: FiniteGroupTable) -> Self {
        WindowCochain { group, values: BTreeMap::new() }
    }

    pub fn get(&self, beta: &Element, alpha: &Element) -> Option<usize> {
        self.values.get(&(beta.clone(), alpha.clone())).copied()
    }

    pub fn value(&self, ctx: &GroupContext, beta: &Element, alpha: &Element) -> Result<usize> {
        self.get(beta, alpha)
            .ok_or_else(|| Error::WindowEscape(format!("c({})({}) is not defined", ctx.format(beta), ctx.format(alpha))))
    }

    pub fn insert(&mut self, beta: Element, alpha: Element, g: usize) {
        self.values.insert((beta, alpha), g);
    }

    /// `(γ^t·c)(β)(α) = c(β)(γ^{-1}α)`.
    pub fn translate(&self, ctx: &GroupContext, g: &Element) -> WindowCochain {
        let values = self.values.iter().map(|((b, a), &v)| ((b.clone(), ctx.multiply(g, a)), v)).collect();
        WindowCochain { group: self.group.clone(), values }
    }

    /// Agreement on every pair where both are defined; also reports the overlap size.
    pub fn agrees_with(&self, other: &WindowCochain) -> (bool, usize) {
        let mut n = 0;
        for (k, v) in &self.values {
            if let Some(w) = other.values.get(k) {
                n += 1;
                if v != w {
                    return (false, n);
                }
            }
        }
        (true, n)
    }
}

/// A partial two-cochain `(α, β) ↦ G^Γ`, stored as `(α, β, γ) ↦ value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCochain {
    pub group: FiniteGroupTable,
    pub values: BTreeMap<(Element, Element, Element), usize>,
}

impl TwoCochain {
    /// `(δ^t·w)(α, β)(γ) = w(α, β)(δ^{-1}γ)`.
    pub fn translate(&self, ctx: &GroupContext, d: &Element) -> TwoCochain {
        let values =
            self.values.iter().map(|((a, b, g), &v)| ((a.clone(), b.clone(), ctx.multiply(d, g)), v)).collect();
        TwoCochain { group: self.group.clone(), values }
    }

    pub fn is_identity(&self) -> bool {
        self.values.values().all(|&v| v == self.group.identity)
    }
}

/// `c(x)(β)(α) = θ(β^{-1}, α^{-1}·x)` for `β, α` in an inverse-closed window; one
/// window cochain per point.
pub fn cochain_correspondence(a: &FiniteAction, theta: &Cochain, window: &Window) -> Result<Vec<WindowCochain>> {
    let ctx = &a.ctx;
    if !window.is_inverse_closed(ctx) {
        return Err(Error::Mismatch("window is not closed under inverses".into()));
    }
    let mut out = vec![WindowCochain::new(theta.group.clone()); a.len()];
    for beta in window.elements() {
        let row = theta
            .position(&ctx.inverse(beta))
            .ok_or_else(|| Error::WindowEscape(format!("θ undefined at {}", ctx.format(&ctx.inverse(beta)))))?;
        for alpha in window.elements() {
            let pa = a.perm_of(&ctx.inverse(alpha));
            for (x, c) in out.iter_mut().enumerate() {
                c.insert(beta.clone(), alpha.clone(), theta.values[row][pa.apply(x)]);
            }
        }
    }
    Ok(out)
}

/// `θ(γ, x) = c(x)(γ^{-1})(e)` on the given support.
pub fn correspondence_inverse(ctx: &GroupContext, cs: &[WindowCochain], support: &[Element]) -> Result<Cochain> {
    let group = cs.first().map(|c| c.group.clone()).ok_or_else(|| Error::Mismatch("no points".into()))?;
    let e = ctx.identity();
    let values = support
        .iter()
        .map(|g| cs.iter().map(|c| c.value(ctx, &ctx.inverse(g), &e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Cochain::new(support.to_vec(), group, values, cs.len())
}

/// `∂c(α, β)(γ) = c(αβ)(γ)^{-1} · c(β)(γα) · c(α)(γ)` over the listed ranges.
pub fn coboundary_operator(
    ctx: &GroupContext,
    c: &WindowCochain,
    alphas: &[Element],
    betas: &[Element],
    gammas: &[Element],
) -> Result<TwoCochain> {
    let k = &c.group;
    let mut values = BTreeMap::new();
    for al in alphas {
        for be in betas {
            let ab = ctx.multiply(al, be);
            for ga in gammas {
                let t1 = c.value(ctx, &ab, ga)?;
                let t2 = c.value(ctx, be, &ctx.multiply(ga, al))?;
                let t3 = c.value(ctx, al, ga)?;
                values.insert((al.clone(), be.clone(), ga.clone()), k.op(k.op(k.inverse(t1), t2), t3));
            }
        }
    }
    Ok(TwoCochain { group: k.clone(), values })
}
