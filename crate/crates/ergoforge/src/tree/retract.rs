use std::collections::BTreeMap;

use super::{components, DirectedForest};
use crate::cocycle::WindowCochain;
use crate::error::{Error, Result};
use crate::finite_group::FiniteGroupTable;
use crate::group::{Element, GroupContext};

/// Edge label for the step `u → v`: `c(u^{-1}v)(u)` if `(v, u)` is an edge, and
/// `c(v^{-1}u)(v)^{-1}` if `(u, v)` is.
fn step_label(
    ctx: &GroupContext,
    t: &DirectedForest,
    k: &FiniteGroupTable,
    lookup: &impl Fn(&Element, &Element) -> Option<usize>,
    v: &Element,
    u: &Element,
) -> Result<usize> {
    let escape = |b: &Element, a: &Element| Error::WindowEscape(format!("c({})({}) is not defined", ctx.format(b), ctx.format(a)));
    if t.has_edge(v, u) {
        let b = ctx.left_div(u, v);
        lookup(&b, u).ok_or_else(|| escape(&b, u))
    } else if t.has_edge(u, v) {
        let b = ctx.left_div(v, u);
        lookup(&b, v).map(|g| k.inverse(g)).ok_or_else(|| escape(&b, v))
    } else {
        Err(Error::InvalidForest(format!("{} and {} are not adjacent", ctx.format(u), ctx.format(v))))
    }
}

/// Product `g(v_n, v_{n-1}) ⋯ g(v_1, v_0)` along a walk `v_0, …, v_n` of adjacent
/// vertices (backtracking allowed).
pub fn walk_product(ctx: &GroupContext, t: &DirectedForest, c: &WindowCochain, walk: &[Element]) -> Result<usize> {
    let lookup = |b: &Element, a: &Element| c.get(b, a);
    walk_with(ctx, t, &c.group, &lookup, walk)
}

fn walk_with(
    ctx: &GroupContext,
    t: &DirectedForest,
    k: &FiniteGroupTable,
    lookup: &impl Fn(&Element, &Element) -> Option<usize>,
    walk: &[Element],
) -> Result<usize> {
    let mut acc = k.identity;
    for w in walk.windows(2) {
        acc = k.op(step_label(ctx, t, k, lookup, &w[1], &w[0])?, acc);
    }
    Ok(acc)
}

/// `r_T(c)(β)(α)` for a cochain given by `lookup(β, α)`.
pub fn retract_with(
    ctx: &GroupContext,
    t: &DirectedForest,
    k: &FiniteGroupTable,
    lookup: &impl Fn(&Element, &Element) -> Option<usize>,
    beta: &Element,
    alpha: &Element,
) -> Result<usize> {
    let target = ctx.multiply(alpha, beta);
    let path = t.path(alpha, &target).ok_or_else(|| {
        Error::WindowEscape(format!("{} and {} lie in different components", ctx.format(alpha), ctx.format(&target)))
    })?;
    walk_with(ctx, t, k, lookup, &path)
}

/// `r_T(c)` on the requested `(β, α)` pairs.
pub fn retract(ctx: &GroupContext, t: &DirectedForest, c: &WindowCochain, pairs: &[(Element, Element)]) -> Result<WindowCochain> {
    let lookup = |b: &Element, a: &Element| c.get(b, a);
    let mut out = WindowCochain::new(c.group.clone());
    for (b, a) in pairs {
        out.insert(b.clone(), a.clone(), retract_with(ctx, t, &c.group, &lookup, b, a)?);
    }
    Ok(out)
}

/// `r_T(c)` on every pair `(α^{-1}v, α)` with `α, v` in one component.
pub fn retract_all(ctx: &GroupContext, t: &DirectedForest, c: &WindowCochain) -> Result<WindowCochain> {
    let e = components(t);
    let mut pairs = Vec::new();
    for class in &e.classes {
        for a in class {
            for v in class {
                pairs.push((ctx.left_div(a, v), a.clone()));
            }
        }
    }
    retract(ctx, t, c, &pairs)
}

/// A choice of forest for each vertex `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeField {
    pub trees: BTreeMap<Element, DirectedForest>,
}

impl TreeField {
    /// `ℓ(T)(γ) = (γ^{-1})^d·T` on the listed points.
    pub fn constant_lift(ctx: &GroupContext, t: &DirectedForest, points: &[Element]) -> Self {
        let trees = points.iter().map(|g| (g.clone(), t.translate(ctx, &ctx.inverse(g)))).collect();
        TreeField { trees }
    }

    /// `(γ^s·y)(α) = y(γ^{-1}α)`.
    pub fn shift(&self, ctx: &GroupContext, g: &Element) -> Self {
        let trees = self.trees.iter().map(|(a, t)| (ctx.multiply(g, a), t.clone())).collect();
        TreeField { trees }
    }
}

/// `r̂_y(c)(β)(α) = r_{y(α)}((α^{-1})^t·c)(β)(e)` on the requested pairs.
pub fn lifted_retraction(
    ctx: &GroupContext,
    y: &TreeField,
    c: &WindowCochain,
    pairs: &[(Element, Element)],
) -> Result<WindowCochain> {
    let e = ctx.identity();
    let mut out = WindowCochain::new(c.group.clone());
    for (b, a) in pairs {
        let t = y.trees.get(a).ok_or_else(|| Error::WindowEscape(format!("no tree at {}", ctx.format(a))))?;
        // ((α^{-1})^t c)(β')(δ) = c(β')(αδ)
        let lookup = |bb: &Element, d: &Element| c.get(bb, &ctx.multiply(a, d));
        out.insert(b.clone(), a.clone(), retract_with(ctx, t, &c.group, &lookup, b, &e)?);
    }
    Ok(out)
}
