use std::collections::BTreeMap;

use num::Zero;
use rand::Rng as _;

use super::{inverse_images, max_gap, pattern_law, within, SearchOutcome, Verdict};
use crate::action::{Config, ExtensionTriple, FiniteAction, Labeling};
use crate::cocycle::{generators_define_cocycle, skew_from_generators, FiberMode};
use crate::coupling::PairMeasure;
use crate::error::{Error, Result};
use crate::finite_group::FiniteGroupTable;
use crate::group::Element;
use crate::rational::Q;
use crate::rng::seeded;
use crate::search::{for_each_labeling, minimize, space_size, Engine, SearchConfig};

/// Best finite-to-one approximation found: the skew product `X ×_σ k`, the labeling
/// `α′` on it, and the discrepancy against the original extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxOutcome {
    pub k: usize,
    /// Generator values of `σ` as indices into `Sym(k)`.
    pub cocycle: Vec<Vec<usize>>,
    pub extension: ExtensionTriple,
    pub alpha: Vec<usize>,
    pub value: Q,
    pub success: bool,
    /// Every `(k, σ, α′)` was examined exhaustively.
    pub exact: bool,
}

/// Searches skew products `X ×_σ k` with `k ≤ k_max` and labelings `α′` to match the
/// joint law of `(α_F, β∘φ)` within `ε`; returns the first success or the best found.
///
/// Cocycles are enumerated in lexicographic order of their generator values when the
/// whole `(σ, α′)` space fits under the cap, and sampled with the seed otherwise.
pub fn finite_extension_approx(
    e: &ExtensionTriple,
    alpha: &Labeling,
    beta: &Labeling,
    f: &[Element],
    eps: &Q,
    k_max: usize,
    cfg: &SearchConfig,
) -> Result<ApproxOutcome> {
    let y = &e.source;
    let x = &e.target;
    if alpha.len() != y.len() || beta.len() != x.len() {
        return Err(Error::Mismatch("labelings do not match the spaces".into()));
    }
    if k_max == 0 {
        return Err(Error::Field { field: "k_max".into(), msg: "must be at least 1".into() });
    }
    let p = alpha.arity;
    let target = pattern_law(y.weights(), &inverse_images(y, f), &alpha.values, &e.pull_labeling(beta).values);
    let (n, rank) = (x.len(), x.ctx.rank());
    let mut rng = seeded(cfg.seed);
    let mut best: Option<ApproxOutcome> = None;
    let mut exact = true;
    for k in 1..=k_max {
        let sym = FiniteGroupTable::symmetric(k);
        let inner = space_size(n * k, p);
        let sigmas = space_size(n * rank, sym.order());
        let fits = sigmas.zip(inner).and_then(|(s, i)| s.checked_mul(i)).is_some_and(|t| t <= cfg.cap as u128);
        let mut candidates: Vec<Vec<usize>> = Vec::new();
        if fits {
            for_each_labeling(n * rank, sym.order(), |w| {
                candidates.push(w.to_vec());
                true
            });
        } else {
            exact = false;
            for _ in 0..cfg.restarts.max(1) {
                candidates.push((0..n * rank).map(|_| rng.gen_range(0..sym.order())).collect());
            }
        }
        for flat in candidates {
            let gv: Vec<Vec<usize>> = (0..rank).map(|i| flat[i * n..(i + 1) * n].to_vec()).collect();
            if !generators_define_cocycle(x, &sym, &gv) {
                continue;
            }
            let skew = skew_from_generators(x, &sym, &gv, FiberMode::Permutation)?;
            let ext = skew.extension(x)?;
            let yp = &ext.source;
            let beta_p = ext.pull_labeling(beta);
            let invs = inverse_images(yp, f);
            let m = minimize(yp.len(), p, cfg, &Q::zero(), None, |w| Some(max_gap(&target, &pattern_law(yp.weights(), &invs, w, &beta_p.values))))?
                .expect("every labeling is feasible");
            if m.engine != Engine::Exhaustive {
                exact = false;
            }
            if best.as_ref().is_none_or(|b| m.value < b.value) {
                let success = within(&m.value, eps);
                best = Some(ApproxOutcome { k, cocycle: gv, extension: ext, alpha: m.witness, value: m.value, success, exact: false });
                if success {
                    let mut out = best.unwrap();
                    out.exact = out.value.is_zero();
                    return Ok(out);
                }
            }
        }
    }
    let mut out = best.ok_or_else(|| Error::NotCocycle("no cocycle into Sym(k) was found".into()))?;
    out.exact = exact;
    Ok(out)
}

fn coded_law(a: &FiniteAction, invs: &[Vec<usize>], beta: &[usize], gamma: &[usize]) -> BTreeMap<(Config, Config), Q> {
    let mut out = BTreeMap::new();
    for x in 0..a.len() {
        let w = a.weight(x);
        if w.is_zero() {
            continue;
        }
        let yb: Config = invs.iter().map(|p| beta[p[x]] as u8).collect();
        let zg: Config = invs.iter().map(|p| gamma[p[x]] as u8).collect();
        *out.entry((yb, zg)).or_insert_with(Q::zero) += w;
    }
    out
}

fn lemma_setup(a: &FiniteAction, beta: &Labeling, lambda: &PairMeasure) -> Result<Vec<Vec<usize>>> {
    if lambda.label_window != lambda.config_window {
        return Err(Error::Mismatch("both coordinates must use one window".into()));
    }
    if beta.len() != a.len() || beta.arity != lambda.labels {
        return Err(Error::Mismatch("β does not match the space or the label alphabet".into()));
    }
    Ok(inverse_images(a, lambda.label_window.elements()))
}

/// `max` over window cylinders of `|((β×γ)_W)_*μ - λ|`.
pub fn lemma_defect(a: &FiniteAction, beta: &Labeling, lambda: &PairMeasure, gamma: &[usize]) -> Result<Q> {
    let invs = lemma_setup(a, beta, lambda)?;
    Ok(max_gap(lambda.atoms(), &coded_law(a, &invs, &beta.values, gamma)))
}

/// Searches `γ: X → p` with `((β×γ)_W)_*μ` within `ε` of `λ` on every window cylinder.
///
/// The `q`-marginal of `λ` must already be within `ε` of `(β_W)_*μ`.
pub fn ec_lemma_search(a: &FiniteAction, beta: &Labeling, lambda: &PairMeasure, eps: &Q, cfg: &SearchConfig) -> Result<SearchOutcome> {
    let invs = lemma_setup(a, beta, lambda)?;
    let mut coded: BTreeMap<Config, Q> = BTreeMap::new();
    for x in 0..a.len() {
        let yb: Config = invs.iter().map(|p| beta.values[p[x]] as u8).collect();
        *coded.entry(yb).or_insert_with(Q::zero) += a.weight(x);
    }
    coded.retain(|_, w| !w.is_zero());
    let gap = max_gap(lambda.label_marginal().atoms(), &coded);
    if !within(&gap, eps) {
        return Err(Error::Mismatch(format!("label marginal is {gap} away from the coded source")));
    }
    let best = minimize(a.len(), lambda.alphabet, cfg, &Q::zero(), None, |g| {
        Some(max_gap(lambda.atoms(), &coded_law(a, &invs, &beta.values, g)))
    })?
    .expect("every labeling is feasible");
    let verdict = if within(&best.value, eps) { Verdict::Success } else { Verdict::Failure };
    Ok(SearchOutcome { engine: best.engine, seed: cfg.seed, value: Some(best.value), witness: Some(best.witness), verdict })
}
