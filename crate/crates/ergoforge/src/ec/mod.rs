//! Finitary searches behind existential closedness: the labeling criterion for factor
//! maps, the finite-to-one conditions, the axiom values `θ_{k,q,F}`, weak-mixing
//! certificates, finite-to-one approximation of extensions, and the open-mapping
//! witness search.
//!
//! Every search returns the engine it used; exhaustive results are exact minima and
//! ties go to the lexicographically smallest labeling.

mod approx;
mod mixing;
mod theta;

pub use approx::{ec_lemma_search, finite_extension_approx, lemma_defect, ApproxOutcome};
pub use mixing::{weak_mixing_certificate, BernoulliCylinders, Cylinder, MixingModel, MixingReport};
pub use theta::{theta_axiom_eval, theta_inner, theta_terms, ThetaInstance, ThetaTerms, ThetaValue};

use std::collections::BTreeMap;

use num::{Signed, Zero};

use crate::action::{ExtensionTriple, FiniteAction, Labeling};
use crate::cocycle::Cochain;
use crate::error::{Error, Result};
use crate::group::Element;
use crate::rational::{one, Q};
use crate::search::{minimize, Engine, SearchConfig};

/// Joint law of `(α_F(y), β(y))` with `α_F(y)(f) = α(f^{-1}·y)`; `inv_perms[i]` is the
/// permutation of `f_i^{-1}`.
pub type PatternLaw = BTreeMap<(Vec<usize>, usize), Q>;

pub(crate) fn inverse_images(a: &FiniteAction, f: &[Element]) -> Vec<Vec<usize>> {
    f.iter().map(|g| a.perm_of(&a.ctx.inverse(g)).0).collect()
}

pub fn pattern_law(weights: &[Q], inv_perms: &[Vec<usize>], alpha: &[usize], beta: &[usize]) -> PatternLaw {
    let mut out = PatternLaw::new();
    for (y, w) in weights.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        let pi = inv_perms.iter().map(|p| alpha[p[y]]).collect();
        *out.entry((pi, beta[y])).or_insert_with(Q::zero) += w;
    }
    out
}

/// `max |m1 - m2|` over the union of the supports.
pub fn max_gap<K: Ord>(m1: &BTreeMap<K, Q>, m2: &BTreeMap<K, Q>) -> Q {
    let mut best = Q::zero();
    for (k, v) in m1 {
        let d = match m2.get(k) {
            Some(w) => (v - w).abs(),
            None => v.abs(),
        };
        if d > best {
            best = d;
        }
    }
    for (k, w) in m2 {
        if !m1.contains_key(k) && w.abs() > best {
            best = w.abs();
        }
    }
    best
}

/// Strict tolerance, except that an exact match always passes.
pub fn within(value: &Q, eps: &Q) -> bool {
    value < eps || value.is_zero()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Success,
    Failure,
    /// No labeling meets the pushforward condition at all.
    PushforwardInfeasible,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Success => "success",
            Verdict::Failure => "failure",
            Verdict::PushforwardInfeasible => "pushforward infeasible",
        }
    }
}

/// A search result. With the exhaustive engine `value` is the true minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub engine: Engine,
    pub seed: u64,
    pub value: Option<Q>,
    pub witness: Option<Vec<usize>>,
    pub verdict: Verdict,
}

impl SearchOutcome {
    pub fn exact(&self) -> bool {
        self.engine == Engine::Exhaustive
    }
}

/// The data of the labeling criterion for a factor map `φ: Y → X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EcQuery {
    pub extension: ExtensionTriple,
    /// `α: Y → p`.
    pub alpha: Labeling,
    /// `β: X → q`.
    pub beta: Labeling,
    pub s: Vec<Element>,
    pub eps: Q,
}

impl EcQuery {
    pub fn validate(&self) -> Result<()> {
        let e = &self.extension;
        if self.alpha.len() != e.source.len() || self.beta.len() != e.target.len() {
            return Err(Error::Mismatch("labelings do not match the spaces".into()));
        }
        if self.eps.is_negative() || self.eps > one() {
            return Err(Error::Field { field: "eps".into(), msg: "tolerance must lie in [0, 1]".into() });
        }
        for g in &self.s {
            e.source.ctx.validate(g)?;
        }
        Ok(())
    }

    /// `π ↦ ν(α_S^{-1}(π) ∩ φ^{-1}(β^{-1}(j)))`.
    pub fn target_law(&self) -> PatternLaw {
        let e = &self.extension;
        let beta_y = e.pull_labeling(&self.beta);
        pattern_law(e.source.weights(), &inverse_images(&e.source, &self.s), &self.alpha.values, &beta_y.values)
    }

    /// Maximal discrepancy of a candidate `α̃: X → p` over all `π ∈ p^S`, `j ∈ q`.
    pub fn discrepancy(&self, tilde: &[usize]) -> Q {
        let x = &self.extension.target;
        max_gap(&self.target_law(), &pattern_law(x.weights(), &inverse_images(x, &self.s), tilde, &self.beta.values))
    }
}

/// Searches `α̃: X → p` with discrepancy `< ε`.
pub fn ec_criterion_search(query: &EcQuery, cfg: &SearchConfig) -> Result<SearchOutcome> {
    query.validate()?;
    let x = &query.extension.target;
    let target = query.target_law();
    let invs = inverse_images(x, &query.s);
    let best = minimize(x.len(), query.alpha.arity, cfg, &Q::zero(), None, |w| {
        Some(max_gap(&target, &pattern_law(x.weights(), &invs, w, &query.beta.values)))
    })?
    .expect("every labeling is feasible");
    let verdict = if within(&best.value, &query.eps) { Verdict::Success } else { Verdict::Failure };
    Ok(SearchOutcome { engine: best.engine, seed: cfg.seed, value: Some(best.value), witness: Some(best.witness), verdict })
}

/// The three quantities of the finite-to-one conditions for a labeling `α: X → k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteExtTerms {
    /// `max_i |μ(α^{-1}(i)) - 1/k|`.
    pub pushforward: Q,
    /// `max_{i,j} |μ(α^{-1}(i) ∩ β^{-1}(j)) - μ(α^{-1}(i))μ(β^{-1}(j))|`.
    pub independence: Q,
    /// `μ{x : α(fx) = σ(f,x)(α(x)) for every f ∈ F}`.
    pub agreement: Q,
}

fn sigma_rows(a: &FiniteAction, sigma: &Cochain, f: &[Element]) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    if sigma.group.perms.is_none() {
        return Err(Error::Mismatch("cocycle must take values in a symmetric group".into()));
    }
    f.iter()
        .map(|g| {
            let row = sigma.position(g).ok_or_else(|| Error::WindowEscape(format!("σ is not given at {}", a.ctx.format(g))))?;
            Ok((a.perm_of(g).0, sigma.values[row].clone()))
        })
        .collect()
}

fn ext_terms(a: &FiniteAction, k: usize, perms: &[crate::perm::Perm], rows: &[(Vec<usize>, Vec<usize>)], beta: &Labeling, alpha: &[usize]) -> FiniteExtTerms {
    let kq = Q::from_integer((k as i64).into());
    let mut ma = vec![Q::zero(); k];
    let mut mb = vec![Q::zero(); beta.arity];
    let mut mab = vec![vec![Q::zero(); beta.arity]; k];
    let mut agreement = Q::zero();
    for x in 0..a.len() {
        let w = a.weight(x);
        ma[alpha[x]] += w;
        mb[beta.values[x]] += w;
        mab[alpha[x]][beta.values[x]] += w;
        if rows.iter().all(|(p, s)| alpha[p[x]] == perms[s[x]].apply(alpha[x])) {
            agreement += w;
        }
    }
    let target = one() / kq;
    let pushforward = ma.iter().map(|m| (m - &target).abs()).max().unwrap_or_else(Q::zero);
    let mut independence = Q::zero();
    for i in 0..k {
        for j in 0..beta.arity {
            let d = (&mab[i][j] - &ma[i] * &mb[j]).abs();
            if d > independence {
                independence = d;
            }
        }
    }
    FiniteExtTerms { pushforward, independence, agreement }
}

/// Evaluates the finite-to-one conditions for a given labeling.
pub fn finite_ext_terms(a: &FiniteAction, sigma: &Cochain, f: &[Element], beta: &Labeling, alpha: &[usize]) -> Result<FiniteExtTerms> {
    let rows = sigma_rows(a, sigma, f)?;
    let perms = sigma.group.perms.as_ref().expect("checked");
    Ok(ext_terms(a, sigma.group.degree().unwrap(), perms, &rows, beta, alpha))
}

/// Searches `α: X → k` with `α_*μ` uniform (up to `slack`), `ε`-independence from `β`,
/// and agreement with `σ` on `F` on a set of mass `≥ 1 - ε`.
///
/// The value minimized is `max(independence, 1 - agreement)` over labelings meeting the
/// pushforward condition.
pub fn finite_ext_ec_search(
    a: &FiniteAction,
    sigma: &Cochain,
    f: &[Element],
    eps: &Q,
    beta: &Labeling,
    slack: &Q,
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    if beta.len() != a.len() || sigma.points() != a.len() {
        return Err(Error::Mismatch("labeling or cocycle does not match the space".into()));
    }
    let rows = sigma_rows(a, sigma, f)?;
    let k = sigma.group.degree().unwrap();
    let perms = sigma.group.perms.as_ref().expect("checked");
    let best = minimize(a.len(), k, cfg, &Q::zero(), None, |w| {
        let t = ext_terms(a, k, perms, &rows, beta, w);
        if &t.pushforward > slack {
            return None;
        }
        Some(t.independence.max(one() - t.agreement))
    })?;
    Ok(match best {
        None => SearchOutcome { engine: cfg.resolve(a.len(), k)?, seed: cfg.seed, value: None, witness: None, verdict: Verdict::PushforwardInfeasible },
        Some(m) => {
            let verdict = if m.value <= *eps { Verdict::Success } else { Verdict::Failure };
            SearchOutcome { engine: m.engine, seed: cfg.seed, value: Some(m.value), witness: Some(m.witness), verdict }
        }
    })
}
