//! Shared search engines over labelings `0..n → 0..arity`.

use num::Zero;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::rational::Q;
use crate::rng::seeded;

/// Default cap on the number of candidates visited by an exhaustive search.
pub const DEFAULT_CAP: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    Exhaustive,
    Local,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Exhaustive => "exhaustive",
            Engine::Local => "local",
        }
    }
}

/// Engine selection and budgets. `engine: None` picks exhaustive when the space fits
/// under `cap` and local search otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub engine: Option<Engine>,
    pub cap: u64,
    pub seed: u64,
    pub restarts: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { engine: None, cap: DEFAULT_CAP, seed: 0, restarts: 16 }
    }
}

impl SearchConfig {
    pub fn exhaustive() -> Self {
        SearchConfig { engine: Some(Engine::Exhaustive), ..Self::default() }
    }

    pub fn local(seed: u64) -> Self {
        SearchConfig { engine: Some(Engine::Local), seed, ..Self::default() }
    }

    /// Decides the engine for a space of `arity^n` candidates.
    pub fn resolve(&self, n: usize, arity: usize) -> Result<Engine> {
        let size = space_size(n, arity);
        let fits = size.is_some_and(|s| s <= self.cap as u128);
        match self.engine {
            Some(Engine::Exhaustive) if !fits => Err(Error::CapExceeded { size: size_text(n, arity), cap: self.cap }),
            Some(e) => Ok(e),
            None if fits => Ok(Engine::Exhaustive),
            None => Ok(Engine::Local),
        }
    }
}

pub fn space_size(n: usize, arity: usize) -> Option<u128> {
    (arity as u128).checked_pow(n as u32)
}

pub fn size_text(n: usize, arity: usize) -> String {
    match space_size(n, arity) {
        Some(s) => s.to_string(),
        None => format!("{arity}^{n}"),
    }
}

/// Best labeling found, with the engine that found it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minimum {
    pub engine: Engine,
    pub value: Q,
    pub witness: Vec<usize>,
}

/// Calls `visit` on every labeling in lexicographic order until it returns `false`.
pub fn for_each_labeling(n: usize, arity: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let mut cur = vec![0usize; n];
    if arity == 0 {
        return;
    }
    loop {
        if !visit(&cur) {
            return;
        }
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < arity {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// Minimizes `objective` over labelings; `None` marks an infeasible candidate.
///
/// Exhaustive mode returns the lexicographically smallest minimizer and stops early
/// once `floor` is reached. Local mode runs seeded restarts of first-improvement
/// descent with single-point relabels and pairwise swaps, starting from `start` when
/// given. Returns `None` when no feasible candidate was seen.
pub fn minimize(
    n: usize,
    arity: usize,
    cfg: &SearchConfig,
    floor: &Q,
    start: Option<Vec<usize>>,
    mut objective: impl FnMut(&[usize]) -> Option<Q>,
) -> Result<Option<Minimum>> {
    let engine = cfg.resolve(n, arity)?;
    let mut best: Option<(Q, Vec<usize>)> = None;
    let better = |v: &Q, w: &[usize], best: &Option<(Q, Vec<usize>)>| match best {
        None => true,
        Some((bv, bw)) => v < bv || (v == bv && w < bw.as_slice()),
    };
    match engine {
        Engine::Exhaustive => {
            for_each_labeling(n, arity, |w| {
                if let Some(v) = objective(w) {
                    if best.as_ref().is_none_or(|(bv, _)| &v < bv) {
                        let stop = &v <= floor;
                        best = Some((v, w.to_vec()));
                        return !stop;
                    }
                }
                true
            });
        }
        Engine::Local => {
            let mut rng = seeded(cfg.seed);
            for r in 0..cfg.restarts.max(1) {
                let mut cur: Vec<usize> = match (&start, r) {
                    (Some(s), 0) => s.clone(),
                    _ => (0..n).map(|_| rng.gen_range(0..arity)).collect(),
                };
                let mut val = objective(&cur);
                loop {
                    let mut improved = false;
                    'moves: for x in 0..n {
                        for k in 0..arity {
                            if k == cur[x] {
                                continue;
                            }
                            let old = cur[x];
                            cur[x] = k;
                            let v = objective(&cur);
                            if strictly_better(&v, &val) {
                                val = v;
                                improved = true;
                                continue 'moves;
                            }
                            cur[x] = old;
                        }
                        for y in x + 1..n {
                            if cur[x] == cur[y] {
                                continue;
                            }
                            cur.swap(x, y);
                            let v = objective(&cur);
                            if strictly_better(&v, &val) {
                                val = v;
                                improved = true;
                                continue 'moves;
                            }
                            cur.swap(x, y);
                        }
                    }
                    if !improved {
                        break;
                    }
                }
                if let Some(v) = val {
                    if better(&v, &cur, &best) {
                        best = Some((v, cur));
                    }
                }
                if best.as_ref().is_some_and(|(v, _)| v <= floor) {
                    break;
                }
            }
        }
    }
    Ok(best.map(|(value, witness)| Minimum { engine, value, witness }))
}

fn strictly_better(v: &Option<Q>, cur: &Option<Q>) -> bool {
    match (v, cur) {
        (Some(_), None) => true,
        (Some(a), Some(b)) => a < b,
        _ => false,
    }
}

/// `0` as a floor for objectives that are nonnegative.
pub fn zero_floor() -> Q {
    Q::zero()
}
