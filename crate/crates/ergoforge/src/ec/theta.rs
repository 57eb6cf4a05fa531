use num::{Signed, Zero};
use rand::Rng as _;

use crate::action::FiniteAction;
use crate::cocycle::{eval_from_generators, generators_define_cocycle};
use crate::error::{Error, Result};
use crate::finite_group::FiniteGroupTable;
use crate::group::Element;
use crate::rational::{one, Q};
use crate::rng::seeded;
use crate::search::{minimize, space_size, Engine, SearchConfig};

/// Parameters of `θ_{k,q,F}`; a fixed partition `A: X → q` or cocycle `B` (given by its
/// values on the generators, as indices into `Sym(k)`) removes that outer supremum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaInstance {
    pub k: usize,
    pub q: usize,
    pub f: Vec<Element>,
    pub partition: Option<Vec<usize>>,
    pub cocycle: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaTerms {
    pub phi1: Q,
    pub phi2: Q,
    pub phi3: Q,
}

impl ThetaTerms {
    pub fn max(&self) -> Q {
        self.phi1.clone().max(self.phi2.clone()).max(self.phi3.clone())
    }
}

/// `θ` for the given outer choices, with its minimizing `C`. `exact` is set only when
/// both outer suprema and the inner infimum were enumerated completely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaValue {
    pub value: Q,
    pub exact: bool,
    pub inner_engine: Engine,
    pub partition: Vec<usize>,
    pub cocycle: Vec<Vec<usize>>,
    pub witness: Vec<usize>,
    pub evaluated: u64,
}

struct Prepared {
    /// Per `γ ∈ F`: images `γx` and cocycle values `B(γ, x)`.
    rows: Vec<(Vec<usize>, Vec<usize>)>,
}

fn prepare(a: &FiniteAction, sym: &FiniteGroupTable, f: &[Element], b: &[Vec<usize>]) -> Prepared {
    let rows = f
        .iter()
        .map(|g| {
            let img = a.perm_of(g).0;
            let vals = (0..a.len()).map(|x| eval_from_generators(a, sym, b, g, x)).collect();
            (img, vals)
        })
        .collect();
    Prepared { rows }
}

fn terms(a: &FiniteAction, k: usize, q: usize, sym: &FiniteGroupTable, pre: &Prepared, part: &[usize], c: &[usize]) -> ThetaTerms {
    let n = a.len();
    let kq = Q::from_integer((k as i64).into());
    let mut mc = vec![Q::zero(); k];
    let mut ma = vec![Q::zero(); q];
    let mut mac = vec![vec![Q::zero(); k]; q];
    for x in 0..n {
        let w = a.weight(x);
        mc[c[x]] += w;
        ma[part[x]] += w;
        mac[part[x]][c[x]] += w;
    }
    let target = one() / kq;
    let phi1 = mc.iter().map(|m| (m - &target).abs()).max().unwrap_or_else(Q::zero);
    let mut phi2 = Q::zero();
    for i in 0..q {
        for j in 0..k {
            let d = (&mac[i][j] - &ma[i] * &mc[j]).abs();
            if d > phi2 {
                phi2 = d;
            }
        }
    }
    // d(P ∩ C_i, P ∩ γ^{-1}C_{ρ(i)}) with P = {x : B(γ,x) = ρ}
    let perms = sym.perms.as_ref().expect("symmetric group");
    let mut phi3 = Q::zero();
    for (img, vals) in &pre.rows {
        let mut mass = vec![vec![Q::zero(); k]; sym.order()];
        for x in 0..n {
            let rho = vals[x];
            let p = &perms[rho];
            for (i, m) in mass[rho].iter_mut().enumerate() {
                if (c[x] == i) != (c[img[x]] == p.apply(i)) {
                    *m += a.weight(x);
                }
            }
        }
        for row in mass {
            for m in row {
                if m > phi3 {
                    phi3 = m;
                }
            }
        }
    }
    ThetaTerms { phi1, phi2, phi3 }
}

/// `φ₁(C)`, `φ₂(A, C)`, `φ₃(B, C)` for explicit `A`, `B`, `C`.
pub fn theta_terms(a: &FiniteAction, k: usize, q: usize, f: &[Element], part: &[usize], b: &[Vec<usize>], c: &[usize]) -> Result<ThetaTerms> {
    let sym = FiniteGroupTable::symmetric(k);
    check_outer(a, k, q, &sym, part, b)?;
    if c.len() != a.len() || c.iter().any(|&v| v >= k) {
        return Err(Error::Mismatch("C is not a labeling X → k".into()));
    }
    Ok(terms(a, k, q, &sym, &prepare(a, &sym, f, b), part, c))
}

fn check_outer(a: &FiniteAction, k: usize, q: usize, sym: &FiniteGroupTable, part: &[usize], b: &[Vec<usize>]) -> Result<()> {
    if k == 0 || q == 0 {
        return Err(Error::Field { field: "k, q".into(), msg: "must be at least 1".into() });
    }
    if part.len() != a.len() || part.iter().any(|&v| v >= q) {
        return Err(Error::Mismatch("A is not a labeling X → q".into()));
    }
    if b.len() != a.ctx.rank() || b.iter().any(|r| r.len() != a.len() || r.iter().any(|&v| v >= sym.order())) {
        return Err(Error::Mismatch("B does not assign Sym(k) values to each generator and point".into()));
    }
    if !generators_define_cocycle(a, sym, b) {
        return Err(Error::NotCocycle("generator values violate a relation".into()));
    }
    Ok(())
}

/// `inf_C max(φ₁, φ₂, φ₃)` for fixed `A` and `B`.
pub fn theta_inner(a: &FiniteAction, k: usize, q: usize, f: &[Element], part: &[usize], b: &[Vec<usize>], cfg: &SearchConfig) -> Result<(Q, Vec<usize>, Engine)> {
    let sym = FiniteGroupTable::symmetric(k);
    check_outer(a, k, q, &sym, part, b)?;
    let pre = prepare(a, &sym, f, b);
    let m = minimize(a.len(), k, cfg, &Q::zero(), None, |c| Some(terms(a, k, q, &sym, &pre, part, c).max()))?
        .expect("every partition is feasible");
    Ok((m.value, m.witness, m.engine))
}

fn unflatten(flat: &[usize], rank: usize, n: usize) -> Vec<Vec<usize>> {
    (0..rank).map(|i| flat[i * n..(i + 1) * n].to_vec()).collect()
}

/// Evaluates `θ_{k,q,F}`.
///
/// Omitted outer choices are enumerated when `|outer| · k^|X|` fits under the cap;
/// otherwise `cfg.restarts` seeded random choices are each improved by single-entry
/// ascent and the result is flagged as a lower bound.
pub fn theta_axiom_eval(a: &FiniteAction, inst: &ThetaInstance, cfg: &SearchConfig) -> Result<ThetaValue> {
    let (k, q, n, rank) = (inst.k, inst.q, a.len(), a.ctx.rank());
    let sym = FiniteGroupTable::symmetric(k);
    let kf = sym.order();
    let inner_cfg = SearchConfig { engine: cfg.engine, cap: cfg.cap, seed: cfg.seed, restarts: cfg.restarts };
    let inner_engine = inner_cfg.resolve(n, k)?;
    let a_free = inst.partition.is_none();
    let b_free = inst.cocycle.is_none();
    let a_len = if a_free { n } else { 0 };
    let b_len = if b_free { n * rank } else { 0 };
    // outer coordinates: partition entries (arity q) then cocycle entries (arity k!)
    let outer = space_size(a_len, q).zip(space_size(b_len, kf)).and_then(|(x, y)| x.checked_mul(y));
    let inner = space_size(n, k);
    let enumerate = outer.zip(inner).and_then(|(o, i)| o.checked_mul(i)).is_some_and(|t| t <= cfg.cap as u128);

    let split = |coords: &[usize]| -> (Vec<usize>, Vec<Vec<usize>>) {
        let part = inst.partition.clone().unwrap_or_else(|| coords[..a_len].to_vec());
        let b = inst.cocycle.clone().unwrap_or_else(|| unflatten(&coords[a_len..], rank, n));
        (part, b)
    };
    let mut evaluated = 0u64;
    let mut best: Option<ThetaValue> = None;
    let eval = |coords: &[usize], evaluated: &mut u64| -> Result<Option<(Q, Vec<usize>)>> {
        let (part, b) = split(coords);
        if !generators_define_cocycle(a, &sym, &b) {
            return Ok(None);
        }
        *evaluated += 1;
        let (v, c, _) = theta_inner(a, k, q, &inst.f, &part, &b, &inner_cfg)?;
        Ok(Some((v, c)))
    };
    let record = |coords: &[usize], v: Q, c: Vec<usize>, best: &mut Option<ThetaValue>| {
        if best.as_ref().is_none_or(|b| v > b.value) {
            let (partition, cocycle) = split(coords);
            *best = Some(ThetaValue { value: v, exact: false, inner_engine, partition, cocycle, witness: c, evaluated: 0 });
        }
    };

    let width = a_len + b_len;
    let arity_of = |i: usize| if i < a_len { q } else { kf };
    if enumerate {
        let mut err = None;
        for_each_mixed(width, &arity_of, |coords| match eval(coords, &mut evaluated) {
            Ok(Some((v, c))) => {
                record(coords, v, c, &mut best);
                true
            }
            Ok(None) => true,
            Err(e) => {
                err = Some(e);
                false
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
    } else {
        let mut rng = seeded(cfg.seed);
        let budget = (cfg.cap / inner.unwrap_or(u128::MAX).min(cfg.cap as u128).max(1) as u64).max(cfg.restarts as u64 * 4);
        for _ in 0..cfg.restarts.max(1) {
            let mut coords: Vec<usize> = (0..width).map(|i| rng.gen_range(0..arity_of(i))).collect();
            let Some((mut val, mut c)) = eval(&coords, &mut evaluated)? else { continue };
            let mut improved = true;
            while improved && evaluated < budget {
                improved = false;
                for i in 0..width {
                    for v in 0..arity_of(i) {
                        if v == coords[i] || evaluated >= budget {
                            continue;
                        }
                        let old = coords[i];
                        coords[i] = v;
                        match eval(&coords, &mut evaluated)? {
                            Some((nv, nc)) if nv > val => {
                                val = nv;
                                c = nc;
                                improved = true;
                            }
                            _ => coords[i] = old,
                        }
                    }
                }
            }
            record(&coords, val, c, &mut best);
        }
    }
    let mut out = best.ok_or_else(|| Error::NotCocycle("no Sym(k) cocycle was found to evaluate".into()))?;
    out.exact = enumerate && inner_engine == Engine::Exhaustive;
    out.evaluated = evaluated;
    Ok(out)
}

fn for_each_mixed(width: usize, arity: &impl Fn(usize) -> usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let mut cur = vec![0usize; width];
    loop {
        if !visit(&cur) {
            return;
        }
        let mut i = width;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < arity(i) {
                break;
            }
            cur[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::FiniteProbSpace;
    use crate::group::GroupContext;
    use crate::perm::Perm;

    fn cyclic3() -> FiniteAction {
        FiniteAction::new(GroupContext::free(1), FiniteProbSpace::uniform(3), vec![Perm(vec![1, 2, 0])]).unwrap()
    }

    #[test]
    fn k_one_vanishes() {
        let a = cyclic3();
        let inst = ThetaInstance { k: 1, q: 2, f: vec![a.ctx.generator(0)], partition: None, cocycle: None };
        let v = theta_axiom_eval(&a, &inst, &SearchConfig::exhaustive()).unwrap();
        assert!(v.value.is_zero());
        assert!(v.exact);
    }

    #[test]
    fn atom_partition_follows_cyclic_cocycle() {
        let a = cyclic3();
        let sym = FiniteGroupTable::symmetric(3);
        let shift = sym.index_of_perm(&Perm(vec![1, 2, 0])).unwrap();
        let b = vec![vec![shift; 3]];
        let c = vec![0, 1, 2];
        let t = theta_terms(&a, 3, 1, &[a.ctx.generator(0)], &[0, 0, 0], &b, &c).unwrap();
        assert!(t.max().is_zero());
        // the trivial cocycle is not matched by the atom partition
        let t = theta_terms(&a, 3, 1, &[a.ctx.generator(0)], &[0, 0, 0], &[vec![0; 3]], &c).unwrap();
        assert_eq!(t.phi3, Q::new(2.into(), 3.into()));
    }
}
