//! Labeling searches: the extension criterion, finite-to-one approximation and a
//! weak-mixing certificate for a Bernoulli shift.

use std::collections::BTreeMap;

use ergoforge::action::{ExtensionTriple, FiniteAction, FiniteProbSpace, Labeling};
use ergoforge::ec::{ec_criterion_search, finite_extension_approx, weak_mixing_certificate, BernoulliCylinders, Cylinder, EcQuery};
use ergoforge::group::{cayley_ball, GroupContext};
use ergoforge::perm::Perm;
use ergoforge::rational::{fmt_q, q};
use ergoforge::search::SearchConfig;

fn main() -> ergoforge::Result<()> {
    let z = GroupContext::free_abelian(1);
    let x = FiniteAction::new(z.clone(), FiniteProbSpace::uniform(2), vec![Perm(vec![1, 0])])?;
    let y = FiniteAction::new(z.clone(), FiniteProbSpace::uniform(4), vec![Perm(vec![1, 2, 3, 0])])?;
    let e = ExtensionTriple::new(y, x, vec![0, 1, 0, 1])?;
    let alpha = Labeling::new(vec![0, 0, 1, 1], 2)?;
    let beta = Labeling::constant(2, 1);
    let s = vec![z.identity(), z.generator(0)];

    let query = EcQuery { extension: e.clone(), alpha: alpha.clone(), beta: beta.clone(), s: s.clone(), eps: q(1, 8) };
    let out = ec_criterion_search(&query, &SearchConfig::exhaustive())?;
    println!(
        "criterion on X: minimum {} ({}), verdict {}",
        fmt_q(out.value.as_ref().unwrap()),
        out.engine.name(),
        out.verdict.name()
    );

    let approx = finite_extension_approx(&e, &alpha, &beta, &s, &q(1, 8), 3, &SearchConfig::exhaustive())?;
    println!("finite-to-one approximation: k = {}, value {}, success {}", approx.k, fmt_q(&approx.value), approx.success);

    let f2 = GroupContext::free(2);
    let bern = BernoulliCylinders::new(f2.clone(), vec![q(1, 2), q(1, 2)])?;
    let cyl: Cylinder = BTreeMap::from([(f2.identity(), 0)]);
    let g0 = cayley_ball(&f2, &f2.symmetric_generators(), 1);
    let rep = weak_mixing_certificate(&bern, &[(cyl.clone(), cyl)], &q(1, 100), g0.elements())?;
    for (g, d) in &rep.defects {
        println!("  defect at {:>4}: {}", f2.format(g), fmt_q(d));
    }
    println!("witness: {}", rep.witness.map_or("none".into(), |g| f2.format(&g)));
    Ok(())
}
