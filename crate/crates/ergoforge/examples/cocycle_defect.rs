//! Cocycle defects, coboundaries, transfer-function recovery and skew products.

use ergoforge::action::{FiniteAction, FiniteProbSpace};
use ergoforge::cocycle::{
    coboundary_density_search, coboundary_from, cocycle_defect, extend_free_cochain, skew_product, Cochain,
    DefectWeights, FiberMode,
};
use ergoforge::finite_group::FiniteGroupTable;
use ergoforge::group::{cayley_ball, GroupContext};
use ergoforge::perm::Perm;
use ergoforge::rational::{fmt_q, to_f64, zero};
use ergoforge::search::SearchConfig;

fn main() -> ergoforge::Result<()> {
    let f2 = GroupContext::free(2);
    let x = FiniteAction::new(f2.clone(), FiniteProbSpace::uniform(3), vec![Perm(vec![1, 2, 0]), Perm(vec![0, 2, 1])])?;
    let s3 = FiniteGroupTable::symmetric(3);
    let ball = cayley_ball(&f2, &f2.symmetric_generators(), 2);

    let cob = coboundary_from(&x, &s3, &[1, 4, 2], ball.elements())?;
    let w = DefectWeights::canonical(&f2, &cob);
    println!("coboundary defect: {}", fmt_q(&cocycle_defect(&x, &cob, &w)?.value));
    let mut broken = cob.clone();
    broken.values[3][0] = (broken.values[3][0] + 1) % 6;
    let d = cocycle_defect(&x, &broken, &w)?;
    println!("after changing one value: partition {:.3e} identity {:.3e}", to_f64(&d.partition_term), to_f64(&d.identity_term));

    let gens = f2.symmetric_generators();
    let sigma = coboundary_from(&x, &s3, &[1, 4, 2], &gens)?;
    let found = coboundary_density_search(&x, &sigma, &gens, &zero(), &SearchConfig::exhaustive())?;
    println!("transfer function {:?} agrees on mass {}", found.witness, fmt_q(&found.mass));

    // any generator values define a cocycle of a free group
    let ext = extend_free_cochain(&x, &s3, &[vec![0, 1, 2], vec![3, 3, 5]], &ball)?;
    println!("extended cocycle defect: {}", fmt_q(&cocycle_defect(&x, &ext, &DefectWeights::canonical(&f2, &ext))?.value));
    let sk = skew_product(&x, &ext, FiberMode::Permutation)?;
    println!("skew product has {} points; a acts as {:?}", sk.action.len(), sk.action.gens[0].0);

    let z = GroupContext::free(1);
    let swap = FiniteAction::new(z.clone(), FiniteProbSpace::uniform(2), vec![Perm(vec![1, 0])])?;
    let s2 = FiniteGroupTable::symmetric(2);
    let odo = Cochain::new(vec![z.generator(0)], s2, vec![vec![0, 1]], 2)?;
    println!("odometer step: {:?}", skew_product(&swap, &odo, FiberMode::Permutation)?.action.gens[0].0);
    Ok(())
}
