//! Pushforward laws of a labeling, Shannon entropies, freeness and weak containment
//! defects for small actions of Z.

use ergoforge::action::{
    entropy, freeness_defect, pushforward_distribution, relative_entropy, weak_containment_search, FiniteAction,
    FiniteProbSpace, Labeling,
};
use ergoforge::group::{cayley_ball, GroupContext};
use ergoforge::perm::Perm;
use ergoforge::rational::{fmt_q, q};

fn main() -> ergoforge::Result<()> {
    let z = GroupContext::free_abelian(1);
    let space = FiniteProbSpace::new(vec![q(1, 6), q(1, 3), q(1, 6), q(1, 3)])?;
    let rot = FiniteAction::new(z.clone(), space.clone(), vec![Perm(vec![2, 3, 0, 1])])?;
    let alpha = Labeling::new(vec![0, 1, 1, 0], 2)?;
    let w = cayley_ball(&z, &z.symmetric_generators(), 1);
    let law = pushforward_distribution(&rot, &alpha, &w)?;
    println!("law of the labeling on the window {{-1, 0, 1}}:");
    for (cfg, m) in law.atoms() {
        println!("  {cfg:?}  {}", fmt_q(m));
    }
    let beta = Labeling::new(vec![0, 0, 1, 1], 2)?;
    println!("H(alpha) = {:.6}", entropy(&space, &alpha));
    println!("H(alpha | beta) = {:.6}", relative_entropy(&space, &alpha, &beta));

    let t = z.generator(0);
    println!("freeness defect of the rotation at a: {}", fmt_q(&freeness_defect(&rot, &t, 2, 20)?));
    let fixed = FiniteAction::trivial(z.clone(), FiniteProbSpace::uniform(4));
    println!("freeness defect of the trivial action at a: {}", fmt_q(&freeness_defect(&fixed, &t, 2, 20)?));

    let swap = FiniteAction::new(z.clone(), FiniteProbSpace::uniform(2), vec![Perm(vec![1, 0])])?;
    let r = weak_containment_search(&swap, &fixed, &[vec![true, false]], &[z.identity(), t], 20)?;
    println!("swap inside the trivial action: defect {} with B = {:?}", fmt_q(&r.defect), r.witness);
    Ok(())
}
