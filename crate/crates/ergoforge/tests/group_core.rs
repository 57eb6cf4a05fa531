mod common;

use common::gen;
use ergoforge::finite_group::FiniteGroupTable;
use ergoforge::group::{cayley_ball, coset_cocycle, finite_quotient_action, Element, GroupContext, Membership, QuotientData};
use proptest::prelude::*;
use rand::Rng as _;

fn ball(ctx: &GroupContext, r: usize) -> Vec<Element> {
    cayley_ball(ctx, &ctx.symmetric_generators(), r).elements().to_vec()
}

fn parity(ctx: &GroupContext) -> QuotientData {
    let rank = ctx.rank();
    let m = Membership::Hom { target: FiniteGroupTable::cyclic(2), images: vec![1; rank], subgroup: vec![0] };
    QuotientData::new(ctx, m, vec![ctx.identity(), ctx.generator(0)]).unwrap()
}

#[test]
fn integer_ball_of_radius_three() {
    let z = GroupContext::free_abelian(1);
    let mut b: Vec<i64> = ball(&z, 3).iter().map(|g| g.0[0]).collect();
    b.sort();
    assert_eq!(b, (-3..=3).collect::<Vec<_>>());
}

#[test]
fn parity_kernel_of_f2_swaps() {
    let f2 = GroupContext::free(2);
    let a = finite_quotient_action(&f2, &parity(&f2)).unwrap();
    assert_eq!(a.len(), 2);
    for g in &a.gens {
        assert_eq!(g.0, vec![1, 0]);
    }
}

#[test]
fn even_integers_cocycle_at_odd_coset() {
    let z = GroupContext::free_abelian(1);
    let q = parity(&z);
    assert_eq!(coset_cocycle(&z, &q, &z.generator(0), 1).unwrap(), z.power(0, 2));
    assert_eq!(coset_cocycle(&z, &q, &z.generator(0), 0).unwrap(), z.identity());
}

#[test]
fn free_ball_sizes_match_closed_form() {
    for rank in 1..=3usize {
        let ctx = GroupContext::free(rank);
        for r in 0..=4usize {
            let want: usize = 1 + (1..=r).map(|i| 2 * rank * (2 * rank - 1).pow(i as u32 - 1)).sum::<usize>();
            assert_eq!(ball(&ctx, r).len(), want, "rank {rank} radius {r}");
        }
    }
}

#[test]
fn cyclic_ball_saturates() {
    let c5 = GroupContext::cyclic(5);
    assert_eq!(ball(&c5, 2).len(), 5);
    assert_eq!(ball(&c5, 9).len(), 5);
}

#[test]
fn transversal_must_be_valid() {
    let z = GroupContext::free_abelian(1);
    let m = || Membership::Hom { target: FiniteGroupTable::cyclic(2), images: vec![1], subgroup: vec![0] };
    assert!(QuotientData::new(&z, m(), vec![z.identity(), z.power(0, 2)]).is_err());
    assert!(QuotientData::new(&z, m(), vec![z.generator(0), z.identity()]).is_err());
    assert!(QuotientData::new(&z, m(), vec![z.identity()]).is_err());
}

fn word_strategy(rank: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..rank, -3i64..=3), 0..8)
}

fn build(ctx: &GroupContext, w: &[(usize, i64)]) -> Element {
    w.iter().fold(ctx.identity(), |acc, &(i, k)| ctx.multiply(&acc, &ctx.power(i, k)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn words_round_trip_through_text(w in word_strategy(3), abelian in any::<bool>()) {
        let ctx = if abelian { GroupContext::free_abelian(3) } else { GroupContext::free(3) };
        let g = build(&ctx, &w);
        prop_assert_eq!(ctx.parse_word(&ctx.format(&g)).unwrap(), g);
    }

    #[test]
    fn group_laws_hold(a in word_strategy(2), b in word_strategy(2), c in word_strategy(2)) {
        let ctx = GroupContext::free(2);
        let (a, b, c) = (build(&ctx, &a), build(&ctx, &b), build(&ctx, &c));
        prop_assert_eq!(ctx.multiply(&ctx.multiply(&a, &b), &c), ctx.multiply(&a, &ctx.multiply(&b, &c)));
        prop_assert!(ctx.is_identity(&ctx.multiply(&a, &ctx.inverse(&a))));
        prop_assert_eq!(ctx.inverse(&ctx.multiply(&a, &b)), ctx.multiply(&ctx.inverse(&b), &ctx.inverse(&a)));
        prop_assert_eq!(ctx.word_length(&ctx.multiply(&a, &b)) <= ctx.word_length(&a) + ctx.word_length(&b), true);
    }

    #[test]
    fn balls_are_nested_and_symmetric(rank in 1usize..=2, r in 0usize..=3) {
        for ctx in [GroupContext::free(rank), GroupContext::free_abelian(rank)] {
            let small = ball(&ctx, r);
            let big = ball(&ctx, r + 1);
            prop_assert_eq!(&small[0], &ctx.identity());
            prop_assert!(small.iter().all(|g| big.contains(g)));
            prop_assert!(small.iter().all(|g| small.contains(&ctx.inverse(g))));
        }
    }

    #[test]
    fn coset_cocycle_identity(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let (ctx, q) = match r.gen_range(0..3) {
            0 => { let f2 = GroupContext::free(2); let q = parity(&f2); (f2, q) }
            1 => { let z = GroupContext::free_abelian(1); let q = parity(&z); (z, q) }
            _ => {
                let z = GroupContext::free_abelian(1);
                let m = Membership::Hom { target: FiniteGroupTable::cyclic(3), images: vec![1], subgroup: vec![0] };
                let q = QuotientData::new(&z, m, vec![z.identity(), z.generator(0), z.power(0, 2)]).unwrap();
                (z, q)
            }
        };
        let b = ball(&ctx, 2);
        let g1 = &b[r.gen_range(0..b.len())];
        let g2 = &b[r.gen_range(0..b.len())];
        for i in 0..q.index() {
            let j = q.coset_of(&ctx, &ctx.multiply(g2, &q.transversal[i])).unwrap();
            let lhs = coset_cocycle(&ctx, &q, &ctx.multiply(g1, g2), i).unwrap();
            let rhs = ctx.multiply(&coset_cocycle(&ctx, &q, g1, j).unwrap(), &coset_cocycle(&ctx, &q, g2, i).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
        // the coset action is a homomorphism
        let a = finite_quotient_action(&ctx, &q).unwrap();
        prop_assert_eq!(a.perm_of(&ctx.multiply(g1, g2)), a.perm_of(g1).compose(&a.perm_of(g2)));
        for i in 0..q.index() {
            prop_assert_eq!(a.act(g1, i), q.coset_of(&ctx, &ctx.multiply(g1, &q.transversal[i])).unwrap());
        }
    }
}
