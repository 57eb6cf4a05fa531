#![allow(dead_code)]

pub mod gen;

use std::collections::BTreeMap;
use std::path::PathBuf;

use ergoforge::action::{FiniteAction, FiniteProbSpace, Labeling, WindowMeasure};
use ergoforge::cocycle::{coboundary_from, cochain_correspondence, extend_free_cochain, Cochain};
use ergoforge::coupling::{Kernel, PairMeasure};
use ergoforge::finite_group::FiniteGroupTable;
use ergoforge::group::{cayley_ball, GroupContext, Window};
use ergoforge::io::{
    ActionDoc, CochainDoc, Document, FactorMapDoc, FiniteSpec, ForestDoc, GroupDoc, GroupSpec, KernelDoc, Kind,
    LabelingDoc, MembershipSpec, QuotientSpec, WindowMeasureDoc,
};
use ergoforge::perm::Perm;
use ergoforge::rational::q;
use ergoforge::tree::DirectedForest;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture(name: &str) -> String {
    fixture_dir().join(name).display().to_string()
}

fn f2_three() -> FiniteAction {
    FiniteAction::new(GroupContext::free(2), FiniteProbSpace::uniform(3), vec![Perm(vec![1, 2, 0]), Perm(vec![1, 0, 2])]).unwrap()
}

fn labeling(values: Vec<usize>, arity: usize) -> Document {
    Document::new(Kind::Labeling, &LabelingDoc::from_labeling(&Labeling::new(values, arity).unwrap()))
}

fn window(ctx: &GroupContext, ws: &[&str]) -> Window {
    Window::new(ws.iter().map(|w| ctx.parse_word(w).unwrap()).collect()).unwrap()
}

fn measure(ctx: &GroupContext, w: &Window, atoms: &[(&[u8], (i64, i64))]) -> WindowMeasure {
    WindowMeasure::new(w.clone(), 2, atoms.iter().map(|(c, (n, d))| (c.to_vec(), q(*n, *d))).collect()).unwrap_or_else(|e| panic!("{e} in {ctx:?}"))
}

/// Every repository fixture, by file name.
pub fn fixtures() -> Vec<(&'static str, Document)> {
    let f2 = GroupContext::free(2);
    let z = GroupContext::free_abelian(1);
    let f2s = GroupSpec::free(2);
    let zs = GroupSpec::free_abelian(1);
    let mut out = Vec::new();

    out.push(("f2.group.txt", Document::new(Kind::Group, &GroupDoc { group: f2s.clone(), quotient: None })));
    let zq = GroupDoc {
        group: zs.clone(),
        quotient: Some(QuotientSpec {
            membership: MembershipSpec::Hom { target: FiniteSpec::Cyclic { order: 2 }, images: vec![1], subgroup: vec![0] },
            transversal: vec!["e".into(), "a".into()],
        }),
    };
    out.push(("z_index2.group.txt", Document::new(Kind::Group, &zq)));

    let three = f2_three();
    out.push(("f2_three.action.txt", Document::new(Kind::Action, &ActionDoc::from_action(f2s.clone(), &three))));
    let z_two = FiniteAction::new(z.clone(), FiniteProbSpace::uniform(2), vec![Perm(vec![1, 0])]).unwrap();
    out.push(("z_two.action.txt", Document::new(Kind::Action, &ActionDoc::from_action(zs.clone(), &z_two))));
    let z_four = FiniteAction::new(z.clone(), FiniteProbSpace::uniform(4), vec![Perm(vec![2, 3, 0, 1])]).unwrap();
    out.push(("z_four.action.txt", Document::new(Kind::Action, &ActionDoc::from_action(zs.clone(), &z_four))));
    let z_rot3 = FiniteAction::new(z.clone(), FiniteProbSpace::uniform(3), vec![Perm(vec![1, 2, 0])]).unwrap();
    out.push(("z_rot3.action.txt", Document::new(Kind::Action, &ActionDoc::from_action(zs.clone(), &z_rot3))));
    let sub = ActionDoc {
        group: zs.clone(),
        weights: vec!["1/6".into(), "1/3".into(), "1/4".into(), "1/4".into()],
        generators: vec![vec![0, 1, 3, 2]],
        subgroup: Some(vec!["a^2".into()]),
    };
    out.push(("z_sub.action.txt", Document::new(Kind::Action, &sub)));
    out.push(("z_map.factor-map.txt", Document::new(Kind::FactorMap, &FactorMapDoc { map: vec![0, 0, 1, 1] })));

    out.push(("y_alpha.labeling.txt", labeling(vec![0, 1, 0, 1], 2)));
    out.push(("x_beta.labeling.txt", labeling(vec![0, 1], 2)));
    out.push(("three_beta.labeling.txt", labeling(vec![0, 1, 1], 2)));
    out.push(("three_alpha.labeling.txt", labeling(vec![0, 1, 2], 3)));

    let z2 = FiniteGroupTable::cyclic(2);
    let ball1 = cayley_ball(&f2, &f2.symmetric_generators(), 1);
    let cob = coboundary_from(&three, &z2, &[0, 1, 1], ball1.elements()).unwrap();
    let c2 = FiniteSpec::Cyclic { order: 2 };
    out.push(("f2_coboundary.cochain.txt", Document::new(Kind::Cochain, &CochainDoc::from_cochain(f2s.clone(), c2.clone(), &f2, &cob))));
    let mut broken = cob.clone();
    broken.values[1][0] ^= 1;
    out.push(("f2_broken.cochain.txt", Document::new(Kind::Cochain, &CochainDoc::from_cochain(f2s.clone(), c2, &f2, &broken))));

    let sym3 = FiniteGroupTable::symmetric(3);
    let gv = vec![vec![1, 0, 3], vec![2, 2, 5]];
    let gens = Cochain::new(vec![f2.generator(0), f2.generator(1)], sym3.clone(), gv.clone(), 3).unwrap();
    let s3 = FiniteSpec::Symmetric { degree: 3 };
    out.push(("f2_sym3.cochain.txt", Document::new(Kind::Cochain, &CochainDoc::from_cochain(f2s.clone(), s3.clone(), &f2, &gens))));
    let ball2 = cayley_ball(&f2, &f2.symmetric_generators(), 2);
    let theta = extend_free_cochain(&three, &sym3, &gv, &ball2).unwrap();
    let wc = cochain_correspondence(&three, &theta, &ball2).unwrap().remove(0);
    out.push(("f2_window.cochain.txt", Document::new(Kind::Cochain, &CochainDoc::from_window_cochain(f2s.clone(), s3, &f2, &wc))));

    let e = f2.identity();
    let (a, b) = (f2.generator(0), f2.generator(1));
    let (ai, bi) = (f2.inverse(&a), f2.inverse(&b));
    let star = DirectedForest::new(ball1.clone(), vec![(e.clone(), a.clone()), (b, e.clone()), (e.clone(), ai), (bi, e.clone())]).unwrap();
    out.push(("f2_star.forest.txt", Document::new(Kind::Forest, &ForestDoc::from_forest(f2s.clone(), &f2, &star))));
    let w = window(&f2, &["e", "a"]);
    let edge = DirectedForest::new(w.clone(), vec![(a.clone(), e.clone())]).unwrap();
    out.push(("f2_edge.forest.txt", Document::new(Kind::Forest, &ForestDoc::from_forest(f2s.clone(), &f2, &edge))));
    out.push(("f2_empty.forest.txt", Document::new(Kind::Forest, &ForestDoc::from_forest(f2s.clone(), &f2, &DirectedForest::empty(w.clone())))));

    let kappa = measure(&f2, &w, &[(&[0, 0], (1, 2)), (&[0, 1], (1, 4)), (&[1, 1], (1, 4))]);
    out.push(("kappa.window-measure.txt", Document::new(Kind::WindowMeasure, &WindowMeasureDoc::from_measure(f2s.clone(), &f2, &kappa))));
    let kappa2 = measure(&f2, &w, &[(&[0, 0], (1, 3)), (&[1, 0], (1, 3)), (&[1, 1], (1, 3))]);
    out.push(("kappa2.window-measure.txt", Document::new(Kind::WindowMeasure, &WindowMeasureDoc::from_measure(f2s.clone(), &f2, &kappa2))));
    let nu = measure(&f2, &w, &[(&[0, 0], (1, 2)), (&[1, 1], (1, 2))]);
    out.push(("nu.window-measure.txt", Document::new(Kind::WindowMeasure, &WindowMeasureDoc::from_measure(f2s.clone(), &f2, &nu))));
    let lambda = PairMeasure::new(
        w.clone(),
        2,
        w.clone(),
        2,
        BTreeMap::from([
            ((vec![0, 0], vec![0, 0]), q(1, 4)),
            ((vec![0, 0], vec![1, 1]), q(1, 4)),
            ((vec![1, 1], vec![0, 1]), q(1, 2)),
        ]),
    )
    .unwrap();
    out.push(("lambda.window-measure.txt", Document::new(Kind::WindowMeasure, &WindowMeasureDoc::from_pair(f2s.clone(), &f2, &lambda))));
    let rows: BTreeMap<Vec<u8>, WindowMeasure> = BTreeMap::from([
        (vec![0], measure(&f2, &w, &[(&[0, 0], (1, 2)), (&[1, 0], (1, 2))])),
        (vec![1], measure(&f2, &w, &[(&[0, 1], (1, 3)), (&[1, 1], (2, 3))])),
    ]);
    let kernel = Kernel::new(window(&f2, &["e"]), 2, w.clone(), 2, rows).unwrap();
    out.push(("kernel.kernel.txt", Document::new(Kind::Kernel, &KernelDoc::from_kernel(f2s.clone(), &f2, &kernel))));

    let wz = window(&z, &["e", "a"]);
    let lz = PairMeasure::new(
        wz.clone(),
        2,
        wz,
        2,
        BTreeMap::from([
            ((vec![0, 1], vec![1, 1]), q(1, 3)),
            ((vec![1, 0], vec![0, 1]), q(1, 3)),
            ((vec![1, 1], vec![1, 0]), q(1, 3)),
        ]),
    )
    .unwrap();
    out.push(("lambda_z.window-measure.txt", Document::new(Kind::WindowMeasure, &WindowMeasureDoc::from_pair(zs, &z, &lz))));
    out
}

/// Command lines over the fixtures and their expected exit codes.
pub fn cli_cases() -> Vec<(Vec<String>, i32)> {
    let f = |n: &str| fixture(n);
    let s = |x: &str| x.to_string();
    vec![
        (vec![s("group"), f("f2.group.txt"), s("--radius"), s("2"), s("--word"), s("a b a^-1 a")], 0),
        (vec![s("group"), f("z_index2.group.txt"), s("--word"), s("a^3"), s("--word"), s("a^-2")], 0),
        (vec![s("action"), f("f2_three.action.txt"), s("--element"), s("a"), s("--order"), s("3")], 0),
        (vec![s("entropy"), f("f2_three.action.txt"), f("three_alpha.labeling.txt"), s("--given"), f("three_beta.labeling.txt")], 0),
        (vec![s("cocycle"), s("defect"), f("f2_three.action.txt"), f("f2_coboundary.cochain.txt")], 0),
        (vec![s("cocycle"), s("defect"), f("f2_three.action.txt"), f("f2_broken.cochain.txt")], 1),
        (vec![s("cocycle"), s("defect"), f("f2_three.action.txt"), f("f2_coboundary.cochain.txt"), s("--shuffle"), s("7")], 0),
        (vec![s("cocycle"), s("density"), f("f2_three.action.txt"), f("f2_coboundary.cochain.txt"), s("--element"), s("a"), s("--element"), s("b")], 0),
        (vec![s("cocycle"), s("skew"), f("f2_three.action.txt"), f("f2_coboundary.cochain.txt"), s("--regular")], 0),
        (vec![s("cocycle"), s("extend"), f("f2_three.action.txt"), f("f2_sym3.cochain.txt"), s("--radius"), s("2")], 0),
        (vec![s("tree"), s("components"), f("f2_star.forest.txt")], 0),
        (vec![s("tree"), s("retract"), f("f2_star.forest.txt"), f("f2_window.cochain.txt")], 0),
        (vec![s("couple"), f("kappa.window-measure.txt"), f("kappa2.window-measure.txt")], 0),
        (vec![s("rerandomize"), f("kappa.window-measure.txt"), f("f2_empty.forest.txt")], 0),
        (vec![s("forest-measure"), f("kappa.window-measure.txt"), f("f2_edge.forest.txt")], 0),
        (vec![s("zeta"), f("lambda.window-measure.txt"), s("--forest"), f("f2_edge.forest.txt")], 0),
        (
            vec![
                s("xi"),
                f("kernel.kernel.txt"),
                f("nu.window-measure.txt"),
                s("--forest"),
                f("f2_edge.forest.txt"),
                s("--forest"),
                f("f2_empty.forest.txt"),
                s("--weights"),
                s("1/2,1/2"),
            ],
            0,
        ),
        (
            vec![
                s("ec"),
                s("check"),
                f("z_four.action.txt"),
                f("z_two.action.txt"),
                f("z_map.factor-map.txt"),
                f("y_alpha.labeling.txt"),
                f("x_beta.labeling.txt"),
                s("--element"),
                s("e"),
                s("--element"),
                s("a"),
                s("--engine"),
                s("exhaustive"),
            ],
            1,
        ),
        (
            vec![
                s("ec"),
                s("finite-ext"),
                f("f2_three.action.txt"),
                f("f2_sym3.cochain.txt"),
                f("three_beta.labeling.txt"),
                s("--element"),
                s("a"),
                s("--tol"),
                s("1"),
                s("--slack"),
                s("1"),
            ],
            0,
        ),
        (vec![s("ec"), s("theta"), f("f2_three.action.txt"), s("--k"), s("2"), s("--q"), s("2"), s("--element"), s("a")], 0),
        (vec![s("ec"), s("weakmix"), f("f2.group.txt"), s("--cylinder"), s("e=0"), s("--cylinder"), s("e=0"), s("--tol"), s("1/100")], 0),
        (vec![s("ec"), s("openmap"), f("z_rot3.action.txt"), f("three_beta.labeling.txt"), f("lambda_z.window-measure.txt")], 0),
        (vec![s("coinduce"), f("z_index2.group.txt"), f("z_sub.action.txt"), f("z_two.action.txt"), f("z_map.factor-map.txt")], 0),
        (vec![s("--format"), s("json"), s("ec"), s("theta"), f("f2_three.action.txt"), s("--k"), s("2"), s("--q"), s("2"), s("--element"), s("a"), s("--engine"), s("local"), s("--seed"), s("11")], 0),
    ]
}
