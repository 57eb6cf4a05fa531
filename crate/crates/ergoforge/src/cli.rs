//! The `ergoforge` command line: subcommands over documents, deterministic reports.
//!
//! Exit codes: 0 on success or when a witness is found, 1 on a certified failure,
//! 2 on usage or validation errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::Zero;
use serde_json::{Map, Value};

use crate::action::{entropy, join_labelings, relative_entropy, ExtensionTriple, FiniteAction, Labeling, WindowMeasure};
use crate::cocycle::{
    coboundary_density_search, cocycle_defect, extend_free_cochain, skew_product, Cochain, DefectWeights, FiberMode,
};
use crate::coinduction::{coinduce, projection_equivariant, projection_pushforward};
use crate::coupling::{forest_measure, monotone_coupling, rerandomize, xi_construct, zeta_construct, WindowMeasureFamily};
use crate::ec::{
    ec_criterion_search, ec_lemma_search, finite_ext_ec_search, theta_axiom_eval, weak_mixing_certificate,
    BernoulliCylinders, Cylinder, EcQuery, SearchOutcome, ThetaInstance, Verdict,
};
use crate::error::{Error, Result};
use crate::group::{cayley_ball, finite_quotient_action, Element, GroupContext};
use crate::io::{
    ActionDoc, CochainDoc, Document, FactorMapDoc, FiniteSpec, ForestDoc, GroupDoc, GroupSpec, KernelDoc, Kind,
    LabelingDoc, WindowMeasureDoc,
};
use crate::rational::{parse_q, show, Q};
use crate::search::{Engine, SearchConfig, DEFAULT_CAP};
use crate::tree::{components, retract_all, DirectedForest};

#[derive(Parser, Debug)]
#[command(name = "ergoforge", version, about = "Exact finite-scale computations for group actions")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance ε as a rational `n/d`.
    #[arg(long, global = true, default_value = "0")]
    pub tol: String,
    /// Largest search space enumerated exhaustively.
    #[arg(long, global = true, env = "ERGOFORGE_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    #[arg(long, global = true, value_enum)]
    pub engine: Option<EngineArg>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Exhaustive,
    Local,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal forms, Cayley balls and the coset action of a quotient.
    Group {
        doc: PathBuf,
        #[arg(long, default_value_t = 1)]
        radius: usize,
        #[arg(long = "word")]
        words: Vec<String>,
    },
    /// Summary of a finite action; with `--element`, its freeness defect.
    Action {
        doc: PathBuf,
        #[arg(long)]
        element: Option<String>,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Shannon entropy of a labeling, optionally relative to another.
    Entropy {
        action: PathBuf,
        labeling: PathBuf,
        #[arg(long)]
        given: Option<PathBuf>,
    },
    #[command(subcommand)]
    Cocycle(CocycleCmd),
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Monotone coupling from a source measure to a target measure on one window.
    Couple { source: PathBuf, target: PathBuf },
    /// Product of the marginals of a window measure over the components of a forest.
    Rerandomize { measure: PathBuf, forest: PathBuf },
    /// Tree-indexed coupling of the shift-coherent family generated by a measure.
    ForestMeasure { measure: PathBuf, forest: PathBuf },
    /// Mixture over forests of the rerandomized conditional laws of a pair measure.
    Zeta {
        measure: PathBuf,
        #[arg(long = "forest", required = true)]
        forests: Vec<PathBuf>,
        /// Comma-separated forest weights; uniform when omitted.
        #[arg(long)]
        weights: Option<String>,
    },
    /// Pair measure built from a kernel, a label measure and forests.
    Xi {
        kernel: PathBuf,
        labels: PathBuf,
        #[arg(long = "forest", required = true)]
        forests: Vec<PathBuf>,
        #[arg(long)]
        weights: Option<String>,
    },
    #[command(subcommand)]
    Ec(EcCmd),
    /// Coinduces a subgroup extension to the whole group.
    Coinduce {
        /// Group document with a quotient block.
        group: PathBuf,
        /// Action of the subgroup, given by `subgroup` words and permutations.
        subaction: PathBuf,
        /// Base action of the whole group.
        base: PathBuf,
        /// Factor map from the subgroup action's space to the base.
        map: PathBuf,
        #[arg(long, default_value_t = 6)]
        radius: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum CocycleCmd {
    /// Weighted cocycle defect; exit 1 when it is positive.
    Defect {
        action: PathBuf,
        cochain: PathBuf,
        /// Shuffle the defect weights with this seed.
        #[arg(long)]
        shuffle: Option<u64>,
    },
    /// Searches a transfer function whose coboundary agrees with the cochain on `--element`.
    Density {
        action: PathBuf,
        cochain: PathBuf,
        #[arg(long = "element", required = true)]
        elements: Vec<String>,
    },
    /// Skew product over the action by the cochain.
    Skew {
        action: PathBuf,
        cochain: PathBuf,
        /// Let the target group act on itself instead of on `0..k`.
        #[arg(long)]
        regular: bool,
    },
    /// Extends generator values of a free-group cochain to a Cayley ball.
    Extend {
        action: PathBuf,
        cochain: PathBuf,
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum TreeCmd {
    /// Components of a directed forest.
    Components { forest: PathBuf },
    /// Retraction of a window cochain along the forest.
    Retract { forest: PathBuf, cochain: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum EcCmd {
    /// Labeling criterion for a factor map.
    Check {
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
        alpha: PathBuf,
        beta: PathBuf,
        #[arg(long = "element", required = true)]
        elements: Vec<String>,
    },
    /// Finite-to-one extension conditions for a cocycle into a symmetric group.
    FiniteExt {
        action: PathBuf,
        cochain: PathBuf,
        beta: PathBuf,
        #[arg(long = "element", required = true)]
        elements: Vec<String>,
        /// Allowed deviation of the pushforward from uniform.
        #[arg(long, default_value = "0")]
        slack: String,
    },
    /// Evaluates the θ axiom.
    Theta {
        action: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: usize,
        #[arg(long = "element", required = true)]
        elements: Vec<String>,
        #[arg(long)]
        partition: Option<PathBuf>,
        #[arg(long)]
        cocycle: Option<PathBuf>,
    },
    /// Weak-mixing witness within a Cayley ball. A group document selects the
    /// Bernoulli model with `--base` and `--cylinder`; an action document uses `--set`.
    Weakmix {
        model: PathBuf,
        /// Pairs of labeling documents whose class 1 is the set.
        #[arg(long = "set")]
        sets: Vec<PathBuf>,
        /// Bernoulli base law, comma-separated.
        #[arg(long)]
        base: Option<String>,
        /// Cylinders `word=symbol,word=symbol`, taken in pairs.
        #[arg(long = "cylinder")]
        cylinders: Vec<String>,
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
    /// Searches `γ` realizing a pair measure jointly with `β`.
    Openmap { action: PathBuf, beta: PathBuf, measure: PathBuf },
}

/// Ordered report fields; every rational is shown as `n/d (decimal)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub command: String,
    pub fields: Vec<(String, Value)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), fields: vec![] }
    }

    pub fn text(&mut self, key: &str, v: impl ToString) {
        self.fields.push((key.into(), Value::String(v.to_string())));
    }

    pub fn rational(&mut self, key: &str, v: &Q) {
        self.text(key, show(v));
    }

    pub fn list(&mut self, key: &str, items: impl IntoIterator<Item = String>) {
        self.fields.push((key.into(), Value::Array(items.into_iter().map(Value::String).collect())));
    }

    pub fn document(&mut self, key: &str, d: &Document) {
        let mut m = Map::new();
        m.insert("kind".into(), Value::String(d.kind.to_string()));
        m.insert("payload".into(), d.payload.clone());
        self.fields.push((key.into(), Value::Object(m)));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => {
                let mut out = format!("command: {}\n", self.command);
                for (k, v) in &self.fields {
                    match v {
                        Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
                        Value::Array(items) => {
                            out.push_str(&format!("{k}:\n"));
                            for it in items {
                                out.push_str(&format!("  - {}\n", it.as_str().unwrap_or_default()));
                            }
                        }
                        other => {
                            let kind = other["kind"].as_str().unwrap_or("result").parse().unwrap_or(Kind::Result);
                            let d = Document { kind, version: crate::io::VERSION, payload: other["payload"].clone() };
                            out.push_str(&format!("{k}:\n"));
                            for line in d.emit().lines() {
                                out.push_str(&format!("  {line}\n"));
                            }
                        }
                    }
                }
                out
            }
            Format::Json => {
                let mut m = Map::new();
                m.insert("command".into(), Value::String(self.command.clone()));
                for (k, v) in &self.fields {
                    m.insert(k.clone(), v.clone());
                }
                Document { kind: Kind::Result, version: crate::io::VERSION, payload: Value::Object(m) }.emit()
            }
        }
    }
}

/// A report and whether the command certified success.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub success: bool,
}

fn ok(report: Report) -> Result<Outcome> {
    Ok(Outcome { report, success: true })
}

struct Ctx {
    global: Global,
}

impl Ctx {
    fn tol(&self) -> Result<Q> {
        parse_q(&self.global.tol, "--tol")
    }

    fn search(&self) -> SearchConfig {
        SearchConfig {
            engine: self.global.engine.map(|e| match e {
                EngineArg::Exhaustive => Engine::Exhaustive,
                EngineArg::Local => Engine::Local,
            }),
            cap: self.global.cap,
            seed: self.global.seed,
            ..SearchConfig::default()
        }
    }
}

fn load<T: serde::de::DeserializeOwned>(path: &Path, kind: Kind) -> Result<T> {
    crate::io::read_as(path, kind)
}

fn load_action(path: &Path) -> Result<(GroupSpec, FiniteAction)> {
    let d: ActionDoc = load(path, Kind::Action)?;
    let a = d.build()?;
    Ok((d.group, a))
}

fn load_labeling(path: &Path) -> Result<Labeling> {
    load::<LabelingDoc>(path, Kind::Labeling)?.build()
}

fn load_cochain(path: &Path, ctx: &GroupContext) -> Result<(CochainDoc, Cochain)> {
    let d: CochainDoc = load(path, Kind::Cochain)?;
    same_group(ctx, &d.group)?;
    let c = d.build(ctx)?;
    Ok((d, c))
}

fn load_forest(path: &Path, ctx: &GroupContext) -> Result<DirectedForest> {
    let d: ForestDoc = load(path, Kind::Forest)?;
    same_group(ctx, &d.group)?;
    d.build(ctx)
}

fn same_group(ctx: &GroupContext, spec: &GroupSpec) -> Result<()> {
    if spec.build()? != *ctx {
        return Err(Error::Mismatch("documents refer to different groups".into()));
    }
    Ok(())
}

fn load_measure(path: &Path) -> Result<(GroupSpec, GroupContext, WindowMeasureDoc)> {
    let d: WindowMeasureDoc = load(path, Kind::WindowMeasure)?;
    let ctx = d.group.build()?;
    Ok((d.group.clone(), ctx, d))
}

fn elements(ctx: &GroupContext, ws: &[String]) -> Result<Vec<Element>> {
    ws.iter().map(|w| ctx.parse_word(w)).collect()
}

fn labels(v: &[usize]) -> String {
    v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
}

fn config(c: &[u8]) -> String {
    if c.is_empty() {
        return "()".into();
    }
    c.iter().map(|d| d.to_string()).collect::<String>()
}

fn atoms_of(m: &WindowMeasure) -> Vec<String> {
    m.atoms().iter().map(|(c, w)| format!("{} : {}", config(c), show(w))).collect()
}

fn window_words(ctx: &GroupContext, w: &[Element]) -> String {
    w.iter().map(|g| ctx.format(g)).collect::<Vec<_>>().join(", ")
}

fn forest_weights(n: usize, weights: &Option<String>) -> Result<Vec<Q>> {
    match weights {
        None => Ok(vec![Q::new(1.into(), (n as i64).into()); n]),
        Some(s) => {
            let ws: Vec<Q> =
                s.split(',').enumerate().map(|(i, w)| parse_q(w, &format!("--weights[{i}]"))).collect::<Result<_>>()?;
            if ws.len() != n {
                return Err(Error::Field { field: "--weights".into(), msg: format!("expected {n} weights") });
            }
            Ok(ws)
        }
    }
}

fn search_fields(r: &mut Report, s: &SearchOutcome) {
    r.text("engine", s.engine.name());
    r.text("seed", s.seed);
    r.text("exact", s.exact());
    match &s.value {
        Some(v) => r.rational("minimum", v),
        None => r.text("minimum", "none"),
    }
    match &s.witness {
        Some(w) => r.text("witness", labels(w)),
        None => r.text("witness", "none"),
    }
    r.text("verdict", s.verdict.name());
}

fn verdict_outcome(r: Report, v: Verdict) -> Result<Outcome> {
    Ok(Outcome { report: r, success: v == Verdict::Success })
}

fn cmd_group(doc: &Path, radius: usize, ws: &[String]) -> Result<Outcome> {
    let gd: GroupDoc = load(doc, Kind::Group)?;
    let (ctx, quotient) = gd.build()?;
    let mut r = Report::new("group");
    r.text("rank", ctx.rank());
    r.text("generators", ctx.names.join(", "));
    if let Some(es) = ctx.elements() {
        r.text("order", es.len());
    }
    let ball = cayley_ball(&ctx, &ctx.symmetric_generators(), radius);
    r.text("radius", radius);
    r.text("ball size", ball.len());
    r.list("ball", ball.elements().iter().map(|g| ctx.format(g)));
    let parsed = elements(&ctx, ws)?;
    r.list("words", ws.iter().zip(&parsed).map(|(w, g)| format!("{w} = {}", ctx.format(g))));
    if let Some(q) = quotient {
        let act = finite_quotient_action(&ctx, &q)?;
        r.text("index", q.index());
        r.text("transversal", window_words(&ctx, &q.transversal));
        r.list("coset action", act.gens.iter().enumerate().map(|(i, p)| format!("{}: {}", ctx.names[i], labels(&p.0))));
        let cosets = parsed.iter().map(|g| q.coset_of(&ctx, g)).collect::<Result<Vec<_>>>()?;
        r.list("cosets", ws.iter().zip(cosets).map(|(w, c)| format!("{w} in coset {c}")));
    }
    ok(r)
}

fn cmd_action(c: &Ctx, doc: &Path, element: &Option<String>, order: usize) -> Result<Outcome> {
    let (_, a) = load_action(doc)?;
    let mut r = Report::new("action");
    r.text("points", a.len());
    r.list("weights", a.weights().iter().map(show));
    r.list("generators", a.gens.iter().enumerate().map(|(i, p)| format!("{}: {}", a.ctx.names[i], labels(&p.0))));
    if let Some(w) = element {
        let g = a.ctx.parse_word(w)?;
        let bits = 63 - c.global.cap.max(1).leading_zeros() as usize;
        let d = crate::action::freeness_defect(&a, &g, order, bits)?;
        r.text("element", a.ctx.format(&g));
        r.text("order bound", order);
        r.rational("freeness defect", &d);
    }
    ok(r)
}

fn cmd_entropy(action: &Path, labeling: &Path, given: &Option<PathBuf>) -> Result<Outcome> {
    let (_, a) = load_action(action)?;
    let alpha = load_labeling(labeling)?;
    if alpha.len() != a.len() {
        return Err(Error::Mismatch("labeling does not match the space".into()));
    }
    let mut r = Report::new("entropy");
    r.text("H(alpha)", format!("{:.12}", entropy(&a.space, &alpha)));
    if let Some(p) = given {
        let beta = load_labeling(p)?;
        if beta.len() != a.len() {
            return Err(Error::Mismatch("labeling does not match the space".into()));
        }
        r.text("H(beta)", format!("{:.12}", entropy(&a.space, &beta)));
        r.text("H(alpha v beta)", format!("{:.12}", entropy(&a.space, &join_labelings(&alpha, &beta))));
        r.text("H(alpha | beta)", format!("{:.12}", relative_entropy(&a.space, &alpha, &beta)));
    }
    ok(r)
}

fn cmd_cocycle(c: &Ctx, cmd: &CocycleCmd) -> Result<Outcome> {
    match cmd {
        CocycleCmd::Defect { action, cochain, shuffle } => {
            let (_, a) = load_action(action)?;
            let (_, s) = load_cochain(cochain, &a.ctx)?;
            let w = match shuffle {
                Some(seed) => DefectWeights::shuffled(&a.ctx, &s, *seed),
                None => DefectWeights::canonical(&a.ctx, &s),
            };
            let d = cocycle_defect(&a, &s, &w)?;
            let mut r = Report::new("cocycle defect");
            r.rational("partition term", &d.partition_term);
            r.rational("identity term", &d.identity_term);
            r.rational("defect", &d.value);
            let success = d.value.is_zero();
            Ok(Outcome { report: r, success })
        }
        CocycleCmd::Density { action, cochain, elements: ws } => {
            let (_, a) = load_action(action)?;
            let (_, s) = load_cochain(cochain, &a.ctx)?;
            let f = elements(&a.ctx, ws)?;
            let eps = c.tol()?;
            let res = coboundary_density_search(&a, &s, &f, &eps, &c.search())?;
            let mut r = Report::new("cocycle density");
            r.text("engine", res.engine.name());
            r.text("seed", res.seed);
            r.rational("tolerance", &eps);
            r.rational("agreement mass", &res.mass);
            r.text("witness", labels(&res.witness));
            r.text("verdict", if res.success { "success" } else { "failure" });
            Ok(Outcome { report: r, success: res.success })
        }
        CocycleCmd::Skew { action, cochain, regular } => {
            let (spec, a) = load_action(action)?;
            let (_, s) = load_cochain(cochain, &a.ctx)?;
            let mode = if *regular { FiberMode::Regular } else { FiberMode::Permutation };
            let sp = skew_product(&a, &s, mode)?;
            let ext = sp.extension(&a)?;
            let mut r = Report::new("cocycle skew");
            r.text("fiber", sp.fiber);
            r.text("points", sp.action.len());
            r.text("projection", labels(&ext.map));
            r.document("skew product", &Document::new(Kind::Action, &ActionDoc::from_action(spec, &sp.action)));
            ok(r)
        }
        CocycleCmd::Extend { action, cochain, radius } => {
            let (spec, a) = load_action(action)?;
            let (d, s) = load_cochain(cochain, &a.ctx)?;
            let gv = s.generator_values(&a.ctx)?;
            let ball = cayley_ball(&a.ctx, &a.ctx.symmetric_generators(), *radius);
            let ext = extend_free_cochain(&a, &s.group, &gv, &ball)?;
            let def = cocycle_defect(&a, &ext, &DefectWeights::canonical(&a.ctx, &ext))?;
            let mut r = Report::new("cocycle extend");
            r.text("radius", radius);
            r.text("support size", ext.support.len());
            r.rational("defect", &def.value);
            r.document("cochain", &Document::new(Kind::Cochain, &CochainDoc::from_cochain(spec, d.target, &a.ctx, &ext)));
            ok(r)
        }
    }
}

fn cmd_tree(cmd: &TreeCmd) -> Result<Outcome> {
    match cmd {
        TreeCmd::Components { forest } => {
            let d: ForestDoc = load(forest, Kind::Forest)?;
            let ctx = d.group.build()?;
            let f = d.build(&ctx)?;
            let e = components(&f);
            let mut r = Report::new("tree components");
            r.text("vertices", f.vertices.len());
            r.text("edges", f.edges.len());
            r.text("spanning tree", f.is_spanning_tree());
            r.list("components", e.classes.iter().map(|cl| format!("{{{}}}", window_words(&ctx, cl))));
            ok(r)
        }
        TreeCmd::Retract { forest, cochain } => {
            let d: ForestDoc = load(forest, Kind::Forest)?;
            let ctx = d.group.build()?;
            let f = d.build(&ctx)?;
            let cd: CochainDoc = load(cochain, Kind::Cochain)?;
            same_group(&ctx, &cd.group)?;
            let c = cd.build_window(&ctx)?;
            let out = retract_all(&ctx, &f, &c)?;
            let (agree, checked) = out.agrees_with(&c);
            let mut r = Report::new("tree retract");
            r.text("entries", out.values.len());
            r.text("agrees with input", agree);
            r.text("common entries", checked);
            r.document("retraction", &Document::new(Kind::Cochain, &CochainDoc::from_window_cochain(d.group, cd.target, &ctx, &out)));
            ok(r)
        }
    }
}

fn measure_doc(r: &mut Report, key: &str, spec: GroupSpec, ctx: &GroupContext, m: &WindowMeasure) {
    r.list(&format!("{key} atoms"), atoms_of(m));
    r.document(key, &Document::new(Kind::WindowMeasure, &WindowMeasureDoc::from_measure(spec, ctx, m)));
}

fn cmd_couple(source: &Path, target: &Path) -> Result<Outcome> {
    let (_, ctx, d0) = load_measure(source)?;
    let (_, _, d1) = load_measure(target)?;
    same_group(&ctx, &d1.group)?;
    let k0 = d0.build(&ctx)?;
    let k1 = d1.build(&ctx)?;
    let p = monotone_coupling(&k1, &k0)?;
    let mut r = Report::new("couple");
    r.text("window", window_words(&ctx, k0.window.elements()));
    r.list("coupling", p.joint.iter().map(|((s, t), w)| format!("{} -> {} : {}", config(s), config(t), show(w))));
    r.text("deterministic", p.as_map().is_some());
    r.text("target marginal exact", p.target() == k1);
    ok(r)
}

fn cmd_rerandomize(measure: &Path, forest: &Path) -> Result<Outcome> {
    let (spec, ctx, d) = load_measure(measure)?;
    let om = d.build(&ctx)?;
    let f = load_forest(forest, &ctx)?;
    let out = rerandomize(&om, &components(&f))?;
    let mut r = Report::new("rerandomize");
    measure_doc(&mut r, "result", spec, &ctx, &out);
    ok(r)
}

fn cmd_forest_measure(measure: &Path, forest: &Path) -> Result<Outcome> {
    let (spec, ctx, d) = load_measure(measure)?;
    let kappa = d.build(&ctx)?;
    let f = load_forest(forest, &ctx)?;
    let fam = WindowMeasureFamily::coherent(&ctx, &kappa, f.vertices.elements());
    let out = forest_measure(&ctx, &fam, &f)?;
    let phi = rerandomize(&kappa, &components(&f))?;
    let mut r = Report::new("forest-measure");
    r.text("equals rerandomize", out == phi);
    measure_doc(&mut r, "result", spec, &ctx, &out);
    ok(r)
}

fn load_forests(paths: &[PathBuf], ctx: &GroupContext, weights: &Option<String>) -> Result<Vec<(DirectedForest, Q)>> {
    let ws = forest_weights(paths.len(), weights)?;
    paths.iter().zip(ws).map(|(p, w)| Ok((load_forest(p, ctx)?, w))).collect()
}

fn cmd_zeta(measure: &Path, forests: &[PathBuf], weights: &Option<String>) -> Result<Outcome> {
    let (spec, ctx, d) = load_measure(measure)?;
    let lambda = d.build_pair(&ctx)?;
    let mu = load_forests(forests, &ctx, weights)?;
    let out = zeta_construct(&lambda, &mu)?;
    let mut r = Report::new("zeta");
    r.text("equals input", out == lambda);
    r.text("label marginal preserved", out.label_marginal() == lambda.label_marginal());
    r.document("result", &Document::new(Kind::WindowMeasure, &WindowMeasureDoc::from_pair(spec, &ctx, &out)));
    ok(r)
}

fn cmd_xi(kernel: &Path, label_measure: &Path, forests: &[PathBuf], weights: &Option<String>) -> Result<Outcome> {
    let kd: KernelDoc = load(kernel, Kind::Kernel)?;
    let ctx = kd.group.build()?;
    let kappa = kd.build(&ctx)?;
    let (_, _, nd) = load_measure(label_measure)?;
    same_group(&ctx, &nd.group)?;
    let nu = nd.build(&ctx)?;
    let mu = load_forests(forests, &ctx, weights)?;
    let out = xi_construct(&ctx, &kappa, &nu, &mu)?;
    let mut r = Report::new("xi");
    r.text("label marginal equals input", out.label_marginal() == nu);
    r.document("result", &Document::new(Kind::WindowMeasure, &WindowMeasureDoc::from_pair(kd.group, &ctx, &out)));
    ok(r)
}

fn parse_cylinder(ctx: &GroupContext, s: &str) -> Result<Cylinder> {
    let mut c = BTreeMap::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let (w, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Field { field: "--cylinder".into(), msg: format!("expected `word=symbol` in `{part}`") })?;
        let v: usize = v.trim().parse().map_err(|_| Error::Field { field: "--cylinder".into(), msg: format!("bad symbol `{v}`") })?;
        c.insert(ctx.parse_word(w)?, v);
    }
    Ok(c)
}

fn cmd_ec(c: &Ctx, cmd: &EcCmd) -> Result<Outcome> {
    let eps = c.tol()?;
    let cfg = c.search();
    match cmd {
        EcCmd::Check { source, target, map, alpha, beta, elements: ws } => {
            let (_, y) = load_action(source)?;
            let (_, x) = load_action(target)?;
            let m: FactorMapDoc = load(map, Kind::FactorMap)?;
            let e = ExtensionTriple::new(y, x, m.map)?;
            let s = elements(&e.source.ctx, ws)?;
            let q = EcQuery { extension: e, alpha: load_labeling(alpha)?, beta: load_labeling(beta)?, s, eps: eps.clone() };
            let res = ec_criterion_search(&q, &cfg)?;
            let mut r = Report::new("ec check");
            r.rational("tolerance", &eps);
            search_fields(&mut r, &res);
            verdict_outcome(r, res.verdict)
        }
        EcCmd::FiniteExt { action, cochain, beta, elements: ws, slack } => {
            let (_, a) = load_action(action)?;
            let (_, s) = load_cochain(cochain, &a.ctx)?;
            let f = elements(&a.ctx, ws)?;
            let slack = parse_q(slack, "--slack")?;
            let res = finite_ext_ec_search(&a, &s, &f, &eps, &load_labeling(beta)?, &slack, &cfg)?;
            let mut r = Report::new("ec finite-ext");
            r.rational("tolerance", &eps);
            r.rational("slack", &slack);
            search_fields(&mut r, &res);
            verdict_outcome(r, res.verdict)
        }
        EcCmd::Theta { action, k, q, elements: ws, partition, cocycle } => {
            let (_, a) = load_action(action)?;
            let f = elements(&a.ctx, ws)?;
            let partition = match partition {
                Some(p) => {
                    let l = load_labeling(p)?;
                    if l.arity != *q || l.len() != a.len() {
                        return Err(Error::Mismatch("partition must be a labeling X → q".into()));
                    }
                    Some(l.values)
                }
                None => None,
            };
            let cocycle = match cocycle {
                Some(p) => {
                    let (d, s) = load_cochain(p, &a.ctx)?;
                    if d.target != (FiniteSpec::Symmetric { degree: *k }) {
                        return Err(Error::Mismatch("the cocycle must take values in Sym(k)".into()));
                    }
                    Some(s.generator_values(&a.ctx)?)
                }
                None => None,
            };
            let inst = ThetaInstance { k: *k, q: *q, f, partition, cocycle };
            let v = theta_axiom_eval(&a, &inst, &cfg)?;
            let mut r = Report::new("ec theta");
            r.text("inner engine", v.inner_engine.name());
            r.text("seed", c.global.seed);
            r.text("exact", v.exact);
            r.rational("value", &v.value);
            r.text("partition", labels(&v.partition));
            r.list("cocycle", v.cocycle.iter().enumerate().map(|(i, row)| format!("{}: {}", a.ctx.names[i], labels(row))));
            r.text("witness", labels(&v.witness));
            r.text("evaluated", v.evaluated);
            ok(r)
        }
        EcCmd::Weakmix { model, sets, base, cylinders, radius } => {
            let doc = Document::read(model)?;
            let mut r = Report::new("ec weakmix");
            r.rational("tolerance", &eps);
            let report = match doc.kind {
                Kind::Group => {
                    let gd: GroupDoc = doc.decode(Kind::Group)?;
                    let (ctx, _) = gd.build()?;
                    let base = base.as_deref().unwrap_or("1/2,1/2");
                    let law = base.split(',').enumerate().map(|(i, w)| parse_q(w, &format!("--base[{i}]"))).collect::<Result<Vec<_>>>()?;
                    let m = BernoulliCylinders::new(ctx.clone(), law)?;
                    let cyl = cylinders.iter().map(|s| parse_cylinder(&ctx, s)).collect::<Result<Vec<_>>>()?;
                    if cyl.is_empty() || cyl.len() % 2 != 0 {
                        return Err(Error::Field { field: "--cylinder".into(), msg: "give cylinders in pairs".into() });
                    }
                    let pairs: Vec<(Cylinder, Cylinder)> = cyl.chunks(2).map(|p| (p[0].clone(), p[1].clone())).collect();
                    let ball = cayley_ball(&ctx, &ctx.symmetric_generators(), *radius);
                    r.text("model", "bernoulli");
                    (weak_mixing_certificate(&m, &pairs, &eps, ball.elements())?, ctx)
                }
                Kind::Action => {
                    let a = doc.decode::<ActionDoc>(Kind::Action)?.build()?;
                    let ls = sets.iter().map(|p| load_labeling(p)).collect::<Result<Vec<_>>>()?;
                    if ls.is_empty() || ls.len() % 2 != 0 {
                        return Err(Error::Field { field: "--set".into(), msg: "give sets in pairs".into() });
                    }
                    let pairs: Vec<(Vec<bool>, Vec<bool>)> = ls.chunks(2).map(|p| (p[0].class(1), p[1].class(1))).collect();
                    let ball = cayley_ball(&a.ctx, &a.ctx.symmetric_generators(), *radius);
                    r.text("model", "finite action");
                    let ctx = a.ctx.clone();
                    (weak_mixing_certificate(&a, &pairs, &eps, ball.elements())?, ctx)
                }
                other => return Err(Error::Field { field: "kind".into(), msg: format!("expected `group` or `action`, found `{other}`") }),
            };
            let (rep, ctx) = report;
            r.list("defects", rep.defects.iter().map(|(g, d)| format!("{} : {}", ctx.format(g), show(d))));
            let success = rep.witness.is_some();
            r.text("witness", rep.witness.map_or_else(|| "none".into(), |g| ctx.format(&g)));
            r.text("verdict", if success { "success" } else { "failure" });
            Ok(Outcome { report: r, success })
        }
        EcCmd::Openmap { action, beta, measure } => {
            let (_, a) = load_action(action)?;
            let (_, _, d) = load_measure(measure)?;
            same_group(&a.ctx, &d.group)?;
            let lambda = d.build_pair(&a.ctx)?;
            let res = ec_lemma_search(&a, &load_labeling(beta)?, &lambda, &eps, &cfg)?;
            let mut r = Report::new("ec openmap");
            r.rational("tolerance", &eps);
            search_fields(&mut r, &res);
            verdict_outcome(r, res.verdict)
        }
    }
}

fn cmd_coinduce(group: &Path, subaction: &Path, base: &Path, map: &Path, radius: usize) -> Result<Outcome> {
    let gd: GroupDoc = load(group, Kind::Group)?;
    let (ctx, q) = gd.build()?;
    let q = q.ok_or_else(|| Error::Field { field: "quotient".into(), msg: "coinduction needs a quotient block".into() })?;
    let sd: ActionDoc = load(subaction, Kind::Action)?;
    same_group(&ctx, &sd.group)?;
    let (b, nu) = sd.build_subgroup(&ctx, radius)?;
    let (_, a) = load_action(base)?;
    let m: FactorMapDoc = load(map, Kind::FactorMap)?;
    let c = coinduce(&ctx, &q, &b, &nu, &a, &m.map)?;
    let lambdas = elements(&ctx, sd.subgroup.as_deref().unwrap_or_default())?;
    let inv: Vec<Element> = lambdas.iter().map(|l| ctx.inverse(l)).collect();
    let equivariant = projection_equivariant(&c, &b, &[lambdas, inv].concat())?;
    let pushed = projection_pushforward(&c, nu.len()) == nu.weights;
    let mut r = Report::new("coinduce");
    r.text("index", q.index());
    r.text("points", c.points.len());
    r.list("atoms", c.points.iter().zip(c.extension.source.weights()).map(|(p, w)| format!("({}) : {}", labels(p), show(w))));
    r.text("projection equivariant", equivariant);
    r.text("projection pushes forward", pushed);
    r.text("factor map", labels(&c.extension.map));
    r.document("coinduced action", &Document::new(Kind::Action, &ActionDoc::from_action(gd.group, &c.extension.source)));
    Ok(Outcome { report: r, success: equivariant && pushed })
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let c = Ctx { global: cli.global.clone() };
    c.tol()?;
    match &cli.command {
        Command::Group { doc, radius, words } => cmd_group(doc, *radius, words),
        Command::Action { doc, element, order } => cmd_action(&c, doc, element, *order),
        Command::Entropy { action, labeling, given } => cmd_entropy(action, labeling, given),
        Command::Cocycle(cmd) => cmd_cocycle(&c, cmd),
        Command::Tree(cmd) => cmd_tree(cmd),
        Command::Couple { source, target } => cmd_couple(source, target),
        Command::Rerandomize { measure, forest } => cmd_rerandomize(measure, forest),
        Command::ForestMeasure { measure, forest } => cmd_forest_measure(measure, forest),
        Command::Zeta { measure, forests, weights } => cmd_zeta(measure, forests, weights),
        Command::Xi { kernel, labels, forests, weights } => cmd_xi(kernel, labels, forests, weights),
        Command::Ec(cmd) => cmd_ec(&c, cmd),
        Command::Coinduce { group, subaction, base, map, radius } => cmd_coinduce(group, subaction, base, map, *radius),
    }
}

/// Parses arguments, runs, and returns `(exit code, stdout, stderr)`.
pub fn execute<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (2, String::new(), text) };
        }
    };
    match run(&cli) {
        Ok(out) => (if out.success { 0 } else { 1 }, out.report.render(cli.global.format), String::new()),
        Err(e) => (2, String::new(), format!("error: {e}\n")),
    }
}

