//! Text documents: a two-line header (`kind:` and `version:`) followed by a JSON payload.
//!
//! Rationals are strings `"n/d"`. Emission is canonical (sorted keys, two-space
//! indentation, trailing newline) so that `emit(parse(d)) == d` for emitted documents.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::action::{Config, FiniteAction, FiniteProbSpace, Labeling, WindowMeasure};
use crate::cocycle::{Cochain, WindowCochain};
use crate::coupling::{Kernel, PairMeasure};
use crate::error::{Error, Result};
use crate::finite_group::FiniteGroupTable;
use crate::group::{Element, GroupContext, Membership, QuotientData, SubgroupAction, Window};
use crate::perm::Perm;
use crate::rational::{fmt_q, parse_q, Q};
use crate::tree::DirectedForest;

pub const VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Group,
    Action,
    Labeling,
    WindowMeasure,
    Cochain,
    Forest,
    Kernel,
    FactorMap,
    Result,
}

impl Kind {
    pub const ALL: [Kind; 9] = [
        Kind::Group,
        Kind::Action,
        Kind::Labeling,
        Kind::WindowMeasure,
        Kind::Cochain,
        Kind::Forest,
        Kind::Kernel,
        Kind::FactorMap,
        Kind::Result,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Group => "group",
            Kind::Action => "action",
            Kind::Labeling => "labeling",
            Kind::WindowMeasure => "window-measure",
            Kind::Cochain => "cochain",
            Kind::Forest => "forest",
            Kind::Kernel => "kernel",
            Kind::FactorMap => "factor-map",
            Kind::Result => "result",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Kind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| format!("unknown kind `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub kind: Kind,
    pub version: u32,
    pub payload: Value,
}

fn header<'a>(line: Option<&'a str>, key: &str, no: usize) -> Result<&'a str> {
    let line = line.ok_or_else(|| Error::Parse { line: no, msg: format!("missing `{key}:` line") })?;
    line.strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .map(str::trim)
        .ok_or_else(|| Error::Parse { line: no, msg: format!("expected `{key}: ...`") })
}

impl Document {
    pub fn new<T: Serialize>(kind: Kind, payload: &T) -> Self {
        let payload = serde_json::to_value(payload).expect("payload types serialize");
        Document { kind, version: VERSION, payload }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.splitn(3, '\n');
        let kind = header(lines.next(), "kind", 1)?;
        let kind: Kind = kind.parse().map_err(|msg| Error::Parse { line: 1, msg })?;
        let version = header(lines.next(), "version", 2)?;
        let version: u32 = version.parse().map_err(|_| Error::Parse { line: 2, msg: format!("bad version `{version}`") })?;
        if version != VERSION {
            return Err(Error::Parse { line: 2, msg: format!("unsupported version {version}") });
        }
        let body = lines.next().unwrap_or("");
        let payload: Value =
            serde_json::from_str(body).map_err(|e| Error::Parse { line: e.line() + 2, msg: e.to_string() })?;
        Ok(Document { kind, version, payload })
    }

    pub fn emit(&self) -> String {
        let body = serde_json::to_string_pretty(&self.payload).expect("values serialize");
        format!("kind: {}\nversion: {}\n{body}\n", self.kind, self.version)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Field { field: path.display().to_string(), msg: e.to_string() })?;
        Document::parse(&text)
    }

    /// Decodes the payload, checking the kind first.
    pub fn decode<T: DeserializeOwned>(&self, kind: Kind) -> Result<T> {
        if self.kind != kind {
            return Err(Error::Field { field: "kind".into(), msg: format!("expected `{kind}`, found `{}`", self.kind) });
        }
        serde_json::from_value(self.payload.clone()).map_err(|e| Error::Field { field: kind.name().into(), msg: e.to_string() })
    }
}

pub fn parse_weights(ws: &[String], field: &str) -> Result<Vec<Q>> {
    ws.iter().enumerate().map(|(i, w)| parse_q(w, &format!("{field}[{i}]"))).collect()
}

pub fn fmt_weights<'a>(ws: impl IntoIterator<Item = &'a Q>) -> Vec<String> {
    ws.into_iter().map(fmt_q).collect()
}

fn words(ctx: &GroupContext, ws: &[String]) -> Result<Vec<Element>> {
    ws.iter().map(|w| ctx.parse_word(w)).collect()
}

fn window(ctx: &GroupContext, ws: &[String]) -> Result<Window> {
    Window::new(words(ctx, ws)?)
}

fn format_all<'a>(ctx: &GroupContext, gs: impl IntoIterator<Item = &'a Element>) -> Vec<String> {
    gs.into_iter().map(|g| ctx.format(g)).collect()
}

/// A finite group used as a target of cochains or of a homomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FiniteSpec {
    Cyclic { order: usize },
    /// Elements are permutations of `0..degree` indexed in lexicographic order of images.
    Symmetric { degree: usize },
    Table { table: Vec<Vec<usize>> },
}

impl FiniteSpec {
    pub fn build(&self) -> Result<FiniteGroupTable> {
        match self {
            FiniteSpec::Cyclic { order } if *order == 0 => Err(Error::InvalidGroup("order must be positive".into())),
            FiniteSpec::Cyclic { order } => Ok(FiniteGroupTable::cyclic(*order)),
            FiniteSpec::Symmetric { degree } if *degree == 0 => Err(Error::InvalidGroup("degree must be positive".into())),
            FiniteSpec::Symmetric { degree } => Ok(FiniteGroupTable::symmetric(*degree)),
            FiniteSpec::Table { table } => FiniteGroupTable::from_table(table.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GroupSpec {
    Free {
        rank: usize,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        names: Vec<String>,
    },
    FreeAbelian {
        rank: usize,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        names: Vec<String>,
    },
    Cyclic {
        order: usize,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        names: Vec<String>,
    },
    /// A subgroup of `Sym(degree)` generated by the listed permutations.
    Symmetric {
        degree: usize,
        generators: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        names: Vec<String>,
    },
    /// A group table with generator indices.
    Table {
        table: Vec<Vec<usize>>,
        generators: Vec<usize>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        names: Vec<String>,
    },
}

impl GroupSpec {
    pub fn free(rank: usize) -> Self {
        GroupSpec::Free { rank, names: vec![] }
    }

    pub fn free_abelian(rank: usize) -> Self {
        GroupSpec::FreeAbelian { rank, names: vec![] }
    }

    pub fn build(&self) -> Result<GroupContext> {
        let (ctx, names) = match self {
            GroupSpec::Free { rank, names } => (GroupContext::free(*rank), names),
            GroupSpec::FreeAbelian { rank, names } => (GroupContext::free_abelian(*rank), names),
            GroupSpec::Cyclic { order, names } => {
                if *order == 0 {
                    return Err(Error::InvalidGroup("order must be positive".into()));
                }
                (GroupContext::cyclic(*order), names)
            }
            GroupSpec::Symmetric { degree, generators, names } => {
                let sym = FiniteGroupTable::symmetric(*degree);
                let gens = generators
                    .iter()
                    .map(|p| {
                        Perm::from_images(p.clone())
                            .filter(|p| p.len() == *degree)
                            .and_then(|p| sym.index_of_perm(&p))
                            .ok_or_else(|| Error::Field { field: "generators".into(), msg: format!("{p:?} is not a permutation of degree {degree}") })
                    })
                    .collect::<Result<Vec<_>>>()?;
                (GroupContext::finite(sym, gens)?, names)
            }
            GroupSpec::Table { table, generators, names } => {
                (GroupContext::finite(FiniteGroupTable::from_table(table.clone())?, generators.clone())?, names)
            }
        };
        if names.is_empty() {
            Ok(ctx)
        } else {
            ctx.with_names(names.clone())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MembershipSpec {
    Whole,
    /// The subgroup listed element by element (finite groups).
    Elements { elements: Vec<String> },
    /// The preimage of `subgroup` under the homomorphism sending generator `i` to `images[i]`.
    Hom { target: FiniteSpec, images: Vec<usize>, subgroup: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientSpec {
    pub membership: MembershipSpec,
    pub transversal: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub group: GroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient: Option<QuotientSpec>,
}

impl GroupDoc {
    pub fn build(&self) -> Result<(GroupContext, Option<QuotientData>)> {
        let ctx = self.group.build()?;
        let Some(q) = &self.quotient else { return Ok((ctx, None)) };
        let membership = match &q.membership {
            MembershipSpec::Whole => Membership::Whole,
            MembershipSpec::Elements { elements } => Membership::Elements(words(&ctx, elements)?),
            MembershipSpec::Hom { target, images, subgroup } => {
                Membership::Hom { target: target.build()?, images: images.clone(), subgroup: subgroup.clone() }
            }
        };
        let transversal = words(&ctx, &q.transversal)?;
        let qd = QuotientData::new(&ctx, membership, transversal)?;
        Ok((ctx, Some(qd)))
    }
}

/// A finite action by permutations. With `subgroup`, the permutations are the actions of
/// those words, generating an action of the subgroup they span.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub group: GroupSpec,
    pub weights: Vec<String>,
    pub generators: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<String>>,
}

fn perms(gs: &[Vec<usize>]) -> Result<Vec<Perm>> {
    gs.iter()
        .enumerate()
        .map(|(i, p)| {
            Perm::from_images(p.clone())
                .ok_or_else(|| Error::Field { field: format!("generators[{i}]"), msg: "not a permutation".into() })
        })
        .collect()
}

impl ActionDoc {
    pub fn from_action(group: GroupSpec, a: &FiniteAction) -> Self {
        ActionDoc {
            group,
            weights: fmt_weights(a.weights()),
            generators: a.gens.iter().map(|p| p.0.clone()).collect(),
            subgroup: None,
        }
    }

    pub fn space(&self) -> Result<FiniteProbSpace> {
        FiniteProbSpace::new(parse_weights(&self.weights, "weights")?)
    }

    pub fn build(&self) -> Result<FiniteAction> {
        if self.subgroup.is_some() {
            return Err(Error::Field { field: "subgroup".into(), msg: "a subgroup action is not a group action".into() });
        }
        FiniteAction::new(self.group.build()?, self.space()?, perms(&self.generators)?)
    }

    /// The subgroup action and its measure; `radius` bounds the closure under products.
    pub fn build_subgroup(&self, ctx: &GroupContext, radius: usize) -> Result<(SubgroupAction, FiniteProbSpace)> {
        let Some(ws) = &self.subgroup else {
            return Err(Error::Field { field: "subgroup".into(), msg: "missing subgroup generators".into() });
        };
        let gens = words(ctx, ws)?;
        let space = self.space()?;
        let b = SubgroupAction::generated(ctx, &gens, &perms(&self.generators)?, radius)?;
        if b.len() != space.len() {
            return Err(Error::Mismatch("weights and permutations have different sizes".into()));
        }
        Ok((b, space))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelingDoc {
    pub values: Vec<usize>,
    pub arity: usize,
}

impl LabelingDoc {
    pub fn from_labeling(l: &Labeling) -> Self {
        LabelingDoc { values: l.values.clone(), arity: l.arity }
    }

    pub fn build(&self) -> Result<Labeling> {
        Labeling::new(self.values.clone(), self.arity)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Config>,
    pub config: Config,
    pub mass: String,
}

/// A measure on `alphabet^window`; with `label_window`, a measure on pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowMeasureDoc {
    pub group: GroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label_window: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<usize>,
    pub window: Vec<String>,
    pub alphabet: usize,
    pub atoms: Vec<AtomDoc>,
}

fn atom_docs(atoms: &BTreeMap<Config, Q>) -> Vec<AtomDoc> {
    atoms.iter().map(|(c, w)| AtomDoc { label: None, config: c.clone(), mass: fmt_q(w) }).collect()
}

fn atom_map(atoms: &[AtomDoc]) -> Result<BTreeMap<Config, Q>> {
    let mut out = BTreeMap::new();
    for (i, a) in atoms.iter().enumerate() {
        if a.label.is_some() {
            return Err(Error::Field { field: format!("atoms[{i}].label"), msg: "labels need `label_window`".into() });
        }
        if out.insert(a.config.clone(), parse_q(&a.mass, &format!("atoms[{i}].mass"))?).is_some() {
            return Err(Error::Field { field: format!("atoms[{i}].config"), msg: "repeated configuration".into() });
        }
    }
    Ok(out)
}

impl WindowMeasureDoc {
    pub fn from_measure(group: GroupSpec, ctx: &GroupContext, m: &WindowMeasure) -> Self {
        WindowMeasureDoc {
            group,
            label_window: None,
            labels: None,
            window: format_all(ctx, m.window.elements()),
            alphabet: m.alphabet,
            atoms: atom_docs(m.atoms()),
        }
    }

    pub fn from_pair(group: GroupSpec, ctx: &GroupContext, m: &PairMeasure) -> Self {
        WindowMeasureDoc {
            group,
            label_window: Some(format_all(ctx, m.label_window.elements())),
            labels: Some(m.labels),
            window: format_all(ctx, m.config_window.elements()),
            alphabet: m.alphabet,
            atoms: m
                .atoms()
                .iter()
                .map(|((y, z), w)| AtomDoc { label: Some(y.clone()), config: z.clone(), mass: fmt_q(w) })
                .collect(),
        }
    }

    pub fn is_pair(&self) -> bool {
        self.label_window.is_some()
    }

    pub fn build(&self, ctx: &GroupContext) -> Result<WindowMeasure> {
        if self.is_pair() {
            return Err(Error::Field { field: "label_window".into(), msg: "expected a plain window measure".into() });
        }
        WindowMeasure::new(window(ctx, &self.window)?, self.alphabet, atom_map(&self.atoms)?)
    }

    pub fn build_pair(&self, ctx: &GroupContext) -> Result<PairMeasure> {
        let (Some(lw), Some(labels)) = (&self.label_window, self.labels) else {
            return Err(Error::Field { field: "label_window".into(), msg: "a pair measure needs `label_window` and `labels`".into() });
        };
        let mut atoms = BTreeMap::new();
        for (i, a) in self.atoms.iter().enumerate() {
            let y = a.label.clone().ok_or_else(|| Error::Field { field: format!("atoms[{i}].label"), msg: "missing".into() })?;
            let w = parse_q(&a.mass, &format!("atoms[{i}].mass"))?;
            if atoms.insert((y, a.config.clone()), w).is_some() {
                return Err(Error::Field { field: format!("atoms[{i}]"), msg: "repeated atom".into() });
            }
        }
        PairMeasure::new(window(ctx, lw)?, labels, window(ctx, &self.window)?, self.alphabet, atoms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub beta: String,
    pub alpha: String,
    pub value: usize,
}

/// A cochain into `target`: either pointwise (`support`, `values[i][x]`, `points`) or
/// on pairs of window elements (`entries`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainDoc {
    pub group: GroupSpec,
    pub target: FiniteSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub support: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub entries: Vec<EntryDoc>,
}

impl CochainDoc {
    pub fn from_cochain(group: GroupSpec, target: FiniteSpec, ctx: &GroupContext, c: &Cochain) -> Self {
        CochainDoc {
            group,
            target,
            points: Some(c.points()),
            support: format_all(ctx, &c.support),
            values: c.values.clone(),
            entries: vec![],
        }
    }

    pub fn from_window_cochain(group: GroupSpec, target: FiniteSpec, ctx: &GroupContext, c: &WindowCochain) -> Self {
        CochainDoc {
            group,
            target,
            points: None,
            support: vec![],
            values: vec![],
            entries: c
                .values
                .iter()
                .map(|((b, a), &v)| EntryDoc { beta: ctx.format(b), alpha: ctx.format(a), value: v })
                .collect(),
        }
    }

    pub fn is_window(&self) -> bool {
        self.points.is_none()
    }

    pub fn build(&self, ctx: &GroupContext) -> Result<Cochain> {
        let points = self.points.ok_or_else(|| Error::Field { field: "points".into(), msg: "pointwise cochain needs `points`".into() })?;
        if !self.entries.is_empty() {
            return Err(Error::Field { field: "entries".into(), msg: "use either `entries` or `support`".into() });
        }
        Cochain::new(words(ctx, &self.support)?, self.target.build()?, self.values.clone(), points)
    }

    pub fn build_window(&self, ctx: &GroupContext) -> Result<WindowCochain> {
        if !self.is_window() {
            return Err(Error::Field { field: "points".into(), msg: "expected a window cochain".into() });
        }
        let group = self.target.build()?;
        let mut c = WindowCochain::new(group.clone());
        for (i, e) in self.entries.iter().enumerate() {
            if e.value >= group.order() {
                return Err(Error::Field { field: format!("entries[{i}].value"), msg: "outside the target group".into() });
            }
            c.insert(ctx.parse_word(&e.beta)?, ctx.parse_word(&e.alpha)?, e.value);
        }
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForestDoc {
    pub group: GroupSpec,
    pub vertices: Vec<String>,
    /// Directed edges `[from, to]`.
    pub edges: Vec<(String, String)>,
}

impl ForestDoc {
    pub fn from_forest(group: GroupSpec, ctx: &GroupContext, f: &DirectedForest) -> Self {
        ForestDoc {
            group,
            vertices: format_all(ctx, f.vertices.elements()),
            edges: f.edges.iter().map(|(v, u)| (ctx.format(v), ctx.format(u))).collect(),
        }
    }

    pub fn build(&self, ctx: &GroupContext) -> Result<DirectedForest> {
        let edges = self
            .edges
            .iter()
            .map(|(v, u)| Ok((ctx.parse_word(v)?, ctx.parse_word(u)?)))
            .collect::<Result<Vec<_>>>()?;
        DirectedForest::new(window(ctx, &self.vertices)?, edges)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelRowDoc {
    pub input: Config,
    pub atoms: Vec<AtomDoc>,
}

/// A Markov kernel from `labels^input_window` to measures on `alphabet^output_window`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelDoc {
    pub group: GroupSpec,
    pub input_window: Vec<String>,
    pub labels: usize,
    pub output_window: Vec<String>,
    pub alphabet: usize,
    pub rows: Vec<KernelRowDoc>,
}

impl KernelDoc {
    pub fn from_kernel(group: GroupSpec, ctx: &GroupContext, k: &Kernel) -> Self {
        KernelDoc {
            group,
            input_window: format_all(ctx, k.input_window.elements()),
            labels: k.labels,
            output_window: format_all(ctx, k.output_window.elements()),
            alphabet: k.alphabet,
            rows: k.table.iter().map(|(y, m)| KernelRowDoc { input: y.clone(), atoms: atom_docs(m.atoms()) }).collect(),
        }
    }

    pub fn build(&self, ctx: &GroupContext) -> Result<Kernel> {
        let out = window(ctx, &self.output_window)?;
        let mut table = BTreeMap::new();
        for row in &self.rows {
            let m = WindowMeasure::new(out.clone(), self.alphabet, atom_map(&row.atoms)?)?;
            table.insert(row.input.clone(), m);
        }
        Kernel::new(window(ctx, &self.input_window)?, self.labels, out, self.alphabet, table)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorMapDoc {
    pub map: Vec<usize>,
}

/// Reads a document of the given kind and decodes its payload.
pub fn read_as<T: DeserializeOwned>(path: &Path, kind: Kind) -> Result<T> {
    Document::read(path)?.decode(kind)
}
