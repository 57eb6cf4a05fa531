//! Finitely generated groups with solvable word problem at desk scale.

mod quotient;
mod window;

pub use quotient::{coset_cocycle, finite_quotient_action, Membership, QuotientData, SubgroupAction};
pub use window::{cayley_ball, Window};

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::finite_group::FiniteGroupTable;

/// A group element in normal form.
///
/// Free groups store the freely reduced word as signed letters (`+(i+1)` for generator
/// `i`, `-(i+1)` for its inverse); free abelian groups store the exponent vector; finite
/// groups store a single table index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub Vec<i64>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Free { rank: usize },
    FreeAbelian { rank: usize },
    /// A finite group (or a finite quotient of a free group) with the images of the
    /// generators in the table.
    Finite { table: FiniteGroupTable, gens: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupContext {
    pub kind: GroupKind,
    pub names: Vec<String>,
    /// Shortest generator word for every table element (finite kinds only).
    words: Vec<Vec<(usize, i64)>>,
}

fn default_names(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| {
            if k <= 4 && i < 4 {
                ["a", "b", "c", "d"][i].to_string()
            } else {
                format!("g{i}")
            }
        })
        .collect()
}

impl GroupContext {
    pub fn free(rank: usize) -> Self {
        GroupContext { kind: GroupKind::Free { rank }, names: default_names(rank), words: vec![] }
    }

    pub fn free_abelian(rank: usize) -> Self {
        GroupContext { kind: GroupKind::FreeAbelian { rank }, names: default_names(rank), words: vec![] }
    }

    /// A finite group presented by a table and the indices of its generators.
    pub fn finite(table: FiniteGroupTable, gens: Vec<usize>) -> Result<Self> {
        let n = table.order();
        if gens.iter().any(|&g| g >= n) {
            return Err(Error::InvalidGroup("generator index outside table".into()));
        }
        // breadth-first shortest words; right multiplication by generators
        let mut words: Vec<Option<Vec<(usize, i64)>>> = vec![None; n];
        words[table.identity] = Some(vec![]);
        let mut frontier = vec![table.identity];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &g in &frontier {
                for (i, &s) in gens.iter().enumerate() {
                    for (t, sign) in [(s, 1i64), (table.inverse(s), -1)] {
                        let h = table.op(g, t);
                        if words[h].is_none() {
                            let mut w = words[g].clone().unwrap();
                            push_syllable(&mut w, i, sign);
                            words[h] = Some(w);
                            next.push(h);
                        }
                    }
                }
            }
            frontier = next;
        }
        if words.iter().any(Option::is_none) {
            return Err(Error::InvalidGroup("generators do not generate the table".into()));
        }
        let names = default_names(gens.len());
        Ok(GroupContext {
            kind: GroupKind::Finite { table, gens },
            names,
            words: words.into_iter().map(Option::unwrap).collect(),
        })
    }

    /// ℤ/n generated by 1; the finite quotient model of ℤ.
    pub fn cyclic(n: usize) -> Self {
        Self::finite(FiniteGroupTable::cyclic(n), vec![1 % n.max(1)]).expect("cyclic group")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.rank() {
            return Err(Error::InvalidGroup("wrong number of generator names".into()));
        }
        if names.iter().any(|n| n == "e" || n.is_empty() || !n.chars().all(|c| c.is_alphanumeric() || c == '_')) {
            return Err(Error::InvalidGroup("generator names must be alphanumeric and not `e`".into()));
        }
        self.names = names;
        Ok(self)
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        match &self.kind {
            GroupKind::Free { rank } | GroupKind::FreeAbelian { rank } => *rank,
            GroupKind::Finite { gens, .. } => gens.len(),
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self.kind, GroupKind::Free { .. })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, GroupKind::Finite { .. })
    }

    pub fn identity(&self) -> Element {
        match &self.kind {
            GroupKind::Free { .. } => Element(vec![]),
            GroupKind::FreeAbelian { rank } => Element(vec![0; *rank]),
            GroupKind::Finite { table, .. } => Element(vec![table.identity as i64]),
        }
    }

    pub fn is_identity(&self, g: &Element) -> bool {
        *g == self.identity()
    }

    pub fn generator(&self, i: usize) -> Element {
        self.power(i, 1)
    }

    /// `s_i^k`.
    pub fn power(&self, i: usize, k: i64) -> Element {
        match &self.kind {
            GroupKind::Free { .. } => {
                let l = if k >= 0 { i as i64 + 1 } else { -(i as i64 + 1) };
                Element(vec![l; k.unsigned_abs() as usize])
            }
            GroupKind::FreeAbelian { rank } => {
                let mut v = vec![0; *rank];
                v[i] = k;
                Element(v)
            }
            GroupKind::Finite { table, gens } => {
                let base = if k >= 0 { gens[i] } else { table.inverse(gens[i]) };
                let mut acc = table.identity;
                for _ in 0..k.unsigned_abs() {
                    acc = table.op(acc, base);
                }
                Element(vec![acc as i64])
            }
        }
    }

    /// The generators and their inverses, in the order `s_0, s_0^{-1}, s_1, ...`,
    /// with duplicates (involutions) removed.
    pub fn symmetric_generators(&self) -> Vec<Element> {
        let mut out: Vec<Element> = Vec::new();
        for i in 0..self.rank() {
            for k in [1, -1] {
                let g = self.power(i, k);
                if !self.is_identity(&g) && !out.contains(&g) {
                    out.push(g);
                }
            }
        }
        out
    }

    /// Cheap structural validity check of a normal form.
    pub fn validate(&self, g: &Element) -> Result<()> {
        let ok = match &self.kind {
            GroupKind::Free { rank } => {
                g.0.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= *rank)
                    && g.0.windows(2).all(|w| w[0] != -w[1])
            }
            GroupKind::FreeAbelian { rank } => g.0.len() == *rank,
            GroupKind::Finite { table, .. } => g.0.len() == 1 && (g.0[0] as usize) < table.order() && g.0[0] >= 0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::MalformedWord(format!("{:?}", g.0)))
        }
    }

    pub fn multiply(&self, g: &Element, h: &Element) -> Element {
        match &self.kind {
            GroupKind::Free { .. } => {
                let mut out = g.0.clone();
                for &l in &h.0 {
                    if out.last() == Some(&-l) {
                        out.pop();
                    } else {
                        out.push(l);
                    }
                }
                Element(out)
            }
            GroupKind::FreeAbelian { .. } => Element(g.0.iter().zip(&h.0).map(|(a, b)| a + b).collect()),
            GroupKind::Finite { table, .. } => Element(vec![table.op(g.0[0] as usize, h.0[0] as usize) as i64]),
        }
    }

    pub fn inverse(&self, g: &Element) -> Element {
        match &self.kind {
            GroupKind::Free { .. } => Element(g.0.iter().rev().map(|l| -l).collect()),
            GroupKind::FreeAbelian { .. } => Element(g.0.iter().map(|a| -a).collect()),
            GroupKind::Finite { table, .. } => Element(vec![table.inverse(g.0[0] as usize) as i64]),
        }
    }

    /// `g^{-1} h`.
    pub fn left_div(&self, g: &Element, h: &Element) -> Element {
        self.multiply(&self.inverse(g), h)
    }

    pub fn product<'a>(&self, it: impl IntoIterator<Item = &'a Element>) -> Element {
        it.into_iter().fold(self.identity(), |acc, g| self.multiply(&acc, g))
    }

    /// A word in the generators representing `g`, as `(generator, exponent)` syllables
    /// read left to right.
    pub fn syllables(&self, g: &Element) -> Vec<(usize, i64)> {
        match &self.kind {
            GroupKind::Free { .. } => {
                let mut out = Vec::new();
                for &l in &g.0 {
                    push_syllable(&mut out, l.unsigned_abs() as usize - 1, l.signum());
                }
                out
            }
            GroupKind::FreeAbelian { .. } => {
                g.0.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, &e)| (i, e)).collect()
            }
            GroupKind::Finite { .. } => self.words[g.0[0] as usize].clone(),
        }
    }

    /// Word length with respect to the symmetric generators (exact for free kinds,
    /// shortest word for finite kinds).
    pub fn word_length(&self, g: &Element) -> u64 {
        self.syllables(g).iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    /// All elements, for finite kinds.
    pub fn elements(&self) -> Option<Vec<Element>> {
        match &self.kind {
            GroupKind::Finite { table, .. } => Some((0..table.order()).map(|i| Element(vec![i as i64])).collect()),
            _ => None,
        }
    }

    /// Parses a word such as `a b^-1 a`, `a*b`, `e`, or `(1,2)` for free abelian groups.
    pub fn parse_word(&self, s: &str) -> Result<Element> {
        let s = s.trim();
        let bad = || Error::MalformedWord(s.to_string());
        if let (GroupKind::FreeAbelian { rank }, Some(inner)) =
            (&self.kind, s.strip_prefix('(').and_then(|t| t.strip_suffix(')')))
        {
            let v: Vec<i64> = inner
                .split(',')
                .map(|t| t.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad())?;
            if v.len() != *rank {
                return Err(bad());
            }
            return Ok(Element(v));
        }
        let mut acc = self.identity();
        for tok in s.split(|c: char| c.is_whitespace() || c == '*' || c == '.').filter(|t| !t.is_empty()) {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (n, e.parse::<i64>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            if name == "e" {
                continue;
            }
            let i = self.names.iter().position(|n| n == name).ok_or_else(bad)?;
            acc = self.multiply(&acc, &self.power(i, exp));
        }
        Ok(acc)
    }

    /// Renders a normal form as a word parseable by [`GroupContext::parse_word`].
    pub fn format(&self, g: &Element) -> String {
        let syl = self.syllables(g);
        if syl.is_empty() {
            return "e".to_string();
        }
        syl.iter()
            .map(|&(i, e)| if e == 1 { self.names[i].clone() } else { format!("{}^{}", self.names[i], e) })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Maps `g` through a homomorphism into a finite table given by generator images.
    pub fn eval_hom(&self, g: &Element, target: &FiniteGroupTable, images: &[usize]) -> usize {
        let mut acc = target.identity;
        for (i, e) in self.syllables(g) {
            let base = if e >= 0 { images[i] } else { target.inverse(images[i]) };
            for _ in 0..e.unsigned_abs() {
                acc = target.op(acc, base);
            }
        }
        acc
    }

    /// Checks that generator images define a homomorphism into `target`.
    pub fn check_hom(&self, target: &FiniteGroupTable, images: &[usize]) -> Result<()> {
        if images.len() != self.rank() || images.iter().any(|&i| i >= target.order()) {
            return Err(Error::InvalidGroup("homomorphism images do not match generators".into()));
        }
        match &self.kind {
            GroupKind::Free { .. } => Ok(()),
            GroupKind::FreeAbelian { .. } => {
                for i in 0..images.len() {
                    for j in 0..images.len() {
                        if target.op(images[i], images[j]) != target.op(images[j], images[i]) {
                            return Err(Error::InvalidGroup("images of commuting generators do not commute".into()));
                        }
                    }
                }
                Ok(())
            }
            GroupKind::Finite { table, gens } => {
                // φ(g·s) = φ(g)·φ(s) for all g and generators s
                let vals: HashMap<usize, usize> = (0..table.order())
                    .map(|g| (g, self.eval_hom(&Element(vec![g as i64]), target, images)))
                    .collect();
                for g in 0..table.order() {
                    for (i, &s) in gens.iter().enumerate() {
                        if vals[&table.op(g, s)] != target.op(vals[&g], images[i]) {
                            return Err(Error::InvalidGroup("generator images violate a relation".into()));
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

fn push_syllable(w: &mut Vec<(usize, i64)>, i: usize, e: i64) {
    if let Some(last) = w.last_mut() {
        if last.0 == i {
            last.1 += e;
            if last.1 == 0 {
                w.pop();
            }
            return;
        }
    }
    w.push((i, e));
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
