//! Finite groups given by a multiplication table.

use crate::error::{Error, Result};
use crate::perm::{all_perms, Perm};

/// A finite group on `0..n` with an explicit Cayley table.
///
/// `mul[g][h]` is the index of `g·h`. Groups built by [`FiniteGroupTable::symmetric`]
/// also remember the permutation each index stands for, so they can act on `0..k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub identity: usize,
    pub perms: Option<Vec<Perm>>,
}

impl FiniteGroupTable {
    /// Validates associativity, the identity and the inverse laws on the full table.
    pub fn from_table(mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for row in &mul {
            if row.len() != n || row.iter().any(|&v| v >= n) {
                return Err(Error::InvalidGroup("table is not square over 0..n".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        let mut inv = vec![0; n];
        for g in 0..n {
            inv[g] = (0..n)
                .find(|&h| mul[g][h] == identity && mul[h][g] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {g} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(FiniteGroupTable { mul, inv, identity, perms: None })
    }

    /// Sym(k), elements in lexicographic order of their image lists; index 0 is the identity.
    pub fn symmetric(k: usize) -> Self {
        let ps = all_perms(k);
        let index = |p: &Perm| ps.binary_search(p).unwrap();
        let mul = ps.iter().map(|a| ps.iter().map(|b| index(&a.compose(b))).collect()).collect();
        let inv = ps.iter().map(|a| index(&a.inverse())).collect();
        FiniteGroupTable { mul, inv, identity: 0, perms: Some(ps) }
    }

    /// ℤ/n with `g·h = g+h mod n`.
    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let inv = (0..n).map(|a| (n - a) % n).collect();
        FiniteGroupTable { mul, inv, identity: 0, perms: None }
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    #[inline]
    pub fn op(&self, g: usize, h: usize) -> usize {
        self.mul[g][h]
    }

    #[inline]
    pub fn inverse(&self, g: usize) -> usize {
        self.inv[g]
    }

    /// Index of the permutation `p` when this is a symmetric group.
    pub fn index_of_perm(&self, p: &Perm) -> Option<usize> {
        self.perms.as_ref()?.iter().position(|q| q == p)
    }

    /// Degree `k` of the permutation representation, if any.
    pub fn degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|ps| ps[0].len())
    }

    /// The permutation of the fiber `0..k` by which `g` acts: its stored permutation
    /// when present, otherwise left translation on the group itself.
    pub fn fiber_perm(&self, g: usize, regular: bool) -> Perm {
        match (&self.perms, regular) {
            (Some(ps), false) => ps[g].clone(),
            _ => Perm(self.mul[g].clone()),
        }
    }
}
