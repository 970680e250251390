//! The finitary symmetric group `S_∞`, the projection `B_∞ → S_∞`, the
//! block-swap permutations `θ^s_n[β]` and a canonical invariant for the
//! double cosets `S_∞[α] \ S_∞ / S_∞[β]`.
//!
//! Composition convention: products are read left to right, so in `x·y` the
//! permutation `x` is applied first. With this convention `perm_of` is a
//! homomorphism from braid words (also read left to right).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::BraidWord;

/// A bijection of the positive integers moving finitely many points. Only
/// moved points are stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinPermutation {
    moved: BTreeMap<u32, u32>,
}

impl FinPermutation {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn transposition(i: u32, j: u32) -> Self {
        let mut moved = BTreeMap::new();
        if i != j {
            moved.insert(i, j);
            moved.insert(j, i);
        }
        FinPermutation { moved }
    }

    /// From the image list `images[x - 1] = s(x)`.
    pub fn from_images(images: &[u32]) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &y in images {
            if y == 0 || y as usize > images.len() || seen[y as usize - 1] {
                return Err(Error::Invalid(format!("{images:?} is not a permutation")));
            }
            seen[y as usize - 1] = true;
        }
        Ok(Self::from_fn(images.len() as u32, |x| images[x as usize - 1]))
    }

    fn from_fn(upto: u32, f: impl Fn(u32) -> u32) -> Self {
        FinPermutation { moved: (1..=upto).map(|x| (x, f(x))).filter(|(x, y)| x != y).collect() }
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.moved.get(&x).copied().unwrap_or(x)
    }

    /// Largest moved point (0 for the identity).
    pub fn support(&self) -> u32 {
        self.moved.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.moved.is_empty()
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &FinPermutation) -> FinPermutation {
        let upto = self.support().max(other.support());
        Self::from_fn(upto, |x| other.apply(self.apply(x)))
    }

    pub fn product<'a, I: IntoIterator<Item = &'a FinPermutation>>(ps: I) -> FinPermutation {
        ps.into_iter().fold(FinPermutation::identity(), |acc, p| acc.then(p))
    }

    pub fn inverse(&self) -> FinPermutation {
        FinPermutation { moved: self.moved.iter().map(|(&x, &y)| (y, x)).collect() }
    }

    /// Images `s(1), …, s(n)`.
    pub fn images(&self, n: u32) -> Vec<u32> {
        (1..=n).map(|x| self.apply(x)).collect()
    }

    /// Disjoint cycles, each starting at its least element, ordered by it.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut done = std::collections::BTreeSet::new();
        for &start in self.moved.keys() {
            if done.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            done.insert(start);
            let mut x = self.apply(start);
            while x != start {
                cycle.push(x);
                done.insert(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Parses cycle notation such as `(2 4 3)(1 5)`; `()` is the identity.
    /// Cycles are composed left to right.
    pub fn parse(text: &str) -> Result<Self> {
        let mut result = FinPermutation::identity();
        let mut rest = text.trim_start();
        let mut pos = text.len() - rest.len();
        if rest.is_empty() {
            return Err(Error::parse(pos, "empty permutation; write () for the identity"));
        }
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(Error::parse(pos, "expected '('"));
            }
            let close = rest.find(')').ok_or_else(|| Error::parse(pos, "unclosed cycle"))?;
            let mut cycle = Vec::new();
            for tok in rest[1..close].split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
                let v: u32 = tok.parse().map_err(|_| Error::parse(pos, format!("bad point '{tok}'")))?;
                if v == 0 {
                    return Err(Error::parse(pos, "points are positive integers"));
                }
                if cycle.contains(&v) {
                    return Err(Error::parse(pos, format!("point {v} repeated in a cycle")));
                }
                cycle.push(v);
            }
            let mut c = FinPermutation::identity();
            for w in 0..cycle.len() {
                if cycle.len() > 1 {
                    c.moved.insert(cycle[w], cycle[(w + 1) % cycle.len()]);
                }
            }
            result = result.then(&c);
            let consumed = close + 1;
            let trimmed = rest[consumed..].trim_start();
            pos += consumed + (rest[consumed..].len() - trimmed.len());
            rest = trimmed;
        }
        Ok(result)
    }
}

impl fmt::Display for FinPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        for c in self.cycles() {
            let pts: Vec<String> = c.iter().map(u32::to_string).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FinPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for FinPermutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FinPermutation::parse(s)
    }
}

/// The permutation of a braid: `σ_i ↦ (i i+1)`, read left to right.
pub fn perm_of(w: &BraidWord) -> FinPermutation {
    let upto = w.max_index() + 1;
    let mut images: Vec<u32> = (0..=upto).collect();
    // images[x] tracks where the strand starting at x currently sits
    let mut at: Vec<u32> = (0..=upto).collect();
    for l in w.letters() {
        let i = l.index() as usize;
        at.swap(i, i + 1);
    }
    for (pos, &x) in at.iter().enumerate() {
        images[x as usize] = pos as u32;
    }
    FinPermutation::from_fn(upto, |x| images[x as usize])
}

/// `θ^s_n[β]`: swaps the blocks `(β, β+n]` and `(β+n, β+2n]`.
pub fn theta_s(n: u32, beta: u32) -> FinPermutation {
    FinPermutation::from_fn(beta + 2 * n, |i| {
        if i > beta && i <= beta + n {
            i + n
        } else if i > beta + n && i <= beta + 2 * n {
            i - n
        } else {
            i
        }
    })
}

/// The double coset `S_∞[α] · rep · S_∞[γ]`, where `S_∞[α]` fixes `1..=α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymCoset {
    pub alpha: u32,
    pub gamma: u32,
    pub rep: FinPermutation,
}

impl SymCoset {
    pub fn new(alpha: u32, gamma: u32, rep: FinPermutation) -> Self {
        SymCoset { alpha, gamma, rep }
    }

    pub fn invariant(&self) -> PartialInjection {
        canonical_invariant(&self.rep, self.alpha, self.gamma)
    }

    pub fn same_coset(&self, other: &SymCoset) -> bool {
        self.alpha == other.alpha && self.gamma == other.gamma && self.invariant() == other.invariant()
    }
}

/// `p · θ^s_n[β] · q` for an explicit `n`.
pub fn sym_product_at(p: &SymCoset, q: &SymCoset, n: u32) -> Result<SymCoset> {
    if p.gamma != q.alpha {
        return Err(Error::IndexMismatch { left: p.gamma, right: q.alpha });
    }
    let rep = FinPermutation::product([&p.rep, &theta_s(n, p.gamma), &q.rep]);
    Ok(SymCoset { alpha: p.alpha, gamma: q.gamma, rep })
}

/// The stable index `max(supports, α, γ) + 1`.
pub fn sym_index(p: &SymCoset, q: &SymCoset) -> u32 {
    p.rep.support().max(q.rep.support()).max(p.alpha).max(q.gamma) + 1
}

pub fn sym_product(p: &SymCoset, q: &SymCoset) -> Result<SymCoset> {
    if p.gamma != q.alpha {
        return Err(Error::IndexMismatch { left: p.gamma, right: q.alpha });
    }
    sym_product_at(p, q, sym_index(p, q))
}

/// An injective partial map from `{1..β}` to `{1..α}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialInjection {
    pub alpha: u32,
    pub beta: u32,
    pub pairs: BTreeMap<u32, u32>,
}

impl fmt::Display for PartialInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.pairs.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        write!(f, "{{{}}}", pairs.join(", "))
    }
}

/// Canonical form of `S_∞[α] · s · S_∞[β]`: the points `i ≤ α` that `s`
/// sends into `{1..β}`, recorded as `s(i) ↦ i`. A left factor fixes every
/// `i ≤ α` and a right factor fixes every `s(i) ≤ β`, so these pairs are
/// unchanged across the double coset; conversely they determine it.
pub fn canonical_invariant(s: &FinPermutation, alpha: u32, beta: u32) -> PartialInjection {
    let pairs = (1..=alpha).map(|i| (s.apply(i), i)).filter(|&(j, _)| j <= beta).collect();
    PartialInjection { alpha, beta, pairs }
}
