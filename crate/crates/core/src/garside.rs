//! Left-greedy (Garside) normal form in `B_n` and super-summit-set conjugacy.
//!
//! A braid is stored as `Δ^inf · A_1 ⋯ A_r` where every `A_i` is a
//! permutation braid (a positive braid in which any two strands cross at
//! most once), different from `1` and `Δ`, and every pair `(A_i, A_{i+1})` is
//! left-weighted. Two words give identical forms iff they are equal in `B_n`.
//!
//! Permutation braids are encoded by the permutation they induce on strand
//! positions, read left to right: `perm[x]` is where the strand starting at
//! position `x` (0-based) ends up.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::word::{support_upper, BraidWord, Letter};

/// A permutation braid on `n` strands.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SimpleBraid {
    perm: Vec<u16>,
}

impl SimpleBraid {
    pub fn identity(n: usize) -> Self {
        SimpleBraid { perm: (0..n as u16).collect() }
    }

    pub fn delta(n: usize) -> Self {
        SimpleBraid { perm: (0..n as u16).rev().collect() }
    }

    /// `σ_i`, 1-based.
    pub fn atom(n: usize, i: usize) -> Self {
        let mut s = Self::identity(n);
        s.perm.swap(i - 1, i);
        s
    }

    /// `Δ σ_i⁻¹`.
    pub fn delta_without_atom(n: usize, i: usize) -> Self {
        let mut s = Self::delta(n);
        for v in s.perm.iter_mut() {
            if *v as usize == i - 1 {
                *v = i as u16;
            } else if *v as usize == i {
                *v = (i - 1) as u16;
            }
        }
        s
    }

    pub fn from_permutation(perm: Vec<u16>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            let p = p as usize;
            if p >= perm.len() || seen[p] {
                return Err(Error::Invalid("not a permutation".into()));
            }
            seen[p] = true;
        }
        Ok(SimpleBraid { perm })
    }

    pub fn strands(&self) -> usize {
        self.perm.len()
    }

    pub fn permutation(&self) -> &[u16] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p as usize == i)
    }

    pub fn is_delta(&self) -> bool {
        let n = self.perm.len();
        self.perm.iter().enumerate().all(|(i, &p)| p as usize == n - 1 - i)
    }

    /// Number of crossings.
    pub fn length(&self) -> usize {
        let p = &self.perm;
        let mut c = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    c += 1;
                }
            }
        }
        c
    }

    fn inverse_perm(&self) -> Vec<u16> {
        let mut inv = vec![0u16; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p as usize] = i as u16;
        }
        inv
    }

    /// 1-based `i` with `σ_i ≼ self`.
    fn starts_with(&self, i: usize) -> bool {
        self.perm[i - 1] > self.perm[i]
    }

    pub fn starting_set(&self) -> Vec<usize> {
        (1..self.perm.len()).filter(|&i| self.starts_with(i)).collect()
    }

    /// 1-based `i` with `self ≽ σ_i` on the right.
    pub fn finishing_set(&self) -> Vec<usize> {
        let inv = self.inverse_perm();
        (1..self.perm.len()).filter(|&i| inv[i - 1] > inv[i]).collect()
    }

    /// `self · σ_i`; caller guarantees `i` is not in the finishing set.
    fn push_atom(&mut self, i: usize) {
        for v in self.perm.iter_mut() {
            if *v as usize == i - 1 {
                *v = i as u16;
            } else if *v as usize == i {
                *v = (i - 1) as u16;
            }
        }
    }

    /// `σ_i⁻¹ · self`; caller guarantees `i` is in the starting set.
    fn pop_atom(&mut self, i: usize) {
        self.perm.swap(i - 1, i);
    }

    /// Conjugation by `Δ`: `σ_i ↦ σ_{n−i}`.
    pub fn flip(&self) -> Self {
        let n = self.perm.len();
        SimpleBraid { perm: (0..n).map(|x| (n - 1) as u16 - self.perm[n - 1 - x]).collect() }
    }

    fn flip_pow(&self, p: i64) -> Self {
        if p.rem_euclid(2) == 1 {
            self.flip()
        } else {
            self.clone()
        }
    }

    /// The simple element `Δ · self⁻¹`.
    pub fn right_complement(&self) -> Self {
        let n = self.perm.len();
        let inv = self.inverse_perm();
        SimpleBraid { perm: (0..n).map(|x| inv[n - 1 - x]).collect() }
    }

    /// A positive word for this permutation braid.
    pub fn to_word(&self) -> BraidWord {
        let mut s = self.clone();
        let mut letters = Vec::with_capacity(s.length());
        'outer: loop {
            for i in 1..s.perm.len() {
                if s.starts_with(i) {
                    letters.push(Letter::sigma(i as u32));
                    s.pop_atom(i);
                    continue 'outer;
                }
            }
            break;
        }
        BraidWord::from_letters(letters)
    }
}

/// Makes `(a, b)` left-weighted without changing the product `a·b`.
fn make_left_weighted(a: &mut SimpleBraid, b: &mut SimpleBraid) -> bool {
    let n = b.perm.len();
    let mut a_inv = a.inverse_perm();
    let mut changed = false;
    let mut i = 1;
    while i < n {
        if b.starts_with(i) && a_inv[i - 1] < a_inv[i] {
            // a ← a·σ_i, b ← σ_i⁻¹·b; only positions i−1, i, i+1 can change
            a_inv.swap(i - 1, i);
            a.perm[a_inv[i - 1] as usize] = (i - 1) as u16;
            a.perm[a_inv[i] as usize] = i as u16;
            b.pop_atom(i);
            changed = true;
            i = i.saturating_sub(1).max(1);
        } else {
            i += 1;
        }
    }
    changed
}

fn is_left_weighted(a: &SimpleBraid, b: &SimpleBraid) -> bool {
    let a_inv = a.inverse_perm();
    (1..b.perm.len()).all(|i| !b.starts_with(i) || a_inv[i - 1] > a_inv[i])
}

/// Canonical form `Δ^inf · A_1 ⋯ A_r` of a braid on `strands` strands.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GarsideNF {
    strands: usize,
    inf: i64,
    factors: Vec<SimpleBraid>,
}

impl GarsideNF {
    pub fn identity(strands: usize) -> Self {
        GarsideNF { strands, inf: 0, factors: Vec::new() }
    }

    pub fn delta_power(strands: usize, p: i64) -> Self {
        GarsideNF { strands, inf: p, factors: Vec::new() }
    }

    /// Normalizes `Δ^inf · f_1 ⋯ f_k` for arbitrary simple `f_i`.
    fn from_parts(strands: usize, mut inf: i64, parts: Vec<SimpleBraid>) -> Self {
        let mut factors: Vec<SimpleBraid> = Vec::with_capacity(parts.len());
        for f in parts {
            factors.push(f);
            let mut j = factors.len() - 1;
            while j > 0 {
                let (left, right) = factors.split_at_mut(j);
                if !make_left_weighted(&mut left[j - 1], &mut right[0]) {
                    break;
                }
                j -= 1;
            }
        }
        // The leftward insertion already yields a left-weighted sequence; the
        // sweep below only runs again if that ever fails to hold.
        loop {
            let mut changed = false;
            for j in (1..factors.len()).rev() {
                if !is_left_weighted(&factors[j - 1], &factors[j]) {
                    let (left, right) = factors.split_at_mut(j);
                    make_left_weighted(&mut left[j - 1], &mut right[0]);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let leading = factors.iter().take_while(|f| f.is_delta()).count();
        inf += leading as i64;
        factors.drain(..leading);
        while factors.last().is_some_and(SimpleBraid::is_identity) {
            factors.pop();
        }
        debug_assert!(factors.iter().all(|f| !f.is_identity() && !f.is_delta()));
        // Δ^k factors pulled to the front pass over nothing, so no flip is needed.
        GarsideNF { strands, inf, factors }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn inf(&self) -> i64 {
        self.inf
    }

    pub fn sup(&self) -> i64 {
        self.inf + self.factors.len() as i64
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[SimpleBraid] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    /// Flattens back to a braid word: `Δ^inf` followed by the factors.
    pub fn to_word(&self) -> BraidWord {
        let delta = SimpleBraid::delta(self.strands).to_word();
        let head = delta.pow(self.inf);
        let tail = self.factors.iter().map(SimpleBraid::to_word).collect::<Vec<_>>();
        BraidWord::product(std::iter::once(&head).chain(tail.iter()))
    }

    pub fn mul(&self, other: &GarsideNF) -> GarsideNF {
        assert_eq!(self.strands, other.strands, "strand counts differ");
        let mut parts: Vec<SimpleBraid> = self.factors.iter().map(|f| f.flip_pow(other.inf)).collect();
        parts.extend(other.factors.iter().cloned());
        GarsideNF::from_parts(self.strands, self.inf + other.inf, parts)
    }

    pub fn inverse(&self) -> GarsideNF {
        normal_form_unchecked(&self.to_word().inverse(), self.strands)
    }

    /// `s⁻¹ · self · s` for a simple `s`.
    pub fn conjugate_by_simple(&self, s: &SimpleBraid) -> GarsideNF {
        // s⁻¹ = Δ⁻¹ · (Δ s⁻¹) and Δ^{-1} is pulled to the front.
        let head = s.right_complement().flip_pow(self.inf);
        let mut parts = Vec::with_capacity(self.factors.len() + 2);
        parts.push(head);
        parts.extend(self.factors.iter().cloned());
        parts.push(s.clone());
        GarsideNF::from_parts(self.strands, self.inf - 1, parts)
    }

    /// Cycling, returned with the simple conjugator `c` such that the result
    /// is `c⁻¹ · self · c`.
    pub fn cycling(&self) -> (GarsideNF, SimpleBraid) {
        match self.factors.first() {
            None => (self.clone(), SimpleBraid::identity(self.strands)),
            Some(first) => {
                let c = first.flip_pow(self.inf);
                let mut parts: Vec<SimpleBraid> = self.factors[1..].to_vec();
                parts.push(c.clone());
                (GarsideNF::from_parts(self.strands, self.inf, parts), c)
            }
        }
    }

    /// Decycling, returned with the word `g` such that the result is
    /// `g⁻¹ · self · g` (here `g` is the inverse of the last factor).
    pub fn decycling(&self) -> (GarsideNF, BraidWord) {
        match self.factors.last() {
            None => (self.clone(), BraidWord::identity()),
            Some(last) => {
                let mut parts = vec![last.flip_pow(self.inf)];
                parts.extend(self.factors[..self.factors.len() - 1].iter().cloned());
                (GarsideNF::from_parts(self.strands, self.inf, parts), last.to_word().inverse())
            }
        }
    }
}

/// Splits `w` into simple pieces: a run of positive letters becomes `s`, a
/// run of negative letters `t⁻¹` becomes `Δ⁻¹ · (Δ t⁻¹)`. Each run is cut as
/// soon as the next letter would make it non-simple.
fn normal_form_unchecked(w: &BraidWord, n: usize) -> GarsideNF {
    let mut chunks: Vec<(bool, SimpleBraid)> = Vec::new();
    for l in w.letters() {
        let i = l.index() as usize;
        let fits = match chunks.last() {
            Some((pos, s)) if *pos == l.is_positive() => {
                if *pos {
                    let inv = s.inverse_perm();
                    inv[i - 1] < inv[i]
                } else {
                    s.perm[i - 1] < s.perm[i]
                }
            }
            _ => false,
        };
        if !fits {
            chunks.push((l.is_positive(), SimpleBraid::identity(n)));
        }
        let (pos, s) = chunks.last_mut().expect("just pushed");
        if *pos {
            s.push_atom(i);
        } else {
            // the run σ_{i_1}⁻¹ ⋯ σ_{i_m}⁻¹ is (σ_{i_m} ⋯ σ_{i_1})⁻¹: prepend
            s.perm.swap(i - 1, i);
        }
    }
    let mut negatives_after = 0usize;
    let mut parts = vec![SimpleBraid::identity(n); chunks.len()];
    for (pos, (positive, s)) in chunks.iter().enumerate().rev() {
        let base = if *positive { s.clone() } else { s.right_complement() };
        parts[pos] = base.flip_pow(negatives_after as i64);
        if !positive {
            negatives_after += 1;
        }
    }
    GarsideNF::from_parts(n, -(negatives_after as i64), parts)
}

/// Normal form of `w` in `B_n`. Every index must be `< n`.
pub fn normal_form(w: &BraidWord, n: usize) -> Result<GarsideNF> {
    if n == 0 {
        return Err(Error::OutOfRange("strand count must be positive".into()));
    }
    if let Some(l) = w.letters().iter().find(|l| l.index() as usize >= n) {
        return Err(Error::IndexOutOfRange { index: l.index(), strands: n });
    }
    Ok(normal_form_unchecked(w, n))
}

/// Smallest strand count holding every word, and at least 2.
pub fn strands_for(words: &[&BraidWord]) -> usize {
    1 + words.iter().map(|w| support_upper(w)).max().unwrap_or(0).max(1) as usize
}

/// Normal form in the minimal strand count for `w`.
pub fn canonical(w: &BraidWord) -> GarsideNF {
    normal_form_unchecked(w, strands_for(&[w]))
}

/// Whether `u = v` in the infinite braid group.
pub fn braid_equal(u: &BraidWord, v: &BraidWord) -> bool {
    if u == v {
        return true;
    }
    let n = strands_for(&[u, v]);
    normal_form_unchecked(u, n) == normal_form_unchecked(v, n)
}

pub fn exponent_sum(w: &BraidWord) -> i64 {
    w.exponent_sum()
}

/// Answer of the conjugacy test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conjugacy {
    /// `c · u · c⁻¹ = v` for the carried witness `c`.
    Yes(BraidWord),
    No,
    /// The super summit set outgrew the enumeration budget.
    Indeterminate,
}

pub const DEFAULT_SUMMIT_BUDGET: usize = 100_000;

/// Conjugates `x` into its super summit set; returns the element and `g`
/// with `result = g⁻¹ · x · g`.
pub fn send_to_super_summit(x: &GarsideNF) -> (GarsideNF, BraidWord) {
    let n = x.strands();
    let bound = n * (n - 1) / 2 + 1;
    let mut cur = x.clone();
    let mut g = BraidWord::identity();
    'cycle: loop {
        let start = cur.inf();
        for _ in 0..bound {
            let (next, c) = cur.cycling();
            g = g.mul(&c.to_word());
            cur = next;
            if cur.inf() > start {
                continue 'cycle;
            }
        }
        break;
    }
    'decycle: loop {
        let start = cur.sup();
        for _ in 0..bound {
            let (next, c) = cur.decycling();
            g = g.mul(&c);
            cur = next;
            if cur.sup() < start {
                continue 'decycle;
            }
        }
        break;
    }
    (cur, g)
}

fn all_simple_elements(n: usize) -> Vec<SimpleBraid> {
    fn rec(n: usize, prefix: &mut Vec<u16>, used: &mut [bool], out: &mut Vec<SimpleBraid>) {
        if prefix.len() == n {
            out.push(SimpleBraid { perm: prefix.clone() });
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v as u16);
                rec(n, prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out.retain(|s| !s.is_identity());
    out
}

/// Decides conjugacy in `B_n` for the minimal `n` holding both words, by
/// enumerating the super summit set of `u` (conjugating by every simple
/// element) up to `budget` elements.
pub fn conjugate_test(u: &BraidWord, v: &BraidWord, budget: usize) -> Conjugacy {
    if u.exponent_sum() != v.exponent_sum() {
        return Conjugacy::No;
    }
    if u == v {
        return Conjugacy::Yes(BraidWord::identity());
    }
    let n = strands_for(&[u, v]);
    let (us, gu) = send_to_super_summit(&normal_form_unchecked(u, n));
    let (vs, gv) = send_to_super_summit(&normal_form_unchecked(v, n));
    if us.inf() != vs.inf() || us.sup() != vs.sup() {
        return Conjugacy::No;
    }
    let finish = |d: BraidWord| {
        // vs = d⁻¹ us d, us = gu⁻¹ u gu, vs = gv⁻¹ v gv
        let c = BraidWord::product([&gv, &d.inverse(), &gu.inverse()]);
        debug_assert!(braid_equal(&BraidWord::product([&c, u, &c.inverse()]), v));
        Conjugacy::Yes(c)
    };
    if us == vs {
        return finish(BraidWord::identity());
    }
    let simples = all_simple_elements(n);
    // parent links: element -> (parent element index, conjugator)
    let mut index: HashMap<GarsideNF, usize> = HashMap::new();
    let mut nodes: Vec<(GarsideNF, Option<(usize, usize)>)> = vec![(us.clone(), None)];
    index.insert(us, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(at) = queue.pop_front() {
        let x = nodes[at].0.clone();
        for (si, s) in simples.iter().enumerate() {
            let y = x.conjugate_by_simple(s);
            if y.inf() != x.inf() || y.sup() != x.sup() || index.contains_key(&y) {
                continue;
            }
            let id = nodes.len();
            index.insert(y.clone(), id);
            let hit = y == vs;
            nodes.push((y, Some((at, si))));
            if hit {
                let mut path = Vec::new();
                let mut cur = id;
                while let Some((parent, si)) = nodes[cur].1 {
                    path.push(simples[si].to_word());
                    cur = parent;
                }
                path.reverse();
                return finish(BraidWord::product(path.iter()));
            }
            if nodes.len() > budget {
                return Conjugacy::Indeterminate;
            }
            queue.push_back(id);
        }
    }
    Conjugacy::No
}
