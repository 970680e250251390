//! The free group `F_∞`, finitely supported endomorphisms of it, the Artin
//! representation `B_∞ → Aut(F_∞)` and the block swaps `ϑ_j[β]`.
//!
//! Conventions: endomorphisms compose as functions, `(e1 ∘ e2)(x) =
//! e1(e2(x))`, and the representation satisfies `artin(uv) = artin(u) ∘
//! artin(v)` with `σ_j : x_j ↦ x_j x_{j+1} x_j⁻¹, x_{j+1} ↦ x_j`.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sym::FinPermutation;
use crate::word::{theta, BraidWord};

/// A freely reduced word in `x_1, x_2, …`; letter `±i` is `x_i^{±1}`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(Vec<i32>);

impl FreeWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(i: u32) -> Self {
        FreeWord(vec![i as i32])
    }

    /// Builds from signed indices, reducing freely. Zero is not allowed.
    pub fn from_signed(letters: &[i32]) -> Self {
        assert!(letters.iter().all(|&l| l != 0), "index 0 is not a generator");
        let mut out: Vec<i32> = Vec::with_capacity(letters.len());
        for &l in letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord(out)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut v = self.0.clone();
        for &l in &other.0 {
            if v.last() == Some(&-l) {
                v.pop();
            } else {
                v.push(l);
            }
        }
        FreeWord(v)
    }

    pub fn product<'a, I: IntoIterator<Item = &'a FreeWord>>(ws: I) -> FreeWord {
        ws.into_iter().fold(FreeWord::identity(), |acc, w| acc.mul(w))
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn max_index(&self) -> u32 {
        self.0.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0)
    }

    /// Exponent sum of `x_i`.
    pub fn exponent(&self, i: u32) -> i64 {
        self.0.iter().filter(|l| l.unsigned_abs() == i).map(|&l| l.signum() as i64).sum()
    }

    /// `j` if the word is `u x_j u⁻¹` for some `u`.
    pub fn conjugated_generator(&self) -> Option<u32> {
        let n = self.0.len();
        if n.is_multiple_of(2) {
            return None;
        }
        let mid = self.0[n / 2];
        let symmetric = (0..n / 2).all(|t| self.0[t] == -self.0[n - 1 - t]);
        (symmetric && mid > 0).then_some(mid as u32)
    }

    /// Parses `x3 x2^-1 x1`; `e`, `1` or blank is the identity.
    pub fn parse(text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut pos = 0;
        for tok in text.split_inclusive(char::is_whitespace) {
            let t = tok.trim();
            let at = pos;
            pos += tok.len();
            if t.is_empty() || ((t == "e" || t == "1") && text.split_whitespace().count() == 1) {
                continue;
            }
            let body = t.strip_prefix('x').ok_or_else(|| Error::parse(at, format!("expected 'x<k>', found '{t}'")))?;
            let (digits, sign) = match body.strip_suffix("^-1") {
                Some(d) => (d, -1),
                None => (body, 1),
            };
            let i: i32 = digits.parse().map_err(|_| Error::parse(at, format!("bad generator '{t}'")))?;
            if i <= 0 {
                return Err(Error::parse(at, "generator index must be positive"));
            }
            letters.push(sign * i);
        }
        Ok(FreeWord::from_signed(&letters))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let toks: Vec<String> =
            self.0.iter().map(|&l| if l > 0 { format!("x{l}") } else { format!("x{}^-1", -l) }).collect();
        write!(f, "{}", toks.join(" "))
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for FreeWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FreeWord::parse(s)
    }
}

/// An endomorphism of `F_∞` that fixes every `x_i` with `i > support`.
#[derive(Clone, Default)]
pub struct EndoFin {
    images: Vec<FreeWord>,
}

impl EndoFin {
    pub fn identity() -> Self {
        Self::default()
    }

    /// `images[i - 1]` is the image of `x_i`.
    pub fn from_images(images: Vec<FreeWord>) -> Self {
        let mut e = EndoFin { images };
        e.trim();
        e
    }

    fn trim(&mut self) {
        while let Some(last) = self.images.last() {
            let i = self.images.len() as i32;
            if last.0 == [i] {
                self.images.pop();
            } else {
                break;
            }
        }
    }

    pub fn support(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn image(&self, i: u32) -> FreeWord {
        self.images.get(i as usize - 1).cloned().unwrap_or_else(|| FreeWord::generator(i))
    }

    /// Largest generator index occurring in any image.
    pub fn max_index(&self) -> u32 {
        self.images.iter().map(FreeWord::max_index).max().unwrap_or(0).max(self.support())
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        let mut out = FreeWord::identity();
        for &l in &w.0 {
            let i = l.unsigned_abs();
            let img = match self.images.get(i as usize - 1) {
                Some(img) => img.clone(),
                None => FreeWord::generator(i),
            };
            out = out.mul(&if l > 0 { img } else { img.inverse() });
        }
        out
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &EndoFin) -> EndoFin {
        let n = self.support().max(other.support());
        EndoFin::from_images((1..=n).map(|i| self.apply(&other.image(i))).collect())
    }

    /// The permutation `i ↦ j` when every image is a conjugate of one
    /// generator `x_j`.
    pub fn index_permutation(&self) -> Option<FinPermutation> {
        let n = self.support();
        let images: Option<Vec<u32>> = (1..=n).map(|i| self.image(i).conjugated_generator()).collect();
        FinPermutation::from_images(&images?).ok()
    }
}

impl PartialEq for EndoFin {
    fn eq(&self, other: &Self) -> bool {
        let n = self.support().max(other.support());
        (1..=n).all(|i| self.image(i) == other.image(i))
    }
}

impl Eq for EndoFin {}

impl fmt::Display for EndoFin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, img) in self.images.iter().enumerate() {
            writeln!(f, "x{} -> {}", i + 1, img)?;
        }
        Ok(())
    }
}

impl fmt::Debug for EndoFin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for EndoFin {
    type Err = Error;
    /// Lines `x<i> -> <free word>`; unlisted generators are fixed.
    fn from_str(s: &str) -> Result<Self> {
        let mut images: Vec<FreeWord> = Vec::new();
        for (no, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) =
                line.split_once("->").ok_or_else(|| Error::parse(0, format!("line {}: expected '->'", no + 1)))?;
            let i: usize = lhs
                .trim()
                .strip_prefix('x')
                .and_then(|d| d.parse().ok())
                .filter(|&i| i > 0)
                .ok_or_else(|| Error::parse(0, format!("line {}: bad generator '{}'", no + 1, lhs.trim())))?;
            while images.len() < i {
                images.push(FreeWord::generator(images.len() as u32 + 1));
            }
            images[i - 1] = FreeWord::parse(rhs)?;
        }
        Ok(EndoFin::from_images(images))
    }
}

/// An automorphism stored with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutFin {
    forward: EndoFin,
    inverse: EndoFin,
}

impl AutFin {
    /// Checks that both composites fix every generator.
    pub fn new(forward: EndoFin, inverse: EndoFin) -> Result<Self> {
        if forward.compose(&inverse) != EndoFin::identity() || inverse.compose(&forward) != EndoFin::identity() {
            return Err(Error::Verification("the stored inverse does not invert".into()));
        }
        Ok(AutFin { forward, inverse })
    }

    pub fn identity() -> Self {
        AutFin { forward: EndoFin::identity(), inverse: EndoFin::identity() }
    }

    pub fn endo(&self) -> &EndoFin {
        &self.forward
    }

    pub fn inverse_endo(&self) -> &EndoFin {
        &self.inverse
    }

    pub fn inverse(&self) -> AutFin {
        AutFin { forward: self.inverse.clone(), inverse: self.forward.clone() }
    }

    pub fn compose(&self, other: &AutFin) -> AutFin {
        AutFin { forward: self.forward.compose(&other.forward), inverse: other.inverse.compose(&self.inverse) }
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        self.forward.apply(w)
    }
}

pub fn apply(e: &EndoFin, w: &FreeWord) -> FreeWord {
    e.apply(w)
}

pub fn compose(e1: &EndoFin, e2: &EndoFin) -> EndoFin {
    e1.compose(e2)
}

fn artin_endo(w: &BraidWord) -> EndoFin {
    let n = w.max_index() as usize + 1;
    let mut images: Vec<FreeWord> = (1..=n as u32).map(FreeWord::generator).collect();
    // images are those of the prefix read so far; append one generator
    for l in w.letters() {
        let j = l.index() as usize;
        let (ej, ej1) = (images[j - 1].clone(), images[j].clone());
        if l.is_positive() {
            images[j - 1] = FreeWord::product([&ej, &ej1, &ej.inverse()]);
            images[j] = ej;
        } else {
            images[j - 1] = ej1.clone();
            images[j] = FreeWord::product([&ej1.inverse(), &ej, &ej1]);
        }
    }
    EndoFin::from_images(images)
}

/// The Artin image of a braid, with its inverse.
pub fn artin(w: &BraidWord) -> AutFin {
    AutFin { forward: artin_endo(w), inverse: artin_endo(&w.inverse()) }
}

/// `x_i ↦ x_i⁻¹` on every generator; conjugating by it switches between the
/// two usual spellings of the Artin representation.
pub fn inversion(n: u32) -> AutFin {
    let e = EndoFin::from_images((1..=n).map(|i| FreeWord::generator(i).inverse()).collect());
    AutFin { forward: e.clone(), inverse: e }
}

/// The Artin representation in the spelling `σ_j : x_j ↦ x_j⁻¹ x_{j+1} x_j`,
/// i.e. `ι ∘ artin(w) ∘ ι` for the inversion `ι`.
pub fn artin_mirrored(w: &BraidWord) -> AutFin {
    let iota = inversion(w.max_index() + 1);
    iota.compose(&artin(w)).compose(&iota)
}

/// `ϑ_j[β]`: swaps `x_{β+1..β+j}` with `x_{β+j+1..β+2j}`.
pub fn vartheta(j: u32, beta: u32) -> AutFin {
    let e = EndoFin::from_images(
        (1..=beta + 2 * j)
            .map(|i| {
                FreeWord::generator(if i > beta && i <= beta + j {
                    i + j
                } else if i > beta + j {
                    i - j
                } else {
                    i
                })
            })
            .collect(),
    );
    AutFin { forward: e.clone(), inverse: e }
}

/// `y_k = x_{β+k} x_{β+k−1} ⋯ x_{β+1}`.
pub fn y_word(k: u32, beta: u32) -> FreeWord {
    FreeWord::from_signed(&(beta + 1..=beta + k).rev().map(|i| i as i32).collect::<Vec<_>>())
}

/// The five cases of the induction from `θ_{k−1}` to `θ_k` (plus the base
/// case `k = 1`), as a function of the generator `x_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProofCase {
    Base,
    /// `β+1 ≤ i ≤ k'+β` with `k' = k − 1`.
    LowerBlock,
    /// `i = k'+β+1`.
    FirstOfUpper,
    /// `k'+β+1 < i ≤ 2k'+β+1`.
    UpperBlock,
    /// `i = 2k'+β+2`.
    LastMoved,
    /// `i ≤ β` or `i > 2k'+β+2`.
    Fixed,
}

pub fn proof_case(i: u32, k: u32, beta: u32) -> ProofCase {
    if k <= 1 {
        return ProofCase::Base;
    }
    let kp = k - 1;
    if i <= beta || i > 2 * kp + beta + 2 {
        ProofCase::Fixed
    } else if i <= kp + beta {
        ProofCase::LowerBlock
    } else if i == kp + beta + 1 {
        ProofCase::FirstOfUpper
    } else if i <= 2 * kp + beta + 1 {
        ProofCase::UpperBlock
    } else {
        ProofCase::LastMoved
    }
}

/// The closed form of the image of `x_i` under `θ_k[β]`, in the mirrored
/// spelling: `x_i` off the blocks, `y_k⁻¹ x_{i+k} y_k` on the lower block
/// and `x_{i−k}` on the upper block.
pub fn theta_formula(i: u32, k: u32, beta: u32) -> FreeWord {
    if i <= beta || i > 2 * k + beta {
        FreeWord::generator(i)
    } else if i <= k + beta {
        let y = y_word(k, beta);
        FreeWord::product([&y.inverse(), &FreeWord::generator(i + k), &y])
    } else {
        FreeWord::generator(i - k)
    }
}

/// One row of [`theta_formula_report`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaCheck {
    pub i: u32,
    pub case: ProofCase,
    /// The mirrored image matches the closed form.
    pub mirrored_ok: bool,
    /// The image under [`artin`] matches the closed form transported by `ι`
    /// (`z x_{i+k} z⁻¹` with `z = x_{β+1} ⋯ x_{β+k}`).
    pub direct_ok: bool,
    /// Same value, written with `ϑ`: `y_k⁻¹ ϑ(x_i) y_k` on the lower block and
    /// `ϑ(x_i)` elsewhere.
    pub vartheta_form_ok: bool,
}

/// Checks every generator `x_1 … x_{2k+β+2}`.
pub fn theta_formula_report(k: u32, beta: u32) -> Vec<FormulaCheck> {
    let th = theta(k, beta);
    let mirrored = artin_mirrored(&th);
    let direct = artin(&th);
    let iota = inversion(2 * k + beta + 2);
    let vt = vartheta(k, beta);
    let y = y_word(k, beta);
    (1..=2 * k + beta + 2)
        .map(|i| {
            let expected = theta_formula(i, k, beta);
            let x = FreeWord::generator(i);
            let via_vt = if i > beta && i <= k + beta {
                FreeWord::product([&y.inverse(), &vt.apply(&x), &y])
            } else {
                vt.apply(&x)
            };
            // ι(expected⁻¹) is the direct-spelling image of x_i
            let transported = iota.apply(&expected.inverse());
            FormulaCheck {
                i,
                case: proof_case(i, k, beta),
                mirrored_ok: mirrored.apply(&x) == expected,
                direct_ok: direct.apply(&x) == transported,
                vartheta_form_ok: via_vt == expected,
            }
        })
        .collect()
}

pub fn check_theta_formula(k: u32, beta: u32) -> bool {
    theta_formula_report(k, beta).iter().all(|c| c.mirrored_ok && c.direct_ok && c.vartheta_form_ok)
}

/// The automorphism `ρ ∈ H(β+k)` with `artin(θ_k[β]) = ρ ∘ ϑ_k[β]`: it
/// conjugates `x_{β+k+1}, …, x_{β+2k}` by `z = x_{β+1} ⋯ x_{β+k}` and fixes
/// the other generators.
pub fn theta_vartheta_quotient(k: u32, beta: u32) -> AutFin {
    let z = FreeWord::from_signed(&(beta + 1..=beta + k).map(|i| i as i32).collect::<Vec<_>>());
    let conj = |w: &FreeWord, by: &FreeWord| FreeWord::product([by, w, &by.inverse()]);
    let make = |by: &FreeWord| {
        EndoFin::from_images(
            (1..=beta + 2 * k)
                .map(|i| {
                    let x = FreeWord::generator(i);
                    if i > beta + k {
                        conj(&x, by)
                    } else {
                        x
                    }
                })
                .collect(),
        )
    };
    AutFin { forward: make(&z), inverse: make(&z.inverse()) }
}

pub fn in_h(e: &EndoFin, alpha: u32) -> bool {
    (1..=alpha).all(|i| e.image(i) == FreeWord::generator(i))
}

/// Integer matrix of the induced map on `Z^n`: column `c` is the exponent
/// vector of the image of `x_{c+1}`. `n` is `max(support, max index)`.
pub fn abelianize(e: &EndoFin) -> Vec<Vec<i64>> {
    abelianize_to(e, e.max_index())
}

pub fn abelianize_to(e: &EndoFin, n: u32) -> Vec<Vec<i64>> {
    let cols: Vec<FreeWord> = (1..=n).map(|c| e.image(c)).collect();
    (1..=n).map(|r| cols.iter().map(|w| w.exponent(r)).collect()).collect()
}

/// Row-style Hermite normal form of the lattice spanned by `rows`
/// (zero rows dropped).
fn hermite(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<i64>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let mut out: Vec<Vec<i64>> = Vec::new();
    for col in 0..width {
        loop {
            let nz: Vec<usize> = (0..m.len()).filter(|&r| m[r][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let pivot = *nz.iter().min_by_key(|&&r| m[r][col].abs()).unwrap();
            for &r in &nz {
                if r != pivot {
                    let q = m[r][col].div_euclid(m[pivot][col]);
                    let pr = m[pivot].clone();
                    for (x, p) in m[r].iter_mut().zip(&pr) {
                        *x -= q * p;
                    }
                }
            }
        }
        if let Some(r) = (0..m.len()).find(|&r| m[r][col] != 0) {
            let mut row = m.remove(r);
            if row[col] < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
            out.push(row);
        }
        m.retain(|r| r.iter().any(|&x| x != 0));
    }
    // reduce entries above each pivot
    for i in 0..out.len() {
        let col = out[i].iter().position(|&x| x != 0).unwrap();
        for r in 0..i {
            let q = out[r][col].div_euclid(out[i][col]);
            let pr = out[i].clone();
            for (x, p) in out[r].iter_mut().zip(&pr) {
                *x -= q * p;
            }
        }
    }
    out
}

fn reduce_mod(v: &[i64], basis: &[Vec<i64>]) -> Vec<i64> {
    let mut v = v.to_vec();
    for b in basis {
        let col = b.iter().position(|&x| x != 0).unwrap();
        let q = v[col].div_euclid(b[col]);
        for (x, p) in v.iter_mut().zip(b) {
            *x -= q * p;
        }
    }
    v
}

/// Abelian invariant of `H(α) · e · H(α′)`: with `M = abelianize(e)`, the
/// first `α′` columns split as `[T; S]` (rows `≤ α` and `> α`); the result is
/// the Hermite form of the row lattice of `S` followed by the rows of `T`
/// reduced modulo that lattice.
pub fn abelian_coset_invariant(e: &EndoFin, alpha: u32, alpha_right: u32, n: u32) -> Vec<Vec<i64>> {
    let m = abelianize_to(e, n.max(alpha).max(alpha_right));
    let cols = alpha_right as usize;
    let first: Vec<Vec<i64>> = m.iter().map(|row| row[..cols].to_vec()).collect();
    let (t, s) = first.split_at(alpha as usize);
    let mut out = hermite(s);
    out.push(vec![i64::MIN; cols]);
    out.extend(t.iter().map(|row| reduce_mod(row, &hermite(s))));
    out
}

/// One generator of the search for the final counterexample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// `x_i ↦ x_i x_j^{±1}`.
    Transvection { i: u32, j: u32, sign: i32 },
    /// `x_i ↦ x_i⁻¹`.
    Inversion(u32),
    /// `x_i ↔ x_j`.
    Swap(u32, u32),
}

impl Move {
    fn image(&self, x: u32) -> FreeWord {
        match *self {
            Move::Transvection { i, j, sign } if x == i => FreeWord::from_signed(&[i as i32, sign * j as i32]),
            Move::Inversion(i) if x == i => FreeWord::generator(i).inverse(),
            Move::Swap(i, j) if x == i => FreeWord::generator(j),
            Move::Swap(i, j) if x == j => FreeWord::generator(i),
            _ => FreeWord::generator(x),
        }
    }

    fn apply(&self, w: &FreeWord) -> FreeWord {
        let mut out: Vec<i32> = Vec::with_capacity(w.len() + 4);
        for &l in &w.0 {
            let img = self.image(l.unsigned_abs());
            let img = if l > 0 { img } else { img.inverse() };
            for &m in &img.0 {
                if out.last() == Some(&-m) {
                    out.pop();
                } else {
                    out.push(m);
                }
            }
        }
        FreeWord(out)
    }

    pub fn inverse(&self) -> Move {
        match *self {
            Move::Transvection { i, j, sign } => Move::Transvection { i, j, sign: -sign },
            other => other,
        }
    }

    fn as_aut(&self, n: u32) -> AutFin {
        let f = |m: &Move| EndoFin::from_images((1..=n).map(|x| m.image(x)).collect());
        AutFin { forward: f(self), inverse: f(&self.inverse()) }
    }
}

/// Nielsen moves fixing `x_1 … x_α`, acting on generators up to `window`.
pub fn h_moves(alpha: u32, window: u32) -> Vec<Move> {
    let mut out = Vec::new();
    for i in alpha + 1..=window {
        for j in 1..=window {
            if j != i {
                out.push(Move::Transvection { i, j, sign: 1 });
                out.push(Move::Transvection { i, j, sign: -1 });
            }
        }
    }
    out.extend((alpha + 1..=window).map(Move::Inversion));
    for i in alpha + 1..=window {
        for j in i + 1..=window {
            out.push(Move::Swap(i, j));
        }
    }
    out
}

fn hash_pair(words: &[FreeWord]) -> u64 {
    let mut h = DefaultHasher::new();
    words.hash(&mut h);
    h.finish()
}

fn apply_all(m: &Move, words: &[FreeWord]) -> Vec<FreeWord> {
    words.iter().map(|w| m.apply(w)).collect()
}

/// Result of the bounded search for `h ∈ H(α)` with `h(from_i) = to_i`.
#[derive(Clone, Debug)]
pub struct OrbitSearch {
    pub moves: usize,
    pub depth_each_side: usize,
    pub explored_forward: usize,
    pub explored_backward: usize,
    /// Moves to apply in order; only set after exact verification.
    pub witness: Option<Vec<Move>>,
}

/// Meet-in-the-middle search over products of at most `2·depth` moves.
pub fn orbit_search(from: &[FreeWord], to: &[FreeWord], moves: &[Move], depth: usize) -> OrbitSearch {
    // backward layer: states reachable from `to`, with parent links
    let mut nodes: Vec<(u32, u16)> = vec![(u32::MAX, 0)];
    let mut states: Vec<Vec<FreeWord>> = vec![to.to_vec()];
    let mut index: HashMap<u64, u32> = HashMap::from([(hash_pair(to), 0)]);
    let mut frontier = vec![0u32];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &id in &frontier {
            for (mi, m) in moves.iter().enumerate() {
                let s = apply_all(m, &states[id as usize]);
                let hsh = hash_pair(&s);
                if index.contains_key(&hsh) {
                    continue;
                }
                let nid = nodes.len() as u32;
                nodes.push((id, mi as u16));
                index.insert(hsh, nid);
                states.push(s);
                next.push(nid);
            }
        }
        // states of the last layer are only needed through their hashes
        frontier = next;
    }
    let explored_backward = nodes.len();
    let backward_path = |mut id: u32| {
        // moves taking `to` to the state; we need their inverses, reversed
        let mut path = Vec::new();
        while nodes[id as usize].0 != u32::MAX {
            path.push(moves[nodes[id as usize].1 as usize].inverse());
            id = nodes[id as usize].0;
        }
        path
    };
    let mut explored_forward = 0usize;
    let mut witness = None;
    let mut stack: Vec<(Vec<FreeWord>, Vec<Move>)> = vec![(from.to_vec(), Vec::new())];
    'search: while let Some((state, path)) = stack.pop() {
        explored_forward += 1;
        if let Some(&id) = index.get(&hash_pair(&state)) {
            let mut full = path.clone();
            full.extend(backward_path(id));
            let reached = full.iter().fold(from.to_vec(), |s, m| apply_all(m, &s));
            if reached == to {
                witness = Some(full);
                break 'search;
            }
        }
        if path.len() < depth {
            for m in moves.iter().rev() {
                let mut p = path.clone();
                p.push(*m);
                stack.push((apply_all(m, &state), p));
            }
        }
    }
    OrbitSearch { moves: moves.len(), depth_each_side: depth, explored_forward, explored_backward, witness }
}

/// Builds the automorphism `m_last ∘ ⋯ ∘ m_first` from a move sequence.
pub fn moves_to_aut(moves: &[Move], n: u32) -> AutFin {
    moves.iter().fold(AutFin::identity(), |acc, m| m.as_aut(n).compose(&acc))
}

/// Outcome label of [`final_counterexample_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// A computable invariant separates the two double cosets.
    Confirmed,
    /// A verified pair `(h, k)` equates them.
    Refuted,
    /// Invariants agree and the bounded search found nothing.
    Unresolved,
}

#[derive(Clone, Debug)]
pub struct FinalCounterexampleReport {
    pub n: u32,
    pub omega: BraidWord,
    /// `artin(ω θ_N[2] ω)`.
    pub lhs: AutFin,
    /// `artin(ω) ∘ ϑ_N[2] ∘ artin(ω)`.
    pub rhs: AutFin,
    pub lhs_permutation: Option<FinPermutation>,
    pub rhs_permutation: Option<FinPermutation>,
    pub abelian_invariants_equal: bool,
    pub inverse_abelian_invariants_equal: bool,
    pub window: u32,
    pub search: OrbitSearch,
    pub verdict: Verdict,
}

impl fmt::Display for FinalCounterexampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "omega = {}, N = {}", self.omega, self.n)?;
        for i in 1..=2 {
            writeln!(f, "lhs(x{i}) = {}", self.lhs.apply(&FreeWord::generator(i)))?;
            writeln!(f, "rhs(x{i}) = {}", self.rhs.apply(&FreeWord::generator(i)))?;
        }
        let show = |p: &Option<FinPermutation>| p.as_ref().map_or("-".to_string(), |p| p.to_string());
        writeln!(f, "index permutations: {} / {}", show(&self.lhs_permutation), show(&self.rhs_permutation))?;
        writeln!(f, "abelian invariants equal: {}", self.abelian_invariants_equal)?;
        writeln!(f, "abelian invariants of inverses equal: {}", self.inverse_abelian_invariants_equal)?;
        writeln!(
            f,
            "search: {} moves on x1..x{}, depth {} per side, {} + {} states, witness: {}",
            self.search.moves,
            self.window,
            self.search.depth_each_side,
            self.search.explored_forward,
            self.search.explored_backward,
            if self.search.witness.is_some() { "found" } else { "none" }
        )?;
        let verdict = match self.verdict {
            Verdict::Confirmed => "CONFIRMED distinct by a computable invariant",
            Verdict::Refuted => "REFUTED: verified witness equates the cosets",
            Verdict::Unresolved => "UNRESOLVED: invariants agree, no witness within the search bound (evidence only)",
        };
        write!(f, "verdict: {verdict}")
    }
}

/// Compares `artin(ω θ_N[2] ω)` and `artin(ω) ϑ_N[2] artin(ω)` in
/// `H(2) \ Aut(F_∞) / H(2)` for `ω = σ_2⁻¹ σ_3 σ_1 σ_3 σ_2`.
///
/// `h ∘ L ∘ k = R` with `h, k ∈ H(2)` holds iff some `h ∈ H(2)` sends
/// `L(x_1), L(x_2)` to `R(x_1), R(x_2)` (then `k = L⁻¹ h⁻¹ R` fixes `x_1, x_2`),
/// so the search runs over that one-sided orbit.
pub fn final_counterexample_check(n: u32, depth: usize) -> Result<FinalCounterexampleReport> {
    if n < 4 {
        return Err(Error::OutOfRange("N must be at least 4".into()));
    }
    let omega: BraidWord = "s2^-1 s3 s1 s3 s2".parse().expect("valid word");
    let lhs = artin(&BraidWord::product([&omega, &theta(n, 2), &omega]));
    let a = artin(&omega);
    let rhs = a.compose(&vartheta(n, 2)).compose(&a);
    let big = lhs.endo().max_index().max(rhs.endo().max_index());
    let inv_eq = abelian_coset_invariant(lhs.endo(), 2, 2, big) == abelian_coset_invariant(rhs.endo(), 2, 2, big);
    let big_inv = lhs.inverse_endo().max_index().max(rhs.inverse_endo().max_index());
    let inv_inv_eq = abelian_coset_invariant(lhs.inverse_endo(), 2, 2, big_inv)
        == abelian_coset_invariant(rhs.inverse_endo(), 2, 2, big_inv);
    let from: Vec<FreeWord> = (1..=2).map(|i| lhs.apply(&FreeWord::generator(i))).collect();
    let to: Vec<FreeWord> = (1..=2).map(|i| rhs.apply(&FreeWord::generator(i))).collect();
    let window = from.iter().chain(&to).map(FreeWord::max_index).max().unwrap_or(2);
    let search = orbit_search(&from, &to, &h_moves(2, window), depth);
    let verdict = if !inv_eq || !inv_inv_eq {
        Verdict::Confirmed
    } else if let Some(path) = &search.witness {
        let h = moves_to_aut(path, window.max(big));
        let k = lhs.inverse().compose(&h.inverse()).compose(&rhs);
        let ok = in_h(h.endo(), 2) && in_h(k.endo(), 2) && h.compose(&lhs).compose(&k).endo() == rhs.endo();
        if !ok {
            return Err(Error::Verification("search witness failed the final check".into()));
        }
        Verdict::Refuted
    } else {
        Verdict::Unresolved
    };
    Ok(FinalCounterexampleReport {
        n,
        lhs_permutation: lhs.endo().index_permutation(),
        rhs_permutation: rhs.endo().index_permutation(),
        omega,
        lhs,
        rhs,
        abelian_invariants_equal: inv_eq,
        inverse_abelian_invariants_equal: inv_inv_eq,
        window,
        search,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym::perm_of;

    fn fw(s: &str) -> FreeWord {
        s.parse().unwrap()
    }

    fn bw(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    #[test]
    fn free_words() {
        assert_eq!(fw("x1 x2 x2^-1"), fw("x1"));
        assert_eq!(fw("x3 x2^-1 x1").to_string(), "x3 x2^-1 x1");
        assert!(fw("e").is_empty());
        assert!(FreeWord::parse("y1").is_err());
        assert!(FreeWord::parse("x0").is_err());
        assert_eq!(fw("x2 x5 x2^-1").conjugated_generator(), Some(5));
        assert_eq!(fw("x2 x5^-1 x2^-1").conjugated_generator(), None);
    }

    #[test]
    fn apply_examples() {
        let e = EndoFin::from_images(vec![fw("x1 x2")]);
        assert_eq!(e.apply(&fw("x1^-1")), fw("x2^-1 x1^-1"));
        assert_eq!(EndoFin::identity().apply(&fw("x3 x1")), fw("x3 x1"));
        assert_eq!(artin(&bw("s1")).apply(&fw("x1")), fw("x1 x2 x1^-1"));
        assert_eq!(artin(&bw("s1")).apply(&fw("x2")), fw("x1"));
    }

    #[test]
    fn homomorphism_and_relations() {
        let a = bw("s1 s2^-1 s3");
        let b = bw("s2 s1 s1 s3^-1");
        assert_eq!(artin(&a.mul(&b)).endo(), &artin(&a).endo().compose(artin(&b).endo()));
        assert_eq!(artin(&bw("s1 s2 s1")), artin(&bw("s2 s1 s2")));
        assert_eq!(artin(&bw("s1 s3")), artin(&bw("s3 s1")));
        assert_eq!(compose(artin(&bw("s1")).endo(), artin(&bw("s1^-1")).endo()), EndoFin::identity());
        let aut = artin(&a);
        AutFin::new(aut.endo().clone(), aut.inverse_endo().clone()).unwrap();
    }

    #[test]
    fn permutation_convention() {
        let w = bw("s1 s2 s2 s3 s1^-1");
        assert_eq!(artin(&w).endo().index_permutation().unwrap(), perm_of(&w).inverse());
    }

    #[test]
    fn vartheta_and_y() {
        let v = vartheta(1, 0);
        assert_eq!(v.apply(&fw("x1")), fw("x2"));
        let v = vartheta(2, 1);
        assert_eq!(
            (2..=5).map(|i| v.apply(&FreeWord::generator(i))).collect::<Vec<_>>(),
            vec![fw("x4"), fw("x5"), fw("x2"), fw("x3")]
        );
        assert_eq!(v.endo().compose(v.endo()), EndoFin::identity());
        assert_eq!(y_word(1, 0), fw("x1"));
        assert_eq!(y_word(2, 1), fw("x3 x2"));
        assert_eq!(y_word(3, 0), fw("x3 x2 x1"));
    }

    #[test]
    fn theta_formula_grid() {
        for k in 1..=4 {
            for beta in 0..=3 {
                assert!(check_theta_formula(k, beta), "k={k} beta={beta}");
            }
        }
        let base = artin_mirrored(&bw("s3"));
        assert_eq!(base.apply(&fw("x3")), fw("x3^-1 x4 x3"));
    }

    #[test]
    fn quotient_by_vartheta() {
        for k in 1..=3 {
            for beta in 0..=2 {
                let rho = theta_vartheta_quotient(k, beta);
                assert!(in_h(rho.endo(), beta + k));
                assert_eq!(rho.compose(&vartheta(k, beta)), artin(&theta(k, beta)));
            }
        }
    }

    #[test]
    fn membership_and_abelianization() {
        assert!(in_h(&EndoFin::identity(), 5));
        assert!(in_h(artin(&bw("s3 s4^-1")).endo(), 2));
        assert!(!in_h(artin(&bw("s2")).endo(), 2));
        assert!(in_h(vartheta(2, 3).endo(), 3));
        assert_eq!(abelianize(artin(&bw("s1")).endo()), vec![vec![0, 1], vec![1, 0]]);
        let a = artin(&bw("s1 s2^-1")).endo().clone();
        let b = artin(&bw("s2 s3 s1")).endo().clone();
        let n = 4;
        let prod = abelianize_to(&a.compose(&b), n);
        let (ma, mb) = (abelianize_to(&a, n), abelianize_to(&b, n));
        let mul: Vec<Vec<i64>> =
            (0..4).map(|r| (0..4).map(|c| (0..4).map(|t| ma[r][t] * mb[t][c]).sum()).collect()).collect();
        assert_eq!(prod, mul);
    }

    #[test]
    fn hermite_form() {
        assert_eq!(hermite(&[vec![2, 4], vec![3, 6]]), vec![vec![1, 2]]);
        assert_eq!(hermite(&[vec![0, 3], vec![2, 1]]), vec![vec![2, 1], vec![0, 3]]);
        assert_eq!(reduce_mod(&[5, 7], &hermite(&[vec![2, 1], vec![0, 3]])), vec![1, 2]);
    }

    #[test]
    fn endo_text_format() {
        let e: EndoFin = "x1 -> x1 x2 x1^-1\nx2 -> x1\n".parse().unwrap();
        assert_eq!(e, *artin(&bw("s1")).endo());
        assert_eq!(e.to_string().parse::<EndoFin>().unwrap(), e);
        assert!("x1 = x2".parse::<EndoFin>().is_err());
    }

    #[test]
    fn orbit_search_finds_short_witness() {
        let from = vec![fw("x1"), fw("x2 x3")];
        let target = Move::Transvection { i: 3, j: 1, sign: 1 };
        let to: Vec<FreeWord> = from.iter().map(|w| target.apply(w)).collect();
        let r = orbit_search(&from, &to, &h_moves(2, 3), 1);
        assert!(r.witness.is_some());
    }
}
