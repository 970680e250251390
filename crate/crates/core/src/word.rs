//! Braid words over the Artin generators `σ_1, σ_2, …` of the infinite braid
//! group, kept freely reduced at all times.
//!
//! Nothing here applies braid relations; deciding equality of braids is the
//! job of [`crate::garside`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A generator `σ_i` or its inverse. Indices are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    pub fn new(index: u32, positive: bool) -> Self {
        assert!(index >= 1, "braid generator indices start at 1");
        let i = i32::try_from(index).expect("generator index overflows i32");
        Letter(if positive { i } else { -i })
    }

    pub fn sigma(index: u32) -> Self {
        Letter::new(index, true)
    }

    pub fn sigma_inv(index: u32) -> Self {
        Letter::new(index, false)
    }

    pub fn index(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        i64::from(self.0.signum())
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    pub fn shifted(self, by: u32) -> Self {
        Letter::new(self.index() + by, self.is_positive())
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "s{}", self.index())
        } else {
            write!(f, "s{}^-1", self.index())
        }
    }
}

/// A freely reduced word in the braid generators.
///
/// Printed and parsed in the whitespace-separated `s2^-1 s3 s1` format; the
/// empty word prints as `e`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidWord(Vec<Letter>);

impl BraidWord {
    pub fn identity() -> Self {
        BraidWord(Vec::new())
    }

    /// Builds a word from arbitrary letters, cancelling adjacent inverse pairs.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord(out)
    }

    /// Convenience constructor from signed indices: `2` is `σ_2`, `-2` is `σ_2⁻¹`.
    pub fn from_signed(indices: &[i32]) -> Self {
        Self::from_letters(indices.iter().map(|&i| {
            assert!(i != 0, "generator index 0 is not allowed");
            Letter::new(i.unsigned_abs(), i > 0)
        }))
    }

    pub fn sigma(index: u32) -> Self {
        BraidWord(vec![Letter::sigma(index)])
    }

    pub fn sigma_inv(index: u32) -> Self {
        BraidWord(vec![Letter::sigma_inv(index)])
    }

    /// Positive word `σ_{i_1} σ_{i_2} ⋯`.
    pub fn positive<I: IntoIterator<Item = u32>>(indices: I) -> Self {
        Self::from_letters(indices.into_iter().map(Letter::sigma))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &BraidWord) -> BraidWord {
        Self::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Product of several words, left to right.
    pub fn product<'a, I: IntoIterator<Item = &'a BraidWord>>(words: I) -> BraidWord {
        Self::from_letters(words.into_iter().flat_map(|w| w.0.iter().copied()))
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, e: i64) -> BraidWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let reps = usize::try_from(e.unsigned_abs()).expect("exponent too large");
        Self::from_letters(std::iter::repeat_n(base.0.iter().copied(), reps).flatten())
    }

    /// Reversed word; an anti-automorphism of the braid group that preserves
    /// every subgroup generated by a set of `σ_i`.
    pub fn reversed(&self) -> BraidWord {
        BraidWord(self.0.iter().rev().copied().collect())
    }

    pub fn exponent_sum(&self) -> i64 {
        self.0.iter().map(|l| l.sign()).sum()
    }

    /// Largest generator index occurring in the word, `0` for the identity.
    pub fn max_index(&self) -> u32 {
        self.0.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    /// Smallest generator index occurring in the word, `None` for the identity.
    pub fn min_index(&self) -> Option<u32> {
        self.0.iter().map(|l| l.index()).min()
    }

    /// Whether the word lies in the subgroup generated by `σ_j`, `j > alpha`.
    pub fn avoids_first(&self, alpha: u32) -> bool {
        self.min_index().is_none_or(|m| m > alpha)
    }

    /// Whether every letter has index in `lo..=hi`.
    pub fn within(&self, lo: u32, hi: u32) -> bool {
        self.0.iter().all(|l| (lo..=hi).contains(&l.index()))
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BraidWord({self})")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

/// Parses the `s<k>` / `s<k>^-1` token format. The tokens `e` and `1` (and
/// the empty string) denote the identity.
pub fn parse_word(text: &str) -> Result<BraidWord> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut letters = Vec::new();
    while pos < bytes.len() {
        let c = bytes[pos];
        if c.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        match c {
            b'e' | b'1' => {
                let end = pos + 1;
                if end < bytes.len() && !bytes[end].is_ascii_whitespace() {
                    return Err(Error::parse(end, "identity token must stand alone"));
                }
                pos = end;
            }
            b's' => {
                let start = pos + 1;
                let mut end = start;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                if end == start {
                    return Err(Error::parse(start, "expected generator index after 's'"));
                }
                let index: u32 =
                    text[start..end].parse().map_err(|_| Error::parse(start, "generator index too large"))?;
                if index == 0 {
                    return Err(Error::parse(start, "generator index 0 is not allowed"));
                }
                let mut positive = true;
                if bytes[end..].starts_with(b"^-1") {
                    positive = false;
                    end += 3;
                } else if end < bytes.len() && bytes[end] == b'^' {
                    return Err(Error::parse(end, "only the exponent ^-1 is supported"));
                }
                letters.push(Letter::new(index, positive));
                pos = end;
            }
            _ => {
                return Err(Error::parse(pos, format!("unexpected character {:?}", c as char)));
            }
        }
    }
    Ok(BraidWord::from_letters(letters))
}

/// Cancels adjacent inverse pairs.
pub fn free_reduce(letters: &[Letter]) -> BraidWord {
    BraidWord::from_letters(letters.iter().copied())
}

/// Upper bound for the support of a braid: the largest generator index of
/// the freely reduced word. Products computed with it agree with products
/// computed with the exact support because the coset sequence is constant
/// past the exact threshold.
pub fn support_upper(w: &BraidWord) -> u32 {
    w.max_index()
}

/// The shift endomorphism `σ_j ↦ σ_{m+j}`.
pub fn shift(m: u32, w: &BraidWord) -> BraidWord {
    BraidWord(w.0.iter().map(|l| l.shifted(m)).collect())
}

/// Inverse of [`shift`] on words whose letters all have index `> m`.
pub fn unshift(m: u32, w: &BraidWord) -> Result<BraidWord> {
    if !w.avoids_first(m) {
        return Err(Error::Support(format!("cannot unshift {w} by {m}")));
    }
    Ok(BraidWord(w.0.iter().map(|l| Letter::new(l.index() - m, l.is_positive())).collect()))
}

/// `τ_i^{(n)} = σ_{n+β+i} σ_{n+β+i−1} ⋯ σ_{β+i+1}` for `0 ≤ i ≤ n−1`.
pub fn tau(i: u32, n: u32, beta: u32) -> Result<BraidWord> {
    if n == 0 || i >= n {
        return Err(Error::OutOfRange(format!("tau needs 0 <= i < n, got i={i}, n={n}")));
    }
    Ok(BraidWord::positive((beta + i + 1..=n + beta + i).rev()))
}

/// `θ_n[β] = τ_0^{(n)} τ_1^{(n)} ⋯ τ_{n−1}^{(n)}`, a positive word of length
/// `n²` with letters in `β+1 ..= 2n+β−1`. `θ_0[β]` is the identity.
pub fn theta(n: u32, beta: u32) -> BraidWord {
    BraidWord::positive((0..n).flat_map(|i| (beta + i + 1..=n + beta + i).rev()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    #[test]
    fn parse_basic() {
        assert_eq!(w("s2 s1").letters(), &[Letter::sigma(2), Letter::sigma(1)]);
        assert!(w("s1 s1^-1").is_empty());
        let omega = w("s2^-1 s3 s1 s3 s2");
        assert_eq!(omega.len(), 5);
        assert_eq!(omega.to_string(), "s2^-1 s3 s1 s3 s2");
        assert_eq!(w("e"), BraidWord::identity());
        assert_eq!(w(""), BraidWord::identity());
        assert_eq!(w("s1s2"), BraidWord::positive([1, 2]));
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_word("s1 s0") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        match parse_word("s1 x2") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_word("s").is_err());
        assert!(parse_word("s2^2").is_err());
    }

    #[test]
    fn free_reduction() {
        assert!(free_reduce(&[Letter::sigma(1), Letter::sigma_inv(1)]).is_empty());
        assert!(free_reduce(&[]).is_empty());
        let r = free_reduce(&[Letter::sigma(2), Letter::sigma(3), Letter::sigma_inv(3), Letter::sigma(2)]);
        assert_eq!(r, BraidWord::positive([2, 2]));
        // cascading cancellation
        assert!(BraidWord::from_signed(&[1, 2, -2, -1]).is_empty());
    }

    #[test]
    fn supports() {
        assert_eq!(support_upper(&BraidWord::identity()), 0);
        assert_eq!(support_upper(&theta(5, 3)), 12);
        assert_eq!(support_upper(&BraidWord::positive([2, 2])), 2);
    }

    #[test]
    fn shifting() {
        assert_eq!(shift(3, &BraidWord::sigma(1)), BraidWord::sigma(4));
        let x = w("s1 s2^-1 s4");
        assert_eq!(shift(0, &x), x);
        assert_eq!(shift(2, &shift(3, &x)), shift(5, &x));
        assert_eq!(unshift(5, &shift(5, &x)).unwrap(), x);
        assert!(unshift(2, &x).is_err());
    }

    #[test]
    fn tau_and_theta() {
        assert_eq!(tau(0, 1, 0).unwrap(), BraidWord::sigma(1));
        assert_eq!(tau(2, 5, 3).unwrap(), BraidWord::positive([10, 9, 8, 7, 6]));
        assert_eq!(tau(1, 2, 0).unwrap(), BraidWord::positive([3, 2]));
        assert!(tau(2, 2, 0).is_err());
        assert_eq!(theta(1, 4), BraidWord::sigma(5));
        assert_eq!(theta(2, 0), BraidWord::positive([2, 1, 3, 2]));
        assert_eq!(theta(4, 1).len(), 16);
    }

    #[test]
    fn theta_shift_and_support() {
        for n in 1..6 {
            for beta in 0..5 {
                assert_eq!(theta(n, beta), shift(beta, &theta(n, 0)));
                assert_eq!(support_upper(&theta(n, beta)), 2 * n + beta - 1);
                assert_eq!(theta(n, beta).min_index(), Some(beta + 1));
            }
        }
    }

    #[test]
    fn tau_step_one_identity() {
        for m in 1..6 {
            for beta in 0..4 {
                for i in 0..m {
                    let lhs = tau(i, m + 1, beta).unwrap();
                    let rhs = BraidWord::sigma(m + beta + 1 + i).mul(&tau(i, m, beta).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn word_algebra() {
        let x = w("s1 s2^-1 s3");
        assert!(x.mul(&x.inverse()).is_empty());
        assert_eq!(x.pow(2), x.mul(&x));
        assert_eq!(x.pow(-1), x.inverse());
        assert_eq!(x.exponent_sum(), 1);
        assert_eq!(w("s2^-1 s3 s1 s3 s2").exponent_sum(), 3);
        assert!(w("s3 s4").avoids_first(2));
        assert!(!w("s3 s2").avoids_first(2));
    }
}
