use std::fmt;

use crate::error::{Error, Result};
use crate::garside::braid_equal;
use crate::word::{parse_word, shift, support_upper, theta, BraidWord};

/// A verified statement `h · lhs · k = rhs` with `h ∈ B_∞[α]`, `k ∈ B_∞[γ]`,
/// proving that `lhs` and `rhs` represent the same double coset
/// `B_∞[α] \ B_∞ / B_∞[γ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityCertificate {
    h: BraidWord,
    k: BraidWord,
    lhs: BraidWord,
    rhs: BraidWord,
    alpha: u32,
    gamma: u32,
}

impl EqualityCertificate {
    /// Checks the support conditions and the braid identity.
    pub fn new(h: BraidWord, lhs: BraidWord, k: BraidWord, rhs: BraidWord, alpha: u32, gamma: u32) -> Result<Self> {
        if !h.avoids_first(alpha) {
            return Err(Error::Support(format!("left witness {h} is not in B[{alpha}]")));
        }
        if !k.avoids_first(gamma) {
            return Err(Error::Support(format!("right witness {k} is not in B[{gamma}]")));
        }
        if !braid_equal(&BraidWord::product([&h, &lhs, &k]), &rhs) {
            return Err(Error::Verification(format!("({h})·({lhs})·({k}) differs from {rhs}")));
        }
        Ok(EqualityCertificate { h, k, lhs, rhs, alpha, gamma })
    }

    /// A plain braid identity `lhs = rhs`, with trivial witnesses.
    pub fn equality(lhs: BraidWord, rhs: BraidWord, alpha: u32, gamma: u32) -> Result<Self> {
        Self::new(BraidWord::identity(), lhs, BraidWord::identity(), rhs, alpha, gamma)
    }

    pub fn reflexive(w: BraidWord, alpha: u32, gamma: u32) -> Self {
        EqualityCertificate { h: BraidWord::identity(), k: BraidWord::identity(), lhs: w.clone(), rhs: w, alpha, gamma }
    }

    pub fn h(&self) -> &BraidWord {
        &self.h
    }

    pub fn k(&self) -> &BraidWord {
        &self.k
    }

    pub fn lhs(&self) -> &BraidWord {
        &self.lhs
    }

    pub fn rhs(&self) -> &BraidWord {
        &self.rhs
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn gamma(&self) -> u32 {
        self.gamma
    }

    /// Re-runs every check.
    pub fn verify(&self) -> Result<()> {
        Self::new(self.h.clone(), self.lhs.clone(), self.k.clone(), self.rhs.clone(), self.alpha, self.gamma)
            .map(|_| ())
    }

    /// The certificate `rhs ≡ lhs`.
    pub fn inverse(&self) -> Self {
        EqualityCertificate {
            h: self.h.inverse(),
            k: self.k.inverse(),
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
            alpha: self.alpha,
            gamma: self.gamma,
        }
    }

    /// Chains `a ≡ b` with `b ≡ c` into `a ≡ c`.
    pub fn then(&self, next: &EqualityCertificate) -> Result<Self> {
        if self.alpha != next.alpha || self.gamma != next.gamma {
            return Err(Error::IndexMismatch { left: self.alpha, right: next.alpha });
        }
        if !braid_equal(&self.rhs, &next.lhs) {
            return Err(Error::Verification(format!("cannot chain: {} differs from {}", self.rhs, next.lhs)));
        }
        Self::new(next.h.mul(&self.h), self.lhs.clone(), self.k.mul(&next.k), next.rhs.clone(), self.alpha, self.gamma)
    }

    /// Reverses every word: `rev(k)·rev(lhs)·rev(h) = rev(rhs)`, so the
    /// witnesses and the two subgroup indices trade places.
    pub fn reversed(&self) -> Self {
        EqualityCertificate {
            h: self.k.reversed(),
            k: self.h.reversed(),
            lhs: self.lhs.reversed(),
            rhs: self.rhs.reversed(),
            alpha: self.gamma,
            gamma: self.alpha,
        }
    }

    /// Applies the shift `C_m` to every word and raises both indices by `m`.
    pub fn shifted(&self, m: u32) -> Self {
        EqualityCertificate {
            h: shift(m, &self.h),
            k: shift(m, &self.k),
            lhs: shift(m, &self.lhs),
            rhs: shift(m, &self.rhs),
            alpha: self.alpha + m,
            gamma: self.gamma + m,
        }
    }

    /// Inverse of [`shifted`](Self::shifted); fails if some word uses a
    /// generator `σ_i` with `i ≤ m` or an index is below `m`.
    pub fn unshifted(&self, m: u32) -> Result<Self> {
        use crate::word::unshift;
        if self.alpha < m || self.gamma < m {
            return Err(Error::Support(format!("indices ({}, {}) are below {m}", self.alpha, self.gamma)));
        }
        Ok(EqualityCertificate {
            h: unshift(m, &self.h)?,
            k: unshift(m, &self.k)?,
            lhs: unshift(m, &self.lhs)?,
            rhs: unshift(m, &self.rhs)?,
            alpha: self.alpha - m,
            gamma: self.gamma - m,
        })
    }

    /// One transcript line: `α γ | h | lhs | k | rhs`.
    pub fn to_line(&self) -> String {
        format!("{} {} | {} | {} | {} | {}", self.alpha, self.gamma, self.h, self.lhs, self.k, self.rhs)
    }

    /// Parses and verifies one transcript line.
    pub fn from_line(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.split('|').collect();
        if fields.len() != 5 {
            return Err(Error::parse(0, "expected 'alpha gamma | h | lhs | k | rhs'"));
        }
        let idx: Vec<&str> = fields[0].split_whitespace().collect();
        if idx.len() != 2 {
            return Err(Error::parse(0, "expected two subgroup indices"));
        }
        let num = |s: &str| s.parse::<u32>().map_err(|_| Error::parse(0, format!("bad index '{s}'")));
        let mut offset = fields[0].len() + 1;
        let mut words = Vec::with_capacity(4);
        for f in &fields[1..] {
            let w = parse_word(f).map_err(|e| match e {
                Error::Parse { position, message } => Error::Parse { position: position + offset, message },
                other => other,
            })?;
            words.push(w);
            offset += f.len() + 1;
        }
        let mut it = words.into_iter();
        let (h, lhs, k, rhs) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
        Self::new(h, lhs, k, rhs, num(idx[0])?, num(idx[1])?)
    }
}

impl fmt::Display for EqualityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_line())
    }
}

/// A sequence of certificates, each starting where the previous one ended.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Transcript {
    steps: Vec<EqualityCertificate>,
}

impl Transcript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, step: EqualityCertificate) -> Result<()> {
        if let Some(last) = self.steps.last() {
            if last.alpha != step.alpha || last.gamma != step.gamma {
                return Err(Error::IndexMismatch { left: last.alpha, right: step.alpha });
            }
            if !braid_equal(&last.rhs, &step.lhs) {
                return Err(Error::Verification(format!("step does not continue from {}", last.rhs)));
            }
        }
        self.steps.push(step);
        Ok(())
    }

    pub fn steps(&self) -> &[EqualityCertificate] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The composite certificate from the first left side to the last right
    /// side.
    pub fn compose(&self) -> Result<EqualityCertificate> {
        let (first, rest) = self.steps.split_first().ok_or_else(|| Error::Invalid("empty transcript".into()))?;
        rest.iter().try_fold(first.clone(), |acc, s| acc.then(s))
    }

    pub fn to_text(&self) -> String {
        self.steps.iter().map(|s| s.to_line() + "\n").collect()
    }

    /// Parses and re-verifies a transcript; blank lines and lines starting
    /// with `#` are ignored. Errors name the offending line (1-based).
    pub fn replay(text: &str) -> Result<Self> {
        let mut t = Transcript::new();
        for (no, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let step = EqualityCertificate::from_line(trimmed).map_err(|e| match e {
                Error::Parse { position, message } => {
                    Error::Parse { position, message: format!("line {}: {message}", no + 1) }
                }
                Error::Verification(m) => Error::Verification(format!("line {}: {m}", no + 1)),
                Error::Support(m) => Error::Support(format!("line {}: {m}", no + 1)),
                other => other,
            })?;
            t.push(step)?;
        }
        Ok(t)
    }
}

/// The words `(u, ℓ)` with `θ_m[β] = u · θ_{m+1}[β] · ℓ`:
/// `u = (σ_{m+β+1} ⋯ σ_{2m+β})⁻¹` and `ℓ = (τ_m^{(m+1)})⁻¹`.
pub fn step3_words(m: u32, beta: u32) -> (BraidWord, BraidWord) {
    let u = BraidWord::positive(m + beta + 1..=2 * m + beta).inverse();
    let l = crate::word::tau(m, m + 1, beta).expect("m is within range for m + 1 strands").inverse();
    (u, l)
}

/// Returns the θ-shrinking words after checking the identity and that both lie
/// in `B_∞[m+β]` and use generators below `2m+β+2`.
pub fn step3_certificate(m: u32, beta: u32) -> Result<(BraidWord, BraidWord)> {
    let (u, l) = step3_words(m, beta);
    if !braid_equal(&BraidWord::product([&u, &theta(m + 1, beta), &l]), &theta(m, beta)) {
        return Err(Error::Verification(format!("theta-shrinking identity fails for m={m}, beta={beta}")));
    }
    for w in [&u, &l] {
        if !w.within(m + beta + 1, 2 * m + beta + 1) {
            return Err(Error::Verification(format!("{w} leaves the range ({}, {}]", m + beta, 2 * m + beta + 1)));
        }
    }
    Ok((u, l))
}

/// Left or right form of the comb identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `d · θ_j[β] = θ_j[β] · C_j(d)`.
    Left,
    /// `θ_j[β] · d = C_j(d) · θ_j[β]`.
    Right,
}

/// Verifies the comb identity for `d ∈ ⟨σ_{β+1}, …, σ_{β+j−1}⟩`.
pub fn comb_certificate(d: &BraidWord, j: u32, beta: u32, side: Side) -> Result<EqualityCertificate> {
    if j == 0 || (!d.is_empty() && !d.within(beta + 1, beta + j - 1)) {
        return Err(Error::Support(format!("{d} is not in <s{}, ..., s{}>", beta + 1, (beta + j).saturating_sub(1))));
    }
    let th = theta(j, beta);
    let moved = shift(j, d);
    let (lhs, rhs) = match side {
        Side::Left => (d.mul(&th), th.mul(&moved)),
        Side::Right => (th.mul(d), moved.mul(&th)),
    };
    EqualityCertificate::equality(lhs, rhs, 0, 0)
}

/// For `h, k ∈ B_∞[β]`, proves `p·h·θ_j[β]·k·q ≡ p·θ_j[β]·q` in
/// `B_∞[α] \ B_∞ / B_∞[γ]` with left witness `C_j(k⁻¹)` and right witness
/// `C_j(h⁻¹)`. Requires `j ≥ max(supports, α, γ) + 1`.
#[allow(clippy::too_many_arguments)]
pub fn independence_certificate(
    p: &BraidWord,
    h: &BraidWord,
    k: &BraidWord,
    q: &BraidWord,
    j: u32,
    alpha: u32,
    beta: u32,
    gamma: u32,
) -> Result<EqualityCertificate> {
    for (name, w) in [("h", h), ("k", k)] {
        if !w.avoids_first(beta) {
            return Err(Error::Support(format!("{name} = {w} is not in B[{beta}]")));
        }
    }
    let threshold = [p, q, h, k].iter().map(|w| support_upper(w)).max().unwrap().max(alpha).max(gamma) + 1;
    if j < threshold {
        return Err(Error::Support(format!("j = {j} is below the threshold {threshold}")));
    }
    let th = theta(j, beta);
    let lhs = BraidWord::product([p, h, &th, k, q]);
    let rhs = BraidWord::product([p, &th, q]);
    EqualityCertificate::new(shift(j, &k.inverse()), lhs, shift(j, &h.inverse()), rhs, alpha, gamma)
}

/// Proves `p·θ_from[β]·q ≡ p·θ_to[β]·q` for `from, to ≥ max(supports, α, γ) + 1`
/// by chaining θ-shrinking identities.
pub fn stabilization_certificate(
    p: &BraidWord,
    q: &BraidWord,
    alpha: u32,
    beta: u32,
    gamma: u32,
    from: u32,
    to: u32,
) -> Result<EqualityCertificate> {
    let threshold = support_upper(p).max(support_upper(q)).max(alpha).max(gamma) + 1;
    if from.min(to) < threshold {
        return Err(Error::Support(format!("index {} is below the threshold {threshold}", from.min(to))));
    }
    let rep = |n: u32| BraidWord::product([p, &theta(n, beta), q]);
    let (lo, hi) = (from.min(to), from.max(to));
    // climbing from `hi` down to `lo`: u·(p θ_{m+1} q)·ℓ = p θ_m q
    let mut cert = EqualityCertificate::reflexive(rep(hi), alpha, gamma);
    for m in (lo..hi).rev() {
        let (u, l) = step3_certificate(m, beta)?;
        let step = EqualityCertificate::new(u, rep(m + 1), l, rep(m), alpha, gamma)?;
        cert = cert.then(&step)?;
    }
    Ok(if from >= to { cert } else { cert.inverse() })
}
