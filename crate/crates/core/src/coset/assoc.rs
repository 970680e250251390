use super::certificate::{EqualityCertificate, Transcript};
use crate::error::{Error, Result};
use crate::garside::braid_equal;
use crate::grid::{IndexGrid, Order};
use crate::word::{shift, support_upper, theta, BraidWord};

/// Certificates that `a·θ_k[β]·b·θ_l[γ]·c` (the representative of
/// `(𝔞∘𝔟)∘𝔠`) and `a·θ_{l′}[β]·b·θ_k[γ]·c` (that of `𝔞∘(𝔟∘𝔠)`) lie in the same
/// double coset `B_∞[α] \ B_∞ / B_∞[δ]`. Both transcripts end at the same
/// word.
#[derive(Clone, Debug)]
pub struct AssociativityCertificate {
    pub k: u32,
    pub l: u32,
    pub l_prime: u32,
    /// From `a·θ_k[β]·b·θ_l[γ]·c` to the common word.
    pub lhs: Transcript,
    /// From `a·θ_{l′}[β]·b·θ_k[γ]·c` to the common word.
    pub rhs: Transcript,
    /// Whether the construction ran on reversed words (`γ < β`).
    pub mirrored: bool,
    /// Whether the construction ran one strand to the right (`β = 0` or `γ = 0`).
    pub shifted: bool,
}

impl AssociativityCertificate {
    pub fn lhs_certificate(&self) -> Result<EqualityCertificate> {
        self.lhs.compose()
    }

    pub fn rhs_certificate(&self) -> Result<EqualityCertificate> {
        self.rhs.compose()
    }

    /// The certificate from the left representative to the right one.
    pub fn joined(&self) -> Result<EqualityCertificate> {
        self.lhs_certificate()?.then(&self.rhs_certificate()?.inverse())
    }

    pub fn common_word(&self) -> &BraidWord {
        self.lhs.steps().last().expect("non-empty transcript").rhs()
    }
}

fn bracket(tl: u32, tr: u32, bl: u32, br: u32) -> Result<BraidWord> {
    Ok(IndexGrid::bracket(tl as i64, tr as i64, bl as i64, br as i64)?.word(Order::RowWise))
}

fn default_k(words: [&BraidWord; 3], idx: [u32; 4]) -> u32 {
    let s = words.iter().map(|w| support_upper(w)).max().unwrap();
    s.max(idx.into_iter().max().unwrap()) + 1
}

/// Builds the certificates with the default `k = max(α, β, γ, δ, supports) + 1`.
#[allow(clippy::too_many_arguments)]
pub fn associativity_certificate(
    a: &BraidWord,
    b: &BraidWord,
    c: &BraidWord,
    alpha: u32,
    beta: u32,
    gamma: u32,
    delta: u32,
) -> Result<AssociativityCertificate> {
    let k = default_k([a, b, c], [alpha, beta, gamma, delta]);
    associativity_certificate_with(a, b, c, alpha, beta, gamma, delta, k)
}

/// Same as [`associativity_certificate`] for an explicit `k` at least the
/// default one. When `β` or `γ` is zero the construction runs on the
/// shifted words, which raises `k` by one.
#[allow(clippy::too_many_arguments)]
pub fn associativity_certificate_with(
    a: &BraidWord,
    b: &BraidWord,
    c: &BraidWord,
    alpha: u32,
    beta: u32,
    gamma: u32,
    delta: u32,
    k: u32,
) -> Result<AssociativityCertificate> {
    let min_k = default_k([a, b, c], [alpha, beta, gamma, delta]);
    if k < min_k {
        return Err(Error::Support(format!("k = {k} is below {min_k}")));
    }
    if beta == 0 || gamma == 0 {
        let inner = associativity_certificate_with(
            &shift(1, a),
            &shift(1, b),
            &shift(1, c),
            alpha + 1,
            beta + 1,
            gamma + 1,
            delta + 1,
            k + 1,
        )?;
        let unshift_all = |t: &Transcript| -> Result<Transcript> {
            let mut out = Transcript::new();
            for s in t.steps() {
                out.push(s.unshifted(1)?)?;
            }
            Ok(out)
        };
        return Ok(AssociativityCertificate {
            lhs: unshift_all(&inner.lhs)?,
            rhs: unshift_all(&inner.rhs)?,
            shifted: true,
            ..inner
        });
    }
    if gamma < beta {
        let (ra, rb, rc) = (c.reversed(), b.reversed(), a.reversed());
        let inner = associativity_certificate_with(&ra, &rb, &rc, delta, gamma, beta, alpha, k)?;
        // reversing the inner right side gives our left side and vice versa
        let lhs_start = BraidWord::product([a, &theta(k, beta), b, &theta(inner.l_prime, gamma), c]);
        let rhs_start = BraidWord::product([a, &theta(inner.l, beta), b, &theta(k, gamma), c]);
        return Ok(AssociativityCertificate {
            k,
            l: inner.l_prime,
            l_prime: inner.l,
            lhs: reverse_transcript(&inner.rhs, lhs_start)?,
            rhs: reverse_transcript(&inner.lhs, rhs_start)?,
            mirrored: true,
            shifted: inner.shifted,
        });
    }
    core(a, b, c, alpha, beta, gamma, delta, k)
}

/// Reverses every step and prepends the spelling change to `start`.
fn reverse_transcript(t: &Transcript, start: BraidWord) -> Result<Transcript> {
    let first = t.steps().first().ok_or_else(|| Error::Invalid("empty transcript".into()))?.reversed();
    let mut out = Transcript::new();
    if start != *first.lhs() {
        out.push(EqualityCertificate::equality(start, first.lhs().clone(), first.alpha(), first.gamma())?)?;
    }
    for s in t.steps() {
        out.push(s.reversed())?;
    }
    Ok(out)
}

/// The grid construction for `1 ≤ β ≤ γ`.
#[allow(clippy::too_many_arguments)]
fn core(
    a: &BraidWord,
    b: &BraidWord,
    c: &BraidWord,
    alpha: u32,
    beta: u32,
    gamma: u32,
    delta: u32,
    k: u32,
) -> Result<AssociativityCertificate> {
    debug_assert!(1 <= beta && beta <= gamma);
    let (l, l_prime) = (2 * k + beta, 2 * k + gamma);
    let p = bracket(k + 1, beta + 1, 2 * k, k + beta)?;
    let r1 = bracket(k + beta, k + 2, 2 * k + beta - 1, 2 * k + 1)?;
    let p2 = bracket(k + 1, beta + 1, 3 * k + gamma, 2 * k + beta + gamma)?;
    let r2 = bracket(2 * k + beta + gamma, k + 2, 4 * k + 2 * gamma + beta - 1, 3 * k + gamma + 1)?;
    let p3 = bracket(k + gamma, gamma + 1, 2 * k, k + 1)?;
    let r3 = bracket(2 * k + 1, k + 2, 2 * k + gamma - 1, k + gamma)?;
    let p4 = bracket(2 * k + beta + gamma, gamma + 1, 3 * k + beta, k + 1)?;
    let r4 = bracket(3 * k + beta + 1, k + 2, 4 * k + 2 * beta + gamma - 1, 2 * k + beta + gamma)?;
    let r5 = bracket(2 * k + beta + gamma, 2 * k + 2, 3 * k + beta, 3 * k - gamma + 2)?;
    let w = bracket(2 * k + 1, gamma + 1, 3 * k - gamma + 1, k + 1)?;
    let e = bracket(2 * k + 1, k + beta + 1, 2 * k - beta + gamma, k + gamma)?;
    let ll = bracket(2 * k - beta + gamma + 1, k + gamma + 1, 3 * k + gamma, 2 * k + beta + gamma)?;
    let cc = bracket(2 * k + gamma - beta + 1, k + gamma + 1, 3 * k - beta + 1, 2 * k + 1)?;
    let d = bracket(3 * k - beta + 2, 2 * k + 2, 3 * k + gamma, 2 * k + beta + gamma)?;
    let aa = bracket(2 * k + gamma - beta + 1, 2 * k + 2, 3 * k - beta + 1, 3 * k - gamma + 2)?;
    let wt = bracket(3 * k - beta + 2, k + 2, 4 * k - 2 * beta + gamma + 1, 2 * k - beta + gamma + 1)?;
    let r = 2 * k - beta + 1;
    let theta_r = theta(r, gamma);

    let one = BraidWord::identity;
    let word = |parts: &[&BraidWord]| BraidWord::product(parts.iter().copied());
    let step = |h: BraidWord, lhs: &BraidWord, kk: BraidWord, rhs: &BraidWord| {
        EqualityCertificate::new(h, lhs.clone(), kk, rhs.clone(), alpha, delta)
    };

    // sanity checks on the factorizations the steps rely on
    for (name, lhs, rhs) in [
        ("theta_k[beta] = R1 P", theta(k, beta), word(&[&r1, &p])),
        ("theta_l'[beta] = R2 P2", theta(l_prime, beta), word(&[&r2, &p2])),
        ("theta_k[gamma] = P3 R3", theta(k, gamma), word(&[&p3, &r3])),
        ("theta_l[gamma] = P4 R4", theta(l, gamma), word(&[&p4, &r4])),
        ("P4 = R5 W", p4.clone(), word(&[&r5, &w])),
        ("P2 = P E L", p2.clone(), word(&[&p, &e, &ll])),
        ("L = C D", ll.clone(), word(&[&cc, &d])),
        ("C P3 = A W", word(&[&cc, &p3]), word(&[&aa, &w])),
        ("A W W~ = theta_r[gamma]", word(&[&aa, &w, &wt]), theta_r.clone()),
    ] {
        if !braid_equal(&lhs, &rhs) {
            return Err(Error::Verification(format!("factorization {name} fails for k={k}")));
        }
    }

    let mut lhs = Transcript::new();
    let x0 = word(&[a, &theta(k, beta), b, &theta(l, gamma), c]);
    let x1 = word(&[a, &p, b, &p4, c]);
    let x2 = word(&[a, &p, b, &w, c]);
    lhs.push(step(r1.inverse(), &x0, r4.inverse(), &x1)?)?;
    lhs.push(step(r5.inverse(), &x1, one(), &x2)?)?;

    let mut rhs = Transcript::new();
    let y0 = word(&[a, &theta(l_prime, beta), b, &theta(k, gamma), c]);
    let y1 = word(&[a, &p2, b, &p3, c]);
    let y2 = word(&[a, &p, b, &e, &ll, &p3, c]);
    let y3 = word(&[a, &p, b, &e, &cc, &p3, c]);
    let y4 = word(&[a, &p, b, &e, &aa, &w, c]);
    let y5 = word(&[a, &p, b, &e, &theta_r, c]);
    let y6 = word(&[a, &p, b, &theta_r, c]);
    let y7 = word(&[a, &p, b, &aa, &w, c]);
    rhs.push(step(r2.inverse(), &y0, r3.inverse(), &y1)?)?;
    rhs.push(step(one(), &y1, one(), &y2)?)?;
    rhs.push(step(one(), &y2, d.inverse(), &y3)?)?;
    rhs.push(step(one(), &y3, one(), &y4)?)?;
    rhs.push(step(one(), &y4, wt.clone(), &y5)?)?;
    rhs.push(step(one(), &y5, shift(r, &e).inverse(), &y6)?)?;
    rhs.push(step(one(), &y6, wt.inverse(), &y7)?)?;
    rhs.push(step(aa.inverse(), &y7, one(), &x2)?)?;

    Ok(AssociativityCertificate { k, l, l_prime, lhs, rhs, mirrored: false, shifted: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    fn check(cert: &AssociativityCertificate) {
        let l = cert.lhs_certificate().unwrap();
        let r = cert.rhs_certificate().unwrap();
        assert!(braid_equal(l.rhs(), r.rhs()));
        cert.joined().unwrap().verify().unwrap();
    }

    #[test]
    fn reference_example() {
        let cert = associativity_certificate(&w("s2^-1 s1^-1"), &w("s1 s1"), &w("s1 s1 s2 s2"), 3, 1, 2, 3).unwrap();
        assert_eq!((cert.k, cert.l, cert.l_prime), (4, 9, 10));
        assert!(!cert.mirrored && !cert.shifted);
        check(&cert);
    }

    #[test]
    fn trivial_words() {
        let e = BraidWord::identity();
        let cert = associativity_certificate(&e, &e, &e, 0, 0, 0, 0).unwrap();
        assert!(cert.shifted);
        check(&cert);
    }

    #[test]
    fn mirrored_branch() {
        let cert = associativity_certificate(&w("s1 s2"), &w("s3^-1"), &w("s2"), 1, 3, 1, 2).unwrap();
        assert!(cert.mirrored);
        check(&cert);
    }

    #[test]
    fn larger_k() {
        let cert = associativity_certificate_with(&w("s1"), &w("s2"), &w("s1^-1"), 1, 1, 2, 1, 5).unwrap();
        check(&cert);
        assert!(associativity_certificate_with(&w("s1"), &w("s2"), &w("s1"), 1, 1, 2, 1, 2).is_err());
    }
}
