//! Double cosets `B_∞[α] \ B_∞ / B_∞[γ]`, where `B_∞[α]` is generated by the
//! `σ_j` with `j > α`, and the product that inserts `θ_n[β]` between
//! representatives.

mod assoc;
mod certificate;

use std::collections::HashMap;
use std::fmt;

pub use assoc::{associativity_certificate, associativity_certificate_with, AssociativityCertificate};
pub use certificate::{
    comb_certificate, independence_certificate, stabilization_certificate, step3_certificate, step3_words,
    EqualityCertificate, Side, Transcript,
};

use crate::error::{Error, Result};
use crate::garside::{canonical, normal_form, GarsideNF};
use crate::sym::{canonical_invariant, perm_of, FinPermutation, PartialInjection};
use crate::word::{support_upper, theta, BraidWord, Letter};

/// The double coset `B_∞[α] · rep · B_∞[γ]`; the representative is kept in
/// Garside-canonical spelling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidCoset {
    alpha: u32,
    gamma: u32,
    rep: BraidWord,
}

impl BraidCoset {
    pub fn new(alpha: u32, gamma: u32, rep: &BraidWord) -> Self {
        BraidCoset { alpha, gamma, rep: canonical(rep).to_word() }
    }

    pub fn identity(alpha: u32) -> Self {
        BraidCoset { alpha, gamma: alpha, rep: BraidWord::identity() }
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn gamma(&self) -> u32 {
        self.gamma
    }

    pub fn rep(&self) -> &BraidWord {
        &self.rep
    }

    /// The image in `S_∞[α] \ S_∞ / S_∞[γ]`, a necessary invariant.
    pub fn permutation_invariant(&self) -> PartialInjection {
        canonical_invariant(&perm_of(&self.rep), self.alpha, self.gamma)
    }
}

impl fmt::Display for BraidCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B[{}] ({}) B[{}]", self.alpha, self.rep, self.gamma)
    }
}

/// `max(supp p, supp q, α, γ) + 1`.
pub fn product_index(p: &BraidWord, q: &BraidWord, alpha: u32, gamma: u32) -> u32 {
    support_upper(p).max(support_upper(q)).max(alpha).max(gamma) + 1
}

/// The uncanonicalized product representative `p · θ_{n₀}[β] · q` and `n₀`.
pub fn product_representative(p: &BraidCoset, q: &BraidCoset) -> Result<(u32, BraidWord)> {
    if p.gamma != q.alpha {
        return Err(Error::IndexMismatch { left: p.gamma, right: q.alpha });
    }
    let n0 = product_index(&p.rep, &q.rep, p.alpha, q.gamma);
    Ok((n0, BraidWord::product([&p.rep, &theta(n0, p.gamma), &q.rep])))
}

/// `p ∘ q`.
pub fn coset_product(p: &BraidCoset, q: &BraidCoset) -> Result<BraidCoset> {
    let (_, rep) = product_representative(p, q)?;
    Ok(BraidCoset::new(p.alpha, q.gamma, &rep))
}

/// Given `p ≡ p′` in `B_∞[α] \ B_∞ / B_∞[β]`, proves that the products
/// `p ∘ q` and `p′ ∘ q` (each at its own stable index) agree.
pub fn product_congruence(cert: &EqualityCertificate, q: &BraidWord, gamma: u32) -> Result<EqualityCertificate> {
    let (alpha, beta) = (cert.alpha(), cert.gamma());
    let (p, p2) = (cert.lhs(), cert.rhs());
    let n1 = product_index(p, q, alpha, gamma);
    let n2 = product_index(p2, q, alpha, gamma);
    let j = [n1, n2, support_upper(cert.h()) + 1, support_upper(cert.k()) + 1].into_iter().max().unwrap();
    let rep = |x: &BraidWord, n: u32| BraidWord::product([x, &theta(n, beta), q]);
    let first = stabilization_certificate(p, q, alpha, beta, gamma, n1, j)?;
    let moved = independence_certificate(p, cert.k(), &BraidWord::identity(), q, j, alpha, beta, gamma)?.inverse();
    let pk = BraidWord::product([p, cert.k()]);
    let outer =
        EqualityCertificate::new(cert.h().clone(), rep(&pk, j), BraidWord::identity(), rep(p2, j), alpha, gamma)?;
    let last = stabilization_certificate(p2, q, alpha, beta, gamma, j, n2)?;
    first.then(&moved)?.then(&outer)?.then(&last)
}

/// Proves that the identity coset is neutral: `e_α ∘ p ≡ p` (`Side::Left`)
/// or `p ∘ e_γ ≡ p` (`Side::Right`).
pub fn unit_certificate(p: &BraidCoset, side: Side) -> Result<EqualityCertificate> {
    let (alpha, gamma) = (p.alpha, p.gamma);
    match side {
        Side::Left => {
            let (_, rep) = product_representative(&BraidCoset::identity(alpha), p)?;
            let n0 = product_index(&BraidWord::identity(), &p.rep, alpha, gamma);
            let th = theta(n0, alpha);
            EqualityCertificate::new(th.inverse(), rep, BraidWord::identity(), p.rep.clone(), alpha, gamma)
        }
        Side::Right => {
            let (_, rep) = product_representative(p, &BraidCoset::identity(gamma))?;
            let n0 = product_index(&p.rep, &BraidWord::identity(), alpha, gamma);
            let th = theta(n0, gamma);
            EqualityCertificate::new(BraidWord::identity(), rep, th.inverse(), p.rep.clone(), alpha, gamma)
        }
    }
}

/// Outcome of [`coset_equal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CosetEquality {
    /// A proven invariant separates the cosets; the payload names it.
    Distinct(String),
    Equal(EqualityCertificate),
    /// No certificate within the search limits and no separating invariant.
    Unknown,
}

/// Limits for the witness search of [`coset_equal`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Maximum of `|h| + |k|`.
    pub length_cap: usize,
    /// Maximum number of enumerated elements on both sides together.
    pub budget: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { length_cap: 6, budget: 200_000 }
    }
}

/// Freely reduced words in the letters `σ_lo^{±1} … σ_hi^{±1}`, in order
/// of increasing length, up to `max_len`.
fn enumerate_words(lo: u32, hi: u32, max_len: usize, mut visit: impl FnMut(&BraidWord) -> bool) -> bool {
    let letters: Vec<Letter> = (lo..=hi).flat_map(|i| [Letter::sigma(i), Letter::sigma_inv(i)]).collect();
    let mut layer = vec![Vec::<Letter>::new()];
    for len in 0..=max_len {
        for w in &layer {
            if !visit(&BraidWord::from_letters(w.iter().copied())) {
                return false;
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last().is_some_and(|&last| last == l.inverse()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        layer = next;
    }
    true
}

/// Three-valued equality of double cosets with matching indices.
///
/// `Distinct` only comes from the permutation invariant. `Equal` comes with
/// a verified certificate found by a meet-in-the-middle search over
/// `h ∈ ⟨σ_{α+1}, …, σ_W⟩`, `k ∈ ⟨σ_{γ+1}, …, σ_W⟩`, where
/// `W = max(supports, α, γ) + 1`.
pub fn coset_equal(a: &BraidCoset, b: &BraidCoset, limits: SearchLimits) -> Result<CosetEquality> {
    if a.alpha != b.alpha || a.gamma != b.gamma {
        return Err(Error::IndexMismatch { left: a.alpha, right: b.alpha });
    }
    let (alpha, gamma) = (a.alpha, a.gamma);
    if let Ok(c) = EqualityCertificate::equality(a.rep.clone(), b.rep.clone(), alpha, gamma) {
        return Ok(CosetEquality::Equal(c));
    }
    if a.permutation_invariant() != b.permutation_invariant() {
        return Ok(CosetEquality::Distinct("permutation double-coset invariant".into()));
    }
    let top = support_upper(&a.rep).max(support_upper(&b.rep)).max(alpha).max(gamma) + 1;
    let strands = top as usize + 1;
    let nf = |w: &BraidWord| -> GarsideNF { normal_form(w, strands).expect("words fit in the window") };
    let right_len = limits.length_cap / 2;
    let left_len = limits.length_cap - right_len;
    let mut seen = 0usize;
    let mut table: HashMap<GarsideNF, BraidWord> = HashMap::new();
    let complete = enumerate_words(gamma + 1, top, right_len, |k| {
        seen += 1;
        table.entry(nf(&a.rep.mul(k))).or_insert_with(|| k.clone());
        seen <= limits.budget
    });
    let mut found = None;
    if complete {
        enumerate_words(alpha + 1, top, left_len, |h| {
            seen += 1;
            if let Some(k) = table.get(&nf(&h.inverse().mul(&b.rep))) {
                found = Some((h.clone(), k.clone()));
                return false;
            }
            seen <= limits.budget
        });
    }
    match found {
        Some((h, k)) => {
            Ok(CosetEquality::Equal(EqualityCertificate::new(h, a.rep.clone(), k, b.rep.clone(), alpha, gamma)?))
        }
        None => Ok(CosetEquality::Unknown),
    }
}

/// Evidence that the naive product `p·q` is not well defined on cosets.
#[derive(Clone, Debug)]
pub struct NaiveCounterexample {
    /// `σ_2 ≡ σ_3σ_2` in `B_∞[2] \ B_∞ / B_∞[2]`.
    pub representatives: EqualityCertificate,
    pub perm_square: FinPermutation,
    pub perm_other: FinPermutation,
    pub invariant_square: PartialInjection,
    pub invariant_other: PartialInjection,
    /// The θ-product with `q = σ_2` does not notice the change of representative.
    pub theta_products: EqualityCertificate,
}

impl NaiveCounterexample {
    pub fn naive_products_distinct(&self) -> bool {
        self.invariant_square != self.invariant_other
    }
}

impl fmt::Display for NaiveCounterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "same coset: {}", self.representatives)?;
        writeln!(f, "perm(s2 s2) = {}", self.perm_square)?;
        writeln!(f, "perm(s3 s2 s3 s2) = {}", self.perm_other)?;
        writeln!(f, "invariant(s2 s2) = {}", self.invariant_square)?;
        writeln!(f, "invariant(s3 s2 s3 s2) = {}", self.invariant_other)?;
        writeln!(f, "naive products distinct: {}", self.naive_products_distinct())?;
        write!(f, "theta products equal: {}", self.theta_products)
    }
}

pub fn naive_counterexample() -> Result<NaiveCounterexample> {
    let s2 = BraidWord::sigma(2);
    let s32 = BraidWord::positive([3, 2]);
    let representatives =
        match coset_equal(&BraidCoset::new(2, 2, &s2), &BraidCoset::new(2, 2, &s32), SearchLimits::default())? {
            CosetEquality::Equal(c) => {
                EqualityCertificate::new(c.h().clone(), s2.clone(), c.k().clone(), s32.clone(), 2, 2)?
            }
            other => return Err(Error::Verification(format!("expected a certificate, got {other:?}"))),
        };
    let square = s2.mul(&s2);
    let other = s32.mul(&s32);
    let theta_products = product_congruence(&representatives, &s2, 2)?;
    Ok(NaiveCounterexample {
        perm_square: perm_of(&square),
        perm_other: perm_of(&other),
        invariant_square: canonical_invariant(&perm_of(&square), 2, 2),
        invariant_other: canonical_invariant(&perm_of(&other), 2, 2),
        representatives,
        theta_products,
    })
}

/// `(g_1, …, g_n), h ↦ (g_1 h⁻¹, …, g_n h⁻¹)`.
pub fn conj_to_coset(gs: &[BraidWord], h: &BraidWord) -> Vec<BraidWord> {
    let hi = h.inverse();
    gs.iter().map(|g| g.mul(&hi)).collect()
}

/// Coordinate-wise product on `B_∞ × ⋯ × B_∞` with one shared stable index.
pub fn componentwise_product(ps: &[BraidCoset], qs: &[BraidCoset]) -> Result<Vec<BraidCoset>> {
    if ps.len() != qs.len() {
        return Err(Error::LengthMismatch(ps.len(), qs.len()));
    }
    let Some((p0, q0)) = ps.first().zip(qs.first()) else {
        return Ok(Vec::new());
    };
    for (p, q) in ps.iter().zip(qs) {
        if (p.alpha, p.gamma) != (p0.alpha, p0.gamma) || (q.alpha, q.gamma) != (q0.alpha, q0.gamma) {
            return Err(Error::Invalid("all coordinates must share their indices".into()));
        }
        if p.gamma != q.alpha {
            return Err(Error::IndexMismatch { left: p.gamma, right: q.alpha });
        }
    }
    let n0 = ps.iter().zip(qs).map(|(p, q)| product_index(&p.rep, &q.rep, p.alpha, q.gamma)).max().unwrap();
    let th = theta(n0, p0.gamma);
    Ok(ps
        .iter()
        .zip(qs)
        .map(|(p, q)| BraidCoset::new(p.alpha, q.gamma, &BraidWord::product([&p.rep, &th, &q.rep])))
        .collect())
}
