//! The unreduced Burau representation of `B_∞` in `GL(∞, Z[t, t⁻¹])`, the
//! block matrices `Θ_j[k]`, the subgroups `G[n]` and the one-parameter
//! double-coset product `⋆_t`.

use crate::coset::step3_words;
use crate::error::{Error, Result};
use crate::laurent::{LaurentMatrix, LaurentPoly};
use crate::word::{support_upper, BraidWord};

fn one() -> LaurentPoly {
    LaurentPoly::one()
}

fn t_pow(e: i64) -> LaurentPoly {
    LaurentPoly::t_pow(e)
}

/// Right-multiplies `m` in place by the image of one generator.
fn push_letter(m: &mut LaurentMatrix, index: usize, positive: bool) {
    let (a, b) = (index - 1, index);
    for r in 0..m.dim() {
        let x = m.get(r, a);
        let y = m.get(r, b);
        if x.is_zero() && y.is_zero() {
            continue;
        }
        let (nx, ny) = if positive {
            (&(&x * &(&one() - &t_pow(1))) + &y, &x * &t_pow(1))
        } else {
            (&y * &t_pow(-1), &x + &(&y * &(&one() - &t_pow(-1))))
        };
        m.set(r, a, nx);
        m.set(r, b, ny);
    }
}

/// Image of a braid word; the block has size `1 + support_upper(w)`.
pub fn eta(w: &BraidWord) -> LaurentMatrix {
    let mut m = LaurentMatrix::identity(1 + support_upper(w) as usize);
    for l in w.letters() {
        push_letter(&mut m, l.index() as usize, l.is_positive());
    }
    m
}

/// The block matrix `Θ_j[k]` of size `k + 2j`.
pub fn theta_matrix(j: usize, k: usize) -> LaurentMatrix {
    let v_entry = |c: usize| &(&one() - &t_pow(1)) * &t_pow(c as i64);
    LaurentMatrix::from_fn(k + 2 * j, |r, c| {
        if r < k || c < k {
            return if r == c { one() } else { LaurentPoly::zero() };
        }
        let (r, c) = (r - k, c - k);
        match (r < j, c < j) {
            (true, true) => v_entry(c),
            (true, false) if c - j == r => t_pow(j as i64),
            (false, true) if r - j == c => one(),
            _ => LaurentPoly::zero(),
        }
    })
}

/// Membership in `G[n]`: `x = 1_n ⊕ X` with `vᵀx = vᵀ` for
/// `v = (1, t, t², …)` and `x·u = u` for `u = (1, 1, …)`.
pub fn in_g(x: &LaurentMatrix, n: usize) -> bool {
    let d = x.dim().max(n);
    for r in 0..n {
        for c in 0..d {
            let e = x.get(r, c);
            let ok = if r == c { e.is_one() } else { e.is_zero() && x.get(c, r).is_zero() };
            if !ok {
                return false;
            }
        }
    }
    let columns_fix_v = (0..d).all(|c| {
        let sum = (0..d).fold(LaurentPoly::zero(), |acc, r| &acc + &(&t_pow(r as i64) * &x.get(r, c)));
        sum == t_pow(c as i64)
    });
    let rows_fix_u = (0..d).all(|r| (0..d).fold(LaurentPoly::zero(), |acc, c| &acc + &x.get(r, c)).is_one());
    columns_fix_v && rows_fix_u
}

/// The double coset `G[n] · rep · G[m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GLCoset {
    pub n: usize,
    pub m: usize,
    pub rep: LaurentMatrix,
}

impl GLCoset {
    pub fn new(n: usize, m: usize, rep: LaurentMatrix) -> Self {
        GLCoset { n, m, rep }
    }

    /// The Burau image of a braid coset representative.
    pub fn from_braid(n: usize, m: usize, w: &BraidWord) -> Self {
        GLCoset { n, m, rep: eta(w) }
    }
}

/// `N` such that both representatives are `(k + N)`-block diagonal.
pub fn block_excess(p: &LaurentMatrix, q: &LaurentMatrix, k: usize) -> usize {
    p.minimal_dim().max(q.minimal_dim()).saturating_sub(k)
}

/// The stable index `max(m, n, k + N, 1)` used by [`star_t`].
pub fn star_index(p: &GLCoset, q: &GLCoset) -> usize {
    let k = p.m;
    p.n.max(q.m).max(k + block_excess(&p.rep, &q.rep, k)).max(1)
}

/// `p · Θ_j[k] · q` for an explicit `j`.
pub fn star_t_at(p: &GLCoset, q: &GLCoset, j: usize) -> Result<GLCoset> {
    if p.m != q.n {
        return Err(Error::IndexMismatch { left: p.m as u32, right: q.n as u32 });
    }
    let rep = LaurentMatrix::product([&p.rep, &theta_matrix(j, p.m), &q.rep]);
    Ok(GLCoset { n: p.n, m: q.m, rep })
}

/// `p ⋆_t q`, represented at the stable index.
pub fn star_t(p: &GLCoset, q: &GLCoset) -> Result<GLCoset> {
    if p.m != q.n {
        return Err(Error::IndexMismatch { left: p.m as u32, right: q.n as u32 });
    }
    star_t_at(p, q, star_index(p, q))
}

/// The five facts that make `Θ_i[k]` and `Θ_{i+1}[k]` give the same coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationChecks {
    pub theta_identity: bool,
    pub u_commutes_with_p: bool,
    pub l_commutes_with_q: bool,
    pub u_in_g: bool,
    pub l_in_g: bool,
}

impl StabilizationChecks {
    pub fn all(&self) -> bool {
        self.theta_identity && self.u_commutes_with_p && self.l_commutes_with_q && self.u_in_g && self.l_in_g
    }
}

/// Evaluates the five checks for `U = η(u)`, `L = η(ℓ)` without insisting
/// that they pass.
pub fn stabilization_checks(
    p: &LaurentMatrix,
    q: &LaurentMatrix,
    k: usize,
    i: usize,
) -> Result<(LaurentMatrix, LaurentMatrix, StabilizationChecks)> {
    if i == 0 {
        return Err(Error::OutOfRange("stabilization index must be positive".into()));
    }
    let (u, l) = step3_words(i as u32, k as u32);
    let (um, lm) = (eta(&u), eta(&l));
    let checks = StabilizationChecks {
        theta_identity: LaurentMatrix::product([&um, &theta_matrix(i + 1, k), &lm]) == theta_matrix(i, k),
        u_commutes_with_p: um.mul(p) == p.mul(&um),
        l_commutes_with_q: lm.mul(q) == q.mul(&lm),
        u_in_g: in_g(&um, k),
        l_in_g: in_g(&lm, k),
    };
    Ok((um, lm, checks))
}

/// Returns `(U, L)` with `Θ_i[k] = U·Θ_{i+1}[k]·L`, `Up = pU`, `Lq = qL` and
/// `U, L ∈ G[k]`, or an error if `i` is below the block size of `p, q`.
pub fn stabilization_witness(
    p: &LaurentMatrix,
    q: &LaurentMatrix,
    k: usize,
    i: usize,
) -> Result<(LaurentMatrix, LaurentMatrix)> {
    let n = block_excess(p, q, k);
    if i < n.max(1) {
        return Err(Error::OutOfRange(format!("stabilization index {i} is below the threshold {}", n.max(1))));
    }
    let (um, lm, checks) = stabilization_checks(p, q, k, i)?;
    if !checks.all() {
        return Err(Error::Verification(format!("stabilization checks failed: {checks:?}")));
    }
    Ok((um, lm))
}

/// For `H, J ∈ G[k]` supported in the first `k + M` coordinates, moves them
/// past `Θ_M[k]`: returns `(H′, J′)` with `J·Θ_M[k]·H = H′·Θ_M[k]·J′`, where
/// `H′ = 1_M ⊕ H` and `J′ = 1_M ⊕ J`.
pub fn swap_through_theta(
    h: &LaurentMatrix,
    j: &LaurentMatrix,
    k: usize,
    big_m: usize,
) -> Result<(LaurentMatrix, LaurentMatrix)> {
    if !in_g(h, k) || !in_g(j, k) {
        return Err(Error::Support("both matrices must lie in G[k]".into()));
    }
    if h.minimal_dim().max(j.minimal_dim()) > k + big_m {
        return Err(Error::Support(format!("matrices do not fit in the first {} coordinates", k + big_m)));
    }
    let (hp, jp) = (h.block_shift(big_m), j.block_shift(big_m));
    let theta = theta_matrix(big_m, k);
    if LaurentMatrix::product([j, &theta, h]) != LaurentMatrix::product([&hp, &theta, &jp]) {
        return Err(Error::Verification("J·Θ·H differs from H′·Θ·J′".into()));
    }
    Ok((hp, jp))
}

/// The 0/1 matrix sending basis row `r` to column `f(r)` (1-based indices).
pub fn permutation_matrix(dim: usize, f: impl Fn(usize) -> usize) -> LaurentMatrix {
    LaurentMatrix::from_fn(dim, |r, c| if f(r + 1) == c + 1 { one() } else { LaurentPoly::zero() })
}
