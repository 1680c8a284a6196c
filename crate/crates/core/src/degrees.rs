//! Commutativity and tensor degrees as exact rationals.
//!
//! `dₙ⊗(H, G)` is computed from the distribution of left-normed
//! commutators `[h₁, …, hₙ]` over `Hⁿ`, built one bracket at a time, and the
//! tensor centralizer sizes of the tensor square. A direct tuple count is
//! kept alongside as an oracle.

use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup, Subgroup};
use crate::rational::ExactRational;
use crate::tensor::{advance, TensorSquare};

/// Largest `|H|ⁿ·|G|` the naive counter accepts.
pub const NAIVE_TUPLE_LIMIT: u128 = 10_000_000;

/// `d(H, G)`: probability that a uniform `h ∈ H` commutes with a uniform
/// `g ∈ G`. `d(G) = d(G, G)`.
pub fn rel_comm_degree(g: &FiniteGroup, h: &Subgroup) -> ExactRational {
    let commuting: usize = h
        .elements()
        .iter()
        .map(|&x| g.elements().filter(|&y| g.mul(x, y) == g.mul(y, x)).count())
        .sum();
    ExactRational::new(commuting, h.order() * g.order())
}

pub fn comm_degree(g: &FiniteGroup) -> ExactRational {
    rel_comm_degree(g, &g.whole())
}

/// How many `n`-tuples of `H` have each element of `G` as their
/// left-normed commutator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorDistribution {
    n: usize,
    counts: Vec<u128>,
}

impl CommutatorDistribution {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self, x: Element) -> u128 {
        self.counts[x]
    }

    pub fn counts(&self) -> &[u128] {
        &self.counts
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().sum()
    }
}

/// `c₁ = 1_H`, `cₖ₊₁(w) = Σ_v cₖ(v)·|{h ∈ H : [v, h] = w}|`.
pub fn commutator_distribution(
    g: &FiniteGroup,
    h: &Subgroup,
    n: usize,
) -> Result<CommutatorDistribution> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    checked_power(h.order(), n)?;
    let mut counts = vec![0u128; g.order()];
    for &x in h.elements() {
        counts[x] = 1;
    }
    for _ in 1..n {
        let mut next = vec![0u128; g.order()];
        for (v, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &x in h.elements() {
                next[g.commutator(v, x)] += c;
            }
        }
        counts = next;
    }
    Ok(CommutatorDistribution { n, counts })
}

/// `dₙ⊗(H, G) = |{(h₁, …, hₙ, g) : [h₁, …, hₙ] ⊗ g = 1}| / (|H|ⁿ |G|)`,
/// with triviality taken in `G ⊗ G`.
pub fn rel_n_tensor_degree(
    g: &FiniteGroup,
    t: &TensorSquare,
    h: &Subgroup,
    n: usize,
) -> Result<ExactRational> {
    check_square(g, t)?;
    let dist = commutator_distribution(g, h, n)?;
    let hits: u128 = dist
        .counts
        .iter()
        .enumerate()
        .map(|(v, &c)| c * t.centralizer_size(v) as u128)
        .sum();
    let total = checked_power(h.order(), n)? * g.order() as u128;
    Ok(ExactRational::new(hits, total))
}

/// `dₙ⊗(G) = dₙ⊗(G, G)`.
pub fn n_tensor_degree(g: &FiniteGroup, t: &TensorSquare, n: usize) -> Result<ExactRational> {
    rel_n_tensor_degree(g, t, &g.whole(), n)
}

/// `d⊗(G) = d₁⊗(G, G)`.
pub fn tensor_degree(g: &FiniteGroup, t: &TensorSquare) -> Result<ExactRational> {
    n_tensor_degree(g, t, 1)
}

/// Direct enumeration of every `(h₁, …, hₙ, g)`; refuses inputs above
/// [`NAIVE_TUPLE_LIMIT`] tuples.
pub fn rel_n_tensor_degree_naive(
    g: &FiniteGroup,
    t: &TensorSquare,
    h: &Subgroup,
    n: usize,
) -> Result<ExactRational> {
    check_square(g, t)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let total = checked_power(h.order(), n)?
        .checked_mul(g.order() as u128)
        .filter(|&c| c <= NAIVE_TUPLE_LIMIT)
        .ok_or_else(|| {
            Error::Limit(format!(
                "naive count over |H|^{n}·|G| tuples with |H| = {}, |G| = {} exceeds {NAIVE_TUPLE_LIMIT}",
                h.order(),
                g.order()
            ))
        })?;
    let elems = h.elements();
    let mut idx = vec![0usize; n];
    let mut tuple = vec![0; n];
    let mut hits: u128 = 0;
    loop {
        for (slot, &i) in tuple.iter_mut().zip(&idx) {
            *slot = elems[i];
        }
        let c = g.iterated_commutator(&tuple)?;
        hits += g.elements().filter(|&y| t.is_trivial(c, y)).count() as u128;
        if !advance(&mut idx, elems.len()) {
            break;
        }
    }
    Ok(ExactRational::new(hits, total))
}

/// `baseⁿ`, with headroom for one more factor of a group order.
fn checked_power(base: usize, n: usize) -> Result<u128> {
    u32::try_from(n)
        .ok()
        .and_then(|n| (base as u128).checked_pow(n))
        .filter(|p| {
            p.checked_mul(crate::group::MAX_GROUP_ORDER as u128)
                .is_some()
        })
        .ok_or_else(|| Error::Limit(format!("{base}^{n} tuples overflow the counter")))
}

fn check_square(g: &FiniteGroup, t: &TensorSquare) -> Result<()> {
    if t.group_order() != g.order() {
        return Err(Error::InvalidArgument(format!(
            "tensor square of a group of order {} used with {}",
            t.group_order(),
            g.name()
        )));
    }
    Ok(())
}
