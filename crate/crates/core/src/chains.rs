//! Descending chains of ideals and the quasi-Artinian witness search.
//!
//! A chain is a finite list of terms indexed from 0. A `Finite` chain is
//! read as eventually constant at its last term. An `Explored` chain is the
//! prefix of a longer (possibly infinite) chain generated by a rule, and
//! every negative statement about it is bounded by the explored depth.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraMorphismData, LeibnizAlgebra, Quotient};
use crate::error::{Error, Result};
use crate::exactla::{Scalar, Subspace};
use crate::series;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainKind {
    Finite,
    Explored,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSpec {
    pub kind: ChainKind,
    pub terms: Vec<Subspace>,
    validated: bool,
}

impl ChainSpec {
    pub fn finite(terms: Vec<Subspace>) -> Self {
        ChainSpec { kind: ChainKind::Finite, terms, validated: false }
    }

    pub fn explored(terms: Vec<Subspace>) -> Self {
        ChainSpec { kind: ChainKind::Explored, terms, validated: false }
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Term `k`; past the end a finite chain repeats its last term.
    pub fn term(&self, k: usize) -> Option<&Subspace> {
        match self.kind {
            ChainKind::Finite => self.terms.get(k).or(self.terms.last()),
            ChainKind::Explored => self.terms.get(k),
        }
    }

    /// Whether every consecutive pair strictly decreases.
    pub fn is_strictly_descending(&self) -> bool {
        self.terms.windows(2).all(|w| w[0] != w[1])
    }
}

/// Checks every term is a two-sided ideal and the terms weakly decrease.
pub fn validate_chain(g: &LeibnizAlgebra, spec: ChainSpec) -> Result<ChainSpec> {
    g.require_convention()?;
    if spec.terms.is_empty() {
        return Err(Error::BadParams("a chain needs at least one term".into()));
    }
    for (k, t) in spec.terms.iter().enumerate() {
        if t.ambient_dim() != g.dim() {
            return Err(Error::AmbientMismatch { expected: g.dim(), got: t.ambient_dim() });
        }
        if !g.is_ideal(t)? {
            return Err(Error::ChainNotAnIdeal(k));
        }
        if k > 0 && !t.is_subspace_of(&spec.terms[k - 1])? {
            return Err(Error::NotDescending(k));
        }
    }
    Ok(ChainSpec { validated: true, ..spec })
}

/// Intersection of the explored terms, which for a descending list is the
/// last term.
pub fn chain_intersection(spec: &ChainSpec) -> Subspace {
    spec.terms.last().expect("validated chains are nonempty").clone()
}

/// Smallest `k` from which the explored terms are constant. An explored
/// chain still moving at its end has none.
pub fn stabilization_index(spec: &ChainSpec) -> Option<usize> {
    let n = spec.terms.len();
    let last = spec.terms.last()?;
    if spec.kind == ChainKind::Explored && (n < 2 || spec.terms[n - 2] != *last) {
        return None;
    }
    Some(spec.terms.iter().position(|t| t == last).expect("last term is present"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `[g^(m), I_m] ⊆ ∩ I_i`.
    Left,
    /// `[I_m, g^(m)] ⊆ ∩ I_i`.
    Right,
    Both,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::Both => "both",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    /// Smallest witness for `side`.
    pub witness_m: Option<usize>,
    pub left_m: Option<usize>,
    pub right_m: Option<usize>,
    pub side: Side,
    pub intersection: Subspace,
    pub stabilization_index: Option<usize>,
    pub search_depth: usize,
}

fn side_holds(g: &LeibnizAlgebra, derived: &Subspace, term: &Subspace, meet: &Subspace, side: Side) -> bool {
    let within = |s: Subspace| s.is_subspace_of(meet).expect("same ambient");
    match side {
        Side::Left => within(g.product_unchecked(derived, term)),
        Side::Right => within(g.product_unchecked(term, derived)),
        Side::Both => within(g.product_unchecked(derived, term)) && within(g.product_unchecked(term, derived)),
    }
}

/// Whether `m` satisfies the witness inclusions on `side`.
pub fn verify_witness(g: &LeibnizAlgebra, spec: &ChainSpec, m: usize, side: Side) -> bool {
    let Some(term) = spec.term(m) else { return false };
    let derived = series::derived_series(g);
    side_holds(g, derived.term(m), term, &chain_intersection(spec), side)
}

/// Searches `m = 0..=max_m` for the smallest witness. Explored chains stop
/// at their last explored term.
pub fn qa_witness(g: &LeibnizAlgebra, spec: &ChainSpec, max_m: usize, side: Side) -> Result<WitnessReport> {
    if !spec.is_validated() {
        return Err(Error::BadParams("chain must be validated first".into()));
    }
    let derived = series::derived_series(g);
    let meet = chain_intersection(spec);
    let limit = match spec.kind {
        ChainKind::Finite => max_m,
        ChainKind::Explored => max_m.min(spec.len() - 1),
    };
    let find = |s: Side| (0..=limit).find(|&m| side_holds(g, derived.term(m), spec.term(m).expect("in range"), &meet, s));
    let left_m = find(Side::Left);
    let right_m = find(Side::Right);
    let witness_m = match side {
        Side::Left => left_m,
        Side::Right => right_m,
        Side::Both => find(Side::Both),
    };
    Ok(WitnessReport {
        witness_m,
        left_m,
        right_m,
        side,
        intersection: meet,
        stabilization_index: stabilization_index(spec),
        search_depth: limit,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArtinianVerdict {
    /// Finite dimension: a strictly descending chain has at most
    /// `dim_bound + 1` terms.
    Artinian { dim_bound: usize },
    /// A strictly descending chain of `chain_length` nonzero ideals was
    /// exhibited in the snapshot at `depth`.
    NotArtinianUpTo { depth: usize, chain_length: usize },
    /// Nothing could be exhibited up to `depth`.
    NoEvidence { depth: usize },
}

impl ArtinianVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            ArtinianVerdict::Artinian { .. } => "artinian",
            ArtinianVerdict::NotArtinianUpTo { .. } => "not-artinian-up-to-depth",
            ArtinianVerdict::NoEvidence { .. } => "no-evidence",
        }
    }
}

pub fn artinian_report(g: &LeibnizAlgebra) -> ArtinianVerdict {
    ArtinianVerdict::Artinian { dim_bound: g.dim() }
}

fn random_vector_in(u: &Subspace, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    let field = u.field();
    let mut v = field.zero_vector(u.ambient_dim());
    for b in u.basis() {
        let c = match field.order() {
            Some(p) => field.element(rng.gen_range(0..p)),
            None => field.from_i64(rng.gen_range(-3..=3)),
        };
        crate::exactla::vector::axpy(&mut v, &c, b);
    }
    v
}

/// A random validated chain of `len` terms starting at `g`. Each term is the
/// ideal generated by a few random elements of the previous one, so the
/// chain is descending by construction.
pub fn random_chain(g: &LeibnizAlgebra, rng: &mut ChaCha8Rng, len: usize) -> Result<ChainSpec> {
    let mut terms = vec![g.full()];
    while terms.len() < len.max(1) {
        let prev = terms.last().expect("nonempty");
        let count = rng.gen_range(0..=prev.dim().min(2));
        let gens: Vec<Vec<Scalar>> = (0..count).map(|_| random_vector_in(prev, rng)).collect();
        let next = if gens.is_empty() { g.zero_ideal() } else { g.ideal_closure(&gens)? };
        terms.push(next);
    }
    validate_chain(g, ChainSpec::finite(terms))
}

/// Preimages of the terms of a chain in `g / J`; a validated chain in `g`.
pub fn pullback_chain(g: &LeibnizAlgebra, q: &Quotient, spec: &ChainSpec) -> Result<ChainSpec> {
    let terms = spec.terms.iter().map(|t| q.preimage(t)).collect::<Result<Vec<_>>>()?;
    validate_chain(g, ChainSpec { kind: spec.kind, terms, validated: false })
}

/// The chain `A_k ⊕ B_k` in `a ⊕ b`, padding the shorter chain with its
/// last term.
pub fn blockwise_chain(
    sum: &LeibnizAlgebra,
    inc_a: &AlgebraMorphismData,
    inc_b: &AlgebraMorphismData,
    a: &ChainSpec,
    b: &ChainSpec,
) -> Result<ChainSpec> {
    let n = a.len().max(b.len());
    let mut terms = Vec::with_capacity(n);
    for k in 0..n {
        let ta = inc_a.image(a.term(k).unwrap_or(a.terms.last().expect("nonempty")))?;
        let tb = inc_b.image(b.term(k).unwrap_or(b.terms.last().expect("nonempty")))?;
        terms.push(ta.sum(&tb)?);
    }
    validate_chain(sum, ChainSpec::finite(terms))
}
