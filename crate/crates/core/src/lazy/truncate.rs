//! Finite snapshots of the lazy families and their chain rules.
//!
//! `example2` is truncated exactly, as the quotient by the tail ideal
//! `span{e_i : i > N}`. `sum-simple` keeps the first `N` copies, also
//! exact. `remark-sl2` has no finite quotient: the snapshot restricts `α`
//! to the grid `{k/2 : 0 < |k| <= 2N}` and lists every bracket whose value
//! leaves the grid.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{FamilyKind, LazyElement, LazyFamily, LazyIndex};
use crate::algebra::LeibnizAlgebra;
use crate::chains::{validate_chain, ArtinianVerdict, ChainSpec};
use crate::error::{Error, Result};
use crate::exactla::{Scalar, Subspace};

/// A bracket of two snapshot labels that the snapshot cannot represent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Escape {
    pub left: LazyIndex,
    pub right: LazyIndex,
    /// The part of the value outside the snapshot, if the value exists.
    pub dropped: Option<LazyElement>,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct Truncation {
    pub algebra: LeibnizAlgebra,
    /// Label of `e_{k+1}` at position `k`.
    pub index_map: Vec<LazyIndex>,
    /// Whether the snapshot is a quotient (or a direct summand) of the
    /// family rather than an approximation.
    pub exact: bool,
    pub escapes: Vec<Escape>,
    positions: HashMap<LazyIndex, usize>,
}

impl Truncation {
    pub fn position(&self, index: &LazyIndex) -> Option<usize> {
        self.positions.get(index).copied()
    }

    /// Coordinates of `x`; `None` if `x` uses a label outside the snapshot.
    pub fn to_vector(&self, x: &LazyElement) -> Option<Vec<Scalar>> {
        let mut v = self.algebra.zero_vector();
        for (i, c) in x.terms() {
            v[self.position(i)?] = c.clone();
        }
        Some(v)
    }

    pub fn to_element(&self, v: &[Scalar]) -> LazyElement {
        LazyElement::from_terms(self.index_map.iter().cloned().zip(v.iter().cloned()))
    }

    /// Span of the labels satisfying `pred`.
    pub fn label_span(&self, pred: impl Fn(&LazyIndex) -> bool) -> Subspace {
        let idx: Vec<usize> = (0..self.index_map.len()).filter(|&k| pred(&self.index_map[k])).collect();
        self.algebra.coordinate_span(&idx)
    }
}

const EXAMPLE2_MAX: usize = 120;
const REMARK_MAX: usize = 12;
const SUM_MAX: usize = 24;

fn half(k: i64) -> BigRational {
    BigRational::new(BigInt::from(k), BigInt::from(2))
}

impl LazyFamily {
    fn depth_bounds(&self) -> (usize, usize) {
        match self.kind {
            FamilyKind::Example2 => (3, EXAMPLE2_MAX),
            FamilyKind::RemarkSl2 => (1, REMARK_MAX),
            FamilyKind::SumSimple => (1, SUM_MAX),
        }
    }

    pub(crate) fn check_depth(&self, depth: usize) -> Result<()> {
        let (lo, hi) = self.depth_bounds();
        if depth < lo || depth > hi {
            return Err(Error::BadDepth {
                depth,
                reason: format!("{} accepts depths {lo}..={hi}", self.name()),
            });
        }
        Ok(())
    }

    fn snapshot_labels(&self, n: usize) -> Vec<LazyIndex> {
        match self.kind {
            FamilyKind::Example2 => (1..=n).map(LazyIndex::E).collect(),
            FamilyKind::RemarkSl2 => {
                let k = 2 * n as i64;
                let mut labels: Vec<LazyIndex> =
                    (-k..=k).filter(|&j| j != 0).map(|j| LazyIndex::X(half(j))).collect();
                labels.extend([LazyIndex::A, LazyIndex::B, LazyIndex::C, LazyIndex::Id]);
                labels
            }
            FamilyKind::SumSimple => {
                let d = self.summand.as_ref().expect("summand").dim();
                (1..=n).flat_map(|copy| (1..=d).map(move |basis| LazyIndex::S { copy, basis })).collect()
            }
        }
    }

    /// Finite snapshot at depth `n`.
    pub fn truncate(&self, n: usize) -> Result<Truncation> {
        self.check_depth(n)?;
        let labels = self.snapshot_labels(n);
        let positions: HashMap<LazyIndex, usize> = labels.iter().cloned().enumerate().map(|(k, l)| (l, k)).collect();
        let dim = labels.len();
        let exact = self.kind != FamilyKind::RemarkSl2;
        let mut escapes = Vec::new();
        let mut table = vec![vec![self.field.zero_vector(dim); dim]; dim];
        for (i, li) in labels.iter().enumerate() {
            for (j, lj) in labels.iter().enumerate() {
                let value = match self.basis_bracket(li, lj) {
                    Ok(v) => v,
                    Err(Error::OutsideIndexDomain(reason)) => {
                        escapes.push(Escape { left: li.clone(), right: lj.clone(), dropped: None, reason });
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let mut dropped = LazyElement::zero();
                for (k, c) in value.terms() {
                    match positions.get(k) {
                        Some(&p) => table[i][j][p] = c.clone(),
                        None => dropped.add_term(k.clone(), c.clone()),
                    }
                }
                // Dropping the tail of example2 is the quotient map, not an escape.
                if !dropped.is_zero() && !exact {
                    escapes.push(Escape {
                        left: li.clone(),
                        right: lj.clone(),
                        dropped: Some(dropped),
                        reason: "value leaves the grid".into(),
                    });
                }
            }
        }
        let algebra = LeibnizAlgebra::from_table(&format!("{}_{n}", self.name()), self.field, table)?;
        Ok(Truncation { algebra, index_map: labels, exact, escapes, positions })
    }

    /// Chain rule `rule`, indexed from [`LazyChain::first_index`].
    pub fn chain(&self, rule: &str) -> Result<LazyChain> {
        let rule = self
            .rules()
            .iter()
            .find(|r| **r == rule)
            .ok_or_else(|| Error::UnknownRule { family: self.name().into(), rule: rule.into() })?;
        Ok(LazyChain { family: self.clone(), rule })
    }

    /// Bounded evidence about the Artinian property: the tail chain in the
    /// snapshot at `depth`, if the family has one.
    pub fn artinian_report(&self, depth: usize) -> Result<ArtinianVerdict> {
        if self.kind == FamilyKind::RemarkSl2 {
            self.check_depth(depth)?;
            return Ok(ArtinianVerdict::NoEvidence { depth });
        }
        let (t, spec) = self.chain("tail")?.snapshot(depth)?;
        let spec = validate_chain(&t.algebra, spec)?;
        Ok(if spec.is_strictly_descending() {
            ArtinianVerdict::NotArtinianUpTo { depth, chain_length: spec.len() }
        } else {
            ArtinianVerdict::NoEvidence { depth }
        })
    }
}

/// A rule `k ↦ I_k` given by a predicate on basis labels.
#[derive(Clone, Debug)]
pub struct LazyChain {
    family: LazyFamily,
    rule: &'static str,
}

impl LazyChain {
    pub fn rule(&self) -> &'static str {
        self.rule
    }

    pub fn family(&self) -> &LazyFamily {
        &self.family
    }

    pub fn first_index(&self) -> usize {
        match (self.family.kind, self.rule) {
            (FamilyKind::Example2, _) => 4,
            _ => 1,
        }
    }

    /// Whether label `index` spans part of term `k`.
    pub fn label_in_term(&self, k: usize, index: &LazyIndex) -> bool {
        match (self.family.kind, self.rule, index) {
            // T_k = span{e_i : i >= k}
            (FamilyKind::Example2, _, LazyIndex::E(i)) => *i >= k,
            // H_n = span{x_α : α < 1/n}
            (FamilyKind::RemarkSl2, _, LazyIndex::X(a)) => {
                *a < BigRational::one() / BigRational::from_integer(BigInt::from(k))
            }
            // T_s = sum of copies i > s
            (FamilyKind::SumSimple, "tail", LazyIndex::S { copy, .. }) => *copy > k,
            // J_s = sum of copies i <= s
            (FamilyKind::SumSimple, "displayed", LazyIndex::S { copy, .. }) => *copy <= k,
            _ => false,
        }
    }

    pub fn contains(&self, k: usize, x: &LazyElement) -> bool {
        x.support().all(|i| self.label_in_term(k, i))
    }

    /// Terms `first_index()..=depth` inside the snapshot at `depth`; chain
    /// position 0 holds term `first_index()`. Not validated.
    pub fn snapshot(&self, depth: usize) -> Result<(Truncation, ChainSpec)> {
        let t = self.family.truncate(depth)?;
        let terms = (self.first_index()..=depth).map(|k| t.label_span(|l| self.label_in_term(k, l))).collect();
        Ok((t, ChainSpec::explored(terms)))
    }
}
