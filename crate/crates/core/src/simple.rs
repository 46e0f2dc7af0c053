//! Two readings of "simple" for Leibniz algebras.
//!
//! `lie_simple`: the only two-sided ideals are `0` and `g`, and `[g,g] ≠ 0`.
//! `leibniz_simple`: the only two-sided ideals are `0`, `Leib(g)` and `g`,
//! and `[g,g] ≠ Leib(g)`.
//!
//! Over a prime field both are decided on the enumerated lattice. Over Q the
//! ideal condition is searched on a finite family of candidate ideals; a hit
//! refutes simplicity, a miss leaves the verdict undetermined.

use crate::algebra::LeibnizAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{vector, Subspace};
use crate::primes::{enumerate_ideals, EnumerationGuard};
use crate::series;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonSimplicity {
    /// An ideal other than the permitted ones.
    ProperIdeal(Subspace),
    /// `[g, g] = 0`.
    Abelian,
    /// `[g, g]` equals `Leib(g)`, given here.
    SquareIsLeib(Subspace),
}

impl NonSimplicity {
    pub fn witness(&self) -> Option<&Subspace> {
        match self {
            NonSimplicity::ProperIdeal(s) | NonSimplicity::SquareIsLeib(s) => Some(s),
            NonSimplicity::Abelian => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplicityVerdict {
    Simple,
    NotSimple(NonSimplicity),
    /// No offending ideal among the `searched` candidates.
    Undetermined { searched: usize },
}

impl SimplicityVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            SimplicityVerdict::Simple => "simple",
            SimplicityVerdict::NotSimple(_) => "not-simple",
            SimplicityVerdict::Undetermined { .. } => "undetermined",
        }
    }
}

enum Candidates {
    Complete(Vec<Subspace>),
    Partial(Vec<Subspace>),
}

fn candidate_ideals(g: &LeibnizAlgebra, guard: EnumerationGuard) -> Result<Candidates> {
    if g.field().is_finite() {
        match enumerate_ideals(g, guard) {
            Ok(lat) => return Ok(Candidates::Complete(lat.ideals().to_vec())),
            Err(Error::EnumerationTooLarge { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    if g.dim() <= 1 {
        return Ok(Candidates::Complete(vec![g.zero_ideal(), g.full()]));
    }
    let mut out = vec![g.leib()?];
    let n = g.dim();
    let field = g.field();
    for i in 0..n {
        out.push(g.ideal_closure_of(&g.coordinate_span(&[i])));
        for j in (i + 1)..n {
            for sign in [field.one(), -field.one()] {
                let v = vector::add(&g.unit(i), &vector::scale(&sign, &g.unit(j)));
                out.push(g.ideal_closure(&[v])?);
            }
        }
    }
    let c = g.centers();
    for s in [c.left, c.right, c.center] {
        out.push(g.ideal_closure_of(&s));
    }
    for s in [series::derived_series(g), series::lower_central_series(g), series::upper_central_series(g)] {
        out.extend(s.terms);
    }
    out.sort();
    out.dedup();
    Ok(Candidates::Partial(out))
}

fn verdict(
    g: &LeibnizAlgebra,
    guard: EnumerationGuard,
    allowed: impl Fn(&Subspace) -> bool,
    square: impl FnOnce(&Subspace) -> Option<NonSimplicity>,
) -> Result<SimplicityVerdict> {
    let (cands, complete) = match candidate_ideals(g, guard)? {
        Candidates::Complete(c) => (c, true),
        Candidates::Partial(c) => (c, false),
    };
    if let Some(bad) = cands.iter().find(|u| !allowed(u)) {
        return Ok(SimplicityVerdict::NotSimple(NonSimplicity::ProperIdeal(bad.clone())));
    }
    let sq = g.subspace_product(&g.full(), &g.full())?;
    if let Some(reason) = square(&sq) {
        return Ok(SimplicityVerdict::NotSimple(reason));
    }
    Ok(if complete { SimplicityVerdict::Simple } else { SimplicityVerdict::Undetermined { searched: cands.len() } })
}

pub fn lie_simple(g: &LeibnizAlgebra, guard: EnumerationGuard) -> Result<SimplicityVerdict> {
    g.require_convention()?;
    verdict(g, guard, |u| u.is_zero() || u.is_full(), |sq| sq.is_zero().then_some(NonSimplicity::Abelian))
}

pub fn leibniz_simple(g: &LeibnizAlgebra, guard: EnumerationGuard) -> Result<SimplicityVerdict> {
    let leib = g.leib()?;
    let l2 = leib.clone();
    verdict(
        g,
        guard,
        move |u| u.is_zero() || u.is_full() || *u == leib,
        move |sq| (*sq == l2).then(|| NonSimplicity::SquareIsLeib(l2.clone())),
    )
}
