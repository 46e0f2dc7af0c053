//! Derived, lower central and upper central series, and the invariants read
//! off them: solvability, nilpotency, hypercentrality, the solvable radical
//! and semisimplicity.
//!
//! In finite dimension every series stabilizes after finitely many steps,
//! and the stabilized term stands in for the limit stage. Stabilization is
//! detected by equality of canonical bases, never by dimension alone.

use crate::algebra::LeibnizAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{kernel, vector, Field, Scalar, Subspace};
use crate::primes::{enumerate_ideals, EnumerationGuard};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Derived,
    LowerCentral,
    UpperCentral,
}

impl SeriesKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SeriesKind::Derived => "derived",
            SeriesKind::LowerCentral => "lower",
            SeriesKind::UpperCentral => "upper",
        }
    }
}

/// Terms up to and including the first repeated one; the repeat itself is
/// not stored, so `terms.len() == stabilized_at + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
    pub stabilized_at: usize,
    pub dims: Vec<usize>,
}

impl SeriesReport {
    fn iterate(kind: SeriesKind, start: Subspace, mut step: impl FnMut(&Subspace) -> Subspace) -> Self {
        let mut terms = vec![start];
        loop {
            let next = step(terms.last().expect("nonempty"));
            if &next == terms.last().expect("nonempty") {
                break;
            }
            terms.push(next);
        }
        let dims = terms.iter().map(Subspace::dim).collect();
        SeriesReport { kind, stabilized_at: terms.len() - 1, terms, dims }
    }

    /// Term `k`, repeating the stabilized term beyond the stored prefix.
    pub fn term(&self, k: usize) -> &Subspace {
        &self.terms[k.min(self.stabilized_at)]
    }

    pub fn last(&self) -> &Subspace {
        &self.terms[self.stabilized_at]
    }
}

pub fn derived_series(g: &LeibnizAlgebra) -> SeriesReport {
    derived_series_of(g, &g.full())
}

/// Derived series of a subalgebra `u` inside `g`.
pub fn derived_series_of(g: &LeibnizAlgebra, u: &Subspace) -> SeriesReport {
    SeriesReport::iterate(SeriesKind::Derived, u.clone(), |t| g.product_unchecked(t, t))
}

/// `C^{k+1} = [g, C^k] + [C^k, g]`.
pub fn lower_central_series(g: &LeibnizAlgebra) -> SeriesReport {
    let full = g.full();
    SeriesReport::iterate(SeriesKind::LowerCentral, full.clone(), |t| {
        g.product_unchecked(&full, t).sum(&g.product_unchecked(t, &full)).expect("same ambient")
    })
}

/// `ζ_{k+1}` is the preimage of the center of `g / ζ_k`.
pub fn upper_central_series(g: &LeibnizAlgebra) -> SeriesReport {
    SeriesReport::iterate(SeriesKind::UpperCentral, g.zero_ideal(), |t| {
        let q = g.quotient(t).expect("upper central terms are ideals");
        q.preimage(&q.algebra.centers().center).expect("quotient coordinates")
    })
}

pub fn is_solvable(g: &LeibnizAlgebra) -> bool {
    derived_series(g).last().is_zero()
}

/// First index at which the derived series vanishes.
pub fn derived_length(g: &LeibnizAlgebra) -> Option<usize> {
    let s = derived_series(g);
    s.last().is_zero().then_some(s.stabilized_at)
}

pub fn is_nilpotent(g: &LeibnizAlgebra) -> bool {
    lower_central_series(g).last().is_zero()
}

/// First index at which the lower central series vanishes; equals the index
/// at which the upper central series reaches `g`.
pub fn nilpotency_class(g: &LeibnizAlgebra) -> Option<usize> {
    let s = lower_central_series(g);
    s.last().is_zero().then_some(s.stabilized_at)
}

pub fn hypercenter(g: &LeibnizAlgebra) -> Subspace {
    upper_central_series(g).last().clone()
}

pub fn is_hypercentral(g: &LeibnizAlgebra) -> bool {
    hypercenter(g).is_full()
}

pub fn is_solvable_subspace(g: &LeibnizAlgebra, u: &Subspace) -> bool {
    derived_series_of(g, u).last().is_zero()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadicalMethod {
    /// Orthogonal of `[L, L]` under the trace form of `L = g / Leib(g)`.
    TraceForm,
    /// Sum of all solvable ideals from the enumerated ideal lattice.
    Enumeration,
}

impl RadicalMethod {
    pub fn for_field(field: Field) -> Self {
        if field.is_finite() {
            RadicalMethod::Enumeration
        } else {
            RadicalMethod::TraceForm
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RadicalMethod::TraceForm => "trace-form",
            RadicalMethod::Enumeration => "enumeration",
        }
    }
}

/// The largest solvable two-sided ideal.
pub fn solvable_radical(g: &LeibnizAlgebra, guard: EnumerationGuard) -> Result<Subspace> {
    g.require_convention()?;
    match RadicalMethod::for_field(g.field()) {
        RadicalMethod::TraceForm => trace_form_radical(g),
        RadicalMethod::Enumeration => {
            let lattice = enumerate_ideals(g, guard)?;
            Ok(lattice
                .ideals()
                .iter()
                .filter(|i| is_solvable_subspace(g, i))
                .fold(g.zero_ideal(), |acc, i| acc.sum(i).expect("same ambient")))
        }
    }
}

/// Characteristic-zero radical: `Leib(g)` is a solvable ideal contained in
/// the radical, `L = g / Leib(g)` is a Lie algebra, and
/// `Rad(L) = { x : tr(ad x ∘ ad y) = 0 for all y in [L, L] }`.
pub fn trace_form_radical(g: &LeibnizAlgebra) -> Result<Subspace> {
    if g.field().is_finite() {
        return Err(Error::FieldMismatch("Q".into(), g.field().to_string()));
    }
    let leib = g.leib()?;
    let quotient = g.quotient(&leib)?;
    let lie = &quotient.algebra;
    let n = lie.dim();
    let derived = lie.subspace_product(&lie.full(), &lie.full())?;
    let ads: Vec<Vec<Vec<Scalar>>> = (0..n).map(|i| lie.ad_matrix(&lie.unit(i))).collect();
    let rows: Vec<Vec<Scalar>> = derived
        .basis()
        .iter()
        .map(|y| {
            let ad_y = lie.ad_matrix(y);
            ads.iter().map(|ad_x| trace_of_product(ad_x, &ad_y, lie.field())).collect()
        })
        .collect();
    let rad = kernel(lie.field(), n, &rows)?;
    quotient.preimage(&rad)
}

fn trace_of_product(a: &[Vec<Scalar>], b: &[Vec<Scalar>], field: Field) -> Scalar {
    let n = a.len();
    let mut t = field.zero();
    for i in 0..n {
        let col: Vec<Scalar> = (0..n).map(|k| b[k][i].clone()).collect();
        t = &t + &vector::dot(&a[i], &col, field);
    }
    t
}

/// Semisimple means `Rad(g) = Leib(g)`.
pub fn is_semisimple(g: &LeibnizAlgebra, guard: EnumerationGuard) -> Result<bool> {
    Ok(solvable_radical(g, guard)? == g.leib()?)
}
