//! Mechanical audits of statements about specific algebras.
//!
//! An audit never repairs a statement. Every failure carries a
//! counterexample built from formal elements, and [`replay`] re-derives the
//! violation from the bracket alone.

use crate::algebra::{Identity, LeibnizAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{Field, Scalar, Subspace};
use crate::lazy::{LazyElement, LazyFamily, LazyIndex};
use crate::primes::EnumerationGuard;
use crate::series;
use crate::simple::{leibniz_simple, lie_simple, NonSimplicity, SimplicityVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClaimStatus {
    Confirmed,
    FailedWithCounterexample,
    BoundedEvidenceOnly,
}

impl ClaimStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ClaimStatus::Confirmed => "confirmed",
            ClaimStatus::FailedWithCounterexample => "failed",
            ClaimStatus::BoundedEvidenceOnly => "bounded-evidence",
        }
    }
}

/// A concrete, re-checkable witness against a claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    /// `member` lies in term `k` of chain `rule`, but `product`, the
    /// bracket of `left` and `right`, does not.
    ChainEscape { rule: String, k: usize, left: LazyElement, right: LazyElement, member: LazyElement, product: LazyElement },
    /// The bracket of two basis labels has no value in the index domain.
    DomainEscape { left: LazyElement, right: LazyElement },
    IdentityFailure { identity: Identity, triple: [LazyElement; 3], residual: LazyElement },
    /// `ideal` is a two-sided ideal of the subalgebra spanned by `ambient`,
    /// neither zero nor everything.
    ProperIdeal { ambient: Vec<LazyElement>, ideal: Vec<LazyElement> },
    /// In the subalgebra spanned by `ambient`, the span of all products and
    /// the span of all squares both equal `span`.
    SquareIsLeib { ambient: Vec<LazyElement>, span: Vec<LazyElement> },
    /// `witness` is in term `k + 1` of chain `rule` but not in term `k`.
    NotDescending { rule: String, k: usize, witness: LazyElement },
    /// `element` is absent from every listed product. Together the pairs
    /// cover every shape of basis bracket.
    MissingFromProducts { element: LazyElement, products: Vec<(LazyElement, LazyElement, LazyElement)> },
    /// `[sample, [u, v]]` differs from `u(v(sample)) - v(u(sample))`.
    OperatorMismatch { sample: LazyElement, u: LazyElement, v: LazyElement, lhs: LazyElement, rhs: LazyElement },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimAuditReport {
    pub id: String,
    pub statement: String,
    pub status: ClaimStatus,
    pub counterexample: Option<Counterexample>,
    pub depth: usize,
    pub detail: String,
}

impl ClaimAuditReport {
    pub(crate) fn new(id: &str, statement: &str, depth: usize) -> Self {
        ClaimAuditReport {
            id: id.into(),
            statement: statement.into(),
            status: ClaimStatus::Confirmed,
            counterexample: None,
            depth,
            detail: String::new(),
        }
    }

    pub(crate) fn confirmed(mut self, detail: impl Into<String>) -> Self {
        self.status = ClaimStatus::Confirmed;
        self.detail = detail.into();
        self
    }

    pub(crate) fn bounded(mut self, detail: impl Into<String>) -> Self {
        self.status = ClaimStatus::BoundedEvidenceOnly;
        self.detail = detail.into();
        self
    }

    pub(crate) fn failed(mut self, ce: Counterexample, detail: impl Into<String>) -> Self {
        self.status = ClaimStatus::FailedWithCounterexample;
        self.counterexample = Some(ce);
        self.detail = detail.into();
        self
    }
}

/// Anything that can bracket formal elements.
pub trait FormalAlgebra {
    fn field(&self) -> Field;
    fn formal_bracket(&self, x: &LazyElement, y: &LazyElement) -> Result<LazyElement>;
    fn chain_contains(&self, rule: &str, k: usize, x: &LazyElement) -> Result<bool> {
        let _ = (k, x);
        Err(Error::UnknownRule { family: "finite".into(), rule: rule.into() })
    }
}

impl FormalAlgebra for LazyFamily {
    fn field(&self) -> Field {
        LazyFamily::field(self)
    }

    fn formal_bracket(&self, x: &LazyElement, y: &LazyElement) -> Result<LazyElement> {
        self.bracket(x, y)
    }

    fn chain_contains(&self, rule: &str, k: usize, x: &LazyElement) -> Result<bool> {
        Ok(self.chain(rule)?.contains(k, x))
    }
}

/// A finite algebra read through `E` labels.
impl FormalAlgebra for LeibnizAlgebra {
    fn field(&self) -> Field {
        LeibnizAlgebra::field(self)
    }

    fn formal_bracket(&self, x: &LazyElement, y: &LazyElement) -> Result<LazyElement> {
        let conv = |e: &LazyElement| {
            e.to_vector(self.field(), self.dim())
                .ok_or_else(|| Error::OutsideIndexDomain(format!("{e} is not an element of {}", self.name())))
        };
        Ok(LazyElement::from_vector(&self.bracket(&conv(x)?, &conv(y)?)?))
    }
}

/// Coordinates for a finite family of formal elements over the union of
/// their supports.
struct FormalFrame {
    field: Field,
    labels: Vec<LazyIndex>,
}

impl FormalFrame {
    fn new(field: Field, elements: &[&LazyElement]) -> Self {
        let mut labels: Vec<LazyIndex> = elements.iter().flat_map(|e| e.support().cloned()).collect();
        labels.sort();
        labels.dedup();
        FormalFrame { field, labels }
    }

    /// `None` when `x` uses a label outside the frame.
    fn coords(&self, x: &LazyElement) -> Option<Vec<Scalar>> {
        let mut v = self.field.zero_vector(self.labels.len());
        for (i, c) in x.terms() {
            v[self.labels.binary_search(i).ok()?] = c.clone();
        }
        Some(v)
    }

    fn span(&self, xs: &[LazyElement]) -> Option<Subspace> {
        let rows = xs.iter().map(|x| self.coords(x)).collect::<Option<Vec<_>>>()?;
        Some(Subspace::span(self.field, self.labels.len(), &rows).expect("frame coordinates"))
    }
}

fn within(frame: &FormalFrame, x: &LazyElement, u: &Subspace) -> bool {
    frame.coords(x).is_some_and(|v| u.contains(&v).expect("frame coordinates"))
}

/// Re-derives the violation a counterexample records. `Ok(true)` means the
/// violation is reproduced.
pub fn replay(alg: &dyn FormalAlgebra, ce: &Counterexample) -> Result<bool> {
    let field = alg.field();
    match ce {
        Counterexample::ChainEscape { rule, k, left, right, member, product } => {
            let got = alg.formal_bracket(left, right)?;
            Ok(got == *product
                && (member == left || member == right)
                && alg.chain_contains(rule, *k, member)?
                && !alg.chain_contains(rule, *k, &got)?)
        }
        Counterexample::DomainEscape { left, right } => {
            Ok(matches!(alg.formal_bracket(left, right), Err(Error::OutsideIndexDomain(_))))
        }
        Counterexample::IdentityFailure { identity, triple, residual } => {
            let got = formal_residual(alg, *identity, &triple[0], &triple[1], &triple[2])?;
            Ok(!got.is_zero() && got == *residual)
        }
        Counterexample::ProperIdeal { ambient, ideal } => {
            let mut products = Vec::new();
            for a in ambient {
                for i in ideal {
                    products.push(alg.formal_bracket(a, i)?);
                    products.push(alg.formal_bracket(i, a)?);
                }
            }
            let all: Vec<&LazyElement> = ambient.iter().chain(ideal).chain(&products).collect();
            let frame = FormalFrame::new(field, &all);
            let (Some(amb), Some(id)) = (frame.span(ambient), frame.span(ideal)) else { return Ok(false) };
            Ok(!id.is_zero()
                && id.dim() < amb.dim()
                && id.is_subspace_of(&amb)?
                && products.iter().all(|p| within(&frame, p, &id)))
        }
        Counterexample::SquareIsLeib { ambient, span } => {
            let mut products = Vec::new();
            let mut squares = Vec::new();
            for (i, x) in ambient.iter().enumerate() {
                for (j, y) in ambient.iter().enumerate() {
                    let xy = alg.formal_bracket(x, y)?;
                    if i == j {
                        squares.push(xy.clone());
                    } else if i < j {
                        squares.push(xy.add(&alg.formal_bracket(y, x)?));
                    }
                    products.push(xy);
                }
            }
            let all: Vec<&LazyElement> = ambient.iter().chain(span).chain(&products).chain(&squares).collect();
            let frame = FormalFrame::new(field, &all);
            let (Some(p), Some(s), Some(target)) = (frame.span(&products), frame.span(&squares), frame.span(span))
            else {
                return Ok(false);
            };
            Ok(p == target && s == target)
        }
        Counterexample::NotDescending { rule, k, witness } => {
            Ok(alg.chain_contains(rule, k + 1, witness)? && !alg.chain_contains(rule, *k, witness)?)
        }
        Counterexample::MissingFromProducts { element, products } => {
            let targets: Vec<&LazyIndex> = element.support().collect();
            for (x, y, p) in products {
                let got = alg.formal_bracket(x, y)?;
                if got != *p || got.support().any(|i| targets.contains(&i)) {
                    return Ok(false);
                }
            }
            Ok(!targets.is_empty())
        }
        Counterexample::OperatorMismatch { sample, u, v, lhs, rhs } => {
            let (l, r) = operator_sides(alg, sample, u, v)?;
            Ok(l == *lhs && r == *rhs && l != r)
        }
    }
}

/// `lhs - rhs` of an identity on formal elements.
pub fn formal_residual(
    alg: &dyn FormalAlgebra,
    identity: Identity,
    x: &LazyElement,
    y: &LazyElement,
    z: &LazyElement,
) -> Result<LazyElement> {
    let b = |p: &LazyElement, q: &LazyElement| alg.formal_bracket(p, q);
    Ok(match identity {
        Identity::Left => b(x, &b(y, z)?)?.sub(&b(&b(x, y)?, z)?).sub(&b(y, &b(x, z)?)?),
        Identity::Right => b(&b(x, y)?, z)?.sub(&b(&b(x, z)?, y)?).sub(&b(x, &b(y, z)?)?),
    })
}

/// `([sample, [u, v]], u(v(sample)) - v(u(sample)))` where `w(s) = [s, w]`.
pub fn operator_sides(
    alg: &dyn FormalAlgebra,
    sample: &LazyElement,
    u: &LazyElement,
    v: &LazyElement,
) -> Result<(LazyElement, LazyElement)> {
    let b = |p: &LazyElement, q: &LazyElement| alg.formal_bracket(p, q);
    let lhs = b(sample, &b(u, v)?)?;
    let rhs = b(&b(sample, v)?, u)?.sub(&b(&b(sample, u)?, v)?);
    Ok((lhs, rhs))
}

fn elements(u: &Subspace) -> Vec<LazyElement> {
    u.basis().iter().map(|v| LazyElement::from_vector(v)).collect()
}

fn render(u: &Subspace) -> String {
    crate::algebra::render_subspace(u)
}

/// Maps a subspace of the subalgebra on `u` (coordinates along the
/// canonical basis of `u`) back into `g`.
fn lift_from_subalgebra(g: &LeibnizAlgebra, u: &Subspace, w: &Subspace) -> Subspace {
    let vectors: Vec<Vec<Scalar>> = w
        .basis()
        .iter()
        .map(|coords| {
            let mut v = g.zero_vector();
            for (c, b) in coords.iter().zip(u.basis()) {
                crate::exactla::vector::axpy(&mut v, c, b);
            }
            v
        })
        .collect();
    g.span(&vectors).expect("same ambient")
}

fn simplicity_report(
    g: &LeibnizAlgebra,
    i: &Subspace,
    id: &str,
    which: &str,
    verdict: SimplicityVerdict,
    depth: usize,
) -> ClaimAuditReport {
    let r = ClaimAuditReport::new(id, &format!("I = {} is simple ({which})", render(i)), depth);
    let amb = elements(i);
    match verdict {
        SimplicityVerdict::Simple => r.confirmed("decided on the full ideal lattice"),
        SimplicityVerdict::Undetermined { searched } => {
            r.bounded(format!("no offending ideal among {searched} candidates"))
        }
        SimplicityVerdict::NotSimple(NonSimplicity::ProperIdeal(w)) => {
            let w = lift_from_subalgebra(g, i, &w);
            let detail = format!("{} is a proper nonzero ideal of I", render(&w));
            r.failed(Counterexample::ProperIdeal { ambient: amb, ideal: elements(&w) }, detail)
        }
        SimplicityVerdict::NotSimple(NonSimplicity::SquareIsLeib(w)) => {
            let w = lift_from_subalgebra(g, i, &w);
            let detail = format!("[I, I] = Leib(I) = {}", render(&w));
            r.failed(Counterexample::SquareIsLeib { ambient: amb, span: elements(&w) }, detail)
        }
        SimplicityVerdict::NotSimple(NonSimplicity::Abelian) => {
            r.failed(Counterexample::SquareIsLeib { ambient: amb, span: Vec::new() }, "[I, I] = 0")
        }
    }
}

/// Audits of the statements "I and J are two-sided ideals", "I is simple"
/// under both readings, "g/I ≅ J" and "J is solvable" for a splitting
/// `g = I ⊕ J` given by coordinate index sets (0-based).
pub fn split_claims(
    g: &LeibnizAlgebra,
    i_idx: &[usize],
    j_idx: &[usize],
    depth: usize,
    guard: EnumerationGuard,
) -> Result<Vec<ClaimAuditReport>> {
    let i = g.coordinate_span(i_idx);
    let j = g.coordinate_span(j_idx);
    let mut out = Vec::new();
    for (id, name, u) in [("i-two-sided-ideal", "I", &i), ("j-two-sided-ideal", "J", &j)] {
        let r = ClaimAuditReport::new(id, &format!("{name} = {} is a two-sided ideal", render(u)), depth);
        let flags = g.ideal_flags(u)?;
        out.push(if flags.two_sided {
            r.confirmed("[g, U] and [U, g] checked on basis pairs")
        } else {
            r.bounded(format!("left-closed: {}, right-closed: {}", flags.left, flags.right))
        });
    }
    let sub_i = g.subalgebra(&i)?;
    out.push(simplicity_report(g, &i, "i-lie-simple", "lie_simple", lie_simple(&sub_i, guard)?, depth));
    out.push(simplicity_report(g, &i, "i-leibniz-simple", "leibniz_simple", leibniz_simple(&sub_i, guard)?, depth));

    let r = ClaimAuditReport::new("quotient-by-i-isomorphic-to-j", "g/I ≅ J", depth);
    let q = g.quotient(&i)?;
    let sub_j = g.subalgebra(&j)?;
    out.push(if q.algebra.table() == sub_j.table() {
        r.confirmed("the induced table of g/I equals the table of J under the basis shift")
    } else {
        r.bounded("induced tables differ in this basis; no isomorphism search attempted")
    });

    let r = ClaimAuditReport::new("j-solvable", "J is solvable", depth);
    let d = series::derived_series(&sub_j);
    out.push(if d.last().is_zero() {
        r.confirmed(format!("derived dims of J: {:?}", d.dims))
    } else {
        r.bounded(format!("derived series of J stalls at dim {}", d.last().dim()))
    });
    Ok(out)
}

/// The six-dimensional example with `I = span{e1,e2}`, `J = span{e3..e6}`.
pub fn example1_claims(g: &LeibnizAlgebra, guard: EnumerationGuard) -> Result<Vec<ClaimAuditReport>> {
    if g.dim() != 6 {
        return Err(Error::BadParams(format!("expected a 6-dimensional algebra, got {}", g.dim())));
    }
    split_claims(g, &[0, 1], &[2, 3, 4, 5], 0, guard)
}

pub fn any_failed(reports: &[ClaimAuditReport]) -> bool {
    reports.iter().any(|r| r.status == ClaimStatus::FailedWithCounterexample)
}
