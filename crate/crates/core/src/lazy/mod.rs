//! Rule-based algebras with a countable basis, their finite snapshots, and
//! audits of statements made about them.
//!
//! Three families are built in:
//!
//! * `example2`: basis `e1, e2, e3, ...` with `[e1,e2] = e1` and
//!   `[e_i,e3] = e_{i+1}` for `i >= 4`.
//! * `remark-sl2`: basis `x_α` (`α` a nonzero rational) together with the
//!   operators `a, b, c` acting on the right: `[x_α,a] = x_{α+1}`,
//!   `[x_α,b] = (α-1) x_{α-1}`, `[x_α,c] = 2α x_α`, `[v,x_α] = 0`, and
//!   `[u,v] = u∘v - v∘u` on operators. Since `[a,b]` is `-id`, the identity
//!   operator `id` is adjoined as a basis element so the bracket closes.
//! * `sum-simple`: a direct sum of countably many copies of a fixed
//!   finite-dimensional summand (default `sl2` over Q).

mod audit;
mod truncate;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{render_combination, LeibnizAlgebra};
use crate::corpus;
use crate::error::{Error, Result};
use crate::exactla::{Field, Scalar};

pub use truncate::{Escape, LazyChain, Truncation};

/// Basis labels across all families.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LazyIndex {
    /// `e_i`, 1-based.
    E(usize),
    /// `x_α`.
    X(BigRational),
    A,
    B,
    C,
    Id,
    /// Basis vector `basis` (1-based) of copy `copy` (1-based).
    S { copy: usize, basis: usize },
}

fn rational_text(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for LazyIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LazyIndex::E(i) => write!(f, "e{i}"),
            LazyIndex::X(a) => write!(f, "x_{{{}}}", rational_text(a)),
            LazyIndex::A => f.write_str("a"),
            LazyIndex::B => f.write_str("b"),
            LazyIndex::C => f.write_str("c"),
            LazyIndex::Id => f.write_str("id"),
            LazyIndex::S { copy, basis } => write!(f, "s{copy}.e{basis}"),
        }
    }
}

pub fn x_index(num: i64, den: i64) -> LazyIndex {
    LazyIndex::X(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

/// A finitely supported formal combination of basis labels; zero
/// coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LazyElement {
    terms: BTreeMap<LazyIndex, Scalar>,
}

impl LazyElement {
    pub fn zero() -> Self {
        LazyElement::default()
    }

    pub fn basis(field: Field, index: LazyIndex) -> Self {
        Self::term(index, field.one())
    }

    pub fn term(index: LazyIndex, coeff: Scalar) -> Self {
        let mut e = LazyElement::zero();
        e.add_term(index, coeff);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (LazyIndex, Scalar)>) -> Self {
        let mut e = LazyElement::zero();
        for (i, c) in terms {
            e.add_term(i, c);
        }
        e
    }

    /// Element of a finite algebra with `E` labels.
    pub fn from_vector(v: &[Scalar]) -> Self {
        Self::from_terms(v.iter().enumerate().map(|(i, c)| (LazyIndex::E(i + 1), c.clone())))
    }

    pub fn add_term(&mut self, index: LazyIndex, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&index) {
            Some(old) => {
                let s = &old + &coeff;
                if !s.is_zero() {
                    self.terms.insert(index, s);
                }
            }
            None => {
                self.terms.insert(index, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LazyIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &LazyIndex> {
        self.terms.keys()
    }

    pub fn coeff(&self, index: &LazyIndex) -> Option<&Scalar> {
        self.terms.get(index)
    }

    pub fn add(&self, other: &LazyElement) -> LazyElement {
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LazyElement) -> LazyElement {
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i.clone(), -c);
        }
        out
    }

    pub fn scale(&self, a: &Scalar) -> LazyElement {
        Self::from_terms(self.terms().map(|(i, c)| (i.clone(), a * c)))
    }

    /// Dense coordinates over `E(1..=dim)`; `None` if any label is not `E`
    /// or exceeds `dim`.
    pub fn to_vector(&self, field: Field, dim: usize) -> Option<Vec<Scalar>> {
        let mut v = field.zero_vector(dim);
        for (i, c) in self.terms() {
            match i {
                LazyIndex::E(k) if (1..=dim).contains(k) => v[k - 1] = c.clone(),
                _ => return None,
            }
        }
        Some(v)
    }
}

impl fmt::Display for LazyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_combination(self.terms().map(|(i, c)| (i.to_string(), c))))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Example2,
    RemarkSl2,
    SumSimple,
}

impl FamilyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::Example2 => "example2",
            FamilyKind::RemarkSl2 => "remark-sl2",
            FamilyKind::SumSimple => "sum-simple",
        }
    }

    pub fn all() -> [FamilyKind; 3] {
        [FamilyKind::Example2, FamilyKind::RemarkSl2, FamilyKind::SumSimple]
    }
}

#[derive(Clone, Debug, Default)]
pub struct FamilyParams {
    /// Coefficient field; `example2` and `sum-simple` only. Defaults to Q.
    pub field: Option<Field>,
    /// Summand for `sum-simple`. Defaults to `sl2` over the chosen field.
    pub summand: Option<LeibnizAlgebra>,
}

#[derive(Clone, Debug)]
pub struct LazyFamily {
    kind: FamilyKind,
    field: Field,
    summand: Option<LeibnizAlgebra>,
}

pub fn instantiate(name: &str, params: FamilyParams) -> Result<LazyFamily> {
    let kind = FamilyKind::all()
        .into_iter()
        .find(|k| k.as_str() == name)
        .ok_or_else(|| Error::UnknownFamily(name.to_string()))?;
    let field = params.field.unwrap_or(Field::Rationals);
    if field.characteristic() == 2 {
        return Err(Error::FieldCharTwo);
    }
    match kind {
        FamilyKind::RemarkSl2 if field.is_finite() || params.summand.is_some() => {
            Err(Error::BadParams("remark-sl2 takes no parameters; it is defined over Q".into()))
        }
        FamilyKind::Example2 if params.summand.is_some() => {
            Err(Error::BadParams("example2 takes no summand".into()))
        }
        FamilyKind::SumSimple => {
            let summand = params.summand.unwrap_or_else(|| corpus::sl2(field));
            if summand.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), summand.field().to_string()));
            }
            summand.require_convention()?;
            if summand.dim() == 0 || summand.subspace_product(&summand.full(), &summand.full())?.is_zero() {
                return Err(Error::BadParams(format!("summand {} is abelian", summand.name())));
            }
            Ok(LazyFamily { kind, field, summand: Some(summand) })
        }
        _ => Ok(LazyFamily { kind, field, summand: None }),
    }
}

/// `lazy_bracket(F, x, y)`.
pub fn lazy_bracket(family: &LazyFamily, x: &LazyElement, y: &LazyElement) -> Result<LazyElement> {
    family.bracket(x, y)
}

impl LazyFamily {
    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.as_str()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn summand(&self) -> Option<&LeibnizAlgebra> {
        self.summand.as_ref()
    }

    pub fn basis(&self, index: LazyIndex) -> Result<LazyElement> {
        self.check_index(&index)?;
        Ok(LazyElement::basis(self.field, index))
    }

    pub fn in_domain(&self, index: &LazyIndex) -> bool {
        match (self.kind, index) {
            (FamilyKind::Example2, LazyIndex::E(i)) => *i >= 1,
            (FamilyKind::RemarkSl2, LazyIndex::X(a)) => !a.is_zero(),
            (FamilyKind::RemarkSl2, LazyIndex::A | LazyIndex::B | LazyIndex::C | LazyIndex::Id) => true,
            (FamilyKind::SumSimple, LazyIndex::S { copy, basis }) => {
                *copy >= 1 && (1..=self.summand.as_ref().map_or(0, |s| s.dim())).contains(basis)
            }
            _ => false,
        }
    }

    fn check_index(&self, index: &LazyIndex) -> Result<()> {
        if self.in_domain(index) {
            Ok(())
        } else {
            Err(Error::OutsideIndexDomain(format!("{index} is not a basis label of {}", self.name())))
        }
    }

    fn scalar(&self, q: &BigRational) -> Scalar {
        self.field.from_rational(q).expect("denominators are nonzero")
    }

    /// Bracket of two basis labels.
    pub fn basis_bracket(&self, i: &LazyIndex, j: &LazyIndex) -> Result<LazyElement> {
        self.check_index(i)?;
        self.check_index(j)?;
        let f = self.field;
        let one = || f.one();
        Ok(match self.kind {
            FamilyKind::Example2 => match (i, j) {
                (LazyIndex::E(1), LazyIndex::E(2)) => LazyElement::term(LazyIndex::E(1), one()),
                (LazyIndex::E(k), LazyIndex::E(3)) if *k >= 4 => LazyElement::term(LazyIndex::E(k + 1), one()),
                _ => LazyElement::zero(),
            },
            FamilyKind::RemarkSl2 => match (i, j) {
                (LazyIndex::X(a), op) => self.apply_operator(a, op)?,
                (_, LazyIndex::X(_)) => LazyElement::zero(),
                (u, v) => operator_bracket(f, u, v),
            },
            FamilyKind::SumSimple => match (i, j) {
                (LazyIndex::S { copy: c1, basis: k1 }, LazyIndex::S { copy: c2, basis: k2 }) if c1 == c2 => {
                    let s = self.summand.as_ref().expect("sum-simple has a summand");
                    LazyElement::from_terms(
                        s.basis_bracket(k1 - 1, k2 - 1)
                            .iter()
                            .enumerate()
                            .map(|(k, c)| (LazyIndex::S { copy: *c1, basis: k + 1 }, c.clone())),
                    )
                }
                _ => LazyElement::zero(),
            },
        })
    }

    /// `[x_α, op]`, the right action of an operator on `x_α`.
    fn apply_operator(&self, a: &BigRational, op: &LazyIndex) -> Result<LazyElement> {
        let one = BigRational::one();
        Ok(match op {
            LazyIndex::A => {
                let next = a + &one;
                if next.is_zero() {
                    return Err(Error::OutsideIndexDomain(format!(
                        "[{}, a] = x_{{0}}, which is not a basis label",
                        LazyIndex::X(a.clone())
                    )));
                }
                LazyElement::term(LazyIndex::X(next), self.field.one())
            }
            LazyIndex::B => {
                let coeff = a - &one;
                if coeff.is_zero() {
                    LazyElement::zero()
                } else {
                    LazyElement::term(LazyIndex::X(a - &one), self.scalar(&coeff))
                }
            }
            LazyIndex::C => LazyElement::term(LazyIndex::X(a.clone()), self.scalar(&(a * BigRational::from_integer(2.into())))),
            LazyIndex::Id => LazyElement::term(LazyIndex::X(a.clone()), self.field.one()),
            LazyIndex::X(_) => LazyElement::zero(),
            _ => unreachable!("checked index"),
        })
    }

    /// Bilinear extension of the basis rule.
    pub fn bracket(&self, x: &LazyElement, y: &LazyElement) -> Result<LazyElement> {
        let mut out = LazyElement::zero();
        for (i, ci) in x.terms() {
            for (j, cj) in y.terms() {
                let b = self.basis_bracket(i, j)?;
                let c = ci * cj;
                for (k, ck) in b.terms() {
                    out.add_term(k.clone(), &c * ck);
                }
            }
        }
        Ok(out)
    }

    pub fn rules(&self) -> &'static [&'static str] {
        match self.kind {
            FamilyKind::Example2 => &["tail"],
            FamilyKind::RemarkSl2 => &["H"],
            FamilyKind::SumSimple => &["tail", "displayed"],
        }
    }
}

/// `[u, v] = u∘v - v∘u` for `u, v` among `a, b, c, id`. With `[x, u] = u(x)`:
/// `[a,b] = -id`, `[a,c] = -2a`, `[b,c] = 2b`; `id` is central.
fn operator_bracket(f: Field, u: &LazyIndex, v: &LazyIndex) -> LazyElement {
    use LazyIndex::*;
    let t = |i: LazyIndex, c: i64| LazyElement::term(i, f.from_i64(c));
    match (u, v) {
        (A, B) => t(Id, -1),
        (B, A) => t(Id, 1),
        (A, C) => t(A, -2),
        (C, A) => t(A, 2),
        (B, C) => t(B, 2),
        (C, B) => t(B, -2),
        _ => LazyElement::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn e(i: usize) -> LazyElement {
        LazyElement::basis(q(), LazyIndex::E(i))
    }

    #[test]
    fn example2_brackets() {
        let f = instantiate("example2", FamilyParams::default()).unwrap();
        assert_eq!(f.bracket(&e(4), &e(3)).unwrap(), e(5));
        assert_eq!(f.bracket(&e(1).add(&e(4)), &e(3)).unwrap(), e(5));
        assert_eq!(f.bracket(&e(1), &e(2)).unwrap(), e(1));
        assert!(f.bracket(&e(3), &e(3)).unwrap().is_zero());
        assert!(f.bracket(&e(7), &LazyElement::zero()).unwrap().is_zero());
    }

    #[test]
    fn remark_sl2_rules() {
        let f = instantiate("remark-sl2", FamilyParams::default()).unwrap();
        let x = |n, d| LazyElement::basis(q(), x_index(n, d));
        let b = LazyElement::basis(q(), LazyIndex::B);
        let a = LazyElement::basis(q(), LazyIndex::A);
        let got = f.bracket(&x(1, 2), &b).unwrap();
        assert_eq!(got, LazyElement::term(x_index(-1, 2), q().from_fraction(&(-1).into(), &2.into()).unwrap()));
        assert_eq!(got.to_string(), "-1/2*x_{-1/2}");
        assert!(f.bracket(&a, &x(3, 1)).unwrap().is_zero());
        assert_eq!(f.bracket(&x(1, 2), &a).unwrap(), x(3, 2));
        assert_eq!(f.bracket(&a, &b).unwrap(), LazyElement::term(LazyIndex::Id, q().from_i64(-1)));
        assert!(matches!(f.bracket(&x(-1, 1), &a), Err(Error::OutsideIndexDomain(_))));
        assert!(matches!(f.basis(x_index(0, 1)), Err(Error::OutsideIndexDomain(_))));
    }

    #[test]
    fn sum_simple_is_blockwise() {
        let f = instantiate("sum-simple", FamilyParams::default()).unwrap();
        let s = |copy, basis| LazyElement::basis(q(), LazyIndex::S { copy, basis });
        // [h, e] = 2e in each copy, zero across copies.
        assert_eq!(f.bracket(&s(3, 2), &s(3, 1)).unwrap(), s(3, 1).scale(&q().from_i64(2)));
        assert!(f.bracket(&s(1, 2), &s(2, 1)).unwrap().is_zero());
    }

    #[test]
    fn instantiate_errors() {
        assert!(matches!(instantiate("example9", FamilyParams::default()), Err(Error::UnknownFamily(_))));
        let gf5 = FamilyParams { field: Some(Field::prime(5).unwrap()), summand: None };
        assert!(matches!(instantiate("remark-sl2", gf5), Err(Error::BadParams(_))));
        let abelian = FamilyParams { field: None, summand: Some(corpus::abelian(q(), 2)) };
        assert!(matches!(instantiate("sum-simple", abelian), Err(Error::BadParams(_))));
    }

    #[test]
    fn element_arithmetic_is_canonical() {
        let x = e(1).add(&e(2));
        assert!(x.sub(&x).is_zero());
        assert_eq!(x.sub(&e(2)), e(1));
        assert_eq!(x.to_string(), "e1 + e2");
    }
}
