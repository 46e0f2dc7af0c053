use std::cmp::Ordering;

use super::{vector, Field, Scalar};
use crate::error::{Error, Result};

/// A subspace of `field^ambient_dim`, stored as its canonical reduced
/// row-echelon basis. Two subspaces are equal iff their RREF matrices are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

/// Canonical RREF of the rows spanning a subspace.
///
/// The ambient dimension and field are inferred from the rows, so at least
/// one nonempty row is required; use [`Subspace::span`] when the row set may
/// be empty.
pub fn rref(rows: &[Vec<Scalar>]) -> Result<Subspace> {
    let first = rows.first().ok_or(Error::EmptyAmbient)?;
    if first.is_empty() {
        return Err(Error::EmptyAmbient);
    }
    let field = first[0].field();
    Subspace::span(field, first.len(), rows)
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Self {
        Subspace { field, ambient_dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Self {
        let rows = (0..ambient_dim).map(|i| field.unit_vector(ambient_dim, i)).collect();
        Subspace { field, ambient_dim, rows, pivots: (0..ambient_dim).collect() }
    }

    /// Span of standard basis vectors `e_i` for the given 0-based indices.
    pub fn coordinate(field: Field, ambient_dim: usize, indices: &[usize]) -> Result<Self> {
        let rows = indices
            .iter()
            .map(|&i| {
                if i >= ambient_dim {
                    Err(Error::IndexOutOfRange { index: i + 1, dim: ambient_dim })
                } else {
                    Ok(field.unit_vector(ambient_dim, i))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(field, ambient_dim, &rows)
    }

    pub fn span(field: Field, ambient_dim: usize, rows: &[Vec<Scalar>]) -> Result<Self> {
        for row in rows {
            check_vector(field, ambient_dim, row)?;
        }
        let mut m: Vec<Vec<Scalar>> = rows.to_vec();
        let pivots = row_reduce(&mut m);
        m.truncate(pivots.len());
        Ok(Subspace { field, ambient_dim, rows: m, pivots })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields(self.field.to_string(), other.field.to_string()));
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch { expected: self.ambient_dim, got: other.ambient_dim });
        }
        Ok(())
    }

    /// Remainder of `v` after eliminating every pivot coordinate. Zero iff
    /// `v` lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        check_vector(self.field, self.ambient_dim, v)?;
        Ok(self.reduce_unchecked(v))
    }

    fn reduce_unchecked(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let c = r[p].clone();
                vector::axpy(&mut r, &(-&c), row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(vector::is_zero(&self.reduce(v)?))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.rows.iter().all(|r| vector::is_zero(&other.reduce_unchecked(r))))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if other.is_subspace_of(self)? {
            return Ok(self.clone());
        }
        let rows: Vec<_> = self.rows.iter().chain(other.rows.iter()).cloned().collect();
        Subspace::span(self.field, self.ambient_dim, &rows)
    }

    /// Sum with extra vectors.
    pub fn extend(&self, vectors: &[Vec<Scalar>]) -> Result<Subspace> {
        let mut rows = self.rows.clone();
        for v in vectors {
            check_vector(self.field, self.ambient_dim, v)?;
            rows.push(v.clone());
        }
        Subspace::span(self.field, self.ambient_dim, &rows)
    }

    /// The annihilator `{y : <x, y> = 0 for all x}` under the standard form.
    pub fn annihilator(&self) -> Subspace {
        kernel_unchecked(self.field, self.ambient_dim, &self.rows)
    }

    /// Intersection as the common annihilator of both annihilators.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if self.is_subspace_of(other)? {
            return Ok(self.clone());
        }
        if other.is_subspace_of(self)? {
            return Ok(other.clone());
        }
        let a = self.annihilator();
        let b = other.annihilator();
        let rows: Vec<_> = a.rows.iter().chain(b.rows.iter()).cloned().collect();
        Ok(kernel_unchecked(self.field, self.ambient_dim, &rows))
    }

    /// Complement coordinates for the quotient by this subspace.
    pub fn quotient_coordinates(&self) -> QuotientCoordinates {
        let n = self.ambient_dim;
        let complement: Vec<usize> = (0..n).filter(|c| !self.pivots.contains(c)).collect();
        let mut projection = vec![self.field.zero_vector(n); complement.len()];
        for (t, &c) in complement.iter().enumerate() {
            projection[t][c] = self.field.one();
        }
        // e_p reduces to e_p - row, so its image is minus the row's
        // complement coordinates.
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            for (t, &c) in complement.iter().enumerate() {
                projection[t][p] = -&row[c];
            }
        }
        QuotientCoordinates { field: self.field, ambient_dim: n, projection, complement }
    }

    /// Image of this subspace under a linear map given as a matrix with
    /// `target_dim` rows and `ambient_dim` columns.
    pub fn image_under(&self, matrix: &[Vec<Scalar>], target_dim: usize) -> Result<Subspace> {
        let images = self
            .rows
            .iter()
            .map(|v| vector::mat_vec(matrix, v, self.field, target_dim))
            .collect::<Vec<_>>();
        Subspace::span(self.field, target_dim, &images)
    }

    fn sort_key(&self) -> (usize, &Vec<usize>, &Vec<Vec<Scalar>>) {
        (self.rows.len(), &self.pivots, &self.rows)
    }
}

/// Canonical order: by dimension, then pivot pattern, then entries.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.field, self.ambient_dim)
            .cmp(&(other.field, other.ambient_dim))
            .then_with(|| self.sort_key().cmp(&other.sort_key()))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Projection onto the complement spanned by the non-pivot standard basis
/// vectors of a subspace, together with that complement (the section).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCoordinates {
    field: Field,
    ambient_dim: usize,
    projection: Vec<Vec<Scalar>>,
    complement: Vec<usize>,
}

impl QuotientCoordinates {
    /// `(ambient_dim - dim A) x ambient_dim` matrix.
    pub fn projection(&self) -> &[Vec<Scalar>] {
        &self.projection
    }

    /// Indices of the standard basis vectors forming the section basis.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn quotient_dim(&self) -> usize {
        self.complement.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn project(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        check_vector(self.field, self.ambient_dim, v)?;
        Ok(vector::mat_vec(&self.projection, v, self.field, self.complement.len()))
    }

    /// Section: quotient coordinates back to an ambient representative.
    pub fn lift(&self, coords: &[Scalar]) -> Result<Vec<Scalar>> {
        check_vector(self.field, self.complement.len(), coords)?;
        let mut v = self.field.zero_vector(self.ambient_dim);
        for (c, &i) in coords.iter().zip(&self.complement) {
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// Section basis as ambient vectors.
    pub fn section_basis(&self) -> Vec<Vec<Scalar>> {
        self.complement.iter().map(|&i| self.field.unit_vector(self.ambient_dim, i)).collect()
    }
}

/// `{x : M x = 0}` for a matrix given by rows of length `ncols`.
pub fn kernel(field: Field, ncols: usize, rows: &[Vec<Scalar>]) -> Result<Subspace> {
    for r in rows {
        check_vector(field, ncols, r)?;
    }
    Ok(kernel_unchecked(field, ncols, rows))
}

fn kernel_unchecked(field: Field, ncols: usize, rows: &[Vec<Scalar>]) -> Subspace {
    let mut m = rows.to_vec();
    let pivots = row_reduce(&mut m);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = field.zero_vector(ncols);
        v[free] = field.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -&m[r][free];
        }
        basis.push(v);
    }
    let mut out = basis;
    let piv = row_reduce(&mut out);
    out.truncate(piv.len());
    Subspace { field, ambient_dim: ncols, rows: out, pivots: piv }
}

pub(crate) fn check_vector(field: Field, dim: usize, v: &[Scalar]) -> Result<()> {
    if v.len() != dim {
        return Err(Error::AmbientMismatch { expected: dim, got: v.len() });
    }
    if let Some(bad) = v.iter().find(|s| s.field() != field) {
        return Err(Error::MixedFields(field.to_string(), bad.field().to_string()));
    }
    Ok(())
}

/// In-place Gauss-Jordan elimination to canonical RREF; returns pivot
/// columns. Zero rows end up at the bottom.
fn row_reduce(m: &mut [Vec<Scalar>]) -> Vec<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in m[r].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -&row[c];
                vector::axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&x| Field::Rationals.from_i64(x)).collect()).collect()
    }

    fn gf(p: u64, rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        let f = Field::prime(p).unwrap();
        rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect()
    }

    #[test]
    fn rref_examples() {
        assert_eq!(rref(&q(&[&[1, 1], &[0, 1]])).unwrap().basis(), q(&[&[1, 0], &[0, 1]]).as_slice());
        assert_eq!(rref(&q(&[&[2, 4]])).unwrap().basis(), q(&[&[1, 2]]).as_slice());
        let s = rref(&gf(3, &[&[1, 1, 0], &[1, 1, 1]])).unwrap();
        assert_eq!(s.basis(), gf(3, &[&[1, 1, 0], &[0, 0, 1]]).as_slice());
        assert_eq!(s.pivots(), &[0, 2]);
    }

    #[test]
    fn rref_errors() {
        assert_eq!(rref(&[]), Err(Error::EmptyAmbient));
        assert_eq!(rref(&[vec![]]), Err(Error::EmptyAmbient));
        let mut mixed = q(&[&[1, 0]]);
        mixed[0][1] = Field::prime(3).unwrap().one();
        assert!(matches!(rref(&mixed), Err(Error::MixedFields(..))));
    }

    #[test]
    fn rref_is_idempotent() {
        let s = rref(&q(&[&[3, 6, 9], &[1, 0, 1], &[4, 6, 10]])).unwrap();
        assert_eq!(rref(s.basis()).unwrap(), s);
    }

    #[test]
    fn sum_examples() {
        let a = rref(&q(&[&[1, 0]])).unwrap();
        let b = rref(&q(&[&[0, 1]])).unwrap();
        assert!(a.sum(&b).unwrap().is_full());
        assert_eq!(a.sum(&a).unwrap(), a);
        let a = rref(&q(&[&[1, 1, 0]])).unwrap();
        let b = rref(&q(&[&[1, 2, 0]])).unwrap();
        assert_eq!(a.sum(&b).unwrap().basis(), q(&[&[1, 0, 0], &[0, 1, 0]]).as_slice());
    }

    #[test]
    fn intersect_examples() {
        let a = rref(&q(&[&[1, 0]])).unwrap();
        let full = Subspace::full(Field::Rationals, 2);
        assert_eq!(a.intersect(&full).unwrap(), a);
        let b = rref(&q(&[&[0, 1]])).unwrap();
        assert!(a.intersect(&b).unwrap().is_zero());
        let a = rref(&q(&[&[1, 1, 0], &[0, 0, 1]])).unwrap();
        let b = rref(&q(&[&[1, 1, 1]])).unwrap();
        assert_eq!(a.intersect(&b).unwrap(), b);
    }

    #[test]
    fn contains_examples() {
        let b = rref(&q(&[&[0, 1]])).unwrap();
        assert!(b.contains(&q(&[&[0, 0]])[0]).unwrap());
        assert!(!b.contains(&q(&[&[1, 0]])[0]).unwrap());
        let c = rref(&gf(5, &[&[1, 1, 1]])).unwrap();
        assert!(c.contains(&gf(5, &[&[2, 2, 2]])[0]).unwrap());
        assert!(matches!(c.contains(&gf(5, &[&[2, 2]])[0]), Err(Error::AmbientMismatch { .. })));
    }

    #[test]
    fn mismatched_ambient_is_rejected() {
        let a = Subspace::zero(Field::Rationals, 2);
        let b = Subspace::zero(Field::Rationals, 3);
        assert_eq!(a.sum(&b), Err(Error::AmbientMismatch { expected: 2, got: 3 }));
        assert!(a.intersect(&b).is_err());
    }

    #[test]
    fn quotient_coordinate_examples() {
        let f = Field::Rationals;
        let zero = Subspace::zero(f, 3).quotient_coordinates();
        assert_eq!(zero.projection(), q(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).as_slice());
        let full = Subspace::full(f, 3).quotient_coordinates();
        assert_eq!(full.quotient_dim(), 0);
        let e1 = Subspace::coordinate(f, 3, &[0]).unwrap().quotient_coordinates();
        assert_eq!(e1.complement(), &[1, 2]);
        assert_eq!(e1.project(&q(&[&[7, 2, 3]])[0]).unwrap(), q(&[&[2, 3]])[0]);
    }

    #[test]
    fn projection_after_section_is_identity() {
        let a = rref(&q(&[&[1, 2, 0, 1], &[0, 0, 1, -1]])).unwrap();
        let qc = a.quotient_coordinates();
        for v in qc.section_basis() {
            let coords = qc.project(&v).unwrap();
            assert_eq!(qc.lift(&coords).unwrap(), v);
        }
        // kernel of the projection is exactly A
        for row in a.basis() {
            assert!(vector::is_zero(&qc.project(row).unwrap()));
        }
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let k = kernel(Field::Rationals, 2, &q(&[&[1, 0], &[0, 1]])).unwrap();
        assert!(k.is_zero());
        let k = kernel(Field::Rationals, 3, &q(&[&[1, 1, 0]])).unwrap();
        assert_eq!(k.dim(), 2);
    }
}
