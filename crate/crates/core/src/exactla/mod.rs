//! Exact scalars over Q and GF(p) and canonical subspace linear algebra.

mod field;
mod scalar;
mod subspace;

pub use field::Field;
pub use scalar::Scalar;
pub use subspace::{kernel, rref, QuotientCoordinates, Subspace};

pub(crate) use subspace::check_vector;

/// Dense coordinate-vector helpers shared by the algebra modules.
pub mod vector {
    use super::{Field, Scalar};

    pub fn is_zero(v: &[Scalar]) -> bool {
        v.iter().all(Scalar::is_zero)
    }

    /// `y += a * x`
    pub fn axpy(y: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
        if a.is_zero() {
            return;
        }
        for (yi, xi) in y.iter_mut().zip(x) {
            if !xi.is_zero() {
                *yi = &*yi + &(a * xi);
            }
        }
    }

    pub fn add(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    pub fn sub(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        x.iter().zip(y).map(|(a, b)| a - b).collect()
    }

    pub fn scale(a: &Scalar, x: &[Scalar]) -> Vec<Scalar> {
        x.iter().map(|xi| a * xi).collect()
    }

    pub fn dot(x: &[Scalar], y: &[Scalar], field: Field) -> Scalar {
        x.iter().zip(y).fold(field.zero(), |acc, (a, b)| &acc + &(a * b))
    }

    /// `M v` for `M` with `rows` rows.
    pub fn mat_vec(m: &[Vec<Scalar>], v: &[Scalar], field: Field, rows: usize) -> Vec<Scalar> {
        (0..rows).map(|r| dot(&m[r], v, field)).collect()
    }

    /// Indices (0-based) of nonzero coordinates.
    pub fn support(v: &[Scalar]) -> Vec<usize> {
        v.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(i, _)| i).collect()
    }
}
