#![allow(dead_code)]

use leibniz_core::{Field, LeibnizAlgebra, Scalar, Subspace};
use leibniz_oracles as oracle;

pub fn residues(v: &[Scalar]) -> Vec<u64> {
    v.iter().map(|c| c.as_residue().expect("finite field scalar")).collect()
}

pub fn scalars(field: Field, v: &[u64]) -> Vec<Scalar> {
    v.iter().map(|&c| field.from_i64(c as i64)).collect()
}

pub fn as_set(u: &Subspace) -> oracle::VSet {
    let p = u.field().characteristic();
    let gens: Vec<_> = u.basis().iter().map(|b| residues(b)).collect();
    oracle::span(p, u.ambient_dim(), &gens)
}

pub fn as_table(g: &LeibnizAlgebra) -> oracle::FiniteTable {
    let n = g.dim();
    let p = g.field().characteristic();
    let t = (0..n).map(|i| (0..n).map(|j| residues(g.basis_bracket(i, j))).collect()).collect();
    oracle::FiniteTable { p, n, t }
}

pub fn rational_table(g: &LeibnizAlgebra) -> Vec<Vec<Vec<num_rational::BigRational>>> {
    let n = g.dim();
    (0..n)
        .map(|i| (0..n).map(|j| g.basis_bracket(i, j).iter().map(|c| c.as_rational().unwrap().clone()).collect()).collect())
        .collect()
}

/// 1-based coordinate span.
pub fn span(g: &LeibnizAlgebra, idx: &[usize]) -> Subspace {
    g.coordinate_span(&idx.iter().map(|i| i - 1).collect::<Vec<_>>())
}
