//! Built-in algebras used by the test suites and the CLI corpus files.

use crate::algebra::{build_algebra, BracketEntry, LeibnizAlgebra};
use crate::exactla::Field;

/// `(i, j, [(k, c), ...])`: `[e_i, e_j] = Σ c e_k`, 1-based.
type IntEntry<'a> = (usize, usize, &'a [(usize, i64)]);

fn entries(field: Field, dim: usize, spec: &[IntEntry]) -> Vec<BracketEntry> {
    spec.iter()
        .map(|(i, j, terms)| BracketEntry::from_ints(field, dim, *i, *j, terms).expect("corpus indices are in range"))
        .collect()
}

fn make(name: &str, field: Field, dim: usize, spec: &[IntEntry]) -> LeibnizAlgebra {
    build_algebra(name, field, dim, &entries(field, dim, spec)).expect("corpus algebra is well formed")
}

/// Six-dimensional right Leibniz algebra:
/// `[e2,e2]=e1, [e3,e3]=e4, [e4,e3]=e5, [e5,e3]=e6`.
pub fn example1(field: Field) -> LeibnizAlgebra {
    make("ex1", field, 6, &[(2, 2, &[(1, 1)]), (3, 3, &[(4, 1)]), (4, 3, &[(5, 1)]), (5, 3, &[(6, 1)])])
}

pub fn abelian(field: Field, dim: usize) -> LeibnizAlgebra {
    LeibnizAlgebra::abelian(&format!("abelian{dim}"), field, dim).expect("odd characteristic")
}

/// `[e1, e2] = e1`, all else zero. Right Leibniz, not left.
pub fn nonabelian2(field: Field) -> LeibnizAlgebra {
    make("nonabelian2", field, 2, &[(1, 2, &[(1, 1)])])
}

/// `[e2, e2] = e1`: the smallest non-Lie Leibniz algebra; nilpotent.
pub fn square2(field: Field) -> LeibnizAlgebra {
    make("square2", field, 2, &[(2, 2, &[(1, 1)])])
}

/// Cyclic nilpotent right Leibniz algebra `[e_i, e1] = e_{i+1}`, `i < dim`.
pub fn cyclic(field: Field, dim: usize) -> LeibnizAlgebra {
    let terms: Vec<[(usize, i64); 1]> = (1..dim).map(|i| [(i + 1, 1)]).collect();
    let spec: Vec<IntEntry> = terms.iter().enumerate().map(|(k, t)| (k + 1, 1, &t[..])).collect();
    make(&format!("cyclic{dim}"), field, dim, &spec)
}

/// Three-dimensional Heisenberg Lie algebra `[e1, e2] = e3`.
pub fn heisenberg(field: Field) -> LeibnizAlgebra {
    make("heisenberg", field, 3, &[(1, 2, &[(3, 1)]), (2, 1, &[(3, -1)])])
}

/// `sl2` in the basis `e1 = e, e2 = h, e3 = f`.
pub fn sl2(field: Field) -> LeibnizAlgebra {
    make(
        "sl2",
        field,
        3,
        &[
            (2, 1, &[(1, 2)]),
            (1, 2, &[(1, -2)]),
            (2, 3, &[(3, -2)]),
            (3, 2, &[(3, 2)]),
            (1, 3, &[(2, 1)]),
            (3, 1, &[(2, -1)]),
        ],
    )
}

/// Every built-in algebra over Q.
pub fn rational_corpus() -> Vec<LeibnizAlgebra> {
    let q = Field::Rationals;
    vec![
        example1(q),
        abelian(q, 2),
        abelian(q, 3),
        nonabelian2(q),
        square2(q),
        cyclic(q, 4),
        heisenberg(q),
        sl2(q),
    ]
}

/// Prime-field algebras of dimension at most 4, small enough for exhaustive
/// lattice work.
pub fn small_prime_corpus() -> Vec<LeibnizAlgebra> {
    let f3 = Field::prime(3).expect("prime");
    let f5 = Field::prime(5).expect("prime");
    vec![
        abelian(f3, 1).with_name("abelian1_gf3"),
        abelian(f3, 2).with_name("abelian2_gf3"),
        nonabelian2(f3).with_name("nonabelian2_gf3"),
        square2(f3).with_name("square2_gf3"),
        heisenberg(f3).with_name("heisenberg_gf3"),
        cyclic(f3, 4).with_name("cyclic4_gf3"),
        nonabelian2(f5).with_name("nonabelian2_gf5"),
        square2(f5).with_name("square2_gf5"),
        sl2(f5).with_name("sl2_gf5"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Convention;

    #[test]
    fn conventions_of_the_corpus() {
        let q = Field::Rationals;
        assert_eq!(example1(q).convention(), Convention::Right);
        assert_eq!(nonabelian2(q).convention(), Convention::Right);
        assert_eq!(square2(q).convention(), Convention::Both);
        assert_eq!(cyclic(q, 4).convention(), Convention::Right);
        assert_eq!(heisenberg(q).convention(), Convention::Both);
        assert_eq!(sl2(q).convention(), Convention::Both);
        assert!(sl2(q).is_antisymmetric());
    }

    #[test]
    fn every_corpus_member_has_a_convention() {
        for g in rational_corpus().into_iter().chain(small_prime_corpus()) {
            assert_ne!(g.convention(), Convention::Neither, "{}", g.name());
        }
    }
}
