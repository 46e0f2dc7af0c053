mod common;

use common::{as_set, residues, scalars};
use leibniz_core::exactla::Subspace;
use leibniz_core::primes::{all_subspaces, subspace_count};
use leibniz_core::{EnumerationGuard, Field};
use leibniz_oracles as oracle;
use proptest::prelude::*;

fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn rows(p: u64, n: usize, max_rows: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
    prop::collection::vec(prop::collection::vec(0..p, n), 0..=max_rows)
}

fn instance(p: u64) -> impl Strategy<Value = (usize, Vec<Vec<u64>>, Vec<Vec<u64>>, Vec<u64>)> {
    (1usize..=4).prop_flat_map(move |n| (Just(n), rows(p, n, 4), rows(p, n, 4), prop::collection::vec(0..p, n)))
}

fn build(p: u64, n: usize, r: &[Vec<u64>]) -> Subspace {
    let f = gf(p);
    Subspace::span(f, n, &r.iter().map(|v| scalars(f, v)).collect::<Vec<_>>()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn gf2_operations_match_enumeration((n, a, b, v) in instance(2)) {
        let (sa, sb) = (build(2, n, &a), build(2, n, &b));
        let (oa, ob) = (oracle::span(2, n, &a), oracle::span(2, n, &b));
        prop_assert_eq!(as_set(&sa), oa.clone());
        prop_assert_eq!(sa.dim(), oracle::dim(2, &oa));
        prop_assert_eq!(as_set(&sa.sum(&sb).unwrap()), oracle::sum(2, n, &oa, &ob));
        prop_assert_eq!(as_set(&sa.intersect(&sb).unwrap()), oracle::intersection(&oa, &ob));
        prop_assert_eq!(as_set(&sa.annihilator()), oracle::annihilator(2, n, &oa));
        prop_assert_eq!(sa.contains(&scalars(gf(2), &v)).unwrap(), oa.contains(&v));
        prop_assert_eq!(sa.is_subspace_of(&sb).unwrap(), oa.is_subset(&ob));
    }

    #[test]
    fn gf3_dimension_identity((n, a, b, _v) in instance(3)) {
        let (sa, sb) = (build(3, n, &a), build(3, n, &b));
        let s = sa.sum(&sb).unwrap();
        let m = sa.intersect(&sb).unwrap();
        prop_assert_eq!(s.dim() + m.dim(), sa.dim() + sb.dim());
    }

    #[test]
    fn modular_law((n, a, b, c) in (1usize..=4).prop_flat_map(|n| (Just(n), rows(3, n, 3), rows(3, n, 3), rows(3, n, 3)))) {
        // A ⊆ C ⇒ A + (B ∩ C) = (A + B) ∩ C
        let (sa, sb) = (build(3, n, &a), build(3, n, &b));
        let sc = build(3, n, &c).sum(&sa).unwrap();
        let lhs = sa.sum(&sb.intersect(&sc).unwrap()).unwrap();
        let rhs = sa.sum(&sb).unwrap().intersect(&sc).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduce_is_zero_exactly_on_members((n, a, _b, v) in instance(5)) {
        let sa = build(5, n, &a);
        let r = sa.reduce(&scalars(gf(5), &v)).unwrap();
        prop_assert_eq!(r.iter().all(|c| c.is_zero()), oracle::span(5, n, &a).contains(&v));
    }

    #[test]
    fn rational_quotient_round_trip(raw in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 0..4), v in prop::collection::vec(-5i64..=5, 4)) {
        let f = Field::Rationals;
        let u = Subspace::span(f, 4, &raw.iter().map(|r| r.iter().map(|&c| f.from_i64(c)).collect()).collect::<Vec<_>>()).unwrap();
        let q = u.quotient_coordinates();
        prop_assert_eq!(q.quotient_dim() + u.dim(), 4);
        let x: Vec<_> = v.iter().map(|&c| f.from_i64(c)).collect();
        let back = q.lift(&q.project(&x).unwrap()).unwrap();
        let diff: Vec<_> = x.iter().zip(&back).map(|(a, b)| a - b).collect();
        prop_assert!(u.contains(&diff).unwrap());
    }
}

#[test]
fn enumerated_subspaces_match_brute_force() {
    for (p, n) in [(2u64, 1usize), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
        let ours = all_subspaces(gf(p), n, EnumerationGuard::default()).unwrap();
        let theirs = oracle::all_subspaces(p, n);
        assert_eq!(ours.len() as u128, subspace_count(p, n));
        let mut sets: Vec<_> = ours.iter().map(as_set).collect();
        sets.sort();
        assert_eq!(sets, theirs, "GF({p})^{n}");
    }
}

#[test]
fn canonical_form_is_unique() {
    // Every generating set of the same space gives the same basis.
    let f = gf(3);
    for s in oracle::all_subspaces(3, 3) {
        let all: Vec<Vec<u64>> = s.iter().cloned().collect();
        let from_all = Subspace::span(f, 3, &all.iter().map(|v| scalars(f, v)).collect::<Vec<_>>()).unwrap();
        let rev: Vec<_> = all.iter().rev().map(|v| scalars(f, v)).collect();
        assert_eq!(from_all, Subspace::span(f, 3, &rev).unwrap());
        assert_eq!(from_all.basis().iter().map(|b| residues(b)).collect::<std::collections::BTreeSet<_>>().len(), from_all.dim());
    }
}
