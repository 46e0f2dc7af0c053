mod common;

use leibniz_core::algebra::{direct_sum, direct_sum_inclusions};
use leibniz_core::chains::{blockwise_chain, pullback_chain, qa_witness, random_chain, verify_witness, ChainSpec, Side};
use leibniz_core::corpus::{rational_corpus, small_prime_corpus};
use leibniz_core::series::{derived_length, derived_series, is_hypercentral, is_solvable, lower_central_series};
use leibniz_core::{corpus, enumerate_ideals, EnumerationGuard, Field, LeibnizAlgebra, Subspace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn everything() -> Vec<LeibnizAlgebra> {
    rational_corpus().into_iter().chain(small_prime_corpus()).collect()
}

#[test]
fn solvable_algebras_have_witnesses_within_derived_length() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for g in everything().into_iter().filter(is_solvable) {
        let bound = derived_length(&g).unwrap();
        for _ in 0..25 {
            let chain = random_chain(&g, &mut rng, g.dim() + 2).unwrap();
            let r = qa_witness(&g, &chain, bound, Side::Both).unwrap();
            let m = r.witness_m.unwrap_or_else(|| panic!("{} has no witness", g.name()));
            assert!(m <= bound);
            assert!(verify_witness(&g, &chain, m, Side::Left) && verify_witness(&g, &chain, m, Side::Right));
            // Past the witness every m also works.
            assert!((m..=bound).all(|k| verify_witness(&g, &chain, k, Side::Both)));
        }
    }
}

#[test]
fn hypercentral_implies_solvable() {
    for g in everything() {
        if is_hypercentral(&g) {
            assert!(is_solvable(&g), "{}", g.name());
        }
    }
}

/// Ideals to quotient by: the enumerated lattice over GF(p), a few canonical
/// ones over Q.
fn quotient_ideals(g: &LeibnizAlgebra) -> Vec<Subspace> {
    if g.field().is_finite() {
        return enumerate_ideals(g, EnumerationGuard::default()).unwrap().ideals().to_vec();
    }
    let mut out: Vec<Subspace> = Vec::new();
    let candidates = [vec![g.zero_ideal(), g.leib().unwrap()], derived_series(g).terms, lower_central_series(g).terms];
    for u in candidates.into_iter().flatten() {
        if !out.contains(&u) {
            out.push(u);
        }
    }
    out
}

#[test]
fn pulled_back_witnesses_descend_to_quotients() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for g in everything() {
        for j in quotient_ideals(&g) {
            if j.is_full() {
                continue;
            }
            let q = g.quotient(&j).unwrap();
            for _ in 0..10 {
                let chain = random_chain(&q.algebra, &mut rng, q.algebra.dim() + 1).unwrap();
                let pulled = pullback_chain(&g, &q, &chain).unwrap();
                for k in 0..chain.len() {
                    assert_eq!(&q.project_subspace(pulled.term(k).unwrap()).unwrap(), chain.term(k).unwrap());
                    assert!(j.is_subspace_of(pulled.term(k).unwrap()).unwrap());
                }
                let depth = g.dim() + 1;
                let up = qa_witness(&g, &pulled, depth, Side::Both).unwrap();
                let down = qa_witness(&q.algebra, &chain, depth, Side::Both).unwrap();
                if let Some(m) = up.witness_m {
                    assert!(verify_witness(&q.algebra, &chain, m, Side::Both), "{} / {:?}", g.name(), j);
                    assert!(down.witness_m.unwrap() <= m);
                }
            }
        }
    }
}

#[test]
fn blockwise_chains_take_the_larger_witness() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let solvable: Vec<_> = rational_corpus().into_iter().filter(is_solvable).filter(|g| g.dim() <= 4).collect();
    for a in &solvable {
        for b in &solvable {
            let s = direct_sum(a, b).unwrap();
            let (ia, ib) = direct_sum_inclusions(a, b);
            for _ in 0..3 {
                let ca = random_chain(a, &mut rng, 4).unwrap();
                let cb = random_chain(b, &mut rng, 4).unwrap();
                let cs = blockwise_chain(&s, &ia, &ib, &ca, &cb).unwrap();
                let depth = 4;
                let wa = qa_witness(a, &ca, depth, Side::Both).unwrap().witness_m.unwrap();
                let wb = qa_witness(b, &cb, depth, Side::Both).unwrap().witness_m.unwrap();
                let ws = qa_witness(&s, &cs, depth, Side::Both).unwrap().witness_m.unwrap();
                assert_eq!(ws, wa.max(wb), "{} + {}", a.name(), b.name());
            }
        }
    }
}

#[test]
fn prime_radical_properties() {
    let mut corpus: Vec<_> = small_prime_corpus().into_iter().filter(|g| g.dim() <= 4).collect();
    corpus.push(corpus::sl2(Field::prime(5).unwrap()));
    for g in corpus {
        let lattice = enumerate_ideals(&g, EnumerationGuard::default()).unwrap();
        let ideals = lattice.ideals();
        for h in ideals {
            let r = lattice.prime_radical(h).unwrap();
            assert_eq!(r, lattice.prime_radical_all(h).unwrap());
            assert!(h.is_subspace_of(&r).unwrap());
            assert_eq!(lattice.prime_radical(&r).unwrap(), r, "idempotent on {}", g.name());
            for k in ideals {
                let meet = h.intersect(k).unwrap();
                let lhs = lattice.prime_radical(&meet).unwrap();
                let rhs = r.intersect(&lattice.prime_radical(k).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{}", g.name());
            }
        }
        let rad = lattice.prime_radical(&g.zero_ideal()).unwrap();
        if !rad.is_full() {
            let q = g.quotient(&rad).unwrap();
            let ql = enumerate_ideals(&q.algebra, EnumerationGuard::default()).unwrap();
            assert!(ql.prime_radical(&q.algebra.zero_ideal()).unwrap().is_zero(), "{}", g.name());
        }
        // Primes, semiprimes and maximal ideals relate as expected.
        for p in lattice.primes() {
            assert!(lattice.is_semiprime_ideal(p).unwrap());
        }
    }
}

#[test]
fn sl2_mod5_radical_is_leib() {
    let g = corpus::sl2(Field::prime(5).unwrap());
    let lattice = enumerate_ideals(&g, EnumerationGuard::default()).unwrap();
    assert_eq!(lattice.len(), 2);
    assert!(lattice.is_prime_ideal(&g.zero_ideal()).unwrap());
    assert_eq!(lattice.prime_radical(&g.zero_ideal()).unwrap(), g.leib().unwrap());
}

#[test]
fn explored_chain_witness_is_bounded_by_its_length() {
    let g = corpus::cyclic(Field::Rationals, 4);
    let terms: Vec<_> = lower_central_series(&g).terms;
    let spec = leibniz_core::chains::validate_chain(&g, ChainSpec::explored(terms.clone())).unwrap();
    let r = qa_witness(&g, &spec, 100, Side::Both).unwrap();
    assert_eq!(r.search_depth, terms.len() - 1);
}

/// Coordinates of the members of `u ⊆ i` in the reduced basis of `i`.
fn restrict(i: &Subspace, u: &Subspace) -> Subspace {
    let rows: Vec<_> = u.basis().iter().map(|v| i.pivots().iter().map(|&p| v[p].clone()).collect()).collect();
    Subspace::span(i.field(), i.dim(), &rows).unwrap()
}

#[test]
fn extension_by_solvable_quotient_bounds_the_witness() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut cases = 0;
    for g in everything() {
        for i in quotient_ideals(&g) {
            if i.is_zero() || i.is_full() {
                continue;
            }
            let q = g.quotient(&i).unwrap();
            let Some(p) = derived_length(&q.algebra) else { continue };
            let sub = g.subalgebra(&i).unwrap();
            for _ in 0..5 {
                let chain = random_chain(&g, &mut rng, g.dim() + 1).unwrap();
                let inside: Vec<_> = chain.terms.iter().map(|t| restrict(&i, &t.intersect(&i).unwrap())).collect();
                let inside = leibniz_core::chains::validate_chain(&sub, ChainSpec::finite(inside)).unwrap();
                let depth = 2 * g.dim() + 2;
                let Some(r) = qa_witness(&sub, &inside, depth, Side::Both).unwrap().witness_m else { continue };
                let m = qa_witness(&g, &chain, depth, Side::Both).unwrap().witness_m.unwrap();
                assert!(m <= p + r + 1, "{}: m={m} p={p} r={r}", g.name());
                cases += 1;
            }
        }
    }
    assert!(cases > 50);
}
