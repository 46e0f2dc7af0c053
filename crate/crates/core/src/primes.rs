//! Ideal lattices over prime fields and the prime, semiprime and maximal
//! ideal predicates that quantify over them.
//!
//! The predicates quantify over every ideal of `g`, so they are only
//! answered once the full lattice is in hand. Over Q they refuse.

use std::collections::{BTreeSet, VecDeque};
use std::sync::OnceLock;

use crate::algebra::LeibnizAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{Field, Scalar, Subspace};

pub const DEFAULT_GUARD: u64 = 1_000_000;

/// Upper bound on the work an enumeration may do, measured in candidate
/// vectors (principal closures) or candidate subspaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationGuard(pub u64);

impl Default for EnumerationGuard {
    fn default() -> Self {
        EnumerationGuard(DEFAULT_GUARD)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeProvenance {
    PrincipalJoinClosure,
    ExhaustiveSubspaceFilter,
}

impl LatticeProvenance {
    pub fn as_str(self) -> &'static str {
        match self {
            LatticeProvenance::PrincipalJoinClosure => "principal-join-closure",
            LatticeProvenance::ExhaustiveSubspaceFilter => "exhaustive-subspace-filter",
        }
    }
}

/// Every two-sided ideal of a finite algebra, sorted canonically.
#[derive(Debug)]
pub struct IdealLattice {
    algebra: LeibnizAlgebra,
    ideals: Vec<Subspace>,
    provenance: LatticeProvenance,
    products: OnceLock<Vec<Vec<Subspace>>>,
    primes: OnceLock<Vec<usize>>,
}

fn require_finite(g: &LeibnizAlgebra) -> Result<u64> {
    match g.field() {
        Field::Prime(p) => Ok(p),
        f => Err(Error::NotFiniteField(f.to_string())),
    }
}

fn check_guard(estimate: u128, guard: EnumerationGuard) -> Result<()> {
    if estimate > guard.0 as u128 {
        Err(Error::EnumerationTooLarge { estimate, guard: guard.0 })
    } else {
        Ok(())
    }
}

fn pow(p: u64, n: usize) -> u128 {
    (0..n).fold(1u128, |acc, _| acc.saturating_mul(p as u128))
}

/// Vectors of `GF(p)^n` whose first nonzero coordinate is 1: one per line.
fn projective_points(field: Field, p: u64, n: usize) -> impl Iterator<Item = Vec<Scalar>> {
    let total = pow(p, n) as u64;
    (1..total).filter_map(move |mut code| {
        let mut digits = vec![0u64; n];
        for d in digits.iter_mut().rev() {
            *d = code % p;
            code /= p;
        }
        let lead = digits.iter().find(|&&d| d != 0).copied();
        (lead == Some(1)).then(|| digits.iter().map(|&d| field.element(d)).collect())
    })
}

/// Every ideal is the sum of the principal ideals of its elements, so the
/// lattice is the join-closure of the principal ideals.
pub fn enumerate_ideals(g: &LeibnizAlgebra, guard: EnumerationGuard) -> Result<IdealLattice> {
    let p = require_finite(g)?;
    let n = g.dim();
    check_guard(pow(p, n).saturating_sub(1), guard)?;
    let principals: BTreeSet<Subspace> =
        projective_points(g.field(), p, n).map(|v| g.ideal_closure_of(&g.span(&[v]).expect("in range"))).collect();
    let mut lattice: BTreeSet<Subspace> = BTreeSet::new();
    let mut queue = VecDeque::new();
    lattice.insert(g.zero_ideal());
    queue.push_back(g.zero_ideal());
    while let Some(i) = queue.pop_front() {
        for pr in &principals {
            let j = i.sum(pr).expect("same ambient");
            if !lattice.contains(&j) {
                lattice.insert(j.clone());
                queue.push_back(j);
            }
        }
    }
    Ok(IdealLattice::new(g.clone(), lattice.into_iter().collect(), LatticeProvenance::PrincipalJoinClosure))
}

/// Number of subspaces of `GF(p)^n`.
pub fn subspace_count(p: u64, n: usize) -> u128 {
    (0..=n).map(|k| gaussian_binomial(p, n, k)).fold(0u128, u128::saturating_add)
}

fn gaussian_binomial(p: u64, n: usize, k: usize) -> u128 {
    let q = p as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num = num.saturating_mul(q.saturating_pow((n - i) as u32) - 1);
        den = den.saturating_mul(q.saturating_pow((i + 1) as u32) - 1);
    }
    num / den
}

/// All subspaces of `GF(p)^n`, generated directly in reduced row echelon
/// form: choose the pivot columns, then fill the free entries.
pub fn all_subspaces(field: Field, n: usize, guard: EnumerationGuard) -> Result<Vec<Subspace>> {
    let p = match field {
        Field::Prime(p) => p,
        f => return Err(Error::NotFiniteField(f.to_string())),
    };
    check_guard(subspace_count(p, n), guard)?;
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let pivots: Vec<usize> = (0..n).filter(|c| mask >> c & 1 == 1).collect();
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| ((pc + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let combos = pow(p, free.len()) as u64;
        for mut code in 0..combos {
            let mut rows: Vec<Vec<Scalar>> = pivots
                .iter()
                .map(|&pc| {
                    let mut row = field.zero_vector(n);
                    row[pc] = field.one();
                    row
                })
                .collect();
            for &(r, c) in &free {
                rows[r][c] = field.element(code % p);
                code /= p;
            }
            out.push(Subspace::span(field, n, &rows).expect("consistent rows"));
        }
    }
    out.sort();
    Ok(out)
}

/// Lattice by brute force: filter every subspace through the ideal test.
pub fn enumerate_ideals_exhaustive(g: &LeibnizAlgebra, guard: EnumerationGuard) -> Result<IdealLattice> {
    require_finite(g)?;
    let ideals = all_subspaces(g.field(), g.dim(), guard)?
        .into_iter()
        .filter(|u| g.is_ideal(u).expect("same ambient"))
        .collect();
    Ok(IdealLattice::new(g.clone(), ideals, LatticeProvenance::ExhaustiveSubspaceFilter))
}

impl IdealLattice {
    fn new(algebra: LeibnizAlgebra, ideals: Vec<Subspace>, provenance: LatticeProvenance) -> Self {
        IdealLattice { algebra, ideals, provenance, products: OnceLock::new(), primes: OnceLock::new() }
    }

    pub fn algebra(&self) -> &LeibnizAlgebra {
        &self.algebra
    }

    pub fn ideals(&self) -> &[Subspace] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn provenance(&self) -> LatticeProvenance {
        self.provenance
    }

    pub fn index_of(&self, u: &Subspace) -> Option<usize> {
        self.ideals.binary_search(u).ok()
    }

    fn products(&self) -> &Vec<Vec<Subspace>> {
        self.products.get_or_init(|| {
            self.ideals
                .iter()
                .map(|a| self.ideals.iter().map(|b| self.algebra.product_unchecked(a, b)).collect())
                .collect()
        })
    }

    /// `[I_a, I_b]` for lattice indices `a, b`.
    pub fn product(&self, a: usize, b: usize) -> &Subspace {
        &self.products()[a][b]
    }

    fn check_ideal(&self, k: &Subspace) -> Result<()> {
        if k.ambient_dim() != self.algebra.dim() {
            return Err(Error::AmbientMismatch { expected: self.algebra.dim(), got: k.ambient_dim() });
        }
        if self.index_of(k).is_none() {
            return Err(Error::NotAnIdeal);
        }
        Ok(())
    }

    fn check_proper(&self, k: &Subspace) -> Result<()> {
        self.check_ideal(k)?;
        if k.is_full() {
            return Err(Error::NotProper);
        }
        Ok(())
    }

    fn within(a: &Subspace, b: &Subspace) -> bool {
        a.is_subspace_of(b).expect("same ambient")
    }

    /// `[h1, h2] ⊆ K` implies `h1 ⊆ K` or `h2 ⊆ K`, over all ideal pairs.
    pub fn is_prime_ideal(&self, k: &Subspace) -> Result<bool> {
        self.check_proper(k)?;
        Ok(self.prime_test(k))
    }

    fn prime_test(&self, k: &Subspace) -> bool {
        let n = self.ideals.len();
        (0..n).all(|a| {
            Self::within(&self.ideals[a], k)
                || (0..n).all(|b| !Self::within(self.product(a, b), k) || Self::within(&self.ideals[b], k))
        })
    }

    /// `[h, h] ⊆ I` implies `h ⊆ I`.
    pub fn is_semiprime_ideal(&self, i: &Subspace) -> Result<bool> {
        self.check_proper(i)?;
        Ok((0..self.ideals.len()).all(|a| !Self::within(self.product(a, a), i) || Self::within(&self.ideals[a], i)))
    }

    /// No ideal lies strictly between `J` and `g`. `J = g` answers false.
    pub fn is_maximal_ideal(&self, j: &Subspace) -> Result<bool> {
        self.check_ideal(j)?;
        if j.is_full() {
            return Ok(false);
        }
        Ok(!self.ideals.iter().any(|m| m != j && !m.is_full() && Self::within(j, m)))
    }

    /// Indices of all proper prime ideals.
    fn prime_indices(&self) -> &[usize] {
        self.primes.get_or_init(|| {
            (0..self.ideals.len()).filter(|&i| !self.ideals[i].is_full() && self.prime_test(&self.ideals[i])).collect()
        })
    }

    pub fn primes(&self) -> Vec<&Subspace> {
        self.prime_indices().iter().map(|&i| &self.ideals[i]).collect()
    }

    pub fn primes_containing(&self, h: &Subspace) -> Result<Vec<&Subspace>> {
        self.check_ideal(h)?;
        Ok(self.primes().into_iter().filter(|p| Self::within(h, p)).collect())
    }

    /// Primes over `h` that contain no smaller prime over `h`.
    pub fn minimal_primes_over(&self, h: &Subspace) -> Result<Vec<&Subspace>> {
        let over = self.primes_containing(h)?;
        Ok(over.iter().filter(|p| !over.iter().any(|q| q != *p && Self::within(q, p))).copied().collect())
    }

    /// Intersection of the minimal primes over `h`; `g` when there are none.
    pub fn prime_radical(&self, h: &Subspace) -> Result<Subspace> {
        Ok(self.intersect_all(&self.minimal_primes_over(h)?))
    }

    /// Intersection of every prime containing `h`; agrees with
    /// [`prime_radical`](Self::prime_radical).
    pub fn prime_radical_all(&self, h: &Subspace) -> Result<Subspace> {
        Ok(self.intersect_all(&self.primes_containing(h)?))
    }

    fn intersect_all(&self, family: &[&Subspace]) -> Subspace {
        family.iter().fold(self.algebra.full(), |acc, p| acc.intersect(p).expect("same ambient"))
    }

    /// Algebra-level primeness measured against `Leib(g)`: whenever
    /// `[h1, h2] ⊆ Leib(g)`, one of the ideals lies in `Leib(g)`.
    pub fn is_prime_algebra(&self) -> Result<bool> {
        let leib = self.algebra.leib()?;
        let n = self.ideals.len();
        Ok((0..n).all(|a| {
            Self::within(&self.ideals[a], &leib)
                || (0..n).all(|b| !Self::within(self.product(a, b), &leib) || Self::within(&self.ideals[b], &leib))
        }))
    }

    /// `[h, h] ⊆ Leib(g)` implies `h ⊆ Leib(g)`.
    pub fn is_semiprime_algebra(&self) -> Result<bool> {
        let leib = self.algebra.leib()?;
        Ok((0..self.ideals.len())
            .all(|a| !Self::within(self.product(a, a), &leib) || Self::within(&self.ideals[a], &leib)))
    }
}
