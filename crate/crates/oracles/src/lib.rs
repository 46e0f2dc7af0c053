//! Brute-force reference computations for the test suites.
//!
//! Nothing here shares code with `leibniz-core`. Over GF(p) everything is
//! done on explicit sets of vectors: a subspace is the set of all its
//! elements, an ideal is found by testing every element, and a dimension
//! is read off the set size. Over Q the identity check is a plain triple
//! loop over basis vectors.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// A vector over GF(p) with residues in `0..p`.
pub type V = Vec<u64>;

/// A subspace as the set of all of its vectors.
pub type VSet = BTreeSet<V>;

pub fn zero(n: usize) -> V {
    vec![0; n]
}

pub fn add(p: u64, x: &[u64], y: &[u64]) -> V {
    x.iter().zip(y).map(|(a, b)| (a + b) % p).collect()
}

pub fn scale(p: u64, c: u64, x: &[u64]) -> V {
    x.iter().map(|a| a * c % p).collect()
}

pub fn dot(p: u64, x: &[u64], y: &[u64]) -> u64 {
    x.iter().zip(y).fold(0, |acc, (a, b)| (acc + a * b) % p)
}

/// Every vector of `GF(p)^n`, in lexicographic order.
pub fn all_vectors(p: u64, n: usize) -> Vec<V> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: V| {
                (0..p).map(move |d| {
                    let mut w = v.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out
}

/// Closure of `gens ∪ {0}` under addition and scaling.
pub fn span(p: u64, n: usize, gens: &[V]) -> VSet {
    let mut set: VSet = BTreeSet::from([zero(n)]);
    for g in gens {
        if set.contains(g) {
            continue;
        }
        let current: Vec<V> = set.iter().cloned().collect();
        for v in current {
            for c in 1..p {
                set.insert(add(p, &v, &scale(p, c, g)));
            }
        }
    }
    set
}

/// `log_p |set|`.
pub fn dim(p: u64, set: &VSet) -> usize {
    let mut size = set.len() as u64;
    let mut d = 0;
    while size > 1 {
        assert_eq!(size % p, 0, "set size is not a power of p");
        size /= p;
        d += 1;
    }
    d
}

/// Every subspace of `GF(p)^n`, found by joining spans of single vectors
/// until nothing new appears.
pub fn all_subspaces(p: u64, n: usize) -> Vec<VSet> {
    let vectors = all_vectors(p, n);
    let mut found: BTreeSet<VSet> = BTreeSet::from([span(p, n, &[])]);
    let mut frontier: Vec<VSet> = found.iter().cloned().collect();
    while let Some(s) = frontier.pop() {
        for v in &vectors {
            if s.contains(v) {
                continue;
            }
            let mut gens: Vec<V> = s.iter().cloned().collect();
            gens.push(v.clone());
            let t = span(p, n, &gens);
            if found.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    found.into_iter().collect()
}

pub fn sum(p: u64, n: usize, a: &VSet, b: &VSet) -> VSet {
    let gens: Vec<V> = a.iter().chain(b.iter()).cloned().collect();
    span(p, n, &gens)
}

pub fn intersection(a: &VSet, b: &VSet) -> VSet {
    a.intersection(b).cloned().collect()
}

/// `{ y : y·a = 0 for all a in set }`.
pub fn annihilator(p: u64, n: usize, set: &VSet) -> VSet {
    all_vectors(p, n).into_iter().filter(|y| set.iter().all(|a| dot(p, y, a) == 0)).collect()
}

/// A structure-constant table over GF(p), `t[i][j] = [e_i, e_j]`.
#[derive(Clone, Debug)]
pub struct FiniteTable {
    pub p: u64,
    pub n: usize,
    pub t: Vec<Vec<V>>,
}

fn residue(p: u64, c: i64) -> u64 {
    c.rem_euclid(p as i64) as u64
}

impl FiniteTable {
    /// Entries `(i, j, [(k, c)])` mean `[e_i, e_j] = Σ c e_k`, 1-based.
    pub fn new(p: u64, n: usize, entries: &[(usize, usize, &[(usize, i64)])]) -> Self {
        let mut t = vec![vec![zero(n); n]; n];
        for (i, j, terms) in entries {
            for (k, c) in terms.iter() {
                let slot = &mut t[i - 1][j - 1][k - 1];
                *slot = (*slot + residue(p, *c)) % p;
            }
        }
        FiniteTable { p, n, t }
    }

    pub fn bracket(&self, x: &[u64], y: &[u64]) -> V {
        let mut out = zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let c = x[i] * y[j] % self.p;
                if c != 0 {
                    for (o, t) in out.iter_mut().zip(&self.t[i][j]) {
                        *o = (*o + c * t) % self.p;
                    }
                }
            }
        }
        out
    }

    pub fn vectors(&self) -> Vec<V> {
        all_vectors(self.p, self.n)
    }

    pub fn full(&self) -> VSet {
        self.vectors().into_iter().collect()
    }

    /// Span of `[a, b]` over all `a ∈ x`, `b ∈ y`.
    pub fn product(&self, x: &VSet, y: &VSet) -> VSet {
        let gens: Vec<V> = x.iter().flat_map(|a| y.iter().map(move |b| self.bracket(a, b))).collect();
        let gens: Vec<V> = gens.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        span(self.p, self.n, &gens)
    }

    /// Tested against every element of the algebra.
    pub fn is_ideal(&self, s: &VSet) -> bool {
        self.vectors().iter().all(|x| s.iter().all(|u| s.contains(&self.bracket(x, u)) && s.contains(&self.bracket(u, x))))
    }

    pub fn ideals(&self) -> Vec<VSet> {
        all_subspaces(self.p, self.n).into_iter().filter(|s| self.is_ideal(s)).collect()
    }

    /// Intersection of every ideal containing `gens`.
    pub fn ideal_closure(&self, gens: &[V]) -> VSet {
        self.ideals()
            .into_iter()
            .filter(|s| gens.iter().all(|g| s.contains(g)))
            .fold(self.full(), |acc, s| intersection(&acc, &s))
    }

    /// Span of `[x, x]` over every element `x`.
    pub fn leib(&self) -> VSet {
        let squares: Vec<V> = self.vectors().iter().map(|x| self.bracket(x, x)).collect();
        span(self.p, self.n, &squares)
    }

    /// `{ x : [x, y] = 0 for all y }`.
    pub fn left_center(&self) -> VSet {
        let all = self.vectors();
        all.iter().filter(|x| all.iter().all(|y| self.bracket(x, y).iter().all(|&c| c == 0))).cloned().collect()
    }

    /// `{ x : [y, x] = 0 for all y }`.
    pub fn right_center(&self) -> VSet {
        let all = self.vectors();
        all.iter().filter(|x| all.iter().all(|y| self.bracket(y, x).iter().all(|&c| c == 0))).cloned().collect()
    }

    fn series(&self, start: VSet, step: impl Fn(&VSet) -> VSet) -> Vec<usize> {
        let mut dims = vec![dim(self.p, &start)];
        let mut cur = start;
        loop {
            let next = step(&cur);
            if next == cur {
                return dims;
            }
            dims.push(dim(self.p, &next));
            cur = next;
        }
    }

    pub fn derived_dims(&self) -> Vec<usize> {
        self.series(self.full(), |s| self.product(s, s))
    }

    pub fn lower_central_dims(&self) -> Vec<usize> {
        let full = self.full();
        self.series(full.clone(), |s| sum(self.p, self.n, &self.product(&full, s), &self.product(s, &full)))
    }

    /// `ζ_{k+1} = { x : [x, y], [y, x] ∈ ζ_k for all y }`.
    pub fn upper_central_dims(&self) -> Vec<usize> {
        let all = self.vectors();
        self.series(BTreeSet::from([zero(self.n)]), |z| {
            all.iter()
                .filter(|x| all.iter().all(|y| z.contains(&self.bracket(x, y)) && z.contains(&self.bracket(y, x))))
                .cloned()
                .collect()
        })
    }

    /// `[g^(m), I] ⊆ meet` and `[I, g^(m)] ⊆ meet` with the derived term
    /// recomputed from scratch.
    pub fn derived_term(&self, m: usize) -> VSet {
        (0..m).fold(self.full(), |s, _| self.product(&s, &s))
    }
}

/// Failing basis triples `(i, j, k)` (0-based) of the left and of the right
/// identity, by a plain triple loop over a rational table.
pub fn naive_identity_failures(t: &[Vec<Vec<BigRational>>]) -> (Vec<(usize, usize, usize)>, Vec<(usize, usize, usize)>) {
    let n = t.len();
    let unit = |i: usize| {
        let mut v = vec![BigRational::zero(); n];
        v[i] = BigRational::from_integer(BigInt::from(1));
        v
    };
    let br = |x: &[BigRational], y: &[BigRational]| {
        let mut out = vec![BigRational::zero(); n];
        for i in 0..n {
            for j in 0..n {
                let c = &x[i] * &y[j];
                if c.is_zero() {
                    continue;
                }
                for k in 0..n {
                    out[k] = &out[k] + &c * &t[i][j][k];
                }
            }
        }
        out
    };
    let plus = |a: Vec<BigRational>, b: Vec<BigRational>| a.into_iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (x, y, z) = (unit(i), unit(j), unit(k));
                if br(&x, &br(&y, &z)) != plus(br(&br(&x, &y), &z), br(&y, &br(&x, &z))) {
                    left.push((i, j, k));
                }
                if br(&br(&x, &y), &z) != plus(br(&br(&x, &z), &y), br(&x, &br(&y, &z))) {
                    right.push((i, j, k));
                }
            }
        }
    }
    (left, right)
}

/// Rational table from integer entries, 1-based as in [`FiniteTable::new`].
pub fn rational_table(n: usize, entries: &[(usize, usize, &[(usize, i64)])]) -> Vec<Vec<Vec<BigRational>>> {
    let mut t = vec![vec![vec![BigRational::zero(); n]; n]; n];
    for (i, j, terms) in entries {
        for (k, c) in terms.iter() {
            t[i - 1][j - 1][k - 1] = &t[i - 1][j - 1][k - 1] + BigRational::from_integer(BigInt::from(*c));
        }
    }
    t
}

/// The six-dimensional example: `[e2,e2]=e1, [e3,e3]=e4, [e4,e3]=e5,
/// [e5,e3]=e6`.
pub const EXAMPLE1: &[(usize, usize, &[(usize, i64)])] =
    &[(2, 2, &[(1, 1)]), (3, 3, &[(4, 1)]), (4, 3, &[(5, 1)]), (5, 3, &[(6, 1)])];

/// Entries of the example-2 rule restricted to `e1..eN`, tail dropped.
pub fn example2_entries(n: usize) -> Vec<(usize, usize, Vec<(usize, i64)>)> {
    let mut out = vec![(1, 2, vec![(1, 1)])];
    for i in 4..n {
        out.push((i, 3, vec![(i + 1, 1)]));
    }
    out
}
