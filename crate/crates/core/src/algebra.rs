//! Finite-dimensional Leibniz algebras given by structure constants.
//!
//! The bracket is stored as a dense table: entry `(i, j)` holds the
//! coordinates of `[e_i, e_j]`. Nothing in this module assumes a left or a
//! right convention; every algebra is audited on construction and the
//! result is cached in [`LeibnizAlgebra::convention`].

use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{check_vector, kernel, vector, Field, QuotientCoordinates, Scalar, Subspace};

/// Which Leibniz identities the table satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    Left,
    Right,
    Both,
    Neither,
}

impl Convention {
    fn from_flags(left_ok: bool, right_ok: bool) -> Self {
        match (left_ok, right_ok) {
            (true, true) => Convention::Both,
            (true, false) => Convention::Left,
            (false, true) => Convention::Right,
            (false, false) => Convention::Neither,
        }
    }

    pub fn left_ok(self) -> bool {
        matches!(self, Convention::Left | Convention::Both)
    }

    pub fn right_ok(self) -> bool {
        matches!(self, Convention::Right | Convention::Both)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Left => "left",
            Convention::Right => "right",
            Convention::Both => "both",
            Convention::Neither => "neither",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Left identity `[x,[y,z]] = [[x,y],z] + [y,[x,z]]` or right identity
/// `[[x,y],z] = [[x,z],y] + [x,[y,z]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    Left,
    Right,
}

/// One violated basis triple, 0-based, with `lhs - rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailingTriple {
    pub identity: Identity,
    pub triple: (usize, usize, usize),
    pub residual: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityAudit {
    pub left_ok: bool,
    pub right_ok: bool,
    /// Up to `cap` violations per identity, in lexicographic triple order.
    pub failing_triples: Vec<FailingTriple>,
}

impl IdentityAudit {
    pub fn convention(&self) -> Convention {
        Convention::from_flags(self.left_ok, self.right_ok)
    }
}

pub const DEFAULT_FAILURE_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdealFlags {
    /// `[g, U] ⊆ U`
    pub left: bool,
    /// `[U, g] ⊆ U`
    pub right: bool,
    pub two_sided: bool,
}

/// A structure-constant entry `[e_left, e_right] = value`, indices 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketEntry {
    pub left: usize,
    pub right: usize,
    pub value: Vec<Scalar>,
}

impl BracketEntry {
    /// Entry from sparse `(k, coefficient)` terms with 1-based `k`; repeated
    /// `k` accumulate.
    pub fn from_terms(
        field: Field,
        dim: usize,
        left: usize,
        right: usize,
        terms: &[(usize, Scalar)],
    ) -> Result<Self> {
        let mut value = field.zero_vector(dim);
        for (k, c) in terms {
            if *k == 0 || *k > dim {
                return Err(Error::IndexOutOfRange { index: *k, dim });
            }
            if c.field() != field {
                return Err(Error::MixedFields(field.to_string(), c.field().to_string()));
            }
            value[k - 1] = &value[k - 1] + c;
        }
        Ok(BracketEntry { left, right, value })
    }

    pub fn from_ints(field: Field, dim: usize, left: usize, right: usize, terms: &[(usize, i64)]) -> Result<Self> {
        let terms: Vec<_> = terms.iter().map(|&(k, c)| (k, field.from_i64(c))).collect();
        Self::from_terms(field, dim, left, right, &terms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizAlgebra {
    name: String,
    field: Field,
    dim: usize,
    table: Vec<Vec<Vec<Scalar>>>,
    convention: Convention,
}

/// Build an algebra from sparse bracket entries; unlisted pairs bracket to 0.
pub fn build_algebra(name: &str, field: Field, dim: usize, entries: &[BracketEntry]) -> Result<LeibnizAlgebra> {
    if field.characteristic() == 2 {
        return Err(Error::FieldCharTwo);
    }
    let mut table = vec![vec![field.zero_vector(dim); dim]; dim];
    let mut seen = vec![vec![false; dim]; dim];
    for e in entries {
        for idx in [e.left, e.right] {
            if idx == 0 || idx > dim {
                return Err(Error::IndexOutOfRange { index: idx, dim });
            }
        }
        check_vector(field, dim, &e.value)?;
        let (i, j) = (e.left - 1, e.right - 1);
        if seen[i][j] {
            return Err(Error::DuplicateBracket(e.left, e.right));
        }
        seen[i][j] = true;
        table[i][j] = e.value.clone();
    }
    LeibnizAlgebra::from_table(name, field, table)
}

impl LeibnizAlgebra {
    /// Dense 0-based table; `table[i][j]` is `[e_i, e_j]`.
    pub fn from_table(name: &str, field: Field, table: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        if field.characteristic() == 2 {
            return Err(Error::FieldCharTwo);
        }
        let dim = table.len();
        for row in &table {
            if row.len() != dim {
                return Err(Error::AmbientMismatch { expected: dim, got: row.len() });
            }
            for v in row {
                check_vector(field, dim, v)?;
            }
        }
        let mut g = LeibnizAlgebra { name: name.to_string(), field, dim, table, convention: Convention::Neither };
        g.convention = g.identity_audit_with_cap(0).convention();
        Ok(g)
    }

    pub fn abelian(name: &str, field: Field, dim: usize) -> Result<Self> {
        Self::from_table(name, field, vec![vec![field.zero_vector(dim); dim]; dim])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn table(&self) -> &[Vec<Vec<Scalar>>] {
        &self.table
    }

    /// `[e_i, e_j]`, 0-based.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i][j]
    }

    /// Nonzero entries as `(i, j, value)`, 0-based, row-major.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, &[Scalar])> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                if !vector::is_zero(&self.table[i][j]) {
                    out.push((i, j, self.table[i][j].as_slice()));
                }
            }
        }
        out
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        self.field.zero_vector(self.dim)
    }

    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        self.field.unit_vector(self.dim, i)
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    pub fn zero_ideal(&self) -> Subspace {
        Subspace::zero(self.field, self.dim)
    }

    /// Span of `e_i` for the given 0-based indices.
    pub fn coordinate_span(&self, indices: &[usize]) -> Subspace {
        Subspace::coordinate(self.field, self.dim, indices).expect("indices in range")
    }

    pub fn span(&self, vectors: &[Vec<Scalar>]) -> Result<Subspace> {
        Subspace::span(self.field, self.dim, vectors)
    }

    fn check_subspace(&self, u: &Subspace) -> Result<()> {
        if u.field() != self.field {
            return Err(Error::MixedFields(self.field.to_string(), u.field().to_string()));
        }
        if u.ambient_dim() != self.dim {
            return Err(Error::AmbientMismatch { expected: self.dim, got: u.ambient_dim() });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        check_vector(self.field, self.dim, x)?;
        check_vector(self.field, self.dim, y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        let ys = vector::support(y);
        for i in vector::support(x) {
            for &j in &ys {
                let c = &x[i] * &y[j];
                vector::axpy(&mut out, &c, &self.table[i][j]);
            }
        }
        out
    }

    /// `[e_i, v]`
    fn left_mul(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        for j in vector::support(v) {
            vector::axpy(&mut out, &v[j], &self.table[i][j]);
        }
        out
    }

    /// `[v, e_k]`
    fn right_mul(&self, v: &[Scalar], k: usize) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        for i in vector::support(v) {
            vector::axpy(&mut out, &v[i], &self.table[i][k]);
        }
        out
    }

    pub fn identity_audit(&self) -> IdentityAudit {
        self.identity_audit_with_cap(DEFAULT_FAILURE_CAP)
    }

    /// Checks both identities on every basis triple; trilinearity makes
    /// that equivalent to checking all vector triples.
    pub fn identity_audit_with_cap(&self, cap: usize) -> IdentityAudit {
        let n = self.dim;
        let mut left_ok = true;
        let mut right_ok = true;
        let mut left_fail = Vec::new();
        let mut right_fail = Vec::new();
        let zero: Vec<Vec<bool>> = self.table.iter().map(|row| row.iter().map(|v| vector::is_zero(v)).collect()).collect();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    // Every term of both identities contains one of these.
                    if zero[i][j] && zero[j][k] && zero[i][k] {
                        continue;
                    }
                    let ij_k = self.right_mul(&self.table[i][j], k);
                    // [e_i,[e_j,e_k]] - [[e_i,e_j],e_k] - [e_j,[e_i,e_k]]
                    let lhs = self.left_mul(i, &self.table[j][k]);
                    let rhs = vector::add(&ij_k, &self.left_mul(j, &self.table[i][k]));
                    let res = vector::sub(&lhs, &rhs);
                    if !vector::is_zero(&res) {
                        left_ok = false;
                        if left_fail.len() < cap {
                            left_fail.push(FailingTriple { identity: Identity::Left, triple: (i, j, k), residual: res });
                        }
                    }
                    // [[e_i,e_j],e_k] - [[e_i,e_k],e_j] - [e_i,[e_j,e_k]]
                    let rhs = vector::add(&self.right_mul(&self.table[i][k], j), &self.left_mul(i, &self.table[j][k]));
                    let res = vector::sub(&ij_k, &rhs);
                    if !vector::is_zero(&res) {
                        right_ok = false;
                        if right_fail.len() < cap {
                            right_fail.push(FailingTriple { identity: Identity::Right, triple: (i, j, k), residual: res });
                        }
                    }
                }
            }
        }
        left_fail.extend(right_fail);
        IdentityAudit { left_ok, right_ok, failing_triples: left_fail }
    }

    /// Residual `lhs - rhs` of an identity on arbitrary vectors.
    pub fn identity_residual(&self, identity: Identity, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Result<Vec<Scalar>> {
        for v in [x, y, z] {
            check_vector(self.field, self.dim, v)?;
        }
        let b = |a: &[Scalar], c: &[Scalar]| self.bracket_unchecked(a, c);
        Ok(match identity {
            Identity::Left => vector::sub(&b(x, &b(y, z)), &vector::add(&b(&b(x, y), z), &b(y, &b(x, z)))),
            Identity::Right => vector::sub(&b(&b(x, y), z), &vector::add(&b(&b(x, z), y), &b(x, &b(y, z)))),
        })
    }

    /// `[A, B]`: span of brackets of basis pairs.
    pub fn subspace_product(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        self.check_subspace(a)?;
        self.check_subspace(b)?;
        Ok(self.product_unchecked(a, b))
    }

    pub(crate) fn product_unchecked(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut gens = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                let v = self.bracket_unchecked(x, y);
                if !vector::is_zero(&v) {
                    gens.push(v);
                }
            }
        }
        Subspace::span(self.field, self.dim, &gens).expect("vectors have ambient length")
    }

    pub fn ideal_flags(&self, u: &Subspace) -> Result<IdealFlags> {
        self.check_subspace(u)?;
        let g = self.full();
        let left = self.product_unchecked(&g, u).is_subspace_of(u)?;
        let right = self.product_unchecked(u, &g).is_subspace_of(u)?;
        Ok(IdealFlags { left, right, two_sided: left && right })
    }

    pub fn is_ideal(&self, u: &Subspace) -> Result<bool> {
        Ok(self.ideal_flags(u)?.two_sided)
    }

    pub fn is_subalgebra(&self, u: &Subspace) -> Result<bool> {
        self.check_subspace(u)?;
        self.product_unchecked(u, u).is_subspace_of(u)
    }

    /// Smallest two-sided ideal containing `generators`.
    pub fn ideal_closure(&self, generators: &[Vec<Scalar>]) -> Result<Subspace> {
        let start = Subspace::span(self.field, self.dim, generators)?;
        Ok(self.ideal_closure_of(&start))
    }

    pub fn ideal_closure_of(&self, start: &Subspace) -> Subspace {
        let g = self.full();
        let mut u = start.clone();
        loop {
            let next = u
                .sum(&self.product_unchecked(&g, &u))
                .and_then(|s| s.sum(&self.product_unchecked(&u, &g)))
                .expect("same ambient space");
            if next == u {
                return u;
            }
            u = next;
        }
    }

    /// `Leib(g) = span{[x, x]}`, via the polarized generators `[e_i, e_i]`
    /// and `[e_i, e_j] + [e_j, e_i]` (valid away from characteristic 2).
    pub fn leib(&self) -> Result<Subspace> {
        self.require_convention()?;
        let mut gens = Vec::new();
        for i in 0..self.dim {
            gens.push(self.table[i][i].clone());
            for j in i + 1..self.dim {
                gens.push(vector::add(&self.table[i][j], &self.table[j][i]));
            }
        }
        Subspace::span(self.field, self.dim, &gens)
    }

    pub(crate) fn require_convention(&self) -> Result<()> {
        if self.convention == Convention::Neither {
            return Err(Error::NoConvention(self.name.clone()));
        }
        Ok(())
    }

    pub fn centers(&self) -> Centers {
        let n = self.dim;
        // Z_right: [e_i, x] = 0 for all i; coordinate k gives sum_j c_ij^k x_j = 0.
        let mut right_rows = Vec::with_capacity(n * n);
        // Z_left: [x, e_j] = 0 for all j; coordinate k gives sum_i c_ij^k x_i = 0.
        let mut left_rows = Vec::with_capacity(n * n);
        for a in 0..n {
            for k in 0..n {
                right_rows.push((0..n).map(|j| self.table[a][j][k].clone()).collect::<Vec<_>>());
                left_rows.push((0..n).map(|i| self.table[i][a][k].clone()).collect::<Vec<_>>());
            }
        }
        let right = kernel(self.field, n, &right_rows).expect("rows sized to dim");
        let left = kernel(self.field, n, &left_rows).expect("rows sized to dim");
        let center = left.intersect(&right).expect("same ambient space");
        Centers { left, right, center }
    }

    /// `g / I` on the complement coordinates of `I`.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient> {
        if !self.ideal_flags(ideal)?.two_sided {
            return Err(Error::NotAnIdeal);
        }
        let coords = ideal.quotient_coordinates();
        let comp = coords.complement().to_vec();
        let table = comp
            .iter()
            .map(|&a| comp.iter().map(|&b| coords.project(&self.table[a][b]).expect("ambient length")).collect())
            .collect();
        let name = format!("{}/I", self.name);
        let algebra = LeibnizAlgebra::from_table(&name, self.field, table)?;
        let morphism = AlgebraMorphismData {
            source_dim: self.dim,
            target_dim: comp.len(),
            matrix: coords.projection().to_vec(),
            kind: MorphismKind::QuotientProjection,
        };
        Ok(Quotient { algebra, morphism, ideal: ideal.clone(), coords })
    }

    /// The subalgebra on `u` in its RREF basis; bracket coordinates are read
    /// off the pivot columns.
    pub fn subalgebra(&self, u: &Subspace) -> Result<LeibnizAlgebra> {
        if !self.is_subalgebra(u)? {
            return Err(Error::NotASubalgebra);
        }
        let basis = u.basis();
        let piv = u.pivots();
        let table = basis
            .iter()
            .map(|x| {
                basis
                    .iter()
                    .map(|y| {
                        let v = self.bracket_unchecked(x, y);
                        piv.iter().map(|&p| v[p].clone()).collect()
                    })
                    .collect()
            })
            .collect();
        LeibnizAlgebra::from_table(&format!("{}|sub", self.name), self.field, table)
    }

    /// `ad x` as the matrix of `y ↦ [x, y]` (columns indexed by `y`).
    pub fn ad_matrix(&self, x: &[Scalar]) -> Vec<Vec<Scalar>> {
        let n = self.dim;
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| self.right_mul(x, j)).collect();
        (0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect()
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.dim).all(|i| {
            (i..self.dim).all(|j| vector::is_zero(&vector::add(&self.table[i][j], &self.table[j][i])))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Centers {
    /// `{x : [x, y] = 0 for all y}`
    pub left: Subspace,
    /// `{x : [y, x] = 0 for all y}`
    pub right: Subspace,
    pub center: Subspace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorphismKind {
    QuotientProjection,
    DirectSumInclusion,
}

/// A linear map between coordinate spaces, `target_dim x source_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphismData {
    pub source_dim: usize,
    pub target_dim: usize,
    pub matrix: Vec<Vec<Scalar>>,
    pub kind: MorphismKind,
}

impl AlgebraMorphismData {
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let field = v.first().map(Scalar::field).or_else(|| self.matrix.first().and_then(|r| r.first()).map(Scalar::field));
        match field {
            Some(f) => vector::mat_vec(&self.matrix, v, f, self.target_dim),
            None => Vec::new(),
        }
    }

    pub fn image(&self, u: &Subspace) -> Result<Subspace> {
        if u.ambient_dim() != self.source_dim {
            return Err(Error::AmbientMismatch { expected: self.source_dim, got: u.ambient_dim() });
        }
        u.image_under(&self.matrix, self.target_dim)
    }
}

/// A quotient algebra together with the data of its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: LeibnizAlgebra,
    pub morphism: AlgebraMorphismData,
    pub ideal: Subspace,
    coords: QuotientCoordinates,
}

impl Quotient {
    pub fn coordinates(&self) -> &QuotientCoordinates {
        &self.coords
    }

    pub fn project(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.coords.project(v)
    }

    pub fn project_subspace(&self, u: &Subspace) -> Result<Subspace> {
        self.morphism.image(u)
    }

    /// Full preimage: section of `u` plus the kernel.
    pub fn preimage(&self, u: &Subspace) -> Result<Subspace> {
        if u.ambient_dim() != self.coords.quotient_dim() {
            return Err(Error::AmbientMismatch { expected: self.coords.quotient_dim(), got: u.ambient_dim() });
        }
        let lifted = u.basis().iter().map(|c| self.coords.lift(c)).collect::<Result<Vec<_>>>()?;
        self.ideal.extend(&lifted)
    }
}

/// Block-diagonal sum; cross brackets vanish.
pub fn direct_sum(a: &LeibnizAlgebra, b: &LeibnizAlgebra) -> Result<LeibnizAlgebra> {
    if a.field != b.field {
        return Err(Error::FieldMismatch(a.field.to_string(), b.field.to_string()));
    }
    let (n, m) = (a.dim, b.dim);
    let f = a.field;
    let mut table = vec![vec![f.zero_vector(n + m); n + m]; n + m];
    for i in 0..n {
        for j in 0..n {
            table[i][j][..n].clone_from_slice(&a.table[i][j]);
        }
    }
    for i in 0..m {
        for j in 0..m {
            table[n + i][n + j][n..].clone_from_slice(&b.table[i][j]);
        }
    }
    LeibnizAlgebra::from_table(&format!("{}+{}", a.name, b.name), f, table)
}

/// Inclusions of the two summands into `a ⊕ b`.
pub fn direct_sum_inclusions(a: &LeibnizAlgebra, b: &LeibnizAlgebra) -> (AlgebraMorphismData, AlgebraMorphismData) {
    let f = a.field;
    let (n, m) = (a.dim, b.dim);
    let incl = |offset: usize, d: usize| {
        let mut matrix = vec![f.zero_vector(d); n + m];
        for i in 0..d {
            matrix[offset + i][i] = f.one();
        }
        AlgebraMorphismData { source_dim: d, target_dim: n + m, matrix, kind: MorphismKind::DirectSumInclusion }
    };
    (incl(0, n), incl(n, m))
}

/// `c1*e1 + c2*e2` style rendering with 1-based basis names; `0` for zero.
pub fn render_vector(v: &[Scalar]) -> String {
    render_combination(v.iter().enumerate().map(|(i, c)| (format!("e{}", i + 1), c)))
}

/// Renders `(name, coefficient)` pairs as a signed sum, skipping zeros.
pub fn render_combination<'a>(terms: impl IntoIterator<Item = (String, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (name, c) in terms {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&mag.coefficient_text());
            out.push('*');
        }
        out.push_str(&name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn render_subspace(u: &Subspace) -> String {
    let parts: Vec<String> = u.basis().iter().map(|v| render_vector(v)).collect();
    format!("span{{{}}}", parts.join(", "))
}
