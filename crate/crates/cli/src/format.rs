//! The `.alg` input format.
//!
//! ```text
//! algebra <ident>
//!   field Q | GF <odd-prime>
//!   dim <n>
//!   convention left|right|both|neither     # optional, checked on load
//!   bracket e<i> e<j> = <term> { (+|-) <term> }
//! end
//! ```
//!
//! A term is `[<coeff>*]e<k>` with `<coeff>` an integer or `a/b`. Unlisted
//! pairs bracket to zero and `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use leibniz_core::{build_algebra, BracketEntry, Convention, Field, LeibnizAlgebra, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: index e{index} out of range 1..={dim}")]
    IndexOutOfRange { line: usize, index: usize, dim: usize },
    #[error("line {line}: characteristic 2 is not supported")]
    FieldCharTwo { line: usize },
    #[error("line {line}: {p} is not an odd prime below 2^31")]
    BadModulus { line: usize, p: u64 },
    #[error("line {line}: duplicate bracket [e{left}, e{right}]")]
    DuplicateBracket { line: usize, left: usize, right: usize },
    #[error("line {line}: duplicate algebra name '{name}'")]
    DuplicateName { line: usize, name: String },
    #[error("no algebra named '{0}' in the file")]
    UnknownAlgebra(String),
    #[error("algebra '{name}' declares convention {declared} but satisfies {found}")]
    ConventionMismatch { name: String, declared: Convention, found: Convention },
    #[error("algebra '{name}': {source}")]
    Algebra { name: String, source: leibniz_core::Error },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketLine {
    pub left: usize,
    pub right: usize,
    /// Nonzero coefficients keyed by 1-based basis index.
    pub terms: BTreeMap<usize, BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraBlock {
    pub name: String,
    pub field: Field,
    pub dim: usize,
    pub convention: Option<Convention>,
    pub brackets: Vec<BracketLine>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraFile {
    pub blocks: Vec<AlgebraBlock>,
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
}

fn parse_basis(line: usize, tok: &str, dim: usize) -> Result<usize, FormatError> {
    let digits = tok.strip_prefix('e').ok_or_else(|| syntax(line, format!("expected a basis element, got '{tok}'")))?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(line, format!("expected a basis element, got '{tok}'")));
    }
    let index: usize = digits.parse().map_err(|_| syntax(line, format!("index '{digits}' is too large")))?;
    if index == 0 || index > dim {
        return Err(FormatError::IndexOutOfRange { line, index, dim });
    }
    Ok(index)
}

fn parse_coeff(line: usize, s: &str) -> Result<BigRational, FormatError> {
    let bad = || syntax(line, format!("bad coefficient '{s}'"));
    let int = |t: &str| -> Result<BigInt, FormatError> {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse().map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(int(s)?)),
        Some((n, d)) => {
            let d = int(d)?;
            if d.is_zero() {
                return Err(syntax(line, format!("zero denominator in '{s}'")));
            }
            Ok(BigRational::new(int(n)?, d))
        }
    }
}

/// Right-hand side of a bracket line, whitespace already removed.
pub(crate) fn parse_expr(line: usize, expr: &str, dim: usize) -> Result<BTreeMap<usize, BigRational>, FormatError> {
    if expr.is_empty() {
        return Err(syntax(line, "empty right-hand side"));
    }
    let mut terms: BTreeMap<usize, BigRational> = BTreeMap::new();
    if expr == "0" {
        return Ok(terms);
    }
    let mut rest = expr;
    let mut first = true;
    while !rest.is_empty() {
        let (negative, body) = match rest.as_bytes()[0] {
            b'+' => (false, &rest[1..]),
            b'-' => (true, &rest[1..]),
            _ if first => (false, rest),
            _ => return Err(syntax(line, format!("expected '+' or '-' before '{rest}'"))),
        };
        first = false;
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let (term, tail) = body.split_at(end);
        let (coeff, basis) = match term.split_once('*') {
            Some((c, b)) => (parse_coeff(line, c)?, b),
            None => (BigRational::one(), term),
        };
        let k = parse_basis(line, basis, dim)?;
        let c = if negative { -coeff } else { coeff };
        let slot = terms.entry(k).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            terms.remove(&k);
        }
        rest = tail;
    }
    Ok(terms)
}

fn parse_modulus(line: usize, tok: &str) -> Result<Field, FormatError> {
    let p: u64 = tok.parse().map_err(|_| syntax(line, format!("bad modulus '{tok}'")))?;
    if p == 2 {
        return Err(FormatError::FieldCharTwo { line });
    }
    Field::prime(p).map_err(|_| FormatError::BadModulus { line, p })
}

struct Partial {
    line: usize,
    name: String,
    field: Option<Field>,
    dim: Option<usize>,
    convention: Option<Convention>,
    brackets: Vec<BracketLine>,
    seen: BTreeMap<(usize, usize), usize>,
}

pub fn parse_algebra_file(text: &str) -> Result<AlgebraFile, FormatError> {
    let mut file = AlgebraFile::default();
    let mut names: BTreeMap<String, usize> = BTreeMap::new();
    let mut open: Option<Partial> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        let Some(block) = open.as_mut() else {
            match words.as_slice() {
                ["algebra", name] if is_ident(name) => {
                    if names.contains_key(*name) {
                        return Err(FormatError::DuplicateName { line, name: name.to_string() });
                    }
                    names.insert(name.to_string(), line);
                    open = Some(Partial {
                        line,
                        name: name.to_string(),
                        field: None,
                        dim: None,
                        convention: None,
                        brackets: Vec::new(),
                        seen: BTreeMap::new(),
                    });
                }
                ["algebra", name] => return Err(syntax(line, format!("bad algebra name '{name}'"))),
                _ => return Err(syntax(line, format!("expected 'algebra <name>', got '{content}'"))),
            }
            continue;
        };
        match words[0] {
            "field" => {
                if block.field.is_some() {
                    return Err(syntax(line, "field given twice"));
                }
                block.field = Some(match &words[1..] {
                    ["Q"] => Field::Rationals,
                    ["GF", p] => parse_modulus(line, p)?,
                    _ => return Err(syntax(line, format!("expected 'field Q' or 'field GF <p>', got '{content}'"))),
                });
            }
            "dim" => {
                if block.dim.is_some() {
                    return Err(syntax(line, "dim given twice"));
                }
                if !block.brackets.is_empty() {
                    return Err(syntax(line, "dim must precede brackets"));
                }
                let n = match &words[1..] {
                    [n] => n.parse::<usize>().ok().filter(|&n| n > 0),
                    _ => None,
                };
                block.dim = Some(n.ok_or_else(|| syntax(line, format!("expected 'dim <positive integer>', got '{content}'")))?);
            }
            "convention" => {
                if block.convention.is_some() {
                    return Err(syntax(line, "convention given twice"));
                }
                block.convention = Some(match &words[1..] {
                    ["left"] => Convention::Left,
                    ["right"] => Convention::Right,
                    ["both"] => Convention::Both,
                    ["neither"] => Convention::Neither,
                    _ => return Err(syntax(line, format!("expected left, right, both or neither, got '{content}'"))),
                });
            }
            "bracket" => {
                let dim = block.dim.ok_or_else(|| syntax(line, "dim must precede brackets"))?;
                let field = block.field.ok_or_else(|| syntax(line, "field must precede brackets"))?;
                let (lhs, rhs) =
                    content["bracket".len()..].split_once('=').ok_or_else(|| syntax(line, "expected '=' in bracket"))?;
                let lhs: Vec<&str> = lhs.split_whitespace().collect();
                let [l, r] = lhs.as_slice() else {
                    return Err(syntax(line, "expected 'bracket e<i> e<j> = ...'"));
                };
                let (left, right) = (parse_basis(line, l, dim)?, parse_basis(line, r, dim)?);
                if block.seen.insert((left, right), line).is_some() {
                    return Err(FormatError::DuplicateBracket { line, left, right });
                }
                let expr: String = rhs.chars().filter(|c| !c.is_whitespace()).collect();
                let terms = parse_expr(line, &expr, dim)?;
                if let Field::Prime(p) = field {
                    let p = BigInt::from(p);
                    if terms.values().any(|c| (c.denom() % &p).is_zero()) {
                        return Err(syntax(line, format!("denominator divisible by {p}")));
                    }
                }
                block.brackets.push(BracketLine { left, right, terms });
            }
            "end" if words.len() == 1 => {
                let b = open.take().expect("block is open");
                let field = b.field.ok_or_else(|| syntax(line, format!("algebra '{}' has no field line", b.name)))?;
                let dim = b.dim.ok_or_else(|| syntax(line, format!("algebra '{}' has no dim line", b.name)))?;
                file.blocks.push(AlgebraBlock { name: b.name, field, dim, convention: b.convention, brackets: b.brackets });
            }
            _ => return Err(syntax(line, format!("unexpected '{content}'"))),
        }
    }
    if let Some(b) = open {
        return Err(syntax(last_line.max(b.line), format!("algebra '{}' is missing 'end'", b.name)));
    }
    Ok(file)
}

fn coeff_text(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn expr_text(terms: &BTreeMap<usize, BigRational>) -> String {
    let mut out = String::new();
    for (k, c) in terms {
        let sign = if c.is_negative() { "-" } else { "+" };
        let abs = c.abs();
        let body = if abs.is_one() { format!("e{k}") } else { format!("{}*e{k}", coeff_text(&abs)) };
        if out.is_empty() {
            out = if c.is_negative() { format!("-{body}") } else { body };
        } else {
            let _ = write!(out, " {sign} {body}");
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl AlgebraBlock {
    pub fn to_text(&self) -> String {
        let mut out = format!("algebra {}\n", self.name);
        match self.field {
            Field::Rationals => out.push_str("  field Q\n"),
            Field::Prime(p) => {
                let _ = writeln!(out, "  field GF {p}");
            }
        }
        let _ = writeln!(out, "  dim {}", self.dim);
        if let Some(c) = self.convention {
            let _ = writeln!(out, "  convention {c}");
        }
        for b in &self.brackets {
            let _ = writeln!(out, "  bracket e{} e{} = {}", b.left, b.right, expr_text(&b.terms));
        }
        out.push_str("end\n");
        out
    }

    /// Builds the algebra and checks the convention hint, if any.
    pub fn build(&self) -> Result<LeibnizAlgebra, FormatError> {
        let wrap = |source| FormatError::Algebra { name: self.name.clone(), source };
        let mut entries = Vec::with_capacity(self.brackets.len());
        for b in &self.brackets {
            let terms = b
                .terms
                .iter()
                .map(|(k, c)| Ok((*k, self.field.from_rational(c)?)))
                .collect::<leibniz_core::Result<Vec<(usize, Scalar)>>>()
                .map_err(wrap)?;
            entries.push(BracketEntry::from_terms(self.field, self.dim, b.left, b.right, &terms).map_err(wrap)?);
        }
        let g = build_algebra(&self.name, self.field, self.dim, &entries).map_err(wrap)?;
        if let Some(declared) = self.convention {
            if declared != g.convention() {
                return Err(FormatError::ConventionMismatch { name: self.name.clone(), declared, found: g.convention() });
            }
        }
        Ok(g)
    }

    /// The block describing `g`, with its audited convention as the hint.
    pub fn from_algebra(g: &LeibnizAlgebra) -> Self {
        let brackets = g
            .nonzero_entries()
            .into_iter()
            .map(|(i, j, v)| BracketLine {
                left: i + 1,
                right: j + 1,
                terms: v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k + 1, scalar_to_rational(c)))
                    .collect(),
            })
            .collect();
        AlgebraBlock { name: g.name().to_string(), field: g.field(), dim: g.dim(), convention: Some(g.convention()), brackets }
    }
}

fn scalar_to_rational(c: &Scalar) -> BigRational {
    match c {
        Scalar::Rational(q) => q.clone(),
        Scalar::Residue { value, .. } => BigRational::from_integer(BigInt::from(*value)),
    }
}

impl AlgebraFile {
    pub fn get(&self, name: &str) -> Result<&AlgebraBlock, FormatError> {
        self.blocks.iter().find(|b| b.name == name).ok_or_else(|| FormatError::UnknownAlgebra(name.into()))
    }

    pub fn to_text(&self) -> String {
        self.blocks.iter().map(AlgebraBlock::to_text).collect::<Vec<_>>().join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX1: &str = "algebra ex1\n field Q\n dim 6\n bracket e2 e2 = e1\n bracket e3 e3 = e4\n bracket e4 e3 = e5\n bracket e5 e3 = e6\nend\n";

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn example1_parses() {
        let f = parse_algebra_file(EX1).unwrap();
        let g = f.get("ex1").unwrap().build().unwrap();
        assert_eq!(g.dim(), 6);
        assert_eq!(g.convention(), Convention::Right);
        assert_eq!(g.basis_bracket(1, 1)[0], Field::Rationals.one());
    }

    #[test]
    fn coefficients_and_signs() {
        let text = "algebra a\nfield Q\ndim 3\nbracket e2 e2 = 1/2*e1 - e3\nend";
        let f = parse_algebra_file(text).unwrap();
        let t = &f.blocks[0].brackets[0].terms;
        assert_eq!(t[&1], q(1, 2));
        assert_eq!(t[&3], q(-1, 1));
        let t = parse_expr(1, "-2/4*e1+3*e2-e2-2*e2", 3).unwrap();
        assert_eq!(t, BTreeMap::from([(1, q(-1, 2))]));
    }

    #[test]
    fn errors_carry_lines() {
        let cases = [
            ("algebra a\nfield GF 2\ndim 1\nend", FormatError::FieldCharTwo { line: 2 }),
            ("algebra a\nfield GF 9\nend", FormatError::BadModulus { line: 2, p: 9 }),
            (
                "algebra a\nfield Q\ndim 2\nbracket e1 e3 = e1\nend",
                FormatError::IndexOutOfRange { line: 4, index: 3, dim: 2 },
            ),
            (
                "algebra a\nfield Q\ndim 2\nbracket e1 e1 = e2\nbracket e1 e1 = e1\nend",
                FormatError::DuplicateBracket { line: 5, left: 1, right: 1 },
            ),
            (
                "algebra a\nfield Q\ndim 1\nend\nalgebra a\nfield Q\ndim 1\nend",
                FormatError::DuplicateName { line: 5, name: "a".into() },
            ),
        ];
        for (text, want) in cases {
            assert_eq!(parse_algebra_file(text).unwrap_err(), want, "{text}");
        }
        for text in [
            "algebra a\nfield Q\nbracket e1 e1 = e1\nend",
            "algebra a\nfield Q\ndim 1\nbracket e1 e1 = 2e1\nend",
            "algebra a\nfield Q\ndim 1\nbracket e1 e1 = e1 e1\nend",
            "algebra a\nfield Q\ndim 1\n",
            "field Q",
            "algebra a\nfield GF 3\ndim 1\nbracket e1 e1 = 1/3*e1\nend",
        ] {
            assert!(matches!(parse_algebra_file(text), Err(FormatError::Syntax { .. })), "{text}");
        }
    }

    #[test]
    fn convention_hint_is_checked() {
        let text = "algebra a\nfield Q\ndim 6\nconvention left\nbracket e2 e2 = e1\nbracket e3 e3 = e4\nbracket e4 e3 = e5\nbracket e5 e3 = e6\nend";
        let err = parse_algebra_file(text).unwrap().blocks[0].build().unwrap_err();
        assert!(matches!(err, FormatError::ConventionMismatch { found: Convention::Right, .. }));
    }

    #[test]
    fn comments_and_round_trip() {
        let text = "# header\nalgebra h # trailing\n  field GF 5\n  dim 3\n  bracket e1 e2 = e3\n  bracket e2 e1 = -e3 # 4*e3\nend\n";
        let f = parse_algebra_file(text).unwrap();
        let again = parse_algebra_file(&f.to_text()).unwrap();
        assert_eq!(f, again);
        assert_eq!(f.to_text(), again.to_text());
    }
}
