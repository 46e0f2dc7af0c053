//! Report envelope and JSON renderings of kernel values.
//!
//! Keys are emitted in sorted order (serde_json's default map), scalars as
//! strings: `p/q` in lowest terms over Q, `k mod p` over GF(p).

use leibniz_core::algebra::{render_subspace, render_vector, Identity};
use leibniz_core::chains::ArtinianVerdict;
use leibniz_core::claims::{ClaimAuditReport, Counterexample};
use leibniz_core::lazy::LazyElement;
use leibniz_core::simple::SimplicityVerdict;
use leibniz_core::{LeibnizAlgebra, Scalar, Subspace};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL: &str = "leibniz";

#[derive(Clone, Debug)]
pub struct Report {
    pub command: Vec<String>,
    /// Canonical text of everything the result depends on.
    pub inputs: String,
    pub result: Value,
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.inputs.as_bytes()))
    }

    pub fn to_json(&self) -> Value {
        let mut top = Map::new();
        top.insert("schema_version".into(), json!(SCHEMA_VERSION));
        top.insert("tool".into(), json!(TOOL));
        top.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        top.insert("command".into(), json!(self.command));
        top.insert("inputs_digest".into(), json!(self.digest()));
        top.insert("result".into(), self.result.clone());
        if let Some(ms) = self.timing_ms {
            top.insert("timing_ms".into(), json!(ms));
        }
        Value::Object(top)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("values serialize");
        s.push('\n');
        s
    }
}

pub fn scalar(c: &Scalar) -> Value {
    Value::String(c.to_string())
}

pub fn vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn subspace(u: &Subspace) -> Value {
    json!({
        "dim": u.dim(),
        "basis": u.basis().iter().map(|b| vector(b)).collect::<Vec<_>>(),
        "span": render_subspace(u),
    })
}

pub fn subspaces<'a>(us: impl IntoIterator<Item = &'a Subspace>) -> Value {
    Value::Array(us.into_iter().map(subspace).collect())
}

pub fn identity_name(id: Identity) -> &'static str {
    match id {
        Identity::Left => "left",
        Identity::Right => "right",
    }
}

pub fn table(g: &LeibnizAlgebra) -> Value {
    Value::Array(
        g.nonzero_entries()
            .into_iter()
            .map(|(i, j, v)| json!({"left": format!("e{}", i + 1), "right": format!("e{}", j + 1), "value": render_vector(v)}))
            .collect(),
    )
}

pub fn algebra_summary(g: &LeibnizAlgebra) -> Value {
    json!({
        "name": g.name(),
        "field": g.field().to_string(),
        "dim": g.dim(),
        "convention": g.convention().as_str(),
        "table": table(g),
    })
}

pub fn artinian(v: &ArtinianVerdict) -> Value {
    let mut m = Map::new();
    m.insert("verdict".into(), json!(v.as_str()));
    match v {
        ArtinianVerdict::Artinian { dim_bound } => {
            m.insert("dim_bound".into(), json!(dim_bound));
        }
        ArtinianVerdict::NotArtinianUpTo { depth, chain_length } => {
            m.insert("depth".into(), json!(depth));
            m.insert("chain_length".into(), json!(chain_length));
        }
        ArtinianVerdict::NoEvidence { depth } => {
            m.insert("depth".into(), json!(depth));
        }
    }
    Value::Object(m)
}

pub fn simplicity(v: &SimplicityVerdict) -> Value {
    let mut m = Map::new();
    m.insert("verdict".into(), json!(v.as_str()));
    match v {
        SimplicityVerdict::NotSimple(reason) => {
            if let Some(w) = reason.witness() {
                m.insert("witness".into(), subspace(w));
            }
        }
        SimplicityVerdict::Undetermined { searched } => {
            m.insert("searched".into(), json!(searched));
        }
        SimplicityVerdict::Simple => {}
    }
    Value::Object(m)
}

fn el(x: &LazyElement) -> Value {
    Value::String(x.to_string())
}

fn els(xs: &[LazyElement]) -> Value {
    Value::Array(xs.iter().map(el).collect())
}

pub fn counterexample(ce: &Counterexample) -> Value {
    match ce {
        Counterexample::ChainEscape { rule, k, left, right, member, product } => json!({
            "kind": "chain-escape", "rule": rule, "k": k, "left": el(left), "right": el(right),
            "member": el(member), "product": el(product),
        }),
        Counterexample::DomainEscape { left, right } => {
            json!({"kind": "domain-escape", "left": el(left), "right": el(right)})
        }
        Counterexample::IdentityFailure { identity, triple, residual } => json!({
            "kind": "identity-failure", "identity": identity_name(*identity),
            "triple": els(triple), "residual": el(residual),
        }),
        Counterexample::ProperIdeal { ambient, ideal } => {
            json!({"kind": "proper-ideal", "ambient": els(ambient), "ideal": els(ideal)})
        }
        Counterexample::SquareIsLeib { ambient, span } => {
            json!({"kind": "square-is-leib", "ambient": els(ambient), "span": els(span)})
        }
        Counterexample::NotDescending { rule, k, witness } => {
            json!({"kind": "not-descending", "rule": rule, "k": k, "witness": el(witness)})
        }
        Counterexample::MissingFromProducts { element, products } => json!({
            "kind": "missing-from-products", "element": el(element),
            "products": products.iter().map(|(u, v, w)| json!([el(u), el(v), el(w)])).collect::<Vec<_>>(),
        }),
        Counterexample::OperatorMismatch { sample, u, v, lhs, rhs } => json!({
            "kind": "operator-mismatch", "sample": el(sample), "u": el(u), "v": el(v),
            "lhs": el(lhs), "rhs": el(rhs),
        }),
    }
}

pub fn claim(r: &ClaimAuditReport) -> Value {
    json!({
        "id": r.id,
        "statement": r.statement,
        "status": r.status.as_str(),
        "depth": r.depth,
        "detail": r.detail,
        "counterexample": r.counterexample.as_ref().map(counterexample),
    })
}

/// One-line text form of a counterexample.
pub fn counterexample_text(ce: &Counterexample) -> String {
    match ce {
        Counterexample::ChainEscape { rule, k, left, right, product, .. } => {
            format!("[{left}, {right}] = {product} leaves term {k} of {rule}")
        }
        Counterexample::DomainEscape { left, right } => format!("[{left}, {right}] leaves the index domain"),
        Counterexample::IdentityFailure { identity, triple, residual } => format!(
            "{} identity fails on ({}, {}, {}), residual {residual}",
            identity_name(*identity),
            triple[0],
            triple[1],
            triple[2]
        ),
        Counterexample::ProperIdeal { ideal, .. } => format!("proper ideal span{{{}}}", join(ideal)),
        Counterexample::SquareIsLeib { span, .. } => format!("[I, I] = Leib(I) = span{{{}}}", join(span)),
        Counterexample::NotDescending { rule, k, witness } => {
            format!("{witness} is in term {} of {rule} but not in term {k}", k + 1)
        }
        Counterexample::MissingFromProducts { element, .. } => format!("{element} is not a product"),
        Counterexample::OperatorMismatch { sample, u, v, .. } => {
            format!("[{sample}, [{u}, {v}]] differs from the operator commutator")
        }
    }
}

fn join(xs: &[LazyElement]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}
