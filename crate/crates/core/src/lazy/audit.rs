//! Registered claims for each family.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FamilyKind, LazyElement, LazyFamily, LazyIndex};
use crate::algebra::Identity;
use crate::chains::{validate_chain, ArtinianVerdict};
use crate::claims::{formal_residual, operator_sides, split_claims, ClaimAuditReport, Counterexample};
use crate::error::{Error, Result};
use crate::primes::EnumerationGuard;

/// Sampled `x_α` per operator check.
pub const OPERATOR_SAMPLES: usize = 50;
/// Sampled triples per identity check.
pub const IDENTITY_SAMPLES: usize = 400;

impl LazyFamily {
    /// Runs every registered claim for the family on the snapshot at
    /// `depth`, sampling with `seed` where a claim needs samples.
    pub fn audit_claims(&self, depth: usize, seed: u64) -> Result<Vec<ClaimAuditReport>> {
        self.check_depth(depth)?;
        match self.kind {
            FamilyKind::Example2 => self.audit_example2(depth),
            FamilyKind::RemarkSl2 => self.audit_remark(depth, seed),
            FamilyKind::SumSimple => self.audit_sum(depth),
        }
    }

    fn audit_example2(&self, depth: usize) -> Result<Vec<ClaimAuditReport>> {
        let t = self.truncate(depth)?;
        let j: Vec<usize> = (2..depth).collect();
        let mut out = split_claims(&t.algebra, &[0, 1], &j, depth, EnumerationGuard::default())?;
        let r = ClaimAuditReport::new("not-artinian", "g is not an Artinian Leibniz algebra", depth);
        out.push(match self.artinian_report(depth)? {
            ArtinianVerdict::NotArtinianUpTo { chain_length, .. } => r.bounded(format!(
                "strictly descending chain of {chain_length} ideals T_4 ⊋ ... ⊋ T_{depth} in the snapshot"
            )),
            other => r.bounded(format!("no chain exhibited: {}", other.as_str())),
        });
        Ok(out)
    }

    fn audit_sum(&self, depth: usize) -> Result<Vec<ClaimAuditReport>> {
        let f = self.field;
        let mut out = Vec::new();
        let r = ClaimAuditReport::new("displayed-chain-decreasing", "J_s = S_1 ⊕ ... ⊕ S_s is decreasing", depth);
        let witness = LazyElement::basis(f, LazyIndex::S { copy: 2, basis: 1 });
        out.push(r.failed(
            Counterexample::NotDescending { rule: "displayed".into(), k: 1, witness: witness.clone() },
            format!("{witness} lies in J_2 but not in J_1; the displayed chain increases"),
        ));
        let r = ClaimAuditReport::new("tail-chain-decreasing", "T_s = ⊕_{i>s} S_i is a decreasing chain of ideals", depth);
        let (t, spec) = self.chain("tail")?.snapshot(depth)?;
        out.push(match validate_chain(&t.algebra, spec) {
            Ok(spec) if spec.is_strictly_descending() => {
                r.confirmed(format!("{} terms, each a two-sided ideal, strictly descending", spec.len()))
            }
            Ok(_) => r.bounded("terms are ideals but not strictly descending in the snapshot"),
            Err(e) => r.bounded(format!("snapshot chain rejected: {e}")),
        });
        Ok(out)
    }

    fn audit_remark(&self, depth: usize, seed: u64) -> Result<Vec<ClaimAuditReport>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        for n in 1..=2 {
            out.push(self.audit_h_ideal(n, depth)?);
        }
        out.push(self.audit_domain(depth));
        out.push(self.audit_operators("ab-is-minus-identity", &[(LazyIndex::A, LazyIndex::B)], &mut rng)?);
        let ops = [LazyIndex::A, LazyIndex::B, LazyIndex::C];
        let pairs: Vec<(LazyIndex, LazyIndex)> =
            ops.iter().flat_map(|u| ops.iter().map(move |v| (u.clone(), v.clone()))).collect();
        out.push(self.audit_operators("operator-brackets-match-composition", &pairs, &mut rng)?);
        out.push(self.audit_derived_power()?);
        for identity in [Identity::Left, Identity::Right] {
            out.push(self.audit_identity(identity, &mut rng)?);
        }
        Ok(out)
    }

    /// Nonzero rationals ordered by denominator, then numerator, with
    /// `|α| <= depth` and denominator at most `depth`.
    fn alpha_grid(depth: usize) -> impl Iterator<Item = BigRational> {
        let d = depth as i64;
        (1..=d).flat_map(move |den| {
            (-d * den..=d * den).filter_map(move |num| {
                let a = BigRational::new(BigInt::from(num), BigInt::from(den));
                (!a.is_zero() && a.denom() == &BigInt::from(den)).then_some(a)
            })
        })
    }

    fn x(&self, a: &BigRational) -> LazyElement {
        LazyElement::basis(self.field, LazyIndex::X(a.clone()))
    }

    fn op(&self, i: &LazyIndex) -> LazyElement {
        LazyElement::basis(self.field, i.clone())
    }

    fn audit_h_ideal(&self, n: usize, depth: usize) -> Result<ClaimAuditReport> {
        let r = ClaimAuditReport::new(&format!("h{n}-ideal"), &format!("H_{n} = span{{x_α : α < 1/{n}}} is an ideal of g"), depth);
        let chain = self.chain("H")?;
        let ops = [LazyIndex::A, LazyIndex::B, LazyIndex::C, LazyIndex::Id];
        for a in Self::alpha_grid(depth) {
            let x = self.x(&a);
            if !chain.contains(n, &x) {
                continue;
            }
            for op in &ops {
                let y = self.op(op);
                for (left, right) in [(&x, &y), (&y, &x)] {
                    let Ok(p) = self.bracket(left, right) else { continue };
                    if !chain.contains(n, &p) {
                        let detail = format!("{x} ∈ H_{n} but [{left}, {right}] = {p} ∉ H_{n}");
                        return Ok(r.failed(
                            Counterexample::ChainEscape {
                                rule: "H".into(),
                                k: n,
                                left: left.clone(),
                                right: right.clone(),
                                member: x.clone(),
                                product: p,
                            },
                            detail,
                        ));
                    }
                }
            }
        }
        Ok(r.bounded(format!("no escape for denominators and |α| up to {depth}")))
    }

    fn audit_domain(&self, depth: usize) -> ClaimAuditReport {
        let r = ClaimAuditReport::new("a-preserves-index-domain", "[x_α, a] = x_{α+1} stays among the basis labels", depth);
        let a = self.op(&LazyIndex::A);
        for alpha in Self::alpha_grid(depth) {
            let x = self.x(&alpha);
            if let Err(Error::OutsideIndexDomain(reason)) = self.bracket(&x, &a) {
                return r.failed(Counterexample::DomainEscape { left: x, right: a }, reason);
            }
        }
        r.bounded(format!("no escape for denominators and |α| up to {depth}"))
    }

    fn sample_alpha(rng: &mut ChaCha8Rng) -> BigRational {
        loop {
            let num: i64 = rng.gen_range(-24..=24);
            let den: i64 = rng.gen_range(1..=6);
            if num != 0 {
                return BigRational::new(BigInt::from(num), BigInt::from(den));
            }
        }
    }

    fn audit_operators(&self, id: &str, pairs: &[(LazyIndex, LazyIndex)], rng: &mut ChaCha8Rng) -> Result<ClaimAuditReport> {
        let names: Vec<String> = pairs.iter().map(|(u, v)| format!("[{u},{v}]")).collect();
        let statement = if pairs.len() == 1 {
            "[a, b] acts as -id on the x-span".to_string()
        } else {
            format!("the bracket table agrees with u∘v - v∘u for {}", names.join(", "))
        };
        let r = ClaimAuditReport::new(id, &statement, OPERATOR_SAMPLES);
        let mut checked = 0;
        while checked < OPERATOR_SAMPLES {
            let sample = self.x(&Self::sample_alpha(rng));
            let mut skipped = false;
            for (u, v) in pairs {
                let (u, v) = (self.op(u), self.op(v));
                match operator_sides(self, &sample, &u, &v) {
                    Ok((lhs, rhs)) if lhs != rhs => {
                        let detail = format!("at {sample}: [{sample}, [{u}, {v}]] = {lhs} but composition gives {rhs}");
                        return Ok(r.failed(Counterexample::OperatorMismatch { sample, u, v, lhs, rhs }, detail));
                    }
                    Ok(_) => {}
                    Err(Error::OutsideIndexDomain(_)) => skipped = true,
                    Err(e) => return Err(e),
                }
            }
            if !skipped {
                checked += 1;
            }
        }
        Ok(r.confirmed(format!("{checked} sampled x_α, both sides recomputed from the rules")))
    }

    fn audit_derived_power(&self) -> Result<ClaimAuditReport> {
        let r = ClaimAuditReport::new("derived-power-equals-g", "g^(m) = g for some positive integer m", 0);
        let ops = [LazyIndex::A, LazyIndex::B, LazyIndex::C, LazyIndex::Id];
        let mut products = Vec::new();
        for u in &ops {
            for v in &ops {
                let (x, y) = (self.op(u), self.op(v));
                products.push((x.clone(), y.clone(), self.bracket(&x, &y)?));
            }
        }
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let two = BigRational::from_integer(BigInt::from(2));
        for a in [&half, &two] {
            let x = self.x(a);
            for u in &ops {
                let y = self.op(u);
                products.push((x.clone(), y.clone(), self.bracket(&x, &y)?));
                products.push((y.clone(), x.clone(), self.bracket(&y, &x)?));
            }
            let other = self.x(if a == &half { &two } else { &half });
            products.push((x.clone(), other.clone(), self.bracket(&x, &other)?));
        }
        let c = self.op(&LazyIndex::C);
        Ok(r.failed(
            Counterexample::MissingFromProducts { element: c, products },
            "no basis bracket has a c-component: [x_α, v] lies in the x-span, [v, x_α] = 0, [x_α, x_β] = 0, \
             and the operator table only produces a, b and id; so c ∉ [g, g] ⊇ g^(m) for every m ≥ 1",
        ))
    }

    fn audit_identity(&self, identity: Identity, rng: &mut ChaCha8Rng) -> Result<ClaimAuditReport> {
        let side = match identity {
            Identity::Left => "left",
            Identity::Right => "right",
        };
        let r = ClaimAuditReport::new(
            &format!("leibniz-identity-{side}"),
            &format!("the {side} Leibniz identity holds on triples mixing x_α, a, b, c"),
            IDENTITY_SAMPLES,
        );
        let ops = [LazyIndex::A, LazyIndex::B, LazyIndex::C];
        let pick = |rng: &mut ChaCha8Rng| -> LazyElement {
            match rng.gen_range(0..4) {
                3 => self.x(&Self::sample_alpha(rng)),
                k => self.op(&ops[k]),
            }
        };
        let mut checked = 0;
        for _ in 0..IDENTITY_SAMPLES {
            let triple = [pick(rng), pick(rng), pick(rng)];
            let res = match formal_residual(self, identity, &triple[0], &triple[1], &triple[2]) {
                Ok(res) => res,
                Err(Error::OutsideIndexDomain(_)) => continue,
                Err(e) => return Err(e),
            };
            checked += 1;
            if !res.is_zero() {
                let detail = format!("residual {res} on ({}, {}, {})", triple[0], triple[1], triple[2]);
                return Ok(r.failed(Counterexample::IdentityFailure { identity, triple, residual: res }, detail));
            }
        }
        Ok(r.bounded(format!("{checked} sampled triples with zero residual")))
    }
}
