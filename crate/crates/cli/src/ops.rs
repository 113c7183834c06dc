//! Scenario operations: each one runs an engine routine and reduces the
//! outcome to named facts compared against expectations.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Display;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use graded_pi::abgroup::{AbGroup, GroupElement};
use graded_pi::central::{
    annihilator_ideal, multilinear_central_space, quotient_by, test_generic, test_generic_product, test_multilinear,
    CentralityVerdict,
};
use graded_pi::cpoly::{charpoly_disc, CommPoly};
use graded_pi::freegr::GradedPoly;
use graded_pi::galg::{AlgElement, CocycleSpec, GradedAlgebra};
use graded_pi::primeness::{
    bn_construction, build_formanek_p, conjugation_sweep, crossed_product_predicate, degree3_exhaustive, formanek_witness,
    m_sigma_table, regular_counterexample, twisted_counterexample, verify_p_symbolically, verify_witness, Conclusion,
    ElementaryM3, PrimenessWitness,
};
use graded_pi::regular::{analyze, minimal_coarsening, Verdict};
use graded_pi::scalar::CycScalar;
use graded_pi::{Error, Result};

pub const DEFAULT_NMAX: usize = 6;

/// Multilinear checks enumerate basis tuples up to this many; beyond it the generic tester runs.
const MULTILINEAR_TUPLE_LIMIT: usize = 100_000;

/// `M_3` with the elementary grading `(g, g, g3)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct M3Spec {
    pub group: AbGroup,
    pub g: String,
    pub g3: String,
}

impl Default for M3Spec {
    fn default() -> Self {
        M3Spec { group: AbGroup::cyclic(3), g: "0".into(), g3: "1".into() }
    }
}

impl M3Spec {
    fn build(&self) -> Result<ElementaryM3> {
        ElementaryM3::new(&self.group, self.group.parse_element(&self.g)?, self.group.parse_element(&self.g3)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Op {
    Analyze {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        nmax: Option<usize>,
    },
    Check {
        poly: String,
        #[serde(default, skip_serializing_if = "is_false")]
        ungraded: bool,
    },
    CheckProduct {
        polys: Vec<String>,
        #[serde(default, skip_serializing_if = "is_false")]
        ungraded: bool,
    },
    CentralSpace {
        degrees: Vec<String>,
    },
    Witness {
        f: String,
        g: String,
        #[serde(default, skip_serializing_if = "is_false")]
        ungraded: bool,
    },
    RegularCounterexample {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        nmax: Option<usize>,
    },
    TwistedCounterexample {
        group: AbGroup,
        cocycle: CocycleSpec,
        r: usize,
        tuple: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        q: Option<String>,
    },
    MinimalCoarsening {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        nmax: Option<usize>,
    },
    Annihilator,
    Bn {
        generators: Vec<String>,
    },
    MTable(#[serde(default)] M3Spec),
    Degree3(#[serde(default)] M3Spec),
    FormanekSymbolic(#[serde(default)] M3Spec),
    FormanekWitness(#[serde(default)] M3Spec),
    FormanekNumeric {
        #[serde(default)]
        m3: M3Spec,
        z: [i64; 3],
        x: [String; 3],
    },
    Conjugation {
        #[serde(default)]
        m3: M3Spec,
        count: usize,
        #[serde(default)]
        seed: u64,
    },
    CrossedProduct {
        group: AbGroup,
        tuple: Vec<String>,
    },
}

fn is_false(b: &bool) -> bool {
    !*b
}

impl Op {
    pub fn name(&self) -> String {
        match serde_json::to_value(self) {
            Ok(Value::Object(m)) => m.get("op").and_then(Value::as_str).unwrap_or("?").to_string(),
            _ => "?".into(),
        }
    }

    pub fn needs_algebra(&self) -> bool {
        matches!(
            self,
            Op::Analyze { .. }
                | Op::Check { .. }
                | Op::CheckProduct { .. }
                | Op::CentralSpace { .. }
                | Op::Witness { .. }
                | Op::RegularCounterexample { .. }
                | Op::MinimalCoarsening { .. }
                | Op::Annihilator
                | Op::Bn { .. }
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    pub facts: BTreeMap<String, String>,
    pub detail: Option<Value>,
}

impl Outcome {
    fn put(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.facts.insert(key.to_string(), value.to_string());
        self
    }

    fn detail(&mut self, value: &impl Serialize) {
        self.detail = serde_json::to_value(value).ok();
    }
}

pub fn matrix_literal(m: &[Vec<CycScalar>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

fn set_literal<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    format!("{{{}}}", items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

pub fn verdict_name(v: &Verdict) -> String {
    match v {
        Verdict::RegularCertified => "regular-certified".into(),
        Verdict::RegularUpTo { n } => format!("regular-up-to({n})"),
        Verdict::NotRegular { .. } => "not-regular".into(),
    }
}

pub fn conclusion_name(c: Conclusion) -> &'static str {
    match c {
        Conclusion::RefutesPrimeness => "refutes-primeness",
        Conclusion::Consistent => "consistent",
        Conclusion::Inconclusive => "inconclusive",
    }
}

fn parse_elements(group: &AbGroup, items: &[String]) -> Result<Vec<GroupElement>> {
    items.iter().map(|s| group.parse_element(s)).collect()
}

fn flatten(a: &GradedAlgebra) -> Result<GradedAlgebra> {
    let t = AbGroup::trivial();
    a.regraded(t.clone(), |_| t.zero())
}

/// `test_multilinear` when the polynomial is multilinear and the basis
/// enumeration is small, the generic tester otherwise.
pub fn decide(f: &GradedPoly, a: &GradedAlgebra) -> Result<CentralityVerdict> {
    if f.is_multilinear() {
        let tuples = f
            .variables()
            .iter()
            .try_fold(1usize, |acc, v| acc.checked_mul(a.component(&v.degree).len().max(1)));
        if tuples.is_some_and(|n| n <= MULTILINEAR_TUPLE_LIMIT) {
            return test_multilinear(f, a);
        }
    }
    test_generic(f, a)
}

fn verdict_facts(out: &mut Outcome, prefix: &str, v: &CentralityVerdict) {
    out.put(&format!("{prefix}identity"), v.is_identity)
        .put(&format!("{prefix}central"), v.is_central)
        .put(&format!("{prefix}proper"), v.is_proper_central);
}

fn witness_facts(out: &mut Outcome, w: &PrimenessWitness) {
    out.put("conclusion", conclusion_name(w.conclusion));
    for (name, v) in [("f-", &w.verdict_f), ("g-", &w.verdict_g), ("fg-", &w.verdict_fg)] {
        if let Some(v) = v {
            verdict_facts(out, name, v);
        }
    }
    out.detail(w);
}

fn need<'a>(a: Option<&'a GradedAlgebra>) -> Result<&'a GradedAlgebra> {
    a.ok_or_else(|| Error::Precondition("this operation needs a scenario algebra".into()))
}

pub fn execute(op: &Op, algebra: Option<&GradedAlgebra>, default_nmax: usize) -> Result<Outcome> {
    let mut out = Outcome::default();
    match op {
        Op::Analyze { nmax } => {
            let cert = analyze(need(algebra)?, nmax.unwrap_or(default_nmax))?;
            out.put("verdict", verdict_name(&cert.verdict)).put("regular", cert.is_regular());
            if let Some(b) = &cert.beta {
                out.put("beta", matrix_literal(b));
            }
            if let Some(issue) = &cert.beta_issue {
                out.put("beta-issue", issue);
            }
            if let Some(d) = &cert.det {
                out.put("det", d);
            }
            if let Some(m) = cert.minimal {
                out.put("minimal", m);
            }
            if let Some(g0) = &cert.g0 {
                out.put("g0", set_literal(g0));
            }
            if let Some(c) = &cert.coarsening {
                out.put("quotient", &c.quotient).put("theta", matrix_literal(&c.theta)).put("theta-minimal", c.minimal);
            }
            out.detail(&cert);
        }
        Op::Check { poly, ungraded } => {
            let a = maybe_flat(need(algebra)?, *ungraded)?;
            let f = GradedPoly::parse(poly, a.group())?;
            let v = decide(&f, &a)?;
            verdict_facts(&mut out, "", &v);
            out.put("summary", v.summary());
            out.detail(&v);
        }
        Op::CheckProduct { polys, ungraded } => {
            let a = maybe_flat(need(algebra)?, *ungraded)?;
            let fs = polys.iter().map(|p| GradedPoly::parse(p, a.group())).collect::<Result<Vec<_>>>()?;
            let v = test_generic_product(&fs, &a)?;
            verdict_facts(&mut out, "", &v);
            out.put("summary", v.summary());
            out.detail(&v);
        }
        Op::CentralSpace { degrees } => {
            let a = need(algebra)?;
            let s = multilinear_central_space(a, &parse_elements(a.group(), degrees)?)?;
            out.put("central-dim", s.central_dim)
                .put("identity-dim", s.identity_dim)
                .put("proper-exists", s.proper_exists);
        }
        Op::Witness { f, g, ungraded } => {
            let a = maybe_flat(need(algebra)?, *ungraded)?;
            let w = verify_witness(&a, &GradedPoly::parse(f, a.group())?, &GradedPoly::parse(g, a.group())?)?;
            witness_facts(&mut out, &w);
        }
        Op::RegularCounterexample { degree, nmax } => {
            let a = need(algebra)?;
            let cert = analyze(a, nmax.unwrap_or(default_nmax))?;
            let g = degree.as_ref().map(|d| a.group().parse_element(d)).transpose()?;
            let w = regular_counterexample(a, &cert, g.as_ref())?;
            witness_facts(&mut out, &w);
        }
        Op::TwistedCounterexample { group, cocycle, r, tuple, q } => {
            let alpha = cocycle.build(group)?;
            let q = q.as_ref().map(|s| group.parse_element(s)).transpose()?;
            let rep = twisted_counterexample(&alpha, *r, &parse_elements(group, tuple)?, q.as_ref())?;
            out.put("q", &rep.q)
                .put("q-prime", &rep.q_prime)
                .put("beta", &rep.beta)
                .put("c", &rep.c)
                .put("xq-noncentral", rep.x_q_noncentral)
                .put("product-is-x0", rep.product_is_x0);
            witness_facts(&mut out, &rep.witness);
            out.detail(&rep);
        }
        Op::MinimalCoarsening { nmax } => {
            let a = need(algebra)?;
            let cert = analyze(a, nmax.unwrap_or(default_nmax))?;
            let beta = cert.beta().ok_or_else(|| Error::Precondition("no bicharacter".into()))?;
            let c = minimal_coarsening(a, &beta)?;
            out.put("g0", set_literal(c.g0.members()))
                .put("quotient", c.pi.target())
                .put("theta", matrix_literal(&c.theta.matrix()))
                .put("theta-g0", set_literal(c.theta.g0().members()));
            let coarse = analyze(&c.algebra, nmax.unwrap_or(default_nmax))?;
            out.put("coarse-verdict", verdict_name(&coarse.verdict));
            if let Some(m) = coarse.minimal {
                out.put("coarse-minimal", m);
            }
        }
        Op::Annihilator => {
            let a = need(algebra)?;
            let t = annihilator_ideal(a)?;
            let q = quotient_by(a, &t)?;
            let zero = q.group().zero();
            let even_central = q.component(&zero).iter().all(|&i| q.is_central(&AlgElement::basis(i)));
            out.put("dim", t.dim())
                .put("basis", set_literal(t.basis.iter().map(|b| a.format_element(b))))
                .put("invariants", t.invariants.hold())
                .put("quotient-dim", q.dim())
                .put("quotient-even-central", even_central);
            out.detail(&t.invariants);
        }
        Op::Bn { generators } => {
            let a = need(algebra)?;
            let gens = generators
                .iter()
                .map(|l| {
                    a.index_of_label(l)
                        .map(AlgElement::basis)
                        .ok_or_else(|| Error::Precondition(format!("no basis element {l}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let rep = bn_construction(a, &gens)?;
            out.put("l", rep.l)
                .put("k", rep.k)
                .put("dim-b", rep.dim_b)
                .put("product-identity", rep.product_identity)
                .put("coefficient-identity", rep.coefficient_identity)
                .put("commutative", rep.commutative);
            witness_facts(&mut out, &rep.witness);
            out.detail(&rep);
        }
        Op::MTable(m3) => {
            for (name, ok) in m_sigma_table(&m3.build()?) {
                out.put(&name, if ok { "reproduced" } else { "mismatch" });
            }
        }
        Op::Degree3(m3) => {
            let rep = degree3_exhaustive(&m3.build()?)?;
            out.put("triples", rep.triples.len()).put("no-proper-central", rep.no_proper_central);
            match &rep.remark {
                Some(r) => out
                    .put("square-zero", r.square_zero)
                    .put("remark", if r.square_zero && r.pattern_holds { "holds" } else { "fails" }),
                None => out.put("remark", "out-of-scope"),
            };
            out.detail(&rep);
        }
        Op::FormanekSymbolic(m3) => {
            let r = m3.build()?;
            let rep = verify_p_symbolically(&r, &build_formanek_p(&r)?)?;
            out.put("shape", rep.shape_ok)
                .put("identity", if rep.identity_holds { "holds" } else { "fails" })
                .put("m-diagonal-closed-form", rep.m_diagonal_closed_form)
                .put("m-at-basis", rep.m_at_basis.as_ref().map_or("none".into(), |m| m.to_string()))
                .put("vanishes-at-e12", rep.vanishes_at_e12)
                .put("vanishes-at-e21", rep.vanishes_at_e21)
                .put("spot-checks", format!("{}/{}", rep.spot_checks_passed, rep.spot_checks));
            if let Some(c) = &rep.counterexample {
                out.put("disc-zero-counterexample", c);
            }
            out.detail(&rep);
        }
        Op::FormanekWitness(m3) => {
            let r = m3.build()?;
            let w = formanek_witness(&r, &build_formanek_p(&r)?)?;
            witness_facts(&mut out, &w);
        }
        Op::FormanekNumeric { m3, z, x } => {
            let r = m3.build()?;
            let fp = build_formanek_p(&r)?;
            let xs = x
                .iter()
                .map(|l| {
                    r.algebra
                        .index_of_label(l)
                        .map(AlgElement::basis)
                        .ok_or_else(|| Error::Precondition(format!("no basis element {l}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let zm = r.diag(*z);
            let v = fp.evaluate(&r, &zm, [&xs[0], &xs[1], &xs[2]])?;
            let grid: Vec<Vec<CommPoly>> = r
                .to_matrix(&zm)
                .iter()
                .map(|row| row.iter().map(|c| CommPoly::constant(c.clone())).collect())
                .collect();
            let disc = charpoly_disc(&grid)?.substitute(&HashMap::new())?;
            out.put("value", matrix_literal(&r.to_matrix(&v))).put("disc", disc);
        }
        Op::Conjugation { m3, count, seed } => {
            let s = conjugation_sweep(&m3.build()?, *count, *seed)?;
            out.put("diagonal", format!("{}/{}", s.diagonal, s.count))
                .put("preserving", format!("{}/{}", s.preserving, s.count));
        }
        Op::CrossedProduct { group, tuple } => {
            let c = crossed_product_predicate(group, &parse_elements(group, tuple)?);
            out.put("is-crossed", c.is_crossed)
                .put("has-char", c.has_char)
                .put("expected-primeness", c.expected_primeness);
        }
    }
    Ok(out)
}

fn maybe_flat(a: &GradedAlgebra, ungraded: bool) -> Result<GradedAlgebra> {
    if ungraded {
        flatten(a)
    } else {
        Ok(a.clone())
    }
}
