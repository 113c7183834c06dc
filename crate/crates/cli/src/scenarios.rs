use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use graded_pi::abgroup::AbGroup;
use graded_pi::galg::{AlgebraSpec, CocycleSpec, GradedAlgebra, TensorDegrees};

use crate::ops::{execute, M3Spec, Op};
use crate::report::{Report, StepReport};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Step {
    pub run: Op,
    pub expect: BTreeMap<String, String>,
    pub anchor: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub id: String,
    pub description: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    pub steps: Vec<Step>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub nmax: usize,
    pub parallel: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { nmax: crate::ops::DEFAULT_NMAX, parallel: false }
    }
}

impl Scenario {
    /// Every step names an anchor and at least one expectation.
    pub fn validate(&self) -> Result<(), String> {
        for (i, s) in self.steps.iter().enumerate() {
            if s.anchor.trim().is_empty() {
                return Err(format!("step {i} of {} has no anchor", self.id));
            }
            if s.expect.is_empty() {
                return Err(format!("step {i} of {} has no expectations", self.id));
            }
            if s.run.needs_algebra() && self.algebra.is_none() {
                return Err(format!("step {i} of {} needs an algebra", self.id));
            }
        }
        Ok(())
    }

    pub fn run(&self, opts: RunOptions) -> Report {
        let algebra = self.algebra.as_ref().map(|spec| spec.build().map_err(|e| e.to_string()));
        let algebra = algebra.as_ref().map(|r| r.as_ref());
        let steps = if opts.parallel {
            std::thread::scope(|scope| {
                let handles: Vec<_> = self
                    .steps
                    .iter()
                    .map(|s| scope.spawn(move || run_step(s, algebra, opts.nmax)))
                    .collect();
                handles.into_iter().map(|h| h.join().expect("step thread")).collect()
            })
        } else {
            self.steps.iter().map(|s| run_step(s, algebra, opts.nmax)).collect()
        };
        Report::new(&self.id, steps)
    }
}

fn run_step(step: &Step, algebra: Option<Result<&GradedAlgebra, &String>>, nmax: usize) -> StepReport {
    let start = Instant::now();
    let result = match algebra {
        Some(Err(e)) => Err(format!("algebra: {e}")),
        Some(Ok(a)) => execute(&step.run, Some(a), nmax).map_err(|e| e.to_string()),
        None => execute(&step.run, None, nmax).map_err(|e| e.to_string()),
    };
    let (actual, detail) = match result {
        Ok(o) => (o.facts, o.detail),
        Err(e) => ([("error".to_string(), e)].into(), None),
    };
    let pass = step.expect.iter().all(|(k, v)| actual.get(k) == Some(v));
    StepReport {
        op: step.run.name(),
        inputs: serde_json::to_value(&step.run).unwrap_or_default(),
        expected: step.expect.clone(),
        actual,
        anchor: step.anchor.clone(),
        pass,
        detail,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn step(run: Op, anchor: &str, expect: &[(&str, &str)]) -> Step {
    Step {
        run,
        expect: expect.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
        anchor: anchor.to_string(),
    }
}

fn scenario(id: &str, description: &str, algebra: Option<AlgebraSpec>, steps: Vec<Step>) -> Scenario {
    Scenario { id: id.into(), description: description.into(), algebra, steps }
}

fn check(poly: &str) -> Op {
    Op::Check { poly: poly.into(), ungraded: false }
}

fn counterexample(degree: Option<&str>) -> Op {
    Op::RegularCounterexample { degree: degree.map(Into::into), nmax: None }
}

fn z(n: u32) -> AbGroup {
    AbGroup::cyclic(n)
}

/// The compiled-in suite.
pub fn builtin() -> Vec<Scenario> {
    let klein = AbGroup::product_of(&[2, 2]);
    let refutes = [("conclusion", "refutes-primeness")];
    vec![
        scenario(
            "grassmann-e6",
            "Grassmann algebra E_6 with its Z2 grading: regularity, minimality, failure of graded primeness",
            Some(AlgebraSpec::Grassmann { k: 6 }),
            vec![
                step(
                    Op::Analyze { nmax: Some(6) },
                    "E is Z2-regular with commutation matrix tau, tau(1,1) = -1",
                    &[
                        ("verdict", "regular-up-to(6)"),
                        ("beta", "[[1,1],[1,-1]]"),
                        ("det", "-2"),
                        ("minimal", "true"),
                        ("g0", "{0}"),
                    ],
                ),
                step(check("x1{1}"), "odd elements of E are not central", &[("central", "false")]),
                step(
                    check("x1{1}*x2{1}"),
                    "a product of two odd variables is a proper graded central polynomial of E",
                    &[("proper", "true")],
                ),
                step(counterexample(Some("1")), "regular gradings fail graded primeness via x^(g), x^(-g)", &refutes),
            ],
        ),
        scenario(
            "pauli-m2",
            "Pauli grading on M_2 by Z2xZ2",
            Some(AlgebraSpec::Pauli { n: 2 }),
            vec![
                step(
                    Op::Analyze { nmax: None },
                    "Pauli gradings are regular with minimal decomposition",
                    &[("verdict", "regular-certified"), ("minimal", "true")],
                ),
                step(check("x1{(1,0)}"), "a nontrivial Pauli component is not central", &[("central", "false")]),
                step(counterexample(Some("(1,0)")), "M_n with the Pauli grading fails graded primeness", &refutes),
            ],
        ),
        scenario(
            "pauli-m3",
            "Pauli grading on M_3 by Z3xZ3",
            Some(AlgebraSpec::Pauli { n: 3 }),
            vec![
                step(
                    Op::Analyze { nmax: None },
                    "Pauli gradings are regular with minimal decomposition",
                    &[("verdict", "regular-certified"), ("minimal", "true")],
                ),
                step(counterexample(None), "M_n with the Pauli grading fails graded primeness", &refutes),
            ],
        ),
        scenario(
            "coarsening",
            "E_6 (x) KZ2 graded by Z2xZ2 and its minimal coarsening",
            Some(AlgebraSpec::Tensor {
                left: Box::new(AlgebraSpec::Grassmann { k: 6 }),
                right: Box::new(AlgebraSpec::Twisted {
                    group: z(2),
                    cocycle: CocycleSpec::Named("trivial".into()),
                    r: None,
                    tuple: None,
                }),
                degrees: TensorDegrees::Product,
            }),
            vec![
                step(
                    Op::Analyze { nmax: Some(4) },
                    "a regular grading whose commutation matrix is singular is not minimal",
                    &[("regular", "true"), ("minimal", "false"), ("g0", "{(0,0),(0,1)}")],
                ),
                step(
                    Op::MinimalCoarsening { nmax: Some(4) },
                    "passing to G/G0 yields a minimal regular coarsening with induced bicharacter",
                    &[
                        ("g0", "{(0,0),(0,1)}"),
                        ("quotient", "Z2"),
                        ("theta", "[[1,1],[1,-1]]"),
                        ("theta-g0", "{0}"),
                        ("coarse-minimal", "true"),
                    ],
                ),
            ],
        ),
        scenario(
            "mtable-m3",
            "Evaluations of the six degree-3 words on matrix units of M_3",
            None,
            vec![step(
                Op::MTable(M3Spec::default()),
                "M_sigma(e_ts, e_sr, e_rt) table for sigma in S_3",
                &[
                    ("M_1", "reproduced"),
                    ("M_(1,2,3)", "reproduced"),
                    ("M_(1,3,2)", "reproduced"),
                    ("M_(1,2)", "reproduced"),
                    ("M_(1,3)", "reproduced"),
                    ("M_(2,3)", "reproduced"),
                ],
            )],
        ),
        scenario(
            "degree3-m3",
            "No multilinear proper central polynomial of degree 3 for M_3 graded by (0,0,1) over Z3",
            None,
            vec![step(
                Op::Degree3(M3Spec::default()),
                "no multilinear degree-3 graded central polynomial of R is proper",
                &[("triples", "27"), ("no-proper-central", "true"), ("remark", "holds")],
            )],
        ),
        scenario(
            "formanek-p",
            "The discriminant polynomial P on M_3 graded by (0,0,1) over Z3",
            None,
            vec![
                step(
                    Op::FormanekSymbolic(M3Spec::default()),
                    "P(Z, X1, X2, X3) = D(Z) m(X) diag(1, 1, -1) on R_0 x R_h1 x R_h2 x R_h3",
                    &[
                        ("shape", "true"),
                        ("identity", "holds"),
                        ("m-at-basis", "1"),
                        ("vanishes-at-e12", "true"),
                        ("vanishes-at-e21", "true"),
                        ("spot-checks", "200/200"),
                    ],
                ),
                step(
                    Op::FormanekWitness(M3Spec::default()),
                    "P is not central while P P' is a proper graded central polynomial",
                    &[("conclusion", "refutes-primeness"), ("f-central", "false"), ("fg-proper", "true")],
                ),
            ],
        ),
        scenario(
            "formanek-numeric",
            "P at diag(0,1,2), e13, e32, e21",
            None,
            vec![step(
                Op::FormanekNumeric { m3: M3Spec::default(), z: [0, 1, 2], x: ["e13".into(), "e32".into(), "e21".into()] },
                "the value is D diag(1, 1, -1) with D the discriminant of the eigenvalues 0, 1, 2",
                &[("value", "[[4,0,0],[0,4,0],[0,0,-4]]"), ("disc", "4")],
            )],
        ),
        scenario(
            "conjugation",
            "Diagonalizing elements of R_0 by conjugation inside R_0",
            None,
            vec![step(
                Op::Conjugation { m3: M3Spec::default(), count: 20, seed: 0x5eed },
                "a diagonalizable S in R_0 is conjugate by E in R_0 to a diagonal matrix, and E preserves each R_h",
                &[("diagonal", "20/20"), ("preserving", "20/20")],
            )],
        ),
        scenario(
            "grassmann-e3",
            "The (1,1)-annihilator ideal of E_3 and ordinary central polynomials",
            Some(AlgebraSpec::Grassmann { k: 3 }),
            vec![
                step(
                    Op::Annihilator,
                    "the (1,1)-annihilator is an odd square-zero two-sided ideal",
                    &[
                        ("dim", "1"),
                        ("basis", "{e1e2e3}"),
                        ("invariants", "true"),
                        ("quotient-dim", "7"),
                    ],
                ),
                step(
                    Op::Witness { f: "x1".into(), g: "[x2,x3]".into(), ungraded: true },
                    "x[y,z] is a proper central polynomial of E_3 while x is not",
                    &[("conclusion", "refutes-primeness"), ("f-central", "false"), ("fg-proper", "true")],
                ),
            ],
        ),
        scenario(
            "bn-e4",
            "The subalgebra B = K + B(n) of E_4 generated by e1, e2, e3",
            Some(AlgebraSpec::Grassmann { k: 4 }),
            vec![step(
                Op::Bn { generators: vec!["e1".into(), "e2".into(), "e3".into()] },
                "f = x t(x1, .., x2k) is a proper central polynomial of B while x is not",
                &[
                    ("l", "3"),
                    ("k", "1"),
                    ("product-identity", "true"),
                    ("coefficient-identity", "true"),
                    ("f-central", "false"),
                    ("fg-proper", "true"),
                    ("conclusion", "refutes-primeness"),
                ],
            )],
        ),
        scenario(
            "twisted-klein",
            "K^alpha(Z2xZ2) (x) M_2 with the nontrivial cocycle and tuple (0,0)",
            None,
            vec![step(
                Op::TwistedCounterexample {
                    group: klein.clone(),
                    cocycle: CocycleSpec::Named("klein".into()),
                    r: 2,
                    tuple: vec!["(0,0)".into(), "(0,0)".into()],
                    q: Some("(1,0)".into()),
                },
                "X_q (x) I_r is not central while c X_q X_-q (x) I_r = X_0 (x) I_r, so f f~ witnesses failure of primeness",
                &[
                    ("beta", "-1"),
                    ("xq-noncentral", "true"),
                    ("product-is-x0", "true"),
                    ("conclusion", "refutes-primeness"),
                ],
            )],
        ),
        scenario(
            "crossed-product",
            "Elementary gradings on M_n: crossed products and characters",
            None,
            vec![
                step(
                    Op::CrossedProduct { group: z(2), tuple: vec!["0".into(), "1".into()] },
                    "primeness for elementary M_n needs a crossed product grading by a group without nontrivial characters",
                    &[("is-crossed", "true"), ("has-char", "true"), ("expected-primeness", "false")],
                ),
                step(
                    Op::CrossedProduct { group: AbGroup::trivial(), tuple: vec!["0".into()] },
                    "the trivial grading satisfies primeness",
                    &[("expected-primeness", "true")],
                ),
                step(
                    Op::CrossedProduct { group: z(3), tuple: vec!["0".into(), "0".into(), "1".into()] },
                    "repeated entries never give a crossed product",
                    &[("is-crossed", "false")],
                ),
            ],
        ),
        scenario(
            "m11",
            "M_{1,1}(E_2) with its Z2xZ2 grading",
            Some(AlgebraSpec::M11 { k: 2 }),
            vec![
                step(Op::Analyze { nmax: Some(2) }, "M_{1,1}(E) is regular", &[("regular", "true")]),
                step(
                    Op::RegularCounterexample { degree: Some("(0,1)".into()), nmax: Some(2) },
                    "the off-diagonal component is not central",
                    &refutes,
                ),
            ],
        ),
    ]
}

pub fn find(id: &str) -> Option<Scenario> {
    builtin().into_iter().find(|s| s.id == id)
}

pub fn ids() -> BTreeSet<String> {
    builtin().into_iter().map(|s| s.id).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_is_well_formed() {
        let all = builtin();
        assert_eq!(ids().len(), all.len());
        for s in &all {
            s.validate().unwrap();
        }
    }

    #[test]
    fn scenario_json_round_trip() {
        for s in builtin() {
            let text = serde_json::to_string(&s).unwrap();
            assert_eq!(serde_json::from_str::<Scenario>(&text).unwrap(), s, "{text}");
        }
    }

    #[test]
    fn unknown_field_is_rejected() {
        let text = r#"{"id":"x","description":"","steps":[{"run":{"op":"analyze","nmx":3},"expect":{"regular":"true"},"anchor":"a"}]}"#;
        assert!(serde_json::from_str::<Scenario>(text).is_err());
    }

    #[test]
    fn quick_scenarios_pass() {
        for id in ["pauli-m2", "mtable-m3", "crossed-product", "formanek-numeric"] {
            let r = find(id).unwrap().run(RunOptions::default());
            assert!(r.passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn failing_expectation_is_reported() {
        let mut s = find("crossed-product").unwrap();
        s.steps[0].expect.insert("has-char".into(), "false".into());
        let r = s.run(RunOptions { parallel: true, ..Default::default() });
        assert!(!r.passed());
        assert_eq!(r.summary.failed, 1);
        assert!(r.to_text().contains("expected false"));
    }
}
