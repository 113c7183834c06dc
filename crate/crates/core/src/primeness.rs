//! The primeness property for graded central polynomials: witness checking,
//! counterexample constructions and the verifications behind them.

use std::collections::{BTreeMap, HashMap};

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::abgroup::{AbGroup, GroupElement};
use crate::central::{multilinear_central_space, test_generic, test_generic_product, test_multilinear, CentralityVerdict};
use crate::cpoly::{build_l, charpoly_disc, CommPoly, Var, VarRegistry};
use crate::error::{Error, Result};
use crate::freegr::{commutator_product, GVar, GradedPoly, Word};
use crate::galg::{elementary_grading, twisted_matrix_algebra, AlgElement, Cocycle, GenElement, GradedAlgebra};
use crate::linalg::{self, EchelonBasis, Matrix};
use crate::regular::{minimal_coarsening, RegularityCertificate};
use crate::scalar::{CycScalar, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    RefutesPrimeness,
    Consistent,
    Inconclusive,
}

/// Polynomials `f, g` in disjoint variables with the verdicts on `f`, `g` and `fg`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimenessWitness {
    pub f: String,
    pub g: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict_f: Option<CentralityVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict_g: Option<CentralityVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict_fg: Option<CentralityVerdict>,
    pub conclusion: Conclusion,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl PrimenessWitness {
    fn inconclusive(note: String) -> Self {
        PrimenessWitness {
            f: String::new(),
            g: String::new(),
            verdict_f: None,
            verdict_g: None,
            verdict_fg: None,
            conclusion: Conclusion::Inconclusive,
            notes: vec![note],
        }
    }

    pub fn refutes(&self) -> bool {
        self.conclusion == Conclusion::RefutesPrimeness
    }
}

/// Computes all three verdicts by generic evaluation and draws the conclusion.
pub fn verify_witness(a: &GradedAlgebra, f: &GradedPoly, g: &GradedPoly) -> Result<PrimenessWitness> {
    let fv: Vec<u32> = f.variables().iter().map(|v| v.id).collect();
    if let Some(v) = g.variables().iter().find(|v| fv.contains(&v.id)) {
        return Err(Error::Precondition(format!("f and g share the variable x{}", v.id)));
    }
    let vf = test_generic(f, a)?;
    let vg = test_generic(g, a)?;
    let vfg = test_generic_product(&[f.clone(), g.clone()], a)?;
    let conclusion = match (vfg.is_proper_central, vf.is_proper_central && vg.is_proper_central) {
        (true, false) => Conclusion::RefutesPrimeness,
        (true, true) => Conclusion::Consistent,
        (false, _) => Conclusion::Inconclusive,
    };
    Ok(PrimenessWitness {
        f: f.to_string(),
        g: g.to_string(),
        verdict_f: Some(vf),
        verdict_g: Some(vg),
        verdict_fg: Some(vfg),
        conclusion,
        notes: Vec::new(),
    })
}

/// `f = x1^(g)`, `g = x2^(-g)` on a regular grading, after passing to the
/// minimal coarsening when the certificate is not minimal.
pub fn regular_counterexample(
    a: &GradedAlgebra,
    cert: &RegularityCertificate,
    degree: Option<&GroupElement>,
) -> Result<PrimenessWitness> {
    if !cert.is_regular() {
        return Err(Error::Precondition("the grading is not regular".into()));
    }
    let beta = cert.beta().ok_or_else(|| Error::Precondition("no bicharacter".into()))?;
    let mut notes = Vec::new();
    let (work, degree) = if cert.minimal == Some(true) {
        (a.clone(), degree.cloned())
    } else {
        let c = minimal_coarsening(a, &beta)?;
        notes.push(format!("passed to the minimal coarsening over {}", c.pi.target()));
        let d = degree.map(|g| c.pi.apply(g));
        (c.algebra, d)
    };
    let group = work.group().clone();
    let noncentral = |g: &GroupElement| work.component(g).iter().any(|&i| !work.is_central(&AlgElement::basis(i)));
    let g = match degree {
        Some(g) => g,
        None => match group.elements().into_iter().find(|g| *g != group.zero() && noncentral(g)) {
            Some(g) => g,
            None => return Ok(PrimenessWitness::inconclusive(format!("no nonzero degree with a noncentral component in {group}"))),
        },
    };
    if g == group.zero() {
        return Ok(PrimenessWitness::inconclusive("degree 0 chosen".into()));
    }
    let f = GradedPoly::var(&group, 1, g.clone())?;
    let h = GradedPoly::var(&group, 2, group.neg(&g))?;
    let mut w = verify_witness(&work, &f, &h)?;
    notes.push(format!("component {g} central: {}, component {} central: {}", !noncentral(&g), group.neg(&g), !noncentral(&group.neg(&g))));
    w.notes = notes;
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistedReport {
    pub q: String,
    pub q_prime: String,
    pub beta: CycScalar,
    /// `c = alpha(q, -q)^-1`.
    pub c: CycScalar,
    pub x_q_noncentral: bool,
    pub product_is_x0: bool,
    pub witness: PrimenessWitness,
}

/// `A = K^alpha Q (x) M_r` with `f = x1^(q)`, `g = c x2^(-q)`.
pub fn twisted_counterexample(
    alpha: &Cocycle,
    r: usize,
    tuple: &[GroupElement],
    q: Option<&GroupElement>,
) -> Result<TwistedReport> {
    let group = alpha.group().clone();
    let elems = group.elements();
    let nontrivial = |p: &GroupElement| elems.iter().find(|x| !alpha.commutation(p, x).is_one()).cloned();
    let (q, q_prime) = match q {
        Some(q) => {
            let qp = nontrivial(q).ok_or_else(|| Error::Precondition(format!("beta_alpha({q}, -) is trivial")))?;
            (q.clone(), qp)
        }
        None => elems
            .iter()
            .find_map(|p| nontrivial(p).map(|x| (p.clone(), x)))
            .ok_or_else(|| Error::Precondition("beta_alpha is trivial".into()))?,
    };
    let a = twisted_matrix_algebra(alpha, r, tuple)?;
    let neg_q = group.neg(&q);
    let c = alpha.get(&q, &neg_q).inverse()?;
    let x_tensor_i = |p: &GroupElement| -> Result<AlgElement> {
        let mut e = AlgElement::zero();
        for i in 1..=r {
            let label = format!("X{p}*e{i}{i}");
            let k = a.index_of_label(&label).ok_or_else(|| Error::InvalidAlgebra(format!("no basis element {label}")))?;
            e.add_term(k, CycScalar::one());
        }
        Ok(e)
    };
    let xq = x_tensor_i(&q)?;
    let x_q_noncentral = !a.commutator(&xq, &x_tensor_i(&q_prime)?).is_zero();
    let product = a.mul(&xq, &x_tensor_i(&neg_q)?.scale(&c));
    let product_is_x0 = product == x_tensor_i(&group.zero())?;
    let f = GradedPoly::var(&group, 1, q.clone())?;
    let g = GradedPoly::var(&group, 2, neg_q.clone())?.scale(&c);
    let mut witness = verify_witness(&a, &f, &g)?;
    witness.notes.push(format!("scalar c = alpha({q}, {neg_q})^-1 = {c}"));
    Ok(TwistedReport {
        q: q.to_string(),
        q_prime: q_prime.to_string(),
        beta: alpha.commutation(&q, &q_prime),
        c,
        x_q_noncentral,
        product_is_x0,
        witness,
    })
}

/// `M_3` with the elementary grading `(g, g, g3)`, `g != g3`.
#[derive(Clone, Debug)]
pub struct ElementaryM3 {
    pub group: AbGroup,
    pub g: GroupElement,
    pub g3: GroupElement,
    pub algebra: GradedAlgebra,
}

impl ElementaryM3 {
    pub fn new(group: &AbGroup, g: GroupElement, g3: GroupElement) -> Result<Self> {
        if g == g3 {
            return Err(Error::Precondition("g3 must differ from g".into()));
        }
        let algebra = elementary_grading(3, group, &[g.clone(), g.clone(), g3.clone()])?;
        Ok(ElementaryM3 { group: group.clone(), g, g3, algebra })
    }

    /// `Z3` with `(0, 0, 1)`.
    pub fn standard() -> Self {
        let z3 = AbGroup::cyclic(3);
        Self::new(&z3, z3.el(&[0]), z3.el(&[1])).expect("valid grading")
    }

    /// `(g3 - g, g - g3, 0)`.
    pub fn h(&self) -> [GroupElement; 3] {
        let gr = &self.group;
        [gr.sub(&self.g3, &self.g), gr.sub(&self.g, &self.g3), gr.zero()]
    }

    /// Basis index of `e_ij`, 1-based.
    pub fn unit_index(&self, i: usize, j: usize) -> usize {
        self.algebra.index_of_label(&format!("e{i}{j}")).expect("matrix unit")
    }

    pub fn e(&self, i: usize, j: usize) -> AlgElement {
        AlgElement::basis(self.unit_index(i, j))
    }

    pub fn to_matrix(&self, x: &AlgElement) -> Matrix {
        (1..=3).map(|i| (1..=3).map(|j| x.coeff(self.unit_index(i, j))).collect()).collect()
    }

    pub fn from_matrix(&self, m: &Matrix) -> AlgElement {
        AlgElement::from_pairs((0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| (self.unit_index(i + 1, j + 1), m[i][j].clone())))
    }

    pub fn diag(&self, d: [i64; 3]) -> AlgElement {
        AlgElement::from_pairs((0..3).map(|i| (self.unit_index(i + 1, i + 1), CycScalar::from_int(d[i]))))
    }
}

/// `iota(sum c_a z^a) = sum c_a x0^a1 y1 x0^a2 y2 x0^a3 y3 x0^a4` with `z1..z4` the
/// variables 1..4 of `l`.
pub fn iota(group: &AbGroup, l: &CommPoly, x0: &GVar, slots: [&GVar; 3]) -> Result<GradedPoly> {
    let terms = l.terms().map(|(m, c)| {
        let mut exps = [0u32; 4];
        for &(v, e) in m.pairs() {
            exps[(v - 1) as usize] = e;
        }
        let mut word: Word = Vec::new();
        for (k, &e) in exps.iter().enumerate() {
            word.extend(std::iter::repeat_n(x0.clone(), e as usize));
            if k < 3 {
                word.push(slots[k].clone());
            }
        }
        (c.clone(), word)
    });
    GradedPoly::from_terms(group, terms)
}

#[derive(Clone, Debug)]
pub struct FormanekP {
    pub l: CommPoly,
    /// `x0^(0), x1^(h1), x2^(h2), x3^(h3)` with ids 0..3.
    pub vars: [GVar; 4],
    /// `U(x0,x1,x2,x3)`, `U(x0,x3,x1,x2)`, `U(x0,x2,x3,x1)`.
    pub u: [GradedPoly; 3],
    pub p: GradedPoly,
}

pub fn build_formanek_p(r: &ElementaryM3) -> Result<FormanekP> {
    let [h1, h2, h3] = r.h();
    let group = &r.group;
    let vars = [
        GVar::new(0, group.zero()),
        GVar::new(1, h1),
        GVar::new(2, h2),
        GVar::new(3, h3),
    ];
    let l = build_l();
    let [x0, x1, x2, x3] = &vars;
    let u = [
        iota(group, &l, x0, [x1, x2, x3])?,
        iota(group, &l, x0, [x3, x1, x2])?,
        iota(group, &l, x0, [x2, x3, x1])?,
    ];
    let p = u[0].add(&u[1])?.sub(&u[2])?;
    Ok(FormanekP { l, vars: vars.clone(), u, p })
}

impl FormanekP {
    /// `P(Z, X1, X2, X3)` at scalar matrices.
    pub fn evaluate(&self, r: &ElementaryM3, z: &AlgElement, x: [&AlgElement; 3]) -> Result<AlgElement> {
        let values: HashMap<u32, AlgElement> = [(0, z.clone()), (1, x[0].clone()), (2, x[1].clone()), (3, x[2].clone())].into();
        self.p.evaluate(&r.algebra, &values)
    }

    /// `P` with its variables renamed to `offset, .., offset + 3`.
    pub fn copy(&self, offset: u32) -> Result<GradedPoly> {
        self.p.rename(&(0..4).map(|i| (i, i + offset)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PSymbolicReport {
    /// `P` is `s diag(1, 1, -1)` for a scalar polynomial `s`.
    pub shape_ok: bool,
    pub s_terms: usize,
    pub disc: String,
    /// `s = disc(Z) m(X)` with `m` free of the `Z` entries and multilinear in the `X` blocks.
    pub identity_holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<String>,
    /// `m` computed with `Z` restricted to diagonal matrices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_diagonal: Option<String>,
    pub m_diagonal_closed_form: bool,
    /// `m` at `(X1, X2, X3) = (e13, e32, e21)` using the diagonal restriction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_at_basis: Option<CycScalar>,
    pub vanishes_at_e12: bool,
    pub vanishes_at_e21: bool,
    pub spot_checks: usize,
    pub spot_checks_passed: usize,
    /// A point with `disc(Z) = 0` and `P != 0`, refuting any factorization through `disc`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

/// Generic `Z` in `R_0`, `X1 = u1 e13 + u2 e23`, `X2 = v1 e31 + v2 e32`, `X3` generic in `R_0`.
struct GenericSetup {
    registry: VarRegistry,
    z: Vec<Var>,
    u: Vec<Var>,
    v: Vec<Var>,
    w: Vec<Var>,
    values: HashMap<u32, GenElement>,
}

const R0_ENTRIES: [(usize, usize); 5] = [(1, 1), (1, 2), (2, 1), (2, 2), (3, 3)];

fn generic_setup(r: &ElementaryM3) -> GenericSetup {
    let mut registry = VarRegistry::new();
    let z: Vec<Var> = ["a", "b", "c", "d", "e"].iter().map(|n| registry.fresh(*n)).collect();
    let u: Vec<Var> = ["u1", "u2"].iter().map(|n| registry.fresh(*n)).collect();
    let v: Vec<Var> = ["v1", "v2"].iter().map(|n| registry.fresh(*n)).collect();
    let w: Vec<Var> = ["w11", "w12", "w21", "w22", "w33"].iter().map(|n| registry.fresh(*n)).collect();
    let gen = |pairs: Vec<((usize, usize), Var)>| {
        GenElement::from_pairs(pairs.into_iter().map(|((i, j), x)| (r.unit_index(i, j), CommPoly::var(x))))
    };
    let values: HashMap<u32, GenElement> = [
        (0, gen(R0_ENTRIES.iter().copied().zip(z.iter().copied()).collect())),
        (1, gen(vec![((1, 3), u[0]), ((2, 3), u[1])])),
        (2, gen(vec![((3, 1), v[0]), ((3, 2), v[1])])),
        (3, gen(R0_ENTRIES.iter().copied().zip(w.iter().copied()).collect())),
    ]
    .into();
    GenericSetup { registry, z, u, v, w, values }
}

fn const_map(vars: &[Var], vals: &[i64]) -> HashMap<Var, CommPoly> {
    vars.iter().zip(vals).map(|(&v, &c)| (v, CommPoly::int(c))).collect()
}

/// Checks `P(Z, X1, X2, X3) = disc(Z) m(X) diag(1, 1, -1)` with generic entries.
pub fn verify_p_symbolically(r: &ElementaryM3, fp: &FormanekP) -> Result<PSymbolicReport> {
    let setup = generic_setup(r);
    let pg = fp.p.evaluate_unchecked(&r.algebra, &setup.values)?;
    let d = [r.unit_index(1, 1), r.unit_index(2, 2), r.unit_index(3, 3)];
    let s = pg.coeff(d[0]);
    let shape_ok = pg.coords().keys().all(|k| d.contains(k)) && pg.coeff(d[1]) == s && pg.coeff(d[2]) == s.neg_ref();

    let zmat: Vec<Vec<CommPoly>> = (1..=3)
        .map(|i| {
            (1..=3)
                .map(|j| match R0_ENTRIES.iter().position(|&e| e == (i, j)) {
                    Some(k) => CommPoly::var(setup.z[k]),
                    None => CommPoly::zero(),
                })
                .collect()
        })
        .collect();
    let disc = charpoly_disc(&zmat)?;
    let x_vars: Vec<Var> = setup.u.iter().chain(&setup.v).chain(&setup.w).copied().collect();
    let m = s.div_exact(&disc);
    let multilinear_in_blocks = |p: &CommPoly| {
        p.terms().all(|(mono, _)| {
            let count = |vs: &[Var]| mono.pairs().iter().filter(|(x, _)| vs.contains(x)).map(|(_, e)| e).sum::<u32>();
            count(&setup.u) == 1 && count(&setup.v) == 1 && count(&setup.w) == 1 && mono.pairs().iter().all(|(x, _)| x_vars.contains(x))
        })
    };
    let identity_holds = shape_ok && m.as_ref().is_some_and(|m| !m.is_zero() && multilinear_in_blocks(m));

    let off_diag = const_map(&[setup.z[1], setup.z[2]], &[0, 0]);
    let m_diagonal = s.substitute_polys(&off_diag).div_exact(&disc.substitute_polys(&off_diag));
    let closed = CommPoly::var(setup.u[0])
        .mul_ref(&CommPoly::var(setup.v[1]))
        .mul_ref(&CommPoly::var(setup.w[2]))
        .add_ref(&CommPoly::var(setup.u[1]).mul_ref(&CommPoly::var(setup.v[0])).mul_ref(&CommPoly::var(setup.w[1])));
    let m_diagonal_closed_form = m_diagonal.as_ref() == Some(&closed);
    let basis_point: HashMap<Var, CycScalar> = x_vars
        .iter()
        .map(|&x| {
            let on = x == setup.u[0] || x == setup.v[1] || x == setup.w[2];
            (x, CycScalar::from_int(on as i64))
        })
        .collect();
    let m_at_basis = m_diagonal.as_ref().map(|m| m.substitute(&basis_point)).transpose()?;

    let vanishes = |zv: [i64; 5]| {
        let map = const_map(&setup.z, &zv);
        pg.coords().values().all(|p| p.substitute_polys(&map).is_zero())
    };
    let vanishes_at_e12 = vanishes([0, 1, 0, 0, 0]);
    let vanishes_at_e21 = vanishes([0, 0, 1, 0, 0]);

    let all_vars: Vec<Var> = setup.z.iter().chain(&x_vars).copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0xf0e1);
    let rand_rat = |rng: &mut ChaCha8Rng| CycScalar::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4));
    let spot_checks = 200;
    let mut spot_checks_passed = 0;
    for _ in 0..spot_checks {
        let point: HashMap<Var, CycScalar> = all_vars.iter().map(|&x| (x, rand_rat(&mut rng))).collect();
        let numeric = numeric_p(r, fp, &setup, &point)?;
        let symbolic = AlgElement::from_pairs(
            pg.coords().iter().map(|(&k, p)| Ok((k, p.substitute(&point)?))).collect::<Result<Vec<_>>>()?,
        );
        let factor_ok = match (&m, identity_holds) {
            (Some(m), true) => s.substitute(&point)? == disc.substitute(&point)?.mul_ref(&m.substitute(&point)?),
            _ => true,
        };
        if numeric == symbolic && factor_ok {
            spot_checks_passed += 1;
        }
    }

    let mut counterexample = None;
    for _ in 0..50 {
        let t = rand_rat(&mut rng);
        let b = rand_rat(&mut rng);
        let e = rand_rat(&mut rng);
        let mut point: HashMap<Var, CycScalar> = x_vars.iter().map(|&x| (x, rand_rat(&mut rng))).collect();
        for (k, val) in [t.clone(), b, CycScalar::zero(), t, e].into_iter().enumerate() {
            point.insert(setup.z[k], val);
        }
        if !disc.substitute(&point)?.is_zero() {
            continue;
        }
        let value = numeric_p(r, fp, &setup, &point)?;
        if !value.is_zero() {
            let show = |vs: &[Var]| vs.iter().map(|x| format!("{}={}", setup.registry.name(*x), point[x])).collect::<Vec<_>>().join(", ");
            counterexample = Some(format!(
                "disc(Z) = 0 at {}; {} gives P = {}",
                show(&setup.z),
                show(&x_vars),
                r.algebra.format_element(&value)
            ));
            break;
        }
    }

    let show = |p: &CommPoly| p.display_with(&setup.registry).to_string();
    let disc_str = show(&disc);
    let m_str = m.as_ref().map(show);
    let m_diag_str = m_diagonal.as_ref().map(show);
    Ok(PSymbolicReport {
        shape_ok,
        s_terms: s.len(),
        disc: disc_str,
        identity_holds,
        m: m_str,
        m_diagonal: m_diag_str,
        m_diagonal_closed_form,
        m_at_basis,
        vanishes_at_e12,
        vanishes_at_e21,
        spot_checks,
        spot_checks_passed,
        counterexample,
    })
}

fn numeric_p(r: &ElementaryM3, fp: &FormanekP, setup: &GenericSetup, point: &HashMap<Var, CycScalar>) -> Result<AlgElement> {
    let spec = |g: &GenElement| -> Result<AlgElement> {
        Ok(AlgElement::from_pairs(
            g.coords().iter().map(|(&k, p)| Ok((k, p.substitute(point)?))).collect::<Result<Vec<_>>>()?,
        ))
    };
    let z = spec(&setup.values[&0])?;
    let x1 = spec(&setup.values[&1])?;
    let x2 = spec(&setup.values[&2])?;
    let x3 = spec(&setup.values[&3])?;
    fp.evaluate(r, &z, [&x1, &x2, &x3])
}

/// `P` is not central while `P P'` is proper central.
pub fn formanek_witness(r: &ElementaryM3, fp: &FormanekP) -> Result<PrimenessWitness> {
    let mut w = verify_witness(&r.algebra, &fp.p, &fp.copy(10)?)?;
    w.f = "P(x0, x1, x2, x3)".into();
    w.g = "P(x10, x11, x12, x13)".into();
    Ok(w)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Conjugation {
    pub e: AlgElement,
    pub e_inv: AlgElement,
    pub d: AlgElement,
    pub diagonal: bool,
    pub preserves_components: bool,
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// `E = diag(P^-1, 1)` in `R_0` with `E S E^-1` diagonal, for `S` in `R_0`
/// whose 2x2 block has eigenvalues in `Q`.
pub fn conjugator_in_r0(r: &ElementaryM3, s: &AlgElement) -> Result<Conjugation> {
    let zero = r.group.zero();
    if !s.is_zero() && r.algebra.homogeneous_degree(s) != Some(zero.clone()) {
        return Err(Error::Precondition("S must lie in R_0".into()));
    }
    let m = r.to_matrix(s);
    let (a, b, c, d) = (&m[0][0], &m[0][1], &m[1][0], &m[1][1]);
    let one = CycScalar::one();
    let block: [[CycScalar; 2]; 2] = if b.is_zero() && c.is_zero() {
        [[one.clone(), CycScalar::zero()], [CycScalar::zero(), one.clone()]]
    } else {
        let tr = a.add_ref(d);
        let det = a.mul_ref(d).sub_ref(&b.mul_ref(c));
        let disc = tr.mul_ref(&tr).sub_ref(&det.mul_ref(&CycScalar::from_int(4)));
        if disc.is_zero() {
            return Err(Error::NotDiagonalizable("repeated eigenvalue of a nonscalar block".into()));
        }
        let root = disc
            .as_rational()
            .and_then(rational_sqrt)
            .map(CycScalar::from_rational)
            .ok_or_else(|| Error::NotDiagonalizable(format!("eigenvalues need sqrt({disc})")))?;
        let half = CycScalar::ratio(1, 2);
        let lambdas = [tr.add_ref(&root).mul_ref(&half), tr.sub_ref(&root).mul_ref(&half)];
        let vec_for = |l: &CycScalar| -> [CycScalar; 2] {
            if !b.is_zero() {
                [b.clone(), l.sub_ref(a)]
            } else {
                [l.sub_ref(d), c.clone()]
            }
        };
        let (v1, v2) = (vec_for(&lambdas[0]), vec_for(&lambdas[1]));
        [[v1[0].clone(), v2[0].clone()], [v1[1].clone(), v2[1].clone()]]
    };
    let pmat: Matrix = vec![
        vec![block[0][0].clone(), block[0][1].clone(), CycScalar::zero()],
        vec![block[1][0].clone(), block[1][1].clone(), CycScalar::zero()],
        vec![CycScalar::zero(), CycScalar::zero(), one.clone()],
    ];
    let e_inv = r.from_matrix(&pmat);
    let e = r.from_matrix(&linalg::inverse(&pmat)?);
    let alg = &r.algebra;
    let conj = |y: &AlgElement| alg.mul(&alg.mul(&e, y), &e_inv);
    let dm = conj(s);
    let diagonal = dm.coords().keys().all(|&k| (1..=3).any(|i| k == r.unit_index(i, i)));
    let preserves_components = alg.support().iter().all(|h| {
        alg.component(h).iter().all(|&i| {
            let y = conj(&AlgElement::basis(i));
            y.is_zero() || alg.homogeneous_degree(&y).as_ref() == Some(h)
        })
    });
    Ok(Conjugation { e, e_inv, d: dm, diagonal, preserves_components })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugationSweep {
    pub count: usize,
    pub diagonal: usize,
    pub preserving: usize,
}

impl ConjugationSweep {
    pub fn all_hold(&self) -> bool {
        self.diagonal == self.count && self.preserving == self.count
    }
}

/// Runs [`conjugator_in_r0`] on `count` random `S = Q D Q^-1 (+) s33` with
/// `Q` an invertible integer 2x2 block and `D` rational diagonal.
pub fn conjugation_sweep(r: &ElementaryM3, count: usize, seed: u64) -> Result<ConjugationSweep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = ConjugationSweep { count, diagonal: 0, preserving: 0 };
    let mut done = 0;
    while done < count {
        let mut int = |lo: i64, hi: i64| CycScalar::from_int(rng.gen_range(lo..=hi));
        let q: Matrix = vec![vec![int(-4, 4), int(-4, 4)], vec![int(-4, 4), int(-4, 4)]];
        let Ok(q_inv) = linalg::inverse(&q) else { continue };
        let d = [int(-6, 6), int(-6, 6)];
        let s33 = int(-6, 6);
        let qd: Matrix = q.iter().map(|row| vec![row[0].mul_ref(&d[0]), row[1].mul_ref(&d[1])]).collect();
        let block = linalg::mat_mul(&qd, &q_inv);
        let z = CycScalar::zero();
        let m: Matrix = vec![
            vec![block[0][0].clone(), block[0][1].clone(), z.clone()],
            vec![block[1][0].clone(), block[1][1].clone(), z.clone()],
            vec![z.clone(), z, s33],
        ];
        let c = conjugator_in_r0(r, &r.from_matrix(&m))?;
        out.diagonal += c.diagonal as usize;
        out.preserving += c.preserves_components as usize;
        done += 1;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TripleDims {
    pub degrees: Vec<String>,
    pub central_dim: usize,
    pub identity_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonomialRemark {
    /// Products of two elements of `R_h` vanish for `h = g - g3` and `h = g3 - g`.
    pub square_zero: bool,
    /// Degree tuples (all nonzero, length at most 4) of proper central monomials.
    pub proper_central: Vec<Vec<String>>,
    /// Every such tuple alternates `g - g3, g3 - g, ..` and has even length.
    pub pattern_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Degree3Report {
    pub triples: Vec<TripleDims>,
    pub no_proper_central: bool,
    /// For each of the six words, whether it matched the table at all 27 index triples.
    pub table_rows: Vec<(String, bool)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub remark: Option<MonomialRemark>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// The words `M_sigma = x_sigma(1) x_sigma(2) x_sigma(3)` of the table, as
/// (name, sigma one-line, expected value at `e_ts, e_sr, e_rt`).
#[allow(clippy::type_complexity)]
const TABLE: [(&str, [usize; 3], fn(usize, usize, usize) -> Option<(usize, usize)>); 6] = [
    ("M_1", [1, 2, 3], |t, _, _| Some((t, t))),
    ("M_(1,2,3)", [2, 3, 1], |_, s, _| Some((s, s))),
    ("M_(1,3,2)", [3, 1, 2], |_, _, r| Some((r, r))),
    ("M_(1,2)", [2, 1, 3], |t, s, r| (r == t && s == r).then_some((s, t))),
    ("M_(1,3)", [3, 2, 1], |t, s, r| (t == s && r == t).then_some((r, s))),
    ("M_(2,3)", [1, 3, 2], |t, s, r| (s == r && t == s).then_some((t, r))),
];

/// Evaluates the six words at `(e_ts, e_sr, e_rt)` for every `(t, s, r)` and
/// compares with the closed forms.
pub fn m_sigma_table(r: &ElementaryM3) -> Vec<(String, bool)> {
    let alg = &r.algebra;
    TABLE
        .iter()
        .map(|(name, sigma, expect)| {
            let mut ok = true;
            for t in 1..=3 {
                for s in 1..=3 {
                    for rr in 1..=3 {
                        let x = [r.unit_index(t, s), r.unit_index(s, rr), r.unit_index(rr, t)];
                        let got = alg.basis_word(&sigma.map(|k| x[k - 1]));
                        let want = expect(t, s, rr).map_or_else(AlgElement::zero, |(i, j)| r.e(i, j));
                        ok &= got == want;
                    }
                }
            }
            (name.to_string(), ok)
        })
        .collect()
}

pub fn degree3_exhaustive(r: &ElementaryM3) -> Result<Degree3Report> {
    let alg = &r.algebra;
    let supp = alg.support();
    let mut triples = Vec::new();
    for a in &supp {
        for b in &supp {
            for c in &supp {
                let s = multilinear_central_space(alg, &[a.clone(), b.clone(), c.clone()])?;
                triples.push(TripleDims {
                    degrees: vec![a.to_string(), b.to_string(), c.to_string()],
                    central_dim: s.central_dim,
                    identity_dim: s.identity_dim,
                });
            }
        }
    }
    let no_proper_central = triples.iter().all(|t| t.central_dim == t.identity_dim);

    let table_rows = m_sigma_table(r);

    let gr = &r.group;
    let (down, up) = (gr.sub(&r.g, &r.g3), gr.sub(&r.g3, &r.g));
    let mut notes = Vec::new();
    let remark = if down == up {
        notes.push(format!("g - g3 = g3 - g = {down}; the monomial pattern argument does not apply"));
        None
    } else {
        let square_zero = [&down, &up].iter().all(|h| {
            alg.component(h).iter().all(|&i| alg.component(h).iter().all(|&j| alg.basis_product(i, j).is_empty()))
        });
        let mut proper_central = Vec::new();
        let nonzero = [down.clone(), up.clone()];
        for n in 1..=4usize {
            for mask in 0..1u32 << n {
                let degrees: Vec<GroupElement> = (0..n).map(|i| nonzero[(mask >> i & 1) as usize].clone()).collect();
                let word: Word = degrees.iter().enumerate().map(|(i, g)| GVar::new(i as u32 + 1, g.clone())).collect();
                let f = GradedPoly::monomial(gr, word, CycScalar::one())?;
                if test_multilinear(&f, alg)?.is_proper_central {
                    proper_central.push(degrees);
                }
            }
        }
        let pattern_holds = proper_central
            .iter()
            .all(|d| d.len() % 2 == 0 && d.iter().enumerate().all(|(i, g)| *g == if i % 2 == 0 { down.clone() } else { up.clone() }));
        Some(MonomialRemark {
            square_zero,
            proper_central: proper_central.iter().map(|d| d.iter().map(|g| g.to_string()).collect()).collect(),
            pattern_holds,
        })
    };
    Ok(Degree3Report { triples, no_proper_central, table_rows, remark, notes })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BnReport {
    pub dim_b: usize,
    pub l: usize,
    pub k: usize,
    /// `x1 ... x_(l+1)` is an identity of `B(n)`.
    pub product_identity: bool,
    /// `f(a, b1, .., b2k) = 2^k a b1 ... b2k` on odd `b_i` and 0 otherwise, over all basis tuples.
    pub coefficient_identity: bool,
    pub tuples_checked: usize,
    pub commutative: bool,
    pub witness: PrimenessWitness,
}

const BN_MAX_TUPLES: usize = 2_000_000;

/// `B = K + B(n)` generated by odd elements of a Grassmann algebra.
pub fn bn_construction(a: &GradedAlgebra, gens: &[AlgElement]) -> Result<BnReport> {
    let z2 = AbGroup::cyclic(2);
    if a.group() != &z2 {
        return Err(Error::Precondition("B(n) needs a Z2-graded algebra".into()));
    }
    if gens.len() < 2 {
        return Err(Error::Precondition("B(n) needs at least two generators".into()));
    }
    let odd = z2.el(&[1]);
    if gens.iter().any(|g| a.homogeneous_degree(g) != Some(odd.clone())) {
        return Err(Error::Precondition("generators must be nonzero and odd".into()));
    }
    let dim = a.dim();
    let mut span: Vec<AlgElement> = gens.to_vec();
    let mut l = 0;
    while !span.is_empty() {
        l += 1;
        if l > dim + 1 {
            return Err(Error::Inconsistent("generators are not nilpotent".into()));
        }
        let mut next = EchelonBasis::new();
        for s in &span {
            for g in gens {
                next.insert(&a.mul(s, g).to_dense(dim));
            }
        }
        span = next.rows().map(|r| AlgElement::from_dense(r)).collect();
    }
    let k = l / 2;
    let trivial = AbGroup::trivial();
    let flatten = |x: &GradedAlgebra| x.regraded(trivial.clone(), |_| trivial.zero());

    let bn = flatten(&a.subalgebra(gens, false)?)?;
    let word: Word = (1..=l as u32 + 1).map(|i| GVar::new(i, trivial.zero())).collect();
    let product_identity = test_generic(&GradedPoly::monomial(&trivial, word, CycScalar::one())?, &bn)?.is_identity;

    let b = a.subalgebra(gens, true)?;
    let b_flat = flatten(&b)?;
    let x = GradedPoly::var(&trivial, 0, trivial.zero())?;
    let ys: Vec<GVar> = (1..=2 * k as u32).map(|i| GVar::new(i, trivial.zero())).collect();
    let t = commutator_product(&trivial, &ys)?;
    let f = x.mul(&t)?;
    let bd = b.dim();
    let tuples = bd.checked_pow(2 * k as u32 + 1).unwrap_or(usize::MAX);
    if tuples > BN_MAX_TUPLES {
        return Err(Error::GuardExceeded(format!("{tuples} basis tuples")));
    }
    let two_k = CycScalar::from_int(1i64 << k);
    let mut coefficient_identity = true;
    for n in 0..tuples {
        let idx: Vec<usize> = (0..2 * k + 1).map(|p| n / bd.pow(p as u32) % bd).collect();
        let values: HashMap<u32, AlgElement> = idx.iter().enumerate().map(|(v, &i)| (v as u32, AlgElement::basis(i))).collect();
        let got = f.evaluate_unchecked(&b_flat, &values)?;
        let all_odd = idx[1..].iter().all(|&i| *b.degree(i) == odd);
        let want = if all_odd { b.basis_word(&idx).scale(&two_k) } else { AlgElement::zero() };
        if got != want {
            coefficient_identity = false;
            break;
        }
    }
    let commutative = (0..bd).all(|i| (0..bd).all(|j| b.commutator(&AlgElement::basis(i), &AlgElement::basis(j)).is_zero()));
    let mut witness = verify_witness(&b_flat, &x, &t)?;
    if commutative {
        witness.notes.push("B is commutative".into());
    }
    Ok(BnReport {
        dim_b: bd,
        l,
        k,
        product_identity,
        coefficient_identity,
        tuples_checked: tuples,
        commutative,
        witness,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossedProduct {
    pub is_crossed: bool,
    pub has_char: bool,
    pub expected_primeness: bool,
}

/// Elementary grading on `M_n` by `tuple`: a crossed product iff the entries
/// list every element of `G` once. Over an algebraically closed field of
/// characteristic 0 a nontrivial finite abelian group has a nontrivial character.
pub fn crossed_product_predicate(group: &AbGroup, tuple: &[GroupElement]) -> CrossedProduct {
    let mut seen: BTreeMap<&GroupElement, ()> = BTreeMap::new();
    let distinct = tuple.iter().all(|g| seen.insert(g, ()).is_none());
    let is_crossed = tuple.len() as u64 == group.order() && distinct && tuple.iter().all(|g| group.contains(g));
    let has_char = group.order() > 1;
    CrossedProduct { is_crossed, has_char, expected_primeness: is_crossed && !has_char }
}
