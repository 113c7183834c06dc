//! Regular gradings: commutation bicharacters, the nonvanishing-products
//! condition, the matrix `M^A`, minimality and the minimal coarsening.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::abgroup::{preimage, quotient, AbGroup, GroupElement, GroupHom, Subgroup};
use crate::error::{Error, Result};
use crate::galg::{AlgElement, GradedAlgebra};
use crate::linalg::{self, EchelonBasis, Matrix};
use crate::scalar::CycScalar;

/// `beta: G x G -> K*`, stored densely in canonical element order.
#[derive(Clone, Debug, PartialEq)]
pub struct Bicharacter {
    group: AbGroup,
    values: Vec<CycScalar>,
}

impl Bicharacter {
    pub fn from_fn(group: &AbGroup, f: impl Fn(&GroupElement, &GroupElement) -> CycScalar) -> Self {
        let elems = group.elements();
        let mut values = Vec::with_capacity(elems.len() * elems.len());
        for g in &elems {
            for h in &elems {
                values.push(f(g, h));
            }
        }
        Bicharacter { group: group.clone(), values }
    }

    /// `tau` on `Z2`: `tau(1, 1) = -1`, all other values 1.
    pub fn tau() -> Self {
        Self::from_fn(&AbGroup::cyclic(2), |g, h| {
            if g.residues()[0] == 1 && h.residues()[0] == 1 {
                CycScalar::from_int(-1)
            } else {
                CycScalar::one()
            }
        })
    }

    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn get(&self, g: &GroupElement, h: &GroupElement) -> &CycScalar {
        let n = self.group.order() as usize;
        &self.values[self.group.index_of(g) * n + self.group.index_of(h)]
    }

    /// `M^A = (beta(g, h))` with rows and columns in canonical order.
    pub fn matrix(&self) -> Matrix {
        let n = self.group.order() as usize;
        self.values.chunks(n).map(|r| r.to_vec()).collect()
    }

    /// First violated bicharacter identity, if any.
    pub fn identity_violation(&self) -> Option<String> {
        let g = &self.group;
        let elems = g.elements();
        let zero = g.zero();
        for a in &elems {
            if !self.get(&zero, a).is_one() {
                return Some(format!("beta(0, {a}) != 1"));
            }
            for b in &elems {
                let ab = self.get(a, b);
                if !ab.mul_ref(self.get(b, a)).is_one() {
                    return Some(format!("beta({a}, {b}) beta({b}, {a}) != 1"));
                }
                for s in &elems {
                    if *self.get(&g.add(a, s), b) != ab.mul_ref(self.get(s, b)) {
                        return Some(format!("beta({a} + {s}, {b}) is not multiplicative"));
                    }
                    if *self.get(a, &g.add(s, b)) != self.get(a, s).mul_ref(ab) {
                        return Some(format!("beta({a}, {s} + {b}) is not multiplicative"));
                    }
                }
            }
        }
        None
    }

    /// `G_0(beta) = {g : beta(g, h) = 1 for all h}`.
    pub fn g0(&self) -> Subgroup {
        let elems = self.group.elements();
        let members = elems
            .iter()
            .filter(|g| elems.iter().all(|h| self.get(g, h).is_one()))
            .cloned()
            .collect();
        Subgroup::from_members(&self.group, members).expect("kernel of a bicharacter is a subgroup")
    }

    pub fn to_literals(&self) -> Vec<Vec<String>> {
        self.matrix()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect()
    }
}

/// Outcome of scanning basis pairs for commutation scalars.
#[derive(Clone, Debug, PartialEq)]
pub enum BicharacterScan {
    Consistent(Bicharacter),
    /// The component of this degree is zero.
    MissingComponent(GroupElement),
    /// Basis elements `a in A_g`, `b in A_h` with no scalar relating `ab` and `ba`,
    /// or two pairs forcing different scalars.
    Inconsistent { g: GroupElement, h: GroupElement, detail: String },
    /// Every product between `A_g` and `A_h` vanishes, so no scalar is forced.
    Undetermined { g: GroupElement, h: GroupElement },
    /// Scalars were found but fail a bicharacter identity.
    NotBicharacter(String),
}

pub fn extract_bicharacter(a: &GradedAlgebra) -> BicharacterScan {
    let g = a.group();
    let elems = g.elements();
    if let Some(m) = elems.iter().find(|x| a.component(x).is_empty()) {
        return BicharacterScan::MissingComponent(m.clone());
    }
    let mut values = Vec::with_capacity(elems.len() * elems.len());
    for x in &elems {
        for y in &elems {
            let mut beta: Option<(CycScalar, String)> = None;
            for &i in a.component(x) {
                for &j in a.component(y) {
                    let (bi, bj) = (AlgElement::basis(i), AlgElement::basis(j));
                    let ab = a.mul(&bi, &bj);
                    let ba = a.mul(&bj, &bi);
                    let pair = format!("({}, {})", a.label(i), a.label(j));
                    match (ab.is_zero(), ba.is_zero()) {
                        (true, true) => continue,
                        (false, true) | (true, false) => {
                            return BicharacterScan::Inconsistent {
                                g: x.clone(),
                                h: y.clone(),
                                detail: format!("exactly one of ab, ba vanishes at {pair}"),
                            }
                        }
                        (false, false) => {}
                    }
                    let (&k, den) = ba.coords().iter().next().expect("nonzero");
                    let c = ab.coeff(k).div_ref(den).expect("nonzero coordinate");
                    if ba.scale(&c) != ab {
                        return BicharacterScan::Inconsistent {
                            g: x.clone(),
                            h: y.clone(),
                            detail: format!("ab is not a multiple of ba at {pair}"),
                        };
                    }
                    match &beta {
                        None => beta = Some((c, pair)),
                        Some((b, first)) if *b != c => {
                            return BicharacterScan::Inconsistent {
                                g: x.clone(),
                                h: y.clone(),
                                detail: format!("{first} gives {b} but {pair} gives {c}"),
                            }
                        }
                        Some(_) => {}
                    }
                }
            }
            match beta {
                Some((b, _)) => values.push(b),
                None => {
                    return BicharacterScan::Undetermined { g: x.clone(), h: y.clone() };
                }
            }
        }
    }
    let beta = Bicharacter { group: g.clone(), values };
    match beta.identity_violation() {
        Some(v) => BicharacterScan::NotBicharacter(v),
        None => BicharacterScan::Consistent(beta),
    }
}

/// Verdict on "every degree tuple admits homogeneous elements with nonzero product".
#[derive(Clone, Debug, PartialEq)]
pub enum ConditionI {
    /// Every component contains an invertible element, so every product of
    /// such elements is invertible, hence nonzero, at any length.
    Certified,
    /// Every tuple of length at most `n_max` admits a nonzero product.
    UpTo(usize),
    /// All products along this degree tuple vanish.
    Fails(Vec<GroupElement>),
}

fn invertible_representative(a: &GradedAlgebra, g: &GroupElement) -> Result<Option<AlgElement>> {
    let comp = a.component(g);
    for &i in comp {
        let b = AlgElement::basis(i);
        if a.is_invertible(&b)? {
            return Ok(Some(b));
        }
    }
    if comp.len() > 1 {
        let mix = AlgElement::from_pairs(comp.iter().enumerate().map(|(n, &i)| (i, CycScalar::from_int(n as i64 + 1))));
        if a.is_invertible(&mix)? {
            return Ok(Some(mix));
        }
    }
    Ok(None)
}

/// Span of products along a degree word, deduplicated by canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
enum SpanKey {
    Basis(BTreeSet<usize>),
    Rows(Vec<Vec<String>>),
}

pub fn check_condition_i(a: &GradedAlgebra, n_max: usize) -> Result<ConditionI> {
    let g = a.group();
    let elems = g.elements();
    if let Some(m) = elems.iter().find(|x| a.component(x).is_empty()) {
        return Ok(ConditionI::Fails(vec![m.clone()]));
    }
    if a.unit().is_some() {
        let mut all = true;
        for x in &elems {
            if invertible_representative(a, x)?.is_none() {
                all = false;
                break;
            }
        }
        if all {
            return Ok(ConditionI::Certified);
        }
    }
    if a.is_monomial() {
        Ok(bfs_monomial(a, &elems, n_max))
    } else {
        bfs_general(a, &elems, n_max)
    }
}

/// For monomial algebras the span of products of basis elements is spanned
/// by basis elements, so a span is just a set of indices.
fn bfs_monomial(a: &GradedAlgebra, elems: &[GroupElement], n_max: usize) -> ConditionI {
    let mut seen: HashSet<SpanKey> = HashSet::new();
    let mut queue: VecDeque<(BTreeSet<usize>, Vec<GroupElement>)> = VecDeque::new();
    for x in elems {
        let s: BTreeSet<usize> = a.component(x).iter().copied().collect();
        if seen.insert(SpanKey::Basis(s.clone())) {
            queue.push_back((s, vec![x.clone()]));
        }
    }
    while let Some((span, word)) = queue.pop_front() {
        if word.len() >= n_max {
            continue;
        }
        for x in elems {
            let mut next = BTreeSet::new();
            for &i in &span {
                for &j in a.component(x) {
                    for (k, _) in a.basis_product(i, j) {
                        next.insert(*k);
                    }
                }
            }
            let mut w = word.clone();
            w.push(x.clone());
            if next.is_empty() {
                return ConditionI::Fails(w);
            }
            if seen.insert(SpanKey::Basis(next.clone())) {
                queue.push_back((next, w));
            }
        }
    }
    ConditionI::UpTo(n_max)
}

fn bfs_general(a: &GradedAlgebra, elems: &[GroupElement], n_max: usize) -> Result<ConditionI> {
    let dim = a.dim();
    let key = |rows: &[Vec<CycScalar>]| SpanKey::Rows(rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect());
    let mut seen: HashSet<SpanKey> = HashSet::new();
    let mut queue: VecDeque<(Vec<AlgElement>, Vec<GroupElement>)> = VecDeque::new();
    for x in elems {
        let basis: Vec<AlgElement> = a.component(x).iter().map(|&i| AlgElement::basis(i)).collect();
        let rows: Vec<Vec<CycScalar>> = basis.iter().map(|b| b.to_dense(dim)).collect();
        let (r, _) = linalg::rref(&rows)?;
        if seen.insert(key(&r)) {
            queue.push_back((basis, vec![x.clone()]));
        }
    }
    while let Some((span, word)) = queue.pop_front() {
        if word.len() >= n_max {
            continue;
        }
        for x in elems {
            let mut ech = EchelonBasis::new();
            for s in &span {
                for &j in a.component(x) {
                    ech.insert(&a.mul(s, &AlgElement::basis(j)).to_dense(dim));
                }
            }
            let mut w = word.clone();
            w.push(x.clone());
            if ech.dim() == 0 {
                return Ok(ConditionI::Fails(w));
            }
            let rows: Vec<Vec<CycScalar>> = ech.rows().cloned().collect();
            if seen.insert(key(&rows)) {
                queue.push_back((rows.iter().map(|r| AlgElement::from_dense(r)).collect(), w));
            }
        }
    }
    Ok(ConditionI::UpTo(n_max))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Minimality {
    pub minimal: bool,
    pub det: CycScalar,
    pub g0: Subgroup,
}

/// Decides minimality three ways (determinant of `M^A`, distinct rows,
/// trivial `G_0`) and fails if they disagree.
pub fn minimality(beta: &Bicharacter) -> Result<Minimality> {
    let m = beta.matrix();
    let det = linalg::det_exact(&m)?;
    let distinct = (0..m.len()).all(|i| (i + 1..m.len()).all(|j| m[i] != m[j]));
    let g0 = beta.g0();
    let by_det = !det.is_zero();
    let by_g0 = g0.is_trivial();
    if by_det != distinct || distinct != by_g0 {
        return Err(Error::Inconsistent(format!(
            "minimality criteria disagree: det != 0 is {by_det}, distinct rows is {distinct}, trivial G0 is {by_g0}"
        )));
    }
    Ok(Minimality { minimal: by_det, det, g0 })
}

/// `A` regraded along a surjection `alpha: G -> H`.
pub fn coarsen_by(a: &GradedAlgebra, alpha: &GroupHom) -> Result<GradedAlgebra> {
    if alpha.source() != a.group() {
        return Err(Error::GroupMismatch(format!("algebra over {}, map from {}", a.group(), alpha.source())));
    }
    if !alpha.is_surjective() {
        return Err(Error::InvalidHom("coarsening map must be surjective".into()));
    }
    a.regraded(alpha.target().clone(), |i| alpha.apply(a.degree(i)))
}

#[derive(Clone, Debug)]
pub struct Coarsening {
    pub algebra: GradedAlgebra,
    pub theta: Bicharacter,
    pub pi: GroupHom,
    pub g0: Subgroup,
}

/// The coarsening along `G -> G / G_0(beta)` and the induced `theta`.
pub fn minimal_coarsening(a: &GradedAlgebra, beta: &Bicharacter) -> Result<Coarsening> {
    if beta.group() != a.group() {
        return Err(Error::GroupMismatch("bicharacter and algebra groups differ".into()));
    }
    let g0 = beta.g0();
    let (t, pi) = quotient(a.group(), &g0)?;
    let fibers: Vec<Vec<GroupElement>> = t
        .elements()
        .iter()
        .map(|x| preimage(&pi, x))
        .collect::<Result<_>>()?;
    let t_elems = t.elements();
    let mut vals = Vec::new();
    for (i, _) in t_elems.iter().enumerate() {
        for (j, _) in t_elems.iter().enumerate() {
            let v = beta.get(&fibers[i][0], &fibers[j][0]).clone();
            for g in &fibers[i] {
                for h in &fibers[j] {
                    if *beta.get(g, h) != v {
                        return Err(Error::Inconsistent(format!(
                            "induced form is not well defined at ({g}, {h})"
                        )));
                    }
                }
            }
            vals.push(v);
        }
    }
    let theta = Bicharacter { group: t.clone(), values: vals };
    if !theta.g0().is_trivial() {
        return Err(Error::Inconsistent("induced form still has a nontrivial kernel".into()));
    }
    let algebra = coarsen_by(a, &pi)?;
    Ok(Coarsening { algebra, theta, pi, g0 })
}

/// Serializable summary of the regularity analysis of one algebra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularityCertificate {
    pub group: AbGroup,
    pub elements: Vec<String>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<Vec<CycScalar>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_issue: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub det: Option<CycScalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimal: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g0: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coarsening: Option<CoarseningSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    RegularCertified,
    RegularUpTo { n: usize },
    NotRegular { witness: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoarseningSummary {
    pub quotient: AbGroup,
    pub theta: Vec<Vec<CycScalar>>,
    pub minimal: bool,
}

impl RegularityCertificate {
    /// Condition (i) holds (bounded or certified) and the commutation scalars form a bicharacter.
    pub fn is_regular(&self) -> bool {
        !matches!(self.verdict, Verdict::NotRegular { .. }) && self.beta.is_some()
    }

    pub fn beta(&self) -> Option<Bicharacter> {
        let m = self.beta.as_ref()?;
        let n = self.group.order() as usize;
        Some(Bicharacter {
            group: self.group.clone(),
            values: m.iter().flatten().cloned().collect::<Vec<_>>().into_iter().take(n * n).collect(),
        })
    }
}

pub fn analyze(a: &GradedAlgebra, n_max: usize) -> Result<RegularityCertificate> {
    let group = a.group().clone();
    let elements = group.elements().iter().map(|g| g.to_string()).collect();
    let cond = check_condition_i(a, n_max)?;
    let scan = extract_bicharacter(a);
    let mut cert = RegularityCertificate {
        group,
        elements,
        verdict: Verdict::RegularCertified,
        beta: None,
        beta_issue: None,
        det: None,
        minimal: None,
        g0: None,
        coarsening: None,
    };
    let beta = match scan {
        BicharacterScan::Consistent(b) => Some(b),
        BicharacterScan::MissingComponent(g) => {
            cert.beta_issue = Some(format!("component {g} is zero"));
            None
        }
        BicharacterScan::Inconsistent { g, h, detail } => {
            cert.beta_issue = Some(format!("no commutation scalar for ({g}, {h}): {detail}"));
            None
        }
        BicharacterScan::Undetermined { g, h } => {
            cert.beta_issue = Some(format!("all products between components {g} and {h} vanish"));
            None
        }
        BicharacterScan::NotBicharacter(v) => {
            cert.beta_issue = Some(format!("commutation scalars are not a bicharacter: {v}"));
            None
        }
    };
    cert.verdict = match (&cond, &beta) {
        (ConditionI::Fails(w), _) => Verdict::NotRegular {
            witness: w.iter().map(|g| g.to_string()).collect(),
        },
        (_, None) => Verdict::NotRegular {
            witness: vec![cert.beta_issue.clone().unwrap_or_default()],
        },
        (ConditionI::Certified, Some(_)) => Verdict::RegularCertified,
        (ConditionI::UpTo(n), Some(_)) => Verdict::RegularUpTo { n: *n },
    };
    if let Some(b) = beta {
        let m = minimality(&b)?;
        cert.beta = Some(b.matrix());
        cert.det = Some(m.det.clone());
        cert.minimal = Some(m.minimal);
        cert.g0 = Some(m.g0.members().iter().map(|g| g.to_string()).collect());
        if !m.minimal {
            let c = minimal_coarsening(a, &b)?;
            cert.coarsening = Some(CoarseningSummary {
                quotient: c.pi.target().clone(),
                theta: c.theta.matrix(),
                minimal: minimality(&c.theta)?.minimal,
            });
        }
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galg::{elementary_grading, grassmann, m11_grassmann, pauli_grading, tensor_product_grading, twisted_group_algebra, Cocycle};

    fn consistent(a: &GradedAlgebra) -> Bicharacter {
        match extract_bicharacter(a) {
            BicharacterScan::Consistent(b) => b,
            other => panic!("expected a bicharacter, got {other:?}"),
        }
    }

    fn e_times_kz2(k: usize) -> GradedAlgebra {
        let kz2 = twisted_group_algebra(&Cocycle::trivial(&AbGroup::cyclic(2))).unwrap();
        tensor_product_grading(&grassmann(k).unwrap(), &kz2).unwrap()
    }

    #[test]
    fn grassmann_gives_tau() {
        let e = grassmann(4).unwrap();
        let b = consistent(&e);
        assert_eq!(b, Bicharacter::tau());
        let m = minimality(&b).unwrap();
        assert!(m.minimal);
        assert_eq!(m.det, CycScalar::from_int(-2));
        assert!(m.g0.is_trivial());
        assert_eq!(check_condition_i(&e, 6).unwrap(), ConditionI::Fails(vec![AbGroup::cyclic(2).el(&[1]); 5]));
        assert_eq!(check_condition_i(&e, 4).unwrap(), ConditionI::UpTo(4));
    }

    #[test]
    fn pauli_bicharacter() {
        let p = pauli_grading(2).unwrap();
        let b = consistent(&p);
        let g = p.group().clone();
        for x in g.elements() {
            for y in g.elements() {
                let (a, bb, c, d) = (x.residues()[0], x.residues()[1], y.residues()[0], y.residues()[1]);
                let e = (a * d + bb * c) % 2;
                let expect = if e == 1 { -1 } else { 1 };
                assert_eq!(*b.get(&x, &y), CycScalar::from_int(expect));
            }
        }
        assert_eq!(check_condition_i(&p, 6).unwrap(), ConditionI::Certified);
        let p3 = pauli_grading(3).unwrap();
        let b3 = consistent(&p3);
        assert!(minimality(&b3).unwrap().minimal);
    }

    #[test]
    fn elementary_m2_is_inconsistent() {
        let z2 = AbGroup::cyclic(2);
        let m2 = elementary_grading(2, &z2, &[z2.el(&[0]), z2.el(&[1])]).unwrap();
        assert!(matches!(extract_bicharacter(&m2), BicharacterScan::Inconsistent { .. }));
        let cert = analyze(&m2, 6).unwrap();
        assert!(!cert.is_regular());
    }

    #[test]
    fn missing_component_fails_at_length_one() {
        let z3 = AbGroup::cyclic(3);
        let m2 = elementary_grading(2, &z3, &[z3.zero(), z3.zero()]).unwrap();
        assert_eq!(check_condition_i(&m2, 6).unwrap(), ConditionI::Fails(vec![z3.el(&[1])]));
    }

    #[test]
    fn trivial_bicharacter_is_not_minimal() {
        let z2 = AbGroup::cyclic(2);
        let one = Bicharacter::from_fn(&z2, |_, _| CycScalar::one());
        let m = minimality(&one).unwrap();
        assert!(!m.minimal);
        assert!(m.det.is_zero());
        assert_eq!(m.g0.order(), 2);
    }

    #[test]
    fn tensor_with_group_algebra_coarsens_to_tau() {
        let a = e_times_kz2(4);
        let b = consistent(&a);
        let g = a.group().clone();
        for x in g.elements() {
            for y in g.elements() {
                let s = x.residues()[0] * y.residues()[0];
                assert_eq!(*b.get(&x, &y), CycScalar::from_int(if s == 1 { -1 } else { 1 }));
            }
        }
        let m = minimality(&b).unwrap();
        assert!(!m.minimal);
        assert_eq!(m.g0.members(), &[g.el(&[0, 0]), g.el(&[0, 1])]);
        let c = minimal_coarsening(&a, &b).unwrap();
        assert_eq!(c.pi.target().order(), 2);
        assert_eq!(c.theta, Bicharacter::tau());
        assert_eq!(consistent(&c.algebra), c.theta);
        assert!(minimality(&c.theta).unwrap().minimal);
        assert_eq!(check_condition_i(&c.algebra, 4).unwrap(), check_condition_i(&a, 4).unwrap());
    }

    #[test]
    fn m11_is_minimal() {
        let m = m11_grassmann(4).unwrap();
        let b = consistent(&m);
        let mm = minimality(&b).unwrap();
        assert!(mm.minimal);
        assert!(!mm.det.is_zero());
    }

    #[test]
    fn coarsening_examples() {
        let z3 = AbGroup::cyclic(3);
        let r = elementary_grading(3, &z3, &[z3.el(&[0]), z3.el(&[0]), z3.el(&[1])]).unwrap();
        let same = coarsen_by(&r, &GroupHom::identity(&z3)).unwrap();
        assert_eq!(same.degrees(), r.degrees());
        let flat = coarsen_by(&r, &GroupHom::to_trivial(&z3)).unwrap();
        assert_eq!(flat.support().len(), 1);
        let p = pauli_grading(2).unwrap();
        let proj = GroupHom::coordinate_projection(p.group(), 0).unwrap();
        let c = coarsen_by(&p, &proj).unwrap();
        for g in c.support() {
            assert_eq!(c.component(&g).len(), 2);
        }
    }

    #[test]
    fn general_bfs_agrees_with_monomial_bfs() {
        for k in 2..=4 {
            let e = grassmann(k).unwrap();
            let elems = e.group().elements();
            assert_eq!(bfs_general(&e, &elems, k + 2).unwrap(), bfs_monomial(&e, &elems, k + 2));
        }
    }

    #[test]
    fn certificate_roundtrips() {
        let cert = analyze(&e_times_kz2(3), 4).unwrap();
        assert!(cert.coarsening.is_some());
        let text = serde_json::to_string(&cert).unwrap();
        let back: RegularityCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.beta().unwrap().matrix(), cert.beta.clone().unwrap());
    }
}
