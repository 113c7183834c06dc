//! Graded identities and graded central polynomials: exact testers, the
//! multilinear solution spaces, the odd annihilator ideal of a `Z2`-graded
//! algebra and a sign oracle for identities of the Grassmann algebra.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::abgroup::{AbGroup, GroupElement};
use crate::cpoly::{CommPoly, Monomial, Var, VarRegistry};
use crate::error::{Error, Result};
use crate::freegr::{multilinear_from, permutations, GVar, GenericAssignment, GradedPoly};
use crate::galg::{grassmann_orbit_tuples, grassmann_subsets, AlgElement, GenElement, GradedAlgebra};
use crate::linalg::EchelonBasis;
use crate::scalar::CycScalar;

/// A substitution showing that a value is nonzero, or fails to commute with `against`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub assignment: BTreeMap<String, String>,
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub against: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralityVerdict {
    pub is_identity: bool,
    pub is_central: bool,
    pub is_proper_central: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nonidentity_witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noncentral_witness: Option<Witness>,
}

impl CentralityVerdict {
    fn from_witnesses(nonidentity: Option<Witness>, noncentral: Option<Witness>) -> Self {
        let is_identity = nonidentity.is_none();
        let is_central = noncentral.is_none();
        CentralityVerdict {
            is_identity,
            is_central,
            is_proper_central: is_central && !is_identity,
            nonidentity_witness: nonidentity,
            noncentral_witness: noncentral,
        }
    }

    /// One of "identity", "proper central", "central" (never for consistent input) or "not central".
    pub fn summary(&self) -> &'static str {
        match (self.is_identity, self.is_central) {
            (true, _) => "identity",
            (false, true) => "proper central",
            (false, false) => "not central",
        }
    }
}

fn check_group(f: &GradedPoly, a: &GradedAlgebra) -> Result<()> {
    if f.group() != a.group() {
        return Err(Error::GroupMismatch(format!("polynomial over {}, algebra over {}", f.group(), a.group())));
    }
    Ok(())
}

/// Decides a multilinear `f` by evaluating on every tuple of homogeneous basis elements.
pub fn test_multilinear(f: &GradedPoly, a: &GradedAlgebra) -> Result<CentralityVerdict> {
    if !f.is_multilinear() {
        return Err(Error::NotMultilinear);
    }
    check_group(f, a)?;
    let vars: Vec<GVar> = f.variables().into_iter().collect();
    let choices: Vec<&[usize]> = vars.iter().map(|v| a.component(&v.degree)).collect();
    if choices.iter().any(|c| c.is_empty()) {
        return Ok(CentralityVerdict::from_witnesses(None, None));
    }
    let mut idx = vec![0usize; vars.len()];
    let mut tuples = Vec::new();
    loop {
        tuples.push(idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect::<Vec<_>>());
        let mut s = 0;
        while s < idx.len() {
            idx[s] += 1;
            if idx[s] < choices[s].len() {
                break;
            }
            idx[s] = 0;
            s += 1;
        }
        if s == idx.len() {
            break;
        }
    }
    scan_tuples(f, a, &vars, tuples.iter().map(|t| t.as_slice()))
}

/// As [`test_multilinear`] but only over the given basis tuples (one index per
/// variable, in increasing id order); tuples of the wrong degrees are skipped.
///
/// Sound when the tuples represent every orbit of basis tuples under graded
/// automorphisms, as [`grassmann_tuples`] does for `E_k`.
pub fn test_multilinear_on(f: &GradedPoly, a: &GradedAlgebra, tuples: &[Vec<usize>]) -> Result<CentralityVerdict> {
    if !f.is_multilinear() {
        return Err(Error::NotMultilinear);
    }
    check_group(f, a)?;
    let vars: Vec<GVar> = f.variables().into_iter().collect();
    let admissible = tuples.iter().filter(|t| {
        t.len() == vars.len() && t.iter().zip(&vars).all(|(&i, v)| i < a.dim() && *a.degree(i) == v.degree)
    });
    scan_tuples(f, a, &vars, admissible.map(|t| t.as_slice()))
}

fn scan_tuples<'t>(
    f: &GradedPoly,
    a: &GradedAlgebra,
    vars: &[GVar],
    tuples: impl Iterator<Item = &'t [usize]>,
) -> Result<CentralityVerdict> {
    let mut nonidentity = None;
    let mut noncentral = None;
    for t in tuples {
        let values: HashMap<u32, AlgElement> = vars.iter().zip(t).map(|(v, &i)| (v.id, AlgElement::basis(i))).collect();
        let val = f.evaluate_unchecked(a, &values)?;
        if val.is_zero() {
            continue;
        }
        let assignment = || vars.iter().zip(t).map(|(v, &i)| (v.to_string(), a.label(i).to_string())).collect();
        if nonidentity.is_none() {
            nonidentity = Some(Witness { assignment: assignment(), value: a.format_element(&val), against: None });
        }
        if noncentral.is_none() {
            if let Some(j) = (0..a.dim()).find(|&j| !a.commutator(&val, &AlgElement::basis(j)).is_zero()) {
                noncentral = Some(Witness {
                    assignment: assignment(),
                    value: a.format_element(&val),
                    against: Some(a.label(j).to_string()),
                });
            }
        }
        if noncentral.is_some() {
            break;
        }
    }
    Ok(CentralityVerdict::from_witnesses(nonidentity, noncentral))
}

/// Orbit representatives of disjoint-support basis tuples of length `d` in
/// [`grassmann`](crate::galg::grassmann)`(k)`, as basis indices.
pub fn grassmann_tuples(k: usize, d: usize) -> Vec<Vec<usize>> {
    let mut pos = vec![0usize; 1 << k];
    for (i, s) in grassmann_subsets(k).into_iter().enumerate() {
        pos[s as usize] = i;
    }
    grassmann_orbit_tuples(k, d)
        .into_iter()
        .map(|t| t.into_iter().map(|m| pos[m as usize]).collect())
        .collect()
}

/// Decides `f` by substituting generic homogeneous elements.
pub fn test_generic(f: &GradedPoly, a: &GradedAlgebra) -> Result<CentralityVerdict> {
    test_generic_product(std::slice::from_ref(f), a)
}

/// Decides the product `f_1 f_2 ... f_m` of generic evaluations.
///
/// With pairwise disjoint variables each factor's generic value is written as
/// `sum_p phi_p F_p` with linearly independent polynomials `phi_p` and
/// scalar elements `F_p`; products of the `phi` over disjoint variable sets
/// stay independent, so the product is zero (central) iff every product
/// `F_p G_q ...` is. Shared variables fall back to expanding the product.
pub fn test_generic_product(factors: &[GradedPoly], a: &GradedAlgebra) -> Result<CentralityVerdict> {
    if factors.is_empty() {
        return Err(Error::Precondition("empty product".into()));
    }
    let vars = collect_variables(factors, a)?;
    let disjoint = vars.len() == factors.iter().map(|f| f.variables().len()).sum::<usize>();
    let (is_identity, is_central) = if disjoint {
        let mut registry = VarRegistry::new();
        let mut combos: Vec<AlgElement> = Vec::new();
        for (n, f) in factors.iter().enumerate() {
            let parts = span_decomposition(&f.evaluate_generic(a, &mut registry)?.0);
            combos = if n == 0 {
                parts
            } else {
                combos.iter().flat_map(|c| parts.iter().map(move |p| a.mul(c, p))).collect()
            };
        }
        (combos.iter().all(|c| c.is_zero()), combos.iter().all(|c| a.is_central(c)))
    } else {
        let val = expand_product(factors, &vars, a)?;
        let comm_zero = (0..a.dim()).all(|j| a.commutator(&val, &GenElement::term(j, CommPoly::one())).is_zero());
        (val.is_zero(), comm_zero)
    };
    let nonidentity = if is_identity {
        None
    } else {
        Some(Witness { against: None, ..numeric_witness(factors, &vars, a, |_| true)? })
    };
    let noncentral = if is_central { None } else { Some(numeric_witness(factors, &vars, a, |v| !a.is_central(v))?) };
    Ok(CentralityVerdict::from_witnesses(nonidentity, noncentral))
}

fn collect_variables(factors: &[GradedPoly], a: &GradedAlgebra) -> Result<BTreeSet<GVar>> {
    let mut vars: BTreeSet<GVar> = BTreeSet::new();
    let mut degree_of: HashMap<u32, GroupElement> = HashMap::new();
    for f in factors {
        check_group(f, a)?;
        for v in f.variables() {
            if let Some(d) = degree_of.insert(v.id, v.degree.clone()) {
                if d != v.degree {
                    return Err(Error::InvalidPoly(format!("variable x{} has degrees {d} and {}", v.id, v.degree)));
                }
            }
            vars.insert(v);
        }
    }
    Ok(vars)
}

fn expand_product(factors: &[GradedPoly], vars: &BTreeSet<GVar>, a: &GradedAlgebra) -> Result<GenElement> {
    let mut registry = VarRegistry::new();
    let values = GenericAssignment::new(vars, a, &mut registry).values();
    let mut acc: Option<GenElement> = None;
    for f in factors {
        let v = f.evaluate_unchecked(a, &values)?;
        acc = Some(match acc {
            Some(p) => a.mul_generic(&p, &v),
            None => v,
        });
    }
    acc.ok_or_else(|| Error::Precondition("empty product".into()))
}

/// Scalar elements `F_p` with `v = sum_p phi_p F_p`, the `phi_p` being the
/// reduced echelon basis of the span of the coordinates of `v`.
pub fn span_decomposition(v: &GenElement) -> Vec<AlgElement> {
    let mut index: HashMap<&Monomial, usize> = HashMap::new();
    for p in v.coords().values() {
        for (m, _) in p.terms() {
            let n = index.len();
            index.entry(m).or_insert(n);
        }
    }
    let dense = |p: &CommPoly| {
        let mut row = vec![CycScalar::zero(); index.len()];
        for (m, c) in p.terms() {
            row[index[m]] = c.clone();
        }
        row
    };
    let mut ech = EchelonBasis::new();
    for p in v.coords().values() {
        ech.insert(&dense(p));
    }
    ech.pivots()
        .into_iter()
        .map(|col| {
            AlgElement::from_pairs(v.coords().iter().map(|(&k, p)| (k, dense(p)[col].clone())))
        })
        .collect()
}

/// A random integer specialization whose product value satisfies `accept` (and is nonzero).
fn numeric_witness(
    factors: &[GradedPoly],
    vars: &BTreeSet<GVar>,
    a: &GradedAlgebra,
    accept: impl Fn(&AlgElement) -> bool,
) -> Result<Witness> {
    let mut registry = VarRegistry::new();
    let assignment = GenericAssignment::new(vars, a, &mut registry);
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e37);
    for attempt in 0..20_000i64 {
        let bound = 2 + attempt / 16;
        let point: HashMap<Var, CycScalar> = assignment
            .vars
            .values()
            .flatten()
            .map(|&(z, _)| (z, CycScalar::from_int(rng.gen_range(-bound..=bound))))
            .collect();
        let spec = assignment.specialize(|z| point[&z].clone());
        let mut value: Option<AlgElement> = None;
        for f in factors {
            let v = f.evaluate_unchecked(a, &spec)?;
            value = Some(match value {
                Some(acc) => a.mul(&acc, &v),
                None => v,
            });
        }
        let value = value.unwrap_or_else(AlgElement::zero);
        if value.is_zero() || !accept(&value) {
            continue;
        }
        let against = (0..a.dim())
            .find(|&j| !a.commutator(&value, &AlgElement::basis(j)).is_zero())
            .map(|j| a.label(j).to_string());
        return Ok(Witness {
            assignment: vars.iter().map(|v| (v.to_string(), a.format_element(&spec[&v.id]))).collect(),
            value: a.format_element(&value),
            against,
        });
    }
    Err(Error::Inconsistent("generic value is nonzero but no integer specialization was found".into()))
}

/// Solution spaces of `f = sum_sigma gamma_sigma x_sigma(1) ... x_sigma(d)` over
/// fixed variable degrees. Coordinates follow [`permutations`]`(d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralSpace {
    pub degrees: Vec<GroupElement>,
    pub permutations: Vec<Vec<usize>>,
    pub central_basis: Vec<Vec<CycScalar>>,
    pub identity_basis: Vec<Vec<CycScalar>>,
    pub central_dim: usize,
    pub identity_dim: usize,
    pub proper_exists: bool,
}

impl CentralSpace {
    /// The polynomial in `x1, .., xd` with coefficient vector `gamma`.
    pub fn polynomial(&self, group: &AbGroup, gamma: &[CycScalar]) -> Result<GradedPoly> {
        let vars: Vec<GVar> = self.degrees.iter().enumerate().map(|(i, g)| GVar::new(i as u32 + 1, g.clone())).collect();
        let at: HashMap<&[usize], &CycScalar> = self.permutations.iter().map(|p| p.as_slice()).zip(gamma).collect();
        multilinear_from(group, &vars, |p| at[p].clone())
    }
}

pub const CENTRAL_SPACE_MAX_ARITY: usize = 4;

pub fn multilinear_central_space(a: &GradedAlgebra, degrees: &[GroupElement]) -> Result<CentralSpace> {
    let d = degrees.len();
    if d == 0 || d > CENTRAL_SPACE_MAX_ARITY {
        return Err(Error::GuardExceeded(format!("arity {d} outside 1..={CENTRAL_SPACE_MAX_ARITY}")));
    }
    if let Some(g) = degrees.iter().find(|g| !a.group().contains(g)) {
        return Err(Error::InvalidElement(format!("{g} is not in {}", a.group())));
    }
    let perms = permutations(d);
    let width = perms.len();
    let choices: Vec<&[usize]> = degrees.iter().map(|g| a.component(g)).collect();
    let mut identity = EchelonBasis::new();
    let mut central = EchelonBasis::new();
    if choices.iter().all(|c| !c.is_empty()) {
        let mut idx = vec![0usize; d];
        loop {
            let t: Vec<usize> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
            let words: Vec<AlgElement> = perms
                .iter()
                .map(|p| a.basis_word(&p.iter().map(|&i| t[i]).collect::<Vec<_>>()))
                .collect();
            add_rows(&mut identity, &words, width);
            for j in 0..a.dim() {
                let e = AlgElement::basis(j);
                let comms: Vec<AlgElement> = words.iter().map(|w| a.commutator(w, &e)).collect();
                add_rows(&mut central, &comms, width);
            }
            let mut s = 0;
            while s < d {
                idx[s] += 1;
                if idx[s] < choices[s].len() {
                    break;
                }
                idx[s] = 0;
                s += 1;
            }
            if s == d {
                break;
            }
        }
    }
    let central_basis = central.kernel(width);
    let identity_basis = identity.kernel(width);
    let (central_dim, identity_dim) = (central_basis.len(), identity_basis.len());
    Ok(CentralSpace {
        degrees: degrees.to_vec(),
        permutations: perms,
        central_basis,
        identity_basis,
        central_dim,
        identity_dim,
        proper_exists: central_dim > identity_dim,
    })
}

/// One linear condition per output coordinate: `sum_sigma gamma_sigma v_sigma[k] = 0`.
fn add_rows(ech: &mut EchelonBasis, values: &[AlgElement], width: usize) {
    let coords: BTreeSet<usize> = values.iter().flat_map(|v| v.coords().keys().copied()).collect();
    for k in coords {
        if ech.dim() == width {
            return;
        }
        let row: Vec<CycScalar> = values.iter().map(|v| v.coeff(k)).collect();
        ech.insert(&row);
    }
}

/// `{a in A_1 : ab = 0 for all b in A_1}` for a `Z2`-graded algebra.
#[derive(Clone, Debug)]
pub struct AnnihilatorIdeal {
    pub basis: Vec<AlgElement>,
    pub invariants: IdealInvariants,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealInvariants {
    pub odd: bool,
    pub annihilates_odd: bool,
    pub square_zero: bool,
    pub left_ideal: bool,
    pub right_ideal: bool,
}

impl IdealInvariants {
    pub fn hold(&self) -> bool {
        self.odd && self.annihilates_odd && self.square_zero && self.left_ideal && self.right_ideal
    }
}

impl AnnihilatorIdeal {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn annihilator_ideal(a: &GradedAlgebra) -> Result<AnnihilatorIdeal> {
    if a.group() != &AbGroup::cyclic(2) {
        return Err(Error::Precondition(format!("annihilator ideal needs a Z2 grading, got {}", a.group())));
    }
    let one = a.group().el(&[1]);
    let odd = a.component(&one).to_vec();
    let mut cond = EchelonBasis::new();
    for &j in &odd {
        let prods: Vec<AlgElement> = odd.iter().map(|&i| a.mul(&AlgElement::basis(i), &AlgElement::basis(j))).collect();
        add_rows(&mut cond, &prods, odd.len());
    }
    let basis: Vec<AlgElement> = cond
        .kernel(odd.len())
        .into_iter()
        .map(|x| AlgElement::from_pairs(odd.iter().copied().zip(x)))
        .collect();
    let invariants = ideal_invariants(a, &basis);
    Ok(AnnihilatorIdeal { basis, invariants })
}

fn ideal_invariants(a: &GradedAlgebra, basis: &[AlgElement]) -> IdealInvariants {
    let dim = a.dim();
    let one = a.group().el(&[1]);
    let mut span = EchelonBasis::new();
    for t in basis {
        span.insert(&t.to_dense(dim));
    }
    let inside = |v: &AlgElement| span.contains(&v.to_dense(dim));
    let odd_basis: Vec<AlgElement> = a.component(&one).iter().map(|&i| AlgElement::basis(i)).collect();
    IdealInvariants {
        odd: basis.iter().all(|t| t.coords().keys().all(|&i| *a.degree(i) == one)),
        annihilates_odd: basis.iter().all(|t| odd_basis.iter().all(|b| a.mul(t, b).is_zero())),
        square_zero: basis.iter().all(|s| basis.iter().all(|t| a.mul(s, t).is_zero())),
        left_ideal: (0..dim).all(|i| basis.iter().all(|t| inside(&a.mul(&AlgElement::basis(i), t)))),
        right_ideal: (0..dim).all(|i| basis.iter().all(|t| inside(&a.mul(t, &AlgElement::basis(i))))),
    }
}

/// `A / T` on the basis vectors outside the pivots of `T`, with the induced
/// grading; checks that the projection is multiplicative on all basis pairs.
pub fn quotient_by(a: &GradedAlgebra, t: &AnnihilatorIdeal) -> Result<GradedAlgebra> {
    if !t.invariants.hold() {
        return Err(Error::Inconsistent(format!("not a square-zero odd ideal: {:?}", t.invariants)));
    }
    let dim = a.dim();
    let mut span = EchelonBasis::new();
    for x in &t.basis {
        span.insert(&x.to_dense(dim));
    }
    let pivots = span.pivots();
    let keep: Vec<usize> = (0..dim).filter(|i| !pivots.contains(i)).collect();
    let mut new_index = vec![usize::MAX; dim];
    for (n, &i) in keep.iter().enumerate() {
        new_index[i] = n;
    }
    let project = |v: &AlgElement| -> AlgElement {
        let r = span.reduce(&v.to_dense(dim));
        AlgElement::from_pairs(keep.iter().map(|&i| (new_index[i], r[i].clone())))
    };
    let mut table = Vec::with_capacity(keep.len() * keep.len());
    for &i in &keep {
        for &j in &keep {
            let p = project(&a.mul(&AlgElement::basis(i), &AlgElement::basis(j)));
            table.push(p.coords().iter().map(|(&k, c)| (k, c.clone())).collect());
        }
    }
    let b = GradedAlgebra::new(
        a.group().clone(),
        keep.iter().map(|&i| a.label(i).to_string()).collect(),
        keep.iter().map(|&i| a.degree(i).clone()).collect(),
        table,
        a.unit().map(&project),
    )?;
    for i in 0..dim {
        for j in 0..dim {
            let (x, y) = (AlgElement::basis(i), AlgElement::basis(j));
            if project(&a.mul(&x, &y)) != b.mul(&project(&x), &project(&y)) {
                return Err(Error::Inconsistent(format!(
                    "projection not multiplicative at ({}, {})",
                    a.label(i),
                    a.label(j)
                )));
            }
        }
    }
    Ok(b)
}

/// Whether a multilinear `f` (trivially or `Z2`-graded) is an identity of the
/// infinite Grassmann algebra.
///
/// Substituting disjoint monomials of parities `p` sends each word to the sign
/// of the permutation it induces on the odd variables, so `f` is an identity
/// iff `sum_sigma gamma_sigma sgn_p(sigma) = 0` for every admissible `p`.
pub fn grassmann_multilinear_oracle(f: &GradedPoly) -> Result<bool> {
    if !f.is_multilinear() {
        return Err(Error::NotMultilinear);
    }
    let g = f.group();
    let graded = if g.is_trivial() {
        false
    } else if *g == AbGroup::cyclic(2) {
        true
    } else {
        return Err(Error::Precondition(format!("Grassmann oracle needs a trivial or Z2 grading, got {g}")));
    };
    let vars: Vec<GVar> = f.variables().into_iter().collect();
    let position: HashMap<u32, usize> = vars.iter().enumerate().map(|(i, v)| (v.id, i)).collect();
    let d = vars.len();
    let parities: Vec<Vec<bool>> = if graded {
        vec![vars.iter().map(|v| v.degree.residues()[0] == 1).collect()]
    } else {
        (0..1u32 << d).map(|m| (0..d).map(|i| m >> i & 1 == 1).collect()).collect()
    };
    for p in parities {
        let mut sum = CycScalar::zero();
        for (w, c) in f.terms() {
            let odd: Vec<usize> = w.iter().map(|v| position[&v.id]).filter(|&i| p[i]).collect();
            let inversions = (0..odd.len()).flat_map(|i| (i + 1..odd.len()).map(move |j| (i, j))).filter(|&(i, j)| odd[i] > odd[j]).count();
            sum = if inversions % 2 == 0 { sum.add_ref(c) } else { sum.sub_ref(c) };
        }
        if !sum.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
