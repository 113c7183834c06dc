//! Polynomials in the free `G`-graded algebra `K<X_G>`.
//!
//! Each variable carries an id and a degree. Polynomials are stored fully
//! expanded as a map from words to nonzero coefficients.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::abgroup::{preimage, AbGroup, GroupElement, GroupHom};
use crate::cpoly::{CommPoly, Var, VarRegistry};
use crate::error::{Error, Result};
use crate::galg::{AlgElement, Coeff, Element, GenElement, GradedAlgebra};
use crate::scalar::CycScalar;

/// Ids at or above this value are assigned to named (non-`x<n>`) variables by the parser.
pub const NAMED_VAR_BASE: u32 = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GVar {
    pub id: u32,
    pub degree: GroupElement,
}

impl GVar {
    pub fn new(id: u32, degree: GroupElement) -> Self {
        GVar { id, degree }
    }
}

impl fmt::Display for GVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}{{{}}}", self.id, self.degree)
    }
}

pub type Word = Vec<GVar>;

#[derive(Clone, Debug, PartialEq)]
pub struct GradedPoly {
    group: AbGroup,
    terms: BTreeMap<Word, CycScalar>,
}

impl GradedPoly {
    pub fn zero(group: &AbGroup) -> Self {
        GradedPoly {
            group: group.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(group: &AbGroup, c: CycScalar) -> Self {
        Self::monomial(group, Vec::new(), c).expect("empty word")
    }

    pub fn var(group: &AbGroup, id: u32, degree: GroupElement) -> Result<Self> {
        Self::monomial(group, vec![GVar::new(id, degree)], CycScalar::one())
    }

    pub fn monomial(group: &AbGroup, word: Word, c: CycScalar) -> Result<Self> {
        let mut p = Self::zero(group);
        p.add_term(word, c);
        p.validate()?;
        Ok(p)
    }

    /// Builds a polynomial from `(coefficient, word)` pairs, validating variable degrees.
    pub fn from_terms(group: &AbGroup, terms: impl IntoIterator<Item = (CycScalar, Word)>) -> Result<Self> {
        let mut p = Self::zero(group);
        for (c, w) in terms {
            p.add_term(w, c);
        }
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let mut seen: HashMap<u32, &GroupElement> = HashMap::new();
        for w in self.terms.keys() {
            for v in w {
                if !self.group.contains(&v.degree) {
                    return Err(Error::InvalidPoly(format!("degree {} of x{} is not in {}", v.degree, v.id, self.group)));
                }
                if let Some(d) = seen.insert(v.id, &v.degree) {
                    if d != &v.degree {
                        return Err(Error::InvalidPoly(format!("x{} used with degrees {d} and {}", v.id, v.degree)));
                    }
                }
            }
        }
        Ok(())
    }

    fn add_term(&mut self, w: Word, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        let next = match self.terms.get(&w) {
            Some(x) => x.add_ref(&c),
            None => c,
        };
        if next.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, next);
        }
    }

    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &CycScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn variables(&self) -> BTreeSet<GVar> {
        self.terms.keys().flatten().cloned().collect()
    }

    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    /// Every word contains each variable of the polynomial exactly once.
    pub fn is_multilinear(&self) -> bool {
        let vars = self.variables();
        self.terms.keys().all(|w| {
            w.len() == vars.len() && w.iter().collect::<BTreeSet<_>>().len() == w.len()
        })
    }

    /// The sum of variable degrees, if all words share it.
    pub fn homogeneous_degree(&self) -> Option<GroupElement> {
        let mut it = self.terms.keys().map(|w| self.group.sum(w.iter().map(|v| &v.degree)));
        let first = it.next()?;
        it.all(|g| g == first).then_some(first)
    }

    fn check_group(&self, other: &GradedPoly) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(format!("{} vs {}", self.group, other.group)));
        }
        Ok(())
    }

    fn merged(&self, other: &GradedPoly, sign: &CycScalar) -> Result<GradedPoly> {
        self.check_group(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.mul_ref(sign));
        }
        out.validate()?;
        Ok(out)
    }

    pub fn add(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.merged(other, &CycScalar::one())
    }

    pub fn sub(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.merged(other, &CycScalar::from_int(-1))
    }

    pub fn neg(&self) -> GradedPoly {
        self.scale(&CycScalar::from_int(-1))
    }

    pub fn scale(&self, s: &CycScalar) -> GradedPoly {
        let mut out = Self::zero(&self.group);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.mul_ref(s));
        }
        out
    }

    pub fn mul(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check_group(other)?;
        let mut out = Self::zero(&self.group);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().cloned());
                out.add_term(w, c1.mul_ref(c2));
            }
        }
        out.validate()?;
        Ok(out)
    }

    pub fn commutator(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn pow(&self, k: u32) -> Result<GradedPoly> {
        let mut acc = Self::constant(&self.group, CycScalar::one());
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Renames variable ids; ids missing from `map` are kept.
    pub fn rename(&self, map: &HashMap<u32, u32>) -> Result<GradedPoly> {
        let mut out = Self::zero(&self.group);
        for (w, c) in &self.terms {
            let w2 = w
                .iter()
                .map(|v| GVar::new(*map.get(&v.id).unwrap_or(&v.id), v.degree.clone()))
                .collect();
            out.add_term(w2, c.clone());
        }
        out.validate()?;
        Ok(out)
    }

    /// Substitutes polynomials for variables (by id); unlisted variables stay.
    pub fn substitute(&self, map: &HashMap<u32, GradedPoly>) -> Result<GradedPoly> {
        let mut out = Self::zero(&self.group);
        for (w, c) in &self.terms {
            let mut t = Self::constant(&self.group, c.clone());
            for v in w {
                let factor = match map.get(&v.id) {
                    Some(p) => p.clone(),
                    None => Self::var(&self.group, v.id, v.degree.clone())?,
                };
                t = t.mul(&factor)?;
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Evaluates with algebra elements assigned to variable ids.
    ///
    /// Every assigned value must be zero or homogeneous of its variable's degree.
    pub fn evaluate(&self, alg: &GradedAlgebra, values: &HashMap<u32, AlgElement>) -> Result<AlgElement> {
        self.check_admissible(alg, values)?;
        self.evaluate_unchecked(alg, values)
    }

    fn check_admissible<R: Coeff>(&self, alg: &GradedAlgebra, values: &HashMap<u32, Element<R>>) -> Result<()> {
        if alg.group() != &self.group {
            return Err(Error::GroupMismatch(format!("polynomial over {}, algebra over {}", self.group, alg.group())));
        }
        for v in self.variables() {
            let a = values.get(&v.id).ok_or_else(|| Error::MissingVariable(v.to_string()))?;
            if let Some(&i) = a.coords().keys().find(|&&i| alg.degree(i) != &v.degree) {
                return Err(Error::Inadmissible(format!(
                    "{} has a {} component of degree {}",
                    v,
                    alg.label(i),
                    alg.degree(i)
                )));
            }
        }
        Ok(())
    }

    /// Evaluation without the admissibility check; words sharing a prefix
    /// reuse its product.
    pub fn evaluate_unchecked<R: Coeff>(&self, alg: &GradedAlgebra, values: &HashMap<u32, Element<R>>) -> Result<Element<R>> {
        let unit: Option<Element<R>> = alg.unit().map(|u| {
            Element::from_pairs(u.coords().iter().map(|(&i, c)| (i, R::from_scalar(c.clone()))))
        });
        let mut out = Element::zero();
        let mut stack: Vec<(GVar, Element<R>)> = Vec::new();
        for (w, c) in &self.terms {
            let common = stack.iter().zip(w).take_while(|((v, _), x)| v == *x).count();
            stack.truncate(common);
            for v in &w[common..] {
                let val = values.get(&v.id).ok_or_else(|| Error::MissingVariable(v.to_string()))?;
                let next = match stack.last() {
                    Some((_, prev)) => alg.mul_generic(prev, val),
                    None => val.clone(),
                };
                stack.push((v.clone(), next));
            }
            let value = match stack.last() {
                Some((_, p)) => p.clone(),
                None => unit
                    .clone()
                    .ok_or_else(|| Error::Precondition("constant term needs a unital algebra".into()))?,
            };
            out = out.add(&value.scale(c));
        }
        Ok(out)
    }

    /// Substitutes for each variable `x` of degree `g` the generic element
    /// `sum_i c_(x,i) b_i` over the basis of `A_g`, with fresh indeterminates
    /// from `registry`. An empty component makes the variable zero.
    pub fn evaluate_generic(&self, alg: &GradedAlgebra, registry: &mut VarRegistry) -> Result<(GenElement, GenericAssignment)> {
        let assignment = GenericAssignment::new(&self.variables(), alg, registry);
        let values = assignment.values();
        self.check_admissible(alg, &values)?;
        Ok((self.evaluate_unchecked(alg, &values)?, assignment))
    }

    /// Replaces every variable `x^(h)` by a sum of fresh variables, one for
    /// each element of `pi^-1(h)` in canonical order.
    ///
    /// Fresh ids are allocated from 0 in the order (variable id, fiber element).
    pub fn nu_substitute(&self, pi: &GroupHom) -> Result<(GradedPoly, BTreeMap<u32, Vec<GVar>>)> {
        if pi.target() != &self.group {
            return Err(Error::GroupMismatch(format!("polynomial over {}, map onto {}", self.group, pi.target())));
        }
        if !pi.is_surjective() {
            return Err(Error::InvalidHom("substitution map must be surjective".into()));
        }
        let g = pi.source().clone();
        let mut next = 0u32;
        let mut fresh: BTreeMap<u32, Vec<GVar>> = BTreeMap::new();
        let mut subs: HashMap<u32, GradedPoly> = HashMap::new();
        for v in self.variables() {
            let fiber = preimage(pi, &v.degree)?;
            let vars: Vec<GVar> = fiber
                .into_iter()
                .map(|d| {
                    next += 1;
                    GVar::new(next - 1, d)
                })
                .collect();
            let sum = GradedPoly::from_terms(&g, vars.iter().map(|x| (CycScalar::one(), vec![x.clone()])))?;
            subs.insert(v.id, sum);
            fresh.insert(v.id, vars);
        }
        let mut out = GradedPoly::zero(&g);
        for (w, c) in &self.terms {
            let mut t = GradedPoly::constant(&g, c.clone());
            for v in w {
                t = t.mul(&subs[&v.id])?;
            }
            out = out.add(&t)?;
        }
        Ok((out, fresh))
    }

    /// The same words with every degree mapped through `pi`.
    pub fn relabel_by(&self, pi: &GroupHom) -> Result<GradedPoly> {
        if pi.source() != &self.group {
            return Err(Error::GroupMismatch(format!("polynomial over {}, map from {}", self.group, pi.source())));
        }
        let mut out = GradedPoly::zero(pi.target());
        for (w, c) in &self.terms {
            let w2 = w.iter().map(|v| GVar::new(v.id, pi.apply(&v.degree))).collect();
            out.add_term(w2, c.clone());
        }
        out.validate()?;
        Ok(out)
    }

    /// Parses the text grammar, e.g. `x1{(0,1)}*x2{(1,0)} - 2*[x1{(0,1)}, y{0}]`.
    ///
    /// `x<n>` has id `n`; other names get ids from [`NAMED_VAR_BASE`] in order
    /// of first appearance. A degree in braces is required on first use
    /// unless the group is trivial.
    pub fn parse(text: &str, group: &AbGroup) -> Result<GradedPoly> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
            group,
            names: HashMap::new(),
            degrees: HashMap::new(),
            next_named: NAMED_VAR_BASE,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::parse(p.pos, "trailing input in polynomial"));
        }
        Ok(v)
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            let text = c.to_string();
            let (neg, mag) = match (c.as_rational(), text.strip_prefix('-')) {
                (Some(_), Some(rest)) => (true, rest.to_string()),
                (Some(_), None) => (false, text),
                (None, _) => (false, format!("({text})")),
            };
            let word: Vec<String> = w.iter().map(|v| v.to_string()).collect();
            let body = match (word.is_empty(), mag.as_str()) {
                (true, _) => mag.clone(),
                (false, "1") => word.join("*"),
                (false, _) => format!("{mag}*{}", word.join("*")),
            };
            match (n, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// Fresh indeterminates introduced by a generic evaluation.
#[derive(Clone, Debug, Default)]
pub struct GenericAssignment {
    /// variable id -> (indeterminate, basis index) pairs
    pub vars: BTreeMap<u32, Vec<(Var, usize)>>,
}

impl GenericAssignment {
    pub fn new(vars: &BTreeSet<GVar>, alg: &GradedAlgebra, registry: &mut VarRegistry) -> Self {
        let mut out = BTreeMap::new();
        for v in vars {
            let list = alg
                .component(&v.degree)
                .iter()
                .map(|&i| (registry.fresh(format!("c{}_{}", v.id, alg.label(i))), i))
                .collect();
            out.insert(v.id, list);
        }
        GenericAssignment { vars: out }
    }

    pub fn values(&self) -> HashMap<u32, GenElement> {
        self.vars
            .iter()
            .map(|(&id, list)| {
                (id, Element::from_pairs(list.iter().map(|&(z, i)| (i, CommPoly::var(z)))))
            })
            .collect()
    }

    /// The scalar assignment obtained by giving each indeterminate a value.
    pub fn specialize(&self, value_of: impl Fn(Var) -> CycScalar) -> HashMap<u32, AlgElement> {
        self.vars
            .iter()
            .map(|(&id, list)| (id, AlgElement::from_pairs(list.iter().map(|&(z, i)| (i, value_of(z))))))
            .collect()
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

pub fn permutation_sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `sum_sigma coeff(sigma) x_sigma(1) ... x_sigma(d)` over the given variables.
pub fn multilinear_from(group: &AbGroup, vars: &[GVar], coeff: impl Fn(&[usize]) -> CycScalar) -> Result<GradedPoly> {
    GradedPoly::from_terms(
        group,
        permutations(vars.len())
            .into_iter()
            .map(|p| (coeff(&p), p.iter().map(|&i| vars[i].clone()).collect())),
    )
}

/// The standard polynomial `s_d = sum_sigma sgn(sigma) x_sigma(1) ... x_sigma(d)`.
pub fn standard_polynomial(group: &AbGroup, vars: &[GVar]) -> Result<GradedPoly> {
    multilinear_from(group, vars, |p| CycScalar::from_int(permutation_sign(p)))
}

/// `[x_1, x_2][x_3, x_4] ... [x_(2k-1), x_2k]`.
pub fn commutator_product(group: &AbGroup, vars: &[GVar]) -> Result<GradedPoly> {
    if vars.len() % 2 == 1 {
        return Err(Error::InvalidPoly("commutator product needs an even number of variables".into()));
    }
    let mut acc = GradedPoly::constant(group, CycScalar::one());
    for pair in vars.chunks(2) {
        let a = GradedPoly::var(group, pair[0].id, pair[0].degree.clone())?;
        let b = GradedPoly::var(group, pair[1].id, pair[1].degree.clone())?;
        acc = acc.mul(&a.commutator(&b)?)?;
    }
    Ok(acc)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    group: &'a AbGroup,
    names: HashMap<String, u32>,
    degrees: HashMap<u32, GroupElement>,
    next_named: u32,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn wrap<T>(&self, at: usize, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::Parse { .. } => e,
            other => Error::parse(at, other.to_string()),
        })
    }

    fn expr(&mut self) -> Result<GradedPoly> {
        let mut acc = self.term()?;
        loop {
            let at = self.pos;
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.wrap(at, acc.add(&t))?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.wrap(at, acc.sub(&t))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<GradedPoly> {
        let mut acc = self.unary()?;
        loop {
            let at = self.pos;
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.unary()?;
                    acc = self.wrap(at, acc.mul(&f))?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let f = self.unary()?;
                    let c = f
                        .terms
                        .get(&Vec::new())
                        .filter(|_| f.terms.len() == 1)
                        .and_then(|c| c.inverse().ok())
                        .ok_or_else(|| Error::parse(at, "can only divide by a nonzero scalar"))?;
                    acc = acc.scale(&c);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<GradedPoly> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| Error::parse(at, "exponent too large"))?;
            return self.wrap(at, base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| Error::parse(start, "expected integer"))
    }

    fn atom(&mut self) -> Result<GradedPoly> {
        let at = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b']')?;
                self.wrap(at, a.commutator(&b))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(GradedPoly::constant(self.group, CycScalar::from_rational(num_rational::BigRational::from_integer(n.into()))))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii").to_string();
                if name == "zeta" {
                    self.expect(b'(')?;
                    let n = self.integer()?;
                    self.expect(b')')?;
                    let n = u32::try_from(n)
                        .ok()
                        .filter(|&n| n >= 1)
                        .ok_or_else(|| Error::parse(start, "conductor must be a positive integer"))?;
                    return Ok(GradedPoly::constant(self.group, CycScalar::zeta(n)));
                }
                self.variable(start, name)
            }
            _ => Err(Error::parse(at, "expected a variable, number, '(' or '['")),
        }
    }

    fn variable(&mut self, start: usize, name: String) -> Result<GradedPoly> {
        let id = match name.strip_prefix('x').filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit())) {
            Some(digits) => digits
                .parse::<u32>()
                .ok()
                .filter(|&n| n < NAMED_VAR_BASE)
                .ok_or_else(|| Error::parse(start, format!("variable index in {name} must be below {NAMED_VAR_BASE}")))?,
            None => match self.names.get(&name) {
                Some(&id) => id,
                None => {
                    let id = self.next_named;
                    self.next_named += 1;
                    self.names.insert(name.clone(), id);
                    id
                }
            },
        };
        let degree = if self.src.get(self.pos) == Some(&b'{') {
            self.pos += 1;
            let close = self.src[self.pos..]
                .iter()
                .position(|&b| b == b'}')
                .ok_or_else(|| Error::parse(self.pos, "unterminated degree"))?;
            let text = std::str::from_utf8(&self.src[self.pos..self.pos + close]).expect("ascii");
            let d = self.group.parse_element_strict(text).map_err(|e| Error::parse(self.pos, e.to_string()))?;
            self.pos += close + 1;
            if let Some(prev) = self.degrees.get(&id) {
                if prev != &d {
                    return Err(Error::parse(start, format!("{name} used with degrees {prev} and {d}")));
                }
            }
            d
        } else if let Some(d) = self.degrees.get(&id) {
            d.clone()
        } else if self.group.is_trivial() {
            self.group.zero()
        } else {
            return Err(Error::parse(self.pos, format!("{name} needs a degree, e.g. {name}{{{}}}", self.group.zero())));
        };
        self.degrees.insert(id, degree.clone());
        GradedPoly::var(self.group, id, degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galg::{elementary_grading, grassmann};
    use proptest::prelude::*;

    fn z2() -> AbGroup {
        AbGroup::cyclic(2)
    }

    #[test]
    fn multilinearity() {
        let g = AbGroup::trivial();
        let vars: Vec<GVar> = (1..=3).map(|i| GVar::new(i, g.zero())).collect();
        let f = multilinear_from(&g, &vars, |p| CycScalar::from_int(p[0] as i64 + 1)).unwrap();
        assert!(f.is_multilinear());
        assert!(!GradedPoly::parse("x1*x1", &g).unwrap().is_multilinear());
        let t = commutator_product(&g, &(1..=4).map(|i| GVar::new(i, g.zero())).collect::<Vec<_>>()).unwrap();
        assert!(t.is_multilinear());
        assert_eq!(t.num_terms(), 4);
    }

    #[test]
    fn parse_and_display() {
        let k = AbGroup::new(vec![2, 2]).unwrap();
        let p = GradedPoly::parse("x1{(0,1)}*x2{(1,0)} - 2*x2{(1,0)}*x1{(0,1)}", &k).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(GradedPoly::parse(&p.to_string(), &k).unwrap(), p);
        let c = GradedPoly::parse("[x1{(0,1)}, x2{(1,0)}]", &k).unwrap();
        assert_eq!(c, GradedPoly::parse("x1{(0,1)}*x2{(1,0)} - x2*x1", &k).unwrap());
        let named = GradedPoly::parse("x{1}*[y{1},z{0}]", &z2()).unwrap();
        assert!(named.is_multilinear());
        assert!(named.variables().iter().all(|v| v.id >= NAMED_VAR_BASE));
        for bad in ["x1{(2,0)}", "x1{(0,1)}*x1{(1,0)}", "x1", "x1{(0,1)} +", "[x1{(0,1)}"] {
            assert!(matches!(GradedPoly::parse(bad, &k), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn evaluation_examples() {
        let t = AbGroup::trivial();
        let m2 = elementary_grading(2, &t, &[t.zero(), t.zero()]).unwrap();
        let x = GradedPoly::parse("x1", &t).unwrap();
        let vals: HashMap<u32, AlgElement> = [(1, AlgElement::basis(0))].into_iter().collect();
        assert_eq!(x.evaluate(&m2, &vals).unwrap(), AlgElement::basis(0));

        let e = grassmann(3).unwrap();
        let c = GradedPoly::parse("[x{1},y{1}]", &z2()).unwrap();
        let ids: Vec<u32> = c.variables().iter().map(|v| v.id).collect();
        let vals: HashMap<u32, AlgElement> = [
            (ids[0], AlgElement::basis(e.index_of_label("e1").unwrap())),
            (ids[1], AlgElement::basis(e.index_of_label("e2").unwrap())),
        ]
        .into_iter()
        .collect();
        let e12 = AlgElement::term(e.index_of_label("e1e2").unwrap(), CycScalar::from_int(2));
        assert_eq!(c.evaluate(&e, &vals).unwrap(), e12);

        let bad: HashMap<u32, AlgElement> = [(ids[0], AlgElement::basis(0)), (ids[1], AlgElement::basis(1))].into_iter().collect();
        assert!(matches!(c.evaluate(&e, &bad), Err(Error::Inadmissible(_))));
        assert!(matches!(c.evaluate(&e, &HashMap::new()), Err(Error::MissingVariable(_))));
    }

    #[test]
    fn generic_evaluation() {
        let t = AbGroup::trivial();
        let m2 = elementary_grading(2, &t, &[t.zero(), t.zero()]).unwrap();
        let mut reg = VarRegistry::new();
        let (g, asg) = GradedPoly::parse("x1", &t).unwrap().evaluate_generic(&m2, &mut reg).unwrap();
        assert_eq!(g.coords().len(), 4);
        assert_eq!(asg.vars[&1].len(), 4);
        let vars = |n: u32| (1..=n).map(|i| GVar::new(i, t.zero())).collect::<Vec<_>>();
        let s4 = standard_polynomial(&t, &vars(4)).unwrap();
        assert!(s4.evaluate_generic(&m2, &mut reg).unwrap().0.is_zero());
        let s3 = standard_polynomial(&t, &vars(3)).unwrap();
        assert!(!s3.evaluate_generic(&m2, &mut reg).unwrap().0.is_zero());
        let comm = GradedPoly::parse("[x1,x2]", &t).unwrap();
        let k = elementary_grading(1, &t, &[t.zero()]).unwrap();
        assert!(comm.evaluate_generic(&k, &mut reg).unwrap().0.is_zero());
    }

    #[test]
    fn nu_substitution_examples() {
        let z4 = AbGroup::cyclic(4);
        let id = GroupHom::identity(&z4);
        let p = GradedPoly::parse("x3{1}*x5{2}", &z4).unwrap();
        let (q, _) = p.nu_substitute(&id).unwrap();
        assert_eq!(q, GradedPoly::parse("x0{1}*x1{2}", &z4).unwrap());

        let pi = GroupHom::new(z4.clone(), z2(), vec![z2().el(&[1])]).unwrap();
        let (q, fresh) = GradedPoly::parse("x1{1}", &z2()).unwrap().nu_substitute(&pi).unwrap();
        assert_eq!(q, GradedPoly::parse("x0{1} + x1{3}", &z4).unwrap());
        assert_eq!(fresh[&1].len(), 2);
        let (q, _) = GradedPoly::parse("x{0}*y{1}", &z2()).unwrap().nu_substitute(&pi).unwrap();
        assert_eq!(q.num_terms(), 4);

        assert_eq!(p.relabel_by(&id).unwrap(), p);
        let d = GradedPoly::parse("x1{1}*x2{3}", &z4).unwrap();
        assert_eq!(d.relabel_by(&pi).unwrap(), GradedPoly::parse("x1{1}*x2{1}", &z2()).unwrap());
    }

    #[test]
    fn permutation_helpers() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn evaluation_is_multilinear(coeffs in proptest::collection::vec(-3i64..4, 6), lam in -3i64..4, slot in 0usize..3, picks in proptest::collection::vec(0usize..4, 4)) {
            let t = AbGroup::trivial();
            let m2 = elementary_grading(2, &t, &[t.zero(), t.zero()]).unwrap();
            let vars: Vec<GVar> = (1..=3).map(|i| GVar::new(i, t.zero())).collect();
            let perms = permutations(3);
            let f = multilinear_from(&t, &vars, |p| CycScalar::from_int(coeffs[perms.iter().position(|q| q == p).unwrap()])).unwrap();
            let base: HashMap<u32, AlgElement> = (0..3).map(|s| (s as u32 + 1, AlgElement::basis(picks[s]))).collect();
            let b = AlgElement::basis(picks[3]);
            let lamc = CycScalar::from_int(lam);
            let mut mixed = base.clone();
            mixed.insert(slot as u32 + 1, base[&(slot as u32 + 1)].add(&b.scale(&lamc)));
            let mut other = base.clone();
            other.insert(slot as u32 + 1, b);
            let lhs = f.evaluate(&m2, &mixed).unwrap();
            let rhs = f.evaluate(&m2, &base).unwrap().add(&f.evaluate(&m2, &other).unwrap().scale(&lamc));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn nu_substitution_matches_coarsened_evaluation(c0 in -2i64..3, c1 in -2i64..3, a in proptest::collection::vec(-2i64..3, 8)) {
            // E2 (x) KZ2 over Z2xZ2, coarsened to Z2 by the first projection
            use crate::galg::{tensor_product_grading, twisted_group_algebra, Cocycle};
            let e = grassmann(2).unwrap();
            let kz2 = twisted_group_algebra(&Cocycle::trivial(&z2())).unwrap();
            let big = tensor_product_grading(&e, &kz2).unwrap();
            let g = big.group().clone();
            let pi = GroupHom::coordinate_projection(&g, 0).unwrap();
            let coarse = big.regraded(z2(), |i| pi.apply(big.degree(i))).unwrap();
            let t = GradedPoly::parse(&format!("{c0}*x1{{1}}*x2{{0}} + {c1}*x2{{0}}*x1{{1}}"), &z2()).unwrap();
            let (tg, fresh) = t.nu_substitute(&pi).unwrap();
            let mut fine_vals = HashMap::new();
            let mut coarse_vals = HashMap::new();
            let mut k = 0;
            for (old, news) in &fresh {
                let mut total = AlgElement::zero();
                for v in news {
                    let comp = big.component(&v.degree);
                    let val = AlgElement::from_pairs(comp.iter().map(|&i| { k += 1; (i, CycScalar::from_int(a[(k - 1) % a.len()])) }));
                    total = total.add(&val);
                    fine_vals.insert(v.id, val);
                }
                coarse_vals.insert(*old, total);
            }
            prop_assert_eq!(tg.evaluate(&big, &fine_vals).unwrap(), t.evaluate(&coarse, &coarse_vals).unwrap());
        }
    }
}
