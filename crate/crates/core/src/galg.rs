//! Finite-dimensional group-graded algebras given by structure constants.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::abgroup::{AbGroup, GroupElement};
use crate::cpoly::CommPoly;
use crate::error::{Error, Result};
use crate::linalg::{self, EchelonBasis, Matrix};
use crate::scalar::CycScalar;

/// Coefficient rings for algebra elements: exact scalars or commutative polynomials.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, s: &CycScalar) -> Self;
    fn neg(&self) -> Self;
    fn from_scalar(s: CycScalar) -> Self;
}

impl Coeff for CycScalar {
    fn zero() -> Self {
        CycScalar::zero()
    }
    fn is_zero(&self) -> bool {
        CycScalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self.add_ref(other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn scale(&self, s: &CycScalar) -> Self {
        self.mul_ref(s)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn from_scalar(s: CycScalar) -> Self {
        s
    }
}

impl Coeff for CommPoly {
    fn zero() -> Self {
        CommPoly::zero()
    }
    fn is_zero(&self) -> bool {
        CommPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self.add_ref(other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn scale(&self, s: &CycScalar) -> Self {
        CommPoly::scale(self, s)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn from_scalar(s: CycScalar) -> Self {
        CommPoly::constant(s)
    }
}

/// Sparse coordinates in the basis of some algebra; zeros are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<R> {
    coords: BTreeMap<usize, R>,
}

pub type AlgElement = Element<CycScalar>;
pub type GenElement = Element<CommPoly>;

impl<R: Coeff> Default for Element<R> {
    fn default() -> Self {
        Element { coords: BTreeMap::new() }
    }
}

impl<R: Coeff> Element<R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: usize) -> Self {
        Self::term(i, R::from_scalar(CycScalar::one()))
    }

    pub fn term(i: usize, c: R) -> Self {
        let mut e = Self::zero();
        e.add_term(i, c);
        e
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, R)>) -> Self {
        let mut e = Self::zero();
        for (i, c) in pairs {
            e.add_term(i, c);
        }
        e
    }

    pub fn coords(&self) -> &BTreeMap<usize, R> {
        &self.coords
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coords.get(&i).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add_term(&mut self, i: usize, c: R) {
        if c.is_zero() {
            return;
        }
        let next = match self.coords.get(&i) {
            Some(x) => x.add(&c),
            None => c,
        };
        if next.is_zero() {
            self.coords.remove(&i);
        } else {
            self.coords.insert(i, next);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&i, c) in &other.coords {
            out.add_term(i, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&i, c) in &other.coords {
            out.add_term(i, c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Element {
            coords: self.coords.iter().map(|(&i, c)| (i, c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        Self::from_pairs(self.coords.iter().map(|(&i, c)| (i, c.scale(s))))
    }

    pub fn scale_by(&self, s: &R) -> Self {
        Self::from_pairs(self.coords.iter().map(|(&i, c)| (i, c.mul(s))))
    }
}

impl AlgElement {
    pub fn to_dense(&self, dim: usize) -> Vec<CycScalar> {
        let mut v = vec![CycScalar::zero(); dim];
        for (&i, c) in &self.coords {
            v[i] = c.clone();
        }
        v
    }

    pub fn from_dense(v: &[CycScalar]) -> Self {
        Self::from_pairs(v.iter().cloned().enumerate())
    }
}

/// A product of two basis elements: sparse `(index, coefficient)` list.
pub type Product = Vec<(usize, CycScalar)>;

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    group: AbGroup,
    labels: Vec<String>,
    degree: Vec<GroupElement>,
    table: Vec<Product>,
    unit: Option<AlgElement>,
    components: BTreeMap<GroupElement, Vec<usize>>,
}

impl GradedAlgebra {
    /// Builds an algebra from raw data and verifies every structural invariant.
    ///
    /// `table[i * dim + j]` is the product `b_i b_j`.
    pub fn new(
        group: AbGroup,
        labels: Vec<String>,
        degree: Vec<GroupElement>,
        table: Vec<Product>,
        unit: Option<AlgElement>,
    ) -> Result<Self> {
        let a = Self::from_parts(group, labels, degree, table, unit)?;
        a.check_associativity()?;
        a.check_unit()?;
        Ok(a)
    }

    /// Builds an algebra checking shapes and grading compatibility only.
    pub(crate) fn from_parts(
        group: AbGroup,
        labels: Vec<String>,
        degree: Vec<GroupElement>,
        table: Vec<Product>,
        unit: Option<AlgElement>,
    ) -> Result<Self> {
        let dim = labels.len();
        if degree.len() != dim || table.len() != dim * dim {
            return Err(Error::InvalidAlgebra(format!(
                "dimension {dim} needs {dim} degrees and {} products",
                dim * dim
            )));
        }
        if let Some(g) = degree.iter().find(|g| !group.contains(g)) {
            return Err(Error::InvalidAlgebra(format!("degree {g} is not in {group}")));
        }
        let mut clean = Vec::with_capacity(table.len());
        for (idx, prod) in table.into_iter().enumerate() {
            let (i, j) = (idx / dim, idx % dim);
            let mut e = AlgElement::from_pairs(prod);
            if let Some(&k) = e.coords.keys().find(|&&k| k >= dim) {
                return Err(Error::InvalidAlgebra(format!("product b{i} b{j} names basis index {k}")));
            }
            let expect = group.add(&degree[i], &degree[j]);
            if let Some(&k) = e.coords.keys().find(|&&k| degree[k] != expect) {
                return Err(Error::InvalidAlgebra(format!(
                    "grading incompatible: {} * {} has a {} term, degree {} != {expect}",
                    labels[i], labels[j], labels[k], degree[k]
                )));
            }
            clean.push(std::mem::take(&mut e.coords).into_iter().collect());
        }
        if let Some(u) = &unit {
            if let Some(&k) = u.coords.keys().find(|&&k| k >= dim) {
                return Err(Error::InvalidAlgebra(format!("unit names basis index {k}")));
            }
        }
        let mut components: BTreeMap<GroupElement, Vec<usize>> = BTreeMap::new();
        for (i, g) in degree.iter().enumerate() {
            components.entry(g.clone()).or_default().push(i);
        }
        Ok(GradedAlgebra {
            group,
            labels,
            degree,
            table: clean,
            unit,
            components,
        })
    }

    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        &self.degree[i]
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degree
    }

    pub fn unit(&self) -> Option<&AlgElement> {
        self.unit.as_ref()
    }

    /// Basis indices spanning the component of degree `g` (empty if zero).
    pub fn component(&self, g: &GroupElement) -> &[usize] {
        self.components.get(g).map_or(&[], |v| v.as_slice())
    }

    /// Degrees with a nonzero component, in canonical order.
    pub fn support(&self) -> Vec<GroupElement> {
        self.components.keys().cloned().collect()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, CycScalar)] {
        &self.table[i * self.dim() + j]
    }

    /// True when every basis product is zero or a scalar multiple of one basis element.
    pub fn is_monomial(&self) -> bool {
        self.table.iter().all(|p| p.len() <= 1)
    }

    pub fn mul_generic<R: Coeff>(&self, a: &Element<R>, b: &Element<R>) -> Element<R> {
        let mut out = Element::zero();
        for (&i, x) in &a.coords {
            for (&j, y) in &b.coords {
                let prod = self.basis_product(i, j);
                if prod.is_empty() {
                    continue;
                }
                let xy = x.mul(y);
                for (k, c) in prod {
                    out.add_term(*k, xy.scale(c));
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        self.mul_generic(a, b)
    }

    pub fn commutator<R: Coeff>(&self, a: &Element<R>, b: &Element<R>) -> Element<R> {
        self.mul_generic(a, b).sub(&self.mul_generic(b, a))
    }

    /// Left-to-right product of basis elements.
    pub fn basis_word(&self, word: &[usize]) -> AlgElement {
        let Some((&first, rest)) = word.split_first() else {
            return self.unit.clone().unwrap_or_default();
        };
        let mut acc = AlgElement::basis(first);
        for &j in rest {
            acc = self.mul(&acc, &AlgElement::basis(j));
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// The degree of `a` if it is nonzero and homogeneous.
    pub fn homogeneous_degree<R: Coeff>(&self, a: &Element<R>) -> Option<GroupElement> {
        let mut it = a.coords.keys().map(|&i| &self.degree[i]);
        let first = it.next()?;
        it.all(|g| g == first).then(|| first.clone())
    }

    pub fn is_central(&self, a: &AlgElement) -> bool {
        (0..self.dim()).all(|i| self.commutator(a, &AlgElement::basis(i)).is_zero())
    }

    /// A basis of the centre, from the linear system `[x, b_i] = 0`.
    pub fn center_basis(&self) -> Result<Vec<AlgElement>> {
        let dim = self.dim();
        let mut rows: Matrix = Vec::new();
        for i in 0..dim {
            let mut block = vec![vec![CycScalar::zero(); dim]; dim];
            for j in 0..dim {
                for (k, c) in self.basis_product(j, i) {
                    block[*k][j] = block[*k][j].add_ref(c);
                }
                for (k, c) in self.basis_product(i, j) {
                    block[*k][j] = block[*k][j].sub_ref(c);
                }
            }
            rows.extend(block.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
        }
        if rows.is_empty() {
            return Ok((0..dim).map(AlgElement::basis).collect());
        }
        Ok(linalg::nullspace(&rows)?
            .iter()
            .map(|v| AlgElement::from_dense(v))
            .collect())
    }

    /// Matrix of `x -> a x` in the basis, columns indexed by `x`.
    pub fn left_mult_matrix(&self, a: &AlgElement) -> Matrix {
        let dim = self.dim();
        let mut m = vec![vec![CycScalar::zero(); dim]; dim];
        for j in 0..dim {
            for (&k, c) in self.mul(a, &AlgElement::basis(j)).coords() {
                m[k][j] = c.clone();
            }
        }
        m
    }

    /// Invertibility of `a`, decided by the rank of left multiplication.
    pub fn is_invertible(&self, a: &AlgElement) -> Result<bool> {
        if self.unit.is_none() {
            return Ok(false);
        }
        Ok(linalg::rank(&self.left_mult_matrix(a))? == self.dim())
    }

    /// Exhaustive for dimension at most 64, otherwise 10 000 seeded random triples.
    pub fn check_associativity(&self) -> Result<()> {
        let dim = self.dim();
        let check = |i: usize, j: usize, l: usize| -> Result<()> {
            let (bi, bj, bl) = (AlgElement::basis(i), AlgElement::basis(j), AlgElement::basis(l));
            let left = self.mul(&self.mul(&bi, &bj), &bl);
            let right = self.mul(&bi, &self.mul(&bj, &bl));
            if left != right {
                return Err(Error::InvalidAlgebra(format!(
                    "not associative at ({}, {}, {})",
                    self.labels[i], self.labels[j], self.labels[l]
                )));
            }
            Ok(())
        };
        if dim <= 64 {
            for i in 0..dim {
                for j in 0..dim {
                    if self.basis_product(i, j).is_empty() {
                        // (b_i b_j) b_l = 0, so only the right side needs checking.
                        for l in 0..dim {
                            let jl = self.mul(&AlgElement::basis(j), &AlgElement::basis(l));
                            if !self.mul(&AlgElement::basis(i), &jl).is_zero() {
                                return check(i, j, l);
                            }
                        }
                        continue;
                    }
                    for l in 0..dim {
                        check(i, j, l)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..10_000 {
                check(rng.gen_range(0..dim), rng.gen_range(0..dim), rng.gen_range(0..dim))?;
            }
        }
        Ok(())
    }

    pub fn check_unit(&self) -> Result<()> {
        let Some(u) = &self.unit else { return Ok(()) };
        for i in 0..self.dim() {
            let b = AlgElement::basis(i);
            if self.mul(u, &b) != b || self.mul(&b, u) != b {
                return Err(Error::InvalidAlgebra(format!("unit fails on {}", self.labels[i])));
            }
        }
        Ok(())
    }

    /// Same basis and products, degrees replaced by `f(i)` in `group`.
    pub fn regraded(&self, group: AbGroup, f: impl Fn(usize) -> GroupElement) -> Result<Self> {
        let degree = (0..self.dim()).map(f).collect();
        Self::from_parts(group, self.labels.clone(), degree, self.table.clone(), self.unit.clone())
    }

    pub fn format_element(&self, a: &AlgElement) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (&i, c)) in a.coords.iter().enumerate() {
            let text = c.to_string();
            let (neg, mag) = match (c.as_rational(), text.strip_prefix('-')) {
                (Some(_), Some(rest)) => (true, rest.to_string()),
                (Some(_), None) => (false, text),
                (None, _) => (false, format!("({text})")),
            };
            let body = if mag == "1" {
                self.labels[i].clone()
            } else {
                format!("{mag}*{}", self.labels[i])
            };
            match (n, neg) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        out
    }

    /// The subalgebra spanned by all nonempty products of homogeneous
    /// `generators`, plus the unit when requested.
    ///
    /// Basis elements of the result are homogeneous; when a basis element is a
    /// single original basis vector its label is kept.
    pub fn subalgebra(&self, generators: &[AlgElement], include_unit: bool) -> Result<Self> {
        let dim = self.dim();
        for g in generators {
            if !g.is_zero() && self.homogeneous_degree(g).is_none() {
                return Err(Error::Precondition("subalgebra generators must be homogeneous".into()));
            }
        }
        let mut span = EchelonBasis::new();
        let mut frontier: Vec<AlgElement> = Vec::new();
        let mut seeds: Vec<AlgElement> = generators.to_vec();
        if include_unit {
            let u = self
                .unit
                .clone()
                .ok_or_else(|| Error::Precondition("algebra has no unit".into()))?;
            seeds.push(u);
        }
        for g in seeds {
            if span.insert(&g.to_dense(dim)) {
                frontier.push(g);
            }
        }
        while let Some(x) = frontier.pop() {
            for g in generators {
                for p in [self.mul(&x, g), self.mul(g, &x)] {
                    if !p.is_zero() && span.insert(&p.to_dense(dim)) {
                        frontier.push(p);
                    }
                }
            }
        }
        let rows: Vec<Vec<CycScalar>> = span.rows().cloned().collect();
        let pivots = span.pivots();
        let basis: Vec<AlgElement> = rows.iter().map(|r| AlgElement::from_dense(r)).collect();
        let coords_of = |v: &AlgElement| -> Product {
            pivots
                .iter()
                .enumerate()
                .map(|(r, &p)| (r, v.coeff(p)))
                .filter(|(_, c)| !c.is_zero())
                .collect()
        };
        let mut table = Vec::with_capacity(basis.len() * basis.len());
        for x in &basis {
            for y in &basis {
                let p = self.mul(x, y);
                let c = coords_of(&p);
                let back = c.iter().fold(AlgElement::zero(), |acc, (r, s)| acc.add(&basis[*r].scale(s)));
                if back != p {
                    return Err(Error::Inconsistent("subalgebra is not closed under products".into()));
                }
                table.push(c);
            }
        }
        let labels = basis
            .iter()
            .enumerate()
            .map(|(r, b)| match b.coords.iter().next() {
                Some((&i, c)) if b.coords.len() == 1 && c.is_one() => self.labels[i].clone(),
                _ => format!("b{r}"),
            })
            .collect();
        let degree = basis
            .iter()
            .map(|b| self.homogeneous_degree(b).expect("homogeneous span"))
            .collect();
        let unit = if include_unit {
            Some(AlgElement::from_pairs(coords_of(self.unit.as_ref().expect("unit"))))
        } else {
            None
        };
        Self::from_parts(self.group.clone(), labels, degree, table, unit)
    }

    /// Expresses `v` (an element of the parent algebra lying in the span of
    /// `basis_in_parent`) in that basis; `None` if not in the span.
    pub fn coordinates_in(basis_in_parent: &[AlgElement], v: &AlgElement, dim: usize) -> Result<Option<Vec<CycScalar>>> {
        let m: Matrix = (0..dim)
            .map(|k| basis_in_parent.iter().map(|b| b.coeff(k)).collect())
            .collect();
        linalg::solve(&m, &v.to_dense(dim))
    }
}

fn monomial_table(dim: usize, f: impl Fn(usize, usize) -> Option<(usize, CycScalar)>) -> Vec<Product> {
    let mut t = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            t.push(f(i, j).into_iter().filter(|(_, c)| !c.is_zero()).collect());
        }
    }
    t
}

fn matrix_unit_label(n: usize, i: usize, j: usize) -> String {
    if n <= 9 {
        format!("e{}{}", i + 1, j + 1)
    } else {
        format!("e{},{}", i + 1, j + 1)
    }
}

/// `M_n` with matrix units `e_ij` (row-major) and `deg e_ij = g_j - g_i`.
pub fn elementary_grading(n: usize, group: &AbGroup, tuple: &[GroupElement]) -> Result<GradedAlgebra> {
    if n == 0 || tuple.len() != n {
        return Err(Error::InvalidAlgebra(format!("elementary grading needs n >= 1 and {n} tuple entries")));
    }
    if let Some(g) = tuple.iter().find(|g| !group.contains(g)) {
        return Err(Error::InvalidElement(format!("{g} is not in {group}")));
    }
    let idx = |i: usize, j: usize| i * n + j;
    let mut labels = Vec::new();
    let mut degree = Vec::new();
    for i in 0..n {
        for j in 0..n {
            labels.push(matrix_unit_label(n, i, j));
            degree.push(group.sub(&tuple[j], &tuple[i]));
        }
    }
    let table = monomial_table(n * n, |a, b| {
        let (i, j) = (a / n, a % n);
        let (k, l) = (b / n, b % n);
        (j == k).then(|| (idx(i, l), CycScalar::one()))
    });
    let unit = AlgElement::from_pairs((0..n).map(|i| (idx(i, i), CycScalar::one())));
    GradedAlgebra::from_parts(group.clone(), labels, degree, table, Some(unit))
}

/// The `n x n` matrix `C^a S^b` with `C = diag(1, zeta_n, ..., zeta_n^(n-1))`
/// and `S` the cyclic shift `S e_j = e_(j+1)`.
pub fn pauli_matrix(n: usize, a: u32, b: u32) -> Matrix {
    let mut m = vec![vec![CycScalar::zero(); n]; n];
    for j in 0..n {
        let i = (j + b as usize) % n;
        m[i][j] = CycScalar::zeta_pow(n as u32, (a as i64) * (i as i64));
    }
    m
}

fn pauli_label(a: u32, b: u32) -> String {
    let part = |sym: &str, e: u32| match e {
        0 => String::new(),
        1 => sym.to_string(),
        _ => format!("{sym}^{e}"),
    };
    let s = format!("{}{}", part("C", a), part("S", b));
    if s.is_empty() {
        "I".into()
    } else {
        s
    }
}

/// `M_n` graded by `Z_n x Z_n`, component `(a, b)` spanned by `C^a S^b`.
pub fn pauli_grading(n: usize) -> Result<GradedAlgebra> {
    if n < 2 {
        return Err(Error::InvalidAlgebra("Pauli grading needs n >= 2".into()));
    }
    let nn = n as u32;
    let group = AbGroup::new(vec![nn, nn])?;
    let elems = group.elements();
    let mats: Vec<Matrix> = elems
        .iter()
        .map(|g| pauli_matrix(n, g.residues()[0], g.residues()[1]))
        .collect();
    let mut table = Vec::with_capacity(elems.len() * elems.len());
    for (x, mx) in mats.iter().enumerate() {
        for (y, my) in mats.iter().enumerate() {
            let prod = linalg::mat_mul(mx, my);
            let target = group.index_of(&group.add(&elems[x], &elems[y]));
            let mt = &mats[target];
            let j = 0;
            let i = (0..n).find(|&i| !mt[i][j].is_zero()).expect("monomial matrix");
            let c = prod[i][j].div_ref(&mt[i][j])?;
            let scaled: Matrix = mt.iter().map(|r| r.iter().map(|v| v.mul_ref(&c)).collect()).collect();
            if scaled != prod {
                return Err(Error::Inconsistent("Pauli product is not a multiple of a basis matrix".into()));
            }
            table.push(vec![(target, c)]);
        }
    }
    let labels = elems.iter().map(|g| pauli_label(g.residues()[0], g.residues()[1])).collect();
    GradedAlgebra::from_parts(group, labels, elems, table, Some(AlgElement::basis(0)))
}

/// A normalized-or-not 2-cocycle `Q x Q -> K*` stored densely in canonical order.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle {
    group: AbGroup,
    values: Vec<CycScalar>,
}

impl Cocycle {
    pub fn from_fn(group: &AbGroup, f: impl Fn(&GroupElement, &GroupElement) -> CycScalar) -> Result<Self> {
        let elems = group.elements();
        let mut values = Vec::with_capacity(elems.len() * elems.len());
        for p in &elems {
            for q in &elems {
                values.push(f(p, q));
            }
        }
        let c = Cocycle { group: group.clone(), values };
        c.check()?;
        Ok(c)
    }

    pub fn from_table(group: &AbGroup, rows: &[Vec<CycScalar>]) -> Result<Self> {
        let n = group.order() as usize;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("cocycle table must be {n}x{n}")));
        }
        let elems = group.elements();
        Self::from_fn(group, |p, q| {
            let i = elems.binary_search(p).expect("element");
            let j = elems.binary_search(q).expect("element");
            rows[i][j].clone()
        })
    }

    pub fn trivial(group: &AbGroup) -> Self {
        Self::from_fn(group, |_, _| CycScalar::one()).expect("constant cocycle")
    }

    /// On `Z2 x Z2`: `alpha(p, q) = (-1)^(p_2 q_1)`, so `X_(1,0)` and `X_(0,1)` anticommute.
    pub fn klein_standard() -> Self {
        let g = AbGroup::new(vec![2, 2]).expect("Klein group");
        Self::from_fn(&g, |p, q| {
            if p.residues()[1] * q.residues()[0] % 2 == 1 {
                CycScalar::from_int(-1)
            } else {
                CycScalar::one()
            }
        })
        .expect("bilinear cocycle")
    }

    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn get(&self, p: &GroupElement, q: &GroupElement) -> &CycScalar {
        let n = self.group.order() as usize;
        &self.values[self.group.index_of(p) * n + self.group.index_of(q)]
    }

    /// `beta(p, q) = alpha(p, q) alpha(q, p)^-1`.
    pub fn commutation(&self, p: &GroupElement, q: &GroupElement) -> CycScalar {
        self.get(p, q)
            .div_ref(self.get(q, p))
            .expect("cocycle values are nonzero")
    }

    pub fn check(&self) -> Result<()> {
        let g = &self.group;
        let elems = g.elements();
        if let Some(i) = self.values.iter().position(|v| v.is_zero()) {
            let n = elems.len();
            return Err(Error::NotCocycle(format!("zero value at ({}, {})", elems[i / n], elems[i % n])));
        }
        for p in &elems {
            for q in &elems {
                for r in &elems {
                    let lhs = self.get(p, q).mul_ref(self.get(&g.add(p, q), r));
                    let rhs = self.get(q, r).mul_ref(self.get(p, &g.add(q, r)));
                    if lhs != rhs {
                        return Err(Error::NotCocycle(format!("({p}, {q}, {r})")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `K^alpha Q` with basis `X_q`, `X_p X_q = alpha(p, q) X_(p+q)`, `deg X_q = q`.
pub fn twisted_group_algebra(alpha: &Cocycle) -> Result<GradedAlgebra> {
    alpha.check()?;
    let g = alpha.group().clone();
    let elems = g.elements();
    let table = monomial_table(elems.len(), |i, j| {
        let s = g.index_of(&g.add(&elems[i], &elems[j]));
        Some((s, alpha.get(&elems[i], &elems[j]).clone()))
    });
    let labels = elems.iter().map(|q| format!("X{q}")).collect();
    let zero = g.zero();
    let unit = AlgElement::term(0, alpha.get(&zero, &zero).inverse()?);
    GradedAlgebra::from_parts(g, labels, elems, table, Some(unit))
}

/// `A (x) B` with basis pairs `(a, b)` (index `a * dim B + b`), products
/// multiplied componentwise and `deg(a (x) b) = degmap(a, b)` in `group`.
pub fn tensor_graded(
    a: &GradedAlgebra,
    b: &GradedAlgebra,
    group: AbGroup,
    degmap: impl Fn(usize, usize) -> GroupElement,
) -> Result<GradedAlgebra> {
    let (da, db) = (a.dim(), b.dim());
    let mut labels = Vec::with_capacity(da * db);
    let mut degree = Vec::with_capacity(da * db);
    for i in 0..da {
        for j in 0..db {
            labels.push(format!("{}*{}", a.label(i), b.label(j)));
            let g = degmap(i, j);
            if !group.contains(&g) {
                return Err(Error::InvalidAlgebra(format!("tensor degree {g} is outside {group}")));
            }
            degree.push(g);
        }
    }
    let mut table = Vec::with_capacity(da * db * da * db);
    for x in 0..da * db {
        for y in 0..da * db {
            let (xa, xb) = (x / db, x % db);
            let (ya, yb) = (y / db, y % db);
            let mut prod = Vec::new();
            for (k, c) in a.basis_product(xa, ya) {
                for (l, d) in b.basis_product(xb, yb) {
                    prod.push((k * db + l, c.mul_ref(d)));
                }
            }
            table.push(prod);
        }
    }
    let unit = match (a.unit(), b.unit()) {
        (Some(ua), Some(ub)) => {
            let mut u = AlgElement::zero();
            for (&k, c) in ua.coords() {
                for (&l, d) in ub.coords() {
                    u.add_term(k * db + l, c.mul_ref(d));
                }
            }
            Some(u)
        }
        _ => None,
    };
    GradedAlgebra::from_parts(group, labels, degree, table, unit)
}

/// Tensor product graded by the direct product of the factor groups.
pub fn tensor_product_grading(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<GradedAlgebra> {
    let group = a.group().direct_product(b.group());
    tensor_graded(a, b, group, |i, j| a.group().pair(b.group(), a.degree(i), b.degree(j)))
}

/// Tensor product of two algebras graded by the same group, degrees added.
pub fn tensor_sum_grading(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<GradedAlgebra> {
    if a.group() != b.group() {
        return Err(Error::GroupMismatch(format!("{} vs {}", a.group(), b.group())));
    }
    let g = a.group().clone();
    tensor_graded(a, b, g.clone(), |i, j| g.add(a.degree(i), b.degree(j)))
}

/// `K^alpha Q (x) M_r` with `deg(X_h (x) e_ij) = h + g_i - g_j` for the tuple `(g_1..g_r)`.
pub fn twisted_matrix_algebra(alpha: &Cocycle, r: usize, tuple: &[GroupElement]) -> Result<GradedAlgebra> {
    let q = alpha.group().clone();
    let tga = twisted_group_algebra(alpha)?;
    let trivial = AbGroup::trivial();
    let m = elementary_grading(r, &trivial, &vec![trivial.zero(); r])?;
    if tuple.len() != r {
        return Err(Error::InvalidAlgebra(format!("tuple must have {r} entries")));
    }
    if let Some(g) = tuple.iter().find(|g| !q.contains(g)) {
        return Err(Error::InvalidElement(format!("{g} is not in {q}")));
    }
    tensor_graded(&tga, &m, q.clone(), |h, e| {
        let (i, j) = (e / r, e % r);
        q.add(tga.degree(h), &q.sub(&tuple[i], &tuple[j]))
    })
}

/// Subsets of `{1..k}` as bitmasks, ordered by size then lexicographically.
pub fn grassmann_subsets(k: usize) -> Vec<u32> {
    let mut subsets: Vec<u32> = (0..1u32 << k).collect();
    subsets.sort_by_key(|&s| {
        let elems: Vec<u32> = (0..k as u32).filter(|i| s >> i & 1 == 1).collect();
        (s.count_ones(), elems)
    });
    subsets
}

/// Sign of `e_S e_T` for disjoint `S, T`: parity of pairs `s in S, t in T` with `s > t`.
pub fn grassmann_sign(s: u32, t: u32) -> i64 {
    let mut inversions = 0;
    let mut rest = s;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        inversions += (t & ((1u32 << bit) - 1)).count_ones();
        rest &= rest - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn grassmann_label(s: u32) -> String {
    if s == 0 {
        return "1".into();
    }
    (0..32).filter(|i| s >> i & 1 == 1).map(|i| format!("e{}", i + 1)).collect()
}

/// The Grassmann algebra `E_k` on `k` anticommuting generators, `Z2`-graded by length parity.
pub fn grassmann(k: usize) -> Result<GradedAlgebra> {
    if k > 12 {
        return Err(Error::GuardExceeded(format!("E_{k} has dimension 2^{k}")));
    }
    let subsets = grassmann_subsets(k);
    let mut pos = vec![0usize; subsets.len()];
    for (i, &s) in subsets.iter().enumerate() {
        pos[s as usize] = i;
    }
    let z2 = AbGroup::cyclic(2);
    let table = monomial_table(subsets.len(), |i, j| {
        let (s, t) = (subsets[i], subsets[j]);
        (s & t == 0).then(|| (pos[(s | t) as usize], CycScalar::from_int(grassmann_sign(s, t))))
    });
    let labels = subsets.iter().map(|&s| grassmann_label(s)).collect();
    let degree = subsets.iter().map(|&s| z2.el(&[(s.count_ones() % 2) as i64])).collect();
    GradedAlgebra::from_parts(z2, labels, degree, table, Some(AlgElement::basis(0)))
}

/// Basis index of the monomial `e_S` in [`grassmann`]`(k)`.
pub fn grassmann_index(k: usize, generators: &[usize]) -> usize {
    let mask = generators.iter().fold(0u32, |m, &g| m | 1 << (g - 1));
    grassmann_subsets(k).iter().position(|&s| s == mask).expect("subset of generators")
}

/// 2x2 integer matrices `I, Ya, Yb, YaYb` with `Ya = diag(-1, 1)`, `Yb = [[0, -1], [1, 0]]`.
const M11_MATS: [[[i64; 2]; 2]; 4] = [
    [[1, 0], [0, 1]],
    [[-1, 0], [0, 1]],
    [[0, -1], [1, 0]],
    [[0, 1], [1, 0]],
];
const M11_NAMES: [&str; 4] = ["I", "Ya", "Yb", "YaYb"];

fn mat2_mul(a: &[[i64; 2]; 2], b: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

/// `M_{1,1}(E_k) = E_0 I + E_0 Ya + E_1 Yb + E_1 YaYb`, graded by `Z2 x Z2`.
pub fn m11_grassmann(k: usize) -> Result<GradedAlgebra> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::InvalidAlgebra(format!("M11(E_k) needs even k >= 2, got {k}")));
    }
    let e = grassmann(k)?;
    let klein = AbGroup::new(vec![2, 2])?;
    // basis: (grassmann index, W index)
    let mut basis = Vec::new();
    for m in 0..e.dim() {
        let odd = e.degree(m).residues()[0] == 1;
        for w in if odd { [2, 3] } else { [0, 1] } {
            basis.push((m, w));
        }
    }
    let mut pos = BTreeMap::new();
    for (i, b) in basis.iter().enumerate() {
        pos.insert(*b, i);
    }
    let w_degree = [[0, 0], [0, 1], [1, 0], [1, 1]];
    let w_product = |w: usize, v: usize| -> (usize, i64) {
        let p = mat2_mul(&M11_MATS[w], &M11_MATS[v]);
        for (u, m) in M11_MATS.iter().enumerate() {
            for sign in [1, -1] {
                if (0..2).all(|i| (0..2).all(|j| p[i][j] == sign * m[i][j])) {
                    return (u, sign);
                }
            }
        }
        unreachable!("signed Klein matrices are closed under products")
    };
    let table = monomial_table(basis.len(), |x, y| {
        let (m1, w1) = basis[x];
        let (m2, w2) = basis[y];
        let prod = e.basis_product(m1, m2);
        let (m, c) = prod.first()?;
        let (w, sign) = w_product(w1, w2);
        Some((pos[&(*m, w)], c.mul_ref(&CycScalar::from_int(sign))))
    });
    let labels = basis
        .iter()
        .map(|&(m, w)| format!("{}*{}", e.label(m), M11_NAMES[w]))
        .collect();
    let degree = basis
        .iter()
        .map(|&(_, w)| klein.el(&[w_degree[w][0], w_degree[w][1]]))
        .collect();
    GradedAlgebra::from_parts(klein, labels, degree, table, Some(AlgElement::basis(pos[&(0, 0)])))
}

/// JSON description of an algebra, as read by the command-line tool.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum AlgebraSpec {
    Elementary {
        group: AbGroup,
        tuple: Vec<String>,
    },
    Pauli {
        n: usize,
    },
    Twisted {
        group: AbGroup,
        cocycle: CocycleSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        r: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tuple: Option<Vec<String>>,
    },
    Tensor {
        left: Box<AlgebraSpec>,
        right: Box<AlgebraSpec>,
        #[serde(default)]
        degrees: TensorDegrees,
    },
    Grassmann {
        k: usize,
    },
    M11 {
        k: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CocycleSpec {
    /// `"trivial"` or `"klein"`.
    Named(String),
    Table(Vec<Vec<CycScalar>>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TensorDegrees {
    /// Grade by the direct product of the two groups.
    #[default]
    Product,
    /// Both factors share a group; degrees add.
    Sum,
}

impl CocycleSpec {
    pub fn build(&self, group: &AbGroup) -> Result<Cocycle> {
        match self {
            CocycleSpec::Named(name) if name == "trivial" => Ok(Cocycle::trivial(group)),
            CocycleSpec::Named(name) if name == "klein" => {
                if group.orders() != [2, 2] {
                    return Err(Error::InvalidAlgebra("the klein cocycle lives on Z2xZ2".into()));
                }
                Ok(Cocycle::klein_standard())
            }
            CocycleSpec::Named(name) => Err(Error::InvalidAlgebra(format!("unknown cocycle {name:?}"))),
            CocycleSpec::Table(rows) => Cocycle::from_table(group, rows),
        }
    }
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<GradedAlgebra> {
        match self {
            AlgebraSpec::Elementary { group, tuple } => {
                let t = tuple.iter().map(|s| group.parse_element(s)).collect::<Result<Vec<_>>>()?;
                elementary_grading(t.len(), group, &t)
            }
            AlgebraSpec::Pauli { n } => pauli_grading(*n),
            AlgebraSpec::Twisted { group, cocycle, r, tuple } => {
                let alpha = cocycle.build(group)?;
                match r {
                    None => twisted_group_algebra(&alpha),
                    Some(r) => {
                        let t = match tuple {
                            Some(t) => t.iter().map(|s| group.parse_element(s)).collect::<Result<Vec<_>>>()?,
                            None => vec![group.zero(); *r],
                        };
                        twisted_matrix_algebra(&alpha, *r, &t)
                    }
                }
            }
            AlgebraSpec::Tensor { left, right, degrees } => {
                let (a, b) = (left.build()?, right.build()?);
                match degrees {
                    TensorDegrees::Product => tensor_product_grading(&a, &b),
                    TensorDegrees::Sum => tensor_sum_grading(&a, &b),
                }
            }
            AlgebraSpec::Grassmann { k } => grassmann(*k),
            AlgebraSpec::M11 { k } => m11_grassmann(*k),
        }
    }
}

/// Representatives, up to permutations of the generators, of the `d`-tuples
/// of basis monomials of `E_k` whose supports are pairwise disjoint.
///
/// A generator permutation is a graded automorphism of `E_k`, so a
/// multilinear polynomial vanishes (or is central) on a tuple iff it does on
/// its image. Tuples with overlapping supports make every word of a
/// multilinear polynomial vanish and are skipped. A disjoint tuple is
/// determined up to permutation by the support sizes `(n_1, .., n_d)`, so the
/// representative gives slot `s` the next `n_s` generators. Monomials are
/// returned as generator bitmasks.
pub fn grassmann_orbit_tuples(k: usize, d: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut sizes = vec![0usize; d];
    loop {
        if sizes.iter().sum::<usize>() <= k {
            let mut next = 0;
            out.push(
                sizes
                    .iter()
                    .map(|&n| {
                        let mask = ((1u32 << n) - 1) << next;
                        next += n;
                        mask
                    })
                    .collect(),
            );
        }
        let mut s = 0;
        while s < d {
            sizes[s] += 1;
            if sizes[s] <= k {
                break;
            }
            sizes[s] = 0;
            s += 1;
        }
        if s == d {
            return out;
        }
    }
}
