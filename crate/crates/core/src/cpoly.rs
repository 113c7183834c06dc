//! Sparse multivariate commutative polynomials over [`CycScalar`].
//!
//! Variables are plain `u32` ids. Names for printing live in a
//! [`VarRegistry`] owned by whoever allocates the ids.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::CycScalar;

pub type Var = u32;

/// Sorted `(var, exponent)` pairs with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Self {
        pairs.retain(|p| p.1 > 0);
        pairs.sort();
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::new();
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                if f > e {
                    return None;
                }
                if e > f {
                    out.push((v, e - f));
                }
                j += 1;
            } else if j < other.0.len() && other.0[j].0 < v {
                return None;
            } else {
                out.push((v, e));
            }
        }
        (j == other.0.len()).then_some(Monomial(out))
    }
}

/// Graded lexicographic: higher total degree is larger; ties broken by
/// comparing exponents variable by variable, smaller ids first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                if a.0 != b.0 {
                    return b.0.cmp(&a.0);
                }
                if a.1 != b.1 {
                    return a.1.cmp(&b.1);
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CommPoly {
    terms: BTreeMap<Monomial, CycScalar>,
}

impl CommPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(CycScalar::one())
    }

    pub fn constant(c: CycScalar) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(CycScalar::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), CycScalar::one())
    }

    pub fn term(m: Monomial, c: CycScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        CommPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &CycScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<CycScalar> {
        match self.terms.len() {
            0 => Some(CycScalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|p| p.0))
            .collect()
    }

    pub fn leading(&self) -> Option<(&Monomial, &CycScalar)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add_ref(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_ref(&self, other: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    pub fn add_assign_ref(&mut self, other: &CommPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub_ref(&self, other: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg_ref());
        }
        out
    }

    pub fn neg_ref(&self) -> CommPoly {
        CommPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, s: &CycScalar) -> CommPoly {
        if s.is_zero() {
            return CommPoly::zero();
        }
        CommPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.mul_ref(s))).collect(),
        }
    }

    pub fn mul_ref(&self, other: &CommPoly) -> CommPoly {
        if self.is_zero() || other.is_zero() {
            return CommPoly::zero();
        }
        let mut acc: HashMap<Monomial, CycScalar> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = c1.mul_ref(c2);
                match acc.get_mut(&m) {
                    Some(x) => *x = x.add_ref(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        CommPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> CommPoly {
        let mut acc = CommPoly::one();
        for _ in 0..k {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Exact evaluation; every variable must be assigned.
    pub fn substitute(&self, values: &HashMap<Var, CycScalar>) -> Result<CycScalar> {
        let mut acc = CycScalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                let x = values
                    .get(&v)
                    .ok_or_else(|| Error::MissingVariable(format!("z{v}")))?;
                t = t.mul_ref(&x.pow(e as i64)?);
            }
            acc = acc.add_ref(&t);
        }
        Ok(acc)
    }

    /// Substitutes polynomials for some variables; unassigned variables stay.
    pub fn substitute_polys(&self, values: &HashMap<Var, CommPoly>) -> CommPoly {
        let mut acc = CommPoly::zero();
        for (m, c) in &self.terms {
            let mut t = CommPoly::constant(c.clone());
            let mut rest = Vec::new();
            for &(v, e) in &m.0 {
                match values.get(&v) {
                    Some(p) => t = t.mul_ref(&p.pow(e)),
                    None => rest.push((v, e)),
                }
            }
            if !rest.is_empty() {
                t = t.mul_ref(&CommPoly::term(Monomial(rest), CycScalar::one()));
            }
            acc.add_assign_ref(&t);
        }
        acc
    }

    /// `self / d` when the division is exact.
    pub fn div_exact(&self, d: &CommPoly) -> Option<CommPoly> {
        let (lm, lc) = d.leading()?;
        let lc_inv = lc.inverse().ok()?;
        let mut rem = self.clone();
        let mut q = CommPoly::zero();
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(lm)?;
            let qc = c.mul_ref(&lc_inv);
            let t = CommPoly::term(qm, qc);
            rem = rem.sub_ref(&t.mul_ref(d));
            q.add_assign_ref(&t);
        }
        Some(q)
    }

    pub fn display_with<'a>(&'a self, names: &'a VarRegistry) -> impl fmt::Display + 'a {
        PolyDisplay { p: self, names: Some(names) }
    }
}

impl From<CycScalar> for CommPoly {
    fn from(c: CycScalar) -> Self {
        CommPoly::constant(c)
    }
}

struct PolyDisplay<'a> {
    p: &'a CommPoly,
    names: Option<&'a VarRegistry>,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.p.terms.iter().rev().enumerate() {
            let mon: Vec<String> = m
                .0
                .iter()
                .map(|&(v, e)| {
                    let name = self.names.map_or_else(|| format!("z{v}"), |r| r.name(v));
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let coeff = c.to_string();
            let simple = c.as_rational().is_some();
            let (neg, mag) = match coeff.strip_prefix('-') {
                Some(rest) if simple => (true, rest.to_string()),
                _ => (false, coeff),
            };
            let mag = if simple { mag } else { format!("({mag})") };
            let body = match (mon.is_empty(), mag.as_str()) {
                (true, _) => mag.clone(),
                (false, "1") => mon.join("*"),
                (false, _) => format!("{mag}*{}", mon.join("*")),
            };
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// Canonical expanded form, highest graded-lex term first; variable `v` prints as `z<v>`.
impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        PolyDisplay { p: self, names: None }.fmt(f)
    }
}

/// Allocates variable ids and remembers their printable names.
#[derive(Clone, Debug, Default)]
pub struct VarRegistry {
    names: Vec<String>,
    by_name: HashMap<String, Var>,
}

impl VarRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Allocates the next id under `name`.
    pub fn fresh(&mut self, name: impl Into<String>) -> Var {
        let name = name.into();
        let id = self.names.len() as Var;
        self.by_name.insert(name.clone(), id);
        self.names.push(name);
        id
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, v: Var) -> String {
        self.names
            .get(v as usize)
            .cloned()
            .unwrap_or_else(|| format!("z{v}"))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// `L(z1,z2,z3,z4) = (z1-z2)(z1-z3)(z4-z2)(z4-z3)(z2-z3)^2`, expanded.
pub fn build_l() -> CommPoly {
    let z = |i| CommPoly::var(i);
    let d = |a: u32, b: u32| z(a).sub_ref(&z(b));
    d(1, 2)
        .mul_ref(&d(1, 3))
        .mul_ref(&d(4, 2))
        .mul_ref(&d(4, 3))
        .mul_ref(&d(2, 3).pow(2))
}

/// `(c1-c2)^2 (c1-c3)^2 (c2-c3)^2`.
pub fn discriminant3(c1: &CommPoly, c2: &CommPoly, c3: &CommPoly) -> CommPoly {
    c1.sub_ref(c2)
        .mul_ref(&c1.sub_ref(c3))
        .mul_ref(&c2.sub_ref(c3))
        .pow(2)
}

/// Discriminant of the characteristic polynomial of a 3x3 matrix.
///
/// With `det(t - M) = t^3 + a t^2 + b t + c` this is
/// `a^2 b^2 - 4 b^3 - 4 a^3 c - 27 c^2 + 18 a b c`.
pub fn charpoly_disc(m: &[Vec<CommPoly>]) -> Result<CommPoly> {
    let cols = m.first().map_or(0, |r| r.len());
    if m.len() != 3 || m.iter().any(|r| r.len() != 3) {
        return Err(Error::NotSquare { rows: m.len(), cols });
    }
    let e = |i: usize, j: usize| &m[i][j];
    let tr = e(0, 0).add_ref(e(1, 1)).add_ref(e(2, 2));
    let minor = |i: usize, j: usize| e(i, i).mul_ref(e(j, j)).sub_ref(&e(i, j).mul_ref(e(j, i)));
    let sum_minors = minor(0, 1).add_ref(&minor(0, 2)).add_ref(&minor(1, 2));
    let det = e(0, 0)
        .mul_ref(&minor(1, 2))
        .sub_ref(&e(0, 1).mul_ref(&e(1, 0).mul_ref(e(2, 2)).sub_ref(&e(1, 2).mul_ref(e(2, 0)))))
        .add_ref(&e(0, 2).mul_ref(&e(1, 0).mul_ref(e(2, 1)).sub_ref(&e(1, 1).mul_ref(e(2, 0)))));
    let a = tr.neg_ref();
    let b = sum_minors;
    let c = det.neg_ref();
    let k = |n: i64| CycScalar::from_int(n);
    let ab = a.mul_ref(&b);
    Ok(ab
        .pow(2)
        .sub_ref(&b.pow(3).scale(&k(4)))
        .sub_ref(&a.pow(3).mul_ref(&c).scale(&k(4)))
        .sub_ref(&c.pow(2).scale(&k(27)))
        .add_ref(&ab.mul_ref(&c).scale(&k(18))))
}

/// Parses polynomial literals such as `(z1-z2)^2*(z3+1)`.
///
/// Variables `z<digits>` map to that id. Scalar atoms (`3/2`, `zeta(4)`) are
/// allowed as factors.
impl FromStr for CommPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = PolyParser { src: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::parse(p.pos, "trailing input in polynomial literal"));
        }
        Ok(v)
    }
}

struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl PolyParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<u64> {
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

    fn expr(&mut self) -> Result<CommPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add_ref(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub_ref(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CommPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul_ref(&self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    let c = d
                        .as_constant()
                        .and_then(|c| c.inverse().ok())
                        .ok_or_else(|| Error::parse(at, "can only divide by a nonzero constant"))?;
                    acc = acc.scale(&c);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<CommPoly> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg_ref());
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let e = u32::try_from(self.digits()?).map_err(|_| Error::parse(at, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<CommPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::parse(self.pos, "expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(CommPoly::int(self.digits()? as i64)),
            Some(b'z') if self.src[self.pos..].starts_with(b"zeta(") => {
                let start = self.pos;
                let close = self.src[start..]
                    .iter()
                    .position(|&b| b == b')')
                    .ok_or_else(|| Error::parse(start, "unterminated zeta("))?;
                let text = std::str::from_utf8(&self.src[start..=start + close]).expect("ascii");
                let c: CycScalar = text
                    .parse()
                    .map_err(|_| Error::parse(start, "bad zeta literal"))?;
                self.pos = start + close + 1;
                Ok(CommPoly::constant(c))
            }
            Some(b'z') => {
                self.pos += 1;
                let at = self.pos;
                let id = u32::try_from(self.digits()?).map_err(|_| Error::parse(at, "variable id too large"))?;
                Ok(CommPoly::var(id))
            }
            _ => Err(Error::parse(self.pos, "expected term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> CommPoly {
        s.parse().unwrap()
    }

    fn at(vals: &[(Var, i64)]) -> HashMap<Var, CycScalar> {
        vals.iter().map(|&(v, x)| (v, CycScalar::from_int(x))).collect()
    }

    #[test]
    fn product_examples() {
        assert_eq!(p("(z1-z2)*(z1+z2)"), p("z1^2 - z2^2"));
        assert!(p("z1+3").mul_ref(&CommPoly::zero()).is_zero());
        assert_eq!(build_l().total_degree(), Some(6));
        assert_eq!(p("(z1-z2)^2*(z3+1)").to_string(), p("z1^2*z3 - 2*z1*z2*z3 + z2^2*z3 + z1^2 - 2*z1*z2 + z2^2").to_string());
    }

    #[test]
    fn l_examples() {
        let l = build_l();
        assert_eq!(l.substitute(&at(&[(1, 0), (2, 1), (3, 2), (4, 0)])).unwrap(), CycScalar::from_int(4));
        let collapsed = l.substitute_polys(&[(2, CommPoly::var(1))].into_iter().collect());
        assert!(collapsed.is_zero());
        let c = [CommPoly::var(11), CommPoly::var(12), CommPoly::var(13)];
        let disc = discriminant3(&c[0], &c[1], &c[2]);
        for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let sub: HashMap<Var, CommPoly> = [
                (1, c[perm[0]].clone()),
                (2, c[perm[1]].clone()),
                (3, c[perm[2]].clone()),
                (4, c[perm[0]].clone()),
            ]
            .into_iter()
            .collect();
            assert_eq!(l.substitute_polys(&sub), disc, "permutation {perm:?}");
        }
    }

    #[test]
    fn discriminant_examples() {
        let k = CommPoly::int;
        assert_eq!(discriminant3(&k(0), &k(1), &k(2)), k(4));
        assert!(discriminant3(&p("z1"), &p("z1"), &p("z2")).is_zero());
        let diag = |a: CommPoly, b: CommPoly, c: CommPoly| {
            vec![
                vec![a, k(0), k(0)],
                vec![k(0), b, k(0)],
                vec![k(0), k(0), c],
            ]
        };
        assert_eq!(
            charpoly_disc(&diag(p("z1"), p("z2"), p("z3"))).unwrap(),
            discriminant3(&p("z1"), &p("z2"), &p("z3"))
        );
        assert_eq!(charpoly_disc(&diag(k(0), k(1), k(2))).unwrap(), k(4));
        assert!(charpoly_disc(&diag(k(1), k(1), k(0))).unwrap().is_zero());
        assert!(matches!(charpoly_disc(&[vec![k(1)]]), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn substitute_examples() {
        assert_eq!(p("z1^2 - z2^2").substitute(&at(&[(1, 3), (2, 2)])).unwrap(), CycScalar::from_int(5));
        assert!(CommPoly::zero().substitute(&HashMap::new()).unwrap().is_zero());
        assert!(matches!(p("z1+z2").substitute(&at(&[(1, 1)])), Err(Error::MissingVariable(_))));
    }

    #[test]
    fn exact_division() {
        let a = p("z1 - z2");
        let b = p("z1^2 + z3");
        assert_eq!(a.mul_ref(&b).div_exact(&a), Some(b.clone()));
        assert_eq!(p("z1 + 1").div_exact(&p("z2")), None);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("z1 +".parse::<CommPoly>(), Err(Error::Parse { .. })));
        assert!(matches!("(z1".parse::<CommPoly>(), Err(Error::Parse { .. })));
        assert!(matches!("z1/z2".parse::<CommPoly>(), Err(Error::Parse { .. })));
        assert_eq!(p("zeta(4)^2*z1"), p("-z1"));
    }

    fn arb_poly() -> impl Strategy<Value = CommPoly> {
        proptest::collection::vec((proptest::collection::vec((0u32..5, 0u32..3), 0..3), -3i64..4), 0..5).prop_map(|ts| {
            let mut acc = CommPoly::zero();
            for (pairs, c) in ts {
                let m = Monomial::from_pairs(pairs);
                if m.degree() <= 4 {
                    acc.add_assign_ref(&CommPoly::term(m, CycScalar::from_int(c)));
                }
            }
            acc
        })
    }

    fn rational_matrix(entries: &[i64]) -> Vec<Vec<CommPoly>> {
        (0..3).map(|i| (0..3).map(|j| CommPoly::int(entries[3 * i + j])).collect()).collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
            prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
            prop_assert_eq!(a.add_ref(&b).mul_ref(&c), a.mul_ref(&c).add_ref(&b.mul_ref(&c)));
            prop_assert!(a.sub_ref(&a).is_zero());
        }

        #[test]
        fn substitution_is_multiplicative(a in arb_poly(), b in arb_poly(), vals in proptest::collection::vec(-3i64..4, 5)) {
            let v: HashMap<Var, CycScalar> = vals.iter().enumerate().map(|(i, &x)| (i as Var, CycScalar::from_int(x))).collect();
            prop_assert_eq!(a.mul_ref(&b).substitute(&v).unwrap(), a.substitute(&v).unwrap().mul_ref(&b.substitute(&v).unwrap()));
        }

        #[test]
        fn disc_similarity_invariant(m in proptest::collection::vec(-3i64..4, 9), pm in proptest::collection::vec(-2i64..3, 9)) {
            use crate::linalg;
            let pmat: linalg::Matrix = (0..3).map(|i| (0..3).map(|j| CycScalar::from_int(pm[3 * i + j])).collect()).collect();
            prop_assume!(!linalg::det_exact(&pmat).unwrap().is_zero());
            let pinv = linalg::inverse(&pmat).unwrap();
            let mm: linalg::Matrix = (0..3).map(|i| (0..3).map(|j| CycScalar::from_int(m[3 * i + j])).collect()).collect();
            let conj = linalg::mat_mul(&linalg::mat_mul(&pmat, &mm), &pinv);
            let conj_poly: Vec<Vec<CommPoly>> = conj.into_iter().map(|r| r.into_iter().map(CommPoly::constant).collect()).collect();
            prop_assert_eq!(charpoly_disc(&conj_poly).unwrap(), charpoly_disc(&rational_matrix(&m)).unwrap());
        }
    }
}
