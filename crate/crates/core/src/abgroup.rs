//! Finite abelian groups in explicit cyclic-factor form.
//!
//! A group is `Z_{n_1} x ... x Z_{n_k}`, written additively; an element is
//! its residue vector. Enumeration order is always lexicographic on residue
//! vectors, which is what [`AbGroup::elements`] and [`AbGroup::index_of`]
//! agree on.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Above this size quotients and subgroup closures are refused.
pub const MAX_GROUP_ORDER: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<u32>);

impl GroupElement {
    pub fn residues(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.len() {
            0 => write!(f, "0"),
            1 => write!(f, "{}", self.0[0]),
            _ => {
                write!(f, "(")?;
                for (i, r) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{r}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbGroup {
    orders: Vec<u32>,
}

impl AbGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidGroup("cyclic factor of order 0".into()));
        }
        let g = AbGroup { orders };
        if g.order() > MAX_GROUP_ORDER {
            return Err(Error::InvalidGroup(format!(
                "order {} exceeds {MAX_GROUP_ORDER}",
                g.order()
            )));
        }
        Ok(g)
    }

    pub fn trivial() -> Self {
        AbGroup { orders: Vec::new() }
    }

    pub fn cyclic(n: u32) -> Self {
        AbGroup::new(vec![n]).expect("cyclic group order must be positive")
    }

    /// `Z_n x Z_m x ...` from the given orders, panicking on a zero order.
    pub fn product_of(orders: &[u32]) -> Self {
        AbGroup::new(orders.to_vec()).expect("valid cyclic orders")
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().map(|&n| n as u64).product()
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |acc, &n| acc.lcm(&(n as u64)))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.orders.len()])
    }

    /// Builds an element from arbitrary integers, reducing each modulo its factor.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement> {
        if residues.len() != self.orders.len() {
            return Err(Error::InvalidElement(format!(
                "expected {} residues, got {}",
                self.orders.len(),
                residues.len()
            )));
        }
        Ok(GroupElement(
            residues
                .iter()
                .zip(&self.orders)
                .map(|(&r, &n)| r.rem_euclid(n as i64) as u32)
                .collect(),
        ))
    }

    /// Like [`AbGroup::element`] but panics on a length mismatch.
    pub fn el(&self, residues: &[i64]) -> GroupElement {
        self.element(residues).expect("residue vector matches group rank")
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.orders.len() && g.0.iter().zip(&self.orders).all(|(&r, &n)| r < n)
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!("{g} is not an element of {self}")))
        }
    }

    /// Checked addition; fails when either operand belongs to another group.
    pub fn try_add(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.add(g, h))
    }

    pub fn add(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        debug_assert!(self.contains(g) && self.contains(h));
        GroupElement(
            g.0.iter()
                .zip(&h.0)
                .zip(&self.orders)
                .map(|((&a, &b), &n)| ((a as u64 + b as u64) % n as u64) as u32)
                .collect(),
        )
    }

    pub fn neg(&self, g: &GroupElement) -> GroupElement {
        GroupElement(
            g.0.iter()
                .zip(&self.orders)
                .map(|(&a, &n)| (n - a) % n)
                .collect(),
        )
    }

    pub fn sub(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.add(g, &self.neg(h))
    }

    pub fn scale(&self, k: i64, g: &GroupElement) -> GroupElement {
        GroupElement(
            g.0.iter()
                .zip(&self.orders)
                .map(|(&a, &n)| ((a as i64 * k).rem_euclid(n as i64)) as u32)
                .collect(),
        )
    }

    pub fn element_order(&self, g: &GroupElement) -> u64 {
        g.0.iter().zip(&self.orders).fold(1u64, |acc, (&a, &n)| {
            let o = n as u64 / (a as u64).gcd(&(n as u64));
            acc.lcm(&o)
        })
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        items
            .into_iter()
            .fold(self.zero(), |acc, g| self.add(&acc, g))
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order() as usize).map(|i| self.element_at(i)).collect()
    }

    /// Position of `g` in [`AbGroup::elements`].
    pub fn index_of(&self, g: &GroupElement) -> usize {
        g.0.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&r, &n)| acc * n as usize + r as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut res = vec![0u32; self.orders.len()];
        for (slot, &n) in res.iter_mut().zip(&self.orders).rev() {
            *slot = (idx % n as usize) as u32;
            idx /= n as usize;
        }
        GroupElement(res)
    }

    /// Standard generators `(0,..,1,..,0)`, one per cyclic factor.
    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.rank())
            .map(|i| {
                let mut r = vec![0u32; self.rank()];
                r[i] = 1 % self.orders[i];
                GroupElement(r)
            })
            .collect()
    }

    /// External direct product, factors of `self` first.
    pub fn direct_product(&self, other: &AbGroup) -> AbGroup {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        AbGroup::new(orders).expect("product of valid groups")
    }

    /// Concatenates residue vectors for [`AbGroup::direct_product`].
    pub fn pair(&self, other: &AbGroup, g: &GroupElement, h: &GroupElement) -> GroupElement {
        debug_assert!(self.contains(g) && other.contains(h));
        let mut r = g.0.clone();
        r.extend_from_slice(&h.0);
        GroupElement(r)
    }

    /// Like [`AbGroup::parse_element`] but rejects residues `r` with `|r| >= n`,
    /// which usually signal the wrong group.
    pub fn parse_element_strict(&self, s: &str) -> Result<GroupElement> {
        let g = self.parse_element(s)?;
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        for (part, &n) in inner.split(',').zip(&self.orders) {
            let r: i64 = part.trim().parse().unwrap_or(0);
            if r.unsigned_abs() >= n as u64 {
                return Err(Error::InvalidElement(format!("residue {r} is out of range for Z{n} in {s:?}")));
            }
        }
        Ok(g)
    }

    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(t)
            .trim();
        let parts: Vec<i64> = if inner.is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::InvalidElement(format!("bad residue {p:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        if self.rank() == 0 && parts == [0] {
            return Ok(self.zero());
        }
        self.element(&parts)
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "trivial");
        }
        for (i, n) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "Z{n}")?;
        }
        Ok(())
    }
}

impl FromStr for AbGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("trivial") || t == "1" {
            return Ok(AbGroup::trivial());
        }
        let orders = t
            .split(['x', '×'])
            .map(|f| {
                let f = f.trim();
                f.strip_prefix('Z')
                    .map(|n| n.trim_start_matches('_'))
                    .and_then(|n| n.parse::<u32>().ok())
                    .ok_or_else(|| Error::InvalidGroup(format!("bad cyclic factor {f:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        AbGroup::new(orders)
    }
}

impl Serialize for AbGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AbGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A homomorphism given by the images of the standard generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: AbGroup,
    target: AbGroup,
    images: Vec<GroupElement>,
}

impl GroupHom {
    pub fn new(source: AbGroup, target: AbGroup, images: Vec<GroupElement>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::InvalidHom(format!(
                "{} generator images for a group of rank {}",
                images.len(),
                source.rank()
            )));
        }
        for (img, &n) in images.iter().zip(source.orders()) {
            if !target.contains(img) {
                return Err(Error::InvalidHom(format!("{img} is not in {target}")));
            }
            if target.scale(n as i64, img) != target.zero() {
                return Err(Error::InvalidHom(format!(
                    "image {img} has order not dividing {n}"
                )));
            }
        }
        Ok(GroupHom {
            source,
            target,
            images,
        })
    }

    pub fn identity(g: &AbGroup) -> Self {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            images: g.generators(),
        }
    }

    /// The map to the trivial group.
    pub fn to_trivial(g: &AbGroup) -> Self {
        let t = AbGroup::trivial();
        GroupHom {
            source: g.clone(),
            images: vec![t.zero(); g.rank()],
            target: t,
        }
    }

    /// Projection of a product group onto one of its cyclic factors, e.g.
    /// `Z2xZ2 -> Z2` onto the first coordinate.
    pub fn coordinate_projection(g: &AbGroup, factor: usize) -> Result<Self> {
        if factor >= g.rank() {
            return Err(Error::InvalidHom(format!("no factor {factor} in {g}")));
        }
        let target = AbGroup::cyclic(g.orders()[factor]);
        let images = (0..g.rank())
            .map(|i| {
                if i == factor {
                    target.el(&[1])
                } else {
                    target.zero()
                }
            })
            .collect();
        GroupHom::new(g.clone(), target, images)
    }

    pub fn source(&self) -> &AbGroup {
        &self.source
    }

    pub fn target(&self) -> &AbGroup {
        &self.target
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        debug_assert!(self.source.contains(g));
        g.0.iter()
            .zip(&self.images)
            .fold(self.target.zero(), |acc, (&r, img)| {
                self.target.add(&acc, &self.target.scale(r as i64, img))
            })
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::generated(&self.target, &self.images)
            .expect("images lie in the target group")
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    pub fn kernel(&self) -> Subgroup {
        let members = self
            .source
            .elements()
            .into_iter()
            .filter(|g| self.apply(g) == self.target.zero())
            .collect();
        Subgroup {
            parent: self.source.clone(),
            members,
        }
    }
}

/// A subgroup stored by its full, sorted member list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    parent: AbGroup,
    members: Vec<GroupElement>,
}

impl Subgroup {
    pub fn trivial(parent: &AbGroup) -> Self {
        Subgroup {
            parent: parent.clone(),
            members: vec![parent.zero()],
        }
    }

    pub fn whole(parent: &AbGroup) -> Self {
        Subgroup {
            parent: parent.clone(),
            members: parent.elements(),
        }
    }

    /// Smallest subgroup containing `gens`.
    pub fn generated(parent: &AbGroup, gens: &[GroupElement]) -> Result<Self> {
        for g in gens {
            parent.check(g)?;
        }
        let mut members: BTreeSet<GroupElement> = BTreeSet::new();
        members.insert(parent.zero());
        let mut frontier = vec![parent.zero()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = parent.add(&x, g);
                if members.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Ok(Subgroup {
            parent: parent.clone(),
            members: members.into_iter().collect(),
        })
    }

    /// Validates an explicit member list.
    pub fn from_members(parent: &AbGroup, members: Vec<GroupElement>) -> Result<Self> {
        let set: BTreeSet<GroupElement> = members.into_iter().collect();
        for g in &set {
            parent.check(g)?;
        }
        if !set.contains(&parent.zero()) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for a in &set {
            for b in &set {
                if !set.contains(&parent.sub(a, b)) {
                    return Err(Error::NotSubgroup(format!("{a} - {b} escapes the set")));
                }
            }
        }
        Ok(Subgroup {
            parent: parent.clone(),
            members: set.into_iter().collect(),
        })
    }

    pub fn parent(&self) -> &AbGroup {
        &self.parent
    }

    pub fn members(&self) -> &[GroupElement] {
        &self.members
    }

    pub fn order(&self) -> u64 {
        self.members.len() as u64
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.members.binary_search(g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}

/// `G/H` in invariant-factor form together with the projection `G -> G/H`.
///
/// The relation lattice (the factor orders plus the members of `H`) is put in
/// Smith normal form; the column transform gives the projection directly.
pub fn quotient(g: &AbGroup, h: &Subgroup) -> Result<(AbGroup, GroupHom)> {
    if h.parent() != g {
        return Err(Error::NotSubgroup(format!(
            "subgroup of {} used with {}",
            h.parent(),
            g
        )));
    }
    let k = g.rank();
    let mut rows: Vec<Vec<i128>> = Vec::new();
    for (i, &n) in g.orders().iter().enumerate() {
        let mut r = vec![0i128; k];
        r[i] = n as i128;
        rows.push(r);
    }
    for m in h.members() {
        if m.0.iter().any(|&x| x != 0) {
            rows.push(m.0.iter().map(|&x| x as i128).collect());
        }
    }
    let (diag, v) = smith_column_transform(rows, k);

    let mut keep = Vec::new();
    for (j, &d) in diag.iter().enumerate() {
        debug_assert!(d > 0, "relation lattice has full rank");
        if d != 1 {
            keep.push((j, d));
        }
    }
    let target = AbGroup::new(keep.iter().map(|&(_, d)| d as u32).collect())?;
    let images = (0..k)
        .map(|i| {
            let res: Vec<i64> = keep
                .iter()
                .map(|&(j, d)| (v[i][j].rem_euclid(d)) as i64)
                .collect();
            target.el(&res)
        })
        .collect();
    let pi = GroupHom::new(g.clone(), target.clone(), images)?;

    if target.order() * h.order() != g.order() || !pi.is_surjective() {
        return Err(Error::Inconsistent(format!(
            "quotient of {g} by a subgroup of order {} has order {}",
            h.order(),
            target.order()
        )));
    }
    if let Some(bad) = h.members().iter().find(|m| pi.apply(m) != target.zero()) {
        return Err(Error::Inconsistent(format!("{bad} not in projection kernel")));
    }
    Ok((target, pi))
}

/// Diagonalises the row lattice of `rows` (each of length `k`) by unimodular
/// row and column operations. Returns the `k` diagonal entries (absolute
/// values) and the accumulated `k x k` column transform `V`.
fn smith_column_transform(mut a: Vec<Vec<i128>>, k: usize) -> (Vec<i128>, Vec<Vec<i128>>) {
    let mut v: Vec<Vec<i128>> = (0..k)
        .map(|i| (0..k).map(|j| i128::from(i == j)).collect())
        .collect();
    let m = a.len();
    let mut diag = vec![0i128; k];

    for t in 0..k {
        loop {
            // pick the smallest nonzero entry of the remaining block as pivot
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
            }
            let p = a[t][t];
            let mut clean = true;
            for i in (t + 1)..m {
                let q = a[i][t].div_euclid(p);
                if q != 0 {
                    for j in t..k {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in (t + 1)..k {
                let q = a[t][j].div_euclid(p);
                if q != 0 {
                    for row in a.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    for row in v.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t and retry
            let offending = ((t + 1)..m).find(|&i| ((t + 1)..k).any(|j| a[i][j] % p != 0));
            match offending {
                Some(i) => {
                    for j in t..k {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
        diag[t] = if t < m { a[t][t].abs() } else { 0 };
    }
    (diag, v)
}

/// The fiber `pi^{-1}(h)` in canonical order.
pub fn preimage(pi: &GroupHom, h: &GroupElement) -> Result<Vec<GroupElement>> {
    if !pi.target().contains(h) {
        return Err(Error::GroupMismatch(format!("{h} not in {}", pi.target())));
    }
    let fiber: Vec<GroupElement> = pi
        .source()
        .elements()
        .into_iter()
        .filter(|g| &pi.apply(g) == h)
        .collect();
    if fiber.is_empty() {
        return Err(Error::NotInImage(h.to_string()));
    }
    Ok(fiber)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(orders: &[u32]) -> AbGroup {
        AbGroup::product_of(orders)
    }

    /// Coset table: classes of `G` modulo `H` by brute force.
    fn coset_count(g: &AbGroup, h: &Subgroup) -> usize {
        let mut seen: BTreeSet<Vec<GroupElement>> = BTreeSet::new();
        for x in g.elements() {
            let mut coset: Vec<_> = h.members().iter().map(|m| g.add(&x, m)).collect();
            coset.sort();
            seen.insert(coset);
        }
        seen.len()
    }

    #[test]
    fn addition_examples() {
        let k = z(&[2, 2]);
        assert_eq!(k.add(&k.el(&[1, 0]), &k.el(&[1, 1])), k.el(&[0, 1]));
        let z3 = z(&[3]);
        assert_eq!(z3.add(&z3.el(&[1]), &z3.el(&[2])), z3.zero());
        let g = z(&[4, 6]);
        for x in g.elements() {
            assert_eq!(g.add(&x, &g.zero()), x);
        }
    }

    #[test]
    fn mismatched_parents_rejected() {
        let a = z(&[2, 2]);
        let b = z(&[3]);
        assert!(a.try_add(&a.el(&[1, 0]), &b.el(&[1])).is_err());
        assert!(matches!(
            b.try_add(&b.el(&[1]), &GroupElement(vec![5])),
            Err(Error::GroupMismatch(_))
        ));
    }

    #[test]
    fn group_axioms_exhaustive_small() {
        for orders in [vec![], vec![2], vec![4], vec![2, 2], vec![2, 4], vec![3, 3], vec![2, 2, 2, 2]] {
            let g = AbGroup::new(orders).unwrap();
            let els = g.elements();
            assert_eq!(els.len() as u64, g.order());
            for a in &els {
                assert_eq!(g.add(a, &g.neg(a)), g.zero());
                for b in &els {
                    assert_eq!(g.add(a, b), g.add(b, a));
                    for c in &els {
                        assert_eq!(g.add(&g.add(a, b), c), g.add(a, &g.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn index_roundtrip_is_lexicographic() {
        let g = z(&[2, 3]);
        let els = g.elements();
        let mut sorted = els.clone();
        sorted.sort();
        assert_eq!(els, sorted);
        for (i, x) in els.iter().enumerate() {
            assert_eq!(g.index_of(x), i);
        }
    }

    #[test]
    fn subgroup_generation() {
        let z6 = z(&[6]);
        let h = Subgroup::generated(&z6, &[z6.el(&[2])]).unwrap();
        assert_eq!(h.members(), &[z6.el(&[0]), z6.el(&[2]), z6.el(&[4])]);
        assert!(Subgroup::generated(&z6, &[]).unwrap().is_trivial());
        let k = z(&[2, 2]);
        let all = Subgroup::generated(&k, &[k.el(&[1, 0]), k.el(&[0, 1])]).unwrap();
        assert_eq!(all.order(), 4);
    }

    #[test]
    fn non_subgroup_rejected() {
        let z4 = z(&[4]);
        assert!(Subgroup::from_members(&z4, vec![z4.el(&[0]), z4.el(&[1])]).is_err());
        assert!(Subgroup::from_members(&z4, vec![z4.el(&[2])]).is_err());
    }

    #[test]
    fn quotient_examples() {
        let z4 = z(&[4]);
        let h = Subgroup::generated(&z4, &[z4.el(&[2])]).unwrap();
        let (t, pi) = quotient(&z4, &h).unwrap();
        assert_eq!(t.orders(), &[2]);
        assert_eq!(pi.apply(&z4.el(&[1])), t.el(&[1]));

        let k = z(&[2, 2]);
        let h = Subgroup::from_members(&k, vec![k.el(&[0, 0]), k.el(&[0, 1])]).unwrap();
        let (t, pi) = quotient(&k, &h).unwrap();
        assert_eq!(t.order() as usize, coset_count(&k, &h));
        assert_eq!(t.orders(), &[2]);
        assert_eq!(pi.apply(&k.el(&[0, 1])), t.zero());

        let (t, pi) = quotient(&k, &Subgroup::trivial(&k)).unwrap();
        assert_eq!(t, k);
        for x in k.elements() {
            assert_eq!(pi.apply(&x), x);
        }
    }

    #[test]
    fn quotient_matches_coset_enumeration() {
        for orders in [vec![2, 4], vec![4, 4], vec![2, 2, 2], vec![6], vec![3, 6], vec![2, 6]] {
            let g = AbGroup::new(orders).unwrap();
            for a in g.elements() {
                for b in g.elements().into_iter().step_by(3) {
                    let h = Subgroup::generated(&g, &[a.clone(), b]).unwrap();
                    let (t, pi) = quotient(&g, &h).unwrap();
                    assert_eq!(t.order() as usize, coset_count(&g, &h));
                    assert_eq!(pi.kernel(), h);
                    for x in g.elements() {
                        for y in g.elements() {
                            assert_eq!(pi.apply(&g.add(&x, &y)), t.add(&pi.apply(&x), &pi.apply(&y)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn preimage_examples() {
        let z4 = z(&[4]);
        let z2 = z(&[2]);
        let pi = GroupHom::new(z4.clone(), z2.clone(), vec![z2.el(&[1])]).unwrap();
        assert_eq!(preimage(&pi, &z2.el(&[1])).unwrap(), vec![z4.el(&[1]), z4.el(&[3])]);
        let id = GroupHom::identity(&z4);
        assert_eq!(preimage(&id, &z4.el(&[3])).unwrap(), vec![z4.el(&[3])]);
        let k = z(&[2, 2]);
        let p1 = GroupHom::coordinate_projection(&k, 0).unwrap();
        assert_eq!(
            preimage(&p1, &z2.zero()).unwrap(),
            vec![k.el(&[0, 0]), k.el(&[0, 1])]
        );
        let not_onto = GroupHom::new(z2.clone(), z4.clone(), vec![z4.el(&[2])]).unwrap();
        assert!(matches!(preimage(&not_onto, &z4.el(&[1])), Err(Error::NotInImage(_))));
    }

    #[test]
    fn fibers_partition_the_group() {
        let g = z(&[4, 2]);
        let h = Subgroup::generated(&g, &[g.el(&[2, 1])]).unwrap();
        let (t, pi) = quotient(&g, &h).unwrap();
        let mut all: Vec<GroupElement> = t
            .elements()
            .iter()
            .flat_map(|x| preimage(&pi, x).unwrap())
            .collect();
        all.sort();
        assert_eq!(all, g.elements());
    }

    #[test]
    fn hom_well_definedness() {
        let z2 = z(&[2]);
        let z4 = z(&[4]);
        assert!(GroupHom::new(z2, z4.clone(), vec![z4.el(&[1])]).is_err());
    }

    #[test]
    fn parse_and_display() {
        let g: AbGroup = "Z2xZ4".parse().unwrap();
        assert_eq!(g.orders(), &[2, 4]);
        assert_eq!(g.to_string(), "Z2xZ4");
        assert!("trivial".parse::<AbGroup>().unwrap().is_trivial());
        assert!("Q8".parse::<AbGroup>().is_err());
        assert_eq!(g.parse_element("(1,3)").unwrap(), g.el(&[1, 3]));
        assert_eq!(g.parse_element("(1,-1)").unwrap(), g.el(&[1, 3]));
        assert!(g.parse_element("(1)").is_err());
        let z3 = AbGroup::cyclic(3);
        assert_eq!(z3.parse_element("2").unwrap(), z3.el(&[2]));
        assert_eq!(AbGroup::trivial().parse_element("0").unwrap(), AbGroup::trivial().zero());
    }
}
