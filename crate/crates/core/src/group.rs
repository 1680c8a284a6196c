//! Concrete finite groups given by full multiplication tables.
//!
//! Elements are dense indices `0..order` with `0` the identity. Products use
//! the conventions `[x, y] = x y x⁻¹ y⁻¹` and `ᵍn = g n g⁻¹`; iterated
//! commutators are left-normed.

use std::collections::{BTreeMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Index of an element inside its [`FiniteGroup`].
pub type Element = usize;

/// Hard ceiling on the order of any constructed group.
pub const MAX_GROUP_ORDER: usize = 128;

/// Orders up to this bound get an exhaustive associativity check.
const EXHAUSTIVE_ASSOC_BOUND: usize = 64;

/// Default bound for [`FiniteGroup::all_subgroups`].
pub const DEFAULT_SUBGROUP_BOUND: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<Element>,
    inv: Vec<Element>,
    labels: BTreeMap<String, Element>,
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table, validating the
    /// group axioms.
    pub fn from_table(
        name: impl Into<String>,
        order: usize,
        mul: Vec<Element>,
        labels: BTreeMap<String, Element>,
    ) -> Result<Self> {
        let name = name.into();
        if order == 0 {
            return Err(Error::InvalidArgument(
                "group order must be positive".into(),
            ));
        }
        if order > MAX_GROUP_ORDER {
            return Err(Error::Limit(format!(
                "group {name} has order {order} > {MAX_GROUP_ORDER}"
            )));
        }
        if mul.len() != order * order {
            return Err(Error::InvalidArgument(format!(
                "multiplication table of {name} has {} entries, expected {}",
                mul.len(),
                order * order
            )));
        }
        if let Some(&bad) = mul.iter().find(|&&v| v >= order) {
            return Err(Error::InvalidArgument(format!(
                "table entry {bad} out of range for {name}"
            )));
        }
        for x in 0..order {
            if mul[x] != x || mul[x * order] != x {
                return Err(Error::InvalidArgument(format!(
                    "element 0 is not the identity of {name}"
                )));
            }
        }
        check_latin(&name, order, &mul)?;
        check_associative(&name, order, &mul)?;

        let mut inv = vec![usize::MAX; order];
        for x in 0..order {
            let row = &mul[x * order..(x + 1) * order];
            let y = row.iter().position(|&v| v == 0).expect("latin square row");
            inv[x] = y;
        }
        if let Some((label, _)) = labels.iter().find(|(_, &v)| v >= order) {
            return Err(Error::InvalidArgument(format!(
                "generator label {label} out of range for {name}"
            )));
        }
        Ok(Self {
            name,
            order,
            mul,
            inv,
            labels,
        })
    }

    /// Builds a group from a product function on `0..order`.
    pub fn from_fn(
        name: impl Into<String>,
        order: usize,
        labels: BTreeMap<String, Element>,
        f: impl Fn(Element, Element) -> Element,
    ) -> Result<Self> {
        let mut mul = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                mul.push(f(x, y));
            }
        }
        Self::from_table(name, order, mul, labels)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.mul[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: Element) -> Element {
        self.inv[x]
    }

    pub fn labels(&self) -> &BTreeMap<String, Element> {
        &self.labels
    }

    pub fn label(&self, label: &str) -> Option<Element> {
        self.labels.get(label).copied()
    }

    pub fn pow(&self, x: Element, exp: i64) -> Element {
        let base = if exp < 0 { self.inv(x) } else { x };
        let mut acc = 0;
        for _ in 0..exp.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, x: Element) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|x| self.element_order(x))
            .fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (x + 1..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// `g n g⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: Element, n: Element) -> Element {
        self.mul(self.mul(g, n), self.inv(g))
    }

    /// `x y x⁻¹ y⁻¹`.
    #[inline]
    pub fn commutator(&self, x: Element, y: Element) -> Element {
        self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)))
    }

    /// Left-normed commutator `[x₁, …, xₖ] = [[x₁, …, xₖ₋₁], xₖ]`.
    pub fn iterated_commutator(&self, xs: &[Element]) -> Result<Element> {
        let (&first, rest) = xs.split_first().ok_or_else(|| {
            Error::InvalidArgument("iterated commutator of an empty sequence".into())
        })?;
        Ok(rest.iter().fold(first, |acc, &x| self.commutator(acc, x)))
    }

    /// Smallest subgroup containing `gens`.
    pub fn subgroup_generated(&self, gens: &[Element]) -> Subgroup {
        self.close(vec![0], gens)
    }

    /// Closure of `seed ∪ gens` under right multiplication by `gens`; `seed`
    /// must already be a subgroup (or `{1}`).
    fn close(&self, seed: Vec<Element>, gens: &[Element]) -> Subgroup {
        let mut member = vec![false; self.order];
        let mut list = Vec::with_capacity(self.order);
        let mut queue = VecDeque::new();
        for x in seed {
            if !member[x] {
                member[x] = true;
                list.push(x);
                queue.push_back(x);
            }
        }
        let gens: Vec<Element> = gens.iter().copied().filter(|&g| g != 0).collect();
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    list.push(y);
                    queue.push_back(y);
                }
            }
        }
        list.sort_unstable();
        Subgroup { elements: list }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: self.elements().collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    /// Every subgroup, sorted by order and then element list.
    ///
    /// Seeds with the cyclic subgroups and repeatedly adjoins one element to a
    /// known subgroup until no new subgroup appears.
    pub fn all_subgroups(&self, bound: usize) -> Result<Vec<Subgroup>> {
        if self.order > bound {
            return Err(Error::Limit(format!(
                "subgroup enumeration of {} (order {}) exceeds bound {bound}",
                self.name, self.order
            )));
        }
        let mut seen: HashSet<Vec<Element>> = HashSet::new();
        let mut found = Vec::new();
        let mut frontier = Vec::new();
        for x in self.elements() {
            let c = self.subgroup_generated(&[x]);
            if seen.insert(c.elements.clone()) {
                frontier.push(c.clone());
                found.push(c);
            }
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for x in self.elements() {
                    if s.contains(x) {
                        continue;
                    }
                    let mut gens = s.elements.clone();
                    gens.push(x);
                    let t = self.close(s.elements.clone(), &gens);
                    if seen.insert(t.elements.clone()) {
                        next.push(t.clone());
                        found.push(t);
                    }
                }
            }
            frontier = next;
        }
        found.sort_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| a.elements.cmp(&b.elements))
        });
        Ok(found)
    }

    pub fn normal_subgroups(&self, bound: usize) -> Result<Vec<Subgroup>> {
        Ok(self
            .all_subgroups(bound)?
            .into_iter()
            .filter(|s| self.is_normal(s))
            .collect())
    }

    pub fn is_normal(&self, n: &Subgroup) -> bool {
        n.elements
            .iter()
            .all(|&x| self.elements().all(|g| n.contains(self.conjugate(g, x))))
    }

    pub fn is_subgroup(&self, elements: &[Element]) -> bool {
        Subgroup::new(self, elements.to_vec()).is_ok()
    }

    pub fn centralizer(&self, x: Element) -> Subgroup {
        Subgroup {
            elements: self
                .elements()
                .filter(|&a| self.mul(a, x) == self.mul(x, a))
                .collect(),
        }
    }

    pub fn center(&self) -> Subgroup {
        Subgroup {
            elements: self
                .elements()
                .filter(|&a| self.elements().all(|x| self.mul(a, x) == self.mul(x, a)))
                .collect(),
        }
    }

    /// Subgroup generated by all `[a, b]` with `a ∈ A`, `b ∈ B`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens: Vec<Element> = Vec::new();
        let mut seen = vec![false; self.order];
        for &x in a.elements() {
            for &y in b.elements() {
                let c = self.commutator(x, y);
                if !seen[c] {
                    seen[c] = true;
                    gens.push(c);
                }
            }
        }
        self.subgroup_generated(&gens)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let g = self.whole();
        self.commutator_subgroup(&g, &g)
    }

    /// `G/N` together with the projection `G → G/N`.
    ///
    /// Cosets are numbered by their smallest element, so the identity coset
    /// is `0`.
    pub fn quotient(&self, n: &Subgroup) -> Result<(FiniteGroup, Vec<Element>)> {
        if !self.is_normal(n) {
            return Err(Error::InvalidArgument(format!(
                "subgroup of order {} is not normal in {}",
                n.order(),
                self.name
            )));
        }
        let mut proj = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in self.elements() {
            if proj[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for &x in n.elements() {
                proj[self.mul(g, x)] = idx;
            }
        }
        let q_order = reps.len();
        let labels = self
            .labels
            .iter()
            .map(|(k, &v)| (k.clone(), proj[v]))
            .collect();
        let name = if n.order() == 1 {
            self.name.clone()
        } else {
            format!("{}/N{}", self.name, n.order())
        };
        let quotient = FiniteGroup::from_fn(name, q_order, labels, |i, j| {
            proj[self.mul(reps[i], reps[j])]
        })?;
        if self.order <= EXHAUSTIVE_ASSOC_BOUND {
            for g in self.elements() {
                for h in self.elements() {
                    if proj[self.mul(g, h)] != quotient.mul(proj[g], proj[h]) {
                        return Err(Error::Internal(format!(
                            "projection of {} is not a homomorphism at ({g}, {h})",
                            self.name
                        )));
                    }
                }
            }
        }
        Ok((quotient, proj))
    }

    /// `Z₀ = 1 ≤ Z₁ = Z(G) ≤ …` up to and including the first repeated term.
    pub fn upper_central_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.trivial_subgroup()];
        loop {
            let prev = series.last().expect("nonempty");
            let next = Subgroup {
                elements: self
                    .elements()
                    .filter(|&a| {
                        self.elements()
                            .all(|x| prev.contains(self.commutator(a, x)))
                    })
                    .collect(),
            };
            if next == *prev {
                break;
            }
            series.push(next);
        }
        series
    }

    /// Nilpotency class, or `None` for non-nilpotent groups.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let series = self.upper_central_series();
        let top = series.len() - 1;
        (series[top].order() == self.order).then_some(top)
    }

    pub fn smallest_prime_divisor(&self) -> Option<usize> {
        smallest_prime_divisor(self.order)
    }

    /// Row-major multiplication table.
    pub fn table(&self) -> &[Element] {
        &self.mul
    }

    /// `H` as a group in its own right, elements numbered in increasing
    /// order of their index in `self`.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> Result<FiniteGroup> {
        let elems = h.elements();
        let pos = |x: Element| elems.binary_search(&x).expect("closed subgroup");
        let labels = self
            .labels
            .iter()
            .filter(|(_, &v)| h.contains(v))
            .map(|(k, &v)| (k.clone(), pos(v)))
            .collect();
        let name = if h.order() == self.order {
            self.name.clone()
        } else {
            format!("{}:H{}", self.name, h.order())
        };
        FiniteGroup::from_fn(name, h.order(), labels, |i, j| {
            pos(self.mul(elems[i], elems[j]))
        })
    }

    /// Copy of the group with element `x` renamed to `perm[x]`; `perm` must
    /// be a permutation fixing 0.
    pub fn relabeled(&self, perm: &[Element]) -> Result<FiniteGroup> {
        let mut check = vec![false; self.order];
        if perm.len() != self.order || perm.first() != Some(&0) {
            return Err(Error::InvalidArgument(
                "relabeling must fix the identity".into(),
            ));
        }
        for &p in perm {
            if p >= self.order || std::mem::replace(&mut check[p], true) {
                return Err(Error::InvalidArgument(
                    "relabeling is not a permutation".into(),
                ));
            }
        }
        let mut back = vec![0; self.order];
        for (x, &p) in perm.iter().enumerate() {
            back[p] = x;
        }
        let labels = self
            .labels
            .iter()
            .map(|(k, &v)| (k.clone(), perm[v]))
            .collect();
        FiniteGroup::from_fn(self.name.clone(), self.order, labels, |i, j| {
            perm[self.mul(back[i], back[j])]
        })
    }

    /// Evaluates a word given as `(label, exponent)` pairs.
    pub fn eval_word(&self, word: &GroupWord) -> Result<Element> {
        let mut acc = 0;
        for (label, exp) in &word.0 {
            let x = self.label(label).ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown generator label {label:?} for {}",
                    self.name
                ))
            })?;
            acc = self.mul(acc, self.pow(x, *exp));
        }
        Ok(acc)
    }
}

/// A word over generator labels with integer exponents.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupWord(pub Vec<(String, i64)>);

/// A subgroup as a sorted list of element indices of its parent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<Element>,
}

impl Subgroup {
    /// Validates that `elements` forms a subgroup of `parent`.
    pub fn new(parent: &FiniteGroup, mut elements: Vec<Element>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(Error::InvalidArgument(
                "subgroup must contain the identity".into(),
            ));
        }
        if let Some(&x) = elements.iter().find(|&&x| x >= parent.order()) {
            return Err(Error::InvalidArgument(format!(
                "element {x} not in {}",
                parent.name()
            )));
        }
        let s = Subgroup { elements };
        for &x in &s.elements {
            if !s.contains(parent.inv(x)) {
                return Err(Error::InvalidArgument(format!(
                    "not closed under inverse at {x}"
                )));
            }
            for &y in &s.elements {
                if !s.contains(parent.mul(x, y)) {
                    return Err(Error::InvalidArgument(format!(
                        "not closed under multiplication at ({x}, {y})"
                    )));
                }
            }
        }
        assert_eq!(parent.order() % s.order(), 0, "Lagrange violated");
        Ok(s)
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            elements: self
                .elements
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        }
    }

    /// Pull back a subgroup of `G/N` along `proj`.
    pub fn preimage(proj: &[Element], image: &Subgroup) -> Subgroup {
        Subgroup {
            elements: (0..proj.len())
                .filter(|&g| image.contains(proj[g]))
                .collect(),
        }
    }

    /// Image of this subgroup under `proj`.
    pub fn image(&self, proj: &[Element]) -> Subgroup {
        let mut elements: Vec<Element> = self.elements.iter().map(|&x| proj[x]).collect();
        elements.sort_unstable();
        elements.dedup();
        Subgroup { elements }
    }

    /// Positions of this subgroup's elements inside `outer`, i.e. this
    /// subgroup as a subgroup of [`FiniteGroup::subgroup_as_group`]`(outer)`.
    pub fn relative_to(&self, outer: &Subgroup) -> Result<Subgroup> {
        let elements = self
            .elements
            .iter()
            .map(|x| {
                outer.elements.binary_search(x).map_err(|_| {
                    Error::InvalidArgument(format!("element {x} lies outside the outer subgroup"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Subgroup { elements })
    }

    /// Product set `HK`, returned as a sorted element list.
    pub fn product_set(&self, other: &Subgroup, g: &FiniteGroup) -> Vec<Element> {
        let mut out: Vec<Element> = self
            .elements
            .iter()
            .flat_map(|&h| other.elements.iter().map(move |&k| g.mul(h, k)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

pub fn smallest_prime_divisor(n: usize) -> Option<usize> {
    (2..=n).find(|p| n.is_multiple_of(*p))
}

fn check_latin(name: &str, order: usize, mul: &[Element]) -> Result<()> {
    let mut seen = vec![usize::MAX; order];
    for x in 0..order {
        for y in 0..order {
            let v = mul[x * order + y];
            if seen[v] == x {
                return Err(Error::InvalidArgument(format!(
                    "row {x} of {name} repeats {v}"
                )));
            }
            seen[v] = x;
        }
    }
    let mut seen = vec![usize::MAX; order];
    for y in 0..order {
        for x in 0..order {
            let v = mul[x * order + y];
            if seen[v] == y {
                return Err(Error::InvalidArgument(format!(
                    "column {y} of {name} repeats {v}"
                )));
            }
            seen[v] = y;
        }
    }
    Ok(())
}

fn check_associative(name: &str, order: usize, mul: &[Element]) -> Result<()> {
    let m = |x: usize, y: usize| mul[x * order + y];
    let fail = |x, y, z| {
        Err(Error::InvalidArgument(format!(
            "{name} is not associative at ({x}, {y}, {z})"
        )))
    };
    if order <= EXHAUSTIVE_ASSOC_BOUND {
        for x in 0..order {
            for y in 0..order {
                let xy = m(x, y);
                for z in 0..order {
                    if m(xy, z) != m(x, m(y, z)) {
                        return fail(x, y, z);
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(order as u64);
        for _ in 0..10 * order * order {
            let (x, y, z) = (
                rng.gen_range(0..order),
                rng.gen_range(0..order),
                rng.gen_range(0..order),
            );
            if m(m(x, y), z) != m(x, m(y, z)) {
                return fail(x, y, z);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_named, Family};

    fn d8() -> FiniteGroup {
        build_named(&Family::Dihedral(8), 64).unwrap()
    }

    #[test]
    fn rejects_non_latin_table() {
        let err = FiniteGroup::from_table("bad", 2, vec![0, 1, 1, 1], BTreeMap::new()).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)));
    }

    #[test]
    fn rejects_non_associative_loop() {
        // A Latin square with identity 0 that is not a group (order 5 loop).
        let t = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ];
        let mul = t.iter().flatten().copied().collect();
        assert!(FiniteGroup::from_table("loop", 5, mul, BTreeMap::new()).is_err());
    }

    #[test]
    fn conjugation_in_d8() {
        let g = d8();
        let (a, b) = (g.label("a").unwrap(), g.label("b").unwrap());
        assert_eq!(g.conjugate(b, a), g.pow(a, 3));
        assert_eq!(g.conjugate(0, a), a);
    }

    #[test]
    fn commutators_in_d8() {
        let g = d8();
        let (a, b) = (g.label("a").unwrap(), g.label("b").unwrap());
        assert_eq!(g.commutator(a, b), g.pow(a, 2));
        assert_eq!(g.iterated_commutator(&[a, b, b]).unwrap(), 0);
        assert_eq!(g.iterated_commutator(&[b]).unwrap(), b);
        assert_eq!(g.commutator(a, a), 0);
        assert!(g.iterated_commutator(&[]).is_err());
    }

    #[test]
    fn subgroup_generated_by_a2_ab() {
        let g = d8();
        let (a, b) = (g.label("a").unwrap(), g.label("b").unwrap());
        let a2 = g.pow(a, 2);
        let ab = g.mul(a, b);
        let h = g.subgroup_generated(&[a2, ab]);
        let mut expect = [0, a2, ab, g.mul(g.pow(a, 3), b)];
        expect.sort();
        assert_eq!(h.elements(), &expect[..]);
        assert_eq!(g.subgroup_generated(&[]).elements(), &[0]);
        assert_eq!(g.subgroup_generated(h.elements()), h);
    }

    #[test]
    fn center_and_derived_of_d8() {
        let g = d8();
        let a2 = g.pow(g.label("a").unwrap(), 2);
        assert_eq!(g.center().elements(), &[0, a2]);
        assert_eq!(g.derived_subgroup().elements(), &[0, a2]);
        assert_eq!(g.nilpotency_class(), Some(2));
    }

    #[test]
    fn quotient_of_d8_by_center_is_klein() {
        let g = d8();
        let (q, proj) = g.quotient(&g.center()).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(q.exponent(), 2);
        assert_eq!(proj[0], 0);
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let g = build_named(&Family::Symmetric(3), 64).unwrap();
        let t = g.subgroup_generated(&[g.label("b").unwrap()]);
        assert_eq!(t.order(), 2);
        assert!(matches!(g.quotient(&t), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn trivial_quotient_is_a_copy() {
        let g = d8();
        let (q, proj) = g.quotient(&g.trivial_subgroup()).unwrap();
        assert_eq!(q.order(), 8);
        assert!(proj.iter().enumerate().all(|(i, &p)| i == p));
    }

    #[test]
    fn subgroup_enumeration_bound() {
        let g = d8();
        assert!(matches!(g.all_subgroups(4), Err(Error::Limit(_))));
    }

    #[test]
    fn subgroup_new_validates() {
        let g = d8();
        let a = g.label("a").unwrap();
        assert!(Subgroup::new(&g, vec![0, a]).is_err());
        assert!(Subgroup::new(&g, vec![a]).is_err());
        assert!(Subgroup::new(&g, vec![0, g.pow(a, 2)]).is_ok());
    }
}
