//! Finite groups stored as full Cayley tables.
//!
//! Elements are indices `0..n` and index 0 is always the identity. Every
//! derived table (inverses, element orders, a small generating set) is
//! computed once at construction, so a [`FiniteGroup`] is immutable and can be
//! shared freely between threads.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on group orders accepted by [`build_group`].
pub const DEFAULT_MAX_ORDER: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    element_order: Vec<usize>,
    generators: Vec<usize>,
}

/// Validates a Cayley table and builds the group, using [`DEFAULT_MAX_ORDER`].
pub fn build_group(table: Vec<Vec<usize>>, name: impl Into<String>) -> Result<FiniteGroup> {
    build_group_with_cap(table, name, DEFAULT_MAX_ORDER)
}

pub fn build_group_with_cap(table: Vec<Vec<usize>>, name: impl Into<String>, cap: usize) -> Result<FiniteGroup> {
    let n = table.len();
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    if n > cap {
        return Err(Error::TooLarge { order: n, cap });
    }
    let mut flat = Vec::with_capacity(n * n);
    for (a, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::RaggedTable { row: a, len: row.len(), expected: n });
        }
        for (b, &value) in row.iter().enumerate() {
            if value >= n {
                return Err(Error::EntryOutOfRange { a, b, value, order: n });
            }
            flat.push(value);
        }
    }
    for a in 0..n {
        let left = flat[a];
        let right = flat[a * n];
        if left != a || right != a {
            return Err(Error::NoIdentityAtZero { a, left, right });
        }
    }
    for a in 0..n {
        let row = &flat[a * n..(a + 1) * n];
        match row.iter().position(|&v| v == 0) {
            Some(b) if flat[b * n + a] == 0 => {}
            _ => return Err(Error::NotInvertible { a }),
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = flat[a * n + b];
            for c in 0..n {
                if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                    return Err(Error::NotAssociative { a, b, c });
                }
            }
        }
    }
    Ok(FiniteGroup::from_flat_unchecked(name.into(), n, flat))
}

impl FiniteGroup {
    /// Builds a group from a row-major table already known to be a group
    /// with identity 0. Used by internal constructions.
    pub(crate) fn from_flat_unchecked(name: String, order: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let mut inverse = vec![0; order];
        for (a, inv) in inverse.iter_mut().enumerate() {
            *inv = table[a * order..(a + 1) * order]
                .iter()
                .position(|&v| v == 0)
                .expect("group table has an inverse in every row");
        }
        let mut element_order = vec![1; order];
        for (a, ord) in element_order.iter_mut().enumerate() {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = table[x * order + a];
                k += 1;
            }
            *ord = k;
        }
        let mut group = FiniteGroup { name, order, table, inverse, element_order, generators: Vec::new() };
        let all: Vec<usize> = (0..order).collect();
        group.generators = small_generating_set(&group, &all);
        group
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

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    #[inline]
    pub fn element_order(&self, a: usize) -> usize {
        self.element_order[a]
    }

    pub fn element_orders(&self) -> &[usize] {
        &self.element_order
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    /// A small generating set chosen greedily (largest element orders first).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let k = k % self.element_order[a];
        let mut x = 0;
        for _ in 0..k {
            x = self.mul(x, a);
        }
        x
    }

    /// `g x g^-1`
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse[g])
    }

    /// `a^-1 b^-1 a b`
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ia = self.inverse[a];
        let ib = self.inverse[b];
        self.mul(self.mul(ia, ib), self.mul(a, b))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        self.generators.iter().all(|&a| self.generators.iter().all(|&b| self.table[a * n + b] == self.table[b * n + a]))
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn to_json(&self) -> String {
        let file = GroupFile { name: self.name.clone(), order: self.order, table: self.table_rows() };
        serde_json::to_string(&file).expect("group file serializes")
    }

    /// Parses the Cayley-table JSON format and runs full validation.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GroupFile = serde_json::from_str(text)?;
        if file.order != file.table.len() {
            return Err(Error::Json(format!("declared order {} but table has {} rows", file.order, file.table.len())));
        }
        build_group(file.table, file.name)
    }
}

/// On-disk Cayley-table format.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupFile {
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

/// A subgroup, stored as its strictly increasing element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subgroup {
    elems: Vec<usize>,
}

impl Subgroup {
    /// Validates that `elems` is a subgroup of `g`.
    pub fn new(g: &FiniteGroup, mut elems: Vec<usize>) -> Result<Self> {
        elems.sort_unstable();
        elems.dedup();
        if elems.first() != Some(&0) {
            return Err(Error::NotASubgroup { reason: "identity missing".into() });
        }
        if let Some(&x) = elems.iter().find(|&&x| x >= g.order()) {
            return Err(Error::NotASubgroup { reason: format!("index {x} out of range") });
        }
        let h = Subgroup { elems };
        for &a in &h.elems {
            if !h.contains(g.inv(a)) {
                return Err(Error::NotASubgroup { reason: format!("inverse of {a} missing") });
            }
            for &b in &h.elems {
                if !h.contains(g.mul(a, b)) {
                    return Err(Error::NotASubgroup { reason: format!("{a}*{b} not contained") });
                }
            }
        }
        if g.order() % h.len() != 0 {
            return Err(Error::NotASubgroup { reason: format!("size {} does not divide {}", h.len(), g.order()) });
        }
        Ok(h)
    }

    pub(crate) fn from_sorted(elems: Vec<usize>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(elems.first(), Some(&0));
        Subgroup { elems }
    }

    pub(crate) fn from_unsorted(mut elems: Vec<usize>) -> Self {
        elems.sort_unstable();
        Subgroup { elems }
    }

    pub fn trivial() -> Self {
        Subgroup { elems: vec![0] }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup { elems: g.elements().collect() }
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn into_elems(self) -> Vec<usize> {
        self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.len() <= other.len() && self.elems.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup { elems: self.elems.iter().copied().filter(|&x| other.contains(x)).collect() }
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &x in &self.elems {
            m[x] = true;
        }
        m
    }
}

/// A homomorphism given by the image of every source element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupHom {
    image: Vec<usize>,
    target_order: usize,
}

impl GroupHom {
    pub fn new(image: Vec<usize>, target_order: usize) -> Self {
        GroupHom { image, target_order }
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom { image: g.elements().collect(), target_order: g.order() }
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.image[a]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    /// Checks `image[0] = 0` and `image[a*b] = image[a]*image[b]`.
    pub fn is_homomorphism(&self, source: &FiniteGroup, target: &FiniteGroup) -> bool {
        self.image.len() == source.order()
            && self.target_order == target.order()
            && self.image[0] == 0
            && source.elements().all(|a| {
                source.elements().all(|b| self.image[source.mul(a, b)] == target.mul(self.image[a], self.image[b]))
            })
    }

    pub fn is_bijective(&self) -> bool {
        if self.image.len() != self.target_order {
            return false;
        }
        let mut seen = vec![false; self.target_order];
        self.image.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_sorted(self.image.iter().enumerate().filter(|(_, &y)| y == 0).map(|(x, _)| x).collect())
    }

    /// For each target element in the image, the least source index mapping to it.
    pub fn least_preimages(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.target_order];
        for (x, &y) in self.image.iter().enumerate() {
            if out[y].is_none() {
                out[y] = Some(x);
            }
        }
        out
    }
}

/// Elements of `<gens>`, in discovery order, by closing `{1}` under right
/// multiplication by the generators.
pub(crate) fn closure_elems(g: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let mut mask = vec![false; g.order()];
    closure_with_mask(g, gens, &mut mask)
}

fn closure_with_mask(g: &FiniteGroup, gens: &[usize], mask: &mut [bool]) -> Vec<usize> {
    let mut list = vec![0];
    mask[0] = true;
    let mut i = 0;
    while i < list.len() {
        let a = list[i];
        for &s in gens {
            let b = g.mul(a, s);
            if !mask[b] {
                mask[b] = true;
                list.push(b);
            }
        }
        i += 1;
    }
    list
}

pub fn generated_subgroup(g: &FiniteGroup, gens: &[usize]) -> Subgroup {
    Subgroup::from_unsorted(closure_elems(g, gens))
}

/// Greedy generating set of the subgroup with element set `elems`.
pub fn small_generating_set(g: &FiniteGroup, elems: &[usize]) -> Vec<usize> {
    let mut candidates: Vec<usize> = elems.iter().copied().filter(|&x| x != 0).collect();
    candidates.sort_by_key(|&x| (std::cmp::Reverse(g.element_order[x]), x));
    let mut gens = Vec::new();
    let mut mask = vec![false; g.order()];
    mask[0] = true;
    let target = elems.len();
    let mut size = 1;
    for x in candidates {
        if size == target {
            break;
        }
        if !mask[x] {
            gens.push(x);
            mask.iter_mut().for_each(|m| *m = false);
            size = closure_with_mask(g, &gens, &mut mask).len();
        }
    }
    gens
}

pub fn subgroup_generators(g: &FiniteGroup, h: &Subgroup) -> Vec<usize> {
    small_generating_set(g, h.elems())
}

pub fn join(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut gens = subgroup_generators(g, a);
    gens.extend(subgroup_generators(g, b));
    generated_subgroup(g, &gens)
}

pub fn is_normal(g: &FiniteGroup, h: &Subgroup) -> bool {
    normality_violation(g, h).is_none()
}

fn normality_violation(g: &FiniteGroup, h: &Subgroup) -> Option<(usize, usize)> {
    let hgens = subgroup_generators(g, h);
    for &x in g.generators() {
        for &y in &hgens {
            if !h.contains(g.conj(x, y)) {
                return Some((x, y));
            }
        }
    }
    None
}

/// `H ⊴ K` for subgroups `H ≤ K` of `g`.
pub fn is_normal_in(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> bool {
    let kgens = subgroup_generators(g, k);
    let hgens = subgroup_generators(g, h);
    kgens.iter().all(|&x| hgens.iter().all(|&y| h.contains(g.conj(x, y))))
}

pub fn centralizer(g: &FiniteGroup, set: &[usize]) -> Subgroup {
    Subgroup::from_sorted(g.elements().filter(|&x| set.iter().all(|&s| g.mul(x, s) == g.mul(s, x))).collect())
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    centralizer(g, g.generators())
}

pub fn normalizer(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let hgens = subgroup_generators(g, h);
    Subgroup::from_sorted(g.elements().filter(|&x| hgens.iter().all(|&y| h.contains(g.conj(x, y)))).collect())
}

/// Largest normal subgroup of `g` inside `h`: the intersection of all conjugates.
pub fn normal_core(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    core_in(g, h, &Subgroup::whole(g))
}

/// `Core_K(H)`: intersection of the `K`-conjugates of `H`.
pub fn core_in(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Subgroup {
    let mask = h.mask(g.order());
    Subgroup::from_sorted(
        h.elems().iter().copied().filter(|&c| k.elems().iter().all(|&x| mask[g.conj(g.inv(x), c)])).collect(),
    )
}

pub fn normal_closure(g: &FiniteGroup, set: &[usize]) -> Subgroup {
    let mut gens: Vec<usize> = Vec::new();
    let mut seen = vec![false; g.order()];
    for &s in set {
        for x in g.elements() {
            let c = g.conj(x, s);
            if !seen[c] {
                seen[c] = true;
                gens.push(c);
            }
        }
    }
    generated_subgroup(g, &gens)
}

/// Every normal subgroup of `g`, sorted by `(size, elements)`.
///
/// Seeds with normal closures of single elements and closes under products.
pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let n = g.order();
    let mut found: Vec<Subgroup> = Vec::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut class_done = vec![false; n];
    let mut seeds = Vec::new();
    for x in g.elements() {
        if class_done[x] {
            continue;
        }
        for y in g.elements() {
            class_done[g.conj(y, x)] = true;
        }
        let nc = normal_closure(g, &[x]);
        if !index.contains_key(nc.elems()) {
            index.insert(nc.elems().to_vec(), found.len());
            found.push(nc.clone());
            seeds.push(nc);
        }
    }
    let seed_gens: Vec<Vec<usize>> = seeds.iter().map(|s| subgroup_generators(g, s)).collect();
    let mut i = 0;
    while i < found.len() {
        let cur = found[i].clone();
        let cur_gens = subgroup_generators(g, &cur);
        for (s, sg) in seeds.iter().zip(&seed_gens) {
            if s.is_subset_of(&cur) {
                continue;
            }
            let mut gens = cur_gens.clone();
            gens.extend(sg);
            let j = generated_subgroup(g, &gens);
            if !index.contains_key(j.elems()) {
                index.insert(j.elems().to_vec(), found.len());
                found.push(j);
            }
        }
        i += 1;
    }
    found.sort_by(|a, b| (a.len(), a.elems()).cmp(&(b.len(), b.elems())));
    found
}

pub fn conjugacy_class(g: &FiniteGroup, x: usize) -> Vec<usize> {
    let mut c: Vec<usize> = g.elements().map(|y| g.conj(y, x)).collect();
    c.sort_unstable();
    c.dedup();
    c
}

/// The quotient `g / n` with cosets labelled in order of their least element,
/// together with the projection.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
    if let Some((x, y)) = normality_violation(g, n) {
        return Err(Error::NotNormal { g: x, h: y });
    }
    Ok(quotient_unchecked(g, n))
}

pub(crate) fn quotient_unchecked(g: &FiniteGroup, n: &Subgroup) -> (FiniteGroup, GroupHom) {
    let order = g.order();
    let mut label = vec![usize::MAX; order];
    let mut reps = Vec::new();
    for x in g.elements() {
        if label[x] != usize::MAX {
            continue;
        }
        let k = reps.len();
        reps.push(x);
        for &m in n.elems() {
            label[g.mul(x, m)] = k;
        }
    }
    let q = reps.len();
    let mut table = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            table.push(label[g.mul(a, b)]);
        }
    }
    let name = format!("{}/N{}", g.name(), n.len());
    (FiniteGroup::from_flat_unchecked(name, q, table), GroupHom::new(label, q))
}

/// Re-materializes `h` as a standalone group. Element `i` of the result is
/// `embedding[i]` in `g`; since `h` is sorted and contains 0, identity stays at 0.
pub fn subgroup_as_group(g: &FiniteGroup, h: &Subgroup) -> (FiniteGroup, Vec<usize>) {
    let m = h.len();
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &x) in h.elems().iter().enumerate() {
        pos[x] = i;
    }
    let mut table = Vec::with_capacity(m * m);
    for &a in h.elems() {
        for &b in h.elems() {
            table.push(pos[g.mul(a, b)]);
        }
    }
    let name = format!("{}<{}>", g.name(), m);
    (FiniteGroup::from_flat_unchecked(name, m, table), h.elems().to_vec())
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (xa, xb) = (x % na, x / na);
        for y in 0..n {
            let (ya, yb) = (y % na, y / na);
            table.push(a.mul(xa, ya) + na * b.mul(xb, yb));
        }
    }
    FiniteGroup::from_flat_unchecked(format!("{}x{}", a.name(), b.name()), n, table)
}

/// `N ⋊ H` where `action[h]` is the automorphism of `N` by which `h` acts.
///
/// Element `(m, h)` has index `m + |N|·h`, and
/// `(m1, h1)(m2, h2) = (m1 · action[h1](m2), h1 h2)`.
pub fn semidirect_product(
    normal: &FiniteGroup,
    complement: &FiniteGroup,
    action: &[Vec<usize>],
) -> Result<FiniteGroup> {
    let (nn, nh) = (normal.order(), complement.order());
    if action.len() != nh {
        return Err(Error::ActionNotHomomorphism { h1: action.len(), h2: nh });
    }
    for (h, aut) in action.iter().enumerate() {
        let hom = GroupHom::new(aut.clone(), nn);
        if aut.len() != nn || aut.iter().any(|&v| v >= nn) || !hom.is_bijective() {
            return Err(Error::ActionNotAutomorphism { h });
        }
        for &x in normal.generators() {
            for y in normal.elements() {
                if aut[normal.mul(x, y)] != normal.mul(aut[x], aut[y]) {
                    return Err(Error::ActionNotAutomorphism { h });
                }
            }
        }
    }
    for h1 in 0..nh {
        for h2 in 0..nh {
            let h12 = complement.mul(h1, h2);
            if (0..nn).any(|m| action[h12][m] != action[h1][action[h2][m]]) {
                return Err(Error::ActionNotHomomorphism { h1, h2 });
            }
        }
    }
    let n = nn * nh;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (m1, h1) = (x % nn, x / nn);
        for y in 0..n {
            let (m2, h2) = (y % nn, y / nn);
            table.push(normal.mul(m1, action[h1][m2]) + nn * complement.mul(h1, h2));
        }
    }
    Ok(FiniteGroup::from_flat_unchecked(format!("{}:{}", normal.name(), complement.name()), n, table))
}

/// Commutator subgroup `[H, H]` of a subgroup `H` of `g`.
pub fn derived_subgroup(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let mut seen = vec![false; g.order()];
    let mut gens = Vec::new();
    for &a in h.elems() {
        for &b in h.elems() {
            let c = g.commutator(a, b);
            if !seen[c] {
                seen[c] = true;
                gens.push(c);
            }
        }
    }
    generated_subgroup(g, &gens)
}

/// Derived series of `h` until it stabilizes (last term is the perfect core).
pub fn derived_series(g: &FiniteGroup, h: &Subgroup) -> Vec<Subgroup> {
    let mut series = vec![h.clone()];
    loop {
        let next = derived_subgroup(g, series.last().unwrap());
        if next.len() == series.last().unwrap().len() {
            return series;
        }
        series.push(next);
    }
}

pub fn is_soluble_subgroup(g: &FiniteGroup, h: &Subgroup) -> bool {
    derived_series(g, h).last().unwrap().is_trivial()
}

pub fn is_soluble(g: &FiniteGroup) -> bool {
    is_soluble_subgroup(g, &Subgroup::whole(g))
}

/// Derived length of a soluble group, `None` when the group is not soluble.
pub fn derived_length(g: &FiniteGroup) -> Option<usize> {
    let series = derived_series(g, &Subgroup::whole(g));
    series.last().unwrap().is_trivial().then(|| series.len() - 1)
}

#[derive(Debug, PartialEq, Eq)]
struct IsoInvariants {
    order: usize,
    abelian: bool,
    orders: Vec<usize>,
    center: usize,
    derived: Vec<usize>,
}

fn iso_invariants(g: &FiniteGroup) -> IsoInvariants {
    let mut orders = g.element_orders().to_vec();
    orders.sort_unstable();
    IsoInvariants {
        order: g.order(),
        abelian: g.is_abelian(),
        orders,
        center: center(g).len(),
        derived: derived_series(g, &Subgroup::whole(g)).iter().map(Subgroup::len).collect(),
    }
}

/// Searches for an isomorphism `a → b`.
///
/// Invariants are screened first. The search then assigns images to the
/// generators of `a` one at a time and, after each assignment, extends the map
/// along the Cayley graph of the subgroup generated so far, backtracking on the
/// first inconsistency.
pub fn is_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> Option<GroupHom> {
    if iso_invariants(a) != iso_invariants(b) {
        return None;
    }
    let gens = a.generators().to_vec();
    let candidates: Vec<Vec<usize>> =
        gens.iter().map(|&x| b.elements().filter(|&y| b.element_order(y) == a.element_order(x)).collect()).collect();
    let mut images = Vec::with_capacity(gens.len());
    search_iso(a, b, &gens, &candidates, &mut images)
}

fn search_iso(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<GroupHom> {
    let k = images.len();
    if k == gens.len() {
        let map = extend_map(a, b, gens, images)?;
        return (map.len() == a.order()).then(|| {
            let mut image = vec![0; a.order()];
            for (x, y) in map {
                image[x] = y;
            }
            GroupHom::new(image, b.order())
        });
    }
    for &y in &candidates[k] {
        images.push(y);
        if extend_map(a, b, &gens[..=k], images).is_some() {
            if let Some(h) = search_iso(a, b, gens, candidates, images) {
                return Some(h);
            }
        }
        images.pop();
    }
    None
}

/// Extends `gens[i] ↦ images[i]` over `<gens>`; `None` if inconsistent or not injective.
fn extend_map(a: &FiniteGroup, b: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<(usize, usize)>> {
    let mut fwd = vec![usize::MAX; a.order()];
    let mut used = vec![false; b.order()];
    fwd[0] = 0;
    used[0] = true;
    let mut list = vec![0];
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for (&s, &t) in gens.iter().zip(images) {
            let xs = a.mul(x, s);
            let ys = b.mul(fwd[x], t);
            if fwd[xs] == usize::MAX {
                if used[ys] {
                    return None;
                }
                used[ys] = true;
                fwd[xs] = ys;
                list.push(xs);
            } else if fwd[xs] != ys {
                return None;
            }
        }
        i += 1;
    }
    Some(list.into_iter().map(|x| (x, fwd[x])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclic, dicyclic, elementary_abelian, symmetric};

    fn z6_table() -> Vec<Vec<usize>> {
        (0..6).map(|a| (0..6).map(|b| (a + b) % 6).collect()).collect()
    }

    #[test]
    fn trivial_table() {
        let g = build_group(vec![vec![0]], "1").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.element_orders(), &[1]);
    }

    #[test]
    fn z6_element_orders() {
        let g = build_group(z6_table(), "Z6").unwrap();
        assert_eq!(g.element_orders(), &[1, 6, 3, 2, 3, 6]);
    }

    #[test]
    fn corrupted_s3_is_rejected() {
        let s3 = symmetric(3).unwrap();
        let mut rows = s3.table_rows();
        let (a, b) = (1..6).flat_map(|a| (1..6).map(move |b| (a, b))).find(|&(a, b)| rows[a][b] != 0).unwrap();
        let replacement = (1..6).find(|&v| v != rows[a][b]).unwrap();
        rows[a][b] = replacement;
        let err = build_group(rows, "bad").unwrap_err();
        assert!(matches!(err, Error::NotAssociative { .. }), "{err:?}");
    }

    #[test]
    fn identity_and_inverse_errors() {
        let err = build_group(vec![vec![1, 0], vec![0, 1]], "x").unwrap_err();
        assert!(matches!(err, Error::NoIdentityAtZero { .. }));
        let err = build_group(vec![vec![0, 1], vec![1, 1]], "x").unwrap_err();
        assert!(matches!(err, Error::NotInvertible { a: 1 }));
        let err = build_group(vec![vec![0, 1], vec![1, 2]], "x").unwrap_err();
        assert!(matches!(err, Error::EntryOutOfRange { .. }));
    }

    #[test]
    fn size_cap() {
        let rows: Vec<Vec<usize>> = (0..5).map(|a| (0..5).map(|b| (a + b) % 5).collect()).collect();
        assert!(matches!(build_group_with_cap(rows, "Z5", 4), Err(Error::TooLarge { .. })));
    }

    fn brute_closure(g: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
        let mut set: Vec<usize> = vec![0];
        set.extend(gens);
        loop {
            let mut next = set.clone();
            for &a in &set {
                for &b in &set {
                    next.push(g.mul(a, b));
                }
            }
            next.sort_unstable();
            next.dedup();
            if next.len() == set.len() {
                return next;
            }
            set = next;
        }
    }

    #[test]
    fn generated_subgroups_of_s3() {
        let s3 = symmetric(3).unwrap();
        let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let r = (0..6).find(|&x| s3.element_order(x) == 3).unwrap();
        assert_eq!(generated_subgroup(&s3, &[t]).elems(), brute_closure(&s3, &[t]).as_slice());
        assert_eq!(generated_subgroup(&s3, &[t]).len(), 2);
        assert_eq!(generated_subgroup(&s3, &[]), Subgroup::trivial());
        assert_eq!(generated_subgroup(&s3, &[t, r]).len(), 6);
        assert_eq!(brute_closure(&s3, &[t, r]).len(), 6);
    }

    fn brute_center(g: &FiniteGroup) -> Vec<usize> {
        g.elements().filter(|&x| g.elements().all(|y| g.mul(x, y) == g.mul(y, x))).collect()
    }

    #[test]
    fn centers() {
        let z6 = cyclic(6).unwrap();
        assert_eq!(center(&z6).len(), 6);
        let s3 = symmetric(3).unwrap();
        assert_eq!(center(&s3).elems(), brute_center(&s3).as_slice());
        assert!(center(&s3).is_trivial());
        let q8 = dicyclic(2).unwrap();
        assert_eq!(center(&q8).elems(), brute_center(&q8).as_slice());
        assert_eq!(center(&q8).len(), 2);
    }

    #[test]
    fn cores() {
        let s3 = symmetric(3).unwrap();
        let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let h = generated_subgroup(&s3, &[t]);
        assert!(normal_core(&s3, &h).is_trivial());
        let a3 = generated_subgroup(&s3, &[(0..6).find(|&x| s3.element_order(x) == 3).unwrap()]);
        assert_eq!(normal_core(&s3, &a3), a3);

        let s4 = symmetric(4).unwrap();
        let sylow2 =
            crate::structure::all_subgroups(&s4).unwrap().subgroups().iter().find(|h| h.len() == 8).cloned().unwrap();
        // brute force: intersect every conjugate
        let mut core: Vec<usize> = sylow2.elems().to_vec();
        for x in s4.elements() {
            core.retain(|&c| sylow2.contains(s4.conj(s4.inv(x), c)));
        }
        assert_eq!(normal_core(&s4, &sylow2).elems(), core.as_slice());
        assert_eq!(core.len(), 4);
        let v4 = normal_core(&s4, &sylow2);
        assert!(is_normal(&s4, &v4));
        assert!(v4.elems().iter().all(|&x| s4.element_order(x) <= 2));
    }

    #[test]
    fn quotients() {
        let s3 = symmetric(3).unwrap();
        let r = (0..6).find(|&x| s3.element_order(x) == 3).unwrap();
        let a3 = generated_subgroup(&s3, &[r]);
        let (q, pi) = quotient(&s3, &a3).unwrap();
        assert_eq!(q.order(), 2);
        assert!(pi.is_homomorphism(&s3, &q));
        assert_eq!(pi.kernel(), a3);

        let (q, _) = quotient(&s3, &Subgroup::trivial()).unwrap();
        assert!(is_isomorphic(&q, &s3).is_some());

        let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let h = generated_subgroup(&s3, &[t]);
        assert!(matches!(quotient(&s3, &h), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn products() {
        let z2 = cyclic(2).unwrap();
        let z3 = cyclic(3).unwrap();
        let z6 = cyclic(6).unwrap();
        let p = direct_product(&z2, &z3);
        assert!(is_isomorphic(&p, &z6).is_some());

        // Z3 ⋊ Z2 with inversion
        let inv: Vec<usize> = (0..3).map(|x| z3.inv(x)).collect();
        let action = vec![(0..3).collect(), inv];
        let s = semidirect_product(&z3, &z2, &action).unwrap();
        assert!(is_isomorphic(&s, &symmetric(3).unwrap()).is_some());

        let trivial_action = vec![(0..3).collect::<Vec<_>>(); 2];
        let t = semidirect_product(&z3, &z2, &trivial_action).unwrap();
        assert_eq!(t.table_rows(), direct_product(&z3, &z2).table_rows());

        let bad = vec![(0..3).collect(), vec![0, 1, 1]];
        assert!(matches!(semidirect_product(&z3, &z2, &bad), Err(Error::ActionNotAutomorphism { h: 1 })));
        // z3 acting on z3 by inversion is not a homomorphism Z3 -> Aut(Z3)
        let inv3: Vec<usize> = (0..3).map(|x| z3.inv(x)).collect();
        let bad = vec![(0..3).collect(), inv3.clone(), inv3];
        assert!(matches!(semidirect_product(&z3, &z3, &bad), Err(Error::ActionNotHomomorphism { .. })));
    }

    #[test]
    fn isomorphism_basics() {
        let z4 = cyclic(4).unwrap();
        let v4 = elementary_abelian(2, 2).unwrap();
        assert!(is_isomorphic(&z4, &v4).is_none());
        let q8 = dicyclic(2).unwrap();
        let h = is_isomorphic(&q8, &q8).unwrap();
        assert!(h.is_homomorphism(&q8, &q8) && h.is_bijective());
        let z6 = cyclic(6).unwrap();
        let p = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap());
        let h = is_isomorphic(&z6, &p).unwrap();
        assert!(h.is_homomorphism(&z6, &p) && h.is_bijective());
    }

    #[test]
    fn json_round_trip_validates() {
        let s3 = symmetric(3).unwrap();
        let back = FiniteGroup::from_json(&s3.to_json()).unwrap();
        assert_eq!(back, s3);
        let bad = r#"{"name":"x","order":2,"table":[[0,1],[1,1]]}"#;
        assert!(FiniteGroup::from_json(bad).is_err());
    }

    #[test]
    fn subgroup_validation() {
        let s3 = symmetric(3).unwrap();
        assert!(Subgroup::new(&s3, vec![1]).is_err());
        assert!(Subgroup::new(&s3, s3.elements().collect()).is_ok());
    }
}
