//! Finite groups presented by multiplication tables.
//!
//! Elements are indices `0..order`. Subgroups are sorted element lists and
//! compare lexicographically, which fixes every downstream ordering.
//!
//! Symmetric groups are materialized with permutations indexed by their
//! Lehmer-code rank: index `k` is the `k`-th permutation of `0..n` in
//! lexicographic order of image tuples. Products compose as functions,
//! `(s * t)(i) = s(t(i))`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::{Error, Limits, Result};

/// Shared handle to a group; G-sets and subgroups keep one of these.
pub type GroupRef = Arc<FiniteGroup>;

/// A finite group as a validated multiplication table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("order", &self.order).finish()
    }
}

/// Validates a raw multiplication table and returns the group it defines.
pub fn validate_group(table: &[Vec<usize>]) -> Result<FiniteGroup> {
    let n = table.len();
    if n == 0 || table.iter().any(|row| row.len() != n) {
        return Err(if n == 0 { Error::NoIdentity } else { Error::NotSquare });
    }
    for (row, entries) in table.iter().enumerate() {
        for (col, &value) in entries.iter().enumerate() {
            if value >= n {
                return Err(Error::IndexOutOfRange { row, col, value });
            }
        }
    }
    let mult: Vec<usize> = table.iter().flatten().copied().collect();
    let at = |a: usize, b: usize| mult[a * n + b];
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
        .ok_or(Error::NoIdentity)?;
    let mut inverse = vec![0; n];
    for a in 0..n {
        inverse[a] = (0..n)
            .find(|&b| at(a, b) == identity && at(b, a) == identity)
            .ok_or(Error::NoInverse(a))?;
    }
    for a in 0..n {
        for b in 0..n {
            let ab = at(a, b);
            for c in 0..n {
                if at(ab, c) != at(a, at(b, c)) {
                    return Err(Error::NotAssociative(a, b, c));
                }
            }
        }
    }
    Ok(FiniteGroup { order: n, mult, identity, inverse })
}

impl FiniteGroup {
    /// Builds a group from a table that is known to be valid.
    fn from_trusted(order: usize, mult: Vec<usize>) -> FiniteGroup {
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mult[e * order + x] == x))
            .expect("trusted table has an identity");
        let inverse = (0..order)
            .map(|a| (0..order).find(|&b| mult[a * order + b] == identity).unwrap())
            .collect();
        FiniteGroup { order, mult, identity, inverse }
    }

    pub fn trivial() -> FiniteGroup {
        Self::cyclic(1)
    }

    /// `C_n` with element `k` standing for the generator to the `k`-th power.
    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n > 0);
        let mult = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self::from_trusted(n, mult)
    }

    /// Dihedral group of order `2n`: elements `r^k` are `k`, `s r^k` are `n + k`.
    pub fn dihedral(n: usize) -> FiniteGroup {
        assert!(n > 0);
        let order = 2 * n;
        let decode = |x: usize| (x / n, x % n);
        let mut mult = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                let (sa, ka) = decode(a);
                let (sb, kb) = decode(b);
                // s^sa r^ka s^sb r^kb = s^(sa+sb) r^(±ka + kb)
                let k = if sb == 1 { (n - ka + kb) % n } else { (ka + kb) % n };
                mult[a * order + b] = ((sa + sb) % 2) * n + k;
            }
        }
        Self::from_trusted(order, mult)
    }

    /// Direct product with element `(a, b)` at index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (m, n) = (self.order, other.order);
        let order = m * n;
        let mut mult = vec![0; order * order];
        for x in 0..order {
            for y in 0..order {
                let a = self.mul(x / n, y / n);
                let b = other.mul(x % n, y % n);
                mult[x * order + y] = a * n + b;
            }
        }
        Self::from_trusted(order, mult)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g a g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order
    }

    /// The table as nested rows, as accepted by [`validate_group`].
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mult.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// Order of a single element.
    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Closure of a set of elements under multiplication (finite, so this is
    /// the generated subgroup). Returned sorted.
    pub fn closure(&self, generators: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        let mut out = vec![self.identity];
        while let Some(x) = queue.pop_front() {
            for &g in generators {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// A subgroup, stored as its strictly sorted element list.
#[derive(Clone)]
pub struct Subgroup {
    group: GroupRef,
    elements: Vec<usize>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Subgroup").field(&self.elements).finish()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}
impl Eq for Subgroup {}
impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements.cmp(&other.elements)
    }
}

impl Subgroup {
    /// Checks closure and returns the subgroup; `elements` need not be sorted.
    pub fn new(group: &GroupRef, elements: &[usize]) -> Result<Subgroup> {
        let mut els: Vec<usize> = elements.to_vec();
        els.sort_unstable();
        els.dedup();
        if els.iter().any(|&e| e >= group.order()) {
            return Err(Error::NotSubgroup(format!("element out of range in {:?}", els)));
        }
        if els.binary_search(&group.identity()).is_err() {
            return Err(Error::NotSubgroup(format!("{:?} lacks the identity", els)));
        }
        for &a in &els {
            if els.binary_search(&group.inv(a)).is_err() {
                return Err(Error::NotSubgroup(format!("{:?} not closed under inverse", els)));
            }
            for &b in &els {
                if els.binary_search(&group.mul(a, b)).is_err() {
                    return Err(Error::NotSubgroup(format!("{:?} not closed under product", els)));
                }
            }
        }
        Ok(Subgroup { group: group.clone(), elements: els })
    }

    pub(crate) fn from_sorted_unchecked(group: &GroupRef, elements: Vec<usize>) -> Subgroup {
        Subgroup { group: group.clone(), elements }
    }

    pub fn trivial(group: &GroupRef) -> Subgroup {
        Subgroup { group: group.clone(), elements: vec![group.identity()] }
    }

    pub fn full(group: &GroupRef) -> Subgroup {
        Subgroup { group: group.clone(), elements: group.elements().collect() }
    }

    pub fn generated_by(group: &GroupRef, generators: &[usize]) -> Subgroup {
        Subgroup { group: group.clone(), elements: group.closure(generators) }
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.group.order() / self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    /// Position of `g` in the sorted element list.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    /// `g H g^-1`.
    pub fn conjugate(&self, g: usize) -> Subgroup {
        let mut els: Vec<usize> = self.elements.iter().map(|&h| self.group.conj(g, h)).collect();
        els.sort_unstable();
        Subgroup { group: self.group.clone(), elements: els }
    }

    /// The subgroup as an abstract group; element `k` is `elements()[k]`.
    pub fn to_group(&self) -> FiniteGroup {
        let n = self.elements.len();
        let mut mult = vec![0; n * n];
        for (i, &a) in self.elements.iter().enumerate() {
            for (j, &b) in self.elements.iter().enumerate() {
                mult[i * n + j] = self.position(self.group.mul(a, b)).expect("closed");
            }
        }
        FiniteGroup::from_trusted(n, mult)
    }

    /// A small generating set, chosen greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.group.identity()];
        for &h in &self.elements {
            if span.binary_search(&h).is_err() {
                gens.push(h);
                span = self.group.closure(&gens);
            }
        }
        gens
    }
}

/// Conjugacy class of subgroups with its least member as representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupConjClass {
    pub representative: Subgroup,
    pub members: Vec<Subgroup>,
}

/// All subgroups, sorted, generated by adjoining single elements to known
/// subgroups until no new subgroup appears.
pub fn all_subgroups(group: &GroupRef) -> Vec<Subgroup> {
    let trivial = group.closure(&[]);
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    found.insert(trivial.clone());
    let mut queue = VecDeque::from([trivial]);
    while let Some(sub) = queue.pop_front() {
        for g in group.elements() {
            if sub.binary_search(&g).is_ok() {
                continue;
            }
            let mut gens = sub.clone();
            gens.push(g);
            let next = group.closure(&gens);
            if found.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    found.into_iter().map(|els| Subgroup::from_sorted_unchecked(group, els)).collect()
}

/// Partition of [`all_subgroups`] into conjugacy classes, ordered by
/// representative.
pub fn conj_classes(group: &GroupRef) -> Vec<SubgroupConjClass> {
    let subs = all_subgroups(group);
    let mut assigned: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut classes = Vec::new();
    for s in &subs {
        if assigned.contains(&s.elements) {
            continue;
        }
        let members: BTreeSet<Subgroup> = group.elements().map(|g| s.conjugate(g)).collect();
        let members: Vec<Subgroup> = members.into_iter().collect();
        for m in &members {
            assigned.insert(m.elements.clone());
        }
        classes.push(SubgroupConjClass { representative: members[0].clone(), members });
    }
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    classes
}

/// Least conjugate of a subgroup given by its sorted element list.
pub fn conj_class_rep(group: &FiniteGroup, elements: &[usize]) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for g in group.elements() {
        let mut c: Vec<usize> = elements.iter().map(|&h| group.conj(g, h)).collect();
        c.sort_unstable();
        if best.as_ref().is_none_or(|b| c < *b) {
            best = Some(c);
        }
    }
    best.unwrap_or_default()
}

/// `S_n` with Lehmer-code indexing.
#[derive(Clone, Debug)]
pub struct SymmetricGroup {
    degree: usize,
    group: GroupRef,
    perms: Vec<Vec<usize>>,
}

fn lex_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next permutation in lexicographic order
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

/// Lexicographic rank of a permutation of `0..n`.
pub fn lehmer_rank(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = perm[i + 1..].iter().filter(|&&x| x < perm[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

impl SymmetricGroup {
    pub fn new(degree: usize) -> SymmetricGroup {
        let perms = lex_permutations(degree);
        let order = perms.len();
        let mut mult = vec![0; order * order];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                let comp: Vec<usize> = (0..degree).map(|i| pa[pb[i]]).collect();
                mult[a * order + b] = lehmer_rank(&comp);
            }
        }
        let group = Arc::new(FiniteGroup::from_trusted(order, mult));
        SymmetricGroup { degree, group, perms }
    }

    pub fn with_limits(degree: usize, limits: &Limits) -> Result<SymmetricGroup> {
        if degree > limits.sym_degree_cap {
            let needed = (1..=degree as u128).product();
            return Err(Error::ResourceBound {
                what: "symmetric group order",
                needed,
                cap: (1..=limits.sym_degree_cap).product(),
            });
        }
        Ok(Self::new(degree))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    /// Permutation (image tuple) of the element with the given index.
    pub fn perm(&self, index: usize) -> &[usize] {
        &self.perms[index]
    }

    pub fn index_of(&self, perm: &[usize]) -> usize {
        lehmer_rank(perm)
    }
}

/// A homomorphism from a subgroup into a symmetric group.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub source: Subgroup,
    pub target: Arc<SymmetricGroup>,
    /// Image of `source.elements()[k]` at position `k`.
    pub values: Vec<usize>,
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target.degree() == other.target.degree()
            && self.values == other.values
    }
}
impl Eq for GroupHom {}

impl GroupHom {
    /// Image of a parent-group element that lies in the source subgroup.
    pub fn image(&self, g: usize) -> usize {
        self.values[self.source.position(g).expect("element of the source subgroup")]
    }

    pub fn image_perm(&self, g: usize) -> &[usize] {
        self.target.perm(self.image(g))
    }

    /// Exhaustive check of `f(ab) = f(a) f(b)` and `f(e) = e`.
    pub fn is_homomorphism(&self) -> bool {
        let g = self.source.group();
        let s = self.target.group();
        if self.image(g.identity()) != s.identity() {
            return false;
        }
        self.source.elements().iter().all(|&a| {
            self.source
                .elements()
                .iter()
                .all(|&b| self.image(g.mul(a, b)) == s.mul(self.image(a), self.image(b)))
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == self.target.group().identity())
    }
}

/// All homomorphisms `H -> S_n`, ordered by the images of the greedy
/// generators of `H`.
pub fn homs_to_sym(h: &Subgroup, n: usize, limits: &Limits) -> Result<Vec<GroupHom>> {
    let sym = Arc::new(SymmetricGroup::with_limits(n, limits)?);
    Ok(homs_to(h, &sym))
}

pub(crate) fn homs_to(h: &Subgroup, sym: &Arc<SymmetricGroup>) -> Vec<GroupHom> {
    let g = h.group().clone();
    let s = sym.group().clone();
    let gens = h.generators();
    let k = gens.len();
    let mut out = Vec::new();
    let mut choice = vec![0usize; k];
    loop {
        if let Some(values) = extend_hom(&g, h, &s, &gens, &choice) {
            out.push(GroupHom { source: h.clone(), target: sym.clone(), values });
        }
        // odometer over generator images
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < s.order() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

fn extend_hom(
    g: &FiniteGroup,
    h: &Subgroup,
    s: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut value: BTreeMap<usize, usize> = BTreeMap::new();
    value.insert(g.identity(), s.identity());
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        let vx = value[&x];
        for (&gen, &img) in gens.iter().zip(images) {
            let y = g.mul(x, gen);
            let vy = s.mul(vx, img);
            match value.get(&y) {
                Some(&prev) if prev != vy => return None,
                Some(_) => {}
                None => {
                    value.insert(y, vy);
                    queue.push_back(y);
                }
            }
        }
    }
    Some(h.elements().iter().map(|e| value[e]).collect())
}
