//! Finite G-sets, equivariant maps, and the limits and colimits needed by the
//! bispan calculus.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::group::{conj_class_rep, conj_classes, GroupRef, Subgroup};
use crate::{Error, Result};

/// A finite set with an action of a finite group.
///
/// The action is stored row-major: `action[g * size + x] = g . x`.
#[derive(Clone)]
pub struct GSet {
    group: GroupRef,
    size: usize,
    action: Vec<usize>,
}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GSet").field("size", &self.size).field("orbit_types", &self.orbit_types()).finish()
    }
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.size == other.size && self.action == other.action
    }
}
impl Eq for GSet {}

pub(crate) fn same_group(a: &GroupRef, b: &GroupRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// One orbit of a G-set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Points of the orbit in increasing order.
    pub points: Vec<usize>,
    /// Stabilizer of the representative.
    pub stabilizer: Subgroup,
    /// Least point of the orbit.
    pub representative: usize,
}

impl GSet {
    /// Validates an action table given as one row per group element.
    pub fn new(group: &GroupRef, action: &[Vec<usize>]) -> Result<GSet> {
        if action.len() != group.order() {
            return Err(Error::InvalidAction(format!(
                "expected {} rows, found {}",
                group.order(),
                action.len()
            )));
        }
        let size = action.first().map_or(0, |r| r.len());
        let mut flat = Vec::with_capacity(size * group.order());
        for (g, row) in action.iter().enumerate() {
            if row.len() != size {
                return Err(Error::InvalidAction(format!("row {g} has length {}", row.len())));
            }
            let mut seen = vec![false; size];
            for &y in row {
                if y >= size || seen[y] {
                    return Err(Error::InvalidAction(format!("row {g} is not a permutation")));
                }
                seen[y] = true;
            }
            flat.extend_from_slice(row);
        }
        let set = GSet { group: group.clone(), size, action: flat };
        let e = group.identity();
        if (0..size).any(|x| set.act(e, x) != x) {
            return Err(Error::InvalidAction("identity does not act trivially".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                if let Some(x) = (0..size).find(|&x| set.act(gh, x) != set.act(g, set.act(h, x))) {
                    return Err(Error::InvalidAction(format!(
                        "action of {gh} = {g}*{h} disagrees with composite at point {x}"
                    )));
                }
            }
        }
        Ok(set)
    }

    /// Builds a G-set from a closure computing `g . x`.
    pub(crate) fn from_fn(group: &GroupRef, size: usize, mut act: impl FnMut(usize, usize) -> usize) -> GSet {
        let mut action = Vec::with_capacity(size * group.order());
        for g in group.elements() {
            for x in 0..size {
                action.push(act(g, x));
            }
        }
        GSet { group: group.clone(), size, action }
    }

    pub fn empty(group: &GroupRef) -> GSet {
        GSet { group: group.clone(), size: 0, action: Vec::new() }
    }

    /// `n` fixed points.
    pub fn trivial(group: &GroupRef, n: usize) -> GSet {
        Self::from_fn(group, n, |_, x| x)
    }

    pub fn point(group: &GroupRef) -> GSet {
        Self::trivial(group, 1)
    }

    #[inline]
    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.size + x]
    }

    /// The action as nested rows.
    pub fn action_rows(&self) -> Vec<Vec<usize>> {
        if self.size == 0 {
            return vec![Vec::new(); self.group.order()];
        }
        self.action.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    /// Sorted stabilizer of a point.
    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        self.group.elements().filter(|&g| self.act(g, x) == x).collect()
    }

    /// Sorted stabilizer of a point within the given subgroup elements.
    pub(crate) fn stabilizer_in(&self, sub: &[usize], x: usize) -> Vec<usize> {
        sub.iter().copied().filter(|&g| self.act(g, x) == x).collect()
    }

    /// Points fixed by every element of `sub`.
    pub fn fixed_points(&self, sub: &[usize]) -> Vec<usize> {
        (0..self.size).filter(|&x| sub.iter().all(|&g| self.act(g, x) == x)).collect()
    }

    /// Orbit of a point, sorted.
    pub fn orbit_of(&self, x: usize) -> Vec<usize> {
        let mut pts: Vec<usize> = self.group.elements().map(|g| self.act(g, x)).collect();
        pts.sort_unstable();
        pts.dedup();
        pts
    }

    /// Orbit index of every point, plus the orbit count; orbits are numbered
    /// by their least point.
    pub(crate) fn orbit_ids(&self) -> (Vec<usize>, usize) {
        let mut id = vec![usize::MAX; self.size];
        let mut count = 0;
        for x in 0..self.size {
            if id[x] == usize::MAX {
                for g in self.group.elements() {
                    id[self.act(g, x)] = count;
                }
                count += 1;
            }
        }
        (id, count)
    }

    /// Partition into orbits, ordered by least point.
    pub fn orbit_decompose(&self) -> Vec<Orbit> {
        let (id, count) = self.orbit_ids();
        let mut points: Vec<Vec<usize>> = vec![Vec::new(); count];
        for x in 0..self.size {
            points[id[x]].push(x);
        }
        points
            .into_iter()
            .map(|pts| {
                let rep = pts[0];
                Orbit {
                    stabilizer: Subgroup::from_sorted_unchecked(&self.group, self.stabilizer(rep)),
                    representative: rep,
                    points: pts,
                }
            })
            .collect()
    }

    /// Sorted multiset of orbit types (least conjugate of each stabilizer).
    /// Two G-sets are isomorphic iff these agree.
    pub fn orbit_types(&self) -> Vec<Vec<usize>> {
        let (id, count) = self.orbit_ids();
        let mut reps = vec![usize::MAX; count];
        for x in (0..self.size).rev() {
            reps[id[x]] = x;
        }
        let mut types: Vec<Vec<usize>> =
            reps.iter().map(|&r| conj_class_rep(&self.group, &self.stabilizer(r))).collect();
        types.sort();
        types
    }

    pub fn is_transitive(&self) -> bool {
        self.size > 0 && self.orbit_ids().1 == 1
    }
}

/// An equivariant map of G-sets.
#[derive(Clone, PartialEq, Eq)]
pub struct GMap {
    source: GSet,
    target: GSet,
    values: Vec<usize>,
}

impl fmt::Debug for GMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GMap")
            .field("source", &self.source.size)
            .field("target", &self.target.size)
            .field("values", &self.values)
            .finish()
    }
}

impl GMap {
    /// Checks range and equivariance.
    pub fn new(source: &GSet, target: &GSet, values: Vec<usize>) -> Result<GMap> {
        if !same_group(&source.group, &target.group) {
            return Err(Error::GroupMismatch);
        }
        if values.len() != source.size {
            return Err(Error::InvalidMap(format!(
                "expected {} values, found {}",
                source.size,
                values.len()
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v >= target.size) {
            return Err(Error::InvalidMap(format!("value {v} out of range")));
        }
        for g in source.group.elements() {
            for x in 0..source.size {
                if values[source.act(g, x)] != target.act(g, values[x]) {
                    return Err(Error::NotEquivariant { point: x, element: g });
                }
            }
        }
        Ok(GMap { source: source.clone(), target: target.clone(), values })
    }

    pub(crate) fn new_unchecked(source: &GSet, target: &GSet, values: Vec<usize>) -> GMap {
        debug_assert_eq!(values.len(), source.size);
        GMap { source: source.clone(), target: target.clone(), values }
    }

    pub fn identity(x: &GSet) -> GMap {
        GMap { source: x.clone(), target: x.clone(), values: (0..x.size).collect() }
    }

    /// The unique map to the one-point G-set.
    pub fn to_point(x: &GSet) -> GMap {
        GMap { source: x.clone(), target: GSet::point(&x.group), values: vec![0; x.size] }
    }

    /// The unique map out of the empty G-set.
    pub fn from_empty(x: &GSet) -> GMap {
        GMap { source: GSet::empty(&x.group), target: x.clone(), values: Vec::new() }
    }

    pub fn source(&self) -> &GSet {
        &self.source
    }

    pub fn target(&self) -> &GSet {
        &self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    /// `other . self` (first `self`, then `other`).
    pub fn then(&self, other: &GMap) -> Result<GMap> {
        if self.target != other.source {
            return Err(Error::NotComposable);
        }
        Ok(GMap {
            source: self.source.clone(),
            target: other.target.clone(),
            values: self.values.iter().map(|&x| other.values[x]).collect(),
        })
    }

    /// Fibers `f^-1(y)` for every target point, each sorted.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut fib = vec![Vec::new(); self.target.size];
        for (x, &y) in self.values.iter().enumerate() {
            fib[y].push(x);
        }
        fib
    }

    pub fn is_bijective(&self) -> bool {
        self.source.size == self.target.size && {
            let mut seen = vec![false; self.target.size];
            self.values.iter().all(|&y| !core::mem::replace(&mut seen[y], true))
        }
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Option<GMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.target.size];
        for (x, &y) in self.values.iter().enumerate() {
            inv[y] = x;
        }
        Some(GMap { source: self.target.clone(), target: self.source.clone(), values: inv })
    }
}

/// A pullback `P = A x_C B` with its projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub object: GSet,
    pub left: GMap,
    pub right: GMap,
    /// `start[a]` is the index of the first pair with first coordinate `a`.
    start: Vec<usize>,
    /// Position of `b` inside its fiber of `g`.
    pos_right: Vec<usize>,
    right_fiber_len: Vec<usize>,
    f: Vec<usize>,
    g: Vec<usize>,
}

impl Pullback {
    /// Index of the pair `(a, b)`, if `f(a) = g(b)`.
    pub fn index(&self, a: usize, b: usize) -> Option<usize> {
        (self.f[a] == self.g[b]).then(|| self.start[a] + self.pos_right[b])
    }

    /// The map `S -> P` induced by `u: S -> A` and `v: S -> B`.
    pub fn lift(&self, u: &GMap, v: &GMap) -> Result<GMap> {
        if u.source != v.source || u.target != self.left.target || v.target != self.right.target {
            return Err(Error::ShapeError("lift: mismatched maps".into()));
        }
        let mut values = Vec::with_capacity(u.source.size);
        for s in 0..u.source.size {
            let p = self
                .index(u.values[s], v.values[s])
                .ok_or_else(|| Error::ShapeError(format!("lift: square does not commute at {s}")))?;
            values.push(p);
        }
        Ok(GMap::new_unchecked(&u.source, &self.object, values))
    }

    fn fiber_len(&self, a: usize) -> usize {
        self.right_fiber_len[self.f[a]]
    }
}

/// Pullback of `f: A -> C` and `g: B -> C`; points are the pairs `(a, b)`
/// with `f(a) = g(b)` in lexicographic order.
pub fn pullback(f: &GMap, g: &GMap) -> Result<Pullback> {
    if f.target != g.target {
        return Err(Error::TargetMismatch);
    }
    let c = &f.target;
    let mut right_fiber_len = vec![0; c.size];
    let mut pos_right = vec![0; g.source.size];
    for (b, &y) in g.values.iter().enumerate() {
        pos_right[b] = right_fiber_len[y];
        right_fiber_len[y] += 1;
    }
    let mut start = Vec::with_capacity(f.source.size);
    let mut total = 0;
    for &y in &f.values {
        start.push(total);
        total += right_fiber_len[y];
    }
    let fibers_b = g.fibers();
    let mut left = Vec::with_capacity(total);
    let mut right = Vec::with_capacity(total);
    for (a, &y) in f.values.iter().enumerate() {
        for &b in &fibers_b[y] {
            left.push(a);
            right.push(b);
        }
    }
    let group = &f.source.group;
    let mut pb = Pullback {
        object: GSet::empty(group),
        left: GMap::from_empty(&f.source),
        right: GMap::from_empty(&g.source),
        start,
        pos_right,
        right_fiber_len,
        f: f.values.clone(),
        g: g.values.clone(),
    };
    let object = GSet::from_fn(group, total, |h, p| {
        let a = f.source.act(h, left[p]);
        let b = g.source.act(h, right[p]);
        pb.start[a] + pb.pos_right[b]
    });
    debug_assert!((0..f.source.size).all(|a| pb.fiber_len(a) == fibers_b[f.values[a]].len()));
    pb.left = GMap::new_unchecked(&object, &f.source, left);
    pb.right = GMap::new_unchecked(&object, &g.source, right);
    pb.object = object;
    Ok(pb)
}

/// Cartesian product with the diagonal action.
pub fn product(x: &GSet, y: &GSet) -> Result<Pullback> {
    if !same_group(&x.group, &y.group) {
        return Err(Error::GroupMismatch);
    }
    pullback(&GMap::to_point(x), &GMap::to_point(y))
}

/// Disjoint union with its two inclusions.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub object: GSet,
    pub left: GMap,
    pub right: GMap,
}

impl Coproduct {
    /// The map out of the coproduct restricting to `f` and `g`.
    pub fn copair(&self, f: &GMap, g: &GMap) -> Result<GMap> {
        if f.source != self.left.source || g.source != self.right.source || f.target != g.target {
            return Err(Error::ShapeError("copair: mismatched maps".into()));
        }
        let values = f.values.iter().chain(&g.values).copied().collect();
        Ok(GMap::new_unchecked(&self.object, &f.target, values))
    }
}

/// `X ⊔ Y` with the points of `X` first.
pub fn coproduct(x: &GSet, y: &GSet) -> Result<Coproduct> {
    if !same_group(&x.group, &y.group) {
        return Err(Error::GroupMismatch);
    }
    let (m, n) = (x.size, y.size);
    let object = GSet::from_fn(&x.group, m + n, |g, p| if p < m { x.act(g, p) } else { m + y.act(g, p - m) });
    Ok(Coproduct {
        left: GMap::new_unchecked(x, &object, (0..m).collect()),
        right: GMap::new_unchecked(y, &object, (m..m + n).collect()),
        object,
    })
}

/// Disjoint union of many G-sets; returns the union and the offset of each
/// summand.
pub fn coproduct_all(group: &GroupRef, parts: &[GSet]) -> (GSet, Vec<usize>) {
    let mut offsets = Vec::with_capacity(parts.len());
    let mut owner = Vec::new();
    let mut total = 0;
    for (k, p) in parts.iter().enumerate() {
        offsets.push(total);
        owner.extend(core::iter::repeat_n(k, p.size));
        total += p.size;
    }
    let set = GSet::from_fn(group, total, |g, x| {
        let k = owner[x];
        offsets[k] + parts[k].act(g, x - offsets[k])
    });
    (set, offsets)
}

/// The coset space `G/H` together with its coset bookkeeping.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    pub set: GSet,
    /// `coset_of[g]` is the point `gH`.
    pub coset_of: Vec<usize>,
    /// `reps[p]` is the least-found element of coset `p`; `reps[0]` is the identity.
    pub reps: Vec<usize>,
}

/// `G/H` with the coset of the identity as point 0.
pub fn coset_space(group: &GroupRef, sub: &[usize]) -> CosetSpace {
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let order = core::iter::once(group.identity()).chain(group.elements().filter(|&g| g != group.identity()));
    for g in order {
        if coset_of[g] == usize::MAX {
            let p = reps.len();
            reps.push(g);
            for &h in sub {
                coset_of[group.mul(g, h)] = p;
            }
        }
    }
    let set = GSet::from_fn(group, reps.len(), |g, p| coset_of[group.mul(g, reps[p])]);
    CosetSpace { set, coset_of, reps }
}

/// The orbit `G/H`.
pub fn make_orbit(group: &GroupRef, h: &Subgroup) -> Result<GSet> {
    if !same_group(group, h.group()) {
        return Err(Error::NotSubgroup("subgroup of a different group".into()));
    }
    Ok(coset_space(group, h.elements()).set)
}

/// Restriction of a G-set to a subgroup `H`; the result is a G-set over
/// `H.to_group()` with element `k` acting as `H.elements()[k]`.
pub fn restrict(h: &Subgroup, x: &GSet) -> Result<GSet> {
    if !same_group(h.group(), &x.group) {
        return Err(Error::NotSubgroup("subgroup of a different group".into()));
    }
    let hg: GroupRef = Arc::new(h.to_group());
    Ok(GSet::from_fn(&hg, x.size, |k, p| x.act(h.elements()[k], p)))
}

/// Restriction of an equivariant map to a subgroup.
pub fn restrict_map(h: &Subgroup, f: &GMap) -> Result<GMap> {
    let s = restrict(h, &f.source)?;
    let hg = s.group.clone();
    let t = GSet::from_fn(&hg, f.target.size, |k, p| f.target.act(h.elements()[k], p));
    Ok(GMap::new_unchecked(&s, &t, f.values.clone()))
}

/// Induction `G x_H X` for an `H`-set `X` (over `H.to_group()`).
///
/// Point `c * |X| + x` is the class `[r_c, x]` where `r_c` is the
/// representative of the `c`-th left coset of `H`.
#[derive(Clone, Debug)]
pub struct Induced {
    pub object: GSet,
    pub cosets: CosetSpace,
    pub base_size: usize,
}

impl Induced {
    /// Index of the class `[g, x]` for an arbitrary `g`.
    pub fn class_of(&self, h: &Subgroup, g: usize, x: &GSet, p: usize) -> usize {
        let group = h.group();
        let c = self.cosets.coset_of[g];
        // g = r_c k with k in H, and [r_c k, p] = [r_c, k p]
        let k = group.mul(group.inv(self.cosets.reps[c]), g);
        let kpos = h.position(k).expect("coset representative");
        c * self.base_size + x.act(kpos, p)
    }
}

pub fn induce(group: &GroupRef, h: &Subgroup, x: &GSet) -> Result<Induced> {
    if !same_group(group, h.group()) || x.group.order() != h.order() {
        return Err(Error::NotSubgroup("induction data does not match".into()));
    }
    let cosets = coset_space(group, h.elements());
    let n = x.size;
    let idx = cosets.set.size;
    let mut ind = Induced { object: GSet::empty(group), cosets, base_size: n };
    let object = GSet::from_fn(group, idx * n, |g, q| {
        let (c, p) = (q / n, q % n);
        let gr = group.mul(g, ind.cosets.reps[c]);
        ind.class_of(h, gr, x, p)
    });
    ind.object = object;
    Ok(ind)
}

/// `G x_H f` for an `H`-map `f`.
pub fn induce_map(group: &GroupRef, h: &Subgroup, f: &GMap) -> Result<(Induced, Induced, GMap)> {
    let s = induce(group, h, &f.source)?;
    let t = induce(group, h, &f.target)?;
    let (ns, nt) = (f.source.size, f.target.size);
    let values = (0..s.object.size).map(|q| (q / ns) * nt + f.values[q % ns]).collect();
    let map = GMap::new_unchecked(&s.object, &t.object, values);
    Ok((s, t, map))
}

/// An equivariant isomorphism, if one exists.
pub fn gset_iso(x: &GSet, y: &GSet) -> Option<GMap> {
    if !same_group(&x.group, &y.group) || x.size != y.size || x.orbit_types() != y.orbit_types() {
        return None;
    }
    let group = &x.group;
    let ox = x.orbit_decompose();
    let oy = y.orbit_decompose();
    let mut used = vec![false; oy.len()];
    let mut values = vec![usize::MAX; x.size];
    for o in &ox {
        let k = o.stabilizer.elements();
        let ty = conj_class_rep(group, k);
        let (j, target_point) = oy.iter().enumerate().find_map(|(j, q)| {
            if used[j] || conj_class_rep(group, q.stabilizer.elements()) != ty {
                return None;
            }
            // a point of q whose stabilizer is exactly k
            q.points.iter().find(|&&p| y.stabilizer(p) == k).map(|&p| (j, p))
        })?;
        used[j] = true;
        for g in group.elements() {
            values[x.act(g, o.representative)] = y.act(g, target_point);
        }
    }
    GMap::new(x, y, values).ok()
}

/// All equivariant maps `X -> Y`, ordered by the images of orbit
/// representatives.
pub fn equivariant_maps(x: &GSet, y: &GSet, cap: usize) -> Result<Vec<GMap>> {
    if !same_group(&x.group, &y.group) {
        return Err(Error::GroupMismatch);
    }
    let orbits = x.orbit_decompose();
    let choices: Vec<Vec<usize>> = orbits.iter().map(|o| y.fixed_points(o.stabilizer.elements())).collect();
    let total = choices.iter().fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    if total > cap as u128 {
        return Err(Error::ResourceBound { what: "equivariant maps", needed: total, cap });
    }
    let mut out = Vec::with_capacity(total as usize);
    if total == 0 {
        return Ok(out);
    }
    let mut pick = vec![0usize; orbits.len()];
    loop {
        let mut values = vec![0; x.size];
        for (o, (&k, ch)) in orbits.iter().zip(pick.iter().zip(&choices)) {
            for g in x.group.elements() {
                values[x.act(g, o.representative)] = y.act(g, ch[k]);
            }
        }
        out.push(GMap::new_unchecked(x, y, values));
        let mut pos = orbits.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            pick[pos] += 1;
            if pick[pos] < choices[pos].len() {
                break;
            }
            pick[pos] = 0;
        }
    }
}

/// Representatives of all isomorphism classes of G-sets with at most `k`
/// points, ordered by size and then by orbit-type multiset.
pub fn gsets_up_to(group: &GroupRef, k: usize) -> Vec<GSet> {
    let classes = conj_classes(group);
    let orbits: Vec<GSet> = classes
        .iter()
        .map(|c| coset_space(group, c.representative.elements()).set)
        .collect();
    let mut out: BTreeMap<(usize, Vec<usize>), GSet> = BTreeMap::new();
    let mut counts = vec![0usize; orbits.len()];
    fn rec(
        group: &GroupRef,
        orbits: &[GSet],
        idx: usize,
        room: usize,
        counts: &mut Vec<usize>,
        out: &mut BTreeMap<(usize, Vec<usize>), GSet>,
    ) {
        if idx == orbits.len() {
            let parts: Vec<GSet> = counts
                .iter()
                .zip(orbits)
                .flat_map(|(&c, o)| core::iter::repeat_n(o.clone(), c))
                .collect();
            let (set, _) = coproduct_all(group, &parts);
            out.insert((set.size(), counts.clone()), set);
            return;
        }
        let s = orbits[idx].size();
        let mut c = 0;
        loop {
            counts[idx] = c;
            rec(group, orbits, idx + 1, room - c * s, counts, out);
            if (c + 1) * s > room {
                break;
            }
            c += 1;
        }
        counts[idx] = 0;
    }
    rec(group, &orbits, 0, k, &mut counts, &mut out);
    out.into_values().collect()
}

/// Shorthand used by tests and builders: `⊔ G/K_i`.
pub fn from_orbits(group: &GroupRef, subgroups: &[Vec<usize>]) -> Result<GSet> {
    let mut parts = Vec::new();
    for s in subgroups {
        let sub = Subgroup::new(group, s)?;
        parts.push(coset_space(group, sub.elements()).set);
    }
    Ok(coproduct_all(group, &parts).0)
}
