//! Mackey functors presented on the orbit category.
//!
//! A [`MackeyTable`] has one level per conjugacy class of subgroups, with
//! level `s` standing for the orbit `G/K_s` (`K_s` the class representative).
//! Every equivariant map `G/K_s -> G/K_t` is an [`Arrow`], determined by the
//! image of the identity coset. Each arrow carries a restriction matrix
//! (`rank_s x rank_t`) and a transfer matrix (`rank_t x rank_s`) acting on
//! column vectors of basis coefficients. Arrows from a level to itself are the
//! Weyl group conjugations.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::group::{conj_classes, GroupRef, Subgroup};
use crate::gset::{coset_space, pullback, CosetSpace, GMap, GSet};
use crate::matrix::IntMatrix;
use crate::{Error, Result};

/// One orbit level `G/K`.
#[derive(Clone, Debug)]
pub struct Level {
    pub subgroup: Subgroup,
    pub labels: Vec<String>,
}

impl Level {
    pub fn rank(&self) -> usize {
        self.labels.len()
    }
}

/// A map of orbits `G/K_s -> G/K_t` with its structure matrices.
#[derive(Clone, Debug)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    /// Point of `G/K_t` hit by the identity coset of `G/K_s`.
    pub image: usize,
    pub restriction: IntMatrix,
    pub transfer: IntMatrix,
}

/// A (semi-)Mackey functor with free levels.
#[derive(Clone, Debug)]
pub struct MackeyTable {
    group: GroupRef,
    levels: Vec<Level>,
    cosets: Vec<CosetSpace>,
    arrows: Vec<Arrow>,
    index: BTreeMap<(usize, usize, usize), usize>,
    complete: bool,
}

/// A levelwise map of tables, one matrix (`rank_target x rank_source`) per level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MackeyTableMap {
    pub levels: Vec<IntMatrix>,
}

/// Failures found by a checker; empty means every check passed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }
}

/// The data a table is built from: a basis at each orbit and the action of
/// restriction and transfer on basis elements.
pub trait LevelData {
    type Key: Ord + Clone;
    fn basis(&self, orbit: &GSet) -> Result<Vec<Self::Key>>;
    /// Restriction of a target basis element along `f`, as a combination of
    /// source basis elements.
    fn restrict(&self, f: &GMap, key: &Self::Key) -> Result<Vec<(Self::Key, i64)>>;
    /// Transfer of a source basis element along `f`.
    fn transfer(&self, f: &GMap, key: &Self::Key) -> Result<Vec<(Self::Key, i64)>>;
    fn label(&self, key: &Self::Key) -> String;
}

/// Representative orbits `G/K` for every class of subgroups, in class order.
pub fn orbit_levels(group: &GroupRef) -> Vec<(Subgroup, CosetSpace)> {
    conj_classes(group)
        .into_iter()
        .map(|c| {
            let cs = coset_space(group, c.representative.elements());
            (c.representative, cs)
        })
        .collect()
}

impl MackeyTable {
    /// Builds the table of `data` on all orbit levels and all orbit maps.
    pub fn build<D: LevelData>(group: &GroupRef, data: &D, complete: bool) -> Result<MackeyTable> {
        let levels_raw = orbit_levels(group);
        let mut bases = Vec::with_capacity(levels_raw.len());
        let mut positions: Vec<BTreeMap<D::Key, usize>> = Vec::new();
        for (_, cs) in &levels_raw {
            let b = data.basis(&cs.set)?;
            positions.push(b.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect());
            bases.push(b);
        }
        let mut arrows = Vec::new();
        let mut index = BTreeMap::new();
        for (s, (ks, cs_s)) in levels_raw.iter().enumerate() {
            for (t, (_, cs_t)) in levels_raw.iter().enumerate() {
                for y in cs_t.set.fixed_points(ks.elements()) {
                    let f = orbit_map(cs_s, cs_t, y);
                    let (rs, rt) = (bases[s].len(), bases[t].len());
                    let mut restriction = IntMatrix::zeros(rs, rt);
                    for (j, key) in bases[t].iter().enumerate() {
                        for (k, n) in data.restrict(&f, key)? {
                            let i = *positions[s].get(&k).ok_or_else(|| missing(&data.label(&k)))?;
                            restriction.add_to(i, j, n);
                        }
                    }
                    let mut transfer = IntMatrix::zeros(rt, rs);
                    for (j, key) in bases[s].iter().enumerate() {
                        for (k, n) in data.transfer(&f, key)? {
                            let i = *positions[t].get(&k).ok_or_else(|| missing(&data.label(&k)))?;
                            transfer.add_to(i, j, n);
                        }
                    }
                    index.insert((s, t, y), arrows.len());
                    arrows.push(Arrow { source: s, target: t, image: y, restriction, transfer });
                }
            }
        }
        let levels = levels_raw
            .iter()
            .zip(&bases)
            .map(|((k, _), b)| Level { subgroup: k.clone(), labels: b.iter().map(|x| data.label(x)).collect() })
            .collect();
        let cosets = levels_raw.into_iter().map(|(_, c)| c).collect();
        Ok(MackeyTable { group: group.clone(), levels, cosets, arrows, index, complete })
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }
    pub fn levels(&self) -> &[Level] {
        &self.levels
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
    pub fn ranks(&self) -> Vec<usize> {
        self.levels.iter().map(Level::rank).collect()
    }
    pub fn is_complete(&self) -> bool {
        self.complete
    }
    /// The orbit `G/K_s` of a level.
    pub fn orbit(&self, s: usize) -> &CosetSpace {
        &self.cosets[s]
    }

    pub fn arrow(&self, source: usize, target: usize, image: usize) -> Option<&Arrow> {
        self.index.get(&(source, target, image)).map(|&i| &self.arrows[i])
    }

    pub fn arrow_mut(&mut self, source: usize, target: usize, image: usize) -> Option<&mut Arrow> {
        self.index.get(&(source, target, image)).map(|&i| &mut self.arrows[i])
    }

    /// The orbit map underlying an arrow.
    pub fn arrow_map(&self, arrow: &Arrow) -> GMap {
        orbit_map(&self.cosets[arrow.source], &self.cosets[arrow.target], arrow.image)
    }

    /// Level of an orbit: the class of its point stabilizers.
    pub fn level_of(&self, stabilizer: &[usize]) -> Option<usize> {
        let rep = crate::group::conj_class_rep(&self.group, stabilizer);
        self.levels.iter().position(|l| l.subgroup.elements() == rep.as_slice())
    }
}

fn missing(label: &str) -> Error {
    Error::IsoNotFound(format!("basis element {label} missing from its level"))
}

/// The map `G/K_s -> G/K_t` sending the identity coset to `y`.
pub(crate) fn orbit_map(s: &CosetSpace, t: &CosetSpace, y: usize) -> GMap {
    let values = s.reps.iter().map(|&g| t.set.act(g, y)).collect();
    GMap::new_unchecked(&s.set, &t.set, values)
}

/// Isomorphism class of a span `X <-c- V -a-> T` with `V` an orbit: the
/// least `(Stab(v), c(v), a(v))` over the points `v` of `V`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpanCode {
    pub stabilizer: Vec<usize>,
    pub base: usize,
    pub point: usize,
}

/// Orbit codes of a span `X <-c- V -a-> T`, sorted.
pub fn span_codes(v: &GSet, c: &[usize], a: &[usize]) -> Vec<SpanCode> {
    let mut out: Vec<SpanCode> = v
        .orbit_decompose()
        .iter()
        .map(|o| {
            o.points
                .iter()
                .map(|&p| SpanCode { stabilizer: v.stabilizer(p), base: c[p], point: a[p] })
                .min()
                .expect("nonempty orbit")
        })
        .collect();
    out.sort_unstable();
    out
}

/// Realizes a span code as `(V, c, a)` with `V = G/K`.
pub fn realize_span(code: &SpanCode, x: &GSet, t: &GSet) -> (GSet, Vec<usize>, Vec<usize>) {
    let cs = coset_space(x.group(), &code.stabilizer);
    let c = cs.reps.iter().map(|&g| x.act(g, code.base)).collect();
    let a = cs.reps.iter().map(|&g| t.act(g, code.point)).collect();
    (cs.set, c, a)
}

/// The represented functor `[-, T]` computed with spans.
pub struct Represented {
    pub t: GSet,
}

impl LevelData for Represented {
    type Key = SpanCode;

    fn basis(&self, orbit: &GSet) -> Result<Vec<SpanCode>> {
        // V = G/K with K fixing a point (x, t) of X x T
        let mut out = Vec::new();
        for k in crate::group::all_subgroups(orbit.group()) {
            let ke = k.elements();
            for x in orbit.fixed_points(ke) {
                for t in self.t.fixed_points(ke) {
                    let code = SpanCode { stabilizer: ke.to_vec(), base: x, point: t };
                    let (v, c, a) = realize_span(&code, orbit, &self.t);
                    out.extend(span_codes(&v, &c, &a));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    fn restrict(&self, f: &GMap, key: &SpanCode) -> Result<Vec<(SpanCode, i64)>> {
        let (v, c, a) = realize_span(key, f.target(), &self.t);
        let cm = GMap::new_unchecked(&v, f.target(), c);
        let pb = pullback(&cm, f)?;
        let na: Vec<usize> = pb.left.values().iter().map(|&q| a[q]).collect();
        Ok(counted(span_codes(&pb.object, pb.right.values(), &na)))
    }

    fn transfer(&self, f: &GMap, key: &SpanCode) -> Result<Vec<(SpanCode, i64)>> {
        let (v, c, a) = realize_span(key, f.source(), &self.t);
        let nc: Vec<usize> = c.iter().map(|&q| f.apply(q)).collect();
        Ok(counted(span_codes(&v, &nc, &a)))
    }

    fn label(&self, key: &SpanCode) -> String {
        format!("[K={:?} x={} t={}]", key.stabilizer, key.base, key.point)
    }
}

fn counted<K: Ord>(keys: Vec<K>) -> Vec<(K, i64)> {
    keys.into_iter().map(|k| (k, 1)).collect()
}

/// The Burnside functor: spans to a point.
pub fn burnside_table(group: &GroupRef) -> MackeyTable {
    represented_table(&GSet::point(group))
}

/// The semi-Mackey functor represented by `T`.
pub fn represented_table(t: &GSet) -> MackeyTable {
    MackeyTable::build(t.group(), &Represented { t: t.clone() }, false).expect("span bases are closed")
}

/// Levelwise group completion: same bases and matrices, integer coefficients.
pub fn completion(table: &MackeyTable) -> MackeyTable {
    let mut out = table.clone();
    out.complete = true;
    out
}

/// Checks functoriality, the Weyl actions, the double coset relation and,
/// for semi tables, nonnegativity.
pub fn check_mackey_axioms(table: &MackeyTable) -> Report {
    let mut rep = Report::default();
    for arrow in &table.arrows {
        let (s, t) = (arrow.source, arrow.target);
        rep.check(
            arrow.restriction.rows() == table.levels[s].rank() && arrow.restriction.cols() == table.levels[t].rank(),
            || format!("restriction along {s}->{t}@{} has the wrong shape", arrow.image),
        );
        if !table.complete {
            rep.check(arrow.restriction.is_nonnegative() && arrow.transfer.is_nonnegative(), || {
                format!("negative entry on arrow {s}->{t}@{} of a semi table", arrow.image)
            });
        }
        if s == t {
            let pr = arrow.restriction.as_permutation();
            let pt = arrow.transfer.as_permutation();
            let inverse = match (&pr, &pt) {
                (Some(a), Some(b)) => (0..a.len()).all(|i| b[a[i]] == i),
                _ => false,
            };
            rep.check(inverse, || format!("conjugation {s}@{} is not a permutation pair", arrow.image));
        }
    }
    // identities and composites
    for (s, cs) in table.cosets.iter().enumerate() {
        let id = table.arrow(s, s, 0).expect("identity arrow");
        let n = table.levels[s].rank();
        rep.check(id.restriction == IntMatrix::identity(n) && id.transfer == IntMatrix::identity(n), || {
            format!("identity arrow on level {s} acts nontrivially")
        });
        let _ = cs;
    }
    for f in &table.arrows {
        let hf = table.cosets[f.target].reps[f.image];
        for g in table.arrows.iter().filter(|g| g.source == f.target) {
            let y = table.cosets[g.target].set.act(hf, g.image);
            let Some(gf) = table.arrow(f.source, g.target, y) else {
                rep.check(false, || format!("composite {}->{}@{y} missing", f.source, g.target));
                continue;
            };
            let r = f.restriction.mul(&g.restriction).expect("shapes");
            let t = g.transfer.mul(&f.transfer).expect("shapes");
            rep.check(r == gf.restriction, || {
                format!("restriction not functorial: {}->{}@{} then {}->{}@{}", f.source, f.target, f.image, g.source, g.target, g.image)
            });
            rep.check(t == gf.transfer, || {
                format!("transfer not functorial: {}->{}@{} then {}->{}@{}", f.source, f.target, f.image, g.source, g.target, g.image)
            });
        }
    }
    // double coset formula: r_g t_f = sum over orbits of the pullback
    for f in &table.arrows {
        for g in table.arrows.iter().filter(|g| g.target == f.target) {
            let fm = table.arrow_map(f);
            let gm = table.arrow_map(g);
            let pb = pullback(&fm, &gm).expect("common target");
            let lhs = g.restriction.mul(&f.transfer).expect("shapes");
            let mut rhs = IntMatrix::zeros(lhs.rows(), lhs.cols());
            let mut ok = true;
            for orbit in pb.object.orbit_decompose() {
                let Some(w) = table.level_of(orbit.stabilizer.elements()) else {
                    ok = false;
                    break;
                };
                let kw = table.levels[w].subgroup.elements();
                let q = *orbit
                    .points
                    .iter()
                    .find(|&&q| pb.object.stabilizer(q) == kw)
                    .expect("some point has the representative stabilizer");
                let p1 = table.arrow(w, f.source, pb.left.apply(q));
                let p2 = table.arrow(w, g.source, pb.right.apply(q));
                let (Some(p1), Some(p2)) = (p1, p2) else {
                    ok = false;
                    break;
                };
                let term = p2.transfer.mul(&p1.restriction).expect("shapes");
                for i in 0..rhs.rows() {
                    for j in 0..rhs.cols() {
                        rhs.add_to(i, j, term.get(i, j));
                    }
                }
            }
            rep.check(ok && lhs == rhs, || {
                format!(
                    "pullback relation fails for the square over {}@{} and {}@{} into level {}",
                    f.source, f.image, g.source, g.image, f.target
                )
            });
        }
    }
    rep
}

impl MackeyTableMap {
    /// Basis permutations, one per level, as a map.
    pub fn from_permutations(ranks: &[usize], perms: &[Vec<usize>]) -> Self {
        MackeyTableMap {
            levels: ranks.iter().zip(perms).map(|(&n, p)| IntMatrix::from_images(n, p)).collect(),
        }
    }

    /// Checks that the map commutes with every restriction and transfer.
    pub fn commutes(&self, source: &MackeyTable, target: &MackeyTable) -> bool {
        if source.arrows.len() != target.arrows.len() || self.levels.len() != source.levels.len() {
            return false;
        }
        source.arrows.iter().all(|a| {
            let Some(b) = target.arrow(a.source, a.target, a.image) else {
                return false;
            };
            let (ms, mt) = (&self.levels[a.source], &self.levels[a.target]);
            ms.mul(&a.restriction) == b.restriction.mul(mt) && mt.mul(&a.transfer) == b.transfer.mul(ms)
        })
    }

    /// The level permutations, if every level matrix is one.
    pub fn permutations(&self) -> Option<Vec<Vec<usize>>> {
        self.levels.iter().map(IntMatrix::as_permutation).collect()
    }
}

/// Searches for basis permutations making `t1` and `t2` isomorphic:
/// colour refinement on basis elements, then backtracking.
pub fn table_iso(t1: &MackeyTable, t2: &MackeyTable) -> Option<MackeyTableMap> {
    let perms = table_isos(t1, t2, 1).pop()?;
    Some(MackeyTableMap::from_permutations(&t1.ranks(), &perms))
}

/// Up to `limit` distinct basis-permutation isomorphisms.
pub fn table_isos(t1: &MackeyTable, t2: &MackeyTable, limit: usize) -> Vec<Vec<Vec<usize>>> {
    if !crate::gset::same_group(&t1.group, &t2.group) || t1.ranks() != t2.ranks() {
        return Vec::new();
    }
    if t1.arrows.len() != t2.arrows.len()
        || t1.arrows.iter().any(|a| t2.arrow(a.source, a.target, a.image).is_none())
    {
        return Vec::new();
    }
    let ranks = t1.ranks();
    let mut offsets = vec![0];
    for r in &ranks {
        offsets.push(offsets.last().unwrap() + r);
    }
    let total = *offsets.last().unwrap();
    let level_of: Vec<usize> = (0..ranks.len()).flat_map(|s| core::iter::repeat_n(s, ranks[s])).collect();
    let pairs: Vec<(&Arrow, &Arrow)> =
        t1.arrows.iter().map(|a| (a, t2.arrow(a.source, a.target, a.image).unwrap())).collect();

    // colour refinement over both tables at once
    let mut col1: Vec<usize> = level_of.clone();
    let mut col2: Vec<usize> = level_of.clone();
    loop {
        let sig = |tab: usize, col: &[usize], x: usize| -> (usize, Vec<Vec<(i64, usize)>>) {
            let s = level_of[x];
            let i = x - offsets[s];
            let mut parts = Vec::new();
            for (a1, a2) in &pairs {
                let a = if tab == 0 { *a1 } else { *a2 };
                for m in [&a.restriction, &a.transfer] {
                    let (row_level, col_level) = if core::ptr::eq(m, &a.restriction) {
                        (a.source, a.target)
                    } else {
                        (a.target, a.source)
                    };
                    if row_level == s {
                        let mut v: Vec<(i64, usize)> =
                            (0..m.cols()).map(|j| (m.get(i, j), col[offsets[col_level] + j])).collect();
                        v.sort_unstable();
                        parts.push(v);
                    } else {
                        parts.push(Vec::new());
                    }
                    if col_level == s {
                        let mut v: Vec<(i64, usize)> =
                            (0..m.rows()).map(|r| (m.get(r, i), col[offsets[row_level] + r])).collect();
                        v.sort_unstable();
                        parts.push(v);
                    } else {
                        parts.push(Vec::new());
                    }
                }
            }
            (col[x], parts)
        };
        let s1: Vec<_> = (0..total).map(|x| sig(0, &col1, x)).collect();
        let s2: Vec<_> = (0..total).map(|x| sig(1, &col2, x)).collect();
        let mut ids: BTreeMap<&(usize, Vec<Vec<(i64, usize)>>), usize> = BTreeMap::new();
        for s in s1.iter().chain(&s2) {
            let n = ids.len();
            ids.entry(s).or_insert(n);
        }
        let n1: Vec<usize> = s1.iter().map(|s| ids[s]).collect();
        let n2: Vec<usize> = s2.iter().map(|s| ids[s]).collect();
        let classes_before = {
            let mut c: Vec<usize> = col1.iter().chain(&col2).copied().collect();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        let stable = ids.len() == classes_before;
        col1 = n1;
        col2 = n2;
        if stable {
            break;
        }
    }
    let mut c1 = col1.clone();
    let mut c2 = col2.clone();
    c1.sort_unstable();
    c2.sort_unstable();
    if c1 != c2 {
        return Vec::new();
    }

    struct Search<'a> {
        pairs: &'a [(&'a Arrow, &'a Arrow)],
        offsets: &'a [usize],
        level_of: &'a [usize],
        col1: &'a [usize],
        col2: &'a [usize],
        map: Vec<usize>,
        used: Vec<bool>,
        found: Vec<Vec<usize>>,
        limit: usize,
    }
    impl Search<'_> {
        fn consistent(&self, x: usize) -> bool {
            let s = self.level_of[x];
            let i = x - self.offsets[s];
            let ii = self.map[x] - self.offsets[s];
            for (a, b) in self.pairs {
                for (m1, m2, rl, cl) in [
                    (&a.restriction, &b.restriction, a.source, a.target),
                    (&a.transfer, &b.transfer, a.target, a.source),
                ] {
                    if rl == s {
                        for j in 0..m1.cols() {
                            let y = self.offsets[cl] + j;
                            if self.map[y] != usize::MAX && m1.get(i, j) != m2.get(ii, self.map[y] - self.offsets[cl]) {
                                return false;
                            }
                        }
                    }
                    if cl == s {
                        for r in 0..m1.rows() {
                            let y = self.offsets[rl] + r;
                            if self.map[y] != usize::MAX && m1.get(r, i) != m2.get(self.map[y] - self.offsets[rl], ii) {
                                return false;
                            }
                        }
                    }
                }
            }
            true
        }

        fn run(&mut self, x: usize) {
            if self.found.len() >= self.limit {
                return;
            }
            if x == self.map.len() {
                self.found.push(self.map.clone());
                return;
            }
            let s = self.level_of[x];
            for y in self.offsets[s]..self.offsets[s + 1] {
                if self.used[y] || self.col1[x] != self.col2[y] {
                    continue;
                }
                self.map[x] = y;
                if self.consistent(x) {
                    self.used[y] = true;
                    self.run(x + 1);
                    self.used[y] = false;
                }
                self.map[x] = usize::MAX;
            }
        }
    }
    let mut search = Search {
        pairs: &pairs,
        offsets: &offsets,
        level_of: &level_of,
        col1: &col1,
        col2: &col2,
        map: vec![usize::MAX; total],
        used: vec![false; total],
        found: Vec::new(),
        limit,
    };
    search.run(0);
    search
        .found
        .into_iter()
        .map(|m| {
            (0..ranks.len())
                .map(|s| (offsets[s]..offsets[s + 1]).map(|x| m[x] - offsets[s]).collect())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::gset::make_orbit;
    use alloc::sync::Arc;

    fn g(n: usize) -> GroupRef {
        Arc::new(FiniteGroup::cyclic(n))
    }

    #[test]
    fn burnside_ranks() {
        assert_eq!(burnside_table(&g(1)).ranks(), vec![1]);
        assert_eq!(burnside_table(&g(2)).ranks(), vec![1, 2]);
        assert_eq!(burnside_table(&g(4)).ranks(), vec![1, 3, 2]);
        let s3 = Arc::new(crate::group::SymmetricGroup::new(3).group().as_ref().clone());
        let ranks = burnside_table(&s3).ranks();
        let classes = conj_classes(&s3);
        for (r, c) in ranks.iter().zip(&classes) {
            let sub = Arc::new(c.representative.to_group());
            assert_eq!(*r, conj_classes(&sub).len());
        }
    }

    #[test]
    fn burnside_restrict_then_transfer_unit() {
        let c2 = g(2);
        let a = burnside_table(&c2);
        assert!(check_mackey_axioms(&a).passed());
        // level 0 = C_2/e, level 1 = C_2/C_2 with basis [pt-ish] sorted
        let arrow = a.arrow(0, 1, 0).unwrap();
        let unit = a.levels()[1].labels.iter().position(|l| l.contains("K=[0, 1]")).unwrap();
        let mut e = vec![0; 2];
        e[unit] = 1;
        let down = arrow.restriction.apply(&e);
        let up = arrow.transfer.apply(&down);
        assert_eq!(up, vec![if unit == 0 { 0 } else { 1 }, if unit == 0 { 1 } else { 0 }]);
    }

    #[test]
    fn represented_free_orbit_rank() {
        let c2 = g(2);
        let t = make_orbit(&c2, &Subgroup::trivial(&c2)).unwrap();
        let r = represented_table(&t);
        assert_eq!(r.ranks(), vec![2, 1]);
        assert!(check_mackey_axioms(&r).passed());
        assert_eq!(represented_table(&GSet::empty(&c2)).ranks(), vec![0, 0]);
    }

    #[test]
    fn isos_and_corruption() {
        let c2 = g(2);
        let a = burnside_table(&c2);
        let b = represented_table(&GSet::point(&c2));
        let m = table_iso(&a, &b).unwrap();
        assert!(m.commutes(&a, &b));
        let c = represented_table(&make_orbit(&c2, &Subgroup::trivial(&c2)).unwrap());
        assert!(table_iso(&a, &c).is_none());
        let mut bad = a.clone();
        let arrow = bad.arrow_mut(0, 1, 0).unwrap();
        let v = arrow.transfer.get(0, 0);
        arrow.transfer.set(0, 0, v + 1);
        let rep = check_mackey_axioms(&bad);
        assert!(!rep.passed());
        assert!(rep.failures.iter().any(|f| f.contains("pullback relation")));
        let done = completion(&completion(&a));
        assert!(done.is_complete());
        assert_eq!(done.arrows()[0].restriction, a.arrows()[0].restriction);
    }
}
