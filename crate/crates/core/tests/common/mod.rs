//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's constructions; library values only enter as inputs.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use tambara_core::bispan::Bispan;
use tambara_core::exponential::ExponentialDiagram;
use tambara_core::group::{FiniteGroup, GroupRef};
use tambara_core::gset::{GMap, GSet};

pub fn cyclic(n: usize) -> GroupRef {
    Arc::new(FiniteGroup::cyclic(n))
}

/// A finite G-set as a raw action table `act[g][x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OSet {
    pub group: GroupRef,
    pub act: Vec<Vec<usize>>,
    pub n: usize,
}

impl OSet {
    pub fn of(x: &GSet) -> OSet {
        OSet { group: x.group().clone(), act: x.action_rows(), n: x.size() }
    }

    pub fn to_gset(&self) -> GSet {
        GSet::new(&self.group, &self.act).expect("oracle produced an invalid action")
    }

    pub fn empty(group: &GroupRef) -> OSet {
        OSet { group: group.clone(), act: vec![Vec::new(); group.order()], n: 0 }
    }

    /// Points are the cosets `gH`, listed in order of first appearance.
    pub fn cosets(group: &GroupRef, h: &[usize]) -> OSet {
        let mut cosets: Vec<BTreeSet<usize>> = Vec::new();
        for g in 0..group.order() {
            let c: BTreeSet<usize> = h.iter().map(|&x| group.mul(g, x)).collect();
            if !cosets.contains(&c) {
                cosets.push(c);
            }
        }
        let find = |c: &BTreeSet<usize>| cosets.iter().position(|d| d == c).unwrap();
        let act = (0..group.order())
            .map(|g| cosets.iter().map(|c| find(&c.iter().map(|&x| group.mul(g, x)).collect())).collect())
            .collect();
        OSet { group: group.clone(), act, n: cosets.len() }
    }

    pub fn disjoint(&self, other: &OSet) -> OSet {
        let act = (0..self.group.order())
            .map(|g| {
                let mut row = self.act[g].clone();
                row.extend(other.act[g].iter().map(|&y| y + self.n));
                row
            })
            .collect();
        OSet { group: self.group.clone(), act, n: self.n + other.n }
    }

    pub fn is_equivariant(&self, target: &OSet, f: &[usize]) -> bool {
        f.len() == self.n
            && f.iter().all(|&y| y < target.n)
            && (0..self.group.order()).all(|g| (0..self.n).all(|x| f[self.act[g][x]] == target.act[g][f[x]]))
    }

    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        (0..self.group.order()).filter(|&g| self.act[g][x] == x).collect()
    }
}

/// Every function `{0..n} -> {0..m}`, as vectors, in lexicographic order.
pub fn functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    if m == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut f = vec![0; n];
    loop {
        out.push(f.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            f[i] += 1;
            if f[i] < m {
                break;
            }
            f[i] = 0;
        }
    }
}

/// Every choice of one element from each list.
pub fn choices(lists: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for l in lists {
        out = out
            .into_iter()
            .flat_map(|pre| {
                l.iter().map(move |&v| {
                    let mut next = pre.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    out
}

pub fn equivariant_maps(x: &OSet, y: &OSet) -> Vec<Vec<usize>> {
    functions(x.n, y.n).into_iter().filter(|f| x.is_equivariant(y, f)).collect()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    functions(n, n)
        .into_iter()
        .filter(|f| f.iter().collect::<BTreeSet<_>>().len() == n)
        .collect()
}

/// Subgroups as the subsets of the group closed under multiplication.
pub fn subgroups_by_subsets(group: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = group.order();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if set.is_empty() {
            continue;
        }
        if set.iter().all(|&a| set.iter().all(|&b| mask & (1 << group.mul(a, b)) != 0)) {
            out.push(set);
        }
    }
    out.sort();
    out
}

/// Naive pullback: all pairs `(a, b)` with `f(a) = g(b)`.
pub fn naive_pullback(fs: &OSet, f: &[usize], gs: &OSet, g: &[usize]) -> (OSet, Vec<(usize, usize)>) {
    let pairs: Vec<(usize, usize)> =
        (0..fs.n).flat_map(|a| (0..gs.n).filter(move |&b| f[a] == g[b]).map(move |b| (a, b))).collect();
    let act = (0..fs.group.order())
        .map(|h| {
            pairs
                .iter()
                .map(|&(a, b)| pairs.iter().position(|&p| p == (fs.act[h][a], gs.act[h][b])).unwrap())
                .collect()
        })
        .collect();
    (OSet { group: fs.group.clone(), act, n: pairs.len() }, pairs)
}

/// Dependent product of `i: X -> Y`, `j: Y -> Z` built from its definition:
/// pairs `(z, s)` with `s` a section of `i` over `j^-1(z)`, acted on by
/// `(g s)(y) = g s(g^-1 y)`.
pub struct NaiveExp {
    pub pi: OSet,
    /// `(z, s)` with `s[y]` for every `y` over `z` (`usize::MAX` elsewhere).
    pub points: Vec<(usize, Vec<usize>)>,
    pub p: Vec<usize>,
    pub a: OSet,
    pub a_points: Vec<(usize, usize)>,
    pub e: Vec<usize>,
    pub a_to_pi: Vec<usize>,
}

pub fn naive_dependent_product(x: &OSet, y: &OSet, z: &OSet, i: &[usize], j: &[usize]) -> NaiveExp {
    let group = &x.group;
    let mut points = Vec::new();
    for zz in 0..z.n {
        let fiber: Vec<usize> = (0..y.n).filter(|&yy| j[yy] == zz).collect();
        for choice in functions(fiber.len(), x.n) {
            if fiber.iter().zip(&choice).all(|(&yy, &xx)| i[xx] == yy) {
                let mut s = vec![usize::MAX; y.n];
                for (&yy, &xx) in fiber.iter().zip(&choice) {
                    s[yy] = xx;
                }
                points.push((zz, s));
            }
        }
    }
    let act: Vec<Vec<usize>> = (0..group.order())
        .map(|g| {
            let gi = group.inv(g);
            points
                .iter()
                .map(|(zz, s)| {
                    let gz = z.act[g][*zz];
                    let moved: Vec<usize> = (0..y.n)
                        .map(|yy| if j[yy] == gz { x.act[g][s[y.act[gi][yy]]] } else { usize::MAX })
                        .collect();
                    points.iter().position(|(w, t)| *w == gz && *t == moved).unwrap()
                })
                .collect()
        })
        .collect();
    let pi = OSet { group: group.clone(), act, n: points.len() };
    let p: Vec<usize> = points.iter().map(|(zz, _)| *zz).collect();
    let (a, a_points) = naive_pullback(y, j, &pi, &p);
    let e = a_points.iter().map(|&(yy, q)| points[q].1[yy]).collect();
    let a_to_pi = a_points.iter().map(|&(_, q)| q).collect();
    NaiveExp { pi, points, p, a, a_points, e, a_to_pi }
}

/// A bispan `T <- U -> V -> X` on raw sets.
#[derive(Clone, Debug)]
pub struct OBispan {
    pub t: OSet,
    pub u: OSet,
    pub v: OSet,
    pub x: OSet,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl OBispan {
    pub fn of(b: &Bispan) -> OBispan {
        OBispan {
            t: OSet::of(b.t()),
            u: OSet::of(b.u()),
            v: OSet::of(b.v()),
            x: OSet::of(b.x()),
            a: b.a().values().to_vec(),
            b: b.b().values().to_vec(),
            c: b.c().values().to_vec(),
        }
    }

    pub fn to_bispan(&self) -> Bispan {
        let (t, u, v, x) = (self.t.to_gset(), self.u.to_gset(), self.v.to_gset(), self.x.to_gset());
        Bispan::new(
            &GMap::new(&u, &t, self.a.clone()).unwrap(),
            &GMap::new(&u, &v, self.b.clone()).unwrap(),
            &GMap::new(&v, &x, self.c.clone()).unwrap(),
        )
        .unwrap()
    }

    pub fn theta(t: &OSet) -> OBispan {
        let id: Vec<usize> = (0..t.n).collect();
        OBispan { t: t.clone(), u: t.clone(), v: t.clone(), x: t.clone(), a: id.clone(), b: id.clone(), c: id }
    }

    pub fn transfer(&self, y: &OSet, f: &[usize]) -> OBispan {
        OBispan { x: y.clone(), c: self.c.iter().map(|&v| f[v]).collect(), ..self.clone() }
    }

    pub fn restrict(&self, y: &OSet, f: &[usize]) -> OBispan {
        let (v2, vp) = naive_pullback(&self.v, &self.c, y, f);
        let proj: Vec<usize> = vp.iter().map(|&(v, _)| v).collect();
        let (u2, up) = naive_pullback(&self.u, &self.b, &v2, &proj);
        OBispan {
            t: self.t.clone(),
            a: up.iter().map(|&(u, _)| self.a[u]).collect(),
            b: up.iter().map(|&(_, w)| w).collect(),
            c: vp.iter().map(|&(_, yy)| yy).collect(),
            u: u2,
            v: v2,
            x: y.clone(),
        }
    }

    pub fn norm(&self, y: &OSet, f: &[usize]) -> OBispan {
        let d = naive_dependent_product(&self.v, &self.x, y, &self.c, f);
        let (u2, up) = naive_pullback(&self.u, &self.b, &d.a, &d.e);
        OBispan {
            t: self.t.clone(),
            a: up.iter().map(|&(u, _)| self.a[u]).collect(),
            b: up.iter().map(|&(_, q)| d.a_to_pi[q]).collect(),
            c: d.p.clone(),
            u: u2,
            v: d.pi,
            x: y.clone(),
        }
    }

    pub fn add(&self, other: &OBispan) -> OBispan {
        OBispan {
            t: self.t.clone(),
            x: self.x.clone(),
            u: self.u.disjoint(&other.u),
            v: self.v.disjoint(&other.v),
            a: self.a.iter().chain(&other.a).copied().collect(),
            b: self.b.iter().copied().chain(other.b.iter().map(|&v| v + self.v.n)).collect(),
            c: self.c.iter().chain(&other.c).copied().collect(),
        }
    }

    /// Product: the norm along the fold map of the sum placed over `X + X`.
    pub fn mul(&self, other: &OBispan) -> OBispan {
        let xx = self.x.disjoint(&self.x);
        let lifted = OBispan {
            x: xx.clone(),
            c: self.c.iter().copied().chain(other.c.iter().map(|&v| v + self.x.n)).collect(),
            ..self.add(other)
        };
        let fold: Vec<usize> = (0..xx.n).map(|p| p % self.x.n).collect();
        lifted.norm(&self.x, &fold)
    }
}

/// Extends a partial bijection along orbits: sets `map[g x] = g y` for all
/// `g`, failing on a clash or a collision.
fn extend_orbit(src: &OSet, dst: &OSet, x: usize, y: usize, map: &mut [usize], used: &mut [bool]) -> Option<Vec<usize>> {
    let mut added = Vec::new();
    for g in 0..src.group.order() {
        let (gx, gy) = (src.act[g][x], dst.act[g][y]);
        if map[gx] == usize::MAX {
            if used[gy] {
                undo(map, used, &added);
                return None;
            }
            map[gx] = gy;
            used[gy] = true;
            added.push(gx);
        } else if map[gx] != gy {
            undo(map, used, &added);
            return None;
        }
    }
    Some(added)
}

fn undo(map: &mut [usize], used: &mut [bool], added: &[usize]) {
    for &p in added {
        used[map[p]] = false;
        map[p] = usize::MAX;
    }
}

/// All equivariant bijections `src -> dst` satisfying `ok(point, image)`,
/// by backtracking over orbit representatives.
fn bijections(src: &OSet, dst: &OSet, ok: &dyn Fn(usize, usize) -> bool, each: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if src.n != dst.n {
        return false;
    }
    let mut map = vec![usize::MAX; src.n];
    let mut used = vec![false; dst.n];
    fn go(
        src: &OSet,
        dst: &OSet,
        ok: &dyn Fn(usize, usize) -> bool,
        each: &mut dyn FnMut(&[usize]) -> bool,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let Some(x) = map.iter().position(|&m| m == usize::MAX) else {
            return each(map);
        };
        for y in 0..dst.n {
            if used[y] {
                continue;
            }
            if let Some(added) = extend_orbit(src, dst, x, y, map, used) {
                if added.iter().all(|&p| ok(p, map[p])) && go(src, dst, ok, each, map, used) {
                    return true;
                }
                undo(map, used, &added);
            }
        }
        false
    }
    go(src, dst, ok, each, &mut map, &mut used)
}

/// Brute-force isomorphism of bispans with the same `T` and `X`.
pub fn bispans_isomorphic(p: &OBispan, q: &OBispan) -> bool {
    if p.u.n != q.u.n || p.v.n != q.v.n || p.x.n != q.x.n || p.t.n != q.t.n {
        return false;
    }
    bijections(&p.v, &q.v, &|v, w| p.c[v] == q.c[w], &mut |sv| {
        let sv = sv.to_vec();
        bijections(&p.u, &q.u, &|u, w| p.a[u] == q.a[w] && sv[p.b[u]] == q.b[w], &mut |_| true)
    })
}

/// Number of equivariant automorphisms of a G-set.
pub fn automorphism_count(x: &OSet) -> usize {
    let mut count = 0;
    bijections(x, x, &|_, _| true, &mut |_| {
        count += 1;
        false
    });
    count
}

/// All G-sets of exactly `size` points up to isomorphism, as disjoint
/// unions of coset spaces of the given subgroup representatives.
pub fn gsets_of_size(group: &GroupRef, subgroups: &[Vec<usize>], size: usize) -> Vec<OSet> {
    fn rec(group: &GroupRef, subs: &[Vec<usize>], from: usize, room: usize, acc: OSet, out: &mut Vec<OSet>) {
        if room == 0 {
            out.push(acc);
            return;
        }
        for k in from..subs.len() {
            let orbit = OSet::cosets(group, &subs[k]);
            if orbit.n <= room {
                rec(group, subs, k, room - orbit.n, acc.disjoint(&orbit), out);
            }
        }
    }
    let mut out = Vec::new();
    rec(group, subgroups, 0, size, OSet::empty(group), &mut out);
    out
}

/// One subgroup per conjugacy class, found by brute force.
pub fn subgroup_class_reps(group: &GroupRef) -> Vec<Vec<usize>> {
    let mut reps: Vec<Vec<usize>> = Vec::new();
    for h in subgroups_by_subsets(group) {
        let conj = |k: &Vec<usize>, g: usize| -> Vec<usize> {
            let mut c: Vec<usize> = k.iter().map(|&x| group.mul(group.mul(g, x), group.inv(g))).collect();
            c.sort();
            c
        };
        if !reps.iter().any(|r| (0..group.order()).any(|g| conj(r, g) == h)) {
            reps.push(h);
        }
    }
    reps
}

/// Basis of the degree-`n` part at `X` by brute force: every bispan with
/// `V` an orbit and all fibers of `b` of size `n`, up to isomorphism.
pub fn brute_basis(t: &OSet, x: &OSet, n: usize) -> Vec<OBispan> {
    let group = &t.group;
    let reps = subgroup_class_reps(group);
    let mut found: Vec<OBispan> = Vec::new();
    for k in &reps {
        let v = OSet::cosets(group, k);
        for c in equivariant_maps(&v, x) {
            for u in gsets_of_size(group, &reps, n * v.n) {
                for b in equivariant_maps(&u, &v) {
                    if (0..v.n).any(|w| b.iter().filter(|&&p| p == w).count() != n) {
                        continue;
                    }
                    for a in equivariant_maps(&u, t) {
                        let cand = OBispan {
                            t: t.clone(),
                            u: u.clone(),
                            v: v.clone(),
                            x: x.clone(),
                            a,
                            b: b.clone(),
                            c: c.clone(),
                        };
                        if !found.iter().any(|f| bispans_isomorphic(f, &cand)) {
                            found.push(cand);
                        }
                    }
                }
            }
        }
    }
    found
}

/// A random G-set with at most `max` points.
pub fn random_gset<R: Rng>(group: &GroupRef, max: usize, rng: &mut R) -> GSet {
    let subs = subgroups_by_subsets(group);
    let mut acc = OSet::empty(group);
    let target = rng.gen_range(0..=max);
    while acc.n < target {
        let fits: Vec<&Vec<usize>> = subs.iter().filter(|h| group.order() / h.len() + acc.n <= max).collect();
        let Some(h) = fits.choose(rng) else { break };
        acc = acc.disjoint(&OSet::cosets(group, h));
    }
    acc.to_gset()
}

/// A random equivariant map, if any exists.
pub fn random_map<R: Rng>(x: &GSet, y: &GSet, rng: &mut R) -> Option<GMap> {
    let (ox, oy) = (OSet::of(x), OSet::of(y));
    let mut values = vec![usize::MAX; ox.n];
    for p in 0..ox.n {
        if values[p] != usize::MAX {
            continue;
        }
        let stab = ox.stabilizer(p);
        let choices: Vec<usize> = (0..oy.n).filter(|&q| stab.iter().all(|&g| oy.act[g][q] == q)).collect();
        let &q = choices.choose(rng)?;
        for g in 0..ox.group.order() {
            values[ox.act[g][p]] = oy.act[g][q];
        }
    }
    Some(GMap::new(x, y, values).unwrap())
}

/// A random map out of `x` into a fresh random G-set of at most `max` points.
pub fn random_map_from<R: Rng>(x: &GSet, max: usize, rng: &mut R) -> GMap {
    loop {
        let y = random_gset(x.group(), max.max(1), rng);
        if let Some(f) = random_map(x, &y, rng) {
            return f;
        }
    }
}

/// Relabels the points of a G-set along a permutation: point `p` becomes
/// `perm[p]`.
pub fn relabel(x: &OSet, perm: &[usize]) -> OSet {
    let mut act = vec![vec![0; x.n]; x.group.order()];
    for g in 0..x.group.order() {
        for p in 0..x.n {
            act[g][perm[p]] = perm[x.act[g][p]];
        }
    }
    OSet { group: x.group.clone(), act, n: x.n }
}

/// Checks a computed dependent product against the definition. Returns a
/// description of the first disagreement.
pub fn compare_with_naive(i: &GMap, j: &GMap, d: &ExponentialDiagram) -> Result<(), String> {
    let (x, y, z) = (OSet::of(i.source()), OSet::of(i.target()), OSet::of(j.target()));
    let naive = naive_dependent_product(&x, &y, &z, i.values(), j.values());
    if naive.pi.n != d.pi.size() {
        return Err(format!("|Π| = {} but the definition gives {}", d.pi.size(), naive.pi.n));
    }
    let mut idx = Vec::with_capacity(d.pi.size());
    for q in 0..d.pi.size() {
        let zz = d.p.apply(q);
        let fiber: Vec<usize> = (0..y.n).filter(|&yy| j.apply(yy) == zz).collect();
        let mut s = vec![usize::MAX; y.n];
        for (&yy, &xx) in fiber.iter().zip(&d.sections[q]) {
            s[yy] = xx;
        }
        match naive.points.iter().position(|(w, t)| *w == zz && *t == s) {
            Some(k) => idx.push(k),
            None => return Err(format!("point {q} is not a section over {zz}")),
        }
    }
    let mut sorted = idx.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != idx.len() {
        return Err("two points of Π carry the same section".into());
    }
    for g in 0..x.group.order() {
        for q in 0..d.pi.size() {
            if naive.pi.act[g][idx[q]] != idx[d.pi.act(g, q)] {
                return Err(format!("action on Π is wrong at g={g} q={q}"));
            }
        }
    }
    if d.a.size() != naive.a.n {
        return Err("|A| is wrong".into());
    }
    for r in 0..d.a.size() {
        let (yy, q) = (d.a_to_y.apply(r), d.a_to_pi.apply(r));
        if d.p.apply(q) != j.apply(yy) {
            return Err(format!("A point {r} is not over a common z"));
        }
        if naive.points[idx[q]].1[yy] != d.e.apply(r) {
            return Err(format!("evaluation is wrong at {r}"));
        }
    }
    Ok(())
}

/// The universal property, counted on orbits: maps `G/H -> Π` over
/// `t: G/H -> Z` match maps `Y x_Z G/H -> X` over `Y`.
pub fn universal_property_counts(i: &GMap, j: &GMap, d: &ExponentialDiagram, budget: usize) -> Result<usize, String> {
    let (x, y, z) = (OSet::of(i.source()), OSet::of(i.target()), OSet::of(j.target()));
    let group = x.group.clone();
    let mut checked = 0;
    for h in subgroup_class_reps(&group) {
        let t = OSet::cosets(&group, &h);
        for zz in 0..z.n {
            if h.iter().any(|&g| z.act[g][zz] != zz) {
                continue;
            }
            let tmap: Vec<usize> = (0..t.n)
                .map(|c| {
                    let g = (0..group.order()).find(|&g| t.act[g][0] == c).unwrap();
                    z.act[g][zz]
                })
                .collect();
            let lhs = (0..d.pi.size())
                .filter(|&q| d.p.apply(q) == zz && h.iter().all(|&g| d.pi.act(g, q) == q))
                .count();
            let (pb, pairs) = naive_pullback(&y, j.values(), &t, &tmap);
            let fibers: Vec<Vec<usize>> =
                pairs.iter().map(|&(yy, _)| (0..x.n).filter(|&xx| i.apply(xx) == yy).collect()).collect();
            let total: usize = fibers.iter().map(|f| f.len()).product();
            if total > budget {
                continue;
            }
            let mut rhs = 0;
            for choice in choices(&fibers) {
                if pb.is_equivariant(&x, &choice) {
                    rhs += 1;
                }
            }
            if lhs != rhs {
                return Err(format!("over z={zz} with H={h:?}: {lhs} maps into Π but {rhs} maps into X"));
            }
            checked += 1;
        }
    }
    Ok(checked)
}
