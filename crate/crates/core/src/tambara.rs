//! Free semi-Tambara functors `F_T` on the represented functor `[-, T]`.
//!
//! `F_T(X)` is the free commutative monoid on components of bispans
//! `T <- U -> V -> X` with `V` an orbit, graded by the fiber size of
//! `U -> V`. Everything here works on finite windows: all G-sets with at most
//! `k` points up to isomorphism and basis elements up to a degree bound.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::bispan::{Component, EffectiveElement, OrbitCode};
use crate::exponential::dependent_product_with_cap;
use crate::group::{all_subgroups, GroupRef, Subgroup};
use crate::gset::{
    coproduct, equivariant_maps, gsets_up_to, induce, induce_map, pullback, restrict, same_group, GMap, GSet,
};
use crate::mackey::{orbit_levels, realize_span, LevelData, MackeyTable, MackeyTableMap, Report, Represented, SpanCode};
use crate::matrix::IntMatrix;
use crate::{Error, Limits, Result};

/// Degree bound used when none is given.
pub const DEFAULT_MAX_DEGREE: usize = 2;

/// Basis of `F_T(X)` in degree `n`: canonical components with `V` an orbit
/// and `n` points in each fiber of `U -> V`.
pub fn ft_basis(t: &GSet, x: &GSet, n: usize, limits: &Limits) -> Result<Vec<Component>> {
    if !same_group(t.group(), x.group()) {
        return Err(Error::GroupMismatch);
    }
    let group = t.group();
    let subgroups = all_subgroups(group);
    let mut out = BTreeSet::new();
    let mut budget = limits.enumeration_cap;
    for k in &subgroups {
        let ke = k.elements();
        let xs = x.fixed_points(ke);
        if xs.is_empty() {
            continue;
        }
        // K-orbit types over T, up to K-conjugacy
        let mut types: BTreeSet<OrbitCode> = BTreeSet::new();
        for l in subgroups.iter().filter(|l| l.is_subgroup_of(k)) {
            for tp in t.fixed_points(l.elements()) {
                let code = ke
                    .iter()
                    .map(|&g| OrbitCode { stabilizer: l.conjugate(g).elements().to_vec(), point: t.act(g, tp) })
                    .min()
                    .expect("K is nonempty");
                types.insert(code);
            }
        }
        let types: Vec<(OrbitCode, usize)> = types.into_iter().map(|c| {
            let size = ke.len() / c.stabilizer.len();
            (c, size)
        }).collect();
        let mut multisets = Vec::new();
        fiber_multisets(&types, 0, n, &mut Vec::new(), &mut multisets, &mut budget)?;
        for &x0 in &xs {
            for fiber in &multisets {
                let comp = Component { stabilizer: ke.to_vec(), base: x0, fiber: fiber.clone() };
                let canon = comp.realize(t, x).canonical_components();
                debug_assert_eq!(canon.len(), 1);
                out.insert(canon.into_iter().next().expect("one orbit"));
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn fiber_multisets(
    types: &[(OrbitCode, usize)],
    from: usize,
    room: usize,
    cur: &mut Vec<OrbitCode>,
    out: &mut Vec<Vec<OrbitCode>>,
    budget: &mut usize,
) -> Result<()> {
    if room == 0 {
        if *budget == 0 {
            return Err(Error::ResourceBound { what: "basis candidates", needed: out.len() as u128 + 1, cap: out.len() });
        }
        *budget -= 1;
        let mut f = cur.clone();
        f.sort_unstable();
        out.push(f);
        return Ok(());
    }
    for i in from..types.len() {
        let (code, size) = &types[i];
        if *size <= room {
            cur.push(code.clone());
            fiber_multisets(types, i, room - size, cur, out, budget)?;
            cur.pop();
        }
    }
    Ok(())
}

/// Basis elements of all degrees up to `max_degree`, degree by degree.
pub fn ft_basis_up_to(t: &GSet, x: &GSet, max_degree: usize, limits: &Limits) -> Result<Vec<Component>> {
    let mut out = Vec::new();
    for n in 0..=max_degree {
        out.extend(ft_basis(t, x, n, limits)?);
    }
    Ok(out)
}

/// The operations of a semi-Tambara functor on elements.
pub trait SemiTambara {
    type Elem: Clone + PartialEq + Debug;

    fn group(&self) -> &GroupRef;
    fn zero(&self, x: &GSet) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn restrict(&self, f: &GMap, a: &Self::Elem) -> Result<Self::Elem>;
    fn transfer(&self, f: &GMap, a: &Self::Elem) -> Result<Self::Elem>;
    fn norm(&self, f: &GMap, a: &Self::Elem) -> Result<Self::Elem>;
    /// A generating set of `S(X)` as a commutative monoid, up to a degree.
    fn generators(&self, x: &GSet, max_degree: usize) -> Result<Vec<Self::Elem>>;

    /// The multiplicative unit: the norm of `0` along `∅ -> X`.
    fn one(&self, x: &GSet) -> Result<Self::Elem> {
        let empty = GSet::empty(self.group());
        self.norm(&GMap::from_empty(x), &self.zero(&empty))
    }

    /// Product via the norm along the fold map.
    fn mul(&self, x: &GSet, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let cp = coproduct(x, x)?;
        let id = GMap::identity(x);
        let fold = cp.copair(&id, &id)?;
        let pair = self.add(&self.transfer(&cp.left, a)?, &self.transfer(&cp.right, b)?)?;
        self.norm(&fold, &pair)
    }
}

/// `F_T` with effective elements as values.
#[derive(Clone, Debug)]
pub struct FreeTambara {
    t: GSet,
    limits: Limits,
}

impl FreeTambara {
    pub fn new(t: &GSet, limits: Limits) -> Self {
        FreeTambara { t: t.clone(), limits }
    }

    /// The Burnside functor, free on the empty G-set.
    pub fn burnside(group: &GroupRef, limits: Limits) -> Self {
        FreeTambara { t: GSet::empty(group), limits }
    }

    pub fn t(&self) -> &GSet {
        &self.t
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn theta(&self) -> EffectiveElement {
        EffectiveElement::theta(&self.t)
    }

    pub fn basis(&self, x: &GSet, n: usize) -> Result<Vec<Component>> {
        ft_basis(&self.t, x, n, &self.limits)
    }

    pub fn element(&self, x: &GSet, components: Vec<Component>) -> EffectiveElement {
        EffectiveElement::from_components(&self.t, x, components)
    }
}

impl SemiTambara for FreeTambara {
    type Elem = EffectiveElement;

    fn group(&self) -> &GroupRef {
        self.t.group()
    }
    fn zero(&self, x: &GSet) -> EffectiveElement {
        EffectiveElement::zero(&self.t, x)
    }
    fn add(&self, a: &EffectiveElement, b: &EffectiveElement) -> Result<EffectiveElement> {
        a.add(b)
    }
    fn restrict(&self, f: &GMap, a: &EffectiveElement) -> Result<EffectiveElement> {
        a.restrict(f)
    }
    fn transfer(&self, f: &GMap, a: &EffectiveElement) -> Result<EffectiveElement> {
        a.transfer(f)
    }
    fn norm(&self, f: &GMap, a: &EffectiveElement) -> Result<EffectiveElement> {
        a.norm(f, self.limits.section_cap)
    }
    fn one(&self, x: &GSet) -> Result<EffectiveElement> {
        Ok(EffectiveElement::unit(&self.t, x))
    }
    fn generators(&self, x: &GSet, max_degree: usize) -> Result<Vec<EffectiveElement>> {
        let top = if self.t.is_empty() { 0 } else { max_degree };
        Ok(ft_basis_up_to(&self.t, x, top, &self.limits)?
            .into_iter()
            .map(|c| self.element(x, vec![c]))
            .collect())
    }
}

/// A deliberately broken structure: norms along non-bijective maps pick up
/// an extra unit. Used as a negative control for the verifier.
#[derive(Clone, Debug)]
pub struct Corrupted<S>(pub S);

impl<S: SemiTambara> SemiTambara for Corrupted<S> {
    type Elem = S::Elem;

    fn group(&self) -> &GroupRef {
        self.0.group()
    }
    fn zero(&self, x: &GSet) -> S::Elem {
        self.0.zero(x)
    }
    fn add(&self, a: &S::Elem, b: &S::Elem) -> Result<S::Elem> {
        self.0.add(a, b)
    }
    fn restrict(&self, f: &GMap, a: &S::Elem) -> Result<S::Elem> {
        self.0.restrict(f, a)
    }
    fn transfer(&self, f: &GMap, a: &S::Elem) -> Result<S::Elem> {
        self.0.transfer(f, a)
    }
    fn norm(&self, f: &GMap, a: &S::Elem) -> Result<S::Elem> {
        let n = self.0.norm(f, a)?;
        if f.is_bijective() {
            Ok(n)
        } else {
            self.0.add(&n, &self.0.one(f.target())?)
        }
    }
    fn one(&self, x: &GSet) -> Result<S::Elem> {
        self.0.one(x)
    }
    fn generators(&self, x: &GSet, max_degree: usize) -> Result<Vec<S::Elem>> {
        self.0.generators(x, max_degree)
    }
}

fn show(f: &GMap) -> String {
    format!("{}->{} {:?}", f.source().size(), f.target().size(), f.values())
}

/// The window of evaluation objects: all G-sets with at most `k` points.
#[derive(Clone, Debug)]
pub struct Window {
    pub objects: Vec<GSet>,
    pub orbits: Vec<GSet>,
}

impl Window {
    pub fn new(group: &GroupRef, k: usize) -> Self {
        let objects = gsets_up_to(group, k);
        let orbits = objects.iter().filter(|x| x.is_transitive()).cloned().collect();
        Window { objects, orbits }
    }
}

struct Cache<'a, S: SemiTambara> {
    s: &'a S,
    max_degree: usize,
    cap: usize,
    gens: Vec<Option<Vec<S::Elem>>>,
    maps: BTreeMap<(usize, usize), Vec<GMap>>,
}

impl<'a, S: SemiTambara> Cache<'a, S> {
    fn gens(&mut self, w: &Window, i: usize) -> Result<&[S::Elem]> {
        if self.gens[i].is_none() {
            self.gens[i] = Some(self.s.generators(&w.objects[i], self.max_degree)?);
        }
        Ok(self.gens[i].as_deref().unwrap())
    }

    fn maps(&mut self, w: &Window, i: usize, j: usize) -> Result<Vec<GMap>> {
        if let Some(m) = self.maps.get(&(i, j)) {
            return Ok(m.clone());
        }
        let m = equivariant_maps(&w.objects[i], &w.objects[j], self.cap)?;
        self.maps.insert((i, j), m.clone());
        Ok(m)
    }
}

/// Checks the semi-Tambara axioms on a window of G-sets with at most `k`
/// points, on generators up to `max_degree`:
///
/// * functoriality of restrictions, transfers and norms;
/// * additivity: `S(X ⊔ Y) = S(X) x S(Y)` and `S(∅) = 0`;
/// * the two pullback relations `r t = t r` and `r n = n r`;
/// * the distributive law over every exponential diagram.
///
/// Since values at a G-set are determined by the values at its orbits, the
/// final target of each check is taken to be an orbit.
pub fn verify_semi_tambara<S: SemiTambara>(s: &S, k: usize, max_degree: usize, limits: &Limits) -> Result<Report> {
    let w = Window::new(s.group(), k);
    let n = w.objects.len();
    let orbit_idx: Vec<usize> = (0..n).filter(|&i| w.objects[i].is_transitive()).collect();
    let mut cache = Cache { s, max_degree, cap: limits.enumeration_cap, gens: vec![None; n], maps: BTreeMap::new() };
    let mut rep = Report::default();

    // identities
    for i in 0..n {
        let id = GMap::identity(&w.objects[i]);
        for e in cache.gens(&w, i)?.to_vec() {
            rep.check(s.restrict(&id, &e)? == e, || format!("r_id is not the identity on a set of size {}", id.source().size()));
            rep.check(s.transfer(&id, &e)? == e, || format!("t_id is not the identity on a set of size {}", id.source().size()));
            rep.check(s.norm(&id, &e)? == e, || format!("n_id is not the identity on a set of size {}", id.source().size()));
        }
    }

    // functoriality: X -f-> Y -g-> Z
    for x in 0..n {
        for y in 0..n {
            let fs = cache.maps(&w, x, y)?;
            if fs.is_empty() {
                continue;
            }
            for z in 0..n {
                let z_orbit = orbit_idx.contains(&z);
                let x_orbit = orbit_idx.contains(&x);
                if !z_orbit && !x_orbit {
                    continue;
                }
                let gs = cache.maps(&w, y, z)?;
                for f in &fs {
                    for g in &gs {
                        let gf = f.then(g)?;
                        if z_orbit {
                            for e in cache.gens(&w, x)?.to_vec() {
                                rep.check(s.transfer(g, &s.transfer(f, &e)?)? == s.transfer(&gf, &e)?, || {
                                    format!("transfer not functorial for f={} g={}", show(f), show(g))
                                });
                                rep.check(s.norm(g, &s.norm(f, &e)?)? == s.norm(&gf, &e)?, || {
                                    format!("norm not functorial for f={} g={}", show(f), show(g))
                                });
                            }
                        }
                        if x_orbit {
                            for e in cache.gens(&w, z)?.to_vec() {
                                rep.check(s.restrict(f, &s.restrict(g, &e)?)? == s.restrict(&gf, &e)?, || {
                                    format!("restriction not functorial for f={} g={}", show(f), show(g))
                                });
                            }
                        }
                    }
                }
            }
        }
    }

    // additivity
    let group = s.group().clone();
    let empty = GSet::empty(&group);
    for e in s.generators(&empty, max_degree)? {
        rep.check(e == s.zero(&empty), || String::from("S(∅) has a nonzero generator"));
    }
    for a in 0..n {
        for b in 0..n {
            let (xa, xb) = (&w.objects[a], &w.objects[b]);
            if xa.size() + xb.size() > k || xa.is_empty() || xb.is_empty() {
                continue;
            }
            let cp = coproduct(xa, xb)?;
            for e in s.generators(&cp.object, max_degree)? {
                let split = s.add(
                    &s.transfer(&cp.left, &s.restrict(&cp.left, &e)?)?,
                    &s.transfer(&cp.right, &s.restrict(&cp.right, &e)?)?,
                )?;
                rep.check(split == e, || format!("element over a {}+{} union is not the sum of its parts", xa.size(), xb.size()));
            }
            for ea in cache.gens(&w, a)?.to_vec() {
                for eb in cache.gens(&w, b)?.to_vec() {
                    let both = s.add(&s.transfer(&cp.left, &ea)?, &s.transfer(&cp.right, &eb)?)?;
                    rep.check(s.restrict(&cp.left, &both)? == ea && s.restrict(&cp.right, &both)? == eb, || {
                        format!("S({}+{}) -> S({}) x S({}) is not a bijection", xa.size(), xb.size(), xa.size(), xb.size())
                    });
                }
            }
        }
    }

    // pullback relations: f: X -> Z, g: Y -> Z with Y an orbit
    for x in 0..n {
        for z in 0..n {
            let fs = cache.maps(&w, x, z)?;
            if fs.is_empty() {
                continue;
            }
            for &y in &orbit_idx {
                let gs = cache.maps(&w, y, z)?;
                for f in &fs {
                    for g in &gs {
                        let pb = pullback(f, g)?;
                        for e in cache.gens(&w, x)?.to_vec() {
                            let re = s.restrict(&pb.left, &e)?;
                            rep.check(s.restrict(g, &s.transfer(f, &e)?)? == s.transfer(&pb.right, &re)?, || {
                                format!("r t != t r on the pullback of f={} and g={}", show(f), show(g))
                            });
                            rep.check(s.restrict(g, &s.norm(f, &e)?)? == s.norm(&pb.right, &re)?, || {
                                format!("r n != n r on the pullback of f={} and g={}", show(f), show(g))
                            });
                        }
                    }
                }
            }
        }
    }

    // distributive law: i: X -> Y, j: Y -> Z with Z an orbit
    for x in 0..n {
        for y in 0..n {
            let is = cache.maps(&w, x, y)?;
            if is.is_empty() {
                continue;
            }
            for &z in &orbit_idx {
                let js = cache.maps(&w, y, z)?;
                for i in &is {
                    for j in &js {
                        let exp = dependent_product_with_cap(i, j, limits.section_cap)?;
                        for e in cache.gens(&w, x)?.to_vec() {
                            let lhs = s.norm(j, &s.transfer(i, &e)?)?;
                            let rhs = s.transfer(&exp.p, &s.norm(&exp.a_to_pi, &s.restrict(&exp.e, &e)?)?)?;
                            rep.check(lhs == rhs, || {
                                format!(
                                    "distributive law fails on the exponential diagram of i={} j={} (|Π|={})",
                                    show(i),
                                    show(j),
                                    exp.pi.size()
                                )
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// `F_T` in a single degree, as level data for a Mackey table.
pub struct FtDegree {
    pub t: GSet,
    pub degree: usize,
    pub limits: Limits,
}

fn counted(e: EffectiveElement) -> Vec<(Component, i64)> {
    e.multiplicities().into_iter().map(|(c, m)| (c, m as i64)).collect()
}

impl LevelData for FtDegree {
    type Key = Component;

    fn basis(&self, orbit: &GSet) -> Result<Vec<Component>> {
        ft_basis(&self.t, orbit, self.degree, &self.limits)
    }

    fn restrict(&self, f: &GMap, key: &Component) -> Result<Vec<(Component, i64)>> {
        let e = EffectiveElement::from_components(&self.t, f.target(), vec![key.clone()]);
        Ok(counted(e.restrict(f)?))
    }

    fn transfer(&self, f: &GMap, key: &Component) -> Result<Vec<(Component, i64)>> {
        let e = EffectiveElement::from_components(&self.t, f.source(), vec![key.clone()]);
        Ok(counted(e.transfer(f)?))
    }

    fn label(&self, key: &Component) -> String {
        component_label(key)
    }
}

/// Compact text form of a component.
pub fn component_label(c: &Component) -> String {
    let fiber: Vec<String> = c.fiber.iter().map(|o| format!("{:?}@{}", o.stabilizer, o.point)).collect();
    format!("V=G/{:?} x={} U=[{}]", c.stabilizer, c.base, fiber.join(", "))
}

/// The Mackey table of the degree `n` part of `F_T`.
pub fn ft_table(t: &GSet, n: usize, limits: &Limits) -> Result<MackeyTable> {
    MackeyTable::build(t.group(), &FtDegree { t: t.clone(), degree: n, limits: *limits }, false)
}

/// Structure matrix of restriction or transfer along `f` in degree `n`,
/// for `f` inside the window of G-sets with at most `k` points.
pub fn ft_structure(t: &GSet, f: &GMap, kind: StructureKind, n: usize, k: usize, limits: &Limits) -> Result<IntMatrix> {
    if f.source().size() > k || f.target().size() > k {
        return Err(Error::WindowMiss);
    }
    let src = ft_basis(t, f.source(), n, limits)?;
    let tgt = ft_basis(t, f.target(), n, limits)?;
    let data = FtDegree { t: t.clone(), degree: n, limits: *limits };
    let (from, to) = match kind {
        StructureKind::Restriction => (&tgt, &src),
        StructureKind::Transfer => (&src, &tgt),
    };
    let pos: BTreeMap<&Component, usize> = to.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut m = IntMatrix::zeros(to.len(), from.len());
    for (j, c) in from.iter().enumerate() {
        let image = match kind {
            StructureKind::Restriction => data.restrict(f, c)?,
            StructureKind::Transfer => data.transfer(f, c)?,
        };
        for (d, mult) in image {
            let i = *pos.get(&d).ok_or_else(|| Error::IsoNotFound(format!("{} left its degree", component_label(&d))))?;
            m.add_to(i, j, mult);
        }
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    Restriction,
    Transfer,
}

/// Norm of an effective element: merges it into one bispan first.
pub fn ft_norm(f: &GMap, e: &EffectiveElement, limits: &Limits) -> Result<EffectiveElement> {
    e.norm(f, limits.section_cap)
}

/// Graded ranks of `F_T` on the orbit levels: `ranks[level][n]`.
pub fn ft_ranks(t: &GSet, max_degree: usize, limits: &Limits) -> Result<Vec<(Subgroup, Vec<usize>)>> {
    orbit_levels(t.group())
        .into_iter()
        .map(|(k, cs)| {
            let r = (0..=max_degree).map(|n| ft_basis(t, &cs.set, n, limits).map(|b| b.len())).collect::<Result<_>>()?;
            Ok((k, r))
        })
        .collect()
}

/// An explicit isomorphism of Mackey tables together with both tables.
#[derive(Clone, Debug)]
pub struct GradedIso {
    pub source: MackeyTable,
    pub target: MackeyTable,
    pub map: MackeyTableMap,
}

fn explicit_iso(
    source: MackeyTable,
    target: MackeyTable,
    src_bases: &[Vec<SpanCode>],
    tgt_bases: &[Vec<Component>],
    to_component: impl Fn(&SpanCode, &GSet) -> Component,
) -> Result<GradedIso> {
    let mut perms = Vec::new();
    for (s, (sb, tb)) in src_bases.iter().zip(tgt_bases).enumerate() {
        if sb.len() != tb.len() {
            return Err(Error::IsoNotFound(format!("ranks differ on level {s}")));
        }
        let orbit = &source.orbit(s).set;
        let pos: BTreeMap<&Component, usize> = tb.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut perm = Vec::with_capacity(sb.len());
        let mut hit = vec![false; tb.len()];
        for code in sb {
            let c = to_component(code, orbit);
            let i = *pos.get(&c).ok_or_else(|| Error::IsoNotFound(format!("{} is not a basis element", component_label(&c))))?;
            if hit[i] {
                return Err(Error::IsoNotFound(format!("level {s} map is not injective")));
            }
            hit[i] = true;
            perm.push(i);
        }
        perms.push(perm);
    }
    let map = MackeyTableMap::from_permutations(&source.ranks(), &perms);
    if !map.commutes(&source, &target) {
        return Err(Error::IsoNotFound(String::from("basis bijection does not commute with the structure maps")));
    }
    Ok(GradedIso { source, target, map })
}

fn span_bases(t: &GSet, limits: &Limits) -> Result<(Vec<Vec<SpanCode>>, MackeyTable)> {
    let data = Represented { t: t.clone() };
    let table = MackeyTable::build(t.group(), &data, false)?;
    let bases = orbit_levels(t.group()).iter().map(|(_, cs)| data.basis(&cs.set)).collect::<Result<_>>()?;
    let _ = limits;
    Ok((bases, table))
}

fn ft_bases(t: &GSet, n: usize, limits: &Limits) -> Result<Vec<Vec<Component>>> {
    orbit_levels(t.group()).iter().map(|(_, cs)| ft_basis(t, &cs.set, n, limits)).collect()
}

/// `A ≅ F_T[0]`: an orbit `G/K` over `X` goes to the component with empty `U`.
pub fn ft0_iso(t: &GSet, limits: &Limits) -> Result<GradedIso> {
    let pt = GSet::point(t.group());
    let (src, burnside) = span_bases(&pt, limits)?;
    let target = ft_table(t, 0, limits)?;
    let tgt = ft_bases(t, 0, limits)?;
    explicit_iso(burnside, target, &src, &tgt, |code, orbit| {
        let c = Component { stabilizer: code.stabilizer.clone(), base: code.base, fiber: Vec::new() };
        c.realize(t, orbit).canonical_components().remove(0)
    })
}

/// `[-, T] ≅ F_T[1]`: a span `X <- G/K -> T` goes to the component with
/// `U = V`.
pub fn ft1_iso(t: &GSet, limits: &Limits) -> Result<GradedIso> {
    let (src, represented) = span_bases(t, limits)?;
    let target = ft_table(t, 1, limits)?;
    let tgt = ft_bases(t, 1, limits)?;
    explicit_iso(represented, target, &src, &tgt, |code, orbit| {
        let c = Component {
            stabilizer: code.stabilizer.clone(),
            base: code.base,
            fiber: vec![OrbitCode { stabilizer: code.stabilizer.clone(), point: code.point }],
        };
        c.realize(t, orbit).canonical_components().remove(0)
    })
}

/// Span code of a degree-one component, inverse to the map in [`ft1_iso`].
pub fn degree_one_span(c: &Component, x: &GSet, t: &GSet) -> Option<SpanCode> {
    if c.degree() != 1 {
        return None;
    }
    let code = SpanCode { stabilizer: c.stabilizer.clone(), base: c.base, point: c.fiber[0].point };
    let (v, cc, a) = realize_span(&code, x, t);
    crate::mackey::span_codes(&v, &cc, &a).into_iter().next()
}

/// Induces an `H`-element to `G`: every leg of the bispan goes through
/// `G x_H -`, and the `T`-leg is followed by the counit `G x_H Res T -> T`.
fn induce_element(
    group: &GroupRef,
    h: &Subgroup,
    t: &GSet,
    e: &EffectiveElement,
    x_ind: &GSet,
) -> Result<EffectiveElement> {
    let b = e.to_bispan();
    let iu = induce(group, h, b.u())?;
    let (_, _, bm) = induce_map(group, h, &b.b())?;
    let (_, _, cm) = induce_map(group, h, &b.c())?;
    let nu = b.u().size();
    let a: Vec<usize> = (0..iu.object.size())
        .map(|q| t.act(iu.cosets.reps[q / nu], b.a().apply(q % nu)))
        .collect();
    let am = GMap::new_unchecked(&iu.object, t, a);
    let cm = GMap::new_unchecked(cm.source(), x_ind, cm.values().to_vec());
    Ok(crate::bispan::Bispan::new(&am, &bm, &cm)?.canonical())
}

/// Checks that induction from `H` identifies `F_{Res T}` over `H` with the
/// restriction of `F_T` to `H`, degree by degree on the `H`-orbit levels,
/// compatibly with restriction, transfer, norm and the universal elements.
pub fn restriction_compat(h: &Subgroup, t: &GSet, max_degree: usize, limits: &Limits) -> Result<Report> {
    let group = t.group().clone();
    let hg: GroupRef = alloc::sync::Arc::new(h.to_group());
    let rt = restrict(h, t)?;
    let mut rep = Report::default();
    let levels = orbit_levels(&hg);
    let induced: Vec<GSet> = levels.iter().map(|(_, cs)| induce(&group, h, &cs.set).map(|i| i.object)).collect::<Result<_>>()?;

    for ((k, cs), xg) in levels.iter().zip(&induced) {
        for n in 0..=max_degree {
            let hb = ft_basis(&rt, &cs.set, n, limits)?;
            let gb = ft_basis(t, xg, n, limits)?;
            let mut images = BTreeSet::new();
            for c in &hb {
                let e = EffectiveElement::from_components(&rt, &cs.set, vec![c.clone()]);
                let ie = induce_element(&group, h, t, &e, xg)?;
                rep.check(ie.components().len() == 1, || format!("induced basis element is not a single orbit at H-level {:?}", k.elements()));
                images.insert(ie.components().to_vec());
            }
            let all: BTreeSet<Vec<Component>> = gb.iter().map(|c| vec![c.clone()]).collect();
            rep.check(images == all && hb.len() == gb.len(), || {
                format!("induction is not a basis bijection at H-level {:?}, degree {n}: {} vs {}", k.elements(), hb.len(), gb.len())
            });
        }
    }

    // naturality along H-orbit maps
    for (s, (_, cs)) in levels.iter().enumerate() {
        for (u, (_, ct)) in levels.iter().enumerate() {
            let ks = levels[s].0.elements();
            for y in ct.set.fixed_points(ks) {
                let f = crate::mackey::orbit_map(cs, ct, y);
                let (_, _, fi) = induce_map(&group, h, &f)?;
                let fi = GMap::new_unchecked(&induced[s], &induced[u], fi.values().to_vec());
                for c in ft_basis_up_to(&rt, &cs.set, max_degree, limits)? {
                    let e = EffectiveElement::from_components(&rt, &cs.set, vec![c]);
                    let ie = induce_element(&group, h, t, &e, &induced[s])?;
                    let tr = induce_element(&group, h, t, &e.transfer(&f)?, &induced[u])?;
                    rep.check(tr == ie.transfer(&fi)?, || format!("induction does not commute with transfer along {}", show(&f)));
                    let nm = induce_element(&group, h, t, &e.norm(&f, limits.section_cap)?, &induced[u])?;
                    rep.check(nm == ie.norm(&fi, limits.section_cap)?, || format!("induction does not commute with norm along {}", show(&f)));
                }
                for c in ft_basis_up_to(&rt, &ct.set, max_degree, limits)? {
                    let e = EffectiveElement::from_components(&rt, &ct.set, vec![c]);
                    let ie = induce_element(&group, h, t, &e, &induced[u])?;
                    let rs = induce_element(&group, h, t, &e.restrict(&f)?, &induced[s])?;
                    rep.check(rs == ie.restrict(&fi)?, || format!("induction does not commute with restriction along {}", show(&f)));
                }
            }
        }
    }

    // universal elements: θ_{Res T} goes to the restriction of θ_T along the counit
    let it = induce(&group, h, &rt)?;
    let counit: Vec<usize> = (0..it.object.size()).map(|q| t.act(it.cosets.reps[q / rt.size().max(1)], q % rt.size().max(1))).collect();
    let counit = GMap::new_unchecked(&it.object, t, counit);
    let th = induce_element(&group, h, t, &EffectiveElement::theta(&rt), &it.object)?;
    rep.check(th == EffectiveElement::theta(t).restrict(&counit)?, || String::from("induced θ is not the restriction of θ along the counit"));
    Ok(rep)
}

/// The map `F_T -> S` sending a basis component `(a, b, c)` to
/// `t_c n_b r_a (x)`.
pub fn universal_image<S: SemiTambara>(s: &S, x: &S::Elem, e: &EffectiveElement) -> Result<S::Elem> {
    let mut acc = s.zero(e.x());
    for c in e.components() {
        let b = c.realize(e.t(), e.x());
        let v = s.transfer(&b.c(), &s.norm(&b.b(), &s.restrict(&b.a(), x)?)?)?;
        acc = s.add(&acc, &v)?;
    }
    Ok(acc)
}

/// Checks that the map induced by `x ∈ S(T)` commutes with restrictions,
/// transfers and norms on the window of G-sets with at most `k` points.
pub fn universal_map_check<S: SemiTambara>(
    t: &GSet,
    s: &S,
    x: &S::Elem,
    k: usize,
    max_degree: usize,
    limits: &Limits,
) -> Result<Report> {
    let ft = FreeTambara::new(t, *limits);
    let w = Window::new(t.group(), k);
    let mut rep = Report::default();
    let theta = ft.theta();
    rep.check(universal_image(s, x, &theta)? == *x, || String::from("θ does not go to x"));
    for xs in &w.objects {
        let gens = ft.generators(xs, max_degree)?;
        for ys in &w.objects {
            for f in equivariant_maps(xs, ys, limits.enumeration_cap)? {
                for e in &gens {
                    let phi = universal_image(s, x, e)?;
                    rep.check(universal_image(s, x, &ft.transfer(&f, e)?)? == s.transfer(&f, &phi)?, || {
                        format!("map does not commute with transfer along {}", show(&f))
                    });
                    rep.check(universal_image(s, x, &ft.norm(&f, e)?)? == s.norm(&f, &phi)?, || {
                        format!("map does not commute with norm along {}", show(&f))
                    });
                }
                if ys.is_transitive() || xs.is_transitive() {
                    for e in ft.generators(ys, max_degree)? {
                        let phi = universal_image(s, x, &e)?;
                        rep.check(universal_image(s, x, &ft.restrict(&f, &e)?)? == s.restrict(&f, &phi)?, || {
                            format!("map does not commute with restriction along {}", show(&f))
                        });
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Over the trivial group, `F_T(pt)` should be the polynomial semiring on
/// the points of `T`: degree `n` components are monomials of degree `n`, and
/// the product of components is the product of monomials.
pub fn polynomial_check(t: &GSet, max_degree: usize, limits: &Limits) -> Result<Report> {
    if t.group().order() != 1 {
        return Err(Error::Unsupported("polynomial check needs the trivial group"));
    }
    let pt = GSet::point(t.group());
    let ft = FreeTambara::new(t, *limits);
    let mut rep = Report::default();
    let exponent = |c: &Component| {
        let mut v = vec![0usize; t.size()];
        for o in &c.fiber {
            v[o.point] += 1;
        }
        v
    };
    let mut by_exp: BTreeMap<Vec<usize>, Component> = BTreeMap::new();
    for n in 0..=max_degree {
        let basis = ft.basis(&pt, n)?;
        // monomials of degree n in |T| variables
        let expected = if t.size() == 0 { usize::from(n == 0) } else { binomial(t.size() + n - 1, n).unwrap_or(0) };
        rep.check(basis.len() == expected, || format!("degree {n}: {} basis elements, expected {expected}", basis.len()));
        for c in basis {
            let e = exponent(&c);
            rep.check(e.iter().sum::<usize>() == n, || format!("degree {n} element has the wrong monomial"));
            rep.check(by_exp.insert(e, c).is_none(), || format!("two basis elements share a monomial in degree {n}"));
        }
    }
    let monomials: Vec<(Vec<usize>, Component)> = by_exp.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
    for (e1, c1) in &monomials {
        for (e2, c2) in &monomials {
            let sum: Vec<usize> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
            if sum.iter().sum::<usize>() > max_degree {
                continue;
            }
            let p = ft.mul(&pt, &ft.element(&pt, vec![c1.clone()]), &ft.element(&pt, vec![c2.clone()]))?;
            let expected = by_exp.get(&sum).cloned();
            rep.check(expected.is_some_and(|c| p.components() == [c]), || {
                format!("product of monomials {e1:?} and {e2:?} is not {sum:?}")
            });
        }
    }
    Ok(rep)
}

fn binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return None;
    }
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::gset::make_orbit;
    use alloc::sync::Arc;

    fn c(n: usize) -> GroupRef {
        Arc::new(FiniteGroup::cyclic(n))
    }

    #[test]
    fn degree_zero_and_one_ranks() {
        let g = c(2);
        let t = make_orbit(&g, &Subgroup::trivial(&g)).unwrap();
        let lim = Limits::default();
        let pt = GSet::point(&g);
        assert_eq!(ft_basis(&t, &pt, 0, &lim).unwrap().len(), 2);
        assert_eq!(ft_basis(&t, &pt, 1, &lim).unwrap().len(), 1);
        assert_eq!(ft_basis(&t, &t, 1, &lim).unwrap().len(), 2);
        // n = 2 over a point: U is C_2/e ⊔ C_2/e or one free orbit over V = C_2/e,
        // or a free orbit over V = pt with a(u) in T
        let two = ft_basis(&t, &pt, 2, &lim).unwrap();
        assert!(!two.is_empty());
        assert!(two.iter().all(|c| c.degree() == 2));
    }

    #[test]
    fn isos_for_free_orbit() {
        let g = c(2);
        let t = make_orbit(&g, &Subgroup::trivial(&g)).unwrap();
        let lim = Limits::default();
        assert!(ft0_iso(&t, &lim).is_ok());
        assert!(ft1_iso(&t, &lim).is_ok());
        let e = GSet::empty(&g);
        let iso = ft0_iso(&e, &lim).unwrap();
        assert!(iso.map.permutations().is_some());
    }

    #[test]
    fn small_verification_and_negative_control() {
        let g = c(2);
        let t = make_orbit(&g, &Subgroup::trivial(&g)).unwrap();
        let lim = Limits::default();
        let ft = FreeTambara::new(&t, lim);
        let rep = verify_semi_tambara(&ft, 2, 1, &lim).unwrap();
        assert!(rep.passed(), "{:?}", &rep.failures[..rep.failures.len().min(5)]);
        let bad = verify_semi_tambara(&Corrupted(ft), 2, 1, &lim).unwrap();
        assert!(!bad.passed());
    }

    #[test]
    fn polynomial_semiring_over_trivial_group() {
        let g = c(1);
        let lim = Limits::default();
        for size in [0, 2] {
            let rep = polynomial_check(&GSet::trivial(&g, size), 3, &lim).unwrap();
            assert!(rep.passed(), "{:?}", rep.failures);
        }
    }

    #[test]
    fn restriction_to_trivial_subgroup() {
        let g = c(2);
        let t = make_orbit(&g, &Subgroup::trivial(&g)).unwrap();
        let rep = restriction_compat(&Subgroup::trivial(&g), &t, 2, &Limits::default()).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        let rep = restriction_compat(&Subgroup::full(&g), &t, 2, &Limits::default()).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn universal_maps() {
        let g = c(2);
        let t = make_orbit(&g, &Subgroup::trivial(&g)).unwrap();
        let lim = Limits::default();
        let ft = FreeTambara::new(&t, lim);
        let rep = universal_map_check(&t, &ft, &ft.theta(), 2, 1, &lim).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        let a = FreeTambara::burnside(&g, lim);
        let one = a.one(&t).unwrap();
        let rep = universal_map_check(&t, &a, &one, 2, 1, &lim).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }
}
