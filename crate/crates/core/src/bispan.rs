//! Bispans `T <-a- U -b-> V -c-> X` and their isomorphism classes.
//!
//! A bispan stands for the composite `t_c n_b r_a` applied to the universal
//! element at `T`. The ports `T` and `X` are fixed; isomorphisms act on `U`
//! and `V` only.
//!
//! # Canonical form
//!
//! A bispan splits as a disjoint union over the orbits of `V`. A component
//! with `V = G/K` is determined, once a point `v` with stabilizer `K` is
//! chosen, by the point `c(v)` of `X` and by the fiber `b^-1(v)` as a `K`-set
//! over `T`. That `K`-set is in turn the multiset of its `K`-orbits, and a
//! `K`-orbit through `u` is determined by `(Stab_K(u), a(u))` up to
//! `K`-conjugacy. [`Component`] records the lexicographically least such
//! description over all choices of `v` and `u`, which makes it a complete
//! isomorphism invariant. An [`EffectiveElement`] is a sorted multiset of
//! components.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::exponential::dependent_product_with_cap;
use crate::gset::{coproduct, coproduct_all, coset_space, pullback, GMap, GSet};
use crate::{Error, Result};

/// A `K`-orbit in a fiber, described by `(stabilizer, image in T)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitCode {
    pub stabilizer: Vec<usize>,
    pub point: usize,
}

/// Canonical description of a bispan whose `V` is a single orbit.
///
/// Ordered by `(stabilizer of V, point of X, fiber orbit codes)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Component {
    /// Stabilizer `K` of the chosen point `v` of `V`.
    pub stabilizer: Vec<usize>,
    /// `c(v)` in `X`.
    pub base: usize,
    /// Sorted orbit codes of the `K`-set `b^-1(v)`.
    pub fiber: Vec<OrbitCode>,
}

impl Component {
    /// Uniform fiber size of `U -> V`.
    pub fn degree(&self) -> usize {
        let k = self.stabilizer.len();
        self.fiber.iter().map(|o| k / o.stabilizer.len()).sum()
    }

    /// The standard bispan realizing this component: `V = G/K` and
    /// `U = ⊔ G/L` over the fiber codes.
    pub fn realize(&self, t: &GSet, x: &GSet) -> Bispan {
        let group = t.group();
        let vs = coset_space(group, &self.stabilizer);
        let c = vs.reps.iter().map(|&g| x.act(g, self.base)).collect();
        let mut parts = Vec::with_capacity(self.fiber.len());
        let mut a = Vec::new();
        let mut b = Vec::new();
        for code in &self.fiber {
            let ls = coset_space(group, &code.stabilizer);
            for &g in &ls.reps {
                a.push(t.act(g, code.point));
                b.push(vs.coset_of[g]);
            }
            parts.push(ls.set);
        }
        let (u, _) = coproduct_all(group, &parts);
        Bispan { t: t.clone(), u, v: vs.set, x: x.clone(), a, b, c }
    }
}

/// A bispan `T <-a- U -b-> V -c-> X`.
#[derive(Clone)]
pub struct Bispan {
    t: GSet,
    u: GSet,
    v: GSet,
    x: GSet,
    a: Vec<usize>,
    b: Vec<usize>,
    c: Vec<usize>,
}

impl fmt::Debug for Bispan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Bispan")
            .field("t", &self.t.size())
            .field("u", &self.u.size())
            .field("v", &self.v.size())
            .field("x", &self.x.size())
            .field("a", &self.a)
            .field("b", &self.b)
            .field("c", &self.c)
            .finish()
    }
}

impl Bispan {
    /// Builds a bispan from its three legs; the maps must be equivariant
    /// and have matching endpoints.
    pub fn new(a: &GMap, b: &GMap, c: &GMap) -> Result<Bispan> {
        if a.source() != b.source() {
            return Err(Error::PortMismatch("a and b must share the source U".into()));
        }
        if b.target() != c.source() {
            return Err(Error::PortMismatch("b must land in the source V of c".into()));
        }
        Ok(Bispan {
            t: a.target().clone(),
            u: a.source().clone(),
            v: b.target().clone(),
            x: c.target().clone(),
            a: a.values().to_vec(),
            b: b.values().to_vec(),
            c: c.values().to_vec(),
        })
    }

    /// The universal element `T <- T -> T -> T` with identity legs.
    pub fn theta(t: &GSet) -> Bispan {
        let id: Vec<usize> = (0..t.size()).collect();
        Bispan { t: t.clone(), u: t.clone(), v: t.clone(), x: t.clone(), a: id.clone(), b: id.clone(), c: id }
    }

    /// The multiplicative unit `T <- ∅ -> X = X`.
    pub fn unit(t: &GSet, x: &GSet) -> Bispan {
        Bispan {
            t: t.clone(),
            u: GSet::empty(t.group()),
            v: x.clone(),
            x: x.clone(),
            a: Vec::new(),
            b: Vec::new(),
            c: (0..x.size()).collect(),
        }
    }

    /// The additive unit, with `U` and `V` empty.
    pub fn zero(t: &GSet, x: &GSet) -> Bispan {
        let e = GSet::empty(t.group());
        Bispan { t: t.clone(), u: e.clone(), v: e, x: x.clone(), a: Vec::new(), b: Vec::new(), c: Vec::new() }
    }

    pub fn t(&self) -> &GSet {
        &self.t
    }
    pub fn u(&self) -> &GSet {
        &self.u
    }
    pub fn v(&self) -> &GSet {
        &self.v
    }
    pub fn x(&self) -> &GSet {
        &self.x
    }
    pub fn a(&self) -> GMap {
        GMap::new_unchecked(&self.u, &self.t, self.a.clone())
    }
    pub fn b(&self) -> GMap {
        GMap::new_unchecked(&self.u, &self.v, self.b.clone())
    }
    pub fn c(&self) -> GMap {
        GMap::new_unchecked(&self.v, &self.x, self.c.clone())
    }

    /// Transfer along `f: X -> Y`: replace `c` by `f c`.
    pub fn transfer(&self, f: &GMap) -> Result<Bispan> {
        if *f.source() != self.x {
            return Err(Error::PortMismatch("transfer: map does not start at X".into()));
        }
        Ok(Bispan {
            t: self.t.clone(),
            u: self.u.clone(),
            v: self.v.clone(),
            x: f.target().clone(),
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.iter().map(|&v| f.apply(v)).collect(),
        })
    }

    /// Restriction along `f: Y -> X` by two pullback squares.
    pub fn restrict(&self, f: &GMap) -> Result<Bispan> {
        if *f.target() != self.x {
            return Err(Error::PortMismatch("restriction: map does not end at X".into()));
        }
        let p = pullback(&self.c(), f)?;
        let q = pullback(&self.b(), &p.left)?;
        Ok(Bispan {
            t: self.t.clone(),
            a: q.left.values().iter().map(|&u| self.a[u]).collect(),
            b: q.right.values().to_vec(),
            c: p.right.values().to_vec(),
            u: q.object,
            v: p.object,
            x: f.source().clone(),
        })
    }

    /// Norm along `f: X -> Y`: take the dependent product of `(c, f)`,
    /// pull `U -> V` back along its evaluation map, and compose.
    pub fn norm(&self, f: &GMap, section_cap: usize) -> Result<Bispan> {
        if *f.source() != self.x {
            return Err(Error::PortMismatch("norm: map does not start at X".into()));
        }
        let exp = dependent_product_with_cap(&self.c(), f, section_cap)?;
        let p = pullback(&self.b(), &exp.e)?;
        Ok(Bispan {
            t: self.t.clone(),
            a: p.left.values().iter().map(|&u| self.a[u]).collect(),
            b: p.right.values().iter().map(|&q| exp.a_to_pi.apply(q)).collect(),
            c: exp.p.values().to_vec(),
            u: p.object,
            v: exp.pi,
            x: f.target().clone(),
        })
    }

    /// Sum: disjoint union of the `U`'s and of the `V`'s.
    pub fn disjoint_union(&self, other: &Bispan) -> Result<Bispan> {
        if self.t != other.t || self.x != other.x {
            return Err(Error::PortMismatch("sum of bispans with different ports".into()));
        }
        let u = coproduct(&self.u, &other.u)?.object;
        let v = coproduct(&self.v, &other.v)?.object;
        let nv = self.v.size();
        Ok(Bispan {
            t: self.t.clone(),
            x: self.x.clone(),
            a: self.a.iter().chain(&other.a).copied().collect(),
            b: self.b.iter().copied().chain(other.b.iter().map(|&q| q + nv)).collect(),
            c: self.c.iter().chain(&other.c).copied().collect(),
            u,
            v,
        })
    }

    /// Sum of many bispans with common ports.
    pub fn sum(t: &GSet, x: &GSet, parts: &[Bispan]) -> Result<Bispan> {
        let group = t.group();
        if parts.iter().any(|p| p.t != *t || p.x != *x) {
            return Err(Error::PortMismatch("sum of bispans with different ports".into()));
        }
        let us: Vec<GSet> = parts.iter().map(|p| p.u.clone()).collect();
        let vs: Vec<GSet> = parts.iter().map(|p| p.v.clone()).collect();
        let (u, _) = coproduct_all(group, &us);
        let (v, voff) = coproduct_all(group, &vs);
        let mut a = Vec::with_capacity(u.size());
        let mut b = Vec::with_capacity(u.size());
        let mut c = Vec::with_capacity(v.size());
        for (p, &off) in parts.iter().zip(&voff) {
            a.extend_from_slice(&p.a);
            b.extend(p.b.iter().map(|&q| q + off));
            c.extend_from_slice(&p.c);
        }
        Ok(Bispan { t: t.clone(), u, v, x: x.clone(), a, b, c })
    }

    /// Fiber sizes of `b` that occur, one per `V` point.
    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut n = vec![0; self.v.size()];
        for &q in &self.b {
            n[q] += 1;
        }
        n
    }

    /// Canonical sorted components, one per orbit of `V`.
    pub fn canonical_components(&self) -> Vec<Component> {
        let (orbit_id, count) = self.v.orbit_ids();
        let mut orbit_points: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (q, &o) in orbit_id.iter().enumerate() {
            orbit_points[o].push(q);
        }
        let mut fibers: Vec<Vec<usize>> = vec![Vec::new(); self.v.size()];
        for (u, &q) in self.b.iter().enumerate() {
            fibers[q].push(u);
        }
        let mut mark = vec![false; self.u.size()];
        let mut out: Vec<Component> = orbit_points
            .iter()
            .map(|pts| {
                pts.iter()
                    .map(|&q| self.component_at(q, &fibers[q], &mut mark))
                    .min()
                    .expect("orbits are nonempty")
            })
            .collect();
        out.sort_unstable();
        out
    }

    fn component_at(&self, q: usize, fiber: &[usize], mark: &mut [bool]) -> Component {
        let k = self.v.stabilizer(q);
        let mut codes = Vec::new();
        for &u in fiber {
            if mark[u] {
                continue;
            }
            let mut best: Option<OrbitCode> = None;
            for &g in &k {
                let w = self.u.act(g, u);
                if mark[w] {
                    continue;
                }
                mark[w] = true;
                let code = OrbitCode { stabilizer: self.u.stabilizer_in(&k, w), point: self.a[w] };
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
            }
            codes.push(best.expect("orbit of u contains u"));
        }
        for &u in fiber {
            mark[u] = false;
        }
        codes.sort_unstable();
        Component { stabilizer: k, base: self.c[q], fiber: codes }
    }

    /// Canonical isomorphism class.
    pub fn canonical(&self) -> EffectiveElement {
        EffectiveElement { t: self.t.clone(), x: self.x.clone(), components: self.canonical_components() }
    }
}

/// Isomorphism class of a bispan, fixing the ports.
///
/// Classes of bispans and effective elements of the free semi-Tambara
/// functor are the same thing: a sorted multiset of orbit components.
pub type BispanClass = EffectiveElement;

/// A nonnegative combination of basis components at level `X`.
#[derive(Clone, PartialEq, Eq)]
pub struct EffectiveElement {
    t: GSet,
    x: GSet,
    components: Vec<Component>,
}

impl fmt::Debug for EffectiveElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EffectiveElement")
            .field("x", &self.x.size())
            .field("components", &self.components)
            .finish()
    }
}

fn check_ports(a: &EffectiveElement, b: &EffectiveElement) -> Result<()> {
    if a.t != b.t || a.x != b.x {
        return Err(Error::PortMismatch("elements live at different levels".into()));
    }
    Ok(())
}

impl EffectiveElement {
    pub fn zero(t: &GSet, x: &GSet) -> Self {
        EffectiveElement { t: t.clone(), x: x.clone(), components: Vec::new() }
    }

    pub fn unit(t: &GSet, x: &GSet) -> Self {
        Bispan::unit(t, x).canonical()
    }

    pub fn theta(t: &GSet) -> Self {
        Bispan::theta(t).canonical()
    }

    /// Builds an element from components; sorts them. Components must be
    /// canonical.
    pub fn from_components(t: &GSet, x: &GSet, mut components: Vec<Component>) -> Self {
        components.sort_unstable();
        EffectiveElement { t: t.clone(), x: x.clone(), components }
    }

    pub fn t(&self) -> &GSet {
        &self.t
    }
    pub fn x(&self) -> &GSet {
        &self.x
    }
    pub fn components(&self) -> &[Component] {
        &self.components
    }
    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Components with multiplicities.
    pub fn multiplicities(&self) -> Vec<(Component, usize)> {
        let mut out: Vec<(Component, usize)> = Vec::new();
        for c in &self.components {
            match out.last_mut() {
                Some((last, n)) if last == c => *n += 1,
                _ => out.push((c.clone(), 1)),
            }
        }
        out
    }

    /// A representing bispan (disjoint union of the realized components).
    pub fn to_bispan(&self) -> Bispan {
        let parts: Vec<Bispan> = self.components.iter().map(|c| c.realize(&self.t, &self.x)).collect();
        Bispan::sum(&self.t, &self.x, &parts).expect("components share ports")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_ports(self, other)?;
        let mut components = self.components.clone();
        components.extend_from_slice(&other.components);
        components.sort_unstable();
        Ok(EffectiveElement { t: self.t.clone(), x: self.x.clone(), components })
    }

    pub fn transfer(&self, f: &GMap) -> Result<Self> {
        if *f.source() != self.x {
            return Err(Error::PortMismatch("transfer: map does not start at X".into()));
        }
        Ok(self.to_bispan().transfer(f)?.canonical())
    }

    pub fn restrict(&self, f: &GMap) -> Result<Self> {
        if *f.target() != self.x {
            return Err(Error::PortMismatch("restriction: map does not end at X".into()));
        }
        Ok(self.to_bispan().restrict(f)?.canonical())
    }

    pub fn norm(&self, f: &GMap, section_cap: usize) -> Result<Self> {
        if *f.source() != self.x {
            return Err(Error::PortMismatch("norm: map does not start at X".into()));
        }
        Ok(self.to_bispan().norm(f, section_cap)?.canonical())
    }

    /// Product: the pair over `X ⊔ X` normed along the fold map.
    pub fn mul(&self, other: &Self, section_cap: usize) -> Result<Self> {
        check_ports(self, other)?;
        let cp = coproduct(&self.x, &self.x)?;
        let id = GMap::identity(&self.x);
        let fold = cp.copair(&id, &id)?;
        let left = self.to_bispan().transfer(&cp.left)?;
        let right = other.to_bispan().transfer(&cp.right)?;
        Ok(left.disjoint_union(&right)?.norm(&fold, section_cap)?.canonical())
    }

    /// Splits into homogeneous pieces by the fiber size of `U -> V`.
    pub fn degree_split(&self) -> BTreeMap<usize, EffectiveElement> {
        let mut out: BTreeMap<usize, EffectiveElement> = BTreeMap::new();
        for c in &self.components {
            out.entry(c.degree())
                .or_insert_with(|| EffectiveElement::zero(&self.t, &self.x))
                .components
                .push(c.clone());
        }
        out
    }
}

/// An integer combination of basis components (the group completion).
#[derive(Clone, PartialEq, Eq)]
pub struct VirtualElement {
    t: GSet,
    x: GSet,
    terms: BTreeMap<Component, i64>,
}

impl fmt::Debug for VirtualElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VirtualElement").field("terms", &self.terms).finish()
    }
}

impl From<&EffectiveElement> for VirtualElement {
    fn from(e: &EffectiveElement) -> Self {
        let mut terms = BTreeMap::new();
        for c in &e.components {
            *terms.entry(c.clone()).or_insert(0) += 1;
        }
        VirtualElement { t: e.t.clone(), x: e.x.clone(), terms }
    }
}

impl VirtualElement {
    pub fn zero(t: &GSet, x: &GSet) -> Self {
        VirtualElement { t: t.clone(), x: x.clone(), terms: BTreeMap::new() }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Component, i64)> {
        self.terms.iter().map(|(c, &n)| (c, n))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.t != other.t || self.x != other.x {
            return Err(Error::PortMismatch("elements live at different levels".into()));
        }
        Ok(())
    }

    fn accumulate(&mut self, c: Component, n: i64) {
        let entry = self.terms.entry(c).or_insert(0);
        *entry += n;
        if *entry == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (c, &n) in &other.terms {
            out.accumulate(c.clone(), n);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        VirtualElement {
            t: self.t.clone(),
            x: self.x.clone(),
            terms: self.terms.iter().map(|(c, &n)| (c.clone(), -n)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// The effective element, if every coefficient is nonnegative.
    pub fn to_effective(&self) -> Option<EffectiveElement> {
        let mut comps = Vec::new();
        for (c, &n) in &self.terms {
            if n < 0 {
                return None;
            }
            comps.extend(core::iter::repeat_n(c.clone(), n as usize));
        }
        Some(EffectiveElement { t: self.t.clone(), x: self.x.clone(), components: comps })
    }

    fn linear(&self, target: &GSet, op: impl Fn(&EffectiveElement) -> Result<EffectiveElement>) -> Result<Self> {
        let mut out = VirtualElement::zero(&self.t, target);
        for (c, &n) in &self.terms {
            let single = EffectiveElement { t: self.t.clone(), x: self.x.clone(), components: vec![c.clone()] };
            for d in op(&single)?.components {
                out.accumulate(d, n);
            }
        }
        Ok(out)
    }

    pub fn transfer(&self, f: &GMap) -> Result<Self> {
        self.linear(f.target(), |e| e.transfer(f))
    }

    pub fn restrict(&self, f: &GMap) -> Result<Self> {
        self.linear(f.source(), |e| e.restrict(f))
    }

    /// Norms are only evaluated on effective elements.
    pub fn norm(&self, _f: &GMap) -> Result<Self> {
        Err(Error::Unsupported("norm of a virtual element"))
    }

    pub fn degree_split(&self) -> BTreeMap<usize, VirtualElement> {
        let mut out: BTreeMap<usize, VirtualElement> = BTreeMap::new();
        for (c, &n) in &self.terms {
            out.entry(c.degree())
                .or_insert_with(|| VirtualElement::zero(&self.t, &self.x))
                .terms
                .insert(c.clone(), n);
        }
        out
    }
}

/// Canonical class of a bispan; the free-function form of [`Bispan::canonical`].
pub fn bispan_canonical(b: &Bispan) -> BispanClass {
    b.canonical()
}
