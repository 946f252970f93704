//! Graph subgroups of `G x S_n` and the comparison elements `Ξ_{H,φ}`.
//!
//! A subgroup of `G x S_n` meeting `1 x S_n` trivially is the graph of a
//! homomorphism `φ: H -> S_n`. For each such pair the `H`-set `E_φ = T^n`
//! of functions `{0..n-1} -> T` carries the twisted action
//! `(h.f)(j) = h f(φ(h)^-1 j)`, and `Ξ_{H,φ}` is the degree `n` element
//!
//! ```text
//! T <-eval- G x_H (E_φ x n) -proj-> G x_H E_φ = G x_H E_φ
//! ```
//!
//! of `F_T(G x_H E_φ)`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::bispan::{Bispan, Component, EffectiveElement};
use crate::group::{all_subgroups, homs_to_sym, GroupHom, GroupRef, Subgroup, SymmetricGroup};
use crate::gset::{induce, pullback, GMap, GSet, Induced};
use crate::mackey::Report;
use crate::tambara::ft_basis;
use crate::{Error, Limits, Result};

/// A pair `(H, φ: H -> S_n)`, standing for the graph `H^φ ≤ G x S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiSubgroup {
    pub phi: GroupHom,
}

impl PhiSubgroup {
    pub fn new(phi: GroupHom) -> Self {
        debug_assert!(phi.is_homomorphism());
        PhiSubgroup { phi }
    }

    pub fn h(&self) -> &Subgroup {
        &self.phi.source
    }

    pub fn n(&self) -> usize {
        self.phi.target.degree()
    }

    /// Permutation `φ(h)` for `h` in `H`.
    pub fn perm(&self, h: usize) -> &[usize] {
        self.phi.image_perm(h)
    }

    /// The graph as a list of elements `(h, φ(h))`.
    pub fn graph(&self) -> Vec<(usize, usize)> {
        self.h().elements().iter().map(|&h| (h, self.phi.image(h))).collect()
    }

    /// Graphs meet `1 x S_n` only in the identity.
    pub fn meets_sym_trivially(&self) -> bool {
        let e = self.h().group().identity();
        self.graph().iter().filter(|&&(h, _)| h == e).count() == 1
    }
}

/// All pairs `(H, φ)` with `φ: H -> S_n`, over all subgroups `H`.
pub fn family_fgn(group: &GroupRef, n: usize, limits: &Limits) -> Result<Vec<PhiSubgroup>> {
    let mut out = Vec::new();
    for h in all_subgroups(group) {
        out.extend(homs_to_sym(&h, n, limits)?.into_iter().map(PhiSubgroup::new));
    }
    Ok(out)
}

fn inverse_perm(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

fn encode(f: &[usize], base: usize) -> usize {
    f.iter().fold(0, |acc, &v| acc * base + v)
}

fn decode(mut q: usize, base: usize, n: usize) -> Vec<usize> {
    let mut f = vec![0; n];
    for slot in f.iter_mut().rev() {
        *slot = q % base;
        q /= base;
    }
    f
}

/// `E_φ`: functions `{0..n-1} -> T` with the twisted action, as an `H`-set
/// over `H.to_group()`. A function is encoded in base `|T|` with `f(0)` most
/// significant.
pub fn exp_phi(t: &GSet, p: &PhiSubgroup, limits: &Limits) -> Result<GSet> {
    let n = p.n();
    let size = (t.size() as u128).pow(n as u32);
    if size > limits.exponential_cap as u128 {
        return Err(Error::ResourceBound { what: "function-set exponential", needed: size, cap: limits.exponential_cap });
    }
    let h = p.h();
    let hg: GroupRef = Arc::new(h.to_group());
    let base = t.size();
    let rows: Vec<Vec<usize>> = h
        .elements()
        .iter()
        .map(|&g| {
            let inv = inverse_perm(p.perm(g));
            (0..size as usize)
                .map(|q| {
                    let f = decode(q, base, n);
                    let moved: Vec<usize> = (0..n).map(|j| t.act(g, f[inv[j]])).collect();
                    encode(&moved, base)
                })
                .collect()
        })
        .collect();
    GSet::new(&hg, &rows)
}

/// `E_φ x n` with the diagonal action; point `q * n + m` is `(f_q, m)`.
fn exp_times_n(p: &PhiSubgroup, e: &GSet) -> Result<GSet> {
    let n = p.n();
    let rows: Vec<Vec<usize>> = p
        .h()
        .elements()
        .iter()
        .enumerate()
        .map(|(k, &g)| {
            let perm = p.perm(g);
            (0..e.size() * n).map(|q| e.act(k, q / n) * n + perm[q % n]).collect()
        })
        .collect();
    GSet::new(e.group(), &rows)
}

/// `Ξ_{H,φ}` with the G-sets it is built from.
#[derive(Clone, Debug)]
pub struct XiGenerator {
    pub phi: PhiSubgroup,
    /// `E_φ` as an `H`-set.
    pub exp: GSet,
    /// `G x_H E_φ`, the level of the element.
    pub level: Induced,
    /// `G x_H (E_φ x n)`.
    pub fibers: Induced,
    pub bispan: Bispan,
    pub element: EffectiveElement,
}

/// Builds `Ξ_{H,φ}` in `F_T(G x_H E_φ)`.
pub fn xi_generator(p: &PhiSubgroup, t: &GSet, limits: &Limits) -> Result<XiGenerator> {
    let group = t.group().clone();
    let h = p.h();
    let n = p.n();
    let e = exp_phi(t, p, limits)?;
    let en = exp_times_n(p, &e)?;
    let level = induce(&group, h, &e)?;
    let fibers = induce(&group, h, &en)?;
    let base = t.size();
    let len = en.size();
    let a: Vec<usize> = (0..fibers.object.size())
        .map(|q| {
            let (c, r) = (q / len.max(1), q % len.max(1));
            let f = decode(r / n, base, n);
            t.act(fibers.cosets.reps[c], f[r % n])
        })
        .collect();
    let b: Vec<usize> = (0..fibers.object.size()).map(|q| (q / len) * e.size() + (q % len) / n).collect();
    let am = GMap::new(&fibers.object, t, a)?;
    let bm = GMap::new(&fibers.object, &level.object, b)?;
    let bispan = Bispan::new(&am, &bm, &GMap::identity(&level.object))?;
    let element = bispan.canonical();
    Ok(XiGenerator { phi: p.clone(), exp: e, level, fibers, bispan, element })
}

/// Whether `G/L^λ -> G/H^φ` sending the identity coset to `(g, σ)H^φ`
/// exists: `L ⊆ g H g^-1` and `λ(l) = σ φ(g^-1 l g) σ^-1` on `L`.
pub fn orbit_map_condition(l: &PhiSubgroup, h: &PhiSubgroup, g: usize, sigma: &[usize]) -> bool {
    let group = l.h().group();
    if l.n() != h.n() || sigma.len() != l.n() {
        return false;
    }
    let sinv = inverse_perm(sigma);
    l.h().elements().iter().all(|&x| {
        let y = group.conj(group.inv(g), x);
        if !h.h().contains(y) {
            return false;
        }
        let phi = h.perm(y);
        let lam = l.perm(x);
        (0..sigma.len()).all(|i| lam[i] == sigma[phi[sinv[i]]])
    })
}

/// Checks the comparison map `[k, f, m] -> [k g, g^-1 f σ, σ^-1 m]` from
/// the `L`-construction to the `H`-construction: well defined,
/// equivariant, compatible with evaluation and projection, with a pullback
/// square, so that `Ξ_{H,φ}` restricts to `Ξ_{L,λ}`.
///
/// With `twist = false` the permutation `σ` is left out of the formula,
/// which is the negative control.
pub fn xi_naturality_check(
    l: &PhiSubgroup,
    h: &PhiSubgroup,
    g: usize,
    sigma: &[usize],
    t: &GSet,
    twist: bool,
    limits: &Limits,
) -> Result<Report> {
    let mut rep = Report::default();
    let group = t.group().clone();
    let n = l.n();
    let base = t.size();
    let xl = xi_generator(l, t, limits)?;
    let xh = xi_generator(h, t, limits)?;
    let id: Vec<usize> = (0..n).collect();
    let s: &[usize] = if twist { sigma } else { &id };
    let sinv = inverse_perm(s);
    let ginv = group.inv(g);
    let el = xl.exp.size();
    let len_l = el * n;
    let len_h = xh.exp.size() * n;

    let en_h = exp_times_n(h, &xh.exp)?;
    // image of [k, (f, m)] for an arbitrary representative k
    let image_u = |k: usize, f: &[usize], m: usize| -> Option<usize> {
        let moved: Vec<usize> = (0..n).map(|j| t.act(ginv, f[s[j]])).collect();
        let kg = group.mul(k, g);
        let c = xh.fibers.cosets.coset_of[kg];
        let r = group.mul(group.inv(xh.fibers.cosets.reps[c]), kg);
        let pos = h.h().position(r)?;
        // [r_c r, x] = [r_c, r x]
        let q = encode(&moved, base) * n + sinv[m];
        Some(c * len_h + en_h.act(pos, q))
    };

    let nu = xl.fibers.object.size();
    let mut psi_u = vec![usize::MAX; nu];
    let mut defined = true;
    let en_l = exp_times_n(l, &xl.exp)?;
    for k in group.elements() {
        for q in 0..len_l {
            let f = decode(q / n, base, n);
            let m = q % n;
            let src = xl.fibers.class_of(l.h(), k, &en_l, q);
            match image_u(k, &f, m) {
                Some(img) if psi_u[src] == usize::MAX || psi_u[src] == img => psi_u[src] = img,
                _ => defined = false,
            }
        }
    }
    rep.check(defined, || format!("comparison map for g={g} σ={sigma:?} is not well defined"));
    if !defined {
        return Ok(rep);
    }
    let psi_u = GMap::new(&xl.fibers.object, &xh.fibers.object, psi_u);
    rep.check(psi_u.is_ok(), || format!("comparison map for g={g} σ={sigma:?} is not equivariant"));
    let Ok(psi_u) = psi_u else { return Ok(rep) };

    // the induced map on levels [k, f] -> [k g, g^-1 f σ]
    let psi_v: Vec<usize> = (0..xl.level.object.size())
        .map(|p| psi_u.apply(p * n) / n)
        .collect();
    let psi_v = GMap::new(&xl.level.object, &xh.level.object, psi_v);
    rep.check(psi_v.is_ok(), || format!("level map for g={g} σ={sigma:?} is not equivariant"));
    let Ok(psi_v) = psi_v else { return Ok(rep) };

    let (al, bl) = (xl.bispan.a(), xl.bispan.b());
    let (ah, bh) = (xh.bispan.a(), xh.bispan.b());
    rep.check((0..nu).all(|u| ah.apply(psi_u.apply(u)) == al.apply(u)), || {
        format!("evaluation triangle fails for g={g} σ={sigma:?}")
    });
    rep.check((0..nu).all(|u| bh.apply(psi_u.apply(u)) == psi_v.apply(bl.apply(u))), || {
        format!("projection square fails for g={g} σ={sigma:?}")
    });
    let pb = pullback(&psi_v, &bh)?;
    let comparison: Vec<usize> = (0..nu).filter_map(|u| pb.index(bl.apply(u), psi_u.apply(u))).collect();
    let is_pullback = comparison.len() == nu && pb.object.size() == nu && {
        let mut c = comparison.clone();
        c.sort_unstable();
        c.dedup();
        c.len() == nu
    };
    rep.check(is_pullback, || format!("projection square is not a pullback for g={g} σ={sigma:?}"));
    rep.check(xh.element.restrict(&psi_v)? == xl.element, || {
        format!("Ξ does not restrict to Ξ along g={g} σ={sigma:?}")
    });
    Ok(rep)
}

/// Every connecting `(g, σ)` between members of the family, checked.
/// `twist` is passed through to [`xi_naturality_check`].
pub fn xi_naturality_all(t: &GSet, n: usize, twist: bool, limits: &Limits) -> Result<Report> {
    let group = t.group();
    let fam = family_fgn(group, n, limits)?;
    let sym = SymmetricGroup::with_limits(n, limits)?;
    let mut rep = Report::default();
    for l in &fam {
        for h in &fam {
            for g in group.elements() {
                for si in sym.group().elements() {
                    let sigma = sym.perm(si);
                    if orbit_map_condition(l, h, g, sigma) {
                        rep.merge(xi_naturality_check(l, h, g, sigma, t, twist, limits)?);
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// A surjectivity witness for one basis element of `F_T[n](G/G)`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub component: Component,
    pub h: Vec<usize>,
    /// `φ(h)` as an image tuple, for each `h` in order.
    pub phi: Vec<Vec<usize>>,
    /// `f'(j) = a(u_j)` for the ordered fiber `u_0 < ... < u_{n-1}`.
    pub f_prime: Vec<usize>,
    pub verified: bool,
}

/// For every degree `n` basis element at the point, reconstructs it as the
/// transfer to the point of the restriction of `Ξ_{H,φ}` along a span.
pub fn xi_surjectivity(t: &GSet, n: usize, limits: &Limits) -> Result<Vec<Witness>> {
    let group = t.group().clone();
    let pt = GSet::point(&group);
    let sym = Arc::new(SymmetricGroup::with_limits(n, limits)?);
    let mut out = Vec::new();
    for comp in ft_basis(t, &pt, n, limits)? {
        let b = comp.realize(t, &pt);
        let k = Subgroup::new(&group, &comp.stabilizer)?;
        // V = G/K realized with the identity coset at 0
        let fiber: Vec<usize> = (0..b.u().size()).filter(|&u| b.b().apply(u) == 0).collect();
        if fiber.len() != n {
            return Err(Error::WitnessFailed(format!("fiber of {} has {} points", crate::tambara::component_label(&comp), fiber.len())));
        }
        let values: Vec<usize> = k
            .elements()
            .iter()
            .map(|&g| {
                let perm: Vec<usize> = fiber
                    .iter()
                    .map(|&u| fiber.iter().position(|&w| w == b.u().act(g, u)).expect("K preserves the fiber"))
                    .collect();
                sym.index_of(&perm)
            })
            .collect();
        let phi = PhiSubgroup::new(GroupHom { source: k.clone(), target: sym.clone(), values });
        let f_prime: Vec<usize> = fiber.iter().map(|&u| b.a().apply(u)).collect();
        let xi = xi_generator(&phi, t, limits)?;
        let fq = encode(&f_prime, t.size());
        // span pt <- G/K -> G x_H E_φ, gK -> [g, f']
        let vk = crate::gset::coset_space(&group, k.elements());
        let s: Vec<usize> = vk.reps.iter().map(|&g| xi.level.class_of(&k, g, &xi.exp, fq)).collect();
        let s = GMap::new(&vk.set, &xi.level.object, s)
            .map_err(|_| Error::WitnessFailed(format!("span for {} is not equivariant", crate::tambara::component_label(&comp))))?;
        let got = xi.element.restrict(&s)?.transfer(&GMap::to_point(&vk.set))?;
        let want = EffectiveElement::from_components(t, &pt, vec![comp.clone()]);
        let verified = got == want;
        if !verified {
            return Err(Error::WitnessFailed(crate::tambara::component_label(&comp)));
        }
        out.push(Witness {
            component: comp,
            h: k.elements().to_vec(),
            phi: phi.h().elements().iter().map(|&g| phi.perm(g).to_vec()).collect(),
            f_prime,
            verified,
        });
    }
    Ok(out)
}

/// Text form of a witness.
pub fn witness_label(w: &Witness) -> String {
    format!("H={:?} φ={:?} f'={:?}", w.h, w.phi, w.f_prime)
}
