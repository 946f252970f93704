//! Two-level Green functors for `C_p` with polynomial rings over `Z/p`.
//!
//! Both examples have bottom level `Z/p[x]`, zero transfer and trivial Weyl
//! actions. A norm `n: R(C_p/e) -> R(C_p/C_p)` is determined by the image of
//! `x`, and a Tambara structure forces `r(n(x)) = x^p`. Polynomials are
//! truncated above a total degree cap `D`; products that lose terms set an
//! overflow flag instead of silently dropping them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::mackey::Report;
use crate::{Error, Limits, Result};

/// `Z/p[x_1..x_s]` truncated above total degree `cap`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolyRing {
    pub p: u32,
    pub vars: usize,
    pub cap: u32,
}

impl PolyRing {
    pub fn new(p: u32, vars: usize, cap: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PolyRing { p, vars, cap })
    }

    /// All exponent vectors of total degree at most `cap`, graded then lexicographic.
    pub fn monomials(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for d in 0..=self.cap {
            let mut cur = vec![0; self.vars];
            exps_of_degree(self.vars, 0, d, &mut cur, &mut out);
        }
        out
    }
}

fn exps_of_degree(vars: usize, i: usize, room: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if i == vars {
        if room == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for e in (0..=room).rev() {
        cur[i] = e;
        exps_of_degree(vars, i + 1, room - e, cur, out);
    }
    cur[i] = 0;
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// A truncated polynomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TruncPoly {
    ring: PolyRing,
    terms: BTreeMap<Vec<u32>, u32>,
    overflow: bool,
}

impl TruncPoly {
    pub fn zero(ring: PolyRing) -> Self {
        TruncPoly { ring, terms: BTreeMap::new(), overflow: false }
    }

    pub fn constant(ring: PolyRing, c: u32) -> Self {
        Self::monomial(ring, vec![0; ring.vars], c)
    }

    /// The variable `x_i` (0-based).
    pub fn var(ring: PolyRing, i: usize) -> Self {
        let mut e = vec![0; ring.vars];
        e[i] = 1;
        Self::monomial(ring, e, 1)
    }

    pub fn monomial(ring: PolyRing, exps: Vec<u32>, c: u32) -> Self {
        let mut out = Self::zero(ring);
        out.insert(exps, c as u64);
        out
    }

    fn insert(&mut self, exps: Vec<u32>, c: u64) {
        let c = (c % self.ring.p as u64) as u32;
        if exps.iter().sum::<u32>() > self.ring.cap {
            if c != 0 {
                self.overflow = true;
            }
            return;
        }
        let p = self.ring.p;
        let entry = self.terms.entry(exps.clone()).or_insert(0);
        *entry = (*entry + c) % p;
        if *entry == 0 {
            self.terms.remove(&exps);
        }
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, u32> {
        &self.terms
    }

    /// Whether some term above the cap was dropped to produce this value.
    pub fn overflowed(&self) -> bool {
        self.overflow
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::ShapeError(format!("polynomials over {:?} and {:?}", self.ring, other.ring)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = self.clone();
        out.overflow |= other.overflow;
        for (e, &c) in &other.terms {
            out.insert(e.clone(), c as u64);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let p = self.ring.p;
        TruncPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(e, &c)| (e.clone(), (p - c) % p)).collect(),
            overflow: self.overflow,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = Self::zero(self.ring);
        out.overflow = self.overflow || other.overflow;
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(e, c1 as u64 * c2 as u64);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut out = Self::constant(self.ring, 1);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Substitutes `x_i -> images[i]`; the result lives in the images' ring.
    pub fn substitute(&self, images: &[TruncPoly], target: PolyRing) -> Result<Self> {
        if images.len() != self.ring.vars || images.iter().any(|i| i.ring != target) || target.p != self.ring.p {
            return Err(Error::ShapeError(String::from("substitution does not match the variables")));
        }
        let mut out = Self::zero(target);
        out.overflow = self.overflow;
        for (e, &c) in &self.terms {
            let mut term = Self::constant(target, c);
            for (img, &k) in images.iter().zip(e) {
                term = term.mul(&img.pow(k)?)?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Text form with variable names `x` (one variable) or `x1, x2, ...`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let parts: Vec<String> = keys
            .into_iter()
            .map(|e| {
                let c = self.terms[e];
                let mut factors: Vec<String> = Vec::new();
                for (i, &k) in e.iter().enumerate() {
                    if k == 0 {
                        continue;
                    }
                    let name = if self.ring.vars == 1 { String::from("x") } else { format!("x{}", i + 1) };
                    factors.push(if k == 1 { name } else { format!("{name}^{k}") });
                }
                match (c, factors.is_empty()) {
                    (_, true) => format!("{c}"),
                    (1, false) => factors.join("*"),
                    _ => format!("{c}*{}", factors.join("*")),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())?;
        if self.overflow {
            write!(f, " (overflow)")?;
        }
        Ok(())
    }
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A Green functor for `C_p` with `R(C_p/e) = Z/p[x]`, zero transfer, trivial
/// conjugations, and restriction given by the images of the top generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenCpPresentation {
    pub p: u32,
    pub bottom: PolyRing,
    pub top: PolyRing,
    /// Image of each top generator in the bottom ring.
    pub restriction: Vec<TruncPoly>,
    pub transfer_zero: bool,
    pub trivial_conjugation: bool,
}

impl GreenCpPresentation {
    pub fn restrict(&self, f: &TruncPoly) -> Result<TruncPoly> {
        f.substitute(&self.restriction, self.bottom)
    }

    pub fn transfer(&self, f: &TruncPoly) -> Result<TruncPoly> {
        if f.ring != self.bottom {
            return Err(Error::ShapeError(String::from("transfer starts at the bottom level")));
        }
        Ok(TruncPoly::zero(self.top))
    }

    /// `x^p` in the bottom ring.
    pub fn frobenius_target(&self) -> TruncPoly {
        TruncPoly::monomial(self.bottom, vec![self.p], 1)
    }
}

fn check_cap(p: u32, d: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if d < p {
        return Err(Error::ShapeError(format!("degree cap {d} is below p = {p}")));
    }
    Ok(())
}

/// Top level `Z/p` (constants only), restriction the inclusion.
pub fn constant_top(p: u32, d: u32) -> Result<GreenCpPresentation> {
    check_cap(p, d)?;
    Ok(GreenCpPresentation {
        p,
        bottom: PolyRing::new(p, 1, d)?,
        top: PolyRing::new(p, 0, d)?,
        restriction: Vec::new(),
        transfer_zero: true,
        trivial_conjugation: true,
    })
}

/// Top level `Z/p[x_1..x_s]`, restriction sending every `x_i` to `x`.
pub fn polynomial_top(p: u32, s: usize, d: u32) -> Result<GreenCpPresentation> {
    check_cap(p, d)?;
    if s == 0 {
        return Err(Error::ShapeError(String::from("need at least one top generator")));
    }
    let bottom = PolyRing::new(p, 1, d)?;
    Ok(GreenCpPresentation {
        p,
        bottom,
        top: PolyRing::new(p, s, d)?,
        restriction: vec![TruncPoly::var(bottom, 0); s],
        transfer_zero: true,
        trivial_conjugation: true,
    })
}

/// All polynomials of the top ring, by coefficient vectors over the monomials.
fn all_top_polys(pres: &GreenCpPresentation, limits: &Limits) -> Result<Vec<TruncPoly>> {
    let monos = pres.top.monomials();
    let space = (pres.p as u128).checked_pow(monos.len() as u32).unwrap_or(u128::MAX);
    if space > limits.coefficient_cap as u128 {
        return Err(Error::ResourceBound { what: "coefficient space", needed: space, cap: limits.coefficient_cap });
    }
    let mut out = Vec::with_capacity(space as usize);
    let mut coeffs = vec![0u32; monos.len()];
    loop {
        let mut f = TruncPoly::zero(pres.top);
        for (m, &c) in monos.iter().zip(&coeffs) {
            f.insert(m.clone(), c as u64);
        }
        out.push(f);
        let mut i = monos.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < pres.p {
                break;
            }
            coeffs[i] = 0;
        }
    }
}

/// One candidate for `n(x)` and its restriction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateCheck {
    pub candidate: TruncPoly,
    pub restriction: TruncPoly,
    pub passes: bool,
}

/// Result of the exhaustive search for `n(x)` with `r(n(x)) = x^p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub p: u32,
    pub target: TruncPoly,
    pub target_is_constant: bool,
    pub candidates: Vec<CandidateCheck>,
    /// True when no candidate passes, so no Tambara structure exists.
    pub no_structure: bool,
}

/// Tries every element of the top ring as `n(x)`.
pub fn obstruction(pres: &GreenCpPresentation, limits: &Limits) -> Result<Certificate> {
    let target = pres.frobenius_target();
    let mut candidates = Vec::new();
    for f in all_top_polys(pres, limits)? {
        let r = pres.restrict(&f)?;
        let passes = !r.overflowed() && r == target;
        candidates.push(CandidateCheck { candidate: f, restriction: r, passes });
    }
    let no_structure = candidates.iter().all(|c| !c.passes);
    Ok(Certificate { p: pres.p, target_is_constant: target.is_constant(), target, candidates, no_structure })
}

/// The certificate for the constants-only example.
pub fn constant_top_obstruction(p: u32, d: u32, limits: &Limits) -> Result<Certificate> {
    obstruction(&constant_top(p, d)?, limits)
}

/// A norm structure, given by the image of `x`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct NormCandidate {
    pub image: TruncPoly,
}

/// All `n(x)` of degree at most `D` with `r(n(x)) = x^p`, sorted.
pub fn polynomial_top_norms(p: u32, s: usize, d: u32, limits: &Limits) -> Result<Vec<NormCandidate>> {
    let pres = polynomial_top(p, s, d)?;
    let cert = obstruction(&pres, limits)?;
    let mut out: Vec<NormCandidate> =
        cert.candidates.into_iter().filter(|c| c.passes).map(|c| NormCandidate { image: c.candidate }).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Checks that the ring map `x -> n(x)` is additive, multiplicative and
/// composes with restriction to the Frobenius, on all bottom elements of
/// degree at most `max_degree` (pairs whose products stay below the cap).
pub fn validate_candidate(pres: &GreenCpPresentation, c: &NormCandidate, max_degree: u32) -> Result<Report> {
    let mut rep = Report::default();
    let b = pres.bottom;
    let small = PolyRing { cap: max_degree, ..b };
    let elems: Vec<TruncPoly> = all_polys_of(small)
        .into_iter()
        .map(|f| {
            let mut g = TruncPoly::zero(b);
            for (e, &k) in &f.terms {
                g.insert(e.clone(), k as u64);
            }
            g
        })
        .collect();
    let norm = |g: &TruncPoly| g.substitute(core::slice::from_ref(&c.image), pres.top);
    for f in &elems {
        let nf = norm(f)?;
        let fp = f.pow(pres.p)?;
        if !fp.overflowed() && !nf.overflowed() {
            let r = pres.restrict(&nf)?;
            rep.check(r.overflowed() || r == fp, || format!("r(n({f})) = {r}, not ({f})^{}", pres.p));
        }
        for g in &elems {
            let (s, m) = (f.add(g)?, f.mul(g)?);
            let (ns, nm) = (norm(&s)?, norm(&m)?);
            let (sum, prod) = (nf.add(&norm(g)?)?, nf.mul(&norm(g)?)?);
            if !ns.overflowed() && !sum.overflowed() {
                rep.check(ns == sum, || format!("n is not additive on {f}, {g}"));
            }
            if !m.overflowed() && !nm.overflowed() && !prod.overflowed() {
                rep.check(nm == prod, || format!("n is not multiplicative on {f}, {g}"));
            }
        }
    }
    rep.check(pres.trivial_conjugation, || String::from("conjugations are not trivial"));
    Ok(rep)
}

fn all_polys_of(ring: PolyRing) -> Vec<TruncPoly> {
    let pres = GreenCpPresentation {
        p: ring.p,
        bottom: ring,
        top: ring,
        restriction: Vec::new(),
        transfer_zero: true,
        trivial_conjugation: true,
    };
    all_top_polys(&pres, &Limits { coefficient_cap: usize::MAX, ..Limits::default() }).unwrap_or_default()
}

/// Outcome of [`check_distinct`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinctReport {
    pub count: usize,
    /// Number of degree-`p` monomials in `s` variables.
    pub required: usize,
    pub duplicates: Vec<(usize, usize)>,
    pub distinct: bool,
}

/// Pairwise distinctness of norm images, and at least one structure per
/// degree-`p` monomial.
pub fn check_distinct(candidates: &[NormCandidate], p: u32, s: usize) -> DistinctReport {
    let mut duplicates = Vec::new();
    for i in 0..candidates.len() {
        for j in i + 1..candidates.len() {
            if candidates[i] == candidates[j] {
                duplicates.push((i, j));
            }
        }
    }
    let required = binomial(s + p as usize - 1, p as usize);
    DistinctReport {
        count: candidates.len(),
        required,
        distinct: duplicates.is_empty() && candidates.len() >= required,
        duplicates,
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The degree-`p` monomials of the top ring.
pub fn degree_p_monomials(pres: &GreenCpPresentation) -> Vec<TruncPoly> {
    pres.top
        .monomials()
        .into_iter()
        .filter(|e| e.iter().sum::<u32>() == pres.p)
        .map(|e| TruncPoly::monomial(pres.top, e, 1))
        .collect()
}
