//! Dependent products of finite G-sets (exponential diagrams).
//!
//! For `i: X -> Y` and `j: Y -> Z`, the dependent product `Π` consists of the
//! pairs `(z, s)` where `s` is a section of `i` over the fiber `j^-1(z)`.
//! `G` acts by conjugation: `(g.s)(y) = g . s(g^-1 y)`. Together with
//! `A = Y x_Z Π`, the evaluation `e: A -> X`, the projection `A -> Π` and
//! `p: Π -> Z` this forms the exponential diagram
//!
//! ```text
//!   A ------> Π
//!   |e        |p
//!   X -i-> Y -j-> Z
//! ```

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::gset::{pullback, GMap, GSet};
use crate::{Error, Limits, Result};

/// A dependent product with all of its structure maps.
#[derive(Clone, Debug)]
pub struct ExponentialDiagram {
    pub i: GMap,
    pub j: GMap,
    /// The dependent product `Π`.
    pub pi: GSet,
    /// `p: Π -> Z`.
    pub p: GMap,
    /// `A = Y x_Z Π`.
    pub a: GSet,
    /// Evaluation `e: A -> X`.
    pub e: GMap,
    /// Projection `A -> Π`.
    pub a_to_pi: GMap,
    /// Projection `A -> Y`.
    pub a_to_y: GMap,
    /// The section of every point of `Π`, as images of the sorted fiber of `j`.
    pub sections: Vec<Vec<usize>>,
    offset: Vec<usize>,
    pos_in_i: Vec<usize>,
    i_fiber_len: Vec<usize>,
    j_fibers: Vec<Vec<usize>>,
}

impl ExponentialDiagram {
    pub fn x(&self) -> &GSet {
        self.i.source()
    }
    pub fn y(&self) -> &GSet {
        self.i.target()
    }
    pub fn z(&self) -> &GSet {
        self.j.target()
    }
    /// The distributor `(e, A -> Π, p)` for `(i, j)`.
    pub fn distributor(&self) -> (&GMap, &GMap, &GMap) {
        (&self.e, &self.a_to_pi, &self.p)
    }

    /// Point of `Π` for the section over `j^-1(z)` with the given images
    /// (listed along the sorted fiber), if it is a section.
    pub fn section_index(&self, z: usize, images: &[usize]) -> Option<usize> {
        let fib = &self.j_fibers[z];
        if fib.len() != images.len() {
            return None;
        }
        let mut idx = 0;
        for (&yy, &xx) in fib.iter().zip(images) {
            if xx >= self.pos_in_i.len() || self.i.apply(xx) != yy {
                return None;
            }
            idx = idx * self.i_fiber_len[yy] + self.pos_in_i[xx];
        }
        Some(self.offset[z] + idx)
    }
}

/// Dependent product with the default section cap.
pub fn dependent_product(i: &GMap, j: &GMap) -> Result<ExponentialDiagram> {
    dependent_product_with_cap(i, j, Limits::default().section_cap)
}

/// Dependent product; errors if more than `cap` sections would be built.
///
/// Points of `Π` are ordered by `z`, then lexicographically by the image tuple
/// of the section over the sorted fiber `j^-1(z)`. Empty fibers contribute
/// one point (the empty section).
pub fn dependent_product_with_cap(i: &GMap, j: &GMap, cap: usize) -> Result<ExponentialDiagram> {
    if i.target() != j.source() {
        return Err(Error::NotComposable);
    }
    let (x, y, z) = (i.source(), i.target(), j.target());
    let group = x.group().clone();
    let i_fib = i.fibers();
    let j_fib = j.fibers();
    let mut pos_in_i = vec![0; x.size()];
    for fib in &i_fib {
        for (k, &p) in fib.iter().enumerate() {
            pos_in_i[p] = k;
        }
    }
    let mut pos_in_j = vec![0; y.size()];
    for fib in &j_fib {
        for (k, &p) in fib.iter().enumerate() {
            pos_in_j[p] = k;
        }
    }

    // count sections per z and lay them out
    let mut offset = Vec::with_capacity(z.size());
    let mut total: u128 = 0;
    for fib in &j_fib {
        offset.push(total as usize);
        let count = fib.iter().fold(1u128, |acc, &yy| acc.saturating_mul(i_fib[yy].len() as u128));
        total = total.saturating_add(count);
        if total > cap as u128 {
            return Err(Error::ResourceBound { what: "dependent product sections", needed: total, cap });
        }
    }
    let total = total as usize;

    // decode all sections; digits are positions within the i-fibers
    let mut base = Vec::with_capacity(total);
    let mut sections = Vec::with_capacity(total);
    for (zz, fib) in j_fib.iter().enumerate() {
        let radix: Vec<usize> = fib.iter().map(|&yy| i_fib[yy].len()).collect();
        let count: usize = radix.iter().product();
        let mut digits = vec![0usize; fib.len()];
        for _ in 0..count {
            base.push(zz);
            sections.push(fib.iter().zip(&digits).map(|(&yy, &d)| i_fib[yy][d]).collect::<Vec<_>>());
            for k in (0..digits.len()).rev() {
                digits[k] += 1;
                if digits[k] < radix[k] {
                    break;
                }
                digits[k] = 0;
            }
        }
    }
    debug_assert_eq!(sections.len(), total);

    let index_of = |zz: usize, s: &[usize]| -> usize {
        let fib = &j_fib[zz];
        let mut idx = 0;
        for (&yy, &xx) in fib.iter().zip(s) {
            idx = idx * i_fib[yy].len() + pos_in_i[xx];
        }
        offset[zz] + idx
    };

    let pi = GSet::from_fn(&group, total, |g, q| {
        let zz = base[q];
        let gz = z.act(g, zz);
        let ginv = group.inv(g);
        // (g.s)(y') = g . s(g^-1 y') for y' over gz
        let s = &sections[q];
        let image: Vec<usize> = j_fib[gz]
            .iter()
            .map(|&yp| {
                let y0 = y.act(ginv, yp);
                x.act(g, s[pos_in_j[y0]])
            })
            .collect();
        index_of(gz, &image)
    });
    let p = GMap::new_unchecked(&pi, z, base.clone());

    let pb = pullback(j, &p)?;
    let e_values = (0..pb.object.size())
        .map(|q| {
            let (yy, pp) = (pb.left.apply(q), pb.right.apply(q));
            sections[pp][pos_in_j[yy]]
        })
        .collect();
    let e = GMap::new_unchecked(&pb.object, x, e_values);
    Ok(ExponentialDiagram {
        i: i.clone(),
        j: j.clone(),
        pi,
        p,
        a: pb.object.clone(),
        e,
        a_to_pi: pb.right,
        a_to_y: pb.left,
        sections,
        offset,
        pos_in_i,
        i_fiber_len: i_fib.iter().map(Vec::len).collect(),
        j_fibers: j_fib,
    })
}

/// Isomorphism witnessing that a diagram is exponential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentialWitness {
    /// `B -> Π`.
    pub on_b: GMap,
    /// `A -> Y x_Z Π`.
    pub on_a: GMap,
}

/// Decides whether
///
/// ```text
///   A --g--> B
///   |f       |h
///   X -i-> Y -j-> Z
/// ```
///
/// is an exponential diagram, i.e. isomorphic (fixing `X -> Y -> Z`) to the
/// dependent product of `(i, j)`. Returns the isomorphism when it is.
pub fn is_exponential(
    f: &GMap,
    g: &GMap,
    h: &GMap,
    i: &GMap,
    j: &GMap,
    cap: usize,
) -> Result<Option<ExponentialWitness>> {
    if f.source() != g.source() || g.target() != h.source() || f.target() != i.source() || i.target() != j.source()
    {
        return Err(Error::ShapeError("maps do not have the distributor shape".into()));
    }
    if h.target() != j.target() {
        return Err(Error::ShapeError("B and Z do not match".into()));
    }
    let a = f.source();
    let b = g.target();
    if let Some(q) = (0..a.size()).find(|&q| j.apply(i.apply(f.apply(q))) != h.apply(g.apply(q))) {
        return Err(Error::ShapeError(format!("square does not commute at point {q}")));
    }
    let exp = dependent_product_with_cap(i, j, cap)?;

    // (i f, g): A -> Y x_Z B must be a bijection
    let yb = pullback(j, h)?;
    let if_map = f.then(i)?;
    let a_to_yb = yb.lift(&if_map, g)?;
    if !a_to_yb.is_bijective() {
        return Ok(None);
    }

    // b |-> (h(b), y |-> f(a) for the unique a over (y, b))
    let j_fib = j.fibers();
    let inv = a_to_yb.inverse().expect("bijective");
    let mut on_b = Vec::with_capacity(b.size());
    for bb in 0..b.size() {
        let zz = h.apply(bb);
        let section: Vec<usize> = j_fib[zz]
            .iter()
            .map(|&yy| f.apply(inv.apply(yb.index(yy, bb).expect("over the same z"))))
            .collect();
        match exp.section_index(zz, &section) {
            Some(q) => on_b.push(q),
            None => return Ok(None),
        }
    }
    let on_b = GMap::new_unchecked(b, &exp.pi, on_b);
    if !on_b.is_bijective() {
        return Ok(None);
    }
    let on_b = match GMap::new(b, &exp.pi, on_b.values().to_vec()) {
        Ok(m) => m,
        Err(_) => return Ok(None),
    };
    let a_pb = pullback(&exp.j, &exp.p)?;
    let on_a = a_pb.lift(&if_map, &g.then(&on_b)?)?;
    if !on_a.is_bijective() || on_a.then(&exp.e)? != *f {
        return Ok(None);
    }
    Ok(Some(ExponentialWitness { on_b, on_a }))
}

/// Pulls the dependent product of `(i, j)` back along `k: W -> Z` and tests
/// it against the pulled-back pair `(g, h)`:
///
/// ```text
///   X -i-> Y -j-> Z
///   |      |      |k
///   Q -g-> P -h-> W
/// ```
pub fn pasting_pullback(i: &GMap, j: &GMap, k: &GMap, cap: usize) -> Result<Option<ExponentialWitness>> {
    let exp = dependent_product_with_cap(i, j, cap)?;
    let pw = pullback(j, k)?;
    let qp = pullback(i, &pw.left)?;
    let (g, h) = (&qp.right, &pw.right);
    // B' = Π x_Z W and A' = A x_Π B'
    let bw = pullback(&exp.p, k)?;
    let ab = pullback(&exp.a_to_pi, &bw.left)?;
    let to_p = pw.lift(&ab.left.then(&exp.a_to_y)?, &ab.right.then(&bw.right)?)?;
    let f = qp.lift(&ab.left.then(&exp.e)?, &to_p)?;
    is_exponential(&f, &ab.right, &bw.right, g, h, cap)
}

/// The outer pentagon of the distributive law for `V -i-> X -j-> Y -k-> Z`:
/// the dependent product of `(j, k)`, its pullback `P = V x_X A`, and the
/// dependent product of `(P -> A, A -> B)`, tested against `(j i, k)`.
pub fn pasting_distributive(i: &GMap, j: &GMap, k: &GMap, cap: usize) -> Result<Option<ExponentialWitness>> {
    let outer = dependent_product_with_cap(j, k, cap)?;
    let pb = pullback(i, &outer.e)?;
    let inner = dependent_product_with_cap(&pb.right, &outer.a_to_pi, cap)?;
    let hg = inner.e.then(&pb.left)?;
    let qp = inner.p.then(&outer.p)?;
    is_exponential(&hg, &inner.a_to_pi, &qp, &i.then(j)?, k, cap)
}

/// The outer rectangle of functoriality for `V -i-> X -j-> Y -k-> Z`:
/// the dependent products of `(i, j)` and of `(B -> Y, k)`, pasted along
/// the pullback `Q = A x_B C`, tested against `(i, k j)`.
pub fn pasting_functorial(i: &GMap, j: &GMap, k: &GMap, cap: usize) -> Result<Option<ExponentialWitness>> {
    let lower = dependent_product_with_cap(i, j, cap)?;
    let upper = dependent_product_with_cap(&lower.p, k, cap)?;
    let q = pullback(&lower.a_to_pi, &upper.e)?;
    let hg = q.left.then(&lower.e)?;
    let qp = q.right.then(&upper.a_to_pi)?;
    is_exponential(&hg, &qp, &upper.p, i, &j.then(k)?, cap)
}
