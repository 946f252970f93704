//! Random G-sets and equivariant maps for the randomized property commands.

use rand::seq::SliceRandom;
use rand::Rng;
use tambara_core::group::{all_subgroups, GroupRef};
use tambara_core::gset::{coproduct_all, coset_space, GMap, GSet};

/// A random G-set with at most `max_size` points, built from random orbits.
pub fn gset<R: Rng>(group: &GroupRef, max_size: usize, rng: &mut R) -> GSet {
    let subs = all_subgroups(group);
    let mut parts = Vec::new();
    let mut room = max_size;
    let target = rng.gen_range(0..=max_size);
    while room > 0 && max_size - room < target {
        let fits: Vec<_> = subs.iter().filter(|h| h.index() <= room).collect();
        let Some(h) = fits.choose(rng) else { break };
        room -= h.index();
        parts.push(coset_space(group, h.elements()).set);
    }
    coproduct_all(group, &parts).0
}

/// A uniformly chosen equivariant map `x -> y`, if one exists: each orbit
/// representative goes to a random point fixed by its stabilizer.
pub fn gmap<R: Rng>(x: &GSet, y: &GSet, rng: &mut R) -> Option<GMap> {
    let mut values = vec![usize::MAX; x.size()];
    for orbit in x.orbit_decompose() {
        let choices = y.fixed_points(orbit.stabilizer.elements());
        let &target = choices.choose(rng)?;
        let group = x.group();
        for g in group.elements() {
            values[x.act(g, orbit.representative)] = y.act(g, target);
        }
    }
    GMap::new(x, y, values).ok()
}

/// A random map out of `x` into a fresh random G-set.
pub fn gmap_from<R: Rng>(x: &GSet, max_size: usize, rng: &mut R) -> GMap {
    let max_size = max_size.max(1);
    loop {
        let y = gset(x.group(), max_size, rng);
        if let Some(f) = gmap(x, &y, rng) {
            return f;
        }
    }
}
