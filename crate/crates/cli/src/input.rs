//! JSON input formats.
//!
//! * group: a builtin name (`trivial`, `C<n>`, `D<n>` of order `2n`, `S<n>`)
//!   or `{"order": n, "mult": [[...]]}`;
//! * G-set: `{"group": <group>, "size": m, "action": [[...]]}` with one row
//!   per group element, or `{"group": <group>, "orbits": [[...], ...]}`
//!   listing one stabilizer per orbit;
//! * map: `{"source": <G-set>, "target": <G-set>, "values": [...]}`;
//! * context: `{"group": <group>, "generator": "T", "sets": {name: <G-set>},
//!   "maps": {name: {"source": name, "target": name, "values": [...]}}}`.
//!
//! The `group` key of a G-set may be omitted when a group is supplied
//! separately.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use serde::Deserialize;
use tambara_core::group::{validate_group, FiniteGroup, GroupRef, SymmetricGroup};
use tambara_core::gset::{from_orbits, GMap, GSet};
use tambara_core::tnr::MapContext;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Name(String),
    Table { order: usize, mult: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GSetSpec {
    #[serde(default)]
    pub group: Option<GroupSpec>,
    #[serde(default)]
    pub size: Option<usize>,
    #[serde(default)]
    pub action: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub orbits: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub source: GSetSpec,
    pub target: GSetSpec,
    pub values: Vec<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedMapSpec {
    pub source: String,
    pub target: String,
    pub values: Vec<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextSpec {
    pub group: GroupSpec,
    #[serde(default = "default_generator")]
    pub generator: String,
    pub sets: BTreeMap<String, GSetSpec>,
    #[serde(default)]
    pub maps: BTreeMap<String, NamedMapSpec>,
}

fn default_generator() -> String {
    "T".into()
}

pub fn builtin_group(name: &str) -> Option<GroupRef> {
    let lower = name.to_ascii_lowercase();
    if lower == "trivial" || lower == "e" {
        return Some(Arc::new(FiniteGroup::trivial()));
    }
    let (kind, n) = lower.split_at(1);
    let n: usize = n.parse().ok().filter(|&n| n > 0)?;
    match kind {
        "c" if n <= 64 => Some(Arc::new(FiniteGroup::cyclic(n))),
        "d" if n <= 32 => Some(Arc::new(FiniteGroup::dihedral(n))),
        "s" if n <= 5 => Some(SymmetricGroup::new(n).group().clone()),
        _ => None,
    }
}

impl GroupSpec {
    pub fn resolve(&self) -> anyhow::Result<GroupRef> {
        match self {
            GroupSpec::Name(name) => builtin_group(name).ok_or_else(|| anyhow!("unknown builtin group `{name}`")),
            GroupSpec::Table { order, mult } => {
                if mult.len() != *order {
                    bail!("group order {order} does not match {} table rows", mult.len());
                }
                Ok(Arc::new(validate_group(mult)?))
            }
        }
    }
}

impl GSetSpec {
    pub fn resolve(&self, default_group: Option<&GroupRef>) -> anyhow::Result<GSet> {
        let group = match (&self.group, default_group) {
            (Some(g), _) => g.resolve()?,
            (None, Some(g)) => g.clone(),
            (None, None) => bail!("G-set does not name its group"),
        };
        match (&self.action, &self.orbits) {
            (Some(action), None) => {
                let x = GSet::new(&group, action)?;
                if let Some(size) = self.size {
                    if size != x.size() {
                        bail!("G-set size {size} does not match its action rows of length {}", x.size());
                    }
                }
                Ok(x)
            }
            (None, Some(orbits)) => Ok(from_orbits(&group, orbits)?),
            (None, None) if self.size == Some(0) => Ok(GSet::empty(&group)),
            _ => bail!("G-set needs exactly one of `action` or `orbits`"),
        }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> anyhow::Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// A group argument: a builtin name, or a path to a group file.
pub fn load_group(arg: &str) -> anyhow::Result<GroupRef> {
    if let Some(g) = builtin_group(arg) {
        return Ok(g);
    }
    let spec: GroupSpec = read_json(Path::new(arg))?;
    spec.resolve()
}

pub fn load_gset(path: &Path, default_group: Option<&GroupRef>) -> anyhow::Result<GSet> {
    let spec: GSetSpec = read_json(path)?;
    spec.resolve(default_group)
}

pub fn load_map(path: &Path, default_group: Option<&GroupRef>) -> anyhow::Result<GMap> {
    let spec: MapSpec = read_json(path)?;
    let source = spec.source.resolve(default_group)?;
    let target = spec.target.resolve(Some(source.group()))?;
    Ok(GMap::new(&source, &target, spec.values)?)
}

pub fn context_from_spec(spec: &ContextSpec) -> anyhow::Result<MapContext> {
    let group = spec.group.resolve()?;
    let t = spec
        .sets
        .get(&spec.generator)
        .ok_or_else(|| anyhow!("generator `{}` is not among the sets", spec.generator))?
        .resolve(Some(&group))?;
    let mut ctx = MapContext::new(&group, &spec.generator, t);
    for (name, s) in &spec.sets {
        if *name != spec.generator {
            ctx.add_set(name, s.resolve(Some(&group))?)?;
        }
    }
    for (name, m) in &spec.maps {
        ctx.add_map(name, &m.source, &m.target, m.values.clone())?;
    }
    Ok(ctx)
}

pub fn load_context(path: &Path) -> anyhow::Result<MapContext> {
    context_from_spec(&read_json(path)?)
}

/// Parses a comma-separated list of group elements such as `0,2`.
pub fn parse_elements(s: &str) -> anyhow::Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| p.trim().parse::<usize>().with_context(|| format!("bad element `{p}`")))
        .collect()
}
