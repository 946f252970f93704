//! JSON encodings of core values. Object keys are sorted, so output is
//! byte-deterministic.

use serde_json::{json, Value};
use tambara_core::bispan::{Bispan, Component, EffectiveElement};
use tambara_core::exponential::{ExponentialDiagram, ExponentialWitness};
use tambara_core::green::{Certificate, TruncPoly};
use tambara_core::group::GroupRef;
use tambara_core::gset::{GMap, GSet};
use tambara_core::mackey::{MackeyTable, MackeyTableMap, Report};
use tambara_core::matrix::IntMatrix;
use tambara_core::tambara::component_label;
use tambara_core::xi::{witness_label, PhiSubgroup, Witness};

pub fn group(g: &GroupRef) -> Value {
    json!({ "order": g.order(), "mult": g.table() })
}

pub fn gset(x: &GSet) -> Value {
    json!({ "size": x.size(), "action": x.action_rows() })
}

pub fn gmap(f: &GMap) -> Value {
    json!({ "source": gset(f.source()), "target": gset(f.target()), "values": f.values() })
}

pub fn matrix(m: &IntMatrix) -> Value {
    json!(m.to_rows())
}

pub fn report(r: &Report) -> Value {
    json!({ "passed": r.passed(), "checks": r.checks, "failures": r.failures })
}

pub fn diagram(d: &ExponentialDiagram) -> Value {
    json!({
        "pi": gset(&d.pi),
        "p": d.p.values(),
        "a": gset(&d.a),
        "e": d.e.values(),
        "a_to_pi": d.a_to_pi.values(),
        "a_to_y": d.a_to_y.values(),
        "sections": d.sections,
    })
}

pub fn witness(w: &ExponentialWitness) -> Value {
    json!({ "on_b": w.on_b.values(), "on_a": w.on_a.values() })
}

pub fn component(c: &Component) -> Value {
    json!({
        "stabilizer": c.stabilizer,
        "base": c.base,
        "fiber": c.fiber.iter().map(|o| json!({ "stabilizer": o.stabilizer, "point": o.point })).collect::<Vec<_>>(),
        "degree": c.degree(),
        "label": component_label(c),
    })
}

pub fn bispan(b: &Bispan) -> Value {
    json!({
        "t": gset(b.t()),
        "u": gset(b.u()),
        "v": gset(b.v()),
        "x": gset(b.x()),
        "a": b.a().values(),
        "b": b.b().values(),
        "c": b.c().values(),
    })
}

pub fn element(e: &EffectiveElement) -> Value {
    let terms: Vec<Value> = e
        .multiplicities()
        .iter()
        .map(|(c, k)| json!({ "component": component(c), "coefficient": k }))
        .collect();
    json!({ "terms": terms, "bispan": bispan(&e.to_bispan()) })
}

pub fn table(t: &MackeyTable) -> Value {
    let levels: Vec<Value> = t
        .levels()
        .iter()
        .map(|l| json!({ "subgroup": l.subgroup.elements(), "rank": l.rank(), "basis": l.labels }))
        .collect();
    let arrows: Vec<Value> = t
        .arrows()
        .iter()
        .map(|a| {
            json!({
                "source": a.source,
                "target": a.target,
                "image": a.image,
                "restriction": matrix(&a.restriction),
                "transfer": matrix(&a.transfer),
            })
        })
        .collect();
    json!({ "levels": levels, "arrows": arrows })
}

pub fn table_map(m: &MackeyTableMap) -> Value {
    json!({
        "levels": m.levels.iter().map(matrix).collect::<Vec<_>>(),
        "permutations": m.permutations(),
    })
}

pub fn phi(p: &PhiSubgroup) -> Value {
    let h = p.h().elements();
    json!({ "h": h, "phi": h.iter().map(|&g| p.perm(g).to_vec()).collect::<Vec<_>>() })
}

pub fn xi_witness(w: &Witness) -> Value {
    json!({
        "component": component(&w.component),
        "h": w.h,
        "phi": w.phi,
        "f_prime": w.f_prime,
        "verified": w.verified,
        "label": witness_label(w),
    })
}

pub fn poly(p: &TruncPoly) -> Value {
    Value::String(p.render())
}

pub fn certificate(c: &Certificate) -> Value {
    json!({
        "p": c.p,
        "target": poly(&c.target),
        "target_is_constant": c.target_is_constant,
        "no_structure": c.no_structure,
        "candidates": c.candidates.iter().map(|k| json!({
            "candidate": poly(&k.candidate),
            "restriction": poly(&k.restriction),
            "passes": k.passes,
        })).collect::<Vec<_>>(),
    })
}
