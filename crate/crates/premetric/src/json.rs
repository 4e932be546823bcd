//! JSON interchange for lattices, values, spaces, topologies, maps, cones
//! and cocones.
//!
//! Output is canonical: object keys are emitted in sorted order (the default
//! serde_json map is ordered), distance entries are sorted, and down-set
//! families appear in their normalized antichain form, so identical inputs
//! produce byte-identical output.

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::{json, Value as Json};

use crate::colimits::CoconeLeg;
use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, Lattice, Value};
use crate::limits::Cone;
use crate::omega::{DownSetFamily, GroundSet};
use crate::rational::ExtRational;
use crate::space::{ContinuitySpace, FiniteTopology, SpaceMap};

fn bad(msg: impl Into<String>) -> Error {
    Error::BadInput(msg.into())
}

fn as_object<'a>(v: &'a Json, what: &str) -> Result<&'a serde_json::Map<String, Json>> {
    v.as_object().ok_or_else(|| bad(format!("{what} must be an object")))
}

fn as_array<'a>(v: &'a Json, what: &str) -> Result<&'a Vec<Json>> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

fn as_str<'a>(v: &'a Json, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| bad(format!("{what} must be a string")))
}

fn field<'a>(obj: &'a serde_json::Map<String, Json>, key: &str) -> Result<&'a Json> {
    obj.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn string_list(v: &Json, what: &str) -> Result<Vec<String>> {
    as_array(v, what)?
        .iter()
        .map(|s| Ok(as_str(s, what)?.to_string()))
        .collect()
}

pub fn lattice_to_json(lattice: &Lattice) -> Json {
    match lattice {
        Lattice::Finite(l) => {
            let covers: Vec<Json> = l
                .cover_pairs()
                .into_iter()
                .map(|(lo, hi)| json!([l.id(lo), l.id(hi)]))
                .collect();
            json!({ "kind": "finite", "elements": l.elements(), "leq": covers })
        }
        Lattice::ExtRationals => json!({ "kind": "ext_rationals" }),
        Lattice::Omega(g) => json!({ "kind": "omega", "ground": g.ids() }),
    }
}

pub fn lattice_from_json(v: &Json) -> Result<Lattice> {
    let obj = as_object(v, "lattice")?;
    match as_str(field(obj, "kind")?, "lattice.kind")? {
        "finite" => {
            let elements = string_list(field(obj, "elements")?, "lattice.elements")?;
            let mut pairs = Vec::new();
            for pair in as_array(field(obj, "leq")?, "lattice.leq")? {
                let pair = as_array(pair, "lattice.leq entry")?;
                if pair.len() != 2 {
                    return Err(bad("lattice.leq entries must be [lo, hi]"));
                }
                pairs.push((
                    as_str(&pair[0], "lattice.leq id")?.to_string(),
                    as_str(&pair[1], "lattice.leq id")?.to_string(),
                ));
            }
            Ok(Lattice::finite(FiniteLattice::validate(elements, pairs)?))
        }
        "ext_rationals" => Ok(Lattice::ExtRationals),
        "omega" => {
            let ground = string_list(field(obj, "ground")?, "lattice.ground")?;
            Ok(Lattice::omega(GroundSet::new(ground)?))
        }
        other => Err(bad(format!("unknown lattice kind {other:?}"))),
    }
}

pub fn value_to_json(value: &Value) -> Json {
    match value {
        Value::Finite(id) => json!(id),
        Value::Rational(r) => json!(r.to_string()),
        Value::Omega(fam) => {
            let gens: Vec<Vec<&str>> = fam
                .generators()
                .iter()
                .map(|g| g.iter().map(|i| fam.ground().ids()[i].as_str()).collect())
                .collect();
            json!(gens)
        }
    }
}

pub fn value_from_json(lattice: &Lattice, v: &Json) -> Result<Value> {
    match lattice {
        Lattice::Finite(_) => Ok(Value::Finite(as_str(v, "value")?.to_string())),
        Lattice::ExtRationals => {
            let lit = as_str(v, "value")?;
            Ok(Value::Rational(lit.parse::<ExtRational>()?))
        }
        Lattice::Omega(g) => {
            let gens: Vec<Vec<String>> = as_array(v, "omega value")?
                .iter()
                .map(|g| string_list(g, "omega generator"))
                .collect::<Result<_>>()?;
            Ok(Value::Omega(DownSetFamily::from_id_lists(
                Arc::clone(g),
                gens,
            )?))
        }
    }
}

pub fn space_to_json(space: &ContinuitySpace) -> Json {
    let mut d = Vec::new();
    for i in 0..space.len() {
        for j in 0..space.len() {
            if i != j {
                d.push(json!([
                    space.point(i),
                    space.point(j),
                    value_to_json(space.dist(i, j))
                ]));
            }
        }
    }
    json!({
        "points": space.points(),
        "lattice": lattice_to_json(space.lattice()),
        "d": d,
    })
}

pub fn space_from_json(v: &Json) -> Result<ContinuitySpace> {
    let obj = as_object(v, "space")?;
    let points = string_list(field(obj, "points")?, "space.points")?;
    let lattice = lattice_from_json(field(obj, "lattice")?)?;
    let mut entries = Vec::new();
    if let Some(d) = obj.get("d") {
        for entry in as_array(d, "space.d")? {
            let entry = as_array(entry, "space.d entry")?;
            if entry.len() != 3 {
                return Err(bad("space.d entries must be [x, y, value]"));
            }
            entries.push((
                as_str(&entry[0], "space.d point")?.to_string(),
                as_str(&entry[1], "space.d point")?.to_string(),
                value_from_json(&lattice, &entry[2])?,
            ));
        }
    }
    ContinuitySpace::new(points, lattice, entries)
}

pub fn topology_to_json(topology: &FiniteTopology) -> Json {
    let opens: Vec<Vec<&str>> = topology
        .opens()
        .iter()
        .map(|o| o.iter().map(|i| topology.points()[i].as_str()).collect())
        .collect();
    json!({ "points": topology.points(), "opens": opens })
}

pub fn topology_from_json(v: &Json) -> Result<FiniteTopology> {
    let obj = as_object(v, "topology")?;
    let points = string_list(field(obj, "points")?, "topology.points")?;
    let opens: Vec<Vec<String>> = as_array(field(obj, "opens")?, "topology.opens")?
        .iter()
        .map(|o| string_list(o, "topology open"))
        .collect::<Result<_>>()?;
    FiniteTopology::new(points, opens)
}

fn assignment_from_json(v: &Json) -> Result<HashMap<String, String>> {
    let obj = as_object(v, "assignment")?;
    obj.iter()
        .map(|(k, img)| Ok((k.clone(), as_str(img, "assignment image")?.to_string())))
        .collect()
}

pub fn map_to_json(map: &SpaceMap) -> Json {
    let assignment: serde_json::Map<String, Json> = map
        .source()
        .points()
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), json!(map.target().point(map.apply(i)))))
        .collect();
    json!({
        "source": space_to_json(map.source()),
        "target": space_to_json(map.target()),
        "map": assignment,
    })
}

pub fn map_from_json(v: &Json) -> Result<SpaceMap> {
    let obj = as_object(v, "map")?;
    let source = space_from_json(field(obj, "source")?)?;
    let target = space_from_json(field(obj, "target")?)?;
    let assignment = assignment_from_json(field(obj, "map")?)?;
    SpaceMap::new(source, target, |p| assignment.get(p).cloned())
}

/// Cone JSON: { "apex": [ids], "legs": [ { "target": <space>, "assignment":
/// { apex point: target point } } ] }.
pub fn cone_from_json(v: &Json) -> Result<Cone> {
    let obj = as_object(v, "cone")?;
    let apex = string_list(field(obj, "apex")?, "cone.apex")?;
    let mut legs = Vec::new();
    for leg in as_array(field(obj, "legs")?, "cone.legs")? {
        let leg = as_object(leg, "cone leg")?;
        let target = space_from_json(field(leg, "target")?)?;
        let assignment = assignment_from_json(field(leg, "assignment")?)?;
        legs.push((target, assignment));
    }
    Cone::new(apex, legs)
}

/// Cocone JSON: { "points": [ids], "legs": [ { "source": <space>,
/// "assignment": { source point: target point } } ] }. Returns the legs and
/// the shared target point set.
pub fn cocone_from_json(v: &Json) -> Result<(Vec<CoconeLeg>, Vec<String>)> {
    let obj = as_object(v, "cocone")?;
    let points = string_list(field(obj, "points")?, "cocone.points")?;
    let mut legs = Vec::new();
    for leg in as_array(field(obj, "legs")?, "cocone.legs")? {
        let leg = as_object(leg, "cocone leg")?;
        let source = space_from_json(field(leg, "source")?)?;
        let assignment = assignment_from_json(field(leg, "assignment")?)?;
        legs.push((source, assignment));
    }
    Ok((legs, points))
}

/// Relation JSON: a list of point-id blocks, e.g. [["a","b"],["c"]].
pub fn relation_from_json(v: &Json) -> Result<Vec<Vec<String>>> {
    as_array(v, "relation")?
        .iter()
        .map(|b| string_list(b, "relation block"))
        .collect()
}

/// Canonical serialization: pretty JSON with sorted keys and a trailing
/// newline, identical across runs for identical inputs.
pub fn to_canonical_string(v: &Json) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
