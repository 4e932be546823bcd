//! Brute-force verification of the categorical claims: universal properties
//! of the constructed (co)limits, the adjunction between the generated
//! topology and the inverse construction, preservation of topological
//! (co)limits, and round-trip suites over enumerated finite topologies.
//!
//! Everything here is exhaustive over enumerable function sets; the checkers
//! witness uniqueness by enumeration, not by construction.

use std::collections::HashMap;

use serde::Serialize;
use serde_json::json;

use crate::bitset::BitSet;
use crate::colimits::{coequaliser, coproduct, tagged_point_id};
use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, Lattice, Value};
use crate::limits::{product, product_point_id};
use crate::space::{
    enumerate_topologies, flagg, four_point_gap_space, premetrize, top_map_continuous,
    ContinuitySpace, FiniteTopology, SpaceMap,
};

/// Cap on exhaustive function enumeration (|target|^|source|).
const FUNCTION_ENUM_CAP: usize = 1_000_000;

/// Outcome of one verification job. Failing reports carry a replayable
/// counterexample payload.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub instance: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<serde_json::Value>,
}

impl VerificationReport {
    fn pass(claim: &str, instance: String) -> VerificationReport {
        VerificationReport {
            claim: claim.to_string(),
            instance,
            pass: true,
            counterexample: None,
        }
    }

    fn fail(claim: &str, instance: String, payload: serde_json::Value) -> VerificationReport {
        VerificationReport {
            claim: claim.to_string(),
            instance,
            pass: false,
            counterexample: Some(payload),
        }
    }
}

/// A limit diagram the candidate is checked against.
pub enum LimitDiagram {
    Product(Vec<ContinuitySpace>),
    /// A parallel pair with common source and target.
    Equaliser(SpaceMap, SpaceMap),
}

/// A colimit diagram the candidate is checked against.
pub enum ColimitDiagram {
    Coproduct(Vec<ContinuitySpace>),
    /// A space and the blocks of an equivalence relation on its points.
    Coequaliser(ContinuitySpace, Vec<Vec<String>>),
}

fn all_functions(from: usize, to: usize) -> Result<Vec<Vec<usize>>> {
    let count = to
        .checked_pow(from as u32)
        .filter(|&c| c <= FUNCTION_ENUM_CAP)
        .ok_or(Error::ProbeTooLarge(from, to))?;
    if from == 0 {
        return Ok(vec![vec![]]);
    }
    if to == 0 {
        return Ok(vec![]);
    }
    let mut out = Vec::with_capacity(count);
    let mut f = vec![0usize; from];
    loop {
        out.push(f.clone());
        let mut i = 0;
        loop {
            f[i] += 1;
            if f[i] < to {
                break;
            }
            f[i] = 0;
            i += 1;
            if i == from {
                return Ok(out);
            }
        }
    }
}

fn continuous_functions(
    source: &ContinuitySpace,
    target: &ContinuitySpace,
) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for f in all_functions(source.len(), target.len())? {
        let map = SpaceMap::from_indices(source.clone(), target.clone(), f.clone());
        if map.is_eps_delta_continuous()? {
            out.push(f);
        }
    }
    Ok(out)
}

fn render_map(source: &ContinuitySpace, target: &ContinuitySpace, f: &[usize]) -> serde_json::Value {
    let entries: serde_json::Map<String, serde_json::Value> = source
        .points()
        .iter()
        .zip(f)
        .map(|(p, &i)| (p.clone(), json!(target.point(i))))
        .collect();
    serde_json::Value::Object(entries)
}

fn cartesian(lists: &[Vec<Vec<usize>>]) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for list in lists {
        let mut next = Vec::with_capacity(out.len() * list.len());
        for prefix in &out {
            for item in list {
                let mut tuple = prefix.clone();
                tuple.push(item.clone());
                next.push(tuple);
            }
        }
        out = next;
    }
    out
}

/// Checks that the candidate apex with the given legs is the limit of the
/// diagram: legs are continuous, and for every probe space every compatible
/// cone factors through exactly one continuous mediating map.
pub fn check_limit(
    apex: &ContinuitySpace,
    legs: &[SpaceMap],
    diagram: &LimitDiagram,
    probes: &[ContinuitySpace],
) -> Result<VerificationReport> {
    let claim = "limit-universal-property";
    let instance = match diagram {
        LimitDiagram::Product(spaces) => format!("product of {} spaces", spaces.len()),
        LimitDiagram::Equaliser(_, _) => "equaliser of a parallel pair".to_string(),
    };
    for (j, leg) in legs.iter().enumerate() {
        if !leg.is_eps_delta_continuous()? {
            return Ok(VerificationReport::fail(
                claim,
                instance,
                json!({ "reason": "leg not continuous", "leg": j }),
            ));
        }
    }
    for (pi, probe) in probes.iter().enumerate() {
        // Continuous candidates for the mediating map, grouped by the tuple
        // of their leg composites.
        let mut mediators: HashMap<Vec<Vec<usize>>, usize> = HashMap::new();
        for u in continuous_functions(probe, apex)? {
            let composites: Vec<Vec<usize>> = legs
                .iter()
                .map(|leg| u.iter().map(|&z| leg.apply(z)).collect())
                .collect();
            *mediators.entry(composites).or_insert(0) += 1;
        }
        let cones: Vec<Vec<Vec<usize>>> = match diagram {
            LimitDiagram::Product(spaces) => {
                let per_leg: Vec<Vec<Vec<usize>>> = spaces
                    .iter()
                    .map(|s| continuous_functions(probe, s))
                    .collect::<Result<_>>()?;
                cartesian(&per_leg)
            }
            LimitDiagram::Equaliser(f, g) => continuous_functions(probe, f.source())?
                .into_iter()
                .filter(|c| c.iter().all(|&z| f.apply(z) == g.apply(z)))
                .map(|c| vec![c])
                .collect(),
        };
        for cone in cones {
            let count = mediators.get(&cone).copied().unwrap_or(0);
            if count != 1 {
                let rendered: Vec<serde_json::Value> = match diagram {
                    LimitDiagram::Product(spaces) => cone
                        .iter()
                        .zip(spaces)
                        .map(|(c, s)| render_map(probe, s, c))
                        .collect(),
                    LimitDiagram::Equaliser(f, _) => {
                        vec![render_map(probe, f.source(), &cone[0])]
                    }
                };
                return Ok(VerificationReport::fail(
                    claim,
                    instance,
                    json!({
                        "probe": pi,
                        "probe_points": probe.points(),
                        "cone": rendered,
                        "mediating_maps": count,
                    }),
                ));
            }
        }
    }
    Ok(VerificationReport::pass(claim, instance))
}

/// Checks that the candidate with the given legs is the colimit of the
/// diagram: legs are continuous, and for every probe space every compatible
/// cocone factors through exactly one continuous mediating map.
pub fn check_colimit(
    colimit: &ContinuitySpace,
    legs: &[SpaceMap],
    diagram: &ColimitDiagram,
    probes: &[ContinuitySpace],
) -> Result<VerificationReport> {
    let claim = "colimit-universal-property";
    let instance = match diagram {
        ColimitDiagram::Coproduct(spaces) => format!("coproduct of {} spaces", spaces.len()),
        ColimitDiagram::Coequaliser(_, blocks) => {
            format!("coequaliser with {} glued blocks", blocks.len())
        }
    };
    for (j, leg) in legs.iter().enumerate() {
        if !leg.is_eps_delta_continuous()? {
            return Ok(VerificationReport::fail(
                claim,
                instance,
                json!({ "reason": "leg not continuous", "leg": j }),
            ));
        }
    }
    for (pi, probe) in probes.iter().enumerate() {
        let mut mediators: HashMap<Vec<Vec<usize>>, usize> = HashMap::new();
        for u in continuous_functions(colimit, probe)? {
            let composites: Vec<Vec<usize>> = legs
                .iter()
                .map(|leg| leg.indices().iter().map(|&s| u[s]).collect())
                .collect();
            *mediators.entry(composites).or_insert(0) += 1;
        }
        let cocones: Vec<Vec<Vec<usize>>> = match diagram {
            ColimitDiagram::Coproduct(spaces) => {
                let per_leg: Vec<Vec<Vec<usize>>> = spaces
                    .iter()
                    .map(|s| continuous_functions(s, probe))
                    .collect::<Result<_>>()?;
                cartesian(&per_leg)
            }
            ColimitDiagram::Coequaliser(space, _) => {
                // The quotient leg determines compatibility: a map out of the
                // source is a cocone iff it is constant on each class.
                let q = &legs[0];
                continuous_functions(space, probe)?
                    .into_iter()
                    .filter(|g| {
                        (0..space.len()).all(|y| {
                            (0..space.len())
                                .all(|z| q.apply(y) != q.apply(z) || g[y] == g[z])
                        })
                    })
                    .map(|g| vec![g])
                    .collect()
            }
        };
        for cocone in cocones {
            let count = mediators.get(&cocone).copied().unwrap_or(0);
            if count != 1 {
                let rendered: Vec<serde_json::Value> = match diagram {
                    ColimitDiagram::Coproduct(spaces) => cocone
                        .iter()
                        .zip(spaces)
                        .map(|(c, s)| render_map(s, probe, c))
                        .collect(),
                    ColimitDiagram::Coequaliser(space, _) => {
                        vec![render_map(space, probe, &cocone[0])]
                    }
                };
                return Ok(VerificationReport::fail(
                    claim,
                    instance,
                    json!({
                        "probe": pi,
                        "probe_points": probe.points(),
                        "cocone": rendered,
                        "mediating_maps": count,
                    }),
                ));
            }
        }
    }
    Ok(VerificationReport::pass(claim, instance))
}

/// Checks the hom-set bijection underlying the adjunction: for every probe
/// space and every function from its points into the topology's points,
/// topological continuity into the topology coincides with epsilon-delta
/// continuity into the inverse-construction space of the topology.
pub fn check_adjunction(
    topology: &FiniteTopology,
    probes: &[ContinuitySpace],
) -> Result<VerificationReport> {
    let claim = "adjunction-hom-bijection";
    let instance = format!("topology on {} points", topology.len());
    let flagged = flagg(topology)?;
    for (pi, probe) in probes.iter().enumerate() {
        let probe_top = probe.generate_topology()?;
        for f in all_functions(probe.len(), topology.len())? {
            let topological = top_map_continuous(&probe_top, topology, &f);
            let map = SpaceMap::from_indices(probe.clone(), flagged.clone(), f.clone());
            let metric = map.is_eps_delta_continuous()?;
            if topological != metric {
                return Ok(VerificationReport::fail(
                    claim,
                    instance,
                    json!({
                        "probe": pi,
                        "map": render_map(probe, &flagged, &f),
                        "topologically_continuous": topological,
                        "eps_delta_continuous": metric,
                    }),
                ));
            }
        }
    }
    Ok(VerificationReport::pass(claim, instance))
}

/// Topological disjoint union with the coproduct's tagged point ids.
pub fn disjoint_union_topology(components: &[FiniteTopology]) -> Result<FiniteTopology> {
    let mut points = Vec::new();
    for (j, t) in components.iter().enumerate() {
        for p in t.points() {
            points.push(tagged_point_id(j, p));
        }
    }
    let mut sorted = points.clone();
    sorted.sort();
    let n = sorted.len();
    let global: Vec<Vec<usize>> = {
        let index: HashMap<&str, usize> = sorted
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_str(), i))
            .collect();
        components
            .iter()
            .enumerate()
            .map(|(j, t)| {
                t.points()
                    .iter()
                    .map(|p| index[tagged_point_id(j, p).as_str()])
                    .collect()
            })
            .collect()
    };
    // Opens are exactly the unions of one open per component.
    let mut opens: Vec<BitSet> = vec![BitSet::empty(n)];
    for (j, t) in components.iter().enumerate() {
        let mut next = Vec::with_capacity(opens.len() * t.opens().len());
        for prefix in &opens {
            for o in t.opens() {
                let mut u = prefix.clone();
                for i in o.iter() {
                    u.insert(global[j][i]);
                }
                next.push(u);
            }
        }
        opens = next;
    }
    FiniteTopology::from_bitsets(sorted, opens)
}

/// Topological product of two finite topologies with the product's tuple
/// point ids: the union closure of the open rectangles.
pub fn product_topology(a: &FiniteTopology, b: &FiniteTopology) -> Result<FiniteTopology> {
    let mut points = Vec::new();
    let mut tags = Vec::new();
    for (i, p) in a.points().iter().enumerate() {
        for (k, q) in b.points().iter().enumerate() {
            points.push(product_point_id(&[p, q]));
            tags.push((i, k));
        }
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&x, &y| points[x].cmp(&points[y]));
    let points: Vec<String> = order.iter().map(|&i| points[i].clone()).collect();
    let tags: Vec<(usize, usize)> = order.iter().map(|&i| tags[i]).collect();
    let n = points.len();
    let mut opens: Vec<BitSet> = Vec::new();
    for u in a.opens() {
        for v in b.opens() {
            let rect = BitSet::from_indices(
                n,
                (0..n).filter(|&i| u.contains(tags[i].0) && v.contains(tags[i].1)),
            );
            if !opens.contains(&rect) {
                opens.push(rect);
            }
        }
    }
    // Union closure.
    loop {
        let mut added = false;
        let current = opens.clone();
        for x in &current {
            for y in &current {
                let u = x.union(y);
                if !opens.contains(&u) {
                    opens.push(u);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    FiniteTopology::from_bitsets(points, opens)
}

/// Quotient topology of a finite topology along a surjection onto class
/// ids: a set of classes is open iff its preimage is open.
pub fn quotient_topology(
    source: &FiniteTopology,
    classes: &[String],
    class_of: &[usize],
) -> Result<FiniteTopology> {
    let m = classes.len();
    if m > 20 {
        return Err(Error::ProbeTooLarge(m, 2));
    }
    let mut opens = Vec::new();
    for candidate in BitSet::all_subsets(m) {
        let preimage = BitSet::from_indices(
            source.len(),
            (0..source.len()).filter(|&i| candidate.contains(class_of[i])),
        );
        if source.is_open(&preimage) {
            opens.push(candidate);
        }
    }
    FiniteTopology::from_bitsets(classes.to_vec(), opens)
}

/// A preservation instance: which construction to build and compare against
/// its topological counterpart.
pub enum OPreservationInstance {
    Product(Vec<ContinuitySpace>),
    Coproduct(Vec<ContinuitySpace>),
    Coequaliser(ContinuitySpace, Vec<Vec<String>>),
}

/// Checks how the generated topology of a constructed (co)limit relates to
/// the corresponding topological construction: equality for coproducts and
/// coequalisers, finer-or-equal for products.
pub fn check_o_preservation(
    instance: &OPreservationInstance,
    max_ground: usize,
    max_functions: usize,
) -> Result<VerificationReport> {
    let claim = "topology-preservation";
    match instance {
        OPreservationInstance::Coproduct(spaces) => {
            let (sum, _) = coproduct(spaces, max_ground)?;
            let got = sum.generate_topology()?;
            let components: Vec<FiniteTopology> = spaces
                .iter()
                .map(|s| s.generate_topology())
                .collect::<Result<_>>()?;
            let expected = disjoint_union_topology(&components)?;
            if got == expected {
                Ok(VerificationReport::pass(
                    claim,
                    "coproduct equals the topological disjoint union".into(),
                ))
            } else {
                Ok(VerificationReport::fail(
                    claim,
                    "coproduct vs topological disjoint union".into(),
                    json!({ "generated_opens": got.opens().len(),
                            "expected_opens": expected.opens().len() }),
                ))
            }
        }
        OPreservationInstance::Coequaliser(space, blocks) => {
            let (quotient, qmap) = coequaliser(space, blocks, max_functions)?;
            let got = quotient.generate_topology()?;
            let src_top = space.generate_topology()?;
            let expected = quotient_topology(
                &src_top,
                quotient.points(),
                qmap.indices(),
            )?;
            if got == expected {
                Ok(VerificationReport::pass(
                    claim,
                    "coequaliser equals the quotient topology".into(),
                ))
            } else {
                Ok(VerificationReport::fail(
                    claim,
                    "coequaliser vs quotient topology".into(),
                    json!({ "generated_opens": got.opens().len(),
                            "expected_opens": expected.opens().len() }),
                ))
            }
        }
        OPreservationInstance::Product(spaces) => {
            debug_assert_eq!(spaces.len(), 2, "binary product comparison");
            let (prod, _) = product(spaces, max_ground)?;
            let got = prod.generate_topology()?;
            let expected = product_topology(
                &spaces[0].generate_topology()?,
                &spaces[1].generate_topology()?,
            )?;
            let finer = expected.opens().iter().all(|o| got.is_open(o));
            if finer {
                Ok(VerificationReport::pass(
                    claim,
                    "product is finer than or equal to the topological product".into(),
                ))
            } else {
                let missing = expected.opens().iter().find(|o| !got.is_open(o)).unwrap();
                let ids: Vec<&str> = missing.iter().map(|i| expected.points()[i].as_str()).collect();
                Ok(VerificationReport::fail(
                    claim,
                    "product vs topological product".into(),
                    json!({ "open_not_present": ids }),
                ))
            }
        }
    }
}

/// Round-trips every labeled topology on n points through the inverse
/// construction and through premetrisation, requiring exact regeneration.
pub fn round_trip_suite(n: usize) -> Result<VerificationReport> {
    let claim = "topology-round-trip";
    let topologies = enumerate_topologies(n)?;
    let count = topologies.len();
    for (i, t) in topologies.iter().enumerate() {
        let via_flagg = flagg(t)?.generate_topology()?;
        if via_flagg != *t {
            return Ok(VerificationReport::fail(
                claim,
                format!("{count} topologies on {n} points"),
                json!({ "index": i, "stage": "omega-valued inverse construction" }),
            ));
        }
        let via_premetric = premetrize(t)?.generate_topology()?;
        if via_premetric != *t {
            return Ok(VerificationReport::fail(
                claim,
                format!("{count} topologies on {n} points"),
                json!({ "index": i, "stage": "premetrisation" }),
            ));
        }
    }
    Ok(VerificationReport::pass(
        claim,
        format!("{count}/{count} topologies on {n} points"),
    ))
}

/// Searches all functions between two spaces for maps that are continuous
/// for the generated topologies but not epsilon-delta continuous. Passing
/// means no such gap exists.
pub fn continuity_gap_search(
    source: &ContinuitySpace,
    target: &ContinuitySpace,
) -> Result<VerificationReport> {
    let claim = "continuity-gap";
    let instance = format!(
        "{} -> {} functions",
        source.len(),
        target.len()
    );
    let mut gaps = Vec::new();
    for f in all_functions(source.len(), target.len())? {
        let map = SpaceMap::from_indices(source.clone(), target.clone(), f.clone());
        if map.is_top_continuous()? && !map.is_eps_delta_continuous()? {
            gaps.push(render_map(source, target, &f));
        }
    }
    if gaps.is_empty() {
        Ok(VerificationReport::pass(claim, instance))
    } else {
        Ok(VerificationReport::fail(
            claim,
            instance,
            json!({ "gap_maps": gaps }),
        ))
    }
}

/// The default probe family: every space on one or two points over the
/// 2-chain and the 3-chain, plus the 4-point space whose 2-ball has a
/// strictly smaller interior.
pub fn default_probes() -> Vec<ContinuitySpace> {
    let mut out = Vec::new();
    for n in [2usize, 3] {
        let lattice = Lattice::finite(FiniteLattice::chain(n));
        out.push(
            ContinuitySpace::new(["z0"], lattice.clone(), Vec::<(&str, &str, Value)>::new())
                .unwrap(),
        );
        for a in 0..n {
            for b in 0..n {
                out.push(
                    ContinuitySpace::new(
                        ["z0", "z1"],
                        lattice.clone(),
                        [
                            ("z0", "z1", Value::Finite(a.to_string())),
                            ("z1", "z0", Value::Finite(b.to_string())),
                        ],
                    )
                    .unwrap(),
                );
            }
        }
    }
    out.push(four_point_gap_space());
    out
}

/// The same space with every off-diagonal distance collapsed to bottom:
/// the standard corrupted candidate for mutation tests.
pub fn coarsen_to_bottom(space: &ContinuitySpace) -> ContinuitySpace {
    let bottom = space.lattice().bottom();
    ContinuitySpace::from_fn(space.points().to_vec(), space.lattice().clone(), |_, _| {
        bottom.clone()
    })
    .unwrap()
}
