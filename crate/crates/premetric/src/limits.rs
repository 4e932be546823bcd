//! Initial lifts of set-indexed cones, and products and equalisers built
//! from them.
//!
//! The lift of a cone with legs into spaces (X_j, V_j, d_j) lives over the
//! omega lattice on the ground U of all tuples of well-above-bottom values,
//! one coordinate per leg. Distances are the principal families generated
//! by upper sets of pulled-back distance tuples.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, Lattice, Value};
use crate::omega::{DownSetFamily, GroundSet};
use crate::space::{ContinuitySpace, SpaceMap};

/// Default cap on the size of a constructed omega ground.
pub const DEFAULT_MAX_GROUND: usize = 1_000_000;

/// Cap on omega-lattice value enumeration inside ground construction.
const OMEGA_ENUM_CAP: usize = 4;

/// One leg of a cone: a total assignment from the apex into a target space.
#[derive(Clone)]
pub struct ConeLeg {
    pub target: ContinuitySpace,
    /// assignment[i] = target point index of apex point i (apex points in
    /// canonical sorted order).
    pub assignment: Vec<usize>,
}

/// A set-indexed cone over a finite apex.
#[derive(Clone)]
pub struct Cone {
    pub apex: Vec<String>,
    pub legs: Vec<ConeLeg>,
}

impl Cone {
    pub fn new<S: Into<String>>(
        apex: impl IntoIterator<Item = S>,
        legs: impl IntoIterator<Item = (ContinuitySpace, HashMap<String, String>)>,
    ) -> Result<Cone> {
        let mut apex: Vec<String> = apex.into_iter().map(Into::into).collect();
        apex.sort();
        for w in apex.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateId(w[0].clone()));
            }
        }
        let mut out = Vec::new();
        for (target, map) in legs {
            let mut assignment = Vec::with_capacity(apex.len());
            for p in &apex {
                let image = map
                    .get(p)
                    .ok_or_else(|| Error::PartialAssignment(p.clone()))?;
                assignment.push(target.idx(image)?);
            }
            out.push(ConeLeg { target, assignment });
        }
        Ok(Cone { apex, legs: out })
    }
}

/// The space on the apex with the target's lattice and distances pulled back
/// along the assignment.
pub fn pullback_premetric(
    apex: &[String],
    assignment: &[usize],
    target: &ContinuitySpace,
) -> Result<ContinuitySpace> {
    ContinuitySpace::from_fn(apex.to_vec(), target.lattice().clone(), |i, j| {
        target.dist(assignment[i], assignment[j]).clone()
    })
}

/// The ground set of all tuples of well-above-bottom values, one coordinate
/// per lattice, together with the tuples themselves.
pub struct ProductGround {
    pub ground: Arc<GroundSet>,
    /// tuples[k] is the tuple whose ground id is ids[k]; both follow the
    /// ground's canonical id order.
    pub tuples: Vec<Vec<Value>>,
    pub lattices: Vec<Lattice>,
}

/// Canonical string id of a value, used for ground-set labels.
pub fn value_id(v: &Value) -> String {
    match v {
        Value::Finite(id) => id.clone(),
        Value::Rational(r) => r.to_string(),
        Value::Omega(p) => p.canonical_id(),
    }
}

fn tuple_id(vs: &[Value]) -> String {
    let parts: Vec<String> = vs.iter().map(value_id).collect();
    format!("({})", parts.join(","))
}

/// All tuples with every coordinate well above the bottom of its lattice.
/// The index set is finite, so finite support is automatic.
pub fn positives_product_ground(
    lattices: &[Lattice],
    max_ground: usize,
) -> Result<ProductGround> {
    for l in lattices {
        if !l.is_value_distributive_kind() {
            return Err(Error::NotValueDistributive(format!("{l:?}")));
        }
    }
    let per_lattice: Vec<Vec<Value>> = lattices
        .iter()
        .map(|l| l.enumerate_positives(OMEGA_ENUM_CAP))
        .collect::<Result<_>>()?;
    let size: usize = per_lattice.iter().map(|p| p.len()).product();
    if size > max_ground {
        return Err(Error::GroundTooLarge(size, max_ground));
    }
    let mut tuples: Vec<Vec<Value>> = vec![vec![]];
    for pos in &per_lattice {
        let mut next = Vec::with_capacity(tuples.len() * pos.len());
        for t in &tuples {
            for v in pos {
                let mut t2 = t.clone();
                t2.push(v.clone());
                next.push(t2);
            }
        }
        tuples = next;
    }
    let mut with_ids: Vec<(String, Vec<Value>)> =
        tuples.into_iter().map(|t| (tuple_id(&t), t)).collect();
    with_ids.sort_by(|a, b| a.0.cmp(&b.0));
    let ground = Arc::new(GroundSet::new(with_ids.iter().map(|(id, _)| id.clone()))?);
    let tuples = with_ids.into_iter().map(|(_, t)| t).collect();
    Ok(ProductGround {
        ground,
        tuples,
        lattices: lattices.to_vec(),
    })
}

/// The well-above relation restricted to nonempty witness subsets, which
/// adds exactly the pair (top, top). Coordinate upper sets built with it
/// still meet back to the coordinate (the set at top is {top}, not empty),
/// which is what keeps the product embedding injective at tuples with top
/// coordinates.
fn coord_above(l: &Lattice, a: &Value, x: &Value) -> Result<bool> {
    if l.well_above(a, x)? {
        return Ok(true);
    }
    let top = l.top();
    Ok(*x == top && *a == top)
}

/// Order-embedding of a product tuple into the omega lattice over the
/// product ground: the principal family of the tuple's strict upper set
/// { a in U : a_j above x_j in every coordinate }.
pub fn phi_embed(x: &[Value], ground: &ProductGround) -> Result<DownSetFamily> {
    debug_assert_eq!(x.len(), ground.lattices.len());
    let mut gen = BitSet::empty(ground.ground.len());
    for (k, tuple) in ground.tuples.iter().enumerate() {
        let mut above = true;
        for (j, a) in tuple.iter().enumerate() {
            if !coord_above(&ground.lattices[j], a, &x[j])? {
                above = false;
                break;
            }
        }
        if above {
            gen.insert(k);
        }
    }
    Ok(DownSetFamily::principal(ground.ground.clone(), gen))
}

/// The initial lift of a cone: the apex space whose distance at (x, y) is
/// the embedded tuple of pulled-back leg distances, together with the legs
/// as maps out of it. The empty cone yields the apex over the one-element
/// lattice.
pub fn initial_lift(cone: &Cone, max_ground: usize) -> Result<(ContinuitySpace, Vec<SpaceMap>)> {
    if cone.legs.is_empty() {
        let lattice = Lattice::finite(FiniteLattice::chain(1));
        let bottom = lattice.bottom();
        let apex = ContinuitySpace::from_fn(cone.apex.clone(), lattice, |_, _| bottom.clone())?;
        return Ok((apex, vec![]));
    }
    let lattices: Vec<Lattice> = cone
        .legs
        .iter()
        .map(|l| l.target.lattice().clone())
        .collect();
    let ground = positives_product_ground(&lattices, max_ground)?;
    let n = cone.apex.len();
    let mut dist: Vec<Value> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let tuple: Vec<Value> = cone
                .legs
                .iter()
                .map(|l| l.target.dist(l.assignment[i], l.assignment[j]).clone())
                .collect();
            dist.push(Value::Omega(phi_embed(&tuple, &ground)?));
        }
    }
    let apex = ContinuitySpace::from_fn(
        cone.apex.clone(),
        Lattice::Omega(ground.ground.clone()),
        |i, j| dist[i * n + j].clone(),
    )?;
    let legs = cone
        .legs
        .iter()
        .map(|l| SpaceMap::from_indices(apex.clone(), l.target.clone(), l.assignment.clone()))
        .collect();
    Ok((apex, legs))
}

/// Id of a product point built from component point ids.
pub fn product_point_id(components: &[&str]) -> String {
    format!("({})", components.join(","))
}

/// The product in the category of continuity spaces: the initial lift of the
/// projection cone from the cartesian point set. The nullary product is the
/// one-point terminal space.
pub fn product(
    spaces: &[ContinuitySpace],
    max_ground: usize,
) -> Result<(ContinuitySpace, Vec<SpaceMap>)> {
    // Cartesian point tuples in lexicographic order of component indices.
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for s in spaces {
        let mut next = Vec::new();
        for t in &tuples {
            for i in 0..s.len() {
                let mut t2 = t.clone();
                t2.push(i);
                next.push(t2);
            }
        }
        tuples = next;
    }
    let apex: Vec<String> = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t
                .iter()
                .enumerate()
                .map(|(j, &i)| spaces[j].point(i))
                .collect();
            product_point_id(&parts)
        })
        .collect();
    let legs = spaces
        .iter()
        .enumerate()
        .map(|(j, s)| {
            let map: HashMap<String, String> = apex
                .iter()
                .zip(&tuples)
                .map(|(id, t)| (id.clone(), s.point(t[j]).to_string()))
                .collect();
            (s.clone(), map)
        })
        .collect::<Vec<_>>();
    let cone = Cone::new(apex, legs)?;
    initial_lift(&cone, max_ground)
}

/// The equaliser of a parallel pair: the subspace where the maps agree, with
/// restricted distances, and its inclusion.
pub fn equaliser(f: &SpaceMap, g: &SpaceMap) -> Result<(ContinuitySpace, SpaceMap)> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::BadInput(
            "equaliser requires a parallel pair with common source and target".into(),
        ));
    }
    let src = f.source();
    let points: Vec<String> = (0..src.len())
        .filter(|&i| f.apply(i) == g.apply(i))
        .map(|i| src.point(i).to_string())
        .collect();
    let sub = ContinuitySpace::from_fn(points.clone(), src.lattice().clone(), |i, j| {
        let a = src.idx(&points[i]).unwrap();
        let b = src.idx(&points[j]).unwrap();
        src.dist(a, b).clone()
    })?;
    let inclusion = SpaceMap::new(sub.clone(), src.clone(), |p| Some(p.to_string()))?;
    Ok((sub, inclusion))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ExtRational;
    use crate::space::four_point_gap_space;

    fn two_point_space(chain: usize, dpq: &str, dqp: &str) -> ContinuitySpace {
        let lattice = Lattice::finite(FiniteLattice::chain(chain));
        ContinuitySpace::new(
            ["p", "q"],
            lattice,
            [
                ("p", "q", Value::Finite(dpq.to_string())),
                ("q", "p", Value::Finite(dqp.to_string())),
            ],
        )
        .unwrap()
    }

    #[test]
    fn pullback_examples() {
        let t = four_point_gap_space();
        let idx: Vec<usize> = (0..t.len()).collect();
        let same = pullback_premetric(
            &t.points().to_vec(),
            &idx,
            &t,
        )
        .unwrap();
        assert_eq!(same, t);

        // Constant assignment gives the zero premetric.
        let constant = pullback_premetric(
            &["u".to_string(), "v".to_string()],
            &[0, 0],
            &t,
        )
        .unwrap();
        assert_eq!(*constant.dist(0, 1), constant.lattice().bottom());

        // p -> a, q -> c pulls back the distance 2.
        let a = t.idx("a").unwrap();
        let c = t.idx("c").unwrap();
        let pulled = pullback_premetric(&["p".to_string(), "q".to_string()], &[a, c], &t).unwrap();
        assert_eq!(
            *pulled.dist_by_id("p", "q").unwrap(),
            Value::Rational(ExtRational::from_int(2))
        );
    }

    #[test]
    fn product_ground_sizes() {
        let three = Lattice::finite(FiniteLattice::chain(3));
        let g = positives_product_ground(&[three.clone(), three.clone()], 1000).unwrap();
        assert_eq!(g.ground.len(), 9);

        let single = positives_product_ground(&[three.clone()], 1000).unwrap();
        assert_eq!(single.ground.len(), 3);

        let empty = positives_product_ground(&[], 1000).unwrap();
        assert_eq!(empty.ground.len(), 1);

        assert!(matches!(
            positives_product_ground(&[three.clone(), three], 5),
            Err(Error::GroundTooLarge(9, 5))
        ));
        assert!(matches!(
            positives_product_ground(&[Lattice::ExtRationals], 1000),
            Err(Error::InfiniteValueSet)
        ));
    }

    #[test]
    fn phi_embed_extremes_over_chains() {
        let three = Lattice::finite(FiniteLattice::chain(3));
        let g = positives_product_ground(&[three.clone(), three.clone()], 1000).unwrap();
        let all_bottom = vec![three.bottom(), three.bottom()];
        let emb = phi_embed(&all_bottom, &g).unwrap();
        assert_eq!(emb.generators()[0].count(), 9);

        let all_top = vec![three.top(), three.top()];
        let emb = phi_embed(&all_top, &g).unwrap();
        // Only the all-top tuple is well above top in each coordinate.
        assert_eq!(emb.generators()[0].count(), 1);
    }

    #[test]
    fn phi_embed_is_an_order_embedding() {
        let three = Lattice::finite(FiniteLattice::chain(3));
        let g = positives_product_ground(&[three.clone(), three.clone()], 1000).unwrap();
        let elems: Vec<Value> = ["0", "1", "2"]
            .iter()
            .map(|s| Value::Finite(s.to_string()))
            .collect();
        let mut tuples = Vec::new();
        for a in &elems {
            for b in &elems {
                tuples.push(vec![a.clone(), b.clone()]);
            }
        }
        for x in &tuples {
            for y in &tuples {
                let x_leq_y = three.leq(&x[0], &y[0]).unwrap() && three.leq(&x[1], &y[1]).unwrap();
                let ex = phi_embed(x, &g).unwrap();
                let ey = phi_embed(y, &g).unwrap();
                assert_eq!(x_leq_y, ex.leq(&ey).unwrap(), "{x:?} vs {y:?}");
                if ex == ey {
                    assert_eq!(x, y); // injective
                }
            }
        }
    }

    #[test]
    fn single_leg_identity_lift_regenerates_topology() {
        let target = two_point_space(3, "1", "2");
        let map: HashMap<String, String> = target
            .points()
            .iter()
            .map(|p| (p.clone(), p.clone()))
            .collect();
        let cone = Cone::new(target.points().to_vec(), [(target.clone(), map)]).unwrap();
        let (apex, legs) = initial_lift(&cone, DEFAULT_MAX_GROUND).unwrap();
        assert_eq!(
            apex.generate_topology().unwrap(),
            target.generate_topology().unwrap()
        );
        for leg in &legs {
            assert!(leg.is_eps_delta_continuous().unwrap());
        }
    }

    #[test]
    fn duplicated_leg_changes_nothing_topologically() {
        let target = two_point_space(2, "1", "0");
        let map: HashMap<String, String> = target
            .points()
            .iter()
            .map(|p| (p.clone(), p.clone()))
            .collect();
        let once = Cone::new(target.points().to_vec(), [(target.clone(), map.clone())]).unwrap();
        let twice = Cone::new(
            target.points().to_vec(),
            [(target.clone(), map.clone()), (target.clone(), map)],
        )
        .unwrap();
        let (a1, _) = initial_lift(&once, DEFAULT_MAX_GROUND).unwrap();
        let (a2, _) = initial_lift(&twice, DEFAULT_MAX_GROUND).unwrap();
        assert_eq!(
            a1.generate_topology().unwrap(),
            a2.generate_topology().unwrap()
        );
    }

    #[test]
    fn empty_cases() {
        let empty_cone = Cone {
            apex: vec![],
            legs: vec![],
        };
        let (apex, legs) = initial_lift(&empty_cone, DEFAULT_MAX_GROUND).unwrap();
        assert!(apex.is_empty());
        assert!(legs.is_empty());

        let (terminal, _) = product(&[], DEFAULT_MAX_GROUND).unwrap();
        assert_eq!(terminal.len(), 1);
    }

    #[test]
    fn product_of_discrete_spaces_is_discrete() {
        let s = two_point_space(2, "1", "1");
        let (prod, projections) = product(&[s.clone(), s.clone()], DEFAULT_MAX_GROUND).unwrap();
        assert_eq!(prod.len(), 4);
        let top = prod.generate_topology().unwrap();
        assert_eq!(top.opens().len(), 16);
        for p in &projections {
            assert!(p.is_eps_delta_continuous().unwrap());
        }
    }

    #[test]
    fn product_of_one_point_spaces() {
        let lattice = Lattice::finite(FiniteLattice::chain(2));
        let one = ContinuitySpace::from_fn(["x"], lattice.clone(), |_, _| lattice.bottom()).unwrap();
        let (prod, _) = product(&[one.clone(), one], DEFAULT_MAX_GROUND).unwrap();
        assert_eq!(prod.len(), 1);
    }

    #[test]
    fn equaliser_cases() {
        let s = four_point_gap_space();
        let id = SpaceMap::identity(&s);
        let (whole, incl) = equaliser(&id, &id).unwrap();
        assert_eq!(whole.len(), 4);
        assert!(incl.is_eps_delta_continuous().unwrap());

        // f, g agreeing exactly on {a, b}: restricted distances keep
        // d(a,b) = d(b,a) = 0.
        let f = SpaceMap::identity(&s);
        let g = SpaceMap::new(s.clone(), s.clone(), |p| {
            Some(match p {
                "c" => "d".to_string(),
                "d" => "c".to_string(),
                other => other.to_string(),
            })
        })
        .unwrap();
        let (z, incl) = equaliser(&f, &g).unwrap();
        assert_eq!(z.points(), &["a".to_string(), "b".to_string()]);
        assert_eq!(*z.dist_by_id("a", "b").unwrap(), z.lattice().bottom());
        assert_eq!(*z.dist_by_id("b", "a").unwrap(), z.lattice().bottom());
        assert!(incl.is_eps_delta_continuous().unwrap());

        // Everywhere-different pair: empty equaliser.
        let swap = SpaceMap::new(s.clone(), s.clone(), |p| {
            Some(match p {
                "a" => "b",
                "b" => "a",
                "c" => "d",
                _ => "c",
            }
            .to_string())
        })
        .unwrap();
        let (empty, _) = equaliser(&SpaceMap::identity(&s), &swap).unwrap();
        assert!(empty.is_empty());
    }
}
