//! Final continuity spaces, coproducts, coequalisers and final lifts of
//! cocones.
//!
//! The final space on a quotient or image carries distances over the omega
//! lattice on the set M of all functions from the source points into the
//! positive values. The distance between two image points is the principal
//! family of the set of functions that admit an alternating ball/glue path
//! between their preimages.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, Value};
use crate::limits::value_id;
use crate::omega::{DownSetFamily, GroundSet};
use crate::space::{ContinuitySpace, SpaceMap};

/// Default cap on the size of a constructed function ground M.
pub const DEFAULT_MAX_FUNCTIONS: usize = 4096;

/// Cap on omega-lattice value enumeration inside ground construction.
const OMEGA_ENUM_CAP: usize = 4;

/// The finite set M of all functions from the points of a source space into
/// the positive values of its lattice, each serialized canonically.
pub struct FunctionGround {
    pub ground: Arc<GroundSet>,
    /// functions[k][y] = value at source point y of the function with ground
    /// id ground.ids()[k].
    pub functions: Vec<Vec<Value>>,
    pub lattice: Lattice,
}

fn function_id(points: &[String], h: &[Value]) -> String {
    let parts: Vec<String> = points
        .iter()
        .zip(h)
        .map(|(p, v)| format!("{p}:{}", value_id(v)))
        .collect();
    format!("[{}]", parts.join(";"))
}

/// All functions from the source's points into its positive values.
pub fn function_ground(source: &ContinuitySpace, max_functions: usize) -> Result<FunctionGround> {
    let lattice = source.lattice().clone();
    let positives = lattice.enumerate_positives(OMEGA_ENUM_CAP)?;
    let n = source.len();
    let size = positives
        .len()
        .checked_pow(n as u32)
        .ok_or(Error::FunctionGroundTooLarge(usize::MAX, max_functions))?;
    if size > max_functions {
        return Err(Error::FunctionGroundTooLarge(size, max_functions));
    }
    let mut functions: Vec<Vec<Value>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(functions.len() * positives.len());
        for h in &functions {
            for v in &positives {
                let mut h2 = h.clone();
                h2.push(v.clone());
                next.push(h2);
            }
        }
        functions = next;
    }
    let mut with_ids: Vec<(String, Vec<Value>)> = functions
        .into_iter()
        .map(|h| (function_id(source.points(), &h), h))
        .collect();
    with_ids.sort_by(|a, b| a.0.cmp(&b.0));
    let ground = Arc::new(GroundSet::new(with_ids.iter().map(|(id, _)| id.clone()))?);
    let functions = with_ids.into_iter().map(|(_, h)| h).collect();
    Ok(FunctionGround {
        ground,
        functions,
        lattice,
    })
}

/// A source space together with a total assignment onto a point set: the
/// data over which the admits path relation is evaluated. Glue steps connect
/// source points with equal image, so a quotient by an equivalence relation
/// is the same instance with the class map as assignment.
pub struct AdmitsInstance {
    pub source: ContinuitySpace,
    /// Canonically sorted target point ids.
    pub x_points: Vec<String>,
    /// f[y] = target index of the image of source point y.
    pub f: Vec<usize>,
}

impl AdmitsInstance {
    pub fn new<S: Into<String>>(
        source: ContinuitySpace,
        x_points: impl IntoIterator<Item = S>,
        map: &HashMap<String, String>,
    ) -> Result<AdmitsInstance> {
        let mut x_points: Vec<String> = x_points.into_iter().map(Into::into).collect();
        x_points.sort();
        for w in x_points.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateId(w[0].clone()));
            }
        }
        let index: HashMap<&str, usize> = x_points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_str(), i))
            .collect();
        let mut f = Vec::with_capacity(source.len());
        for p in source.points() {
            let image = map
                .get(p)
                .ok_or_else(|| Error::PartialAssignment(p.clone()))?;
            f.push(
                *index
                    .get(image.as_str())
                    .ok_or_else(|| Error::PointNotInSpace(image.clone()))?,
            );
        }
        Ok(AdmitsInstance {
            source,
            x_points,
            f,
        })
    }

    pub fn x_idx(&self, id: &str) -> Result<usize> {
        self.x_points
            .iter()
            .position(|p| p == id)
            .ok_or_else(|| Error::PointNotInSpace(id.to_string()))
    }

    /// Target indices that have at least one preimage.
    pub fn image(&self) -> BitSet {
        BitSet::from_indices(self.x_points.len(), self.f.iter().copied())
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<()> {
        let image = self.image();
        for x in [a, b] {
            if !image.contains(x) {
                return Err(Error::PointNotInImage(self.x_points[x].clone()));
            }
        }
        Ok(())
    }
}

/// Whether the function h admits the target pair (a, b): an alternating path
/// in the source exists, from a preimage of a to a preimage of b, whose odd
/// steps move inside the h-valued ball at the current point and whose even
/// steps jump between points with equal image.
///
/// Both step kinds admit trivial self-steps (h(y) is positive, so y is in
/// its own ball, and the image relation is reflexive), so the alternation
/// imposes no constraint and the path exists iff b's preimage is reachable
/// from a's preimage in the directed graph with both edge kinds. The
/// path-enumeration form of the definition is kept as
/// [`admits_literal`] and the equivalence is tested.
pub fn admits(inst: &AdmitsInstance, h: &[Value], a: usize, b: usize) -> Result<bool> {
    inst.check_pair(a, b)?;
    let ny = inst.source.len();
    debug_assert_eq!(h.len(), ny);
    let mut visited = BitSet::empty(ny);
    let mut queue: Vec<usize> = (0..ny).filter(|&y| inst.f[y] == a).collect();
    for &y in &queue {
        visited.insert(y);
    }
    while let Some(y) = queue.pop() {
        if inst.f[y] == b {
            return Ok(true);
        }
        let ball = inst.source.ball(y, &h[y])?;
        for z in 0..ny {
            if visited.contains(z) {
                continue;
            }
            if ball.contains(z) || inst.f[z] == inst.f[y] {
                visited.insert(z);
                queue.push(z);
            }
        }
    }
    Ok(false)
}

/// The admits relation by literal path enumeration: every alternating
/// sequence of at most `max_len` source points is tried. Exponential; kept
/// as the oracle the reachability reduction is checked against.
pub fn admits_literal(
    inst: &AdmitsInstance,
    h: &[Value],
    a: usize,
    b: usize,
    max_len: usize,
) -> Result<bool> {
    inst.check_pair(a, b)?;
    let ny = inst.source.len();
    // Depth-first over valid path prefixes; position i is 1-based, so the
    // step leaving position i is a ball step when i is odd.
    fn extend(
        inst: &AdmitsInstance,
        h: &[Value],
        b: usize,
        path: &mut Vec<usize>,
        max_len: usize,
    ) -> Result<bool> {
        let y = *path.last().expect("path is nonempty");
        if inst.f[y] == b {
            return Ok(true);
        }
        if path.len() == max_len {
            return Ok(false);
        }
        let i = path.len();
        let ball = if i % 2 == 1 {
            Some(inst.source.ball(y, &h[y])?)
        } else {
            None
        };
        for z in 0..inst.source.len() {
            let ok = match &ball {
                Some(ball) => ball.contains(z),
                None => inst.f[z] == inst.f[y],
            };
            if ok {
                path.push(z);
                if extend(inst, h, b, path, max_len)? {
                    return Ok(true);
                }
                path.pop();
            }
        }
        Ok(false)
    }
    for start in 0..ny {
        if inst.f[start] != a {
            continue;
        }
        let mut path = vec![start];
        if extend(inst, h, b, &mut path, max_len.max(1))? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// H(a, b): the functions in M that admit the pair. A finite set A of
/// functions admits (a, b) iff every member does, so the whole family of
/// admitting sets is the down-closure of this single generator.
pub fn admit_set(
    inst: &AdmitsInstance,
    ground: &FunctionGround,
    a: usize,
    b: usize,
) -> Result<BitSet> {
    let mut hs = BitSet::empty(ground.functions.len());
    for (k, h) in ground.functions.iter().enumerate() {
        if admits(inst, h, a, b)? {
            hs.insert(k);
        }
    }
    Ok(hs)
}

/// The final continuity space on the instance's target points: distances
/// over the omega lattice on M, principal(H(x, y)) between image points, top
/// between distinct points when either is outside the image (isolating
/// them), bottom on the diagonal.
pub fn final_space(inst: &AdmitsInstance, ground: &FunctionGround) -> Result<ContinuitySpace> {
    let lattice = Lattice::Omega(ground.ground.clone());
    let nx = inst.x_points.len();
    let image = inst.image();
    let mut m: Vec<Value> = Vec::with_capacity(nx * nx);
    for i in 0..nx {
        for j in 0..nx {
            let v = if i == j {
                lattice.bottom()
            } else if image.contains(i) && image.contains(j) {
                Value::Omega(DownSetFamily::principal(
                    ground.ground.clone(),
                    admit_set(inst, ground, i, j)?,
                ))
            } else {
                lattice.top()
            };
            m.push(v);
        }
    }
    ContinuitySpace::from_fn(inst.x_points.clone(), lattice, |i, j| m[i * nx + j].clone())
}

/// The ground set N of tagged positive values of the component lattices,
/// with the data needed to embed each component.
pub struct SumGround {
    pub ground: Arc<GroundSet>,
    pub lattices: Vec<Lattice>,
    /// positives[j] lists the positive values of component j; slots[j][k] is
    /// the ground index of positives[j][k] under the tagged id "j:value".
    pub positives: Vec<Vec<Value>>,
    pub slots: Vec<Vec<usize>>,
}

/// Builds N as the tagged disjoint union of the components' positive values.
pub fn sum_ground(lattices: &[Lattice], max_ground: usize) -> Result<SumGround> {
    for l in lattices {
        if !l.is_value_distributive_kind() {
            return Err(Error::NotValueDistributive(format!("{l:?}")));
        }
    }
    let positives: Vec<Vec<Value>> = lattices
        .iter()
        .map(|l| l.enumerate_positives(OMEGA_ENUM_CAP))
        .collect::<Result<_>>()?;
    let size: usize = positives.iter().map(|p| p.len()).sum();
    if size > max_ground {
        return Err(Error::GroundTooLarge(size, max_ground));
    }
    let mut ids = Vec::with_capacity(size);
    for (j, pos) in positives.iter().enumerate() {
        for v in pos {
            ids.push(format!("{j}:{}", value_id(v)));
        }
    }
    let ground = Arc::new(GroundSet::new(ids)?);
    let mut slots = Vec::with_capacity(positives.len());
    for (j, pos) in positives.iter().enumerate() {
        let row: Vec<usize> = pos
            .iter()
            .map(|v| ground.idx(&format!("{j}:{}", value_id(v))))
            .collect::<Result<_>>()?;
        slots.push(row);
    }
    Ok(SumGround {
        ground,
        lattices: lattices.to_vec(),
        positives,
        slots,
    })
}

/// Order-embedding of a component value into the omega lattice over the sum
/// ground: the principal family of the value's upper set within its own
/// component together with every other component's positives.
pub fn phi_component(j: usize, a: &Value, g: &SumGround) -> Result<DownSetFamily> {
    let mut gen = BitSet::empty(g.ground.len());
    for (i, slot_row) in g.slots.iter().enumerate() {
        for (k, &slot) in slot_row.iter().enumerate() {
            if i != j || g.lattices[j].well_above(&g.positives[i][k], a)? {
                gen.insert(slot);
            }
        }
    }
    Ok(DownSetFamily::principal(g.ground.clone(), gen))
}

/// Id of a tagged coproduct point.
pub fn tagged_point_id(component: usize, point: &str) -> String {
    format!("{component}:{point}")
}

/// The coproduct of continuity spaces: tagged disjoint union of points over
/// the omega lattice on the sum ground, with same-component distances
/// embedded by phi and cross-component distances top. Returns the space and
/// the injections.
pub fn coproduct(
    spaces: &[ContinuitySpace],
    max_ground: usize,
) -> Result<(ContinuitySpace, Vec<SpaceMap>)> {
    let lattices: Vec<Lattice> = spaces.iter().map(|s| s.lattice().clone()).collect();
    let g = sum_ground(&lattices, max_ground)?;
    let lattice = Lattice::Omega(g.ground.clone());
    let mut points = Vec::new();
    let mut tags: Vec<(usize, usize)> = Vec::new();
    for (j, s) in spaces.iter().enumerate() {
        for p in s.points() {
            points.push(tagged_point_id(j, p));
            tags.push((j, s.idx(p)?));
        }
    }
    // The constructor re-sorts points, so align the tag table with the
    // sorted order first.
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].cmp(&points[b]));
    let points: Vec<String> = order.iter().map(|&i| points[i].clone()).collect();
    let tags: Vec<(usize, usize)> = order.iter().map(|&i| tags[i]).collect();
    let n = points.len();
    let mut d: Vec<Value> = Vec::with_capacity(n * n);
    for i in 0..n {
        for k in 0..n {
            let (ji, pi) = tags[i];
            let (jk, pk) = tags[k];
            let v = if ji == jk {
                Value::Omega(phi_component(ji, spaces[ji].dist(pi, pk), &g)?)
            } else {
                lattice.top()
            };
            d.push(v);
        }
    }
    let sum = ContinuitySpace::from_fn(points, lattice, |i, k| d[i * n + k].clone())?;
    let mut injections = Vec::with_capacity(spaces.len());
    for (j, s) in spaces.iter().enumerate() {
        let mut map = Vec::with_capacity(s.len());
        for p in s.points() {
            map.push(sum.idx(&tagged_point_id(j, p))?);
        }
        injections.push(SpaceMap::from_indices(s.clone(), sum.clone(), map));
    }
    Ok((sum, injections))
}

/// The coequaliser of a space by the equivalence relation generated by the
/// given blocks (unlisted points form singleton classes). The quotient's
/// points are named by the lexicographically least member of each class;
/// distances are the final-space distances of the class map.
pub fn coequaliser(
    space: &ContinuitySpace,
    blocks: &[Vec<String>],
    max_functions: usize,
) -> Result<(ContinuitySpace, SpaceMap)> {
    let n = space.len();
    let mut class_of: Vec<Option<usize>> = vec![None; n];
    let mut reps: Vec<String> = Vec::new();
    for block in blocks {
        if block.is_empty() {
            continue;
        }
        let c = reps.len();
        let mut rep: Option<&str> = None;
        for id in block {
            let i = space.idx(id)?;
            if class_of[i].is_some() {
                return Err(Error::NotAnEquivalence(format!(
                    "point {id:?} appears in two blocks"
                )));
            }
            class_of[i] = Some(c);
            if rep.map_or(true, |r| id.as_str() < r) {
                rep = Some(id);
            }
        }
        reps.push(rep.expect("block is nonempty").to_string());
    }
    for i in 0..n {
        if class_of[i].is_none() {
            class_of[i] = Some(reps.len());
            reps.push(space.point(i).to_string());
        }
    }
    let map: HashMap<String, String> = (0..n)
        .map(|i| {
            (
                space.point(i).to_string(),
                reps[class_of[i].expect("all points classified")].clone(),
            )
        })
        .collect();
    let inst = AdmitsInstance::new(space.clone(), reps, &map)?;
    let ground = function_ground(space, max_functions)?;
    let quotient = final_space(&inst, &ground)?;
    let q = SpaceMap::new(space.clone(), quotient.clone(), |p| map.get(p).cloned())?;
    Ok((quotient, q))
}

/// One leg of a cocone: a source space and the total assignment of its
/// points into the shared target point set.
pub type CoconeLeg = (ContinuitySpace, HashMap<String, String>);

/// The final lift of a cocone: the coproduct of the sources followed by the
/// final space of the induced map from the coproduct onto the target points.
/// Returns the lifted space and the legs as maps into it.
pub fn final_lift(
    cocone: &[CoconeLeg],
    x_points: &[String],
    max_ground: usize,
    max_functions: usize,
) -> Result<(ContinuitySpace, Vec<SpaceMap>)> {
    let sources: Vec<ContinuitySpace> = cocone.iter().map(|(s, _)| s.clone()).collect();
    let (sum, injections) = coproduct(&sources, max_ground)?;
    let mut induced: HashMap<String, String> = HashMap::new();
    for (j, (source, map)) in cocone.iter().enumerate() {
        for p in source.points() {
            let image = map
                .get(p)
                .ok_or_else(|| Error::PartialAssignment(p.clone()))?;
            induced.insert(tagged_point_id(j, p), image.clone());
        }
    }
    let inst = AdmitsInstance::new(sum.clone(), x_points.to_vec(), &induced)?;
    let ground = function_ground(&sum, max_functions)?;
    let lifted = final_space(&inst, &ground)?;
    let legs = cocone
        .iter()
        .zip(&injections)
        .map(|((source, _), inj)| {
            let map: Vec<usize> = (0..source.len())
                .map(|y| {
                    let tagged = sum.point(inj.apply(y));
                    inst.x_idx(&induced[tagged]).expect("induced map is total")
                })
                .collect();
            SpaceMap::from_indices(source.clone(), lifted.clone(), map)
        })
        .collect();
    Ok((lifted, legs))
}
