//! Continuity spaces, epsilon balls, the generated topology, both
//! continuity checkers, the inverse construction from a finite topology,
//! and finite-topology utilities.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, Value};
use crate::omega::{DownSetFamily, GroundSet};
use crate::rational::ExtRational;

/// A finite point set with a lattice-valued distance vanishing on the
/// diagonal. Symmetry and the triangle inequality are not required.
#[derive(Clone, PartialEq, Eq)]
pub struct ContinuitySpace {
    points: Vec<String>,
    index: HashMap<String, usize>,
    lattice: Lattice,
    /// Row-major: d[i * n + j] = d(points[i], points[j]).
    d: Vec<Value>,
}

impl std::fmt::Debug for ContinuitySpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ContinuitySpace({:?} over {:?})",
            self.points, self.lattice
        )
    }
}

fn canonical_points<S: Into<String>>(points: impl IntoIterator<Item = S>) -> Result<Vec<String>> {
    let mut points: Vec<String> = points.into_iter().map(Into::into).collect();
    points.sort();
    for w in points.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateId(w[0].clone()));
        }
    }
    Ok(points)
}

impl ContinuitySpace {
    /// Builds a space from explicit distance entries. Diagonal entries may
    /// be omitted and default to bottom; when present they must be bottom.
    pub fn new<S: Into<String>>(
        points: impl IntoIterator<Item = S>,
        lattice: Lattice,
        entries: impl IntoIterator<Item = (S, S, Value)>,
    ) -> Result<ContinuitySpace> {
        let points = canonical_points(points)?;
        let n = points.len();
        let index: HashMap<String, usize> = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mut d: Vec<Option<Value>> = vec![None; n * n];
        for i in 0..n {
            d[i * n + i] = Some(lattice.bottom());
        }
        for (x, y, v) in entries {
            let (x, y) = (x.into(), y.into());
            let i = *index.get(&x).ok_or(Error::PointNotInSpace(x.clone()))?;
            let j = *index.get(&y).ok_or(Error::PointNotInSpace(y.clone()))?;
            if !lattice.contains(&v) {
                return Err(Error::ValueKindMismatch(format!("{v:?}")));
            }
            if i == j && v != lattice.bottom() {
                return Err(Error::NonzeroDiagonal(x, format!("{v:?}")));
            }
            d[i * n + j] = Some(v);
        }
        let mut dist = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                match d[i * n + j].take() {
                    Some(v) => dist.push(v),
                    None => {
                        return Err(Error::MissingDistance(
                            points[i].clone(),
                            points[j].clone(),
                        ))
                    }
                }
            }
        }
        Ok(ContinuitySpace {
            points,
            index,
            lattice,
            d: dist,
        })
    }

    /// Builds a space from a distance function over point indices (after
    /// canonical sorting). The function must return bottom on the diagonal.
    pub fn from_fn<S: Into<String>>(
        points: impl IntoIterator<Item = S>,
        lattice: Lattice,
        dist: impl Fn(usize, usize) -> Value,
    ) -> Result<ContinuitySpace> {
        let points = canonical_points(points)?;
        let n = points.len();
        let index = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mut d = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = dist(i, j);
                if !lattice.contains(&v) {
                    return Err(Error::ValueKindMismatch(format!("{v:?}")));
                }
                if i == j && v != lattice.bottom() {
                    return Err(Error::NonzeroDiagonal(points[i].clone(), format!("{v:?}")));
                }
                d.push(v);
            }
        }
        Ok(ContinuitySpace {
            points,
            index,
            lattice,
            d,
        })
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn idx(&self, p: &str) -> Result<usize> {
        self.index
            .get(p)
            .copied()
            .ok_or_else(|| Error::PointNotInSpace(p.to_string()))
    }

    pub fn point(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn dist(&self, i: usize, j: usize) -> &Value {
        &self.d[i * self.len() + j]
    }

    pub fn dist_by_id(&self, x: &str, y: &str) -> Result<&Value> {
        Ok(self.dist(self.idx(x)?, self.idx(y)?))
    }

    /// The distinct distance values occurring in the space.
    pub fn realized(&self) -> Vec<Value> {
        let mut vs = self.d.clone();
        vs.sort();
        vs.dedup();
        vs
    }

    /// The finite epsilon test basis for this space's lattice and realized
    /// distances.
    pub fn epsilon_basis(&self) -> Result<Vec<Value>> {
        self.lattice.epsilon_basis(&self.realized())
    }

    /// Center-first epsilon ball: the points y with eps well above d(x, y).
    pub fn ball(&self, x: usize, eps: &Value) -> Result<BitSet> {
        if !self.lattice.is_positive(eps)? {
            return Err(Error::EpsNotPositive(format!("{eps:?}")));
        }
        if self.lattice.is_degenerate() {
            // Single-element value lattice: every distance equals eps and the
            // ball is everything, giving the indiscrete topology.
            return Ok(BitSet::full(self.len()));
        }
        let mut b = BitSet::empty(self.len());
        for y in 0..self.len() {
            if self.lattice.well_above(eps, self.dist(x, y))? {
                b.insert(y);
            }
        }
        Ok(b)
    }

    pub fn ball_by_id(&self, x: &str, eps: &Value) -> Result<Vec<String>> {
        let b = self.ball(self.idx(x)?, eps)?;
        Ok(b.iter().map(|i| self.points[i].clone()).collect())
    }

    /// The smallest basis ball around each point. Basis balls at a point are
    /// nested for every lattice kind (the finite and omega bases are
    /// singletons; rational basis balls grow with the threshold), so this is
    /// the ball at the least basis element.
    fn cores(&self) -> Result<Vec<BitSet>> {
        let basis = self.epsilon_basis()?;
        let least = &basis[0];
        debug_assert!(basis
            .iter()
            .all(|e| self.lattice.leq(least, e).unwrap_or(false)));
        (0..self.len()).map(|x| self.ball(x, least)).collect()
    }

    /// The topology generated by the space: a set is open iff it contains a
    /// basis ball around each of its points.
    pub fn generate_topology(&self) -> Result<FiniteTopology> {
        let n = self.len();
        if n == 0 {
            return FiniteTopology::from_bitsets(Vec::<String>::new(), vec![BitSet::empty(0)]);
        }
        let cores = self.cores()?;
        // Smallest open set containing each point: saturate under cores.
        let mut minimal_opens = Vec::with_capacity(n);
        for x in 0..n {
            let mut u = BitSet::from_indices(n, [x]);
            loop {
                let grown = u
                    .iter()
                    .fold(u.clone(), |acc, y| acc.union(&cores[y]));
                if grown == u {
                    break;
                }
                u = grown;
            }
            minimal_opens.push(u);
        }
        // Every open is a union of minimal opens; close under union.
        let mut opens: Vec<BitSet> = vec![BitSet::empty(n)];
        let mut work: Vec<BitSet> = minimal_opens;
        while let Some(u) = work.pop() {
            if opens.contains(&u) {
                continue;
            }
            for o in opens.clone() {
                let w = o.union(&u);
                if !opens.contains(&w) && w != u {
                    work.push(w);
                }
            }
            opens.push(u);
        }
        FiniteTopology::from_bitsets(self.points.clone(), opens)
    }
}

/// A family of open subsets of a finite point set, closed under union and
/// intersection and containing the empty and full sets.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    points: Vec<String>,
    index: HashMap<String, usize>,
    opens: Vec<BitSet>,
}

impl std::fmt::Debug for FiniteTopology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let opens: Vec<Vec<&str>> = self
            .opens
            .iter()
            .map(|o| o.iter().map(|i| self.points[i].as_str()).collect())
            .collect();
        write!(f, "FiniteTopology({:?}, {opens:?})", self.points)
    }
}

impl FiniteTopology {
    pub fn new<S: Into<String>, T: AsRef<str>>(
        points: impl IntoIterator<Item = S>,
        opens: impl IntoIterator<Item = Vec<T>>,
    ) -> Result<FiniteTopology> {
        let points = canonical_points(points)?;
        let index: HashMap<String, usize> = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mut sets = Vec::new();
        for open in opens {
            let mut s = BitSet::empty(points.len());
            for id in open {
                let i = *index
                    .get(id.as_ref())
                    .ok_or_else(|| Error::PointNotInSpace(id.as_ref().to_string()))?;
                s.insert(i);
            }
            sets.push(s);
        }
        Self::from_bitsets(points, sets)
    }

    pub fn from_bitsets<S: Into<String>>(
        points: impl IntoIterator<Item = S>,
        mut opens: Vec<BitSet>,
    ) -> Result<FiniteTopology> {
        let points = canonical_points(points)?;
        let n = points.len();
        opens.sort_by_key(|o| o.iter().collect::<Vec<usize>>());
        opens.dedup();
        if !opens.contains(&BitSet::empty(n)) {
            return Err(Error::NotATopology("missing the empty set".into()));
        }
        if !opens.contains(&BitSet::full(n)) {
            return Err(Error::NotATopology("missing the full set".into()));
        }
        for a in &opens {
            if a.len() != n {
                return Err(Error::NotATopology("open set over wrong universe".into()));
            }
            for b in &opens {
                if !opens.contains(&a.union(b)) {
                    return Err(Error::NotATopology(format!(
                        "not closed under union: {a:?} ∪ {b:?}"
                    )));
                }
                if !opens.contains(&a.intersection(b)) {
                    return Err(Error::NotATopology(format!(
                        "not closed under intersection: {a:?} ∩ {b:?}"
                    )));
                }
            }
        }
        let index = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Ok(FiniteTopology {
            points,
            index,
            opens,
        })
    }

    pub fn discrete<S: Into<String>>(points: impl IntoIterator<Item = S>) -> FiniteTopology {
        let points = canonical_points(points).unwrap();
        let opens = BitSet::all_subsets(points.len()).collect();
        Self::from_bitsets(points, opens).unwrap()
    }

    pub fn indiscrete<S: Into<String>>(points: impl IntoIterator<Item = S>) -> FiniteTopology {
        let points = canonical_points(points).unwrap();
        let n = points.len();
        Self::from_bitsets(points, vec![BitSet::empty(n), BitSet::full(n)]).unwrap()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn idx(&self, p: &str) -> Result<usize> {
        self.index
            .get(p)
            .copied()
            .ok_or_else(|| Error::PointNotInSpace(p.to_string()))
    }

    pub fn opens(&self) -> &[BitSet] {
        &self.opens
    }

    pub fn is_open(&self, s: &BitSet) -> bool {
        self.opens.contains(s)
    }

    /// Union of all opens contained in the given set.
    pub fn interior(&self, s: &BitSet) -> BitSet {
        self.opens
            .iter()
            .filter(|o| o.is_subset(s))
            .fold(BitSet::empty(self.len()), |acc, o| acc.union(o))
    }

    /// The minimal open neighbourhood of a point (finite topologies are
    /// Alexandrov, so the intersection of all opens containing it is open).
    pub fn core(&self, x: usize) -> BitSet {
        self.opens
            .iter()
            .filter(|o| o.contains(x))
            .fold(BitSet::full(self.len()), |acc, o| acc.intersection(o))
    }

    /// Specialization pairs (x, y) with x in the closure of {y}, i.e. every
    /// open containing x contains y... inverted reading: y in core(x).
    pub fn specialization_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            let core = self.core(x);
            for y in core.iter() {
                if y != x {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Renames points via a bijection, keeping the open-set structure.
    pub fn relabel(&self, rename: impl Fn(&str) -> String) -> Result<FiniteTopology> {
        let new_points: Vec<String> = self.points.iter().map(|p| rename(p)).collect();
        let sorted = canonical_points(new_points.clone())?;
        let perm: Vec<usize> = self
            .points
            .iter()
            .map(|p| sorted.iter().position(|q| *q == rename(p)).unwrap())
            .collect();
        let opens = self
            .opens
            .iter()
            .map(|o| BitSet::from_indices(self.len(), o.iter().map(|i| perm[i])))
            .collect();
        Self::from_bitsets(sorted, opens)
    }
}

/// A function between the point sets of two continuity spaces.
#[derive(Clone)]
pub struct SpaceMap {
    source: ContinuitySpace,
    target: ContinuitySpace,
    /// map[i] = target index of the image of source point i.
    map: Vec<usize>,
}

impl SpaceMap {
    pub fn new(
        source: ContinuitySpace,
        target: ContinuitySpace,
        assignment: impl Fn(&str) -> Option<String>,
    ) -> Result<SpaceMap> {
        let mut map = Vec::with_capacity(source.len());
        for p in source.points() {
            let image = assignment(p).ok_or_else(|| Error::PartialAssignment(p.clone()))?;
            map.push(target.idx(&image)?);
        }
        Ok(SpaceMap {
            source,
            target,
            map,
        })
    }

    pub fn from_indices(
        source: ContinuitySpace,
        target: ContinuitySpace,
        map: Vec<usize>,
    ) -> SpaceMap {
        debug_assert_eq!(map.len(), source.len());
        debug_assert!(map.iter().all(|&j| j < target.len().max(1)));
        SpaceMap {
            source,
            target,
            map,
        }
    }

    pub fn identity(space: &ContinuitySpace) -> SpaceMap {
        SpaceMap {
            source: space.clone(),
            target: space.clone(),
            map: (0..space.len()).collect(),
        }
    }

    pub fn source(&self) -> &ContinuitySpace {
        &self.source
    }

    pub fn target(&self) -> &ContinuitySpace {
        &self.target
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn apply_id(&self, p: &str) -> Result<&str> {
        Ok(self.target.point(self.map[self.source.idx(p)?]))
    }

    pub fn indices(&self) -> &[usize] {
        &self.map
    }

    /// Epsilon-delta continuity over the finite test bases. Returns a
    /// witness (x, eps) with no admissible delta when the map fails.
    pub fn eps_delta_witness(&self) -> Result<Option<(String, Value)>> {
        let src_basis = self.source.epsilon_basis()?;
        let tgt_basis = self.target.epsilon_basis()?;
        for x in 0..self.source.len() {
            for eps in &tgt_basis {
                let target_ball = self.target.ball(self.map[x], eps)?;
                let mut ok = false;
                for delta in &src_basis {
                    let source_ball = self.source.ball(x, delta)?;
                    if source_ball.iter().all(|y| target_ball.contains(self.map[y])) {
                        ok = true;
                        break;
                    }
                }
                if !ok {
                    return Ok(Some((self.source.point(x).to_string(), eps.clone())));
                }
            }
        }
        Ok(None)
    }

    pub fn is_eps_delta_continuous(&self) -> Result<bool> {
        Ok(self.eps_delta_witness()?.is_none())
    }

    /// Topological continuity: preimages of opens of the generated target
    /// topology are open in the generated source topology.
    pub fn is_top_continuous(&self) -> Result<bool> {
        let src_top = self.source.generate_topology()?;
        let tgt_top = self.target.generate_topology()?;
        Ok(top_map_continuous(&src_top, &tgt_top, &self.map))
    }
}

/// Epsilon-delta continuity with the for-all-epsilon quantifier run over the
/// entire enumerated value set of both lattices instead of the test bases.
/// Only available for enumerable kinds; used as a cross-check oracle.
pub fn eps_delta_continuous_full(f: &SpaceMap, max_ground: usize) -> Result<bool> {
    let src_pos = f.source().lattice().enumerate_positives(max_ground)?;
    let tgt_pos = f.target().lattice().enumerate_positives(max_ground)?;
    for x in 0..f.source().len() {
        for eps in &tgt_pos {
            let target_ball = f.target().ball(f.apply(x), eps)?;
            let mut ok = false;
            for delta in &src_pos {
                let source_ball = f.source().ball(x, delta)?;
                let contained = source_ball.iter().all(|y| target_ball.contains(f.apply(y)));
                if contained {
                    ok = true;
                    break;
                }
            }
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Preimage-of-opens continuity between bare finite topologies.
pub fn top_map_continuous(src: &FiniteTopology, tgt: &FiniteTopology, map: &[usize]) -> bool {
    tgt.opens().iter().all(|open| {
        let preimage = BitSet::from_indices(
            src.len(),
            (0..src.len()).filter(|&i| open.contains(map[i])),
        );
        src.is_open(&preimage)
    })
}

/// The omega-valued inverse construction: a continuity space over the
/// lattice of down-set families of opens whose generated topology is the
/// given one. d(x, y) is the down-set of the single maximal set
/// { U open : x in U implies y in U }, so every distance is principal.
pub fn flagg(topology: &FiniteTopology) -> Result<ContinuitySpace> {
    let open_ids: Vec<String> = topology.opens().iter().map(open_id_in(topology)).collect();
    let ground = Arc::new(GroundSet::new(open_ids.clone())?);
    let n_opens = topology.opens().len();
    let d = |x: usize, y: usize| {
        let mut gen = BitSet::empty(ground.len());
        for k in 0..n_opens {
            let u = &topology.opens()[k];
            if !u.contains(x) || u.contains(y) {
                gen.insert(ground.idx(&open_ids[k]).unwrap());
            }
        }
        Value::Omega(DownSetFamily::principal(ground.clone(), gen))
    };
    ContinuitySpace::from_fn(topology.points().to_vec(), Lattice::Omega(ground.clone()), d)
}

fn open_id_in(topology: &FiniteTopology) -> impl Fn(&BitSet) -> String + '_ {
    move |open| {
        let ids: Vec<&str> = open.iter().map(|i| topology.points()[i].as_str()).collect();
        format!("{{{}}}", ids.join(","))
    }
}

/// The id of an open set in the ground of `flagg`'s lattice.
pub fn flagg_open_id(topology: &FiniteTopology, open: &BitSet) -> String {
    open_id_in(topology)(open)
}

/// Rational-valued premetrisation of a finite topology: distance 0 into the
/// minimal open neighbourhood, 1 outside. Finite spaces are first countable
/// with a length-one neighbourhood chain, so this regenerates the topology.
pub fn premetrize(topology: &FiniteTopology) -> Result<ContinuitySpace> {
    let cores: Vec<BitSet> = (0..topology.len()).map(|x| topology.core(x)).collect();
    ContinuitySpace::from_fn(
        topology.points().to_vec(),
        Lattice::ExtRationals,
        |x, y| {
            if cores[x].contains(y) {
                Value::Rational(ExtRational::zero())
            } else {
                Value::Rational(ExtRational::from_int(1))
            }
        },
    )
}

/// All labeled topologies on n points (point ids "p0", "p1", ...), n <= 4.
pub fn enumerate_topologies(n: usize) -> Result<Vec<FiniteTopology>> {
    if n > 4 {
        return Err(Error::NTooLarge(n, 4));
    }
    let points: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let subsets: Vec<BitSet> = BitSet::all_subsets(n).collect();
    let k = subsets.len();
    let empty_at = 0usize; // all_subsets yields the empty set first
    let full_at = k - 1;
    let mut out = Vec::new();
    for pick in 0u64..(1 << k) {
        if pick >> empty_at & 1 == 0 || pick >> full_at & 1 == 0 {
            continue;
        }
        let chosen: Vec<usize> = (0..k).filter(|i| pick >> i & 1 == 1).collect();
        let position = |s: &BitSet| subsets.iter().position(|t| t == s).unwrap();
        let closed = chosen.iter().all(|&a| {
            chosen.iter().all(|&b| {
                let u = position(&subsets[a].union(&subsets[b]));
                let i = position(&subsets[a].intersection(&subsets[b]));
                pick >> u & 1 == 1 && pick >> i & 1 == 1
            })
        });
        if closed {
            let opens = chosen.into_iter().map(|i| subsets[i].clone()).collect();
            out.push(FiniteTopology::from_bitsets(points.clone(), opens)?);
        }
    }
    Ok(out)
}

/// The four-point premetric whose 2-ball about "a" is {a, b, d} with
/// interior {d}: the standard witness that epsilon balls of a premetric
/// need not be open.
pub fn four_point_gap_space() -> ContinuitySpace {
    let q = |n: u64| Value::Rational(ExtRational::from_int(n));
    let dist = |x: &str, y: &str| {
        let pair = if x < y {
            (x, y)
        } else {
            (y, x)
        };
        match pair {
            ("a", "b") | ("b", "c") => 0,
            ("a", "c") => 2,
            _ => 1,
        }
    };
    let points = ["a", "b", "c", "d"];
    let mut entries = Vec::new();
    for x in points {
        for y in points {
            if x != y {
                entries.push((x, y, q(dist(x, y))));
            }
        }
    }
    ContinuitySpace::new(points.to_vec(), Lattice::ExtRationals, entries).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::FiniteLattice;

    pub fn sierpinski() -> FiniteTopology {
        FiniteTopology::new(["x", "y"], [vec![], vec!["x"], vec!["x", "y"]]).unwrap()
    }

    fn set(t: &FiniteTopology, ids: &[&str]) -> BitSet {
        BitSet::from_indices(t.len(), ids.iter().map(|p| t.idx(p).unwrap()))
    }

    #[test]
    fn gap_space_ball_and_interior() {
        let s = four_point_gap_space();
        let two = Value::Rational(ExtRational::from_int(2));
        let ball = s.ball_by_id("a", &two).unwrap();
        assert_eq!(ball, vec!["a", "b", "d"]);
        let top = s.generate_topology().unwrap();
        let ball_set = set_from_ids(&top, &["a", "b", "d"]);
        let interior = top.interior(&ball_set);
        assert_eq!(interior, set_from_ids(&top, &["d"]));
    }

    fn set_from_ids(t: &FiniteTopology, ids: &[&str]) -> BitSet {
        set(t, ids)
    }

    #[test]
    fn center_is_in_its_own_ball() {
        let s = four_point_gap_space();
        for eps in s.epsilon_basis().unwrap() {
            for x in 0..s.len() {
                assert!(s.ball(x, &eps).unwrap().contains(x));
            }
        }
    }

    #[test]
    fn eps_must_be_positive() {
        let s = four_point_gap_space();
        let zero = Value::Rational(ExtRational::zero());
        assert!(matches!(
            s.ball(0, &zero),
            Err(Error::EpsNotPositive(_))
        ));
    }

    #[test]
    fn top_distance_generates_discrete() {
        let chain = Lattice::finite(FiniteLattice::chain(2));
        let top = chain.top();
        let s = ContinuitySpace::from_fn(["p", "q", "r"], chain.clone(), |i, j| {
            if i == j {
                chain.bottom()
            } else {
                top.clone()
            }
        })
        .unwrap();
        assert_eq!(
            s.generate_topology().unwrap(),
            FiniteTopology::discrete(["p", "q", "r"])
        );
    }

    #[test]
    fn chain_valued_symmetric_midpoint_is_discrete() {
        // d(p,q) = d(q,p) = m over the 3-chain: the basis ball is the
        // zero-distance set, so the topology is discrete.
        let chain = Lattice::finite(FiniteLattice::chain(3));
        let m = Value::Finite("1".into());
        let s = ContinuitySpace::new(
            ["p", "q"],
            chain,
            [("p", "q", m.clone()), ("q", "p", m.clone())],
        )
        .unwrap();
        assert_eq!(
            s.generate_topology().unwrap(),
            FiniteTopology::discrete(["p", "q"])
        );
    }

    #[test]
    fn generated_topology_is_valid_for_every_kind() {
        // from_bitsets re-validates closure, so constructing is the test.
        let spaces = [
            four_point_gap_space(),
            flagg(&sierpinski()).unwrap(),
            premetrize(&FiniteTopology::indiscrete(["x", "y", "z"])).unwrap(),
        ];
        for s in spaces {
            s.generate_topology().unwrap();
        }
    }

    #[test]
    fn identity_and_constant_maps_are_continuous() {
        let s = four_point_gap_space();
        let id = SpaceMap::identity(&s);
        assert!(id.is_eps_delta_continuous().unwrap());
        assert!(id.is_top_continuous().unwrap());
        let constant = SpaceMap::new(s.clone(), s.clone(), |_| Some("a".into())).unwrap();
        assert!(constant.is_eps_delta_continuous().unwrap());
    }

    #[test]
    fn discrete_source_into_gap_space_matches_threshold_oracle() {
        // Two-point discrete premetric source, p -> a, q -> c.
        let src = ContinuitySpace::new(
            ["p", "q"],
            Lattice::ExtRationals,
            [
                ("p", "q", Value::Rational(ExtRational::from_int(1))),
                ("q", "p", Value::Rational(ExtRational::from_int(1))),
            ],
        )
        .unwrap();
        let tgt = four_point_gap_space();
        let f = SpaceMap::new(src, tgt, |p| {
            Some(if p == "p" { "a".into() } else { "c".into() })
        })
        .unwrap();
        // The source is discrete: delta = 1 isolates each point, so any
        // function out of it is continuous. The checker must agree with the
        // full threshold evaluation.
        assert!(f.is_eps_delta_continuous().unwrap());
    }

    #[test]
    fn flagg_on_sierpinski() {
        let t = sierpinski();
        let s = flagg(&t).unwrap();
        // d(y, x) is the full family (bottom): every open containing y
        // contains x... check via the space's own lattice.
        let byx = s.dist_by_id("y", "x").unwrap();
        assert_eq!(*byx, s.lattice().bottom());
        let bxy = s.dist_by_id("x", "y").unwrap();
        let Value::Omega(fam) = bxy else { panic!() };
        // The generator is { {}, {x,y} }: the opens not separating x from y.
        assert_eq!(fam.generators().len(), 1);
        assert_eq!(fam.generators()[0].count(), 2);
        assert_eq!(s.generate_topology().unwrap(), t);
    }

    #[test]
    fn flagg_ball_with_principal_single_open() {
        // Ball at x with eps = principal({U}) for x in U stays inside U.
        let t = sierpinski();
        let s = flagg(&t).unwrap();
        let Lattice::Omega(ground) = s.lattice() else {
            panic!()
        };
        for open in t.opens() {
            let id = flagg_open_id(&t, open);
            let gen = ground.subset_from_ids([id.as_str()]).unwrap();
            let eps = Value::Omega(DownSetFamily::principal(ground.clone(), gen));
            for x in open.iter() {
                let xi = s.idx(t.points()[x].as_str()).unwrap();
                let ball = s.ball(xi, &eps).unwrap();
                for y in ball.iter() {
                    assert!(open.contains(t.idx(s.point(y)).unwrap()));
                }
            }
        }
    }

    #[test]
    fn premetrize_examples() {
        let discrete = FiniteTopology::discrete(["x", "y"]);
        let s = premetrize(&discrete).unwrap();
        assert_eq!(
            *s.dist_by_id("x", "y").unwrap(),
            Value::Rational(ExtRational::from_int(1))
        );
        assert_eq!(s.generate_topology().unwrap(), discrete);

        let t = sierpinski();
        let s = premetrize(&t).unwrap();
        assert_eq!(
            *s.dist_by_id("y", "x").unwrap(),
            Value::Rational(ExtRational::zero())
        );
        assert_eq!(
            *s.dist_by_id("x", "y").unwrap(),
            Value::Rational(ExtRational::from_int(1))
        );
        assert_eq!(s.generate_topology().unwrap(), t);

        let indiscrete = FiniteTopology::indiscrete(["x", "y", "z"]);
        let s = premetrize(&indiscrete).unwrap();
        assert!(s.realized().len() == 1);
        assert_eq!(s.generate_topology().unwrap(), indiscrete);
    }

    #[test]
    fn topology_enumeration_counts() {
        assert_eq!(enumerate_topologies(0).unwrap().len(), 1);
        assert_eq!(enumerate_topologies(1).unwrap().len(), 1);
        assert_eq!(enumerate_topologies(2).unwrap().len(), 4);
        assert_eq!(enumerate_topologies(3).unwrap().len(), 29);
        assert!(matches!(
            enumerate_topologies(5),
            Err(Error::NTooLarge(5, 4))
        ));
    }

    #[test]
    fn invalid_topologies_are_rejected() {
        // Missing the union {x} ∪ {y}.
        let err = FiniteTopology::new(
            ["x", "y"],
            [vec![], vec!["x"], vec!["y"], vec!["x", "y"]],
        );
        assert!(err.is_ok()); // this one IS closed; now drop the union:
        let err = FiniteTopology::from_bitsets(
            vec!["x".to_string(), "y".to_string()],
            vec![
                BitSet::empty(2),
                BitSet::from_indices(2, [0]),
                BitSet::from_indices(2, [1]),
            ],
        );
        assert!(matches!(err, Err(Error::NotATopology(_))));
    }
}
