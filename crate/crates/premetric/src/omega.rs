//! The free-locale-dual lattice over a finite ground set.
//!
//! Elements are downward-closed families of subsets of the ground, ordered
//! by reverse inclusion, and are represented by the antichain of their
//! maximal member sets. With that representation the order test is a
//! generator-wise subset check and the well-above test is a single
//! membership check.
//!
//! The well-above rule used here is derived, not quoted: q is well above p
//! exactly when the union of q's generators is itself a member of p's
//! family. It ships with an equivalence test against the generic
//! finite-lattice well-above relation on materialized instances.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;

/// Canonical (sorted) finite ground set with id lookup.
#[derive(Clone, Eq)]
pub struct GroundSet {
    ids: Vec<String>,
    index: HashMap<String, usize>,
}

impl PartialEq for GroundSet {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids
    }
}

impl PartialOrd for GroundSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroundSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.ids.cmp(&other.ids)
    }
}

impl std::hash::Hash for GroundSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ids.hash(state);
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.ids)
    }
}

impl GroundSet {
    pub fn new<S: Into<String>>(ids: impl IntoIterator<Item = S>) -> Result<GroundSet> {
        let mut ids: Vec<String> = ids.into_iter().map(Into::into).collect();
        ids.sort();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateId(w[0].clone()));
            }
        }
        let index = ids
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Ok(GroundSet { ids, index })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn idx(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::IdNotInGround(id.to_string()))
    }

    pub fn subset_from_ids<S: AsRef<str>>(
        &self,
        ids: impl IntoIterator<Item = S>,
    ) -> Result<BitSet> {
        let mut s = BitSet::empty(self.len());
        for id in ids {
            s.insert(self.idx(id.as_ref())?);
        }
        Ok(s)
    }
}

/// A downward-closed family of subsets of the ground, kept as the antichain
/// of its maximal members. No generators is the empty family (the top under
/// reverse inclusion); the single generator `ground` is the full family
/// (bottom).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DownSetFamily {
    generators: Vec<BitSet>,
    ground: Arc<GroundSet>,
}

impl fmt::Debug for DownSetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<Vec<&str>> = self
            .generators
            .iter()
            .map(|g| g.iter().map(|i| self.ground.ids[i].as_str()).collect())
            .collect();
        write!(f, "gen{gens:?}")
    }
}

fn canonical_sort(generators: &mut Vec<BitSet>) {
    // Ground ids are sorted, so ordering by the index sequence of members is
    // the lexicographic order on id lists.
    generators.sort_by_key(|g| g.iter().collect::<Vec<usize>>());
}

impl DownSetFamily {
    /// The family generated by an arbitrary list of subsets: dominated
    /// subsets removed, duplicates dropped, generators canonically sorted.
    pub fn normalize(ground: Arc<GroundSet>, subsets: Vec<BitSet>) -> DownSetFamily {
        let mut gens: Vec<BitSet> = Vec::new();
        for s in subsets {
            debug_assert_eq!(s.len(), ground.len());
            if gens.iter().any(|g| s.is_subset(g)) {
                continue;
            }
            gens.retain(|g| !g.is_subset(&s));
            gens.push(s);
        }
        canonical_sort(&mut gens);
        DownSetFamily {
            generators: gens,
            ground,
        }
    }

    pub fn from_id_lists<S: AsRef<str>>(
        ground: Arc<GroundSet>,
        subsets: impl IntoIterator<Item = Vec<S>>,
    ) -> Result<DownSetFamily> {
        let mut sets = Vec::new();
        for ids in subsets {
            sets.push(ground.subset_from_ids(ids)?);
        }
        Ok(Self::normalize(ground, sets))
    }

    /// The down-set of a single subset: all subsets of `f`.
    pub fn principal(ground: Arc<GroundSet>, f: BitSet) -> DownSetFamily {
        debug_assert_eq!(f.len(), ground.len());
        DownSetFamily {
            generators: vec![f],
            ground,
        }
    }

    /// The empty family.
    pub fn top(ground: Arc<GroundSet>) -> DownSetFamily {
        DownSetFamily {
            generators: vec![],
            ground,
        }
    }

    /// The full family, i.e. the down-set of the whole ground.
    pub fn bottom(ground: Arc<GroundSet>) -> DownSetFamily {
        let full = BitSet::full(ground.len());
        DownSetFamily {
            generators: vec![full],
            ground,
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn ground_arc(&self) -> Arc<GroundSet> {
        self.ground.clone()
    }

    pub fn generators(&self) -> &[BitSet] {
        &self.generators
    }

    pub fn is_member(&self, f: &BitSet) -> bool {
        self.generators.iter().any(|g| f.is_subset(g))
    }

    fn same_ground(&self, other: &DownSetFamily) -> Result<()> {
        if self.ground == other.ground {
            Ok(())
        } else {
            Err(Error::GroundMismatch)
        }
    }

    /// Reverse-inclusion order: self <= other iff family(self) contains
    /// family(other), i.e. every generator of other sits inside a generator
    /// of self.
    pub fn leq(&self, other: &DownSetFamily) -> Result<bool> {
        self.same_ground(other)?;
        Ok(other.generators.iter().all(|g| self.is_member(g)))
    }

    /// Derived well-above rule: self ≻ other iff the union of self's
    /// generators is a member of other's family.
    pub fn well_above(&self, other: &DownSetFamily) -> Result<bool> {
        self.same_ground(other)?;
        let union = self
            .generators
            .iter()
            .fold(BitSet::empty(self.ground.len()), |acc, g| acc.union(g));
        Ok(other.is_member(&union))
    }

    /// Canonical id string, used as the element id in materializations.
    pub fn canonical_id(&self) -> String {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| {
                let ids: Vec<&str> = g.iter().map(|i| self.ground.ids[i].as_str()).collect();
                format!("{{{}}}", ids.join(","))
            })
            .collect();
        format!("[{}]", gens.join(","))
    }
}

/// Meet of a list: union of the families. The empty meet is top.
pub fn meet(ground: Arc<GroundSet>, fams: &[DownSetFamily]) -> Result<DownSetFamily> {
    let mut gens = Vec::new();
    for f in fams {
        if *f.ground != *ground {
            return Err(Error::GroundMismatch);
        }
        gens.extend(f.generators.iter().cloned());
    }
    Ok(DownSetFamily::normalize(ground, gens))
}

/// Join of a list: intersection of the families, via pairwise generator
/// intersections. The empty join is bottom.
pub fn join(ground: Arc<GroundSet>, fams: &[DownSetFamily]) -> Result<DownSetFamily> {
    let mut acc = DownSetFamily::bottom(ground.clone());
    for f in fams {
        if *f.ground != *ground {
            return Err(Error::GroundMismatch);
        }
        let mut gens = Vec::new();
        for a in &acc.generators {
            for b in &f.generators {
                gens.push(a.intersection(b));
            }
        }
        acc = DownSetFamily::normalize(ground.clone(), gens);
    }
    Ok(acc)
}

/// All downward-closed families over the ground, in canonical id order.
pub fn enumerate_families(
    ground: Arc<GroundSet>,
    max_ground: usize,
) -> Result<Vec<DownSetFamily>> {
    let n = ground.len();
    // 2^(2^n) candidate families: n = 4 (65536 candidates) is the hard cap.
    let cap = max_ground.min(4);
    if n > cap {
        return Err(Error::GroundTooLarge(n, cap));
    }
    let subsets: Vec<BitSet> = BitSet::all_subsets(n).collect();
    let k = subsets.len();
    let mut out = Vec::new();
    for pick in 0u64..(1 << k) {
        let members: Vec<&BitSet> = (0..k).filter(|i| pick >> i & 1 == 1).map(|i| &subsets[i]).collect();
        // Downward closed: every subset of a member is a member.
        let closed = members.iter().all(|m| {
            subsets
                .iter()
                .enumerate()
                .all(|(i, s)| !s.is_subset(m) || pick >> i & 1 == 1)
        });
        if closed {
            out.push(DownSetFamily::normalize(
                ground.clone(),
                members.into_iter().cloned().collect(),
            ));
        }
    }
    out.sort_by_key(|f| f.canonical_id());
    out.dedup();
    Ok(out)
}

/// The explicit finite lattice of all families over a small ground, for
/// cross-validation against the antichain algorithms.
pub fn materialize(ground: Arc<GroundSet>) -> Result<FiniteLattice> {
    let fams = enumerate_families(ground, 4)?;
    let ids: Vec<String> = fams.iter().map(|f| f.canonical_id()).collect();
    let mut pairs = Vec::new();
    for (i, p) in fams.iter().enumerate() {
        for (j, q) in fams.iter().enumerate() {
            if p.leq(q)? {
                pairs.push((ids[i].clone(), ids[j].clone()));
            }
        }
    }
    FiniteLattice::validate(ids, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ground(ids: &[&str]) -> Arc<GroundSet> {
        Arc::new(GroundSet::new(ids.to_vec()).unwrap())
    }

    fn fam(g: &Arc<GroundSet>, subsets: &[&[&str]]) -> DownSetFamily {
        DownSetFamily::from_id_lists(g.clone(), subsets.iter().map(|s| s.to_vec())).unwrap()
    }

    #[test]
    fn normalize_absorbs_dominated_sets() {
        let g = ground(&["u", "v"]);
        assert_eq!(fam(&g, &[&["u"], &["u", "v"]]), fam(&g, &[&["u", "v"]]));
        assert_eq!(
            fam(&g, &[&["u"], &["v"]]).generators().len(),
            2 // already an antichain
        );
        let g3 = ground(&["u", "v", "w"]);
        assert_eq!(
            fam(&g3, &[&["u", "v"], &["v", "w"], &["v"]]),
            fam(&g3, &[&["u", "v"], &["v", "w"]])
        );
    }

    #[test]
    fn normalize_is_idempotent() {
        let g = ground(&["u", "v", "w"]);
        let p = fam(&g, &[&["u", "v"], &["w"], &["u"]]);
        let again = DownSetFamily::normalize(g.clone(), p.generators().to_vec());
        assert_eq!(p, again);
    }

    #[test]
    fn reverse_inclusion_order() {
        let g = ground(&["u", "v"]);
        let p = fam(&g, &[&["u"]]);
        let q = fam(&g, &[&["u", "v"]]);
        // family(q) is everything, so q is below p.
        assert!(q.leq(&p).unwrap());
        assert!(!p.leq(&q).unwrap());
        assert!(p.leq(&p).unwrap());

        let bottom = DownSetFamily::bottom(g.clone());
        let top = DownSetFamily::top(g.clone());
        for f in enumerate_families(g.clone(), 4).unwrap() {
            assert!(bottom.leq(&f).unwrap());
            assert!(f.leq(&top).unwrap());
        }
    }

    #[test]
    fn meet_join_examples() {
        let g = ground(&["u", "v"]);
        let pu = fam(&g, &[&["u"]]);
        let pv = fam(&g, &[&["v"]]);
        assert_eq!(
            meet(g.clone(), &[pu.clone(), pv.clone()]).unwrap(),
            fam(&g, &[&["u"], &["v"]])
        );
        // join is the family {∅}.
        assert_eq!(
            join(g.clone(), &[pu.clone(), pv.clone()]).unwrap(),
            fam(&g, &[&[]])
        );
        let top = DownSetFamily::top(g.clone());
        let bottom = DownSetFamily::bottom(g.clone());
        for p in enumerate_families(g.clone(), 4).unwrap() {
            assert_eq!(meet(g.clone(), &[p.clone(), top.clone()]).unwrap(), p);
            assert_eq!(join(g.clone(), &[p.clone(), bottom.clone()]).unwrap(), p);
        }
        assert_eq!(meet(g.clone(), &[]).unwrap(), top);
        assert_eq!(join(g.clone(), &[]).unwrap(), bottom);
    }

    #[test]
    fn ground_mismatch_is_rejected() {
        let g1 = ground(&["u"]);
        let g2 = ground(&["v"]);
        let p = DownSetFamily::bottom(g1);
        let q = DownSetFamily::bottom(g2);
        assert!(matches!(p.leq(&q), Err(Error::GroundMismatch)));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_families(ground(&[]), 4).unwrap().len(), 2);
        assert_eq!(enumerate_families(ground(&["u"]), 4).unwrap().len(), 3);
        assert_eq!(enumerate_families(ground(&["u", "v"]), 4).unwrap().len(), 6);
        assert_eq!(
            enumerate_families(ground(&["u", "v", "w"]), 4).unwrap().len(),
            20
        );
    }

    #[test]
    fn materialize_counts_and_guard() {
        assert_eq!(materialize(ground(&["u", "v"])).unwrap().len(), 6);
        assert_eq!(materialize(ground(&["u", "v", "w"])).unwrap().len(), 20);
        let big = ground(&["a", "b", "c", "d", "e"]);
        assert!(matches!(
            materialize(big),
            Err(Error::GroundTooLarge(5, 4))
        ));
    }

    #[test]
    fn well_above_examples() {
        let g = ground(&["u", "v"]);
        let bottom = DownSetFamily::bottom(g.clone());
        let top = DownSetFamily::top(g.clone());
        assert!(bottom.well_above(&bottom).unwrap());
        assert!(!top.well_above(&top).unwrap());
        let pu = fam(&g, &[&["u"]]);
        let puv = fam(&g, &[&["u", "v"]]);
        assert!(pu.well_above(&pu).unwrap());
        assert!(!puv.well_above(&pu).unwrap());
        // top is well above everything except top itself.
        for p in enumerate_families(g.clone(), 4).unwrap() {
            assert_eq!(top.well_above(&p).unwrap(), p != top);
        }
    }

    #[test]
    fn well_above_agrees_with_materialized_oracle() {
        for ids in [&[][..], &["u"][..], &["u", "v"][..], &["u", "v", "w"][..]] {
            let g = ground(ids);
            let fams = enumerate_families(g.clone(), 4).unwrap();
            let lat = materialize(g.clone()).unwrap();
            for p in &fams {
                for q in &fams {
                    let generic = lat.well_above_idx(
                        lat.idx(&q.canonical_id()).unwrap(),
                        lat.idx(&p.canonical_id()).unwrap(),
                    );
                    assert_eq!(
                        q.well_above(p).unwrap(),
                        generic,
                        "ground {ids:?}: {q:?} vs {p:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn materializations_are_value_distributive() {
        for ids in [&["u"][..], &["u", "v"][..], &["u", "v", "w"][..]] {
            let lat = materialize(ground(ids)).unwrap();
            assert!(lat.is_value_distributive(), "ground {ids:?}");
        }
    }

    #[test]
    fn membership_matches_principal_order() {
        let g = ground(&["u", "v", "w"]);
        let fams = enumerate_families(g.clone(), 4).unwrap();
        for p in &fams {
            for f in BitSet::all_subsets(3) {
                let principal = DownSetFamily::principal(g.clone(), f.clone());
                assert_eq!(p.is_member(&f), p.leq(&principal).unwrap());
            }
        }
    }

    #[test]
    fn principal_examples() {
        let g = ground(&["U"]);
        let eps = DownSetFamily::principal(g.clone(), g.subset_from_ids(["U"]).unwrap());
        assert_eq!(eps, DownSetFamily::bottom(g.clone()));
        let empty = DownSetFamily::principal(g.clone(), BitSet::empty(1));
        assert!(empty.is_member(&BitSet::empty(1)));
        assert!(!empty.is_member(&BitSet::full(1)));
    }
}
