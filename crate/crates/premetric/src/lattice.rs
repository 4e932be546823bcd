//! Bounded lattices with a uniform value-lattice contract.
//!
//! Every distance value in this crate lives in one of three lattice kinds:
//! an explicit [`FiniteLattice`], the extended nonnegative rationals, or an
//! omega lattice of down-set families over a finite ground (see
//! [`crate::omega`]). The [`Lattice`] handle dispatches order, meets, joins,
//! the well-above relation and the finite epsilon test basis uniformly over
//! the three kinds.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::omega::{self, DownSetFamily, GroundSet};
use crate::rational::ExtRational;

/// An explicit bounded lattice. Elements carry stable string ids and are
/// stored in lexicographic order; all pairwise meets and joins are
/// precomputed at validation time.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    /// up[i] = { j : e_i <= e_j }, the closed order relation by rows.
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteLattice({:?})", self.elements)
    }
}

impl FiniteLattice {
    /// Validates an arbitrary relation on the declared elements: takes the
    /// reflexive-transitive closure, rejects cycles and non-lattices, and
    /// precomputes the meet/join tables.
    pub fn validate<S: Into<String>>(
        elements: impl IntoIterator<Item = S>,
        leq_pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<FiniteLattice> {
        let mut elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        if elements.is_empty() {
            return Err(Error::EmptyLattice);
        }
        elements.sort();
        for w in elements.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateId(w[0].clone()));
            }
        }
        let n = elements.len();
        let index: HashMap<String, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();

        let mut up: Vec<BitSet> = (0..n)
            .map(|i| BitSet::from_indices(n, [i]))
            .collect();
        for (lo, hi) in leq_pairs {
            let (lo, hi) = (lo.into(), hi.into());
            let lo = *index
                .get(&lo)
                .ok_or_else(|| Error::ElementNotInLattice(lo.clone()))?;
            let hi = *index
                .get(&hi)
                .ok_or_else(|| Error::ElementNotInLattice(hi.clone()))?;
            up[lo].insert(hi);
        }
        // Transitive closure, one row at a time.
        loop {
            let mut changed = false;
            for i in 0..n {
                let mut row = up[i].clone();
                for j in up[i].iter() {
                    row = row.union(&up[j]);
                }
                if row != up[i] {
                    up[i] = row;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if up[i].contains(j) && up[j].contains(i) {
                    return Err(Error::NotAPartialOrder(vec![
                        elements[i].clone(),
                        elements[j].clone(),
                    ]));
                }
            }
        }
        let down: Vec<BitSet> = (0..n)
            .map(|i| BitSet::from_indices(n, (0..n).filter(|j| up[*j].contains(i))))
            .collect();

        // glb(i,j) is the member of down[i] ∩ down[j] that dominates the
        // whole intersection; dually for lub.
        let bound = |cands: BitSet, rows: &[BitSet]| -> Option<usize> {
            cands.iter().find(|g| cands.is_subset(&rows[*g]))
        };
        let mut meet = vec![vec![0usize; n]; n];
        let mut join = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                meet[i][j] = bound(down[i].intersection(&down[j]), &down).ok_or_else(|| {
                    Error::NotALattice(elements[i].clone(), elements[j].clone(), "meet")
                })?;
                join[i][j] = bound(up[i].intersection(&up[j]), &up).ok_or_else(|| {
                    Error::NotALattice(elements[i].clone(), elements[j].clone(), "join")
                })?;
            }
        }
        let bottom = (0..n).fold(0, |acc, i| meet[acc][i]);
        let top = (0..n).fold(0, |acc, i| join[acc][i]);
        Ok(FiniteLattice {
            elements,
            index,
            up,
            down,
            meet,
            join,
            bottom,
            top,
        })
    }

    /// The n-element chain with ids "0" < "1" < ... (n <= 10).
    pub fn chain(n: usize) -> FiniteLattice {
        assert!(n >= 1 && n <= 10);
        let ids: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let pairs: Vec<(String, String)> = (1..n)
            .map(|i| (ids[i - 1].clone(), ids[i].clone()))
            .collect();
        FiniteLattice::validate(ids, pairs).unwrap()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn idx(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::ElementNotInLattice(id.to_string()))
    }

    pub fn id(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn bottom_idx(&self) -> usize {
        self.bottom
    }

    pub fn top_idx(&self) -> usize {
        self.top
    }

    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn meet_idx(&self, i: usize, j: usize) -> usize {
        self.meet[i][j]
    }

    pub fn join_idx(&self, i: usize, j: usize) -> usize {
        self.join[i][j]
    }

    /// Order pairs (lo, hi) of the closed relation, for serialization.
    pub fn leq_pairs(&self) -> Vec<(String, String)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.up[i].contains(j) {
                    out.push((self.elements[i].clone(), self.elements[j].clone()));
                }
            }
        }
        out
    }

    /// Covering pairs (lo, hi) of the Hasse diagram.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.up[i].contains(j) {
                    continue;
                }
                let between = (0..n)
                    .any(|k| k != i && k != j && self.up[i].contains(k) && self.up[k].contains(j));
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// y is well above x: whenever x >= meet(S) some s in S lies below y.
    ///
    /// Decided without subset enumeration: collect T = { s : not(s <= y) },
    /// close it under binary meet together with top (the empty meet), and
    /// fail exactly when some member of the closure lies below x.
    pub fn well_above_idx(&self, y: usize, x: usize) -> bool {
        let n = self.len();
        let mut closure = BitSet::from_indices(n, [self.top]);
        for s in 0..n {
            if !self.up[s].contains(y) {
                closure.insert(s);
            }
        }
        loop {
            let mut grown = false;
            let members: Vec<usize> = closure.iter().collect();
            for &a in &members {
                for &b in &members {
                    let m = self.meet[a][b];
                    if !closure.contains(m) {
                        closure.insert(m);
                        grown = true;
                    }
                }
            }
            if !grown {
                break;
            }
        }
        let blocked = closure.iter().any(|s| self.up[s].contains(x));
        !blocked
    }

    /// Indices of the well-above-bottom elements.
    pub fn positives_idx(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| self.well_above_idx(a, self.bottom))
            .collect()
    }

    /// Whether every element is the meet of the elements well above it.
    pub fn is_completely_distributive(&self) -> bool {
        (0..self.len()).all(|y| {
            let m = (0..self.len())
                .filter(|&a| self.well_above_idx(a, y))
                .fold(self.top, |acc, a| self.meet[acc][a]);
            m == y
        })
    }

    /// A pair of well-above-bottom elements whose meet is not well above
    /// bottom, if one exists. Witnesses the failure of the filter condition.
    pub fn filter_violation(&self) -> Option<(usize, usize)> {
        let pos = self.positives_idx();
        for &a in &pos {
            for &b in &pos {
                if !self.well_above_idx(self.meet[a][b], self.bottom) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Completely distributive with the well-above-bottom elements forming a
    /// filter. The one-element lattice counts as (degenerately) value
    /// distributive even though nothing is well above its sole element.
    pub fn is_value_distributive(&self) -> bool {
        if self.len() == 1 {
            return true;
        }
        if !self.is_completely_distributive() {
            return false;
        }
        let pos = self.positives_idx();
        if pos.is_empty() {
            return false;
        }
        // Upward closure holds for any well-above set; checked for safety.
        let upward = pos
            .iter()
            .all(|&a| (0..self.len()).all(|b| !self.up[a].contains(b) || pos.contains(&b)));
        upward && self.filter_violation().is_none()
    }
}

/// A value of one of the three lattice kinds.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Finite(String),
    Rational(ExtRational),
    Omega(DownSetFamily),
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(id) => write!(f, "{id}"),
            Value::Rational(r) => write!(f, "{r}"),
            Value::Omega(p) => write!(f, "{p:?}"),
        }
    }
}

impl Value {
    fn describe(&self) -> String {
        format!("{self:?}")
    }
}

/// Uniform handle over the three value-lattice kinds.
#[derive(Clone, PartialEq, Eq)]
pub enum Lattice {
    Finite(Arc<FiniteLattice>),
    ExtRationals,
    Omega(Arc<GroundSet>),
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lattice::Finite(l) => write!(f, "{l:?}"),
            Lattice::ExtRationals => write!(f, "ExtRationals"),
            Lattice::Omega(g) => write!(f, "Omega({:?})", g.ids()),
        }
    }
}

impl Lattice {
    pub fn finite(l: FiniteLattice) -> Lattice {
        Lattice::Finite(Arc::new(l))
    }

    pub fn omega(ground: GroundSet) -> Lattice {
        Lattice::Omega(Arc::new(ground))
    }

    pub fn contains(&self, v: &Value) -> bool {
        match (self, v) {
            (Lattice::Finite(l), Value::Finite(id)) => l.idx(id).is_ok(),
            (Lattice::ExtRationals, Value::Rational(_)) => true,
            (Lattice::Omega(g), Value::Omega(p)) => p.ground() == g.as_ref(),
            _ => false,
        }
    }

    fn check(&self, v: &Value) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::ValueKindMismatch(v.describe()))
        }
    }

    pub fn bottom(&self) -> Value {
        match self {
            Lattice::Finite(l) => Value::Finite(l.id(l.bottom_idx()).to_string()),
            Lattice::ExtRationals => Value::Rational(ExtRational::zero()),
            Lattice::Omega(g) => Value::Omega(DownSetFamily::bottom(g.clone())),
        }
    }

    pub fn top(&self) -> Value {
        match self {
            Lattice::Finite(l) => Value::Finite(l.id(l.top_idx()).to_string()),
            Lattice::ExtRationals => Value::Rational(ExtRational::Infinity),
            Lattice::Omega(g) => Value::Omega(DownSetFamily::top(g.clone())),
        }
    }

    pub fn leq(&self, a: &Value, b: &Value) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (self, a, b) {
            (Lattice::Finite(l), Value::Finite(a), Value::Finite(b)) => {
                l.leq_idx(l.idx(a)?, l.idx(b)?)
            }
            (Lattice::ExtRationals, Value::Rational(a), Value::Rational(b)) => a <= b,
            (Lattice::Omega(_), Value::Omega(a), Value::Omega(b)) => a.leq(b)?,
            _ => unreachable!(),
        })
    }

    pub fn meet2(&self, a: &Value, b: &Value) -> Result<Value> {
        self.meet([a.clone(), b.clone()])
    }

    pub fn join2(&self, a: &Value, b: &Value) -> Result<Value> {
        self.join([a.clone(), b.clone()])
    }

    /// Meet of a finite list; the empty meet is top.
    pub fn meet(&self, vs: impl IntoIterator<Item = Value>) -> Result<Value> {
        let vs: Vec<Value> = vs.into_iter().collect();
        for v in &vs {
            self.check(v)?;
        }
        Ok(match self {
            Lattice::Finite(l) => {
                let mut acc = l.top_idx();
                for v in &vs {
                    let Value::Finite(id) = v else { unreachable!() };
                    acc = l.meet_idx(acc, l.idx(id)?);
                }
                Value::Finite(l.id(acc).to_string())
            }
            Lattice::ExtRationals => Value::Rational(
                vs.iter()
                    .map(|v| match v {
                        Value::Rational(r) => *r,
                        _ => unreachable!(),
                    })
                    .min()
                    .unwrap_or(ExtRational::Infinity),
            ),
            Lattice::Omega(g) => {
                let fams: Vec<DownSetFamily> = vs
                    .into_iter()
                    .map(|v| match v {
                        Value::Omega(p) => p,
                        _ => unreachable!(),
                    })
                    .collect();
                Value::Omega(omega::meet(g.clone(), &fams)?)
            }
        })
    }

    /// Join of a finite list; the empty join is bottom.
    pub fn join(&self, vs: impl IntoIterator<Item = Value>) -> Result<Value> {
        let vs: Vec<Value> = vs.into_iter().collect();
        for v in &vs {
            self.check(v)?;
        }
        Ok(match self {
            Lattice::Finite(l) => {
                let mut acc = l.bottom_idx();
                for v in &vs {
                    let Value::Finite(id) = v else { unreachable!() };
                    acc = l.join_idx(acc, l.idx(id)?);
                }
                Value::Finite(l.id(acc).to_string())
            }
            Lattice::ExtRationals => Value::Rational(
                vs.iter()
                    .map(|v| match v {
                        Value::Rational(r) => *r,
                        _ => unreachable!(),
                    })
                    .max()
                    .unwrap_or(ExtRational::zero()),
            ),
            Lattice::Omega(g) => {
                let fams: Vec<DownSetFamily> = vs
                    .into_iter()
                    .map(|v| match v {
                        Value::Omega(p) => p,
                        _ => unreachable!(),
                    })
                    .collect();
                Value::Omega(omega::join(g.clone(), &fams)?)
            }
        })
    }

    /// The well-above relation y ≻ x of the handle's kind.
    ///
    /// For the extended rationals this is strict inequality: for any y > x
    /// the witness family { x + (y-x)/n } settles the defining condition, so
    /// the symbolic lattice genuinely differs from its finite-chain
    /// truncations (where well-above collapses to >=).
    pub fn well_above(&self, y: &Value, x: &Value) -> Result<bool> {
        self.check(y)?;
        self.check(x)?;
        Ok(match (self, y, x) {
            (Lattice::Finite(l), Value::Finite(y), Value::Finite(x)) => {
                l.well_above_idx(l.idx(y)?, l.idx(x)?)
            }
            (Lattice::ExtRationals, Value::Rational(y), Value::Rational(x)) => y > x,
            (Lattice::Omega(_), Value::Omega(y), Value::Omega(x)) => y.well_above(x)?,
            _ => unreachable!(),
        })
    }

    /// True when the lattice has a single element, so bottom = top and the
    /// well-above filter of positives is empty. Spaces over it carry the one
    /// possible distance; their sole value acts as the epsilon basis and
    /// every ball is the whole space.
    pub fn is_degenerate(&self) -> bool {
        self.bottom() == self.top()
    }

    pub fn is_positive(&self, eps: &Value) -> Result<bool> {
        if self.is_degenerate() {
            self.check(eps)?;
            return Ok(true);
        }
        self.well_above(eps, &self.bottom())
    }

    /// A finite test set T of positive values such that a monotone-in-eps
    /// continuity or openness predicate holds for all positive eps iff it
    /// holds on T.
    ///
    /// Finite kind: the minimum of the filter of positives. Rational kind:
    /// the positive realized distances (the thresholds where balls change),
    /// or {1} when none occur. Omega kind: {bottom}, which is well above
    /// bottom over a finite ground.
    pub fn epsilon_basis(&self, realized: &[Value]) -> Result<Vec<Value>> {
        for v in realized {
            self.check(v)?;
        }
        match self {
            Lattice::Finite(l) => {
                if !l.is_value_distributive() {
                    return Err(Error::NotValueDistributive(format!("{l:?}")));
                }
                let pos = l.positives_idx();
                let min = pos
                    .iter()
                    .fold(l.top_idx(), |acc, &a| l.meet_idx(acc, a));
                Ok(vec![Value::Finite(l.id(min).to_string())])
            }
            Lattice::ExtRationals => {
                let mut pos: Vec<ExtRational> = realized
                    .iter()
                    .filter_map(|v| match v {
                        Value::Rational(r) if !r.is_zero() => Some(*r),
                        _ => None,
                    })
                    .collect();
                pos.sort();
                pos.dedup();
                if pos.is_empty() {
                    pos.push(ExtRational::from_int(1));
                }
                Ok(pos.into_iter().map(Value::Rational).collect())
            }
            Lattice::Omega(g) => Ok(vec![Value::Omega(DownSetFamily::bottom(g.clone()))]),
        }
    }

    /// All well-above-bottom values, for kinds where the value set is
    /// finitely enumerable. Over a finite ground every omega element is
    /// well above bottom, so the omega case enumerates all families.
    pub fn enumerate_positives(&self, max_ground: usize) -> Result<Vec<Value>> {
        if self.is_degenerate() {
            // The sole value counts as positive (see is_positive), even
            // though the well-above filter proper is empty.
            return Ok(vec![self.bottom()]);
        }
        match self {
            Lattice::Finite(l) => Ok(l
                .positives_idx()
                .into_iter()
                .map(|i| Value::Finite(l.id(i).to_string()))
                .collect()),
            Lattice::ExtRationals => Err(Error::InfiniteValueSet),
            Lattice::Omega(g) => Ok(omega::enumerate_families(g.clone(), max_ground)?
                .into_iter()
                .map(Value::Omega)
                .collect()),
        }
    }

    /// Whether the handle satisfies the value-distributivity contract.
    pub fn is_value_distributive_kind(&self) -> bool {
        match self {
            Lattice::Finite(l) => l.is_value_distributive(),
            Lattice::ExtRationals => true,
            Lattice::Omega(_) => true,
        }
    }
}

/// Small named lattices used as standard positive and negative instances.
pub mod fixtures {
    use super::*;

    /// {0, a, b, 1} with a, b incomparable: the 2-chain x 2-chain.
    pub fn diamond() -> FiniteLattice {
        FiniteLattice::validate(
            ["0", "a", "b", "1"],
            [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
        )
        .unwrap()
    }

    /// Three incomparable atoms under a common top.
    pub fn m3() -> FiniteLattice {
        FiniteLattice::validate(
            ["0", "a", "b", "c", "1"],
            [
                ("0", "a"),
                ("0", "b"),
                ("0", "c"),
                ("a", "1"),
                ("b", "1"),
                ("c", "1"),
            ],
        )
        .unwrap()
    }

    /// The pentagon.
    pub fn n5() -> FiniteLattice {
        FiniteLattice::validate(
            ["0", "a", "b", "c", "1"],
            [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        )
        .unwrap()
    }
}
