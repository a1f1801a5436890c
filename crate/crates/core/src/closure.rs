//! d-quotient closure, d-extension closure, and the torsion-class test.
//!
//! A set `I` of universe positions is a d-torsion class exactly when
//!
//! 1. `x in I`, `x <= z` and `x_d = z_d` imply `z in I`, and
//! 2. `x, z in I` with `x ~> tau_d(z)` imply that every admissible `y` with
//!    `y_i in {x_i, z_i}` lies in `I`.
//!
//! [`generate_minimal`] computes the least such set above a generator set,
//! either by adding only the top mixture `(x_0, ..., x_{d-1}, z_d)` and
//! closing under d-quotients (higher Auslander contexts) or by closing under
//! both conditions directly (all contexts).

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::combinatorics::{OsTuple, TupleUniverse};
use crate::error::{Error, Result};

/// A subset of a universe, stored as a set of positions.
///
/// Ordered canonically: by cardinality, then by sorted member list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ModuleSet(BitSet);

impl ModuleSet {
    pub fn empty(u: &TupleUniverse) -> Self {
        ModuleSet(u.empty_set())
    }

    pub fn full(u: &TupleUniverse) -> Self {
        ModuleSet(u.full_set())
    }

    pub fn from_bits(bits: BitSet) -> Self {
        ModuleSet(bits)
    }

    pub fn from_positions(u: &TupleUniverse, positions: impl IntoIterator<Item = usize>) -> Self {
        ModuleSet(BitSet::from_indices(u.len(), positions))
    }

    /// Duplicates are ignored; any tuple outside the universe is a domain error.
    pub fn from_tuples<'a>(
        u: &TupleUniverse,
        tuples: impl IntoIterator<Item = &'a OsTuple>,
    ) -> Result<Self> {
        let mut s = u.empty_set();
        for t in tuples {
            s.insert(u.require(t)?);
        }
        Ok(ModuleSet(s))
    }

    pub fn bits(&self) -> &BitSet {
        &self.0
    }

    pub fn into_bits(self) -> BitSet {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, position: usize) -> bool {
        self.0.contains(position)
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter()
    }

    pub fn tuples<'u>(&'u self, u: &'u TupleUniverse) -> impl Iterator<Item = &'u OsTuple> + 'u {
        self.0.iter().map(move |p| u.tuple(p))
    }

    pub fn to_tuples(&self, u: &TupleUniverse) -> Vec<OsTuple> {
        self.tuples(u).cloned().collect()
    }

    pub fn is_subset(&self, other: &ModuleSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn intersection(&self, other: &ModuleSet) -> ModuleSet {
        ModuleSet(self.0.intersection(&other.0))
    }

    pub fn union(&self, other: &ModuleSet) -> ModuleSet {
        ModuleSet(self.0.union(&other.0))
    }
}

impl Ord for ModuleSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.canonical_cmp(&other.0)
    }
}

impl PartialOrd for ModuleSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ModuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `{ y : x <= y, y_d = x_d }`.
pub fn dq_single(x: &OsTuple, u: &TupleUniverse) -> Result<ModuleSet> {
    let p = u.require(x)?;
    Ok(ModuleSet(u.relations().dq_up[p].clone()))
}

/// Union of [`dq_single`] over the members.
pub fn dq_set(set: &ModuleSet, u: &TupleUniverse) -> ModuleSet {
    let mut out = u.empty_set();
    dq_into(set.bits(), u, &mut out);
    ModuleSet(out)
}

#[inline]
fn dq_into(seeds: &BitSet, u: &TupleUniverse, out: &mut BitSet) {
    let up = &u.relations().dq_up;
    for p in seeds.iter() {
        out.union_with(&up[p]);
    }
}

/// The first failure of a torsion-class condition.
///
/// For condition 1, `z` is the missing member above `x` and `y == z`. For
/// condition 2, `y` is the smallest missing mixture of `x` and `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: u8,
    pub x: usize,
    pub z: usize,
    pub y: usize,
}

/// Tuple form of a [`Violation`], for reporting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ViolationTuples {
    pub condition: u8,
    pub x: OsTuple,
    pub z: OsTuple,
    pub y: OsTuple,
}

impl Violation {
    pub fn tuples(&self, u: &TupleUniverse) -> ViolationTuples {
        ViolationTuples {
            condition: self.condition,
            x: u.tuple(self.x).clone(),
            z: u.tuple(self.z).clone(),
            y: u.tuple(self.y).clone(),
        }
    }
}

/// `Ok(())` for a d-torsion class, otherwise the canonically smallest
/// violating `(x, z, y)`.
pub fn check_torsion_class(set: &ModuleSet, u: &TupleUniverse) -> std::result::Result<(), Violation> {
    let rel = u.relations();
    let i = set.bits();
    let mut mixes = u.empty_set();
    for x in i.iter() {
        let cond1 = rel.dq_up[x].first_not_in(i);
        let mut cond2 = None;
        for z in i.iter_and(&rel.ext_fwd[x]) {
            if cond1.is_some_and(|c| c < z) {
                break;
            }
            mixes.clear();
            u.mixtures_into(x, z, &mut mixes);
            if let Some(y) = mixes.first_not_in(i) {
                cond2 = Some((z, y));
                break;
            }
        }
        match (cond1, cond2) {
            (Some(z1), Some((z2, y))) if z2 < z1 => {
                return Err(Violation { condition: 2, x, z: z2, y })
            }
            (Some(z), _) => return Err(Violation { condition: 1, x, z, y: z }),
            (None, Some((z, y))) => return Err(Violation { condition: 2, x, z, y }),
            (None, None) => {}
        }
    }
    Ok(())
}

pub fn is_torsion_class(set: &ModuleSet, u: &TupleUniverse) -> bool {
    check_torsion_class(set, u).is_ok()
}

/// How extension closure is realised during [`generate_minimal`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureStrategy {
    /// Add `(x_0, ..., x_{d-1}, z_d)` per extension pair, then close under
    /// d-quotients. Only valid for higher Auslander contexts.
    TopMixture,
    /// Add every admissible mixture per extension pair.
    ConditionFixpoint,
}

impl ClosureStrategy {
    pub fn default_for(u: &TupleUniverse) -> Self {
        if u.context().is_auslander() {
            ClosureStrategy::TopMixture
        } else {
            ClosureStrategy::ConditionFixpoint
        }
    }
}

/// Which pairs each round inspects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairScan {
    /// Every pair in the current set, every round.
    Full,
    /// Only pairs with at least one member added in the previous round.
    Frontier,
}

/// Least d-torsion class containing the generators.
pub fn generate_minimal(generators: &[OsTuple], u: &TupleUniverse) -> Result<ModuleSet> {
    let seeds = ModuleSet::from_tuples(u, generators)?;
    generate_minimal_with(&seeds, u, ClosureStrategy::default_for(u), PairScan::Frontier)
}

pub fn generate_minimal_with(
    seeds: &ModuleSet,
    u: &TupleUniverse,
    strategy: ClosureStrategy,
    scan: PairScan,
) -> Result<ModuleSet> {
    if strategy == ClosureStrategy::TopMixture && !u.context().is_auslander() {
        return Err(Error::Usage(
            "the top-mixture closure is only valid for higher Auslander contexts".into(),
        ));
    }
    Ok(match scan {
        PairScan::Frontier => {
            let mut closer = Closer::new(u, strategy);
            let mut out = u.empty_set();
            closer.close_from(&mut out, seeds.bits());
            ModuleSet(out)
        }
        PairScan::Full => ModuleSet(close_full_scan(seeds.bits(), u, strategy)),
    })
}

fn close_full_scan(seeds: &BitSet, u: &TupleUniverse, strategy: ClosureStrategy) -> BitSet {
    let rel = u.relations();
    let mut i = seeds.clone();
    loop {
        let before = i.clone();
        let mut add = u.empty_set();
        for x in before.iter() {
            for z in before.iter_and(&rel.ext_fwd[x]) {
                match strategy {
                    ClosureStrategy::TopMixture => {
                        if let Some(t) = u.top_mixture(x, z) {
                            add.insert(t);
                        }
                    }
                    ClosureStrategy::ConditionFixpoint => u.mixtures_into(x, z, &mut add),
                }
            }
        }
        i.union_with(&add);
        let snapshot = i.clone();
        dq_into(&snapshot, u, &mut i);
        if i == before {
            return i;
        }
    }
}

/// Reusable frontier-closure state for one universe.
pub(crate) struct Closer<'u> {
    u: &'u TupleUniverse,
    strategy: ClosureStrategy,
    fresh: BitSet,
    add: BitSet,
}

impl<'u> Closer<'u> {
    pub(crate) fn new(u: &'u TupleUniverse, strategy: ClosureStrategy) -> Self {
        Closer {
            u,
            strategy,
            fresh: u.empty_set(),
            add: u.empty_set(),
        }
    }

    /// Grows the torsion class `set` until it also contains `seeds`.
    ///
    /// `set` must already satisfy both conditions on entry.
    pub(crate) fn close_from(&mut self, set: &mut BitSet, seeds: &BitSet) {
        let rel = self.u.relations();
        self.fresh.clear();
        for p in seeds.iter() {
            if !set.contains(p) {
                self.fresh.union_with(&rel.dq_up[p]);
            }
        }
        self.fresh.difference_with(set);
        set.union_with(&self.fresh);
        self.propagate(set);
    }

    /// Same as [`Closer::close_from`] with a single seed.
    pub(crate) fn close_with(&mut self, set: &mut BitSet, seed: usize) {
        let rel = self.u.relations();
        if set.contains(seed) {
            return;
        }
        self.fresh.clone_from(&rel.dq_up[seed]);
        self.fresh.difference_with(set);
        set.union_with(&self.fresh);
        self.propagate(set);
    }

    fn propagate(&mut self, set: &mut BitSet) {
        let u = self.u;
        let rel = u.relations();
        while !self.fresh.is_empty() {
            self.add.clear();
            for a in self.fresh.iter() {
                for b in set.iter_and(&rel.ext_fwd[a]) {
                    contribute(u, self.strategy, &mut self.add, a, b);
                }
                for b in set.iter_and(&rel.ext_rev[a]) {
                    contribute(u, self.strategy, &mut self.add, b, a);
                }
            }
            self.add.difference_with(set);
            self.fresh.clear();
            for p in self.add.iter() {
                self.fresh.union_with(&rel.dq_up[p]);
            }
            self.fresh.difference_with(set);
            set.union_with(&self.fresh);
        }
    }
}

#[inline]
fn contribute(u: &TupleUniverse, strategy: ClosureStrategy, add: &mut BitSet, x: usize, z: usize) {
    match strategy {
        ClosureStrategy::TopMixture => {
            if let Some(t) = u.top_mixture(x, z) {
                add.insert(t);
            }
        }
        ClosureStrategy::ConditionFixpoint => u.mixtures_into(x, z, add),
    }
}
