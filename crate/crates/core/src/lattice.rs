//! The lattice of d-torsion classes: meets, joins, the Hasse diagram and the
//! structural checks (semidistributivity, Hasse-regularity).

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::closure::{check_torsion_class, ClosureStrategy, Closer, ModuleSet};
use crate::combinatorics::TupleUniverse;
use crate::enumerate::ClassCollection;
use crate::error::{Error, Result};
use crate::parallel::Workers;

/// Lattices above this size are refused by [`check_semidistributive`].
pub const DEFAULT_SD_NODE_CAP: usize = 2000;

/// A complete class collection together with its cover relation.
#[derive(Clone, Debug)]
pub struct TorsionLattice {
    collection: ClassCollection,
    covers: Vec<(usize, usize)>,
    top: usize,
    bottom: usize,
}

impl TorsionLattice {
    pub fn collection(&self) -> &ClassCollection {
        &self.collection
    }

    /// `(upper, lower)` class indices, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn len(&self) -> usize {
        self.collection.len()
    }

    pub fn is_empty(&self) -> bool {
        self.collection.is_empty()
    }

    /// In-degree plus out-degree of every node.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.len()];
        for &(a, b) in &self.covers {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }
}

fn require_class(set: &ModuleSet, u: &TupleUniverse, name: &str) -> Result<()> {
    check_torsion_class(set, u).map_err(|v| {
        let v = v.tuples(u);
        Error::Usage(format!(
            "{name} is not a d-torsion class (condition {} fails for x={} z={} y={})",
            v.condition, v.x, v.z, v.y
        ))
    })
}

/// `U ∩ V`.
pub fn meet(a: &ModuleSet, b: &ModuleSet, u: &TupleUniverse) -> Result<ModuleSet> {
    require_class(a, u, "the first argument")?;
    require_class(b, u, "the second argument")?;
    let m = a.intersection(b);
    debug_assert!(check_torsion_class(&m, u).is_ok());
    Ok(m)
}

/// Least d-torsion class containing `U ∪ V`.
pub fn join(a: &ModuleSet, b: &ModuleSet, u: &TupleUniverse) -> Result<ModuleSet> {
    require_class(a, u, "the first argument")?;
    require_class(b, u, "the second argument")?;
    let mut closer = Closer::new(u, ClosureStrategy::default_for(u));
    let mut out = a.bits().clone();
    closer.close_from(&mut out, b.bits());
    Ok(ModuleSet::from_bits(out))
}

fn index_of(collection: &ClassCollection) -> HashMap<&BitSet, usize> {
    collection
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| (c.bits(), i))
        .collect()
}

/// Hasse diagram on one worker.
pub fn build_hasse(collection: ClassCollection) -> Result<TorsionLattice> {
    build_hasse_with(collection, 1)
}

/// The upper covers of `U` are the minimal classes among the closures of
/// `U ∪ {x}`, `x` not in `U`.
///
/// Fails with an inconsistency error when the collection lacks the empty or
/// full class or one of those closures.
pub fn build_hasse_with(collection: ClassCollection, workers: usize) -> Result<TorsionLattice> {
    let u = collection.universe().clone();
    let index = index_of(&collection);
    let bottom = *index.get(&u.empty_set()).ok_or_else(|| {
        Error::Inconsistent("the collection has no empty class".into())
    })?;
    let top = *index
        .get(&u.full_set())
        .ok_or_else(|| Error::Inconsistent("the collection has no full class".into()))?;
    let strategy = ClosureStrategy::default_for(&u);
    let n = u.len();
    let nodes: Vec<usize> = (0..collection.len()).collect();
    let pool = Workers::new(workers)?;
    let per_node = pool.map_init(
        &nodes,
        || Closer::new(&u, strategy),
        |closer, &i| -> Result<Vec<usize>> {
            let class = collection.classes()[i].bits();
            let mut exts: Vec<usize> = Vec::new();
            let mut next = class.clone();
            for x in 0..n {
                if class.contains(x) {
                    continue;
                }
                next.clone_from(class);
                closer.close_with(&mut next, x);
                let j = *index.get(&next).ok_or_else(|| {
                    Error::Inconsistent(format!(
                        "the collection is not closed under joins: class #{i} joined with {} is missing",
                        u.tuple(x)
                    ))
                })?;
                if !exts.contains(&j) {
                    exts.push(j);
                }
            }
            let classes = collection.classes();
            let minimal = exts
                .iter()
                .copied()
                .filter(|&j| {
                    !exts.iter().any(|&k| {
                        k != j && classes[k].bits().is_subset(classes[j].bits())
                    })
                })
                .collect();
            Ok(minimal)
        },
    );
    let mut covers = Vec::new();
    for (lower, uppers) in per_node.into_iter().enumerate() {
        for upper in uppers? {
            covers.push((upper, lower));
        }
    }
    covers.sort_unstable();
    Ok(TorsionLattice {
        collection,
        covers,
        top,
        bottom,
    })
}

/// Which law a [`SdWitness`] breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SdLaw {
    /// `a∨b = a∨c` but `a∨(b∧c) != a∨b`.
    Join,
    /// `a∧b = a∧c` but `a∧(b∨c) != a∧b`.
    Meet,
}

/// Class indices of a violating triple, with `b < c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SdWitness {
    pub law: SdLaw,
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SdReport {
    pub join_sd: bool,
    pub meet_sd: bool,
    /// First violating triple of the join law in lexicographic order.
    pub join_witness: Option<SdWitness>,
    /// First violating triple of the meet law in lexicographic order.
    pub meet_witness: Option<SdWitness>,
}

impl SdReport {
    pub fn semidistributive(&self) -> bool {
        self.join_sd && self.meet_sd
    }

    /// The join witness if there is one, else the meet witness.
    pub fn witness(&self) -> Option<SdWitness> {
        self.join_witness.or(self.meet_witness)
    }
}

/// [`check_semidistributive_with`] with the default node cap and one worker.
pub fn check_semidistributive(lat: &TorsionLattice) -> Result<SdReport> {
    check_semidistributive_with(lat, Some(DEFAULT_SD_NODE_CAP), 1)
}

/// Decides both semidistributive laws; `cap = None` lifts the node cap.
///
/// For fixed `a`, the join law holds iff every group of `b` sharing the
/// value `a∨b = v` satisfies `a∨(∧ group) = v`, and dually for the meet
/// law. This needs `O(N^2)` joins; the triple scan only runs to locate the
/// witness for the first failing `a`.
pub fn check_semidistributive_with(
    lat: &TorsionLattice,
    cap: Option<usize>,
    workers: usize,
) -> Result<SdReport> {
    let n = lat.len();
    if let Some(cap) = cap {
        if n > cap {
            return Err(Error::Resource(format!(
                "the lattice has {n} classes, above the semidistributivity cap of {cap}; force the check to run it anyway"
            )));
        }
    }
    let table = JoinTable::build(lat, workers)?;
    let nodes: Vec<usize> = (0..n).collect();
    let pool = Workers::new(workers)?;
    let fails = pool.map_init(&nodes, || (), |_, &a| {
        (table.join_law_fails_at(a), table.meet_law_fails_at(a))
    });
    let join_witness = fails
        .iter()
        .position(|f| f.0)
        .map(|a| table.join_witness_at(a));
    let meet_witness = fails
        .iter()
        .position(|f| f.1)
        .map(|a| table.meet_witness_at(a));
    Ok(SdReport {
        join_sd: join_witness.is_none(),
        meet_sd: meet_witness.is_none(),
        join_witness,
        meet_witness,
    })
}

/// All pairwise joins and meets as class indices.
struct JoinTable {
    n: usize,
    join: Vec<u32>,
    meet: Vec<u32>,
}

impl JoinTable {
    fn build(lat: &TorsionLattice, workers: usize) -> Result<Self> {
        let coll = lat.collection();
        let u = coll.universe().clone();
        let classes = coll.classes();
        let index = index_of(coll);
        let n = classes.len();
        let strategy = ClosureStrategy::default_for(&u);
        let nodes: Vec<usize> = (0..n).collect();
        let pool = Workers::new(workers)?;
        let rows = pool.map_init(
            &nodes,
            || Closer::new(&u, strategy),
            |closer, &a| -> Result<(Vec<u32>, Vec<u32>)> {
                let mut jrow = Vec::with_capacity(n);
                let mut mrow = Vec::with_capacity(n);
                let mut out = u.empty_set();
                for b in classes {
                    out.clone_from(classes[a].bits());
                    closer.close_from(&mut out, b.bits());
                    jrow.push(lookup(&index, &out)?);
                    out.clone_from(classes[a].bits());
                    out.intersect_with(b.bits());
                    mrow.push(lookup(&index, &out)?);
                }
                Ok((jrow, mrow))
            },
        );
        let mut join = Vec::with_capacity(n * n);
        let mut meet = Vec::with_capacity(n * n);
        for r in rows {
            let (j, m) = r?;
            join.extend(j);
            meet.extend(m);
        }
        Ok(JoinTable { n, join, meet })
    }

    #[inline]
    fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b] as usize
    }

    #[inline]
    fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b] as usize
    }

    fn join_law_fails_at(&self, a: usize) -> bool {
        let mut group_meet: HashMap<usize, usize> = HashMap::new();
        for b in 0..self.n {
            let v = self.join(a, b);
            group_meet
                .entry(v)
                .and_modify(|m| *m = self.meet(*m, b))
                .or_insert(b);
        }
        group_meet.iter().any(|(&v, &m)| self.join(a, m) != v)
    }

    fn meet_law_fails_at(&self, a: usize) -> bool {
        let mut group_join: HashMap<usize, usize> = HashMap::new();
        for b in 0..self.n {
            let v = self.meet(a, b);
            group_join
                .entry(v)
                .and_modify(|m| *m = self.join(*m, b))
                .or_insert(b);
        }
        group_join.iter().any(|(&v, &m)| self.meet(a, m) != v)
    }

    fn join_witness_at(&self, a: usize) -> SdWitness {
        for b in 0..self.n {
            for c in b + 1..self.n {
                let v = self.join(a, b);
                if self.join(a, c) == v && self.join(a, self.meet(b, c)) != v {
                    return SdWitness { law: SdLaw::Join, a, b, c };
                }
            }
        }
        unreachable!("the join law fails at {a} but no triple violates it")
    }

    fn meet_witness_at(&self, a: usize) -> SdWitness {
        for b in 0..self.n {
            for c in b + 1..self.n {
                let v = self.meet(a, b);
                if self.meet(a, c) == v && self.meet(a, self.join(b, c)) != v {
                    return SdWitness { law: SdLaw::Meet, a, b, c };
                }
            }
        }
        unreachable!("the meet law fails at {a} but no triple violates it")
    }
}

fn lookup(index: &HashMap<&BitSet, usize>, set: &BitSet) -> Result<u32> {
    index.get(set).map(|&i| i as u32).ok_or_else(|| {
        Error::Inconsistent(format!(
            "the collection is not closed under meets and joins: {set:?} is missing"
        ))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub regular: bool,
    /// Degree to number of nodes with that degree.
    pub degree_multiset: BTreeMap<usize, usize>,
}

/// Regular when every node has the same total cover degree.
pub fn check_hasse_regular(lat: &TorsionLattice) -> RegularityReport {
    let mut degree_multiset = BTreeMap::new();
    for d in lat.degrees() {
        *degree_multiset.entry(d).or_insert(0) += 1;
    }
    RegularityReport {
        regular: degree_multiset.len() <= 1,
        degree_multiset,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::dq_single;
    use crate::combinatorics::{build_universe, Context, OsTuple};
    use crate::enumerate::{enumerate_incremental, EnumConfig};
    use proptest::prelude::*;

    fn t(v: &[i32]) -> OsTuple {
        OsTuple::new(v.iter().copied()).unwrap()
    }

    fn lattice(ctx: Context) -> TorsionLattice {
        build_hasse(enumerate_incremental(&ctx, &EnumConfig::default()).unwrap()).unwrap()
    }

    fn reduction_oracle(classes: &[ModuleSet]) -> Vec<(usize, usize)> {
        let lt = |a: &ModuleSet, b: &ModuleSet| a != b && a.is_subset(b);
        let mut out = Vec::new();
        for (i, a) in classes.iter().enumerate() {
            for (j, b) in classes.iter().enumerate() {
                if lt(b, a) && !classes.iter().any(|m| lt(b, m) && lt(m, a)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn sd_oracle(lat: &TorsionLattice) -> (bool, bool) {
        let cs = lat.collection().classes();
        let u = lat.collection().universe();
        let n = cs.len();
        let j = |a: usize, b: usize| join(&cs[a], &cs[b], u).unwrap();
        let m = |a: &ModuleSet, b: &ModuleSet| a.intersection(b);
        let (mut jsd, mut msd) = (true, true);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab = j(a, b);
                    if ab == j(a, c) {
                        let bc = m(&cs[b], &cs[c]);
                        if join(&cs[a], &bc, u).unwrap() != ab {
                            jsd = false;
                        }
                    }
                    let ab = m(&cs[a], &cs[b]);
                    if ab == m(&cs[a], &cs[c]) && m(&cs[a], &j(b, c)) != ab {
                        msd = false;
                    }
                }
            }
        }
        (jsd, msd)
    }

    #[test]
    fn chain_of_two() {
        for d in 1..=5 {
            let lat = lattice(Context::auslander(1, d).unwrap());
            assert_eq!(lat.len(), 2);
            assert_eq!(lat.covers(), &[(1, 0)]);
            assert_eq!((lat.top(), lat.bottom()), (1, 0));
            let sd = check_semidistributive(&lat).unwrap();
            assert!(sd.join_sd && sd.meet_sd && sd.witness().is_none());
            let r = check_hasse_regular(&lat);
            assert!(r.regular);
            assert_eq!(r.degree_multiset, BTreeMap::from([(1, 2)]));
        }
    }

    #[test]
    fn covers_match_transitive_reduction() {
        let contexts = [
            Context::auslander(2, 1).unwrap(),
            Context::auslander(3, 1).unwrap(),
            Context::auslander(4, 1).unwrap(),
            Context::auslander(2, 2).unwrap(),
            Context::auslander(3, 2).unwrap(),
            Context::auslander(3, 3).unwrap(),
            Context::auslander(2, 6).unwrap(),
            Context::nakayama_a(vec![1, 2, 2, 3], 2).unwrap(),
            Context::nakayama_a(vec![1, 2, 2, 2, 3], 2).unwrap(),
        ];
        for ctx in contexts {
            let lat = lattice(ctx.clone());
            assert!(lat.len() <= 200, "{ctx}: {}", lat.len());
            assert_eq!(lat.covers(), reduction_oracle(lat.collection().classes()), "{ctx}");
            let par = build_hasse_with(lat.collection().clone(), 3).unwrap();
            assert_eq!(par.covers(), lat.covers());
            for &(a, b) in lat.covers() {
                let cs = lat.collection().classes();
                assert!(cs[b].len() < cs[a].len() && cs[b].is_subset(&cs[a]));
            }
        }
    }

    #[test]
    fn pentagon() {
        let lat = lattice(Context::auslander(2, 1).unwrap());
        assert_eq!(lat.len(), 5);
        assert_eq!(lat.covers().len(), 5);
        let r = check_hasse_regular(&lat);
        assert!(r.regular);
        assert_eq!(r.degree_multiset, BTreeMap::from([(2, 5)]));
        let sd = check_semidistributive(&lat).unwrap();
        assert!(sd.semidistributive());
    }

    #[test]
    fn small_lattices_match_triple_scan() {
        for ctx in [
            Context::auslander(2, 2).unwrap(),
            Context::auslander(3, 1).unwrap(),
            Context::auslander(3, 2).unwrap(),
            Context::auslander(2, 4).unwrap(),
            Context::nakayama_a(vec![1, 2, 2, 3], 2).unwrap(),
        ] {
            let lat = lattice(ctx.clone());
            let sd = check_semidistributive(&lat).unwrap();
            assert_eq!((sd.join_sd, sd.meet_sd), sd_oracle(&lat), "{ctx}");
        }
    }

    #[test]
    fn auslander_2_2_values() {
        // Fixed by the exhaustive triple scan above: a 6-element lattice.
        let lat = lattice(Context::auslander(2, 2).unwrap());
        assert_eq!(lat.len(), 6);
        let sd = check_semidistributive(&lat).unwrap();
        assert_eq!((sd.join_sd, sd.meet_sd), sd_oracle(&lat));
        let r = check_hasse_regular(&lat);
        assert_eq!(r.degree_multiset.values().sum::<usize>(), 6);
    }

    #[test]
    fn a33_is_neither_regular_nor_semidistributive() {
        let lat = lattice(Context::auslander(3, 3).unwrap());
        assert_eq!(lat.len(), 46);
        let sd = check_semidistributive(&lat).unwrap();
        assert!(!sd.meet_sd);
        let w = sd.meet_witness.unwrap();
        let cs = lat.collection().classes();
        let u = lat.collection().universe();
        let ab = cs[w.a].intersection(&cs[w.b]);
        assert_eq!(ab, cs[w.a].intersection(&cs[w.c]));
        assert_ne!(ab, cs[w.a].intersection(&join(&cs[w.b], &cs[w.c], u).unwrap()));
        assert_eq!(check_semidistributive(&lat).unwrap(), sd);
        let r = check_hasse_regular(&lat);
        assert!(!r.regular);
        for d in [3, 4, 5] {
            assert!(r.degree_multiset.contains_key(&d));
        }
    }

    #[test]
    fn node_cap() {
        let lat = lattice(Context::auslander(3, 2).unwrap());
        assert!(matches!(
            check_semidistributive_with(&lat, Some(10), 1),
            Err(Error::Resource(_))
        ));
        let forced = check_semidistributive_with(&lat, None, 2).unwrap();
        assert_eq!(forced, check_semidistributive(&lat).unwrap());
    }

    #[test]
    fn meet_and_join_examples() {
        let c = Context::nakayama_a(vec![1, 2, 2, 3], 2).unwrap();
        let u = build_universe(&c).unwrap();
        let set = |v: &[[i32; 3]]| {
            let ts: Vec<OsTuple> = v.iter().map(|x| t(x)).collect();
            ModuleSet::from_tuples(&u, &ts).unwrap()
        };
        let a = set(&[[0, 0, 0], [1, 3, 3], [2, 2, 2], [2, 2, 3], [2, 3, 3], [3, 3, 3]]);
        let b = set(&[
            [1, 1, 2],
            [1, 1, 3],
            [1, 2, 2],
            [1, 2, 3],
            [2, 2, 2],
            [1, 3, 3],
            [2, 2, 3],
            [2, 3, 3],
            [3, 3, 3],
        ]);
        let want = set(&[[2, 2, 2], [1, 3, 3], [2, 2, 3], [2, 3, 3], [3, 3, 3]]);
        assert_eq!(meet(&a, &b, &u).unwrap(), want);
        let full = ModuleSet::full(&u);
        let empty = ModuleSet::empty(&u);
        assert_eq!(meet(&a, &full, &u).unwrap(), a);
        assert_eq!(meet(&a, &empty, &u).unwrap(), empty);
        assert_eq!(join(&a, &empty, &u).unwrap(), a);
        assert_eq!(join(&a, &full, &u).unwrap(), full);
        let bad = set(&[[0, 1, 1]]);
        assert!(matches!(meet(&bad, &a, &u), Err(Error::Usage(_))));
        assert!(matches!(join(&a, &bad, &u), Err(Error::Usage(_))));

        let u = build_universe(&Context::auslander(3, 2).unwrap()).unwrap();
        let j = join(
            &dq_single(&t(&[0, 0, 0]), &u).unwrap(),
            &dq_single(&t(&[1, 1, 1]), &u).unwrap(),
            &u,
        )
        .unwrap();
        let want: Vec<OsTuple> = [[0, 0, 0], [0, 0, 1], [0, 1, 1], [1, 1, 1]]
            .iter()
            .map(|x| t(x))
            .collect();
        assert_eq!(j.to_tuples(&u), want);
    }

    #[test]
    fn missing_join_is_inconsistent() {
        let coll = enumerate_incremental(&Context::auslander(3, 2).unwrap(), &EnumConfig::default())
            .unwrap();
        let u = coll.universe().clone();
        let keep: Vec<ModuleSet> = coll
            .classes()
            .iter()
            .filter(|c| c.is_empty() || c.len() == u.len() || c.len() == 1)
            .cloned()
            .collect();
        let broken = ClassCollection::new(u, keep);
        assert!(matches!(build_hasse(broken), Err(Error::Inconsistent(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn join_laws(i in 0usize..140, j in 0usize..140, k in 0usize..140) {
            thread_local! {
                static COLL: ClassCollection = enumerate_incremental(
                    &Context::auslander(4, 2).unwrap(),
                    &EnumConfig::default(),
                ).unwrap();
            }
            COLL.with(|coll| {
                let u = coll.universe();
                let cs = coll.classes();
                let (a, b, c) = (&cs[i], &cs[j], &cs[k]);
                let ab = join(a, b, u).unwrap();
                prop_assert_eq!(&ab, &join(b, a, u).unwrap());
                prop_assert_eq!(&join(a, a, u).unwrap(), a);
                prop_assert_eq!(
                    join(&ab, c, u).unwrap(),
                    join(a, &join(b, c, u).unwrap(), u).unwrap()
                );
                prop_assert_eq!(&join(a, &ModuleSet::empty(u), u).unwrap(), a);
                prop_assert_eq!(join(a, &ModuleSet::full(u), u).unwrap(), ModuleSet::full(u));
                prop_assert!(coll.contains(&ab));
                prop_assert!(coll.contains(&meet(a, b, u).unwrap()));
                Ok(())
            })?;
        }
    }
}
