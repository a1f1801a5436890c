//! Enumeration of all d-torsion classes of a context.
//!
//! Two engines are provided. [`enumerate_incremental`] saturates the empty
//! class under single-generator joins breadth first and is the default.
//! [`enumerate_paper`] closes every generator set of size `l = 1, 2, ...`
//! until a whole size level produces nothing new; it is kept for
//! cross-validation. Finite A-infinity-infinity series split into type A
//! blocks that are enumerated independently ([`enumerate_ainf`]).

use std::collections::HashSet;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::closure::{check_torsion_class, ClosureStrategy, Closer, ModuleSet};
use crate::combinatorics::{
    Context, KupischKind, KupischSeries, TupleUniverse, DEFAULT_UNIVERSE_CAP,
};
use crate::error::{Error, Result};
use crate::parallel::Workers;

/// Limits and parallelism for an enumeration run.
#[derive(Clone, Debug)]
pub struct EnumConfig {
    /// Abort with a resource error once more classes than this are found.
    pub max_classes: usize,
    pub max_universe: usize,
    /// Largest universe [`enumerate_paper`] accepts.
    pub paper_max_universe: usize,
    /// `0` means one per available core.
    pub workers: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            max_classes: 1_000_000,
            max_universe: DEFAULT_UNIVERSE_CAP,
            paper_max_universe: 64,
            workers: 1,
        }
    }
}

impl EnumConfig {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }
}

/// All d-torsion classes of one context, in canonical order: by cardinality,
/// then by sorted member list.
#[derive(Clone, Debug)]
pub struct ClassCollection {
    universe: Arc<TupleUniverse>,
    classes: Vec<ModuleSet>,
}

impl ClassCollection {
    /// Sorts and deduplicates; does not check the collection invariants.
    pub fn new(universe: Arc<TupleUniverse>, mut classes: Vec<ModuleSet>) -> Self {
        classes.sort_unstable();
        classes.dedup();
        ClassCollection { universe, classes }
    }

    pub fn universe(&self) -> &Arc<TupleUniverse> {
        &self.universe
    }

    pub fn context(&self) -> &Context {
        self.universe.context()
    }

    pub fn classes(&self) -> &[ModuleSet] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Position of a class in canonical order.
    pub fn position(&self, class: &ModuleSet) -> Option<usize> {
        self.classes.binary_search(class).ok()
    }

    pub fn contains(&self, class: &ModuleSet) -> bool {
        self.position(class).is_some()
    }

    /// Checks membership of the empty and full sets, the torsion conditions
    /// for every member and, if asked, closure under intersection.
    pub fn check_invariants(&self, intersections: bool) -> Result<()> {
        let u = &*self.universe;
        for (i, c) in self.classes.iter().enumerate() {
            if let Err(v) = check_torsion_class(c, u) {
                let v = v.tuples(u);
                return Err(Error::Inconsistent(format!(
                    "class #{i} is not a torsion class (condition {} fails for x={} z={} y={})",
                    v.condition, v.x, v.z, v.y
                )));
            }
        }
        if !self.contains(&ModuleSet::empty(u)) {
            return Err(Error::Inconsistent("the empty class is missing".into()));
        }
        if !self.contains(&ModuleSet::full(u)) {
            return Err(Error::Inconsistent("the full class is missing".into()));
        }
        if intersections {
            for (i, a) in self.classes.iter().enumerate() {
                for (j, b) in self.classes.iter().enumerate().skip(i + 1) {
                    if !self.contains(&a.intersection(b)) {
                        return Err(Error::Inconsistent(format!(
                            "the intersection of classes #{i} and #{j} is missing"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_cap(found: usize, cfg: &EnumConfig) -> Result<()> {
    if found > cfg.max_classes {
        return Err(Error::Resource(format!(
            "more than {} classes; raise the class cap to continue",
            cfg.max_classes
        )));
    }
    Ok(())
}

/// Breadth-first join saturation from the empty class.
///
/// Every class `V` is reached: adding the members of `V` one at a time to
/// the empty class and closing stays inside `V` and ends at `V`.
pub fn enumerate_incremental(context: &Context, cfg: &EnumConfig) -> Result<ClassCollection> {
    let u = Arc::new(TupleUniverse::build(context, cfg.max_universe)?);
    enumerate_incremental_in(u, cfg)
}

pub(crate) fn enumerate_incremental_in(
    u: Arc<TupleUniverse>,
    cfg: &EnumConfig,
) -> Result<ClassCollection> {
    let workers = Workers::new(cfg.workers)?;
    let strategy = ClosureStrategy::default_for(&u);
    let n = u.len();
    let mut known: HashSet<BitSet> = HashSet::new();
    known.insert(u.empty_set());
    let mut frontier = vec![u.empty_set()];
    while !frontier.is_empty() {
        let found = workers.map_init(
            &frontier,
            || Closer::new(&u, strategy),
            |closer, class| {
                let mut local: Vec<BitSet> = Vec::new();
                let mut next = class.clone();
                for x in 0..n {
                    if class.contains(x) {
                        continue;
                    }
                    next.clone_from(class);
                    closer.close_with(&mut next, x);
                    if !known.contains(&next) && !local.contains(&next) {
                        local.push(next.clone());
                    }
                }
                local
            },
        );
        frontier = Vec::new();
        for v in found.into_iter().flatten() {
            if !known.contains(&v) {
                known.insert(v.clone());
                frontier.push(v);
            }
        }
        check_cap(known.len(), cfg)?;
    }
    let classes = known.into_iter().map(ModuleSet::from_bits).collect();
    Ok(ClassCollection::new(u, classes))
}

/// Closes every generator set of size `l = 1, 2, ...`, stopping after the
/// first size that contributes no new class.
///
/// Generator sets containing `x != y` with `y` in the d-quotient closure of
/// `x` are skipped, since dropping `y` generates the same class.
pub fn enumerate_paper(context: &Context, cfg: &EnumConfig) -> Result<ClassCollection> {
    if let Context::NakayamaAInfFinite { .. } = context {
        return Err(Error::Usage(
            "the generator-set sweep runs on higher Auslander or type A Nakayama contexts".into(),
        ));
    }
    let u = Arc::new(TupleUniverse::build(context, cfg.max_universe)?);
    if u.len() > cfg.paper_max_universe {
        return Err(Error::Resource(format!(
            "the universe has {} tuples, above the generator-set sweep cap of {}; \
             use the incremental algorithm instead",
            u.len(),
            cfg.paper_max_universe
        )));
    }
    let workers = Workers::new(cfg.workers)?;
    let strategy = ClosureStrategy::default_for(&u);
    let n = u.len();
    let rel = u.relations();
    // Elements comparable to p within its last-coordinate layer.
    let mut blocked = rel.dq_up.clone();
    for (p, up) in rel.dq_up.iter().enumerate() {
        for q in up.iter() {
            blocked[q].insert(p);
        }
    }

    let mut known: HashSet<BitSet> = HashSet::new();
    known.insert(u.empty_set());
    let firsts: Vec<usize> = (0..n).collect();
    for size in 1..=n {
        let found = workers.map_init(
            &firsts,
            || Closer::new(&u, strategy),
            |closer, &first| {
                let mut local: HashSet<BitSet> = HashSet::new();
                let mut chosen = vec![first];
                let mut out = u.empty_set();
                sweep(
                    &mut chosen,
                    blocked[first].clone(),
                    size,
                    n,
                    &blocked,
                    &mut |gens| {
                        out.clear();
                        for &g in gens {
                            closer.close_with(&mut out, g);
                        }
                        if !known.contains(&out) && !local.contains(&out) {
                            local.insert(out.clone());
                        }
                    },
                );
                let mut v: Vec<BitSet> = local.into_iter().collect();
                v.sort_unstable_by(|a, b| a.canonical_cmp(b));
                v
            },
        );
        let before = known.len();
        for v in found.into_iter().flatten() {
            known.insert(v);
        }
        check_cap(known.len(), cfg)?;
        if known.len() == before {
            break;
        }
    }
    let classes = known.into_iter().map(ModuleSet::from_bits).collect();
    Ok(ClassCollection::new(u, classes))
}

/// Visits every increasing index sequence extending `chosen` to `size`
/// elements whose members are pairwise not blocked.
fn sweep(
    chosen: &mut Vec<usize>,
    blocked: BitSet,
    size: usize,
    n: usize,
    table: &[BitSet],
    visit: &mut impl FnMut(&[usize]),
) {
    if chosen.len() == size {
        visit(chosen);
        return;
    }
    let last = *chosen.last().unwrap();
    let remaining = size - chosen.len();
    for next in last + 1..n {
        if n - next < remaining {
            break;
        }
        if blocked.contains(next) {
            continue;
        }
        let mut b = blocked.clone();
        b.union_with(&table[next]);
        chosen.push(next);
        sweep(chosen, b, size, n, table, visit);
        chosen.pop();
    }
}

/// One type A piece of a finite A-infinity-infinity series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub offset: i64,
    pub series: KupischSeries,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
}

impl BlockDecomposition {
    /// Glues the blocks back together, zero-filling the gaps.
    pub fn reassemble(&self) -> Result<KupischSeries> {
        let Some(first) = self.blocks.first() else {
            return KupischSeries::finite_a_infinity(Vec::new(), 0);
        };
        let mut values = Vec::new();
        let mut pos = first.offset;
        for b in &self.blocks {
            while pos < b.offset {
                values.push(0);
                pos += 1;
            }
            values.extend_from_slice(b.series.values());
            pos += b.series.len() as i64;
        }
        KupischSeries::finite_a_infinity(values, first.offset)
    }
}

/// Cuts a finite series at every position with bound at most one.
///
/// No admissible tuple straddles a position `i` with `l_i = 1`: such a tuple
/// would need `y_0 < i <= y_d`, but `p - l_p` is non-decreasing in `p`, so
/// its Loewy length would exceed `l_{y_d}`.
pub fn decompose_blocks(series: &KupischSeries) -> Result<BlockDecomposition> {
    if series.kind() == KupischKind::TypeA {
        return Ok(BlockDecomposition {
            blocks: vec![Block {
                offset: 0,
                series: series.clone(),
            }],
        });
    }
    let mut blocks = Vec::new();
    let mut current: Option<(i64, Vec<u32>)> = None;
    let (lo, hi) = series.window();
    for p in lo..hi {
        let v = series.at(p);
        if v <= 1 {
            if let Some((off, vals)) = current.take() {
                blocks.push((off, vals));
            }
            if v == 1 {
                current = Some((p, vec![1]));
            }
        } else if let Some((_, vals)) = current.as_mut() {
            vals.push(v);
        } else {
            // Unreachable for a validated series: a run after a zero starts at 1.
            return Err(Error::InvalidKupisch {
                position: p,
                constraint: format!("l_{p} <= l_{} + 1", p - 1),
            });
        }
    }
    if let Some(last) = current {
        blocks.push(last);
    }
    let blocks = blocks
        .into_iter()
        .map(|(offset, vals)| {
            Ok(Block {
                offset,
                series: KupischSeries::type_a(vals)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockDecomposition { blocks })
}

/// Per-block enumeration of a finite A-infinity-infinity context.
///
/// A global class is one class per block; [`AInfEnumeration::global_classes`]
/// streams them as block-index tuples without materialising the product.
#[derive(Clone, Debug)]
pub struct AInfEnumeration {
    pub decomposition: BlockDecomposition,
    pub blocks: Vec<ClassCollection>,
    pub total: u128,
}

impl AInfEnumeration {
    pub fn global_classes(&self) -> GlobalClasses<'_> {
        GlobalClasses {
            radices: self.blocks.iter().map(ClassCollection::len).collect(),
            next: Some(vec![0; self.blocks.len()]),
            _owner: self,
        }
    }

    /// The global class chosen by `indices`, as a set in `universe`, which
    /// must be the universe of the original A-infinity-infinity context.
    pub fn materialise(&self, indices: &[usize], universe: &TupleUniverse) -> Result<ModuleSet> {
        if indices.len() != self.blocks.len() {
            return Err(Error::Usage(format!(
                "expected {} block indices, got {}",
                self.blocks.len(),
                indices.len()
            )));
        }
        let mut out = universe.empty_set();
        for ((block, coll), &i) in self
            .decomposition
            .blocks
            .iter()
            .zip(&self.blocks)
            .zip(indices)
        {
            let class = coll.classes().get(i).ok_or_else(|| {
                Error::Usage(format!("block index {i} out of range ({} classes)", coll.len()))
            })?;
            let bu = coll.universe();
            for t in class.tuples(bu) {
                let shifted: Vec<i32> = t.iter().map(|c| c + block.offset as i32).collect();
                let p = universe.position(&shifted).ok_or_else(|| {
                    Error::Usage("universe does not match the decomposed series".into())
                })?;
                out.insert(p);
            }
        }
        Ok(ModuleSet::from_bits(out))
    }
}

/// Mixed-radix counter over block class indices, last block fastest.
pub struct GlobalClasses<'a> {
    radices: Vec<usize>,
    next: Option<Vec<usize>>,
    _owner: &'a AInfEnumeration,
}

impl Iterator for GlobalClasses<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        if self.radices.contains(&0) {
            return None;
        }
        let mut succ = cur.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.radices[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(cur)
    }
}

pub fn enumerate_ainf(context: &Context, cfg: &EnumConfig) -> Result<AInfEnumeration> {
    let Context::NakayamaAInfFinite { kupisch, d } = context else {
        return Err(Error::Usage(
            "block enumeration needs a finite A-infinity-infinity context".into(),
        ));
    };
    let decomposition = decompose_blocks(kupisch)?;
    let mut blocks = Vec::with_capacity(decomposition.blocks.len());
    let mut total: u128 = 1;
    for b in &decomposition.blocks {
        let ctx = Context::NakayamaA {
            kupisch: b.series.clone(),
            d: *d,
        };
        let coll = enumerate_incremental(&ctx, cfg)?;
        total = total
            .checked_mul(coll.len() as u128)
            .ok_or_else(|| Error::Resource("global class count overflows 128 bits".into()))?;
        blocks.push(coll);
    }
    Ok(AInfEnumeration {
        decomposition,
        blocks,
        total,
    })
}

/// Images of every class under intersection with a Nakayama universe.
#[derive(Clone, Debug)]
pub struct Restriction {
    /// One image per input class, in input order.
    pub images: Vec<ModuleSet>,
    /// The distinct images.
    pub collection: ClassCollection,
}

/// Intersects each class of a higher Auslander context with the admissible
/// tuples of a type A Kupisch series of the same length.
pub fn restrict(classes: &ClassCollection, series: &KupischSeries) -> Result<Restriction> {
    let Context::Auslander { n, d } = classes.context() else {
        return Err(Error::Usage("restriction starts from a higher Auslander context".into()));
    };
    if series.kind() != KupischKind::TypeA {
        return Err(Error::Usage("restriction needs a type A Kupisch series".into()));
    }
    if series.len() != *n {
        return Err(Error::Usage(format!(
            "Kupisch series has length {}, expected n = {n}",
            series.len()
        )));
    }
    let ctx = Context::NakayamaA {
        kupisch: series.clone(),
        d: *d,
    };
    let big = classes.universe();
    let small = Arc::new(TupleUniverse::build(&ctx, big.len().max(1))?);
    let map: Vec<Option<usize>> = big.tuples().iter().map(|t| small.position(t)).collect();
    let images: Vec<ModuleSet> = classes
        .classes()
        .iter()
        .map(|c| ModuleSet::from_positions(&small, c.positions().filter_map(|p| map[p])))
        .collect();
    let collection = ClassCollection::new(small, images.clone());
    Ok(Restriction { images, collection })
}
