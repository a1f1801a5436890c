//! Tuple universes, the orders on them, and the shift map.
//!
//! Indecomposables are indexed by non-decreasing integer tuples of length
//! `d + 1`. A [`TupleUniverse`] lists the admissible tuples for a [`Context`]
//! in lexicographic order; every set of indecomposables elsewhere in the
//! crate is a set of positions into that list.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Largest universe built unless the caller raises the cap.
pub const DEFAULT_UNIVERSE_CAP: usize = 4096;

/// Coordinates are bounded in absolute value by this.
pub const COORD_LIMIT: i64 = 1_000_000;

/// A non-decreasing tuple of integers `(x_0, ..., x_d)`.
///
/// The tuple need not belong to any universe; membership is a separate
/// question answered by [`TupleUniverse::position`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OsTuple(SmallVec<[i32; 8]>);

impl OsTuple {
    pub fn new(entries: impl IntoIterator<Item = i32>) -> Result<Self> {
        let t = OsTuple(entries.into_iter().collect());
        if t.0.is_empty() {
            return Err(Error::Usage("tuples must have at least one entry".into()));
        }
        if let Some(i) = t.0.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::Usage(format!(
                "tuple {t} is not non-decreasing at position {i}"
            )));
        }
        if t.0.iter().any(|&c| (c as i64).abs() > COORD_LIMIT) {
            return Err(Error::Usage(format!(
                "tuple {t} has a coordinate beyond {COORD_LIMIT}"
            )));
        }
        Ok(t)
    }

    pub(crate) fn from_vec_unchecked(entries: &[i32]) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0] <= w[1]));
        OsTuple(SmallVec::from_slice(entries))
    }

    #[inline]
    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn first(&self) -> i32 {
        self.0[0]
    }

    #[inline]
    pub fn last(&self) -> i32 {
        self.0[self.0.len() - 1]
    }

    /// Parses `"0,1,2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i32>()
                    .map_err(|_| Error::Parse(format!("malformed tuple {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        OsTuple::new(entries)
    }
}

impl std::ops::Deref for OsTuple {
    type Target = [i32];
    fn deref(&self) -> &[i32] {
        &self.0
    }
}

impl fmt::Display for OsTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for OsTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for OsTuple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for OsTuple {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i32>::deserialize(d)?;
        OsTuple::new(v).map_err(serde::de::Error::custom)
    }
}

fn same_len(x: &[i32], y: &[i32]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::Usage(format!(
            "tuple lengths differ: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    Ok(())
}

/// Product order: `x_i <= y_i` for every `i`.
pub fn leq(x: &[i32], y: &[i32]) -> Result<bool> {
    same_len(x, y)?;
    Ok(leq_unchecked(x, y))
}

#[inline]
pub(crate) fn leq_unchecked(x: &[i32], y: &[i32]) -> bool {
    x.iter().zip(y).all(|(a, b)| a <= b)
}

/// Interleaving relation `x_0 <= y_0 <= x_1 <= y_1 <= ... <= x_d <= y_d`.
pub fn squig(x: &[i32], y: &[i32]) -> Result<bool> {
    same_len(x, y)?;
    Ok(squig_unchecked(x, y))
}

#[inline]
pub(crate) fn squig_unchecked(x: &[i32], y: &[i32]) -> bool {
    let d = x.len() - 1;
    (0..=d).all(|i| x[i] <= y[i] && (i == d || y[i] <= x[i + 1]))
}

/// `squig(x, tau_d(z))` without materialising the shifted tuple.
#[inline]
pub(crate) fn squig_tau_unchecked(x: &[i32], z: &[i32]) -> bool {
    let d = x.len() - 1;
    (0..=d).all(|i| x[i] < z[i] && (i == d || z[i] <= x[i + 1] + 1))
}

/// Decrements every coordinate.
pub fn tau_d(x: &OsTuple) -> OsTuple {
    OsTuple(x.0.iter().map(|c| c - 1).collect())
}

/// `y_d - y_0 + 1`.
pub fn loewy_length(y: &[i32]) -> i64 {
    y[y.len() - 1] as i64 - y[0] as i64 + 1
}

/// Exact binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at each step.
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KupischKind {
    TypeA,
    FiniteAInfinity,
}

/// Loewy-length bounds of a higher Nakayama algebra.
///
/// For [`KupischKind::TypeA`] the entries sit at positions `0..n`. For
/// [`KupischKind::FiniteAInfinity`] they sit at `offset..offset + len` and
/// every other position carries an implicit zero; leading and trailing zeros
/// are trimmed on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KupischSeries {
    kind: KupischKind,
    values: Vec<u32>,
    offset: i64,
}

impl KupischSeries {
    pub fn type_a(values: Vec<u32>) -> Result<Self> {
        let Some(&first) = values.first() else {
            return Err(Error::InvalidKupisch {
                position: 0,
                constraint: "a type A series needs at least one entry".into(),
            });
        };
        if first != 1 {
            return Err(Error::InvalidKupisch {
                position: 0,
                constraint: format!("l_0 = 1 (got {first})"),
            });
        }
        for i in 1..values.len() {
            let (prev, cur) = (values[i - 1], values[i]);
            if cur < 2 {
                return Err(Error::InvalidKupisch {
                    position: i as i64,
                    constraint: format!("2 <= l_{i} (got {cur})"),
                });
            }
            if cur > prev + 1 {
                return Err(Error::InvalidKupisch {
                    position: i as i64,
                    constraint: format!("l_{i} <= l_{} + 1 (got {cur} > {prev} + 1)", i - 1),
                });
            }
        }
        Ok(KupischSeries {
            kind: KupischKind::TypeA,
            values,
            offset: 0,
        })
    }

    /// A finite series of type A-infinity-infinity with `values[0]` at
    /// position `offset`.
    pub fn finite_a_infinity(values: Vec<u32>, offset: i64) -> Result<Self> {
        let start = values.iter().position(|&v| v != 0);
        let (values, offset) = match start {
            None => (Vec::new(), 0),
            Some(s) => {
                let end = values.iter().rposition(|&v| v != 0).unwrap() + 1;
                (values[s..end].to_vec(), offset + s as i64)
            }
        };
        if offset.abs() > COORD_LIMIT || offset + values.len() as i64 > COORD_LIMIT {
            return Err(Error::Usage(format!(
                "window exceeds the coordinate limit {COORD_LIMIT}"
            )));
        }
        let mut prev = 0u32;
        for (i, &v) in values.iter().enumerate() {
            if v > prev + 1 {
                let p = offset + i as i64;
                return Err(Error::InvalidKupisch {
                    position: p,
                    constraint: format!("l_{p} <= l_{} + 1 (got {v} > {prev} + 1)", p - 1),
                });
            }
            prev = v;
        }
        Ok(KupischSeries {
            kind: KupischKind::FiniteAInfinity,
            values,
            offset,
        })
    }

    pub fn kind(&self) -> KupischKind {
        self.kind
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The bound at an arbitrary position; zero outside the window.
    pub fn at(&self, position: i64) -> u32 {
        let i = position - self.offset;
        if i < 0 || i >= self.values.len() as i64 {
            0
        } else {
            self.values[i as usize]
        }
    }

    /// Positions `[lo, hi)` covered by the window.
    pub fn window(&self) -> (i64, i64) {
        (self.offset, self.offset + self.values.len() as i64)
    }
}

impl fmt::Display for KupischSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values.iter().map(u32::to_string).collect();
        write!(f, "({})", v.join(","))?;
        if self.kind == KupischKind::FiniteAInfinity && self.offset != 0 {
            write!(f, "@{}", self.offset)?;
        }
        Ok(())
    }
}

/// Which d-cluster tilting subcategory is being modelled.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Context {
    Auslander { n: usize, d: usize },
    NakayamaA { kupisch: KupischSeries, d: usize },
    NakayamaAInfFinite { kupisch: KupischSeries, d: usize },
}

impl Context {
    pub fn auslander(n: usize, d: usize) -> Result<Self> {
        let c = Context::Auslander { n, d };
        c.validate()?;
        Ok(c)
    }

    pub fn nakayama_a(values: Vec<u32>, d: usize) -> Result<Self> {
        let c = Context::NakayamaA {
            kupisch: KupischSeries::type_a(values)?,
            d,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn nakayama_ainf(values: Vec<u32>, offset: i64, d: usize) -> Result<Self> {
        let c = Context::NakayamaAInfFinite {
            kupisch: KupischSeries::finite_a_infinity(values, offset)?,
            d,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn d(&self) -> usize {
        match self {
            Context::Auslander { d, .. }
            | Context::NakayamaA { d, .. }
            | Context::NakayamaAInfFinite { d, .. } => *d,
        }
    }

    pub fn kupisch(&self) -> Option<&KupischSeries> {
        match self {
            Context::Auslander { .. } => None,
            Context::NakayamaA { kupisch, .. } | Context::NakayamaAInfFinite { kupisch, .. } => {
                Some(kupisch)
            }
        }
    }

    pub fn is_auslander(&self) -> bool {
        matches!(self, Context::Auslander { .. })
    }

    pub fn validate(&self) -> Result<()> {
        if self.d() == 0 {
            return Err(Error::Usage("d must be at least 1".into()));
        }
        match self {
            Context::Auslander { n, .. } => {
                if *n == 0 {
                    return Err(Error::Usage("n must be at least 1".into()));
                }
                if *n as i64 > COORD_LIMIT {
                    return Err(Error::Usage(format!("n must not exceed {COORD_LIMIT}")));
                }
            }
            Context::NakayamaA { kupisch, .. } => {
                if kupisch.kind() != KupischKind::TypeA {
                    return Err(Error::Usage("expected a type A Kupisch series".into()));
                }
                KupischSeries::type_a(kupisch.values().to_vec())?;
            }
            Context::NakayamaAInfFinite { kupisch, .. } => {
                if kupisch.kind() != KupischKind::FiniteAInfinity {
                    return Err(Error::Usage(
                        "expected a finite A-infinity Kupisch series".into(),
                    ));
                }
                KupischSeries::finite_a_infinity(kupisch.values().to_vec(), kupisch.offset())?;
            }
        }
        Ok(())
    }

    /// Coordinate range `[lo, hi)` that tuples may use.
    fn coordinate_range(&self) -> (i64, i64) {
        match self {
            Context::Auslander { n, .. } => (0, *n as i64),
            Context::NakayamaA { kupisch, .. } | Context::NakayamaAInfFinite { kupisch, .. } => {
                kupisch.window()
            }
        }
    }

    /// Loewy bound at a position; `None` means unbounded.
    fn bound_at(&self, p: i64) -> Option<i64> {
        match self {
            Context::Auslander { .. } => None,
            Context::NakayamaA { kupisch, .. } | Context::NakayamaAInfFinite { kupisch, .. } => {
                Some(kupisch.at(p) as i64)
            }
        }
    }

    /// Whether a non-decreasing tuple of any length is admissible here.
    pub fn admits(&self, y: &[i32]) -> bool {
        let (lo, hi) = self.coordinate_range();
        let (first, last) = (y[0] as i64, y[y.len() - 1] as i64);
        if first < lo || last >= hi || y.windows(2).any(|w| w[0] > w[1]) {
            return false;
        }
        match self.bound_at(last) {
            None => true,
            Some(b) => loewy_length(y) <= b,
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Context::Auslander { n, d } => write!(f, "Auslander(n={n}, d={d})"),
            Context::NakayamaA { kupisch, d } => write!(f, "NakayamaA(l={kupisch}, d={d})"),
            Context::NakayamaAInfFinite { kupisch, d } => {
                write!(f, "NakayamaAInf(l={kupisch}, d={d})")
            }
        }
    }
}

/// Precomputed relation tables over a universe.
///
/// `dq_up[a]` is the set of `b` with `a <= b` and equal last coordinate.
/// `ext_fwd[a]` holds every `b` with `a ~> tau_d(b)`, and `ext_rev` is its
/// transpose.
#[derive(Clone, Debug)]
pub struct RelationTables {
    pub dq_up: Vec<BitSet>,
    pub ext_fwd: Vec<BitSet>,
    pub ext_rev: Vec<BitSet>,
    /// `top[a * width + (v - lo)]` is the position of `(a_0, ..., a_{d-1}, v)`.
    top: Option<Vec<u32>>,
    top_width: usize,
    top_lo: i64,
    /// Condition-(2) mixture sets per ext pair, row-compressed by first element.
    mixtures: Option<MixtureTable>,
}

#[derive(Clone, Debug)]
struct MixtureTable {
    row_start: Vec<usize>,
    partner: Vec<u32>,
    words: Vec<u64>,
    word_len: usize,
}

const NONE: u32 = u32::MAX;
const TOP_TABLE_LIMIT: usize = 1 << 24;
const MIXTURE_TABLE_LIMIT: usize = 1 << 22;

/// The admissible tuples of a context, in lexicographic order.
#[derive(Clone, Debug)]
pub struct TupleUniverse {
    context: Context,
    tuples: Vec<OsTuple>,
    index: HashMap<OsTuple, usize>,
    relations: RelationTables,
}

/// Builds the universe with the default size cap.
pub fn build_universe(context: &Context) -> Result<TupleUniverse> {
    TupleUniverse::build(context, DEFAULT_UNIVERSE_CAP)
}

impl TupleUniverse {
    pub fn build(context: &Context, cap: usize) -> Result<TupleUniverse> {
        context.validate()?;
        let d = context.d();
        if let Context::Auslander { n, d } = context {
            let size = binomial((*n + *d) as u64, (*d + 1) as u64);
            if size > cap as u128 {
                return Err(Error::Resource(format!(
                    "universe of {context} has {size} tuples, above the cap of {cap}"
                )));
            }
        }
        let (lo, hi) = context.coordinate_range();
        let mut tuples = Vec::new();
        let mut buf = vec![0i32; d + 1];
        for first in lo..hi {
            // p - l_p is non-decreasing in p, so the admissible last
            // coordinates for a fixed first coordinate form an interval.
            let mut max_last = first - 1;
            for p in first..hi {
                match context.bound_at(p) {
                    None => max_last = p,
                    Some(b) if p - first < b => max_last = p,
                    Some(_) => break,
                }
            }
            if max_last < first {
                continue;
            }
            buf[0] = first as i32;
            fill(&mut buf, 1, first as i32, max_last as i32, &mut tuples, cap)?;
        }
        let index = tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        let relations = RelationTables::compute(&tuples, &index, lo, hi);
        Ok(TupleUniverse {
            context: context.clone(),
            tuples,
            index,
            relations,
        })
    }

    pub fn context(&self) -> &Context {
        &self.context
    }

    pub fn d(&self) -> usize {
        self.context.d()
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuples(&self) -> &[OsTuple] {
        &self.tuples
    }

    pub fn tuple(&self, i: usize) -> &OsTuple {
        &self.tuples[i]
    }

    pub fn position(&self, t: &[i32]) -> Option<usize> {
        if t.len() != self.d() + 1 {
            return None;
        }
        self.index.get(&OsTuple::from_vec_unchecked_any(t)).copied()
    }

    /// Position of a tuple, or a domain error naming it.
    pub fn require(&self, t: &OsTuple) -> Result<usize> {
        if t.len() != self.d() + 1 {
            return Err(Error::Usage(format!(
                "tuple {t} has length {}, expected {}",
                t.len(),
                self.d() + 1
            )));
        }
        self.index
            .get(t)
            .copied()
            .ok_or_else(|| Error::Domain(format!("tuple {t} is not in the universe of {}", self.context)))
    }

    pub fn relations(&self) -> &RelationTables {
        &self.relations
    }

    pub fn empty_set(&self) -> BitSet {
        BitSet::new(self.len())
    }

    pub fn full_set(&self) -> BitSet {
        BitSet::full(self.len())
    }

    /// Position of `(a_0, ..., a_{d-1}, b_d)`, if admissible.
    #[inline]
    pub fn top_mixture(&self, a: usize, b: usize) -> Option<usize> {
        let last = self.tuples[b].last();
        match &self.relations.top {
            Some(tab) => {
                let v = (last as i64 - self.relations.top_lo) as usize;
                let r = tab[a * self.relations.top_width + v];
                (r != NONE).then_some(r as usize)
            }
            None => {
                let mut t: SmallVec<[i32; 8]> = SmallVec::from_slice(&self.tuples[a]);
                let d = t.len() - 1;
                t[d] = last;
                if t[d - 1] > last {
                    return None;
                }
                self.index.get(&OsTuple(t)).copied()
            }
        }
    }

    /// Universe members `y` with `y_i` in `{x_i, z_i}` for every `i`.
    pub fn mixtures_into(&self, x: usize, z: usize, out: &mut BitSet) {
        if let Some(m) = &self.relations.mixtures {
            let row = &m.partner[m.row_start[x]..m.row_start[x + 1]];
            if let Ok(k) = row.binary_search(&(z as u32)) {
                let k = m.row_start[x] + k;
                out.union_words(&m.words[k * m.word_len..(k + 1) * m.word_len]);
                return;
            }
        }
        for p in mixture_positions(&self.tuples[x], &self.tuples[z], &self.index) {
            out.insert(p);
        }
    }
}

impl OsTuple {
    fn from_vec_unchecked_any(entries: &[i32]) -> Self {
        OsTuple(SmallVec::from_slice(entries))
    }
}

fn fill(
    buf: &mut [i32],
    i: usize,
    min: i32,
    max: i32,
    out: &mut Vec<OsTuple>,
    cap: usize,
) -> Result<()> {
    if i == buf.len() {
        if out.len() >= cap {
            return Err(Error::Resource(format!(
                "universe exceeds the cap of {cap} tuples"
            )));
        }
        out.push(OsTuple::from_vec_unchecked(buf));
        return Ok(());
    }
    for v in min..=max {
        buf[i] = v;
        fill(buf, i + 1, v, max, out, cap)?;
    }
    Ok(())
}

/// Admissible mixtures of `x` and `z`, found by walking choice vectors
/// position by position and pruning prefixes that decrease.
pub(crate) fn mixture_positions(
    x: &[i32],
    z: &[i32],
    index: &HashMap<OsTuple, usize>,
) -> Vec<usize> {
    let mut out = Vec::new();
    let mut buf: SmallVec<[i32; 8]> = SmallVec::from_slice(x);
    walk_mixtures(x, z, 0, &mut buf, &mut |t| {
        if let Some(&p) = index.get(&OsTuple(SmallVec::from_slice(t))) {
            out.push(p);
        }
    });
    out.sort_unstable();
    out.dedup();
    out
}

fn walk_mixtures(
    x: &[i32],
    z: &[i32],
    i: usize,
    buf: &mut SmallVec<[i32; 8]>,
    f: &mut impl FnMut(&[i32]),
) {
    if i == x.len() {
        f(buf);
        return;
    }
    let prev = if i == 0 { i32::MIN } else { buf[i - 1] };
    let (a, b) = (x[i], z[i]);
    if a >= prev {
        buf[i] = a;
        walk_mixtures(x, z, i + 1, buf, f);
    }
    if b != a && b >= prev {
        buf[i] = b;
        walk_mixtures(x, z, i + 1, buf, f);
    }
}

impl RelationTables {
    fn compute(tuples: &[OsTuple], index: &HashMap<OsTuple, usize>, lo: i64, hi: i64) -> Self {
        let n = tuples.len();
        let mut dq_up = vec![BitSet::new(n); n];
        let mut ext_fwd = vec![BitSet::new(n); n];
        let mut ext_rev = vec![BitSet::new(n); n];
        for (a, ta) in tuples.iter().enumerate() {
            for (b, tb) in tuples.iter().enumerate() {
                if ta.last() == tb.last() && leq_unchecked(ta, tb) {
                    dq_up[a].insert(b);
                }
                if squig_tau_unchecked(ta, tb) {
                    ext_fwd[a].insert(b);
                    ext_rev[b].insert(a);
                }
            }
        }

        let width = (hi - lo).max(0) as usize;
        let top = (n.saturating_mul(width) <= TOP_TABLE_LIMIT).then(|| {
            let mut tab = vec![NONE; n * width];
            let mut buf: SmallVec<[i32; 8]> = SmallVec::new();
            for (a, ta) in tuples.iter().enumerate() {
                buf.clear();
                buf.extend_from_slice(ta);
                let d = buf.len() - 1;
                for v in 0..width {
                    let last = (lo + v as i64) as i32;
                    if buf[d - 1] > last {
                        continue;
                    }
                    buf[d] = last;
                    if let Some(&p) = index.get(&OsTuple(buf.clone())) {
                        tab[a * width + v] = p as u32;
                    }
                }
            }
            tab
        });

        let pairs: usize = ext_fwd.iter().map(BitSet::len).sum();
        let word_len = n.div_ceil(64);
        let mixtures = (pairs.saturating_mul(word_len) <= MIXTURE_TABLE_LIMIT).then(|| {
            let mut row_start = Vec::with_capacity(n + 1);
            let mut partner = Vec::with_capacity(pairs);
            let mut words = Vec::with_capacity(pairs * word_len);
            for (a, row) in ext_fwd.iter().enumerate() {
                row_start.push(partner.len());
                for b in row.iter() {
                    partner.push(b as u32);
                    let s = BitSet::from_indices(
                        n,
                        mixture_positions(&tuples[a], &tuples[b], index),
                    );
                    words.extend_from_slice(s.words());
                }
            }
            row_start.push(partner.len());
            MixtureTable {
                row_start,
                partner,
                words,
                word_len,
            }
        });

        RelationTables {
            dq_up,
            ext_fwd,
            ext_rev,
            top,
            top_width: width,
            top_lo: lo,
            mixtures,
        }
    }
}

/// Vertices in the support of `M_x`: the `d`-tuples `y` with
/// `x_0 <= y_0 <= x_1 <= ... <= y_{d-1} <= x_d`, restricted to the
/// admissible `d`-tuples of the context. The count is the total dimension.
pub fn module_support(x: &OsTuple, context: &Context) -> Result<Vec<Vec<i32>>> {
    let d = context.d();
    if x.len() != d + 1 {
        return Err(Error::Usage(format!(
            "tuple {x} has length {}, expected {}",
            x.len(),
            d + 1
        )));
    }
    if !context.admits(x) {
        return Err(Error::Domain(format!("tuple {x} is not in the universe of {context}")));
    }
    let mut out = Vec::new();
    let mut buf = vec![0i32; d];
    support_rec(x, 0, &mut buf, context, &mut out);
    Ok(out)
}

fn support_rec(x: &[i32], i: usize, buf: &mut [i32], ctx: &Context, out: &mut Vec<Vec<i32>>) {
    if i == buf.len() {
        if ctx.admits(buf) {
            out.push(buf.to_vec());
        }
        return;
    }
    for v in x[i]..=x[i + 1] {
        buf[i] = v;
        support_rec(x, i + 1, buf, ctx, out);
    }
}
