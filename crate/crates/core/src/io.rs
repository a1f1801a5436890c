//! Result documents (JSON) and Hasse diagrams (DOT).
//!
//! All writers are canonical: the same collection always produces the same
//! bytes, whatever engine or worker count produced it.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::closure::ModuleSet;
use crate::combinatorics::{Context, OsTuple, TupleUniverse, DEFAULT_UNIVERSE_CAP};
use crate::enumerate::{AInfEnumeration, ClassCollection};
use crate::error::{Error, Result};
use crate::lattice::{RegularityReport, SdLaw, SdReport, SdWitness, TorsionLattice};

pub const FORMAT_VERSION: &str = "1";

/// Serialised form of a [`Context`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ContextDescriptor {
    Auslander { n: usize, d: usize },
    NakayamaA { kupisch: Vec<u32>, d: usize },
    NakayamaAinf { kupisch: Vec<u32>, offset: i64, d: usize },
}

impl From<&Context> for ContextDescriptor {
    fn from(c: &Context) -> Self {
        match c {
            Context::Auslander { n, d } => ContextDescriptor::Auslander { n: *n, d: *d },
            Context::NakayamaA { kupisch, d } => ContextDescriptor::NakayamaA {
                kupisch: kupisch.values().to_vec(),
                d: *d,
            },
            Context::NakayamaAInfFinite { kupisch, d } => ContextDescriptor::NakayamaAinf {
                kupisch: kupisch.values().to_vec(),
                offset: kupisch.offset(),
                d: *d,
            },
        }
    }
}

impl ContextDescriptor {
    pub fn to_context(&self) -> Result<Context> {
        match self {
            ContextDescriptor::Auslander { n, d } => Context::auslander(*n, *d),
            ContextDescriptor::NakayamaA { kupisch, d } => Context::nakayama_a(kupisch.clone(), *d),
            ContextDescriptor::NakayamaAinf { kupisch, offset, d } => {
                Context::nakayama_ainf(kupisch.clone(), *offset, *d)
            }
        }
    }
}

/// Lattice-property report emitted by `props`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertiesReport {
    pub is_lattice: bool,
    pub join_semidistributive: bool,
    pub meet_semidistributive: bool,
    pub witness: Option<WitnessDocument>,
    pub hasse_regular: bool,
    pub degree_multiset: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDocument {
    /// `"join"` or `"meet"`.
    pub law: String,
    /// Class indices `[a, b, c]`.
    pub indices: [usize; 3],
    pub classes: [Vec<OsTuple>; 3],
}

impl PropertiesReport {
    pub fn new(lat: &TorsionLattice, sd: &SdReport, reg: &RegularityReport) -> Self {
        let u = lat.collection().universe();
        let classes = lat.collection().classes();
        let witness = sd.witness().map(|w: SdWitness| WitnessDocument {
            law: match w.law {
                SdLaw::Join => "join".into(),
                SdLaw::Meet => "meet".into(),
            },
            indices: [w.a, w.b, w.c],
            classes: [w.a, w.b, w.c].map(|i| classes[i].to_tuples(u)),
        });
        PropertiesReport {
            is_lattice: true,
            join_semidistributive: sd.join_sd,
            meet_semidistributive: sd.meet_sd,
            witness,
            hasse_regular: reg.regular,
            degree_multiset: reg.degree_multiset.clone(),
        }
    }
}

/// One type A block of an A-infinity-infinity result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDocument {
    pub offset: i64,
    pub kupisch: Vec<u32>,
    pub count: u64,
    pub classes: Vec<Vec<OsTuple>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub format_version: String,
    pub context: ContextDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<Vec<OsTuple>>>,
    pub count: u128,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<BlockDocument>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hasse: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub properties: Option<PropertiesReport>,
}

fn class_lists(c: &ClassCollection) -> Vec<Vec<OsTuple>> {
    let u = c.universe();
    c.classes().iter().map(|s| s.to_tuples(u)).collect()
}

impl ResultDocument {
    pub fn from_collection(c: &ClassCollection) -> Self {
        ResultDocument {
            format_version: FORMAT_VERSION.into(),
            context: c.context().into(),
            classes: Some(class_lists(c)),
            count: c.len() as u128,
            blocks: None,
            hasse: None,
            properties: None,
        }
    }

    pub fn from_lattice(lat: &TorsionLattice) -> Self {
        let mut doc = Self::from_collection(lat.collection());
        doc.hasse = Some(lat.covers().iter().map(|&(a, b)| [a, b]).collect());
        doc
    }

    /// Per-block classes and the total count; the global classes are the
    /// unions of one class per block.
    pub fn from_ainf(context: &Context, e: &AInfEnumeration) -> Self {
        let blocks = e
            .decomposition
            .blocks
            .iter()
            .zip(&e.blocks)
            .map(|(b, c)| BlockDocument {
                offset: b.offset,
                kupisch: b.series.values().to_vec(),
                count: c.len() as u64,
                classes: class_lists(c),
            })
            .collect();
        ResultDocument {
            format_version: FORMAT_VERSION.into(),
            context: context.into(),
            classes: None,
            count: e.total,
            blocks: Some(blocks),
            hasse: None,
            properties: None,
        }
    }

    /// Rebuilds the collection, checking each class against the universe.
    ///
    /// Classes are put into canonical order, so indices in the document are
    /// not trusted.
    pub fn to_collection(&self) -> Result<ClassCollection> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported format_version {:?}, expected {FORMAT_VERSION:?}",
                self.format_version
            )));
        }
        let classes = self.classes.as_ref().ok_or_else(|| {
            Error::Usage("the document carries no class list".into())
        })?;
        if self.count != classes.len() as u128 {
            return Err(Error::Inconsistent(format!(
                "count is {} but {} classes are listed",
                self.count,
                classes.len()
            )));
        }
        let ctx = self.context.to_context()?;
        let u = Arc::new(TupleUniverse::build(&ctx, DEFAULT_UNIVERSE_CAP)?);
        let sets = classes
            .iter()
            .map(|c| ModuleSet::from_tuples(&u, c))
            .collect::<Result<Vec<_>>>()?;
        let n = sets.len();
        let coll = ClassCollection::new(u, sets);
        if coll.len() != n {
            return Err(Error::Inconsistent("the class list has duplicates".into()));
        }
        Ok(coll)
    }

    pub fn to_json(&self) -> Result<String> {
        to_canonical_json(self)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Canonical compact JSON for any serialisable value, newline terminated.
pub fn to_canonical_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string(value)?;
    s.push('\n');
    Ok(s)
}

/// Node labels in DOT output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DotLabels {
    Cardinality,
    Full,
}

/// Graphviz `digraph` with an edge `u -> v` whenever `u` covers `v`.
pub fn hasse_to_dot(lat: &TorsionLattice, labels: DotLabels) -> String {
    let u = lat.collection().universe();
    let mut s = String::from("digraph hasse {\n");
    for (i, c) in lat.collection().classes().iter().enumerate() {
        let label = match labels {
            DotLabels::Cardinality => c.len().to_string(),
            DotLabels::Full => {
                let members: Vec<String> = c
                    .tuples(u)
                    .map(|t| t.to_string())
                    .collect();
                format!("{{{}}}", members.join(" "))
            }
        };
        let _ = writeln!(s, "  {i} [label=\"{label}\"];");
    }
    for &(a, b) in lat.covers() {
        let _ = writeln!(s, "  {a} -> {b};");
    }
    s.push_str("}\n");
    s
}
