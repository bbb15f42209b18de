//! Instance files: the JSON documents the command line consumes.
//!
//! Schema (all fields optional, but commands state what they need):
//!
//! ```json
//! {
//!   "space": 3,
//!   "families": {"L": [[0], [0, 1]], "R": [[2], [1, 2]]},
//!   "relation": [[0, 1], [1, 2], [0, 2]],
//!   "topology": [[], [0], [0, 1, 2]],
//!   "fermat": ["t^(1/2)", "1 + 2*t"]
//! }
//! ```
//!
//! Families collapse duplicate sets on load with a warning. The canonical
//! printed form (sorted sets, canonical member order, canonical Fermat
//! expressions) feeds the instance digest, so reports identify instances
//! stably across formatting differences.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fermat::{parse_fermat, FermatReal};
use crate::relation::Relation;
use crate::space::{FiniteSpace, PointSet, SubsetFamily};
use crate::topology::Topology;

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    space: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    families: Option<BTreeMap<String, Vec<Vec<usize>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    relation: Option<Vec<(usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    topology: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fermat: Option<Vec<String>>,
}

/// A validated instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub space: Option<FiniteSpace>,
    pub families: BTreeMap<String, SubsetFamily>,
    pub relation: Option<Relation>,
    pub topology: Option<Topology>,
    pub fermat: Vec<FermatReal>,
    /// Non-fatal findings from loading, surfaced in reports.
    pub warnings: Vec<String>,
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let doc: InstanceDoc =
        serde_json::from_str(text).map_err(|e| Error::parse(format!("instance: {e}")))?;
    let mut warnings = Vec::new();

    let space = doc.space.map(FiniteSpace::new).transpose()?;
    let need_space = |what: &str| -> Result<FiniteSpace> {
        space.ok_or_else(|| Error::input(format!("field '{what}' requires field 'space'")))
    };

    let mut families = BTreeMap::new();
    if let Some(fams) = &doc.families {
        let space = need_space("families")?;
        for (name, lists) in fams {
            let sets = lists
                .iter()
                .enumerate()
                .map(|(i, points)| {
                    PointSet::from_points(space, points).map_err(|e| {
                        Error::input(format!("families.{name}[{i}]: {e}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let (family, collapsed) = SubsetFamily::new_reporting(space, sets)?;
            if collapsed > 0 {
                warnings.push(format!(
                    "families.{name}: collapsed {collapsed} duplicate set(s)"
                ));
            }
            families.insert(name.clone(), family);
        }
    }

    let relation = match &doc.relation {
        Some(pairs) => {
            let space = need_space("relation")?;
            Some(
                Relation::from_pairs(space, pairs)
                    .map_err(|e| Error::input(format!("relation: {e}")))?,
            )
        }
        None => None,
    };

    let topology = match &doc.topology {
        Some(lists) => {
            let space = need_space("topology")?;
            let sets = lists
                .iter()
                .enumerate()
                .map(|(i, points)| {
                    PointSet::from_points(space, points)
                        .map_err(|e| Error::input(format!("topology[{i}]: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let opens = SubsetFamily::new(space, sets)?;
            Some(Topology::from_opens(space, opens).map_err(|e| {
                Error::input(format!("topology: {e}"))
            })?)
        }
        None => None,
    };

    let fermat = match &doc.fermat {
        Some(exprs) => exprs
            .iter()
            .enumerate()
            .map(|(i, s)| parse_fermat(s).map_err(|e| Error::parse(format!("fermat[{i}]: {e}"))))
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };

    Ok(Instance {
        space,
        families,
        relation,
        topology,
        fermat,
        warnings,
    })
}

impl Instance {
    /// Canonical printed form; parsing it back yields an equal instance.
    pub fn print(&self) -> String {
        let doc = InstanceDoc {
            space: self.space.map(|s| s.size()),
            families: if self.families.is_empty() {
                None
            } else {
                Some(
                    self.families
                        .iter()
                        .map(|(name, fam)| {
                            (
                                name.clone(),
                                fam.iter().map(|s| s.to_points()).collect(),
                            )
                        })
                        .collect(),
                )
            },
            relation: self.relation.as_ref().map(|r| r.pairs()),
            topology: self
                .topology
                .as_ref()
                .map(|t| t.opens().iter().map(|s| s.to_points()).collect()),
            fermat: if self.fermat.is_empty() {
                None
            } else {
                Some(self.fermat.iter().map(|x| x.to_string()).collect())
            },
        };
        serde_json::to_string(&doc).expect("instance serializes")
    }

    /// Hex digest of the canonical form.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.print().as_bytes());
        let bytes = hasher.finalize();
        bytes.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// An empty instance, for commands that take no document.
    pub fn empty() -> Instance {
        Instance {
            space: None,
            families: BTreeMap::new(),
            relation: None,
            topology: None,
            fermat: Vec::new(),
            warnings: Vec::new(),
        }
    }
}
