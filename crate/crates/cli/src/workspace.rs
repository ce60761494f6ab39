//! The workspace file: named bundles and surface/curve contexts.
//!
//! ```json
//! {
//!   "version": 1,
//!   "ambient": 3,
//!   "bundles": [
//!     { "name": "L", "line": 2 },
//!     { "name": "E", "sum-of-lines": [1, 1, -2] },
//!     { "name": "F", "rank": 2, "chern": ["1", "3", "2", "0"] },
//!     { "name": "G", "rank": 2, "chern": [1, 2, 1], "kclass": [0, 2] }
//!   ],
//!   "surfaces": [ { "name": "P2", "basis": ["H"], "pairing": [[1]], "canonical": [-3], "c2": 3 } ],
//!   "curves": [ { "name": "C", "genus": 2 } ]
//! }
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use chowcalc::rr::{CurveContext, SurfaceContext};
use chowcalc::{BundleClass, ChowClass, KClass, Rational, TrackedBundle};
use num_bigint::BigInt;
use serde::Deserialize;

use crate::expr::is_reserved;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum WorkspaceError {
    #[error("cannot read workspace file: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed workspace file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("workspace: {0}")]
    Invalid(String),
    #[error("workspace bundle {name:?}: {source}")]
    Bundle {
        name: String,
        #[source]
        source: chowcalc::Error,
    },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn to_rational(&self) -> Result<Rational, String> {
        match self {
            Number::Int(i) => Ok(Rational::from(*i)),
            Number::Text(s) => s.parse().map_err(|_| format!("{s:?} is not a rational number")),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBundle {
    name: String,
    rank: Option<usize>,
    chern: Option<Vec<Number>>,
    line: Option<i64>,
    #[serde(rename = "sum-of-lines")]
    sum_of_lines: Option<Vec<i64>>,
    kclass: Option<Vec<i64>>,
}

#[derive(Deserialize)]
struct RawSurface {
    name: String,
    #[serde(flatten)]
    context: SurfaceContext,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    name: String,
    genus: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWorkspace {
    version: u32,
    ambient: usize,
    #[serde(default)]
    bundles: Vec<RawBundle>,
    #[serde(default)]
    surfaces: Vec<RawSurface>,
    #[serde(default)]
    curves: Vec<RawCurve>,
}

#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub ambient: Option<usize>,
    pub bundles: BTreeMap<String, TrackedBundle>,
    pub surfaces: BTreeMap<String, SurfaceContext>,
    pub curves: BTreeMap<String, CurveContext>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Workspace {
    /// An empty workspace over `ℙⁿ`.
    pub fn empty(ambient: usize) -> Self {
        Workspace { ambient: Some(ambient), ..Default::default() }
    }

    pub fn load(path: &Path) -> Result<Self, WorkspaceError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn from_json(text: &str) -> Result<Self, WorkspaceError> {
        let raw: RawWorkspace = serde_json::from_str(text)?;
        if raw.version != SCHEMA_VERSION {
            return Err(WorkspaceError::Invalid(format!(
                "unsupported schema version {} (expected {SCHEMA_VERSION})",
                raw.version
            )));
        }
        if raw.ambient < 1 {
            return Err(WorkspaceError::Invalid("ambient dimension must be at least 1".into()));
        }
        let n = raw.ambient;
        let mut ws = Workspace::empty(n);
        let mut seen = std::collections::BTreeSet::new();
        let mut claim = |name: &str| -> Result<(), WorkspaceError> {
            if !valid_name(name) || is_reserved(name) {
                return Err(WorkspaceError::Invalid(format!("{name:?} is not a usable name")));
            }
            if !seen.insert(name.to_string()) {
                return Err(WorkspaceError::Invalid(format!("duplicate name {name:?}")));
            }
            Ok(())
        };
        for b in raw.bundles {
            claim(&b.name)?;
            let name = b.name.clone();
            let tracked = bundle_entry(n, b).map_err(|e| match e {
                EntryError::Core(source) => WorkspaceError::Bundle { name: name.clone(), source },
                EntryError::Shape(msg) => WorkspaceError::Invalid(format!("bundle {name:?}: {msg}")),
            })?;
            ws.bundles.insert(name, tracked);
        }
        for s in raw.surfaces {
            claim(&s.name)?;
            ws.surfaces.insert(s.name, s.context);
        }
        for c in raw.curves {
            claim(&c.name)?;
            ws.curves.insert(c.name, CurveContext { genus: c.genus });
        }
        Ok(ws)
    }
}

enum EntryError {
    Core(chowcalc::Error),
    Shape(String),
}

impl From<chowcalc::Error> for EntryError {
    fn from(e: chowcalc::Error) -> Self {
        EntryError::Core(e)
    }
}

fn bundle_entry(n: usize, b: RawBundle) -> Result<TrackedBundle, EntryError> {
    let shape = |m: &str| EntryError::Shape(m.to_string());
    let mut tracked = match (b.line, b.sum_of_lines, b.chern) {
        (Some(d), None, None) => TrackedBundle::line(n, d)?,
        (None, Some(ds), None) => {
            let mut acc = TrackedBundle::trivial(n, 0)?;
            for d in ds {
                acc = acc.direct_sum(&TrackedBundle::line(n, d)?)?;
            }
            acc
        }
        (None, None, Some(chern)) => {
            let rank = b.rank.ok_or_else(|| shape("a chern entry needs a rank"))?;
            if chern.len() > n + 1 {
                return Err(shape(&format!("chern has {} entries, ambient allows {}", chern.len(), n + 1)));
            }
            let mut parts = chern.iter().map(Number::to_rational).collect::<Result<Vec<_>, _>>().map_err(EntryError::Shape)?;
            parts.resize(n + 1, Rational::zero());
            TrackedBundle::untracked(BundleClass::new(rank, ChowClass::new(n, parts)?)?)
        }
        _ => return Err(shape("give exactly one of line, sum-of-lines, chern")),
    };
    if let Some(r) = b.rank {
        if r != tracked.bundle.rank() {
            return Err(shape(&format!("declared rank {r} but the data has rank {}", tracked.bundle.rank())));
        }
    }
    if let Some(coeffs) = b.kclass {
        let k = KClass::from_ints(n, &coeffs)?;
        if k.rank() != BigInt::from(tracked.bundle.rank()) || k.ch() != tracked.bundle.chern_character() {
            return Err(shape("kclass does not match the Chern data"));
        }
        tracked.kclass = Some(k);
    }
    Ok(tracked)
}
