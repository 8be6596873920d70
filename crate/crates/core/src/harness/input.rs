//! Point-set sources: the full space, seeded random subsets and point files.

use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldParams, Point, PointId};
use crate::pointset::PointSet;

/// Where `E` comes from. Textual forms: `full`, `random:SIZE:SEED`, `file:PATH`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum SetSpec {
    Full,
    Random { size: usize, seed: u64 },
    File(PathBuf),
}

impl FromStr for SetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad set spec '{s}' (full | random:SIZE:SEED | file:PATH)"));
        if s == "full" {
            return Ok(SetSpec::Full);
        }
        if let Some(path) = s.strip_prefix("file:") {
            if path.is_empty() {
                return Err(bad());
            }
            return Ok(SetSpec::File(PathBuf::from(path)));
        }
        let rest = s.strip_prefix("random:").ok_or_else(bad)?;
        let (size, seed) = rest.split_once(':').ok_or_else(bad)?;
        Ok(SetSpec::Random {
            size: size.parse().map_err(|_| bad())?,
            seed: seed.parse().map_err(|_| bad())?,
        })
    }
}

impl fmt::Display for SetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetSpec::Full => write!(f, "full"),
            SetSpec::Random { size, seed } => write!(f, "random:{size}:{seed}"),
            SetSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl From<SetSpec> for String {
    fn from(s: SetSpec) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for SetSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Uniform `size`-subset of `F_q^d`: the first `size` entries of a seeded
/// partial Fisher-Yates shuffle of all indices.
pub fn sample_subset(params: &FieldParams, size: usize, seed: u64) -> Result<PointSet> {
    let n = params.num_points();
    if size > n {
        return Err(Error::SubsetTooLarge { size, len: n });
    }
    let mut ids: Vec<u32> = (0..n as u32).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (chosen, _) = ids.partial_shuffle(&mut rng, size);
    PointSet::from_ids(n, chosen.iter().map(|&i| PointId(i)))
}

/// Parses one point per line as comma-separated residues. Text after `#`
/// and blank lines are ignored; line numbers in errors start at 1.
pub fn parse_pointset(text: &str, params: &FieldParams) -> Result<PointSet> {
    let mut set = PointSet::empty(params.num_points());
    let mut seen = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let coords = body
            .split(',')
            .map(|c| {
                let c = c.trim();
                c.parse::<u32>().map_err(|_| Error::Parse {
                    line,
                    message: format!("'{c}' is not a non-negative integer"),
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        let point = Point::new(coords, params).map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        let id = point.index(params);
        if !seen.insert(id) {
            return Err(Error::DuplicatePoint { line });
        }
        set.insert(id);
    }
    Ok(set)
}

pub fn load_pointset(path: &Path, params: &FieldParams) -> Result<PointSet> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_pointset(&text, params)
}

pub fn resolve_set(spec: &SetSpec, params: &FieldParams) -> Result<PointSet> {
    match spec {
        SetSpec::Full => Ok(PointSet::full(params.num_points())),
        SetSpec::Random { size, seed } => sample_subset(params, *size, *seed),
        SetSpec::File(path) => load_pointset(path, params),
    }
}
