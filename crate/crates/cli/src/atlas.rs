//! The persisted order atlas: a JSON map from decimal order strings to
//! the `(group, q)` pairs producing them, together with the bounds it
//! was built under. Orders are strings because they exceed 64 bits.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use ssorders::recovery::{effective_field_bound, RecoveryCandidate};
use ssorders::{PrimePowerField, SemisimpleGroup};

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct AtlasBounds {
    pub max_rank: u32,
    pub q_max: String,
    pub qs: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AtlasEntry {
    pub group: String,
    pub q: String,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct AtlasFile {
    pub bounds: AtlasBounds,
    pub entries: BTreeMap<String, Vec<AtlasEntry>>,
}

impl AtlasFile {
    /// Enumerates every group of rank at most `max_rank` over every
    /// prime power q <= q_max and indexes the orders.
    pub fn build(max_rank: u32, q_max: u64) -> Self {
        let fields = PrimePowerField::all_up_to(q_max);
        let mut entries: BTreeMap<String, Vec<AtlasEntry>> = BTreeMap::new();
        for group in SemisimpleGroup::all_with_rank_at_most(max_rank) {
            for field in &fields {
                let order = group.order(field).to_string();
                entries.entry(order).or_default().push(AtlasEntry {
                    group: group.to_string(),
                    q: field.q().to_string(),
                });
            }
        }
        for bucket in entries.values_mut() {
            bucket.sort();
            bucket.dedup();
        }
        AtlasFile {
            bounds: AtlasBounds {
                max_rank,
                q_max: q_max.to_string(),
                qs: fields.iter().map(|f| f.q().to_string()).collect(),
            },
            entries,
        }
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read atlas {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("malformed atlas: {e}"))
    }

    /// Atomic write: temp file in the target directory, then rename.
    pub fn save(&self, path: &Path) -> Result<(), String> {
        let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
        let mut tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or(Path::new(".")))
            .map_err(|e| format!("cannot create temp file: {e}"))?;
        let text = serde_json::to_string_pretty(self).expect("atlas serializes");
        tmp.write_all(text.as_bytes())
            .and_then(|_| tmp.write_all(b"\n"))
            .map_err(|e| format!("cannot write atlas: {e}"))?;
        tmp.persist(path)
            .map_err(|e| format!("cannot persist atlas: {e}"))?;
        Ok(())
    }

    /// Whether a recovery query is fully answerable from this atlas.
    /// Stale bounds mean the caller recomputes; never a truncated answer.
    pub fn covers(&self, n: &BigUint, max_rank: u32, q_max: Option<&BigUint>) -> bool {
        if max_rank > self.bounds.max_rank {
            return false;
        }
        let needed = effective_field_bound(n, q_max);
        match self.bounds.q_max.parse::<BigUint>() {
            Ok(atlas_q) => needed <= atlas_q,
            Err(_) => false,
        }
    }

    /// Candidates for `n` within the requested bounds, re-validated
    /// against the order formula.
    pub fn lookup(
        &self,
        n: &BigUint,
        max_rank: u32,
        q_max: Option<&BigUint>,
    ) -> Result<Vec<RecoveryCandidate>, String> {
        let mut out = Vec::new();
        for entry in self.entries.get(&n.to_string()).into_iter().flatten() {
            let group: SemisimpleGroup = entry
                .group
                .parse()
                .map_err(|e| format!("atlas entry `{}`: {e}", entry.group))?;
            let q: BigUint = entry
                .q
                .parse()
                .map_err(|_| format!("atlas entry q `{}` is not a number", entry.q))?;
            if group.rank() > max_rank {
                continue;
            }
            if let Some(limit) = q_max {
                if &q > limit {
                    continue;
                }
            }
            let field = PrimePowerField::from_q(&q).map_err(|e| e.to_string())?;
            if &group.order(&field) != n {
                return Err(format!(
                    "atlas entry ({}, q={}) does not reproduce {n}",
                    entry.group, entry.q
                ));
            }
            out.push(RecoveryCandidate {
                group,
                field: Some(field),
            });
        }
        out.sort();
        Ok(out)
    }
}
