//! Group-definition files, the bundled catalog and the on-disk result
//! cache.
//!
//! File grammar (line oriented, `#` comments):
//! ```text
//! group NAME
//! perm (1 2)(3 4)     # one or more generator lines, or:
//! table N             # followed by N rows of N entries in 0..N-1
//! end
//! ```

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::group::{build_group_from_perms, GroupTable, Perm};

pub const ENGINE_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSource {
    /// Disjoint-cycle generator lists over 1-based points.
    Perms { degree: usize, gens: Vec<Vec<Vec<usize>>> },
    Table { order: usize, rows: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDefinition {
    pub name: String,
    pub source: GroupSource,
}

impl GroupDefinition {
    pub fn build(&self, cap: usize) -> Result<Arc<GroupTable>> {
        match &self.source {
            GroupSource::Perms { degree, gens } => {
                let perms: Vec<Perm> = gens
                    .iter()
                    .map(|cycles| Perm::from_cycles(cycles, *degree))
                    .collect::<Result<_>>()?;
                build_group_from_perms(&perms, &self.name, cap)
            }
            GroupSource::Table { order, rows } => {
                if *order > cap {
                    return Err(Error::CapExceeded {
                        order: *order,
                        cap,
                    });
                }
                GroupTable::from_mul_table(&self.name, rows.clone())
            }
        }
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        msg: msg.into(),
    }
}

fn parse_cycles(line_no: usize, text: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    let mut seen: HashSet<usize> = HashSet::new();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(syntax(line_no, format!("expected '(' in cycles, got {rest:?}")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| syntax(line_no, "unclosed cycle"))?;
        let inner = &rest[1..close];
        let mut cycle = Vec::new();
        for tok in inner.split_whitespace() {
            let p: usize = tok
                .parse()
                .map_err(|_| syntax(line_no, format!("bad cycle point {tok:?}")))?;
            if p == 0 {
                return Err(Error::InvalidPermutation(format!(
                    "line {line_no}: points are 1-based"
                )));
            }
            if !seen.insert(p) {
                return Err(Error::InvalidPermutation(format!(
                    "line {line_no}: repeated point {p}"
                )));
            }
            cycle.push(p);
        }
        if cycle.is_empty() {
            return Err(syntax(line_no, "empty cycle"));
        }
        cycles.push(cycle);
        rest = rest[close + 1..].trim_start();
    }
    if cycles.is_empty() {
        return Err(syntax(line_no, "perm line without cycles"));
    }
    Ok(cycles)
}

pub fn parse_group_file(text: &str) -> Result<Vec<GroupDefinition>> {
    let mut defs: Vec<GroupDefinition> = Vec::new();
    let mut names: HashSet<String> = HashSet::new();
    let mut lines = text.lines().enumerate().peekable();

    let significant = |l: &str| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    };

    while let Some((idx, raw)) = lines.next() {
        let line_no = idx + 1;
        let line = raw.trim();
        if !significant(raw) {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("group") => {}
            Some(w) => return Err(syntax(line_no, format!("expected 'group', got {w:?}"))),
            None => unreachable!(),
        }
        let name = words
            .next()
            .ok_or_else(|| syntax(line_no, "group without a name"))?
            .to_string();
        if words.next().is_some() {
            return Err(syntax(line_no, "trailing tokens after group name"));
        }
        if !names.insert(name.clone()) {
            return Err(Error::DuplicateName(name));
        }

        let mut gens: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut table: Option<(usize, Vec<Vec<usize>>)> = None;
        let mut closed = false;
        while let Some((idx, raw)) = lines.next() {
            let line_no = idx + 1;
            if !significant(raw) {
                continue;
            }
            let line = raw.trim();
            if line == "end" {
                closed = true;
                break;
            }
            if let Some(rest) = line.strip_prefix("perm") {
                if table.is_some() {
                    return Err(syntax(line_no, "perm after table in one group"));
                }
                gens.push(parse_cycles(line_no, rest)?);
                continue;
            }
            if let Some(rest) = line.strip_prefix("table") {
                if table.is_some() || !gens.is_empty() {
                    return Err(syntax(line_no, "mixed or repeated body kinds"));
                }
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| syntax(line_no, "table needs an order"))?;
                if n == 0 {
                    return Err(syntax(line_no, "table of order 0"));
                }
                let mut rows = Vec::with_capacity(n);
                while rows.len() < n {
                    let (idx, raw) = lines
                        .next()
                        .ok_or_else(|| syntax(line_no, "unterminated table"))?;
                    if !significant(raw) {
                        continue;
                    }
                    let row_no = idx + 1;
                    let row: Vec<usize> = raw
                        .split_whitespace()
                        .map(|t| {
                            t.parse::<usize>()
                                .map_err(|_| syntax(row_no, format!("bad table entry {t:?}")))
                        })
                        .collect::<Result<_>>()?;
                    if row.len() != n {
                        return Err(syntax(
                            row_no,
                            format!("table row has {} entries, expected {n}", row.len()),
                        ));
                    }
                    for &v in &row {
                        if v >= n {
                            return Err(Error::BadTable(format!(
                                "line {row_no}: entry {v} out of range 0..{n}"
                            )));
                        }
                    }
                    rows.push(row);
                }
                table = Some((n, rows));
                continue;
            }
            return Err(syntax(line_no, format!("unexpected line {line:?} in group body")));
        }
        if !closed {
            return Err(syntax(text.lines().count(), format!("group {name} missing 'end'")));
        }
        let source = match table {
            Some((order, rows)) => GroupSource::Table { order, rows },
            None => {
                if gens.is_empty() {
                    return Err(syntax(line_no, format!("group {name} has an empty body")));
                }
                let degree = gens
                    .iter()
                    .flat_map(|g| g.iter().flat_map(|c| c.iter().copied()))
                    .max()
                    .unwrap_or(1);
                GroupSource::Perms { degree, gens }
            }
        };
        defs.push(GroupDefinition { name, source });
    }
    Ok(defs)
}

pub fn serialize_group_file(defs: &[GroupDefinition]) -> String {
    let mut out = String::new();
    for d in defs {
        out.push_str("group ");
        out.push_str(&d.name);
        out.push('\n');
        match &d.source {
            GroupSource::Perms { gens, .. } => {
                for g in gens {
                    out.push_str("perm");
                    for cyc in g {
                        out.push_str(" (");
                        let pts: Vec<String> = cyc.iter().map(|p| p.to_string()).collect();
                        out.push_str(&pts.join(" "));
                        out.push(')');
                    }
                    out.push('\n');
                }
            }
            GroupSource::Table { order, rows } => {
                out.push_str(&format!("table {order}\n"));
                for row in rows {
                    let r: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                    out.push_str(&r.join(" "));
                    out.push('\n');
                }
            }
        }
        out.push_str("end\n");
    }
    out
}

/// Load definitions from a .grp file, or from every .grp file in a
/// directory (sorted by file name).
pub fn load_path(path: &Path) -> Result<Vec<GroupDefinition>> {
    let mut defs = Vec::new();
    let mut names: HashSet<String> = HashSet::new();
    let mut files: Vec<PathBuf> = Vec::new();
    if path.is_dir() {
        for entry in fs::read_dir(path)? {
            let p = entry?.path();
            if p.extension().map(|e| e == "grp").unwrap_or(false) {
                files.push(p);
            }
        }
        files.sort();
    } else {
        files.push(path.to_path_buf());
    }
    for f in files {
        let text = fs::read_to_string(&f)?;
        for d in parse_group_file(&text)? {
            if !names.insert(d.name.clone()) {
                return Err(Error::DuplicateName(d.name));
            }
            defs.push(d);
        }
    }
    Ok(defs)
}

const BUNDLED: &[&str] = &[
    include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../catalog/abelian.grp")),
    include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../catalog/core.grp")),
    include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../catalog/p16.grp")),
    include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../catalog/p27.grp")),
];

pub fn bundled_catalog() -> Vec<GroupDefinition> {
    let mut defs = Vec::new();
    for text in BUNDLED {
        defs.extend(parse_group_file(text).expect("bundled catalog parses"));
    }
    defs
}

/// Version-prefixed canonical byte encoding: order then the flattened
/// multiplication table, little-endian u32 each.
pub fn canonical_encoding(g: &GroupTable) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 + 4 * g.order * g.order + 4);
    out.extend_from_slice(b"mlab");
    out.extend_from_slice(ENGINE_VERSION.as_bytes());
    out.push(0);
    out.extend_from_slice(&(g.order as u32).to_le_bytes());
    for a in 0..g.order {
        for b in 0..g.order {
            out.extend_from_slice(&(g.mul(a, b) as u32).to_le_bytes());
        }
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CacheEntry {
    pub version: String,
    pub encoding_hex: String,
    pub kind: String,
    pub e: i64,
    pub payload: Value,
}

/// File-per-entry result cache. Writes are atomic (temp then rename);
/// anything unreadable or mismatched is treated as a miss.
pub struct Cache {
    pub dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Cache> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    fn entry_path(&self, hash: &str, kind: &str, e: i64) -> PathBuf {
        self.dir.join(format!("{hash}-{kind}-{e}.json"))
    }

    fn read_entry(&self, path: &Path) -> Result<CacheEntry> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|err| Error::CorruptCache(err.to_string()))
    }

    pub fn get(&self, g: &GroupTable, kind: &str, e: i64) -> Option<Value> {
        let enc = canonical_encoding(g);
        let hash = hex::encode(Sha256::digest(&enc));
        let path = self.entry_path(&hash, kind, e);
        if !path.exists() {
            return None;
        }
        match self.read_entry(&path) {
            Ok(entry) => {
                // full key comparison: a hash collision must never be accepted
                if entry.version == ENGINE_VERSION
                    && entry.kind == kind
                    && entry.e == e
                    && entry.encoding_hex == hex::encode(&enc)
                {
                    Some(entry.payload)
                } else {
                    None
                }
            }
            Err(_) => None, // corrupt: fail closed, recompute
        }
    }

    pub fn put(&self, g: &GroupTable, kind: &str, e: i64, payload: Value) -> Result<()> {
        let enc = canonical_encoding(g);
        let hash = hex::encode(Sha256::digest(&enc));
        let entry = CacheEntry {
            version: ENGINE_VERSION.to_string(),
            encoding_hex: hex::encode(&enc),
            kind: kind.to_string(),
            e,
            payload,
        };
        let path = self.entry_path(&hash, kind, e);
        let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
        fs::write(&tmp, serde_json::to_string_pretty(&entry)?.as_bytes())?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}
