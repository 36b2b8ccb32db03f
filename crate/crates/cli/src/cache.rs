//! On-disk store of generated walks.
//!
//! Entries are named `{kind}_{n}_{steps}.walk` (`n` is `-` for `N`). Writes
//! go to a temporary file that is renamed into place. A cached file is only
//! trusted after its header, vertex chain and endpoints check out; anything
//! else is reported, removed and regenerated by the caller.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use lamplighter::walkfile::{read_walk, write_walk, WalkHeader};
use lamplighter::{stage_config, Configuration, Walk};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkKey {
    pub kind: &'static str,
    pub n: Option<u64>,
    pub steps: usize,
}

impl WalkKey {
    pub fn file_name(&self) -> String {
        let n = self.n.map_or_else(|| "-".to_string(), |n| n.to_string());
        format!("{}_{}_{}.walk", self.kind, n, self.steps)
    }

    pub fn header(&self) -> WalkHeader {
        WalkHeader { kind: self.kind.to_string(), n: self.n, steps: self.steps }
    }
}

pub struct WalkCache {
    dir: PathBuf,
}

fn warn(message: impl std::fmt::Display) {
    eprintln!("warning: {message}");
}

impl WalkCache {
    pub fn new(dir: PathBuf) -> Self {
        Self { dir }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// A cached walk for `key`. For `N` any longer cached prefix also serves.
    /// `ends` holds the known first vertex and, for finite paths, the last.
    pub fn lookup(&self, key: &WalkKey, ends: (&Configuration, Option<&Configuration>)) -> Option<Walk> {
        for (path, stored) in self.candidates(key) {
            match load(&path, &stored, ends) {
                Ok(mut walk) => {
                    walk.truncate(key.steps);
                    return Some(walk);
                }
                Err(e) => {
                    warn(format!("ignoring corrupt cache entry {}: {e:#}", path.display()));
                    let _ = fs::remove_file(&path);
                }
            }
        }
        None
    }

    fn candidates(&self, key: &WalkKey) -> Vec<(PathBuf, WalkKey)> {
        let exact = self.dir.join(key.file_name());
        if key.kind != "N" {
            return if exact.is_file() { vec![(exact, key.clone())] } else { Vec::new() };
        }
        let Ok(entries) = fs::read_dir(&self.dir) else {
            return Vec::new();
        };
        let mut found: Vec<(PathBuf, WalkKey)> = entries
            .filter_map(|e| e.ok())
            .filter_map(|e| {
                let name = e.file_name().into_string().ok()?;
                let steps: usize = name.strip_prefix("N_-_")?.strip_suffix(".walk")?.parse().ok()?;
                (steps >= key.steps).then(|| (e.path(), WalkKey { kind: "N", n: None, steps }))
            })
            .collect();
        // shortest adequate prefix first, so the least data is read
        found.sort_by_key(|(_, k)| k.steps);
        found
    }

    pub fn store(&self, key: &WalkKey, walk: &Walk) -> Result<()> {
        fs::create_dir_all(&self.dir).with_context(|| format!("creating {}", self.dir.display()))?;
        let target = self.dir.join(key.file_name());
        let tmp = self.dir.join(format!(".{}.{}.tmp", key.file_name(), std::process::id()));
        let write = || -> Result<()> {
            let mut out = BufWriter::new(File::create(&tmp)?);
            write_walk(&mut out, &key.header(), walk)?;
            out.flush()?;
            out.into_inner().map_err(|e| e.into_error())?.sync_all()?;
            fs::rename(&tmp, &target)?;
            Ok(())
        };
        write().inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })
    }
}

fn load(path: &Path, key: &WalkKey, (start, end): (&Configuration, Option<&Configuration>)) -> Result<Walk> {
    let (header, walk) = read_walk(BufReader::new(File::open(path)?))?;
    anyhow::ensure!(header == key.header(), "header {header:?} does not match the file name");
    anyhow::ensure!(walk.start() == start, "first vertex is {}", walk.start());
    if let Some(end) = end {
        anyhow::ensure!(walk.end() == end, "last vertex is {}", walk.end());
    }
    // the last stage milestone must sit on the dyadic configuration it names
    if let Some((label, idx)) = walk.milestones().iter().rev().find(|(l, _)| l.starts_with('c')) {
        let stage: u64 = label[1..].parse().with_context(|| format!("milestone {label}"))?;
        anyhow::ensure!(walk.vertices()[*idx] == stage_config(stage), "milestone {label} is off the path");
    }
    Ok(walk)
}
