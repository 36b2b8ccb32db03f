//! Line-oriented walk files.
//!
//! ```text
//! {"kind":"N","n":null,"steps":2}
//! {"cursor":0,"lamps":[]}
//! {"cursor":0,"lamps":[0]}
//! {"cursor":-1,"lamps":[0]}
//! {"milestones":{"c0":0,"c1":1}}
//! ```
//!
//! For `R` the header field `n` carries the length of the negative ray.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::codec;
use crate::error::{Error, Result};
use crate::walks::Walk;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WalkHeader {
    pub kind: String,
    pub n: Option<u64>,
    pub steps: usize,
}

pub fn write_walk<W: Write>(mut out: W, header: &WalkHeader, walk: &Walk) -> Result<()> {
    debug_assert_eq!(header.steps, walk.step_count());
    writeln!(out, "{}", serde_json::to_string(header).expect("header serialization is infallible"))?;
    for v in walk.vertices() {
        writeln!(out, "{}", codec::encode(v))?;
    }
    let mut milestones = Map::new();
    for (label, idx) in walk.milestones() {
        milestones.insert(label.clone(), Value::from(*idx));
    }
    let mut trailer = Map::new();
    trailer.insert("milestones".into(), Value::Object(milestones));
    writeln!(out, "{}", Value::Object(trailer))?;
    Ok(())
}

fn input_error(line: usize, message: impl Into<String>) -> Error {
    Error::Input { position: format!("line {line}"), message: message.into() }
}

/// Parses a walk file, checking that the vertex count matches the header and
/// that consecutive vertices are adjacent.
pub fn read_walk<R: BufRead>(input: R) -> Result<(WalkHeader, Walk)> {
    let mut lines = input.lines();
    let first = lines.next().ok_or_else(|| input_error(1, "empty walk file"))??;
    let header: WalkHeader =
        serde_json::from_str(&first).map_err(|e| input_error(1, format!("bad header: {e}")))?;
    if !matches!(header.kind.as_str(), "N" | "R" | "I" | "C") {
        return Err(input_error(1, format!("unknown kind {:?}", header.kind)));
    }
    let mut vertices = Vec::with_capacity(header.steps + 1);
    let mut trailer = None;
    for (i, line) in lines.enumerate() {
        let line = line?;
        let lineno = i + 2;
        if trailer.is_some() {
            if line.trim().is_empty() {
                continue;
            }
            return Err(input_error(lineno, "content after milestones"));
        }
        if line.starts_with("{\"milestones\"") {
            let value: Value = serde_json::from_str(&line).map_err(|e| input_error(lineno, e.to_string()))?;
            trailer = Some(value);
            continue;
        }
        vertices.push(codec::decode(&line).map_err(|e| input_error(lineno, e.to_string()))?);
    }
    let trailer = trailer.ok_or_else(|| input_error(vertices.len() + 2, "missing milestones trailer"))?;
    if vertices.len() != header.steps + 1 {
        return Err(input_error(
            vertices.len() + 2,
            format!("expected {} vertices, found {}", header.steps + 1, vertices.len()),
        ));
    }
    let mut walk = Walk::from_vertices(vertices)
        .map_err(|i| input_error(i + 3, "vertex is not adjacent to its predecessor"))?;
    let milestones = trailer
        .get("milestones")
        .and_then(Value::as_object)
        .ok_or_else(|| input_error(header.steps + 3, "milestones must be an object"))?;
    for (label, idx) in milestones {
        let idx = idx
            .as_u64()
            .filter(|&i| (i as usize) <= header.steps)
            .ok_or_else(|| input_error(header.steps + 3, format!("bad milestone index for {label}")))?;
        walk.set_milestone(label.clone(), idx as usize);
    }
    if header.kind == "C" {
        walk.mark_closed();
    }
    Ok((header, walk))
}
