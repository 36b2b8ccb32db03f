//! Word metric on the Cayley graph with respect to `{a, t, t^-1}`.
//!
//! The closed form charges one unit per lamp that has to be flipped plus the
//! length of the shortest walk of the cursor that starts at the origin, visits
//! every such lamp and stops at the target cursor. On a line that walk covers
//! the interval `[l, r]` spanned by the lamps, the origin and the target, and
//! either goes left first or right first.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};

use crate::group::{apply_step, Configuration, GeneratorStep, Position};

/// A distance that was only searched up to a cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CappedDistance {
    Within(u64),
    Exceeds,
}

impl CappedDistance {
    pub fn value(self) -> Option<u64> {
        match self {
            CappedDistance::Within(d) => Some(d),
            CappedDistance::Exceeds => None,
        }
    }

    pub fn from_min(best: Option<u64>, cap: u64) -> Self {
        match best {
            Some(d) if d <= cap => CappedDistance::Within(d),
            _ => CappedDistance::Exceeds,
        }
    }
}

/// Signature shared by the closed form and any substitute metric handed to
/// the verification suite.
pub type MetricFn = fn(&Configuration, &Configuration) -> u64;

/// Length of the optimal cursor tour for lamp extent `[lo, hi]` (lamps
/// relative to a cursor starting at 0) ending at `m`.
pub fn sweep_length(lo: Option<Position>, hi: Option<Position>, m: Position) -> u64 {
    let l = lo.map_or(0, |x| x.min(0)).min(m);
    let r = hi.map_or(0, |x| x.max(0)).max(m);
    let left_first = (0 - l) + (r - l) + (r - m);
    let right_first = r + (r - l) + (m - l);
    left_first.min(right_first) as u64
}

/// Word length of `g^-1 h`.
pub fn word_distance(g: &Configuration, h: &Configuration) -> u64 {
    let (a, b) = (g.lamps(), h.lamps());
    let (mut i, mut j) = (0, 0);
    let mut count = 0u64;
    let mut lo: Option<Position> = None;
    let mut hi: Option<Position> = None;
    let mut note = |p: Position| {
        count += 1;
        if lo.is_none() {
            lo = Some(p);
        }
        hi = Some(p);
    };
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                note(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                note(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    for &p in a[i..].iter().chain(&b[j..]) {
        // the tails are disjoint ascending runs; min/max only need care here
        count += 1;
        lo = Some(lo.map_or(p, |x| x.min(p)));
        hi = Some(hi.map_or(p, |x| x.max(p)));
    }
    let shift = g.cursor();
    let m = h.cursor() - shift;
    count + sweep_length(lo.map(|x| x - shift), hi.map(|x| x - shift), m)
}

/// Word length of `g` (distance from the identity).
pub fn norm(g: &Configuration) -> u64 {
    word_distance(&Configuration::identity(), g)
}

/// Breadth-first search over generator moves from `g`, stopping once the
/// frontier passes `cap`. Independent of [`word_distance`].
pub fn bfs_distance(g: &Configuration, h: &Configuration, cap: u64) -> CappedDistance {
    if g == h {
        return CappedDistance::Within(0);
    }
    let mut seen: HashSet<Configuration> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(g.clone());
    queue.push_back((g.clone(), 0u64));
    while let Some((v, d)) = queue.pop_front() {
        if d == cap {
            continue;
        }
        for s in GeneratorStep::ALL {
            let w = apply_step(&v, s);
            if w == *h {
                return CappedDistance::Within(d + 1);
            }
            if seen.insert(w.clone()) {
                queue.push_back((w, d + 1));
            }
        }
    }
    CappedDistance::Exceeds
}
