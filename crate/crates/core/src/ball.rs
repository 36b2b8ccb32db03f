//! Metric balls in the Cayley graph, enumerated by breadth-first search.
//!
//! The lamplighter group has exponential growth (rate about 1.62 for these
//! generators), so a ball of radius 22 already holds a few hundred thousand
//! elements. Enumeration stops with a resource error at the member cap.

use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::group::{apply_step, Configuration, GeneratorStep};

pub const DEFAULT_MEMBER_CAP: usize = 5_000_000;

/// `B(center, radius)` with exact distances, members in BFS order.
#[derive(Clone, Debug)]
pub struct Ball {
    center: Configuration,
    radius: u64,
    members: IndexMap<Configuration, u64>,
}

pub fn ball(center: &Configuration, radius: u64) -> Result<Ball> {
    ball_with_cap(center, radius, DEFAULT_MEMBER_CAP)
}

pub fn ball_with_cap(center: &Configuration, radius: u64, member_cap: usize) -> Result<Ball> {
    let mut members: IndexMap<Configuration, u64> = IndexMap::new();
    members.insert(center.clone(), 0);
    let mut head = 0;
    while head < members.len() {
        let (v, &d) = members.get_index(head).expect("in range");
        head += 1;
        if d == radius {
            continue;
        }
        let v = v.clone();
        for s in GeneratorStep::ALL {
            let w = apply_step(&v, s);
            if !members.contains_key(&w) {
                if members.len() == member_cap {
                    return Err(Error::ResourceLimit { what: "ball members", value: member_cap + 1, cap: member_cap });
                }
                members.insert(w, d + 1);
            }
        }
    }
    Ok(Ball { center: center.clone(), radius, members })
}

impl Ball {
    pub fn center(&self) -> &Configuration {
        &self.center
    }

    pub fn radius(&self) -> u64 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: &Configuration) -> bool {
        self.members.contains_key(v)
    }

    pub fn distance(&self, v: &Configuration) -> Option<u64> {
        self.members.get(v).copied()
    }

    pub fn index_of(&self, v: &Configuration) -> Option<usize> {
        self.members.get_index_of(v)
    }

    pub fn member(&self, i: usize) -> (&Configuration, u64) {
        let (v, &d) = self.members.get_index(i).expect("member index in range");
        (v, d)
    }

    /// Members in BFS order.
    pub fn members(&self) -> impl Iterator<Item = &Configuration> {
        self.members.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Configuration, u64)> {
        self.members.iter().map(|(v, &d)| (v, d))
    }

    /// Indices of the in-ball neighbours of member `i`.
    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let (v, _) = self.member(i);
        GeneratorStep::ALL
            .into_iter()
            .filter_map(move |s| self.members.get_index_of(&apply_step(v, s)))
    }

    /// Number of members at each distance `0..=radius`.
    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.radius as usize + 1];
        for &d in self.members.values() {
            sizes[d as usize] += 1;
        }
        sizes
    }
}
