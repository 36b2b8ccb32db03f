//! Component decomposition of a ball with an obstacle removed, and
//! separation reports for the explicit paths.
//!
//! Everything here is local to a finite ball `B(e, R)`: a verdict of
//! "separated-in-ball" means the two probes fall in different components of
//! the ball minus the `K`-neighbourhood of the obstacle.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::ball::{ball_with_cap, Ball, DEFAULT_MEMBER_CAP};
use crate::error::{Error, Result};
use crate::group::{compose, Configuration};
use crate::paths::{distance_to_path, path_vertices_within, PathSpec};

/// One connected component of the ball minus the removed set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub id: usize,
    pub size: usize,
    /// Least member in the configuration order.
    pub representative: Configuration,
    /// Largest graph distance, inside the ball, from a member to the removed
    /// set; `None` when nothing was removed. Upper bound for the ambient
    /// distance.
    pub max_depth: Option<u64>,
}

/// Components together with the per-member labelling.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub components: Vec<Component>,
    labels: Vec<Option<usize>>,
}

impl Decomposition {
    /// Component id of `v`, `None` if `v` was removed or lies outside the
    /// ball.
    pub fn component_of(&self, ball: &Ball, v: &Configuration) -> Option<usize> {
        ball.index_of(v).and_then(|i| self.labels[i])
    }
}

/// Connected components of the subgraph induced on `ball` minus `removed`.
/// Components are numbered in increasing order of their representative.
pub fn components_after_removal(ball: &Ball, removed: &HashSet<Configuration>) -> Decomposition {
    let n = ball.len();
    let removed_idx: Vec<usize> = removed.iter().filter_map(|v| ball.index_of(v)).collect();
    let mut is_removed = vec![false; n];
    for &i in &removed_idx {
        is_removed[i] = true;
    }

    // depth: multi-source BFS from the removed members
    let mut depth: Vec<Option<u64>> = vec![None; n];
    let mut queue: VecDeque<usize> = removed_idx.iter().copied().collect();
    for &i in &removed_idx {
        depth[i] = Some(0);
    }
    while let Some(i) = queue.pop_front() {
        let d = depth[i].expect("queued vertices have a depth");
        for j in ball.neighbours(i) {
            if depth[j].is_none() {
                depth[j] = Some(d + 1);
                queue.push_back(j);
            }
        }
    }

    let mut raw_label: Vec<Option<usize>> = vec![None; n];
    let mut raw: Vec<(Configuration, usize, Option<u64>)> = Vec::new();
    for s in 0..n {
        if is_removed[s] || raw_label[s].is_some() {
            continue;
        }
        let id = raw.len();
        raw_label[s] = Some(id);
        let mut stack = vec![s];
        let mut rep = ball.member(s).0;
        let mut size = 0;
        let mut max_depth = None;
        while let Some(i) = stack.pop() {
            size += 1;
            let v = ball.member(i).0;
            if v < rep {
                rep = v;
            }
            max_depth = max_depth.max(depth[i]);
            for j in ball.neighbours(i) {
                if !is_removed[j] && raw_label[j].is_none() {
                    raw_label[j] = Some(id);
                    stack.push(j);
                }
            }
        }
        raw.push((rep.clone(), size, max_depth));
    }

    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by(|&a, &b| raw[a].0.cmp(&raw[b].0));
    let mut renumber = vec![0; raw.len()];
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new;
    }
    let components = order
        .iter()
        .enumerate()
        .map(|(id, &old)| {
            let (representative, size, max_depth) = raw[old].clone();
            Component { id, size, representative, max_depth }
        })
        .collect();
    let labels = raw_label.into_iter().map(|l| l.map(|x| renumber[x])).collect();
    Decomposition { components, labels }
}

/// The set removed from the ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obstacle {
    Path(PathSpec),
    /// Nothing removed; a control run.
    Nothing,
}

impl Obstacle {
    fn describe(self) -> ObstacleInfo {
        match self {
            Obstacle::Path(spec) => ObstacleInfo { kind: spec.code().into(), n: spec.family_n(), vertices_in_ball: 0 },
            Obstacle::Nothing => ObstacleInfo { kind: "none".into(), n: None, vertices_in_ball: 0 },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstacleInfo {
    pub kind: String,
    pub n: Option<u32>,
    pub vertices_in_ball: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    SeparatedInBall,
    ConnectedInBall,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbePlacement {
    pub label: String,
    pub configuration: Configuration,
    pub component: usize,
    /// Word distance to the obstacle path; `None` if it exceeds the search
    /// cap (the ball radius) or there is no obstacle.
    pub distance_to_obstacle: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub obstacle: ObstacleInfo,
    #[serde(rename = "K")]
    pub k: u64,
    #[serde(rename = "R")]
    pub radius: u64,
    pub ball_size: usize,
    pub removed_in_ball: usize,
    pub components: Vec<Component>,
    pub probes: Vec<ProbePlacement>,
    pub verdict: Verdict,
}

impl SeparationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}

/// Vertices of the ball within ambient distance `k` of the obstacle.
fn thickened_obstacle(obstacle: Obstacle, k: u64, ball: &Ball) -> Result<(usize, HashSet<Configuration>)> {
    let spec = match obstacle {
        Obstacle::Path(spec) => spec,
        Obstacle::Nothing => return Ok((0, HashSet::new())),
    };
    // a point of the ball within k of the path forces the path vertex into B(e, R + k)
    let near = path_vertices_within(spec, ball.radius() + k)?;
    let in_ball = near.iter().filter(|v| ball.contains(v)).count();
    if k == 0 {
        return Ok((in_ball, near.into_iter().filter(|v| ball.contains(v)).collect()));
    }
    let offsets = ball_with_cap(&Configuration::identity(), k, DEFAULT_MEMBER_CAP)?;
    let mut out = HashSet::new();
    for o in &near {
        for g in offsets.members() {
            let w = compose(o, g);
            if ball.contains(&w) {
                out.insert(w);
            }
        }
    }
    Ok((in_ball, out))
}

pub fn separation_report(
    obstacle: Obstacle,
    k: u64,
    radius: u64,
    probes: [(&str, &Configuration); 2],
) -> Result<SeparationReport> {
    separation_report_with_cap(obstacle, k, radius, probes, DEFAULT_MEMBER_CAP)
}

pub fn separation_report_with_cap(
    obstacle: Obstacle,
    k: u64,
    radius: u64,
    probes: [(&str, &Configuration); 2],
    member_cap: usize,
) -> Result<SeparationReport> {
    let b = ball_with_cap(&Configuration::identity(), radius, member_cap)?;
    let (in_ball, removed) = thickened_obstacle(obstacle, k, &b)?;
    for (label, p) in probes {
        if !b.contains(p) {
            return Err(Error::Probe { label: label.to_string(), problem: "lies outside the ball" });
        }
        if removed.contains(p) {
            return Err(Error::Probe { label: label.to_string(), problem: "lies inside the obstacle neighbourhood" });
        }
    }
    let decomposition = components_after_removal(&b, &removed);
    let mut placements = Vec::new();
    for (label, p) in probes {
        let distance_to_obstacle = match obstacle {
            Obstacle::Path(spec) => distance_to_path(p, spec, radius)?.value(),
            Obstacle::Nothing => None,
        };
        placements.push(ProbePlacement {
            label: label.to_string(),
            configuration: p.clone(),
            component: decomposition.component_of(&b, p).expect("probe is a surviving ball member"),
            distance_to_obstacle,
        });
    }
    let verdict = if placements[0].component != placements[1].component {
        Verdict::SeparatedInBall
    } else {
        Verdict::ConnectedInBall
    };
    let mut info = obstacle.describe();
    info.vertices_in_ball = in_ball;
    Ok(SeparationReport {
        obstacle: info,
        k,
        radius,
        ball_size: b.len(),
        removed_in_ball: removed.len(),
        components: decomposition.components,
        probes: placements,
        verdict,
    })
}

/// Convenience for callers that only want the set view.
pub fn removed_set(vertices: &BTreeSet<Configuration>) -> HashSet<Configuration> {
    vertices.iter().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::ball;
    use crate::group::apply_step;
    use crate::walks::probes;
    use crate::GeneratorStep::*;

    fn cfg(l: &[i64], c: i64) -> Configuration {
        Configuration::new(l.iter().copied(), c)
    }

    #[test]
    fn removing_identity_from_radius_two() {
        let e = Configuration::identity();
        let b = ball(&e, 2).unwrap();
        let removed: HashSet<_> = [e].into_iter().collect();
        let d = components_after_removal(&b, &removed);
        assert_eq!(d.components.len(), 3);
        let groups = [
            vec![cfg(&[0], 0), cfg(&[0], 1), cfg(&[0], -1)],
            vec![cfg(&[], 1), cfg(&[1], 1), cfg(&[], 2)],
            vec![cfg(&[], -1), cfg(&[-1], -1), cfg(&[], -2)],
        ];
        for g in &groups {
            let id = d.component_of(&b, &g[0]).unwrap();
            assert!(g.iter().all(|v| d.component_of(&b, v) == Some(id)));
            assert_eq!(d.components[id].size, 3);
        }
        // oracle: brute-force connectivity over the 9 survivors
        let survivors: Vec<_> = groups.concat();
        for u in &survivors {
            for v in &survivors {
                let adjacent = crate::GeneratorStep::ALL.iter().any(|&s| apply_step(u, s) == *v);
                if adjacent {
                    assert_eq!(d.component_of(&b, u), d.component_of(&b, v));
                }
            }
        }
    }

    #[test]
    fn trivial_removals() {
        let e = Configuration::identity();
        let b = ball(&e, 2).unwrap();
        let d = components_after_removal(&b, &HashSet::new());
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].size, 10);
        assert_eq!(d.components[0].max_depth, None);
        let b1 = ball(&e, 1).unwrap();
        let all: HashSet<_> = b1.members().cloned().collect();
        assert!(components_after_removal(&b1, &all).components.is_empty());
    }

    #[test]
    fn decomposition_is_a_partition() {
        let b = ball(&Configuration::identity(), 8).unwrap();
        let removed = removed_set(&path_vertices_within(PathSpec::HalfLine, 8).unwrap());
        let d = components_after_removal(&b, &removed);
        let total: usize = d.components.iter().map(|c| c.size).sum();
        let removed_in_ball = removed.iter().filter(|v| b.contains(v)).count();
        assert_eq!(total + removed_in_ball, b.len());
        for (i, c) in d.components.iter().enumerate() {
            assert_eq!(c.id, i);
            assert_eq!(d.component_of(&b, &c.representative), Some(i));
        }
    }

    #[test]
    fn half_line_separates_probes() {
        let p = probes(2).unwrap();
        let r = separation_report(Obstacle::Path(PathSpec::HalfLine), 0, 12, [("a_n", &p.a_n), ("b_n", &p.b_n)]).unwrap();
        assert_eq!(r.verdict, Verdict::SeparatedInBall);
        assert!(r.probes.iter().all(|pl| pl.distance_to_obstacle.unwrap() >= 2));

        let side = apply_step(&p.a_n, Right);
        let r = separation_report(Obstacle::Path(PathSpec::HalfLine), 0, 12, [("a_n t", &side), ("a_n", &p.a_n)]).unwrap();
        assert_eq!(r.verdict, Verdict::ConnectedInBall);

        let r = separation_report(Obstacle::Nothing, 0, 12, [("a_n", &p.a_n), ("b_n", &p.b_n)]).unwrap();
        assert_eq!(r.verdict, Verdict::ConnectedInBall);
        assert_eq!(r.components.len(), 1);
    }

    #[test]
    fn probe_errors() {
        let p = probes(2).unwrap();
        let e = Configuration::identity();
        let err = separation_report(Obstacle::Path(PathSpec::HalfLine), 0, 12, [("e", &e), ("b", &p.b_n)]).unwrap_err();
        assert!(err.to_string().contains("obstacle"), "{err}");
        let far = Configuration::translation(40);
        let err = separation_report(Obstacle::Path(PathSpec::HalfLine), 0, 12, [("a", &p.a_n), ("far", &far)]).unwrap_err();
        assert!(err.to_string().contains("outside"), "{err}");
    }

    #[test]
    fn thickening_grows_the_removed_set() {
        let p = probes(3).unwrap();
        let spec = Obstacle::Path(PathSpec::HalfLine);
        let r0 = separation_report(spec, 0, 17, [("a", &p.a_n), ("b", &p.b_n)]).unwrap();
        let r1 = separation_report(spec, 1, 17, [("a", &p.a_n), ("b", &p.b_n)]).unwrap();
        assert!(r1.removed_in_ball > r0.removed_in_ball);
        assert_eq!(r1.verdict, Verdict::SeparatedInBall);
    }
}
