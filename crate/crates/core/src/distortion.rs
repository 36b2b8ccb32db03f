//! Distortion profiles: for each ambient distance bound `M`, the largest gap
//! `D(M)` between path indices of two path vertices at word distance at most
//! `M`. A path is uniformly embedded exactly when `D(M)` stays finite for
//! every `M` as the path grows.
//!
//! Two exact methods are provided. `Pairwise` evaluates the closed-form
//! metric on every index pair. `Neighbourhood` looks up the translates
//! `v * B(e, M)` of each vertex in an index of the path, which is linear in
//! the path length and is used for long paths.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::ball::ball;
use crate::error::{Error, Result};
use crate::group::{compose, Configuration};
use crate::metric::word_distance;
use crate::paths::PathSpec;
use crate::walks::{half_quasi_line, quasi_line};

/// Largest path length for which the automatic method chooses `Pairwise`.
pub const PAIRWISE_LIMIT: usize = 4001;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricMode {
    Linear,
    /// Index gaps measured around a cycle of the given length.
    Cyclic(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileMethod {
    Auto,
    Pairwise,
    Neighbourhood,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistortionProfile {
    pub spec: PathSpec,
    pub index_limit: usize,
    pub metric_mode: MetricMode,
    /// `entries[M] = D(M)` for `M = 0..=M_max`.
    pub entries: Vec<u64>,
}

impl DistortionProfile {
    pub fn d(&self, m: usize) -> Option<u64> {
        self.entries.get(m).copied()
    }

    pub fn is_monotone(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("M,D\n");
        for (m, d) in self.entries.iter().enumerate() {
            writeln!(out, "{m},{d}").expect("writing to a String");
        }
        out
    }
}

fn gap(i: usize, j: usize, mode: MetricMode) -> u64 {
    let g = i.abs_diff(j);
    match mode {
        MetricMode::Linear => g as u64,
        MetricMode::Cyclic(len) => g.min(len - g) as u64,
    }
}

/// Running maximum turns "largest gap at distance exactly M" into `D(M)`.
fn prefix_max(mut best: Vec<u64>) -> Vec<u64> {
    for m in 1..best.len() {
        best[m] = best[m].max(best[m - 1]);
    }
    best
}

fn profile_pairwise(vertices: &[Configuration], mode: MetricMode, m_max: u64) -> Vec<u64> {
    let width = m_max as usize + 1;
    let best = (0..vertices.len())
        .into_par_iter()
        .fold(
            || vec![0u64; width],
            |mut acc, i| {
                let v = &vertices[i];
                for (j, w) in vertices.iter().enumerate().skip(i + 1) {
                    if v.cursor().abs_diff(w.cursor()) > m_max {
                        continue;
                    }
                    let d = word_distance(v, w);
                    if d <= m_max {
                        let slot = &mut acc[d as usize];
                        *slot = (*slot).max(gap(i, j, mode));
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; width],
            |a, b| a.into_iter().zip(b).map(|(x, y)| x.max(y)).collect(),
        );
    prefix_max(best)
}

fn profile_neighbourhood(vertices: &[Configuration], mode: MetricMode, m_max: u64) -> Result<Vec<u64>> {
    let offsets = ball(&Configuration::identity(), m_max)?;
    let index: HashMap<&Configuration, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let width = m_max as usize + 1;
    let best = vertices
        .par_iter()
        .enumerate()
        .fold(
            || vec![0u64; width],
            |mut acc, (i, v)| {
                for (g, d) in offsets.iter() {
                    if let Some(&j) = index.get(&compose(v, g)) {
                        let slot = &mut acc[d as usize];
                        *slot = (*slot).max(gap(i, j, mode));
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; width],
            |a, b| a.into_iter().zip(b).map(|(x, y)| x.max(y)).collect(),
        );
    Ok(prefix_max(best))
}

/// `D(M)` for `M = 0..=m_max` over a list of distinct vertices in path order.
pub fn profile_of_vertices(
    vertices: &[Configuration],
    mode: MetricMode,
    m_max: u64,
    method: ProfileMethod,
) -> Result<Vec<u64>> {
    let method = match method {
        ProfileMethod::Auto if vertices.len() <= PAIRWISE_LIMIT => ProfileMethod::Pairwise,
        ProfileMethod::Auto => ProfileMethod::Neighbourhood,
        other => other,
    };
    match method {
        ProfileMethod::Pairwise => Ok(profile_pairwise(vertices, mode, m_max)),
        _ => profile_neighbourhood(vertices, mode, m_max),
    }
}

/// The vertices with index at most `index_limit` together with the metric
/// mode for the path.
///
/// For `R` the window is centred on the origin: `index_limit / 4` ray
/// vertices `R(-i)` (two steps each) followed by `N` up to the limit.
pub fn path_window(spec: PathSpec, index_limit: usize) -> Result<(Vec<Configuration>, MetricMode)> {
    Ok(match spec {
        PathSpec::HalfLine => (half_quasi_line(index_limit).into_vertices(), MetricMode::Linear),
        PathSpec::Line => {
            let neg = index_limit / 4;
            (quasi_line(neg as u64, index_limit - 2 * neg).into_vertices(), MetricMode::Linear)
        }
        PathSpec::Interval(_) | PathSpec::Circle(_) => {
            let walk = spec.finite_walk()?.expect("finite path");
            let mode = if walk.is_closed() { MetricMode::Cyclic(walk.cycle_len()) } else { MetricMode::Linear };
            let mut vertices = walk.distinct_vertices().to_vec();
            vertices.truncate(index_limit + 1);
            (vertices, mode)
        }
    })
}

pub fn distortion_profile(spec: PathSpec, index_limit: usize, m_max: u64) -> Result<DistortionProfile> {
    distortion_profile_with(spec, index_limit, m_max, ProfileMethod::Auto)
}

pub fn distortion_profile_with(
    spec: PathSpec,
    index_limit: usize,
    m_max: u64,
    method: ProfileMethod,
) -> Result<DistortionProfile> {
    if index_limit < 2 {
        return Err(Error::Parameter { name: "index_limit", message: "must be at least 2".into() });
    }
    let (vertices, metric_mode) = path_window(spec, index_limit)?;
    let entries = profile_of_vertices(&vertices, metric_mode, m_max, method)?;
    Ok(DistortionProfile { spec, index_limit, metric_mode, entries })
}

/// Cyclic profiles of a range of quasi-circles and their pointwise maximum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyProfile {
    pub members: Vec<(u32, DistortionProfile)>,
    /// Empirical distortion function: `h_emp[M]` is the maximum of `D(M)`
    /// over the family.
    pub h_emp: Vec<u64>,
    /// Smallest `n` attaining `h_emp[M]`.
    pub attaining: Vec<u32>,
}

impl FamilyProfile {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("M,D,n_attaining\n");
        for (m, (d, n)) in self.h_emp.iter().zip(&self.attaining).enumerate() {
            writeln!(out, "{m},{d},{n}").expect("writing to a String");
        }
        out
    }
}

pub fn circle_family_distortion(n_range: &[u32], m_max: u64) -> Result<FamilyProfile> {
    if n_range.is_empty() {
        return Err(Error::Parameter { name: "n_range", message: "must not be empty".into() });
    }
    let mut members = Vec::with_capacity(n_range.len());
    for &n in n_range {
        let spec = PathSpec::Circle(n);
        let walk = spec.finite_walk()?.expect("finite path");
        let len = walk.cycle_len();
        let entries = profile_of_vertices(walk.distinct_vertices(), MetricMode::Cyclic(len), m_max, ProfileMethod::Auto)?;
        members.push((n, DistortionProfile { spec, index_limit: len - 1, metric_mode: MetricMode::Cyclic(len), entries }));
    }
    let width = m_max as usize + 1;
    let mut h_emp = vec![0u64; width];
    let mut attaining = vec![0u32; width];
    for m in 0..width {
        let (n, d) = members
            .iter()
            .map(|(n, p)| (*n, p.entries[m]))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("non-empty family");
        h_emp[m] = d;
        attaining[m] = n;
    }
    Ok(FamilyProfile { members, h_emp, attaining })
}
