//! Finite views of the (possibly infinite) paths: which vertices lie within a
//! given word length of the identity, and how far a point is from a path.
//!
//! The half-line `N` is infinite, so it is enumerated stage by stage and
//! stages that cannot come close to the identity are skipped. Two bounds are
//! used for the stage `c_n -> c_(n+1)` with `k` trailing ones:
//!
//! * Bits of `n` above position `k` are never touched and the cursor stays in
//!   `[-k, k]`, so with `T` the highest such bit and `H` their count every
//!   vertex has word length at least `H + 2T - k`.
//! * Otherwise (`n = 2^k - 1`) every vertex has word length at least
//!   `floor(log2 n)` (the stage depth lemma, checked exhaustively in tests).

use std::collections::BTreeSet;
use std::fmt;

use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::group::Configuration;
use crate::metric::{norm, word_distance, CappedDistance};
use crate::walks::{self, negative_ray_vertex, stage_walk, Walk};

/// Which of the explicit paths is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PathSpec {
    /// The half-line `N`.
    HalfLine,
    /// The line `R` (negative ray joined to `N`).
    Line,
    /// The quasi-interval `I_n`.
    Interval(u32),
    /// The quasi-circle `C_n`.
    Circle(u32),
}

impl PathSpec {
    pub fn code(self) -> &'static str {
        match self {
            PathSpec::HalfLine => "N",
            PathSpec::Line => "R",
            PathSpec::Interval(_) => "I",
            PathSpec::Circle(_) => "C",
        }
    }

    pub fn family_n(self) -> Option<u32> {
        match self {
            PathSpec::Interval(n) | PathSpec::Circle(n) => Some(n),
            _ => None,
        }
    }

    pub fn from_code(code: &str, n: Option<u32>) -> Result<Self> {
        let need_n = || {
            n.ok_or(Error::Parameter { name: "n", message: format!("required for kind {code}") })
        };
        match code {
            "N" => Ok(PathSpec::HalfLine),
            "R" => Ok(PathSpec::Line),
            "I" => Ok(PathSpec::Interval(need_n()?)),
            "C" => Ok(PathSpec::Circle(need_n()?)),
            other => Err(Error::Parameter { name: "kind", message: format!("unknown path kind {other:?}") }),
        }
    }

    /// The whole walk for the finite paths.
    pub fn finite_walk(self) -> Result<Option<Walk>> {
        match self {
            PathSpec::Interval(n) => walks::quasi_interval(n).map(Some),
            PathSpec::Circle(n) => walks::quasi_circle(n).map(Some),
            PathSpec::HalfLine | PathSpec::Line => Ok(None),
        }
    }
}

impl fmt::Display for PathSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family_n() {
            Some(n) => write!(f, "{}{}", self.code(), n),
            None => f.write_str(self.code()),
        }
    }
}

fn floor_log2(n: u64) -> u64 {
    u64::from(63 - n.leading_zeros())
}

/// Lower bound on the word length of every vertex of `stage_walk(n)`.
pub fn stage_norm_lower_bound(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let k = n.trailing_ones();
    let high = if k >= 63 { 0 } else { n >> (k + 1) };
    if high == 0 {
        return floor_log2(n);
    }
    let top = u64::from(k) + 1 + floor_log2(high);
    u64::from(high.count_ones()) + 2 * top - u64::from(k)
}

/// Stages `n < stage_bound` whose lower bound does not exceed `budget`, in
/// increasing order.
pub fn stages_within(budget: u64, stage_bound: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for k in 0..64u32 {
        let low = (1u64 << k) - 1;
        if low >= stage_bound {
            break;
        }
        if stage_norm_lower_bound(low) <= budget {
            out.push(low);
        }
        if k >= 62 {
            continue;
        }
        // high part h >= 1: n = (h << (k+1)) | low, bound >= 1 + 2*(k+1+top(h)) - k
        let mut h = 1u64;
        loop {
            let top = u64::from(k) + 1 + floor_log2(h);
            if top >= 63 || 1 + 2 * top - u64::from(k) > budget {
                break;
            }
            let n = (h << (k + 1)) | low;
            if n >= stage_bound {
                break;
            }
            if stage_norm_lower_bound(n) <= budget {
                out.push(n);
            }
            h += 1;
        }
    }
    out.sort_unstable();
    out
}

/// Default stage bound for a word-length budget: stages at or beyond
/// `2^(budget+1)` have `floor(log2 n) > budget`.
pub fn default_stage_bound(budget: u64) -> u64 {
    if budget >= 63 {
        u64::MAX
    } else {
        1u64 << (budget + 1)
    }
}

/// All vertices of the path with word length at most `budget`, using an
/// explicit stage bound for `N`.
pub fn path_vertices_within_bounded(spec: PathSpec, budget: u64, stage_bound: u64) -> Result<BTreeSet<Configuration>> {
    let mut out = BTreeSet::new();
    let add_n = |out: &mut BTreeSet<Configuration>| {
        for n in stages_within(budget, stage_bound) {
            for v in stage_walk(n).into_vertices() {
                if norm(&v) <= budget {
                    out.insert(v);
                }
            }
        }
    };
    match spec {
        PathSpec::HalfLine => add_n(&mut out),
        PathSpec::Line => {
            add_n(&mut out);
            // offset j from the origin along the negative ray has word length j
            for i in 1..=budget.div_ceil(2) {
                let v = negative_ray_vertex(i);
                let mid = crate::group::apply_step(&negative_ray_vertex(i - 1), crate::GeneratorStep::Left);
                for w in [mid, v] {
                    if norm(&w) <= budget {
                        out.insert(w);
                    }
                }
            }
        }
        PathSpec::Interval(_) | PathSpec::Circle(_) => {
            let walk = spec.finite_walk()?.expect("finite path");
            out.extend(walk.into_vertices().into_iter().filter(|v| norm(v) <= budget));
        }
    }
    Ok(out)
}

pub fn path_vertices_within(spec: PathSpec, budget: u64) -> Result<BTreeSet<Configuration>> {
    path_vertices_within_bounded(spec, budget, default_stage_bound(budget))
}

/// The vertices of the path inside a ball centred at the identity.
pub fn path_in_ball(spec: PathSpec, ball: &Ball) -> Result<BTreeSet<Configuration>> {
    if !ball.center().is_identity() {
        return Err(Error::Parameter { name: "ball", message: "must be centred at the identity".into() });
    }
    path_vertices_within(spec, ball.radius())
}

/// Word distance from `v` to the path, if at most `cap`.
///
/// A path vertex within `e` of `v` has word length at most `|v| + e`, so the
/// search examines the path vertices of word length `|v| + e` for growing
/// `e` and stops once the nearest one found is within `e`.
pub fn distance_to_path(v: &Configuration, spec: PathSpec, cap: u64) -> Result<CappedDistance> {
    let base = norm(v);
    let mut extra = 0;
    loop {
        let best = path_vertices_within(spec, base + extra)?
            .iter()
            .map(|w| word_distance(v, w))
            .min();
        if let Some(d) = best.filter(|&d| d <= extra) {
            return Ok(CappedDistance::from_min(Some(d), cap));
        }
        if extra >= cap {
            return Ok(CappedDistance::Exceeds);
        }
        extra = (extra * 2).clamp(1, cap);
    }
}

/// Vertices of `N` of word length at most `budget` found by walking every
/// stage below `stage_bound`, without the per-stage lower bound. Used to
/// validate the pruned enumeration.
pub fn half_line_vertices_exhaustive(budget: u64, stage_bound: u64) -> BTreeSet<Configuration> {
    (0..stage_bound)
        .flat_map(|n| stage_walk(n).into_vertices())
        .filter(|v| norm(v) <= budget)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::ball;
    use crate::walks::{half_quasi_line_stages, probes};

    #[test]
    fn lower_bound_holds_for_small_stages() {
        for n in 0..=4096u64 {
            let min = stage_walk(n).vertices().iter().map(norm).min().unwrap();
            assert!(stage_norm_lower_bound(n) <= min, "stage {n}: bound {} > {min}", stage_norm_lower_bound(n));
        }
    }

    #[test]
    fn stage_selection_matches_filter() {
        for budget in 0..14u64 {
            let bound = default_stage_bound(budget) * 2;
            let direct: Vec<u64> = (0..bound).filter(|&n| stage_norm_lower_bound(n) <= budget).collect();
            assert_eq!(stages_within(budget, bound), direct, "budget {budget}");
        }
    }

    #[test]
    fn half_line_in_small_balls() {
        let e = Configuration::identity();
        let b1 = ball(&e, 1).unwrap();
        let got = path_in_ball(PathSpec::HalfLine, &b1).unwrap();
        let want: BTreeSet<_> = [e.clone(), Configuration::new([0], 0)].into_iter().collect();
        assert_eq!(got, want);
        let b0 = ball(&e, 0).unwrap();
        assert_eq!(path_in_ball(PathSpec::HalfLine, &b0).unwrap().len(), 1);
    }

    #[test]
    fn half_line_in_ball_matches_long_prefix() {
        // every N vertex of word length <= 7 already appears in the first 2^9 stages
        let r = 7;
        let prefix: BTreeSet<_> = half_quasi_line_stages(1 << 10)
            .into_vertices()
            .into_iter()
            .filter(|v| norm(v) <= r)
            .collect();
        let b = ball(&Configuration::identity(), r).unwrap();
        let got = path_in_ball(PathSpec::HalfLine, &b).unwrap();
        assert_eq!(got, prefix);
        assert!(got.iter().all(|v| b.contains(v)));
    }

    #[test]
    fn pruned_enumeration_matches_exhaustive() {
        for r in 0..=11u64 {
            let bound = default_stage_bound(r);
            let pruned = path_vertices_within_bounded(PathSpec::HalfLine, r, bound).unwrap();
            assert_eq!(pruned, half_line_vertices_exhaustive(r, bound), "radius {r}");
        }
    }

    #[test]
    fn line_in_ball_includes_negative_ray() {
        let got = path_vertices_within(PathSpec::Line, 4).unwrap();
        assert!(got.contains(&negative_ray_vertex(2)));
        assert!(got.contains(&Configuration::new([-1], -2)));
        assert!(!got.contains(&negative_ray_vertex(3)));
    }

    #[test]
    fn probe_distances_to_half_line() {
        let p = probes(2).unwrap();
        let spec = PathSpec::HalfLine;
        assert_eq!(distance_to_path(&p.b_n, spec, 10).unwrap(), CappedDistance::Within(2));
        assert_eq!(distance_to_path(&Configuration::identity(), spec, 10).unwrap(), CappedDistance::Within(0));
        assert_eq!(distance_to_path(&p.a_n, spec, 10).unwrap(), CappedDistance::Within(2));
        assert_eq!(distance_to_path(&p.a_n, spec, 1).unwrap(), CappedDistance::Exceeds);
    }

    #[test]
    fn probe_distance_oracle() {
        // exhaustive: nearest N vertex among everything in a large enough ball
        let p = probes(2).unwrap();
        let reach = norm(&p.b_n) + 10;
        let b = ball(&Configuration::identity(), reach).unwrap();
        let on_n = path_in_ball(PathSpec::HalfLine, &b).unwrap();
        let brute = b
            .members()
            .filter(|v| on_n.contains(v))
            .map(|v| word_distance(&p.b_n, v))
            .min()
            .unwrap();
        assert_eq!(brute, 2);
    }

    #[test]
    fn spec_codes() {
        assert_eq!(PathSpec::from_code("C", Some(3)).unwrap(), PathSpec::Circle(3));
        assert!(PathSpec::from_code("I", None).is_err());
        assert!(PathSpec::from_code("Q", None).is_err());
        assert_eq!(PathSpec::Interval(2).to_string(), "I2");
    }
}
