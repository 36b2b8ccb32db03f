//! Explicit paths in the Cayley graph built from a binary counter.
//!
//! The half-line `N` visits the stage configurations `c_0, c_1, c_2, ...`
//! (cursor at the origin, `n` written in binary on the non-negative lamps).
//! Between `c_n` and `c_{n+1}` the lamplighter first writes a marker at `-k`
//! (where `k` is the number of trailing ones of `n`), mirrors the next bits of
//! `n` onto the negative side, performs the carry on the positive side and
//! finally wipes the negative side clean. Everything else here is assembled
//! from that stage walk.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::{apply_step, Configuration, GeneratorStep, Position};

use GeneratorStep::{Left, Right, Toggle};

/// Largest `n` accepted for quasi-intervals and quasi-circles. The walks
/// have length of order `2^(2n)`.
pub const MAX_FAMILY_N: u32 = 8;

pub const MILESTONE_ORIGIN: &str = "origin";
pub const MILESTONE_I1_END: &str = "i1_end";
pub const MILESTONE_I2_END: &str = "i2_end";
pub const MILESTONE_I3_END: &str = "i3_end";

/// An ordered vertex path with labelled positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    steps: Vec<GeneratorStep>,
    vertices: Vec<Configuration>,
    milestones: Vec<(String, usize)>,
    closed: bool,
}

impl Walk {
    pub fn from_steps(start: Configuration, steps: Vec<GeneratorStep>) -> Self {
        let mut vertices = Vec::with_capacity(steps.len() + 1);
        let mut cur = start;
        for &s in &steps {
            let next = apply_step(&cur, s);
            vertices.push(cur);
            cur = next;
        }
        vertices.push(cur);
        Self { steps, vertices, milestones: Vec::new(), closed: false }
    }

    /// Rebuilds a walk from its vertex sequence, recovering the steps.
    /// Returns the index of the first non-adjacent pair on failure.
    pub fn from_vertices(vertices: Vec<Configuration>) -> Result<Self, usize> {
        if vertices.is_empty() {
            return Err(0);
        }
        let mut steps = Vec::with_capacity(vertices.len() - 1);
        for (i, w) in vertices.windows(2).enumerate() {
            steps.push(GeneratorStep::between(&w[0], &w[1]).ok_or(i)?);
        }
        Ok(Self { steps, vertices, milestones: Vec::new(), closed: false })
    }

    pub fn start(&self) -> &Configuration {
        &self.vertices[0]
    }

    pub fn end(&self) -> &Configuration {
        self.vertices.last().expect("walk has at least one vertex")
    }

    pub fn steps(&self) -> &[GeneratorStep] {
        &self.steps
    }

    pub fn vertices(&self) -> &[Configuration] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Configuration> {
        self.vertices
    }

    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    pub fn milestones(&self) -> &[(String, usize)] {
        &self.milestones
    }

    pub fn milestone(&self, label: &str) -> Option<usize> {
        self.milestones.iter().find(|(l, _)| l == label).map(|&(_, i)| i)
    }

    pub fn set_milestone(&mut self, label: impl Into<String>, index: usize) {
        assert!(index < self.vertices.len(), "milestone index out of range");
        let label = label.into();
        if let Some(slot) = self.milestones.iter_mut().find(|(l, _)| *l == label) {
            slot.1 = index;
        } else {
            self.milestones.push((label, index));
        }
    }

    /// Marks a walk whose last vertex repeats the first as a closed curve.
    pub fn mark_closed(&mut self) {
        self.closed = true;
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Number of distinct vertices visited; for a closed walk the repeated
    /// endpoint is counted once.
    pub fn cycle_len(&self) -> usize {
        if self.closed {
            self.vertices.len() - 1
        } else {
            self.vertices.len()
        }
    }

    /// Vertices without the repeated endpoint of a closed walk.
    pub fn distinct_vertices(&self) -> &[Configuration] {
        &self.vertices[..self.cycle_len()]
    }

    /// All vertices pairwise distinct (closed walks: all but the repeated
    /// endpoint, which must coincide with the start).
    pub fn is_simple(&self) -> bool {
        if self.closed && self.start() != self.end() {
            return false;
        }
        let body = self.distinct_vertices();
        let mut seen = HashSet::with_capacity(body.len());
        body.iter().all(|v| seen.insert(v))
    }

    /// `vertices[i+1] = apply_step(vertices[i], steps[i])` for every `i`.
    pub fn is_consistent(&self) -> bool {
        self.vertices.len() == self.steps.len() + 1
            && self
                .steps
                .iter()
                .zip(self.vertices.windows(2))
                .all(|(&s, w)| apply_step(&w[0], s) == w[1])
    }

    /// Truncates to the first `steps` steps, dropping milestones past the end.
    pub fn truncate(&mut self, steps: usize) {
        if steps >= self.steps.len() {
            return;
        }
        self.steps.truncate(steps);
        self.vertices.truncate(steps + 1);
        self.milestones.retain(|&(_, i)| i <= steps);
        self.closed = false;
    }

    fn push(&mut self, s: GeneratorStep) {
        let next = apply_step(self.end(), s);
        self.steps.push(s);
        self.vertices.push(next);
    }

    fn extend(&mut self, steps: &[GeneratorStep]) {
        self.vertices.reserve(steps.len());
        for &s in steps {
            self.push(s);
        }
    }
}

/// The four test points placed on both sides of the paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeSet {
    pub n: u64,
    pub a_n: Configuration,
    pub b_n: Configuration,
    pub x_n: Configuration,
    pub y_n: Configuration,
}

/// Number of trailing one bits of `n`; the stage from `c_n` works on
/// positions `[-k, k]` for this `k`.
pub fn trailing_ones(n: u64) -> u32 {
    n.trailing_ones()
}

fn bit(n: u64, p: Position) -> bool {
    (0..64).contains(&p) && (n >> p) & 1 == 1
}

/// `c_n`: cursor at the origin, lamps at the set bits of `n`.
pub fn stage_config(n: u64) -> Configuration {
    let lamps = (0..64).filter(|&p| bit(n, p)).collect();
    Configuration::from_sorted_unchecked(lamps, 0)
}

/// Steps taking `c_n` to `c_{n+1}`.
///
/// Panics if `n = u64::MAX` (no successor stage).
pub fn stage_steps(n: u64) -> Vec<GeneratorStep> {
    assert!(n < u64::MAX, "stage {n} has no successor");
    let k = Position::from(trailing_ones(n));
    if k == 0 {
        return vec![Toggle];
    }
    let mut steps = Vec::with_capacity(9 * k as usize + 3);
    // marker at -k
    steps.extend(std::iter::repeat_n(Left, k as usize));
    steps.push(Toggle);
    // copy bits k+1..2k-1 of n onto -k+1..-1, then arrive at the origin
    let mut negative_lit = vec![-k];
    for p in (-k + 1)..=-1 {
        steps.push(Right);
        if bit(n, p + 2 * k) {
            steps.push(Toggle);
            negative_lit.push(p);
        }
    }
    steps.push(Right);
    // carry: clear the run of ones, light bit k
    for _ in 0..k {
        steps.push(Toggle);
        steps.push(Right);
    }
    steps.push(Toggle);
    // back to the origin, sweep the negative side clean, return
    steps.extend(std::iter::repeat_n(Left, k as usize));
    for p in (-k..=-1).rev() {
        steps.push(Left);
        if negative_lit.contains(&p) {
            steps.push(Toggle);
        }
    }
    steps.extend(std::iter::repeat_n(Right, k as usize));
    steps
}

pub fn stage_walk(n: u64) -> Walk {
    let mut w = Walk::from_steps(stage_config(n), stage_steps(n));
    w.set_milestone(format!("c{n}"), 0);
    w.set_milestone(format!("c{}", n + 1), w.step_count());
    w
}

fn stage_label(n: u64) -> String {
    format!("c{n}")
}

/// Prefix of the half-line `N` with exactly `num_steps` steps. Milestone
/// `c<n>` marks the arrival at every stage configuration reached.
pub fn half_quasi_line(num_steps: usize) -> Walk {
    let mut w = Walk::from_steps(Configuration::identity(), Vec::new());
    w.vertices.reserve(num_steps);
    w.set_milestone(stage_label(0), 0);
    let mut n = 0u64;
    while w.step_count() < num_steps {
        for s in stage_steps(n) {
            if w.step_count() == num_steps {
                return w;
            }
            w.push(s);
        }
        n += 1;
        let idx = w.step_count();
        w.milestones.push((stage_label(n), idx));
    }
    w
}

/// Concatenation of the stage walks `c_0 -> ... -> c_stages`.
pub fn half_quasi_line_stages(stages: u64) -> Walk {
    let mut w = Walk::from_steps(Configuration::identity(), Vec::new());
    w.set_milestone(stage_label(0), 0);
    for n in 0..stages {
        w.extend(&stage_steps(n));
        let idx = w.step_count();
        w.milestones.push((stage_label(n + 1), idx));
    }
    w
}

/// Swaps left and right moves, keeping toggles and order.
pub fn mirror_walk(steps: &[GeneratorStep]) -> Vec<GeneratorStep> {
    steps.iter().map(|s| match s {
        Toggle => Toggle,
        Right => Left,
        Left => Right,
    }).collect()
}

/// `R(-i)`: lamps on `{-i, ..., -1}`, cursor at `-i`.
pub fn negative_ray_vertex(i: u64) -> Configuration {
    let i = i as Position;
    Configuration::from_sorted_unchecked((-i..0).collect(), -i)
}

/// The two-sided line `R`: the negative ray `R(-neg_len) ... R(-1)` joined at
/// the identity to the prefix of `N` with `pos_steps` steps. Each ray step
/// `R(-i-1) -> R(-i)` is a toggle followed by a right move.
pub fn quasi_line(neg_len: u64, pos_steps: usize) -> Walk {
    let mut steps = Vec::with_capacity(2 * neg_len as usize);
    for _ in 0..neg_len {
        steps.push(Toggle);
        steps.push(Right);
    }
    let mut w = Walk::from_steps(negative_ray_vertex(neg_len), steps);
    let origin = w.step_count();
    let n = half_quasi_line(pos_steps);
    w.extend(n.steps());
    w.set_milestone(MILESTONE_ORIGIN, origin);
    for (label, idx) in n.milestones {
        w.milestones.push((label, idx + origin));
    }
    w
}

fn check_family_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Parameter { name: "n", message: "must be at least 1".into() });
    }
    if n > MAX_FAMILY_N {
        return Err(Error::Parameter {
            name: "n",
            message: format!("must be at most {MAX_FAMILY_N} (walk length grows like 4^n)"),
        });
    }
    Ok(())
}

/// Number of stages of `N` covered by `I_n1`: it stops at
/// `c_(2^(2n+1)-2)`, lamps `1..=2n` lit and the cursor at the origin.
pub fn interval_stage_count(n: u32) -> u64 {
    (1u64 << (2 * n + 1)) - 2
}

/// The quasi-interval `I_n = I_n1 I_n2 I_n3`.
///
/// `I_n1` follows `N` up to `c_(2^(2n+1)-2)`. `I_n2` is the geodesic that
/// walks right to `2n` switching lamps `1..2n-1` off, leaving lamp `2n` lit.
/// `I_n3` replays the steps of `I_n1` mirrored; its opening toggle switches
/// lamp `2n` off and it ends with lamps `0..=2n` lit and the cursor at `2n`.
///
/// Stopping `I_n1` one toggle short of `c_(2^(2n+1)-1)` keeps the path from
/// stepping back and forth over that toggle at either junction.
pub fn quasi_interval(n: u32) -> Result<Walk> {
    check_family_n(n)?;
    let first = half_quasi_line_stages(interval_stage_count(n));
    let first_steps = first.steps().to_vec();
    let mut w = first;
    w.milestones.clear();
    let i1_end = w.step_count();
    w.push(Right);
    for _ in 1..2 * n {
        w.push(Toggle);
        w.push(Right);
    }
    let i2_end = w.step_count();
    w.extend(&mirror_walk(&first_steps));
    w.set_milestone(MILESTONE_I1_END, i1_end);
    w.set_milestone(MILESTONE_I2_END, i2_end);
    Ok(w)
}

/// The quasi-circle `C_n`, based at `c_1 = ({0}, 0)`.
///
/// It is `I_n` without its opening toggle, closed up by walking from `2n`
/// back to the origin switching the lamps of `[1, 2n]` off.
pub fn quasi_circle(n: u32) -> Result<Walk> {
    let interval = quasi_interval(n)?;
    let mut w = Walk::from_steps(stage_config(1), interval.steps()[1..].to_vec());
    for (label, idx) in interval.milestones() {
        w.set_milestone(label.clone(), idx - 1);
    }
    let i3_end = w.step_count();
    w.push(Toggle);
    for _ in 1..2 * n {
        w.push(Left);
        w.push(Toggle);
    }
    w.push(Left);
    w.set_milestone(MILESTONE_I3_END, i3_end);
    w.closed = true;
    Ok(w)
}

pub fn probes(n: u64) -> Result<ProbeSet> {
    if n == 0 {
        return Err(Error::Parameter { name: "n", message: "must be at least 1".into() });
    }
    let n_pos = n as Position;
    let b_n = Configuration::translation(-n_pos);
    Ok(ProbeSet {
        n,
        a_n: Configuration::from_sorted_unchecked((0..2 * n_pos).collect(), n_pos),
        b_n: b_n.clone(),
        x_n: Configuration::from_sorted_unchecked((0..=2 * n_pos).collect(), n_pos),
        y_n: b_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::dyadic_views;
    use crate::metric::norm;

    fn cfg(l: &[i64], c: i64) -> Configuration {
        Configuration::new(l.iter().copied(), c)
    }

    #[test]
    fn trailing_ones_examples() {
        assert_eq!(trailing_ones(0), 0);
        assert_eq!(trailing_ones(3), 2);
        assert_eq!(trailing_ones(6), 0);
    }

    #[test]
    fn stage_config_examples() {
        assert_eq!(stage_config(0), Configuration::identity());
        assert_eq!(stage_config(1), cfg(&[0], 0));
        assert_eq!(stage_config(6), cfg(&[1, 2], 0));
        for n in 0..(1u64 << 16) {
            assert_eq!(dyadic_views(&stage_config(n)), Some((n as u128, 0)));
        }
    }

    #[test]
    fn stage_zero_is_a_single_toggle() {
        let w = stage_walk(0);
        assert_eq!(w.steps(), &[Toggle]);
        assert_eq!(*w.end(), stage_config(1));
    }

    #[test]
    fn stage_one_matches_hand_enumeration() {
        let w = stage_walk(1);
        assert_eq!(w.step_count(), 10);
        let expected = vec![
            cfg(&[0], 0),
            cfg(&[0], -1),
            cfg(&[0, -1], -1),
            cfg(&[0, -1], 0),
            cfg(&[-1], 0),
            cfg(&[-1], 1),
            cfg(&[-1, 1], 1),
            cfg(&[-1, 1], 0),
            cfg(&[-1, 1], -1),
            cfg(&[1], -1),
            cfg(&[1], 0),
        ];
        assert_eq!(w.vertices(), expected.as_slice());
    }

    #[test]
    fn stage_three_reaches_four() {
        let w = stage_walk(3);
        assert_eq!(*w.end(), cfg(&[2], 0));
        assert_eq!(dyadic_views(w.end()), Some((4, 0)));
    }

    #[test]
    fn stage_walk_invariants() {
        for n in 0..=4096u64 {
            let w = stage_walk(n);
            let k = Position::from(trailing_ones(n));
            assert!(w.is_consistent());
            assert_eq!(*w.start(), stage_config(n));
            assert_eq!(*w.end(), stage_config(n + 1));
            assert!(w.is_simple(), "stage {n} repeats a vertex");
            assert!(w.step_count() as i64 <= 9 * k + 3);
            let base = stage_config(n);
            for v in w.vertices() {
                assert!((-k..=k).contains(&v.cursor()), "stage {n} cursor {}", v.cursor());
                let touched = crate::group::xor_shifted(v.lamps(), base.lamps(), 0);
                assert!(touched.iter().all(|p| (-k..=k).contains(p)), "stage {n} touched {touched:?}");
            }
        }
    }

    #[test]
    fn stage_depth_lemma_small() {
        for n in 1..=1024u64 {
            let floor_log = 63 - u64::from(n.leading_zeros());
            let min = stage_walk(n).vertices().iter().map(norm).min().unwrap();
            assert!(min >= floor_log, "stage {n}: {min} < {floor_log}");
        }
    }

    #[test]
    fn half_line_prefix_and_milestones() {
        let w = half_quasi_line(1);
        assert_eq!(w.vertices(), &[Configuration::identity(), cfg(&[0], 0)]);
        let w = half_quasi_line(11);
        assert_eq!(w.milestone("c0"), Some(0));
        assert_eq!(w.milestone("c1"), Some(1));
        assert_eq!(w.milestone("c2"), Some(11));
        let w = half_quasi_line(400);
        let i = w.milestone("c5").unwrap();
        assert_eq!(dyadic_views(&w.vertices()[i]).unwrap().0, 5);
        assert_eq!(w.step_count(), 400);
        assert!(w.is_simple());
        // prefix property
        let short = half_quasi_line(123);
        assert_eq!(short.vertices(), &w.vertices()[..124]);
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(mirror_walk(&[Toggle]), vec![Toggle]);
        assert_eq!(mirror_walk(&[Right, Toggle, Left]), vec![Left, Toggle, Right]);
    }

    #[test]
    fn quasi_line_rays() {
        assert_eq!(negative_ray_vertex(1), cfg(&[-1], -1));
        assert_eq!(negative_ray_vertex(3), cfg(&[-3, -2, -1], -3));
        assert_eq!(negative_ray_vertex(0), Configuration::identity());
        let r = quasi_line(50, 500);
        assert!(r.is_simple());
        let origin = r.milestone(MILESTONE_ORIGIN).unwrap();
        assert_eq!(origin, 100);
        assert!(r.vertices()[origin].is_identity());
        assert_eq!(r.vertices()[origin - 2], negative_ray_vertex(1));
        assert_eq!(r.vertices()[0], negative_ray_vertex(50));
        assert_eq!(&r.vertices()[origin..], half_quasi_line(500).vertices());
    }

    #[test]
    fn quasi_interval_one() {
        let w = quasi_interval(1).unwrap();
        let i1 = w.milestone(MILESTONE_I1_END).unwrap();
        let i2 = w.milestone(MILESTONE_I2_END).unwrap();
        assert_eq!(w.vertices()[i1], stage_config(6));
        assert_eq!(w.vertices()[i1], cfg(&[1, 2], 0));
        assert_eq!(w.vertices()[i2], cfg(&[2], 2));
        assert_eq!(w.vertices()[i2 + 1], cfg(&[], 2));
        assert_eq!(*w.end(), cfg(&[0, 1, 2], 2));
        assert_eq!(&w.steps()[i2..], mirror_walk(&w.steps()[..i1]).as_slice());
        assert!(w.is_simple());
    }

    #[test]
    fn quasi_interval_two_final_vertex() {
        let w = quasi_interval(2).unwrap();
        assert_eq!(*w.end(), cfg(&[0, 1, 2, 3, 4], 4));
        assert!(w.is_simple());
        assert!(quasi_interval(0).is_err());
        assert!(quasi_interval(MAX_FAMILY_N + 1).is_err());
    }

    #[test]
    fn quasi_circle_closes_at_c1() {
        let c = quasi_circle(1).unwrap();
        assert!(c.is_closed());
        assert_eq!(c.start(), c.end());
        assert_eq!(*c.start(), cfg(&[0], 0));
        assert!(c.is_simple());
        let close = c.milestone(MILESTONE_I3_END).unwrap();
        assert_eq!(c.step_count(), quasi_interval(1).unwrap().step_count() - 1 + 4);
        let tail = &c.vertices()[close..];
        assert_eq!(tail[0], cfg(&[0, 1, 2], 2));
        let n = tail.len();
        assert_eq!(&tail[n - 3..], &[cfg(&[0, 1], 1), cfg(&[0], 1), cfg(&[0], 0)]);
        assert!(tail.iter().all(|v| v.cursor() >= 0));
        assert!(quasi_circle(0).is_err());
    }

    #[test]
    fn probe_points() {
        let p = probes(2).unwrap();
        assert_eq!(p.a_n, cfg(&[0, 1, 2, 3], 2));
        assert_eq!(p.b_n, cfg(&[], -2));
        assert_eq!(p.x_n, cfg(&[0, 1, 2, 3, 4], 2));
        assert_eq!(p.y_n, p.b_n);
        assert!(probes(0).is_err());
    }
}
