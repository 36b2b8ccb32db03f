//! The verification suite: every property claimed for the group, the metric
//! and the explicit paths, checked at desk scale.
//!
//! Each criterion returns a [`CriterionResult`]; nothing here panics on a
//! failed check. The metric under test is injectable so that the suite can be
//! shown to reject a broken distance formula.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ball::ball;
use crate::codec;
use crate::distortion::{circle_family_distortion, distortion_profile};
use crate::error::Result;
use crate::group::{apply_step, compose, dyadic_views, invert, Configuration, GeneratorStep};
use crate::metric::{bfs_distance, word_distance, CappedDistance, MetricFn};
use crate::paths::{
    default_stage_bound, distance_to_path, half_line_vertices_exhaustive, path_vertices_within_bounded, PathSpec,
};
use crate::separation::{separation_report, Obstacle, Verdict};
use crate::walks::{
    half_quasi_line, mirror_walk, probes, quasi_circle, quasi_interval, quasi_line, stage_config, stage_walk,
    MILESTONE_I1_END, MILESTONE_I2_END,
};

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "metric-oracle-equivalence"),
    (2, "group-laws"),
    (3, "half-line-well-formed"),
    (4, "stage-depth-lemma"),
    (5, "half-line-distortion"),
    (6, "half-line-separation"),
    (7, "quasi-line"),
    (8, "quasi-intervals-and-circles"),
    (9, "circle-family-uniformity"),
    (10, "codec-and-determinism"),
];

/// Criteria grouped by subject, for `--suite`.
pub fn suite(name: &str) -> Option<Vec<u8>> {
    let ids = match name {
        "all" => (1..=10).collect(),
        "group" => vec![1, 2],
        "walks" => vec![3, 4, 8],
        "distortion" => vec![5, 7, 9],
        "separation" => vec![6, 7, 8],
        "codec" => vec![10],
        _ => return None,
    };
    Some(ids)
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub metric: MetricFn,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { metric: word_distance, seed: 0x5eed_1a3b }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {}: {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

type Outcome = Result<(bool, String)>;

pub fn run_criterion(id: u8, opts: &VerifyOptions) -> CriterionResult {
    let name = CRITERIA.iter().find(|(i, _)| *i == id).map_or("unknown", |(_, n)| n);
    let start = Instant::now();
    let outcome: Outcome = match id {
        1 => metric_oracle(opts),
        2 => group_laws(opts),
        3 => half_line_well_formed(),
        4 => stage_depth(opts),
        5 => half_line_distortion(),
        6 => half_line_separation(),
        7 => quasi_line_checks(),
        8 => intervals_and_circles(),
        9 => circle_family(),
        10 => codec_and_determinism(),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult { id, name, passed, detail, elapsed: start.elapsed() }
}

pub fn run_suite(ids: &[u8], opts: &VerifyOptions) -> Vec<CriterionResult> {
    ids.iter().map(|&id| run_criterion(id, opts)).collect()
}

/// Every element of `B(e, 8)`: closed form against an independent BFS.
fn metric_oracle(opts: &VerifyOptions) -> Outcome {
    const RADIUS: u64 = 8;
    let e = Configuration::identity();
    let b = ball(&e, RADIUS)?;
    let mut mismatches = 0;
    let mut first = None;
    for v in b.members() {
        let oracle = bfs_distance(&e, v, RADIUS);
        let closed = (opts.metric)(&e, v);
        if oracle != CappedDistance::Within(closed) {
            mismatches += 1;
            first.get_or_insert_with(|| format!("; first at {v}: bfs {oracle:?}, closed form {closed}"));
        }
    }
    Ok((mismatches == 0, format!("{} vertices, {mismatches} mismatches{}", b.len(), first.unwrap_or_default())))
}

fn random_configuration(rng: &mut ChaCha8Rng) -> Configuration {
    let count = rng.gen_range(0..8);
    let lamps: Vec<i64> = (0..count).map(|_| rng.gen_range(-12..=12)).collect();
    Configuration::new(lamps, rng.gen_range(-15..=15))
}

fn group_laws(opts: &VerifyOptions) -> Outcome {
    const TRIPLES: usize = 10_000;
    let metric = opts.metric;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let e = Configuration::identity();
    let mut failures: Vec<String> = Vec::new();
    let mut fail = |what: &str, g: &Configuration| {
        if failures.len() < 3 {
            failures.push(format!("{what} at {g}"));
        } else {
            failures.push(String::new());
        }
    };
    for _ in 0..TRIPLES {
        let f = random_configuration(&mut rng);
        let g = random_configuration(&mut rng);
        let h = random_configuration(&mut rng);
        if compose(&compose(&f, &g), &h) != compose(&f, &compose(&g, &h)) {
            fail("associativity", &f);
        }
        if compose(&f, &e) != f || compose(&e, &f) != f {
            fail("identity", &f);
        }
        if !compose(&f, &invert(&f)).is_identity() || !compose(&invert(&f), &f).is_identity() {
            fail("inverse", &f);
        }
        for s in GeneratorStep::ALL {
            let next = apply_step(&f, s);
            if next != compose(&f, &s.element()) {
                fail("generator action", &f);
            }
            if metric(&f, &next) != 1 {
                fail("unit generator step", &f);
            }
        }
        let (fg, fh) = (compose(&f, &g), compose(&f, &h));
        let dgh = metric(&g, &h);
        if metric(&fg, &fh) != dgh {
            fail("left invariance", &f);
        }
        if metric(&h, &g) != dgh {
            fail("symmetry", &g);
        }
        if (dgh == 0) != (g == h) {
            fail("identity of indiscernibles", &g);
        }
        if metric(&f, &h) > metric(&f, &g) + dgh {
            fail("triangle inequality", &f);
        }
    }
    let n = failures.len();
    let shown: Vec<_> = failures.into_iter().filter(|s| !s.is_empty()).collect();
    Ok((n == 0, format!("{TRIPLES} random triples, {n} failures{}", if shown.is_empty() { String::new() } else { format!(": {}", shown.join("; ")) })))
}

fn half_line_well_formed() -> Outcome {
    const STEPS: usize = 100_000;
    const STAGES: u64 = 4096;
    let w = half_quasi_line(STEPS);
    if !w.is_simple() {
        return Ok((false, "repeated vertex in N".into()));
    }
    let mut last = None;
    for n in 0..=STAGES {
        let Some(idx) = w.milestone(&format!("c{n}")) else {
            return Ok((false, format!("milestone c{n} missing")));
        };
        let v = &w.vertices()[idx];
        if *v != stage_config(n) || dyadic_views(v) != Some((u128::from(n), 0)) {
            return Ok((false, format!("milestone c{n} is {v}")));
        }
        if last.is_some_and(|l| l >= idx) {
            return Ok((false, format!("milestone c{n} out of order")));
        }
        last = Some(idx);
    }
    Ok((true, format!("{STEPS} steps all distinct; c0..c{STAGES} in order, c{STAGES} at index {}", last.unwrap())))
}

fn stage_depth(opts: &VerifyOptions) -> Outcome {
    let e = Configuration::identity();
    for n in 1..=4096u64 {
        let floor_log = u64::from(63 - n.leading_zeros());
        let min = stage_walk(n).vertices().iter().map(|v| (opts.metric)(&e, v)).min().unwrap_or(0);
        if min < floor_log {
            return Ok((false, format!("stage {n} reaches word length {min} < {floor_log}")));
        }
    }
    for r in 0..=8u64 {
        let bound = default_stage_bound(r);
        let tight = half_line_vertices_exhaustive(r, bound);
        let loose = half_line_vertices_exhaustive(r, 2 * bound);
        if tight != loose {
            return Ok((false, format!("radius {r}: stage bound 2^{} misses vertices", r + 1)));
        }
        if path_vertices_within_bounded(PathSpec::HalfLine, r, bound)? != tight {
            return Ok((false, format!("radius {r}: pruned enumeration disagrees")));
        }
    }
    Ok((true, "stages 1..=4096 respect floor(log2 n); N in B(e,r) stable under 2^(r+1) vs 2^(r+2) for r <= 8".into()))
}

fn profiles_agree(spec: PathSpec) -> Result<(bool, String)> {
    let small = distortion_profile(spec, 2000, 4)?;
    let large = distortion_profile(spec, 4000, 4)?;
    let ok = small.entries == large.entries && small.is_monotone() && large.is_monotone();
    Ok((ok, format!("{spec}: D(0..=4) = {:?} at 2000, {:?} at 4000", small.entries, large.entries)))
}

fn half_line_distortion() -> Outcome {
    profiles_agree(PathSpec::HalfLine)
}

fn probe_distance(p: &Configuration, spec: PathSpec, cap: u64) -> Result<u64> {
    Ok(distance_to_path(p, spec, cap)?.value().unwrap_or(cap + 1))
}

fn half_line_separation() -> Outcome {
    let spec = PathSpec::HalfLine;
    let mut notes = Vec::new();
    let mut ok = true;
    for n in [2u64, 3, 4] {
        let p = probes(n)?;
        let radius = 5 * n + 2;
        let da = probe_distance(&p.a_n, spec, radius)?;
        let db = probe_distance(&p.b_n, spec, radius)?;
        let report = separation_report(Obstacle::Path(spec), 0, radius, [("a_n", &p.a_n), ("b_n", &p.b_n)])?;
        let control = separation_report(Obstacle::Nothing, 0, radius, [("a_n", &p.a_n), ("b_n", &p.b_n)])?;
        let pass = da >= n
            && db >= n
            && report.verdict == Verdict::SeparatedInBall
            && control.verdict == Verdict::ConnectedInBall;
        ok &= pass;
        notes.push(format!(
            "n={n} R={radius}: d(a,N)={da} d(b,N)={db} {} components, {:?}",
            report.components.len(),
            report.verdict
        ));
    }
    Ok((ok, notes.join("; ")))
}

fn quasi_line_checks() -> Outcome {
    let r = quasi_line(1000, 4000);
    let simple = r.is_simple();
    let (stable, profile) = profiles_agree(PathSpec::Line)?;
    let p = probes(2)?;
    let report = separation_report(Obstacle::Path(PathSpec::Line), 0, 12, [("a_2", &p.a_n), ("b_2", &p.b_n)])?;
    let separated = report.verdict == Verdict::SeparatedInBall;
    Ok((
        simple && stable && separated,
        format!("simple={simple}; {profile}; separation {:?}", report.verdict),
    ))
}

fn intervals_and_circles() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 1..=3u32 {
        let interval = quasi_interval(n)?;
        let i1 = interval.milestone(MILESTONE_I1_END).expect("junction milestone");
        let i2 = interval.milestone(MILESTONE_I2_END).expect("junction milestone");
        let mirrored = interval.steps()[i2..] == mirror_walk(&interval.steps()[..i1])[..];
        let nn = i64::from(n);
        let final_ok = *interval.end() == Configuration::new(0..=2 * nn, 2 * nn);
        let circle = quasi_circle(n)?;
        let closed = circle.is_closed() && circle.start() == circle.end();
        let p = probes(u64::from(n))?;
        let radius = 5 * u64::from(n) + 4;
        let ispec = PathSpec::Interval(n);
        let dx = probe_distance(&p.x_n, ispec, radius)?;
        let dy = probe_distance(&p.y_n, ispec, radius)?;
        let probes_pair = [("x_n", &p.x_n), ("y_n", &p.y_n)];
        let sep_i = separation_report(Obstacle::Path(ispec), 0, radius, probes_pair)?.verdict;
        let sep_c = separation_report(Obstacle::Path(PathSpec::Circle(n)), 0, radius, probes_pair)?.verdict;
        let pass = interval.is_simple()
            && mirrored
            && final_ok
            && closed
            && circle.is_simple()
            && dx >= u64::from(n)
            && dy >= u64::from(n)
            && sep_i == Verdict::SeparatedInBall
            && sep_c == Verdict::SeparatedInBall;
        ok &= pass;
        notes.push(format!(
            "n={n}: I simple={} mirror={mirrored} end={final_ok}; C closed={closed} simple={}; d(x,I)={dx} d(y,I)={dy}; I {sep_i:?}, C {sep_c:?}",
            interval.is_simple(),
            circle.is_simple()
        ));
    }
    Ok((ok, notes.join("; ")))
}

fn circle_family() -> Outcome {
    let small = circle_family_distortion(&[1, 2, 3], 4)?;
    let large = circle_family_distortion(&[1, 2, 3, 4, 5], 4)?;
    let changed: Vec<usize> = (0..=4).filter(|&m| small.h_emp[m] != large.h_emp[m]).collect();
    let monotone = large.h_emp.windows(2).all(|w| w[0] <= w[1]);
    Ok((
        changed.is_empty() && monotone,
        format!(
            "h_emp over 1..=3 = {:?}, over 1..=5 = {:?} (attained by n = {:?}); changed at M = {changed:?}",
            small.h_emp, large.h_emp, large.attaining
        ),
    ))
}

fn codec_and_determinism() -> Outcome {
    let b = ball(&Configuration::identity(), 6)?;
    let mut bad = 0;
    for v in b.members() {
        let text = codec::encode(v);
        if codec::decode(&text).ok().as_ref() != Some(v) || text.contains(' ') {
            bad += 1;
        }
    }
    let first = distortion_profile(PathSpec::HalfLine, 2000, 4)?.to_csv();
    let second = distortion_profile(PathSpec::HalfLine, 2000, 4)?.to_csv();
    let identical = first.as_bytes() == second.as_bytes();
    let distinct: HashSet<String> = b.members().map(codec::encode).collect();
    let canonical = distinct.len() == b.len();
    Ok((
        bad == 0 && identical && canonical,
        format!("{} configurations round-tripped, {bad} failures; profile CSV identical={identical}", b.len()),
    ))
}
