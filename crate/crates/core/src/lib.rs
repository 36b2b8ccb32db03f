//! The lamplighter group `Z/2 wr Z`, its word metric, and explicit paths in
//! its Cayley graph (a half-line, a line, intervals and circles built from a
//! binary counter) together with the tools that check their coarse geometry:
//! metric balls, distortion profiles and separation reports.

pub mod ball;
pub mod codec;
pub mod distortion;
pub mod error;
pub mod group;
pub mod metric;
pub mod paths;
pub mod separation;
pub mod walkfile;
pub mod verify;
pub mod walks;

pub use error::{Error, Result};
pub use group::{apply_step, compose, dyadic_views, invert, Configuration, GeneratorStep, Position};
pub use metric::{bfs_distance, norm, word_distance, CappedDistance};
pub use walks::{
    half_quasi_line, mirror_walk, probes, quasi_circle, quasi_interval, quasi_line, stage_config,
    stage_walk, trailing_ones, ProbeSet, Walk,
};
pub use ball::{ball, Ball};
pub use paths::{distance_to_path, path_in_ball, PathSpec};
pub use separation::{components_after_removal, separation_report, Obstacle, SeparationReport, Verdict};
pub use distortion::{circle_family_distortion, distortion_profile, DistortionProfile, FamilyProfile};
