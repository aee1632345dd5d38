//! Dubins car and Dubins airplane paths.
//!
//! Planar paths are the classic six-word Dubins set. The airplane extension
//! keeps the planar geometry and flies it at one constant ground flight path
//! angle; when the altitude change cannot be reached at the climb limit the
//! start turn is extended (by whole helix loops plus a partial arc) until the
//! horizontal length is long enough.

mod airplane;
mod planar;

use std::f64::consts::TAU;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Vec3;

pub use airplane::{connect_with_climb_limit, dubins_airplane_connect};
pub use planar::{dubins_2d_shortest, dubins_2d_word, PlanarPath};

/// Wraps an angle into `[0, 2π)`.
pub fn wrap_angle(angle: f64) -> f64 {
    let a = angle.rem_euclid(TAU);
    if a >= TAU {
        0.0
    } else {
        a
    }
}

/// Smallest absolute difference between two headings, in `[0, π]`.
pub fn heading_difference(a: f64, b: f64) -> f64 {
    let d = wrap_angle(a - b);
    d.min(TAU - d)
}

/// Vehicle configuration: world-frame position and ground-relative bearing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    /// Radians in `[0, 2π)`, measured counter-clockwise from the x axis.
    pub heading: f64,
}

impl State {
    pub fn new(x: f64, y: f64, z: f64, heading: f64) -> Self {
        State {
            x,
            y,
            z,
            heading: wrap_angle(heading),
        }
    }

    pub fn position(&self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite() && self.heading.is_finite()
    }

    /// Horizontal distance to `other`.
    pub fn planar_distance(&self, other: &State) -> f64 {
        (other.x - self.x).hypot(other.y - self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SegmentKind {
    Left,
    Right,
    Straight,
}

impl SegmentKind {
    /// +1 for left (counter-clockwise) turns, -1 for right turns, 0 for straight.
    pub fn turn_sign(self) -> f64 {
        match self {
            SegmentKind::Left => 1.0,
            SegmentKind::Right => -1.0,
            SegmentKind::Straight => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WordClass {
    LSL,
    RSR,
    LSR,
    RSL,
    RLR,
    LRL,
}

impl WordClass {
    pub const ALL: [WordClass; 6] = [
        WordClass::LSL,
        WordClass::RSR,
        WordClass::LSR,
        WordClass::RSL,
        WordClass::RLR,
        WordClass::LRL,
    ];

    pub fn kinds(self) -> [SegmentKind; 3] {
        use SegmentKind::{Left as L, Right as R, Straight as S};
        match self {
            WordClass::LSL => [L, S, L],
            WordClass::RSR => [R, S, R],
            WordClass::LSR => [L, S, R],
            WordClass::RSL => [R, S, L],
            WordClass::RLR => [R, L, R],
            WordClass::LRL => [L, R, L],
        }
    }
}

impl fmt::Display for WordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Moves a planar pose along a turn or straight of horizontal length `h`.
/// Altitude is left untouched.
pub(crate) fn advance_planar(start: &State, kind: SegmentKind, h: f64, radius: f64) -> State {
    let (x, y, th) = (start.x, start.y, start.heading);
    match kind {
        SegmentKind::Straight => State {
            x: x + h * th.cos(),
            y: y + h * th.sin(),
            z: start.z,
            heading: th,
        },
        SegmentKind::Left => {
            let th1 = th + h / radius;
            State::new(
                x + radius * (th1.sin() - th.sin()),
                y - radius * (th1.cos() - th.cos()),
                start.z,
                th1,
            )
        }
        SegmentKind::Right => {
            let th1 = th - h / radius;
            State::new(
                x - radius * (th1.sin() - th.sin()),
                y + radius * (th1.cos() - th.cos()),
                start.z,
                th1,
            )
        }
    }
}

/// One piece of a Dubins airplane path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub kind: SegmentKind,
    /// Length of the horizontal projection, in meters.
    pub horizontal_length: f64,
    /// Signed horizontal curvature (positive = left), 1/m.
    pub curvature: f64,
    /// Ground flight path angle, rad.
    pub gamma: f64,
    pub start: State,
}

impl Segment {
    /// 3D arc length of the segment.
    pub fn length(&self) -> f64 {
        self.horizontal_length / self.gamma.cos()
    }

    fn state_at_horizontal(&self, h: f64, radius: f64) -> State {
        let mut s = advance_planar(&self.start, self.kind, h, radius);
        s.z = self.start.z + h * self.gamma.tan();
        s
    }
}

/// Piecewise arc/line/helix path flown at a constant ground flight path angle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DubinsAirplanePath {
    segments: Vec<Segment>,
    word: WordClass,
    gamma: f64,
    turn_radius: f64,
    horizontal_length: f64,
}

/// A point along a path at arc length `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSample {
    pub s: f64,
    pub state: State,
    /// Unit tangent of the 3D path.
    pub tangent: Vec3,
    /// Signed horizontal curvature at `s`.
    pub curvature: f64,
}

impl DubinsAirplanePath {
    /// Chains segments of the given kinds and horizontal lengths from `start`.
    pub(crate) fn from_pieces(
        start: &State,
        word: WordClass,
        pieces: &[(SegmentKind, f64)],
        gamma: f64,
        turn_radius: f64,
    ) -> Self {
        let mut segments = Vec::with_capacity(pieces.len());
        let mut cursor = *start;
        let mut total = 0.0;
        for &(kind, h) in pieces {
            let seg = Segment {
                kind,
                horizontal_length: h,
                curvature: kind.turn_sign() / turn_radius,
                gamma,
                start: cursor,
            };
            cursor = seg.state_at_horizontal(h, turn_radius);
            total += h;
            segments.push(seg);
        }
        DubinsAirplanePath {
            segments,
            word,
            gamma,
            turn_radius,
            horizontal_length: total,
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn word(&self) -> WordClass {
        self.word
    }

    /// Ground flight path angle shared by all segments.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn turn_radius(&self) -> f64 {
        self.turn_radius
    }

    pub fn horizontal_length(&self) -> f64 {
        self.horizontal_length
    }

    /// Total 3D arc length `S`.
    pub fn length(&self) -> f64 {
        self.horizontal_length / self.gamma.cos()
    }

    pub fn start(&self) -> State {
        self.segments[0].start
    }

    pub fn end(&self) -> State {
        let last = self.segments.last().expect("path has segments");
        last.state_at_horizontal(last.horizontal_length, self.turn_radius)
    }

    /// Path point at 3D arc length `s`, clamped to `[0, S]`.
    pub fn sample_at(&self, s: f64) -> PathSample {
        let s = s.clamp(0.0, self.length());
        let mut h = s * self.gamma.cos();
        let n = self.segments.len();
        let mut idx = 0;
        while idx + 1 < n && h > self.segments[idx].horizontal_length {
            h -= self.segments[idx].horizontal_length;
            idx += 1;
        }
        let seg = &self.segments[idx];
        let h = h.min(seg.horizontal_length);
        let state = seg.state_at_horizontal(h, self.turn_radius);
        let (sg, cg) = self.gamma.sin_cos();
        PathSample {
            s,
            state,
            tangent: Vec3::new(cg * state.heading.cos(), cg * state.heading.sin(), sg),
            curvature: seg.curvature,
        }
    }

    /// Same geometry truncated at arc length `s`.
    pub fn truncated(&self, s: f64) -> DubinsAirplanePath {
        let mut h = s.clamp(0.0, self.length()) * self.gamma.cos();
        let mut segments = Vec::new();
        for seg in &self.segments {
            let take = h.min(seg.horizontal_length);
            segments.push(Segment {
                horizontal_length: take,
                ..*seg
            });
            h -= take;
            if h <= 0.0 {
                break;
            }
        }
        let horizontal_length = segments.iter().map(|s| s.horizontal_length).sum();
        DubinsAirplanePath {
            segments,
            horizontal_length,
            ..self.clone()
        }
    }
}

/// Samples a path at `s = 0, ds, 2ds, …` with the final sample exactly at `S`.
pub fn sample_path(path: &DubinsAirplanePath, ds: f64) -> Vec<PathSample> {
    assert!(ds > 0.0, "sample spacing must be positive");
    sample_offsets(path.length(), ds)
        .map(|s| path.sample_at(s))
        .collect()
}

/// Arc-length offsets `0, ds, 2ds, …, total`. Offsets are computed as `k * ds`
/// so that halving `ds` yields a superset of the original offsets.
pub(crate) fn sample_offsets(total: f64, ds: f64) -> impl Iterator<Item = f64> {
    let eps = 1e-9 * total.max(1.0);
    let mut k = 0u64;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let s = k as f64 * ds;
        k += 1;
        if s < total - eps {
            Some(s)
        } else {
            done = true;
            Some(total)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::VehicleModel;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn wrap_angle_range() {
        assert_eq!(wrap_angle(0.0), 0.0);
        assert_eq!(wrap_angle(TAU), 0.0);
        assert!(wrap_angle(-f64::from_bits(1)) < TAU);
        assert!((wrap_angle(-FRAC_PI_2) - 1.5 * PI).abs() < 1e-15);
        assert!((heading_difference(0.1, TAU - 0.1) - 0.2).abs() < 1e-12);
    }

    #[test]
    fn straight_path_samples() {
        let model = VehicleModel::default();
        let path = dubins_airplane_connect(
            &State::new(0.0, 0.0, 0.0, 0.0),
            &State::new(100.0, 0.0, 0.0, 0.0),
            &model,
        );
        let samples = sample_path(&path, 10.0);
        assert_eq!(samples.len(), 11);
        assert_eq!(samples.last().unwrap().s, path.length());
        for s in &samples {
            assert!((s.tangent - Vec3::new(1.0, 0.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn circle_tangents_rotate_quarter_turns() {
        let r = 50.0;
        let start = State::new(0.0, 0.0, 0.0, 0.0);
        let path = DubinsAirplanePath::from_pieces(
            &start,
            WordClass::LSL,
            &[(SegmentKind::Left, TAU * r)],
            0.0,
            r,
        );
        let samples = sample_path(&path, PI * r / 2.0);
        assert_eq!(samples.len(), 5);
        for (i, pair) in samples.windows(2).enumerate() {
            let a = pair[0].tangent;
            let b = pair[1].tangent;
            // b is a rotated by +90° about z
            let rotated = Vec3::new(-a.y, a.x, a.z);
            assert!((b - rotated).norm() < 1e-12, "step {i}");
        }
        // full circle returns to the start
        let end = path.end();
        assert!(end.planar_distance(&start) < 1e-9);
    }

    #[test]
    fn chord_sum_bounded_by_length() {
        let model = VehicleModel::default();
        let path = dubins_airplane_connect(
            &State::new(0.0, 0.0, 0.0, 0.3),
            &State::new(-120.0, 80.0, 40.0, 2.5),
            &model,
        );
        let mut prev_err = f64::INFINITY;
        for ds in [40.0, 10.0, 1.0, 0.1] {
            let samples = sample_path(&path, ds);
            let chords: f64 = samples
                .windows(2)
                .map(|w| (w[1].state.position() - w[0].state.position()).norm())
                .sum();
            assert!(chords <= path.length() + 1e-9);
            let err = path.length() - chords;
            assert!(err <= prev_err + 1e-12);
            prev_err = err;
        }
        assert!(prev_err < 1e-3);
    }

    #[test]
    fn zero_length_path_has_one_sample() {
        let model = VehicleModel::default();
        let s = State::new(1.0, 2.0, 3.0, 0.5);
        let path = dubins_airplane_connect(&s, &s, &model);
        assert_eq!(path.length(), 0.0);
        assert_eq!(sample_path(&path, 10.0).len(), 1);
    }

    #[test]
    fn truncated_path_prefix() {
        let model = VehicleModel::default();
        let path = dubins_airplane_connect(
            &State::new(0.0, 0.0, 0.0, 0.0),
            &State::new(300.0, 200.0, 30.0, 1.0),
            &model,
        );
        let cut = path.truncated(120.0);
        assert!((cut.length() - 120.0).abs() < 1e-9);
        let a = cut.end();
        let b = path.sample_at(120.0).state;
        assert!((a.position() - b.position()).norm() < 1e-9);
    }
}
