//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

/// Shortest planar Dubins length found by parameter search.
///
/// For every word the first arc angle `a` is scanned on a dense grid and
/// refined by bisection wherever the closing condition changes sign:
/// for CSC words the straight line leaving the first arc must be tangent to
/// the goal circle, for CCC words the middle circle must touch the goal
/// circle (centre distance `2r`). The remaining lengths follow from the
/// geometry. No closed-form word formula is used.
pub fn brute_force_dubins(start: (f64, f64, f64), goal: (f64, f64, f64), r: f64) -> f64 {
    const GRID: usize = 4000;
    let words: [[char; 3]; 6] = [
        ['L', 'S', 'L'],
        ['R', 'S', 'R'],
        ['L', 'S', 'R'],
        ['R', 'S', 'L'],
        ['R', 'L', 'R'],
        ['L', 'R', 'L'],
    ];
    let mut best = f64::INFINITY;
    for w in words {
        let residual = |a: f64| closing_residual(start, goal, r, w, a);
        let mut prev_a = 0.0;
        let mut prev = residual(0.0);
        if prev == 0.0 {
            best = best.min(completion(start, goal, r, w, 0.0).unwrap_or(f64::INFINITY));
        }
        for i in 1..=GRID {
            let a = TAU * i as f64 / GRID as f64;
            let cur = residual(a);
            if prev.is_finite() && cur.is_finite() && prev.signum() != cur.signum() && (prev - cur).abs() < 4.0 * r {
                let (mut lo, mut hi, mut flo) = (prev_a, a, prev);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    let fm = residual(mid);
                    if fm.signum() == flo.signum() {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                    if hi - lo < 1e-15 {
                        break;
                    }
                }
                if let Some(len) = completion(start, goal, r, w, 0.5 * (lo + hi)) {
                    best = best.min(len);
                }
            }
            prev_a = a;
            prev = cur;
        }
    }
    best
}

fn turn(kind: char) -> f64 {
    match kind {
        'L' => 1.0,
        'R' => -1.0,
        _ => 0.0,
    }
}

/// Pose after turning by arc angle `a` (radians, positive) in direction `kind`.
fn arc(p: (f64, f64, f64), r: f64, kind: char, a: f64) -> (f64, f64, f64) {
    let s = turn(kind);
    let (cx, cy) = (p.0 - s * r * p.2.sin(), p.1 + s * r * p.2.cos());
    let h = p.2 + s * a;
    (cx + s * r * h.sin(), cy - s * r * h.cos(), h)
}

fn center(p: (f64, f64, f64), r: f64, kind: char) -> (f64, f64) {
    let s = turn(kind);
    (p.0 - s * r * p.2.sin(), p.1 + s * r * p.2.cos())
}

/// Positive turning angle from heading `from` to heading `to` in direction `kind`.
fn turn_angle(from: f64, to: f64, kind: char) -> f64 {
    (turn(kind) * (to - from)).rem_euclid(TAU)
}

fn closing_residual(start: (f64, f64, f64), goal: (f64, f64, f64), r: f64, w: [char; 3], a: f64) -> f64 {
    let p1 = arc(start, r, w[0], a);
    let c3 = center(goal, r, w[2]);
    if w[1] == 'S' {
        // the goal circle centre must lie on the line offset by r to the turn side
        let (dx, dy) = (p1.2.cos(), p1.2.sin());
        let s = turn(w[2]);
        let (nx, ny) = (-s * dy, s * dx);
        let (vx, vy) = (c3.0 - p1.0 - r * nx, c3.1 - p1.1 - r * ny);
        dx * vy - dy * vx
    } else {
        let c2 = center(p1, r, w[1]);
        (c2.0 - c3.0).hypot(c2.1 - c3.1) - 2.0 * r
    }
}

fn completion(start: (f64, f64, f64), goal: (f64, f64, f64), r: f64, w: [char; 3], a: f64) -> Option<f64> {
    let p1 = arc(start, r, w[0], a);
    let c3 = center(goal, r, w[2]);
    if w[1] == 'S' {
        let (dx, dy) = (p1.2.cos(), p1.2.sin());
        let s = turn(w[2]);
        let (nx, ny) = (-s * dy, s * dx);
        let t = dx * (c3.0 - p1.0 - r * nx) + dy * (c3.1 - p1.1 - r * ny);
        if t < -1e-9 {
            return None;
        }
        let c = turn_angle(p1.2, goal.2, w[2]);
        Some(r * a + t.max(0.0) + r * c)
    } else {
        let c2 = center(p1, r, w[1]);
        let m = (0.5 * (c2.0 + c3.0), 0.5 * (c2.1 + c3.1));
        // heading on circle c2 at point m for a turn of direction w[1]
        let radial = (m.1 - c2.1).atan2(m.0 - c2.0);
        let hm = radial + turn(w[1]) * PI / 2.0;
        let b = turn_angle(p1.2, hm, w[1]);
        let c = turn_angle(hm, goal.2, w[2]);
        Some(r * (a + b + c))
    }
}

/// Splitmix-style generator so test instances do not depend on the
/// planner's RNG stack.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [lo, hi).
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + (hi - lo) * u
    }
}

/// Sample median.
pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.total_cmp(b));
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}
