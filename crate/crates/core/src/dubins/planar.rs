use std::f64::consts::TAU;

use super::{wrap_angle, State, WordClass};

/// Planar Dubins path: a word and its three segment lengths in meters
/// (arc, straight-or-arc, arc).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarPath {
    pub word: WordClass,
    pub lengths: [f64; 3],
    pub turn_radius: f64,
}

impl PlanarPath {
    pub fn length(&self) -> f64 {
        self.lengths.iter().sum()
    }
}

// Angles within this distance of a full turn are treated as zero.
const FULL_TURN_SNAP: f64 = 1e-10;

fn snap(angle: f64) -> f64 {
    let a = wrap_angle(angle);
    if TAU - a < FULL_TURN_SNAP {
        0.0
    } else {
        a
    }
}

/// Start/goal configuration normalized to unit turning radius with the goal
/// on the positive x axis.
struct Normalized {
    d: f64,
    alpha: f64,
    beta: f64,
}

impl Normalized {
    fn new(start: &State, goal: &State, radius: f64) -> Self {
        let dx = goal.x - start.x;
        let dy = goal.y - start.y;
        let d = dx.hypot(dy) / radius;
        let phi = if d > 0.0 { dy.atan2(dx) } else { 0.0 };
        Normalized {
            d,
            alpha: wrap_angle(start.heading - phi),
            beta: wrap_angle(goal.heading - phi),
        }
    }
}

/// Closed-form (t, p, q) for one word in unit-radius coordinates.
fn word_params(word: WordClass, n: &Normalized) -> Option<[f64; 3]> {
    let (d, a, b) = (n.d, n.alpha, n.beta);
    let (sa, ca) = a.sin_cos();
    let (sb, cb) = b.sin_cos();
    let cab = (a - b).cos();
    match word {
        WordClass::LSL => {
            let p_sq = 2.0 + d * d - 2.0 * cab + 2.0 * d * (sa - sb);
            if p_sq < 0.0 {
                return None;
            }
            let tmp = (cb - ca).atan2(d + sa - sb);
            Some([snap(tmp - a), p_sq.sqrt(), snap(b - tmp)])
        }
        WordClass::RSR => {
            let p_sq = 2.0 + d * d - 2.0 * cab + 2.0 * d * (sb - sa);
            if p_sq < 0.0 {
                return None;
            }
            let tmp = (ca - cb).atan2(d - sa + sb);
            Some([snap(a - tmp), p_sq.sqrt(), snap(tmp - b)])
        }
        WordClass::LSR => {
            let p_sq = -2.0 + d * d + 2.0 * cab + 2.0 * d * (sa + sb);
            if p_sq < 0.0 {
                return None;
            }
            let p = p_sq.sqrt();
            let tmp = (-ca - cb).atan2(d + sa + sb) - (-2.0f64).atan2(p);
            Some([snap(tmp - a), p, snap(tmp - b)])
        }
        WordClass::RSL => {
            let p_sq = -2.0 + d * d + 2.0 * cab - 2.0 * d * (sa + sb);
            if p_sq < 0.0 {
                return None;
            }
            let p = p_sq.sqrt();
            let tmp = (ca + cb).atan2(d - sa - sb) - 2.0f64.atan2(p);
            Some([snap(a - tmp), p, snap(b - tmp)])
        }
        WordClass::RLR => {
            let c = (6.0 - d * d + 2.0 * cab + 2.0 * d * (sa - sb)) / 8.0;
            if c.abs() > 1.0 {
                return None;
            }
            let phi = (ca - cb).atan2(d - sa + sb);
            let p = snap(TAU - c.acos());
            let t = snap(a - phi + p / 2.0);
            Some([t, p, snap(a - b - t + p)])
        }
        WordClass::LRL => {
            let c = (6.0 - d * d + 2.0 * cab + 2.0 * d * (sb - sa)) / 8.0;
            if c.abs() > 1.0 {
                return None;
            }
            let phi = (ca - cb).atan2(d + sa - sb);
            let p = snap(TAU - c.acos());
            let t = snap(-a - phi + p / 2.0);
            Some([t, p, snap(b - a - t + p)])
        }
    }
}

/// Path of one fixed word, if that word connects the two poses.
pub fn dubins_2d_word(start: &State, goal: &State, radius: f64, word: WordClass) -> Option<PlanarPath> {
    let n = Normalized::new(start, goal, radius);
    word_params(word, &n).map(|[t, p, q]| PlanarPath {
        word,
        lengths: [t * radius, p * radius, q * radius],
        turn_radius: radius,
    })
}

/// Shortest planar Dubins path between the horizontal projections of two
/// states.
///
/// All six words are evaluated in closed form and the shortest is returned;
/// this is the exhaustive form of word-class selection and is never
/// suboptimal. Ties are broken by the order of [`WordClass::ALL`].
pub fn dubins_2d_shortest(start: &State, goal: &State, radius: f64) -> PlanarPath {
    assert!(radius > 0.0, "turn radius must be positive");
    let n = Normalized::new(start, goal, radius);
    let mut best: Option<(WordClass, [f64; 3], f64)> = None;
    for word in WordClass::ALL {
        if let Some(params) = word_params(word, &n) {
            let len = params[0] + params[1] + params[2];
            if best.map_or(true, |(_, _, l)| len < l) {
                best = Some((word, params, len));
            }
        }
    }
    // LSL and RSR always exist for finite input, so `best` is set.
    let (word, [t, p, q], _) = best.expect("a Dubins path always exists");
    PlanarPath {
        word,
        lengths: [t * radius, p * radius, q * radius],
        turn_radius: radius,
    }
}
