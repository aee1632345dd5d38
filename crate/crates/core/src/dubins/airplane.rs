use std::f64::consts::TAU;

use super::{advance_planar, dubins_2d_shortest, DubinsAirplanePath, SegmentKind, State};
use crate::VehicleModel;

// Bisection tolerance on the extra start-turn angle.
const ARC_TOLERANCE: f64 = 1e-9;

/// Dubins airplane connection using the ground climb limit of `model`.
pub fn dubins_airplane_connect(start: &State, goal: &State, model: &VehicleModel) -> DubinsAirplanePath {
    connect_with_climb_limit(start, goal, model.turn_radius(), model.gamma_ground_max)
}

/// Dubins airplane connection for an explicit turn radius and climb limit.
///
/// Low altitude changes fly the planar shortest path at `atan(Δz / L)`.
/// Otherwise the first turn of the planar word is extended by `k` full
/// loops and an extra arc `φ`, with the remainder re-planned from the
/// rotated pose, so that the horizontal length satisfies
/// `|Δz| = L · tan(γ_max)`.
pub fn connect_with_climb_limit(
    start: &State,
    goal: &State,
    turn_radius: f64,
    gamma_max: f64,
) -> DubinsAirplanePath {
    assert!(turn_radius > 0.0 && gamma_max > 0.0);
    let dz = goal.z - start.z;
    let planar = dubins_2d_shortest(start, goal, turn_radius);
    let l2d = planar.length();
    let tan_max = gamma_max.tan();

    let pieces_of = |p: &super::PlanarPath| -> Vec<(SegmentKind, f64)> {
        p.word.kinds().into_iter().zip(p.lengths).collect()
    };

    if dz.abs() <= l2d * tan_max {
        let gamma = if l2d > 0.0 { (dz / l2d).atan() } else { 0.0 };
        return DubinsAirplanePath::from_pieces(start, planar.word, &pieces_of(&planar), gamma, turn_radius);
    }

    let required = dz.abs() / tan_max;
    let loop_len = TAU * turn_radius;
    let loops = ((required - l2d) / loop_len).floor().max(0.0);
    let base = loops * loop_len;
    let turn = planar.word.kinds()[0];

    let extended = |phi: f64| {
        let rotated = advance_planar(start, turn, turn_radius * phi, turn_radius);
        let rest = dubins_2d_shortest(&rotated, goal, turn_radius);
        (base + turn_radius * phi + rest.length(), rest)
    };

    let (mut lo, mut hi) = (0.0, TAU);
    let (mut total, mut rest) = extended(0.0);
    if total < required {
        (total, rest) = extended(hi);
        while hi - lo > ARC_TOLERANCE {
            let mid = 0.5 * (lo + hi);
            let (t, r) = extended(mid);
            if t < required {
                lo = mid;
            } else {
                hi = mid;
                total = t;
                rest = r;
            }
        }
    } else {
        hi = 0.0;
    }

    let mut pieces = Vec::with_capacity(4);
    let extra = base + turn_radius * hi;
    if extra > 0.0 {
        pieces.push((turn, extra));
    }
    pieces.extend(pieces_of(&rest));
    let gamma = dz.signum() * (dz.abs() / total).atan();
    DubinsAirplanePath::from_pieces(start, rest.word, &pieces, gamma, turn_radius)
}
