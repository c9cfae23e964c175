//! Corridor geometry, ultrasonic ranging and Free-Front evidence.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_6, PI};
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::paralogic::Evidence;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_angle(angle: f64) -> Self {
        Self::new(angle.cos(), angle.sin())
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Reflection across the x axis.
    pub fn mirrored(self) -> Self {
        Self::new(self.x, -self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from(v: [f64; 2]) -> Self {
        Self::new(v[0], v[1])
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Segment {
    pub a: Vec2,
    pub b: Vec2,
}

impl Segment {
    pub fn new(a: Vec2, b: Vec2) -> Self {
        Self { a, b }
    }

    /// Ray parameter of the first crossing, if any.
    fn ray_hit(&self, origin: Vec2, dir: Vec2) -> Option<f64> {
        let edge = self.b - self.a;
        let denom = dir.cross(edge);
        if denom == 0.0 {
            return None;
        }
        let rel = self.a - origin;
        let t = rel.cross(edge) / denom;
        let u = rel.cross(dir) / denom;
        (t >= 0.0 && (0.0..=1.0).contains(&u)).then_some(t)
    }

    pub fn distance_to(&self, p: Vec2) -> f64 {
        let edge = self.b - self.a;
        let len2 = edge.dot(edge);
        let t = if len2 == 0.0 {
            0.0
        } else {
            ((p - self.a).dot(edge) / len2).clamp(0.0, 1.0)
        };
        (p - (self.a + edge * t)).norm()
    }
}

/// Axis-aligned box obstacle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rect {
    pub min: Vec2,
    pub max: Vec2,
}

impl Rect {
    pub fn new(min: Vec2, max: Vec2) -> Self {
        Self { min, max }
    }

    pub fn contains(&self, p: Vec2) -> bool {
        (self.min.x..=self.max.x).contains(&p.x) && (self.min.y..=self.max.y).contains(&p.y)
    }

    /// Slab test; a ray starting inside hits at 0.
    fn ray_hit(&self, origin: Vec2, dir: Vec2) -> Option<f64> {
        if self.contains(origin) {
            return Some(0.0);
        }
        let mut t_near = f64::NEG_INFINITY;
        let mut t_far = f64::INFINITY;
        for (o, d, lo, hi) in [
            (origin.x, dir.x, self.min.x, self.max.x),
            (origin.y, dir.y, self.min.y, self.max.y),
        ] {
            if d == 0.0 {
                if o < lo || o > hi {
                    return None;
                }
            } else {
                let t1 = (lo - o) / d;
                let t2 = (hi - o) / d;
                t_near = t_near.max(t1.min(t2));
                t_far = t_far.min(t1.max(t2));
            }
        }
        (t_near <= t_far && t_near >= 0.0).then_some(t_near)
    }

    pub fn distance_to(&self, p: Vec2) -> f64 {
        let dx = (self.min.x - p.x).max(0.0).max(p.x - self.max.x);
        let dy = (self.min.y - p.y).max(0.0).max(p.y - self.max.y);
        dx.hypot(dy)
    }

    pub fn mirrored(&self) -> Self {
        Self::new(
            Vec2::new(self.min.x, -self.max.y),
            Vec2::new(self.max.x, -self.min.y),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorridorWorld {
    pub walls: Vec<Segment>,
    #[serde(default)]
    pub obstacles: Vec<Rect>,
    /// Reaching `x >= goal_line` completes the corridor.
    pub goal_line: f64,
}

impl CorridorWorld {
    /// Open-ended straight corridor along +x, centered on `y = 0`, with walls
    /// from `x = -1` to `length + 1` and the goal at `x = length`.
    pub fn straight(length: f64, width: f64) -> Self {
        let h = width / 2.0;
        Self {
            walls: vec![
                Segment::new(Vec2::new(-1.0, h), Vec2::new(length + 1.0, h)),
                Segment::new(Vec2::new(-1.0, -h), Vec2::new(length + 1.0, -h)),
            ],
            obstacles: Vec::new(),
            goal_line: length,
        }
    }

    pub fn with_obstacle(mut self, r: Rect) -> Self {
        self.obstacles.push(r);
        self
    }

    pub fn with_wall(mut self, s: Segment) -> Self {
        self.walls.push(s);
        self
    }

    /// Reflection across the corridor axis `y = 0`.
    pub fn mirrored(&self) -> Self {
        Self {
            walls: self
                .walls
                .iter()
                .map(|s| Segment::new(s.a.mirrored(), s.b.mirrored()))
                .collect(),
            obstacles: self.obstacles.iter().map(Rect::mirrored).collect(),
            goal_line: self.goal_line,
        }
    }

    /// Distance from a point to the nearest wall or obstacle.
    pub fn clearance(&self, p: Vec2) -> f64 {
        let walls = self.walls.iter().map(|s| s.distance_to(p));
        let boxes = self.obstacles.iter().map(|r| r.distance_to(p));
        walls.chain(boxes).fold(f64::INFINITY, f64::min)
    }

    pub fn violations(&self, start: Option<&RobotPose>) -> Vec<String> {
        let mut out = Vec::new();
        if self.walls.len() < 2 {
            out.push(format!(
                "world needs at least 2 wall segments, got {}",
                self.walls.len()
            ));
        }
        for (i, s) in self.walls.iter().enumerate() {
            if !(s.a.is_finite() && s.b.is_finite()) {
                out.push(format!("wall {i} has non-finite endpoints"));
            }
        }
        for (i, r) in self.obstacles.iter().enumerate() {
            if !(r.min.is_finite() && r.max.is_finite()) || r.min.x > r.max.x || r.min.y > r.max.y {
                out.push(format!("obstacle {i} must have finite min <= max corners"));
            }
        }
        if !self.goal_line.is_finite() {
            out.push("goal_line must be finite".into());
        } else if let Some(p) = start {
            if self.goal_line <= p.x {
                out.push(format!(
                    "goal_line {} must lie beyond the start x = {}",
                    self.goal_line, p.x
                ));
            }
        }
        out
    }
}

/// Distance along the ray to the nearest wall or box, capped at `max_range`.
pub fn raycast(w: &CorridorWorld, origin: Vec2, direction: Vec2, max_range: f64) -> f64 {
    let walls = w.walls.iter().filter_map(|s| s.ray_hit(origin, direction));
    let boxes = w
        .obstacles
        .iter()
        .filter_map(|r| r.ray_hit(origin, direction));
    walls.chain(boxes).fold(max_range, f64::min)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RobotPose {
    pub x: f64,
    pub y: f64,
    /// Counterclockwise from +x (rad).
    pub heading: f64,
}

impl RobotPose {
    pub fn new(x: f64, y: f64, heading: f64) -> Self {
        Self { x, y, heading }
    }

    pub fn position(&self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }

    pub fn mirrored(&self) -> Self {
        Self::new(self.x, -self.y, -self.heading)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.heading.is_finite()
    }
}

/// Circular robot footprint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RobotBody {
    pub radius: f64,
}

impl Default for RobotBody {
    fn default() -> Self {
        Self { radius: 0.15 }
    }
}

impl RobotBody {
    /// Gap between the footprint and the nearest geometry; `<= 0` is contact.
    pub fn clearance(&self, w: &CorridorWorld, p: &RobotPose) -> f64 {
        w.clearance(p.position()) - self.radius
    }

    pub fn collides(&self, w: &CorridorWorld, p: &RobotPose) -> bool {
        self.clearance(w, p) <= 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UltrasonicSensor {
    /// Relative to the robot heading (rad).
    pub bearing: f64,
    /// Mount distance from the robot center along the bearing (m).
    pub offset: f64,
    pub max_range: f64,
}

/// Ranging array in a fixed order: front, front-left, front-right, left,
/// right, rear.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UltrasonicArray {
    pub sensors: [UltrasonicSensor; 6],
}

pub const FRONT: usize = 0;
pub const FRONT_LEFT: usize = 1;
pub const FRONT_RIGHT: usize = 2;
pub const LEFT: usize = 3;
pub const RIGHT: usize = 4;
pub const REAR: usize = 5;

pub type Distances = [f64; 6];

impl Default for UltrasonicArray {
    fn default() -> Self {
        let s = |bearing| UltrasonicSensor {
            bearing,
            offset: 0.0,
            max_range: 3.0,
        };
        Self {
            sensors: [
                s(0.0),
                s(FRAC_PI_6),
                s(-FRAC_PI_6),
                s(FRAC_PI_2),
                s(-FRAC_PI_2),
                s(PI),
            ],
        }
    }
}

impl UltrasonicArray {
    /// The array reflected across the robot's longitudinal axis: bearings
    /// negate and the left/right pairs trade places.
    pub fn mirrored(&self) -> Self {
        let mut sensors = self.sensors;
        sensors.swap(FRONT_LEFT, FRONT_RIGHT);
        sensors.swap(LEFT, RIGHT);
        for s in sensors.iter_mut() {
            s.bearing = -s.bearing;
        }
        Self { sensors }
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, s) in self.sensors.iter().enumerate() {
            if !(s.max_range > 0.0 && s.max_range.is_finite()) {
                out.push(format!(
                    "sensor {} max_range = {} must be positive",
                    i + 1,
                    s.max_range
                ));
            }
            if !(s.bearing.is_finite() && s.offset.is_finite() && s.offset >= 0.0) {
                out.push(format!(
                    "sensor {} needs a finite bearing and non-negative offset",
                    i + 1
                ));
            }
        }
        out
    }
}

/// Ranges of all six sensors from the given pose.
pub fn sense(w: &CorridorWorld, p: &RobotPose, a: &UltrasonicArray) -> Distances {
    a.sensors.map(|s| {
        let dir = Vec2::from_angle(p.heading + s.bearing);
        raycast(w, p.position() + dir * s.offset, dir, s.max_range)
    })
}

/// Range-to-annotation map for the Free-Front proposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EvidenceMapping {
    /// Front range that counts as fully free (m).
    pub d_free: f64,
    /// Range below which a reading counts as blocking (m).
    pub d_block: f64,
}

impl Default for EvidenceMapping {
    fn default() -> Self {
        Self {
            d_free: 2.0,
            d_block: 0.25,
        }
    }
}

impl EvidenceMapping {
    pub fn violations(&self, a: &UltrasonicArray) -> Vec<String> {
        let mut out = Vec::new();
        if !(self.d_block > 0.0 && self.d_block < self.d_free) {
            out.push(format!(
                "evidence mapping needs 0 < d_block ({}) < d_free ({})",
                self.d_block, self.d_free
            ));
        }
        for i in [FRONT, FRONT_LEFT, FRONT_RIGHT] {
            let range = a.sensors[i].max_range;
            if self.d_free > range {
                out.push(format!(
                    "d_free = {} exceeds max_range {} of sensor {}",
                    self.d_free,
                    range,
                    i + 1
                ));
            }
        }
        out
    }
}

/// Favorable evidence from the front range, contrary evidence from the
/// nearer front diagonal. The two sources are independent, so every corner
/// of the lattice is reachable.
pub fn evidence_from_distances(
    d: &Distances,
    m: &EvidenceMapping,
    a: &UltrasonicArray,
) -> Evidence {
    let reading = |i: usize| d[i].clamp(0.0, a.sensors[i].max_range);
    let mu = (reading(FRONT) / m.d_free).clamp(0.0, 1.0);
    let nearest_diagonal = reading(FRONT_LEFT).min(reading(FRONT_RIGHT));
    let lambda = (1.0 - nearest_diagonal / m.d_free).clamp(0.0, 1.0);
    Evidence::new(mu, lambda).expect("clamped degrees lie in [0, 1]")
}

/// Positive when the left side is more open than the right (m).
pub fn side_openness(d: &Distances) -> f64 {
    (d[LEFT] + d[FRONT_LEFT]) / 2.0 - (d[RIGHT] + d[FRONT_RIGHT]) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paralogic::{classify, AnalysisThresholds, LogicalState};
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    fn open_plane() -> CorridorWorld {
        CorridorWorld {
            walls: vec![],
            obstacles: vec![],
            goal_line: 100.0,
        }
    }

    #[test]
    fn raycast_perpendicular_wall() {
        let w = open_plane().with_wall(Segment::new(Vec2::new(2.0, -5.0), Vec2::new(2.0, 5.0)));
        assert_eq!(
            raycast(&w, Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), 3.0),
            2.0
        );
        // facing away
        assert_eq!(
            raycast(&w, Vec2::new(0.0, 0.0), Vec2::new(-1.0, 0.0), 3.0),
            3.0
        );
    }

    #[test]
    fn raycast_caps_at_max_range() {
        let w = CorridorWorld::straight(20.0, 10.0);
        assert_eq!(
            raycast(&w, Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), 3.0),
            3.0
        );
    }

    #[test]
    fn raycast_oblique_wall() {
        let w = open_plane().with_wall(Segment::new(Vec2::new(-5.0, 1.0), Vec2::new(5.0, 1.0)));
        let d = raycast(&w, Vec2::new(0.0, 0.0), Vec2::from_angle(FRAC_PI_4), 3.0);
        assert_relative_eq!(d, SQRT_2, epsilon = 1e-12);
    }

    #[test]
    fn raycast_boxes() {
        let w = open_plane().with_obstacle(Rect::new(Vec2::new(1.0, -0.5), Vec2::new(2.0, 0.5)));
        assert_eq!(
            raycast(&w, Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), 3.0),
            1.0
        );
        assert_eq!(
            raycast(&w, Vec2::new(0.0, 0.0), Vec2::new(0.0, 1.0), 3.0),
            3.0
        );
        assert_eq!(
            raycast(&w, Vec2::new(1.5, 0.0), Vec2::new(0.0, 1.0), 3.0),
            0.0
        );
        assert_eq!(
            raycast(&w, Vec2::new(3.0, 0.0), Vec2::new(-1.0, 0.0), 3.0),
            1.0
        );
        // passes above the box
        assert_eq!(
            raycast(&w, Vec2::new(0.0, 0.6), Vec2::new(1.0, 0.0), 3.0),
            3.0
        );
    }

    #[test]
    fn sense_centered_in_corridor() {
        let w = CorridorWorld::straight(100.0, 2.0);
        let d = sense(
            &w,
            &RobotPose::new(10.0, 0.0, 0.0),
            &UltrasonicArray::default(),
        );
        assert_relative_eq!(d[LEFT], 1.0, epsilon = 1e-12);
        assert_relative_eq!(d[RIGHT], 1.0, epsilon = 1e-12);
        assert_eq!(d[FRONT], 3.0);
        assert_eq!(d[REAR], 3.0);
        assert_relative_eq!(d[FRONT_LEFT], 2.0, epsilon = 1e-12);
    }

    #[test]
    fn sense_off_center() {
        let w = CorridorWorld::straight(100.0, 2.0);
        let d = sense(
            &w,
            &RobotPose::new(10.0, -0.5, 0.0),
            &UltrasonicArray::default(),
        );
        assert_relative_eq!(d[RIGHT], 0.5, epsilon = 1e-12);
        assert_relative_eq!(d[LEFT], 1.5, epsilon = 1e-12);
    }

    #[test]
    fn sense_uses_mount_offset() {
        let w = CorridorWorld::straight(100.0, 2.0);
        let mut a = UltrasonicArray::default();
        a.sensors[LEFT].offset = 0.1;
        let d = sense(&w, &RobotPose::new(10.0, 0.0, 0.0), &a);
        assert_relative_eq!(d[LEFT], 0.9, epsilon = 1e-12);
    }

    #[test]
    fn evidence_examples() {
        let a = UltrasonicArray::default();
        let m = EvidenceMapping::default();
        let t = AnalysisThresholds::default();

        let e = evidence_from_distances(&[3.0; 6], &m, &a);
        assert_eq!((e.mu(), e.lambda()), (1.0, 0.0));
        assert_eq!(classify(&e, &t).state, LogicalState::True);

        let e = evidence_from_distances(&[0.0, 0.0, 0.0, 3.0, 3.0, 3.0], &m, &a);
        assert_eq!((e.mu(), e.lambda()), (0.0, 1.0));
        assert_eq!(classify(&e, &t).state, LogicalState::False);

        let e = evidence_from_distances(&[2.0, 0.2, 0.2, 3.0, 3.0, 3.0], &m, &a);
        assert_eq!(e.mu(), 1.0);
        assert_relative_eq!(e.lambda(), 0.9, epsilon = 1e-12);
        let an = classify(&e, &t);
        assert_relative_eq!(an.gin, 0.9, epsilon = 1e-12);
        assert_eq!(an.state, LogicalState::Inconsistent);
    }

    #[test]
    fn openness_examples() {
        assert_eq!(side_openness(&[3.0, 1.0, 1.0, 0.7, 0.7, 3.0]), 0.0);
        assert_eq!(side_openness(&[3.0, 3.0, 0.5, 3.0, 0.5, 3.0]), 2.5);
        assert_eq!(side_openness(&[3.0, 0.5, 3.0, 0.5, 3.0, 3.0]), -2.5);
    }

    #[test]
    fn mapping_validation() {
        let a = UltrasonicArray::default();
        assert!(EvidenceMapping::default().violations(&a).is_empty());
        let bad = EvidenceMapping {
            d_free: 4.0,
            d_block: 5.0,
        };
        assert_eq!(bad.violations(&a).len(), 4);
    }

    #[test]
    fn body_collision() {
        let w = CorridorWorld::straight(10.0, 1.0);
        let body = RobotBody::default();
        assert!(!body.collides(&w, &RobotPose::new(1.0, 0.0, 0.0)));
        assert_relative_eq!(body.clearance(&w, &RobotPose::new(1.0, 0.0, 0.0)), 0.35);
        assert!(body.collides(&w, &RobotPose::new(1.0, 0.4, 0.0)));
    }

    fn rotate(v: Vec2, c: Vec2, angle: f64) -> Vec2 {
        let (s, k) = angle.sin_cos();
        let r = v - c;
        Vec2::new(r.x * k - r.y * s, r.x * s + r.y * k) + c
    }

    fn sample_world() -> CorridorWorld {
        CorridorWorld::straight(10.0, 1.6)
            .with_obstacle(Rect::new(Vec2::new(3.0, 0.1), Vec2::new(3.5, 0.8)))
            .with_wall(Segment::new(Vec2::new(6.0, -0.8), Vec2::new(6.5, 0.8)))
    }

    proptest! {
        #[test]
        fn raycast_rigid_motion_invariant(
            ox in 0.0f64..9.0, oy in -0.7f64..0.7, dir in -PI..PI,
            tx in -5.0f64..5.0, ty in -5.0f64..5.0, rot in -PI..PI,
        ) {
            let w = sample_world();
            let origin = Vec2::new(ox, oy);
            let d0 = raycast(&w, origin, Vec2::from_angle(dir), 3.0);

            // boxes do not stay axis-aligned under rotation: use their edges
            let mut segs = w.walls.clone();
            for r in &w.obstacles {
                let c = [r.min, Vec2::new(r.max.x, r.min.y), r.max, Vec2::new(r.min.x, r.max.y)];
                for i in 0..4 {
                    segs.push(Segment::new(c[i], c[(i + 1) % 4]));
                }
            }
            let shift = Vec2::new(tx, ty);
            let pivot = Vec2::new(0.0, 0.0);
            let moved = CorridorWorld {
                walls: segs.iter().map(|s| Segment::new(rotate(s.a, pivot, rot) + shift, rotate(s.b, pivot, rot) + shift)).collect(),
                obstacles: vec![],
                goal_line: 0.0,
            };
            prop_assume!(!w.obstacles.iter().any(|r| r.contains(origin)));
            let d1 = raycast(&moved, rotate(origin, pivot, rot) + shift, Vec2::from_angle(dir + rot), 3.0);
            prop_assert!((d0 - d1).abs() <= 1e-9, "{} vs {}", d0, d1);
        }

        #[test]
        fn sensed_ranges_in_bounds(x in 0.0f64..9.0, y in -0.7f64..0.7, h in -PI..PI) {
            let a = UltrasonicArray::default();
            for d in sense(&sample_world(), &RobotPose::new(x, y, h), &a) {
                prop_assert!((0.0..=3.0).contains(&d));
            }
        }

        #[test]
        fn mirror_swaps_sides(x in 0.0f64..9.0, y in -0.7f64..0.7, h in -PI..PI) {
            let a = UltrasonicArray::default();
            let w = sample_world();
            let p = RobotPose::new(x, y, h);
            let d = sense(&w, &p, &a);
            let m = sense(&w.mirrored(), &p.mirrored(), &a.mirrored());
            prop_assert_eq!(m[FRONT], d[FRONT]);
            prop_assert_eq!(m[REAR], d[REAR]);
            prop_assert_eq!(m[FRONT_LEFT], d[FRONT_RIGHT]);
            prop_assert_eq!(m[FRONT_RIGHT], d[FRONT_LEFT]);
            prop_assert_eq!(m[LEFT], d[RIGHT]);
            prop_assert_eq!(m[RIGHT], d[LEFT]);
            prop_assert_eq!(side_openness(&m), -side_openness(&d));
        }

        #[test]
        fn evidence_is_monotone(
            front in 0.0f64..3.0, fl in 0.0f64..3.0, fr in 0.0f64..3.0, bump in 0.0f64..1.0,
        ) {
            let a = UltrasonicArray::default();
            let m = EvidenceMapping::default();
            let d = [front, fl, fr, 1.0, 1.0, 1.0];
            let base = evidence_from_distances(&d, &m, &a);
            let mut more_front = d;
            more_front[FRONT] = (front + bump).min(3.0);
            prop_assert!(evidence_from_distances(&more_front, &m, &a).mu() >= base.mu());
            for i in [FRONT_LEFT, FRONT_RIGHT] {
                let mut wider = d;
                wider[i] = (d[i] + bump).min(3.0);
                prop_assert!(evidence_from_distances(&wider, &m, &a).lambda() <= base.lambda());
            }
        }
    }
}
