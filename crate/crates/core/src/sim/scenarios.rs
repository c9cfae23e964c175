//! Reference scenarios used by the tests and shipped as JSON files.

use crate::world::{CorridorWorld, Rect, RobotBody, RobotPose, Segment, Vec2};

use super::ScenarioConfig;

/// 20 m x 1.5 m corridor, robot centered and aligned.
pub fn straight_corridor() -> ScenarioConfig {
    ScenarioConfig::new(
        CorridorWorld::straight(20.0, 1.5),
        RobotPose::new(0.0, 0.0, 0.0),
    )
}

/// 20 m x 2 m corridor with a box against the left wall 6 m ahead.
pub fn offset_box() -> ScenarioConfig {
    let world = CorridorWorld::straight(20.0, 2.0)
        .with_obstacle(Rect::new(Vec2::new(6.0, 0.25), Vec2::new(6.6, 1.0)));
    ScenarioConfig::new(world, RobotPose::new(0.0, 0.1, 0.0))
}

/// Corridor closed by an end wall at `x = 5`, robot centered, facing the wall
/// with its center `gap` metres from it.
pub fn dead_end(gap: f64) -> ScenarioConfig {
    let world = CorridorWorld::straight(10.0, 1.5)
        .with_wall(Segment::new(Vec2::new(5.0, -0.75), Vec2::new(5.0, 0.75)));
    let mut cfg = ScenarioConfig::new(world, RobotPose::new(5.0 - gap, 0.0, 0.0));
    cfg.max_ticks = 500;
    cfg
}

/// Robot whose front surface is 0.1 m from the end wall.
pub fn front_wall() -> ScenarioConfig {
    dead_end(0.1 + RobotBody::default().radius)
}

/// Names accepted by [`by_name`].
pub const NAMES: [&str; 4] = ["straight_corridor", "offset_box", "dead_end", "front_wall"];

/// Looks up a reference scenario. `dead_end` starts just inside the blocking
/// distance.
pub fn by_name(name: &str) -> Option<ScenarioConfig> {
    match name {
        "straight_corridor" => Some(straight_corridor()),
        "offset_box" => Some(offset_box()),
        "dead_end" => Some(dead_end(0.24)),
        "front_wall" => Some(front_wall()),
        _ => None,
    }
}
