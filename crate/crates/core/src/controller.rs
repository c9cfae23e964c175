//! Logical state to steering command, plus servo protection.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::paralogic::{AnnotationAnalysis, LogicalState};
use crate::pwm::{MAX_ANGLE, MIN_ANGLE, NEUTRAL_ANGLE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Drive {
    Forward,
    Stop,
    Reverse,
}

impl Drive {
    pub fn as_str(self) -> &'static str {
        match self {
            Drive::Forward => "forward",
            Drive::Stop => "stop",
            Drive::Reverse => "reverse",
        }
    }
}

impl fmt::Display for Drive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteeringCommand {
    /// Horn angle in degrees; 90 steers straight, above 90 steers left.
    pub servo_angle: f64,
    pub drive: Drive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Action {
    /// Turn away from neutral (degrees).
    pub magnitude: f64,
    pub drive: Drive,
}

impl Action {
    pub const fn new(magnitude: f64, drive: Drive) -> Self {
        Self { magnitude, drive }
    }
}

/// One action per logical state.
///
/// Serialized as a map keyed by state name; all twelve states must appear.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "BTreeMap<LogicalState, Action>",
    into = "BTreeMap<LogicalState, Action>"
)]
pub struct ActionTable {
    actions: [Action; 12],
}

impl Default for ActionTable {
    fn default() -> Self {
        use Drive::*;
        Self {
            actions: [
                Action::new(0.0, Forward),
                Action::new(45.0, Reverse),
                Action::new(15.0, Forward),
                Action::new(15.0, Forward),
                Action::new(10.0, Forward),
                Action::new(20.0, Forward),
                Action::new(10.0, Forward),
                Action::new(20.0, Forward),
                Action::new(35.0, Stop),
                Action::new(30.0, Stop),
                Action::new(35.0, Stop),
                Action::new(30.0, Stop),
            ],
        }
    }
}

impl ActionTable {
    pub fn action(&self, state: LogicalState) -> Action {
        self.actions[usize::from(state.code()) - 1]
    }

    pub fn set(&mut self, state: LogicalState, action: Action) {
        self.actions[usize::from(state.code()) - 1] = action;
    }

    pub fn violations(&self) -> Vec<String> {
        LogicalState::ALL
            .iter()
            .filter_map(|&s| {
                let m = self.action(s).magnitude;
                (!(0.0..=90.0).contains(&m))
                    .then(|| format!("action for {s} has magnitude {m}, outside [0, 90]"))
            })
            .collect()
    }
}

impl TryFrom<BTreeMap<LogicalState, Action>> for ActionTable {
    type Error = String;

    fn try_from(map: BTreeMap<LogicalState, Action>) -> Result<Self, Self::Error> {
        let missing: Vec<_> = LogicalState::ALL
            .iter()
            .filter(|s| !map.contains_key(s))
            .map(|s| s.name())
            .collect();
        if !missing.is_empty() {
            return Err(format!(
                "action table is missing states: {}",
                missing.join(", ")
            ));
        }
        Ok(Self {
            actions: LogicalState::ALL.map(|s| map[&s]),
        })
    }
}

impl From<ActionTable> for BTreeMap<LogicalState, Action> {
    fn from(t: ActionTable) -> Self {
        LogicalState::ALL
            .iter()
            .map(|&s| (s, t.action(s)))
            .collect()
    }
}

/// Turns the table entry for the analysed state toward the more open side.
/// A dead-even reading turns right.
pub fn decide(a: &AnnotationAnalysis, openness: f64, t: &ActionTable) -> SteeringCommand {
    let action = t.action(a.state);
    let magnitude = action.magnitude.clamp(0.0, 90.0);
    let servo_angle = if openness > 0.0 {
        NEUTRAL_ANGLE + magnitude
    } else {
        NEUTRAL_ANGLE - magnitude
    };
    SteeringCommand {
        servo_angle,
        drive: action.drive,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProtectionPolicy {
    pub angle_min: f64,
    pub angle_max: f64,
    /// Consecutive ticks allowed at a window limit.
    pub max_dwell_ticks: usize,
    /// Step back toward neutral once the dwell budget is spent (degrees).
    pub relief_step: f64,
}

impl Default for ProtectionPolicy {
    fn default() -> Self {
        Self {
            angle_min: MIN_ANGLE,
            angle_max: MAX_ANGLE,
            max_dwell_ticks: 25,
            relief_step: 10.0,
        }
    }
}

impl ProtectionPolicy {
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.angle_min.is_nan() || self.angle_max.is_nan() || self.angle_min >= self.angle_max {
            out.push(format!(
                "protection window needs angle_min ({}) < angle_max ({})",
                self.angle_min, self.angle_max
            ));
        }
        if !(MIN_ANGLE..=MAX_ANGLE).contains(&self.angle_min)
            || !(MIN_ANGLE..=MAX_ANGLE).contains(&self.angle_max)
        {
            out.push("protection window must lie within [0, 180] degrees".into());
        }
        if self.max_dwell_ticks < 1 {
            out.push("max_dwell_ticks must be >= 1".into());
        }
        if self.relief_step.is_nan() || self.relief_step <= 0.0 {
            out.push(format!("relief_step = {} must be > 0", self.relief_step));
        }
        out
    }

    fn relieve(&self, limit: f64) -> f64 {
        let inward = if limit == self.angle_max {
            limit - self.relief_step
        } else {
            limit + self.relief_step
        };
        let toward_neutral = if (self.angle_min..=self.angle_max).contains(&NEUTRAL_ANGLE) {
            if limit >= NEUTRAL_ANGLE {
                inward.max(NEUTRAL_ANGLE)
            } else {
                inward.min(NEUTRAL_ANGLE)
            }
        } else {
            inward
        };
        toward_neutral.clamp(self.angle_min, self.angle_max)
    }
}

/// Clamps the command into the window and relieves a limit that has been
/// held too long.
///
/// `history` holds the previously issued (protected) angles, oldest first.
/// A command that would extend a run at one limit past `max_dwell_ticks`
/// is stepped back toward neutral instead.
pub fn protect(c: &SteeringCommand, history: &[f64], p: &ProtectionPolicy) -> SteeringCommand {
    let angle = c.servo_angle.clamp(p.angle_min, p.angle_max);
    let at_limit = angle == p.angle_min || angle == p.angle_max;
    if at_limit {
        let run = history.iter().rev().take_while(|&&h| h == angle).count();
        if run >= p.max_dwell_ticks {
            return SteeringCommand {
                servo_angle: p.relieve(angle),
                drive: c.drive,
            };
        }
    }
    SteeringCommand {
        servo_angle: angle,
        drive: c.drive,
    }
}

/// Replaces a reverse command with a stop when the rear range is shorter
/// than `min_rear` (m).
pub fn guard_reverse(c: &SteeringCommand, rear_distance: f64, min_rear: f64) -> SteeringCommand {
    if c.drive == Drive::Reverse && rear_distance < min_rear {
        SteeringCommand {
            drive: Drive::Stop,
            ..*c
        }
    } else {
        *c
    }
}
