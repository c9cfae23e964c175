//! Closed-loop scenario runner.
//!
//! Each tick: sense, build Free-Front evidence, classify, decide, protect,
//! encode the horn angle as a pulse, let the servo decode and track it, then
//! move the chassis with the angle the servo actually reached.

mod config;
pub mod scenarios;
mod trace;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::controller::{decide, guard_reverse, protect, Drive};
use crate::motor::{servo_track, MotorError, MotorState};
use crate::paralogic::classify;
use crate::pwm::NEUTRAL_ANGLE;
use crate::world::{
    evidence_from_distances, sense, side_openness, CorridorWorld, RobotBody, RobotPose, REAR,
};

pub use config::{Calibration, ScenarioConfig};
pub use trace::{csv_header, format_sig9, to_csv_string, write_csv, TraceRecord, TRACE_COLUMNS};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid scenario:\n  - {}", .0.join("\n  - "))]
    Validation(Vec<String>),
    #[error("scenario parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("motor integration failed: {0}")]
    Motor(#[from] MotorError),
    #[error("cannot summarize an empty trace")]
    EmptyTrace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunResult {
    Completed,
    Collided,
    Timeout,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioOutcome {
    pub result: RunResult,
    pub ticks_used: usize,
    /// Smallest gap between the body and any geometry over the recorded
    /// poses (m); non-positive after a collision.
    pub min_wall_clearance: f64,
    pub final_pose: RobotPose,
}

#[derive(Debug, Clone)]
pub struct ScenarioRun {
    pub trace: Vec<TraceRecord>,
    pub outcome: ScenarioOutcome,
}

impl ScenarioRun {
    pub fn trace_csv(&self) -> String {
        to_csv_string(&self.trace)
    }
}

/// Bicycle model: heading first, then position along the new heading.
pub fn kinematics_step(p: &RobotPose, steer: f64, v: f64, wheelbase: f64, dt: f64) -> RobotPose {
    let heading = p.heading + v / wheelbase * steer.tan() * dt;
    RobotPose {
        x: p.x + v * heading.cos() * dt,
        y: p.y + v * heading.sin() * dt,
        heading,
    }
}

fn drive_speed(cfg: &ScenarioConfig, drive: Drive) -> f64 {
    match drive {
        Drive::Forward => cfg.forward_speed,
        Drive::Stop => 0.0,
        Drive::Reverse => -cfg.reverse_speed,
    }
}

fn terminal(world: &CorridorWorld, body: &RobotBody, pose: &RobotPose) -> Option<RunResult> {
    if body.collides(world, pose) {
        Some(RunResult::Collided)
    } else if pose.x >= world.goal_line {
        Some(RunResult::Completed)
    } else {
        None
    }
}

pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioRun, SimError> {
    cfg.validate()?;

    let command_cal = cfg.command_calibration();
    let servo_cal = cfg.servo_side_calibration();
    let sub_dt = cfg.dt / cfg.motor_substeps as f64;
    let dwell_window = cfg.protection.max_dwell_ticks;

    let mut pose = cfg.start;
    let mut servo = MotorState::REST;
    let mut history: VecDeque<f64> = VecDeque::with_capacity(dwell_window + 1);
    let mut trace = Vec::with_capacity(cfg.max_ticks.min(100_000));
    let mut min_clearance = f64::INFINITY;
    let mut result = RunResult::Timeout;

    for tick in 0..cfg.max_ticks {
        let distances = sense(&cfg.world, &pose, &cfg.sensors);
        let evidence = evidence_from_distances(&distances, &cfg.evidence, &cfg.sensors);
        let analysis = classify(&evidence, &cfg.thresholds);
        let commanded = decide(&analysis, side_openness(&distances), &cfg.actions);
        let protected = protect(&commanded, history.make_contiguous(), &cfg.protection);
        let command = guard_reverse(&protected, distances[REAR], cfg.evidence.d_block);

        history.push_back(command.servo_angle);
        if history.len() > dwell_window {
            history.pop_front();
        }

        let pulse = command_cal.angle_to_pulse(command.servo_angle);
        let target = servo_cal.pulse_to_offset(pulse).to_radians();
        for _ in 0..cfg.motor_substeps {
            servo = servo_track(&servo, &cfg.motor, target, cfg.servo_gain, sub_dt)?;
        }

        let steer = servo.theta * cfg.linkage_ratio;
        pose = kinematics_step(
            &pose,
            steer,
            drive_speed(cfg, command.drive),
            cfg.wheelbase,
            cfg.dt,
        );

        trace.push(TraceRecord {
            tick: tick as u64,
            time: (tick + 1) as f64 * cfg.dt,
            x: pose.x,
            y: pose.y,
            heading: pose.heading,
            distances,
            mu: evidence.mu(),
            lambda: evidence.lambda(),
            gce: analysis.gce,
            gin: analysis.gin,
            state_code: analysis.state.code(),
            commanded_angle: commanded.servo_angle,
            protected_angle: command.servo_angle,
            pulse_width: pulse,
            actual_theta: NEUTRAL_ANGLE + servo.theta.to_degrees(),
            drive: command.drive,
        });

        min_clearance = min_clearance.min(cfg.body.clearance(&cfg.world, &pose));
        if let Some(r) = terminal(&cfg.world, &cfg.body, &pose) {
            result = r;
            break;
        }
    }

    let outcome = ScenarioOutcome {
        result,
        ticks_used: trace.len(),
        min_wall_clearance: min_clearance,
        final_pose: pose,
    };
    Ok(ScenarioRun { trace, outcome })
}

/// Rebuilds the outcome of a run from its trace and the static geometry.
pub fn summarize(
    trace: &[TraceRecord],
    world: &CorridorWorld,
    body: &RobotBody,
) -> Result<ScenarioOutcome, SimError> {
    let last = trace.last().ok_or(SimError::EmptyTrace)?;
    let pose_of = |r: &TraceRecord| RobotPose::new(r.x, r.y, r.heading);
    let final_pose = pose_of(last);
    let min_wall_clearance = trace
        .iter()
        .map(|r| body.clearance(world, &pose_of(r)))
        .fold(f64::INFINITY, f64::min);
    Ok(ScenarioOutcome {
        result: terminal(world, body, &final_pose).unwrap_or(RunResult::Timeout),
        ticks_used: trace.len(),
        min_wall_clearance,
        final_pose,
    })
}
