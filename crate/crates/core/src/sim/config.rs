use serde::{Deserialize, Serialize};

use crate::controller::{ActionTable, ProtectionPolicy};
use crate::motor::MotorParameters;
use crate::paralogic::AnalysisThresholds;
use crate::pwm::{PwmConfig, ServoCalibration};
use crate::world::{CorridorWorld, EvidenceMapping, RobotBody, RobotPose, UltrasonicArray};

use super::SimError;

/// Calibration given either by preset name or by two explicit points.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Calibration {
    #[default]
    Datasheet,
    Measured,
    Custom(ServoCalibration),
}

impl Calibration {
    pub fn resolve(&self) -> ServoCalibration {
        match self {
            Calibration::Datasheet => ServoCalibration::DATASHEET,
            Calibration::Measured => ServoCalibration::MEASURED,
            Calibration::Custom(c) => *c,
        }
    }
}

fn default_servo_gain() -> f64 {
    8.0
}
fn default_forward_speed() -> f64 {
    0.3
}
fn default_reverse_speed() -> f64 {
    0.15
}
fn default_wheelbase() -> f64 {
    0.3
}
fn default_linkage_ratio() -> f64 {
    1.0 / 3.0
}
fn default_dt() -> f64 {
    0.02
}
fn default_motor_substeps() -> usize {
    20
}
fn default_max_ticks() -> usize {
    5000
}

/// Everything one run needs. Only `world` and `start` are required in a
/// scenario file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub world: CorridorWorld,
    pub start: RobotPose,
    #[serde(default)]
    pub body: RobotBody,
    #[serde(default)]
    pub sensors: UltrasonicArray,
    #[serde(default)]
    pub evidence: EvidenceMapping,
    #[serde(default)]
    pub thresholds: AnalysisThresholds,
    #[serde(default)]
    pub actions: ActionTable,
    #[serde(default)]
    pub protection: ProtectionPolicy,
    #[serde(default)]
    pub motor: MotorParameters,
    /// Position loop gain (V/rad).
    #[serde(default = "default_servo_gain")]
    pub servo_gain: f64,
    /// Map the controller uses to turn angles into pulses.
    #[serde(default)]
    pub calibration: Calibration,
    /// Map the servo uses to turn pulses back into a target; defaults to
    /// `calibration`.
    #[serde(default)]
    pub servo_calibration: Option<Calibration>,
    #[serde(default)]
    pub pwm: PwmConfig,
    /// m/s
    #[serde(default = "default_forward_speed")]
    pub forward_speed: f64,
    /// m/s, magnitude
    #[serde(default = "default_reverse_speed")]
    pub reverse_speed: f64,
    /// m
    #[serde(default = "default_wheelbase")]
    pub wheelbase: f64,
    /// Wheel steer angle per unit of horn angle away from neutral.
    #[serde(default = "default_linkage_ratio")]
    pub linkage_ratio: f64,
    /// Control tick (s).
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default = "default_motor_substeps")]
    pub motor_substeps: usize,
    #[serde(default = "default_max_ticks")]
    pub max_ticks: usize,
    /// Reserved for noise models; the baseline ignores it.
    #[serde(default)]
    pub rng_seed: u64,
}

impl ScenarioConfig {
    pub fn new(world: CorridorWorld, start: RobotPose) -> Self {
        Self {
            world,
            start,
            body: RobotBody::default(),
            sensors: UltrasonicArray::default(),
            evidence: EvidenceMapping::default(),
            thresholds: AnalysisThresholds::default(),
            actions: ActionTable::default(),
            protection: ProtectionPolicy::default(),
            motor: MotorParameters::default(),
            servo_gain: default_servo_gain(),
            calibration: Calibration::default(),
            servo_calibration: None,
            pwm: PwmConfig::default(),
            forward_speed: default_forward_speed(),
            reverse_speed: default_reverse_speed(),
            wheelbase: default_wheelbase(),
            linkage_ratio: default_linkage_ratio(),
            dt: default_dt(),
            motor_substeps: default_motor_substeps(),
            max_ticks: default_max_ticks(),
            rng_seed: 0,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, SimError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn command_calibration(&self) -> ServoCalibration {
        self.calibration.resolve()
    }

    pub fn servo_side_calibration(&self) -> ServoCalibration {
        self.servo_calibration.unwrap_or(self.calibration).resolve()
    }

    /// Every violated constraint, across all sections.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        out.extend(self.world.violations(Some(&self.start)));
        if !self.start.is_finite() {
            out.push("start pose must be finite".into());
        } else if self.body.radius > 0.0 && self.body.collides(&self.world, &self.start) {
            out.push("start pose intersects the world geometry".into());
        }
        if !(self.body.radius > 0.0 && self.body.radius.is_finite()) {
            out.push(format!(
                "body.radius = {} must be positive",
                self.body.radius
            ));
        }
        out.extend(self.sensors.violations());
        out.extend(self.evidence.violations(&self.sensors));
        out.extend(self.thresholds.violations());
        out.extend(self.actions.violations());
        out.extend(self.protection.violations());
        out.extend(self.motor.violations());
        if !(self.servo_gain > 0.0 && self.servo_gain.is_finite()) {
            out.push(format!("servo_gain = {} must be positive", self.servo_gain));
        }
        out.extend(self.pwm.violations());
        out.extend(self.command_calibration().violations(Some(self.pwm.period)));
        if self.servo_calibration.is_some() {
            out.extend(
                self.servo_side_calibration()
                    .violations(Some(self.pwm.period)),
            );
        }
        for (name, v) in [
            ("forward_speed", self.forward_speed),
            ("reverse_speed", self.reverse_speed),
            ("wheelbase", self.wheelbase),
            ("dt", self.dt),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                out.push(format!("{name} = {v} must be positive"));
            }
        }
        if !(self.linkage_ratio > 0.0 && self.linkage_ratio < 1.0) {
            out.push(format!(
                "linkage_ratio = {} must lie in (0, 1) so the wheel steer stays below 90 degrees",
                self.linkage_ratio
            ));
        }
        if self.motor_substeps < 1 {
            out.push("motor_substeps must be >= 1".into());
        }
        if self.max_ticks < 1 {
            out.push("max_ticks must be >= 1".into());
        }
        out
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(SimError::Validation(v))
        }
    }

    /// The same scenario reflected across the corridor axis `y = 0`.
    pub fn mirrored(&self) -> Self {
        let mut m = self.clone();
        m.world = self.world.mirrored();
        m.start = self.start.mirrored();
        m.sensors = self.sensors.mirrored();
        m.protection.angle_min = 180.0 - self.protection.angle_max;
        m.protection.angle_max = 180.0 - self.protection.angle_min;
        m
    }
}
