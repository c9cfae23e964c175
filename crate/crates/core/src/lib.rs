//! Paraconsistent evidential steering for a simulated corridor robot.
//!
//! The crate is organised bottom-up:
//!
//! - [`paralogic`]: evidence annotations and the twelve-state para-analyzer.
//! - [`motor`]: DC servo dynamics, transfer function and position loop.
//! - [`pwm`]: angle/pulse calibration and rendered command waveforms.
//! - [`world`]: corridor geometry, six-sensor ultrasonic ranging and the
//!   range-to-evidence map.
//! - [`controller`]: state-to-steering table and servo protection.
//! - [`sim`]: the closed-loop scenario runner and its trace format.

pub mod controller;
pub mod motor;
pub mod paralogic;
pub mod pwm;
pub mod sim;
pub mod world;

pub use controller::{decide, protect, ActionTable, Drive, ProtectionPolicy, SteeringCommand};
pub use motor::{MotorParameters, MotorState};
pub use paralogic::{classify, AnalysisThresholds, AnnotationAnalysis, Evidence, LogicalState};
pub use pwm::{PwmConfig, PwmWaveform, ServoCalibration};
pub use sim::{run_scenario, summarize, RunResult, ScenarioConfig, ScenarioOutcome, TraceRecord};
pub use world::{CorridorWorld, EvidenceMapping, RobotPose, UltrasonicArray};
