//! Servo command signal: angle/pulse calibration, waveform rendering and
//! scope-style pulse measurement.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Horn angle that commands straight-ahead steering.
pub const NEUTRAL_ANGLE: f64 = 90.0;
pub const MIN_ANGLE: f64 = 0.0;
pub const MAX_ANGLE: f64 = 180.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PwmError {
    #[error("pulse width {pulse} ms is outside [0, {period}) ms")]
    PulseOutOfRange { pulse: f64, period: f64 },
    #[error("waveform has no complete high pulse (no rising/falling edge pair)")]
    NoEdges,
    #[error("invalid PWM configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid servo calibration: {0}")]
    InvalidCalibration(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PwmConfig {
    /// Signal period (ms).
    pub period: f64,
    /// Rendering rate (samples/s).
    pub sample_rate: f64,
}

impl Default for PwmConfig {
    fn default() -> Self {
        Self {
            period: 20.0,
            sample_rate: 1_000_000.0,
        }
    }
}

impl PwmConfig {
    pub fn samples_per_period(&self) -> usize {
        self.ms_to_samples(self.period)
    }

    /// Length of one sample (ms).
    pub fn sample_period_ms(&self) -> f64 {
        1000.0 / self.sample_rate
    }

    fn ms_to_samples(&self, ms: f64) -> usize {
        (ms * self.sample_rate / 1000.0).round() as usize
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !(self.period > 0.0 && self.period.is_finite()) {
            out.push(format!("pwm.period = {} must be positive", self.period));
        }
        if !(self.sample_rate > 0.0 && self.sample_rate.is_finite()) {
            out.push(format!(
                "pwm.sample_rate = {} must be positive",
                self.sample_rate
            ));
        } else if self.sample_rate * self.period / 1000.0 < 100.0 {
            out.push(format!(
                "pwm: {} samples/s over {} ms gives fewer than 100 samples per period",
                self.sample_rate, self.period
            ));
        }
        out
    }

    pub fn validate(&self) -> Result<(), PwmError> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(PwmError::InvalidConfig(v.join("; ")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalibrationPoint {
    /// Horn angle (degrees).
    pub angle: f64,
    /// Pulse width (ms).
    pub pulse: f64,
}

/// Straight-line map between horn angle and pulse width through two points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ServoCalibration {
    pub point_a: CalibrationPoint,
    pub point_b: CalibrationPoint,
}

impl ServoCalibration {
    /// Manufacturer figures: 1 ms at 0 degrees, 2 ms at 180 degrees.
    pub const DATASHEET: ServoCalibration = ServoCalibration {
        point_a: CalibrationPoint {
            angle: 0.0,
            pulse: 1.0,
        },
        point_b: CalibrationPoint {
            angle: 180.0,
            pulse: 2.0,
        },
    };

    /// Bench measurement: 1.020 ms at 90 degrees, 2.040 ms at 180 degrees.
    pub const MEASURED: ServoCalibration = ServoCalibration {
        point_a: CalibrationPoint {
            angle: 90.0,
            pulse: 1.020,
        },
        point_b: CalibrationPoint {
            angle: 180.0,
            pulse: 2.040,
        },
    };

    pub fn new(point_a: CalibrationPoint, point_b: CalibrationPoint) -> Result<Self, PwmError> {
        let c = Self { point_a, point_b };
        let v = c.violations(None);
        if v.is_empty() {
            Ok(c)
        } else {
            Err(PwmError::InvalidCalibration(v.join("; ")))
        }
    }

    /// Checks the two points, and with a period also that every commandable
    /// angle yields a pulse shorter than it.
    pub fn violations(&self, period: Option<f64>) -> Vec<String> {
        let (a, b) = (self.point_a, self.point_b);
        let mut out = Vec::new();
        if !(a.angle.is_finite() && b.angle.is_finite()) || a.angle == b.angle {
            out.push(format!(
                "calibration angles {} and {} must be finite and distinct",
                a.angle, b.angle
            ));
            return out;
        }
        for p in [a, b] {
            if !(p.pulse > 0.0 && p.pulse.is_finite()) {
                out.push(format!(
                    "calibration pulse {} ms at {} deg must be positive",
                    p.pulse, p.angle
                ));
            }
        }
        if let Some(period) = period {
            for angle in [MIN_ANGLE, MAX_ANGLE] {
                let pulse = self.angle_to_pulse(angle);
                if !(0.0..period).contains(&pulse) {
                    out.push(format!(
                        "calibration maps {angle} deg to {pulse} ms, outside [0, {period}) ms"
                    ));
                }
            }
        }
        out
    }

    /// Pulse width change per degree (ms/deg).
    pub fn slope(&self) -> f64 {
        (self.point_b.pulse - self.point_a.pulse) / (self.point_b.angle - self.point_a.angle)
    }

    /// Pulse width at the neutral angle (ms).
    pub fn neutral_pulse(&self) -> f64 {
        let (a, b) = (self.point_a, self.point_b);
        a.pulse + (b.pulse - a.pulse) * (NEUTRAL_ANGLE - a.angle) / (b.angle - a.angle)
    }

    /// Pulse for a horn angle, clamped to `[0, 180]` first.
    pub fn angle_to_pulse(&self, angle: f64) -> f64 {
        let angle = angle.clamp(MIN_ANGLE, MAX_ANGLE);
        self.neutral_pulse() + (angle - NEUTRAL_ANGLE) * self.slope()
    }

    /// Signed angle from neutral (degrees) that a pulse commands, limited to
    /// +-90.
    pub fn pulse_to_offset(&self, pulse: f64) -> f64 {
        let half = MAX_ANGLE - NEUTRAL_ANGLE;
        ((pulse - self.neutral_pulse()) / self.slope()).clamp(-half, half)
    }

    pub fn pulse_to_angle(&self, pulse: f64) -> f64 {
        NEUTRAL_ANGLE + self.pulse_to_offset(pulse)
    }
}

pub fn angle_to_pulse(angle: f64, c: &ServoCalibration) -> f64 {
    c.angle_to_pulse(angle)
}

pub fn pulse_to_angle(pulse: f64, c: &ServoCalibration) -> f64 {
    c.pulse_to_angle(pulse)
}

/// A rendered pin level sequence covering whole periods.
#[derive(Debug, Clone, PartialEq)]
pub struct PwmWaveform {
    pub samples: Vec<bool>,
    pub samples_per_period: usize,
    pub positive_duty: f64,
}

impl PwmWaveform {
    pub fn periods(&self) -> usize {
        self.samples.len() / self.samples_per_period
    }

    pub fn high_samples_per_period(&self) -> usize {
        self.samples[..self.samples_per_period]
            .iter()
            .filter(|&&s| s)
            .count()
    }

    /// Two-column `sample_index,level` dump.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "sample_index,level")?;
        for (i, &level) in self.samples.iter().enumerate() {
            writeln!(out, "{i},{}", u8::from(level))?;
        }
        Ok(())
    }
}

pub fn render_waveform(
    pulse: f64,
    cfg: &PwmConfig,
    n_periods: usize,
) -> Result<PwmWaveform, PwmError> {
    cfg.validate()?;
    if !(pulse >= 0.0 && pulse < cfg.period) {
        return Err(PwmError::PulseOutOfRange {
            pulse,
            period: cfg.period,
        });
    }
    if n_periods == 0 {
        return Err(PwmError::InvalidConfig("n_periods must be >= 1".into()));
    }

    let per_period = cfg.samples_per_period();
    let high = cfg.ms_to_samples(pulse).min(per_period);
    let mut samples = Vec::with_capacity(per_period * n_periods);
    for _ in 0..n_periods {
        samples.extend(std::iter::repeat_n(true, high));
        samples.extend(std::iter::repeat_n(false, per_period - high));
    }
    Ok(PwmWaveform {
        samples,
        samples_per_period: per_period,
        positive_duty: high as f64 / per_period as f64,
    })
}

/// Mean rising-to-falling interval (ms) over every complete high pulse.
///
/// The line is taken to be low before the first sample, so a waveform that
/// opens high has a rising edge at sample 0.
pub fn measure_pulse_width(w: &PwmWaveform, cfg: &PwmConfig) -> Result<f64, PwmError> {
    let mut previous = false;
    let mut rise = None;
    let mut total = 0usize;
    let mut pulses = 0usize;
    for (i, &level) in w.samples.iter().enumerate() {
        match (previous, level) {
            (false, true) => rise = Some(i),
            (true, false) => {
                if let Some(r) = rise.take() {
                    total += i - r;
                    pulses += 1;
                }
            }
            _ => {}
        }
        previous = level;
    }
    if pulses == 0 {
        return Err(PwmError::NoEdges);
    }
    Ok(total as f64 / pulses as f64 * cfg.sample_period_ms())
}
