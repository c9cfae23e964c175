//! DC servo motor model.
//!
//! Armature circuit and rotor are the usual coupled pair
//!
//! ```text
//! la * d(ia)/dt    = e - ra * ia - kb * omega
//! j  * d(omega)/dt = ki * ia - b * omega - tl
//!      d(theta)/dt = omega
//! ```
//!
//! With `b = 0` the transfer function from armature voltage to speed is
//! `ki / (s^2 j la + s j ra + ki kb)`. `theta` is measured from the servo's
//! neutral position, so `theta = 0` is the 90 degree horn position.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MotorError {
    #[error("numerical overflow: state became non-finite ({0:?})")]
    Overflow(MotorState),
    #[error("transfer function has a pole at s = {0}")]
    Pole(Complex64),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("invalid motor parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Electro-mechanical constants of the motor, SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MotorParameters {
    /// Armature inductance (H).
    pub la: f64,
    /// Armature resistance (ohm).
    pub ra: f64,
    /// Back-emf constant (V s/rad).
    pub kb: f64,
    /// Torque constant (N m/A).
    pub ki: f64,
    /// Rotor inertia (kg m^2).
    pub j: f64,
    /// Viscous friction (N m s/rad).
    pub b: f64,
    /// Load torque (N m).
    pub tl: f64,
    /// Supply saturation (V).
    pub v_max: f64,
}

impl Default for MotorParameters {
    /// A small geared hobby servo, referred to the output shaft.
    fn default() -> Self {
        Self {
            la: 0.01,
            ra: 4.0,
            kb: 0.5,
            ki: 0.5,
            j: 2.0e-3,
            b: 1.0e-3,
            tl: 0.0,
            v_max: 12.0,
        }
    }
}

impl MotorParameters {
    /// All constants one, no friction or load, 12 V supply.
    pub fn unit() -> Self {
        Self {
            la: 1.0,
            ra: 1.0,
            kb: 1.0,
            ki: 1.0,
            j: 1.0,
            b: 0.0,
            tl: 0.0,
            v_max: 12.0,
        }
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let positive = [
            ("la", self.la),
            ("ra", self.ra),
            ("kb", self.kb),
            ("ki", self.ki),
            ("j", self.j),
            ("v_max", self.v_max),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                out.push(format!("motor.{name} = {v} must be positive and finite"));
            }
        }
        if !(self.b >= 0.0 && self.b.is_finite()) {
            out.push(format!(
                "motor.b = {} must be non-negative and finite",
                self.b
            ));
        }
        if !self.tl.is_finite() {
            out.push(format!("motor.tl = {} must be finite", self.tl));
        }
        out
    }

    pub fn validate(&self) -> Result<(), MotorError> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(MotorError::InvalidParameters(v.join("; ")))
        }
    }

    /// Clamps a voltage request into `[-v_max, v_max]`.
    pub fn saturate(&self, e: f64) -> DriveInput {
        DriveInput {
            e: e.clamp(-self.v_max, self.v_max),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct MotorState {
    /// Armature current (A).
    pub ia: f64,
    /// Shaft speed (rad/s).
    pub omega: f64,
    /// Shaft position relative to neutral (rad).
    pub theta: f64,
}

impl MotorState {
    pub const REST: MotorState = MotorState {
        ia: 0.0,
        omega: 0.0,
        theta: 0.0,
    };

    pub fn is_finite(&self) -> bool {
        self.ia.is_finite() && self.omega.is_finite() && self.theta.is_finite()
    }

    fn offset(&self, rate: &StateRate, h: f64) -> MotorState {
        MotorState {
            ia: self.ia + h * rate.d_ia,
            omega: self.omega + h * rate.d_omega,
            theta: self.theta + h * rate.d_theta,
        }
    }
}

/// Applied armature voltage (V).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DriveInput {
    pub e: f64,
}

impl DriveInput {
    pub fn new(e: f64) -> Self {
        Self { e }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateRate {
    pub d_ia: f64,
    pub d_omega: f64,
    pub d_theta: f64,
}

/// Back emf `kb * omega` (V).
pub fn back_emf(s: &MotorState, p: &MotorParameters) -> f64 {
    p.kb * s.omega
}

/// Electromagnetic torque `ki * ia` (N m).
pub fn motor_torque(s: &MotorState, p: &MotorParameters) -> f64 {
    p.ki * s.ia
}

pub fn derivative(s: &MotorState, p: &MotorParameters, u: DriveInput) -> StateRate {
    StateRate {
        d_ia: (u.e - p.ra * s.ia - back_emf(s, p)) / p.la,
        d_omega: (motor_torque(s, p) - p.b * s.omega - p.tl) / p.j,
        d_theta: s.omega,
    }
}

/// Magnetic plus kinetic energy, `la ia^2 / 2 + j omega^2 / 2` (J).
pub fn stored_energy(s: &MotorState, p: &MotorParameters) -> f64 {
    0.5 * p.la * s.ia * s.ia + 0.5 * p.j * s.omega * s.omega
}

/// One classical fourth-order Runge-Kutta step with the input held over `dt`.
pub fn step(
    s: &MotorState,
    p: &MotorParameters,
    u: DriveInput,
    dt: f64,
) -> Result<MotorState, MotorError> {
    if !(dt >= 0.0 && dt.is_finite()) {
        return Err(MotorError::InvalidArgument(format!(
            "step size {dt} must be finite and non-negative"
        )));
    }
    if dt == 0.0 {
        return Ok(*s);
    }

    let k1 = derivative(s, p, u);
    let k2 = derivative(&s.offset(&k1, 0.5 * dt), p, u);
    let k3 = derivative(&s.offset(&k2, 0.5 * dt), p, u);
    let k4 = derivative(&s.offset(&k3, dt), p, u);

    let w = dt / 6.0;
    let next = MotorState {
        ia: s.ia + w * (k1.d_ia + 2.0 * k2.d_ia + 2.0 * k3.d_ia + k4.d_ia),
        omega: s.omega + w * (k1.d_omega + 2.0 * k2.d_omega + 2.0 * k3.d_omega + k4.d_omega),
        theta: s.theta + w * (k1.d_theta + 2.0 * k2.d_theta + 2.0 * k3.d_theta + k4.d_theta),
    };
    if next.is_finite() {
        Ok(next)
    } else {
        Err(MotorError::Overflow(next))
    }
}

/// Speed-over-voltage transfer function `ki / (s^2 j la + s j ra + ki kb)`.
///
/// Friction is not part of this closed form; `p.b` is ignored.
pub fn transfer_function_gain(p: &MotorParameters, s: Complex64) -> Result<Complex64, MotorError> {
    let den = s * s * (p.j * p.la) + s * (p.j * p.ra) + p.ki * p.kb;
    if den.norm() == 0.0 || !den.is_finite() {
        return Err(MotorError::Pole(s));
    }
    Ok(Complex64::new(p.ki, 0.0) / den)
}

/// Speed-over-voltage gain `C (sI - A)^-1 B` of the linear model, with `A`
/// and `B` read back from [`derivative`] rather than written out by hand.
///
/// The affine part (load torque) is removed by differencing against the
/// rest state, so `tl` does not affect the result; `b` does.
pub fn state_space_gain(p: &MotorParameters, s: Complex64) -> Result<Complex64, MotorError> {
    let zero = derivative(&MotorState::REST, p, DriveInput::new(0.0));
    let column = |state: MotorState, e: f64| {
        let r = derivative(&state, p, DriveInput::new(e));
        [r.d_ia - zero.d_ia, r.d_omega - zero.d_omega]
    };
    let a_ia = column(
        MotorState {
            ia: 1.0,
            ..MotorState::REST
        },
        0.0,
    );
    let a_omega = column(
        MotorState {
            omega: 1.0,
            ..MotorState::REST
        },
        0.0,
    );
    let b = column(MotorState::REST, 1.0);

    // (sI - A) x = B, solved by Cramer's rule on the (ia, omega) block.
    let m00 = s - a_ia[0];
    let m01 = Complex64::new(-a_omega[0], 0.0);
    let m10 = Complex64::new(-a_ia[1], 0.0);
    let m11 = s - a_omega[1];
    let det = m00 * m11 - m01 * m10;
    if det.norm() == 0.0 || !det.is_finite() {
        return Err(MotorError::Pole(s));
    }
    let omega = (m00 * b[1] - m10 * b[0]) / det;
    Ok(omega)
}

/// Closed-form speed response from rest to a constant voltage `e`.
///
/// Valid only without friction and load, where the speed obeys
/// `j la w'' + j ra w' + ki kb w = ki e` with `w(0) = w'(0) = 0`.
pub fn step_response_analytic(p: &MotorParameters, e: f64, t: f64) -> Result<f64, MotorError> {
    if p.b != 0.0 || p.tl != 0.0 {
        return Err(MotorError::Unsupported(format!(
            "closed-form response requires b = 0 and tl = 0 (got b = {}, tl = {})",
            p.b, p.tl
        )));
    }
    if t.is_nan() || t < 0.0 {
        return Err(MotorError::InvalidArgument(format!(
            "time {t} must be >= 0"
        )));
    }

    let a2 = p.j * p.la;
    let a1 = p.j * p.ra;
    let a0 = p.ki * p.kb;
    let steady = e / p.kb;
    let disc = a1 * a1 - 4.0 * a2 * a0;
    let scale = a1 * a1;

    let shape = if disc.abs() <= 1e-12 * scale {
        let r = -a1 / (2.0 * a2);
        1.0 - (1.0 - r * t) * (r * t).exp()
    } else if disc > 0.0 {
        let sq = disc.sqrt();
        let r1 = (-a1 + sq) / (2.0 * a2);
        let r2 = (-a1 - sq) / (2.0 * a2);
        1.0 + (r2 * (r1 * t).exp() - r1 * (r2 * t).exp()) / (r1 - r2)
    } else {
        let alpha = -a1 / (2.0 * a2);
        let beta = (-disc).sqrt() / (2.0 * a2);
        1.0 - (alpha * t).exp() * ((beta * t).cos() - alpha / beta * (beta * t).sin())
    };
    Ok(steady * shape)
}

/// Voltage the position loop applies: `kp * (target - theta)`, saturated.
pub fn servo_voltage(
    s: &MotorState,
    p: &MotorParameters,
    target_theta: f64,
    kp: f64,
) -> DriveInput {
    p.saturate(kp * (target_theta - s.theta))
}

/// One tick of the proportional position loop closed through the shaft
/// potentiometer.
pub fn servo_track(
    s: &MotorState,
    p: &MotorParameters,
    target_theta: f64,
    kp: f64,
    dt: f64,
) -> Result<MotorState, MotorError> {
    if kp.is_nan() || kp <= 0.0 {
        return Err(MotorError::InvalidArgument(format!(
            "servo gain {kp} must be > 0"
        )));
    }
    if dt.is_nan() || dt <= 0.0 {
        return Err(MotorError::InvalidArgument(format!(
            "step size {dt} must be > 0"
        )));
    }
    step(s, p, servo_voltage(s, p, target_theta, kp), dt)
}
