//! Paraconsistent annotated evidential logic engine.
//!
//! A proposition carries an annotation `(mu, lambda)`: the favorable and the
//! contrary evidence degree, each in `[0, 1]`. From the annotation we derive
//! the degree of certainty `gce = mu - lambda` and the degree of uncertainty
//! `gin = mu + lambda - 1`, and the para-analyzer partitions the
//! `(gce, gin)` square into four extreme and eight tending logical states.
//!
//! Every function here is pure; nothing is rounded before threshold
//! comparison.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LogicError {
    #[error("percentage {0} is outside [0, 100]")]
    PercentOutOfRange(f64),
    #[error("{name} = {value} is outside the unit interval [0, 1]")]
    DegreeOutOfRange { name: &'static str, value: f64 },
    #[error("invalid thresholds: {0}")]
    InvalidThresholds(String),
}

/// Converts a percent-scaled evidence reading (0..=100) into a unit degree.
pub fn normalize_percent(raw: f64) -> Result<f64, LogicError> {
    if !(0.0..=100.0).contains(&raw) {
        return Err(LogicError::PercentOutOfRange(raw));
    }
    Ok(raw / 100.0)
}

/// Annotation `(mu, lambda)` attached to a proposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Evidence {
    mu: f64,
    lambda: f64,
}

impl Evidence {
    pub fn new(mu: f64, lambda: f64) -> Result<Self, LogicError> {
        check_unit("mu", mu)?;
        check_unit("lambda", lambda)?;
        Ok(Self { mu, lambda })
    }

    /// Builds evidence from percent-scaled readings.
    pub fn from_percent(mu: f64, lambda: f64) -> Result<Self, LogicError> {
        Self::new(normalize_percent(mu)?, normalize_percent(lambda)?)
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// The same evidence with favorable and contrary degrees exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            mu: self.lambda,
            lambda: self.mu,
        }
    }
}

fn check_unit(name: &'static str, value: f64) -> Result<(), LogicError> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(LogicError::DegreeOutOfRange { name, value })
    }
}

/// Degree of certainty, `mu - lambda`.
pub fn certainty_degree(e: &Evidence) -> f64 {
    e.mu - e.lambda
}

/// Degree of uncertainty, `mu + lambda - 1`.
pub fn uncertainty_degree(e: &Evidence) -> f64 {
    e.mu + e.lambda - 1.0
}

/// Control limits of the para-analyzer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisThresholds {
    /// Certainty (veracity) limit, in `(0, 1]`.
    pub vcve: f64,
    /// Falsity limit, in `[-1, 0)`.
    pub vcfa: f64,
    /// Inconsistency limit, in `(0, 1]`.
    pub vcic: f64,
    /// Paracompleteness limit, in `[-1, 0)`.
    pub vcpa: f64,
}

impl Default for AnalysisThresholds {
    fn default() -> Self {
        Self {
            vcve: 0.5,
            vcfa: -0.5,
            vcic: 0.5,
            vcpa: -0.5,
        }
    }
}

impl AnalysisThresholds {
    pub fn new(vcve: f64, vcfa: f64, vcic: f64, vcpa: f64) -> Result<Self, LogicError> {
        let t = Self {
            vcve,
            vcfa,
            vcic,
            vcpa,
        };
        t.validate()?;
        Ok(t)
    }

    /// Thresholds mirrored about zero: `vcfa = -vcve`, `vcpa = -vcic`.
    pub fn symmetric(certainty: f64, contradiction: f64) -> Result<Self, LogicError> {
        Self::new(certainty, -certainty, contradiction, -contradiction)
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !(self.vcve > 0.0 && self.vcve <= 1.0) {
            out.push(format!("vcve = {} must lie in (0, 1]", self.vcve));
        }
        if !(self.vcfa >= -1.0 && self.vcfa < 0.0) {
            out.push(format!("vcfa = {} must lie in [-1, 0)", self.vcfa));
        }
        if !(self.vcic > 0.0 && self.vcic <= 1.0) {
            out.push(format!("vcic = {} must lie in (0, 1]", self.vcic));
        }
        if !(self.vcpa >= -1.0 && self.vcpa < 0.0) {
            out.push(format!("vcpa = {} must lie in [-1, 0)", self.vcpa));
        }
        out
    }

    pub fn validate(&self) -> Result<(), LogicError> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(LogicError::InvalidThresholds(v.join("; ")))
        }
    }
}

/// The twelve output states of the para-analyzer, with their fixed codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LogicalState {
    True = 1,
    False = 2,
    Inconsistent = 3,
    Paracomplete = 4,
    QuasiTrueTendingInconsistent = 5,
    QuasiInconsistentTendingTrue = 6,
    QuasiTrueTendingParacomplete = 7,
    QuasiParacompleteTendingTrue = 8,
    QuasiFalseTendingParacomplete = 9,
    QuasiParacompleteTendingFalse = 10,
    QuasiFalseTendingInconsistent = 11,
    QuasiInconsistentTendingFalse = 12,
}

impl LogicalState {
    pub const ALL: [LogicalState; 12] = [
        LogicalState::True,
        LogicalState::False,
        LogicalState::Inconsistent,
        LogicalState::Paracomplete,
        LogicalState::QuasiTrueTendingInconsistent,
        LogicalState::QuasiInconsistentTendingTrue,
        LogicalState::QuasiTrueTendingParacomplete,
        LogicalState::QuasiParacompleteTendingTrue,
        LogicalState::QuasiFalseTendingParacomplete,
        LogicalState::QuasiParacompleteTendingFalse,
        LogicalState::QuasiFalseTendingInconsistent,
        LogicalState::QuasiInconsistentTendingFalse,
    ];

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<Self> {
        Self::ALL.get(usize::from(code).checked_sub(1)?).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            LogicalState::True => "True",
            LogicalState::False => "False",
            LogicalState::Inconsistent => "Inconsistent",
            LogicalState::Paracomplete => "Paracomplete",
            LogicalState::QuasiTrueTendingInconsistent => "QuasiTrueTendingInconsistent",
            LogicalState::QuasiInconsistentTendingTrue => "QuasiInconsistentTendingTrue",
            LogicalState::QuasiTrueTendingParacomplete => "QuasiTrueTendingParacomplete",
            LogicalState::QuasiParacompleteTendingTrue => "QuasiParacompleteTendingTrue",
            LogicalState::QuasiFalseTendingParacomplete => "QuasiFalseTendingParacomplete",
            LogicalState::QuasiParacompleteTendingFalse => "QuasiParacompleteTendingFalse",
            LogicalState::QuasiFalseTendingInconsistent => "QuasiFalseTendingInconsistent",
            LogicalState::QuasiInconsistentTendingFalse => "QuasiInconsistentTendingFalse",
        }
    }

    pub fn is_extreme(self) -> bool {
        self.code() <= 4
    }

    /// State reached when `mu` and `lambda` are exchanged under symmetric
    /// thresholds.
    pub fn swap_image(self) -> Self {
        use LogicalState::*;
        match self {
            True => False,
            False => True,
            Inconsistent => Inconsistent,
            Paracomplete => Paracomplete,
            QuasiTrueTendingInconsistent => QuasiFalseTendingInconsistent,
            QuasiFalseTendingInconsistent => QuasiTrueTendingInconsistent,
            QuasiInconsistentTendingTrue => QuasiInconsistentTendingFalse,
            QuasiInconsistentTendingFalse => QuasiInconsistentTendingTrue,
            QuasiTrueTendingParacomplete => QuasiFalseTendingParacomplete,
            QuasiFalseTendingParacomplete => QuasiTrueTendingParacomplete,
            QuasiParacompleteTendingTrue => QuasiParacompleteTendingFalse,
            QuasiParacompleteTendingFalse => QuasiParacompleteTendingTrue,
        }
    }
}

impl fmt::Display for LogicalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of analysing one annotation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnnotationAnalysis {
    pub gce: f64,
    pub gin: f64,
    pub state: LogicalState,
}

/// Runs the para-analyzer on one annotation.
///
/// Extreme states are tested first, in order: `gce >= vcve` (True),
/// `gce <= vcfa` (False), `gin >= vcic` (Inconsistent), `gin <= vcpa`
/// (Paracomplete). Anything left is assigned by the quadrant of
/// `(gce, gin)` and by comparing `|gce|` against `|gin|`; an equality stays
/// with the first region listed.
pub fn classify(e: &Evidence, t: &AnalysisThresholds) -> AnnotationAnalysis {
    use LogicalState::*;

    let gce = certainty_degree(e);
    let gin = uncertainty_degree(e);
    let gce_abs = gce.abs();
    let gin_abs = gin.abs();

    let state = if gce >= t.vcve {
        True
    } else if gce <= t.vcfa {
        False
    } else if gin >= t.vcic {
        Inconsistent
    } else if gin <= t.vcpa {
        Paracomplete
    } else if gce >= 0.0 && gin >= 0.0 {
        if gce >= gin {
            QuasiTrueTendingInconsistent
        } else {
            QuasiInconsistentTendingTrue
        }
    } else if gce >= 0.0 {
        if gce >= gin_abs {
            QuasiTrueTendingParacomplete
        } else {
            QuasiParacompleteTendingTrue
        }
    } else if gin < 0.0 {
        if gce_abs >= gin_abs {
            QuasiFalseTendingParacomplete
        } else {
            QuasiParacompleteTendingFalse
        }
    } else if gce_abs >= gin {
        QuasiFalseTendingInconsistent
    } else {
        QuasiInconsistentTendingFalse
    };

    AnnotationAnalysis { gce, gin, state }
}
