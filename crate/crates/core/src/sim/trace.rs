use std::io::{self, Write};

use serde::Serialize;

use crate::controller::Drive;
use crate::world::Distances;

/// Column order of the CSV trace.
pub const TRACE_COLUMNS: [&str; 21] = [
    "tick",
    "time",
    "x",
    "y",
    "heading",
    "d1",
    "d2",
    "d3",
    "d4",
    "d5",
    "d6",
    "mu",
    "lambda",
    "gce",
    "gin",
    "state_code",
    "commanded_angle",
    "protected_angle",
    "pulse_width",
    "actual_theta",
    "drive",
];

/// One control tick.
///
/// Ranges, evidence and commands are those computed from the pose at the
/// start of the tick; `time`, the pose and `actual_theta` are the values at
/// the end of the tick, after the servo and the chassis have moved.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRecord {
    pub tick: u64,
    /// s
    pub time: f64,
    pub x: f64,
    pub y: f64,
    /// rad
    pub heading: f64,
    /// Ranges in sensor order front, front-left, front-right, left, right,
    /// rear (m).
    pub distances: Distances,
    pub mu: f64,
    pub lambda: f64,
    pub gce: f64,
    pub gin: f64,
    pub state_code: u8,
    /// deg
    pub commanded_angle: f64,
    /// deg
    pub protected_angle: f64,
    /// ms
    pub pulse_width: f64,
    /// Horn angle reached by the simulated servo (deg).
    pub actual_theta: f64,
    pub drive: Drive,
}

impl TraceRecord {
    pub fn floats(&self) -> impl Iterator<Item = f64> + '_ {
        [self.time, self.x, self.y, self.heading]
            .into_iter()
            .chain(self.distances)
            .chain([
                self.mu,
                self.lambda,
                self.gce,
                self.gin,
                self.commanded_angle,
                self.protected_angle,
                self.pulse_width,
                self.actual_theta,
            ])
    }

    pub fn is_finite(&self) -> bool {
        self.floats().all(f64::is_finite)
    }

    fn csv_row(&self) -> String {
        let mut fields = Vec::with_capacity(21);
        fields.push(self.tick.to_string());
        fields.extend([self.time, self.x, self.y, self.heading].map(format_sig9));
        fields.extend(self.distances.map(format_sig9));
        fields.extend([self.mu, self.lambda, self.gce, self.gin].map(format_sig9));
        fields.push(self.state_code.to_string());
        fields.extend(
            [
                self.commanded_angle,
                self.protected_angle,
                self.pulse_width,
                self.actual_theta,
            ]
            .map(format_sig9),
        );
        fields.push(self.drive.as_str().to_string());
        fields.join(",")
    }
}

pub fn csv_header() -> String {
    TRACE_COLUMNS.join(",")
}

pub fn write_csv<W: Write>(records: &[TraceRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "{}", csv_header())?;
    for r in records {
        writeln!(out, "{}", r.csv_row())?;
    }
    Ok(())
}

pub fn to_csv_string(records: &[TraceRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(records, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("trace is ASCII")
}

/// Renders a float with 9 significant digits in the style of C's `%.9g`:
/// fixed notation for decimal exponents in `[-4, 9)`, scientific otherwise,
/// trailing zeros dropped. Zero of either sign prints as `0`.
pub fn format_sig9(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.8e}");
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..9).contains(&exp) {
        let decimals = (8 - exp) as usize;
        trim_fraction(&format!("{v:.decimals$}")).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_fraction(mantissa), exp.abs())
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
