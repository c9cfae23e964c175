use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use paranav::motor::{self, DriveInput, MotorParameters, MotorState};
use paranav::paralogic::{classify, AnalysisThresholds, Evidence};
use paranav::pwm::{measure_pulse_width, render_waveform, PwmConfig, ServoCalibration};
use paranav::sim::{run_scenario, scenarios, write_csv, RunResult, ScenarioConfig, SimError};

const EXIT_ERROR: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_COLLIDED: u8 = 3;
const EXIT_TIMEOUT: u8 = 4;

#[derive(Parser)]
#[command(
    name = "paranav",
    version,
    about = "Paraconsistent corridor navigation toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario (JSON file or preset name) and report the outcome.
    Simulate {
        scenario: String,
        /// Write the per-tick trace as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write the outcome as JSON.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Check a scenario without running it.
    Validate { scenario: String },
    /// Print a preset scenario as JSON.
    Preset {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(scenarios::NAMES))]
        name: String,
    },
    /// Classify one pair of evidence degrees.
    Classify {
        #[arg(long)]
        mu: f64,
        #[arg(long)]
        lambda: f64,
        /// vcve,vcfa,vcic,vcpa
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        thresholds: Option<Vec<f64>>,
    },
    /// Encode a horn angle as a PWM pulse and measure the rendered waveform.
    Pwm {
        #[arg(long, allow_hyphen_values = true)]
        angle: f64,
        #[arg(long, value_enum, default_value_t = CalibrationArg::Datasheet)]
        calibration: CalibrationArg,
        #[arg(long, default_value_t = 3)]
        periods: usize,
        /// Write the sampled waveform as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Integrate the motor under a constant voltage and compare with the
    /// closed-form step response.
    MotorStep {
        /// Motor parameters as JSON; the unit motor when omitted.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        voltage: f64,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 1e-5)]
        dt: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CalibrationArg {
    Datasheet,
    Measured,
}

impl CalibrationArg {
    fn resolve(self) -> ServoCalibration {
        match self {
            CalibrationArg::Datasheet => ServoCalibration::DATASHEET,
            CalibrationArg::Measured => ServoCalibration::MEASURED,
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn error(message: impl ToString) -> Self {
        Self {
            code: EXIT_ERROR,
            message: message.to_string(),
        }
    }
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        let code = match e {
            SimError::Validation(_) => EXIT_INVALID,
            _ => EXIT_ERROR,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn load_scenario(arg: &str) -> Result<ScenarioConfig, Failure> {
    if let Some(cfg) = scenarios::by_name(arg) {
        return Ok(cfg);
    }
    let text =
        fs::read_to_string(arg).map_err(|e| Failure::error(format!("cannot read {arg}: {e}")))?;
    ScenarioConfig::from_json(&text).map_err(|e| Failure {
        code: EXIT_INVALID,
        message: e.to_string(),
    })
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::error(format!("cannot create {}: {e}", path.display())))
}

fn simulate(scenario: &str, trace: Option<&Path>, summary: Option<&Path>) -> Result<u8, Failure> {
    let cfg = load_scenario(scenario)?;
    let run = run_scenario(&cfg)?;
    if let Some(path) = trace {
        write_csv(&run.trace, create(path)?).map_err(Failure::error)?;
    }
    let json = serde_json::to_string_pretty(&run.outcome).map_err(Failure::error)?;
    if let Some(path) = summary {
        fs::write(path, &json)
            .map_err(|e| Failure::error(format!("cannot write {}: {e}", path.display())))?;
    }
    println!("{json}");
    Ok(match run.outcome.result {
        RunResult::Completed => 0,
        RunResult::Collided => EXIT_COLLIDED,
        RunResult::Timeout => EXIT_TIMEOUT,
    })
}

fn validate(scenario: &str) -> Result<u8, Failure> {
    load_scenario(scenario)?.validate()?;
    println!("ok");
    Ok(0)
}

fn preset(name: &str) -> Result<u8, Failure> {
    let cfg =
        scenarios::by_name(name).ok_or_else(|| Failure::error(format!("unknown preset {name}")))?;
    println!("{}", cfg.to_json());
    Ok(0)
}

fn classify_cmd(mu: f64, lambda: f64, thresholds: Option<&[f64]>) -> Result<u8, Failure> {
    let invalid = |e: paranav::paralogic::LogicError| Failure {
        code: EXIT_INVALID,
        message: e.to_string(),
    };
    let t = match thresholds {
        Some(&[a, b, c, d]) => AnalysisThresholds::new(a, b, c, d).map_err(invalid)?,
        Some(_) => {
            return Err(Failure {
                code: EXIT_INVALID,
                message: "--thresholds takes four values".into(),
            })
        }
        None => AnalysisThresholds::default(),
    };
    let a = classify(&Evidence::new(mu, lambda).map_err(invalid)?, &t);
    println!("gce={}", a.gce);
    println!("gin={}", a.gin);
    println!("state={} {}", a.state.code(), a.state.name());
    Ok(0)
}

fn pwm_cmd(
    angle: f64,
    cal: ServoCalibration,
    periods: usize,
    csv: Option<&Path>,
) -> Result<u8, Failure> {
    let cfg = PwmConfig::default();
    let pulse = cal.angle_to_pulse(angle);
    let wave = render_waveform(pulse, &cfg, periods).map_err(Failure::error)?;
    let measured = measure_pulse_width(&wave, &cfg).map_err(Failure::error)?;
    if let Some(path) = csv {
        wave.write_csv(create(path)?).map_err(Failure::error)?;
    }
    println!("pulse_ms={pulse:.6}");
    println!("measured_ms={measured:.6}");
    println!("duty_percent={:.4}", 100.0 * pulse / cfg.period);
    println!("samples_per_period={}", wave.samples_per_period);
    println!("high_samples_per_period={}", wave.high_samples_per_period());
    Ok(0)
}

fn motor_step(params: Option<&Path>, voltage: f64, t: f64, dt: f64) -> Result<u8, Failure> {
    let invalid = |m: String| Failure {
        code: EXIT_INVALID,
        message: m,
    };
    let p = match params {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::error(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<MotorParameters>(&text).map_err(|e| invalid(e.to_string()))?
        }
        None => MotorParameters::unit(),
    };
    p.validate().map_err(|e| invalid(e.to_string()))?;
    if !(dt > 0.0 && t >= 0.0 && t.is_finite()) {
        return Err(invalid(format!(
            "need dt > 0 and finite t >= 0 (dt={dt}, t={t})"
        )));
    }
    let steps = (t / dt).round() as u64;
    let mut s = MotorState::REST;
    for _ in 0..steps {
        s = motor::step(&s, &p, DriveInput::new(voltage), dt).map_err(Failure::error)?;
    }
    let t_end = steps as f64 * dt;
    println!("t={t_end}");
    println!("ia={}", s.ia);
    println!("omega_integrated={}", s.omega);
    match motor::step_response_analytic(&p, voltage, t_end) {
        Ok(w) => {
            println!("omega_analytic={w}");
            println!("abs_error={:e}", (s.omega - w).abs());
        }
        Err(e) => println!("omega_analytic=unavailable ({e})"),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Simulate {
            scenario,
            trace,
            summary,
        } => simulate(scenario, trace.as_deref(), summary.as_deref()),
        Command::Validate { scenario } => validate(scenario),
        Command::Preset { name } => preset(name),
        Command::Classify {
            mu,
            lambda,
            thresholds,
        } => classify_cmd(*mu, *lambda, thresholds.as_deref()),
        Command::Pwm {
            angle,
            calibration,
            periods,
            csv,
        } => pwm_cmd(*angle, calibration.resolve(), *periods, csv.as_deref()),
        Command::MotorStep {
            params,
            voltage,
            t,
            dt,
        } => motor_step(params.as_deref(), *voltage, *t, *dt),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
