use std::fmt;
use std::path::PathBuf;

use tropmirror::{Error, FanSpec, Window};

use crate::{Args, CommandKind};

/// Failure with its exit code.
#[derive(Debug)]
pub enum Failure {
    /// 1: unreadable or malformed input, bad parameters.
    Input(String),
    /// 2: the input is well formed but outside the theory (e.g. not convex).
    Domain(String),
    /// 3: amoeba commands need n = 2.
    Dimension(String),
    /// 4: the isomorphism check failed.
    Mismatch(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Domain(_) => 2,
            Failure::Dimension(_) => 3,
            Failure::Mismatch(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Domain(m) | Failure::Dimension(m) | Failure::Mismatch(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MalformedFan(_) | Error::Parse(_) | Error::DimensionMismatch { .. } | Error::InvalidEps(_) => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Validated parameters of one run.
#[derive(Clone, Debug)]
pub struct JobConfig {
    pub command: CommandKind,
    pub spec: FanSpec,
    pub out: PathBuf,
    pub log_t: Option<f64>,
    pub s: f64,
    pub eps: f64,
    pub j: usize,
    pub grid: usize,
    pub args: usize,
    pub window: Window,
    pub seed: u64,
}

/// `e^x` or a plain number greater than 1; returns `log t`.
pub fn parse_log_t(s: &str) -> Result<f64, Failure> {
    let s = s.trim();
    let log_t = if let Some(x) = s.strip_prefix("e^") {
        x.parse::<f64>().map_err(|_| Failure::Input(format!("bad exponent in --t {s:?}")))?
    } else {
        let t: f64 = s.parse().map_err(|_| Failure::Input(format!("bad value for --t: {s:?}")))?;
        t.ln()
    };
    if !(log_t > 0.0) || !log_t.is_finite() {
        return Err(Failure::Input(format!("--t must exceed 1, got {s}")));
    }
    Ok(log_t)
}

impl JobConfig {
    pub fn from_args(command: CommandKind, a: Args) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(&a.input)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", a.input.display())))?;
        let spec: FanSpec = serde_json::from_str(&text)
            .map_err(|e| Failure::Input(format!("malformed fan JSON in {}: {e}", a.input.display())))?;
        let log_t = a.t.as_deref().map(parse_log_t).transpose()?;
        if !(0.0..=1.0).contains(&a.s) {
            return Err(Failure::Input(format!("--s must lie in [0, 1], got {}", a.s)));
        }
        if !(a.eps > 0.0) || !a.eps.is_finite() {
            return Err(Failure::Input(format!("--eps must be positive, got {}", a.eps)));
        }
        if a.j < 1 {
            return Err(Failure::Input("--J must be at least 1".into()));
        }
        if a.grid < 1 || a.args < 1 {
            return Err(Failure::Input("--grid and --args must be positive".into()));
        }
        let window = Window::parse(&a.window).map_err(|e| Failure::Input(e.to_string()))?;
        Ok(Self {
            command,
            spec,
            out: a.out,
            log_t,
            s: a.s,
            eps: a.eps,
            j: a.j,
            grid: a.grid,
            args: a.args,
            window,
            seed: a.seed,
        })
    }
}
