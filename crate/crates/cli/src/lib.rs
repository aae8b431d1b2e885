//! JSON job runner behind the `gt` binary.
//!
//! A job is `{"command", "params", "seed", "p", "precision", "trials"}`.
//! Effective settings resolve as flag, then job, then environment (for the
//! prime), then built-in default.

mod commands;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use gt_core::{DEFAULT_PRECISION, DEFAULT_PRIME};

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_TRIALS: usize = 20;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Forward,
    Inverse,
    Roundtrip,
    Invariance,
    Strata,
    Admissible,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Job {
    pub command: Command,
    #[serde(default = "empty_params")]
    pub params: Value,
    pub seed: Option<u64>,
    pub p: Option<u64>,
    pub precision: Option<i64>,
    pub trials: Option<usize>,
}

fn empty_params() -> Value {
    Value::Object(Default::default())
}

/// Values given on the command line; they win over the job file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub prime: Option<u64>,
    pub precision: Option<i64>,
    pub trials: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Settings {
    pub p: u64,
    pub precision: i64,
    pub seed: u64,
    pub trials: usize,
}

/// Failure of a job, with the exit code it maps to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JobError {
    #[serde(skip)]
    pub code: i32,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub message: String,
}

impl JobError {
    pub fn malformed(path: Option<String>, message: impl Into<String>) -> Self {
        JobError {
            code: EXIT_MALFORMED,
            kind: "malformed_input",
            path,
            message: message.into(),
        }
    }

    /// Core errors from bad input are malformed input; a failed identity is
    /// an assertion failure.
    pub fn from_core(err: gt_core::Error) -> Self {
        match err {
            gt_core::Error::IdentityFailed(m) => JobError {
                code: EXIT_ASSERTION,
                kind: "assertion_failed",
                path: None,
                message: m,
            },
            other => JobError::malformed(None, other.to_string()),
        }
    }
}

impl From<gt_core::Error> for JobError {
    fn from(err: gt_core::Error) -> Self {
        JobError::from_core(err)
    }
}

/// Deserializes `value` reporting the failing field as `prefix.path`.
pub(crate) fn parse_at<T: serde::de::DeserializeOwned>(value: &Value, prefix: &str) -> Result<T, JobError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let inner = e.path().to_string();
        let mut path = if inner == "." {
            prefix.to_string()
        } else {
            format!("{prefix}.{inner}")
        };
        let message = e.into_inner().to_string();
        // serde reports a missing field at its parent
        if let Some(field) = message.strip_prefix("missing field `").and_then(|m| m.split('`').next()) {
            path = format!("{path}.{field}");
        }
        JobError::malformed(Some(path), message)
    })
}

pub fn parse_job(text: &str) -> Result<Job, JobError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let path = (path != ".").then_some(path);
        JobError::malformed(path, e.into_inner().to_string())
    })
}

pub fn resolve(job: &Job, flags: &Overrides, env_prime: Option<&str>) -> Result<Settings, JobError> {
    let env_p = match env_prime {
        Some(s) => Some(s.trim().parse::<u64>().map_err(|_| {
            JobError::malformed(
                Some(gt_core::PRIME_ENV.into()),
                format!("not an unsigned integer: {s:?}"),
            )
        })?),
        None => None,
    };
    let p = flags.prime.or(job.p).or(env_p).unwrap_or(DEFAULT_PRIME);
    gt_core::field_series::check_prime(p).map_err(|e| JobError::malformed(Some("p".into()), e.to_string()))?;
    let precision = flags.precision.or(job.precision).unwrap_or(DEFAULT_PRECISION);
    if !(0..=256).contains(&precision) {
        return Err(JobError::malformed(
            Some("precision".into()),
            format!("precision {precision} outside [0, 256]"),
        ));
    }
    Ok(Settings {
        p,
        precision,
        seed: flags.seed.or(job.seed).unwrap_or(DEFAULT_SEED),
        trials: flags.trials.or(job.trials).unwrap_or(DEFAULT_TRIALS),
    })
}

#[derive(Serialize)]
struct Report<'a> {
    version: &'static str,
    command: Option<Command>,
    settings: Option<&'a Settings>,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a JobError>,
}

/// Runs a job and returns `(exit code, report)`.
pub fn run(text: &str, flags: &Overrides, env_prime: Option<&str>) -> (i32, Value) {
    let job = parse_job(text);
    let settings = job.as_ref().ok().map(|j| resolve(j, flags, env_prime));
    let outcome = match (&job, &settings) {
        (Err(e), _) => Err(e.clone()),
        (_, Some(Err(e))) => Err(e.clone()),
        (Ok(job), Some(Ok(s))) => commands::dispatch(job.command, &job.params, s),
        (Ok(_), None) => unreachable!("settings resolved for every parsed job"),
    };
    let command = job.as_ref().ok().map(|j| j.command);
    let settings = settings.and_then(Result::ok);
    let (code, report) = match outcome {
        Ok((passed, result)) => (
            if passed { EXIT_OK } else { EXIT_ASSERTION },
            Report {
                version: gt_core::VERSION,
                command,
                settings: settings.as_ref(),
                passed,
                result: Some(result),
                error: None,
            },
        ),
        Err(ref e) => (
            e.code,
            Report {
                version: gt_core::VERSION,
                command,
                settings: settings.as_ref(),
                passed: false,
                result: None,
                error: Some(e),
            },
        ),
    };
    (code, serde_json::to_value(report).expect("reports serialize"))
}

/// Renders with `indent` spaces, or on one line for `indent = 0`.
pub fn render(value: &Value, indent: usize) -> String {
    if indent == 0 {
        return value.to_string();
    }
    let pad = vec![b' '; indent];
    let fmt = serde_json::ser::PrettyFormatter::with_indent(&pad);
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, fmt);
    value.serialize(&mut ser).expect("in-memory write");
    String::from_utf8(out).expect("JSON is UTF-8")
}
