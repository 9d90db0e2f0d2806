//! External-solver process driver: configurable binary, argument template,
//! timeout, and answer tokens. No solver is bundled; the `PBV_SOLVER`
//! environment variable or a JSON config file names one.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnswerTokens {
    pub sat: String,
    pub unsat: String,
    pub unknown: String,
}

impl Default for AnswerTokens {
    fn default() -> Self {
        AnswerTokens {
            sat: "sat".to_string(),
            unsat: "unsat".to_string(),
            unknown: "unknown".to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolverConfig {
    pub binary: PathBuf,
    /// Argument template; `{file}` is replaced by the input path and must
    /// occur exactly once.
    #[serde(default = "default_args")]
    pub args: Vec<String>,
    #[serde(default = "default_timeout")]
    pub timeout_secs: u64,
    #[serde(default)]
    pub answers: AnswerTokens,
}

fn default_args() -> Vec<String> {
    vec!["{file}".to_string()]
}

fn default_timeout() -> u64 {
    10
}

impl SolverConfig {
    pub fn from_binary(binary: PathBuf) -> SolverConfig {
        SolverConfig {
            binary,
            args: default_args(),
            timeout_secs: default_timeout(),
            answers: AnswerTokens::default(),
        }
    }

    pub fn load(path: &Path) -> Result<SolverConfig> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading solver config {}", path.display()))?;
        let config: SolverConfig = serde_json::from_str(&text)
            .with_context(|| format!("parsing solver config {}", path.display()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.timeout_secs == 0 {
            bail!("solver timeout must be positive");
        }
        let placeholders: usize = self.args.iter().map(|a| a.matches("{file}").count()).sum();
        if placeholders != 1 {
            bail!("argument template must contain the {{file}} placeholder exactly once");
        }
        Ok(())
    }
}

/// The outcome of one solver invocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverAnswer {
    Sat,
    Unsat,
    Unknown,
    Timeout,
    Error,
}

#[derive(Debug, Clone)]
pub struct SolverRun {
    pub answer: SolverAnswer,
    pub wall: Duration,
    pub detail: String,
}

/// Runs the solver on one input file, enforcing the timeout by polling and
/// killing the child. The answer is the first configured token found on a
/// line of standard output.
pub fn run_solver(config: &SolverConfig, input: &Path) -> SolverRun {
    let args: Vec<String> = config
        .args
        .iter()
        .map(|a| a.replace("{file}", &input.display().to_string()))
        .collect();
    let start = Instant::now();
    let child = Command::new(&config.binary)
        .args(&args)
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn();
    let mut child = match child {
        Ok(child) => child,
        Err(e) => {
            return SolverRun {
                answer: SolverAnswer::Error,
                wall: start.elapsed(),
                detail: format!("failed to start {}: {e}", config.binary.display()),
            }
        }
    };
    let deadline = start + Duration::from_secs(config.timeout_secs);
    loop {
        match child.try_wait() {
            Ok(Some(_status)) => break,
            Ok(None) => {
                if Instant::now() >= deadline {
                    let _ = child.kill();
                    let _ = child.wait();
                    return SolverRun {
                        answer: SolverAnswer::Timeout,
                        wall: start.elapsed(),
                        detail: format!("timed out after {}s", config.timeout_secs),
                    };
                }
                std::thread::sleep(Duration::from_millis(5));
            }
            Err(e) => {
                return SolverRun {
                    answer: SolverAnswer::Error,
                    wall: start.elapsed(),
                    detail: format!("wait failed: {e}"),
                }
            }
        }
    }
    let output = match child.wait_with_output() {
        Ok(output) => output,
        Err(e) => {
            return SolverRun {
                answer: SolverAnswer::Error,
                wall: start.elapsed(),
                detail: format!("collecting output failed: {e}"),
            }
        }
    };
    let stdout = String::from_utf8_lossy(&output.stdout);
    for line in stdout.lines() {
        let line = line.trim();
        if line == config.answers.unsat {
            return SolverRun {
                answer: SolverAnswer::Unsat,
                wall: start.elapsed(),
                detail: line.to_string(),
            };
        }
        if line == config.answers.sat {
            return SolverRun {
                answer: SolverAnswer::Sat,
                wall: start.elapsed(),
                detail: line.to_string(),
            };
        }
        if line == config.answers.unknown {
            return SolverRun {
                answer: SolverAnswer::Unknown,
                wall: start.elapsed(),
                detail: line.to_string(),
            };
        }
    }
    SolverRun {
        answer: SolverAnswer::Error,
        wall: start.elapsed(),
        detail: format!(
            "no answer token in output (exit {:?})",
            output.status.code()
        ),
    }
}
