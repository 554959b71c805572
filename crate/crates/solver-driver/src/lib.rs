//! External SMT solver subprocess driver: writes a script to a scratch
//! file, runs a configurable command with a wall-clock budget, and
//! classifies the verdict line.

use std::env;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use thiserror::Error;

/// Environment variable naming the solver command template.
pub const SOLVER_ENV: &str = "MITL_BSC_SOLVER";

/// Polling interval while waiting for the solver.
const POLL: Duration = Duration::from_millis(25);

/// How to run the solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    /// Command and arguments; `{script}` in any argument is replaced by
    /// the script file path, and the path is appended when absent.
    pub command: Vec<String>,
    /// Wall-clock budget in seconds; 0 means no limit.
    pub timeout_secs: u64,
    /// Directory for scratch files; the system temp dir when unset.
    pub workdir: Option<PathBuf>,
}

impl SolverConfig {
    /// Config with a ten-minute budget and default scratch placement.
    pub fn new(command: Vec<String>) -> Self {
        SolverConfig {
            command,
            timeout_secs: 600,
            workdir: None,
        }
    }

    /// The command with `{script}` substituted.
    fn argv(&self, script: &Path) -> Vec<String> {
        let path = script.to_string_lossy();
        let mut argv = Vec::with_capacity(self.command.len() + 1);
        let mut placed = false;
        for arg in &self.command {
            if arg.contains("{script}") {
                placed = true;
                argv.push(arg.replace("{script}", &path));
            } else {
                argv.push(arg.clone());
            }
        }
        if !placed {
            argv.push(path.into_owned());
        }
        argv
    }
}

/// Result of one solver run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverOutcome {
    /// Verdict `sat`; carries the output after the verdict line.
    Sat(String),
    /// Verdict `unsat`: no lasso within this bound.
    NoModelAtBound,
    /// Verdict `unknown`; carries any reason text the solver printed.
    Unknown(String),
    /// The budget ran out and the process was killed.
    TimedOut,
    /// The process exited without a verdict; carries a diagnostic.
    SolverError(String),
}

/// Failures before the solver could produce any verdict.
#[derive(Debug, Error)]
pub enum DriverError {
    /// The configured command is empty.
    #[error("empty solver command")]
    EmptyCommand,
    /// Scratch files or the process itself could not be set up.
    #[error("solver process setup failed: {0}")]
    Io(#[from] std::io::Error),
}

/// Runs `script_text` through the configured solver.
pub fn run(script_text: &str, config: &SolverConfig) -> Result<SolverOutcome, DriverError> {
    if config.command.is_empty() {
        return Err(DriverError::EmptyCommand);
    }
    let dir = match &config.workdir {
        Some(d) => tempfile::Builder::new().prefix("mitl-bsc").tempdir_in(d)?,
        None => tempfile::Builder::new().prefix("mitl-bsc").tempdir()?,
    };
    let script = dir.path().join("script.smt2");
    fs::write(&script, script_text)?;
    let out_path = dir.path().join("stdout");
    let err_path = dir.path().join("stderr");

    let argv = config.argv(&script);
    let mut child = Command::new(&argv[0])
        .args(&argv[1..])
        .stdin(Stdio::null())
        .stdout(fs::File::create(&out_path)?)
        .stderr(fs::File::create(&err_path)?)
        .spawn()?;

    let started = Instant::now();
    let budget = Duration::from_secs(config.timeout_secs);
    let status = loop {
        if let Some(status) = child.try_wait()? {
            break status;
        }
        if config.timeout_secs > 0 && started.elapsed() >= budget {
            child.kill().ok();
            child.wait()?;
            return Ok(SolverOutcome::TimedOut);
        }
        std::thread::sleep(POLL);
    };

    let stdout = fs::read_to_string(&out_path).unwrap_or_default();
    Ok(classify(&stdout, || {
        let stderr = fs::read_to_string(&err_path).unwrap_or_default();
        diagnostic(&argv[0], status.code(), &stdout, &stderr)
    }))
}

/// Splits the output at the first verdict line.
fn classify(stdout: &str, diag: impl FnOnce() -> String) -> SolverOutcome {
    let mut rest = stdout;
    while let Some(nl) = rest.find('\n').map(|i| i + 1).or_else(|| {
        if rest.is_empty() {
            None
        } else {
            Some(rest.len())
        }
    }) {
        let (line, tail) = rest.split_at(nl);
        match line.trim() {
            "sat" => return SolverOutcome::Sat(tail.to_string()),
            "unsat" => return SolverOutcome::NoModelAtBound,
            "unknown" => return SolverOutcome::Unknown(tail.trim().to_string()),
            _ => rest = tail,
        }
        if tail.is_empty() {
            break;
        }
    }
    SolverOutcome::SolverError(diag())
}

fn diagnostic(cmd: &str, code: Option<i32>, stdout: &str, stderr: &str) -> String {
    let status = match code {
        Some(c) => format!("exit code {c}"),
        None => "killed by signal".to_string(),
    };
    let snippet = |s: &str| {
        let t = s.trim();
        let cut: String = t.chars().take(200).collect();
        if cut.len() < t.len() {
            format!("{cut}...")
        } else {
            cut
        }
    };
    let mut msg = format!("{cmd}: no verdict, {status}");
    if !stderr.trim().is_empty() {
        msg.push_str(&format!("; stderr: {}", snippet(stderr)));
    } else if !stdout.trim().is_empty() {
        msg.push_str(&format!("; stdout: {}", snippet(stdout)));
    }
    msg
}

/// Splits a command template on whitespace.
pub fn parse_template(template: &str) -> Vec<String> {
    template.split_whitespace().map(str::to_string).collect()
}

/// Picks the solver command: the explicit template, then the `MITL_BSC_SOLVER`
/// environment variable, then the first known solver on `PATH`, then a
/// bundled Node-based fallback found by walking up from the working
/// directory.
pub fn resolve_solver(explicit: Option<&str>) -> Option<Vec<String>> {
    if let Some(t) = explicit {
        return Some(parse_template(t));
    }
    if let Ok(t) = env::var(SOLVER_ENV) {
        if !t.trim().is_empty() {
            return Some(parse_template(&t));
        }
    }
    for (name, argv) in [
        ("z3", vec!["z3", "-smt2", "{script}"]),
        ("cvc5", vec!["cvc5", "--lang", "smt2", "{script}"]),
        ("mathsat", vec!["mathsat", "{script}"]),
        ("yices-smt2", vec!["yices-smt2", "{script}"]),
    ] {
        if on_path(name) {
            return Some(argv.into_iter().map(str::to_string).collect());
        }
    }
    if let Some(shim) = find_upward("tools/z3-wasm/z3smt2.js") {
        if on_path("node") {
            return Some(vec![
                "node".to_string(),
                shim.to_string_lossy().into_owned(),
                "{script}".to_string(),
            ]);
        }
    }
    None
}

/// Whether `name` is an executable file on `PATH`.
fn on_path(name: &str) -> bool {
    let Some(paths) = env::var_os("PATH") else {
        return false;
    };
    env::split_paths(&paths).any(|p| is_executable(&p.join(name)))
}

fn is_executable(p: &Path) -> bool {
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        fs::metadata(p)
            .map(|m| m.is_file() && m.permissions().mode() & 0o111 != 0)
            .unwrap_or(false)
    }
    #[cfg(not(unix))]
    {
        p.is_file()
    }
}

/// Searches the working directory and its ancestors for `rel`.
fn find_upward(rel: &str) -> Option<PathBuf> {
    let mut dir = env::current_dir().ok()?;
    loop {
        let candidate = dir.join(rel);
        if candidate.is_file() {
            return Some(candidate);
        }
        if !dir.pop() {
            return None;
        }
    }
}
