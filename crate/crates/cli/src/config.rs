//! Run configuration: defaults, then a flat `key = value` file, then flags.

use std::path::{Path, PathBuf};

use rdcn::flow::DEFAULT_LP_TOL;
use rdcn::throughput::DEFAULT_STEP;
use rdcn::NetworkParams;

use crate::CliError;

pub const OUT_DIR_ENV: &str = "RDCN_OUT_DIR";

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub n: usize,
    /// Defaults to `n` when unset.
    pub u: Option<usize>,
    pub c: f64,
    pub seed: u64,
    pub step: f64,
    pub tol: f64,
    pub out_dir: PathBuf,
    pub jobs: usize,
    pub solver: String,
    /// Extra CSV matrices in bits/s added to sweeps.
    pub matrices: Vec<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 16,
            u: None,
            c: 25e9,
            seed: 0,
            step: DEFAULT_STEP,
            tol: DEFAULT_LP_TOL,
            out_dir: std::env::var_os(OUT_DIR_ENV)
                .map(PathBuf::from)
                .unwrap_or_else(|| PathBuf::from(".")),
            jobs: 0,
            solver: "highs".into(),
            matrices: Vec::new(),
        }
    }
}

/// Values given on the command line; `None` leaves the lower layer in place.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub n: Option<usize>,
    pub u: Option<usize>,
    pub c: Option<f64>,
    pub seed: Option<u64>,
    pub step: Option<f64>,
    pub tol: Option<f64>,
    pub out_dir: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub solver: Option<String>,
    pub matrices: Vec<PathBuf>,
}

fn parse<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::input(format!("config line {line}: invalid value {value:?} for {key}")))
}

impl RunConfig {
    /// Applies a config file; `#` starts a comment, unknown keys are errors.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("reading config {}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .map(|(a, b)| (a.trim(), b.trim()))
                .ok_or_else(|| CliError::input(format!("config line {line}: expected key = value")))?;
            match key {
                "n" => self.n = parse(key, value, line)?,
                "u" => self.u = Some(parse(key, value, line)?),
                "c" => self.c = parse(key, value, line)?,
                "seed" => self.seed = parse(key, value, line)?,
                "step" => self.step = parse(key, value, line)?,
                "tol" => self.tol = parse(key, value, line)?,
                "out_dir" => self.out_dir = base.join(value),
                "jobs" => self.jobs = parse(key, value, line)?,
                "solver" => self.solver = value.to_string(),
                "matrix" => self.matrices.push(base.join(value)),
                other => return Err(CliError::input(format!("config line {line}: unknown key {other:?}"))),
            }
        }
        Ok(())
    }

    pub fn apply(&mut self, o: &Overrides) {
        macro_rules! take {
            ($($f:ident),*) => { $( if let Some(v) = o.$f.clone() { self.$f = v; } )* };
        }
        take!(n, c, seed, step, tol, out_dir, jobs, solver);
        if o.u.is_some() {
            self.u = o.u;
        }
        self.matrices.extend(o.matrices.iter().cloned());
    }

    pub fn params(&self) -> Result<NetworkParams, CliError> {
        if !(self.step > 0.0 && self.step < 1.0) {
            return Err(CliError::input(format!("step must lie in (0, 1), got {}", self.step)));
        }
        if !(self.tol > 0.0) {
            return Err(CliError::input(format!("tol must be positive, got {}", self.tol)));
        }
        NetworkParams::new(self.n, self.u.unwrap_or(self.n), self.c).map_err(CliError::from)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file_override_defaults() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        std::fs::write(&path, "# sweep\nn = 8\nu = 2 # two switches\nseed=5\nmatrix = a.csv\n").unwrap();
        let mut cfg = RunConfig::default();
        cfg.apply_file(&path).unwrap();
        cfg.apply(&Overrides {
            seed: Some(9),
            ..Overrides::default()
        });
        assert_eq!((cfg.n, cfg.u, cfg.seed), (8, Some(2), 9));
        assert_eq!(cfg.matrices, vec![dir.path().join("a.csv")]);
        assert_eq!(cfg.c, 25e9);
    }

    #[test]
    fn bad_lines_are_input_errors() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.cfg");
        std::fs::write(&path, "colour = blue\n").unwrap();
        assert_eq!(RunConfig::default().apply_file(&path).unwrap_err().code, 2);
        std::fs::write(&path, "n 16\n").unwrap();
        assert_eq!(RunConfig::default().apply_file(&path).unwrap_err().code, 2);
    }
}
