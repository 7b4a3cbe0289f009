//! Wall-clock comparison of the FFT and direct-sum axis paths.

use std::time::Instant;

use hyperconv::gft::{axis_transform, AxisPath, Direction, Side};
use hyperconv::{AlgebraDim, Error, Field64, GridMode, Grid64, Result};

use crate::setup::{default_roots, default_split};

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub op: String,
    pub m: usize,
    pub n: usize,
    pub path: AxisPath,
    /// Best of the repetitions.
    pub ms: f64,
    /// Slowest listed path over this one.
    pub speedup: f64,
    /// Largest coefficient deviation from the first listed path.
    pub max_gap: f64,
}

pub const CSV_HEADER: &str = "op,m,n,path,ms,speedup,max_gap";

impl BenchRow {
    pub fn csv_line(&self) -> String {
        let path = match self.path {
            AxisPath::Fast => "fast",
            AxisPath::Naive => "naive",
        };
        format!(
            "{},{},{},{path},{:.3},{:.2},{:.3e}",
            self.op, self.m, self.n, self.ms, self.speedup, self.max_gap
        )
    }
}

pub fn parse_paths(text: &str) -> Result<Vec<AxisPath>> {
    text.split(',')
        .map(|s| match s.trim() {
            "fast" => Ok(AxisPath::Fast),
            "naive" => Ok(AxisPath::Naive),
            other => Err(Error::Parse(format!("unknown path {other:?} (fast | naive)"))),
        })
        .collect()
}

/// Times `op` (`gft`: full forward transform, `axis`: one axis) on a random
/// periodic field of `n^m` points.
pub fn run(op: &str, m: usize, n: usize, paths: &[AxisPath], reps: usize, seed: u64) -> Result<Vec<BenchRow>> {
    if paths.is_empty() || reps == 0 {
        return Err(Error::Parse("bench needs at least one path and one repetition".into()));
    }
    let grid = Grid64::cube(m, n, GridMode::Periodic, 1.0)?;
    let dim = AlgebraDim::new(m)?;
    let roots = default_roots(dim);
    let split = default_split(m);
    let plan = hyperconv::Plan64::new(grid.clone(), roots[..split].to_vec(), roots[split..].to_vec())?;
    let field = Field64::random(grid, dim, seed);
    let mut timed = Vec::new();
    for &path in paths {
        let mut best = f64::INFINITY;
        let mut result = None;
        for _ in 0..reps {
            let start = Instant::now();
            let out = match op {
                "gft" => plan.clone().with_path(path).forward(&field)?,
                "axis" => axis_transform(&field, 0, &roots[0], Side::Left, Direction::Forward, path)?,
                other => return Err(Error::Parse(format!("unknown bench op {other:?} (gft | axis)"))),
            };
            best = best.min(start.elapsed().as_secs_f64() * 1e3);
            result = Some(out);
        }
        timed.push((path, best, result.expect("at least one repetition")));
    }
    let slowest = timed.iter().fold(0.0f64, |acc, t| acc.max(t.1));
    let reference = timed[0].2.clone();
    Ok(timed
        .into_iter()
        .map(|(path, ms, out)| BenchRow {
            op: op.to_string(),
            m,
            n,
            path,
            ms,
            speedup: slowest / ms,
            max_gap: out.max_gap(&reference),
        })
        .collect())
}
