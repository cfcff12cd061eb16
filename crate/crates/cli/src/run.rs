use std::io::Write;
use std::path::PathBuf;

use oqf_core::gaussian::{
    entropy, evolve_state_with_tolerance, satisfies_gksl, steady_state, GaussianState,
    LiouvillianParams, PHYSICALITY_TOL,
};
use oqf_core::matrix::CMatrix;
use oqf_core::skin::{featureless_profile, steady_profile};
use oqf_core::verify::run_suite;

use crate::config::JobConfig;
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Evolve,
    Steady,
    Skin,
    Verify,
}

/// Command-line overrides.
#[derive(Debug, Clone, Default)]
pub struct Options {
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Int(k) => k.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        let io = |e: csv::Error| CliError::Output(e.to_string());
        w.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(io)?;
        }
        w.flush().map_err(|e| CliError::Output(e.to_string()))
    }

    pub fn to_csv_string(&self) -> Result<String, CliError> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| CliError::Output(e.to_string()))
    }
}

/// A finished job. `failures` counts verification rows over tolerance.
#[derive(Debug, Clone)]
pub struct Report {
    pub table: Table,
    pub failures: usize,
}

pub fn execute(cmd: Command, cfg: &JobConfig, opts: &Options) -> Result<Report, CliError> {
    if let Some(t) = opts.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Config(format!("--tol must be positive, got {t}")));
        }
    }
    let table = match cmd {
        Command::Evolve => evolve(cfg, opts)?,
        Command::Steady => steady(cfg, opts)?,
        Command::Skin => skin(cfg, opts)?,
        Command::Verify => return verify(cfg, opts),
    };
    Ok(Report { table, failures: 0 })
}

/// Runs the job and writes its CSV to `--out`, the configured output, or
/// stdout. The table is written even when verification rows fail.
pub fn run(cmd: Command, cfg: &JobConfig, opts: &Options) -> Result<(), CliError> {
    let report = execute(cmd, cfg, opts)?;
    match opts.out.as_ref().or(cfg.output.as_ref()) {
        Some(path) => {
            let file = std::fs::File::create(path)
                .map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
            report.table.write_csv(std::io::BufWriter::new(file))?;
        }
        None => report.table.write_csv(std::io::stdout().lock())?,
    }
    if report.failures > 0 {
        return Err(CliError::Verification {
            failed: report.failures,
            total: report.table.rows.len(),
        });
    }
    Ok(())
}

fn physical_params(cfg: &JobConfig, tol: f64) -> Result<LiouvillianParams, CliError> {
    let p = cfg.liouvillian()?;
    if !satisfies_gksl(p.a(), p.m(), tol) {
        return Err(CliError::Physics(
            "generator violates O <= M <= -A - A^dagger; M must be Hermitian positive and \
             dominated by the damping -A - A^dagger"
                .into(),
        ));
    }
    Ok(p)
}

fn physicality_tol(cfg: &JobConfig, opts: &Options) -> f64 {
    opts.tol
        .or(cfg.tolerances.physicality)
        .unwrap_or(PHYSICALITY_TOL)
}

/// `x_j_k_re, x_j_k_im` in column-stacking order, one-based.
fn matrix_columns(prefix: &str, n: usize) -> Vec<String> {
    let mut cols = Vec::with_capacity(2 * n * n);
    for k in 1..=n {
        for j in 1..=n {
            cols.push(format!("{prefix}_{j}_{k}_re"));
            cols.push(format!("{prefix}_{j}_{k}_im"));
        }
    }
    cols
}

fn matrix_cells(m: &CMatrix) -> impl Iterator<Item = Cell> + '_ {
    m.iter().flat_map(|z| [Cell::Num(z.re), Cell::Num(z.im)])
}

fn state_header(prefix: &str, n: usize) -> Vec<String> {
    let mut header = matrix_columns(prefix, n);
    header.extend((1..=n).map(|j| format!("n_{j}")));
    header.push("entropy".into());
    header
}

fn state_cells(s: &GaussianState) -> Vec<Cell> {
    let mut cells: Vec<Cell> = matrix_cells(s.r()).collect();
    cells.extend(s.occupations().into_iter().map(Cell::Num));
    cells.push(Cell::Num(entropy(s)));
    cells
}

fn evolve(cfg: &JobConfig, opts: &Options) -> Result<Table, CliError> {
    let tol = physicality_tol(cfg, opts);
    let p = physical_params(cfg, tol)?;
    let n = p.dim();
    let times = cfg.sample_times()?;
    let start = cfg.initial_state(n)?;
    if start.dim() != n {
        return Err(CliError::Config(format!(
            "initial.r is {}x{} but the model has {n} modes",
            start.dim(),
            start.dim()
        )));
    }
    let mut header = vec!["t".to_string()];
    header.extend(state_header("r", n));
    let rows = times
        .iter()
        .map(|&t| {
            let s = evolve_state_with_tolerance(&p, &start, t, tol)?;
            let mut row = vec![Cell::Num(t)];
            row.extend(state_cells(&s));
            Ok(row)
        })
        .collect::<Result<_, CliError>>()?;
    Ok(Table { header, rows })
}

fn steady(cfg: &JobConfig, opts: &Options) -> Result<Table, CliError> {
    let p = physical_params(cfg, physicality_tol(cfg, opts))?;
    let s = steady_state(&p)?;
    Ok(Table {
        header: state_header("m", p.dim()),
        rows: vec![state_cells(&s)],
    })
}

fn skin(cfg: &JobConfig, opts: &Options) -> Result<Table, CliError> {
    if opts.tol.is_some() {
        return Err(CliError::Config("--tol is not used by the skin command".into()));
    }
    let (p, delta) = cfg.skin_params()?;
    let profile = steady_profile(&p)?;
    let flat = featureless_profile(&p, delta)?;
    let header = [
        "site",
        "occupation",
        "featureless_occupation",
        "kappa",
        "x",
        "log_slope",
        "delta",
    ]
    .map(String::from)
    .to_vec();
    let rows = profile
        .occupations
        .iter()
        .zip(&flat)
        .enumerate()
        .map(|(j, (&occ, &f))| {
            vec![
                Cell::Int(j as u64 + 1),
                Cell::Num(occ),
                Cell::Num(f),
                Cell::Num(p.kappa()),
                Cell::Num(p.x()),
                Cell::Num(profile.log_slope),
                Cell::Num(delta),
            ]
        })
        .collect();
    Ok(Table { header, rows })
}

fn verify(cfg: &JobConfig, opts: &Options) -> Result<Report, CliError> {
    let n = cfg.verify_modes();
    let seed = opts.seed.or(cfg.seed).unwrap_or(0);
    let tol = opts.tol.or(cfg.tolerances.verify);
    let results = run_suite(n, seed, tol)?;
    let header = ["name", "identity", "residual", "tolerance", "passed", "n", "seed"]
        .map(String::from)
        .to_vec();
    let failures = results.iter().filter(|r| !r.passed()).count();
    let rows = results
        .into_iter()
        .map(|r| {
            vec![
                Cell::Text(r.name.into()),
                Cell::Text(r.identity.into()),
                Cell::Num(r.residual),
                Cell::Num(r.tolerance),
                Cell::Bool(r.passed()),
                Cell::Int(n as u64),
                Cell::Int(seed),
            ]
        })
        .collect();
    Ok(Report {
        table: Table { header, rows },
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_use_seventeen_significant_digits() {
        assert_eq!(Cell::Num(0.3).render(), "2.9999999999999999e-1");
        assert_eq!(Cell::Num(-1.0).render(), "-1.0000000000000000e0");
        let x = 1.0 / 3.0;
        assert_eq!(Cell::Num(x).render().parse::<f64>().unwrap(), x);
    }

    #[test]
    fn csv_quotes_text_and_uses_lf() {
        let table = Table {
            header: vec!["a".into(), "b".into()],
            rows: vec![vec![Cell::Text("x, y".into()), Cell::Bool(true)]],
        };
        assert_eq!(table.to_csv_string().unwrap(), "a,b\n\"x, y\",true\n");
    }

    #[test]
    fn matrix_columns_follow_column_stacking() {
        assert_eq!(
            matrix_columns("r", 2),
            ["r_1_1_re", "r_1_1_im", "r_2_1_re", "r_2_1_im", "r_1_2_re", "r_1_2_im", "r_2_2_re", "r_2_2_im"]
        );
    }
}
