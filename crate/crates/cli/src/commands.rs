//! Subcommand implementations. Each returns the rendered output and the
//! exit code: 0 pass, 1 check failed or numeric fault, 2 usage error.

use std::fs;

use bernlike_core::shape::{default_tolerance, random_convex, random_increasing};
use bernlike_core::{
    check_convex_image, check_monotone_image, check_monotonicity_preserving_basis,
    convergence_table, eval_basis_point, moment_direct, gruss_voronovskaja_estimate, voronovskaja_estimate,
    CheckKind, DataVector, Error, Family, LimitEstimate, MomentTable, SmoothFn, ShapeReport,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{
    check_alpha, BasisArgs, CheckName, Command, ConvergeArgs, Format, MomentsArgs, OperatorArgs,
    ShapeArgs, VoronovskajaArgs,
};
use crate::error::CliError;
use crate::format::{parse_data, to_json, Table};

/// Moments whose two routes differ by more than this fail `moments`.
pub const MOMENT_TOL: f64 = 1e-10;

/// Rendered output of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub exit_code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, exit_code: 0 }
    }
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Basis(args) => cmd_basis(command, args),
        Command::Operator(args) => cmd_operator(command, args),
        Command::Moments(args) => cmd_moments(command, args),
        Command::Converge(args) => cmd_converge(command, args),
        Command::Voronovskaja(args) => cmd_voronovskaja(command, args),
        Command::Shape(args) => cmd_shape(command, args),
    }
}

fn check_grid(grid: usize) -> Result<(), CliError> {
    if grid < 2 {
        return Err(CliError::Usage(format!("--grid must be at least 2, got {grid}")));
    }
    Ok(())
}

fn check_degree(n: usize) -> Result<(), CliError> {
    if n < 1 {
        return Err(CliError::Usage("--degree must be at least 1".into()));
    }
    Ok(())
}

fn grid_points(grid: usize) -> impl Iterator<Item = f64> {
    let last = (grid - 1) as f64;
    (0..grid).map(move |g| g as f64 / last)
}

/// `z,F0,..,Fn` over the grid.
pub fn basis_table(family: &Family, n: usize, grid: usize) -> Result<Table, CliError> {
    let mut table = Table::new(std::iter::once("z".to_string()).chain((0..=n).map(|i| format!("F{i}"))));
    for z in grid_points(grid) {
        let v = eval_basis_point(family, n, z)?;
        let mut row = Vec::with_capacity(n + 2);
        row.push(z);
        row.extend_from_slice(v.values());
        table.push(row);
    }
    Ok(table)
}

#[derive(Serialize)]
struct SweepMember {
    alpha: f64,
    #[serde(flatten)]
    table: Table,
}

pub fn cmd_basis(command: &Command, args: &BasisArgs) -> Result<Outcome, CliError> {
    check_grid(args.grid)?;
    check_degree(args.degree)?;
    let Some(sweep) = args.alpha_sweep else {
        let family = args.family.build()?;
        let table = basis_table(&family, args.degree, args.grid)?;
        return Ok(Outcome::ok(match args.output.format {
            Format::Csv => table.to_csv(),
            Format::Json => to_json(command, &table),
        }));
    };

    let members = sweep
        .values()
        .into_iter()
        .map(|alpha| {
            check_alpha(alpha)?;
            let family = args.family.build_with_alpha(alpha)?;
            Ok(SweepMember { alpha, table: basis_table(&family, args.degree, args.grid)? })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let text = match args.output.format {
        Format::Csv => {
            let mut s = String::new();
            for (i, m) in members.iter().enumerate() {
                if i > 0 {
                    s.push('\n');
                }
                s.push_str(&format!("# alpha={}\n", m.alpha));
                m.table.write_csv(&mut s);
            }
            s
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                tables: &'a [SweepMember],
            }
            to_json(command, Body { tables: &members })
        }
    };
    Ok(Outcome::ok(text))
}

pub fn cmd_operator(command: &Command, args: &OperatorArgs) -> Result<Outcome, CliError> {
    check_grid(args.grid)?;
    check_degree(args.degree)?;
    let family = args.family.build()?;
    let f = args.function.function();
    let n = args.degree;
    let nodes: Vec<f64> = (0..=n).map(|k| f.value(k as f64 / n as f64)).collect();
    let mut table = Table::new(["z", "operator", "f", "abserr"]);
    for z in grid_points(args.grid) {
        let image = eval_basis_point(&family, n, z)?.dot(&nodes);
        let exact = f.value(z);
        table.push(vec![z, image, exact, (image - exact).abs()]);
    }
    Ok(Outcome::ok(render(command, args.output.format, &table)))
}

pub fn cmd_moments(command: &Command, args: &MomentsArgs) -> Result<Outcome, CliError> {
    check_grid(args.grid)?;
    check_alpha(args.alpha)?;
    if args.degree < 2 {
        return Err(CliError::Usage("moments need --degree >= 2".into()));
    }
    if args.powers.is_empty() {
        return Err(CliError::Usage("--powers is empty".into()));
    }
    let max_power = *args.powers.iter().max().unwrap();
    let n = args.degree;
    let mut table = Table::new(["z", "p", "direct", "recurrence", "absdiff"]);
    let mut worst: f64 = 0.0;
    for z in grid_points(args.grid) {
        let recurrence = MomentTable::build(n, max_power, args.alpha, z)?;
        for &p in &args.powers {
            let direct = moment_direct(n, p, args.alpha, z)?.value;
            let rec = recurrence.get(n, p).expect("power within table");
            let diff = (direct - rec).abs();
            worst = worst.max(diff);
            table.push(vec![z, p as f64, direct, rec, diff]);
        }
    }
    let exit_code = if worst <= MOMENT_TOL { 0 } else { 1 };
    let text = match args.output.format {
        Format::Csv => table.to_csv(),
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                tolerance: f64,
                max_absdiff: f64,
                pass: bool,
                #[serde(flatten)]
                table: &'a Table,
            }
            to_json(
                command,
                Body { tolerance: MOMENT_TOL, max_absdiff: worst, pass: exit_code == 0, table: &table },
            )
        }
    };
    Ok(Outcome { text, exit_code })
}

pub fn cmd_converge(command: &Command, args: &ConvergeArgs) -> Result<Outcome, CliError> {
    check_grid(args.grid)?;
    check_degrees(&args.degrees, 1)?;
    let family = args.family.build()?;
    let f = args.function.function();
    let rows = convergence_table(&|t| f.value(t), &family, &args.degrees, args.grid)?;
    let mut table = Table::new(["n", "max_error"]);
    for row in rows {
        table.push(vec![row.degree as f64, row.max_error]);
    }
    Ok(Outcome::ok(render(command, args.output.format, &table)))
}

fn check_degrees(degrees: &[usize], min: usize) -> Result<(), CliError> {
    if degrees.is_empty() || degrees[0] < min || !degrees.windows(2).all(|w| w[0] < w[1]) {
        return Err(CliError::Usage(format!(
            "--degrees must be strictly increasing with every entry >= {min}"
        )));
    }
    Ok(())
}

pub fn cmd_voronovskaja(command: &Command, args: &VoronovskajaArgs) -> Result<Outcome, CliError> {
    check_alpha(args.alpha)?;
    check_degrees(&args.degrees, 2)?;
    if !(args.z > 0.0 && args.z < 1.0) {
        return Err(CliError::Usage(format!("--z must lie in (0, 1), got {}", args.z)));
    }
    let f = args.f.function();
    let estimate: LimitEstimate = if args.gruss {
        let h = args
            .h
            .ok_or_else(|| CliError::Usage("--gruss needs --h".into()))?
            .function();
        gruss_voronovskaja_estimate(&f, &h, args.alpha, args.z, &args.degrees)?
    } else {
        if args.h.is_some() {
            return Err(CliError::Usage("--h is only used with --gruss".into()));
        }
        voronovskaja_estimate(&f, args.alpha, args.z, &args.degrees)?
    };
    let mut table = Table::new(["n", "estimate", "target", "abserr"]);
    for ((n, e), err) in estimate.degree_sequence.iter().zip(&estimate.estimates).zip(estimate.abs_errors()) {
        table.push(vec![*n as f64, *e, estimate.target, err]);
    }
    Ok(Outcome::ok(render(command, args.output.format, &table)))
}

fn render(command: &Command, format: Format, table: &Table) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => to_json(command, table),
    }
}

/// JSON form of a [`ShapeReport`].
#[derive(Debug, Clone, Serialize)]
pub struct ShapeReportJson {
    pub check_kind: &'static str,
    pub pass: bool,
    pub extremal_value: f64,
    pub extremal_z: f64,
    pub tolerance_used: f64,
    pub grid_size: usize,
}

impl From<ShapeReport> for ShapeReportJson {
    fn from(r: ShapeReport) -> Self {
        Self {
            check_kind: match r.check_kind {
                CheckKind::MonotonePreserving => "monotone_preserving",
                CheckKind::MonotoneImage => "monotone_image",
                CheckKind::ConvexImage => "convex_image",
            },
            pass: r.pass,
            extremal_value: r.extremal_value,
            extremal_z: r.extremal_z,
            tolerance_used: r.tolerance_used,
            grid_size: r.grid_size,
        }
    }
}

#[derive(Serialize)]
struct ShapeBody {
    seed: Option<u64>,
    cases: usize,
    failures: usize,
    report: ShapeReportJson,
}

pub fn cmd_shape(command: &Command, args: &ShapeArgs) -> Result<Outcome, CliError> {
    check_grid(args.grid)?;
    let family = args.family.build()?;
    let order = if args.check == CheckName::Convex { 2 } else { 1 };
    let tol = args.tol.unwrap_or_else(|| default_tolerance(&family, order));
    let need_degree = || {
        args.degree
            .ok_or_else(|| CliError::Usage("--degree is required here".into()))
    };

    let mut seed = None;
    let reports: Vec<ShapeReport> = match args.check {
        CheckName::Basis => {
            let n = need_degree()?;
            if n < 2 {
                return Err(CliError::Usage("--check basis needs --degree >= 2".into()));
            }
            vec![check_monotonicity_preserving_basis(&family, n, args.grid, tol)?]
        }
        check => {
            let datasets: Vec<Vec<f64>> = if let Some(count) = args.random {
                let n = need_degree()?;
                check_degree(n)?;
                seed = Some(args.seed);
                let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
                (0..count)
                    .map(|_| {
                        let d = match check {
                            CheckName::Convex => random_convex(&mut rng, n + 1)?,
                            _ => random_increasing(&mut rng, n + 1)?,
                        };
                        Ok(d.values().to_vec())
                    })
                    .collect::<Result<_, Error>>()?
            } else if let Some(f) = args.function {
                let n = need_degree()?;
                check_degree(n)?;
                let f = f.function();
                vec![(0..=n).map(|k| f.value(k as f64 / n as f64)).collect()]
            } else if let Some(path) = &args.data {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
                vec![parse_data(&text)?]
            } else {
                return Err(CliError::Usage("need one of --data, --fn or --random".into()));
            };
            if datasets.is_empty() {
                return Err(CliError::Usage("--random must be at least 1".into()));
            }
            datasets
                .into_iter()
                .map(|values| match check {
                    CheckName::Convex => {
                        check_convex_image(&family, &DataVector::convex(values)?, args.grid, tol)
                    }
                    _ => check_monotone_image(&family, &DataVector::increasing(values)?, args.grid, tol),
                })
                .collect::<Result<_, Error>>()?
        }
    };

    let failures = reports.iter().filter(|r| !r.pass).count();
    let worst = reports
        .iter()
        .copied()
        .reduce(|a, b| if b.extremal_value < a.extremal_value { b } else { a })
        .expect("at least one report");
    let body = ShapeBody { seed, cases: reports.len(), failures, report: worst.into() };
    let exit_code = if failures == 0 { 0 } else { 1 };
    Ok(Outcome { text: to_json(command, body), exit_code })
}
