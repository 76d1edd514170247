use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::{BenchArgs, CliError, CliResult, MaskArgs, SynthArgs};
use crate::imaging::{random_mask, save_mask_png, save_qmsk};
use crate::qmat;
use crate::solvers::{complete, Method, SolverConfig};
use crate::synth::{low_rank, qdct_sparse_low_rank};
use crate::transforms::QdctContext;

/// Missing ratio of the benchmark instances.
pub const BENCH_MISSING_RATIO: f64 = 0.5;

fn parse_size(s: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::usage(format!("--size expects N or ROWSxCOLS, got {s:?}"));
    let dims: Vec<usize> = s
        .split(['x', 'X'])
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    let (rows, cols) = match dims.as_slice() {
        [n] => (*n, *n),
        [r, c] => (*r, *c),
        _ => return Err(bad()),
    };
    if rows == 0 || cols == 0 {
        return Err(bad());
    }
    Ok((rows, cols))
}

fn with_extension(stem: &Path, ext: &str) -> PathBuf {
    let mut s = stem.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

pub(super) fn cmd_mask(args: MaskArgs) -> CliResult<()> {
    let (rows, cols) = parse_size(&args.size)?;
    if !(0.0..=1.0).contains(&args.mr) {
        return Err(CliError::config(format!("--mr must lie in [0, 1], got {}", args.mr)));
    }
    let mask = random_mask(rows, cols, args.mr, args.seed)?;
    save_mask_png(&mask, with_extension(&args.out, "png"))?;
    save_qmsk(&mask, with_extension(&args.out, "qmsk"))?;
    println!("rows={rows} cols={cols} observed={} missing={}", mask.observed_count(), mask.missing_count());
    Ok(())
}

pub(super) fn cmd_synth(args: SynthArgs) -> CliResult<()> {
    if !args.scale.is_finite() {
        return Err(CliError::config("--scale must be finite"));
    }
    let m = match args.qdct_density {
        Some(density) => {
            let ctx = QdctContext::new(args.rows, args.cols);
            qdct_sparse_low_rank(args.rows, args.cols, args.rank, density, args.seed, &ctx)?
        }
        None => low_rank(args.rows, args.cols, args.rank, args.seed)?,
    };
    qmat::save(&m.scale(args.scale), &args.out)?;
    Ok(())
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Median wall time of one QLNM-QQR iteration at each size.
pub(super) fn cmd_bench(args: BenchArgs) -> CliResult<()> {
    if args.iters == 0 {
        return Err(CliError::config("--iters must be positive"));
    }
    let mut csv = String::from("size,median_iter_ms\n");
    for &n in &args.sizes {
        let m = low_rank(n, n, args.rank.min(n), args.seed)?;
        let mask = random_mask(n, n, BENCH_MISSING_RATIO, args.seed)?;
        let mut cfg = SolverConfig::new(Method::QlnmQqr, args.rank);
        cfg.tol = 0.0;
        cfg.max_iter = args.iters;
        let report = complete(&mask.project(&m)?, &mask, &cfg)?;
        let ms = median(report.history.iter().map(|h| h.seconds * 1e3).collect());
        writeln!(csv, "{n},{ms:.4}").expect("writing to a String");
        eprintln!("size {n}: {ms:.3} ms per iteration");
    }
    match &args.out {
        Some(path) => fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}
