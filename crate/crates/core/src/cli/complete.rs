use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use super::{CliError, CliResult, CompleteArgs};
use crate::imaging::{inpaint, load_mask_png, load_png, load_qmsk, random_mask, save_png, QualityReport};
use crate::quaternion::Quaternion;
use crate::solvers::{IterationRecord, Mask, Method, SolverConfig};

pub const MANIFEST_SCHEMA: u32 = 1;
pub const METRICS_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MaskSource {
    File { path: PathBuf },
    Generated { missing_ratio: f64, seed: u64 },
}

/// Everything needed to rerun a `complete` invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema: u32,
    pub version: String,
    pub config: SolverConfig,
    pub input: PathBuf,
    pub output: PathBuf,
    pub metrics: Option<PathBuf>,
    pub mask: MaskSource,
    pub started_unix_ms: u64,
    pub finished_unix_ms: u64,
}

#[derive(Serialize)]
struct Metrics<'a> {
    schema: u32,
    method: Method,
    rank: usize,
    #[serde(flatten)]
    quality: QualityReport,
    iterations: usize,
    converged: bool,
    observed: usize,
    missing_ratio: f64,
    seconds: f64,
    history: &'a [IterationRecord],
}

/// Config file keys; every key is optional and unknown keys are rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    method: Option<Method>,
    rank: Option<usize>,
    mu0: Option<f64>,
    rho: Option<f64>,
    mu_max: Option<f64>,
    beta: Option<f64>,
    varsigma: Option<f64>,
    v: Option<usize>,
    tol: Option<f64>,
    max_iter: Option<usize>,
    qdct_axis: Option<Quaternion>,
    seed: Option<u64>,
}

fn unix_ms() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

fn absolute(p: &Path) -> PathBuf {
    std::path::absolute(p).unwrap_or_else(|_| p.to_path_buf())
}

fn parse_axis(s: &str) -> CliResult<Quaternion> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::usage(format!("--qdct-axis expects x,y,z, got {s:?}")))?;
    match parts.as_slice() {
        [x, y, z] => Ok(Quaternion::pure(*x, *y, *z)),
        _ => Err(CliError::usage(format!("--qdct-axis expects x,y,z, got {s:?}"))),
    }
}

fn load_config_file(path: &Path) -> CliResult<ConfigFile> {
    let text = fs::read_to_string(path)?;
    toml::from_str(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))
}

/// Flag > config file > per-method default.
fn resolve_config(args: &CompleteArgs) -> CliResult<SolverConfig> {
    let file = match &args.config {
        Some(p) => load_config_file(p)?,
        None => ConfigFile::default(),
    };
    let method = match &args.method {
        Some(m) => m.parse::<Method>().map_err(|e| CliError::usage(e.to_string()))?,
        None => file
            .method
            .ok_or_else(|| CliError::usage("--method is required (flag or config file)"))?,
    };
    let rank = args
        .rank
        .or(file.rank)
        .ok_or_else(|| CliError::usage("--rank is required (flag or config file)"))?;
    let mut cfg = SolverConfig::new(method, rank);

    macro_rules! overlay {
        ($($field:ident),*) => {
            $(
                if let Some(v) = file.$field {
                    cfg.$field = v;
                }
                if let Some(v) = args.$field {
                    cfg.$field = v;
                }
            )*
        };
    }
    overlay!(mu0, rho, mu_max, beta, varsigma, v, tol, max_iter, seed);

    if let Some(a) = file.qdct_axis {
        cfg.qdct_axis = a;
    }
    if let Some(a) = &args.qdct_axis {
        cfg.qdct_axis = parse_axis(a)?;
    }
    // typed decimals are never exactly unit; a zero axis is left for validation
    let n = cfg.qdct_axis.modulus();
    if n > 0.0 && n.is_finite() {
        cfg.qdct_axis = cfg.qdct_axis * (1.0 / n);
    }
    Ok(cfg)
}

fn manifest_default(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn load_mask_file(path: &Path) -> CliResult<Mask> {
    let is_qmsk = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("qmsk"));
    Ok(if is_qmsk { load_qmsk(path)? } else { load_mask_png(path)? })
}

fn build_mask(source: &MaskSource, rows: usize, cols: usize) -> CliResult<Mask> {
    let mask = match source {
        MaskSource::File { path } => load_mask_file(path)?,
        MaskSource::Generated { missing_ratio, seed } => random_mask(rows, cols, *missing_ratio, *seed)?,
    };
    if mask.shape() != (rows, cols) {
        return Err(CliError::config(format!(
            "mask is {}x{} but the image is {rows}x{cols}",
            mask.rows(),
            mask.cols()
        )));
    }
    Ok(mask)
}

fn replay_conflicts(a: &CompleteArgs) -> bool {
    a.method.is_some()
        || a.input.is_some()
        || a.mask.is_some()
        || a.mr.is_some()
        || a.seed.is_some()
        || a.config.is_some()
        || a.rank.is_some()
        || a.mu0.is_some()
        || a.rho.is_some()
        || a.mu_max.is_some()
        || a.beta.is_some()
        || a.varsigma.is_some()
        || a.v.is_some()
        || a.tol.is_some()
        || a.max_iter.is_some()
        || a.qdct_axis.is_some()
}

/// Settings of one run, before any file is read.
struct Plan {
    config: SolverConfig,
    input: PathBuf,
    output: PathBuf,
    metrics: Option<PathBuf>,
    manifest: PathBuf,
    mask: MaskSource,
}

fn plan_from_args(args: CompleteArgs) -> CliResult<Plan> {
    if let Some(replay) = &args.replay {
        if replay_conflicts(&args) {
            return Err(CliError::usage(
                "--replay only combines with --out, --metrics and --manifest",
            ));
        }
        let text = fs::read_to_string(replay)?;
        let m: RunManifest = serde_json::from_str(&text)
            .map_err(|e| CliError::config(format!("{}: {e}", replay.display())))?;
        let output = args.out.map(|p| absolute(&p)).unwrap_or(m.output);
        let manifest = args
            .manifest
            .map(|p| absolute(&p))
            .unwrap_or_else(|| manifest_default(&output));
        return Ok(Plan {
            config: m.config,
            input: m.input,
            metrics: args.metrics.map(|p| absolute(&p)).or(m.metrics),
            output,
            manifest,
            mask: m.mask,
        });
    }

    let mut config = resolve_config(&args)?;
    let mask = match (&args.mask, args.mr) {
        (Some(p), _) => MaskSource::File { path: absolute(p) },
        (None, Some(mr)) => {
            if !(0.0..=1.0).contains(&mr) {
                return Err(CliError::config(format!("--mr must lie in [0, 1], got {mr}")));
            }
            MaskSource::Generated {
                missing_ratio: mr,
                seed: config.seed,
            }
        }
        (None, None) => return Err(CliError::usage("either --mask or --mr is required")),
    };
    if let MaskSource::File { .. } = mask {
        // the seed only drives generated masks
        config.seed = args.seed.unwrap_or(config.seed);
    }
    let output = absolute(args.out.as_deref().expect("clap requires --out"));
    let manifest = args
        .manifest
        .map(|p| absolute(&p))
        .unwrap_or_else(|| manifest_default(&output));
    Ok(Plan {
        config,
        input: absolute(args.input.as_deref().expect("clap requires --in")),
        output,
        metrics: args.metrics.map(|p| absolute(&p)),
        manifest,
        mask,
    })
}

pub(super) fn cmd_complete(args: CompleteArgs) -> CliResult<()> {
    let plan = plan_from_args(args)?;
    let started = unix_ms();

    let img = load_png(&plan.input)?;
    let (rows, cols) = (img.height(), img.width());
    plan.config.validate(rows, cols)?;
    let mask = build_mask(&plan.mask, rows, cols)?;

    let (restored, report) = inpaint(&img, &mask, &plan.config)?;
    save_png(&restored, &plan.output)?;
    let quality = QualityReport::compute(&img, &restored.quantized())?;

    if let Some(path) = &plan.metrics {
        let metrics = Metrics {
            schema: METRICS_SCHEMA,
            method: plan.config.method,
            rank: plan.config.rank,
            quality,
            iterations: report.iterations,
            converged: report.converged,
            observed: mask.observed_count(),
            missing_ratio: mask.missing_ratio(),
            seconds: report.total_seconds(),
            history: &report.history,
        };
        let json = serde_json::to_string_pretty(&metrics).map_err(|e| CliError::config(e.to_string()))?;
        fs::write(path, json)?;
    }

    let manifest = RunManifest {
        schema: MANIFEST_SCHEMA,
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: plan.config.clone(),
        input: plan.input,
        output: plan.output,
        metrics: plan.metrics,
        mask: plan.mask,
        started_unix_ms: started,
        finished_unix_ms: unix_ms(),
    };
    let json = serde_json::to_string_pretty(&manifest).map_err(|e| CliError::config(e.to_string()))?;
    fs::write(&plan.manifest, json)?;

    let psnr = if quality.psnr_db.is_infinite() {
        "inf".to_string()
    } else {
        format!("{:.3}", quality.psnr_db)
    };
    println!(
        "{} rank={} iterations={} converged={} psnr_db={} ssim={:.4}",
        plan.config.method, plan.config.rank, report.iterations, report.converged, psnr, quality.ssim
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_beats_file_beats_default() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.toml");
        fs::write(&path, "method = \"qlnm-qqr-sr\"\nrank = 7\nmu0 = 0.25\nrho = 1.2\n").unwrap();
        let args = CompleteArgs {
            config: Some(path),
            rho: Some(1.1),
            ..Default::default()
        };
        let cfg = resolve_config(&args).unwrap();
        assert_eq!(cfg.method, Method::QlnmQqrSr);
        assert_eq!(cfg.rank, 7);
        assert_eq!(cfg.mu0, 0.25);
        assert_eq!(cfg.rho, 1.1);
        assert_eq!(cfg.beta, 0.5);
    }

    #[test]
    fn unknown_config_key_is_invalid() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.toml");
        fs::write(&path, "rank = 3\nlambda = 2\n").unwrap();
        let args = CompleteArgs {
            config: Some(path),
            method: Some("qlnm-qqr".into()),
            ..Default::default()
        };
        assert_eq!(resolve_config(&args).unwrap_err().code, super::super::EXIT_CONFIG);
    }

    #[test]
    fn axis_parsing() {
        assert_eq!(parse_axis("0,1,0").unwrap(), Quaternion::J);
        assert!(parse_axis("1,2").is_err());
    }
}
