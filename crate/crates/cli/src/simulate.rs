use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use tswarp::io::{load_series, read_text, write_mask, write_pairs, write_series};
use tswarp::simulate::{
    build_components, build_global_affine, component_instance, global_affine_instance, smooth_series, ComponentConfig,
    ComponentSample, GlobalAffineConfig, GlobalAffineSample, TrueAlignment, WarpConfig,
};
use tswarp::{Error, TimeSeries};

use crate::error::{AppError, AppResult};
use crate::output::OutDir;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    /// Warp, rescale and perturb one base series.
    GlobalAffine,
    /// Superpose windowed components in two series.
    Component,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(required_unless_present = "replay")]
    pub kind: Option<Kind>,
    /// Number of pairs to generate.
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    /// Series length (global-affine: length of the generated base when no --base is given).
    #[arg(long, default_value_t = 400)]
    pub n: usize,
    /// Base series for global-affine pairs.
    #[arg(long)]
    pub base: Option<PathBuf>,
    /// Warping level P_w: P_match = 1 - P_w, deletions and insertions P_w / 2 each.
    #[arg(long = "warping-level", conflicts_with_all = ["p_match", "p_delete", "p_insert"])]
    pub warping_level: Option<f64>,
    #[arg(long = "p-match")]
    pub p_match: Option<f64>,
    #[arg(long = "p-delete")]
    pub p_delete: Option<f64>,
    #[arg(long = "p-insert")]
    pub p_insert: Option<f64>,
    /// Scaling range as `lo,hi` (default 0.2,5).
    #[arg(long = "c-range", value_parser = parse_range)]
    pub c_range: Option<(f64, f64)>,
    /// Offset range as `lo,hi` (default: plus/minus the base standard deviation).
    #[arg(long = "e-range", value_parser = parse_range)]
    pub e_range: Option<(f64, f64)>,
    /// Noise standard deviation as a multiple of the base standard deviation.
    #[arg(long = "noise-level", default_value_t = 0.0)]
    pub noise_level: f64,
    /// Number of components per series.
    #[arg(long, default_value_t = 4)]
    pub components: usize,
    /// Standard deviation of the component amplitudes (mean 1).
    #[arg(long = "amp-sigma", default_value_t = 0.5)]
    pub amp_sigma: f64,
    /// Rebuild every file from a manifest instead of sampling.
    #[arg(long)]
    pub replay: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(',').ok_or_else(|| format!("expected lo,hi, got {s:?}"))?;
    let parse = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    Ok((parse(lo)?, parse(hi)?))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Sample {
    GlobalAffine(GlobalAffineSample),
    Component(ComponentSample),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct InstanceRecord {
    index: usize,
    s: String,
    t: String,
    truth: String,
    mask: Option<String>,
    sample: Sample,
}

/// Everything needed to rebuild the generated files without drawing again.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct Manifest {
    kind: Kind,
    seed: u64,
    n: usize,
    base: Option<Vec<f64>>,
    warp: Option<WarpConfig>,
    affine: Option<GlobalAffineConfig>,
    components: Option<ComponentConfig>,
    instances: Vec<InstanceRecord>,
}

fn warp_config(args: &SimulateArgs) -> AppResult<WarpConfig> {
    if let Some(p) = args.warping_level {
        return Ok(WarpConfig::from_warping_level(p)?);
    }
    let d = WarpConfig::default();
    Ok(WarpConfig::new(
        args.p_match.unwrap_or(d.p_match),
        args.p_delete.unwrap_or(d.p_delete),
        args.p_insert.unwrap_or(d.p_insert),
    )?)
}

fn file_names(index: usize, width: usize, with_mask: bool) -> (String, String, String, Option<String>) {
    (
        format!("pair_{index:0width$}_s.txt"),
        format!("pair_{index:0width$}_t.txt"),
        format!("truth_{index:0width$}.csv"),
        with_mask.then(|| format!("mask_{index:0width$}.txt")),
    )
}

fn record(index: usize, width: usize, sample: Sample) -> InstanceRecord {
    let (s, t, truth, mask) = file_names(index, width, matches!(sample, Sample::Component(_)));
    InstanceRecord {
        index,
        s,
        t,
        truth,
        mask,
        sample,
    }
}

fn sample_manifest(args: &SimulateArgs, kind: Kind, seed: u64) -> AppResult<Manifest> {
    if args.count == 0 {
        return Err(AppError::Usage("--count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = args.count.to_string().len().max(3);
    match kind {
        Kind::GlobalAffine => {
            let base = match &args.base {
                Some(path) => load_series(path)?,
                None => smooth_series(args.n, &mut rng)?,
            };
            let sigma = base.std_dev();
            let affine = GlobalAffineConfig::new(
                args.c_range.unwrap_or((0.2, 5.0)),
                args.e_range.unwrap_or((-sigma, sigma)),
                args.noise_level * sigma,
            )?;
            let warp = warp_config(args)?;
            let instances = (1..=args.count)
                .map(|k| {
                    let inst = global_affine_instance(&base, &warp, &affine, &mut rng)?;
                    Ok(record(k, width, Sample::GlobalAffine(inst.sample)))
                })
                .collect::<AppResult<Vec<_>>>()?;
            Ok(Manifest {
                kind,
                seed,
                n: base.len(),
                base: Some(base.into_values()),
                warp: Some(warp),
                affine: Some(affine),
                components: None,
                instances,
            })
        }
        Kind::Component => {
            let cfg = ComponentConfig::paper_defaults(args.n, args.components, args.amp_sigma);
            cfg.validate()?;
            let instances = (1..=args.count)
                .map(|k| {
                    let inst = component_instance(&cfg, &mut rng)?;
                    Ok(record(k, width, Sample::Component(inst.sample)))
                })
                .collect::<AppResult<Vec<_>>>()?;
            Ok(Manifest {
                kind,
                seed,
                n: args.n,
                base: None,
                warp: None,
                affine: None,
                components: Some(cfg),
                instances,
            })
        }
    }
}

fn build(manifest: &Manifest, inst: &InstanceRecord) -> AppResult<(TimeSeries, TimeSeries, TrueAlignment)> {
    match &inst.sample {
        Sample::GlobalAffine(sample) => {
            let base = manifest
                .base
                .clone()
                .ok_or_else(|| Error::Data("manifest has global-affine samples but no base series".into()))?;
            let s = TimeSeries::new(base)?;
            let (t, truth) = build_global_affine(&s, sample)?;
            Ok((s, t, truth))
        }
        Sample::Component(sample) => Ok(build_components(manifest.n, sample)?),
    }
}

fn write_all(manifest: &Manifest, out: &OutDir) -> AppResult<()> {
    for inst in &manifest.instances {
        let (s, t, truth) = build(manifest, inst)?;
        out.write(&inst.s, &write_series(&s))?;
        out.write(&inst.t, &write_series(&t))?;
        out.write(&inst.truth, &write_pairs(truth.pairs()))?;
        if let (Some(name), Some(mask)) = (&inst.mask, truth.component_mask()) {
            out.write(name, &write_mask(mask))?;
        }
    }
    out.json("manifest.json", manifest)?;
    Ok(())
}

pub fn run(args: &SimulateArgs, seed: u64, out: &OutDir) -> AppResult<()> {
    let manifest = match (&args.replay, args.kind) {
        (Some(path), _) => serde_json::from_str(&read_text(path)?)
            .map_err(|e| Error::Data(format!("cannot read manifest {}: {e}", path.display())))?,
        (None, Some(kind)) => sample_manifest(args, kind, seed)?,
        (None, None) => return Err(AppError::Usage("a simulation kind or --replay is required".into())),
    };
    write_all(&manifest, out)?;
    println!(
        "wrote {} {} pairs of length {}",
        manifest.instances.len(),
        match manifest.kind {
            Kind::GlobalAffine => "global-affine",
            Kind::Component => "component",
        },
        manifest.n
    );
    Ok(())
}
