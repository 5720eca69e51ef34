use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use arcvfi::imgio::{self, MaxMagnitude};
use arcvfi::metrics;
use arcvfi::scene::{Motion, Pattern, Texture};
use arcvfi::{
    ground_truth_fields, ground_truth_frame, interpolate, intermediate_flow, ArcConfig, Error, FlowField,
    Image, Inputs, SceneSpec, SigmaMap, Trajectory, DEFAULT_SIGMA_THRESHOLD,
};

#[derive(Parser)]
#[command(name = "arcvfi", version, about = "Arc-trajectory video frame interpolation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize the frame at time t from two frames, flows and curvature maps.
    Interpolate(InterpolateArgs),
    /// Render a synthetic rigid-motion scene with ground-truth fields.
    GenScene(GenSceneArgs),
    /// Print PSNR, SSIM, IE and Charbonnier between two images.
    Eval(EvalArgs),
    /// Compute the intermediate flow at time t from a flow and a curvature map.
    FlowArc(FlowArcArgs),
}

#[derive(Args)]
struct InterpolateArgs {
    #[arg(long)]
    frame0: PathBuf,
    #[arg(long)]
    frame1: PathBuf,
    #[arg(long)]
    flow01: PathBuf,
    #[arg(long)]
    flow10: PathBuf,
    #[arg(long)]
    sigma01: PathBuf,
    #[arg(long)]
    sigma10: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    t: f64,
    #[arg(long, default_value_t = DEFAULT_SIGMA_THRESHOLD)]
    sigma_threshold: f64,
    /// Ignore curvature and move every pixel along a straight line.
    #[arg(long)]
    force_linear: bool,
    /// Directory for intermediate flows, warped curvature maps, masks and
    /// flow visualizations.
    #[arg(long)]
    dump_intermediates: Option<PathBuf>,
    #[arg(long, short)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum PatternArg {
    Noise,
    Checker,
}

#[derive(Args)]
struct GenSceneArgs {
    /// Scene config file; inline flags are ignored when given (except --seed).
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long, default_value_t = 128)]
    width: usize,
    #[arg(long, default_value_t = 128)]
    height: usize,
    /// Rotation angle in degrees.
    #[arg(long, conflicts_with = "translate", allow_hyphen_values = true)]
    rotate_deg: Option<f64>,
    /// Rotation center as X,Y; defaults to the frame center.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    center: Option<(f64, f64)>,
    /// Translation as DX,DY.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    translate: Option<(f64, f64)>,
    #[arg(long, value_enum, default_value = "noise")]
    pattern: PatternArg,
    #[arg(long, default_value_t = 8.0)]
    cell: f64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 0.5)]
    background: f64,
    #[arg(long, default_value_t = 0.0)]
    margin: f64,
    /// Times at which to render ground-truth intermediate frames.
    #[arg(long, value_delimiter = ',', default_value = "0.5")]
    t: Vec<f64>,
    #[arg(long)]
    outdir: PathBuf,
}

#[derive(Args)]
struct EvalArgs {
    a: PathBuf,
    b: PathBuf,
}

#[derive(Args)]
struct FlowArcArgs {
    #[arg(long)]
    flow: PathBuf,
    #[arg(long)]
    sigma: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    t: f64,
    #[arg(long, default_value_t = DEFAULT_SIGMA_THRESHOLD)]
    sigma_threshold: f64,
    #[arg(long, short)]
    out: PathBuf,
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected X,Y, got {s:?}"))?;
    let parse = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

fn load_sigma(path: &Path) -> Result<SigmaMap, Error> {
    let loaded = imgio::read_sigma(path)?;
    if loaded.clamped > 0 {
        eprintln!(
            "warning: {}: clamped {} curvature values into [-1, 1]",
            path.display(),
            loaded.clamped
        );
    }
    Ok(loaded.value)
}

/// Reads PFM by extension, netpbm otherwise.
fn load_image(path: &Path) -> Result<Image, Error> {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("pfm") => imgio::read_pfm(path),
        _ => imgio::read_ppm(path),
    }
}

fn create_dir(dir: &Path) -> Result<(), Error> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })
}

fn run_interpolate(args: InterpolateArgs) -> Result<(), Error> {
    let frame0 = imgio::read_ppm(&args.frame0)?;
    let frame1 = imgio::read_ppm(&args.frame1)?;
    let flow01 = imgio::read_flo(&args.flow01)?;
    let flow10 = imgio::read_flo(&args.flow10)?;
    let sigma01 = load_sigma(&args.sigma01)?;
    let sigma10 = load_sigma(&args.sigma10)?;
    let trajectory = if args.force_linear {
        Trajectory::Linear
    } else {
        Trajectory::Arc(ArcConfig::new(args.sigma_threshold)?)
    };
    let inputs = Inputs {
        frame0: &frame0,
        frame1: &frame1,
        flow01: &flow01,
        flow10: &flow10,
        sigma01: &sigma01,
        sigma10: &sigma10,
    };
    let result = interpolate(&inputs, args.t, trajectory)?;
    imgio::write_ppm(&args.out, &result.frame)?;

    if let Some(dir) = args.dump_intermediates {
        create_dir(&dir)?;
        imgio::write_pfm(dir.join("frame.pfm"), &result.frame)?;
        imgio::write_flo(dir.join("flow0t.flo"), &result.flow0t)?;
        imgio::write_flo(dir.join("flow1t.flo"), &result.flow1t)?;
        imgio::write_pfm(dir.join("warped_sigma01.pfm"), &result.warped_sigma01)?;
        imgio::write_pfm(dir.join("warped_sigma10.pfm"), &result.warped_sigma10)?;
        imgio::write_pfm(dir.join("warped0.pfm"), &result.warped0.image)?;
        imgio::write_pfm(dir.join("warped1.pfm"), &result.warped1.image)?;
        imgio::write_ppm(dir.join("mask0.pgm"), &result.warped0.mask.to_image())?;
        imgio::write_ppm(dir.join("mask1.pgm"), &result.warped1.mask.to_image())?;
        let max = result
            .flow0t
            .iter()
            .chain(result.flow1t.iter())
            .map(|(u, v)| (u as f64).hypot(v as f64))
            .fold(0.0, f64::max);
        let max = if max > 0.0 { MaxMagnitude::Fixed(max) } else { MaxMagnitude::Auto };
        imgio::write_ppm(dir.join("flow0t.ppm"), &imgio::flow_to_color(&result.flow0t, max)?)?;
        imgio::write_ppm(dir.join("flow1t.ppm"), &imgio::flow_to_color(&result.flow1t, max)?)?;
    }
    Ok(())
}

fn scene_from_flags(args: &GenSceneArgs) -> SceneSpec {
    let motion = match (args.rotate_deg, args.translate) {
        (_, Some((dx, dy))) => Motion::Translation { dx, dy },
        (deg, None) => Motion::Rotation {
            center: args
                .center
                .unwrap_or(((args.width as f64 - 1.0) / 2.0, (args.height as f64 - 1.0) / 2.0)),
            omega: deg.unwrap_or(0.0).to_radians(),
        },
    };
    SceneSpec {
        width: args.width,
        height: args.height,
        motion,
        texture: Texture {
            pattern: match args.pattern {
                PatternArg::Noise => Pattern::Noise,
                PatternArg::Checker => Pattern::Checker,
            },
            seed: 0,
            cell: args.cell,
        },
        background: args.background,
        margin: args.margin,
    }
}

fn run_gen_scene(args: GenSceneArgs) -> Result<(), Error> {
    let mut spec = match &args.spec {
        Some(path) => SceneSpec::load(path)?,
        None => scene_from_flags(&args),
    };
    if let Some(seed) = args.seed {
        spec.texture.seed = seed;
    }
    spec.validate()?;
    for &t in &args.t {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidParameter(format!("--t {t} outside [0, 1]")));
        }
    }

    let out = &args.outdir;
    create_dir(out)?;
    let gt = ground_truth_fields(&spec)?;
    std::fs::write(out.join("scene.toml"), spec.to_toml()).map_err(|source| Error::Io {
        path: out.join("scene.toml"),
        source,
    })?;
    imgio::write_ppm(out.join("frame0.ppm"), &ground_truth_frame(&spec, 0.0)?)?;
    imgio::write_ppm(out.join("frame1.ppm"), &ground_truth_frame(&spec, 1.0)?)?;
    imgio::write_flo(out.join("flow01.flo"), &gt.flow01)?;
    imgio::write_flo(out.join("flow10.flo"), &gt.flow10)?;
    imgio::write_sigma(out.join("sigma01.pfm"), &gt.sigma01)?;
    imgio::write_sigma(out.join("sigma10.pfm"), &gt.sigma10)?;
    for &t in &args.t {
        let frame = ground_truth_frame(&spec, t)?;
        imgio::write_ppm(out.join(format!("gt_t{t:.4}.ppm")), &frame)?;
        imgio::write_pfm(out.join(format!("gt_t{t:.4}.pfm")), &frame)?;
    }
    Ok(())
}

fn run_eval(args: EvalArgs) -> Result<(), Error> {
    let a = load_image(&args.a)?;
    let b = load_image(&args.b)?;
    let report = metrics::evaluate(&a, &b)?;
    println!("psnr={:?}", report.psnr);
    println!("ssim={:?}", report.ssim);
    println!("ie={:?}", report.ie);
    println!("charbonnier={:?}", report.charbonnier);
    Ok(())
}

fn run_flow_arc(args: FlowArcArgs) -> Result<(), Error> {
    let flow: FlowField = imgio::read_flo(&args.flow)?;
    let sigma = load_sigma(&args.sigma)?;
    let cfg = ArcConfig::new(args.sigma_threshold)?;
    let out = intermediate_flow(&flow, &sigma, args.t, &cfg)?;
    imgio::write_flo(&args.out, &out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Interpolate(a) => run_interpolate(a),
        Command::GenScene(a) => run_gen_scene(a),
        Command::Eval(a) => run_eval(a),
        Command::FlowArc(a) => run_flow_arc(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_numeric() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
