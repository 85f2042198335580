use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use h2xe::isometry::{CameraPose, DEFAULT_ROOM_SCALE};
use h2xe::render::{render_stereo, side_by_side, RenderSettings, StereoConfig, DEFAULT_SUBDIVISIONS, MAX_SEPARATION};
use h2xe::scene::{Scene, View, DEFAULT_LAYERS};
use h2xe::service::{self, ServiceConfig, Session};
use h2xe::tiling::{build_tiling, write_dump, TilingSpec};
use h2xe::{verify, walk};

#[derive(Parser)]
#[command(name = "h2xe", version, about = "Explore the {4,6} cube honeycomb of H²×E")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render one of the reference views from the centre of the central cube.
    Render {
        #[arg(long, default_value = "h2")]
        view: View,
        #[arg(long, default_value_t = 7)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_LAYERS)]
        layers: usize,
        /// Output image, PNG if the extension is `.png`, PPM otherwise.
        #[arg(long)]
        out: PathBuf,
        /// Render a side-by-side stereo pair with this eye separation.
        #[arg(long)]
        stereo: Option<f64>,
        #[arg(long, default_value_t = 800)]
        width: usize,
        #[arg(long, default_value_t = 800)]
        height: usize,
        #[arg(long, default_value_t = DEFAULT_SUBDIVISIONS)]
        subdivisions: usize,
    },
    /// Replay a walk script, writing one image per frame.
    Walk {
        #[arg(long)]
        script: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_LAYERS)]
        layers: usize,
        #[arg(long, default_value_t = DEFAULT_ROOM_SCALE)]
        room_scale: f64,
        /// Image format of the frames: png or ppm.
        #[arg(long, default_value = "png")]
        format: String,
    },
    /// Print every cell of the honeycomb, one per line.
    DumpTiling {
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        layers: usize,
    },
    /// Run the numerical self-checks.
    Verify {
        /// Directory of baseline renders to compare against.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Serve frames to viewers over TCP (newline-delimited JSON or WebSocket).
    Serve {
        #[arg(long, default_value_t = service::DEFAULT_PORT)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Speak the protocol over stdin/stdout instead.
        #[arg(long)]
        pipe: bool,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        layers: usize,
        #[arg(long, default_value_t = DEFAULT_ROOM_SCALE)]
        room_scale: f64,
    },
}

fn settings(width: usize, height: usize) -> RenderSettings {
    RenderSettings::with_size(width, height)
}

fn render(view: View, spec: TilingSpec, out: &Path, stereo: Option<f64>, rs: RenderSettings, subdivisions: usize) -> h2xe::Result<()> {
    let scene = Scene::build(spec, subdivisions)?;
    let image = match stereo {
        None => scene.render_view(view, &rs)?,
        Some(sep) => {
            if !(0.0..MAX_SEPARATION).contains(&sep) {
                return Err(h2xe::Error::InvalidArgument(format!("eye separation {sep} outside [0, {MAX_SEPARATION})")));
            }
            let pose = CameraPose::new(Default::default(), view.frame());
            let (l, r) = render_stereo(&pose, &StereoConfig { eye_separation: sep }, &scene.cells, &scene.mesh, &rs)?;
            side_by_side(&l, &r)
        }
    };
    image.save(out)
}

fn walk_frames(script: &Path, out_dir: &Path, spec: TilingSpec, room_scale: f64, format: &str) -> h2xe::Result<usize> {
    if format != "png" && format != "ppm" {
        return Err(h2xe::Error::InvalidArgument(format!("unknown image format {format:?}")));
    }
    let steps = walk::read_walk(script)?;
    std::fs::create_dir_all(out_dir)?;
    let scene = Arc::new(Scene::build(spec, DEFAULT_SUBDIVISIONS)?);
    let mut session = Session::new(scene, room_scale);
    let rs = RenderSettings::default();
    walk::drive(&mut session, &steps, |i, s| {
        s.render(&rs)?.save(&out_dir.join(format!("frame_{i:04}.{format}")))?;
        println!("frame {i}: offset {}", s.offset());
        Ok(())
    })?;
    Ok(steps.len())
}

fn run(cli: Cli) -> h2xe::Result<bool> {
    match cli.command {
        Command::Render { view, depth, layers, out, stereo, width, height, subdivisions } => {
            render(view, TilingSpec::new(depth, layers), &out, stereo, settings(width, height), subdivisions)?;
            println!("wrote {}", out.display());
        }
        Command::Walk { script, out_dir, depth, layers, room_scale, format } => {
            let n = walk_frames(&script, &out_dir, TilingSpec::new(depth, layers), room_scale, &format)?;
            println!("wrote {n} frames to {}", out_dir.display());
        }
        Command::DumpTiling { depth, layers } => {
            let cells = build_tiling(&TilingSpec::new(depth, layers))?;
            let stdout = std::io::stdout();
            let mut out = std::io::BufWriter::new(stdout.lock());
            write_dump(&cells, &mut out)?;
            out.flush()?;
        }
        Command::Verify { golden } => {
            let golden = golden.or_else(|| {
                let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
                dir.is_dir().then_some(dir)
            });
            let outcomes = verify::run_all(verify::seed_from_env(), golden.as_deref());
            for o in &outcomes {
                println!("{o}");
            }
            return Ok(outcomes.iter().all(|o| o.passed));
        }
        Command::Serve { port, host, pipe, depth, layers, room_scale } => {
            let config = ServiceConfig {
                port,
                spec: TilingSpec::new(depth, layers),
                room_scale,
                ..ServiceConfig::default()
            };
            config.validate()?;
            if pipe {
                let scene = Arc::new(Scene::build(config.spec, config.subdivisions)?);
                let mut session = Session::new(scene, config.room_scale);
                let stdin = std::io::stdin();
                service::run_lines(&mut session, stdin.lock(), std::io::stdout().lock())?;
            } else {
                service::serve(&config, &host)?;
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e @ (h2xe::Error::InvalidArgument(_) | h2xe::Error::InvalidTiling(_))) => {
            eprintln!("h2xe: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("h2xe: {e}");
            ExitCode::FAILURE
        }
    }
}
