//! The frame service: one camera per session, driven by motion messages,
//! answering with camera-frame geometry.
//!
//! Messages are newline-delimited JSON. A session is strictly sequential;
//! independent sessions share the read-only [`Scene`].

use std::io::{BufRead, BufReader, Read, Write};
use std::net::{TcpListener, TcpStream};
use std::sync::Arc;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::isometry::{
    apply_motion, frame_defect, orthonormalize_frame, translation_from_tangent, CameraPose,
    RoomDelta, DEFAULT_ROOM_SCALE, MAX_RENORMALIZE_DEFECT,
};
use crate::render::{project_scene, render_frame, FrameImage, RenderSettings};
use crate::scene::Scene;
use crate::tiling::{teleport, Cell, CellWord, TilingSpec};

pub const DEFAULT_PORT: u16 = 8046;
pub const DEFAULT_FRAME_BUDGET_MS: f64 = 16.0;

#[derive(Debug, Clone, PartialEq)]
pub struct ServiceConfig {
    pub port: u16,
    pub spec: TilingSpec,
    pub subdivisions: usize,
    pub room_scale: f64,
    pub frame_budget_ms: f64,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self {
            port: DEFAULT_PORT,
            spec: TilingSpec::new(5, 2),
            subdivisions: crate::render::DEFAULT_SUBDIVISIONS,
            room_scale: DEFAULT_ROOM_SCALE,
            frame_budget_ms: DEFAULT_FRAME_BUDGET_MS,
        }
    }
}

impl ServiceConfig {
    pub fn validate(&self) -> Result<()> {
        if self.port < 1024 {
            return Err(Error::InvalidArgument(format!("port {} is below 1024", self.port)));
        }
        if !(self.room_scale > 0.0) {
            return Err(Error::InvalidArgument("room scale must be positive".into()));
        }
        if !(self.frame_budget_ms > 0.0) {
            return Err(Error::InvalidArgument("frame budget must be positive".into()));
        }
        self.spec.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotionMsg {
    pub kind: String,
    /// Camera-local `(right, up, forward)` displacement in meters.
    pub d: [f64; 3],
    /// New camera orientation, row-major.
    pub frame: [f64; 9],
    pub seq: u64,
    /// Sideways eye offset (model units) for this projection only; used by
    /// stereo clients to request each eye's geometry without moving.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub eye: f64,
}

fn is_zero(v: &f64) -> bool {
    *v == 0.0
}

impl MotionMsg {
    pub fn new(d: [f64; 3], frame: &Matrix3<f64>, seq: u64) -> Self {
        let mut f = [0.0; 9];
        for r in 0..3 {
            for c in 0..3 {
                f[3 * r + c] = frame[(r, c)];
            }
        }
        Self {
            kind: "move".into(),
            d,
            frame: f,
            seq,
            eye: 0.0,
        }
    }

    fn frame_matrix(&self) -> Matrix3<f64> {
        Matrix3::from_row_slice(&self.frame)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryMsg {
    pub kind: String,
    pub seq: u64,
    /// Nine numbers per segment: `ax ay az bx by bz r g b`, camera frame
    /// `(right, up, forward)`.
    pub segments: Vec<f64>,
    pub offset_word: String,
}

impl GeometryMsg {
    pub fn segment_count(&self) -> usize {
        self.segments.len() / 9
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorMsg {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seq: Option<u64>,
    pub reason: String,
}

/// One viewer's state.
#[derive(Debug, Clone)]
pub struct Session {
    scene: Arc<Scene>,
    room_scale: f64,
    pose: CameraPose,
    offset: CellWord,
    cells: Vec<Cell>,
}

impl Session {
    pub fn new(scene: Arc<Scene>, room_scale: f64) -> Self {
        let cells = scene.cells.clone();
        Self {
            scene,
            room_scale,
            pose: CameraPose::default(),
            offset: CellWord::empty(),
            cells,
        }
    }

    pub fn pose(&self) -> &CameraPose {
        &self.pose
    }

    pub fn offset(&self) -> &CellWord {
        &self.offset
    }

    /// Cells coloured for the current offset.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn scene(&self) -> &Scene {
        &self.scene
    }

    /// Moves, teleports and re-projects. On error the session is unchanged.
    pub fn handle_motion(&mut self, msg: &MotionMsg) -> Result<GeometryMsg> {
        if msg.kind != "move" {
            return Err(Error::Malformed(format!("unexpected kind {:?}", msg.kind)));
        }
        if msg.d.iter().chain(msg.frame.iter()).any(|v| !v.is_finite()) || !msg.eye.is_finite() {
            return Err(Error::Malformed("non-finite value".into()));
        }
        let raw = msg.frame_matrix();
        let defect = frame_defect(&raw);
        if defect >= MAX_RENORMALIZE_DEFECT {
            return Err(Error::FrameNotOrthogonal { defect });
        }
        let frame = orthonormalize_frame(&raw)?;
        let delta = RoomDelta::new(Vector3::from(msg.d), self.room_scale);
        let moved = apply_motion(&self.pose, &delta, &frame)?;
        let (pose, offset) = teleport(&moved, &self.scene.spec, &self.offset);

        if offset != self.offset {
            self.cells = self.scene.recolored(&offset);
        }
        self.pose = pose;
        self.offset = offset;
        Ok(self.geometry(msg.seq, msg.eye))
    }

    /// Current geometry, optionally from an eye displaced sideways.
    pub fn geometry(&self, seq: u64, eye: f64) -> GeometryMsg {
        let pose = if eye == 0.0 {
            self.pose.clone()
        } else {
            let t = self.pose.local_to_tangent(&Vector3::new(eye, 0.0, 0.0));
            self.pose.with_loc(self.pose.loc.compose(&translation_from_tangent(t)))
        };
        let segs = project_scene(&pose, &self.cells, &self.scene.mesh);
        let mut flat = Vec::with_capacity(segs.len() * 9);
        for s in &segs {
            flat.extend_from_slice(&[s.a.x, s.a.y, s.a.z, s.b.x, s.b.y, s.b.z]);
            flat.extend_from_slice(&s.color);
        }
        GeometryMsg {
            kind: "geometry".into(),
            seq,
            segments: flat,
            offset_word: self.offset.to_string(),
        }
    }

    /// Rasterizes the current view.
    pub fn render(&self, settings: &RenderSettings) -> Result<FrameImage> {
        render_frame(&project_scene(&self.pose, &self.cells, &self.scene.mesh), settings)
    }

    /// Parses one request line and returns one reply line (without newline).
    pub fn handle_line(&mut self, line: &str) -> String {
        let parsed: std::result::Result<MotionMsg, _> = serde_json::from_str(line);
        let reply = match parsed {
            Ok(msg) => match self.handle_motion(&msg) {
                Ok(geom) => serde_json::to_string(&geom),
                Err(e) => serde_json::to_string(&ErrorMsg {
                    kind: "error".into(),
                    seq: Some(msg.seq),
                    reason: e.to_string(),
                }),
            },
            Err(e) => serde_json::to_string(&ErrorMsg {
                kind: "error".into(),
                seq: None,
                reason: format!("malformed message: {e}"),
            }),
        };
        reply.expect("message types always serialize")
    }
}

/// Runs a session over any line-oriented reader/writer pair (stdin/stdout
/// in `--pipe` mode, or a raw TCP stream).
pub fn run_lines<R: BufRead, W: Write>(session: &mut Session, input: R, mut output: W) -> Result<()> {
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let reply = session.handle_line(&line);
        output.write_all(reply.as_bytes())?;
        output.write_all(b"\n")?;
        output.flush()?;
    }
    Ok(())
}

fn run_websocket(session: &mut Session, stream: TcpStream) -> Result<()> {
    let mut ws = tungstenite::accept(stream).map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    loop {
        let msg = match ws.read() {
            Ok(m) => m,
            Err(tungstenite::Error::ConnectionClosed) | Err(tungstenite::Error::AlreadyClosed) => return Ok(()),
            Err(e) => return Err(Error::Io(std::io::Error::other(e.to_string()))),
        };
        if msg.is_text() {
            let text = msg.into_text().map_err(|e| Error::Malformed(e.to_string()))?;
            let reply = session.handle_line(text.as_str());
            ws.send(tungstenite::Message::text(reply))
                .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
        } else if msg.is_close() {
            return Ok(());
        }
    }
}

/// Serves one connection: a WebSocket if it opens with an HTTP upgrade,
/// newline-delimited JSON otherwise.
pub fn serve_connection(scene: Arc<Scene>, room_scale: f64, stream: TcpStream) -> Result<()> {
    let mut session = Session::new(scene, room_scale);
    let mut head = [0u8; 4];
    let n = stream.peek(&mut head)?;
    if n == 4 && &head == b"GET " {
        return run_websocket(&mut session, stream);
    }
    let reader = BufReader::new(stream.try_clone()?);
    run_lines(&mut session, reader, stream)
}

/// Accepts connections forever, one thread per session.
pub fn serve(config: &ServiceConfig, host: &str) -> Result<()> {
    config.validate()?;
    let scene = Arc::new(Scene::build(config.spec, config.subdivisions)?);
    let listener = TcpListener::bind((host, config.port))?;
    eprintln!("h2xe: listening on {}", listener.local_addr()?);
    for stream in listener.incoming() {
        let stream = stream?;
        let scene = Arc::clone(&scene);
        let scale = config.room_scale;
        std::thread::spawn(move || {
            if let Err(e) = serve_connection(scene, scale, stream) {
                eprintln!("h2xe: session ended: {e}");
            }
        });
    }
    Ok(())
}

/// Drains a reader fully; used by tests that speak the raw protocol.
pub fn read_all<R: Read>(mut r: R) -> Result<String> {
    let mut s = String::new();
    r.read_to_string(&mut s)?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn session() -> Session {
        Session::new(Arc::new(Scene::build(TilingSpec::new(2, 1), 2).unwrap()), 1.0)
    }

    #[test]
    fn zero_motion_repeats_geometry() {
        let mut s = session();
        let a = s.handle_motion(&MotionMsg::new([0.0; 3], &Matrix3::identity(), 1)).unwrap();
        let b = s.handle_motion(&MotionMsg::new([0.0; 3], &Matrix3::identity(), 2)).unwrap();
        assert_eq!(a.segments, b.segments);
        assert_eq!(b.seq, 2);
        assert!(a.segment_count() > 0);
    }

    #[test]
    fn frame_thresholds() {
        let mut s = session();
        let mut f = Matrix3::identity();
        f[(0, 1)] = 1e-3;
        assert!(s.handle_motion(&MotionMsg::new([0.0, 0.0, 0.1], &f, 1)).is_ok());
        let before = s.pose().clone();
        f[(0, 1)] = 0.5;
        let reply = s.handle_line(&serde_json::to_string(&MotionMsg::new([0.0, 0.0, 0.1], &f, 2)).unwrap());
        let err: ErrorMsg = serde_json::from_str(&reply).unwrap();
        assert_eq!(err.kind, "error");
        assert_eq!(err.seq, Some(2));
        assert_eq!(s.pose(), &before);
    }

    #[test]
    fn malformed_line_reports_error() {
        let mut s = session();
        let reply = s.handle_line("{\"kind\":\"move\"}");
        assert!(reply.contains("\"kind\":\"error\""));
        let reply = s.handle_line("not json");
        assert!(reply.contains("malformed"));
    }

    #[test]
    fn config_validation() {
        let mut c = ServiceConfig::default();
        assert!(c.validate().is_ok());
        c.port = 80;
        assert!(c.validate().is_err());
    }
}
