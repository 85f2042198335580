use std::io::{BufRead, BufReader, Write};
use std::net::{TcpListener, TcpStream};
use std::sync::Arc;

use nalgebra::Matrix3;

use h2xe::isometry::frame_from_yaw_pitch;
use h2xe::render::{eye_poses, project_scene, StereoConfig};
use h2xe::scene::Scene;
use h2xe::service::{self, ErrorMsg, GeometryMsg, MotionMsg, Session};
use h2xe::tiling::{in_radius, TilingSpec};

fn scene() -> Arc<Scene> {
    Arc::new(Scene::build(TilingSpec::new(3, 1), 2).unwrap())
}

fn trace() -> Vec<String> {
    (0..40u64)
        .map(|k| {
            let frame = frame_from_yaw_pitch(0.05 * k as f64, 0.02 * k as f64 - 0.3);
            serde_json::to_string(&MotionMsg::new([0.01, 0.0, 0.08], &frame, k)).unwrap()
        })
        .collect()
}

fn replay(lines: &[String]) -> String {
    let mut out = Vec::new();
    let mut session = Session::new(scene(), 0.4);
    service::run_lines(&mut session, lines.join("\n").as_bytes(), &mut out).unwrap();
    String::from_utf8(out).unwrap()
}

#[test]
fn replay_is_byte_identical() {
    let lines = trace();
    let a = replay(&lines);
    assert_eq!(a, replay(&lines));
    assert_eq!(a.lines().count(), lines.len());
}

#[test]
fn seq_echo_and_error_leaves_state() {
    let mut s = Session::new(scene(), 0.4);
    let first: GeometryMsg = serde_json::from_str(&s.handle_line(&trace()[3])).unwrap();
    assert_eq!(first.seq, 3);
    assert!(first.segments.iter().all(|v| v.is_finite()));

    let pose = s.pose().clone();
    for bad in [
        r#"{"kind":"jump","d":[0,0,1],"frame":[1,0,0,0,1,0,0,0,1],"seq":9}"#,
        r#"{"kind":"move","d":[0,0],"frame":[1,0,0,0,1,0,0,0,1],"seq":9}"#,
        r#"{"kind":"move","d":[0,0,1],"frame":[2,0,0,0,1,0,0,0,1],"seq":9}"#,
    ] {
        let err: ErrorMsg = serde_json::from_str(&s.handle_line(bad)).unwrap();
        assert_eq!(err.kind, "error");
        assert_eq!(s.pose(), &pose);
    }
}

#[test]
fn long_walk_grows_the_offset_continuously() {
    let mut s = Session::new(Arc::new(Scene::build(TilingSpec::new(4, 1), 1).unwrap()), 1.0);
    let mut previous: Option<GeometryMsg> = None;
    for k in 0..200 {
        let g = s.handle_motion(&MotionMsg::new([0.0, 0.0, 0.02], &Matrix3::identity(), k)).unwrap();
        if let Some(p) = &previous {
            // the segment closest to the eye moves by about one step per frame
            let nearest = |m: &GeometryMsg| {
                m.segments
                    .chunks(9)
                    .map(|c| (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt())
                    .fold(f64::INFINITY, f64::min)
            };
            assert!((nearest(&g) - nearest(p)).abs() < 0.1);
        }
        previous = Some(g);
    }
    // 4 model units is about three cell widths
    let expected = (4.0 / (2.0 * in_radius())).round() as usize;
    assert_eq!(s.offset().len(), expected);
}

#[test]
fn eye_offset_matches_the_stereo_pose() {
    let mut s = Session::new(scene(), 0.4);
    let mut msg = MotionMsg::new([0.0, 0.0, 0.2], &frame_from_yaw_pitch(0.3, 0.1), 1);
    let centre = s.handle_motion(&msg).unwrap();
    msg.eye = 0.05;
    msg.d = [0.0; 3];
    msg.seq = 2;
    let right = s.handle_motion(&msg).unwrap();
    assert_ne!(centre.segments, right.segments);

    let (_, right_pose) = eye_poses(s.pose(), &StereoConfig { eye_separation: 0.1 });
    let expected: Vec<f64> = project_scene(&right_pose, s.cells(), &s.scene().mesh)
        .iter()
        .flat_map(|seg| [seg.a.x, seg.a.y, seg.a.z, seg.b.x, seg.b.y, seg.b.z, seg.color[0], seg.color[1], seg.color[2]])
        .collect();
    assert_eq!(right.segments.len(), expected.len());
    for (a, b) in right.segments.iter().zip(&expected) {
        assert!((a - b).abs() < 1e-12);
    }
}

fn spawn_server() -> std::net::SocketAddr {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    let scene = scene();
    std::thread::spawn(move || {
        for stream in listener.incoming() {
            let scene = Arc::clone(&scene);
            std::thread::spawn(move || service::serve_connection(scene, 0.4, stream.unwrap()));
        }
    });
    addr
}

#[test]
fn tcp_sessions_are_independent() {
    let addr = spawn_server();
    let lines = trace();
    let expected = replay(&lines[..5]);
    let mut conns: Vec<_> = (0..2).map(|_| TcpStream::connect(addr).unwrap()).collect();
    for conn in &mut conns {
        let mut reader = BufReader::new(conn.try_clone().unwrap());
        let mut got = String::new();
        for line in &lines[..5] {
            writeln!(conn, "{line}").unwrap();
            reader.read_line(&mut got).unwrap();
        }
        assert_eq!(got, expected);
    }
}

#[test]
fn websocket_speaks_the_same_protocol() {
    let addr = spawn_server();
    let (mut ws, _) = tungstenite::client(format!("ws://{addr}/"), TcpStream::connect(addr).unwrap()).unwrap();
    let lines = trace();
    let expected = replay(&lines[..3]);
    let mut got = String::new();
    for line in &lines[..3] {
        ws.send(tungstenite::Message::text(line.clone())).unwrap();
        let reply = ws.read().unwrap();
        got.push_str(reply.to_text().unwrap());
        got.push('\n');
    }
    assert_eq!(got, expected);
    ws.close(None).unwrap();
}
