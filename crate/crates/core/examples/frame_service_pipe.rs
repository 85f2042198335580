//! Drive a session the way a viewer would: JSON motion messages in,
//! camera-frame segments out.

use std::sync::Arc;

use h2xe::isometry::frame_from_yaw_pitch;
use h2xe::scene::Scene;
use h2xe::service::{GeometryMsg, MotionMsg, Session};
use h2xe::tiling::TilingSpec;

fn main() -> h2xe::Result<()> {
    let scene = Arc::new(Scene::build(TilingSpec::new(4, 1), 4)?);
    let mut session = Session::new(scene, 0.4);
    for seq in 0..12u64 {
        let frame = frame_from_yaw_pitch(0.1 * seq as f64, 0.0);
        let request = serde_json::to_string(&MotionMsg::new([0.0, 0.0, 0.5], &frame, seq))?;
        let reply = session.handle_line(&request);
        let geom: GeometryMsg = serde_json::from_str(&reply)?;
        println!("seq {:>2}: {:>6} segments, offset {}", geom.seq, geom.segment_count(), geom.offset_word);
    }
    println!("{}", session.handle_line(r#"{"kind":"move","d":[0,0,0],"frame":[3,0,0,0,1,0,0,0,1],"seq":99}"#));
    Ok(())
}
