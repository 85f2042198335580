//! Scripted walks: one line per frame, `dx dy dz` in camera-local meters
//! (right, up, forward), optionally followed by the 9 entries of the new
//! camera frame in row-major order. `#` starts a comment.

use std::path::Path;

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::service::{MotionMsg, Session};

#[derive(Debug, Clone, PartialEq)]
pub struct WalkStep {
    pub d: Vector3<f64>,
    /// `None` keeps the previous orientation.
    pub frame: Option<Matrix3<f64>>,
}

pub fn parse_walk(text: &str) -> Result<Vec<WalkStep>> {
    let mut steps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums = line
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>().map_err(|e| Error::WalkScript {
                    line: i + 1,
                    reason: format!("{t:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if nums.iter().any(|v| !v.is_finite()) {
            return Err(Error::WalkScript {
                line: i + 1,
                reason: "non-finite value".into(),
            });
        }
        let frame = match nums.len() {
            3 => None,
            12 => Some(Matrix3::from_row_slice(&nums[3..])),
            n => {
                return Err(Error::WalkScript {
                    line: i + 1,
                    reason: format!("expected 3 or 12 numbers, found {n}"),
                })
            }
        };
        steps.push(WalkStep {
            d: Vector3::new(nums[0], nums[1], nums[2]),
            frame,
        });
    }
    Ok(steps)
}

pub fn read_walk(path: &Path) -> Result<Vec<WalkStep>> {
    parse_walk(&std::fs::read_to_string(path)?)
}

/// Feeds `steps` to `session` as motion messages, calling `frame` after
/// each one. A step without a frame keeps the current orientation.
pub fn drive<F>(session: &mut Session, steps: &[WalkStep], mut frame: F) -> Result<()>
where
    F: FnMut(usize, &Session) -> Result<()>,
{
    for (i, step) in steps.iter().enumerate() {
        let orientation = step.frame.unwrap_or(session.pose().frame);
        let msg = MotionMsg::new([step.d.x, step.d.y, step.d.z], &orientation, i as u64);
        session.handle_motion(&msg)?;
        frame(i, session)?;
    }
    Ok(())
}
