//! Perspective line rasterizer with painter's-order overdraw.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

use super::project::{ProjectedSegment, ViewVec, NEAR_CLIP};

pub const DEFAULT_SIZE: usize = 800;
pub const DEFAULT_FOV_DEG: f64 = 100.0;
/// Tangent distance over which colours fade halfway to the background.
pub const DEFAULT_FOG_DISTANCE: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderSettings {
    pub width: usize,
    pub height: usize,
    /// Vertical field of view, radians.
    pub fov: f64,
    pub near: f64,
    pub background: [f64; 3],
    pub fog_distance: f64,
}

impl Default for RenderSettings {
    fn default() -> Self {
        Self {
            width: DEFAULT_SIZE,
            height: DEFAULT_SIZE,
            fov: DEFAULT_FOV_DEG.to_radians(),
            near: NEAR_CLIP,
            background: [0.55, 0.57, 0.62],
            fog_distance: DEFAULT_FOG_DISTANCE,
        }
    }
}

impl RenderSettings {
    pub fn with_size(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::EmptyImage {
                width: self.width,
                height: self.height,
            });
        }
        if !(self.fov > 0.0 && self.fov < std::f64::consts::PI) {
            return Err(Error::InvalidFov { fov: self.fov });
        }
        Ok(())
    }

    /// Focal length in pixels.
    pub fn focal(&self) -> f64 {
        (self.height as f64 / 2.0) / (self.fov / 2.0).tan()
    }

    /// Pixel coordinates of a camera-frame point in front of the eye.
    pub fn to_screen(&self, p: &ViewVec) -> (f64, f64) {
        let f = self.focal();
        (
            self.width as f64 / 2.0 + f * p.x / p.z,
            self.height as f64 / 2.0 - f * p.y / p.z,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameImage {
    pub width: usize,
    pub height: usize,
    /// Row-major, top row first.
    pub pixels: Vec<[u8; 3]>,
}

impl FrameImage {
    pub fn filled(width: usize, height: usize, rgb: [u8; 3]) -> Self {
        Self {
            width,
            height,
            pixels: vec![rgb; width * height],
        }
    }

    pub fn get(&self, x: usize, y: usize) -> [u8; 3] {
        self.pixels[y * self.width + x]
    }

    pub fn count_not(&self, rgb: [u8; 3]) -> usize {
        self.pixels.iter().filter(|&&p| p != rgb).count()
    }

    /// Binary PPM (P6, maxval 255).
    pub fn write_ppm<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        write!(w, "P6\n{} {}\n255\n", self.width, self.height)?;
        let bytes: Vec<u8> = self.pixels.iter().flatten().copied().collect();
        w.write_all(&bytes)
    }

    pub fn to_ppm_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.pixels.len() * 3 + 20);
        self.write_ppm(&mut out).expect("writing to a Vec cannot fail");
        out
    }

    pub fn to_rgb_image(&self) -> image::RgbImage {
        let raw: Vec<u8> = self.pixels.iter().flatten().copied().collect();
        image::RgbImage::from_raw(self.width as u32, self.height as u32, raw)
            .expect("pixel buffer matches dimensions")
    }

    /// Writes PNG when the extension is `.png`, PPM otherwise.
    pub fn save(&self, path: &Path) -> Result<()> {
        let is_png = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("png"));
        if is_png {
            self.to_rgb_image()
                .save(path)
                .map_err(|e| Error::Io(std::io::Error::other(e)))
        } else {
            let f = std::io::BufWriter::new(std::fs::File::create(path)?);
            self.write_ppm(f)?;
            Ok(())
        }
    }
}

fn to_byte(v: f64) -> u8 {
    (v.clamp(0.0, 1.0) * 255.0).round() as u8
}

/// Liang–Barsky clip of a 2D segment to `[lo, hi]²`-style bounds.
fn clip_2d(a: (f64, f64), b: (f64, f64), max_x: f64, max_y: f64) -> Option<((f64, f64), (f64, f64))> {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let mut t0 = 0.0f64;
    let mut t1 = 1.0f64;
    for (p, q) in [
        (-dx, a.0 + 1.0),
        (dx, max_x + 1.0 - a.0),
        (-dy, a.1 + 1.0),
        (dy, max_y + 1.0 - a.1),
    ] {
        if p == 0.0 {
            if q < 0.0 {
                return None;
            }
        } else {
            let r = q / p;
            if p < 0.0 {
                t0 = t0.max(r);
            } else {
                t1 = t1.min(r);
            }
        }
    }
    (t0 <= t1).then(|| {
        (
            (a.0 + t0 * dx, a.1 + t0 * dy),
            (a.0 + t1 * dx, a.1 + t1 * dy),
        )
    })
}

fn draw_line(img: &mut FrameImage, a: (f64, f64), b: (f64, f64), rgb: [u8; 3]) {
    let Some((a, b)) = clip_2d(a, b, img.width as f64, img.height as f64) else {
        return;
    };
    let steps = (b.0 - a.0).abs().max((b.1 - a.1).abs()).ceil().max(1.0) as usize;
    for i in 0..=steps {
        let t = i as f64 / steps as f64;
        let x = (a.0 + (b.0 - a.0) * t).floor();
        let y = (a.1 + (b.1 - a.1) * t).floor();
        if x >= 0.0 && y >= 0.0 && (x as usize) < img.width && (y as usize) < img.height {
            let idx = y as usize * img.width + x as usize;
            img.pixels[idx] = rgb;
        }
    }
}

/// Draws segments far-to-near. Identical input gives identical pixels.
pub fn render_frame(segments: &[ProjectedSegment], settings: &RenderSettings) -> Result<FrameImage> {
    settings.validate()?;
    let bg = settings.background;
    let mut img = FrameImage::filled(settings.width, settings.height, bg.map(to_byte));

    let mut order: Vec<usize> = (0..segments.len()).collect();
    order.sort_by(|&i, &j| segments[j].depth_key.total_cmp(&segments[i].depth_key));

    for i in order {
        let s = &segments[i];
        if s.a.z < settings.near && s.b.z < settings.near {
            continue;
        }
        let fade = 1.0 - 0.5f64.powf(s.depth_key / settings.fog_distance);
        let rgb = [0, 1, 2].map(|k| to_byte(s.color[k] + (bg[k] - s.color[k]) * fade));
        draw_line(&mut img, settings.to_screen(&s.a), settings.to_screen(&s.b), rgb);
    }
    Ok(img)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(a: ViewVec, b: ViewVec) -> ProjectedSegment {
        ProjectedSegment {
            a,
            b,
            color: [1.0, 0.0, 0.0],
            depth_key: ((a + b) * 0.5).norm(),
        }
    }

    #[test]
    fn empty_scene_is_background() {
        let s = RenderSettings::with_size(32, 24);
        let img = render_frame(&[], &s).unwrap();
        assert_eq!(img.count_not(s.background.map(to_byte)), 0);
    }

    #[test]
    fn zero_area_rejected() {
        assert!(matches!(
            render_frame(&[], &RenderSettings::with_size(0, 10)),
            Err(Error::EmptyImage { .. })
        ));
    }

    #[test]
    fn segment_through_axis_crosses_centre() {
        let s = RenderSettings::with_size(101, 101);
        let img = render_frame(&[seg(ViewVec::new(-1.0, 0.0, 1.0), ViewVec::new(1.0, 0.0, 1.0))], &s).unwrap();
        let bg = s.background.map(to_byte);
        let row: Vec<bool> = (0..101).map(|x| img.get(x, 50) != bg).collect();
        assert!(row[50]);
        let first = row.iter().position(|&b| b).unwrap();
        let last = row.iter().rposition(|&b| b).unwrap();
        assert!(row[first..=last].iter().all(|&b| b));
        assert!(last - first > 50);
    }

    #[test]
    fn ppm_header() {
        let img = FrameImage::filled(3, 2, [1, 2, 3]);
        let bytes = img.to_ppm_bytes();
        assert!(bytes.starts_with(b"P6\n3 2\n255\n"));
        assert_eq!(bytes.len(), 11 + 18);
    }

    #[test]
    fn nearer_segment_wins() {
        let s = RenderSettings::with_size(41, 41);
        let mut far = seg(ViewVec::new(-1.0, 0.0, 4.0), ViewVec::new(1.0, 0.0, 4.0));
        far.color = [0.0, 0.0, 1.0];
        let near = seg(ViewVec::new(0.0, -1.0, 1.0), ViewVec::new(0.0, 1.0, 1.0));
        let a = render_frame(&[far, near], &s).unwrap();
        let b = render_frame(&[near, far], &s).unwrap();
        assert_eq!(a, b);
        let c = a.get(20, 20);
        assert!(c[0] > c[2]);
    }
}
