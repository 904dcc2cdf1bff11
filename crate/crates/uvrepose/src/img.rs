//! Dense float image container with PNG I/O.
//!
//! Channel-interleaved rows, values in [0,1]. All renderers, textures, and the
//! flow trainer exchange pixels through this type.

use crate::error::{Error, Result};
use std::path::Path;

#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    width: usize,
    height: usize,
    channels: usize,
    data: Vec<f64>,
}

impl Image {
    pub fn new(width: usize, height: usize, channels: usize) -> Image {
        Image {
            width,
            height,
            channels,
            data: vec![0.0; width * height * channels],
        }
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        channels: usize,
        mut f: impl FnMut(usize, usize, usize) -> f64,
    ) -> Image {
        let mut img = Image::new(width, height, channels);
        for y in 0..height {
            for x in 0..width {
                for c in 0..channels {
                    img.set(x, y, c, f(x, y, c));
                }
            }
        }
        img
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, c: usize) -> f64 {
        self.data[(y * self.width + x) * self.channels + c]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, c: usize, v: f64) {
        self.data[(y * self.width + x) * self.channels + c] = v;
    }

    pub fn fill(&mut self, v: f64) {
        self.data.fill(v);
    }

    pub fn same_shape(&self, other: &Image) -> bool {
        self.width == other.width && self.height == other.height && self.channels == other.channels
    }

    /// Bilinear sample at continuous pixel coordinates (pixel centers at
    /// integer+0.5). Coordinates are clamped half a pixel inside the border.
    pub fn sample_bilinear(&self, x: f64, y: f64, c: usize) -> f64 {
        let x = x.clamp(0.5, self.width as f64 - 0.5);
        let y = y.clamp(0.5, self.height as f64 - 0.5);
        let fx = x - 0.5;
        let fy = y - 0.5;
        let x0 = fx.floor() as usize;
        let y0 = fy.floor() as usize;
        let x1 = (x0 + 1).min(self.width - 1);
        let y1 = (y0 + 1).min(self.height - 1);
        let tx = fx - x0 as f64;
        let ty = fy - y0 as f64;
        let v00 = self.get(x0, y0, c);
        let v10 = self.get(x1, y0, c);
        let v01 = self.get(x0, y1, c);
        let v11 = self.get(x1, y1, c);
        (v00 * (1.0 - tx) + v10 * tx) * (1.0 - ty) + (v01 * (1.0 - tx) + v11 * tx) * ty
    }

    /// Area-averaging resample to `(nw, nh)`. Exact box integration, so an
    /// integer-factor downscale averages whole blocks.
    pub fn resize_area(&self, nw: usize, nh: usize) -> Image {
        assert!(nw > 0 && nh > 0);
        let sx = self.width as f64 / nw as f64;
        let sy = self.height as f64 / nh as f64;
        let mut out = Image::new(nw, nh, self.channels);
        for oy in 0..nh {
            let y0 = oy as f64 * sy;
            let y1 = (oy + 1) as f64 * sy;
            for ox in 0..nw {
                let x0 = ox as f64 * sx;
                let x1 = (ox + 1) as f64 * sx;
                for c in 0..self.channels {
                    out.set(ox, oy, c, self.box_integral(x0, x1, y0, y1, c));
                }
            }
        }
        out
    }

    fn box_integral(&self, x0: f64, x1: f64, y0: f64, y1: f64, c: usize) -> f64 {
        let mut acc = 0.0;
        let mut area = 0.0;
        let iy0 = y0.floor() as usize;
        let iy1 = (y1.ceil() as usize).min(self.height);
        let ix0 = x0.floor() as usize;
        let ix1 = (x1.ceil() as usize).min(self.width);
        for py in iy0..iy1 {
            let hy = (y1.min((py + 1) as f64) - y0.max(py as f64)).max(0.0);
            if hy == 0.0 {
                continue;
            }
            for px in ix0..ix1 {
                let wx = (x1.min((px + 1) as f64) - x0.max(px as f64)).max(0.0);
                if wx == 0.0 {
                    continue;
                }
                acc += self.get(px, py, c) * wx * hy;
                area += wx * hy;
            }
        }
        if area == 0.0 {
            0.0
        } else {
            acc / area
        }
    }

    /// Rectangular crop clamped to bounds.
    pub fn crop(&self, x0: usize, y0: usize, w: usize, h: usize) -> Image {
        let x0 = x0.min(self.width.saturating_sub(1));
        let y0 = y0.min(self.height.saturating_sub(1));
        let w = w.min(self.width - x0).max(1);
        let h = h.min(self.height - y0).max(1);
        Image::from_fn(w, h, self.channels, |x, y, c| self.get(x0 + x, y0 + y, c))
    }

    /// Channel-mean grayscale.
    pub fn to_gray(&self) -> Image {
        Image::from_fn(self.width, self.height, 1, |x, y, _| {
            (0..self.channels).map(|c| self.get(x, y, c)).sum::<f64>() / self.channels as f64
        })
    }

    pub fn save_png(&self, path: impl AsRef<Path>) -> Result<()> {
        let w = self.width as u32;
        let h = self.height as u32;
        let quant = |v: f64| (v.clamp(0.0, 1.0) * 255.0).round() as u8;
        match self.channels {
            1 => {
                let buf: Vec<u8> = self.data.iter().map(|&v| quant(v)).collect();
                image::GrayImage::from_raw(w, h, buf)
                    .ok_or_else(|| Error::Format("gray buffer size mismatch".into()))?
                    .save(path)?;
            }
            3 => {
                let buf: Vec<u8> = self.data.iter().map(|&v| quant(v)).collect();
                image::RgbImage::from_raw(w, h, buf)
                    .ok_or_else(|| Error::Format("rgb buffer size mismatch".into()))?
                    .save(path)?;
            }
            4 => {
                let buf: Vec<u8> = self.data.iter().map(|&v| quant(v)).collect();
                image::RgbaImage::from_raw(w, h, buf)
                    .ok_or_else(|| Error::Format("rgba buffer size mismatch".into()))?
                    .save(path)?;
            }
            c => {
                return Err(Error::Input(format!("cannot encode {c}-channel image as PNG")));
            }
        }
        Ok(())
    }

    pub fn load_png(path: impl AsRef<Path>) -> Result<Image> {
        let dynimg = image::open(path)?;
        let (data, w, h, c): (Vec<u8>, u32, u32, usize) = match dynimg {
            image::DynamicImage::ImageLuma8(g) => {
                let (w, h) = (g.width(), g.height());
                (g.into_raw(), w, h, 1)
            }
            image::DynamicImage::ImageRgba8(g) => {
                let (w, h) = (g.width(), g.height());
                (g.into_raw(), w, h, 4)
            }
            other => {
                let g = other.to_rgb8();
                let (w, h) = (g.width(), g.height());
                (g.into_raw(), w, h, 3)
            }
        };
        Ok(Image {
            width: w as usize,
            height: h as usize,
            channels: c,
            data: data.iter().map(|&b| b as f64 / 255.0).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn area_downscale_averages_blocks() {
        let img = Image::from_fn(4, 4, 1, |x, y, _| if x < 2 && y < 2 { 1.0 } else { 0.0 });
        let small = img.resize_area(2, 2);
        assert_eq!(small.get(0, 0, 0), 1.0);
        assert_eq!(small.get(1, 0, 0), 0.0);
        assert_eq!(small.get(1, 1, 0), 0.0);
    }

    #[test]
    fn bilinear_at_center_is_exact() {
        let img = Image::from_fn(3, 3, 1, |x, y, _| (x + 3 * y) as f64 / 10.0);
        assert!((img.sample_bilinear(1.5, 1.5, 0) - 0.4).abs() < 1e-12);
        // midpoint between (0,0) and (1,0)
        assert!((img.sample_bilinear(1.0, 0.5, 0) - 0.05).abs() < 1e-12);
    }

    #[test]
    fn png_roundtrip_rgb() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.png");
        let img = Image::from_fn(8, 5, 3, |x, y, c| ((x + y + c) % 7) as f64 / 6.0);
        img.save_png(&path).unwrap();
        let back = Image::load_png(&path).unwrap();
        assert_eq!(back.width(), 8);
        assert_eq!(back.height(), 5);
        for (a, b) in img.data().iter().zip(back.data()) {
            assert!((a - b).abs() < 1.0 / 255.0 + 1e-9);
        }
    }
}
