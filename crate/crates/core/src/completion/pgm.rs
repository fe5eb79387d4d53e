//! Grayscale PGM (P2 ASCII and P5 binary) images, 8 bits per pixel.
//!
//! Missing pixels travel in a separate mask image of the same size: 0 marks
//! a missing pixel and 255 an observed one.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use thiserror::Error;

use super::masked::MaskedMatrix;
use super::svd::Matrix;

#[derive(Debug, Error)]
pub enum PgmError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed PGM: {0}")]
    Malformed(String),
    #[error("maxval must be 255, got {0}")]
    Maxval(u32),
    #[error("image is {image_rows}x{image_cols} but mask is {mask_rows}x{mask_cols}")]
    MaskDimensions {
        image_rows: usize,
        image_cols: usize,
        mask_rows: usize,
        mask_cols: usize,
    },
    #[error("mask pixel {index} is {value}; expected 0 (missing) or 255 (observed)")]
    MaskValue { index: usize, value: u8 },
    #[error("image has no observed pixels")]
    NothingObserved,
}

/// A parsed 8-bit grayscale image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

impl GrayImage {
    pub fn to_matrix(&self) -> Matrix {
        Matrix::new(
            self.height,
            self.width,
            self.pixels.iter().map(|&p| f64::from(p)).collect(),
        )
        .expect("image dimensions are nonzero")
    }

    /// Rounds to the nearest integer and clamps into `[0, 255]`.
    pub fn from_matrix(m: &Matrix) -> Self {
        Self {
            width: m.cols(),
            height: m.rows(),
            pixels: m
                .data()
                .iter()
                .map(|v| v.round().clamp(0.0, 255.0) as u8)
                .collect(),
        }
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn token(&mut self) -> Option<&'a [u8]> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#')
        {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.bytes[start..self.pos])
    }

    fn number(&mut self, what: &str) -> Result<u32, PgmError> {
        let tok = self
            .token()
            .ok_or_else(|| PgmError::Malformed(format!("missing {what}")))?;
        std::str::from_utf8(tok)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| {
                PgmError::Malformed(format!(
                    "bad {what} `{}`",
                    String::from_utf8_lossy(tok)
                ))
            })
    }
}

pub fn parse_pgm(bytes: &[u8]) -> Result<GrayImage, PgmError> {
    let mut cur = Cursor { bytes, pos: 0 };
    let binary = match cur.token() {
        Some(b"P2") => false,
        Some(b"P5") => true,
        _ => return Err(PgmError::Malformed("expected magic P2 or P5".into())),
    };
    let width = cur.number("width")? as usize;
    let height = cur.number("height")? as usize;
    if width == 0 || height == 0 {
        return Err(PgmError::Malformed("zero-sized image".into()));
    }
    let maxval = cur.number("maxval")?;
    if maxval != 255 {
        return Err(PgmError::Maxval(maxval));
    }
    let n = width * height;
    let pixels = if binary {
        // exactly one whitespace byte separates the header from the raster
        let start = cur.pos + 1;
        let raster = bytes
            .get(start..start + n)
            .ok_or_else(|| PgmError::Malformed(format!("raster shorter than {n} bytes")))?;
        raster.to_vec()
    } else {
        let mut px = Vec::with_capacity(n);
        for i in 0..n {
            let v = cur.number("pixel")?;
            if v > 255 {
                return Err(PgmError::Malformed(format!("pixel {i} = {v} exceeds maxval")));
            }
            px.push(v as u8);
        }
        if cur.token().is_some() {
            return Err(PgmError::Malformed("trailing data after raster".into()));
        }
        px
    };
    Ok(GrayImage {
        width,
        height,
        pixels,
    })
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> PgmError + '_ {
    move |source| PgmError::Io {
        path: path.display().to_string(),
        source,
    }
}

pub fn read_pgm(path: &Path) -> Result<GrayImage, PgmError> {
    let bytes = fs::read(path).map_err(io_err(path))?;
    parse_pgm(&bytes)
}

/// Pairs an image with its mask.
pub fn masked_from_images(image: &GrayImage, mask: &GrayImage) -> Result<MaskedMatrix, PgmError> {
    if (image.width, image.height) != (mask.width, mask.height) {
        return Err(PgmError::MaskDimensions {
            image_rows: image.height,
            image_cols: image.width,
            mask_rows: mask.height,
            mask_cols: mask.width,
        });
    }
    let mut observed = Vec::with_capacity(mask.pixels.len());
    for (index, &value) in mask.pixels.iter().enumerate() {
        match value {
            0 => observed.push(false),
            255 => observed.push(true),
            _ => return Err(PgmError::MaskValue { index, value }),
        }
    }
    MaskedMatrix::new(image.to_matrix(), observed).map_err(|_| PgmError::NothingObserved)
}

pub fn read_masked(image: &Path, mask: &Path) -> Result<MaskedMatrix, PgmError> {
    masked_from_images(&read_pgm(image)?, &read_pgm(mask)?)
}

/// ASCII PGM (P2, maxval 255), one image row per line.
pub fn encode_pgm(image: &GrayImage) -> Vec<u8> {
    let mut out = format!("P2\n{} {}\n255\n", image.width, image.height).into_bytes();
    for row in image.pixels.chunks(image.width) {
        let line: Vec<String> = row.iter().map(u8::to_string).collect();
        out.extend_from_slice(line.join(" ").as_bytes());
        out.push(b'\n');
    }
    out
}

pub fn write_pgm(m: &Matrix, path: &Path) -> Result<(), PgmError> {
    let file = fs::File::create(path).map_err(io_err(path))?;
    let mut w = BufWriter::new(file);
    w.write_all(&encode_pgm(&GrayImage::from_matrix(m)))
        .and_then(|_| w.flush())
        .map_err(io_err(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_ascii_example() {
        let img = parse_pgm(b"P2 2 2 255 0 128 255 64").unwrap();
        let m = img.to_matrix();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert_eq!(m.data(), &[0.0, 128.0, 255.0, 64.0]);
    }

    #[test]
    fn parse_with_comments_and_binary() {
        let img = parse_pgm(b"P2\n# made by hand\n3 1\n255\n1 2 3\n").unwrap();
        assert_eq!(img.pixels, vec![1, 2, 3]);
        let mut p5 = b"P5\n# c\n2 2\n255\n".to_vec();
        p5.extend_from_slice(&[0, 10, 32, 255]);
        let img = parse_pgm(&p5).unwrap();
        assert_eq!((img.width, img.height), (2, 2));
        assert_eq!(img.pixels, vec![0, 10, 32, 255]);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_pgm(b"P3 1 1 255 0"), Err(PgmError::Malformed(_))));
        assert!(matches!(parse_pgm(b"P2 1 1 65535 0"), Err(PgmError::Maxval(65535))));
        assert!(matches!(parse_pgm(b"P2 2 2 255 0 1 2"), Err(PgmError::Malformed(_))));
        assert!(matches!(parse_pgm(b"P2 1 1 255 300"), Err(PgmError::Malformed(_))));
        assert!(matches!(parse_pgm(b"P5 2 2 255 \x00"), Err(PgmError::Malformed(_))));
        assert!(matches!(parse_pgm(b"P2 x 1 255 0"), Err(PgmError::Malformed(_))));
    }

    #[test]
    fn mask_handling() {
        let img = parse_pgm(b"P2 2 1 255 10 20").unwrap();
        let all = parse_pgm(b"P2 2 1 255 255 255").unwrap();
        assert_eq!(masked_from_images(&img, &all).unwrap().missing_count(), 0);
        let half = parse_pgm(b"P2 2 1 255 0 255").unwrap();
        assert_eq!(masked_from_images(&img, &half).unwrap().missing_indices(), &[0]);

        let wrong = parse_pgm(b"P2 1 2 255 0 255").unwrap();
        assert!(matches!(
            masked_from_images(&img, &wrong),
            Err(PgmError::MaskDimensions { .. })
        ));
        let grey = parse_pgm(b"P2 2 1 255 0 128").unwrap();
        assert!(matches!(
            masked_from_images(&img, &grey),
            Err(PgmError::MaskValue { index: 1, value: 128 })
        ));
        let none = parse_pgm(b"P2 2 1 255 0 0").unwrap();
        assert!(matches!(masked_from_images(&img, &none), Err(PgmError::NothingObserved)));
    }

    #[test]
    fn write_rounds_and_clamps() {
        let m = Matrix::from_rows(&[&[-3.0, 12.4], &[12.5, 300.0]]).unwrap();
        let img = GrayImage::from_matrix(&m);
        assert_eq!(img.pixels, vec![0, 12, 13, 255]);
        assert_eq!(encode_pgm(&img), b"P2\n2 2\n255\n0 12\n13 255\n".to_vec());
    }
}
