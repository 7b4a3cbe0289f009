use std::io::{BufRead, Write};

use crate::{Error, Result};

/// 8-bit RGB raster in row-major order, three bytes per pixel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RgbImage {
    pub width: usize,
    pub height: usize,
    pub data: Vec<u8>,
}

impl RgbImage {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 || data.len() != 3 * width * height {
            return Err(Error::Format(format!(
                "{} bytes for a {width}x{height} RGB image",
                data.len()
            )));
        }
        Ok(Self { width, height, data })
    }

    pub fn pixel(&self, row: usize, col: usize) -> [u8; 3] {
        let o = 3 * (row * self.width + col);
        [self.data[o], self.data[o + 1], self.data[o + 2]]
    }
}

fn header_token<R: BufRead>(r: &mut R) -> Result<String> {
    let mut token = String::new();
    let mut byte = [0u8; 1];
    loop {
        if r.read(&mut byte)? == 0 {
            return Err(Error::Format("truncated PPM header".into()));
        }
        match byte[0] {
            b'#' if token.is_empty() => {
                let mut skip = Vec::new();
                r.read_until(b'\n', &mut skip)?;
            }
            c if c.is_ascii_whitespace() => {
                if !token.is_empty() {
                    return Ok(token);
                }
            }
            c => token.push(c as char),
        }
    }
}

/// Reads a binary `P6` PPM with maxval 255.
pub fn read_ppm<R: BufRead>(mut r: R) -> Result<RgbImage> {
    if header_token(&mut r)? != "P6" {
        return Err(Error::Format("not a binary P6 PPM".into()));
    }
    let mut number = |what: &str| -> Result<usize> {
        header_token(&mut r)?
            .parse()
            .map_err(|_| Error::Format(format!("bad PPM {what}")))
    };
    let width = number("width")?;
    let height = number("height")?;
    let maxval = number("maxval")?;
    if maxval != 255 {
        return Err(Error::Format(format!("PPM maxval {maxval}; only 255 is supported")));
    }
    let mut data = vec![0u8; 3 * width * height];
    r.read_exact(&mut data)?;
    RgbImage::new(width, height, data)
}

pub fn write_ppm<W: Write>(img: &RgbImage, mut w: W) -> Result<()> {
    write!(w, "P6\n{} {}\n255\n", img.width, img.height)?;
    w.write_all(&img.data)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let data: Vec<u8> = (0..3 * 5 * 4).map(|i| (i * 37 % 256) as u8).collect();
        let img = RgbImage::new(5, 4, data).unwrap();
        let mut bytes = Vec::new();
        write_ppm(&img, &mut bytes).unwrap();
        let back = read_ppm(&bytes[..]).unwrap();
        assert_eq!(back, img);
        let mut again = Vec::new();
        write_ppm(&back, &mut again).unwrap();
        assert_eq!(again, bytes);
    }

    #[test]
    fn comments_in_the_header_are_skipped() {
        let mut bytes = b"P6\n# made by hand\n2 1\n# depth\n255\n".to_vec();
        bytes.extend_from_slice(&[1, 2, 3, 4, 5, 6]);
        let img = read_ppm(&bytes[..]).unwrap();
        assert_eq!(img.pixel(0, 1), [4, 5, 6]);
    }

    #[test]
    fn malformed_files_are_rejected() {
        assert!(read_ppm(&b"P3\n1 1\n255\n"[..]).is_err());
        assert!(read_ppm(&b"P6\n1 1\n65535\n\0\0\0\0\0\0"[..]).is_err());
        assert!(read_ppm(&b"P6\n2 2\n255\n\0\0\0"[..]).is_err());
    }
}
