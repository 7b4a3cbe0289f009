//! Binary container for multivector fields.
//!
//! Layout (all integers and floats little-endian):
//! magic `CLFF`, `u32` version, `u32` algebra dimension `m`, `u32` mode
//! (0 periodic, 1 calibrated), `u32` axis count `d`, `d` x `u64` axis sizes,
//! `d` x `f64` spacings, then the blade planes in blade order, each plane in
//! row-major grid order with interleaved `f64` real and imaginary parts.

use std::io::{Read, Write};

use num_complex::Complex;

use super::{GridMode, GridSpec, MultivectorField};
use crate::clifford::AlgebraDim;
use crate::{Error, Result, Scalar};

const MAGIC: &[u8; 4] = b"CLFF";
const VERSION: u32 = 1;

pub fn write_clff<T: Scalar, W: Write>(field: &MultivectorField<T>, mut w: W) -> Result<()> {
    let grid = field.grid();
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(field.dim().m() as u32).to_le_bytes())?;
    let mode: u32 = match grid.mode() {
        GridMode::Periodic => 0,
        GridMode::Calibrated => 1,
    };
    w.write_all(&mode.to_le_bytes())?;
    w.write_all(&(grid.ndim() as u32).to_le_bytes())?;
    for &n in grid.sizes() {
        w.write_all(&(n as u64).to_le_bytes())?;
    }
    for &d in grid.spacing() {
        w.write_all(&d.as_f64().to_le_bytes())?;
    }
    let mut buf = Vec::with_capacity(field.len() * 16);
    for plane in field.planes() {
        buf.clear();
        for c in plane {
            buf.extend_from_slice(&c.re.as_f64().to_le_bytes());
            buf.extend_from_slice(&c.im.as_f64().to_le_bytes());
        }
        w.write_all(&buf)?;
    }
    w.flush()?;
    Ok(())
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

fn read_f64<R: Read>(r: &mut R) -> Result<f64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}

pub fn read_clff<T: Scalar, R: Read>(mut r: R) -> Result<MultivectorField<T>> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Format("missing CLFF magic".into()));
    }
    let version = read_u32(&mut r)?;
    if version != VERSION {
        return Err(Error::Format(format!("unsupported CLFF version {version}")));
    }
    let dim = AlgebraDim::new(read_u32(&mut r)? as usize)?;
    let mode = match read_u32(&mut r)? {
        0 => GridMode::Periodic,
        1 => GridMode::Calibrated,
        other => return Err(Error::Format(format!("unknown grid mode {other}"))),
    };
    let ndim = read_u32(&mut r)? as usize;
    if ndim == 0 || ndim > 16 {
        return Err(Error::Format(format!("implausible axis count {ndim}")));
    }
    let sizes = (0..ndim)
        .map(|_| read_u64(&mut r).map(|n| n as usize))
        .collect::<Result<Vec<_>>>()?;
    let spacing = (0..ndim)
        .map(|_| read_f64(&mut r).map(T::of))
        .collect::<Result<Vec<_>>>()?;
    let grid = match mode {
        GridMode::Periodic => GridSpec::periodic(&sizes)?,
        GridMode::Calibrated => GridSpec::calibrated(&sizes, &spacing)?,
    };
    let len = grid.len();
    let mut planes = Vec::with_capacity(dim.blades());
    let mut raw = vec![0u8; len * 16];
    for _ in 0..dim.blades() {
        r.read_exact(&mut raw)?;
        let plane = raw
            .chunks_exact(16)
            .map(|c| {
                let re = f64::from_le_bytes(c[..8].try_into().unwrap());
                let im = f64::from_le_bytes(c[8..].try_into().unwrap());
                Complex::new(T::of(re), T::of(im))
            })
            .collect();
        planes.push(plane);
    }
    MultivectorField::from_planes(grid, dim, planes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let d = AlgebraDim::new(3).unwrap();
        let g = GridSpec::calibrated(&[4, 2, 6], &[0.1, 0.2, 0.3]).unwrap();
        let f = MultivectorField::<f64>::random(g, d, 1).scale(Complex::new(0.5, 0.25));
        let mut bytes = Vec::new();
        write_clff(&f, &mut bytes).unwrap();
        assert_eq!(bytes.len(), 4 + 16 + 3 * 16 + 48 * 8 * 16);
        let back: MultivectorField<f64> = read_clff(bytes.as_slice()).unwrap();
        assert!(back.grid().matches(f.grid()));
        assert_eq!(back.max_gap(&f), 0.0);
    }

    #[test]
    fn rejects_bad_magic() {
        assert!(matches!(read_clff::<f64, _>(&b"CLFX\x01\0\0\0"[..]), Err(Error::Format(_))));
    }
}
