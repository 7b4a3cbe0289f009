use num_complex::Complex;

use super::{qft, qft_inverse, quaternion_dim, Quaternion, RgbImage};
use crate::clifford::{exp_root, Multivector, RootOfMinusOne};
use crate::gft::{GridSpec, MultivectorField};
use crate::{Error, Result, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Raw,
    EncodedRgb,
}

/// Quaternion-valued image on a periodic grid: axis 0 runs over rows, axis 1 over columns.
#[derive(Clone, Debug)]
pub struct QuaternionImage<T: Scalar> {
    field: MultivectorField<T>,
    provenance: Provenance,
}

impl<T: Scalar> QuaternionImage<T> {
    /// Wraps a 2-axis `Cl(0,2)` field as a raw image.
    pub fn from_field(field: MultivectorField<T>) -> Result<Self> {
        if field.dim().m() != 2 || field.grid().ndim() != 2 {
            return Err(Error::DimensionMismatch("images are 2-axis Cl(0,2) fields".into()));
        }
        Ok(Self {
            field,
            provenance: Provenance::Raw,
        })
    }

    pub fn width(&self) -> usize {
        self.field.grid().sizes()[1]
    }

    pub fn height(&self) -> usize {
        self.field.grid().sizes()[0]
    }

    pub fn field(&self) -> &MultivectorField<T> {
        &self.field
    }

    pub fn into_field(self) -> MultivectorField<T> {
        self.field
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn pixel(&self, row: usize, col: usize) -> Result<Quaternion<T>> {
        Quaternion::from_multivector(&self.field.get_at(&[row, col]))
    }
}

/// Orthonormal change of color axes applied before the `i, j, k` mapping.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ColorBasis<T: Scalar> {
    rows: [[T; 3]; 3],
}

impl<T: Scalar> ColorBasis<T> {
    /// `(r, g, b)` maps straight to `(i, j, k)`.
    pub fn canonical() -> Self {
        let (o, z) = (T::one(), T::zero());
        Self {
            rows: [[o, z, z], [z, o, z], [z, z, o]],
        }
    }

    /// Rotation whose rows are the target axes; rejects non-orthonormal input.
    pub fn rotation(rows: [[T; 3]; 3]) -> Result<Self> {
        for a in 0..3 {
            for b in 0..3 {
                let d = (0..3).fold(T::zero(), |acc, k| acc + rows[a][k] * rows[b][k]);
                let want = if a == b { T::one() } else { T::zero() };
                if (d - want).abs() > T::of(1e-10) {
                    return Err(Error::Unsupported("color basis rows are not orthonormal".into()));
                }
            }
        }
        Ok(Self { rows })
    }

    fn apply(&self, v: [T; 3]) -> [T; 3] {
        let r = &self.rows;
        [0, 1, 2].map(|a| r[a][0] * v[0] + r[a][1] * v[1] + r[a][2] * v[2])
    }

    fn apply_transpose(&self, v: [T; 3]) -> [T; 3] {
        let r = &self.rows;
        [0, 1, 2].map(|a| r[0][a] * v[0] + r[1][a] * v[1] + r[2][a] * v[2])
    }
}

/// `(r, g, b) -> (r i + g j + b k) / 255` after the basis rotation. Both
/// image sides need at least two pixels.
pub fn encode_rgb<T: Scalar>(img: &RgbImage, basis: &ColorBasis<T>) -> Result<QuaternionImage<T>> {
    let grid = GridSpec::periodic(&[img.height, img.width])?;
    let scale = T::of(255.0);
    let field = MultivectorField::from_index_fn(grid, quaternion_dim(), |idx| {
        let p = img.pixel(idx[0], idx[1]);
        let v = basis.apply(p.map(|c| T::of(c as f64) / scale));
        Quaternion::pure(v[0], v[1], v[2]).to_multivector()
    });
    Ok(QuaternionImage {
        field,
        provenance: Provenance::EncodedRgb,
    })
}

/// What [`decode_rgb`] threw away.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DecodeReport<T: Scalar> {
    /// Largest scalar coefficient.
    pub scalar_residue: T,
    /// Largest imaginary part of any coefficient.
    pub complex_residue: T,
    /// Number of channel values clamped into `[0, 1]`.
    pub clamped: usize,
}

/// Inverse of [`encode_rgb`]: drops the scalar part, clamps to `[0, 1]` and rounds to 8 bits.
pub fn decode_rgb<T: Scalar>(img: &QuaternionImage<T>, basis: &ColorBasis<T>) -> (RgbImage, DecodeReport<T>) {
    let (h, w) = (img.height(), img.width());
    let mut report = DecodeReport {
        scalar_residue: T::zero(),
        complex_residue: T::zero(),
        clamped: 0,
    };
    let mut data = Vec::with_capacity(3 * w * h);
    for flat in 0..h * w {
        let c = img.field.get(flat).into_coeffs();
        report.scalar_residue = report.scalar_residue.max(c[0].re.abs());
        report.complex_residue = c.iter().fold(report.complex_residue, |acc, v| acc.max(v.im.abs()));
        let v = basis.apply_transpose([c[1].re, c[2].re, c[3].re]);
        for x in v {
            if x < T::zero() || x > T::one() {
                report.clamped += 1;
            }
            let byte = (x.max(T::zero()).min(T::one()) * T::of(255.0)).round();
            data.push(byte.to_u8().unwrap_or(0));
        }
    }
    (RgbImage::new(w, h, data).expect("size from the grid"), report)
}

/// `qft^-1(M qft(f))` with the multiplier applied from the left at every frequency.
pub fn filter_field<T: Scalar>(
    f: &MultivectorField<T>,
    multiplier: &MultivectorField<T>,
    mu: &RootOfMinusOne<T>,
    nu: &RootOfMinusOne<T>,
) -> Result<MultivectorField<T>> {
    let spectrum = qft(mu, nu, f)?;
    multiplier.grid().ensure_matches(spectrum.grid(), "filter multiplier")?;
    let filtered = multiplier.pointwise_product(&spectrum)?;
    qft_inverse(mu, nu, f.grid(), &filtered)
}

/// Encode, filter, decode.
pub fn filter_image<T: Scalar>(
    img: &RgbImage,
    multiplier: &MultivectorField<T>,
    mu: &RootOfMinusOne<T>,
    nu: &RootOfMinusOne<T>,
    basis: &ColorBasis<T>,
) -> Result<(RgbImage, DecodeReport<T>)> {
    let encoded = encode_rgb(img, basis)?;
    let field = filter_field(&encoded.field, multiplier, mu, nu)?;
    let out = QuaternionImage {
        field,
        provenance: Provenance::Raw,
    };
    Ok(decode_rgb(&out, basis))
}

/// Scalar multiplier `exp(-sigma^2 |u|^2 / 2)`: a Gaussian blur of width
/// `sigma` pixels in the image domain.
pub fn gaussian_lowpass<T: Scalar>(grid: &GridSpec<T>, sigma: T) -> MultivectorField<T> {
    let dual = grid.dual();
    let d = quaternion_dim();
    MultivectorField::from_index_fn(dual.clone(), d, |idx| {
        let u2 = (0..2).fold(T::zero(), |acc, k| {
            let u = dual.frequency(k, idx[k]);
            acc + u * u
        });
        Multivector::scalar(d, Complex::new((-sigma * sigma * u2 / T::of(2.0)).exp(), T::zero()))
    })
}

/// Multiplier `exp(-mu theta(u))` with `theta` the polar angle of the frequency `(u_1, u_2)`.
pub fn directional_phase<T: Scalar>(grid: &GridSpec<T>, mu: &RootOfMinusOne<T>) -> MultivectorField<T> {
    let dual = grid.dual();
    MultivectorField::from_index_fn(dual.clone(), quaternion_dim(), |idx| {
        let theta = dual.frequency(1, idx[1]).atan2(dual.frequency(0, idx[0]));
        exp_root(mu, -theta)
    })
}
