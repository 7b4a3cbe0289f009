//! Text form of multivectors: a signed sum of terms such as `0.6e1+0.8e2`,
//! `2.5`, `-e12`, `3i e13` or `0.5*e123`.
//!
//! `e` followed by digits always names a blade (`e12` is `e1 e2`), so
//! scientific notation is not accepted in coefficients. A trailing `i` on a
//! coefficient makes it imaginary. Digits inside a blade may come in any order;
//! the product is formed left to right, so `e21` parses as `-e12`.

use num_complex::Complex;

use super::{blade_product, AlgebraDim, Multivector};
use crate::{Error, Result, Scalar};

pub fn parse_multivector<T: Scalar>(dim: AlgebraDim, text: &str) -> Result<Multivector<T>> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::Parse("empty multivector".into()));
    }
    let mut out = Multivector::zero(dim);
    let mut pos = 0;
    while pos < chars.len() {
        let mut sign = T::one();
        if pos > 0 || matches!(chars[pos], '+' | '-') {
            match chars.get(pos) {
                Some('+') => pos += 1,
                Some('-') => {
                    sign = -sign;
                    pos += 1
                }
                _ => return Err(Error::Parse(format!("expected + or - at offset {pos} in {text:?}"))),
            }
        }
        let (coef, next) = parse_coefficient::<T>(&chars, pos, text)?;
        pos = next;
        if chars.get(pos) == Some(&'*') {
            pos += 1;
            if chars.get(pos) != Some(&'e') {
                return Err(Error::Parse(format!("expected a blade after '*' in {text:?}")));
            }
        }
        let mut blade = 0usize;
        let mut negate = false;
        let mut has_blade = false;
        if chars.get(pos) == Some(&'e') {
            pos += 1;
            let start = pos;
            while let Some(d) = chars.get(pos).and_then(|c| c.to_digit(10)) {
                let k = d as usize;
                if k == 0 || k > dim.m() {
                    return Err(Error::Parse(format!(
                        "generator e{k} does not exist in Cl(0,{})",
                        dim.m()
                    )));
                }
                let (b, neg) = blade_product(blade, 1 << (k - 1));
                blade = b;
                negate ^= neg;
                pos += 1;
            }
            if pos == start {
                return Err(Error::Parse(format!("'e' without generator digits in {text:?}")));
            }
            has_blade = true;
        }
        let coef = match coef {
            Some(c) => c,
            None if has_blade => Complex::new(T::one(), T::zero()),
            None => return Err(Error::Parse(format!("empty term in {text:?}"))),
        };
        let coef = if negate { -coef } else { coef } * sign;
        out.coeffs_mut()[blade] += coef;
    }
    Ok(out)
}

fn parse_coefficient<T: Scalar>(
    chars: &[char],
    mut pos: usize,
    text: &str,
) -> Result<(Option<Complex<T>>, usize)> {
    let start = pos;
    while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '.') {
        pos += 1;
    }
    let digits: String = chars[start..pos].iter().collect();
    let imaginary = chars.get(pos) == Some(&'i');
    if imaginary {
        pos += 1;
    }
    if digits.is_empty() {
        if imaginary {
            return Ok((Some(Complex::new(T::zero(), T::one())), pos));
        }
        return Ok((None, pos));
    }
    let value: f64 = digits
        .parse()
        .map_err(|_| Error::Parse(format!("bad coefficient {digits:?} in {text:?}")))?;
    let v = T::of(value);
    let c = if imaginary {
        Complex::new(T::zero(), v)
    } else {
        Complex::new(v, T::zero())
    };
    Ok((Some(c), pos))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(m: usize, s: &str) -> Result<Multivector<f64>> {
        parse_multivector(AlgebraDim::new(m).unwrap(), s)
    }

    #[test]
    fn unit_vector_sum() {
        let mv = parse(2, "0.6e1+0.8e2").unwrap();
        assert_eq!(mv.coeff(1).re, 0.6);
        assert_eq!(mv.coeff(2).re, 0.8);
    }

    #[test]
    fn e_digits_is_a_blade_not_an_exponent() {
        let mv = parse(3, "2e12").unwrap();
        assert_eq!(mv.coeff(0b011).re, 2.0);
        assert_eq!(mv.coeff(0).re, 0.0);
    }

    #[test]
    fn reversed_digits_flip_sign() {
        let mv = parse(2, "e21").unwrap();
        assert_eq!(mv.coeff(0b11).re, -1.0);
    }

    #[test]
    fn scalar_imaginary_and_star() {
        let mv = parse(3, "-1.5 + 2i*e13 - e123").unwrap();
        assert_eq!(mv.coeff(0).re, -1.5);
        assert_eq!(mv.coeff(0b101), Complex::new(0.0, 2.0));
        assert_eq!(mv.coeff(0b111).re, -1.0);
    }

    #[test]
    fn rejects_missing_generator_and_out_of_range() {
        assert!(parse(2, "e3").is_err());
        assert!(parse(2, "1e").is_err());
        assert!(parse(2, "").is_err());
        assert!(parse(2, "e1 e2").is_err());
    }
}
