use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, parse_rational, Rational};
use crate::Error;

/// Element of Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussRational { re, im: Rational::zero() }
    }

    pub fn i() -> Self {
        GaussRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn conj(&self) -> Self {
        GaussRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussRational { re: &self.re * r, im: &self.im * r }
    }

    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(GaussRational { re: &self.re / &n, im: -&self.im / &n })
    }
}

impl From<Rational> for GaussRational {
    fn from(r: Rational) -> Self {
        GaussRational::real(r)
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        GaussRational { re: Rational::zero(), im: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        GaussRational::real(Rational::one())
    }
}

impl Add for GaussRational {
    type Output = GaussRational;
    fn add(self, o: GaussRational) -> GaussRational {
        GaussRational { re: self.re + o.re, im: self.im + o.im }
    }
}

impl<'a> Add<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, o: &GaussRational) -> GaussRational {
        GaussRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl AddAssign<&GaussRational> for GaussRational {
    fn add_assign(&mut self, o: &GaussRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl Sub for GaussRational {
    type Output = GaussRational;
    fn sub(self, o: GaussRational) -> GaussRational {
        GaussRational { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational { re: -self.re, im: -self.im }
    }
}

impl Mul for GaussRational {
    type Output = GaussRational;
    fn mul(self, o: GaussRational) -> GaussRational {
        &self * &o
    }
}

impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, o: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

/// Canonical forms: `p/q`, `p/qi`, `(a+bi)`.
impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", fmt_rational(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}i", fmt_rational(&self.im))
        } else {
            let sign = if self.im.is_negative() { "-" } else { "+" };
            write!(f, "({}{}{}i)", fmt_rational(&self.re), sign, fmt_rational(&self.im.abs()))
        }
    }
}

impl FromStr for GaussRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("bad coefficient `{s}`"));
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let body = inner.strip_suffix('i').ok_or_else(bad)?;
            // split at the sign that starts the imaginary part (not a leading sign)
            let pos = body
                .char_indices()
                .skip(1)
                .filter(|(_, c)| *c == '+' || *c == '-')
                .map(|(i, _)| i)
                .last()
                .ok_or_else(bad)?;
            let re = parse_rational(&body[..pos]).ok_or_else(bad)?;
            let im_str = &body[pos..];
            let im = parse_rational(im_str.strip_prefix('+').unwrap_or(im_str)).ok_or_else(bad)?;
            return Ok(GaussRational { re, im });
        }
        if let Some(im) = s.strip_suffix('i') {
            return Ok(GaussRational::new(Rational::zero(), parse_rational(im).ok_or_else(bad)?));
        }
        Ok(GaussRational::real(parse_rational(s).ok_or_else(bad)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn g(a: i64, b: i64, c: i64, d: i64) -> GaussRational {
        GaussRational::new(rat(a, b), rat(c, d))
    }

    #[test]
    fn i_squared() {
        let i = GaussRational::i();
        assert_eq!(&i * &i, -GaussRational::one());
    }

    #[test]
    fn text_round_trip() {
        for z in [g(1, 2, 0, 1), g(0, 1, -3, 4), g(-5, 3, 7, 2), g(2, 1, -1, 9), GaussRational::zero()] {
            let s = z.to_string();
            assert_eq!(s.parse::<GaussRational>().unwrap(), z, "{s}");
        }
        assert_eq!(g(-1, 2, -1, 3).to_string(), "(-1/2-1/3i)");
    }

    #[test]
    fn inverse() {
        let z = g(3, 1, 4, 1);
        assert_eq!(&z * &z.inv().unwrap(), GaussRational::one());
        assert!(GaussRational::zero().inv().is_none());
    }
}
