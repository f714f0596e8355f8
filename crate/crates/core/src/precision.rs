//! Arbitrary-precision real arithmetic for the cancellation-sensitive sums.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

use crate::exactalg::Rational;
use crate::Error;

const RM: RoundingMode = RoundingMode::ToEven;

/// Euler-Mascheroni constant, 128 digits.
const EULER_GAMMA_DIGITS: &str = "0.57721566490153286060651209008240243104215933593992359880576723488486772677766467093694706329174674951463144724980708248096050401";

/// Binary precision for a requested number of decimal digits.
pub fn bits_for_digits(digits: usize) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64
}

/// Working context: a fixed precision and a constants cache.
pub struct HighPrec {
    bits: usize,
    cc: Consts,
}

impl HighPrec {
    pub fn with_digits(digits: usize) -> Result<Self, Error> {
        if digits > 120 {
            return Err(Error::InvalidArgument(format!(
                "{digits} digits requested, the stored constants carry 120"
            )));
        }
        let cc = Consts::new().map_err(|e| Error::Numeric(format!("constant cache: {e:?}")))?;
        Ok(HighPrec { bits: bits_for_digits(digits.max(16)), cc })
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.bits)
    }

    pub fn rational(&mut self, r: &Rational) -> BigFloat {
        let n = BigFloat::parse(&r.numer().to_string(), Radix::Dec, self.bits, RM, &mut self.cc);
        let d = BigFloat::parse(&r.denom().to_string(), Radix::Dec, self.bits, RM, &mut self.cc);
        n.div(&d, self.bits, RM)
    }

    pub fn euler_gamma(&mut self) -> BigFloat {
        BigFloat::parse(EULER_GAMMA_DIGITS, Radix::Dec, self.bits, RM, &mut self.cc)
    }

    pub fn ln(&mut self, x: &BigFloat) -> BigFloat {
        x.ln(self.bits, RM, &mut self.cc)
    }

    pub fn ln2(&mut self) -> BigFloat {
        let two = self.int(2);
        self.ln(&two)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.bits, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.bits, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.bits, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.bits, RM)
    }

    pub fn zero(&self) -> BigFloat {
        self.int(0)
    }

    pub fn to_f64(&mut self, x: &BigFloat) -> f64 {
        self.to_decimal(x).parse().unwrap_or(f64::NAN)
    }

    pub fn to_decimal(&mut self, x: &BigFloat) -> String {
        x.format(Radix::Dec, RM, &mut self.cc).unwrap_or_else(|_| "NaN".into())
    }
}
