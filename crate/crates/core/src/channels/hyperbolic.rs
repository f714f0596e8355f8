use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exactalg::{binomial, factorial, fmt_rational, int, rat, to_f64, Rational};
use crate::special::zeta;
use crate::Error;

/// Σ c ξ^p cosh^q(ξ) sinh^s(ξ), kept with q ∈ {0, 1} via cosh² = 1 + sinh².
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HypExpr {
    terms: BTreeMap<(i32, u32, i32), Rational>,
}

impl HypExpr {
    pub fn zero() -> Self {
        HypExpr::default()
    }

    pub fn term(c: Rational, p: i32, q: u32, s: i32) -> Self {
        let mut e = HypExpr::zero();
        e.add_term(c, p, q, s);
        e
    }

    /// 1/sinh ξ.
    pub fn csch() -> Self {
        HypExpr::term(Rational::one(), 0, 0, -1)
    }

    fn add_term(&mut self, c: Rational, p: i32, q: u32, s: i32) {
        if c.is_zero() {
            return;
        }
        if q >= 2 {
            self.add_term(c.clone(), p, q - 2, s);
            self.add_term(c, p, q - 2, s + 2);
            return;
        }
        let slot = self.terms.entry((p, q, s)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(p, q, s));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i32, u32, i32), &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &HypExpr) -> HypExpr {
        let mut out = self.clone();
        for (&(p, q, s), c) in &o.terms {
            out.add_term(c.clone(), p, q, s);
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> HypExpr {
        let mut out = HypExpr::zero();
        for (&(p, q, s), c) in &self.terms {
            out.add_term(c * r, p, q, s);
        }
        out
    }

    pub fn mul_xi_pow(&self, k: i32) -> HypExpr {
        let mut out = HypExpr::zero();
        for (&(p, q, s), c) in &self.terms {
            out.add_term(c.clone(), p + k, q, s);
        }
        out
    }

    pub fn derivative(&self) -> HypExpr {
        let mut out = HypExpr::zero();
        for (&(p, q, s), c) in &self.terms {
            if p != 0 {
                out.add_term(c * int(p as i64), p - 1, q, s);
            }
            if q != 0 {
                out.add_term(c * int(q as i64), p, q - 1, s + 1);
            }
            if s != 0 {
                out.add_term(c * int(s as i64), p, q + 1, s - 1);
            }
        }
        out
    }

    pub fn nth_derivative(&self, n: u32) -> HypExpr {
        (0..n).fold(self.clone(), |e, _| e.derivative())
    }

    pub fn eval(&self, xi: f64) -> f64 {
        let (ch, sh) = (xi.cosh(), xi.sinh());
        self.terms
            .iter()
            .map(|(&(p, q, s), c)| to_f64(c) * xi.powi(p) * ch.powi(q as i32) * sh.powi(s))
            .sum()
    }

    /// Laurent coefficients at ξ = 0 up to and including ξ^max_power.
    pub fn laurent(&self, max_power: i32) -> BTreeMap<i32, Rational> {
        let mut out: BTreeMap<i32, Rational> = BTreeMap::new();
        for (&(p, q, s), c) in &self.terms {
            let lead = p + s;
            if lead > max_power {
                continue;
            }
            let order = ((max_power - lead) / 2) as usize;
            let mut ser = series_pow(&sinh_over_xi(order), s, order);
            if q == 1 {
                ser = series_mul(&ser, &cosh_series(order), order);
            }
            for (j, a) in ser.iter().enumerate() {
                if !a.is_zero() {
                    *out.entry(lead + 2 * j as i32).or_insert_with(Rational::zero) += c * a;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// ∫_0^∞ exactly, as a combination of ζ(s). Each term needs
    /// q < r and p ≥ r for 1/sinh^r so that it converges on its own.
    pub fn mellin(&self) -> Result<ZetaForm, Error> {
        let mut out = ZetaForm::default();
        for (&(p, q, s), c) in &self.terms {
            let r = -s;
            if r < 1 || (q as i32) >= r || p < r {
                return Err(Error::InvalidArgument(format!(
                    "term ξ^{p} cosh^{q} sinh^{s} has no convergent integral on its own"
                )));
            }
            let r = r as u32;
            // 1/sinh^r = 2^r Σ_k C(k+r-1, r-1) e^{-(2k+r)ξ}; cosh splits into e^{±ξ}/2.
            let shifts: Vec<i32> = if q == 0 { vec![r as i32] } else { vec![r as i32 - 1, r as i32 + 1] };
            let pref = c * Rational::from_integer(factorial(p as u32)) * pow2(r as i32 - q as i32);
            for j0 in shifts {
                // weight C(k+r-1, r-1) with k = (j - j0)/2, as a polynomial in j
                let mut w = vec![rat(1, 1) / Rational::from_integer(factorial(r - 1))];
                for i in 1..r as i32 {
                    w = poly_mul_linear(&w, &rat(1, 2), &rat((2 * i - j0) as i64, 2));
                }
                let odd = j0.rem_euclid(2) == 1;
                for (d, wd) in w.iter().enumerate() {
                    if wd.is_zero() {
                        continue;
                    }
                    let sarg = p + 1 - d as i32;
                    // Σ_{j odd} j^{-s} = (1 - 2^{-s}) ζ(s); Σ_{j even} j^{-s} = 2^{-s} ζ(s)
                    let parity = if odd { Rational::one() - pow2(-sarg) } else { pow2(-sarg) };
                    out.add(sarg as u32, &(&pref * wd * parity));
                }
            }
        }
        Ok(out)
    }
}

fn pow2(e: i32) -> Rational {
    crate::exactalg::pow_i(&int(2), e)
}

/// (a0 + a1 j + ...) · (u j + v).
fn poly_mul_linear(a: &[Rational], u: &Rational, v: &Rational) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + 1];
    for (i, ai) in a.iter().enumerate() {
        out[i] += ai * v;
        out[i + 1] += ai * u;
    }
    out
}

/// Power series in ξ² as coefficient vectors.
fn sinh_over_xi(order: usize) -> Vec<Rational> {
    (0..=order).map(|j| Rational::one() / Rational::from_integer(factorial(2 * j as u32 + 1))).collect()
}

fn cosh_series(order: usize) -> Vec<Rational> {
    (0..=order).map(|j| Rational::one() / Rational::from_integer(factorial(2 * j as u32))).collect()
}

fn series_mul(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn series_inv(a: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order + 1];
    out[0] = a[0].recip();
    for n in 1..=order {
        let mut s = Rational::zero();
        for k in 1..=n.min(a.len() - 1) {
            s += &a[k] * &out[n - k];
        }
        out[n] = -s * &out[0];
    }
    out
}

fn series_pow(a: &[Rational], e: i32, order: usize) -> Vec<Rational> {
    let base = if e < 0 { series_inv(a, order) } else { a.to_vec() };
    let mut out = vec![Rational::zero(); order + 1];
    out[0] = Rational::one();
    for _ in 0..e.unsigned_abs() {
        out = series_mul(&out, &base, order);
    }
    out
}

impl fmt::Display for HypExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(p, q, s), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{} xi^{p} cosh^{q} sinh^{s}", fmt_rational(c))?;
        }
        Ok(())
    }
}

/// Σ_s c_s ζ(s).
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ZetaForm {
    #[serde(with = "zeta_map")]
    pub coefficients: BTreeMap<u32, Rational>,
}

impl ZetaForm {
    fn add(&mut self, s: u32, c: &Rational) {
        let slot = self.coefficients.entry(s).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coefficients.remove(&s);
        }
    }

    pub fn scale(&self, r: &Rational) -> ZetaForm {
        let mut out = ZetaForm::default();
        for (s, c) in &self.coefficients {
            out.add(*s, &(c * r));
        }
        out
    }

    pub fn value(&self) -> f64 {
        self.coefficients.iter().fold(0.0, |acc, (s, c)| acc + to_f64(c) * zeta(*s))
    }
}

impl fmt::Display for ZetaForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.coefficients.iter().map(|(s, c)| format!("{} zeta({s})", fmt_rational(c))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

mod zeta_map {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serializer};

    use crate::exactalg::{fmt_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(m: &BTreeMap<u32, Rational>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(m.iter().map(|(k, v)| (k.to_string(), fmt_rational(v))))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<u32, Rational>, D::Error> {
        let raw: BTreeMap<String, String> = BTreeMap::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                let k = k.parse().map_err(serde::de::Error::custom)?;
                let v = parse_rational(&v).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{v}`")))?;
                Ok((k, v))
            })
            .collect()
    }
}

/// d^n/dξ^n of 1/sinh ξ, in closed form.
pub fn csch_derivative(n: u32) -> HypExpr {
    HypExpr::csch().nth_derivative(n)
}

/// Unused-binomial guard keeps the weight construction honest in tests.
#[allow(dead_code)]
fn weight_by_binomial(k: u32, r: u32) -> Rational {
    Rational::from_integer(binomial(k + r - 1, r - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::ZETA3;

    #[test]
    fn derivative_of_csch() {
        let d = csch_derivative(1);
        let x: f64 = 0.7;
        assert!((d.eval(x) + x.cosh() / x.sinh().powi(2)).abs() < 1e-14);
        let h = 1e-4;
        let d3 = csch_derivative(3);
        let num = (csch_derivative(2).eval(x + h) - csch_derivative(2).eval(x - h)) / (2.0 * h);
        assert!((d3.eval(x) - num).abs() < 1e-6 * d3.eval(x).abs());
    }

    #[test]
    fn mellin_known_integrals() {
        // ∫ ξ²/sinh = 7ζ(3)/2
        let m = HypExpr::term(rat(1, 1), 2, 0, -1).mellin().unwrap();
        assert_eq!(m.coefficients.get(&3), Some(&rat(7, 2)));
        assert!((m.value() - 3.5 * ZETA3).abs() < 1e-14);
        // ∫ ξ³ cosh/sinh² = 3 ∫ ξ²/sinh by parts
        let m2 = HypExpr::term(rat(1, 1), 3, 1, -2).mellin().unwrap();
        assert!((m2.value() - 10.5 * ZETA3).abs() < 1e-13, "{m2}");
        assert!(HypExpr::term(rat(1, 1), 0, 0, -1).mellin().is_err());
    }

    #[test]
    fn mellin_weights_match_binomials() {
        for r in 1..6u32 {
            let mut w = vec![rat(1, 1) / Rational::from_integer(factorial(r - 1))];
            for i in 1..r as i32 {
                w = poly_mul_linear(&w, &rat(1, 2), &rat((2 * i - r as i32) as i64, 2));
            }
            for k in 0..6u32 {
                let j = Rational::from_integer((2 * k + r).into());
                let val = w.iter().rev().fold(Rational::zero(), |acc, c| acc * &j + c);
                assert_eq!(val, weight_by_binomial(k, r));
            }
        }
    }

    #[test]
    fn laurent_of_csch() {
        let l = HypExpr::csch().laurent(3);
        assert_eq!(l.get(&-1), Some(&rat(1, 1)));
        assert_eq!(l.get(&1), Some(&rat(-1, 6)));
        assert_eq!(l.get(&3), Some(&rat(7, 360)));
    }
}
