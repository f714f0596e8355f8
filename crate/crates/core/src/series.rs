//! Asymptotic series in λ² with optimal truncation.

use serde::{Deserialize, Serialize};

use crate::exactalg::{to_f64, Rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub n: u32,
    pub lambda_power: u32,
    /// Exact coefficient when it is rational.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub coefficient: Option<Rational>,
    pub coefficient_value: f64,
}

/// Σ_n c_n λ^{2n} with its optimally truncated partial sum at one λ².
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticSeries {
    pub terms: Vec<SeriesTerm>,
    pub lambda_sq: f64,
    /// Last included n.
    pub truncation_index: u32,
    pub partial_sum: f64,
    /// Magnitude of the first omitted term, when the table reaches it.
    pub first_omitted: Option<f64>,
}

/// Flat per-term JSON record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub n: u32,
    pub coeff_num: Option<String>,
    pub coeff_den: Option<String>,
    pub lambda_power: u32,
    pub value_at_params: f64,
    pub cumulative_sum: f64,
    pub first_omitted: Option<f64>,
}

impl AsymptoticSeries {
    /// Truncation rule: stop before the first term whose magnitude exceeds its predecessor.
    pub fn new(terms: Vec<SeriesTerm>, lambda_sq: f64) -> Self {
        let vals: Vec<f64> = terms.iter().map(|t| t.coefficient_value * lambda_sq.powi(t.n as i32)).collect();
        let mut cut = vals.len();
        for i in 1..vals.len() {
            if vals[i].abs() > vals[i - 1].abs() {
                cut = i;
                break;
            }
        }
        let partial_sum = vals[..cut].iter().sum();
        let truncation_index = if cut == 0 { 0 } else { terms[cut - 1].n };
        let first_omitted = vals.get(cut).map(|v| v.abs());
        AsymptoticSeries { terms, lambda_sq, truncation_index, partial_sum, first_omitted }
    }

    pub fn term_values(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.coefficient_value * self.lambda_sq.powi(t.n as i32)).collect()
    }

    pub fn records(&self) -> Vec<SeriesRecord> {
        let mut cum = 0.0;
        self.terms
            .iter()
            .zip(self.term_values())
            .map(|(t, v)| {
                cum += v;
                SeriesRecord {
                    n: t.n,
                    coeff_num: t.coefficient.as_ref().map(|c| c.numer().to_string()),
                    coeff_den: t.coefficient.as_ref().map(|c| c.denom().to_string()),
                    lambda_power: t.lambda_power,
                    value_at_params: v,
                    cumulative_sum: cum,
                    first_omitted: (t.n == self.truncation_index).then_some(self.first_omitted).flatten(),
                }
            })
            .collect()
    }

    /// CSV columns n, |term|, partial_sum.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,abs_term,partial_sum\n");
        for r in self.records() {
            s.push_str(&format!("{},{:e},{:e}\n", r.n, r.value_at_params.abs(), r.cumulative_sum));
        }
        s
    }
}

impl SeriesTerm {
    pub fn exact(n: u32, c: Rational) -> Self {
        SeriesTerm { n, lambda_power: 2 * n, coefficient_value: to_f64(&c), coefficient: Some(c) }
    }

    pub fn real(n: u32, v: f64) -> Self {
        SeriesTerm { n, lambda_power: 2 * n, coefficient: None, coefficient_value: v }
    }
}

mod opt_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::exactalg::{fmt_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&fmt_rational(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        match s {
            None => Ok(None),
            Some(s) => parse_rational(&s)
                .map(Some)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`"))),
        }
    }
}
