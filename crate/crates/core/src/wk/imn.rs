use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exactalg::{fmt_rational, parse_rational, MultiPoly, Rational, Symbol};
use crate::Error;

/// One term c · g^g_pow · t^t_pow · I_mn.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImnEntry {
    #[serde(with = "crate::exactalg::rational_text")]
    pub coefficient: Rational,
    pub m: u32,
    pub n: u32,
    pub g_pow: i32,
    pub t_pow: i32,
}

impl ImnEntry {
    pub fn difference(&self) -> u32 {
        self.m - self.n
    }

    pub fn is_log(&self) -> bool {
        self.m == self.n
    }
}

/// ∫d²p d²x W_k e^{-tH} = 2π · Σ c g^{g_pow} t^{t_pow} I_mn for the quartic
/// potential. The t^{-1} of the momentum normalization (2π/t) is already in
/// `t_pow`; the 2π stays outside (`two_pi_power`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImnDecomposition {
    pub order: usize,
    pub entries: Vec<ImnEntry>,
    pub two_pi_power: i32,
}

pub const IMN_CSV_HEADER: &str = "coef_num,coef_den,m,n,g_pow,t_pow";

impl ImnDecomposition {
    /// k/2, the largest m - n a dominant entry can have.
    pub fn leading_difference(&self) -> u32 {
        (self.order / 2) as u32
    }

    pub fn is_subdominant(&self, e: &ImnEntry) -> bool {
        e.difference() < self.leading_difference()
    }

    /// ℓ with m - n = k/2 - 2ℓ, when the entry fits that pattern.
    pub fn ell(&self, e: &ImnEntry) -> Option<u32> {
        let gap = self.leading_difference().checked_sub(e.difference())?;
        (gap % 2 == 0).then_some(gap / 2)
    }

    pub fn leading(&self) -> impl Iterator<Item = &ImnEntry> {
        self.entries.iter().filter(move |e| !self.is_subdominant(e))
    }

    pub fn subdominant(&self) -> impl Iterator<Item = &ImnEntry> {
        self.entries.iter().filter(move |e| self.is_subdominant(e))
    }

    pub fn max_difference(&self) -> Option<u32> {
        self.entries.iter().map(|e| e.difference()).max()
    }

    pub fn get(&self, m: u32, n: u32) -> Option<&ImnEntry> {
        self.entries.iter().find(|e| e.m == m && e.n == n)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from(IMN_CSV_HEADER);
        s.push('\n');
        for e in &self.entries {
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                e.coefficient.numer(),
                e.coefficient.denom(),
                e.m,
                e.n,
                e.g_pow,
                e.t_pow
            ));
        }
        s
    }

    pub fn from_csv(order: usize, text: &str) -> Result<Self, Error> {
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some(IMN_CSV_HEADER) {
            return Err(Error::Parse("missing I_mn CSV header".into()));
        }
        let mut entries = Vec::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let f: Vec<&str> = line.split(',').map(str::trim).collect();
            if f.len() != 6 {
                return Err(Error::Parse(format!("bad CSV row `{line}`")));
            }
            let bad = || Error::Parse(format!("bad CSV row `{line}`"));
            let coefficient = parse_rational(&format!("{}/{}", f[0], f[1])).ok_or_else(bad)?;
            entries.push(ImnEntry {
                coefficient,
                m: f[2].parse().map_err(|_| bad())?,
                n: f[3].parse().map_err(|_| bad())?,
                g_pow: f[4].parse().map_err(|_| bad())?,
                t_pow: f[5].parse().map_err(|_| bad())?,
            });
        }
        Ok(ImnDecomposition { order, entries, two_pi_power: 1 })
    }
}

impl std::fmt::Display for ImnEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} g^{} t^{} I_{}{}", fmt_rational(&self.coefficient), self.g_pow, self.t_pow, self.m, self.n)
    }
}

/// Maps a momentum-reduced quartic W_k onto I_mn integrals. Each term
/// alpha^j t^e x^{2a} y^{2b} becomes g^{2j} t^{e-1} I_{max(a,b),min(a,b)}.
pub fn imn_decompose(reduced: &MultiPoly, k: usize) -> Result<ImnDecomposition, Error> {
    let mut acc: BTreeMap<(u32, u32, i32, i32), Rational> = BTreeMap::new();
    for (mono, c) in reduced.terms() {
        if mono.exp(Symbol::Px) != 0 || mono.exp(Symbol::Py) != 0 {
            return Err(Error::InvalidArgument("momenta left in reduced polynomial".into()));
        }
        if !c.is_real() {
            return Err(Error::InvalidArgument(format!("imaginary coefficient {c} after reduction")));
        }
        let (ex, ey) = (mono.exp(Symbol::X), mono.exp(Symbol::Y));
        if ex % 2 != 0 || ey % 2 != 0 || ex < 0 || ey < 0 {
            return Err(Error::InvalidArgument(format!("odd or negative power x^{ex} y^{ey}")));
        }
        let (a, b) = ((ex / 2) as u32, (ey / 2) as u32);
        let key = (a.max(b), a.min(b), 2 * mono.exp(Symbol::Alpha), mono.exp(Symbol::T) - 1);
        *acc.entry(key).or_insert_with(Rational::zero) += &c.re;
    }
    let entries = acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((m, n, g_pow, t_pow), coefficient)| ImnEntry { coefficient, m, n, g_pow, t_pow })
        .collect();
    Ok(ImnDecomposition { order: k, entries, two_pi_power: 1 })
}

/// The a_m^{(n)} of the λ^{2n} term: coefficients of I_mm in W_{4n}, indexed by m.
pub fn log_coefficients(decomp: &ImnDecomposition, n: u32) -> Result<Vec<Rational>, Error> {
    if decomp.order != 4 * n as usize {
        return Err(Error::InvalidArgument(format!("λ^{} coefficients need W_{}", 2 * n, 4 * n)));
    }
    let logs: Vec<&ImnEntry> = decomp.entries.iter().filter(|e| e.is_log()).collect();
    let mmax = logs.iter().map(|e| e.m).max().ok_or_else(|| Error::InvalidArgument("no I_mm entries".into()))?;
    let mut out = vec![Rational::zero(); mmax as usize + 1];
    for e in logs {
        let (gp, tp) = (2 * e.m as i32 + 2 * n as i32, e.m as i32 + 3 * n as i32 - 1);
        if e.g_pow != gp || e.t_pow != tp {
            return Err(Error::InvalidArgument(format!("I_mm entry {e} breaks the g^{gp} t^{tp} pattern")));
        }
        out[e.m as usize] = e.coefficient.clone();
    }
    Ok(out)
}
