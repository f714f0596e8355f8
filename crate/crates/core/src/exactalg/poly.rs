use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::gauss::GaussRational;
use super::rational::{int, Rational};
use crate::Error;

pub const NSYM: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    X,
    Y,
    Px,
    Py,
    T,
    Alpha,
}

/// Symbol order fixes the exponent-tuple layout and the text form.
pub const ALPHABET: [(Symbol, &str); NSYM] = [
    (Symbol::X, "x"),
    (Symbol::Y, "y"),
    (Symbol::Px, "px"),
    (Symbol::Py, "py"),
    (Symbol::T, "t"),
    (Symbol::Alpha, "alpha"),
];

impl Symbol {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ALPHABET[self.index()].1
    }

    pub fn from_name(name: &str) -> Result<Symbol, Error> {
        ALPHABET
            .iter()
            .find(|(_, n)| *n == name)
            .map(|(s, _)| *s)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn positions(dims: usize) -> &'static [Symbol] {
        &[Symbol::X, Symbol::Y][..dims]
    }

    pub fn momenta(dims: usize) -> &'static [Symbol] {
        &[Symbol::Px, Symbol::Py][..dims]
    }

    /// Momentum conjugate to a position symbol.
    pub fn conjugate(self) -> Option<Symbol> {
        match self {
            Symbol::X => Some(Symbol::Px),
            Symbol::Y => Some(Symbol::Py),
            _ => None,
        }
    }
}

/// Dense signed exponent tuple; the derived order is lexicographic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [i32; NSYM]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NSYM])
    }

    pub fn of(sym: Symbol, e: i32) -> Self {
        Monomial::one().with(sym, e)
    }

    pub fn exp(&self, sym: Symbol) -> i32 {
        self.0[sym.index()]
    }

    pub fn with(mut self, sym: Symbol, e: i32) -> Self {
        self.0[sym.index()] = e;
        self
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0.iter()) {
            *a += b;
        }
        Monomial(e)
    }
}

/// Exact polynomial over {x, y, px, py, t, alpha} with Q(i) coefficients.
/// Exponents may be negative (t^-k after momentum reduction).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, GaussRational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        MultiPoly::constant(GaussRational::one())
    }

    pub fn constant(c: GaussRational) -> Self {
        MultiPoly::term(c, Monomial::one())
    }

    pub fn term(c: GaussRational, m: Monomial) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(m, &c);
        p
    }

    pub fn var(sym: Symbol) -> Self {
        MultiPoly::term(GaussRational::one(), Monomial::of(sym, 1))
    }

    /// `c * prod sym^e`
    pub fn mono(c: Rational, exps: &[(Symbol, i32)]) -> Self {
        let mut m = Monomial::one();
        for &(s, e) in exps {
            m.0[s.index()] += e;
        }
        MultiPoly::term(c.into(), m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&GaussRational::real(r.clone()))
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        MultiPoly { terms: self.terms.iter().map(|(m, v)| (m.mul(mono), v.clone())).collect() }
    }

    pub fn diff(&self, sym: Symbol) -> Self {
        let i = sym.index();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e != 0 {
                let mut m2 = *m;
                m2.0[i] -= 1;
                out.add_term(m2, &c.scale(&int(e as i64)));
            }
        }
        out
    }

    pub fn diff_named(&self, name: &str) -> Result<Self, Error> {
        Ok(self.diff(Symbol::from_name(name)?))
    }

    /// Antiderivative in t with zero integration constant. A t^-1 term has no
    /// polynomial antiderivative and is rejected.
    pub fn integrate_t(&self) -> Result<Self, Error> {
        let i = Symbol::T.index();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == -1 {
                return Err(Error::InvalidArgument("t^-1 term has no polynomial antiderivative".into()));
            }
            let mut m2 = *m;
            m2.0[i] += 1;
            out.add_term(m2, &c.scale(&Rational::new(1.into(), (e + 1).into())));
        }
        Ok(out)
    }

    /// Value at sym = 0 (terms with a positive power drop out).
    pub fn at_zero(&self, sym: Symbol) -> Result<Self, Error> {
        let i = sym.index();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            match m.0[i] {
                0 => out.add_term(*m, c),
                e if e < 0 => {
                    return Err(Error::InvalidArgument(format!("{}^{} is singular at 0", sym.name(), e)))
                }
                _ => {}
            }
        }
        Ok(out)
    }

    pub fn max_exponent(&self, sym: Symbol) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(sym)).max()
    }

    pub fn min_exponent(&self, sym: Symbol) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(sym)).min()
    }

    pub fn involves(&self, sym: Symbol) -> bool {
        self.terms.keys().any(|m| m.exp(sym) != 0)
    }

    /// Gathers terms by the exponent of `sym`, stripping that symbol.
    pub fn collect_by(&self, sym: Symbol) -> BTreeMap<i32, MultiPoly> {
        let mut out: BTreeMap<i32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exp(sym)).or_default().add_term(m.with(sym, 0), c);
        }
        out
    }

    /// Numeric value with every symbol substituted; returns (re, im).
    pub fn eval(&self, vals: &[f64; NSYM]) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (m, c) in &self.terms {
            let mut v = 1.0;
            for (k, &e) in m.0.iter().enumerate() {
                v *= vals[k].powi(e);
            }
            re += v * super::to_f64(&c.re);
            im += v * super::to_f64(&c.im);
        }
        (re, im)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: MultiPoly) -> MultiPoly {
        &self + &o
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, &-c.clone());
        }
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: MultiPoly) -> MultiPoly {
        &self - &o
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: MultiPoly) -> MultiPoly {
        &self * &o
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c} *")?;
            for (s, name) in ALPHABET {
                write!(f, " {name}^{}", m.exp(s))?;
            }
        }
        Ok(())
    }
}

impl FromStr for MultiPoly {
    type Err = Error;

    /// Accepts the canonical form; symbols may be omitted (exponent 0) or
    /// written without `^` (exponent 1).
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let mut out = MultiPoly::zero();
        if s == "0" {
            return Ok(out);
        }
        for chunk in s.split(" + ") {
            let (coef, rest) = match chunk.split_once(" *") {
                Some((c, r)) => (c, r),
                None => (chunk, ""),
            };
            let c: GaussRational = coef.parse()?;
            let mut m = Monomial::one();
            for factor in rest.split_whitespace() {
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => {
                        (n, e.parse::<i32>().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?)
                    }
                    None => (factor, 1),
                };
                m.0[Symbol::from_name(name)?.index()] += e;
            }
            out.add_term(m, &c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use Symbol::*;

    fn v(s: Symbol) -> MultiPoly {
        MultiPoly::var(s)
    }

    #[test]
    fn linearity_and_squares() {
        let xy = &v(X) * &v(Y);
        assert_eq!(&xy + &xy, MultiPoly::mono(int(2), &[(X, 1), (Y, 1)]));
        let lhs = &(&v(Px) + &v(Py)) * &(&v(Px) - &v(Py));
        let rhs = &(&v(Px) * &v(Px)) - &(&v(Py) * &v(Py));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivatives() {
        let p = MultiPoly::mono(int(1), &[(X, 2), (Y, 2)]);
        assert_eq!(p.diff(X), MultiPoly::mono(int(2), &[(X, 1), (Y, 2)]));
        assert_eq!(p.diff(Y).diff(Y), MultiPoly::mono(int(2), &[(X, 2)]));
        assert!(matches!(p.diff_named("z"), Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn t_antiderivative() {
        assert_eq!(MultiPoly::one().integrate_t().unwrap(), v(T));
        let t2 = MultiPoly::mono(int(1), &[(T, 2)]);
        assert_eq!(t2.integrate_t().unwrap(), MultiPoly::mono(rat(1, 3), &[(T, 3)]));
        assert!(MultiPoly::mono(int(1), &[(T, -1)]).integrate_t().is_err());
        assert_eq!(MultiPoly::mono(int(1), &[(T, -2)]).integrate_t().unwrap(), MultiPoly::mono(int(-1), &[(T, -1)]));
    }

    #[test]
    fn canonical_text() {
        let p = &MultiPoly::mono(rat(-1, 2), &[(X, 2), (T, 1)]) + &MultiPoly::term(GaussRational::i(), Monomial::of(Px, 1));
        let s = p.to_string();
        assert_eq!(s, "1i * x^0 y^0 px^1 py^0 t^0 alpha^0 + -1/2 * x^2 y^0 px^0 py^0 t^1 alpha^0");
        assert_eq!(s.parse::<MultiPoly>().unwrap(), p);
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!("3/4 * x y^2".parse::<MultiPoly>().unwrap(), MultiPoly::mono(rat(3, 4), &[(X, 1), (Y, 2)]));
    }
}
