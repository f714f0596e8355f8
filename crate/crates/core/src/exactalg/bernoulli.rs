use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{rat, Rational};

/// Memoized even Bernoulli numbers B_0, B_2, B_4, ... shared by all threads.
/// Readers take the read lock; an extension recomputes the table and the
/// first writer to publish a longer table wins.
pub struct BernoulliTable {
    even: RwLock<Vec<Rational>>,
}

static TABLE: OnceLock<BernoulliTable> = OnceLock::new();

impl BernoulliTable {
    pub fn global() -> &'static BernoulliTable {
        TABLE.get_or_init(|| BernoulliTable { even: RwLock::new(vec![Rational::one()]) })
    }

    /// B_{2n}.
    pub fn even(&self, n: usize) -> Rational {
        if let Some(b) = self.even.read().expect("bernoulli lock").get(n) {
            return b.clone();
        }
        let fresh = even_bernoulli_upto((n + 1).next_power_of_two().max(16));
        let mut w = self.even.write().expect("bernoulli lock");
        if w.len() < fresh.len() {
            *w = fresh;
        }
        w[n].clone()
    }

    pub fn len(&self) -> usize {
        self.even.read().expect("bernoulli lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// B_n with B_1 = -1/2.
pub fn bernoulli(n: usize) -> Rational {
    match n {
        1 => rat(-1, 2),
        _ if n % 2 == 1 => Rational::zero(),
        _ => BernoulliTable::global().even(n / 2),
    }
}

/// B_0, B_2, ..., B_{2(count-1)} from tangent numbers (Brent-Harvey):
/// B_{2n} = (-1)^{n-1} 2n T_n / (4^n (4^n - 1)).
fn even_bernoulli_upto(count: usize) -> Vec<Rational> {
    let nmax = count.saturating_sub(1);
    let mut tan = vec![BigInt::zero(); nmax + 1];
    if nmax >= 1 {
        tan[1] = BigInt::one();
    }
    for k in 2..=nmax {
        tan[k] = &tan[k - 1] * (k as u64 - 1);
    }
    for k in 2..=nmax {
        for j in k..=nmax {
            tan[j] = &tan[j - 1] * (j - k) as u64 + &tan[j] * (j - k + 2) as u64;
        }
    }
    let mut out = Vec::with_capacity(count);
    out.push(Rational::one());
    for (n, t) in tan.iter().enumerate().skip(1) {
        let four_n = BigInt::one() << (2 * n);
        let den = &four_n * (&four_n - 1u32);
        let num = t * (2 * n) as u64;
        let b = Rational::new(num, den);
        out.push(if n % 2 == 1 { b } else { -b });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::combinatorics::binomial;

    /// B_m = -1/(m+1) sum_{k<m} C(m+1, k) B_k.
    fn recurrence(nmax: usize) -> Vec<Rational> {
        let mut b = vec![Rational::one()];
        for m in 1..=nmax {
            let mut s = Rational::zero();
            for (k, bk) in b.iter().enumerate() {
                s += Rational::from_integer(binomial(m as u32 + 1, k as u32)) * bk;
            }
            b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
        }
        b
    }

    #[test]
    fn printed_values() {
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(6), rat(1, 42));
        assert_eq!(bernoulli(8), rat(-1, 30));
        assert_eq!(bernoulli(3), Rational::zero());
        assert_eq!(bernoulli(0), Rational::one());
    }

    #[test]
    fn matches_binomial_recurrence() {
        let oracle = recurrence(40);
        for (n, b) in oracle.iter().enumerate() {
            assert_eq!(&bernoulli(n), b, "B_{n}");
        }
    }

    #[test]
    fn concurrent_readers_agree() {
        let handles: Vec<_> = (0..4)
            .map(|k| std::thread::spawn(move || bernoulli(60 + 2 * k)))
            .collect();
        let got: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for (k, b) in got.iter().enumerate() {
            assert_eq!(b, &bernoulli(60 + 2 * k));
        }
    }
}
