use num_bigint::BigInt;
use num_traits::One;

use crate::Error;

/// n!! with (-1)!! = 0!! = 1.
pub fn double_factorial(n: i64) -> Result<BigInt, Error> {
    if n < -1 {
        return Err(Error::InvalidArgument(format!("double factorial of {n}")));
    }
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    Ok(acc)
}

/// (2n-1)!! for n >= 0, the Gaussian moment factor.
pub fn odd_double_factorial(n: u32) -> BigInt {
    double_factorial(2 * n as i64 - 1).expect("argument is at least -1")
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k as u64 {
        acc = acc * (n as u64 - j) / (j + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(double_factorial(-1).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(0).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(9).unwrap(), BigInt::from(945));
        assert_eq!(double_factorial(8).unwrap(), BigInt::from(384));
        assert!(double_factorial(-2).is_err());
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }

    #[test]
    fn double_factorial_identity() {
        for n in 0..=20u32 {
            let lhs = (BigInt::one() << n as usize) * factorial(n) * odd_double_factorial(n);
            assert_eq!(lhs, factorial(2 * n), "n = {n}");
        }
    }
}
