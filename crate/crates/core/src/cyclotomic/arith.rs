//! Elementary number theory on small positive integers.

use crate::error::{Error, Result};

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// ascending prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Möbius function.
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::Domain("mobius(0) is undefined".into()));
    }
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.len().is_multiple_of(2) { 1 } else { -1 })
}

/// Euler's totient: how many integers in `1..=n` are coprime to `n`.
pub fn totient(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("totient(0) is undefined".into()));
    }
    Ok(factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1)))
}

/// Product of the distinct primes dividing `n` (the squarefree kernel).
pub fn radical(n: u64) -> u64 {
    factorize(n).into_iter().map(|(p, _)| p).product()
}

pub fn is_squarefree(n: u64) -> bool {
    n > 0 && radical(n) == n
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `Some(p)` when `n = p^k` for a prime `p` and `k >= 1`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    match factorize(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_totient(n: u64) -> u64 {
        (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(30).unwrap(), -1);
        assert_eq!(mobius(104).unwrap(), 0);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn totient_examples() {
        assert_eq!(totient(1).unwrap(), 1);
        assert_eq!(totient(17).unwrap(), 16);
        assert_eq!(totient(69).unwrap(), 44);
        assert!(totient(0).is_err());
    }

    #[test]
    fn totient_matches_brute_force() {
        for n in 1..=300 {
            assert_eq!(totient(n).unwrap(), brute_totient(n), "n={n}");
        }
    }

    #[test]
    fn mobius_multiplicative_on_coprime_pairs() {
        for m in 1..=104u64 {
            for n in 1..=104u64 {
                if gcd(m, n) == 1 {
                    assert_eq!(
                        mobius(m * n).unwrap(),
                        mobius(m).unwrap() * mobius(n).unwrap(),
                        "m={m} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn divisors_and_radical() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(radical(72), 6);
        assert_eq!(prime_power_base(8), Some(2));
        assert_eq!(prime_power_base(33), None);
        assert_eq!(prime_power_base(1), None);
    }
}
