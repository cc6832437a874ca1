//! Small shared helpers: primality, prime powers, tuple enumeration.

use num_bigint::BigInt;
use num_traits::Pow;

/// Trial-division primality test. Moduli in this domain are desk scale.
pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut f = 3u64;
    while f.saturating_mul(f) <= p {
        if p.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

/// `p^exp` as a big integer.
pub(crate) fn pow_big(p: u64, exp: u32) -> BigInt {
    BigInt::from(p).pow(exp)
}

/// Writes `m = p^n` with `p` prime and `n >= 1`, if possible.
pub(crate) fn prime_power_parts(m: u128) -> Option<(u64, u32)> {
    if m < 2 {
        return None;
    }
    let mut p = 0u128;
    let mut f = 2u128;
    while f * f <= m {
        if m.is_multiple_of(f) {
            p = f;
            break;
        }
        f += 1;
    }
    if p == 0 {
        p = m; // m itself is prime
    }
    let mut rest = m;
    let mut n = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    if rest == 1 {
        Some((u64::try_from(p).ok()?, n))
    } else {
        None
    }
}

/// All strictly increasing k-tuples with entries in `0..n`, lexicographic.
pub(crate) fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k as isize - 1;
        while i >= 0 && cur[i as usize] == n - k + i as usize {
            i -= 1;
        }
        if i < 0 {
            break;
        }
        let i = i as usize;
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(97));
        assert!(!is_prime(0));
        assert!(!is_prime(1));
        assert!(!is_prime(6));
        assert!(!is_prime(91));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power_parts(8), Some((2, 3)));
        assert_eq!(prime_power_parts(27), Some((3, 3)));
        assert_eq!(prime_power_parts(5), Some((5, 1)));
        assert_eq!(prime_power_parts(6), None);
        assert_eq!(prime_power_parts(1), None);
        assert_eq!(prime_power_parts(12), None);
    }

    #[test]
    fn tuples() {
        assert_eq!(increasing_tuples(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(increasing_tuples(3, 4), Vec::<Vec<usize>>::new());
        assert_eq!(
            increasing_tuples(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(increasing_tuples(5, 5).len(), 1);
    }
}
