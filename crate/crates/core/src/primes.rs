//! Small prime utilities: primality, factorization, and the prime sequence
//! `p_1 = 2, p_2 = 3, ...` used by the Steinitz pairing.

use std::sync::Mutex;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// `Some((p, k))` when `n = p^k` with `k >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Least `k >= 1` with `a^k = 1 mod n`, for `gcd(a, n) = 1` and `n >= 2`.
pub fn multiplicative_order(a: u64, n: u64) -> Option<u32> {
    if n < 2 || gcd(a, n) != 1 {
        return None;
    }
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = x * (a % n) % n;
        k += 1;
    }
    Some(k)
}

static PRIMES: Mutex<Vec<u64>> = Mutex::new(Vec::new());

fn with_primes<T>(needed: impl Fn(&[u64]) -> bool, f: impl FnOnce(&[u64]) -> T) -> T {
    let mut primes = PRIMES.lock().unwrap_or_else(|e| e.into_inner());
    if primes.is_empty() {
        primes.push(2);
    }
    while !needed(&primes) {
        let mut c = *primes.last().unwrap() + 1;
        while !is_prime(c) {
            c += 1;
        }
        primes.push(c);
    }
    f(&primes)
}

/// The `i`-th prime, 1-based (`nth_prime(1) = 2`).
pub fn nth_prime(i: u64) -> u64 {
    assert!(i >= 1, "prime indices start at 1");
    let i = i as usize;
    with_primes(|ps| ps.len() >= i, |ps| ps[i - 1])
}

/// 1-based index of a prime in the prime sequence.
pub fn prime_index(p: u64) -> Option<u64> {
    if !is_prime(p) {
        return None;
    }
    with_primes(|ps| *ps.last().unwrap() >= p, |ps| ps.binary_search(&p).ok().map(|i| i as u64 + 1))
}
