//! Arithmetic in GF(p^d), elements encoded as integers `sum c_i p^i`.

use crate::primes::is_prime;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisField {
    p: u64,
    degree: u32,
    /// Coefficients `c_0..c_{d-1}` of the monic modulus `x^d + ... + c_0`.
    modulus: Vec<u64>,
}

impl GaloisField {
    /// The field with `p^degree` elements, reduced modulo the least monic
    /// irreducible polynomial of that degree (ordered by its integer code,
    /// highest non-leading coefficient most significant).
    pub fn new(p: u64, degree: u32) -> Option<Self> {
        if !is_prime(p) || degree == 0 {
            return None;
        }
        let codes = p.checked_pow(degree)?;
        let modulus = (0..codes).map(|code| digits(code, p, degree as usize)).find(|low| is_irreducible(p, low))?;
        Some(GaloisField { p, degree, modulus })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.degree)
    }

    /// Coefficients of the modulus from the constant term up, including the leading 1.
    pub fn modulus(&self) -> Vec<u64> {
        let mut m = self.modulus.clone();
        m.push(1);
        m
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let d = self.degree as usize;
        let (x, y) = (digits(a, self.p, d), digits(b, self.p, d));
        encode(x.iter().zip(&y).map(|(u, v)| (u + v) % self.p), self.p)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let d = self.degree as usize;
        let p = self.p;
        let (x, y) = (digits(a, p, d), digits(b, p, d));
        let mut prod = vec![0u64; 2 * d];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % p;
            }
        }
        // x^d = -(c_0 + ... + c_{d-1} x^{d-1})
        for k in (d..2 * d).rev() {
            let top = prod[k];
            if top == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &c) in self.modulus.iter().enumerate() {
                prod[k - d + i] = (prod[k - d + i] + (p - c) * top) % p;
            }
        }
        encode(prod[..d].iter().copied(), p)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }

    /// Least element (by code) of multiplicative order exactly `n`.
    pub fn least_element_of_order(&self, n: u64) -> Option<u64> {
        (1..self.size()).find(|&a| self.multiplicative_order(a) == Some(n))
    }
}

fn digits(mut code: u64, p: u64, d: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(d);
    for _ in 0..d {
        out.push(code % p);
        code /= p;
    }
    out
}

fn encode(coeffs: impl DoubleEndedIterator<Item = u64>, p: u64) -> u64 {
    coeffs.rev().fold(0, |acc, c| acc * p + c)
}

/// Remainder of `num` modulo a monic `den` (both from the constant term up).
fn poly_rem(p: u64, num: &[u64], den: &[u64]) -> Vec<u64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let top = r.pop().unwrap();
        if top != 0 {
            let shift = r.len() - dd;
            for (i, &c) in den[..dd].iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - c) * top % p) % p;
            }
        }
    }
    r
}

fn is_irreducible(p: u64, low: &[u64]) -> bool {
    let d = low.len();
    if d == 1 {
        return true;
    }
    let mut poly = low.to_vec();
    poly.push(1);
    (1..=d / 2).all(|k| {
        (0..p.pow(k as u32)).all(|code| {
            let mut den = digits(code, p, k);
            den.push(1);
            poly_rem(p, &poly, &den).iter().any(|&c| c != 0)
        })
    })
}
