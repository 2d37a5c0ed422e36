//! Supernatural numbers and the lattice they form under `lcm`/`gcd`.

pub mod function;
pub mod pairing;

use std::cmp::{max, min};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::{factorize, is_prime};

pub use function::{
    decode, encode, encode_with_horizon, reg_join, reg_meet, Encoded, ExponentFunction, DEFAULT_HORIZON,
};
pub use pairing::{pair_components, pair_index};

/// A `p`-adic exponent: a natural number or infinity. Infinity sorts last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Exponent {
    Finite(u32),
    Infinite,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent::Finite(0);

    pub fn is_zero(self) -> bool {
        self == Exponent::ZERO
    }

    pub fn is_infinite(self) -> bool {
        self == Exponent::Infinite
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(k) => write!(f, "{k}"),
            Exponent::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" => Ok(Exponent::Infinite),
            t => t.parse().map(Exponent::Finite).map_err(|_| Error::Parse(format!("bad exponent {t:?}"))),
        }
    }
}

/// `∏ p^{v_p}` over all primes: finitely many explicit exponents, and a
/// default (`0` or `∞`) for every other prime.
///
/// Kept canonical: `explicit` never holds an exponent equal to `default`, so
/// derived equality is equality of supernatural numbers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Supernatural {
    explicit: BTreeMap<u64, Exponent>,
    default: Exponent,
}

impl Supernatural {
    pub fn one() -> Self {
        Supernatural { explicit: BTreeMap::new(), default: Exponent::ZERO }
    }

    /// `∏ p^∞` over all primes.
    pub fn full() -> Self {
        Supernatural { explicit: BTreeMap::new(), default: Exponent::Infinite }
    }

    /// # Panics
    /// If `n == 0`.
    pub fn from_u64(n: u64) -> Self {
        assert!(n > 0, "0 is not a supernatural number");
        let explicit = factorize(n).into_iter().map(|(p, e)| (p, Exponent::Finite(e))).collect();
        Supernatural { explicit, default: Exponent::ZERO }
    }

    /// `p^∞`
    pub fn prime_infinity(p: u64) -> Self {
        Supernatural::one().with(p, Exponent::Infinite)
    }

    pub fn new(explicit: impl IntoIterator<Item = (u64, Exponent)>, default: Exponent) -> Result<Self> {
        if !matches!(default, Exponent::Finite(0) | Exponent::Infinite) {
            return Err(Error::Parse(format!("default exponent must be 0 or inf, got {default}")));
        }
        let mut s = Supernatural { explicit: BTreeMap::new(), default };
        for (p, e) in explicit {
            if !is_prime(p) {
                return Err(Error::Parse(format!("{p} is not prime")));
            }
            s = s.with(p, e);
        }
        Ok(s)
    }

    /// The same number with `v_p` replaced by `e`.
    pub fn with(mut self, p: u64, e: Exponent) -> Self {
        debug_assert!(is_prime(p));
        if e == self.default {
            self.explicit.remove(&p);
        } else {
            self.explicit.insert(p, e);
        }
        self
    }

    pub fn valuation(&self, p: u64) -> Exponent {
        self.explicit.get(&p).copied().unwrap_or(self.default)
    }

    pub fn explicit(&self) -> &BTreeMap<u64, Exponent> {
        &self.explicit
    }

    pub fn default_exponent(&self) -> Exponent {
        self.default
    }

    fn pointwise(&self, other: &Self, op: fn(Exponent, Exponent) -> Exponent) -> Self {
        let mut out = Supernatural { explicit: BTreeMap::new(), default: op(self.default, other.default) };
        for &p in self.explicit.keys().chain(other.explicit.keys()) {
            out = out.with(p, op(self.valuation(p), other.valuation(p)));
        }
        out
    }

    pub fn lcm(&self, other: &Self) -> Self {
        self.pointwise(other, max)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        self.pointwise(other, min)
    }

    /// `self | other`: `v_p(self) <= v_p(other)` for every prime.
    pub fn divides(&self, other: &Self) -> bool {
        self.default <= other.default
            && self.explicit.keys().chain(other.explicit.keys()).all(|&p| self.valuation(p) <= other.valuation(p))
    }

    /// Every exponent is `0` or `∞`.
    pub fn is_complete(&self) -> bool {
        self.explicit.values().all(|e| e.is_zero() || e.is_infinite())
    }

    pub fn is_natural(&self) -> bool {
        self.default.is_zero() && self.explicit.values().all(|e| !e.is_infinite())
    }

    /// The value as an integer, when natural and small enough.
    pub fn to_u64(&self) -> Option<u64> {
        if !self.is_natural() {
            return None;
        }
        self.explicit.iter().try_fold(1u64, |acc, (&p, e)| match e {
            Exponent::Finite(k) => acc.checked_mul(p.checked_pow(*k)?),
            Exponent::Infinite => None,
        })
    }

    /// The complete number with `0` and `∞` swapped; `None` unless complete.
    pub fn complement(&self) -> Option<Self> {
        if !self.is_complete() {
            return None;
        }
        let swap = |e: Exponent| if e.is_zero() { Exponent::Infinite } else { Exponent::ZERO };
        Some(Supernatural {
            explicit: self.explicit.iter().map(|(&p, &e)| (p, swap(e))).collect(),
            default: swap(self.default),
        })
    }

    /// Does a natural number `n >= 1` divide this number?
    pub fn is_divided_by(&self, n: u64) -> bool {
        Supernatural::from_u64(n).divides(self)
    }
}

impl fmt::Display for Supernatural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.to_u64() {
            return write!(f, "{n}");
        }
        if self.explicit.is_empty() {
            return f.write_str(if self.default.is_infinite() { "full" } else { "1" });
        }
        let factors: Vec<String> = self
            .explicit
            .iter()
            .map(|(p, e)| match e {
                Exponent::Finite(1) => p.to_string(),
                e => format!("{p}^{e}"),
            })
            .collect();
        f.write_str(&factors.join("*"))?;
        if self.default.is_infinite() {
            f.write_str(" default=inf")?;
        }
        Ok(())
    }
}

impl FromStr for Supernatural {
    type Err = Error;

    /// Accepts `"36"`, `"2^3*5^inf"`, `"2^0*3 default=inf"`, `"full"`, `"1"`.
    /// A bare natural factor is factorized, so `"12*5"` means `60`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, default) = match s.split_once("default=") {
            Some((body, d)) => (body.trim(), d.trim().parse::<Exponent>()?),
            None => (s, Exponent::ZERO),
        };
        if !matches!(default, Exponent::Finite(0) | Exponent::Infinite) {
            return Err(Error::Parse(format!("default exponent must be 0 or inf in {s:?}")));
        }
        let mut out = Supernatural { explicit: BTreeMap::new(), default };
        if body.is_empty() {
            return Ok(out);
        }
        if body == "full" {
            return Ok(Supernatural::full());
        }
        let mut seen = Vec::new();
        for factor in body.split('*') {
            let factor = factor.trim();
            match factor.split_once('^') {
                Some((p, e)) => {
                    let p: u64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad prime {p:?} in {s:?}")))?;
                    if !is_prime(p) {
                        return Err(Error::Parse(format!("{p} is not prime in {s:?}")));
                    }
                    if seen.contains(&p) {
                        return Err(Error::Parse(format!("prime {p} repeated in {s:?}")));
                    }
                    seen.push(p);
                    out = out.with(p, e.parse()?);
                }
                None => {
                    let n: u64 = factor.parse().map_err(|_| Error::Parse(format!("bad factor {factor:?} in {s:?}")))?;
                    if n == 0 {
                        return Err(Error::Parse("0 is not a supernatural number".into()));
                    }
                    for (p, e) in factorize(n) {
                        if seen.contains(&p) {
                            return Err(Error::Parse(format!("prime {p} repeated in {s:?}")));
                        }
                        seen.push(p);
                        out = out.with(p, Exponent::Finite(e));
                    }
                }
            }
        }
        Ok(out)
    }
}

impl Serialize for Supernatural {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Supernatural {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sn(s: &str) -> Supernatural {
        s.parse().unwrap()
    }

    #[test]
    fn natural_arithmetic() {
        assert_eq!(sn("12").lcm(&sn("18")), sn("36"));
        assert_eq!(sn("12").gcd(&sn("18")), sn("6"));
        assert_eq!(sn("12").lcm(&sn("18")).to_string(), "36");
        assert!(sn("6").divides(&sn("12")));
        assert!(!sn("4").divides(&sn("6")));
    }

    #[test]
    fn infinite_exponents() {
        assert_eq!(sn("2^inf*3").lcm(&sn("2*3^inf")), sn("2^inf*3^inf"));
        assert_eq!(sn("2^inf*3").gcd(&sn("2*3^inf")), sn("6"));
        for s in ["1", "12", "2^inf", "7^3*11^inf", "3^2 default=inf", "full"] {
            assert!(sn(s).divides(&Supernatural::full()));
            assert!(Supernatural::one().divides(&sn(s)));
        }
        assert!(!Supernatural::full().divides(&sn("2^inf*3^inf")));
    }

    #[test]
    fn completeness() {
        assert!(sn("2^inf*5^inf").is_complete());
        assert!(!sn("12").is_complete());
        assert!(!sn("2^inf").is_natural());
        assert!(sn("12").is_natural());
        assert!(Supernatural::full().is_complete());
        let w = sn("2^inf*5^inf");
        let c = w.complement().unwrap();
        assert_eq!(c, sn("2^0*5^0 default=inf"));
        assert_eq!(w.lcm(&c), Supernatural::full());
        assert_eq!(w.gcd(&c), Supernatural::one());
        assert!(sn("12").complement().is_none());
    }

    #[test]
    fn text_round_trip() {
        for s in ["1", "36", "2^inf", "2^3*5^inf", "2^0*3^2 default=inf", "full", "2^inf*3^7"] {
            assert_eq!(sn(s).to_string(), s);
        }
        assert_eq!(sn("2^3*5^inf default=0"), sn("2^3*5^inf"));
        assert_eq!(sn("2^inf default=inf"), Supernatural::full());
        assert_eq!(sn("12*5"), sn("60"));
        assert!("2^3*2^1".parse::<Supernatural>().is_err());
        assert!("4^2".parse::<Supernatural>().is_err());
        assert!("2^x".parse::<Supernatural>().is_err());
        assert!("0".parse::<Supernatural>().is_err());
        assert!("2 default=3".parse::<Supernatural>().is_err());
    }

    #[test]
    fn canonical_form() {
        let a = Supernatural::one().with(2, Exponent::ZERO);
        assert!(a.explicit().is_empty());
        assert_eq!(a, Supernatural::one());
    }
}
