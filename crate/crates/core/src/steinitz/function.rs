//! Exponent functions `f: ℙ → 𝕊ℕ` with `v_p(f(p)) = ∞`, and the codec
//! between them and single supernatural numbers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::pairing::{pair_components, pair_index};
use super::{Exponent, Supernatural};
use crate::error::{Error, Result};
use crate::primes::{is_prime, nth_prime, prime_index};

/// Number of leading primes materialized when an encoding has no finite form.
pub const DEFAULT_HORIZON: u64 = 128;

/// `f(p)` for finitely many listed primes; every other prime gets
/// `f(p) = p^∞ · base`.
///
/// With this pattern every unlisted value satisfies `v_p(f(p)) = ∞`
/// automatically, and both the constant function `full` (base `full`) and the
/// function `p ↦ p^∞` (base `1`) are expressible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentFunction {
    explicit: BTreeMap<u64, Supernatural>,
    base: Supernatural,
}

impl ExponentFunction {
    pub fn new(explicit: impl IntoIterator<Item = (u64, Supernatural)>, base: Supernatural) -> Result<Self> {
        let mut f = ExponentFunction { explicit: BTreeMap::new(), base };
        for (p, value) in explicit {
            if !is_prime(p) {
                return Err(Error::Parse(format!("{p} is not prime")));
            }
            if !value.valuation(p).is_infinite() {
                return Err(Error::InvalidExponentFunction { prime: p });
            }
            if f.explicit.contains_key(&p) {
                return Err(Error::Parse(format!("prime {p} listed twice")));
            }
            f.set(p, value);
        }
        Ok(f)
    }

    /// `f(p) = p^∞` for every prime.
    pub fn nilpotent() -> Self {
        ExponentFunction { explicit: BTreeMap::new(), base: Supernatural::one() }
    }

    /// `f(p) = full` for every prime.
    pub fn full() -> Self {
        ExponentFunction { explicit: BTreeMap::new(), base: Supernatural::full() }
    }

    fn pattern(&self, p: u64) -> Supernatural {
        self.base.clone().with(p, Exponent::Infinite)
    }

    fn set(&mut self, p: u64, value: Supernatural) {
        if value == self.pattern(p) {
            self.explicit.remove(&p);
        } else {
            self.explicit.insert(p, value);
        }
    }

    pub fn at(&self, p: u64) -> Supernatural {
        self.explicit.get(&p).cloned().unwrap_or_else(|| self.pattern(p))
    }

    pub fn explicit(&self) -> &BTreeMap<u64, Supernatural> {
        &self.explicit
    }

    pub fn base(&self) -> &Supernatural {
        &self.base
    }

    /// Primes whose value differs from the base pattern, plus primes the base mentions.
    pub fn support(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.explicit.keys().chain(self.base.explicit().keys()).copied().collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    fn combine(&self, other: &Self, op: fn(&Supernatural, &Supernatural) -> Supernatural) -> Self {
        let mut out = ExponentFunction { explicit: BTreeMap::new(), base: op(&self.base, &other.base) };
        for p in self.support().into_iter().chain(other.support()) {
            out.set(p, op(&self.at(p), &other.at(p)));
        }
        out
    }

    /// Whether the encoding is a finitely presented supernatural number.
    fn encodes_exactly(&self) -> bool {
        self.base.explicit().is_empty()
            && self.explicit.values().all(|v| v.default_exponent() == self.base.default_exponent())
    }
}

/// Pointwise `lcm`: the defining function of the regular join.
pub fn reg_join(f1: &ExponentFunction, f2: &ExponentFunction) -> ExponentFunction {
    f1.combine(f2, Supernatural::lcm)
}

/// Pointwise `gcd`: the defining function of the regular meet.
pub fn reg_meet(f1: &ExponentFunction, f2: &ExponentFunction) -> ExponentFunction {
    f1.combine(f2, Supernatural::gcd)
}

/// The encoding of `f` as a lazily evaluated supernatural number: the
/// exponent at the `i`-th prime is `v_{p_b}(f(p_a))` where `(a, b)` is the
/// `i`-th off-diagonal pair.
#[derive(Clone, Debug)]
pub struct Encoded {
    f: ExponentFunction,
}

impl Encoded {
    pub fn valuation_at_index(&self, i: u64) -> Exponent {
        let (a, b) = pair_components(i).expect("prime indices start at 1");
        self.f.at(nth_prime(a)).valuation(nth_prime(b))
    }

    pub fn valuation(&self, p: u64) -> Exponent {
        match prime_index(p) {
            Some(i) => self.valuation_at_index(i),
            None => Exponent::ZERO,
        }
    }

    /// Exact finite form, when one exists.
    pub fn exact(&self) -> Option<Supernatural> {
        if !self.f.encodes_exactly() {
            return None;
        }
        let mut out = Supernatural { explicit: BTreeMap::new(), default: self.f.base.default_exponent() };
        for (&p, value) in &self.f.explicit {
            let a = prime_index(p).expect("keys are prime");
            for (&q, &e) in value.explicit() {
                if q != p {
                    let i = pair_index(a, prime_index(q).expect("keys are prime")).expect("a != b");
                    out = out.with(nth_prime(i), e);
                }
            }
        }
        Some(out)
    }

    /// The first `horizon` prime exponents, with the base default beyond.
    pub fn truncated(&self, horizon: u64) -> Supernatural {
        let mut out = Supernatural { explicit: BTreeMap::new(), default: self.f.base.default_exponent() };
        for i in 1..=horizon {
            out = out.with(nth_prime(i), self.valuation_at_index(i));
        }
        out
    }
}

pub fn encoded(f: &ExponentFunction) -> Encoded {
    Encoded { f: f.clone() }
}

/// The supernatural number encoding `f`; exact when it has a finite form,
/// otherwise truncated at [`DEFAULT_HORIZON`] primes.
pub fn encode(f: &ExponentFunction) -> Supernatural {
    encode_with_horizon(f, DEFAULT_HORIZON)
}

pub fn encode_with_horizon(f: &ExponentFunction, horizon: u64) -> Supernatural {
    let e = encoded(f);
    e.exact().unwrap_or_else(|| e.truncated(horizon))
}

/// Inverse of [`encode`]: `v_{p_b}(α(p_a)) = v_{p_{pair_index(a, b)}}(ω)` for `a ≠ b`.
pub fn decode(w: &Supernatural) -> ExponentFunction {
    let base = if w.default_exponent().is_infinite() { Supernatural::full() } else { Supernatural::one() };
    let mut f = ExponentFunction { explicit: BTreeMap::new(), base };
    for (&p, &e) in w.explicit() {
        let i = prime_index(p).expect("keys are prime");
        let (a, b) = pair_components(i).expect("i >= 1");
        let (pa, pb) = (nth_prime(a), nth_prime(b));
        let value = f.at(pa).with(pb, e);
        f.set(pa, value);
    }
    f
}

impl fmt::Display for ExponentFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, v) in &self.explicit {
            write!(f, "{p}->{v}, ")?;
        }
        write!(f, "default->{}", self.base)
    }
}

impl FromStr for ExponentFunction {
    type Err = Error;

    /// `"2->2^inf*3, 3->3^inf, default->full"`; a missing `default` means `1`.
    fn from_str(s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut base = None;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (lhs, rhs) =
                part.split_once("->").ok_or_else(|| Error::Parse(format!("expected `p->value` in {part:?}")))?;
            let value: Supernatural = rhs.parse()?;
            match lhs.trim() {
                "default" => {
                    if base.replace(value).is_some() {
                        return Err(Error::Parse("default given twice".into()));
                    }
                }
                p => {
                    let p: u64 = p.parse().map_err(|_| Error::Parse(format!("bad prime {p:?}")))?;
                    entries.push((p, value));
                }
            }
        }
        ExponentFunction::new(entries, base.unwrap_or_else(Supernatural::one))
    }
}

impl Serialize for ExponentFunction {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExponentFunction {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
