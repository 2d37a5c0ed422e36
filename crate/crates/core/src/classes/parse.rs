//! Text syntax for [`ClassSpec`].
//!
//! ```text
//! spec := name
//!       | "nilpotent_p:" p | "p_nilpotent:" p
//!       | "S_pi:" primes | "S_pi':" primes          primes := p | "{" p ("," p)* "}"
//!       | "sylow_tower:" p (">" p)*
//!       | "S(" ["omega="] supernatural ")"
//!       | "bounded(" spec "," supernatural ")"
//!       | "prod(" spec "," spec ")"
//!       | "cap(" spec ("," spec)* ")"
//!       | "vstar(" spec ")"
//!       | "local(" p "->" spec ("," ...)* ["," "default->" spec] ")"
//!       | "reg(f:" exponent-function ")"
//! name := trivial | abelian | A | nilpotent | N | soluble | S
//!       | supersoluble | U | all | vU
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{ClassSpec, LocalDefinition, NamedClass, PrimeOrdering, PrimeSet};
use crate::error::{Error, Result};
use crate::primes::is_prime;

fn bad(s: &str, why: &str) -> Error {
    Error::InvalidSpec(format!("{why} in {s:?}"))
}

/// Splits on commas that are not nested inside brackets.
pub(crate) fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => {
                depth -= 1;
                if depth < 0 {
                    return Err(bad(s, "unbalanced brackets"));
                }
            }
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(bad(s, "unbalanced brackets"));
    }
    parts.push(s[start..].trim());
    Ok(parts)
}

fn parse_prime(s: &str) -> Result<u64> {
    match s.trim().parse::<u64>() {
        Ok(p) if is_prime(p) => Ok(p),
        _ => Err(bad(s, "expected a prime")),
    }
}

fn parse_primes(s: &str) -> Result<Vec<u64>> {
    let s = s.trim();
    let inner = match s.strip_prefix('{') {
        Some(rest) => rest.strip_suffix('}').ok_or_else(|| bad(s, "missing '}'"))?,
        None => s,
    };
    inner.split(',').map(parse_prime).collect()
}

/// `name(args)` → `Some((name, args))`
fn call(s: &str) -> Option<(&str, &str)> {
    let open = s.find('(')?;
    let inner = s[open + 1..].strip_suffix(')')?;
    Some((s[..open].trim(), inner))
}

impl FromStr for ClassSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let spec = parse_spec(s)?;
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_spec(s: &str) -> Result<ClassSpec> {
    let s = s.trim();
    let named = |n| Ok(ClassSpec::Named(n));
    match s {
        "trivial" | "1" => return named(NamedClass::Trivial),
        "abelian" | "A" => return named(NamedClass::Abelian),
        "nilpotent" | "N" => return named(NamedClass::Nilpotent),
        "soluble" | "S" => return named(NamedClass::Soluble),
        "supersoluble" | "U" => return named(NamedClass::Supersoluble),
        "all" => return named(NamedClass::All),
        "vU" => return named(NamedClass::VU),
        _ => {}
    }
    if let Some(p) = s.strip_prefix("nilpotent_p:") {
        return named(NamedClass::NilpotentP(parse_prime(p)?));
    }
    if let Some(p) = s.strip_prefix("p_nilpotent:") {
        return named(NamedClass::PNilpotent(parse_prime(p)?));
    }
    if let Some(ps) = s.strip_prefix("S_pi':") {
        return named(NamedClass::PiSoluble(PrimeSet::all_except(parse_primes(ps)?)));
    }
    if let Some(ps) = s.strip_prefix("S_pi:") {
        return named(NamedClass::PiSoluble(PrimeSet::of(parse_primes(ps)?)));
    }
    if let Some(order) = s.strip_prefix("sylow_tower:") {
        let primes = order.split('>').map(parse_prime).collect::<Result<Vec<_>>>()?;
        return named(NamedClass::SylowTower(PrimeOrdering::new(primes)?));
    }
    let (head, inner) = call(s).ok_or_else(|| bad(s, "unknown class"))?;
    let args = split_top_level(inner)?;
    let one = |args: &[&str]| -> Result<ClassSpec> {
        match args {
            [a] => parse_spec(a),
            _ => Err(bad(s, "expected one argument")),
        }
    };
    match head {
        "S" => {
            let w = inner.trim();
            let w = w.strip_prefix("omega=").unwrap_or(w);
            Ok(ClassSpec::soluble_exponent(w.parse()?))
        }
        "bounded" => match args.as_slice() {
            [base, w] => Ok(ClassSpec::ExponentBounded(Box::new(parse_spec(base)?), w.parse()?)),
            _ => Err(bad(s, "expected bounded(spec, supernatural)")),
        },
        "prod" => match args.as_slice() {
            [h, f] => Ok(ClassSpec::product(parse_spec(h)?, parse_spec(f)?)),
            _ => Err(bad(s, "expected prod(H, F)")),
        },
        "cap" => Ok(ClassSpec::Intersection(args.iter().map(|a| parse_spec(a)).collect::<Result<_>>()?)),
        "vstar" => Ok(ClassSpec::vstar(one(&args)?)),
        "local" => {
            let mut values = BTreeMap::new();
            let mut default = None;
            for arg in args {
                let (key, value) = arg.split_once("->").ok_or_else(|| bad(arg, "expected `p->spec`"))?;
                let value = parse_spec(value)?;
                if key.trim() == "default" {
                    if default.replace(value).is_some() {
                        return Err(bad(s, "default given twice"));
                    }
                } else if values.insert(parse_prime(key)?, value).is_some() {
                    return Err(bad(s, "prime listed twice"));
                }
            }
            let default = Box::new(default.unwrap_or(ClassSpec::Named(NamedClass::All)));
            Ok(ClassSpec::Local(LocalDefinition { values, default }))
        }
        "reg" => {
            let body = inner.trim().strip_prefix("f:").ok_or_else(|| bad(s, "expected reg(f: ...)"))?;
            Ok(ClassSpec::RegularByFunction(body.parse()?))
        }
        _ => Err(bad(s, "unknown class")),
    }
}

fn fmt_primes(f: &mut fmt::Formatter<'_>, primes: &std::collections::BTreeSet<u64>) -> fmt::Result {
    let list: Vec<String> = primes.iter().map(u64::to_string).collect();
    if list.len() == 1 {
        f.write_str(&list[0])
    } else {
        write!(f, "{{{}}}", list.join(","))
    }
}

impl fmt::Display for NamedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedClass::Trivial => f.write_str("trivial"),
            NamedClass::Abelian => f.write_str("abelian"),
            NamedClass::Nilpotent => f.write_str("nilpotent"),
            NamedClass::NilpotentP(p) => write!(f, "nilpotent_p:{p}"),
            NamedClass::Soluble => f.write_str("soluble"),
            NamedClass::Supersoluble => f.write_str("supersoluble"),
            NamedClass::PNilpotent(p) => write!(f, "p_nilpotent:{p}"),
            NamedClass::PiSoluble(pi) => {
                f.write_str(if pi.is_complement() { "S_pi':" } else { "S_pi:" })?;
                fmt_primes(f, pi.listed())
            }
            NamedClass::SylowTower(phi) => {
                let list: Vec<String> = phi.listed().iter().map(u64::to_string).collect();
                write!(f, "sylow_tower:{}", list.join(">"))
            }
            NamedClass::All => f.write_str("all"),
            NamedClass::VU => f.write_str("vU"),
        }
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSpec::Named(n) => n.fmt(f),
            ClassSpec::ExponentBounded(base, w) => match **base {
                ClassSpec::Named(NamedClass::Soluble) => write!(f, "S(omega={w})"),
                _ => write!(f, "bounded({base}, {w})"),
            },
            ClassSpec::Product(h, g) => write!(f, "prod({h}, {g})"),
            ClassSpec::Intersection(parts) => {
                let list: Vec<String> = parts.iter().map(ToString::to_string).collect();
                write!(f, "cap({})", list.join(", "))
            }
            ClassSpec::Local(h) => {
                f.write_str("local(")?;
                for (p, v) in &h.values {
                    write!(f, "{p}->{v}, ")?;
                }
                write!(f, "default->{})", h.default)
            }
            ClassSpec::VStar(h) => write!(f, "vstar({h})"),
            ClassSpec::RegularByFunction(func) => write!(f, "reg(f: {func})"),
        }
    }
}
