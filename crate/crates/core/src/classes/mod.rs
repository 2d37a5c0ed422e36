//! Group classes and formation algebra.
//!
//! A [`ClassSpec`] describes a class of finite groups declaratively; the
//! functions here decide membership for concrete Cayley-table groups.

mod parse;

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::group::{is_soluble, normal_subgroups, quotient_unchecked, subgroup_as_group, FiniteGroup, Subgroup};
use crate::primes::{factorize, prime_divisors};
use crate::steinitz::{ExponentFunction, Supernatural};
use crate::structure::{all_subgroups_with_budget, chief_series, exponent, DEFAULT_SUBGROUP_BUDGET};
use crate::subnormality::{v_membership_with, vstar_membership_with};

/// A set of primes: either the listed ones or all primes except the listed ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeSet {
    primes: BTreeSet<u64>,
    complement: bool,
}

impl PrimeSet {
    pub fn of(primes: impl IntoIterator<Item = u64>) -> Self {
        PrimeSet { primes: primes.into_iter().collect(), complement: false }
    }

    /// `p'`: every prime except the listed ones.
    pub fn all_except(primes: impl IntoIterator<Item = u64>) -> Self {
        PrimeSet { primes: primes.into_iter().collect(), complement: true }
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.contains(&p) != self.complement
    }

    pub fn listed(&self) -> &BTreeSet<u64> {
        &self.primes
    }

    pub fn is_complement(&self) -> bool {
        self.complement
    }
}

/// A linear order on all primes: the listed primes, greatest first, and
/// after them every other prime in increasing numeric order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeOrdering {
    listed: Vec<u64>,
}

impl PrimeOrdering {
    pub fn new(listed: Vec<u64>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &p in &listed {
            if !crate::primes::is_prime(p) || !seen.insert(p) {
                return Err(Error::InvalidSpec(format!("bad prime ordering {listed:?}")));
            }
        }
        if listed.is_empty() {
            return Err(Error::InvalidSpec("empty prime ordering".into()));
        }
        Ok(PrimeOrdering { listed })
    }

    pub fn listed(&self) -> &[u64] {
        &self.listed
    }

    /// Sort key: smaller means greater in the ordering.
    pub fn rank(&self, p: u64) -> (u8, u64) {
        match self.listed.iter().position(|&q| q == p) {
            Some(i) => (0, i as u64),
            None => (1, p),
        }
    }

    /// `p >_φ q`
    pub fn greater(&self, p: u64, q: u64) -> bool {
        self.rank(p) < self.rank(q)
    }

    /// The given primes from greatest to least.
    pub fn arrange(&self, mut primes: Vec<u64>) -> Vec<u64> {
        primes.sort_by_key(|&p| self.rank(p));
        primes
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NamedClass {
    Trivial,
    Abelian,
    Nilpotent,
    /// Groups of `p`-power order.
    NilpotentP(u64),
    Soluble,
    Supersoluble,
    PNilpotent(u64),
    /// Soluble `π`-groups.
    PiSoluble(PrimeSet),
    SylowTower(PrimeOrdering),
    All,
    /// Groups whose cyclic primary subgroups are all reachable by prime-index chains.
    VU,
}

/// `h(p)` for finitely many primes and a default class for the rest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalDefinition {
    pub values: BTreeMap<u64, ClassSpec>,
    pub default: Box<ClassSpec>,
}

impl LocalDefinition {
    pub fn at(&self, p: u64) -> &ClassSpec {
        self.values.get(&p).unwrap_or(&self.default)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClassSpec {
    Named(NamedClass),
    /// Members of the base class whose exponent divides `ω`.
    ExponentBounded(Box<ClassSpec>, Supernatural),
    /// `ℌ𝔉`: groups whose `𝔉`-residual lies in `ℌ`.
    Product(Box<ClassSpec>, Box<ClassSpec>),
    Intersection(Vec<ClassSpec>),
    Local(LocalDefinition),
    VStar(Box<ClassSpec>),
    /// `⋂_p 𝔖_{p'} 𝔖(f(p))`
    RegularByFunction(ExponentFunction),
}

impl From<NamedClass> for ClassSpec {
    fn from(n: NamedClass) -> Self {
        ClassSpec::Named(n)
    }
}

impl ClassSpec {
    pub fn nilpotent() -> Self {
        NamedClass::Nilpotent.into()
    }

    pub fn abelian() -> Self {
        NamedClass::Abelian.into()
    }

    pub fn soluble() -> Self {
        NamedClass::Soluble.into()
    }

    pub fn supersoluble() -> Self {
        NamedClass::Supersoluble.into()
    }

    /// `𝔖(ω)`
    pub fn soluble_exponent(w: Supernatural) -> Self {
        ClassSpec::ExponentBounded(Box::new(ClassSpec::soluble()), w)
    }

    pub fn vstar(inner: ClassSpec) -> Self {
        ClassSpec::VStar(Box::new(inner))
    }

    pub fn product(h: ClassSpec, f: ClassSpec) -> Self {
        ClassSpec::Product(Box::new(h), Box::new(f))
    }

    /// Declared closure under quotients and subdirect products.
    pub fn is_formation(&self) -> bool {
        match self {
            ClassSpec::Named(_) | ClassSpec::Local(_) | ClassSpec::RegularByFunction(_) => true,
            ClassSpec::ExponentBounded(base, _) => base.is_formation(),
            ClassSpec::Product(h, f) => h.is_formation() && f.is_formation(),
            ClassSpec::Intersection(parts) => parts.iter().all(ClassSpec::is_formation),
            ClassSpec::VStar(h) => h.is_hereditary(),
        }
    }

    /// Declared closure under subgroups.
    pub fn is_hereditary(&self) -> bool {
        match self {
            ClassSpec::Named(_) | ClassSpec::RegularByFunction(_) => true,
            ClassSpec::ExponentBounded(base, _) => base.is_hereditary(),
            ClassSpec::Product(h, f) => h.is_hereditary() && f.is_hereditary() && f.is_formation(),
            ClassSpec::Intersection(parts) => parts.iter().all(ClassSpec::is_hereditary),
            ClassSpec::Local(h) => h.default.is_hereditary() && h.values.values().all(ClassSpec::is_hereditary),
            ClassSpec::VStar(h) => h.is_hereditary(),
        }
    }

    /// Declared to contain only soluble groups. `false` means "not known".
    pub fn is_soluble_class(&self) -> bool {
        match self {
            ClassSpec::Named(n) => !matches!(n, NamedClass::All | NamedClass::PNilpotent(_)),
            ClassSpec::ExponentBounded(base, _) => base.is_soluble_class(),
            ClassSpec::Product(h, f) => h.is_soluble_class() && f.is_soluble_class(),
            ClassSpec::Intersection(parts) => parts.iter().any(ClassSpec::is_soluble_class),
            ClassSpec::Local(_) | ClassSpec::VStar(_) => false,
            ClassSpec::RegularByFunction(_) => true,
        }
    }

    /// Structural checks: products and closures need formation-flagged
    /// arguments, intersections need at least one part.
    pub fn validate(&self) -> Result<()> {
        match self {
            ClassSpec::Named(NamedClass::NilpotentP(p) | NamedClass::PNilpotent(p)) => {
                if !crate::primes::is_prime(*p) {
                    return Err(Error::InvalidSpec(format!("{p} is not prime")));
                }
            }
            ClassSpec::Named(_) | ClassSpec::RegularByFunction(_) => {}
            ClassSpec::ExponentBounded(base, _) => base.validate()?,
            ClassSpec::Product(h, f) => {
                h.validate()?;
                f.validate()?;
                if !f.is_formation() || !h.is_formation() {
                    return Err(Error::InvalidSpec(format!("{self}: product factors must be formations")));
                }
            }
            ClassSpec::Intersection(parts) => {
                if parts.is_empty() {
                    return Err(Error::InvalidSpec("empty intersection".into()));
                }
                parts.iter().try_for_each(ClassSpec::validate)?;
            }
            ClassSpec::Local(h) => {
                h.default.validate()?;
                h.values.values().try_for_each(ClassSpec::validate)?;
            }
            ClassSpec::VStar(h) => {
                h.validate()?;
                if !h.is_hereditary() || !h.is_formation() {
                    return Err(Error::InvalidSpec(format!("{self}: the argument must be a hereditary formation")));
                }
            }
        }
        Ok(())
    }
}

/// Size limits applied during membership tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_order: usize,
    pub subgroup_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_order: crate::group::DEFAULT_MAX_ORDER, subgroup_budget: DEFAULT_SUBGROUP_BUDGET }
    }
}

impl Limits {
    pub fn check(&self, g: &FiniteGroup) -> Result<()> {
        if g.order() > self.max_order {
            return Err(Error::SizeCapExceeded { order: g.order(), cap: self.max_order });
        }
        Ok(())
    }
}

pub fn is_member(g: &FiniteGroup, spec: &ClassSpec) -> Result<bool> {
    is_member_with(g, spec, &Limits::default())
}

pub fn is_member_with(g: &FiniteGroup, spec: &ClassSpec, limits: &Limits) -> Result<bool> {
    limits.check(g)?;
    match spec {
        ClassSpec::Named(n) => named_membership(g, n, limits),
        ClassSpec::ExponentBounded(base, w) => Ok(w.is_divided_by(exponent(g)) && is_member_with(g, base, limits)?),
        ClassSpec::Product(h, f) => product_membership_with(g, h, f, limits),
        ClassSpec::Intersection(parts) => {
            for part in parts {
                if !is_member_with(g, part, limits)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        ClassSpec::Local(h) => local_membership_with(g, h, limits),
        ClassSpec::VStar(h) => vstar_membership_with(g, h, limits),
        ClassSpec::RegularByFunction(f) => regular_membership_with(g, f, limits),
    }
}

/// Membership of a subgroup, re-materialized as a standalone group.
pub fn subgroup_is_member(g: &FiniteGroup, h: &Subgroup, spec: &ClassSpec, limits: &Limits) -> Result<bool> {
    is_member_with(&subgroup_as_group(g, h).0, spec, limits)
}

fn named_membership(g: &FiniteGroup, n: &NamedClass, limits: &Limits) -> Result<bool> {
    Ok(match n {
        NamedClass::Trivial => g.order() == 1,
        NamedClass::Abelian => g.is_abelian(),
        NamedClass::Nilpotent => is_nilpotent(g),
        NamedClass::NilpotentP(p) => factorize(g.order() as u64).iter().all(|&(q, _)| q == *p),
        NamedClass::Soluble => is_soluble(g),
        NamedClass::Supersoluble => is_supersoluble(g),
        NamedClass::PNilpotent(p) => has_normal_hall(g, &|q| q != *p),
        NamedClass::PiSoluble(pi) => {
            prime_divisors(g.order() as u64).into_iter().all(|q| pi.contains(q)) && is_soluble(g)
        }
        NamedClass::SylowTower(phi) => is_sylow_tower(g, phi),
        NamedClass::All => true,
        NamedClass::VU => v_membership_with(g, limits)?,
    })
}

/// `|G|_π`
fn pi_part(n: usize, in_pi: &dyn Fn(u64) -> bool) -> usize {
    factorize(n as u64).into_iter().filter(|&(p, _)| in_pi(p)).map(|(p, e)| p.pow(e) as usize).product()
}

fn is_pi_number(n: usize, in_pi: &dyn Fn(u64) -> bool) -> bool {
    factorize(n as u64).iter().all(|&(p, _)| in_pi(p))
}

/// A normal Hall `π`-subgroup exists iff the `π`-elements number exactly
/// `|G|_π` and are closed under multiplication (they then form that subgroup).
pub fn has_normal_hall(g: &FiniteGroup, in_pi: &dyn Fn(u64) -> bool) -> bool {
    normal_hall(g, in_pi).is_some()
}

pub fn normal_hall(g: &FiniteGroup, in_pi: &dyn Fn(u64) -> bool) -> Option<Subgroup> {
    let elems: Vec<usize> = g.elements().filter(|&x| is_pi_number(g.element_order(x), in_pi)).collect();
    if elems.len() != pi_part(g.order(), in_pi) {
        return None;
    }
    let mut mask = vec![false; g.order()];
    for &x in &elems {
        mask[x] = true;
    }
    let closed = elems.iter().all(|&a| elems.iter().all(|&b| mask[g.mul(a, b)]));
    closed.then(|| Subgroup::from_sorted(elems))
}

/// Every Sylow subgroup is normal: the `p`-elements number exactly `|G|_p`.
pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    factorize(g.order() as u64).into_iter().all(|(p, e)| {
        let count = g.element_orders().iter().filter(|&&o| factorize(o as u64).iter().all(|&(q, _)| q == p)).count();
        count == p.pow(e) as usize
    })
}

/// Soluble with every chief factor of prime order.
pub fn is_supersoluble(g: &FiniteGroup) -> bool {
    is_soluble(g) && chief_series(g).factors.iter().all(|f| crate::primes::is_prime(f.order as u64))
}

pub fn is_sylow_tower(g: &FiniteGroup, phi: &PrimeOrdering) -> bool {
    let primes = phi.arrange(prime_divisors(g.order() as u64));
    (1..primes.len()).all(|t| {
        let top = &primes[..t];
        has_normal_hall(g, &|q| top.contains(&q))
    })
}

/// `G^𝔉`: the intersection of all normal `N` with `G/N ∈ 𝔉`.
///
/// Intersections are taken one at a time, and each running intersection is
/// checked to have its quotient in `𝔉`; a failure names two normal subgroups
/// with `𝔉`-quotients whose intersection does not.
pub fn residual(g: &FiniteGroup, spec: &ClassSpec) -> Result<Subgroup> {
    residual_with(g, spec, &Limits::default())
}

pub fn residual_with(g: &FiniteGroup, spec: &ClassSpec, limits: &Limits) -> Result<Subgroup> {
    residual_by(g, |q| is_member_with(q, spec, limits))
}

/// [`residual`] for an arbitrary quotient predicate.
pub fn residual_by(g: &FiniteGroup, mut in_class: impl FnMut(&FiniteGroup) -> Result<bool>) -> Result<Subgroup> {
    let mut quotient_in = |n: &Subgroup| -> Result<bool> { in_class(&quotient_unchecked(g, n).0) };
    let mut current: Option<Subgroup> = None;
    for n in normal_subgroups(g).iter().rev() {
        if !quotient_in(n)? {
            continue;
        }
        current = Some(match current {
            None => n.clone(),
            Some(m) if m.is_subset_of(n) => m,
            Some(m) if n.is_subset_of(&m) => n.clone(),
            Some(m) => {
                let meet = m.intersection(n);
                if !quotient_in(&meet)? {
                    return Err(Error::NotAFormationWitness { first: m.into_elems(), second: n.elems().to_vec() });
                }
                meet
            }
        });
    }
    current.ok_or(Error::EmptyClass)
}

/// `G ∈ ℌ𝔉` iff `G^𝔉 ∈ ℌ`.
pub fn product_membership(g: &FiniteGroup, h: &ClassSpec, f: &ClassSpec) -> Result<bool> {
    product_membership_with(g, h, f, &Limits::default())
}

pub fn product_membership_with(g: &FiniteGroup, h: &ClassSpec, f: &ClassSpec, limits: &Limits) -> Result<bool> {
    let r = residual_with(g, f, limits)?;
    subgroup_is_member(g, &r, h, limits)
}

/// For every chief factor `H/K` of `G` and every prime `p` dividing `|H/K|`,
/// `G/C_G(H/K) ∈ h(p)`.
pub fn local_membership(g: &FiniteGroup, h: &LocalDefinition) -> Result<bool> {
    local_membership_with(g, h, &Limits::default())
}

pub fn local_membership_with(g: &FiniteGroup, h: &LocalDefinition, limits: &Limits) -> Result<bool> {
    for factor in chief_series(g).factors {
        let automizer = quotient_unchecked(g, &factor.centralizer).0;
        for p in prime_divisors(factor.order as u64) {
            if !is_member_with(&automizer, h.at(p), limits)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `G ∈ ⋂_p 𝔖_{p'} 𝔖(f(p))`, deciding each factor through the residual
/// `G^{𝔖(f(p))}`. Primes not dividing `|G|` impose nothing on a soluble group.
pub fn regular_membership(g: &FiniteGroup, f: &ExponentFunction) -> Result<bool> {
    regular_membership_with(g, f, &Limits::default())
}

pub fn regular_membership_with(g: &FiniteGroup, f: &ExponentFunction, limits: &Limits) -> Result<bool> {
    limits.check(g)?;
    if !is_soluble(g) {
        return Ok(false);
    }
    for p in prime_divisors(g.order() as u64) {
        let r = residual_with(g, &ClassSpec::soluble_exponent(f.at(p)), limits)?;
        if r.len() as u64 % p == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The local definition `p ↦ 𝔖(f(p))` on the given primes; other primes
/// get the trivial class.
pub fn exponent_local_definition(f: &ExponentFunction, primes: &[u64]) -> LocalDefinition {
    let values = primes.iter().map(|&p| (p, ClassSpec::soluble_exponent(f.at(p)))).collect();
    LocalDefinition { values, default: Box::new(ClassSpec::Named(NamedClass::Trivial)) }
}

/// `G ∉ 𝔉` while every proper subgroup is in `𝔉`. For hereditary `𝔉` only
/// maximal subgroups are tested.
pub fn is_minimal_non(g: &FiniteGroup, spec: &ClassSpec) -> Result<bool> {
    is_minimal_non_with(g, spec, &Limits::default())
}

pub fn is_minimal_non_with(g: &FiniteGroup, spec: &ClassSpec, limits: &Limits) -> Result<bool> {
    if is_member_with(g, spec, limits)? {
        return Ok(false);
    }
    let lattice = all_subgroups_with_budget(g, limits.subgroup_budget)?;
    let hereditary = spec.is_hereditary();
    for i in 0..lattice.whole() {
        if hereditary && !lattice.is_maximal(i) {
            continue;
        }
        if !subgroup_is_member(g, lattice.get(i), spec, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Minimal non-`𝔉` with every proper quotient in `𝔉`.
pub fn is_strongly_critical(g: &FiniteGroup, spec: &ClassSpec) -> Result<bool> {
    let limits = Limits::default();
    if !is_minimal_non_with(g, spec, &limits)? {
        return Ok(false);
    }
    for n in normal_subgroups(g) {
        if !n.is_trivial() && !is_member_with(&quotient_unchecked(g, &n).0, spec, &limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Non-nilpotent with every proper subgroup nilpotent.
pub fn is_schmidt(g: &FiniteGroup) -> Result<bool> {
    is_minimal_non(g, &ClassSpec::nilpotent())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{alternating, cyclic, dicyclic, dihedral, symmetric};
    use crate::group::{direct_product, quotient};

    fn spec(s: &str) -> ClassSpec {
        s.parse().unwrap()
    }

    #[test]
    fn named_examples() {
        let s3 = symmetric(3).unwrap();
        let a4 = alternating(4).unwrap();
        let s4 = symmetric(4).unwrap();
        assert!(is_member(&s3, &spec("soluble")).unwrap());
        assert!(!is_member(&a4, &spec("supersoluble")).unwrap());
        assert!(is_member(&s4, &spec("soluble")).unwrap());
        assert!(!is_member(&alternating(5).unwrap(), &spec("soluble")).unwrap());
        assert!(is_member(&dicyclic(2).unwrap(), &spec("nilpotent")).unwrap());
        assert!(!is_member(&s3, &spec("nilpotent")).unwrap());
        assert!(is_member(&s3, &spec("p_nilpotent:2")).unwrap());
        assert!(!is_member(&s3, &spec("p_nilpotent:3")).unwrap());
        assert!(is_member(&a4, &spec("p_nilpotent:3")).unwrap());
        assert!(is_member(&dihedral(4).unwrap(), &spec("nilpotent_p:2")).unwrap());
        assert!(!is_member(&s3, &spec("nilpotent_p:2")).unwrap());
        assert!(is_member(&cyclic(15).unwrap(), &spec("S_pi:{3,5}")).unwrap());
        assert!(is_member(&cyclic(15).unwrap(), &spec("S_pi':2")).unwrap());
        assert!(!is_member(&s3, &spec("S_pi':2")).unwrap());
    }

    #[test]
    fn exponent_bounded() {
        let s3 = symmetric(3).unwrap();
        for (w, expected) in
            [("6", true), ("12", true), ("2^inf*3", true), ("3^inf", false), ("2", false), ("full", true)]
        {
            assert_eq!(is_member(&s3, &spec(&format!("S(omega={w})"))).unwrap(), expected, "{w}");
        }
    }

    fn brute_sylow_tower(g: &FiniteGroup, phi: &PrimeOrdering) -> bool {
        let primes = phi.arrange(prime_divisors(g.order() as u64));
        let normals = normal_subgroups(g);
        (1..primes.len()).all(|t| {
            let want: usize = primes[..t]
                .iter()
                .map(|&p| {
                    let (_, e) = factorize(g.order() as u64).into_iter().find(|&(q, _)| q == p).unwrap();
                    p.pow(e) as usize
                })
                .product();
            normals.iter().any(|n| n.len() == want)
        })
    }

    #[test]
    fn sylow_towers() {
        let a4 = alternating(4).unwrap();
        let s4 = symmetric(4).unwrap();
        assert!(is_member(&a4, &spec("sylow_tower:2>3")).unwrap());
        assert!(!is_member(&a4, &spec("sylow_tower:3>2")).unwrap());
        assert!(!is_member(&s4, &spec("sylow_tower:2>3")).unwrap());
        assert!(!is_member(&s4, &spec("sylow_tower:3>2")).unwrap());
        let groups = [
            symmetric(3).unwrap(),
            a4,
            s4,
            dihedral(5).unwrap(),
            dihedral(15).unwrap(),
            direct_product(&cyclic(5).unwrap(), &alternating(4).unwrap()),
            direct_product(&symmetric(3).unwrap(), &cyclic(5).unwrap()),
            alternating(5).unwrap(),
        ];
        let orders = ["2>3>5", "2>5>3", "3>2>5", "3>5>2", "5>2>3", "5>3>2"];
        for g in &groups {
            for o in orders {
                let phi = PrimeOrdering::new(o.split('>').map(|p| p.parse().unwrap()).collect()).unwrap();
                assert_eq!(is_sylow_tower(g, &phi), brute_sylow_tower(g, &phi), "{} {o}", g.name());
            }
        }
    }

    #[test]
    fn residuals() {
        let s3 = symmetric(3).unwrap();
        assert_eq!(residual(&s3, &spec("abelian")).unwrap().len(), 3);
        assert!(residual(&s3, &spec("soluble")).unwrap().is_trivial());
        let a4 = alternating(4).unwrap();
        assert_eq!(residual(&a4, &spec("nilpotent")).unwrap().len(), 4);
        let a5 = alternating(5).unwrap();
        assert_eq!(residual(&a5, &spec("soluble")).unwrap().len(), 60);
    }

    /// Oracle: intersect every normal subgroup with an 𝔉-quotient, no checks.
    fn brute_residual(g: &FiniteGroup, spec: &ClassSpec) -> Subgroup {
        normal_subgroups(g)
            .into_iter()
            .filter(|n| is_member(&quotient(g, n).unwrap().0, spec).unwrap())
            .fold(Subgroup::whole(g), |acc, n| acc.intersection(&n))
    }

    #[test]
    fn products() {
        let s3 = symmetric(3).unwrap();
        let odd = spec("S_pi':2");
        assert!(product_membership(&s3, &odd, &spec("S(omega=2)")).unwrap());
        let a4 = alternating(4).unwrap();
        let r = brute_residual(&a4, &spec("S(omega=3)"));
        assert_eq!(r.len(), 4);
        assert!(product_membership(&a4, &spec("S_pi':3"), &spec("S(omega=3)")).unwrap());
        assert!(!product_membership(&a4, &spec("S_pi':2"), &spec("S(omega=3)")).unwrap());
        assert!(is_member(&s3, &spec("prod(trivial, soluble)")).unwrap());
        assert!(is_member(&s3, &spec("prod(nilpotent, nilpotent)")).unwrap());
        assert!(!is_member(&symmetric(4).unwrap(), &spec("prod(nilpotent, nilpotent)")).unwrap());
        for g in [s3, a4, symmetric(4).unwrap(), dihedral(6).unwrap()] {
            for f in ["nilpotent", "abelian", "supersoluble", "S(omega=6)", "p_nilpotent:2"] {
                assert_eq!(residual(&g, &spec(f)).unwrap(), brute_residual(&g, &spec(f)));
            }
        }
    }

    #[test]
    fn residual_rejects_non_formations() {
        // cyclic groups: Z2 x Z2 has two cyclic quotients but is not cyclic
        let v4 = crate::constructions::elementary_abelian(2, 2).unwrap();
        let is_cyclic = |q: &FiniteGroup| Ok(q.element_orders().iter().any(|&o| o == q.order()));
        match residual_by(&v4, is_cyclic) {
            Err(Error::NotAFormationWitness { first, second }) => {
                assert_eq!(first.len(), 2);
                assert_eq!(second.len(), 2);
                assert_ne!(first, second);
            }
            other => panic!("expected a witness, got {other:?}"),
        }
        assert!(matches!(residual_by(&v4, |_| Ok(false)), Err(Error::EmptyClass)));
    }

    #[test]
    fn local_examples() {
        let trivial_everywhere =
            LocalDefinition { values: BTreeMap::new(), default: Box::new(ClassSpec::Named(NamedClass::Trivial)) };
        for g in [
            cyclic(1).unwrap(),
            symmetric(3).unwrap(),
            dihedral(4).unwrap(),
            alternating(4).unwrap(),
            dicyclic(2).unwrap(),
        ] {
            assert_eq!(local_membership(&g, &trivial_everywhere).unwrap(), is_nilpotent(&g));
        }
        let h = LocalDefinition {
            values: [(2, spec("soluble")), (3, spec("trivial"))].into_iter().collect(),
            default: Box::new(spec("all")),
        };
        assert!(!local_membership(&symmetric(3).unwrap(), &h).unwrap());
    }

    #[test]
    fn regular_membership_examples() {
        let nil = ExponentFunction::nilpotent();
        for g in [
            cyclic(1).unwrap(),
            symmetric(3).unwrap(),
            dihedral(4).unwrap(),
            alternating(4).unwrap(),
            cyclic(12).unwrap(),
        ] {
            assert_eq!(regular_membership(&g, &nil).unwrap(), is_nilpotent(&g));
        }
        let s3 = symmetric(3).unwrap();
        let f: ExponentFunction = "2->2^inf, default->full".parse().unwrap();
        assert_eq!(residual(&s3, &ClassSpec::soluble_exponent(f.at(2))).unwrap().len(), 3);
        assert!(regular_membership(&s3, &f).unwrap());
        assert!(!regular_membership(&alternating(4).unwrap(), &f).unwrap());
        assert!(!regular_membership(&alternating(5).unwrap(), &ExponentFunction::full()).unwrap());
    }

    #[test]
    fn criticality() {
        assert!(is_schmidt(&symmetric(3).unwrap()).unwrap());
        assert!(is_schmidt(&alternating(4).unwrap()).unwrap());
        assert!(!is_schmidt(&dihedral(4).unwrap()).unwrap());
        assert!(!is_schmidt(&symmetric(4).unwrap()).unwrap());
        assert!(is_minimal_non(&alternating(4).unwrap(), &spec("supersoluble")).unwrap());
        assert!(is_strongly_critical(&symmetric(3).unwrap(), &spec("nilpotent")).unwrap());
        assert!(!is_strongly_critical(
            &direct_product(&cyclic(2).unwrap(), &symmetric(3).unwrap()),
            &spec("nilpotent")
        )
        .unwrap());
    }

    #[test]
    fn size_cap() {
        let g = cyclic(20).unwrap();
        let limits = Limits { max_order: 10, ..Limits::default() };
        assert!(matches!(
            is_member_with(&g, &spec("abelian"), &limits),
            Err(Error::SizeCapExceeded { order: 20, cap: 10 })
        ));
    }

    #[test]
    fn flags() {
        assert!(spec("vstar(U)").validate().is_ok());
        assert!(spec("vstar(U)").is_formation());
        assert!(spec("cap(soluble, p_nilpotent:3)").is_soluble_class());
        assert!(!spec("p_nilpotent:3").is_soluble_class());
    }
}
