//! Chain subnormality over the subgroup lattice, and the classes `v*ℌ` and `v𝔘`.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::classes::{is_member_with, ClassSpec, Limits};
use crate::error::{Error, Result};
use crate::group::{core_in, is_normal_in, quotient_unchecked, subgroup_as_group, FiniteGroup, Subgroup};
use crate::primes::{is_prime, prime_power};
use crate::structure::{all_subgroups_with_budget, SubgroupLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    /// `H_{i-1} ⊴ H_i`
    NormalStep,
    /// `H_i / Core_{H_i}(H_{i-1}) ∈ ℌ`
    QuotientInClassStep,
    /// `|H_i : H_{i-1}|` is prime
    PrimeIndexStep,
}

/// `H = H_0 ≤ H_1 ≤ ... ≤ H_n = G` with the reason each step is allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainWitness {
    pub chain: Vec<Subgroup>,
    pub step_kinds: Vec<StepKind>,
}

impl ChainWitness {
    pub fn len(&self) -> usize {
        self.step_kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.step_kinds.is_empty()
    }

    /// Re-checks containment and every step label; `class` is needed for
    /// quotient steps.
    pub fn verify(&self, g: &FiniteGroup, class: Option<&ClassSpec>) -> Result<bool> {
        if self.chain.len() != self.step_kinds.len() + 1 || self.chain.last().map(Subgroup::len) != Some(g.order()) {
            return Ok(false);
        }
        for (w, kind) in self.chain.windows(2).zip(&self.step_kinds) {
            let (lo, hi) = (&w[0], &w[1]);
            if !lo.is_subset_of(hi) {
                return Ok(false);
            }
            let ok = match kind {
                StepKind::NormalStep => is_normal_in(g, lo, hi),
                StepKind::PrimeIndexStep => is_prime((hi.len() / lo.len()) as u64) && lo.len() < hi.len(),
                StepKind::QuotientInClassStep => match class {
                    Some(c) => quotient_by_core_in(g, lo, hi, c, &Limits::default())?,
                    None => false,
                },
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Joins a chain `H → K` with a chain `K → G`.
    pub fn compose(&self, rest: &ChainWitness) -> Option<ChainWitness> {
        let (last, first) = (self.chain.last()?, rest.chain.first()?);
        if last != first {
            return None;
        }
        let mut chain = self.chain.clone();
        chain.extend(rest.chain[1..].iter().cloned());
        let mut step_kinds = self.step_kinds.clone();
        step_kinds.extend(&rest.step_kinds);
        Some(ChainWitness { chain, step_kinds })
    }
}

/// `K / Core_K(X) ∈ ℌ` for `X ≤ K ≤ G`.
fn quotient_by_core_in(
    g: &FiniteGroup,
    x: &Subgroup,
    k: &Subgroup,
    class: &ClassSpec,
    limits: &Limits,
) -> Result<bool> {
    let (kg, emb) = subgroup_as_group(g, k);
    let core = core_in(g, x, k);
    let local = Subgroup::from_sorted(core.elems().iter().map(|&c| emb.binary_search(&c).unwrap()).collect());
    is_member_with(&quotient_unchecked(&kg, &local).0, class, limits)
}

#[derive(Clone, Copy, Debug)]
enum Rule<'a> {
    KClass(&'a ClassSpec),
    PrimeIndex,
}

/// Subnormality queries against one group and one rule, caching the answer
/// for every lattice member it settles.
struct Search<'a> {
    g: &'a FiniteGroup,
    lattice: SubgroupLattice,
    rule: Rule<'a>,
    limits: &'a Limits,
    /// `reaches[i]`: can subgroup `i` reach `G`?
    reaches: Vec<Option<bool>>,
    /// Step verdicts keyed by lattice indices `(X, K)`.
    quotient_cache: HashMap<(usize, usize), Option<StepKind>>,
    overgroups: Vec<Option<Vec<usize>>>,
}

impl<'a> Search<'a> {
    fn new(g: &'a FiniteGroup, rule: Rule<'a>, limits: &'a Limits) -> Result<Self> {
        limits.check(g)?;
        let lattice = all_subgroups_with_budget(g, limits.subgroup_budget)?;
        let n = lattice.len();
        Ok(Search {
            g,
            lattice,
            rule,
            limits,
            reaches: vec![None; n],
            quotient_cache: HashMap::new(),
            overgroups: vec![None; n],
        })
    }

    fn overgroups(&mut self, i: usize) -> Vec<usize> {
        if self.overgroups[i].is_none() {
            self.overgroups[i] = Some(self.lattice.proper_overgroups(i).collect());
        }
        self.overgroups[i].clone().unwrap()
    }

    /// The label of the step `X = lattice[i] ≤ K = lattice[j]`, if allowed.
    fn step(&mut self, i: usize, j: usize) -> Result<Option<StepKind>> {
        if let Some(&k) = self.quotient_cache.get(&(i, j)) {
            return Ok(k);
        }
        let (x, k) = (self.lattice.get(i), self.lattice.get(j));
        let kind = match self.rule {
            Rule::PrimeIndex => is_prime((k.len() / x.len()) as u64).then_some(StepKind::PrimeIndexStep),
            Rule::KClass(class) => {
                if is_normal_in(self.g, x, k) {
                    Some(StepKind::NormalStep)
                } else if quotient_by_core_in(self.g, x, k, class, self.limits)? {
                    Some(StepKind::QuotientInClassStep)
                } else {
                    None
                }
            }
        };
        self.quotient_cache.insert((i, j), kind);
        Ok(kind)
    }

    fn reaches_top(&mut self, i: usize) -> Result<bool> {
        if i == self.lattice.whole() {
            return Ok(true);
        }
        if let Some(r) = self.reaches[i] {
            return Ok(r);
        }
        let mut result = false;
        // larger overgroups first: short chains are found sooner
        for j in self.overgroups(i).into_iter().rev() {
            if self.step(i, j)?.is_some() && self.reaches_top(j)? {
                result = true;
                break;
            }
        }
        self.reaches[i] = Some(result);
        Ok(result)
    }

    /// Shortest chain by breadth-first search, ties broken by lattice order.
    fn witness(&mut self, start: usize) -> Result<Option<ChainWitness>> {
        let top = self.lattice.whole();
        let mut parent: HashMap<usize, (usize, StepKind)> = HashMap::new();
        let mut queue = VecDeque::from([start]);
        let mut seen = vec![false; self.lattice.len()];
        seen[start] = true;
        while let Some(i) = queue.pop_front() {
            if i == top {
                let mut chain = vec![self.lattice.get(top).clone()];
                let mut step_kinds = Vec::new();
                let mut cur = top;
                while let Some(&(prev, kind)) = parent.get(&cur) {
                    chain.push(self.lattice.get(prev).clone());
                    step_kinds.push(kind);
                    cur = prev;
                }
                chain.reverse();
                step_kinds.reverse();
                return Ok(Some(ChainWitness { chain, step_kinds }));
            }
            for j in self.overgroups(i) {
                if seen[j] {
                    continue;
                }
                if let Some(kind) = self.step(i, j)? {
                    seen[j] = true;
                    parent.insert(j, (i, kind));
                    queue.push_back(j);
                }
            }
        }
        Ok(None)
    }

    fn index_of(&self, h: &Subgroup) -> Result<usize> {
        self.lattice
            .index_of(h)
            .ok_or_else(|| Error::NotASubgroup { reason: "not a subgroup of the given group".into() })
    }
}

/// Is `H` K-ℌ-subnormal in `G`? Returns the shortest witness chain when it is.
pub fn is_k_f_subnormal(g: &FiniteGroup, h: &Subgroup, class: &ClassSpec) -> Result<Option<ChainWitness>> {
    let limits = Limits::default();
    let mut search = Search::new(g, Rule::KClass(class), &limits)?;
    let i = search.index_of(h)?;
    search.witness(i)
}

/// Is `H` reachable from `G` through prime-index steps?
pub fn is_p_subnormal(g: &FiniteGroup, h: &Subgroup) -> Result<Option<ChainWitness>> {
    let limits = Limits::default();
    let mut search = Search::new(g, Rule::PrimeIndex, &limits)?;
    let i = search.index_of(h)?;
    search.witness(i)
}

/// Nontrivial cyclic subgroups of prime-power order, deduplicated, in lattice order.
pub fn cyclic_primary_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
    let mut out = Vec::new();
    for x in g.elements() {
        if prime_power(g.element_order(x) as u64).is_none() {
            continue;
        }
        let c = crate::group::generated_subgroup(g, &[x]);
        if seen.insert(c.elems().to_vec(), ()).is_none() {
            out.push(c);
        }
    }
    out.sort_by(|a, b| (a.len(), a.elems()).cmp(&(b.len(), b.elems())));
    out
}

/// The first cyclic primary subgroup that fails the rule, if any.
fn first_failure(g: &FiniteGroup, rule: Rule<'_>, limits: &Limits) -> Result<Option<Subgroup>> {
    let cyclic = cyclic_primary_subgroups(g);
    if cyclic.is_empty() {
        return Ok(None);
    }
    let mut search = Search::new(g, rule, limits)?;
    for c in cyclic {
        let i = search.index_of(&c)?;
        if !search.reaches_top(i)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// `G ∈ v*ℌ`: every cyclic primary subgroup is K-ℌ-subnormal.
pub fn vstar_membership(g: &FiniteGroup, class: &ClassSpec) -> Result<bool> {
    vstar_membership_with(g, class, &Limits::default())
}

pub fn vstar_membership_with(g: &FiniteGroup, class: &ClassSpec, limits: &Limits) -> Result<bool> {
    Ok(first_failure(g, Rule::KClass(class), limits)?.is_none())
}

/// A cyclic primary subgroup that is not K-ℌ-subnormal, if any.
pub fn vstar_obstruction(g: &FiniteGroup, class: &ClassSpec) -> Result<Option<Subgroup>> {
    first_failure(g, Rule::KClass(class), &Limits::default())
}

/// `G ∈ v𝔘`: every cyclic primary subgroup is ℙ-subnormal.
pub fn v_membership(g: &FiniteGroup) -> Result<bool> {
    v_membership_with(g, &Limits::default())
}

pub fn v_membership_with(g: &FiniteGroup, limits: &Limits) -> Result<bool> {
    Ok(first_failure(g, Rule::PrimeIndex, limits)?.is_none())
}

/// A cyclic primary subgroup that is not ℙ-subnormal, if any.
pub fn v_obstruction(g: &FiniteGroup) -> Result<Option<Subgroup>> {
    first_failure(g, Rule::PrimeIndex, &Limits::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{alternating, cyclic, dihedral, symmetric};
    use crate::group::generated_subgroup;

    fn transposition(s3: &FiniteGroup) -> Subgroup {
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        generated_subgroup(s3, &[t])
    }

    #[test]
    fn k_subnormal_examples() {
        let s3 = symmetric(3).unwrap();
        let whole = Subgroup::whole(&s3);
        let w = is_k_f_subnormal(&s3, &whole, &ClassSpec::nilpotent()).unwrap().unwrap();
        assert!(w.is_empty());
        let t = transposition(&s3);
        assert!(is_k_f_subnormal(&s3, &t, &ClassSpec::nilpotent()).unwrap().is_none());
        let w = is_k_f_subnormal(&s3, &t, &ClassSpec::soluble()).unwrap().unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w.step_kinds, vec![StepKind::QuotientInClassStep]);
        assert!(w.verify(&s3, Some(&ClassSpec::soluble())).unwrap());
        assert!(!w.verify(&s3, Some(&ClassSpec::nilpotent())).unwrap());
    }

    #[test]
    fn p_subnormal_examples() {
        let s3 = symmetric(3).unwrap();
        let c3 = generated_subgroup(&s3, &[s3.elements().find(|&x| s3.element_order(x) == 3).unwrap()]);
        let w = is_p_subnormal(&s3, &c3).unwrap().unwrap();
        assert_eq!(w.step_kinds, vec![StepKind::PrimeIndexStep]);
        assert!(w.verify(&s3, None).unwrap());
        let a4 = alternating(4).unwrap();
        let c3 = generated_subgroup(&a4, &[a4.elements().find(|&x| a4.element_order(x) == 3).unwrap()]);
        assert!(is_p_subnormal(&a4, &c3).unwrap().is_none());
        assert!(is_p_subnormal(&a4, &Subgroup::whole(&a4)).unwrap().unwrap().is_empty());
    }

    #[test]
    fn vstar_examples() {
        let d8 = dihedral(4).unwrap();
        assert!(vstar_membership(&d8, &"trivial".parse().unwrap()).unwrap());
        let s3 = symmetric(3).unwrap();
        assert!(!vstar_membership(&s3, &ClassSpec::nilpotent()).unwrap());
        assert_eq!(vstar_obstruction(&s3, &ClassSpec::nilpotent()).unwrap().unwrap().len(), 2);
        assert!(vstar_membership(&s3, &ClassSpec::supersoluble()).unwrap());
        assert!(v_membership(&s3).unwrap());
        assert!(!v_membership(&alternating(4).unwrap()).unwrap());
        assert!(v_membership(&cyclic(1).unwrap()).unwrap());
        let s4 = symmetric(4).unwrap();
        assert_eq!(v_membership(&s4).unwrap(), vstar_membership(&s4, &ClassSpec::supersoluble()).unwrap());
    }

    #[test]
    fn witnesses_compose() {
        let s4 = symmetric(4).unwrap();
        let lat = crate::structure::all_subgroups(&s4).unwrap();
        let u = ClassSpec::supersoluble();
        for i in 0..lat.len() {
            let h = lat.get(i);
            let Some(w) = is_k_f_subnormal(&s4, h, &u).unwrap() else { continue };
            assert!(w.verify(&s4, Some(&u)).unwrap());
            if w.chain.len() < 3 {
                continue;
            }
            // split at the middle subgroup and re-join
            let mid = w.chain.len() / 2;
            let lower = ChainWitness { chain: w.chain[..=mid].to_vec(), step_kinds: w.step_kinds[..mid].to_vec() };
            let upper = ChainWitness { chain: w.chain[mid..].to_vec(), step_kinds: w.step_kinds[mid..].to_vec() };
            assert_eq!(lower.compose(&upper).unwrap(), w);
        }
    }

    #[test]
    fn witness_serializes() {
        let s3 = symmetric(3).unwrap();
        let w = is_k_f_subnormal(&s3, &transposition(&s3), &ClassSpec::soluble()).unwrap().unwrap();
        let json = serde_json::to_string(&w).unwrap();
        assert!(json.contains("quotient-in-class-step"));
    }
}
