//! Subgroup lattices, characteristic subgroups, chief series and
//! hypercentres.

use std::collections::HashMap;

use serde::Serialize;

use crate::classes::{is_member, ClassSpec};
use crate::error::{Error, Result};
use crate::group::{
    centralizer, closure_elems, generated_subgroup, is_normal, is_soluble_subgroup, join, normal_subgroups,
    quotient_unchecked, semidirect_product, subgroup_as_group, subgroup_generators, FiniteGroup, Subgroup,
    DEFAULT_MAX_ORDER,
};
use crate::primes::{lcm, prime_power};
use crate::steinitz::Supernatural;

pub const DEFAULT_SUBGROUP_BUDGET: usize = 20_000;

/// Every subgroup of a group, sorted by `(size, elements)`.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    generators: Vec<Vec<usize>>,
    maximal: Vec<bool>,
    normal: Vec<bool>,
    index: HashMap<Vec<usize>, usize>,
}

impl SubgroupLattice {
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn generators_of(&self, i: usize) -> &[usize] {
        &self.generators[i]
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.index.get(h.elems()).copied()
    }

    pub fn whole(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn is_maximal(&self, i: usize) -> bool {
        self.maximal[i]
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.normal[i]
    }

    pub fn maximal_flags(&self) -> &[bool] {
        &self.maximal
    }

    pub fn normal_flags(&self) -> &[bool] {
        &self.normal
    }

    pub fn maximal_subgroups(&self) -> impl Iterator<Item = &Subgroup> {
        self.subgroups.iter().zip(&self.maximal).filter(|(_, &m)| m).map(|(h, _)| h)
    }

    /// Indices of subgroups strictly containing subgroup `i`.
    pub fn proper_overgroups(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let h = &self.subgroups[i];
        (i + 1..self.subgroups.len()).filter(move |&j| {
            let k = &self.subgroups[j];
            k.len() > h.len() && k.len() % h.len() == 0 && h.is_subset_of(k)
        })
    }

    /// Intersection of all maximal subgroups.
    pub fn frattini(&self) -> Subgroup {
        self.maximal_subgroups()
            .fold(None::<Subgroup>, |acc, m| Some(acc.map_or_else(|| m.clone(), |a| a.intersection(m))))
            .unwrap_or_else(|| self.subgroups[self.whole()].clone())
    }
}

pub fn all_subgroups(g: &FiniteGroup) -> Result<SubgroupLattice> {
    all_subgroups_with_budget(g, DEFAULT_SUBGROUP_BUDGET)
}

/// Enumerates all subgroups: seeds with the cyclic subgroups and closes under
/// joins with cyclic subgroups. Fails once more than `budget` are found.
pub fn all_subgroups_with_budget(g: &FiniteGroup, budget: usize) -> Result<SubgroupLattice> {
    let n = g.order();
    let mut subgroups: Vec<Subgroup> = Vec::new();
    let mut generators: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut cyclic_gens: Vec<usize> = Vec::new();

    let mut covered = vec![false; n];
    for x in g.elements() {
        if covered[x] {
            continue;
        }
        let c = generated_subgroup(g, &[x]);
        // generators of the same cyclic subgroup give the same seed
        for &y in c.elems() {
            if g.element_order(y) == c.len() {
                covered[y] = true;
            }
        }
        if !index.contains_key(c.elems()) {
            index.insert(c.elems().to_vec(), subgroups.len());
            subgroups.push(c);
            generators.push(if x == 0 { vec![] } else { vec![x] });
            cyclic_gens.push(x);
        }
    }

    let mut i = 0;
    while i < subgroups.len() {
        let mask = subgroups[i].mask(n);
        for &c in &cyclic_gens {
            if mask[c] {
                continue;
            }
            let mut gens = generators[i].clone();
            gens.push(c);
            let mut elems = closure_elems(g, &gens);
            elems.sort_unstable();
            if !index.contains_key(&elems) {
                if subgroups.len() >= budget {
                    return Err(Error::SubgroupBudget { budget });
                }
                index.insert(elems.clone(), subgroups.len());
                subgroups.push(Subgroup::from_sorted(elems));
                generators.push(gens);
            }
        }
        i += 1;
    }

    let mut order: Vec<usize> = (0..subgroups.len()).collect();
    order.sort_by(|&a, &b| (subgroups[a].len(), subgroups[a].elems()).cmp(&(subgroups[b].len(), subgroups[b].elems())));
    let subgroups: Vec<Subgroup> = order.iter().map(|&k| subgroups[k].clone()).collect();
    let generators: Vec<Vec<usize>> = order.iter().map(|&k| generators[k].clone()).collect();
    let index: HashMap<Vec<usize>, usize> =
        subgroups.iter().enumerate().map(|(i, h)| (h.elems().to_vec(), i)).collect();

    let total = subgroups.len();
    let mut maximal = vec![false; total];
    for i in 0..total.saturating_sub(1) {
        let h = &subgroups[i];
        maximal[i] = !(i + 1..total - 1).any(|j| {
            let k = &subgroups[j];
            k.len() > h.len() && k.len() % h.len() == 0 && h.is_subset_of(k)
        });
    }
    let normal = subgroups.iter().map(|h| is_normal(g, h)).collect();
    Ok(SubgroupLattice { subgroups, generators, maximal, normal, index })
}

pub fn frattini(g: &FiniteGroup) -> Result<Subgroup> {
    Ok(all_subgroups(g)?.frattini())
}

/// Normal subgroups `M ≠ 1` minimal under inclusion.
pub fn minimal_normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let normals = normal_subgroups(g);
    minimal_above(&normals, &Subgroup::trivial())
}

/// Among `normals`, those strictly containing `base` and minimal with that property.
fn minimal_above(normals: &[Subgroup], base: &Subgroup) -> Vec<Subgroup> {
    let above: Vec<&Subgroup> = normals.iter().filter(|m| m.len() > base.len() && base.is_subset_of(m)).collect();
    above
        .iter()
        .filter(|m| !above.iter().any(|k| k.len() < m.len() && k.is_subset_of(m)))
        .map(|m| (*m).clone())
        .collect()
}

pub fn socle(g: &FiniteGroup) -> Subgroup {
    minimal_normal_subgroups(g).iter().fold(Subgroup::trivial(), |acc, m| join(g, &acc, m))
}

/// Largest normal soluble subgroup: the join of all normal soluble subgroups.
pub fn soluble_radical(g: &FiniteGroup) -> Subgroup {
    normal_subgroups(g)
        .iter()
        .filter(|n| is_soluble_subgroup(g, n))
        .fold(Subgroup::trivial(), |acc, n| join(g, &acc, n))
}

/// Full preimage of `Soc(G/Φ(G))`.
pub fn f_tilde(g: &FiniteGroup) -> Result<Subgroup> {
    let phi = frattini(g)?;
    let (q, pi) = quotient_unchecked(g, &phi);
    let soc = socle(&q);
    Ok(Subgroup::from_sorted(g.elements().filter(|&x| soc.contains(pi.apply(x))).collect()))
}

/// `C_G(H/K) = {g : [g, h] ∈ K for all h ∈ H}`.
pub fn factor_centralizer(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Subgroup {
    let hgens = subgroup_generators(g, h);
    Subgroup::from_sorted(
        g.elements().filter(|&x| hgens.iter().all(|&y| k.contains(g.mul(g.conj(x, y), g.inv(y))))).collect(),
    )
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ChiefFactor {
    /// `|N_i / N_{i-1}|`
    pub order: usize,
    /// `C_G(N_i / N_{i-1})`
    pub centralizer: Subgroup,
    /// `|G / C_G(N_i / N_{i-1})|`
    pub automizer_order: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ChiefSeries {
    /// `1 = N_0 < N_1 < ... < N_k = G`; just `[1]` for the trivial group.
    pub chain: Vec<Subgroup>,
    pub factors: Vec<ChiefFactor>,
}

impl ChiefSeries {
    pub fn factor_orders(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.order).collect()
    }
}

/// A chief series built bottom-up, at each step taking the minimal normal
/// subgroup of the quotient whose preimage has the lexicographically least
/// element set.
pub fn chief_series(g: &FiniteGroup) -> ChiefSeries {
    let normals = normal_subgroups(g);
    chief_series_below(g, &normals, &Subgroup::whole(g))
}

/// The part of a chief series of `g` running from 1 up to the normal subgroup `top`.
pub fn chief_series_below(g: &FiniteGroup, normals: &[Subgroup], top: &Subgroup) -> ChiefSeries {
    let mut chain = vec![Subgroup::trivial()];
    let mut factors = Vec::new();
    let inside: Vec<Subgroup> = normals.iter().filter(|n| n.is_subset_of(top)).cloned().collect();
    while chain.last().unwrap().len() < top.len() {
        let cur = chain.last().unwrap().clone();
        let next = minimal_above(&inside, &cur)
            .into_iter()
            .min_by(|a, b| a.elems().cmp(b.elems()))
            .expect("a normal subgroup lies between cur and top");
        let centralizer = factor_centralizer(g, &next, &cur);
        factors.push(ChiefFactor {
            order: next.len() / cur.len(),
            automizer_order: g.order() / centralizer.len(),
            centralizer,
        });
        chain.push(next);
    }
    ChiefSeries { chain, factors }
}

/// Checks that `K < H` are normal in `g` with no normal subgroup strictly between.
pub fn check_chief_factor(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<()> {
    if !(k.len() < h.len() && k.is_subset_of(h)) {
        return Err(Error::NotChiefFactor("K is not a proper subgroup of H".into()));
    }
    if !is_normal(g, h) || !is_normal(g, k) {
        return Err(Error::NotChiefFactor("H and K must be normal".into()));
    }
    let between = normal_subgroups(g)
        .into_iter()
        .any(|m| m.len() > k.len() && m.len() < h.len() && k.is_subset_of(&m) && m.is_subset_of(h));
    if between {
        return Err(Error::NotChiefFactor("a normal subgroup lies strictly between K and H".into()));
    }
    Ok(())
}

/// `(H/K) ⋊ (G/C_G(H/K))` with the conjugation action.
pub fn chief_factor_group(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<FiniteGroup> {
    check_chief_factor(g, h, k)?;
    Ok(chief_factor_group_unchecked(g, h, k))
}

pub(crate) fn chief_factor_group_unchecked(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> FiniteGroup {
    let (gk, pi_k) = quotient_unchecked(g, k);
    let mut h_img: Vec<usize> = h.elems().iter().map(|&x| pi_k.apply(x)).collect();
    h_img.sort_unstable();
    h_img.dedup();
    let h_img = Subgroup::from_sorted(h_img);
    let (factor, emb) = subgroup_as_group(&gk, &h_img);
    let mut pos = vec![usize::MAX; gk.order()];
    for (i, &x) in emb.iter().enumerate() {
        pos[x] = i;
    }
    let c = factor_centralizer(g, h, k);
    let (acting, pi_c) = quotient_unchecked(g, &c);
    let reps = pi_c.least_preimages();
    let action: Vec<Vec<usize>> = reps
        .iter()
        .map(|r| {
            let x = pi_k.apply(r.expect("projection is onto"));
            emb.iter().map(|&y| pos[gk.conj(x, y)]).collect()
        })
        .collect();
    semidirect_product(&factor, &acting, &action)
        .expect("conjugation action on a normal section is a homomorphism into automorphisms")
        .with_name(format!("({}/{})x|({}/{})", h.len(), k.len(), g.order(), c.len()))
}

/// `Z_𝔛(G)`: the largest normal subgroup all of whose `G`-chief factors are
/// 𝔛-central, i.e. `(H/K) ⋊ (G/C_G(H/K)) ∈ 𝔛`.
///
/// Every normal subgroup is a candidate; each is tested along one chief series
/// of `G` running through it.
pub fn x_hypercenter(g: &FiniteGroup, class: &ClassSpec) -> Result<Subgroup> {
    let soluble = class.is_soluble_class();
    hypercenter_by_factor(g, |h, k| {
        let section = h.len() / k.len();
        // a nonabelian factor group is never soluble
        if soluble && prime_power(section as u64).is_none() {
            return Ok(false);
        }
        let order = section * (g.order() / factor_centralizer(g, h, k).len());
        if order > DEFAULT_MAX_ORDER {
            return Err(Error::SizeCapExceeded { order, cap: DEFAULT_MAX_ORDER });
        }
        is_member(&chief_factor_group_unchecked(g, h, k), class)
    })
}

pub fn hypercenter_by(g: &FiniteGroup, mut is_central: impl FnMut(&FiniteGroup) -> Result<bool>) -> Result<Subgroup> {
    hypercenter_by_factor(g, |h, k| is_central(&chief_factor_group_unchecked(g, h, k)))
}

fn hypercenter_by_factor(
    g: &FiniteGroup,
    mut is_central: impl FnMut(&Subgroup, &Subgroup) -> Result<bool>,
) -> Result<Subgroup> {
    let normals = normal_subgroups(g);
    let mut verdicts: HashMap<(Vec<usize>, Vec<usize>), bool> = HashMap::new();
    let mut best = Subgroup::trivial();
    for n in normals.iter().rev() {
        if n.len() <= best.len() {
            break;
        }
        let series = chief_series_below(g, &normals, n);
        let mut ok = true;
        for w in series.chain.windows(2) {
            let key = (w[1].elems().to_vec(), w[0].elems().to_vec());
            let central = match verdicts.get(&key) {
                Some(&v) => v,
                None => {
                    let v = is_central(&w[1], &w[0])?;
                    verdicts.insert(key, v);
                    v
                }
            };
            if !central {
                ok = false;
                break;
            }
        }
        if ok {
            best = n.clone();
        }
    }
    Ok(best)
}

/// `1 = Z_0 ≤ Z_1 ≤ ...` with `Z_{i+1}/Z_i = Z(G/Z_i)`, up to the hypercentre.
pub fn upper_central_series(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut series = vec![Subgroup::trivial()];
    loop {
        let z = series.last().unwrap();
        let next = Subgroup::from_sorted(
            g.elements().filter(|&x| g.generators().iter().all(|&y| z.contains(g.commutator(x, y)))).collect(),
        );
        if next.len() == z.len() {
            return series;
        }
        series.push(next);
    }
}

pub fn hypercenter(g: &FiniteGroup) -> Subgroup {
    upper_central_series(g).pop().unwrap()
}

pub fn exponent(g: &FiniteGroup) -> u64 {
    g.element_orders().iter().fold(1, |acc, &o| lcm(acc, o as u64))
}

/// `lcm` of the exponents of a finite list of groups.
pub fn class_exponent(groups: &[FiniteGroup]) -> Supernatural {
    groups.iter().fold(Supernatural::one(), |acc, g| acc.lcm(&Supernatural::from_u64(exponent(g))))
}

/// Centralizer of a subgroup, exposed for callers that hold a lattice.
pub fn centralizer_of(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    centralizer(g, &subgroup_generators(g, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::NamedClass;
    use crate::constructions::{alternating, cyclic, dicyclic, dihedral, elementary_abelian, symmetric};
    use crate::group::{direct_product, is_isomorphic, quotient};

    fn brute_subgroup_count(g: &FiniteGroup) -> usize {
        // every subset closed under multiplication that contains 0
        let n = g.order();
        assert!(n <= 8);
        (0u32..(1 << n))
            .filter(|mask| mask & 1 == 1)
            .filter(|mask| {
                let has = |x: usize| mask >> x & 1 == 1;
                (0..n).filter(|&a| has(a)).all(|a| (0..n).filter(|&b| has(b)).all(|b| has(g.mul(a, b))))
            })
            .count()
    }

    #[test]
    fn subgroup_counts() {
        let s3 = symmetric(3).unwrap();
        assert_eq!(brute_subgroup_count(&s3), 6);
        assert_eq!(all_subgroups(&s3).unwrap().len(), 6);
        assert_eq!(all_subgroups(&cyclic(7).unwrap()).unwrap().len(), 2);
        let q8 = dicyclic(2).unwrap();
        assert_eq!(brute_subgroup_count(&q8), 6);
        assert_eq!(all_subgroups(&q8).unwrap().len(), 6);
        let d8 = dihedral(4).unwrap();
        assert_eq!(all_subgroups(&d8).unwrap().len(), brute_subgroup_count(&d8));
        assert_eq!(all_subgroups(&symmetric(4).unwrap()).unwrap().len(), 30);
        assert_eq!(all_subgroups(&alternating(5).unwrap()).unwrap().len(), 59);
    }

    #[test]
    fn lattice_flags() {
        let s4 = symmetric(4).unwrap();
        let lat = all_subgroups(&s4).unwrap();
        assert!(lat.get(0).is_trivial());
        assert_eq!(lat.get(lat.whole()).len(), 24);
        for i in 0..lat.len() {
            let brute_max = i != lat.whole()
                && !(0..lat.len()).any(|j| {
                    j != i
                        && j != lat.whole()
                        && lat.get(j).len() > lat.get(i).len()
                        && lat.get(i).is_subset_of(lat.get(j))
                });
            assert_eq!(lat.is_maximal(i), brute_max);
            assert_eq!(lat.is_normal(i), is_normal(&s4, lat.get(i)));
        }
        // S4 has 4 normal subgroups: 1, V4, A4, S4
        assert_eq!(lat.normal_flags().iter().filter(|&&b| b).count(), 4);
    }

    #[test]
    fn budget_is_a_hard_error() {
        let g = elementary_abelian(2, 4).unwrap();
        assert!(matches!(all_subgroups_with_budget(&g, 10), Err(Error::SubgroupBudget { budget: 10 })));
    }

    #[test]
    fn frattini_examples() {
        assert!(frattini(&symmetric(3).unwrap()).unwrap().is_trivial());
        assert_eq!(frattini(&cyclic(4).unwrap()).unwrap().len(), 2);
        let q8 = dicyclic(2).unwrap();
        assert_eq!(frattini(&q8).unwrap(), crate::group::center(&q8));
    }

    #[test]
    fn socle_radical_ftilde() {
        let s3 = symmetric(3).unwrap();
        let soc = socle(&s3);
        assert_eq!(soc.len(), 3);
        assert!(soluble_radical(&alternating(5).unwrap()).is_trivial());
        let s4 = symmetric(4).unwrap();
        let ft = f_tilde(&s4).unwrap();
        assert_eq!(ft.len(), 4);
        assert_eq!(ft, socle(&s4));
        assert_eq!(soluble_radical(&s4).len(), 24);
    }

    #[test]
    fn chief_series_examples() {
        let z6 = cyclic(6).unwrap();
        let cs = chief_series(&z6);
        // {0,2,4} precedes {0,3} lexicographically
        assert_eq!(cs.factor_orders(), vec![3, 2]);
        assert!(chief_series(&cyclic(1).unwrap()).factors.is_empty());
        assert_eq!(chief_series(&symmetric(4).unwrap()).factor_orders(), vec![4, 3, 2]);
        assert_eq!(chief_series(&alternating(5).unwrap()).factor_orders(), vec![60]);
    }

    #[test]
    fn chief_factor_groups() {
        let z6 = cyclic(6).unwrap();
        let cs = chief_series(&z6);
        let f = chief_factor_group(&z6, &cs.chain[1], &cs.chain[0]).unwrap();
        assert_eq!(f.order(), 3);

        let s3 = symmetric(3).unwrap();
        let cs = chief_series(&s3);
        let f = chief_factor_group(&s3, &cs.chain[1], &cs.chain[0]).unwrap();
        assert!(is_isomorphic(&f, &s3).is_some());

        let a4 = alternating(4).unwrap();
        let cs = chief_series(&a4);
        let f = chief_factor_group(&a4, &cs.chain[1], &cs.chain[0]).unwrap();
        assert!(is_isomorphic(&f, &a4).is_some());

        let s4 = symmetric(4).unwrap();
        let whole = Subgroup::whole(&s4);
        assert!(matches!(chief_factor_group(&s4, &whole, &Subgroup::trivial()), Err(Error::NotChiefFactor(_))));
    }

    /// Every chief series of `g` (all maximal chains of normal subgroups).
    fn all_chief_series(normals: &[Subgroup], cur: &Subgroup, top: &Subgroup) -> Vec<Vec<Subgroup>> {
        if cur.len() == top.len() {
            return vec![vec![cur.clone()]];
        }
        let inside: Vec<Subgroup> = normals.iter().filter(|n| n.is_subset_of(top)).cloned().collect();
        let mut out = Vec::new();
        for next in minimal_above(&inside, cur) {
            for mut tail in all_chief_series(normals, &next, top) {
                tail.insert(0, cur.clone());
                out.push(tail);
            }
        }
        out
    }

    fn brute_hypercenter(g: &FiniteGroup, class: &ClassSpec) -> Subgroup {
        let normals = normal_subgroups(g);
        let mut best = Subgroup::trivial();
        for n in &normals {
            let series = all_chief_series(&normals, &Subgroup::trivial(), n);
            let all_central = series.iter().all(|chain| {
                chain.windows(2).all(|w| is_member(&chief_factor_group(g, &w[1], &w[0]).unwrap(), class).unwrap())
            });
            if all_central && n.len() > best.len() {
                best = n.clone();
            }
        }
        best
    }

    #[test]
    fn hypercentres() {
        let nil = ClassSpec::Named(NamedClass::Nilpotent);
        let d8 = dihedral(4).unwrap();
        assert_eq!(x_hypercenter(&d8, &nil).unwrap().len(), 8);
        assert!(x_hypercenter(&symmetric(3).unwrap(), &nil).unwrap().is_trivial());
        let z2s3 = direct_product(&cyclic(2).unwrap(), &symmetric(3).unwrap());
        let z = x_hypercenter(&z2s3, &nil).unwrap();
        assert_eq!(z.len(), 2);
        assert_eq!(z, crate::group::center(&z2s3));
        for g in [symmetric(4).unwrap(), z2s3, dicyclic(3).unwrap(), dihedral(6).unwrap()] {
            assert_eq!(x_hypercenter(&g, &nil).unwrap(), brute_hypercenter(&g, &nil));
            assert_eq!(x_hypercenter(&g, &nil).unwrap(), hypercenter(&g));
            let u = ClassSpec::Named(NamedClass::Supersoluble);
            assert_eq!(x_hypercenter(&g, &u).unwrap(), brute_hypercenter(&g, &u));
        }
    }

    #[test]
    fn exponents() {
        assert_eq!(exponent(&cyclic(1).unwrap()), 1);
        assert_eq!(exponent(&symmetric(3).unwrap()), 6);
        let e = class_exponent(&[cyclic(2).unwrap(), cyclic(9).unwrap()]);
        assert_eq!(e, Supernatural::from_u64(18));
    }

    #[test]
    fn frattini_quotient_has_trivial_frattini() {
        for g in [dicyclic(2).unwrap(), cyclic(8).unwrap(), dihedral(4).unwrap(), symmetric(4).unwrap()] {
            let phi = frattini(&g).unwrap();
            assert!(is_normal(&g, &phi));
            let (q, _) = quotient(&g, &phi).unwrap();
            assert!(frattini(&q).unwrap().is_trivial());
        }
    }
}
