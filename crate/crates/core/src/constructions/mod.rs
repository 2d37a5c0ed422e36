//! Builders for concrete groups: cyclic, abelian, dihedral, dicyclic,
//! symmetric and alternating groups, small matrix groups, and `E(n|p)`.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::group::{direct_product, semidirect_product, FiniteGroup, Subgroup, DEFAULT_MAX_ORDER};
use crate::primes::{gcd, is_prime, multiplicative_order};

pub mod catalog;
pub mod field;

pub use catalog::{build_catalog, CatalogConfig, CatalogEntry};
pub use field::GaloisField;

/// Closes `gens` under `mul` and returns the group with the identity at index
/// 0 and the remaining elements in increasing `Ord` order.
pub fn group_from_generators<T, F>(name: impl Into<String>, identity: T, gens: &[T], mul: F) -> Result<FiniteGroup>
where
    T: Clone + Eq + Hash + Ord,
    F: Fn(&T, &T) -> T,
{
    let mut seen: std::collections::HashSet<T> = std::collections::HashSet::new();
    seen.insert(identity.clone());
    let mut list = vec![identity.clone()];
    let mut i = 0;
    while i < list.len() {
        for s in gens {
            let y = mul(&list[i], s);
            if seen.insert(y.clone()) {
                list.push(y);
                if list.len() > DEFAULT_MAX_ORDER {
                    return Err(Error::TooLarge { order: list.len(), cap: DEFAULT_MAX_ORDER });
                }
            }
        }
        i += 1;
    }
    list[1..].sort();
    let index: HashMap<T, usize> = list.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    let n = list.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &list {
        for b in &list {
            table.push(index[&mul(a, b)]);
        }
    }
    Ok(FiniteGroup::from_flat_unchecked(name.into(), n, table))
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > DEFAULT_MAX_ORDER {
        return Err(Error::UnsupportedParameter { builder: "cyclic", detail: format!("n = {n}") });
    }
    let table = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
    Ok(FiniteGroup::from_flat_unchecked(format!("Z{n}"), n, table))
}

/// Direct product of cyclic groups of the given orders.
pub fn abelian(invariants: &[usize]) -> Result<FiniteGroup> {
    let mut g = cyclic(1)?;
    let mut names = Vec::new();
    for &m in invariants {
        if g.order() * m > DEFAULT_MAX_ORDER {
            return Err(Error::TooLarge { order: g.order() * m, cap: DEFAULT_MAX_ORDER });
        }
        g = direct_product(&g, &cyclic(m)?);
        names.push(format!("Z{m}"));
    }
    let name = if names.is_empty() { "Z1".to_string() } else { names.join("x") };
    Ok(g.with_name(name))
}

pub fn elementary_abelian(p: usize, d: usize) -> Result<FiniteGroup> {
    if !is_prime(p as u64) {
        return Err(Error::UnsupportedParameter { builder: "elementary_abelian", detail: format!("{p} is not prime") });
    }
    let g = abelian(&vec![p; d])?;
    Ok(g.with_name(format!("Z{p}^{d}")))
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::UnsupportedParameter { builder: "dihedral", detail: "n = 0".into() });
    }
    let zn = cyclic(n)?;
    let z2 = cyclic(2)?;
    let action = vec![(0..n).collect(), (0..n).map(|x| zn.inv(x)).collect()];
    Ok(semidirect_product(&zn, &z2, &action)?.with_name(format!("D{}", 2 * n)))
}

/// Dicyclic group of order `4n`: `<a, x | a^2n, x^2 = a^n, x a x^-1 = a^-1>`.
pub fn dicyclic(n: usize) -> Result<FiniteGroup> {
    if n < 1 || 4 * n > DEFAULT_MAX_ORDER {
        return Err(Error::UnsupportedParameter { builder: "dicyclic", detail: format!("n = {n}") });
    }
    let m = 2 * n;
    let order = 2 * m;
    let decode = |i: usize| (i % m, i / m);
    let mut table = Vec::with_capacity(order * order);
    for i in 0..order {
        let (k, e) = decode(i);
        for j in 0..order {
            let (l, f) = decode(j);
            let l = if e == 1 { (m - l) % m } else { l };
            let mut a = (k + l) % m;
            let mut x = e + f;
            if x == 2 {
                a = (a + n) % m;
                x = 0;
            }
            table.push(a + m * x);
        }
    }
    let name = match n {
        2 => "Q8".to_string(),
        4 => "Q16".to_string(),
        _ => format!("Dic{}", order),
    };
    Ok(FiniteGroup::from_flat_unchecked(name, order, table))
}

fn compose(a: &[u8], b: &[u8]) -> Vec<u8> {
    b.iter().map(|&x| a[x as usize]).collect()
}

/// Permutation group on `0..degree` generated by `gens`; `(a·b)(x) = a(b(x))`.
pub fn permutation_group(name: impl Into<String>, degree: usize, gens: &[Vec<u8>]) -> Result<FiniteGroup> {
    let id: Vec<u8> = (0..degree as u8).collect();
    group_from_generators(name, id, gens, |a: &Vec<u8>, b: &Vec<u8>| compose(a, b))
}

fn cycle(degree: usize, points: &[u8]) -> Vec<u8> {
    let mut p: Vec<u8> = (0..degree as u8).collect();
    for (i, &x) in points.iter().enumerate() {
        p[x as usize] = points[(i + 1) % points.len()];
    }
    p
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 5 {
        return Err(Error::UnsupportedParameter { builder: "symmetric", detail: format!("n = {n}") });
    }
    let all: Vec<u8> = (0..n as u8).collect();
    let gens = if n == 1 { vec![] } else { vec![cycle(n, &[0, 1]), cycle(n, &all)] };
    permutation_group(format!("S{n}"), n, &gens)
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 5 {
        return Err(Error::UnsupportedParameter { builder: "alternating", detail: format!("n = {n}") });
    }
    let gens: Vec<Vec<u8>> = (0..n.saturating_sub(2)).map(|i| cycle(n, &[i as u8, i as u8 + 1, i as u8 + 2])).collect();
    permutation_group(format!("A{n}"), n, &gens)
}

/// Group of `dim × dim` matrices over `GF(p)` generated by `gens` (row-major).
pub fn matrix_group(name: impl Into<String>, p: u8, dim: usize, gens: &[Vec<u8>]) -> Result<FiniteGroup> {
    let mul = move |a: &Vec<u8>, b: &Vec<u8>| {
        let mut c = vec![0u8; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let s: u32 = (0..dim).map(|k| a[i * dim + k] as u32 * b[k * dim + j] as u32).sum();
                c[i * dim + j] = (s % p as u32) as u8;
            }
        }
        c
    };
    let id: Vec<u8> = (0..dim * dim).map(|i| u8::from(i % (dim + 1) == 0)).collect();
    group_from_generators(name, id, gens, mul)
}

pub fn sl23() -> Result<FiniteGroup> {
    matrix_group("SL(2,3)", 3, 2, &[vec![1, 1, 0, 1], vec![1, 0, 1, 1]])
}

pub fn gl23() -> Result<FiniteGroup> {
    matrix_group("GL(2,3)", 3, 2, &[vec![1, 1, 0, 1], vec![1, 0, 1, 1], vec![2, 0, 0, 1]])
}

/// `GF(p)^2 ⋊ H` where `H ≤ GL(2,p)` is generated by the given 2×2 matrices,
/// realized as affine 3×3 matrices.
pub fn affine_plane_extension(name: impl Into<String>, p: u8, linear: &[[u8; 4]]) -> Result<FiniteGroup> {
    let mut gens = vec![vec![1, 0, 1, 0, 1, 0, 0, 0, 1], vec![1, 0, 0, 0, 1, 1, 0, 0, 1]];
    for m in linear {
        gens.push(vec![m[0], m[1], 0, m[2], m[3], 0, 0, 0, 1]);
    }
    matrix_group(name, p, 3, &gens)
}

/// `N ⋊ Z_m` with the generator of `Z_m` acting by the automorphism `aut`
/// (which must satisfy `aut^m = 1`).
pub fn cyclic_extension(normal: &FiniteGroup, m: usize, aut: &[usize]) -> Result<FiniteGroup> {
    let zm = cyclic(m)?;
    let mut action: Vec<Vec<usize>> = vec![normal.elements().collect()];
    for k in 1..m {
        let prev = &action[k - 1];
        action.push(prev.iter().map(|&x| aut[x]).collect());
    }
    semidirect_product(normal, &zm, &action)
}

/// `E(n|p)`: the elementary abelian `p`-group `GF(p^d)^+` extended by `Z_n`
/// acting through multiplication by a primitive `n`-th root of unity, where
/// `d` is the multiplicative order of `p` modulo `n`. For `n = 1` this is `Z_p`.
pub fn build_e(n: u64, p: u64) -> Result<FiniteGroup> {
    if !is_prime(p) {
        return Err(Error::UnsupportedParameter { builder: "build_e", detail: format!("{p} is not prime") });
    }
    if n == 0 {
        return Err(Error::UnsupportedParameter { builder: "build_e", detail: "n = 0".into() });
    }
    if gcd(n, p) != 1 {
        return Err(Error::NotCoprime { n, p });
    }
    let name = format!("E({n}|{p})");
    if n == 1 {
        return Ok(cyclic(p as usize)?.with_name(name));
    }
    let d = multiplicative_order(p, n).expect("coprime");
    let q = p.checked_pow(d).ok_or(Error::TooLarge { order: usize::MAX, cap: DEFAULT_MAX_ORDER })?;
    let order = q.saturating_mul(n) as usize;
    if order > DEFAULT_MAX_ORDER {
        return Err(Error::TooLarge { order, cap: DEFAULT_MAX_ORDER });
    }
    let field = GaloisField::new(p, d).expect("prime characteristic");
    let zeta = field.least_element_of_order(n).expect("n divides p^d - 1");
    let qs = q as usize;
    let add_table: Vec<usize> =
        (0..q).flat_map(|a| (0..q).map(move |b| (a, b))).map(|(a, b)| field.add(a, b) as usize).collect();
    let additive = FiniteGroup::from_flat_unchecked(format!("GF({q})+"), qs, add_table);
    let mut mult_by = vec![0u64; q as usize];
    for (a, m) in mult_by.iter_mut().enumerate() {
        *m = field.mul(zeta, a as u64);
    }
    let aut: Vec<usize> = mult_by.iter().map(|&x| x as usize).collect();
    let g = cyclic_extension(&additive, n as usize, &aut)?.with_name(name);
    if !verify_e_group(&g, qs) {
        return Err(Error::UnsupportedParameter {
            builder: "build_e",
            detail: format!("E({n}|{p}) failed its structural check"),
        });
    }
    Ok(g)
}

/// Checks the defining shape of a group built by [`build_e`]: the first
/// `base` indices form the unique minimal normal subgroup `A` and `C_G(A) = A`.
pub fn verify_e_group(g: &FiniteGroup, base: usize) -> bool {
    let a = Subgroup::from_sorted((0..base).collect());
    let minimal = crate::structure::minimal_normal_subgroups(g);
    minimal.len() == 1 && minimal[0] == a && crate::group::centralizer(g, a.elems()) == a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{generated_subgroup, is_isomorphic};
    use crate::structure::exponent;

    fn order_multiset(g: &FiniteGroup) -> Vec<usize> {
        let mut v = g.element_orders().to_vec();
        v.sort_unstable();
        v
    }

    #[test]
    fn small_builders() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        let v4 = elementary_abelian(2, 2).unwrap();
        assert_eq!(order_multiset(&v4), vec![1, 2, 2, 2]);
        let s4 = symmetric(4).unwrap();
        assert_eq!(s4.order(), 24);
        let lcm = s4.element_orders().iter().fold(1u64, |acc, &o| crate::primes::lcm(acc, o as u64));
        assert_eq!(lcm, 12);
        assert_eq!(exponent(&s4), 12);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert_eq!(dihedral(4).unwrap().order(), 8);
        assert_eq!(order_multiset(&dicyclic(2).unwrap()), vec![1, 2, 4, 4, 4, 4, 4, 4]);
        assert_eq!(sl23().unwrap().order(), 24);
        assert_eq!(gl23().unwrap().order(), 48);
        assert!(matches!(symmetric(6), Err(Error::UnsupportedParameter { .. })));
        assert!(matches!(cyclic(0), Err(Error::UnsupportedParameter { .. })));
    }

    #[test]
    fn dicyclic_is_a_group() {
        for n in 1..6 {
            let g = dicyclic(n).unwrap();
            assert!(crate::group::build_group(g.table_rows(), "check").is_ok());
        }
    }

    #[test]
    fn e_groups() {
        let e23 = build_e(2, 3).unwrap();
        assert!(is_isomorphic(&e23, &symmetric(3).unwrap()).is_some());
        let e32 = build_e(3, 2).unwrap();
        assert!(is_isomorphic(&e32, &alternating(4).unwrap()).is_some());
        let e1 = build_e(1, 5).unwrap();
        assert!(is_isomorphic(&e1, &cyclic(5).unwrap()).is_some());
        let e43 = build_e(4, 3).unwrap();
        assert_eq!(e43.order(), 36);
        assert!(verify_e_group(&e43, 9));
        // complement has order n
        let c = generated_subgroup(&e43, &[9]);
        assert_eq!(c.len(), 4);
        assert!(matches!(build_e(6, 3), Err(Error::NotCoprime { .. })));
        assert!(matches!(build_e(9, 2), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn e_group_orders_match_field_degree() {
        for (n, p) in [(2u64, 3u64), (3, 2), (4, 3), (4, 5), (3, 7), (6, 7), (5, 2), (7, 2), (8, 3), (3, 5)] {
            let d = multiplicative_order(p, n).unwrap();
            let g = build_e(n, p).unwrap();
            assert_eq!(g.order() as u64, p.pow(d) * n);
            assert!((p.pow(d) - 1) % n == 0);
            assert!((1..d).all(|k| (p.pow(k) - 1) % n != 0));
        }
    }

    #[test]
    fn affine_extensions() {
        // Q8 inside SL(2,3)
        let q8 = matrix_group("Q8m", 3, 2, &[vec![0, 2, 1, 0], vec![1, 1, 1, 2]]).unwrap();
        assert!(is_isomorphic(&q8, &dicyclic(2).unwrap()).is_some());
        let g = affine_plane_extension("Z3^2:Q8", 3, &[[0, 2, 1, 0], [1, 1, 1, 2]]).unwrap();
        assert_eq!(g.order(), 72);
    }
}
