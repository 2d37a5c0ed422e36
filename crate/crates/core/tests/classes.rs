use formatio::classes::{
    exponent_local_definition, is_member, local_membership, residual, regular_membership, PrimeOrdering,
};
use formatio::constructions::{alternating, build_e, cyclic, dicyclic, dihedral, sl23, symmetric};
use formatio::group::{direct_product, is_soluble, normal_subgroups, quotient};
use formatio::primes::prime_divisors;
use formatio::regularity::{i_set, int_set};
use formatio::steinitz::{reg_join, reg_meet};
use formatio::structure::exponent;
use formatio::subnormality::{is_k_f_subnormal, is_p_subnormal};
use formatio::{ClassSpec, ExponentFunction, FiniteGroup};
use proptest::prelude::*;

fn small_groups() -> Vec<FiniteGroup> {
    vec![
        cyclic(1).unwrap(),
        cyclic(6).unwrap(),
        symmetric(3).unwrap(),
        dihedral(4).unwrap(),
        dicyclic(2).unwrap(),
        alternating(4).unwrap(),
        symmetric(4).unwrap(),
        sl23().unwrap(),
        build_e(4, 3).unwrap(),
        build_e(4, 5).unwrap(),
        direct_product(&symmetric(3).unwrap(), &cyclic(2).unwrap()),
    ]
}

fn spec(s: &str) -> ClassSpec {
    s.parse().unwrap()
}

/// Oracle: the group has a normal series with quotients of orders following
/// the ordering, found through normal Hall subgroups by brute force.
fn sylow_tower_oracle(g: &FiniteGroup, phi: &PrimeOrdering) -> bool {
    let primes = phi.arrange(prime_divisors(g.order() as u64));
    let normals = normal_subgroups(g);
    let part = |n: usize, ps: &[u64]| {
        let mut m = 1usize;
        let mut n = n;
        for &p in ps {
            while n % p as usize == 0 {
                n /= p as usize;
                m *= p as usize;
            }
        }
        m
    };
    (1..=primes.len()).all(|k| normals.iter().any(|n| n.len() == part(g.order(), &primes[..k])))
}

#[test]
fn sylow_towers_match_the_oracle() {
    for order in ["2>3>5", "5>3>2", "3>2"] {
        let phi = PrimeOrdering::new(order.split('>').map(|p| p.parse().unwrap()).collect()).unwrap();
        let class = spec(&format!("sylow_tower:{order}"));
        for g in small_groups() {
            assert_eq!(is_member(&g, &class).unwrap(), sylow_tower_oracle(&g, &phi), "{} {order}", g.name());
        }
    }
}

#[test]
fn membership_of_known_groups() {
    let a4 = alternating(4).unwrap();
    assert!(!is_member(&a4, &spec("supersoluble")).unwrap());
    assert!(is_member(&a4, &spec("sylow_tower:2>3")).unwrap());
    assert!(!is_member(&a4, &spec("sylow_tower:3>2")).unwrap());
    assert!(is_member(&a4, &spec("p_nilpotent:3")).unwrap());
    assert!(!is_member(&a4, &spec("p_nilpotent:2")).unwrap());
    assert!(
        is_member(&sl23().unwrap(), &spec("vU")).unwrap() == is_member(&sl23().unwrap(), &spec("vstar(U)")).unwrap()
    );
    let s4 = symmetric(4).unwrap();
    assert!(!is_member(&s4, &spec("prod(nilpotent, abelian)")).unwrap());
    assert!(is_member(&s4, &spec("prod(nilpotent, prod(abelian, abelian))")).unwrap());
}

#[test]
fn residual_quotients_lie_in_the_class() {
    for g in small_groups() {
        for s in ["nilpotent", "abelian", "supersoluble", "S(omega=2^inf)", "sylow_tower:2>3"] {
            let class = spec(s);
            let r = residual(&g, &class).unwrap();
            assert!(is_member(&quotient(&g, &r).unwrap().0, &class).unwrap(), "{} {s}", g.name());
        }
    }
}

#[test]
fn exponent_bounded_classes() {
    for g in small_groups() {
        let e = exponent(&g);
        assert!(is_member(&g, &spec(&format!("bounded(all, {e})"))).unwrap());
        if e > 1 {
            assert!(!is_member(&g, &spec(&format!("bounded(all, {})", e / prime_divisors(e)[0]))).unwrap());
        }
    }
}

#[test]
fn subnormal_chains_verify() {
    let s4 = symmetric(4).unwrap();
    let lattice = formatio::structure::all_subgroups(&s4).unwrap();
    let u = ClassSpec::supersoluble();
    for h in lattice.subgroups() {
        if let Some(chain) = is_k_f_subnormal(&s4, h, &u).unwrap() {
            assert!(chain.verify(&s4, Some(&u)).unwrap());
        }
        if let Some(chain) = is_p_subnormal(&s4, h).unwrap() {
            assert!(chain.verify(&s4, None).unwrap());
        }
    }
}

#[test]
fn regular_formations_satisfy_the_identity() {
    for f in ["default->1", "2->2^inf*3, default->1", "3->3^inf*2, default->full"] {
        let class = spec(&format!("reg(f: {f})"));
        for g in small_groups().into_iter().filter(is_soluble) {
            assert_eq!(int_set(&g, &class).unwrap(), i_set(&g, &class).unwrap(), "{} {f}", g.name());
        }
    }
}

fn exponent_function() -> impl Strategy<Value = ExponentFunction> {
    let value = proptest::sample::select(vec!["1", "2", "3", "6", "5", "full", "4*3^inf"]);
    let entries = proptest::collection::btree_map(proptest::sample::select(vec![2u64, 3, 5]), value, 0..3);
    (entries, proptest::bool::ANY).prop_map(|(entries, full)| {
        let explicit = entries.into_iter().map(|(p, v)| {
            let v: formatio::Supernatural = v.parse().unwrap();
            (p, v.with(p, formatio::steinitz::Exponent::Infinite))
        });
        let base = if full { formatio::Supernatural::full() } else { formatio::Supernatural::one() };
        ExponentFunction::new(explicit, base).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn meet_is_intersection_and_join_contains_both(f1 in exponent_function(), f2 in exponent_function()) {
        let meet = reg_meet(&f1, &f2);
        let join = reg_join(&f1, &f2);
        for g in small_groups() {
            let (a, b) = (regular_membership(&g, &f1).unwrap(), regular_membership(&g, &f2).unwrap());
            prop_assert_eq!(regular_membership(&g, &meet).unwrap(), a && b, "{}", g.name());
            if a || b {
                prop_assert!(regular_membership(&g, &join).unwrap(), "{}", g.name());
            }
        }
    }

    #[test]
    fn two_membership_algorithms_agree(f in exponent_function()) {
        for g in small_groups() {
            let primes = prime_divisors(g.order() as u64);
            let local = is_soluble(&g) && local_membership(&g, &exponent_local_definition(&f, &primes)).unwrap();
            prop_assert_eq!(regular_membership(&g, &f).unwrap(), local, "{}", g.name());
        }
    }
}
