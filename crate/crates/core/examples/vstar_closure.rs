// `K`-subnormal chains and the closure `v*`.

use formatio::constructions::symmetric;
use formatio::group::generated_subgroup;
use formatio::subnormality::{
    cyclic_primary_subgroups, is_k_f_subnormal, is_p_subnormal, v_membership, vstar_membership, vstar_obstruction,
};
use formatio::ClassSpec;

pub fn run_example() -> formatio::Result<()> {
    let s4 = symmetric(4)?;
    let transposition = s4.elements().find(|&x| s4.element_order(x) == 2).expect("S4 has involutions");
    let h = generated_subgroup(&s4, &[transposition]);

    for spec in [ClassSpec::nilpotent(), ClassSpec::supersoluble(), ClassSpec::soluble()] {
        match is_k_f_subnormal(&s4, &h, &spec)? {
            Some(chain) => println!("<{transposition}> is K-{spec}-subnormal: {:?}", chain.step_kinds),
            None => println!("<{transposition}> is not K-{spec}-subnormal"),
        }
    }
    if let Some(chain) = is_p_subnormal(&s4, &h)? {
        println!("prime-index chain of orders {:?}", chain.chain.iter().map(|c| c.len()).collect::<Vec<_>>());
    }

    println!("S4 has {} cyclic primary subgroups", cyclic_primary_subgroups(&s4).len());
    for spec in [ClassSpec::nilpotent(), ClassSpec::supersoluble()] {
        let inside = vstar_membership(&s4, &spec)?;
        let stuck = vstar_obstruction(&s4, &spec)?.map(|c| c.elems().to_vec());
        println!("S4 in v*{spec}: {inside}, obstruction {stuck:?}");
    }
    println!("S4 in vU: {}", v_membership(&s4)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> formatio::Result<()> {
    run_example()
}
