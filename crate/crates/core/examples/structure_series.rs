// Subgroup lattices, characteristic subgroups, chief series and hypercentres.

use formatio::constructions::{alternating, cyclic, symmetric};
use formatio::group::direct_product;
use formatio::structure::{
    all_subgroups, chief_series, exponent, f_tilde, frattini, hypercenter, socle, soluble_radical, x_hypercenter,
};
use formatio::ClassSpec;

pub fn run_example() -> formatio::Result<()> {
    for g in [symmetric(4)?, alternating(5)?, direct_product(&cyclic(2)?, &symmetric(3)?)] {
        let lattice = all_subgroups(&g)?;
        let series = chief_series(&g);
        println!("{} (order {}, exponent {})", g.name(), g.order(), exponent(&g));
        println!("  subgroups {}, maximal {}", lattice.len(), lattice.maximal_subgroups().count());
        println!(
            "  |Phi| = {}, |Soc| = {}, |R| = {}, |F~| = {}",
            frattini(&g)?.len(),
            socle(&g).len(),
            soluble_radical(&g).len(),
            f_tilde(&g)?.len()
        );
        println!("  chief factors {:?}", series.factor_orders());
        let z_n = x_hypercenter(&g, &ClassSpec::nilpotent())?;
        println!("  Z_N(G) has order {}, upper central series gives {}", z_n.len(), hypercenter(&g).len());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> formatio::Result<()> {
    run_example()
}
