// The groups `E(n|p)`: an elementary abelian `p`-group extended by `Z_n`.

use formatio::constructions::{alternating, build_e, symmetric, verify_e_group};
use formatio::group::is_isomorphic;
use formatio::structure::minimal_normal_subgroups;

pub fn run_example() -> formatio::Result<()> {
    for (n, p) in [(1, 5), (2, 3), (3, 2), (4, 3), (4, 5), (3, 7), (8, 3)] {
        let g = build_e(n, p)?;
        let minimal = minimal_normal_subgroups(&g);
        println!(
            "{:8} order {:3}  minimal normal of order {}  shape ok: {}",
            g.name(),
            g.order(),
            minimal[0].len(),
            verify_e_group(&g, minimal[0].len())
        );
    }
    println!("E(2|3) = S3: {}", is_isomorphic(&build_e(2, 3)?, &symmetric(3)?).is_some());
    println!("E(3|2) = A4: {}", is_isomorphic(&build_e(3, 2)?, &alternating(4)?).is_some());
    match build_e(3, 3) {
        Err(e) => println!("E(3|3): {e}"),
        Ok(_) => unreachable!("n and p must be coprime"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> formatio::Result<()> {
    run_example()
}
