// Class specs: parsing, membership, residuals, products and local definitions.

use formatio::classes::{is_schmidt, residual, regular_membership};
use formatio::constructions::{alternating, build_e, dicyclic, symmetric};
use formatio::{is_member, ClassSpec, ExponentFunction};

pub fn run_example() -> formatio::Result<()> {
    let groups = [symmetric(3)?, dicyclic(2)?, alternating(4)?, symmetric(4)?, build_e(4, 3)?, alternating(5)?];
    let specs = [
        "nilpotent",
        "supersoluble",
        "p_nilpotent:2",
        "sylow_tower:2>3>5",
        "S(omega=2^inf*3)",
        "prod(nilpotent, abelian)",
        "local(2->soluble, 3->trivial, default->all)",
        "vU",
    ];
    print!("{:46}", "");
    for g in &groups {
        print!("{:>7}", g.name());
    }
    println!();
    for s in specs {
        let spec: ClassSpec = s.parse()?;
        print!("{:46}", spec.to_string());
        for g in &groups {
            print!("{:>7}", if is_member(g, &spec)? { "yes" } else { "-" });
        }
        println!();
    }

    let s4 = symmetric(4)?;
    println!("S4 nilpotent residual has order {}", residual(&s4, &ClassSpec::nilpotent())?.len());
    let f: ExponentFunction = "2->2^inf*3, default->1".parse()?;
    println!("S3 in the regular formation of {f}: {}", regular_membership(&groups[0], &f)?);
    println!("A4 is a Schmidt group: {}", is_schmidt(&groups[2])?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> formatio::Result<()> {
    run_example()
}
