// Build groups, generate subgroups, take quotients and test isomorphism.

use formatio::constructions::{cyclic, dihedral, symmetric};
use formatio::group::{center, direct_product, generated_subgroup, is_isomorphic, normal_subgroups, quotient};

pub fn run_example() -> formatio::Result<()> {
    let s3 = symmetric(3)?;
    println!("{} has order {}, element orders {:?}", s3.name(), s3.order(), s3.element_orders());

    let rotations = generated_subgroup(&s3, &[s3.generators()[0]]);
    println!("<{}> = {:?}", s3.generators()[0], rotations.elems());
    println!("normal subgroups of S3: {:?}", normal_subgroups(&s3).iter().map(|n| n.len()).collect::<Vec<_>>());

    let d12 = dihedral(6)?;
    let z = center(&d12);
    let (q, _) = quotient(&d12, &z)?;
    println!("D12 / Z(D12) has order {} and is S3: {}", q.order(), is_isomorphic(&q, &s3).is_some());

    let product = direct_product(&s3, &cyclic(2)?);
    println!("{} is D12: {}", product.name(), is_isomorphic(&product, &d12).is_some());

    let restored = formatio::FiniteGroup::from_json(&s3.to_json())?;
    assert_eq!(restored.table_rows(), s3.table_rows());
    Ok(())
}

#[allow(dead_code)]
fn main() -> formatio::Result<()> {
    run_example()
}
