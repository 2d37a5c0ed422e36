// The non-F graph of a group, exported as Graphviz DOT.

use formatio::constructions::{alternating, symmetric};
use formatio::regularity::{i_set, non_f_graph};
use formatio::ClassSpec;

pub fn run_example() -> formatio::Result<()> {
    let s3 = symmetric(3)?;
    let graph = non_f_graph(&s3, &ClassSpec::nilpotent())?;
    print!("{}", graph.to_dot());

    let a4 = alternating(4)?;
    for spec in [ClassSpec::abelian(), ClassSpec::nilpotent(), ClassSpec::supersoluble()] {
        let graph = non_f_graph(&a4, &spec)?;
        assert_eq!(graph.isolated, i_set(&a4, &spec)?);
        println!("A4, {spec}: {} edges, isolated {:?}", graph.edge_count(), graph.isolated);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> formatio::Result<()> {
    run_example()
}
