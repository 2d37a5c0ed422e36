// Compare `Int_F(G)` with `I_F(G)` across a catalog.

use formatio::constructions::{build_catalog, CatalogConfig};
use formatio::regularity::regularity_sweep;
use formatio::FiniteGroup;

pub fn run_example() -> formatio::Result<()> {
    let groups: Vec<FiniteGroup> =
        build_catalog(&CatalogConfig::with_max_order(48))?.into_iter().map(|e| e.group).collect();
    for s in
        ["vU", "sylow_tower:2>3>5", "cap(soluble, p_nilpotent:3)", "reg(f: 2->2^inf*3, default->1)", "supersoluble"]
    {
        let report = regularity_sweep(&groups, &s.parse()?)?;
        let s = &report.summary;
        println!(
            "{:40} backed: {:5}  groups {:3}  equal {:3}  unequal {:2}  violations {}",
            report.spec, report.theorem_backed, s.groups, s.equal, s.unequal, s.violations
        );
        for row in report.rows.iter().filter(|r| !r.equal).take(3) {
            println!("    {}: Int {:?} vs I {:?}", row.group, row.int, row.iset);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> formatio::Result<()> {
    run_example()
}
