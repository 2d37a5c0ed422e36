//! `ℐ_𝔉(G)`, `Int_𝔉(G)`, the non-𝔉 graph, and catalog sweeps comparing them.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::classes::{is_member_with, ClassSpec, Limits, NamedClass};
use crate::error::{Error, Result};
use crate::group::{closure_elems, is_soluble, subgroup_as_group, FiniteGroup, Subgroup};
use crate::structure::all_subgroups_with_budget;

/// Membership of subgroups of one group, memoized by element set.
pub struct SubgroupOracle<'a> {
    g: &'a FiniteGroup,
    spec: &'a ClassSpec,
    limits: Limits,
    cache: HashMap<Vec<usize>, bool>,
}

impl<'a> SubgroupOracle<'a> {
    pub fn new(g: &'a FiniteGroup, spec: &'a ClassSpec, limits: Limits) -> Self {
        SubgroupOracle { g, spec, limits, cache: HashMap::new() }
    }

    /// `elems` must be a sorted subgroup.
    pub fn contains(&mut self, elems: &[usize]) -> Result<bool> {
        if let Some(&v) = self.cache.get(elems) {
            return Ok(v);
        }
        let h = Subgroup::from_sorted(elems.to_vec());
        let v = is_member_with(&subgroup_as_group(self.g, &h).0, self.spec, &self.limits)?;
        self.cache.insert(elems.to_vec(), v);
        Ok(v)
    }

    /// `⟨x, y⟩ ∈ 𝔉`
    pub fn pair(&mut self, x: usize, y: usize) -> Result<bool> {
        let mut elems = closure_elems(self.g, &[x, y]);
        elems.sort_unstable();
        self.contains(&elems)
    }
}

/// `⟨x, y⟩ ∈ 𝔉` for every unordered pair, including `x = y`.
fn pair_matrix(g: &FiniteGroup, spec: &ClassSpec, limits: &Limits) -> Result<Vec<Vec<bool>>> {
    limits.check(g)?;
    let n = g.order();
    let mut oracle = SubgroupOracle::new(g, spec, *limits);
    let mut ok = vec![vec![true; n]; n];
    for x in 0..n {
        for y in x..n {
            let v = oracle.pair(x, y)?;
            ok[x][y] = v;
            ok[y][x] = v;
        }
    }
    Ok(ok)
}

/// `{x : ⟨x, y⟩ ∈ 𝔉 for all y ∈ G}`
pub fn i_set(g: &FiniteGroup, spec: &ClassSpec) -> Result<Vec<usize>> {
    i_set_with(g, spec, &Limits::default())
}

pub fn i_set_with(g: &FiniteGroup, spec: &ClassSpec, limits: &Limits) -> Result<Vec<usize>> {
    let ok = pair_matrix(g, spec, limits)?;
    Ok((0..g.order()).filter(|&x| ok[x].iter().all(|&b| b)).collect())
}

/// Intersection of the `𝔉`-maximal subgroups of `G`.
pub fn int_set(g: &FiniteGroup, spec: &ClassSpec) -> Result<Vec<usize>> {
    int_set_with(g, spec, &Limits::default())
}

pub fn int_set_with(g: &FiniteGroup, spec: &ClassSpec, limits: &Limits) -> Result<Vec<usize>> {
    Ok(f_maximal_subgroups(g, spec, limits)?
        .into_iter()
        .reduce(|a, b| a.intersection(&b))
        .expect("nonempty")
        .into_elems())
}

/// Subgroups in `𝔉` not properly contained in another subgroup in `𝔉`.
pub fn f_maximal_subgroups(g: &FiniteGroup, spec: &ClassSpec, limits: &Limits) -> Result<Vec<Subgroup>> {
    limits.check(g)?;
    let lattice = all_subgroups_with_budget(g, limits.subgroup_budget)?;
    let mut oracle = SubgroupOracle::new(g, spec, *limits);
    let mut members = Vec::new();
    for h in lattice.subgroups() {
        if oracle.contains(h.elems())? {
            members.push(h.clone());
        }
    }
    if members.is_empty() {
        return Err(Error::EmptyClass);
    }
    let maximal: Vec<Subgroup> =
        members.iter().filter(|h| !members.iter().any(|k| k.len() > h.len() && h.is_subset_of(k))).cloned().collect();
    Ok(maximal)
}

/// The graph on `G` joining `x` and `y` when `⟨x, y⟩ ∉ 𝔉`.
#[derive(Clone, Debug, Serialize)]
pub struct NonFGraph {
    pub group: String,
    pub spec: String,
    pub element_orders: Vec<usize>,
    /// Symmetric; the diagonal records whether `⟨x⟩ ∉ 𝔉`.
    pub adjacency: Vec<Vec<bool>>,
    /// Vertices with no edge, loops included.
    pub isolated: Vec<usize>,
}

impl NonFGraph {
    /// Unordered edges `x < y`; loops are not counted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.adjacency.len();
        (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).filter(|&(x, y)| self.adjacency[x][y]).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn loops(&self) -> Vec<usize> {
        (0..self.adjacency.len()).filter(|&x| self.adjacency[x][x]).collect()
    }

    /// Graphviz rendering; vertices are labelled `index (order)`, isolated
    /// vertices are filled.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let name: String = self.group.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
        writeln!(out, "graph non_f_{name} {{").unwrap();
        writeln!(out, "  label=\"non-F graph of {} for {}\";", self.group, self.spec.replace('"', "'")).unwrap();
        for (v, o) in self.element_orders.iter().enumerate() {
            let style =
                if self.isolated.binary_search(&v).is_ok() { ", style=filled, fillcolor=lightgray" } else { "" };
            writeln!(out, "  {v} [label=\"{v} ({o})\"{style}];").unwrap();
        }
        for x in self.loops() {
            writeln!(out, "  {x} -- {x};").unwrap();
        }
        for (x, y) in self.edges() {
            writeln!(out, "  {x} -- {y};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

pub fn non_f_graph(g: &FiniteGroup, spec: &ClassSpec) -> Result<NonFGraph> {
    non_f_graph_with(g, spec, &Limits::default())
}

pub fn non_f_graph_with(g: &FiniteGroup, spec: &ClassSpec, limits: &Limits) -> Result<NonFGraph> {
    let ok = pair_matrix(g, spec, limits)?;
    let adjacency: Vec<Vec<bool>> = ok.iter().map(|row| row.iter().map(|&b| !b).collect()).collect();
    let isolated = (0..g.order()).filter(|&x| adjacency[x].iter().all(|&b| !b)).collect();
    Ok(NonFGraph {
        group: g.name().to_string(),
        spec: spec.to_string(),
        element_orders: g.element_orders().to_vec(),
        adjacency,
        isolated,
    })
}

/// One group's line in a regularity report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityRow {
    pub group: String,
    pub spec: String,
    pub int: Vec<usize>,
    pub iset: Vec<usize>,
    pub equal: bool,
    /// Least element in exactly one of the two sets.
    pub witness: Option<usize>,
    pub soluble: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RegularitySummary {
    pub groups: usize,
    pub equal: usize,
    pub unequal: usize,
    /// Unequal rows on soluble groups, for specs where equality is a theorem.
    pub violations: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub spec: String,
    pub theorem_backed: bool,
    pub rows: Vec<RegularityRow>,
    pub summary: RegularitySummary,
}

impl RegularityReport {
    pub fn violations(&self) -> impl Iterator<Item = &RegularityRow> {
        let backed = self.theorem_backed;
        self.rows.iter().filter(move |r| backed && r.soluble && !r.equal)
    }
}

/// Specs for which `Int_𝔉 = ℐ_𝔉` on soluble groups is a theorem: `v𝔘`,
/// soluble `p`-nilpotent groups, Sylow tower classes, the intersections
/// `⋂_p 𝔖_{p'}𝔖(f(p))`, `v*ℌ` for hereditary classes `ℌ` of soluble groups,
/// and the nilpotent and soluble classes themselves.
pub fn is_theorem_backed(spec: &ClassSpec) -> bool {
    use ClassSpec::*;
    let soluble = |s: &ClassSpec| matches!(s, Named(NamedClass::Soluble));
    match spec {
        Named(NamedClass::VU | NamedClass::SylowTower(_) | NamedClass::Nilpotent | NamedClass::Soluble) => true,
        RegularByFunction(_) => true,
        VStar(h) => h.is_hereditary() && h.is_soluble_class(),
        Intersection(parts) => match parts.as_slice() {
            [a, Named(NamedClass::PNilpotent(_) | NamedClass::SylowTower(_))]
            | [Named(NamedClass::PNilpotent(_) | NamedClass::SylowTower(_)), a] => soluble(a),
            _ => false,
        },
        _ => false,
    }
}

pub fn regularity_row(g: &FiniteGroup, spec: &ClassSpec, limits: &Limits) -> Result<RegularityRow> {
    let int = int_set_with(g, spec, limits)?;
    let iset = i_set_with(g, spec, limits)?;
    let witness = (0..g.order()).find(|x| int.binary_search(x).is_ok() != iset.binary_search(x).is_ok());
    Ok(RegularityRow {
        group: g.name().to_string(),
        spec: spec.to_string(),
        equal: witness.is_none(),
        int,
        iset,
        witness,
        soluble: is_soluble(g),
    })
}

/// Compares `Int_𝔉` and `ℐ_𝔉` on every group, in parallel; rows are sorted
/// by group name.
pub fn regularity_sweep(groups: &[FiniteGroup], spec: &ClassSpec) -> Result<RegularityReport> {
    regularity_sweep_with(groups, spec, &Limits::default())
}

pub fn regularity_sweep_with(groups: &[FiniteGroup], spec: &ClassSpec, limits: &Limits) -> Result<RegularityReport> {
    let mut rows = groups.par_iter().map(|g| regularity_row(g, spec, limits)).collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.group.cmp(&b.group));
    let theorem_backed = is_theorem_backed(spec);
    let equal = rows.iter().filter(|r| r.equal).count();
    let violations = rows.iter().filter(|r| theorem_backed && r.soluble && !r.equal).count();
    Ok(RegularityReport {
        spec: spec.to_string(),
        theorem_backed,
        summary: RegularitySummary { groups: rows.len(), equal, unequal: rows.len() - equal, violations },
        rows,
    })
}
