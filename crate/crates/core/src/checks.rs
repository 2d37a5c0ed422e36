//! Catalog-wide property sweeps: saturation, formation laws, `v*` idempotence.

use rayon::prelude::*;
use serde::Serialize;

use crate::classes::{is_member_with, ClassSpec, Limits, NamedClass};
use crate::error::Result;
use crate::group::{is_soluble, normal_subgroups, quotient_unchecked, FiniteGroup};
use crate::structure::{all_subgroups_with_budget, frattini, minimal_normal_subgroups};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyRow {
    pub group: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub mode: String,
    pub spec: String,
    /// Whether a failing row contradicts a theorem (or a declared closure flag).
    pub theorem_backed: bool,
    pub rows: Vec<PropertyRow>,
    pub failures: usize,
}

impl PropertyReport {
    pub fn violations(&self) -> usize {
        if self.theorem_backed {
            self.failures
        } else {
            0
        }
    }
}

fn sweep(
    mode: &str,
    spec: &ClassSpec,
    theorem_backed: bool,
    groups: &[FiniteGroup],
    check: impl Fn(&FiniteGroup) -> Result<(bool, String)> + Sync,
) -> Result<PropertyReport> {
    let mut rows = groups
        .par_iter()
        .map(|g| {
            let (holds, detail) = check(g)?;
            Ok(PropertyRow { group: g.name().to_string(), holds, detail })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.group.cmp(&b.group));
    let failures = rows.iter().filter(|r| !r.holds).count();
    Ok(PropertyReport { mode: mode.to_string(), spec: spec.to_string(), theorem_backed, rows, failures })
}

/// Classes known to be saturated: local formations, the intersections
/// `⋂_p 𝔖_{p'}𝔖(f(p))`, `v*ℌ` for hereditary `ℌ` of soluble groups, and the
/// classical saturated named classes.
pub fn is_known_saturated(spec: &ClassSpec) -> bool {
    match spec {
        ClassSpec::Named(n) => matches!(
            n,
            NamedClass::Nilpotent
                | NamedClass::Soluble
                | NamedClass::Supersoluble
                | NamedClass::PNilpotent(_)
                | NamedClass::SylowTower(_)
                | NamedClass::VU
                | NamedClass::All
        ),
        ClassSpec::Local(_) | ClassSpec::RegularByFunction(_) => true,
        ClassSpec::VStar(h) => h.is_hereditary() && h.is_soluble_class(),
        ClassSpec::Intersection(parts) => parts.iter().all(is_known_saturated),
        _ => false,
    }
}

/// `G/Φ(G) ∈ 𝔉 ⇒ G ∈ 𝔉` on every group.
pub fn saturation_sweep(groups: &[FiniteGroup], spec: &ClassSpec, limits: &Limits) -> Result<PropertyReport> {
    sweep("saturation", spec, is_known_saturated(spec), groups, |g| {
        let phi = frattini(g)?;
        let top = is_member_with(&quotient_unchecked(g, &phi).0, spec, limits)?;
        let member = is_member_with(g, spec, limits)?;
        Ok((!top || member, format!("|Phi|={} G/Phi in F: {top}, G in F: {member}", phi.len())))
    })
}

/// Quotient closure, subdirect closure over pairs of minimal normal
/// subgroups, and (for hereditary specs) closure under maximal subgroups.
pub fn formation_law_sweep(groups: &[FiniteGroup], spec: &ClassSpec, limits: &Limits) -> Result<PropertyReport> {
    let backed = spec.is_formation();
    let hereditary = spec.is_hereditary();
    sweep("formation-laws", spec, backed, groups, |g| {
        let member = is_member_with(g, spec, limits)?;
        if member {
            for n in normal_subgroups(g) {
                if !n.is_trivial() && !is_member_with(&quotient_unchecked(g, &n).0, spec, limits)? {
                    return Ok((false, format!("quotient by normal subgroup of order {} leaves the class", n.len())));
                }
            }
            if hereditary {
                let lattice = all_subgroups_with_budget(g, limits.subgroup_budget)?;
                for (i, h) in lattice.subgroups().iter().enumerate() {
                    if lattice.is_maximal(i) && !crate::classes::subgroup_is_member(g, h, spec, limits)? {
                        return Ok((false, format!("maximal subgroup of order {} leaves the class", h.len())));
                    }
                }
            }
        } else {
            let minimal = minimal_normal_subgroups(g);
            for (i, n1) in minimal.iter().enumerate() {
                for n2 in &minimal[i + 1..] {
                    let q1 = is_member_with(&quotient_unchecked(g, n1).0, spec, limits)?;
                    if q1 && is_member_with(&quotient_unchecked(g, n2).0, spec, limits)? {
                        return Ok((
                            false,
                            format!("G/N1 and G/N2 in F for minimal normals of orders {} and {}", n1.len(), n2.len()),
                        ));
                    }
                }
            }
        }
        Ok((true, format!("G in F: {member}")))
    })
}

/// `G ∈ v*(v*ℌ) ⇔ G ∈ v*ℌ` on every group.
pub fn vstar_idempotence_sweep(groups: &[FiniteGroup], spec: &ClassSpec, limits: &Limits) -> Result<PropertyReport> {
    let once = ClassSpec::vstar(spec.clone());
    let twice = ClassSpec::vstar(once.clone());
    sweep("vstar-idempotence", spec, spec.is_hereditary(), groups, |g| {
        let a = is_member_with(g, &once, limits)?;
        let b = is_member_with(g, &twice, limits)?;
        Ok((a == b, format!("v*H: {a}, v*v*H: {b}")))
    })
}

/// `G ∈ v𝔘 ⇔ G ∈ v*𝔘` on every group.
pub fn v_equivalence_sweep(groups: &[FiniteGroup], limits: &Limits) -> Result<PropertyReport> {
    let spec = ClassSpec::Named(NamedClass::VU);
    let vstar_u = ClassSpec::vstar(ClassSpec::supersoluble());
    sweep("v-equivalence", &spec, true, groups, |g| {
        let a = is_member_with(g, &spec, limits)?;
        let b = is_member_with(g, &vstar_u, limits)?;
        Ok((a == b, format!("vU: {a}, v*U: {b}, soluble: {}", is_soluble(g))))
    })
}
