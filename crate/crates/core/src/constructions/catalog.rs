//! A curated, deduplicated list of small groups, and its on-disk form.

use std::collections::{BTreeSet, VecDeque};
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    abelian, affine_plane_extension, alternating, build_e, cyclic, cyclic_extension, dicyclic, dihedral,
    elementary_abelian, gl23, sl23, symmetric,
};
use crate::classes::{is_nilpotent, is_schmidt, is_supersoluble};
use crate::error::{Error, Result};
use crate::group::{centralizer, direct_product, is_isomorphic, is_soluble, quotient, FiniteGroup};
use crate::structure::minimal_normal_subgroups;

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogConfig {
    pub max_order: usize,
    pub symmetric_5: bool,
    pub e_groups: bool,
    pub direct_products: bool,
    /// Largest order considered for direct products of catalog entries.
    pub product_cap: usize,
}

impl Default for CatalogConfig {
    fn default() -> Self {
        CatalogConfig { max_order: 120, symmetric_5: true, e_groups: true, direct_products: true, product_cap: 72 }
    }
}

impl CatalogConfig {
    pub fn with_max_order(max_order: usize) -> Self {
        CatalogConfig { max_order, ..CatalogConfig::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub group: FiniteGroup,
    pub tags: BTreeSet<String>,
    pub provenance: String,
}

struct Candidate {
    order: usize,
    provenance: String,
    build: Box<dyn Fn() -> Result<FiniteGroup> + Send + Sync>,
}

fn candidate(
    order: usize,
    provenance: impl Into<String>,
    build: impl Fn() -> Result<FiniteGroup> + Send + Sync + 'static,
) -> Candidate {
    Candidate { order, provenance: provenance.into(), build: Box::new(build) }
}

/// Abelian invariant lists `d_1 | d_2 | ... | d_k` with `k >= 2`, `d_1 > 1`, product `n`.
fn noncyclic_invariants(n: usize) -> Vec<Vec<usize>> {
    fn extend(rest: usize, last: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            if acc.len() >= 2 {
                out.push(acc.clone());
            }
            return;
        }
        for d in 2..=rest {
            if rest % d == 0 && d % last == 0 {
                acc.push(d);
                extend(rest / d, d, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(n, 1, &mut Vec::new(), &mut out);
    out
}

/// The automorphism of `g` sending `gens[i]` to `images[i]`, if there is one.
fn automorphism_from_images(g: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    map[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let fy = g.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push_back(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    let mut hit = vec![false; g.order()];
    for &v in &map {
        if v == usize::MAX || std::mem::replace(&mut hit[v], true) {
            return None;
        }
    }
    Some(map)
}

fn v4_by_z9() -> Result<FiniteGroup> {
    let v4 = elementary_abelian(2, 2)?;
    let (a, b) = (v4.generators()[0], v4.generators()[1]);
    let aut = automorphism_from_images(&v4, &[a, b], &[b, v4.mul(a, b)]).expect("order-3 automorphism of V4");
    Ok(cyclic_extension(&v4, 9, &aut)?.with_name("Z2^2:Z9"))
}

fn power_map_extension(n: usize, k: usize, m: usize, name: &str) -> Result<FiniteGroup> {
    let zn = cyclic(n)?;
    let aut: Vec<usize> = zn.elements().map(|x| zn.pow(x, k)).collect();
    Ok(cyclic_extension(&zn, m, &aut)?.with_name(name))
}

fn base_candidates(config: &CatalogConfig) -> Vec<Candidate> {
    let mut c = Vec::new();
    for n in 1..=30 {
        c.push(candidate(n, format!("cyclic({n})"), move || cyclic(n)));
    }
    for n in 4..=32 {
        for inv in noncyclic_invariants(n) {
            let prov = format!("abelian({inv:?})");
            c.push(candidate(n, prov, move || abelian(&inv)));
        }
    }
    c.push(candidate(6, "symmetric(3)", || symmetric(3)));
    c.push(candidate(12, "alternating(4)", || alternating(4)));
    c.push(candidate(24, "symmetric(4)", || symmetric(4)));
    c.push(candidate(60, "alternating(5)", || alternating(5)));
    if config.symmetric_5 {
        c.push(candidate(120, "symmetric(5)", || symmetric(5)));
    }
    c.push(candidate(8, "dicyclic(2)", || dicyclic(2)));
    c.push(candidate(24, "sl23()", sl23));
    c.push(candidate(48, "gl23()", gl23));
    for n in 3..=12 {
        c.push(candidate(2 * n, format!("dihedral({n})"), move || dihedral(n)));
    }
    for n in [3, 4, 5, 6] {
        c.push(candidate(4 * n, format!("dicyclic({n})"), move || dicyclic(n)));
    }
    if config.e_groups {
        for (n, p, order) in [
            (2u64, 3u64, 6usize),
            (3, 2, 12),
            (4, 3, 36),
            (2, 5, 10),
            (4, 5, 20),
            (3, 7, 21),
            (6, 7, 42),
            (8, 3, 72),
            (5, 2, 80),
            (7, 2, 56),
            (3, 5, 75),
            (5, 11, 55),
            (2, 7, 14),
        ] {
            c.push(candidate(order, format!("build_e({n},{p})"), move || build_e(n, p)));
        }
    }
    c.push(candidate(36, "cyclic_extension(Z2^2, 9)", v4_by_z9));
    c.push(candidate(24, "cyclic_extension(Z3, 8, inversion)", || power_map_extension(3, 2, 8, "Z3:Z8")));
    c.push(candidate(63, "cyclic_extension(Z7, 9, x^2)", || power_map_extension(7, 2, 9, "Z7:Z9")));
    c.push(candidate(40, "cyclic_extension(Z5, 8, x^2)", || power_map_extension(5, 2, 8, "Z5:Z8")));
    c.push(candidate(72, "affine_plane_extension(3, Q8)", || {
        affine_plane_extension("Z3^2:Q8", 3, &[[0, 2, 1, 0], [1, 1, 1, 2]])
    }));
    c.push(candidate(72, "affine_plane_extension(3, D8)", || {
        affine_plane_extension("Z3^2:D8", 3, &[[0, 1, 1, 0], [1, 0, 0, 2]])
    }));
    c
}

/// Factors combined pairwise into direct products.
type Factor = (usize, &'static str, fn() -> Result<FiniteGroup>);

fn product_factors() -> Vec<Factor> {
    vec![
        (2, "Z2", || cyclic(2)),
        (3, "Z3", || cyclic(3)),
        (4, "Z4", || cyclic(4)),
        (5, "Z5", || cyclic(5)),
        (6, "S3", || symmetric(3)),
        (8, "D8", || dihedral(4)),
        (8, "Q8", || dicyclic(2)),
        (10, "D10", || dihedral(5)),
        (12, "A4", || alternating(4)),
        (12, "Dic12", || dicyclic(3)),
        (20, "E(4|5)", || build_e(4, 5)),
        (21, "E(3|7)", || build_e(3, 7)),
        (24, "S4", || symmetric(4)),
        (24, "SL(2,3)", sl23),
    ]
}

fn product_candidates(config: &CatalogConfig) -> Vec<Candidate> {
    let factors = product_factors();
    let mut c = Vec::new();
    for (i, &(oa, na, fa)) in factors.iter().enumerate() {
        for &(ob, nb, fb) in &factors[i..] {
            // at least one nonabelian factor; abelian products are listed already
            if oa * ob > config.product_cap.min(config.max_order) || (oa < 6 && ob < 6) {
                continue;
            }
            c.push(candidate(oa * ob, format!("direct_product({nb},{na})"), move || {
                Ok(direct_product(&fb()?, &fa()?))
            }));
        }
    }
    c
}

/// Tags derived from computed predicates.
pub fn computed_tags(g: &FiniteGroup) -> Result<BTreeSet<String>> {
    let mut tags = BTreeSet::new();
    let mut add = |t: &str| {
        tags.insert(t.to_string());
    };
    if g.order() == 1 {
        add("trivial");
    }
    if g.element_orders().iter().any(|&o| o == g.order()) {
        add("cyclic");
    }
    if g.is_abelian() {
        add("abelian");
    }
    if is_nilpotent(g) {
        add("nilpotent");
    }
    if is_supersoluble(g) {
        add("supersoluble");
    }
    add(if is_soluble(g) { "soluble" } else { "nonsoluble" });
    if is_schmidt(g)? {
        add("schmidt");
    }
    Ok(tags)
}

/// `G` has a unique minimal normal subgroup `A`, self-centralizing, with `G/A` cyclic.
pub fn has_e_shape(g: &FiniteGroup) -> bool {
    let minimal = minimal_normal_subgroups(g);
    let [a] = minimal.as_slice() else { return false };
    if centralizer(g, a.elems()) != *a {
        return false;
    }
    let Ok((q, _)) = quotient(g, a) else { return false };
    q.element_orders().iter().any(|&o| o == q.order())
}

fn entry_tags(g: &FiniteGroup, provenance: &str) -> Result<BTreeSet<String>> {
    let mut tags = computed_tags(g)?;
    if provenance.starts_with("build_e(") {
        tags.insert("E(n|p)".to_string());
    }
    Ok(tags)
}

/// Builds the catalog: candidates are constructed in parallel, then
/// deduplicated up to isomorphism in a fixed priority order (earlier builders
/// win), and finally sorted by `(order, name)`.
pub fn build_catalog(config: &CatalogConfig) -> Result<Vec<CatalogEntry>> {
    let mut candidates = base_candidates(config);
    if config.direct_products {
        candidates.extend(product_candidates(config));
    }
    candidates.retain(|c| c.order <= config.max_order);
    let built =
        candidates.par_iter().map(|c| (c.build)().map(|g| (g, c.provenance.clone()))).collect::<Result<Vec<_>>>()?;

    let mut kept: Vec<(FiniteGroup, String)> = Vec::new();
    for (g, prov) in built {
        if !kept.iter().any(|(k, _)| k.order() == g.order() && is_isomorphic(k, &g).is_some()) {
            kept.push((g, prov));
        }
    }
    let mut entries = kept
        .into_par_iter()
        .map(|(group, provenance)| {
            let tags = entry_tags(&group, &provenance)?;
            Ok(CatalogEntry { group, tags, provenance })
        })
        .collect::<Result<Vec<_>>>()?;
    entries.sort_by(|a, b| (a.group.order(), a.group.name()).cmp(&(b.group.order(), b.group.name())));
    Ok(entries)
}

/// Disagreements between stored tags and recomputed predicates.
pub fn lint(entries: &[CatalogEntry]) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    for e in entries {
        let mut expected = computed_tags(&e.group)?;
        if e.tags.contains("E(n|p)") {
            if has_e_shape(&e.group) {
                expected.insert("E(n|p)".to_string());
            } else {
                problems.push(format!("{}: tagged E(n|p) but lacks the shape", e.group.name()));
            }
        }
        if expected != e.tags {
            problems.push(format!("{}: tags {:?}, computed {:?}", e.group.name(), e.tags, expected));
        }
    }
    let mut names = BTreeSet::new();
    for e in entries {
        if !names.insert(e.group.name()) {
            problems.push(format!("duplicate name {}", e.group.name()));
        }
    }
    Ok(problems)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub file: String,
    pub name: String,
    pub order: usize,
    pub tags: Vec<String>,
    pub provenance: String,
}

fn file_name(name: &str) -> String {
    let stem: String = name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect();
    format!("groups/{stem}.json")
}

pub fn manifest(entries: &[CatalogEntry]) -> Vec<ManifestEntry> {
    let mut used = BTreeSet::new();
    entries
        .iter()
        .map(|e| {
            let mut file = file_name(e.group.name());
            let mut k = 2;
            while !used.insert(file.clone()) {
                file = file_name(&format!("{}-{k}", e.group.name()));
                k += 1;
            }
            ManifestEntry {
                file,
                name: e.group.name().to_string(),
                order: e.group.order(),
                tags: e.tags.iter().cloned().collect(),
                provenance: e.provenance.clone(),
            }
        })
        .collect()
}

/// Writes `manifest.json` and one Cayley-table file per group under `dir`.
pub fn write_catalog(dir: &Path, entries: &[CatalogEntry]) -> Result<PathBuf> {
    fs::create_dir_all(dir.join("groups"))?;
    let listed = manifest(entries);
    for (m, e) in listed.iter().zip(entries) {
        fs::write(dir.join(&m.file), e.group.to_json())?;
    }
    let path = dir.join(MANIFEST_FILE);
    fs::write(&path, serde_json::to_string_pretty(&listed)? + "\n")?;
    Ok(path)
}

pub fn read_manifest(path: &Path) -> Result<Vec<ManifestEntry>> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Loads a catalog from a directory or a manifest path, validating every table.
pub fn load_catalog(path: &Path) -> Result<Vec<CatalogEntry>> {
    let manifest_path = if path.is_dir() { path.join(MANIFEST_FILE) } else { path.to_path_buf() };
    let dir = manifest_path.parent().unwrap_or(Path::new("."));
    read_manifest(&manifest_path)?
        .into_iter()
        .map(|m| {
            let group = FiniteGroup::from_json(&fs::read_to_string(dir.join(&m.file))?)?;
            if group.name() != m.name || group.order() != m.order {
                return Err(Error::Json(format!("{} does not match its manifest entry", m.file)));
            }
            Ok(CatalogEntry { group, tags: m.tags.into_iter().collect(), provenance: m.provenance })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants() {
        assert_eq!(noncyclic_invariants(8), vec![vec![2, 2, 2], vec![2, 4]]);
        assert!(noncyclic_invariants(6).is_empty());
        assert_eq!(noncyclic_invariants(36), vec![vec![2, 18], vec![3, 12], vec![6, 6]]);
    }

    #[test]
    fn small_catalogs() {
        let one = build_catalog(&CatalogConfig::with_max_order(1)).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one[0].tags.contains("trivial"));
        let c24 = build_catalog(&CatalogConfig::with_max_order(24)).unwrap();
        let a4 = alternating(4).unwrap();
        assert_eq!(c24.iter().filter(|e| is_isomorphic(&e.group, &a4).is_some()).count(), 1);
        // the order-8 groups: Z8, Z2xZ4, Z2^3, D8, Q8
        assert_eq!(c24.iter().filter(|e| e.group.order() == 8).count(), 5);
        assert!(lint(&c24).unwrap().is_empty());
        for w in c24.windows(2) {
            assert!((w[0].group.order(), w[0].group.name()) < (w[1].group.order(), w[1].group.name()));
        }
    }

    #[test]
    fn automorphisms_from_images() {
        let z7 = cyclic(7).unwrap();
        assert!(automorphism_from_images(&z7, &[1], &[2]).is_some());
        assert!(automorphism_from_images(&z7, &[1], &[0]).is_none());
        assert_eq!(v4_by_z9().unwrap().order(), 36);
    }
}
