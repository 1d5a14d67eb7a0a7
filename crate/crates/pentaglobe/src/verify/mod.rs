//! The full verification suite: every published count and table is recomputed
//! from scratch and compared against the pinned values in `expected.json`.
//!
//! Two published data points are defective in the source (a dozen propagation
//! table cells and one double-counted core-part orbit); for those the check
//! passes only if the disagreement is certified at runtime by an independent
//! re-enumeration, and the certified corrections are reported. Everything
//! else must match exactly.

use crate::earthmap::{
    build_family_graph, classify_families, closed_from_cycles, cycle_supported, enumerate_closed,
    enumerate_parts, enumerate_timezone_tilings, families_of, specialize, Arrow, ArrowKind,
    Family, FamilyGraph,
};
use crate::mesh::{
    build_earth_map, build_neighborhood_fragment, extract_neighborhood, min_timezones,
    propagation_host, validate,
};
use crate::neighborhood::{
    classify_neighborhoods, propagation, InteriorPlacement, PropagationCell, PropagationTable,
};
use crate::patterns::{tile_matches, EdgeLabel, EdgePattern};
use crate::search::{canonicalize, naive_enumerate, orbit_reduce, Labeling};
use serde::Deserialize;
use serde_json::Value;
use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub reference: String,
    pub detail: String,
    pub pass: bool,
    pub millis: u128,
}

fn expected() -> &'static Value {
    static DATA: std::sync::OnceLock<Value> = std::sync::OnceLock::new();
    DATA.get_or_init(|| {
        serde_json::from_str(include_str!("expected.json")).expect("expected.json parses")
    })
}

struct Check {
    name: &'static str,
    reference: &'static str,
    run: fn(u32) -> Result<String, String>,
}

const CHECKS: &[Check] = &[
    Check {
        name: "neighborhood_counts",
        reference: "neighborhood classification",
        run: check_neighborhood_counts,
    },
    Check {
        name: "propagation_tables",
        reference: "propagation tables",
        run: check_propagation_tables,
    },
    Check {
        name: "a3bc_impossibility",
        reference: "no a3bc earth map tilings",
        run: check_a3bc_impossibility,
    },
    Check {
        name: "a2b2c_families",
        reference: "a2b2c classification",
        run: check_a2b2c_families,
    },
    Check {
        name: "a3b2_families",
        reference: "a3b2 classification",
        run: check_a3b2_families,
    },
    Check {
        name: "a4b_families",
        reference: "a4b classification",
        run: check_a4b_families,
    },
    Check {
        name: "a4b_raw_counts",
        reference: "timezone and part tallies",
        run: check_a4b_raw_counts,
    },
    Check {
        name: "core_orbit_bookkeeping",
        reference: "core-part multiplicities",
        run: check_core_orbits,
    },
    Check {
        name: "oracle_equivalence",
        reference: "closed enumeration vs family-graph cycles",
        run: check_oracle_equivalence,
    },
    Check {
        name: "structural_invariants",
        reference: "degree census, Euler count, poles",
        run: check_structural_invariants,
    },
    Check {
        name: "search_oracle",
        reference: "backtracking vs naive filter",
        run: check_search_oracle,
    },
    Check {
        name: "d5_a3b2_type_iii_cores",
        reference: "type I/II exclusion at distance 5",
        run: check_d5_type_iii,
    },
];

/// Runs every check, in parallel when a rayon pool is active; report order is
/// fixed regardless of completion order.
pub fn run_all(max_n: u32) -> Vec<CheckResult> {
    use rayon::prelude::*;
    CHECKS
        .par_iter()
        .map(|check| {
            let started = Instant::now();
            let outcome = (check.run)(max_n);
            let (pass, detail) = match outcome {
                Ok(detail) => (true, detail),
                Err(detail) => (false, detail),
            };
            CheckResult {
                name: check.name.to_string(),
                reference: check.reference.to_string(),
                detail,
                pass,
                millis: started.elapsed().as_millis(),
            }
        })
        .collect()
}

/// Runs a single named check (used by tests).
pub fn run_check(name: &str, max_n: u32) -> Option<CheckResult> {
    let check = CHECKS.iter().find(|c| c.name == name)?;
    let started = Instant::now();
    let outcome = (check.run)(max_n);
    let (pass, detail) = match outcome {
        Ok(detail) => (true, detail),
        Err(detail) => (false, detail),
    };
    Some(CheckResult {
        name: check.name.to_string(),
        reference: check.reference.to_string(),
        detail,
        pass,
        millis: started.elapsed().as_millis(),
    })
}

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

fn fail(msg: impl Into<String>) -> Result<String, String> {
    Err(msg.into())
}

fn check_neighborhood_counts(_max_n: u32) -> Result<String, String> {
    let want: BTreeMap<String, usize> =
        serde_json::from_value(expected()["neighborhood_counts"].clone()).unwrap();
    for pattern in EdgePattern::ALL {
        let got = classify_neighborhoods(pattern).len();
        if got != want[pattern.name()] {
            return fail(format!(
                "{pattern}: {got} types, published {}",
                want[pattern.name()]
            ));
        }
    }
    // a4b sub-check. The published account tallies the cases as 1+3+3+11
    // and reports seven forced tilings in the residual class; its layout
    // files one sideway tiling carrying a forced vertex among the residual
    // eleven, so structurally the boundary-only class has ten tilings of
    // which exactly seven are forced. Both true statements are asserted.
    #[derive(Deserialize)]
    struct Partition {
        two_spokes: usize,
        central: usize,
        sideway_clean: usize,
        residual: usize,
        boundary_only: usize,
        boundary_only_forced: usize,
        forced_total: usize,
    }
    let want: Partition = serde_json::from_value(expected()["a4b_case_partition"].clone()).unwrap();
    let types = classify_neighborhoods(EdgePattern::A4B);
    let count = |p: InteriorPlacement, forced: Option<bool>| {
        types
            .iter()
            .filter(|t| {
                t.placement == Some(p) && (forced != Some(t.forced.is_empty()))
            })
            .count()
    };
    let two = count(InteriorPlacement::TwoSpokes, None);
    let central = count(InteriorPlacement::CentralSpoke, None);
    let sideway_clean = count(InteriorPlacement::SidewaySpoke, Some(false));
    let sideway_forced = count(InteriorPlacement::SidewaySpoke, Some(true));
    let boundary = count(InteriorPlacement::BoundaryOnly, None);
    let boundary_forced = count(InteriorPlacement::BoundaryOnly, Some(true));
    let forced_total = types.iter().filter(|t| !t.forced.is_empty()).count();
    let residual = boundary + sideway_forced;
    if (two, central, sideway_clean, residual) != (want.two_spokes, want.central, want.sideway_clean, want.residual)
    {
        return fail(format!(
            "a4b case layout {two}+{central}+{sideway_clean}+{residual}, published 1+3+3+11"
        ));
    }
    if boundary != want.boundary_only || boundary_forced != want.boundary_only_forced {
        return fail(format!(
            "a4b boundary-only class: {boundary_forced} forced of {boundary}, want {} of {}",
            want.boundary_only_forced, want.boundary_only
        ));
    }
    if forced_total != want.forced_total {
        return fail(format!("a4b forced total {forced_total} != {}", want.forced_total));
    }
    Ok("counts 1/1/2/3/18; a4b layout 1+3+3+11, forced 7 of the 10 boundary-only (+1 sideway)".to_string())
}

fn published_table(key: &str) -> Vec<(String, [PropagationCell; 5])> {
    let table = expected()[key].as_object().unwrap();
    let mut rows: Vec<(String, [PropagationCell; 5])> = table
        .iter()
        .map(|(label, cells)| {
            let row: [PropagationCell; 5] = std::array::from_fn(|i| {
                let cell = &cells.as_array().unwrap()[i];
                if cell.as_str() == Some("x") {
                    PropagationCell::Blocked
                } else {
                    PropagationCell::Types(
                        cell.as_array()
                            .unwrap()
                            .iter()
                            .map(|v| v.as_str().unwrap().to_string())
                            .collect(),
                    )
                }
            });
            (label.clone(), row)
        })
        .collect();
    let order = |label: &str| label.parse::<usize>().unwrap_or(0);
    rows.sort_by_key(|(label, _)| (order(label), label.clone()));
    rows
}

/// Recomputes one propagation cell with the naive reference enumerator; used
/// to certify disagreements with the published table.
fn recompute_cell_naive(pattern: EdgePattern, table: &PropagationTable, row: usize, col: usize) -> PropagationCell {
    let frame = build_neighborhood_fragment();
    let types = classify_neighborhoods(pattern);
    let neighbor = match pattern {
        EdgePattern::A4B => (col + 1) % 5,
        _ => col,
    };
    let host = propagation_host(neighbor);
    let mut seed = Labeling::empty(&host.fragment, pattern);
    for e in 0..20 {
        seed.labels[e] = types[row].as_drawn.labels[e];
    }
    let completions = naive_enumerate(&host.fragment, pattern, &seed);
    let mut found: Vec<String> = Vec::new();
    for c in &completions {
        let vec = extract_neighborhood(&host.fragment, &c.labels, host.subject).unwrap();
        let lab = Labeling {
            pattern,
            labels: vec.into_iter().map(Some).collect(),
        };
        let key = canonicalize(&lab, &frame.symmetry).key();
        let label = types
            .iter()
            .find(|t| t.canonical.key() == key)
            .unwrap()
            .published_label
            .clone();
        if !found.contains(&label) {
            found.push(label);
        }
    }
    if found.is_empty() {
        PropagationCell::Blocked
    } else {
        found.sort_by_key(|l| table.types.iter().position(|o| *o == *l).unwrap());
        PropagationCell::Types(found)
    }
}

/// True if `s` can appear in `row`'s cells: the propagation relation is
/// symmetric (the fused host contains both neighborhoods), so a published
/// cell claiming S as a neighbor of T while T appears nowhere in S's row
/// contradicts the published table itself.
fn row_mentions(row: &[PropagationCell; 5], t: &str) -> bool {
    row.iter().any(|cell| match cell {
        PropagationCell::Blocked => false,
        PropagationCell::Types(v) => v.iter().any(|x| x == t),
    })
}

fn check_propagation_tables(_max_n: u32) -> Result<String, String> {
    // Exact tables for a3bc, a3b2 and a2b2c.
    let computed = propagation(EdgePattern::A3BC);
    let published = published_table("a3bc_propagation");
    for ((label, want), (got_label, got)) in published.iter().zip(computed.types.iter().zip(computed.rows.iter())) {
        if label != got_label || want != got {
            return fail(format!("a3bc row {label} disagrees with the published table"));
        }
    }
    let computed = propagation(EdgePattern::A3B2);
    let published = published_table("a3b2_propagation");
    let roman = |label: &str| match label {
        "I" => 1,
        "II" => 2,
        _ => 3,
    };
    let mut published = published;
    published.sort_by_key(|(label, _)| roman(label));
    for ((label, want), (got_label, got)) in published.iter().zip(computed.types.iter().zip(computed.rows.iter())) {
        if label != got_label || want != got {
            return fail(format!("a3b2 row {label} disagrees with the published table"));
        }
    }
    let computed = propagation(EdgePattern::A2B2C);
    let unique = PropagationCell::Types(vec!["1".into()]);
    if computed.rows[0].iter().any(|cell| *cell != unique) {
        return fail("a2b2c propagation is not the unique type at all five neighbors");
    }

    // a4b against the published 90-cell table, with certified errata: a
    // disagreeing published cell is accepted only when (a) it is one of the
    // pinned erratum cells, (b) the independent naive enumerator reproduces
    // the computed value, and (c) the published value violates the published
    // table's own symmetry or the re-enumeration.
    let computed = propagation(EdgePattern::A4B);
    let published = published_table("a4b_propagation");
    let errata: BTreeSet<(String, usize)> = expected()["a4b_propagation_errata_cells"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| {
            (
                v[0].as_str().unwrap().to_string(),
                v[1].as_u64().unwrap() as usize,
            )
        })
        .collect();
    let mut matched = 0;
    let mut certified = Vec::new();
    for (r, ((label, want), got)) in published.iter().zip(computed.rows.iter()).enumerate() {
        for col in 0..5 {
            if want[col] == got[col] {
                matched += 1;
                continue;
            }
            let cell_id = (label.clone(), col + 1);
            if !errata.contains(&cell_id) {
                return fail(format!(
                    "a4b row {label} P{}: computed {:?}, published {:?}, not a pinned erratum",
                    col + 1,
                    got[col],
                    want[col]
                ));
            }
            let redo = recompute_cell_naive(EdgePattern::A4B, &computed, r, col);
            if redo != got[col] {
                return fail(format!(
                    "a4b row {label} P{}: naive re-enumeration disagrees with the engine",
                    col + 1
                ));
            }
            // Reciprocity audit of the published value where applicable.
            let mut baseless = Vec::new();
            if let PropagationCell::Types(v) = &want[col] {
                for s in v {
                    let s_row = &published.iter().find(|(l, _)| l == s).unwrap().1;
                    if !row_mentions(s_row, label) {
                        baseless.push(s.clone());
                    }
                }
            }
            certified.push(format!(
                "{}P{}{}",
                label,
                col + 1,
                if baseless.is_empty() {
                    String::new()
                } else {
                    format!("(asym:{})", baseless.join(","))
                }
            ));
        }
    }
    if matched + certified.len() != 90 {
        return fail("a4b cell accounting does not cover the table");
    }
    if certified.len() != errata.len() {
        return fail(format!(
            "a4b: {} certified errata, {} pinned",
            certified.len(),
            errata.len()
        ));
    }
    Ok(format!(
        "a3bc, a3b2, a2b2c tables exact; a4b {matched}/90 cells match, {} published cells certified defective by independent re-enumeration: {}",
        certified.len(),
        certified.join(" ")
    ))
}

fn check_a3bc_impossibility(max_n: u32) -> Result<String, String> {
    for d in 1..=4u8 {
        let tz = enumerate_timezone_tilings(d, EdgePattern::A3BC).unwrap();
        if !tz.raw.is_empty() {
            return fail(format!("distance {d}: {} strip labelings", tz.raw.len()));
        }
    }
    // At distance 5 the strip alone admits labelings, but all are one-sided:
    // none lies on a directed cycle, so no earth map tiling exists.
    let tz = enumerate_timezone_tilings(5, EdgePattern::A3BC).unwrap();
    let supported = cycle_supported(&tz);
    if supported.iter().any(|&s| s) {
        return fail("distance 5: a cycle-supported a3bc strip exists");
    }
    let families: usize = (1..=5u8)
        .map(|d| classify_families(d, EdgePattern::A3BC).unwrap().len())
        .sum();
    if families != 0 {
        return fail(format!("{families} a3bc families"));
    }
    let mut closed_checked = 0;
    for d in 1..=5u8 {
        for n in min_timezones(d)..=max_n {
            let closed = enumerate_closed(d, n, EdgePattern::A3BC).unwrap();
            if !closed.raw.is_empty() {
                return fail(format!("closed({d},{n}) has {} labelings", closed.raw.len()));
            }
            closed_checked += 1;
        }
    }
    Ok(format!(
        "strips empty for d=1..4; d=5 strips all one-sided ({} raw, none on a cycle); 0 families; closed empty in {closed_checked} cases up to n={max_n}",
        tz.raw.len()
    ))
}

fn family_counts(pattern: EdgePattern) -> Result<Vec<usize>, String> {
    (1..=5u8)
        .map(|d| {
            classify_families(d, pattern)
                .map(|f| f.len())
                .map_err(|e| e.to_string())
        })
        .collect()
}

/// All achievable (north, south) pole label multisets over directed cycles of
/// length `n` using the family's member arrows.
fn family_pole_combos(graph: &FamilyGraph, family: &Family, n: usize) -> BTreeSet<(String, String)> {
    let arrows: Vec<&Arrow> = family.arrows.iter().map(|&i| &graph.arrows[i]).collect();
    struct Walk<'a> {
        steps: Vec<(&'a str, &'a str, String, String)>, // from, to, north, south
        n: usize,
        out: BTreeSet<(String, String)>,
    }
    impl Walk<'_> {
        fn record(&mut self, north: &str, south: &str) {
            let mut nv: Vec<char> = north.chars().collect();
            let mut sv: Vec<char> = south.chars().collect();
            nv.sort_unstable();
            sv.sort_unstable();
            self.out
                .insert((nv.into_iter().collect(), sv.into_iter().collect()));
        }

        fn go(&mut self, start: &str, depth: usize, at: &str, north: &str, south: &str) {
            if depth == self.n {
                if at == start {
                    self.record(north, south);
                }
                return;
            }
            let steps = self.steps.clone();
            for (from, to, pn, ps) in steps {
                if from != at {
                    continue;
                }
                self.go(start, depth + 1, to, &format!("{north}{pn}"), &format!("{south}{ps}"));
            }
        }
    }

    let steps: Vec<(&str, &str, String, String)> = if graph.distance == 4 {
        // One step per composable (meridian part, core part) pair; the pole
        // words live on the core part.
        let ms: Vec<&&Arrow> = arrows.iter().filter(|a| a.kind == ArrowKind::MeridianPart).collect();
        let cs: Vec<&&Arrow> = arrows.iter().filter(|a| a.kind == ArrowKind::CorePart).collect();
        let mut steps = Vec::new();
        for m in &ms {
            for c in cs.iter().filter(|c| c.from == m.to) {
                steps.push((
                    m.from.as_str(),
                    c.to.as_str(),
                    c.pole_north.clone(),
                    c.pole_south.clone(),
                ));
            }
        }
        steps
    } else {
        arrows
            .iter()
            .map(|a| (a.from.as_str(), a.to.as_str(), a.pole_north.clone(), a.pole_south.clone()))
            .collect()
    };
    let starts: BTreeSet<&str> = steps.iter().map(|s| s.0).collect();
    let mut walk = Walk {
        steps,
        n,
        out: BTreeSet::new(),
    };
    for start in starts {
        walk.go(start, 0, start, "", "");
    }
    walk.out
}

fn check_a2b2c_families(_max_n: u32) -> Result<String, String> {
    let want: Vec<usize> =
        serde_json::from_value(expected()["family_counts"]["a2b2c"].clone()).unwrap();
    let got = family_counts(EdgePattern::A2B2C)?;
    if got != want {
        return fail(format!("family counts {got:?}, published {want:?}"));
    }
    // Pole descriptors pairwise distinct per distance, both as reduced-arrow
    // descriptors and as achievable pole label multisets for small n.
    for d in 1..=5u8 {
        let graph = build_family_graph(d, EdgePattern::A2B2C).unwrap();
        let families = families_of(&graph);
        for i in 0..families.len() {
            for j in i + 1..families.len() {
                if families[i].descriptor == families[j].descriptor {
                    return fail(format!("distance {d}: families {i} and {j} share a descriptor"));
                }
                for n in min_timezones(d) as usize..=6 {
                    let a = family_pole_combos(&graph, &families[i], n);
                    let b = family_pole_combos(&graph, &families[j], n);
                    if a.intersection(&b).next().is_some() {
                        return fail(format!(
                            "distance {d}, n={n}: families {i} and {j} share a pole combination"
                        ));
                    }
                }
            }
        }
    }
    // Distance-5 shapes: one family is generated by a strip with pole word
    // (a | b); the other by a three-strip block reading bac / bca.
    let graph = build_family_graph(5, EdgePattern::A2B2C).unwrap();
    let families = families_of(&graph);
    let loop_family = families.iter().position(|f| {
        f.arrows.iter().any(|&i| {
            let a = &graph.arrows[i];
            a.from == a.to && a.pole_north == "a" && a.pole_south == "b"
        })
    });
    let mut block_family = None;
    for (fi, f) in families.iter().enumerate() {
        let arrows: Vec<&Arrow> = f.arrows.iter().map(|&i| &graph.arrows[i]).collect();
        'outer: for a in &arrows {
            for b in arrows.iter().filter(|b| b.from == a.to) {
                for c in arrows.iter().filter(|c| c.from == b.to && c.to == a.from) {
                    let north: String = format!("{}{}{}", a.pole_north, b.pole_north, c.pole_north);
                    let south: String = format!("{}{}{}", a.pole_south, b.pole_south, c.pole_south);
                    for r in 0..3 {
                        let rot = |s: &str| -> String {
                            let v: Vec<char> = s.chars().collect();
                            (0..3).map(|i| v[(i + r) % 3]).collect()
                        };
                        if north == rot("bac") && south == rot("bca") {
                            block_family = Some(fi);
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    match (loop_family, block_family) {
        (Some(a), Some(b)) if a != b => Ok("families 2/3/3/2/2 (d1..d5); descriptors pairwise distinct (reduced arrows and pole combinations up to n=6); distance-5 families realize (a|b) and (bac|bca)".to_string()),
        _ => fail("distance-5 families do not realize the published pole words"),
    }
}

fn check_a3b2_families(_max_n: u32) -> Result<String, String> {
    let want: Vec<usize> =
        serde_json::from_value(expected()["family_counts"]["a3b2"].clone()).unwrap();
    let got = family_counts(EdgePattern::A3B2)?;
    if got != want {
        return fail(format!("family counts {got:?}, published {want:?}"));
    }
    // Descriptors do NOT characterize the families: two distinct families at
    // some distance achieve a common pole label multiset.
    let mut collision = None;
    'search: for d in 1..=5u8 {
        let graph = build_family_graph(d, EdgePattern::A3B2).unwrap();
        let families = families_of(&graph);
        for i in 0..families.len() {
            for j in i + 1..families.len() {
                for n in min_timezones(d) as usize..=4 {
                    let a = family_pole_combos(&graph, &families[i], n);
                    let b = family_pole_combos(&graph, &families[j], n);
                    if let Some(shared) = a.intersection(&b).next() {
                        collision = Some(format!(
                            "d={d}, n={n}, families {i}/{j} both reach poles {}|{}",
                            shared.0, shared.1
                        ));
                        break 'search;
                    }
                }
            }
        }
    }
    let Some(collision) = collision else {
        return fail("no pole-combination collision found between distinct a3b2 families");
    };
    // Every a3b2 timezone tiling occurring in an earth map is the c->a
    // specialization of an a2b2c one, and vice versa, up to strip symmetry.
    for d in 1..=5u8 {
        let a3b2 = enumerate_timezone_tilings(d, EdgePattern::A3B2).unwrap();
        let a2b2c = enumerate_timezone_tilings(d, EdgePattern::A2B2C).unwrap();
        let supported = cycle_supported(&a2b2c);
        let mut specialized = BTreeSet::new();
        for (i, t) in a2b2c.raw.iter().enumerate() {
            if !supported[i] {
                continue;
            }
            let s = specialize(
                &t.labeling,
                |l| if l == EdgeLabel::C { EdgeLabel::A } else { l },
                EdgePattern::A3B2,
            );
            let valid = (0..a3b2.template.fragment.face_count() as u32).all(|f| {
                let seq = s.face_sequence(&a3b2.template.fragment, f).map(|x| x.unwrap());
                tile_matches(&seq, EdgePattern::A3B2)
            });
            if valid {
                specialized.insert(canonicalize(&s, &a3b2.template.symmetry).key());
            }
        }
        let supported = cycle_supported(&a3b2);
        let mut actual = BTreeSet::new();
        for (i, t) in a3b2.raw.iter().enumerate() {
            if supported[i] {
                actual.insert(canonicalize(&t.labeling, &a3b2.template.symmetry).key());
            }
        }
        if specialized != actual {
            return fail(format!(
                "distance {d}: specialization classes {} vs actual {}",
                specialized.len(),
                actual.len()
            ));
        }
    }
    Ok(format!(
        "families 2/3/4/3/2 (d1..d5); descriptors collide ({collision}); earth-map timezone tilings = specialized a2b2c ones at every distance"
    ))
}

fn check_a4b_families(_max_n: u32) -> Result<String, String> {
    let want: Vec<usize> =
        serde_json::from_value(expected()["family_counts"]["a4b"].clone()).unwrap();
    let got = family_counts(EdgePattern::A4B)?;
    if got != want {
        return fail(format!("family counts {got:?}, published {want:?}"));
    }
    let a5 = family_counts(EdgePattern::A5)?;
    if a5 != vec![1, 1, 1, 1, 1] {
        return fail(format!("a5 family counts {a5:?}"));
    }
    // The two a4b families are the even and odd meridian parity classes, and
    // the parity invariant holds for every raw strip.
    for d in 1..=5u8 {
        let tz = enumerate_timezone_tilings(d, EdgePattern::A4B).unwrap();
        for t in &tz.raw {
            let (l, r) = t.parity().unwrap();
            if l != r {
                return fail(format!("distance {d}: strip with unequal boundary parity"));
            }
        }
        let graph = build_family_graph(d, EdgePattern::A4B).unwrap();
        let families = families_of(&graph);
        let mut parities = BTreeSet::new();
        for f in &families {
            let b_count = f.nodes[0].bytes().filter(|&b| b == b'b').count() % 2;
            if f.nodes
                .iter()
                .any(|s| s.bytes().filter(|&b| b == b'b').count() % 2 != b_count)
            {
                return fail(format!("distance {d}: family mixes meridian parities"));
            }
            parities.insert(b_count);
        }
        if parities.len() != 2 {
            return fail(format!("distance {d}: parity classes {parities:?}"));
        }
    }
    Ok("two families (even/odd) at every distance; boundary parity equal on every strip".into())
}

fn check_a4b_raw_counts(_max_n: u32) -> Result<String, String> {
    let want = &expected()["a4b_raw_counts"];
    for (d, key) in [(3u8, "d3"), (2, "d2"), (1, "d1")] {
        let tz = enumerate_timezone_tilings(d, EdgePattern::A4B).unwrap();
        for (pair, count) in want[key].as_object().unwrap() {
            let (l, r) = pair.split_once('|').unwrap();
            let got = tz
                .by_signature
                .get(&(l.to_string(), r.to_string()))
                .map_or(0, |v| v.len());
            if got as u64 != count.as_u64().unwrap() {
                return fail(format!("d{d} {pair}: {got}, published {count}"));
            }
        }
    }
    let parts = enumerate_parts(EdgePattern::A4B).unwrap();
    let by_sig = parts.core_by_signature();
    for (pair, count) in want["d4_core"].as_object().unwrap() {
        let (l, r) = pair.split_once('|').unwrap();
        let got = by_sig
            .get(&(l.to_string(), r.to_string()))
            .map_or(0, |v| v.len());
        if got as u64 != count.as_u64().unwrap() {
            return fail(format!("d4 core {pair}: {got}, want {count}"));
        }
    }
    let b_count = |sig: &[EdgeLabel]| sig.iter().filter(|&&l| l == EdgeLabel::B).count();
    let mut even = 0;
    let mut odd = 0;
    for rep in &parts.meridian_reduced {
        let left: Vec<EdgeLabel> = parts
            .meridian_fragment
            .left_meridian
            .iter()
            .map(|&e| rep.labeling.get(e).unwrap())
            .collect();
        if b_count(&left) % 2 == 0 {
            even += 1;
        } else {
            odd += 1;
        }
    }
    let want_m = &want["d4_meridian_reps"];
    if even as u64 != want_m["even"].as_u64().unwrap() || odd as u64 != want_m["odd"].as_u64().unwrap() {
        return fail(format!("d4 meridian reps even/odd = {even}/{odd}"));
    }
    // Distance-5 structure among arrows occurring in earth maps.
    let graph = build_family_graph(5, EdgePattern::A4B).unwrap();
    let families = families_of(&graph);
    let members: Vec<&Arrow> = families
        .iter()
        .flat_map(|f| f.arrows.iter().map(|&i| &graph.arrows[i]))
        .collect();
    let sig_b = |s: &str| s.bytes().filter(|&b| b == b'b').count();
    let mut even_nodes: BTreeSet<&str> = BTreeSet::new();
    let mut pair_counts: BTreeMap<(&str, &str), usize> = BTreeMap::new();
    for a in members.iter().filter(|a| sig_b(&a.from) % 2 == 0) {
        even_nodes.insert(&a.from);
        even_nodes.insert(&a.to);
        *pair_counts.entry((&a.from, &a.to)).or_default() += 1;
    }
    let want_nodes: Vec<String> =
        serde_json::from_value(expected()["d5_even_nodes"].clone()).unwrap();
    let got_nodes: Vec<String> = even_nodes.iter().map(|s| s.to_string()).collect();
    if got_nodes != want_nodes {
        return fail(format!("d5 even nodes {got_nodes:?}"));
    }
    for (&(f, t), &c) in &pair_counts {
        let expected_count = if (f, t) == ("aaaaa", "aaaaa") { 2 } else { 1 };
        if c != expected_count {
            return fail(format!("d5 even {f}->{t}: {c} arrows"));
        }
    }
    let out_aaaba = members.iter().filter(|a| a.from == "aaaba").count();
    if out_aaaba as u64 != expected()["d5_odd_out_degree_aaaba"].as_u64().unwrap() {
        return fail(format!("d5 odd out-degree of aaaba = {out_aaaba}"));
    }
    Ok("d3 60/10/25/25; d2 75+25x4; d1 100/25; d4 cores match (aaaa|aaaa corrected to 25, published total 29 double counts one orbit); meridian reps 3+3; d5 even unique-by-boundary except the two all-a loops; out-degree(aaaba)=4".to_string())
}

fn check_core_orbits(_max_n: u32) -> Result<String, String> {
    let want = &expected()["a4b_core_orbits"];
    let parts = enumerate_parts(EdgePattern::A4B).unwrap();
    let aaaa: Vec<Labeling> = parts
        .core
        .iter()
        .filter(|t| t.left_str() == "aaaa" && t.right_str() == "aaaa")
        .map(|t| t.labeling.clone())
        .collect();
    if aaaa.len() as u64 != want["corrected_total"].as_u64().unwrap() {
        return fail(format!("aaaa|aaaa raw = {}", aaaa.len()));
    }
    let orbits = orbit_reduce(&aaaa, &parts.core_fragment.symmetry);
    let mut mults: Vec<u64> = orbits.iter().map(|o| o.multiplicity as u64).collect();
    mults.sort_unstable();
    let want_mults: Vec<u64> =
        serde_json::from_value(want["corrected_multiplicities"].clone()).unwrap();
    if mults != want_mults {
        return fail(format!("multiplicities {mults:?}"));
    }
    // Certify the published overcount from the published representatives:
    // all nine are valid enumerated tilings, exactly two share an orbit, and
    // together they cover all raw tilings.
    let reps: Vec<Vec<u32>> =
        serde_json::from_value(want["representative_b_edges"].clone()).unwrap();
    let mut orbit_keys = Vec::new();
    for bset in &reps {
        let mut lab = Labeling::empty(&parts.core_fragment.fragment, EdgePattern::A4B);
        for local in 0..parts.core_fragment.fragment.edge_count() as u32 {
            let te = parts.core_fragment.edge_map[local as usize];
            lab.set(
                local,
                if bset.contains(&te) {
                    EdgeLabel::B
                } else {
                    EdgeLabel::A
                },
            );
        }
        if !aaaa.contains(&lab) {
            return fail("a published representative is not an enumerated tiling");
        }
        orbit_keys.push(canonicalize(&lab, &parts.core_fragment.symmetry).key());
    }
    let pair: Vec<usize> = serde_json::from_value(want["duplicate_orbit_pair"].clone()).unwrap();
    if orbit_keys[pair[0] - 1] != orbit_keys[pair[1] - 1] {
        return fail("pinned duplicate pair does not share an orbit");
    }
    let distinct: BTreeSet<&Vec<u8>> = orbit_keys.iter().collect();
    if distinct.len() != orbits.len() {
        return fail(format!(
            "published representatives cover {} orbits of {}",
            distinct.len(),
            orbits.len()
        ));
    }
    Ok(format!(
        "aaaa|aaaa cores: 25 raw, 8 orbits, multiplicities {mults:?}; published list of 9 (total 29) certified to double count one 180-degree orbit (its nos. {} and {})",
        pair[0], pair[1]
    ))
}

fn check_oracle_equivalence(_max_n: u32) -> Result<String, String> {
    let mut cases = 0;
    for pattern in EdgePattern::ALL {
        for d in 1..=5u8 {
            let graph = build_family_graph(d, pattern).unwrap();
            for n in min_timezones(d)..=min_timezones(d) + 1 {
                let closed = enumerate_closed(d, n, pattern).unwrap();
                let cycles = closed_from_cycles(&graph, &closed.earth_map);
                if cycles.len() != closed.raw.len() {
                    return fail(format!(
                        "{pattern} d={d} n={n}: {} cycle labelings vs {} closed",
                        cycles.len(),
                        closed.raw.len()
                    ));
                }
                let reduced_cycles = orbit_reduce(&cycles, &closed.earth_map.symmetry);
                let a: Vec<(Vec<u8>, usize)> = closed
                    .reduced
                    .iter()
                    .map(|r| (r.labeling.key(), r.multiplicity))
                    .collect();
                let b: Vec<(Vec<u8>, usize)> = reduced_cycles
                    .iter()
                    .map(|r| (r.labeling.key(), r.multiplicity))
                    .collect();
                if a != b {
                    return fail(format!("{pattern} d={d} n={n}: reduced multisets differ"));
                }
                cases += 1;
            }
        }
    }
    Ok(format!(
        "{cases} (pattern, distance, n) cases: closed enumeration equals cycle assembly as a reduced multiset"
    ))
}

fn check_structural_invariants(max_n: u32) -> Result<String, String> {
    let mut cases = 0;
    for d in 1..=5u8 {
        for n in min_timezones(d)..=max_n {
            let em = build_earth_map(d, n).unwrap();
            let report = validate(&em.mesh, Some(&em));
            if !report.all_pass() {
                let failing: Vec<&str> = report
                    .entries
                    .iter()
                    .filter(|e| !e.pass)
                    .map(|e| e.check.as_str())
                    .collect();
                return fail(format!("d={d} n={n}: {failing:?}"));
            }
            cases += 1;
        }
    }
    Ok(format!(
        "{cases} meshes pass Euler, census, pole and pentagon checks up to n={max_n}"
    ))
}

fn check_search_oracle(_max_n: u32) -> Result<String, String> {
    let frame = build_neighborhood_fragment();
    let mut counts = Vec::new();
    for pattern in EdgePattern::ALL {
        let seed = Labeling::empty(&frame.fragment, pattern);
        let mut fast = crate::search::enumerate_completions(&frame.fragment, pattern, &seed)
            .expect("empty seed");
        let mut slow = naive_enumerate(&frame.fragment, pattern, &seed);
        fast.sort_by_key(|l| l.key());
        slow.sort_by_key(|l| l.key());
        if fast != slow {
            return fail(format!(
                "{pattern}: backtracking {} vs naive {}",
                fast.len(),
                slow.len()
            ));
        }
        counts.push(format!("{pattern}:{}", fast.len()));
    }
    Ok(format!(
        "naive filter agrees with propagation search on the 20-edge fragment ({})",
        counts.join(" ")
    ))
}

fn check_d5_type_iii(max_n: u32) -> Result<String, String> {
    let frame = build_neighborhood_fragment();
    let types = classify_neighborhoods(EdgePattern::A3B2);
    let type3 = types
        .iter()
        .find(|t| t.published_label == "III")
        .unwrap()
        .canonical
        .key();
    let mut tilings = 0;
    let mut cores = 0;
    for n in 4..=max_n.max(4) {
        let closed = enumerate_closed(5, n, EdgePattern::A3B2).unwrap();
        let em = &closed.earth_map;
        for lab in &closed.raw {
            tilings += 1;
            for k in 0..n as usize {
                for core in [1, 2] {
                    let face = em.template_face(k, core);
                    let vec = extract_neighborhood(&em.mesh, &lab.labels, face)
                        .ok_or("core tile has a vertex of degree != 3")?;
                    let nbhd = Labeling {
                        pattern: EdgePattern::A3B2,
                        labels: vec.into_iter().map(Some).collect(),
                    };
                    if canonicalize(&nbhd, &frame.symmetry).key() != type3 {
                        return fail(format!("n={n}, timezone {k}: core of type != III"));
                    }
                    cores += 1;
                }
            }
        }
    }
    Ok(format!(
        "{cores} core neighborhoods across {tilings} closed tilings (n=4..{max_n}) all of type III"
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_names_unique() {
        let names = check_names();
        let set: BTreeSet<_> = names.iter().collect();
        assert_eq!(set.len(), names.len());
    }

    #[test]
    fn expected_data_parses() {
        assert!(expected()["a4b_propagation"].is_object());
        assert_eq!(published_table("a4b_propagation").len(), 18);
    }
}
