//! Closed-tiling enumeration: the independent oracle that labels the closed
//! earth map mesh directly, and the assembly of closed labelings from
//! directed cycles in the family graph.

use super::family::{ArrowKind, FamilyGraph};
use crate::mesh::{build_earth_map, EarthMap, MeshError};
use crate::patterns::EdgePattern;
use crate::search::{enumerate_completions, orbit_reduce, Labeling, OrbitRepresentative};

/// All edge congruent labelings of a closed earth map, found by direct
/// backtracking on the closed mesh (not via timezones), orbit-reduced under
/// the mesh symmetry group.
pub struct ClosedEnumeration {
    pub earth_map: EarthMap,
    pub raw: Vec<Labeling>,
    pub reduced: Vec<OrbitRepresentative>,
}

pub fn enumerate_closed(
    distance: u8,
    timezones: u32,
    pattern: EdgePattern,
) -> Result<ClosedEnumeration, MeshError> {
    let earth_map = build_earth_map(distance, timezones)?;
    let seed = Labeling::empty(&earth_map.mesh, pattern);
    let raw = enumerate_completions(&earth_map.mesh, pattern, &seed)
        .expect("empty seed is always consistent");
    let reduced = orbit_reduce(&raw, &earth_map.symmetry);
    Ok(ClosedEnumeration {
        earth_map,
        raw,
        reduced,
    })
}

/// Writes one timezone-arrow labeling per copy onto the closed mesh. For
/// distances other than 4, `arrows[k]` is the template labeling of copy `k`;
/// consecutive arrows must agree on the shared meridian.
pub fn assemble_cycle(earth_map: &EarthMap, arrows: &[&Labeling]) -> Labeling {
    let n = earth_map.timezones as usize;
    assert_eq!(arrows.len(), n);
    let template = earth_map.template().fragment.edge_count() as u32;
    let mut out = Labeling {
        pattern: arrows[0].pattern,
        labels: vec![None; earth_map.mesh.edge_count()],
    };
    for (k, arrow) in arrows.iter().enumerate() {
        for e in 0..template {
            let global = earth_map.template_edge(k, e) as usize;
            let label = arrow.get(e);
            debug_assert!(
                out.labels[global].is_none() || out.labels[global] == label,
                "meridian labels disagree between consecutive arrows"
            );
            out.labels[global] = label;
        }
    }
    debug_assert!(out.is_total());
    out
}

/// Writes a distance-4 alternating cycle (meridian part, core part) pairs
/// onto the closed mesh.
fn assemble_d4_cycle(
    earth_map: &EarthMap,
    graph: &FamilyGraph,
    pairs: &[(usize, usize)],
) -> Labeling {
    let parts = graph.parts.as_ref().unwrap();
    let mut out = Labeling {
        pattern: graph.pattern,
        labels: vec![None; earth_map.mesh.edge_count()],
    };
    for (k, &(m, c)) in pairs.iter().enumerate() {
        for (part, arrow_idx) in [(&parts.meridian_fragment, m), (&parts.core_fragment, c)] {
            let lab = &graph.arrows[arrow_idx].labeling;
            for (local, &template_edge) in part.edge_map.iter().enumerate() {
                let global = earth_map.template_edge(k, template_edge) as usize;
                let label = lab.get(local as u32);
                debug_assert!(
                    out.labels[global].is_none() || out.labels[global] == label,
                    "part labels disagree on a shared meridian"
                );
                out.labels[global] = label;
            }
        }
    }
    debug_assert!(out.is_total());
    out
}

/// Every closed labeling generated by directed cycles of length `n` in the
/// family graph: all arrow sequences with cyclically matching signatures (at
/// distance 4, alternating meridian/core pairs). Closed labelings correspond
/// bijectively to such sequences, one timezone per step.
pub fn closed_from_cycles(graph: &FamilyGraph, earth_map: &EarthMap) -> Vec<Labeling> {
    let n = earth_map.timezones as usize;
    let mut out = Vec::new();
    if graph.distance == 4 {
        // Enumerate (meridian, core) pairs per timezone.
        let meridians: Vec<usize> = (0..graph.arrows.len())
            .filter(|&i| graph.arrows[i].kind == ArrowKind::MeridianPart)
            .collect();
        let cores: Vec<usize> = (0..graph.arrows.len())
            .filter(|&i| graph.arrows[i].kind == ArrowKind::CorePart)
            .collect();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        fn rec(
            graph: &FamilyGraph,
            earth_map: &EarthMap,
            meridians: &[usize],
            cores: &[usize],
            n: usize,
            pairs: &mut Vec<(usize, usize)>,
            out: &mut Vec<Labeling>,
        ) {
            if pairs.len() == n {
                let first = &graph.arrows[pairs[0].0];
                let last = &graph.arrows[pairs[n - 1].1];
                if last.to == first.from {
                    out.push(assemble_d4_cycle(earth_map, graph, pairs));
                }
                return;
            }
            for &m in meridians {
                if let Some(&(_, prev_core)) = pairs.last() {
                    if graph.arrows[prev_core].to != graph.arrows[m].from {
                        continue;
                    }
                }
                for &c in cores {
                    if graph.arrows[m].to != graph.arrows[c].from {
                        continue;
                    }
                    pairs.push((m, c));
                    rec(graph, earth_map, meridians, cores, n, pairs, out);
                    pairs.pop();
                }
            }
        }
        rec(graph, earth_map, &meridians, &cores, n, &mut pairs, &mut out);
    } else {
        let mut seq: Vec<usize> = Vec::new();
        fn rec(
            graph: &FamilyGraph,
            earth_map: &EarthMap,
            n: usize,
            seq: &mut Vec<usize>,
            out: &mut Vec<Labeling>,
        ) {
            if seq.len() == n {
                if graph.arrows[seq[n - 1]].to == graph.arrows[seq[0]].from {
                    let arrows: Vec<&Labeling> =
                        seq.iter().map(|&i| &graph.arrows[i].labeling).collect();
                    out.push(assemble_cycle(earth_map, &arrows));
                }
                return;
            }
            for i in 0..graph.arrows.len() {
                if let Some(&prev) = seq.last() {
                    if graph.arrows[prev].to != graph.arrows[i].from {
                        continue;
                    }
                }
                seq.push(i);
                rec(graph, earth_map, n, seq, out);
                seq.pop();
            }
        }
        rec(graph, earth_map, n, &mut seq, &mut out);
    }
    out
}
