//! Classification of edge congruent neighborhood tilings of a tile whose
//! vertices all have degree 3, forced vertices, and propagation tables.
//!
//! The published numbering of the types (I/II/III, or 1 to 18) follows the
//! order of the source drawings, not an algorithm; the static tables below
//! transcribe each published tiling in the canonical frame layout.
//! Classification is computed from scratch and then matched against the
//! transcriptions, so the correspondence is checked rather than assumed.

use crate::mesh::{
    build_neighborhood_fragment, extract_neighborhood, propagation_host, NeighborhoodFrame,
    VertexId, FRAME_EDGES,
};
use crate::patterns::{adjacent_pair_feasible, parse_labels, EdgeLabel, EdgePattern};
use crate::search::{canonicalize, enumerate_completions, orbit_reduce, Labeling, SearchError};
use serde::Serialize;

/// Interior b-edge placement of an `a4b` neighborhood tiling: which spokes
/// (edges between consecutive neighbors) carry the extra b edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InteriorPlacement {
    /// Two spokes carry b.
    TwoSpokes,
    /// One spoke, on the symmetry axis opposite the center's b edge.
    CentralSpoke,
    /// One spoke, off the axis.
    SidewaySpoke,
    /// No spoke carries b; the four remaining b edges lie on the boundary.
    BoundaryOnly,
}

/// A symmetry class of edge congruent labelings of the neighborhood
/// fragment.
#[derive(Clone, Debug)]
pub struct NeighborhoodTiling {
    pub pattern: EdgePattern,
    /// Published label: "I".."III" or "1".."18", or "1" for the unique types.
    pub published_label: String,
    /// The labeling exactly as published (center placement as drawn).
    pub as_drawn: Labeling,
    /// Orbit representative under the order-10 frame symmetry.
    pub canonical: Labeling,
    /// Orbit size within the full enumeration.
    pub multiplicity: usize,
    /// Boundary vertices forced to degree > 3, on the as-drawn labeling.
    pub forced: Vec<VertexId>,
    /// Interior placement class (`a4b` only).
    pub placement: Option<InteriorPlacement>,
}

/// One cell of a propagation table: the published types the neighbor's own
/// neighborhood can have, or blocked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PropagationCell {
    #[serde(rename = "x")]
    Blocked,
    Types(Vec<String>),
}

/// Rows are types in published order; columns are the published neighbor
/// indices P1..P5.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropagationTable {
    pub pattern: EdgePattern,
    pub types: Vec<String>,
    pub rows: Vec<[PropagationCell; 5]>,
}

/// The published tilings, transcribed in canonical frame edge order
/// (c0..c4, s0..s4, o0p, o0n, ..., o4p, o4n).
fn published_tilings(pattern: EdgePattern) -> Vec<(&'static str, &'static str)> {
    match pattern {
        EdgePattern::A5 => vec![("1", "aaaaaaaaaaaaaaaaaaaa")],
        EdgePattern::A2B2C => vec![("1", "baacbbcabaaabbcbbaac")],
        EdgePattern::A3BC => vec![
            ("I", "cbaaabacaaaaaababcac"),
            ("II", "cbaaabacaaaaaabacbac"),
        ],
        EdgePattern::A3B2 => vec![
            ("I", "bbaaababaaaaaababbab"),
            ("II", "bbaaaabaaaaaaabbbbbb"),
            ("III", "bbaaaababaaaaaabbabb"),
        ],
        EdgePattern::A4B => vec![
            ("1", "aaaabababaaaaaaaaaaa"),
            ("2", "aaaabaabaaabaaaabaaa"),
            ("3", "aaaabaabaaabaaaaabaa"),
            ("4", "aaaabaabaabaaaaaabaa"),
            ("5", "aaaababaaaaaaabaabaa"),
            ("6", "aaaababaaaaaaababaaa"),
            ("7", "aaaababaaaaaaaababaa"),
            ("8", "aaaabaaaaababababaaa"),
            ("9", "aaaabaaaaabababaabaa"),
            ("10", "aaaabaaaaababaababaa"),
            ("11", "aaaababaaaaaaaabbaaa"),
            ("12", "aaaabaaaaababaabbaaa"),
            ("13", "aaaabaaaaabaababbaaa"),
            ("14", "aaaabaaaaaabababbaaa"),
            ("15", "aaaabaaaaabaabbabaaa"),
            ("16", "aaaabaaaaabaabbaabaa"),
            ("17", "aaaabaaaaaababbabaaa"),
            ("18", "aaaabaaaaaabbaabbaaa"),
        ],
    }
}

/// Published neighbor index `P_i` (1-based) to canonical frame neighbor
/// index, matching each pattern's transcription orientation.
fn column_to_frame_neighbor(pattern: EdgePattern, i: usize) -> usize {
    match pattern {
        // The a4b table is drawn with the center's b edge on c4, shared
        // with N4 = P4.
        EdgePattern::A4B => i % 5,
        // The other drawings label tiles 1..5 with P_i drawn as N_{i-1}.
        _ => i - 1,
    }
}

fn labeling_from_str(pattern: EdgePattern, s: &str) -> Labeling {
    let labels = parse_labels(s).expect("transcription strings are well formed");
    assert_eq!(labels.len(), FRAME_EDGES);
    Labeling {
        pattern,
        labels: labels.into_iter().map(Some).collect(),
    }
}

/// Boundary vertices whose two incident outer edges are not an adjacent pair
/// of the pattern, so no degree-3 tile can close them. These are the
/// mid-ring vertices between consecutive neighbors.
pub fn forced_vertices(frame: &NeighborhoodFrame, labeling: &Labeling) -> Vec<VertexId> {
    let mut out = Vec::new();
    for i in 0..5usize {
        // Outer edges meeting at B_i: o_{i-1}^next and o_i^prev.
        let e1 = (11 + 2 * ((i + 4) % 5)) as u32;
        let e2 = (10 + 2 * i) as u32;
        let (l1, l2) = (labeling.get(e1).unwrap(), labeling.get(e2).unwrap());
        if !adjacent_pair_feasible(labeling.pattern, l1, l2).unwrap() {
            out.push(frame.mid_vertex(i));
        }
    }
    out
}

fn interior_placement(labeling: &Labeling) -> InteriorPlacement {
    // The as-drawn a4b labelings carry the center b on c4; the possible
    // b-spokes are then s1 (sideway), s2 (central), s3 (sideway).
    let b_spokes: Vec<usize> = (0..5)
        .filter(|&i| labeling.get((5 + i) as u32) == Some(EdgeLabel::B))
        .collect();
    match b_spokes.as_slice() {
        [_, _] => InteriorPlacement::TwoSpokes,
        [2] => InteriorPlacement::CentralSpoke,
        [_] => InteriorPlacement::SidewaySpoke,
        [] => InteriorPlacement::BoundaryOnly,
        other => panic!("impossible spoke set {other:?}"),
    }
}

/// Enumerates all edge congruent labelings of the neighborhood fragment from
/// an empty seed, reduces them under the order-10 frame symmetry, and labels
/// each orbit with its published number. Returned in published order.
pub fn classify_neighborhoods(pattern: EdgePattern) -> Vec<NeighborhoodTiling> {
    let frame = build_neighborhood_fragment();
    let seed = Labeling::empty(&frame.fragment, pattern);
    let all = enumerate_completions(&frame.fragment, pattern, &seed)
        .expect("empty seed is always consistent");
    let orbits = orbit_reduce(&all, &frame.symmetry);
    let transcribed = published_tilings(pattern);
    assert_eq!(
        orbits.len(),
        transcribed.len(),
        "{pattern}: computed {} orbits, published {}",
        orbits.len(),
        transcribed.len()
    );
    let mut out = Vec::new();
    for (label, s) in transcribed {
        let as_drawn = labeling_from_str(pattern, s);
        let canonical = canonicalize(&as_drawn, &frame.symmetry);
        let orbit = orbits
            .iter()
            .find(|o| o.labeling == canonical)
            .unwrap_or_else(|| panic!("{pattern}: published tiling {label} not found among orbits"));
        let forced = forced_vertices(&frame, &as_drawn);
        out.push(NeighborhoodTiling {
            pattern,
            published_label: label.to_string(),
            placement: (pattern == EdgePattern::A4B).then(|| interior_placement(&as_drawn)),
            forced,
            multiplicity: orbit.multiplicity,
            canonical: orbit.labeling.clone(),
            as_drawn,
        });
    }
    out
}

/// Computes, for each type `T` and neighbor `P_i`, the set of types the
/// neighbor's own neighborhood can have when all its vertices have degree 3:
/// the fragment is extended by the two tiles closing `P_i`'s boundary
/// vertices, seeded with `T`, and every completion's `P_i`-neighborhood is
/// classified. No completion means the neighbor is blocked.
pub fn propagation(pattern: EdgePattern) -> PropagationTable {
    let frame = build_neighborhood_fragment();
    let types = classify_neighborhoods(pattern);
    let canon_to_label: Vec<(Vec<u8>, String)> = types
        .iter()
        .map(|t| (t.canonical.key(), t.published_label.clone()))
        .collect();
    let order: Vec<&str> = types.iter().map(|t| t.published_label.as_str()).collect();

    let mut rows = Vec::new();
    for t in &types {
        let mut row: [PropagationCell; 5] = std::array::from_fn(|_| PropagationCell::Blocked);
        for (col, cell) in row.iter_mut().enumerate() {
            let neighbor = column_to_frame_neighbor(pattern, col + 1);
            let host = propagation_host(neighbor);
            let mut seed = Labeling::empty(&host.fragment, pattern);
            for e in 0..FRAME_EDGES {
                seed.labels[e] = t.as_drawn.labels[e];
            }
            let completions = match enumerate_completions(&host.fragment, pattern, &seed) {
                Ok(c) => c,
                Err(SearchError::InconsistentSeed) => Vec::new(),
                Err(e) => panic!("propagation host enumeration failed: {e}"),
            };
            let mut found: Vec<String> = Vec::new();
            for c in &completions {
                let vec = extract_neighborhood(&host.fragment, &c.labels, host.subject)
                    .expect("subject has all degree-3 vertices in the host");
                let lab = Labeling {
                    pattern,
                    labels: vec.into_iter().map(Some).collect(),
                };
                let key = canonicalize(&lab, &frame.symmetry).key();
                let label = &canon_to_label
                    .iter()
                    .find(|(k, _)| *k == key)
                    .expect("every completion neighborhood is a classified type")
                    .1;
                if !found.contains(label) {
                    found.push(label.clone());
                }
            }
            if !found.is_empty() {
                found.sort_by_key(|l| order.iter().position(|o| o == l).unwrap());
                *cell = PropagationCell::Types(found);
            }
        }
        rows.push(row);
    }
    PropagationTable {
        pattern,
        types: types.iter().map(|t| t.published_label.clone()).collect(),
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neighborhood_counts_match_the_published_classification() {
        assert_eq!(classify_neighborhoods(EdgePattern::A5).len(), 1);
        assert_eq!(classify_neighborhoods(EdgePattern::A2B2C).len(), 1);
        assert_eq!(classify_neighborhoods(EdgePattern::A3BC).len(), 2);
        assert_eq!(classify_neighborhoods(EdgePattern::A3B2).len(), 3);
        assert_eq!(classify_neighborhoods(EdgePattern::A4B).len(), 18);
    }

    #[test]
    fn a4b_interior_placement_census() {
        // Structural truth: 1 two-spoke, 3 central, 4 sideway, 10 boundary
        // only. The published listing files one forced sideway tiling among
        // its residual eleven, giving the 1+3+3+11 layout.
        let types = classify_neighborhoods(EdgePattern::A4B);
        let count =
            |p: InteriorPlacement| types.iter().filter(|t| t.placement == Some(p)).count();
        assert_eq!(count(InteriorPlacement::TwoSpokes), 1);
        assert_eq!(count(InteriorPlacement::CentralSpoke), 3);
        assert_eq!(count(InteriorPlacement::SidewaySpoke), 4);
        assert_eq!(count(InteriorPlacement::BoundaryOnly), 10);
        // Forced-vertex census: 7 of the 10 boundary-only tilings, plus the
        // one sideway tiling whose outer b edges collide (published no. 11).
        let forced_boundary = types
            .iter()
            .filter(|t| {
                t.placement == Some(InteriorPlacement::BoundaryOnly) && !t.forced.is_empty()
            })
            .count();
        assert_eq!(forced_boundary, 7);
        let forced_total = types.iter().filter(|t| !t.forced.is_empty()).count();
        assert_eq!(forced_total, 8);
        let eleven = types.iter().find(|t| t.published_label == "11").unwrap();
        assert_eq!(eleven.placement, Some(InteriorPlacement::SidewaySpoke));
        assert!(!eleven.forced.is_empty());
    }

    #[test]
    fn a2b2c_unique_tiling_has_no_forced_vertices() {
        let types = classify_neighborhoods(EdgePattern::A2B2C);
        assert!(types[0].forced.is_empty());
    }

    #[test]
    fn a4b_multiplicities_sum_to_the_raw_count() {
        let types = classify_neighborhoods(EdgePattern::A4B);
        // 5 center placements x 29 completions each.
        assert_eq!(types.iter().map(|t| t.multiplicity).sum::<usize>(), 145);
    }

    #[test]
    fn classification_is_independent_of_center_placement() {
        // Seeding the center with every placement and canonicalizing yields
        // exactly the full classified set.
        let frame = build_neighborhood_fragment();
        for pattern in [EdgePattern::A3BC, EdgePattern::A3B2] {
            let types = classify_neighborhoods(pattern);
            let mut seen: Vec<Vec<u8>> = Vec::new();
            for placement in pattern.placements() {
                let mut seed = Labeling::empty(&frame.fragment, pattern);
                for (i, &l) in placement.sequence.iter().enumerate() {
                    seed.set(i as u32, l);
                }
                for done in enumerate_completions(&frame.fragment, pattern, &seed).unwrap() {
                    let key = canonicalize(&done, &frame.symmetry).key();
                    if !seen.contains(&key) {
                        seen.push(key);
                    }
                }
            }
            let mut expected: Vec<Vec<u8>> = types.iter().map(|t| t.canonical.key()).collect();
            seen.sort();
            expected.sort();
            assert_eq!(seen, expected, "{pattern}");
        }
    }

    #[test]
    fn a3bc_propagation_matches_the_published_table() {
        let table = propagation(EdgePattern::A3BC);
        let both = PropagationCell::Types(vec!["I".into(), "II".into()]);
        for row in &table.rows {
            assert_eq!(row[0], both);
            assert_eq!(row[1], both);
            assert_eq!(row[2], PropagationCell::Blocked);
            assert_eq!(row[3], PropagationCell::Blocked);
            assert_eq!(row[4], PropagationCell::Blocked);
        }
    }

    #[test]
    fn a2b2c_propagation_is_the_unique_type_everywhere() {
        let table = propagation(EdgePattern::A2B2C);
        let unique = PropagationCell::Types(vec!["1".into()]);
        for cell in &table.rows[0] {
            assert_eq!(*cell, unique);
        }
    }
}
