//! Directed family graphs on meridian signatures and the classification of
//! earth map tilings into families.
//!
//! A node is a meridian signature; an arrow is a timezone tiling (or, at
//! distance 4, a meridian part or core part tiling) with its left and right
//! boundary signatures as endpoints. An earth map tiling is a directed cycle;
//! at distance 4 the cycle must alternate meridian and core arrows. A family
//! is a weakly connected component of the symmetry-reduced graph containing
//! at least one admissible cycle, restricted to the arrows lying on such
//! cycles.

use super::{enumerate_parts, enumerate_timezone_tilings, PartsEnumeration, TimezoneEnumeration};
use crate::mesh::{MeshError, SymmetryGroup};
use crate::patterns::{labels_to_string, EdgePattern};
use crate::search::{canonicalize, Labeling};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ArrowKind {
    Timezone,
    MeridianPart,
    CorePart,
}

impl ArrowKind {
    pub fn name(self) -> &'static str {
        match self {
            ArrowKind::Timezone => "timezone",
            ArrowKind::MeridianPart => "meridian_part",
            ArrowKind::CorePart => "core_part",
        }
    }
}

/// One arrow of the family graph.
#[derive(Clone, Debug)]
pub struct Arrow {
    pub kind: ArrowKind,
    pub from: String,
    pub to: String,
    /// Labeling on the arrow's host fragment (timezone template or part).
    pub labeling: Labeling,
    /// Pole words (west to east) of the timezone this arrow yields; for
    /// distance-4 meridian parts, empty (the reporting edges lie on the core).
    pub pole_north: String,
    pub pole_south: String,
}

/// The directed multigraph of all timezone (or part) tilings at one distance
/// and pattern.
pub struct FamilyGraph {
    pub distance: u8,
    pub pattern: EdgePattern,
    pub nodes: Vec<String>,
    pub arrows: Vec<Arrow>,
    /// Strip enumeration backing timezone arrows (absent only at d=4).
    pub timezones: Option<TimezoneEnumeration>,
    /// Part enumeration backing part arrows (d=4 only).
    pub parts: Option<PartsEnumeration>,
}

impl FamilyGraph {
    /// The symmetry group acting on an arrow's host labelings, including the
    /// a/b swap for the `a2b2c` pattern.
    fn action_group(&self, kind: ArrowKind) -> SymmetryGroup {
        let base = match (kind, &self.timezones, &self.parts) {
            (ArrowKind::Timezone, Some(tz), _) => tz.template.symmetry.clone(),
            (ArrowKind::MeridianPart, _, Some(p)) => p.meridian_fragment.symmetry.clone(),
            (ArrowKind::CorePart, _, Some(p)) => p.core_fragment.symmetry.clone(),
            _ => unreachable!("arrow kind matches the graph's backing enumeration"),
        };
        if self.pattern == EdgePattern::A2B2C {
            base.with_ab_swap()
        } else {
            base
        }
    }

    /// Canonical key of an arrow under the graph's symmetry action.
    fn arrow_canonical_key(&self, arrow: &Arrow) -> (ArrowKind, Vec<u8>) {
        let group = self.action_group(arrow.kind);
        (arrow.kind, canonicalize(&arrow.labeling, &group).key())
    }

    /// Reads the boundary signatures of a host labeling.
    fn arrow_from_labeling(&self, kind: ArrowKind, lab: Labeling) -> Arrow {
        match kind {
            ArrowKind::Timezone => {
                let tz = self.timezones.as_ref().unwrap();
                let t = super::tiling_from_labeling(&tz.template, &lab);
                Arrow {
                    kind,
                    from: t.left_str(),
                    to: t.right_str(),
                    pole_north: labels_to_string(&t.pole_north),
                    pole_south: labels_to_string(&t.pole_south),
                    labeling: lab,
                }
            }
            ArrowKind::MeridianPart | ArrowKind::CorePart => {
                let parts = self.parts.as_ref().unwrap();
                let frag = if kind == ArrowKind::MeridianPart {
                    &parts.meridian_fragment
                } else {
                    &parts.core_fragment
                };
                let sig = |edges: &[u32]| {
                    labels_to_string(
                        &edges
                            .iter()
                            .map(|&e| lab.get(e).unwrap())
                            .collect::<Vec<_>>(),
                    )
                };
                let (pn, ps) = if kind == ArrowKind::CorePart {
                    let t = super::PartTiling {
                        kind: crate::mesh::PartKind::CorePart,
                        pattern: self.pattern,
                        labeling: lab.clone(),
                        left: Vec::new(),
                        right: Vec::new(),
                    };
                    let (n, s) = parts.core_pole_words(&t);
                    (labels_to_string(&n), labels_to_string(&s))
                } else {
                    (String::new(), String::new())
                };
                Arrow {
                    kind,
                    from: sig(&frag.left_meridian),
                    to: sig(&frag.right_meridian),
                    pole_north: pn,
                    pole_south: ps,
                    labeling: lab,
                }
            }
        }
    }
}

/// Builds the family graph: timezone arrows for distances 1, 2, 3, 5; part
/// arrows with kind flags for distance 4.
pub fn build_family_graph(distance: u8, pattern: EdgePattern) -> Result<FamilyGraph, MeshError> {
    let mut graph = FamilyGraph {
        distance,
        pattern,
        nodes: Vec::new(),
        arrows: Vec::new(),
        timezones: None,
        parts: None,
    };
    if distance == 4 {
        let parts = enumerate_parts(pattern)?;
        graph.parts = Some(parts);
        let parts = graph.parts.as_ref().unwrap();
        let mut arrows = Vec::new();
        for t in &parts.meridian {
            arrows.push((ArrowKind::MeridianPart, t.labeling.clone()));
        }
        for t in &parts.core {
            arrows.push((ArrowKind::CorePart, t.labeling.clone()));
        }
        for (kind, lab) in arrows {
            let arrow = graph.arrow_from_labeling(kind, lab);
            graph.arrows.push(arrow);
        }
    } else {
        let tz = enumerate_timezone_tilings(distance, pattern)?;
        graph.timezones = Some(tz);
        let labs: Vec<Labeling> = graph
            .timezones
            .as_ref()
            .unwrap()
            .raw
            .iter()
            .map(|t| t.labeling.clone())
            .collect();
        for lab in labs {
            let arrow = graph.arrow_from_labeling(ArrowKind::Timezone, lab);
            graph.arrows.push(arrow);
        }
    }
    let mut nodes: BTreeSet<String> = BTreeSet::new();
    for a in &graph.arrows {
        nodes.insert(a.from.clone());
        nodes.insert(a.to.clone());
    }
    graph.nodes = nodes.into_iter().collect();
    Ok(graph)
}

/// A family: the cycle-supporting arrows of one weakly connected component
/// of the symmetry-reduced family graph.
#[derive(Clone, Debug)]
pub struct Family {
    pub distance: u8,
    pub pattern: EdgePattern,
    /// Signatures in the component, sorted.
    pub nodes: Vec<String>,
    /// Indices into the graph's arrow list: members lying on admissible
    /// cycles.
    pub arrows: Vec<usize>,
    /// Indices of one representative arrow per symmetry orbit of the
    /// members.
    pub reduced_arrows: Vec<usize>,
    /// Sorted (north, south) pole words over the reduced member arrows
    /// (core-part arrows at distance 4, timezone arrows otherwise).
    pub descriptor: Vec<(String, String)>,
}

impl Family {
    /// The distance together with the pole edge-label combinations of the
    /// family's reduced members.
    pub fn pole_descriptor(&self) -> (u8, Vec<(String, String)>) {
        (self.distance, self.descriptor.clone())
    }
}

/// The re-cut of a composable pair of distance-5 strips: the labeling of the
/// strip bounded by the diagonal meridians of `a` and `b`. In template edge
/// ids (left 0..5, right 5..10, interior 10=[B0 G], 11=[G C1], 12=[G H],
/// 13=[D0 H], 14=[H E1]), the diagonal of a strip runs
/// pN, B0, G, H, E1, pS, i.e. edges (0, 10, 12, 14, 9). The re-cut strip
/// reads the diagonal of `b` as its left boundary and the diagonal of `a` as
/// its right; the shared boundary meridian of the pair becomes its interior.
pub fn d5_twist_pair(a: &Labeling, b: &Labeling) -> Labeling {
    let g = |l: &Labeling, e: u32| l.labels[e as usize];
    Labeling {
        pattern: a.pattern,
        labels: vec![
            g(b, 0),
            g(b, 10),
            g(b, 12),
            g(b, 14),
            g(b, 9),
            g(a, 0),
            g(a, 10),
            g(a, 12),
            g(a, 14),
            g(a, 9),
            g(a, 6),
            g(a, 11),
            g(a, 7),
            g(b, 13),
            g(a, 8),
        ],
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.parent[rx.max(ry)] = rx.min(ry);
        }
    }
}

/// Tarjan strongly connected components on a signature digraph.
pub(crate) fn scc(nodes: &[String], edges: &[(usize, usize)]) -> Vec<usize> {
    let n = nodes.len();
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
    }
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut next_index = 0;
    let mut next_comp = 0;

    // Iterative Tarjan: (node, child position).
    for start in 0..n {
        if index[start] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(start, 0)];
        while let Some(&mut (v, ref mut ci)) = call.last_mut() {
            if *ci == 0 {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if *ci < adj[v].len() {
                let w = adj[v][*ci];
                *ci += 1;
                if index[w] == usize::MAX {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                if low[v] == index[v] {
                    while let Some(w) = stack.pop() {
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
                call.pop();
                if let Some(&mut (parent, _)) = call.last_mut() {
                    low[parent] = low[parent].min(low[v]);
                }
            }
        }
    }
    comp
}

/// Classifies the earth map tilings of a distance and pattern into families.
pub fn classify_families(distance: u8, pattern: EdgePattern) -> Result<Vec<Family>, MeshError> {
    let graph = build_family_graph(distance, pattern)?;
    Ok(families_of(&graph))
}

/// Family decomposition of an already built graph.
pub fn families_of(graph: &FamilyGraph) -> Vec<Family> {
    let node_index: BTreeMap<&str, usize> = graph
        .nodes
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let idx = |s: &str| node_index[s];

    // Weak connectivity plus symmetry identification of nodes: every arrow
    // joins its endpoints, and every symmetry image of an arrow joins the
    // source arrow's tail to the image's endpoints.
    let mut uf = UnionFind::new(graph.nodes.len());
    for a in &graph.arrows {
        uf.union(idx(&a.from), idx(&a.to));
    }
    let mut kinds: Vec<ArrowKind> = graph.arrows.iter().map(|a| a.kind).collect();
    kinds.sort_unstable();
    kinds.dedup();
    for kind in kinds {
        let group = graph.action_group(kind);
        for a in graph.arrows.iter().filter(|a| a.kind == kind) {
            for g in &group.elements {
                let image = graph.arrow_from_labeling(kind, a.labeling.apply(g));
                uf.union(idx(&a.from), idx(&image.from));
            }
        }
    }
    // Distance 5 only: the strip decomposition is not canonical (a second,
    // diagonal system of shortest pole-to-pole paths exists), so components
    // whose tilings are related by re-cutting along the diagonals belong to
    // one family. Re-cutting turns each composable arrow pair into a single
    // strip straddling the old boundary; identify accordingly.
    if graph.distance == 5 {
        let arrow_index: BTreeMap<Vec<u8>, usize> = graph
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.labeling.key(), i))
            .collect();
        for a in &graph.arrows {
            for b in &graph.arrows {
                if a.to != b.from {
                    continue;
                }
                let twisted = d5_twist_pair(&a.labeling, &b.labeling);
                let &t = arrow_index
                    .get(&twisted.key())
                    .expect("the re-cut of a valid strip pair is a valid strip");
                uf.union(idx(&a.from), idx(&graph.arrows[t].from));
            }
        }
    }

    // Admissible-cycle support via strongly connected components; at
    // distance 4 on the expanded alternating digraph.
    let on_cycle: Vec<bool> = if graph.distance == 4 {
        // Expanded nodes: (signature, kind of the next arrow to use).
        let mut xnodes: Vec<String> = Vec::new();
        for s in &graph.nodes {
            xnodes.push(format!("{s}|m"));
            xnodes.push(format!("{s}|c"));
        }
        let xidx = |s: &str, kind: ArrowKind| {
            2 * idx(s)
                + match kind {
                    ArrowKind::MeridianPart => 0,
                    ArrowKind::CorePart => 1,
                    ArrowKind::Timezone => unreachable!(),
                }
        };
        let edges: Vec<(usize, usize)> = graph
            .arrows
            .iter()
            .map(|a| match a.kind {
                ArrowKind::MeridianPart => {
                    (xidx(&a.from, ArrowKind::MeridianPart), xidx(&a.to, ArrowKind::CorePart))
                }
                ArrowKind::CorePart => {
                    (xidx(&a.from, ArrowKind::CorePart), xidx(&a.to, ArrowKind::MeridianPart))
                }
                ArrowKind::Timezone => unreachable!(),
            })
            .collect();
        let comp = scc(&xnodes, &edges);
        graph
            .arrows
            .iter()
            .zip(edges.iter())
            .map(|(_, &(u, v))| comp[u] == comp[v])
            .collect()
    } else {
        let edges: Vec<(usize, usize)> = graph
            .arrows
            .iter()
            .map(|a| (idx(&a.from), idx(&a.to)))
            .collect();
        let comp = scc(&graph.nodes, &edges);
        graph
            .arrows
            .iter()
            .map(|a| comp[idx(&a.from)] == comp[idx(&a.to)])
            .collect()
    };

    // Group cycle arrows by component.
    let mut by_component: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, a) in graph.arrows.iter().enumerate() {
        if on_cycle[i] {
            by_component.entry(uf.find(idx(&a.from))).or_default().push(i);
        }
    }

    let mut families = Vec::new();
    for (root, arrows) in by_component {
        let nodes: Vec<String> = graph
            .nodes
            .iter()
            .enumerate()
            .filter(|(i, _)| uf.find(*i) == root)
            .map(|(_, s)| s.clone())
            .collect();
        // One representative per symmetry orbit of the member arrows.
        let mut seen: BTreeSet<(ArrowKind, Vec<u8>)> = BTreeSet::new();
        let mut reduced_arrows = Vec::new();
        for &i in &arrows {
            let key = graph.arrow_canonical_key(&graph.arrows[i]);
            if seen.insert(key) {
                reduced_arrows.push(i);
            }
        }
        let mut descriptor: Vec<(String, String)> = reduced_arrows
            .iter()
            .map(|&i| &graph.arrows[i])
            .filter(|a| a.kind != ArrowKind::MeridianPart)
            .map(|a| (a.pole_north.clone(), a.pole_south.clone()))
            .collect();
        descriptor.sort();
        families.push(Family {
            distance: graph.distance,
            pattern: graph.pattern,
            nodes,
            arrows,
            reduced_arrows,
            descriptor,
        });
    }
    families.sort_by(|a, b| a.nodes.cmp(&b.nodes));
    families
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a4b_has_two_families_at_every_distance() {
        for d in 1..=5 {
            let families = classify_families(d, EdgePattern::A4B).unwrap();
            assert_eq!(families.len(), 2, "distance {d}");
        }
    }

    #[test]
    fn a5_has_one_family_at_every_distance() {
        for d in 1..=5 {
            let families = classify_families(d, EdgePattern::A5).unwrap();
            assert_eq!(families.len(), 1, "distance {d}");
        }
    }

    #[test]
    fn a3bc_has_no_families() {
        for d in 1..=5 {
            let families = classify_families(d, EdgePattern::A3BC).unwrap();
            assert!(families.is_empty(), "distance {d}");
        }
    }

    #[test]
    fn a2b2c_family_counts_match_the_published_classification() {
        let expected = [(1, 2), (2, 3), (3, 3), (4, 2), (5, 2)];
        for (d, want) in expected {
            let families = classify_families(d, EdgePattern::A2B2C).unwrap();
            assert_eq!(families.len(), want, "distance {d}");
        }
    }

    #[test]
    fn a3b2_family_counts_match_the_published_classification() {
        let expected = [(1, 2), (2, 3), (3, 4), (4, 3), (5, 2)];
        for (d, want) in expected {
            let families = classify_families(d, EdgePattern::A3B2).unwrap();
            assert_eq!(families.len(), want, "distance {d}");
        }
    }

    #[test]
    fn a4b_d5_even_graph_structure() {
        // The published graphs depict the arrows that occur in earth map
        // tilings, i.e. those on directed cycles; strips gluable on one side
        // only are excluded.
        let graph = build_family_graph(5, EdgePattern::A4B).unwrap();
        let families = families_of(&graph);
        assert_eq!(families.len(), 2);
        let members: Vec<&Arrow> = families
            .iter()
            .flat_map(|f| f.arrows.iter().map(|&i| &graph.arrows[i]))
            .collect();
        let b_count = |s: &str| s.bytes().filter(|&b| b == b'b').count();
        let mut even_nodes: Vec<&str> = Vec::new();
        for a in members.iter().filter(|a| b_count(&a.from) % 2 == 0) {
            for s in [a.from.as_str(), a.to.as_str()] {
                if !even_nodes.contains(&s) {
                    even_nodes.push(s);
                }
            }
        }
        even_nodes.sort_unstable();
        assert_eq!(
            even_nodes,
            vec!["aaaaa", "aabab", "abaab", "ababa", "baaab", "baaba", "babaa"]
        );
        // Two loops at aaaaa; every other even pair has at most one arrow.
        let mut pair_counts: BTreeMap<(&str, &str), usize> = BTreeMap::new();
        for a in members.iter().filter(|a| b_count(&a.from) % 2 == 0) {
            *pair_counts
                .entry((a.from.as_str(), a.to.as_str()))
                .or_default() += 1;
        }
        for (&(from, to), &count) in &pair_counts {
            if (from, to) == ("aaaaa", "aaaaa") {
                assert_eq!(count, 2);
            } else {
                assert_eq!(count, 1, "{from}->{to}");
            }
        }
        // Odd family: out-degree of aaaba is 4, counting its loop.
        let out_aaaba = members.iter().filter(|a| a.from == "aaaba").count();
        assert_eq!(out_aaaba, 4);
    }
}
