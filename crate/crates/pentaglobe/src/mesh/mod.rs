//! Pure combinatorial pentagonal complexes.
//!
//! A [`Fragment`] stores vertices, edges (unordered vertex pairs, parallel
//! edges allowed) and faces (cyclic sequences of exactly five edges). No
//! geometry is attached. Closed earth map meshes reuse the same type with an
//! empty boundary.

mod frame;
mod globe;
mod template;

pub use frame::{
    build_neighborhood_fragment, extract_neighborhood, propagation_host, NeighborhoodFrame,
    PropagationHost, FRAME_EDGES,
};
pub use globe::{build_earth_map, min_timezones, EarthMap};
pub use template::{
    build_timezone_template, part_subfragment, EdgeClass, PartFragment, PartKind,
    TimezoneTemplate, VertexClass,
};

use serde::Serialize;
use std::collections::BTreeSet;

pub type VertexId = u32;
pub type EdgeId = u32;
pub type FaceId = u32;

#[derive(Debug, thiserror::Error)]
pub enum MeshError {
    #[error("face {0} is not a closed pentagon walk")]
    BadFace(FaceId),
    #[error("edge {0} borders {1} faces")]
    BadEdgeFaceCount(EdgeId, usize),
    #[error("distance {0} out of range 1..=5")]
    BadDistance(u8),
    #[error("timezone count {got} below the minimum {min} for distance {distance}")]
    TooFewTimezones { distance: u8, got: u32, min: u32 },
}

/// A pentagonal complex: faces are cyclic 5-edge walks, edges border one or
/// two faces. Instances are immutable after construction.
#[derive(Clone, Debug)]
pub struct Fragment {
    vertex_count: usize,
    edges: Vec<[VertexId; 2]>,
    faces: Vec<[EdgeId; 5]>,
    edge_faces: Vec<(Option<FaceId>, Option<FaceId>)>,
    vertex_edges: Vec<Vec<EdgeId>>,
    boundary: Vec<EdgeId>,
}

impl Fragment {
    /// Builds the derived incidence data. Fails if a face is not a closed
    /// pentagon walk or an edge borders more than two faces.
    pub fn new(
        vertex_count: usize,
        edges: Vec<[VertexId; 2]>,
        faces: Vec<[EdgeId; 5]>,
    ) -> Result<Fragment, MeshError> {
        let mut edge_faces: Vec<(Option<FaceId>, Option<FaceId>)> = vec![(None, None); edges.len()];
        for (f, face) in faces.iter().enumerate() {
            if face_vertex_cycle(&edges, face).is_none() {
                return Err(MeshError::BadFace(f as FaceId));
            }
            for &e in face {
                let slot = &mut edge_faces[e as usize];
                match slot {
                    (None, _) => slot.0 = Some(f as FaceId),
                    (Some(_), None) => slot.1 = Some(f as FaceId),
                    _ => return Err(MeshError::BadEdgeFaceCount(e, 3)),
                }
            }
        }
        let mut vertex_edges = vec![Vec::new(); vertex_count];
        for (e, &[u, v]) in edges.iter().enumerate() {
            vertex_edges[u as usize].push(e as EdgeId);
            vertex_edges[v as usize].push(e as EdgeId);
        }
        let boundary = edge_faces
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| a.is_some() && b.is_none())
            .map(|(e, _)| e as EdgeId)
            .collect();
        Ok(Fragment {
            vertex_count,
            edges,
            faces,
            edge_faces,
            vertex_edges,
            boundary,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edge(&self, e: EdgeId) -> [VertexId; 2] {
        self.edges[e as usize]
    }

    pub fn face(&self, f: FaceId) -> &[EdgeId; 5] {
        &self.faces[f as usize]
    }

    pub fn faces(&self) -> &[[EdgeId; 5]] {
        &self.faces
    }

    pub fn edges(&self) -> &[[VertexId; 2]] {
        &self.edges
    }

    /// The one or two faces bordering an edge.
    pub fn edge_faces(&self, e: EdgeId) -> (Option<FaceId>, Option<FaceId>) {
        self.edge_faces[e as usize]
    }

    /// The face on the other side of `e` from `f`, if any.
    pub fn face_across(&self, e: EdgeId, f: FaceId) -> Option<FaceId> {
        match self.edge_faces[e as usize] {
            (Some(x), Some(y)) if x == f => Some(y),
            (Some(x), Some(y)) if y == f => Some(x),
            _ => None,
        }
    }

    pub fn vertex_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.vertex_edges[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.vertex_edges[v as usize].len()
    }

    /// Edges bordering exactly one face, in id order.
    pub fn boundary_edges(&self) -> &[EdgeId] {
        &self.boundary
    }

    pub fn is_closed(&self) -> bool {
        self.boundary.is_empty()
    }

    /// Interior vertices: those not incident to any boundary edge.
    pub fn is_interior_vertex(&self, v: VertexId) -> bool {
        self.vertex_edges[v as usize]
            .iter()
            .all(|&e| self.edge_faces[e as usize].1.is_some())
    }

    /// The vertices of face `f` in cyclic order aligned with its edge list:
    /// `vertices[i]` is shared by `edges[i.wrapping_sub(1) mod 5]` and `edges[i]`.
    pub fn face_vertices(&self, f: FaceId) -> [VertexId; 5] {
        face_vertex_cycle(&self.edges, &self.faces[f as usize]).expect("validated at construction")
    }

    /// The vertex shared by two edges, if any.
    pub fn shared_vertex(&self, e1: EdgeId, e2: EdgeId) -> Option<VertexId> {
        let [a, b] = self.edge(e1);
        let [c, d] = self.edge(e2);
        if a == c || a == d {
            Some(a)
        } else if b == c || b == d {
            Some(b)
        } else {
            None
        }
    }
}

/// Reconstructs the vertex cycle of a 5-edge face walk; `None` if the edges
/// do not chain into a closed walk of 5 distinct vertices and edges.
fn face_vertex_cycle(edges: &[[VertexId; 2]], face: &[EdgeId; 5]) -> Option<[VertexId; 5]> {
    let distinct: BTreeSet<_> = face.iter().collect();
    if distinct.len() != 5 {
        return None;
    }
    // The vertex at position i joins edge i-1 and edge i.
    let mut verts = [0; 5];
    for i in 0..5 {
        let prev = edges[face[(i + 4) % 5] as usize];
        let cur = edges[face[i] as usize];
        let v = if prev.contains(&cur[0]) { cur[0] } else { cur[1] };
        if !prev.contains(&v) {
            return None;
        }
        verts[i] = v;
    }
    // Walk consistency: edge i must join verts[i] and verts[i+1].
    for i in 0..5 {
        let cur = edges[face[i] as usize];
        let mut pair = [verts[i], verts[(i + 1) % 5]];
        pair.sort_unstable();
        let mut cur_sorted = cur;
        cur_sorted.sort_unstable();
        if pair != cur_sorted {
            return None;
        }
    }
    let distinct_verts: BTreeSet<_> = verts.iter().collect();
    if distinct_verts.len() != 5 {
        return None;
    }
    Some(verts)
}

/// A permutation automorphism of a fragment, optionally combined with a
/// permutation of the label alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub faces: Vec<FaceId>,
    /// Images of (a, b, c) when the element carries a label swap.
    pub label_perm: Option<[crate::patterns::EdgeLabel; 3]>,
}

impl Automorphism {
    pub fn identity(fragment: &Fragment) -> Automorphism {
        Automorphism {
            vertices: (0..fragment.vertex_count() as VertexId).collect(),
            edges: (0..fragment.edge_count() as EdgeId).collect(),
            faces: (0..fragment.face_count() as FaceId).collect(),
            label_perm: None,
        }
    }

    /// `self` after `other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let map_labels = match (&self.label_perm, &other.label_perm) {
            (None, None) => None,
            (Some(p), None) => Some(*p),
            (None, Some(q)) => Some(*q),
            (Some(p), Some(q)) => {
                let mut out = *q;
                for slot in out.iter_mut() {
                    *slot = p[*slot as usize];
                }
                Some(out)
            }
        };
        Automorphism {
            vertices: other.vertices.iter().map(|&v| self.vertices[v as usize]).collect(),
            edges: other.edges.iter().map(|&e| self.edges[e as usize]).collect(),
            faces: other.faces.iter().map(|&f| self.faces[f as usize]).collect(),
            label_perm: map_labels,
        }
    }

    /// Checks that the element maps edges to edges and faces to faces
    /// preserving all incidences.
    pub fn is_automorphism_of(&self, fragment: &Fragment) -> bool {
        if self.vertices.len() != fragment.vertex_count()
            || self.edges.len() != fragment.edge_count()
            || self.faces.len() != fragment.face_count()
        {
            return false;
        }
        for (e, &[u, v]) in fragment.edges().iter().enumerate() {
            let img = fragment.edge(self.edges[e]);
            let mut want = [self.vertices[u as usize], self.vertices[v as usize]];
            want.sort_unstable();
            let mut got = img;
            got.sort_unstable();
            if want != got {
                return false;
            }
        }
        for (f, face) in fragment.faces().iter().enumerate() {
            let img = fragment.face(self.faces[f]);
            let want: BTreeSet<EdgeId> = face.iter().map(|&e| self.edges[e as usize]).collect();
            let got: BTreeSet<EdgeId> = img.iter().copied().collect();
            if want != got {
                return false;
            }
        }
        true
    }
}

/// A finite group of automorphisms, closed, identity first.
#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    pub elements: Vec<Automorphism>,
}

impl SymmetryGroup {
    pub fn trivial(fragment: &Fragment) -> SymmetryGroup {
        SymmetryGroup {
            elements: vec![Automorphism::identity(fragment)],
        }
    }

    /// Closes the generator set under composition. Every generator is checked
    /// against the fragment's incidence structure.
    pub fn generate(fragment: &Fragment, generators: Vec<Automorphism>) -> SymmetryGroup {
        for g in &generators {
            assert!(
                g.is_automorphism_of(fragment),
                "generator is not an automorphism"
            );
        }
        let id = Automorphism::identity(fragment);
        let mut elements = vec![id];
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            let base = elements[i].clone();
            for g in &generators {
                let next = g.compose(&base);
                if !elements.contains(&next) {
                    elements.push(next);
                    frontier.push(elements.len() - 1);
                }
            }
        }
        elements.sort_by(|x, y| (x.edges.as_slice(), &x.label_perm).cmp(&(y.edges.as_slice(), &y.label_perm)));
        // Keep identity first for readability.
        let id = Automorphism::identity(fragment);
        if let Some(pos) = elements.iter().position(|e| *e == id) {
            elements.swap(0, pos);
        }
        SymmetryGroup { elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Extends the group with the a/b label swap attached to every element,
    /// doubling the order.
    pub fn with_ab_swap(&self) -> SymmetryGroup {
        use crate::patterns::EdgeLabel::{A, B, C};
        let mut elements = self.elements.clone();
        for el in &self.elements {
            let mut sw = el.clone();
            sw.label_perm = Some(match el.label_perm {
                None => [B, A, C],
                Some(p) => [p[1], p[0], p[2]],
            });
            elements.push(sw);
        }
        SymmetryGroup { elements }
    }
}

/// One validation check outcome.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationEntry {
    pub check: String,
    pub pass: bool,
    /// Ids of offending vertices/edges/faces, when a check fails.
    pub offenders: Vec<u32>,
}

/// Report listing each structural invariant with pass/fail.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub entries: Vec<ValidationEntry>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

/// Structural validation common to fragments and closed meshes.
///
/// Failures are report entries, never panics. `expect_closed` additionally
/// runs the earth map checks: exactly two poles, pole degrees, Euler count,
/// the degree census, and tile count.
pub fn validate(fragment: &Fragment, earth_map: Option<&EarthMap>) -> ValidationReport {
    let mut entries = Vec::new();
    let mut push = |check: &str, pass: bool, offenders: Vec<u32>| {
        entries.push(ValidationEntry {
            check: check.to_string(),
            pass,
            offenders,
        });
    };

    // Every face is a closed pentagon walk of distinct edges and vertices.
    let mut bad = Vec::new();
    for f in 0..fragment.face_count() {
        if face_vertex_cycle(fragment.edges(), fragment.face(f as FaceId)).is_none() {
            bad.push(f as u32);
        }
    }
    push("faces_are_pentagon_walks", bad.is_empty(), bad);

    // Every edge borders one or two faces; closed meshes: exactly two.
    let mut bad = Vec::new();
    for e in 0..fragment.edge_count() {
        let (a, b) = fragment.edge_faces(e as EdgeId);
        let n = a.iter().count() + b.iter().count();
        let ok = if earth_map.is_some() { n == 2 } else { n == 1 || n == 2 };
        if !ok {
            bad.push(e as u32);
        }
    }
    push("edges_border_one_or_two_faces", bad.is_empty(), bad);

    // Face adjacency graph is connected.
    let connected = {
        let n = fragment.face_count();
        if n == 0 {
            true
        } else {
            let mut seen = vec![false; n];
            let mut stack = vec![0 as FaceId];
            seen[0] = true;
            while let Some(f) = stack.pop() {
                for &e in fragment.face(f) {
                    if let Some(g) = fragment.face_across(e, f) {
                        if !seen[g as usize] {
                            seen[g as usize] = true;
                            stack.push(g);
                        }
                    }
                }
            }
            seen.iter().all(|&s| s)
        }
    };
    push("face_adjacency_connected", connected, Vec::new());

    match earth_map {
        None => {
            // Interior vertices have degree exactly 3 (poles never occur in
            // open fragments built by this crate).
            let mut bad = Vec::new();
            for v in 0..fragment.vertex_count() as VertexId {
                if fragment.is_interior_vertex(v) && fragment.degree(v) != 3 {
                    bad.push(v);
                }
            }
            push("interior_vertices_have_degree_3", bad.is_empty(), bad);
        }
        Some(em) => {
            let high: Vec<u32> = (0..fragment.vertex_count() as VertexId)
                .filter(|&v| fragment.degree(v) > 3)
                .collect();
            push(
                "exactly_two_vertices_of_degree_above_3",
                high.len() == 2 && high.iter().all(|v| em.poles.contains(v)),
                high.clone(),
            );

            let want = if em.distance == 5 {
                em.timezones as usize
            } else {
                3 * em.timezones as usize
            };
            let pole_degrees: Vec<usize> =
                em.poles.iter().map(|&p| fragment.degree(p)).collect();
            push(
                "pole_degrees_match_timezone_count",
                pole_degrees.iter().all(|&d| d == want),
                em.poles.to_vec(),
            );

            let v = fragment.vertex_count() as i64;
            let e = fragment.edge_count() as i64;
            let f = fragment.face_count() as i64;
            push("euler_identity", v - e + f == 2, Vec::new());
            push("edge_face_ratio", 2 * e == 5 * f, Vec::new());

            // v3 = 20 + sum_{i>=4} (3i-10) v_i
            let mut counts = std::collections::BTreeMap::new();
            for vv in 0..fragment.vertex_count() as VertexId {
                *counts.entry(fragment.degree(vv)).or_insert(0i64) += 1;
            }
            let v3 = counts.get(&3).copied().unwrap_or(0);
            let rhs: i64 = 20
                + counts
                    .iter()
                    .filter(|(deg, _)| **deg >= 4)
                    .map(|(deg, n)| (3 * *deg as i64 - 10) * n)
                    .sum::<i64>();
            let min_degree_ok = counts.keys().all(|&d| d >= 3);
            push("all_vertex_degrees_at_least_3", min_degree_ok, Vec::new());
            push("degree_census_identity", v3 == rhs, Vec::new());
            push("more_than_12_tiles", f > 12, Vec::new());
        }
    }

    ValidationReport { entries }
}

#[derive(Serialize)]
struct FragmentJson {
    vertices: Vec<u32>,
    edges: Vec<(u32, u32, u32)>,
    faces: Vec<(u32, [u32; 5])>,
    #[serde(skip_serializing_if = "Option::is_none")]
    boundary: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    poles: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    meridians: Option<Vec<Vec<u32>>>,
}

/// JSON form of a fragment or closed mesh, with fixed field names.
pub fn fragment_to_json(fragment: &Fragment, earth_map: Option<&EarthMap>) -> serde_json::Value {
    let json = FragmentJson {
        vertices: (0..fragment.vertex_count() as u32).collect(),
        edges: fragment
            .edges()
            .iter()
            .enumerate()
            .map(|(i, &[u, v])| (i as u32, u, v))
            .collect(),
        faces: fragment
            .faces()
            .iter()
            .enumerate()
            .map(|(i, f)| (i as u32, *f))
            .collect(),
        boundary: if fragment.is_closed() {
            None
        } else {
            Some(fragment.boundary_edges().to_vec())
        },
        poles: earth_map.map(|em| em.poles.to_vec()),
        meridians: earth_map.map(|em| em.meridians.clone()),
    };
    serde_json::to_value(json).expect("fragment serialization cannot fail")
}
