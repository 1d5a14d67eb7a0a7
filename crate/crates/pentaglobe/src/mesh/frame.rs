//! The degree-3 neighborhood fragment: a center pentagon plus its five
//! neighbors, 20 edges in a fixed canonical layout.
//!
//! Canonical ids. Vertices: inner ring `A0..A4 = 0..4`, mid ring
//! `B0..B4 = 5..9`, outer `C0..C4 = 10..14` (`C_i` sits between `B_i` and
//! `B_{i+1}`). Edges: center `c_i = i` joins `A_i A_{i+1}`; spoke `s_i = 5+i`
//! joins `A_i B_i`; outer `o_i^prev = 10+2i` joins `B_i C_i`; outer
//! `o_i^next = 11+2i` joins `C_i B_{i+1}`. Faces: center `P = 0`, neighbor
//! `N_i = 1+i` with boundary `A_i A_{i+1} B_{i+1} C_i B_i`.
//!
//! The canonical labeling order used throughout classification is
//! `c0..c4, s0..s4, o0p, o0n, o1p, o1n, ..., o4p, o4n`.

use super::{Automorphism, EdgeId, FaceId, Fragment, SymmetryGroup, VertexId};
use crate::patterns::EdgeLabel;

pub const FRAME_EDGES: usize = 20;

pub fn center_edge(i: usize) -> EdgeId {
    (i % 5) as EdgeId
}

pub fn spoke(i: usize) -> EdgeId {
    (5 + i % 5) as EdgeId
}

pub fn outer_prev(i: usize) -> EdgeId {
    (10 + 2 * (i % 5)) as EdgeId
}

pub fn outer_next(i: usize) -> EdgeId {
    (11 + 2 * (i % 5)) as EdgeId
}

/// The neighborhood fragment with its order-10 dihedral symmetry group.
#[derive(Clone, Debug)]
pub struct NeighborhoodFrame {
    pub fragment: Fragment,
    pub symmetry: SymmetryGroup,
}

impl NeighborhoodFrame {
    pub const CENTER: FaceId = 0;

    /// Face id of neighbor `N_i`.
    pub fn neighbor(i: usize) -> FaceId {
        (1 + i % 5) as FaceId
    }

    /// Edge shared by the center and neighbor `N_i`.
    pub fn center_edge(&self, i: usize) -> EdgeId {
        center_edge(i)
    }

    /// Edge shared by neighbors `N_i` and `N_{i+1}` (the spoke at `A_{i+1}`).
    pub fn shared_edge(&self, i: usize) -> EdgeId {
        spoke(i + 1)
    }

    /// The two outer edges of neighbor `N_i`.
    pub fn outer_edges(&self, i: usize) -> [EdgeId; 2] {
        [outer_prev(i), outer_next(i)]
    }

    /// Mid-ring boundary vertex `B_i`, shared by neighbors `N_{i-1}` and `N_i`.
    pub fn mid_vertex(&self, i: usize) -> VertexId {
        (5 + i % 5) as VertexId
    }

    /// Outer boundary vertex `C_i` of neighbor `N_i`.
    pub fn outer_vertex(&self, i: usize) -> VertexId {
        (10 + i % 5) as VertexId
    }
}

fn frame_edges_and_faces() -> (Vec<[VertexId; 2]>, Vec<[EdgeId; 5]>) {
    let a = |i: usize| (i % 5) as VertexId;
    let b = |i: usize| (5 + i % 5) as VertexId;
    let c = |i: usize| (10 + i % 5) as VertexId;
    let mut edges = Vec::with_capacity(20);
    for i in 0..5 {
        edges.push([a(i), a(i + 1)]);
    }
    for i in 0..5 {
        edges.push([a(i), b(i)]);
    }
    for i in 0..5 {
        edges.push([b(i), c(i)]);
        edges.push([c(i), b(i + 1)]);
    }
    let mut faces = Vec::with_capacity(6);
    faces.push([0, 1, 2, 3, 4]);
    for i in 0..5 {
        // Walk A_i -> A_{i+1} -> B_{i+1} -> C_i -> B_i -> A_i.
        faces.push([
            center_edge(i),
            spoke(i + 1),
            outer_next(i),
            outer_prev(i),
            spoke(i),
        ]);
    }
    (edges, faces)
}

/// Builds the 6-face, 20-edge, 15-vertex neighborhood fragment.
pub fn build_neighborhood_fragment() -> NeighborhoodFrame {
    let (edges, faces) = frame_edges_and_faces();
    let fragment = Fragment::new(15, edges, faces).expect("frame tables are well formed");

    // Rotation by one step.
    let rot = Automorphism {
        vertices: (0..15)
            .map(|v| match v {
                0..=4 => (v + 1) % 5,
                5..=9 => 5 + (v - 5 + 1) % 5,
                _ => 10 + (v - 10 + 1) % 5,
            } as VertexId)
            .collect(),
        edges: (0..20)
            .map(|e| match e {
                0..=4 => (e + 1) % 5,
                5..=9 => 5 + (e - 5 + 1) % 5,
                _ => {
                    let i = (e - 10) / 2;
                    let kind = (e - 10) % 2;
                    10 + 2 * ((i + 1) % 5) + kind
                }
            } as EdgeId)
            .collect(),
        faces: (0..6)
            .map(|f| if f == 0 { 0 } else { 1 + (f - 1 + 1) % 5 } as FaceId)
            .collect(),
        label_perm: None,
    };
    // Reflection fixing A0: A_i -> A_{-i}, B_i -> B_{-i}, C_i -> C_{-i-1}.
    let neg = |i: usize| (5 - i % 5) % 5;
    let refl = Automorphism {
        vertices: (0..15usize)
            .map(|v| match v {
                0..=4 => neg(v),
                5..=9 => 5 + neg(v - 5),
                _ => 10 + neg(v - 10 + 1),
            } as VertexId)
            .collect(),
        edges: (0..20usize)
            .map(|e| match e {
                0..=4 => neg(e + 1),
                5..=9 => 5 + neg(e - 5),
                _ => {
                    let i = (e - 10) / 2;
                    let kind = (e - 10) % 2;
                    // prev <-> next under reflection.
                    10 + 2 * neg(i + 1) + (1 - kind)
                }
            } as EdgeId)
            .collect(),
        faces: (0..6usize)
            .map(|f| if f == 0 { 0 } else { 1 + neg(f - 1 + 1) } as FaceId)
            .collect(),
        label_perm: None,
    };
    let symmetry = SymmetryGroup::generate(&fragment, vec![rot, refl]);
    assert_eq!(symmetry.order(), 10);
    NeighborhoodFrame { fragment, symmetry }
}

/// The fragment extended so that neighbor `N_i` acquires its own full
/// neighborhood: two new faces `Q` (id 6) and `R` (id 7) close the three
/// boundary vertices of `N_i`.
#[derive(Clone, Debug)]
pub struct PropagationHost {
    pub fragment: Fragment,
    /// The extended neighbor, as a face id.
    pub subject: FaceId,
}

/// Builds the 8-face host used to decide whether neighbor `N_i` can have all
/// its vertices of degree 3. New vertices `u = 15`, `v = 16`, `w = 17`; new
/// edges 20..24; new faces `Q = 6` at the `B_i`/`C_i` corner and `R = 7` at
/// the `C_i`/`B_{i+1}` corner, sharing the new edge `C_i v`.
pub fn propagation_host(i: usize) -> PropagationHost {
    let (mut edges, mut faces) = frame_edges_and_faces();
    let c = |k: usize| (10 + k % 5) as VertexId;
    let (u, v, w) = (15, 16, 17);
    let q1 = 20 as EdgeId; // u - C_{i-1}
    let q2 = 21; // v - u
    let e = 22; // C_i - v
    let r1 = 23; // w - v
    let r2 = 24; // C_{i+1} - w
    edges.push([u, c(i + 4)]);
    edges.push([v, u]);
    edges.push([c(i), v]);
    edges.push([w, v]);
    edges.push([c(i + 1), w]);
    // Q: u -> C_{i-1} -> B_i -> C_i -> v -> u
    faces.push([q1, outer_next(i + 4), outer_prev(i), e, q2]);
    // R: v -> C_i -> B_{i+1} -> C_{i+1} -> w -> v
    faces.push([e, outer_next(i), outer_prev(i + 1), r2, r1]);
    let fragment = Fragment::new(18, edges, faces).expect("propagation host is well formed");
    PropagationHost {
        fragment,
        subject: NeighborhoodFrame::neighbor(i),
    }
}

/// Reads the neighborhood of `center` inside an arbitrary host as a 20-label
/// vector in the canonical frame order, starting from the center face's
/// stored edge cycle. Requires every vertex of `center` to have degree 3 in
/// the host and every bordering face to exist; the labeling must cover all 20
/// edges. The choice of starting edge is immaterial once the result is
/// canonicalized under the frame's dihedral group.
pub fn extract_neighborhood(
    host: &Fragment,
    labels: &[Option<EdgeLabel>],
    center: FaceId,
) -> Option<[EdgeLabel; 20]> {
    let center_edges = *host.face(center);
    let mut spokes = [0 as EdgeId; 5];
    for j in 0..5 {
        let v = host.shared_vertex(center_edges[j], center_edges[(j + 1) % 5])?;
        let incident = host.vertex_edges(v);
        if incident.len() != 3 {
            return None;
        }
        spokes[j] = *incident
            .iter()
            .find(|&&x| x != center_edges[j] && x != center_edges[(j + 1) % 5])?;
    }
    let mut out = [EdgeLabel::A; 20];
    let get = |e: EdgeId| labels[e as usize];
    for j in 0..5 {
        out[j] = get(center_edges[j])?;
        // Spoke s_{j} of the canonical frame sits at A_j, between c_{j-1} and
        // c_j; the spoke computed above at position j sits between c_j and
        // c_{j+1}, so it is canonical s_{j+1}.
        out[5 + (j + 1) % 5] = get(spokes[j])?;
        let nb = host.face_across(center_edges[j], center)?;
        let nb_edges = host.face(nb);
        let s_prev = spokes[(j + 4) % 5];
        let s_next = spokes[j];
        let mut outers = nb_edges
            .iter()
            .copied()
            .filter(|&x| x != center_edges[j] && x != s_prev && x != s_next);
        let o1 = outers.next()?;
        let o2 = outers.next()?;
        if outers.next().is_some() {
            return None;
        }
        let (prev, next) = if host.shared_vertex(o1, s_prev).is_some() {
            (o1, o2)
        } else {
            (o2, o1)
        };
        if host.shared_vertex(prev, s_prev).is_none() || host.shared_vertex(next, s_next).is_none()
        {
            return None;
        }
        out[10 + 2 * j] = get(prev)?;
        out[11 + 2 * j] = get(next)?;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::validate;

    #[test]
    fn frame_counts() {
        let frame = build_neighborhood_fragment();
        let f = &frame.fragment;
        assert_eq!(f.face_count(), 6);
        assert_eq!(f.edge_count(), 20);
        assert_eq!(f.vertex_count(), 15);
        // 5 interior vertices of degree 3, 5 mid-ring boundary vertices of
        // degree 3, 5 outer boundary vertices of degree 2.
        let mut interior3 = 0;
        let mut boundary3 = 0;
        let mut boundary2 = 0;
        for v in 0..15 {
            match (f.is_interior_vertex(v), f.degree(v)) {
                (true, 3) => interior3 += 1,
                (false, 3) => boundary3 += 1,
                (false, 2) => boundary2 += 1,
                other => panic!("unexpected vertex class {other:?}"),
            }
        }
        assert_eq!((interior3, boundary3, boundary2), (5, 5, 5));
        assert!(validate(f, None).all_pass());
    }

    #[test]
    fn each_neighbor_shares_one_edge_with_center_and_adjacent_neighbors() {
        let frame = build_neighborhood_fragment();
        let f = &frame.fragment;
        for i in 0..5 {
            let n = NeighborhoodFrame::neighbor(i);
            let shared_center: Vec<_> = f
                .face(n)
                .iter()
                .filter(|&&e| f.face(0).contains(&e))
                .collect();
            assert_eq!(shared_center.len(), 1);
            let next = NeighborhoodFrame::neighbor(i + 1);
            let shared_next: Vec<_> = f
                .face(n)
                .iter()
                .filter(|&&e| f.face(next).contains(&e))
                .collect();
            assert_eq!(shared_next.len(), 1);
        }
    }

    #[test]
    fn boundary_is_the_ten_outer_edges() {
        // Traced on the incidence structure: the unbounded region is bordered
        // by the ten outer edges only, through the ten boundary vertices.
        let frame = build_neighborhood_fragment();
        let boundary = frame.fragment.boundary_edges();
        assert_eq!(boundary.len(), 10);
        assert!(boundary.iter().all(|&e| e >= 10));
        // They chain into a single closed walk through B and C vertices.
        let mut verts = std::collections::BTreeSet::new();
        for &e in boundary {
            let [u, v] = frame.fragment.edge(e);
            verts.insert(u);
            verts.insert(v);
        }
        assert_eq!(verts.len(), 10);
        assert!(verts.iter().all(|&v| v >= 5));
    }

    #[test]
    fn dihedral_group_has_order_10_and_verifies() {
        let frame = build_neighborhood_fragment();
        assert_eq!(frame.symmetry.order(), 10);
        for el in &frame.symmetry.elements {
            assert!(el.is_automorphism_of(&frame.fragment));
        }
    }

    #[test]
    fn propagation_hosts_are_valid() {
        for i in 0..5 {
            let host = propagation_host(i);
            assert_eq!(host.fragment.face_count(), 8);
            assert_eq!(host.fragment.edge_count(), 25);
            assert!(validate(&host.fragment, None).all_pass());
            // The subject's five vertices now all have degree 3.
            let verts = host.fragment.face_vertices(host.subject);
            for v in verts {
                assert_eq!(host.fragment.degree(v), 3);
            }
        }
    }

    #[test]
    fn extraction_on_the_frame_itself_roundtrips() {
        let frame = build_neighborhood_fragment();
        // Label edge e with label (e mod 3) and check extraction starts from
        // the stored cycle: c0..c4 must come back in order.
        let labels: Vec<Option<EdgeLabel>> = (0..20)
            .map(|e| Some(EdgeLabel::ALL[e % 3]))
            .collect();
        let vec = extract_neighborhood(&frame.fragment, &labels, 0).unwrap();
        for (e, &label) in vec.iter().enumerate() {
            assert_eq!(label, EdgeLabel::ALL[e % 3]);
        }
    }
}
