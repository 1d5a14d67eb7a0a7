//! Closed earth map meshes: `n` timezone copies glued in a ring with two
//! poles, plus their symmetry groups as explicit permutations.
//!
//! Global id scheme for `n` copies of a distance-`d` template with `IE`
//! interior edges, `IV` interior vertices and `F` faces:
//! * edge `k*d + pos` — boundary meridian `k` (left boundary of copy `k`),
//!   position `pos` north to south;
//! * edge `n*d + k*IE + j` — interior edge `j` of copy `k`;
//! * vertex 0 / 1 — north / south pole; `2 + k*(d-1) + pos` — meridian `k`
//!   interior vertex; `2 + n*(d-1) + k*IV + v` — interior vertex of copy `k`;
//! * face `k*F + f` — face `f` of copy `k`.

use super::template::{build_timezone_template, EdgeClass, TemplateMap, VertexClass};
use super::{
    Automorphism, EdgeId, FaceId, Fragment, MeshError, SymmetryGroup, TimezoneTemplate, VertexId,
};

/// The smallest legal timezone count: pole degree must exceed 3 and the tile
/// count must exceed 12 (this also excludes the dodecahedron).
pub fn min_timezones(distance: u8) -> u32 {
    if distance == 5 {
        4
    } else {
        2
    }
}

/// A closed earth map mesh together with its timezone decomposition and
/// generated symmetry group.
#[derive(Clone, Debug)]
pub struct EarthMap {
    pub mesh: Fragment,
    pub distance: u8,
    pub timezones: u32,
    pub poles: [VertexId; 2],
    /// Boundary meridians, north to south, indexed by timezone (meridian `k`
    /// is the left boundary of timezone `k`).
    pub meridians: Vec<Vec<EdgeId>>,
    /// Face -> (timezone index, template face id).
    pub decomposition: Vec<(u32, FaceId)>,
    pub symmetry: SymmetryGroup,
    template: TimezoneTemplate,
}

impl EarthMap {
    pub fn template(&self) -> &TimezoneTemplate {
        &self.template
    }

    fn dims(&self) -> Dims {
        Dims::of(&self.template, self.timezones as usize)
    }

    /// Global id of a template edge instantiated in timezone `k`.
    pub fn template_edge(&self, k: usize, template_edge: EdgeId) -> EdgeId {
        self.dims().map_edge(&self.template, k, template_edge)
    }

    /// Global face id of template face `f` in timezone `k`.
    pub fn template_face(&self, k: usize, f: FaceId) -> FaceId {
        (k * self.template.fragment.face_count()) as FaceId + f
    }

    /// The labels of a closed labeling along boundary meridian `k`, north to
    /// south.
    pub fn meridian_edges(&self, k: usize) -> &[EdgeId] {
        &self.meridians[k]
    }
}

struct Dims {
    n: usize,
    d: usize,
    ie: usize,
    iv: usize,
}

impl Dims {
    fn of(t: &TimezoneTemplate, n: usize) -> Dims {
        Dims {
            n,
            d: t.distance as usize,
            ie: t.fragment.edge_count() - 2 * t.distance as usize,
            iv: t
                .vertex_class
                .iter()
                .filter(|c| matches!(c, VertexClass::Interior))
                .count(),
        }
    }

    fn mer_edge(&self, k: usize, pos: usize) -> EdgeId {
        ((k % self.n) * self.d + pos) as EdgeId
    }

    fn int_edge(&self, k: usize, local: usize) -> EdgeId {
        (self.n * self.d + (k % self.n) * self.ie + local) as EdgeId
    }

    fn mer_vertex(&self, k: usize, pos: usize) -> VertexId {
        (2 + (k % self.n) * (self.d - 1) + pos) as VertexId
    }

    fn int_vertex(&self, k: usize, v: usize) -> VertexId {
        (2 + self.n * (self.d - 1) + (k % self.n) * self.iv + v) as VertexId
    }

    fn map_edge(&self, t: &TimezoneTemplate, k: usize, e: EdgeId) -> EdgeId {
        match t.edge_class[e as usize] {
            EdgeClass::Left(pos) => self.mer_edge(k, pos as usize),
            EdgeClass::Right(pos) => self.mer_edge(k + 1, pos as usize),
            EdgeClass::Interior => self.int_edge(k, e as usize - 2 * self.d),
        }
    }

    fn map_vertex(&self, t: &TimezoneTemplate, k: usize, v: VertexId) -> VertexId {
        match t.vertex_class[v as usize] {
            VertexClass::PoleNorth => 0,
            VertexClass::PoleSouth => 1,
            VertexClass::Left(pos) => self.mer_vertex(k, pos as usize),
            VertexClass::Right(pos) => self.mer_vertex(k + 1, pos as usize),
            VertexClass::Interior => self.int_vertex(k, v as usize),
        }
    }
}

/// Builds the closed earth map mesh with `n` timezones at the given distance.
pub fn build_earth_map(distance: u8, n: u32) -> Result<EarthMap, MeshError> {
    let template = build_timezone_template(distance)?;
    let min = min_timezones(distance);
    if n < min {
        return Err(MeshError::TooFewTimezones {
            distance,
            got: n,
            min,
        });
    }
    let nn = n as usize;
    let dims = Dims::of(&template, nn);
    let d = dims.d;

    let vertex_count = 2 + nn * (d - 1) + nn * dims.iv;
    let edge_count = nn * d + nn * dims.ie;
    let mut edges: Vec<[VertexId; 2]> = vec![[0, 0]; edge_count];
    for k in 0..nn {
        // Meridian k built from the template's left boundary in copy k.
        for (pos, &te) in template.left_meridian.iter().enumerate() {
            let [u, v] = template.fragment.edge(te);
            edges[dims.mer_edge(k, pos) as usize] = [
                dims.map_vertex(&template, k, u),
                dims.map_vertex(&template, k, v),
            ];
        }
        for te in 0..template.fragment.edge_count() {
            if template.edge_class[te] == EdgeClass::Interior {
                let [u, v] = template.fragment.edge(te as EdgeId);
                edges[dims.int_edge(k, te - 2 * d) as usize] = [
                    dims.map_vertex(&template, k, u),
                    dims.map_vertex(&template, k, v),
                ];
            }
        }
    }
    let mut faces: Vec<[EdgeId; 5]> = Vec::with_capacity(nn * template.fragment.face_count());
    let mut decomposition = Vec::with_capacity(nn * template.fragment.face_count());
    for k in 0..nn {
        for (f, face) in template.fragment.faces().iter().enumerate() {
            let mut out = [0; 5];
            for (i, &e) in face.iter().enumerate() {
                out[i] = dims.map_edge(&template, k, e);
            }
            faces.push(out);
            decomposition.push((k as u32, f as FaceId));
        }
    }
    let mesh = Fragment::new(vertex_count, edges, faces)?;
    let meridians = (0..nn)
        .map(|k| (0..d).map(|pos| dims.mer_edge(k, pos)).collect())
        .collect();

    let symmetry = closed_symmetry(&template, &mesh, &dims);
    Ok(EarthMap {
        mesh,
        distance,
        timezones: n,
        poles: [0, 1],
        meridians,
        decomposition,
        symmetry,
        template,
    })
}

fn closed_symmetry(t: &TimezoneTemplate, mesh: &Fragment, dims: &Dims) -> SymmetryGroup {
    let mut generators = vec![shift_generator(t, dims)];
    if let Some(v) = &t.map_v {
        generators.push(per_copy_generator(t, dims, v));
    }
    if let Some(rho) = &t.map_rho {
        generators.push(reversing_generator(t, dims, rho));
    }
    if t.distance == 5 {
        generators.push(d5_twist_generator(t, dims));
    }
    if let Some(h) = &t.map_h {
        generators.push(d1_h_generator(t, dims, h));
    }
    if t.parts.is_some() {
        generators.push(d4_h_generator(t, dims));
    }
    SymmetryGroup::generate(mesh, generators)
}

fn shift_generator(t: &TimezoneTemplate, dims: &Dims) -> Automorphism {
    let (n, d) = (dims.n, dims.d);
    let vertices = (0..2 + n * (d - 1) + n * dims.iv)
        .map(|v| {
            if v < 2 {
                v as VertexId
            } else if v < 2 + n * (d - 1) {
                let k = (v - 2) / (d - 1);
                let pos = (v - 2) % (d - 1);
                dims.mer_vertex(k + 1, pos)
            } else {
                let rest = v - 2 - n * (d - 1);
                let k = rest / dims.iv;
                dims.int_vertex(k + 1, rest % dims.iv)
            }
        })
        .collect();
    let edges = (0..n * d + n * dims.ie)
        .map(|e| {
            if e < n * d {
                dims.mer_edge(e / d + 1, e % d)
            } else {
                let rest = e - n * d;
                dims.int_edge(rest / dims.ie + 1, rest % dims.ie)
            }
        })
        .collect();
    let fc = t.fragment.face_count();
    let faces = (0..n * fc)
        .map(|f| (((f / fc + 1) % n) * fc + f % fc) as FaceId)
        .collect();
    Automorphism {
        vertices,
        edges,
        faces,
        label_perm: None,
    }
}

/// North/south mirror acting within every copy (distances 1, 2, 4).
fn per_copy_generator(t: &TimezoneTemplate, dims: &Dims, map: &TemplateMap) -> Automorphism {
    let (n, d) = (dims.n, dims.d);
    let vertices = (0..2 + n * (d - 1) + n * dims.iv)
        .map(|v| {
            if v < 2 {
                (1 - v) as VertexId
            } else if v < 2 + n * (d - 1) {
                let k = (v - 2) / (d - 1);
                let pos = (v - 2) % (d - 1);
                dims.mer_vertex(k, d - 2 - pos)
            } else {
                let rest = v - 2 - n * (d - 1);
                let k = rest / dims.iv;
                dims.int_vertex(k, map.vertices[rest % dims.iv] as usize)
            }
        })
        .collect();
    let edges = (0..n * d + n * dims.ie)
        .map(|e| {
            if e < n * d {
                dims.mer_edge(e / d, d - 1 - e % d)
            } else {
                let rest = e - n * d;
                let k = rest / dims.ie;
                let local = rest % dims.ie + 2 * d;
                dims.int_edge(k, map.edges[local] as usize - 2 * d)
            }
        })
        .collect();
    let fc = t.fragment.face_count();
    let faces = (0..n * fc)
        .map(|f| ((f / fc) * fc) as FaceId + map.faces[f % fc])
        .collect();
    Automorphism {
        vertices,
        edges,
        faces,
        label_perm: None,
    }
}

/// 180 degree rotation: copy `k` maps to copy `-k-1`, meridian `j` to
/// meridian `-j` with positions reversed (distances 3 and 5).
fn reversing_generator(t: &TimezoneTemplate, dims: &Dims, map: &TemplateMap) -> Automorphism {
    let (n, d) = (dims.n, dims.d);
    let rev_copy = |k: usize| (2 * n - 1 - k) % n;
    let rev_mer = |j: usize| (n - j % n) % n;
    let vertices = (0..2 + n * (d - 1) + n * dims.iv)
        .map(|v| {
            if v < 2 {
                (1 - v) as VertexId
            } else if v < 2 + n * (d - 1) {
                let j = (v - 2) / (d - 1);
                let pos = (v - 2) % (d - 1);
                dims.mer_vertex(rev_mer(j), d - 2 - pos)
            } else {
                let rest = v - 2 - n * (d - 1);
                let k = rest / dims.iv;
                dims.int_vertex(rev_copy(k), map.vertices[rest % dims.iv] as usize)
            }
        })
        .collect();
    let edges = (0..n * d + n * dims.ie)
        .map(|e| {
            if e < n * d {
                dims.mer_edge(rev_mer(e / d), d - 1 - e % d)
            } else {
                let rest = e - n * d;
                let k = rest / dims.ie;
                let local = rest % dims.ie + 2 * d;
                dims.int_edge(rev_copy(k), map.edges[local] as usize - 2 * d)
            }
        })
        .collect();
    let fc = t.fragment.face_count();
    let faces = (0..n * fc)
        .map(|f| (rev_copy(f / fc) * fc) as FaceId + map.faces[f % fc])
        .collect();
    Automorphism {
        vertices,
        edges,
        faces,
        label_perm: None,
    }
}

/// The re-cutting reflection for distance 5. Besides the boundary meridians,
/// the closed tiling has a second system of shortest pole-to-pole paths,
/// running diagonally through each timezone's interior; this pole-fixing
/// reflection exchanges the two systems (and is the reason the strip
/// decomposition is not canonical at distance 5).
fn d5_twist_generator(t: &TimezoneTemplate, dims: &Dims) -> Automorphism {
    // Template locals at distance 5: interior vertices G=0, H=1; interior
    // edges (local index = id - 10): 0=[B0 G], 1=[G C1], 2=[G H], 3=[D0 H],
    // 4=[H E1]; meridian vertices pos 0..3 = B, C, D, E; faces 0..3 =
    // north, core-north, core-south, south.
    let (n, d) = (dims.n, dims.d);
    let neg = |k: usize| (n - k % n) % n;
    let neg1 = |k: usize| (2 * n - 1 - k % n) % n; // -k-1
    let one_minus = |k: usize| (2 * n + 1 - k % n) % n;
    let vertices = (0..2 + n * (d - 1) + n * dims.iv)
        .map(|v| {
            if v < 2 {
                v as VertexId
            } else if v < 2 + n * (d - 1) {
                let k = (v - 2) / (d - 1);
                match (v - 2) % (d - 1) {
                    0 => dims.mer_vertex(neg(k), 0),
                    1 => dims.int_vertex(neg(k), 0),
                    2 => dims.int_vertex(neg(k), 1),
                    _ => dims.mer_vertex(one_minus(k), 3),
                }
            } else {
                let rest = v - 2 - n * (d - 1);
                let k = rest / dims.iv;
                match rest % dims.iv {
                    0 => dims.mer_vertex(neg(k), 1),
                    _ => dims.mer_vertex(neg(k), 2),
                }
            }
        })
        .collect();
    let edges = (0..n * d + n * dims.ie)
        .map(|e| {
            if e < n * d {
                let k = e / d;
                match e % d {
                    0 => dims.mer_edge(neg(k), 0),
                    1 => dims.int_edge(neg(k), 0),
                    2 => dims.int_edge(neg(k), 2),
                    3 => dims.int_edge(neg(k), 4),
                    _ => dims.mer_edge(one_minus(k), 4),
                }
            } else {
                let rest = e - n * d;
                let k = rest / dims.ie;
                match rest % dims.ie {
                    0 => dims.mer_edge(neg(k), 1),
                    1 => dims.int_edge(neg1(k), 1),
                    2 => dims.mer_edge(neg(k), 2),
                    3 => dims.int_edge(neg(k), 3),
                    _ => dims.mer_edge(neg(k), 3),
                }
            }
        })
        .collect();
    let fc = t.fragment.face_count();
    let faces = (0..n * fc)
        .map(|f| {
            let k = f / fc;
            match f % fc {
                0 => (neg1(k) * fc) as FaceId,
                1 => (neg(k) * fc + 1) as FaceId,
                2 => (neg1(k) * fc + 2) as FaceId,
                _ => (neg(k) * fc + 3) as FaceId,
            }
        })
        .collect();
    Automorphism {
        vertices,
        edges,
        faces,
        label_perm: None,
    }
}

/// East/west mirror for distance 1: copy `k` maps to copy `-k`, meridian `j`
/// to meridian `1-j`, poles fixed.
fn d1_h_generator(t: &TimezoneTemplate, dims: &Dims, map: &TemplateMap) -> Automorphism {
    let n = dims.n;
    let vertices = (0..2 + n * dims.iv)
        .map(|v| {
            if v < 2 {
                v as VertexId
            } else {
                let rest = v - 2;
                let k = rest / dims.iv;
                dims.int_vertex((n - k) % n, map.vertices[rest % dims.iv] as usize)
            }
        })
        .collect();
    let edges = (0..n + n * dims.ie)
        .map(|e| {
            if e < n {
                dims.mer_edge((n + 1 - e) % n, 0)
            } else {
                let rest = e - n;
                let k = rest / dims.ie;
                let local = rest % dims.ie + 2;
                dims.int_edge((n - k) % n, map.edges[local] as usize - 2)
            }
        })
        .collect();
    let fc = t.fragment.face_count();
    let faces = (0..n * fc)
        .map(|f| (((n - f / fc) % n) * fc) as FaceId + map.faces[f % fc])
        .collect();
    Automorphism {
        vertices,
        edges,
        faces,
        label_perm: None,
    }
}

/// East/west mirror for distance 4, exchanging the two meridian systems: the
/// core of copy `k` maps to the core of copy `-k`, the meridian part to copy
/// `1-k`, boundary meridians to interface meridians and back.
fn d4_h_generator(t: &TimezoneTemplate, dims: &Dims) -> Automorphism {
    let parts = t.parts.as_ref().unwrap();
    let (n, d) = (dims.n, dims.d);
    let core_h = &parts.core_h;
    let neg = |k: usize| (n - k % n) % n;
    let one_minus = |k: usize| (2 * n + 1 - k) % n;

    let iface_local = |pos: usize| parts.interface_edges[pos] as usize - 2 * d;
    let vertices = (0..2 + n * (d - 1) + n * dims.iv)
        .map(|v| {
            if v < 2 {
                v as VertexId
            } else if v < 2 + n * (d - 1) {
                // Boundary meridian vertex -> interface vertex of copy 1-k.
                let j = (v - 2) / (d - 1);
                let pos = (v - 2) % (d - 1);
                dims.int_vertex(one_minus(j), parts.interface_vertices[pos] as usize)
            } else {
                let rest = v - 2 - n * (d - 1);
                let k = rest / dims.iv;
                let local = rest % dims.iv;
                if let Some(pos) = parts
                    .interface_vertices
                    .iter()
                    .position(|&iv| iv as usize == local)
                {
                    dims.mer_vertex(one_minus(k), pos)
                } else {
                    dims.int_vertex(neg(k), core_h.vertices[local] as usize)
                }
            }
        })
        .collect();
    let mpart_interior: Vec<usize> = vec![12]; // the horizontal edge L2-M2
    let edges = (0..n * d + n * dims.ie)
        .map(|e| {
            if e < n * d {
                // Boundary meridian -> interface meridian of copy 1-k.
                let j = e / d;
                let pos = e % d;
                dims.int_edge(one_minus(j), iface_local(pos))
            } else {
                let rest = e - n * d;
                let k = rest / dims.ie;
                let local_id = rest % dims.ie + 2 * d;
                if let Some(pos) = parts
                    .interface_edges
                    .iter()
                    .position(|&ie| ie as usize == local_id)
                {
                    dims.mer_edge(one_minus(k), pos)
                } else if mpart_interior.contains(&local_id) {
                    dims.int_edge(one_minus(k), local_id - 2 * d)
                } else {
                    dims.int_edge(neg(k), core_h.edges[local_id] as usize - 2 * d)
                }
            }
        })
        .collect();
    let fc = t.fragment.face_count();
    let faces = (0..n * fc)
        .map(|f| {
            let k = f / fc;
            let local = (f % fc) as FaceId;
            if parts.meridian_faces.contains(&local) {
                (one_minus(k) * fc) as FaceId + local
            } else {
                (neg(k) * fc) as FaceId + core_h.faces[local as usize]
            }
        })
        .collect();
    Automorphism {
        vertices,
        edges,
        faces,
        label_perm: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::validate;

    #[test]
    fn counts_for_spec_examples() {
        let em = build_earth_map(5, 4).unwrap();
        assert_eq!(em.mesh.face_count(), 16);
        assert_eq!(em.mesh.edge_count(), 40);
        assert_eq!(em.mesh.vertex_count(), 26);
        assert_eq!(em.mesh.degree(em.poles[0]), 4);
        assert_eq!(em.mesh.degree(em.poles[1]), 4);
        // v3 = 24 = 20 + 2 * v4 with v4 = 2.
        let v3 = (0..26).filter(|&v| em.mesh.degree(v) == 3).count();
        assert_eq!(v3, 24);

        let em = build_earth_map(3, 2).unwrap();
        assert_eq!(em.mesh.face_count(), 24);
        assert_eq!(em.mesh.edge_count(), 60);
        assert_eq!(em.mesh.vertex_count(), 38);
        assert_eq!(em.mesh.degree(em.poles[0]), 6);
        assert_eq!(em.mesh.degree(em.poles[1]), 6);
    }

    #[test]
    fn all_legal_small_earth_maps_validate() {
        for d in 1..=5u8 {
            for n in min_timezones(d)..=6 {
                let em = build_earth_map(d, n).unwrap();
                let report = validate(&em.mesh, Some(&em));
                assert!(report.all_pass(), "d={d} n={n}: {:?}", report.entries);
            }
        }
    }

    #[test]
    fn rejects_degenerate_timezone_counts() {
        assert!(build_earth_map(5, 3).is_err());
        assert!(build_earth_map(4, 1).is_err());
        assert!(build_earth_map(0, 2).is_err());
        assert!(build_earth_map(6, 2).is_err());
    }

    #[test]
    fn symmetry_groups_have_expected_orders_and_verify() {
        for (d, factor) in [(1u8, 4usize), (2, 2), (3, 2), (4, 4), (5, 4)] {
            let n = min_timezones(d);
            let em = build_earth_map(d, n).unwrap();
            assert_eq!(
                em.symmetry.order(),
                factor * n as usize,
                "distance {d}, n {n}"
            );
            for el in &em.symmetry.elements {
                assert!(el.is_automorphism_of(&em.mesh));
            }
        }
    }

    #[test]
    fn timezone_restriction_is_isomorphic_to_the_template() {
        // The faces of any timezone index, restricted to the closed mesh,
        // carry the same incidence structure as the template.
        for d in 1..=5u8 {
            let n = min_timezones(d) + 1;
            let em = build_earth_map(d, n).unwrap();
            let t = em.template();
            for k in 0..n as usize {
                for (f, face) in t.fragment.faces().iter().enumerate() {
                    let gf = em.template_face(k, f as FaceId);
                    let mapped: Vec<EdgeId> =
                        face.iter().map(|&e| em.template_edge(k, e)).collect();
                    let got: Vec<EdgeId> = em.mesh.face(gf).to_vec();
                    assert_eq!(mapped, got, "d={d} k={k} f={f}");
                }
            }
        }
    }

    #[test]
    fn json_serialization_has_the_documented_fields() {
        use crate::mesh::fragment_to_json;
        let em = build_earth_map(2, 2).unwrap();
        let json = fragment_to_json(&em.mesh, Some(&em));
        assert_eq!(json["vertices"].as_array().unwrap().len(), em.mesh.vertex_count());
        assert_eq!(json["edges"][0].as_array().unwrap().len(), 3);
        assert_eq!(json["faces"][0][1].as_array().unwrap().len(), 5);
        assert_eq!(json["poles"].as_array().unwrap().len(), 2);
        assert_eq!(json["meridians"].as_array().unwrap().len(), 2);
        assert!(json.get("boundary").is_none());

        let frame = crate::mesh::build_neighborhood_fragment();
        let json = fragment_to_json(&frame.fragment, None);
        assert_eq!(json["boundary"].as_array().unwrap().len(), 10);
        assert!(json.get("poles").is_none());
    }

    #[test]
    fn builders_are_deterministic() {
        for d in 1..=5u8 {
            let a = build_earth_map(d, min_timezones(d)).unwrap();
            let b = build_earth_map(d, min_timezones(d)).unwrap();
            assert_eq!(a.mesh.edges(), b.mesh.edges());
            assert_eq!(a.mesh.faces(), b.mesh.faces());
        }
    }
}
