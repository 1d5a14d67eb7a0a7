//! The five timezone templates, one per pole distance.
//!
//! Each template is the repeating strip of an earth map tiling, stored with
//! its pole vertices so that every face is a closed pentagon. The strip
//! boundary is the pair of boundary meridians (left and right, read north to
//! south); gluing `n` copies in a ring and identifying the pole fans yields
//! the closed tiling.
//!
//! The incidence tables are hardcoded transcriptions of the strip drawings;
//! their correctness rests on the structural validator plus the downstream
//! reproduction of all enumeration counts.
//!
//! Edge id layout per template: left meridian `0..d` (north to south), right
//! meridian `d..2d`, then interior edges. Vertex layout: interior vertices
//! first, then left meridian interior vertices (north to south), right
//! meridian interior vertices, then the north and south pole.

use super::{Automorphism, EdgeId, FaceId, Fragment, MeshError, SymmetryGroup, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeClass {
    Interior,
    /// Position 0..d on the left boundary meridian, north to south.
    Left(u8),
    Right(u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexClass {
    Interior,
    /// Interior meridian vertex 0..d-1, north to south.
    Left(u8),
    Right(u8),
    PoleNorth,
    PoleSouth,
}

/// An involution (or any self-map) of a template, given as parallel
/// permutation vectors. Used to extend strip symmetries to closed meshes.
#[derive(Clone, Debug)]
pub struct TemplateMap {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub faces: Vec<FaceId>,
}

/// Distance-4 extra structure: the strip splits into a 2-face meridian part
/// (attached on the left) and a 10-face core part, separated by the interface
/// meridian, itself a shortest pole-to-pole path.
#[derive(Clone, Debug)]
pub struct TemplateParts {
    pub meridian_faces: Vec<FaceId>,
    pub core_faces: Vec<FaceId>,
    /// Interface meridian edges, north to south.
    pub interface_edges: [EdgeId; 4],
    /// Interface meridian interior vertices, north to south.
    pub interface_vertices: [VertexId; 3],
    /// East/west mirror of the core part (meridian-part entries are fill-in).
    pub core_h: TemplateMap,
    /// East/west mirror of the meridian part about its own center.
    pub mpart_h: TemplateMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartKind {
    MeridianPart,
    CorePart,
}

impl PartKind {
    pub fn name(self) -> &'static str {
        match self {
            PartKind::MeridianPart => "meridian_part",
            PartKind::CorePart => "core_part",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TimezoneTemplate {
    pub distance: u8,
    pub fragment: Fragment,
    pub pole_north: VertexId,
    pub pole_south: VertexId,
    /// Left boundary meridian edges, north to south (`0..d`).
    pub left_meridian: Vec<EdgeId>,
    /// Right boundary meridian edges, north to south (`d..2d`).
    pub right_meridian: Vec<EdgeId>,
    /// Right-to-left correspondence used when gluing consecutive copies:
    /// `(right edge, left edge)` at equal north-to-south position.
    pub glue_edges: Vec<(EdgeId, EdgeId)>,
    pub glue_vertices: Vec<(VertexId, VertexId)>,
    /// Pole-incident edges reported for this timezone, west to east. Single
    /// edge per pole at distance 5, three otherwise.
    pub pole_edges_north: Vec<EdgeId>,
    pub pole_edges_south: Vec<EdgeId>,
    /// The gray core tiles: interior tiles whose vertices all have degree 3
    /// in the closed tiling.
    pub core_faces: Vec<FaceId>,
    pub parts: Option<TemplateParts>,
    /// The strip symmetries of the timezone itself (order 2, or 4 at
    /// distance 1).
    pub symmetry: SymmetryGroup,
    pub edge_class: Vec<EdgeClass>,
    pub vertex_class: Vec<VertexClass>,
    /// North/south mirror fixing both boundaries setwise (d = 1, 2, 4).
    pub map_v: Option<TemplateMap>,
    /// 180 degree rotation, exchanging the boundaries (d = 3, 5).
    pub map_rho: Option<TemplateMap>,
    /// East/west mirror exchanging the boundaries, poles fixed (d = 1).
    pub map_h: Option<TemplateMap>,
}

fn involution(len: usize, swaps: &[(u32, u32)]) -> Vec<u32> {
    let mut out: Vec<u32> = (0..len as u32).collect();
    for &(x, y) in swaps {
        out[x as usize] = y;
        out[y as usize] = x;
    }
    out
}

fn map_to_automorphism(m: &TemplateMap) -> Automorphism {
    Automorphism {
        vertices: m.vertices.clone(),
        edges: m.edges.clone(),
        faces: m.faces.clone(),
        label_perm: None,
    }
}

fn classes(
    vertex_count: usize,
    edge_count: usize,
    distance: u8,
    interior_vertices: usize,
) -> (Vec<EdgeClass>, Vec<VertexClass>) {
    let d = distance as usize;
    let mut edge_class = Vec::with_capacity(edge_count);
    for pos in 0..d {
        edge_class.push(EdgeClass::Left(pos as u8));
    }
    for pos in 0..d {
        edge_class.push(EdgeClass::Right(pos as u8));
    }
    while edge_class.len() < edge_count {
        edge_class.push(EdgeClass::Interior);
    }
    let mut vertex_class = vec![VertexClass::Interior; vertex_count];
    for pos in 0..d - 1 {
        vertex_class[interior_vertices + pos] = VertexClass::Left(pos as u8);
        vertex_class[interior_vertices + (d - 1) + pos] = VertexClass::Right(pos as u8);
    }
    vertex_class[vertex_count - 2] = VertexClass::PoleNorth;
    vertex_class[vertex_count - 1] = VertexClass::PoleSouth;
    (edge_class, vertex_class)
}

/// Builds the hardcoded combinatorial template for distance `d` (1 to 5).
pub fn build_timezone_template(distance: u8) -> Result<TimezoneTemplate, MeshError> {
    match distance {
        1 => Ok(template_d1()),
        2 => Ok(template_d2()),
        3 => Ok(template_d3()),
        4 => Ok(template_d4()),
        5 => Ok(template_d5()),
        other => Err(MeshError::BadDistance(other)),
    }
}

fn template_d5() -> TimezoneTemplate {
    // Interior vertices: G=0 H=1. Left meridian interior: B0=2 C0=3 D0=4
    // E0=5; right: B1=6 C1=7 D1=8 E1=9; poles 10/11.
    let (g, h) = (0, 1);
    let (b0, c0, d0, e0) = (2, 3, 4, 5);
    let (b1, c1, d1, e1) = (6, 7, 8, 9);
    let (pn, ps) = (10, 11);
    let edges: Vec<[VertexId; 2]> = vec![
        [pn, b0],
        [b0, c0],
        [c0, d0],
        [d0, e0],
        [e0, ps],
        [pn, b1],
        [b1, c1],
        [c1, d1],
        [d1, e1],
        [e1, ps],
        [b0, g],
        [g, c1],
        [g, h],
        [d0, h],
        [h, e1],
    ];
    let faces: Vec<[EdgeId; 5]> = vec![
        // North tile: pN B0 G C1 B1.
        [0, 10, 11, 6, 5],
        // Core north: B0 C0 D0 H G.
        [1, 2, 13, 12, 10],
        // Core south: G H E1 D1 C1.
        [12, 14, 8, 7, 11],
        // South tile: D0 E0 pS E1 H.
        [3, 4, 9, 14, 13],
    ];
    let fragment = Fragment::new(12, edges, faces).expect("d5 template tables");
    let rho = TemplateMap {
        vertices: involution(12, &[(0, 1), (2, 9), (3, 8), (4, 7), (5, 6), (10, 11)]),
        edges: involution(
            15,
            &[(0, 9), (1, 8), (2, 7), (3, 6), (4, 5), (10, 14), (11, 13)],
        ),
        faces: involution(4, &[(0, 3), (1, 2)]),
    };
    let symmetry = SymmetryGroup::generate(&fragment, vec![map_to_automorphism(&rho)]);
    let (edge_class, vertex_class) = classes(12, 15, 5, 2);
    TimezoneTemplate {
        distance: 5,
        fragment,
        pole_north: pn,
        pole_south: ps,
        left_meridian: vec![0, 1, 2, 3, 4],
        right_meridian: vec![5, 6, 7, 8, 9],
        glue_edges: (0..5).map(|i| (5 + i, i)).collect(),
        glue_vertices: vec![(b1, b0), (c1, c0), (d1, d0), (e1, e0)],
        pole_edges_north: vec![0],
        pole_edges_south: vec![4],
        core_faces: vec![1, 2],
        parts: None,
        symmetry,
        edge_class,
        vertex_class,
        map_v: None,
        map_rho: Some(rho),
        map_h: None,
    }
}

fn template_d4() -> TimezoneTemplate {
    // Interior vertices: uc=0 lc=1 b+=2 b-=3 c+=4 c-=5 b'+=6 b'-=7 r+=8 r-=9
    // l+=10 l-=11 M1=12 M2=13 M3=14 (interface meridian). Left meridian
    // interior: L1=15 L2=16 L3=17; right: R1=18 R2=19 R3=20; poles 21/22.
    let (uc, lc) = (0, 1);
    let (bp, bm, cp, cm, bpp, bpm) = (2, 3, 4, 5, 6, 7);
    let (rp, rm, lp, lm) = (8, 9, 10, 11);
    let (m1, m2, m3) = (12, 13, 14);
    let (l1, l2, l3) = (15, 16, 17);
    let (r1, r2, r3) = (18, 19, 20);
    let (pn, ps) = (21, 22);
    let edges: Vec<[VertexId; 2]> = vec![
        [pn, l1],
        [l1, l2],
        [l2, l3],
        [l3, ps],
        [pn, r1],
        [r1, r2],
        [r2, r3],
        [r3, ps],
        [pn, m1],
        [m1, m2],
        [m2, m3],
        [m3, ps],
        [l2, m2],
        [pn, uc],
        [uc, bp],
        [uc, bm],
        [bp, cp],
        [bm, cm],
        [cp, cm],
        [bp, rp],
        [rp, rm],
        [rm, bpp],
        [bm, lp],
        [lp, lm],
        [lm, bpm],
        [ps, lc],
        [lc, bpp],
        [lc, bpm],
        [bpp, cp],
        [bpm, cm],
        [rp, r1],
        [rm, r3],
        [lp, m1],
        [lm, m3],
    ];
    let faces: Vec<[EdgeId; 5]> = vec![
        // Meridian part: pN L1 L2 M2 M1 and pS L3 L2 M2 M3.
        [0, 1, 12, 9, 8],
        [3, 2, 12, 10, 11],
        // Gray core tiles: uc b+ c+ c- b- and lc b'+ c+ c- b'-.
        [14, 16, 18, 17, 15],
        [26, 28, 18, 29, 27],
        // East and west mid tiles of the core.
        [19, 20, 21, 28, 16],
        [22, 23, 24, 29, 17],
        // Pole corner tiles: UR UL DR DL.
        [13, 14, 19, 30, 4],
        [13, 15, 22, 32, 8],
        [25, 26, 21, 31, 7],
        [25, 27, 24, 33, 11],
        // Right and left meridian-hugging core tiles.
        [30, 20, 31, 6, 5],
        [32, 23, 33, 10, 9],
    ];
    let fragment = Fragment::new(23, edges, faces).expect("d4 template tables");
    let map_v = TemplateMap {
        vertices: involution(
            23,
            &[
                (uc, lc),
                (bp, bpp),
                (bm, bpm),
                (rp, rm),
                (lp, lm),
                (m1, m3),
                (l1, l3),
                (r1, r3),
                (pn, ps),
            ],
        ),
        edges: involution(
            34,
            &[
                (0, 3),
                (1, 2),
                (4, 7),
                (5, 6),
                (8, 11),
                (9, 10),
                (13, 25),
                (14, 26),
                (15, 27),
                (16, 28),
                (17, 29),
                (19, 21),
                (22, 24),
                (30, 31),
                (32, 33),
            ],
        ),
        faces: involution(12, &[(0, 1), (2, 3), (6, 8), (7, 9)]),
    };
    let core_h = TemplateMap {
        vertices: involution(
            23,
            &[
                (bp, bm),
                (cp, cm),
                (bpp, bpm),
                (rp, lp),
                (rm, lm),
                (m1, r1),
                (m2, r2),
                (m3, r3),
            ],
        ),
        edges: involution(
            34,
            &[
                (4, 8),
                (5, 9),
                (6, 10),
                (7, 11),
                (14, 15),
                (16, 17),
                (19, 22),
                (20, 23),
                (21, 24),
                (26, 27),
                (28, 29),
                (30, 32),
                (31, 33),
            ],
        ),
        faces: involution(12, &[(4, 5), (6, 7), (8, 9), (10, 11)]),
    };
    let mpart_h = TemplateMap {
        vertices: involution(23, &[(l1, m1), (l2, m2), (l3, m3)]),
        edges: involution(34, &[(0, 8), (1, 9), (2, 10), (3, 11)]),
        faces: involution(12, &[]),
    };
    let symmetry = SymmetryGroup::generate(&fragment, vec![map_to_automorphism(&map_v)]);
    let (edge_class, vertex_class) = classes(23, 34, 4, 15);
    TimezoneTemplate {
        distance: 4,
        fragment,
        pole_north: pn,
        pole_south: ps,
        left_meridian: vec![0, 1, 2, 3],
        right_meridian: vec![4, 5, 6, 7],
        glue_edges: (0..4).map(|i| (4 + i, i)).collect(),
        glue_vertices: vec![(r1, l1), (r2, l2), (r3, l3)],
        pole_edges_north: vec![8, 13, 4],
        pole_edges_south: vec![11, 25, 7],
        core_faces: vec![2, 3],
        parts: Some(TemplateParts {
            meridian_faces: vec![0, 1],
            core_faces: vec![2, 3, 4, 5, 6, 7, 8, 9, 10, 11],
            interface_edges: [8, 9, 10, 11],
            interface_vertices: [m1, m2, m3],
            core_h,
            mpart_h,
        }),
        symmetry,
        edge_class,
        vertex_class,
        map_v: Some(map_v),
        map_rho: None,
        map_h: None,
    }
}

fn template_d3() -> TimezoneTemplate {
    // Interior vertices: A11=0 A1m=1 Am1=2 Amm=3 B11=4 B1m=5 Bm1=6 Bmm=7
    // D11=8 D1m=9 Dm1=10 Dmm=11 E11=12 E1m=13 Em1=14 Emm=15 ("m" = minus).
    // Left meridian interior: Fm1=16 Fmm=17; right: F11=18 F1m=19; poles
    // 20/21. The strip is invariant under the 180 degree point rotation.
    let (a11, a1m, am1, amm) = (0, 1, 2, 3);
    let (b11, b1m, bm1, bmm) = (4, 5, 6, 7);
    let (d11, d1m, dm1, dmm) = (8, 9, 10, 11);
    let (e11, e1m, em1, emm) = (12, 13, 14, 15);
    let (fm1, fmm, f11, f1m) = (16, 17, 18, 19);
    let (pn, ps) = (20, 21);
    let edges: Vec<[VertexId; 2]> = vec![
        [pn, fm1],
        [fm1, fmm],
        [fmm, ps],
        [pn, f11],
        [f11, f1m],
        [f1m, ps],
        [f11, e1m],
        [e1m, e11],
        [e11, d11],
        [pn, d11],
        [d11, b11],
        [b11, bm1],
        [bm1, dm1],
        [pn, dm1],
        [e11, a1m],
        [a1m, a11],
        [a11, b11],
        [bm1, am1],
        [am1, emm],
        [emm, em1],
        [em1, dm1],
        [a11, amm],
        [amm, am1],
        [e1m, d1m],
        [ps, d1m],
        [fmm, em1],
        [emm, dmm],
        [ps, dmm],
        [dmm, bmm],
        [bmm, b1m],
        [b1m, d1m],
        [b1m, a1m],
        [amm, bmm],
    ];
    let faces: Vec<[EdgeId; 5]> = vec![
        // NE: pN F11 E1m E11 D11.
        [3, 6, 7, 8, 9],
        // North mid: pN D11 B11 Bm1 Dm1.
        [9, 10, 11, 12, 13],
        // NE inner: D11 E11 A1m A11 B11.
        [8, 14, 15, 16, 10],
        // NW inner: Dm1 Bm1 Am1 Emm Em1.
        [12, 17, 18, 19, 20],
        // Center north (gray core): B11 A11 Amm Am1 Bm1.
        [16, 21, 22, 17, 11],
        // East side: F1m F11 E1m D1m pS.
        [4, 6, 23, 24, 5],
        // SW: pS Fmm Em1 Emm Dmm.
        [2, 25, 19, 26, 27],
        // South mid: pS Dmm Bmm B1m D1m.
        [27, 28, 29, 30, 24],
        // SE inner: D1m B1m A1m E11 E1m.
        [30, 31, 14, 7, 23],
        // Center south (gray core): Bmm Amm A11 A1m B1m.
        [32, 21, 15, 31, 29],
        // SW inner: Dmm Emm Am1 Amm Bmm.
        [26, 18, 22, 32, 28],
        // West side: Fm1 Fmm Em1 Dm1 pN.
        [1, 25, 20, 13, 0],
    ];
    let fragment = Fragment::new(22, edges, faces).expect("d3 template tables");
    let rho = TemplateMap {
        vertices: involution(
            22,
            &[
                (a11, amm),
                (a1m, am1),
                (b11, bmm),
                (b1m, bm1),
                (d11, dmm),
                (d1m, dm1),
                (e11, emm),
                (e1m, em1),
                (fm1, f1m),
                (fmm, f11),
                (pn, ps),
            ],
        ),
        edges: involution(
            33,
            &[
                (0, 5),
                (1, 4),
                (2, 3),
                (6, 25),
                (7, 19),
                (8, 26),
                (9, 27),
                (10, 28),
                (11, 29),
                (12, 30),
                (13, 24),
                (14, 18),
                (15, 22),
                (16, 32),
                (17, 31),
                (20, 23),
            ],
        ),
        faces: involution(12, &[(0, 6), (1, 7), (2, 10), (3, 8), (4, 9), (5, 11)]),
    };
    let symmetry = SymmetryGroup::generate(&fragment, vec![map_to_automorphism(&rho)]);
    let (edge_class, vertex_class) = classes(22, 33, 3, 16);
    TimezoneTemplate {
        distance: 3,
        fragment,
        pole_north: pn,
        pole_south: ps,
        left_meridian: vec![0, 1, 2],
        right_meridian: vec![3, 4, 5],
        glue_edges: vec![(3, 0), (4, 1), (5, 2)],
        glue_vertices: vec![(f11, fm1), (f1m, fmm)],
        pole_edges_north: vec![0, 13, 9],
        pole_edges_south: vec![27, 24, 5],
        core_faces: vec![4, 9],
        parts: None,
        symmetry,
        edge_class,
        vertex_class,
        map_v: None,
        map_rho: Some(rho),
        map_h: None,
    }
}

fn template_d2() -> TimezoneTemplate {
    // Interior vertices: A+=0 A-=1 B+=2 B-=3 C+=4 C-=5 D+=6 D-=7 E+=8 E-=9
    // G=10 H=11 I+=12 I-=13 J+=14 J-=15 N=16. Left meridian interior: O=17;
    // right: M=18; poles 19/20.
    let (ap, am, bp, bm, cp, cm, dp, dm, ep, em) = (0, 1, 2, 3, 4, 5, 6, 7, 8, 9);
    let (g, h, ip, im, jp, jm, n, o, m) = (10, 11, 12, 13, 14, 15, 16, 17, 18);
    let (pn, ps) = (19, 20);
    let edges: Vec<[VertexId; 2]> = vec![
        [pn, o],
        [o, ps],
        [pn, m],
        [m, ps],
        [ap, bp],
        [bp, dp],
        [dp, ep],
        [ep, cp],
        [cp, ap],
        [am, bm],
        [bm, dm],
        [dm, em],
        [em, cm],
        [cm, am],
        [dp, pn],
        [dm, ps],
        [cp, g],
        [cm, g],
        [g, h],
        [h, ip],
        [h, im],
        [ep, ip],
        [em, im],
        [ip, jp],
        [im, jm],
        [jp, pn],
        [jm, ps],
        [bp, n],
        [bm, n],
        [n, o],
        [ap, am],
        [jp, jm],
    ];
    let faces: Vec<[EdgeId; 5]> = vec![
        // Upper and lower inner pentagons.
        [4, 5, 6, 7, 8],
        [9, 10, 11, 12, 13],
        // Gray core: A+ A- C- G C+.
        [30, 13, 17, 16, 8],
        // East of core, upper and lower.
        [7, 21, 19, 18, 16],
        [12, 22, 20, 18, 17],
        // Pole corner tiles NE and SE.
        [14, 25, 23, 21, 6],
        [15, 26, 24, 22, 11],
        // East mid: H I+ J+ J- I-.
        [19, 23, 31, 24, 20],
        // Bipolar tile hugging the right meridian.
        [25, 2, 3, 26, 31],
        // West tiles: upper, lower, mid.
        [5, 14, 0, 29, 27],
        [10, 15, 1, 29, 28],
        [27, 4, 30, 9, 28],
    ];
    let fragment = Fragment::new(21, edges, faces).expect("d2 template tables");
    let map_v = TemplateMap {
        vertices: involution(
            21,
            &[
                (ap, am),
                (bp, bm),
                (cp, cm),
                (dp, dm),
                (ep, em),
                (ip, im),
                (jp, jm),
                (pn, ps),
            ],
        ),
        edges: involution(
            32,
            &[
                (0, 1),
                (2, 3),
                (4, 9),
                (5, 10),
                (6, 11),
                (7, 12),
                (8, 13),
                (14, 15),
                (16, 17),
                (19, 20),
                (21, 22),
                (23, 24),
                (25, 26),
                (27, 28),
            ],
        ),
        faces: involution(12, &[(0, 1), (3, 4), (5, 6), (9, 10)]),
    };
    let symmetry = SymmetryGroup::generate(&fragment, vec![map_to_automorphism(&map_v)]);
    let (edge_class, vertex_class) = classes(21, 32, 2, 17);
    TimezoneTemplate {
        distance: 2,
        fragment,
        pole_north: pn,
        pole_south: ps,
        left_meridian: vec![0, 1],
        right_meridian: vec![2, 3],
        glue_edges: vec![(2, 0), (3, 1)],
        glue_vertices: vec![(m, o)],
        pole_edges_north: vec![0, 14, 25],
        pole_edges_south: vec![1, 15, 26],
        core_faces: vec![2],
        parts: None,
        symmetry,
        edge_class,
        vertex_class,
        map_v: Some(map_v),
        map_rho: None,
        map_h: None,
    }
}

fn template_d1() -> TimezoneTemplate {
    // Interior vertices: A+=0 A-=1 B++=2 B+-=3 B-+=4 B--=5 C++=6 C+-=7
    // C-+=8 C--=9 D+=10 D-=11 E+=12 E-=13 F++=14 F+-=15 F-+=16 F--=17;
    // poles 18/19. The meridians are the two pole-to-pole edges.
    let (ap, am) = (0, 1);
    let (bpp, bpm, bmp, bmm) = (2, 3, 4, 5);
    let (cpp, cpm, cmp, cmm) = (6, 7, 8, 9);
    let (dp, dm, ep, em) = (10, 11, 12, 13);
    let (fpp, fpm, fmp, fmm) = (14, 15, 16, 17);
    let (pn, ps) = (18, 19);
    let edges: Vec<[VertexId; 2]> = vec![
        [pn, ps],
        [pn, ps],
        [ap, bpp],
        [ap, bmp],
        [am, bpm],
        [am, bmm],
        [bpp, dp],
        [bpm, dp],
        [bmp, dm],
        [bmm, dm],
        [dp, ep],
        [dm, em],
        [ep, fpp],
        [ep, fpm],
        [em, fmp],
        [em, fmm],
        [bpp, cpp],
        [bpm, cpm],
        [bmp, cmp],
        [bmm, cmm],
        [cpp, fpp],
        [cpm, fpm],
        [cmp, fmp],
        [cmm, fmm],
        [fpp, pn],
        [fmp, pn],
        [fpm, ps],
        [fmm, ps],
        [ap, am],
        [cpp, cmp],
        [cpm, cmm],
    ];
    let faces: Vec<[EdgeId; 5]> = vec![
        // Bipolar tiles hugging the right and left meridians.
        [24, 1, 26, 13, 12],
        [25, 0, 27, 15, 14],
        // North and south mid tiles.
        [29, 20, 24, 25, 22],
        [30, 21, 26, 27, 23],
        // Inner tiles NE SE NW SW.
        [6, 10, 12, 20, 16],
        [7, 10, 13, 21, 17],
        [8, 11, 14, 22, 18],
        [9, 11, 15, 23, 19],
        // North and south center tiles.
        [2, 16, 29, 18, 3],
        [4, 17, 30, 19, 5],
        // East center (gray core) and west center.
        [28, 4, 7, 6, 2],
        [28, 5, 9, 8, 3],
    ];
    let fragment = Fragment::new(20, edges, faces).expect("d1 template tables");
    let map_v = TemplateMap {
        vertices: involution(
            20,
            &[
                (ap, am),
                (bpp, bpm),
                (bmp, bmm),
                (cpp, cpm),
                (cmp, cmm),
                (fpp, fpm),
                (fmp, fmm),
                (pn, ps),
            ],
        ),
        edges: involution(
            31,
            &[
                (2, 4),
                (3, 5),
                (6, 7),
                (8, 9),
                (12, 13),
                (14, 15),
                (16, 17),
                (18, 19),
                (20, 21),
                (22, 23),
                (24, 26),
                (25, 27),
                (29, 30),
            ],
        ),
        faces: involution(12, &[(2, 3), (4, 5), (6, 7), (8, 9)]),
    };
    let map_h = TemplateMap {
        vertices: involution(
            20,
            &[
                (bpp, bmp),
                (bpm, bmm),
                (cpp, cmp),
                (cpm, cmm),
                (dp, dm),
                (ep, em),
                (fpp, fmp),
                (fpm, fmm),
            ],
        ),
        edges: involution(
            31,
            &[
                (0, 1),
                (2, 3),
                (4, 5),
                (6, 8),
                (7, 9),
                (10, 11),
                (12, 14),
                (13, 15),
                (16, 18),
                (17, 19),
                (20, 22),
                (21, 23),
                (24, 25),
                (26, 27),
            ],
        ),
        faces: involution(12, &[(0, 1), (4, 6), (5, 7), (10, 11)]),
    };
    let symmetry = SymmetryGroup::generate(
        &fragment,
        vec![map_to_automorphism(&map_v), map_to_automorphism(&map_h)],
    );
    let (edge_class, vertex_class) = classes(20, 31, 1, 18);
    TimezoneTemplate {
        distance: 1,
        fragment,
        pole_north: pn,
        pole_south: ps,
        left_meridian: vec![0],
        right_meridian: vec![1],
        glue_edges: vec![(1, 0)],
        glue_vertices: vec![],
        pole_edges_north: vec![0, 25, 24],
        pole_edges_south: vec![0, 27, 26],
        core_faces: vec![10],
        parts: None,
        symmetry,
        edge_class,
        vertex_class,
        map_v: Some(map_v),
        map_rho: None,
        map_h: Some(map_h),
    }
}

/// A part of the distance-4 timezone as a standalone fragment, with the edge
/// map back into the template and the part's own order-4 symmetry group.
#[derive(Clone, Debug)]
pub struct PartFragment {
    pub kind: PartKind,
    pub fragment: Fragment,
    /// Part edge id -> template edge id.
    pub edge_map: Vec<EdgeId>,
    /// Left and right boundary meridian edges in part ids, north to south.
    pub left_meridian: Vec<EdgeId>,
    pub right_meridian: Vec<EdgeId>,
    pub symmetry: SymmetryGroup,
}

/// Extracts the meridian part or core part of the distance-4 template.
pub fn part_subfragment(template: &TimezoneTemplate, kind: PartKind) -> PartFragment {
    let parts = template
        .parts
        .as_ref()
        .expect("parts exist only at distance 4");
    let face_ids = match kind {
        PartKind::MeridianPart => &parts.meridian_faces,
        PartKind::CorePart => &parts.core_faces,
    };
    let mut edge_map: Vec<EdgeId> = Vec::new();
    for &f in face_ids {
        for &e in template.fragment.face(f) {
            if !edge_map.contains(&e) {
                edge_map.push(e);
            }
        }
    }
    edge_map.sort_unstable();
    let mut vert_map: Vec<VertexId> = Vec::new();
    for &e in &edge_map {
        for v in template.fragment.edge(e) {
            if !vert_map.contains(&v) {
                vert_map.push(v);
            }
        }
    }
    vert_map.sort_unstable();
    let sub_edge = |e: EdgeId| edge_map.iter().position(|&x| x == e).unwrap() as EdgeId;
    let sub_vert = |v: VertexId| vert_map.iter().position(|&x| x == v).unwrap() as VertexId;
    let edges: Vec<[VertexId; 2]> = edge_map
        .iter()
        .map(|&e| {
            let [u, v] = template.fragment.edge(e);
            [sub_vert(u), sub_vert(v)]
        })
        .collect();
    let faces: Vec<[EdgeId; 5]> = face_ids
        .iter()
        .map(|&f| {
            let mut out = [0; 5];
            for (i, &e) in template.fragment.face(f).iter().enumerate() {
                out[i] = sub_edge(e);
            }
            out
        })
        .collect();
    let fragment = Fragment::new(vert_map.len(), edges, faces).expect("part subfragment");

    let (left, right, h_map) = match kind {
        PartKind::MeridianPart => (
            template.left_meridian.clone(),
            parts.interface_edges.to_vec(),
            &parts.mpart_h,
        ),
        PartKind::CorePart => (
            parts.interface_edges.to_vec(),
            template.right_meridian.clone(),
            &parts.core_h,
        ),
    };
    let restrict = |m: &TemplateMap| Automorphism {
        vertices: vert_map.iter().map(|&v| sub_vert(m.vertices[v as usize])).collect(),
        edges: edge_map.iter().map(|&e| sub_edge(m.edges[e as usize])).collect(),
        faces: face_ids
            .iter()
            .map(|&f| {
                face_ids
                    .iter()
                    .position(|&x| x == m.faces[f as usize])
                    .unwrap() as FaceId
            })
            .collect(),
        label_perm: None,
    };
    let v_map = template.map_v.as_ref().expect("d4 has a vertical map");
    let symmetry =
        SymmetryGroup::generate(&fragment, vec![restrict(v_map), restrict(h_map)]);
    PartFragment {
        kind,
        fragment,
        left_meridian: left.iter().map(|&e| sub_edge(e)).collect(),
        right_meridian: right.iter().map(|&e| sub_edge(e)).collect(),
        edge_map,
        symmetry,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::validate;

    #[test]
    fn templates_validate_and_have_expected_counts() {
        for d in 1..=5u8 {
            let t = build_timezone_template(d).unwrap();
            let expected_faces = if d == 5 { 4 } else { 12 };
            assert_eq!(t.fragment.face_count(), expected_faces, "distance {d}");
            assert_eq!(t.left_meridian.len(), d as usize);
            assert_eq!(t.right_meridian.len(), d as usize);
            assert!(validate(&t.fragment, None).all_pass(), "distance {d}");
            // Boundary is exactly the two meridians.
            let mut boundary: Vec<_> = t.fragment.boundary_edges().to_vec();
            boundary.sort_unstable();
            let mut expected: Vec<_> = t
                .left_meridian
                .iter()
                .chain(t.right_meridian.iter())
                .copied()
                .collect();
            expected.sort_unstable();
            assert_eq!(boundary, expected, "distance {d}");
            // Meridians are pole-to-pole walks.
            for mer in [&t.left_meridian, &t.right_meridian] {
                assert!(t.fragment.edge(mer[0]).contains(&t.pole_north));
                assert!(t.fragment.edge(mer[mer.len() - 1]).contains(&t.pole_south));
                for w in mer.windows(2) {
                    assert!(t.fragment.shared_vertex(w[0], w[1]).is_some());
                }
            }
        }
    }

    #[test]
    fn template_symmetries_verify_and_have_documented_orders() {
        for (d, order) in [(1u8, 4usize), (2, 2), (3, 2), (4, 2), (5, 2)] {
            let t = build_timezone_template(d).unwrap();
            assert_eq!(t.symmetry.order(), order, "distance {d}");
            for el in &t.symmetry.elements {
                assert!(el.is_automorphism_of(&t.fragment));
            }
        }
    }

    #[test]
    fn distance_4_parts_partition_the_faces() {
        let t = build_timezone_template(4).unwrap();
        let parts = t.parts.as_ref().unwrap();
        let mut all: Vec<_> = parts
            .meridian_faces
            .iter()
            .chain(parts.core_faces.iter())
            .copied()
            .collect();
        all.sort_unstable();
        assert_eq!(all, (0..12).collect::<Vec<_>>());

        for kind in [PartKind::MeridianPart, PartKind::CorePart] {
            let part = part_subfragment(&t, kind);
            assert!(validate(&part.fragment, None).all_pass());
            assert_eq!(part.symmetry.order(), 4);
            assert_eq!(part.left_meridian.len(), 4);
            assert_eq!(part.right_meridian.len(), 4);
        }
        assert_eq!(
            part_subfragment(&t, PartKind::MeridianPart).fragment.face_count(),
            2
        );
        assert_eq!(
            part_subfragment(&t, PartKind::CorePart).fragment.face_count(),
            10
        );
    }

    #[test]
    fn pole_reporting_edges_touch_the_poles() {
        for d in 1..=5u8 {
            let t = build_timezone_template(d).unwrap();
            for &e in &t.pole_edges_north {
                assert!(t.fragment.edge(e).contains(&t.pole_north), "d{d} e{e}");
            }
            for &e in &t.pole_edges_south {
                assert!(t.fragment.edge(e).contains(&t.pole_south), "d{d} e{e}");
            }
            let want = if d == 5 { 1 } else { 3 };
            assert_eq!(t.pole_edges_north.len(), want);
            assert_eq!(t.pole_edges_south.len(), want);
        }
    }
}
