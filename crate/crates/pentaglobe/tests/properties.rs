//! Property tests for the structural invariants.

use pentaglobe::earthmap::{build_family_graph, closed_from_cycles, enumerate_timezone_tilings};
use pentaglobe::mesh::{
    build_earth_map, build_neighborhood_fragment, build_timezone_template, min_timezones,
    validate,
};
use pentaglobe::patterns::{partial_feasible, EdgeLabel, EdgePattern};
use pentaglobe::search::{canonicalize, Labeling};
use proptest::prelude::*;

fn label_strategy() -> impl Strategy<Value = EdgeLabel> {
    prop_oneof![
        Just(EdgeLabel::A),
        Just(EdgeLabel::B),
        Just(EdgeLabel::C),
    ]
}

proptest! {
    /// Canonicalization is constant on orbits for arbitrary (not necessarily
    /// edge congruent) total labelings of the neighborhood fragment.
    #[test]
    fn canonicalize_is_orbit_constant(
        labels in proptest::collection::vec(label_strategy(), 20),
        element in 0usize..10,
    ) {
        let frame = build_neighborhood_fragment();
        let lab = Labeling {
            pattern: EdgePattern::A2B2C,
            labels: labels.into_iter().map(Some).collect(),
        };
        let moved = lab.apply(&frame.symmetry.elements[element]);
        prop_assert_eq!(
            canonicalize(&lab, &frame.symmetry).key(),
            canonicalize(&moved, &frame.symmetry).key()
        );
    }

    /// Extending a partial assignment never turns an infeasible sequence
    /// feasible.
    #[test]
    fn partial_feasibility_is_monotone(
        slots in proptest::collection::vec(proptest::option::of(label_strategy()), 5),
        position in 0usize..5,
        label in label_strategy(),
    ) {
        let mut seq = [None; 5];
        for (i, s) in slots.into_iter().enumerate() {
            seq[i] = s;
        }
        for pattern in EdgePattern::ALL {
            let before = partial_feasible(&seq, pattern);
            let mut ext = seq;
            ext[position] = Some(label);
            if !before && seq[position].is_none() {
                prop_assert!(!partial_feasible(&ext, pattern), "{pattern}");
            }
        }
    }

    /// Every legal closed mesh passes structural validation (Euler count,
    /// census, two poles, pole degrees, pentagons), beyond the acceptance
    /// bound.
    #[test]
    fn closed_meshes_validate(distance in 1u8..=5, extra in 0u32..8) {
        let n = min_timezones(distance) + extra;
        let em = build_earth_map(distance, n).unwrap();
        let report = validate(&em.mesh, Some(&em));
        prop_assert!(report.all_pass());
    }
}

#[test]
fn builders_are_id_deterministic() {
    let a = build_neighborhood_fragment();
    let b = build_neighborhood_fragment();
    assert_eq!(a.fragment.edges(), b.fragment.edges());
    for d in 1..=5 {
        let x = build_timezone_template(d).unwrap();
        let y = build_timezone_template(d).unwrap();
        assert_eq!(x.fragment.edges(), y.fragment.edges());
        assert_eq!(x.fragment.faces(), y.fragment.faces());
    }
}

#[test]
fn validation_flags_a_seeded_defect() {
    // A fragment with a square face: the report names the offending face.
    use pentaglobe::mesh::Fragment;
    let edges = vec![[0, 1], [1, 2], [2, 3], [3, 4], [4, 0], [1, 3]];
    // Pentagon 0-1-2-3-4 plus a chord; the "face" 1-2-3 via the chord has
    // only distinct edges if padded, so build a 5-edge walk that repeats a
    // vertex instead: 1,2,3 then back across the chord and out again.
    let faces = vec![[0, 1, 2, 3, 4], [1, 2, 5, 5, 0]];
    assert!(Fragment::new(5, edges, faces).is_err());
}

#[test]
fn gluing_consistency_every_timezone_matches_the_template() {
    // A closed mesh restricted to any timezone index is id-for-id the
    // template; gluing n copies in a ring is a valid closed tiling.
    for d in 1..=5u8 {
        let n = min_timezones(d);
        let em = build_earth_map(d, n).unwrap();
        let t = em.template();
        for k in 0..n as usize {
            for f in 0..t.fragment.face_count() {
                let mapped: Vec<u32> = t
                    .fragment
                    .face(f as u32)
                    .iter()
                    .map(|&e| em.template_edge(k, e))
                    .collect();
                assert_eq!(mapped, em.mesh.face(em.template_face(k, f as u32)).to_vec());
            }
        }
    }
}

#[test]
fn every_closed_symmetry_is_an_automorphism() {
    for d in 1..=5u8 {
        for n in [min_timezones(d), min_timezones(d) + 1] {
            let em = build_earth_map(d, n).unwrap();
            for g in &em.symmetry.elements {
                assert!(g.is_automorphism_of(&em.mesh), "d={d} n={n}");
            }
        }
    }
}

#[test]
fn cycle_assemblies_are_face_consistent() {
    // Every arrow pair glued across a meridian yields faces that still match
    // the pattern; checked via full cycle assemblies at the minimum counts.
    use pentaglobe::patterns::tile_matches;
    for (d, pattern) in [
        (1u8, EdgePattern::A4B),
        (2, EdgePattern::A3B2),
        (3, EdgePattern::A2B2C),
        (5, EdgePattern::A2B2C),
    ] {
        let graph = build_family_graph(d, pattern).unwrap();
        let em = build_earth_map(d, min_timezones(d)).unwrap();
        for lab in closed_from_cycles(&graph, &em) {
            for f in 0..em.mesh.face_count() as u32 {
                let seq = lab.face_sequence(&em.mesh, f).map(|x| x.unwrap());
                assert!(tile_matches(&seq, pattern), "d={d} {pattern}");
            }
        }
    }
}

#[test]
fn timezone_enumeration_is_deterministic() {
    for (d, pattern) in [(2u8, EdgePattern::A4B), (4, EdgePattern::A2B2C)] {
        let a = enumerate_timezone_tilings(d, pattern).unwrap();
        let b = enumerate_timezone_tilings(d, pattern).unwrap();
        let ka: Vec<Vec<u8>> = a.raw.iter().map(|t| t.labeling.key()).collect();
        let kb: Vec<Vec<u8>> = b.raw.iter().map(|t| t.labeling.key()).collect();
        assert_eq!(ka, kb);
    }
}
