//! Backtracking enumeration of edge labelings over any pentagonal complex,
//! with unit propagation, plus canonicalization and orbit reduction under a
//! symmetry group.

use crate::mesh::{EdgeId, Fragment, SymmetryGroup};
use crate::patterns::{partial_feasible, tile_matches, EdgeLabel, EdgePattern};

/// A partial or total assignment of labels to the edges of a host fragment.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Labeling {
    pub pattern: EdgePattern,
    pub labels: Vec<Option<EdgeLabel>>,
}

impl Labeling {
    pub fn empty(host: &Fragment, pattern: EdgePattern) -> Labeling {
        Labeling {
            pattern,
            labels: vec![None; host.edge_count()],
        }
    }

    pub fn is_total(&self) -> bool {
        self.labels.iter().all(|l| l.is_some())
    }

    pub fn set(&mut self, e: EdgeId, label: EdgeLabel) {
        self.labels[e as usize] = Some(label);
    }

    pub fn get(&self, e: EdgeId) -> Option<EdgeLabel> {
        self.labels[e as usize]
    }

    /// The label sequence of a face in its stored cyclic edge order.
    pub fn face_sequence(&self, host: &Fragment, f: u32) -> [Option<EdgeLabel>; 5] {
        let mut out = [None; 5];
        for (i, &e) in host.face(f).iter().enumerate() {
            out[i] = self.labels[e as usize];
        }
        out
    }

    /// Transports the labeling along a group element: the image assigns to
    /// edge `g(e)` the (optionally relabeled) label of `e`.
    pub fn apply(&self, g: &crate::mesh::Automorphism) -> Labeling {
        let mut labels = vec![None; self.labels.len()];
        for (e, &l) in self.labels.iter().enumerate() {
            let img = g.edges[e] as usize;
            labels[img] = l.map(|lab| match g.label_perm {
                None => lab,
                Some(p) => p[lab as usize],
            });
        }
        Labeling {
            pattern: self.pattern,
            labels,
        }
    }

    /// Compact byte key for ordering and hashing; total labelings only.
    pub fn key(&self) -> Vec<u8> {
        self.labels
            .iter()
            .map(|l| match l {
                None => 255,
                Some(lab) => *lab as u8,
            })
            .collect()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SearchError {
    #[error("seed labeling is inconsistent with the pattern")]
    InconsistentSeed,
    #[error("seed labeling length {got} does not match host edge count {want}")]
    SeedSizeMismatch { got: usize, want: usize },
}

/// Enumerates every total labeling extending `seed` in which every face
/// matches `pattern`. Unit propagation runs to a fixed point before each
/// branch; branching picks the lowest-id unassigned edge and tries labels in
/// order `a < b < c`. Output order is deterministic.
pub fn enumerate_completions(
    host: &Fragment,
    pattern: EdgePattern,
    seed: &Labeling,
) -> Result<Vec<Labeling>, SearchError> {
    if seed.labels.len() != host.edge_count() {
        return Err(SearchError::SeedSizeMismatch {
            got: seed.labels.len(),
            want: host.edge_count(),
        });
    }
    let mut state = seed.labels.clone();
    for f in 0..host.face_count() as u32 {
        if !face_feasible(host, &state, pattern, f) {
            return Err(SearchError::InconsistentSeed);
        }
    }
    let mut out = Vec::new();
    let mut trail: Vec<EdgeId> = Vec::new();
    dfs(host, pattern, &mut state, &mut trail, &mut out);
    Ok(out)
}

fn face_feasible(host: &Fragment, state: &[Option<EdgeLabel>], pattern: EdgePattern, f: u32) -> bool {
    let mut seq = [None; 5];
    for (i, &e) in host.face(f).iter().enumerate() {
        seq[i] = state[e as usize];
    }
    partial_feasible(&seq, pattern)
}

/// Unit propagation: whenever all placements consistent with a face agree on
/// an unassigned slot, the edge is forced. Returns false on contradiction;
/// assignments are recorded on the trail.
fn propagate(
    host: &Fragment,
    pattern: EdgePattern,
    state: &mut [Option<EdgeLabel>],
    trail: &mut Vec<EdgeId>,
) -> bool {
    loop {
        let mut changed = false;
        for f in 0..host.face_count() as u32 {
            let face = host.face(f);
            let mut seq = [None; 5];
            let mut missing = false;
            for (i, &e) in face.iter().enumerate() {
                seq[i] = state[e as usize];
                missing |= seq[i].is_none();
            }
            if !missing {
                let total = seq.map(|l| l.unwrap());
                if !tile_matches(&total, pattern) {
                    return false;
                }
                continue;
            }
            // Intersect the candidate placements slotwise.
            let mut forced: [Option<EdgeLabel>; 5] = [None; 5];
            let mut any = false;
            for p in pattern.placements() {
                if seq
                    .iter()
                    .zip(p.sequence.iter())
                    .any(|(slot, want)| slot.is_some_and(|l| l != *want))
                {
                    continue;
                }
                if !any {
                    forced = p.sequence.map(Some);
                    any = true;
                } else {
                    for (slot, want) in forced.iter_mut().zip(p.sequence.iter()) {
                        if *slot != Some(*want) {
                            *slot = None;
                        }
                    }
                }
            }
            if !any {
                return false;
            }
            for (i, &e) in face.iter().enumerate() {
                if state[e as usize].is_none() {
                    if let Some(l) = forced[i] {
                        state[e as usize] = Some(l);
                        trail.push(e);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn dfs(
    host: &Fragment,
    pattern: EdgePattern,
    state: &mut [Option<EdgeLabel>],
    trail: &mut Vec<EdgeId>,
    out: &mut Vec<Labeling>,
) {
    let mark = trail.len();
    if !propagate(host, pattern, state, trail) {
        unwind(state, trail, mark);
        return;
    }
    match state.iter().position(|l| l.is_none()) {
        None => {
            out.push(Labeling {
                pattern,
                labels: state.to_vec(),
            });
        }
        Some(e) => {
            for &label in pattern.alphabet() {
                let branch_mark = trail.len();
                state[e] = Some(label);
                trail.push(e as EdgeId);
                // Cheap local check before descending: the faces of e must
                // still admit a placement.
                let ok = {
                    let (f1, f2) = host.edge_faces(e as EdgeId);
                    f1.is_none_or(|f| face_feasible(host, state, pattern, f))
                        && f2.is_none_or(|f| face_feasible(host, state, pattern, f))
                };
                if ok {
                    dfs(host, pattern, state, trail, out);
                }
                unwind(state, trail, branch_mark);
            }
        }
    }
    unwind(state, trail, mark);
}

fn unwind(state: &mut [Option<EdgeLabel>], trail: &mut Vec<EdgeId>, to: usize) {
    while trail.len() > to {
        let e = trail.pop().unwrap();
        state[e as usize] = None;
    }
}

/// Reference enumerator: a plain depth-first loop over all assignments in
/// edge id order, rejecting as soon as any fully labeled face fails to match.
/// No propagation, no placement reasoning; kept deliberately independent of
/// [`enumerate_completions`].
pub fn naive_enumerate(host: &Fragment, pattern: EdgePattern, seed: &Labeling) -> Vec<Labeling> {
    let mut state = seed.labels.clone();
    let mut out = Vec::new();
    naive_dfs(host, pattern, &mut state, 0, &mut out);
    out
}

fn naive_dfs(
    host: &Fragment,
    pattern: EdgePattern,
    state: &mut [Option<EdgeLabel>],
    from: usize,
    out: &mut Vec<Labeling>,
) {
    // Reject on any complete face that fails to match.
    for f in 0..host.face_count() as u32 {
        let mut seq = [EdgeLabel::A; 5];
        let mut complete = true;
        for (i, &e) in host.face(f).iter().enumerate() {
            match state[e as usize] {
                Some(l) => seq[i] = l,
                None => {
                    complete = false;
                    break;
                }
            }
        }
        if complete && !tile_matches(&seq, pattern) {
            return;
        }
    }
    match (from..state.len()).find(|&e| state[e].is_none()) {
        None => out.push(Labeling {
            pattern,
            labels: state.to_vec(),
        }),
        Some(e) => {
            for &label in pattern.alphabet() {
                state[e] = Some(label);
                naive_dfs(host, pattern, state, e + 1, out);
            }
            state[e] = None;
        }
    }
}

/// The minimum of the labeling's images over all group elements, compared as
/// label vectors indexed by edge id with `a < b < c`.
pub fn canonicalize(labeling: &Labeling, group: &SymmetryGroup) -> Labeling {
    debug_assert!(labeling.is_total());
    group
        .elements
        .iter()
        .map(|g| labeling.apply(g))
        .min_by(|x, y| x.key().cmp(&y.key()))
        .expect("group contains the identity")
}

/// One orbit of labelings under a group action.
#[derive(Clone, Debug)]
pub struct OrbitRepresentative {
    /// The minimal labeling of the orbit.
    pub labeling: Labeling,
    /// Number of input labelings that fell into this orbit.
    pub multiplicity: usize,
}

/// Groups total labelings into orbits. Representatives are sorted by their
/// canonical key; multiplicities sum to the input size.
pub fn orbit_reduce(labelings: &[Labeling], group: &SymmetryGroup) -> Vec<OrbitRepresentative> {
    let mut by_canon: std::collections::BTreeMap<Vec<u8>, (Labeling, usize)> =
        std::collections::BTreeMap::new();
    for lab in labelings {
        let canon = canonicalize(lab, group);
        let entry = by_canon.entry(canon.key()).or_insert((canon, 0));
        entry.1 += 1;
    }
    by_canon
        .into_values()
        .map(|(labeling, multiplicity)| OrbitRepresentative {
            labeling,
            multiplicity,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::build_neighborhood_fragment;
    use crate::patterns::EdgeLabel::{A, B, C};

    fn seeded_center(host: &Fragment, pattern: EdgePattern) -> Labeling {
        let mut seed = Labeling::empty(host, pattern);
        for (i, &l) in pattern.canonical().iter().enumerate() {
            seed.set(i as EdgeId, l);
        }
        seed
    }

    #[test]
    fn a5_has_exactly_one_completion_from_empty_seed() {
        let frame = build_neighborhood_fragment();
        let seed = Labeling::empty(&frame.fragment, EdgePattern::A5);
        let out = enumerate_completions(&frame.fragment, EdgePattern::A5, &seed).unwrap();
        assert_eq!(out.len(), 1);
        assert!(out[0].labels.iter().all(|l| *l == Some(A)));
    }

    #[test]
    fn seeded_neighborhood_counts_match_the_case_analysis() {
        let frame = build_neighborhood_fragment();
        // a2b2c: seeding the center forces everything, one completion.
        let seed = seeded_center(&frame.fragment, EdgePattern::A2B2C);
        let out = enumerate_completions(&frame.fragment, EdgePattern::A2B2C, &seed).unwrap();
        assert_eq!(out.len(), 1);
        // a3bc: two completions, differing in one neighbor.
        let seed = seeded_center(&frame.fragment, EdgePattern::A3BC);
        let out = enumerate_completions(&frame.fragment, EdgePattern::A3BC, &seed).unwrap();
        assert_eq!(out.len(), 2);
        // a3b2: four, a4b: twenty-nine raw.
        let seed = seeded_center(&frame.fragment, EdgePattern::A3B2);
        let out = enumerate_completions(&frame.fragment, EdgePattern::A3B2, &seed).unwrap();
        assert_eq!(out.len(), 4);
        let seed = seeded_center(&frame.fragment, EdgePattern::A4B);
        let out = enumerate_completions(&frame.fragment, EdgePattern::A4B, &seed).unwrap();
        assert_eq!(out.len(), 29);
    }

    #[test]
    fn inconsistent_seed_is_rejected() {
        let frame = build_neighborhood_fragment();
        let mut seed = Labeling::empty(&frame.fragment, EdgePattern::A4B);
        // Two b edges on the center tile.
        seed.set(0, B);
        seed.set(1, B);
        assert!(matches!(
            enumerate_completions(&frame.fragment, EdgePattern::A4B, &seed),
            Err(SearchError::InconsistentSeed)
        ));
    }

    #[test]
    fn backtracking_agrees_with_the_naive_reference_when_center_is_seeded() {
        let frame = build_neighborhood_fragment();
        for pattern in [EdgePattern::A2B2C, EdgePattern::A3BC, EdgePattern::A3B2] {
            let seed = seeded_center(&frame.fragment, pattern);
            let mut fast = enumerate_completions(&frame.fragment, pattern, &seed).unwrap();
            let mut slow = naive_enumerate(&frame.fragment, pattern, &seed);
            fast.sort_by_key(|l| l.key());
            slow.sort_by_key(|l| l.key());
            assert_eq!(fast.len(), slow.len(), "{pattern}");
            assert_eq!(fast, slow, "{pattern}");
        }
    }

    #[test]
    fn canonicalize_is_orbit_constant() {
        let frame = build_neighborhood_fragment();
        let seed = seeded_center(&frame.fragment, EdgePattern::A2B2C);
        let out = enumerate_completions(&frame.fragment, EdgePattern::A2B2C, &seed).unwrap();
        let lab = &out[0];
        let canon = canonicalize(lab, &frame.symmetry);
        for g in &frame.symmetry.elements {
            let moved = lab.apply(g);
            assert_eq!(canonicalize(&moved, &frame.symmetry), canon);
        }
    }

    #[test]
    fn orbit_reduce_roundtrip() {
        let frame = build_neighborhood_fragment();
        let seed = Labeling::empty(&frame.fragment, EdgePattern::A3BC);
        let all = enumerate_completions(&frame.fragment, EdgePattern::A3BC, &seed).unwrap();
        let orbits = orbit_reduce(&all, &frame.symmetry);
        assert_eq!(orbits.iter().map(|o| o.multiplicity).sum::<usize>(), all.len());
        // Re-expanding every representative through the group reproduces the
        // input set exactly.
        let mut expanded: Vec<Vec<u8>> = Vec::new();
        for orbit in &orbits {
            let mut images: Vec<Vec<u8>> = frame
                .symmetry
                .elements
                .iter()
                .map(|g| orbit.labeling.apply(g).key())
                .collect();
            images.sort();
            images.dedup();
            assert_eq!(images.len(), orbit.multiplicity);
            expanded.extend(images);
        }
        let mut input: Vec<Vec<u8>> = all.iter().map(|l| l.key()).collect();
        expanded.sort();
        input.sort();
        assert_eq!(expanded, input);
    }

    #[test]
    fn single_labeling_is_its_own_orbit() {
        let frame = build_neighborhood_fragment();
        let seed = Labeling::empty(&frame.fragment, EdgePattern::A5);
        let all = enumerate_completions(&frame.fragment, EdgePattern::A5, &seed).unwrap();
        let orbits = orbit_reduce(&all, &frame.symmetry);
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].multiplicity, 1);
    }

    #[test]
    fn labels_only_from_alphabet() {
        let frame = build_neighborhood_fragment();
        let seed = Labeling::empty(&frame.fragment, EdgePattern::A3B2);
        for lab in enumerate_completions(&frame.fragment, EdgePattern::A3B2, &seed).unwrap() {
            assert!(lab.labels.iter().all(|l| *l != Some(C)));
        }
    }
}
