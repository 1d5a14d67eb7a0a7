//! Combinatorial enumeration of edge congruent pentagonal earth map tilings.
//!
//! A sphere tiled edge-to-edge by pentagons with exactly two vertices of
//! degree greater than 3 (the poles) is an *earth map tiling*: it is a ring of
//! `n` copies of a fixed timezone strip whose pole distance is 1 to 5. This
//! crate enumerates the ways the pentagon edge lengths `a`, `b`, `c` can be
//! assigned so that every tile is edge congruent to a single pentagon, and
//! classifies the results into families via directed graphs on meridian
//! signatures.
//!
//! Module map:
//! * [`patterns`] — the five admissible cyclic edge length arrangements and
//!   local feasibility predicates.
//! * [`mesh`] — pure combinatorial pentagonal complexes: the degree-3
//!   neighborhood fragment, the five timezone templates, closed earth map
//!   meshes, validation and symmetry groups.
//! * [`search`] — backtracking enumeration of edge labelings with unit
//!   propagation, canonicalization and orbit reduction.
//! * [`neighborhood`] — classification of neighborhood tilings, forced
//!   vertices and propagation tables.
//! * [`earthmap`] — timezone tilings, family graphs, family classification
//!   and the closed-tiling enumeration oracle.
//! * [`render`] — deterministic SVG and DOT output.
//! * [`verify`] — the full verification suite with pinned expected values.

pub mod earthmap;
pub mod mesh;
pub mod neighborhood;
pub mod patterns;
pub mod render;
pub mod search;
pub mod verify;
