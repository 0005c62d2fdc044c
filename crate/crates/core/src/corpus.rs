//! Named ideals and complexes used throughout the tests and examples.

use crate::lattice::{augmented_face_lattice, coordinatize, SimplicialComplexRep};
use crate::monomial::MonomialIdeal;

fn ideal(vars: &[&str], gens: &[&str]) -> MonomialIdeal {
    MonomialIdeal::from_strs(vars, gens).expect("corpus ideals parse")
}

/// `(a^2, ab, b^2)`: rigid, concentrated, lattice-linear.
pub fn m() -> MonomialIdeal {
    ideal(&["a", "b"], &["a^2", "a*b", "b^2"])
}

/// `(bc, ac, a^2b)`: its two first syzygies `abc < a^2bc` are comparable.
pub fn n() -> MonomialIdeal {
    ideal(&["a", "b", "c"], &["b*c", "a*c", "a^2*b"])
}

/// Six generators on nine variables whose lcm-lattice is the face lattice
/// of three triangles glued in a ring: concentrated but not rigid.
pub fn triangle_ring() -> MonomialIdeal {
    ideal(
        &["a", "b", "c", "u", "v", "w", "x", "y", "z"],
        &[
            "c*u^2*v*w*x^2*y*z",
            "b*w*x^2*y*z",
            "a^2*b*c*v*x^2*y*z",
            "a*u^2*v*w*z",
            "a^2*b*c*u*y",
            "a^2*b*c*u^2*v*w*x",
        ],
    )
}

/// `(bd, cd^2, ac, c^2d, ab)`: rigid and dispersed, Betti vector
/// `(1, 5, 7, 4, 1)`.
pub fn dispersed() -> MonomialIdeal {
    ideal(
        &["a", "b", "c", "d"],
        &["b*d", "c*d^2", "a*c", "c^2*d", "a*b"],
    )
}

/// `(x, y, z)`: the Koszul case.
pub fn xyz() -> MonomialIdeal {
    ideal(&["x", "y", "z"], &["x", "y", "z"])
}

/// The 6-vertex triangulation of the real projective plane.
pub fn rp2_complex() -> SimplicialComplexRep {
    SimplicialComplexRep::from_facet_lists(
        6,
        &[
            &[1, 2, 3],
            &[1, 3, 4],
            &[1, 4, 5],
            &[1, 5, 6],
            &[1, 6, 2],
            &[2, 3, 5],
            &[3, 4, 6],
            &[4, 5, 2],
            &[5, 6, 3],
            &[6, 2, 4],
        ],
    )
    .expect("the triangulation is a valid complex")
}

/// Coordinatization of the augmented face lattice of [`rp2_complex`].
pub fn rp2() -> MonomialIdeal {
    coordinatize(
        &augmented_face_lattice(&rp2_complex()).expect("face lattices of complexes are lattices"),
    )
}

/// The corpus ideals by name.
pub fn all() -> Vec<(&'static str, MonomialIdeal)> {
    vec![
        ("M", m()),
        ("N", n()),
        ("triangle_ring", triangle_ring()),
        ("dispersed", dispersed()),
        ("xyz", xyz()),
        ("rp2", rp2()),
    ]
}
