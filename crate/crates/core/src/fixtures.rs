//! Small named triangulations used as seeds, examples and test inputs.

use crate::complex::{Face, Triangulation, VertexId};

fn build(faces: &[Face]) -> Triangulation {
    Triangulation::build(faces.to_vec()).expect("fixture is valid")
}

pub const TRIANGLE: &[Face] = &[[1, 2, 3]];

/// K4 as a disk: centre 4 of degree 3.
pub const K4_DISK: &[Face] = &[[1, 2, 4], [2, 3, 4], [3, 1, 4]];

/// The octahedron with one face (2 5 6) removed. Inner vertices 1, 3, 4;
/// antipodal pairs 1-5, 2-4, 3-6.
pub const DISK_OCT: &[Face] = &[
    [1, 2, 3],
    [1, 2, 6],
    [1, 3, 4],
    [1, 4, 6],
    [2, 3, 5],
    [3, 4, 5],
    [4, 5, 6],
];

pub const SPHERE_OCT: &[Face] = &[
    [1, 2, 3],
    [1, 2, 6],
    [1, 3, 4],
    [1, 4, 6],
    [2, 3, 5],
    [3, 4, 5],
    [4, 5, 6],
    [2, 5, 6],
];

/// Wheel with four spokes: centre 5, rim 1 2 3 4.
pub const FLAG5: &[Face] = &[[5, 1, 2], [5, 2, 3], [5, 3, 4], [5, 4, 1]];

/// Roles in [`FLAG5`]: `[x, x1, a, b, x2]`.
pub const FLAG5_ROLES: [VertexId; 5] = [5, 1, 2, 3, 4];

/// K5 in the Möbius strip (K6 minus a vertex); boundary 1 3 5 2 4.
pub const MOBIUS_M1: &[Face] = &[[1, 2, 3], [2, 3, 4], [3, 4, 5], [4, 5, 1], [5, 1, 2]];

/// [`DISK_OCT`] with a flag (centre 7, triodes 8 and 9) added along the
/// boundary edge 2-6; both rim ends have degree 6.
pub const FLAG_EXT: &[Face] = &[
    [1, 2, 3],
    [1, 2, 6],
    [1, 3, 4],
    [1, 4, 6],
    [2, 3, 5],
    [3, 4, 5],
    [4, 5, 6],
    [7, 2, 8],
    [7, 8, 9],
    [7, 9, 6],
    [7, 6, 2],
];

/// A flag-shaped wheel (centre 8, triodes 9 and 10) whose rim end 7 has
/// degree 4, so the centre is not independent of degree 4.
pub const FLAG_EXT_BLOCKED: &[Face] = &[
    [1, 2, 3],
    [1, 2, 6],
    [1, 3, 4],
    [1, 4, 6],
    [2, 3, 5],
    [3, 4, 5],
    [4, 5, 6],
    [2, 5, 7],
    [8, 7, 9],
    [8, 9, 10],
    [8, 10, 2],
    [8, 2, 7],
];

/// The 7-vertex torus with vertex 0 removed: a punctured torus whose six
/// vertices all lie on the boundary and have degree 5.
pub const PUNCTURED_TORUS_K7: &[Face] = &[
    [1, 2, 4],
    [2, 3, 5],
    [3, 4, 6],
    [1, 5, 6],
    [1, 3, 4],
    [2, 4, 5],
    [3, 5, 6],
    [1, 2, 6],
];

/// A 4-minimal punctured torus whose only contractible edges lie in one
/// non-removable quasi-octahedron (center 1 2 5).
pub const PUNCTURED_TORUS_QUASI: &[Face] = &[
    [1, 2, 3],
    [1, 2, 5],
    [1, 3, 4],
    [1, 4, 5],
    [2, 3, 6],
    [2, 5, 6],
    [3, 4, 8],
    [3, 6, 7],
    [3, 8, 9],
    [4, 6, 7],
    [4, 6, 9],
    [4, 7, 8],
    [6, 8, 9],
];

/// A Möbius strip with an M-component centered at 2 5 6 (found by
/// expanding [`MOBIUS_M1`] with octahedron additions).
pub const MOBIUS_M: &[Face] = &[
    [4, 5, 6],
    [5, 6, 2],
    [6, 2, 3],
    [1, 7, 8],
    [1, 7, 3],
    [7, 8, 2],
    [1, 8, 4],
    [1, 4, 3],
    [7, 2, 3],
    [9, 10, 11],
    [9, 10, 4],
    [10, 11, 3],
    [9, 11, 5],
    [9, 5, 4],
    [10, 3, 4],
];

/// A Möbius strip with a boundary octahedron whose replacement (R5)
/// leaves a quasi-octahedron.
pub const MOBIUS_R5: &[Face] = &[
    [3, 4, 5],
    [4, 5, 6],
    [1, 7, 8],
    [1, 7, 4],
    [7, 8, 2],
    [1, 8, 3],
    [1, 3, 4],
    [7, 2, 4],
    [8, 2, 3],
    [9, 5, 6],
    [9, 6, 3],
    [2, 9, 3],
];

/// A Möbius strip with a contractible N-component.
pub const MOBIUS_N: &[Face] = &[
    [3, 4, 5],
    [4, 5, 6],
    [5, 6, 2],
    [1, 7, 8],
    [1, 7, 3],
    [7, 8, 2],
    [1, 8, 4],
    [1, 4, 3],
    [9, 6, 3],
    [9, 3, 7],
    [2, 9, 6],
    [2, 9, 7],
];

/// A Möbius strip with an external octahedron that can be folded (R3).
pub const MOBIUS_R3: &[Face] = &[
    [2, 3, 4],
    [3, 4, 5],
    [4, 5, 6],
    [7, 8, 9],
    [7, 8, 1],
    [8, 9, 2],
    [7, 9, 4],
    [7, 4, 1],
    [8, 2, 1],
    [9, 2, 4],
    [10, 5, 6],
    [10, 6, 3],
    [2, 10, 3],
];

pub fn triangle() -> Triangulation {
    build(TRIANGLE)
}

pub fn k4_disk() -> Triangulation {
    build(K4_DISK)
}

pub fn disk_oct() -> Triangulation {
    build(DISK_OCT)
}

pub fn sphere_oct() -> Triangulation {
    build(SPHERE_OCT)
}

pub fn flag5() -> Triangulation {
    build(FLAG5)
}

pub fn mobius_m1() -> Triangulation {
    build(MOBIUS_M1)
}

pub fn flag_ext() -> Triangulation {
    build(FLAG_EXT)
}

pub fn flag_ext_blocked() -> Triangulation {
    build(FLAG_EXT_BLOCKED)
}

pub fn punctured_torus_k7() -> Triangulation {
    build(PUNCTURED_TORUS_K7)
}

pub fn punctured_torus_quasi() -> Triangulation {
    build(PUNCTURED_TORUS_QUASI)
}

pub fn mobius_m() -> Triangulation {
    build(MOBIUS_M)
}

/// Looks a fixture up by (case-insensitive) name.
pub fn by_name(name: &str) -> Option<Triangulation> {
    let faces = match name.to_ascii_lowercase().as_str() {
        "triangle" => TRIANGLE,
        "k4_disk" => K4_DISK,
        "disk_oct" => DISK_OCT,
        "sphere_oct" => SPHERE_OCT,
        "flag5" => FLAG5,
        "mobius_m1" | "m1" => MOBIUS_M1,
        "flag_ext" => FLAG_EXT,
        "flag_ext_blocked" => FLAG_EXT_BLOCKED,
        "punctured_torus_k7" => PUNCTURED_TORUS_K7,
        "punctured_torus_quasi" => PUNCTURED_TORUS_QUASI,
        "mobius_m" => MOBIUS_M,
        "mobius_r5" => MOBIUS_R5,
        "mobius_n" => MOBIUS_N,
        "mobius_r3" => MOBIUS_R3,
        _ => return None,
    };
    Some(build(faces))
}

pub const NAMES: &[&str] = &[
    "triangle",
    "k4_disk",
    "disk_oct",
    "sphere_oct",
    "flag5",
    "mobius_m1",
    "flag_ext",
    "flag_ext_blocked",
    "punctured_torus_k7",
    "punctured_torus_quasi",
    "mobius_m",
    "mobius_r5",
    "mobius_n",
    "mobius_r3",
];

pub fn all() -> Vec<Triangulation> {
    NAMES.iter().map(|n| by_name(n).expect("listed fixture")).collect()
}
