//! Small reference complexes.

use crate::complex::{close_downward, Face, SimplicialComplex};

/// The full simplex Δᵈ on vertices 0..=d.
pub fn simplex(d: usize) -> SimplicialComplex {
    close_downward(&[Face::of(&(0..=d as u32).collect::<Vec<_>>())])
}

/// ∂Δᵈ⁺¹, the d-sphere on vertices 0..=d+1.
pub fn sphere(d: usize) -> SimplicialComplex {
    let all: Vec<u32> = (0..=d as u32 + 1).collect();
    let facets: Vec<Face> = Face::of(&all).facets();
    close_downward(&facets)
}

/// The dunce hat: a 9-gon with boundary word 1 2 3 1 2 3 1 3 2, i.e. the
/// three sides a a a⁻¹ identified, triangulated on 8 vertices.
pub fn dunce_hat() -> SimplicialComplex {
    const T: [[u32; 3]; 17] = [
        [1, 2, 4], [1, 2, 5], [1, 2, 7], [1, 3, 6], [1, 3, 7], [1, 3, 8], [1, 4, 5], [1, 6, 8], [2, 3, 4],
        [2, 3, 6], [2, 3, 8], [2, 5, 6], [2, 7, 8], [3, 4, 7], [4, 5, 7], [5, 6, 8], [5, 7, 8],
    ];
    close_downward(&T.map(|t| Face::of(&t)))
}
