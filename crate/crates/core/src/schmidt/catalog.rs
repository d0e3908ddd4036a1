//! Explicit real orthogonal LDOI triples with known operator Schmidt rank.

use crate::linalg::{diag_part, real_matrix};
use crate::MatrixTriple;

/// A known triple together with its operator Schmidt rank.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub dim: usize,
    pub rank: usize,
    pub triple: MatrixTriple,
}

const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// `B = diag A` triple from a sign matrix `A` and a sparse sign matrix `C`.
fn diagonal_b(a: &[&[f64]], c: &[&[f64]]) -> MatrixTriple {
    let a = real_matrix(a);
    let b = diag_part(&a);
    MatrixTriple::new(a, b, real_matrix(c)).expect("catalog matrices are square")
}

fn entry(name: &'static str, dim: usize, rank: usize, triple: MatrixTriple) -> CatalogEntry {
    CatalogEntry {
        name,
        dim,
        rank,
        triple,
    }
}

/// Every catalogued triple, ordered by dimension and rank.
pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        entry(
            "d3-rank4",
            3,
            4,
            MatrixTriple::new(
                real_matrix(&[&[H, H, -1.0], &[H, H, 1.0], &[1.0, -1.0, 1.0]]),
                real_matrix(&[&[H, -H, 0.0], &[H, H, 0.0], &[0.0, 0.0, 1.0]]),
                real_matrix(&[&[H, -H, 0.0], &[H, H, 0.0], &[0.0, 0.0, 1.0]]),
            )
            .expect("square"),
        ),
        entry(
            "d3-rank5",
            3,
            5,
            diagonal_b(
                &[&[1.0, 0.0, 1.0], &[0.0, 1.0, 1.0], &[1.0, 1.0, 1.0]],
                &[&[1.0, 1.0, 0.0], &[1.0, 1.0, 0.0], &[0.0, 0.0, 1.0]],
            ),
        ),
        entry(
            "d3-rank6",
            3,
            6,
            diagonal_b(
                &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 1.0], &[0.0, 1.0, 1.0]],
                &[&[1.0, 1.0, 1.0], &[1.0, 1.0, 0.0], &[1.0, 0.0, 1.0]],
            ),
        ),
        entry(
            "d3-rank7",
            3,
            7,
            diagonal_b(
                &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 1.0], &[0.0, 1.0, -1.0]],
                &[&[1.0, 1.0, 1.0], &[1.0, 1.0, 0.0], &[1.0, 0.0, -1.0]],
            ),
        ),
        entry(
            "d4-rank5",
            4,
            5,
            diagonal_b(
                &[
                    &[-1.0, 0.0, 1.0, 1.0],
                    &[0.0, -1.0, 1.0, 1.0],
                    &[1.0, 1.0, -1.0, -1.0],
                    &[1.0, 1.0, 1.0, 1.0],
                ],
                &[
                    &[-1.0, 1.0, 0.0, 0.0],
                    &[1.0, -1.0, 0.0, 0.0],
                    &[0.0, 0.0, -1.0, 0.0],
                    &[0.0, 0.0, 0.0, 1.0],
                ],
            ),
        ),
        entry(
            "d4-rank6",
            4,
            6,
            diagonal_b(
                &[
                    &[-1.0, 0.0, 1.0, 1.0],
                    &[0.0, -1.0, 1.0, 1.0],
                    &[1.0, 1.0, -1.0, 1.0],
                    &[1.0, 1.0, 1.0, -1.0],
                ],
                &[
                    &[-1.0, 1.0, 0.0, 0.0],
                    &[1.0, -1.0, 0.0, 0.0],
                    &[0.0, 0.0, -1.0, 0.0],
                    &[0.0, 0.0, 0.0, -1.0],
                ],
            ),
        ),
        entry(
            "d4-rank7",
            4,
            7,
            diagonal_b(
                &[
                    &[-1.0, 0.0, 0.0, 1.0],
                    &[0.0, -1.0, -1.0, 1.0],
                    &[0.0, 1.0, 1.0, 1.0],
                    &[1.0, 1.0, 1.0, -1.0],
                ],
                &[
                    &[-1.0, 1.0, 1.0, 0.0],
                    &[1.0, -1.0, 0.0, 0.0],
                    &[1.0, 0.0, 1.0, 0.0],
                    &[0.0, 0.0, 0.0, -1.0],
                ],
            ),
        ),
        entry(
            "d4-rank8",
            4,
            8,
            diagonal_b(
                &[
                    &[-1.0, 0.0, 0.0, 1.0],
                    &[0.0, -1.0, 1.0, 1.0],
                    &[0.0, 1.0, -1.0, 1.0],
                    &[1.0, 1.0, 1.0, -1.0],
                ],
                &[
                    &[-1.0, 1.0, 1.0, 0.0],
                    &[1.0, -1.0, 0.0, 0.0],
                    &[1.0, 0.0, -1.0, 0.0],
                    &[0.0, 0.0, 0.0, -1.0],
                ],
            ),
        ),
        entry(
            "d4-rank9",
            4,
            9,
            diagonal_b(
                &[
                    &[-1.0, 0.0, 0.0, 0.0],
                    &[0.0, -1.0, 1.0, 1.0],
                    &[0.0, 1.0, -1.0, -1.0],
                    &[0.0, 1.0, 1.0, 1.0],
                ],
                &[
                    &[-1.0, 1.0, 1.0, 1.0],
                    &[1.0, -1.0, 0.0, 0.0],
                    &[1.0, 0.0, -1.0, 0.0],
                    &[1.0, 0.0, 0.0, 1.0],
                ],
            ),
        ),
        entry(
            "d4-rank9-alt",
            4,
            9,
            diagonal_b(
                &[
                    &[1.0, 0.0, 0.0, 0.0],
                    &[0.0, 1.0, 1.0, 1.0],
                    &[0.0, 1.0, 1.0, 1.0],
                    &[0.0, 1.0, 1.0, -1.0],
                ],
                &[
                    &[1.0, 1.0, 1.0, 1.0],
                    &[1.0, 1.0, 0.0, 0.0],
                    &[1.0, 0.0, 1.0, 0.0],
                    &[1.0, 0.0, 0.0, -1.0],
                ],
            ),
        ),
        entry(
            "d4-rank10",
            4,
            10,
            diagonal_b(
                &[
                    &[-1.0, 0.0, 0.0, 0.0],
                    &[0.0, -1.0, 1.0, 1.0],
                    &[0.0, 1.0, -1.0, 1.0],
                    &[0.0, 1.0, 1.0, -1.0],
                ],
                &[
                    &[-1.0, 1.0, 1.0, 1.0],
                    &[1.0, -1.0, 0.0, 0.0],
                    &[1.0, 0.0, -1.0, 0.0],
                    &[1.0, 0.0, 0.0, -1.0],
                ],
            ),
        ),
        entry(
            "d4-rank11",
            4,
            11,
            MatrixTriple::new(
                real_matrix(&[
                    &[H, H, 0.0, 0.0],
                    &[H, H, 0.0, 1.0],
                    &[0.0, 0.0, 1.0, 1.0],
                    &[0.0, 1.0, 1.0, 1.0],
                ]),
                real_matrix(&[
                    &[H, -H, 0.0, 0.0],
                    &[H, H, 0.0, 0.0],
                    &[0.0, 0.0, 1.0, 0.0],
                    &[0.0, 0.0, 0.0, 1.0],
                ]),
                real_matrix(&[
                    &[H, -H, 1.0, 1.0],
                    &[H, H, 1.0, 0.0],
                    &[1.0, 1.0, 1.0, 0.0],
                    &[1.0, 0.0, 0.0, 1.0],
                ]),
            )
            .expect("square"),
        ),
        entry(
            "d5-rank6",
            5,
            6,
            diagonal_b(
                &[
                    &[-1.0, 0.0, 1.0, 1.0, 1.0],
                    &[0.0, -1.0, 1.0, 1.0, 1.0],
                    &[1.0, 1.0, -1.0, 1.0, 1.0],
                    &[1.0, 1.0, 1.0, -1.0, -1.0],
                    &[1.0, 1.0, 1.0, 1.0, 1.0],
                ],
                &[
                    &[-1.0, 1.0, 0.0, 0.0, 0.0],
                    &[1.0, -1.0, 0.0, 0.0, 0.0],
                    &[0.0, 0.0, -1.0, 0.0, 0.0],
                    &[0.0, 0.0, 0.0, -1.0, 0.0],
                    &[0.0, 0.0, 0.0, 0.0, 1.0],
                ],
            ),
        ),
        entry(
            "d5-rank7",
            5,
            7,
            diagonal_b(
                &[
                    &[-1.0, 0.0, 1.0, 1.0, 1.0],
                    &[0.0, -1.0, 1.0, 1.0, 1.0],
                    &[1.0, 1.0, -1.0, 1.0, 1.0],
                    &[1.0, 1.0, 1.0, -1.0, 1.0],
                    &[1.0, 1.0, 1.0, 1.0, -1.0],
                ],
                &[
                    &[-1.0, 1.0, 0.0, 0.0, 0.0],
                    &[1.0, -1.0, 0.0, 0.0, 0.0],
                    &[0.0, 0.0, -1.0, 0.0, 0.0],
                    &[0.0, 0.0, 0.0, -1.0, 0.0],
                    &[0.0, 0.0, 0.0, 0.0, -1.0],
                ],
            ),
        ),
        entry(
            "d5-rank8",
            5,
            8,
            diagonal_b(
                &[
                    &[-1.0, 0.0, 0.0, 1.0, 1.0],
                    &[0.0, -1.0, 1.0, 1.0, 1.0],
                    &[0.0, 1.0, -1.0, 1.0, 1.0],
                    &[1.0, 1.0, 1.0, -1.0, -1.0],
                    &[1.0, 1.0, 1.0, 1.0, 1.0],
                ],
                &[
                    &[-1.0, 1.0, 1.0, 0.0, 0.0],
                    &[1.0, -1.0, 0.0, 0.0, 0.0],
                    &[1.0, 0.0, -1.0, 0.0, 0.0],
                    &[0.0, 0.0, 0.0, -1.0, 0.0],
                    &[0.0, 0.0, 0.0, 0.0, 1.0],
                ],
            ),
        ),
    ]
}

/// First catalogued triple of the given dimension and rank.
pub fn lookup(dim: usize, rank: usize) -> Option<MatrixTriple> {
    catalog()
        .into_iter()
        .find(|e| e.dim == dim && e.rank == rank)
        .map(|e| e.triple)
}
