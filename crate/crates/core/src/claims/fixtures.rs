//! Explicit lattices and forms that the registry checks against.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::{int, int_matrix, int_vec, IntMatrix};
use crate::glue::{adjoin, named, GlueSpec};
use crate::k3embed::{find_isometry_in_box, EmbeddedLattice};
use crate::lattice::{direct_sum, hyperbolic, rank_one, Lattice};

/// Even lattice of signature (2,2) and determinant 36.
pub fn t() -> Lattice {
    Lattice::new(int_matrix(&[&[-2, -1, 0, -1], &[-1, 2, 1, -1], &[0, 1, -2, 1], &[-1, -1, 1, 2]]))
        .expect("symmetric")
        .named("T")
}

/// `⟨-2⟩ + ⟨-2⟩ + U + U`.
pub fn a1a1uu() -> Lattice {
    let m2 = rank_one(&int(-2)).expect("nonzero");
    direct_sum(&[m2.clone(), m2, hyperbolic(), hyperbolic()])
}

pub fn t_prime_vectors() -> Vec<Vec<BigInt>> {
    vec![int_vec(&[0, 0, 1, -2, -1, 1]), int_vec(&[0, 0, 1, -1, 1, -2])]
}

/// Complement of the two norm -6 vectors above.
pub fn t_prime() -> Result<Lattice> {
    Ok(a1a1uu().orthogonal_complement(&t_prime_vectors())?.named("T'"))
}

pub fn diag_m2_m2_6_6() -> Lattice {
    Lattice::new(crate::exact::diagonal(&int_vec(&[-2, -2, 6, 6]))).expect("symmetric")
}

/// Steps of the T′ construction.
#[derive(Clone, Debug)]
pub struct TPrimeGlue {
    pub t_prime: Lattice,
    /// Columns: a basis of T′ (in T′ coordinates) with Gram diag(-2,-2,6,6).
    pub diagonal_basis: IntMatrix,
    pub glued: Lattice,
    /// Columns: images of T's basis in the glued lattice.
    pub isometry_to_t: Option<IntMatrix>,
}

pub fn t_prime_glue() -> Result<TPrimeGlue> {
    let tp = t_prime()?;
    let diagonal_basis = find_isometry_in_box(&diag_m2_m2_6_6(), &tp, 3)?
        .ok_or_else(|| Error::Infeasible("T' is not diag(-2,-2,6,6) within the search box".into()))?;
    let half: Vec<BigInt> = diagonal_basis.mul_vec(&int_vec(&[1, 1, 1, 1]))?;
    let glued = adjoin(&tp, &[GlueSpec::half(half)], true)?.lattice;
    let isometry_to_t = find_isometry_in_box(&t(), &glued, 3)?;
    Ok(TPrimeGlue { t_prime: tp, diagonal_basis, glued, isometry_to_t })
}

/// Rank-4 transcendental candidate of determinant 2²·17².
pub fn r1156() -> Lattice {
    Lattice::new(int_matrix(&[&[6, 5, 3, -3], &[5, 6, -2, 4], &[3, -2, -6, -2], &[-3, 4, -2, 6]]))
        .expect("symmetric")
        .named("R")
}

/// The Hermitian form on the invariant subspace, in the basis
/// `a1-b1, (a1+b1)√-n, a2√-n, b2√-n, a3, b3`.
pub fn m_h(n: i64) -> IntMatrix {
    let k = -2 * n;
    int_matrix(&[
        &[-2, 0, 0, 0, 0, 0],
        &[0, k, 0, 0, 0, 0],
        &[0, 0, 0, k, 0, 0],
        &[0, 0, k, 0, 0, 0],
        &[0, 0, 0, 0, 0, 2],
        &[0, 0, 0, 0, 2, 0],
    ])
}

pub fn counterexample_diag() -> IntMatrix {
    crate::exact::diagonal(&int_vec(&[-1, -1, -2, -6, 7, 7]))
}

/// `L_p ↪ Λ₃`: identity on `⟨-2⟩ + ⟨-6⟩ + U` and `⟨4p⟩ ↦ (1, 2p)` in the
/// second U.
pub fn lp_in_lambda3(p: u64) -> Result<EmbeddedLattice> {
    let lambda3 = named::lambda(3)?;
    let mut basis: Vec<Vec<BigInt>> = (0..4).map(|i| (0..6).map(|j| int(i64::from(i == j))).collect()).collect();
    basis.push(int_vec(&[0, 0, 0, 0, 1, 2 * p as i64]));
    EmbeddedLattice::new(lambda3, basis)
}

/// `U + D₈ + E₆`.
pub fn u_d8_e6() -> Lattice {
    use crate::lattice::{root_lattice, RootKind};
    direct_sum(&[hyperbolic(), root_lattice(RootKind::D, 8).expect("D8"), root_lattice(RootKind::E, 6).expect("E6")])
}

pub fn u_e8_e6() -> Lattice {
    named::build_named(&named::NamedLattice::UE8E6).expect("fixed construction")
}

/// `U(2)³`.
pub fn u2_cubed() -> Lattice {
    let u2 = hyperbolic().rescale(&int(2)).expect("nonzero");
    direct_sum(&[u2.clone(), u2.clone(), u2])
}

/// Orthogonal projection of `v` onto the rational span of the first `k`
/// basis vectors, returned as the residual `v - proj` (for heights).
pub fn residual_after_projection(l: &Lattice, v: &[BigRational], k: usize) -> Result<Vec<BigRational>> {
    let g = l.gram().to_rational();
    let idx: Vec<usize> = (0..k).collect();
    let sub = g.submatrix(&idx, &idx);
    let rhs: Vec<BigRational> = (0..k).map(|i| crate::exact::dot(g.row(i), v)).collect();
    let c = sub.solve(&rhs).ok_or(Error::Degenerate)?;
    let mut r = v.to_vec();
    for (i, ci) in c.iter().enumerate() {
        r[i] -= ci;
    }
    Ok(r)
}
