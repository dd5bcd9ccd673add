//! Library values checked against independent recomputations.

use k3lattice::ellsurf::{euler_number, height_pairing, KodairaType, SectionIncidence, SurfaceData};
use k3lattice::exact::{int, rat, rat_vec, IntMatrix};
use k3lattice::glue::named;
use k3lattice::k3embed::{self, StandardEmbedding};
use k3lattice::lattice::{root_lattice, RootKind};
use k3lattice::Lattice;
use num_traits::{Signed, Zero};

/// Cofactor expansion; fine for rank <= 8.
fn det_cofactor(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det_cofactor(&minor)
        })
        .sum()
}

fn small(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect()
}

#[test]
fn root_lattice_determinants() {
    // Negative definite: det = (-1)^n |disc|.
    let cases = [
        (RootKind::A, 1, 2),
        (RootKind::A, 4, 5),
        (RootKind::A, 7, 8),
        (RootKind::D, 4, 4),
        (RootKind::D, 5, 4),
        (RootKind::D, 7, 4),
        (RootKind::E, 6, 3),
        (RootKind::E, 7, 2),
        (RootKind::E, 8, 1),
    ];
    for (k, n, disc) in cases {
        let l = root_lattice(k, n).unwrap();
        let sign = if n % 2 == 0 { 1 } else { -1 };
        assert_eq!(l.det(), int(sign * disc), "{k:?}{n}");
        assert_eq!(det_cofactor(&small(l.gram())), sign * disc);
        assert_eq!(l.signature(), (0, n));
        assert!(l.is_even());
        assert!((0..n).all(|i| l.gram()[(i, i)] == int(-2)));
    }
}

#[test]
fn discriminant_group_order_is_det() {
    for l in [named::m16().unwrap().lattice, named::kummer().unwrap().lattice, named::l2().unwrap().over.lattice] {
        assert_eq!(l.discriminant_group().unwrap().order(), l.det().abs());
    }
}

#[test]
fn kodaira_euler_numbers() {
    use KodairaType::*;
    let table = [
        (I(1), 1),
        (I(7), 7),
        (IStar(0), 6),
        (IStar(3), 9),
        (II, 2),
        (III, 3),
        (IV, 4),
        (IVStar, 8),
        (IIIStar, 9),
        (IIStar, 10),
    ];
    for (t, e) in table {
        assert_eq!(euler_number(t), e, "{t}");
    }
}

#[test]
fn complements_are_orthogonal_and_primitive() {
    for spec in [StandardEmbedding::A5A1InE8, StandardEmbedding::A2A1CubedInE8, StandardEmbedding::Rank17PicardInV] {
        let e = k3embed::embed_standard(&spec).unwrap();
        let t = k3embed::transcendental_of(&e).unwrap();
        let emb = t.embedding().expect("complement keeps its ambient");
        let amb = &emb.ambient;
        for c in emb.basis.columns() {
            for b in &e.basis {
                assert!(amb.pair(&c, b).is_zero(), "{spec}");
            }
        }
        assert_eq!(t.rank() + e.basis.len(), amb.rank());
        // Primitive iff every invariant factor of the basis matrix is 1.
        let snf = IntMatrix::from_rows(emb.basis.columns()).unwrap().smith_normal_form();
        assert!(snf.invariant_factors().iter().all(|d| *d == int(1)), "{spec}");
        // |det P| = |det T| for a primitive sublattice of a unimodular lattice.
        if amb.det().abs() == int(1) {
            assert_eq!(e.lattice().unwrap().det().abs(), t.det().abs());
        }
    }
}

#[test]
fn height_by_projection_agrees() {
    // h(P) = -(P - proj_T P)^2 with T the trivial lattice.
    let base = named::l2_trivial_plus_s();
    let s_idx = named::l2idx::S;
    let g = base.gram().to_rational();
    let idx: Vec<usize> = (0..s_idx).collect();
    let sub = g.submatrix(&idx, &idx);
    let rhs: Vec<_> = idx.iter().map(|&i| g[(i, s_idx)].clone()).collect();
    let coeffs = sub.solve(&rhs).unwrap();
    let mut r = rat_vec(&(0..base.rank()).map(|i| int(i64::from(i == s_idx))).collect::<Vec<_>>());
    for (i, c) in coeffs.iter().enumerate() {
        r[i] -= c;
    }
    let by_projection = -base.pair_rat(&r, &r);

    let mut components = vec![(KodairaType::IStar(0), 0)];
    components.extend(std::iter::repeat_n((KodairaType::I(2), 1), 9));
    let by_formula =
        height_pairing(&SurfaceData::k3(16, 4), &SectionIncidence { meets_zero_section: Some(1), components }).unwrap();
    assert_eq!(by_projection, by_formula);
    assert_eq!(by_formula, rat(3, 2));
}

#[test]
fn e8_complement_gram_by_hand() {
    // Complement of A5+A1 in E8 has a reduced basis with Gram diag(-2,-6).
    let t = k3embed::standard_complement(&StandardEmbedding::A5A1InE8).unwrap();
    let (r, _) = k3embed::pair_reduce(t.gram());
    assert_eq!(small(&r), vec![vec![-2, 0], vec![0, -6]]);
}

#[test]
fn u_scaled_is_not_u() {
    let u = k3lattice::lattice::hyperbolic();
    let u2 = u.rescale(&int(2)).unwrap();
    assert_eq!(u2.det(), int(-4));
    assert!(!Lattice::new(u2.gram().clone()).unwrap().discriminant_group().unwrap().invariant_factors.is_empty());
}
