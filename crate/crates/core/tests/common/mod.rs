//! Brute-force oracles and generators shared by the integration tests.
#![allow(dead_code)]

use k3lattice::exact::{int, int_matrix, IntMatrix};
use k3lattice::glue::{build_named, NamedLattice};
use k3lattice::lattice::{direct_sum, root_lattice, RootKind};
use k3lattice::quadform::{hilbert_symbol_int, Place};
use k3lattice::{k3embed, Lattice};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

/// Strips `p²` factors so that the valuation is at most 1.
fn reduce(mut a: i64, p: i64) -> i64 {
    while a % (p * p) == 0 {
        a /= p * p;
    }
    a
}

/// `(a,b)_p` from primitive solutions of `z² = a x² + b y²` modulo `p^k`.
pub fn hilbert_by_search(a: i64, b: i64, p: u64) -> i8 {
    let pi = p as i64;
    let (a, b) = (reduce(a, pi), reduce(b, pi));
    let k = if p == 2 { 5 } else { 2 };
    let m = pi.pow(k);
    let (mut sq_any, mut sq_unit) = (vec![false; m as usize], vec![false; m as usize]);
    for z in 0..m {
        let r = (z * z % m) as usize;
        sq_any[r] = true;
        if z % pi != 0 {
            sq_unit[r] = true;
        }
    }
    for x in 0..m {
        for y in 0..m {
            let r = (a * x % m * x % m + b * y % m * y % m).rem_euclid(m) as usize;
            let unit_xy = x % pi != 0 || y % pi != 0;
            if (unit_xy && sq_any[r]) || sq_unit[r] {
                return 1;
            }
        }
    }
    -1
}

pub fn hilbert_real(a: i64, b: i64) -> i8 {
    if a < 0 && b < 0 {
        -1
    } else {
        1
    }
}

/// Product of `(a,b)_v` over every place, including primes dividing `2ab`.
pub fn hilbert_product(a: i64, b: i64) -> i8 {
    let mut primes: Vec<u64> = vec![2];
    for x in [a, b] {
        let mut n = x.unsigned_abs();
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                primes.push(d);
                while n % d == 0 {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            primes.push(n);
        }
    }
    primes.sort();
    primes.dedup();
    let mut prod = hilbert_symbol_int(&int(a), &int(b), Place::Real).unwrap();
    for p in primes {
        prod *= hilbert_symbol_int(&int(a), &int(b), Place::Prime(p)).unwrap();
    }
    prod
}

pub fn nonzero() -> impl Strategy<Value = i64> {
    (-500i64..500).prop_filter("nonzero", |x| *x != 0)
}

pub fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])
}

/// Symmetric 3x3 with entries in [-6, 6] that is positive definite.
pub fn definite3() -> impl Strategy<Value = IntMatrix> {
    (1i64..=6, 1i64..=6, 1i64..=6, -6i64..=6, -6i64..=6, -6i64..=6)
        .prop_filter("positive definite", |&(a, b, c, d, e, f)| {
            // Sylvester: leading minors positive.
            let m2 = a * b - d * d;
            let m3 = a * (b * c - f * f) - d * (d * c - f * e) + e * (d * f - b * e);
            m2 > 0 && m3 > 0
        })
        .prop_map(|(a, b, c, d, e, f)| int_matrix(&[&[a, d, e], &[d, b, f], &[e, f, c]]))
}

/// Unimodular 3x3 matrices as products of elementary moves.
pub fn unimodular3() -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..6).prop_map(|ops| {
        let mut m = IntMatrix::identity(3);
        for (i, j, k) in ops {
            if i == j {
                continue;
            }
            for r in 0..3 {
                let add = &m[(r, j)] * int(k);
                m[(r, i)] += add;
            }
        }
        m
    })
}

/// Cofactors `adj_jj` and the determinant of a 3x3 integer matrix.
fn adjugate_diag(g: &IntMatrix) -> ([i64; 3], i64) {
    let a: Vec<Vec<i64>> = (0..3).map(|i| (0..3).map(|j| g[(i, j)].to_i64().unwrap()).collect()).collect();
    let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    let adj = [
        a[1][1] * a[2][2] - a[1][2] * a[2][1],
        a[0][0] * a[2][2] - a[0][2] * a[2][0],
        a[0][0] * a[1][1] - a[0][1] * a[1][0],
    ];
    (adj, det)
}

/// Exhaustive isometry test for positive definite rank 3: every vector of
/// norm `N` satisfies `x_j² det G <= N adj(G)_jj`.
pub fn isometric_by_search(g1: &IntMatrix, g2: &IntMatrix) -> bool {
    let (adj, det) = adjugate_diag(g2);
    let norm = |x: &[i64]| -> i64 {
        let mut s = 0;
        for i in 0..3 {
            for j in 0..3 {
                s += x[i] * x[j] * g2[(i, j)].to_i64().unwrap();
            }
        }
        s
    };
    let pair = |x: &[i64], y: &[i64]| -> i64 {
        let mut s = 0;
        for i in 0..3 {
            for j in 0..3 {
                s += x[i] * y[j] * g2[(i, j)].to_i64().unwrap();
            }
        }
        s
    };
    let target = |i: usize, j: usize| g1[(i, j)].to_i64().unwrap();
    let maxn = (0..3).map(|i| target(i, i)).max().unwrap();
    let b: Vec<i64> = adj
        .iter()
        .map(|&c| {
            let mut x = 0;
            while (x + 1) * (x + 1) * det <= maxn * c {
                x += 1;
            }
            x
        })
        .collect();
    let mut by_norm: Vec<Vec<[i64; 3]>> = vec![Vec::new(); 3];
    for x in -b[0]..=b[0] {
        for y in -b[1]..=b[1] {
            for z in -b[2]..=b[2] {
                let v = [x, y, z];
                let n = norm(&v);
                for (i, bucket) in by_norm.iter_mut().enumerate() {
                    if n == target(i, i) {
                        bucket.push(v);
                    }
                }
            }
        }
    }
    for u in &by_norm[0] {
        for v in &by_norm[1] {
            if pair(u, v) != target(0, 1) {
                continue;
            }
            for w in &by_norm[2] {
                if pair(u, w) != target(0, 2) || pair(v, w) != target(1, 2) {
                    continue;
                }
                let det = u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0])
                    + u[2] * (v[0] * w[1] - v[1] * w[0]);
                if det.abs() == 1 {
                    return true;
                }
            }
        }
    }
    false
}

pub fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        prop::collection::vec(-20i64..=20, r * c).prop_map(move |v| {
            let mut m = IntMatrix::zeros(r, c);
            for i in 0..r {
                for j in 0..c {
                    m[(i, j)] = int(v[i * c + j]);
                }
            }
            m
        })
    })
}

pub fn check_smith(m: &IntMatrix) -> Result<(), String> {
    let s = m.smith_normal_form();
    let prod = s.u.mul(m).and_then(|x| x.mul(&s.v)).map_err(|e| e.to_string())?;
    if prod != s.d {
        return Err(format!("u m v != d for {:?}", m.to_rows()));
    }
    for (name, x) in [("u", &s.u), ("v", &s.v)] {
        if x.det().map_err(|e| e.to_string())?.abs() != BigInt::one() {
            return Err(format!("{name} not unimodular"));
        }
    }
    let k = m.rows().min(m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if i != j && !s.d[(i, j)].is_zero() {
                return Err("d not diagonal".into());
            }
        }
    }
    for i in 0..k {
        if s.d[(i, i)].is_negative() {
            return Err("negative invariant factor".into());
        }
        if i + 1 < k && !s.d[(i, i)].is_zero() && !(&s.d[(i + 1, i + 1)] % &s.d[(i, i)]).is_zero() {
            return Err("divisibility chain broken".into());
        }
        if i + 1 < k && s.d[(i, i)].is_zero() && !s.d[(i + 1, i + 1)].is_zero() {
            return Err("zero before nonzero".into());
        }
    }
    Ok(())
}

/// Even bases for gluing: sums of up to four small root lattices or `U`.
pub fn glue_base() -> impl Strategy<Value = Lattice> {
    let block = prop::sample::select(vec![
        (RootKind::A, 1usize),
        (RootKind::A, 2),
        (RootKind::A, 3),
        (RootKind::D, 4),
        (RootKind::D, 6),
        (RootKind::E, 7),
        (RootKind::A, 7),
    ]);
    prop::collection::vec(block, 1..=4).prop_map(|bs| {
        let parts: Vec<Lattice> = bs.into_iter().map(|(k, n)| root_lattice(k, n).unwrap()).collect();
        direct_sum(&parts)
    })
}

pub fn check_overlattice_dets(base: &Lattice) -> Result<usize, String> {
    let overs = k3lattice::glue::even_overlattices(base, 64).map_err(|e| e.to_string())?;
    for o in &overs {
        let lhs = o.lattice.det() * &o.index * &o.index;
        if lhs != base.det() {
            return Err(format!("det {} * {}^2 != {}", o.lattice.det(), o.index, base.det()));
        }
        if !o.lattice.is_even() {
            return Err("odd overlattice".into());
        }
    }
    Ok(overs.len())
}

/// `q(x+y) ≡ q(x) + q(y) + 2b(x,y)` and agreement with the norm of a lift,
/// on up to `limit` pairs of elements.
pub fn check_disc_form(l: &Lattice, limit: usize) -> Result<(), String> {
    let f = l.discriminant_group().map_err(|e| e.to_string())?;
    let t = f.table().map_err(|e| e.to_string())?;
    let n = t.n;
    let order = t.order();
    let step = (order / limit.max(1)).max(1);
    let elems: Vec<usize> = (0..order).step_by(step).take(limit).collect();
    for &i in &elems {
        let x = t.elem(i);
        let lift = f.lift(&x);
        let direct = l.pair_rat(&lift, &lift);
        let scaled = direct * k3lattice::exact::rat(n, 1);
        if !scaled.is_integer() {
            return Err("q denominator exceeds n".into());
        }
        if l.is_even() {
            let m = int(2 * n);
            let want = ((scaled.to_integer() % &m) + &m) % &m;
            if int(t.q(&x)) != want {
                return Err(format!("q({x:?}) = {} but the lift gives {want}/{n}", t.q(&x)));
            }
        }
        for &j in elems.iter().take(16) {
            let y = t.elem(j);
            let s = t.add(&x, &y);
            if l.is_even() {
                let lhs = t.q(&s);
                let rhs = (t.q(&x) + t.q(&y) + 2 * t.b(&x, &y)).rem_euclid(2 * n);
                if lhs != rhs {
                    return Err(format!("q axiom fails at {x:?}, {y:?}"));
                }
            }
            let ly = f.lift(&y);
            let b = l.pair_rat(&lift, &ly) * k3lattice::exact::rat(n, 1);
            let bn = ((b.to_integer() % int(n)) + int(n)) % int(n);
            if int(t.b(&x, &y)) != bn || t.b(&x, &y) != t.b(&y, &x) {
                return Err(format!("b mismatch at {x:?}, {y:?}"));
            }
        }
    }
    Ok(())
}

pub fn named_lattices() -> Vec<Lattice> {
    NamedLattice::catalogue().iter().map(|n| build_named(n).unwrap()).collect()
}

/// Checks `definite_isomorphic` against the exhaustive search.
pub fn check_definite(g1: &IntMatrix, g2: &IntMatrix) -> Result<(), String> {
    let l1 = Lattice::new(g1.clone()).unwrap();
    let l2 = Lattice::new(g2.clone()).unwrap();
    let lib = k3embed::definite_isomorphic(&l1, &l2).map_err(|e| e.to_string())?;
    let brute = isometric_by_search(g1, g2);
    if lib != brute {
        return Err(format!("library {lib}, search {brute} for {:?} vs {:?}", g1.to_rows(), g2.to_rows()));
    }
    Ok(())
}
