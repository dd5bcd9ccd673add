//! Overlattices obtained by adjoining rational glue vectors, enumeration of
//! even overlattices, and the named lattices built that way.

pub mod named;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{self, hermite_rows, to_rat, IntMatrix, RatMatrix};
use crate::lattice::Lattice;

pub use named::{build_named, NamedLattice};

/// The rational vector `vector / denominator` in base coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueSpec {
    pub vector: Vec<BigInt>,
    pub denominator: BigInt,
}

impl GlueSpec {
    pub fn new(vector: Vec<BigInt>, denominator: BigInt) -> Self {
        GlueSpec { vector, denominator }
    }

    pub fn half(vector: Vec<BigInt>) -> Self {
        GlueSpec { vector, denominator: exact::int(2) }
    }

    pub fn from_rational(v: &[BigRational]) -> Self {
        let d = exact::common_denominator(v);
        let vector = v.iter().map(|x| (x * to_rat(&d)).to_integer()).collect();
        GlueSpec { vector, denominator: d }
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.vector.iter().map(|x| BigRational::new(x.clone(), self.denominator.clone())).collect()
    }
}

/// A finite-index overlattice `M ⊇ base`; `basis` columns give M's basis in
/// base coordinates.
#[derive(Clone, Debug)]
pub struct Overlattice {
    pub lattice: Lattice,
    pub base: Lattice,
    pub basis: RatMatrix,
    pub index: BigInt,
}

impl Overlattice {
    pub fn trivial(base: &Lattice) -> Self {
        Overlattice {
            lattice: base.clone(),
            base: base.clone(),
            basis: RatMatrix::identity(base.rank()),
            index: BigInt::one(),
        }
    }

    /// Coordinates of a base-coordinate vector in M's basis, when it lies in M.
    pub fn coords(&self, v: &[BigRational]) -> Option<Vec<BigInt>> {
        let x = self.basis.solve(v)?;
        exact::integral_vec(&x)
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_int(&self, v: &[BigInt]) -> bool {
        self.contains(&exact::rat_vec(v))
    }

    pub fn to_base(&self, coords: &[BigInt]) -> Vec<BigRational> {
        self.basis.mul_vec(&exact::rat_vec(coords)).expect("length matches")
    }

    pub fn pair(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        self.base.pair_rat(x, y)
    }

    pub fn norm(&self, x: &[BigRational]) -> BigRational {
        self.pair(x, x)
    }

    /// Pairings of a base-coordinate vector with M's basis.
    pub fn pairings(&self, v: &[BigRational]) -> Vec<BigRational> {
        self.basis.columns().iter().map(|b| self.pair(v, b)).collect()
    }

    /// gcd of the pairings of `v` with all of M; `None` if some pairing is
    /// not integral.
    pub fn divisibility(&self, v: &[BigRational]) -> Option<BigInt> {
        let p = exact::integral_vec(&self.pairings(v))?;
        Some(exact::vec_gcd(&p))
    }

    /// Adjoins further glue, keeping the same base.
    pub fn adjoin(&self, glue: &[GlueSpec], require_even: bool) -> Result<Overlattice> {
        let mut all: Vec<GlueSpec> = self.basis.columns().iter().map(|c| GlueSpec::from_rational(c)).collect();
        all.extend_from_slice(glue);
        adjoin(&self.base, &all, require_even)
    }
}

/// `base[glue]`: the lattice generated by `base` and the glue vectors.
pub fn adjoin(base: &Lattice, glue: &[GlueSpec], require_even: bool) -> Result<Overlattice> {
    let n = base.rank();
    let mut den = BigInt::one();
    for g in glue {
        if g.vector.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "glue vector of length {} for a rank {n} lattice",
                g.vector.len()
            )));
        }
        if !g.denominator.is_positive() {
            return Err(Error::InvalidParameter("glue denominator must be positive".into()));
        }
        den = den.lcm(&g.denominator);
    }
    let mut rows: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { den.clone() } else { BigInt::zero() }).collect()).collect();
    for g in glue {
        let f = &den / &g.denominator;
        rows.push(g.vector.iter().map(|x| x * &f).collect());
    }
    let h = hermite_rows(rows);
    debug_assert_eq!(h.len(), n);
    let pivots: BigInt = (0..n).map(|i| h[i][i].clone()).product();
    let index = num_traits::pow(den.clone(), n) / pivots;
    let basis = RatMatrix::from_fn(n, n, |i, j| BigRational::new(h[j][i].clone(), den.clone()));
    let gram = base.gram().to_rational().congruent(&basis)?;
    if let Some(bad) = (0..n * n).map(|k| &gram[(k / n, k % n)]).find(|x| !x.is_integer()) {
        return Err(Error::NonIntegralPairing(bad.to_string()));
    }
    let gram: IntMatrix = gram.map(|x| x.to_integer());
    if require_even {
        if let Some(i) = (0..n).find(|&i| gram[(i, i)].is_odd()) {
            return Err(Error::OddNorm(gram[(i, i)].to_string()));
        }
    }
    let mut lattice = Lattice::new(gram)?;
    if let Some(name) = base.name() {
        lattice = lattice.named(format!("{name}[glue]"));
    }
    Ok(Overlattice { lattice, base: base.clone(), basis, index })
}

/// All even overlattices of `l` of index at most `max_index`, one per
/// isotropic subgroup of the discriminant form, ordered by index. The first
/// entry is `l` itself.
pub fn even_overlattices(l: &Lattice, max_index: u64) -> Result<Vec<Overlattice>> {
    if !l.is_even() {
        return Err(Error::OddLattice);
    }
    let form = l.discriminant_group()?;
    let subs = form.isotropic_subgroups(max_index)?;
    subs.iter()
        .map(|s| {
            let glue: Vec<GlueSpec> = s.generators.iter().map(|g| GlueSpec::from_rational(&form.lift(g))).collect();
            adjoin(l, &glue, true)
        })
        .collect()
}

/// Searches `target + Σ c_i s_i` with `|c_i| ≤ bound` for a vector of norm 0
/// whose pairings with `l` are all divisible by `divisor`.
pub fn find_isotropic_glue(
    l: &Lattice,
    target: &[BigInt],
    divisor: &BigInt,
    search_basis: &[Vec<BigInt>],
    bound: i64,
) -> Option<GlueSpec> {
    let k = search_basis.len();
    let mut c = vec![-bound; k];
    loop {
        let mut v: Vec<BigInt> = target.to_vec();
        for (ci, s) in c.iter().zip(search_basis) {
            if *ci != 0 {
                for (x, y) in v.iter_mut().zip(s) {
                    *x += y * BigInt::from(*ci);
                }
            }
        }
        if l.norm(&v).is_zero() && l.divisibility(&v).is_multiple_of(divisor) {
            return Some(GlueSpec::new(v, divisor.clone()));
        }
        // odometer
        let mut i = 0;
        loop {
            if i == k {
                return None;
            }
            if c[i] < bound {
                c[i] += 1;
                break;
            }
            c[i] = -bound;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, int_vec};
    use crate::lattice::{direct_sum, hyperbolic, root_lattice, RootKind};

    #[test]
    fn odd_glue_rejected() {
        let a1 = root_lattice(RootKind::A, 1).unwrap();
        let base = direct_sum(&[a1.clone(), a1]);
        let err = adjoin(&base, &[GlueSpec::half(int_vec(&[1, 1]))], true).unwrap_err();
        assert!(matches!(err, Error::OddNorm(_)));
        let ok = adjoin(&base, &[GlueSpec::half(int_vec(&[1, 1]))], false).unwrap();
        assert_eq!(ok.lattice.det(), int(1));
        assert_eq!(ok.index, int(2));
    }

    #[test]
    fn non_integral_glue_rejected() {
        let u = hyperbolic();
        let err = adjoin(&u, &[GlueSpec::half(int_vec(&[1, 0]))], false).unwrap_err();
        assert!(matches!(err, Error::NonIntegralPairing(_)));
    }

    #[test]
    fn d8_spinor_gives_e8() {
        let d8 = root_lattice(RootKind::D, 8).unwrap();
        let overs = even_overlattices(&d8, 4).unwrap();
        // trivial, and the two spinor classes (the vector class has odd norm)
        assert_eq!(overs.len(), 3);
        for o in &overs[1..] {
            assert_eq!(o.lattice.det(), int(1));
            assert_eq!(o.index, int(2));
        }
    }

    #[test]
    fn unimodular_has_no_overlattices() {
        let e8 = root_lattice(RootKind::E, 8).unwrap();
        assert_eq!(even_overlattices(&e8, 1 << 10).unwrap().len(), 1);
    }

    #[test]
    fn isotropic_search_in_u() {
        let u = hyperbolic();
        let g = find_isotropic_glue(&u, &int_vec(&[1, 0]), &int(1), &[], 3).unwrap();
        assert_eq!(g.vector, int_vec(&[1, 0]));
        assert!(find_isotropic_glue(&u, &int_vec(&[1, 1]), &int(1), &[], 3).is_none());
    }
}
