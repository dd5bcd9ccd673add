//! Invariants of nondegenerate quadratic forms over Q: Hilbert symbols, Hasse
//! invariants, local anisotropic dimensions and Witt indices.
//!
//! Conventions: the Hasse invariant is `ε = ∏_{i<j} (a_i, a_j)` on a diagonal
//! form `⟨a_1, …, a_n⟩`, and `d` is the discriminant in `Q*/Q*²`.

pub mod arith;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{congruence_diagonal, int, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl std::str::FromStr for Place {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" || s == "oo" || s == "R" {
            return Ok(Place::Real);
        }
        let p: u64 = s.parse().map_err(|_| Error::InvalidParameter(format!("bad place {s}")))?;
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(s.to_string()));
        }
        Ok(Place::Prime(p))
    }
}

fn check_place(v: Place) -> Result<()> {
    match v {
        Place::Prime(p) if !arith::is_prime(p) => Err(Error::NotPrime(p.to_string())),
        _ => Ok(()),
    }
}

/// Integer in the same square class as a nonzero rational.
fn class_rep(a: &BigRational) -> Result<BigInt> {
    if a.is_zero() {
        return Err(Error::InvalidParameter("zero has no square class".into()));
    }
    Ok(a.numer() * a.denom())
}

/// `(a, b)_v` for nonzero rationals.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, v: Place) -> Result<i8> {
    check_place(v)?;
    let (a, b) = (class_rep(a)?, class_rep(b)?);
    Ok(hilbert_int(&a, &b, v))
}

pub fn hilbert_symbol_int(a: &BigInt, b: &BigInt, v: Place) -> Result<i8> {
    check_place(v)?;
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidParameter("zero has no square class".into()));
    }
    Ok(hilbert_int(a, b, v))
}

fn hilbert_int(a: &BigInt, b: &BigInt, v: Place) -> i8 {
    match v {
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (al, u) = arith::valuation(a, 2);
            let (be, w) = arith::valuation(b, 2);
            let u8_ = u.mod_floor(&int(8)).to_u64().unwrap();
            let w8 = w.mod_floor(&int(8)).to_u64().unwrap();
            let eps = |x: u64| ((x - 1) / 2) % 2;
            let omega = |x: u64| ((x * x - 1) / 8) % 2;
            let e = eps(u8_) * eps(w8) + (al as u64) * omega(w8) + (be as u64) * omega(u8_);
            if e.is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (al, u) = arith::valuation(a, p);
            let (be, w) = arith::valuation(b, p);
            let mut s: i8 = 1;
            if (al * be) % 2 == 1 && (p % 4 == 3) {
                s = -s;
            }
            if be % 2 == 1 {
                s *= arith::legendre(&u, p);
            }
            if al % 2 == 1 {
                s *= arith::legendre(&w, p);
            }
            s
        }
    }
}

/// Whether a nonzero rational is a square in `Q_v`.
pub fn is_local_square(a: &BigRational, v: Place) -> Result<bool> {
    check_place(v)?;
    let x = class_rep(a)?;
    Ok(is_local_square_int(&x, v))
}

fn is_local_square_int(x: &BigInt, v: Place) -> bool {
    match v {
        Place::Real => x.is_positive(),
        Place::Prime(p) => {
            let (k, u) = arith::valuation(x, p);
            if k % 2 == 1 {
                return false;
            }
            if p == 2 {
                u.mod_floor(&int(8)) == BigInt::one()
            } else {
                arith::legendre(&u, p) == 1
            }
        }
    }
}

pub fn is_rational_square(x: &BigInt) -> bool {
    !x.is_negative() && {
        let r = x.sqrt();
        &r * &r == *x
    }
}

/// `∏_{i<j} (d_i, d_j)_v`.
pub fn hasse_invariant(diag: &[BigRational], v: Place) -> Result<i8> {
    check_place(v)?;
    let reps: Vec<BigInt> = diag.iter().map(class_rep).collect::<Result<_>>()?;
    let mut e = 1;
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            e *= hilbert_int(&reps[i], &reps[j], v);
        }
    }
    Ok(e)
}

/// Diagonal form equivalent over Q, each entry a squarefree integer.
pub fn diagonalize(gram: &IntMatrix) -> Result<Vec<BigInt>> {
    let d = congruence_diagonal(gram)?;
    d.iter()
        .map(|x| if x.is_zero() { Err(Error::Degenerate) } else { arith::squarefree_part(&(x.numer() * x.denom())) })
        .collect()
}

/// Complete set of Q-equivalence invariants. The Hasse invariant is +1 at
/// every place outside `places`.
#[derive(Clone, Debug, Serialize)]
pub struct QuadFormInvariants {
    pub rank: usize,
    pub disc_class: BigIntStr,
    pub signature: (usize, usize),
    pub hasse_minus: BTreeSet<Place>,
    pub places: BTreeSet<Place>,
}

/// A `BigInt` that serializes as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BigIntStr(pub BigInt);

impl Serialize for BigIntStr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl fmt::Display for BigIntStr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl PartialEq for QuadFormInvariants {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.disc_class == other.disc_class
            && self.signature == other.signature
            && self.hasse_minus == other.hasse_minus
    }
}

impl Eq for QuadFormInvariants {}

impl fmt::Display for QuadFormInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let minus: Vec<String> = self.hasse_minus.iter().map(|p| p.to_string()).collect();
        write!(
            f,
            "rank {}, disc {}, signature ({}, {}), hasse -1 at {{{}}}",
            self.rank,
            self.disc_class,
            self.signature.0,
            self.signature.1,
            minus.join(", ")
        )
    }
}

pub fn invariants(gram: &IntMatrix) -> Result<QuadFormInvariants> {
    let diag = diagonalize(gram)?;
    invariants_of_diagonal(&diag)
}

pub fn invariants_of_diagonal(diag: &[BigInt]) -> Result<QuadFormInvariants> {
    let disc: BigInt = diag.iter().product();
    let disc_class = arith::squarefree_part(&disc)?;
    let pos = diag.iter().filter(|x| x.is_positive()).count();
    let mut places = BTreeSet::from([Place::Real, Place::Prime(2)]);
    for d in diag {
        for (p, _) in arith::factor(d)? {
            places.insert(Place::Prime(p.to_u64().ok_or_else(|| Error::Factorization(p.to_string()))?));
        }
    }
    let mut hasse_minus = BTreeSet::new();
    for &v in &places {
        let mut e = 1;
        for i in 0..diag.len() {
            for j in i + 1..diag.len() {
                e *= hilbert_int(&diag[i], &diag[j], v);
            }
        }
        if e == -1 {
            hasse_minus.insert(v);
        }
    }
    Ok(QuadFormInvariants {
        rank: diag.len(),
        disc_class: BigIntStr(disc_class),
        signature: (pos, diag.len() - pos),
        hasse_minus,
        places,
    })
}

impl QuadFormInvariants {
    pub fn hasse(&self, v: Place) -> i8 {
        if self.hasse_minus.contains(&v) {
            -1
        } else {
            1
        }
    }

    fn disc(&self) -> &BigInt {
        &self.disc_class.0
    }

    /// Anisotropic dimension over `Q_v`.
    pub fn anisotropic_dimension(&self, v: Place) -> Result<usize> {
        check_place(v)?;
        if v == Place::Real {
            return Ok(self.signature.0.abs_diff(self.signature.1));
        }
        Ok(local_aniso(self.rank, self.disc().clone(), self.hasse(v), v))
    }

    /// Witt index over `Q_v`, or over Q when `v` is `None`.
    pub fn witt_index(&self, v: Option<Place>) -> Result<usize> {
        match v {
            Some(v) => Ok((self.rank - self.anisotropic_dimension(v)?) / 2),
            None => {
                // At primes outside `places` the form is unimodular; there the
                // Witt index drops below rank/2 exactly when the signed
                // discriminant is a nonsquare, which happens at infinitely many
                // primes unless it is a global square.
                let n = self.rank;
                let signed = if (n / 2).is_multiple_of(2) { self.disc().clone() } else { -self.disc() };
                let generic =
                    if n.is_multiple_of(2) && !is_rational_square(&signed) { (n / 2).saturating_sub(1) } else { n / 2 };
                let mut w = generic;
                for &v in &self.places {
                    w = w.min(self.witt_index(Some(v))?);
                }
                Ok(w)
            }
        }
    }

    /// Invariants of the rescaled form `c·f`.
    pub fn rescaled(&self, c: &BigInt) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroScale);
        }
        let n = self.rank;
        let c_class = arith::squarefree_part(c)?;
        let disc_class =
            if n % 2 == 1 { arith::squarefree_part(&(self.disc() * &c_class))? } else { self.disc().clone() };
        let signature = if c.is_negative() { (self.signature.1, self.signature.0) } else { self.signature };
        let mut places = self.places.clone();
        for (p, _) in arith::factor(&c_class)? {
            places.insert(Place::Prime(p.to_u64().ok_or_else(|| Error::Factorization(p.to_string()))?));
        }
        let m = n * n.saturating_sub(1) / 2;
        let mut hasse_minus = BTreeSet::new();
        for &v in &places {
            let mut e = self.hasse(v);
            if m % 2 == 1 {
                e *= hilbert_int(&c_class, &int(-1), v);
            }
            if n >= 1 && (n - 1) % 2 == 1 {
                e *= hilbert_int(&c_class, self.disc(), v);
            }
            if e == -1 {
                hasse_minus.insert(v);
            }
        }
        Ok(QuadFormInvariants { rank: n, disc_class: BigIntStr(disc_class), signature, hasse_minus, places })
    }

    /// Whether the two forms define the same projective quadric, i.e. one is
    /// a rational multiple of the other up to equivalence.
    pub fn same_quadric(&self, other: &Self) -> Result<bool> {
        if self.rank != other.rank {
            return Ok(false);
        }
        let n = self.rank;
        if n == 0 {
            return Ok(true);
        }
        if n % 2 == 1 {
            // The scale is forced up to squares: c ≡ d_f · d_g.
            let c = arith::squarefree_part(&(self.disc() * other.disc()))?;
            return Ok(&self.rescaled(&c)? == other);
        }
        if self.disc() != other.disc() {
            return Ok(false);
        }
        // Even rank: c·f keeps the discriminant and, writing c = σ·c' with
        // c' > 0, multiplies ε_v(σf) by (c', δ)_v where δ = (-1)^{n/2}·d.
        // Such a c' exists iff s_v = ε_v(σf)·ε_v(g) is 1 at the real place
        // and wherever δ is a local square.
        let delta = if (n / 2).is_multiple_of(2) { self.disc().clone() } else { -self.disc() };
        for sigma in [1i64, -1] {
            let f = self.rescaled(&int(sigma))?;
            if f.signature != other.signature {
                continue;
            }
            let places: BTreeSet<Place> = f.places.union(&other.places).copied().collect();
            let ok = places.iter().all(|&v| {
                let s = f.hasse(v) * other.hasse(v);
                s == 1 || (v != Place::Real && !is_local_square_int(&delta, v))
            });
            if ok {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn local_aniso(n: usize, d: BigInt, eps: i8, v: Place) -> usize {
    let neg1 = int(-1);
    match n {
        0 => 0,
        1 => 1,
        2 => {
            if is_local_square_int(&-&d, v) {
                0
            } else {
                2
            }
        }
        3 => {
            if hilbert_int(&neg1, &-&d, v) == eps {
                1
            } else {
                3
            }
        }
        4 => {
            if !is_local_square_int(&d, v) {
                2
            } else if eps == hilbert_int(&neg1, &neg1, v) {
                0
            } else {
                4
            }
        }
        _ => {
            // f = H ⊥ g with d_g = -d_f and ε_g = ε_f · (-1, d_g).
            let dg = -d;
            let eg = eps * hilbert_int(&neg1, &dg, v);
            local_aniso(n - 2, dg, eg, v)
        }
    }
}

pub fn anisotropic_dimension(gram: &IntMatrix, v: Place) -> Result<usize> {
    invariants(gram)?.anisotropic_dimension(v)
}

pub fn witt_index(gram: &IntMatrix, v: Option<Place>) -> Result<usize> {
    invariants(gram)?.witt_index(v)
}

/// Whether the quadric `{q = 0} ⊂ P^{n-1}` contains a linear `P^k` over `Q_v`
/// (or over Q when `v` is `None`).
pub fn has_k_planes(gram: &IntMatrix, k: usize, v: Option<Place>) -> Result<bool> {
    Ok(witt_index(gram, v)? > k)
}

pub fn rationally_equivalent(g1: &IntMatrix, g2: &IntMatrix) -> Result<bool> {
    Ok(invariants(g1)? == invariants(g2)?)
}

/// Square class of the signed discriminant `(-1)^{n/2} · det` of an
/// even-rank form; the two rulings of the quadric are defined over
/// `Q(√class)`. Returns `(signed class, raw det class)`.
pub fn ruling_disc(gram: &IntMatrix) -> Result<(BigInt, BigInt)> {
    let n = gram.rows();
    if n % 2 == 1 || n == 0 {
        return Err(Error::InvalidParameter(format!("rank {n} is not even and positive")));
    }
    let det = gram.det()?;
    if det.is_zero() {
        return Err(Error::Degenerate);
    }
    let raw = arith::squarefree_part(&det)?;
    let signed = if (n / 2).is_multiple_of(2) { raw.clone() } else { -&raw };
    Ok((signed, raw))
}

/// Quadric certificate of a Gram matrix (its invariants).
pub fn certificate(gram: &IntMatrix) -> Result<QuadFormInvariants> {
    invariants(gram)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{diagonal, int_matrix, int_vec, rat};

    fn h(a: i64, b: i64, v: Place) -> i8 {
        hilbert_symbol(&rat(a, 1), &rat(b, 1), v).unwrap()
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(h(-1, -1, Place::Real), -1);
        assert_eq!(h(-1, -1, Place::Prime(2)), -1);
        assert_eq!(h(2, 3, Place::Prime(3)), -1);
        assert_eq!(h(5, 7, Place::Prime(3)), 1);
        assert_eq!(h(2, 5, Place::Prime(5)), -1);
        assert!(hilbert_symbol(&rat(0, 1), &rat(1, 1), Place::Real).is_err());
        assert!(hilbert_symbol(&rat(2, 1), &rat(1, 1), Place::Prime(4)).is_err());
    }

    #[test]
    fn hasse_of_small_forms() {
        let ones = vec![rat(1, 1); 3];
        assert_eq!(hasse_invariant(&ones, Place::Prime(2)).unwrap(), 1);
        let neg = vec![rat(-1, 1); 3];
        assert_eq!(hasse_invariant(&neg, Place::Prime(2)).unwrap(), -1);
        assert_eq!(hasse_invariant(&neg, Place::Real).unwrap(), -1);
        assert_eq!(hasse_invariant(&neg, Place::Prime(3)).unwrap(), 1);
    }

    #[test]
    fn witt_of_split_forms() {
        let u3 = IntMatrix::block_diag(&[
            int_matrix(&[&[0, 1], &[1, 0]]),
            int_matrix(&[&[0, 1], &[1, 0]]),
            int_matrix(&[&[0, 1], &[1, 0]]),
        ]);
        assert_eq!(witt_index(&u3, None).unwrap(), 3);
        let f = diagonal(&int_vec(&[1, 1, 1, 1]));
        assert_eq!(witt_index(&f, Some(Place::Prime(2))).unwrap(), 0);
        assert_eq!(anisotropic_dimension(&f, Place::Prime(3)).unwrap(), 0);
    }

    #[test]
    fn ruling_disc_examples() {
        let u = int_matrix(&[&[0, 1], &[1, 0]]);
        let u3 = IntMatrix::block_diag(&[u.clone(), u.clone(), u.clone()]);
        assert_eq!(ruling_disc(&u3).unwrap().0, int(1));
        let u2 = u.scale(&int(2));
        let u2_3 = IntMatrix::block_diag(&[u2.clone(), u2.clone(), u2]);
        assert_eq!(ruling_disc(&u2_3).unwrap().0, int(1));
        assert!(ruling_disc(&diagonal(&int_vec(&[1, 1, 1]))).is_err());
    }

    #[test]
    fn rescaling_matches_direct_computation() {
        let g = diagonal(&int_vec(&[1, -2, 5, -10, 3]));
        for c in [2i64, -3, 6, 7, -1] {
            let direct = invariants(&g.scale(&int(c))).unwrap();
            let law = invariants(&g).unwrap().rescaled(&int(c)).unwrap();
            assert_eq!(direct, law, "c = {c}");
        }
    }

    #[test]
    fn same_quadric_detects_scaling() {
        let g = diagonal(&int_vec(&[1, 1, -3, 5]));
        let a = invariants(&g).unwrap();
        let b = invariants(&g.scale(&int(-7))).unwrap();
        assert!(a.same_quadric(&b).unwrap());
        let h = diagonal(&int_vec(&[1, 1, 1, 15]));
        let c = invariants(&h).unwrap();
        assert!(!a.same_quadric(&c).unwrap() || a.disc_class == c.disc_class);
    }
}
