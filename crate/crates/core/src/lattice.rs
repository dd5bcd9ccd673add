//! Integral lattices given by Gram matrices, and their discriminant forms.

mod discriminant;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{self, dot, int, rat_vec, IntMatrix};

pub use discriminant::{FiniteQuadraticForm, FormTable};

/// A lattice `Zⁿ` with an integral symmetric bilinear form.
#[derive(Clone, Debug)]
pub struct Lattice {
    gram: IntMatrix,
    name: Option<String>,
    ambient: Option<Embedding>,
}

/// This lattice's basis expressed in the coordinates of an ambient lattice.
/// Columns of `basis` are the basis vectors.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub ambient: Arc<Lattice>,
    pub basis: IntMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootKind {
    A,
    D,
    E,
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            RootKind::A => 'A',
            RootKind::D => 'D',
            RootKind::E => 'E',
        };
        write!(f, "{c}")
    }
}

impl Lattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare { rows: gram.rows(), cols: gram.cols() });
        }
        if let Some((i, j)) = gram.first_asymmetry() {
            return Err(Error::NotSymmetric(i, j));
        }
        Ok(Lattice { gram, name: None, ambient: None })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(exact::int_matrix(rows))
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_embedding(mut self, e: Embedding) -> Self {
        self.ambient = Some(e);
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        self.ambient.as_ref()
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        self.gram.det().expect("gram is square")
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.det().is_zero()
    }

    /// `(positive, negative)` for a nondegenerate lattice; zeros are dropped.
    pub fn signature(&self) -> (usize, usize) {
        let (p, _, n) = self.gram.signature().expect("gram is symmetric");
        (p, n)
    }

    pub fn inertia(&self) -> (usize, usize, usize) {
        self.gram.signature().expect("gram is symmetric")
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    /// `Some(+1)` positive definite, `Some(-1)` negative definite.
    pub fn definiteness(&self) -> Option<i8> {
        let (p, z, n) = self.inertia();
        if z > 0 {
            None
        } else if n == 0 {
            Some(1)
        } else if p == 0 {
            Some(-1)
        } else {
            None
        }
    }

    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        self.gram.bilinear(x, y).expect("vector length matches rank")
    }

    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        self.pair(x, x)
    }

    pub fn pair_rat(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        self.gram.to_rational().bilinear(x, y).expect("vector length matches rank")
    }

    pub fn rescale(&self, n: &BigInt) -> Result<Lattice> {
        if n.is_zero() {
            return Err(Error::ZeroScale);
        }
        let mut l = Lattice::new(self.gram.scale(n))?;
        l.name = self.name.as_ref().map(|s| format!("{s}({n})"));
        Ok(l)
    }

    pub fn negated(&self) -> Lattice {
        Lattice { gram: self.gram.neg(), name: self.name.as_ref().map(|s| format!("{s}(-1)")), ambient: None }
    }

    /// Vector pairings with every basis vector: `G x`.
    pub fn pairings(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.gram.mul_vec(x).expect("vector length matches rank")
    }

    /// Largest `d` with `x·y ∈ dZ` for all `y` in the lattice.
    pub fn divisibility(&self, x: &[BigInt]) -> BigInt {
        exact::vec_gcd(&self.pairings(x))
    }

    /// Whether a rational coordinate vector lies in the lattice.
    pub fn contains(&self, x: &[BigRational]) -> bool {
        x.len() == self.rank() && x.iter().all(|c| c.is_integer())
    }

    pub fn discriminant_group(&self) -> Result<FiniteQuadraticForm> {
        FiniteQuadraticForm::of_lattice(self)
    }

    /// Saturated orthogonal complement of the span of `sub` (vectors in this
    /// lattice's coordinates). The result carries its embedding.
    pub fn orthogonal_complement(&self, sub: &[Vec<BigInt>]) -> Result<Lattice> {
        self.check_vectors(sub)?;
        let rows: Vec<Vec<BigInt>> = sub.iter().map(|v| self.pairings(v)).collect();
        let constraints = if rows.is_empty() { IntMatrix::zeros(0, self.rank()) } else { IntMatrix::from_rows(rows)? };
        let kernel = constraints.kernel_basis();
        self.sublattice(&kernel)
    }

    /// Lattice spanned by `vectors` with the induced form and embedding.
    pub fn sublattice(&self, vectors: &[Vec<BigInt>]) -> Result<Lattice> {
        self.check_vectors(vectors)?;
        let basis = IntMatrix::from_columns(self.rank(), vectors)?;
        if basis.rank() < vectors.len() {
            return Err(Error::RankDeficient);
        }
        let gram = self.gram.congruent(&basis)?;
        Ok(Lattice::new(gram)?.with_embedding(Embedding { ambient: Arc::new(self.clone()), basis }))
    }

    /// Saturation `(Q·sub) ∩ L`, as a basis in this lattice's coordinates.
    pub fn saturation(&self, sub: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
        self.check_vectors(sub)?;
        let n = self.rank();
        if sub.is_empty() {
            return Ok(Vec::new());
        }
        let s = IntMatrix::from_rows(sub.to_vec())?;
        let annihilator = s.kernel_basis();
        if annihilator.is_empty() {
            return Ok((0..n)
                .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
                .collect());
        }
        Ok(IntMatrix::from_rows(annihilator)?.kernel_basis())
    }

    /// Index `[L : sub]` of a finite-index sublattice.
    pub fn index_of(&self, sub: &[Vec<BigInt>]) -> Result<BigInt> {
        self.check_vectors(sub)?;
        if sub.len() != self.rank() {
            return Err(Error::RankDeficient);
        }
        let d = IntMatrix::from_rows(sub.to_vec())?.det()?;
        if d.is_zero() {
            return Err(Error::RankDeficient);
        }
        Ok(d.abs())
    }

    /// The even vectors of an odd lattice form a sublattice of index 2.
    pub fn even_sublattice(&self) -> Result<Lattice> {
        let parity: Vec<BigInt> = (0..self.rank()).map(|i| self.gram[(i, i)].mod_floor(&int(2))).collect();
        if parity.iter().all(|p| p.is_zero()) {
            return Ok(self.clone());
        }
        // Kernel of x ↦ Σ parity_i x_i mod 2, i.e. integer solutions of
        // Σ parity_i x_i - 2 y = 0 projected to x.
        let mut row = parity;
        row.push(int(-2));
        let k = IntMatrix::from_rows(vec![row])?.kernel_basis();
        let n = self.rank();
        let vecs: Vec<Vec<BigInt>> = k.iter().map(|v| v[..n].to_vec()).collect();
        let basis = exact::hermite_rows(vecs);
        let mut l = self.sublattice(&basis)?;
        l.name = self.name.as_ref().map(|s| format!("{s}_even"));
        Ok(l)
    }

    /// Coordinates of a vector of the ambient lattice in this lattice's basis,
    /// if the lattice is embedded and the vector lies in its rational span.
    pub fn coords_of_ambient(&self, v: &[BigInt]) -> Option<Vec<BigRational>> {
        let e = self.ambient.as_ref()?;
        e.basis.to_rational().solve(&rat_vec(v))
    }

    fn check_vectors(&self, vs: &[Vec<BigInt>]) -> Result<()> {
        match vs.iter().find(|v| v.len() != self.rank()) {
            Some(v) => {
                Err(Error::DimensionMismatch(format!("vector of length {} in a rank {} lattice", v.len(), self.rank())))
            }
            None => Ok(()),
        }
    }
}

pub fn root_lattice(kind: RootKind, n: usize) -> Result<Lattice> {
    let ok = match kind {
        RootKind::A => n >= 1,
        RootKind::D => n >= 4,
        RootKind::E => (6..=8).contains(&n),
    };
    if !ok {
        let c = kind.to_string().chars().next().unwrap_or('?');
        return Err(Error::InvalidRootLattice { kind: c, rank: n });
    }
    let mut edges: Vec<(usize, usize)> = match kind {
        RootKind::A => (0..n - 1).map(|i| (i, i + 1)).collect(),
        // D_n: chain 1..n-1 with node n attached to node n-2.
        RootKind::D => (0..n - 2).map(|i| (i, i + 1)).chain([(n - 3, n - 1)]).collect(),
        // E_n: chain 1..n-1 with node n attached to node n-3.
        RootKind::E => (0..n - 2).map(|i| (i, i + 1)).chain([(n - 4, n - 1)]).collect(),
    };
    edges.sort();
    let mut g = IntMatrix::from_fn(n, n, |i, j| if i == j { int(-2) } else { BigInt::zero() });
    for (i, j) in edges {
        g[(i, j)] = int(1);
        g[(j, i)] = int(1);
    }
    Ok(Lattice::new(g)?.named(format!("{kind}{n}")))
}

pub fn hyperbolic() -> Lattice {
    Lattice::from_i64(&[&[0, 1], &[1, 0]]).expect("symmetric").named("U")
}

pub fn rank_one(n: &BigInt) -> Result<Lattice> {
    if n.is_zero() {
        return Err(Error::ZeroScale);
    }
    Ok(Lattice::new(exact::diagonal(std::slice::from_ref(n)))?.named(format!("<{n}>")))
}

pub fn direct_sum(parts: &[Lattice]) -> Lattice {
    let grams: Vec<IntMatrix> = parts.iter().map(|l| l.gram.clone()).collect();
    let names: Option<Vec<&str>> = parts.iter().map(|l| l.name()).collect();
    let mut l = Lattice::new(IntMatrix::block_diag(&grams)).expect("blocks are symmetric");
    l.name = names.map(|n| n.join("+"));
    l
}

/// Offsets of each summand in a direct sum, for building vectors by blocks.
pub fn block_offsets(parts: &[Lattice]) -> Vec<usize> {
    let mut out = Vec::with_capacity(parts.len());
    let mut acc = 0;
    for p in parts {
        out.push(acc);
        acc += p.rank();
    }
    out
}

/// Norm of a rational vector; used for glue vectors in tests and claims.
pub fn rat_norm(g: &IntMatrix, x: &[BigRational]) -> BigRational {
    let gr = g.to_rational();
    dot(x, &gr.mul_vec(x).expect("length matches"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int_vec;

    #[test]
    fn root_lattice_determinants() {
        let cases = [
            (RootKind::A, 1, -2),
            (RootKind::A, 2, 3),
            (RootKind::A, 5, -6),
            (RootKind::D, 4, 4),
            (RootKind::D, 8, 4),
            (RootKind::E, 6, 3),
            (RootKind::E, 7, -2),
            (RootKind::E, 8, 1),
        ];
        for (k, n, d) in cases {
            let l = root_lattice(k, n).unwrap();
            assert_eq!(l.det(), int(d), "{k}{n}");
            assert_eq!(l.signature(), (0, n));
            assert!(l.is_even());
        }
        assert!(root_lattice(RootKind::E, 9).is_err());
        assert!(root_lattice(RootKind::D, 3).is_err());
        assert!(root_lattice(RootKind::A, 0).is_err());
    }

    #[test]
    fn hyperbolic_plane() {
        let u = hyperbolic();
        assert_eq!(u.det(), int(-1));
        assert_eq!(u.signature(), (1, 1));
        assert!(u.is_even());
    }

    #[test]
    fn rescale_and_rank_one() {
        let u2 = hyperbolic().rescale(&int(2)).unwrap();
        assert_eq!(u2.det(), int(-4));
        assert!(hyperbolic().rescale(&int(0)).is_err());
        assert!(rank_one(&int(0)).is_err());
        assert_eq!(rank_one(&int(-6)).unwrap().det(), int(-6));
    }

    #[test]
    fn complement_and_saturation() {
        let u = hyperbolic();
        let c = u.orthogonal_complement(&[int_vec(&[1, 1])]).unwrap();
        assert_eq!(c.rank(), 1);
        assert_eq!(c.det(), int(-2));
        let e8 = root_lattice(RootKind::E, 8).unwrap();
        let empty = e8.orthogonal_complement(&[]).unwrap();
        assert_eq!(empty.det(), int(1));
        let sat = u.saturation(&[int_vec(&[2, 0])]).unwrap();
        assert_eq!(sat, vec![int_vec(&[1, 0])]);
        assert_eq!(u.index_of(&[int_vec(&[2, 0]), int_vec(&[0, 1])]).unwrap(), int(2));
        assert!(u.index_of(&[int_vec(&[1, 0])]).is_err());
    }

    #[test]
    fn divisibility_and_contains() {
        let l = rank_one(&int(6)).unwrap();
        assert_eq!(l.divisibility(&int_vec(&[1])), int(6));
        assert!(l.contains(&[crate::exact::rat(2, 1)]));
        assert!(!l.contains(&[crate::exact::rat(1, 2)]));
    }

    #[test]
    fn even_sublattice_of_odd() {
        let l = Lattice::new(exact::diagonal(&int_vec(&[1, -2, 5, -10]))).unwrap();
        let e = l.even_sublattice().unwrap();
        assert!(e.is_even());
        assert_eq!(e.det(), l.det() * int(4));
    }
}
