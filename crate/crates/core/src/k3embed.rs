//! Sublattices of the K3 lattice, transcendental lattices, genus comparison
//! and isometry testing.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, rat_isqrt_floor, to_rat, IntMatrix};
use crate::glue::named;
use crate::lattice::{direct_sum, hyperbolic, root_lattice, Lattice, RootKind};
use crate::quadform::{self, QuadFormInvariants};

/// `U³ + E₈²`.
pub fn build_v() -> Lattice {
    named::v()
}

/// A sublattice given by basis vectors in ambient coordinates.
#[derive(Clone, Debug)]
pub struct EmbeddedLattice {
    pub ambient: Arc<Lattice>,
    pub basis: Vec<Vec<BigInt>>,
}

impl EmbeddedLattice {
    pub fn new(ambient: Lattice, basis: Vec<Vec<BigInt>>) -> Result<Self> {
        let e = EmbeddedLattice { ambient: Arc::new(ambient), basis };
        e.lattice()?;
        Ok(e)
    }

    /// The sublattice with its induced form.
    pub fn lattice(&self) -> Result<Lattice> {
        self.ambient.sublattice(&self.basis)
    }

    pub fn is_primitive(&self) -> Result<bool> {
        let sat = self.ambient.saturation(&self.basis)?;
        let l = self.lattice()?;
        let s = self.ambient.sublattice(&sat)?;
        Ok(l.det().abs() == s.det().abs())
    }
}

/// The fixed embeddings used by the registry. Root sublattices of E₈ are
/// spanned by simple roots, so they are primitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardEmbedding {
    /// Nodes {1..5} and {7} of E₈.
    A5A1InE8,
    /// Nodes {1,2} and {4,6,8} of E₈.
    A2A1CubedInE8,
    /// First U, first E₈ and A₅+A₁ in the second E₈ of V.
    UE8A5A1InV,
    /// First U, first E₈, A₂+A₁³ in the second E₈ and `(1,-1)` in the other
    /// two copies of U.
    Rank17PicardInV,
    /// `(1, k/2)` in U.
    VectorOfNormInU(i64),
}

impl fmt::Display for StandardEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandardEmbedding::A5A1InE8 => write!(f, "A5+A1<E8"),
            StandardEmbedding::A2A1CubedInE8 => write!(f, "A2+A1^3<E8"),
            StandardEmbedding::UE8A5A1InV => write!(f, "U+E8+A5+A1<V"),
            StandardEmbedding::Rank17PicardInV => write!(f, "U+E8+A2+A1^5<V"),
            StandardEmbedding::VectorOfNormInU(k) => write!(f, "norm({k})<U"),
        }
    }
}

impl FromStr for StandardEmbedding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let e = match s {
            "A5+A1<E8" => StandardEmbedding::A5A1InE8,
            "A2+A1^3<E8" => StandardEmbedding::A2A1CubedInE8,
            "U+E8+A5+A1<V" => StandardEmbedding::UE8A5A1InV,
            "U+E8+A2+A1^5<V" => StandardEmbedding::Rank17PicardInV,
            other => {
                let k = other
                    .strip_prefix("norm(")
                    .and_then(|r| r.strip_suffix(")<U"))
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(|| Error::UnknownName(s.to_string()))?;
                StandardEmbedding::VectorOfNormInU(k)
            }
        };
        Ok(e)
    }
}

fn unit(n: usize, i: usize) -> Vec<BigInt> {
    (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()
}

/// Unit vectors for 1-based E₈ nodes, placed at `offset` in a rank-`n` space.
fn e8_nodes(n: usize, offset: usize, nodes: &[usize]) -> Vec<Vec<BigInt>> {
    nodes.iter().map(|&k| unit(n, offset + k - 1)).collect()
}

pub const A5A1_NODES: [usize; 6] = [1, 2, 3, 4, 5, 7];
pub const A2A1CUBED_NODES: [usize; 5] = [1, 2, 4, 6, 8];

pub fn embed_standard(spec: &StandardEmbedding) -> Result<EmbeddedLattice> {
    let e8 = || root_lattice(RootKind::E, 8).expect("valid E8");
    match spec {
        StandardEmbedding::A5A1InE8 => EmbeddedLattice::new(e8(), e8_nodes(8, 0, &A5A1_NODES)),
        StandardEmbedding::A2A1CubedInE8 => EmbeddedLattice::new(e8(), e8_nodes(8, 0, &A2A1CUBED_NODES)),
        StandardEmbedding::UE8A5A1InV | StandardEmbedding::Rank17PicardInV => {
            let v = build_v();
            let n = v.rank();
            // V = U + U + U + E8 + E8 at offsets 0, 2, 4, 6, 14.
            let mut basis: Vec<Vec<BigInt>> = (0..2).map(|i| unit(n, i)).collect();
            basis.extend((6..14).map(|i| unit(n, i)));
            if *spec == StandardEmbedding::UE8A5A1InV {
                basis.extend(e8_nodes(n, 14, &A5A1_NODES));
            } else {
                basis.extend(e8_nodes(n, 14, &A2A1CUBED_NODES));
                for off in [2, 4] {
                    let mut r = vec![BigInt::zero(); n];
                    r[off] = int(1);
                    r[off + 1] = int(-1);
                    basis.push(r);
                }
            }
            EmbeddedLattice::new(v, basis)
        }
        StandardEmbedding::VectorOfNormInU(k) => {
            let v = named::vector_of_norm_in_u(&int(*k))?;
            EmbeddedLattice::new(hyperbolic(), vec![v])
        }
    }
}

/// Orthogonal complement in the ambient lattice, with its embedding recorded.
pub fn transcendental_of(e: &EmbeddedLattice) -> Result<Lattice> {
    let t = e.ambient.orthogonal_complement(&e.basis)?;
    if t.rank() > 0 && !t.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    Ok(t)
}

/// Equal signature and isomorphic discriminant forms.
pub fn genus_equal(l1: &Lattice, l2: &Lattice) -> Result<bool> {
    for l in [l1, l2] {
        if !l.is_even() {
            return Err(Error::OddLattice);
        }
        if !l.is_nondegenerate() {
            return Err(Error::Degenerate);
        }
    }
    if l1.rank() != l2.rank() || l1.signature() != l2.signature() {
        return Ok(false);
    }
    l1.discriminant_group()?.is_isomorphic(&l2.discriminant_group()?)
}

/// Whether a primitive embedding of `sub` into a unimodular even lattice of
/// signature `ambient_sig` can have complement in the genus of `candidate`:
/// ranks and signatures add up and `q_candidate ≅ -q_sub`.
pub fn complement_genus_matches(sub: &Lattice, ambient_sig: (usize, usize), candidate: &Lattice) -> Result<bool> {
    let (p, n) = sub.signature();
    if p > ambient_sig.0 || n > ambient_sig.1 {
        return Ok(false);
    }
    if candidate.signature() != (ambient_sig.0 - p, ambient_sig.1 - n) {
        return Ok(false);
    }
    let q_sub = sub.discriminant_group()?.negated();
    let q_c = candidate.discriminant_group()?;
    q_sub.is_isomorphic(&q_c)
}

/// Sufficient conditions for the genus of an even indefinite lattice to
/// contain one class: `rank ≥ length + 2`, or 2-elementary of rank ≥ 3.
pub fn genus_is_single_class(l: &Lattice) -> Result<bool> {
    let (p, n) = l.signature();
    if p == 0 || n == 0 {
        return Ok(false);
    }
    let q = l.discriminant_group()?;
    Ok(l.rank() >= q.length() + 2 || (q.is_two_elementary() && l.rank() >= 3))
}

pub fn quadric_certificate(l: &Lattice) -> Result<QuadFormInvariants> {
    if !l.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    quadform::certificate(l.gram())
}

/// Undoes a rescaling: the certificate of `l` recovered from that of `l(n)`.
pub fn unscale_certificate(c: &QuadFormInvariants, n: &BigInt) -> Result<QuadFormInvariants> {
    c.rescaled(n)
}

/// Gram matrix in a basis reduced by repeated size reduction
/// `b_i ← b_i - round(b_i·b_j / b_j·b_j) b_j`, plus the transform (columns
/// are the new basis vectors in old coordinates).
pub fn pair_reduce(gram: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let n = gram.rows();
    let mut basis: Vec<Vec<BigInt>> = (0..n).map(|i| unit(n, i)).collect();
    let g = |x: &[BigInt], y: &[BigInt]| gram.bilinear(x, y).expect("length matches");
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                let nj = g(&basis[j], &basis[j]);
                if i == j || nj.is_zero() {
                    continue;
                }
                let p = g(&basis[i], &basis[j]);
                if (int(2) * &p).abs() > nj.abs() {
                    let r = to_rat(&p) / to_rat(&nj);
                    let k = r.round().to_integer();
                    let bj = basis[j].clone();
                    let before = g(&basis[i], &basis[i]).abs();
                    let cand: Vec<BigInt> = basis[i].iter().zip(&bj).map(|(a, b)| a - &k * b).collect();
                    if g(&cand, &cand).abs() < before {
                        basis[i] = cand;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    basis.sort_by_key(|b| g(b, b).abs());
    let t = IntMatrix::from_columns(n, &basis).expect("square");
    (gram.congruent(&t).expect("square"), t)
}

/// All nonzero `x` with `x·G·x ≤ bound` for a positive definite `G`, with
/// their norms (Fincke–Pohst over exact rationals).
pub fn short_vectors(gram: &IntMatrix, bound: &BigInt) -> Result<Vec<(Vec<BigInt>, BigInt)>> {
    let n = gram.rows();
    if gram.definiteness_sign() != Some(1) {
        return Err(Error::NotDefinite);
    }
    let mut q = gram.to_rational();
    for i in 0..n {
        for j in i + 1..n {
            q[(j, i)] = q[(i, j)].clone();
            q[(i, j)] = &q[(i, j)] / &q[(i, i)];
        }
        for k in i + 1..n {
            for l in k..n {
                let d = &q[(k, i)] * &q[(i, l)];
                q[(k, l)] -= d;
            }
        }
    }
    let mut out = Vec::new();
    let mut x = vec![BigInt::zero(); n];
    enumerate(&q, n, to_rat(bound), &mut x, &mut out, gram);
    Ok(out)
}

fn enumerate(
    q: &crate::RatMatrix,
    level: usize,
    budget: BigRational,
    x: &mut Vec<BigInt>,
    out: &mut Vec<(Vec<BigInt>, BigInt)>,
    gram: &IntMatrix,
) {
    if level == 0 {
        if x.iter().any(|c| !c.is_zero()) {
            out.push((x.clone(), gram.bilinear(x, x).expect("length matches")));
        }
        return;
    }
    let i = level - 1;
    let n = x.len();
    let mut c = BigRational::zero();
    for j in i + 1..n {
        c += &q[(i, j)] * to_rat(&x[j]);
    }
    let r = &budget / &q[(i, i)];
    let s = rat_isqrt_floor(&r) + BigInt::one();
    let lo = (-&c).floor().to_integer() - &s;
    let hi = (-&c).ceil().to_integer() + &s;
    let mut xi = lo;
    while xi <= hi {
        let t = to_rat(&xi) + &c;
        let used = &q[(i, i)] * &t * &t;
        if used <= budget {
            x[i] = xi.clone();
            enumerate(q, i, &budget - used, x, out, gram);
        }
        xi += 1;
    }
    x[i] = BigInt::zero();
}

trait Definiteness {
    fn definiteness_sign(&self) -> Option<i8>;
}

impl Definiteness for IntMatrix {
    fn definiteness_sign(&self) -> Option<i8> {
        let (p, z, n) = self.signature().ok()?;
        match (p, z, n) {
            (_, 0, 0) => Some(1),
            (0, 0, _) => Some(-1),
            _ => None,
        }
    }
}

/// Vector counts by absolute norm `1..=bound`.
pub fn theta_counts(l: &Lattice, bound: u32) -> Result<Vec<usize>> {
    let g = positive_gram(l)?;
    let mut counts = vec![0usize; bound as usize];
    for (_, nrm) in short_vectors(&g, &BigInt::from(bound))? {
        let k = nrm.to_usize().expect("bounded");
        counts[k - 1] += 1;
    }
    Ok(counts)
}

fn positive_gram(l: &Lattice) -> Result<IntMatrix> {
    match l.definiteness() {
        Some(1) => Ok(l.gram().clone()),
        Some(_) => Ok(l.gram().neg()),
        None => Err(Error::NotDefinite),
    }
}

pub const MAX_DEFINITE_RANK: usize = 8;
const THETA_BOUND: u32 = 8;

/// An isometry `l1 → l2` of definite lattices as a matrix whose columns are
/// the images of `l1`'s basis in `l2`'s coordinates.
pub fn find_definite_isometry(l1: &Lattice, l2: &Lattice) -> Result<Option<IntMatrix>> {
    let (s1, s2) = (l1.definiteness(), l2.definiteness());
    if s1.is_none() || s2.is_none() {
        return Err(Error::NotDefinite);
    }
    if l1.rank() > MAX_DEFINITE_RANK || l2.rank() > MAX_DEFINITE_RANK {
        return Err(Error::InvalidParameter(format!("definite search is limited to rank {MAX_DEFINITE_RANK}")));
    }
    if s1 != s2 || l1.rank() != l2.rank() || l1.det() != l2.det() {
        return Ok(None);
    }
    let n = l1.rank();
    if n == 0 {
        return Ok(Some(IntMatrix::zeros(0, 0)));
    }
    let (g1, g2) = (positive_gram(l1)?, positive_gram(l2)?);
    let (r1, t1) = pair_reduce(&g1);
    let max_norm = (0..n).map(|i| r1[(i, i)].clone()).max().expect("n > 0");
    let bound = max_norm.clone().max(BigInt::from(THETA_BOUND));
    let shorts2 = short_vectors(&g2, &bound)?;
    let shorts1 = short_vectors(&g1, &BigInt::from(THETA_BOUND))?;
    let theta = |v: &[(Vec<BigInt>, BigInt)]| {
        let mut c = vec![0usize; THETA_BOUND as usize + 1];
        for (_, k) in v {
            if let Some(k) = k.to_usize().filter(|&k| k <= THETA_BOUND as usize) {
                c[k] += 1;
            }
        }
        c
    };
    if theta(&shorts1) != theta(&shorts2) {
        return Ok(None);
    }
    let by_norm: Vec<Vec<&Vec<BigInt>>> =
        (0..n).map(|i| shorts2.iter().filter(|(_, k)| *k == r1[(i, i)]).map(|(v, _)| v).collect()).collect();
    let mut images: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    if !backtrack(&r1, &g2, &by_norm, &mut images) {
        return Ok(None);
    }
    // images = M · t1, so M = images · t1⁻¹.
    let w = IntMatrix::from_columns(n, &images)?;
    let t_inv = t1.inverse_rational().expect("unimodular");
    let m = w.to_rational().mul(&t_inv)?.to_integer().expect("t1 is unimodular");
    debug_assert_eq!(l2.gram().congruent(&m)?, *l1.gram());
    Ok(Some(m))
}

fn backtrack(r1: &IntMatrix, g2: &IntMatrix, cands: &[Vec<&Vec<BigInt>>], images: &mut Vec<Vec<BigInt>>) -> bool {
    let i = images.len();
    if i == cands.len() {
        return true;
    }
    for v in &cands[i] {
        let ok = images.iter().enumerate().all(|(j, w)| g2.bilinear(v, w).expect("length") == r1[(i, j)]);
        if ok {
            images.push((*v).clone());
            if backtrack(r1, g2, cands, images) {
                return true;
            }
            images.pop();
        }
    }
    false
}

pub fn definite_isomorphic(l1: &Lattice, l2: &Lattice) -> Result<bool> {
    Ok(find_definite_isometry(l1, l2)?.is_some())
}

/// Isometry `l1 → l2` (columns are images in `l2`'s basis). Both sides are
/// pair-reduced first and the search runs over images with coordinates
/// bounded by `bound` in the reduced basis of `l2`. Works for indefinite
/// lattices of small rank; `None` means nothing inside the box.
pub fn find_isometry_in_box(l1: &Lattice, l2: &Lattice, bound: i64) -> Result<Option<IntMatrix>> {
    let n = l1.rank();
    if n != l2.rank() || l1.det() != l2.det() {
        return Ok(None);
    }
    let (r1, p1) = pair_reduce(l1.gram());
    let (r2, p2) = pair_reduce(l2.gram());
    let side = (2 * bound + 1) as u64;
    let total = side
        .checked_pow(n as u32)
        .filter(|&t| t <= 1 << 22)
        .ok_or_else(|| Error::InvalidParameter(format!("box of side {side} in rank {n} is too large")))?;
    let mut box_vecs: Vec<(Vec<BigInt>, BigInt)> = Vec::new();
    for mut idx in 0..total {
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            v.push(int((idx % side) as i64 - bound));
            idx /= side;
        }
        let k = r2.bilinear(&v, &v)?;
        box_vecs.push((v, k));
    }
    let cands: Vec<Vec<&Vec<BigInt>>> =
        (0..n).map(|i| box_vecs.iter().filter(|(_, k)| *k == r1[(i, i)]).map(|(v, _)| v).collect()).collect();
    let mut images = Vec::new();
    if !backtrack(&r1, &r2, &cands, &mut images) {
        return Ok(None);
    }
    let m = IntMatrix::from_columns(n, &images)?;
    if m.det()?.abs() != BigInt::one() {
        return Ok(None);
    }
    let p1_inv = p1.inverse_rational().and_then(|x| x.to_integer()).ok_or(Error::Degenerate)?;
    Ok(Some(p2.mul(&m)?.mul(&p1_inv)?))
}

pub fn standard_complement(spec: &StandardEmbedding) -> Result<Lattice> {
    transcendental_of(&embed_standard(spec)?)
}

/// `A₁ + A₂(2) + ⟨2⟩ + ⟨2⟩` in block order.
pub fn rank17_expected_transcendental() -> Lattice {
    let a2 = root_lattice(RootKind::A, 2).expect("valid A2").rescale(&int(2)).expect("nonzero");
    let two = crate::lattice::rank_one(&int(2)).expect("nonzero");
    direct_sum(&[root_lattice(RootKind::A, 1).expect("valid A1"), a2, two.clone(), two])
}

pub fn is_isometry(l1: &Lattice, l2: &Lattice, m: &IntMatrix) -> Result<bool> {
    Ok(l2.gram().congruent(m)? == *l1.gram() && m.det()?.abs() == BigInt::one())
}
