//! Named lattices with documented basis orders.
//!
//! Nodes indexed by `(Z/2)^4` use the integer encoding `x = 8a + 4b + 2c + d`
//! for the bit string `abcd`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{adjoin, even_overlattices, GlueSpec, Overlattice};
use crate::error::{Error, Result};
use crate::exact::{self, int, IntMatrix};
use crate::lattice::{block_offsets, direct_sum, hyperbolic, rank_one, root_lattice, Lattice, RootKind};
use crate::quadform::arith;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LdVariant {
    /// Glue `(ℓ + Σ_{x ∈ G∖0} b_x)/2` for `G = ⟨0001, 0010⟩`.
    Subgroup,
    /// Glue `(ℓ + Σ_{x ≠ 0} b_x)/2`.
    All,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NamedLattice {
    L0,
    L2,
    Lambda(u64),
    M16,
    N1,
    N2,
    KummerK,
    UE8E6,
    LSat,
    V,
    Np(u64, u64),
    Lp(u64),
    Ld(u64, LdVariant),
}

impl NamedLattice {
    /// One representative of every family, as used by round-trip tests.
    pub fn catalogue() -> Vec<NamedLattice> {
        use NamedLattice::*;
        vec![
            L0,
            L2,
            Lambda(1),
            Lambda(2),
            Lambda(3),
            Lambda(6),
            M16,
            N1,
            N2,
            KummerK,
            UE8E6,
            LSat,
            V,
            Np(5, 2),
            Np(13, 2),
            Lp(17),
            Lp(41),
            Ld(7, LdVariant::Subgroup),
            Ld(7, LdVariant::All),
        ]
    }
}

impl fmt::Display for NamedLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedLattice::L0 => write!(f, "L0"),
            NamedLattice::L2 => write!(f, "L2"),
            NamedLattice::Lambda(n) => write!(f, "Lambda({n})"),
            NamedLattice::M16 => write!(f, "M16"),
            NamedLattice::N1 => write!(f, "N1"),
            NamedLattice::N2 => write!(f, "N2"),
            NamedLattice::KummerK => write!(f, "KummerK"),
            NamedLattice::UE8E6 => write!(f, "U_E8_E6"),
            NamedLattice::LSat => write!(f, "L_sat"),
            NamedLattice::V => write!(f, "V"),
            NamedLattice::Np(p, n) => write!(f, "Np({p},{n})"),
            NamedLattice::Lp(p) => write!(f, "Lp({p})"),
            NamedLattice::Ld(d, LdVariant::Subgroup) => write!(f, "L_d({d},subgroup)"),
            NamedLattice::Ld(d, LdVariant::All) => write!(f, "L_d({d},all)"),
        }
    }
}

impl FromStr for NamedLattice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unknown = || Error::UnknownName(s.to_string());
        let (head, args) = match s.find('(') {
            Some(i) if s.ends_with(')') => {
                let args: Vec<&str> = s[i + 1..s.len() - 1].split(',').map(str::trim).collect();
                (&s[..i], args)
            }
            Some(_) => return Err(unknown()),
            None => (s, Vec::new()),
        };
        let num = |i: usize| -> Result<u64> { args.get(i).and_then(|a| a.parse().ok()).ok_or_else(unknown) };
        let named = match (head, args.len()) {
            ("L0", 0) => NamedLattice::L0,
            ("L2", 0) => NamedLattice::L2,
            ("M16", 0) => NamedLattice::M16,
            ("N1", 0) => NamedLattice::N1,
            ("N2", 0) => NamedLattice::N2,
            ("KummerK", 0) => NamedLattice::KummerK,
            ("U_E8_E6", 0) => NamedLattice::UE8E6,
            ("L_sat", 0) => NamedLattice::LSat,
            ("V", 0) => NamedLattice::V,
            ("Lambda", 1) => NamedLattice::Lambda(num(0)?),
            ("Np", 2) => NamedLattice::Np(num(0)?, num(1)?),
            ("Lp", 1) => NamedLattice::Lp(num(0)?),
            ("L_d", 2) => {
                let v = match args[1] {
                    "subgroup" => LdVariant::Subgroup,
                    "all" => LdVariant::All,
                    _ => return Err(unknown()),
                };
                NamedLattice::Ld(num(0)?, v)
            }
            _ => return Err(unknown()),
        };
        Ok(named)
    }
}

pub fn build_named(name: &NamedLattice) -> Result<Lattice> {
    let l = match name {
        NamedLattice::L0 => l0(),
        NamedLattice::L2 => l2()?.over.lattice,
        NamedLattice::Lambda(n) => lambda(*n)?,
        NamedLattice::M16 => m16()?.lattice,
        NamedLattice::N1 => ld(3, LdVariant::Subgroup)?.over.lattice,
        NamedLattice::N2 => ld(3, LdVariant::All)?.over.lattice,
        NamedLattice::KummerK => kummer()?.lattice,
        NamedLattice::UE8E6 => direct_sum(&[hyperbolic(), e(8), e(6)]),
        NamedLattice::LSat => l_sat()?.lattice,
        NamedLattice::V => v(),
        NamedLattice::Np(p, n) => np(*p, *n)?,
        NamedLattice::Lp(p) => lp(*p)?,
        NamedLattice::Ld(d, variant) => ld(*d, *variant)?.over.lattice,
    };
    Ok(l.named(name.to_string()))
}

fn e(n: usize) -> Lattice {
    root_lattice(RootKind::E, n).expect("valid E_n")
}

fn a1() -> Lattice {
    root_lattice(RootKind::A, 1).expect("valid A1")
}

fn check_prime(p: u64) -> Result<()> {
    if arith::is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p.to_string()))
    }
}

/// `U³ + E₈²`; basis order: three hyperbolic planes, then the two E₈ copies.
pub fn v() -> Lattice {
    let u = hyperbolic();
    direct_sum(&[u.clone(), u.clone(), u, e(8), e(8)]).named("V")
}

/// `U + D₄ + A₁⁹`.
pub fn l0() -> Lattice {
    let mut parts = vec![hyperbolic(), root_lattice(RootKind::D, 4).expect("valid D4")];
    parts.extend(std::iter::repeat_with(a1).take(9));
    direct_sum(&parts)
}

/// `⟨-2⟩ + ⟨-2n⟩ + U + U`.
pub fn lambda(n: u64) -> Result<Lattice> {
    if n == 0 {
        return Err(Error::InvalidParameter("Lambda(n) needs n >= 1".into()));
    }
    let u = hyperbolic();
    Ok(direct_sum(&[rank_one(&int(-2))?, rank_one(&(int(-2) * BigInt::from(n)))?, u.clone(), u]))
}

/// The odd form `⟨1⟩ + ⟨-n⟩ + ⟨p⟩ + ⟨-np⟩`, the norm form of a quaternion
/// algebra ramified at `p`.
pub fn np(p: u64, n: u64) -> Result<Lattice> {
    check_prime(p)?;
    if p == 2 {
        return Err(Error::InvalidParameter("Np needs an odd prime".into()));
    }
    if arith::legendre(&BigInt::from(n), p) != -1 {
        return Err(Error::InvalidParameter(format!("{n} is not a quadratic non-residue mod {p}")));
    }
    let (p, n) = (BigInt::from(p), BigInt::from(n));
    Lattice::new(exact::diagonal(&[int(1), -&n, p.clone(), -(&n * &p)]))
}

/// `⟨-2⟩ + ⟨-6⟩ + U + ⟨4p⟩` for a prime `p ≡ 17 (mod 24)`.
pub fn lp(p: u64) -> Result<Lattice> {
    check_prime(p)?;
    if p % 24 != 17 {
        return Err(Error::InvalidParameter(format!("{p} is not 17 mod 24")));
    }
    Ok(direct_sum(&[rank_one(&int(-2))?, rank_one(&int(-6))?, hyperbolic(), rank_one(&(int(4) * BigInt::from(p)))?]))
}

/// Elements of the subgroup of `(Z/2)^4` generated by `gens`, sorted.
pub fn span_z2(gens: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for &g in gens {
        if !out.contains(&g) {
            let shifted: Vec<usize> = out.iter().map(|x| x ^ g).collect();
            out.extend(shifted);
        }
    }
    out.sort_unstable();
    out
}

/// `{x : ⟨y, x⟩ = 1}`, the complement of the hyperplane `y^⊥`.
pub fn hyperplane_complement(y: usize) -> Vec<usize> {
    (0..16).filter(|&x| (x & y).count_ones() % 2 == 1).collect()
}

/// Coordinates for a lattice containing `⟨2d⟩ + A₁^{15}`: `ℓ` first (if
/// present), then `b_x` for `x = 1..15`.
#[derive(Clone, Debug)]
pub struct FifteenNodes {
    pub base: Lattice,
    has_ell: bool,
}

impl FifteenNodes {
    pub fn new(d: Option<u64>) -> Result<Self> {
        let mut parts = Vec::new();
        if let Some(d) = d {
            if d == 0 {
                return Err(Error::InvalidParameter("d must be positive".into()));
            }
            parts.push(rank_one(&(int(2) * BigInt::from(d)))?);
        }
        parts.extend(std::iter::repeat_with(a1).take(15));
        Ok(FifteenNodes { base: direct_sum(&parts), has_ell: d.is_some() })
    }

    pub fn dim(&self) -> usize {
        self.base.rank()
    }

    pub fn ell(&self) -> usize {
        assert!(self.has_ell, "no ell coordinate");
        0
    }

    pub fn node(&self, x: usize) -> usize {
        assert!((1..16).contains(&x), "node index out of range");
        x - 1 + usize::from(self.has_ell)
    }

    /// `ell·ℓ + Σ c·b_x`.
    pub fn vector(&self, ell: i64, nodes: &[(usize, i64)]) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.dim()];
        if ell != 0 {
            v[self.ell()] = int(ell);
        }
        for &(x, c) in nodes {
            v[self.node(x)] += int(c);
        }
        v
    }

    pub fn node_sum(&self, xs: &[usize]) -> Vec<BigInt> {
        let nodes: Vec<(usize, i64)> = xs.iter().filter(|&&x| x != 0).map(|&x| (x, 1)).collect();
        self.vector(0, &nodes)
    }

    pub fn m16_glue(&self) -> Vec<GlueSpec> {
        (1..16).map(|y| GlueSpec::half(self.node_sum(&hyperplane_complement(y)))).collect()
    }
}

/// `M_{(Z/2)^4}`: `A₁^{15}` with the half-sums over the 15 hyperplane
/// complements adjoined.
pub fn m16() -> Result<Overlattice> {
    let f = FifteenNodes::new(None)?;
    adjoin(&f.base, &f.m16_glue(), true)
}

/// `L_d = (⟨2d⟩ + M₁₆)[(ℓ + w)/2]` for `d ≡ 3 (mod 4)`.
#[derive(Clone, Debug)]
pub struct LdConstruction {
    pub nodes: FifteenNodes,
    pub over: Overlattice,
    pub d: u64,
    pub variant: LdVariant,
}

/// The fixed order-4 subgroup `⟨0001, 0010⟩`.
pub const G0: [usize; 2] = [0b0001, 0b0010];

pub fn ld(d: u64, variant: LdVariant) -> Result<LdConstruction> {
    if d % 4 != 3 {
        return Err(Error::InvalidParameter(format!("L_d needs d = 3 mod 4, got {d}")));
    }
    let nodes = FifteenNodes::new(Some(d))?;
    let support: Vec<usize> = match variant {
        LdVariant::Subgroup => span_z2(&G0),
        LdVariant::All => (1..16).collect(),
    };
    let mut w = nodes.node_sum(&support);
    w[nodes.ell()] = int(1);
    let mut glue = nodes.m16_glue();
    glue.push(GlueSpec::half(w));
    let over = adjoin(&nodes.base, &glue, true)?;
    Ok(LdConstruction { nodes, over, d, variant })
}

/// Nikulin's Kummer lattice: `A₁^{16}` indexed by `(Z/2)^4` (coordinate `x`)
/// with half-sums over all 30 affine hyperplanes adjoined.
pub fn kummer() -> Result<Overlattice> {
    let base = direct_sum(&vec![a1(); 16]);
    let mut glue = Vec::new();
    for y in 1..16usize {
        for c in 0..2u32 {
            let v: Vec<BigInt> = (0..16).map(|x| int(i64::from((x & y).count_ones() % 2 == c))).collect();
            glue.push(GlueSpec::half(v));
        }
    }
    adjoin(&base, &glue, true)
}

/// Basis indices of `U + D₄ + A₁⁹ + ⟨s⟩`.
pub mod l2idx {
    pub const O: usize = 0;
    pub const F: usize = 1;
    pub const C: usize = 2;
    pub const THETA: [usize; 3] = [3, 4, 5];
    pub const A: [usize; 9] = [6, 7, 8, 9, 10, 11, 12, 13, 14];
    pub const S: usize = 15;
    pub const RANK: usize = 16;
}

#[derive(Clone, Debug)]
pub struct L2Construction {
    /// Trivial lattice plus the free section `s`, basis as in [`l2idx`].
    pub trivial_plus_s: Lattice,
    /// The two adjoined 2-torsion classes in the coordinates above.
    pub torsion: Vec<Vec<BigRational>>,
    pub over: Overlattice,
}

/// Incidence pattern of each 2-torsion section: which D₄ outer component it
/// meets and the three A₁ fibres where it meets the zero component.
pub const TORSION_INCIDENCE: [(usize, [usize; 3]); 3] = [(0, [0, 1, 2]), (1, [3, 4, 5]), (2, [6, 7, 8])];

pub fn l2_trivial_plus_s() -> Lattice {
    use l2idx::*;
    let mut g = IntMatrix::zeros(RANK, RANK);
    let set = |g: &mut IntMatrix, i: usize, j: usize, v: i64| {
        g[(i, j)] = int(v);
        g[(j, i)] = int(v);
    };
    set(&mut g, O, O, -2);
    set(&mut g, O, F, 1);
    set(&mut g, C, C, -2);
    for &t in &THETA {
        set(&mut g, t, t, -2);
        set(&mut g, C, t, 1);
    }
    for &a in &A {
        set(&mut g, a, a, -2);
    }
    set(&mut g, S, S, -2);
    set(&mut g, S, F, 1);
    set(&mut g, S, O, 1);
    for &a in &A {
        set(&mut g, S, a, 1);
    }
    Lattice::new(g).expect("symmetric").named("U+D4+A1^9+<s>")
}

/// Solves for the class with prescribed pairings against the basis.
pub fn torsion_class(base: &Lattice, component: usize, zero_fibres: &[usize; 3]) -> Result<Vec<BigRational>> {
    use l2idx::*;
    let mut rhs = vec![0i64; RANK];
    rhs[F] = 1;
    rhs[THETA[component]] = 1;
    for (j, &a) in A.iter().enumerate() {
        rhs[a] = i64::from(!zero_fibres.contains(&j));
    }
    let rhs: Vec<BigRational> = rhs.into_iter().map(|x| exact::rat(x, 1)).collect();
    let t = base
        .gram()
        .to_rational()
        .solve(&rhs)
        .ok_or_else(|| Error::Infeasible("torsion pairings have no solution".into()))?;
    if base.pair_rat(&t, &t) != exact::rat(-2, 1) {
        return Err(Error::Infeasible(format!("torsion class has norm {}", base.pair_rat(&t, &t))));
    }
    Ok(t)
}

pub fn l2() -> Result<L2Construction> {
    let base = l2_trivial_plus_s();
    let torsion =
        TORSION_INCIDENCE[..2].iter().map(|(c, zs)| torsion_class(&base, *c, zs)).collect::<Result<Vec<_>>>()?;
    let glue: Vec<GlueSpec> = torsion.iter().map(|t| GlueSpec::from_rational(t)).collect();
    let over = adjoin(&base, &glue, true)?;
    Ok(L2Construction { trivial_plus_s: base, torsion, over })
}

/// `U + D₈ + A₅ + A₁` in block order.
pub fn u_d8_a5_a1() -> Vec<Lattice> {
    vec![
        hyperbolic(),
        root_lattice(RootKind::D, 8).expect("valid D8"),
        root_lattice(RootKind::A, 5).expect("valid A5"),
        a1(),
    ]
}

/// Whether a glue vector is non-integral on every definite block.
fn glue_hits_all_blocks(glue: &[BigRational], parts: &[Lattice]) -> bool {
    let offs = block_offsets(parts);
    parts.iter().zip(&offs).skip(1).all(|(p, &o)| glue[o..o + p.rank()].iter().any(|x| !x.is_integer()))
}

/// The index-2 even overlattice of `U + D₈ + A₅ + A₁` whose glue is
/// nontrivial on each of `D₈`, `A₅`, `A₁` (first in canonical order).
pub fn l_sat() -> Result<Overlattice> {
    let parts = u_d8_a5_a1();
    let base = direct_sum(&parts);
    let overs = even_overlattices(&base, 2)?;
    overs
        .into_iter()
        .filter(|o| o.index == int(2))
        .find(|o| {
            let inv = o.basis.columns();
            inv.iter().any(|c| glue_hits_all_blocks(c, &parts))
        })
        .ok_or_else(|| Error::Infeasible("no index-2 glue meets every definite block".into()))
}

/// Quick parity check used by constructors that only allow even output.
pub fn require_even(l: &Lattice) -> Result<()> {
    if l.is_even() {
        Ok(())
    } else {
        Err(Error::OddLattice)
    }
}

/// Primitive vector `(1, k/2)` of norm `k` in `U`.
pub fn vector_of_norm_in_u(k: &BigInt) -> Result<Vec<BigInt>> {
    if k.is_odd_int() {
        return Err(Error::InvalidParameter(format!("U has no vector of odd norm {k}")));
    }
    Ok(vec![int(1), k / int(2)])
}

trait OddInt {
    fn is_odd_int(&self) -> bool;
}

impl OddInt for BigInt {
    fn is_odd_int(&self) -> bool {
        !(self % int(2)).is_zero()
    }
}
