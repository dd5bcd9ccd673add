//! Elliptic fibration bookkeeping: Kodaira fibres, Euler numbers,
//! Shioda–Tate, trivial lattices and the height pairing.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, rat, IntMatrix};
use crate::lattice::{direct_sum, hyperbolic, root_lattice, Lattice, RootKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IIStar => write!(f, "II*"),
        }
    }
}

impl FromStr for KodairaType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = match s.trim() {
            "II" => KodairaType::II,
            "III" => KodairaType::III,
            "IV" => KodairaType::IV,
            "IV*" => KodairaType::IVStar,
            "III*" => KodairaType::IIIStar,
            "II*" => KodairaType::IIStar,
            other => {
                let rest = other.strip_prefix('I').ok_or_else(|| Error::UnknownFiber(s.to_string()))?;
                let (digits, star) = match rest.strip_suffix('*') {
                    Some(d) => (d, true),
                    None => (rest, false),
                };
                let n: u32 = digits.parse().map_err(|_| Error::UnknownFiber(s.to_string()))?;
                if star {
                    KodairaType::IStar(n)
                } else {
                    KodairaType::I(n)
                }
            }
        };
        Ok(t)
    }
}

impl KodairaType {
    /// Root lattice of the non-identity components, if any.
    pub fn ade(self) -> Option<(RootKind, usize)> {
        match self {
            KodairaType::I(n) if n >= 2 => Some((RootKind::A, n as usize - 1)),
            KodairaType::III => Some((RootKind::A, 1)),
            KodairaType::IV => Some((RootKind::A, 2)),
            KodairaType::IStar(n) => Some((RootKind::D, n as usize + 4)),
            KodairaType::IVStar => Some((RootKind::E, 6)),
            KodairaType::IIIStar => Some((RootKind::E, 7)),
            KodairaType::IIStar => Some((RootKind::E, 8)),
            _ => None,
        }
    }

    pub fn euler_number(self) -> u32 {
        match self {
            KodairaType::I(n) => n,
            KodairaType::IStar(n) => n + 6,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }

    /// Number of irreducible components.
    pub fn components(self) -> u32 {
        match self.ade() {
            Some((_, r)) => r as u32 + 1,
            None => 1,
        }
    }

    /// Correction term for a section meeting simple component `c`. Components
    /// are numbered within the component group: `I_n` cyclically, `I_b*` as
    /// 0 identity, 1 near, 2 and 3 far.
    pub fn height_contribution(self, c: u32) -> Result<BigRational> {
        if c == 0 {
            return Ok(BigRational::zero());
        }
        let bad = || Error::InvalidParameter(format!("{self} has no simple component {c}"));
        let r = match self {
            KodairaType::I(n) if c < n => rat(i64::from(c * (n - c)), i64::from(n)),
            KodairaType::III if c == 1 => rat(1, 2),
            KodairaType::IV if c <= 2 => rat(2, 3),
            KodairaType::IStar(_) if c == 1 => rat(1, 1),
            KodairaType::IStar(b) if c <= 3 => rat(4 + i64::from(b), 4),
            KodairaType::IVStar if c <= 2 => rat(4, 3),
            KodairaType::IIIStar if c == 1 => rat(3, 2),
            _ => return Err(bad()),
        };
        Ok(r)
    }
}

pub fn kodaira_to_ade(t: KodairaType) -> Option<(RootKind, usize)> {
    t.ade()
}

pub fn euler_number(t: KodairaType) -> u32 {
    t.euler_number()
}

/// A multiset of singular fibres.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiberConfig {
    pub fibers: Vec<KodairaType>,
}

impl FiberConfig {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, t: KodairaType, count: usize) -> Self {
        self.fibers.extend(std::iter::repeat_n(t, count));
        self
    }

    pub fn total_euler(&self) -> u64 {
        self.fibers.iter().map(|t| u64::from(t.euler_number())).sum()
    }

    /// `Σ (m_v - 1)`.
    pub fn root_rank(&self) -> u32 {
        self.fibers.iter().map(|t| t.components() - 1).sum()
    }

    pub fn root_lattices(&self) -> Vec<Lattice> {
        self.fibers
            .iter()
            .filter_map(|t| t.ade())
            .map(|(k, r)| root_lattice(k, r).expect("fibre types give valid root lattices"))
            .collect()
    }

    /// `U + Σ R_v`.
    pub fn trivial_lattice(&self) -> Lattice {
        let mut parts = vec![hyperbolic()];
        parts.extend(self.root_lattices());
        direct_sum(&parts)
    }
}

impl fmt::Display for FiberConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen: Vec<(KodairaType, usize)> = Vec::new();
        for t in &self.fibers {
            match seen.iter_mut().find(|(s, _)| s == t) {
                Some((_, c)) => *c += 1,
                None => seen.push((*t, 1)),
            }
        }
        let parts: Vec<String> =
            seen.iter().map(|(t, c)| if *c == 1 { t.to_string() } else { format!("{c}x{t}") }).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Parses `"I0* + 9xI2 + I1"`.
impl FromStr for FiberConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut c = FiberConfig::new();
        for term in s.split('+').map(str::trim).filter(|t| !t.is_empty()) {
            let (count, t) = match term.split_once('x') {
                Some((n, t)) => (n.trim().parse().map_err(|_| Error::UnknownFiber(term.to_string()))?, t),
                None => (1, term),
            };
            c = c.with(t.parse()?, count);
        }
        Ok(c)
    }
}

pub fn total_euler(c: &FiberConfig) -> u64 {
    c.total_euler()
}

/// `h^{2,0} = χ/12 - 1` for an elliptic surface over P¹ with Euler number `χ`.
pub fn h20_from_euler(chi: i64) -> Result<BigRational> {
    if chi % 12 != 0 {
        return Err(Error::InvalidParameter(format!("Euler number {chi} is not a multiple of 12")));
    }
    Ok(rat(chi / 12 - 1, 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceData {
    /// `χ(O_S)`: 1 for rational elliptic surfaces, 2 for K3.
    pub chi_o: u32,
    pub rho: u32,
    pub torsion_order: u32,
}

impl SurfaceData {
    pub fn k3(rho: u32, torsion_order: u32) -> Self {
        SurfaceData { chi_o: 2, rho, torsion_order }
    }

    pub fn rational(torsion_order: u32) -> Self {
        SurfaceData { chi_o: 1, rho: 10, torsion_order }
    }
}

pub fn shioda_tate_rank(s: &SurfaceData, c: &FiberConfig) -> Result<u32> {
    let used = 2 + c.root_rank();
    s.rho.checked_sub(used).ok_or_else(|| {
        Error::InvalidParameter(format!("rho = {} is smaller than the trivial lattice rank {used}", s.rho))
    })
}

/// `|disc|` of the trivial lattice: the product of root discriminants.
pub fn trivial_lattice_disc(c: &FiberConfig) -> BigInt {
    c.fibers
        .iter()
        .filter_map(|t| t.ade())
        .map(|(k, r)| match (k, r) {
            (RootKind::A, n) => int(n as i64 + 1),
            (RootKind::D, _) => int(4),
            (RootKind::E, 6) => int(3),
            (RootKind::E, 7) => int(2),
            _ => BigInt::one(),
        })
        .product()
}

/// How a section meets the fibration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionIncidence {
    /// `P·O`; `None` for the zero section itself.
    pub meets_zero_section: Option<u32>,
    /// The simple component met on each reducible fibre.
    pub components: Vec<(KodairaType, u32)>,
}

pub fn height_pairing(s: &SurfaceData, inc: &SectionIncidence) -> Result<BigRational> {
    let Some(po) = inc.meets_zero_section else {
        return Ok(BigRational::zero());
    };
    let mut h = rat(2 * i64::from(s.chi_o) + 2 * i64::from(po), 1);
    for &(t, c) in &inc.components {
        h -= t.height_contribution(c)?;
    }
    Ok(h)
}

/// Both sides of `|disc NS| · |tors|² = disc(trivial) · det(heights)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscRelation {
    pub holds: bool,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

pub fn mw_disc_relation(
    disc_ns: &BigInt,
    c: &FiberConfig,
    torsion_order: u32,
    height_det: &BigRational,
) -> Result<DiscRelation> {
    if disc_ns.is_zero() || torsion_order == 0 || height_det.is_zero() {
        return Err(Error::InvalidParameter("disc relation inputs must be nonzero".into()));
    }
    let t = BigInt::from(torsion_order);
    let lhs = BigRational::from(num_traits::Signed::abs(disc_ns) * &t * &t);
    let rhs = BigRational::from(trivial_lattice_disc(c)) * height_det;
    Ok(DiscRelation { holds: lhs == rhs, lhs, rhs })
}

/// Intersection matrix on the quotient surface in the row order
/// `S, G, G', L, F, A_1 … A_{6n}`.
pub fn table1_matrix(n: u32, a: i64, b: i64) -> Result<IntMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("table 1 needs n >= 1".into()));
    }
    let k = i64::from(n);
    let top = [[-k, k, k, k, 1], [k, -k, k, a, 1], [k, k, -k, b, 1], [k, a, b, -k, 1], [1, 1, 1, 1, 0]];
    let against_a = [0, 1, 1, 1, 0];
    let dim = 5 + 6 * n as usize;
    Ok(IntMatrix::from_fn(dim, dim, |i, j| match (i < 5, j < 5) {
        (true, true) => int(top[i][j]),
        (true, false) => int(against_a[i]),
        (false, true) => int(against_a[j]),
        (false, false) => int(if i == j { -2 } else { 0 }),
    }))
}

/// `-n · 2^{6n} · (a+b)²`.
pub fn table1_expected_det(n: u32, a: i64, b: i64) -> BigInt {
    -BigInt::from(n) * num_traits::pow(int(2), 6 * n as usize) * int((a + b) * (a + b))
}

pub fn table1_det_identity(n: u32, a: i64, b: i64) -> Result<bool> {
    Ok(table1_matrix(n, a, b)?.det()? == table1_expected_det(n, a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use KodairaType::*;

    #[test]
    fn dictionary() {
        assert_eq!(I(2).ade(), Some((RootKind::A, 1)));
        assert_eq!(III.ade(), Some((RootKind::A, 1)));
        assert_eq!(IStar(0).ade(), Some((RootKind::D, 4)));
        assert_eq!(I(1).ade(), None);
        assert_eq!(II.ade(), None);
        assert_eq!(IIStar.euler_number(), 10);
        assert_eq!(IStar(0).euler_number(), 6);
    }

    #[test]
    fn parse_round_trip() {
        for t in [I(0), I(7), IStar(2), II, III, IV, IVStar, IIIStar, IIStar] {
            assert_eq!(t.to_string().parse::<KodairaType>().unwrap(), t);
        }
        let c: FiberConfig = "I0* + 9xI2 + 3xI1".parse().unwrap();
        assert_eq!(c.total_euler(), 6 + 18 + 3);
        assert_eq!(c.to_string(), "I0* + 9xI2 + 3xI1");
        assert!("J2".parse::<KodairaType>().is_err());
    }

    #[test]
    fn euler_sums() {
        let k3 = FiberConfig::new().with(I(2), 9).with(IStar(0), 1);
        assert_eq!(k3.total_euler(), 24);
        assert_eq!(h20_from_euler(24).unwrap(), rat(1, 1));
        assert!(h20_from_euler(25).is_err());
    }

    #[test]
    fn shioda_tate_precondition() {
        let c = FiberConfig::new().with(IIStar, 2);
        assert!(shioda_tate_rank(&SurfaceData::k3(17, 1), &c).is_err());
        assert_eq!(shioda_tate_rank(&SurfaceData::k3(18, 1), &c).unwrap(), 0);
    }

    #[test]
    fn table1_small() {
        assert_eq!(table1_matrix(1, 0, 0).unwrap().det().unwrap(), int(0));
        assert!(table1_det_identity(2, 0, 1).unwrap());
        assert_eq!(table1_expected_det(3, 1, 1), int(-3_145_728));
    }

    #[test]
    fn unsupported_components_error() {
        assert!(IIStar.height_contribution(1).is_err());
        assert!(I(3).height_contribution(3).is_err());
        assert_eq!(IStar(2).height_contribution(2).unwrap(), rat(3, 2));
    }
}
