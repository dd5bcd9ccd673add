use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::Lattice;
use crate::error::{Error, Result};
use crate::exact::{self, rat_mod, to_rat};

/// Largest group the enumerating routines will touch.
pub const ENUMERATION_LIMIT: u64 = 1 << 16;

/// The discriminant form `(L*/L, q, b)` presented by Smith generators.
///
/// Generators are rational vectors in the lattice's own coordinates. `q` is
/// taken mod 2 and `b` mod 1; `q_values` is `None` for odd lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuadraticForm {
    pub invariant_factors: Vec<BigInt>,
    pub generators: Vec<Vec<BigRational>>,
    pub q_values: Option<Vec<BigRational>>,
    pub b_matrix: Vec<Vec<BigRational>>,
    /// Rank of the lattice the generators live in; 0 for abstract forms.
    pub lattice_rank: usize,
}

impl FiniteQuadraticForm {
    pub fn of_lattice(l: &Lattice) -> Result<Self> {
        if !l.is_nondegenerate() {
            return Err(Error::Degenerate);
        }
        let smith = l.gram().smith_normal_form();
        let factors = smith.invariant_factors();
        let mut invariant_factors = Vec::new();
        let mut generators: Vec<Vec<BigRational>> = Vec::new();
        for (i, d) in factors.iter().enumerate() {
            if d > &BigInt::one() {
                let col = smith.v.col(i);
                generators.push(col.iter().map(|x| BigRational::new(x.clone(), d.clone())).collect());
                invariant_factors.push(d.clone());
            }
        }
        let gram = l.gram().to_rational();
        let one = BigRational::one();
        let two = to_rat(&exact::int(2));
        let pair = |x: &[BigRational], y: &[BigRational]| gram.bilinear(x, y).expect("length matches");
        let b_matrix: Vec<Vec<BigRational>> =
            generators.iter().map(|x| generators.iter().map(|y| rat_mod(&pair(x, y), &one)).collect()).collect();
        let q_values = l.is_even().then(|| generators.iter().map(|x| rat_mod(&pair(x, x), &two)).collect());
        Ok(FiniteQuadraticForm { invariant_factors, generators, q_values, b_matrix, lattice_rank: l.rank() })
    }

    /// A form given directly by its values on cyclic generators.
    pub fn from_values(
        invariant_factors: Vec<BigInt>,
        q_values: Vec<BigRational>,
        b_matrix: Vec<Vec<BigRational>>,
    ) -> Result<Self> {
        let k = invariant_factors.len();
        if q_values.len() != k || b_matrix.len() != k || b_matrix.iter().any(|r| r.len() != k) {
            return Err(Error::DimensionMismatch("form data does not match the generator count".into()));
        }
        let one = BigRational::one();
        let two = to_rat(&exact::int(2));
        let form = FiniteQuadraticForm {
            invariant_factors,
            generators: Vec::new(),
            q_values: Some(q_values.iter().map(|q| rat_mod(q, &two)).collect()),
            b_matrix: b_matrix.iter().map(|r| r.iter().map(|x| rat_mod(x, &one)).collect()).collect(),
            lattice_rank: 0,
        };
        form.validate()?;
        Ok(form)
    }

    /// Cyclic form `⟨a/n⟩` on `Z/n`.
    pub fn cyclic(n: i64, a: i64) -> Result<Self> {
        let q = exact::rat(a, n);
        Self::from_values(vec![exact::int(n)], vec![q.clone()], vec![vec![q]])
    }

    fn validate(&self) -> Result<()> {
        let one = BigRational::one();
        for (i, d) in self.invariant_factors.iter().enumerate() {
            let d = to_rat(d);
            for j in 0..self.invariant_factors.len() {
                if self.b_matrix[i][j] != self.b_matrix[j][i] {
                    return Err(Error::InvalidParameter("b is not symmetric".into()));
                }
                if !rat_mod(&(&self.b_matrix[i][j] * &d), &one).is_zero() {
                    return Err(Error::InvalidParameter("b is not compatible with the group".into()));
                }
            }
            if let Some(q) = &self.q_values {
                if !rat_mod(&(&q[i] - &self.b_matrix[i][i]), &one).is_zero() {
                    return Err(Error::InvalidParameter("q does not refine b".into()));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Minimal number of generators.
    pub fn length(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_even(&self) -> bool {
        self.q_values.is_some()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Every element has order dividing 2.
    pub fn is_two_elementary(&self) -> bool {
        self.invariant_factors.iter().all(|d| d == &exact::int(2))
    }

    pub fn negated(&self) -> Self {
        let one = BigRational::one();
        let two = to_rat(&exact::int(2));
        FiniteQuadraticForm {
            invariant_factors: self.invariant_factors.clone(),
            generators: self.generators.clone(),
            q_values: self.q_values.as_ref().map(|q| q.iter().map(|x| rat_mod(&-x, &two)).collect()),
            b_matrix: self.b_matrix.iter().map(|r| r.iter().map(|x| rat_mod(&-x, &one)).collect()).collect(),
            lattice_rank: self.lattice_rank,
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let k1 = self.length();
        let k = k1 + other.length();
        let b_matrix = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| match (i < k1, j < k1) {
                        (true, true) => self.b_matrix[i][j].clone(),
                        (false, false) => other.b_matrix[i - k1][j - k1].clone(),
                        _ => BigRational::zero(),
                    })
                    .collect()
            })
            .collect();
        let q_values = match (&self.q_values, &other.q_values) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        FiniteQuadraticForm {
            invariant_factors: self.invariant_factors.iter().chain(&other.invariant_factors).cloned().collect(),
            generators: Vec::new(),
            q_values,
            b_matrix,
            lattice_rank: 0,
        }
    }

    /// The rational vector `Σ c_i g_i` in lattice coordinates.
    pub fn lift(&self, coeffs: &[u64]) -> Vec<BigRational> {
        let n = self.generators.first().map_or(self.lattice_rank, |g| g.len());
        let mut v = vec![BigRational::zero(); n];
        for (c, g) in coeffs.iter().zip(&self.generators) {
            for (x, y) in v.iter_mut().zip(g) {
                *x += y * BigRational::from_integer(BigInt::from(*c));
            }
        }
        v
    }

    /// Integer-numerator table for enumeration.
    pub fn table(&self) -> Result<FormTable> {
        let order = self.order();
        if order > BigInt::from(ENUMERATION_LIMIT) {
            return Err(Error::GroupTooLarge { order: order.to_string(), limit: ENUMERATION_LIMIT });
        }
        let factors: Vec<u64> =
            self.invariant_factors.iter().map(|d| d.to_u64().expect("bounded by the limit")).collect();
        let mut den = BigInt::one();
        for row in &self.b_matrix {
            for x in row {
                den = den.lcm(x.denom());
            }
        }
        if let Some(q) = &self.q_values {
            for x in q {
                den = den.lcm(x.denom());
            }
        }
        let n = den.to_i64().expect("denominator divides the exponent");
        let num = |x: &BigRational| (x * BigRational::from_integer(den.clone())).to_integer().to_i64().unwrap();
        let bn = self.b_matrix.iter().map(|r| r.iter().map(num).collect()).collect();
        let qn = self.q_values.as_ref().map(|q| q.iter().map(num).collect());
        Ok(FormTable::new(factors, n, qn, bn))
    }

    /// Searches for an isometry of finite quadratic forms. Both forms must be
    /// even (carry `q`). A found map is re-verified on every element.
    pub fn is_isomorphic(&self, other: &Self) -> Result<bool> {
        if self.invariant_factors != other.invariant_factors {
            return Ok(false);
        }
        if !self.is_even() || !other.is_even() {
            return Err(Error::OddLattice);
        }
        let a = self.table()?;
        let b = other.table()?;
        Ok(find_isometry(&a, &b).is_some())
    }

    /// All isotropic subgroups of order at most `max_order`, trivial included.
    pub fn isotropic_subgroups(&self, max_order: u64) -> Result<Vec<Subgroup>> {
        if !self.is_even() {
            return Err(Error::OddLattice);
        }
        let t = self.table()?;
        Ok(t.isotropic_subgroups(max_order))
    }
}

/// Discriminant form values with a common denominator `n`: `q = qn / n` (mod
/// 2) and `b = bn / n` (mod 1).
#[derive(Clone, Debug)]
pub struct FormTable {
    pub factors: Vec<u64>,
    pub n: i64,
    pub qn: Option<Vec<i64>>,
    pub bn: Vec<Vec<i64>>,
    order: usize,
}

/// A subgroup given by its sorted element indices and a generating set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub elements: Vec<usize>,
    pub generators: Vec<Vec<u64>>,
}

impl FormTable {
    fn new(factors: Vec<u64>, n: i64, qn: Option<Vec<i64>>, bn: Vec<Vec<i64>>) -> Self {
        let order = factors.iter().product::<u64>() as usize;
        FormTable { factors, n, qn, bn, order }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elem(&self, mut idx: usize) -> Vec<u64> {
        let mut out = vec![0; self.factors.len()];
        for (i, &d) in self.factors.iter().enumerate().rev() {
            out[i] = (idx % d as usize) as u64;
            idx /= d as usize;
        }
        out
    }

    pub fn index(&self, c: &[u64]) -> usize {
        self.factors.iter().zip(c).fold(0, |acc, (&d, &x)| acc * d as usize + (x % d) as usize)
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        self.factors.iter().zip(x.iter().zip(y)).map(|(&d, (&a, &b))| (a + b) % d).collect()
    }

    pub fn scale(&self, x: &[u64], k: u64) -> Vec<u64> {
        self.factors.iter().zip(x).map(|(&d, &a)| (a * (k % d)) % d).collect()
    }

    pub fn elem_order(&self, x: &[u64]) -> u64 {
        self.factors.iter().zip(x).fold(1u64, |acc, (&d, &a)| acc.lcm(&(d / d.gcd(&a))))
    }

    /// Numerator of `b(x, y)` in `[0, n)`.
    pub fn b(&self, x: &[u64], y: &[u64]) -> i64 {
        let mut s: i128 = 0;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                s += xi as i128 * yj as i128 * self.bn[i][j] as i128;
            }
        }
        s.rem_euclid(self.n as i128) as i64
    }

    /// Numerator of `q(x)` in `[0, 2n)`.
    pub fn q(&self, x: &[u64]) -> i64 {
        let qn = self.qn.as_ref().expect("even form");
        let mut s: i128 = 0;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            s += (xi as i128) * (xi as i128) * qn[i] as i128;
            for (j, &xj) in x.iter().enumerate().skip(i + 1) {
                s += 2 * xi as i128 * xj as i128 * self.bn[i][j] as i128;
            }
        }
        s.rem_euclid(2 * self.n as i128) as i64
    }

    /// Compares a numerator over `self.n` with one over `other.n`.
    fn same_value(&self, a: i64, other: &FormTable, b: i64) -> bool {
        a as i128 * other.n as i128 == b as i128 * self.n as i128
    }

    fn span_with(&self, current: &[usize], x: &[u64]) -> Vec<usize> {
        let ord = self.elem_order(x);
        let mut set: BTreeSet<usize> = BTreeSet::new();
        for &h in current {
            let he = self.elem(h);
            for k in 0..ord {
                set.insert(self.index(&self.add(&he, &self.scale(x, k))));
            }
        }
        set.into_iter().collect()
    }

    pub fn isotropic_subgroups(&self, max_order: u64) -> Vec<Subgroup> {
        let elems: Vec<Vec<u64>> = (0..self.order).map(|i| self.elem(i)).collect();
        let iso: Vec<usize> = (1..self.order).filter(|&i| self.q(&elems[i]) == 0).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let trivial = Subgroup { elements: vec![0], generators: Vec::new() };
        seen.insert(trivial.elements.clone());
        let mut out = vec![trivial.clone()];
        let mut frontier = vec![trivial];
        while let Some(h) = frontier.pop() {
            for &x in &iso {
                if h.elements.binary_search(&x).is_ok() {
                    continue;
                }
                let xe = &elems[x];
                if h.generators.iter().any(|g| self.b(g, xe) != 0) {
                    continue;
                }
                let span = self.span_with(&h.elements, xe);
                if span.len() as u64 > max_order || seen.contains(&span) {
                    continue;
                }
                seen.insert(span.clone());
                let mut generators = h.generators.clone();
                generators.push(xe.clone());
                let s = Subgroup { elements: span, generators };
                out.push(s.clone());
                frontier.push(s);
            }
        }
        out.sort_by(|a, b| a.elements.len().cmp(&b.elements.len()).then(a.elements.cmp(&b.elements)));
        out
    }
}

/// Backtracking search for an isometry `A → B` given on generators.
pub fn find_isometry(a: &FormTable, b: &FormTable) -> Option<Vec<Vec<u64>>> {
    if a.factors != b.factors {
        return None;
    }
    let k = a.factors.len();
    let gens: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    let b_elems: Vec<Vec<u64>> = (0..b.order()).map(|i| b.elem(i)).collect();
    let candidates: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            let qa = a.q(&gens[i]);
            (0..b.order())
                .filter(|&y| b.elem_order(&b_elems[y]) == a.factors[i] && a.same_value(qa, b, b.q(&b_elems[y])))
                .collect()
        })
        .collect();
    let mut images: Vec<usize> = Vec::with_capacity(k);
    let mut spans: Vec<Vec<usize>> = vec![vec![0]];
    if search(a, b, &gens, &b_elems, &candidates, &mut images, &mut spans) {
        let map: Vec<Vec<u64>> = images.iter().map(|&y| b_elems[y].clone()).collect();
        verify_isometry(a, b, &map).then_some(map)
    } else {
        None
    }
}

fn search(
    a: &FormTable,
    b: &FormTable,
    gens: &[Vec<u64>],
    b_elems: &[Vec<u64>],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    spans: &mut Vec<Vec<usize>>,
) -> bool {
    let i = images.len();
    if i == gens.len() {
        return true;
    }
    for &y in &candidates[i] {
        let ye = &b_elems[y];
        let ok = (0..i).all(|j| a.same_value(a.b(&gens[i], &gens[j]), b, b.b(ye, &b_elems[images[j]])));
        if !ok {
            continue;
        }
        let span = b.span_with(spans.last().expect("nonempty"), ye);
        if span.len() != spans.last().unwrap().len() * a.factors[i] as usize {
            continue;
        }
        images.push(y);
        spans.push(span);
        if search(a, b, gens, b_elems, candidates, images, spans) {
            return true;
        }
        images.pop();
        spans.pop();
    }
    false
}

fn verify_isometry(a: &FormTable, b: &FormTable, map: &[Vec<u64>]) -> bool {
    let mut hit = vec![false; b.order()];
    for idx in 0..a.order() {
        let x = a.elem(idx);
        let mut y = vec![0u64; b.factors.len()];
        for (c, img) in x.iter().zip(map) {
            y = b.add(&y, &b.scale(img, *c));
        }
        if !a.same_value(a.q(&x), b, b.q(&y)) {
            return false;
        }
        let yi = b.index(&y);
        if hit[yi] {
            return false;
        }
        hit[yi] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::lattice::{direct_sum, hyperbolic, rank_one, root_lattice, RootKind};

    #[test]
    fn a2_form() {
        let a2 = root_lattice(RootKind::A, 2).unwrap();
        let f = a2.discriminant_group().unwrap();
        assert_eq!(f.invariant_factors, vec![int(3)]);
        assert_eq!(f.q_values.as_ref().unwrap()[0], rat(4, 3));
    }

    #[test]
    fn unimodular_is_trivial() {
        let u = hyperbolic();
        assert!(u.discriminant_group().unwrap().is_trivial());
        let e8 = root_lattice(RootKind::E, 8).unwrap();
        assert!(e8.discriminant_group().unwrap().is_trivial());
    }

    #[test]
    fn degenerate_rejected() {
        let l = Lattice::from_i64(&[&[0, 0], &[0, 0]]).unwrap();
        assert!(matches!(l.discriminant_group(), Err(Error::Degenerate)));
    }

    #[test]
    fn isomorphism_of_cyclic_forms() {
        let a2 = root_lattice(RootKind::A, 2).unwrap().discriminant_group().unwrap();
        let c = FiniteQuadraticForm::cyclic(3, 4).unwrap();
        assert!(a2.is_isomorphic(&c).unwrap());
        let c2 = FiniteQuadraticForm::cyclic(3, 2).unwrap();
        assert!(!a2.is_isomorphic(&c2).unwrap());
        // A1 + <2> has q values -1/2, 1/2; it is not <2> + <2>.
        let f1 = direct_sum(&[rank_one(&int(-2)).unwrap(), rank_one(&int(2)).unwrap()]);
        let f2 = direct_sum(&[rank_one(&int(2)).unwrap(), rank_one(&int(2)).unwrap()]);
        let q1 = f1.discriminant_group().unwrap();
        let q2 = f2.discriminant_group().unwrap();
        assert!(!q1.is_isomorphic(&q2).unwrap());
        assert!(q1.is_isomorphic(&q1.negated()).unwrap());
    }

    #[test]
    fn isotropic_subgroups_of_u2() {
        let u2 = hyperbolic().rescale(&int(2)).unwrap();
        let f = u2.discriminant_group().unwrap();
        let subs = f.isotropic_subgroups(4).unwrap();
        // trivial plus two isotropic lines
        assert_eq!(subs.len(), 3);
    }
}
