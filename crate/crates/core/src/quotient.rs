//! The finite abelian group `Z^n / M Z^n` of integer vectors modulo a
//! nonsingular matrix `M`.
//!
//! Elements are stored in a canonical form: reduced against the columns of the
//! Hermite normal form `H` so that `0 <= a_i < h_ii`. Enumerating that box in
//! lexicographic order gives every element exactly once, which is also the
//! vertex order used for circulant graphs.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::intmat::{
    hermite_normal_form, lattice_hermite, smith_normal_form, unimodular_inverse,
    HermiteDecomposition, IntMatrix, MatrixError, SmithDecomposition,
};

/// Groups larger than this are rejected; element coordinates and vertex
/// indices must fit machine words.
pub const MAX_ORDER: u64 = 1 << 62;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuotientError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("dimension mismatch: expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("group order {0} exceeds the supported maximum")]
    OrderTooLarge(BigInt),
    #[error("generator list is empty")]
    EmptyGenerators,
}

/// Canonical representative of a congruence class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<i64>);

impl GroupElement {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn to_big(&self) -> Vec<BigInt> {
        self.0.iter().map(|&x| BigInt::from(x)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone)]
pub struct QuotientGroup {
    matrix: IntMatrix,
    hermite: HermiteDecomposition,
    smith: SmithDecomposition,
    order: u64,
    rank: usize,
    snf_factors: Vec<u64>,
    u_prime: IntMatrix,
    u_inv_cols: IntMatrix,
    /// `m * M^{-1}`, integral.
    scaled_inverse: IntMatrix,
    /// HNF entries, row-major.
    h: Vec<Vec<i128>>,
    radix: Vec<u64>,
}

/// JSON summary of a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub order: u64,
    pub rank: usize,
    pub invariant_factors: Vec<u64>,
}

impl QuotientGroup {
    pub fn new(m: &IntMatrix) -> Result<Self, QuotientError> {
        let smith = smith_normal_form(m)?;
        Self::with_smith(m, smith)
    }

    /// Builds the group from a caller-supplied Smith decomposition of `m`;
    /// the choice of `U` fixes the coordinate map to `Z^r / S' Z^r`.
    pub fn with_smith(m: &IntMatrix, smith: SmithDecomposition) -> Result<Self, QuotientError> {
        if smith.source != *m {
            return Err(MatrixError::InvalidDecomposition("decomposition of another matrix".into()).into());
        }
        let hermite = hermite_normal_form(m)?;
        let det = m.det()?;
        let order_big = det.abs();
        if order_big > BigInt::from(MAX_ORDER) {
            return Err(QuotientError::OrderTooLarge(order_big));
        }
        let order = order_big.to_u64().expect("bounded above");
        let n = m.rows();

        let rank = smith.factors.iter().filter(|s| !s.is_one()).count();
        let snf_factors: Vec<u64> = smith.factors[n - rank..]
            .iter()
            .map(|s| s.to_u64().expect("divides the order"))
            .collect();
        let last: Vec<usize> = (n - rank..n).collect();
        let all: Vec<usize> = (0..n).collect();
        let u_prime = smith.u.select(&last, &all);
        let u_inv_cols = unimodular_inverse(&smith.u)?.select(&all, &last);

        let mut scaled_inverse = m.adjugate()?;
        if det.is_negative() {
            let neg: Vec<Vec<BigInt>> = (0..n)
                .map(|i| scaled_inverse.row(i).iter().map(|x| -x).collect())
                .collect();
            scaled_inverse = IntMatrix::from_rows(&neg)?;
        }

        let h = (0..n)
            .map(|i| {
                hermite.h.row(i).iter().map(|x| x.to_i128().expect("bounded by the order")).collect()
            })
            .collect::<Vec<Vec<i128>>>();
        let radix = (0..n).map(|i| h[i][i] as u64).collect();

        Ok(QuotientGroup {
            matrix: m.clone(),
            hermite,
            smith,
            order,
            rank,
            snf_factors,
            u_prime,
            u_inv_cols,
            scaled_inverse,
            h,
            radix,
        })
    }

    /// The group `Z/s_1 x .. x Z/s_k` given by a diagonal matrix.
    pub fn diagonal(factors: &[u64]) -> Result<Self, QuotientError> {
        Self::new(&IntMatrix::diag(factors))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn hermite(&self) -> &HermiteDecomposition {
        &self.hermite
    }

    pub fn smith(&self) -> &SmithDecomposition {
        &self.smith
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Nontrivial invariant factors, the diagonal of `S'`.
    pub fn snf_factors(&self) -> &[u64] {
        &self.snf_factors
    }

    pub fn u_prime(&self) -> &IntMatrix {
        &self.u_prime
    }

    pub fn u_inv_cols(&self) -> &IntMatrix {
        &self.u_inv_cols
    }

    /// Determinantal divisor `d_k`, with `d_0 = 1`.
    pub fn divisor(&self, k: usize) -> BigInt {
        if k == 0 {
            BigInt::one()
        } else {
            self.smith.divisors[k - 1].clone()
        }
    }

    pub fn is_cyclic(&self) -> bool {
        self.divisor(self.dim() - 1).is_one()
    }

    /// Diagonal of the Hermite normal form: the box of canonical coordinates.
    pub fn radix(&self) -> &[u64] {
        &self.radix
    }

    pub fn summary(&self) -> GroupSummary {
        GroupSummary {
            order: self.order,
            rank: self.rank,
            invariant_factors: self.snf_factors.clone(),
        }
    }

    fn check_len(&self, len: usize) -> Result<(), QuotientError> {
        if len == self.dim() {
            Ok(())
        } else {
            Err(QuotientError::DimensionMismatch {
                expected: self.dim(),
                found: len,
            })
        }
    }

    /// Reduction against the HNF columns, last coordinate first.
    fn reduce_wide(&self, mut a: Vec<i128>) -> GroupElement {
        for i in (0..a.len()).rev() {
            let q = a[i].div_euclid(self.h[i][i]);
            if q != 0 {
                for k in 0..=i {
                    a[k] -= q * self.h[k][i];
                }
            }
        }
        GroupElement(a.into_iter().map(|x| x as i64).collect())
    }

    pub fn canonicalize(&self, a: &[BigInt]) -> Result<GroupElement, QuotientError> {
        self.check_len(a.len())?;
        let h = &self.hermite.h;
        let mut a = a.to_vec();
        for i in (0..a.len()).rev() {
            let q = a[i].div_floor(h.get(i, i));
            if !q.is_zero() {
                for k in 0..=i {
                    let d = &q * h.get(k, i);
                    a[k] -= d;
                }
            }
        }
        Ok(GroupElement(
            a.iter().map(|x| x.to_i64().expect("reduced coordinate")).collect(),
        ))
    }

    pub fn canonicalize_i64(&self, a: &[i64]) -> Result<GroupElement, QuotientError> {
        self.check_len(a.len())?;
        if a.iter().all(|x| x.unsigned_abs() < MAX_ORDER) {
            Ok(self.reduce_wide(a.iter().map(|&x| x as i128).collect()))
        } else {
            self.canonicalize(&crate::intmat::big_vec(a))
        }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.dim()])
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.reduce_wide(a.0.iter().zip(&b.0).map(|(&x, &y)| x as i128 + y as i128).collect())
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.reduce_wide(a.0.iter().zip(&b.0).map(|(&x, &y)| x as i128 - y as i128).collect())
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.reduce_wide(a.0.iter().map(|&x| -(x as i128)).collect())
    }

    pub fn scale(&self, k: &BigInt, a: &GroupElement) -> GroupElement {
        let v: Vec<BigInt> = a.to_big().into_iter().map(|x| x * k).collect();
        self.canonicalize(&v).expect("same dimension")
    }

    /// Position of an element in the lexicographic enumeration.
    pub fn index_of(&self, a: &GroupElement) -> usize {
        a.0.iter()
            .zip(&self.radix)
            .fold(0usize, |acc, (&x, &r)| acc * r as usize + x as usize)
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut coords = vec![0i64; self.dim()];
        for i in (0..self.dim()).rev() {
            let r = self.radix[i] as usize;
            coords[i] = (index % r) as i64;
            index /= r;
        }
        GroupElement(coords)
    }

    /// All elements in lexicographic order of their canonical coordinates.
    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order as usize).map(|i| self.element_at(i)).collect()
    }

    pub fn congruent(&self, a: &[BigInt], b: &[BigInt]) -> Result<bool, QuotientError> {
        Ok(self.canonicalize(a)? == self.canonicalize(b)?)
    }

    /// Congruence decided as integrality of `M^{-1}(a - b)`, i.e. every entry
    /// of `m M^{-1} (a - b)` divisible by `m`.
    pub fn congruent_by_inverse(&self, a: &[BigInt], b: &[BigInt]) -> Result<bool, QuotientError> {
        self.check_len(a.len())?;
        self.check_len(b.len())?;
        let diff: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        let m = BigInt::from(self.order);
        Ok(self.scaled_inverse.mul_vec(&diff)?.iter().all(|x| x.is_multiple_of(&m)))
    }

    /// `m * M^{-1} * a`.
    pub fn scaled_inverse_apply(&self, a: &[BigInt]) -> Result<Vec<BigInt>, QuotientError> {
        self.check_len(a.len())?;
        Ok(self.scaled_inverse.mul_vec(a)?)
    }

    /// Order of `a` as `m / gcd(m, gcd(m M^{-1} a))`.
    pub fn element_order(&self, a: &GroupElement) -> u64 {
        let m = BigInt::from(self.order);
        let y = self.scaled_inverse.mul_vec(&a.to_big()).expect("same dimension");
        let g = y.iter().fold(m.clone(), |g, x| g.gcd(x));
        (m / g).to_u64().expect("divides the order")
    }

    /// The explicit two-dimensional order formula
    /// `m / gcd(m, a_1 m_22 - a_2 m_12, a_2 m_11 - a_1 m_21)`.
    pub fn element_order_2x2(&self, a: &GroupElement) -> Option<u64> {
        if self.dim() != 2 {
            return None;
        }
        let mm = |i, j| self.matrix.get(i, j).clone();
        let (a1, a2) = (BigInt::from(a.0[0]), BigInt::from(a.0[1]));
        let x = &a1 * mm(1, 1) - &a2 * mm(0, 1);
        let y = &a2 * mm(0, 0) - &a1 * mm(1, 0);
        let m = BigInt::from(self.order);
        let g = m.gcd(&x).gcd(&y);
        (m / g).to_u64()
    }

    /// Coordinates in `Z^r / S' Z^r`: `U' a` reduced modulo `S'`.
    pub fn to_snf_coords(&self, a: &GroupElement) -> Vec<i64> {
        let y = self.u_prime.mul_vec(&a.to_big()).expect("same dimension");
        y.iter()
            .zip(&self.snf_factors)
            .map(|(x, &s)| x.mod_floor(&BigInt::from(s)).to_i64().expect("reduced"))
            .collect()
    }

    pub fn from_snf_coords(&self, c: &[i64]) -> Result<GroupElement, QuotientError> {
        if c.len() != self.rank {
            return Err(QuotientError::DimensionMismatch {
                expected: self.rank,
                found: c.len(),
            });
        }
        let v = self.u_inv_cols.mul_vec(&crate::intmat::big_vec(c))?;
        self.canonicalize(&v)
    }

    fn lattice_with(&self, gens: &[GroupElement]) -> Result<IntMatrix, QuotientError> {
        for g in gens {
            self.check_len(g.0.len())?;
        }
        let cols: Vec<Vec<BigInt>> = gens.iter().map(GroupElement::to_big).collect();
        let a = IntMatrix::from_columns(self.dim(), &cols)?;
        Ok(self.matrix.hconcat(&a)?)
    }

    /// Index of `<gens>` in the group: `|det|` of the Hermite basis of the
    /// lattice spanned by the columns of `[M | A]`.
    pub fn subgroup_index(&self, gens: &[GroupElement]) -> Result<u64, QuotientError> {
        let lh = lattice_hermite(&self.lattice_with(gens)?)?;
        Ok(lh.index().to_u64().expect("divides the order"))
    }

    pub fn generates(&self, gens: &[GroupElement]) -> Result<bool, QuotientError> {
        Ok(self.subgroup_index(gens)? == 1)
    }

    /// A `d x n` integer matrix `X` with `A X = I (mod M)`, when `A` generates.
    pub fn generation_witness(&self, gens: &[GroupElement]) -> Result<Option<IntMatrix>, QuotientError> {
        let lattice = self.lattice_with(gens)?;
        let lh = lattice_hermite(&lattice)?;
        let n = self.dim();
        if lh.h != IntMatrix::identity(n) {
            return Ok(None);
        }
        let d = gens.len();
        let rows: Vec<usize> = (n..n + d).collect();
        let cols: Vec<usize> = (d..n + d).collect();
        Ok(Some(lh.transform.select(&rows, &cols)))
    }

    /// Upper-triangular presentation matrix of `<gens>`, so that
    /// `<gens> = Z^d / H Z^d` with `e_j` mapped to `gens[j]`.
    ///
    /// The diagonal entry `h_jj` is the least `mu > 0` with `mu g_j` in
    /// `<g_1, .., g_{j-1}>`; the column above it records the relation found
    /// while growing that subgroup, reduced into `[0, h_ii)`.
    pub fn presentation_from_generators(&self, gens: &[GroupElement]) -> Result<IntMatrix, QuotientError> {
        if gens.is_empty() {
            return Err(QuotientError::EmptyGenerators);
        }
        for g in gens {
            self.check_len(g.0.len())?;
        }
        let d = gens.len();
        let mut h = vec![vec![0i64; d]; d];
        let mut members: HashMap<GroupElement, Vec<i64>> = HashMap::new();
        members.insert(self.zero(), vec![0; d]);

        for (j, g) in gens.iter().enumerate() {
            let mut x = g.clone();
            let mut mu = 1i64;
            while !members.contains_key(&x) {
                x = self.add(&x, g);
                mu += 1;
            }
            let coeffs = &members[&x];
            for i in 0..j {
                h[i][j] = -coeffs[i];
            }
            h[j][j] = mu;

            let old: Vec<(GroupElement, Vec<i64>)> =
                members.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
            let mut step = self.zero();
            for t in 1..mu {
                step = self.add(&step, g);
                for (e, c) in &old {
                    let mut c = c.clone();
                    c[j] = t;
                    members.insert(self.add(e, &step), c);
                }
            }
        }

        for j in 0..d {
            for i in (0..j).rev() {
                let q = h[i][j].div_euclid(h[i][i]);
                if q != 0 {
                    for k in 0..=i {
                        h[k][j] -= q * h[k][i];
                    }
                }
            }
        }
        Ok(IntMatrix::from_rows(&h)?)
    }

    /// All automorphisms of the group, each as a permutation of element
    /// indices. Built from images of the Smith basis; exponential in the rank,
    /// intended for small groups.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let m = self.order as usize;
        let elements = self.elements();
        let coords: Vec<Vec<i64>> = elements.iter().map(|e| self.to_snf_coords(e)).collect();

        let mut out = Vec::new();
        let mut chosen: Vec<GroupElement> = Vec::with_capacity(self.rank);
        let mut subgroup = vec![false; m];
        subgroup[0] = true;
        self.extend_automorphism(&elements, &coords, &mut chosen, &mut subgroup, &mut out);
        out
    }

    fn extend_automorphism(
        &self,
        elements: &[GroupElement],
        coords: &[Vec<i64>],
        chosen: &mut Vec<GroupElement>,
        subgroup: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = chosen.len();
        if i == self.rank {
            let perm = coords
                .iter()
                .map(|c| {
                    let mut acc = self.zero();
                    for (k, &ck) in c.iter().enumerate() {
                        acc = self.add(&acc, &self.scale(&BigInt::from(ck), &chosen[k]));
                    }
                    self.index_of(&acc)
                })
                .collect();
            out.push(perm);
            return;
        }
        let s = self.snf_factors[i];
        for x in elements {
            if self.element_order(x) != s {
                continue;
            }
            // <chosen, x> must grow by the full factor s
            let mut multiple = x.clone();
            let mut clean = true;
            for _ in 1..s {
                if subgroup[self.index_of(&multiple)] {
                    clean = false;
                    break;
                }
                multiple = self.add(&multiple, x);
            }
            if !clean {
                continue;
            }
            let before = subgroup.clone();
            let members: Vec<usize> = (0..subgroup.len()).filter(|&k| before[k]).collect();
            let mut step = self.zero();
            for _ in 1..s {
                step = self.add(&step, x);
                for &k in &members {
                    subgroup[self.index_of(&self.add(&elements[k], &step))] = true;
                }
            }
            chosen.push(x.clone());
            self.extend_automorphism(elements, coords, chosen, subgroup, out);
            chosen.pop();
            *subgroup = before;
        }
    }
}

impl fmt::Display for QuotientGroup {
    /// `Z_2 x Z_6`, or `0` for the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank == 0 {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.snf_factors.iter().map(|s| format!("Z_{s}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intmat::big_vec;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn el(g: &QuotientGroup, v: &[i64]) -> GroupElement {
        g.canonicalize_i64(v).unwrap()
    }

    /// Order by repeated addition.
    fn brute_order(g: &QuotientGroup, a: &GroupElement) -> u64 {
        let mut x = a.clone();
        let mut t = 1;
        while !x.is_zero() {
            x = g.add(&x, a);
            t += 1;
        }
        t
    }

    /// Closure of a generating set by breadth-first addition.
    fn closure_size(g: &QuotientGroup, gens: &[GroupElement]) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![g.zero()];
        seen.insert(g.zero());
        while let Some(x) = stack.pop() {
            for a in gens {
                let y = g.add(&x, a);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn make_group_examples() {
        let g = QuotientGroup::new(&IntMatrix::diag(&[2, 2, 3])).unwrap();
        assert_eq!((g.order(), g.rank()), (12, 2));
        assert_eq!(g.snf_factors(), &[2, 6]);
        assert_eq!(g.to_string(), "Z_2 x Z_6");

        let t = QuotientGroup::new(&IntMatrix::identity(3)).unwrap();
        assert_eq!((t.order(), t.rank()), (1, 0));
        assert_eq!(t.to_string(), "0");

        let g = QuotientGroup::new(&IntMatrix::diag(&[2, 6])).unwrap();
        assert_eq!((g.order(), g.rank()), (12, 2));
        assert_eq!(g.snf_factors(), &[2, 6]);
    }

    #[test]
    fn singular_rejected() {
        assert!(matches!(
            QuotientGroup::new(&mat(&[&[1, 2], &[2, 4]])),
            Err(QuotientError::Matrix(MatrixError::SingularMatrix))
        ));
    }

    #[test]
    fn canonicalize_examples() {
        let g = QuotientGroup::new(&IntMatrix::diag(&[2, 2, 3])).unwrap();
        assert_eq!(el(&g, &[3, -1, 7]).coords(), &[1, 1, 1]);
        assert_eq!(el(&g, &[1, 1, 1]).coords(), &[1, 1, 1]);
        assert!(matches!(
            g.canonicalize_i64(&[1, 2]),
            Err(QuotientError::DimensionMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn canonicalize_non_diagonal_against_coset_enumeration() {
        let m = mat(&[&[2, 1], &[0, 3]]);
        let g = QuotientGroup::new(&m).unwrap();
        let a = big_vec(&[2, 0]);
        let r = g.canonicalize(&a).unwrap();
        // the unique vector of the box [0,2)x[0,3) differing from a by a lattice vector
        let mut hits = Vec::new();
        for x in 0..2 {
            for y in 0..3 {
                let diff = big_vec(&[2 - x, -y]);
                let det = m.det().unwrap();
                let sol = m.adjugate().unwrap().mul_vec(&diff).unwrap();
                if sol.iter().all(|s| s.is_multiple_of(&det)) {
                    hits.push(vec![x, y]);
                }
            }
        }
        assert_eq!(hits.len(), 1);
        assert_eq!(r.coords(), hits[0].as_slice());
    }

    #[test]
    fn congruence_examples() {
        let g = QuotientGroup::new(&IntMatrix::diag(&[2, 2, 3])).unwrap();
        let (a, b, c) = (big_vec(&[1, 0, 0]), big_vec(&[3, 2, 3]), big_vec(&[0, 1, 0]));
        assert!(g.congruent(&a, &b).unwrap());
        assert!(g.congruent(&a, &a).unwrap());
        assert!(!g.congruent(&a, &c).unwrap());
        for (x, y) in [(&a, &b), (&a, &c), (&b, &c)] {
            assert_eq!(g.congruent(x, y).unwrap(), g.congruent_by_inverse(x, y).unwrap());
        }
    }

    #[test]
    fn element_order_examples() {
        let g = QuotientGroup::new(&IntMatrix::diag(&[2, 6])).unwrap();
        assert_eq!(g.element_order(&g.zero()), 1);
        let a = el(&g, &[1, 1]);
        assert_eq!(g.element_order(&a), 6);
        assert_eq!(brute_order(&g, &a), 6);
        assert_eq!(g.element_order_2x2(&a), Some(6));

        // Z/2eta x Z/2 with a1 - a2 = (0, -1)
        for eta in 1..5 {
            let g = QuotientGroup::new(&IntMatrix::diag(&[2 * eta, 2])).unwrap();
            let d = el(&g, &[0, -1]);
            assert_eq!(g.element_order(&d), 2);
            assert_eq!(g.element_order_2x2(&d), Some(2));
        }
    }

    #[test]
    fn snf_coordinates_with_supplied_transform() {
        let m = IntMatrix::diag(&[2, 2, 3]);
        let u = mat(&[&[-1, 0, 1], &[0, 1, 0], &[-3, 0, 2]]);
        let v = mat(&[&[1, 0, 3], &[0, 1, 0], &[1, 0, 2]]);
        let sd = SmithDecomposition::from_transforms(&m, u, v).unwrap();
        let g = QuotientGroup::with_smith(&m, sd).unwrap();
        let images: Vec<Vec<i64>> = [[1, 0, 0], [0, 1, 0], [0, 0, 2]]
            .iter()
            .map(|a| g.to_snf_coords(&el(&g, a)))
            .collect();
        assert_eq!(images, vec![vec![0, 3], vec![1, 0], vec![0, 4]]);
        assert_eq!(g.to_snf_coords(&g.zero()), vec![0, 0]);
    }

    #[test]
    fn snf_round_trip_and_homomorphism() {
        let g = QuotientGroup::new(&mat(&[&[3, 1, 0], &[1, 4, 2], &[0, 2, 6]])).unwrap();
        for a in g.elements() {
            let c = g.to_snf_coords(&a);
            assert_eq!(g.from_snf_coords(&c).unwrap(), a);
            for b in g.elements().iter().step_by(7) {
                let sum = g.to_snf_coords(&g.add(&a, b));
                let cb = g.to_snf_coords(b);
                let expect: Vec<i64> = c
                    .iter()
                    .zip(&cb)
                    .zip(g.snf_factors())
                    .map(|((x, y), &s)| (x + y).rem_euclid(s as i64))
                    .collect();
                assert_eq!(sum, expect);
            }
        }
    }

    #[test]
    fn subgroup_index_examples() {
        let g = QuotientGroup::new(&IntMatrix::diag(&[2, 2, 3])).unwrap();
        let units: Vec<_> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]].iter().map(|v| el(&g, v)).collect();
        assert_eq!(g.subgroup_index(&units).unwrap(), 1);
        assert_eq!(g.subgroup_index(&[g.zero()]).unwrap(), 12);
        let a: Vec<_> = [[1, 0, 0], [0, 1, 0], [0, 0, 2]].iter().map(|v| el(&g, v)).collect();
        assert_eq!(closure_size(&g, &a), 12);
        assert_eq!(g.subgroup_index(&a).unwrap(), 1);
    }

    #[test]
    fn generates_examples() {
        let g = QuotientGroup::new(&IntMatrix::diag(&[2, 6])).unwrap();
        let a: Vec<_> = [[0, 3], [1, 0], [0, 4]].iter().map(|v| el(&g, v)).collect();
        assert!(g.generates(&a).unwrap());
        let x = g.generation_witness(&a).unwrap().unwrap();
        // A X = I (mod M), column by column
        let amat = IntMatrix::from_columns(2, &a.iter().map(GroupElement::to_big).collect::<Vec<_>>()).unwrap();
        let ax = &amat * &x;
        for j in 0..2 {
            let mut e = vec![0i64; 2];
            e[j] = 1;
            assert_eq!(g.canonicalize(&ax.column(j)).unwrap(), el(&g, &e));
        }
        let b = [el(&g, &[0, 2])];
        assert!(!g.generates(&b).unwrap());
        assert!(g.generation_witness(&b).unwrap().is_none());
        assert_eq!(g.subgroup_index(&b).unwrap(), 4);
    }

    #[test]
    fn presentation_examples() {
        let g = QuotientGroup::new(&IntMatrix::diag(&[2, 6])).unwrap();
        let a = el(&g, &[1, 1]);
        assert_eq!(g.presentation_from_generators(&[a]).unwrap(), mat(&[&[6]]));
        let gens = [el(&g, &[1, 0]), el(&g, &[0, 1])];
        let h = g.presentation_from_generators(&gens).unwrap();
        assert_eq!(h.det().unwrap(), BigInt::from(closure_size(&g, &gens)));
        assert_eq!(h, IntMatrix::diag(&[2, 6]));
        let h = g.presentation_from_generators(&[g.zero(), el(&g, &[0, 1])]).unwrap();
        assert_eq!(h.get(0, 0), &BigInt::one());
        assert!(matches!(
            g.presentation_from_generators(&[]),
            Err(QuotientError::EmptyGenerators)
        ));
    }

    #[test]
    fn presentation_with_relations() {
        // <(1,1), (0,2)> in Z_2 x Z_6: (0,2) is already 2*(1,1)
        let g = QuotientGroup::new(&IntMatrix::diag(&[2, 6])).unwrap();
        let gens = [el(&g, &[1, 1]), el(&g, &[0, 2])];
        let h = g.presentation_from_generators(&gens).unwrap();
        assert_eq!(h, mat(&[&[6, 4], &[0, 1]]));
        // column 2 is a relation: 4*(1,1) + 1*(0,2) = 0
        let r = g.add(&g.scale(&BigInt::from(4), &gens[0]), &gens[1]);
        assert!(r.is_zero());
    }

    #[test]
    fn automorphism_counts() {
        // |Aut(Z_n)| = phi(n), |Aut(Z_2^2)| = 6, |Aut(Z_2 x Z_4)| = 8
        let count = |f: &[u64]| QuotientGroup::diagonal(f).unwrap().automorphisms().len();
        assert_eq!(count(&[9]), 6);
        assert_eq!(count(&[12]), 4);
        assert_eq!(count(&[2, 2]), 6);
        assert_eq!(count(&[2, 4]), 8);
        assert_eq!(count(&[3, 3]), 48);
        let g = QuotientGroup::diagonal(&[2, 4]).unwrap();
        for p in g.automorphisms() {
            let mut sorted = p.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..8).collect::<Vec<_>>());
            let es = g.elements();
            for a in &es {
                for b in &es {
                    let s = g.index_of(&g.add(a, b));
                    let img = g.index_of(&g.add(&es[p[g.index_of(a)]], &es[p[g.index_of(b)]]));
                    assert_eq!(p[s], img);
                }
            }
        }
    }
}
