//! Bounds on, and exact decisions about, the dimension of a multidimensional
//! circulant: the least rank of an abelian group it is a Cayley (di)graph of.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::circulant::{CirculantError, CirculantGraph, JumpSet, Mode};
use crate::intmat::IntMatrix;
use crate::oracle::{self, Limits, OracleError};
use crate::quotient::{GroupElement, QuotientError, QuotientGroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DimensionError {
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Circulant(#[from] CirculantError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("the jumps do not generate the group")]
    NotGenerating,
    #[error("expected exactly 2 distinct jumps, got {0}")]
    WrongJumpCount(usize),
    #[error("expected a 2x2 matrix, got {rows}x{cols}")]
    NotTwoByTwo { rows: usize, cols: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = 2 is excluded; the prime must be odd")]
    EvenPrime,
    #[error("factor {0} is not connected")]
    FactorNotConnected(usize),
}

/// Which condition decided a circulant verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// `d_{n-1} = 1`.
    A,
    /// `d_{n-1} = 2` and `o(a_1 - a_2) = 2`.
    B,
    /// Graph mode: `d_{n-1} = 2` and `o(a_1 + a_2) = 2`.
    C,
    /// Some dimension bound equals 1.
    Bound,
    /// None of the conditions holds.
    NoneHolds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CirculantVerdict {
    pub is_circulant: bool,
    pub rule: Rule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    BruteForce,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExactDimension {
    pub value: usize,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub order: u64,
    pub mode: Mode,
    pub prime_factorization: Vec<(u64, u32)>,
    /// Number of invariant factors greater than 1.
    pub snf_rank_bound: usize,
    /// Largest prime exponent of the order.
    pub prime_exponent_bound: u32,
    /// Size of a smallest subset of the jumps generating the same subgroup.
    pub generator_bound: usize,
    /// Index of the subgroup generated by the jumps; 1 when connected.
    pub alpha: u64,
    pub circulant: Option<CirculantVerdict>,
    pub exceptional_eta: Option<u64>,
    pub exact_dimension: Option<ExactDimension>,
    /// Value of the exhaustive search, when it was run.
    pub bruteforce_dimension: Option<usize>,
}

impl DimensionReport {
    pub fn min_bound(&self) -> usize {
        self.snf_rank_bound
            .min(self.prime_exponent_bound as usize)
            .min(self.generator_bound)
    }
}

pub fn prime_factorization(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && prime_factorization(p) == [(p, 1)]
}

/// Smallest subset of `jumps` generating the same subgroup, by exhaustive
/// search over subset sizes.
pub fn minimal_generating_subset(g: &QuotientGroup, jumps: &[GroupElement]) -> Result<Vec<GroupElement>, DimensionError> {
    let target = g.subgroup_index(jumps)?;
    for k in 1..jumps.len() {
        for subset in itertools::Itertools::combinations(jumps.iter().cloned(), k) {
            if g.subgroup_index(&subset)? == target {
                return Ok(subset);
            }
        }
    }
    Ok(jumps.to_vec())
}

/// The three upper bounds. Whenever one of them is 1 the graph is a
/// circulant and the dimension is recorded as 1.
pub fn dimension_bounds(circ: &CirculantGraph) -> Result<DimensionReport, DimensionError> {
    let g = circ.group();
    let gens = circ.jump_set().generators();
    let factorization = prime_factorization(g.order());
    let prime_exponent_bound = factorization.iter().map(|&(_, e)| e).max().unwrap_or(0);
    let mut report = DimensionReport {
        order: g.order(),
        mode: circ.mode(),
        prime_factorization: factorization,
        snf_rank_bound: g.rank(),
        prime_exponent_bound,
        generator_bound: minimal_generating_subset(g, gens)?.len(),
        alpha: g.subgroup_index(gens)?,
        circulant: None,
        exceptional_eta: None,
        exact_dimension: None,
        bruteforce_dimension: None,
    };
    if report.min_bound() <= 1 {
        report.circulant = Some(CirculantVerdict {
            is_circulant: true,
            rule: Rule::Bound,
        });
        report.exact_dimension = Some(ExactDimension {
            value: report.min_bound(),
            provenance: Provenance::ClosedForm,
        });
    }
    Ok(report)
}

/// Bounds plus every closed-form decision that applies. For a connected
/// 2-jump circulant the circulant test is exact, which pins the dimension
/// whenever the bound is 2.
pub fn analyze(circ: &CirculantGraph) -> Result<DimensionReport, DimensionError> {
    let mut report = dimension_bounds(circ)?;
    let gens = circ.jump_set().generators();
    if gens.len() == 2 && report.alpha == 1 {
        let verdict = is_circulant_2step(circ.group(), gens, circ.mode())?;
        report.exceptional_eta = exceptional_case(circ.group(), gens, circ.mode())?;
        if report.circulant.is_none() {
            report.circulant = Some(verdict);
            let value = if verdict.is_circulant {
                Some(1)
            } else if report.min_bound() == 2 {
                Some(2)
            } else {
                None
            };
            report.exact_dimension = value.map(|value| ExactDimension {
                value,
                provenance: Provenance::ClosedForm,
            });
        }
    }
    Ok(report)
}

/// Adds the exhaustive search result; it becomes the exact value when no
/// closed form applied.
pub fn with_bruteforce(mut report: DimensionReport, circ: &CirculantGraph, limits: &Limits) -> Result<DimensionReport, DimensionError> {
    let found = oracle::dimension_bruteforce(circ.graph(), limits)?;
    report.bruteforce_dimension = Some(found.dimension);
    if report.exact_dimension.is_none() {
        report.exact_dimension = Some(ExactDimension {
            value: found.dimension,
            provenance: Provenance::BruteForce,
        });
    }
    Ok(report)
}

fn two_jumps(jumps: &[GroupElement]) -> Result<(&GroupElement, &GroupElement), DimensionError> {
    match jumps {
        [a1, a2] if a1 != a2 => Ok((a1, a2)),
        [_, _] => Err(DimensionError::WrongJumpCount(1)),
        _ => Err(DimensionError::WrongJumpCount(jumps.len())),
    }
}

/// Circulant test for a connected 2-jump circulant, with the deciding rule.
pub fn is_circulant_2step(g: &QuotientGroup, jumps: &[GroupElement], mode: Mode) -> Result<CirculantVerdict, DimensionError> {
    let (a1, a2) = two_jumps(jumps)?;
    if !g.generates(jumps)? {
        return Err(DimensionError::NotGenerating);
    }
    let d = g.divisor(g.dim() - 1);
    let verdict = |is_circulant, rule| Ok(CirculantVerdict { is_circulant, rule });
    if d.is_one() {
        return verdict(true, Rule::A);
    }
    if d == BigInt::from(2) {
        if g.element_order(&g.sub(a1, a2)) == 2 {
            return verdict(true, Rule::B);
        }
        if mode == Mode::Graph && g.element_order(&g.add(a1, a2)) == 2 {
            return verdict(true, Rule::C);
        }
    }
    verdict(false, Rule::NoneHolds)
}

/// The commutative 2-step digraph `G(M; e_1, e_2)` test, straight from the
/// entries of a 2x2 matrix.
pub fn commutative_2step_is_circulant(m: &IntMatrix) -> Result<bool, DimensionError> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(DimensionError::NotTwoByTwo {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let g = QuotientGroup::new(m)?;
    let units = [g.canonicalize_i64(&[1, 0])?, g.canonicalize_i64(&[0, 1])?];
    if !g.generates(&units)? {
        return Err(DimensionError::NotGenerating);
    }
    let e = |i, j| m.get(i, j).clone();
    let d1 = e(0, 0).gcd(&e(0, 1)).gcd(&e(1, 0)).gcd(&e(1, 1));
    if d1.is_one() {
        return Ok(true);
    }
    let order = BigInt::from(g.order());
    let two = BigInt::from(2);
    Ok(d1 == two && order == &two * order.gcd(&(e(1, 1) + e(0, 1))).gcd(&(e(0, 0) + e(1, 0))))
}

/// `eta` when the group is `Z/2eta x Z/2` and the jumps satisfy
/// `2 eta a_1 = 0`, `2 a_1 = 2 a_2` (in graph mode also with `a_2`
/// replaced by `-a_2`).
pub fn exceptional_case(g: &QuotientGroup, jumps: &[GroupElement], mode: Mode) -> Result<Option<u64>, DimensionError> {
    let (a1, a2) = two_jumps(jumps)?;
    let [2, s] = g.snf_factors() else {
        return Ok(None);
    };
    if !g.generates(jumps)? {
        return Ok(None);
    }
    let eta = s / 2;
    let relations = |b: &GroupElement| {
        g.scale(&BigInt::from(2 * eta), a1).is_zero() && g.element_order(&g.sub(a1, b)) == 2
    };
    if relations(a2) || (mode == Mode::Graph && relations(&g.neg(a2))) {
        Ok(Some(eta))
    } else {
        Ok(None)
    }
}

/// A product of circulants on `p` vertices, one factor per jump list.
#[derive(Debug, Clone)]
pub struct PrimeProduct {
    pub dimension: usize,
    pub instance: CirculantGraph,
}

/// The product `G(p; A_1) x .. x G(p; A_n)` over `diag(p, .., p)`, whose
/// dimension is the number of factors.
pub fn prime_product_dimension(p: u64, factors: &[Vec<i64>], mode: Mode) -> Result<PrimeProduct, DimensionError> {
    if p == 2 {
        return Err(DimensionError::EvenPrime);
    }
    if !is_prime(p) {
        return Err(DimensionError::NotPrime(p));
    }
    let n = factors.len();
    let cyclic = QuotientGroup::diagonal(&[p])?;
    for (i, a) in factors.iter().enumerate() {
        let raw: Vec<Vec<i64>> = a.iter().map(|&x| vec![x]).collect();
        let set = JumpSet::from_i64(&cyclic, &raw, mode).map_err(|e| match e {
            CirculantError::EmptyJumpSet | CirculantError::IdentityJump(_) => DimensionError::FactorNotConnected(i),
            other => other.into(),
        })?;
        if !cyclic.generates(set.generators())? {
            return Err(DimensionError::FactorNotConnected(i));
        }
    }
    let g = QuotientGroup::diagonal(&vec![p; n])?;
    let mut raw = Vec::new();
    for (i, a) in factors.iter().enumerate() {
        for &x in a {
            let mut v = vec![0; n];
            v[i] = x;
            raw.push(v);
        }
    }
    let jumps = JumpSet::from_i64(&g, &raw, mode)?;
    Ok(PrimeProduct {
        dimension: n,
        instance: CirculantGraph::build(g, jumps)?,
    })
}

/// `m / gcd(m, gcd(m M^{-1} a))`, written out for the rule checks.
pub fn order_by_formula(g: &QuotientGroup, a: &GroupElement) -> u64 {
    let m = BigInt::from(g.order());
    let y = g.scaled_inverse_apply(&a.to_big()).expect("same dimension");
    let gcd = y.iter().fold(m.clone(), |acc, x| acc.gcd(x));
    (m / gcd).to_u64().expect("divides the order")
}
