//! Brute-force verifiers used to check the closed-form results on small
//! instances. Everything here is exponential in the worst case and guarded by
//! explicit size limits.

mod search;

use std::collections::HashSet;

use itertools::Itertools;
use serde::Serialize;

use crate::circulant::CirculantError;
use crate::graph::Graph;
use crate::quotient::{GroupElement, QuotientError, QuotientGroup};
use search::{full_cycle_automorphism, histogram, isomorphisms, refine, Dense};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{vertices} vertices exceed the oracle limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("no abelian Cayley realization found; the input is not vertex-transitive in the required way")]
    NotVertexTransitive,
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Circulant(#[from] CirculantError),
}

/// Size caps for the searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Automorphism, isomorphism and cyclic-subgroup searches.
    pub max_vertices: usize,
    /// Exhaustive dimension search.
    pub dimension_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_vertices: 32,
            dimension_vertices: 16,
        }
    }
}

impl Limits {
    /// The same cap for every search.
    pub fn uniform(cap: usize) -> Self {
        Limits {
            max_vertices: cap,
            dimension_vertices: cap,
        }
    }

    fn check(&self, n: usize, limit: usize) -> Result<(), OracleError> {
        if n > limit {
            Err(OracleError::TooLarge { vertices: n, limit })
        } else {
            Ok(())
        }
    }
}

/// Automorphisms of a graph, either all of them or the first `cap` found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermutationGroupSample {
    pub degree: usize,
    pub permutations: Vec<Vec<usize>>,
    /// Group order, when every automorphism was enumerated.
    pub order: Option<u64>,
}

impl PermutationGroupSample {
    fn insert(&mut self, graph: &Graph, perm: &[usize]) {
        assert!(graph.is_automorphism(perm), "search produced a non-automorphism");
        self.permutations.push(perm.to_vec());
    }
}

pub fn automorphisms(graph: &Graph, cap: usize, limits: &Limits) -> Result<PermutationGroupSample, OracleError> {
    limits.check(graph.n_vertices(), limits.max_vertices)?;
    let dense = Dense::new(graph);
    let colours = refine(&[&dense]).remove(0);
    let mut sample = PermutationGroupSample {
        degree: graph.n_vertices(),
        permutations: Vec::new(),
        order: None,
    };
    let mut truncated = false;
    isomorphisms(&dense, &dense, &colours, &colours, &mut |f| {
        if sample.permutations.len() == cap {
            truncated = true;
            return true;
        }
        sample.insert(graph, f);
        false
    });
    if !truncated {
        sample.order = Some(sample.permutations.len() as u64);
    }
    Ok(sample)
}

/// Whether some automorphism is a single cycle through every vertex, which is
/// the same as the automorphism group having a regular cyclic subgroup.
pub fn has_regular_cyclic_subgroup(graph: &Graph, limits: &Limits) -> Result<bool, OracleError> {
    Ok(full_cycle_witness(graph, limits)?.is_some())
}

/// The full-cycle automorphism found by [`has_regular_cyclic_subgroup`].
pub fn full_cycle_witness(graph: &Graph, limits: &Limits) -> Result<Option<Vec<usize>>, OracleError> {
    limits.check(graph.n_vertices(), limits.max_vertices)?;
    let witness = full_cycle_automorphism(&Dense::new(graph));
    if let Some(p) = &witness {
        assert!(graph.is_automorphism(p), "search produced a non-automorphism");
    }
    Ok(witness)
}

pub fn graphs_isomorphic(a: &Graph, b: &Graph, limits: &Limits) -> Result<bool, OracleError> {
    limits.check(a.n_vertices().max(b.n_vertices()), limits.max_vertices)?;
    Ok(find_isomorphism(a, b).is_some())
}

/// An isomorphism `a -> b` as `f[v]`, if one exists.
pub fn isomorphism(a: &Graph, b: &Graph, limits: &Limits) -> Result<Option<Vec<usize>>, OracleError> {
    limits.check(a.n_vertices().max(b.n_vertices()), limits.max_vertices)?;
    Ok(find_isomorphism(a, b))
}

pub(crate) fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    if a.n_vertices() != b.n_vertices() || a.is_directed() != b.is_directed() || a.edge_count() != b.edge_count() {
        return None;
    }
    let (da, db) = (Dense::new(a), Dense::new(b));
    let mut colours = refine(&[&da, &db]);
    let cb = colours.pop().unwrap();
    let ca = colours.pop().unwrap();
    if histogram(&ca) != histogram(&cb) {
        return None;
    }
    let mut found = None;
    isomorphisms(&da, &db, &ca, &cb, &mut |f| {
        found = Some(f.to_vec());
        true
    });
    found
}

/// Order by repeated addition.
pub fn element_order_bruteforce(g: &QuotientGroup, a: &GroupElement) -> u64 {
    let mut x = a.clone();
    let mut t = 1;
    while !x.is_zero() {
        x = g.add(&x, a);
        t += 1;
    }
    t
}

/// Chains `s_1 | s_2 | .. | s_k` with `s_1 > 1` and product `m`.
pub fn invariant_factor_chains(m: u64, k: usize) -> Vec<Vec<u64>> {
    fn go(rest: u64, k: usize, prev: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if k == 1 {
            if rest > 1 && rest.is_multiple_of(prev) {
                acc.push(rest);
                out.push(acc.clone());
                acc.pop();
            }
            return;
        }
        let mut s = prev;
        while s.checked_pow(k as u32).is_some_and(|p| p <= rest) {
            if s > 1 && rest.is_multiple_of(s) {
                acc.push(s);
                go(rest / s, k - 1, s, acc, out);
                acc.pop();
            }
            s += prev;
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if m == 1 {
            out.push(Vec::new());
        }
    } else {
        go(m, k, 1, &mut Vec::new(), &mut out);
    }
    out
}

/// Outcome of the exhaustive dimension search with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BruteForceDimension {
    pub dimension: usize,
    /// Invariant factors of the realizing group.
    pub factors: Vec<u64>,
    /// Jump set realizing the graph, in coordinates of `diag(factors)`.
    pub jumps: Vec<Vec<i64>>,
}

/// Smallest rank of an abelian group having a Cayley (di)graph isomorphic to
/// `graph`.
///
/// Groups are taken by invariant-factor chain; connection sets of the right
/// size are tried once per orbit of the group's automorphisms.
pub fn dimension_bruteforce(graph: &Graph, limits: &Limits) -> Result<BruteForceDimension, OracleError> {
    let m = graph.n_vertices();
    limits.check(m, limits.dimension_vertices.min(64))?;
    if m == 1 {
        return Ok(BruteForceDimension {
            dimension: 0,
            factors: Vec::new(),
            jumps: Vec::new(),
        });
    }
    let degree = graph.out_degree(0);
    if (0..m).any(|v| graph.out_degree(v) != degree) {
        return Err(OracleError::NotVertexTransitive);
    }
    let symmetric = !graph.is_directed();
    let max_rank = (m as f64).log2().floor() as usize;
    for k in 1..=max_rank {
        for chain in invariant_factor_chains(m as u64, k) {
            if let Some(jumps) = realize(graph, &chain, degree, symmetric)? {
                return Ok(BruteForceDimension {
                    dimension: k,
                    factors: chain,
                    jumps,
                });
            }
        }
    }
    Err(OracleError::NotVertexTransitive)
}

/// A connection set on `diag(chain)` giving a graph isomorphic to `graph`.
fn realize(graph: &Graph, chain: &[u64], degree: usize, symmetric: bool) -> Result<Option<Vec<Vec<i64>>>, OracleError> {
    let d = QuotientGroup::diagonal(chain)?;
    let elements = d.elements();
    let m = elements.len();
    let neg: Vec<usize> = elements.iter().map(|e| d.index_of(&d.neg(e))).collect();
    let auts = d.automorphisms();
    let sum: Vec<Vec<usize>> = elements
        .iter()
        .map(|u| elements.iter().map(|a| d.index_of(&d.add(u, a))).collect())
        .collect();

    let mut seen: HashSet<u64> = HashSet::new();
    for combo in (1..m).combinations(degree) {
        let mask = combo.iter().fold(0u64, |acc, &i| acc | 1 << i);
        if symmetric && combo.iter().any(|&i| mask & (1 << neg[i]) == 0) {
            continue;
        }
        if seen.contains(&mask) {
            continue;
        }
        for p in &auts {
            seen.insert(combo.iter().fold(0u64, |acc, &i| acc | 1 << p[i]));
        }
        let adj: Vec<Vec<usize>> = (0..m).map(|u| combo.iter().map(|&a| sum[u][a]).collect()).collect();
        let candidate = Graph::from_adjacency(!symmetric, adj).expect("Cayley graph adjacency");
        if find_isomorphism(graph, &candidate).is_some() {
            return Ok(Some(combo.iter().map(|&i| elements[i].coords().to_vec()).collect()));
        }
    }
    Ok(None)
}
