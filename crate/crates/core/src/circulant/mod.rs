//! Multidimensional circulants `G(M; A)`: the Cayley (di)graph of
//! `Z^n / M Z^n` where every vertex `u` points to `u + a` for each jump `a`.

mod directions;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

pub use directions::{detect_directions, detect_directions_by_neighbourhood, DirectionPartition};

use crate::graph::{Graph, GraphError};
use crate::intmat::{IntMatrix, MatrixError};
use crate::quotient::{GroupElement, QuotientError, QuotientGroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CirculantError {
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("jump {0} is the identity element")]
    IdentityJump(String),
    #[error("jump has length {found}, group dimension is {expected}")]
    JumpNotInGroup { expected: usize, found: usize },
    #[error("jump set is empty")]
    EmptyJumpSet,
    #[error("jump set is not closed under negation: missing -({0})")]
    NotSymmetric(String),
    #[error("cannot combine a digraph with a graph")]
    MixedDirectedness,
    #[error("the circulant is already connected")]
    AlreadyConnected,
    #[error("not a product of prime-order circulants: {0}")]
    NotAProductInstance(String),
}

impl From<MatrixError> for CirculantError {
    fn from(e: MatrixError) -> Self {
        CirculantError::Quotient(e.into())
    }
}

/// Digraph `G(M; A)` or graph `G(M; ±A)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Digraph,
    Graph,
}

impl Mode {
    pub fn is_symmetric(self) -> bool {
        self == Mode::Graph
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Digraph => "digraph",
            Mode::Graph => "graph",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "digraph" => Ok(Mode::Digraph),
            "graph" => Ok(Mode::Graph),
            other => Err(format!("unknown mode '{other}', expected digraph or graph")),
        }
    }
}

/// A jump set in canonical form.
///
/// `generators` keeps the distinct jumps in input order; `jumps` is the sorted
/// connection set, closed under negation in graph mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpSet {
    generators: Vec<GroupElement>,
    jumps: Vec<GroupElement>,
    mode: Mode,
}

impl JumpSet {
    /// In graph mode the set is closed under negation.
    pub fn new(g: &QuotientGroup, raw: &[Vec<BigInt>], mode: Mode) -> Result<Self, CirculantError> {
        Self::build(g, raw, mode, false)
    }

    /// Like [`JumpSet::new`] but rejects a graph-mode set that is not already
    /// closed under negation.
    pub fn strict(g: &QuotientGroup, raw: &[Vec<BigInt>], mode: Mode) -> Result<Self, CirculantError> {
        Self::build(g, raw, mode, true)
    }

    pub fn from_i64(g: &QuotientGroup, raw: &[Vec<i64>], mode: Mode) -> Result<Self, CirculantError> {
        let big: Vec<Vec<BigInt>> = raw.iter().map(|v| crate::intmat::big_vec(v)).collect();
        Self::new(g, &big, mode)
    }

    pub fn from_elements(g: &QuotientGroup, elements: &[GroupElement], mode: Mode) -> Result<Self, CirculantError> {
        let big: Vec<Vec<BigInt>> = elements.iter().map(GroupElement::to_big).collect();
        Self::new(g, &big, mode)
    }

    fn build(g: &QuotientGroup, raw: &[Vec<BigInt>], mode: Mode, strict: bool) -> Result<Self, CirculantError> {
        if raw.is_empty() {
            return Err(CirculantError::EmptyJumpSet);
        }
        let mut generators = Vec::new();
        for v in raw {
            if v.len() != g.dim() {
                return Err(CirculantError::JumpNotInGroup {
                    expected: g.dim(),
                    found: v.len(),
                });
            }
            let e = g.canonicalize(v)?;
            if e.is_zero() {
                let text: Vec<String> = v.iter().map(BigInt::to_string).collect();
                return Err(CirculantError::IdentityJump(text.join(",")));
            }
            if !generators.contains(&e) {
                generators.push(e);
            }
        }
        let mut set: BTreeSet<GroupElement> = generators.iter().cloned().collect();
        if mode.is_symmetric() {
            for e in &generators {
                let neg = g.neg(e);
                if strict && !set.contains(&neg) {
                    return Err(CirculantError::NotSymmetric(e.to_string()));
                }
                set.insert(neg);
            }
        }
        Ok(JumpSet {
            generators,
            jumps: set.into_iter().collect(),
            mode,
        })
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn jumps(&self) -> &[GroupElement] {
        &self.jumps
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.jumps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jumps.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct CirculantGraph {
    group: QuotientGroup,
    jumps: JumpSet,
    vertices: Vec<GroupElement>,
    graph: Graph,
}

/// Component structure: `alpha` from the subgroup index, `sets` from search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Components {
    pub alpha: u64,
    pub sets: Vec<Vec<usize>>,
}

/// Presentation of a disconnected circulant as `G(alpha M'; alpha A')`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub alpha: u64,
    /// `M'` and `A'` of one connected component.
    pub component_matrix: Vec<Vec<i64>>,
    pub component_jumps: Vec<Vec<i64>>,
    /// First row of `M'` and first coordinate of every jump scaled by `alpha`.
    pub matrix: Vec<Vec<i64>>,
    pub jumps: Vec<Vec<i64>>,
}

/// Presentation over the Smith group `Z/s_1 x .. x Z/s_r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdamForm {
    pub factors: Vec<u64>,
    pub jumps: Vec<Vec<i64>>,
    pub mode: Mode,
}

impl AdamForm {
    pub fn to_circulant(&self) -> Result<CirculantGraph, CirculantError> {
        let g = QuotientGroup::diagonal(&self.factors)?;
        let jumps = JumpSet::from_i64(&g, &self.jumps, self.mode)?;
        CirculantGraph::build(g, jumps)
    }
}

impl CirculantGraph {
    pub fn build(group: QuotientGroup, jumps: JumpSet) -> Result<Self, CirculantError> {
        if let Some(j) = jumps.jumps.first() {
            if j.coords().len() != group.dim() {
                return Err(CirculantError::JumpNotInGroup {
                    expected: group.dim(),
                    found: j.coords().len(),
                });
            }
        }
        let vertices = group.elements();
        let adj = vertices
            .iter()
            .map(|u| jumps.jumps.iter().map(|a| group.index_of(&group.add(u, a))).collect())
            .collect();
        let graph = Graph::from_adjacency(!jumps.mode.is_symmetric(), adj)?;
        Ok(CirculantGraph {
            group,
            jumps,
            vertices,
            graph,
        })
    }

    /// Convenience constructor from raw matrix and jump vectors.
    pub fn from_parts(m: &IntMatrix, jumps: &[Vec<i64>], mode: Mode) -> Result<Self, CirculantError> {
        let g = QuotientGroup::new(m)?;
        let a = JumpSet::from_i64(&g, jumps, mode)?;
        Self::build(g, a)
    }

    pub fn group(&self) -> &QuotientGroup {
        &self.group
    }

    pub fn jump_set(&self) -> &JumpSet {
        &self.jumps
    }

    pub fn mode(&self) -> Mode {
        self.jumps.mode
    }

    pub fn vertices(&self) -> &[GroupElement] {
        &self.vertices
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_labels(&self) -> Vec<String> {
        self.vertices.iter().map(GroupElement::to_string).collect()
    }

    /// The permutation `u -> u + t` of vertex indices.
    pub fn translation(&self, t: &GroupElement) -> Vec<usize> {
        self.vertices
            .iter()
            .map(|u| self.group.index_of(&self.group.add(u, t)))
            .collect()
    }

    /// Product over `diag(M1, M2)` with jumps `(a, 0)` and `(0, b)`.
    pub fn cartesian_product(&self, other: &CirculantGraph) -> Result<CirculantGraph, CirculantError> {
        if self.mode() != other.mode() {
            return Err(CirculantError::MixedDirectedness);
        }
        let m = self.group.matrix().block_diag(other.group.matrix());
        let g = QuotientGroup::new(&m)?;
        let (n1, n2) = (self.group.dim(), other.group.dim());
        let mut raw = Vec::new();
        for a in self.jumps.generators() {
            let mut v = a.coords().to_vec();
            v.resize(n1 + n2, 0);
            raw.push(v);
        }
        for b in other.jumps.generators() {
            let mut v = vec![0; n1];
            v.extend_from_slice(b.coords());
            raw.push(v);
        }
        let jumps = JumpSet::from_i64(&g, &raw, self.mode())?;
        Self::build(g, jumps)
    }

    pub fn components(&self) -> Result<Components, CirculantError> {
        let alpha = self.group.subgroup_index(self.jumps.generators())?;
        Ok(Components {
            alpha,
            sets: self.graph.weak_components(),
        })
    }

    /// Rewrites a disconnected circulant as `G(alpha M'; alpha A')`, where
    /// `G(M'; A')` is the Smith-form presentation of one component.
    pub fn reduce_disconnected(&self) -> Result<Reduction, CirculantError> {
        let gens = self.jumps.jumps();
        let alpha = self.group.subgroup_index(gens)?;
        if alpha == 1 {
            return Err(CirculantError::AlreadyConnected);
        }
        let h = self.group.presentation_from_generators(gens)?;
        let sub = QuotientGroup::new(&h)?;
        let d = gens.len();
        let unit_jumps: Vec<GroupElement> = (0..d)
            .map(|j| {
                let mut e = vec![0; d];
                e[j] = 1;
                sub.canonicalize_i64(&e)
            })
            .collect::<Result<_, _>>()?;
        let factors = sub.snf_factors().to_vec();
        let k = factors.len();
        let component_jumps: Vec<Vec<i64>> = unit_jumps.iter().map(|e| sub.to_snf_coords(e)).collect();
        let component_matrix: Vec<Vec<i64>> = (0..k)
            .map(|i| (0..k).map(|j| if i == j { factors[i] as i64 } else { 0 }).collect())
            .collect();

        let a = alpha as i64;
        let mut matrix = component_matrix.clone();
        for x in &mut matrix[0] {
            *x *= a;
        }
        let jumps = component_jumps
            .iter()
            .map(|v| {
                let mut v = v.clone();
                v[0] *= a;
                v
            })
            .collect();
        Ok(Reduction {
            alpha,
            component_matrix,
            component_jumps,
            matrix,
            jumps,
        })
    }

    /// `(S', phi(A))` with `phi(a) = U' a mod S'`; jumps sorted.
    pub fn adam_canonical(&self) -> AdamForm {
        let mut jumps: Vec<Vec<i64>> = self
            .jumps
            .jumps()
            .iter()
            .map(|a| self.group.to_snf_coords(a))
            .collect();
        jumps.sort();
        jumps.dedup();
        AdamForm {
            factors: self.group.snf_factors().to_vec(),
            jumps,
            mode: self.mode(),
        }
    }
}

impl Reduction {
    pub fn to_circulant(&self, mode: Mode) -> Result<CirculantGraph, CirculantError> {
        CirculantGraph::from_parts(&IntMatrix::from_rows(&self.matrix)?, &self.jumps, mode)
    }
}

/// Whether some group isomorphism carries the jump set of `a` onto that of `b`.
///
/// Both sides are moved to Smith coordinates; the automorphisms of that group
/// are then enumerated and each is tested on the jump set.
pub fn adam_isomorphic(a: &CirculantGraph, b: &CirculantGraph) -> Result<bool, CirculantError> {
    if a.mode() != b.mode() || a.group.snf_factors() != b.group.snf_factors() {
        return Ok(false);
    }
    let fa = a.adam_canonical();
    let fb = b.adam_canonical();
    if fa.jumps.len() != fb.jumps.len() {
        return Ok(false);
    }
    if fa.jumps == fb.jumps {
        return Ok(true);
    }
    let d = QuotientGroup::diagonal(&fa.factors)?;
    let index = |v: &Vec<i64>| -> Result<usize, CirculantError> { Ok(d.index_of(&d.canonicalize_i64(v)?)) };
    let source: Vec<usize> = fa.jumps.iter().map(index).collect::<Result<_, _>>()?;
    let target: BTreeSet<usize> = fb.jumps.iter().map(index).collect::<Result<_, _>>()?;
    Ok(d
        .automorphisms()
        .iter()
        .any(|p| source.iter().all(|&s| target.contains(&p[s]))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(f: &[u64]) -> IntMatrix {
        IntMatrix::diag(f)
    }

    #[test]
    fn jump_set_rules() {
        let g = QuotientGroup::diagonal(&[6]).unwrap();
        let j = JumpSet::from_i64(&g, &[vec![1], vec![7], vec![2]], Mode::Graph).unwrap();
        assert_eq!(j.generators().len(), 2);
        let coords: Vec<i64> = j.jumps().iter().map(|e| e.coords()[0]).collect();
        assert_eq!(coords, vec![1, 2, 4, 5]);
        assert!(matches!(
            JumpSet::from_i64(&g, &[vec![6]], Mode::Digraph),
            Err(CirculantError::IdentityJump(_))
        ));
        assert!(matches!(
            JumpSet::from_i64(&g, &[vec![1, 0]], Mode::Digraph),
            Err(CirculantError::JumpNotInGroup { expected: 1, found: 2 })
        ));
        let raw = vec![crate::intmat::big_vec(&[1])];
        assert!(matches!(
            JumpSet::strict(&g, &raw, Mode::Graph),
            Err(CirculantError::NotSymmetric(_))
        ));
        let raw = vec![crate::intmat::big_vec(&[1]), crate::intmat::big_vec(&[-1])];
        assert!(JumpSet::strict(&g, &raw, Mode::Graph).is_ok());
        assert!(matches!(
            JumpSet::from_i64(&g, &[], Mode::Graph),
            Err(CirculantError::EmptyJumpSet)
        ));
    }

    #[test]
    fn build_examples() {
        let c5 = CirculantGraph::from_parts(&diag(&[5]), &[vec![1]], Mode::Digraph).unwrap();
        assert_eq!(c5.graph(), &Graph::cycle(5, true));

        let c4 = CirculantGraph::from_parts(&diag(&[2, 2]), &[vec![1, 0], vec![0, 1]], Mode::Graph).unwrap();
        assert_eq!(c4.graph().edge_count(), 4);
        assert!((0..4).all(|v| c4.graph().out_degree(v) == 2));

        let ex = CirculantGraph::from_parts(&diag(&[2, 6]), &[vec![0, 3], vec![1, 0], vec![0, 4]], Mode::Digraph)
            .unwrap();
        assert_eq!(ex.graph().n_vertices(), 12);
        assert!((0..12).all(|v| ex.graph().out_degree(v) == 3));
        assert_eq!(ex.components().unwrap().alpha, 1);
        assert_eq!(ex.graph().weak_components().len(), 1);
    }

    #[test]
    fn translations_are_automorphisms() {
        let m = IntMatrix::parse("3,1;1,4").unwrap();
        let c = CirculantGraph::from_parts(&m, &[vec![1, 0], vec![1, 2]], Mode::Digraph).unwrap();
        for t in c.vertices() {
            assert!(c.graph().is_automorphism(&c.translation(t)));
        }
    }

    #[test]
    fn products() {
        let k2 = CirculantGraph::from_parts(&diag(&[2]), &[vec![1]], Mode::Graph).unwrap();
        let q2 = k2.cartesian_product(&k2).unwrap();
        assert_eq!(q2.graph().edge_count(), 4);
        assert_eq!(q2.graph(), &k2.graph().cartesian_product(k2.graph()).unwrap());

        let c3 = CirculantGraph::from_parts(&diag(&[3]), &[vec![1]], Mode::Graph).unwrap();
        let p = c3.cartesian_product(&c3).unwrap();
        assert_eq!(p.graph().n_vertices(), 9);
        assert!((0..9).all(|v| p.graph().out_degree(v) == 4));

        let d3 = CirculantGraph::from_parts(&diag(&[3]), &[vec![1]], Mode::Digraph).unwrap();
        assert!(matches!(c3.cartesian_product(&d3), Err(CirculantError::MixedDirectedness)));
    }

    #[test]
    fn components_examples() {
        let c = CirculantGraph::from_parts(&diag(&[6]), &[vec![2]], Mode::Digraph).unwrap();
        let comps = c.components().unwrap();
        assert_eq!(comps.alpha, 2);
        assert_eq!(comps.sets, vec![vec![0, 2, 4], vec![1, 3, 5]]);

        let c = CirculantGraph::from_parts(&diag(&[2, 6]), &[vec![0, 2]], Mode::Digraph).unwrap();
        let comps = c.components().unwrap();
        assert_eq!(comps.alpha, 4);
        assert_eq!(comps.sets.len(), 4);
    }

    #[test]
    fn reduction_examples() {
        let c = CirculantGraph::from_parts(&diag(&[6]), &[vec![2]], Mode::Digraph).unwrap();
        let r = c.reduce_disconnected().unwrap();
        assert_eq!(r.alpha, 2);
        assert_eq!(r.component_matrix, vec![vec![3]]);
        assert_eq!(r.matrix, vec![vec![6]]);
        assert_eq!(r.jumps, vec![vec![2]]);

        let c = CirculantGraph::from_parts(&diag(&[2, 6]), &[vec![0, 2]], Mode::Digraph).unwrap();
        let r = c.reduce_disconnected().unwrap();
        assert_eq!(r.alpha, 4);
        assert_eq!(r.component_matrix, vec![vec![3]]);
        assert_eq!(r.matrix, vec![vec![12]]);
        let rebuilt = r.to_circulant(Mode::Digraph).unwrap();
        assert_eq!(rebuilt.graph().n_vertices(), 12);
        assert_eq!(rebuilt.components().unwrap().alpha, 4);

        let ex = CirculantGraph::from_parts(&diag(&[5]), &[vec![1]], Mode::Digraph).unwrap();
        assert!(matches!(ex.reduce_disconnected(), Err(CirculantError::AlreadyConnected)));
    }

    #[test]
    fn adam_canonical_examples() {
        let c = CirculantGraph::from_parts(&diag(&[2, 6]), &[vec![0, 3], vec![1, 0], vec![0, 4]], Mode::Digraph)
            .unwrap();
        let f = c.adam_canonical();
        assert_eq!(f.factors, vec![2, 6]);
        assert_eq!(f.jumps.len(), 3);
        // canonical form of a canonical form is itself
        let again = f.to_circulant().unwrap().adam_canonical();
        assert_eq!(again.factors, f.factors);
        assert_eq!(again.jumps.len(), 3);
        assert!(adam_isomorphic(&c, &f.to_circulant().unwrap()).unwrap());
    }

    #[test]
    fn adam_isomorphism_examples() {
        // multiplying by a unit of Z/7
        let a = CirculantGraph::from_parts(&diag(&[7]), &[vec![1], vec![2]], Mode::Digraph).unwrap();
        let b = CirculantGraph::from_parts(&diag(&[7]), &[vec![3], vec![6]], Mode::Digraph).unwrap();
        assert!(adam_isomorphic(&a, &b).unwrap());
        assert!(adam_isomorphic(&a, &a).unwrap());
        let c = CirculantGraph::from_parts(&diag(&[7]), &[vec![1], vec![3]], Mode::Digraph).unwrap();
        assert!(!adam_isomorphic(&a, &c).unwrap());
        // different groups of order 4
        let x = CirculantGraph::from_parts(&diag(&[2, 2]), &[vec![1, 0], vec![1, 1]], Mode::Digraph).unwrap();
        let y = CirculantGraph::from_parts(&diag(&[4]), &[vec![1], vec![3]], Mode::Digraph).unwrap();
        assert!(!adam_isomorphic(&x, &y).unwrap());
        // modes must agree
        let g = CirculantGraph::from_parts(&diag(&[7]), &[vec![1], vec![2]], Mode::Graph).unwrap();
        assert!(!adam_isomorphic(&a, &g).unwrap());
    }
}
