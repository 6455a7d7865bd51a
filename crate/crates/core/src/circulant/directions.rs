//! Recovering the factor directions of a cartesian product of circulants
//! from its adjacency alone.
//!
//! At a root vertex each factor copy is grown from shortest odd cycles, then
//! labels spread to the rest of the graph through the unique 4-cycle spanned
//! by two edges of different directions. The result is checked to really be
//! a product decomposition before it is returned.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::CirculantError;
use crate::graph::Graph;

/// Edge directions of a product graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectionPartition {
    pub n_directions: usize,
    /// `[u, v, direction]` for every edge (arc, for digraphs), sorted.
    pub edges: Vec<[usize; 3]>,
    /// `copies[i][u]`: vertices of the direction-`i` copy through `u`.
    pub copies: Vec<Vec<Vec<usize>>>,
}

impl DirectionPartition {
    pub fn direction_of(&self, u: usize, v: usize) -> Option<usize> {
        self.edges
            .binary_search_by(|e| (e[0], e[1]).cmp(&(u, v)))
            .ok()
            .map(|k| self.edges[k][2])
    }

    /// Same partition of the edges, up to renaming the directions.
    pub fn equivalent(&self, other: &DirectionPartition) -> bool {
        if self.n_directions != other.n_directions || self.edges.len() != other.edges.len() {
            return false;
        }
        let mut fwd = BTreeMap::new();
        let mut back = BTreeMap::new();
        for (a, b) in self.edges.iter().zip(&other.edges) {
            if (a[0], a[1]) != (b[0], b[1]) {
                return false;
            }
            if *fwd.entry(a[2]).or_insert(b[2]) != b[2] || *back.entry(b[2]).or_insert(a[2]) != a[2] {
                return false;
            }
        }
        true
    }

    /// Builds a partition from known labels of the support edges `(min, max)`.
    pub fn from_support_labels(graph: &Graph, labels: &BTreeMap<(usize, usize), usize>) -> Result<Self, CirculantError> {
        let n_directions = labels.values().max().map_or(0, |d| d + 1);
        let mut edges = Vec::new();
        for (u, v) in graph.edges() {
            let key = (u.min(v), u.max(v));
            let d = *labels
                .get(&key)
                .ok_or_else(|| not_product(format!("edge ({u}, {v}) has no direction")))?;
            edges.push([u, v, d]);
        }
        edges.sort_unstable();
        let n = graph.n_vertices();
        let copies = (0..n_directions)
            .map(|d| {
                let only_d: Vec<(usize, usize)> = labels
                    .iter()
                    .filter(|(_, &x)| x == d)
                    .map(|(&e, _)| e)
                    .collect();
                let sub = Graph::from_edges(n, false, &only_d).expect("edges of the support");
                let comps = sub.weak_components();
                let mut of = vec![Vec::new(); n];
                for c in comps {
                    for &v in &c {
                        of[v] = c.clone();
                    }
                }
                of
            })
            .collect();
        Ok(DirectionPartition {
            n_directions,
            edges,
            copies,
        })
    }
}

fn not_product(msg: impl Into<String>) -> CirculantError {
    CirculantError::NotAProductInstance(msg.into())
}

/// Shortest-odd-cycle procedure. `root` is the starting vertex (0 is fine for
/// vertex-transitive input).
pub fn detect_directions(graph: &Graph, root: usize) -> Result<DirectionPartition, CirculantError> {
    let copies = root_copies_by_cycles(graph, root)?;
    finish(graph, root, copies)
}

/// Variant for products of complete graphs: the copies through `root` are the
/// components of its neighbourhood, each joined with `root`.
pub fn detect_directions_by_neighbourhood(graph: &Graph, root: usize) -> Result<DirectionPartition, CirculantError> {
    check_root(graph, root)?;
    let support = graph.support();
    let nbrs: Vec<usize> = support.neighbors(root).to_vec();
    let local = support.induced(&nbrs);
    let copies = local
        .weak_components()
        .into_iter()
        .map(|c| {
            let mut set: BTreeSet<usize> = c.into_iter().map(|i| nbrs[i]).collect();
            set.insert(root);
            set
        })
        .collect();
    finish(graph, root, copies)
}

fn check_root(graph: &Graph, root: usize) -> Result<(), CirculantError> {
    if root >= graph.n_vertices() {
        return Err(not_product(format!("root {root} is not a vertex")));
    }
    Ok(())
}

/// Directed cycles for digraphs, cycles of the graph otherwise.
struct CycleSearch<'a> {
    graph: &'a Graph,
    found: &'a [BTreeSet<usize>],
}

impl CycleSearch<'_> {
    fn allowed(&self, x: usize, y: usize) -> bool {
        !self.found.iter().any(|c| c.contains(&x) && c.contains(&y))
    }

    /// Simple paths `from -> .. -> to` with exactly `len` allowed edges.
    /// `visit` sees each one and stops the search by returning true.
    fn paths(&self, from: usize, to: usize, len: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
        let mut path = vec![from];
        let mut on_path = vec![false; self.graph.n_vertices()];
        on_path[from] = true;
        self.extend(to, len, &mut path, &mut on_path, visit);
    }

    fn extend(
        &self,
        to: usize,
        len: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let x = *path.last().unwrap();
        if path.len() - 1 == len {
            return x == to && visit(path);
        }
        for &y in self.graph.neighbors(x) {
            if !self.allowed(x, y) {
                continue;
            }
            let last_step = path.len() == len;
            if y == to && !last_step {
                continue;
            }
            if on_path[y] && !(y == to && last_step) {
                continue;
            }
            let was = std::mem::replace(&mut on_path[y], true);
            path.push(y);
            let stop = self.extend(to, len, path, on_path, visit);
            path.pop();
            on_path[y] = was;
            if stop {
                return true;
            }
        }
        false
    }

    /// Lexicographically first shortest odd cycle through `root`, as the
    /// vertex sequence starting at `root`.
    fn shortest_odd_cycle(&self, root: usize) -> Option<Vec<usize>> {
        let n = self.graph.n_vertices();
        let mut len = 3;
        while len <= n {
            let mut best = None;
            // a cycle through root is a path root -> .. -> root
            self.paths(root, root, len, &mut |p| {
                best = Some(p[..p.len() - 1].to_vec());
                true
            });
            if best.is_some() {
                return best;
            }
            len += 2;
        }
        None
    }

    /// Vertices of all cycles of length `len` through the edge `x -> y`.
    fn cycles_through(&self, x: usize, y: usize, len: usize, out: &mut Vec<Vec<usize>>) {
        self.paths(y, x, len - 1, &mut |p| {
            out.push(p.to_vec());
            false
        });
    }
}

fn root_copies_by_cycles(graph: &Graph, root: usize) -> Result<Vec<BTreeSet<usize>>, CirculantError> {
    check_root(graph, root)?;
    let support = graph.support();
    let mut copies: Vec<BTreeSet<usize>> = Vec::new();
    loop {
        let covered = |v: usize, copies: &[BTreeSet<usize>]| copies.iter().any(|c| c.contains(&v));
        if support.neighbors(root).iter().all(|&v| covered(v, &copies)) {
            break;
        }
        let search = CycleSearch {
            graph,
            found: &copies,
        };
        let cycle = search
            .shortest_odd_cycle(root)
            .ok_or_else(|| not_product(format!("no odd cycle through vertex {root} outside known directions")))?;
        let len = cycle.len();
        let mut copy: BTreeSet<usize> = cycle.iter().copied().collect();
        let mut queue: VecDeque<(usize, usize)> = (0..len).map(|k| (cycle[k], cycle[(k + 1) % len])).collect();
        let mut seen_edges: BTreeSet<(usize, usize)> = queue.iter().copied().collect();
        while let Some((x, y)) = queue.pop_front() {
            let mut cycles = Vec::new();
            search.cycles_through(x, y, len, &mut cycles);
            for c in cycles {
                // c runs y -> .. -> x; the closing edge is x -> y
                for w in c.windows(2) {
                    let e = (w[0], w[1]);
                    copy.insert(w[0]);
                    copy.insert(w[1]);
                    if seen_edges.insert(e) {
                        queue.push_back(e);
                    }
                }
            }
        }
        if copy.iter().any(|&v| v != root && covered(v, &copies)) {
            return Err(not_product("factor copies through the root overlap"));
        }
        copies.push(copy);
    }
    Ok(copies)
}

/// Spreads labels from the root copies over the whole graph and validates.
fn finish(graph: &Graph, root: usize, copies: Vec<BTreeSet<usize>>) -> Result<DirectionPartition, CirculantError> {
    let support = graph.support();
    let n = graph.n_vertices();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut labels: BTreeMap<(usize, usize), usize> = BTreeMap::new();

    for &v in support.neighbors(root) {
        let d = copies
            .iter()
            .position(|c| c.contains(&v))
            .ok_or_else(|| not_product(format!("edge ({root}, {v}) lies in no factor copy")))?;
        labels.insert(key(root, v), d);
    }

    let mut done = vec![false; n];
    done[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        let at_x: Vec<(usize, usize)> = support.neighbors(x).iter().map(|&y| (y, labels[&key(x, y)])).collect();
        for &(y, i) in &at_x {
            if done[y] {
                continue;
            }
            for &(z, j) in &at_x {
                if j == i {
                    continue;
                }
                let common: Vec<usize> = support
                    .neighbors(y)
                    .iter()
                    .copied()
                    .filter(|&w| w != x && support.has_edge(z, w))
                    .collect();
                let [w] = common[..] else {
                    return Err(not_product(format!(
                        "edges ({x}, {y}) and ({x}, {z}) do not span a unique square"
                    )));
                };
                for (e, d) in [(key(y, w), j), (key(z, w), i)] {
                    if *labels.entry(e).or_insert(d) != d {
                        return Err(not_product(format!("conflicting directions on edge {e:?}")));
                    }
                }
            }
            for &w in support.neighbors(y) {
                labels.entry(key(y, w)).or_insert(i);
            }
            done[y] = true;
            queue.push_back(y);
        }
    }
    if done.iter().any(|d| !d) {
        return Err(not_product("graph is not connected"));
    }

    validate_product(&support, &labels, copies.len())?;
    DirectionPartition::from_support_labels(graph, &labels)
}

/// Checks that the labelled edges give a product structure: deleting the
/// edges of one direction leaves the layers of that coordinate, the layer ids
/// give a bijection onto the coordinate box, and every edge changes exactly
/// its own coordinate.
fn validate_product(
    support: &Graph,
    labels: &BTreeMap<(usize, usize), usize>,
    n_directions: usize,
) -> Result<(), CirculantError> {
    let n = support.n_vertices();
    let mut coords = vec![Vec::with_capacity(n_directions); n];
    let mut box_size = 1usize;
    for d in 0..n_directions {
        let others: Vec<(usize, usize)> = labels.iter().filter(|(_, &x)| x != d).map(|(&e, _)| e).collect();
        let layers = Graph::from_edges(n, false, &others).expect("support edges").weak_components();
        let sizes: BTreeSet<usize> = layers.iter().map(Vec::len).collect();
        if sizes.len() != 1 {
            return Err(not_product(format!("layers of direction {d} differ in size")));
        }
        for (id, layer) in layers.iter().enumerate() {
            for &v in layer {
                coords[v].push(id);
            }
        }
        box_size = box_size.saturating_mul(layers.len());
    }
    if box_size != n {
        return Err(not_product("layer counts do not multiply to the vertex count"));
    }
    let distinct: BTreeSet<&Vec<usize>> = coords.iter().collect();
    if distinct.len() != n {
        return Err(not_product("layer coordinates do not separate vertices"));
    }
    for (&(u, v), &d) in labels {
        let diff: Vec<usize> = (0..n_directions).filter(|&k| coords[u][k] != coords[v][k]).collect();
        if diff != [d] {
            return Err(not_product(format!("edge ({u}, {v}) does not change exactly its own coordinate")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(factors: &[Graph]) -> Graph {
        factors[1..]
            .iter()
            .fold(factors[0].clone(), |acc, f| acc.cartesian_product(f).unwrap())
    }

    /// Direction of each edge from the mixed-radix vertex numbering of the
    /// product: the single digit in which the endpoints differ.
    fn ground_truth(graph: &Graph, sizes: &[usize]) -> DirectionPartition {
        let digits = |mut v: usize| {
            let mut d = vec![0; sizes.len()];
            for k in (0..sizes.len()).rev() {
                d[k] = v % sizes[k];
                v /= sizes[k];
            }
            d
        };
        let mut labels = BTreeMap::new();
        for (u, v) in graph.support().edges() {
            let (a, b) = (digits(u), digits(v));
            let k = (0..sizes.len()).find(|&k| a[k] != b[k]).unwrap();
            labels.insert((u, v), k);
        }
        DirectionPartition::from_support_labels(graph, &labels).unwrap()
    }

    #[test]
    fn triangles_squared() {
        let g = product(&[Graph::cycle(3, false), Graph::cycle(3, false)]);
        let p = detect_directions(&g, 0).unwrap();
        assert_eq!(p.n_directions, 2);
        assert!(p.equivalent(&ground_truth(&g, &[3, 3])));
        for d in 0..2 {
            assert!(p.copies[d].iter().all(|c| c.len() == 3));
        }
    }

    #[test]
    fn complete_graphs_by_neighbourhood() {
        let g = product(&[Graph::complete(3), Graph::complete(3)]);
        let p = detect_directions_by_neighbourhood(&g, 4).unwrap();
        assert!(p.equivalent(&ground_truth(&g, &[3, 3])));
        let g = product(&[Graph::complete(5), Graph::complete(5)]);
        let p = detect_directions_by_neighbourhood(&g, 0).unwrap();
        assert!(p.equivalent(&ground_truth(&g, &[5, 5])));
        // neighbourhood of a 5-cycle vertex is two isolated vertices: wrong split
        let g = product(&[Graph::cycle(5, false), Graph::cycle(5, false)]);
        assert!(matches!(
            detect_directions_by_neighbourhood(&g, 0),
            Err(CirculantError::NotAProductInstance(_))
        ));
    }

    #[test]
    fn five_cycles_cubed() {
        let c5 = Graph::cycle(5, false);
        let g = product(&[c5.clone(), c5.clone(), c5]);
        let p = detect_directions(&g, 0).unwrap();
        assert_eq!(p.n_directions, 3);
        assert!(p.equivalent(&ground_truth(&g, &[5, 5, 5])));
    }

    #[test]
    fn directed_cycles() {
        let d3 = Graph::cycle(3, true);
        let g = product(&[d3.clone(), d3]);
        let p = detect_directions(&g, 0).unwrap();
        assert!(p.equivalent(&ground_truth(&g, &[3, 3])));
        let d5 = Graph::cycle(5, true);
        let g = product(&[d5.clone(), d5]);
        let p = detect_directions(&g, 7).unwrap();
        assert!(p.equivalent(&ground_truth(&g, &[5, 5])));
    }

    #[test]
    fn single_factor() {
        let g = Graph::cycle(7, false);
        let p = detect_directions(&g, 0).unwrap();
        assert_eq!(p.n_directions, 1);
        assert_eq!(p.copies[0][3], (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn rejects_non_products() {
        // bipartite: no odd cycles at all
        assert!(matches!(
            detect_directions(&Graph::hypercube(3), 0),
            Err(CirculantError::NotAProductInstance(_))
        ));
        // two triangles sharing a vertex: two directions at the centre but no squares
        let g = Graph::from_edges(5, false, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap();
        assert!(matches!(
            detect_directions(&g, 0),
            Err(CirculantError::NotAProductInstance(_))
        ));
        assert!(detect_directions(&g, 9).is_err());
    }
}
