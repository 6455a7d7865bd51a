//! Dense adjacency, colour refinement and backtracking over vertex maps.

use std::collections::{BTreeMap, VecDeque};

use crate::graph::Graph;

const UNREACHABLE: u32 = u32::MAX;

pub(crate) struct Dense {
    pub n: usize,
    pub arc: Vec<Vec<bool>>,
    pub dist: Vec<Vec<u32>>,
}

impl Dense {
    pub fn new(g: &Graph) -> Self {
        let n = g.n_vertices();
        let mut arc = vec![vec![false; n]; n];
        for (u, row) in arc.iter_mut().enumerate() {
            for &v in g.neighbors(u) {
                row[v] = true;
            }
        }
        let dist = (0..n).map(|s| bfs(g, s)).collect();
        Dense { n, arc, dist }
    }

    /// Out/in degree and the distance profile from and to each vertex.
    fn initial_signature(&self, v: usize) -> Vec<u32> {
        let out = self.arc[v].iter().filter(|&&x| x).count() as u32;
        let inn = (0..self.n).filter(|&u| self.arc[u][v]).count() as u32;
        let mut from: Vec<u32> = self.dist[v].clone();
        let mut to: Vec<u32> = (0..self.n).map(|u| self.dist[u][v]).collect();
        from.sort_unstable();
        to.sort_unstable();
        let mut sig = vec![out, inn];
        sig.extend(from);
        sig.push(UNREACHABLE);
        sig.extend(to);
        sig
    }
}

fn bfs(g: &Graph, s: usize) -> Vec<u32> {
    let mut d = vec![UNREACHABLE; g.n_vertices()];
    d[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &v in g.neighbors(u) {
            if d[v] == UNREACHABLE {
                d[v] = d[u] + 1;
                q.push_back(v);
            }
        }
    }
    d
}

/// Stable colourings of several graphs computed with one shared palette, so
/// colours are comparable across the graphs.
pub(crate) fn refine(graphs: &[&Dense]) -> Vec<Vec<u32>> {
    let mut colours: Vec<Vec<u32>> = palette(
        graphs
            .iter()
            .map(|g| (0..g.n).map(|v| g.initial_signature(v)).collect())
            .collect(),
    );
    let mut classes = count_classes(&colours);
    loop {
        let sigs: Vec<Vec<Vec<u32>>> = graphs
            .iter()
            .zip(&colours)
            .map(|(g, c)| {
                (0..g.n)
                    .map(|v| {
                        let mut outs: Vec<u32> = (0..g.n).filter(|&u| g.arc[v][u]).map(|u| c[u]).collect();
                        let mut ins: Vec<u32> = (0..g.n).filter(|&u| g.arc[u][v]).map(|u| c[u]).collect();
                        outs.sort_unstable();
                        ins.sort_unstable();
                        let mut sig = vec![c[v]];
                        sig.extend(outs);
                        sig.push(UNREACHABLE);
                        sig.extend(ins);
                        sig
                    })
                    .collect()
            })
            .collect();
        let next = palette(sigs);
        let next_classes = count_classes(&next);
        colours = next;
        if next_classes == classes {
            return colours;
        }
        classes = next_classes;
    }
}

fn palette(sigs: Vec<Vec<Vec<u32>>>) -> Vec<Vec<u32>> {
    let mut ids: BTreeMap<&Vec<u32>, u32> = BTreeMap::new();
    for s in sigs.iter().flatten() {
        ids.insert(s, 0);
    }
    for (k, v) in ids.values_mut().enumerate() {
        *v = k as u32;
    }
    sigs.iter().map(|g| g.iter().map(|s| ids[s]).collect()).collect()
}

fn count_classes(colours: &[Vec<u32>]) -> usize {
    let mut all: Vec<u32> = colours.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// Histogram of colours; equal histograms are necessary for isomorphism.
pub(crate) fn histogram(colours: &[u32]) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for &c in colours {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

/// Enumerates colour-preserving isomorphisms `g -> h`, each as `f[v]`.
/// `visit` returns true to stop.
pub(crate) fn isomorphisms(
    g: &Dense,
    h: &Dense,
    cg: &[u32],
    ch: &[u32],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    if g.n != h.n {
        return;
    }
    let order = search_order(g, cg);
    let mut f = vec![usize::MAX; g.n];
    let mut used = vec![false; h.n];
    extend(g, h, cg, ch, &order, 0, &mut f, &mut used, visit);
}

/// Rarest colour first, then vertices with the most already-placed
/// neighbours.
fn search_order(g: &Dense, cg: &[u32]) -> Vec<usize> {
    let hist = histogram(cg);
    let mut placed = vec![false; g.n];
    let mut order = Vec::with_capacity(g.n);
    for _ in 0..g.n {
        let next = (0..g.n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = order.iter().filter(|&&u: &&usize| g.arc[u][v] || g.arc[v][u]).count();
                (links, std::cmp::Reverse(hist[&cg[v]]), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Dense,
    h: &Dense,
    cg: &[u32],
    ch: &[u32],
    order: &[usize],
    k: usize,
    f: &mut Vec<usize>,
    used: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if k == order.len() {
        return visit(f);
    }
    let v = order[k];
    for w in 0..h.n {
        if used[w] || ch[w] != cg[v] {
            continue;
        }
        let consistent = order[..k].iter().all(|&u| {
            let fu = f[u];
            g.arc[u][v] == h.arc[fu][w]
                && g.arc[v][u] == h.arc[w][fu]
                && g.dist[u][v] == h.dist[fu][w]
                && g.dist[v][u] == h.dist[w][fu]
        });
        if !consistent {
            continue;
        }
        f[v] = w;
        used[w] = true;
        let stop = extend(g, h, cg, ch, order, k + 1, f, used, visit);
        used[w] = false;
        f[v] = usize::MAX;
        if stop {
            return true;
        }
    }
    false
}

/// Searches for an automorphism that is one cycle through all vertices, as a
/// labelling `x_0, .., x_{m-1}` with `x_0 = 0` on which adjacency depends
/// only on the index difference mod `m`.
pub(crate) fn full_cycle_automorphism(g: &Dense) -> Option<Vec<usize>> {
    let m = g.n;
    if m <= 1 {
        return Some(vec![0; m]);
    }
    let mut x = vec![0usize];
    let mut used = vec![false; m];
    used[0] = true;
    if cycle_extend(g, &mut x, &mut used) {
        let mut perm = vec![0; m];
        for i in 0..m {
            perm[x[i]] = x[(i + 1) % m];
        }
        Some(perm)
    } else {
        None
    }
}

fn cycle_extend(g: &Dense, x: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let m = g.n;
    let j = x.len();
    if j == m {
        return true;
    }
    for w in 0..m {
        if used[w] {
            continue;
        }
        let ok = (1..j).all(|i| {
            let d = j - i;
            g.arc[x[i]][w] == g.arc[x[0]][x[d]]
                && g.arc[w][x[i]] == g.arc[x[d]][x[0]]
                && g.dist[x[i]][w] == g.dist[x[0]][x[d]]
                && g.dist[w][x[i]] == g.dist[x[d]][x[0]]
        }) && (m - j > j
            || if m - j == j {
                g.arc[x[0]][w] == g.arc[w][x[0]]
            } else {
                g.arc[x[0]][w] == g.arc[x[m - j]][x[0]]
            });
        if !ok {
            continue;
        }
        x.push(w);
        used[w] = true;
        if cycle_extend(g, x, used) {
            return true;
        }
        x.pop();
        used[w] = false;
    }
    false
}
