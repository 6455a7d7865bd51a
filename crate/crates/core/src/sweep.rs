//! Verification sweeps comparing the closed forms with the brute-force
//! oracles. Each returns a [`SweepOutcome`]; the acceptance test and the CLI
//! `verify` command both run them.

use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circulant::{
    adam_isomorphic, detect_directions, detect_directions_by_neighbourhood, CirculantGraph, DirectionPartition, Mode,
};
use crate::dimension::{commutative_2step_is_circulant, exceptional_case, is_circulant_2step, prime_product_dimension};
use crate::graph::Graph;
use crate::intmat::{
    determinantal_divisors_by_minors, hermite_normal_form, smith_normal_form, IntMatrix, SmithDecomposition,
};
use crate::oracle::{
    dimension_bruteforce, element_order_bruteforce, graphs_isomorphic, has_regular_cyclic_subgroup, Limits,
};
use crate::quotient::{GroupElement, QuotientGroup};

#[derive(Debug, Clone, Serialize)]
pub struct SweepOutcome {
    pub id: u32,
    pub name: &'static str,
    /// Number of individual comparisons made.
    pub checked: usize,
    pub failures: Vec<String>,
    #[serde(serialize_with = "as_millis")]
    pub elapsed: Duration,
    #[serde(serialize_with = "as_millis")]
    pub limit: Duration,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1000.0)
}

impl SweepOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.elapsed <= self.limit && self.checked > 0
    }

    pub fn summary_line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!(
            "[{status}] {:>2} {:<44} checked={:<7} time={:.3}s (limit {}s)",
            self.id,
            self.name,
            self.checked,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs_f64()
        );
        if let Some(first) = self.failures.first() {
            line.push_str(&format!(" failures={} first: {first}", self.failures.len()));
        }
        line
    }
}

struct Recorder {
    id: u32,
    name: &'static str,
    checked: usize,
    failures: Vec<String>,
    start: Instant,
    limit: Duration,
}

impl Recorder {
    fn new(id: u32, name: &'static str, limit: Duration) -> Self {
        Recorder {
            id,
            name,
            checked: 0,
            failures: Vec::new(),
            start: Instant::now(),
            limit,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 50 {
            self.failures.push(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.checked += 1;
        if self.failures.len() < 50 {
            self.failures.push(what);
        }
    }

    fn finish(self) -> SweepOutcome {
        SweepOutcome {
            id: self.id,
            name: self.name,
            checked: self.checked,
            failures: self.failures,
            elapsed: self.start.elapsed(),
            limit: self.limit,
        }
    }
}

fn mat(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).expect("rectangular literal")
}

pub fn run_all(limits: &Limits) -> Vec<SweepOutcome> {
    vec![
        smith_example(),
        isomorphism_example(limits),
        two_step_sweep(limits),
        commutative_consistency(),
        exceptional_family(limits),
        prime_products(limits),
        cube_dimension(limits),
        order_sweep(),
        component_sweep(limits),
        direction_detection(),
        normal_form_suite(),
    ]
}

/// 1. Smith form of `diag(2,2,3)`.
pub fn smith_example() -> SweepOutcome {
    let m = IntMatrix::diag(&[2, 2, 3]);
    let start = Instant::now();
    let sd = smith_normal_form(&m);
    let elapsed = start.elapsed();
    let mut r = Recorder::new(1, "Smith form of diag(2,2,3)", Duration::from_millis(1));
    match sd {
        Ok(sd) => {
            let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
            r.check(sd.s == IntMatrix::diag(&[1, 2, 6]), || format!("S = {}", sd.s));
            r.check(sd.divisors == big(&[1, 2, 12]), || format!("divisors {:?}", sd.divisors));
            r.check(sd.factors == big(&[1, 2, 6]), || format!("factors {:?}", sd.factors));
            r.check(&(&sd.u * &m) * &sd.v == sd.s, || "U M V != S".into());
            for (name, t) in [("U", &sd.u), ("V", &sd.v)] {
                r.check(t.det().map(|d| d.abs().is_one()).unwrap_or(false), || format!("{name} not unimodular"));
            }
            r.check(sd.validate().is_ok(), || format!("{:?}", sd.validate()));
        }
        Err(e) => r.fail(e.to_string()),
    }
    let mut out = r.finish();
    out.elapsed = elapsed;
    out
}

/// 2. `diag(2,2,3)` with three jumps against its Smith-form presentation.
pub fn isomorphism_example(limits: &Limits) -> SweepOutcome {
    let mut r = Recorder::new(2, "Smith-form presentation isomorphic", Duration::from_secs(1));
    let run = |r: &mut Recorder| -> Result<(), String> {
        let m = IntMatrix::diag(&[2, 2, 3]);
        let jumps = [vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 2]];
        let source = CirculantGraph::from_parts(&m, &jumps, Mode::Digraph).map_err(|e| e.to_string())?;
        let target = CirculantGraph::from_parts(&IntMatrix::diag(&[2, 6]), &[vec![0, 3], vec![1, 0], vec![0, 4]], Mode::Digraph)
            .map_err(|e| e.to_string())?;

        let form = source.adam_canonical();
        r.check(form.factors == [2, 6], || format!("factors {:?}", form.factors));
        let canon = form.to_circulant().map_err(|e| e.to_string())?;
        let iso = graphs_isomorphic(canon.graph(), target.graph(), limits).map_err(|e| e.to_string())?;
        r.check(iso, || "canonical form not isomorphic to the target".into());
        let iso = graphs_isomorphic(source.graph(), target.graph(), limits).map_err(|e| e.to_string())?;
        r.check(iso, || "source not isomorphic to the target".into());

        // with the transform U fixed by hand, the images are exactly the target jumps
        let u = mat(&[&[-1, 0, 1], &[0, 1, 0], &[-3, 0, 2]]);
        let v = mat(&[&[1, 0, 3], &[0, 1, 0], &[1, 0, 2]]);
        let sd = SmithDecomposition::from_transforms(&m, u, v).map_err(|e| e.to_string())?;
        let g = QuotientGroup::with_smith(&m, sd).map_err(|e| e.to_string())?;
        let images: Vec<Vec<i64>> = jumps
            .iter()
            .map(|a| g.to_snf_coords(&g.canonicalize_i64(a).expect("length 3")))
            .collect();
        r.check(images == [vec![0, 3], vec![1, 0], vec![0, 4]], || format!("images {images:?}"));
        Ok(())
    };
    if let Err(e) = run(&mut r) {
        r.fail(e);
    }
    r.finish()
}

/// All 2x2 matrices with entries in `range` and `0 < |det| <= max_det`.
fn small_matrices(range: std::ops::RangeInclusive<i64>, max_det: i64) -> Vec<IntMatrix> {
    let vals: Vec<i64> = range.collect();
    let mut out = Vec::new();
    for &a in &vals {
        for &b in &vals {
            for &c in &vals {
                for &d in &vals {
                    let det = a * d - b * c;
                    if det != 0 && det.abs() <= max_det {
                        out.push(mat(&[&[a, b], &[c, d]]));
                    }
                }
            }
        }
    }
    out
}

fn hnf_key(g: &QuotientGroup) -> Vec<Vec<i64>> {
    g.hermite().h.to_i64_rows().expect("bounded by the order")
}

type OracleKey = (Vec<Vec<i64>>, Vec<Vec<i64>>, Mode);

/// 3. Two-jump circulant test against the cyclic-automorphism oracle.
pub fn two_step_sweep(limits: &Limits) -> SweepOutcome {
    let mut r = Recorder::new(3, "2-jump circulant test vs oracle", Duration::from_secs(600));
    // keyed by (HNF, closed jump set, mode), which determine the graph
    let mut memo: HashMap<OracleKey, bool> = HashMap::new();
    let mut seen = [0usize; 2];
    for m in small_matrices(-4..=4, 12) {
        let g = match QuotientGroup::new(&m) {
            Ok(g) => g,
            Err(e) => {
                r.fail(format!("{m}: {e}"));
                continue;
            }
        };
        let elements: Vec<GroupElement> = g.elements().into_iter().filter(|e| !e.is_zero()).collect();
        for i in 0..elements.len() {
            for j in i + 1..elements.len() {
                let pair = [elements[i].clone(), elements[j].clone()];
                if !g.generates(&pair).unwrap_or(false) {
                    continue;
                }
                for mode in [Mode::Digraph, Mode::Graph] {
                    let verdict = match is_circulant_2step(&g, &pair, mode) {
                        Ok(v) => v.is_circulant,
                        Err(e) => {
                            r.fail(format!("{m} {pair:?}: {e}"));
                            continue;
                        }
                    };
                    let circ = match CirculantGraph::build(
                        g.clone(),
                        crate::circulant::JumpSet::from_elements(&g, &pair, mode).expect("valid jumps"),
                    ) {
                        Ok(c) => c,
                        Err(e) => {
                            r.fail(e.to_string());
                            continue;
                        }
                    };
                    let key_jumps: Vec<Vec<i64>> = circ.jump_set().jumps().iter().map(|e| e.coords().to_vec()).collect();
                    let key = (hnf_key(&g), key_jumps, mode);
                    let truth = match memo.get(&key) {
                        Some(&t) => t,
                        None => match has_regular_cyclic_subgroup(circ.graph(), limits) {
                            Ok(t) => {
                                memo.insert(key, t);
                                t
                            }
                            Err(e) => {
                                r.fail(e.to_string());
                                continue;
                            }
                        },
                    };
                    seen[truth as usize] += 1;
                    r.check(verdict == truth, || {
                        format!("M={m} A={{{}, {}}} {mode}: rule says {verdict}, oracle says {truth}", pair[0], pair[1])
                    });
                }
            }
        }
    }
    r.check(seen[0] > 0 && seen[1] > 0, || format!("one-sided sample {seen:?}"));
    r.finish()
}

/// 4. The entry formula for `G(M; e_1, e_2)` against the general rule.
pub fn commutative_consistency() -> SweepOutcome {
    let mut r = Recorder::new(4, "commutative 2-step formula consistency", Duration::from_secs(60));
    for m in small_matrices(-5..=5, 20) {
        let g = QuotientGroup::new(&m).expect("nonsingular");
        let units = [
            g.canonicalize_i64(&[1, 0]).expect("length 2"),
            g.canonicalize_i64(&[0, 1]).expect("length 2"),
        ];
        // degenerate presentations where e_1, e_2 are not two distinct jumps
        if units[0].is_zero() || units[1].is_zero() || units[0] == units[1] {
            continue;
        }
        if !g.generates(&units).expect("length 2") {
            continue;
        }
        let formula = commutative_2step_is_circulant(&m);
        let general = is_circulant_2step(&g, &units, Mode::Digraph).map(|v| v.is_circulant);
        match (formula, general) {
            (Ok(a), Ok(b)) => r.check(a == b, || format!("M={m}: formula {a}, general rule {b}")),
            (a, b) => r.fail(format!("M={m}: {a:?} / {b:?}")),
        }
    }
    r.finish()
}

/// 5. The exceptional pairs are isomorphic but not Adam isomorphic.
pub fn exceptional_family(limits: &Limits) -> SweepOutcome {
    let mut r = Recorder::new(5, "exceptional family eta = 1, 2, 3", Duration::from_secs(60));
    for eta in 1..=3u64 {
        for mode in [Mode::Digraph, Mode::Graph] {
            let result = (|| -> Result<(), String> {
                let x = CirculantGraph::from_parts(&IntMatrix::diag(&[2 * eta, 2]), &[vec![1, 0], vec![1, 1]], mode)
                    .map_err(|e| e.to_string())?;
                let e = eta as i64;
                let y = CirculantGraph::from_parts(&IntMatrix::diag(&[4 * eta]), &[vec![1], vec![2 * e + 1]], mode)
                    .map_err(|e| e.to_string())?;
                let iso = graphs_isomorphic(x.graph(), y.graph(), limits).map_err(|e| e.to_string())?;
                r.check(iso, || format!("eta={eta} {mode}: not isomorphic"));
                let adam = adam_isomorphic(&x, &y).map_err(|e| e.to_string())?;
                r.check(!adam, || format!("eta={eta} {mode}: Adam isomorphic"));
                let found = exceptional_case(x.group(), x.jump_set().generators(), mode).map_err(|e| e.to_string())?;
                r.check(found == Some(eta), || format!("eta={eta} {mode}: detected {found:?}"));
                let verdict =
                    is_circulant_2step(x.group(), x.jump_set().generators(), mode).map_err(|e| e.to_string())?;
                r.check(verdict.is_circulant, || format!("eta={eta} {mode}: rule says not circulant"));
                Ok(())
            })();
            if let Err(e) = result {
                r.fail(e);
            }
        }
    }
    r.finish()
}

fn power(g: &Graph, n: usize) -> Graph {
    (1..n).fold(g.clone(), |acc, _| acc.cartesian_product(g).expect("same directedness"))
}

/// 6. Products of two circulants on 3 vertices have dimension 2.
pub fn prime_products(limits: &Limits) -> SweepOutcome {
    let mut r = Recorder::new(6, "dimension of C3 x C3 and K3 x K3", Duration::from_secs(300));
    let cases = [
        ("directed C3 x C3", power(&Graph::cycle(3, true), 2), vec![vec![1], vec![1]], Mode::Digraph),
        ("K3 x K3", power(&Graph::complete(3), 2), vec![vec![1, 2], vec![1, 2]], Mode::Graph),
    ];
    for (name, graph, factors, mode) in cases {
        let closed = prime_product_dimension(3, &factors, mode);
        let brute = dimension_bruteforce(&graph, limits);
        match (closed, brute) {
            (Ok(c), Ok(b)) => {
                r.check(c.dimension == 2 && b.dimension == 2, || {
                    format!("{name}: closed form {}, exhaustive {}", c.dimension, b.dimension)
                });
                let same = graphs_isomorphic(c.instance.graph(), &graph, limits).unwrap_or(false);
                r.check(same, || format!("{name}: product instance differs from the raw product"));
            }
            (c, b) => r.fail(format!("{name}: {:?} / {:?}", c.err(), b.err())),
        }
    }
    // no automorphism of K3 x K3 cycles through all 9 vertices
    match has_regular_cyclic_subgroup(&power(&Graph::complete(3), 2), limits) {
        Ok(found) => r.check(!found, || "K3 x K3 has a regular cyclic subgroup".into()),
        Err(e) => r.fail(e.to_string()),
    }
    r.finish()
}

/// 7. The 3-cube has dimension 2.
pub fn cube_dimension(limits: &Limits) -> SweepOutcome {
    let mut r = Recorder::new(7, "dimension of the 3-cube", Duration::from_secs(300));
    match dimension_bruteforce(&Graph::hypercube(3), limits) {
        Ok(d) => r.check(d.dimension == 2, || format!("got {}", d.dimension)),
        Err(e) => r.fail(e.to_string()),
    }
    r.finish()
}

/// Random nonsingular `n x n` matrices with entries in `[-k, k]` and
/// `|det| <= max_det`.
fn random_matrix(rng: &mut ChaCha8Rng, n: usize, k: i64, max_det: Option<u64>) -> IntMatrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-k..=k)).collect()).collect();
        let m = IntMatrix::from_rows(&rows).expect("square");
        let det = m.det().expect("square");
        if det.is_zero() {
            continue;
        }
        if max_det.is_some_and(|cap| det.abs() > BigInt::from(cap)) {
            continue;
        }
        return m;
    }
}

/// 8. Order formulas against repeated addition.
pub fn order_sweep() -> SweepOutcome {
    let mut r = Recorder::new(8, "element order formulas vs repeated addition", Duration::from_secs(60));
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for k in 0..240 {
        let n = 1 + k % 3;
        let m = random_matrix(&mut rng, n, 6, Some(60));
        let g = QuotientGroup::new(&m).expect("nonsingular");
        for a in g.elements() {
            let formula = g.element_order(&a);
            let brute = element_order_bruteforce(&g, &a);
            r.check(formula == brute, || format!("M={m} a={a}: formula {formula}, brute {brute}"));
            if let Some(two) = g.element_order_2x2(&a) {
                r.check(two == brute, || format!("M={m} a={a}: 2x2 formula {two}, brute {brute}"));
            }
        }
    }
    r.finish()
}

fn random_instance(rng: &mut ChaCha8Rng, max_order: u64) -> CirculantGraph {
    loop {
        let n = rng.gen_range(1..=3);
        let m = random_matrix(rng, n, 5, Some(max_order));
        let g = QuotientGroup::new(&m).expect("nonsingular");
        if g.order() < 2 {
            continue;
        }
        let nonzero: Vec<GroupElement> = g.elements().into_iter().filter(|e| !e.is_zero()).collect();
        let d = rng.gen_range(1..=3.min(nonzero.len()));
        let jumps: Vec<GroupElement> = nonzero.choose_multiple(rng, d).cloned().collect();
        let mode = if rng.gen_bool(0.5) { Mode::Graph } else { Mode::Digraph };
        let set = crate::circulant::JumpSet::from_elements(&g, &jumps, mode).expect("valid jumps");
        return CirculantGraph::build(g, set).expect("buildable");
    }
}

/// 9. Subgroup-index component count against search, components isomorphic.
pub fn component_sweep(limits: &Limits) -> SweepOutcome {
    let mut r = Recorder::new(9, "components: index vs search, isomorphic", Duration::from_secs(120));
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut disconnected = 0;
    for _ in 0..160 {
        let c = random_instance(&mut rng, 24);
        let label = format!("M={} A={:?} {}", c.group().matrix(), c.jump_set().generators(), c.mode());
        let comps = match c.components() {
            Ok(x) => x,
            Err(e) => {
                r.fail(format!("{label}: {e}"));
                continue;
            }
        };
        r.check(comps.alpha as usize == comps.sets.len(), || {
            format!("{label}: alpha {} but {} components", comps.alpha, comps.sets.len())
        });
        let first = c.graph().induced(&comps.sets[0]);
        for set in &comps.sets[1..] {
            let iso = graphs_isomorphic(&first, &c.graph().induced(set), limits).unwrap_or(false);
            r.check(iso, || format!("{label}: components not isomorphic"));
        }
        if comps.alpha > 1 {
            disconnected += 1;
            let rebuilt = c.reduce_disconnected().and_then(|red| red.to_circulant(c.mode()));
            match rebuilt {
                Ok(x) => {
                    let iso = graphs_isomorphic(x.graph(), c.graph(), limits).unwrap_or(false);
                    r.check(iso, || format!("{label}: reduced presentation not isomorphic"));
                }
                Err(e) => r.fail(format!("{label}: {e}")),
            }
        }
    }
    r.check(disconnected > 0, || "no disconnected instance was sampled".into());
    r.finish()
}

/// Ground truth on a relabelled product instance: the coordinate in which
/// the endpoints differ.
fn ground_truth(c: &CirculantGraph, perm: &[usize], relabelled: &Graph) -> DirectionPartition {
    let mut back = vec![0; perm.len()];
    for (v, &p) in perm.iter().enumerate() {
        back[p] = v;
    }
    let vs = c.vertices();
    let mut labels = BTreeMap::new();
    for (u, v) in relabelled.support().edges() {
        let (a, b) = (vs[back[u]].coords(), vs[back[v]].coords());
        let k = (0..a.len()).find(|&k| a[k] != b[k]).expect("distinct endpoints");
        labels.insert((u, v), k);
    }
    DirectionPartition::from_support_labels(relabelled, &labels).expect("every edge labelled")
}

/// 10. Directions of `C_p^n` and `K_p^n` recovered from adjacency alone.
pub fn direction_detection() -> SweepOutcome {
    let mut r = Recorder::new(10, "direction detection on C_p^n and K_p^n", Duration::from_secs(120));
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for p in [3u64, 5] {
        for n in [2usize, 3] {
            let cycle: Vec<i64> = vec![1, -1];
            let complete: Vec<i64> = (1..p as i64).collect();
            for (name, jumps, mode) in [
                ("C", cycle.clone(), Mode::Graph),
                ("directed C", vec![1], Mode::Digraph),
                ("K", complete, Mode::Graph),
            ] {
                let factors = vec![jumps; n];
                let c = match prime_product_dimension(p, &factors, mode) {
                    Ok(x) => x.instance,
                    Err(e) => {
                        r.fail(e.to_string());
                        continue;
                    }
                };
                let mut perm: Vec<usize> = (0..c.graph().n_vertices()).collect();
                perm.shuffle(&mut rng);
                let g = c.graph().relabel(&perm).expect("permutation");
                let truth = ground_truth(&c, &perm, &g);
                let root = rng.gen_range(0..g.n_vertices());
                let label = format!("{name}_{p}^{n}");
                match detect_directions(&g, root) {
                    Ok(found) => r.check(found.equivalent(&truth), || format!("{label}: wrong partition")),
                    Err(e) => r.fail(format!("{label}: {e}")),
                }
                if name == "K" {
                    match detect_directions_by_neighbourhood(&g, root) {
                        Ok(found) => r.check(found.equivalent(&truth), || format!("{label}: neighbourhood variant wrong")),
                        Err(e) => r.fail(format!("{label} neighbourhood: {e}")),
                    }
                }
            }
        }
    }
    r.finish()
}

/// Product of random elementary operations: shears, swaps, sign flips.
fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if i != j => {
                let k = BigInt::from(rng.gen_range(-3..=3));
                let add: Vec<BigInt> = rows[j].iter().map(|x| x * &k).collect();
                for (x, y) in rows[i].iter_mut().zip(add) {
                    *x += y;
                }
            }
            1 => rows.swap(i, j),
            _ => {
                for x in rows[i].iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
        }
    }
    IntMatrix::from_rows(&rows).expect("square")
}

/// 11. Normal-form invariants on random matrices.
pub fn normal_form_suite() -> SweepOutcome {
    let mut r = Recorder::new(11, "HNF/SNF property suite", Duration::from_secs(60));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..520 {
        let n = 1 + k % 5;
        let m = random_matrix(&mut rng, n, 9, None);
        let hd = match hermite_normal_form(&m) {
            Ok(h) => h,
            Err(e) => {
                r.fail(format!("{m}: {e}"));
                continue;
            }
        };
        r.check(hd.validate().is_ok(), || format!("HNF of {m}: {:?}", hd.validate()));
        let again = hermite_normal_form(&hd.h).map(|x| x.h);
        r.check(again.as_ref() == Ok(&hd.h), || format!("HNF not idempotent on {m}"));

        let sd = smith_normal_form(&m).expect("nonsingular");
        r.check(sd.validate().is_ok(), || format!("SNF of {m}: {:?}", sd.validate()));
        if n <= 4 {
            let minors = determinantal_divisors_by_minors(&m);
            r.check(minors.as_ref() == Ok(&sd.divisors), || format!("divisors of {m}: {minors:?} vs {:?}", sd.divisors));
        }

        let p = random_unimodular(&mut rng, n);
        let q = random_unimodular(&mut rng, n);
        let mq = &m * &q;
        let h2 = hermite_normal_form(&mq).map(|x| x.h);
        r.check(h2.as_ref() == Ok(&hd.h), || format!("HNF changed under column operations on {m}"));
        let pmq = &p * &mq;
        let s2 = smith_normal_form(&pmq).map(|x| x.s);
        r.check(s2.as_ref() == Ok(&sd.s), || format!("SNF changed under unimodular equivalence on {m}"));

        let g = QuotientGroup::new(&m).expect("nonsingular");
        let a: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-20..=20))).collect();
        let y = g.scaled_inverse_apply(&a).expect("length n");
        let lhs = m.mul_vec(&y).expect("length n");
        let order = BigInt::from(g.order());
        r.check(lhs.iter().zip(&a).all(|(l, x)| *l == &order * x), || format!("M y != m a for {m}"));
    }
    r.finish()
}
