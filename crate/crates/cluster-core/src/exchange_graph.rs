//! Seeds up to simultaneous relabeling, exchange graphs, coverings and
//! finiteness tests.

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::matrix::IntMatrix;
use crate::mutation::{
    bipartite_sign, cartan_counterpart, cartan_symmetrizer, ExchangeMatrix, ExtendedMatrix,
    GeometricSeed, YSeed,
};
use crate::semifield::Semifield;

pub const MAX_CANONICAL_RANK: usize = 10;
pub const DEFAULT_SEED_CAP: usize = 100_000;
pub const DEFAULT_MATRIX_CAP: usize = 10_000;

/// Canonical serialization of a seed up to simultaneous relabeling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeedKey(pub Vec<u8>);

/// Per-index data for canonicalization: a label (cluster variable or
/// coefficient), the coefficient column, and the principal part.
fn index_invariant<L: Ord + Clone>(labels: &[L], b: &ExtendedMatrix, i: usize) -> (L, Vec<i64>, Vec<i64>, Vec<i64>) {
    let n = b.n();
    let mut row: Vec<i64> = (0..n).map(|j| b.get(i, j)).collect();
    let mut col: Vec<i64> = (0..n).map(|j| b.get(j, i)).collect();
    row.sort_unstable();
    col.sort_unstable();
    (labels[i].clone(), b.coefficient_column(i), row, col)
}

/// Serialization of the seed under the ordering `perm` (position → index).
fn serialize_under<L: Clone>(labels: &[L], b: &ExtendedMatrix, perm: &[usize]) -> (Vec<L>, Vec<i64>) {
    let n = b.n();
    let mut ints = Vec::with_capacity(b.m() * n);
    for &i in perm {
        ints.extend(b.coefficient_column(i));
    }
    for &i in perm {
        for &j in perm {
            ints.push(b.get(i, j));
        }
    }
    (perm.iter().map(|&i| labels[i].clone()).collect(), ints)
}

/// The ordering of indices that gives the lexicographically least
/// serialization. Indices are first sorted by invariants; only tie blocks
/// are permuted.
pub fn canonical_order<L: Ord + Clone>(labels: &[L], b: &ExtendedMatrix) -> Result<Vec<usize>> {
    let n = b.n();
    if n > MAX_CANONICAL_RANK {
        return Err(Error::RankTooLarge(n));
    }
    let inv: Vec<_> = (0..n).map(|i| index_invariant(labels, b, i)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &c| inv[a].cmp(&inv[c]));
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    let mut s = 0;
    for e in 1..=n {
        if e == n || inv[order[e]] != inv[order[s]] {
            blocks.push((s, e));
            s = e;
        }
    }
    let mut best = order.clone();
    let mut best_ser = serialize_under(labels, b, &best);
    let mut cur = order;
    permute_blocks(&blocks, 0, &mut cur, &mut |p| {
        let ser = serialize_under(labels, b, p);
        if ser < best_ser {
            best_ser = ser;
            best = p.to_vec();
        }
    });
    Ok(best)
}

/// Visit every arrangement obtained by permuting within each block.
fn permute_blocks(blocks: &[(usize, usize)], bi: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    let Some(&(s, e)) = blocks.get(bi) else {
        visit(cur);
        return;
    };
    if e - s == 1 {
        permute_blocks(blocks, bi + 1, cur, visit);
        return;
    }
    heap_permute(s, e, e - s, cur, &mut |c| permute_blocks(blocks, bi + 1, c, visit));
}

fn heap_permute(s: usize, e: usize, k: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&mut Vec<usize>)) {
    if k == 1 {
        visit(cur);
        return;
    }
    for i in 0..k {
        heap_permute(s, e, k - 1, cur, visit);
        if k % 2 == 0 {
            cur.swap(s + i, s + k - 1);
        } else {
            cur.swap(s, s + k - 1);
        }
    }
}

fn key_bytes<L: serde::Serialize>(labels: &[L], ints: &[i64]) -> SeedKey {
    SeedKey(serde_json::to_vec(&(labels, ints)).expect("serializable"))
}

/// Canonical key of a geometric seed: cluster variables in canonical text.
pub fn seed_canonical_form(seed: &GeometricSeed) -> Result<SeedKey> {
    let vars = seed.default_vars();
    let labels: Vec<String> = seed.x.iter().map(|x| x.to_text(&vars)).collect();
    let perm = canonical_order(&labels, &seed.btilde)?;
    let (l, ints) = serialize_under(&labels, &seed.btilde, &perm);
    Ok(key_bytes(&l, &ints))
}

/// Canonical key of a Y-seed: coefficients rendered by the semifield.
pub fn yseed_canonical_form<S: Semifield>(ys: &YSeed<S>, sf: &S) -> Result<SeedKey> {
    let labels: Vec<String> = ys.y.iter().map(|v| sf.render(v)).collect();
    let bt = ExtendedMatrix::new(ys.b.matrix().clone())?;
    let perm = canonical_order(&labels, &bt)?;
    let (l, ints) = serialize_under(&labels, &bt, &perm);
    Ok(key_bytes(&l, &ints))
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphVertex {
    pub id: usize,
    /// A path from the root to the stored labeled representative.
    pub path: Vec<usize>,
    /// Interned cluster-variable ids, in the representative's labeling.
    pub cluster: Vec<usize>,
    /// `neighbors[k]`: the vertex across the edge labeled `k + 1`.
    #[serde(skip)]
    pub neighbors: Vec<usize>,
    /// `connections[k][j]`: the label at the neighbor matching label `j` here.
    #[serde(skip)]
    pub connections: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub u: usize,
    pub v: usize,
    /// 1-based direction at `u`'s representative.
    pub label: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExchangeGraph {
    pub n: usize,
    #[serde(skip)]
    pub btilde0: ExtendedMatrix,
    pub vertices: Vec<GraphVertex>,
    pub edges: Vec<GraphEdge>,
    /// Distinct cluster variables in canonical text over `x1..xm`.
    pub variables: Vec<String>,
    /// False when the cap stopped the search.
    pub finite: bool,
}

struct Frontier {
    id: usize,
    seed: GeometricSeed,
}

/// Breadth-first enumeration of seeds from the initial seed of `btilde0`,
/// deduplicated up to relabeling, stopping after `cap` seeds. Each level is
/// expanded in parallel and merged in a fixed order, so the result does not
/// depend on the thread count.
pub fn build_exchange_graph(btilde0: &ExtendedMatrix, cap: usize) -> Result<ExchangeGraph> {
    let n = btilde0.n();
    if n > MAX_CANONICAL_RANK {
        return Err(Error::RankTooLarge(n));
    }
    if cap == 0 {
        return Err(Error::InvalidInput("cap must be positive".into()));
    }
    let root = GeometricSeed::initial(btilde0.clone());
    let vars = root.default_vars();
    let mut variables: Vec<String> = Vec::new();
    let mut var_ids: HashMap<String, usize> = HashMap::new();
    let mut intern = |t: String, variables: &mut Vec<String>| -> usize {
        if let Some(&i) = var_ids.get(&t) {
            return i;
        }
        variables.push(t.clone());
        var_ids.insert(t, variables.len() - 1);
        variables.len() - 1
    };
    let root_ids: Vec<usize> = root.x.iter().map(|x| intern(x.to_text(&vars), &mut variables)).collect();
    let root_perm = canonical_order(&root_ids, &root.btilde)?;
    let root_key = graph_key(&root_ids, &root.btilde, &root_perm);

    let mut vertices = vec![GraphVertex {
        id: 0,
        path: Vec::new(),
        cluster: root_ids,
        neighbors: vec![usize::MAX; n],
        connections: vec![Vec::new(); n],
    }];
    let mut perms = vec![root_perm];
    let mut index: HashMap<SeedKey, usize> = HashMap::new();
    index.insert(root_key, 0);
    let mut edges = Vec::new();
    let mut frontier = vec![Frontier { id: 0, seed: root }];
    let mut finite = true;

    'bfs: while !frontier.is_empty() {
        // Parallel part: the mutations and the texts of new variables.
        let expanded: Vec<Vec<(GeometricSeed, String)>> = frontier
            .par_iter()
            .map(|f| {
                (1..=n)
                    .map(|k| {
                        let s = f.seed.mutate(k)?;
                        let t = s.x[k - 1].to_text(&vars);
                        Ok((s, t))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut next = Vec::new();
        for (f, muts) in frontier.iter().zip(expanded) {
            for (kk, (seed, text)) in muts.into_iter().enumerate() {
                let u = f.id;
                if vertices[u].neighbors[kk] != usize::MAX {
                    continue;
                }
                let mut ids = vertices[u].cluster.clone();
                ids[kk] = intern(text, &mut variables);
                let perm = canonical_order(&ids, &seed.btilde)?;
                let key = graph_key(&ids, &seed.btilde, &perm);
                let v = match index.get(&key) {
                    Some(&v) => v,
                    None => {
                        if vertices.len() >= cap {
                            finite = false;
                            break 'bfs;
                        }
                        let v = vertices.len();
                        let mut path = vertices[u].path.clone();
                        path.push(kk + 1);
                        vertices.push(GraphVertex {
                            id: v,
                            path,
                            cluster: ids.clone(),
                            neighbors: vec![usize::MAX; n],
                            connections: vec![Vec::new(); n],
                        });
                        perms.push(perm.clone());
                        index.insert(key, v);
                        next.push(Frontier { id: v, seed: seed.clone() });
                        v
                    }
                };
                // Label i of the mutated seed sits at canonical position
                // pinv[i], which is label perms[v][pinv[i]] at v.
                let mut pinv = vec![0; n];
                for (pos, &i) in perm.iter().enumerate() {
                    pinv[i] = pos;
                }
                let conn: Vec<usize> = (0..n).map(|i| perms[v][pinv[i]]).collect();
                let back = conn[kk];
                let mut back_conn = vec![0; n];
                for (i, &c) in conn.iter().enumerate() {
                    back_conn[c] = i;
                }
                vertices[u].neighbors[kk] = v;
                vertices[u].connections[kk] = conn;
                vertices[v].neighbors[back] = u;
                vertices[v].connections[back] = back_conn;
                edges.push(GraphEdge { u, v, label: kk + 1 });
            }
        }
        frontier = next;
    }
    Ok(ExchangeGraph { n, btilde0: btilde0.clone(), vertices, edges, variables, finite })
}

fn graph_key(ids: &[usize], b: &ExtendedMatrix, perm: &[usize]) -> SeedKey {
    let (l, ints) = serialize_under(ids, b, perm);
    key_bytes(&l, &ints)
}

impl ExchangeGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Every vertex has `n` distinct neighbors and the graph is connected.
    pub fn is_regular_connected(&self) -> bool {
        let regular = self.vertices.iter().all(|v| {
            let set: HashSet<usize> = v.neighbors.iter().copied().collect();
            v.neighbors.iter().all(|&w| w != usize::MAX && w != v.id) && set.len() == self.n
        });
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &w in &self.vertices[u].neighbors {
                if w != usize::MAX && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        regular && seen.iter().all(|&s| s)
    }

    /// The cycle length when the graph is a single cycle.
    pub fn cycle_length(&self) -> Option<usize> {
        if self.n != 2 || !self.finite || !self.is_regular_connected() {
            return None;
        }
        (self.vertex_count() == self.edge_count()).then_some(self.vertex_count())
    }

    /// Follow a labeled path from the root: the vertex reached and the map
    /// from tree labels to the representative's labels there (0-based).
    pub fn locate(&self, path: &[usize]) -> Result<(usize, Vec<usize>)> {
        let mut u = 0;
        let mut rho: Vec<usize> = (0..self.n).collect();
        for &k in path {
            if !(1..=self.n).contains(&k) {
                return Err(Error::InvalidInput(format!("direction {k} out of range")));
            }
            let a = rho[k - 1];
            let w = self.vertices[u].neighbors[a];
            if w == usize::MAX {
                return Err(Error::InvalidInput("path leaves the explored graph".into()));
            }
            let conn = &self.vertices[u].connections[a];
            rho = rho.iter().map(|&r| conn[r]).collect();
            u = w;
        }
        Ok((u, rho))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

/// Result of a covering check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covering {
    pub holds: bool,
    /// A vertex of the first graph with two different images.
    pub witness: Option<(usize, usize, usize)>,
}

/// Does the tree map to `other` factor through `principal`? Explores pairs of
/// labeled positions in both graphs reached by the same tree paths.
pub fn covering_check(principal: &ExchangeGraph, other: &ExchangeGraph) -> Result<Covering> {
    if principal.n != other.n || principal.btilde0.principal() != other.btilde0.principal() {
        return Err(Error::IncompatibleInputs("graphs start from different exchange matrices".into()));
    }
    if !principal.finite || !other.finite {
        return Err(Error::IncompatibleInputs("covering needs complete graphs".into()));
    }
    let n = principal.n;
    let mut image: Vec<Option<usize>> = vec![None; principal.vertex_count()];
    let start = (0usize, 0usize, (0..n).collect::<Vec<usize>>());
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    image[0] = Some(0);
    while let Some((u, w, rho)) = queue.pop_front() {
        for a in 0..n {
            let v = principal.vertices[u].neighbors[a];
            let cp = &principal.vertices[u].connections[a];
            let b = rho[a];
            let x = other.vertices[w].neighbors[b];
            let co = &other.vertices[w].connections[b];
            // New map: labels at v to labels at x.
            let mut next = vec![0; n];
            for j in 0..n {
                next[cp[j]] = co[rho[j]];
            }
            match image[v] {
                Some(y) if y != x => {
                    return Ok(Covering { holds: false, witness: Some((v, y, x)) });
                }
                _ => image[v] = Some(x),
            }
            let st = (v, x, next);
            if seen.insert(st.clone()) {
                queue.push_back(st);
            }
        }
    }
    Ok(Covering { holds: true, witness: None })
}

/// Outcome of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Finiteness {
    Finite(usize),
    CapExceeded,
}

/// Canonical key of an extended matrix: columns and top rows permuted
/// together, frozen rows sorted.
fn matrix_key(b: &ExtendedMatrix) -> Result<Vec<i64>> {
    let n = b.n();
    let labels = vec![0u8; n];
    let mut best: Option<Vec<i64>> = None;
    if n > MAX_CANONICAL_RANK {
        return Err(Error::RankTooLarge(n));
    }
    let inv: Vec<_> = (0..n).map(|i| index_invariant(&labels, b, i)).collect();
    let mut sorted: Vec<usize> = (0..n).collect();
    sorted.sort_by(|&a, &c| inv[a].cmp(&inv[c]));
    let mut blocks = Vec::new();
    let mut s = 0;
    for e in 1..=n {
        if e == n || inv[sorted[e]] != inv[sorted[s]] {
            blocks.push((s, e));
            s = e;
        }
    }
    let mut cur = sorted;
    permute_blocks(&blocks, 0, &mut cur, &mut |p| {
        let mut ser = Vec::with_capacity(b.m() * n);
        for &i in p {
            for &j in p {
                ser.push(b.get(i, j));
            }
        }
        let mut frozen: Vec<Vec<i64>> =
            (n..b.m()).map(|r| p.iter().map(|&j| b.get(r, j)).collect()).collect();
        frozen.sort();
        ser.extend(frozen.concat());
        if best.as_ref().map_or(true, |bb| ser < *bb) {
            best = Some(ser);
        }
    });
    Ok(best.expect("at least one arrangement"))
}

/// Size of the mutation class of `btilde` up to relabeling, or cap exceedance.
pub fn mutation_class_finiteness(btilde: &ExtendedMatrix, cap: usize) -> Result<Finiteness> {
    let n = btilde.n();
    let mut seen: HashSet<Vec<i64>> = HashSet::from([matrix_key(btilde)?]);
    let mut queue = VecDeque::from([btilde.clone()]);
    while let Some(b) = queue.pop_front() {
        for k in 1..=n {
            let m = b.mutate(k);
            if seen.insert(matrix_key(&m)?) {
                if seen.len() > cap {
                    return Ok(Finiteness::CapExceeded);
                }
                queue.push_back(m);
            }
        }
    }
    Ok(Finiteness::Finite(seen.len()))
}

/// Positive definiteness of the symmetrization `D A` of a Cartan matrix, by
/// leading principal minors.
pub fn cartan_positive_definite(a: &IntMatrix) -> Result<bool> {
    let d = cartan_symmetrizer(a)?;
    let n = a.rows();
    let mut s = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            s[(i, j)] = d[i] * a[(i, j)];
        }
    }
    Ok(s.leading_minors().iter().all(|m| *m > 0.into()))
}

/// Whether `B` gives cluster algebras of finite type. Bipartite input is
/// decided by the Cartan criterion; a seed enumeration with trivial
/// coefficients runs as well and must agree when it finishes.
pub fn is_finite_type(b: &ExchangeMatrix, cap: usize) -> Result<bool> {
    let bt = ExtendedMatrix::new(b.matrix().clone())?;
    let by_cartan = match bipartite_sign(b) {
        Some(_) => Some(cartan_positive_definite(&cartan_counterpart(b))?),
        None => None,
    };
    // Enumeration of an infinite type only ever hits the cap, so skip it
    // when the Cartan test already said no.
    if by_cartan == Some(false) {
        return Ok(false);
    }
    let g = build_exchange_graph(&bt, cap)?;
    match (by_cartan, g.finite) {
        (Some(true), false) => Err(Error::CrossCheckFailure(format!(
            "positive definite Cartan counterpart but more than {cap} seeds"
        ))),
        (Some(x), _) => Ok(x),
        (None, true) => Ok(true),
        (None, false) => Err(Error::Inconclusive(format!("more than {cap} seeds, not bipartite"))),
    }
}

/// Distinct cluster variables of a finite graph as Laurent polynomials.
pub fn graph_variables(g: &ExchangeGraph) -> Result<Vec<Laurent>> {
    let vars = GeometricSeed::initial(g.btilde0.clone()).default_vars();
    g.variables.iter().map(|t| Laurent::parse(t, &vars)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mutation::named_exchange;

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap()
    }

    #[test]
    fn a2_keys() {
        let s0 = GeometricSeed::initial(a2().principal_extension());
        let s5 = s0.walk(&[2, 1, 2, 1, 2]).unwrap();
        let s1 = s0.walk(&[2]).unwrap();
        assert_eq!(seed_canonical_form(&s0).unwrap(), seed_canonical_form(&s5).unwrap());
        assert_ne!(seed_canonical_form(&s0).unwrap(), seed_canonical_form(&s1).unwrap());
    }

    #[test]
    fn a2_graphs() {
        for bt in [a2().principal_extension(), ExtendedMatrix::new(a2().matrix().clone()).unwrap()] {
            let g = build_exchange_graph(&bt, 100).unwrap();
            assert!(g.finite);
            assert_eq!(g.cycle_length(), Some(5));
        }
        let p = build_exchange_graph(&a2().principal_extension(), 100).unwrap();
        let t = build_exchange_graph(&ExtendedMatrix::new(a2().matrix().clone()).unwrap(), 100).unwrap();
        assert!(covering_check(&p, &t).unwrap().holds);
        assert!(covering_check(&p, &p).unwrap().holds);
        let b2 = build_exchange_graph(&named_exchange("B2").unwrap().principal_extension(), 100).unwrap();
        assert!(matches!(covering_check(&p, &b2), Err(Error::IncompatibleInputs(_))));
    }

    #[test]
    fn a3_counts() {
        let b = named_exchange("A3").unwrap();
        let g = build_exchange_graph(&b.principal_extension(), 1000).unwrap();
        assert_eq!(g.vertex_count(), 14);
        assert_eq!(g.variables.len(), 9);
        assert!(g.is_regular_connected());
        let (v, _) = g.locate(&[1, 2, 1, 2, 1]).unwrap();
        assert!(v < 14);
    }

    #[test]
    fn finiteness() {
        let k = ExchangeMatrix::from_rows(&[vec![0, 2], vec![-2, 0]]).unwrap();
        assert_eq!(
            mutation_class_finiteness(&k.principal_extension(), 1000).unwrap(),
            Finiteness::CapExceeded
        );
        assert!(matches!(
            mutation_class_finiteness(&a2().principal_extension(), 1000).unwrap(),
            Finiteness::Finite(c) if c <= 5
        ));
        let plain = ExtendedMatrix::new(a2().matrix().clone()).unwrap();
        assert!(matches!(mutation_class_finiteness(&plain, 10).unwrap(), Finiteness::Finite(c) if c <= 2));
        assert!(is_finite_type(&a2(), 1000).unwrap());
        assert!(!is_finite_type(&k, 1000).unwrap());
        let cyc = ExchangeMatrix::from_rows(&[vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]]).unwrap();
        assert!(is_finite_type(&cyc, 1000).unwrap());
        let g = build_exchange_graph(&k.principal_extension(), 100).unwrap();
        assert!(!g.finite);
    }
}
