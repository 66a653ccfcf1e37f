//! Baseline centralities over the monthly pass-ratio network.
//!
//! The ratio network at month t has an edge wherever the decayed total
//! weight is positive, weighted by `C_pass[t,i,j] / C_tot[t,i,j]`. Zero
//! ratios (shared bills, none passed) are kept as zero-weight edges: they
//! count for connectivity and appear in the eigenvector problem, but they
//! are not traversable when shortest-path distances use reciprocal weights.
//!
//! All three measures are computed on the largest connected component;
//! legislators outside it score 0 at that month.

use rayon::prelude::*;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::intern::{Interner, LegId};
use crate::series::ScoreSeries;
use crate::tempnet::{DecayedTensor, PairKey};
use crate::time::MonthIndex;

/// Sparse symmetric weighted network for one month; weights in [0, 1].
#[derive(Debug, Clone)]
pub struct RatioNetwork {
    pub t: MonthIndex,
    keys: Vec<PairKey>,
    weights: Vec<f64>,
}

impl RatioNetwork {
    /// Build a network from raw undirected edges. Pairs must be unique
    /// after canonical ordering. Primarily for tests and tools; pipeline
    /// code goes through [`ratio_network`].
    pub fn from_edges(t: MonthIndex, edges: impl IntoIterator<Item = (u32, u32, f64)>) -> Self {
        let mut pairs: Vec<(PairKey, f64)> = edges
            .into_iter()
            .map(|(a, b, w)| (PairKey::new(LegId(a), LegId(b)), w))
            .collect();
        pairs.sort_unstable_by_key(|&(k, _)| k);
        debug_assert!(
            pairs.windows(2).all(|w| w[0].0 != w[1].0),
            "duplicate edges"
        );
        let (keys, weights) = pairs.into_iter().unzip();
        Self { t, keys, weights }
    }

    pub fn edge_count(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn weight(&self, a: LegId, b: LegId) -> Option<f64> {
        self.keys
            .binary_search(&PairKey::new(a, b))
            .ok()
            .map(|pos| self.weights[pos])
    }

    pub fn iter(&self) -> impl Iterator<Item = (PairKey, f64)> + '_ {
        self.keys.iter().copied().zip(self.weights.iter().copied())
    }
}

/// Divide decayed pass weight by decayed total weight at month t. An edge
/// exists exactly where the total weight is positive.
pub fn ratio_network(tensor: &DecayedTensor, t: MonthIndex) -> RatioNetwork {
    let month = tensor.month(t);
    let mut keys = Vec::with_capacity(month.len());
    let mut weights = Vec::with_capacity(month.len());
    for (key, pass, tot) in month.iter() {
        if tot > 0.0 {
            keys.push(key);
            weights.push(pass / tot);
        }
    }
    RatioNetwork { t, keys, weights }
}

/// The largest connected component of a month's ratio network, with its
/// induced adjacency in CSR form over local indices. Local index order
/// follows ascending `LegId`.
#[derive(Debug, Clone)]
pub struct LccView {
    pub t: MonthIndex,
    members: Vec<LegId>,
    offsets: Vec<usize>,
    neighbors: Vec<(u32, f64)>,
}

impl LccView {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[LegId] {
        &self.members
    }

    pub fn neighbors(&self, local: usize) -> &[(u32, f64)] {
        &self.neighbors[self.offsets[local]..self.offsets[local + 1]]
    }

    /// Sum of incident edge weights of a local node.
    pub fn strength_of(&self, local: usize) -> f64 {
        self.neighbors(local).iter().map(|&(_, w)| w).sum()
    }
}

/// Connected components over edge presence (weights ignored, zero-weight
/// edges connect). Returns the largest; among equal-sized components the
/// one containing the lexicographically smallest canonical id wins. An
/// empty network yields an empty view.
pub fn largest_component(net: &RatioNetwork, interner: &Interner) -> LccView {
    let mut nodes: Vec<LegId> = Vec::new();
    for (key, _) in net.iter() {
        let (a, b) = key.nodes();
        nodes.push(a);
        nodes.push(b);
    }
    nodes.sort_unstable();
    nodes.dedup();
    if nodes.is_empty() {
        return LccView {
            t: net.t,
            members: Vec::new(),
            offsets: vec![0],
            neighbors: Vec::new(),
        };
    }

    let local_of = |id: LegId| nodes.binary_search(&id).expect("endpoint interned");
    let n = nodes.len();
    let mut adj: Vec<Vec<(u32, f64)>> = vec![Vec::new(); n];
    for (key, w) in net.iter() {
        let (a, b) = key.nodes();
        let (la, lb) = (local_of(a), local_of(b));
        adj[la].push((lb as u32, w));
        adj[lb].push((la as u32, w));
    }

    // Label components by BFS in node order.
    let mut component = vec![usize::MAX; n];
    let mut n_components = 0;
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let label = n_components;
        n_components += 1;
        let mut queue = std::collections::VecDeque::from([start]);
        component[start] = label;
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &adj[u] {
                if component[v as usize] == usize::MAX {
                    component[v as usize] = label;
                    queue.push_back(v as usize);
                }
            }
        }
    }

    let mut sizes = vec![0usize; n_components];
    for &c in &component {
        sizes[c] += 1;
    }
    let max_size = *sizes.iter().max().unwrap();
    let mut best: Option<(usize, &str)> = None;
    for (c, &size) in sizes.iter().enumerate() {
        if size != max_size {
            continue;
        }
        let min_name = (0..n)
            .filter(|&i| component[i] == c)
            .map(|i| interner.name(nodes[i]))
            .min()
            .expect("nonempty component");
        if best.is_none_or(|(_, name)| min_name < name) {
            best = Some((c, min_name));
        }
    }
    let chosen = best.expect("at least one component").0;

    let members: Vec<LegId> = (0..n)
        .filter(|&i| component[i] == chosen)
        .map(|i| nodes[i])
        .collect();
    let member_local = |id: LegId| members.binary_search(&id).expect("member");
    let mut offsets = Vec::with_capacity(members.len() + 1);
    let mut neighbors = Vec::new();
    offsets.push(0);
    for &id in &members {
        let old_local = local_of(id);
        let mut row: Vec<(u32, f64)> = adj[old_local]
            .iter()
            .map(|&(v, w)| (member_local(nodes[v as usize]) as u32, w))
            .collect();
        row.sort_unstable_by_key(|&(v, _)| v);
        neighbors.extend(row);
        offsets.push(neighbors.len());
    }
    LccView {
        t: net.t,
        members,
        offsets,
        neighbors,
    }
}

/// Leading-eigenvector centrality of the component by power iteration.
///
/// Iterates `x <- (W + sigma I) x` from the uniform positive vector, where
/// `sigma` is the mean node strength. The shift leaves eigenvectors
/// unchanged, keeps the iteration scale-covariant, and makes the leading
/// eigenvalue strictly dominant (bipartite components would otherwise
/// oscillate). Converged when successive normalized iterates differ by
/// less than `tol` in the largest entry; the result has unit Euclidean
/// norm and nonnegative entries.
pub fn eigenvector(lcc: &LccView, tol: f64, max_iter: usize) -> Result<Vec<f64>> {
    let n = lcc.len();
    if n == 0 {
        return Err(Error::Compute(format!(
            "month {}: eigenvector centrality of an empty component",
            lcc.t
        )));
    }
    let strengths: Vec<f64> = (0..n).map(|i| lcc.strength_of(i)).collect();
    let total: f64 = strengths.iter().sum();
    if total <= 0.0 {
        return Err(Error::Compute(format!(
            "month {}: all edge weights are zero, no leading eigenvector direction",
            lcc.t
        )));
    }
    let sigma = total / n as f64;

    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut y = vec![0.0; n];
    for _ in 0..max_iter {
        for i in 0..n {
            let mut acc = sigma * x[i];
            for &(j, w) in lcc.neighbors(i) {
                acc += w * x[j as usize];
            }
            y[i] = acc;
        }
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        debug_assert!(norm > 0.0);
        let mut diff = 0.0f64;
        for i in 0..n {
            y[i] /= norm;
            diff = diff.max((y[i] - x[i]).abs());
        }
        std::mem::swap(&mut x, &mut y);
        if diff < tol {
            return Ok(x);
        }
    }
    Err(Error::Compute(format!(
        "month {}: power iteration did not converge within {max_iter} iterations",
        lcc.t
    )))
}

/// Distance convention for closeness centrality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosenessDistance {
    /// Edge length 1/weight; zero-weight edges are not traversable.
    Reciprocal,
    /// Every edge (including zero-weight) is one hop.
    Hops,
}

impl std::str::FromStr for ClosenessDistance {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "reciprocal" => Ok(Self::Reciprocal),
            "hops" => Ok(Self::Hops),
            other => Err(format!("unknown closeness distance: {other:?}")),
        }
    }
}

/// Closeness centrality `Cl(i) = R_i / sum_j d(j, i)` where the sum runs
/// over the R_i nodes reachable from i via traversable edges. On a fully
/// reachable component `R_i = N_lcc - 1`, the textbook form; unreachable
/// nodes (possible when zero-weight edges are non-traversable) shrink the
/// numerator instead of adding infinite terms. Nodes that reach nothing
/// score 0.
pub fn closeness(lcc: &LccView, distance: ClosenessDistance) -> Vec<f64> {
    let n = lcc.len();
    (0..n)
        .map(|source| {
            let dist = match distance {
                ClosenessDistance::Reciprocal => dijkstra(lcc, source),
                ClosenessDistance::Hops => bfs_hops(lcc, source),
            };
            let mut sum = 0.0;
            let mut reached = 0usize;
            for (i, &d) in dist.iter().enumerate() {
                if i != source && d.is_finite() {
                    sum += d;
                    reached += 1;
                }
            }
            if reached > 0 && sum > 0.0 {
                reached as f64 / sum
            } else {
                0.0
            }
        })
        .collect()
}

fn dijkstra(lcc: &LccView, source: usize) -> Vec<f64> {
    let n = lcc.len();
    let mut dist = vec![f64::INFINITY; n];
    dist[source] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, source as u32)));
    while let Some(Reverse((bits, u))) = heap.pop() {
        let d = f64::from_bits(bits);
        let u = u as usize;
        if d > dist[u] {
            continue;
        }
        for &(v, w) in lcc.neighbors(u) {
            if w <= 0.0 {
                continue;
            }
            let nd = d + 1.0 / w;
            if nd < dist[v as usize] {
                dist[v as usize] = nd;
                // Nonnegative finite distances order correctly by their bits.
                heap.push(Reverse((nd.to_bits(), v)));
            }
        }
    }
    dist
}

fn bfs_hops(lcc: &LccView, source: usize) -> Vec<f64> {
    let n = lcc.len();
    let mut dist = vec![f64::INFINITY; n];
    dist[source] = 0.0;
    let mut queue = std::collections::VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in lcc.neighbors(u) {
            let v = v as usize;
            if dist[v].is_infinite() {
                dist[v] = dist[u] + 1.0;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Strength centrality: sum of incident edge weights within the component.
pub fn strength(lcc: &LccView) -> Vec<f64> {
    (0..lcc.len()).map(|i| lcc.strength_of(i)).collect()
}

/// Per-month per-legislator centrality values; legislators outside a
/// month's largest component are absent (and read as 0).
pub type CentralitySeries = ScoreSeries;

/// Same contract as [`crate::influence::bill_scores`] with a centrality
/// series substituted; out-of-component participants contribute 0.
pub use crate::influence::bill_scores as centrality_bill_scores;

#[derive(Debug, Clone, Copy)]
pub struct CentralityOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub distance: ClosenessDistance,
}

impl Default for CentralityOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 10_000,
            distance: ClosenessDistance::Reciprocal,
        }
    }
}

/// The requested centrality series for every month of a decayed tensor.
#[derive(Debug)]
pub struct CentralitySet {
    pub eigenvector: Option<CentralitySeries>,
    pub closeness: Option<CentralitySeries>,
    pub strength: Option<CentralitySeries>,
    /// Months skipped for eigenvector centrality because the component had
    /// no positive weight (no direction to converge to).
    pub warnings: Vec<String>,
}

/// Compute the requested measures month by month (months run in parallel).
///
/// An empty month yields empty values for every measure. A month whose
/// component has only zero weights yields empty eigenvector values with a
/// warning; closeness and strength are still defined (all zeros there).
/// Power-iteration non-convergence is a hard error naming the month.
pub fn centrality_series(
    tensor: &DecayedTensor,
    want_eigenvector: bool,
    want_closeness: bool,
    want_strength: bool,
    opts: CentralityOptions,
) -> Result<CentralitySet> {
    struct MonthOut {
        eig: Option<Vec<(LegId, f64)>>,
        clo: Option<Vec<(LegId, f64)>>,
        str_: Option<Vec<(LegId, f64)>>,
        warning: Option<String>,
    }

    let months: Vec<MonthIndex> = tensor.range.iter().collect();
    let per_month: Vec<Result<MonthOut>> = months
        .par_iter()
        .map(|&t| {
            let net = ratio_network(tensor, t);
            let lcc = largest_component(&net, &tensor.interner);
            let pair_up = |values: Vec<f64>| -> Vec<(LegId, f64)> {
                lcc.members().iter().copied().zip(values).collect()
            };
            let mut out = MonthOut {
                eig: None,
                clo: None,
                str_: None,
                warning: None,
            };
            if lcc.is_empty() {
                if want_eigenvector {
                    out.eig = Some(Vec::new());
                }
                if want_closeness {
                    out.clo = Some(Vec::new());
                }
                if want_strength {
                    out.str_ = Some(Vec::new());
                }
                return Ok(out);
            }
            if want_eigenvector {
                let positive = (0..lcc.len()).any(|i| lcc.strength_of(i) > 0.0);
                if positive {
                    out.eig = Some(pair_up(eigenvector(&lcc, opts.tol, opts.max_iter)?));
                } else {
                    out.eig = Some(Vec::new());
                    out.warning = Some(format!(
                        "month {t}: component has no positive weight; eigenvector values skipped"
                    ));
                }
            }
            if want_closeness {
                out.clo = Some(pair_up(closeness(&lcc, opts.distance)));
            }
            if want_strength {
                out.str_ = Some(pair_up(strength(&lcc)));
            }
            Ok(out)
        })
        .collect();

    let mut eig_months = Vec::with_capacity(months.len());
    let mut clo_months = Vec::with_capacity(months.len());
    let mut str_months = Vec::with_capacity(months.len());
    let mut warnings = Vec::new();
    for res in per_month {
        let m = res?;
        if let Some(w) = m.warning {
            warnings.push(w);
        }
        eig_months.push(m.eig.unwrap_or_default());
        clo_months.push(m.clo.unwrap_or_default());
        str_months.push(m.str_.unwrap_or_default());
    }
    let series = |months: Vec<Vec<(LegId, f64)>>| {
        ScoreSeries::new(tensor.range, tensor.interner.clone(), months)
    };
    Ok(CentralitySet {
        eigenvector: want_eigenvector.then(|| series(eig_months)),
        closeness: want_closeness.then(|| series(clo_months)),
        strength: want_strength.then(|| series(str_months)),
        warnings,
    })
}
