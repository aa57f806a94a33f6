use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Complete graph on `n` vertices with a non-negative integer weight on
/// every edge. Vertices are `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightedGraph {
    n: usize,
    weights: Vec<u32>,
}

/// Position of edge `(i, j)`, `i < j`, in row order.
pub(crate) fn edge_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, t| acc * (n - t) / (t + 1))
}

impl WeightedGraph {
    /// All weights zero.
    pub fn new(n: usize) -> Self {
        WeightedGraph {
            n,
            weights: alloc::vec![0; n * n.saturating_sub(1) / 2],
        }
    }

    /// Weights listed in row order `(0,1), (0,2), .., (1,2), ..`.
    pub fn from_weights(n: usize, weights: Vec<u32>) -> Result<Self> {
        if weights.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::InvalidParameter(alloc::format!(
                "{} weights given for {} vertices",
                weights.len(),
                n
            )));
        }
        Ok(WeightedGraph { n, weights })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Weights in row order.
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.weights[edge_index(self.n, i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, w: u32) {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let e = edge_index(self.n, i, j);
        self.weights[e] = w;
    }

    /// `(i, j, weight)` in row order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| (i, j, self.get(i, j))))
    }

    /// Sum of the weights at `v`.
    pub fn degree(&self, v: usize) -> u64 {
        (0..self.n)
            .filter(|&u| u != v)
            .map(|u| self.get(u, v) as u64)
            .sum()
    }

    /// Total weight of the subgraph spanned by `vertices`.
    pub fn span_weight(&self, vertices: &[usize]) -> u64 {
        let mut s = 0;
        for (t, &u) in vertices.iter().enumerate() {
            for &v in &vertices[t + 1..] {
                s += self.get(u, v) as u64;
            }
        }
        s
    }
}

impl fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightedGraph({}; {:?})", self.n, self.weights)
    }
}

pub fn total_weight(g: &WeightedGraph) -> u64 {
    g.weights.iter().map(|&w| w as u64).sum()
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(alloc::format!(
            "need 1 <= k <= n, got k = {} and n = {}",
            k,
            n
        )));
    }
    Ok(())
}

/// Calls `f` on every `k`-subset of `0..n`, in lexicographic order.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut s: Vec<usize> = (0..k).collect();
    if k > n {
        return;
    }
    loop {
        f(&s);
        let mut t = k;
        while t > 0 && s[t - 1] == n - k + t - 1 {
            t -= 1;
        }
        if t == 0 {
            return;
        }
        s[t - 1] += 1;
        for u in t..k {
            s[u] = s[u - 1] + 1;
        }
    }
}

/// Smallest weight of a subgraph spanned by `k` vertices.
pub fn min_k_subgraph_weight(g: &WeightedGraph, k: usize) -> Result<u64> {
    check_k(g.n, k)?;
    let mut best = u64::MAX;
    for_each_subset(g.n, k, |s| best = best.min(g.span_weight(s)));
    Ok(best)
}

/// True iff every `k` vertices span weight at least `w`.
pub fn is_member(g: &WeightedGraph, k: usize, w: u64) -> Result<bool> {
    Ok(min_k_subgraph_weight(g, k)? >= w)
}

fn check_four(n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::InvalidParameter(alloc::format!(
            "need n >= 4, got {}",
            n
        )));
    }
    Ok(())
}

/// `2·C(⌈(n−1)/3⌉, 2) + C(⌊(2n+1)/3⌋, 2)`, the weight of [`phi4_witness`].
pub fn phi4_formula(n: usize) -> Result<u64> {
    check_four(n)?;
    let a = (n as u64 + 1) / 3;
    let b = (2 * n as u64 + 1) / 3;
    Ok(2 * binomial(a, 2) + binomial(b, 2))
}

/// `⌈(n−1)/3⌉` vertices joined by weight 2, the rest joined by weight 1,
/// nothing between the two groups.
pub fn phi4_witness(n: usize) -> Result<WeightedGraph> {
    check_four(n)?;
    let a = (n + 1) / 3;
    let mut g = WeightedGraph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if j < a {
                g.set(i, j, 2);
            } else if i >= a {
                g.set(i, j, 1);
            }
        }
    }
    Ok(g)
}

/// Vertices split into `parts` near-equal groups with weight `w` inside a
/// group: every `parts + 1` vertices meet some group twice.
pub fn partition_graph(n: usize, parts: usize, w: u32) -> WeightedGraph {
    let mut g = WeightedGraph::new(n);
    let parts = parts.max(1);
    for i in 0..n {
        for j in i + 1..n {
            if i % parts == j % parts {
                g.set(i, j, w);
            }
        }
    }
    g
}

/// A vertex `v` with `3·d(v) ≥ 2n − 4`, for members of `Φ(n, 4, 3)` with
/// `n ≥ 5`.
pub fn degree_bound_witness(g: &WeightedGraph) -> Result<usize> {
    let n = g.n;
    if n < 5 {
        return Err(Error::InvalidParameter(alloc::format!(
            "need n >= 5, got {}",
            n
        )));
    }
    if !is_member(g, 4, 3)? {
        return Err(Error::InvalidParameter(
            "some four vertices span weight below 3".into(),
        ));
    }
    (0..n)
        .find(|&v| 3 * g.degree(v) >= 2 * n as u64 - 4)
        .ok_or_else(|| Error::InvalidParameter("no vertex reaches the degree bound".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_indices_follow_row_order() {
        let n = 6;
        let mut e = 0;
        for i in 0..n {
            for j in i + 1..n {
                assert_eq!(edge_index(n, i, j), e);
                e += 1;
            }
        }
    }

    #[test]
    fn subsets_are_counted() {
        let mut c = 0;
        for_each_subset(7, 3, |_| c += 1);
        assert_eq!(c, 35);
    }

    #[test]
    fn four_vertex_witness() {
        let g = phi4_witness(4).unwrap();
        assert_eq!(min_k_subgraph_weight(&g, 4).unwrap(), 3);
        assert_eq!(total_weight(&g), 3);
    }

    #[test]
    fn zero_and_complete_graphs() {
        let z = WeightedGraph::new(5);
        assert_eq!(min_k_subgraph_weight(&z, 4).unwrap(), 0);
        assert!(!is_member(&z, 4, 3).unwrap());
        let mut ones = WeightedGraph::new(6);
        for i in 0..6 {
            for j in i + 1..6 {
                ones.set(i, j, 1);
            }
        }
        assert_eq!(min_k_subgraph_weight(&ones, 3).unwrap(), 3);
        assert!(min_k_subgraph_weight(&ones, 0).is_err());
        assert!(min_k_subgraph_weight(&ones, 7).is_err());
    }

    #[test]
    fn witness_weight_at_eight() {
        let g = phi4_witness(8).unwrap();
        assert_eq!(total_weight(&g), 16);
        assert_eq!(phi4_formula(8).unwrap(), 16);
        for v in 0..8 {
            assert_eq!(g.degree(v), 4);
        }
    }

    #[test]
    fn witnesses_are_members_with_formula_weight() {
        for n in 4..=12 {
            let g = phi4_witness(n).unwrap();
            assert!(is_member(&g, 4, 3).unwrap(), "n = {}", n);
            let f = phi4_formula(n).unwrap();
            assert_eq!(total_weight(&g), f);
            let nn = n as u64;
            assert_eq!(f, (nn * (nn - 2)).div_ceil(3));
        }
        assert!(phi4_witness(3).is_err());
    }

    #[test]
    fn degree_bound_on_witnesses() {
        assert_eq!(phi4_witness(5).unwrap().degree(0), 2);
        for n in 5..=10 {
            let g = phi4_witness(n).unwrap();
            let v = degree_bound_witness(&g).unwrap();
            assert!(3 * g.degree(v) >= 2 * n as u64 - 4);
        }
        assert!(degree_bound_witness(&WeightedGraph::new(6)).is_err());
        assert!(degree_bound_witness(&phi4_witness(4).unwrap()).is_err());
    }

    #[test]
    fn partition_graphs_are_members() {
        for n in 3..=9 {
            for parts in 1..=4 {
                let g = partition_graph(n, parts, 2);
                if parts < n {
                    assert!(is_member(&g, parts + 1, 2).unwrap());
                }
            }
        }
    }
}
