use super::{HypergraphError, UniformHypergraph, VertexSet, MAX_VERTICES};

fn check_n(n: usize) -> Result<(), HypergraphError> {
    if n > MAX_VERTICES {
        Err(HypergraphError::TooManyVertices(n))
    } else {
        Ok(())
    }
}

fn invalid(msg: String) -> HypergraphError {
    HypergraphError::InvalidParameters(msg)
}

/// The complete `r`-graph `K_s^(r)`.
pub fn complete_uniform(s: usize, r: usize) -> Result<UniformHypergraph, HypergraphError> {
    check_n(s)?;
    if r == 0 || s < r {
        return Err(invalid(format!("complete_uniform needs s >= r >= 1, got s={s}, r={r}")));
    }
    let edges = VertexSet::prefix(s).subsets_of_size(r);
    Ok(UniformHypergraph::from_sets_unchecked(s, r, edges))
}

/// Balanced partition of `0..n` into `p` contiguous parts, larger parts
/// first. Returns the part index of every vertex.
pub(crate) fn balanced_parts(n: usize, p: usize) -> Vec<usize> {
    let (base, extra) = (n / p, n % p);
    let mut part = Vec::with_capacity(n);
    for i in 0..p {
        let size = base + usize::from(i < extra);
        part.extend(std::iter::repeat_n(i, size));
    }
    part
}

/// The Turán hypergraph `T^r(n, p)`: every `r`-set meeting each part of a
/// balanced `p`-partition at most once.
pub fn turan_hypergraph(n: usize, r: usize, p: usize) -> Result<UniformHypergraph, HypergraphError> {
    check_n(n)?;
    if n == 0 || p == 0 || r == 0 {
        return Err(invalid(format!("turan_hypergraph needs n, r, p >= 1, got n={n}, r={r}, p={p}")));
    }
    let part = balanced_parts(n, p);
    let edges = VertexSet::prefix(n)
        .subsets_of_size(r)
        .into_iter()
        .filter(|e| {
            let mut seen = 0u64;
            e.iter().all(|v| {
                let bit = 1u64 << part[v];
                let fresh = seen & bit == 0;
                seen |= bit;
                fresh
            })
        })
        .collect();
    Ok(UniformHypergraph::from_sets_unchecked(n, r, edges))
}

/// The expansion `F0^{+r}`: each edge of `F0` receives `r - r0` fresh
/// vertices of its own. Fresh vertices are numbered from `|V(F0)|` upward,
/// in edge order.
pub fn expansion(f0: &UniformHypergraph, r: usize) -> Result<UniformHypergraph, HypergraphError> {
    let r0 = f0.r();
    if r < r0 {
        return Err(invalid(format!("expansion target {r} is below the pattern uniformity {r0}")));
    }
    let pad = r - r0;
    let n = f0.n() + pad * f0.edge_count();
    check_n(n)?;
    let mut next = f0.n();
    let edges = f0
        .edges()
        .iter()
        .map(|&e| {
            let mut grown = e;
            for _ in 0..pad {
                grown.insert(next);
                next += 1;
            }
            grown
        })
        .collect();
    Ok(UniformHypergraph::from_sets_unchecked(n, r, edges))
}

/// All `r`-sets on `n` vertices containing the pinned vertices `0..t`.
pub fn star_construction(n: usize, r: usize, t: usize) -> Result<UniformHypergraph, HypergraphError> {
    check_n(n)?;
    if r == 0 || t > r || r > n {
        return Err(invalid(format!("star_construction needs 0 <= t <= r <= n and r >= 1, got n={n}, r={r}, t={t}")));
    }
    let pinned = VertexSet::prefix(t);
    let free = VertexSet::prefix(n).difference(pinned);
    let edges = free.subsets_of_size(r - t).into_iter().map(|s| s.union(pinned)).collect();
    Ok(UniformHypergraph::from_sets_unchecked(n, r, edges))
}

/// Replaces every `K_r^(k)` of the `k`-graph `g` by one `r`-edge.
pub fn clique_replacement(g: &UniformHypergraph, r: usize) -> Result<UniformHypergraph, HypergraphError> {
    let k = g.r();
    if r < k {
        return Err(invalid(format!("clique size {r} is below the uniformity {k}")));
    }
    let edges = super::counting::cliques(g, r);
    Ok(UniformHypergraph::from_sets_unchecked(g.n(), r, edges))
}

/// Number of edges of `T^r(n, p)`, by elementary symmetric sums of the
/// part sizes. Independent of the explicit construction.
pub(crate) fn turan_edge_count(n: usize, r: usize, p: usize) -> u64 {
    let part = balanced_parts(n, p);
    let mut sizes = vec![0u64; p];
    for q in part {
        sizes[q] += 1;
    }
    // e_j over part sizes
    let mut e = vec![0u64; r + 1];
    e[0] = 1;
    for s in sizes {
        for j in (1..=r).rev() {
            e[j] += e[j - 1] * s;
        }
    }
    e[r]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rainbow_count_brute(n: usize, r: usize, p: usize) -> usize {
        // enumerate all r-subsets as index combinations and check parts
        let part = balanced_parts(n, p);
        let mut count = 0;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != r {
                continue;
            }
            let mut used = vec![false; p];
            let mut ok = true;
            for v in 0..n {
                if mask >> v & 1 == 1 {
                    if used[part[v]] {
                        ok = false;
                        break;
                    }
                    used[part[v]] = true;
                }
            }
            if ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn complete_counts() {
        assert_eq!(complete_uniform(4, 2).unwrap().edge_count(), 6);
        assert_eq!(complete_uniform(5, 3).unwrap().edge_count(), 10);
        assert_eq!(complete_uniform(3, 3).unwrap().edge_count(), 1);
        assert!(complete_uniform(2, 3).is_err());
    }

    #[test]
    fn turan_examples() {
        assert_eq!(balanced_parts(7, 4), vec![0, 0, 1, 1, 2, 2, 3]);
        assert_eq!(turan_hypergraph(7, 3, 4).unwrap().edge_count(), 20);
        let k22 = turan_hypergraph(4, 2, 2).unwrap();
        assert_eq!(k22.edge_lists(), vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]);
        assert_eq!(turan_hypergraph(5, 3, 2).unwrap().edge_count(), 0);
    }

    #[test]
    fn turan_matches_brute_force_grid() {
        for n in 1..=10 {
            for r in 1..=4 {
                for p in 1..=5 {
                    let expected = rainbow_count_brute(n, r, p);
                    let t = turan_hypergraph(n, r, p).unwrap();
                    assert_eq!(t.edge_count(), expected, "n={n} r={r} p={p}");
                    assert_eq!(turan_edge_count(n, r, p) as usize, expected);
                }
            }
        }
    }

    #[test]
    fn expansion_examples() {
        let k3 = UniformHypergraph::from_lists(3, 2, &[vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        let e = expansion(&k3, 3).unwrap();
        assert_eq!(e.n(), 6);
        assert_eq!(e.edge_lists(), vec![vec![0, 1, 3], vec![0, 2, 4], vec![1, 2, 5]]);

        let k2 = UniformHypergraph::from_lists(2, 2, &[vec![0, 1]]).unwrap();
        assert_eq!(expansion(&k2, 4).unwrap().edge_lists(), vec![vec![0, 1, 2, 3]]);

        let p3 = UniformHypergraph::from_lists(3, 2, &[vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(expansion(&p3, 3).unwrap().edge_lists(), vec![vec![0, 1, 3], vec![1, 2, 4]]);
        assert!(expansion(&p3, 1).is_err());
    }

    #[test]
    fn star_examples() {
        assert_eq!(star_construction(5, 3, 1).unwrap().edge_count(), 6);
        assert_eq!(star_construction(5, 3, 0).unwrap().edge_count(), 10);
        assert_eq!(star_construction(4, 3, 3).unwrap().edge_lists(), vec![vec![0, 1, 2]]);
        assert!(star_construction(4, 3, 4).is_err());
        assert!(star_construction(2, 3, 1).is_err());
    }

    #[test]
    fn clique_replacement_examples() {
        let k5 = complete_uniform(5, 2).unwrap();
        assert_eq!(clique_replacement(&k5, 3).unwrap().edge_count(), 10);
        let c4 = UniformHypergraph::from_lists(4, 2, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
        assert_eq!(clique_replacement(&c4, 3).unwrap().edge_count(), 0);
        let k43 = complete_uniform(4, 3).unwrap();
        assert_eq!(clique_replacement(&k43, 4).unwrap().edge_lists(), vec![vec![0, 1, 2, 3]]);
        assert!(clique_replacement(&k43, 2).is_err());
    }

    #[test]
    fn clique_replacement_of_complete_is_complete() {
        for s in 1..=7 {
            for k in 1..=s {
                for r in k..=s {
                    let g = complete_uniform(s, k).unwrap();
                    assert_eq!(clique_replacement(&g, r).unwrap(), complete_uniform(s, r).unwrap());
                }
            }
        }
    }
}
