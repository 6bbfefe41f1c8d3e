use super::Hypergraph;

/// Least number of colors such that no edge is monochromatic. For a
/// 2-graph this is the ordinary chromatic number. An edgeless graph on at
/// least one vertex needs one color; the empty graph needs none.
///
/// # Panics
///
/// If some edge has a single vertex (no proper coloring exists).
pub fn chromatic_number(g: &Hypergraph) -> usize {
    assert!(g.edges().iter().all(|e| e.len() >= 2), "singleton edges cannot be properly colored");
    let n = g.n();
    if n == 0 {
        return 0;
    }
    // edges checked once their largest vertex is colored
    let mut closing = vec![Vec::new(); n];
    for &e in g.edges() {
        closing[e.max().expect("nonempty edge")].push(e);
    }
    (1..=n).find(|&k| colorable(&closing, k, &mut vec![0; n], 0, 0)).expect("n colors always suffice")
}

fn colorable(closing: &[Vec<super::VertexSet>], k: usize, color: &mut [usize], v: usize, used: usize) -> bool {
    if v == color.len() {
        return true;
    }
    // new colors are introduced in order, so at most `used + 1` choices
    for c in 0..k.min(used + 1) {
        color[v] = c;
        let ok = closing[v].iter().all(|e| e.iter().any(|u| color[u] != c));
        if ok && colorable(closing, k, color, v + 1, used.max(c + 1)) {
            return true;
        }
    }
    false
}
