//! Small graph products used by tests, examples and the CLI.

use std::sync::Arc;

use crate::groups::{FiniteGroupTable, VertexGroup};

use super::GraphProductSpec;

fn finite(name: &str) -> VertexGroup {
    VertexGroup::finite_full(Arc::new(FiniteGroupTable::builtin(name).expect("builtin group")))
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// `Z2 x (Z2 * Z2)`: three involutions `a1, a2, a3` with `a1` central.
pub fn racg() -> GraphProductSpec {
    let vs = (1..=3)
        .map(|i| finite("Z2").renamed(vec![format!("a{i}")]).expect("one letter"))
        .collect();
    GraphProductSpec::new(vs, &[(0, 1), (0, 2)], None).expect("valid")
}

/// `Z2 * Z3` over `{a, b, c}` with `c = b^-1`.
pub fn psl2() -> GraphProductSpec {
    let a = finite("Z2");
    let b = finite("Z3").renamed(names(&["b", "c"])).expect("two letters");
    GraphProductSpec::new(vec![a, b], &[], None).expect("valid")
}

/// `F2 = Z * Z` over `{a, a^-1, b, b^-1}`.
pub fn f2() -> GraphProductSpec {
    let a = VertexGroup::infinite_cyclic(None).expect("default names");
    let b = VertexGroup::infinite_cyclic(Some(["b".into(), "b^-1".into()])).expect("names");
    GraphProductSpec::new(vec![a, b], &[], None).expect("valid")
}

/// One finite vertex with every non-identity element as a letter.
pub fn single_finite(name: &str) -> GraphProductSpec {
    GraphProductSpec::new(vec![finite(name)], &[], None).expect("valid")
}

pub fn single_z() -> GraphProductSpec {
    GraphProductSpec::new(vec![VertexGroup::infinite_cyclic(None).expect("default names")], &[], None)
        .expect("valid")
}

/// Free (`edge = false`) or direct product of two builtin finite groups.
pub fn pair(g: &str, h: &str, edge: bool) -> GraphProductSpec {
    let edges: &[(usize, usize)] = if edge { &[(0, 1)] } else { &[] };
    GraphProductSpec::auto_named(vec![finite(g), finite(h)], edges).expect("valid")
}

/// Vertex labels and edges `(i, j)` with `i < j`.
pub type LabelledGraph = (Vec<usize>, Vec<(usize, usize)>);

/// Vertex-labelled simplicial graphs on `n` vertices, labels in
/// `0..labels`, one per isomorphism class.
pub fn labelled_graphs(n: usize, labels: usize) -> Vec<LabelledGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let canon = |lab: &[usize], edges: u32| -> (Vec<usize>, u32) {
        perms
            .iter()
            .map(|p| {
                let mut l = vec![0; n];
                for v in 0..n {
                    l[p[v]] = lab[v];
                }
                let mut e = 0u32;
                for (b, &(i, j)) in pairs.iter().enumerate() {
                    if edges >> b & 1 == 1 {
                        let (x, y) = (p[i].min(p[j]), p[i].max(p[j]));
                        e |= 1 << pairs.iter().position(|&q| q == (x, y)).expect("pair");
                    }
                }
                (l, e)
            })
            .min()
            .expect("at least one permutation")
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut lab = vec![0; n];
    loop {
        for edges in 0..1u32 << pairs.len() {
            seen.insert(canon(&lab, edges));
        }
        let mut i = 0;
        while i < n && lab[i] + 1 == labels {
            lab[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        lab[i] += 1;
    }
    seen.into_iter()
        .map(|(l, e)| (l, pairs.iter().enumerate().filter(|(b, _)| e >> b & 1 == 1).map(|(_, &p)| p).collect()))
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Graph products over `labelled_graphs` with the named builtin finite
/// vertex groups (full generating sets).
pub fn finite_sweep(n: usize, pool: &[&str]) -> Vec<GraphProductSpec> {
    labelled_graphs(n, pool.len())
        .into_iter()
        .map(|(l, e)| GraphProductSpec::auto_named(l.iter().map(|&g| finite(pool[g])).collect(), &e).expect("valid"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_counts() {
        // unlabelled graphs on 1..4 vertices: 1, 2, 4, 11
        let counts: Vec<usize> = (1..=4).map(|n| labelled_graphs(n, 1).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11]);
        assert_eq!(labelled_graphs(2, 2).len(), 6);
    }
}
