//! Induced subgraph search by backtracking with degree pruning.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::graph::Graph;

/// Precomputed data for repeatedly locating induced copies of one pattern.
#[derive(Clone, Debug)]
pub struct Matcher {
    pattern: Graph,
    adj: Vec<Vec<bool>>,
    degree: Vec<usize>,
}

/// One step of a search plan: which pattern vertex to place, and an already
/// placed pattern neighbour whose host image supplies the candidates.
#[derive(Clone, Copy, Debug)]
struct Step {
    vertex: usize,
    anchor: Option<usize>,
}

impl Matcher {
    pub fn new(pattern: &Graph) -> Self {
        let p = pattern.vertex_count();
        let adj = (0..p).map(|a| (0..p).map(|b| pattern.has_edge(a, b)).collect()).collect();
        let degree = (0..p).map(|a| pattern.degree(a)).collect();
        Matcher { pattern: pattern.clone(), adj, degree }
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    /// Greedy order: most already-placed neighbours first, then highest degree.
    fn plan(&self, fixed: &[usize]) -> Vec<Step> {
        let p = self.pattern.vertex_count();
        let mut placed = vec![false; p];
        for &a in fixed {
            placed[a] = true;
        }
        let mut order = Vec::with_capacity(p - fixed.len());
        while order.len() + fixed.len() < p {
            let next = (0..p)
                .filter(|&a| !placed[a])
                .max_by_key(|&a| {
                    let links = (0..p).filter(|&b| placed[b] && self.adj[a][b]).count();
                    (links, self.degree[a], std::cmp::Reverse(a))
                })
                .expect("unplaced vertex exists");
            let anchor = (0..p).find(|&b| placed[b] && self.adj[next][b]);
            placed[next] = true;
            order.push(Step { vertex: next, anchor });
        }
        order
    }

    /// Calls `visit` with every embedding (pattern vertex -> host vertex) that
    /// extends the pre-assigned `fixed` pairs, until it breaks.
    fn embeddings<B>(
        &self,
        host: &Graph,
        fixed: &[(usize, usize)],
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let p = self.pattern.vertex_count();
        let mut map = vec![usize::MAX; p];
        let mut used = BTreeSet::new();
        for &(a, h) in fixed {
            if h >= host.vertex_count() || host.degree(h) < self.degree[a] || !used.insert(h) {
                return ControlFlow::Continue(());
            }
            map[a] = h;
        }
        for (i, &(a, h)) in fixed.iter().enumerate() {
            for &(b, g) in &fixed[..i] {
                if host.has_edge(h, g) != self.adj[a][b] {
                    return ControlFlow::Continue(());
                }
            }
        }
        let fixed_vertices: Vec<usize> = fixed.iter().map(|&(a, _)| a).collect();
        let plan = self.plan(&fixed_vertices);
        let mut used: Vec<bool> = vec![false; host.vertex_count()];
        for &(_, h) in fixed {
            used[h] = true;
        }
        let mut placed: Vec<usize> = fixed_vertices;
        self.extend(host, &plan, 0, &mut map, &mut used, &mut placed, visit)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend<B>(
        &self,
        host: &Graph,
        plan: &[Step],
        depth: usize,
        map: &mut [usize],
        used: &mut [bool],
        placed: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let Some(step) = plan.get(depth) else {
            return visit(map);
        };
        let a = step.vertex;
        let all: Vec<usize>;
        let candidates: &[usize] = match step.anchor {
            Some(b) => host.neighbors(map[b]),
            None => {
                all = (0..host.vertex_count()).collect();
                &all
            }
        };
        for &h in candidates {
            if used[h] || host.degree(h) < self.degree[a] {
                continue;
            }
            if !placed.iter().all(|&b| host.has_edge(h, map[b]) == self.adj[a][b]) {
                continue;
            }
            map[a] = h;
            used[h] = true;
            placed.push(a);
            let flow = self.extend(host, plan, depth + 1, map, used, placed, visit);
            placed.pop();
            used[h] = false;
            map[a] = usize::MAX;
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// Some embedding of the pattern as an induced subgraph.
    pub fn find(&self, host: &Graph) -> Option<Vec<usize>> {
        if self.pattern.vertex_count() > host.vertex_count() {
            return None;
        }
        match self.embeddings(host, &[], &mut |m| ControlFlow::Break(m.to_vec())) {
            ControlFlow::Break(m) => Some(m),
            ControlFlow::Continue(()) => None,
        }
    }

    /// All vertex sets inducing a copy of the pattern, sorted and deduplicated.
    pub fn all(&self, host: &Graph) -> Vec<Vec<usize>> {
        let mut sets = BTreeSet::new();
        if self.pattern.vertex_count() <= host.vertex_count() {
            let _ = self.embeddings::<()>(host, &[], &mut |m| {
                sets.insert(sorted(m));
                ControlFlow::Continue(())
            });
        }
        sets.into_iter().collect()
    }

    /// Vertex sets of induced copies that contain both `u` and `v`.
    pub fn through(&self, host: &Graph, u: usize, v: usize) -> Vec<Vec<usize>> {
        let p = self.pattern.vertex_count();
        let mut sets = BTreeSet::new();
        let linked = host.has_edge(u, v);
        for a in 0..p {
            for b in 0..p {
                if a == b || self.adj[a][b] != linked {
                    continue;
                }
                let _ = self.embeddings::<()>(host, &[(a, u), (b, v)], &mut |m| {
                    sets.insert(sorted(m));
                    ControlFlow::Continue(())
                });
            }
        }
        sets.into_iter().collect()
    }
}

fn sorted(m: &[usize]) -> Vec<usize> {
    let mut s = m.to_vec();
    s.sort_unstable();
    s
}

/// Some embedding of `pattern` into `host` as an induced subgraph, given as
/// the host vertex assigned to each pattern vertex.
pub fn find_induced_copy(host: &Graph, pattern: &Graph) -> Option<Vec<usize>> {
    Matcher::new(pattern).find(host)
}

/// Every vertex set of `host` that induces a copy of `pattern`, in
/// lexicographic order.
pub fn enumerate_induced_copies(host: &Graph, pattern: &Graph) -> Vec<Vec<usize>> {
    Matcher::new(pattern).all(host)
}

pub fn is_h_free(host: &Graph, pattern: &Graph) -> bool {
    find_induced_copy(host, pattern).is_none()
}
