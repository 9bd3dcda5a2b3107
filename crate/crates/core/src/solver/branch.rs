use super::SolveResult;
use crate::graph::{iter_bits, Graph, VertexSet};

/// Default limit on branch expansions.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Branch and bound over connected induced trees.
///
/// A tree `T` is grown one vertex at a time. `C` holds the vertices with
/// exactly one neighbour in `T` that are still allowed, `U` the allowed
/// vertices with no neighbour in `T`. Everything else is excluded for the
/// rest of the branch. Each tree is generated from its smallest vertex only.
///
/// If more than `budget` expansions would be needed the search stops and
/// returns the incumbent with `optimal = false`.
pub fn max_induced_tree(g: &Graph, budget: u64) -> SolveResult {
    let n = g.n();
    let mut s = Search::new(g, budget);
    if n == 0 {
        return SolveResult {
            size: 0,
            witness: VertexSet::new(0),
            nodes_explored: 0,
            optimal: true,
        };
    }
    for root in 0..n {
        if n - root <= s.best.len() || s.exhausted {
            break;
        }
        s.run_from(root);
    }
    let witness = VertexSet::from_vertices(n, s.best.iter().copied()).expect("witness in range");
    SolveResult {
        size: s.best.len(),
        witness,
        nodes_explored: s.nodes,
        optimal: !s.exhausted,
    }
}

struct Search<'a> {
    g: &'a Graph,
    w: usize,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    best: Vec<usize>,
    tree: Vec<usize>,
    // Frame `d` owns C and U at offsets `2 d w` and `(2 d + 1) w`.
    arena: Vec<u64>,
    reach: Vec<u64>,
    frontier: Vec<u64>,
    next: Vec<u64>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, budget: u64) -> Self {
        let w = g.stride();
        Search {
            g,
            w,
            budget,
            nodes: 0,
            exhausted: false,
            best: Vec::new(),
            tree: Vec::new(),
            arena: Vec::new(),
            reach: vec![0; w],
            frontier: vec![0; w],
            next: vec![0; w],
        }
    }

    fn ensure_frame(&mut self, d: usize) {
        let need = (2 * d + 2) * self.w;
        if self.arena.len() < need {
            self.arena.resize(need, 0);
        }
    }

    fn run_from(&mut self, root: usize) {
        let (g, w) = (self.g, self.w);
        self.ensure_frame(0);
        let (c, u) = self.arena[..2 * w].split_at_mut(w);
        let row = g.row(root);
        for i in 0..w {
            let above = above_mask(i, root, g.n());
            c[i] = row[i] & above;
            u[i] = !row[i] & above;
        }
        self.tree.clear();
        self.tree.push(root);
        self.explore();
    }

    /// Depth-first search from the current frame stack, which holds one
    /// frame for the single-vertex tree at the root.
    fn explore(&mut self) {
        let w = self.w;
        // `chosen[d]` is the vertex frame d handed to frame d+1.
        let mut chosen: Vec<usize> = Vec::new();
        let mut d = 0usize;
        let mut entering = true;
        loop {
            if entering {
                self.nodes += 1;
                if self.nodes > self.budget {
                    self.nodes = self.budget;
                    self.exhausted = true;
                    return;
                }
                if self.tree.len() > self.best.len() {
                    self.best.clone_from(&self.tree);
                }
            } else {
                // Back from the child: exclude the vertex it added.
                let v = chosen.pop().expect("child frame");
                self.tree.pop();
                let c = &mut self.arena[2 * d * w..(2 * d + 1) * w];
                c[v / 64] &= !(1 << (v % 64));
            }
            match self.pick(d) {
                Some(v) => {
                    self.ensure_frame(d + 1);
                    let row = self.g.row(v);
                    let (cur, child) = self.arena.split_at_mut((2 * d + 2) * w);
                    let (c, u) = cur[2 * d * w..].split_at_mut(w);
                    let (c2, u2) = child[..2 * w].split_at_mut(w);
                    for i in 0..w {
                        c2[i] = (c[i] & !row[i]) | (u[i] & row[i]);
                        u2[i] = u[i] & !row[i];
                    }
                    c2[v / 64] &= !(1 << (v % 64));
                    chosen.push(v);
                    self.tree.push(v);
                    d += 1;
                    entering = true;
                }
                None => {
                    if d == 0 {
                        return;
                    }
                    d -= 1;
                    entering = false;
                }
            }
        }
    }

    /// Next vertex to branch on in frame `d`, or `None` if the frame is
    /// exhausted or cannot beat the incumbent.
    fn pick(&mut self, d: usize) -> Option<usize> {
        let w = self.w;
        let t = self.tree.len();
        let target = self.best.len();
        let base = 2 * d * w;
        let (c, u) = self.arena[base..base + 2 * w].split_at(w);
        let loose: usize = c
            .iter()
            .zip(u)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum();
        if t + loose <= target {
            return None;
        }
        if t + closure_size(self.g, c, u, &mut self.reach, &mut self.frontier, &mut self.next, target - t) <= target {
            return None;
        }
        let mut pick = None;
        let mut pick_gain = 0usize;
        for v in iter_bits(c) {
            let gain: usize = self
                .g
                .row(v)
                .iter()
                .zip(u)
                .map(|(r, b)| (r & b).count_ones() as usize)
                .sum();
            if pick.is_none() || gain > pick_gain {
                pick = Some(v);
                pick_gain = gain;
            }
        }
        pick
    }
}

/// Bits of word `i` for vertices strictly greater than `root` and below `n`.
fn above_mask(i: usize, root: usize, n: usize) -> u64 {
    let lo = i * 64;
    let mut m = !0u64;
    if root + 1 > lo {
        let k = root + 1 - lo;
        m = if k >= 64 { 0 } else { m << k };
    }
    if n < lo + 64 {
        let k = n.saturating_sub(lo);
        m &= if k == 0 { 0 } else { !0u64 >> (64 - k) };
    }
    m
}

/// Size of the set reachable from `c` inside `c ∪ u`, i.e. every vertex
/// that could still join the tree. Stops early once it exceeds `cap`.
fn closure_size(
    g: &Graph,
    c: &[u64],
    u: &[u64],
    reach: &mut [u64],
    frontier: &mut [u64],
    next: &mut [u64],
    cap: usize,
) -> usize {
    reach.copy_from_slice(c);
    frontier.copy_from_slice(c);
    let mut count: usize = c.iter().map(|x| x.count_ones() as usize).sum();
    while count <= cap {
        next.fill(0);
        for v in iter_bits(frontier) {
            for (x, r) in next.iter_mut().zip(g.row(v)) {
                *x |= r;
            }
        }
        let mut grew = 0;
        for i in 0..reach.len() {
            let new = next[i] & u[i] & !reach[i];
            frontier[i] = new;
            reach[i] |= new;
            grew += new.count_ones() as usize;
        }
        if grew == 0 {
            break;
        }
        count += grew;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::sample_gnp;
    use crate::seed::Seed;
    use crate::solver::max_induced_tree_bruteforce;

    fn solve(g: &Graph) -> SolveResult {
        let r = max_induced_tree(g, DEFAULT_BUDGET);
        if g.n() > 0 {
            assert!(g.induced_subgraph(&r.witness).unwrap().is_tree());
        }
        assert_eq!(r.witness.len(), r.size);
        r
    }

    #[test]
    fn small_families() {
        assert_eq!(solve(&Graph::cycle(5).unwrap()).size, 4);
        assert_eq!(solve(&Graph::complete_bipartite(2, 3).unwrap()).size, 4);
        assert_eq!(solve(&Graph::complete(4).unwrap()).size, 2);
        assert_eq!(solve(&Graph::path(5).unwrap()).size, 5);
        assert_eq!(solve(&Graph::star(7).unwrap()).size, 8);
        assert_eq!(solve(&Graph::empty(4).unwrap()).size, 1);
        assert_eq!(solve(&Graph::empty(0).unwrap()).size, 0);
    }

    #[test]
    fn long_path_multiword() {
        let g = Graph::path(300).unwrap();
        let r = solve(&g);
        assert_eq!(r.size, 300);
        assert!(r.optimal);
    }

    #[test]
    fn above_mask_edges() {
        assert_eq!(above_mask(0, 0, 3), 0b110);
        assert_eq!(above_mask(0, 63, 128), 0);
        assert_eq!(above_mask(1, 63, 128), !0);
        assert_eq!(above_mask(1, 64, 70), 0b111110);
    }

    #[test]
    fn matches_bruteforce() {
        for i in 0..60 {
            let p = [0.2, 0.5, 0.8][i % 3];
            let g = sample_gnp(12, p, Seed::new(11, i as u64)).unwrap();
            let a = solve(&g);
            assert!(a.optimal);
            assert_eq!(a.size, max_induced_tree_bruteforce(&g).unwrap().size);
        }
    }

    #[test]
    fn budget_exhaustion() {
        let g = sample_gnp(40, 0.3, Seed::new(2, 0)).unwrap();
        let r = max_induced_tree(&g, 5);
        assert!(!r.optimal);
        assert_eq!(r.nodes_explored, 5);
        assert!(g.induced_subgraph(&r.witness).unwrap().is_tree());
    }
}
