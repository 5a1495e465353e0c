//! Dinic max-flow on an explicit edge list.
//!
//! Edges are stored in insertion order and the search scans adjacency in
//! that order, so results are deterministic functions of the build order.

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    to: Vec<usize>,
    cap: Vec<u64>,
    adj: Vec<Vec<usize>>,
}

pub const INF_CAP: u64 = u64::MAX / 4;

impl FlowNetwork {
    pub fn new(n: usize) -> FlowNetwork {
        FlowNetwork {
            to: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Add a directed edge and its residual twin; returns the forward id.
    pub fn add_edge(&mut self, u: usize, v: usize, cap: u64) -> usize {
        let id = self.to.len();
        self.to.push(v);
        self.cap.push(cap);
        self.adj[u].push(id);
        self.to.push(u);
        self.cap.push(0);
        self.adj[v].push(id + 1);
        id
    }

    /// Flow currently on a forward edge.
    pub fn flow_on(&self, edge: usize) -> u64 {
        self.cap[edge ^ 1]
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let n = self.node_count();
        let mut total = 0u64;
        loop {
            // BFS level graph
            let mut level = vec![usize::MAX; n];
            level[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &e in &self.adj[u] {
                    let v = self.to[e];
                    if self.cap[e] > 0 && level[v] == usize::MAX {
                        level[v] = level[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            if level[t] == usize::MAX {
                return total;
            }
            // blocking flow by iterative DFS
            let mut iter = vec![0usize; n];
            loop {
                let pushed = self.dfs_push(s, t, INF_CAP, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn dfs_push(
        &mut self,
        s: usize,
        t: usize,
        limit: u64,
        level: &[usize],
        iter: &mut [usize],
    ) -> u64 {
        // explicit stack of (node, incoming edge, remaining limit)
        let mut path: Vec<usize> = Vec::new(); // edge ids along the current path
        let mut u = s;
        loop {
            if u == t {
                let mut bottleneck = limit;
                for &e in &path {
                    bottleneck = bottleneck.min(self.cap[e]);
                }
                for &e in &path {
                    self.cap[e] -= bottleneck;
                    self.cap[e ^ 1] += bottleneck;
                }
                return bottleneck;
            }
            let mut advanced = false;
            while iter[u] < self.adj[u].len() {
                let e = self.adj[u][iter[u]];
                let v = self.to[e];
                if self.cap[e] > 0 && level[v] == level[u] + 1 {
                    path.push(e);
                    u = v;
                    advanced = true;
                    break;
                }
                iter[u] += 1;
            }
            if !advanced {
                if u == s {
                    return 0;
                }
                level_block(&mut iter[u]);
                let e = path.pop().unwrap();
                u = self.to[e ^ 1];
                iter[u] += 1;
            }
        }
    }

    /// Nodes reachable from `s` in the residual graph; call after max_flow.
    pub fn residual_side(&self, s: usize) -> Vec<bool> {
        let mut side = vec![false; self.node_count()];
        side[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && !side[v] {
                    side[v] = true;
                    queue.push_back(v);
                }
            }
        }
        side
    }
}

fn level_block(iter_u: &mut usize) {
    // a node with no admissible edge left is dead for this phase
    *iter_u = usize::MAX / 2;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_max_flow() {
        // classic 4-node diamond
        let mut net = FlowNetwork::new(4);
        net.add_edge(0, 1, 3);
        net.add_edge(0, 2, 2);
        net.add_edge(1, 2, 1);
        net.add_edge(1, 3, 2);
        net.add_edge(2, 3, 3);
        assert_eq!(net.max_flow(0, 3), 5);
    }

    #[test]
    fn bipartite_matching_via_flow() {
        // 3 left, 3 right, perfect matching exists
        let mut net = FlowNetwork::new(8);
        let (s, t) = (6, 7);
        for l in 0..3 {
            net.add_edge(s, l, 1);
            net.add_edge(3 + l, t, 1);
        }
        net.add_edge(0, 3, 1);
        net.add_edge(0, 4, 1);
        net.add_edge(1, 4, 1);
        net.add_edge(2, 5, 1);
        assert_eq!(net.max_flow(s, t), 3);
    }

    #[test]
    fn min_cut_side_is_source_closed() {
        let mut net = FlowNetwork::new(4);
        net.add_edge(0, 1, 1);
        net.add_edge(1, 2, 10);
        net.add_edge(2, 3, 1);
        assert_eq!(net.max_flow(0, 3), 1);
        let side = net.residual_side(0);
        assert!(side[0]);
        assert!(!side[3]);
    }
}
