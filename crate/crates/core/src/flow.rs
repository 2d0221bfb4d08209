//! Successive shortest paths with Johnson potentials.
//!
//! The network may start with negative arc costs as long as it has no negative
//! cycle; initial potentials come from Bellman-Ford. Augmentation stops as
//! soon as the cheapest source → sink path has non-negative cost, so the flow
//! value is left free and only profitable paths are taken.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

pub(crate) type Cost = i64;
const INF: Cost = Cost::MAX / 4;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    residual: i64,
    cost: Cost,
}

#[derive(Debug, Clone)]
pub(crate) struct Network {
    arcs: Vec<Arc>,
    adjacency: Vec<Vec<usize>>,
}

impl Network {
    pub(crate) fn new(nodes: usize) -> Self {
        Self {
            arcs: Vec::new(),
            adjacency: vec![Vec::new(); nodes],
        }
    }

    /// Adds `from → to` and its residual twin; returns the forward arc id.
    pub(crate) fn add_arc(&mut self, from: usize, to: usize, capacity: i64, cost: Cost) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc {
            to,
            residual: capacity,
            cost,
        });
        self.arcs.push(Arc {
            to: from,
            residual: 0,
            cost: -cost,
        });
        self.adjacency[from].push(id);
        self.adjacency[to].push(id + 1);
        id
    }

    /// Flow currently carried by forward arc `id`.
    pub(crate) fn flow(&self, id: usize) -> i64 {
        self.arcs[id ^ 1].residual
    }

    fn bellman_ford(&self, source: usize) -> Vec<Cost> {
        let n = self.adjacency.len();
        let mut dist = vec![INF; n];
        dist[source] = 0;
        for _ in 0..n {
            let mut changed = false;
            for u in 0..n {
                if dist[u] == INF {
                    continue;
                }
                for &id in &self.adjacency[u] {
                    let arc = &self.arcs[id];
                    if arc.residual > 0 && dist[u] + arc.cost < dist[arc.to] {
                        dist[arc.to] = dist[u] + arc.cost;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        dist
    }

    /// Pushes flow along cheapest paths while they have negative cost.
    /// Returns `(flow, cost)`.
    pub(crate) fn min_cost_free_flow(&mut self, source: usize, sink: usize) -> (i64, Cost) {
        let n = self.adjacency.len();
        let mut potential = self.bellman_ford(source);
        let reach_max = potential.iter().copied().filter(|&d| d < INF).max().unwrap_or(0);
        for p in potential.iter_mut() {
            if *p == INF {
                *p = reach_max;
            }
        }

        let mut total_flow = 0;
        let mut total_cost = 0;
        let mut dist = vec![INF; n];
        let mut parent = vec![usize::MAX; n];
        loop {
            dist.fill(INF);
            parent.fill(usize::MAX);
            dist[source] = 0;
            let mut heap = BinaryHeap::new();
            heap.push(Reverse((0, source)));
            while let Some(Reverse((d, u))) = heap.pop() {
                if d > dist[u] {
                    continue;
                }
                for &id in &self.adjacency[u] {
                    let arc = &self.arcs[id];
                    if arc.residual <= 0 {
                        continue;
                    }
                    let reduced = arc.cost + potential[u] - potential[arc.to];
                    debug_assert!(reduced >= 0, "negative reduced cost {reduced}");
                    let nd = d + reduced;
                    if nd < dist[arc.to] {
                        dist[arc.to] = nd;
                        parent[arc.to] = id;
                        heap.push(Reverse((nd, arc.to)));
                    }
                }
            }
            if dist[sink] == INF {
                break;
            }

            let reach_max = dist.iter().copied().filter(|&d| d < INF).max().unwrap_or(0);
            for (p, &d) in potential.iter_mut().zip(&dist) {
                *p += if d < INF { d } else { reach_max };
            }

            let mut bottleneck = i64::MAX;
            let mut path_cost = 0;
            let mut v = sink;
            while v != source {
                let id = parent[v];
                bottleneck = bottleneck.min(self.arcs[id].residual);
                path_cost += self.arcs[id].cost;
                v = self.arcs[id ^ 1].to;
            }
            if path_cost >= 0 {
                break;
            }
            let mut v = sink;
            while v != source {
                let id = parent[v];
                self.arcs[id].residual -= bottleneck;
                self.arcs[id ^ 1].residual += bottleneck;
                v = self.arcs[id ^ 1].to;
            }
            total_flow += bottleneck;
            total_cost += bottleneck * path_cost;
        }
        (total_flow, total_cost)
    }
}
