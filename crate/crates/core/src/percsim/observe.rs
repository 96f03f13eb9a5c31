//! Per-configuration observables and the flood-fill reference partition.

use std::collections::VecDeque;

use super::lattice::{Boundary, Layout};
use super::unionfind::UnionFind;

/// One sampled configuration: site states, plus bond states on bond lattices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub sites: Vec<bool>,
    pub bonds: Option<Vec<bool>>,
}

impl Configuration {
    pub fn all_open(layout: &Layout) -> Self {
        Configuration::uniform(layout, true)
    }

    pub fn all_closed(layout: &Layout) -> Self {
        Configuration::uniform(layout, false)
    }

    fn uniform(layout: &Layout, open: bool) -> Self {
        match layout.kind() {
            super::LatticeKind::TriangularSite => Configuration {
                sites: vec![open; layout.sites()],
                bonds: None,
            },
            super::LatticeKind::SquareBond => Configuration {
                sites: vec![true; layout.sites()],
                bonds: Some(vec![open; layout.edges().len()]),
            },
        }
    }

    fn passes(&self, a: u32, b: u32, edge: u32) -> bool {
        self.sites[a as usize]
            && self.sites[b as usize]
            && self.bonds.as_ref().is_none_or(|v| v[edge as usize])
    }
}

/// Outcome of every observable on one configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TrialOutcome {
    pub horizontal: bool,
    pub four_sides: bool,
    pub crossing_clusters: u32,
    pub surrounded: bool,
}

/// Scratch buffers reused across trials by one worker.
#[derive(Debug, Default)]
pub struct Workspace {
    uf: UnionFind,
    marks: Vec<u8>,
    touched: Vec<u32>,
    queue: VecDeque<u32>,
    seen: Vec<bool>,
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    fn build_clusters(&mut self, layout: &Layout, config: &Configuration) {
        self.uf.reset(layout.sites());
        for (e, &(a, b)) in layout.edges().iter().enumerate() {
            if config.passes(a, b, e as u32) {
                self.uf.union(a, b);
            }
        }
    }

    /// Cluster representative of every site, `None` for closed sites.
    pub fn cluster_labels(&mut self, layout: &Layout, config: &Configuration) -> Vec<Option<u32>> {
        self.build_clusters(layout, config);
        (0..layout.sites() as u32)
            .map(|s| config.sites[s as usize].then(|| self.uf.find(s)))
            .collect()
    }

    pub fn observe(&mut self, layout: &Layout, config: &Configuration) -> TrialOutcome {
        self.build_clusters(layout, config);
        match layout.boundary() {
            Boundary::Crossing { sides } => self.crossing(sides, config),
            Boundary::Surround { wired, free, apex } => TrialOutcome {
                surrounded: self.surround(layout, config, wired, free, apex),
                ..TrialOutcome::default()
            },
        }
    }

    fn crossing(&mut self, sides: &[Vec<u32>; 4], config: &Configuration) -> TrialOutcome {
        if self.marks.len() < config.sites.len() {
            self.marks.resize(config.sites.len(), 0);
        }
        for (k, side) in sides.iter().enumerate() {
            for &s in side {
                if !config.sites[s as usize] {
                    continue;
                }
                let r = self.uf.find(s) as usize;
                if self.marks[r] == 0 {
                    self.touched.push(r as u32);
                }
                self.marks[r] |= 1 << k;
            }
        }
        let mut out = TrialOutcome::default();
        for &r in &self.touched {
            let m = self.marks[r as usize];
            if m & 0b0011 == 0b0011 {
                out.crossing_clusters += 1;
                out.horizontal = true;
            }
            if m == 0b1111 {
                out.four_sides = true;
            }
            self.marks[r as usize] = 0;
        }
        self.touched.clear();
        out
    }

    /// The apex is surrounded when its region of the complement of the wired
    /// cluster never reaches the free arc.
    fn surround(&mut self, layout: &Layout, config: &Configuration, wired: &[u32], free: &[u32], apex: &[u32]) -> bool {
        let Some(&w0) = wired.first() else {
            return false;
        };
        let root = self.uf.find(w0);
        let n = layout.sites();
        self.seen.clear();
        self.seen.resize(n, false);
        // free-arc sites are the targets; mark them with 2 in `marks`
        if self.marks.len() < n {
            self.marks.resize(n, 0);
        }
        for &s in free {
            self.marks[s as usize] = 2;
        }
        self.queue.clear();
        for &s in apex {
            if !self.in_cluster(config, s, root) && !self.seen[s as usize] {
                self.seen[s as usize] = true;
                self.queue.push_back(s);
            }
        }
        let mut reached = false;
        while let Some(s) = self.queue.pop_front() {
            if self.marks[s as usize] == 2 {
                reached = true;
                break;
            }
            for &(t, _) in layout.neighbors(s) {
                if !self.seen[t as usize] && !self.in_cluster(config, t, root) {
                    self.seen[t as usize] = true;
                    self.queue.push_back(t);
                }
            }
        }
        for &s in free {
            self.marks[s as usize] = 0;
        }
        !reached
    }

    fn in_cluster(&mut self, config: &Configuration, s: u32, root: u32) -> bool {
        config.sites[s as usize] && self.uf.find(s) == root
    }
}

/// Cluster labels by breadth-first flood fill, numbered in order of first site.
pub fn flood_fill_labels(layout: &Layout, config: &Configuration) -> Vec<Option<u32>> {
    let n = layout.sites();
    let mut label = vec![None; n];
    let mut next = 0u32;
    let mut queue = VecDeque::new();
    for start in 0..n as u32 {
        if !config.sites[start as usize] || label[start as usize].is_some() {
            continue;
        }
        label[start as usize] = Some(next);
        queue.push_back(start);
        while let Some(s) = queue.pop_front() {
            for &(t, e) in layout.neighbors(s) {
                if label[t as usize].is_none() && config.passes(s, t, e) {
                    label[t as usize] = Some(next);
                    queue.push_back(t);
                }
            }
        }
        next += 1;
    }
    label
}

/// True when two labelings induce the same partition of the open sites.
pub fn same_partition(a: &[Option<u32>], b: &[Option<u32>]) -> bool {
    use std::collections::HashMap;
    if a.len() != b.len() {
        return false;
    }
    let mut forward = HashMap::new();
    let mut backward = HashMap::new();
    for (x, y) in a.iter().zip(b) {
        match (x, y) {
            (None, None) => {}
            (Some(x), Some(y)) => {
                if *forward.entry(*x).or_insert(*y) != *y || *backward.entry(*y).or_insert(*x) != *x {
                    return false;
                }
            }
            _ => return false,
        }
    }
    true
}
