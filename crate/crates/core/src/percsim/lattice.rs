//! Site layouts: the domains as finite pieces of the triangular lattice (or
//! the square lattice for bond percolation), with their boundary segments.
//!
//! Triangular sites use axial coordinates `(i, j)` at position
//! `(i + j/2, j sqrt3/2)`; the six neighbours differ by `(+-1, 0)`, `(0, +-1)`,
//! `(1, -1)` and `(-1, 1)`.

use std::collections::HashMap;

use super::{Geometry, LatticeKind};
use crate::error::{Error, Result};
use crate::SQRT3;

const TRIANGULAR: [(i32, i32); 6] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)];
const SQUARE: [(i32, i32); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

/// Largest layout built, in sites.
pub const MAX_SITES: usize = 20_000_000;

/// The boundary data an observable needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Boundary {
    /// `P_h`, `N_h` join `first` to `second`; `P_hv` also needs `third`, `fourth`.
    Crossing { sides: [Vec<u32>; 4] },
    /// The cone of the isosceles triangle: the wired arc, the free arc and the
    /// sites next to the apex.
    Surround {
        wired: Vec<u32>,
        free: Vec<u32>,
        apex: Vec<u32>,
    },
}

#[derive(Debug, Clone)]
pub struct Layout {
    kind: LatticeKind,
    coords: Vec<(i32, i32)>,
    // undirected edges, each listed once
    edges: Vec<(u32, u32)>,
    // CSR adjacency: (neighbour, edge index)
    offsets: Vec<u32>,
    adjacency: Vec<(u32, u32)>,
    boundary: Boundary,
}

struct Builder {
    index: HashMap<(i32, i32), u32>,
    coords: Vec<(i32, i32)>,
}

impl Builder {
    fn new(coords: Vec<(i32, i32)>) -> Result<Self> {
        if coords.len() > MAX_SITES {
            return Err(Error::Config(format!(
                "layout of {} sites exceeds the limit of {MAX_SITES}",
                coords.len()
            )));
        }
        let index = coords.iter().enumerate().map(|(k, &c)| (c, k as u32)).collect();
        Ok(Builder { index, coords })
    }

    fn get(&self, c: (i32, i32)) -> Option<u32> {
        self.index.get(&c).copied()
    }

    /// Edges from the neighbour offsets, resolving each neighbour through `resolve`.
    fn finish<F>(self, kind: LatticeKind, offsets: &[(i32, i32)], resolve: F, boundary: Boundary) -> Layout
    where
        F: Fn(&Builder, (i32, i32)) -> Option<u32>,
    {
        let mut edges = Vec::new();
        for (s, &(i, j)) in self.coords.iter().enumerate() {
            for &(di, dj) in offsets {
                if let Some(t) = resolve(&self, (i + di, j + dj)) {
                    if (t as usize) < s {
                        edges.push((t, s as u32));
                    }
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let n = self.coords.len();
        let mut degree = vec![0u32; n + 1];
        for &(a, b) in &edges {
            degree[a as usize + 1] += 1;
            degree[b as usize + 1] += 1;
        }
        for k in 0..n {
            degree[k + 1] += degree[k];
        }
        let offsets_csr = degree;
        let mut fill = offsets_csr.clone();
        let mut adjacency = vec![(0u32, 0u32); 2 * edges.len()];
        for (e, &(a, b)) in edges.iter().enumerate() {
            adjacency[fill[a as usize] as usize] = (b, e as u32);
            fill[a as usize] += 1;
            adjacency[fill[b as usize] as usize] = (a, e as u32);
            fill[b as usize] += 1;
        }
        Layout {
            kind,
            coords: self.coords,
            edges,
            offsets: offsets_csr,
            adjacency,
            boundary,
        }
    }
}

fn rectangle_rows(side: usize, aspect: f64, row_spacing: f64) -> Result<usize> {
    let rows = (((side - 1) as f64 / aspect) / row_spacing).round() + 1.0;
    if !(rows >= 2.0) || rows * side as f64 > MAX_SITES as f64 {
        return Err(Error::Config(format!("aspect ratio {aspect} gives an unusable height")));
    }
    Ok(rows as usize)
}

fn triangular_rectangle(side: usize, aspect: f64) -> Result<Layout> {
    let rows = rectangle_rows(side, aspect, SQRT3 / 2.0)?;
    let w = side as i32;
    let mut coords = Vec::with_capacity(side * rows);
    for j in 0..rows as i32 {
        let start = -(j / 2);
        coords.extend((start..start + w).map(|i| (i, j)));
    }
    let top = rows as i32 - 1;
    let boundary = Boundary::Crossing {
        sides: [
            select(&coords, |(i, j)| i == -(j / 2)),
            select(&coords, |(i, j)| i == -(j / 2) + w - 1),
            select(&coords, |(_, j)| j == 0),
            select(&coords, |(_, j)| j == top),
        ],
    };
    let b = Builder::new(coords)?;
    Ok(b.finish(LatticeKind::TriangularSite, &TRIANGULAR, |b, c| b.get(c), boundary))
}

fn square_rectangle(side: usize, aspect: f64) -> Result<Layout> {
    let rows = rectangle_rows(side, aspect, 1.0)?;
    let (w, top) = (side as i32, rows as i32 - 1);
    let coords: Vec<(i32, i32)> = (0..rows as i32)
        .flat_map(|j| (0..w).map(move |i| (i, j)))
        .collect();
    let boundary = Boundary::Crossing {
        sides: [
            select(&coords, |(i, _)| i == 0),
            select(&coords, |(i, _)| i == w - 1),
            select(&coords, |(_, j)| j == 0),
            select(&coords, |(_, j)| j == top),
        ],
    };
    let b = Builder::new(coords)?;
    Ok(b.finish(LatticeKind::SquareBond, &SQUARE, |b, c| b.get(c), boundary))
}

/// Vertices `B = (0,0)`, `C = (L-1, 0)`, `A = (0, L-1)`; `w` splits `BC` at
/// fraction `t` measured from `B`.
fn equilateral(side: usize, t: f64) -> Result<Layout> {
    let n = side as i32;
    let coords: Vec<(i32, i32)> = (0..n)
        .flat_map(|j| (0..n - j).map(move |i| (i, j)))
        .collect();
    let frac = |i: i32| i as f64 / (n - 1) as f64;
    let boundary = Boundary::Crossing {
        sides: [
            select(&coords, |(i, j)| j == 0 && frac(i) <= t),
            select(&coords, |(i, j)| i + j == n - 1),
            select(&coords, |(i, _)| i == 0),
            select(&coords, |(i, j)| j == 0 && frac(i) > t),
        ],
    };
    let b = Builder::new(coords)?;
    Ok(b.finish(LatticeKind::TriangularSite, &TRIANGULAR, |b, c| b.get(c), boundary))
}

// Fundamental sector [0, 120 deg) of the rotation about the origin.
fn in_sector((i, j): (i32, i32)) -> bool {
    (i >= 1 && j >= 0) || (i <= 0 && i + j >= 1)
}

// Rotation by 120 degrees: e1 -> e2 - e1, e2 -> -e1.
fn rotate((i, j): (i32, i32)) -> (i32, i32) {
    (-i - j, i)
}

fn to_sector(mut c: (i32, i32)) -> Option<(i32, i32)> {
    for _ in 0..3 {
        if in_sector(c) {
            return Some(c);
        }
        c = rotate(c);
    }
    None
}

/// Apex `A' = (0,0)`, `B' = (L, 0)`, `C' = L(-1, 1)`, interior angle 120 deg at
/// `A'`. The edges `A'B'` and `A'C'` are identified by the rotation about
/// `A'`, which is a symmetry of the lattice, so the domain is the sector
/// quotient: a cone whose boundary is the base. The base is `i + 2j <= L`
/// and a base point at column `i` sits at fraction `(L - i)/(2L)` from `B'`.
fn schramm(side: usize, t: f64) -> Result<Layout> {
    let l = side as i32;
    let inside = |c: (i32, i32)| in_sector(c) && c.0 + 2 * c.1 <= l;
    let coords: Vec<(i32, i32)> = (0..=l)
        .flat_map(|j| (-l..=l).map(move |i| (i, j)))
        .filter(|&c| inside(c))
        .collect();
    let b = Builder::new(coords)?;
    let resolve = |b: &Builder, c: (i32, i32)| {
        if c == (0, 0) {
            return None;
        }
        to_sector(c).and_then(|c| b.get(c))
    };
    let mut wired = Vec::new();
    let mut free = Vec::new();
    let mut apex = Vec::new();
    for (s, &(i, j)) in b.coords.iter().enumerate() {
        let mut on_base = false;
        for &(di, dj) in &TRIANGULAR {
            let q = (i + di, j + dj);
            if q == (0, 0) {
                apex.push(s as u32);
            } else if resolve(&b, q).is_none() {
                on_base = true;
            }
        }
        if on_base {
            let frac = (l - i) as f64 / (2 * l) as f64;
            if frac <= t {
                wired.push(s as u32);
            } else {
                free.push(s as u32);
            }
        }
    }
    apex.dedup();
    let boundary = Boundary::Surround { wired, free, apex };
    Ok(b.finish(LatticeKind::TriangularSite, &TRIANGULAR, resolve, boundary))
}

fn select(coords: &[(i32, i32)], f: impl Fn((i32, i32)) -> bool) -> Vec<u32> {
    coords
        .iter()
        .enumerate()
        .filter(|(_, &c)| f(c))
        .map(|(k, _)| k as u32)
        .collect()
}

impl Layout {
    pub fn new(geometry: Geometry, side: usize, kind: LatticeKind) -> Result<Self> {
        if side < 2 {
            return Err(Error::Config("a layout needs at least 2 sites per side".into()));
        }
        match (kind, geometry) {
            (LatticeKind::TriangularSite, Geometry::Rectangle { aspect }) => triangular_rectangle(side, aspect),
            (LatticeKind::TriangularSite, Geometry::EquilateralTriangle { t }) => equilateral(side, t),
            (LatticeKind::TriangularSite, Geometry::IsoscelesSchramm { t }) => schramm(side, t),
            (LatticeKind::SquareBond, Geometry::Rectangle { aspect }) => square_rectangle(side, aspect),
            (LatticeKind::SquareBond, _) => Err(Error::Config(
                "square-lattice bond percolation supports only the rectangle".into(),
            )),
        }
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn sites(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[(i32, i32)] {
        &self.coords
    }

    pub fn site_index(&self, c: (i32, i32)) -> Option<u32> {
        self.coords.iter().position(|&x| x == c).map(|k| k as u32)
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// `(neighbour, edge index)` pairs of site `s`.
    pub fn neighbors(&self, s: u32) -> &[(u32, u32)] {
        let (a, b) = (self.offsets[s as usize], self.offsets[s as usize + 1]);
        &self.adjacency[a as usize..b as usize]
    }

    pub fn boundary(&self) -> &Boundary {
        &self.boundary
    }

    /// Number of random draws per trial: one per site, or one per bond.
    pub fn draws(&self) -> usize {
        match self.kind {
            LatticeKind::TriangularSite => self.sites(),
            LatticeKind::SquareBond => self.edges.len(),
        }
    }
}
