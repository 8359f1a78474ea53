//! Pages `E_r^{pq}` by subspace arithmetic:
//! `Z_r^{p,n} = F_p^n ∩ d^{-1} F_{p+r}^{n+1}` and
//! `E_r^{p,n} = Z_r^{p,n} / (Z_{r-1}^{p+1,n} + d Z_{r-1}^{p-r+1,n-1})`, `q = n − p`.

use rayon::prelude::*;
use serde::Serialize;

use super::FilteredComplex;
use crate::linalg::{Matrix, Quotient, SparseVec, Subspace};

#[derive(Clone, Debug)]
pub struct Cell {
    pub p: usize,
    pub q: i64,
    quotient: Quotient,
}

impl Cell {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn n(&self) -> usize {
        (self.p as i64 + self.q) as usize
    }

    /// Representatives in the total complex.
    pub fn representatives(&self) -> &[SparseVec] {
        self.quotient.representatives()
    }

    /// Class coordinates of an element of `Z_r^{p,n}`.
    pub fn coords(&self, v: &SparseVec) -> SparseVec {
        self.quotient.coords(v)
    }

    pub fn contains_cycle(&self, v: &SparseVec) -> bool {
        self.quotient.numerator().contains(v)
    }
}

/// `d_r: E_r^{p,q} → E_r^{p+r,q-r+1}`.
#[derive(Clone, Debug)]
pub struct Differential {
    pub source: (usize, i64),
    pub target: (usize, i64),
    pub matrix: Matrix,
}

#[derive(Clone, Debug)]
pub struct Page {
    pub r: usize,
    pub cells: Vec<Cell>,
    pub differentials: Vec<Differential>,
    /// Dims agree with `E_∞` and every later differential vanishes.
    pub stable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PageReport {
    pub r: usize,
    pub cells: Vec<(usize, i64, usize)>,
    pub stable: bool,
}

impl Page {
    pub fn cell(&self, p: usize, q: i64) -> Option<&Cell> {
        self.cells.iter().find(|c| c.p == p && c.q == q)
    }

    pub fn dim(&self, p: usize, q: i64) -> usize {
        self.cell(p, q).map_or(0, |c| c.dim())
    }

    pub fn differential(&self, p: usize, q: i64) -> Option<&Differential> {
        self.differentials.iter().find(|d| d.source == (p, q))
    }

    pub fn differentials_vanish(&self) -> bool {
        self.differentials.iter().all(|d| d.matrix.is_zero())
    }

    /// Sum along the antidiagonal `p + q = n`.
    pub fn total_dims(&self, len: usize) -> Vec<usize> {
        let mut out = vec![0; len];
        for c in &self.cells {
            out[c.n()] += c.dim();
        }
        out
    }

    /// Dims of the cohomology of `(E_r, d_r)` at each cell.
    pub fn cohomology_dims(&self) -> Vec<((usize, i64), usize)> {
        let r = self.r as i64;
        self.cells
            .iter()
            .map(|c| {
                let out = self.differential(c.p, c.q).map_or(0, |d| d.matrix.rank());
                let inc = if c.p as i64 >= r {
                    let src = (c.p - self.r, c.q + r - 1);
                    self.differential(src.0, src.1).map_or(0, |d| d.matrix.rank())
                } else {
                    0
                };
                ((c.p, c.q), c.dim() - out - inc)
            })
            .collect()
    }

    /// Nonzero cells as `(p, q, dim)`.
    pub fn report(&self) -> PageReport {
        PageReport {
            r: self.r,
            cells: self.cells.iter().filter(|c| c.dim() > 0).map(|c| (c.p, c.q, c.dim())).collect(),
            stable: self.stable,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpectralSequence {
    /// `E_0, …, E_R` with `R = max(r_max, P + 1)`.
    pub pages: Vec<Page>,
    /// First page from which everything is stable.
    pub collapse: usize,
    pub len: usize,
}

impl SpectralSequence {
    pub fn page(&self, r: usize) -> &Page {
        &self.pages[r.min(self.pages.len() - 1)]
    }

    pub fn infinity(&self) -> &Page {
        self.pages.last().expect("at least one page")
    }

    pub fn limit_dims(&self) -> Vec<usize> {
        self.infinity().total_dims(self.len)
    }
}

fn z(fc: &FilteredComplex, r: i64, p: i64, n: i64) -> Subspace {
    let c = fc.total();
    if n < 0 || n as usize >= c.len() {
        return Subspace::zero(0);
    }
    let n = n as usize;
    let lvl = fc.level(p, n);
    if r <= 0 || n + 1 >= c.len() {
        return lvl;
    }
    lvl.restricted_preimage(&c.dn(n), &fc.level(p + r, n + 1))
}

fn cell(fc: &FilteredComplex, r: usize, p: usize, n: usize) -> Cell {
    let c = fc.total();
    let (ri, pi, ni) = (r as i64, p as i64, n as i64);
    let num = z(fc, ri, pi, ni);
    let mut den = z(fc, ri - 1, pi + 1, ni);
    if n > 0 {
        let src = z(fc, ri - 1, pi - ri + 1, ni - 1);
        den = den.sum(&src.image_under(&c.dn(n - 1)));
    }
    Cell { p, q: ni - pi, quotient: Quotient::new_unchecked(num, den) }
}

fn page(fc: &FilteredComplex, r: usize) -> Page {
    let c = fc.total();
    let plen = fc.length() + 1;
    let idx: Vec<(usize, usize)> = (0..plen).flat_map(|p| (0..c.len()).map(move |n| (p, n))).collect();
    let cells: Vec<Cell> = idx.par_iter().map(|&(p, n)| cell(fc, r, p, n)).collect();
    let find = |p: usize, n: usize| cells.iter().find(|x| x.p == p && x.n() == n);
    let mut differentials = Vec::new();
    for src in &cells {
        if src.dim() == 0 {
            continue;
        }
        let n = src.n();
        let Some(tgt) = find(src.p + r, n + 1) else { continue };
        if tgt.dim() == 0 {
            continue;
        }
        let d = c.dn(n);
        let cols = src.representatives().iter().map(|x| tgt.coords(&d.apply(x))).collect();
        differentials.push(Differential { source: (src.p, src.q), target: (tgt.p, tgt.q), matrix: Matrix::from_cols(tgt.dim(), cols) });
    }
    Page { r, cells, differentials, stable: false }
}

/// Computes `E_0 … E_R` with `R = max(r_max, P + 1)`; `E_{P+1} = E_∞`.
pub fn pages(fc: &FilteredComplex, r_max: usize) -> SpectralSequence {
    let last = r_max.max(fc.length() + 1);
    let mut ps: Vec<Page> = (0..=fc.length() + 1).map(|r| page(fc, r)).collect();
    while ps.len() <= last {
        let mut p = ps.last().expect("nonempty").clone();
        p.r += 1;
        ps.push(p);
    }
    let inf: Vec<Vec<usize>> = vec![ps.last().expect("nonempty").cells.iter().map(|c| c.dim()).collect()];
    let mut collapse = ps.len() - 1;
    for r in (0..ps.len()).rev() {
        let same = ps[r].cells.iter().map(|c| c.dim()).collect::<Vec<_>>() == inf[0];
        if same && ps[r].differentials_vanish() {
            collapse = r;
        } else {
            break;
        }
    }
    for p in ps.iter_mut() {
        p.stable = p.r >= collapse;
    }
    SpectralSequence { pages: ps, collapse, len: fc.total().len() }
}
