//! Spectral sequences of finite filtered cochain complexes.

mod filtrations;
mod pages;

pub use filtrations::{contraction_filtration, symdegree_d2_matches, symdegree_filtration};
pub use pages::{pages, Cell, Differential, Page, PageReport, SpectralSequence};

use crate::linalg::{CochainComplex, Subspace};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("filtration level {level} is not closed under d in degree {degree}")]
    NotSubcomplex { level: usize, degree: usize },
    #[error("filtration level {level} is not contained in level {prev} in degree {degree}")]
    NotDecreasing { level: usize, prev: usize, degree: usize },
    #[error("level 0 must be the whole complex (degree {degree})")]
    NotExhaustive { degree: usize },
    #[error("level {level} has {found} degrees, expected {expected}")]
    Shape { level: usize, expected: usize, found: usize },
}

/// A complex with a decreasing filtration `F_0 = C ⊇ F_1 ⊇ ⋯ ⊇ F_P`;
/// `F_p = C` for `p < 0` and `F_p = 0` for `p > P`.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    total: CochainComplex,
    levels: Vec<Vec<Subspace>>,
}

/// Validates that `levels[p][n]` is a decreasing chain of subcomplexes with
/// `levels[0]` the whole complex.
pub fn build_filtered(total: CochainComplex, levels: Vec<Vec<Subspace>>) -> Result<FilteredComplex, SpectralError> {
    for (p, lvl) in levels.iter().enumerate() {
        if lvl.len() != total.len() {
            return Err(SpectralError::Shape { level: p, expected: total.len(), found: lvl.len() });
        }
        for n in 0..total.len() {
            if p == 0 && !lvl[n].is_full() {
                return Err(SpectralError::NotExhaustive { degree: n });
            }
            if p > 0 && !levels[p - 1][n].contains_space(&lvl[n]) {
                return Err(SpectralError::NotDecreasing { level: p, prev: p - 1, degree: n });
            }
            let d = total.dn(n);
            if n + 1 < total.len()
                && lvl[n].basis().iter().any(|b| !lvl[n + 1].contains(&d.apply(b))) {
                    return Err(SpectralError::NotSubcomplex { level: p, degree: n });
                }
        }
    }
    Ok(FilteredComplex { total, levels })
}

impl FilteredComplex {
    /// The one-step filtration `F_0 = C ⊃ F_1 = 0`.
    pub fn trivial(total: CochainComplex) -> Self {
        let levels = vec![(0..total.len()).map(|n| Subspace::full(total.dim(n))).collect()];
        FilteredComplex { total, levels }
    }

    pub fn total(&self) -> &CochainComplex {
        &self.total
    }

    /// Highest stored level `P`.
    pub fn length(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn levels(&self) -> &[Vec<Subspace>] {
        &self.levels
    }

    /// `F_p^n` for any integer `p`.
    pub fn level(&self, p: i64, n: usize) -> Subspace {
        if p <= 0 {
            Subspace::full(self.total.dim(n))
        } else {
            match self.levels.get(p as usize) {
                Some(l) => l[n].clone(),
                None => Subspace::zero(self.total.dim(n)),
            }
        }
    }

    /// Inserts a copy of level `p` right after it.
    pub fn repeat_level(&self, p: usize) -> Self {
        let mut levels = self.levels.clone();
        let l = levels[p].clone();
        levels.insert(p + 1, l);
        FilteredComplex { total: self.total.clone(), levels }
    }
}
