//! Subalgebras and invariant complements.

use super::{LieAlgebra, LieError};
use crate::linalg::{Matrix, Solver, SparseVec, Subspace};
use crate::scalar::Scalar;

/// A subalgebra `k ⊆ g`, optionally with a `k`-stable complement.
#[derive(Clone, Debug)]
pub struct SubalgebraData {
    g: LieAlgebra,
    k: Subspace,
    complement: Option<Subspace>,
}

impl SubalgebraData {
    /// Validates closure of `span` under the bracket and, if supplied,
    /// `k`-stability and directness of the complement.
    pub fn new(g: &LieAlgebra, span: Vec<SparseVec>, complement: Option<Vec<SparseVec>>) -> Result<Self, LieError> {
        let n = g.dim();
        let k = Subspace::from_vectors(n, span);
        for (a, x) in k.basis().iter().enumerate() {
            for (b, y) in k.basis().iter().enumerate().skip(a + 1) {
                if !k.contains(&g.bracket(x, y)) {
                    return Err(LieError::NotSubalgebra { a, b });
                }
            }
        }
        let complement = match complement {
            None => None,
            Some(vs) => {
                let p = Subspace::from_vectors(n, vs);
                check_complement(g, &k, &p)?;
                Some(p)
            }
        };
        Ok(SubalgebraData { g: g.clone(), k, complement })
    }

    pub fn zero(g: &LieAlgebra) -> Self {
        SubalgebraData { g: g.clone(), k: Subspace::zero(g.dim()), complement: Some(Subspace::full(g.dim())) }
    }

    pub fn whole(g: &LieAlgebra) -> Self {
        SubalgebraData { g: g.clone(), k: Subspace::full(g.dim()), complement: Some(Subspace::zero(g.dim())) }
    }

    /// Spanned by the listed basis vectors of `g`.
    pub fn coordinate(g: &LieAlgebra, idx: &[usize]) -> Result<Self, LieError> {
        Self::new(g, idx.iter().map(|&i| SparseVec::unit(i)).collect(), None)
    }

    pub fn ambient(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn dim(&self) -> usize {
        self.k.dim()
    }

    pub fn span(&self) -> &Subspace {
        &self.k
    }

    pub fn basis(&self) -> &[SparseVec] {
        self.k.basis()
    }

    pub fn complement(&self) -> Option<&Subspace> {
        self.complement.as_ref()
    }

    /// The subalgebra as a Lie algebra in the RREF basis of `k`.
    pub fn as_algebra(&self) -> LieAlgebra {
        let b = self.k.basis();
        let mut entries = Vec::new();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                let br = self.g.bracket(&b[i], &b[j]);
                let c = self.k.coords_sparse(&br);
                entries.push((i, j, c.iter().map(|(k, x)| (k, x.clone())).collect()));
            }
        }
        LieAlgebra::new(b.len(), &entries).expect("subalgebra inherits Jacobi")
    }

    /// Uses the supplied complement or searches for one: a `k`-stable
    /// complement is the kernel of a `k`-equivariant projection `g → k`,
    /// which is found by solving a linear system.
    pub fn with_invariant_complement(mut self) -> Result<Self, LieError> {
        if self.complement.is_some() {
            return Ok(self);
        }
        let p = find_equivariant_projection(&self.g, &self.k).ok_or(LieError::NoInvariantComplement)?;
        let comp = p.kernel();
        check_complement(&self.g, &self.k, &comp)?;
        self.complement = Some(comp);
        Ok(self)
    }

    /// `θ: g → k` (in `k`-coordinates): projection along the complement.
    pub fn theta(&self) -> Result<Matrix, LieError> {
        let comp = self.complement.as_ref().ok_or(LieError::NoInvariantComplement)?;
        let n = self.g.dim();
        let frame = self.k.matrix().hstack(&comp.matrix());
        let solver = Solver::new(&frame);
        let kd = self.k.dim();
        let cols = (0..n)
            .map(|j| solver.solve(&SparseVec::unit(j)).expect("direct sum spans g").slice(0, kd))
            .collect();
        Ok(Matrix::from_cols(kd, cols))
    }
}

fn check_complement(g: &LieAlgebra, k: &Subspace, p: &Subspace) -> Result<(), LieError> {
    if k.dim() + p.dim() != g.dim() || !k.intersection(p).is_zero() {
        return Err(LieError::ComplementNotDirect);
    }
    for (a, x) in k.basis().iter().enumerate() {
        for (b, y) in p.basis().iter().enumerate() {
            if !p.contains(&g.bracket(x, y)) {
                return Err(LieError::ComplementNotStable { a, b });
            }
        }
    }
    Ok(())
}

/// Solves for `P: g → g` with image in `k`, `P|_k = id` and `P ad_η = ad_η P`
/// for all `η ∈ k`. Unknowns are the entries of `P` in column-major order.
fn find_equivariant_projection(g: &LieAlgebra, k: &Subspace) -> Option<Matrix> {
    let n = g.dim();
    let var = |i: usize, j: usize| j * n + i;
    let nvars = n * n;
    let mut rows: Vec<(SparseVec, Scalar)> = Vec::new();
    // Image in k: every column of P reduced modulo k vanishes. Columns of the
    // residual map are linear in the entries of P.
    let residual_cols: Vec<SparseVec> = (0..n).map(|i| k.reduce(&SparseVec::unit(i))).collect();
    for j in 0..n {
        for r in 0..n {
            let coeffs: Vec<(usize, Scalar)> =
                (0..n).filter_map(|i| { let c = residual_cols[i].get(r); (!c.is_zero()).then(|| (var(i, j), c)) }).collect();
            if !coeffs.is_empty() {
                rows.push((SparseVec::from_pairs(coeffs), Scalar::zero()));
            }
        }
    }
    // P x = x for x in a basis of k.
    for x in k.basis() {
        for i in 0..n {
            let coeffs: Vec<(usize, Scalar)> = x.iter().map(|(j, c)| (var(i, j), c.clone())).collect();
            rows.push((SparseVec::from_pairs(coeffs), x.get(i)));
        }
    }
    // P ad_η - ad_η P = 0.
    for eta in k.basis() {
        let ad = g.ad_of(eta);
        for j in 0..n {
            for i in 0..n {
                let mut coeffs = Vec::new();
                // (P ad)_{ij} = Σ_l P_{il} ad_{lj}
                for (l, a) in ad.col(j).iter() {
                    coeffs.push((var(i, l), a.clone()));
                }
                // (ad P)_{ij} = Σ_l ad_{il} P_{lj}
                for l in 0..n {
                    let a = ad.get(i, l);
                    if !a.is_zero() {
                        coeffs.push((var(l, j), -a));
                    }
                }
                let v = SparseVec::from_pairs(coeffs);
                if !v.is_zero() {
                    rows.push((v, Scalar::zero()));
                }
            }
        }
    }
    let a = Matrix::from_cols(nvars, rows.iter().map(|(r, _)| r.clone()).collect()).transpose();
    let b = SparseVec::from_pairs(rows.iter().enumerate().map(|(r, (_, c))| (r, c.clone())));
    let x = Solver::new(&a).solve(&b)?;
    Some(Matrix::from_cols(n, (0..n).map(|j| x.slice(j * n, (j + 1) * n)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_in_su2_has_complement() {
        let g = LieAlgebra::su2();
        let k = SubalgebraData::coordinate(&g, &[2]).unwrap().with_invariant_complement().unwrap();
        let comp = k.complement().unwrap();
        assert_eq!(comp, &Subspace::from_vectors(3, vec![SparseVec::unit(0), SparseVec::unit(1)]));
        let theta = k.theta().unwrap();
        assert_eq!(theta, Matrix::from_int_rows(&[&[0, 0, 1]]));
    }

    #[test]
    fn non_subalgebra_rejected() {
        let g = LieAlgebra::su2();
        assert!(matches!(SubalgebraData::coordinate(&g, &[0, 1]), Err(LieError::NotSubalgebra { .. })));
    }

    #[test]
    fn central_line_has_complement() {
        let g = LieAlgebra::heisenberg();
        let k = SubalgebraData::coordinate(&g, &[2]).unwrap().with_invariant_complement().unwrap();
        assert_eq!(k.complement().unwrap().dim(), 2);
    }

    #[test]
    fn nonreductive_pair_has_no_complement() {
        // [e0,e1] = e1 and k = span(e1): [e1, e0 + a e1] = -e1 never lies on the line.
        let g = LieAlgebra::new(2, &[(0, 1, vec![(1, Scalar::one())])]).unwrap();
        let k = SubalgebraData::coordinate(&g, &[1]).unwrap();
        assert!(matches!(k.with_invariant_complement(), Err(LieError::NoInvariantComplement)));
    }

    #[test]
    fn bad_complement_rejected() {
        let g = LieAlgebra::su2();
        let r = SubalgebraData::new(&g, vec![SparseVec::unit(2)], Some(vec![SparseVec::unit(0), SparseVec::unit(1).add(&SparseVec::unit(2))]));
        assert!(matches!(r, Err(LieError::ComplementNotStable { .. })));
    }
}
