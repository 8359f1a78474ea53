//! Finite stand-in for `S² × I` with `π = f(t) π_0`: functions on distinct sample points of the
//! line, tensored with the rotation-invariant multivectors `1, π_0` of the sphere.

use serde::Serialize;

use super::poly::Poly;
use super::PoissonError;
use crate::linalg::{cohomology_dims, CochainComplex, GradedSpace, Matrix, SparseVec, Subspace};
use crate::scalar::Scalar;
use crate::spectral::{build_filtered, pages, FilteredComplex, SpectralSequence};

/// Degrees `0..3` are `A·1`, `A·∂_t`, `A·π_0`, `A·∂_t∧π_0`; `d` is multiplication by `f′` from degree 1 to 2.
#[derive(Clone, Debug)]
pub struct ProductLineModel {
    roots: Vec<Scalar>,
    fprime: Poly,
    values: Vec<Scalar>,
    complex: CochainComplex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductLineReport {
    pub samples: usize,
    pub kernel: usize,
    pub cokernel: usize,
    pub direct_dims: Vec<usize>,
    pub predicted_dims: Vec<usize>,
    pub e2_cells: Vec<(usize, i64, usize)>,
    pub differential_page: Option<usize>,
    pub differential_is_multiplication: bool,
    pub limit_dims: Vec<usize>,
}

pub fn build_product_line_model(roots: &[Scalar], fprime: &Poly) -> Result<ProductLineModel, PoissonError> {
    for (i, a) in roots.iter().enumerate() {
        if roots[..i].contains(a) {
            return Err(PoissonError::DuplicateRoots);
        }
    }
    if fprime.nvars() != 1 {
        return Err(PoissonError::Parse("f′ must be a polynomial in one variable".into()));
    }
    let m = roots.len();
    let values: Vec<Scalar> = roots.iter().map(|r| fprime.eval(std::slice::from_ref(r))).collect();
    let mult = Matrix::from_cols(
        m,
        values.iter().enumerate().map(|(k, v)| SparseVec::from_pairs([(k, v.clone())])).collect(),
    );
    let d = vec![Matrix::zeros(m, m), mult, Matrix::zeros(m, m), Matrix::zeros(0, m)];
    let complex = CochainComplex::checked(GradedSpace::new(vec![m; 4]), d).expect("d² = 0 on four lines");
    Ok(ProductLineModel { roots: roots.to_vec(), fprime: fprime.clone(), values, complex })
}

impl ProductLineModel {
    pub fn samples(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[Scalar] {
        &self.roots
    }

    pub fn fprime(&self) -> &Poly {
        &self.fprime
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    /// Diagonal matrix of `f′` at the samples.
    pub fn multiplication(&self) -> Matrix {
        self.complex.dn(1)
    }

    pub fn kernel_dim(&self) -> usize {
        self.values.iter().filter(|v| v.is_zero()).count()
    }

    pub fn cokernel_dim(&self) -> usize {
        self.samples() - self.multiplication().rank()
    }

    /// `F_0` everything, `F_1 = F_2` the `π_0` lines, `F_3 = 0`.
    pub fn filtration(&self) -> FilteredComplex {
        let m = self.samples();
        let full = Subspace::full(m);
        let zero = Subspace::zero(m);
        let f0 = vec![full.clone(); 4];
        let f12 = vec![zero.clone(), zero.clone(), full.clone(), full];
        let f3 = vec![zero; 4];
        build_filtered(self.complex.clone(), vec![f0, f12.clone(), f12, f3]).expect("π_0 lines form a subcomplex")
    }

    pub fn spectral_sequence(&self, r_max: usize) -> SpectralSequence {
        pages(&self.filtration(), r_max)
    }

    pub fn report(&self, r_max: usize) -> ProductLineReport {
        let ss = self.spectral_sequence(r_max);
        let m = self.samples();
        // The only possible nonzero differential runs (0,1) → (2,0).
        let hit = (1..ss.pages.len()).find_map(|r| {
            let d = ss.page(r).differential(0, 1)?;
            (d.target == (2, 0)).then(|| (r, d.matrix == self.multiplication()))
        });
        let (differential_page, is_mult) = match hit {
            Some((r, eq)) => (Some(r), eq),
            None => (None, false),
        };
        ProductLineReport {
            samples: m,
            kernel: self.kernel_dim(),
            cokernel: self.cokernel_dim(),
            direct_dims: cohomology_dims(&self.complex),
            predicted_dims: vec![m, self.kernel_dim(), self.kernel_dim(), m],
            e2_cells: ss.page(2).report().cells,
            differential_page,
            differential_is_multiplication: is_mult,
            limit_dims: ss.limit_dims(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::expr::parse_poly;

    fn roots(n: i64) -> Vec<Scalar> {
        (0..n).map(Scalar::from_int).collect()
    }

    #[test]
    fn two_critical_points() {
        let f = parse_poly("t*(t-1)", &["t"]).unwrap();
        let r = build_product_line_model(&roots(5), &f).unwrap().report(4);
        assert_eq!(r.e2_cells, vec![(0, 0, 5), (0, 1, 5), (2, 0, 5), (2, 1, 5)]);
        assert_eq!(r.differential_page, Some(2));
        assert!(r.differential_is_multiplication);
        assert_eq!(r.limit_dims, vec![5, 2, 2, 5]);
        assert_eq!(r.direct_dims, r.limit_dims);
    }

    #[test]
    fn unit_and_zero() {
        let unit = parse_poly("t^2 + 1", &["t"]).unwrap();
        assert_eq!(build_product_line_model(&roots(5), &unit).unwrap().report(4).limit_dims, vec![5, 0, 0, 5]);
        let zero = Poly::zero(1);
        assert_eq!(build_product_line_model(&roots(5), &zero).unwrap().report(4).limit_dims, vec![5, 5, 5, 5]);
    }

    #[test]
    fn duplicates_rejected() {
        let f = parse_poly("t", &["t"]).unwrap();
        assert!(matches!(
            build_product_line_model(&[Scalar::one(), Scalar::one()], &f),
            Err(PoissonError::DuplicateRoots)
        ));
    }
}
