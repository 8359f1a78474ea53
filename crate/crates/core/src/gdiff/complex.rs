//! G-differential complexes and their axioms.

use std::collections::HashMap;

use serde::Serialize;

use super::GDiffError;
use crate::basis::wedge_masks;
use crate::lie::{CeComplex, LieAlgebra, SubalgebraData};
use crate::linalg::{CochainComplex, GradedSpace, LinearMap, Matrix, SparseVec};
use crate::scalar::Scalar;

/// Multiplication of basis elements: `(deg a, a, deg b, b) ↦ a·b` in degree `deg a + deg b`.
#[derive(Clone, Debug, Default)]
pub struct ProductTable {
    entries: HashMap<(usize, usize, usize, usize), SparseVec>,
}

impl ProductTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, da: usize, a: usize, db: usize, b: usize, v: SparseVec) {
        if v.is_zero() {
            self.entries.remove(&(da, a, db, b));
        } else {
            self.entries.insert((da, a, db, b), v);
        }
    }

    pub fn basis_product(&self, da: usize, a: usize, db: usize, b: usize) -> Option<&SparseVec> {
        self.entries.get(&(da, a, db, b))
    }

    pub fn mul(&self, da: usize, x: &SparseVec, db: usize, y: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (a, p) in x.iter() {
            for (b, q) in y.iter() {
                if let Some(v) = self.entries.get(&(da, a, db, b)) {
                    let pq = p * q;
                    pairs.extend(v.iter().map(|(k, c)| (k, &pq * c)));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize, usize, usize), &SparseVec)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A cochain complex with contractions `i_j` (degree −1) and Lie operators
/// `L_j` (degree 0) for each basis element `e_j` of `g`.
#[derive(Clone, Debug)]
pub struct GDiffComplex {
    g: LieAlgebra,
    complex: CochainComplex,
    contractions: Vec<LinearMap>,
    lie: Vec<LinearMap>,
    product: Option<ProductTable>,
    unit: Option<SparseVec>,
    sym_degree: Option<Vec<Vec<usize>>>,
}

/// One identity of the axiom suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub identity: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// 0-based generator indices.
    pub generators: Vec<usize>,
    pub degree: usize,
    /// Basis element(s) of the complex on which the identity fails.
    pub basis: Vec<usize>,
}

impl Witness {
    /// Generators as 1-based labels `e1, e2, …`.
    pub fn labels(&self) -> Vec<String> {
        self.generators.iter().map(|g| format!("e{}", g + 1)).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn into_result(self) -> Result<AxiomReport, GDiffError> {
        match self.first_failure() {
            Some(c) => {
                let w = c.witness.clone().expect("failures carry witnesses");
                Err(GDiffError::AxiomFailure { identity: c.identity.clone(), witness: w })
            }
            None => Ok(self),
        }
    }
}

pub const IDENTITIES: [&str; 5] = ["i", "ii'", "iii", "L-d", "L-hom"];

impl GDiffComplex {
    /// Builds and validates all axioms (and Leibniz rules when multiplicative).
    pub fn new(
        g: &LieAlgebra,
        complex: CochainComplex,
        contractions: Vec<Vec<Matrix>>,
        lie: Vec<Vec<Matrix>>,
    ) -> Result<Self, GDiffError> {
        let c = Self::unchecked(g, complex, contractions, lie)?;
        c.validate()?;
        Ok(c)
    }

    /// Builds with shape checks only.
    pub fn unchecked(
        g: &LieAlgebra,
        complex: CochainComplex,
        contractions: Vec<Vec<Matrix>>,
        lie: Vec<Vec<Matrix>>,
    ) -> Result<Self, GDiffError> {
        if contractions.len() != g.dim() || lie.len() != g.dim() {
            return Err(GDiffError::OperatorCount { expected: g.dim() });
        }
        let space = complex.space().clone();
        let contractions = contractions
            .into_iter()
            .map(|b| LinearMap::new(space.clone(), space.clone(), -1, b))
            .collect::<Result<Vec<_>, _>>()?;
        let lie = lie
            .into_iter()
            .map(|b| LinearMap::new(space.clone(), space.clone(), 0, b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GDiffComplex { g: g.clone(), complex, contractions, lie, product: None, unit: None, sym_degree: None })
    }

    pub fn with_product(mut self, product: ProductTable, unit: Option<SparseVec>) -> Self {
        self.product = Some(product);
        self.unit = unit;
        self
    }

    pub fn with_unit(mut self, unit: SparseVec) -> Self {
        self.unit = Some(unit);
        self
    }

    pub fn with_sym_degree(mut self, tags: Vec<Vec<usize>>) -> Self {
        self.sym_degree = Some(tags);
        self
    }

    /// Runs the axiom suite and fails on the first violated identity.
    pub fn validate(&self) -> Result<(), GDiffError> {
        self.complex.check_square_zero()?;
        self.check_axioms().into_result().map(|_| ())
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn space(&self) -> &GradedSpace {
        self.complex.space()
    }

    pub fn len(&self) -> usize {
        self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.complex.dim(n)
    }

    pub fn d(&self, n: usize) -> Matrix {
        self.complex.dn(n)
    }

    /// `i_{e_j}: C^n → C^{n-1}`.
    pub fn i(&self, j: usize, n: usize) -> Matrix {
        self.contractions[j].block(n)
    }

    /// `L_{e_j}: C^n → C^n`.
    pub fn l(&self, j: usize, n: usize) -> Matrix {
        self.lie[j].block(n)
    }

    pub fn i_of(&self, x: &SparseVec, n: usize) -> Matrix {
        let rows = if n == 0 { 0 } else { self.dim(n - 1) };
        let mut m = Matrix::zeros(rows, self.dim(n));
        for (j, c) in x.iter() {
            m = m.add_scaled(c, &self.i(j, n));
        }
        m
    }

    pub fn l_of(&self, x: &SparseVec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(self.dim(n), self.dim(n));
        for (j, c) in x.iter() {
            m = m.add_scaled(c, &self.l(j, n));
        }
        m
    }

    pub fn product(&self) -> Option<&ProductTable> {
        self.product.as_ref()
    }

    pub fn unit(&self) -> Option<&SparseVec> {
        self.unit.as_ref()
    }

    pub fn is_multiplicative(&self) -> bool {
        self.product.is_some()
    }

    pub fn sym_degree(&self) -> Option<&Vec<Vec<usize>>> {
        self.sym_degree.as_ref()
    }

    /// Replaces the contraction of generator `j` by its negative (for fixtures).
    pub fn negate_contraction(&mut self, j: usize) {
        let space = self.space().clone();
        let blocks = self.contractions[j].blocks().iter().map(|b| b.neg()).collect();
        self.contractions[j] = LinearMap::new(space.clone(), space, -1, blocks).expect("same shapes");
    }

    /// Verifies the five identities on every generator pair and degree, and
    /// the graded Leibniz rules when a product table is present.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.g.dim();
        let top = self.len();
        let mut checks = Vec::new();
        let mut record = |name: &str, found: Option<Witness>| {
            checks.push(AxiomCheck { identity: name.to_string(), passed: found.is_none(), witness: found });
        };
        let mismatch = |a: &Matrix, b: &Matrix| -> Option<Vec<usize>> {
            let diff = a.sub(b);
            diff.first_nonzero().map(|(_, col, _)| vec![col])
        };

        // (i) i_a i_b + i_b i_a = 0
        let mut w = None;
        'i: for a in 0..n {
            for b in a..n {
                for deg in 2..top {
                    let s = self.i(a, deg - 1).mul(&self.i(b, deg)).add(&self.i(b, deg - 1).mul(&self.i(a, deg)));
                    if let Some((_, col, _)) = s.first_nonzero() {
                        w = Some(Witness { generators: vec![a, b], degree: deg, basis: vec![col] });
                        break 'i;
                    }
                }
            }
        }
        record("i", w);

        // (ii') i_{[a,b]} = L_a i_b - i_b L_a
        let mut w = None;
        'ii: for a in 0..n {
            for b in 0..n {
                for deg in 1..top {
                    let lhs = self.i_of(self.g.bracket_basis(a, b), deg);
                    let rhs = self.l(a, deg - 1).mul(&self.i(b, deg)).sub(&self.i(b, deg).mul(&self.l(a, deg)));
                    if let Some(basis) = mismatch(&lhs, &rhs) {
                        w = Some(Witness { generators: vec![a, b], degree: deg, basis });
                        break 'ii;
                    }
                }
            }
        }
        record("ii'", w);

        // (iii) L_a = d i_a + i_a d
        let mut w = None;
        'iii: for a in 0..n {
            for deg in 0..top {
                let di = if deg == 0 {
                    Matrix::zeros(self.dim(0), self.dim(0))
                } else {
                    self.d(deg - 1).mul(&self.i(a, deg))
                };
                let id = self.i(a, deg + 1).mul(&self.d(deg));
                if let Some(basis) = mismatch(&self.l(a, deg), &di.add(&id)) {
                    w = Some(Witness { generators: vec![a], degree: deg, basis });
                    break 'iii;
                }
            }
        }
        record("iii", w);

        // [L_a, d] = 0
        let mut w = None;
        'ld: for a in 0..n {
            for deg in 0..top {
                let lhs = self.l(a, deg + 1).mul(&self.d(deg));
                let rhs = self.d(deg).mul(&self.l(a, deg));
                if let Some(basis) = mismatch(&lhs, &rhs) {
                    w = Some(Witness { generators: vec![a], degree: deg, basis });
                    break 'ld;
                }
            }
        }
        record("L-d", w);

        // L_{[a,b]} = [L_a, L_b]
        let mut w = None;
        'lh: for a in 0..n {
            for b in a + 1..n {
                for deg in 0..top {
                    let lhs = self.l_of(self.g.bracket_basis(a, b), deg);
                    let rhs = self.l(a, deg).mul(&self.l(b, deg)).sub(&self.l(b, deg).mul(&self.l(a, deg)));
                    if let Some(basis) = mismatch(&lhs, &rhs) {
                        w = Some(Witness { generators: vec![a, b], degree: deg, basis });
                        break 'lh;
                    }
                }
            }
        }
        record("L-hom", w);

        if let Some(p) = &self.product {
            for (name, w) in self.leibniz_checks(p) {
                record(name, w);
            }
        }
        AxiomReport { checks }
    }

    fn leibniz_checks(&self, p: &ProductTable) -> Vec<(&'static str, Option<Witness>)> {
        let top = self.len();
        let n = self.g.dim();
        let sign = |deg: usize| if deg.is_multiple_of(2) { Scalar::one() } else { -Scalar::one() };
        let mut unit_w = None;
        if let Some(u) = &self.unit {
            'u: for da in 0..top {
                for a in 0..self.dim(da) {
                    let x = SparseVec::unit(a);
                    if p.mul(0, u, da, &x) != x || p.mul(da, &x, 0, u) != x {
                        unit_w = Some(Witness { generators: vec![], degree: da, basis: vec![a] });
                        break 'u;
                    }
                }
            }
        }
        let (mut dw, mut iw, mut lw) = (None, None, None);
        let dmats: Vec<Matrix> = (0..top).map(|k| self.d(k)).collect();
        let imats: Vec<Vec<Matrix>> = (0..n).map(|j| (0..top).map(|k| self.i(j, k)).collect()).collect();
        let lmats: Vec<Vec<Matrix>> = (0..n).map(|j| (0..top).map(|k| self.l(j, k)).collect()).collect();
        for da in 0..top {
            for db in 0..top.saturating_sub(da) {
                for a in 0..self.dim(da) {
                    for b in 0..self.dim(db) {
                        let (x, y) = (SparseVec::unit(a), SparseVec::unit(b));
                        let xy = p.mul(da, &x, db, &y);
                        let wit = |gens: Vec<usize>| Some(Witness { generators: gens, degree: da + db, basis: vec![a, b] });
                        if dw.is_none() {
                            let lhs = dmats[da + db].apply(&xy);
                            let rhs = p
                                .mul(da + 1, &dmats[da].apply(&x), db, &y)
                                .add_scaled(&sign(da), &p.mul(da, &x, db + 1, &dmats[db].apply(&y)));
                            if lhs != rhs {
                                dw = wit(vec![]);
                            }
                        }
                        for j in 0..n {
                            if iw.is_none() && da + db > 0 {
                                let lhs = imats[j][da + db].apply(&xy);
                                let left = if da == 0 { SparseVec::new() } else { p.mul(da - 1, &imats[j][da].apply(&x), db, &y) };
                                let right = if db == 0 { SparseVec::new() } else { p.mul(da, &x, db - 1, &imats[j][db].apply(&y)) };
                                if lhs != left.add_scaled(&sign(da), &right) {
                                    iw = wit(vec![j]);
                                }
                            }
                            if lw.is_none() {
                                let lhs = lmats[j][da + db].apply(&xy);
                                let rhs = p.mul(da, &lmats[j][da].apply(&x), db, &y).add(&p.mul(da, &x, db, &lmats[j][db].apply(&y)));
                                if lhs != rhs {
                                    lw = wit(vec![j]);
                                }
                            }
                        }
                    }
                }
            }
        }
        vec![("unit", unit_w), ("leibniz-d", dw), ("leibniz-i", iw), ("leibniz-L", lw)]
    }

    /// The point (scalars in degree 0, all operators zero).
    pub fn point(g: &LieAlgebra) -> Self {
        let complex = CochainComplex::new(GradedSpace::new(vec![1]), vec![Matrix::zeros(0, 1)]).expect("shape");
        let n = g.dim();
        let mut table = ProductTable::new();
        table.set(0, 0, 0, 0, SparseVec::unit(0));
        GDiffComplex::unchecked(g, complex, vec![vec![Matrix::zeros(0, 1)]; n], vec![vec![Matrix::zeros(1, 1)]; n])
            .expect("shape")
            .with_product(table, Some(SparseVec::unit(0)))
    }

    /// `CE(g; V)` with the natural contractions and Lie derivatives.
    pub fn from_ce(ce: &CeComplex) -> Self {
        let n = ce.algebra().dim();
        let top = ce.complex().len();
        let i = (0..n).map(|j| (0..top).map(|k| ce.contraction(j, k)).collect()).collect();
        let l = (0..n).map(|j| (0..top).map(|k| ce.lie_derivative(j, k)).collect()).collect();
        let mut c = GDiffComplex::unchecked(ce.algebra(), ce.complex().clone(), i, l).expect("CE operators are shaped");
        if ce.module().dim() == 1 && ce.module().ops().iter().all(|m| m.is_zero()) {
            c = c.with_product(wedge_table(ce), Some(SparseVec::unit(0)));
        }
        c
    }

    /// `CE(g; V)` viewed as a `k`-differential complex (operators along a basis of `k`).
    pub fn from_ce_restricted(ce: &CeComplex, k: &SubalgebraData) -> Self {
        let top = ce.complex().len();
        let i = k.basis().iter().map(|eta| (0..top).map(|n| ce.contraction_of(eta, n)).collect()).collect();
        let l = k.basis().iter().map(|eta| (0..top).map(|n| ce.lie_derivative_of(eta, n)).collect()).collect();
        let mut c = GDiffComplex::unchecked(&k.as_algebra(), ce.complex().clone(), i, l).expect("CE operators are shaped");
        if ce.module().dim() == 1 && ce.module().ops().iter().all(|m| m.is_zero()) {
            c = c.with_product(wedge_table(ce), Some(SparseVec::unit(0)));
        }
        c
    }

    /// Same data with operators along a new basis of a subalgebra `k ⊆ g`.
    pub fn restrict_to(&self, k: &SubalgebraData) -> Self {
        let top = self.len();
        let i = k.basis().iter().map(|eta| (0..top).map(|n| self.i_of(eta, n)).collect()).collect();
        let l = k.basis().iter().map(|eta| (0..top).map(|n| self.l_of(eta, n)).collect()).collect();
        let mut c = GDiffComplex::unchecked(&k.as_algebra(), self.complex.clone(), i, l).expect("same shapes");
        c.product = self.product.clone();
        c.unit = self.unit.clone();
        c.sym_degree = self.sym_degree.clone();
        c
    }

    /// The same complex regarded over a trivially acting zero algebra.
    pub fn forget_action(&self) -> Self {
        let g = LieAlgebra::abelian(0);
        let mut c = GDiffComplex::unchecked(&g, self.complex.clone(), vec![], vec![]).expect("no operators");
        c.product = self.product.clone();
        c.unit = self.unit.clone();
        c
    }
}

fn wedge_table(ce: &CeComplex) -> ProductTable {
    let ext = ce.exterior();
    let mut t = ProductTable::new();
    for da in 0..=ext.top() {
        for db in 0..=ext.top() - da {
            for (a, &ma) in ext.degree(da).iter().enumerate() {
                for (b, &mb) in ext.degree(db).iter().enumerate() {
                    if let Some((m, s)) = wedge_masks(ma, mb) {
                        t.set(da, a, db, b, SparseVec::from_pairs([(ext.pos(m), Scalar::from_int(s))]));
                    }
                }
            }
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::Representation;

    #[test]
    fn ce_su2_passes() {
        let g = LieAlgebra::su2();
        let c = GDiffComplex::from_ce(&CeComplex::trivial(&g));
        let r = c.check_axioms();
        assert!(r.passed(), "{:?}", r.first_failure());
        assert_eq!(r.checks.len(), 9);
        let m = GDiffComplex::from_ce(&CeComplex::new(&g, &Representation::coadjoint(&g)).unwrap());
        assert!(m.check_axioms().passed());
    }

    #[test]
    fn negated_contraction_fails_ii() {
        let g = LieAlgebra::su2();
        let mut c = GDiffComplex::from_ce(&CeComplex::trivial(&g));
        c.negate_contraction(1);
        let r = c.check_axioms();
        let f = r.first_failure().unwrap();
        assert_eq!(f.identity, "ii'");
        assert_eq!(f.witness.as_ref().unwrap().labels(), vec!["e1", "e2"]);
    }

    #[test]
    fn point_passes() {
        let c = GDiffComplex::point(&LieAlgebra::su2());
        assert!(c.check_axioms().passed());
    }

    #[test]
    fn restricted_operators_pass() {
        let g = LieAlgebra::su2();
        let k = SubalgebraData::coordinate(&g, &[2]).unwrap();
        let c = GDiffComplex::from_ce_restricted(&CeComplex::trivial(&g), &k);
        assert!(c.check_axioms().passed());
        assert_eq!(c.algebra().dim(), 1);
    }
}
