//! Low-degree statements and fibre-tangent operator identities on su(2) examples.

use equicoh::gdiff::{low_degree, tensor_product, GDiffComplex};
use equicoh::lie::{CeComplex, LieAlgebra, Representation};
use equicoh::linalg::{CochainComplex, GradedSpace, Matrix};
use equicoh::poisson::{contract, mu_tangent_complex, poisson_gdiff, schouten, MomentumData, Poly, PolyMultivector};

/// `Λ(u, v)` with zero differential and the trivial `g`-action.
fn trivial_exterior(g: &LieAlgebra) -> GDiffComplex {
    let dims = vec![1, 2, 1];
    let space = GradedSpace::new(dims.clone());
    let zeros = |shift: i64| -> Vec<Matrix> {
        (0..3)
            .map(|n: i64| {
                let t = n + shift;
                let rows = if (0..3).contains(&t) { dims[t as usize] } else { 0 };
                Matrix::zeros(rows, dims[n as usize])
            })
            .collect()
    };
    let complex = CochainComplex::new(space, zeros(1)).unwrap();
    let r = g.dim();
    let a = GDiffComplex::unchecked(g, complex, vec![zeros(-1); r], vec![zeros(0); r]).unwrap();
    a.validate().unwrap();
    a
}

fn su2_complexes() -> Vec<(&'static str, GDiffComplex)> {
    let g = LieAlgebra::su2();
    let ce = GDiffComplex::from_ce(&CeComplex::trivial(&g));
    let s2 = Representation::coadjoint(&g).symmetric_power(2);
    let ext = trivial_exterior(&g);
    vec![
        ("CE(su2)", ce.clone()),
        ("CE(su2; adjoint)", GDiffComplex::from_ce(&CeComplex::new(&g, &Representation::adjoint(&g)).unwrap())),
        ("CE(su2; S2 coadjoint)", GDiffComplex::from_ce(&CeComplex::new(&g, &s2).unwrap())),
        ("trivial exterior", ext.clone()),
        ("CE(su2) x trivial exterior", tensor_product(&ce, &ext).unwrap().gdiff),
    ]
}

#[test]
fn closed_invariant_degree_one_elements_are_equivariantly_closed() {
    for (name, a) in su2_complexes() {
        let r = low_degree(&a, 1).unwrap();
        assert!(r.automatically_closed(), "{name}");
        assert_eq!(r.closed_invariant, r.cartan_closed, "{name}");
    }
}

#[test]
fn forgetful_map_in_low_degrees() {
    let mut saw_nonzero = false;
    for (name, a) in su2_complexes() {
        let r = low_degree(&a, 1).unwrap();
        assert!(r.degree_one_iso(), "{name}: {r:?}");
        assert!(r.degree_two_epi(), "{name}: {r:?}");
        saw_nonzero |= r.plain_dims[1] > 0 && r.plain_dims[2] > 0;
    }
    assert!(saw_nonzero, "at least one example has H^1 and H^2 nonzero");
}

#[test]
fn tensor_with_exterior_has_the_expected_low_degrees() {
    let g = LieAlgebra::su2();
    let a = tensor_product(&GDiffComplex::from_ce(&CeComplex::trivial(&g)), &trivial_exterior(&g)).unwrap().gdiff;
    let r = low_degree(&a, 1).unwrap();
    assert_eq!(r.plain_dims, vec![1, 2, 1]);
    assert_eq!(r.equivariant_dims, vec![1, 2, 1]);
    assert_eq!(r.forget_ranks, vec![1, 2, 1]);
}

#[test]
fn hypothesis_matters_for_abelian_algebras() {
    let g = LieAlgebra::abelian(1);
    let r = low_degree(&GDiffComplex::from_ce(&CeComplex::trivial(&g)), 1).unwrap();
    assert!(!r.automatically_closed());
}

#[test]
fn poisson_degree_one_description_on_the_dual() {
    let md = MomentumData::linear_dual(&LieAlgebra::su2());
    for w in 0..=3 {
        let pg = poisson_gdiff(&md, w).unwrap();
        let r = low_degree(&pg.complex, 1).unwrap();
        assert!(r.horizontal_description_holds(), "slice {w}: {r:?}");
        assert!(r.automatically_closed(), "slice {w}");
    }
}

#[test]
fn horizontal_description_on_su2_complexes() {
    for (name, a) in su2_complexes() {
        assert!(low_degree(&a, 1).unwrap().horizontal_description_holds(), "{name}");
    }
}

#[test]
fn fibre_tangent_lie_operators_agree_on_every_fixture() {
    let fixtures: Vec<(&str, MomentumData, Vec<i64>)> = vec![
        ("linear dual su2", MomentumData::linear_dual(&LieAlgebra::su2()), (0..=3).collect()),
        ("linear dual heisenberg", MomentumData::linear_dual(&LieAlgebra::heisenberg()), (0..=2).collect()),
        ("circle on plane", MomentumData::circle_on_plane(), (0..=3).collect()),
        ("torus on symplectic 4-space", MomentumData::torus_on_symplectic(2), (0..=2).collect()),
    ];
    for (name, md, slices) in fixtures {
        for w in slices {
            let t = mu_tangent_complex(&md, w).unwrap();
            assert!(t.lie_operators_agree, "{name}, slice {w}");
        }
    }
}

/// The cobracket fixture's lift is inhomogeneous, so there are no weight slices; compare the
/// operators on explicit multivectors instead, horizontal or not.
#[test]
fn fibre_tangent_lie_operators_agree_for_the_cobracket_fixture() {
    let md = MomentumData::cobracket_fixture();
    let p = md.structure();
    let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
    let samples = [
        PolyMultivector::term(2, 0, x.mul(&y).add(&Poly::one(2))),
        PolyMultivector::term(2, 0b01, y.pow(2)),
        PolyMultivector::term(2, 0b10, x.pow(3)).add(&PolyMultivector::term(2, 0b01, x.clone())),
        PolyMultivector::term(2, 0b11, x.mul(&y)),
    ];
    let mut horizontal = 0;
    for w in &samples {
        for (alpha, a) in md.lift().iter().zip(md.action()) {
            assert_eq!(p.lie_derivative(alpha, w), schouten(a, w).unwrap());
            horizontal += usize::from(contract(alpha, w).is_zero());
        }
    }
    assert!(horizontal > 0);
}
