//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Every check is exact. Oracles are computed here, independently of the library path under
//! test, wherever that is practical: brute-force dense ranks for Lie cohomology, closed-form
//! invariant counts for su(2) and tori, root counting for the product-line model.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use equicoh::gdiff::{
    cartan_model, equivariant_cohomology, low_degree, tensor_product, weil_algebra, weil_cartan_comparison,
    GDiffComplex,
};
use equicoh::lie::{lie_cohomology, relative_subcomplex, CeComplex, LieAlgebra, Representation, SubalgebraData};
use equicoh::linalg::{cohomology_dims, homotopy_witness, CochainComplex};
use equicoh::poisson::{
    build_product_line_model, contract, de_rham_complex, equivariant_poisson_cohomology, lie_poisson_slice,
    mu_tangent_complex, parse_poly, poisson_cohomology, poisson_complex, poisson_gdiff, schouten, verify_all,
    Convention, ModelSpec, MomentumData, Poly, PoissonStructure, PolyMultivector, SampleConfig,
};
use equicoh::spectral::{contraction_filtration, pages, symdegree_d2_matches, symdegree_filtration};
use equicoh::Scalar;

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Outcome {
    ensure(got == want, || format!("{what}: got {got:?}, expected {want:?}"))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Rank of a dense rational matrix by Gaussian elimination.
fn dense_rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in rank + 1..rows.len() {
            if rows[r][c].is_zero() {
                continue;
            }
            let f = &rows[r][c] / &pivot;
            let (top, rest) = rows.split_at_mut(r);
            for (x, y) in rest[0][c..].iter_mut().zip(&top[rank][c..]) {
                *x -= y * &f;
            }
        }
        rank += 1;
    }
    rank
}

/// Position of `k` in the increasing list of bits of `mask`.
fn bit_pos(mask: u32, k: usize) -> usize {
    (mask & ((1 << k) - 1)).count_ones() as usize
}

/// Dense CE differential `Λ^n g* → Λ^{n+1} g*` on bitmask bases, written from the evaluation
/// formula `dα(x_0..x_n) = Σ_{a<b} (-1)^{a+b} α([x_a, x_b], x_0..x̂_a..x̂_b..x_n)`.
fn brute_ce(g: &LieAlgebra, n: usize, sources: &[u32]) -> Vec<Vec<Scalar>> {
    let dim = g.dim();
    let targets: Vec<u32> = (0u32..1 << dim).filter(|m| m.count_ones() as usize == n + 1).collect();
    let mut rows = vec![vec![Scalar::zero(); sources.len()]; targets.len()];
    for (ti, &t) in targets.iter().enumerate() {
        let xs: Vec<usize> = (0..dim).filter(|&i| t >> i & 1 == 1).collect();
        for a in 0..xs.len() {
            for b in a + 1..xs.len() {
                let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
                let rest = t & !(1 << xs[a]) & !(1 << xs[b]);
                for k in 0..dim {
                    let c = g.c(xs[a], xs[b], k);
                    if c.is_zero() || rest >> k & 1 == 1 {
                        continue;
                    }
                    let src = rest | 1 << k;
                    let Some(si) = sources.iter().position(|&s| s == src) else { continue };
                    let s = if bit_pos(src, k).is_multiple_of(2) { sign } else { -sign };
                    rows[ti][si] += &c * &Scalar::from(s);
                }
            }
        }
    }
    rows
}

/// `dim H^n` of Λg* (trivial coefficients), or of the forms built on the basis vectors in
/// `allowed` when a relative computation is wanted. The allowed set must be stable under `d`.
fn brute_lie_dims(g: &LieAlgebra, allowed: &dyn Fn(u32) -> bool) -> Vec<usize> {
    let dim = g.dim();
    let deg = |n: usize| -> Vec<u32> { (0u32..1 << dim).filter(|&m| m.count_ones() as usize == n && allowed(m)).collect() };
    let ranks: Vec<usize> = (0..=dim)
        .map(|n| {
            let src = deg(n);
            let tgt = deg(n + 1);
            let full = brute_ce(g, n, &src);
            let all_targets: Vec<u32> = (0u32..1 << dim).filter(|m| m.count_ones() as usize == n + 1).collect();
            let keep: Vec<Vec<Scalar>> =
                all_targets.iter().zip(full).filter(|(t, _)| tgt.contains(t)).map(|(_, r)| r).collect();
            if src.is_empty() || keep.is_empty() {
                0
            } else {
                dense_rank(keep)
            }
        })
        .collect();
    (0..=dim).map(|n| deg(n).len() - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] }).collect()
}

fn c1_lie_table() -> Outcome {
    let any = |_: u32| true;
    for (name, g, want) in [
        ("su(2)", LieAlgebra::su2(), vec![1, 0, 0, 1]),
        ("heisenberg", LieAlgebra::heisenberg(), vec![1, 2, 2, 1]),
    ] {
        let got = lie_cohomology(&g, None, &Representation::trivial(&g, 1), false).map_err(|e| e.to_string())?.dims;
        eq(&format!("{name} oracle"), brute_lie_dims(&g, &any), want.clone())?;
        eq(name, got, want)?;
    }
    for n in 1..=5 {
        let g = LieAlgebra::abelian(n);
        let want: Vec<usize> = (0..=n).map(|k| binomial(n, k)).collect();
        let got = lie_cohomology(&g, None, &Representation::trivial(&g, 1), false).map_err(|e| e.to_string())?.dims;
        eq(&format!("abelian-{n} oracle"), brute_lie_dims(&g, &any), want.clone())?;
        eq(&format!("abelian-{n}"), got, want)?;
    }
    // su(2) relative to the circle spanned by e3: forms in e1*, e2* invariant under the rotation.
    // Among those only 1 and e1*∧e2* are invariant, and d kills both.
    let g = LieAlgebra::su2();
    let k = SubalgebraData::coordinate(&g, &[2]).map_err(|e| e.to_string())?;
    let mut got = lie_cohomology(&g, Some(&k), &Representation::trivial(&g, 1), false).map_err(|e| e.to_string())?.dims;
    got.resize(4, 0);
    let oracle = brute_lie_dims(&g, &|m| m == 0 || m == 0b011);
    eq("su(2), circle oracle", oracle, vec![1, 0, 1, 0])?;
    eq("su(2), circle", got, vec![1, 0, 1, 0])
}

fn su2_invariant_polys(m: usize) -> usize {
    usize::from(m.is_multiple_of(2))
}

fn c2_coefficient_factorization() -> Outcome {
    let g = LieAlgebra::su2();
    let base = [1, 0, 0, 1];
    for j in 0..=6 {
        let rep = Representation::coadjoint(&g).symmetric_power(j);
        let inv = rep.invariants().dim();
        eq(&format!("dim (S^{j})^g"), inv, su2_invariant_polys(j))?;
        let got = lie_cohomology(&g, None, &rep, false).map_err(|e| e.to_string())?.dims;
        eq(&format!("S^{j}"), got, base.iter().map(|h| h * inv).collect())?;
    }
    Ok(())
}

fn c3_weil() -> Outcome {
    for (name, g, inv) in [
        ("su(2)", LieAlgebra::su2(), su2_invariant_polys as fn(usize) -> usize),
        ("T^2", LieAlgebra::abelian(2), |m: usize| m + 1),
    ] {
        for cap in 1..=3 {
            let (_, r) = weil_algebra(&g, cap).map_err(|e| e.to_string())?;
            ensure(r.acyclic_in_band, || format!("{name}, M={cap}: cohomology {:?}", r.cohomology_dims))?;
            let want_poly: Vec<usize> = (0..=cap).map(inv).collect();
            eq(&format!("{name}, M={cap}: invariant polynomials"), r.invariant_polynomial_dims.clone(), want_poly.clone())?;
            let basic_even: Vec<usize> = (0..=cap).map(|m| r.basic_dims.get(2 * m).copied().unwrap_or(0)).collect();
            eq(&format!("{name}, M={cap}: basic dims in degrees 2m"), basic_even, want_poly)?;
            let odd_zero = r.basic_dims.iter().skip(1).step_by(2).take(cap).all(|&d| d == 0);
            ensure(odd_zero, || format!("{name}, M={cap}: odd basic dims {:?}", r.basic_dims))?;
        }
    }
    Ok(())
}

/// Name, complex, `dim H^q(A)`, and `m ↦ dim (S^m g*)^g`.
type Example = (&'static str, GDiffComplex, Vec<usize>, fn(usize) -> usize);

fn examples_a() -> Vec<Example> {
    let su2 = LieAlgebra::su2();
    let t2 = LieAlgebra::abelian(2);
    let s2 = Representation::coadjoint(&su2).symmetric_power(2);
    vec![
        ("CE(su2)", GDiffComplex::from_ce(&CeComplex::trivial(&su2)), vec![1, 0, 0, 1], su2_invariant_polys),
        ("CE(T2)", GDiffComplex::from_ce(&CeComplex::trivial(&t2)), vec![1, 2, 1], |m| m + 1),
        (
            "CE(su2; S2 coadjoint)",
            GDiffComplex::from_ce(&CeComplex::new(&su2, &s2).expect("module")),
            vec![1, 0, 0, 1],
            su2_invariant_polys,
        ),
    ]
}

fn c4_weil_equivalence() -> Outcome {
    for (name, a, _, _) in examples_a() {
        for cap in 1..=2 {
            let cmp = weil_cartan_comparison(&a, cap).map_err(|e| e.to_string())?;
            ensure(cmp.chain_map, || format!("{name}, M={cap}: inclusion is not a chain map"))?;
            ensure(cmp.dims_agree_in_band(), || {
                format!("{name}, M={cap}: basic {:?} vs Cartan {:?}", cmp.basic_dims, cmp.equivariant_dims)
            })?;
            ensure(cmp.iso_in_band, || format!("{name}, M={cap}: no isomorphism in band {}", cmp.band))?;
        }
    }
    Ok(())
}

fn c5_symdegree_ss() -> Outcome {
    for (name, a, h, inv) in examples_a() {
        let cap = 2;
        let model = cartan_model(&a, cap).map_err(|e| e.to_string())?;
        let eqc = equivariant_cohomology(&model).map_err(|e| e.to_string())?;
        let ss = pages(&symdegree_filtration(&model), 3);
        for p in 0..=2 * cap {
            for (q, hq) in h.iter().enumerate() {
                let want = if p % 2 == 0 { hq * inv(p / 2) } else { 0 };
                let (e1, e2) = (ss.page(1).dim(p, q as i64), ss.page(2).dim(p, q as i64));
                ensure(e1 == e2, || format!("{name}: E1 != E2 at ({p},{q}): {e1} vs {e2}"))?;
                ensure(e2 == want, || format!("{name}: E2 at ({p},{q}) is {e2}, expected {want}"))?;
            }
        }
        ensure(symdegree_d2_matches(&model, &ss), || format!("{name}: d2 is not the contraction map"))?;
        eq(&format!("{name}: limit"), ss.limit_dims(), eqc.dims.clone())?;
    }
    Ok(())
}

fn c6_contraction_ss() -> Outcome {
    let g = LieAlgebra::su2();
    let ce = GDiffComplex::from_ce(&CeComplex::trivial(&g));
    let (w, _) = weil_algebra(&g, 2).map_err(|e| e.to_string())?;
    let aw = tensor_product(&ce, w.gdiff()).map_err(|e| e.to_string())?.gdiff;
    let hg = [1usize, 0, 0, 1];
    for (name, a) in [("CE(su2)", ce), ("CE(su2) x W<=2", aw)] {
        let eqc = equivariant_cohomology(&cartan_model(&a, 2).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let total = cohomology_dims(a.complex());
        let ss = pages(&contraction_filtration(&a), 3);
        let e2 = ss.page(2);
        for p in 0..=eqc.band {
            for (q, h) in hg.iter().enumerate() {
                let want = h * eqc.dims.get(p).copied().unwrap_or(0);
                let got = e2.dim(p, q as i64);
                ensure(got == want, || format!("{name}: E2 at ({p},{q}) is {got}, expected {want}"))?;
            }
        }
        eq(&format!("{name}: E_inf antidiagonals"), ss.infinity().total_dims(a.len()), total.clone())?;
        eq(&format!("{name}: limit"), ss.limit_dims(), total)?;
    }
    Ok(())
}

const CALCULUS_IDENTITIES: &[&str] =
    &["bracket", "cartan-poisson", "ii", "leibn", "poisson-lie-1", "ti-i", "ti-wedge", "dual", "alt-mod"];

fn c7_identity_suite() -> Outcome {
    let structures = [
        ("zero", PoissonStructure::zero(3)),
        ("symplectic", PoissonStructure::symplectic(1)),
        ("su(2) linear", PoissonStructure::linear_dual(&LieAlgebra::su2())),
    ];
    let cfg = SampleConfig { count: 100, ..SampleConfig::default() };
    for (name, p) in &structures {
        let reports = verify_all(p, &cfg);
        for id in CALCULUS_IDENTITIES {
            let r = reports.iter().find(|r| r.identity == *id).ok_or_else(|| format!("{id} not in the suite"))?;
            ensure(r.samples >= 100, || format!("{name}/{id}: only {} samples", r.samples))?;
            ensure(r.passed(), || format!("{name}/{id}: {:?}", r.failure))?;
        }
        ensure(reports.iter().all(|r| r.passed()), || format!("{name}: auxiliary identity failed"))?;
    }
    for (name, p) in &structures[1..] {
        let flipped = p.clone().with_convention(Convention::Flipped);
        for seed in [1u64, 7, 0x5eed] {
            let reports = verify_all(&flipped, &SampleConfig { seed, ..cfg });
            let w = reports.iter().find_map(|r| r.failure.as_ref());
            let w = w.ok_or_else(|| format!("{name} flipped, seed {seed}: no identity failed"))?;
            ensure(!w.input.is_empty() && !w.residual.is_empty(), || format!("{name} flipped: empty witness"))?;
        }
    }
    Ok(())
}

fn c8_poisson_to_lie() -> Outcome {
    let g = LieAlgebra::su2();
    let mut sum = vec![0; 4];
    for k in 0..=4u32 {
        let s = lie_poisson_slice(&g, k).map_err(|e| e.to_string())?;
        ensure(s.isomorphic, || format!("slice {k}: complexes differ"))?;
        eq(&format!("slice {k}: Poisson vs CE"), s.poisson_dims.clone(), s.ce_dims.clone())?;
        let inv = su2_invariant_polys(k as usize);
        let want: Vec<usize> = [1, 0, 0, 1].iter().map(|h| h * inv).collect();
        eq(&format!("slice {k}"), s.poisson_dims.clone(), want)?;
        for (acc, d) in sum.iter_mut().zip(&s.poisson_dims) {
            *acc += d;
        }
    }
    eq("sum of slices", sum, vec![3, 0, 0, 3])?;
    let h = poisson_cohomology(&PoissonStructure::linear_dual(&g), ModelSpec::UpTo(4)).map_err(|e| e.to_string())?;
    eq("coefficient degree <= 4", h.dims, vec![3, 0, 0, 3])
}

fn c9_equivariant_dual() -> Outcome {
    let g = LieAlgebra::su2();
    let md = MomentumData::linear_dual(&g);
    let k = SubalgebraData::coordinate(&g, &[2]).map_err(|e| e.to_string())?;
    for w in 0..=4i64 {
        let inv = su2_invariant_polys(w as usize);
        let e = equivariant_poisson_cohomology(&md, w, 2, None).map_err(|e| e.to_string())?;
        let mut want = vec![0; e.band + 1];
        want[0] = inv;
        eq(&format!("G, slice {w}"), e.band_dims(), want)?;

        let ek = equivariant_poisson_cohomology(&md, w, 2, Some(&k)).map_err(|e| e.to_string())?;
        let pattern = [1, 0, 1, 0];
        let mut got = ek.band_dims();
        got.resize(4, 0);
        eq(&format!("circle, slice {w}"), got.clone(), pattern.iter().map(|p| p * inv).collect())?;
        let rep = Representation::adjoint(&g).symmetric_power(w as usize);
        let mut rel = lie_cohomology(&g, Some(&k), &rep, false).map_err(|e| e.to_string())?.dims;
        rel.resize(4, 0);
        eq(&format!("circle, slice {w} vs relative CE"), got, rel)?;
    }
    Ok(())
}

fn c10_product_line() -> Outcome {
    let roots: Vec<Scalar> = (0..5).map(Scalar::from_int).collect();
    for (src, main) in [("t*(t-1)", true), ("1", false), ("0", false)] {
        let f = parse_poly(src, &["t"]).map_err(|e| e.to_string())?;
        let zeros = roots.iter().filter(|r| f.eval(std::slice::from_ref(r)).is_zero()).count();
        let want = vec![5, zeros, zeros, 5];
        let m = build_product_line_model(&roots, &f).map_err(|e| e.to_string())?;
        let rep = m.report(3);
        eq(&format!("f' = {src}: direct"), cohomology_dims(m.complex()), want.clone())?;
        eq(&format!("f' = {src}: reported direct"), rep.direct_dims.clone(), want.clone())?;
        eq(&format!("f' = {src}: limit"), rep.limit_dims.clone(), want)?;
        ensure(rep.differential_is_multiplication, || format!("f' = {src}: page differential is not f'"))?;
        if main {
            let mut cells = rep.e2_cells.clone();
            cells.sort_unstable();
            eq("E2 cells", cells, vec![(0, 0, 5), (0, 1, 5), (2, 0, 5), (2, 1, 5)])?;
        }
    }
    Ok(())
}

fn momentum_fixtures() -> Vec<(&'static str, MomentumData, Vec<i64>)> {
    vec![
        ("linear dual su2", MomentumData::linear_dual(&LieAlgebra::su2()), (0..=3).collect()),
        ("linear dual heisenberg", MomentumData::linear_dual(&LieAlgebra::heisenberg()), (0..=2).collect()),
        ("circle on plane", MomentumData::circle_on_plane(), (0..=3).collect()),
        ("torus on symplectic 4-space", MomentumData::torus_on_symplectic(2), (0..=2).collect()),
    ]
}

fn c11_low_degree() -> Outcome {
    let g = LieAlgebra::su2();
    let mut complexes: Vec<(String, GDiffComplex)> =
        examples_a().into_iter().filter(|(n, ..)| n.contains("su2")).map(|(n, a, ..)| (n.to_string(), a)).collect();
    complexes.push(("CE(su2; adjoint)".into(), GDiffComplex::from_ce(&CeComplex::new(&g, &Representation::adjoint(&g)).unwrap())));
    let md = MomentumData::linear_dual(&g);
    for w in 0..=3 {
        complexes.push((format!("multivectors on su2*, slice {w}"), poisson_gdiff(&md, w).map_err(|e| e.to_string())?.complex));
    }
    for (name, a) in &complexes {
        let r = low_degree(a, 1).map_err(|e| e.to_string())?;
        ensure(r.automatically_closed(), || format!("{name}: closed invariant 1-cochain not d_G-closed"))?;
        ensure(r.degree_one_iso(), || format!("{name}: H^1_G -> H^1 not an isomorphism: {r:?}"))?;
        ensure(r.degree_two_epi(), || format!("{name}: H^2_G -> H^2 not onto: {r:?}"))?;
        ensure(r.horizontal_description_holds(), || format!("{name}: horizontal H^1 mismatch: {r:?}"))?;
    }
    for (name, md, slices) in momentum_fixtures() {
        for w in slices {
            let t = mu_tangent_complex(&md, w).map_err(|e| e.to_string())?;
            ensure(t.lie_operators_agree, || format!("{name}, slice {w}: Lie operators differ on fibre-tangent fields"))?;
        }
    }
    // The cobracket fixture has an inhomogeneous lift and no weight slices: compare operators
    // on explicit multivectors.
    let md = MomentumData::cobracket_fixture();
    let p = md.structure();
    let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
    let samples = [
        PolyMultivector::term(2, 0, x.mul(&y).add(&Poly::one(2))),
        PolyMultivector::term(2, 0b01, y.pow(2)),
        PolyMultivector::term(2, 0b10, x.pow(3)).add(&PolyMultivector::term(2, 0b01, x.clone())),
        PolyMultivector::term(2, 0b11, x.mul(&y)),
    ];
    let mut tangent = 0;
    for v in &samples {
        for (alpha, a) in md.lift().iter().zip(md.action()) {
            let lhs = p.lie_derivative(alpha, v);
            let rhs = schouten(a, v).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || "cobracket fixture: operators differ".into())?;
            tangent += usize::from(contract(alpha, v).is_zero());
        }
    }
    ensure(tangent > 0, || "cobracket fixture: no fibre-tangent sample".into())
}

fn bundled_complexes() -> Result<Vec<(String, CochainComplex)>, String> {
    let s = |e: &dyn std::fmt::Display| e.to_string();
    let mut out: Vec<(String, CochainComplex)> = Vec::new();
    let su2 = LieAlgebra::su2();
    for (name, g) in [("su2", su2.clone()), ("heisenberg", LieAlgebra::heisenberg()), ("abelian-3", LieAlgebra::abelian(3))] {
        out.push((format!("CE({name})"), CeComplex::trivial(&g).complex().clone()));
    }
    for j in 1..=3 {
        let rep = Representation::coadjoint(&su2).symmetric_power(j);
        out.push((format!("CE(su2; S^{j})"), CeComplex::new(&su2, &rep).map_err(|e| s(&e))?.complex().clone()));
    }
    let k = SubalgebraData::coordinate(&su2, &[2]).map_err(|e| s(&e))?;
    out.push(("CE(su2, circle)".into(), relative_subcomplex(&CeComplex::trivial(&su2), &k).map_err(|e| s(&e))?.complex));
    let (w, _) = weil_algebra(&su2, 2).map_err(|e| s(&e))?;
    out.push(("W<=2(su2)".into(), w.gdiff().complex().clone()));
    for (name, a, ..) in examples_a() {
        out.push((format!("Cartan({name})"), cartan_model(&a, 2).map_err(|e| s(&e))?.complex().clone()));
    }
    let ce = GDiffComplex::from_ce(&CeComplex::trivial(&su2));
    out.push(("CE(su2) x W<=2".into(), tensor_product(&ce, w.gdiff()).map_err(|e| s(&e))?.gdiff.complex().clone()));
    let pc = poisson_complex(&PoissonStructure::linear_dual(&su2), ModelSpec::UpTo(3)).map_err(|e| s(&e))?;
    out.push(("multivectors on su2*, degree <= 3".into(), pc.complex));
    let pc = poisson_complex(&PoissonStructure::symplectic(1), ModelSpec::UpTo(3)).map_err(|e| s(&e))?;
    out.push(("multivectors on the symplectic plane, degree <= 3".into(), pc.complex));
    for (name, md, slices) in momentum_fixtures() {
        for w in slices {
            out.push((format!("{name}, slice {w}"), poisson_gdiff(&md, w).map_err(|e| s(&e))?.complex.complex().clone()));
        }
    }
    for w in 0..=2 {
        out.push((format!("de Rham on the plane, slice {w}"), de_rham_complex(2, w).map_err(|e| s(&e))?.1));
    }
    let roots: Vec<Scalar> = (0..5).map(Scalar::from_int).collect();
    let f = parse_poly("t*(t-1)", &["t"]).map_err(|e| s(&e))?;
    out.push(("product line".into(), build_product_line_model(&roots, &f).map_err(|e| s(&e))?.complex().clone()));
    Ok(out)
}

fn c12_homotopy_witness() -> Outcome {
    for (name, c) in bundled_complexes()? {
        for n in 1..c.len() {
            let d = c.d_into(n);
            let h = homotopy_witness(&c, n);
            let dh = d.mul(&h);
            for v in d.image().basis() {
                ensure(dh.apply(v) == *v, || format!("{name}: dH != id on B^{n}"))?;
            }
        }
    }
    Ok(())
}

struct Criterion {
    id: usize,
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, title: "Lie cohomology table", budget: secs(1), run: c1_lie_table },
        Criterion { id: 2, title: "coefficients factor through invariants", budget: secs(5), run: c2_coefficient_factorization },
        Criterion { id: 3, title: "Weil algebra acyclic, basic part is invariant polynomials", budget: secs(10), run: c3_weil },
        Criterion { id: 4, title: "Weil and Cartan models agree", budget: secs(30), run: c4_weil_equivalence },
        Criterion { id: 5, title: "symmetric-degree spectral sequence", budget: secs(30), run: c5_symdegree_ss },
        Criterion { id: 6, title: "contraction spectral sequence", budget: secs(60), run: c6_contraction_ss },
        Criterion { id: 7, title: "Poisson calculus identities", budget: secs(60), run: c7_identity_suite },
        Criterion { id: 8, title: "Poisson complex of su2* against CE", budget: secs(10), run: c8_poisson_to_lie },
        Criterion { id: 9, title: "equivariant Poisson cohomology of su2*", budget: secs(30), run: c9_equivariant_dual },
        Criterion { id: 10, title: "momentum spectral sequence on the product line", budget: secs(5), run: c10_product_line },
        Criterion { id: 11, title: "low-degree descriptions and fibre-tangent operators", budget: secs(30), run: c11_low_degree },
        Criterion { id: 12, title: "homotopy witness on exact subspaces", budget: secs(10), run: c12_homotopy_witness },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let res = std::panic::catch_unwind(c.run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let res = res.and_then(|()| {
            ensure(took <= c.budget, || format!("took {:.2}s, budget {}s", took.as_secs_f64(), c.budget.as_secs()))
        });
        match res {
            Ok(()) => println!("PASS [{}] {} ({:.2}s)", c.id, c.title, took.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {}: {why}", c.id, c.title);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
