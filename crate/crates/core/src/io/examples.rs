//! Named example runners. Each emits the computed tables next to the predicted ones.

use serde::Serialize;
use serde_json::json;

use super::report::ResultReport;
use super::run::{weil_tables, Options};
use super::schema::{self, At};
use super::TaskError;
use crate::gdiff::{cartan_model, equivariant_cohomology, GDiffComplex};
use crate::lie::{CeComplex, LieAlgebra, Representation};
use crate::linalg::{cohomology_dims, joint_kernel, Matrix};
use crate::poisson::{
    build_product_line_model, de_rham_gdiff, equivariant_poisson_cohomology, lie_poisson_slice,
    momentum_spectral_sequence, parse_poly, poisson_cohomology, poisson_gdiff, sharp_comparison, ModelSpec,
    MomentumData, PoissonError, PoissonStructure,
};
use crate::scalar::Scalar;

pub const EXAMPLES: [&str; 8] = ["poiss1", "poiss2", "poiss3", "poiss4", "torus", "coh-inv", "su2-dual", "weil"];

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ExampleParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<Scalar>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fprime: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slices: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sym_cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pages: Option<usize>,
}

/// `"a..b"` (inclusive), `"a..=b"`, `"a,b,c"` or `"a"`.
pub fn parse_slices(s: &str) -> Result<Vec<i64>, String> {
    let bad = || format!("cannot parse slice range {s:?}");
    if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
}

pub fn parse_roots(s: &str) -> Result<Vec<Scalar>, String> {
    s.split(',').map(|t| t.trim().parse().map_err(|_| format!("invalid root {t:?}"))).collect()
}

impl ExampleParams {
    pub fn from_json(node: &At<'_>) -> Result<ExampleParams, TaskError> {
        schema::known_keys(node, &["algebra", "roots", "fprime", "slices", "rank", "sym_cap", "max_degree", "pages"])?;
        let roots = match node.opt("roots") {
            Some(r) if r.value.is_string() => Some(parse_roots(r.str()?).map_err(|m| r.err(m))?),
            Some(r) => Some(r.array()?.iter().map(|v| v.scalar()).collect::<Result<Vec<_>, _>>()?),
            None => None,
        };
        let slices = match node.opt("slices") {
            Some(s) if s.value.is_string() => Some(parse_slices(s.str()?).map_err(|m| s.err(m))?),
            Some(s) => Some(s.array()?.iter().map(|v| v.i64()).collect::<Result<Vec<_>, _>>()?),
            None => None,
        };
        Ok(ExampleParams {
            algebra: node.opt("algebra").map(|a| a.str().map(str::to_string)).transpose()?,
            roots,
            fprime: node.opt("fprime").map(|f| f.str().map(str::to_string)).transpose()?,
            slices,
            rank: node.opt("rank").map(|v| v.usize()).transpose()?,
            sym_cap: node.opt("sym_cap").map(|v| v.usize()).transpose()?,
            max_degree: node.opt("max_degree").map(|v| v.usize().map(|x| x as u32)).transpose()?,
            pages: node.opt("pages").map(|v| v.usize()).transpose()?,
        })
    }

    /// Run options win over parameters given in a task file.
    pub fn apply_options(&mut self, o: &Options) {
        self.sym_cap = o.sym_cap.or(self.sym_cap);
        self.pages = o.pages.or(self.pages);
        self.max_degree = o.max_degree.or(self.max_degree);
        self.slices = o.slices.clone().or_else(|| self.slices.take());
    }

    fn slice_list(&self, default: std::ops::RangeInclusive<i64>) -> Result<Vec<i64>, TaskError> {
        let s = self.slices.clone().unwrap_or_else(|| default.collect());
        if let Some(w) = s.iter().find(|w| **w < 0) {
            return Err(TaskError::schema("/params/slices", format!("slice {w} is negative")));
        }
        Ok(s)
    }
}

pub fn run_example(name: &str, params: &ExampleParams) -> Result<ResultReport, TaskError> {
    if !EXAMPLES.contains(&name) {
        return Err(TaskError::UnknownExample(name.to_string()));
    }
    let canonical = serde_json::to_vec(&json!({"example": name, "params": params})).expect("params serialize");
    let mut r = ResultReport::new("example", &canonical);
    r.example = Some(name.to_string());
    match name {
        "poiss1" => poiss1(&mut r, params)?,
        "poiss2" => product_line(&mut r, params, "1", 5)?,
        "poiss3" => product_line(&mut r, params, "t*(t-1)", 5)?,
        "poiss4" => product_line(&mut r, params, "t*(t-1)*(t-2)*(t-3)", 8)?,
        "torus" => torus(&mut r, params)?,
        "coh-inv" => coh_inv(&mut r, params)?,
        "su2-dual" => su2_dual(&mut r, params)?,
        "weil" => {
            let g = match &params.algebra {
                Some(a) => schema::named_algebra(&At::new(&serde_json::Value::Null, "/params/algebra"), a)?,
                None => LieAlgebra::su2(),
            };
            let ce = GDiffComplex::from_ce(&CeComplex::trivial(&g));
            weil_tables(&mut r, &g, params.sym_cap.unwrap_or(2), Some(&ce))?;
        }
        _ => unreachable!("checked against the registry"),
    }
    Ok(r)
}

fn invariant_dim(g: &LieAlgebra, w: i64) -> usize {
    Representation::coadjoint(g).symmetric_power(w as usize).invariants().dim()
}

/// Equivariant Poisson cohomology of the dual of su(2), slice by slice, and the collapse of the
/// momentum spectral sequence for `μ = id`.
fn poiss1(r: &mut ResultReport, p: &ExampleParams) -> Result<(), TaskError> {
    let g = LieAlgebra::su2();
    let md = MomentumData::linear_dual(&g);
    let cap = p.sym_cap.unwrap_or(2);
    let (mut h0, mut inv) = (Vec::new(), Vec::new());
    for w in p.slice_list(0..=4)? {
        let e = equivariant_poisson_cohomology(&md, w, cap, None)?;
        let i = invariant_dim(&g, w);
        let band = e.band_dims();
        let mut predicted = vec![0; band.len()];
        predicted[0] = i;
        r.check(format!("slice-{w}: higher degrees vanish in band"), band[1..].iter().all(|&d| d == 0));
        r.table(format!("slice-{w}"), band.clone(), Some(predicted));
        h0.push(band[0]);
        inv.push(i);
        let m = momentum_spectral_sequence(&md, w, p.pages.unwrap_or(3))?;
        r.check_with(
            format!("slice-{w}: momentum spectral sequence collapses at E2"),
            m.ss.collapse <= 2 && m.e2_matches() && m.converges(),
            json!({"collapse": m.ss.collapse}),
        );
    }
    r.dims = Some(h0.clone());
    r.table("h0", h0, Some(inv));
    Ok(())
}

/// Sample points `0..samples` unless roots are given.
fn product_line(r: &mut ResultReport, p: &ExampleParams, default_fprime: &str, samples: i64) -> Result<(), TaskError> {
    let roots = p.roots.clone().unwrap_or_else(|| (0..samples).map(Scalar::from_int).collect());
    let src = p.fprime.as_deref().unwrap_or(default_fprime);
    let f = parse_poly(src, &["t"]).map_err(|e| TaskError::schema("/params/fprime", e.to_string()))?;
    let m = build_product_line_model(&roots, &f).map_err(|e| match e {
        PoissonError::DuplicateRoots => TaskError::schema("/params/roots", e.to_string()),
        other => other.into(),
    })?;
    let pages = p.pages.unwrap_or(3).max(2);
    let rep = m.report(pages);
    let ss = m.spectral_sequence(pages);
    r.dims = Some(rep.limit_dims.clone());
    r.table("total-complex", rep.direct_dims.clone(), Some(rep.predicted_dims.clone()));
    r.table("limit", rep.limit_dims.clone(), Some(rep.direct_dims.clone()));
    r.page("E2", ss.page(2));
    r.page("Einf", ss.infinity());
    let expected: Vec<(usize, i64, usize)> = [(0, 0), (0, 1), (2, 0), (2, 1)].iter().map(|&(a, b)| (a, b, rep.samples)).collect();
    let mut cells = rep.e2_cells.clone();
    cells.sort_unstable();
    r.check("E2 cells at (0,0), (0,1), (2,0), (2,1)", cells == expected);
    r.check_with(
        "page differential is multiplication by f'",
        rep.differential_is_multiplication,
        json!({"page": rep.differential_page, "kernel": rep.kernel, "cokernel": rep.cokernel}),
    );
    r.check("limit equals direct cohomology", rep.limit_dims == rep.direct_dims);
    r.check("direct cohomology equals prediction", rep.direct_dims == rep.predicted_dims);
    Ok(())
}

/// Rotations of the symplectic plane(s): equivariant Poisson cohomology against the equivariant
/// de Rham model transported by π#.
fn torus(r: &mut ResultReport, p: &ExampleParams) -> Result<(), TaskError> {
    let md = MomentumData::torus_on_symplectic(p.rank.unwrap_or(1));
    let cap = p.sym_cap.unwrap_or(2);
    for w in p.slice_list(0..=3)? {
        let e = equivariant_poisson_cohomology(&md, w, cap, None)?;
        let (_, forms) = de_rham_gdiff(&md, w)?;
        let dr = equivariant_cohomology(&cartan_model(&forms, cap)?)?;
        r.table(format!("slice-{w}"), e.band_dims(), Some(dr.band_dims()));
        let sc = sharp_comparison(&md, w)?;
        r.check(
            format!("slice-{w}: pi-sharp is an isomorphism of G-differential complexes"),
            sc.chain_map && sc.intertwines_operators && sc.isomorphism,
        );
        r.check(format!("slice-{w}: dims agree"), e.band_dims() == dr.band_dims());
    }
    Ok(())
}

/// Invariant multivector fields on the dual of su(2): the invariant subcomplex of each slice.
fn coh_inv(r: &mut ResultReport, p: &ExampleParams) -> Result<(), TaskError> {
    let g = LieAlgebra::su2();
    let md = MomentumData::linear_dual(&g);
    let hg = cohomology_dims(CeComplex::trivial(&g).complex());
    let slices = p.slice_list(0..=0)?;
    for &w in &slices {
        let pg = poisson_gdiff(&md, w)?.complex;
        let subs: Vec<_> = (0..pg.len())
            .map(|n| {
                let ops: Vec<Matrix> = (0..g.dim()).map(|j| pg.l(j, n)).collect();
                let refs: Vec<&Matrix> = ops.iter().collect();
                joint_kernel(pg.dim(n), &refs)
            })
            .collect();
        let inv = pg.complex().restrict(&subs)?;
        let dims = cohomology_dims(&inv);
        let i = invariant_dim(&g, w);
        let predicted: Vec<usize> = hg.iter().map(|h| h * i).collect();
        r.check(format!("slice-{w}: invariant cohomology = H(g) x invariants"), dims == predicted);
        r.table(format!("slice-{w}"), dims.clone(), Some(predicted));
        if slices.len() == 1 {
            r.dims = Some(dims);
        }
    }
    Ok(())
}

/// Multivector fields on the dual of su(2) against Chevalley–Eilenberg cochains with values in S^k.
fn su2_dual(r: &mut ResultReport, p: &ExampleParams) -> Result<(), TaskError> {
    let g = LieAlgebra::su2();
    for k in p.slice_list(0..=4)? {
        let s = lie_poisson_slice(&g, k as u32)?;
        r.check(format!("slice-{k}: d_pi = -d_CE under the basis identification"), s.isomorphic);
        r.check(format!("slice-{k}: dims agree with CE"), s.poisson_dims == s.ce_dims);
        r.table(format!("slice-{k}"), s.poisson_dims, Some(s.predicted));
    }
    let n = p.max_degree.unwrap_or(4);
    let h = poisson_cohomology(&PoissonStructure::linear_dual(&g), ModelSpec::UpTo(n))?;
    let hg = cohomology_dims(CeComplex::trivial(&g).complex());
    let inv: usize = (0..=n as i64).map(|w| invariant_dim(&g, w)).sum();
    let predicted: Vec<usize> = hg.iter().map(|d| d * inv).collect();
    r.dims = Some(h.dims.clone());
    r.table(format!("degree-at-most-{n}"), h.dims, Some(predicted));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slice_syntax() {
        assert_eq!(parse_slices("0..4").unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(parse_slices("1..=2").unwrap(), vec![1, 2]);
        assert_eq!(parse_slices("3,1").unwrap(), vec![3, 1]);
        assert!(parse_slices("4..1").is_err());
    }

    #[test]
    fn unknown_example() {
        assert_eq!(run_example("poiss9", &ExampleParams::default()).unwrap_err(), TaskError::UnknownExample("poiss9".into()));
    }

    #[test]
    fn poiss3_defaults() {
        let r = run_example("poiss3", &ExampleParams::default()).unwrap();
        assert_eq!(r.dims, Some(vec![5, 2, 2, 5]));
        assert!(r.passed(), "{:?}", r.checks);
    }

    #[test]
    fn coh_inv_is_lie_cohomology() {
        let r = run_example("coh-inv", &ExampleParams::default()).unwrap();
        assert_eq!(r.dims, Some(vec![1, 0, 0, 1]));
    }
}
