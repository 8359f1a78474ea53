//! Task files and the `compute` / `validate` dispatch.

use serde_json::json;

use super::examples::{run_example, ExampleParams};
use super::report::{Format, ResultReport};
use super::schema::{self, At, Doc};
use super::TaskError;
use crate::gdiff::{
    basic_subcomplex, cartan_model, equivariant_cohomology, locally_free_connection, weil_algebra,
    weil_cartan_comparison, GDiffComplex,
};
use crate::lie::{lie_cohomology, LieAlgebra, Representation, SubalgebraData};
use crate::linalg::cohomology_dims;
use crate::poisson::{
    equivariant_poisson_cohomology, momentum_spectral_sequence, poisson_cohomology, ModelSpec, MomentumData,
    PoissonStructure,
};

pub const KINDS: [&str; 8] = [
    "lie-cohomology",
    "gdiff-check",
    "equivariant",
    "weil-check",
    "poisson-cohomology",
    "equivariant-poisson",
    "momentum-ss",
    "example",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    LieCohomology,
    GDiffCheck,
    Equivariant,
    WeilCheck,
    PoissonCohomology,
    EquivariantPoisson,
    MomentumSs,
    Example,
}

impl Kind {
    pub fn name(self) -> &'static str {
        KINDS[self as usize]
    }

    pub fn from_name(s: &str) -> Option<Kind> {
        use Kind::*;
        let all = [LieCohomology, GDiffCheck, Equivariant, WeilCheck, PoissonCohomology, EquivariantPoisson, MomentumSs, Example];
        all.into_iter().find(|k| k.name() == s)
    }
}

/// Run options; command-line flags take precedence over the task file's `options`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Options {
    pub format: Option<Format>,
    pub pages: Option<usize>,
    pub sym_cap: Option<usize>,
    pub max_degree: Option<u32>,
    pub slices: Option<Vec<i64>>,
}

impl Options {
    fn parse(node: &At<'_>) -> Result<Options, TaskError> {
        schema::known_keys(node, &["format", "pages", "sym_cap", "max_degree", "slice", "slices"])?;
        let format = match node.opt("format") {
            Some(f) => Some(match f.str()? {
                "json" => Format::Json,
                "csv" => Format::Csv,
                other => return Err(f.err(format!("unknown format {other:?}"))),
            }),
            None => None,
        };
        let slices = match (node.opt("slice"), node.opt("slices")) {
            (Some(_), Some(s)) => return Err(s.err("give either slice or slices")),
            (Some(s), None) => Some(vec![s.i64()?]),
            (None, Some(s)) => Some(s.array()?.iter().map(|v| v.i64()).collect::<Result<Vec<_>, _>>()?),
            (None, None) => None,
        };
        Ok(Options {
            format,
            pages: node.opt("pages").map(|v| v.usize()).transpose()?,
            sym_cap: node.opt("sym_cap").map(|v| v.usize()).transpose()?,
            max_degree: node.opt("max_degree").map(|v| v.usize().map(|x| x as u32)).transpose()?,
            slices,
        })
    }

    /// `self` overridden field by field by `top`.
    pub fn overridden_by(&self, top: &Options) -> Options {
        Options {
            format: top.format.or(self.format),
            pages: top.pages.or(self.pages),
            sym_cap: top.sym_cap.or(self.sym_cap),
            max_degree: top.max_degree.or(self.max_degree),
            slices: top.slices.clone().or_else(|| self.slices.clone()),
        }
    }

    fn cap(&self) -> usize {
        self.sym_cap.unwrap_or(2)
    }
}

/// `{"kind": ..., "payload": {...}, "options": {...}}`.
pub struct TaskFile {
    pub kind: Kind,
    pub options: Options,
    doc: Doc,
    bytes: Vec<u8>,
    bare: bool,
}

impl TaskFile {
    pub fn parse(text: &str) -> Result<TaskFile, TaskError> {
        let doc = Doc::parse(text)?;
        let root = doc.root();
        schema::known_keys(&root, &["kind", "payload", "options"])?;
        let k = root.get("kind")?;
        let kind = Kind::from_name(k.str()?).ok_or_else(|| k.err(format!("unknown kind; expected one of {KINDS:?}")))?;
        root.get("payload")?.object()?;
        let options = match root.opt("options") {
            Some(o) => Options::parse(&o)?,
            None => Options::default(),
        };
        Ok(TaskFile { kind, options, bytes: text.as_bytes().to_vec(), doc, bare: false })
    }

    /// A task file of the given kind, or a bare payload for it.
    pub fn parse_as(text: &str, kind: Kind) -> Result<TaskFile, TaskError> {
        let doc = Doc::parse(text)?;
        if doc.value().get("kind").is_some() {
            let t = TaskFile::parse(text)?;
            if t.kind != kind {
                return Err(TaskError::schema("/kind", format!("expected kind {:?}, found {:?}", kind.name(), t.kind.name())));
            }
            return Ok(t);
        }
        doc.root().object()?;
        Ok(TaskFile { kind, options: Options::default(), bytes: text.as_bytes().to_vec(), doc, bare: true })
    }

    pub fn payload(&self) -> At<'_> {
        if self.bare {
            self.doc.root()
        } else {
            self.doc.root().get("payload").expect("checked in parse")
        }
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }
}

enum Prepared {
    Lie { g: LieAlgebra, rep: Representation, k: Option<SubalgebraData>, compact: bool },
    GDiffCheck { c: GDiffComplex },
    Equivariant { c: GDiffComplex, cap: usize },
    Weil { g: LieAlgebra, cap: usize, complex: Option<GDiffComplex> },
    Poisson { p: PoissonStructure, spec: ModelSpec },
    EqPoisson { md: MomentumData, slices: Vec<i64>, cap: usize, k: Option<SubalgebraData> },
    MomentumSs { md: MomentumData, slices: Vec<i64>, pages: usize },
    Example { name: String, params: ExampleParams },
}

fn momentum_payload(node: &At<'_>) -> Result<MomentumData, TaskError> {
    schema::known_keys(node, &["ambient", "maxdeg", "pi", "regime", "variables", "action", "mu", "subalgebra"])?;
    let (p, vars) = schema::poisson(node)?;
    schema::momentum(node, &p, &vars)
}

fn prepare(kind: Kind, node: &At<'_>, opts: &Options) -> Result<Prepared, TaskError> {
    Ok(match kind {
        Kind::LieCohomology => {
            schema::known_keys(node, &["algebra", "module", "subalgebra", "compact"])?;
            let g = schema::algebra(&node.get("algebra")?)?;
            let rep = match node.opt("module") {
                Some(m) => schema::representation(&m, &g)?,
                None => Representation::trivial(&g, 1),
            };
            let k = node.opt("subalgebra").map(|s| schema::subalgebra(&s, &g)).transpose()?;
            let compact = node.opt("compact").map(|c| c.bool()).transpose()?.unwrap_or(false);
            Prepared::Lie { g, rep, k, compact }
        }
        Kind::GDiffCheck => {
            schema::known_keys(node, &["algebra", "complex"])?;
            let g = schema::algebra(&node.get("algebra")?)?;
            Prepared::GDiffCheck { c: schema::gdiff_unchecked(&node.get("complex")?, &g)? }
        }
        Kind::Equivariant => {
            schema::known_keys(node, &["algebra", "complex", "restrict", "sym_cap"])?;
            let g = schema::algebra(&node.get("algebra")?)?;
            let mut c = schema::gdiff(&node.get("complex")?, &g)?;
            if let Some(k) = node.opt("restrict") {
                c = c.restrict_to(&schema::subalgebra(&k, &g)?);
            }
            let cap = opts.sym_cap.or(node.opt("sym_cap").map(|v| v.usize()).transpose()?).unwrap_or(2);
            Prepared::Equivariant { c, cap }
        }
        Kind::WeilCheck => {
            schema::known_keys(node, &["algebra", "complex", "sym_cap"])?;
            let g = schema::algebra(&node.get("algebra")?)?;
            let complex = node.opt("complex").map(|c| schema::gdiff(&c, &g)).transpose()?;
            let cap = opts.sym_cap.or(node.opt("sym_cap").map(|v| v.usize()).transpose()?).unwrap_or(2);
            Prepared::Weil { g, cap, complex }
        }
        Kind::PoissonCohomology => {
            schema::known_keys(node, &["ambient", "maxdeg", "pi", "regime", "variables"])?;
            let (p, _) = schema::poisson(node)?;
            let spec = match &opts.slices {
                Some(s) if s.len() == 1 => ModelSpec::Slice(s[0]),
                Some(_) => return Err(TaskError::schema("/options/slices", "poisson-cohomology takes a single slice")),
                None => {
                    let n = opts.max_degree.or(node.opt("maxdeg").map(|v| v.usize().map(|x| x as u32)).transpose()?);
                    ModelSpec::UpTo(n.unwrap_or(2))
                }
            };
            Prepared::Poisson { p, spec }
        }
        Kind::EquivariantPoisson => {
            let md = momentum_payload(node)?;
            let k = node.opt("subalgebra").map(|s| schema::subalgebra(&s, md.algebra())).transpose()?;
            Prepared::EqPoisson { md, slices: opts.slices.clone().unwrap_or_else(|| vec![0]), cap: opts.cap(), k }
        }
        Kind::MomentumSs => {
            let md = momentum_payload(node)?;
            if node.opt("subalgebra").is_some() {
                return Err(node.get("subalgebra")?.err("momentum-ss does not take a subalgebra"));
            }
            Prepared::MomentumSs { md, slices: opts.slices.clone().unwrap_or_else(|| vec![0]), pages: opts.pages.unwrap_or(3) }
        }
        Kind::Example => {
            schema::known_keys(node, &["name", "params"])?;
            let name = node.get("name")?.str()?.to_string();
            let mut params = match node.opt("params") {
                Some(p) => ExampleParams::from_json(&p)?,
                None => ExampleParams::default(),
            };
            params.apply_options(opts);
            Prepared::Example { name, params }
        }
    })
}

fn execute(kind: Kind, prep: Prepared, input: &[u8]) -> Result<ResultReport, TaskError> {
    let mut r = ResultReport::new(kind.name(), input);
    match prep {
        Prepared::Lie { g, rep, k, compact } => {
            let h = lie_cohomology(&g, k.as_ref(), &rep, compact)?;
            r.dims = Some(h.dims.clone());
            if let Some(pred) = h.predicted {
                r.table("factorized", h.dims, Some(pred));
                r.check("factorization", true);
            }
        }
        Prepared::GDiffCheck { c } => {
            let axioms = c.check_axioms();
            for a in &axioms.checks {
                let detail = a.witness.as_ref().map(|w| json!({"generators": w.labels(), "degree": w.degree, "basis": w.basis}));
                r.checks.push(super::report::Check { name: a.identity.clone(), passed: a.passed, detail });
            }
            axioms.into_result()?;
            r.table("complex", c.complex().dims().to_vec(), None);
            r.dims = Some(cohomology_dims(c.complex()));
        }
        Prepared::Equivariant { c, cap } => {
            let model = cartan_model(&c, cap)?;
            let eq = equivariant_cohomology(&model)?;
            r.dims = Some(eq.band_dims());
            r.table("cartan-all-degrees", eq.dims.clone(), None);
            r.band_warning("cartan-all-degrees", eq.dims.len().saturating_sub(1), eq.band);
            let basic = cohomology_dims(&basic_subcomplex(&c)?.complex);
            r.table("basic", basic.clone(), None);
            let free = c.unit().is_some() && locally_free_connection(&c)?.is_some();
            r.property("locally-free", free);
            if free {
                let agree = (0..=eq.band).all(|n| eq.dims.get(n).copied().unwrap_or(0) == basic.get(n).copied().unwrap_or(0));
                r.check("basic-equals-equivariant-in-band", agree);
            }
        }
        Prepared::Weil { g, cap, complex } => weil_tables(&mut r, &g, cap, complex.as_ref())?,
        Prepared::Poisson { p, spec } => {
            let h = poisson_cohomology(&p, spec)?;
            r.dims = Some(h.dims.clone());
            if let (Some(b), ModelSpec::UpTo(n)) = (h.band, spec) {
                if b < n {
                    r.warn(format!("quotient truncation: coefficient degrees {}..={n} are influenced by discarded terms; validity band is coefficient degree <= {b}", b + 1));
                }
            }
            r.check("exact-model", h.exact);
        }
        Prepared::EqPoisson { md, slices, cap, k } => {
            for &w in &slices {
                let e = equivariant_poisson_cohomology(&md, w, cap, k.as_ref())?;
                let name = format!("slice-{w}");
                r.table(&name, e.band_dims(), e.basic_dims.as_ref().map(|b| b.iter().take(e.band + 1).copied().collect()));
                if e.dims.len() > e.band + 1 {
                    r.table(format!("{name}-all-degrees"), e.dims.clone(), None);
                    r.band_warning(&format!("{name}-all-degrees"), e.dims.len() - 1, e.band);
                }
                if let Some(a) = e.agrees_with_basic() {
                    r.check(format!("{name}: basic-equals-equivariant-in-band"), a);
                }
                if slices.len() == 1 {
                    r.dims = Some(e.band_dims());
                }
            }
            r.property("locally-free", equivariant_poisson_cohomology(&md, 0, 0, k.as_ref())?.locally_free);
        }
        Prepared::MomentumSs { md, slices, pages } => {
            for &w in &slices {
                let m = momentum_spectral_sequence(&md, w, pages)?;
                let name = format!("slice-{w}");
                for (i, page) in m.ss.pages.iter().enumerate().skip(1).take(pages) {
                    r.page(format!("{name}: E{i}"), page);
                }
                r.page(format!("{name}: Einf"), m.ss.infinity());
                r.table(format!("{name}: lie"), m.lie_dims.clone(), None);
                r.table(format!("{name}: mu-tangent"), m.mu_dims.clone(), None);
                r.table(format!("{name}: mu-tangent-cohomology"), m.mu_cohomology.clone(), None);
                r.table(format!("{name}: limit"), m.ss.limit_dims(), Some(m.poisson_dims.clone()));
                r.check(format!("{name}: E1 = H(g) x X(mu)"), m.e1_matches());
                r.check(format!("{name}: E2 = H(g) x H(X(mu))"), m.e2_matches());
                r.check(format!("{name}: converges"), m.converges());
                r.check_with(format!("{name}: collapse"), true, json!({"page": m.ss.collapse}));
                if slices.len() == 1 {
                    r.dims = Some(m.poisson_dims);
                }
            }
        }
        Prepared::Example { name, params } => return run_example(&name, &params),
    }
    Ok(r)
}

/// Weil algebra acyclicity and basic part, and the comparison with the Cartan model of `a` when given.
pub(super) fn weil_tables(r: &mut ResultReport, g: &LieAlgebra, cap: usize, a: Option<&GDiffComplex>) -> Result<(), TaskError> {
    let (_, rep) = weil_algebra(g, cap)?;
    r.dims = Some(rep.cohomology_dims.clone());
    let mut predicted = vec![0; rep.basic_dims.len()];
    for (m, d) in rep.invariant_polynomial_dims.iter().enumerate() {
        if let Some(slot) = predicted.get_mut(2 * m) {
            *slot = *d;
        }
    }
    r.table("basic", rep.basic_dims.clone(), Some(predicted.clone()));
    r.check("acyclic-in-band", rep.acyclic_in_band);
    r.check("basic-differential-zero", rep.basic_differential_zero);
    r.check("basic-equals-invariant-polynomials", rep.basic_dims == predicted);
    r.band_warning("dims", rep.cohomology_dims.len().saturating_sub(1), cap);
    if let Some(a) = a {
        let cmp = weil_cartan_comparison(a, cap)?;
        let band = |v: &[usize]| v.iter().take(cmp.band + 1).copied().collect::<Vec<_>>();
        r.table("basic-of-tensor", band(&cmp.basic_dims), Some(band(&cmp.equivariant_dims)));
        r.check("inclusion-is-chain-map", cmp.chain_map);
        r.check("inclusion-iso-in-band", cmp.iso_in_band);
        r.check("dims-agree-in-band", cmp.dims_agree_in_band());
    }
    Ok(())
}

/// Dispatches a parsed task; `cli` options override the file's.
pub fn run_compute(task: &TaskFile, cli: &Options) -> Result<ResultReport, TaskError> {
    let opts = task.options.overridden_by(cli);
    let prep = prepare(task.kind, &task.payload(), &opts)?;
    execute(task.kind, prep, task.bytes())
}

/// Reads and runs a file, optionally forcing its kind.
pub fn run_file(text: &str, kind: Option<Kind>, cli: &Options) -> Result<ResultReport, TaskError> {
    let task = match kind {
        Some(k) => TaskFile::parse_as(text, k)?,
        None => TaskFile::parse(text)?,
    };
    run_compute(&task, cli)
}

/// Folds a math failure into a failed gate; schema errors still abort.
fn gate<T>(r: &mut ResultReport, name: &str, res: Result<T, TaskError>) -> Result<Option<T>, TaskError> {
    match res {
        Ok(v) => {
            r.check(name, true);
            Ok(Some(v))
        }
        Err(TaskError::Math { message, witness }) => {
            let mut detail = json!({ "message": message });
            if let Some(w) = witness {
                detail["witness"] = w;
            }
            r.check_with(name, false, detail);
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Schema validation plus the cheap gates (antisymmetry, Jacobi, `[π, π] = 0`); no cohomology is computed.
pub fn validate_input(text: &str) -> Result<ResultReport, TaskError> {
    let task = TaskFile::parse(text)?;
    let mut r = ResultReport::new("validate", task.bytes());
    let node = task.payload();
    let algebra_node = node.opt("algebra").or_else(|| node.opt("action").and_then(|a| a.opt("algebra")));
    let mut ok = true;
    if let Some(a) = algebra_node {
        let (dim, entries) = schema::algebra_entries(&a)?;
        match gate(&mut r, "antisymmetry", LieAlgebra::unchecked(dim, &entries).map_err(TaskError::from))? {
            Some(g) => ok &= gate(&mut r, "jacobi", g.check_jacobi().map_err(TaskError::from))?.is_some(),
            None => ok = false,
        }
    }
    if node.opt("ambient").is_some() {
        let (pi, _) = schema::bivector(&node)?;
        match gate(&mut r, "poisson", PoissonStructure::new(pi).map_err(TaskError::from))? {
            Some(p) => schema::check_regime(&node, &p)?,
            None => ok = false,
        }
    }
    if task.kind == Kind::Example {
        let name = node.get("name")?;
        if !super::EXAMPLES.contains(&name.str()?) {
            return Err(name.err(format!("unknown example; expected one of {:?}", super::EXAMPLES)));
        }
    }
    if ok {
        gate(&mut r, "inputs", prepare(task.kind, &node, &task.options).map(|_| ()))?;
    }
    r.checks.insert(0, super::report::Check { name: "schema".into(), passed: true, detail: None });
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SU2: &str = r#"{"kind": "lie-cohomology", "payload": {"algebra": {"dim": 3, "brackets": [[0, 1, [[2, 1]]], [1, 2, [[0, 1]]], [2, 0, [[1, 1]]]]}}}"#;

    #[test]
    fn su2_dims() {
        let r = run_file(SU2, None, &Options::default()).unwrap();
        assert_eq!(r.dims, Some(vec![1, 0, 0, 1]));
    }

    #[test]
    fn malformed_and_empty() {
        assert_eq!(run_file("{", None, &Options::default()).unwrap_err().exit_code(), 2);
        assert_eq!(run_file("  ", None, &Options::default()).unwrap_err().exit_code(), 2);
        let e = run_file(r#"{"kind": "nope", "payload": {}}"#, None, &Options::default()).unwrap_err();
        assert_eq!(e, TaskError::schema("/kind", format!("unknown kind; expected one of {KINDS:?}")));
    }

    #[test]
    fn validate_reports_jacobi() {
        let bad = r#"{"kind": "lie-cohomology", "payload": {"algebra": {"dim": 3, "brackets": [[0, 1, [[2, 1]]], [1, 2, [[0, 1]]], [2, 0, [[2, 1]]]]}}}"#;
        let r = validate_input(bad).unwrap();
        assert!(!r.passed());
        let j = r.checks.iter().find(|c| c.name == "jacobi").unwrap();
        assert!(!j.passed);
        assert!(validate_input(SU2).unwrap().passed());
    }

    #[test]
    fn options_override() {
        let file = Options { sym_cap: Some(1), pages: Some(2), ..Options::default() };
        let cli = Options { sym_cap: Some(3), ..Options::default() };
        let m = file.overridden_by(&cli);
        assert_eq!((m.sym_cap, m.pages), (Some(3), Some(2)));
    }
}
