//! JSON input formats. Every parser reports failures as a JSON pointer into the document.
//!
//! Indices into bases (Lie algebra generators, coordinates) are 0-based. Scalars are
//! integers or `"num/den"` strings. Matrices are dense row lists; `[]` stands for the
//! zero matrix of the implied shape.

use serde_json::{json, Value};

use super::TaskError;
use crate::gdiff::GDiffComplex;
use crate::lie::{BialgebraData, BracketEntry, CeComplex, LieAlgebra, Representation, SubalgebraData};
use crate::linalg::{CochainComplex, GradedSpace, Matrix, SparseVec};
use crate::poisson::{parse_poly, MomentumData, PoissonStructure, Poly, PolyForm, PolyMultivector};
use crate::scalar::Scalar;

/// A parsed input document.
pub struct Doc {
    value: Value,
}

impl Doc {
    pub fn parse(text: &str) -> Result<Doc, TaskError> {
        if text.trim().is_empty() {
            return Err(TaskError::schema("/", "empty document"));
        }
        let value = serde_json::from_str(text)
            .map_err(|e| TaskError::schema("/", format!("malformed JSON at line {}, column {}: {e}", e.line(), e.column())))?;
        Ok(Doc { value })
    }

    pub fn from_value(value: Value) -> Doc {
        Doc { value }
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn root(&self) -> At<'_> {
        At { value: &self.value, ptr: String::new() }
    }
}

fn escape(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

/// A value inside a [`Doc`] together with its JSON pointer.
#[derive(Clone, Debug)]
pub struct At<'a> {
    pub value: &'a Value,
    pub ptr: String,
}

impl<'a> At<'a> {
    pub fn new(value: &'a Value, ptr: impl Into<String>) -> Self {
        At { value, ptr: ptr.into() }
    }

    pub fn pointer(&self) -> &str {
        if self.ptr.is_empty() {
            "/"
        } else {
            &self.ptr
        }
    }

    pub fn err(&self, message: impl Into<String>) -> TaskError {
        TaskError::schema(self.ptr.clone(), message)
    }

    pub fn object(&self) -> Result<&'a serde_json::Map<String, Value>, TaskError> {
        self.value.as_object().ok_or_else(|| self.err("expected an object"))
    }

    pub fn opt(&self, key: &str) -> Option<At<'a>> {
        self.value
            .as_object()
            .and_then(|m| m.get(key))
            .filter(|v| !v.is_null())
            .map(|v| At { value: v, ptr: format!("{}/{}", self.ptr, escape(key)) })
    }

    pub fn get(&self, key: &str) -> Result<At<'a>, TaskError> {
        self.object()?;
        self.opt(key).ok_or_else(|| TaskError::schema(format!("{}/{}", self.ptr, escape(key)), "missing required field"))
    }

    pub fn array(&self) -> Result<Vec<At<'a>>, TaskError> {
        let a = self.value.as_array().ok_or_else(|| self.err("expected an array"))?;
        Ok(a.iter().enumerate().map(|(i, v)| At { value: v, ptr: format!("{}/{i}", self.ptr) }).collect())
    }

    pub fn array_len(&self, n: usize) -> Result<Vec<At<'a>>, TaskError> {
        let a = self.array()?;
        if a.len() != n {
            return Err(self.err(format!("expected {n} entries, found {}", a.len())));
        }
        Ok(a)
    }

    pub fn usize(&self) -> Result<usize, TaskError> {
        self.value.as_u64().map(|v| v as usize).ok_or_else(|| self.err("expected a nonnegative integer"))
    }

    pub fn index(&self, bound: usize) -> Result<usize, TaskError> {
        let i = self.usize()?;
        if i >= bound {
            return Err(self.err(format!("index {i} out of range 0..{bound}")));
        }
        Ok(i)
    }

    pub fn i64(&self) -> Result<i64, TaskError> {
        self.value.as_i64().ok_or_else(|| self.err("expected an integer"))
    }

    pub fn bool(&self) -> Result<bool, TaskError> {
        self.value.as_bool().ok_or_else(|| self.err("expected a boolean"))
    }

    pub fn str(&self) -> Result<&'a str, TaskError> {
        self.value.as_str().ok_or_else(|| self.err("expected a string"))
    }

    pub fn scalar(&self) -> Result<Scalar, TaskError> {
        match self.value {
            Value::Number(n) => match n.as_i64() {
                Some(v) => Ok(Scalar::from_int(v)),
                None => Err(self.err("expected an exact rational (integer or \"num/den\" string)")),
            },
            Value::String(s) => s.parse().map_err(|_| self.err(format!("invalid rational literal {s:?}"))),
            _ => Err(self.err("expected an exact rational (integer or \"num/den\" string)")),
        }
    }
}

/// Keys outside `allowed` are rejected so that typos do not pass silently.
pub fn known_keys(node: &At<'_>, allowed: &[&str]) -> Result<(), TaskError> {
    for k in node.object()?.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(TaskError::schema(format!("{}/{}", node.ptr, escape(k)), format!("unknown field; expected one of {allowed:?}")));
        }
    }
    Ok(())
}

pub fn vector(node: &At<'_>, dim: usize) -> Result<SparseVec, TaskError> {
    let vals = node.array_len(dim)?.iter().map(|v| v.scalar()).collect::<Result<Vec<_>, _>>()?;
    Ok(SparseVec::from_dense(&vals))
}

pub fn matrix(node: &At<'_>, rows: usize, cols: usize) -> Result<Matrix, TaskError> {
    let list = node.array()?;
    if list.is_empty() {
        return Ok(Matrix::zeros(rows, cols));
    }
    if list.len() != rows {
        return Err(node.err(format!("expected a {rows}x{cols} matrix, found {} rows", list.len())));
    }
    let rows = list
        .iter()
        .map(|r| r.array_len(cols)?.iter().map(|v| v.scalar()).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(&rows))
}

pub fn csv_list<T: std::str::FromStr>(node: &At<'_>) -> Result<Vec<T>, TaskError> {
    node.array()?
        .iter()
        .map(|v| match v.value {
            Value::String(s) => s.parse().map_err(|_| v.err(format!("cannot parse {s:?}"))),
            other => other.to_string().parse().map_err(|_| v.err("cannot parse entry")),
        })
        .collect()
}

/// Structure constants without the Jacobi check: `(dim, entries)`.
pub fn algebra_entries(node: &At<'_>) -> Result<(usize, Vec<BracketEntry>), TaskError> {
    if let Value::String(name) = node.value {
        let g = named_algebra(node, name)?;
        return Ok((g.dim(), g.entries()));
    }
    known_keys(node, &["dim", "brackets", "name"])?;
    let dim = node.get("dim")?.usize()?;
    let mut entries = Vec::new();
    if let Some(b) = node.opt("brackets") {
        for e in b.array()? {
            let parts = e.array_len(3)?;
            let i = parts[0].index(dim)?;
            let j = parts[1].index(dim)?;
            let mut coeffs = Vec::new();
            for t in parts[2].array()? {
                let kc = t.array_len(2)?;
                coeffs.push((kc[0].index(dim)?, kc[1].scalar()?));
            }
            entries.push((i, j, coeffs));
        }
    }
    Ok((dim, entries))
}

pub fn named_algebra(node: &At<'_>, name: &str) -> Result<LieAlgebra, TaskError> {
    match name {
        "su2" => Ok(LieAlgebra::su2()),
        "heisenberg" => Ok(LieAlgebra::heisenberg()),
        _ => match name.strip_prefix("abelian-").and_then(|n| n.parse::<usize>().ok()) {
            Some(n) => Ok(LieAlgebra::abelian(n)),
            None => Err(node.err(format!("unknown algebra {name:?}; expected su2, heisenberg, abelian-N or an object"))),
        },
    }
}

/// A Lie algebra, validated (antisymmetry and Jacobi).
pub fn algebra(node: &At<'_>) -> Result<LieAlgebra, TaskError> {
    let (dim, entries) = algebra_entries(node)?;
    let mut g = LieAlgebra::new(dim, &entries)?;
    if let Some(n) = node.opt("name") {
        g = g.with_name(n.str()?);
    }
    Ok(g)
}

/// `"trivial"`, `"adjoint"`, `"coadjoint"`, `{"symmetric-power": k}` of the coadjoint module,
/// `{"trivial": d}`, or `{"dim": d, "operators": [matrix per generator]}`.
pub fn representation(node: &At<'_>, g: &LieAlgebra) -> Result<Representation, TaskError> {
    match node.value {
        Value::String(s) => match s.as_str() {
            "trivial" => Ok(Representation::trivial(g, 1)),
            "adjoint" => Ok(Representation::adjoint(g)),
            "coadjoint" => Ok(Representation::coadjoint(g)),
            _ => Err(node.err(format!("unknown module {s:?}"))),
        },
        Value::Object(_) => {
            if let Some(k) = node.opt("symmetric-power") {
                known_keys(node, &["symmetric-power"])?;
                return Ok(Representation::coadjoint(g).symmetric_power(k.usize()?));
            }
            if let Some(d) = node.opt("trivial") {
                known_keys(node, &["trivial"])?;
                return Ok(Representation::trivial(g, d.usize()?));
            }
            known_keys(node, &["dim", "operators"])?;
            let dim = node.get("dim")?.usize()?;
            let ops = node
                .get("operators")?
                .array_len(g.dim())?
                .iter()
                .map(|m| matrix(m, dim, dim))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Representation::new(g, dim, ops)?)
        }
        _ => Err(node.err("expected a module name or object")),
    }
}

/// `{"coordinates": [i, ...]}` or `{"span": [vector, ...], "complement": [vector, ...]}`.
pub fn subalgebra(node: &At<'_>, g: &LieAlgebra) -> Result<SubalgebraData, TaskError> {
    known_keys(node, &["coordinates", "span", "complement"])?;
    if let Some(c) = node.opt("coordinates") {
        let idx = c.array()?.iter().map(|v| v.index(g.dim())).collect::<Result<Vec<_>, _>>()?;
        return Ok(SubalgebraData::coordinate(g, &idx)?);
    }
    let span = node.get("span")?.array()?.iter().map(|v| vector(v, g.dim())).collect::<Result<Vec<_>, _>>()?;
    let complement = match node.opt("complement") {
        Some(c) => Some(c.array()?.iter().map(|v| vector(v, g.dim())).collect::<Result<Vec<_>, _>>()?),
        None => None,
    };
    Ok(SubalgebraData::new(g, span, complement)?)
}

/// A G-differential complex, without running the axiom checks.
///
/// Either `{"ce": module, "restrict": subalgebra?}` for a Chevalley–Eilenberg complex with its
/// natural operators, or explicit data
/// `{"dims": [...], "d": [d_0, ...], "contractions": [[i_j in degree n, ...], ...], "lie": [[...], ...], "unit": vector?}`
/// where `d_n` maps degree `n` to `n + 1` and the contraction block in degree `n` maps `n` to `n - 1`.
pub fn gdiff_unchecked(node: &At<'_>, g: &LieAlgebra) -> Result<GDiffComplex, TaskError> {
    if let Some(m) = node.opt("ce") {
        known_keys(node, &["ce", "restrict"])?;
        let rep = representation(&m, g)?;
        let ce = CeComplex::new(g, &rep)?;
        let c = GDiffComplex::from_ce(&ce);
        return Ok(match node.opt("restrict") {
            Some(k) => c.restrict_to(&subalgebra(&k, g)?),
            None => c,
        });
    }
    known_keys(node, &["dims", "d", "contractions", "lie", "unit"])?;
    let dims = node.get("dims")?.array()?.iter().map(|v| v.usize()).collect::<Result<Vec<_>, _>>()?;
    let len = dims.len();
    if len == 0 {
        return Err(node.get("dims")?.err("at least one degree is required"));
    }
    let dim_at = |n: i64| if n < 0 || n as usize >= len { 0 } else { dims[n as usize] };
    let dnode = node.get("d")?;
    let dlist = dnode.array()?;
    if dlist.len() != len && dlist.len() + 1 != len {
        return Err(dnode.err(format!("expected {} or {len} differential blocks, found {}", len - 1, dlist.len())));
    }
    let d = dlist
        .iter()
        .enumerate()
        .map(|(n, m)| matrix(m, dim_at(n as i64 + 1), dims[n]))
        .collect::<Result<Vec<_>, _>>()?;
    let space = GradedSpace::new(dims.clone());
    let complex = CochainComplex::new(space, d)?;
    let ops = |key: &str, shift: i64| -> Result<Vec<Vec<Matrix>>, TaskError> {
        node.get(key)?
            .array_len(g.dim())?
            .iter()
            .map(|per| {
                let blocks = per.array()?;
                if blocks.len() > len {
                    return Err(per.err(format!("at most {len} blocks expected")));
                }
                blocks.iter().enumerate().map(|(n, m)| matrix(m, dim_at(n as i64 + shift), dims[n])).collect()
            })
            .collect()
    };
    let i = ops("contractions", -1)?;
    let l = ops("lie", 0)?;
    let mut c = GDiffComplex::unchecked(g, complex, i, l)?;
    if let Some(u) = node.opt("unit") {
        c = c.with_unit(vector(&u, dims[0])?);
    }
    Ok(c)
}

pub fn gdiff(node: &At<'_>, g: &LieAlgebra) -> Result<GDiffComplex, TaskError> {
    let c = gdiff_unchecked(node, g)?;
    c.validate()?;
    Ok(c)
}

/// Explicit JSON form of a G-differential complex, inverse to [`gdiff_unchecked`].
pub fn gdiff_to_json(c: &GDiffComplex) -> Value {
    let len = c.len();
    let dense = |m: &Matrix| -> Value {
        if m.is_zero() {
            return json!([]);
        }
        Value::from(m.to_dense().iter().map(|r| Value::from(r.iter().map(scalar_json).collect::<Vec<_>>())).collect::<Vec<_>>())
    };
    let per = |f: &dyn Fn(usize, usize) -> Matrix| -> Value {
        Value::from((0..c.algebra().dim()).map(|j| Value::from((0..len).map(|n| dense(&f(j, n))).collect::<Vec<_>>())).collect::<Vec<_>>())
    };
    let mut v = json!({
        "dims": c.complex().dims(),
        "d": (0..len).map(|n| dense(&c.d(n))).collect::<Vec<_>>(),
        "contractions": per(&|j, n| c.i(j, n)),
        "lie": per(&|j, n| c.l(j, n)),
    });
    if let Some(u) = c.unit() {
        v["unit"] = Value::from(u.to_dense(c.dim(0)).iter().map(scalar_json).collect::<Vec<_>>());
    }
    v
}

pub fn algebra_to_json(g: &LieAlgebra) -> Value {
    let brackets: Vec<Value> = g
        .entries()
        .into_iter()
        .filter(|(i, j, _)| i < j)
        .map(|(i, j, cs)| json!([i, j, cs.iter().map(|(k, c)| json!([k, scalar_json(c)])).collect::<Vec<_>>()]))
        .collect();
    let mut v = json!({"dim": g.dim(), "brackets": brackets});
    if let Some(n) = g.name() {
        v["name"] = Value::from(n);
    }
    v
}

pub fn scalar_json(s: &Scalar) -> Value {
    if s.is_integer() {
        if let Ok(v) = s.to_string().parse::<i64>() {
            return Value::from(v);
        }
    }
    Value::from(s.to_string())
}

/// Variable names for polynomial strings: `variables` if given, otherwise `x0, x1, …`.
pub fn variable_names(node: &At<'_>, n: usize) -> Result<Vec<String>, TaskError> {
    match node.opt("variables") {
        Some(v) => {
            let names = v.array_len(n)?.iter().map(|s| s.str().map(str::to_string)).collect::<Result<Vec<_>, _>>()?;
            Ok(names)
        }
        None => Ok((0..n).map(|i| format!("x{i}")).collect()),
    }
}

/// A polynomial: a string, one term `{"exponents": [...], "coeff": c}`, a list of terms, or a scalar.
pub fn poly(node: &At<'_>, vars: &[String]) -> Result<Poly, TaskError> {
    let n = vars.len();
    match node.value {
        Value::String(s) => {
            if let Ok(c) = s.parse::<Scalar>() {
                return Ok(Poly::constant(n, c));
            }
            let names: Vec<&str> = vars.iter().map(String::as_str).collect();
            parse_poly(s, &names).map_err(|e| node.err(e.to_string()))
        }
        Value::Number(_) => Ok(Poly::constant(n, node.scalar()?)),
        Value::Object(_) => {
            known_keys(node, &["exponents", "coeff"])?;
            let e = node.get("exponents")?.array_len(n)?.iter().map(|v| v.usize().map(|x| x as u32)).collect::<Result<Vec<_>, _>>()?;
            let c = match node.opt("coeff") {
                Some(c) => c.scalar()?,
                None => Scalar::one(),
            };
            Ok(Poly::monomial(n, e, c))
        }
        Value::Array(_) => {
            let mut p = Poly::zero(n);
            for t in node.array()? {
                if t.value.is_array() {
                    return Err(t.err("nested term lists are not allowed"));
                }
                p = p.add(&poly(&t, vars)?);
            }
            Ok(p)
        }
        _ => Err(node.err("expected a polynomial")),
    }
}

fn field<K: crate::poisson::field::Kind>(
    node: &At<'_>,
    vars: &[String],
    degree: Option<usize>,
) -> Result<crate::poisson::field::Field<K>, TaskError> {
    let n = vars.len();
    let mut f = crate::poisson::field::Field::<K>::zero(n);
    for entry in node.array()? {
        let parts = entry.array_len(2)?;
        let idx = parts[0].array()?.iter().map(|v| v.index(n)).collect::<Result<Vec<_>, _>>()?;
        if let Some(q) = degree {
            if idx.len() != q {
                return Err(parts[0].err(format!("expected {q} indices")));
            }
        }
        let mut sorted = idx.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != idx.len() {
            return Err(parts[0].err("repeated index"));
        }
        f = f.add(&crate::poisson::field::Field::<K>::from_indices(n, &idx, poly(&parts[1], vars)?));
    }
    Ok(f)
}

/// `[[indices, coefficient], ...]`, e.g. `[[[0, 1], "x2"]]` for `x2 ∂0∧∂1`.
pub fn multivector(node: &At<'_>, vars: &[String], degree: Option<usize>) -> Result<PolyMultivector, TaskError> {
    field(node, vars, degree)
}

pub fn form(node: &At<'_>, vars: &[String], degree: Option<usize>) -> Result<PolyForm, TaskError> {
    field(node, vars, degree)
}

/// The bivector of a Poisson payload and the variable names, before the `[π, π] = 0` check.
pub fn bivector(node: &At<'_>) -> Result<(PolyMultivector, Vec<String>), TaskError> {
    let n = node.get("ambient")?.usize()?;
    if n > 31 {
        return Err(node.get("ambient")?.err("at most 31 coordinates are supported"));
    }
    let vars = variable_names(node, n)?;
    let pi = match node.opt("pi") {
        Some(p) => multivector(&p, &vars, Some(2))?,
        None => PolyMultivector::zero(n),
    };
    Ok((pi, vars))
}

/// A certified Poisson structure; `regime`, when present, must match the detected one.
pub fn poisson(node: &At<'_>) -> Result<(PoissonStructure, Vec<String>), TaskError> {
    let (pi, vars) = bivector(node)?;
    let p = PoissonStructure::new(pi)?;
    check_regime(node, &p)?;
    Ok((p, vars))
}

pub fn check_regime(node: &At<'_>, p: &PoissonStructure) -> Result<(), TaskError> {
    if let Some(r) = node.opt("regime") {
        let want = r.str()?;
        let have = serde_json::to_value(p.regime()).expect("regime serializes");
        if have.as_str() != Some(want) {
            return Err(r.err(format!("declared regime {want:?} but π is {have}")));
        }
    }
    Ok(())
}

/// Momentum data of a Poisson payload:
/// `"action": {"algebra": ..., "fields": [vector field per generator], "delta": matrix?, "lift": [one-form per generator]?}`
/// with either `"mu": [polynomial per generator]` (`δ = 0`, `ã = −dμ`) or an explicit `lift`.
pub fn momentum(node: &At<'_>, p: &PoissonStructure, vars: &[String]) -> Result<MomentumData, TaskError> {
    let action = node.get("action")?;
    known_keys(&action, &["algebra", "fields", "delta", "lift"])?;
    let g = algebra(&action.get("algebra")?)?;
    let fields = action
        .get("fields")?
        .array_len(g.dim())?
        .iter()
        .map(|f| multivector(f, vars, Some(1)))
        .collect::<Result<Vec<_>, _>>()?;
    let mu = match node.opt("mu") {
        Some(m) => Some(m.array_len(g.dim())?.iter().map(|f| poly(f, vars)).collect::<Result<Vec<_>, _>>()?),
        None => None,
    };
    let delta = match action.opt("delta") {
        Some(d) => {
            let n = g.dim();
            Some(matrix(&d, n * n.saturating_sub(1) / 2, n)?)
        }
        None => None,
    };
    match (action.opt("lift"), mu, delta) {
        (None, Some(mu), None) => Ok(MomentumData::from_moment(&g, p, fields, mu)?),
        (None, None, _) => Err(node.err("either \"mu\" or \"action/lift\" is required")),
        (None, Some(_), Some(_)) => Err(action.err("a nonzero cobracket needs an explicit \"lift\"")),
        (Some(l), mu, delta) => {
            let lift = l.array_len(g.dim())?.iter().map(|f| form(f, vars, Some(1))).collect::<Result<Vec<_>, _>>()?;
            let b = match delta {
                Some(d) => BialgebraData::new(&g, d)?,
                None => BialgebraData::zero(&g),
            };
            Ok(MomentumData::new(&b, p, fields, lift, mu)?)
        }
    }
}
