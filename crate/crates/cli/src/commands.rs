//! One function per subcommand. Each reads its inputs, runs the core
//! computation over the selected field and returns an [`Outcome`].

use std::path::Path;

use ncproj_core::af_s::SElement;
use ncproj_core::field::{Field, FieldSpec};
use ncproj_core::fpmod::FpModule;
use ncproj_core::leavitt::l0_to_s;
use ncproj_core::parse::{parse_leavitt, PresentationFile};
use ncproj_core::qgr::{normalized_rank, pi_star, QgrClass};
use ncproj_core::verify::{format_line, run_suite, VerifyConfig, SUITES};
use ncproj_core::{with_field, Arity, Error};
use serde_json::{json, Value};

use crate::report::{CliError, CliResult, Outcome};

/// Options shared by every subcommand.
#[derive(Clone, Debug)]
pub struct Context {
    pub d: Option<Arity>,
    pub field: Option<FieldSpec>,
    pub degree_cap: i64,
    pub level_cap: u32,
    pub seed: u64,
}

impl Context {
    pub fn config_json(&self) -> Value {
        json!({
            "d": self.d.map(|d| d.get()),
            "field": self.field.map(|f| f.to_string()),
            "degree_cap": self.degree_cap,
            "level_cap": self.level_cap,
            "seed": self.seed,
        })
    }

    /// Arity for commands without an input file.
    fn arity(&self) -> Arity {
        self.d.unwrap_or_else(|| Arity::new(2).expect("valid arity"))
    }

    fn field_or(&self, fallback: FieldSpec) -> FieldSpec {
        self.field.unwrap_or(fallback)
    }

    fn check_degree(&self, j: i64) -> CliResult<()> {
        if j > self.degree_cap {
            return Err(Error::CapExceeded { what: "degree", at: j, cap: self.degree_cap }.into());
        }
        Ok(())
    }

    fn check_level(&self, r: u32) -> CliResult<()> {
        if r > self.level_cap {
            return Err(Error::CapExceeded { what: "level", at: r as i64, cap: self.level_cap as i64 }.into());
        }
        Ok(())
    }
}

/// Runs `$body` with `$f` bound to the field type, or fails for an unsupported prime.
macro_rules! dispatch {
    ($spec:expr, $f:ident => $body:expr) => {{
        let spec: FieldSpec = $spec;
        with_field!(spec, $f => $body).unwrap_or_else(|| Err(CliError::usage(format!("unsupported field {spec}"))))
    }};
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(&path.display().to_string(), e))
}

fn load(ctx: &Context, path: &Path) -> CliResult<PresentationFile> {
    let file = PresentationFile::parse(&read(path)?)?;
    if let Some(d) = ctx.d {
        if d != file.d {
            return Err(CliError::usage(format!(
                "{} declares d = {}, but --d {} was given",
                path.display(),
                file.d,
                d
            )));
        }
    }
    Ok(file)
}

fn module<F: Field>(file: &PresentationFile) -> CliResult<FpModule<F>> {
    Ok(file.typed::<F>()?.module()?)
}

pub fn class_json(c: &QgrClass) -> Value {
    json!({ "t": c.numerator(), "i": c.exponent(), "d": c.arity().get(), "value": c.to_string() })
}

fn file_inputs(o: Outcome, path: &Path, file: &PresentationFile, field: FieldSpec) -> Outcome {
    o.input("file", path.display().to_string())
        .input("name", file.name.clone())
        .input("d", file.d.get())
        .input("gens", file.gens.clone())
        .input("relations", file.rows.len())
        .input("field", field.to_string())
}

pub fn hilbert(ctx: &Context, path: &Path, j: i64) -> CliResult<Outcome> {
    ctx.check_degree(j)?;
    let file = load(ctx, path)?;
    let field = ctx.field_or(file.field);
    dispatch!(field, F => {
        let m = module::<F>(&file)?;
        let dim = m.hilbert(j);
        let by_rank = m.hilbert_by_rank(j);
        if dim != by_rank {
            return Err(Error::CertificateMismatch(format!("dim M_{j}: {dim} from the relation basis, {by_rank} by rank")).into());
        }
        let o = Outcome::new(json!({ "dim": dim }))
            .certificate(json!({ "relation_basis_size": m.relation_basis().len(), "dim_by_rank": by_rank }));
        Ok(file_inputs(o, path, &file, field).input("j", j))
    })
}

fn profile_json<F: Field>(ctx: &Context, m: &FpModule<F>) -> CliResult<(Value, Value)> {
    let p = m.stable_profile();
    if p.i0 > ctx.degree_cap {
        return Err(Error::CapExceeded { what: "stable index", at: p.i0, cap: ctx.degree_cap }.into());
    }
    let through = ctx.degree_cap.min(p.i0 + 4);
    let verified = m.verify_profile(&p, through);
    if !verified {
        return Err(Error::CertificateMismatch(format!("profile fails between {} and {through}", p.i0)).into());
    }
    let result = json!({ "i0": p.i0, "t": p.terms(5), "t_i0": p.t_i0, "class": class_json(&p.class()) });
    let cert = json!({
        "presentation_bound": p.presentation_bound,
        "bijective_through": through,
        "hilbert": (0..=through).map(|j| m.hilbert(j)).collect::<Vec<_>>(),
    });
    Ok((result, cert))
}

pub fn profile(ctx: &Context, path: &Path) -> CliResult<Outcome> {
    let file = load(ctx, path)?;
    let field = ctx.field_or(file.field);
    dispatch!(field, F => {
        let m = module::<F>(&file)?;
        let (p, cert) = profile_json(ctx, &m)?;
        Ok(file_inputs(Outcome::new(json!({ "profile": p })).certificate(cert), path, &file, field))
    })
}

pub fn k0(ctx: &Context, path: &Path) -> CliResult<Outcome> {
    let file = load(ctx, path)?;
    let field = ctx.field_or(file.field);
    dispatch!(field, F => {
        let m = module::<F>(&file)?;
        let p = m.stable_profile();
        let c = m.k0_class();
        let o = Outcome::new(json!({ "k0": class_json(&c), "fdim": m.is_fdim() }))
            .certificate(json!({ "i0": p.i0, "t_i0": p.t_i0, "presentation_bound": p.presentation_bound }));
        Ok(file_inputs(o, path, &file, field))
    })
}

pub fn torsion(ctx: &Context, path: &Path) -> CliResult<Outcome> {
    let file = load(ctx, path)?;
    let field = ctx.field_or(file.field);
    dispatch!(field, F => {
        let m = module::<F>(&file)?;
        let t = m.torsion();
        let degrees: Vec<Value> = t
            .elements
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(j, v)| json!({ "degree": j, "dim": v.len(), "basis": v.iter().map(|e| e.to_string()).collect::<Vec<_>>() }))
            .collect();
        let (quotient, _) = profile_json(ctx, &t.quotient)?;
        let o = Outcome::new(json!({
            "torsion": { "dimension": t.dimension, "degrees": degrees },
            "quotient_profile": quotient,
        }))
        .certificate(json!({ "quotient_torsion_dimension": t.quotient.torsion().dimension }));
        Ok(file_inputs(o, path, &file, field))
    })
}

pub fn iso(ctx: &Context, a: &Path, b: &Path) -> CliResult<Outcome> {
    let fa = load(ctx, a)?;
    let fb = load(ctx, b)?;
    if fa.d != fb.d {
        return Err(CliError::usage(format!("arities differ: {} vs {}", fa.d, fb.d)));
    }
    let field = match ctx.field {
        Some(f) => f,
        None if fa.field == fb.field => fa.field,
        None => return Err(CliError::usage(format!("fields differ: {} vs {}; pass --field", fa.field, fb.field))),
    };
    dispatch!(field, F => {
        let (ma, mb) = (module::<F>(&fa)?, module::<F>(&fb)?);
        let (oa, ob) = (pi_star(&ma), pi_star(&mb));
        let o = Outcome::new(json!({ "isomorphic": oa.is_isomorphic(&ob) }))
            .certificate(json!({ "classes": [class_json(&oa.class()), class_json(&ob.class())] }))
            .input("files", vec![a.display().to_string(), b.display().to_string()])
            .input("d", fa.d.get())
            .input("field", field.to_string());
        Ok(o)
    })
}

pub fn qgr_class(ctx: &Context, path: &Path) -> CliResult<Outcome> {
    let file = load(ctx, path)?;
    let field = ctx.field_or(file.field);
    dispatch!(field, F => {
        let m = module::<F>(&file)?;
        let obj = pi_star(&m);
        let (i0, t) = obj.witness();
        let rank = normalized_rank(&m, m.stable_profile().i0.max(0))?;
        let o = Outcome::new(json!({
            "class": class_json(&obj.class()),
            "witness": { "i0": i0, "t": t },
            "zero": obj.is_zero(),
        }))
        .certificate(json!({ "normalized_rank": class_json(&rank), "agrees": rank == obj.class() }));
        Ok(file_inputs(o, path, &file, field))
    })
}

pub fn decompose(ctx: &Context, path: &Path, i: i64) -> CliResult<Outcome> {
    let file = load(ctx, path)?;
    let field = ctx.field_or(file.field);
    dispatch!(field, F => {
        let m = module::<F>(&file)?;
        let obj = pi_star(&m);
        let r = obj.decompose(i)?;
        let o = Outcome::new(json!({ "twist": i, "multiplicity": r }))
            .certificate(json!({ "class": class_json(&obj.class()) }));
        Ok(file_inputs(o, path, &file, field).input("i", i))
    })
}

pub fn leavitt_eval(ctx: &Context, expr: &str, level: Option<usize>) -> CliResult<Outcome> {
    let d = ctx.arity();
    let field = ctx.field_or(FieldSpec::Rationals);
    dispatch!(field, F => {
        let a = parse_leavitt::<F>(expr, d)?;
        let min = a.minimal_form();
        let degrees: Vec<i64> = min.degrees().into_iter().collect();
        let mut result = json!({
            "value": min.to_string(),
            "zero": min.is_zero(),
            "degrees": degrees,
        });
        if let Some(r) = level {
            ctx.check_level(r as u32)?;
            let mut raised = min.clone();
            for &m in &degrees {
                raised = raised.raise_level(m, r)?;
            }
            result["at_level"] = json!(raised.to_string());
        }
        if degrees.iter().all(|&m| m == 0) {
            result["matrix"] = l0_to_s(&min)?.to_json();
        }
        let o = Outcome::new(result)
            .input("expr", expr)
            .input("d", d.get())
            .input("field", field.to_string())
            .input("level", level);
        Ok(o)
    })
}

/// The operations of `s-calc`.
#[derive(Clone, Debug)]
pub enum SOp {
    Unit { level: u32, p: usize, q: usize },
    Mul { a: std::path::PathBuf, b: std::path::PathBuf },
    Add { a: std::path::PathBuf, b: std::path::PathBuf },
    Embed { a: std::path::PathBuf, to: u32 },
    K0 { a: std::path::PathBuf },
    Trace { a: std::path::PathBuf },
    Regular { a: std::path::PathBuf },
    Simplicity { a: std::path::PathBuf },
}

fn load_s<F: Field>(ctx: &Context, path: &Path) -> CliResult<SElement<F>> {
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let a = SElement::<F>::from_json(&value)?;
    if let Some(d) = ctx.d {
        if d != a.arity() {
            return Err(CliError::usage(format!("{} has d = {}, but --d {} was given", path.display(), a.arity(), d)));
        }
    }
    ctx.check_level(a.level())?;
    Ok(a)
}

fn s_calc_in<F: Field>(ctx: &Context, op: &SOp) -> CliResult<Outcome> {
    let same_arity = |a: &SElement<F>, b: &SElement<F>| -> CliResult<()> {
        if a.arity() != b.arity() {
            return Err(Error::ArityMismatch { left: a.arity().as_u8(), right: b.arity().as_u8() }.into());
        }
        Ok(())
    };
    let o = match op {
        SOp::Unit { level, p, q } => {
            ctx.check_level(*level)?;
            let d = ctx.arity();
            let n = d.pow(*level) as usize;
            if *p >= n || *q >= n {
                return Err(CliError::usage(format!("indices must lie below {n} at level {level}")));
            }
            Outcome::new(json!({ "element": SElement::<F>::unit_at(d, *level, *p, *q).to_json() }))
                .input("level", *level)
                .input("p", *p)
                .input("q", *q)
        }
        SOp::Mul { a, b } | SOp::Add { a, b } => {
            let (x, y) = (load_s::<F>(ctx, a)?, load_s::<F>(ctx, b)?);
            same_arity(&x, &y)?;
            let z = if matches!(op, SOp::Mul { .. }) { x.mul(&y) } else { x.add(&y) };
            Outcome::new(json!({ "element": z.to_json() }))
                .input("a", a.display().to_string())
                .input("b", b.display().to_string())
        }
        SOp::Embed { a, to } => {
            ctx.check_level(*to)?;
            let x = load_s::<F>(ctx, a)?;
            Outcome::new(json!({ "element": x.embed(*to)?.to_json() }))
                .input("a", a.display().to_string())
                .input("to", *to)
        }
        SOp::K0 { a } => {
            let x = load_s::<F>(ctx, a)?;
            let c = x.k0_class()?;
            Outcome::new(json!({ "k0": class_json(&c) }))
                .certificate(json!({ "idempotent": true, "canonical_level": x.canonical().level() }))
                .input("a", a.display().to_string())
        }
        SOp::Trace { a } => {
            let x = load_s::<F>(ctx, a)?;
            let t = x.normalized_trace().map(|t| t.to_string());
            Outcome::new(json!({ "normalized_trace": t })).input("a", a.display().to_string())
        }
        SOp::Regular { a } => {
            let x = load_s::<F>(ctx, a)?;
            let w = x.vn_regular_witness();
            let holds = x.mul(&w).mul(&x) == x;
            if !holds {
                return Err(Error::CertificateMismatch("a·x·a differs from a".into()).into());
            }
            Outcome::new(json!({ "witness": w.to_json() }))
                .certificate(json!({ "axa_equals_a": holds }))
                .input("a", a.display().to_string())
        }
        SOp::Simplicity { a } => {
            let x = load_s::<F>(ctx, a)?;
            let w = x.simplicity_witness()?;
            let holds = w.reconstruct(&x) == SElement::one(x.arity());
            if !holds {
                return Err(Error::CertificateMismatch("witness does not reconstruct 1".into()).into());
            }
            Outcome::new(json!({
                "left": w.left.iter().map(SElement::to_json).collect::<Vec<_>>(),
                "right": w.right.iter().map(SElement::to_json).collect::<Vec<_>>(),
            }))
            .certificate(json!({ "reconstructs_one": holds, "terms": w.left.len() }))
            .input("a", a.display().to_string())
        }
    };
    Ok(o)
}

pub fn s_calc(ctx: &Context, op: &SOp) -> CliResult<Outcome> {
    let field = ctx.field_or(FieldSpec::Rationals);
    dispatch!(field, F => s_calc_in::<F>(ctx, op)).map(|o| o.input("field", field.to_string()))
}

pub fn verify(ctx: &Context, suite: &str, max_degree: Option<i64>) -> CliResult<Outcome> {
    if suite != "all" && !SUITES.contains(&suite) {
        return Err(CliError::usage(format!("unknown suite {suite:?}; expected all or one of {}", SUITES.join(", "))));
    }
    let field = ctx.field_or(FieldSpec::Rationals);
    let cfg = VerifyConfig { d: ctx.d, max_degree, level_cap: Some(ctx.level_cap), seed: ctx.seed };
    let outcomes = dispatch!(field, F => Ok(run_suite::<F>(suite, &cfg).expect("suite name checked")))?;
    let passed = outcomes.iter().all(|o| o.passed);
    let mut text = Vec::new();
    for o in &outcomes {
        text.push(format_line(o));
        if let Some(rows) = o.data.get("dims").and_then(Value::as_array) {
            text.push(format!("{:>6} {:>4} {:>8} {:>9}", "d", "j", "dim", "closed"));
            for r in rows {
                let cell = |k: &str| r[k].to_string();
                text.push(format!("{:>6} {:>4} {:>8} {:>9}", cell("d"), cell("j"), cell("dim"), cell("expected")));
            }
        }
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    text.push(if passed {
        format!("all {} passed", outcomes.len())
    } else {
        format!("{failed} of {} failed", outcomes.len())
    });
    let mut o = Outcome::new(json!({ "passed": passed, "criteria": outcomes }))
        .input("suite", suite)
        .input("d", ctx.d.map(|d| d.get()))
        .input("max_degree", max_degree)
        .input("field", field.to_string());
    o.text = text;
    o.failed = !passed;
    Ok(o)
}
