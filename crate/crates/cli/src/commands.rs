use std::fs;
use std::path::Path;
use std::time::Duration;

use serde_json::{json, Value as Json};

use equilog::assembly::{assm_exponential, modest_reflection, regular_subobjects, track_check};
use equilog::completion::{
    kernel_pair, per_as_kernel_pair, per_to_equ, reflect_to_equ, verify_per,
};
use equilog::equ::{limit_colimit, verify_equ_morphism, LimitArgs};
use equilog::oracle::{
    adjunction_universes, condition_suite, enumerate_morphclasses, equ_universe, injectivity_test,
    verify_adjunction, verify_universal_property,
};
use equilog::pequ::{functor_r, hat_pequ, pequ_exponential};
use equilog::quantale::{exp_condition_witness, verify_quantale};
use equilog::spaces::{adjunction_transfer, transfer_base};
use equilog::vcat::{presheaf_embed, vcat_exponential};
use equilog::{
    Assembly, Base, BaseKind, Direction, EquObj, EquilogError, LimitKind, MorphClass, PEquObj,
    PMorph, PseudoEqRel, Quantale, QuantaleOps, Result, SweepConfig, VCatObj, VFunctor, Verdict,
    DEFAULT_SEARCH_BOUND,
};

use crate::format::{
    assembly_doc, base_doc, equ_doc, morphism_doc, parse, pequ_doc, span_doc, vcat_doc, Value,
};
use crate::{AssmCommand, Command, DirArg, KindArg, OracleCommand, PerCommand, Report, SweepArgs};

const BOUND: u128 = DEFAULT_SEARCH_BOUND;

pub fn execute(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Check { file } => check(&load(file)?),
        Command::Limit {
            kind,
            files,
            base,
            verify,
            sweep,
        } => limit(*kind, files, base, verify.then_some(sweep)),
        Command::Exp { x, y, pequ } => exp(&load_valid(x)?, &load_valid(y)?, *pequ),
        Command::Hat { x } => hat(&load_valid(x)?),
        Command::ReflectR { x } => {
            let p = as_pequ(&load_valid(x)?)?;
            let e = functor_r(&p);
            Ok(Report::pass(
                format!(
                    "R gives {} points in {} classes",
                    e.len(),
                    e.equiv().num_blocks()
                ),
                doc(equ_doc(&e)),
            ))
        }
        Command::Assm { command } => assm(command),
        Command::Per { command } => per(command),
        Command::Adj { pair, dir, file } => {
            let which = (*pair).into();
            let dir = direction(*dir);
            let result = match load_valid(file)? {
                Value::Base(b) => doc(base_doc(&transfer_base(&b, which, dir)?)),
                Value::Equ(e) => doc(equ_doc(&adjunction_transfer(&e, which, dir)?)),
                other => return Err(expected("a base or equ object", &other)),
            };
            let (from, to) = which.kinds(dir);
            Ok(Report::pass(format!("{from} -> {to}"), result))
        }
        Command::Oracle { command } => oracle(command),
        Command::EnumerateHoms { a, b } => enumerate_homs(&load_valid(a)?, &load_valid(b)?),
    }
}

fn load(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| EquilogError::Parse(format!("{}: {e}", path.display())))?;
    parse(&text)
}

/// Loads a value whose bases satisfy their axioms.
fn load_valid(path: &Path) -> Result<Value> {
    let v = load(path)?;
    validate(&v)?;
    Ok(v)
}

fn validate(v: &Value) -> Result<()> {
    match v {
        Value::Quantale(_) => Ok(()),
        Value::Base(b) => b.validate(),
        Value::Equ(e) => e.base().validate(),
        Value::PEqu(p) => vcat_valid(p.base()),
        Value::Assembly(a) => vcat_valid(a.base()),
        Value::Span(s) => vcat_valid(&s.x1).and(vcat_valid(&s.x0)),
        Value::Morphism { dom, cod, .. } => validate(dom).and(validate(cod)),
    }
}

fn vcat_valid(x: &VCatObj) -> Result<()> {
    Base::VCat(x.clone()).validate()
}

fn doc<T: serde::Serialize>(d: T) -> Json {
    serde_json::to_value(d).expect("documents serialize")
}

fn expected(what: &str, v: &Value) -> EquilogError {
    EquilogError::Invalid(format!(
        "expected {what}, found a {} document",
        v.kind_name()
    ))
}

fn as_vcat(v: &Value) -> Result<VCatObj> {
    match v {
        Value::Base(Base::VCat(x)) => Ok(x.clone()),
        other => Err(expected("a vcat object", other)),
    }
}

fn as_equ(v: &Value) -> Result<EquObj> {
    match v {
        Value::Equ(e) => Ok(e.clone()),
        Value::Base(b) => Ok(EquObj::discrete(b.clone())),
        other => Err(expected("an equ object", other)),
    }
}

fn as_pequ(v: &Value) -> Result<PEquObj> {
    match v {
        Value::PEqu(p) => Ok(p.clone()),
        other => Err(expected("a pequ object", other)),
    }
}

fn as_assembly(v: &Value) -> Result<Assembly> {
    match v {
        Value::Assembly(a) => Ok(a.clone()),
        other => Err(expected("an assembly", other)),
    }
}

fn as_span(v: &Value) -> Result<PseudoEqRel> {
    match v {
        Value::Span(s) => Ok(s.clone()),
        other => Err(expected("a span", other)),
    }
}

fn as_morphism(v: &Value) -> Result<(&Value, &Value, &[usize])> {
    match v {
        Value::Morphism { dom, cod, map } => Ok((dom, cod, map)),
        other => Err(expected("a morphism", other)),
    }
}

fn equ_morphism(v: &Value) -> Result<MorphClass> {
    let (dom, cod, map) = as_morphism(v)?;
    MorphClass::new(as_equ(dom)?, as_equ(cod)?, map.to_vec())
}

fn names(names: &[String], map: &[usize]) -> Vec<String> {
    map.iter().map(|&i| names[i].clone()).collect()
}

fn sweep_config(s: &SweepArgs) -> Result<SweepConfig> {
    let mut cfg = SweepConfig::with_max_carrier(s.max_carrier)?;
    cfg.time_budget = s.time_budget.map(Duration::from_secs);
    Ok(cfg)
}

fn base_kind(s: &str) -> Result<BaseKind> {
    Ok(match s {
        "ord" => BaseKind::ORD,
        "met" => BaseKind::MET,
        "top" => BaseKind::Top,
        "app" => BaseKind::App,
        other => BaseKind::VCat(other.parse::<Quantale>()?),
    })
}

fn direction(d: DirArg) -> Direction {
    match d {
        DirArg::Fwd => Direction::Rightward,
        DirArg::Bwd => Direction::Leftward,
    }
}

fn verdict_report(what: &str, v: Verdict) -> Report {
    let summary = format!("{what}: {v}");
    let result = doc(&v);
    match v.certificate {
        None => Report::pass(summary, result),
        Some(c) => Report::fail(summary, result, c),
    }
}

// ------------------------------------------------------------------ check

fn base_failure(b: &Base) -> Option<String> {
    b.validate().err().map(|e| match e {
        EquilogError::Invalid(msg) => msg,
        other => other.to_string(),
    })
}

fn check(v: &Value) -> Result<Report> {
    let outcome = |summary: String, result: Json, failure: Option<String>| match failure {
        None => Report::pass(format!("PASS: {summary}"), result),
        Some(w) => Report::fail(format!("FAIL: {summary}"), result, w),
    };
    Ok(match v {
        Value::Quantale(q) => {
            let probe = q.default_grid();
            let report = verify_quantale(q, &probe);
            let exp = exp_condition_witness(q, &probe);
            let failure = report
                .checks
                .iter()
                .find(|c| !c.passed)
                .map(|c| {
                    format!(
                        "{:?} fails at {}",
                        c.law,
                        c.witness.clone().unwrap_or_default().join(", ")
                    )
                })
                .or_else(|| {
                    exp.map(|(u, v, w)| {
                        format!("exponentiability condition fails at u = {u}, v = {v}, w = {w}")
                    })
                });
            outcome(
                format!("{q} on {} probe values", probe.len()),
                json!({ "laws": report, "exp_condition": exp.is_none() }),
                failure,
            )
        }
        Value::Base(b) => outcome(
            format!("{} object with {} points", b.kind(), b.len()),
            json!({ "points": b.len(), "separated": b.is_separated() }),
            base_failure(b),
        ),
        Value::Equ(e) => outcome(
            format!(
                "equilogical object with {} points in {} classes",
                e.len(),
                e.equiv().num_blocks()
            ),
            json!({ "points": e.len(), "classes": e.equiv().num_blocks(), "separated": e.base().is_separated() }),
            base_failure(e.base()),
        ),
        Value::PEqu(p) => {
            let mut failure = base_failure(&Base::VCat(p.base().clone()));
            let mut injective = Json::Null;
            if failure.is_none() && p.base().quantale().is_finite() {
                let v = injectivity_test(p.base(), &SweepConfig::default())?;
                injective = doc(&v);
                if let Some(c) = v.certificate {
                    failure = Some(format!("base is not injective: {c}"));
                }
            }
            outcome(
                format!(
                    "partial equilogical object with {} points, {} in the domain, {} classes",
                    p.len(),
                    p.per().domain().len(),
                    p.per().num_blocks()
                ),
                json!({ "points": p.len(), "domain": p.per().domain().len(), "classes": p.per().num_blocks(), "separated": p.is_separated(), "injective": injective }),
                failure,
            )
        }
        Value::Assembly(a) => outcome(
            format!("assembly with {} elements", a.len()),
            json!({ "elements": a.len(), "modest": a.is_modest() }),
            base_failure(&Base::VCat(a.base().clone())),
        ),
        Value::Span(s) => {
            let failure = base_failure(&Base::VCat(s.x1.clone()))
                .or_else(|| base_failure(&Base::VCat(s.x0.clone())));
            if failure.is_some() {
                return Ok(outcome("span".into(), Json::Null, failure));
            }
            let r = verify_per(s, BOUND)?;
            let missing: Vec<&str> = [
                ("reflexivity", r.reflexivity.is_none()),
                ("symmetry", r.symmetry.is_none()),
                ("transitivity", r.transitivity.is_none()),
            ]
            .into_iter()
            .filter(|p| p.1)
            .map(|p| p.0)
            .collect();
            outcome(
                format!("span, regular mono: {}", r.regmono),
                doc(&r),
                (!missing.is_empty()).then(|| format!("no {} witness", missing.join(", "))),
            )
        }
        Value::Morphism { dom, cod, map } => check_morphism(dom, cod, map, outcome)?,
    })
}

fn check_morphism(
    dom: &Value,
    cod: &Value,
    map: &[usize],
    outcome: impl Fn(String, Json, Option<String>) -> Report,
) -> Result<Report> {
    validate(dom)?;
    validate(cod)?;
    Ok(match (dom, cod) {
        (Value::Base(a), Value::Base(b)) => {
            a.check_same_kind(b)?;
            let failure = (!a.is_morphism(b, map)).then(|| {
                let (sa, sb) = (a.shadow(), b.shadow());
                let q = sa.quantale();
                (0..a.len())
                    .flat_map(|i| (0..a.len()).map(move |j| (i, j)))
                    .find(|&(i, j)| !q.le(sa.get(i, j), sb.get(map[i], map[j])))
                    .map(|(i, j)| {
                        format!(
                            "structure between {} and {} is not preserved",
                            a.name(i),
                            a.name(j)
                        )
                    })
                    .unwrap_or_else(|| "the map is not a morphism of the base".into())
            });
            outcome(format!("{} morphism", a.kind()), Json::Null, failure)
        }
        (Value::Equ(_) | Value::Base(_), Value::Equ(_) | Value::Base(_)) => {
            let (a, b) = (as_equ(dom)?, as_equ(cod)?);
            a.base().check_same_kind(b.base())?;
            let r = verify_equ_morphism(&a, &b, map);
            let failure = if !r.base_morphism {
                Some("the representative is not a base morphism".into())
            } else {
                r.equivariance_witness
                    .clone()
                    .map(|[x, y]| format!("{x} and {y} are related but their images are not"))
            };
            outcome("equilogical morphism".into(), doc(&r), failure)
        }
        (Value::PEqu(a), Value::PEqu(b)) => {
            let failure = PMorph::new(a.clone(), b.clone(), map.to_vec())
                .err()
                .map(|e| e.to_string());
            outcome("partial equilogical morphism".into(), Json::Null, failure)
        }
        (Value::Assembly(a), Value::Assembly(b)) => {
            let t = track_check(map, a, b, BOUND)?;
            let result =
                json!({ "realizer": t.realizer.as_ref().map(|g| names(b.base().names(), g)) });
            let failure = t
                .realizer
                .is_none()
                .then(|| "no base morphism tracks the map".to_string());
            outcome("assembly morphism".into(), result, failure)
        }
        _ => {
            return Err(EquilogError::Invalid(format!(
                "no morphisms from a {} to a {}",
                dom.kind_name(),
                cod.kind_name()
            )))
        }
    })
}

// ------------------------------------------------------------------ limits

fn limit_args<'a>(
    kind: LimitKind,
    objects: &'a mut Vec<EquObj>,
    morphisms: &'a mut Vec<MorphClass>,
    files: &[std::path::PathBuf],
    base: &str,
) -> Result<LimitArgs<'a>> {
    let need = |n: usize, what: &str| -> Result<()> {
        if files.len() != n {
            return Err(EquilogError::Invalid(format!(
                "{kind:?} takes {n} {what}, got {} files",
                files.len()
            )));
        }
        Ok(())
    };
    Ok(match kind {
        LimitKind::Terminal | LimitKind::Initial => {
            need(0, "files")?;
            LimitArgs::Kind(base_kind(base)?)
        }
        LimitKind::Product | LimitKind::Coproduct => {
            need(2, "objects")?;
            for f in files {
                objects.push(as_equ(&load_valid(f)?)?);
            }
            LimitArgs::Objects(objects)
        }
        LimitKind::Equalizer | LimitKind::Coequalizer => {
            need(2, "morphisms")?;
            for f in files {
                morphisms.push(equ_morphism(&load_valid(f)?)?);
            }
            LimitArgs::Parallel(&morphisms[0], &morphisms[1])
        }
    })
}

fn limit(
    kind: KindArg,
    files: &[std::path::PathBuf],
    base: &str,
    verify: Option<&SweepArgs>,
) -> Result<Report> {
    let kind: LimitKind = kind.into();
    let (mut objects, mut morphisms) = (Vec::new(), Vec::new());
    let args = limit_args(kind, &mut objects, &mut morphisms, files, base)?;
    let cone = limit_colimit(kind, args.clone())?;
    let obj = &cone.object;
    let legs: Vec<Json> = cone
        .legs
        .iter()
        .map(|l| {
            doc(morphism_doc(
                Value::Equ(l.dom.clone()),
                Value::Equ(l.cod.clone()),
                l.rep.clone(),
            ))
        })
        .collect();
    let mut result = json!({ "object": doc(equ_doc(obj)), "legs": legs });
    let summary = format!(
        "{kind:?}: {} points in {} classes",
        obj.len(),
        obj.equiv().num_blocks()
    );
    let Some(sweep) = verify else {
        return Ok(Report::pass(summary, result));
    };
    let cfg = sweep_config(sweep)?;
    let universe = equ_universe(obj.kind(), &cfg)?;
    let v = verify_universal_property(&cone, args, &universe, &cfg)?;
    result["verdict"] = doc(&v);
    let line = format!("{summary}\nuniversal property: {v}");
    Ok(match v.certificate {
        None => Report::pass(line, result),
        Some(c) => Report::fail(line, result, c),
    })
}

// ------------------------------------------------------------------ exponentials, presheaves

fn exp(x: &Value, y: &Value, pequ: bool) -> Result<Report> {
    if pequ {
        let (x, y) = (as_pequ(x)?, as_pequ(y)?);
        let e = pequ_exponential(&x, &y, BOUND)?;
        let fnames = y.base().names();
        let functors: Vec<Vec<String>> = e.functors.iter().map(|f| names(fnames, f)).collect();
        return Ok(Report::pass(
            format!(
                "exponential with {} points, {} classes",
                e.object.len(),
                e.object.per().num_blocks()
            ),
            json!({ "object": doc(pequ_doc(&e.object)), "functors": functors }),
        ));
    }
    let (x, y) = (as_vcat(x)?, as_vcat(y)?);
    let e = vcat_exponential(&x, &y, BOUND)?;
    let functors: Vec<Vec<String>> = e.functors.iter().map(|f| names(y.names(), f)).collect();
    Ok(Report::pass(
        format!("exponential with {} points", e.object.len()),
        json!({ "object": doc(vcat_doc(&e.object)), "functors": functors }),
    ))
}

fn hat(v: &Value) -> Result<Report> {
    match v {
        Value::Base(Base::VCat(x)) => {
            let (hat, y) = presheaf_embed(x)?;
            Ok(Report::pass(
                format!("presheaf object with {} points", hat.len()),
                json!({ "object": doc(vcat_doc(&hat)), "embedding": names(hat.names(), &y.map) }),
            ))
        }
        Value::Equ(e) => {
            let (p, y) = hat_pequ(e)?;
            Ok(Report::pass(
                format!(
                    "partial equilogical object with {} points, {} classes",
                    p.len(),
                    p.per().num_blocks()
                ),
                json!({ "object": doc(pequ_doc(&p)), "embedding": names(p.base().names(), &y.map) }),
            ))
        }
        other => Err(expected("a vcat or equ object", other)),
    }
}

// ------------------------------------------------------------------ assemblies

fn assm(cmd: &AssmCommand) -> Result<Report> {
    match cmd {
        AssmCommand::Exp { x, y } => {
            let (x, y) = (as_assembly(&load_valid(x)?)?, as_assembly(&load_valid(y)?)?);
            let e = assm_exponential(&x, &y, BOUND)?;
            let maps: Vec<Vec<String>> = e.maps.iter().map(|m| names(y.elems(), m)).collect();
            Ok(Report::pass(
                format!(
                    "exponential with {} elements, modest: {}",
                    e.object.len(),
                    e.object.is_modest()
                ),
                json!({ "object": doc(assembly_doc(&e.object)), "maps": maps }),
            ))
        }
        AssmCommand::Reflect { x } => {
            let x = as_assembly(&load_valid(x)?)?;
            let (r, unit) = modest_reflection(&x);
            Ok(Report::pass(
                format!("modest reflection with {} elements", r.len()),
                json!({ "object": doc(assembly_doc(&r)), "unit": names(r.elems(), &unit) }),
            ))
        }
        AssmCommand::Subobjects { x } => {
            let x = as_assembly(&load_valid(x)?)?;
            let subs = regular_subobjects(&x)?;
            let list: Vec<Json> = subs
                .iter()
                .map(|s| {
                    json!({
                        "subset": names(x.elems(), &s.subset),
                        "object": doc(assembly_doc(&s.object)),
                        "cofork": {
                            "target": doc(assembly_doc(&s.cofork.target)),
                            "u": names(s.cofork.target.elems(), &s.cofork.u),
                            "v": names(s.cofork.target.elems(), &s.cofork.v),
                        }
                    })
                })
                .collect();
            Ok(Report::pass(
                format!("{} regular subobjects", subs.len()),
                Json::Array(list),
            ))
        }
    }
}

// ------------------------------------------------------------------ spans

fn per(cmd: &PerCommand) -> Result<Report> {
    match cmd {
        PerCommand::Verify { span } => {
            let s = as_span(&load_valid(span)?)?;
            check(&Value::Span(s))
        }
        PerCommand::ToEqu { span } => {
            let e = per_to_equ(&as_span(&load_valid(span)?)?)?;
            Ok(Report::pass(
                format!("{} points in {} classes", e.len(), e.equiv().num_blocks()),
                doc(equ_doc(&e)),
            ))
        }
        PerCommand::Kernel { morphism } => {
            let v = load_valid(morphism)?;
            let (dom, cod, map) = as_morphism(&v)?;
            let f = VFunctor::new(as_vcat(dom)?, as_vcat(cod)?, map.to_vec())?;
            let (span, w) = kernel_pair(&f);
            Ok(Report::pass(
                format!("kernel pair with {} pairs", span.x1.len()),
                json!({ "span": doc(span_doc(&span)), "witnesses": w }),
            ))
        }
        PerCommand::AsKernel { span } => {
            let s = as_span(&load_valid(span)?)?;
            let cert = per_as_kernel_pair(&s)?;
            let q = &cert.quotient;
            Ok(Report::pass(
                format!("kernel pair of a quotient onto {} points", q.cod.len()),
                json!({
                    "quotient": doc(morphism_doc(Value::Base(Base::VCat(q.dom.clone())), Value::Base(Base::VCat(q.cod.clone())), q.map.clone())),
                    "kernel": doc(span_doc(&cert.kernel)),
                    "iso": names(cert.kernel.x1.names(), &cert.iso),
                }),
            ))
        }
        PerCommand::Reflect { span } => {
            let s = as_span(&load_valid(span)?)?;
            let (e, unit) = reflect_to_equ(&s, BOUND)?;
            Ok(Report::pass(
                format!(
                    "reflection with {} points in {} classes",
                    e.len(),
                    e.equiv().num_blocks()
                ),
                json!({ "object": doc(equ_doc(&e)), "unit": names(e.base().names(), &unit) }),
            ))
        }
    }
}

// ------------------------------------------------------------------ oracle

fn ump_sweep(kind: BaseKind, cfg: &SweepConfig) -> Result<Verdict> {
    let universe = equ_universe(kind, cfg)?;
    let clock = cfg.clock();
    let mut parts = Vec::new();
    let mut check = |k: LimitKind, args: LimitArgs<'_>| -> Result<bool> {
        clock.check("universal property sweep")?;
        let cone = limit_colimit(k, args.clone())?;
        let v = verify_universal_property(&cone, args, &universe, cfg)?;
        let ok = v.passed;
        parts.push(v);
        Ok(ok)
    };
    'outer: {
        for k in [LimitKind::Terminal, LimitKind::Initial] {
            if !check(k, LimitArgs::Kind(kind))? {
                break 'outer;
            }
        }
        for a in &universe {
            for b in &universe {
                let ab = [a.clone(), b.clone()];
                for k in [LimitKind::Product, LimitKind::Coproduct] {
                    if !check(k, LimitArgs::Objects(&ab))? {
                        break 'outer;
                    }
                }
                let homs = enumerate_morphclasses(a, b, cfg.bound)?;
                for (i, f) in homs.iter().enumerate() {
                    for g in &homs[i..] {
                        for k in [LimitKind::Equalizer, LimitKind::Coequalizer] {
                            if !check(k, LimitArgs::Parallel(f, g))? {
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(Verdict::all(cfg.max_carrier, parts))
}

fn oracle(cmd: &OracleCommand) -> Result<Report> {
    match cmd {
        OracleCommand::Ump {
            kind,
            files,
            base,
            sweep,
        } => match kind {
            Some(k) => limit(*k, files, base, Some(sweep)),
            None => {
                if !files.is_empty() {
                    return Err(EquilogError::Invalid("files need --kind".into()));
                }
                let kind = base_kind(base)?;
                let v = ump_sweep(kind, &sweep_config(sweep)?)?;
                Ok(verdict_report(
                    &format!("limits and colimits in {kind}-Equ"),
                    v,
                ))
            }
        },
        OracleCommand::Adjunction { pair, dir, sweep } => {
            let which: equilog::Transfer = (*pair).into();
            let left = dir.map(direction).unwrap_or(which.left_adjoint());
            let cfg = sweep_config(sweep)?;
            let (s, t) = adjunction_universes(which, left, &cfg)?;
            let v = verify_adjunction(which, left, &s, &t, &cfg)?;
            let (from, to) = which.kinds(left);
            Ok(verdict_report(&format!("{from} -> {to} left adjoint"), v))
        }
        OracleCommand::Inject { file, sweep } => {
            let x = as_vcat(&load_valid(file)?)?;
            let v = injectivity_test(&x, &sweep_config(sweep)?)?;
            Ok(verdict_report("injectivity", v))
        }
        OracleCommand::Conditions { base, sweep } => {
            let report = condition_suite(base_kind(base)?, &sweep_config(sweep)?)?;
            let text = report.to_string().trim_end().to_string();
            let result = doc(&report);
            Ok(if report.passed() {
                Report::pass(text, result)
            } else {
                let first = report
                    .results
                    .iter()
                    .find(|r| r.status == equilog::oracle::ConditionStatus::Fail)
                    .map(|r| format!("({}) {}", r.label, r.detail))
                    .unwrap_or_default();
                Report::fail(text, result, first)
            })
        }
    }
}

// ------------------------------------------------------------------ homs

fn enumerate_homs(a: &Value, b: &Value) -> Result<Report> {
    let (maps, cod_names): (Vec<Vec<usize>>, Vec<String>) = match (a, b) {
        (Value::Base(x), Value::Base(y)) => (x.morphisms_to(y, BOUND)?, y.names().to_vec()),
        (Value::Equ(x), Value::Equ(y)) => (
            enumerate_morphclasses(x, y, BOUND)?
                .into_iter()
                .map(|f| f.rep)
                .collect(),
            y.base().names().to_vec(),
        ),
        (Value::PEqu(x), Value::PEqu(y)) => (
            enumerate_morphclasses(x, y, BOUND)?
                .into_iter()
                .map(|f| f.rep)
                .collect(),
            y.base().names().to_vec(),
        ),
        (Value::Assembly(x), Value::Assembly(y)) => (x.morphisms_to(y, BOUND)?, y.elems().to_vec()),
        _ => {
            return Err(EquilogError::Invalid(format!(
                "no hom-set between a {} and a {}",
                a.kind_name(),
                b.kind_name()
            )))
        }
    };
    let list: Vec<Vec<String>> = maps.iter().map(|m| names(&cod_names, m)).collect();
    Ok(Report::pass(
        format!("{} morphisms", list.len()),
        json!({ "count": list.len(), "maps": list }),
    ))
}

#[allow(dead_code)]
fn kind_arg_name(k: KindArg) -> LimitKind {
    k.into()
}
