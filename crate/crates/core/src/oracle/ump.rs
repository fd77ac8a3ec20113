//! Universal properties checked against every competitor in a universe.

use std::collections::{HashMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use rayon::prelude::*;

use super::homs::{base_maps, equ_class_key, pequ_class_key, HomEnum};
use super::{describe_assm, describe_equ, describe_pequ, SweepConfig, Verdict};
use crate::assembly::{Assembly, AssmExponential, RegularSubobject};
use crate::base::Base;
use crate::completion::PseudoEqRel;
use crate::equ::{verify_equ_morphism, EquObj, LimitArgs, LimitCone, LimitKind, MorphClass};
use crate::error::{EquilogError, Result};
use crate::pequ::{functor_r, functor_r_morph, PEquObj, PExponential, PMorph};
use crate::vcat::{Exponential, VCatObj};

fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    f.iter().map(|&y| g[y]).collect()
}

/// `images` must be pairwise distinct and cover exactly `targets`.
fn bijection<K: Eq + Hash + Clone + Debug>(
    competitor: &str,
    images: Vec<(K, String)>,
    targets: Vec<(K, String)>,
) -> Option<String> {
    let mut seen: HashMap<K, String> = HashMap::new();
    let target_keys: HashSet<K> = targets.iter().map(|t| t.0.clone()).collect();
    for (k, desc) in images {
        if let Some(prev) = seen.get(&k) {
            return Some(format!(
                "uniqueness fails for competitor {competitor}: {prev} and {desc} are distinct but induce the same cone"
            ));
        }
        if !target_keys.contains(&k) {
            return Some(format!(
                "competitor {competitor}: {desc} induces a cone outside the expected set"
            ));
        }
        seen.insert(k, desc);
    }
    for (k, desc) in targets {
        if !seen.contains_key(&k) {
            return Some(format!(
                "existence fails for competitor {competitor}: no mediating morphism for {desc}"
            ));
        }
    }
    None
}

fn rep_desc(f: &[usize]) -> String {
    format!("{f:?}")
}

fn leg_problem(leg: &MorphClass, dom: &EquObj, cod: &EquObj, what: &str) -> Option<String> {
    if &leg.dom != dom || &leg.cod != cod {
        return Some(format!("{what} has the wrong domain or codomain"));
    }
    let r = verify_equ_morphism(dom, cod, &leg.rep);
    if !r.passed() {
        return Some(format!("{what} {:?} is not a morphism", leg.rep));
    }
    None
}

fn run_universe<T: Sync>(
    universe: &[T],
    cfg: &SweepConfig,
    check: impl Fn(&T) -> Result<Option<String>> + Sync,
) -> Result<Verdict> {
    let clock = cfg.clock();
    let outcomes: Vec<Result<Option<String>>> = universe
        .par_iter()
        .map(|z| {
            clock.check("universal property sweep")?;
            check(z)
        })
        .collect();
    Verdict::from_outcomes(cfg.max_carrier, outcomes)
}

/// Checks a (co)limit cone against every competitor of the same base kind
/// in `universe`. The cone need not come from [`crate::equ::limit_colimit`].
pub fn verify_universal_property(
    cone: &LimitCone,
    args: LimitArgs<'_>,
    universe: &[EquObj],
    cfg: &SweepConfig,
) -> Result<Verdict> {
    let bound = cfg.bound;
    let kind = cone.object.kind();
    let universe: Vec<&EquObj> = universe.iter().filter(|z| z.kind() == kind).collect();
    let obj = &cone.object;
    let fail = |msg: String| Ok(Verdict::fail(cfg.max_carrier, 0, msg));
    let bad_args = || EquilogError::Invalid(format!("{:?} cone with mismatched inputs", cone.kind));
    match cone.kind {
        LimitKind::Terminal | LimitKind::Initial => {
            let terminal = cone.kind == LimitKind::Terminal;
            run_universe(&universe, cfg, |z| {
                let n = if terminal {
                    z.homs(obj, bound)?.len()
                } else {
                    obj.homs(z, bound)?.len()
                };
                Ok((n != 1).then(|| {
                    format!(
                        "competitor {} has {n} morphism classes {} the candidate",
                        describe_equ(z),
                        if terminal { "into" } else { "out of" }
                    )
                }))
            })
        }
        LimitKind::Product | LimitKind::Coproduct => {
            let LimitArgs::Objects([a, b]) = args else {
                return Err(bad_args());
            };
            if cone.legs.len() != 2 {
                return Err(bad_args());
            }
            let product = cone.kind == LimitKind::Product;
            let (l1, l2) = (&cone.legs[0], &cone.legs[1]);
            let problem = if product {
                leg_problem(l1, obj, a, "first projection")
                    .or_else(|| leg_problem(l2, obj, b, "second projection"))
            } else {
                leg_problem(l1, a, obj, "first injection")
                    .or_else(|| leg_problem(l2, b, obj, "second injection"))
            };
            if let Some(p) = problem {
                return fail(p);
            }
            run_universe(&universe, cfg, |z| {
                let name = describe_equ(z);
                if product {
                    let images = z
                        .homs(obj, bound)?
                        .into_iter()
                        .map(|h| {
                            let k = (
                                equ_class_key(a, &compose(&h.rep, &l1.rep)),
                                equ_class_key(b, &compose(&h.rep, &l2.rep)),
                            );
                            (k, rep_desc(&h.rep))
                        })
                        .collect();
                    let (ha, hb) = (z.homs(a, bound)?, z.homs(b, bound)?);
                    let targets = ha
                        .iter()
                        .flat_map(|f| hb.iter().map(move |g| (f, g)))
                        .map(|(f, g)| {
                            (
                                (equ_class_key(a, &f.rep), equ_class_key(b, &g.rep)),
                                format!("the pair {:?}, {:?}", f.rep, g.rep),
                            )
                        })
                        .collect();
                    Ok(bijection(&name, images, targets))
                } else {
                    let images = obj
                        .homs(z, bound)?
                        .into_iter()
                        .map(|h| {
                            let k = (
                                equ_class_key(z, &compose(&l1.rep, &h.rep)),
                                equ_class_key(z, &compose(&l2.rep, &h.rep)),
                            );
                            (k, rep_desc(&h.rep))
                        })
                        .collect();
                    let (ha, hb) = (a.homs(z, bound)?, b.homs(z, bound)?);
                    let targets = ha
                        .iter()
                        .flat_map(|f| hb.iter().map(move |g| (f, g)))
                        .map(|(f, g)| {
                            (
                                (equ_class_key(z, &f.rep), equ_class_key(z, &g.rep)),
                                format!("the pair {:?}, {:?}", f.rep, g.rep),
                            )
                        })
                        .collect();
                    Ok(bijection(&name, images, targets))
                }
            })
        }
        LimitKind::Equalizer | LimitKind::Coequalizer => {
            let LimitArgs::Parallel(f, g) = args else {
                return Err(bad_args());
            };
            if cone.legs.len() != 1 || f.dom != g.dom || f.cod != g.cod {
                return Err(bad_args());
            }
            let (x, y) = (&f.dom, &f.cod);
            let leg = &cone.legs[0];
            if cone.kind == LimitKind::Equalizer {
                if let Some(p) = leg_problem(leg, obj, x, "inclusion") {
                    return fail(p);
                }
                if equ_class_key(y, &compose(&leg.rep, &f.rep))
                    != equ_class_key(y, &compose(&leg.rep, &g.rep))
                {
                    return fail("the inclusion does not equalize the pair".into());
                }
                run_universe(&universe, cfg, |z| {
                    let images = z
                        .homs(obj, bound)?
                        .into_iter()
                        .map(|h| {
                            (
                                equ_class_key(x, &compose(&h.rep, &leg.rep)),
                                rep_desc(&h.rep),
                            )
                        })
                        .collect();
                    let targets = z
                        .homs(x, bound)?
                        .into_iter()
                        .filter(|k| {
                            equ_class_key(y, &compose(&k.rep, &f.rep))
                                == equ_class_key(y, &compose(&k.rep, &g.rep))
                        })
                        .map(|k| (equ_class_key(x, &k.rep), rep_desc(&k.rep)))
                        .collect();
                    Ok(bijection(&describe_equ(z), images, targets))
                })
            } else {
                if let Some(p) = leg_problem(leg, y, obj, "quotient") {
                    return fail(p);
                }
                if equ_class_key(obj, &compose(&f.rep, &leg.rep))
                    != equ_class_key(obj, &compose(&g.rep, &leg.rep))
                {
                    return fail("the quotient does not coequalize the pair".into());
                }
                run_universe(&universe, cfg, |z| {
                    let images = obj
                        .homs(z, bound)?
                        .into_iter()
                        .map(|h| {
                            (
                                equ_class_key(z, &compose(&leg.rep, &h.rep)),
                                rep_desc(&h.rep),
                            )
                        })
                        .collect();
                    let targets = y
                        .homs(z, bound)?
                        .into_iter()
                        .filter(|k| {
                            equ_class_key(z, &compose(&f.rep, &k.rep))
                                == equ_class_key(z, &compose(&g.rep, &k.rep))
                        })
                        .map(|k| (equ_class_key(z, &k.rep), rep_desc(&k.rep)))
                        .collect();
                    Ok(bijection(&describe_equ(z), images, targets))
                })
            }
        }
    }
}

/// `[h] ↦ [ev ∘ (h × 1)]` is a bijection `hom(Z, Y^X) → hom(Z × X, Y)` for
/// every competitor `Z`.
pub fn verify_pequ_exponential(
    x: &PEquObj,
    y: &PEquObj,
    exp: &PExponential,
    universe: &[PEquObj],
    cfg: &SweepConfig,
) -> Result<Verdict> {
    let bound = cfg.bound;
    if exp.product != exp.object.product(x)? {
        return Ok(Verdict::fail(
            cfg.max_carrier,
            0,
            "evaluation domain is not Y^X × X".into(),
        ));
    }
    if let Err(e) = PMorph::new(exp.product.clone(), y.clone(), exp.eval.rep.clone()) {
        return Ok(Verdict::fail(
            cfg.max_carrier,
            0,
            format!("evaluation is not a morphism: {e}"),
        ));
    }
    let n = x.len();
    run_universe(universe, cfg, |z| {
        let zx = z.product(x)?;
        let images = z
            .homs(&exp.object, bound)?
            .into_iter()
            .map(|h| {
                let m: Vec<usize> = (0..zx.len())
                    .map(|k| exp.eval.rep[h.rep[k / n] * n + k % n])
                    .collect();
                (pequ_class_key(&zx, y, &m), rep_desc(&h.rep))
            })
            .collect();
        let targets = zx
            .homs(y, bound)?
            .into_iter()
            .map(|f| (pequ_class_key(&zx, y, &f.rep), rep_desc(&f.rep)))
            .collect();
        Ok(bijection(&describe_pequ(z), images, targets))
    })
}

/// The exponential of V-categories against competitors `Z`: VFunctors
/// `Z → Y^X` correspond to VFunctors `Z × X → Y` through evaluation.
pub fn verify_vcat_exponential(
    x: &VCatObj,
    y: &VCatObj,
    exp: &Exponential,
    universe: &[VCatObj],
    cfg: &SweepConfig,
) -> Result<Verdict> {
    let bound = cfg.bound;
    if !exp.product.is_vfunctor(y, &exp.eval.map) {
        return Ok(Verdict::fail(
            cfg.max_carrier,
            0,
            "evaluation is not a VFunctor".into(),
        ));
    }
    let n = x.len();
    let none = |_: usize, _: usize, _: usize, _: usize| true;
    run_universe(universe, cfg, |z| {
        let zx = z.product(x)?;
        let images = base_maps(
            &Base::VCat(z.clone()),
            &Base::VCat(exp.object.clone()),
            &none,
            bound,
        )?
        .into_iter()
        .map(|h| {
            let m: Vec<usize> = (0..zx.len())
                .map(|k| exp.eval.map[h[k / n] * n + k % n])
                .collect();
            (m, rep_desc(&h))
        })
        .collect();
        let targets = base_maps(&Base::VCat(zx), &Base::VCat(y.clone()), &none, bound)?
            .into_iter()
            .map(|f| (f.clone(), rep_desc(&f)))
            .collect();
        Ok(bijection(&z.to_string(), images, targets))
    })
}

/// Exponential of assemblies: tracked maps `Z → C` correspond to tracked
/// maps `Z × A → B` through evaluation.
pub fn verify_assm_exponential(
    x: &Assembly,
    y: &Assembly,
    exp: &AssmExponential,
    universe: &[Assembly],
    cfg: &SweepConfig,
) -> Result<Verdict> {
    let bound = cfg.bound;
    let (prod, ev, _) = exp.eval(x)?;
    if !prod.homs(y, bound)?.contains(&ev) {
        return Ok(Verdict::fail(
            cfg.max_carrier,
            0,
            "evaluation is not tracked".into(),
        ));
    }
    let n = x.len();
    run_universe(universe, cfg, |z| {
        let zx = z.product(x)?;
        let images = z
            .homs(&exp.object, bound)?
            .into_iter()
            .map(|h| {
                let m: Vec<usize> = (0..zx.len()).map(|k| ev[h[k / n] * n + k % n]).collect();
                (m, rep_desc(&h))
            })
            .collect();
        let targets = zx
            .homs(y, bound)?
            .into_iter()
            .map(|f| (f.clone(), rep_desc(&f)))
            .collect();
        Ok(bijection(&describe_assm(z), images, targets))
    })
}

/// Every morphism from `x` into a modest competitor factors uniquely
/// through `unit: x → refl`.
pub fn verify_modest_reflection(
    x: &Assembly,
    refl: &Assembly,
    unit: &[usize],
    universe: &[Assembly],
    cfg: &SweepConfig,
) -> Result<Verdict> {
    let bound = cfg.bound;
    if !refl.is_modest() {
        return Ok(Verdict::fail(
            cfg.max_carrier,
            0,
            "reflection is not modest".into(),
        ));
    }
    if !x.homs(refl, bound)?.iter().any(|f| f == unit) {
        return Ok(Verdict::fail(
            cfg.max_carrier,
            0,
            "unit is not tracked".into(),
        ));
    }
    let modest: Vec<&Assembly> = universe.iter().filter(|m| m.is_modest()).collect();
    run_universe(&modest, cfg, |m| {
        let images = refl
            .homs(m, bound)?
            .into_iter()
            .map(|h| (compose(unit, &h), rep_desc(&h)))
            .collect();
        let targets = x
            .homs(m, bound)?
            .into_iter()
            .map(|f| (f.clone(), rep_desc(&f)))
            .collect();
        Ok(bijection(&describe_assm(m), images, targets))
    })
}

/// The subobject is the equalizer of its cofork: morphisms into it
/// correspond to morphisms into `x` equalized by `u` and `v`.
pub fn verify_assm_subobject(
    x: &Assembly,
    sub: &RegularSubobject,
    universe: &[Assembly],
    cfg: &SweepConfig,
) -> Result<Verdict> {
    let bound = cfg.bound;
    let c = &sub.cofork;
    let out_of_x = x.homs(&c.target, bound)?;
    if !out_of_x.contains(&c.u) || !out_of_x.contains(&c.v) {
        return Ok(Verdict::fail(
            cfg.max_carrier,
            0,
            "cofork maps are not tracked".into(),
        ));
    }
    if !sub.object.homs(x, bound)?.contains(&sub.subset) {
        return Ok(Verdict::fail(
            cfg.max_carrier,
            0,
            "inclusion is not tracked".into(),
        ));
    }
    if compose(&sub.subset, &c.u) != compose(&sub.subset, &c.v) {
        return Ok(Verdict::fail(
            cfg.max_carrier,
            0,
            "inclusion does not equalize the cofork".into(),
        ));
    }
    run_universe(universe, cfg, |t| {
        let images = t
            .homs(&sub.object, bound)?
            .into_iter()
            .map(|h| (compose(&h, &sub.subset), rep_desc(&h)))
            .collect();
        let targets = t
            .homs(x, bound)?
            .into_iter()
            .filter(|k| compose(k, &c.u) == compose(k, &c.v))
            .map(|k| (k.clone(), rep_desc(&k)))
            .collect();
        Ok(bijection(&describe_assm(t), images, targets))
    })
}

/// `R` is bijective on hom-classes `hom(p, q) → hom(Rp, Rq)`.
pub fn verify_r_full_faithful(p: &PEquObj, q: &PEquObj, cfg: &SweepConfig) -> Result<Verdict> {
    let (rp, rq) = (functor_r(p), functor_r(q));
    let images = p
        .homs(q, cfg.bound)?
        .into_iter()
        .map(|f| {
            let rf = functor_r_morph(&f);
            (equ_class_key(&rq, &rf.rep), rep_desc(&f.rep))
        })
        .collect();
    let targets = rp
        .homs(&rq, cfg.bound)?
        .into_iter()
        .map(|g| (equ_class_key(&rq, &g.rep), rep_desc(&g.rep)))
        .collect();
    let cert = bijection(
        &format!("pair {} → {}", describe_pequ(p), describe_pequ(q)),
        images,
        targets,
    );
    Ok(match cert {
        None => Verdict::pass(cfg.max_carrier, 1),
        Some(c) => Verdict::fail(cfg.max_carrier, 1, c),
    })
}

/// `reflected` with `unit: X0 → reflected` is a reflection of the span `p`
/// into equilogical objects: for each competitor `Y`, morphisms
/// `reflected → Y` correspond through the unit to exact-completion
/// morphisms `p → E_Y`. The latter are computed directly: VFunctors
/// `f: X0 → Y` sending each `(r1 e, r2 e)` to a related pair, identified
/// when pointwise related.
pub fn verify_reflectivity(
    p: &PseudoEqRel,
    reflected: &EquObj,
    unit: &[usize],
    universe: &[EquObj],
    cfg: &SweepConfig,
) -> Result<Verdict> {
    let bound = cfg.bound;
    let x0 = Base::VCat(p.x0.clone());
    if reflected.base().kind() != x0.kind() {
        return Err(EquilogError::BaseMismatch {
            expected: x0.kind().to_string(),
            found: reflected.kind().to_string(),
        });
    }
    let pairs: Vec<(usize, usize)> = (0..p.x1.len()).map(|e| (p.r1[e], p.r2[e])).collect();
    let kind = reflected.kind();
    let comp: Vec<&EquObj> = universe.iter().filter(|y| y.kind() == kind).collect();
    run_universe(&comp, cfg, |y| {
        let none = |_: usize, _: usize, _: usize, _: usize| true;
        let images = reflected
            .homs(y, bound)?
            .into_iter()
            .map(|h| (equ_class_key(y, &compose(unit, &h.rep)), rep_desc(&h.rep)))
            .collect();
        let mut seen = HashSet::new();
        let mut targets = Vec::new();
        for f in base_maps(&x0, y.base(), &none, bound)? {
            if pairs.iter().all(|&(a, b)| y.related(f[a], f[b])) {
                let k = equ_class_key(y, &f);
                if seen.insert(k.clone()) {
                    targets.push((k, rep_desc(&f)));
                }
            }
        }
        Ok(bijection(&describe_equ(y), images, targets))
    })
}
