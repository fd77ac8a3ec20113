//! Acceptance sweep: one PASS/FAIL line per criterion, exact arithmetic
//! throughout. Expected values come from brute-force computations written
//! here, independent of the constructions under test.

use std::collections::{BTreeSet, HashSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use equilog::assembly::{
    assm_exponential, assm_isomorphism, mdst_morph_to_pequ, mdst_to_pequ, modest_reflection,
    pequ_morph_to_mdst, pequ_to_mdst, regular_subobjects, tracks,
};
use equilog::completion::{
    equ_per_roundtrip, per_as_kernel_pair, per_to_equ, reflect_to_equ, reflect_to_equ_with,
    span_product, triple_embed, triple_morphisms, verify_per,
};
use equilog::equ::{classify_mono_epi, find_isomorphism, limit_colimit, LimitArgs, LimitCone};
use equilog::oracle::{
    adjunction_universes, assembly_universe, condition_suite, enumerate_morphclasses,
    equ_class_key, equ_universe, pequ_class_key, pequ_universe, random_equ, random_metric,
    random_topology, random_vcat, vcat_structures, vcat_universe, verify_adjunction,
    verify_assm_subobject, verify_modest_reflection, verify_pequ_exponential,
    verify_r_full_faithful, verify_reflectivity, verify_universal_property,
};
use equilog::pequ::{functor_r, hat_pequ, pequ_exponential};
use equilog::quantale::{check_exp_condition, verify_quantale};
use equilog::relation::all_partitions;
use equilog::spaces::{app_to_met, met_to_app, ord_to_top, top_to_app, top_to_ord};
use equilog::vcat::{default_names, quotient_closure, vcat_exponential};
use equilog::{
    Assembly, Base, BaseKind, EquObj, FinTop, LimitKind, MorphClass, PEquObj, PseudoEqRel, QValue,
    Quantale, QuantaleOps, SweepConfig, Transfer, VCatObj, DEFAULT_SEARCH_BOUND,
};

const B: u128 = DEFAULT_SEARCH_BOUND;

type Outcome = Result<String, String>;

fn lib<T>(r: equilog::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn cfg(max_carrier: usize) -> SweepConfig {
    SweepConfig::with_max_carrier(max_carrier).expect("positive bound")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn verdict(v: equilog::Verdict, what: impl FnOnce() -> String) -> Result<usize, String> {
    if v.passed {
        Ok(v.checked)
    } else {
        Err(format!("{}: {v}", what()))
    }
}

// ---------------------------------------------------------------- 1

fn criterion_1() -> Outcome {
    let mut lines = Vec::new();
    for q in [
        Quantale::Two,
        Quantale::Diamond,
        Quantale::PlusReversed,
        Quantale::MaxReversed,
    ] {
        let probe = q.carrier().unwrap_or_else(|| q.default_grid());
        let report = verify_quantale(&q, &probe);
        ensure(report.all_passed(), || format!("{q}: {report:?}"))?;
        ensure(check_exp_condition(&q, &probe), || {
            format!("{q}: exponentiability condition fails")
        })?;
        lines.push(format!("{q} on {} values", probe.len()));
    }
    Ok(lines.join(", "))
}

// ---------------------------------------------------------------- 2

/// Join over all block paths of length at most `|X|` of the tensor of the
/// pushed-forward entries, with the empty path contributing `k`.
fn path_join(x: &VCatObj, p: &[usize], m: usize) -> Vec<QValue> {
    let q = x.quantale();
    let n = x.len();
    let mut push = vec![q.bottom(); m * m];
    for i in 0..n {
        for j in 0..n {
            push[p[i] * m + p[j]] = q.join(push[p[i] * m + p[j]], x.get(i, j));
        }
    }
    let mut out = vec![q.bottom(); m * m];
    for s in 0..m {
        out[s * m + s] = q.unit();
        let mut stack = vec![(s, q.unit(), 0usize)];
        while let Some((c, v, len)) = stack.pop() {
            if len == n {
                continue;
            }
            for next in 0..m {
                let w = q.tensor(v, push[c * m + next]);
                out[s * m + next] = q.join(out[s * m + next], w);
                stack.push((next, w, len + 1));
            }
        }
    }
    out
}

fn closure_agrees(x: &VCatObj, p: &[usize], m: usize) -> Result<(), String> {
    let got = lib(quotient_closure(x, p, m))?;
    let want = path_join(x, p, m);
    ensure(got.values() == want.as_slice(), || {
        format!(
            "closure of {x} along {p:?}: got {:?}, brute force {:?}",
            got.values(),
            want
        )
    })
}

fn criterion_2() -> Outcome {
    let mut count = 0;
    let pr = Quantale::PlusReversed;
    let exhaustive: Vec<(Quantale, usize, Vec<QValue>)> = vec![
        (Quantale::Two, 4, Quantale::Two.carrier().unwrap()),
        (
            pr,
            3,
            vec![QValue::num(0), QValue::num(1), QValue::num(2), QValue::INF],
        ),
        (pr, 4, vec![QValue::num(0), QValue::num(1), QValue::INF]),
    ];
    for (q, max_n, values) in exhaustive {
        for n in 0..=max_n {
            let structures = lib(vcat_structures(q, n, &values, B))?;
            let parts = all_partitions(n);
            let results: Vec<Result<usize, String>> = structures
                .par_iter()
                .map(|x| {
                    for p in &parts {
                        closure_agrees(x, p.labels(), p.num_blocks())?;
                    }
                    Ok(parts.len())
                })
                .collect();
            for r in results {
                count += r?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let metric_values = vec![
        QValue::num(0),
        QValue::ratio(1, 2),
        QValue::num(1),
        QValue::ratio(3, 2),
        QValue::num(2),
        QValue::num(5),
        QValue::INF,
    ];
    for (q, values) in [
        (Quantale::Two, Quantale::Two.carrier().unwrap()),
        (pr, metric_values),
    ] {
        for _ in 0..200 {
            let n = rng.gen_range(1..=4);
            let entries: Vec<QValue> = (0..n * n)
                .map(|_| values[rng.gen_range(0..values.len())])
                .collect();
            let raw = VCatObj::from_fn(q, default_names(n), |i, j| {
                if i == j {
                    q.top()
                } else {
                    entries[i * n + j]
                }
            });
            let id: Vec<usize> = (0..n).collect();
            let closed = path_join(&raw, &id, n);
            let x = VCatObj::from_fn(q, default_names(n), |i, j| closed[i * n + j]);
            ensure(x.is_valid(), || {
                format!("brute-force closure of {raw} is not a structure")
            })?;
            let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
            let part = equilog::Partition::from_labels(&labels);
            closure_agrees(&raw, part.labels(), part.num_blocks())?;
            closure_agrees(&x, part.labels(), part.num_blocks())?;
            count += 2;
        }
    }
    Ok(format!("{count} instances"))
}

// ---------------------------------------------------------------- 3

fn check_cone(
    kind: LimitKind,
    args: LimitArgs<'_>,
    universe: &[EquObj],
    c: &SweepConfig,
) -> Result<usize, String> {
    let cone: LimitCone = lib(limit_colimit(kind, args.clone()))?;
    let v = lib(verify_universal_property(&cone, args, universe, c))?;
    verdict(v, || format!("{kind:?}"))
}

fn ump_sweep(objects: &[EquObj], universe: &[EquObj], c: &SweepConfig) -> Result<usize, String> {
    let kind = objects[0].kind();
    let mut checked = 0;
    checked += check_cone(LimitKind::Terminal, LimitArgs::Kind(kind), universe, c)?;
    checked += check_cone(LimitKind::Initial, LimitArgs::Kind(kind), universe, c)?;
    let pairs: Vec<(&EquObj, &EquObj)> = objects
        .iter()
        .flat_map(|a| objects.iter().map(move |b| (a, b)))
        .collect();
    let results: Vec<Result<usize, String>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let mut n = 0;
            let ab = [a.clone(), b.clone()];
            n += check_cone(LimitKind::Product, LimitArgs::Objects(&ab), universe, c)?;
            n += check_cone(LimitKind::Coproduct, LimitArgs::Objects(&ab), universe, c)?;
            let homs: Vec<MorphClass> = lib(enumerate_morphclasses(a, b, c.bound))?;
            for (i, f) in homs.iter().enumerate() {
                for g in &homs[i..] {
                    n += check_cone(LimitKind::Equalizer, LimitArgs::Parallel(f, g), universe, c)?;
                    n += check_cone(
                        LimitKind::Coequalizer,
                        LimitArgs::Parallel(f, g),
                        universe,
                        c,
                    )?;
                }
            }
            Ok(n)
        })
        .collect();
    for r in results {
        checked += r?;
    }
    Ok(checked)
}

fn criterion_3() -> Outcome {
    let c3 = cfg(3);
    let ord = lib(equ_universe(BaseKind::ORD, &c3))?;
    let ord_checks = ump_sweep(&ord, &ord, &c3)?;

    let c2 = cfg(2);
    let met_competitors = lib(equ_universe(BaseKind::MET, &c2))?;
    let values = vec![QValue::num(0), QValue::num(1), QValue::num(2), QValue::INF];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut met_checks = 0;
    let mut instances = 0;
    while instances < 100 {
        let kind = LimitKind::ALL[instances % LimitKind::ALL.len()];
        let draw = |rng: &mut ChaCha8Rng| {
            let n = rng.gen_range(1..=3);
            random_equ(random_metric(n, &values, rng), rng)
        };
        let a = draw(&mut rng);
        let b = draw(&mut rng);
        let ab = [a.clone(), b.clone()];
        let n = match kind {
            LimitKind::Terminal | LimitKind::Initial => {
                check_cone(kind, LimitArgs::Kind(BaseKind::MET), &met_competitors, &c2)?
            }
            LimitKind::Product | LimitKind::Coproduct => {
                check_cone(kind, LimitArgs::Objects(&ab), &met_competitors, &c2)?
            }
            LimitKind::Equalizer | LimitKind::Coequalizer => {
                let homs = lib(enumerate_morphclasses(&a, &b, B))?;
                if homs.is_empty() {
                    continue;
                }
                let f = &homs[rng.gen_range(0..homs.len())];
                let g = &homs[rng.gen_range(0..homs.len())];
                check_cone(kind, LimitArgs::Parallel(f, g), &met_competitors, &c2)?
            }
        };
        met_checks += n;
        instances += 1;
    }
    Ok(format!(
        "{} Ord objects ({ord_checks} checks), {instances} Met instances against {} competitors ({met_checks} checks)",
        ord.len(),
        met_competitors.len()
    ))
}

// ---------------------------------------------------------------- 4

fn compose_rep(f: &[usize], g: &[usize]) -> Vec<usize> {
    f.iter().map(|&x| g[x]).collect()
}

fn criterion_4() -> Outcome {
    let c3 = cfg(3);
    let u = lib(equ_universe(BaseKind::ORD, &c3))?;
    let n = u.len();
    let homs: Vec<Vec<Vec<MorphClass>>> = u
        .par_iter()
        .map(|a| {
            u.iter()
                .map(|b| enumerate_morphclasses(a, b, B).expect("small hom-set"))
                .collect()
        })
        .collect();
    let results: Vec<Result<usize, String>> = (0..n)
        .into_par_iter()
        .map(|ia| {
            let mut checked = 0;
            for ib in 0..n {
                for f in &homs[ia][ib] {
                    // f cancels on the left against every pair g, h: Z → A
                    let mono = (0..n).all(|iz| {
                        let keys: HashSet<Vec<usize>> = homs[iz][ia]
                            .iter()
                            .map(|g| equ_class_key(&u[ib], &compose_rep(&g.rep, &f.rep)))
                            .collect();
                        keys.len() == homs[iz][ia].len()
                    });
                    // and on the right against every pair g, h: B → Z
                    let epi = (0..n).all(|iz| {
                        let keys: HashSet<Vec<usize>> = homs[ib][iz]
                            .iter()
                            .map(|g| equ_class_key(&u[iz], &compose_rep(&f.rep, &g.rep)))
                            .collect();
                        keys.len() == homs[ib][iz].len()
                    });
                    let got = classify_mono_epi(f);
                    ensure(got.mono == mono && got.epi == epi, || {
                        format!(
                            "{:?} between objects {ia} and {ib}: classified {got:?}, cancellation gives mono {mono}, epi {epi}",
                            f.rep
                        )
                    })?;
                    checked += 1;
                }
            }
            Ok(checked)
        })
        .collect();
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(format!("{total} morphism classes over {n} objects"))
}

// ---------------------------------------------------------------- 5

fn is_equ_morphism(a: &EquObj, b: &EquObj, map: &[usize]) -> bool {
    a.base().is_morphism(b.base(), map)
        && (0..a.len()).all(|i| (0..a.len()).all(|j| !a.related(i, j) || b.related(map[i], map[j])))
}

fn criterion_5() -> Outcome {
    let c4 = cfg(4);
    let separated: Vec<EquObj> = lib(equ_universe(BaseKind::ORD, &c4))?
        .into_iter()
        .filter(|e| e.base().is_separated())
        .collect();
    let results: Vec<Result<(), String>> = separated
        .par_iter()
        .map(|e| {
            let (hat, _) = lib(hat_pequ(e))?;
            let r = functor_r(&hat);
            let (f, g) = lib(find_isomorphism(&r, e, B))?
                .ok_or_else(|| format!("R of the presheaf object is not isomorphic to {e:?}"))?;
            ensure(
                is_equ_morphism(&r, e, &f.rep) && is_equ_morphism(e, &r, &g.rep),
                || "isomorphism legs are not morphisms".into(),
            )?;
            let id_r: Vec<usize> = (0..r.len()).collect();
            let id_e: Vec<usize> = (0..e.len()).collect();
            ensure(
                equ_class_key(&r, &compose_rep(&f.rep, &g.rep)) == equ_class_key(&r, &id_r)
                    && equ_class_key(e, &compose_rep(&g.rep, &f.rep)) == equ_class_key(e, &id_e),
                || "isomorphism legs are not mutually inverse".into(),
            )
        })
        .collect();
    for r in results {
        r?;
    }

    let c3 = cfg(3);
    let pequ = lib(pequ_universe(Quantale::Two, &c3))?;
    let pairs: Vec<(&PEquObj, &PEquObj)> = pequ
        .iter()
        .flat_map(|p| pequ.iter().map(move |q| (p, q)))
        .collect();
    let results: Vec<Result<usize, String>> = pairs
        .par_iter()
        .map(|&(p, q)| {
            verdict(lib(verify_r_full_faithful(p, q, &c3))?, || {
                "R full and faithful".into()
            })
        })
        .collect();
    let mut checked = 0;
    for r in results {
        checked += r?;
    }
    Ok(format!(
        "{} separated objects up to 4 points; {} PEqu pairs ({checked} checks)",
        separated.len(),
        pairs.len()
    ))
}

// ---------------------------------------------------------------- 6

fn criterion_6() -> Outcome {
    let c3 = cfg(3);
    let u = lib(pequ_universe(Quantale::Two, &c3))?;
    let pairs: Vec<(&PEquObj, &PEquObj)> = u
        .iter()
        .flat_map(|p| u.iter().map(move |q| (p, q)))
        .collect();
    let results: Vec<Result<usize, String>> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let exp = lib(pequ_exponential(x, y, B))?;
            verdict(lib(verify_pequ_exponential(x, y, &exp, &u, &c3))?, || {
                "exponential".into()
            })
        })
        .collect();
    let mut checked = 0;
    for r in results {
        checked += r?;
    }
    let chain = VCatObj::chain(2);
    let monotone = (0..4)
        .map(|code| [code & 1, code >> 1])
        .filter(|f| {
            (0..2).all(|i| (0..2).all(|j| !chain.point_le(i, j) || chain.point_le(f[i], f[j])))
        })
        .count();
    let exp = lib(vcat_exponential(&chain, &chain, B))?;
    ensure(monotone == 3 && exp.object.len() == monotone, || {
        format!(
            "2-chain exponential has {} elements, {monotone} monotone maps",
            exp.object.len()
        )
    })?;
    Ok(format!(
        "{} pairs ({checked} checks), 2-chain^2-chain has 3 elements",
        pairs.len()
    ))
}

// ---------------------------------------------------------------- 7

fn criterion_7() -> Outcome {
    let c3 = cfg(3);
    let modest = lib(assembly_universe(Quantale::Two, 3, true, &c3))?;
    let results: Vec<Result<(), String>> = modest
        .par_iter()
        .map(|a| {
            let back = pequ_to_mdst(&lib(mdst_to_pequ(a))?);
            ensure(lib(assm_isomorphism(a, &back, B))?.is_some(), || {
                format!("modest set {a:?} does not survive the round trip")
            })
        })
        .collect();
    for r in results {
        r?;
    }
    let pequ = lib(pequ_universe(Quantale::Two, &c3))?;
    for p in &pequ {
        let back = lib(mdst_to_pequ(&pequ_to_mdst(p)))?;
        let pairs =
            |x: &PEquObj| -> BTreeSet<(usize, usize)> { x.per().pairs().into_iter().collect() };
        ensure(back.base() == p.base() && pairs(&back) == pairs(p), || {
            format!("{p:?} does not survive the round trip")
        })?;
    }

    // morphisms: every realizer of a map lands in one class, classes biject
    let small: Vec<&Assembly> = modest.iter().filter(|a| a.len() <= 2).collect();
    let pairs: Vec<(&Assembly, &Assembly)> = small
        .iter()
        .flat_map(|&a| small.iter().map(move |&b| (a, b)))
        .collect();
    let results: Vec<Result<usize, String>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let (pa, pb) = (lib(mdst_to_pequ(a))?, lib(mdst_to_pequ(b))?);
            let maps = lib(a.morphisms_to(b, B))?;
            let realizers = lib(a.base().vfunctors_to(b.base(), B))?;
            // elements of A correspond to the classes they realize
            let class_of = |x: &Assembly, p: &PEquObj, i: usize| {
                p.per().block(x.realizers(i)[0]).expect("realized")
            };
            let mut keys = HashSet::new();
            for f in &maps {
                let mut classes = HashSet::new();
                for g in realizers.iter().filter(|g| tracks(g, f, a, b)) {
                    let pm = lib(mdst_morph_to_pequ(a, b, g))?;
                    classes.insert(pequ_class_key(&pa, &pb, &pm.rep));
                    let back = pequ_morph_to_mdst(&pm);
                    ensure(
                        (0..a.len()).all(|i| back[class_of(a, &pa, i)] == class_of(b, &pb, f[i])),
                        || format!("{f:?} is not recovered"),
                    )?;
                }
                ensure(classes.len() == 1, || {
                    format!("{f:?} has realizers in {} classes", classes.len())
                })?;
                keys.extend(classes);
            }
            let pclasses = lib(enumerate_morphclasses(&pa, &pb, B))?;
            ensure(
                keys.len() == maps.len() && pclasses.len() == maps.len(),
                || {
                    format!(
                        "{} maps, {} distinct classes, {} PEqu classes",
                        maps.len(),
                        keys.len(),
                        pclasses.len()
                    )
                },
            )?;
            Ok(maps.len())
        })
        .collect();
    let mut transported = 0;
    for r in results {
        transported += r?;
    }

    // exponentials of modest sets by arbitrary assemblies
    let c2 = cfg(2);
    let all2 = lib(assembly_universe(Quantale::Two, 2, false, &c2))?;
    let modest2: Vec<&Assembly> = all2.iter().filter(|a| a.is_modest()).collect();
    let exp_pairs: Vec<(&Assembly, &Assembly)> = all2
        .iter()
        .flat_map(|x| modest2.iter().map(move |&y| (x, y)))
        .collect();
    let results: Vec<Result<(), String>> = exp_pairs
        .par_iter()
        .map(|&(x, y)| {
            let e = lib(assm_exponential(x, y, B))?;
            ensure(e.object.is_modest(), || {
                format!("exponential of {y:?} by {x:?} is not modest")
            })
        })
        .collect();
    for r in results {
        r?;
    }

    // modest reflection
    let all3 = lib(assembly_universe(Quantale::Two, 3, false, &c3))?;
    let competitors: Vec<Assembly> = lib(assembly_universe(Quantale::Two, 2, true, &c3))?;
    let results: Vec<Result<usize, String>> = all3
        .par_iter()
        .map(|x| {
            let (refl, unit) = modest_reflection(x);
            ensure(refl.is_modest(), || "reflection is not modest".into())?;
            verdict(
                lib(verify_modest_reflection(x, &refl, &unit, &competitors, &c3))?,
                || "modest reflection".into(),
            )
        })
        .collect();
    let mut refl_checks = 0;
    for r in results {
        refl_checks += r?;
    }

    // regular subobjects
    let subs_universe = lib(assembly_universe(Quantale::Two, 4, false, &c2))?;
    let results: Vec<Result<usize, String>> = subs_universe
        .par_iter()
        .map(|x| {
            let subs = lib(regular_subobjects(x))?;
            let distinct: HashSet<&Vec<usize>> = subs.iter().map(|s| &s.subset).collect();
            ensure(
                subs.len() == 1 << x.len() && distinct.len() == subs.len(),
                || {
                    format!(
                        "{} regular subobjects of an assembly with {} elements",
                        subs.len(),
                        x.len()
                    )
                },
            )?;
            let mut n = 0;
            for s in &subs {
                n += verdict(lib(verify_assm_subobject(x, s, &all2, &c2))?, || {
                    "regular subobject".into()
                })?;
            }
            Ok(n)
        })
        .collect();
    let mut sub_checks = 0;
    for r in results {
        sub_checks += r?;
    }
    Ok(format!(
        "{} modest sets, {} PEqu objects, {transported} transported maps, {} exponentials, {} reflections ({refl_checks} checks), {} assemblies' subobjects ({sub_checks} checks)",
        modest.len(),
        pequ.len(),
        exp_pairs.len(),
        all3.len(),
        subs_universe.len()
    ))
}

// ---------------------------------------------------------------- 8

/// `R ⊆ X0²` with the structure induced from `X0 × X0`, optionally doubled.
fn relation_span(x0: &VCatObj, rel: &[(usize, usize)], copies: usize) -> PseudoEqRel {
    let q = x0.quantale();
    let k = rel.len();
    let x1 = VCatObj::from_fn(q, default_names(k * copies), |i, j| {
        if i / k != j / k {
            return q.bottom();
        }
        let ((a, b), (c, d)) = (rel[i % k], rel[j % k]);
        q.meet(x0.get(a, c), x0.get(b, d))
    });
    let r1 = (0..k * copies).map(|e| rel[e % k].0).collect();
    let r2 = (0..k * copies).map(|e| rel[e % k].1).collect();
    PseudoEqRel::new(x1, x0.clone(), r1, r2).expect("projections are functors")
}

fn is_equivalence(n: usize, rel: &HashSet<(usize, usize)>) -> bool {
    (0..n).all(|a| rel.contains(&(a, a)))
        && rel.iter().all(|&(a, b)| rel.contains(&(b, a)))
        && rel
            .iter()
            .all(|&(a, b)| (0..n).all(|c| !rel.contains(&(b, c)) || rel.contains(&(a, c))))
}

/// Witness searches on doubled spans have large raw spaces that the
/// pairwise pruning cuts down at once.
const SPAN_BOUND: u128 = u128::MAX;

fn criterion_8() -> Outcome {
    let c3 = SweepConfig {
        bound: SPAN_BOUND,
        ..cfg(3)
    };
    let bases = lib(vcat_universe(Quantale::Two, &c3))?;
    let mut regmono = Vec::new();
    let mut doubled = Vec::new();
    let mut relations = 0;
    for x0 in &bases {
        let n = x0.len();
        let all: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        for mask in 0u32..1 << all.len() {
            let rel: Vec<(usize, usize)> = (0..all.len())
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| all[i])
                .collect();
            let set: HashSet<(usize, usize)> = rel.iter().copied().collect();
            let span = relation_span(x0, &rel, 1);
            let report = lib(verify_per(&span, SPAN_BOUND))?;
            ensure(report.verified() == is_equivalence(n, &set), || {
                format!("witnesses for {rel:?} on {x0}: {report:?}")
            })?;
            ensure(report.regmono, || format!("{rel:?} on {x0} is not regular"))?;
            relations += 1;
            if report.verified() {
                doubled.push(relation_span(x0, &rel, 2));
                regmono.push(span);
            }
        }
    }

    // round trips in both directions
    for p in &regmono {
        let e = lib(per_to_equ(p))?;
        let back = lib(equ_per_roundtrip(&e))?;
        ensure(
            back.x0 == p.x0 && back.image_pairs() == p.image_pairs(),
            || format!("round trip changes the span on {}", p.x0),
        )?;
        let iso: Vec<usize> = (0..p.x1.len())
            .map(|i| {
                (0..back.x1.len())
                    .find(|&j| (back.r1[j], back.r2[j]) == (p.r1[i], p.r2[i]))
                    .expect("same image")
            })
            .collect();
        ensure(p.x1.is_iso_via(&back.x1, &iso), || {
            "round trip is not an isomorphism of spans".into()
        })?;

        let cert = lib(per_as_kernel_pair(p))?;
        let quot = &cert.quotient;
        ensure(
            quot.dom == p.x0 && quot.dom.is_vfunctor(&quot.cod, &quot.map),
            || "quotient is not a functor".into(),
        )?;
        let kernel: BTreeSet<(usize, usize)> = (0..cert.kernel.x1.len())
            .map(|e| (cert.kernel.r1[e], cert.kernel.r2[e]))
            .collect();
        let want: BTreeSet<(usize, usize)> = (0..p.x0.len())
            .flat_map(|a| (0..p.x0.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| quot.map[a] == quot.map[b])
            .collect();
        ensure(kernel == want, || {
            "kernel is not the kernel pair of the quotient".into()
        })?;
        ensure(
            p.x1.is_iso_via(&cert.kernel.x1, &cert.iso)
                && (0..p.x1.len()).all(|e| {
                    cert.kernel.r1[cert.iso[e]] == p.r1[e] && cert.kernel.r2[cert.iso[e]] == p.r2[e]
                }),
            || "kernel pair certificate does not commute with the legs".into(),
        )?;
    }
    let equ = lib(equ_universe(BaseKind::ORD, &c3))?;
    for e in &equ {
        let back = lib(per_to_equ(&lib(equ_per_roundtrip(e))?))?;
        ensure(&back == e, || format!("round trip changes {e:?}"))?;
    }

    // reflectivity
    let spans: Vec<&PseudoEqRel> = regmono.iter().chain(doubled.iter()).collect();
    let results: Vec<Result<usize, String>> = spans
        .par_iter()
        .map(|p| {
            let (refl, unit) = lib(reflect_to_equ(p, SPAN_BOUND))?;
            verdict(
                lib(verify_reflectivity(p, &refl, &unit, &equ, &c3))?,
                || "reflectivity".into(),
            )
        })
        .collect();
    let mut refl_checks = 0;
    for r in results {
        refl_checks += r?;
    }

    // binary products
    let witnessed: Vec<(&PseudoEqRel, equilog::Witnesses, EquObj)> = spans
        .iter()
        .map(|&p| {
            let w = verify_per(p, SPAN_BOUND)
                .expect("small")
                .witnesses()
                .expect("verified");
            let (e, _) = reflect_to_equ(p, SPAN_BOUND).expect("verified");
            (p, w, e)
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..witnessed.len())
        .flat_map(|i| (0..witnessed.len()).map(move |j| (i, j)))
        .collect();
    let results: Vec<Result<(), String>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (p, wp, ep) = &witnessed[i];
            let (q, wq, eq) = &witnessed[j];
            let (pq, w) = lib(span_product(p, wp, q, wq))?;
            let (reflected, _) = lib(reflect_to_equ_with(&pq, &w))?;
            let ab = [ep.clone(), eq.clone()];
            let product = lib(limit_colimit(LimitKind::Product, LimitArgs::Objects(&ab)))?.object;
            let id: Vec<usize> = (0..product.len()).collect();
            let same = reflected.base().is_iso_via(product.base(), &id)
                && reflected.equiv() == product.equiv();
            ensure(
                same || lib(find_isomorphism(&reflected, &product, B))?.is_some(),
                || {
                    format!(
                        "reflection of the product of spans on {} and {} is not the product",
                        p.x0, q.x0
                    )
                },
            )
        })
        .collect();
    for r in results {
        r?;
    }

    // hom-sets of the embedded triples
    let mut triple_pairs = 0;
    for x in &bases {
        let tx = lib(triple_embed(x))?;
        for y in &bases {
            let ty = lib(triple_embed(y))?;
            let got: BTreeSet<Vec<usize>> =
                lib(triple_morphisms(&tx, &ty, B))?.into_iter().collect();
            let monotone: BTreeSet<Vec<usize>> = equilog::search::MapSearch::new(x.len(), y.len())
                .collect()
                .into_iter()
                .filter(|f| {
                    (0..x.len())
                        .all(|i| (0..x.len()).all(|j| !x.point_le(i, j) || y.point_le(f[i], f[j])))
                })
                .collect();
            ensure(got == monotone, || {
                format!(
                    "{} triple morphisms {x} → {y}, {} monotone maps",
                    got.len(),
                    monotone.len()
                )
            })?;
            triple_pairs += 1;
        }
    }
    Ok(format!(
        "{relations} relations, {} equivalence spans, {} doubled spans ({refl_checks} reflectivity checks), {} product pairs, {triple_pairs} triple pairs",
        regmono.len(),
        doubled.len(),
        pairs.len()
    ))
}

// ---------------------------------------------------------------- 9

fn random_base(kind: BaseKind, n: usize, rng: &mut ChaCha8Rng) -> Base {
    let metric_values = [
        QValue::num(0),
        QValue::ratio(1, 2),
        QValue::num(1),
        QValue::num(3),
        QValue::INF,
    ];
    match kind {
        BaseKind::VCat(q) => Base::VCat(random_vcat(q, n, &metric_values, rng)),
        BaseKind::Top => Base::Top(random_topology(n, rng)),
        BaseKind::App => {
            let a = if rng.gen_bool(0.5) {
                met_to_app(&random_metric(n, &metric_values, rng))
            } else {
                top_to_app(&random_topology(n, rng))
            };
            Base::App(a.expect("small carrier"))
        }
    }
}

/// All topologies on `n` points, as families of open sets.
fn all_topologies(n: usize) -> Vec<Vec<u32>> {
    let full = (1u32 << n) - 1;
    let subsets: Vec<u32> = (1..full).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << subsets.len() {
        let mut opens: Vec<u32> = vec![0, full];
        opens.extend(
            (0..subsets.len())
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| subsets[i]),
        );
        opens.sort_unstable();
        opens.dedup();
        let set: HashSet<u32> = opens.iter().copied().collect();
        if opens.iter().all(|&a| {
            opens
                .iter()
                .all(|&b| set.contains(&(a | b)) && set.contains(&(a & b)))
        }) {
            out.push(opens);
        }
    }
    out
}

fn criterion_9() -> Outcome {
    let c3 = cfg(3);
    let mut notes = Vec::new();
    for which in [Transfer::OrdMet, Transfer::OrdTop] {
        let left = which.left_adjoint();
        let (s, t) = lib(adjunction_universes(which, left, &c3))?;
        let v = lib(verify_adjunction(which, left, &s, &t, &c3))?;
        let n = verdict(v, || which.name().to_string())?;
        notes.push(format!("{} {n} checks", which.name()));
    }
    let c4 = cfg(4);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for which in [Transfer::MetApp, Transfer::TopApp] {
        let left = which.left_adjoint();
        let (src, dst) = which.kinds(left);
        let mut n = 0;
        for _ in 0..50 {
            let a = random_equ(random_base(src, rng.gen_range(1..=4), &mut rng), &mut rng);
            let b = random_equ(random_base(dst, rng.gen_range(1..=4), &mut rng), &mut rng);
            n += verdict(
                lib(verify_adjunction(which, left, &[a], &[b], &c4))?,
                || which.name().to_string(),
            )?;
        }
        notes.push(format!("{} {n} checks", which.name()));
    }

    let grids: [(usize, Vec<QValue>); 2] = [
        (
            3,
            vec![QValue::num(0), QValue::num(1), QValue::num(2), QValue::INF],
        ),
        (4, vec![QValue::num(0), QValue::num(1), QValue::INF]),
    ];
    let mut metrics = 0;
    for (max_n, values) in grids {
        for n in 0..=max_n {
            for d in lib(vcat_structures(Quantale::PlusReversed, n, &values, B))? {
                let back = app_to_met(&lib(met_to_app(&d))?);
                ensure(back.values() == d.values(), || {
                    format!("metric {d} is not recovered")
                })?;
                metrics += 1;
            }
        }
    }
    let mut preorders = 0;
    let mut topologies = 0;
    for n in 0..=4 {
        let names = default_names(n);
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|(a, b)| a != b)
            .collect();
        for mask in 0u32..1 << pairs.len() {
            let rel: HashSet<(usize, usize)> = (0..pairs.len())
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| pairs[i])
                .collect();
            let le = |a: usize, b: usize| a == b || rel.contains(&(a, b));
            let transitive =
                (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(le(a, b) && le(b, c)) || le(a, c))));
            if !transitive {
                continue;
            }
            let x = VCatObj::preorder(names.clone(), le);
            ensure(top_to_ord(&ord_to_top(&x)).values() == x.values(), || {
                format!("preorder {x} is not recovered")
            })?;
            preorders += 1;
        }
        for opens in all_topologies(n) {
            let t = lib(FinTop::new(names.clone(), opens))?;
            ensure(ord_to_top(&top_to_ord(&t)).opens() == t.opens(), || {
                format!("topology {:?} is not recovered", t.opens())
            })?;
            topologies += 1;
        }
    }
    notes.push(format!(
        "{metrics} metrics, {preorders} preorders, {topologies} topologies recovered"
    ));
    Ok(notes.join("; "))
}

// ---------------------------------------------------------------- 10

fn criterion_10() -> Outcome {
    let report = lib(condition_suite(BaseKind::ORD, &cfg(3)))?;
    let summary: Vec<String> = report
        .results
        .iter()
        .map(|r| format!("{} {}", r.label, r.status))
        .collect();
    ensure(report.passed(), || format!("{report}"))?;
    Ok(summary.join(", "))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("quantale laws", criterion_1),
        ("closure against path joins", criterion_2),
        ("limits and colimits", criterion_3),
        ("monos and epis", criterion_4),
        ("separated objects and R", criterion_5),
        ("partial exponentials", criterion_6),
        ("assemblies and modest sets", criterion_7),
        ("exact completion", criterion_8),
        ("adjunctions between bases", criterion_9),
        ("condition suite", criterion_10),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .and_then(|s| s.parse().ok());
    let mut failed = 0;
    let start = Instant::now();
    for (i, (name, run)) in criteria.iter().enumerate() {
        if only.is_some_and(|k| k != i + 1) {
            continue;
        }
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {failed} failed, total {:.1}s",
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
