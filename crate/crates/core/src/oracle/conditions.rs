//! The six structural conditions on a base category, checked at sweep scale
//! over V-category bases.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::homs::base_maps;
use super::injectivity::injectivity_test;
use super::ump::verify_vcat_exponential;
use super::{vcat_universe, SweepConfig, Verdict};
use crate::base::{Base, BaseKind};
use crate::error::{EquilogError, Result};
use crate::quantale::{check_exp_condition, Quantale, QuantaleOps};
use crate::vcat::{presheaf_embed, separated_reflection, vcat_exponential, VCatObj};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionStatus {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for ConditionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConditionStatus::Pass => "PASS",
            ConditionStatus::Fail => "FAIL",
            ConditionStatus::NotApplicable => "N/A",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionResult {
    pub label: char,
    pub statement: &'static str,
    pub status: ConditionStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub base: String,
    pub bound: usize,
    pub results: Vec<ConditionResult>,
}

impl ConditionReport {
    /// No condition failed.
    pub fn passed(&self) -> bool {
        self.results
            .iter()
            .all(|r| r.status != ConditionStatus::Fail)
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "conditions for {} at bound {}", self.base, self.bound)?;
        for r in &self.results {
            writeln!(
                f,
                "({}) {} {}: {}",
                r.label, r.status, r.statement, r.detail
            )?;
        }
        Ok(())
    }
}

fn from_verdict(label: char, statement: &'static str, v: Verdict) -> ConditionResult {
    ConditionResult {
        label,
        statement,
        status: if v.passed {
            ConditionStatus::Pass
        } else {
            ConditionStatus::Fail
        },
        detail: v.to_string(),
    }
}

fn vfunctors(x: &VCatObj, y: &VCatObj, bound: u128) -> Result<Vec<Vec<usize>>> {
    base_maps(
        &Base::VCat(x.clone()),
        &Base::VCat(y.clone()),
        &|_, _, _, _| true,
        bound,
    )
}

fn first_failure<T: Sync>(
    items: &[T],
    cfg: &SweepConfig,
    check: impl Fn(&T) -> Result<(usize, Option<String>)> + Sync,
) -> Result<Verdict> {
    let clock = cfg.clock();
    let outs: Vec<Result<(usize, Option<String>)>> = items
        .par_iter()
        .map(|t| {
            clock.check("condition sweep")?;
            check(t)
        })
        .collect();
    let mut checked = 0;
    for o in outs {
        let (n, cert) = o?;
        checked += n;
        if let Some(c) = cert {
            return Ok(Verdict::fail(cfg.max_carrier, checked, c));
        }
    }
    Ok(Verdict::pass(cfg.max_carrier, checked))
}

/// `f ≤ g` iff `k ≤ b(f x, g x)` for every `x`.
fn fn_le(q: Quantale, y: &VCatObj, f: &[usize], g: &[usize]) -> bool {
    f.iter().zip(g).all(|(&a, &b)| q.le(q.unit(), y.get(a, b)))
}

fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    f.iter().map(|&y| g[y]).collect()
}

/// Pointwise order on hom-sets, compatible with composition on both sides.
fn condition_a(u: &[VCatObj], cfg: &SweepConfig) -> Result<Verdict> {
    let pairs: Vec<(&VCatObj, &VCatObj)> = u
        .iter()
        .flat_map(|x| u.iter().map(move |y| (x, y)))
        .collect();
    first_failure(&pairs, cfg, |(x, y)| {
        let q = x.quantale();
        let hom = vfunctors(x, y, cfg.bound)?;
        let mut checked = 0;
        for w in u {
            let after = vfunctors(y, w, cfg.bound)?;
            let before = vfunctors(w, x, cfg.bound)?;
            for f in &hom {
                for g in &hom {
                    if !fn_le(q, y, f, g) {
                        continue;
                    }
                    checked += 1;
                    if let Some(h) = after
                        .iter()
                        .find(|h| !fn_le(q, w, &compose(f, h), &compose(g, h)))
                    {
                        return Ok((
                            checked,
                            Some(format!("{f:?} ≤ {g:?} but not after {h:?} into {w}")),
                        ));
                    }
                    if let Some(k) = before
                        .iter()
                        .find(|k| !fn_le(q, y, &compose(k, f), &compose(k, g)))
                    {
                        return Ok((
                            checked,
                            Some(format!("{f:?} ≤ {g:?} but not before {k:?} from {w}")),
                        ));
                    }
                }
            }
        }
        Ok((checked, None))
    })
}

/// Initial morphisms reflect the order between points.
fn condition_b(u: &[VCatObj], cfg: &SweepConfig) -> Result<Verdict> {
    let pairs: Vec<(&VCatObj, &VCatObj)> = u
        .iter()
        .flat_map(|x| u.iter().map(move |y| (x, y)))
        .collect();
    first_failure(&pairs, cfg, |(x, y)| {
        let mut checked = 0;
        for f in vfunctors(x, y, cfg.bound)? {
            if !x.is_initial_map(y, &f) {
                continue;
            }
            for a in 0..x.len() {
                for b in 0..x.len() {
                    checked += 1;
                    if y.point_equiv(f[a], f[b]) && !x.point_equiv(a, b) {
                        return Ok((
                            checked,
                            Some(format!(
                                "initial {f:?} from {x} identifies {} and {}",
                                x.name(a),
                                x.name(b)
                            )),
                        ));
                    }
                }
            }
        }
        Ok((checked, None))
    })
}

/// The presheaf embedding is initial into an injective object, separated
/// when its source is.
fn condition_c(u: &[VCatObj], cfg: &SweepConfig) -> Result<Verdict> {
    first_failure(u, cfg, |x| {
        let (hat, y) = presheaf_embed(x)?;
        if !x.is_initial_map(&hat, &y.map) {
            return Ok((1, Some(format!("embedding of {x} is not initial"))));
        }
        if x.is_separated() && !hat.is_separated() {
            return Ok((
                1,
                Some(format!("presheaf object of separated {x} is not separated")),
            ));
        }
        let v = injectivity_test(&hat, cfg)?;
        Ok((
            1 + v.checked,
            v.certificate
                .map(|c| format!("presheaf object of {x} is not injective: {c}")),
        ))
    })
}

/// Exponentials `Y^X` for injective `X` pass the exponential oracle.
fn condition_d(u: &[VCatObj], cfg: &SweepConfig) -> Result<Verdict> {
    let mut injectives = Vec::new();
    for x in u {
        if injectivity_test(x, cfg)?.passed {
            injectives.push(x);
        }
    }
    let pairs: Vec<(&VCatObj, &VCatObj)> = injectives
        .iter()
        .flat_map(|&x| u.iter().map(move |y| (x, y)))
        .collect();
    first_failure(&pairs, cfg, |(x, y)| {
        let exp = match vcat_exponential(x, y, cfg.bound) {
            Ok(e) => e,
            Err(EquilogError::CandidateRejected(why)) => {
                return Ok((1, Some(format!("no exponential {y}^{x}: {why}"))))
            }
            Err(e) => return Err(e),
        };
        let v = verify_vcat_exponential(x, y, &exp, u, cfg)?;
        Ok((v.checked, v.certificate.map(|c| format!("{y}^{x}: {c}"))))
    })
}

/// The separated reflection of `X × Y` is the product of the reflections,
/// via the comparison map.
fn condition_e(u: &[VCatObj], cfg: &SweepConfig) -> Result<Verdict> {
    let pairs: Vec<(&VCatObj, &VCatObj)> = u
        .iter()
        .flat_map(|x| u.iter().map(move |y| (x, y)))
        .collect();
    first_failure(&pairs, cfg, |(x, y)| {
        let (sx, ex) = separated_reflection(x);
        let (sy, ey) = separated_reflection(y);
        let (sp, ep) = separated_reflection(&x.product(y)?);
        let target = sx.product(&sy)?;
        let m = y.len();
        let mut cmp = vec![usize::MAX; sp.len()];
        for k in 0..x.len() * m {
            let image = ex.map[k / m] * sy.len() + ey.map[k % m];
            let c = ep.map[k];
            if cmp[c] != usize::MAX && cmp[c] != image {
                return Ok((
                    1,
                    Some(format!("comparison map for {x} × {y} is not well defined")),
                ));
            }
            cmp[c] = image;
        }
        let ok = sp.is_iso_via(&target, &cmp);
        Ok((
            1,
            (!ok).then(|| format!("reflection of {x} × {y} is not the product of reflections")),
        ))
    })
}

/// Binary coproducts are disjoint and stable under pullback.
fn condition_f(u: &[VCatObj], cfg: &SweepConfig) -> Result<Verdict> {
    let pairs: Vec<(&VCatObj, &VCatObj)> = u
        .iter()
        .flat_map(|x| u.iter().map(move |y| (x, y)))
        .collect();
    first_failure(&pairs, cfg, |(a, b)| {
        let c = a.coproduct(b)?;
        let n = a.len();
        // Disjoint: nothing in A and B is identified, and no value above ⊥
        // connects the summands.
        let q = c.quantale();
        for i in 0..n {
            for j in n..c.len() {
                if c.get(i, j) != q.bottom() || c.get(j, i) != q.bottom() {
                    return Ok((1, Some(format!("summands of {a} + {b} are connected"))));
                }
            }
        }
        let mut checked = 1;
        for z in u {
            for f in vfunctors(z, &c, cfg.bound)? {
                checked += 1;
                let z1: Vec<usize> = (0..z.len()).filter(|&i| f[i] < n).collect();
                let z2: Vec<usize> = (0..z.len()).filter(|&i| f[i] >= n).collect();
                let pieces = z.restrict(&z1).coproduct(&z.restrict(&z2))?;
                let mut back = z1.clone();
                back.extend(&z2);
                if !pieces.is_iso_via(z, &back) {
                    return Ok((
                        checked,
                        Some(format!(
                            "pulling {a} + {b} back along {f:?} from {z} does not split it"
                        )),
                    ));
                }
            }
        }
        Ok((checked, None))
    })
}

/// Runs (a)–(f) over all structures with carrier at most `max_carrier`.
pub fn condition_suite(kind: BaseKind, cfg: &SweepConfig) -> Result<ConditionReport> {
    let BaseKind::VCat(q) = kind else {
        return Err(EquilogError::Invalid(format!(
            "the condition suite runs over V-category bases, not {kind}"
        )));
    };
    let u = vcat_universe(q, cfg)?;
    let mut results = vec![
        from_verdict('a', "preorder-enriched", condition_a(&u, cfg)?),
        from_verdict(
            'b',
            "initial morphisms reflect ≃ of points",
            condition_b(&u, cfg)?,
        ),
    ];
    if q.is_finite() {
        results.push(from_verdict(
            'c',
            "enough injectives",
            condition_c(&u, cfg)?,
        ));
    } else {
        results.push(ConditionResult {
            label: 'c',
            statement: "enough injectives",
            status: ConditionStatus::NotApplicable,
            detail: "presheaf objects over this quantale are infinite".into(),
        });
    }
    let probe = cfg.values_for(q);
    let exp_ok = check_exp_condition(&q, &probe);
    results.push(if !exp_ok {
        ConditionResult {
            label: 'd',
            statement: "injectives are exponentiable",
            status: ConditionStatus::Fail,
            detail: "quantale exponentiability condition fails on the probe values".into(),
        }
    } else if q.is_finite() {
        let mut r = from_verdict('d', "injectives are exponentiable", condition_d(&u, cfg)?);
        r.detail = format!("quantale condition holds; exponential oracle {}", r.detail);
        r
    } else {
        ConditionResult {
            label: 'd',
            statement: "injectives are exponentiable",
            status: ConditionStatus::NotApplicable,
            detail: "quantale condition holds on the probe values; exponentials are only built over finite quantales"
                .into(),
        }
    });
    results.push(from_verdict(
        'e',
        "separated reflection preserves finite products",
        condition_e(&u, cfg)?,
    ));
    results.push(from_verdict('f', "extensive", condition_f(&u, cfg)?));
    Ok(ConditionReport {
        base: kind.to_string(),
        bound: cfg.max_carrier,
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ord_at_bound_two() {
        let cfg = SweepConfig::with_max_carrier(2).unwrap();
        let r = condition_suite(BaseKind::ORD, &cfg).unwrap();
        assert_eq!(r.results.len(), 6);
        assert!(
            r.results.iter().all(|c| c.status == ConditionStatus::Pass),
            "{r}"
        );
    }

    #[test]
    fn met_marks_presheaves_not_applicable() {
        let cfg = SweepConfig::with_max_carrier(1).unwrap();
        let r = condition_suite(BaseKind::MET, &cfg).unwrap();
        assert_eq!(r.results[2].status, ConditionStatus::NotApplicable);
        assert!(r.passed());
        assert!(condition_suite(BaseKind::Top, &cfg).is_err());
    }
}
