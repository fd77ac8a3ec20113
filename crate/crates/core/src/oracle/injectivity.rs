//! Injectivity with respect to initial morphisms, by exhaustive extension
//! search.

use rayon::prelude::*;

use super::{SweepConfig, Verdict};
use crate::error::Result;
use crate::quantale::QuantaleOps;
use crate::search::MapSearch;
use crate::vcat::{presheaf_embed, VCatObj};

fn vfunctor_pairs<'a>(
    a: &'a VCatObj,
    b: &'a VCatObj,
) -> impl Fn(usize, usize, usize, usize) -> bool + 'a {
    let q = a.quantale();
    move |i, fi, j, fj| q.le(a.get(i, j), b.get(fi, fj)) && q.le(a.get(j, i), b.get(fj, fi))
}

/// An extension `g: Y → Z` of `f: X → Z` along `y: X → Y` with
/// `g(y x) ≃ f(x)` for every `x`, if one exists.
pub fn extends_along(y_obj: &VCatObj, y: &[usize], z: &VCatObj, f: &[usize]) -> Option<Vec<usize>> {
    let mut candidates: Vec<Vec<usize>> = vec![(0..z.len()).collect(); y_obj.len()];
    for (x, &p) in y.iter().enumerate() {
        candidates[p].retain(|&w| z.point_equiv(w, f[x]));
    }
    let ok = vfunctor_pairs(y_obj, z);
    MapSearch::with_candidates(candidates).pairwise(&ok).first()
}

fn describe(x: &VCatObj) -> String {
    x.to_string()
}

/// Sweeps every initial `y: X → Y` with `|X|, |Y| ≤ max_carrier` and every
/// VFunctor `f: X → Z`. Over a finite quantale, the presheaf embedding of
/// `Z` is tried first, since a missing retraction there is the most telling
/// witness.
pub fn injectivity_test(z: &VCatObj, cfg: &SweepConfig) -> Result<Verdict> {
    let bound = cfg.max_carrier;
    if z.quantale().is_finite() {
        let (hat, yz) = presheaf_embed(z)?;
        let id: Vec<usize> = (0..z.len()).collect();
        if extends_along(&hat, &yz.map, z, &id).is_none() {
            return Ok(Verdict::fail(
                bound,
                1,
                format!(
                    "identity of {} does not extend along its embedding into the presheaf object {}",
                    describe(z),
                    describe(&hat)
                ),
            ));
        }
    }
    let ys = super::vcat_universe(z.quantale(), cfg)?;
    let clock = cfg.clock();
    let outcomes: Vec<Result<(usize, Option<String>)>> = ys
        .par_iter()
        .map(|y_obj| {
            clock.check("injectivity sweep")?;
            let mut checked = 0;
            for k in 0..=cfg.max_carrier {
                let maps = MapSearch::new(k, y_obj.len());
                maps.check_bound("initial maps into the test object", cfg.bound)?;
                for y in maps.collect() {
                    let x = VCatObj::from_fn(y_obj.quantale(), crate::vcat::default_names(k), |i, j| {
                        y_obj.get(y[i], y[j])
                    });
                    let fs = MapSearch::new(k, z.len());
                    fs.check_bound("maps into the tested object", cfg.bound)?;
                    let ok = vfunctor_pairs(&x, z);
                    for f in fs.pairwise(&ok).collect() {
                        checked += 1;
                        if extends_along(y_obj, &y, z, &f).is_none() {
                            return Ok((
                                checked,
                                Some(format!(
                                    "f = {f:?} on {} has no extension along the initial map y = {y:?} into {}",
                                    describe(&x),
                                    describe(y_obj)
                                )),
                            ));
                        }
                    }
                }
            }
            Ok((checked, None))
        })
        .collect();
    let mut checked = 1;
    for o in outcomes {
        let (n, cert) = o?;
        checked += n;
        if let Some(c) = cert {
            return Ok(Verdict::fail(bound, checked, c));
        }
    }
    Ok(Verdict::pass(bound, checked))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_injective_antichain_not() {
        let cfg = SweepConfig::default();
        let v = injectivity_test(&VCatObj::chain(2), &cfg).unwrap();
        assert!(v.passed, "{v}");
        let v = injectivity_test(&VCatObj::antichain(2), &cfg).unwrap();
        assert!(!v.passed);
        assert!(v.certificate.unwrap().contains("presheaf object"));
    }

    #[test]
    fn empty_and_diamond() {
        let cfg = SweepConfig::with_max_carrier(2).unwrap();
        assert!(
            !injectivity_test(&VCatObj::empty(crate::Quantale::Two), &cfg)
                .unwrap()
                .passed
        );
        let pt = VCatObj::point(crate::Quantale::Diamond);
        assert!(injectivity_test(&pt, &cfg).unwrap().passed);
    }
}
