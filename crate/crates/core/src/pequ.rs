//! Partial equilogical objects: V-categories with a partial equivalence
//! relation, the functor `R`, the presheaf hat construction and exponentials.

use std::collections::HashSet;

use crate::equ::{EquObj, MorphClass};
use crate::error::{EquilogError, Result};
use crate::relation::Per;
use crate::search::MapSearch;
use crate::vcat::{presheaf_embed, vcat_exponential, VCatObj, VFunctor};

/// A V-category with a partial equivalence relation on its carrier.
///
/// The base is expected to be injective; that is an oracle question and is
/// not checked on construction (see `oracle::injectivity_test`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PEquObj {
    base: VCatObj,
    per: Per,
}

impl PEquObj {
    pub fn new(base: VCatObj, per: Per) -> Result<Self> {
        if base.len() != per.len() {
            return Err(EquilogError::Invalid(format!(
                "relation on {} points for a carrier of {}",
                per.len(),
                base.len()
            )));
        }
        Ok(PEquObj { base, per })
    }

    pub fn base(&self) -> &VCatObj {
        &self.base
    }

    pub fn per(&self) -> &Per {
        &self.per
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn is_separated(&self) -> bool {
        self.base.is_separated()
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.per.related(i, j)
    }

    pub fn product(&self, other: &PEquObj) -> Result<PEquObj> {
        PEquObj::new(
            self.base.product(&other.base)?,
            self.per.product(&other.per),
        )
    }

    pub fn terminal(base: &VCatObj) -> PEquObj {
        let pt = VCatObj::point(base.quantale());
        let per = Per::from_labels(&[Some(0)]);
        PEquObj { base: pt, per }
    }

    /// All VFunctors `self → cod` that map related points to related points.
    pub fn morphisms_to(&self, cod: &PEquObj, bound: u128) -> Result<Vec<Vec<usize>>> {
        self.base.check_same_quantale(&cod.base)?;
        let search = MapSearch::new(self.len(), cod.len());
        search.check_bound("partial equivariant map enumeration", bound)?;
        let vf = self.base.pair_check(&cod.base);
        let ok = |i: usize, fi: usize, j: usize, fj: usize| {
            vf(i, fi, j, fj) && (!self.related(i, j) || cod.related(fi, fj))
        };
        Ok(search.pairwise(&ok).collect())
    }
}

/// A morphism of partial equilogical objects, held by one representative.
#[derive(Clone, Debug)]
pub struct PMorph {
    pub dom: PEquObj,
    pub cod: PEquObj,
    pub rep: Vec<usize>,
}

impl PMorph {
    pub fn new(dom: PEquObj, cod: PEquObj, rep: Vec<usize>) -> Result<Self> {
        if !dom.base.is_vfunctor(&cod.base, &rep) {
            return Err(EquilogError::Invalid(
                "representative is not a VFunctor".into(),
            ));
        }
        let n = dom.len();
        for i in 0..n {
            for j in 0..n {
                if dom.related(i, j) && !cod.related(rep[i], rep[j]) {
                    return Err(EquilogError::Invalid(format!(
                        "representative is not equivariant at ({}, {})",
                        dom.base.name(i),
                        dom.base.name(j)
                    )));
                }
            }
        }
        Ok(PMorph { dom, cod, rep })
    }

    pub fn identity(x: &PEquObj) -> Self {
        PMorph {
            dom: x.clone(),
            cod: x.clone(),
            rep: (0..x.len()).collect(),
        }
    }

    /// Induced map on the blocks of the relations.
    pub fn key(&self) -> Vec<usize> {
        self.dom
            .per
            .representatives()
            .into_iter()
            .map(|x| self.cod.per.block(self.rep[x]).expect("equivariant"))
            .collect()
    }

    pub fn then(&self, next: &PMorph) -> Result<PMorph> {
        if self.cod != next.dom {
            return Err(EquilogError::Invalid(
                "composable morphisms required".into(),
            ));
        }
        Ok(PMorph {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            rep: self.rep.iter().map(|&y| next.rep[y]).collect(),
        })
    }
}

/// `f ≡ g` iff `x ≡ x' ⇒ f(x) ≡ g(x')`.
pub fn pmorph_equal(f: &PMorph, g: &PMorph) -> Result<bool> {
    if f.dom != g.dom || f.cod != g.cod {
        return Err(EquilogError::Invalid(
            "morphisms do not share domain and codomain".into(),
        ));
    }
    let n = f.dom.len();
    Ok(
        (0..n)
            .all(|x| (0..n).all(|x2| !f.dom.related(x, x2) || f.cod.related(f.rep[x], g.rep[x2]))),
    )
}

pub fn dedup_pclasses(dom: &PEquObj, cod: &PEquObj, maps: Vec<Vec<usize>>) -> Vec<PMorph> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for rep in maps {
        let f = PMorph {
            dom: dom.clone(),
            cod: cod.clone(),
            rep,
        };
        if seen.insert(f.key()) {
            out.push(f);
        }
    }
    out
}

/// `R`: restrict to the domain of definition with the initial structure.
pub fn functor_r(p: &PEquObj) -> EquObj {
    let dom = p.per.domain();
    EquObj::new(p.base.restrict(&dom), p.per.restrict_to_domain()).expect("sizes agree")
}

/// `R` on morphisms: the corestriction of a representative.
pub fn functor_r_morph(f: &PMorph) -> MorphClass {
    let dom = f.dom.per.domain();
    let cod = f.cod.per.domain();
    let rep = dom
        .iter()
        .map(|&x| {
            cod.binary_search(&f.rep[x])
                .expect("equivariant maps preserve the domain")
        })
        .collect();
    MorphClass::new(functor_r(&f.dom), functor_r(&f.cod), rep).expect("corestriction is valid")
}

/// The presheaf hull of a separated equilogical object over `2` or `2²`,
/// relating `ŷx` and `ŷx'` exactly when `x ≡ x'`. Also returns `ŷ`.
pub fn hat_pequ(e: &EquObj) -> Result<(PEquObj, VFunctor)> {
    let x = e
        .base()
        .as_vcat()
        .ok_or_else(|| EquilogError::Invalid("hat construction needs a V-category base".into()))?;
    if !x.is_separated() {
        return Err(EquilogError::Invalid(
            "hat construction needs a separated base".into(),
        ));
    }
    let (hat, y) = presheaf_embed(x)?;
    let mut labels: Vec<Option<usize>> = vec![None; hat.len()];
    for (xi, &phi) in y.map.iter().enumerate() {
        labels[phi] = Some(e.equiv().block(xi));
    }
    let per = Per::from_labels(&labels);
    Ok((PEquObj { base: hat, per }, y))
}

/// Result of [`pequ_exponential`].
#[derive(Clone, Debug)]
pub struct PExponential {
    pub object: PEquObj,
    /// Functors `X → Y`, indexed like the carrier of `object`.
    pub functors: Vec<Vec<usize>>,
    /// `Y^X × X` with `(α, x)` at index `α * |X| + x`.
    pub product: PEquObj,
    pub eval: PMorph,
}

/// `Y^X` over the base exponential, with `α ≡ β` iff
/// `x ≡ x' ⇒ α(x) ≡ β(x')` for all `x, x'`.
pub fn pequ_exponential(x: &PEquObj, y: &PEquObj, bound: u128) -> Result<PExponential> {
    let e = vcat_exponential(&x.base, &y.base, bound)?;
    let n = x.len();
    let m = e.functors.len();
    let rel = |a: usize, b: usize| {
        (0..n).all(|i| {
            (0..n).all(|j| !x.related(i, j) || y.related(e.functors[a][i], e.functors[b][j]))
        })
    };
    let mut pairs = Vec::new();
    for a in 0..m {
        for b in 0..m {
            if rel(a, b) {
                pairs.push((a, b));
            }
        }
    }
    let per = Per::from_relation(m, &pairs)?;
    let object = PEquObj {
        base: e.object,
        per,
    };
    let product = object.product(x)?;
    let eval = PMorph::new(product.clone(), y.clone(), e.eval.map)?;
    Ok(PExponential {
        object,
        functors: e.functors,
        product,
        eval,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::Partition;
    use crate::search::DEFAULT_SEARCH_BOUND;

    #[test]
    fn functor_r_examples() {
        let c3 = VCatObj::chain(3);
        let total = PEquObj::new(c3.clone(), Partition::discrete(3).as_per()).unwrap();
        let r = functor_r(&total);
        assert_eq!(r.len(), 3);
        assert_eq!(r.equiv(), &Partition::discrete(3));

        let empty = PEquObj::new(c3.clone(), Per::empty(3)).unwrap();
        assert!(functor_r(&empty).is_empty());

        let top_two =
            PEquObj::new(c3.clone(), Per::from_labels(&[None, Some(0), Some(1)])).unwrap();
        let r = functor_r(&top_two);
        assert_eq!(
            r.base().as_vcat().unwrap().matrix(),
            VCatObj::chain(2).matrix()
        );
    }

    #[test]
    fn hat_examples() {
        let pt = EquObj::discrete(VCatObj::point(crate::Quantale::Two));
        let (h, y) = hat_pequ(&pt).unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(y.map, vec![1]);
        assert_eq!(h.per().domain(), vec![1]);

        let c = EquObj::discrete(VCatObj::chain(2));
        let (h, y) = hat_pequ(&c).unwrap();
        assert_eq!(h.len(), 3);
        assert_eq!(h.per().domain(), y.map);
        let r = functor_r(&h);
        assert!(crate::equ::find_isomorphism(&r, &c, DEFAULT_SEARCH_BOUND)
            .unwrap()
            .is_some());

        let pre = EquObj::discrete(VCatObj::indiscrete(
            crate::Quantale::Two,
            vec!["a".into(), "b".into()],
        ));
        assert!(hat_pequ(&pre).is_err());
    }

    #[test]
    fn exponential_of_chains() {
        let c = PEquObj::new(VCatObj::chain(2), Partition::discrete(2).as_per()).unwrap();
        let e = pequ_exponential(&c, &c, DEFAULT_SEARCH_BOUND).unwrap();
        assert_eq!(e.object.len(), 3);
        assert_eq!(e.object.per().pairs(), vec![(0, 0), (1, 1), (2, 2)]);

        let pt = PEquObj::terminal(c.base());
        let y1 = pequ_exponential(&pt, &c, DEFAULT_SEARCH_BOUND).unwrap();
        assert_eq!(y1.object.per().pairs(), c.per().pairs());
        let one_x = pequ_exponential(&c, &pt, DEFAULT_SEARCH_BOUND).unwrap();
        assert_eq!(one_x.object.per().pairs(), vec![(0, 0)]);
    }
}
