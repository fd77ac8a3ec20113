//! Exhaustive hom-set enumeration, independent of the pruned searches used
//! by the constructions.

use std::collections::HashSet;
use std::ops::ControlFlow;

use crate::assembly::Assembly;
use crate::base::Base;
use crate::equ::{EquObj, MorphClass};
use crate::error::Result;
use crate::pequ::{PEquObj, PMorph};
use crate::quantale::QuantaleOps;
use crate::search::MapSearch;

/// Objects whose hom-sets the oracle can list.
pub trait HomEnum: Sized {
    type Morph;
    /// One morphism per class, in lexicographic order of first representative.
    fn homs(&self, cod: &Self, bound: u128) -> Result<Vec<Self::Morph>>;
}

pub fn enumerate_morphclasses<T: HomEnum>(x: &T, y: &T, bound: u128) -> Result<Vec<T::Morph>> {
    x.homs(y, bound)
}

/// The codomain class of each image point. Two equivariant maps are equal
/// as morphisms exactly when these agree.
pub fn equ_class_key(cod: &EquObj, rep: &[usize]) -> Vec<usize> {
    rep.iter().map(|&y| cod.equiv().block(y)).collect()
}

/// As [`equ_class_key`], over the domain of definition of `dom`.
pub fn pequ_class_key(dom: &PEquObj, cod: &PEquObj, rep: &[usize]) -> Vec<usize> {
    dom.per()
        .domain()
        .into_iter()
        .map(|x| cod.per().block(rep[x]).unwrap_or(usize::MAX))
        .collect()
}

/// All base morphisms `dom → cod` with `extra` holding pairwise.
/// V-category morphisms are pairwise conditions; for spaces every map is
/// checked against the space axioms directly.
pub(crate) fn base_maps(
    dom: &Base,
    cod: &Base,
    extra: &dyn Fn(usize, usize, usize, usize) -> bool,
    bound: u128,
) -> Result<Vec<Vec<usize>>> {
    let search = MapSearch::new(dom.len(), cod.len());
    search.check_bound("oracle hom enumeration", bound)?;
    match (dom, cod) {
        (Base::VCat(a), Base::VCat(b)) => {
            a.check_same_quantale(b)?;
            let q = a.quantale();
            let both = |i: usize, fi: usize, j: usize, fj: usize| {
                q.le(a.get(i, j), b.get(fi, fj))
                    && q.le(a.get(j, i), b.get(fj, fi))
                    && extra(i, fi, j, fj)
            };
            Ok(search.pairwise(&both).collect())
        }
        _ => {
            dom.check_same_kind(cod)?;
            let leaf = |f: &[usize]| dom.is_morphism(cod, f);
            Ok(search.pairwise(extra).leaf(&leaf).collect())
        }
    }
}

impl HomEnum for EquObj {
    type Morph = MorphClass;

    fn homs(&self, cod: &EquObj, bound: u128) -> Result<Vec<MorphClass>> {
        let eqv =
            |i: usize, fi: usize, j: usize, fj: usize| !self.related(i, j) || cod.related(fi, fj);
        let maps = base_maps(self.base(), cod.base(), &eqv, bound)?;
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for rep in maps {
            if seen.insert(equ_class_key(cod, &rep)) {
                out.push(MorphClass::new(self.clone(), cod.clone(), rep)?);
            }
        }
        Ok(out)
    }
}

impl HomEnum for PEquObj {
    type Morph = PMorph;

    fn homs(&self, cod: &PEquObj, bound: u128) -> Result<Vec<PMorph>> {
        let eqv =
            |i: usize, fi: usize, j: usize, fj: usize| !self.related(i, j) || cod.related(fi, fj);
        let maps = base_maps(
            &Base::VCat(self.base().clone()),
            &Base::VCat(cod.base().clone()),
            &eqv,
            bound,
        )?;
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for rep in maps {
            if seen.insert(pequ_class_key(self, cod, &rep)) {
                out.push(PMorph::new(self.clone(), cod.clone(), rep)?);
            }
        }
        Ok(out)
    }
}

impl HomEnum for Assembly {
    type Morph = Vec<usize>;

    /// Maps `A → B` tracked by some base morphism; distinct maps are
    /// distinct morphisms.
    fn homs(&self, cod: &Assembly, bound: u128) -> Result<Vec<Vec<usize>>> {
        let realizers = base_maps(
            &Base::VCat(self.base().clone()),
            &Base::VCat(cod.base().clone()),
            &|_, _, _, _| true,
            bound,
        )?;
        let search = MapSearch::new(self.len(), cod.len());
        search.check_bound("oracle assembly map enumeration", bound)?;
        let mut out = Vec::new();
        search.run(&mut |f| {
            let tracked = realizers.iter().any(|g| {
                (0..self.len()).all(|a| {
                    self.realizers(a)
                        .into_iter()
                        .all(|x| cod.realizer_mask(f[a]) & (1 << g[x]) != 0)
                })
            });
            if tracked {
                out.push(f.to_vec());
            }
            ControlFlow::Continue(())
        });
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::BaseKind;
    use crate::relation::Partition;
    use crate::search::DEFAULT_SEARCH_BOUND;
    use crate::spaces::FinTop;
    use crate::vcat::{default_names, VCatObj};

    #[test]
    fn chain_endomorphisms() {
        let c = EquObj::discrete(VCatObj::chain(2));
        assert_eq!(
            enumerate_morphclasses(&c, &c, DEFAULT_SEARCH_BOUND)
                .unwrap()
                .len(),
            3
        );
        let t = EquObj::terminal(BaseKind::ORD);
        assert_eq!(
            enumerate_morphclasses(&c, &t, DEFAULT_SEARCH_BOUND)
                .unwrap()
                .len(),
            1
        );
        let full = EquObj::new(VCatObj::chain(2), Partition::full(2)).unwrap();
        assert_eq!(
            enumerate_morphclasses(&t, &full, DEFAULT_SEARCH_BOUND)
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn agrees_with_pruned_search() {
        let sierpinski = FinTop::new(default_names(2), vec![0, 0b01, 0b11]).unwrap();
        let e = EquObj::discrete(sierpinski);
        let ours = enumerate_morphclasses(&e, &e, DEFAULT_SEARCH_BOUND).unwrap();
        let theirs = e.morphisms_to(&e, DEFAULT_SEARCH_BOUND).unwrap();
        assert_eq!(
            ours.iter().map(|f| f.rep.clone()).collect::<Vec<_>>(),
            theirs
        );
    }

    #[test]
    fn pequ_classes_ignore_undefined_points() {
        let base = VCatObj::chain(2);
        let p = PEquObj::new(base, crate::Per::from_labels(&[None, Some(0)])).unwrap();
        let homs = enumerate_morphclasses(&p, &p, DEFAULT_SEARCH_BOUND).unwrap();
        assert_eq!(homs.len(), 1);
    }
}
