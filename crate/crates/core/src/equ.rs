//! Equilogical objects: a base object with an equivalence relation on its
//! carrier. Morphisms are classes of equivariant base morphisms.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::base::{Base, BaseKind};
use crate::error::{EquilogError, Result};
use crate::relation::Partition;
use crate::search::MapSearch;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EquObj {
    base: Base,
    equiv: Partition,
}

impl EquObj {
    pub fn new(base: impl Into<Base>, equiv: Partition) -> Result<Self> {
        let base = base.into();
        if base.len() != equiv.len() {
            return Err(EquilogError::Invalid(format!(
                "equivalence on {} points for a carrier of {}",
                equiv.len(),
                base.len()
            )));
        }
        Ok(EquObj { base, equiv })
    }

    /// From an arbitrary relation, which must be an equivalence relation.
    pub fn from_relation(base: impl Into<Base>, pairs: &[(usize, usize)]) -> Result<Self> {
        let base = base.into();
        let equiv = Partition::from_relation(base.len(), pairs)?;
        Self::new(base, equiv)
    }

    /// Equality as the equivalence relation.
    pub fn discrete(base: impl Into<Base>) -> Self {
        let base = base.into();
        let equiv = Partition::discrete(base.len());
        EquObj { base, equiv }
    }

    pub fn terminal(kind: BaseKind) -> Self {
        Self::discrete(Base::terminal(kind))
    }

    pub fn initial(kind: BaseKind) -> Self {
        Self::discrete(Base::initial(kind))
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn equiv(&self) -> &Partition {
        &self.equiv
    }

    pub fn kind(&self) -> BaseKind {
        self.base.kind()
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.equiv.related(i, j)
    }

    /// New element `k` is old element `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> EquObj {
        EquObj {
            base: self.base.permute(perm),
            equiv: self.equiv.permute(perm),
        }
    }

    /// Visits all equivariant base morphisms `self → cod`.
    pub fn search_morphisms(
        &self,
        cod: &EquObj,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> bool {
        let equivariant =
            |i: usize, fi: usize, j: usize, fj: usize| !self.related(i, j) || cod.related(fi, fj);
        self.base.search_morphisms(
            &cod.base,
            vec![(0..cod.len()).collect(); self.len()],
            &equivariant,
            visit,
        )
    }

    pub fn morphisms_to(&self, cod: &EquObj, bound: u128) -> Result<Vec<Vec<usize>>> {
        self.base.check_same_kind(&cod.base)?;
        MapSearch::new(self.len(), cod.len()).check_bound("equivariant map enumeration", bound)?;
        let mut out = Vec::new();
        self.search_morphisms(cod, &mut |f| {
            out.push(f.to_vec());
            ControlFlow::Continue(())
        });
        Ok(out)
    }
}

/// Failure modes of a candidate morphism, reported separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub base_morphism: bool,
    pub equivariance_witness: Option<[String; 2]>,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.base_morphism && self.equivariance_witness.is_none()
    }
}

pub fn verify_equ_morphism(dom: &EquObj, cod: &EquObj, map: &[usize]) -> MorphismReport {
    let fits = map.len() == dom.len() && map.iter().all(|&y| y < cod.len());
    let base_morphism = fits && dom.base.is_morphism(&cod.base, map);
    let mut equivariance_witness = None;
    if fits {
        'outer: for i in 0..dom.len() {
            for j in 0..dom.len() {
                if dom.related(i, j) && !cod.related(map[i], map[j]) {
                    equivariance_witness =
                        Some([dom.base.name(i).to_string(), dom.base.name(j).to_string()]);
                    break 'outer;
                }
            }
        }
    }
    MorphismReport {
        base_morphism,
        equivariance_witness,
    }
}

/// A morphism of equilogical objects, held by one representative.
#[derive(Clone, Debug)]
pub struct MorphClass {
    pub dom: EquObj,
    pub cod: EquObj,
    pub rep: Vec<usize>,
}

impl MorphClass {
    pub fn new(dom: EquObj, cod: EquObj, rep: Vec<usize>) -> Result<Self> {
        let report = verify_equ_morphism(&dom, &cod, &rep);
        if !report.base_morphism {
            return Err(EquilogError::Invalid(
                "representative is not a base morphism".into(),
            ));
        }
        if let Some([a, b]) = report.equivariance_witness {
            return Err(EquilogError::Invalid(format!(
                "representative is not equivariant: {a} and {b} are related but their images are not"
            )));
        }
        Ok(MorphClass { dom, cod, rep })
    }

    pub(crate) fn unchecked(dom: EquObj, cod: EquObj, rep: Vec<usize>) -> Self {
        MorphClass { dom, cod, rep }
    }

    pub fn identity(x: &EquObj) -> Self {
        MorphClass {
            dom: x.clone(),
            cod: x.clone(),
            rep: (0..x.len()).collect(),
        }
    }

    /// The induced map from blocks of the domain to blocks of the codomain.
    /// Two representatives of the same hom-set are equal as classes exactly
    /// when their keys agree.
    pub fn key(&self) -> Vec<usize> {
        self.dom
            .equiv
            .representatives()
            .into_iter()
            .map(|x| self.cod.equiv.block(self.rep[x]))
            .collect()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &MorphClass) -> Result<MorphClass> {
        if self.cod != next.dom {
            return Err(EquilogError::Invalid(
                "composable morphisms required".into(),
            ));
        }
        Ok(MorphClass {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            rep: self.rep.iter().map(|&y| next.rep[y]).collect(),
        })
    }
}

/// `f ≡ g` iff `x ≡ x' ⇒ f(x) ≡ g(x')` for all `x, x'`.
pub fn morph_equal(f: &MorphClass, g: &MorphClass) -> Result<bool> {
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

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MonoEpi {
    pub mono: bool,
    pub epi: bool,
}

/// Mono iff `x ≡ x' ⇔ f x ≡ f x'`; epi iff every codomain class meets the image.
pub fn classify_mono_epi(f: &MorphClass) -> MonoEpi {
    let n = f.dom.len();
    let mono =
        (0..n).all(|x| (0..n).all(|x2| f.dom.related(x, x2) == f.cod.related(f.rep[x], f.rep[x2])));
    let mut hit = vec![false; f.cod.equiv.num_blocks()];
    for &y in &f.rep {
        hit[f.cod.equiv.block(y)] = true;
    }
    MonoEpi {
        mono,
        epi: hit.into_iter().all(|h| h),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LimitKind {
    Product,
    Coproduct,
    Equalizer,
    Coequalizer,
    Terminal,
    Initial,
}

impl LimitKind {
    pub const ALL: [LimitKind; 6] = [
        LimitKind::Product,
        LimitKind::Coproduct,
        LimitKind::Equalizer,
        LimitKind::Coequalizer,
        LimitKind::Terminal,
        LimitKind::Initial,
    ];
}

#[derive(Clone, Debug)]
pub enum LimitArgs<'a> {
    Objects(&'a [EquObj]),
    Parallel(&'a MorphClass, &'a MorphClass),
    Kind(BaseKind),
}

/// A limit or colimit object with its legs: projections for products,
/// injections for coproducts, the inclusion for equalizers and the quotient
/// for coequalizers.
#[derive(Clone, Debug)]
pub struct LimitCone {
    pub kind: LimitKind,
    pub object: EquObj,
    pub legs: Vec<MorphClass>,
}

pub fn limit_colimit(kind: LimitKind, args: LimitArgs<'_>) -> Result<LimitCone> {
    let arity = |what: &str| EquilogError::Invalid(format!("{kind:?} expects {what}"));
    match kind {
        LimitKind::Terminal | LimitKind::Initial => {
            let LimitArgs::Kind(k) = args else {
                return Err(arity("a base kind"));
            };
            let object = if kind == LimitKind::Terminal {
                EquObj::terminal(k)
            } else {
                EquObj::initial(k)
            };
            Ok(LimitCone {
                kind,
                object,
                legs: Vec::new(),
            })
        }
        LimitKind::Product | LimitKind::Coproduct => {
            let LimitArgs::Objects([a, b]) = args else {
                return Err(arity("two objects"));
            };
            if kind == LimitKind::Product {
                let base = a.base.product(&b.base)?;
                let object = EquObj::new(base, a.equiv.product(&b.equiv))?;
                let m = b.len();
                let p1 = (0..object.len()).map(|k| k / m).collect();
                let p2 = (0..object.len()).map(|k| k % m).collect();
                let legs = vec![
                    MorphClass::unchecked(object.clone(), a.clone(), p1),
                    MorphClass::unchecked(object.clone(), b.clone(), p2),
                ];
                Ok(LimitCone { kind, object, legs })
            } else {
                let base = a.base.coproduct(&b.base)?;
                let object = EquObj::new(base, a.equiv.sum(&b.equiv))?;
                let n = a.len();
                let legs = vec![
                    MorphClass::unchecked(a.clone(), object.clone(), (0..n).collect()),
                    MorphClass::unchecked(b.clone(), object.clone(), (n..n + b.len()).collect()),
                ];
                Ok(LimitCone { kind, object, legs })
            }
        }
        LimitKind::Equalizer | LimitKind::Coequalizer => {
            let LimitArgs::Parallel(f, g) = args else {
                return Err(arity("a parallel pair"));
            };
            if f.dom != g.dom || f.cod != g.cod {
                return Err(arity("a parallel pair"));
            }
            if kind == LimitKind::Equalizer {
                let subset: Vec<usize> = (0..f.dom.len())
                    .filter(|&x| f.cod.related(f.rep[x], g.rep[x]))
                    .collect();
                let object = EquObj {
                    base: f.dom.base.restrict(&subset),
                    equiv: f.dom.equiv.restrict(&subset),
                };
                let legs = vec![MorphClass::unchecked(object.clone(), f.dom.clone(), subset)];
                Ok(LimitCone { kind, object, legs })
            } else {
                let pairs: Vec<(usize, usize)> =
                    (0..f.dom.len()).map(|x| (f.rep[x], g.rep[x])).collect();
                let object = EquObj {
                    base: f.cod.base.clone(),
                    equiv: Partition::closure_with(&f.cod.equiv, &pairs),
                };
                let legs = vec![MorphClass::unchecked(
                    f.cod.clone(),
                    object.clone(),
                    (0..f.cod.len()).collect(),
                )];
                Ok(LimitCone { kind, object, legs })
            }
        }
    }
}

/// A pair of mutually inverse morphism classes, if one exists.
pub fn find_isomorphism(
    a: &EquObj,
    b: &EquObj,
    bound: u128,
) -> Result<Option<(MorphClass, MorphClass)>> {
    if a.equiv.num_blocks() != b.equiv.num_blocks() || a.kind() != b.kind() {
        return Ok(None);
    }
    let forth = dedup_classes(a, b, a.morphisms_to(b, bound)?);
    let back = dedup_classes(b, a, b.morphisms_to(a, bound)?);
    let id_a = MorphClass::identity(a);
    let id_b = MorphClass::identity(b);
    for f in &forth {
        if !classify_mono_epi(f).epi {
            continue;
        }
        for g in &back {
            if morph_equal(&f.then(g)?, &id_a)? && morph_equal(&g.then(f)?, &id_b)? {
                return Ok(Some((f.clone(), g.clone())));
            }
        }
    }
    Ok(None)
}

/// One representative per class, in first-seen order.
pub fn dedup_classes(dom: &EquObj, cod: &EquObj, maps: Vec<Vec<usize>>) -> Vec<MorphClass> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for rep in maps {
        let f = MorphClass::unchecked(dom.clone(), cod.clone(), rep);
        if seen.insert(f.key()) {
            out.push(f);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::DEFAULT_SEARCH_BOUND;
    use crate::vcat::VCatObj;

    fn chain2() -> EquObj {
        EquObj::discrete(VCatObj::chain(2))
    }

    #[test]
    fn identity_and_equality() {
        let x = chain2();
        let id = MorphClass::identity(&x);
        assert!(verify_equ_morphism(&x, &x, &id.rep).passed());
        assert!(morph_equal(&id, &id).unwrap());
    }

    #[test]
    fn maps_into_one_class_are_equal() {
        let x = chain2();
        let y = EquObj::new(VCatObj::chain(2), Partition::full(2)).unwrap();
        let f = MorphClass::new(x.clone(), y.clone(), vec![0, 1]).unwrap();
        let g = MorphClass::new(x.clone(), y.clone(), vec![1, 1]).unwrap();
        assert!(morph_equal(&f, &g).unwrap());
        assert_eq!(f.key(), g.key());
    }

    #[test]
    fn equivariance_failure_has_witness() {
        let x = EquObj::new(VCatObj::chain(2), Partition::full(2)).unwrap();
        let y = chain2();
        let r = verify_equ_morphism(&x, &y, &[0, 1]);
        assert!(r.base_morphism);
        assert_eq!(r.equivariance_witness, Some(["x0".into(), "x1".into()]));
        let r = verify_equ_morphism(&y, &y, &[1, 0]);
        assert!(!r.base_morphism);
        assert!(r.equivariance_witness.is_none());
    }

    #[test]
    fn mono_epi_examples() {
        let two = EquObj::discrete(VCatObj::antichain(2));
        let pt = EquObj::discrete(VCatObj::antichain(1));
        let incl = MorphClass::new(pt.clone(), two.clone(), vec![0]).unwrap();
        assert_eq!(
            classify_mono_epi(&incl),
            MonoEpi {
                mono: true,
                epi: false
            }
        );
        let quot = MorphClass::new(two.clone(), pt.clone(), vec![0, 0]).unwrap();
        assert_eq!(
            classify_mono_epi(&quot),
            MonoEpi {
                mono: false,
                epi: true
            }
        );
        assert_eq!(
            classify_mono_epi(&MorphClass::identity(&two)),
            MonoEpi {
                mono: true,
                epi: true
            }
        );
    }

    #[test]
    fn limit_examples() {
        let c = chain2();
        let p = limit_colimit(
            LimitKind::Product,
            LimitArgs::Objects(&[c.clone(), c.clone()]),
        )
        .unwrap();
        assert_eq!(p.object.len(), 4);
        assert_eq!(p.object.equiv().num_blocks(), 4);

        let one = EquObj::terminal(BaseKind::ORD);
        let p1 = limit_colimit(LimitKind::Product, LimitArgs::Objects(&[c.clone(), one])).unwrap();
        assert!(find_isomorphism(&p1.object, &c, DEFAULT_SEARCH_BOUND)
            .unwrap()
            .is_some());

        let pt = EquObj::discrete(VCatObj::antichain(1));
        let two = EquObj::discrete(VCatObj::antichain(2));
        let i0 = MorphClass::new(pt.clone(), two.clone(), vec![0]).unwrap();
        let i1 = MorphClass::new(pt.clone(), two.clone(), vec![1]).unwrap();
        let q = limit_colimit(LimitKind::Coequalizer, LimitArgs::Parallel(&i0, &i1)).unwrap();
        assert_eq!(q.object.equiv().blocks(), vec![vec![0, 1]]);

        let e = limit_colimit(LimitKind::Equalizer, LimitArgs::Parallel(&i0, &i0)).unwrap();
        assert_eq!(e.object, pt);
        let e = limit_colimit(LimitKind::Equalizer, LimitArgs::Parallel(&i0, &i1)).unwrap();
        assert!(e.object.is_empty());

        assert!(limit_colimit(LimitKind::Product, LimitArgs::Kind(BaseKind::ORD)).is_err());
    }

    #[test]
    fn hom_classes_of_chain() {
        let c = chain2();
        let maps = c.morphisms_to(&c, DEFAULT_SEARCH_BOUND).unwrap();
        assert_eq!(dedup_classes(&c, &c, maps).len(), 3);
    }
}
