//! Pseudo-equivalence relations on V-categories, their relation to
//! equilogical objects, kernel pairs, and triples over injective objects.

use std::collections::HashSet;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::equ::{EquObj, MorphClass};
use crate::error::{EquilogError, Result};
use crate::quantale::QuantaleOps;
use crate::relation::Partition;
use crate::search::MapSearch;
use crate::vcat::{
    initial_structure, presheaf_embed, quotient_closure, SourceMap, VCatObj, VFunctor,
};

/// A parallel pair `r1, r2: X1 → X0` of VFunctors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PseudoEqRel {
    pub x1: VCatObj,
    pub x0: VCatObj,
    pub r1: Vec<usize>,
    pub r2: Vec<usize>,
}

/// Witness morphisms for reflexivity, symmetry and transitivity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    pub r: Vec<usize>,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerReport {
    pub reflexivity: Option<Vec<usize>>,
    pub symmetry: Option<Vec<usize>>,
    pub transitivity: Option<Vec<usize>>,
    pub regmono: bool,
}

impl PerReport {
    pub fn witnesses(&self) -> Option<Witnesses> {
        Some(Witnesses {
            r: self.reflexivity.clone()?,
            s: self.symmetry.clone()?,
            t: self.transitivity.clone()?,
        })
    }

    pub fn verified(&self) -> bool {
        self.witnesses().is_some()
    }
}

impl PseudoEqRel {
    pub fn new(x1: VCatObj, x0: VCatObj, r1: Vec<usize>, r2: Vec<usize>) -> Result<Self> {
        x1.check_same_quantale(&x0)?;
        if !x1.is_vfunctor(&x0, &r1) || !x1.is_vfunctor(&x0, &r2) {
            return Err(EquilogError::Invalid("span legs must be VFunctors".into()));
        }
        Ok(PseudoEqRel { x1, x0, r1, r2 })
    }

    /// The pullback `X2 = {(p, q) | r2 p = r1 q}` with the initial structure;
    /// returns the pairs and the object.
    pub fn pullback(&self) -> (Vec<(usize, usize)>, VCatObj) {
        let pairs = self.pullback_pairs();
        let q = self.x1.quantale();
        let names = pairs
            .iter()
            .map(|&(p, r)| format!("({},{})", self.x1.name(p), self.x1.name(r)))
            .collect();
        let x2 = VCatObj::from_fn(q, names, |i, j| {
            let ((a, b), (c, d)) = (pairs[i], pairs[j]);
            q.meet(self.x1.get(a, c), self.x1.get(b, d))
        });
        (pairs, x2)
    }

    /// The carrier of the pullback, in lexicographic order.
    pub fn pullback_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.x1.len();
        (0..n)
            .flat_map(|p| (0..n).map(move |q| (p, q)))
            .filter(|&(p, q)| self.r2[p] == self.r1[q])
            .collect()
    }

    /// `⟨r1, r2⟩` is injective and `X1` carries the initial structure.
    pub fn is_regmono(&self) -> bool {
        let mut seen = HashSet::new();
        if !(0..self.x1.len()).all(|e| seen.insert((self.r1[e], self.r2[e]))) {
            return false;
        }
        let init = initial_structure(
            self.x1.quantale(),
            self.x1.names().to_vec(),
            &[
                SourceMap {
                    map: &self.r1,
                    cod: &self.x0,
                },
                SourceMap {
                    map: &self.r2,
                    cod: &self.x0,
                },
            ],
        )
        .expect("legs fit");
        init.values() == self.x1.values()
    }

    /// The image relation `{(r1 e, r2 e)}` on `X0`.
    pub fn image_pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.x1.len())
            .map(|e| (self.r1[e], self.r2[e]))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Checks explicit witnesses against the defining equations.
    pub fn check_witnesses(&self, w: &Witnesses) -> bool {
        let n0 = self.x0.len();
        let n1 = self.x1.len();
        let pairs = self.pullback_pairs();
        let q = self.x1.quantale();
        let t_ok = || {
            let mut by_first: Vec<Vec<usize>> = vec![Vec::new(); n1];
            for (k, &(a, _)) in pairs.iter().enumerate() {
                by_first[a].push(k);
            }
            let bottom = q.bottom();
            pairs.iter().enumerate().all(|(i, &(a, b))| {
                (0..n1).filter(|&c| self.x1.get(a, c) != bottom).all(|c| {
                    by_first[c].iter().all(|&j| {
                        let v = q.meet(self.x1.get(a, c), self.x1.get(b, pairs[j].1));
                        q.le(v, self.x1.get(w.t[i], w.t[j]))
                    })
                })
            })
        };
        w.r.len() == n0
            && self.x0.is_vfunctor(&self.x1, &w.r)
            && (0..n0).all(|x| self.r1[w.r[x]] == x && self.r2[w.r[x]] == x)
            && w.s.len() == n1
            && self.x1.is_vfunctor(&self.x1, &w.s)
            && (0..n1).all(|e| self.r1[w.s[e]] == self.r2[e] && self.r2[w.s[e]] == self.r1[e])
            && w.t.len() == pairs.len()
            && w.t.iter().all(|&e| e < n1)
            && t_ok()
            && pairs
                .iter()
                .enumerate()
                .all(|(k, &(p, q))| self.r1[w.t[k]] == self.r1[p] && self.r2[w.t[k]] == self.r2[q])
    }
}

fn first_vfunctor(
    dom: &VCatObj,
    cod: &VCatObj,
    candidates: Vec<Vec<usize>>,
    bound: u128,
    what: &str,
) -> Result<Option<Vec<usize>>> {
    MapSearch::with_candidates(candidates.clone()).check_bound(what, bound)?;
    let mut found = None;
    dom.search_vfunctors(cod, candidates, &mut |f| {
        found = Some(f.to_vec());
        ControlFlow::Break(())
    });
    Ok(found)
}

/// Searches for the reflexivity, symmetry and transitivity witnesses,
/// each the lexicographically first one, and checks regularity of `⟨r1, r2⟩`.
pub fn verify_per(p: &PseudoEqRel, bound: u128) -> Result<PerReport> {
    let n1 = p.x1.len();
    let over = |pred: &dyn Fn(usize) -> bool| (0..n1).filter(|&e| pred(e)).collect::<Vec<_>>();
    let r_cands = (0..p.x0.len())
        .map(|x| over(&|e| p.r1[e] == x && p.r2[e] == x))
        .collect();
    let reflexivity = first_vfunctor(&p.x0, &p.x1, r_cands, bound, "reflexivity witness search")?;
    let s_cands = (0..n1)
        .map(|e| over(&|e2| p.r1[e2] == p.r2[e] && p.r2[e2] == p.r1[e]))
        .collect();
    let symmetry = first_vfunctor(&p.x1, &p.x1, s_cands, bound, "symmetry witness search")?;
    let (pairs, x2) = p.pullback();
    let t_cands = pairs
        .iter()
        .map(|&(a, b)| over(&|e| p.r1[e] == p.r1[a] && p.r2[e] == p.r2[b]))
        .collect();
    let transitivity = first_vfunctor(&x2, &p.x1, t_cands, bound, "transitivity witness search")?;
    Ok(PerReport {
        reflexivity,
        symmetry,
        transitivity,
        regmono: p.is_regmono(),
    })
}

/// `E_X = {(x, x') | x ≡ x'}` with the initial structure of the two projections.
pub fn equ_per_roundtrip(e: &EquObj) -> Result<PseudoEqRel> {
    let x = e.base().as_vcat().ok_or_else(|| {
        EquilogError::Invalid("pseudo-equivalence relations need a V-category base".into())
    })?;
    let n = x.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| e.related(a, b))
        .collect();
    let r1: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let r2: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    let names = pairs
        .iter()
        .map(|&(a, b)| format!("({},{})", x.name(a), x.name(b)))
        .collect();
    let x1 = initial_structure(
        x.quantale(),
        names,
        &[
            SourceMap { map: &r1, cod: x },
            SourceMap { map: &r2, cod: x },
        ],
    )?;
    Ok(PseudoEqRel {
        x1,
        x0: x.clone(),
        r1,
        r2,
    })
}

/// `x0 ≡ x0'` iff some `x1` has `r1 x1 = x0` and `r2 x1 = x0'`.
pub fn per_to_equ(p: &PseudoEqRel) -> Result<EquObj> {
    if !p.is_regmono() {
        return Err(EquilogError::NotRegularMono);
    }
    let equiv = Partition::from_relation(p.x0.len(), &p.image_pairs())?;
    EquObj::new(p.x0.clone(), equiv)
}

/// The kernel pair of `f` with explicit witnesses: the diagonal, the swap
/// and `((a, b), (b, c)) ↦ (a, c)`.
pub fn kernel_pair(f: &VFunctor) -> (PseudoEqRel, Witnesses) {
    let x = &f.dom;
    let n = x.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| f.map[a] == f.map[b])
        .collect();
    let index = |a: usize, b: usize| pairs.binary_search(&(a, b)).expect("pair in kernel");
    let r1: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let r2: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    let names = pairs
        .iter()
        .map(|&(a, b)| format!("({},{})", x.name(a), x.name(b)))
        .collect();
    let x1 = initial_structure(
        x.quantale(),
        names,
        &[
            SourceMap { map: &r1, cod: x },
            SourceMap { map: &r2, cod: x },
        ],
    )
    .expect("projections fit");
    let span = PseudoEqRel {
        x1,
        x0: x.clone(),
        r1,
        r2,
    };
    let r = (0..n).map(|a| index(a, a)).collect();
    let s = pairs.iter().map(|&(a, b)| index(b, a)).collect();
    let x2_pairs = span.pullback_pairs();
    let t = x2_pairs
        .iter()
        .map(|&(p, q)| index(pairs[p].0, pairs[q].1))
        .collect();
    (span, Witnesses { r, s, t })
}

/// `p` exhibited as the kernel pair of the final lifting of `X0 → X0/∼`.
#[derive(Clone, Debug)]
pub struct KernelPairCertificate {
    pub quotient: VFunctor,
    pub kernel: PseudoEqRel,
    /// Isomorphism `X1 → Ker(p̄)` commuting with both legs.
    pub iso: Vec<usize>,
}

pub fn per_as_kernel_pair(p: &PseudoEqRel) -> Result<KernelPairCertificate> {
    let equ = per_to_equ(p)?;
    let labels = equ.equiv().labels().to_vec();
    let q = quotient_closure(&p.x0, &labels, equ.equiv().num_blocks())?;
    let quotient = VFunctor {
        dom: p.x0.clone(),
        cod: q,
        map: labels,
    };
    let (kernel, _) = kernel_pair(&quotient);
    let kpairs: Vec<(usize, usize)> = (0..kernel.x1.len())
        .map(|e| (kernel.r1[e], kernel.r2[e]))
        .collect();
    let mut iso = Vec::with_capacity(p.x1.len());
    for e in 0..p.x1.len() {
        match kpairs.iter().position(|&kp| kp == (p.r1[e], p.r2[e])) {
            Some(k) => iso.push(k),
            None => {
                return Err(EquilogError::Invalid(
                    "span is not contained in the kernel pair".into(),
                ))
            }
        }
    }
    if !p.x1.is_iso_via(&kernel.x1, &iso) {
        return Err(EquilogError::Invalid(
            "span is not isomorphic to the kernel pair".into(),
        ));
    }
    Ok(KernelPairCertificate {
        quotient,
        kernel,
        iso,
    })
}

/// The equilogical object on `X0` whose relation is the image of `⟨r1, r2⟩`,
/// with the unit `[id]`. Requires the witnesses to exist.
pub fn reflect_to_equ(p: &PseudoEqRel, bound: u128) -> Result<(EquObj, Vec<usize>)> {
    let report = verify_per(p, bound)?;
    if !report.verified() {
        return Err(EquilogError::Unverified(format!(
            "reflexivity {}, symmetry {}, transitivity {}",
            found(&report.reflexivity),
            found(&report.symmetry),
            found(&report.transitivity)
        )));
    }
    let equiv = Partition::from_relation(p.x0.len(), &p.image_pairs())?;
    Ok((EquObj::new(p.x0.clone(), equiv)?, (0..p.x0.len()).collect()))
}

/// As [`reflect_to_equ`], with witnesses supplied and checked instead of
/// searched for.
pub fn reflect_to_equ_with(p: &PseudoEqRel, w: &Witnesses) -> Result<(EquObj, Vec<usize>)> {
    if !p.check_witnesses(w) {
        return Err(EquilogError::Unverified(
            "supplied witnesses do not check".into(),
        ));
    }
    let equiv = Partition::from_relation(p.x0.len(), &p.image_pairs())?;
    Ok((EquObj::new(p.x0.clone(), equiv)?, (0..p.x0.len()).collect()))
}

fn found(w: &Option<Vec<usize>>) -> &'static str {
    if w.is_some() {
        "found"
    } else {
        "absent"
    }
}

/// Componentwise product of two spans with witnesses; `X1` and `X0` are
/// cartesian products indexed `i * m + j`.
pub fn span_product(
    p: &PseudoEqRel,
    wp: &Witnesses,
    q: &PseudoEqRel,
    wq: &Witnesses,
) -> Result<(PseudoEqRel, Witnesses)> {
    let x1 = p.x1.product(&q.x1)?;
    let x0 = p.x0.product(&q.x0)?;
    let (m1, m0) = (q.x1.len(), q.x0.len());
    let leg = |a: &[usize], b: &[usize]| -> Vec<usize> {
        (0..x1.len()).map(|k| a[k / m1] * m0 + b[k % m1]).collect()
    };
    let span = PseudoEqRel {
        r1: leg(&p.r1, &q.r1),
        r2: leg(&p.r2, &q.r2),
        x1,
        x0,
    };
    let r = (0..span.x0.len())
        .map(|k| wp.r[k / m0] * m1 + wq.r[k % m0])
        .collect();
    let s = (0..span.x1.len())
        .map(|k| wp.s[k / m1] * m1 + wq.s[k % m1])
        .collect();
    let pp = p.pullback_pairs();
    let qp = q.pullback_pairs();
    let sp = span.pullback_pairs();
    let t = sp
        .iter()
        .map(|&(a, b)| {
            let ip = pp.binary_search(&(a / m1, b / m1)).expect("component pair");
            let iq = qp.binary_search(&(a % m1, b % m1)).expect("component pair");
            wp.t[ip] * m1 + wq.t[iq]
        })
        .collect();
    Ok((span, Witnesses { r, s, t }))
}

/// Morphisms of the exact completion `p → q`: VFunctors `f: X0 → Y0` with
/// some `g: X1 → Y1` satisfying `f r_i = s_i g`. One representative per
/// class, where `f ~ f'` iff some `h: X0 → Y1` has `f = s1 h`, `f' = s2 h`.
pub fn ex_morphisms(p: &PseudoEqRel, q: &PseudoEqRel, bound: u128) -> Result<Vec<Vec<usize>>> {
    let fs = p.x0.vfunctors_to(&q.x0, bound)?;
    let mut valid = Vec::new();
    for f in fs {
        let cands: Vec<Vec<usize>> = (0..p.x1.len())
            .map(|e| {
                (0..q.x1.len())
                    .filter(|&e2| q.r1[e2] == f[p.r1[e]] && q.r2[e2] == f[p.r2[e]])
                    .collect()
            })
            .collect();
        if first_vfunctor(&p.x1, &q.x1, cands, bound, "exact completion square search")?.is_some() {
            valid.push(f);
        }
    }
    let related = |f: &[usize], g: &[usize]| -> Result<bool> {
        let cands: Vec<Vec<usize>> = (0..p.x0.len())
            .map(|x| {
                (0..q.x1.len())
                    .filter(|&e| q.r1[e] == f[x] && q.r2[e] == g[x])
                    .collect()
            })
            .collect();
        Ok(first_vfunctor(&p.x0, &q.x1, cands, bound, "exact completion class search")?.is_some())
    };
    let mut reps: Vec<Vec<usize>> = Vec::new();
    for f in valid {
        let mut dup = false;
        for r in &reps {
            if related(r, &f)? {
                dup = true;
                break;
            }
        }
        if !dup {
            reps.push(f);
        }
    }
    Ok(reps)
}

/// `(X, A, σ: A → |X|)` with `X` injective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegTriple {
    pub base: VCatObj,
    pub elems: Vec<String>,
    pub sigma: Vec<usize>,
}

/// `G X = (X̂, |X|, |ŷ|)`.
pub fn triple_embed(x: &VCatObj) -> Result<RegTriple> {
    let (hat, y) = presheaf_embed(x)?;
    Ok(RegTriple {
        base: hat,
        elems: x.names().to_vec(),
        sigma: y.map,
    })
}

/// A base morphism `g` with `g σ = δ f`, if one exists.
pub fn triple_morphism_check(
    f: &[usize],
    from: &RegTriple,
    to: &RegTriple,
    bound: u128,
) -> Result<Option<Vec<usize>>> {
    if f.len() != from.elems.len() || f.iter().any(|&b| b >= to.elems.len()) {
        return Err(EquilogError::Invalid("map does not fit the triples".into()));
    }
    let mut cands: Vec<Vec<usize>> = vec![(0..to.base.len()).collect(); from.base.len()];
    for (a, &b) in f.iter().enumerate() {
        let want = to.sigma[b];
        let c = &mut cands[from.sigma[a]];
        c.retain(|&y| y == want);
    }
    first_vfunctor(&from.base, &to.base, cands, bound, "triple realizer search")
}

/// Maps `A → B` that are triple morphisms.
pub fn triple_morphisms(from: &RegTriple, to: &RegTriple, bound: u128) -> Result<Vec<Vec<usize>>> {
    let search = MapSearch::new(from.elems.len(), to.elems.len());
    search.check_bound("triple map enumeration", bound)?;
    let mut out = Vec::new();
    for f in search.collect() {
        if triple_morphism_check(&f, from, to, bound)?.is_some() {
            out.push(f);
        }
    }
    Ok(out)
}

/// `A_ini`: the initial structure on `A` along `σ`.
pub fn triple_initial_lifting(t: &RegTriple) -> Result<VCatObj> {
    initial_structure(
        t.base.quantale(),
        t.elems.clone(),
        &[SourceMap {
            map: &t.sigma,
            cod: &t.base,
        }],
    )
}

/// The identity of `A` is a triple morphism in both directions.
pub fn triples_isomorphic_via_identity(a: &RegTriple, b: &RegTriple, bound: u128) -> Result<bool> {
    if a.elems.len() != b.elems.len() {
        return Ok(false);
    }
    let id: Vec<usize> = (0..a.elems.len()).collect();
    Ok(triple_morphism_check(&id, a, b, bound)?.is_some()
        && triple_morphism_check(&id, b, a, bound)?.is_some())
}

/// Transports an equilogical morphism to a morphism between the associated
/// spans; the square is `g(x, x') = (f x, f x')`.
pub fn equ_morph_square(f: &MorphClass, p: &PseudoEqRel, q: &PseudoEqRel) -> Option<Vec<usize>> {
    (0..p.x1.len())
        .map(|e| {
            (0..q.x1.len()).find(|&e2| q.r1[e2] == f.rep[p.r1[e]] && q.r2[e2] == f.rep[p.r2[e]])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::DEFAULT_SEARCH_BOUND;
    use crate::Quantale;

    const B: u128 = DEFAULT_SEARCH_BOUND;

    #[test]
    fn diagonal_span_has_witnesses() {
        let x = VCatObj::chain(2);
        let p = equ_per_roundtrip(&EquObj::discrete(x.clone())).unwrap();
        assert_eq!(p.x1.len(), 2);
        assert!(p.x1.is_iso_via(&x, &[0, 1]));
        let rep = verify_per(&p, B).unwrap();
        assert!(rep.verified() && rep.regmono);
        assert_eq!(rep.reflexivity, Some(vec![0, 1]));
    }

    #[test]
    fn full_relation_span() {
        let x = VCatObj::antichain(2);
        let e = EquObj::new(x.clone(), Partition::full(2)).unwrap();
        let p = equ_per_roundtrip(&e).unwrap();
        assert_eq!(p.x1.len(), 4);
        let rep = verify_per(&p, B).unwrap();
        assert!(rep.verified() && rep.regmono);
        assert_eq!(per_to_equ(&p).unwrap(), e);

        let cert = per_as_kernel_pair(&p).unwrap();
        assert_eq!(cert.quotient.cod.len(), 1);
        assert_eq!(cert.kernel.x1.len(), 4);
    }

    #[test]
    fn constant_span_lacks_reflexivity() {
        let x0 = VCatObj::antichain(2);
        let x1 = VCatObj::point(Quantale::Two);
        let p = PseudoEqRel::new(x1, x0, vec![0], vec![0]).unwrap();
        let rep = verify_per(&p, B).unwrap();
        assert!(rep.reflexivity.is_none());
        assert!(matches!(
            reflect_to_equ(&p, B),
            Err(EquilogError::Unverified(_))
        ));
    }

    #[test]
    fn kernel_pairs() {
        let x = VCatObj::antichain(2);
        let inj = VFunctor::new(x.clone(), x.clone(), vec![0, 1]).unwrap();
        let (k, w) = kernel_pair(&inj);
        assert_eq!(k.x1.len(), 2);
        assert!(k.check_witnesses(&w));

        let pt = VCatObj::point(Quantale::Two);
        let c = VFunctor::new(x.clone(), pt, vec![0, 0]).unwrap();
        let (k, w) = kernel_pair(&c);
        assert_eq!(k.x1.len(), 4);
        assert!(k.check_witnesses(&w));
        assert!(k.is_regmono());
        let (e, _) = reflect_to_equ(&k, B).unwrap();
        assert_eq!(e.equiv(), &Partition::full(2));
    }

    #[test]
    fn duplicated_span_reflects_like_its_image() {
        let x0 = VCatObj::antichain(2);
        let x1 = VCatObj::antichain(3);
        let p = PseudoEqRel::new(x1, x0.clone(), vec![0, 1, 1], vec![0, 1, 1]).unwrap();
        assert!(!p.is_regmono());
        let (e, _) = reflect_to_equ(&p, B).unwrap();
        assert_eq!(e.equiv(), &Partition::discrete(2));
        assert_eq!(per_to_equ(&p).unwrap_err(), EquilogError::NotRegularMono);
    }

    #[test]
    fn span_product_witnesses_check() {
        let a = equ_per_roundtrip(&EquObj::new(VCatObj::antichain(2), Partition::full(2)).unwrap())
            .unwrap();
        let b = equ_per_roundtrip(&EquObj::discrete(VCatObj::chain(2))).unwrap();
        let wa = verify_per(&a, B).unwrap().witnesses().unwrap();
        let wb = verify_per(&b, B).unwrap().witnesses().unwrap();
        let (p, w) = span_product(&a, &wa, &b, &wb).unwrap();
        assert!(p.check_witnesses(&w));
    }

    #[test]
    fn triple_examples() {
        let t = triple_embed(&VCatObj::point(Quantale::Two)).unwrap();
        assert_eq!(t.base.len(), 2);
        assert_eq!(t.sigma, vec![1]);

        let nonin = RegTriple {
            base: VCatObj::chain(2),
            elems: vec!["a".into(), "b".into()],
            sigma: vec![1, 1],
        };
        let ini = triple_initial_lifting(&nonin).unwrap();
        let g = triple_embed(&ini).unwrap();
        assert!(triples_isomorphic_via_identity(&nonin, &g, B).unwrap());
    }
}
