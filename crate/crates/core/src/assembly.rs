//! Assemblies and modest sets over V-categories.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{EquilogError, Result};
use crate::pequ::{PEquObj, PMorph};
use crate::relation::{Partition, Per};
use crate::search::MapSearch;
use crate::vcat::{vcat_exponential, Exponential, VCatObj};

/// Realizer sets are bitmasks over the base carrier.
pub type Realizers = u64;

pub const MAX_REALIZER_CARRIER: usize = 64;

fn members(s: Realizers) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| s & (1u64 << i) != 0)
}

/// `(A, X, E)`: a finite set `A`, a base object `X` and nonempty realizer
/// sets `E(a) ⊆ |X|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assembly {
    elems: Vec<String>,
    base: VCatObj,
    realizers: Vec<Realizers>,
}

impl Assembly {
    pub fn new(elems: Vec<String>, base: VCatObj, realizers: Vec<Vec<usize>>) -> Result<Self> {
        if base.len() > MAX_REALIZER_CARRIER {
            return Err(EquilogError::BoundExceeded {
                what: "assembly base carrier".into(),
                needed: base.len() as u128,
                bound: MAX_REALIZER_CARRIER as u128,
            });
        }
        if elems.len() != realizers.len() {
            return Err(EquilogError::Invalid(
                "one realizer set per element required".into(),
            ));
        }
        let mut masks = Vec::with_capacity(elems.len());
        for (a, set) in elems.iter().zip(&realizers) {
            if set.is_empty() {
                return Err(EquilogError::Invalid(format!(
                    "element {a} has no realizer"
                )));
            }
            if let Some(x) = set.iter().find(|&&x| x >= base.len()) {
                return Err(EquilogError::Invalid(format!(
                    "realizer {x} outside the base"
                )));
            }
            masks.push(set.iter().fold(0u64, |m, &x| m | (1 << x)));
        }
        Ok(Assembly {
            elems,
            base,
            realizers: masks,
        })
    }

    fn from_masks(elems: Vec<String>, base: VCatObj, realizers: Vec<Realizers>) -> Self {
        debug_assert!(realizers.iter().all(|&m| m != 0));
        Assembly {
            elems,
            base,
            realizers,
        }
    }

    pub fn elems(&self) -> &[String] {
        &self.elems
    }

    pub fn base(&self) -> &VCatObj {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn realizer_mask(&self, a: usize) -> Realizers {
        self.realizers[a]
    }

    pub fn realizers(&self, a: usize) -> Vec<usize> {
        members(self.realizers[a]).collect()
    }

    /// Pairwise disjoint realizer sets.
    pub fn is_modest(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (a + 1..n).all(|b| self.realizers[a] & self.realizers[b] == 0))
    }

    /// `(A × B, X × Y, E(a, b) = E(a) × E(b))`; `(a, b)` has index `a * |B| + b`.
    pub fn product(&self, other: &Assembly) -> Result<Assembly> {
        let base = self.base.product(&other.base)?;
        if base.len() > MAX_REALIZER_CARRIER {
            return Err(EquilogError::BoundExceeded {
                what: "assembly base carrier".into(),
                needed: base.len() as u128,
                bound: MAX_REALIZER_CARRIER as u128,
            });
        }
        let (m, ym) = (other.len(), other.base.len());
        let mut elems = Vec::new();
        let mut real = Vec::new();
        for a in 0..self.len() {
            for b in 0..m {
                elems.push(format!("({},{})", self.elems[a], other.elems[b]));
                let mut mask = 0u64;
                for x in members(self.realizers[a]) {
                    for y in members(other.realizers[b]) {
                        mask |= 1 << (x * ym + y);
                    }
                }
                real.push(mask);
            }
        }
        Ok(Assembly::from_masks(elems, base, real))
    }

    /// The sub-assembly on `subset` with restricted realizers and the same base.
    pub fn restrict(&self, subset: &[usize]) -> Assembly {
        Assembly::from_masks(
            subset.iter().map(|&a| self.elems[a].clone()).collect(),
            self.base.clone(),
            subset.iter().map(|&a| self.realizers[a]).collect(),
        )
    }

    /// Maps `A → B` that have a realizer.
    pub fn morphisms_to(&self, cod: &Assembly, bound: u128) -> Result<Vec<Vec<usize>>> {
        let search = MapSearch::new(self.len(), cod.len());
        search.check_bound("assembly map enumeration", bound)?;
        let mut out = Vec::new();
        for f in search.collect() {
            if track_check(&f, self, cod, bound)?.realizer.is_some() {
                out.push(f);
            }
        }
        Ok(out)
    }
}

/// Result of a realizer search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrackResult {
    pub realizer: Option<Vec<usize>>,
    /// Size of the candidate space searched exhaustively.
    pub searched: u128,
}

/// Searches for a base morphism `g` with `g(E_A(a)) ⊆ E_B(f(a))` for all `a`.
pub fn track_check(
    f: &[usize],
    from: &Assembly,
    to: &Assembly,
    bound: u128,
) -> Result<TrackResult> {
    from.base.check_same_quantale(&to.base)?;
    if f.len() != from.len() || f.iter().any(|&b| b >= to.len()) {
        return Err(EquilogError::Invalid(
            "map does not fit the assemblies".into(),
        ));
    }
    let full: Realizers = if to.base.len() == 64 {
        u64::MAX
    } else {
        (1u64 << to.base.len()) - 1
    };
    let mut allowed = vec![full; from.base.len()];
    for (a, &b) in f.iter().enumerate() {
        for x in members(from.realizers[a]) {
            allowed[x] &= to.realizers[b];
        }
    }
    let candidates: Vec<Vec<usize>> = allowed.iter().map(|&m| members(m).collect()).collect();
    let search = MapSearch::with_candidates(candidates.clone());
    let searched = search.space();
    search.check_bound("realizer search", bound)?;
    let mut realizer = None;
    from.base.search_vfunctors(&to.base, candidates, &mut |g| {
        realizer = Some(g.to_vec());
        ControlFlow::Break(())
    });
    Ok(TrackResult { realizer, searched })
}

/// Whether the base morphism `g` tracks `f`.
pub fn tracks(g: &[usize], f: &[usize], from: &Assembly, to: &Assembly) -> bool {
    f.iter()
        .enumerate()
        .all(|(a, &b)| members(from.realizers[a]).all(|x| to.realizers[b] & (1 << g[x]) != 0))
}

/// Result of [`assm_exponential`].
#[derive(Clone, Debug)]
pub struct AssmExponential {
    pub object: Assembly,
    /// The tracked maps `A → B`, indexed like `object`.
    pub maps: Vec<Vec<usize>>,
    pub base_exp: Exponential,
}

impl AssmExponential {
    /// The evaluation `C × A → B` with its realizer, the base evaluation.
    pub fn eval(&self, x: &Assembly) -> Result<(Assembly, Vec<usize>, Vec<usize>)> {
        let prod = self.object.product(x)?;
        let n = x.len();
        let f = (0..prod.len()).map(|k| self.maps[k / n][k % n]).collect();
        Ok((prod, f, self.base_exp.eval.map.clone()))
    }
}

/// `(C, Y^X, E_C)` with `C` the tracked maps and `E_C(f)` the functors that
/// track `f`.
pub fn assm_exponential(x: &Assembly, y: &Assembly, bound: u128) -> Result<AssmExponential> {
    let e = vcat_exponential(&x.base, &y.base, bound)?;
    if e.object.len() > MAX_REALIZER_CARRIER {
        return Err(EquilogError::BoundExceeded {
            what: "assembly base carrier".into(),
            needed: e.object.len() as u128,
            bound: MAX_REALIZER_CARRIER as u128,
        });
    }
    let search = MapSearch::new(x.len(), y.len());
    search.check_bound("assembly map enumeration", bound)?;
    let mut maps = Vec::new();
    let mut real = Vec::new();
    for f in search.collect() {
        let mask = e
            .functors
            .iter()
            .enumerate()
            .filter(|(_, g)| tracks(g, &f, x, y))
            .fold(0u64, |m, (i, _)| m | (1 << i));
        if mask != 0 {
            maps.push(f);
            real.push(mask);
        }
    }
    let elems = maps
        .iter()
        .map(|f| {
            let imgs: Vec<&str> = f.iter().map(|&b| y.elems[b].as_str()).collect();
            format!("[{}]", imgs.join(","))
        })
        .collect();
    Ok(AssmExponential {
        object: Assembly::from_masks(elems, e.object.clone(), real),
        maps,
        base_exp: e,
    })
}

/// Quotient of `A` by the equivalence generated by overlapping realizer
/// sets, with `E([a])` the union over the class. Returns the unit `A → A'`.
pub fn modest_reflection(x: &Assembly) -> (Assembly, Vec<usize>) {
    let n = x.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| x.realizers[a] & x.realizers[b] != 0)
        .collect();
    let part = Partition::closure_with(&Partition::discrete(n), &pairs);
    let blocks = part.blocks();
    let elems = blocks
        .iter()
        .map(|bl| {
            bl.iter()
                .map(|&a| x.elems[a].as_str())
                .collect::<Vec<_>>()
                .join("~")
        })
        .collect();
    let real = blocks
        .iter()
        .map(|bl| bl.iter().fold(0u64, |m, &a| m | x.realizers[a]))
        .collect();
    let unit = part.labels().to_vec();
    (Assembly::from_masks(elems, x.base.clone(), real), unit)
}

/// A regular subobject with the cofork it equalizes.
#[derive(Clone, Debug)]
pub struct RegularSubobject {
    pub subset: Vec<usize>,
    pub object: Assembly,
    pub cofork: Cofork,
}

/// `u, v: A → W` whose equalizer is the subobject. Both maps are tracked by
/// the identity of the base.
#[derive(Clone, Debug)]
pub struct Cofork {
    pub target: Assembly,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
}

impl Cofork {
    /// The equalizer of `u` and `v`: the sub-assembly where they agree.
    pub fn equalizer(&self, x: &Assembly) -> (Vec<usize>, Assembly) {
        let subset: Vec<usize> = (0..x.len()).filter(|&a| self.u[a] == self.v[a]).collect();
        let obj = x.restrict(&subset);
        (subset, obj)
    }
}

/// One regular subobject per subset of `A`, each certified by a cofork that
/// is checked to have it as equalizer.
pub fn regular_subobjects(x: &Assembly) -> Result<Vec<RegularSubobject>> {
    let n = x.len();
    if n > 20 {
        return Err(EquilogError::BoundExceeded {
            what: "subset enumeration".into(),
            needed: 1u128 << n,
            bound: 1 << 20,
        });
    }
    let carrier: Vec<usize> = (0..x.base.len()).collect();
    let target = if carrier.is_empty() {
        x.clone()
    } else {
        Assembly::new(
            vec!["0".into(), "1".into()],
            x.base.clone(),
            vec![carrier.clone(), carrier],
        )?
    };
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|&a| mask & (1 << a) != 0).collect();
        let cofork = if x.base.is_empty() {
            // A is empty as well: the only subobject is the identity
            Cofork {
                target: target.clone(),
                u: Vec::new(),
                v: Vec::new(),
            }
        } else {
            Cofork {
                target: target.clone(),
                u: vec![0; n],
                v: (0..n).map(|a| usize::from(mask & (1 << a) == 0)).collect(),
            }
        };
        let id: Vec<usize> = (0..x.base.len()).collect();
        if !tracks(&id, &cofork.u, x, &cofork.target) || !tracks(&id, &cofork.v, x, &cofork.target)
        {
            return Err(EquilogError::Invalid(
                "regular mono certificate not found at bound".into(),
            ));
        }
        let (eq_subset, object) = cofork.equalizer(x);
        if eq_subset != subset {
            return Err(EquilogError::Invalid(
                "regular mono certificate not found at bound".into(),
            ));
        }
        out.push(RegularSubobject {
            subset,
            object,
            cofork,
        });
    }
    Ok(out)
}

/// Modest set to partial equilogical object: `x ≡ x'` iff some `E(a)`
/// contains both.
pub fn mdst_to_pequ(x: &Assembly) -> Result<PEquObj> {
    if !x.is_modest() {
        return Err(EquilogError::NotModest);
    }
    let mut labels: Vec<Option<usize>> = vec![None; x.base.len()];
    for a in 0..x.len() {
        for r in members(x.realizers[a]) {
            labels[r] = Some(a);
        }
    }
    PEquObj::new(x.base.clone(), Per::from_labels(&labels))
}

/// Partial equilogical object to modest set: `A` the classes of the
/// relation, `E([x]) = [x]`.
pub fn pequ_to_mdst(p: &PEquObj) -> Assembly {
    let blocks = p.per().blocks();
    let elems = blocks
        .iter()
        .map(|bl| {
            let names: Vec<&str> = bl.iter().map(|&i| p.base().name(i)).collect();
            format!("[{}]", names.join(","))
        })
        .collect();
    let real = blocks
        .iter()
        .map(|bl| bl.iter().fold(0u64, |m, &i| m | (1 << i)))
        .collect();
    Assembly::from_masks(elems, p.base().clone(), real)
}

/// The class of a realizer of a modest-set morphism.
pub fn mdst_morph_to_pequ(from: &Assembly, to: &Assembly, realizer: &[usize]) -> Result<PMorph> {
    PMorph::new(mdst_to_pequ(from)?, mdst_to_pequ(to)?, realizer.to_vec())
}

/// The map `A → B` a morphism of partial equilogical objects induces on
/// the associated modest sets.
pub fn pequ_morph_to_mdst(f: &PMorph) -> Vec<usize> {
    let from = f.dom.per().representatives();
    from.into_iter()
        .map(|x| f.cod.per().block(f.rep[x]).expect("equivariant"))
        .collect()
}

/// A bijection `A → B` tracked in both directions, if one exists.
pub fn assm_isomorphism(a: &Assembly, b: &Assembly, bound: u128) -> Result<Option<Vec<usize>>> {
    if a.len() != b.len() {
        return Ok(None);
    }
    for perm in crate::search::permutations(a.len()) {
        let mut inv = vec![0; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        if track_check(&perm, a, b, bound)?.realizer.is_some()
            && track_check(&inv, b, a, bound)?.realizer.is_some()
        {
            return Ok(Some(perm));
        }
    }
    Ok(None)
}
