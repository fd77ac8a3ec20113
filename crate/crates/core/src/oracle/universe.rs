//! Bounded universes of test objects, reduced up to isomorphism, and random
//! instance generators.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::injectivity::injectivity_test;
use super::SweepConfig;
use crate::assembly::Assembly;
use crate::base::{Base, BaseCode, BaseKind};
use crate::equ::EquObj;
use crate::error::{EquilogError, Result};
use crate::pequ::PEquObj;
use crate::quantale::{QValue, Quantale, QuantaleOps};
use crate::relation::{all_partitions, all_pers, Partition};
use crate::search::permutations;
use crate::spaces::{subset_of, FinApp, FinTop};
use crate::vcat::{default_names, quotient_closure, VCatObj};

fn min_over_perms<T: Ord>(n: usize, code: impl Fn(&[usize]) -> T) -> T {
    permutations(n)
        .iter()
        .map(|p| code(p))
        .min()
        .expect("at least the identity")
}

/// All valid structures on `n` points with entries from `values`, one per
/// isomorphism class.
pub fn vcat_structures(
    q: Quantale,
    n: usize,
    values: &[QValue],
    bound: u128,
) -> Result<Vec<VCatObj>> {
    let diag: Vec<QValue> = values
        .iter()
        .copied()
        .filter(|&v| q.le(q.unit(), v))
        .collect();
    let off = n * n.saturating_sub(1);
    let space = (diag.len() as u128).checked_pow(n as u32).and_then(|d| {
        (values.len() as u128)
            .checked_pow(off as u32)
            .and_then(|o| d.checked_mul(o))
    });
    match space {
        Some(s) if s <= bound => {}
        _ => {
            return Err(EquilogError::BoundExceeded {
                what: format!("{q} structures on {n} points"),
                needed: space.unwrap_or(u128::MAX),
                bound,
            })
        }
    }
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let choices: Vec<&[QValue]> = cells
        .iter()
        .map(|&(i, j)| if i == j { &diag[..] } else { values })
        .collect();
    let mut idx = vec![0usize; cells.len()];
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    if choices.iter().any(|c| c.is_empty()) {
        return Ok(out);
    }
    loop {
        let x = VCatObj::from_fn(q, default_names(n), |i, j| {
            choices[i * n + j][idx[i * n + j]]
        });
        if x.is_valid() {
            let code = min_over_perms(n, |p| x.permute(p).values().to_vec());
            if seen.insert(code) {
                out.push(x);
            }
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Structures on `0..=max_carrier` points.
pub fn vcat_universe(q: Quantale, cfg: &SweepConfig) -> Result<Vec<VCatObj>> {
    let values = cfg.values_for(q);
    let mut out = Vec::new();
    for n in 0..=cfg.max_carrier {
        out.extend(vcat_structures(q, n, &values, cfg.bound)?);
    }
    Ok(out)
}

/// Base objects of the given kind. Finite topologies are the Alexandroff
/// topologies of preorders; finite approach spaces come from metrics on the
/// value grid.
pub fn base_universe(kind: BaseKind, cfg: &SweepConfig) -> Result<Vec<Base>> {
    Ok(match kind {
        BaseKind::VCat(q) => vcat_universe(q, cfg)?.into_iter().map(Base::VCat).collect(),
        BaseKind::Top => vcat_universe(Quantale::Two, cfg)?
            .iter()
            .map(|x| Base::Top(FinTop::alexandroff(x)))
            .collect(),
        BaseKind::App => vcat_universe(Quantale::PlusReversed, cfg)?
            .iter()
            .map(|d| FinApp::from_metric(d).map(Base::App))
            .collect::<Result<_>>()?,
    })
}

/// An isomorphism invariant that separates isomorphism classes.
pub fn canonical_equ(e: &EquObj) -> (BaseCode, Vec<usize>) {
    min_over_perms(e.len(), |p| {
        (
            e.base().permute(p).code(),
            e.equiv().permute(p).labels().to_vec(),
        )
    })
}

/// Equilogical objects over [`base_universe`], one per isomorphism class.
pub fn equ_universe(kind: BaseKind, cfg: &SweepConfig) -> Result<Vec<EquObj>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for base in base_universe(kind, cfg)? {
        for p in all_partitions(base.len()) {
            let e = EquObj::new(base.clone(), p)?;
            if seen.insert(canonical_equ(&e)) {
                out.push(e);
            }
        }
    }
    Ok(out)
}

/// Members of [`vcat_universe`] that pass [`injectivity_test`].
pub fn injective_universe(q: Quantale, cfg: &SweepConfig) -> Result<Vec<VCatObj>> {
    let mut out = Vec::new();
    for z in vcat_universe(q, cfg)? {
        if injectivity_test(&z, cfg)?.passed {
            out.push(z);
        }
    }
    Ok(out)
}

/// Partial equilogical objects over injective bases with every partial
/// equivalence relation, one per isomorphism class.
pub fn pequ_universe(q: Quantale, cfg: &SweepConfig) -> Result<Vec<PEquObj>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for base in injective_universe(q, cfg)? {
        for per in all_pers(base.len()) {
            let code = min_over_perms(base.len(), |p| {
                (
                    base.permute(p).values().to_vec(),
                    per.permute(p).labels().to_vec(),
                )
            });
            if seen.insert(code) {
                out.push(PEquObj::new(base.clone(), per)?);
            }
        }
    }
    Ok(out)
}

/// Assemblies with at most `max_elems` elements over injective bases, one
/// per isomorphism class of (base, multiset of realizer sets).
pub fn assembly_universe(
    q: Quantale,
    max_elems: usize,
    modest_only: bool,
    cfg: &SweepConfig,
) -> Result<Vec<Assembly>> {
    let mut out = Vec::new();
    for base in injective_universe(q, cfg)? {
        let n = base.len();
        let masks: Vec<u64> = (1..(1u64 << n)).collect();
        let mut seen = HashSet::new();
        for k in 0..=max_elems {
            let mut choice = vec![0usize; k];
            loop {
                let sets: Vec<u64> = choice.iter().map(|&c| masks[c]).collect();
                let disjoint = (0..k).all(|i| (0..i).all(|j| sets[i] & sets[j] == 0));
                if !modest_only || disjoint {
                    let code = min_over_perms(n, |p| {
                        let mut permuted: Vec<u64> = sets
                            .iter()
                            .map(|&m| {
                                (0..n)
                                    .filter(|&new| m & (1 << p[new]) != 0)
                                    .fold(0, |acc, b| acc | 1 << b)
                            })
                            .collect();
                        permuted.sort_unstable();
                        (base.permute(p).values().to_vec(), permuted)
                    });
                    if seen.insert(code) {
                        let elems = (0..k).map(|i| format!("a{i}")).collect();
                        let realizers = sets
                            .iter()
                            .map(|&m| (0..n).filter(|&x| m & (1 << x) != 0).collect())
                            .collect();
                        out.push(Assembly::new(elems, base.clone(), realizers)?);
                    }
                }
                let mut i = 0;
                loop {
                    if i == k {
                        break;
                    }
                    choice[i] += 1;
                    if choice[i] < masks.len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == k {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// A random valid structure: random entries, made transitive by closure.
pub fn random_vcat<R: Rng>(q: Quantale, n: usize, values: &[QValue], rng: &mut R) -> VCatObj {
    let top = q.top();
    let entries: Vec<QValue> = (0..n * n)
        .map(|_| *values.choose(rng).expect("nonempty value set"))
        .collect();
    let raw = VCatObj::from_fn(q, default_names(n), |i, j| {
        if i == j {
            top
        } else {
            entries[i * n + j]
        }
    });
    let id: Vec<usize> = (0..n).collect();
    quotient_closure(&raw, &id, n)
        .expect("identity is onto")
        .with_names(default_names(n))
        .expect("same size")
}

pub fn random_metric<R: Rng>(n: usize, values: &[QValue], rng: &mut R) -> VCatObj {
    random_vcat(Quantale::PlusReversed, n, values, rng)
}

/// The topology generated by a few random subsets.
pub fn random_topology<R: Rng>(n: usize, rng: &mut R) -> FinTop {
    let count = rng.gen_range(0..=n + 1);
    let subbase: Vec<u32> = (0..count)
        .map(|_| {
            let elems: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            subset_of(&elems)
        })
        .collect();
    FinTop::generated(default_names(n), &subbase).expect("generated topology")
}

/// A random equivalence relation on the given base.
pub fn random_equ<R: Rng>(base: impl Into<Base>, rng: &mut R) -> EquObj {
    let base = base.into();
    let n = base.len();
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n.max(1))).collect();
    EquObj::new(base, Partition::from_labels(&labels)).expect("sizes agree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preorder_classes() {
        let counts: Vec<usize> = (0..=4)
            .map(|n| {
                vcat_structures(Quantale::Two, n, &[QValue::BOT, QValue::TOP], 1 << 20)
                    .unwrap()
                    .len()
            })
            .collect();
        assert_eq!(counts, vec![1, 1, 3, 9, 33]);
    }

    #[test]
    fn equ_universe_is_iso_reduced() {
        let cfg = SweepConfig::with_max_carrier(2).unwrap();
        let u = equ_universe(BaseKind::ORD, &cfg).unwrap();
        // empty, point, and 3 preorders on 2 points with 2 relations each
        assert_eq!(u.len(), 1 + 1 + 6);
        let top = equ_universe(BaseKind::Top, &cfg).unwrap();
        assert_eq!(top.len(), u.len());
    }

    #[test]
    fn injective_preorders() {
        let cfg = SweepConfig::default();
        let inj = injective_universe(Quantale::Two, &cfg).unwrap();
        // point; 2-chain, 2-clique; 3-chain, a doubled top, a doubled bottom, 3-clique
        assert_eq!(inj.len(), 7);
        assert!(inj.iter().all(|z| !z.is_empty()));
    }
}
