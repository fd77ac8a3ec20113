//! Adjunctions between the transfer functors, checked as hom-set equalities.
//!
//! Both functors of each pair keep carriers and equivalence relations, so a
//! hom-bijection natural in both slots is the identity on underlying maps.
//! The check is therefore: the same maps are morphisms `FA → B` and
//! `A → GB`, the identity maps serving as unit and counit are morphisms,
//! and so are the identity maps making up the triangle identities.

use std::collections::HashSet;

use rayon::prelude::*;

use super::homs::base_maps;
use super::{describe_equ, equ_universe, SweepConfig, Verdict};
use crate::equ::EquObj;
use crate::error::{EquilogError, Result};
use crate::spaces::{adjunction_transfer, Direction, Transfer};

fn equ_maps(a: &EquObj, b: &EquObj, bound: u128) -> Result<Vec<Vec<usize>>> {
    let eqv = |i: usize, fi: usize, j: usize, fj: usize| !a.related(i, j) || b.related(fi, fj);
    base_maps(a.base(), b.base(), &eqv, bound)
}

fn is_morphism(a: &EquObj, b: &EquObj, map: &[usize]) -> bool {
    a.base().is_morphism(b.base(), map)
        && (0..a.len()).all(|i| (0..a.len()).all(|j| !a.related(i, j) || b.related(map[i], map[j])))
}

/// Universes for the source and target of the functor in direction `left`.
pub fn adjunction_universes(
    which: Transfer,
    left: Direction,
    cfg: &SweepConfig,
) -> Result<(Vec<EquObj>, Vec<EquObj>)> {
    let (src, dst) = which.kinds(left);
    Ok((equ_universe(src, cfg)?, equ_universe(dst, cfg)?))
}

/// Treats the transfer in direction `left` as the left adjoint `F` and the
/// opposite one as `G`, and checks `hom(FA, B) = hom(A, GB)` with unit,
/// counit and triangle identities for every `A` in `sources` and `B` in
/// `targets`.
pub fn verify_adjunction(
    which: Transfer,
    left: Direction,
    sources: &[EquObj],
    targets: &[EquObj],
    cfg: &SweepConfig,
) -> Result<Verdict> {
    let (src, dst) = which.kinds(left);
    if let Some(a) = sources.iter().find(|a| a.kind() != src) {
        return Err(EquilogError::BaseMismatch {
            expected: src.to_string(),
            found: a.kind().to_string(),
        });
    }
    if let Some(b) = targets.iter().find(|b| b.kind() != dst) {
        return Err(EquilogError::BaseMismatch {
            expected: dst.to_string(),
            found: b.kind().to_string(),
        });
    }
    let f = |a: &EquObj| adjunction_transfer(a, which, left);
    let g = |b: &EquObj| adjunction_transfer(b, which, left.flip());
    let bound = cfg.bound;
    let clock = cfg.clock();
    let per_source: Vec<Result<(usize, Option<String>)>> = sources
        .par_iter()
        .map(|a| {
            clock.check("adjunction sweep")?;
            let fa = f(a)?;
            let gfa = g(&fa)?;
            let fgfa = f(&gfa)?;
            let id: Vec<usize> = (0..a.len()).collect();
            let preserved = fa.len() == a.len() && fa.equiv() == a.equiv();
            if !preserved {
                return Ok((1, Some(format!("F changes the carrier or relation of {}", describe_equ(a)))));
            }
            if !is_morphism(a, &gfa, &id) {
                return Ok((1, Some(format!("unit at {} is not a morphism", describe_equ(a)))));
            }
            if !is_morphism(&fa, &fgfa, &id) || !is_morphism(&fgfa, &fa, &id) {
                return Ok((1, Some(format!("triangle identity fails at {}", describe_equ(a)))));
            }
            let mut checked = 1;
            for b in targets {
                let gb = g(b)?;
                checked += 1;
                if gb.len() != b.len() || gb.equiv() != b.equiv() {
                    return Ok((checked, Some(format!("G changes the carrier or relation of {}", describe_equ(b)))));
                }
                let fgb = f(&gb)?;
                let idb: Vec<usize> = (0..b.len()).collect();
                if !is_morphism(&fgb, b, &idb) {
                    return Ok((checked, Some(format!("counit at {} is not a morphism", describe_equ(b)))));
                }
                let left_maps: HashSet<Vec<usize>> = equ_maps(&fa, b, bound)?.into_iter().collect();
                let right_maps: HashSet<Vec<usize>> = equ_maps(a, &gb, bound)?.into_iter().collect();
                if left_maps != right_maps {
                    let (map, side) = match left_maps.difference(&right_maps).min() {
                        Some(m) => (m.clone(), "FA → B but not A → GB"),
                        None => (
                            right_maps.difference(&left_maps).min().expect("sets differ").clone(),
                            "A → GB but not FA → B",
                        ),
                    };
                    return Ok((
                        checked,
                        Some(format!(
                            "hom-sets differ for A = {}, B = {}: {map:?} is a morphism {side} ({} vs {} maps)",
                            describe_equ(a),
                            describe_equ(b),
                            left_maps.len(),
                            right_maps.len()
                        )),
                    ));
                }
            }
            Ok((checked, None))
        })
        .collect();
    let mut checked = 0;
    for o in per_source {
        let (n, cert) = o?;
        checked += n;
        if let Some(c) = cert {
            return Ok(Verdict::fail(cfg.max_carrier, checked, c));
        }
    }
    Ok(Verdict::pass(cfg.max_carrier, checked))
}
