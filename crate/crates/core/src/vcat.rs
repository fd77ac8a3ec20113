//! Finite V-categories for the identity monad: preorders (`V = 2`),
//! birelations (`V = 2²`), Lawvere metric spaces (`V = P₊`) and ultrametric
//! spaces (`V = P_max`).

use std::fmt;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{EquilogError, Result};
use crate::quantale::{QValue, Quantale, QuantaleOps};
use crate::search::{MapSearch, DEFAULT_SEARCH_BOUND};

/// A finite carrier with a `V`-valued structure matrix `a(x, y)`.
///
/// Construction does not enforce the axioms: quotient closure legitimately
/// starts from arbitrary `V`-relations. Use [`VCatObj::verify`] or
/// [`VCatObj::is_valid`] before treating a value as a V-category.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VCatObj {
    quantale: Quantale,
    names: Vec<String>,
    hom: Vec<QValue>,
}

impl VCatObj {
    pub fn new(quantale: Quantale, names: Vec<String>, matrix: Vec<Vec<QValue>>) -> Result<Self> {
        let n = names.len();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(EquilogError::Invalid(format!(
                "structure matrix must be {n}x{n}"
            )));
        }
        check_names(&names)?;
        let hom: Vec<QValue> = matrix.into_iter().flatten().collect();
        if let Some(v) = hom.iter().find(|v| !quantale.contains(**v)) {
            return Err(EquilogError::Invalid(format!(
                "value {v} does not belong to {quantale}"
            )));
        }
        Ok(VCatObj {
            quantale,
            names,
            hom,
        })
    }

    pub fn from_fn(
        quantale: Quantale,
        names: Vec<String>,
        f: impl Fn(usize, usize) -> QValue,
    ) -> Self {
        let n = names.len();
        let hom = (0..n * n).map(|k| f(k / n, k % n)).collect();
        VCatObj {
            quantale,
            names,
            hom,
        }
    }

    /// `k` on the diagonal, `⊥` elsewhere.
    pub fn discrete(quantale: Quantale, names: Vec<String>) -> Self {
        Self::from_fn(quantale, names, |i, j| {
            if i == j {
                quantale.unit()
            } else {
                quantale.bottom()
            }
        })
    }

    /// `⊤` everywhere.
    pub fn indiscrete(quantale: Quantale, names: Vec<String>) -> Self {
        Self::from_fn(quantale, names, |_, _| quantale.top())
    }

    pub fn point(quantale: Quantale) -> Self {
        Self::discrete(quantale, vec!["*".into()])
    }

    pub fn empty(quantale: Quantale) -> Self {
        Self::discrete(quantale, Vec::new())
    }

    /// The preorder on `names` with `i ≤ j` iff `le(i, j)` (reflexivity is added).
    pub fn preorder(names: Vec<String>, le: impl Fn(usize, usize) -> bool) -> Self {
        Self::from_fn(Quantale::Two, names, |i, j| {
            QValue::Bool(i == j || le(i, j))
        })
    }

    /// The chain `x0 ≤ x1 ≤ … ≤ x(n-1)`.
    pub fn chain(n: usize) -> Self {
        Self::preorder(default_names(n), |i, j| i <= j)
    }

    pub fn antichain(n: usize) -> Self {
        Self::discrete(Quantale::Two, default_names(n))
    }

    /// A `P₊` object from a numeric distance table.
    pub fn metric(names: Vec<String>, d: Vec<Vec<QValue>>) -> Result<Self> {
        Self::new(Quantale::PlusReversed, names, d)
    }

    pub fn quantale(&self) -> Quantale {
        self.quantale
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> QValue {
        self.hom[i * self.names.len() + j]
    }

    pub fn matrix(&self) -> Vec<Vec<QValue>> {
        let n = self.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.len() {
            return Err(EquilogError::Invalid("wrong number of names".into()));
        }
        check_names(&names)?;
        self.names = names;
        Ok(self)
    }

    /// The induced point preorder: `x ≤ y` iff `k ≤ a(x, y)`.
    pub fn point_le(&self, i: usize, j: usize) -> bool {
        self.quantale.le(self.quantale.unit(), self.get(i, j))
    }

    pub fn point_equiv(&self, i: usize, j: usize) -> bool {
        self.point_le(i, j) && self.point_le(j, i)
    }

    pub fn verify(&self) -> VCatReport {
        let q = self.quantale;
        let n = self.len();
        let reflexivity = (0..n)
            .find(|&x| !q.le(q.unit(), self.get(x, x)))
            .map(|x| self.names[x].clone());
        let mut transitivity = None;
        'outer: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if !q.le(q.tensor(self.get(x, y), self.get(y, z)), self.get(x, z)) {
                        transitivity = Some([
                            self.names[x].clone(),
                            self.names[y].clone(),
                            self.names[z].clone(),
                        ]);
                        break 'outer;
                    }
                }
            }
        }
        VCatReport {
            reflexivity_witness: reflexivity,
            transitivity_witness: transitivity,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.verify().passed()
    }

    /// Separated: the induced point preorder is antisymmetric.
    pub fn is_separated(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| i == j || !self.point_equiv(i, j)))
    }

    /// `a(x, x') ≤ b(f x, f x')` for all `x, x'`.
    pub fn is_vfunctor(&self, cod: &VCatObj, map: &[usize]) -> bool {
        self.quantale == cod.quantale
            && map.len() == self.len()
            && map.iter().all(|&y| y < cod.len())
            && (0..self.len()).all(|i| {
                (0..self.len()).all(|j| self.quantale.le(self.get(i, j), cod.get(map[i], map[j])))
            })
    }

    /// `a(x, x') = b(f x, f x')` for all `x, x'` (|-|-initiality of a single map).
    pub fn is_initial_map(&self, cod: &VCatObj, map: &[usize]) -> bool {
        self.is_vfunctor(cod, map)
            && (0..self.len())
                .all(|i| (0..self.len()).all(|j| cod.get(map[i], map[j]) == self.get(i, j)))
    }

    /// `map` is a bijection that preserves and reflects the structure.
    pub fn is_iso_via(&self, cod: &VCatObj, map: &[usize]) -> bool {
        if self.len() != cod.len() {
            return false;
        }
        let mut hit = vec![false; cod.len()];
        for &y in map {
            if y >= cod.len() || hit[y] {
                return false;
            }
            hit[y] = true;
        }
        self.is_initial_map(cod, map)
    }

    /// All VFunctors `self → cod`, in lexicographic order.
    pub fn vfunctors_to(&self, cod: &VCatObj, bound: u128) -> Result<Vec<Vec<usize>>> {
        self.check_same_quantale(cod)?;
        let search = MapSearch::new(self.len(), cod.len());
        search.check_bound("VFunctor enumeration", bound)?;
        let ok = self.pair_check(cod);
        Ok(search.pairwise(&ok).collect())
    }

    /// The pairwise VFunctor constraint, for use with [`MapSearch`].
    pub fn pair_check<'a>(
        &'a self,
        cod: &'a VCatObj,
    ) -> impl Fn(usize, usize, usize, usize) -> bool + 'a {
        let q = self.quantale;
        move |i, fi, j, fj| {
            q.le(self.get(i, j), cod.get(fi, fj)) && q.le(self.get(j, i), cod.get(fj, fi))
        }
    }

    /// Visits VFunctors `self → cod` with `f(i) ∈ candidates[i]`.
    pub fn search_vfunctors(
        &self,
        cod: &VCatObj,
        candidates: Vec<Vec<usize>>,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> bool {
        let ok = self.pair_check(cod);
        MapSearch::with_candidates(candidates)
            .pairwise(&ok)
            .run(visit)
    }

    pub fn check_same_quantale(&self, other: &VCatObj) -> Result<()> {
        if self.quantale != other.quantale {
            return Err(EquilogError::QuantaleMismatch(
                self.quantale.to_string(),
                other.quantale.to_string(),
            ));
        }
        Ok(())
    }

    /// Cartesian product with componentwise meet; element `(i, j)` has index
    /// `i * other.len() + j`.
    pub fn product(&self, other: &VCatObj) -> Result<VCatObj> {
        self.check_same_quantale(other)?;
        let m = other.len();
        let q = self.quantale;
        let names = (0..self.len() * m)
            .map(|k| format!("({},{})", self.names[k / m], other.names[k % m]))
            .collect();
        Ok(VCatObj::from_fn(q, names, |a, b| {
            q.meet(self.get(a / m, b / m), other.get(a % m, b % m))
        }))
    }

    /// Disjoint union; `⊥` between the summands.
    pub fn coproduct(&self, other: &VCatObj) -> Result<VCatObj> {
        self.check_same_quantale(other)?;
        let n = self.len();
        let q = self.quantale;
        let names = self
            .names
            .iter()
            .map(|s| format!("inl({s})"))
            .chain(other.names.iter().map(|s| format!("inr({s})")))
            .collect();
        Ok(VCatObj::from_fn(q, names, |a, b| match (a < n, b < n) {
            (true, true) => self.get(a, b),
            (false, false) => other.get(a - n, b - n),
            _ => q.bottom(),
        }))
    }

    /// The initial structure along the inclusion of `subset`.
    pub fn restrict(&self, subset: &[usize]) -> VCatObj {
        let names = subset.iter().map(|&i| self.names[i].clone()).collect();
        VCatObj::from_fn(self.quantale, names, |a, b| self.get(subset[a], subset[b]))
    }

    /// Relabels along `perm`: new element `k` is old element `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> VCatObj {
        self.restrict(perm)
    }

    /// Structure values in row-major order.
    pub fn values(&self) -> &[QValue] {
        &self.hom
    }
}

impl fmt::Display for VCatObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [", self.quantale)?;
        for i in 0..self.len() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}:", self.names[i])?;
            for j in 0..self.len() {
                write!(f, " {}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

fn check_names(names: &[String]) -> Result<()> {
    for (i, a) in names.iter().enumerate() {
        if names[..i].contains(a) {
            return Err(EquilogError::Invalid(format!(
                "duplicate element name {a:?}"
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct VCatReport {
    pub reflexivity_witness: Option<String>,
    pub transitivity_witness: Option<[String; 3]>,
}

impl VCatReport {
    pub fn passed(&self) -> bool {
        self.reflexivity_witness.is_none() && self.transitivity_witness.is_none()
    }
}

/// A structure-preserving map between V-categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VFunctor {
    pub dom: VCatObj,
    pub cod: VCatObj,
    pub map: Vec<usize>,
}

impl VFunctor {
    pub fn new(dom: VCatObj, cod: VCatObj, map: Vec<usize>) -> Result<Self> {
        if !dom.is_vfunctor(&cod, &map) {
            return Err(EquilogError::Invalid("map is not a VFunctor".into()));
        }
        Ok(VFunctor { dom, cod, map })
    }

    pub fn identity(x: &VCatObj) -> Self {
        VFunctor {
            dom: x.clone(),
            cod: x.clone(),
            map: (0..x.len()).collect(),
        }
    }

    pub fn is_initial(&self) -> bool {
        self.dom.is_initial_map(&self.cod, &self.map)
    }
}

/// One map of a source for [`initial_structure`].
#[derive(Clone, Copy, Debug)]
pub struct SourceMap<'a> {
    pub map: &'a [usize],
    pub cod: &'a VCatObj,
}

/// The initial (largest) structure on `names` making every source map a
/// VFunctor: `a(x, x') = ⋀ᵢ bᵢ(fᵢ x, fᵢ x')`. An empty source yields the
/// indiscrete structure.
pub fn initial_structure(
    quantale: Quantale,
    names: Vec<String>,
    source: &[SourceMap<'_>],
) -> Result<VCatObj> {
    check_names(&names)?;
    let n = names.len();
    for s in source {
        if s.cod.quantale != quantale {
            return Err(EquilogError::QuantaleMismatch(
                quantale.to_string(),
                s.cod.quantale.to_string(),
            ));
        }
        if s.map.len() != n || s.map.iter().any(|&y| y >= s.cod.len()) {
            return Err(EquilogError::Invalid(
                "source map does not fit the carrier".into(),
            ));
        }
    }
    Ok(VCatObj::from_fn(quantale, names, |i, j| {
        quantale.meet_all(source.iter().map(|s| s.cod.get(s.map[i], s.map[j])))
    }))
}

/// The final structure on `0..m` along a surjection `p`: the pushforward
/// `b₀(y, y') = ⋁{a(x, x') | p x = y, p x' = y'}`, joined with `k` on the
/// diagonal and closed under `⊗`-composition by repeated squaring.
///
/// Termination relies on integrality, which holds for all built-in quantales.
pub fn quotient_closure(x: &VCatObj, p: &[usize], m: usize) -> Result<VCatObj> {
    if p.len() != x.len() || p.iter().any(|&y| y >= m) {
        return Err(EquilogError::Invalid("quotient map does not fit".into()));
    }
    let mut hit = vec![false; m];
    for &y in p {
        hit[y] = true;
    }
    if hit.iter().any(|h| !h) {
        return Err(EquilogError::NotOnto);
    }
    let q = x.quantale;
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, &y) in p.iter().enumerate() {
        members[y].push(i);
    }
    let names: Vec<String> = members
        .iter()
        .map(|ms| {
            ms.iter()
                .map(|&i| x.names[i].as_str())
                .collect::<Vec<_>>()
                .join("~")
        })
        .collect();
    let mut b = vec![q.bottom(); m * m];
    for i in 0..x.len() {
        for j in 0..x.len() {
            let cell = &mut b[p[i] * m + p[j]];
            *cell = q.join(*cell, x.get(i, j));
        }
    }
    for y in 0..m {
        b[y * m + y] = q.join(b[y * m + y], q.unit());
    }
    loop {
        let mut next = b.clone();
        for i in 0..m {
            for k in 0..m {
                let bik = b[i * m + k];
                if bik == q.bottom() {
                    continue;
                }
                for j in 0..m {
                    let cell = &mut next[i * m + j];
                    *cell = q.join(*cell, q.tensor(bik, b[k * m + j]));
                }
            }
        }
        if next == b {
            break;
        }
        b = next;
    }
    Ok(VCatObj {
        quantale: q,
        names,
        hom: b,
    })
}

/// The quotient by `x ≃ x'` (`k ≤ a(x, x')` and `k ≤ a(x', x)`) with the final
/// structure, and the projection onto it.
pub fn separated_reflection(x: &VCatObj) -> (VCatObj, VFunctor) {
    let n = x.len();
    let mut class = vec![usize::MAX; n];
    let mut m = 0;
    for i in 0..n {
        if class[i] != usize::MAX {
            continue;
        }
        for j in i..n {
            if class[j] == usize::MAX && x.point_equiv(i, j) {
                class[j] = m;
            }
        }
        m += 1;
    }
    let sep = quotient_closure(x, &class, m).expect("class map is onto");
    let proj = VFunctor {
        dom: x.clone(),
        cod: sep.clone(),
        map: class,
    };
    (sep, proj)
}

/// The presheaf object `X̂` of all `φ: X → V` with `a(x', x) ⊗ φ(x) ≤ φ(x')`,
/// structured by `[φ, ψ] = ⋀ₓ hom(φ x, ψ x)`, and the Yoneda embedding
/// `ŷ(x) = a(−, x)`. Only available for the finite quantales.
pub fn presheaf_embed(x: &VCatObj) -> Result<(VCatObj, VFunctor)> {
    let q = x.quantale;
    let carrier = q.carrier().ok_or(EquilogError::InfinitePresheaf)?;
    let n = x.len();
    let space = (carrier.len() as u128).saturating_pow(n as u32);
    if space > DEFAULT_SEARCH_BOUND {
        return Err(EquilogError::BoundExceeded {
            what: "presheaf enumeration".into(),
            needed: space,
            bound: DEFAULT_SEARCH_BOUND,
        });
    }
    let ok = |i: usize, fi: usize, j: usize, fj: usize| {
        q.le(q.tensor(x.get(j, i), carrier[fi]), carrier[fj])
            && q.le(q.tensor(x.get(i, j), carrier[fj]), carrier[fi])
    };
    let presheaves: Vec<Vec<QValue>> = MapSearch::new(n, carrier.len())
        .pairwise(&ok)
        .collect()
        .into_iter()
        .map(|f| f.into_iter().map(|k| carrier[k]).collect())
        .collect();
    let names: Vec<String> = presheaves.iter().map(|phi| presheaf_name(x, phi)).collect();
    let hat = VCatObj::from_fn(q, names, |a, b| {
        q.meet_all((0..n).map(|z| q.hom(presheaves[a][z], presheaves[b][z])))
    });
    let yoneda: Vec<usize> = (0..n)
        .map(|xi| {
            let column: Vec<QValue> = (0..n).map(|z| x.get(z, xi)).collect();
            presheaves
                .iter()
                .position(|phi| *phi == column)
                .expect("representables are presheaves")
        })
        .collect();
    let embed = VFunctor {
        dom: x.clone(),
        cod: hat.clone(),
        map: yoneda,
    };
    Ok((hat, embed))
}

fn presheaf_name(x: &VCatObj, phi: &[QValue]) -> String {
    let q = x.quantale;
    let parts: Vec<String> = phi
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != q.bottom())
        .map(|(i, v)| match q {
            Quantale::Two => x.names[i].clone(),
            _ => format!("{}:{}", x.names[i], v),
        })
        .collect();
    format!("{{{}}}", parts.join(","))
}

/// Result of [`vcat_exponential`].
#[derive(Clone, Debug)]
pub struct Exponential {
    /// `Y^X`: all VFunctors `X → Y`, as maps indexed by the carrier of `X`.
    pub object: VCatObj,
    pub functors: Vec<Vec<usize>>,
    /// `Y^X × X`, with element `(f, x)` at index `f * |X| + x`.
    pub product: VCatObj,
    /// `ev: Y^X × X → Y`.
    pub eval: VFunctor,
}

impl Exponential {
    /// Index of the functor with the given images, if it is one.
    pub fn index_of(&self, images: &[usize]) -> Option<usize> {
        self.functors.iter().position(|f| f == images)
    }
}

/// The exponential `Y^X` with `c(f, g) = ⋀_{x,x'} hom(a(x, x'), b(f x, g x'))`.
///
/// The candidate is not trusted: before returning, the evaluation map is
/// checked to be a VFunctor out of the cartesian product and every entry of
/// `c` is checked to be maximal (raising it to any strictly larger quantale
/// value breaks evaluation). A failure is reported as
/// [`EquilogError::CandidateRejected`].
pub fn vcat_exponential(x: &VCatObj, y: &VCatObj, bound: u128) -> Result<Exponential> {
    x.check_same_quantale(y)?;
    let q = x.quantale;
    let carrier = q.carrier().ok_or_else(|| {
        EquilogError::Invalid(format!(
            "exponentials are only built over finite quantales, not {q}"
        ))
    })?;
    let functors = x.vfunctors_to(y, bound)?;
    let n = x.len();
    let names: Vec<String> = functors
        .iter()
        .map(|f| {
            let imgs: Vec<&str> = f.iter().map(|&j| y.name(j)).collect();
            format!("[{}]", imgs.join(","))
        })
        .collect();
    let object = VCatObj::from_fn(q, names, |a, b| {
        let (f, g) = (&functors[a], &functors[b]);
        q.meet_all(
            (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| q.hom(x.get(i, j), y.get(f[i], g[j]))),
        )
    });
    let product = object.product(x)?;
    let eval_map: Vec<usize> = (0..functors.len() * n)
        .map(|k| functors[k / n][k % n])
        .collect();
    if !product.is_vfunctor(y, &eval_map) {
        return Err(EquilogError::CandidateRejected(
            "evaluation is not a VFunctor".into(),
        ));
    }
    for a in 0..functors.len() {
        for b in 0..functors.len() {
            let c = object.get(a, b);
            for &v in carrier.iter().filter(|&&v| q.le(c, v) && v != c) {
                let still_ok = (0..n).all(|i| {
                    (0..n).all(|j| {
                        q.le(
                            q.meet(v, x.get(i, j)),
                            y.get(functors[a][i], functors[b][j]),
                        )
                    })
                });
                if still_ok {
                    return Err(EquilogError::CandidateRejected(format!(
                        "entry ({}, {}) is not maximal",
                        object.name(a),
                        object.name(b)
                    )));
                }
            }
        }
    }
    let eval = VFunctor {
        dom: product.clone(),
        cod: y.clone(),
        map: eval_map,
    };
    Ok(Exponential {
        object,
        functors,
        product,
        eval,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_chain() -> VCatObj {
        VCatObj::chain(2)
    }

    #[test]
    fn verify_detects_axiom_failures() {
        assert!(two_chain().verify().passed());
        let bad = VCatObj::from_fn(Quantale::Two, default_names(2), |_, _| QValue::BOT);
        assert_eq!(bad.verify().reflexivity_witness.as_deref(), Some("x0"));
        let names: Vec<String> = ["x", "y", "z"].map(String::from).to_vec();
        let d = [[0, 1, 5], [1, 0, 1], [5, 1, 0]];
        let m = VCatObj::from_fn(Quantale::PlusReversed, names, |i, j| QValue::num(d[i][j]));
        let w = m.verify().transitivity_witness.unwrap();
        assert_eq!(w, ["x".to_string(), "y".into(), "z".into()]);
    }

    #[test]
    fn initial_structure_cases() {
        let x = two_chain();
        let id = [0, 1];
        let same = initial_structure(
            Quantale::Two,
            x.names().to_vec(),
            &[SourceMap { map: &id, cod: &x }],
        )
        .unwrap();
        assert_eq!(same, x);

        let pt = VCatObj::point(Quantale::Two);
        let collapsed = initial_structure(
            Quantale::Two,
            default_names(2),
            &[SourceMap {
                map: &[0, 0],
                cod: &pt,
            }],
        )
        .unwrap();
        assert_eq!(
            collapsed,
            VCatObj::indiscrete(Quantale::Two, default_names(2))
        );

        let empty = initial_structure(Quantale::Two, default_names(3), &[]).unwrap();
        assert_eq!(empty, VCatObj::indiscrete(Quantale::Two, default_names(3)));
    }

    #[test]
    fn initial_structure_of_projections_is_product() {
        let c = two_chain();
        let prod = c.product(&c).unwrap();
        let p1: Vec<usize> = (0..4).map(|k| k / 2).collect();
        let p2: Vec<usize> = (0..4).map(|k| k % 2).collect();
        let init = initial_structure(
            Quantale::Two,
            prod.names().to_vec(),
            &[
                SourceMap { map: &p1, cod: &c },
                SourceMap { map: &p2, cod: &c },
            ],
        )
        .unwrap();
        assert_eq!(init, prod);
    }

    #[test]
    fn quotient_closure_examples() {
        let x = two_chain();
        assert_eq!(
            quotient_closure(&x, &[0, 1], 2).unwrap().matrix(),
            x.matrix()
        );

        // 3-cycle x0→x1→x2→x0 becomes indiscrete
        let cyc = VCatObj::from_fn(Quantale::Two, default_names(3), |i, j| {
            QValue::Bool((i + 1) % 3 == j)
        });
        let closed = quotient_closure(&cyc, &[0, 1, 2], 3).unwrap();
        assert!(closed.values().iter().all(|&v| v == QValue::TOP));

        let names: Vec<String> = ["a", "b", "c"].map(String::from).to_vec();
        let m = VCatObj::from_fn(Quantale::PlusReversed, names, |i, j| match (i, j) {
            (0, 1) => QValue::num(1),
            (1, 2) => QValue::num(2),
            _ => QValue::INF,
        });
        let closed = quotient_closure(&m, &[0, 1, 2], 3).unwrap();
        assert_eq!(closed.get(0, 2), QValue::num(3));
        assert_eq!(closed.get(0, 0), QValue::num(0));
        assert_eq!(closed.get(2, 0), QValue::INF);

        assert_eq!(
            quotient_closure(&x, &[0, 0], 2).unwrap_err(),
            EquilogError::NotOnto
        );
    }

    #[test]
    fn separated_reflection_examples() {
        let anti = VCatObj::antichain(3);
        let (sep, proj) = separated_reflection(&anti);
        assert_eq!(sep.len(), 3);
        assert_eq!(proj.map, vec![0, 1, 2]);

        let cyc = VCatObj::indiscrete(Quantale::Two, default_names(2));
        assert_eq!(separated_reflection(&cyc).0.len(), 1);

        let m = VCatObj::from_fn(Quantale::PlusReversed, default_names(2), |_, _| {
            QValue::num(0)
        });
        let (sep, proj) = separated_reflection(&m);
        assert_eq!(sep.len(), 1);
        assert!(proj.dom.is_vfunctor(&proj.cod, &proj.map));
    }

    #[test]
    fn presheaf_examples() {
        let (hat, y) = presheaf_embed(&VCatObj::point(Quantale::Two)).unwrap();
        assert_eq!(hat.len(), 2);
        assert!(hat.is_iso_via(&VCatObj::chain(2), &[0, 1]));
        assert_eq!(hat.name(y.map[0]), "{*}");

        let (hat, y) = presheaf_embed(&two_chain()).unwrap();
        assert_eq!(hat.len(), 3);
        assert!(hat.is_iso_via(&VCatObj::chain(3), &[0, 1, 2]));
        assert_eq!(hat.name(y.map[0]), "{x0}");
        assert_eq!(hat.name(y.map[1]), "{x0,x1}");

        let (hat, _) = presheaf_embed(&VCatObj::antichain(2)).unwrap();
        assert_eq!(hat.len(), 4);
        let bool_lattice = VCatObj::preorder(default_names(4), |i, j| i & !j == 0);
        // names: {} {x1} {x0} {x0,x1} in enumeration order
        let names: Vec<&str> = hat.names().iter().map(String::as_str).collect();
        assert_eq!(names, vec!["{}", "{x1}", "{x0}", "{x0,x1}"]);
        assert!(hat.is_iso_via(&bool_lattice, &[0, 2, 1, 3]));

        let metric = VCatObj::discrete(Quantale::PlusReversed, default_names(1));
        assert_eq!(
            presheaf_embed(&metric).unwrap_err(),
            EquilogError::InfinitePresheaf
        );
    }

    #[test]
    fn yoneda_is_fully_faithful_on_diamond() {
        let q = Quantale::Diamond;
        let x = VCatObj::from_fn(q, default_names(2), |i, j| {
            if i == j {
                q.top()
            } else if i < j {
                QValue::U
            } else {
                QValue::V
            }
        });
        assert!(x.is_valid());
        let (hat, y) = presheaf_embed(&x).unwrap();
        assert!(hat.is_valid());
        assert!(x.is_initial_map(&hat, &y.map));
    }

    #[test]
    fn exponential_examples() {
        let c = two_chain();
        let e = vcat_exponential(&c, &c, DEFAULT_SEARCH_BOUND).unwrap();
        assert_eq!(e.object.len(), 3);
        assert!(e.object.is_valid());
        assert!(e.object.is_separated());

        let pt = VCatObj::point(Quantale::Two);
        let y1 = vcat_exponential(&pt, &c, DEFAULT_SEARCH_BOUND).unwrap();
        assert_eq!(y1.object.matrix(), c.matrix());
        let one_x = vcat_exponential(&c, &pt, DEFAULT_SEARCH_BOUND).unwrap();
        assert_eq!(one_x.object.len(), 1);

        let big = VCatObj::antichain(12);
        assert!(matches!(
            vcat_exponential(&big, &big, 1000),
            Err(EquilogError::BoundExceeded { .. })
        ));
    }
}
