//! Finite topological and approach spaces, and the transfers between
//! preorders, metrics, topologies and approach distances.

use serde::Serialize;

use crate::base::{Base, BaseKind};
use crate::equ::EquObj;
use crate::error::{EquilogError, Result};
use crate::quantale::{ExtRat, QValue, Quantale};
use crate::vcat::VCatObj;

/// Largest carrier accepted by [`FinApp`]; δ is tabulated on all subsets.
pub const MAX_APP_CARRIER: usize = 6;

/// Largest carrier accepted by [`FinTop`]; subsets are `u32` bitmasks.
pub const MAX_TOP_CARRIER: usize = 24;

/// A `P₊` object, read as a Lawvere metric space.
pub type FinMet = VCatObj;

pub type Subset = u32;

pub fn subset_of(elems: &[usize]) -> Subset {
    elems.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn elements(s: Subset) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| s & (1 << i) != 0)
}

fn full(n: usize) -> Subset {
    if n == 0 {
        0
    } else {
        (1u32 << n) - 1
    }
}

fn image(s: Subset, map: &[usize]) -> Subset {
    elements(s).fold(0, |m, i| m | (1 << map[i]))
}

fn preimage(s: Subset, map: &[usize]) -> Subset {
    map.iter()
        .enumerate()
        .filter(|(_, &y)| s & (1 << y) != 0)
        .fold(0, |m, (i, _)| m | (1 << i))
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

/// A finite topological space with its open sets as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinTop {
    names: Vec<String>,
    opens: Vec<Subset>,
}

/// Axiom check result for [`FinTop`] or [`FinApp`]; the first failing axiom
/// and a witness, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceReport {
    pub failure: Option<SpaceFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceFailure {
    pub axiom: String,
    pub witness: Vec<String>,
}

impl SpaceReport {
    fn fail(axiom: &str, witness: Vec<String>) -> Self {
        SpaceReport {
            failure: Some(SpaceFailure {
                axiom: axiom.into(),
                witness,
            }),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl FinTop {
    /// Builds a space from a family of open sets; the family is sorted and
    /// deduplicated but not closed. See [`FinTop::verify`].
    pub fn new(names: Vec<String>, opens: Vec<Subset>) -> Result<Self> {
        check_names(&names)?;
        if names.len() > MAX_TOP_CARRIER {
            return Err(EquilogError::BoundExceeded {
                what: "topological carrier".into(),
                needed: names.len() as u128,
                bound: MAX_TOP_CARRIER as u128,
            });
        }
        let f = full(names.len());
        if let Some(o) = opens.iter().find(|&&o| o & !f != 0) {
            return Err(EquilogError::Invalid(format!(
                "open set {o:#b} leaves the carrier"
            )));
        }
        let mut opens = opens;
        opens.sort_unstable();
        opens.dedup();
        Ok(FinTop { names, opens })
    }

    /// The topology generated by `subbase` (closed under finite intersections
    /// and unions).
    pub fn generated(names: Vec<String>, subbase: &[Subset]) -> Result<Self> {
        let n = names.len();
        let mut base: Vec<Subset> = vec![full(n)];
        for &s in subbase {
            let extra: Vec<Subset> = base.iter().map(|&b| b & s).collect();
            base.extend(extra);
            base.sort_unstable();
            base.dedup();
        }
        let mut opens: Vec<Subset> = vec![0];
        for &b in &base {
            let extra: Vec<Subset> = opens.iter().map(|&o| o | b).collect();
            opens.extend(extra);
            opens.sort_unstable();
            opens.dedup();
        }
        Self::new(names, opens)
    }

    pub fn discrete(names: Vec<String>) -> Self {
        let n = names.len();
        FinTop {
            names,
            opens: (0..=full(n)).collect(),
        }
    }

    pub fn indiscrete(names: Vec<String>) -> Self {
        let n = names.len();
        let mut opens = vec![0, full(n)];
        opens.dedup();
        FinTop { names, opens }
    }

    /// The Alexandroff topology of a preorder, with the down-sets as opens.
    pub fn alexandroff(order: &VCatObj) -> Self {
        let n = order.len();
        let opens = (0..=full(n))
            .filter(|&s| {
                elements(s).all(|j| (0..n).all(|i| !order.point_le(i, j) || s & (1 << i) != 0))
            })
            .collect();
        FinTop {
            names: order.names().to_vec(),
            opens,
        }
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

    pub fn opens(&self) -> &[Subset] {
        &self.opens
    }

    pub fn is_open(&self, s: Subset) -> bool {
        self.opens.binary_search(&s).is_ok()
    }

    /// Smallest closed superset of `s`.
    pub fn closure(&self, s: Subset) -> Subset {
        let f = full(self.len());
        self.opens
            .iter()
            .filter(|&&o| o & s == 0)
            .fold(f, |c, &o| c & !o)
    }

    pub fn verify(&self) -> SpaceReport {
        let f = full(self.len());
        let show = |s: Subset| self.show(s);
        if !self.is_open(0) {
            return SpaceReport::fail("empty set open", vec![]);
        }
        if !self.is_open(f) {
            return SpaceReport::fail("carrier open", vec![]);
        }
        for &a in &self.opens {
            for &b in &self.opens {
                if !self.is_open(a | b) {
                    return SpaceReport::fail("closed under union", vec![show(a), show(b)]);
                }
                if !self.is_open(a & b) {
                    return SpaceReport::fail("closed under intersection", vec![show(a), show(b)]);
                }
            }
        }
        SpaceReport { failure: None }
    }

    pub fn show(&self, s: Subset) -> String {
        let parts: Vec<&str> = elements(s).map(|i| self.names[i].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Preimages of opens are open.
    pub fn is_continuous(&self, cod: &FinTop, map: &[usize]) -> bool {
        map.len() == self.len()
            && map.iter().all(|&y| y < cod.len())
            && cod.opens.iter().all(|&o| self.is_open(preimage(o, map)))
    }

    /// `x ≤ x'` iff every open set containing `x'` contains `x`.
    pub fn specialization(&self) -> VCatObj {
        VCatObj::preorder(self.names.clone(), |i, j| {
            self.opens
                .iter()
                .all(|&o| o & (1 << j) == 0 || o & (1 << i) != 0)
        })
    }

    pub fn product(&self, other: &FinTop) -> Result<FinTop> {
        let m = other.len();
        let names: Vec<String> = (0..self.len() * m)
            .map(|k| format!("({},{})", self.names[k / m], other.names[k % m]))
            .collect();
        let mut rects = Vec::new();
        for &a in &self.opens {
            for &b in &other.opens {
                let r = (0..self.len() * m)
                    .filter(|k| a & (1 << (k / m)) != 0 && b & (1 << (k % m)) != 0)
                    .fold(0, |s, k| s | (1 << k));
                rects.push(r);
            }
        }
        FinTop::generated(names, &rects)
    }

    pub fn coproduct(&self, other: &FinTop) -> Result<FinTop> {
        let n = self.len();
        let names = self
            .names
            .iter()
            .map(|s| format!("inl({s})"))
            .chain(other.names.iter().map(|s| format!("inr({s})")))
            .collect();
        let mut opens = Vec::new();
        for &a in &self.opens {
            for &b in &other.opens {
                opens.push(a | (b << n));
            }
        }
        FinTop::new(names, opens)
    }

    /// Subspace topology on the listed points.
    pub fn restrict(&self, subset: &[usize]) -> FinTop {
        let names = subset.iter().map(|&i| self.names[i].clone()).collect();
        let mut opens: Vec<Subset> = self.opens.iter().map(|&o| preimage(o, subset)).collect();
        opens.sort_unstable();
        opens.dedup();
        FinTop { names, opens }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.len() {
            return Err(EquilogError::Invalid("wrong number of names".into()));
        }
        check_names(&names)?;
        self.names = names;
        Ok(self)
    }
}

/// A finite approach space, with `δ(x, A)` tabulated for every subset `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinApp {
    names: Vec<String>,
    delta: Vec<ExtRat>,
}

impl FinApp {
    /// `delta[x][A]` with `A` read as a bitmask; not checked. See [`FinApp::verify`].
    pub fn new(names: Vec<String>, delta: Vec<Vec<ExtRat>>) -> Result<Self> {
        check_names(&names)?;
        let n = names.len();
        Self::check_carrier(n)?;
        if delta.len() != n || delta.iter().any(|row| row.len() != 1 << n) {
            return Err(EquilogError::Invalid(format!(
                "approach table must be {n} rows of {} subsets",
                1 << n
            )));
        }
        Ok(FinApp {
            names,
            delta: delta.into_iter().flatten().collect(),
        })
    }

    fn check_carrier(n: usize) -> Result<()> {
        if n > MAX_APP_CARRIER {
            return Err(EquilogError::BoundExceeded {
                what: "approach space carrier".into(),
                needed: n as u128,
                bound: MAX_APP_CARRIER as u128,
            });
        }
        Ok(())
    }

    /// `δ_d(x', A) = min_{x ∈ A} d(x, x')`.
    pub fn from_metric(d: &VCatObj) -> Result<Self> {
        if d.quantale() != Quantale::PlusReversed {
            return Err(EquilogError::QuantaleMismatch(
                Quantale::PlusReversed.to_string(),
                d.quantale().to_string(),
            ));
        }
        let n = d.len();
        Self::check_carrier(n)?;
        let mut delta = Vec::with_capacity(n << n);
        for x in 0..n {
            for a in 0..=full(n) {
                let v = elements(a)
                    .map(|y| d.get(y, x).as_ext().expect("metric value"))
                    .min()
                    .unwrap_or(ExtRat::Inf);
                delta.push(v);
            }
        }
        Ok(FinApp {
            names: d.names().to_vec(),
            delta,
        })
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

    #[inline]
    pub fn delta(&self, x: usize, a: Subset) -> ExtRat {
        self.delta[(x << self.len()) + a as usize]
    }

    pub fn table(&self) -> Vec<Vec<ExtRat>> {
        self.delta
            .chunks(1 << self.len())
            .map(<[ExtRat]>::to_vec)
            .collect()
    }

    fn show(&self, s: Subset) -> String {
        let parts: Vec<&str> = elements(s).map(|i| self.names[i].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn verify(&self) -> SpaceReport {
        let n = self.len();
        let f = full(n);
        let name = |x: usize| self.names[x].clone();
        for x in 0..n {
            if self.delta(x, 0) != ExtRat::Inf {
                return SpaceReport::fail("distance to empty set is infinite", vec![name(x)]);
            }
            for a in 0..=f {
                if a & (1 << x) != 0 && self.delta(x, a) != ExtRat::ZERO {
                    return SpaceReport::fail(
                        "distance to a set containing the point is 0",
                        vec![name(x), self.show(a)],
                    );
                }
                for b in 0..=f {
                    if self.delta(x, a | b) != self.delta(x, a).min(self.delta(x, b)) {
                        return SpaceReport::fail(
                            "distance to a union is the minimum",
                            vec![name(x), self.show(a), self.show(b)],
                        );
                    }
                }
            }
        }
        let mut eps: Vec<ExtRat> = self
            .delta
            .iter()
            .copied()
            .filter(|v| v.is_finite())
            .collect();
        eps.sort();
        eps.dedup();
        for a in 0..=f {
            for &e in &eps {
                let grown = (0..n)
                    .filter(|&y| self.delta(y, a) <= e)
                    .fold(0, |s, y| s | (1 << y));
                for x in 0..n {
                    if self.delta(x, a) > self.delta(x, grown) + e {
                        return SpaceReport::fail(
                            "triangle inequality",
                            vec![name(x), self.show(a), e.to_string()],
                        );
                    }
                }
            }
        }
        SpaceReport { failure: None }
    }

    /// `δ'(f x, f A) ≤ δ(x, A)` for all `x` and `A`.
    pub fn is_contraction(&self, cod: &FinApp, map: &[usize]) -> bool {
        map.len() == self.len()
            && map.iter().all(|&y| y < cod.len())
            && (0..self.len()).all(|x| {
                (0..=full(self.len())).all(|a| cod.delta(map[x], image(a, map)) <= self.delta(x, a))
            })
    }

    /// `d(x, x') = sup{δ(x', A) | x ∈ A}`.
    pub fn to_metric(&self) -> VCatObj {
        let n = self.len();
        VCatObj::from_fn(Quantale::PlusReversed, self.names.clone(), |x, x2| {
            let v = (0..=full(n))
                .filter(|a| a & (1 << x) != 0)
                .map(|a| self.delta(x2, a))
                .max()
                .unwrap_or(ExtRat::ZERO);
            QValue::Ext(v)
        })
    }

    pub fn product(&self, other: &FinApp) -> Result<FinApp> {
        let d = self.to_metric().product(&other.to_metric())?;
        FinApp::from_metric(&d)
    }

    pub fn coproduct(&self, other: &FinApp) -> Result<FinApp> {
        let d = self.to_metric().coproduct(&other.to_metric())?;
        FinApp::from_metric(&d)
    }

    /// The initial structure along the inclusion of `subset`.
    pub fn restrict(&self, subset: &[usize]) -> FinApp {
        let n = subset.len();
        let mut delta = Vec::with_capacity(n << n);
        for x in 0..n {
            for a in 0..=full(n) {
                delta.push(self.delta(subset[x], image(a, subset)));
            }
        }
        FinApp {
            names: subset.iter().map(|&i| self.names[i].clone()).collect(),
            delta,
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.len() {
            return Err(EquilogError::Invalid("wrong number of names".into()));
        }
        check_names(&names)?;
        self.names = names;
        Ok(self)
    }
}

/// The four base-changing adjunctions. The left adjoint of each pair is
/// listed in [`Transfer::left_adjoint`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Transfer {
    OrdMet,
    OrdTop,
    MetApp,
    TopApp,
}

/// `Rightward` goes from the first named base to the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Rightward,
    Leftward,
}

impl Transfer {
    pub const ALL: [Transfer; 4] = [
        Transfer::OrdMet,
        Transfer::OrdTop,
        Transfer::MetApp,
        Transfer::TopApp,
    ];

    /// The direction whose functor is the left adjoint.
    pub fn left_adjoint(self) -> Direction {
        match self {
            Transfer::OrdMet => Direction::Leftward,
            Transfer::OrdTop => Direction::Rightward,
            Transfer::MetApp => Direction::Rightward,
            Transfer::TopApp => Direction::Leftward,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Transfer::OrdMet => "ord-met",
            Transfer::OrdTop => "ord-top",
            Transfer::MetApp => "met-app",
            Transfer::TopApp => "top-app",
        }
    }
}

impl Transfer {
    /// Source and target base kinds of the functor in direction `dir`.
    pub fn kinds(self, dir: Direction) -> (BaseKind, BaseKind) {
        let (a, b) = match self {
            Transfer::OrdMet => (BaseKind::ORD, BaseKind::MET),
            Transfer::OrdTop => (BaseKind::ORD, BaseKind::Top),
            Transfer::MetApp => (BaseKind::MET, BaseKind::App),
            Transfer::TopApp => (BaseKind::Top, BaseKind::App),
        };
        match dir {
            Direction::Rightward => (a, b),
            Direction::Leftward => (b, a),
        }
    }
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Rightward => Direction::Leftward,
            Direction::Leftward => Direction::Rightward,
        }
    }
}

/// `d_≤(x, x') = 0` if `x ≤ x'`, else `∞`.
pub fn ord_to_met(x: &VCatObj) -> VCatObj {
    VCatObj::from_fn(Quantale::PlusReversed, x.names().to_vec(), |i, j| {
        if x.point_le(i, j) {
            QValue::num(0)
        } else {
            QValue::INF
        }
    })
}

/// `x ≤_d x'` iff `d(x, x') < ∞`.
pub fn met_to_ord(d: &VCatObj) -> VCatObj {
    VCatObj::preorder(d.names().to_vec(), |i, j| d.get(i, j) != QValue::INF)
}

pub fn ord_to_top(x: &VCatObj) -> FinTop {
    FinTop::alexandroff(x)
}

pub fn top_to_ord(t: &FinTop) -> VCatObj {
    t.specialization()
}

pub fn met_to_app(d: &VCatObj) -> Result<FinApp> {
    FinApp::from_metric(d)
}

pub fn app_to_met(a: &FinApp) -> VCatObj {
    a.to_metric()
}

/// `δ_τ(x', A) = 0` if `x'` lies in the closure of `A`, else `∞`.
pub fn top_to_app(t: &FinTop) -> Result<FinApp> {
    let n = t.len();
    FinApp::check_carrier(n)?;
    let mut delta = Vec::with_capacity(n << n);
    for x in 0..n {
        for a in 0..=full(n) {
            delta.push(if t.closure(a) & (1 << x) != 0 {
                ExtRat::ZERO
            } else {
                ExtRat::Inf
            });
        }
    }
    Ok(FinApp {
        names: t.names.clone(),
        delta,
    })
}

/// Principal convergence `δ(x', {x}) < ∞` read as `x ≤ x'`, closed
/// reflexively and transitively, then given the Alexandroff topology.
pub fn app_to_top(a: &FinApp) -> FinTop {
    let n = a.len();
    let raw = VCatObj::from_fn(Quantale::Two, a.names().to_vec(), |x, x2| {
        QValue::Bool(a.delta(x2, 1 << x) != ExtRat::Inf)
    });
    let order = crate::vcat::quotient_closure(&raw, &(0..n).collect::<Vec<_>>(), n)
        .expect("identity is onto");
    FinTop::alexandroff(&order)
}

/// Finite topologies are determined by their specialization preorder, so a
/// map is continuous iff it is monotone for it.
pub fn continuity_shadow(t: &FinTop) -> VCatObj {
    t.specialization()
}

/// Finite approach spaces are determined by their point distances, so a map
/// is a contraction iff it is non-expansive for them.
pub fn contraction_shadow(a: &FinApp) -> VCatObj {
    a.to_metric()
}

/// Applies a transfer functor to a base object.
pub fn transfer_base(base: &Base, which: Transfer, dir: Direction) -> Result<Base> {
    let (from, to) = which.kinds(dir);
    if base.kind() != from {
        return Err(EquilogError::BaseMismatch {
            expected: from.to_string(),
            found: base.kind().to_string(),
        });
    }
    Ok(match (base, to) {
        (Base::VCat(x), BaseKind::VCat(Quantale::PlusReversed)) => Base::VCat(ord_to_met(x)),
        (Base::VCat(x), BaseKind::VCat(_)) => Base::VCat(met_to_ord(x)),
        (Base::VCat(x), BaseKind::Top) => Base::Top(ord_to_top(x)),
        (Base::VCat(x), BaseKind::App) => Base::App(met_to_app(x)?),
        (Base::Top(t), BaseKind::VCat(_)) => Base::VCat(top_to_ord(t)),
        (Base::Top(t), BaseKind::App) => Base::App(top_to_app(t)?),
        (Base::App(a), BaseKind::VCat(_)) => Base::VCat(app_to_met(a)),
        (Base::App(a), BaseKind::Top) => Base::Top(app_to_top(a)),
        _ => unreachable!("kinds checked above"),
    })
}

/// Transfers an equilogical object along one of the four functors; the
/// carrier and the equivalence relation are kept.
pub fn adjunction_transfer(obj: &EquObj, which: Transfer, dir: Direction) -> Result<EquObj> {
    EquObj::new(transfer_base(obj.base(), which, dir)?, obj.equiv().clone())
}
