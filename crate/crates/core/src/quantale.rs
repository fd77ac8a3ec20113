//! Exactly representable commutative unital quantales.
//!
//! Four quantales are built in:
//!
//! * [`Quantale::Two`]: the booleans `{⊥, ⊤}` with `⊗ = ∧` (preorders),
//! * [`Quantale::Diamond`]: `2 × 2` with `⊗ = ∧` (birelations),
//! * [`Quantale::PlusReversed`]: `[0, ∞]` in reversed numeric order with `⊗ = +`
//!   (Lawvere metric spaces),
//! * [`Quantale::MaxReversed`]: `[0, ∞]` in reversed numeric order with `⊗ = max`
//!   (ultrametric spaces).
//!
//! All four are integral (`k = ⊤`). Values of the two reversed quantales are
//! exact extended rationals; the reversed order is implemented by flipping the
//! comparison, never by negating the stored number.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{EquilogError, Result};

/// An extended nonnegative rational: a finite `p/q ≥ 0` or `∞`.
///
/// The derived `Ord` is the *numeric* order (`Finite(_) < Inf`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtRat {
    Finite(Rational64),
    Inf,
}

impl ExtRat {
    pub const ZERO: ExtRat = ExtRat::Finite(Rational64::new_raw(0, 1));

    pub fn int(n: i64) -> Self {
        ExtRat::Finite(Rational64::from_integer(n))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        ExtRat::Finite(Rational64::new(p, q))
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtRat::Finite(_))
    }

    /// Truncated subtraction `max(self − rhs, 0)`, with `∞ − ∞ = 0`.
    pub fn monus(self, rhs: ExtRat) -> ExtRat {
        match (self, rhs) {
            (_, ExtRat::Inf) => ExtRat::ZERO,
            (ExtRat::Inf, ExtRat::Finite(_)) => ExtRat::Inf,
            (ExtRat::Finite(a), ExtRat::Finite(b)) => {
                if a > b {
                    ExtRat::Finite(a - b)
                } else {
                    ExtRat::ZERO
                }
            }
        }
    }
}

impl Add for ExtRat {
    type Output = ExtRat;

    fn add(self, rhs: ExtRat) -> ExtRat {
        match (self, rhs) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => ExtRat::Finite(a + b),
            _ => ExtRat::Inf,
        }
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Inf => write!(f, "inf"),
            ExtRat::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            ExtRat::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for ExtRat {
    type Err = EquilogError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" || s == "∞" {
            return Ok(ExtRat::Inf);
        }
        let bad = || EquilogError::Parse(format!("not an extended nonnegative rational: {s:?}"));
        let r = match s.split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let q: i64 = q.trim().parse().map_err(|_| bad())?;
                if q == 0 {
                    return Err(bad());
                }
                Rational64::new(p, q)
            }
            None => Rational64::from_integer(s.parse().map_err(|_| bad())?),
        };
        if r.is_negative() {
            return Err(bad());
        }
        Ok(ExtRat::Finite(r))
    }
}

/// An element of one of the built-in quantales.
///
/// The derived `Ord` is a structural total order used for hashing and
/// canonical forms only; the quantale order is [`QuantaleOps::le`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QValue {
    Bool(bool),
    Pair(bool, bool),
    Ext(ExtRat),
}

impl QValue {
    pub const BOT: QValue = QValue::Bool(false);
    pub const TOP: QValue = QValue::Bool(true);
    /// The atom `u = (⊤, ⊥)` of the diamond.
    pub const U: QValue = QValue::Pair(true, false);
    /// The atom `v = (⊥, ⊤)` of the diamond.
    pub const V: QValue = QValue::Pair(false, true);

    pub fn num(n: i64) -> QValue {
        QValue::Ext(ExtRat::int(n))
    }

    pub fn ratio(p: i64, q: i64) -> QValue {
        QValue::Ext(ExtRat::ratio(p, q))
    }

    pub const INF: QValue = QValue::Ext(ExtRat::Inf);

    pub fn as_ext(self) -> Option<ExtRat> {
        match self {
            QValue::Ext(e) => Some(e),
            _ => None,
        }
    }
}

impl fmt::Display for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QValue::Bool(true) => write!(f, "top"),
            QValue::Bool(false) => write!(f, "bot"),
            QValue::Pair(true, true) => write!(f, "top"),
            QValue::Pair(false, false) => write!(f, "bot"),
            QValue::Pair(true, false) => write!(f, "u"),
            QValue::Pair(false, true) => write!(f, "v"),
            QValue::Ext(e) => write!(f, "{e}"),
        }
    }
}

/// The operations of a commutative unital quantale that is also a Heyting
/// algebra. [`Quantale`] is the canonical implementation; the trait exists so
/// that law checkers can be pointed at deliberately broken tables.
pub trait QuantaleOps {
    fn le(&self, a: QValue, b: QValue) -> bool;
    fn tensor(&self, a: QValue, b: QValue) -> QValue;
    /// Residual of `⊗`: the largest `u` with `u ⊗ v ≤ w`.
    fn hom(&self, v: QValue, w: QValue) -> QValue;
    fn join(&self, a: QValue, b: QValue) -> QValue;
    fn meet(&self, a: QValue, b: QValue) -> QValue;
    /// Residual of `∧`: the largest `u` with `u ∧ v ≤ w`.
    fn implies(&self, v: QValue, w: QValue) -> QValue;
    fn unit(&self) -> QValue;
    fn top(&self) -> QValue;
    fn bottom(&self) -> QValue;

    fn eq_v(&self, a: QValue, b: QValue) -> bool {
        self.le(a, b) && self.le(b, a)
    }

    fn join_all<I: IntoIterator<Item = QValue>>(&self, it: I) -> QValue
    where
        Self: Sized,
    {
        it.into_iter()
            .fold(self.bottom(), |acc, v| self.join(acc, v))
    }

    fn meet_all<I: IntoIterator<Item = QValue>>(&self, it: I) -> QValue
    where
        Self: Sized,
    {
        it.into_iter().fold(self.top(), |acc, v| self.meet(acc, v))
    }
}

/// The built-in quantales.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantale {
    Two,
    Diamond,
    PlusReversed,
    MaxReversed,
}

impl Quantale {
    pub const ALL: [Quantale; 4] = [
        Quantale::Two,
        Quantale::Diamond,
        Quantale::PlusReversed,
        Quantale::MaxReversed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantale::Two => "two",
            Quantale::Diamond => "diamond",
            Quantale::PlusReversed => "plus-reversed",
            Quantale::MaxReversed => "max-reversed",
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Quantale::Two | Quantale::Diamond)
    }

    /// The whole carrier, for the finite quantales.
    pub fn carrier(self) -> Option<Vec<QValue>> {
        match self {
            Quantale::Two => Some(vec![QValue::BOT, QValue::TOP]),
            Quantale::Diamond => Some(vec![
                QValue::Pair(false, false),
                QValue::U,
                QValue::V,
                QValue::Pair(true, true),
            ]),
            _ => None,
        }
    }

    /// The default probe grid: the full carrier for finite kinds,
    /// `{0, 1/2, 1, 2, 3, ∞}` for the reversed-order kinds.
    pub fn default_grid(self) -> Vec<QValue> {
        self.carrier().unwrap_or_else(|| {
            vec![
                QValue::num(0),
                QValue::ratio(1, 2),
                QValue::num(1),
                QValue::num(2),
                QValue::num(3),
                QValue::INF,
            ]
        })
    }

    /// Whether `v` has the payload shape of this quantale.
    pub fn contains(self, v: QValue) -> bool {
        matches!(
            (self, v),
            (Quantale::Two, QValue::Bool(_))
                | (Quantale::Diamond, QValue::Pair(..))
                | (
                    Quantale::PlusReversed | Quantale::MaxReversed,
                    QValue::Ext(_)
                )
        )
    }

    /// Parses a value in this quantale's textual encoding.
    pub fn parse_value(self, s: &str) -> Result<QValue> {
        let s = s.trim();
        let v = match self {
            Quantale::Two => match s {
                "top" | "1" | "true" => QValue::TOP,
                "bot" | "0" | "false" => QValue::BOT,
                _ => return Err(EquilogError::Parse(format!("not an element of 2: {s:?}"))),
            },
            Quantale::Diamond => match s {
                "top" => QValue::Pair(true, true),
                "bot" => QValue::Pair(false, false),
                "u" => QValue::U,
                "v" => QValue::V,
                _ => {
                    return Err(EquilogError::Parse(format!(
                        "not an element of the diamond: {s:?}"
                    )))
                }
            },
            Quantale::PlusReversed | Quantale::MaxReversed => QValue::Ext(s.parse()?),
        };
        Ok(v)
    }

    fn ext(self, v: QValue) -> ExtRat {
        match v {
            QValue::Ext(e) => e,
            other => panic!("{other:?} is not an element of {}", self.name()),
        }
    }

    fn pair(self, v: QValue) -> (bool, bool) {
        match v {
            QValue::Pair(a, b) => (a, b),
            other => panic!("{other:?} is not an element of {}", self.name()),
        }
    }

    fn boolean(self, v: QValue) -> bool {
        match v {
            QValue::Bool(b) => b,
            other => panic!("{other:?} is not an element of {}", self.name()),
        }
    }
}

impl fmt::Display for Quantale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantale {
    type Err = EquilogError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two" | "2" => Ok(Quantale::Two),
            "diamond" | "2x2" => Ok(Quantale::Diamond),
            "plus-reversed" | "p+" => Ok(Quantale::PlusReversed),
            "max-reversed" | "pmax" => Ok(Quantale::MaxReversed),
            _ => Err(EquilogError::Parse(format!("unknown quantale {s:?}"))),
        }
    }
}

impl QuantaleOps for Quantale {
    fn le(&self, a: QValue, b: QValue) -> bool {
        match self {
            Quantale::Two => !self.boolean(a) || self.boolean(b),
            Quantale::Diamond => {
                let (a0, a1) = self.pair(a);
                let (b0, b1) = self.pair(b);
                (!a0 || b0) && (!a1 || b1)
            }
            // reversed: larger numbers are smaller in V
            Quantale::PlusReversed | Quantale::MaxReversed => self.ext(a) >= self.ext(b),
        }
    }

    fn tensor(&self, a: QValue, b: QValue) -> QValue {
        match self {
            Quantale::Two | Quantale::Diamond => self.meet(a, b),
            Quantale::PlusReversed => QValue::Ext(self.ext(a) + self.ext(b)),
            Quantale::MaxReversed => QValue::Ext(self.ext(a).max(self.ext(b))),
        }
    }

    fn hom(&self, v: QValue, w: QValue) -> QValue {
        match self {
            Quantale::Two | Quantale::Diamond | Quantale::MaxReversed => self.implies(v, w),
            Quantale::PlusReversed => QValue::Ext(self.ext(w).monus(self.ext(v))),
        }
    }

    fn join(&self, a: QValue, b: QValue) -> QValue {
        match self {
            Quantale::Two => QValue::Bool(self.boolean(a) || self.boolean(b)),
            Quantale::Diamond => {
                let (a0, a1) = self.pair(a);
                let (b0, b1) = self.pair(b);
                QValue::Pair(a0 || b0, a1 || b1)
            }
            Quantale::PlusReversed | Quantale::MaxReversed => {
                QValue::Ext(self.ext(a).min(self.ext(b)))
            }
        }
    }

    fn meet(&self, a: QValue, b: QValue) -> QValue {
        match self {
            Quantale::Two => QValue::Bool(self.boolean(a) && self.boolean(b)),
            Quantale::Diamond => {
                let (a0, a1) = self.pair(a);
                let (b0, b1) = self.pair(b);
                QValue::Pair(a0 && b0, a1 && b1)
            }
            Quantale::PlusReversed | Quantale::MaxReversed => {
                QValue::Ext(self.ext(a).max(self.ext(b)))
            }
        }
    }

    fn implies(&self, v: QValue, w: QValue) -> QValue {
        match self {
            Quantale::Two => QValue::Bool(!self.boolean(v) || self.boolean(w)),
            Quantale::Diamond => {
                let (v0, v1) = self.pair(v);
                let (w0, w1) = self.pair(w);
                QValue::Pair(!v0 || w0, !v1 || w1)
            }
            Quantale::PlusReversed | Quantale::MaxReversed => {
                let (v, w) = (self.ext(v), self.ext(w));
                // numerically smallest u with max(u, v) ≥ w
                QValue::Ext(if v >= w { ExtRat::ZERO } else { w })
            }
        }
    }

    fn unit(&self) -> QValue {
        self.top()
    }

    fn top(&self) -> QValue {
        match self {
            Quantale::Two => QValue::TOP,
            Quantale::Diamond => QValue::Pair(true, true),
            Quantale::PlusReversed | Quantale::MaxReversed => QValue::Ext(ExtRat::ZERO),
        }
    }

    fn bottom(&self) -> QValue {
        match self {
            Quantale::Two => QValue::BOT,
            Quantale::Diamond => QValue::Pair(false, false),
            Quantale::PlusReversed | Quantale::MaxReversed => QValue::INF,
        }
    }
}

/// One law checked by [`verify_quantale`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuantaleLaw {
    Associativity,
    Commutativity,
    Unit,
    JoinPreservation,
    HomAdjunction,
    HeytingAdjunction,
    Distributivity,
    Integrality,
}

#[derive(Clone, Debug, Serialize)]
pub struct LawCheck {
    pub law: QuantaleLaw,
    pub passed: bool,
    /// Offending probe values, rendered, when the law fails.
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuantaleReport {
    pub checks: Vec<LawCheck>,
}

impl QuantaleReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, law: QuantaleLaw) -> Option<&LawCheck> {
        self.checks.iter().find(|c| c.law == law)
    }
}

/// Checks the quantale and Heyting laws on every tuple drawn from `probe`.
pub fn verify_quantale<Q: QuantaleOps>(q: &Q, probe: &[QValue]) -> QuantaleReport {
    let render = |vs: &[QValue]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>();
    let first_failure_1 = |pred: &dyn Fn(QValue) -> bool| {
        probe
            .iter()
            .copied()
            .find(|&a| !pred(a))
            .map(|a| render(&[a]))
    };
    let first_failure_2 = |pred: &dyn Fn(QValue, QValue) -> bool| {
        for &a in probe {
            for &b in probe {
                if !pred(a, b) {
                    return Some(render(&[a, b]));
                }
            }
        }
        None
    };
    let first_failure_3 = |pred: &dyn Fn(QValue, QValue, QValue) -> bool| {
        for &a in probe {
            for &b in probe {
                for &c in probe {
                    if !pred(a, b, c) {
                        return Some(render(&[a, b, c]));
                    }
                }
            }
        }
        None
    };

    let mut checks = Vec::new();
    let mut push = |law, witness: Option<Vec<String>>| {
        checks.push(LawCheck {
            law,
            passed: witness.is_none(),
            witness,
        })
    };

    push(
        QuantaleLaw::Associativity,
        first_failure_3(&|a, b, c| {
            q.eq_v(q.tensor(q.tensor(a, b), c), q.tensor(a, q.tensor(b, c)))
        }),
    );
    push(
        QuantaleLaw::Commutativity,
        first_failure_2(&|a, b| q.eq_v(q.tensor(a, b), q.tensor(b, a))),
    );
    let unit_witness = if q.eq_v(q.tensor(q.unit(), q.unit()), q.unit()) {
        first_failure_1(&|a| q.eq_v(q.tensor(a, q.unit()), a) && q.eq_v(q.tensor(q.unit(), a), a))
    } else {
        Some(render(&[q.unit(), q.unit()]))
    };
    push(QuantaleLaw::Unit, unit_witness);
    let bottom_absorbs = first_failure_1(&|a| q.eq_v(q.tensor(a, q.bottom()), q.bottom()));
    push(
        QuantaleLaw::JoinPreservation,
        bottom_absorbs.or_else(|| {
            first_failure_3(&|a, b, c| {
                q.eq_v(
                    q.tensor(a, q.join(b, c)),
                    q.join(q.tensor(a, b), q.tensor(a, c)),
                )
            })
        }),
    );
    push(
        QuantaleLaw::HomAdjunction,
        first_failure_3(&|u, v, w| q.le(q.tensor(u, v), w) == q.le(u, q.hom(v, w))),
    );
    push(
        QuantaleLaw::HeytingAdjunction,
        first_failure_3(&|u, v, w| q.le(q.meet(u, v), w) == q.le(u, q.implies(v, w))),
    );
    push(
        QuantaleLaw::Distributivity,
        first_failure_3(&|a, b, c| {
            q.eq_v(q.meet(a, q.join(b, c)), q.join(q.meet(a, b), q.meet(a, c)))
        }),
    );
    let integral = q.eq_v(q.unit(), q.top());
    push(
        QuantaleLaw::Integrality,
        if integral {
            None
        } else {
            Some(render(&[q.unit(), q.top()]))
        },
    );
    QuantaleReport { checks }
}

/// Checks `w ∧ (u ⊗ v) = ⋁{u′ ⊗ v′ | u′ ≤ u, v′ ≤ v, u′ ⊗ v′ ≤ w}` for all
/// `u, v, w` in `probe`, with `u′, v′` also ranging over `probe`.
pub fn check_exp_condition<Q: QuantaleOps>(q: &Q, probe: &[QValue]) -> bool {
    exp_condition_witness(q, probe).is_none()
}

/// The first `(u, v, w)` violating the exponentiability identity, if any.
pub fn exp_condition_witness<Q: QuantaleOps>(
    q: &Q,
    probe: &[QValue],
) -> Option<(QValue, QValue, QValue)> {
    for &u in probe {
        for &v in probe {
            for &w in probe {
                let lhs = q.meet(w, q.tensor(u, v));
                let mut rhs = q.bottom();
                for &u2 in probe.iter().filter(|&&x| q.le(x, u)) {
                    for &v2 in probe.iter().filter(|&&x| q.le(x, v)) {
                        let t = q.tensor(u2, v2);
                        if q.le(t, w) {
                            rhs = q.join(rhs, t);
                        }
                    }
                }
                if !q.eq_v(lhs, rhs) {
                    return Some((u, v, w));
                }
            }
        }
    }
    None
}
