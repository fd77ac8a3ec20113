//! The supported base categories behind a single enum.

use std::fmt;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{EquilogError, Result};
use crate::quantale::{ExtRat, QValue, Quantale};
use crate::search::MapSearch;
use crate::spaces::{FinApp, FinTop};
use crate::vcat::VCatObj;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseKind {
    VCat(Quantale),
    Top,
    App,
}

impl BaseKind {
    pub const ORD: BaseKind = BaseKind::VCat(Quantale::Two);
    pub const MET: BaseKind = BaseKind::VCat(Quantale::PlusReversed);
}

impl fmt::Display for BaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseKind::VCat(Quantale::Two) => write!(f, "Ord"),
            BaseKind::VCat(Quantale::PlusReversed) => write!(f, "Met"),
            BaseKind::VCat(q) => write!(f, "{q}-Cat"),
            BaseKind::Top => write!(f, "Top"),
            BaseKind::App => write!(f, "App"),
        }
    }
}

/// An object of one of the base categories.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    VCat(VCatObj),
    Top(FinTop),
    App(FinApp),
}

/// Name-free structure data, used to compare objects under relabelling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseCode {
    VCat(Vec<QValue>),
    Top(Vec<u32>),
    App(Vec<ExtRat>),
}

impl From<VCatObj> for Base {
    fn from(x: VCatObj) -> Self {
        Base::VCat(x)
    }
}

impl From<FinTop> for Base {
    fn from(x: FinTop) -> Self {
        Base::Top(x)
    }
}

impl From<FinApp> for Base {
    fn from(x: FinApp) -> Self {
        Base::App(x)
    }
}

impl Base {
    pub fn kind(&self) -> BaseKind {
        match self {
            Base::VCat(x) => BaseKind::VCat(x.quantale()),
            Base::Top(_) => BaseKind::Top,
            Base::App(_) => BaseKind::App,
        }
    }

    pub fn len(&self) -> usize {
        self.names().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn names(&self) -> &[String] {
        match self {
            Base::VCat(x) => x.names(),
            Base::Top(x) => x.names(),
            Base::App(x) => x.names(),
        }
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names()[i]
    }

    pub fn as_vcat(&self) -> Option<&VCatObj> {
        match self {
            Base::VCat(x) => Some(x),
            _ => None,
        }
    }

    /// Checks the axioms of the base category.
    pub fn validate(&self) -> Result<()> {
        let failure = match self {
            Base::VCat(x) => {
                let r = x.verify();
                if let Some(w) = r.reflexivity_witness {
                    Some(format!("reflexivity fails at {w}"))
                } else {
                    r.transitivity_witness
                        .map(|[a, b, c]| format!("transitivity fails at ({a}, {b}, {c})"))
                }
            }
            Base::Top(t) => t
                .verify()
                .failure
                .map(|f| format!("{} fails at {}", f.axiom, f.witness.join(" "))),
            Base::App(a) => a
                .verify()
                .failure
                .map(|f| format!("{} fails at {}", f.axiom, f.witness.join(" "))),
        };
        match failure {
            Some(msg) => Err(EquilogError::Invalid(msg)),
            None => Ok(()),
        }
    }

    /// The preorder or metric that determines the morphisms out of and into
    /// this object: finite topologies by their specialization order, finite
    /// approach spaces by their point distances.
    pub fn shadow(&self) -> VCatObj {
        match self {
            Base::VCat(x) => x.clone(),
            Base::Top(t) => t.specialization(),
            Base::App(a) => a.to_metric(),
        }
    }

    /// The morphism condition of the base category, checked directly.
    pub fn is_morphism(&self, cod: &Base, map: &[usize]) -> bool {
        match (self, cod) {
            (Base::VCat(a), Base::VCat(b)) => a.is_vfunctor(b, map),
            (Base::Top(a), Base::Top(b)) => a.is_continuous(b, map),
            (Base::App(a), Base::App(b)) => a.is_contraction(b, map),
            _ => false,
        }
    }

    pub fn check_same_kind(&self, other: &Base) -> Result<()> {
        if self.kind() != other.kind() {
            return Err(EquilogError::BaseMismatch {
                expected: self.kind().to_string(),
                found: other.kind().to_string(),
            });
        }
        Ok(())
    }

    /// Visits base morphisms `self → cod` with `f(i) ∈ candidates[i]` that
    /// also satisfy `extra(i, f i, j, f j)`.
    pub fn search_morphisms(
        &self,
        cod: &Base,
        candidates: Vec<Vec<usize>>,
        extra: &dyn Fn(usize, usize, usize, usize) -> bool,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> bool {
        let (a, b) = (self.shadow(), cod.shadow());
        let ok = a.pair_check(&b);
        let both =
            |i: usize, fi: usize, j: usize, fj: usize| ok(i, fi, j, fj) && extra(i, fi, j, fj);
        MapSearch::with_candidates(candidates)
            .pairwise(&both)
            .run(visit)
    }

    pub fn morphisms_to(&self, cod: &Base, bound: u128) -> Result<Vec<Vec<usize>>> {
        self.check_same_kind(cod)?;
        let search = MapSearch::new(self.len(), cod.len());
        search.check_bound("base morphism enumeration", bound)?;
        let mut out = Vec::new();
        self.search_morphisms(
            cod,
            vec![(0..cod.len()).collect(); self.len()],
            &|_, _, _, _| true,
            &mut |f| {
                out.push(f.to_vec());
                ControlFlow::Continue(())
            },
        );
        Ok(out)
    }

    pub fn terminal(kind: BaseKind) -> Base {
        let names = vec!["*".to_string()];
        match kind {
            BaseKind::VCat(q) => Base::VCat(VCatObj::point(q)),
            BaseKind::Top => Base::Top(FinTop::discrete(names)),
            BaseKind::App => Base::App(
                FinApp::from_metric(&VCatObj::point(Quantale::PlusReversed)).expect("one point"),
            ),
        }
    }

    pub fn initial(kind: BaseKind) -> Base {
        match kind {
            BaseKind::VCat(q) => Base::VCat(VCatObj::empty(q)),
            BaseKind::Top => Base::Top(FinTop::discrete(Vec::new())),
            BaseKind::App => Base::App(
                FinApp::from_metric(&VCatObj::empty(Quantale::PlusReversed)).expect("empty"),
            ),
        }
    }

    /// Element `(i, j)` has index `i * other.len() + j`.
    pub fn product(&self, other: &Base) -> Result<Base> {
        self.check_same_kind(other)?;
        Ok(match (self, other) {
            (Base::VCat(a), Base::VCat(b)) => Base::VCat(a.product(b)?),
            (Base::Top(a), Base::Top(b)) => Base::Top(a.product(b)?),
            (Base::App(a), Base::App(b)) => Base::App(a.product(b)?),
            _ => unreachable!(),
        })
    }

    pub fn coproduct(&self, other: &Base) -> Result<Base> {
        self.check_same_kind(other)?;
        Ok(match (self, other) {
            (Base::VCat(a), Base::VCat(b)) => Base::VCat(a.coproduct(b)?),
            (Base::Top(a), Base::Top(b)) => Base::Top(a.coproduct(b)?),
            (Base::App(a), Base::App(b)) => Base::App(a.coproduct(b)?),
            _ => unreachable!(),
        })
    }

    /// The initial structure along the inclusion of `subset`.
    pub fn restrict(&self, subset: &[usize]) -> Base {
        match self {
            Base::VCat(a) => Base::VCat(a.restrict(subset)),
            Base::Top(a) => Base::Top(a.restrict(subset)),
            Base::App(a) => Base::App(a.restrict(subset)),
        }
    }

    /// New element `k` is old element `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Base {
        self.restrict(perm)
    }

    pub fn code(&self) -> BaseCode {
        match self {
            Base::VCat(a) => BaseCode::VCat(a.values().to_vec()),
            Base::Top(a) => BaseCode::Top(a.opens().to_vec()),
            Base::App(a) => BaseCode::App(a.table().concat()),
        }
    }

    /// Bijective, structure preserving and reflecting.
    pub fn is_iso_via(&self, cod: &Base, map: &[usize]) -> bool {
        if self.len() != cod.len() || self.kind() != cod.kind() {
            return false;
        }
        let mut inv = vec![usize::MAX; cod.len()];
        for (i, &y) in map.iter().enumerate() {
            if y >= cod.len() || inv[y] != usize::MAX {
                return false;
            }
            inv[y] = i;
        }
        self.is_morphism(cod, map) && cod.is_morphism(self, &inv)
    }

    /// The separated (T0) condition of the base.
    pub fn is_separated(&self) -> bool {
        self.shadow().is_separated()
    }

    pub fn with_names(self, names: Vec<String>) -> Result<Base> {
        Ok(match self {
            Base::VCat(a) => Base::VCat(a.with_names(names)?),
            Base::Top(a) => Base::Top(a.with_names(names)?),
            Base::App(a) => Base::App(a.with_names(names)?),
        })
    }
}
