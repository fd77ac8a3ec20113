//! JSON documents for every object the tool reads or writes.
//!
//! Elements are referred to by name everywhere, values are exact ("p/q",
//! "inf", "top", "bot", "u", "v"), and each document carries a `type` tag.

use serde::{Deserialize, Serialize};

use equilog::spaces::{elements, subset_of};
use equilog::{
    Assembly, Base, EquObj, EquilogError, ExtRat, FinApp, FinTop, PEquObj, Partition, Per,
    PseudoEqRel, QValue, Quantale, Result, VCatObj,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Document {
    Quantale {
        quantale: String,
    },
    Vcat {
        quantale: String,
        carrier: Vec<String>,
        structure: Vec<Vec<String>>,
    },
    Top {
        carrier: Vec<String>,
        opens: Vec<Vec<String>>,
    },
    App {
        carrier: Vec<String>,
        /// One row per point, one entry per subset read as a bitmask over
        /// the carrier order.
        delta: Vec<Vec<String>>,
    },
    Equ {
        base: Box<Document>,
        equivalence: Vec<Vec<String>>,
    },
    Pequ {
        base: Box<Document>,
        per: Vec<[String; 2]>,
    },
    Assembly {
        base: Box<Document>,
        elements: Vec<ElementDoc>,
    },
    Span {
        x1: Box<Document>,
        x0: Box<Document>,
        r1: Vec<String>,
        r2: Vec<String>,
    },
    Morphism {
        dom: Box<Document>,
        cod: Box<Document>,
        map: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    pub name: String,
    pub realizers: Vec<String>,
}

/// A parsed document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Quantale(Quantale),
    Base(Base),
    Equ(EquObj),
    PEqu(PEquObj),
    Assembly(Assembly),
    Span(PseudoEqRel),
    Morphism {
        dom: Box<Value>,
        cod: Box<Value>,
        map: Vec<usize>,
    },
}

fn parse_err(msg: String) -> EquilogError {
    EquilogError::Parse(msg)
}

fn index(names: &[String], name: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| parse_err(format!("unknown element {name:?}")))
}

fn indices(names: &[String], list: &[String]) -> Result<Vec<usize>> {
    list.iter().map(|n| index(names, n)).collect()
}

fn quantale(name: &str) -> Result<Quantale> {
    name.parse()
}

impl Value {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Value::Quantale(_) => "quantale",
            Value::Base(Base::VCat(_)) => "vcat",
            Value::Base(Base::Top(_)) => "top",
            Value::Base(Base::App(_)) => "app",
            Value::Equ(_) => "equ",
            Value::PEqu(_) => "pequ",
            Value::Assembly(_) => "assembly",
            Value::Span(_) => "span",
            Value::Morphism { .. } => "morphism",
        }
    }

    /// Names of the elements a morphism out of or into this value maps.
    pub fn element_names(&self) -> Result<Vec<String>> {
        match self {
            Value::Base(b) => Ok(b.names().to_vec()),
            Value::Equ(e) => Ok(e.base().names().to_vec()),
            Value::PEqu(p) => Ok(p.base().names().to_vec()),
            Value::Assembly(a) => Ok(a.elems().to_vec()),
            other => Err(EquilogError::Invalid(format!(
                "a {} cannot be the end of a morphism",
                other.kind_name()
            ))),
        }
    }

    pub fn from_doc(doc: &Document) -> Result<Value> {
        Ok(match doc {
            Document::Quantale { quantale: q } => Value::Quantale(quantale(q)?),
            Document::Vcat { .. } => Value::Base(Base::VCat(vcat_from_doc(doc)?)),
            Document::Top { carrier, opens } => {
                let masks = opens
                    .iter()
                    .map(|o| Ok(subset_of(&indices(carrier, o)?)))
                    .collect::<Result<Vec<_>>>()?;
                Value::Base(Base::Top(FinTop::new(carrier.clone(), masks)?))
            }
            Document::App { carrier, delta } => {
                let table = delta
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|v| v.parse::<ExtRat>())
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Value::Base(Base::App(FinApp::new(carrier.clone(), table)?))
            }
            Document::Equ { base, equivalence } => {
                let Value::Base(b) = Value::from_doc(base)? else {
                    return Err(parse_err(
                        "the base of an equ object must be vcat, top or app".into(),
                    ));
                };
                let blocks = equivalence
                    .iter()
                    .map(|bl| indices(b.names(), bl))
                    .collect::<Result<Vec<_>>>()?;
                let p = Partition::from_blocks(b.len(), &blocks)?;
                Value::Equ(EquObj::new(b, p)?)
            }
            Document::Pequ { base, per } => {
                let b = vcat_from_doc(base)?;
                let pairs = per
                    .iter()
                    .map(|[x, y]| Ok((index(b.names(), x)?, index(b.names(), y)?)))
                    .collect::<Result<Vec<_>>>()?;
                let rel = Per::from_relation(b.len(), &pairs)?;
                Value::PEqu(PEquObj::new(b, rel)?)
            }
            Document::Assembly { base, elements } => {
                let b = vcat_from_doc(base)?;
                let names = elements.iter().map(|e| e.name.clone()).collect();
                let real = elements
                    .iter()
                    .map(|e| indices(b.names(), &e.realizers))
                    .collect::<Result<Vec<_>>>()?;
                Value::Assembly(Assembly::new(names, b, real)?)
            }
            Document::Span { x1, x0, r1, r2 } => {
                let x1 = vcat_from_doc(x1)?;
                let x0 = vcat_from_doc(x0)?;
                if r1.len() != x1.len() || r2.len() != x1.len() {
                    return Err(parse_err(
                        "legs must list one image per element of x1".into(),
                    ));
                }
                let r1 = indices(x0.names(), r1)?;
                let r2 = indices(x0.names(), r2)?;
                Value::Span(PseudoEqRel::new(x1, x0, r1, r2)?)
            }
            Document::Morphism { dom, cod, map } => {
                let dom = Value::from_doc(dom)?;
                let cod = Value::from_doc(cod)?;
                let from = dom.element_names()?;
                if map.len() != from.len() {
                    return Err(parse_err(format!(
                        "map lists {} images for {} elements",
                        map.len(),
                        from.len()
                    )));
                }
                let map = indices(&cod.element_names()?, map)?;
                Value::Morphism {
                    dom: Box::new(dom),
                    cod: Box::new(cod),
                    map,
                }
            }
        })
    }

    pub fn to_doc(&self) -> Document {
        match self {
            Value::Quantale(q) => Document::Quantale {
                quantale: q.name().into(),
            },
            Value::Base(b) => base_doc(b),
            Value::Equ(e) => equ_doc(e),
            Value::PEqu(p) => pequ_doc(p),
            Value::Assembly(a) => assembly_doc(a),
            Value::Span(s) => span_doc(s),
            Value::Morphism { dom, cod, map } => {
                let names = cod.element_names().unwrap_or_default();
                Document::Morphism {
                    dom: Box::new(dom.to_doc()),
                    cod: Box::new(cod.to_doc()),
                    map: map.iter().map(|&i| names[i].clone()).collect(),
                }
            }
        }
    }
}

fn vcat_from_doc(doc: &Document) -> Result<VCatObj> {
    let Document::Vcat {
        quantale: q,
        carrier,
        structure,
    } = doc
    else {
        return Err(parse_err("expected a vcat document".into()));
    };
    let q = quantale(q)?;
    let matrix = structure
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| q.parse_value(v))
                .collect::<Result<Vec<QValue>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    VCatObj::new(q, carrier.clone(), matrix)
}

pub fn vcat_doc(x: &VCatObj) -> Document {
    Document::Vcat {
        quantale: x.quantale().name().into(),
        carrier: x.names().to_vec(),
        structure: x
            .matrix()
            .iter()
            .map(|row| row.iter().map(|v| v.to_string()).collect())
            .collect(),
    }
}

pub fn base_doc(b: &Base) -> Document {
    match b {
        Base::VCat(x) => vcat_doc(x),
        Base::Top(t) => Document::Top {
            carrier: t.names().to_vec(),
            opens: t
                .opens()
                .iter()
                .map(|&o| elements(o).map(|i| t.names()[i].clone()).collect())
                .collect(),
        },
        Base::App(a) => Document::App {
            carrier: a.names().to_vec(),
            delta: a
                .table()
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect())
                .collect(),
        },
    }
}

fn name_blocks(names: &[String], blocks: Vec<Vec<usize>>) -> Vec<Vec<String>> {
    blocks
        .into_iter()
        .map(|bl| bl.into_iter().map(|i| names[i].clone()).collect())
        .collect()
}

pub fn equ_doc(e: &EquObj) -> Document {
    Document::Equ {
        base: Box::new(base_doc(e.base())),
        equivalence: name_blocks(e.base().names(), e.equiv().blocks()),
    }
}

pub fn pequ_doc(p: &PEquObj) -> Document {
    let names = p.base().names();
    Document::Pequ {
        base: Box::new(vcat_doc(p.base())),
        per: p
            .per()
            .pairs()
            .into_iter()
            .map(|(a, b)| [names[a].clone(), names[b].clone()])
            .collect(),
    }
}

pub fn assembly_doc(a: &Assembly) -> Document {
    let names = a.base().names();
    Document::Assembly {
        base: Box::new(vcat_doc(a.base())),
        elements: (0..a.len())
            .map(|i| ElementDoc {
                name: a.elems()[i].clone(),
                realizers: a
                    .realizers(i)
                    .into_iter()
                    .map(|x| names[x].clone())
                    .collect(),
            })
            .collect(),
    }
}

pub fn span_doc(s: &PseudoEqRel) -> Document {
    let names = s.x0.names();
    Document::Span {
        x1: Box::new(vcat_doc(&s.x1)),
        x0: Box::new(vcat_doc(&s.x0)),
        r1: s.r1.iter().map(|&i| names[i].clone()).collect(),
        r2: s.r2.iter().map(|&i| names[i].clone()).collect(),
    }
}

/// A morphism document between two values.
pub fn morphism_doc(dom: Value, cod: Value, map: Vec<usize>) -> Document {
    Value::Morphism {
        dom: Box::new(dom),
        cod: Box::new(cod),
        map,
    }
    .to_doc()
}

pub fn parse(text: &str) -> Result<Value> {
    let doc: Document = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    Value::from_doc(&doc)
}

pub fn print(v: &Value) -> String {
    serde_json::to_string_pretty(&v.to_doc()).expect("documents serialize")
}
