//! Workspace documents: named contact forms, manifold models, SW tables and
//! the adopted conventions, stored as TOML.
//!
//! ```toml
//! [conventions]
//! h_identification = "e1-to-x"
//!
//! [contact_forms.ellipse]
//! a1 = [{ kind = "cos", frequency = 1, numerator = 2 }]
//! a2 = [{ kind = "sin", frequency = 1, numerator = 3 }]
//!
//! [manifolds.s2xs2]
//! q = [[0, 1], [1, 0]]
//! euler = 4
//! signature = 0
//! b2plus = 1
//! k = [-2, -2]
//!
//! [sw_tables.x]
//! entries = [{ p = 1, r = 0, s = 0, value = 1, chamber = "negative" }]
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::contact::{ToricContactForm, DEFAULT_GRID_SIZE};
use crate::conventions::{Conventions, HIdentification};
use crate::error::{ContactError, IndexError};
use crate::index::FourManifoldModel;
use crate::surgery::{assemble_swl, GromovEquation, LocalTorusInvariant};
use crate::trig::{Term, TermKind, TrigPoly};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{location}: {message}")]
    Invalid { location: String, message: String },
    #[error("no {section} named `{name}`")]
    UnknownName { section: &'static str, name: String },
    #[error("contact form `{name}`: {source}")]
    Contact { name: String, source: ContactError },
    #[error("manifold `{name}`: {source}")]
    Manifold { name: String, source: IndexError },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub kind: String,
    #[serde(default)]
    pub frequency: u32,
    pub numerator: i64,
    #[serde(default = "one")]
    pub denominator: i64,
}

fn one() -> i64 {
    1
}

impl TermSpec {
    fn to_term(&self, location: &str) -> Result<Term, DocumentError> {
        let invalid = |message: String| DocumentError::Invalid { location: location.to_string(), message };
        let kind: TermKind = self.kind.parse().map_err(invalid)?;
        if self.denominator == 0 {
            return Err(invalid("denominator must be nonzero".to_string()));
        }
        if kind == TermKind::Const && self.frequency != 0 {
            return Err(invalid("a const term has frequency 0".to_string()));
        }
        if kind != TermKind::Const && self.frequency == 0 {
            return Err(invalid(format!("a {} term needs frequency >= 1", kind.as_str())));
        }
        Ok(Term {
            kind,
            frequency: self.frequency,
            coefficient: BigRational::new(BigInt::from(self.numerator), BigInt::from(self.denominator)),
        })
    }

    /// `None` when the reduced coefficient does not fit in `i64`.
    pub fn from_term(term: &Term) -> Option<TermSpec> {
        Some(TermSpec {
            kind: term.kind.as_str().to_string(),
            frequency: term.frequency,
            numerator: term.coefficient.numer().to_i64()?,
            denominator: term.coefficient.denom().to_i64()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContactFormSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_size: Option<usize>,
    pub a1: Vec<TermSpec>,
    pub a2: Vec<TermSpec>,
}

impl ContactFormSpec {
    pub fn from_form(form: &ToricContactForm) -> Option<ContactFormSpec> {
        let terms = |p: &TrigPoly| p.terms().iter().map(TermSpec::from_term).collect::<Option<Vec<_>>>();
        Some(ContactFormSpec {
            grid_size: (form.grid_size() != DEFAULT_GRID_SIZE).then_some(form.grid_size()),
            a1: terms(form.a1())?,
            a2: terms(form.a2())?,
        })
    }

    fn polys(&self, name: &str) -> Result<(TrigPoly, TrigPoly), DocumentError> {
        let poly = |which: &str, terms: &[TermSpec]| -> Result<TrigPoly, DocumentError> {
            let terms = terms
                .iter()
                .enumerate()
                .map(|(i, t)| t.to_term(&format!("contact_forms.{name}.{which}[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(TrigPoly::from_terms(terms.into_iter().map(|t| (t.kind, t.frequency, t.coefficient))))
        };
        Ok((poly("a1", &self.a1)?, poly("a2", &self.a2)?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldSpec {
    pub q: Vec<Vec<i64>>,
    pub euler: i64,
    pub signature: i64,
    pub b2plus: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mv_image_basis: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SwEntry {
    pub p: i64,
    pub r: i64,
    pub s: i64,
    pub value: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chamber: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SwTable {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifold: Option<String>,
    #[serde(default)]
    pub entries: Vec<SwEntry>,
}

impl SwTable {
    pub fn value(&self, p: i64, r: i64, s: i64) -> Option<&SwEntry> {
        self.entries.iter().find(|e| (e.p, e.r, e.s) == (p, r, s))
    }

    /// `SW_L` from the entries at `(1,0,0)`, `(0,1,0)` and `(0,0,1)`.
    pub fn local_invariant(&self) -> Option<LocalTorusInvariant> {
        Some(assemble_swl(self.value(1, 0, 0)?.value, self.value(0, 1, 0)?.value, self.value(0, 0, 1)?.value))
    }

    /// Base `Gr_X` (the `(1,0,0)` entry mod 2) and one equation per other
    /// Luttinger entry `(1, r, s)`.
    pub fn gromov_system(&self) -> Option<(bool, Vec<GromovEquation>)> {
        let base = self.value(1, 0, 0)?.value.rem_euclid(2) == 1;
        let eqs = self
            .entries
            .iter()
            .filter(|e| e.p == 1 && (e.r, e.s) != (0, 0))
            .map(|e| GromovEquation { r: e.r, s: e.s, gr_value: e.value.rem_euclid(2) == 1 })
            .collect();
        Some((base, eqs))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConventionsSpec {
    #[serde(default = "default_basis")]
    pub basis: String,
    #[serde(default = "default_h_identification")]
    pub h_identification: String,
    #[serde(default = "default_matrix_convention")]
    pub matrix_convention: String,
}

fn default_basis() -> String {
    Conventions::BASIS.to_string()
}

fn default_h_identification() -> String {
    HIdentification::default().as_str().to_string()
}

fn default_matrix_convention() -> String {
    Conventions::MATRIX_CONVENTION.to_string()
}

impl Default for ConventionsSpec {
    fn default() -> Self {
        ConventionsSpec {
            basis: default_basis(),
            h_identification: default_h_identification(),
            matrix_convention: default_matrix_convention(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceDocument {
    #[serde(default)]
    pub conventions: ConventionsSpec,
    #[serde(default)]
    pub contact_forms: BTreeMap<String, ContactFormSpec>,
    #[serde(default)]
    pub manifolds: BTreeMap<String, ManifoldSpec>,
    #[serde(default)]
    pub sw_tables: BTreeMap<String, SwTable>,
}

/// Line and column (1-based) of a byte offset.
fn locate(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

impl WorkspaceDocument {
    /// Parses and checks conventions, term syntax and name references.
    /// Contact positivity and model consistency are checked on lookup.
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc: WorkspaceDocument = toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map_or((1, 1), |s| locate(text, s.start));
            DocumentError::Parse { line, column, message: e.message().to_string() }
        })?;
        doc.check()?;
        Ok(doc)
    }

    /// Canonical TOML rendering; `parse(serialize(doc)) == doc`.
    pub fn serialize(&self) -> String {
        toml::to_string(self).expect("workspace documents are always representable")
    }

    fn check(&self) -> Result<(), DocumentError> {
        self.conventions()?;
        for (name, spec) in &self.contact_forms {
            spec.polys(name)?;
        }
        for (name, table) in &self.sw_tables {
            if let Some(m) = &table.manifold {
                if !self.manifolds.contains_key(m) {
                    return Err(DocumentError::Invalid {
                        location: format!("sw_tables.{name}.manifold"),
                        message: format!("no manifold named `{m}`"),
                    });
                }
            }
            let mut seen = std::collections::BTreeSet::new();
            for (i, e) in table.entries.iter().enumerate() {
                if !seen.insert((e.p, e.r, e.s)) {
                    return Err(DocumentError::Invalid {
                        location: format!("sw_tables.{name}.entries[{i}]"),
                        message: format!("duplicate surgery ({},{},{})", e.p, e.r, e.s),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn conventions(&self) -> Result<Conventions, DocumentError> {
        let invalid = |field: &str, message: String| DocumentError::Invalid {
            location: format!("conventions.{field}"),
            message,
        };
        if self.conventions.basis != Conventions::BASIS {
            return Err(invalid("basis", format!("only the basis {} is supported", Conventions::BASIS)));
        }
        if self.conventions.matrix_convention != Conventions::MATRIX_CONVENTION {
            return Err(invalid(
                "matrix_convention",
                format!("only the `{}` convention is supported", Conventions::MATRIX_CONVENTION),
            ));
        }
        let h_identification = self.conventions.h_identification.parse().map_err(|m| invalid("h_identification", m))?;
        Ok(Conventions { h_identification })
    }

    pub fn contact_form(&self, name: &str) -> Result<ToricContactForm, DocumentError> {
        let spec = self
            .contact_forms
            .get(name)
            .ok_or_else(|| DocumentError::UnknownName { section: "contact form", name: name.to_string() })?;
        let (a1, a2) = spec.polys(name)?;
        ToricContactForm::with_grid_size(a1, a2, spec.grid_size.unwrap_or(DEFAULT_GRID_SIZE))
            .map_err(|source| DocumentError::Contact { name: name.to_string(), source })
    }

    pub fn manifold(&self, name: &str) -> Result<FourManifoldModel, DocumentError> {
        let spec = self
            .manifolds
            .get(name)
            .ok_or_else(|| DocumentError::UnknownName { section: "manifold", name: name.to_string() })?;
        FourManifoldModel::new(
            spec.q.clone(),
            spec.euler,
            spec.signature,
            spec.k.clone(),
            spec.b2plus,
            spec.mv_image_basis.clone(),
        )
        .map_err(|source| DocumentError::Manifold { name: name.to_string(), source })
    }

    pub fn sw_table(&self, name: &str) -> Result<&SwTable, DocumentError> {
        self.sw_tables.get(name).ok_or_else(|| DocumentError::UnknownName { section: "SW table", name: name.to_string() })
    }
}
