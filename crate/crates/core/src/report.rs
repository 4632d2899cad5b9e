//! Classification of small permutation matrices: every not-once-separable
//! class with its structural flags and a certificate of bounded saturation
//! where one is found.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::catalog;
use crate::classify::{
    anti_identity_occurrences, is_once_separable, is_permutation, is_trivial, max_anti_identity_height, outer_class,
    OuterClass,
};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Pattern};
use crate::search::{canonical_form, orbit, permutation_matrices, SymmetryGroup};
use crate::witness::{construct_w, verify};

pub const MAX_REPORT_SIZE: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// Non-trivial Q1-like: `W(P)` is a vertical witness.
    Q1Like,
    /// Q0-like with an anti-identity of height `k - 1`: `W(P)` is a vertical
    /// witness.
    AlmostQ1,
    /// A catalog matrix is a vertical witness for a member of the class.
    CatalogWitness,
}

impl Certificate {
    pub fn as_str(self) -> &'static str {
        match self {
            Certificate::Q1Like => "q1-like",
            Certificate::AlmostQ1 => "almost-q1",
            Certificate::CatalogWitness => "catalog-witness",
        }
    }
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRow {
    pub size: usize,
    pub canonical_form: Matrix,
    pub once_separable: bool,
    /// Outer class up to reflection (constant on the class).
    pub outer_class: OuterClass,
    /// Measured on the oriented representative (see [`oriented_member`]).
    pub max_anti_identity_height: usize,
    /// Some non-trivial, exactly Q0-like member has an anti-identity of
    /// height `k - 1`.
    pub almost_q1: bool,
    /// `W(P)` avoids `P` for the oriented representative.
    pub w_avoids: bool,
    pub certificate: Option<Certificate>,
    pub witness_name: Option<&'static str>,
}

impl ReportRow {
    pub fn permutation_word(&self) -> Option<String> {
        permutation_word(&self.canonical_form)
    }
}

/// One-line form of a permutation matrix: the 1-based column of each row's
/// 1-entry, e.g. `3142` for Q1.
pub fn permutation_word(m: &Matrix) -> Option<String> {
    if !is_permutation(m) {
        return None;
    }
    let sep = if m.rows() > 9 { " " } else { "" };
    Some(
        (0..m.rows())
            .map(|i| (m.row_ones(i)[0] + 1).to_string())
            .collect::<Vec<_>>()
            .join(sep),
    )
}

impl Serialize for ReportRow {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(rename_all = "camelCase")]
        struct Flags {
            once_separable: bool,
            outer_class: OuterClass,
            max_anti_identity_height: usize,
            almost_q1: bool,
            w_avoids_pattern: bool,
        }
        #[derive(Serialize)]
        #[serde(rename_all = "camelCase")]
        struct Record<'a> {
            canonical_form: &'a Matrix,
            size: usize,
            flags: Flags,
            certificate: Option<Certificate>,
            witness_name: Option<&'static str>,
        }
        Record {
            canonical_form: &self.canonical_form,
            size: self.size,
            flags: Flags {
                once_separable: self.once_separable,
                outer_class: self.outer_class,
                max_anti_identity_height: self.max_anti_identity_height,
                almost_q1: self.almost_q1,
                w_avoids_pattern: self.w_avoids,
            },
            certificate: self.certificate,
            witness_name: self.witness_name,
        }
        .serialize(serializer)
    }
}

fn exact_class(m: &Matrix) -> OuterClass {
    Pattern::strict(m.clone())
        .ok()
        .and_then(|p| outer_class(&p).ok())
        .map_or(OuterClass::Neither, |(exact, _)| exact)
}

/// First member of the orbit (in matrix order) whose outer entries form Q0 or
/// Q1 exactly, falling back to `rep`.
pub fn oriented_member(rep: &Matrix, group: SymmetryGroup) -> Matrix {
    orbit(rep, group)
        .into_iter()
        .find(|m| exact_class(m) != OuterClass::Neither)
        .unwrap_or_else(|| rep.clone())
}

/// Whether `W(P)` exists and is a vertical witness for the pattern it was
/// built from.
fn w_is_vertical_witness(m: &Matrix) -> bool {
    let Ok(p) = Pattern::new(m.clone()) else {
        return false;
    };
    construct_w(&p).is_ok_and(|c| verify(&c.result, &c.pattern).is_vertical)
}

fn w_avoids(m: &Matrix) -> bool {
    let Ok(p) = Pattern::new(m.clone()) else {
        return false;
    };
    construct_w(&p).is_ok_and(|c| crate::contain::avoids(&c.result, &c.pattern))
}

fn has_height(m: &Matrix, height: usize) -> bool {
    anti_identity_occurrences(m, height).iter().any(|o| o.height == height)
}

fn certify(rep: &Matrix, group: SymmetryGroup) -> (Option<Certificate>, Option<&'static str>, bool) {
    let k = rep.rows();
    let members = orbit(rep, group);
    let almost_q1_members: Vec<&Matrix> = members
        .iter()
        .filter(|m| exact_class(m) == OuterClass::Q0Like && !is_trivial(m) && has_height(m, k - 1))
        .collect();
    let almost_q1 = !almost_q1_members.is_empty();

    let q1_like = members
        .iter()
        .any(|m| exact_class(m) == OuterClass::Q1Like && !is_trivial(m) && w_is_vertical_witness(m));
    if q1_like {
        return (Some(Certificate::Q1Like), None, almost_q1);
    }
    if almost_q1_members.iter().any(|m| w_is_vertical_witness(m)) {
        return (Some(Certificate::AlmostQ1), None, almost_q1);
    }
    for (pattern_name, witness_name) in [("Q6", "W6"), ("Q7", "W7"), ("Q8", "W8"), ("Q9", "W9")] {
        let (Ok(q), Ok(w)) = (catalog::pattern(pattern_name), catalog::builtin(witness_name)) else {
            continue;
        };
        if q.dims() == rep.dims() && canonical_form(&q, group) == *rep && verify(&w.matrix, &q).is_vertical {
            return (Some(Certificate::CatalogWitness), Some(witness_name), almost_q1);
        }
    }
    (None, None, almost_q1)
}

/// Enumerates permutation matrices of size `2..=max_k`, keeps the
/// not-once-separable ones, reduces them to canonical forms under `group` and
/// describes each class. Rows are ordered by size, then canonical form. The
/// 1x1 pattern has no split at all and is left out.
pub fn classification_report(max_k: usize, group: SymmetryGroup) -> Result<Vec<ReportRow>> {
    if max_k == 0 || max_k > MAX_REPORT_SIZE {
        return Err(Error::contract(format!(
            "report size must be in 1..={MAX_REPORT_SIZE}, got {max_k}"
        )));
    }
    let mut reps: Vec<Matrix> = Vec::new();
    for k in 2..=max_k {
        let classes: BTreeSet<Matrix> = permutation_matrices(k)?
            .filter(|p| is_once_separable(p).is_none())
            .map(|p| canonical_form(&p, group))
            .collect();
        reps.extend(classes);
    }
    Ok(reps
        .into_par_iter()
        .map(|rep| {
            let oriented = oriented_member(&rep, group);
            let (certificate, witness_name, almost_q1) = certify(&rep, group);
            let outer = Pattern::strict(rep.clone())
                .ok()
                .and_then(|p| outer_class(&p).ok())
                .map_or(OuterClass::Neither, |(_, up_to)| up_to);
            ReportRow {
                size: rep.rows(),
                once_separable: is_once_separable(&rep).is_some(),
                outer_class: outer,
                max_anti_identity_height: max_anti_identity_height(&oriented),
                almost_q1,
                w_avoids: w_avoids(&oriented),
                certificate,
                witness_name,
                canonical_form: rep,
            }
        })
        .collect())
}

/// Aligned plain-text rendering of a report.
pub struct ReportTable<'a>(pub &'a [ReportRow]);

impl fmt::Display for ReportTable<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let header = [
            "size",
            "class",
            "outer",
            "maxH",
            "almostQ1",
            "W(P)avoids",
            "certificate",
            "witness",
        ];
        let rows: Vec<[String; 8]> = self
            .0
            .iter()
            .map(|r| {
                [
                    r.size.to_string(),
                    r.permutation_word()
                        .unwrap_or_else(|| r.canonical_form.row_strings().join("/")),
                    r.outer_class.to_string(),
                    r.max_anti_identity_height.to_string(),
                    r.almost_q1.to_string(),
                    r.w_avoids.to_string(),
                    r.certificate.map_or("none", Certificate::as_str).to_string(),
                    r.witness_name.unwrap_or("-").to_string(),
                ]
            })
            .collect();
        let mut widths = header.map(str::len);
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let line = |f: &mut fmt::Formatter<'_>, cells: &[&str]| -> fmt::Result {
            let parts: Vec<String> = cells.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
            writeln!(f, "{}", parts.join("  ").trim_end())
        };
        line(f, &header)?;
        for row in &rows {
            line(f, &row.iter().map(String::as_str).collect::<Vec<_>>())?;
        }
        let certified = self.0.iter().filter(|r| r.certificate.is_some()).count();
        write!(f, "{} classes, {} certified", self.0.len(), certified)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_classes_up_to_size_3() {
        for g in [SymmetryGroup::ReflectionsOnly, SymmetryGroup::Full] {
            assert!(classification_report(3, g).unwrap().is_empty());
        }
    }

    #[test]
    fn single_class_of_size_4() {
        let rows = classification_report(4, SymmetryGroup::Full).unwrap();
        assert_eq!(rows.len(), 1);
        let q1 = catalog::builtin("Q1").unwrap();
        assert_eq!(rows[0].canonical_form, canonical_form(&q1.matrix, SymmetryGroup::Full));
        assert_eq!(rows[0].certificate, Some(Certificate::Q1Like));
        assert_eq!(rows[0].outer_class, OuterClass::Q1Like);
    }

    #[test]
    fn rejects_large_sizes() {
        assert!(classification_report(8, SymmetryGroup::Full).is_err());
        assert!(classification_report(0, SymmetryGroup::Full).is_err());
    }

    #[test]
    fn words() {
        let q1 = catalog::builtin("Q1").unwrap();
        assert_eq!(permutation_word(&q1.matrix).as_deref(), Some("3142"));
        assert_eq!(permutation_word(&catalog::builtin("W6").unwrap().matrix), None);
    }

    #[test]
    fn table_renders() {
        let rows = classification_report(5, SymmetryGroup::RotationsAndReflections).unwrap();
        let text = ReportTable(&rows).to_string();
        assert!(text.starts_with("size"));
        assert!(text.ends_with("5 classes, 5 certified"));
        let json = serde_json::to_value(&rows).unwrap();
        assert_eq!(json[0]["flags"]["outerClass"], "Q1like");
    }
}
