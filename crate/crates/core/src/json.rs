//! Serializable views of forms, spaces and pairing checks. Rationals are
//! written as strings (`"-3/4"`) so nothing is lost in transit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{DiffForm, IndexSet, TForm};
use crate::linalg::Matrix;
use crate::pairing::PairingCheck;
use crate::ratpoly::{MultiIndex, Polynomial, Rational, SLocalPoly};
use crate::spaces::FormSpace;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub s_power: u32,
    pub monomial: Vec<u32>,
    /// 1-based covector indices.
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    /// Number of coordinates: `n + 1` on the orthant, `n` on `T`.
    pub ambient_dim: usize,
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homogeneity: Option<i64>,
    /// Set for forms on the simplex `T`.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub simplex: bool,
    pub terms: Vec<TermJson>,
}

fn bad(message: impl Into<String>) -> Error {
    Error::Parse {
        position: 0,
        message: message.into(),
    }
}

fn index_set(indices: &[usize], dim: usize) -> Result<IndexSet> {
    if indices.iter().any(|&i| i == 0 || i > dim) {
        return Err(bad(format!("covector index out of range 1..={dim}")));
    }
    let zero_based: Vec<usize> = indices.iter().map(|i| i - 1).collect();
    IndexSet::from_indices(&zero_based).ok_or_else(|| bad("repeated covector index"))
}

impl FormJson {
    pub fn from_form(alpha: &DiffForm) -> Self {
        let mut terms = Vec::new();
        for (index, c) in alpha.terms() {
            for (m, q) in c.numerator().terms().rev() {
                terms.push(TermJson {
                    coeff: q.to_string(),
                    s_power: c.s_power(),
                    monomial: m.exponents().to_vec(),
                    indices: index.iter().map(|i| i + 1).collect(),
                });
            }
        }
        FormJson {
            ambient_dim: alpha.nvars(),
            degree: alpha.degree(),
            homogeneity: alpha.homogeneous_degree().ok(),
            simplex: false,
            terms,
        }
    }

    pub fn from_tform(a: &TForm) -> Self {
        let mut terms = Vec::new();
        for (index, p) in a.terms() {
            for (m, q) in p.terms().rev() {
                terms.push(TermJson {
                    coeff: q.to_string(),
                    s_power: 0,
                    monomial: m.exponents().to_vec(),
                    indices: index.iter().map(|i| i + 1).collect(),
                });
            }
        }
        FormJson {
            ambient_dim: a.n(),
            degree: a.degree(),
            homogeneity: None,
            simplex: true,
            terms,
        }
    }

    fn coefficients(&self) -> Result<Vec<(IndexSet, SLocalPoly)>> {
        let dim = self.ambient_dim;
        self.terms
            .iter()
            .map(|t| {
                let index = index_set(&t.indices, dim)?;
                if index.len() != self.degree {
                    return Err(bad("term degree differs from the form degree"));
                }
                if t.monomial.len() != dim {
                    return Err(bad("monomial length differs from ambient_dim"));
                }
                let q: Rational = t.coeff.parse().map_err(|_| bad(format!("bad rational `{}`", t.coeff)))?;
                let p = Polynomial::monomial(MultiIndex::new(t.monomial.clone()), q);
                Ok((index, SLocalPoly::new(p, t.s_power)))
            })
            .collect()
    }

    pub fn to_form(&self) -> Result<DiffForm> {
        if self.simplex {
            return Err(bad("expected a form on the orthant, found one on T"));
        }
        let mut out = DiffForm::zero(self.ambient_dim, self.degree);
        for (index, c) in self.coefficients()? {
            out = &out + &DiffForm::term(index, c);
        }
        Ok(out)
    }

    pub fn to_tform(&self) -> Result<TForm> {
        if !self.simplex {
            return Err(bad("expected a form on T"));
        }
        let mut out = TForm::zero(self.ambient_dim, self.degree);
        for (index, c) in self.coefficients()? {
            let p = c.into_polynomial()?;
            out = &out + &TForm::term(index, p);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpaceJson {
    pub space: String,
    pub n: usize,
    pub r: u32,
    pub k: usize,
    pub form_degree: usize,
    pub dim: usize,
    pub basis: Vec<FormJson>,
}

impl SpaceJson {
    pub fn from_space(space: &FormSpace) -> Self {
        SpaceJson {
            space: space.kind().to_string(),
            n: space.n(),
            r: space.r(),
            k: space.k(),
            form_degree: space.form_degree(),
            dim: space.dim(),
            basis: space.basis().iter().map(FormJson::from_form).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairingJson {
    pub rows_space: String,
    pub cols_space: String,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub determinant: Option<String>,
    pub nondegenerate: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<Vec<String>>>,
}

impl PairingJson {
    pub fn from_check(check: &PairingCheck, entries: Option<&Matrix>) -> Self {
        PairingJson {
            rows_space: check.rows_label.clone(),
            cols_space: check.cols_label.clone(),
            rows: check.rows,
            cols: check.cols,
            rank: check.rank,
            determinant: check.determinant.as_ref().map(ToString::to_string),
            nondegenerate: check.nondegenerate(),
            entries: entries.map(|m| {
                (0..m.rows())
                    .map(|i| m.row(i).iter().map(ToString::to_string).collect())
                    .collect()
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_form, parse_tform};

    #[test]
    fn form_round_trip() {
        let a = parse_form("(x^2 - 1/3*y*z)/s*dx/\\dz + 4*dy/\\dz", 2).unwrap();
        let j = FormJson::from_form(&a);
        assert_eq!(j.ambient_dim, 3);
        assert_eq!(j.terms[0].indices, vec![1, 3]);
        let back = j.to_form().unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn tform_round_trip() {
        let a = parse_tform("x*dx + 1/2*dy", 2).unwrap();
        let j = FormJson::from_tform(&a);
        assert!(j.simplex);
        assert_eq!(j.to_tform().unwrap(), a);
        assert!(j.to_form().is_err());
    }

    #[test]
    fn malformed_terms_are_rejected() {
        let mut j = FormJson::from_form(&parse_form("x*dy", 2).unwrap());
        j.terms[0].indices = vec![4];
        assert!(j.to_form().is_err());
        j.terms[0].indices = vec![2];
        j.terms[0].coeff = "one".into();
        assert!(j.to_form().is_err());
    }
}
