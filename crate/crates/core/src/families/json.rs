//! JSON document form of a [`CombinationSpec`]:
//! `{modulus, prefactor, terms: [{l, c_re, c_im}], family: {tag, params}}`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{
    build_psi5_even_circle, build_psi5_odd, build_psi_even5, build_psi_prime, CombinationSpec,
    Family, Term,
};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecDocument {
    modulus: u32,
    prefactor: bool,
    terms: Vec<TermDocument>,
    family: FamilyDocument,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDocument {
    l: u32,
    c_re: f64,
    c_im: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "tag", content = "params", deny_unknown_fields)]
enum FamilyDocument {
    Generic {},
    Psi5Odd { beta_re: f64, beta_im: f64 },
    Psi5EvenCircle { theta: f64 },
    Psi5EvenPerturbed { epsilon: f64, phi: f64 },
    PsiPrime { p: u32, epsilon: f64, phi: f64, x: Vec<f64> },
}

impl From<&Family> for FamilyDocument {
    fn from(f: &Family) -> Self {
        match f {
            Family::Generic => FamilyDocument::Generic {},
            Family::Psi5Odd { beta } => FamilyDocument::Psi5Odd {
                beta_re: beta.re,
                beta_im: beta.im,
            },
            Family::Psi5EvenCircle { theta } => FamilyDocument::Psi5EvenCircle { theta: *theta },
            Family::Psi5EvenPerturbed { epsilon, phi } => FamilyDocument::Psi5EvenPerturbed {
                epsilon: *epsilon,
                phi: *phi,
            },
            Family::PsiPrime { p, epsilon, phi, x } => FamilyDocument::PsiPrime {
                p: *p,
                epsilon: *epsilon,
                phi: *phi,
                x: x.clone(),
            },
        }
    }
}

impl CombinationSpec {
    pub fn to_json(&self) -> String {
        let doc = SpecDocument {
            modulus: self.modulus,
            prefactor: self.prefactor,
            terms: self
                .terms
                .iter()
                .map(|t| TermDocument {
                    l: t.l,
                    c_re: t.c.re,
                    c_im: t.c.im,
                })
                .collect(),
            family: (&self.family).into(),
        };
        serde_json::to_string_pretty(&doc).expect("spec serialises")
    }

    /// Parse and validate a spec document. Tagged families are rebuilt from
    /// their parameters and must agree with the stored terms.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SpecDocument = serde_json::from_str(text)
            .map_err(|e| Error::InvalidArgument(format!("bad spec document: {e}")))?;
        let terms: Vec<Term> = doc
            .terms
            .iter()
            .map(|t| Term {
                l: t.l,
                c: Complex::new(t.c_re, t.c_im),
            })
            .collect();
        let rebuilt = match doc.family {
            FamilyDocument::Generic {} => {
                return CombinationSpec::new(doc.modulus, doc.prefactor, terms)
            }
            FamilyDocument::Psi5Odd { beta_re, beta_im } => {
                build_psi5_odd(Complex::new(beta_re, beta_im))?
            }
            FamilyDocument::Psi5EvenCircle { theta } => build_psi5_even_circle(theta),
            FamilyDocument::Psi5EvenPerturbed { epsilon, phi } => build_psi_even5(epsilon, phi)?,
            FamilyDocument::PsiPrime { p, epsilon, phi, x } => build_psi_prime(p, epsilon, phi, &x)?,
        };
        let stored = CombinationSpec::new(doc.modulus, doc.prefactor, terms)?;
        if !same_terms(&stored, &rebuilt) {
            return Err(Error::InvalidArgument(format!(
                "terms do not match the {} parameters",
                rebuilt.family.tag()
            )));
        }
        Ok(rebuilt)
    }
}

fn same_terms(a: &CombinationSpec, b: &CombinationSpec) -> bool {
    if a.modulus != b.modulus || a.prefactor != b.prefactor || a.terms.len() != b.terms.len() {
        return false;
    }
    a.terms.iter().all(|t| {
        b.terms
            .iter()
            .find(|u| u.l == t.l)
            .is_some_and(|u| (u.c - t.c).norm() <= 1e-9 * (1.0 + t.c.norm()))
    })
}
