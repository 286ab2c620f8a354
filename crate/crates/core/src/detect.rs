//! The detection map: basis classes to W-antisymmetric elements of `R(F)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::affine::OrbitRep;
use crate::cyclotomic::{Cyc, CycInt, CyclotomicField, ZetaSum};
use crate::error::{Error, Result};
use crate::rootdata::{Weight, WeylElement};
use crate::torsion::{FCharacter, FElement, FiniteGroupF};

/// A virtual character of `F`: a finite integer combination of characters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RFElement {
    coeffs: BTreeMap<FCharacter, i64>,
}

impl RFElement {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn coeffs(&self) -> &BTreeMap<FCharacter, i64> {
        &self.coeffs
    }

    pub fn coefficient(&self, ch: &FCharacter) -> i64 {
        self.coeffs.get(ch).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.is_empty()
    }

    pub fn add_term(&mut self, ch: FCharacter, coeff: i64) {
        let entry = self.coeffs.entry(ch.clone()).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.coeffs.remove(&ch);
        }
    }

    pub fn scale(&self, k: i64) -> RFElement {
        let mut out = RFElement::new();
        for (ch, &c) in &self.coeffs {
            out.add_term(ch.clone(), c * k);
        }
        out
    }

    /// Applies `w` to every character in the support.
    pub fn act(&self, group: &FiniteGroupF, w: &WeylElement) -> RFElement {
        let mut out = RFElement::new();
        for (ch, &c) in &self.coeffs {
            out.add_term(group.act_on_character(w, ch), c);
        }
        out
    }

    /// The value at `f`, as a sum of `exponent(F)`-th roots of unity.
    pub fn evaluate(&self, group: &FiniteGroupF, f: &FElement) -> ZetaSum {
        let mut z = ZetaSum::zero(group.exponent() as usize);
        for (ch, &c) in &self.coeffs {
            z.add_term(group.phase_numerator(ch, f), c);
        }
        z
    }
}

/// An element of `R(F)` with `x^w = sign(w) x` for all `w` in `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntisymmetricClass {
    element: RFElement,
}

impl AntisymmetricClass {
    /// Checks the antisymmetry condition against every Weyl element.
    pub fn new(group: &FiniteGroupF, element: RFElement) -> Option<Self> {
        let ok = group
            .level_form()
            .datum()
            .weyl_group()
            .iter()
            .all(|w| element.act(group, w) == element.scale(w.sign()));
        ok.then_some(Self { element })
    }

    pub fn element(&self) -> &RFElement {
        &self.element
    }

    pub fn into_element(self) -> RFElement {
        self.element
    }
}

/// `sum_w sign(w) s*(w chi)` for a regular weight `chi`.
pub fn theta_of_weight(group: &FiniteGroupF, chi: &Weight) -> Result<AntisymmetricClass> {
    let lf = group.level_form();
    lf.datum().check_rank(chi.coords())?;
    if !lf.is_regular(chi) {
        return Err(Error::SingularInput(format!("{chi} at level {}", lf.level())));
    }
    let mut element = RFElement::new();
    for w in lf.datum().weyl_group() {
        element.add_term(group.restrict_character(&w.act(chi)), w.sign());
    }
    Ok(AntisymmetricClass { element })
}

pub fn theta(group: &FiniteGroupF, rep: &OrbitRep) -> Result<AntisymmetricClass> {
    if !rep.is_regular {
        return Err(Error::SingularInput(rep.weight.to_string()));
    }
    theta_of_weight(group, &rep.weight)
}

/// Values of `theta` on regular orbits of `F`: rows are the regular affine
/// orbits, columns the least elements of the regular W-orbits of `F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectionMatrix {
    /// Order of the root of unity the entries are written in.
    pub order: usize,
    pub rows: Vec<Weight>,
    pub columns: Vec<FElement>,
    /// Entries in the power basis of `Z[zeta_order]`.
    pub entries: Vec<Vec<CycInt>>,
}

impl DetectionMatrix {
    pub fn new(group: &FiniteGroupF) -> Result<Self> {
        let field = CyclotomicField::new(group.exponent() as usize);
        let basis = group.level_form().enumerate_regular_orbits();
        let columns: Vec<FElement> = group.regular_orbits().into_iter().map(|(f, _)| f).collect();
        let mut entries = Vec::with_capacity(basis.len());
        for rep in &basis {
            let th = theta(group, rep)?;
            entries.push(
                columns
                    .iter()
                    .map(|f| field.reduce(&th.element().evaluate(group, f)))
                    .collect(),
            );
        }
        Ok(Self {
            order: field.order(),
            rows: basis.into_iter().map(|r| r.weight).collect(),
            columns,
            entries,
        })
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.columns.len()
    }

    pub fn field(&self) -> CyclotomicField {
        CyclotomicField::new(self.order)
    }

    /// Exact determinant; `None` unless square.
    pub fn determinant(&self) -> Option<Cyc> {
        if !self.is_square() {
            return None;
        }
        let field = self.field();
        let m = self
            .entries
            .iter()
            .map(|row| row.iter().map(|x| field.to_field(x)).collect())
            .collect();
        Some(field.determinant(m))
    }

    pub fn is_nonsingular(&self) -> bool {
        self.determinant().is_some_and(|d| !d.is_zero())
    }
}

pub fn detection_matrix(group: &FiniteGroupF) -> Result<DetectionMatrix> {
    DetectionMatrix::new(group)
}
