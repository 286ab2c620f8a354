//! The affine Weyl group `Coweights ⋊ W` acting on weights at a fixed level,
//! and the classification of its orbits.
//!
//! A translation by the coweight `t` shifts a weight by `gram · t`, where
//! `gram = k · basic_gram` is the level-`k` form. The closed dominant alcove
//! `{chi_i >= 0, <chi, theta^vee> <= k}` is a strict fundamental domain; an
//! orbit is regular exactly when it meets the alcove's interior.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::repth::{self, HighestWeight};
use crate::rootdata::{Coweight, RootDatum, Weight, WeylElement};

/// The level-`k` bilinear form defining the twist.
#[derive(Clone, Debug)]
pub struct LevelForm {
    datum: Arc<RootDatum>,
    level: i64,
    gram: IntMatrix,
}

impl LevelForm {
    /// `k` times the basic form. Only positive levels are non-degenerate.
    pub fn new(datum: Arc<RootDatum>, level: i64) -> Result<Self> {
        if level <= 0 {
            return Err(Error::DegenerateTwist(level));
        }
        let gram = datum.basic_gram().scale(level);
        Ok(Self { datum, level, gram })
    }

    /// The trace form of a unitary representation, `b(X, Y) = Tr_V(XY)`.
    pub fn from_representation(datum: Arc<RootDatum>, hw: &HighestWeight) -> Result<Self> {
        let level = repth::level_of(&datum, hw)?;
        Self::new(datum, level)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn datum_arc(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    /// The form restricted to coweights, in simple-coroot coordinates.
    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    /// The map `t -> B(t, .)` from coweights to weights; equal to `gram`
    /// because the two coordinate systems are dual.
    pub fn translation_map(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn determinant(&self) -> i128 {
        self.gram.determinant()
    }

    pub fn translate(&self, t: &Coweight) -> Weight {
        Weight(self.gram.mul_vec(t.coords()))
    }

    pub fn act(&self, g: &AffineWeylElement, chi: &Weight) -> Weight {
        g.linear.act(chi).add(&self.translate(&g.translation))
    }

    fn alcove_height(&self, chi: &Weight) -> i64 {
        self.datum.comarks().iter().zip(chi.coords()).map(|(a, b)| a * b).sum()
    }

    /// Reflection through the affine wall `<chi, theta^vee> = k`.
    fn affine_reflection(&self, chi: &Weight) -> Weight {
        let theta = &self.datum.highest_root().weight;
        chi.add(&theta.scale(self.level - self.alcove_height(chi)))
    }

    fn is_interior(&self, chi: &Weight) -> bool {
        chi.coords().iter().all(|&x| x > 0) && self.alcove_height(chi) < self.level
    }

    /// Folds `chi` into the closed alcove; returns the point and the sign of
    /// the affine Weyl element used.
    fn fold(&self, chi: &Weight) -> (Weight, i64) {
        let mut cur = chi.clone();
        let mut sign = 1;
        loop {
            let (dom, s, _) = self.datum.dominant_representative(&cur);
            cur = dom;
            sign *= s;
            if self.alcove_height(&cur) > self.level {
                cur = self.affine_reflection(&cur);
                sign = -sign;
            } else {
                return (cur, sign);
            }
        }
    }

    /// True iff no nontrivial affine Weyl element fixes `chi`.
    pub fn is_regular(&self, chi: &Weight) -> bool {
        let (point, _) = self.fold(chi);
        self.is_interior(&point)
    }

    pub fn canonicalize(&self, chi: &Weight) -> Canonical {
        let (point, sign) = self.fold(chi);
        if self.is_interior(&point) {
            Canonical::Regular {
                rep: OrbitRep::regular(point),
                sign,
            }
        } else {
            Canonical::Singular { rep: point }
        }
    }

    /// Like [`Self::canonicalize`], also returning an element `g` with
    /// `act(g, chi)` equal to the alcove representative.
    pub fn canonicalize_with_element(&self, chi: &Weight) -> (Canonical, AffineWeylElement) {
        let datum = &self.datum;
        let n = datum.rank();
        let theta = datum.highest_root();
        let s_theta = AffineWeylElement {
            translation: theta.coroot.clone(),
            linear: datum.reflection_element(theta),
        };
        let simple: Vec<AffineWeylElement> = (0..n)
            .map(|i| AffineWeylElement::linear(datum.simple_reflection_element(i)))
            .collect();

        let mut g = AffineWeylElement::identity(n);
        let mut cur = chi.clone();
        loop {
            if let Some(i) = cur.coords().iter().position(|&x| x < 0) {
                cur = datum.simple_reflection(i, &cur);
                g = simple[i].compose(&g);
            } else if self.alcove_height(&cur) > self.level {
                cur = self.affine_reflection(&cur);
                g = s_theta.compose(&g);
            } else {
                break;
            }
        }
        debug_assert_eq!(self.act(&g, chi), cur);
        let canonical = if self.is_interior(&cur) {
            Canonical::Regular {
                rep: OrbitRep::regular(cur),
                sign: g.sign(),
            }
        } else {
            Canonical::Singular { rep: cur }
        };
        (canonical, g)
    }

    /// One representative per regular orbit: the interior lattice points of
    /// the alcove, in lexicographic order.
    pub fn enumerate_regular_orbits(&self) -> Vec<OrbitRep> {
        let comarks = self.datum.comarks().to_vec();
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(comarks.len());
        interior_points(&comarks, self.level - 1, &mut prefix, &mut out);
        out.into_iter().map(|c| OrbitRep::regular(Weight(c))).collect()
    }
}

fn interior_points(comarks: &[i64], budget: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    let i = prefix.len();
    if i == comarks.len() {
        out.push(prefix.clone());
        return;
    }
    // the remaining coordinates need at least 1 each
    let reserve: i64 = comarks[i + 1..].iter().sum();
    let mut x = 1;
    while comarks[i] * x + reserve <= budget {
        prefix.push(x);
        interior_points(comarks, budget - comarks[i] * x, prefix, out);
        prefix.pop();
        x += 1;
    }
}

/// An element `(t, w)` of the affine Weyl group, acting by
/// `chi -> w chi + B(t, .)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineWeylElement {
    pub translation: Coweight,
    pub linear: WeylElement,
}

impl AffineWeylElement {
    pub fn identity(rank: usize) -> Self {
        Self {
            translation: Coweight::zero(rank),
            linear: WeylElement::identity(rank),
        }
    }

    pub fn linear(w: WeylElement) -> Self {
        let rank = w.matrix().nrows();
        Self {
            translation: Coweight::zero(rank),
            linear: w,
        }
    }

    pub fn translation(t: Coweight) -> Self {
        let rank = t.rank();
        Self {
            translation: t,
            linear: WeylElement::identity(rank),
        }
    }

    /// `(t1, w1)(t2, w2) = (t1 + w1 t2, w1 w2)`
    pub fn compose(&self, other: &AffineWeylElement) -> AffineWeylElement {
        AffineWeylElement {
            translation: self
                .translation
                .add(&self.linear.act_coweight(&other.translation)),
            linear: self.linear.compose(&other.linear),
        }
    }

    pub fn inverse(&self) -> AffineWeylElement {
        let linear = self.linear.inverse();
        AffineWeylElement {
            translation: linear.act_coweight(&self.translation).scale(-1),
            linear,
        }
    }

    pub fn sign(&self) -> i64 {
        self.linear.sign()
    }

    pub fn is_identity(&self) -> bool {
        self.translation.is_zero() && self.linear.is_identity()
    }
}

/// Canonical representative of an affine Weyl orbit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitRep {
    pub weight: Weight,
    pub is_regular: bool,
}

impl OrbitRep {
    fn regular(weight: Weight) -> Self {
        Self {
            weight,
            is_regular: true,
        }
    }
}

/// Result of [`LevelForm::canonicalize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Canonical {
    /// `sign` is the sign of any affine Weyl element carrying the input to `rep`.
    Regular { rep: OrbitRep, sign: i64 },
    /// The input has a nontrivial stabilizer; `rep` is its point on an alcove wall.
    Singular { rep: Weight },
}

impl Canonical {
    pub fn is_regular(&self) -> bool {
        matches!(self, Canonical::Regular { .. })
    }

    pub fn regular(&self) -> Option<(&OrbitRep, i64)> {
        match self {
            Canonical::Regular { rep, sign } => Some((rep, *sign)),
            Canonical::Singular { .. } => None,
        }
    }
}
