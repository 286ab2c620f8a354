//! The finite group `F = {t in T : B(t', t) = 1 for all coweights t'}`, its
//! Weyl group action and its characters.
//!
//! In simple-coroot coordinates `F = gram^{-1} Z^r / Z^r`. With the Smith form
//! `U gram V = diag(d)`, `F` is `⊕ Z/d_i` generated by the columns of `V`
//! divided by `d_i`, and its characters are `⊕ Z/d_i` as well: the restriction
//! of a weight `chi` has components `(V^T chi)_i mod d_i`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::affine::LevelForm;
use crate::error::{Error, Result};
use crate::lattice::{IntMatrix, SmithForm};
use crate::rootdata::{Weight, WeylElement};

/// Upper bound on `|F|` for explicit element enumeration.
pub const MAX_F_ORDER: usize = 2_000_000;

/// A point of `F`.
///
/// `coords[j] / exponent` is the `j`-th simple-coroot coordinate reduced to
/// `[0, 1)`; `snf` holds the same point in the Smith basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FElement {
    pub coords: Vec<i64>,
    pub snf: Vec<i64>,
}

/// A character of `F`: `f -> exp(2 pi i sum_i values[i] snf_i(f) / d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FCharacter(pub Vec<i64>);

#[derive(Clone, Debug)]
pub struct FiniteGroupF {
    level_form: LevelForm,
    smith: SmithForm,
    exponent: i64,
    elements: Vec<FElement>,
}

impl FiniteGroupF {
    pub fn new(lf: &LevelForm) -> Result<Self> {
        Self::with_limit(lf, MAX_F_ORDER)
    }

    pub fn with_limit(lf: &LevelForm, limit: usize) -> Result<Self> {
        if lf.determinant() == 0 {
            return Err(Error::DegenerateTwist(lf.level()));
        }
        let smith = SmithForm::compute(lf.gram());
        let order: i128 = smith.diagonal.iter().map(|&d| d as i128).product();
        if order > limit as i128 {
            return Err(Error::ResourceLimit {
                what: "finite group F",
                limit,
            });
        }
        let exponent = *smith.diagonal.last().expect("positive rank");
        let mut group = FiniteGroupF {
            level_form: lf.clone(),
            smith,
            exponent,
            elements: Vec::new(),
        };
        // mixed-radix enumeration, first Smith coordinate slowest
        let divisors = group.smith.diagonal.clone();
        let mut elements = Vec::with_capacity(order as usize);
        let mut digits = vec![0i64; divisors.len()];
        loop {
            elements.push(group.element_from_snf(&digits));
            let mut i = divisors.len();
            loop {
                if i == 0 {
                    group.elements = elements;
                    return Ok(group);
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < divisors[i] {
                    break;
                }
                digits[i] = 0;
            }
        }
    }

    pub fn level_form(&self) -> &LevelForm {
        &self.level_form
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Invariant factors greater than one, each dividing the next.
    pub fn elementary_divisors(&self) -> Vec<i64> {
        self.smith.diagonal.iter().copied().filter(|&d| d > 1).collect()
    }

    /// Least common multiple of element orders; the roots of unity needed
    /// for character values have this order.
    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn elements(&self) -> &[FElement] {
        &self.elements
    }

    fn index_of(&self, f: &FElement) -> usize {
        f.snf
            .iter()
            .zip(&self.smith.diagonal)
            .fold(0usize, |acc, (&a, &d)| acc * d as usize + a as usize)
    }

    pub fn identity(&self) -> &FElement {
        &self.elements[0]
    }

    pub fn element_from_snf(&self, snf: &[i64]) -> FElement {
        let e = self.exponent;
        let d = &self.smith.diagonal;
        let snf: Vec<i64> = snf.iter().zip(d).map(|(a, d)| a.rem_euclid(*d)).collect();
        let scaled: Vec<i64> = snf.iter().zip(d).map(|(a, d)| a * (e / d)).collect();
        let coords = self
            .smith
            .v
            .mul_vec(&scaled)
            .into_iter()
            .map(|x| x.rem_euclid(e))
            .collect();
        FElement { coords, snf }
    }

    /// The point with simple-coroot coordinates `coords / exponent`, if it
    /// lies in `F`.
    pub fn element_from_coords(&self, coords: &[i64]) -> Option<FElement> {
        let e = self.exponent;
        let pre = self.smith.v_inv.mul_vec(coords);
        let mut snf = Vec::with_capacity(pre.len());
        for (x, &d) in pre.iter().zip(&self.smith.diagonal) {
            if (x * d) % e != 0 {
                return None;
            }
            snf.push((x * d / e).rem_euclid(d));
        }
        Some(self.element_from_snf(&snf))
    }

    pub fn add(&self, a: &FElement, b: &FElement) -> FElement {
        let s: Vec<i64> = a.snf.iter().zip(&b.snf).map(|(x, y)| x + y).collect();
        self.element_from_snf(&s)
    }

    /// `w . f`, through the action of `w` on the coroot lattice.
    pub fn act(&self, w: &WeylElement, f: &FElement) -> FElement {
        let image = w.coweight_matrix().mul_vec(&f.coords);
        let reduced: Vec<i64> = image.iter().map(|x| x.rem_euclid(self.exponent)).collect();
        self.element_from_coords(&reduced)
            .expect("the Weyl group preserves F")
    }

    /// The restriction `s*chi` of a weight to `F`.
    pub fn restrict_character(&self, chi: &Weight) -> FCharacter {
        let c = self.smith.v.transpose().mul_vec(chi.coords());
        FCharacter(
            c.iter()
                .zip(&self.smith.diagonal)
                .map(|(x, d)| x.rem_euclid(*d))
                .collect(),
        )
    }

    /// A weight restricting to the given character.
    pub fn lift_character(&self, ch: &FCharacter) -> Weight {
        Weight(self.smith.v_inv.transpose().mul_vec(&ch.0))
    }

    /// `(w . psi)(f) = psi(w^{-1} f)`, so that `w . s*chi = s*(w chi)`.
    pub fn act_on_character(&self, w: &WeylElement, ch: &FCharacter) -> FCharacter {
        self.restrict_character(&w.act(&self.lift_character(ch)))
    }

    /// The value of a character at `f` is `zeta^k` with `zeta` a primitive
    /// `exponent`-th root of unity; returns `k` in `[0, exponent)`.
    pub fn phase_numerator(&self, ch: &FCharacter, f: &FElement) -> i64 {
        let e = self.exponent;
        ch.0.iter()
            .zip(&f.snf)
            .zip(&self.smith.diagonal)
            .map(|((c, a), d)| c * a * (e / d))
            .sum::<i64>()
            .rem_euclid(e)
    }

    /// The character value as a phase in `Q/Z`, as `(numerator, denominator)`
    /// in lowest terms.
    pub fn phase(&self, ch: &FCharacter, f: &FElement) -> (i64, i64) {
        let k = self.phase_numerator(ch, f);
        let g = gcd(k, self.exponent);
        (k / g, self.exponent / g)
    }

    pub fn is_trivial(&self, ch: &FCharacter) -> bool {
        ch.0.iter().all(|&c| c == 0)
    }

    /// The orbit `W . f`, sorted and deduplicated.
    pub fn orbit(&self, f: &FElement) -> Vec<FElement> {
        let mut orbit: Vec<FElement> = self
            .level_form
            .datum()
            .weyl_group()
            .iter()
            .map(|w| self.act(w, f))
            .collect();
        orbit.sort();
        orbit.dedup();
        orbit
    }

    /// True iff `f` has trivial stabilizer in `W`.
    pub fn is_regular(&self, f: &FElement) -> bool {
        self.orbit(f).len() == self.level_form.datum().weyl_order()
    }

    /// One representative (the least element) per orbit of `W` on `F`,
    /// with the orbit size. Sorted by representative.
    pub fn orbits(&self) -> Vec<(FElement, usize)> {
        let mut seen = vec![false; self.elements.len()];
        let mut out = Vec::new();
        for f in &self.elements {
            if seen[self.index_of(f)] {
                continue;
            }
            let orbit = self.orbit(f);
            for g in &orbit {
                seen[self.index_of(g)] = true;
            }
            out.push((orbit[0].clone(), orbit.len()));
        }
        out.sort();
        out
    }

    /// Orbits of `F^reg`, the elements with trivial stabilizer.
    pub fn regular_orbits(&self) -> Vec<(FElement, usize)> {
        let w = self.level_form.datum().weyl_order();
        self.orbits().into_iter().filter(|(_, n)| *n == w).collect()
    }

    /// Checks that the pairing of `F` with `X(T) / gram Z^r` is perfect.
    ///
    /// For each prime `p` dividing `|F|`, the pairing restricted to the
    /// `p`-torsion of `F` against `(X / gram Z^r) / p` is a square matrix over
    /// `Z/p` that must be invertible; both groups have order `|det gram|`.
    pub fn verify_duality(&self) -> bool {
        let order = self.order() as i128;
        if order != self.level_form.determinant().abs() {
            return false;
        }
        let pairing: IntMatrix = self.smith.u_inv.transpose().mul(&self.smith.v);
        let d = &self.smith.diagonal;
        for p in prime_factors(order as i64) {
            let idx: Vec<usize> = (0..d.len()).filter(|&i| d[i] % p == 0).collect();
            let m: Vec<Vec<i64>> = idx
                .iter()
                .map(|&j| idx.iter().map(|&i| pairing[(j, i)].rem_euclid(p)).collect())
                .collect();
            if rank_mod_p(m, p) != idx.len() {
                return false;
            }
        }
        true
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn prime_factors(mut n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut r = 1;
    b = b.rem_euclid(p);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn rank_mod_p(mut m: Vec<Vec<i64>>, p: i64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, r);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c] * inv % p;
                for k in 0..cols {
                    m[r][k] = (m[r][k] - f * m[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Distinct elements in a list of orbit representatives; used by tests and
/// the CLI to report `|F^reg|`.
pub fn regular_element_count(f: &FiniteGroupF) -> usize {
    let reps: HashSet<FElement> = f
        .regular_orbits()
        .iter()
        .flat_map(|(rep, _)| f.orbit(rep))
        .collect();
    reps.len()
}
