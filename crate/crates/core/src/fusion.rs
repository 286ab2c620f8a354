//! The ring structure on the twisted K-theory: identity, coform and product.
//!
//! Every regular orbit `[f]` of `W` on `F` gives a ring character
//! `x_l(f) = A_l(f) / A_rho(f)`, where `A_l(f)` is the detection value of the
//! basis class `E_l` at `f`. The detection matrix `A` satisfies
//! `A A^* = |F| I`, which inverts the diagonalization in closed form:
//!
//! `N_{l m}^n = |F|^{-1} sum_[f] x_l(f) x_m(f) A_rho(f) conj(A_n(f))`.

use serde::{Deserialize, Serialize};

use crate::affine::{Canonical, LevelForm, OrbitRep};
use crate::cyclotomic::{CycInt, CyclotomicField};
use crate::detect::DetectionMatrix;
use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::rootdata::Weight;
use crate::torsion::{FElement, FiniteGroupF};

/// Integer coordinates over the basis of regular orbits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KClass(pub Vec<i64>);

impl KClass {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn basis_vector(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &KClass) -> KClass {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// The structure constants with their basis, in exchange form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionTable {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub level: i64,
    pub basis: Vec<Weight>,
    pub identity: Option<KClass>,
    #[serde(rename = "N")]
    pub n: Vec<Vec<Vec<i64>>>,
}

impl FusionTable {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    fn identity_index(&self) -> Option<usize> {
        let id = self.identity.as_ref()?;
        let ones: Vec<usize> = (0..id.len()).filter(|&i| id.0[i] == 1).collect();
        let zeros = id.0.iter().filter(|&&c| c == 0).count();
        (ones.len() == 1 && ones.len() + zeros == id.len()).then(|| ones[0])
    }

    pub fn multiply(&self, x: &KClass, y: &KClass) -> Result<KClass> {
        let n = self.dimension();
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        let mut out = vec![0i64; n];
        for (a, &xa) in x.0.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.0.iter().enumerate() {
                if yb == 0 {
                    continue;
                }
                for (c, o) in out.iter_mut().enumerate() {
                    *o += xa * yb * self.n[a][b][c];
                }
            }
        }
        Ok(KClass(out))
    }

    pub fn is_well_shaped(&self) -> bool {
        let n = self.dimension();
        self.n.len() == n
            && self.n.iter().all(|m| m.len() == n && m.iter().all(|r| r.len() == n))
            && self.identity.as_ref().is_none_or(|id| id.len() == n)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dimension();
        (0..n).all(|a| (0..n).all(|b| self.n[a][b] == self.n[b][a]))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dimension();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for t in 0..n {
                        let lhs: i64 = (0..n).map(|s| self.n[a][b][s] * self.n[s][c][t]).sum();
                        let rhs: i64 = (0..n).map(|s| self.n[b][c][s] * self.n[a][s][t]).sum();
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `N[E][m][n] = delta_{m n}`; vacuous for an empty basis.
    pub fn identity_axiom_holds(&self) -> bool {
        let n = self.dimension();
        if n == 0 {
            return self.identity.is_none();
        }
        let Some(e) = self.identity_index() else {
            return false;
        };
        (0..n).all(|m| (0..n).all(|c| self.n[e][m][c] == i64::from(m == c)))
    }

    /// Positions of negative structure constants.
    pub fn negative_entries(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dimension();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.n[a][b][c] < 0 {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }

    /// Checks shape, commutativity, associativity and the identity axiom.
    /// Negative entries are not an error; see [`FusionTable::negative_entries`].
    pub fn validate(&self) -> std::result::Result<(), String> {
        if !self.is_well_shaped() {
            return Err("structure constants do not match the basis size".into());
        }
        if !self.is_commutative() {
            return Err("product is not commutative".into());
        }
        if !self.is_associative() {
            return Err("product is not associative".into());
        }
        if !self.identity_axiom_holds() {
            return Err("identity axiom fails".into());
        }
        Ok(())
    }
}

/// The fusion ring together with the ring characters that diagonalize it.
#[derive(Clone, Debug)]
pub struct FusionRing {
    table: FusionTable,
    basis: Vec<OrbitRep>,
    identity: Option<usize>,
    support: Vec<FElement>,
    field: CyclotomicField,
    /// `characters[l][j] = x_l(support[j])`
    characters: Vec<Vec<CycInt>>,
}

impl FusionRing {
    pub fn new(lf: &LevelForm) -> Result<Self> {
        fusion_ring(&FiniteGroupF::new(lf)?)
    }

    pub fn table(&self) -> &FusionTable {
        &self.table
    }

    pub fn into_table(self) -> FusionTable {
        self.table
    }

    pub fn basis(&self) -> &[OrbitRep] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn identity_index(&self) -> Option<usize> {
        self.identity
    }

    pub fn identity(&self) -> Result<KClass> {
        self.identity
            .map(|i| KClass::basis_vector(self.dimension(), i))
            .ok_or(Error::NoIdentity(self.table.level))
    }

    pub fn structure_constant(&self, a: usize, b: usize, c: usize) -> i64 {
        self.table.n[a][b][c]
    }

    pub fn support(&self) -> &[FElement] {
        &self.support
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    /// `x_l(f)` for basis index `l` and support index `j`.
    pub fn character(&self, l: usize, j: usize) -> &CycInt {
        &self.characters[l][j]
    }

    pub fn multiply(&self, x: &KClass, y: &KClass) -> Result<KClass> {
        self.table.multiply(x, y)
    }

    /// Checks `x_l(f) x_m(f) = sum_n N_{l m}^n x_n(f)` exactly at every
    /// support point.
    pub fn diagonalization_holds(&self) -> bool {
        let n = self.dimension();
        let field = &self.field;
        for j in 0..self.support.len() {
            for a in 0..n {
                for b in a..n {
                    let lhs = field.mul_int(&self.characters[a][j], &self.characters[b][j]);
                    let mut rhs = field.int(0);
                    for c in 0..n {
                        let k = self.table.n[a][b][c];
                        if k != 0 {
                            let term = field.mul_int(&field.int(k), &self.characters[c][j]);
                            rhs = field.add_int(&rhs, &term);
                        }
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Recomputes the structure constants by solving the diagonalization
    /// equations `X^T N_{l m} = x_l x_m` directly over the cyclotomic field.
    pub fn solve_structure_constants(&self) -> Result<Vec<Vec<Vec<i64>>>> {
        let n = self.dimension();
        let field = &self.field;
        let a = (0..self.support.len())
            .map(|j| (0..n).map(|c| field.to_field(&self.characters[c][j])).collect())
            .collect();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
        let b = (0..self.support.len())
            .map(|j| {
                pairs
                    .iter()
                    .map(|&(x, y)| {
                        field.to_field(&field.mul_int(&self.characters[x][j], &self.characters[y][j]))
                    })
                    .collect()
            })
            .collect();
        let sol = field
            .solve(a, b)
            .ok_or_else(|| Error::NonIntegral("character matrix is singular".into()))?;
        let mut out = vec![vec![vec![0i64; n]; n]; n];
        for (p, &(x, y)) in pairs.iter().enumerate() {
            for c in 0..n {
                let v = field
                    .to_integral(&sol[c][p])
                    .and_then(|v| v.as_integer())
                    .ok_or_else(|| Error::NonIntegral(format!("N[{x}][{y}][{c}] = {}", sol[c][p])))?;
                out[x][y][c] = v;
            }
        }
        Ok(out)
    }
}

pub fn identity_class(lf: &LevelForm) -> Result<KClass> {
    let basis = lf.enumerate_regular_orbits();
    match lf.canonicalize(lf.datum().rho()) {
        Canonical::Regular { rep, .. } => {
            let i = basis
                .iter()
                .position(|r| *r == rep)
                .expect("canonical representatives are enumerated");
            Ok(KClass::basis_vector(basis.len(), i))
        }
        Canonical::Singular { .. } => Err(Error::NoIdentity(lf.level())),
    }
}

/// Regular orbits of `F` at which the detection value of the identity class
/// is nonzero.
pub fn quotient_ideal_support(group: &FiniteGroupF) -> Result<Vec<FElement>> {
    let lf = group.level_form();
    if lf.enumerate_regular_orbits().is_empty() {
        return Ok(Vec::new());
    }
    let rho = lf.datum().rho();
    if !lf.is_regular(rho) {
        return Err(Error::NoIdentity(lf.level()));
    }
    let field = CyclotomicField::new(group.exponent() as usize);
    let th = crate::detect::theta_of_weight(group, rho)?;
    Ok(group
        .regular_orbits()
        .into_iter()
        .map(|(f, _)| f)
        .filter(|f| !field.is_zero(&th.element().evaluate(group, f)))
        .collect())
}

pub fn fusion_ring(group: &FiniteGroupF) -> Result<FusionRing> {
    let lf = group.level_form();
    let detection = DetectionMatrix::new(group)?;
    let field = detection.field();
    let basis = lf.enumerate_regular_orbits();
    let n = basis.len();
    let lie_type = lf.datum().lie_type().to_string();
    if n == 0 {
        return Ok(FusionRing {
            table: FusionTable {
                lie_type,
                level: lf.level(),
                basis: Vec::new(),
                identity: None,
                n: Vec::new(),
            },
            basis,
            identity: None,
            support: Vec::new(),
            field,
            characters: Vec::new(),
        });
    }
    let identity = identity_class(lf)?;
    let e = identity.0.iter().position(|&c| c == 1).expect("basis vector");
    if !detection.is_square() {
        return Err(Error::NonIntegral(format!(
            "{} regular orbits but {} regular W-orbits in F",
            n,
            detection.columns.len()
        )));
    }

    let a = &detection.entries;
    let cols = detection.columns.len();
    let mut characters = vec![Vec::with_capacity(cols); n];
    for j in 0..cols {
        let inv = field
            .inv(&field.to_field(&a[e][j]))
            .ok_or_else(|| Error::NonIntegral("identity class vanishes on a regular orbit".into()))?;
        for (l, row) in characters.iter_mut().enumerate() {
            let x = field.mul(&field.to_field(&a[l][j]), &inv);
            let x = field
                .to_integral(&x)
                .ok_or_else(|| Error::NonIntegral(format!("ring character {} at column {j} is {x}", basis[l].weight)))?;
            row.push(x);
        }
    }
    let conj: Vec<Vec<CycInt>> = a.iter().map(|row| row.iter().map(|z| field.conj_int(z)).collect()).collect();
    let order = group.order() as i64;
    let mut table = vec![vec![vec![0i64; n]; n]; n];
    for l in 0..n {
        for m in l..n {
            let weighted: Vec<CycInt> = (0..cols)
                .map(|j| field.mul_int(&field.mul_int(&characters[l][j], &characters[m][j]), &a[e][j]))
                .collect();
            for (c, conj_row) in conj.iter().enumerate() {
                let mut acc = field.int(0);
                for j in 0..cols {
                    field.mul_add_int(&mut acc, &weighted[j], &conj_row[j]);
                }
                let value = acc
                    .as_integer()
                    .filter(|v| v % order == 0)
                    .ok_or_else(|| Error::NonIntegral(format!("N[{l}][{m}][{c}] = {acc:?} / {order}")))?;
                table[l][m][c] = value / order;
                table[m][l][c] = value / order;
            }
        }
    }

    Ok(FusionRing {
        table: FusionTable {
            lie_type,
            level: lf.level(),
            basis: basis.iter().map(|r| r.weight.clone()).collect(),
            identity: Some(identity),
            n: table,
        },
        basis,
        identity: Some(e),
        support: detection.columns,
        field,
        characters,
    })
}

pub fn multiply(ring: &FusionRing, x: &KClass, y: &KClass) -> Result<KClass> {
    ring.multiply(x, y)
}

/// Coefficients of the anti-diagonal class over pairs of basis classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coform {
    /// `matrix[i][j] = s` when `chi_j + omega` lies in the orbit of `chi_i`
    /// with sign `s`.
    pub matrix: IntMatrix,
    pub omega: Weight,
}

impl Coform {
    /// `Some(s)` when the matrix is `s` times the identity.
    pub fn is_signed_identity(&self) -> Option<i64> {
        let n = self.matrix.nrows();
        if n == 0 {
            return Some(1);
        }
        let s = self.matrix[(0, 0)];
        if s.abs() != 1 {
            return None;
        }
        (self.matrix == IntMatrix::identity(n).scale(s)).then_some(s)
    }
}

pub fn coform(lf: &LevelForm, omega: &Weight) -> Result<Coform> {
    lf.datum().check_rank(omega.coords())?;
    let basis = lf.enumerate_regular_orbits();
    let n = basis.len();
    let mut matrix = IntMatrix::zeros(n, n);
    for (j, rep) in basis.iter().enumerate() {
        let shifted = rep.weight.add(omega);
        match lf.canonicalize(&shifted) {
            Canonical::Regular { rep: target, sign } => {
                let i = basis
                    .iter()
                    .position(|r| *r == target)
                    .expect("canonical representatives are enumerated");
                matrix[(i, j)] = sign;
            }
            Canonical::Singular { .. } => {
                return Err(Error::SingularShift(format!("{} by {omega}", rep.weight)));
            }
        }
    }
    Ok(Coform {
        matrix,
        omega: omega.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::rootdata::{Coweight, RootDatum};

    fn lf(t: &str, k: i64) -> LevelForm {
        LevelForm::new(Arc::new(RootDatum::new(t.parse().unwrap()).unwrap()), k).unwrap()
    }

    fn ring(t: &str, k: i64) -> FusionRing {
        FusionRing::new(&lf(t, k)).unwrap()
    }

    #[test]
    fn identity_examples() {
        assert_eq!(identity_class(&lf("A1", 3)).unwrap(), KClass(vec![1, 0]));
        assert!(matches!(identity_class(&lf("A1", 1)), Err(Error::NoIdentity(1))));
        assert_eq!(identity_class(&lf("A2", 4)).unwrap(), KClass(vec![1, 0, 0]));
        assert_eq!(Error::NoIdentity(1).to_string(), "rho is singular at level 1");
    }

    #[test]
    fn su2_tables() {
        let r = ring("A1", 3);
        let e2 = KClass::basis_vector(2, 1);
        assert_eq!(r.multiply(&e2, &e2).unwrap(), KClass(vec![1, 0]));

        let r = ring("A1", 4);
        let e = |i| KClass::basis_vector(3, i);
        assert_eq!(r.multiply(&e(1), &e(1)).unwrap(), KClass(vec![1, 0, 1]));
        assert_eq!(r.multiply(&e(1), &e(2)).unwrap(), KClass(vec![0, 1, 0]));
        assert_eq!(r.multiply(&e(2), &e(2)).unwrap(), KClass(vec![1, 0, 0]));
        assert_eq!(r.multiply(&e(1).add(&e(2)), &e(1)).unwrap(), KClass(vec![1, 1, 1]));
        assert_eq!(r.multiply(&KClass::zero(3), &e(1)).unwrap(), KClass::zero(3));
        assert!(matches!(
            r.multiply(&KClass::zero(2), &e(1)),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn empty_ring_below_threshold() {
        let r = ring("A1", 1);
        assert_eq!(r.dimension(), 0);
        assert!(r.identity().is_err());
        assert!(r.table().validate().is_ok());
        let r = ring("A2", 2);
        assert_eq!(r.dimension(), 0);
    }

    #[test]
    fn ring_axioms_small_grid() {
        for (t, k) in [("A1", 6), ("A2", 5), ("B2", 4), ("G2", 5), ("A3", 5), ("C3", 5)] {
            let r = ring(t, k);
            assert!(r.table().validate().is_ok(), "{t} {k}");
            assert!(r.diagonalization_holds(), "{t} {k}");
            assert!(r.table().negative_entries().is_empty(), "{t} {k}");
        }
    }

    #[test]
    fn linear_solve_agrees() {
        for (t, k) in [("A1", 5), ("A2", 5), ("B2", 4), ("G2", 4)] {
            let r = ring(t, k);
            assert_eq!(r.solve_structure_constants().unwrap(), r.table().n, "{t} {k}");
        }
    }

    #[test]
    fn support_is_everything() {
        for (t, k) in [("A1", 3), ("A1", 4), ("A2", 5), ("G2", 5)] {
            let g = FiniteGroupF::new(&lf(t, k)).unwrap();
            assert_eq!(quotient_ideal_support(&g).unwrap().len(), g.regular_orbits().len());
        }
        let g = FiniteGroupF::new(&lf("A1", 1)).unwrap();
        assert!(quotient_ideal_support(&g).unwrap().is_empty());
    }

    #[test]
    fn coform_examples() {
        let l = lf("A1", 3);
        let c = coform(&l, &Weight(vec![0])).unwrap();
        assert_eq!(c.is_signed_identity(), Some(1));
        assert_eq!(coform(&l, &Weight(vec![6])).unwrap().matrix, c.matrix);
        let l = lf("A2", 4);
        assert_eq!(coform(&l, &Weight(vec![0, 0])).unwrap().is_signed_identity(), Some(1));
        let shift = l.translate(&Coweight(vec![2, -1]));
        assert_eq!(coform(&l, &shift).unwrap().is_signed_identity(), Some(1));
        // shifting (1,1) by (1,0) lands on a wall at level 4
        assert!(matches!(coform(&l, &Weight(vec![1, 0])), Err(Error::SingularShift(_))));
    }

    #[test]
    fn table_round_trips_through_json() {
        let t = ring("A1", 4).into_table();
        let json = serde_json::to_string(&t).unwrap();
        assert!(json.starts_with(r#"{"type":"A1","level":4,"basis":[[1],[2],[3]],"identity":[1,0,0],"N":"#));
        let back: FusionTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        assert!(back.validate().is_ok());
    }
}
