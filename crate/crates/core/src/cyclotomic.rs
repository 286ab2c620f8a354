//! Exact arithmetic in cyclotomic rings `Z[zeta_n]` and fields `Q(zeta_n)`.
//!
//! Three representations are used:
//! - [`ZetaSum`]: an element of the group ring `Z[Z/n]`, i.e. a length-`n`
//!   vector of multiplicities of `zeta^0 .. zeta^(n-1)`. Character sums land
//!   here directly and are not unique as elements of `Z[zeta_n]`.
//! - [`CycInt`]: the canonical form in `Z[zeta_n]`, a polynomial of degree
//!   below `phi(n)` reduced modulo the `n`-th cyclotomic polynomial.
//! - [`Cyc`]: the same with rational coefficients, for division.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Sum of `n`-th roots of unity with integer multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ZetaSum(pub Vec<i64>);

impl ZetaSum {
    pub fn zero(order: usize) -> Self {
        Self(vec![0; order])
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    /// Adds `coeff * zeta^exponent`.
    pub fn add_term(&mut self, exponent: i64, coeff: i64) {
        let n = self.0.len() as i64;
        self.0[exponent.rem_euclid(n) as usize] += coeff;
    }

    /// Complex conjugate, `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.0.len();
        let mut out = vec![0; n];
        for (e, &c) in self.0.iter().enumerate() {
            out[(n - e) % n] += c;
        }
        Self(out)
    }

    pub fn mul(&self, other: &ZetaSum) -> ZetaSum {
        let n = self.0.len();
        let mut out = vec![0; n];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                out[(i + j) % n] += a * b;
            }
        }
        Self(out)
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.0.len() as f64;
        self.0.iter().enumerate().fold((0.0, 0.0), |(re, im), (e, &c)| {
            let angle = std::f64::consts::TAU * e as f64 / n;
            (re + c as f64 * angle.cos(), im + c as f64 * angle.sin())
        })
    }
}

/// Element of `Z[zeta_n]` in the power basis `1, zeta, .., zeta^(phi(n)-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycInt(pub Vec<i64>);

impl CycInt {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// The value as an ordinary integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        if self.0.iter().skip(1).all(|&c| c == 0) {
            Some(self.0.first().copied().unwrap_or(0))
        } else {
            None
        }
    }
}

/// Element of `Q(zeta_n)` in the power basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyc(pub Vec<BigRational>);

impl Cyc {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                _ => write!(f, "({c})z^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `Q(zeta_n)` together with its defining polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    order: usize,
    /// Coefficients of the cyclotomic polynomial, constant term first.
    modulus: Vec<i64>,
}

impl CyclotomicField {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "root of unity order must be positive");
        Self {
            order,
            modulus: cyclotomic_polynomial(order),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `phi(n)`, the degree over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// Reduces an integer polynomial in `zeta` to canonical form.
    pub fn reduce_poly(&self, coeffs: &[i64]) -> CycInt {
        let d = self.degree();
        let mut c = coeffs.to_vec();
        if c.len() < d {
            c.resize(d, 0);
        }
        for top in (d..c.len()).rev() {
            let lead = c[top];
            if lead != 0 {
                for (k, &m) in self.modulus.iter().enumerate() {
                    c[top - d + k] -= lead * m;
                }
            }
        }
        c.truncate(d);
        CycInt(c)
    }

    pub fn reduce(&self, z: &ZetaSum) -> CycInt {
        assert_eq!(z.order(), self.order, "root of unity order mismatch");
        self.reduce_poly(&z.0)
    }

    pub fn is_zero(&self, z: &ZetaSum) -> bool {
        self.reduce(z).is_zero()
    }

    pub fn int(&self, value: i64) -> CycInt {
        let mut c = vec![0; self.degree()];
        c[0] = value;
        CycInt(c)
    }

    pub fn add_int(&self, a: &CycInt, b: &CycInt) -> CycInt {
        CycInt(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn mul_int(&self, a: &CycInt, b: &CycInt) -> CycInt {
        let d = self.degree();
        let mut prod = vec![0i64; 2 * d];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        self.reduce_poly(&prod)
    }

    /// `acc += a * b`
    pub fn mul_add_int(&self, acc: &mut CycInt, a: &CycInt, b: &CycInt) {
        let p = self.mul_int(a, b);
        for (x, y) in acc.0.iter_mut().zip(p.0) {
            *x += y;
        }
    }

    pub fn conj_int(&self, a: &CycInt) -> CycInt {
        let mut z = ZetaSum::zero(self.order);
        for (e, &c) in a.0.iter().enumerate() {
            z.add_term(-(e as i64), c);
        }
        self.reduce(&z)
    }

    pub fn to_field(&self, a: &CycInt) -> Cyc {
        Cyc(a.0.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// Converts back to `Z[zeta_n]` when every coefficient is an integer that
    /// fits in `i64`.
    pub fn to_integral(&self, a: &Cyc) -> Option<CycInt> {
        a.0.iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect::<Option<Vec<_>>>()
            .map(CycInt)
    }

    pub fn zero(&self) -> Cyc {
        Cyc(vec![BigRational::zero(); self.degree()])
    }

    pub fn one(&self) -> Cyc {
        self.to_field(&self.int(1))
    }

    pub fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &Cyc) -> Cyc {
        Cyc(a.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, a: &Cyc, k: &BigRational) -> Cyc {
        Cyc(a.0.iter().map(|x| x * k).collect())
    }

    pub fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        let d = self.degree();
        let mut prod = vec![BigRational::zero(); 2 * d];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        for top in (d..2 * d).rev() {
            let lead = std::mem::take(&mut prod[top]);
            if !lead.is_zero() {
                for (k, &m) in self.modulus.iter().enumerate().take(d) {
                    prod[top - d + k] -= &lead * BigInt::from(m);
                }
            }
        }
        prod.truncate(d);
        Cyc(prod)
    }

    /// Multiplicative inverse, `None` for zero.
    ///
    /// Solves `a * y = 1` through the matrix of multiplication by `a`.
    pub fn inv(&self, a: &Cyc) -> Option<Cyc> {
        if a.is_zero() {
            return None;
        }
        let d = self.degree();
        // column j holds a * zeta^j
        let mut basis_power = self.zero();
        basis_power.0[0] = BigRational::one();
        let mut columns = Vec::with_capacity(d);
        for j in 0..d {
            columns.push(self.mul(a, &basis_power));
            if j + 1 < d {
                basis_power.0.rotate_right(1);
            }
        }
        let mut aug: Vec<Vec<BigRational>> = (0..d)
            .map(|i| {
                let mut row: Vec<BigRational> = columns.iter().map(|c| c.0[i].clone()).collect();
                row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        rational_solve_in_place(&mut aug, d).map(Cyc)
    }

    pub fn div(&self, a: &Cyc, b: &Cyc) -> Option<Cyc> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Determinant by Gaussian elimination over `Q(zeta_n)`.
    pub fn determinant(&self, mut m: Vec<Vec<Cyc>>) -> Cyc {
        let n = m.len();
        let mut det = self.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return self.zero();
            };
            if p != col {
                m.swap(p, col);
                det = self.neg(&det);
            }
            let pivot = m[col][col].clone();
            det = self.mul(&det, &pivot);
            let pivot_inv = self.inv(&pivot).expect("nonzero pivot");
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = self.mul(&m[r][col], &pivot_inv);
                for c in col..n {
                    let t = self.mul(&factor, &m[col][c]);
                    m[r][c] = self.sub(&m[r][c], &t);
                }
            }
        }
        det
    }

    /// Solves `a * x = b` for square nonsingular `a`; `None` if singular.
    pub fn solve(&self, mut a: Vec<Vec<Cyc>>, mut b: Vec<Vec<Cyc>>) -> Option<Vec<Vec<Cyc>>> {
        let n = a.len();
        let width = b.first().map_or(0, Vec::len);
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(p, col);
            b.swap(p, col);
            let pivot_inv = self.inv(&a[col][col])?;
            for c in col..n {
                a[col][c] = self.mul(&a[col][c], &pivot_inv);
            }
            for c in 0..width {
                b[col][c] = self.mul(&b[col][c], &pivot_inv);
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in col..n {
                    let t = self.mul(&factor, &a[col][c]);
                    a[r][c] = self.sub(&a[r][c], &t);
                }
                for c in 0..width {
                    let t = self.mul(&factor, &b[col][c]);
                    b[r][c] = self.sub(&b[r][c], &t);
                }
            }
        }
        Some(b)
    }

    pub fn to_complex(&self, a: &CycInt) -> (f64, f64) {
        let mut z = ZetaSum::zero(self.order);
        for (e, &c) in a.0.iter().enumerate() {
            z.add_term(e as i64, c);
        }
        z.to_complex()
    }
}

/// Gauss-Jordan on an augmented `d x (d+1)` system; returns the solution.
fn rational_solve_in_place(aug: &mut [Vec<BigRational>], d: usize) -> Option<Vec<BigRational>> {
    for col in 0..d {
        let p = (col..d).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(p, col);
        let pivot = aug[col][col].clone();
        for c in col..=d {
            aug[col][c] = &aug[col][c] / &pivot;
        }
        for r in 0..d {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            for c in col..=d {
                let t = &factor * &aug[col][c];
                aug[r][c] -= t;
            }
        }
    }
    Some(aug.iter().map(|row| row[d].clone()).collect())
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    let mut quot = vec![0; rem.len() - dd];
    for top in (dd..rem.len()).rev() {
        let c = rem[top];
        if c == 0 {
            continue;
        }
        debug_assert_eq!(c % lead, 0);
        let q = c / lead;
        quot[top - dd] = q;
        for (k, &m) in den.iter().enumerate() {
            rem[top - dd + k] -= q * m;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
    quot
}

/// The `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    let mut p = vec![0i64; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for n in 1..40 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, totient(n), "n = {n}");
        }
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for n in 2..30 {
            let field = CyclotomicField::new(n);
            let z = ZetaSum(vec![1; n]);
            assert!(field.is_zero(&z), "n = {n}");
        }
    }

    #[test]
    fn zeta6_difference_matches_numeric_value() {
        let field = CyclotomicField::new(6);
        let mut z = ZetaSum::zero(6);
        z.add_term(1, 1);
        z.add_term(-1, -1);
        let (re, im) = z.to_complex();
        assert!(re.abs() < 1e-12);
        assert!((im - 3f64.sqrt()).abs() < 1e-12);
        let (re2, im2) = field.to_complex(&field.reduce(&z));
        assert!((re - re2).abs() < 1e-12 && (im - im2).abs() < 1e-12);
    }

    #[test]
    fn determinant_and_solve() {
        let field = CyclotomicField::new(5);
        let z = |e: i64| {
            let mut s = ZetaSum::zero(5);
            s.add_term(e, 1);
            field.to_field(&field.reduce(&s))
        };
        // Vandermonde in zeta, zeta^2 is nonsingular.
        let m = vec![vec![field.one(), z(1)], vec![field.one(), z(2)]];
        let det = field.determinant(m.clone());
        assert_eq!(det, field.sub(&z(2), &z(1)));
        let sol = field.solve(m.clone(), vec![vec![field.one()], vec![field.zero()]]).unwrap();
        let lhs = field.add(&field.mul(&m[0][0], &sol[0][0]), &field.mul(&m[0][1], &sol[1][0]));
        assert_eq!(lhs, field.one());
        let singular = vec![vec![z(1), z(2)], vec![z(2), z(3)]];
        assert!(field.determinant(singular.clone()).is_zero());
        assert!(field.solve(singular, vec![vec![field.one()], vec![field.one()]]).is_none());
    }

    fn field_strategy() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>)> {
        (1usize..25).prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(-5i64..=5, n),
                prop::collection::vec(-5i64..=5, n),
            )
        })
    }

    proptest! {
        #[test]
        fn reduction_is_a_ring_map((n, a, b) in field_strategy()) {
            let field = CyclotomicField::new(n);
            let (za, zb) = (ZetaSum(a), ZetaSum(b));
            let lhs = field.reduce(&za.mul(&zb));
            let rhs = field.mul_int(&field.reduce(&za), &field.reduce(&zb));
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(field.reduce(&za.conj()), field.conj_int(&field.reduce(&za)));
            let (re, im) = za.to_complex();
            let (re2, im2) = field.to_complex(&field.reduce(&za));
            prop_assert!((re - re2).abs() < 1e-9 && (im - im2).abs() < 1e-9);
        }

        #[test]
        fn inverse_inverts((n, a, _b) in field_strategy()) {
            let field = CyclotomicField::new(n);
            let x = field.to_field(&field.reduce(&ZetaSum(a)));
            match field.inv(&x) {
                None => prop_assert!(x.is_zero()),
                Some(y) => prop_assert_eq!(field.mul(&x, &y), field.one()),
            }
        }
    }
}
