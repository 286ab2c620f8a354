//! Root systems, Weyl groups and the basic invariant form of the simple,
//! simply connected compact Lie groups.
//!
//! Weights are written in the fundamental-weight basis and coweights in the
//! simple-coroot basis, so the pairing `<weight, coweight>` is the ordinary
//! dot product. Simple roots follow the Bourbaki numbering.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;

/// Largest Weyl group that is stored element by element.
pub const MAX_WEYL_ORDER: u128 = 1_000_000;

macro_rules! lattice_vector {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub Vec<i64>);

        impl $name {
            pub fn zero(rank: usize) -> Self {
                Self(vec![0; rank])
            }

            pub fn coords(&self) -> &[i64] {
                &self.0
            }

            pub fn rank(&self) -> usize {
                self.0.len()
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&x| x == 0)
            }

            pub fn add(&self, other: &Self) -> Self {
                Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
            }

            pub fn sub(&self, other: &Self) -> Self {
                Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
            }

            pub fn scale(&self, k: i64) -> Self {
                Self(self.0.iter().map(|a| a * k).collect())
            }
        }

        impl From<Vec<i64>> for $name {
            fn from(v: Vec<i64>) -> Self {
                Self(v)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (i, x) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }

        /// Parses comma-separated integers, e.g. `1,0,-2`.
        impl FromStr for $name {
            type Err = std::num::ParseIntError;

            fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
                let s = s.trim().trim_start_matches('(').trim_end_matches(')');
                s.split(',')
                    .map(|x| x.trim().parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map(Self)
            }
        }
    };
}

lattice_vector!(
    /// A character of the maximal torus, in fundamental-weight coordinates.
    Weight
);
lattice_vector!(
    /// A cocharacter `S^1 -> T`, in simple-coroot coordinates.
    Coweight
);

impl Weight {
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn pair(&self, coweight: &Coweight) -> i64 {
        self.0.iter().zip(&coweight.0).map(|(a, b)| a * b).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// Cartan type of a simple Lie algebra, e.g. `A2` or `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::InvalidType(format!("{family:?}{rank}")))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Order of the Weyl group from the classical product formulas.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |m: u128| (1..=m).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Simple roots in an orthonormal frame, coordinates doubled so that all
    /// entries are integers.
    fn euclidean_simple_roots(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let unit = |dim: usize, entries: &[(usize, i64)]| {
            let mut v = vec![0; dim];
            for &(i, x) in entries {
                v[i] += x;
            }
            v
        };
        match self.family {
            Family::A => (0..n).map(|i| unit(n + 1, &[(i, 2), (i + 1, -2)])).collect(),
            Family::B | Family::C | Family::D => {
                let mut roots: Vec<_> = (0..n - 1).map(|i| unit(n, &[(i, 2), (i + 1, -2)])).collect();
                roots.push(match self.family {
                    Family::B => unit(n, &[(n - 1, 2)]),
                    Family::C => unit(n, &[(n - 1, 4)]),
                    _ => unit(n, &[(n - 2, 2), (n - 1, 2)]),
                });
                roots
            }
            Family::E => {
                let mut roots = vec![vec![1, -1, -1, -1, -1, -1, -1, 1], unit(8, &[(0, 2), (1, 2)])];
                roots.extend((0..6).map(|i| unit(8, &[(i + 1, 2), (i, -2)])));
                roots.truncate(n);
                roots
            }
            Family::F => vec![
                unit(4, &[(1, 2), (2, -2)]),
                unit(4, &[(2, 2), (3, -2)]),
                unit(4, &[(3, 2)]),
                vec![1, -1, -1, -1],
            ],
            Family::G => vec![unit(3, &[(0, 2), (1, -2)]), unit(3, &[(0, -4), (1, 2), (2, 2)])],
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let invalid = || Error::InvalidType(s.to_string());
        let mut chars = s.trim().chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(invalid()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| invalid())?;
        LieType::new(family, rank).map_err(|_| invalid())
    }
}

/// A positive root together with its coroot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Coefficients in the basis of simple roots.
    pub coeffs: Vec<i64>,
    pub weight: Weight,
    pub coroot: Coweight,
    pub long: bool,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

/// An element of the Weyl group, acting on weights by `matrix` and on
/// coweights by `coweight_matrix` (the inverse transpose).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    matrix: IntMatrix,
    coweight_matrix: IntMatrix,
    sign: i64,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        Self {
            matrix: IntMatrix::identity(rank),
            coweight_matrix: IntMatrix::identity(rank),
            sign: 1,
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn coweight_matrix(&self) -> &IntMatrix {
        &self.coweight_matrix
    }

    /// `+1` if the element preserves the orientation of `Lie(T)`, else `-1`.
    pub fn sign(&self) -> i64 {
        self.sign
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == IntMatrix::identity(self.matrix.nrows())
    }

    pub fn act(&self, w: &Weight) -> Weight {
        Weight(self.matrix.mul_vec(&w.0))
    }

    pub fn act_coweight(&self, t: &Coweight) -> Coweight {
        Coweight(self.coweight_matrix.mul_vec(&t.0))
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            matrix: self.matrix.mul(&other.matrix),
            coweight_matrix: self.coweight_matrix.mul(&other.coweight_matrix),
            sign: self.sign * other.sign,
        }
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement {
            matrix: self.coweight_matrix.transpose(),
            coweight_matrix: self.matrix.transpose(),
            sign: self.sign,
        }
    }
}

/// Root datum of a simple, simply connected compact Lie group.
#[derive(Clone, Debug)]
pub struct RootDatum {
    lie_type: LieType,
    cartan: IntMatrix,
    positive_roots: Vec<Root>,
    rho: Weight,
    basic_gram: IntMatrix,
    /// Gram matrix of the fundamental weights scaled by `weight_form_scale`.
    weight_form: IntMatrix,
    weight_form_scale: i64,
    highest_root: usize,
    weyl: Vec<WeylElement>,
    weyl_index: HashMap<IntMatrix, usize>,
}

impl RootDatum {
    pub fn new(lie_type: LieType) -> Result<Self> {
        let order = lie_type.weyl_order();
        if order > MAX_WEYL_ORDER {
            return Err(Error::WeylGroupTooLarge {
                lie_type: lie_type.to_string(),
                order,
                limit: MAX_WEYL_ORDER,
            });
        }
        let n = lie_type.rank();
        let simple = lie_type.euclidean_simple_roots();
        let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
        let dots: Vec<Vec<i64>> = simple
            .iter()
            .map(|a| simple.iter().map(|b| dot(a, b)).collect())
            .collect();
        let long_norm = (0..n).map(|i| dots[i][i]).max().unwrap_or(1);

        // cartan[i][j] = <alpha_j, alpha_i^vee>, so simple root j is column j.
        let mut cartan = IntMatrix::zeros(n, n);
        let mut basic_gram = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                debug_assert_eq!(2 * dots[i][j] % dots[i][i], 0);
                cartan[(i, j)] = 2 * dots[i][j] / dots[i][i];
            }
        }
        // (alpha_i^vee, alpha_j^vee) with long roots of squared length 2.
        for i in 0..n {
            for j in 0..n {
                basic_gram[(i, j)] = 4 * dots[i][j] * long_norm / (dots[i][i] * dots[j][j]) / 2;
            }
        }

        let positive_coeffs = positive_root_coefficients(&cartan);
        let positive_roots: Vec<Root> = positive_coeffs
            .into_iter()
            .map(|coeffs| {
                let weight = Weight(cartan.mul_vec(&coeffs));
                let norm: i64 = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .map(|(i, j)| coeffs[i] * coeffs[j] * dots[i][j])
                    .sum();
                let coroot = Coweight(
                    (0..n)
                        .map(|j| {
                            debug_assert_eq!(coeffs[j] * dots[j][j] % norm, 0);
                            coeffs[j] * dots[j][j] / norm
                        })
                        .collect(),
                );
                Root {
                    coeffs,
                    weight,
                    coroot,
                    long: norm == long_norm,
                }
            })
            .collect();

        let root_sum = positive_roots
            .iter()
            .fold(Weight::zero(n), |acc, r| acc.add(&r.weight));
        let rho = Weight(root_sum.0.iter().map(|x| x / 2).collect());

        let highest_root = (0..positive_roots.len())
            .max_by_key(|&i| positive_roots[i].height())
            .expect("root system is nonempty");

        let (weight_form, weight_form_scale) = inverse_scaled(&basic_gram);

        let (weyl, weyl_index) = generate_weyl_group(&cartan);
        debug_assert_eq!(weyl.len() as u128, order);

        Ok(Self {
            lie_type,
            cartan,
            positive_roots,
            rho,
            basic_gram,
            weight_form,
            weight_form_scale,
            highest_root,
            weyl,
            weyl_index,
        })
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank()
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn simple_roots(&self) -> Vec<Weight> {
        (0..self.rank())
            .map(|j| Weight((0..self.rank()).map(|i| self.cartan[(i, j)]).collect()))
            .collect()
    }

    pub fn simple_coroots(&self) -> Vec<Coweight> {
        (0..self.rank())
            .map(|j| Coweight((0..self.rank()).map(|i| i64::from(i == j)).collect()))
            .collect()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// Half the sum of the positive roots.
    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// The basic invariant form on the coroot lattice (long roots have
    /// squared length 2).
    pub fn basic_gram(&self) -> &IntMatrix {
        &self.basic_gram
    }

    pub fn highest_root(&self) -> &Root {
        &self.positive_roots[self.highest_root]
    }

    /// Coordinates of the highest coroot: `<chi, theta^vee> = comarks . chi`.
    pub fn comarks(&self) -> &[i64] {
        self.highest_root().coroot.coords()
    }

    pub fn dual_coxeter_number(&self) -> i64 {
        1 + self.comarks().iter().sum::<i64>()
    }

    pub fn dimension(&self) -> usize {
        2 * self.positive_roots.len() + self.rank()
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl.len()
    }

    /// All Weyl group elements; index 0 is the identity.
    pub fn weyl_group(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn weyl_element_index(&self, w: &WeylElement) -> Option<usize> {
        self.weyl_index.get(&w.matrix).copied()
    }

    /// Number of positive roots sent to negative roots.
    pub fn weyl_length(&self, w: &WeylElement) -> usize {
        self.positive_roots
            .iter()
            .filter(|r| {
                // negative roots have nonpositive simple-root coefficients
                let coeffs = self.root_coefficients(&w.act(&r.weight));
                coeffs.iter().any(|&c| c < 0)
            })
            .count()
    }

    /// Simple-root coordinates of a weight in the root lattice.
    fn root_coefficients(&self, w: &Weight) -> Vec<i64> {
        let (inv, scale) = inverse_scaled(&self.cartan);
        inv.mul_vec(&w.0).into_iter().map(|x| x / scale).collect()
    }

    pub fn simple_reflection(&self, i: usize, w: &Weight) -> Weight {
        let c = w.0[i];
        Weight(
            (0..self.rank())
                .map(|r| w.0[r] - c * self.cartan[(r, i)])
                .collect(),
        )
    }

    /// The reflection `s_alpha` as a group element.
    pub fn reflection_element(&self, root: &Root) -> WeylElement {
        let n = self.rank();
        let mut matrix = IntMatrix::identity(n);
        let mut coweight_matrix = IntMatrix::identity(n);
        for r in 0..n {
            for c in 0..n {
                matrix[(r, c)] -= root.weight.0[r] * root.coroot.0[c];
                coweight_matrix[(r, c)] -= root.coroot.0[r] * root.weight.0[c];
            }
        }
        WeylElement {
            matrix,
            coweight_matrix,
            sign: -1,
        }
    }

    pub fn simple_reflection_element(&self, i: usize) -> WeylElement {
        let root = self
            .positive_roots
            .iter()
            .find(|r| r.height() == 1 && r.coeffs[i] == 1)
            .expect("simple root present");
        self.reflection_element(root)
    }

    /// Reflection in the hyperplane of a positive root.
    pub fn root_reflection(&self, root: &Root, w: &Weight) -> Weight {
        w.sub(&root.weight.scale(w.pair(&root.coroot)))
    }

    /// Maps a weight into the dominant chamber.
    ///
    /// Returns the dominant weight, the sign of the Weyl element used, and
    /// whether the input has a nontrivial stabilizer in `W`.
    pub fn dominant_representative(&self, w: &Weight) -> (Weight, i64, bool) {
        let mut cur = w.clone();
        let mut sign = 1;
        while let Some(i) = cur.0.iter().position(|&x| x < 0) {
            cur = self.simple_reflection(i, &cur);
            sign = -sign;
        }
        let stabilized = cur.0.contains(&0);
        (cur, sign, stabilized)
    }

    /// The W-orbit of a weight, sorted.
    pub fn weyl_orbit(&self, w: &Weight) -> Vec<Weight> {
        let (dom, _, _) = self.dominant_representative(w);
        let mut seen: HashSet<Weight> = HashSet::from([dom.clone()]);
        let mut queue = VecDeque::from([dom]);
        while let Some(cur) = queue.pop_front() {
            for i in 0..self.rank() {
                if cur.0[i] > 0 {
                    let next = self.simple_reflection(i, &cur);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
        let mut orbit: Vec<_> = seen.into_iter().collect();
        orbit.sort();
        orbit
    }

    /// Invariant inner product of two weights times [`Self::weight_form_scale`].
    pub fn weight_inner_scaled(&self, a: &Weight, b: &Weight) -> i64 {
        let wb = self.weight_form.mul_vec(&b.0);
        a.0.iter().zip(&wb).map(|(x, y)| x * y).sum()
    }

    pub fn weight_form_scale(&self) -> i64 {
        self.weight_form_scale
    }

    /// `<w, alpha^vee>` for every positive root.
    pub fn coroot_pairings(&self, w: &Weight) -> Vec<i64> {
        self.positive_roots.iter().map(|r| w.pair(&r.coroot)).collect()
    }

    pub fn check_rank(&self, coords: &[i64]) -> Result<()> {
        if coords.len() == self.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                expected: self.rank(),
                got: coords.len(),
            })
        }
    }

    /// Squared length of a weight under the basic form, as an exact rational.
    pub fn weight_norm(&self, w: &Weight) -> Ratio<i64> {
        Ratio::new(self.weight_inner_scaled(w, w), self.weight_form_scale)
    }
}

/// Positive roots as simple-root coefficient vectors, by the root-string
/// construction: for a positive root `b` and a simple root `a_i`, `b + a_i`
/// is a root iff `p - <b, a_i^vee> > 0` where `b - p a_i` ends the string.
fn positive_root_coefficients(cartan: &IntMatrix) -> Vec<Vec<i64>> {
    let n = cartan.nrows();
    let mut all: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut known: HashSet<Vec<i64>> = all.iter().cloned().collect();
    let mut layer = all.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            let pairings = cartan.mul_vec(beta);
            for i in 0..n {
                let mut p = 0;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if known.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let is_simple_i = beta.iter().enumerate().all(|(j, &c)| c == i64::from(i == j));
                if is_simple_i {
                    continue;
                }
                if p - pairings[i] > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    all
}

/// Returns `(adj, det)` with `m^{-1} = adj / det` and `det > 0`.
pub(crate) fn inverse_scaled(m: &IntMatrix) -> (IntMatrix, i64) {
    let n = m.nrows();
    let det = m.determinant() as i64;
    assert!(det != 0, "inverse of a singular matrix");
    let mut adj = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let minor_rows: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[(r, c)]).collect())
                .collect();
            let minor = if n == 1 {
                1
            } else {
                IntMatrix::from_rows(&minor_rows).determinant() as i64
            };
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[(i, j)] = sign * minor;
        }
    }
    if det < 0 {
        (adj.scale(-1), -det)
    } else {
        (adj, det)
    }
}

/// Breadth-first closure under the simple reflections. BFS depth equals the
/// Coxeter length, which fixes the sign.
fn generate_weyl_group(cartan: &IntMatrix) -> (Vec<WeylElement>, HashMap<IntMatrix, usize>) {
    let n = cartan.nrows();
    let generators: Vec<IntMatrix> = (0..n)
        .map(|i| {
            let mut s = IntMatrix::identity(n);
            for r in 0..n {
                s[(r, i)] -= cartan[(r, i)];
            }
            s
        })
        .collect();
    let generators_t: Vec<IntMatrix> = generators.iter().map(IntMatrix::transpose).collect();

    let mut elements = vec![WeylElement::identity(n)];
    let mut index = HashMap::from([(IntMatrix::identity(n), 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for (s, st) in generators.iter().zip(&generators_t) {
            let matrix = s.mul(&elements[k].matrix);
            if index.contains_key(&matrix) {
                continue;
            }
            let element = WeylElement {
                coweight_matrix: st.mul(&elements[k].coweight_matrix),
                matrix: matrix.clone(),
                sign: -elements[k].sign,
            };
            index.insert(matrix, elements.len());
            queue.push_back(elements.len());
            elements.push(element);
        }
    }
    (elements, index)
}
