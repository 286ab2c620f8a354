//! Independent oracles shared by the integration tests. Only the Cartan
//! matrix is taken from the library; everything else is recomputed here by
//! brute force.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use ktwist_core::{LevelForm, RootDatum};

pub type Mat = Vec<Vec<i64>>;

pub const GRID: &[(&str, i64)] = &[("A1", 10), ("A2", 8), ("B2", 6), ("G2", 5)];

/// Every (type, level) of the test grid.
pub fn grid() -> Vec<(&'static str, i64)> {
    GRID.iter()
        .flat_map(|&(t, kmax)| (1..=kmax).map(move |k| (t, k)))
        .collect()
}

pub fn dual_coxeter(t: &str) -> i64 {
    match t {
        "A1" => 2,
        "A2" => 3,
        "B2" => 3,
        "G2" => 4,
        _ => panic!("no tabulated value for {t}"),
    }
}

pub fn level_form(t: &str, k: i64) -> LevelForm {
    LevelForm::new(std::sync::Arc::new(RootDatum::new(t.parse().unwrap()).unwrap()), k).unwrap()
}

fn mat_vec(m: &Mat, v: &[i64]) -> Vec<i64> {
    m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// Closure of the given generators; each element carries its sign.
fn closure(gens: Vec<Mat>) -> Vec<(Mat, i64)> {
    let n = gens[0].len();
    let id: Mat = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut seen: HashMap<Mat, i64> = HashMap::from([(id.clone(), 1)]);
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        let s = seen[&m];
        for g in &gens {
            let next = mat_mul(g, &m);
            if !seen.contains_key(&next) {
                seen.insert(next.clone(), -s);
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<(Mat, i64)> = seen.into_iter().collect();
    out.sort();
    out
}

/// `W` acting on weights in fundamental-weight coordinates:
/// `s_i(chi) = chi - chi_i alpha_i`, with `alpha_i` the `i`-th Cartan column.
pub fn weyl_on_weights(cartan: &Mat) -> Vec<(Mat, i64)> {
    let n = cartan.len();
    let gens = (0..n)
        .map(|i| {
            (0..n)
                .map(|r| (0..n).map(|c| i64::from(r == c) - if c == i { cartan[r][i] } else { 0 }).collect())
                .collect()
        })
        .collect();
    closure(gens)
}

/// `W` acting on coweights in simple-coroot coordinates:
/// `s_i(t) = t - <alpha_i, t> alpha_i^vee`.
pub fn weyl_on_coweights(cartan: &Mat) -> Vec<(Mat, i64)> {
    let n = cartan.len();
    let gens = (0..n)
        .map(|i| {
            (0..n)
                .map(|r| (0..n).map(|c| i64::from(r == c) - if r == i { cartan[c][i] } else { 0 }).collect())
                .collect()
        })
        .collect();
    closure(gens)
}

pub fn determinant(m: &Mat) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Mat = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * determinant(&minor)
        })
        .sum()
}

pub fn adjugate(m: &Mat) -> Mat {
    let n = m.len();
    if n == 1 {
        return vec![vec![1]];
    }
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    // entry (i, j) is the (j, i) cofactor
                    let minor: Mat = (0..n)
                        .filter(|&r| r != j)
                        .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                        .collect();
                    let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                    sign * determinant(&minor)
                })
                .collect()
        })
        .collect()
}

fn box_points(n: usize, side: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..side).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

pub struct OrbitCount {
    pub classes: usize,
    pub regular_orbits: usize,
}

/// Counts regular orbits of the affine Weyl group `W ⋉ gram Z^r` on the
/// weight lattice. Orbits correspond to W-orbits on `X / gram Z^r`, whose
/// classes are detected by `adj(gram) chi mod det`; the window `[0, det)^r`
/// meets every class.
pub fn affine_regular_orbits(cartan: &Mat, gram: &Mat) -> OrbitCount {
    let n = gram.len();
    let det = determinant(gram).abs();
    let adj = adjugate(gram);
    let key = |chi: &[i64]| -> Vec<i64> { mat_vec(&adj, chi).iter().map(|x| x.rem_euclid(det)).collect() };
    let mut classes: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    for chi in box_points(n, det) {
        classes.entry(key(&chi)).or_insert(chi);
    }
    let w = weyl_on_weights(cartan);
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut regular_orbits = 0;
    let mut reps: Vec<_> = classes.iter().collect();
    reps.sort();
    for (k, chi) in reps {
        if seen.contains(k) {
            continue;
        }
        let images: Vec<Vec<i64>> = w.iter().map(|(m, _)| key(&mat_vec(m, chi))).collect();
        let distinct: HashSet<Vec<i64>> = images.iter().cloned().collect();
        if distinct.len() == w.len() {
            regular_orbits += 1;
        }
        seen.extend(distinct);
    }
    OrbitCount {
        classes: classes.len(),
        regular_orbits,
    }
}

/// Elements of `F` as numerators `c` with `c / det` in simple-coroot
/// coordinates and `gram c = 0 mod det`, with the count of regular W-orbits.
pub fn f_regular_orbits(cartan: &Mat, gram: &Mat) -> OrbitCount {
    let n = gram.len();
    let det = determinant(gram).abs();
    let elements: Vec<Vec<i64>> = box_points(n, det)
        .into_iter()
        .filter(|c| mat_vec(gram, c).iter().all(|x| x % det == 0))
        .collect();
    let w = weyl_on_coweights(cartan);
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut regular_orbits = 0;
    for c in &elements {
        if seen.contains(c) {
            continue;
        }
        let orbit: HashSet<Vec<i64>> = w
            .iter()
            .map(|(m, _)| mat_vec(m, c).iter().map(|x| x.rem_euclid(det)).collect())
            .collect();
        if orbit.len() == w.len() {
            regular_orbits += 1;
        }
        seen.extend(orbit);
    }
    OrbitCount {
        classes: elements.len(),
        regular_orbits,
    }
}

/// su(2) fusion rules with labels shifted by one: classes `1..k-1` at twist
/// level `k`, i.e. Verlinde level `k - 2`.
pub fn su2_fusion(k: i64, a: i64, b: i64, c: i64) -> i64 {
    let lower = (a - b).abs() + 1;
    let upper = (a + b - 1).min(2 * k - 1 - a - b);
    i64::from(lower <= c && c <= upper && (a + b + c) % 2 == 1)
}

/// Weyl's dimension formula over the positive coroots.
pub fn weyl_dimension(datum: &RootDatum, hw: &[i64]) -> u128 {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for root in datum.positive_roots() {
        let c = root.coroot.coords();
        let rho_pair: i64 = c.iter().sum();
        let pair: i64 = c.iter().zip(hw).map(|(x, y)| x * y).sum::<i64>() + rho_pair;
        num *= pair as u128;
        den *= rho_pair as u128;
    }
    assert_eq!(num % den, 0);
    num / den
}
