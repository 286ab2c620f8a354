//! Weight multiplicities of irreducible representations (Freudenthal's
//! recursion), the Weyl dimension formula, and the trace form
//! `b(X, Y) = Tr_V(XY)` that turns a representation into a level.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::rootdata::{RootDatum, Weight};

/// Default bound on the number of distinct weights in a weight system.
pub const DEFAULT_WEIGHT_LIMIT: usize = 100_000;

/// A dominant weight, labelling an irreducible representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HighestWeight(Weight);

impl HighestWeight {
    pub fn new(datum: &RootDatum, weight: Weight) -> Result<Self> {
        datum.check_rank(weight.coords())?;
        if !weight.is_dominant() {
            return Err(Error::NotDominant(weight.to_string()));
        }
        Ok(Self(weight))
    }

    pub fn weight(&self) -> &Weight {
        &self.0
    }
}

/// All weights of a representation with their multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct WeightSystem {
    entries: BTreeMap<Weight, u64>,
}

impl WeightSystem {
    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.entries.iter().map(|(w, &m)| (w, m))
    }

    /// Number of distinct weights.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of all multiplicities.
    pub fn dimension(&self) -> u64 {
        self.entries.values().sum()
    }
}

/// Multiplicities of the dominant weights of `V(hw)`, by Freudenthal's
/// recursion in exact integer arithmetic.
pub fn dominant_multiplicities(
    datum: &RootDatum,
    hw: &HighestWeight,
    limit: usize,
) -> Result<BTreeMap<Weight, u64>> {
    let top = hw.weight().clone();
    let roots = datum.positive_roots();

    // Dominant weights below the highest weight, reached by subtracting
    // positive roots; depth is the height of `top - mu`.
    let mut depth: HashMap<Weight, i64> = HashMap::from([(top.clone(), 0)]);
    let mut queue = VecDeque::from([top.clone()]);
    while let Some(mu) = queue.pop_front() {
        let d = depth[&mu];
        for root in roots {
            let nu = mu.sub(&root.weight);
            if nu.is_dominant() && !depth.contains_key(&nu) {
                if depth.len() >= limit {
                    return Err(Error::ResourceLimit {
                        what: "weight system",
                        limit,
                    });
                }
                depth.insert(nu.clone(), d + root.height());
                queue.push_back(nu);
            }
        }
    }
    let mut order: Vec<Weight> = depth.keys().cloned().collect();
    order.sort_by(|a, b| depth[a].cmp(&depth[b]).then_with(|| b.cmp(a)));

    let rho = datum.rho();
    let top_rho = top.add(rho);
    let top_norm = datum.weight_inner_scaled(&top_rho, &top_rho);
    let mut mult: HashMap<Weight, u64> = HashMap::with_capacity(order.len());
    mult.insert(top.clone(), 1);
    for mu in order.iter().skip(1) {
        let mu_rho = mu.add(rho);
        let denom = top_norm - datum.weight_inner_scaled(&mu_rho, &mu_rho);
        let mut numer: i64 = 0;
        for root in roots {
            let mut j = 1;
            loop {
                let nu = mu.add(&root.weight.scale(j));
                let (dom, _, _) = datum.dominant_representative(&nu);
                let Some(&m) = mult.get(&dom) else {
                    break;
                };
                numer += 2 * m as i64 * datum.weight_inner_scaled(&nu, &root.weight);
                j += 1;
            }
        }
        debug_assert!(denom > 0);
        if numer % denom != 0 {
            return Err(Error::NonIntegral(format!(
                "Freudenthal recursion at {mu}: {numer}/{denom}"
            )));
        }
        mult.insert(mu.clone(), (numer / denom) as u64);
    }
    Ok(mult.into_iter().filter(|(_, m)| *m > 0).collect())
}

pub fn weight_multiplicities(datum: &RootDatum, hw: &HighestWeight) -> Result<WeightSystem> {
    weight_multiplicities_with_limit(datum, hw, DEFAULT_WEIGHT_LIMIT)
}

pub fn weight_multiplicities_with_limit(
    datum: &RootDatum,
    hw: &HighestWeight,
    limit: usize,
) -> Result<WeightSystem> {
    let dominant = dominant_multiplicities(datum, hw, limit)?;
    let mut entries = BTreeMap::new();
    for (mu, m) in dominant {
        for w in datum.weyl_orbit(&mu) {
            entries.insert(w, m);
        }
        if entries.len() > limit {
            return Err(Error::ResourceLimit {
                what: "weight system",
                limit,
            });
        }
    }
    Ok(WeightSystem { entries })
}

/// Weyl's dimension formula `prod <hw + rho, a^vee> / <rho, a^vee>`.
pub fn dimension(datum: &RootDatum, hw: &HighestWeight) -> BigUint {
    let shifted = hw.weight().add(datum.rho());
    let mut numer = BigUint::one();
    let mut denom = BigUint::one();
    for root in datum.positive_roots() {
        numer *= shifted.pair(&root.coroot) as u64;
        denom *= datum.rho().pair(&root.coroot) as u64;
    }
    debug_assert_eq!(&numer % &denom, BigUint::default());
    numer / denom
}

/// `b(a_i^vee, a_j^vee) = sum over weights mu of mult(mu) mu_i mu_j`.
pub fn trace_form(datum: &RootDatum, hw: &HighestWeight) -> Result<IntMatrix> {
    let system = weight_multiplicities(datum, hw)?;
    Ok(trace_form_of(datum.rank(), &system))
}

pub fn trace_form_of(rank: usize, system: &WeightSystem) -> IntMatrix {
    let mut form = IntMatrix::zeros(rank, rank);
    for (mu, m) in system.iter() {
        let c = mu.coords();
        for i in 0..rank {
            for j in 0..rank {
                form[(i, j)] += m as i64 * c[i] * c[j];
            }
        }
    }
    form
}

/// The scalar `k` with `form = k * basic_gram`.
pub fn level_of_form(datum: &RootDatum, form: &IntMatrix) -> Result<i64> {
    let basic = datum.basic_gram();
    let k = form[(0, 0)] / basic[(0, 0)];
    if basic.scale(k) == *form {
        Ok(k)
    } else {
        Err(Error::NotScalar)
    }
}

/// Level of the twist defined by the trace form of `V(hw)`; zero for the
/// trivial representation, which defines no regular twist.
pub fn level_of(datum: &RootDatum, hw: &HighestWeight) -> Result<i64> {
    level_of_form(datum, &trace_form(datum, hw)?)
}

/// Dominant weights of bounded dimension, for sampling.
pub fn dominant_weights_up_to_dimension(datum: &RootDatum, max_dim: u64) -> Vec<HighestWeight> {
    let n = datum.rank();
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([Weight::zero(n)]);
    seen.insert(Weight::zero(n));
    let bound = BigUint::from(max_dim);
    while let Some(w) = queue.pop_front() {
        let hw = HighestWeight(w.clone());
        if dimension(datum, &hw) > bound {
            continue;
        }
        for i in 0..n {
            let mut next = w.clone();
            next.0[i] += 1;
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        out.push(hw);
    }
    out.sort();
    out
}
