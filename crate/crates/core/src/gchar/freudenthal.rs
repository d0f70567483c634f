use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::rootsys::{RootSystem, Weight};

/// Dominant weights `μ ≤ λ`, generated by subtracting positive roots and
/// keeping dominant results. Every dominant `μ ≤ λ` is reachable this way
/// through a chain of dominant weights.
pub(crate) fn dominant_weights_below(rs: &RootSystem, lambda: &Weight) -> Vec<Weight> {
    let mut seen = HashSet::new();
    seen.insert(*lambda);
    let mut queue = VecDeque::from([*lambda]);
    while let Some(mu) = queue.pop_front() {
        for root in rs.positive_roots() {
            let nu = mu - root.weight;
            if nu.is_dominant() && seen.insert(nu) {
                queue.push_back(nu);
            }
        }
    }
    let mut out: Vec<Weight> = seen.into_iter().collect();
    out.sort_by(|a, b| {
        rs.scaled_height(b)
            .cmp(&rs.scaled_height(a))
            .then_with(|| b.cmp(a))
    });
    out
}

/// Freudenthal's recursion restricted to dominant weights.
///
/// ```text
/// m(μ) · (|λ+ρ|² − |μ+ρ|²) = 2 Σ_{α>0} Σ_{k≥1} m(μ+kα) ⟨μ+kα, α⟩
/// ```
///
/// Multiplicities of non-dominant weights are read off their dominant
/// conjugates. All form values are scaled to integers.
pub(crate) fn dominant_multiplicities(rs: &RootSystem, lambda: &Weight) -> BTreeMap<Weight, i64> {
    let rho = rs.rho();
    let order = dominant_weights_below(rs, lambda);
    let top = *lambda + rho;
    let top_norm = rs.scaled_form(&top, &top);
    let mut mults: HashMap<Weight, i64> = HashMap::with_capacity(order.len());
    mults.insert(*lambda, 1);

    for mu in order.iter().skip(1) {
        let shifted = *mu + rho;
        let denom = top_norm - rs.scaled_form(&shifted, &shifted);
        assert!(denom > 0, "Freudenthal denominator must be positive");
        let mut num: i64 = 0;
        for root in rs.positive_roots() {
            let mut nu = *mu + root.weight;
            loop {
                let dom = rs.dominant_conjugate(&nu);
                match mults.get(&dom) {
                    Some(&m) => num += m * rs.scaled_form(&nu, &root.weight),
                    None => break,
                }
                nu += root.weight;
            }
        }
        let twice = 2 * num;
        assert_eq!(twice % denom, 0, "Freudenthal recursion must be integral");
        mults.insert(*mu, twice / denom);
    }
    mults.into_iter().collect()
}

/// `∏_{α>0} ⟨λ+ρ, α⟩ / ⟨ρ, α⟩`.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> u128 {
    let rho = rs.rho();
    let top = *lambda + rho;
    let mut acc = BigRational::from_integer(BigInt::from(1));
    for root in rs.positive_roots() {
        let num = rs.scaled_form(&top, &root.weight);
        let den = rs.scaled_form(&rho, &root.weight);
        acc *= BigRational::new(BigInt::from(num), BigInt::from(den));
    }
    assert!(acc.is_integer() && !acc.is_zero());
    acc.to_integer()
        .to_u128()
        .expect("Weyl dimension fits in u128")
}
