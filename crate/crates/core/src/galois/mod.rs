//! Finite-field towers `F_p ⊆ K = F_q ⊆ F_{q^N}` and the Galois data of
//! ℓ-weights: conjugacy classes, degrees and inseparability degrees.

mod context;
pub(crate) mod fp_poly;
mod tower;

pub use context::{ConjClass, GaloisContext};
pub use tower::{FieldElem, FieldTower, TowerKey, MAX_FIELD_SIZE};

pub(crate) use tower::{gcd, lcm};

/// Smallest `N` such that every polynomial in `polys` (coefficients in
/// `F_p`, low to high) splits over `F_{q^N}` with `q = p^k`.
pub fn splitting_ambient(p: u32, k: u32, polys: &[Vec<u32>]) -> u32 {
    let mut n: u64 = 1;
    for f in polys {
        for d in fp_poly::factor_degrees(f, p) {
            let d = d as u64;
            let rel = d / gcd(d, k as u64);
            n = lcm(n, rel);
        }
    }
    n as u32
}
