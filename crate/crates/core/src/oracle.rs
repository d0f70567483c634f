//! Brute-force verifiers that share no code path with the routines they
//! check: explicit matrices for sl₂ evaluation modules, subfield generation
//! by linear algebra over `F_p`, and tensor decomposition of raw weight
//! multisets.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{lcm, FieldElem, FieldTower, GaloisContext};
use crate::gchar::{tensor_mult_g, CharEngine};
use crate::lweight::{lambda_series, LWeight, Rationals};
use crate::rootsys::{LieType, Weight};

type Matrix = Vec<Vec<BigRational>>;

fn zeros(n: usize) -> Matrix {
    vec![vec![BigRational::zero(); n]; n]
}

fn identity(n: usize) -> Matrix {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigRational::one();
    }
    m
}

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

fn scale(a: &Matrix, c: &BigRational) -> Matrix {
    a.iter()
        .map(|row| row.iter().map(|x| x * c).collect())
        .collect()
}

fn add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

/// The evaluation module `V(m)(a)` of `sl₂[t]` over `Q`, with basis
/// `v_0, …, v_m` of weights `m, m−2, …, −m`.
#[derive(Clone, Debug)]
pub struct EvalModuleSl2 {
    pub m: u32,
    pub a: BigRational,
    pub e: Matrix,
    pub f: Matrix,
    pub h: Matrix,
}

impl EvalModuleSl2 {
    /// `f v_k = (k+1) v_{k+1}`, `e v_k = (m−k+1) v_{k−1}`, `h v_k = (m−2k) v_k`.
    pub fn new(m: u32, a: BigRational) -> Self {
        let n = m as usize + 1;
        let (mut e, mut f, mut h) = (zeros(n), zeros(n), zeros(n));
        for k in 0..n {
            h[k][k] = Rationals::int(m as i64 - 2 * k as i64);
            if k + 1 < n {
                f[k + 1][k] = Rationals::int(k as i64 + 1);
            }
            if k > 0 {
                e[k - 1][k] = Rationals::int(m as i64 - k as i64 + 1);
            }
        }
        EvalModuleSl2 { m, a, e, f, h }
    }

    pub fn dim(&self) -> usize {
        self.m as usize + 1
    }

    /// Checks `[e,f] = h`, `[h,e] = 2e`, `[h,f] = −2f`.
    pub fn satisfies_relations(&self) -> bool {
        let comm = |x: &Matrix, y: &Matrix| add(&matmul(x, y), &scale(&matmul(y, x), &Rationals::int(-1)));
        comm(&self.e, &self.f) == self.h
            && comm(&self.h, &self.e) == scale(&self.e, &Rationals::int(2))
            && comm(&self.h, &self.f) == scale(&self.f, &Rationals::int(-2))
    }

    /// Matrix of `h ⊗ t^s`, which acts as `a^s h`.
    pub fn loop_h(&self, s: u32) -> Matrix {
        let mut c = BigRational::one();
        for _ in 0..s {
            c *= &self.a;
        }
        scale(&self.h, &c)
    }

    /// Matrices of `Λ_r` for `r ≤ order`, from
    /// `Λ(u) = exp(−Σ_{s≥1} (h ⊗ t^s) u^s / s)`.
    pub fn lambda_matrices(&self, order: usize) -> Vec<Matrix> {
        let n = self.dim();
        // P_s is the coefficient of u^s in the exponent.
        let p: Vec<Matrix> = (0..=order)
            .map(|s| {
                if s == 0 {
                    zeros(n)
                } else {
                    scale(&self.loop_h(s as u32), &-BigRational::new(1.into(), (s as i64).into()))
                }
            })
            .collect();
        // E' = P' E gives n E_n = Σ_j j P_j E_{n−j}.
        let mut out: Vec<Matrix> = vec![identity(n)];
        for r in 1..=order {
            let mut acc = zeros(n);
            for j in 1..=r {
                let term = scale(&matmul(&p[j], &out[r - j]), &Rationals::int(j as i64));
                acc = add(&acc, &term);
            }
            out.push(scale(&acc, &BigRational::new(1.into(), (r as i64).into())));
        }
        out
    }
}

/// Table `(k, r) ↦` eigenvalue of `Λ_{1,r}` on `v_k`, for `r ≤ order`.
/// Panics if some `Λ_r` fails to be diagonal in the weight basis.
pub fn lambda_action_eval_sl2(m: u32, a: &BigRational, order: usize) -> BTreeMap<(usize, usize), BigRational> {
    let module = EvalModuleSl2::new(m, a.clone());
    let mats = module.lambda_matrices(order);
    let mut out = BTreeMap::new();
    for (r, mat) in mats.iter().enumerate() {
        for (k, row) in mat.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert!(j == k || x.is_zero(), "Λ is diagonal on weight vectors");
            }
            out.insert((k, r), row[k].clone());
        }
    }
    out
}

/// Row-reduced basis of an `F_p`-subspace of `F_{q^N}`.
struct Span<'a> {
    tower: &'a FieldTower,
    rows: Vec<(usize, Vec<u32>)>,
}

impl<'a> Span<'a> {
    fn new(tower: &'a FieldTower) -> Self {
        Span { tower, rows: Vec::new() }
    }

    /// Inserts `x`; returns whether the dimension grew.
    fn insert(&mut self, x: FieldElem) -> bool {
        let p = self.tower.p();
        let mut v = self.tower.coeffs(x);
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi = (*vi + p - (c * ri) % p) % p;
                }
            }
        }
        let Some(pivot) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = crate::galois::fp_poly::pow_mod(v[pivot], p - 2, p);
        for vi in v.iter_mut() {
            *vi = *vi * inv % p;
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                for (ri, vi) in row.iter_mut().zip(&v) {
                    *ri = (*ri + p - (c * vi) % p) % p;
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// `dim_K K(ω)` computed from the field generated by the power-series
/// coefficients of `ω`, truncated at total degree + 2.
pub fn kpoly_module_degree(tower: &FieldTower, omega: &LWeight) -> Result<u64> {
    if omega.tower_key() != tower.key() {
        return Err(Error::TowerMismatch(format!("{} vs {}", omega.tower_key(), tower.key())));
    }
    let order = omega.total_degree() as usize + 2;
    let mut generators = Vec::new();
    for i in 0..omega.lie_type().rank() {
        generators.extend(omega.lambda_coefficients(i, order)?);
    }
    generators.retain(|c| !c.is_zero() && *c != FieldElem::ONE);
    generators.sort();
    generators.dedup();
    // F_p[C] is closed under products with the generators.
    let mut span = Span::new(tower);
    let mut basis = vec![FieldElem::ONE];
    span.insert(FieldElem::ONE);
    let mut idx = 0;
    while idx < basis.len() {
        let b = basis[idx];
        for &c in &generators {
            let x = tower.mul(b, c);
            if span.insert(x) {
                basis.push(x);
            }
        }
        idx += 1;
    }
    let d = span.dim() as u64;
    let k = tower.k() as u64;
    Ok(lcm(d, k) / k)
}

/// Multiplicities in `V(λ) ⊗ V(μ)` by forming the raw weight multiset and
/// stripping simple characters, highest first with ties broken towards the
/// lexicographically smallest weight.
pub fn brute_tensor_weight_mult(e: &CharEngine, lambda: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, u64>> {
    let expand = |w: &Weight| -> Result<Vec<Weight>> {
        let ch = e.simple_char(w)?;
        let mut out = Vec::new();
        for (nu, m) in ch.iter() {
            for _ in 0..*m {
                out.push(*nu);
            }
        }
        Ok(out)
    };
    let left = expand(lambda)?;
    let right = expand(mu)?;
    let mut counts: HashMap<Weight, i64> = HashMap::new();
    for x in &left {
        for y in &right {
            *counts.entry(*x + *y).or_insert(0) += 1;
        }
    }
    let rs = e.root_system();
    let mut out = BTreeMap::new();
    loop {
        counts.retain(|_, c| *c != 0);
        let Some(top) = counts
            .keys()
            .copied()
            .max_by(|x, y| {
                rs.scaled_height(x)
                    .cmp(&rs.scaled_height(y))
                    .then_with(|| y.cmp(x))
            })
        else {
            break;
        };
        let c = counts[&top];
        if c < 0 || !top.is_dominant() {
            return Err(Error::NotAModuleCharacter(format!("stripping failed at {top}")));
        }
        for nu in expand(&top)? {
            *counts.entry(nu).or_insert(0) -= c;
        }
        out.insert(top, c as u64);
    }
    Ok(out)
}

/// A uniformly chosen dominant ℓ-weight with `1..=max_factors` factors and
/// local coordinates in `0..=max_coord`.
pub fn random_dominant_lweight(
    rng: &mut impl Rng,
    t: LieType,
    tower: &FieldTower,
    max_factors: usize,
    max_coord: i32,
) -> LWeight {
    let n = rng.gen_range(1..=max_factors);
    let pairs: Vec<(FieldElem, Weight)> = (0..n)
        .map(|_| {
            let a = FieldElem(rng.gen_range(1..tower.size()));
            let coords: Vec<i32> = (0..t.rank()).map(|_| rng.gen_range(0..=max_coord)).collect();
            (a, Weight::new(&coords))
        })
        .collect();
    LWeight::from_support(t, tower, pairs).expect("valid random input")
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The explicit Λ-action on `V(m)(a)` against the series of `ω_{(m−2k)ω₁,a}`
/// for `m ≤ 4`, `r ≤ 6` and five rational parameters.
pub fn verify_lambda_suite() -> SuiteReport {
    let params: Vec<BigRational> = [(2, 1), (-1, 1), (1, 3), (-5, 2), (7, 4)]
        .iter()
        .map(|&(n, d)| BigRational::new(n.into(), d.into()))
        .collect();
    let order = 6;
    let mut report = SuiteReport {
        suite: "lambda".into(),
        cases: 0,
        failures: Vec::new(),
    };
    for a in &params {
        for m in 0..=4u32 {
            let table = lambda_action_eval_sl2(m, a, order);
            for k in 0..=m as usize {
                let series = lambda_series(&Rationals, &[(a.clone(), m as i32 - 2 * k as i32)], order);
                for (r, expected) in series.iter().enumerate() {
                    report.cases += 1;
                    if &table[&(k, r)] != expected {
                        report.failures.push(format!("a={a} m={m} k={k} r={r}"));
                    }
                }
            }
        }
    }
    report
}

/// `deg` from Frobenius orbits against `kpoly_module_degree` on random
/// dominant ℓ-weights over `F_2, F_3, F_4` with ambient degree ≤ 6.
pub fn verify_degree_suite(seed: u64, count: usize) -> Result<SuiteReport> {
    let mut rng = StdRng::seed_from_u64(seed);
    let types: [LieType; 2] = ["A1".parse()?, "A2".parse()?];
    let bases = [(2, 1), (3, 1), (2, 2)];
    let mut report = SuiteReport {
        suite: "degree".into(),
        cases: 0,
        failures: Vec::new(),
    };
    for i in 0..count {
        let (p, k) = bases[i % bases.len()];
        let ambient = rng.gen_range(1..=6);
        let tower = FieldTower::new(p, k, ambient)?;
        let t = types[rng.gen_range(0..types.len())];
        let w = random_dominant_lweight(&mut rng, t, &tower, 3, 2);
        let ctx = GaloisContext::finite_field(tower.clone());
        let by_orbit = ctx.deg(&w)?;
        let by_field = kpoly_module_degree(&tower, &w)?;
        report.cases += 1;
        if by_orbit != by_field {
            report
                .failures
                .push(format!("{} over {}: orbit {by_orbit}, field {by_field}", w, tower.key()));
        }
    }
    Ok(report)
}

/// `tensor_mult_g` against `brute_tensor_weight_mult` for all `λ, μ` with
/// coordinates ≤ `max_coord` in types A1, A2, B2 (characteristic zero) and
/// modular sl₂ in characteristics 2 and 3.
pub fn verify_tensor_suite(max_coord: i32) -> Result<SuiteReport> {
    let mut report = SuiteReport {
        suite: "tensor".into(),
        cases: 0,
        failures: Vec::new(),
    };
    let mut engines = Vec::new();
    for t in ["A1", "A2", "B2"] {
        engines.push(CharEngine::char0(t.parse()?));
    }
    for p in [2, 3] {
        engines.push(CharEngine::new("A1".parse()?, p)?);
    }
    for e in &engines {
        let rank = e.lie_type().rank();
        let weights = all_weights(rank, max_coord);
        for lambda in &weights {
            for mu in &weights {
                report.cases += 1;
                let fast = tensor_mult_g(e, lambda, mu)?;
                let slow = brute_tensor_weight_mult(e, lambda, mu)?;
                if fast != slow {
                    report.failures.push(format!(
                        "{} char {}: {lambda} x {mu}",
                        e.lie_type(),
                        e.characteristic()
                    ));
                }
            }
        }
    }
    Ok(report)
}

fn all_weights(rank: usize, max_coord: i32) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i32>| {
                (0..=max_coord).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out.iter().map(|c| Weight::new(c)).collect()
}
