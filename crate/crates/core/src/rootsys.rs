//! Finite-type root data.
//!
//! Weights are stored in fundamental-weight coordinates, `coords[i] = λ(h_i)`.
//! The Cartan matrix follows `C[i][j] = α_j(h_i)`, so the simple root `α_j`
//! is column `j`. Nodes use Bourbaki numbering (0-based) for B, C, D, E and F;
//! in G2 node 0 is long and node 1 is short, giving `[[2,-1],[-3,2]]`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::Rational64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_RANK: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A connected finite-type Dynkin diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    family: Family,
    rank: u8,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C | Family::D => rank >= 2,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok || rank > MAX_RANK {
            return Err(Error::InvalidLieType(format!("{family:?}{rank}")));
        }
        Ok(LieType {
            family,
            rank: rank as u8,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    /// Shared root data for this type, computed once per process.
    pub fn root_system(&self) -> Arc<RootSystem> {
        static CACHE: OnceLock<Mutex<HashMap<LieType, Arc<RootSystem>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("root system cache poisoned");
        guard
            .entry(*self)
            .or_insert_with(|| Arc::new(RootSystem::build(*self)))
            .clone()
    }

    /// Every valid type of rank at most `max_rank`.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<LieType> {
        let mut out = Vec::new();
        for family in [
            Family::A,
            Family::B,
            Family::C,
            Family::D,
            Family::E,
            Family::F,
            Family::G,
        ] {
            for rank in 1..=max_rank.min(MAX_RANK) {
                if let Ok(t) = LieType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
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
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::InvalidLieType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidLieType(s.to_string()))?;
        LieType::new(family, rank)
    }
}

impl Serialize for LieType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LieType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of the weight lattice in fundamental-weight coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    rank: u8,
    coords: [i32; MAX_RANK],
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        assert!(rank <= MAX_RANK, "rank {rank} exceeds {MAX_RANK}");
        Weight {
            rank: rank as u8,
            coords: [0; MAX_RANK],
        }
    }

    pub fn new(coords: &[i32]) -> Self {
        let mut w = Weight::zero(coords.len());
        w.coords[..coords.len()].copy_from_slice(coords);
        w
    }

    /// The fundamental weight `ω_i`.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.coords[i] = 1;
        w
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn coords(&self) -> &[i32] {
        &self.coords[..self.rank as usize]
    }

    pub fn get(&self, i: usize) -> i32 {
        self.coords()[i]
    }

    pub fn set(&mut self, i: usize, value: i32) {
        assert!(i < self.rank as usize);
        self.coords[i] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.coords().iter().all(|&c| c >= 0)
    }

    pub fn scale(&self, k: i32) -> Weight {
        let mut w = *self;
        for c in &mut w.coords {
            *c *= k;
        }
        w
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        if self.rank() == rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                expected: rank,
                got: self.rank(),
            })
        }
    }
}

impl std::ops::Add for Weight {
    type Output = Weight;
    fn add(mut self, rhs: Weight) -> Weight {
        debug_assert_eq!(self.rank, rhs.rank);
        for i in 0..MAX_RANK {
            self.coords[i] += rhs.coords[i];
        }
        self
    }
}

impl std::ops::Sub for Weight {
    type Output = Weight;
    fn sub(mut self, rhs: Weight) -> Weight {
        debug_assert_eq!(self.rank, rhs.rank);
        for i in 0..MAX_RANK {
            self.coords[i] -= rhs.coords[i];
        }
        self
    }
}

impl std::ops::Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(-1)
    }
}

impl std::ops::AddAssign for Weight {
    fn add_assign(&mut self, rhs: Weight) {
        *self = *self + rhs;
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coords: Vec<i32> =
            serde_json::from_str(s.trim()).map_err(|e| Error::Parse(format!("weight {s:?}: {e}")))?;
        if coords.is_empty() || coords.len() > MAX_RANK {
            return Err(Error::Parse(format!("weight {s:?} has invalid length")));
        }
        Ok(Weight::new(&coords))
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let coords = Vec::<i32>::deserialize(deserializer)?;
        if coords.is_empty() || coords.len() > MAX_RANK {
            return Err(serde::de::Error::custom("weight has invalid length"));
        }
        Ok(Weight::new(&coords))
    }
}

/// A positive root, kept in both coordinate systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveRoot {
    pub weight: Weight,
    /// Coefficients in the basis of simple roots.
    pub root_coords: Vec<i32>,
    pub height: i32,
}

/// Precomputed root data for one type.
#[derive(Debug)]
pub struct RootSystem {
    lie_type: LieType,
    cartan: Vec<Vec<i32>>,
    symmetrizer: Vec<i32>,
    /// `det(C) · C⁻¹`.
    adjugate: Vec<Vec<i64>>,
    det: i64,
    positive: Vec<PositiveRoot>,
    /// Gram matrix of the fundamental weights.
    form: Vec<Vec<Rational64>>,
    /// `form_scale · form`, an integer matrix.
    form_int: Vec<Vec<i64>>,
    form_scale: i64,
    weyl_order: u128,
}

impl RootSystem {
    fn build(t: LieType) -> RootSystem {
        let cartan = build_cartan(t);
        let symmetrizer = build_symmetrizer(t);
        let n = t.rank();

        let inv = invert(&cartan);
        let det = integer_det(&cartan);
        let adjugate: Vec<Vec<i64>> = inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|q| {
                        let v = *q * Rational64::from_integer(det);
                        assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();

        // Gram matrix (ω_i, ω_j) = ((Cᵀ)⁻¹ D)_{ij}, from (α_i, ω_j) = d_i δ_ij.
        let mut form = vec![vec![Rational64::from_integer(0); n]; n];
        for i in 0..n {
            for j in 0..n {
                // (Cᵀ)⁻¹ = (C⁻¹)ᵀ
                form[i][j] = inv[j][i] * Rational64::from_integer(symmetrizer[j] as i64);
            }
        }
        let form_scale = form
            .iter()
            .flatten()
            .fold(1i64, |acc, q| lcm(acc, *q.denom()));
        let form_int = form
            .iter()
            .map(|row| {
                row.iter()
                    .map(|q| (*q * Rational64::from_integer(form_scale)).to_integer())
                    .collect()
            })
            .collect();

        let positive = generate_positive_roots(&cartan);
        let weyl_order = parabolic_order(&positive, &vec![true; n]);

        RootSystem {
            lie_type: t,
            cartan,
            symmetrizer,
            adjugate,
            det,
            positive,
            form,
            form_int,
            form_scale,
            weyl_order,
        }
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank()
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[i32] {
        &self.symmetrizer
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive
    }

    pub fn weyl_order(&self) -> u128 {
        self.weyl_order
    }

    pub fn simple_root(&self, j: usize) -> Weight {
        let n = self.rank();
        let col: Vec<i32> = (0..n).map(|i| self.cartan[i][j]).collect();
        Weight::new(&col)
    }

    pub fn rho(&self) -> Weight {
        Weight::new(&vec![1; self.rank()])
    }

    /// Coordinates of `μ` in the simple-root basis, if they are integral.
    pub fn root_coords(&self, mu: &Weight) -> Option<Vec<i64>> {
        let n = self.rank();
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let s: i64 = (0..n)
                .map(|i| self.adjugate[j][i] * mu.get(i) as i64)
                .sum();
            if s % self.det != 0 {
                return None;
            }
            out.push(s / self.det);
        }
        Some(out)
    }

    /// `Some(x)` with `Σ x_j α_j = μ` when `μ ∈ Q⁺`.
    pub fn root_monoid_coeffs(&self, mu: &Weight) -> Option<Vec<u64>> {
        let x = self.root_coords(mu)?;
        x.into_iter()
            .map(|v| u64::try_from(v).ok())
            .collect::<Option<Vec<u64>>>()
    }

    /// `μ ≤ λ` in the dominance order, i.e. `λ − μ ∈ Q⁺`.
    pub fn dominance_leq(&self, mu: &Weight, lambda: &Weight) -> bool {
        self.root_monoid_coeffs(&(*lambda - *mu)).is_some()
    }

    /// Height of `μ` measured in the simple-root basis, scaled by `det(C)`
    /// so that it is an integer for every weight. Strictly monotone for `<`.
    pub fn scaled_height(&self, mu: &Weight) -> i64 {
        let n = self.rank();
        (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| self.adjugate[j][i] * mu.get(i) as i64)
                    .sum::<i64>()
            })
            .sum()
    }

    pub fn symmetric_form(&self, mu: &Weight, nu: &Weight) -> Rational64 {
        let n = self.rank();
        let mut acc = Rational64::from_integer(0);
        for i in 0..n {
            for j in 0..n {
                acc += self.form[i][j] * Rational64::from_integer(mu.get(i) as i64 * nu.get(j) as i64);
            }
        }
        acc
    }

    /// `form_scale() · ⟨μ, ν⟩`, always an integer.
    pub fn scaled_form(&self, mu: &Weight, nu: &Weight) -> i64 {
        let n = self.rank();
        let mut acc = 0i64;
        for i in 0..n {
            let mi = mu.get(i) as i64;
            if mi == 0 {
                continue;
            }
            for j in 0..n {
                acc += self.form_int[i][j] * mi * nu.get(j) as i64;
            }
        }
        acc
    }

    pub fn form_scale(&self) -> i64 {
        self.form_scale
    }

    pub fn reflect(&self, mu: &Weight, i: usize) -> Weight {
        let k = mu.get(i);
        if k == 0 {
            return *mu;
        }
        let mut out = *mu;
        for r in 0..self.rank() {
            out.coords[r] -= k * self.cartan[r][i];
        }
        out
    }

    pub fn dominant_conjugate(&self, mu: &Weight) -> Weight {
        let mut w = *mu;
        loop {
            match w.coords().iter().position(|&c| c < 0) {
                Some(i) => w = self.reflect(&w, i),
                None => return w,
            }
        }
    }

    /// The Weyl group orbit of `μ`, sorted.
    pub fn orbit(&self, mu: &Weight) -> Vec<Weight> {
        let start = self.dominant_conjugate(mu);
        let mut seen = HashSet::new();
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank() {
                if w.get(i) > 0 {
                    let r = self.reflect(&w, i);
                    if seen.insert(r) {
                        queue.push_back(r);
                    }
                }
            }
        }
        let mut out: Vec<Weight> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// `|W · μ|`, via the order of the stabilizer of the dominant conjugate.
    pub fn orbit_size(&self, mu: &Weight) -> u128 {
        let dom = self.dominant_conjugate(mu);
        let mask: Vec<bool> = dom.coords().iter().map(|&c| c == 0).collect();
        self.weyl_order / parabolic_order(&self.positive, &mask)
    }
}

fn build_cartan(t: LieType) -> Vec<Vec<i32>> {
    let n = t.rank();
    let mut c = vec![vec![0i32; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |c: &mut Vec<Vec<i32>>, i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match t.family() {
        Family::A => {
            for i in 1..n {
                link(&mut c, i - 1, i);
            }
        }
        Family::B => {
            for i in 1..n {
                link(&mut c, i - 1, i);
            }
            // last node short
            c[n - 1][n - 2] = -2;
        }
        Family::C => {
            for i in 1..n {
                link(&mut c, i - 1, i);
            }
            // last node long
            c[n - 2][n - 1] = -2;
        }
        Family::D => {
            for i in 1..n - 1 {
                link(&mut c, i - 1, i);
            }
            if n >= 3 {
                link(&mut c, n - 3, n - 1);
            }
        }
        Family::E => {
            link(&mut c, 0, 2);
            link(&mut c, 1, 3);
            for i in 3..n {
                link(&mut c, i - 1, i);
            }
        }
        Family::F => {
            link(&mut c, 0, 1);
            link(&mut c, 1, 2);
            link(&mut c, 2, 3);
            c[2][1] = -2;
        }
        Family::G => {
            link(&mut c, 0, 1);
            c[1][0] = -3;
        }
    }
    c
}

/// `d_i = ⟨α_i, α_i⟩ / 2` with short roots of squared length 2.
fn build_symmetrizer(t: LieType) -> Vec<i32> {
    let n = t.rank();
    match t.family() {
        Family::A | Family::D | Family::E => vec![1; n],
        Family::B => {
            let mut d = vec![2; n];
            d[n - 1] = 1;
            d
        }
        Family::C => {
            let mut d = vec![1; n];
            d[n - 1] = 2;
            d
        }
        Family::F => vec![2, 2, 1, 1],
        Family::G => vec![3, 1],
    }
}

fn generate_positive_roots(cartan: &[Vec<i32>]) -> Vec<PositiveRoot> {
    let n = cartan.len();
    let to_weight = |x: &[i32]| -> Weight {
        let coords: Vec<i32> = (0..n)
            .map(|i| (0..n).map(|j| cartan[i][j] * x[j]).sum())
            .collect();
        Weight::new(&coords)
    };
    let mut roots: Vec<Vec<i32>> = Vec::new();
    let mut known: HashSet<Vec<i32>> = HashSet::new();
    for j in 0..n {
        let mut e = vec![0; n];
        e[j] = 1;
        known.insert(e.clone());
        roots.push(e);
    }
    // Roots are appended in nondecreasing height, so α_i-strings below a
    // root are already known when it is processed.
    let mut idx = 0;
    while idx < roots.len() {
        let beta = roots[idx].clone();
        let w = to_weight(&beta);
        for i in 0..n {
            let mut r = 0;
            let mut down = beta.clone();
            loop {
                down[i] -= 1;
                if known.contains(&down) {
                    r += 1;
                } else {
                    break;
                }
            }
            let q = r - w.get(i);
            if q > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if known.insert(up.clone()) {
                    roots.push(up);
                }
            }
        }
        idx += 1;
    }
    let mut out: Vec<PositiveRoot> = roots
        .into_iter()
        .map(|x| PositiveRoot {
            weight: to_weight(&x),
            height: x.iter().sum(),
            root_coords: x,
        })
        .collect();
    out.sort_by(|a, b| a.height.cmp(&b.height).then(a.root_coords.cmp(&b.root_coords)));
    out
}

/// Order of the parabolic subgroup generated by the reflections in `mask`,
/// from `|W_J| = ∏_{α ∈ R_J⁺} (ht α + 1) / ht α`.
fn parabolic_order(positive: &[PositiveRoot], mask: &[bool]) -> u128 {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for root in positive {
        let inside = root
            .root_coords
            .iter()
            .zip(mask)
            .all(|(&c, &m)| c == 0 || m);
        if inside {
            num *= (root.height + 1) as u128;
            den *= root.height as u128;
            let g = gcd_u128(num, den);
            num /= g;
            den /= g;
        }
    }
    assert_eq!(den, 1, "parabolic order is an integer");
    num
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd_u128(b, a % b)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

fn invert(m: &[Vec<i32>]) -> Vec<Vec<Rational64>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .map(|row| row.iter().map(|&v| Rational64::from_integer(v as i64)).collect())
        .collect();
    let mut inv: Vec<Vec<Rational64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Rational64::from_integer((i == j) as i64))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| a[r][col] != Rational64::from_integer(0))
            .expect("Cartan matrix is nonsingular");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col];
                if f != Rational64::from_integer(0) {
                    for j in 0..n {
                        let t = a[col][j];
                        a[r][j] -= f * t;
                        let t = inv[col][j];
                        inv[r][j] -= f * t;
                    }
                }
            }
        }
    }
    inv
}

fn integer_det(m: &[Vec<i32>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .map(|row| row.iter().map(|&v| Rational64::from_integer(v as i64)).collect())
        .collect();
    let mut det = Rational64::from_integer(1);
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| a[r][col] != Rational64::from_integer(0)) else {
            return 0;
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        let (top, bottom) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in bottom {
            let f = row[col] / p;
            for (x, t) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * *t;
            }
        }
    }
    det.to_integer()
}

pub fn cartan_matrix(t: LieType) -> Vec<Vec<i32>> {
    t.root_system().cartan().to_vec()
}

pub fn simple_root(t: LieType, j: usize) -> Result<Weight> {
    if j >= t.rank() {
        return Err(Error::IndexOutOfRange {
            index: j,
            rank: t.rank(),
        });
    }
    Ok(t.root_system().simple_root(j))
}

pub fn root_monoid_coeffs(t: LieType, mu: &Weight) -> Result<Option<Vec<u64>>> {
    mu.check_rank(t.rank())?;
    Ok(t.root_system().root_monoid_coeffs(mu))
}

pub fn dominance_leq(t: LieType, mu: &Weight, lambda: &Weight) -> Result<bool> {
    mu.check_rank(t.rank())?;
    lambda.check_rank(t.rank())?;
    Ok(t.root_system().dominance_leq(mu, lambda))
}

pub fn positive_roots(t: LieType) -> Vec<Weight> {
    t.root_system()
        .positive_roots()
        .iter()
        .map(|r| r.weight)
        .collect()
}

pub fn symmetric_form(t: LieType, mu: &Weight, nu: &Weight) -> Result<Rational64> {
    mu.check_rank(t.rank())?;
    nu.check_rank(t.rank())?;
    Ok(t.root_system().symmetric_form(mu, nu))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> LieType {
        s.parse().unwrap()
    }

    #[test]
    fn cartan_tables() {
        assert_eq!(cartan_matrix(ty("A1")), vec![vec![2]]);
        assert_eq!(cartan_matrix(ty("A2")), vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(cartan_matrix(ty("G2")), vec![vec![2, -1], vec![-3, 2]]);
        assert_eq!(cartan_matrix(ty("B2")), vec![vec![2, -1], vec![-2, 2]]);
        assert_eq!(cartan_matrix(ty("C2")), vec![vec![2, -2], vec![-1, 2]]);
    }

    #[test]
    fn rejects_bad_ranks() {
        for s in ["A0", "B1", "E5", "E9", "F3", "G3", "X2", "A", "A9"] {
            assert!(s.parse::<LieType>().is_err(), "{s}");
        }
        assert_eq!(ty("e6").to_string(), "E6");
    }

    #[test]
    fn cartan_shape_all_types() {
        for t in LieType::all_up_to_rank(8) {
            let rs = t.root_system();
            let c = rs.cartan();
            let d = rs.symmetrizer();
            for i in 0..t.rank() {
                assert_eq!(c[i][i], 2);
                for j in 0..t.rank() {
                    if i != j {
                        assert!(c[i][j] <= 0);
                    }
                    assert_eq!(d[i] * c[i][j], d[j] * c[j][i], "{t}");
                }
            }
        }
    }

    #[test]
    fn simple_roots_are_columns() {
        assert_eq!(simple_root(ty("A1"), 0).unwrap(), Weight::new(&[2]));
        assert_eq!(simple_root(ty("A2"), 0).unwrap(), Weight::new(&[2, -1]));
        assert_eq!(simple_root(ty("B2"), 1).unwrap(), Weight::new(&[-1, 2]));
        assert!(simple_root(ty("A2"), 2).is_err());
    }

    #[test]
    fn q_plus_membership() {
        let a1 = ty("A1");
        let a2 = ty("A2");
        assert_eq!(root_monoid_coeffs(a1, &Weight::zero(1)).unwrap(), Some(vec![0]));
        assert_eq!(root_monoid_coeffs(a1, &Weight::new(&[2])).unwrap(), Some(vec![1]));
        assert_eq!(root_monoid_coeffs(a1, &Weight::new(&[1])).unwrap(), None);
        assert_eq!(root_monoid_coeffs(a2, &Weight::new(&[1, 1])).unwrap(), Some(vec![1, 1]));
        assert_eq!(root_monoid_coeffs(a2, &Weight::new(&[-2, 1])).unwrap(), None);
        assert!(root_monoid_coeffs(a2, &Weight::new(&[1])).is_err());
    }

    #[test]
    fn simple_roots_have_unit_coefficients() {
        for t in LieType::all_up_to_rank(8) {
            let rs = t.root_system();
            for j in 0..t.rank() {
                let mut e = vec![0u64; t.rank()];
                e[j] = 1;
                assert_eq!(rs.root_monoid_coeffs(&rs.simple_root(j)), Some(e));
            }
        }
    }

    #[test]
    fn dominance_examples() {
        let a1 = ty("A1");
        let a2 = ty("A2");
        let w = Weight::new(&[1, 0]);
        assert!(dominance_leq(a2, &w, &w).unwrap());
        assert!(dominance_leq(a1, &Weight::new(&[0]), &Weight::new(&[2])).unwrap());
        assert!(!dominance_leq(a2, &Weight::new(&[1, 0]), &Weight::new(&[0, 1])).unwrap());
        assert!(!dominance_leq(a2, &Weight::new(&[0, 1]), &Weight::new(&[1, 0])).unwrap());
    }

    #[test]
    fn positive_root_counts() {
        let expected = |t: LieType| -> usize {
            let n = t.rank();
            match t.family() {
                Family::A => n * (n + 1) / 2,
                Family::B | Family::C => n * n,
                Family::D => n * (n - 1),
                Family::E => [36, 63, 120][n - 6],
                Family::F => 24,
                Family::G => 6,
            }
        };
        for t in LieType::all_up_to_rank(8) {
            assert_eq!(positive_roots(t).len(), expected(t), "{t}");
        }
        assert_eq!(positive_roots(ty("A1")), vec![Weight::new(&[2])]);
        assert_eq!(positive_roots(ty("A2")).len(), 3);
        assert_eq!(positive_roots(ty("B2")).len(), 4);
    }

    #[test]
    fn heights_sum_to_weyl_vector() {
        // Σ_{α>0} α = 2ρ, so in ω-coordinates every entry of the sum is 2.
        for t in LieType::all_up_to_rank(8) {
            let sum = positive_roots(t)
                .into_iter()
                .fold(Weight::zero(t.rank()), |a, b| a + b);
            assert_eq!(sum, Weight::new(&vec![2; t.rank()]), "{t}");
        }
    }

    #[test]
    fn weyl_orders() {
        let cases = [
            ("A1", 2u128),
            ("A2", 6),
            ("B2", 8),
            ("G2", 12),
            ("A3", 24),
            ("B3", 48),
            ("D4", 192),
            ("F4", 1152),
            ("E6", 51840),
            ("E8", 696729600),
        ];
        for (s, n) in cases {
            assert_eq!(ty(s).root_system().weyl_order(), n, "{s}");
        }
    }

    #[test]
    fn symmetric_form_values() {
        let a1 = ty("A1");
        let a2 = ty("A2");
        let alpha = simple_root(a1, 0).unwrap();
        assert_eq!(symmetric_form(a1, &alpha, &alpha).unwrap(), Rational64::from_integer(2));
        let w1 = Weight::fundamental(2, 0);
        assert_eq!(symmetric_form(a2, &w1, &w1).unwrap(), Rational64::new(2, 3));
    }

    #[test]
    fn form_against_symmetrizer() {
        for t in LieType::all_up_to_rank(8) {
            let rs = t.root_system();
            let mu = Weight::new(&(0..t.rank() as i32).map(|i| 3 - 2 * i).collect::<Vec<_>>());
            for i in 0..t.rank() {
                let a = rs.simple_root(i);
                assert_eq!(
                    rs.symmetric_form(&a, &mu),
                    Rational64::from_integer(rs.symmetrizer()[i] as i64 * mu.get(i) as i64),
                    "{t}"
                );
                assert_eq!(
                    rs.scaled_form(&a, &mu),
                    rs.form_scale() * rs.symmetrizer()[i] as i64 * mu.get(i) as i64
                );
            }
            // short roots have squared length 2
            let shortest = rs
                .positive_roots()
                .iter()
                .map(|r| rs.symmetric_form(&r.weight, &r.weight))
                .min()
                .unwrap();
            assert_eq!(shortest, Rational64::from_integer(2), "{t}");
        }
    }

    #[test]
    fn orbits() {
        let rs = ty("A2").root_system();
        let o = rs.orbit(&Weight::new(&[1, 0]));
        assert_eq!(o.len(), 3);
        assert_eq!(rs.orbit_size(&Weight::new(&[1, 0])), 3);
        assert_eq!(rs.orbit_size(&Weight::new(&[1, 1])), 6);
        assert_eq!(rs.orbit_size(&Weight::new(&[0, 0])), 1);
        let b3 = ty("B3").root_system();
        for w in [[1, 0, 0], [0, 1, 1], [2, 1, 0], [1, 1, 1]] {
            let w = Weight::new(&w);
            assert_eq!(b3.orbit(&w).len() as u128, b3.orbit_size(&w));
        }
    }

    #[test]
    fn weight_json() {
        let w = Weight::new(&[1, -2]);
        assert_eq!(serde_json::to_string(&w).unwrap(), "[1,-2]");
        let back: Weight = serde_json::from_str("[1,-2]").unwrap();
        assert_eq!(back, w);
        assert_eq!("[1,-2]".parse::<Weight>().unwrap(), w);
    }
}
