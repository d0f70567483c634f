//! ℓ-weights: finitely supported maps from spectral parameters to weights,
//! standing for `∏_a ω_{μ_a,a}` where `ω_{μ,a}` has i-th coordinate
//! `(1 − a u)^{μ(h_i)}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::galois::{FieldElem, FieldTower, GaloisContext, TowerKey};
use crate::rootsys::{LieType, Weight};

/// An element of the ℓ-weight lattice in canonical factored form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LWeight {
    lie_type: LieType,
    tower: TowerKey,
    support: BTreeMap<FieldElem, Weight>,
}

impl LWeight {
    pub fn identity(t: LieType, tower: TowerKey) -> Self {
        LWeight {
            lie_type: t,
            tower,
            support: BTreeMap::new(),
        }
    }

    /// `ω_{μ,a}`.
    pub fn omega(t: LieType, tower: &FieldTower, mu: Weight, a: FieldElem) -> Result<Self> {
        LWeight::from_support(t, tower, [(a, mu)])
    }

    /// Builds `∏ ω_{μ,a}` over the given pairs; repeated parameters add up.
    pub fn from_support(
        t: LieType,
        tower: &FieldTower,
        pairs: impl IntoIterator<Item = (FieldElem, Weight)>,
    ) -> Result<Self> {
        let mut out = LWeight::identity(t, tower.key());
        for (a, mu) in pairs {
            if a.is_zero() {
                return Err(Error::ZeroParameter);
            }
            if a.value() >= tower.size() {
                return Err(Error::InvalidField(format!(
                    "element code {} outside F_{}",
                    a.value(),
                    tower.size()
                )));
            }
            mu.check_rank(t.rank())?;
            out.add_local(a, mu);
        }
        Ok(out)
    }

    fn add_local(&mut self, a: FieldElem, mu: Weight) {
        let entry = self.support.entry(a).or_insert(Weight::zero(mu.rank()));
        *entry += mu;
        if entry.is_zero() {
            self.support.remove(&a);
        }
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn tower_key(&self) -> TowerKey {
        self.tower
    }

    pub fn tower(&self) -> Arc<FieldTower> {
        FieldTower::from_key(self.tower).expect("tower keys come from valid towers")
    }

    pub fn support(&self) -> &BTreeMap<FieldElem, Weight> {
        &self.support
    }

    /// The exponent at parameter `a` (zero if absent).
    pub fn local(&self, a: FieldElem) -> Weight {
        self.support
            .get(&a)
            .copied()
            .unwrap_or(Weight::zero(self.lie_type.rank()))
    }

    pub fn is_identity(&self) -> bool {
        self.support.is_empty()
    }

    fn check_compatible(&self, other: &LWeight) -> Result<()> {
        if self.lie_type != other.lie_type {
            return Err(Error::TypeMismatch(
                self.lie_type.to_string(),
                other.lie_type.to_string(),
            ));
        }
        if self.tower != other.tower {
            return Err(Error::TowerMismatch(format!("{} vs {}", self.tower, other.tower)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &LWeight) -> Result<LWeight> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (a, mu) in &other.support {
            out.add_local(*a, *mu);
        }
        Ok(out)
    }

    pub fn inv(&self) -> LWeight {
        LWeight {
            lie_type: self.lie_type,
            tower: self.tower,
            support: self.support.iter().map(|(a, mu)| (*a, -*mu)).collect(),
        }
    }

    /// `self · other⁻¹`.
    pub fn div(&self, other: &LWeight) -> Result<LWeight> {
        self.mul(&other.inv())
    }

    /// `wt(ω) = Σ_a μ_a`.
    pub fn wt(&self) -> Weight {
        self.support
            .values()
            .fold(Weight::zero(self.lie_type.rank()), |acc, mu| acc + *mu)
    }

    /// True iff every coordinate is a polynomial.
    pub fn is_dominant(&self) -> bool {
        self.support.values().all(|mu| mu.is_dominant())
    }

    /// The list `(λ_j, a_j)` with distinct `a_j`, ordered by parameter.
    pub fn standard_factorization(&self) -> Result<Vec<(Weight, FieldElem)>> {
        if !self.is_dominant() {
            return Err(Error::NonDominant(self.to_string()));
        }
        Ok(self.support.iter().map(|(a, mu)| (*mu, *a)).collect())
    }

    /// The image under an automorphism acting on spectral parameters.
    pub fn map_params(&self, f: impl Fn(FieldElem) -> FieldElem) -> LWeight {
        let mut out = LWeight::identity(self.lie_type, self.tower);
        for (a, mu) in &self.support {
            out.add_local(f(*a), *mu);
        }
        out
    }

    /// Image under the Frobenius `a ↦ a^q` of the tower.
    pub fn frobenius(&self) -> LWeight {
        let tower = self.tower();
        self.map_params(|a| tower.frobenius(a))
    }

    /// Sum over parameters and coordinates of `|μ_a(h_i)|`, the total degree
    /// of numerators and denominators.
    pub fn total_degree(&self) -> u64 {
        self.support
            .values()
            .flat_map(|mu| mu.coords().iter().map(|c| c.unsigned_abs() as u64))
            .sum()
    }

    /// Reads a tuple of polynomials in `u` with constant term 1, one per
    /// node, each factored over the ambient field.
    pub fn from_poly_tuple(
        t: LieType,
        tower: &FieldTower,
        polys: &[Vec<FieldElem>],
    ) -> Result<LWeight> {
        if polys.len() != t.rank() {
            return Err(Error::RankMismatch {
                expected: t.rank(),
                got: polys.len(),
            });
        }
        let mut out = LWeight::identity(t, tower.key());
        for (i, poly) in polys.iter().enumerate() {
            let poly = trim(poly.clone());
            if poly.first().copied() != Some(FieldElem::ONE) {
                return Err(Error::ConstantTermNotOne { coordinate: i });
            }
            let (roots, rest) = split_roots(tower, poly);
            if rest.len() > 1 {
                return Err(Error::RootOutsideAmbientField {
                    coordinate: i,
                    factor: format_poly(tower, &rest),
                });
            }
            for (r, m) in roots {
                let a = tower.inv(r).expect("roots of f with f(0)=1 are nonzero");
                out.add_local(a, Weight::fundamental(t.rank(), i).scale(m as i32));
            }
        }
        Ok(out)
    }

    /// The coordinates as `(numerator, denominator)` pairs of polynomials in
    /// `u`, coefficients low to high.
    pub fn to_rational_tuple(&self) -> Vec<(Vec<FieldElem>, Vec<FieldElem>)> {
        let tower = self.tower();
        (0..self.lie_type.rank())
            .map(|i| {
                let mut num = vec![FieldElem::ONE];
                let mut den = vec![FieldElem::ONE];
                for (a, mu) in &self.support {
                    let e = mu.get(i);
                    let linear = [FieldElem::ONE, tower.neg(*a)];
                    let target = if e >= 0 { &mut num } else { &mut den };
                    for _ in 0..e.unsigned_abs() {
                        *target = poly_mul(&tower, target, &linear);
                    }
                }
                (num, den)
            })
            .collect()
    }

    /// The coordinates as polynomials; requires a dominant ℓ-weight.
    pub fn to_poly_tuple(&self) -> Result<Vec<Vec<FieldElem>>> {
        if !self.is_dominant() {
            return Err(Error::NonDominant(self.to_string()));
        }
        Ok(self.to_rational_tuple().into_iter().map(|(n, _)| n).collect())
    }

    /// Coefficients `1, ϖ_{i,1}, …, ϖ_{i,R}` of coordinate `i` as a power
    /// series in `u`.
    pub fn lambda_coefficients(&self, i: usize, order: usize) -> Result<Vec<FieldElem>> {
        if i >= self.lie_type.rank() {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: self.lie_type.rank(),
            });
        }
        let tower = self.tower();
        let factors: Vec<(FieldElem, i32)> =
            self.support.iter().map(|(a, mu)| (*a, mu.get(i))).collect();
        Ok(lambda_series(&*tower, &factors, order))
    }

    /// Canonical text form, e.g. `[g:(1), g+1:(-1)]`.
    pub fn display_with(&self, tower: &FieldTower) -> String {
        let parts: Vec<String> = self
            .support
            .iter()
            .map(|(a, mu)| format!("{}:{}", tower.format(*a), mu))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Display for LWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&self.tower()))
    }
}

impl fmt::Debug for LWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.lie_type, self)
    }
}

struct SupportJson<'a>(&'a LWeight);

impl Serialize for SupportJson<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let tower = self.0.tower();
        let mut seq = serializer.serialize_seq(Some(self.0.support.len()))?;
        for (a, mu) in &self.0.support {
            let mut entry = BTreeMap::new();
            entry.insert("param", serde_json::Value::String(tower.format(*a)));
            entry.insert(
                "weight",
                serde_json::to_value(mu).map_err(serde::ser::Error::custom)?,
            );
            seq.serialize_element(&entry)?;
        }
        seq.end()
    }
}

/// `{"type":"A1","support":[{"param":"g","weight":[1]}]}`.
impl Serialize for LWeight {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("type", &self.lie_type)?;
        map.serialize_entry("support", &SupportJson(self))?;
        map.end()
    }
}

/// `ϖ ≤ ω`: the quotient `ω ϖ⁻¹` has every local exponent in `Q⁺`.
pub fn leq_qplus(varpi: &LWeight, omega: &LWeight) -> bool {
    if varpi.check_compatible(omega).is_err() {
        return false;
    }
    let rs = omega.lie_type.root_system();
    let quotient = omega.div(varpi).expect("compatible");
    quotient
        .support
        .values()
        .all(|mu| rs.root_monoid_coeffs(mu).is_some())
}

/// Disjoint parameter sets.
pub fn relatively_prime(varpi: &LWeight, pi: &LWeight) -> bool {
    varpi.support.keys().all(|a| !pi.support.contains_key(a))
}

/// `|{(ϖ′, π′) ∈ [ϖ] × [π] : ϖ′π′ = ω}|`.
pub fn class_product_count(
    ctx: &GaloisContext,
    omega: &LWeight,
    varpi: &LWeight,
    pi: &LWeight,
) -> Result<u64> {
    let a = ctx.orbit(varpi)?;
    let b = ctx.orbit(pi)?;
    let mut count = 0;
    for x in a.members() {
        for y in b.members() {
            if x.mul(y)? == *omega {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// The commutative rings in which power-series coefficients are computed.
pub trait CoeffRing {
    type Elem: Clone + PartialEq;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
}

impl CoeffRing for FieldTower {
    type Elem = FieldElem;
    fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }
    fn one(&self) -> FieldElem {
        FieldElem::ONE
    }
    fn add(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        FieldTower::add(self, *x, *y)
    }
    fn mul(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        FieldTower::mul(self, *x, *y)
    }
    fn neg(&self, x: &FieldElem) -> FieldElem {
        FieldTower::neg(self, *x)
    }
}

/// Exact rationals, for characteristic-zero spectral parameters.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl CoeffRing for Rationals {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x + y
    }
    fn mul(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x * y
    }
    fn neg(&self, x: &BigRational) -> BigRational {
        -x
    }
}

impl Rationals {
    pub fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// Truncation to degree `order` of `∏ (1 − a u)^e` over `(a, e)` pairs;
/// negative exponents expand geometrically.
pub fn lambda_series<R: CoeffRing>(ring: &R, factors: &[(R::Elem, i32)], order: usize) -> Vec<R::Elem> {
    let mut acc = vec![ring.zero(); order + 1];
    acc[0] = ring.one();
    for (a, e) in factors {
        for _ in 0..e.unsigned_abs() {
            if *e > 0 {
                // multiply by 1 − a u
                for r in (1..=order).rev() {
                    let t = ring.mul(a, &acc[r - 1]);
                    acc[r] = ring.add(&acc[r], &ring.neg(&t));
                }
            } else {
                // multiply by 1 + a u + a² u² + …, i.e. c_r += a c_{r−1}
                for r in 1..=order {
                    let t = ring.mul(a, &acc[r - 1]);
                    acc[r] = ring.add(&acc[r], &t);
                }
            }
        }
    }
    acc
}

fn trim(mut p: Vec<FieldElem>) -> Vec<FieldElem> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_mul(tower: &FieldTower, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
    let mut out = vec![FieldElem::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = tower.add(out[i + j], tower.mul(*x, *y));
        }
    }
    trim(out)
}

fn eval(tower: &FieldTower, p: &[FieldElem], x: FieldElem) -> FieldElem {
    p.iter()
        .rev()
        .fold(FieldElem::ZERO, |acc, c| tower.add(tower.mul(acc, x), *c))
}

/// Synthetic division by `u − r`; `p(r)` must be zero.
fn divide_linear(tower: &FieldTower, p: &[FieldElem], r: FieldElem) -> Vec<FieldElem> {
    let n = p.len() - 1;
    let mut q = vec![FieldElem::ZERO; n];
    let mut carry = FieldElem::ZERO;
    for i in (0..n).rev() {
        carry = tower.add(p[i + 1], tower.mul(carry, r));
        q[i] = carry;
    }
    q
}

/// Roots with multiplicity by exhaustive search, and the rootless cofactor.
fn split_roots(tower: &FieldTower, mut poly: Vec<FieldElem>) -> (Vec<(FieldElem, u32)>, Vec<FieldElem>) {
    let mut roots = Vec::new();
    if poly.len() <= 1 {
        return (roots, poly);
    }
    for r in tower.nonzero_elements() {
        let mut m = 0;
        while poly.len() > 1 && eval(tower, &poly, r).is_zero() {
            poly = divide_linear(tower, &poly, r);
            m += 1;
        }
        if m > 0 {
            roots.push((r, m));
        }
        if poly.len() <= 1 {
            break;
        }
    }
    (roots, poly)
}

pub(crate) fn format_poly(tower: &FieldTower, p: &[FieldElem]) -> String {
    let mut terms = Vec::new();
    for (i, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let coeff = tower.format(*c);
        let coeff = if coeff.contains('+') && i > 0 {
            format!("({coeff})")
        } else {
            coeff
        };
        terms.push(match (i, coeff.as_str()) {
            (0, _) => coeff,
            (1, "1") => "u".into(),
            (1, _) => format!("{coeff}*u"),
            (_, "1") => format!("u^{i}"),
            _ => format!("{coeff}*u^{i}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::GaloisContext;

    fn a1() -> LieType {
        "A1".parse().unwrap()
    }

    fn f4() -> Arc<FieldTower> {
        FieldTower::new(2, 1, 2).unwrap()
    }

    fn w1() -> Weight {
        Weight::new(&[1])
    }

    #[test]
    fn poly_round_trip_examples() {
        let t = f4();
        let a = t.generator();
        let one = t.one();
        let id = LWeight::from_poly_tuple(a1(), &t, &[vec![one]]).unwrap();
        assert!(id.is_identity());
        // 1 - a u = 1 + a u in characteristic 2
        let lin = LWeight::from_poly_tuple(a1(), &t, &[vec![one, a]]).unwrap();
        assert_eq!(lin, LWeight::omega(a1(), &t, w1(), a).unwrap());
        let quad = LWeight::from_poly_tuple(a1(), &t, &[vec![one, one, one]]).unwrap();
        let a2 = t.mul(a, a);
        assert_eq!(
            quad.standard_factorization().unwrap(),
            vec![(w1(), a), (w1(), a2)]
        );
        assert_eq!(quad.to_poly_tuple().unwrap(), vec![vec![one, one, one]]);
    }

    #[test]
    fn poly_errors() {
        let t = f4();
        let one = t.one();
        assert_eq!(
            LWeight::from_poly_tuple(a1(), &t, &[vec![t.zero(), one]]),
            Err(Error::ConstantTermNotOne { coordinate: 0 })
        );
        let f2 = FieldTower::new(2, 1, 1).unwrap();
        let err = LWeight::from_poly_tuple(a1(), &f2, &[vec![one, one, one]]).unwrap_err();
        assert!(matches!(err, Error::RootOutsideAmbientField { coordinate: 0, .. }));
        // (1+u)(1+u+u^2) over F2: the linear factor splits, the quadratic does not
        let cubic = vec![one, t.zero(), t.zero(), one];
        match LWeight::from_poly_tuple(a1(), &f2, &[cubic]).unwrap_err() {
            Error::RootOutsideAmbientField { factor, .. } => assert_eq!(factor, "1+u+u^2"),
            e => panic!("{e:?}"),
        }
        assert_eq!(
            LWeight::omega(a1(), &t, w1(), t.zero()),
            Err(Error::ZeroParameter)
        );
    }

    #[test]
    fn group_structure() {
        let t = f4();
        let a = t.generator();
        let b = t.one();
        let wa = LWeight::omega(a1(), &t, w1(), a).unwrap();
        let wb = LWeight::omega(a1(), &t, w1(), b).unwrap();
        assert!(wa.mul(&wa.inv()).unwrap().is_identity());
        assert_eq!(
            wa.mul(&wa).unwrap(),
            LWeight::omega(a1(), &t, Weight::new(&[2]), a).unwrap()
        );
        assert_eq!(wa.mul(&wb).unwrap().support().len(), 2);
        assert_eq!(wa.wt(), w1());
        assert!(wa.div(&wb).unwrap().wt().is_zero());
        assert!(!wa.inv().is_dominant());
        let other = LWeight::identity(a1(), FieldTower::new(2, 1, 3).unwrap().key());
        assert!(matches!(wa.mul(&other), Err(Error::TowerMismatch(_))));
    }

    #[test]
    fn partial_order_examples() {
        let t = f4();
        let a = t.generator();
        let b = t.one();
        let up = LWeight::omega(a1(), &t, w1(), a).unwrap();
        let down = LWeight::omega(a1(), &t, -w1(), a).unwrap();
        let down_b = LWeight::omega(a1(), &t, -w1(), b).unwrap();
        assert!(leq_qplus(&up, &up));
        assert!(leq_qplus(&down, &up));
        assert!(!leq_qplus(&up, &down));
        assert!(!leq_qplus(&down_b, &up));
        assert!(relatively_prime(&up, &down_b));
        assert!(!relatively_prime(&up, &down));
    }

    #[test]
    fn lambda_examples() {
        let t = f4();
        let a = t.generator();
        let id = LWeight::identity(a1(), t.key());
        assert_eq!(
            id.lambda_coefficients(0, 3).unwrap(),
            vec![t.one(), t.zero(), t.zero(), t.zero()]
        );
        let up = LWeight::omega(a1(), &t, w1(), a).unwrap();
        assert_eq!(
            up.lambda_coefficients(0, 2).unwrap(),
            vec![t.one(), t.neg(a), t.zero()]
        );
        let down = up.inv();
        assert_eq!(
            down.lambda_coefficients(0, 2).unwrap(),
            vec![t.one(), a, t.mul(a, a)]
        );
        let q = Rationals;
        let two = Rationals::int(2);
        assert_eq!(
            lambda_series(&q, &[(two.clone(), -2)], 2),
            vec![Rationals::int(1), Rationals::int(4), Rationals::int(12)]
        );
        assert_eq!(
            lambda_series(&q, &[(two, 1)], 2),
            vec![Rationals::int(1), Rationals::int(-2), Rationals::int(0)]
        );
    }

    #[test]
    fn class_products() {
        let t = f4();
        let ctx = GaloisContext::finite_field(t.clone());
        let a = t.generator();
        let a2 = t.mul(a, a);
        let varpi = LWeight::omega(a1(), &t, w1(), a).unwrap();
        let pi = LWeight::omega(a1(), &t, w1(), a2).unwrap();
        let id = LWeight::identity(a1(), t.key());
        assert_eq!(class_product_count(&ctx, &id, &id, &id).unwrap(), 1);
        let prod = varpi.mul(&pi).unwrap();
        assert_eq!(class_product_count(&ctx, &prod, &varpi, &pi).unwrap(), 2);
        let sq = LWeight::omega(a1(), &t, Weight::new(&[2]), a).unwrap();
        assert_eq!(class_product_count(&ctx, &sq, &varpi, &pi).unwrap(), 1);
    }

    #[test]
    fn json_shape() {
        let t = f4();
        let w = LWeight::omega(a1(), &t, w1(), t.generator()).unwrap();
        assert_eq!(
            serde_json::to_string(&w).unwrap(),
            r#"{"type":"A1","support":[{"param":"g","weight":[1]}]}"#
        );
    }
}
