//! ℓ-characters over `F` (elements of `Z[P_F]`) and over `K` (functions on
//! conjugacy classes), with the triangular decomposition algorithms.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::galois::{FieldElem, FieldTower, GaloisContext, TowerKey};
use crate::gchar::{decompose_char, weyl_module_gchar, CharEngine, Character};
use crate::lweight::LWeight;
use crate::rootsys::{LieType, Weight};

/// A finitely supported integer combination of ℓ-weights.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LChar {
    lie_type: LieType,
    tower: TowerKey,
    terms: BTreeMap<LWeight, i64>,
}

impl LChar {
    pub fn zero(t: LieType, tower: TowerKey) -> Self {
        LChar {
            lie_type: t,
            tower,
            terms: BTreeMap::new(),
        }
    }

    /// `{identity: 1}`.
    pub fn unit(t: LieType, tower: TowerKey) -> Self {
        LChar::monomial(LWeight::identity(t, tower), 1)
    }

    pub fn monomial(w: LWeight, coeff: i64) -> Self {
        let mut out = LChar::zero(w.lie_type(), w.tower_key());
        out.add_term(w, coeff);
        out
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn tower_key(&self) -> TowerKey {
        self.tower
    }

    pub fn terms(&self) -> &BTreeMap<LWeight, i64> {
        &self.terms
    }

    pub fn get(&self, w: &LWeight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn add_term(&mut self, w: LWeight, coeff: i64) {
        if coeff == 0 {
            return;
        }
        add_entry(&mut self.terms, w, coeff);
    }

    fn check(&self, other: &LChar) -> Result<()> {
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

    /// `self += coeff · other`.
    pub fn add_scaled(&mut self, other: &LChar, coeff: i64) -> Result<()> {
        self.check(other)?;
        for (w, c) in &other.terms {
            self.add_term(w.clone(), coeff * c);
        }
        Ok(())
    }
}

fn add_entry(terms: &mut BTreeMap<LWeight, i64>, w: LWeight, coeff: i64) {
    match terms.entry(w) {
        Entry::Occupied(mut o) => {
            *o.get_mut() += coeff;
            if *o.get() == 0 {
                o.remove();
            }
        }
        Entry::Vacant(v) => {
            v.insert(coeff);
        }
    }
}

/// Convolution product in `Z[P_F]`.
pub fn mul_lchar(eta: &LChar, theta: &LChar) -> Result<LChar> {
    eta.check(theta)?;
    let mut out = LChar::zero(eta.lie_type, eta.tower);
    for (w1, c1) in &eta.terms {
        for (w2, c2) in &theta.terms {
            out.add_term(w1.mul(w2)?, c1 * c2);
        }
    }
    Ok(out)
}

/// Push-forward along `wt`.
pub fn weight_collapse(eta: &LChar) -> Character {
    let mut out = Character::zero(eta.lie_type);
    for (w, c) in &eta.terms {
        out.add_term(w.wt(), *c);
    }
    out
}

/// An integer function on conjugacy classes, keyed by class representative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassLChar {
    lie_type: LieType,
    tower: TowerKey,
    terms: BTreeMap<LWeight, i64>,
}

impl ClassLChar {
    pub fn zero(t: LieType, tower: TowerKey) -> Self {
        ClassLChar {
            lie_type: t,
            tower,
            terms: BTreeMap::new(),
        }
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn tower_key(&self) -> TowerKey {
        self.tower
    }

    /// Entries keyed by canonical class representative.
    pub fn terms(&self) -> &BTreeMap<LWeight, i64> {
        &self.terms
    }

    /// Value at the class of `w`.
    pub fn get(&self, ctx: &GaloisContext, w: &LWeight) -> Result<i64> {
        Ok(self.terms.get(&ctx.class_rep(w)?).copied().unwrap_or(0))
    }

    pub fn mass(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_rep(&mut self, rep: LWeight, coeff: i64) {
        if coeff == 0 {
            return;
        }
        add_entry(&mut self.terms, rep, coeff);
    }

    fn scaled(mut self, k: i64) -> Self {
        if k == 0 {
            self.terms.clear();
        }
        for c in self.terms.values_mut() {
            *c *= k;
        }
        self
    }

    fn add_scaled(&mut self, other: &ClassLChar, k: i64) {
        for (rep, c) in &other.terms {
            self.add_rep(rep.clone(), k * c);
        }
    }
}

fn serialize_terms<S: Serializer>(
    serializer: S,
    terms: &BTreeMap<LWeight, i64>,
    key: &'static str,
) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Entry<'a> {
        #[serde(flatten)]
        lw: BTreeMap<&'static str, &'a LWeight>,
        coeff: i64,
    }
    let mut seq = serializer.serialize_seq(Some(terms.len()))?;
    for (w, c) in terms {
        seq.serialize_element(&Entry {
            lw: BTreeMap::from([(key, w)]),
            coeff: *c,
        })?;
    }
    seq.end()
}

/// `[{"lweight": …, "coeff": n}, …]`.
impl Serialize for LChar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_terms(serializer, &self.terms, "lweight")
    }
}

/// `[{"class": …, "coeff": n}, …]`, the class given by its representative.
impl Serialize for ClassLChar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_terms(serializer, &self.terms, "class")
    }
}

/// `Ok(true)` when the engine characteristic matches the field, `Ok(false)`
/// for an allowed mismatch, an error otherwise.
pub fn characteristic_consistent(ctx: &GaloisContext, e: &CharEngine) -> Result<bool> {
    match ctx.characteristic() {
        Some(p) if p != e.characteristic() => {
            if e.allows_char_mismatch() {
                Ok(false)
            } else {
                Err(Error::CharacteristicMismatch {
                    engine: e.characteristic(),
                    field: p,
                })
            }
        }
        _ => Ok(true),
    }
}

fn check_engine_type(e: &CharEngine, t: LieType) -> Result<()> {
    if e.lie_type() == t {
        Ok(())
    } else {
        Err(Error::TypeMismatch(e.lie_type().to_string(), t.to_string()))
    }
}

/// ℓ-character of the evaluation module `V(λ)(a)`: `Σ_μ dim V(λ)_μ · ω_{μ,a}`.
pub fn eval_module_lchar(
    e: &CharEngine,
    tower: &FieldTower,
    lambda: &Weight,
    a: FieldElem,
) -> Result<LChar> {
    if a.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let t = e.lie_type();
    let ch = e.simple_char(lambda)?;
    let mut out = LChar::zero(t, tower.key());
    for (mu, m) in ch.iter() {
        out.add_term(LWeight::omega(t, tower, *mu, a)?, *m);
    }
    Ok(out)
}

/// ℓ-character of the simple module `V_F(ω)`, the product of evaluation
/// ℓ-characters over the standard factorization.
#[allow(non_snake_case)]
pub fn simple_lchar_F(e: &CharEngine, omega: &LWeight) -> Result<LChar> {
    check_engine_type(e, omega.lie_type())?;
    let tower = omega.tower();
    let mut acc = LChar::unit(omega.lie_type(), omega.tower_key());
    for (lambda, a) in omega.standard_factorization()? {
        acc = mul_lchar(&acc, &eval_module_lchar(e, &tower, &lambda, a)?)?;
    }
    Ok(acc)
}

/// `[η]`: sums of coefficients over each conjugacy class.
pub fn bracket(ctx: &GaloisContext, eta: &LChar) -> Result<ClassLChar> {
    let mut out = ClassLChar::zero(eta.lie_type, eta.tower);
    for (w, c) in &eta.terms {
        out.add_rep(ctx.class_rep(w)?, *c);
    }
    Ok(out)
}

/// `char_ℓ(V_K(ω)) = deg(ω) · [char_ℓ(V_F(ω))]`.
#[allow(non_snake_case)]
pub fn simple_lchar_K(ctx: &GaloisContext, e: &CharEngine, omega: &LWeight) -> Result<ClassLChar> {
    characteristic_consistent(ctx, e)?;
    let deg = ctx.deg(omega)? as i64;
    Ok(bracket(ctx, &simple_lchar_F(e, omega)?)?.scaled(deg))
}

/// Multiplicities of the simple g-modules in the Weyl module `W(λ)`.
pub fn weyl_gchar_multiplicities(e: &CharEngine, lambda: &Weight) -> Result<BTreeMap<Weight, u64>> {
    decompose_char(e, &weyl_module_gchar(e, lambda)?)
}

/// ℓ-character of the Weyl module `W_F(ω)`:
/// `∏_j Σ_μ m^{(j)}_μ char_ℓ(V_F(ω_{μ,a_j}))`.
#[allow(non_snake_case)]
pub fn weyl_lchar_F(e: &CharEngine, omega: &LWeight) -> Result<LChar> {
    check_engine_type(e, omega.lie_type())?;
    let tower = omega.tower();
    let t = omega.lie_type();
    let mut acc = LChar::unit(t, omega.tower_key());
    for (lambda, a) in omega.standard_factorization()? {
        let mut local = LChar::zero(t, omega.tower_key());
        for (mu, m) in weyl_gchar_multiplicities(e, &lambda)? {
            local.add_scaled(&eval_module_lchar(e, &tower, &mu, a)?, m as i64)?;
        }
        acc = mul_lchar(&acc, &local)?;
    }
    Ok(acc)
}

/// `char_ℓ(W_K(ω)) = deg(ω) · [char_ℓ(W_F(ω))]`.
#[allow(non_snake_case)]
pub fn weyl_lchar_K(ctx: &GaloisContext, e: &CharEngine, omega: &LWeight) -> Result<ClassLChar> {
    characteristic_consistent(ctx, e)?;
    let deg = ctx.deg(omega)? as i64;
    Ok(bracket(ctx, &weyl_lchar_F(e, omega)?)?.scaled(deg))
}

/// Sort key choosing the next term to strip: largest height of `wt`, then
/// largest `(wt, ℓ-weight)`. A term of maximal height is maximal for `≤`.
fn strip_key(w: &LWeight) -> (i64, Weight, &LWeight) {
    let wt = w.wt();
    (w.lie_type().root_system().scaled_height(&wt), wt, w)
}

/// Jordan-Hölder multiplicities of the simple `F`-modules in a module with
/// ℓ-character `eta`.
#[allow(non_snake_case)]
pub fn decompose_lchar_F(e: &CharEngine, eta: &LChar) -> Result<BTreeMap<LWeight, u64>> {
    check_engine_type(e, eta.lie_type)?;
    let mut rest = eta.clone();
    let mut out = BTreeMap::new();
    while let Some(top) = rest.terms.keys().max_by(|x, y| strip_key(x).cmp(&strip_key(y))) {
        let top = top.clone();
        let c = rest.get(&top);
        if c < 0 {
            return Err(Error::NotAnLCharacter(format!(
                "negative coefficient {c} at maximal ℓ-weight {top}"
            )));
        }
        if !top.is_dominant() {
            return Err(Error::NotAnLCharacter(format!(
                "maximal ℓ-weight {top} is not dominant"
            )));
        }
        rest.add_scaled(&simple_lchar_F(e, &top)?, -c)?;
        out.insert(top, c as u64);
    }
    Ok(out)
}

/// Jordan-Hölder multiplicities of the simple `K`-modules, keyed by class
/// representative, recovered from a class-level ℓ-character by the same
/// triangular procedure using `char_ℓ(V_K(ω))`.
#[allow(non_snake_case)]
pub fn decompose_lchar_K(
    ctx: &GaloisContext,
    e: &CharEngine,
    chi: &ClassLChar,
) -> Result<BTreeMap<LWeight, u64>> {
    check_engine_type(e, chi.lie_type)?;
    let mut rest = chi.clone();
    let mut out = BTreeMap::new();
    while let Some(top) = rest.terms.keys().max_by(|x, y| strip_key(x).cmp(&strip_key(y))) {
        let top = top.clone();
        let c = rest.terms[&top];
        let deg = ctx.deg(&top)? as i64;
        if c < 0 || !top.is_dominant() || c % deg != 0 {
            return Err(Error::NotAnLCharacter(format!(
                "class of {top} has coefficient {c}, not a nonnegative multiple of deg {deg}"
            )));
        }
        let m = c / deg;
        rest.add_scaled(&simple_lchar_K(ctx, e, &top)?, -m);
        out.insert(top, m as u64);
    }
    Ok(out)
}

/// `char_ℓ(V_K(ϖ) ⊗ V_K(π)) = [indeg(ϖ) indeg(π) Σ_{ϖ′∈[ϖ]} Σ_{π′∈[π]}
/// char_ℓ(V_F(ϖ′)) char_ℓ(V_F(π′))]`. The double sum runs in parallel.
#[allow(non_snake_case)]
pub fn tp_lchar_K(
    ctx: &GaloisContext,
    e: &CharEngine,
    varpi: &LWeight,
    pi: &LWeight,
) -> Result<ClassLChar> {
    characteristic_consistent(ctx, e)?;
    let scale = (ctx.indeg(varpi)? * ctx.indeg(pi)?) as i64;
    let sum = orbit_pair_products(ctx, e, varpi, pi)?;
    Ok(bracket(ctx, &sum)?.scaled(scale))
}

/// `Σ_{ϖ′∈[ϖ]} Σ_{π′∈[π]} char_ℓ(V_F(ϖ′)) char_ℓ(V_F(π′))`.
pub(crate) fn orbit_pair_products(
    ctx: &GaloisContext,
    e: &CharEngine,
    varpi: &LWeight,
    pi: &LWeight,
) -> Result<LChar> {
    let a = ctx.orbit(varpi)?;
    let b = ctx.orbit(pi)?;
    let left: Vec<LChar> = a
        .members()
        .par_iter()
        .map(|w| simple_lchar_F(e, w))
        .collect::<Result<_>>()?;
    let right: Vec<LChar> = b
        .members()
        .par_iter()
        .map(|w| simple_lchar_F(e, w))
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..left.len())
        .flat_map(|i| (0..right.len()).map(move |j| (i, j)))
        .collect();
    let products: Vec<LChar> = pairs
        .par_iter()
        .map(|&(i, j)| mul_lchar(&left[i], &right[j]))
        .collect::<Result<_>>()?;
    let mut sum = LChar::zero(varpi.lie_type(), varpi.tower_key());
    for p in &products {
        sum.add_scaled(p, 1)?;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn a1() -> LieType {
        "A1".parse().unwrap()
    }

    fn f4() -> Arc<FieldTower> {
        FieldTower::new(2, 1, 2).unwrap()
    }

    fn om(t: &FieldTower, k: i32, a: FieldElem) -> LWeight {
        LWeight::omega(a1(), t, Weight::new(&[k]), a).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let t = f4();
        let a = t.generator();
        let e0 = CharEngine::char0(a1());
        let triv = eval_module_lchar(&e0, &t, &Weight::new(&[0]), a).unwrap();
        assert_eq!(triv, LChar::unit(a1(), t.key()));
        let v1 = eval_module_lchar(&e0, &t, &Weight::new(&[1]), a).unwrap();
        assert_eq!(v1.terms().len(), 2);
        assert_eq!(v1.get(&om(&t, 1, a)), 1);
        assert_eq!(v1.get(&om(&t, -1, a)), 1);
        let e2 = CharEngine::new(a1(), 2).unwrap();
        let l2 = eval_module_lchar(&e2, &t, &Weight::new(&[2]), a).unwrap();
        assert_eq!(l2.get(&om(&t, 2, a)), 1);
        assert_eq!(l2.get(&om(&t, -2, a)), 1);
        assert_eq!(l2.len(), 2);
        assert!(eval_module_lchar(&e0, &t, &Weight::new(&[1]), t.zero()).is_err());
    }

    #[test]
    fn simple_and_collapse() {
        let t = f4();
        let a = t.generator();
        let b = t.one();
        let e0 = CharEngine::char0(a1());
        let w = om(&t, 1, a).mul(&om(&t, 1, b)).unwrap();
        let s = simple_lchar_F(&e0, &w).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.terms().values().all(|&c| c == 1));
        assert_eq!(s.get(&w), 1);
        let collapsed = weight_collapse(&simple_lchar_F(&e0, &om(&t, 1, a)).unwrap());
        assert_eq!(collapsed, *e0.simple_char(&Weight::new(&[1])).unwrap());
    }

    #[test]
    fn bracket_example() {
        let t = f4();
        let ctx = GaloisContext::finite_field(t.clone());
        let a = t.generator();
        let a2 = t.mul(a, a);
        let mut eta = LChar::monomial(om(&t, 1, a), 1);
        eta.add_term(om(&t, 1, a2), 3);
        let br = bracket(&ctx, &eta).unwrap();
        assert_eq!(br.len(), 1);
        assert_eq!(br.get(&ctx, &om(&t, 1, a2)).unwrap(), 4);
    }

    #[test]
    fn simple_k_example() {
        let t = f4();
        let ctx = GaloisContext::finite_field(t.clone());
        let a = t.generator();
        let e2 = CharEngine::new(a1(), 2).unwrap();
        let k = simple_lchar_K(&ctx, &e2, &om(&t, 1, a)).unwrap();
        assert_eq!(k.get(&ctx, &om(&t, 1, a)).unwrap(), 2);
        assert_eq!(k.get(&ctx, &om(&t, -1, a)).unwrap(), 2);
        assert_eq!(k.mass(), 4);
        let e0 = CharEngine::char0(a1());
        assert!(matches!(
            simple_lchar_K(&ctx, &e0, &om(&t, 1, a)),
            Err(Error::CharacteristicMismatch { engine: 0, field: 2 })
        ));
        let e0 = CharEngine::char0(a1()).allowing_char_mismatch(true);
        assert!(simple_lchar_K(&ctx, &e0, &om(&t, 1, a)).is_ok());
    }

    #[test]
    fn weyl_examples() {
        let t = f4();
        let a = t.generator();
        let e0 = CharEngine::char0(a1());
        let w1 = om(&t, 1, a);
        assert_eq!(weyl_lchar_F(&e0, &w1).unwrap(), simple_lchar_F(&e0, &w1).unwrap());
        let w2 = om(&t, 2, a);
        let weyl = weyl_lchar_F(&e0, &w2).unwrap();
        assert_eq!(weyl.mass(), 4);
        let d = decompose_lchar_F(&e0, &weyl).unwrap();
        let id = LWeight::identity(a1(), t.key());
        assert_eq!(d, BTreeMap::from([(w2.clone(), 1), (id.clone(), 1)]));
        let e2 = CharEngine::new(a1(), 2).unwrap();
        let weyl2 = weyl_lchar_F(&e2, &w2).unwrap();
        assert_eq!(weyl2.mass(), 4);
        assert_eq!(
            decompose_lchar_F(&e2, &weyl2).unwrap(),
            BTreeMap::from([(w2, 1), (id, 2)])
        );
    }

    #[test]
    fn decomposition_examples() {
        let t = f4();
        let a = t.generator();
        let b = t.one();
        let e0 = CharEngine::char0(a1());
        let va = simple_lchar_F(&e0, &om(&t, 1, a)).unwrap();
        let vb = simple_lchar_F(&e0, &om(&t, 1, b)).unwrap();
        let id = LWeight::identity(a1(), t.key());
        assert_eq!(
            decompose_lchar_F(&e0, &mul_lchar(&va, &va).unwrap()).unwrap(),
            BTreeMap::from([(om(&t, 2, a), 1), (id, 1)])
        );
        let ab = om(&t, 1, a).mul(&om(&t, 1, b)).unwrap();
        assert_eq!(
            decompose_lchar_F(&e0, &mul_lchar(&va, &vb).unwrap()).unwrap(),
            BTreeMap::from([(ab, 1)])
        );
        let bad = LChar::monomial(om(&t, -1, a), 1);
        assert!(matches!(
            decompose_lchar_F(&e0, &bad),
            Err(Error::NotAnLCharacter(_))
        ));
        let mut neg = va.clone();
        neg.add_scaled(&va, -2).unwrap();
        assert!(matches!(
            decompose_lchar_F(&e0, &neg),
            Err(Error::NotAnLCharacter(_))
        ));
    }

    #[test]
    fn tensor_k_examples() {
        let t = f4();
        let ctx = GaloisContext::finite_field(t.clone());
        let a = t.generator();
        let a2 = t.mul(a, a);
        let e2 = CharEngine::new(a1(), 2).unwrap();
        let tp = tp_lchar_K(&ctx, &e2, &om(&t, 1, a), &om(&t, 1, a2)).unwrap();
        assert_eq!(tp.mass(), 16);
        let d = decompose_lchar_K(&ctx, &e2, &tp).unwrap();
        let prod = om(&t, 1, a).mul(&om(&t, 1, a2)).unwrap();
        let id = LWeight::identity(a1(), t.key());
        assert_eq!(d[&ctx.class_rep(&prod).unwrap()], 2);
        assert_eq!(d[&ctx.class_rep(&om(&t, 2, a)).unwrap()], 1);
        assert_eq!(d[&id], 4);
        let synth = GaloisContext::synthetic(t.clone(), 1)
            .unwrap()
            .with_indeg(&om(&t, 1, a), 2)
            .unwrap();
        let tp2 = tp_lchar_K(&synth, &e2, &om(&t, 1, a), &om(&t, 1, a2)).unwrap();
        for (rep, c) in tp.terms() {
            assert_eq!(tp2.terms()[rep], 4 * c);
        }
    }

    #[test]
    fn json_shapes() {
        let t = f4();
        let e0 = CharEngine::char0(a1());
        let v = simple_lchar_F(&e0, &om(&t, 1, t.one())).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.starts_with(r#"[{"lweight":{"type":"A1","support":[{"param":"1","weight":[-1]}]},"coeff":1}"#), "{s}");
    }
}
