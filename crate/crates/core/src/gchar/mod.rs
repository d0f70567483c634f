//! Characters of finite-dimensional modules for the hyperalgebra of `g`.
//!
//! Characteristic zero uses Freudenthal's recursion for every type. In
//! characteristic `p` the sl₂ simples come from Steinberg's tensor product
//! theorem; other types take a user-supplied table of simple characters.

mod cache;
mod freudenthal;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootsys::{Family, LieType, RootSystem, Weight};

pub use cache::{DiskCache, CACHE_ENV};
pub use freudenthal::weyl_dimension;

/// An element of `Z[P]`, stored as a sparse map with no zero entries.
#[derive(Clone, PartialEq, Eq)]
pub struct Character {
    lie_type: LieType,
    terms: BTreeMap<Weight, i64>,
}

impl Character {
    pub fn zero(t: LieType) -> Self {
        Character {
            lie_type: t,
            terms: BTreeMap::new(),
        }
    }

    /// `e^0`, the character of the trivial module.
    pub fn unit(t: LieType) -> Self {
        Character::monomial(t, Weight::zero(t.rank()), 1)
    }

    pub fn monomial(t: LieType, w: Weight, coeff: i64) -> Self {
        let mut ch = Character::zero(t);
        ch.add_term(w, coeff);
        ch
    }

    pub fn from_terms(t: LieType, terms: impl IntoIterator<Item = (Weight, i64)>) -> Result<Self> {
        let mut ch = Character::zero(t);
        for (w, c) in terms {
            w.check_rank(t.rank())?;
            ch.add_term(w, c);
        }
        Ok(ch)
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn terms(&self) -> &BTreeMap<Weight, i64> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &i64)> {
        self.terms.iter()
    }

    pub fn get(&self, w: &Weight) -> i64 {
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

    /// Sum of all coefficients; the dimension of an actual module.
    pub fn dim(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn add_term(&mut self, w: Weight, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(w).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&w);
        }
    }

    fn check_type(&self, other: &Character) -> Result<()> {
        if self.lie_type == other.lie_type {
            Ok(())
        } else {
            Err(Error::TypeMismatch(
                self.lie_type.to_string(),
                other.lie_type.to_string(),
            ))
        }
    }

    /// `self += coeff · other`.
    pub fn add_scaled(&mut self, other: &Character, coeff: i64) -> Result<()> {
        self.check_type(other)?;
        for (w, c) in &other.terms {
            self.add_term(*w, coeff * c);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Character) -> Result<Character> {
        self.check_type(other)?;
        let mut out = Character::zero(self.lie_type);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(*w1 + *w2, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Character {
        let mut acc = Character::unit(self.lie_type);
        for _ in 0..n {
            acc = acc.mul(self).expect("same type");
        }
        acc
    }

    /// The Frobenius twist `e^μ ↦ e^{kμ}`.
    pub fn twist(&self, k: i32) -> Character {
        let mut out = Character::zero(self.lie_type);
        for (w, c) in &self.terms {
            out.add_term(w.scale(k), *c);
        }
        out
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{", self.lie_type)?;
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}:{c}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Serialize, Deserialize)]
struct CharacterJson {
    #[serde(rename = "type")]
    lie_type: LieType,
    #[serde(rename = "char")]
    terms: BTreeMap<String, i64>,
}

impl Serialize for Character {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CharacterJson {
            lie_type: self.lie_type,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.to_string(), *c))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Character {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = CharacterJson::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for (k, c) in raw.terms {
            let w: Weight = k.parse().map_err(serde::de::Error::custom)?;
            terms.push((w, c));
        }
        Character::from_terms(raw.lie_type, terms).map_err(serde::de::Error::custom)
    }
}

fn check_dominant(t: LieType, lambda: &Weight) -> Result<()> {
    lambda.check_rank(t.rank())?;
    if lambda.is_dominant() {
        Ok(())
    } else {
        Err(Error::NonDominant(lambda.to_string()))
    }
}

/// Character of the simple module `V(λ)` in characteristic zero.
pub fn simple_char_char0(t: LieType, lambda: &Weight) -> Result<Character> {
    check_dominant(t, lambda)?;
    let rs = t.root_system();
    let dominant = freudenthal::dominant_multiplicities(&rs, lambda);
    let mut ch = Character::zero(t);
    for (mu, m) in dominant {
        for w in rs.orbit(&mu) {
            ch.add_term(w, m);
        }
    }
    Ok(ch)
}

/// Dimension of `V(λ)` in characteristic zero, from Freudenthal multiplicities
/// and Weyl group orbit sizes (no orbit enumeration).
pub fn freudenthal_dimension(t: LieType, lambda: &Weight) -> Result<u128> {
    check_dominant(t, lambda)?;
    let rs = t.root_system();
    Ok(freudenthal::dominant_multiplicities(&rs, lambda)
        .iter()
        .map(|(mu, &m)| m as u128 * rs.orbit_size(mu))
        .sum())
}

/// Character of the simple sl₂-module `L(m)` in characteristic `p`, via
/// Steinberg's tensor product theorem.
pub fn simple_char_sl2_modp(m: u64, p: u64) -> Character {
    let t = LieType::new(Family::A, 1).expect("A1");
    let mut ch = Character::unit(t);
    let mut rest = m;
    let mut scale: i32 = 1;
    while rest > 0 {
        let digit = (rest % p) as i32;
        let mut restricted = Character::zero(t);
        for j in 0..=digit {
            restricted.add_term(Weight::new(&[digit - 2 * j]), 1);
        }
        ch = ch.mul(&restricted.twist(scale)).expect("same type");
        rest /= p;
        if rest > 0 {
            scale = scale
                .checked_mul(p as i32)
                .expect("sl2 highest weight too large");
        }
    }
    ch
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

#[derive(Clone, Debug)]
enum Provider {
    Freudenthal,
    SteinbergSl2 { p: u64 },
    Table(BTreeMap<Weight, Character>),
}

/// Source of simple characters for one type and characteristic.
///
/// Engines are shared read-only; simple characters are memoized behind a
/// lock and optionally persisted to a [`DiskCache`].
#[derive(Debug)]
pub struct CharEngine {
    lie_type: LieType,
    characteristic: u64,
    provider: Provider,
    fundamentals: Option<Vec<Character>>,
    allow_char_mismatch: bool,
    disk: Option<DiskCache>,
    memo: Mutex<HashMap<Weight, Arc<Character>>>,
}

impl CharEngine {
    /// Characteristic-zero engine (Freudenthal).
    pub fn char0(t: LieType) -> Self {
        CharEngine::with_provider(t, 0, Provider::Freudenthal)
    }

    /// Engine for characteristic `characteristic` (0 or a prime). Outside
    /// characteristic zero and type A1 the simple characters must be supplied
    /// with [`CharEngine::with_table`].
    pub fn new(t: LieType, characteristic: u64) -> Result<Self> {
        if characteristic == 0 {
            return Ok(CharEngine::char0(t));
        }
        if !is_prime(characteristic) {
            return Err(Error::InvalidField(format!(
                "characteristic {characteristic} is not prime"
            )));
        }
        let provider = if t.family() == Family::A && t.rank() == 1 {
            Provider::SteinbergSl2 { p: characteristic }
        } else {
            Provider::Table(BTreeMap::new())
        };
        Ok(CharEngine::with_provider(t, characteristic, provider))
    }

    /// Engine backed by an explicit table of simple characters, each keyed by
    /// its highest weight.
    pub fn with_table(
        t: LieType,
        characteristic: u64,
        table: impl IntoIterator<Item = Character>,
    ) -> Result<Self> {
        let rs = t.root_system();
        let mut map = BTreeMap::new();
        for ch in table {
            if ch.lie_type() != t {
                return Err(Error::TypeMismatch(t.to_string(), ch.lie_type().to_string()));
            }
            let top = highest_weight(&rs, &ch).ok_or_else(|| {
                Error::NotAModuleCharacter("table entry has no unique maximal weight".into())
            })?;
            if ch.get(&top) != 1 || !top.is_dominant() {
                return Err(Error::NotAModuleCharacter(format!(
                    "table entry with top weight {top} is not a simple character"
                )));
            }
            map.insert(top, ch);
        }
        Ok(CharEngine::with_provider(t, characteristic, Provider::Table(map)))
    }

    fn with_provider(t: LieType, characteristic: u64, provider: Provider) -> Self {
        CharEngine {
            lie_type: t,
            characteristic,
            provider,
            fundamentals: None,
            allow_char_mismatch: false,
            disk: None,
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// Supplies the fundamental-module characters used for Weyl modules of
    /// types other than A. Entry `i` is the character for `ω_i`.
    pub fn with_fundamentals(mut self, fundamentals: Vec<Character>) -> Result<Self> {
        if fundamentals.len() != self.lie_type.rank() {
            return Err(Error::RankMismatch {
                expected: self.lie_type.rank(),
                got: fundamentals.len(),
            });
        }
        for (i, ch) in fundamentals.iter().enumerate() {
            if ch.lie_type() != self.lie_type
                || ch.get(&Weight::fundamental(self.lie_type.rank(), i)) != 1
            {
                return Err(Error::NotAModuleCharacter(format!(
                    "fundamental table entry {i} has the wrong top weight"
                )));
            }
        }
        self.fundamentals = Some(fundamentals);
        Ok(self)
    }

    pub fn with_disk_cache(mut self, cache: DiskCache) -> Self {
        self.disk = Some(cache);
        self
    }

    pub fn allowing_char_mismatch(mut self, allow: bool) -> Self {
        self.allow_char_mismatch = allow;
        self
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn allows_char_mismatch(&self) -> bool {
        self.allow_char_mismatch
    }

    pub fn root_system(&self) -> Arc<RootSystem> {
        self.lie_type.root_system()
    }

    /// The character of the simple module with highest weight `λ`.
    pub fn simple_char(&self, lambda: &Weight) -> Result<Arc<Character>> {
        check_dominant(self.lie_type, lambda)?;
        if let Some(ch) = self.memo.lock().expect("memo poisoned").get(lambda) {
            return Ok(ch.clone());
        }
        let ch = Arc::new(self.compute_simple(lambda)?);
        self.memo
            .lock()
            .expect("memo poisoned")
            .insert(*lambda, ch.clone());
        Ok(ch)
    }

    fn compute_simple(&self, lambda: &Weight) -> Result<Character> {
        if lambda.is_zero() {
            return Ok(Character::unit(self.lie_type));
        }
        match &self.provider {
            Provider::Table(map) => map.get(lambda).cloned().ok_or_else(|| Error::MissingCharacter {
                lie_type: self.lie_type.to_string(),
                characteristic: self.characteristic,
                weight: lambda.to_string(),
            }),
            Provider::SteinbergSl2 { p } => Ok(simple_char_sl2_modp(lambda.get(0) as u64, *p)),
            Provider::Freudenthal => {
                if let Some(ch) = self
                    .disk
                    .as_ref()
                    .and_then(|d| d.load(self.lie_type, self.characteristic, lambda))
                {
                    return Ok(ch);
                }
                let ch = simple_char_char0(self.lie_type, lambda)?;
                if let Some(d) = &self.disk {
                    d.store(self.characteristic, lambda, &ch);
                }
                Ok(ch)
            }
        }
    }

    /// Dimension of the simple module `V(λ)`.
    pub fn simple_dim(&self, lambda: &Weight) -> Result<i64> {
        Ok(self.simple_char(lambda)?.dim())
    }
}

/// The unique maximal weight of `ch` in dominance order, if there is one.
fn highest_weight(rs: &RootSystem, ch: &Character) -> Option<Weight> {
    let maximal = maximal_weights(rs, ch);
    (maximal.len() == 1).then(|| maximal[0])
}

/// Support elements not strictly below any other support element.
fn maximal_weights(rs: &RootSystem, ch: &Character) -> Vec<Weight> {
    let mut by_height: Vec<(i64, Weight)> = ch
        .terms
        .keys()
        .map(|w| (rs.scaled_height(w), *w))
        .collect();
    by_height.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)));
    let mut out = Vec::new();
    for (idx, (h, w)) in by_height.iter().enumerate() {
        let dominated = by_height[..idx]
            .iter()
            .any(|(h2, w2)| h2 > h && rs.dominance_leq(w, w2));
        if !dominated {
            out.push(*w);
        }
    }
    out
}

/// Jordan-Hölder multiplicities of the simple modules in a module with
/// character `chi`.
///
/// Repeatedly takes the lexicographically largest maximal weight of the
/// remainder, records its coefficient and subtracts that many copies of the
/// simple character.
pub fn decompose_char(e: &CharEngine, chi: &Character) -> Result<BTreeMap<Weight, u64>> {
    if chi.lie_type() != e.lie_type() {
        return Err(Error::TypeMismatch(
            e.lie_type().to_string(),
            chi.lie_type().to_string(),
        ));
    }
    let rs = e.root_system();
    let mut rest = chi.clone();
    let mut out = BTreeMap::new();
    while !rest.is_zero() {
        let top = maximal_weights(&rs, &rest)
            .into_iter()
            .max()
            .expect("nonempty support");
        let coeff = rest.get(&top);
        if coeff < 0 {
            return Err(Error::NotAModuleCharacter(format!(
                "negative coefficient {coeff} at maximal weight {top}"
            )));
        }
        if !top.is_dominant() {
            return Err(Error::NotAModuleCharacter(format!(
                "maximal weight {top} is not dominant"
            )));
        }
        let simple = e.simple_char(&top)?;
        rest.add_scaled(&simple, -coeff)?;
        out.insert(top, coeff as u64);
    }
    Ok(out)
}

/// Multiplicities of the simple constituents of `V(λ) ⊗ V(μ)`.
pub fn tensor_mult_g(e: &CharEngine, lambda: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, u64>> {
    let product = e.simple_char(lambda)?.mul(&*e.simple_char(mu)?)?;
    decompose_char(e, &product)
}

/// The g-character of the loop Weyl module with highest weight `λ` at a
/// single spectral parameter: the product of the fundamental characters
/// `∏_i char(V(ω_i))^{λ(h_i)}`. Type A uses the characteristic-zero
/// fundamental characters; other types need a table.
pub fn weyl_module_gchar(e: &CharEngine, lambda: &Weight) -> Result<Character> {
    let t = e.lie_type();
    check_dominant(t, lambda)?;
    let fundamentals: Vec<Character> = match (&e.fundamentals, t.family()) {
        (Some(table), _) => table.clone(),
        (None, Family::A) => (0..t.rank())
            .map(|i| simple_char_char0(t, &Weight::fundamental(t.rank(), i)))
            .collect::<Result<_>>()?,
        (None, _) => {
            return Err(Error::UnsupportedType(format!(
                "Weyl module characters for {t} need a fundamental character table"
            )))
        }
    };
    let mut acc = Character::unit(t);
    for (i, fund) in fundamentals.iter().enumerate() {
        let k = lambda.get(i);
        if k > 0 {
            acc = acc.mul(&fund.pow(k as u32))?;
        }
    }
    Ok(acc)
}
