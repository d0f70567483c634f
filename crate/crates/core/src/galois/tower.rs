use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::fp_poly;
use crate::error::{Error, Result};

/// Largest supported computation field.
pub const MAX_FIELD_SIZE: u64 = 1 << 24;
const MAX_TABLE_SIZE: u32 = 1 << 20;

/// Identifies a tower `F_p ⊆ F_q ⊆ F_{q^N}` with `q = p^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TowerKey {
    pub p: u32,
    pub k: u32,
    pub ambient: u32,
}

impl fmt::Display for TowerKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{} (ambient {})", self.p, self.k, self.ambient)
    }
}

/// An element of `F_{q^N}`, packed as `Σ c_i p^i` where `c_i` is the
/// coefficient of `g^i` in the reduced representative. Ordering compares
/// coefficient vectors from the leading coefficient down.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// The computation field `F_{q^N} = F_p[g]/(modulus)` with `K = F_q` marked.
pub struct FieldTower {
    key: TowerKey,
    q: u64,
    degree: u32,
    size: u32,
    modulus: Vec<u32>,
    tables: OnceLock<Option<LogTables>>,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTower")
            .field("key", &self.key)
            .field("modulus", &self.modulus)
            .finish()
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d: &u32| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Lexicographically smallest monic irreducible polynomial of degree `n`
/// over `F_p` with nonzero constant term, so that `g` is a unit.
fn smallest_irreducible(p: u32, n: u32) -> Vec<u32> {
    let count = (p as u64).pow(n);
    for code in 0..count {
        if code % p as u64 == 0 {
            continue;
        }
        let mut poly: Vec<u32> = (0..n)
            .scan(code, |c, _| {
                let d = (*c % p as u64) as u32;
                *c /= p as u64;
                Some(d)
            })
            .collect();
        poly.push(1);
        if fp_poly::is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

static TOWERS: OnceLock<Mutex<HashMap<TowerKey, Arc<FieldTower>>>> = OnceLock::new();

impl FieldTower {
    /// The tower `F_{p^k} ⊆ F_{p^{k·ambient}}`. Towers are interned, so
    /// repeated calls return the same instance.
    pub fn new(p: u32, k: u32, ambient: u32) -> Result<Arc<FieldTower>> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if k == 0 || ambient == 0 {
            return Err(Error::InvalidField("field exponents must be positive".into()));
        }
        let degree = k as u64 * ambient as u64;
        let size = (p as u128).checked_pow(degree as u32).unwrap_or(u128::MAX);
        if degree > 64 || size > MAX_FIELD_SIZE as u128 {
            return Err(Error::FieldTooLarge(size));
        }
        let key = TowerKey { p, k, ambient };
        let towers = TOWERS.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(t) = towers.lock().expect("tower cache poisoned").get(&key) {
            return Ok(t.clone());
        }
        let degree = degree as u32;
        let tower = Arc::new(FieldTower {
            key,
            q: (p as u64).pow(k),
            degree,
            size: size as u32,
            modulus: smallest_irreducible(p, degree),
            tables: OnceLock::new(),
        });
        towers
            .lock()
            .expect("tower cache poisoned")
            .insert(key, tower.clone());
        Ok(tower)
    }

    pub fn from_key(key: TowerKey) -> Result<Arc<FieldTower>> {
        FieldTower::new(key.p, key.k, key.ambient)
    }

    pub fn key(&self) -> TowerKey {
        self.key
    }

    pub fn p(&self) -> u32 {
        self.key.p
    }

    pub fn k(&self) -> u32 {
        self.key.k
    }

    pub fn ambient(&self) -> u32 {
        self.key.ambient
    }

    /// `q = p^k`, the order of the base field `K`.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// `[F_{q^N} : F_p]`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `q^N`.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// Coefficients of the defining polynomial, low to high.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// The class of `g`, a root of the modulus.
    pub fn generator(&self) -> FieldElem {
        if self.degree == 1 {
            self.from_int(-(self.modulus[0] as i64))
        } else {
            FieldElem(self.key.p)
        }
    }

    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.key.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElem {
        let reduced = fp_poly::rem(
            &coeffs.iter().map(|c| c % self.key.p).collect::<Vec<_>>(),
            &self.modulus,
            self.key.p,
        );
        self.pack(&reduced)
    }

    pub fn coeffs(&self, x: FieldElem) -> Vec<u32> {
        let p = self.key.p;
        let mut v = x.0;
        let mut out = Vec::with_capacity(self.degree as usize);
        for _ in 0..self.degree {
            out.push(v % p);
            v /= p;
        }
        out
    }

    fn pack(&self, coeffs: &[u32]) -> FieldElem {
        let p = self.key.p;
        FieldElem(coeffs.iter().rev().fold(0, |acc, &c| acc * p + c))
    }

    /// All nonzero elements, in increasing order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElem> {
        (1..self.size).map(FieldElem)
    }

    pub fn add(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        let p = self.key.p;
        if p == 2 {
            return FieldElem(x.0 ^ y.0);
        }
        let (mut a, mut b) = (x.0, y.0);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        FieldElem(out)
    }

    pub fn neg(&self, x: FieldElem) -> FieldElem {
        let p = self.key.p;
        if p == 2 {
            return x;
        }
        let mut a = x.0;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        FieldElem(out)
    }

    pub fn sub(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        self.add(x, self.neg(y))
    }

    fn tables(&self) -> Option<&LogTables> {
        self.tables
            .get_or_init(|| (self.size <= MAX_TABLE_SIZE).then(|| self.build_tables()))
            .as_ref()
    }

    fn build_tables(&self) -> LogTables {
        let order = (self.size - 1) as u64;
        let factors = prime_factors(order);
        let primitive = (1..self.size)
            .map(FieldElem)
            .find(|&x| {
                factors
                    .iter()
                    .all(|&r| self.pow_slow(x, order / r) != FieldElem::ONE)
            })
            .expect("multiplicative group is cyclic");
        let n = order as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; self.size as usize];
        let mut cur = FieldElem::ONE;
        for i in 0..n {
            exp[i] = cur.0;
            exp[i + n] = cur.0;
            log[cur.0 as usize] = i as u32;
            cur = self.mul_slow(cur, primitive);
        }
        LogTables { exp, log }
    }

    fn mul_slow(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        let prod = fp_poly::mulmod(&self.coeffs(x), &self.coeffs(y), &self.modulus, self.key.p);
        self.pack(&prod)
    }

    fn pow_slow(&self, x: FieldElem, mut e: u64) -> FieldElem {
        let mut acc = FieldElem::ONE;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn mul(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        if x.is_zero() || y.is_zero() {
            return FieldElem::ZERO;
        }
        match self.tables() {
            Some(t) => {
                FieldElem(t.exp[(t.log[x.0 as usize] + t.log[y.0 as usize]) as usize])
            }
            None => self.mul_slow(x, y),
        }
    }

    pub fn pow(&self, x: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        if x.is_zero() {
            return FieldElem::ZERO;
        }
        match self.tables() {
            Some(t) => {
                let order = (self.size - 1) as u64;
                let l = t.log[x.0 as usize] as u64 * (e % order) % order;
                FieldElem(t.exp[l as usize])
            }
            None => self.pow_slow(x, e),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: FieldElem) -> Option<FieldElem> {
        if x.is_zero() {
            return None;
        }
        Some(self.pow(x, (self.size - 2) as u64))
    }

    /// `x ↦ x^q`, the generator of `Gal(F_{q^N}/F_q)`.
    pub fn frobenius(&self, x: FieldElem) -> FieldElem {
        self.pow(x, self.q)
    }

    /// `x ↦ x^p`.
    pub fn absolute_frobenius(&self, x: FieldElem) -> FieldElem {
        self.pow(x, self.key.p as u64)
    }

    /// Whether `x` lies in the base field `K = F_q`.
    pub fn in_base_field(&self, x: FieldElem) -> bool {
        self.frobenius(x) == x
    }

    /// `[F_q(x) : F_q]`; the Frobenius orbit size of `x`.
    pub fn degree_over_base(&self, x: FieldElem) -> u32 {
        let mut y = self.frobenius(x);
        let mut d = 1;
        while y != x {
            y = self.frobenius(y);
            d += 1;
        }
        d
    }

    /// `[F_p(x) : F_p]`.
    pub fn degree_over_prime(&self, x: FieldElem) -> u32 {
        let mut y = self.absolute_frobenius(x);
        let mut d = 1;
        while y != x {
            y = self.absolute_frobenius(y);
            d += 1;
        }
        d
    }

    /// Polynomial notation in the generator `g`, e.g. `g^2+2*g+1`.
    pub fn format(&self, x: FieldElem) -> String {
        if x.is_zero() {
            return "0".into();
        }
        if self.degree == 1 {
            return x.0.to_string();
        }
        let coeffs = self.coeffs(x);
        let mut parts = Vec::new();
        for (i, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "g".into(),
                _ => format!("g^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => var,
                _ => format!("{c}*{var}"),
            });
        }
        parts.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli() {
        assert_eq!(FieldTower::new(2, 1, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldTower::new(2, 1, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FieldTower::new(2, 1, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(FieldTower::new(3, 1, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FieldTower::new(2, 1, 1).unwrap().modulus(), &[1, 1]);
        assert_eq!(FieldTower::new(2, 2, 1).unwrap().modulus(), &[1, 1, 1]);
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(matches!(FieldTower::new(4, 1, 1), Err(Error::InvalidField(_))));
        assert!(matches!(FieldTower::new(2, 0, 1), Err(Error::InvalidField(_))));
        assert!(matches!(FieldTower::new(2, 5, 5), Err(Error::FieldTooLarge(_))));
        assert!(FieldTower::new(2, 4, 6).is_ok());
    }

    #[test]
    fn f4_arithmetic() {
        let t = FieldTower::new(2, 1, 2).unwrap();
        let a = t.generator();
        let a1 = t.add(a, t.one());
        assert_eq!(t.mul(a, a), a1);
        assert_eq!(t.frobenius(a), a1);
        assert_eq!(t.frobenius(t.frobenius(a)), a);
        assert_eq!(t.mul(a, a1), t.one());
        assert_eq!(t.format(a1), "g+1");
        assert_eq!(t.degree_over_base(a), 2);
        assert_eq!(t.degree_over_base(t.one()), 1);
    }

    #[test]
    fn field_axioms_f27_and_f9_over_f3() {
        for t in [FieldTower::new(3, 1, 3).unwrap(), FieldTower::new(3, 2, 1).unwrap()] {
            for x in t.nonzero_elements() {
                assert_eq!(t.mul(x, t.inv(x).unwrap()), t.one());
                assert_eq!(t.add(x, t.neg(x)), t.zero());
                assert_eq!(t.pow(x, t.size() as u64 - 1), t.one());
                assert_eq!(t.mul_slow(x, t.generator()), t.mul(x, t.generator()));
            }
        }
    }

    #[test]
    fn frobenius_fixes_exactly_base_field() {
        let t = FieldTower::new(2, 2, 3).unwrap();
        let fixed = t.nonzero_elements().filter(|&x| t.in_base_field(x)).count();
        assert_eq!(fixed, 3);
        for x in t.nonzero_elements().take(200) {
            let mut y = x;
            for _ in 0..t.ambient() {
                y = t.frobenius(y);
            }
            assert_eq!(y, x);
            assert_eq!(t.ambient() % t.degree_over_base(x), 0);
        }
    }

    #[test]
    fn prime_field_generator_is_a_root() {
        let t = FieldTower::new(3, 1, 1).unwrap();
        // modulus x+1, so g = -1 = 2
        assert_eq!(t.generator(), FieldElem(2));
        assert_eq!(t.format(t.generator()), "2");
    }

    #[test]
    fn large_field_uses_polynomial_arithmetic() {
        let t = FieldTower::new(2, 1, 21).unwrap();
        let g = t.generator();
        let x = t.pow(g, 12345);
        assert_eq!(t.mul(x, t.inv(x).unwrap()), t.one());
        assert_eq!(t.pow(g, t.size() as u64 - 1), t.one());
    }
}
