use std::collections::BTreeMap;
use std::sync::Arc;

use super::tower::FieldTower;
use crate::error::{Error, Result};
use crate::lweight::LWeight;

/// One Galois orbit of ℓ-weights, members sorted; the first is the
/// canonical representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    members: Vec<LWeight>,
}

impl ConjClass {
    pub fn members(&self) -> &[LWeight] {
        &self.members
    }

    pub fn rep(&self) -> &LWeight {
        &self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, w: &LWeight) -> bool {
        self.members.binary_search(w).is_ok()
    }
}

/// Source of conjugacy classes, degrees and inseparability degrees.
///
/// `FiniteField` is the genuine situation `K = F_q ⊆ F_{q^N}`. `Synthetic`
/// keeps the Frobenius orbits of a tower but attaches arbitrary
/// inseparability degrees to classes; it only exists to exercise formulas
/// whose indeg factors are invisible over perfect fields, and every result
/// computed with it is marked synthetic.
#[derive(Clone, Debug)]
pub enum GaloisContext {
    FiniteField {
        tower: Arc<FieldTower>,
    },
    Synthetic {
        tower: Arc<FieldTower>,
        indeg: BTreeMap<LWeight, u64>,
        default_indeg: u64,
    },
}

impl GaloisContext {
    pub fn finite_field(tower: Arc<FieldTower>) -> Self {
        GaloisContext::FiniteField { tower }
    }

    /// Synthetic context with every class of inseparability degree
    /// `default_indeg` until overridden by [`GaloisContext::with_indeg`].
    pub fn synthetic(tower: Arc<FieldTower>, default_indeg: u64) -> Result<Self> {
        if default_indeg == 0 {
            return Err(Error::InvalidField("inseparability degree must be positive".into()));
        }
        Ok(GaloisContext::Synthetic {
            tower,
            indeg: BTreeMap::new(),
            default_indeg,
        })
    }

    /// Sets the inseparability degree of the class of `w`. No effect on a
    /// finite-field context.
    pub fn with_indeg(mut self, w: &LWeight, value: u64) -> Result<Self> {
        if value == 0 {
            return Err(Error::InvalidField("inseparability degree must be positive".into()));
        }
        let rep = self.orbit(w)?.rep().clone();
        if let GaloisContext::Synthetic { indeg, .. } = &mut self {
            indeg.insert(rep, value);
        }
        Ok(self)
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        match self {
            GaloisContext::FiniteField { tower } | GaloisContext::Synthetic { tower, .. } => tower,
        }
    }

    pub fn is_synthetic(&self) -> bool {
        matches!(self, GaloisContext::Synthetic { .. })
    }

    /// The characteristic a character engine must match; `None` for
    /// synthetic contexts, which model no particular field.
    pub fn characteristic(&self) -> Option<u64> {
        match self {
            GaloisContext::FiniteField { tower } => Some(tower.p() as u64),
            GaloisContext::Synthetic { .. } => None,
        }
    }

    fn check_tower(&self, w: &LWeight) -> Result<()> {
        if w.tower_key() == self.tower().key() {
            Ok(())
        } else {
            Err(Error::TowerMismatch(format!(
                "{} vs context {}",
                w.tower_key(),
                self.tower().key()
            )))
        }
    }

    /// The orbit of `w` under `Gal(F_{q^N}/F_q)`.
    pub fn orbit(&self, w: &LWeight) -> Result<ConjClass> {
        self.check_tower(w)?;
        let tower = self.tower();
        let mut members = vec![w.clone()];
        let mut cur = w.map_params(|a| tower.frobenius(a));
        while cur != *w {
            let next = cur.map_params(|a| tower.frobenius(a));
            members.push(cur);
            cur = next;
        }
        members.sort();
        Ok(ConjClass { members })
    }

    pub fn class_rep(&self, w: &LWeight) -> Result<LWeight> {
        Ok(self.orbit(w)?.rep().clone())
    }

    pub fn indeg(&self, w: &LWeight) -> Result<u64> {
        match self {
            GaloisContext::FiniteField { .. } => {
                self.check_tower(w)?;
                Ok(1)
            }
            GaloisContext::Synthetic {
                indeg,
                default_indeg,
                ..
            } => {
                let rep = self.class_rep(w)?;
                Ok(indeg.get(&rep).copied().unwrap_or(*default_indeg))
            }
        }
    }

    /// `deg(ω) = |[ω]| · indeg(ω)`.
    pub fn deg(&self, w: &LWeight) -> Result<u64> {
        Ok(self.orbit(w)?.len() as u64 * self.indeg(w)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{LieType, Weight};

    #[test]
    fn orbit_examples() {
        let t = FieldTower::new(2, 1, 2).unwrap();
        let ctx = GaloisContext::finite_field(t.clone());
        let a1: LieType = "A1".parse().unwrap();
        let w1 = Weight::new(&[1]);
        let a = t.generator();
        let a2 = t.mul(a, a);
        let rational = LWeight::omega(a1, &t, w1, t.one()).unwrap();
        assert_eq!(ctx.orbit(&rational).unwrap().len(), 1);
        assert_eq!(ctx.deg(&rational).unwrap(), 1);
        let wa = LWeight::omega(a1, &t, w1, a).unwrap();
        let wa2 = LWeight::omega(a1, &t, w1, a2).unwrap();
        let class = ctx.orbit(&wa).unwrap();
        assert_eq!(class.members(), &[wa.clone(), wa2.clone()]);
        assert_eq!(ctx.deg(&wa).unwrap(), 2);
        assert_eq!(ctx.indeg(&wa).unwrap(), 1);
        assert_eq!(ctx.orbit(&wa.mul(&wa2).unwrap()).unwrap().len(), 1);
    }

    #[test]
    fn synthetic_degrees() {
        let t = FieldTower::new(2, 1, 2).unwrap();
        let a1: LieType = "A1".parse().unwrap();
        let wa = LWeight::omega(a1, &t, Weight::new(&[1]), t.generator()).unwrap();
        let id = LWeight::identity(a1, t.key());
        let ctx = GaloisContext::synthetic(t.clone(), 1)
            .unwrap()
            .with_indeg(&wa.frobenius(), 3)
            .unwrap();
        assert_eq!(ctx.indeg(&wa).unwrap(), 3);
        assert_eq!(ctx.deg(&wa).unwrap(), 6);
        assert_eq!(ctx.deg(&id).unwrap(), 1);
        assert_eq!(ctx.characteristic(), None);
        assert!(GaloisContext::synthetic(t, 0).is_err());
    }
}
