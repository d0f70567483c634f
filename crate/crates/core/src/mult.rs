//! Clebsch-Gordan multiplicities over `F` and `K`, the irreducibility
//! criterion for tensor products over `K`, and Jordan-Hölder
//! multiplicities of Weyl modules.
//!
//! Each multiplicity is computed by a primary formula and checked against
//! every independent route that applies; a disagreement is an error.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::GaloisContext;
use crate::gchar::{tensor_mult_g, CharEngine};
use crate::lchar::{
    characteristic_consistent, decompose_lchar_F, decompose_lchar_K, mul_lchar, simple_lchar_F,
    tp_lchar_K, weyl_gchar_multiplicities, weyl_lchar_F, weyl_lchar_K,
};
use crate::lweight::{class_product_count, LWeight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Sum over conjugacy classes of `F`-side multiplicities.
    OrbitFormula,
    /// Triangular decomposition of an ℓ-character.
    LcharDecomposition,
    /// Counting `[ω : ϖ, π]`.
    ClassCount,
    /// Product over spectral parameters of g-multiplicities.
    ParameterProduct,
    /// The Weyl-module formula summing over the class of the constituent.
    DegreeFormula,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub method: Method,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultReport {
    pub value: u64,
    pub method: Method,
    /// Set for characteristic-p Weyl-module data, which rests on an open
    /// conjecture about Weyl module characters.
    pub conditional: bool,
    pub cross_checks: Vec<CrossCheck>,
    /// Computed in a synthetic Galois context.
    pub synthetic: bool,
    /// Engine characteristic differs from the field's (explicit override).
    pub inconsistent_characteristic: bool,
}

impl MultReport {
    fn new(value: u64, method: Method) -> Self {
        MultReport {
            value,
            method,
            conditional: false,
            cross_checks: Vec::new(),
            synthetic: false,
            inconsistent_characteristic: false,
        }
    }

    fn check(&mut self, method: Method, value: u64) -> Result<()> {
        self.cross_checks.push(CrossCheck { method, value });
        if value == self.value {
            Ok(())
        } else {
            Err(Error::FormulaDisagreement(format!(
                "{:?} gives {}, {:?} gives {}",
                self.method, self.value, method, value
            )))
        }
    }
}

fn require_dominant(ws: &[&LWeight]) -> Result<()> {
    for w in ws {
        if !w.is_dominant() {
            return Err(Error::NonDominant(w.to_string()));
        }
    }
    Ok(())
}

fn exact_div(num: u64, den: u64) -> Result<u64> {
    if den == 0 || !num.is_multiple_of(den) {
        return Err(Error::NonIntegerMultiplicity {
            numerator: num,
            denominator: den,
        });
    }
    Ok(num / den)
}

/// `mult^F_ω(ϖ, π)` by the per-parameter product.
pub(crate) fn cg_f_value(e: &CharEngine, omega: &LWeight, varpi: &LWeight, pi: &LWeight) -> Result<u64> {
    let params: BTreeSet<_> = varpi.support().keys().chain(pi.support().keys()).copied().collect();
    if omega.support().keys().any(|a| !params.contains(a)) {
        return Ok(0);
    }
    let mut prod = 1;
    for a in params {
        let m = tensor_mult_g(e, &varpi.local(a), &pi.local(a))?;
        let nu = omega.local(a);
        prod *= m.get(&nu).copied().unwrap_or(0);
        if prod == 0 {
            break;
        }
    }
    Ok(prod)
}

/// `mult^F_ω(ϖ, π)`, the multiplicity of `V_F(ω)` in `V_F(ϖ) ⊗ V_F(π)`.
#[allow(non_snake_case)]
pub fn cg_F(e: &CharEngine, omega: &LWeight, varpi: &LWeight, pi: &LWeight) -> Result<MultReport> {
    require_dominant(&[omega, varpi, pi])?;
    let mut report = MultReport::new(cg_f_value(e, omega, varpi, pi)?, Method::ParameterProduct);
    let product = mul_lchar(&simple_lchar_F(e, varpi)?, &simple_lchar_F(e, pi)?)?;
    let via_lchar = decompose_lchar_F(e, &product)?
        .get(omega)
        .copied()
        .unwrap_or(0);
    report.check(Method::LcharDecomposition, via_lchar)?;
    Ok(report)
}

fn context_flags(report: &mut MultReport, ctx: &GaloisContext, e: &CharEngine) -> Result<()> {
    report.synthetic = ctx.is_synthetic();
    report.inconsistent_characteristic = !characteristic_consistent(ctx, e)?;
    Ok(())
}

fn cg_k_report(
    ctx: &GaloisContext,
    e: &CharEngine,
    omega: &LWeight,
    varpi: &LWeight,
    pi: &LWeight,
    k_decomposition: &BTreeMap<LWeight, u64>,
) -> Result<MultReport> {
    let a = ctx.orbit(varpi)?;
    let b = ctx.orbit(pi)?;
    let mut sum = 0;
    for x in a.members() {
        for y in b.members() {
            sum += cg_f_value(e, omega, x, y)?;
        }
    }
    let scale = ctx.indeg(varpi)? * ctx.indeg(pi)?;
    let den = ctx.indeg(omega)?;
    let mut report = MultReport::new(exact_div(scale * sum, den)?, Method::OrbitFormula);
    context_flags(&mut report, ctx, e)?;
    if omega.wt() == varpi.wt() + pi.wt() {
        let count = class_product_count(ctx, omega, varpi, pi)?;
        report.check(Method::ClassCount, exact_div(scale * count, den)?)?;
    }
    let rep = ctx.class_rep(omega)?;
    report.check(
        Method::LcharDecomposition,
        k_decomposition.get(&rep).copied().unwrap_or(0),
    )?;
    Ok(report)
}

/// `mult^K_ω(ϖ, π)`, the multiplicity of `V_K(ω)` in `V_K(ϖ) ⊗ V_K(π)`:
/// `indeg(ϖ) indeg(π) / indeg(ω) · Σ_{ϖ′∈[ϖ]} Σ_{π′∈[π]} mult^F_ω(ϖ′, π′)`.
#[allow(non_snake_case)]
pub fn cg_K(
    ctx: &GaloisContext,
    e: &CharEngine,
    omega: &LWeight,
    varpi: &LWeight,
    pi: &LWeight,
) -> Result<MultReport> {
    require_dominant(&[omega, varpi, pi])?;
    let tp = tp_lchar_K(ctx, e, varpi, pi)?;
    let decomposition = decompose_lchar_K(ctx, e, &tp)?;
    cg_k_report(ctx, e, omega, varpi, pi, &decomposition)
}

/// `cg_K` at every constituent of `V_K(ϖ) ⊗ V_K(π)`, keyed by class
/// representative. Candidates are the dominant classes in the support of
/// the tensor product ℓ-character.
#[allow(non_snake_case)]
pub fn cg_K_table(
    ctx: &GaloisContext,
    e: &CharEngine,
    varpi: &LWeight,
    pi: &LWeight,
) -> Result<BTreeMap<LWeight, MultReport>> {
    require_dominant(&[varpi, pi])?;
    let tp = tp_lchar_K(ctx, e, varpi, pi)?;
    let decomposition = decompose_lchar_K(ctx, e, &tp)?;
    let mut out = BTreeMap::new();
    for rep in tp.terms().keys().filter(|w| w.is_dominant()) {
        let report = cg_k_report(ctx, e, rep, varpi, pi, &decomposition)?;
        if report.value > 0 {
            out.insert(rep.clone(), report);
        }
    }
    for rep in decomposition.keys() {
        if !out.contains_key(rep) {
            return Err(Error::FormulaDisagreement(format!(
                "constituent {rep} found only by ℓ-character decomposition"
            )));
        }
    }
    Ok(out)
}

/// `dim V_F(ω) = ∏_j dim V(λ_j)`.
#[allow(non_snake_case)]
pub fn dim_simple_F(e: &CharEngine, omega: &LWeight) -> Result<u64> {
    let mut d = 1u64;
    for (lambda, _) in omega.standard_factorization()? {
        d *= e.simple_dim(&lambda)? as u64;
    }
    Ok(d)
}

/// `dim V_K(ω) = deg(ω) · dim V_F(ω)`.
#[allow(non_snake_case)]
pub fn dim_simple_K(ctx: &GaloisContext, e: &CharEngine, omega: &LWeight) -> Result<u64> {
    Ok(ctx.deg(omega)? * dim_simple_F(e, omega)?)
}

/// `dim W_F(ω) = ∏_j dim W(λ_j)`.
#[allow(non_snake_case)]
pub fn dim_weyl_F(e: &CharEngine, omega: &LWeight) -> Result<u64> {
    let mut d = 1u64;
    for (lambda, _) in omega.standard_factorization()? {
        d *= crate::gchar::weyl_module_gchar(e, &lambda)?.dim() as u64;
    }
    Ok(d)
}

/// Whether `V_K(ϖ) ⊗ V_K(π) ≅ V_K(ϖπ)` follows from the criterion
/// `V_F(ϖ) ⊗ V_F(π) ≅ V_F(ϖπ)` and `deg(ϖπ) = deg(ϖ) deg(π)`.
#[allow(non_snake_case)]
pub fn tensor_K_irreducible(
    ctx: &GaloisContext,
    e: &CharEngine,
    varpi: &LWeight,
    pi: &LWeight,
) -> Result<bool> {
    require_dominant(&[varpi, pi])?;
    characteristic_consistent(ctx, e)?;
    let prod = varpi.mul(pi)?;
    let f_irreducible = cg_f_value(e, &prod, varpi, pi)? == 1
        && dim_simple_F(e, varpi)? * dim_simple_F(e, pi)? == dim_simple_F(e, &prod)?;
    Ok(f_irreducible && ctx.deg(&prod)? == ctx.deg(varpi)? * ctx.deg(pi)?)
}

/// `mult^F_ϖ(W_F(ω)) = ∏_j m^{(j)}_{μ_j}` with `ϖ = ∏_j ω_{μ_j,a_j}`.
pub(crate) fn weyl_f_value(e: &CharEngine, omega: &LWeight, varpi: &LWeight) -> Result<u64> {
    if varpi.support().keys().any(|a| !omega.support().contains_key(a)) {
        return Ok(0);
    }
    let mut prod = 1;
    for (lambda, a) in omega.standard_factorization()? {
        let m = weyl_gchar_multiplicities(e, &lambda)?;
        prod *= m.get(&varpi.local(a)).copied().unwrap_or(0);
        if prod == 0 {
            break;
        }
    }
    Ok(prod)
}

/// `mult^F_ϖ(W_F(ω))`, the multiplicity of `V_F(ϖ)` in the Weyl module.
#[allow(non_snake_case)]
pub fn weyl_mult_F(e: &CharEngine, omega: &LWeight, varpi: &LWeight) -> Result<MultReport> {
    require_dominant(&[omega, varpi])?;
    let mut report = MultReport::new(weyl_f_value(e, omega, varpi)?, Method::ParameterProduct);
    report.conditional = e.characteristic() > 0;
    let via_lchar = decompose_lchar_F(e, &weyl_lchar_F(e, omega)?)?
        .get(varpi)
        .copied()
        .unwrap_or(0);
    report.check(Method::LcharDecomposition, via_lchar)?;
    Ok(report)
}

fn weyl_k_report(
    ctx: &GaloisContext,
    e: &CharEngine,
    omega: &LWeight,
    varpi: &LWeight,
    k_decomposition: &BTreeMap<LWeight, u64>,
) -> Result<MultReport> {
    let mut over_omega = 0;
    for w in ctx.orbit(omega)?.members() {
        over_omega += weyl_f_value(e, w, varpi)?;
    }
    let first = exact_div(ctx.indeg(omega)? * over_omega, ctx.indeg(varpi)?)?;
    let mut over_varpi = 0;
    for v in ctx.orbit(varpi)?.members() {
        over_varpi += weyl_f_value(e, omega, v)?;
    }
    let second = exact_div(ctx.deg(omega)? * over_varpi, ctx.deg(varpi)?)?;
    let mut report = MultReport::new(first, Method::OrbitFormula);
    context_flags(&mut report, ctx, e)?;
    report.conditional = e.characteristic() > 0;
    report.check(Method::DegreeFormula, second)?;
    let rep = ctx.class_rep(varpi)?;
    report.check(
        Method::LcharDecomposition,
        k_decomposition.get(&rep).copied().unwrap_or(0),
    )?;
    Ok(report)
}

/// `mult^K_ϖ(W_K(ω))` by both class-sum formulas, which must agree.
#[allow(non_snake_case)]
pub fn weyl_mult_K(
    ctx: &GaloisContext,
    e: &CharEngine,
    omega: &LWeight,
    varpi: &LWeight,
) -> Result<MultReport> {
    require_dominant(&[omega, varpi])?;
    let decomposition = decompose_lchar_K(ctx, e, &weyl_lchar_K(ctx, e, omega)?)?;
    weyl_k_report(ctx, e, omega, varpi, &decomposition)
}

/// `weyl_mult_K` at every constituent of `W_K(ω)`, keyed by class
/// representative.
#[allow(non_snake_case)]
pub fn weyl_mult_K_table(
    ctx: &GaloisContext,
    e: &CharEngine,
    omega: &LWeight,
) -> Result<BTreeMap<LWeight, MultReport>> {
    require_dominant(&[omega])?;
    let weyl = weyl_lchar_K(ctx, e, omega)?;
    let decomposition = decompose_lchar_K(ctx, e, &weyl)?;
    let mut out = BTreeMap::new();
    for rep in weyl.terms().keys().filter(|w| w.is_dominant()) {
        let report = weyl_k_report(ctx, e, omega, rep, &decomposition)?;
        if report.value > 0 {
            out.insert(rep.clone(), report);
        }
    }
    Ok(out)
}
