//! The functional equations on a finite carrier.
//!
//! Residual evaluators for the two Wilson-type variants
//!
//! ```text
//!   W1:  f(xy) + μ(y) f(σ(y)x) = 2 f(x) g(y)
//!   W2:  f(xy) + μ(y) f(σ(y)x) = 2 f(y) g(x)
//! ```
//!
//! their d'Alembert companion g(xy) + μ(y) g(σ(y)x) = 2 g(x) g(y), the
//! weighted variant g(xy) + μ(y) g(xσ(y)) = 2 g(x) g(y), the solution-family
//! constructors, and the classifiers that emit the complete solution lists as
//! symbolic family descriptors.

use crate::funcspace::{
    self, enumerate_multiplicative, MaskedFunc, MuError, MuWitness, NullIdeal, SFunc,
    NULL_IDEAL_CONVENTION,
};
use crate::scalar::{rat, CycField, Cyclotomic};
use crate::semigroup::{CayleyTable, Involution, SemigroupError};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error(transparent)]
    Sigma(#[from] SemigroupError),
    #[error(transparent)]
    Mu(#[from] MuError),
    #[error("semigroup is not generated by its squares (closure: {subset:?})")]
    NotSquareGenerated { subset: Vec<usize> },
    #[error("field conductor {conductor} cannot host roots of order {needed}")]
    ConductorUnusable { conductor: u64, needed: u64 },
}

/// A fully validated equation context: square-generated semigroup S,
/// involutive automorphism σ, and admissible weight μ.
#[derive(Clone, Debug)]
pub struct StructureInstance {
    table: CayleyTable,
    sigma: Involution,
    mu: SFunc,
    field: CycField,
    square_generated: bool,
}

impl StructureInstance {
    /// Validates every blanket assumption and builds the context.
    pub fn new(
        table: CayleyTable,
        sigma: Involution,
        mu: SFunc,
    ) -> Result<StructureInstance, InstanceError> {
        // σ must be an involutive automorphism of *this* table.
        let sigma = Involution::new(sigma.perm().to_vec(), &table)?;
        // μ must be multiplicative, nowhere zero, with μ(xσ(x)) = 1.
        let mu = MuWitness::new(mu, &sigma, &table)?.func;
        let sq = table.square_generation();
        if !sq.generated {
            return Err(InstanceError::NotSquareGenerated { subset: sq.subset });
        }
        Self::assemble(table, sigma, mu, true)
    }

    /// Builds a context without checking the mathematical hypotheses
    /// (shapes still must match).  Exists so residuals can be evaluated on
    /// deliberately inadmissible data; verification paths never use this.
    pub fn new_unchecked(
        table: CayleyTable,
        sigma: Involution,
        mu: SFunc,
    ) -> StructureInstance {
        let square_generated = table.is_square_generated();
        Self::assemble(table, sigma, mu, square_generated)
            .expect("shape mismatch in unchecked instance")
    }

    fn assemble(
        table: CayleyTable,
        sigma: Involution,
        mu: SFunc,
        square_generated: bool,
    ) -> Result<StructureInstance, InstanceError> {
        assert_eq!(mu.len(), table.order(), "weight length");
        assert_eq!(sigma.perm().len(), table.order(), "involution length");
        let field = mu.get(0).field().clone();
        let needed = table.period_lcm();
        if !field.conductor().is_multiple_of(needed) {
            return Err(InstanceError::ConductorUnusable {
                conductor: field.conductor(),
                needed,
            });
        }
        Ok(StructureInstance {
            table,
            sigma,
            mu,
            field,
            square_generated,
        })
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn sigma(&self) -> &Involution {
        &self.sigma
    }

    pub fn mu(&self) -> &SFunc {
        &self.mu
    }

    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn is_square_generated(&self) -> bool {
        self.square_generated
    }

    pub fn star(&self, f: &SFunc) -> SFunc {
        funcspace::star(f, &self.sigma, &self.mu)
    }

    pub fn even_part(&self, f: &SFunc) -> SFunc {
        funcspace::even_part(f, &self.sigma, &self.mu)
    }

    pub fn odd_part(&self, f: &SFunc) -> SFunc {
        funcspace::odd_part(f, &self.sigma, &self.mu)
    }
}

impl Serialize for StructureInstance {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("StructureInstance", 4)?;
        st.serialize_field("semigroup", &self.table)?;
        st.serialize_field("sigma", &self.sigma)?;
        st.serialize_field("mu", &self.mu)?;
        st.serialize_field("conductor", &self.field.conductor())?;
        st.end()
    }
}

// ---------------------------------------------------------------------------
// Residual evaluation.
// ---------------------------------------------------------------------------

/// First nonzero residual, in lexicographic (x, y) order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualWitness {
    pub x: usize,
    pub y: usize,
    pub residual: Cyclotomic,
}

/// Outcome of evaluating an equation residual over all pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualReport {
    pub violations: usize,
    pub witness: Option<ResidualWitness>,
}

impl ResidualReport {
    pub fn is_zero(&self) -> bool {
        self.violations == 0
    }
}

fn scan_residual(
    n: usize,
    mut residual_at: impl FnMut(usize, usize) -> Cyclotomic,
) -> ResidualReport {
    let mut violations = 0;
    let mut witness = None;
    for x in 0..n {
        for y in 0..n {
            let r = residual_at(x, y);
            if !r.is_zero() {
                violations += 1;
                if witness.is_none() {
                    witness = Some(ResidualWitness { x, y, residual: r });
                }
            }
        }
    }
    ResidualReport {
        violations,
        witness,
    }
}

/// Residual of W1: r(x,y) = f(xy) + μ(y)f(σ(y)x) − 2f(x)g(y).
pub fn residual_eq1(f: &SFunc, g: &SFunc, ctx: &StructureInstance) -> ResidualReport {
    let t = &ctx.table;
    scan_residual(t.order(), |x, y| {
        let lhs = f.get(t.mul(x, y))
            + ctx
                .mu
                .get(y)
                .checked_mul(f.get(t.mul(ctx.sigma.apply(y), x)))
                .expect("same field");
        let rhs = f.get(x).checked_mul(g.get(y)).expect("same field");
        lhs - rhs.scale(&rat(2, 1))
    })
}

/// Residual of W2: r(x,y) = f(xy) + μ(y)f(σ(y)x) − 2f(y)g(x).
pub fn residual_eq2(f: &SFunc, g: &SFunc, ctx: &StructureInstance) -> ResidualReport {
    let t = &ctx.table;
    scan_residual(t.order(), |x, y| {
        let lhs = f.get(t.mul(x, y))
            + ctx
                .mu
                .get(y)
                .checked_mul(f.get(t.mul(ctx.sigma.apply(y), x)))
                .expect("same field");
        let rhs = f.get(y).checked_mul(g.get(x)).expect("same field");
        lhs - rhs.scale(&rat(2, 1))
    })
}

/// Residual of the d'Alembert companion:
/// r(x,y) = g(xy) + μ(y)g(σ(y)x) − 2g(x)g(y).
pub fn residual_dalembert_variant(g: &SFunc, ctx: &StructureInstance) -> ResidualReport {
    residual_eq1(g, g, ctx)
}

/// Residual of the weighted variant with the σ-image on the right:
/// r(x,y) = g(xy) + μ(y)g(xσ(y)) − 2g(x)g(y).
pub fn residual_mu_dalembert(g: &SFunc, ctx: &StructureInstance) -> ResidualReport {
    let t = &ctx.table;
    scan_residual(t.order(), |x, y| {
        let lhs = g.get(t.mul(x, y))
            + ctx
                .mu
                .get(y)
                .checked_mul(g.get(t.mul(x, ctx.sigma.apply(y))))
                .expect("same field");
        let rhs = g.get(x).checked_mul(g.get(y)).expect("same field");
        lhs - rhs.scale(&rat(2, 1))
    })
}

// ---------------------------------------------------------------------------
// Family constructors.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("chi must be multiplicative: fails at ({x},{y})")]
    NotMultiplicative { x: usize, y: usize },
    #[error("chi must be nonzero")]
    ZeroChi,
    #[error("parameter pair (lambda, delta) must not be (0,0)")]
    ZeroParamPair,
    #[error("parameter alpha must be nonzero")]
    ZeroAlpha,
    #[error("chi must be star-fixed (chi = chi*): differs at {x}")]
    ChiNotStarFixed { x: usize },
    #[error("additive part must live exactly on the complement of the null ideal")]
    MaskMismatch,
    #[error("additive part fails additivity at ({x},{y})")]
    NotAdditive { x: usize, y: usize },
    #[error("additive part must be odd (A(sigma(x)) = -A(x)): fails at {x}")]
    NotOdd { x: usize },
    #[error("additive part must be nonzero")]
    ZeroAdditive,
    #[error("pair is not a solution: {violations} residual violations")]
    NotASolution { violations: usize },
}

fn require_multiplicative(chi: &SFunc, s: &CayleyTable) -> Result<(), FamilyError> {
    match funcspace::is_multiplicative(chi, s) {
        true => Ok(()),
        false => {
            // Recover the witness for the error message.
            for x in 0..s.order() {
                for y in 0..s.order() {
                    let prod = chi.get(x).checked_mul(chi.get(y)).expect("same field");
                    if chi.get(s.mul(x, y)) != &prod {
                        return Err(FamilyError::NotMultiplicative { x, y });
                    }
                }
            }
            unreachable!()
        }
    }
}

/// g = (m + m*)/2 for multiplicative m: the general solution form of the
/// d'Alembert companion equation.
pub fn make_dalembert(m: &SFunc, ctx: &StructureInstance) -> Result<SFunc, FamilyError> {
    require_multiplicative(m, &ctx.table)?;
    Ok(ctx.even_part(m))
}

/// W1 family (2): f = λχ + δχ*, g = (χ + χ*)/2, for nonzero multiplicative χ
/// and (λ,δ) ≠ (0,0).
pub fn make_family2(
    chi: &SFunc,
    lambda: &Cyclotomic,
    delta: &Cyclotomic,
    ctx: &StructureInstance,
) -> Result<(SFunc, SFunc), FamilyError> {
    require_multiplicative(chi, &ctx.table)?;
    if chi.is_zero() {
        return Err(FamilyError::ZeroChi);
    }
    if lambda.is_zero() && delta.is_zero() {
        return Err(FamilyError::ZeroParamPair);
    }
    let chi_star = ctx.star(chi);
    let f = chi.scale(lambda).add(&chi_star.scale(delta));
    let g = chi.add(&chi_star).scale_rat(&rat(1, 2));
    Ok((f, g))
}

/// W1 family (3): f = χ·(c + A) and g = χ on the complement of the null
/// ideal, both zero on the ideal; requires χ = χ* and a nonzero odd additive
/// A on the complement.  On finite carriers no such A exists, so this
/// constructor's success path is reachable only through the symbolic backend;
/// here it reports exactly which hypothesis failed.
pub fn make_family3(
    chi: &SFunc,
    c: &Cyclotomic,
    a: &MaskedFunc,
    ctx: &StructureInstance,
) -> Result<(SFunc, SFunc), FamilyError> {
    require_multiplicative(chi, &ctx.table)?;
    if chi.is_zero() {
        return Err(FamilyError::ZeroChi);
    }
    let chi_star = ctx.star(chi);
    if let Some(x) = (0..ctx.order()).find(|&x| chi.get(x) != chi_star.get(x)) {
        return Err(FamilyError::ChiNotStarFixed { x });
    }
    let ideal = NullIdeal::of(chi, &ctx.table).expect("multiplicativity checked");
    let mask = ideal.complement_mask(ctx.order());
    if a.mask != mask {
        return Err(FamilyError::MaskMismatch);
    }
    // A must be additive on the subsemigroup S ∖ I.
    for (x, &in_x) in mask.iter().enumerate() {
        if !in_x {
            continue;
        }
        for (y, &in_y) in mask.iter().enumerate() {
            if !in_y {
                continue;
            }
            let xy = ctx.table.mul(x, y);
            let sum = a.func.get(x) + a.func.get(y);
            if a.func.get(xy) != &sum {
                return Err(FamilyError::NotAdditive { x, y });
            }
        }
    }
    // … and odd: A(σ(x)) = −A(x).
    for (x, &in_x) in mask.iter().enumerate() {
        if !in_x {
            continue;
        }
        if a.func.get(ctx.sigma.apply(x)) != &(-a.func.get(x)) {
            return Err(FamilyError::NotOdd { x });
        }
    }
    if a.func.is_zero() {
        return Err(FamilyError::ZeroAdditive);
    }
    // f = χ·(c + A): vanishes on the ideal automatically since χ does.
    let c_plus_a = SFunc::from_fn(ctx.order(), |x| c + a.func.get(x));
    let f = chi.pointwise_mul(&c_plus_a);
    Ok((f, chi.clone()))
}

/// W2 family (2): f = α(χ+χ*)/2, g = (χ+χ*)/2 with α ≠ 0.
pub fn make_eq2_family2(
    chi: &SFunc,
    alpha: &Cyclotomic,
    ctx: &StructureInstance,
) -> Result<(SFunc, SFunc), FamilyError> {
    require_multiplicative(chi, &ctx.table)?;
    if alpha.is_zero() {
        return Err(FamilyError::ZeroAlpha);
    }
    let g = ctx.even_part(chi);
    let f = g.scale(alpha);
    Ok((f, g))
}

/// Translates a W1 solution (f, g) into the sine addition law: with
/// f_a(x) = f(ax) − f(a)g(x), verifies f_a(xy) = f_a(x)g(y) + f_a(y)g(x).
/// Errors if (f, g) is not actually a solution.
pub fn sine_addition_check(
    f: &SFunc,
    g: &SFunc,
    a: usize,
    ctx: &StructureInstance,
) -> Result<ResidualReport, FamilyError> {
    let pre = residual_eq1(f, g, ctx);
    if !pre.is_zero() {
        return Err(FamilyError::NotASolution {
            violations: pre.violations,
        });
    }
    let t = &ctx.table;
    let f_a = SFunc::from_fn(ctx.order(), |x| {
        f.get(t.mul(a, x)) - f.get(a).checked_mul(g.get(x)).expect("same field")
    });
    Ok(scan_residual(ctx.order(), |x, y| {
        let lhs = f_a.get(t.mul(x, y));
        let rhs = f_a.get(x).checked_mul(g.get(y)).expect("same field")
            + f_a.get(y).checked_mul(g.get(x)).expect("same field");
        lhs - &rhs
    }))
}

// ---------------------------------------------------------------------------
// Classifiers.
// ---------------------------------------------------------------------------

/// Which solution family a descriptor denotes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FamilyTag {
    #[serde(rename = "W1_F1")]
    Eq1F1,
    #[serde(rename = "W1_F2")]
    Eq1F2,
    #[serde(rename = "W1_F3")]
    Eq1F3,
    #[serde(rename = "W2_F1")]
    Eq2F1,
    #[serde(rename = "W2_F2")]
    Eq2F2,
}

/// A named symbolic parameter of a solution family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub constraint: &'static str,
}

/// A symbolic solution-family descriptor: the classifier output.  Parameters
/// range over the whole field, so families are described by shape (and χ
/// data), not by listing individual solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionFamily {
    pub tag: FamilyTag,
    pub description: &'static str,
    pub chi: Option<SFunc>,
    pub chi_star: Option<SFunc>,
    pub params: Vec<ParamSpec>,
    pub null_ideal: Option<NullIdeal>,
    pub odd_additive_basis: Option<Vec<MaskedFunc>>,
}

impl Serialize for SolutionFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SolutionFamily", 8)?;
        st.serialize_field("tag", &self.tag)?;
        st.serialize_field("description", &self.description)?;
        st.serialize_field("chi", &self.chi)?;
        st.serialize_field("chi_star", &self.chi_star)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("null_ideal", &self.null_ideal)?;
        st.serialize_field("odd_additive_basis", &self.odd_additive_basis)?;
        st.serialize_field("null_ideal_convention", NULL_IDEAL_CONVENTION)?;
        st.end()
    }
}

/// The complete solution list of W1 on this instance, as family descriptors:
/// F1 (f = 0, g arbitrary); F2 per nonzero χ up to the (χ, χ*) symmetry;
/// F3 per star-fixed χ whose complement carries a nonzero odd additive
/// function (never the case on finite carriers).
pub fn classify_eq1(ctx: &StructureInstance) -> Vec<SolutionFamily> {
    classify_eq1_with(ctx, &enumerate_multiplicative(&ctx.table, &ctx.field))
}

/// Classifier core, reusing an already-enumerated multiplicative list.
pub fn classify_eq1_with(ctx: &StructureInstance, mults: &[SFunc]) -> Vec<SolutionFamily> {
    let mut out = vec![SolutionFamily {
        tag: FamilyTag::Eq1F1,
        description: "f = 0, g arbitrary",
        chi: None,
        chi_star: None,
        params: vec![],
        null_ideal: None,
        odd_additive_basis: None,
    }];
    for chi in mults {
        if chi.is_zero() {
            continue;
        }
        let chi_star = ctx.star(chi);
        // Deduplicate by the lexicographically smaller of (χ, χ*):
        // (χ, λ, δ) and (χ*, δ, λ) describe the same solutions.
        if chi_star < *chi {
            continue;
        }
        out.push(SolutionFamily {
            tag: FamilyTag::Eq1F2,
            description: "f = lambda*chi + delta*chi_star, g = (chi + chi_star)/2",
            chi: Some(chi.clone()),
            chi_star: Some(chi_star.clone()),
            params: vec![
                ParamSpec {
                    name: "lambda",
                    constraint: "free; (lambda, delta) != (0, 0)",
                },
                ParamSpec {
                    name: "delta",
                    constraint: "free; (lambda, delta) != (0, 0)",
                },
            ],
            null_ideal: None,
            odd_additive_basis: None,
        });
        if chi_star == *chi {
            // Candidate for F3: needs a nonzero odd additive function on the
            // complement of the null ideal.
            let ideal = NullIdeal::of(chi, &ctx.table).expect("enumerated χ is multiplicative");
            let mask = ideal.complement_mask(ctx.order());
            let basis = funcspace::odd_additive_space(&ctx.table, &ctx.sigma, &mask, &ctx.field)
                .expect("complement of a null ideal is closed and σ-invariant for star-fixed χ");
            if !basis.is_empty() {
                out.push(SolutionFamily {
                    tag: FamilyTag::Eq1F3,
                    description: "f = chi*(c + A), g = chi off the null ideal; f = g = 0 on it",
                    chi: Some(chi.clone()),
                    chi_star: Some(chi_star),
                    params: vec![ParamSpec {
                        name: "c",
                        constraint: "free",
                    }],
                    null_ideal: Some(ideal),
                    odd_additive_basis: Some(
                        basis
                            .into_iter()
                            .map(|f| MaskedFunc::new(f, mask.clone()))
                            .collect(),
                    ),
                });
            }
        }
    }
    out
}

/// The complete solution list of W2: F1 (f = 0, g arbitrary) and F2 per
/// nonzero χ up to the (χ, χ*) symmetry; a χ with χ + χ* = 0 would collapse
/// into F1 and is emitted only there.
pub fn classify_eq2(ctx: &StructureInstance) -> Vec<SolutionFamily> {
    classify_eq2_with(ctx, &enumerate_multiplicative(&ctx.table, &ctx.field))
}

pub fn classify_eq2_with(ctx: &StructureInstance, mults: &[SFunc]) -> Vec<SolutionFamily> {
    let mut out = vec![SolutionFamily {
        tag: FamilyTag::Eq2F1,
        description: "f = 0, g arbitrary",
        chi: None,
        chi_star: None,
        params: vec![],
        null_ideal: None,
        odd_additive_basis: None,
    }];
    for chi in mults {
        if chi.is_zero() {
            continue;
        }
        let chi_star = ctx.star(chi);
        if chi_star < *chi {
            continue;
        }
        if chi.add(&chi_star).is_zero() {
            // Degenerate overlap: f = g = 0 is already family 1.  (Cannot
            // happen on a square-generated carrier, where χ + χ* = 0 forces
            // χ = 0.)
            continue;
        }
        out.push(SolutionFamily {
            tag: FamilyTag::Eq2F2,
            description: "f = alpha*(chi + chi_star)/2, g = (chi + chi_star)/2",
            chi: Some(chi.clone()),
            chi_star: Some(chi_star),
            params: vec![ParamSpec {
                name: "alpha",
                constraint: "nonzero",
            }],
            null_ideal: None,
            odd_additive_basis: None,
        });
    }
    out
}
