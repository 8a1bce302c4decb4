//! Independent verification layer.
//!
//! For a fixed g, both Wilson variants are *linear* in f, so the full
//! solution space {f : residual = 0} is an exact kernel computation.  The
//! completeness verdicts compare that kernel, as a subspace, against the
//! space predicted by the classified solution families — computed by a
//! different code path, so the two sides are independent.
//!
//! The auxiliary-identity checkers validate the supporting structure
//! results: annihilation on triple products, transpose symmetry forcing
//! equality, exhaustive grid search for the companion d'Alembert equation,
//! and the centrality bridge to the weighted companion equation.  The census
//! driver sweeps all of this across every square-generated semigroup up to a
//! given order.

use crate::funcspace::{
    additive_space, enumerate_multiplicative, enumerate_mu, odd_additive_space, NullIdeal, SFunc,
};
use crate::linalg::{canonical_row_space, same_span, Matrix};
use crate::scalar::{rat, CycField, Cyclotomic};
use crate::semigroup::{is_homomorphism, CayleyTable, SemigroupError};
use crate::wilson::{
    classify_eq1_with, classify_eq2_with, make_dalembert, make_eq2_family2, make_family2,
    residual_dalembert_variant, residual_eq1, residual_eq2, residual_mu_dalembert, FamilyTag,
    StructureInstance,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("chi must be multiplicative: fails at ({x},{y})")]
    ChiNotMultiplicative { x: usize, y: usize },
    #[error("phi must map the carrier to itself: length/range mismatch")]
    PhiWrongShape { len: usize, order: usize },
    #[error("phi must be a homomorphism: fails at ({x},{y})")]
    PhiNotHomomorphism { x: usize, y: usize },
    #[error("grid search is limited to order <= 4, got {order}")]
    GridOrderTooLarge { order: usize },
}

/// Which Wilson variant a kernel or report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Equation {
    Eq1,
    Eq2,
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Equation::Eq1 => write!(f, "eq1"),
            Equation::Eq2 => write!(f, "eq2"),
        }
    }
}

fn to_vecs(funcs: &[SFunc]) -> Vec<Vec<Cyclotomic>> {
    funcs.iter().map(|f| f.values().to_vec()).collect()
}

fn add_at(m: &mut Matrix, r: usize, c: usize, v: &Cyclotomic) {
    let sum = m.at(r, c) + v;
    m.set(r, c, sum);
}

// ---------------------------------------------------------------------------
// Kernel oracle and predicted space.
// ---------------------------------------------------------------------------

/// Exact basis of {f : residual(f, g) = 0} for the chosen variant: one
/// homogeneous linear row per pair (x, y), solved over the cyclotomic field.
pub fn kernel_f_given_g(eq: Equation, g: &SFunc, ctx: &StructureInstance) -> Vec<SFunc> {
    let n = ctx.order();
    let t = ctx.table();
    let field = ctx.field();
    let mut m = Matrix::zeros(field, n * n, n);
    let minus_two = field.integer(-2);
    for x in 0..n {
        for y in 0..n {
            let r = x * n + y;
            add_at(&mut m, r, t.mul(x, y), &field.one());
            add_at(&mut m, r, t.mul(ctx.sigma().apply(y), x), ctx.mu().get(y));
            match eq {
                Equation::Eq1 => add_at(&mut m, r, x, &(&minus_two * g.get(y))),
                Equation::Eq2 => add_at(&mut m, r, y, &(&minus_two * g.get(x))),
            }
        }
    }
    m.kernel_basis().into_iter().map(SFunc::new).collect()
}

/// The f-space the classified families predict for this g, as a canonical
/// (reduced row echelon) basis.  Variant 1: span{χ, χ*} over every nonzero
/// enumerated χ with (χ+χ*)/2 = g, plus χ·(odd additive space off the null
/// ideal) when χ = χ*.  Variant 2: span{(χ+χ*)/2} over matching χ.
pub fn predicted_space(eq: Equation, g: &SFunc, ctx: &StructureInstance) -> Vec<SFunc> {
    predicted_space_with(
        eq,
        g,
        ctx,
        &enumerate_multiplicative(ctx.table(), ctx.field()),
    )
}

pub fn predicted_space_with(
    eq: Equation,
    g: &SFunc,
    ctx: &StructureInstance,
    mults: &[SFunc],
) -> Vec<SFunc> {
    let n = ctx.order();
    let field = ctx.field();
    let mut spanning: Vec<SFunc> = Vec::new();
    for chi in mults {
        if chi.is_zero() {
            continue;
        }
        let chi_star = ctx.star(chi);
        if chi.add(&chi_star).scale_rat(&rat(1, 2)) != *g {
            continue;
        }
        match eq {
            Equation::Eq1 => {
                spanning.push(chi.clone());
                spanning.push(chi_star.clone());
                if chi_star == *chi {
                    let ideal = NullIdeal::of(chi, ctx.table()).expect("chi is multiplicative");
                    let mask = ideal.complement_mask(n);
                    let basis = odd_additive_space(ctx.table(), ctx.sigma(), &mask, field)
                        .expect("complement of a null ideal is closed; star-fixed chi gives σ-invariance");
                    for a in basis {
                        spanning.push(chi.pointwise_mul(&a));
                    }
                }
            }
            Equation::Eq2 => spanning.push(g.clone()),
        }
    }
    canonical_row_space(field, &to_vecs(&spanning), n)
        .into_iter()
        .map(SFunc::new)
        .collect()
}

// ---------------------------------------------------------------------------
// Completeness verification.
// ---------------------------------------------------------------------------

/// How a completeness candidate g was produced / what family shape it has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GKind {
    /// g = 0.
    Zero,
    /// g = (χ+χ*)/2 for some nonzero χ with χ ≠ χ*.
    StarPair,
    /// g = χ = χ* for some nonzero χ.
    StarFixed,
    /// Half-sum of two enumerated multiplicative functions, not of family form.
    PairSum,
    /// Seeded random draw, not of family form.
    Random,
}

/// One completeness verdict: kernel vs. predicted space for a single g.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub instance: String,
    pub equation: Equation,
    pub g: SFunc,
    pub g_kind: GKind,
    pub kernel_dim: usize,
    pub predicted_dim: usize,
    pub kernel_basis: Vec<SFunc>,
    pub predicted_basis: Vec<SFunc>,
    /// Dimension the classification pins for this g-shape, when it does.
    pub expected_dim: Option<usize>,
    pub verdict: bool,
}

struct GAnalysis {
    kind: GKind,
    expected_dim: Option<usize>,
    conflict: bool,
}

fn analyze_g(
    eq: Equation,
    g: &SFunc,
    mults: &[SFunc],
    ctx: &StructureInstance,
    from_pair: bool,
) -> GAnalysis {
    if g.is_zero() {
        return GAnalysis {
            kind: GKind::Zero,
            expected_dim: Some(0),
            conflict: false,
        };
    }
    let mut pair_match = false;
    let mut fixed_match = false;
    let mut fixed_extra = 0usize;
    for chi in mults {
        if chi.is_zero() {
            continue;
        }
        let chi_star = ctx.star(chi);
        if chi.add(&chi_star).scale_rat(&rat(1, 2)) != *g {
            continue;
        }
        if chi_star == *chi {
            fixed_match = true;
            let ideal = NullIdeal::of(chi, ctx.table()).expect("chi is multiplicative");
            let mask = ideal.complement_mask(ctx.order());
            fixed_extra = odd_additive_space(ctx.table(), ctx.sigma(), &mask, ctx.field())
                .map(|b| b.len())
                .unwrap_or(0);
        } else {
            pair_match = true;
        }
    }
    // A g matching both shapes would contradict linear independence of
    // distinct multiplicative functions; surface it instead of guessing.
    let conflict = pair_match && fixed_match;
    let (kind, expected) = if pair_match {
        (
            GKind::StarPair,
            match eq {
                Equation::Eq1 => Some(2),
                Equation::Eq2 => Some(1),
            },
        )
    } else if fixed_match {
        (
            GKind::StarFixed,
            match eq {
                Equation::Eq1 => Some(1 + fixed_extra),
                Equation::Eq2 => Some(1),
            },
        )
    } else if from_pair {
        (
            GKind::PairSum,
            match eq {
                // Variant 1 pins only zero/random/family dims; equality with
                // the (empty) predicted space is still enforced.
                Equation::Eq1 => None,
                Equation::Eq2 => Some(0),
            },
        )
    } else {
        (GKind::Random, Some(0))
    };
    GAnalysis {
        kind,
        expected_dim: if conflict { None } else { expected },
        conflict,
    }
}

/// Draws a random candidate g with values from a small exact pool: the
/// rationals {0, ±1, ±2, ±1/2} and all roots of unity of order dividing the
/// carrier's period lcm.
pub fn draw_random_sfunc(
    field: &CycField,
    n: usize,
    period_lcm: u64,
    rng: &mut ChaCha8Rng,
) -> SFunc {
    let mut pool = vec![
        field.zero(),
        field.one(),
        field.integer(-1),
        field.integer(2),
        field.integer(-2),
        field.rational(rat(1, 2)),
        field.rational(rat(-1, 2)),
    ];
    for k in 0..period_lcm {
        pool.push(
            field
                .root_of_unity(period_lcm, k as i64)
                .expect("period lcm divides the conductor"),
        );
    }
    SFunc::from_fn(n, |_| pool[rng.gen_range(0..pool.len())].clone())
}

/// Runs the kernel-vs-predicted comparison for every candidate g: all
/// half-sums (χ₁+χ₂)/2 of enumerated multiplicative functions (deduplicated)
/// plus `random_g_count` seeded random draws.
pub fn verify_completeness(
    eq: Equation,
    ctx: &StructureInstance,
    random_g_count: usize,
    seed: u64,
    instance_id: &str,
) -> Vec<CompletenessReport> {
    verify_completeness_opts(eq, ctx, random_g_count, seed, instance_id, false)
}

/// Like [`verify_completeness`], with a deliberate-corruption switch used to
/// prove the harness can detect a wrong predicted space (every candidate's
/// predicted basis is altered, so every verdict must flip to false).
pub fn verify_completeness_opts(
    eq: Equation,
    ctx: &StructureInstance,
    random_g_count: usize,
    seed: u64,
    instance_id: &str,
    corrupt_predicted: bool,
) -> Vec<CompletenessReport> {
    let field = ctx.field();
    let n = ctx.order();
    let mults = enumerate_multiplicative(ctx.table(), field);
    let mut candidates: Vec<(SFunc, bool)> = Vec::new();
    let mut seen = BTreeSet::new();
    for i in 0..mults.len() {
        for j in i..mults.len() {
            let g = mults[i].add(&mults[j]).scale_rat(&rat(1, 2));
            if seen.insert(g.clone()) {
                candidates.push((g, true));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random_g_count {
        candidates.push((
            draw_random_sfunc(field, n, ctx.table().period_lcm(), &mut rng),
            false,
        ));
    }
    candidates
        .into_iter()
        .map(|(g, from_pair)| {
            let kernel = kernel_f_given_g(eq, &g, ctx);
            let mut predicted = predicted_space_with(eq, &g, ctx, &mults);
            if corrupt_predicted {
                corrupt_basis(&mut predicted, field, n);
            }
            let analysis = analyze_g(eq, &g, &mults, ctx, from_pair);
            let spans_equal = same_span(field, &to_vecs(&kernel), &to_vecs(&predicted), n);
            let verdict = !analysis.conflict
                && spans_equal
                && analysis.expected_dim.is_none_or(|d| d == kernel.len());
            CompletenessReport {
                instance: instance_id.to_string(),
                equation: eq,
                g,
                g_kind: analysis.kind,
                kernel_dim: kernel.len(),
                predicted_dim: predicted.len(),
                kernel_basis: kernel,
                predicted_basis: predicted,
                expected_dim: analysis.expected_dim,
                verdict,
            }
        })
        .collect()
}

/// Makes `basis` span a provably different subspace: append a unit vector
/// outside the current span, or drop a vector if the span is already full.
fn corrupt_basis(basis: &mut Vec<SFunc>, field: &CycField, n: usize) {
    let current = canonical_row_space(field, &to_vecs(basis), n);
    if current.len() == n {
        basis.pop();
        return;
    }
    for k in 0..n {
        let mut unit = vec![field.zero(); n];
        unit[k] = field.one();
        let mut with = to_vecs(basis);
        with.push(unit.clone());
        if canonical_row_space(field, &with, n).len() > current.len() {
            basis.push(SFunc::new(unit));
            return;
        }
    }
    unreachable!("a proper subspace must miss some unit vector");
}

// ---------------------------------------------------------------------------
// Auxiliary identity checks.
// ---------------------------------------------------------------------------

/// Solutions of F(xy) + χ(y)F(φ(y)x) = 0 vanish on all triple products, and
/// are identically zero when S = S·S.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubeVanishingReport {
    pub kernel_dim: usize,
    pub vanishes_on_cube: bool,
    pub surjective_product: bool,
    pub kernel_trivial_when_surjective: bool,
    pub pass: bool,
}

pub fn cube_vanishing_check(
    chi: &SFunc,
    phi: &[usize],
    s: &CayleyTable,
) -> Result<CubeVanishingReport, OracleError> {
    let n = s.order();
    if phi.len() != n || phi.iter().any(|&p| p >= n) {
        return Err(OracleError::PhiWrongShape {
            len: phi.len(),
            order: n,
        });
    }
    if !is_homomorphism(phi, s) {
        let (x, y) = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| phi[s.mul(x, y)] != s.mul(phi[x], phi[y]))
            .expect("witness exists");
        return Err(OracleError::PhiNotHomomorphism { x, y });
    }
    if let Some((x, y)) = multiplicative_witness(chi, s) {
        return Err(OracleError::ChiNotMultiplicative { x, y });
    }
    let field = chi.get(0).field();
    let mut m = Matrix::zeros(field, n * n, n);
    for x in 0..n {
        for (y, &phi_y) in phi.iter().enumerate() {
            let r = x * n + y;
            add_at(&mut m, r, s.mul(x, y), &field.one());
            add_at(&mut m, r, s.mul(phi_y, x), chi.get(y));
        }
    }
    let kernel = m.kernel_basis();
    let mut cube = vec![false; n];
    let mut square = vec![false; n];
    for x in 0..n {
        for y in 0..n {
            let xy = s.mul(x, y);
            square[xy] = true;
            for z in 0..n {
                cube[s.mul(xy, z)] = true;
            }
        }
    }
    let vanishes_on_cube = kernel
        .iter()
        .all(|v| (0..n).all(|e| !cube[e] || v[e].is_zero()));
    let surjective_product = square.iter().all(|&b| b);
    let kernel_trivial_when_surjective = !surjective_product || kernel.is_empty();
    Ok(CubeVanishingReport {
        kernel_dim: kernel.len(),
        vanishes_on_cube,
        surjective_product,
        kernel_trivial_when_surjective,
        pass: vanishes_on_cube && kernel_trivial_when_surjective,
    })
}

fn multiplicative_witness(chi: &SFunc, s: &CayleyTable) -> Option<(usize, usize)> {
    let n = s.order();
    for x in 0..n {
        for y in 0..n {
            let prod = chi.get(x).checked_mul(chi.get(y)).expect("same field");
            if chi.get(s.mul(x, y)) != &prod {
                return Some((x, y));
            }
        }
    }
    None
}

/// f(xy) = F(yx) for all x, y forces f = F when S = S·S: verified on the
/// joint kernel of the transposition-coupling system in unknowns (f, F).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransposeSymmetryReport {
    pub joint_kernel_dim: usize,
    pub pass: bool,
}

pub fn transpose_symmetry_check(s: &CayleyTable, field: &CycField) -> TransposeSymmetryReport {
    let n = s.order();
    let mut m = Matrix::zeros(field, n * n, 2 * n);
    for x in 0..n {
        for y in 0..n {
            let r = x * n + y;
            add_at(&mut m, r, s.mul(x, y), &field.one());
            add_at(&mut m, r, n + s.mul(y, x), &field.integer(-1));
        }
    }
    let kernel = m.kernel_basis();
    let pass = kernel.iter().all(|v| v[..n] == v[n..]);
    TransposeSymmetryReport {
        joint_kernel_dim: kernel.len(),
        pass,
    }
}

/// Exhaustive grid search for the companion equation
/// g(xy) + μ(y)g(σ(y)x) = 2g(x)g(y): every solution with values on the grid
/// {(u+v)/2 : u,v ∈ {0} ∪ roots of unity of order dividing the period lcm}
/// must equal (m+m*)/2 for some enumerated multiplicative m, and vice versa.
/// The constructed solutions provably take values on this grid; the search
/// certifies completeness over the grid only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompanionGridReport {
    pub grid_values: usize,
    pub solutions_found: usize,
    pub constructed: usize,
    pub unmatched: Vec<SFunc>,
    pub missing: Vec<SFunc>,
    pub pass: bool,
}

pub fn companion_grid_completeness(
    ctx: &StructureInstance,
) -> Result<CompanionGridReport, OracleError> {
    let n = ctx.order();
    if n > 4 {
        return Err(OracleError::GridOrderTooLarge { order: n });
    }
    let field = ctx.field();
    let l = ctx.table().period_lcm();
    let mut units = vec![field.zero()];
    for k in 0..l {
        units.push(
            field
                .root_of_unity(l, k as i64)
                .expect("period lcm divides the conductor"),
        );
    }
    let mut grid_set = BTreeSet::new();
    for u in &units {
        for v in &units {
            grid_set.insert((u + v).scale(&rat(1, 2)));
        }
    }
    let grid: Vec<Cyclotomic> = grid_set.into_iter().collect();
    // pairs_at[k]: the (x, y) whose residual becomes fully determined exactly
    // when position k receives a value.
    let mut pairs_at: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for x in 0..n {
        for y in 0..n {
            let k = x
                .max(y)
                .max(ctx.table().mul(x, y))
                .max(ctx.table().mul(ctx.sigma().apply(y), x));
            pairs_at[k].push((x, y));
        }
    }
    let mut solutions = Vec::new();
    let mut current: Vec<Cyclotomic> = Vec::with_capacity(n);
    search_grid(&grid, &pairs_at, ctx, &mut current, &mut solutions);
    let found: BTreeSet<SFunc> = solutions.into_iter().collect();
    let constructed: BTreeSet<SFunc> = enumerate_multiplicative(ctx.table(), field)
        .iter()
        .map(|m| make_dalembert(m, ctx).expect("enumerated m is multiplicative"))
        .collect();
    let unmatched: Vec<SFunc> = found.difference(&constructed).cloned().collect();
    let missing: Vec<SFunc> = constructed.difference(&found).cloned().collect();
    Ok(CompanionGridReport {
        grid_values: grid.len(),
        solutions_found: found.len(),
        constructed: constructed.len(),
        pass: unmatched.is_empty() && missing.is_empty(),
        unmatched,
        missing,
    })
}

fn search_grid(
    grid: &[Cyclotomic],
    pairs_at: &[Vec<(usize, usize)>],
    ctx: &StructureInstance,
    current: &mut Vec<Cyclotomic>,
    out: &mut Vec<SFunc>,
) {
    let k = current.len();
    if k == pairs_at.len() {
        out.push(SFunc::new(current.clone()));
        return;
    }
    let t = ctx.table();
    for v in grid {
        current.push(v.clone());
        let consistent = pairs_at[k].iter().all(|&(x, y)| {
            let r = &current[t.mul(x, y)]
                + &(ctx.mu().get(y) * &current[t.mul(ctx.sigma().apply(y), x)])
                - (&current[x] * &current[y]).scale(&rat(2, 1));
            r.is_zero()
        });
        if consistent {
            search_grid(grid, pairs_at, ctx, current, out);
        }
        current.pop();
    }
}

/// If the first Wilson variant has a nonzero *central* solution f for this g,
/// then g must satisfy the weighted companion equation
/// g(xy) + μ(y)g(xσ(y)) = 2g(x)g(y).  Noncentral kernel elements are
/// reported but carry no verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralWeightedReport {
    pub full_kernel_dim: usize,
    pub central_solution_dim: usize,
    pub noncentral_present: bool,
    /// None when the check is vacuous (no nonzero central solution).
    pub weighted_residual_zero: Option<bool>,
    pub pass: bool,
}

pub fn central_weighted_check(g: &SFunc, ctx: &StructureInstance) -> CentralWeightedReport {
    let kernel = kernel_f_given_g(Equation::Eq1, g, ctx);
    let full = kernel.len();
    let n = ctx.order();
    let t = ctx.table();
    let field = ctx.field();
    let central_dim = if full == 0 {
        0
    } else {
        // Centrality cut in kernel coordinates: Σ cᵢ(kᵢ(xy) − kᵢ(yx)) = 0.
        let mut rows = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                let (xy, yx) = (t.mul(x, y), t.mul(y, x));
                if xy == yx {
                    continue;
                }
                rows.push(
                    kernel
                        .iter()
                        .map(|k| k.get(xy) - k.get(yx))
                        .collect::<Vec<_>>(),
                );
            }
        }
        if rows.is_empty() {
            full
        } else {
            Matrix::from_rows(field, rows, full).kernel_basis().len()
        }
    };
    let weighted = if central_dim > 0 {
        Some(residual_mu_dalembert(g, ctx).is_zero())
    } else {
        None
    };
    CentralWeightedReport {
        full_kernel_dim: full,
        central_solution_dim: central_dim,
        noncentral_present: full > central_dim,
        weighted_residual_zero: weighted,
        pass: weighted.unwrap_or(true),
    }
}

// ---------------------------------------------------------------------------
// Census driver.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct CensusConfig {
    pub max_order: usize,
    pub seed: u64,
    pub random_g_count: usize,
    /// Companion-equation grid search runs only on orders up to this bound.
    pub grid_max_order: usize,
}

impl Default for CensusConfig {
    fn default() -> CensusConfig {
        CensusConfig {
            max_order: 4,
            seed: 0,
            random_g_count: 20,
            grid_max_order: 3,
        }
    }
}

/// One failed check, with enough context to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckFailure {
    pub instance: String,
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderSummary {
    pub order: usize,
    pub tables_scanned: usize,
    pub square_generated: usize,
    pub instances: usize,
    pub completeness_reports: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub config: CensusConfig,
    pub orders: Vec<OrderSummary>,
    pub failures: Vec<CheckFailure>,
    /// Informational: instances where the kernel held noncentral solutions.
    pub noncentral_log: Vec<String>,
    pub total_scanned: usize,
    pub total_failures: usize,
}

#[derive(Default)]
struct TableOutcome {
    square_generated: bool,
    instances: usize,
    completeness_reports: usize,
    failures: Vec<CheckFailure>,
    noncentral: Vec<String>,
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic per-instance seed from the master seed and index path.
pub fn derive_seed(master: u64, parts: &[u64]) -> u64 {
    let mut h = splitmix64(master);
    for &p in parts {
        h = splitmix64(h ^ p);
    }
    h
}

/// Sweeps every labeled semigroup of order 1..=max_order: filters the
/// square-generated ones, expands every (σ, μ), and runs the full soundness
/// and completeness suite on each instance.  Deterministic given the config.
pub fn census_verify(config: &CensusConfig) -> Result<CensusReport, SemigroupError> {
    let mut orders = Vec::new();
    let mut failures = Vec::new();
    let mut noncentral_log = Vec::new();
    for order in 1..=config.max_order {
        let tables: Vec<CayleyTable> = CayleyTable::enumerate(order)?.collect();
        let outcomes: Vec<TableOutcome> = tables
            .par_iter()
            .enumerate()
            .map(|(ti, t)| check_table(order, ti, t, config))
            .collect();
        let summary = OrderSummary {
            order,
            tables_scanned: tables.len(),
            square_generated: outcomes.iter().filter(|o| o.square_generated).count(),
            instances: outcomes.iter().map(|o| o.instances).sum(),
            completeness_reports: outcomes.iter().map(|o| o.completeness_reports).sum(),
            failures: outcomes.iter().map(|o| o.failures.len()).sum(),
        };
        for o in outcomes {
            failures.extend(o.failures);
            noncentral_log.extend(o.noncentral);
        }
        orders.push(summary);
    }
    Ok(CensusReport {
        config: config.clone(),
        total_scanned: orders.iter().map(|o| o.tables_scanned).sum(),
        total_failures: failures.len(),
        orders,
        failures,
        noncentral_log,
    })
}

fn check_table(order: usize, ti: usize, table: &CayleyTable, config: &CensusConfig) -> TableOutcome {
    let mut out = TableOutcome::default();
    if !table.is_square_generated() {
        return out;
    }
    out.square_generated = true;
    let table_id = format!("order{order}/table{ti}");
    let field = CycField::new(table.session_conductor());
    let mults = enumerate_multiplicative(table, &field);
    let autos = table.involutive_automorphisms();

    let tr = transpose_symmetry_check(table, &field);
    if !tr.pass {
        out.failures.push(CheckFailure {
            instance: table_id.clone(),
            check: "transpose-symmetry".into(),
            detail: format!("joint kernel dim {}", tr.joint_kernel_dim),
        });
    }

    for (ci, chi) in mults.iter().enumerate() {
        for (pi, phi) in autos.iter().enumerate() {
            match cube_vanishing_check(chi, phi.perm(), table) {
                Ok(rep) if rep.pass => {}
                Ok(rep) => out.failures.push(CheckFailure {
                    instance: table_id.clone(),
                    check: "cube-vanishing".into(),
                    detail: format!("chi#{ci} phi#{pi}: {rep:?}"),
                }),
                Err(e) => out.failures.push(CheckFailure {
                    instance: table_id.clone(),
                    check: "cube-vanishing".into(),
                    detail: format!("chi#{ci} phi#{pi}: {e}"),
                }),
            }
        }
    }

    // Finite obstruction to the singular family: no nonzero additive
    // function lives on any S ∖ I_χ.
    for (ci, chi) in mults.iter().enumerate() {
        if chi.is_zero() {
            continue;
        }
        let ideal = NullIdeal::of(chi, table).expect("enumerated multiplicative");
        let mask = ideal.complement_mask(table.order());
        match additive_space(table, &mask, &field) {
            Ok(b) if b.is_empty() => {}
            Ok(b) => out.failures.push(CheckFailure {
                instance: table_id.clone(),
                check: "additive-dimension".into(),
                detail: format!("chi#{ci}: additive space has dimension {}", b.len()),
            }),
            Err(e) => out.failures.push(CheckFailure {
                instance: table_id.clone(),
                check: "additive-dimension".into(),
                detail: format!("chi#{ci}: {e}"),
            }),
        }
    }

    for (si, sigma) in autos.iter().enumerate() {
        for (mi, wit) in enumerate_mu(table, sigma, &field).into_iter().enumerate() {
            let id = format!("{table_id}/sigma{si}/mu{mi}");
            let ctx = StructureInstance::new(table.clone(), sigma.clone(), wit.func)
                .expect("census instance satisfies all hypotheses");
            out.instances += 1;
            check_instance(&id, &ctx, &mults, config, &[order as u64, ti as u64, si as u64, mi as u64], &mut out);
        }
    }
    out
}

fn check_instance(
    id: &str,
    ctx: &StructureInstance,
    mults: &[SFunc],
    config: &CensusConfig,
    path: &[u64],
    out: &mut TableOutcome,
) {
    let field = ctx.field();
    let zeta = field
        .root_of_unity(field.conductor(), 1)
        .expect("conductor root");
    let params = [field.zero(), field.one(), field.integer(2), zeta];

    // Constructive soundness of the classified families.
    for chi in mults.iter().filter(|c| !c.is_zero()) {
        for lambda in &params {
            for delta in &params {
                if lambda.is_zero() && delta.is_zero() {
                    continue;
                }
                match make_family2(chi, lambda, delta, ctx) {
                    Ok((f, g)) => {
                        let rep = residual_eq1(&f, &g, ctx);
                        if !rep.is_zero() {
                            out.failures.push(CheckFailure {
                                instance: id.into(),
                                check: "family2-residual".into(),
                                detail: format!(
                                    "lambda={lambda} delta={delta}: {} violations",
                                    rep.violations
                                ),
                            });
                        }
                    }
                    Err(e) => out.failures.push(CheckFailure {
                        instance: id.into(),
                        check: "family2-residual".into(),
                        detail: e.to_string(),
                    }),
                }
            }
        }
        for alpha in &params[1..] {
            match make_eq2_family2(chi, alpha, ctx) {
                Ok((f, g)) => {
                    let rep = residual_eq2(&f, &g, ctx);
                    if !rep.is_zero() {
                        out.failures.push(CheckFailure {
                            instance: id.into(),
                            check: "eq2-family2-residual".into(),
                            detail: format!("alpha={alpha}: {} violations", rep.violations),
                        });
                    }
                }
                Err(e) => out.failures.push(CheckFailure {
                    instance: id.into(),
                    check: "eq2-family2-residual".into(),
                    detail: e.to_string(),
                }),
            }
        }
    }
    for m in mults {
        let g = make_dalembert(m, ctx).expect("enumerated m is multiplicative");
        if !residual_dalembert_variant(&g, ctx).is_zero() {
            out.failures.push(CheckFailure {
                instance: id.into(),
                check: "companion-residual".into(),
                detail: format!("m={m:?}"),
            });
        }
        if ctx.star(&g) != g {
            out.failures.push(CheckFailure {
                instance: id.into(),
                check: "companion-star-fixed".into(),
                detail: format!("m={m:?}"),
            });
        }
    }

    // Classifier structure: family-2 lists carry exactly the nonzero χ with
    // χ ≤ χ* (one per star orbit), and no singular family on finite carriers.
    let expected_chis: BTreeSet<&SFunc> = mults
        .iter()
        .filter(|c| !c.is_zero() && ctx.star(c) >= **c)
        .collect();
    let fams1 = classify_eq1_with(ctx, mults);
    if fams1.iter().any(|f| f.tag == FamilyTag::Eq1F3) {
        out.failures.push(CheckFailure {
            instance: id.into(),
            check: "no-singular-family".into(),
            detail: "classifier emitted a singular family on a finite carrier".into(),
        });
    }
    let got1: BTreeSet<&SFunc> = fams1.iter().filter_map(|f| f.chi.as_ref()).collect();
    let fams2 = classify_eq2_with(ctx, mults);
    let got2: BTreeSet<&SFunc> = fams2.iter().filter_map(|f| f.chi.as_ref()).collect();
    if got1 != expected_chis || got2 != expected_chis {
        out.failures.push(CheckFailure {
            instance: id.into(),
            check: "classifier-dedup".into(),
            detail: format!(
                "expected {} star-orbit representatives, got {}/{}",
                expected_chis.len(),
                got1.len(),
                got2.len()
            ),
        });
    }

    // Completeness for both variants.
    for (tag, eq) in [(1u64, Equation::Eq1), (2u64, Equation::Eq2)] {
        let mut parts = vec![tag];
        parts.extend_from_slice(path);
        let seed = derive_seed(config.seed, &parts);
        for rep in verify_completeness(eq, ctx, config.random_g_count, seed, id) {
            out.completeness_reports += 1;
            if !rep.verdict {
                out.failures.push(CheckFailure {
                    instance: id.into(),
                    check: format!("completeness-{eq}"),
                    detail: format!(
                        "g={:?} kind={:?} kernel_dim={} predicted_dim={} expected={:?}",
                        rep.g, rep.g_kind, rep.kernel_dim, rep.predicted_dim, rep.expected_dim
                    ),
                });
            }
        }
    }

    // Centrality bridge, on the constructed companion solutions plus random
    // draws (other candidates have trivial kernels by completeness).
    let mut candidates: Vec<SFunc> = {
        let set: BTreeSet<SFunc> = mults
            .iter()
            .map(|m| make_dalembert(m, ctx).expect("multiplicative"))
            .collect();
        set.into_iter().collect()
    };
    let mut parts = vec![3u64];
    parts.extend_from_slice(path);
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, &parts));
    for _ in 0..config.random_g_count {
        candidates.push(draw_random_sfunc(
            field,
            ctx.order(),
            ctx.table().period_lcm(),
            &mut rng,
        ));
    }
    for g in candidates {
        let rep = central_weighted_check(&g, ctx);
        if !rep.pass {
            out.failures.push(CheckFailure {
                instance: id.into(),
                check: "central-weighted".into(),
                detail: format!("g={g:?}: {rep:?}"),
            });
        }
        if rep.noncentral_present {
            out.noncentral.push(format!(
                "{id}: g={g:?} kernel_dim={} central_dim={}",
                rep.full_kernel_dim, rep.central_solution_dim
            ));
        }
    }

    // Companion-equation grid completeness on small orders.
    if ctx.order() <= config.grid_max_order {
        match companion_grid_completeness(ctx) {
            Ok(rep) if rep.pass => {}
            Ok(rep) => out.failures.push(CheckFailure {
                instance: id.into(),
                check: "companion-grid".into(),
                detail: format!(
                    "found {} grid solutions vs {} constructed; unmatched={:?} missing={:?}",
                    rep.solutions_found, rep.constructed, rep.unmatched, rep.missing
                ),
            }),
            Err(e) => out.failures.push(CheckFailure {
                instance: id.into(),
                check: "companion-grid".into(),
                detail: e.to_string(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::Involution;

    fn z3() -> CayleyTable {
        CayleyTable::from_rows(&[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap()
    }

    fn z3_neg() -> StructureInstance {
        let s = z3();
        let field = CycField::new(s.session_conductor());
        let sigma = Involution::new(vec![0, 2, 1], &s).unwrap();
        let mu = SFunc::constant(&field, 3, field.one());
        StructureInstance::new(s, sigma, mu).unwrap()
    }

    fn bool_id() -> StructureInstance {
        let s = CayleyTable::from_rows(&[vec![0, 0], vec![0, 1]]).unwrap();
        let field = CycField::new(s.session_conductor());
        let mu = SFunc::constant(&field, 2, field.one());
        StructureInstance::new(s, Involution::identity(2), mu).unwrap()
    }

    fn z3_char(field: &CycField, j: i64) -> SFunc {
        SFunc::from_fn(3, |x| field.root_of_unity(3, j * x as i64).unwrap())
    }

    #[test]
    fn kernel_matches_pinned_examples() {
        // g = (χ₁+χ₂)/2 on Z/3, σ = −id: kernel is exactly span{χ₁, χ₂}.
        let ctx = z3_neg();
        let g = z3_char(ctx.field(), 1)
            .add(&z3_char(ctx.field(), 2))
            .scale_rat(&rat(1, 2));
        let kernel = kernel_f_given_g(Equation::Eq1, &g, &ctx);
        assert_eq!(kernel.len(), 2);
        let expected = to_vecs(&[z3_char(ctx.field(), 1), z3_char(ctx.field(), 2)]);
        assert!(same_span(ctx.field(), &to_vecs(&kernel), &expected, 3));

        // g = indicator{1} on ({0,1},·): kernel is span{indicator{1}}.
        let ctx = bool_id();
        let ind = SFunc::new(vec![ctx.field().zero(), ctx.field().one()]);
        let kernel = kernel_f_given_g(Equation::Eq1, &ind, &ctx);
        assert_eq!(kernel.len(), 1);
        assert!(same_span(
            ctx.field(),
            &to_vecs(&kernel),
            &to_vecs(&[ind]),
            2
        ));

        // g = 0: kernel is trivial on square-generated carriers.
        for ctx in [z3_neg(), bool_id()] {
            let zero = SFunc::zero(ctx.field(), ctx.order());
            assert!(kernel_f_given_g(Equation::Eq1, &zero, &ctx).is_empty());
            assert!(kernel_f_given_g(Equation::Eq2, &zero, &ctx).is_empty());
        }
    }

    #[test]
    fn predicted_space_matches_pinned_examples() {
        let ctx = z3_neg();
        let g = z3_char(ctx.field(), 1)
            .add(&z3_char(ctx.field(), 2))
            .scale_rat(&rat(1, 2));
        let pred = predicted_space(Equation::Eq1, &g, &ctx);
        assert_eq!(pred.len(), 2);
        let expected = to_vecs(&[z3_char(ctx.field(), 1), z3_char(ctx.field(), 2)]);
        assert!(same_span(ctx.field(), &to_vecs(&pred), &expected, 3));

        // Star-fixed χ₀ = 1: span{χ₀} with no additive contribution.
        let chi0 = z3_char(ctx.field(), 0);
        let pred = predicted_space(Equation::Eq1, &chi0, &ctx);
        assert_eq!(pred.len(), 1);
        assert!(same_span(
            ctx.field(),
            &to_vecs(&pred),
            &to_vecs(std::slice::from_ref(&chi0)),
            3
        ));

        // Variant 2 predicts span{g} itself.
        let pred = predicted_space(Equation::Eq2, &g, &ctx);
        assert_eq!(pred.len(), 1);
        assert!(same_span(ctx.field(), &to_vecs(&pred), &to_vecs(&[g]), 3));

        // A g outside every family predicts the zero space.
        let stray = SFunc::new(vec![
            ctx.field().integer(2),
            ctx.field().integer(3),
            ctx.field().integer(5),
        ]);
        assert!(predicted_space(Equation::Eq1, &stray, &ctx).is_empty());
        assert!(predicted_space(Equation::Eq2, &stray, &ctx).is_empty());
    }

    #[test]
    fn completeness_passes_on_reference_instances() {
        for ctx in [z3_neg(), bool_id()] {
            for eq in [Equation::Eq1, Equation::Eq2] {
                let reports = verify_completeness(eq, &ctx, 20, 42, "test");
                assert!(reports.iter().all(|r| r.verdict), "{eq} failed");
                // Candidate list covers all half-sums plus the random draws.
                let pair_count = reports
                    .iter()
                    .filter(|r| r.g_kind != GKind::Random)
                    .count();
                assert!(pair_count >= 3);
                assert!(reports.len() >= 23);
            }
        }
    }

    #[test]
    fn completeness_dimensions_follow_the_classification() {
        let ctx = z3_neg();
        let reports = verify_completeness(Equation::Eq1, &ctx, 20, 7, "test");
        let g_pair = z3_char(ctx.field(), 1)
            .add(&z3_char(ctx.field(), 2))
            .scale_rat(&rat(1, 2));
        let chi0 = z3_char(ctx.field(), 0);
        let zero = SFunc::zero(ctx.field(), 3);
        let by_g = |g: &SFunc| reports.iter().find(|r| r.g == *g).unwrap();
        assert_eq!(by_g(&g_pair).g_kind, GKind::StarPair);
        assert_eq!(by_g(&g_pair).kernel_dim, 2);
        assert_eq!(by_g(&chi0).g_kind, GKind::StarFixed);
        assert_eq!(by_g(&chi0).kernel_dim, 1);
        assert_eq!(by_g(&zero).g_kind, GKind::Zero);
        assert_eq!(by_g(&zero).kernel_dim, 0);
        // Half-sum of χ₀ and χ₁ is not of family form: trivial kernel.
        let mixed = chi0.add(&z3_char(ctx.field(), 1)).scale_rat(&rat(1, 2));
        assert_eq!(by_g(&mixed).g_kind, GKind::PairSum);
        assert_eq!(by_g(&mixed).kernel_dim, 0);

        let reports = verify_completeness(Equation::Eq2, &ctx, 20, 7, "test");
        assert_eq!(by_g_in(&reports, &g_pair).kernel_dim, 1);
        assert!(same_span(
            ctx.field(),
            &to_vecs(&by_g_in(&reports, &g_pair).kernel_basis),
            &to_vecs(std::slice::from_ref(&g_pair)),
            3
        ));
        assert_eq!(by_g_in(&reports, &mixed).kernel_dim, 0);
    }

    fn by_g_in<'a>(reports: &'a [CompletenessReport], g: &SFunc) -> &'a CompletenessReport {
        reports.iter().find(|r| r.g == *g).unwrap()
    }

    #[test]
    fn corrupted_predicted_space_flips_every_verdict() {
        let ctx = z3_neg();
        let reports = verify_completeness_opts(Equation::Eq1, &ctx, 5, 42, "test", true);
        assert!(!reports.is_empty());
        assert!(reports.iter().all(|r| !r.verdict));
    }

    #[test]
    fn cube_vanishing_examples() {
        // Z/3, χ = 1, φ = id: 2F(xy) = 0 forces F = 0.
        let s = z3();
        let field = CycField::new(s.session_conductor());
        let one = SFunc::constant(&field, 3, field.one());
        let rep = cube_vanishing_check(&one, &[0, 1, 2], &s).unwrap();
        assert_eq!(rep.kernel_dim, 0);
        assert!(rep.surjective_product);
        assert!(rep.pass);

        // Constant semigroup {0,1} with xy = 1: not square-generated,
        // S·S = {1}.  F(1) is forced to zero but F(0) stays free; the
        // vanishing claim only covers triple products.
        let c = CayleyTable::from_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        let cfield = CycField::new(c.session_conductor());
        let cone = SFunc::constant(&cfield, 2, cfield.one());
        let rep = cube_vanishing_check(&cone, &[0, 1], &c).unwrap();
        assert_eq!(rep.kernel_dim, 1);
        assert!(!rep.surjective_product);
        assert!(rep.vanishes_on_cube);
        assert!(rep.pass);

        // Invalid φ (not a homomorphism of ({0,1},·)) is rejected.
        let b = CayleyTable::from_rows(&[vec![0, 0], vec![0, 1]]).unwrap();
        let bfield = CycField::new(b.session_conductor());
        let bone = SFunc::constant(&bfield, 2, bfield.one());
        assert!(matches!(
            cube_vanishing_check(&bone, &[1, 0], &b).unwrap_err(),
            OracleError::PhiNotHomomorphism { .. }
        ));
        // Non-multiplicative χ is rejected.
        let two = SFunc::constant(&bfield, 2, bfield.integer(2));
        assert!(matches!(
            cube_vanishing_check(&two, &[0, 1], &b).unwrap_err(),
            OracleError::ChiNotMultiplicative { .. }
        ));
    }

    #[test]
    fn transpose_symmetry_examples() {
        for table in [
            z3(),
            CayleyTable::from_rows(&[vec![0, 0], vec![0, 1]]).unwrap(),
            CayleyTable::from_rows(&[vec![0, 0], vec![1, 1]]).unwrap(), // x·y = x
            CayleyTable::from_rows(&[vec![0]]).unwrap(),
        ] {
            let field = CycField::new(table.session_conductor());
            let rep = transpose_symmetry_check(&table, &field);
            assert!(rep.pass, "failed on {table:?}");
        }
    }

    #[test]
    fn companion_grid_finds_exactly_the_constructed_solutions() {
        // Z/3, σ = −id: {0, 1, (χ₁+χ₂)/2}.
        let ctx = z3_neg();
        let rep = companion_grid_completeness(&ctx).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.solutions_found, 3);
        assert_eq!(rep.constructed, 3);

        // One-element carrier: g(e) + g(e) = 2g(e)² forces g(e) ∈ {0, 1}.
        let s1 = CayleyTable::from_rows(&[vec![0]]).unwrap();
        let f1 = CycField::new(s1.session_conductor());
        let mu1 = SFunc::constant(&f1, 1, f1.one());
        let ctx1 = StructureInstance::new(s1, Involution::identity(1), mu1).unwrap();
        let rep = companion_grid_completeness(&ctx1).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.solutions_found, 2);

        // ({0,1},·): the three multiplicative functions, all star-fixed.
        let rep = companion_grid_completeness(&bool_id()).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.solutions_found, 3);
    }

    #[test]
    fn central_weighted_examples() {
        let ctx = z3_neg();
        let g = z3_char(ctx.field(), 1)
            .add(&z3_char(ctx.field(), 2))
            .scale_rat(&rat(1, 2));
        let rep = central_weighted_check(&g, &ctx);
        assert_eq!(rep.full_kernel_dim, 2);
        assert_eq!(rep.central_solution_dim, 2);
        assert_eq!(rep.weighted_residual_zero, Some(true));
        assert!(rep.pass);
        assert!(!rep.noncentral_present);

        // Non-family g: trivial kernel, vacuous pass.
        let stray = SFunc::new(vec![
            ctx.field().integer(2),
            ctx.field().integer(3),
            ctx.field().integer(5),
        ]);
        let rep = central_weighted_check(&stray, &ctx);
        assert_eq!(rep.full_kernel_dim, 0);
        assert_eq!(rep.weighted_residual_zero, None);
        assert!(rep.pass);
    }

    #[test]
    fn census_order_two_matches_frozen_counts() {
        let config = CensusConfig {
            max_order: 2,
            seed: 0,
            random_g_count: 5,
            grid_max_order: 3,
        };
        let report = census_verify(&config).unwrap();
        assert_eq!(report.total_failures, 0, "{:?}", report.failures);
        assert_eq!(report.orders.len(), 2);
        assert_eq!(report.orders[0].order, 1);
        assert_eq!(report.orders[0].tables_scanned, 1);
        assert_eq!(report.orders[0].square_generated, 1);
        assert_eq!(report.orders[0].instances, 1);
        // Order 2: of the 8 associative tables, the two constants, the
        // two-element group, and the idempotent-squares table x≡y are not
        // square-generated; min, max, and both projections are.
        assert_eq!(report.orders[1].tables_scanned, 8);
        assert_eq!(report.orders[1].square_generated, 4);
        assert_eq!(report.orders[1].instances, 6);
        assert_eq!(report.total_scanned, 9);
    }

    #[test]
    fn census_is_deterministic() {
        let config = CensusConfig {
            max_order: 2,
            seed: 987,
            random_g_count: 8,
            grid_max_order: 2,
        };
        let a = serde_json::to_string(&census_verify(&config).unwrap()).unwrap();
        let b = serde_json::to_string(&census_verify(&config).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn derived_seeds_spread() {
        let s1 = derive_seed(0, &[1, 2, 0, 0, 0]);
        let s2 = derive_seed(0, &[1, 2, 0, 0, 1]);
        let s3 = derive_seed(0, &[2, 2, 0, 0, 0]);
        let s4 = derive_seed(1, &[1, 2, 0, 0, 0]);
        let all = [s1, s2, s3, s4];
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                assert_ne!(all[i], all[j]);
            }
        }
        // And stable across calls.
        assert_eq!(s1, derive_seed(0, &[1, 2, 0, 0, 0]));
    }
}

#[cfg(test)]
mod timing_probe {
    use super::*;

    #[test]
    #[ignore = "manual timing probe for the full sweep"]
    fn census_order_three_probe() {
        let t = std::time::Instant::now();
        let report = census_verify(&CensusConfig {
            max_order: 3,
            ..CensusConfig::default()
        })
        .unwrap();
        eprintln!(
            "order<=3: {:?}, orders={:?} failures={}",
            t.elapsed(),
            report.orders,
            report.total_failures
        );
        assert_eq!(report.total_failures, 0, "{:?}", report.failures);
    }

    #[test]
    #[ignore = "manual timing probe for the full sweep"]
    fn census_order_four_probe() {
        let t = std::time::Instant::now();
        let report = census_verify(&CensusConfig::default()).unwrap();
        eprintln!(
            "order<=4: {:?}, orders={:?} failures={}",
            t.elapsed(),
            report.orders,
            report.total_failures
        );
        assert_eq!(report.total_failures, 0, "{:?}", report.failures);
    }
}
