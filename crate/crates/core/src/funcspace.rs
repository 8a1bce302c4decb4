//! Function spaces on a finite semigroup: the star operation, even/odd
//! decomposition, structural predicates, and exhaustive enumerations of
//! multiplicative functions, admissible weights μ, and additive functions.
//!
//! The multiplicative enumeration is *provably complete*: if x has monogenic
//! data (i, p) then χ(x)^i = χ(x)^(i+p), so χ(x)(χ(x)^p − 1)·χ(x)^(i−1) = 0
//! forces χ(x) to be 0 or a p-th root of unity.  The backtracking search
//! therefore only needs the candidate set {0} ∪ {p-th roots} per element.

use crate::linalg::Matrix;
use crate::scalar::{rat, CycField, Cyclotomic, Rational};
use crate::semigroup::{CayleyTable, Involution};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FuncspaceError {
    #[error("function has {got} values, semigroup has {want} elements")]
    WrongLength { got: usize, want: usize },
    #[error("function is not multiplicative: fails at ({x},{y})")]
    NotMultiplicative { x: usize, y: usize },
    #[error("subset is not closed under composition: {x}*{y} = {product} is outside")]
    SubsetNotClosed { x: usize, y: usize, product: usize },
    #[error("subset is not invariant under the involution: {x} maps outside to {image}")]
    SubsetNotInvariant { x: usize, image: usize },
}

/// A function S → ℚ(ζₙ), stored as one scalar per element index.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SFunc {
    values: Vec<Cyclotomic>,
}

impl SFunc {
    pub fn new(values: Vec<Cyclotomic>) -> SFunc {
        assert!(!values.is_empty(), "functions live on nonempty semigroups");
        debug_assert!(values
            .windows(2)
            .all(|w| w[0].conductor() == w[1].conductor()));
        SFunc { values }
    }

    pub fn zero(field: &CycField, n: usize) -> SFunc {
        SFunc::new(vec![field.zero(); n])
    }

    pub fn constant(field: &CycField, n: usize, value: Cyclotomic) -> SFunc {
        let _ = field;
        SFunc::new(vec![value; n])
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> Cyclotomic) -> SFunc {
        SFunc::new((0..n).map(f).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn get(&self, x: usize) -> &Cyclotomic {
        &self.values[x]
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Cyclotomic> {
        self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &SFunc) -> SFunc {
        SFunc::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &SFunc) -> SFunc {
        SFunc::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> SFunc {
        SFunc::new(self.values.iter().map(|a| -a).collect())
    }

    /// Pointwise scaling by a field scalar.
    pub fn scale(&self, c: &Cyclotomic) -> SFunc {
        SFunc::new(
            self.values
                .iter()
                .map(|a| a.checked_mul(c).expect("same field"))
                .collect(),
        )
    }

    pub fn scale_rat(&self, r: &Rational) -> SFunc {
        SFunc::new(self.values.iter().map(|a| a.scale(r)).collect())
    }

    /// Pointwise product.
    pub fn pointwise_mul(&self, other: &SFunc) -> SFunc {
        SFunc::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.checked_mul(b).expect("same field"))
                .collect(),
        )
    }
}

impl fmt::Debug for SFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SFunc[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for SFunc {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.values.serialize(serializer)
    }
}

/// A function defined only on a subset of the semigroup, stored full-length
/// with an explicit mask (off-mask entries are zero by construction).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskedFunc {
    pub func: SFunc,
    pub mask: Vec<bool>,
}

impl MaskedFunc {
    pub fn new(func: SFunc, mask: Vec<bool>) -> MaskedFunc {
        assert_eq!(func.len(), mask.len());
        debug_assert!(mask
            .iter()
            .enumerate()
            .all(|(x, &m)| m || func.get(x).is_zero()));
        MaskedFunc { func, mask }
    }

    /// Full-domain function (mask everywhere true).
    pub fn full(func: SFunc) -> MaskedFunc {
        let mask = vec![true; func.len()];
        MaskedFunc { func, mask }
    }
}

impl Serialize for MaskedFunc {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("MaskedFunc", 2)?;
        st.serialize_field("values", &self.func)?;
        st.serialize_field("mask", &self.mask)?;
        st.end()
    }
}

/// A validated admissible weight: multiplicative, nowhere zero, and
/// μ(x·σ(x)) = 1 for every x.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuWitness {
    pub func: SFunc,
    pub sigma: Involution,
}

impl MuWitness {
    pub fn new(
        func: SFunc,
        sigma: &Involution,
        s: &CayleyTable,
    ) -> Result<MuWitness, MuError> {
        if func.len() != s.order() {
            return Err(MuError::WrongLength {
                got: func.len(),
                want: s.order(),
            });
        }
        if let Some((x, y)) = multiplicative_counterexample(&func, s) {
            return Err(MuError::NotMultiplicative { x, y });
        }
        if let Some(x) = (0..s.order()).find(|&x| func.get(x).is_zero()) {
            return Err(MuError::Vanishes { x });
        }
        let one = func.get(0).field().one();
        for x in 0..s.order() {
            let xsx = s.mul(x, sigma.apply(x));
            if func.get(xsx) != &one {
                return Err(MuError::ConstraintFails { x, value: xsx });
            }
        }
        Ok(MuWitness {
            func,
            sigma: sigma.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MuError {
    #[error("weight has {got} values, semigroup has {want} elements")]
    WrongLength { got: usize, want: usize },
    #[error("weight is not multiplicative: fails at ({x},{y})")]
    NotMultiplicative { x: usize, y: usize },
    #[error("weight vanishes at {x}")]
    Vanishes { x: usize },
    #[error("weight constraint fails: value at {x}*sigma({x}) = {value} is not 1")]
    ConstraintFails { x: usize, value: usize },
}

// ---------------------------------------------------------------------------
// Star operation and even/odd decomposition.
// ---------------------------------------------------------------------------

/// The star operation F*(x) = μ(x)·F(σ(x)).  It is an involution because
/// μ(x)μ(σ(x)) = μ(x·σ(x)) = 1.
pub fn star(f: &SFunc, sigma: &Involution, mu: &SFunc) -> SFunc {
    SFunc::from_fn(f.len(), |x| {
        mu.get(x)
            .checked_mul(f.get(sigma.apply(x)))
            .expect("same field")
    })
}

/// Even part fᵉ = (f + f*)/2.
pub fn even_part(f: &SFunc, sigma: &Involution, mu: &SFunc) -> SFunc {
    f.add(&star(f, sigma, mu)).scale_rat(&rat(1, 2))
}

/// Odd part fᵒ = (f − f*)/2.
pub fn odd_part(f: &SFunc, sigma: &Involution, mu: &SFunc) -> SFunc {
    f.sub(&star(f, sigma, mu)).scale_rat(&rat(1, 2))
}

// ---------------------------------------------------------------------------
// Predicates.
// ---------------------------------------------------------------------------

fn multiplicative_counterexample(f: &SFunc, s: &CayleyTable) -> Option<(usize, usize)> {
    let n = s.order();
    for x in 0..n {
        for y in 0..n {
            let lhs = f.get(s.mul(x, y));
            let rhs = f.get(x).checked_mul(f.get(y)).expect("same field");
            if lhs != &rhs {
                return Some((x, y));
            }
        }
    }
    None
}

/// f(xy) = f(x)·f(y) for all pairs.
pub fn is_multiplicative(f: &SFunc, s: &CayleyTable) -> bool {
    multiplicative_counterexample(f, s).is_none()
}

/// f(xy) = f(x) + f(y) for all pairs.
pub fn is_additive(f: &SFunc, s: &CayleyTable) -> bool {
    let n = s.order();
    for x in 0..n {
        for y in 0..n {
            if f.get(s.mul(x, y)) != &(f.get(x) + f.get(y)) {
                return false;
            }
        }
    }
    true
}

/// f(xy) = f(yx) for all pairs.
pub fn is_central(f: &SFunc, s: &CayleyTable) -> bool {
    let n = s.order();
    for x in 0..n {
        for y in x + 1..n {
            if f.get(s.mul(x, y)) != f.get(s.mul(y, x)) {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Enumerations.
// ---------------------------------------------------------------------------

/// All multiplicative functions S → ℂ (values land in the session field by
/// the root-order bound), including the zero function.  Deterministic order:
/// backtracking over element indices with candidate values tried as
/// 0, 1, ζ_p, ζ_p², …
pub fn enumerate_multiplicative(s: &CayleyTable, field: &CycField) -> Vec<SFunc> {
    let n = s.order();
    // Candidate values per element: {0} ∪ {roots of unity of order dividing
    // the element's period}.
    let candidates: Vec<Vec<Cyclotomic>> = (0..n)
        .map(|x| {
            let p = s.monogenic_data(x).period as u64;
            let mut vals = vec![field.zero()];
            for j in 0..p {
                vals.push(field.root_of_unity(p, j as i64).expect("period divides conductor"));
            }
            vals
        })
        .collect();

    let mut out = Vec::new();
    let mut assigned: Vec<Cyclotomic> = Vec::with_capacity(n);
    search_multiplicative(s, &candidates, &mut assigned, &mut out);
    out
}

fn search_multiplicative(
    s: &CayleyTable,
    candidates: &[Vec<Cyclotomic>],
    assigned: &mut Vec<Cyclotomic>,
    out: &mut Vec<SFunc>,
) {
    let n = s.order();
    let k = assigned.len();
    if k == n {
        out.push(SFunc::new(assigned.clone()));
        return;
    }
    'next_candidate: for v in &candidates[k] {
        assigned.push(v.clone());
        // Check every pair whose three participants are all assigned and
        // involve the newest element (earlier pairs were checked earlier).
        for x in 0..=k {
            for y in 0..=k {
                let xy = s.mul(x, y);
                if xy > k || (x != k && y != k && xy != k) {
                    continue;
                }
                let prod = assigned[x].checked_mul(&assigned[y]).expect("same field");
                if assigned[xy] != prod {
                    assigned.pop();
                    continue 'next_candidate;
                }
            }
        }
        search_multiplicative(s, candidates, assigned, out);
        assigned.pop();
    }
}

/// All admissible weights for (S, σ): multiplicative, nowhere zero, and
/// μ(x·σ(x)) = 1 everywhere.  Always contains the constant 1.
pub fn enumerate_mu(s: &CayleyTable, sigma: &Involution, field: &CycField) -> Vec<MuWitness> {
    enumerate_multiplicative(s, field)
        .into_iter()
        .filter_map(|f| MuWitness::new(f, sigma, s).ok())
        .collect()
}

/// Basis of the space of additive functions on the masked subsemigroup:
/// solutions of A(xy) = A(x) + A(y) over pairs inside the subset, returned
/// as full-length vectors vanishing off the subset.
///
/// On any finite subsemigroup this space is zero (x has an idempotent power
/// e, A(e) = 2A(e) forces A(e) = 0, and A(e) = kA(x) forces A(x) = 0), which
/// is exactly the finite obstruction this oracle makes checkable.
pub fn additive_space(
    s: &CayleyTable,
    mask: &[bool],
    field: &CycField,
) -> Result<Vec<SFunc>, FuncspaceError> {
    let rows = additive_rows(s, mask, field)?;
    masked_kernel(s, mask, field, rows)
}

/// Basis of the *odd* additive functions on the masked subsemigroup:
/// additive and A(σ(x)) = −A(x).  The subset must be σ-invariant.
pub fn odd_additive_space(
    s: &CayleyTable,
    sigma: &Involution,
    mask: &[bool],
    field: &CycField,
) -> Result<Vec<SFunc>, FuncspaceError> {
    let sub: Vec<usize> = (0..s.order()).filter(|&x| mask[x]).collect();
    for &x in &sub {
        let image = sigma.apply(x);
        if !mask[image] {
            return Err(FuncspaceError::SubsetNotInvariant { x, image });
        }
    }
    let mut rows = additive_rows(s, mask, field)?;
    // Oddness rows: A(σx) + A(x) = 0.
    let col_of: Vec<Option<usize>> = column_index(s.order(), mask);
    for &x in &sub {
        let mut row = vec![field.zero(); sub.len()];
        let cx = col_of[x].unwrap();
        let csx = col_of[sigma.apply(x)].unwrap();
        row[cx] = &row[cx] + &field.one();
        row[csx] = &row[csx] + &field.one();
        rows.push(row);
    }
    masked_kernel(s, mask, field, rows)
}

fn column_index(n: usize, mask: &[bool]) -> Vec<Option<usize>> {
    let mut col_of = vec![None; n];
    let mut next = 0;
    for x in 0..n {
        if mask[x] {
            col_of[x] = Some(next);
            next += 1;
        }
    }
    col_of
}

fn additive_rows(
    s: &CayleyTable,
    mask: &[bool],
    field: &CycField,
) -> Result<Vec<Vec<Cyclotomic>>, FuncspaceError> {
    let n = s.order();
    assert_eq!(mask.len(), n);
    let sub: Vec<usize> = (0..n).filter(|&x| mask[x]).collect();
    let col_of = column_index(n, mask);
    let mut rows = Vec::new();
    for &x in &sub {
        for &y in &sub {
            let xy = s.mul(x, y);
            if !mask[xy] {
                return Err(FuncspaceError::SubsetNotClosed { x, y, product: xy });
            }
            // A(xy) − A(x) − A(y) = 0.
            let mut row = vec![field.zero(); sub.len()];
            let one = field.one();
            let cxy = col_of[xy].unwrap();
            row[cxy] = &row[cxy] + &one;
            let cx = col_of[x].unwrap();
            row[cx] = &row[cx] - &one;
            let cy = col_of[y].unwrap();
            row[cy] = &row[cy] - &one;
            rows.push(row);
        }
    }
    Ok(rows)
}

fn masked_kernel(
    s: &CayleyTable,
    mask: &[bool],
    field: &CycField,
    rows: Vec<Vec<Cyclotomic>>,
) -> Result<Vec<SFunc>, FuncspaceError> {
    let n = s.order();
    let sub: Vec<usize> = (0..n).filter(|&x| mask[x]).collect();
    let m = Matrix::from_rows(field, rows, sub.len());
    let kern = m.kernel_basis();
    Ok(kern
        .into_iter()
        .map(|v| {
            let mut full = vec![field.zero(); n];
            for (ci, &x) in sub.iter().enumerate() {
                full[x] = v[ci].clone();
            }
            SFunc::new(full)
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Null ideal.
// ---------------------------------------------------------------------------

/// The null ideal of a multiplicative function: I = χ⁻¹(0).  The structural
/// invariants (two-sided ideal, complement closed under composition) are
/// consequences of multiplicativity and re-verified at construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NullIdeal {
    pub members: Vec<usize>,
}

impl NullIdeal {
    pub fn of(chi: &SFunc, s: &CayleyTable) -> Result<NullIdeal, FuncspaceError> {
        if chi.len() != s.order() {
            return Err(FuncspaceError::WrongLength {
                got: chi.len(),
                want: s.order(),
            });
        }
        if let Some((x, y)) = multiplicative_counterexample(chi, s) {
            return Err(FuncspaceError::NotMultiplicative { x, y });
        }
        let n = s.order();
        let in_ideal: Vec<bool> = (0..n).map(|x| chi.get(x).is_zero()).collect();
        // Re-verify the ideal laws (they follow from χ(xy) = χ(x)χ(y) and the
        // absence of zero divisors in a field; violations would mean a bug).
        for x in 0..n {
            for y in 0..n {
                let xy = s.mul(x, y);
                if (in_ideal[x] || in_ideal[y]) && !in_ideal[xy] {
                    unreachable!("null-ideal absorption violated at ({x},{y})");
                }
                if !in_ideal[x] && !in_ideal[y] && in_ideal[xy] {
                    unreachable!("null-ideal complement not closed at ({x},{y})");
                }
            }
        }
        Ok(NullIdeal {
            members: (0..n).filter(|&x| in_ideal[x]).collect(),
        })
    }

    /// Mask of the complement S ∖ I (true = outside the ideal).
    pub fn complement_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![true; n];
        for &x in &self.members {
            mask[x] = false;
        }
        mask
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// The convention for the null ideal recorded in every report that mentions
/// one: the preimage of zero under χ.
pub const NULL_IDEAL_CONVENTION: &str = "preimage of zero under chi";
