//! Exact scalar arithmetic in cyclotomic fields ℚ(ζₙ).
//!
//! Function values on a finite semigroup live in a single *session field*
//! ℚ(ζₙ): the rationals extended by a primitive n-th root of unity.  Elements
//! are stored as coordinate vectors over the power basis
//! `1, ζ, …, ζ^(φ(n)-1)` and reduced modulo the n-th cyclotomic polynomial
//! Φₙ, so equality (in particular equality with zero) is decidable and no
//! floating point is involved anywhere.
//!
//! The conductor n is fixed per field; mixing scalars from fields with
//! different conductors is an error rather than an implicit coercion, which
//! keeps every arithmetic path deterministic.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Exact rational number (arbitrary precision).
pub type Rational = BigRational;

/// Convenience constructor: the rational `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience constructor: the rational `v/1`.
pub fn rat_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Errors raised by scalar arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u64, right: u64 },
    #[error("root order {order} does not divide the field conductor {conductor}")]
    OrderNotInConductor { order: u64, conductor: u64 },
    #[error("root order must be positive")]
    ZeroOrder,
    #[error("coefficient vector of length {got} exceeds field degree {degree}")]
    CoeffsTooLong { got: usize, degree: usize },
}

/// Immutable per-conductor data shared by all scalars of one field.
struct FieldData {
    conductor: u64,
    /// φ(conductor) = degree of the cyclotomic polynomial.
    degree: usize,
    /// Monic Φₙ as rational coefficients, constant term first (length degree+1).
    minimal_poly: Vec<Rational>,
    /// Row j holds the reduced coordinates of ζ^(degree+j), j = 0 .. degree-1.
    /// Used to fold the high half of a product back into the power basis.
    overflow: Vec<Vec<Rational>>,
    /// Row k holds the reduced coordinates of ζ^k, k = 0 .. conductor-1.
    powers: Vec<Vec<Rational>>,
}

/// A cyclotomic field ℚ(ζₙ), cheaply clonable (shared immutable tables).
#[derive(Clone)]
pub struct CycField(Arc<FieldData>);

impl fmt::Debug for CycField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycField(conductor={})", self.0.conductor)
    }
}

impl PartialEq for CycField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.conductor == other.0.conductor
    }
}
impl Eq for CycField {}

impl CycField {
    /// Builds the field ℚ(ζₙ). `conductor` must be at least 1.
    pub fn new(conductor: u64) -> CycField {
        assert!(conductor >= 1, "conductor must be positive");
        let phi_n = cyclotomic_poly(conductor);
        let degree = phi_n.len() - 1;
        let minimal_poly: Vec<Rational> = phi_n
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();

        // Coordinates of ζ^degree: x^degree ≡ -(c_0 + c_1 x + …) mod Φₙ.
        let top: Vec<Rational> = minimal_poly[..degree].iter().map(|c| -c).collect();

        // Iteratively compute ζ^k for k = 0 .. max(conductor, 2*degree-1).
        let needed = (conductor as usize).max(2 * degree);
        let mut all_powers: Vec<Vec<Rational>> = Vec::with_capacity(needed);
        let mut cur = vec![Rational::zero(); degree];
        cur[0] = Rational::one();
        all_powers.push(cur.clone());
        for _ in 1..needed {
            // Multiply by ζ: shift up, fold the spilled top coefficient.
            let spill = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = Rational::zero();
            if !spill.is_zero() {
                for i in 0..degree {
                    if !top[i].is_zero() {
                        cur[i] += &spill * &top[i];
                    }
                }
            }
            all_powers.push(cur.clone());
        }

        let overflow: Vec<Vec<Rational>> = (0..degree.saturating_sub(1))
            .map(|j| all_powers[degree + j].clone())
            .collect();
        let powers: Vec<Vec<Rational>> = all_powers[..conductor as usize].to_vec();

        CycField(Arc::new(FieldData {
            conductor,
            degree,
            minimal_poly,
            overflow,
            powers,
        }))
    }

    pub fn conductor(&self) -> u64 {
        self.0.conductor
    }

    /// Degree of the field over ℚ, i.e. φ(conductor).
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn zero(&self) -> Cyclotomic {
        Cyclotomic {
            field: self.clone(),
            coeffs: vec![Rational::zero(); self.0.degree],
        }
    }

    pub fn one(&self) -> Cyclotomic {
        self.integer(1)
    }

    pub fn integer(&self, v: i64) -> Cyclotomic {
        self.rational(rat_int(v))
    }

    pub fn rational(&self, r: Rational) -> Cyclotomic {
        let mut coeffs = vec![Rational::zero(); self.0.degree];
        coeffs[0] = r;
        Cyclotomic {
            field: self.clone(),
            coeffs,
        }
    }

    /// The root of unity ζₙᵏ where n = `order` must divide the conductor.
    /// Negative `k` is taken modulo `order`.
    pub fn root_of_unity(&self, order: u64, k: i64) -> Result<Cyclotomic, ScalarError> {
        if order == 0 {
            return Err(ScalarError::ZeroOrder);
        }
        if !self.0.conductor.is_multiple_of(order) {
            return Err(ScalarError::OrderNotInConductor {
                order,
                conductor: self.0.conductor,
            });
        }
        let k_mod = k.rem_euclid(order as i64) as u64;
        let exponent = (k_mod * (self.0.conductor / order)) as usize;
        Ok(Cyclotomic {
            field: self.clone(),
            coeffs: self.0.powers[exponent].clone(),
        })
    }

    /// Builds a scalar from power-basis coordinates (constant term first).
    /// Shorter vectors are zero-padded; longer ones are rejected.
    pub fn from_coeffs(&self, mut coeffs: Vec<Rational>) -> Result<Cyclotomic, ScalarError> {
        if coeffs.len() > self.0.degree {
            return Err(ScalarError::CoeffsTooLong {
                got: coeffs.len(),
                degree: self.0.degree,
            });
        }
        coeffs.resize(self.0.degree, Rational::zero());
        Ok(Cyclotomic {
            field: self.clone(),
            coeffs,
        })
    }
}

/// An element of a cyclotomic field, in power-basis coordinates.
#[derive(Clone)]
pub struct Cyclotomic {
    field: CycField,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor()
    }

    /// Power-basis coordinates, constant term first.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// True iff the element lies in ℚ (no root-of-unity component).
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_same_field(&self, other: &Cyclotomic) -> Result<(), ScalarError> {
        if self.field.conductor() != other.field.conductor() {
            return Err(ScalarError::ConductorMismatch {
                left: self.field.conductor(),
                right: other.field.conductor(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Cyclotomic) -> Result<Cyclotomic, ScalarError> {
        self.check_same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Cyclotomic {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Cyclotomic) -> Result<Cyclotomic, ScalarError> {
        self.check_same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Cyclotomic {
            field: self.field.clone(),
            coeffs,
        })
    }

    /// Multiplies by a plain rational (no reduction needed).
    pub fn scale(&self, r: &Rational) -> Cyclotomic {
        if r.is_zero() {
            return self.field.zero();
        }
        if r.is_one() {
            return self.clone();
        }
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Cyclotomic) -> Result<Cyclotomic, ScalarError> {
        self.check_same_field(other)?;
        // Fast paths: most values occurring in the sweeps are rational
        // (0, ±1, ±2, ½, …), so skip the convolution whenever possible.
        if let Some(r) = self.as_rational() {
            return Ok(other.scale(r));
        }
        if let Some(r) = other.as_rational() {
            return Ok(self.scale(r));
        }
        let d = self.field.0.degree;
        let mut conv = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] += a * b;
            }
        }
        let mut coeffs: Vec<Rational> = conv[..d].to_vec();
        for j in 0..d.saturating_sub(1) {
            let spill = &conv[d + j];
            if spill.is_zero() {
                continue;
            }
            let row = &self.field.0.overflow[j];
            for i in 0..d {
                if !row[i].is_zero() {
                    coeffs[i] += spill * &row[i];
                }
            }
        }
        Ok(Cyclotomic {
            field: self.field.clone(),
            coeffs,
        })
    }

    /// Multiplicative inverse, via the extended Euclidean algorithm in ℚ[x]
    /// against the minimal polynomial Φₙ (which is irreducible, so every
    /// nonzero element is invertible).
    pub fn inv(&self) -> Result<Cyclotomic, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(self.field.rational(r.recip()));
        }
        let a = poly_trim(self.coeffs.clone());
        let modulus = self.field.0.minimal_poly.clone();
        let (g, u) = poly_half_egcd(a, modulus.clone());
        debug_assert_eq!(g.len(), 1, "gcd with an irreducible modulus is constant");
        let g0 = g[0].clone();
        let scaled: Vec<Rational> = u.iter().map(|c| c / &g0).collect();
        let (_, rem) = poly_divmod(scaled, &modulus);
        let mut coeffs = rem;
        coeffs.resize(self.field.0.degree, Rational::zero());
        Ok(Cyclotomic {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn checked_div(&self, other: &Cyclotomic) -> Result<Cyclotomic, ScalarError> {
        self.check_same_field(other)?;
        let inv = other.inv()?;
        self.checked_mul(&inv)
    }

    /// Complex conjugation: the field automorphism ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Cyclotomic {
        if self.is_rational() {
            return self.clone();
        }
        let n = self.field.0.conductor as usize;
        let mut acc = vec![Rational::zero(); self.field.0.degree];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &self.field.0.powers[(n - j) % n];
            for i in 0..acc.len() {
                if !row[i].is_zero() {
                    acc[i] += c * &row[i];
                }
            }
        }
        Cyclotomic {
            field: self.field.clone(),
            coeffs: acc,
        }
    }

    /// Non-negative integer power (square and multiply).
    pub fn pow(&self, mut e: u64) -> Cyclotomic {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor() == other.field.conductor() && self.coeffs == other.coeffs
    }
}
impl Eq for Cyclotomic {}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used only for canonical/deterministic listings
/// (conductor first, then coordinates lexicographically).
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .conductor()
            .cmp(&other.field.conductor())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$checked(rhs).expect("scalar field mismatch")
            }
        }
        impl std::ops::$trait<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$checked(&rhs).expect("scalar field mismatch")
            }
        }
        impl std::ops::$trait<Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$checked(&rhs).expect("scalar field mismatch")
            }
        }
        impl std::ops::$trait<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$checked(rhs).expect("scalar field mismatch")
            }
        }
    };
}
impl_binop!(Add, add, checked_add);
impl_binop!(Sub, sub, checked_sub);
impl_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}
impl std::ops::Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one();
            if k == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !unit_coeff {
                    write!(f, "{}*", mag)?;
                }
                if k == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc[{}]({})", self.field.conductor(), self)
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Cyclotomic", 2)?;
        st.serialize_field("conductor", &self.field.conductor())?;
        let coeffs: Vec<[String; 2]> = self
            .coeffs
            .iter()
            .map(|c| [c.numer().to_string(), c.denom().to_string()])
            .collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            conductor: u64,
            coeffs: Vec<[String; 2]>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.conductor == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let field = CycField::new(raw.conductor);
        let mut coeffs = Vec::with_capacity(raw.coeffs.len());
        for [n, d] in &raw.coeffs {
            let numer: BigInt = n
                .parse()
                .map_err(|e| D::Error::custom(format!("bad numerator {n:?}: {e}")))?;
            let denom: BigInt = d
                .parse()
                .map_err(|e| D::Error::custom(format!("bad denominator {d:?}: {e}")))?;
            if denom.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            coeffs.push(Rational::new(numer, denom));
        }
        field
            .from_coeffs(coeffs)
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

// ---------------------------------------------------------------------------
// Integer / rational polynomial helpers (dense, constant term first).
// ---------------------------------------------------------------------------

/// The n-th cyclotomic polynomial over ℤ, computed by exact division:
/// Φₙ = (xⁿ - 1) / ∏_{d|n, d<n} Φ_d.
fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    let mut num = vec![BigInt::from(0); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::from(1);
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_poly(d);
            num = int_poly_div_exact(&num, &phi_d);
        }
    }
    num
}

/// Exact division of integer polynomials where the divisor is monic and the
/// remainder is known to vanish.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c == &BigInt::from(1)).unwrap_or(false));
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![BigInt::from(0); qn + 1];
    for k in (0..=qn).rev() {
        let lead = rem[k + dn].clone();
        if lead != BigInt::from(0) {
            quot[k] = lead.clone();
            for i in 0..=dn {
                let delta = &lead * &den[i];
                rem[k + i] -= delta;
            }
        }
    }
    debug_assert!(rem.iter().all(|c| c == &BigInt::from(0)));
    quot
}

fn poly_trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

fn poly_is_zero(v: &[Rational]) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// Division with remainder in ℚ[x]; `den` must be nonzero.
fn poly_divmod(num: Vec<Rational>, den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let den = poly_trim(den.to_vec());
    assert!(!poly_is_zero(&den), "polynomial division by zero");
    let mut rem = poly_trim(num);
    let dn = den.len() - 1;
    if rem.len() - 1 < dn || poly_is_zero(&rem) {
        return (vec![Rational::zero()], rem);
    }
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![Rational::zero(); qn + 1];
    let lead_inv = den[dn].recip();
    for k in (0..=qn).rev() {
        let coef = &rem[k + dn] * &lead_inv;
        if !coef.is_zero() {
            quot[k] = coef.clone();
            for i in 0..=dn {
                let delta = &coef * &den[i];
                rem[k + i] -= delta;
            }
        }
    }
    (poly_trim(quot), poly_trim(rem))
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    poly_trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(out)
}

/// Half-extended gcd: returns (g, u) with u·a ≡ g (mod b) and g = gcd(a, b).
fn poly_half_egcd(a: Vec<Rational>, b: Vec<Rational>) -> (Vec<Rational>, Vec<Rational>) {
    let mut r0 = poly_trim(a);
    let mut r1 = poly_trim(b);
    let mut u0 = vec![Rational::one()];
    let mut u1 = vec![Rational::zero()];
    while !poly_is_zero(&r1) {
        let (q, rem) = poly_divmod(r0.clone(), &r1);
        let new_u = poly_sub(&u0, &poly_mul(&q, &u1));
        r0 = r1;
        r1 = rem;
        u0 = u1;
        u1 = new_u;
    }
    (r0, u0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(n: u64) -> CycField {
        CycField::new(n)
    }

    /// Random field element with small sparse coordinates.
    fn random_scalar(field: &CycField, rng: &mut ChaCha8Rng) -> Cyclotomic {
        let coeffs: Vec<Rational> = (0..field.degree())
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Rational::zero()
                } else {
                    rat(rng.gen_range(-3..=3), rng.gen_range(1..=3))
                }
            })
            .collect();
        field.from_coeffs(coeffs).unwrap()
    }

    #[test]
    fn degrees_match_euler_phi() {
        // φ(n) for n = 1, 2, 3, 4, 6, 12, 24, 120.
        for (n, phi) in [(1, 1), (2, 1), (3, 2), (4, 2), (6, 2), (12, 4), (24, 8), (120, 32)] {
            assert_eq!(f(n).degree(), phi, "phi({n})");
        }
    }

    #[test]
    fn unit_roots_basic_values() {
        // ζ₁ = 1.
        assert!(f(1).root_of_unity(1, 0).unwrap().is_one());
        // ζ₄² = -1, in its own field and in a larger one.
        assert_eq!(f(4).root_of_unity(4, 2).unwrap(), f(4).integer(-1));
        assert_eq!(f(12).root_of_unity(4, 2).unwrap(), f(12).integer(-1));
        // ζ₂ = -1.
        assert_eq!(f(2).root_of_unity(2, 1).unwrap(), f(2).integer(-1));
        // Negative exponents wrap.
        assert_eq!(
            f(12).root_of_unity(12, -5).unwrap(),
            f(12).root_of_unity(12, 7).unwrap()
        );
    }

    #[test]
    fn third_roots_sum_to_minus_one() {
        // 1 + ζ₃ + ζ₃² = 0, so ζ₃ + ζ₃² = -1 (checked in conductors 3 and 6).
        for n in [3u64, 6] {
            let fld = f(n);
            let z1 = fld.root_of_unity(3, 1).unwrap();
            let z2 = fld.root_of_unity(3, 2).unwrap();
            assert_eq!(&z1 + &z2, fld.integer(-1), "conductor {n}");
        }
    }

    #[test]
    fn root_powers_are_consistent() {
        for n in [1u64, 2, 3, 4, 6, 12, 24] {
            let fld = f(n);
            let z = fld.root_of_unity(n, 1).unwrap();
            for k in 0..(2 * n) {
                assert_eq!(
                    z.pow(k),
                    fld.root_of_unity(n, k as i64).unwrap(),
                    "zeta_{n}^{k}"
                );
            }
            assert!(z.pow(n).is_one(), "zeta_{n}^{n} = 1");
        }
    }

    #[test]
    fn order_must_divide_conductor() {
        let err = f(4).root_of_unity(3, 1).unwrap_err();
        assert_eq!(
            err,
            ScalarError::OrderNotInConductor {
                order: 3,
                conductor: 4
            }
        );
    }

    #[test]
    fn conductor_mismatch_is_an_error() {
        let a = f(3).one();
        let b = f(4).one();
        assert_eq!(
            a.checked_add(&b).unwrap_err(),
            ScalarError::ConductorMismatch { left: 3, right: 4 }
        );
    }

    #[test]
    fn inversion_examples() {
        let fld = f(12);
        // Rational fast path.
        let x = fld.rational(rat(2, 3));
        assert_eq!(x.inv().unwrap(), fld.rational(rat(3, 2)));
        // Root of unity: inverse is the opposite power.
        let z = fld.root_of_unity(12, 1).unwrap();
        assert_eq!(z.inv().unwrap(), fld.root_of_unity(12, -1).unwrap());
        // Zero is not invertible.
        assert_eq!(fld.zero().inv().unwrap_err(), ScalarError::DivisionByZero);
        // A denser element: (1 + ζ₃) · (1 + ζ₃)⁻¹ = 1.
        let fld3 = f(3);
        let w = &fld3.one() + &fld3.root_of_unity(3, 1).unwrap();
        assert!((&w * &w.inv().unwrap()).is_one());
    }

    #[test]
    fn conjugation_maps_roots_to_inverse_roots() {
        let fld = f(12);
        for k in 0..12 {
            let z = fld.root_of_unity(12, k).unwrap();
            assert_eq!(z.conj(), fld.root_of_unity(12, -k).unwrap());
        }
        // Conjugation fixes rationals.
        let r = fld.rational(rat(-7, 2));
        assert_eq!(r.conj(), r);
    }

    #[test]
    fn conjugation_is_a_ring_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0117);
        let fld = f(12);
        for _ in 0..200 {
            let a = random_scalar(&fld, &mut rng);
            let b = random_scalar(&fld, &mut rng);
            assert_eq!(a.conj().conj(), a);
            assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        }
    }

    #[test]
    fn field_axioms_hold_on_random_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xF1E1D);
        for conductor in [1u64, 2, 3, 4, 6, 12] {
            let fld = f(conductor);
            for _ in 0..200 {
                let a = random_scalar(&fld, &mut rng);
                let b = random_scalar(&fld, &mut rng);
                let c = random_scalar(&fld, &mut rng);
                assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                assert_eq!(&a * &b, &b * &a);
                assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                assert_eq!(&a + &fld.zero(), a);
                assert_eq!(&a * &fld.one(), a);
                assert_eq!(&a - &a, fld.zero());
                if !a.is_zero() {
                    assert!((&a * &a.inv().unwrap()).is_one());
                }
                if !b.is_zero() {
                    let q = a.checked_div(&b).unwrap();
                    assert_eq!(&q * &b, a);
                }
            }
        }
    }

    #[test]
    fn serde_roundtrip_preserves_values() {
        let fld = f(12);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EDE);
        for _ in 0..50 {
            let a = random_scalar(&fld, &mut rng);
            let json = serde_json::to_string(&a).unwrap();
            let back: Cyclotomic = serde_json::from_str(&json).unwrap();
            assert_eq!(a, back);
        }
        // Shape check: explicit numerator/denominator strings.
        let half = fld.rational(rat(1, 2));
        let json = serde_json::to_value(&half).unwrap();
        assert_eq!(json["conductor"], 12);
        assert_eq!(json["coeffs"][0][0], "1");
        assert_eq!(json["coeffs"][0][1], "2");
    }

    #[test]
    fn display_is_readable() {
        let fld = f(12);
        let x = &fld.rational(rat(1, 2)) - &fld.root_of_unity(12, 3).unwrap();
        assert_eq!(x.to_string(), "1/2 - z^3");
        assert_eq!(fld.zero().to_string(), "0");
        assert_eq!(fld.integer(-2).to_string(), "-2");
    }
}
