//! File ingestion: semigroup tables, structure-instance specifications, and
//! symbolic draw files.
//!
//! The error type deliberately splits three ways, because the command-line
//! exit contract distinguishes them: unreadable or unparseable input (exit 2),
//! usage-cap violations (exit 2), and well-formed input describing a
//! mathematically invalid structure (exit 1).

use crate::qspace::QspaceError;
use crate::scalar::{CycField, Cyclotomic, Rational, ScalarError};
use crate::semigroup::{parse_table_text, CayleyTable, Involution, SemigroupError};
use crate::wilson::{InstanceError, StructureInstance};
use crate::funcspace::SFunc;
use num::{BigInt, BigRational, Zero};
use serde_json::Value;
use std::fmt;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    /// The file could not be read at all.
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    /// The bytes do not parse as the expected format.
    #[error("malformed input{}: {message}", context_suffix(.context))]
    Syntax {
        context: Option<String>,
        message: String,
    },
    /// A requested size exceeds a hard cap (usage error, not a math verdict).
    #[error("{0}")]
    CapExceeded(String),
    /// The input parsed, but describes an invalid structure (non-associative
    /// table, inadmissible σ or μ, violated blanket assumption, non-odd A…).
    #[error("invalid structure: {0}")]
    Invalid(String),
}

fn context_suffix(ctx: &Option<String>) -> String {
    match ctx {
        Some(c) => format!(" in {c}"),
        None => String::new(),
    }
}

impl LoadError {
    /// Exit code under the stable contract: 0 verified/valid, 1 mathematical
    /// counterexample or invalid structure, 2 usage/input error.
    pub fn exit_code(&self) -> i32 {
        match self {
            LoadError::Io { .. } | LoadError::Syntax { .. } | LoadError::CapExceeded(_) => 2,
            LoadError::Invalid(_) => 1,
        }
    }

    fn syntax(context: impl Into<String>, message: impl fmt::Display) -> LoadError {
        LoadError::Syntax {
            context: Some(context.into()),
            message: message.to_string(),
        }
    }
}

impl From<SemigroupError> for LoadError {
    fn from(e: SemigroupError) -> LoadError {
        match e {
            SemigroupError::OrderTooLarge { .. } => LoadError::CapExceeded(e.to_string()),
            _ => LoadError::Invalid(e.to_string()),
        }
    }
}

impl From<InstanceError> for LoadError {
    fn from(e: InstanceError) -> LoadError {
        LoadError::Invalid(e.to_string())
    }
}

impl From<QspaceError> for LoadError {
    fn from(e: QspaceError) -> LoadError {
        LoadError::Invalid(e.to_string())
    }
}

fn read_file(path: &Path) -> Result<String, LoadError> {
    std::fs::read_to_string(path).map_err(|e| LoadError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

// ---------------------------------------------------------------------------
// Semigroup files: text ("order n" + rows) or JSON {"order": n, "table": [[…]]}.
// ---------------------------------------------------------------------------

fn rows_from_json_table(v: &Value, context: &str) -> Result<Vec<Vec<usize>>, LoadError> {
    let obj = v
        .as_object()
        .ok_or_else(|| LoadError::syntax(context, "expected a JSON object"))?;
    let table = obj
        .get("table")
        .ok_or_else(|| LoadError::syntax(context, "missing \"table\" field"))?;
    let rows: Vec<Vec<usize>> = serde_json::from_value(table.clone())
        .map_err(|e| LoadError::syntax(context, format!("bad \"table\": {e}")))?;
    if let Some(order) = obj.get("order") {
        let order: usize = serde_json::from_value(order.clone())
            .map_err(|e| LoadError::syntax(context, format!("bad \"order\": {e}")))?;
        if order != rows.len() {
            return Err(LoadError::syntax(
                context,
                format!("\"order\" is {order} but the table has {} rows", rows.len()),
            ));
        }
    }
    Ok(rows)
}

/// Raw table rows from either accepted format; no semigroup validation yet.
pub fn parse_semigroup_source(src: &str, context: &str) -> Result<Vec<Vec<usize>>, LoadError> {
    if src.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(src)
            .map_err(|e| LoadError::syntax(context, format!("bad JSON: {e}")))?;
        rows_from_json_table(&v, context)
    } else {
        parse_table_text(src).map_err(|e| LoadError::syntax(context, e))
    }
}

/// Loads and validates a semigroup from a table file.
pub fn load_semigroup(path: &Path) -> Result<CayleyTable, LoadError> {
    let src = read_file(path)?;
    let rows = parse_semigroup_source(&src, &path.display().to_string())?;
    Ok(CayleyTable::from_rows(&rows)?)
}

// ---------------------------------------------------------------------------
// Scalar specifications (liberal input forms for μ values and parameters).
// ---------------------------------------------------------------------------

/// A scalar value as written in an input file, before a field is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarSpec {
    Rational(Rational),
    /// {"root": [n, k]}: the k-th power of a primitive n-th root of unity.
    Root { order: u64, power: i64 },
    /// Canonical serialized form {"conductor": n, "coeffs": [["num","den"],…]}.
    Extended(Cyclotomic),
}

impl ScalarSpec {
    /// Smallest conductor whose field can host this value.
    pub fn needed_conductor(&self) -> u64 {
        match self {
            ScalarSpec::Rational(_) => 1,
            ScalarSpec::Root { order, .. } => *order,
            ScalarSpec::Extended(c) => c.conductor(),
        }
    }

    /// Realizes the value inside `field`, whose conductor must be a multiple
    /// of [`Self::needed_conductor`].
    pub fn materialize(&self, field: &CycField) -> Result<Cyclotomic, ScalarError> {
        match self {
            ScalarSpec::Rational(r) => Ok(field.rational(r.clone())),
            ScalarSpec::Root { order, power } => field.root_of_unity(*order, *power),
            ScalarSpec::Extended(c) => {
                // Re-expand the power-basis coordinates as root-of-unity
                // combinations in the (possibly larger) target field.
                let mut acc = field.zero();
                for (i, coeff) in c.coeffs().iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let term = field.root_of_unity(c.conductor(), i as i64)?.scale(coeff);
                    acc = acc.checked_add(&term)?;
                }
                Ok(acc)
            }
        }
    }
}

pub fn parse_rational_str(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Parses one scalar from its JSON form: integer, "p/q" string,
/// {"root": [n, k]}, or the canonical {"conductor", "coeffs"} object.
pub fn parse_scalar(v: &Value, context: &str) -> Result<ScalarSpec, LoadError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(ScalarSpec::Rational(BigRational::from_integer(i.into())))
            } else {
                Err(LoadError::syntax(
                    context,
                    format!("scalar {n} is not an exact integer; write rationals as \"p/q\""),
                ))
            }
        }
        Value::String(s) => parse_rational_str(s)
            .map(ScalarSpec::Rational)
            .ok_or_else(|| {
                LoadError::syntax(context, format!("bad rational literal {s:?}"))
            }),
        Value::Object(obj) => {
            if let Some(root) = obj.get("root") {
                let pair: (u64, i64) = serde_json::from_value(root.clone()).map_err(|e| {
                    LoadError::syntax(context, format!("bad \"root\" (want [order, power]): {e}"))
                })?;
                if pair.0 == 0 {
                    return Err(LoadError::syntax(context, "root order must be positive"));
                }
                Ok(ScalarSpec::Root {
                    order: pair.0,
                    power: pair.1,
                })
            } else if obj.contains_key("conductor") {
                let c: Cyclotomic = serde_json::from_value(v.clone())
                    .map_err(|e| LoadError::syntax(context, format!("bad scalar object: {e}")))?;
                Ok(ScalarSpec::Extended(c))
            } else {
                Err(LoadError::syntax(
                    context,
                    "scalar object needs \"root\" or \"conductor\"/\"coeffs\"",
                ))
            }
        }
        other => Err(LoadError::syntax(
            context,
            format!("cannot read a scalar from {other}"),
        )),
    }
}

// ---------------------------------------------------------------------------
// Structure-instance specifications.
// ---------------------------------------------------------------------------

/// Loads a structure instance: either a bare semigroup file (σ defaults to
/// the identity, μ to the constant 1) or a JSON spec
/// {"semigroup": path-or-inline, "sigma": [perm], "mu": [scalars]}.
/// Relative semigroup paths resolve against the spec file's directory.
pub fn load_instance(path: &Path) -> Result<StructureInstance, LoadError> {
    let src = read_file(path)?;
    let context = path.display().to_string();
    let trimmed = src.trim_start();

    // Bare text table.
    if !trimmed.starts_with('{') {
        let rows = parse_table_text(&src).map_err(|e| LoadError::syntax(&context, e))?;
        return instance_from_parts(CayleyTable::from_rows(&rows)?, None, None, &context);
    }

    let v: Value = serde_json::from_str(&src)
        .map_err(|e| LoadError::syntax(&context, format!("bad JSON: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| LoadError::syntax(&context, "expected a JSON object"))?;

    // Bare inline table.
    if !obj.contains_key("semigroup") {
        let rows = rows_from_json_table(&v, &context)?;
        return instance_from_parts(CayleyTable::from_rows(&rows)?, None, None, &context);
    }

    let table = match &obj["semigroup"] {
        Value::String(rel) => {
            let base = path.parent().unwrap_or_else(|| Path::new("."));
            load_semigroup(&base.join(rel))?
        }
        inline => CayleyTable::from_rows(&rows_from_json_table(inline, &context)?)?,
    };

    let sigma = match obj.get("sigma") {
        None | Some(Value::Null) => None,
        Some(s) => Some(
            serde_json::from_value::<Vec<usize>>(s.clone())
                .map_err(|e| LoadError::syntax(&context, format!("bad \"sigma\": {e}")))?,
        ),
    };
    let mu = match obj.get("mu") {
        None | Some(Value::Null) => None,
        Some(Value::Array(vals)) => {
            let mut specs = Vec::with_capacity(vals.len());
            for (i, val) in vals.iter().enumerate() {
                specs.push(parse_scalar(val, &format!("{context} (mu[{i}])"))?);
            }
            Some(specs)
        }
        Some(other) => {
            return Err(LoadError::syntax(
                &context,
                format!("\"mu\" must be an array of scalars, found {other}"),
            ))
        }
    };
    instance_from_parts(table, sigma, mu, &context)
}

fn instance_from_parts(
    table: CayleyTable,
    sigma: Option<Vec<usize>>,
    mu: Option<Vec<ScalarSpec>>,
    context: &str,
) -> Result<StructureInstance, LoadError> {
    let n = table.order();
    let sigma_perm = sigma.unwrap_or_else(|| (0..n).collect());
    // The session conductor already covers every character value; extend it
    // so explicitly written μ values fit too.
    let mut conductor = table.session_conductor();
    if let Some(specs) = &mu {
        if specs.len() != n {
            return Err(LoadError::syntax(
                context,
                format!("\"mu\" has {} values, semigroup has {n} elements", specs.len()),
            ));
        }
        for s in specs {
            conductor = num::integer::lcm(conductor, s.needed_conductor());
        }
    }
    let field = CycField::new(conductor);
    let mu_func = match mu {
        None => SFunc::constant(&field, n, field.one()),
        Some(specs) => {
            let mut values = Vec::with_capacity(n);
            for (i, s) in specs.iter().enumerate() {
                values.push(s.materialize(&field).map_err(|e| {
                    LoadError::syntax(context, format!("mu[{i}]: {e}"))
                })?);
            }
            SFunc::new(values)
        }
    };
    // Involution and weight admissibility are mathematical verdicts (exit 1),
    // so they flow through the structure validator, not the parser.
    let sigma = Involution::new(sigma_perm, &table)?;
    Ok(StructureInstance::new(table, sigma, mu_func)?)
}

// ---------------------------------------------------------------------------
// Symbolic draw files.
// ---------------------------------------------------------------------------

/// An explicit singular-family draw on (ℚᵈ, +):
/// {"d": int, "sigma": matrix, "chi_exponent": […], "A": […], "c": scalar,
/// "seed": int}.  Exponent and additive coefficients are exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrawSpec {
    pub d: usize,
    pub sigma: Vec<Vec<i64>>,
    pub chi_exponent: Vec<Rational>,
    pub a: Vec<Rational>,
    pub c: Rational,
    pub seed: u64,
}

pub fn load_draw(path: &Path) -> Result<DrawSpec, LoadError> {
    let src = read_file(path)?;
    let context = path.display().to_string();
    let v: Value = serde_json::from_str(&src)
        .map_err(|e| LoadError::syntax(&context, format!("bad JSON: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| LoadError::syntax(&context, "expected a JSON object"))?;

    let d: usize = field_from(obj, "d", &context)?;
    let sigma: Vec<Vec<i64>> = field_from(obj, "sigma", &context)?;
    let chi_exponent = rational_vec(obj, "chi_exponent", &context)?;
    let a = rational_vec(obj, "A", &context)?;
    let c = match obj.get("c") {
        None => BigRational::zero(),
        Some(v) => scalar_as_rational(v, &format!("{context} (c)"))?,
    };
    let seed: u64 = match obj.get("seed") {
        None => 0,
        Some(s) => serde_json::from_value(s.clone())
            .map_err(|e| LoadError::syntax(&context, format!("bad \"seed\": {e}")))?,
    };
    Ok(DrawSpec {
        d,
        sigma,
        chi_exponent,
        a,
        c,
        seed,
    })
}

fn field_from<T: serde::de::DeserializeOwned>(
    obj: &serde_json::Map<String, Value>,
    key: &str,
    context: &str,
) -> Result<T, LoadError> {
    let v = obj
        .get(key)
        .ok_or_else(|| LoadError::syntax(context, format!("missing {key:?} field")))?;
    serde_json::from_value(v.clone())
        .map_err(|e| LoadError::syntax(context, format!("bad {key:?}: {e}")))
}

fn rational_vec(
    obj: &serde_json::Map<String, Value>,
    key: &str,
    context: &str,
) -> Result<Vec<Rational>, LoadError> {
    let v = obj
        .get(key)
        .ok_or_else(|| LoadError::syntax(context, format!("missing {key:?} field")))?;
    let arr = v
        .as_array()
        .ok_or_else(|| LoadError::syntax(context, format!("{key:?} must be an array")))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| scalar_as_rational(x, &format!("{context} ({key}[{i}])")))
        .collect()
}

fn scalar_as_rational(v: &Value, context: &str) -> Result<Rational, LoadError> {
    match parse_scalar(v, context)? {
        ScalarSpec::Rational(r) => Ok(r),
        other => Err(LoadError::syntax(
            context,
            format!(
                "symbolic draws take exact rationals only, found {:?}",
                other
            ),
        )),
    }
}
