//! Finite semigroups as validated Cayley tables.
//!
//! Everything downstream (function spaces, kernel oracles, the census) builds
//! on the guarantees established here: tables are associative, automorphisms
//! really are involutive homomorphisms, and the census enumerator produces
//! every labeled associative table exactly once, in lexicographic order.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;
use thiserror::Error;

/// Hard cap on the census order: beyond this the labeled count explodes
/// (order 6 already has tens of millions of tables).
pub const ENUMERATION_CAP: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("a semigroup needs at least one element")]
    Empty,
    #[error("row {row} has {len} entries, expected {order}")]
    RaggedRow { row: usize, len: usize, order: usize },
    #[error("entry at ({x},{y}) is {value}, out of range for order {order}")]
    EntryOutOfRange {
        x: usize,
        y: usize,
        value: usize,
        order: usize,
    },
    #[error("associativity fails at ({x},{y},{z}): ({x}*{y})*{z} = {left} but {x}*({y}*{z}) = {right}")]
    AssocFail {
        x: usize,
        y: usize,
        z: usize,
        left: usize,
        right: usize,
    },
    #[error("order {order} exceeds the enumeration cap {cap}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("permutation {perm:?} is not a bijection on [0,{order})")]
    NotAPermutation { perm: Vec<usize>, order: usize },
    #[error("map is not an involution: applying it twice moves {x}")]
    NotInvolutive { x: usize },
    #[error("map is not a homomorphism: images of ({x},{y}) compose to {got}, expected {want}")]
    NotHomomorphism {
        x: usize,
        y: usize,
        got: usize,
        want: usize,
    },
}

/// A finite semigroup, stored as a validated n×n composition table
/// (row x, column y, entry x·y). Construction proves associativity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    order: usize,
    table: Vec<usize>, // row-major, length order²
}

impl CayleyTable {
    /// Validates and adopts a composition table.  On an associativity
    /// failure, reports the lexicographically first failing triple.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<CayleyTable, SemigroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(SemigroupError::Empty);
        }
        let mut table = Vec::with_capacity(order * order);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(SemigroupError::RaggedRow {
                    row: x,
                    len: row.len(),
                    order,
                });
            }
            for (y, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(SemigroupError::EntryOutOfRange {
                        x,
                        y,
                        value: v,
                        order,
                    });
                }
                table.push(v);
            }
        }
        let t = CayleyTable { order, table };
        t.check_associative()?;
        Ok(t)
    }

    fn from_flat_unchecked(order: usize, table: Vec<usize>) -> CayleyTable {
        debug_assert_eq!(table.len(), order * order);
        let t = CayleyTable { order, table };
        debug_assert!(t.check_associative().is_ok());
        t
    }

    fn check_associative(&self) -> Result<(), SemigroupError> {
        let n = self.order;
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    let left = self.mul(xy, z);
                    let right = self.mul(x, self.mul(y, z));
                    if left != right {
                        return Err(SemigroupError::AssocFail {
                            x,
                            y,
                            z,
                            left,
                            right,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|x| self.table[x * self.order..(x + 1) * self.order].to_vec())
            .collect()
    }

    /// Squares-closure test: computes the subsemigroup generated by
    /// {x·x : x ∈ S} via a worklist, and reports whether it is all of S.
    pub fn square_generation(&self) -> SquareGeneration {
        let n = self.order;
        let mut member = vec![false; n];
        let mut work: Vec<usize> = Vec::new();
        for x in 0..n {
            let sq = self.mul(x, x);
            if !member[sq] {
                member[sq] = true;
                work.push(sq);
            }
        }
        while let Some(a) = work.pop() {
            for b in 0..n {
                if !member[b] {
                    continue;
                }
                for p in [self.mul(a, b), self.mul(b, a)] {
                    if !member[p] {
                        member[p] = true;
                        work.push(p);
                    }
                }
            }
        }
        let subset: Vec<usize> = (0..n).filter(|&x| member[x]).collect();
        SquareGeneration {
            generated: subset.len() == n,
            subset,
        }
    }

    pub fn is_square_generated(&self) -> bool {
        self.square_generation().generated
    }

    /// All involutive automorphisms, in lexicographic order of the underlying
    /// permutation.  Always contains the identity.
    pub fn involutive_automorphisms(&self) -> Vec<Involution> {
        let n = self.order;
        let mut result = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            if perm.iter().enumerate().all(|(x, &px)| perm[px] == x)
                && is_homomorphism(&perm, self)
            {
                result.push(Involution { perm: perm.clone() });
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        result
    }

    /// Minimal (index i, period p) with x^(i+p) = x^i.
    pub fn monogenic_data(&self, x: usize) -> MonogenicData {
        let n = self.order;
        // first_seen[e] = exponent k (1-based) at which x^k = e first occurred.
        let mut first_seen = vec![0usize; n];
        let mut power = x;
        let mut k = 1usize;
        loop {
            if first_seen[power] != 0 {
                let i = first_seen[power];
                return MonogenicData {
                    element: x,
                    index: i,
                    period: k - i,
                };
            }
            first_seen[power] = k;
            power = self.mul(power, x);
            k += 1;
        }
    }

    /// Conductor of the session field for this semigroup: 2 × lcm of all
    /// element periods.  Multiplicative-function values are 0 or roots of
    /// unity of order dividing some period, so they all embed; the factor 2
    /// keeps −1 available for signed parameters at odd lcm.
    pub fn session_conductor(&self) -> u64 {
        let mut l: u64 = 1;
        for x in 0..self.order {
            l = num::integer::lcm(l, self.monogenic_data(x).period as u64);
        }
        2 * l
    }

    /// Least common multiple of all element periods (the root-order bound for
    /// multiplicative function values).
    pub fn period_lcm(&self) -> u64 {
        self.session_conductor() / 2
    }

    /// Streams all labeled associative n×n tables in lexicographic order
    /// (flattened row-major comparison), by backtracking that re-checks every
    /// completable associativity triple after each cell placement.
    pub fn enumerate(order: usize) -> Result<SemigroupEnumerator, SemigroupError> {
        if order == 0 {
            return Err(SemigroupError::Empty);
        }
        if order > ENUMERATION_CAP {
            return Err(SemigroupError::OrderTooLarge {
                order,
                cap: ENUMERATION_CAP,
            });
        }
        Ok(SemigroupEnumerator::new(order))
    }

    /// Renders the plain-text table format (`order n` header, then n rows).
    pub fn to_text(&self) -> String {
        let mut out = format!("order {}\n", self.order);
        for x in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|y| self.mul(x, y).to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CayleyTable(order={}, rows={:?})", self.order, self.rows())
    }
}

impl Serialize for CayleyTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CayleyTable", 2)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("table", &self.rows())?;
        st.end()
    }
}

/// Result of the squares-closure computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareGeneration {
    pub generated: bool,
    /// Sorted members of the subsemigroup generated by the squares.
    pub subset: Vec<usize>,
}

/// An involutive automorphism of a specific semigroup: a permutation π with
/// π∘π = id and π(xy) = π(x)π(y), both re-validated at construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Involution {
    perm: Vec<usize>,
}

impl Involution {
    pub fn new(perm: Vec<usize>, s: &CayleyTable) -> Result<Involution, SemigroupError> {
        let n = s.order();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n) {
            return Err(SemigroupError::NotAPermutation { perm, order: n });
        }
        for &p in &perm {
            if seen[p] {
                return Err(SemigroupError::NotAPermutation { perm, order: n });
            }
            seen[p] = true;
        }
        for (x, &px) in perm.iter().enumerate() {
            if perm[px] != x {
                return Err(SemigroupError::NotInvolutive { x });
            }
        }
        if let Some((x, y)) = homomorphism_counterexample(&perm, s) {
            return Err(SemigroupError::NotHomomorphism {
                x,
                y,
                got: s.mul(perm[x], perm[y]),
                want: perm[s.mul(x, y)],
            });
        }
        Ok(Involution { perm })
    }

    pub fn identity(n: usize) -> Involution {
        Involution {
            perm: (0..n).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.perm[x]
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }
}

/// True iff the (arbitrary, not necessarily bijective) self-map is a
/// homomorphism of the table.
pub fn is_homomorphism(map: &[usize], s: &CayleyTable) -> bool {
    homomorphism_counterexample(map, s).is_none()
}

fn homomorphism_counterexample(map: &[usize], s: &CayleyTable) -> Option<(usize, usize)> {
    let n = s.order();
    for x in 0..n {
        for y in 0..n {
            if map[s.mul(x, y)] != s.mul(map[x], map[y]) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Monogenic structure of one element: minimal i ≥ 1, p ≥ 1 with
/// x^(i+p) = x^i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MonogenicData {
    pub element: usize,
    pub index: usize,
    pub period: usize,
}

const UNSET: usize = usize::MAX;

/// Depth-first census of labeled associative tables.  Cells are filled in
/// row-major order with candidate values tried in ascending order, and after
/// every placement all fully-determined associativity triples are re-checked,
/// pruning dead branches early.
#[derive(Debug)]
pub struct SemigroupEnumerator {
    n: usize,
    cells: usize,
    table: Vec<usize>,
    /// Next candidate value to try when (re-)visiting each depth.
    trial: Vec<usize>,
    pos: usize,
    done: bool,
}

impl SemigroupEnumerator {
    fn new(n: usize) -> SemigroupEnumerator {
        SemigroupEnumerator {
            n,
            cells: n * n,
            table: vec![UNSET; n * n],
            trial: vec![0; n * n],
            pos: 0,
            done: false,
        }
    }

    /// Checks every associativity triple whose four table lookups are all
    /// defined in the current partial table.  A triple becomes fully defined
    /// at exactly one placement, so every completed table has had every
    /// triple checked.
    fn partial_consistent(&self) -> bool {
        let n = self.n;
        let t = &self.table;
        for x in 0..n {
            for y in 0..n {
                let xy = t[x * n + y];
                if xy == UNSET {
                    continue;
                }
                for z in 0..n {
                    let yz = t[y * n + z];
                    if yz == UNSET {
                        continue;
                    }
                    let left = t[xy * n + z];
                    let right = t[x * n + yz];
                    if left != UNSET && right != UNSET && left != right {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl Iterator for SemigroupEnumerator {
    type Item = CayleyTable;

    fn next(&mut self) -> Option<CayleyTable> {
        if self.done {
            return None;
        }
        loop {
            if self.pos == self.cells {
                let out = CayleyTable::from_flat_unchecked(self.n, self.table.clone());
                // Resume from the last cell on the next call.
                self.pos -= 1;
                return Some(out);
            }
            let mut placed = false;
            let mut v = self.trial[self.pos];
            while v < self.n {
                self.table[self.pos] = v;
                if self.partial_consistent() {
                    self.trial[self.pos] = v + 1;
                    placed = true;
                    break;
                }
                v += 1;
            }
            if placed {
                self.pos += 1;
                if self.pos < self.cells {
                    self.trial[self.pos] = 0;
                }
            } else {
                self.table[self.pos] = UNSET;
                self.trial[self.pos] = 0;
                if self.pos == 0 {
                    self.done = true;
                    return None;
                }
                self.pos -= 1;
            }
        }
    }
}

/// In-place lexicographic successor; false when `perm` was the last one.
fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

// ---------------------------------------------------------------------------
// Plain-text table format: header `order n`, then n rows of n indices.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct TableSyntaxError {
    pub line: usize,
    pub message: String,
}

/// Parses the text format into raw rows (no semigroup validation yet).
/// Blank lines and `#` comments are ignored.
pub fn parse_table_text(src: &str) -> Result<Vec<Vec<usize>>, TableSyntaxError> {
    let mut lines = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let Some((header_no, header)) = lines.next() else {
        return Err(TableSyntaxError {
            line: 1,
            message: "empty file; expected `order n` header".into(),
        });
    };
    let order: usize = match header.strip_prefix("order") {
        Some(rest) => rest.trim().parse().map_err(|_| TableSyntaxError {
            line: header_no,
            message: format!("bad order in header {header:?}"),
        })?,
        None => {
            return Err(TableSyntaxError {
                line: header_no,
                message: format!("expected `order n` header, found {header:?}"),
            })
        }
    };
    let mut rows = Vec::with_capacity(order);
    for _ in 0..order {
        let Some((line_no, line)) = lines.next() else {
            return Err(TableSyntaxError {
                line: header_no,
                message: format!("expected {order} table rows, found {}", rows.len()),
            });
        };
        let mut row = Vec::with_capacity(order);
        for tok in line.split_whitespace() {
            row.push(tok.parse().map_err(|_| TableSyntaxError {
                line: line_no,
                message: format!("bad table entry {tok:?}"),
            })?);
        }
        if row.len() != order {
            return Err(TableSyntaxError {
                line: line_no,
                message: format!("row has {} entries, expected {order}", row.len()),
            });
        }
        rows.push(row);
    }
    if let Some((line_no, line)) = lines.next() {
        return Err(TableSyntaxError {
            line: line_no,
            message: format!("unexpected trailing content {line:?}"),
        });
    }
    Ok(rows)
}
