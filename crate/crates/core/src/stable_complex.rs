//! Formal finite wedges of spheres `S^m` and mod-p Moore spectra `M^m`.
//!
//! `M^m` is the cofibre of degree p on `S^m`, with cells in dimensions `m`
//! and `m + 1`. The cell rules closing the algebra under smash are
//!
//! ```text
//! S^a ∧ S^b = S^{a+b}
//! S^a ∧ M^b = M^{a+b}
//! M^a ∧ M^b = M^{a+b} ∨ M^{a+b+1}
//! ```
//!
//! extended bilinearly over wedges. Dimensions may be negative.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{CalcError, Result};

/// An odd prime, fixed per invocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddPrime(u32);

impl OddPrime {
    pub fn new(p: u32) -> Result<Self> {
        if p % 2 == 1 && is_prime(u64::from(p)) {
            Ok(OddPrime(p))
        } else {
            Err(CalcError::InvalidPrime(u64::from(p)))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl Default for OddPrime {
    fn default() -> Self {
        OddPrime(3)
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Spheres sort before Moore cells in normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellKind {
    Sphere,
    Moore,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub kind: CellKind,
    pub dim: i64,
}

impl Cell {
    pub fn sphere(dim: i64) -> Self {
        Cell {
            kind: CellKind::Sphere,
            dim,
        }
    }

    pub fn moore(dim: i64) -> Self {
        Cell {
            kind: CellKind::Moore,
            dim,
        }
    }

    fn shifted(self, s: i64) -> Self {
        Cell {
            dim: self.dim + s,
            ..self
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CellKind::Sphere => write!(f, "S^{}", self.dim),
            CellKind::Moore => write!(f, "M^{}", self.dim),
        }
    }
}

/// A formal wedge of cells with positive multiplicities, kept in normal form.
///
/// The empty wedge is the zero (contractible) complex. Binary operations
/// require both operands to carry the same prime and panic otherwise; inputs
/// from the outside world go through [`parse_complex`], which checks it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StableComplex {
    prime: OddPrime,
    cells: BTreeMap<Cell, u64>,
}

impl StableComplex {
    pub fn zero(prime: OddPrime) -> Self {
        StableComplex {
            prime,
            cells: BTreeMap::new(),
        }
    }

    pub fn sphere(prime: OddPrime, dim: i64) -> Self {
        Self::from_cells(prime, [(Cell::sphere(dim), 1)])
    }

    pub fn moore(prime: OddPrime, dim: i64) -> Self {
        Self::from_cells(prime, [(Cell::moore(dim), 1)])
    }

    /// Builds a complex from `(cell, multiplicity)` pairs, merging repeats and
    /// dropping zero multiplicities.
    pub fn from_cells(prime: OddPrime, cells: impl IntoIterator<Item = (Cell, u64)>) -> Self {
        let mut out = StableComplex::zero(prime);
        for (cell, mult) in cells {
            out.add_cell(cell, mult);
        }
        out
    }

    fn add_cell(&mut self, cell: Cell, mult: u64) {
        if mult > 0 {
            *self.cells.entry(cell).or_insert(0) += mult;
        }
    }

    pub fn prime(&self) -> OddPrime {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }

    /// Cells in normal-form order with their multiplicities.
    pub fn cells(&self) -> impl Iterator<Item = (Cell, u64)> + '_ {
        self.cells.iter().map(|(&c, &m)| (c, m))
    }

    pub fn multiplicity(&self, cell: Cell) -> u64 {
        self.cells.get(&cell).copied().unwrap_or(0)
    }

    /// Total number of wedge summands counted with multiplicity.
    pub fn summand_count(&self) -> u64 {
        self.cells.values().sum()
    }

    pub fn has_spheres(&self) -> bool {
        self.cells.keys().any(|c| c.kind == CellKind::Sphere)
    }

    /// `Some(d)` when the complex is exactly one copy of `S^d`.
    pub fn as_single_sphere(&self) -> Option<i64> {
        match self.cells.iter().next() {
            Some((c, 1)) if self.cells.len() == 1 && c.kind == CellKind::Sphere => Some(c.dim),
            _ => None,
        }
    }

    fn check_prime(&self, other: &StableComplex) {
        assert_eq!(
            self.prime, other.prime,
            "stable complexes over different primes cannot be combined"
        );
    }

    pub fn wedge(&self, other: &StableComplex) -> StableComplex {
        self.check_prime(other);
        let mut out = self.clone();
        for (cell, mult) in other.cells() {
            out.add_cell(cell, mult);
        }
        out
    }

    pub fn suspend(&self, s: i64) -> StableComplex {
        StableComplex {
            prime: self.prime,
            cells: self.cells.iter().map(|(c, &m)| (c.shifted(s), m)).collect(),
        }
    }

    pub fn smash(&self, other: &StableComplex) -> StableComplex {
        self.check_prime(other);
        let mut out = StableComplex::zero(self.prime);
        for (a, ma) in self.cells() {
            for (b, mb) in other.cells() {
                let mult = ma * mb;
                let dim = a.dim + b.dim;
                match (a.kind, b.kind) {
                    (CellKind::Sphere, CellKind::Sphere) => out.add_cell(Cell::sphere(dim), mult),
                    (CellKind::Sphere, CellKind::Moore) | (CellKind::Moore, CellKind::Sphere) => {
                        out.add_cell(Cell::moore(dim), mult)
                    }
                    (CellKind::Moore, CellKind::Moore) => {
                        out.add_cell(Cell::moore(dim), mult);
                        out.add_cell(Cell::moore(dim + 1), mult);
                    }
                }
            }
        }
        out
    }

    /// k-fold smash power; the zeroth power is the unit `S^0`.
    pub fn smash_power(&self, k: u32) -> StableComplex {
        // square-and-multiply keeps the intermediate wedges small
        let mut result = StableComplex::sphere(self.prime, 0);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.smash(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.smash(&base);
            }
        }
        result
    }

    /// Wedge of an iterator of complexes; `zero(prime)` when empty.
    pub fn wedge_all<'a>(
        prime: OddPrime,
        parts: impl IntoIterator<Item = &'a StableComplex>,
    ) -> StableComplex {
        parts
            .into_iter()
            .fold(StableComplex::zero(prime), |acc, c| acc.wedge(c))
    }

    /// `mult` copies of `self` wedged together.
    pub fn scale(&self, mult: u64) -> StableComplex {
        StableComplex {
            prime: self.prime,
            cells: if mult == 0 {
                BTreeMap::new()
            } else {
                self.cells.iter().map(|(&c, &m)| (c, m * mult)).collect()
            },
        }
    }
}

impl fmt::Display for StableComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (cell, mult)) in self.cells().enumerate() {
            if i > 0 {
                f.write_str(" ∨ ")?;
            }
            if mult > 1 {
                write!(f, "{mult}·")?;
            }
            write!(f, "{cell}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellWire {
    kind: CellKind,
    dim: i64,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexWire {
    prime: u32,
    cells: Vec<CellWire>,
}

impl Serialize for StableComplex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexWire {
            prime: self.prime.get(),
            cells: self
                .cells()
                .map(|(c, mult)| CellWire {
                    kind: c.kind,
                    dim: c.dim,
                    mult,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StableComplex {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = ComplexWire::deserialize(deserializer)?;
        StableComplex::try_from(wire).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<ComplexWire> for StableComplex {
    type Error = CalcError;

    fn try_from(wire: ComplexWire) -> Result<Self> {
        let prime = OddPrime::new(wire.prime)?;
        let mut out = StableComplex::zero(prime);
        for cell in wire.cells {
            if cell.mult == 0 {
                return Err(CalcError::Schema("cell multiplicity must be positive".into()));
            }
            out.add_cell(
                Cell {
                    kind: cell.kind,
                    dim: cell.dim,
                },
                cell.mult,
            );
        }
        Ok(out)
    }
}

/// Parses the `{"prime":p,"cells":[...]}` encoding and checks the prime
/// against the invocation's.
pub fn parse_complex(json: &str, expected: OddPrime) -> Result<StableComplex> {
    let wire: ComplexWire =
        serde_json::from_str(json).map_err(|e| CalcError::Schema(e.to_string()))?;
    let complex = StableComplex::try_from(wire)?;
    if complex.prime != expected {
        return Err(CalcError::PrimeMismatch {
            expected: expected.get(),
            found: complex.prime.get(),
        });
    }
    Ok(complex)
}

/// Parses a JSON array of complexes, each checked against `expected`.
pub fn parse_complex_list(json: &str, expected: OddPrime) -> Result<Vec<StableComplex>> {
    let values: Vec<serde_json::Value> =
        serde_json::from_str(json).map_err(|e| CalcError::Schema(e.to_string()))?;
    values
        .iter()
        .map(|v| parse_complex(&v.to_string(), expected))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p() -> OddPrime {
        OddPrime::default()
    }

    fn m(d: i64) -> StableComplex {
        StableComplex::moore(p(), d)
    }

    fn s(d: i64) -> StableComplex {
        StableComplex::sphere(p(), d)
    }

    #[test]
    fn odd_prime_validation() {
        assert!(OddPrime::new(3).is_ok());
        assert!(OddPrime::new(97).is_ok());
        assert_eq!(OddPrime::new(2), Err(CalcError::InvalidPrime(2)));
        assert_eq!(OddPrime::new(9), Err(CalcError::InvalidPrime(9)));
        assert!(OddPrime::new(1).is_err());
    }

    #[test]
    fn wedge_examples() {
        let w = m(10).wedge(&m(11));
        assert_eq!(w.cells().collect::<Vec<_>>(), vec![(Cell::moore(10), 1), (Cell::moore(11), 1)]);
        assert_eq!(m(4).wedge(&StableComplex::zero(p())), m(4));
        assert_eq!(m(16).scale(2).wedge(&m(16)), m(16).scale(3));
    }

    #[test]
    fn suspend_examples() {
        assert_eq!(s(3).suspend(2), s(5));
        assert_eq!(m(5).suspend(-1), m(4));
        let a = s(2).wedge(&m(7).scale(2));
        assert_eq!(a.suspend(0), a);
    }

    #[test]
    fn smash_examples() {
        assert_eq!(s(2).smash(&s(3)), s(5));
        assert_eq!(m(5).smash(&m(6)), m(11).wedge(&m(12)));
        let rhs = m(5).wedge(&m(6).scale(2));
        let expected = m(8).wedge(&m(9).scale(2));
        assert_eq!(s(3).smash(&rhs), expected);
        assert_eq!(s(3).smash(&rhs), rhs.suspend(3));
    }

    #[test]
    fn smash_power_examples() {
        assert_eq!(m(5).smash_power(2), m(10).wedge(&m(11)));
        assert_eq!(m(5).smash_power(3), m(15).wedge(&m(16).scale(2)).wedge(&m(17)));
        assert_eq!(s(2).smash_power(4), s(8));
        assert_eq!(m(5).smash_power(0), s(0));
    }

    #[test]
    fn normal_form_orders_spheres_first() {
        let c = m(-3).wedge(&s(9)).wedge(&s(-1));
        let order: Vec<Cell> = c.cells().map(|(c, _)| c).collect();
        assert_eq!(order, vec![Cell::sphere(-1), Cell::sphere(9), Cell::moore(-3)]);
        assert_eq!(c.to_string(), "S^-1 ∨ S^9 ∨ M^-3");
    }

    #[test]
    fn json_encoding() {
        let c = s(2).wedge(&m(7).scale(2));
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(
            json,
            r#"{"prime":3,"cells":[{"kind":"sphere","dim":2,"mult":1},{"kind":"moore","dim":7,"mult":2}]}"#
        );
        assert_eq!(parse_complex(&json, p()).unwrap(), c);
    }

    #[test]
    fn parse_examples() {
        let c = parse_complex(r#"{"prime":3,"cells":[{"kind":"moore","dim":5,"mult":1}]}"#, p()).unwrap();
        assert_eq!(c, m(5));
        let z = parse_complex(r#"{"prime":3,"cells":[]}"#, p()).unwrap();
        assert!(z.is_zero());
        let d = parse_complex(
            r#"{"prime":3,"cells":[{"kind":"moore","dim":5,"mult":1},{"kind":"moore","dim":5,"mult":2}]}"#,
            p(),
        )
        .unwrap();
        assert_eq!(d, m(5).scale(3));
    }

    #[test]
    fn parse_errors() {
        let mismatch = parse_complex(r#"{"prime":5,"cells":[]}"#, p());
        assert_eq!(mismatch, Err(CalcError::PrimeMismatch { expected: 3, found: 5 }));
        let bad_kind = parse_complex(r#"{"prime":3,"cells":[{"kind":"torus","dim":1,"mult":1}]}"#, p());
        assert!(matches!(bad_kind, Err(CalcError::Schema(_))));
        let zero_mult = parse_complex(r#"{"prime":3,"cells":[{"kind":"moore","dim":1,"mult":0}]}"#, p());
        assert!(matches!(zero_mult, Err(CalcError::Schema(_))));
        let even_prime = parse_complex(r#"{"prime":2,"cells":[]}"#, p());
        assert_eq!(even_prime, Err(CalcError::InvalidPrime(2)));
        let missing = parse_complex(r#"{"cells":[]}"#, p());
        assert!(matches!(missing, Err(CalcError::Schema(_))));
    }

    fn arb_complex() -> impl Strategy<Value = StableComplex> {
        prop::collection::vec((any::<bool>(), -5i64..=20, 1u64..=3), 0..=6).prop_map(|cells| {
            StableComplex::from_cells(
                OddPrime::default(),
                cells.into_iter().map(|(moore, dim, mult)| {
                    (if moore { Cell::moore(dim) } else { Cell::sphere(dim) }, mult)
                }),
            )
        })
    }

    proptest! {
        #[test]
        fn smash_is_associative_and_commutative(a in arb_complex(), b in arb_complex(), c in arb_complex()) {
            prop_assert_eq!(a.smash(&b.smash(&c)), a.smash(&b).smash(&c));
            prop_assert_eq!(a.smash(&b), b.smash(&a));
        }

        #[test]
        fn smash_distributes_over_wedge(a in arb_complex(), b in arb_complex(), c in arb_complex()) {
            prop_assert_eq!(a.smash(&b.wedge(&c)), a.smash(&b).wedge(&a.smash(&c)));
        }

        #[test]
        fn suspension_is_smash_with_circle(a in arb_complex(), s1 in -10i64..10, s2 in -10i64..10) {
            prop_assert_eq!(a.suspend(1), a.smash(&StableComplex::sphere(OddPrime::default(), 1)));
            prop_assert_eq!(a.suspend(s1 + s2), a.suspend(s1).suspend(s2));
            prop_assert_eq!(a.smash(&StableComplex::sphere(OddPrime::default(), 0)), a.clone());
        }

        #[test]
        fn json_round_trip(a in arb_complex()) {
            let json = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(parse_complex(&json, OddPrime::default()).unwrap(), a);
        }
    }
}
