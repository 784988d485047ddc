//! The partition complex: proper nondiscrete partitions of `{1, …, n}` under
//! refinement, the order complex of that poset, and its reduced homology.
//!
//! Ranks are computed over prime fields by sparse column reduction. Rational
//! ranks are read off several primes at once; integer boundary matrices never
//! have larger rank mod p than over ℚ, so the largest rank seen is a lower
//! bound for the rational one and agreement across primes is recorded as
//! evidence of torsion-freeness.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{CalcError, Result};
use crate::fp_linalg::inverse_mod;
use crate::stable_complex::{Cell, OddPrime, StableComplex};

/// Largest `n` accepted at all; the nerve of Π₉ does not fit in memory.
pub const PARTITION_N_HARD_LIMIT: u32 = 8;

/// Primes probed for rational ranks.
pub const RATIONAL_PROBE_PRIMES: [u32; 4] = [2, 3, 5, 1_000_003];

/// A set partition stored as its blocks (bitmasks), sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartition(Vec<u32>);

impl SetPartition {
    pub fn blocks(&self) -> &[u32] {
        &self.0
    }

    pub fn block_count(&self) -> usize {
        self.0.len()
    }

    /// `self ≤ other`: every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        self.0.iter().all(|&b| other.0.iter().any(|&c| b & c == b))
    }

    /// Blocks as sorted lists of 1-based elements.
    pub fn to_lists(&self) -> Vec<Vec<u32>> {
        self.0
            .iter()
            .map(|&b| (0..32).filter(|i| b >> i & 1 == 1).map(|i| i + 1).collect())
            .collect()
    }
}

fn all_set_partitions(n: u32) -> Vec<SetPartition> {
    fn rec(i: u32, n: u32, blocks: &mut Vec<u32>, out: &mut Vec<SetPartition>) {
        if i == n {
            let mut b = blocks.clone();
            b.sort_unstable();
            out.push(SetPartition(b));
            return;
        }
        for j in 0..blocks.len() {
            blocks[j] |= 1 << i;
            rec(i + 1, n, blocks, out);
            blocks[j] &= !(1 << i);
        }
        blocks.push(1 << i);
        rec(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

/// Proper nondiscrete partitions ordered finest first, so that `a < b` in the
/// poset implies `a` is listed before `b`.
#[derive(Debug, Clone)]
pub struct PartitionPoset {
    pub n: u32,
    pub elements: Vec<SetPartition>,
    /// `above[i]`: indices of elements strictly coarser than element `i`, ascending.
    above: Vec<Vec<u32>>,
}

impl PartitionPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn above(&self, i: usize) -> &[u32] {
        &self.above[i]
    }

    pub fn less_than(&self, a: usize, b: usize) -> bool {
        self.above[a].binary_search(&(b as u32)).is_ok()
    }
}

fn check_n(n: u32) -> Result<()> {
    if n < 2 {
        return Err(CalcError::precondition(format!("partition complex needs n ≥ 2, got {n}")));
    }
    if n > PARTITION_N_HARD_LIMIT {
        return Err(CalcError::BoundExceeded {
            what: "partition n",
            value: u64::from(n),
            limit: u64::from(PARTITION_N_HARD_LIMIT),
        });
    }
    Ok(())
}

pub fn partition_poset(n: u32) -> Result<PartitionPoset> {
    check_n(n)?;
    let mut elements: Vec<SetPartition> = all_set_partitions(n)
        .into_iter()
        .filter(|p| p.block_count() > 1 && p.block_count() < n as usize)
        .collect();
    elements.sort_by(|a, b| b.block_count().cmp(&a.block_count()).then_with(|| a.cmp(b)));
    let above = (0..elements.len())
        .map(|i| {
            (i + 1..elements.len())
                .filter(|&j| {
                    elements[i].block_count() > elements[j].block_count() && elements[i].refines(&elements[j])
                })
                .map(|j| j as u32)
                .collect()
        })
        .collect();
    Ok(PartitionPoset { n, elements, above })
}

/// Chains of the poset grouped by dimension (a chain of `i + 1` elements has
/// dimension `i`). Each dimension is stored flat and in lexicographic order.
#[derive(Debug, Clone)]
pub struct OrderComplex {
    chains: Vec<Vec<u32>>,
}

impl OrderComplex {
    pub fn new(poset: &PartitionPoset) -> Self {
        let mut chains: Vec<Vec<u32>> = Vec::new();
        let mut stack = Vec::new();
        for start in 0..poset.len() {
            stack.push(start as u32);
            extend_chains(poset, &mut stack, &mut chains);
            stack.pop();
        }
        OrderComplex { chains }
    }

    /// Highest simplex dimension, or `None` for the empty complex.
    pub fn top_dim(&self) -> Option<usize> {
        self.chains.len().checked_sub(1)
    }

    pub fn simplex_count(&self, dim: usize) -> usize {
        self.chains.get(dim).map_or(0, |c| c.len() / (dim + 1))
    }

    pub fn simplex(&self, dim: usize, index: usize) -> &[u32] {
        &self.chains[dim][index * (dim + 1)..(index + 1) * (dim + 1)]
    }

    fn index_of(&self, dim: usize, simplex: &[u32]) -> usize {
        let (mut lo, mut hi) = (0, self.simplex_count(dim));
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.simplex(dim, mid).cmp(simplex) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return mid,
            }
        }
        panic!("face {simplex:?} missing from the order complex");
    }

    /// Integer boundary `∂_dim: C_dim → C_{dim-1}` as sparse columns of
    /// `(row, ±1)`, rows ascending. `∂_0` is the augmentation onto the single
    /// empty simplex in dimension −1.
    pub fn boundary(&self, dim: usize) -> Vec<Vec<(u32, i8)>> {
        let count = self.simplex_count(dim);
        if dim == 0 {
            return vec![vec![(0, 1)]; count];
        }
        let mut face = vec![0u32; dim];
        (0..count)
            .map(|idx| {
                let s = self.simplex(dim, idx);
                let mut col: Vec<(u32, i8)> = (0..=dim)
                    .map(|drop| {
                        let mut w = 0;
                        for (j, &v) in s.iter().enumerate() {
                            if j != drop {
                                face[w] = v;
                                w += 1;
                            }
                        }
                        let sign = if drop % 2 == 0 { 1 } else { -1 };
                        (self.index_of(dim - 1, &face) as u32, sign)
                    })
                    .collect();
                col.sort_unstable_by_key(|&(r, _)| r);
                col
            })
            .collect()
    }
}

fn extend_chains(poset: &PartitionPoset, stack: &mut Vec<u32>, chains: &mut Vec<Vec<u32>>) {
    let dim = stack.len() - 1;
    if chains.len() <= dim {
        chains.push(Vec::new());
    }
    chains[dim].extend_from_slice(stack);
    let last = *stack.last().expect("nonempty chain") as usize;
    for &next in poset.above(last) {
        stack.push(next);
        extend_chains(poset, stack, chains);
        stack.pop();
    }
}

/// Rank mod `q` of a sparse integer matrix by left-to-right column reduction
/// on the lowest nonzero row. Columns listed in `known_zero` are skipped; the
/// caller guarantees they reduce to zero. Returns the rank and the pivot rows.
pub fn sparse_rank_mod(columns: &[Vec<(u32, i8)>], rows: usize, q: u32, known_zero: &[bool]) -> (usize, Vec<bool>) {
    let q = u64::from(q);
    let mut pivot_col: Vec<Option<Vec<(u32, u64)>>> = vec![None; rows];
    let mut is_pivot_row = vec![false; rows];
    let mut rank = 0;
    for (j, col) in columns.iter().enumerate() {
        if known_zero.get(j).copied().unwrap_or(false) {
            continue;
        }
        let mut cur: Vec<(u32, u64)> = col
            .iter()
            .map(|&(r, v)| (r, (i64::from(v)).rem_euclid(q as i64) as u64))
            .filter(|&(_, v)| v != 0)
            .collect();
        while let Some(&(low, val)) = cur.last() {
            match &pivot_col[low as usize] {
                None => break,
                Some(piv) => {
                    // piv is normalised to leading coefficient 1
                    let factor = val;
                    cur = axpy(&cur, piv, q - factor, q);
                }
            }
        }
        if let Some(&(low, val)) = cur.last() {
            let inv = inverse_mod(val, q);
            for e in &mut cur {
                e.1 = e.1 * inv % q;
            }
            pivot_col[low as usize] = Some(cur);
            is_pivot_row[low as usize] = true;
            rank += 1;
        }
    }
    (rank, is_pivot_row)
}

/// `a + c·b` over F_q, both sorted by row.
fn axpy(a: &[(u32, u64)], b: &[(u32, u64)], c: u64, q: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, b[j].1 * c % q));
            j += 1;
        } else {
            let v = (a[i].1 + b[j].1 * c) % q;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Coefficient field for homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    Rational,
    Prime(u32),
}

impl std::fmt::Display for Coefficients {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coefficients::Rational => f.write_str("Q"),
            Coefficients::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl std::str::FromStr for Coefficients {
    type Err = CalcError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Q" | "q" | "rational" => Ok(Coefficients::Rational),
            _ => {
                let digits = s.trim_start_matches(['F', 'f']);
                let p: u32 = digits
                    .parse()
                    .map_err(|_| CalcError::Schema(format!("unknown coefficient field {s:?}")))?;
                if !crate::arith::is_prime(u64::from(p)) {
                    return Err(CalcError::NotPrime(u64::from(p)));
                }
                Ok(Coefficients::Prime(p))
            }
        }
    }
}

/// Homology data for `|Π_n|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainComplexTable {
    pub n: u32,
    pub field: String,
    /// Number of `i`-simplices, indexed by `i ≥ 0`.
    pub simplex_counts: Vec<u64>,
    /// `rank ∂_i` for `i ≥ 0` (`∂_0` is the augmentation).
    pub boundary_ranks: Vec<u64>,
    /// Nonzero reduced Betti numbers keyed by degree (−1 allowed).
    pub betti: BTreeMap<i32, u64>,
    /// For rational coefficients: whether every probe prime gave the same ranks.
    pub primes_agree: Option<bool>,
}

impl ChainComplexTable {
    pub fn reduced_euler_characteristic(&self) -> i128 {
        self.betti
            .iter()
            .map(|(&i, &b)| if i.rem_euclid(2) == 0 { b as i128 } else { -(b as i128) })
            .sum()
    }
}

/// Boundary ranks over F_q, top dimension first so that pivot rows of
/// `∂_{i+1}` clear the matching columns of `∂_i`.
fn boundary_ranks_mod(complex: &OrderComplex, q: u32) -> Vec<u64> {
    let Some(top) = complex.top_dim() else {
        return Vec::new();
    };
    let mut ranks = vec![0u64; top + 1];
    let mut cleared: Vec<bool> = Vec::new();
    for dim in (0..=top).rev() {
        let cols = complex.boundary(dim);
        let rows = if dim == 0 { 1 } else { complex.simplex_count(dim - 1) };
        let (rank, pivots) = sparse_rank_mod(&cols, rows, q, &cleared);
        ranks[dim] = rank as u64;
        cleared = pivots;
    }
    ranks
}

fn betti_from_ranks(counts: &[u64], ranks: &[u64]) -> BTreeMap<i32, u64> {
    let mut betti = BTreeMap::new();
    // degree −1: the empty simplex
    let b_minus = 1 - ranks.first().copied().unwrap_or(0);
    if b_minus > 0 {
        betti.insert(-1, b_minus);
    }
    for (i, &c) in counts.iter().enumerate() {
        let b = c - ranks[i] - ranks.get(i + 1).copied().unwrap_or(0);
        if b > 0 {
            betti.insert(i as i32, b);
        }
    }
    betti
}

/// Reduced Betti numbers of `|Π_n|` over the chosen field.
pub fn order_complex_betti(n: u32, field: Coefficients) -> Result<ChainComplexTable> {
    let poset = partition_poset(n)?;
    let complex = OrderComplex::new(&poset);
    let counts: Vec<u64> = (0..complex.top_dim().map_or(0, |t| t + 1))
        .map(|d| complex.simplex_count(d) as u64)
        .collect();
    let (ranks, primes_agree) = match field {
        Coefficients::Prime(q) => (boundary_ranks_mod(&complex, q), None),
        Coefficients::Rational => {
            let all: Vec<Vec<u64>> = RATIONAL_PROBE_PRIMES
                .iter()
                .map(|&q| boundary_ranks_mod(&complex, q))
                .collect();
            let agree = all.windows(2).all(|w| w[0] == w[1]);
            let best = (0..counts.len())
                .map(|d| all.iter().map(|r| r[d]).max().unwrap_or(0))
                .collect();
            (best, Some(agree))
        }
    };
    Ok(ChainComplexTable {
        n,
        field: field.to_string(),
        betti: betti_from_ranks(&counts, &ranks),
        simplex_counts: counts,
        boundary_ranks: ranks,
        primes_agree,
    })
}

/// Chain counts of the poset by number of elements, via dynamic programming
/// over the order (no chain is materialised). Entry `j` counts chains of
/// `j + 1` elements.
pub fn chain_counts(poset: &PartitionPoset) -> Vec<u128> {
    let m = poset.len();
    // ending[x] = chains ending at x, by length
    let mut ending: Vec<Vec<u128>> = vec![Vec::new(); m];
    let mut totals: Vec<u128> = Vec::new();
    for x in 0..m {
        if ending[x].is_empty() {
            ending[x].push(0);
        }
        ending[x][0] += 1;
        let here = ending[x].clone();
        for (len, &c) in here.iter().enumerate() {
            if totals.len() <= len {
                totals.push(0);
            }
            totals[len] += c;
        }
        for &y in poset.above(x) {
            let y = y as usize;
            if ending[y].len() < here.len() + 1 {
                ending[y].resize(here.len() + 1, 0);
            }
            for (len, &c) in here.iter().enumerate() {
                ending[y][len + 1] += c;
            }
        }
    }
    totals
}

/// Reduced Euler characteristic of `|Π_n|` by counting chains:
/// `Σ_i (−1)^i (# i-simplices) − 1`.
pub fn euler_check(n: u32) -> Result<i128> {
    let poset = partition_poset(n)?;
    let sum: i128 = chain_counts(&poset)
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 0 { c as i128 } else { -(c as i128) })
        .sum();
    Ok(sum - 1)
}

/// Nonequivariant cells of the `n`-th derivative of the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivativeCells {
    pub n: u32,
    pub cells: StableComplex,
}

impl DerivativeCells {
    /// `(count, dim)` when the cells are all spheres in one dimension.
    pub fn concentrated(&self) -> Option<(u64, i64)> {
        let mut it = self.cells.cells();
        let (cell, count) = it.next()?;
        it.next().is_none().then_some((count, cell.dim))
    }
}

/// Reduced homology of rank `b` in degree `i` of `|Π_n|` becomes `b` spheres
/// in dimension `i + 2` in the suspended unreduced suspension, hence `b` copies
/// of `S^{−(i+2)}` in the dual.
pub fn derivative_cells(n: u32, prime: OddPrime) -> Result<DerivativeCells> {
    let table = order_complex_betti(n, Coefficients::Rational)?;
    let cells = StableComplex::from_cells(
        prime,
        table
            .betti
            .iter()
            .map(|(&i, &b)| (Cell::sphere(-(i64::from(i) + 2)), b)),
    );
    Ok(DerivativeCells { n, cells })
}

/// Exact integer check that `∂_{i-1} ∘ ∂_i = 0` in every dimension.
pub fn boundary_squares_to_zero(complex: &OrderComplex) -> bool {
    let Some(top) = complex.top_dim() else {
        return true;
    };
    for dim in 1..=top {
        let outer = complex.boundary(dim - 1);
        for col in complex.boundary(dim) {
            let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
            for (mid, a) in col {
                for &(row, b) in &outer[mid as usize] {
                    *acc.entry(row).or_insert(0) += i64::from(a) * i64::from(b);
                }
            }
            if acc.values().any(|&v| v != 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorial;

    #[test]
    fn poset_sizes() {
        assert!(partition_poset(2).unwrap().is_empty());
        let p3 = partition_poset(3).unwrap();
        assert_eq!(p3.len(), 3);
        assert!((0..3).all(|i| p3.above(i).is_empty()));
        assert_eq!(partition_poset(4).unwrap().len(), 13);
        assert_eq!(partition_poset(5).unwrap().len(), 50);
        assert!(partition_poset(1).is_err());
        assert!(matches!(partition_poset(9), Err(CalcError::BoundExceeded { .. })));
    }

    #[test]
    fn refinement_is_a_strict_order() {
        let p = partition_poset(5).unwrap();
        for a in 0..p.len() {
            assert!(!p.less_than(a, a));
            for &b in p.above(a) {
                assert!(!p.less_than(b as usize, a));
                for &c in p.above(b as usize) {
                    assert!(p.less_than(a, c as usize));
                }
            }
        }
    }

    #[test]
    fn block_lists() {
        let p = partition_poset(3).unwrap();
        let lists: Vec<_> = p.elements.iter().map(SetPartition::to_lists).collect();
        assert!(lists.contains(&vec![vec![1], vec![2, 3]]));
    }

    #[test]
    fn chain_counts_match_enumeration() {
        // chain counts frozen from an independent enumeration
        let expected: [&[u128]; 5] = [
            &[3],
            &[13, 18],
            &[50, 205, 180],
            &[201, 1865, 4245, 2700],
            &[875, 16674, 74165, 114345, 56700],
        ];
        for (n, exp) in (3..=7).zip(expected) {
            let poset = partition_poset(n).unwrap();
            assert_eq!(chain_counts(&poset), exp, "n={n}");
            if n <= 6 {
                let complex = OrderComplex::new(&poset);
                let enumerated: Vec<u128> = (0..exp.len()).map(|d| complex.simplex_count(d) as u128).collect();
                assert_eq!(enumerated, exp);
            }
        }
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_check(3).unwrap(), 2);
        assert_eq!(euler_check(4).unwrap(), -6);
        assert_eq!(euler_check(5).unwrap(), 24);
        assert_eq!(euler_check(2).unwrap(), -1);
    }

    #[test]
    fn betti_examples() {
        let t2 = order_complex_betti(2, Coefficients::Rational).unwrap();
        assert_eq!(t2.betti, BTreeMap::from([(-1, 1)]));
        let t3 = order_complex_betti(3, Coefficients::Rational).unwrap();
        assert_eq!(t3.betti, BTreeMap::from([(0, 2)]));
        let t4 = order_complex_betti(4, Coefficients::Prime(3)).unwrap();
        assert_eq!(t4.betti, BTreeMap::from([(1, 6)]));
        let t5 = order_complex_betti(5, Coefficients::Prime(2)).unwrap();
        assert_eq!(t5.betti, BTreeMap::from([(2, 24)]));
    }

    #[test]
    fn betti_is_factorial_for_n_up_to_6() {
        for n in 3..=6u32 {
            for field in [Coefficients::Rational, Coefficients::Prime(2), Coefficients::Prime(5)] {
                let t = order_complex_betti(n, field).unwrap();
                let expected = u64::try_from(factorial(u64::from(n - 1))).unwrap();
                assert_eq!(t.betti, BTreeMap::from([(n as i32 - 3, expected)]), "n={n} {field}");
                assert_eq!(t.reduced_euler_characteristic(), euler_check(n).unwrap());
            }
        }
    }

    #[test]
    fn boundaries_square_to_zero() {
        for n in 2..=6 {
            let complex = OrderComplex::new(&partition_poset(n).unwrap());
            assert!(boundary_squares_to_zero(&complex), "n={n}");
        }
    }

    #[test]
    fn rank_of_small_matrices() {
        // columns e0 + e1, e1 + e2, e0 − e2 (dependent over every field)
        let cols = vec![vec![(0, 1), (1, 1)], vec![(1, 1), (2, 1)], vec![(0, 1), (2, -1)]];
        assert_eq!(sparse_rank_mod(&cols, 3, 3, &[]).0, 2);
        // e0 + e1, e1 + e2, e0 + e2 has determinant 2
        let cols = vec![vec![(0, 1), (1, 1)], vec![(1, 1), (2, 1)], vec![(0, 1), (2, 1)]];
        assert_eq!(sparse_rank_mod(&cols, 3, 2, &[]).0, 2);
        assert_eq!(sparse_rank_mod(&cols, 3, 3, &[]).0, 3);
    }

    #[test]
    fn derivative_cell_examples() {
        let p = OddPrime::default();
        assert_eq!(derivative_cells(2, p).unwrap().concentrated(), Some((1, -1)));
        assert_eq!(derivative_cells(3, p).unwrap().concentrated(), Some((2, -2)));
        assert_eq!(derivative_cells(4, p).unwrap().concentrated(), Some((6, -3)));
    }

    #[test]
    fn coefficient_parsing() {
        assert_eq!("Q".parse::<Coefficients>().unwrap(), Coefficients::Rational);
        assert_eq!("F5".parse::<Coefficients>().unwrap(), Coefficients::Prime(5));
        assert_eq!("7".parse::<Coefficients>().unwrap(), Coefficients::Prime(7));
        assert!("F4".parse::<Coefficients>().is_err());
        assert!("Z".parse::<Coefficients>().is_err());
    }
}
