//! Index combinatorics of single- and multivariable calculus on wedges.
//!
//! A basis word `w` contributes the factor `Ω P_⌊n/|w|⌋ Σw(X)` to stage `n`
//! of the tower on `ΣX_1 ∨ … ∨ ΣX_k`, and the layer `D_n` splits over
//! triples `(composition, d, w)` with `w ∈ B(composition / d)`. Everything
//! here is exact integer arithmetic.

use std::collections::HashMap;

use serde::Serialize;

use crate::arith::{divisors, gcd};
use crate::error::{CalcError, Result};
use crate::lie_words::{basis_multidegree, evaluate, hall_basis, necklace_count, LieWord};
use crate::stable_complex::StableComplex;

/// `U_n^k`: tuples in `[n]^k` with coordinate sum at most `n`, ordered
/// componentwise. Tuples are listed by total, then by descending leading
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncationPoset {
    pub n: u32,
    pub k: usize,
    pub tuples: Vec<Vec<u32>>,
}

impl TruncationPoset {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn leq(a: &[u32], b: &[u32]) -> bool {
        a.iter().zip(b).all(|(x, y)| x <= y)
    }
}

pub fn un_poset(n: u32, k: usize) -> Result<TruncationPoset> {
    if k == 0 {
        return Err(CalcError::precondition("arity k must be at least 1"));
    }
    let mut tuples = Vec::new();
    for total in 0..=n {
        let mut current = Vec::with_capacity(k);
        compositions_desc(total, k, &mut current, &mut tuples);
    }
    Ok(TruncationPoset { n, k, tuples })
}

/// All k-tuples of nonnegative integers summing to `total`, leading
/// coordinate descending.
fn compositions_desc(total: u32, k: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if current.len() + 1 == k {
        current.push(total);
        out.push(current.clone());
        current.pop();
        return;
    }
    for first in (0..=total).rev() {
        current.push(first);
        compositions_desc(total - first, k, current, out);
        current.pop();
    }
}

fn check_weights(a: &[u32]) -> Result<()> {
    if a.is_empty() || a.contains(&0) {
        return Err(CalcError::precondition("weights a_i must all be at least 1"));
    }
    Ok(())
}

/// `min_i ⌊n_i / a_i⌋`.
pub fn multivar_truncation(n: &[u32], a: &[u32]) -> Result<u32> {
    check_weights(a)?;
    if n.len() != a.len() {
        return Err(CalcError::precondition("stage and weight vectors differ in length"));
    }
    Ok(n.iter().zip(a).map(|(ni, ai)| ni / ai).min().expect("nonempty"))
}

/// Largest multivariable truncation reached anywhere in `U_n^k`, by exhaustive
/// search over the poset.
pub fn single_from_multi(n: u32, a: &[u32]) -> Result<u32> {
    check_weights(a)?;
    let poset = un_poset(n, a.len())?;
    single_from_multi_in(&poset, a)
}

/// Same as [`single_from_multi`] against a prebuilt poset.
pub fn single_from_multi_in(poset: &TruncationPoset, a: &[u32]) -> Result<u32> {
    check_weights(a)?;
    if a.len() != poset.k {
        return Err(CalcError::precondition("weight vector length differs from poset arity"));
    }
    let mut best = 0;
    for t in &poset.tuples {
        best = best.max(multivar_truncation(t, a)?);
    }
    Ok(best)
}

fn check_inputs(xs: &[StableComplex]) -> Result<()> {
    if xs.is_empty() {
        return Err(CalcError::precondition("at least one complex is required"));
    }
    if let Some(i) = xs.iter().position(StableComplex::is_zero) {
        return Err(CalcError::precondition(format!("X{} is the zero complex", i + 1)));
    }
    let prime = xs[0].prime();
    if let Some(x) = xs.iter().find(|x| x.prime() != prime) {
        return Err(CalcError::PrimeMismatch {
            expected: prime.get(),
            found: x.prime().get(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HmFactor {
    pub word: LieWord,
    pub target: StableComplex,
}

/// Hilton–Milnor factors `(w, Σw(X))` for `|w| ≤ max_length`, in basis order.
pub fn hm_factors(xs: &[StableComplex], max_length: u32) -> Result<Vec<HmFactor>> {
    check_inputs(xs)?;
    // the target only depends on the multidegree
    let mut targets: HashMap<Vec<u32>, StableComplex> = HashMap::new();
    hall_basis(xs.len(), max_length)
        .into_iter()
        .map(|word| {
            let target = match targets.get(word.multidegree()) {
                Some(t) => t.clone(),
                None => {
                    let t = evaluate(&word, xs)?.suspend(1);
                    targets.insert(word.multidegree().to_vec(), t.clone());
                    t
                }
            };
            Ok(HmFactor { word, target })
        })
        .collect()
}

/// Which sphere parity stabilizes at `|w|p^h` (the other at `2|w|p^h`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityRule {
    #[default]
    OddSingle,
    EvenSingle,
}

/// Parameters for the stage at which a sphere's periodic tower becomes constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StabilizationRule {
    pub prime: u64,
    pub height: u32,
    pub parity: ParityRule,
}

impl StabilizationRule {
    pub fn new(prime: u64, height: u32) -> Self {
        StabilizationRule {
            prime,
            height,
            parity: ParityRule::default(),
        }
    }

    /// Stage for a single sphere `S^dim`: `p^h` or `2p^h` by parity.
    pub fn sphere_stage(&self, dim: i64) -> u64 {
        let base = self.prime.pow(self.height);
        let odd = dim.rem_euclid(2) == 1;
        let single = match self.parity {
            ParityRule::OddSingle => odd,
            ParityRule::EvenSingle => !odd,
        };
        if single {
            base
        } else {
            2 * base
        }
    }
}

/// Sphere dimensions of the inputs, or an error naming the first non-sphere.
pub fn sphere_dims(xs: &[StableComplex]) -> Result<Vec<i64>> {
    xs.iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_single_sphere()
                .ok_or_else(|| CalcError::precondition(format!("X{} = {x} is not a single sphere", i + 1)))
        })
        .collect()
}

/// Stage at which the factor of `w` in the tower of a wedge of spheres
/// becomes constant: `|w|` times the stage of the sphere `Σw(X)`.
pub fn stabilization_stage(word: &LieWord, dims: &[i64], rule: &StabilizationRule) -> Result<u64> {
    if dims.len() != word.alphabet_size() {
        return Err(CalcError::precondition("one sphere dimension per letter is required"));
    }
    if let Some(d) = dims.iter().find(|&&d| d < 1) {
        return Err(CalcError::precondition(format!("sphere dimension {d} must be at least 1")));
    }
    let target_dim = 1 + weighted_dim(word, dims);
    Ok(u64::from(word.length()) * rule.sphere_stage(target_dim))
}

fn weighted_dim(word: &LieWord, dims: &[i64]) -> i64 {
    word.multidegree()
        .iter()
        .zip(dims)
        .map(|(&n, &d)| i64::from(n) * d)
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerFactor {
    pub word: LieWord,
    pub multidegree: Vec<u32>,
    pub length: u32,
    pub target: StableComplex,
    pub trunc: u32,
    /// Present only when every input is a single sphere of dimension ≥ 1.
    pub stab_stage: Option<u64>,
}

/// Stage `n` of the tower on a wedge, as the factor list
/// `Π' Ω P_⌊n/|w|⌋ Σw(X)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerDescriptor {
    pub n: u32,
    pub factors: Vec<TowerFactor>,
}

pub fn tower_stage(
    n: u32,
    xs: &[StableComplex],
    rule: Option<&StabilizationRule>,
) -> Result<TowerDescriptor> {
    if n == 0 {
        return Err(CalcError::precondition("tower stage n must be at least 1"));
    }
    let dims = sphere_dims(xs).ok().filter(|d| d.iter().all(|&x| x >= 1));
    let factors = hm_factors(xs, n)?
        .into_iter()
        .map(|HmFactor { word, target }| {
            let stab_stage = match (rule, &dims) {
                (Some(rule), Some(dims)) => Some(stabilization_stage(&word, dims, rule)?),
                _ => None,
            };
            Ok(TowerFactor {
                multidegree: word.multidegree().to_vec(),
                length: word.length(),
                trunc: n / word.length(),
                target,
                word,
                stab_stage,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TowerDescriptor { n, factors })
}

/// Words whose truncation increases from stage `n - 1` to stage `n`, with the
/// new truncation value. This is the layer read off from the tower side.
pub fn tower_layer_jumps(n: u32, xs: &[StableComplex]) -> Result<Vec<(LieWord, u32, StableComplex)>> {
    let current = tower_stage(n, xs, None)?;
    let previous: HashMap<LieWord, u32> = if n > 1 {
        tower_stage(n - 1, xs, None)?.factors.into_iter().map(|f| (f.word, f.trunc)).collect()
    } else {
        HashMap::new()
    };
    let prev_trunc = |w: &LieWord| previous.get(w).copied().unwrap_or(0);
    Ok(current
        .factors
        .into_iter()
        .filter(|f| f.trunc > prev_trunc(&f.word))
        .map(|f| (f.word, f.trunc, f.target))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerTermIndex {
    pub composition: Vec<u32>,
    pub divisor: u32,
    pub word: LieWord,
    pub target: StableComplex,
    pub derivative_index: u32,
}

/// Splitting of `D_n(ΣX_1 ∨ … ∨ ΣX_k)` into `D_d(Σw(X))` terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerDecomposition {
    pub n: u32,
    pub terms: Vec<LayerTermIndex>,
}

/// Terms indexed by compositions `Σn_i = n`, divisors `d | gcd(n_i)` and
/// words `w ∈ B(n_1/d, …, n_k/d)`. The derivative index of each term is `d`.
pub fn wedge_layer_decomposition(n: u32, xs: &[StableComplex]) -> Result<LayerDecomposition> {
    if n == 0 {
        return Err(CalcError::precondition("layer index n must be at least 1"));
    }
    check_inputs(xs)?;
    let mut compositions = Vec::new();
    compositions_desc(n, xs.len(), &mut Vec::new(), &mut compositions);
    let mut terms = Vec::new();
    for composition in compositions {
        let g = composition.iter().fold(0u64, |g, &c| gcd(g, u64::from(c)));
        for d in divisors(g) {
            let d = d as u32;
            let reduced: Vec<u32> = composition.iter().map(|&c| c / d).collect();
            for word in basis_multidegree(&reduced)?.words {
                let target = evaluate(&word, xs)?.suspend(1);
                terms.push(LayerTermIndex {
                    composition: composition.clone(),
                    divisor: d,
                    word,
                    target,
                    derivative_index: d,
                });
            }
        }
    }
    Ok(LayerDecomposition { n, terms })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivergenceEntry {
    pub word: LieWord,
    pub multidegree: Vec<u32>,
    pub length: u32,
    pub target: StableComplex,
    pub stab_stage: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthSummary {
    pub length: u32,
    pub word_count: u64,
    pub necklace_count: u64,
    /// Distinct stabilization stages among words of this length, ascending.
    pub stages: Vec<u64>,
}

/// Witness that the periodic tower of a wedge of spheres never becomes constant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WedgeDivergenceReport {
    pub dims: Vec<i64>,
    pub rule: StabilizationRule,
    pub max_length: u32,
    pub entries: Vec<DivergenceEntry>,
    pub by_length: Vec<LengthSummary>,
    /// Strictly increasing stages, one per length where possible.
    pub increasing_stages: Vec<u64>,
    pub all_targets_nonzero: bool,
    pub words_at_every_length: bool,
    pub notes: Vec<String>,
}

pub fn wedge_divergence_report(
    dims: &[i64],
    rule: &StabilizationRule,
    max_length: u32,
    prime: crate::stable_complex::OddPrime,
) -> Result<WedgeDivergenceReport> {
    if dims.is_empty() {
        return Err(CalcError::precondition("at least one sphere dimension is required"));
    }
    if max_length == 0 {
        return Err(CalcError::precondition("max_length must be at least 1"));
    }
    let xs: Vec<StableComplex> = dims.iter().map(|&d| StableComplex::sphere(prime, d)).collect();
    let mut entries = Vec::new();
    for HmFactor { word, target } in hm_factors(&xs, max_length)? {
        let stab_stage = stabilization_stage(&word, dims, rule)?;
        entries.push(DivergenceEntry {
            multidegree: word.multidegree().to_vec(),
            length: word.length(),
            word,
            target,
            stab_stage,
        });
    }

    let by_length: Vec<LengthSummary> = (1..=max_length)
        .map(|length| {
            let at_length: Vec<&DivergenceEntry> = entries.iter().filter(|e| e.length == length).collect();
            let mut stages: Vec<u64> = at_length.iter().map(|e| e.stab_stage).collect();
            stages.sort_unstable();
            stages.dedup();
            LengthSummary {
                length,
                word_count: at_length.len() as u64,
                necklace_count: necklace_count(dims.len() as u64, length),
                stages,
            }
        })
        .collect();

    let mut increasing_stages = Vec::new();
    for summary in &by_length {
        let last = increasing_stages.last().copied().unwrap_or(0);
        if let Some(&next) = summary.stages.iter().find(|&&s| s > last) {
            increasing_stages.push(next);
        }
    }

    let mut notes = Vec::new();
    if dims.len() == 1 {
        notes.push(
            "k = 1: a single sphere has a one-word basis, so this is not a wedge and the tower is finite"
                .to_string(),
        );
    }
    Ok(WedgeDivergenceReport {
        dims: dims.to_vec(),
        rule: *rule,
        max_length,
        all_targets_nonzero: entries.iter().all(|e| !e.target.is_zero()),
        words_at_every_length: by_length.iter().all(|s| s.word_count > 0),
        entries,
        by_length,
        increasing_stages,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stable_complex::OddPrime;

    fn s(d: i64) -> StableComplex {
        StableComplex::sphere(OddPrime::default(), d)
    }

    #[test]
    fn un_poset_examples() {
        let p = un_poset(2, 2).unwrap();
        assert_eq!(
            p.tuples,
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        let p1 = un_poset(4, 1).unwrap();
        assert_eq!(p1.tuples, (0..=4).map(|i| vec![i]).collect::<Vec<_>>());
        assert_eq!(un_poset(5, 3).unwrap().len(), 56);
        assert!(un_poset(3, 0).is_err());
    }

    #[test]
    fn un_poset_sizes_are_binomials() {
        for n in 0..=8u32 {
            for k in 1..=4usize {
                let expected = crate::arith::binomial(u64::from(n) + k as u64, k as u64);
                assert_eq!(un_poset(n, k).unwrap().len() as u128, expected);
            }
        }
    }

    #[test]
    fn componentwise_order_is_a_partial_order() {
        let p = un_poset(3, 2).unwrap();
        for a in &p.tuples {
            assert!(TruncationPoset::leq(a, a));
            for b in &p.tuples {
                if TruncationPoset::leq(a, b) && TruncationPoset::leq(b, a) {
                    assert_eq!(a, b);
                }
                for c in &p.tuples {
                    if TruncationPoset::leq(a, b) && TruncationPoset::leq(b, c) {
                        assert!(TruncationPoset::leq(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn truncation_examples() {
        assert_eq!(multivar_truncation(&[3, 2], &[1, 2]).unwrap(), 1);
        assert_eq!(multivar_truncation(&[4, 4], &[1, 1]).unwrap(), 4);
        assert_eq!(multivar_truncation(&[7, 3, 5], &[2, 1, 5]).unwrap(), 1);
        assert!(multivar_truncation(&[1, 1], &[0, 1]).is_err());
        assert!(multivar_truncation(&[1], &[1, 1]).is_err());
    }

    #[test]
    fn single_from_multi_examples() {
        assert_eq!(single_from_multi(5, &[1, 2]).unwrap(), 1);
        assert_eq!(single_from_multi(6, &[1, 2]).unwrap(), 2);
        assert_eq!(single_from_multi(3, &[4, 4]).unwrap(), 0);
    }

    #[test]
    fn hm_factor_examples() {
        let f = hm_factors(&[s(2), s(2)], 1).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|x| x.target == s(3)));

        let f = hm_factors(&[s(2), s(2)], 3).unwrap();
        assert_eq!(f.len(), 5);
        let len3: Vec<_> = f.iter().filter(|x| x.word.length() == 3).collect();
        assert_eq!(len3.len(), 2);
        assert!(len3.iter().all(|x| x.target == s(7)));

        let p = OddPrime::default();
        let f = hm_factors(&[StableComplex::moore(p, 5)], 9).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].target, StableComplex::moore(p, 6));

        assert!(hm_factors(&[s(2), StableComplex::zero(p)], 2).is_err());
    }

    #[test]
    fn tower_stage_examples() {
        let rule = StabilizationRule::new(2, 1);
        let t1 = tower_stage(1, &[s(2), s(2)], Some(&rule)).unwrap();
        let summary: Vec<(String, u32)> = t1.factors.iter().map(|f| (f.word.to_string(), f.trunc)).collect();
        assert_eq!(summary, vec![("x1".into(), 1), ("x2".into(), 1)]);

        let t2 = tower_stage(2, &[s(2), s(2)], Some(&rule)).unwrap();
        let summary: Vec<(String, u32)> = t2.factors.iter().map(|f| (f.word.to_string(), f.trunc)).collect();
        assert_eq!(summary, vec![("x1".into(), 2), ("x2".into(), 2), ("[x1,x2]".into(), 1)]);
        assert_eq!(t2.factors[2].target, s(5));
        assert_eq!(t2.factors[2].stab_stage, Some(4));

        assert_eq!(tower_stage(4, &[s(2), s(2)], None).unwrap().factors.len(), 8);
        assert!(tower_stage(0, &[s(2)], None).is_err());
    }

    #[test]
    fn tower_stage_without_spheres_has_no_stab_stage() {
        let p = OddPrime::default();
        let t = tower_stage(2, &[StableComplex::moore(p, 3), s(2)], Some(&StabilizationRule::new(3, 1))).unwrap();
        assert!(t.factors.iter().all(|f| f.stab_stage.is_none()));
    }

    #[test]
    fn towers_grow_monotonically() {
        let xs = [s(2), s(3), s(4)];
        for n in 1..8 {
            let a = tower_stage(n, &xs, None).unwrap();
            let b = tower_stage(n + 1, &xs, None).unwrap();
            for f in &a.factors {
                let g = b.factors.iter().find(|g| g.word == f.word).expect("factor persists");
                assert!(g.trunc >= f.trunc);
            }
            for g in &b.factors {
                if !a.factors.iter().any(|f| f.word == g.word) {
                    assert_eq!(g.word.length(), n + 1, "word joins exactly at stage |w|");
                }
            }
        }
    }

    #[test]
    fn stabilization_examples() {
        let w = LieWord::parse("[x1,x2]", 2).unwrap();
        assert_eq!(stabilization_stage(&w, &[2, 2], &StabilizationRule::new(2, 1)).unwrap(), 4);
        let x1 = LieWord::letter(0, 1).unwrap();
        assert_eq!(stabilization_stage(&x1, &[3], &StabilizationRule::new(3, 1)).unwrap(), 6);
        for w in hall_basis(3, 5) {
            let stage = stabilization_stage(&w, &[2, 4, 6], &StabilizationRule::new(5, 2)).unwrap();
            assert_eq!(stage, u64::from(w.length()) * 25);
        }
        assert!(stabilization_stage(&x1, &[0], &StabilizationRule::new(3, 1)).is_err());
        assert!(sphere_dims(&[StableComplex::moore(OddPrime::default(), 3)]).is_err());
    }

    #[test]
    fn parity_rule_can_be_flipped() {
        let x1 = LieWord::letter(0, 1).unwrap();
        let mut rule = StabilizationRule::new(3, 1);
        assert_eq!(stabilization_stage(&x1, &[2], &rule).unwrap(), 3);
        rule.parity = ParityRule::EvenSingle;
        assert_eq!(stabilization_stage(&x1, &[2], &rule).unwrap(), 6);
    }

    fn term_keys(d: &LayerDecomposition) -> Vec<(Vec<u32>, u32, String, StableComplex)> {
        let mut v: Vec<_> = d
            .terms
            .iter()
            .map(|t| (t.composition.clone(), t.divisor, t.word.to_string(), t.target.clone()))
            .collect();
        v.sort_by(|a, b| (&a.0, a.1, &a.2).cmp(&(&b.0, b.1, &b.2)));
        v
    }

    #[test]
    fn layer_decomposition_examples() {
        let p = OddPrime::default();
        let (x1, x2) = (StableComplex::moore(p, 3), s(4));
        let xs = [x1.clone(), x2.clone()];
        let d2 = wedge_layer_decomposition(2, &xs).unwrap();
        let mut expected = vec![
            (vec![2, 0], 2, "x1".to_string(), x1.suspend(1)),
            (vec![0, 2], 2, "x2".to_string(), x2.suspend(1)),
            (vec![1, 1], 1, "[x1,x2]".to_string(), x1.smash(&x2).suspend(1)),
        ];
        expected.sort_by(|a, b| (&a.0, a.1, &a.2).cmp(&(&b.0, b.1, &b.2)));
        assert_eq!(term_keys(&d2), expected);
        assert!(d2.terms.iter().all(|t| t.derivative_index == t.divisor));

        let d1 = wedge_layer_decomposition(1, &xs).unwrap();
        assert_eq!(d1.terms.len(), 2);
        assert!(d1.terms.iter().all(|t| t.divisor == 1));

        let single = wedge_layer_decomposition(3, std::slice::from_ref(&x1)).unwrap();
        assert_eq!(single.terms.len(), 1);
        assert_eq!(single.terms[0].composition, vec![3]);
        assert_eq!(single.terms[0].divisor, 3);
        assert_eq!(single.terms[0].word.to_string(), "x1");
    }

    #[test]
    fn divergence_examples() {
        let p = OddPrime::default();
        let r = wedge_divergence_report(&[2, 2], &StabilizationRule::new(2, 1), 4, p).unwrap();
        let stages: Vec<Vec<u64>> = r.by_length.iter().map(|s| s.stages.clone()).collect();
        assert_eq!(stages, vec![vec![2], vec![4], vec![6], vec![8]]);
        assert!(r.entries.iter().all(|e| e.target.as_single_sphere().unwrap() % 2 == 1));
        assert_eq!(r.increasing_stages, vec![2, 4, 6, 8]);

        let r = wedge_divergence_report(&[2, 3], &StabilizationRule::new(3, 1), 3, p).unwrap();
        let all: Vec<(u32, u64)> = r.entries.iter().map(|e| (e.length, e.stab_stage)).collect();
        // x1 -> S^3 odd, x2 -> S^4 even, [x1,x2] -> S^6 even,
        // [x1,[x1,x2]] -> S^8 even, [[x1,x2],x2] -> S^9 odd
        assert_eq!(all, vec![(1, 3), (1, 6), (2, 12), (3, 18), (3, 9)]);

        let r = wedge_divergence_report(&[5, 7], &StabilizationRule::new(3, 1), 12, p).unwrap();
        assert!(r.words_at_every_length);
        for s in &r.by_length {
            assert_eq!(s.word_count, s.necklace_count);
        }

        let r = wedge_divergence_report(&[3], &StabilizationRule::new(3, 1), 4, p).unwrap();
        assert!(!r.words_at_every_length);
        assert_eq!(r.notes.len(), 1);
    }
}
