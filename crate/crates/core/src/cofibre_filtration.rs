//! Filtrations of `cof(f)^{∧n}` and of the layers `𝐃_n cof(f)` for a map of
//! spectra `f: E → F`.
//!
//! Filtering the punctured cube of `f^{∧n}` by subset size gives graded
//! pieces `cof(E^{∧n} → F^{∧n})` for `k = 0` and
//! `Σ Ind_{Σ_{n-k}×Σ_k}^{Σ_n}(E^{∧(n-k)} ∧ cof(f)^{∧k})` for `1 ≤ k < n`.
//! Passing to layers, piece `k ≥ 1` splits over `d | gcd(k, n-k)` and
//! `w ∈ B((n-k)/d, k/d)` into `Σ 𝐃_d Σ((Σ^{-1}E)^{∧(n-k)/d} ∧ (Σ^{-1}cof f)^{∧k/d})`.
//!
//! The filtration obtained instead from `F → cof(f)` has pieces
//! `Ind((ΣE)^{∧(n-k)} ∧ F^{∧k})`, which do not see `f` at all, so it is not
//! offered here.
//!
//! For `f` of degree p on `S^ℓ` the bottom piece is a mod-p^n Moore spectrum,
//! outside the cell algebra. It is carried as an opaque token with a flag
//! recording that it vanishes periodically once `n > 2p`.

use serde::Serialize;

use crate::arith::{binomial, divisors, gcd, is_prime};
use crate::error::{CalcError, Result};
use crate::lie_words::{basis_multidegree, witt_count, LieWord};
use crate::stable_complex::{OddPrime, StableComplex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapDescriptor {
    /// Multiplication by the configured prime on `S^source_dim`.
    DegreeP { source_dim: i64 },
    ZeroMap {
        source: StableComplex,
        target: StableComplex,
    },
}

impl MapDescriptor {
    pub fn source(&self, prime: OddPrime) -> StableComplex {
        match self {
            MapDescriptor::DegreeP { source_dim } => StableComplex::sphere(prime, *source_dim),
            MapDescriptor::ZeroMap { source, .. } => source.clone(),
        }
    }

    pub fn target(&self, prime: OddPrime) -> StableComplex {
        match self {
            MapDescriptor::DegreeP { source_dim } => StableComplex::sphere(prime, *source_dim),
            MapDescriptor::ZeroMap { target, .. } => target.clone(),
        }
    }

    /// `cof(f)`: `M^ℓ` for degree p, `F ∨ ΣE` for the zero map.
    pub fn cofibre(&self, prime: OddPrime) -> StableComplex {
        match self {
            MapDescriptor::DegreeP { source_dim } => StableComplex::moore(prime, *source_dim),
            MapDescriptor::ZeroMap { source, target } => target.wedge(&source.suspend(1)),
        }
    }

    fn check_source(&self, e: &StableComplex) -> Result<()> {
        if let MapDescriptor::ZeroMap { source, target } = self {
            if source.prime() != target.prime() {
                return Err(CalcError::PrimeMismatch {
                    expected: source.prime().get(),
                    found: target.prime().get(),
                });
            }
        }
        if self.source(e.prime()) != *e {
            return Err(CalcError::precondition(format!(
                "E = {e} is not the source of the map ({})",
                self.source(e.prime())
            )));
        }
        Ok(())
    }
}

/// `cof(E^{∧n} → F^{∧n})`, expanded when the cell algebra can express it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CofibreToken {
    pub source: StableComplex,
    pub target: StableComplex,
    pub expanded: Option<StableComplex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SmashGradedPiece {
    Cofibre(CofibreToken),
    /// `Σ^shift Ind(underlying)` with `induction_multiplicity = C(n, k)` cosets.
    Induced {
        shift: i64,
        underlying: StableComplex,
        induction_multiplicity: u128,
    },
}

impl SmashGradedPiece {
    /// Nonequivariant underlying complex of the piece, when expressible.
    pub fn expanded(&self) -> Option<StableComplex> {
        match self {
            SmashGradedPiece::Cofibre(token) => token.expanded.clone(),
            SmashGradedPiece::Induced {
                shift,
                underlying,
                induction_multiplicity,
            } => {
                let copies = u64::try_from(*induction_multiplicity).ok()?;
                Some(underlying.suspend(*shift).scale(copies))
            }
        }
    }
}

/// Graded piece `k` of the subset-size filtration of `cof(f)^{∧n}`.
pub fn smash_power_graded(e: &StableComplex, f: &MapDescriptor, n: u32, k: u32) -> Result<SmashGradedPiece> {
    f.check_source(e)?;
    if n == 0 || k >= n {
        return Err(CalcError::precondition(format!("graded index k = {k} outside 0..{n}")));
    }
    let prime = e.prime();
    if k == 0 {
        let source = e.smash_power(n);
        let target = f.target(prime).smash_power(n);
        let expanded = match f {
            // f^{∧n} is null, so its cofibre splits
            MapDescriptor::ZeroMap { .. } => Some(target.wedge(&source.suspend(1))),
            MapDescriptor::DegreeP { .. } => None,
        };
        return Ok(SmashGradedPiece::Cofibre(CofibreToken {
            source,
            target,
            expanded,
        }));
    }
    let underlying = e.smash_power(n - k).smash(&f.cofibre(prime).smash_power(k));
    Ok(SmashGradedPiece::Induced {
        shift: 1,
        underlying,
        induction_multiplicity: binomial(u64::from(n), u64::from(k)),
    })
}

/// One summand `Σ^shift 𝐃_d(inner)` of a layer's graded piece.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerTerm {
    pub shift: i64,
    pub d: u32,
    pub word: LieWord,
    pub inner: StableComplex,
}

impl LayerTerm {
    /// `𝐃_1` is the identity, so `d = 1` terms are plain complexes. Terms with
    /// `d ≥ 2` stay symbolic.
    pub fn expand(&self) -> Option<StableComplex> {
        (self.d == 1).then(|| self.inner.suspend(self.shift))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum FiltrationPiece {
    /// `cof(𝐃_n E → 𝐃_n F)`; `k0` is always `"opaque"`.
    Bottom { k0: &'static str, null_flag: bool },
    Terms { k: u32, terms: Vec<LayerTerm> },
}

impl FiltrationPiece {
    fn bottom(null_flag: bool) -> Self {
        FiltrationPiece::Bottom { k0: "opaque", null_flag }
    }
}

/// The finite filtration of `𝐃_n cof(f)`, pieces listed for `k = 0, …, n-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedFiltration {
    pub n: u32,
    pub pieces: Vec<FiltrationPiece>,
}

impl GradedFiltration {
    pub fn bottom_is_null(&self) -> bool {
        matches!(self.pieces.first(), Some(FiltrationPiece::Bottom { null_flag: true, .. }))
    }

    /// Terms of piece `k ≥ 1`.
    pub fn terms(&self, k: u32) -> &[LayerTerm] {
        self.pieces
            .iter()
            .find_map(|piece| match piece {
                FiltrationPiece::Terms { k: kk, terms } if *kk == k => Some(terms.as_slice()),
                _ => None,
            })
            .unwrap_or(&[])
    }

    /// Wedge of piece `k`, when every term in it has `d = 1`.
    pub fn expanded_piece(&self, k: u32, prime: OddPrime) -> Option<StableComplex> {
        let parts: Option<Vec<StableComplex>> = self.terms(k).iter().map(LayerTerm::expand).collect();
        Some(StableComplex::wedge_all(prime, &parts?))
    }
}

fn bottom_is_null(f: &MapDescriptor, n: u32, prime: OddPrime) -> bool {
    matches!(f, MapDescriptor::DegreeP { .. }) && u64::from(n) > 2 * u64::from(prime.get())
}

/// Filtration of `𝐃_n cof(f)` with `(d, w)`-indexed terms in each piece.
pub fn layer_filtration(e: &StableComplex, f: &MapDescriptor, n: u32) -> Result<GradedFiltration> {
    if n == 0 {
        return Err(CalcError::precondition("layer index n must be at least 1"));
    }
    f.check_source(e)?;
    let prime = e.prime();
    let desuspended_e = e.suspend(-1);
    let desuspended_cof = f.cofibre(prime).suspend(-1);

    let mut pieces = vec![FiltrationPiece::bottom(bottom_is_null(f, n, prime))];
    for k in 1..n {
        let mut terms = Vec::new();
        let g = gcd(u64::from(k), u64::from(n - k));
        for d in divisors(g) {
            let d = d as u32;
            let (a, b) = ((n - k) / d, k / d);
            let inner = desuspended_e
                .smash_power(a)
                .smash(&desuspended_cof.smash_power(b))
                .suspend(1);
            for word in basis_multidegree(&[a, b])?.words {
                terms.push(LayerTerm {
                    shift: 1,
                    d,
                    word,
                    inner: inner.clone(),
                });
            }
        }
        pieces.push(FiltrationPiece::Terms { k, terms });
    }
    Ok(GradedFiltration { n, pieces })
}

/// Closed form of the layer filtration of `M^ℓ = cof(p: S^ℓ → S^ℓ)` at a prime
/// index `n`: piece `k` is `|B(n-k, k)|` copies of `Σ^{2-n+ℓ(n-k)} (M^ℓ)^{∧k}`.
pub fn moore_layer_simplified(ell: i64, n: u32, prime: OddPrime) -> Result<GradedFiltration> {
    if !is_prime(u64::from(n)) {
        return Err(CalcError::NotPrime(u64::from(n)));
    }
    let f = MapDescriptor::DegreeP { source_dim: ell };
    let moore = StableComplex::moore(prime, ell);
    let mut pieces = vec![FiltrationPiece::bottom(bottom_is_null(&f, n, prime))];
    for k in 1..n {
        let shift = 2 - i64::from(n) + ell * i64::from(n - k);
        let inner = moore.smash_power(k);
        let terms = basis_multidegree(&[n - k, k])?
            .words
            .into_iter()
            .map(|word| LayerTerm {
                shift,
                d: 1,
                word,
                inner: inner.clone(),
            })
            .collect();
        pieces.push(FiltrationPiece::Terms { k, terms });
    }
    Ok(GradedFiltration { n, pieces })
}

/// Piece `k ≥ 1` of the Moore layer filtration at a prime `n`, without
/// listing words: `copies = |B(n-k, k)|` copies of `term`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoorePieceSummary {
    pub k: u32,
    pub copies: u64,
    pub term: StableComplex,
}

/// Compact form of [`moore_layer_simplified`], usable at layer indices where
/// the word lists are far too long to enumerate.
pub fn moore_layer_summary(ell: i64, n: u32, prime: OddPrime) -> Result<Vec<MoorePieceSummary>> {
    if !is_prime(u64::from(n)) {
        return Err(CalcError::NotPrime(u64::from(n)));
    }
    let moore = StableComplex::moore(prime, ell);
    (1..n)
        .map(|k| {
            let shift = 2 - i64::from(n) + ell * i64::from(n - k);
            Ok(MoorePieceSummary {
                k,
                copies: witt_count(&[n - k, k])?,
                term: moore.smash_power(k).suspend(shift),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> OddPrime {
        OddPrime::default()
    }

    fn m(d: i64) -> StableComplex {
        StableComplex::moore(p(), d)
    }

    fn degree_p(ell: i64) -> (StableComplex, MapDescriptor) {
        (StableComplex::sphere(p(), ell), MapDescriptor::DegreeP { source_dim: ell })
    }

    #[test]
    fn graded_smash_power_examples() {
        let ell = 4;
        let (e, f) = degree_p(ell);
        match smash_power_graded(&e, &f, 2, 1).unwrap() {
            SmashGradedPiece::Induced {
                shift,
                underlying,
                induction_multiplicity,
            } => {
                assert_eq!(underlying.suspend(shift), m(2 * ell + 1));
                assert_eq!(induction_multiplicity, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
        match smash_power_graded(&e, &f, 3, 2).unwrap() {
            SmashGradedPiece::Induced {
                shift,
                underlying,
                induction_multiplicity,
            } => {
                assert_eq!(underlying.suspend(shift), m(3 * ell + 1).wedge(&m(3 * ell + 2)));
                assert_eq!(induction_multiplicity, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
        match smash_power_graded(&e, &f, 3, 0).unwrap() {
            SmashGradedPiece::Cofibre(token) => {
                assert_eq!(token.source, StableComplex::sphere(p(), 3 * ell));
                assert!(token.expanded.is_none());
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(smash_power_graded(&e, &f, 3, 3).is_err());
        assert!(smash_power_graded(&m(2), &f, 3, 1).is_err());
    }

    #[test]
    fn zero_map_bottom_piece_degenerates() {
        let e = StableComplex::sphere(p(), 2);
        let f = MapDescriptor::ZeroMap {
            source: e.clone(),
            target: StableComplex::zero(p()),
        };
        match smash_power_graded(&e, &f, 3, 0).unwrap() {
            SmashGradedPiece::Cofibre(token) => {
                assert!(token.target.is_zero());
                assert_eq!(token.expanded, Some(StableComplex::sphere(p(), 7)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn induction_multiplicity_counts_subsets() {
        let (e, f) = degree_p(5);
        for n in 1..=8u32 {
            for k in 1..n {
                let subsets = (0u32..1 << n).filter(|s| s.count_ones() == k).count() as u128;
                match smash_power_graded(&e, &f, n, k).unwrap() {
                    SmashGradedPiece::Induced { induction_multiplicity, .. } => {
                        assert_eq!(induction_multiplicity, subsets)
                    }
                    other => panic!("unexpected {other:?}"),
                }
            }
        }
    }

    #[test]
    fn layer_filtration_n2() {
        let ell = 6;
        let (e, f) = degree_p(ell);
        let filt = layer_filtration(&e, &f, 2).unwrap();
        assert_eq!(filt.pieces.len(), 2);
        let terms = filt.terms(1);
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].d, 1);
        assert_eq!(terms[0].word.to_string(), "[x1,x2]");
        assert_eq!(terms[0].expand(), Some(m(2 * ell)));
        assert!(!filt.bottom_is_null());
    }

    #[test]
    fn prime_layers_only_have_divisor_one() {
        let (e, f) = degree_p(5);
        for n in [2u32, 3, 5, 7, 11, 13] {
            let filt = layer_filtration(&e, &f, n).unwrap();
            for k in 1..n {
                let terms = filt.terms(k);
                assert!(terms.iter().all(|t| t.d == 1));
                assert_eq!(terms.len() as u64, witt_count(&[n - k, k]).unwrap());
            }
        }
    }

    #[test]
    fn composite_layer_keeps_higher_divisors_symbolic() {
        let (e, f) = degree_p(5);
        let filt = layer_filtration(&e, &f, 4).unwrap();
        let terms = filt.terms(2);
        let ds: Vec<u32> = terms.iter().map(|t| t.d).collect();
        assert_eq!(ds, vec![1, 2]);
        let d2 = &terms[1];
        assert_eq!(d2.word.to_string(), "[x1,x2]");
        assert_eq!(d2.inner, StableComplex::sphere(p(), 4).smash(&m(4)).suspend(1));
        assert_eq!(d2.expand(), None);
        assert_eq!(filt.expanded_piece(2, p()), None);
    }

    #[test]
    fn bottom_nullity_flag() {
        let (e, f) = degree_p(5);
        assert!(!layer_filtration(&e, &f, 6).unwrap().bottom_is_null());
        assert!(layer_filtration(&e, &f, 7).unwrap().bottom_is_null());
        let zero = MapDescriptor::ZeroMap {
            source: e.clone(),
            target: e.clone(),
        };
        assert!(!layer_filtration(&e, &zero, 9).unwrap().bottom_is_null());
    }

    #[test]
    fn moore_simplified_examples() {
        let filt = moore_layer_simplified(5, 7, p()).unwrap();
        let k1 = filt.terms(1);
        assert_eq!(k1.len(), 1);
        assert_eq!(k1[0].expand(), Some(m(30)));
        let k2 = filt.terms(2);
        assert_eq!(k2.len() as u64, witt_count(&[5, 2]).unwrap());
        for t in k2 {
            assert_eq!(t.expand(), Some(m(30).wedge(&m(31))));
        }
        assert!(filt.bottom_is_null());
        assert_eq!(moore_layer_simplified(5, 8, p()), Err(CalcError::NotPrime(8)));
    }

    #[test]
    fn general_and_simplified_agree_for_small_primes() {
        for ell in [5i64, 6] {
            for n in [2u32, 3, 5, 7] {
                let (e, f) = degree_p(ell);
                let general = layer_filtration(&e, &f, n).unwrap();
                let simple = moore_layer_simplified(ell, n, p()).unwrap();
                for k in 1..n {
                    let a: Vec<_> = general.terms(k).iter().map(LayerTerm::expand).collect();
                    let b: Vec<_> = simple.terms(k).iter().map(LayerTerm::expand).collect();
                    assert_eq!(a, b, "ell={ell} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn summary_matches_explicit_terms() {
        for ell in [5i64, 6] {
            for n in [2u32, 3, 5, 7, 11] {
                let explicit = moore_layer_simplified(ell, n, p()).unwrap();
                for piece in moore_layer_summary(ell, n, p()).unwrap() {
                    let terms = explicit.terms(piece.k);
                    assert_eq!(terms.len() as u64, piece.copies);
                    assert!(terms.iter().all(|t| t.expand().as_ref() == Some(&piece.term)));
                }
            }
        }
        assert!(moore_layer_summary(5, 15, p()).is_err());
    }

    #[test]
    fn json_shape() {
        let (e, f) = degree_p(5);
        let filt = layer_filtration(&e, &f, 2).unwrap();
        let v = serde_json::to_value(&filt).unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["pieces"][0], serde_json::json!({"k0": "opaque", "null_flag": false}));
        assert_eq!(v["pieces"][1]["k"], 1);
        let term = &v["pieces"][1]["terms"][0];
        assert_eq!(term["shift"], 1);
        assert_eq!(term["d"], 1);
        assert_eq!(term["word"], "[x1,x2]");
        assert_eq!(term["inner"]["prime"], 3);
    }
}
