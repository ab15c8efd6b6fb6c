//! Trace functions, Procesi coordinate words, and valuation tests at the
//! places of a rationally parametrized representation family.

use std::collections::HashMap;

use thiserror::Error;

use crate::field::{Place, RatFunc, Scalar, Valuation};
use crate::group::{GroupError, Letter, Representation, Word};
use crate::lattice::Matrix;

/// Default bound on the number of Procesi words.
pub const DEFAULT_PROCESI_CAP: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CharacterError {
    #[error("{count} words exceed the cap of {cap}")]
    SizeOverflow { count: u128, cap: u64 },
    #[error("dimension must be at least 2 and there must be a generator")]
    InvalidShape,
    #[error("representations have different presentations or dimensions")]
    Incompatible,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `Σ_{k=1}^{2ⁿ-1} m^k`, saturating.
pub fn procesi_count(n: u32, m: u32) -> u128 {
    let top: u128 = if n >= 127 { u128::MAX } else { (1u128 << n) - 1 };
    if m <= 1 {
        return top * m as u128;
    }
    let (mut total, mut power, mut k) = (0u128, 1u128, 0u128);
    while k < top && total < u128::MAX {
        power = power.saturating_mul(m as u128);
        total = total.saturating_add(power);
        k += 1;
    }
    total
}

/// All positive words `γ_{i₁}⋯γ_{i_k}` with `1 ≤ k ≤ 2ⁿ − 1`, in
/// length-lexicographic order.
pub fn procesi_words(n: u32, m: u32, cap: u64) -> Result<Vec<Word>, CharacterError> {
    if n < 2 || m < 1 {
        return Err(CharacterError::InvalidShape);
    }
    let count = procesi_count(n, m);
    if count > cap as u128 {
        return Err(CharacterError::SizeOverflow { count, cap });
    }
    let top = (1usize << n) - 1;
    let mut out = Vec::with_capacity(count as usize);
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..top {
        let mut next = Vec::with_capacity(level.len() * m as usize);
        for w in &level {
            for g in 0..m as usize {
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|v| Word::new(v.iter().map(|&g| Letter::pos(g)))));
        level = next;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceFunction<K: Scalar> {
    pub word: Word,
    pub value: RatFunc<K>,
}

/// Exact traces of `words`, sharing products of common prefixes.
pub fn trace_table<K: Scalar>(rep: &Representation<K>, words: &[Word]) -> Result<Vec<TraceFunction<K>>, GroupError> {
    let Some(ctx) = rep.ctx() else {
        return Err(GroupError::EmptyPresentation);
    };
    let mut cache: HashMap<Vec<Letter>, Matrix<K>> = HashMap::new();
    cache.insert(Vec::new(), Matrix::identity(rep.dim(), ctx));
    let mut out = Vec::with_capacity(words.len());
    for w in words {
        rep.presentation().check_word(w)?;
        let letters = w.letters();
        let known = (0..=letters.len()).rev().find(|&i| cache.contains_key(&letters[..i])).unwrap();
        let mut acc = cache[&letters[..known]].clone();
        for i in known..letters.len() {
            let l = letters[i];
            acc = &acc * rep.letter_image(l.gen, l.inverse);
            cache.insert(letters[..=i].to_vec(), acc.clone());
        }
        out.push(TraceFunction { word: w.clone(), value: acc.trace() });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Verdict {
    IdealPointCertified,
    NoPoleFound,
}

#[derive(Clone, Debug)]
pub struct IdealPointReport<K: Scalar> {
    pub place: Place<K>,
    pub entries: Vec<(Word, Valuation)>,
    pub verdict: Verdict,
    /// The first listed word whose trace has a pole, with its valuation.
    pub witness: Option<(Word, i64)>,
}

impl<K: Scalar> IdealPointReport<K> {
    pub fn to_json(&self, word_text: impl Fn(&Word) -> String) -> serde_json::Value {
        let entries: Vec<_> = self
            .entries
            .iter()
            .map(|(w, v)| serde_json::json!({ "word": word_text(w), "valuation": v }))
            .collect();
        serde_json::json!({
            "place": self.place.to_string(),
            "entries": entries,
            "verdict": self.verdict,
            "witness": self.witness.as_ref().map(|(w, v)| serde_json::json!({ "word": word_text(w), "valuation": v })),
        })
    }
}

/// Valuations of the trace functions of `words` at `place`; a negative one
/// certifies an ideal point there.
pub fn analyze_ideal_point<K: Scalar>(
    rep: &Representation<K>,
    place: &Place<K>,
    words: &[Word],
) -> Result<IdealPointReport<K>, GroupError> {
    let table = trace_table(rep, words)?;
    let entries: Vec<(Word, Valuation)> = table.into_iter().map(|tf| (tf.word, tf.value.valuation(place))).collect();
    let witness = entries.iter().find_map(|(w, v)| match v {
        Valuation::Finite(x) if *x < 0 => Some((w.clone(), *x)),
        _ => None,
    });
    let verdict = if witness.is_some() { Verdict::IdealPointCertified } else { Verdict::NoPoleFound };
    Ok(IdealPointReport { place: place.clone(), entries, verdict, witness })
}

/// Equality of characters: all Procesi trace functions agree.
pub fn character_equal<K: Scalar>(
    a: &Representation<K>,
    b: &Representation<K>,
    cap: u64,
) -> Result<bool, CharacterError> {
    if a.presentation() != b.presentation() || a.dim() != b.dim() {
        return Err(CharacterError::Incompatible);
    }
    let words = procesi_words(a.dim() as u32, a.presentation().generator_count() as u32, cap)?;
    let ta = trace_table(a, &words)?;
    let tb = trace_table(b, &words)?;
    Ok(ta.iter().zip(&tb).all(|(x, y)| x.value == y.value))
}
