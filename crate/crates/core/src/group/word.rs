use std::cmp::Ordering;

/// A generator or its inverse. Ordered by generator index, positive first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn neg(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    /// Position in the alphabet `g0, g0⁻¹, g1, g1⁻¹, …`.
    pub fn alphabet_index(self) -> usize {
        2 * self.gen + self.inverse as usize
    }

    pub fn from_alphabet_index(i: usize) -> Self {
        Letter { gen: i / 2, inverse: i % 2 == 1 }
    }
}

/// A freely reduced word in the generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    /// Freely reduces `letters`.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn gen(i: usize) -> Self {
        Word(vec![Letter::pos(i)])
    }

    /// From 1-based signed indices: `[1, -2]` is `g1 g2⁻¹`.
    pub fn from_signed(idx: &[i64]) -> Self {
        Word::new(idx.iter().map(|&i| {
            assert!(i != 0, "generator indices are 1-based");
            Letter { gen: (i.unsigned_abs() - 1) as usize, inverse: i < 0 }
        }))
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.0.iter().map(|l| if l.inverse { -(l.gen as i64 + 1) } else { l.gen as i64 + 1 }).collect()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::new(self.0.iter().chain(&other.0).copied())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// `u · self · u⁻¹`.
    pub fn conjugate(&self, u: &Word) -> Word {
        u.mul(self).mul(&u.inverse())
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    /// Largest generator index used, if any.
    pub fn max_gen(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, m: usize) -> Vec<i64> {
        let mut v = vec![0; m];
        for l in &self.0 {
            v[l.gen] += if l.inverse { -1 } else { 1 };
        }
        v
    }

    /// Replaces each generator by a word.
    pub fn substitute(&self, images: &[Word]) -> Word {
        Word::new(self.0.iter().flat_map(|l| {
            let w = &images[l.gen];
            if l.inverse { w.inverse().0 } else { w.0.clone() }
        }))
    }
}

/// Shortlex: length first, then letters in alphabet order.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All freely reduced words of length `1..=max_len` over `m` generators, in
/// shortlex order, produced lazily.
pub fn reduced_words(m: usize, max_len: usize) -> impl Iterator<Item = Word> {
    (1..=max_len).flat_map(move |len| ReducedWordsOfLength::new(m, len))
}

/// Depth-first odometer over reduced words of one fixed length.
struct ReducedWordsOfLength {
    alphabet: usize,
    len: usize,
    digits: Vec<usize>,
    done: bool,
}

impl ReducedWordsOfLength {
    fn new(m: usize, len: usize) -> Self {
        let alphabet = 2 * m;
        let mut it = ReducedWordsOfLength { alphabet, len, digits: Vec::with_capacity(len), done: alphabet == 0 };
        if !it.done {
            it.fill();
        }
        it
    }

    fn ok_after(&self, prev: Option<usize>, d: usize) -> bool {
        prev.is_none_or(|p| Letter::from_alphabet_index(p).inv() != Letter::from_alphabet_index(d))
    }

    /// Extends `digits` to full length with the smallest admissible letters.
    fn fill(&mut self) {
        while self.digits.len() < self.len {
            let prev = self.digits.last().copied();
            let d = (0..self.alphabet).find(|&d| self.ok_after(prev, d)).unwrap();
            self.digits.push(d);
        }
    }

    fn advance(&mut self) {
        while let Some(d) = self.digits.pop() {
            let prev = self.digits.last().copied();
            if let Some(next) = (d + 1..self.alphabet).find(|&e| self.ok_after(prev, e)) {
                self.digits.push(next);
                self.fill();
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for ReducedWordsOfLength {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        let w = Word(self.digits.iter().map(|&d| Letter::from_alphabet_index(d)).collect());
        self.advance();
        Some(w)
    }
}
