use std::fmt;

use super::{GroupError, Letter, Word};

/// A finitely presented group `⟨names | relators⟩`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupPresentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self, GroupError> {
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(GroupError::Parse { pos: 0, msg: format!("invalid generator name '{name}'") });
            }
            if name.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                return Err(GroupError::Parse { pos: 0, msg: format!("generator name '{name}' starts with a digit") });
            }
            if names[..i].contains(name) {
                return Err(GroupError::DuplicateGenerator(name.clone()));
            }
        }
        for r in &relators {
            if let Some(g) = r.max_gen() {
                if g >= names.len() {
                    return Err(GroupError::IndexOutOfRange { index: g, count: names.len() });
                }
            }
        }
        let relators = relators.into_iter().filter(|r| !r.is_empty()).collect();
        Ok(GroupPresentation { names, relators })
    }

    /// Parses relators given as text, e.g. `["x^3", "(xy)^2", "xh = hx"]`.
    pub fn parse(names: &[&str], relators: &[&str]) -> Result<Self, GroupError> {
        let shell = GroupPresentation::new(names.iter().map(|s| s.to_string()).collect(), Vec::new())?;
        let rels = relators.iter().map(|r| shell.parse_relator(r)).collect::<Result<Vec<_>, _>>()?;
        GroupPresentation::new(shell.names, rels)
    }

    /// The free group on the given generators.
    pub fn free(names: &[&str]) -> Result<Self, GroupError> {
        Self::parse(names, &[])
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Parses a word: generator names (longest match first), `^k` powers,
    /// parentheses, `1` for the identity; `*` and whitespace are separators.
    pub fn parse_word(&self, src: &str) -> Result<Word, GroupError> {
        let mut p = WordParser { src: src.as_bytes(), pos: 0, pres: self };
        let w = p.product()?;
        p.skip_separators();
        if p.pos < p.src.len() {
            return Err(GroupError::Parse { pos: p.pos, msg: format!("unexpected '{}'", p.src[p.pos] as char) });
        }
        Ok(w)
    }

    /// A relator `w` or an equation `u = v` (read as `u v⁻¹`).
    pub fn parse_relator(&self, src: &str) -> Result<Word, GroupError> {
        match src.split_once('=') {
            Some((lhs, rhs)) => {
                let l = self.parse_word(lhs)?;
                let r = self.parse_word(rhs).map_err(|e| match e {
                    GroupError::Parse { pos, msg } => GroupError::Parse { pos: pos + lhs.len() + 1, msg },
                    other => other,
                })?;
                Ok(l.mul(&r.inverse()))
            }
            None => self.parse_word(src),
        }
    }

    pub fn display_word<'a>(&'a self, w: &'a Word) -> WordDisplay<'a> {
        WordDisplay { pres: self, word: w }
    }

    pub fn word_to_string(&self, w: &Word) -> String {
        self.display_word(w).to_string()
    }

    pub fn check_word(&self, w: &Word) -> Result<(), GroupError> {
        match w.max_gen() {
            Some(g) if g >= self.names.len() => Err(GroupError::IndexOutOfRange { index: g, count: self.names.len() }),
            _ => Ok(()),
        }
    }
}

struct WordParser<'a> {
    src: &'a [u8],
    pos: usize,
    pres: &'a GroupPresentation,
}

impl WordParser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, GroupError> {
        Err(GroupError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_separators(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_whitespace() || self.src[self.pos] == b'*') {
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<Word, GroupError> {
        let mut acc = Word::identity();
        loop {
            self.skip_separators();
            match self.src.get(self.pos) {
                None | Some(b')') => return Ok(acc),
                _ => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
            }
        }
    }

    fn factor(&mut self) -> Result<Word, GroupError> {
        let base = match self.src[self.pos] {
            b'(' => {
                self.pos += 1;
                let w = self.product()?;
                if self.src.get(self.pos) != Some(&b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                w
            }
            b'1' => {
                self.pos += 1;
                Word::identity()
            }
            _ => {
                let rest = &self.src[self.pos..];
                let best = self
                    .pres
                    .names
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| rest.starts_with(n.as_bytes()))
                    .max_by_key(|(_, n)| n.len());
                let Some((i, name)) = best else {
                    return self.err("unknown generator");
                };
                self.pos += name.len();
                Word::gen(i)
            }
        };
        if self.src.get(self.pos) == Some(&b'^') {
            self.pos += 1;
            let neg = self.src.get(self.pos) == Some(&b'-');
            if neg {
                self.pos += 1;
            }
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let Ok(k) = digits.parse::<i64>() else {
                self.pos = start;
                return self.err("expected exponent");
            };
            if k > 10_000 {
                self.pos = start;
                return self.err("exponent too large");
            }
            return Ok(base.pow(if neg { -k } else { k }));
        }
        Ok(base)
    }
}

pub struct WordDisplay<'a> {
    pres: &'a GroupPresentation,
    word: &'a Word,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        if letters.is_empty() {
            return write!(f, "1");
        }
        let compact = self.pres.names.iter().all(|n| n.chars().count() == 1);
        let mut runs: Vec<(Letter, usize)> = Vec::new();
        for &l in letters {
            match runs.last_mut() {
                Some((prev, k)) if *prev == l => *k += 1,
                _ => runs.push((l, 1)),
            }
        }
        for (i, (l, k)) in runs.iter().enumerate() {
            if i > 0 && !compact {
                write!(f, "*")?;
            }
            let name = self.pres.names.get(l.gen).map(String::as_str).unwrap_or("?");
            // Repetitions of a single-letter name are spelled out so that
            // words like `abac` read naturally; longer runs use exponents.
            if compact && !l.inverse && *k <= 2 {
                for _ in 0..*k {
                    write!(f, "{name}")?;
                }
                continue;
            }
            match (l.inverse, k) {
                (false, 1) => write!(f, "{name}")?,
                (false, k) => write!(f, "{name}^{k}")?,
                (true, k) => write!(f, "{name}^-{k}")?,
            }
        }
        Ok(())
    }
}
