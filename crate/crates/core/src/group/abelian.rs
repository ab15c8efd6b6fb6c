use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::GroupPresentation;

/// A finitely generated abelian group `Z^rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with
/// `d_1 | d_2 | … | d_k`, all `d_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_infinite(&self) -> bool {
        self.rank > 0
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, torsion: Vec::new() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let torsion: Vec<serde_json::Value> = self
            .torsion
            .iter()
            .map(|d| d.to_i64().map_or_else(|| serde_json::Value::String(d.to_string()), serde_json::Value::from))
            .collect();
        serde_json::json!({ "rank": self.rank, "torsion": torsion, "display": self.to_string() })
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Nonzero invariant factors of an integer matrix (Smith normal form
/// diagonal), each dividing the next.
pub fn smith_invariants(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].div_floor(&a[t][t]);
            for j in t..cols {
                let d = &q * &a[t][j];
                a[i][j] -= d;
            }
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].div_floor(&a[t][t]);
            for i in t..rows {
                let d = &q * &a[i][t];
                a[i][j] -= d;
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // Enforce divisibility by folding an offending row into the pivot row.
        let p = a[t][t].clone();
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &p).is_zero()));
        if let Some(i) = bad {
            for j in t..cols {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        out.push(p.abs());
        t += 1;
    }
    out
}

/// Abelianization of a presented group from the exponent-sum matrix of its
/// relators.
pub fn abelianize(p: &GroupPresentation) -> AbelianGroup {
    let m = p.generator_count();
    let rows: Vec<Vec<BigInt>> =
        p.relators().iter().map(|r| r.exponent_sums(m).into_iter().map(BigInt::from).collect()).collect();
    let inv = smith_invariants(rows);
    AbelianGroup { rank: m - inv.len(), torsion: inv.into_iter().filter(|d| !d.is_one()).collect() }
}
