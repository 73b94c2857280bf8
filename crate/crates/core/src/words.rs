//! Generator alphabets, free words, and the presentations of G(n).
//!
//! A [`Word`] is read as a product of generators in which the leftmost letter
//! acts last: the word `R1 R2` means "apply R2, then R1". Every module in the
//! crate shares this convention.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("plane letter ({i},{j}) invalid for dimension {n}")]
    InvalidPlane { i: usize, j: usize, n: usize },
    #[error("rank must be at least 3, got {0}")]
    RankTooSmall(usize),
    #[error("unknown variant `{0}` (expected `standard` or `twisted`)")]
    UnknownVariant(String),
    #[error("presentation text line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

/// A standard generator `R_index` raised to `exp = ±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub index: usize,
    pub exp: i8,
}

impl Letter {
    pub fn new(index: usize) -> Self {
        Letter { index, exp: 1 }
    }

    pub fn inv(index: usize) -> Self {
        Letter { index, exp: -1 }
    }

    pub fn inverse(self) -> Self {
        Letter {
            index: self.index,
            exp: -self.exp,
        }
    }

    /// Column of this letter in a coset table: `R1, R1^-1, R2, R2^-1, ...`.
    pub fn column(self) -> usize {
        2 * (self.index - 1) + usize::from(self.exp < 0)
    }

    pub fn from_column(col: usize) -> Self {
        Letter {
            index: col / 2 + 1,
            exp: if col.is_multiple_of(2) { 1 } else { -1 },
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp < 0 {
            write!(f, "R{}^-1", self.index)
        } else {
            write!(f, "R{}", self.index)
        }
    }
}

/// A word over `R_1 .. R_{rank-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    pub letters: Vec<Letter>,
    pub rank: usize,
}

impl Word {
    pub fn empty(rank: usize) -> Self {
        Word {
            letters: Vec::new(),
            rank,
        }
    }

    pub fn from_letters(rank: usize, letters: Vec<Letter>) -> Result<Self, WordError> {
        for l in &letters {
            check_index(l.index, rank)?;
        }
        Ok(Word { letters, rank })
    }

    /// `R_index^k`, with negative `k` giving inverse letters.
    pub fn power(rank: usize, index: usize, k: i64) -> Self {
        let l = if k >= 0 {
            Letter::new(index)
        } else {
            Letter::inv(index)
        };
        Word {
            letters: vec![l; k.unsigned_abs() as usize],
            rank,
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation `self · other` (other acts first).
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            letters,
            rank: self.rank.max(other.rank),
        }
    }

    pub fn pow(&self, k: usize) -> Word {
        let mut letters = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        Word {
            letters,
            rank: self.rank,
        }
    }

    pub fn reversed(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word {
            letters,
            rank: self.rank,
        }
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inverse())
    }

    /// Compact rendering with exponents collected, e.g. `R1^4 R2^-1`; `Id` when empty.
    pub fn to_power_string(&self) -> String {
        if self.letters.is_empty() {
            return "Id".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut k = 1;
            while i + k < self.letters.len() && self.letters[i + k] == l {
                k += 1;
            }
            let e = i64::from(l.exp) * k as i64;
            parts.push(if e == 1 {
                format!("R{}", l.index)
            } else {
                format!("R{}^{}", l.index, e)
            });
            i += k;
        }
        parts.join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

fn check_index(index: usize, rank: usize) -> Result<(), WordError> {
    if index == 0 || index + 1 > rank {
        Err(WordError::IndexOutOfRange { index, rank })
    } else {
        Ok(())
    }
}

/// Parses whitespace-separated tokens `R<k>` and `R<k>^-1`.
///
/// As conveniences `R<k>^<e>` expands to |e| copies and the token `Id` is the
/// empty word. The result is not freely reduced.
pub fn parse_word(text: &str, rank: usize) -> Result<Word, WordError> {
    let mut letters = Vec::new();
    for tok in text.split_whitespace() {
        if tok == "Id" {
            continue;
        }
        let bad = || WordError::MalformedToken(tok.to_string());
        let body = tok.strip_prefix('R').ok_or_else(bad)?;
        let (idx, exp) = match body.split_once('^') {
            Some((i, e)) => (i, e.parse::<i64>().map_err(|_| bad())?),
            None => (body, 1),
        };
        if idx.is_empty() || !idx.bytes().all(|b| b.is_ascii_digit()) || exp == 0 {
            return Err(bad());
        }
        let index: usize = idx.parse().map_err(|_| bad())?;
        check_index(index, rank)?;
        letters.extend(Word::power(rank, index, exp).letters);
    }
    Ok(Word { letters, rank })
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.letters.len());
    for &l in &w.letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word {
        letters: out,
        rank: w.rank,
    }
}

pub fn invert(w: &Word) -> Word {
    Word {
        letters: w.letters.iter().rev().map(|l| l.inverse()).collect(),
        rank: w.rank,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    #[default]
    Standard,
    Twisted,
}

impl FromStr for Variant {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "standard" => Ok(Variant::Standard),
            "twisted" => Ok(Variant::Twisted),
            other => Err(WordError::UnknownVariant(other.to_string())),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Standard => "standard",
            Variant::Twisted => "twisted",
        })
    }
}

/// Generators `R_1 .. R_{rank-1}` subject to `relators`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub rank: usize,
    pub relators: Vec<Word>,
    /// `None` for a presentation read from text that matches neither built-in variant.
    pub variant: Option<Variant>,
}

/// Builds the braid-quotient presentation of rank `n`.
///
/// Relators, in order: `R_i R_{i+1} R_i (R_{i+1} R_i R_{i+1})^-1` for
/// `i = 1..n-2`, `[R_i, R_j]` for `j - i >= 2`, then the variant relators:
/// `R1^2 (R2 R1^2 R2)^-1` (standard) or `R1^2 (R2 R1^6 R2)^-1` and
/// `R1^4 R2 R1^-4 R2^-1` (twisted).
pub fn presentation_for(n: usize, variant: Variant) -> Result<Presentation, WordError> {
    if n < 3 {
        return Err(WordError::RankTooSmall(n));
    }
    let g = |i: usize| Word::power(n, i, 1);
    let gi = |i: usize| Word::power(n, i, -1);
    let mut relators = Vec::new();
    for i in 1..=n - 2 {
        let lhs = g(i).concat(&g(i + 1)).concat(&g(i));
        let rhs = g(i + 1).concat(&g(i)).concat(&g(i + 1));
        relators.push(lhs.concat(&invert(&rhs)));
    }
    for i in 1..n {
        for j in i + 2..n {
            relators.push(g(i).concat(&g(j)).concat(&gi(i)).concat(&gi(j)));
        }
    }
    let r1 = |k: i64| Word::power(n, 1, k);
    match variant {
        Variant::Standard => {
            let rhs = g(2).concat(&r1(2)).concat(&g(2));
            relators.push(r1(2).concat(&invert(&rhs)));
        }
        Variant::Twisted => {
            let rhs = g(2).concat(&r1(6)).concat(&g(2));
            relators.push(r1(2).concat(&invert(&rhs)));
            relators.push(r1(4).concat(&g(2)).concat(&r1(-4)).concat(&gi(2)));
        }
    }
    let relators = relators.iter().map(free_reduce).collect();
    Ok(Presentation {
        rank: n,
        relators,
        variant: Some(variant),
    })
}

impl Presentation {
    /// Renders the line-oriented text format read by [`Presentation::parse`].
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(v) = self.variant {
            s.push_str(&format!("# variant: {v}\n"));
        }
        s.push_str(&format!("rank: {}\n", self.rank));
        for r in &self.relators {
            s.push_str(&format!("relator: {r}\n"));
        }
        s
    }

    /// Parses `rank: <n>` followed by `relator: <tokens>` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Presentation, WordError> {
        let mut rank = None;
        let mut relators = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |msg: &str| WordError::Syntax {
                line: ln + 1,
                msg: msg.to_string(),
            };
            let (key, val) = line
                .split_once(':')
                .ok_or_else(|| syntax("expected `key: value`"))?;
            match key.trim() {
                "rank" => {
                    if rank.is_some() {
                        return Err(syntax("duplicate rank"));
                    }
                    let n: usize = val.trim().parse().map_err(|_| syntax("bad rank"))?;
                    if n < 3 {
                        return Err(WordError::RankTooSmall(n));
                    }
                    rank = Some(n);
                }
                "relator" => {
                    let n = rank.ok_or_else(|| syntax("relator before rank"))?;
                    let w = free_reduce(&parse_word(val, n)?);
                    if w.is_empty() {
                        return Err(syntax("relator reduces to the empty word"));
                    }
                    relators.push(w);
                }
                other => return Err(syntax(&format!("unknown key `{other}`"))),
            }
        }
        let rank = rank.ok_or(WordError::Syntax {
            line: 0,
            msg: "missing rank".to_string(),
        })?;
        let variant = [Variant::Standard, Variant::Twisted]
            .into_iter()
            .find(|&v| presentation_for(rank, v).is_ok_and(|p| p.relators == relators));
        Ok(Presentation {
            rank,
            relators,
            variant,
        })
    }
}

/// The plane-rotation letter `R_{ij}` (1-based axes); its inverse is `R_{ji}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PlaneLetter {
    pub i: usize,
    pub j: usize,
}

impl PlaneLetter {
    pub fn new(i: usize, j: usize, n: usize) -> Result<Self, WordError> {
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return Err(WordError::InvalidPlane { i, j, n });
        }
        Ok(PlaneLetter { i, j })
    }

    pub fn inverse(self) -> Self {
        PlaneLetter {
            i: self.j,
            j: self.i,
        }
    }

    pub fn touches(self, k: usize) -> bool {
        self.i == k || self.j == k
    }

    pub fn disjoint(self, other: PlaneLetter) -> bool {
        !self.touches(other.i) && !self.touches(other.j)
    }
}

impl fmt::Display for PlaneLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.i < 10 && self.j < 10 {
            write!(f, "R{}{}", self.i, self.j)
        } else {
            write!(f, "R{},{}", self.i, self.j)
        }
    }
}

pub fn format_plane_word(pw: &[PlaneLetter]) -> String {
    if pw.is_empty() {
        return "Id".to_string();
    }
    pw.iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses tokens `R<i><j>` (single-digit axes) or `R<i>,<j>`; `Id` is empty.
pub fn parse_plane_word(text: &str, n: usize) -> Result<Vec<PlaneLetter>, WordError> {
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        if tok == "Id" {
            continue;
        }
        let bad = || WordError::MalformedToken(tok.to_string());
        let body = tok.strip_prefix('R').ok_or_else(bad)?;
        let (i, j) = match body.split_once(',') {
            Some((a, b)) => (
                a.parse::<usize>().map_err(|_| bad())?,
                b.parse::<usize>().map_err(|_| bad())?,
            ),
            None => {
                let d: Vec<u32> = body
                    .chars()
                    .map(|c| c.to_digit(10))
                    .collect::<Option<_>>()
                    .ok_or_else(bad)?;
                if d.len() != 2 {
                    return Err(bad());
                }
                (d[0] as usize, d[1] as usize)
            }
        };
        out.push(PlaneLetter::new(i, j, n)?);
    }
    Ok(out)
}

/// Rewrites plane letters into the standard generators `R_i = R_{i,i+1}`.
///
/// `R_{i,i+1} = R_i`, `R_{ji} = R_{ij}^-1`, and for `j > i+1`
/// `R_{ij} = W R_{j-1}^-1 W^-1` with `W` the rewrite of `R_{i,j-1}`.
/// The inverse on the middle letter is what makes the rewrite agree with the
/// signed-permutation image `i -> j, j -> -i`.
pub fn plane_to_standard(pw: &[PlaneLetter], n: usize) -> Result<Word, WordError> {
    if n < 3 {
        return Err(WordError::RankTooSmall(n));
    }
    let mut letters = Vec::new();
    for &pl in pw {
        PlaneLetter::new(pl.i, pl.j, n)?;
        letters.extend(plane_letter_word(pl.i, pl.j, n).letters);
    }
    Ok(free_reduce(&Word { letters, rank: n }))
}

fn plane_letter_word(i: usize, j: usize, n: usize) -> Word {
    if i > j {
        return invert(&plane_letter_word(j, i, n));
    }
    if j == i + 1 {
        return Word::power(n, i, 1);
    }
    let w = plane_letter_word(i, j - 1, n);
    free_reduce(&w.concat(&Word::power(n, j - 1, -1)).concat(&invert(&w)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let w = parse_word("R1 R2 R1", 3).unwrap();
        assert_eq!(
            w.letters,
            vec![Letter::new(1), Letter::new(2), Letter::new(1)]
        );
        let w = parse_word("R2^-1 R2", 3).unwrap();
        assert_eq!(w.len(), 2);
        assert!(matches!(
            parse_word("R5", 4),
            Err(WordError::IndexOutOfRange { index: 5, rank: 4 })
        ));
        assert!(parse_word("X1", 4).is_err());
        assert!(parse_word("R1^0", 4).is_err());
        assert_eq!(parse_word("R1^4", 3).unwrap().len(), 4);
    }

    #[test]
    fn reduce_and_invert() {
        let w = parse_word("R2^-1 R2", 3).unwrap();
        assert!(free_reduce(&w).is_empty());
        let w = parse_word("R1 R2 R2^-1 R1", 3).unwrap();
        assert_eq!(free_reduce(&w), parse_word("R1 R1", 3).unwrap());
        let w = parse_word("R1 R2", 3).unwrap();
        assert_eq!(invert(&w), parse_word("R2^-1 R1^-1", 3).unwrap());
        assert!(invert(&Word::empty(3)).is_empty());
    }

    #[test]
    fn presentation_counts() {
        assert_eq!(
            presentation_for(3, Variant::Standard)
                .unwrap()
                .relators
                .len(),
            2
        );
        // 2 braid + 1 far commutation + 1 extra.
        assert_eq!(
            presentation_for(4, Variant::Standard)
                .unwrap()
                .relators
                .len(),
            4
        );
        let t = presentation_for(3, Variant::Twisted).unwrap();
        assert!(t
            .relators
            .contains(&parse_word("R1^4 R2 R1^-4 R2^-1", 3).unwrap()));
        assert!(presentation_for(2, Variant::Standard).is_err());
    }

    #[test]
    fn presentation_text_round_trip() {
        for v in [Variant::Standard, Variant::Twisted] {
            let p = presentation_for(5, v).unwrap();
            let q = Presentation::parse(&p.to_text()).unwrap();
            assert_eq!(p, q);
        }
        let custom = Presentation::parse("rank: 3\nrelator: R1^2 # comment\n").unwrap();
        assert_eq!(custom.variant, None);
        assert!(Presentation::parse("relator: R1").is_err());
    }

    #[test]
    fn plane_examples() {
        let p = |i, j| PlaneLetter { i, j };
        assert_eq!(
            plane_to_standard(&[p(1, 2)], 3).unwrap(),
            parse_word("R1", 3).unwrap()
        );
        assert_eq!(
            plane_to_standard(&[p(3, 1)], 3).unwrap(),
            parse_word("R1 R2 R1^-1", 3).unwrap()
        );
        assert_eq!(
            plane_to_standard(&[p(4, 1)], 4).unwrap(),
            parse_word("R1 R2^-1 R1^-1 R3 R1 R2 R1^-1", 4).unwrap()
        );
        assert!(plane_to_standard(&[p(1, 4)], 3).is_err());
    }

    #[test]
    fn plane_parse() {
        let w = parse_plane_word("R12 R3,1 Id", 3).unwrap();
        assert_eq!(
            w,
            vec![PlaneLetter { i: 1, j: 2 }, PlaneLetter { i: 3, j: 1 }]
        );
        assert_eq!(format_plane_word(&w), "R12 R31");
        assert!(parse_plane_word("R11", 3).is_err());
        assert!(parse_plane_word("R123", 3).is_err());
    }

    #[test]
    fn power_string() {
        let w = parse_word("R1 R1 R1 R1 R3^-1 R3^-1 R2", 4).unwrap();
        assert_eq!(w.to_power_string(), "R1^4 R3^-2 R2");
        assert_eq!(Word::empty(3).to_power_string(), "Id");
    }
}
