//! Todd–Coxeter coset enumeration (HLT and Felsch strategies).
//!
//! Tables are built so that letters act on cosets from the left: the image of
//! coset `c` under `x` is `x·c`, and [`CosetTable::coset_action`] applies the
//! rightmost letter of a word first. Internally this is ordinary right-coset
//! enumeration over the reversed relators, since reversal turns the left
//! action of the group into the right action of its opposite.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::words::{free_reduce, Letter, Presentation, Word, WordError};

const UNDEF: u32 = u32::MAX;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("coset enumeration did not close within {max_cosets} cosets")]
    LimitExceeded { max_cosets: usize },
    #[error("coset id {id} out of range 1..={count}")]
    InvalidCoset { id: usize, count: usize },
    #[error("max_cosets must be at least 1")]
    ZeroLimit,
    #[error("unknown strategy `{0}` (expected `hlt` or `felsch`)")]
    UnknownStrategy(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Hlt,
    Felsch,
}

impl FromStr for Strategy {
    type Err = EnumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hlt" => Ok(Strategy::Hlt),
            "felsch" => Ok(Strategy::Felsch),
            _ => Err(EnumError::UnknownStrategy(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumLimits {
    /// Cap on every coset ever defined, live or dead.
    pub max_cosets: usize,
    pub strategy: Strategy,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            max_cosets: 2_000_000,
            strategy: Strategy::Hlt,
        }
    }
}

/// A complete, standardized coset table. Coset ids are 1-based in the public API.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    rank: usize,
    ncols: usize,
    action: Vec<u32>,
    schreier: Vec<Option<(u32, Letter)>>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.schreier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.schreier.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of table columns, `2(rank-1)`, ordered `R1, R1^-1, R2, ...`.
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Image of 0-based coset `c` under table column `col`.
    #[inline]
    pub fn act0(&self, c: usize, col: usize) -> usize {
        self.action[c * self.ncols + col] as usize
    }

    /// Applies `w` to 0-based coset `c`, rightmost letter first.
    pub fn act_word0(&self, c: usize, w: &Word) -> usize {
        w.letters
            .iter()
            .rev()
            .fold(c, |c, l| self.act0(c, l.column()))
    }

    fn check_id(&self, id: usize) -> Result<usize, EnumError> {
        if id == 0 || id > self.len() {
            Err(EnumError::InvalidCoset {
                id,
                count: self.len(),
            })
        } else {
            Ok(id - 1)
        }
    }

    /// Image of coset `c` under the word `w`, rightmost letter applied first.
    pub fn coset_action(&self, c: usize, w: &Word) -> Result<usize, EnumError> {
        let c0 = self.check_id(c)?;
        for l in &w.letters {
            if l.index == 0 || l.index >= self.rank {
                return Err(WordError::IndexOutOfRange {
                    index: l.index,
                    rank: self.rank,
                }
                .into());
            }
        }
        Ok(self.act_word0(c0, w) + 1)
    }

    /// Schreier parent of 0-based coset `c`: `c = letter · parent`.
    pub fn parent0(&self, c: usize) -> Option<(usize, Letter)> {
        self.schreier[c].map(|(p, l)| (p as usize, l))
    }

    /// The word along Schreier edges from coset 1 to `c`.
    pub fn representative(&self, c: usize) -> Result<Word, EnumError> {
        let mut c0 = self.check_id(c)?;
        let mut letters = Vec::new();
        while let Some((p, l)) = self.parent0(c0) {
            letters.push(l);
            c0 = p;
        }
        Ok(Word {
            letters,
            rank: self.rank,
        })
    }

    /// Serialized form: `cosets: <N> rank: <n>` then `<id>: <images by column>`.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.len() * (self.ncols * 6 + 8));
        let _ = writeln!(s, "cosets: {} rank: {}", self.len(), self.rank);
        for c in 0..self.len() {
            let _ = write!(s, "{}:", c + 1);
            for col in 0..self.ncols {
                let _ = write!(s, " {}", self.act0(c, col) + 1);
            }
            s.push('\n');
        }
        s
    }

    /// Checks `x⁻¹·(x·c) = c` for all cosets and columns.
    pub fn is_consistent(&self) -> bool {
        (0..self.len()).all(|c| {
            (0..self.ncols).all(|col| {
                let d = self.act0(c, col);
                d < self.len() && self.act0(d, col ^ 1) == c
            })
        })
    }

    /// Checks that `w` traces a closed loop from 0-based coset `c`.
    pub fn closes(&self, c: usize, w: &Word) -> bool {
        self.act_word0(c, w) == c
    }
}

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: VecDeque<u32>,
    deductions: Vec<(u32, usize)>,
    track_deductions: bool,
    max: usize,
}

impl Enumerator {
    fn new(ncols: usize, max: usize, track_deductions: bool) -> Self {
        Enumerator {
            ncols,
            table: vec![UNDEF; ncols],
            parent: vec![0],
            queue: VecDeque::new(),
            deductions: Vec::new(),
            track_deductions,
            max,
        }
    }

    fn defined(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.ncols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.ncols + x] = d;
    }

    #[inline]
    fn live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn link(&mut self, c: u32, x: usize, d: u32) {
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        if self.track_deductions {
            self.deductions.push((c, x));
        }
    }

    fn define(&mut self, c: u32, x: usize) -> Result<(), EnumError> {
        if self.defined() >= self.max {
            return Err(EnumError::LimitExceeded {
                max_cosets: self.max,
            });
        }
        let d = self.defined() as u32;
        self.parent.push(d);
        self.table.resize(self.table.len() + self.ncols, UNDEF);
        self.link(c, x, d);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi as usize] = lo;
            self.queue.push_back(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        while let Some(g) = self.queue.pop_front() {
            for x in 0..self.ncols {
                let d = self.get(g, x);
                if d == UNDEF {
                    continue;
                }
                self.set(d, x ^ 1, UNDEF);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mux = self.get(mu, x);
                if mux != UNDEF {
                    self.merge(nu, mux);
                } else {
                    let nux = self.get(nu, x ^ 1);
                    if nux != UNDEF {
                        self.merge(mu, nux);
                    } else {
                        self.link(mu, x, nu);
                    }
                }
            }
        }
    }

    /// Traces `w` around `c` from both ends; with `fill`, defines new cosets to close it.
    fn scan(&mut self, c: u32, w: &[usize], fill: bool) -> Result<(), EnumError> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j {
                let nf = self.get(f, w[i]);
                if nf == UNDEF {
                    break;
                }
                f = nf;
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize {
                let nb = self.get(b, w[j as usize] ^ 1);
                if nb == UNDEF {
                    break;
                }
                b = nb;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.link(f, w[i], b);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn process_deductions(&mut self, by_col: &[Vec<Vec<usize>>]) -> Result<(), EnumError> {
        while let Some((a, x)) = self.deductions.pop() {
            if !self.live(a) {
                continue;
            }
            for w in &by_col[x] {
                if !self.live(a) {
                    break;
                }
                self.scan(a, w, false)?;
            }
            if !self.live(a) {
                continue;
            }
            let b = self.get(a, x);
            if b == UNDEF {
                continue;
            }
            for w in &by_col[x ^ 1] {
                if !self.live(b) {
                    break;
                }
                self.scan(b, w, false)?;
            }
        }
        Ok(())
    }
}

fn columns(w: &Word) -> Vec<usize> {
    w.letters.iter().map(|l| l.column()).collect()
}

/// Enumerates the cosets of the subgroup generated by `subgroup_gens`.
pub fn enumerate(
    p: &Presentation,
    subgroup_gens: &[Word],
    limits: EnumLimits,
) -> Result<CosetTable, EnumError> {
    if limits.max_cosets == 0 {
        return Err(EnumError::ZeroLimit);
    }
    let rank = p.rank;
    let ncols = 2 * (rank - 1);
    for w in p.relators.iter().chain(subgroup_gens) {
        Word::from_letters(rank, w.letters.clone())?;
    }
    let rels: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(|r| columns(&free_reduce(r).reversed()))
        .filter(|r| !r.is_empty())
        .collect();
    let subs: Vec<Vec<usize>> = subgroup_gens
        .iter()
        .map(|s| columns(&free_reduce(s).reversed()))
        .collect();

    let felsch = limits.strategy == Strategy::Felsch;
    let mut e = Enumerator::new(ncols, limits.max_cosets, felsch);
    if felsch {
        let by_col = conjugates_by_column(&rels, ncols);
        for s in &subs {
            e.scan(0, s, true)?;
        }
        e.process_deductions(&by_col)?;
        let mut c = 0u32;
        while (c as usize) < e.defined() {
            for x in 0..ncols {
                if e.live(c) && e.get(c, x) == UNDEF {
                    e.define(c, x)?;
                    e.process_deductions(&by_col)?;
                }
            }
            c += 1;
        }
    } else {
        for s in &subs {
            e.scan(0, s, true)?;
        }
        let mut c = 0u32;
        while (c as usize) < e.defined() {
            for r in &rels {
                if !e.live(c) {
                    break;
                }
                e.scan(c, r, true)?;
            }
            for x in 0..ncols {
                if e.live(c) && e.get(c, x) == UNDEF {
                    e.define(c, x)?;
                }
            }
            c += 1;
        }
    }
    Ok(standardize(&e, rank))
}

/// Cyclic conjugates of every relator and its inverse, grouped by first column.
fn conjugates_by_column(rels: &[Vec<usize>], ncols: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new(); ncols];
    for r in rels {
        let inv: Vec<usize> = r.iter().rev().map(|x| x ^ 1).collect();
        for w in [r, &inv] {
            for k in 0..w.len() {
                let conj: Vec<usize> = w[k..].iter().chain(&w[..k]).copied().collect();
                let bucket = &mut out[conj[0]];
                if !bucket.contains(&conj) {
                    bucket.push(conj);
                }
            }
        }
    }
    out
}

/// Renumbers live cosets in breadth-first order from the subgroup coset,
/// visiting columns in order, and records the Schreier tree.
fn standardize(e: &Enumerator, rank: usize) -> CosetTable {
    let ncols = e.ncols;
    let mut new_id = vec![UNDEF; e.defined()];
    let mut order = vec![0u32];
    let mut schreier = vec![None];
    new_id[0] = 0;
    let mut head = 0;
    while head < order.len() {
        let c = order[head];
        for x in 0..ncols {
            let d = e.get(c, x);
            if new_id[d as usize] == UNDEF {
                new_id[d as usize] = order.len() as u32;
                order.push(d);
                schreier.push(Some((head as u32, Letter::from_column(x))));
            }
        }
        head += 1;
    }
    let mut action = Vec::with_capacity(order.len() * ncols);
    for &c in &order {
        for x in 0..ncols {
            action.push(new_id[e.get(c, x) as usize]);
        }
    }
    CosetTable {
        rank,
        ncols,
        action,
        schreier,
    }
}

/// Order of the group: the number of cosets of the trivial subgroup.
pub fn group_order(p: &Presentation, limits: EnumLimits) -> Result<usize, EnumError> {
    enumerate(p, &[], limits).map(|t| t.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{parse_word, presentation_for, Variant};

    fn table(n: usize, strategy: Strategy) -> CosetTable {
        let p = presentation_for(n, Variant::Standard).unwrap();
        enumerate(
            &p,
            &[],
            EnumLimits {
                strategy,
                ..Default::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn small_orders() {
        assert_eq!(table(3, Strategy::Hlt).len(), 48);
        assert_eq!(table(4, Strategy::Hlt).len(), 384);
        assert_eq!(table(3, Strategy::Felsch).len(), 48);
    }

    #[test]
    fn subgroup_index() {
        let p = presentation_for(3, Variant::Standard).unwrap();
        let h = parse_word("R1^4", 3).unwrap();
        let t = enumerate(&p, &[h], EnumLimits::default()).unwrap();
        assert_eq!(t.len(), 24);
    }

    #[test]
    fn action_examples() {
        let t = table(3, Strategy::Hlt);
        assert_eq!(t.coset_action(1, &Word::empty(3)).unwrap(), 1);
        assert_eq!(t.coset_action(1, &Word::power(3, 1, 8)).unwrap(), 1);
        assert_ne!(t.coset_action(1, &Word::power(3, 1, 4)).unwrap(), 1);
        assert!(t.coset_action(49, &Word::empty(3)).is_err());
        assert!(t.representative(1).unwrap().is_empty());
        let c = t.coset_action(1, &parse_word("R1", 3).unwrap()).unwrap();
        assert_eq!(t.representative(c).unwrap(), parse_word("R1", 3).unwrap());
    }

    #[test]
    fn limit_exceeded() {
        let p = presentation_for(4, Variant::Standard).unwrap();
        let lim = EnumLimits {
            max_cosets: 100,
            strategy: Strategy::Hlt,
        };
        assert_eq!(
            enumerate(&p, &[], lim),
            Err(EnumError::LimitExceeded { max_cosets: 100 })
        );
    }

    #[test]
    fn left_action() {
        // coset_action(1, u v) must equal acting by u on the coset of v.
        let t = table(3, Strategy::Hlt);
        let u = parse_word("R1 R2^-1", 3).unwrap();
        let v = parse_word("R2 R2 R1", 3).unwrap();
        let cv = t.coset_action(1, &v).unwrap();
        assert_eq!(
            t.coset_action(1, &u.concat(&v)).unwrap(),
            t.coset_action(cv, &u).unwrap()
        );
    }
}
