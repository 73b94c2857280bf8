//! The groups G(n) as finite objects: elements, canonical forms, products,
//! orders, the center, quotients, and exports.
//!
//! An element is a coset of the trivial subgroup; canonical forms are a
//! decoded view checked against the coset table.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::OnceLock;

use serde::Serialize;

use crate::coset::{enumerate, CosetTable, EnumError, EnumLimits};
use crate::hyperocta::{theta_word, PermError, SignedPerm};
use crate::words::{presentation_for, Letter, Presentation, Variant, Word, WordError};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("element belongs to a different group context")]
    ForeignElement,
    #[error("element id {id} out of range 1..={count}")]
    InvalidElement { id: usize, count: usize },
    #[error("element {0} is not central")]
    NotCentral(String),
    #[error("element {element} has order {order}, expected 2")]
    NotOrderTwo { element: String, order: usize },
    #[error("no canonical form: {0}")]
    NoCanonicalForm(String),
    #[error("invalid canonical form: {0}")]
    InvalidForm(String),
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

static NEXT_CTX: AtomicU32 = AtomicU32::new(1);

/// An element of a [`GroupCtx`], named by its coset id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    ctx: u32,
    idx: u32,
}

impl Element {
    /// 1-based id; the identity is 1.
    pub fn id(self) -> usize {
        self.idx as usize + 1
    }

    pub fn index(self) -> usize {
        self.idx as usize
    }
}

/// Suffix at one level of the inductive canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Descriptor {
    /// `R_i^k`, `k ∈ 0..=3`.
    Power(u8),
    /// `R_i R_{i-1} ... R_{i-j}`, `j ∈ 1..i`.
    Run(u8),
    /// `R_i^3 R_{i-1} ... R_{i-j}`, `j ∈ 1..i`.
    CubeRun(u8),
}

impl Descriptor {
    /// All `2(i+1)` descriptors of level `i`.
    pub fn all(level: usize) -> Vec<Descriptor> {
        let mut v: Vec<Descriptor> = (0..4).map(Descriptor::Power).collect();
        v.extend((1..level as u8).map(Descriptor::Run));
        v.extend((1..level as u8).map(Descriptor::CubeRun));
        v
    }

    pub fn is_valid(self, level: usize) -> bool {
        match self {
            Descriptor::Power(k) => k < 4,
            Descriptor::Run(j) | Descriptor::CubeRun(j) => j >= 1 && (j as usize) < level,
        }
    }

    /// Expansion at level `i` in rank `n`.
    pub fn expand(self, level: usize, n: usize) -> Word {
        match self {
            Descriptor::Power(k) => Word::power(n, level, i64::from(k)),
            Descriptor::Run(j) | Descriptor::CubeRun(j) => {
                let head = if matches!(self, Descriptor::CubeRun(_)) {
                    3
                } else {
                    1
                };
                let mut letters = vec![Letter::new(level); head];
                letters.extend((level - j as usize..level).rev().map(Letter::new));
                Word { letters, rank: n }
            }
        }
    }

    /// Family key: powers collapse to one family, runs stay distinct.
    pub fn family(self) -> Descriptor {
        match self {
            Descriptor::Power(_) => Descriptor::Power(0),
            other => other,
        }
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Power(k) => write!(f, "Power({k})"),
            Descriptor::Run(j) => write!(f, "Run({j})"),
            Descriptor::CubeRun(j) => write!(f, "CubeRun({j})"),
        }
    }
}

/// `R1^m · y(2) · ... · y(n-1)`; `levels[0]` is level 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalForm {
    pub m: u8,
    pub levels: Vec<Descriptor>,
}

impl CanonicalForm {
    pub fn identity(n: usize) -> Self {
        CanonicalForm {
            m: 0,
            levels: vec![Descriptor::Power(0); n - 2],
        }
    }

    pub fn rank(&self) -> usize {
        self.levels.len() + 2
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        if self.m >= 8 {
            return Err(GroupError::InvalidForm(format!(
                "m = {} not in 0..8",
                self.m
            )));
        }
        for (k, d) in self.levels.iter().enumerate() {
            if !d.is_valid(k + 2) {
                return Err(GroupError::InvalidForm(format!("{d} at level {}", k + 2)));
            }
        }
        Ok(())
    }

    /// Every canonical form of rank `n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<CanonicalForm> {
        let mut forms: Vec<CanonicalForm> = (0..8)
            .map(|m| CanonicalForm {
                m,
                levels: Vec::new(),
            })
            .collect();
        for level in 2..n {
            let ds = Descriptor::all(level);
            forms = forms
                .into_iter()
                .flat_map(|f| {
                    ds.iter().map(move |&d| {
                        let mut g = f.clone();
                        g.levels.push(d);
                        g
                    })
                })
                .collect();
        }
        forms
    }

    /// Family key used for the size tables: the collapsed descriptor of every level.
    pub fn family(&self) -> Vec<Descriptor> {
        self.levels.iter().map(|d| d.family()).collect()
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&expand(self).to_power_string())
    }
}

/// `R1^m` followed by each level's suffix.
pub fn expand(cf: &CanonicalForm) -> Word {
    let n = cf.rank();
    let mut w = Word::power(n, 1, i64::from(cf.m));
    for (k, d) in cf.levels.iter().enumerate() {
        w = w.concat(&d.expand(k + 2, n));
    }
    w
}

/// A finite group given by a presentation and its complete coset table.
#[derive(Debug)]
pub struct GroupCtx {
    id: u32,
    presentation: Presentation,
    table: CosetTable,
    right: Vec<u32>,
    /// `subgroups[k]` marks membership in `⟨R1..R_{k+1}⟩`.
    subgroups: Vec<Vec<bool>>,
    forms: OnceLock<Result<Vec<CanonicalForm>, GroupError>>,
}

impl GroupCtx {
    /// Builds G(n) for the given variant with default enumeration limits.
    pub fn new(n: usize, variant: Variant) -> Result<Self, GroupError> {
        Self::from_presentation(presentation_for(n, variant)?, EnumLimits::default())
    }

    pub fn from_presentation(p: Presentation, limits: EnumLimits) -> Result<Self, GroupError> {
        let table = enumerate(&p, &[], limits)?;
        let ncols = table.ncols();
        let len = table.len();
        // c = x·parent gives c·g = x·(parent·g); parents precede children.
        let mut right = vec![0u32; len * ncols];
        for (col, r) in right.iter_mut().take(ncols).enumerate() {
            *r = table.act0(0, col) as u32;
        }
        for c in 1..len {
            let (p, l) = table.parent0(c).expect("non-root coset has a parent");
            for col in 0..ncols {
                let pg = right[p * ncols + col] as usize;
                right[c * ncols + col] = table.act0(pg, l.column()) as u32;
            }
        }
        let n = p.rank;
        let mut subgroups = Vec::new();
        for k in 1..n - 1 {
            let mut member = vec![false; len];
            member[0] = true;
            let mut stack = vec![0usize];
            while let Some(c) = stack.pop() {
                for col in 0..2 * k {
                    let d = table.act0(c, col);
                    if !member[d] {
                        member[d] = true;
                        stack.push(d);
                    }
                }
            }
            subgroups.push(member);
        }
        Ok(GroupCtx {
            id: NEXT_CTX.fetch_add(1, Ordering::Relaxed),
            presentation: p,
            table,
            right,
            subgroups,
            forms: OnceLock::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.presentation.rank
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    fn elem(&self, idx: usize) -> Element {
        Element {
            ctx: self.id,
            idx: idx as u32,
        }
    }

    pub fn identity(&self) -> Element {
        self.elem(0)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order()).map(|i| self.elem(i))
    }

    pub fn element(&self, id: usize) -> Result<Element, GroupError> {
        if id == 0 || id > self.order() {
            return Err(GroupError::InvalidElement {
                id,
                count: self.order(),
            });
        }
        Ok(self.elem(id - 1))
    }

    fn own(&self, e: Element) -> Result<usize, GroupError> {
        if e.ctx != self.id {
            return Err(GroupError::ForeignElement);
        }
        Ok(e.idx as usize)
    }

    pub fn element_from_word(&self, w: &Word) -> Result<Element, GroupError> {
        Word::from_letters(self.rank(), w.letters.clone())?;
        Ok(self.elem(self.table.act_word0(0, w)))
    }

    /// Left multiplication `x · e` by a single letter.
    pub fn left_letter(&self, e: Element, x: Letter) -> Result<Element, GroupError> {
        Ok(self.elem(self.table.act0(self.own(e)?, x.column())))
    }

    /// Right multiplication `e · x` by a single letter.
    pub fn right_letter(&self, e: Element, x: Letter) -> Result<Element, GroupError> {
        let c = self.own(e)?;
        Ok(self.elem(self.right[c * self.table.ncols() + x.column()] as usize))
    }

    fn right_word0(&self, c: usize, w: &Word) -> usize {
        let ncols = self.table.ncols();
        w.letters
            .iter()
            .fold(c, |c, l| self.right[c * ncols + l.column()] as usize)
    }

    /// The Schreier representative word of `e`.
    pub fn schreier_word(&self, e: Element) -> Result<Word, GroupError> {
        Ok(self.table.representative(self.own(e)? + 1)?)
    }

    fn forms(&self) -> Result<&Vec<CanonicalForm>, GroupError> {
        self.forms
            .get_or_init(|| (0..self.order()).map(|c| self.decode(c)).collect())
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Peels the top-level suffix whose removal lands in the next subgroup down,
    /// level by level, then reads off the power of R1.
    fn decode(&self, c: usize) -> Result<CanonicalForm, GroupError> {
        let n = self.rank();
        let mut x = c;
        let mut levels = vec![Descriptor::Power(0); n - 2];
        for level in (2..n).rev() {
            let member = &self.subgroups[level - 2];
            let mut found = None;
            for d in Descriptor::all(level) {
                let y_inv = crate::words::invert(&d.expand(level, n));
                let z = self.right_word0(x, &y_inv);
                if member[z] {
                    if found.is_some() {
                        return Err(GroupError::NoCanonicalForm(format!(
                            "element {} has two level-{level} suffixes",
                            c + 1
                        )));
                    }
                    found = Some((d, z));
                }
            }
            let (d, z) = found.ok_or_else(|| {
                GroupError::NoCanonicalForm(format!(
                    "element {} has no level-{level} suffix",
                    c + 1
                ))
            })?;
            levels[level - 2] = d;
            x = z;
        }
        let mut r = 0usize;
        for m in 0..8u8 {
            if r == x {
                return Ok(CanonicalForm { m, levels });
            }
            r = self.table.act0(r, 0);
        }
        Err(GroupError::NoCanonicalForm(format!(
            "element {} does not reduce to a power of R1",
            c + 1
        )))
    }

    /// The unique canonical form naming `e`.
    pub fn canonical_form(&self, e: Element) -> Result<CanonicalForm, GroupError> {
        let c = self.own(e)?;
        Ok(self.forms()?[c].clone())
    }

    /// Whether every element decodes to a canonical form.
    pub fn has_canonical_forms(&self) -> bool {
        self.forms().is_ok()
    }

    /// Canonical word of `e`, or its Schreier word when the group has no canonical forms.
    pub fn word(&self, e: Element) -> Result<Word, GroupError> {
        match self.forms() {
            Ok(f) => Ok(expand(&f[self.own(e)?])),
            Err(_) => self.schreier_word(e),
        }
    }

    /// Display name: canonical form if available, else the Schreier word.
    pub fn label(&self, e: Element) -> Result<String, GroupError> {
        Ok(self.word(e)?.to_power_string())
    }

    pub fn element_from_form(&self, cf: &CanonicalForm) -> Result<Element, GroupError> {
        cf.validate()?;
        if cf.rank() != self.rank() {
            return Err(GroupError::InvalidForm(format!(
                "rank {} form in rank {} group",
                cf.rank(),
                self.rank()
            )));
        }
        self.element_from_word(&expand(cf))
    }

    /// The element of `word(a) · word(b)`.
    pub fn multiply(&self, a: Element, b: Element) -> Result<Element, GroupError> {
        let wb = self.own(b)?;
        let wa = self.word(a)?;
        Ok(self.elem(self.table.act_word0(wb, &wa)))
    }

    pub fn inverse(&self, e: Element) -> Result<Element, GroupError> {
        let w = crate::words::invert(&self.word(e)?);
        Ok(self.elem(self.table.act_word0(0, &w)))
    }

    pub fn element_order(&self, e: Element) -> Result<usize, GroupError> {
        let w = self.word(e)?;
        let mut x = self.own(e)?;
        let mut k = 1;
        while x != 0 {
            x = self.table.act_word0(x, &w);
            k += 1;
        }
        Ok(k)
    }

    /// Elements commuting with every generator, sorted by id.
    pub fn center(&self) -> Vec<Element> {
        let ncols = self.table.ncols();
        (0..self.order())
            .filter(|&c| {
                (0..ncols)
                    .step_by(2)
                    .all(|col| self.table.act0(c, col) == self.right[c * ncols + col] as usize)
            })
            .map(|c| self.elem(c))
            .collect()
    }

    pub fn is_central(&self, e: Element) -> Result<bool, GroupError> {
        let c = self.own(e)?;
        let ncols = self.table.ncols();
        Ok((0..ncols)
            .step_by(2)
            .all(|col| self.table.act0(c, col) == self.right[c * ncols + col] as usize))
    }

    /// Multiset of element orders.
    pub fn order_profile(&self) -> Result<BTreeMap<usize, usize>, GroupError> {
        let mut prof = BTreeMap::new();
        for e in self.elements() {
            *prof.entry(self.element_order(e)?).or_insert(0) += 1;
        }
        Ok(prof)
    }

    /// `G / ⟨z⟩` for a central `z` of order 2, enumerated with `word(z)` as an extra relator.
    pub fn quotient(&self, z: Element, limits: EnumLimits) -> Result<GroupCtx, GroupError> {
        let label = self.label(z)?;
        if !self.is_central(z)? {
            return Err(GroupError::NotCentral(label));
        }
        let order = self.element_order(z)?;
        if order != 2 {
            return Err(GroupError::NotOrderTwo {
                element: label,
                order,
            });
        }
        let mut p = self.presentation.clone();
        p.relators.push(crate::words::free_reduce(&self.word(z)?));
        p.variant = None;
        GroupCtx::from_presentation(p, limits)
    }

    pub fn quotient_order_profile(
        &self,
        z: Element,
        limits: EnumLimits,
    ) -> Result<BTreeMap<usize, usize>, GroupError> {
        self.quotient(z, limits)?.order_profile()
    }

    /// Cayley digraph: edge `x -> x·R_i` with attribute `gen=i`; `R1` edges dotted.
    pub fn cayley_dot(&self) -> Result<String, GroupError> {
        let mut s = String::new();
        let _ = writeln!(s, "digraph cayley {{");
        let _ = writeln!(s, "  node [shape=box, fontsize=10];");
        for e in self.elements() {
            let _ = writeln!(s, "  n{} [label=\"{}\"];", e.id(), self.label(e)?);
        }
        for e in self.elements() {
            for i in 1..self.rank() {
                let t = self.right_letter(e, Letter::new(i))?;
                let style = if i == 1 { "dotted" } else { "solid" };
                let _ = writeln!(s, "  n{} -> n{} [gen={i}, style={style}];", e.id(), t.id());
            }
        }
        s.push_str("}\n");
        Ok(s)
    }

    /// Element table for JSON export.
    pub fn element_records(&self) -> Result<Vec<ElementRecord>, GroupError> {
        self.elements()
            .map(|e| {
                let w = self.word(e)?;
                Ok(ElementRecord {
                    canonical: w.to_power_string(),
                    id: e.id(),
                    order: self.element_order(e)?,
                    theta: theta_word(&w, self.rank())?,
                })
            })
            .collect()
    }
}

/// One row of the JSON element table; fields in key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementRecord {
    pub canonical: String,
    pub id: usize,
    pub order: usize,
    pub theta: SignedPerm,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn g(n: usize) -> GroupCtx {
        GroupCtx::new(n, Variant::Standard).unwrap()
    }

    #[test]
    fn descriptor_counts() {
        for i in 2..7 {
            assert_eq!(Descriptor::all(i).len(), 2 * (i + 1));
        }
        assert_eq!(CanonicalForm::all(3).len(), 48);
        assert_eq!(CanonicalForm::all(4).len(), 384);
    }

    #[test]
    fn expand_examples() {
        let cf = CanonicalForm {
            m: 4,
            levels: vec![Descriptor::Power(0)],
        };
        assert_eq!(expand(&cf), parse_word("R1^4", 3).unwrap());
        let cf = CanonicalForm {
            m: 0,
            levels: vec![Descriptor::CubeRun(1)],
        };
        assert_eq!(expand(&cf), parse_word("R2^3 R1", 3).unwrap());
        let cf = CanonicalForm {
            m: 1,
            levels: vec![Descriptor::Run(1), Descriptor::Power(2)],
        };
        assert_eq!(expand(&cf), parse_word("R1 R2 R1 R3^2", 4).unwrap());
    }

    #[test]
    fn element_examples() {
        let g = g(3);
        assert_eq!(g.element_from_word(&Word::empty(3)).unwrap(), g.identity());
        let w = |s| g.element_from_word(&parse_word(s, 3).unwrap()).unwrap();
        assert_eq!(w("R2 R1 R2"), w("R1 R2 R1"));
        assert_eq!(w("R1^2"), w("R2 R1^2 R2"));
        assert_eq!(
            g.canonical_form(g.identity()).unwrap(),
            CanonicalForm::identity(3)
        );
    }

    #[test]
    fn multiply_examples() {
        let g = g(3);
        let w = |s| g.element_from_word(&parse_word(s, 3).unwrap()).unwrap();
        let id = g.identity();
        for b in g.elements() {
            assert_eq!(g.multiply(id, b).unwrap(), b);
        }
        let r4 = g.multiply(w("R1^3"), w("R1")).unwrap();
        assert_eq!(r4, w("R1^4"));
        assert_ne!(r4, id);
        assert_eq!(g.multiply(r4, r4).unwrap(), id);
        assert_eq!(g.element_order(id).unwrap(), 1);
        assert_eq!(g.element_order(w("R1")).unwrap(), 8);
        assert_eq!(g.element_order(r4).unwrap(), 2);
    }

    #[test]
    fn center_and_quotient() {
        let g = g(3);
        let r4 = g
            .element_from_word(&parse_word("R1^4", 3).unwrap())
            .unwrap();
        assert_eq!(g.center(), vec![g.identity(), r4]);
        let prof = g.quotient_order_profile(r4, EnumLimits::default()).unwrap();
        let expected: BTreeMap<usize, usize> = [(1, 1), (2, 9), (3, 8), (4, 6)].into();
        assert_eq!(prof, expected);
        assert!(matches!(
            g.quotient(g.identity(), EnumLimits::default()),
            Err(GroupError::NotOrderTwo { order: 1, .. })
        ));
        let r1 = g.element_from_word(&parse_word("R1", 3).unwrap()).unwrap();
        assert!(matches!(
            g.quotient(r1, EnumLimits::default()),
            Err(GroupError::NotCentral(_))
        ));
    }

    #[test]
    fn foreign_elements_rejected() {
        let a = g(3);
        let b = g(3);
        assert_eq!(
            a.multiply(a.identity(), b.identity()),
            Err(GroupError::ForeignElement)
        );
    }

    #[test]
    fn dot_shape() {
        let g = g(3);
        let dot = g.cayley_dot().unwrap();
        assert_eq!(dot.matches(" -> ").count(), 96);
        assert_eq!(dot.matches("style=dotted").count(), 48);
        assert!(dot.contains("n1 [label=\"Id\"]"));
    }
}
