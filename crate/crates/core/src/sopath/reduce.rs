//! Symbolic reduction of local closed plane-letter words to the empty word.
//!
//! The rightmost letter `R_{ix}` is tracked by its first index `i` and moved
//! left: past disjoint letters by commutation, into its inverse by
//! cancellation, and past a letter sharing one index by one of the eight
//! triangular rewrites, after which `i` occurs only in the left letter.
//! A triangular rewrite can make the word non-local; when it does, the
//! rewrite tracking the other index of the moving letter is tried instead.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::PathError;
use crate::hyperocta::{compose, theta_plane, theta_plane_word, SignedPerm};
use crate::words::{format_plane_word, PlaneLetter};

/// A rewrite of the adjacent pair at positions `pos, pos + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    /// `L T = T L` for letters in disjoint planes.
    Commute,
    /// `R_{ji} R_{ij} = 1`.
    Cancel,
    /// One of the eight triangular rewrites, numbered 1 to 8:
    /// 1 `R_{jk}R_{ij} = R_{ik}R_{jk}`, 2 `R_{kj}R_{ij} = R_{ki}R_{kj}`,
    /// 3 `R_{ik}R_{ij} = R_{ij}R_{kj}`, 4 `R_{ki}R_{ij} = R_{ij}R_{jk}`,
    /// 5 `R_{jk}R_{ji} = R_{ki}R_{jk}`, 6 `R_{kj}R_{ji} = R_{ik}R_{kj}`,
    /// 7 `R_{ik}R_{ji} = R_{ji}R_{jk}`, 8 `R_{ki}R_{ji} = R_{ji}R_{kj}`.
    Triangle(u8),
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Commute => write!(f, "commute"),
            Rule::Cancel => write!(f, "cancel"),
            Rule::Triangle(k) => write!(f, "triangle-{k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule: Rule,
    /// Position of the left letter of the rewritten pair.
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub original: Vec<PlaneLetter>,
    pub steps: Vec<Step>,
    /// Passes that needed at least one rewrite tracking the other axis of
    /// the moving letter to stay local.
    pub detours: usize,
}

impl Reduction {
    pub fn cancellations(&self) -> usize {
        self.steps.iter().filter(|s| s.rule == Rule::Cancel).count()
    }

    /// One line per step: `<k> <rule> @<pos> -> <word>`.
    pub fn to_text(&self) -> Result<String, PathError> {
        let mut w = self.original.clone();
        let mut s = format!("0 start -> {}\n", format_plane_word(&w));
        for (k, st) in self.steps.iter().enumerate() {
            w = apply_step(&w, *st).ok_or(PathError::ReplayMismatch(k))?;
            s.push_str(&format!(
                "{} {} @{} -> {}\n",
                k + 1,
                st.rule,
                st.pos,
                format_plane_word(&w)
            ));
        }
        Ok(s)
    }
}

fn pl(i: usize, j: usize) -> PlaneLetter {
    PlaneLetter { i, j }
}

/// Rewrites `(l, t)` by `rule`, or `None` if the pair does not fit the rule.
pub fn apply_rule(
    rule: Rule,
    l: PlaneLetter,
    t: PlaneLetter,
) -> Option<(PlaneLetter, PlaneLetter)> {
    match rule {
        Rule::Commute => l.disjoint(t).then_some((t, l)),
        Rule::Cancel => (l == t.inverse()).then_some((l, t)),
        Rule::Triangle(r) => {
            // Rules 1-4 track t.i, rules 5-8 track t.j.
            let (i, x) = if r <= 4 { (t.i, t.j) } else { (t.j, t.i) };
            let k = match r {
                1 | 5 if l.i == x => l.j,
                2 | 6 if l.j == x => l.i,
                3 | 7 if l.i == i => l.j,
                4 | 8 if l.j == i => l.i,
                _ => return None,
            };
            if k == i || k == x {
                return None;
            }
            Some(match r {
                1 => (pl(i, k), pl(x, k)),
                2 => (pl(k, i), pl(k, x)),
                3 => (pl(i, x), pl(k, x)),
                4 => (pl(i, x), pl(x, k)),
                5 => (pl(k, i), pl(x, k)),
                6 => (pl(i, k), pl(k, x)),
                7 => (pl(x, i), pl(x, k)),
                8 => (pl(x, i), pl(k, x)),
                _ => return None,
            })
        }
    }
}

fn apply_step(w: &[PlaneLetter], st: Step) -> Option<Vec<PlaneLetter>> {
    if st.pos + 1 >= w.len() {
        return None;
    }
    let (a, b) = apply_rule(st.rule, w[st.pos], w[st.pos + 1])?;
    let mut out = w.to_vec();
    if st.rule == Rule::Cancel {
        out.drain(st.pos..st.pos + 2);
    } else {
        out[st.pos] = a;
        out[st.pos + 1] = b;
    }
    Some(out)
}

/// Reapplies a trace, checking each step fits its rule; returns the final word.
pub fn replay(original: &[PlaneLetter], steps: &[Step]) -> Result<Vec<PlaneLetter>, PathError> {
    let mut w = original.to_vec();
    for (k, st) in steps.iter().enumerate() {
        if let Rule::Triangle(r) = st.rule {
            if !(1..=8).contains(&r) {
                return Err(PathError::ReplayMismatch(k));
            }
        }
        w = apply_step(&w, *st).ok_or(PathError::ReplayMismatch(k))?;
    }
    Ok(w)
}

/// Reduces a closed local word to the empty word, recording every rewrite.
pub fn reduce_local_word(pw: &[PlaneLetter], n: usize) -> Result<Reduction, PathError> {
    let theta = theta_plane_word(pw, n)?;
    if !theta.is_identity() {
        return Err(PathError::WordNotClosed(theta.to_string()));
    }
    if !is_local_word(pw, n)? {
        return Err(PathError::WordNotLocal);
    }
    let mut w = pw.to_vec();
    let mut steps = Vec::new();
    let mut detours = 0;
    while !w.is_empty() {
        let mut seg = Vec::new();
        let mut used_detour = false;
        let p = w.len() - 1;
        let i = w[p].i;
        w = track(w, p, i, n, &mut seg, &mut used_detour)?;
        detours += usize::from(used_detour);
        steps.extend(seg);
    }
    Ok(Reduction {
        original: pw.to_vec(),
        steps,
        detours,
    })
}

/// Exact locality of a word: no partial product sends a vertex to its antipode.
///
/// Along one generating path each coordinate of a vertex interpolates
/// between its endpoint values with nonnegative weights, so checking the
/// partial products suffices.
pub fn is_local_word(pw: &[PlaneLetter], n: usize) -> Result<bool, PathError> {
    let mut cur = SignedPerm::identity(n);
    for l in pw.iter().rev() {
        cur = compose(&theta_plane(l.i, l.j, n)?, &cur)?;
        if cur
            .images()
            .iter()
            .enumerate()
            .any(|(m, &y)| y == -(m as i32 + 1))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Moves the letter at `p` left until it cancels, tracking axis `i`.
///
/// A triangular rewrite may break locality; the rewrite that tracks the
/// other axis of the moving letter is then tried, keeping every
/// intermediate word local.
fn track(
    w: Vec<PlaneLetter>,
    p: usize,
    i: usize,
    n: usize,
    steps: &mut Vec<Step>,
    detour: &mut bool,
) -> Result<Vec<PlaneLetter>, PathError> {
    if p == 0 {
        return Err(PathError::LetterNotCancelled {
            letter: w[0].to_string(),
        });
    }
    let (l, t) = (w[p - 1], w[p]);
    let pos = p - 1;
    let fixed = if l.disjoint(t) {
        Some(Rule::Commute)
    } else if l == t.inverse() {
        Some(Rule::Cancel)
    } else if l == t {
        return Err(PathError::WordNotLocal);
    } else {
        None
    };
    if let Some(rule) = fixed {
        let st = Step { rule, pos };
        let next = apply_step(&w, st).expect("rule chosen to fit the pair");
        steps.push(st);
        if rule == Rule::Cancel {
            return Ok(next);
        }
        return track(next, pos, i, n, steps, detour);
    }
    let other = if t.i == i { t.j } else { t.i };
    let mut last_err = PathError::WordNotLocal;
    for (k, axis) in [i, other].into_iter().enumerate() {
        let rule = triangle_rule(l, t, axis);
        let st = Step { rule, pos };
        let next = apply_step(&w, st).expect("rule chosen to fit the pair");
        if !is_local_word(&next, n)? {
            continue;
        }
        let mark = steps.len();
        steps.push(st);
        match track(next, pos, axis, n, steps, detour) {
            Ok(done) => {
                *detour |= k == 1;
                return Ok(done);
            }
            Err(e) => {
                steps.truncate(mark);
                last_err = e;
            }
        }
    }
    Err(last_err)
}

/// The triangular rule moving `t` past `l` while tracking `axis` of `t`.
fn triangle_rule(l: PlaneLetter, t: PlaneLetter, axis: usize) -> Rule {
    let (x, base) = if t.i == axis { (t.j, 0) } else { (t.i, 4) };
    let r = if l.i == x {
        1
    } else if l.j == x {
        2
    } else if l.i == axis {
        3
    } else {
        4
    };
    Rule::Triangle(base + r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_plane_word;

    #[test]
    fn two_letter_cancel() {
        let w = parse_plane_word("R21 R12", 3).unwrap();
        let r = reduce_local_word(&w, 3).unwrap();
        assert_eq!(
            r.steps,
            vec![Step {
                rule: Rule::Cancel,
                pos: 0
            }]
        );
        assert!(replay(&w, &r.steps).unwrap().is_empty());
    }

    #[test]
    fn first_triangle_expression() {
        // R_kj R_ki R_jk R_ij with (i,j,k) = (1,2,3)
        let w = parse_plane_word("R32 R31 R23 R12", 3).unwrap();
        let r = reduce_local_word(&w, 3).unwrap();
        assert!(replay(&w, &r.steps).unwrap().is_empty());
        assert_eq!(r.cancellations(), 2);
        assert!(r.to_text().unwrap().ends_with("-> Id\n"));
    }

    #[test]
    fn refuses_open_and_nonlocal() {
        let w = parse_plane_word("R23 R12", 3).unwrap();
        assert!(matches!(
            reduce_local_word(&w, 3),
            Err(PathError::WordNotClosed(_))
        ));
        let w = parse_plane_word("R12 R12 R12 R12", 3).unwrap();
        assert!(matches!(
            reduce_local_word(&w, 3),
            Err(PathError::WordNotLocal)
        ));
    }

    #[test]
    fn replay_rejects_bad_steps() {
        let w = parse_plane_word("R21 R12", 3).unwrap();
        let bad = [Step {
            rule: Rule::Commute,
            pos: 0,
        }];
        assert_eq!(replay(&w, &bad), Err(PathError::ReplayMismatch(0)));
        let bad = [Step {
            rule: Rule::Triangle(9),
            pos: 0,
        }];
        assert_eq!(replay(&w, &bad), Err(PathError::ReplayMismatch(0)));
    }

    #[test]
    fn rules_match_listed_identities() {
        let (i, j, k) = (1, 2, 3);
        let cases = [
            (1, (j, k), (i, j), (i, k), (j, k)),
            (2, (k, j), (i, j), (k, i), (k, j)),
            (3, (i, k), (i, j), (i, j), (k, j)),
            (4, (k, i), (i, j), (i, j), (j, k)),
            (5, (j, k), (j, i), (k, i), (j, k)),
            (6, (k, j), (j, i), (i, k), (k, j)),
            (7, (i, k), (j, i), (j, i), (j, k)),
            (8, (k, i), (j, i), (j, i), (k, j)),
        ];
        for (r, l, t, a, b) in cases {
            let got = apply_rule(Rule::Triangle(r), pl(l.0, l.1), pl(t.0, t.1));
            assert_eq!(got, Some((pl(a.0, a.1), pl(b.0, b.1))), "rule {r}");
        }
    }
}
