//! Triangular closed words and random local closed words built from them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{compile_path, is_local, PathError};
use crate::words::{parse_word, PlaneLetter, WordError};

/// The 24 four-letter identity words in the axis generators
/// `R1 = R23`, `R2 = R31`, `R3 = R12` of rank 3.
pub const TRIANGULAR_WORDS: [&str; 24] = [
    "R3^-1 R1^-1 R2^-1 R1",
    "R3 R1^-1 R2 R1",
    "R2 R3^-1 R2^-1 R1",
    "R2^-1 R3 R2 R1",
    "R3^-1 R2^-1 R3 R1",
    "R3 R2 R3^-1 R1",
    "R2^-1 R1^-1 R3 R1",
    "R2 R1^-1 R3^-1 R1",
    "R1 R3 R1^-1 R2",
    "R1^-1 R3^-1 R1 R2",
    "R3 R1^-1 R3^-1 R2",
    "R3^-1 R1 R3 R2",
    "R3^-1 R2^-1 R1 R2",
    "R3 R2^-1 R1^-1 R2",
    "R1 R2^-1 R3 R2",
    "R1^-1 R2^-1 R3^-1 R2",
    "R1^-1 R2 R1 R3",
    "R1 R2^-1 R1^-1 R3",
    "R2 R3^-1 R1 R3",
    "R2^-1 R3^-1 R1^-1 R3",
    "R2^-1 R1^-1 R2 R3",
    "R2 R1 R2^-1 R3",
    "R1^-1 R3^-1 R2 R3",
    "R1 R3^-1 R2^-1 R3",
];

const AXIS_PLANES: [(usize, usize); 3] = [(2, 3), (3, 1), (1, 2)];

/// Translates a word in the axis generators into plane letters.
pub fn axis_word_to_planes(text: &str) -> Result<Vec<PlaneLetter>, WordError> {
    // Three axis generators; rank 4 admits indices 1..=3.
    let w = parse_word(text, 4)?;
    let mut out = Vec::new();
    for l in &w.letters {
        let (i, j) = AXIS_PLANES[l.index - 1];
        let p = PlaneLetter { i, j };
        for _ in 0..l.exp.unsigned_abs() {
            out.push(if l.exp < 0 { p.inverse() } else { p });
        }
    }
    Ok(out)
}

/// The 24 triangular identity words as plane letters.
pub fn triangular_words() -> Vec<Vec<PlaneLetter>> {
    TRIANGULAR_WORDS
        .iter()
        .map(|t| axis_word_to_planes(t).expect("fixed words parse"))
        .collect()
}

/// The four triangular expressions on axes `i, j, k`:
/// `R_kj R_ki R_jk R_ij`, `R_jk R_ik R_kj R_ij`, `R_ki R_jk R_ik R_ij`, `R_ik R_kj R_ki R_ij`.
pub fn triangle_expressions(i: usize, j: usize, k: usize) -> [Vec<PlaneLetter>; 4] {
    let p = |a, b| PlaneLetter { i: a, j: b };
    [
        vec![p(k, j), p(k, i), p(j, k), p(i, j)],
        vec![p(j, k), p(i, k), p(k, j), p(i, j)],
        vec![p(k, i), p(j, k), p(i, k), p(i, j)],
        vec![p(i, k), p(k, j), p(k, i), p(i, j)],
    ]
}

fn inverse_word(w: &[PlaneLetter]) -> Vec<PlaneLetter> {
    w.iter().rev().map(|l| l.inverse()).collect()
}

fn random_plane(rng: &mut ChaCha8Rng, n: usize) -> PlaneLetter {
    let i = rng.random_range(1..=n);
    let mut j = rng.random_range(1..n);
    if j >= i {
        j += 1;
    }
    PlaneLetter { i, j }
}

fn random_relator(rng: &mut ChaCha8Rng, n: usize) -> Vec<PlaneLetter> {
    let mut axes: Vec<usize> = (1..=n).collect();
    for s in 0..3 {
        let t = rng.random_range(s..n);
        axes.swap(s, t);
    }
    let e = rng.random_range(0..4);
    let mut rel = triangle_expressions(axes[0], axes[1], axes[2])[e].clone();
    rel.rotate_left(rng.random_range(0..4));
    let c: Vec<PlaneLetter> = (0..rng.random_range(0..=2))
        .map(|_| random_plane(rng, n))
        .collect();
    let mut out = c.clone();
    out.extend(rel);
    out.extend(inverse_word(&c));
    out
}

/// `count` products of two conjugated cyclic shifts of triangular expressions,
/// keeping only those whose compiled path is local. Deterministic in `seed`.
pub fn random_local_words(
    n: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<Vec<PlaneLetter>>, PathError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut w = random_relator(&mut rng, n);
        w.extend(random_relator(&mut rng, n));
        if is_local(&compile_path(&w, n, 16)?) {
            out.push(w);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperocta::theta_plane_word;

    #[test]
    fn triangular_words_are_closed_and_local() {
        let ws = triangular_words();
        assert_eq!(ws.len(), 24);
        for w in ws {
            assert!(theta_plane_word(&w, 3).unwrap().is_identity());
            let p = compile_path(&w, 3, 16).unwrap();
            assert!(p.closure_error() < 1e-10);
            assert!(is_local(&p));
        }
    }

    #[test]
    fn expressions_are_closed_in_every_rotation() {
        for mut e in triangle_expressions(1, 3, 2) {
            for _ in 0..4 {
                assert!(theta_plane_word(&e, 3).unwrap().is_identity());
                assert!(is_local(&compile_path(&e, 3, 16).unwrap()));
                e.rotate_left(1);
            }
        }
    }

    #[test]
    fn random_words_deterministic() {
        let a = random_local_words(4, 5, 7).unwrap();
        assert_eq!(a, random_local_words(4, 5, 7).unwrap());
        for w in &a {
            assert!(theta_plane_word(w, 4).unwrap().is_identity());
        }
    }
}
