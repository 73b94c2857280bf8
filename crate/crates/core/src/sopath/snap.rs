//! Approximation of a path by a plane-letter word through nearest-element
//! crossings: walking the path, each time some neighbour `R_{ij} r` of the
//! current element `r` becomes nearer than `r`, the letter `R_{ij}` is
//! prepended and the neighbour becomes current.

use super::{dist, perm_matrix, polar, Mat, PathError, RotationPath};
use crate::hyperocta::{compose, theta_plane, SignedPerm};
use crate::words::PlaneLetter;

const CROSS_TOL: f64 = 1e-12;
const TIE_TOL: f64 = 1e-12;
const BISECTIONS: usize = 60;

/// The rotational signed permutation nearest to `x` in `D`, with its distance.
///
/// For each permutation the signs are chosen to match the entries; if that
/// gives determinant −1 the sign of the smallest entry is flipped.
pub fn nearest_element(x: &Mat) -> (SignedPerm, f64) {
    let n = x.nrows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<(Vec<i32>, f64)> = None;
    loop {
        let mut images = Vec::with_capacity(n);
        let mut score = 0.0;
        let mut weakest = (f64::INFINITY, 0);
        for (c, &r) in perm.iter().enumerate() {
            let v = x[(r, c)];
            let s = if v >= 0.0 { 1 } else { -1 };
            images.push(s * (r as i32 + 1));
            score += v.abs();
            if v.abs() < weakest.0 {
                weakest = (v.abs(), c);
            }
        }
        let sp = SignedPerm::new(images.clone()).expect("valid signed permutation");
        if crate::hyperocta::determinant(&sp) < 0 {
            images[weakest.1] = -images[weakest.1];
            score -= 2.0 * weakest.0;
        }
        if best.as_ref().is_none_or(|(_, b)| score > *b + 1e-15) {
            best = Some((images, score));
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let (images, score) = best.expect("at least one permutation");
    (
        SignedPerm::new(images).expect("valid signed permutation"),
        (n as f64 - score).max(0.0),
    )
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("pivot");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn segment_point(a: &Mat, b: &Mat, s: f64) -> Mat {
    if s <= 0.0 {
        a.clone()
    } else if s >= 1.0 {
        b.clone()
    } else {
        polar(&(a * (1.0 - s) + b * s))
    }
}

/// Emits the word of nearest-element crossings along `p`.
///
/// Crossings are located by bisection on the retracted linear interpolation
/// between samples. When two neighbours cross at the same parameter, the
/// letter with the lexicographically smallest `(i, j)` wins.
pub fn snap_to_word(p: &RotationPath) -> Result<Vec<PlaneLetter>, PathError> {
    let n = p.dim();
    let (_, end_d) = nearest_element(p.endpoint());
    if end_d > 1e-8 {
        return Err(PathError::EndpointNotGroupElement(end_d));
    }
    let mut letters: Vec<PlaneLetter> = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                letters.push(PlaneLetter { i, j });
            }
        }
    }
    let planes: Vec<Mat> = letters
        .iter()
        .map(|l| perm_matrix(&theta_plane(l.i, l.j, n).expect("valid plane")))
        .collect();
    let mut cur = SignedPerm::identity(n);
    let mut cur_m = Mat::identity(n, n);
    let mut word = Vec::new();
    let samples = p.samples();
    let params = p.params();
    for k in 0..samples.len().saturating_sub(1) {
        let (a, b) = (&samples[k], &samples[k + 1]);
        let mut s0 = 0.0;
        loop {
            let mut best: Option<(f64, usize)> = None;
            for (c, g) in planes.iter().enumerate() {
                let cand = g * &cur_m;
                let f = |s: f64| {
                    let x = segment_point(a, b, s);
                    dist(&x, &cand) - dist(&x, &cur_m)
                };
                if f(1.0) >= -CROSS_TOL {
                    continue;
                }
                let (mut lo, mut hi) = (s0, 1.0);
                if f(lo) < -CROSS_TOL {
                    hi = lo;
                } else {
                    for _ in 0..BISECTIONS {
                        let mid = 0.5 * (lo + hi);
                        if f(mid) < -CROSS_TOL {
                            hi = mid;
                        } else {
                            lo = mid;
                        }
                    }
                }
                if best.is_none_or(|(t, _)| hi < t - TIE_TOL) {
                    best = Some((hi, c));
                }
            }
            let Some((t, c)) = best else { break };
            let l = letters[c];
            word.insert(0, l);
            cur = compose(&theta_plane(l.i, l.j, n)?, &cur)?;
            cur_m = perm_matrix(&cur);
            s0 = t;
            if word.len() > 64 * samples.len() {
                return Err(PathError::CoarseSampling(params[k]));
            }
        }
        let (near, d) = nearest_element(b);
        if near != cur && d < dist(b, &cur_m) - 1e-9 {
            return Err(PathError::CoarseSampling(params[k + 1]));
        }
    }
    Ok(word)
}

/// [`snap_to_word`], doubling the sampling up to `max_doublings` times on a
/// coarse-sampling error.
pub fn snap_to_word_refining(
    p: &RotationPath,
    max_doublings: usize,
) -> Result<Vec<PlaneLetter>, PathError> {
    let mut path = p.clone();
    let mut tries = 0;
    loop {
        match snap_to_word(&path) {
            Err(PathError::CoarseSampling(_)) if tries < max_doublings => {
                path = path.refined();
                tries += 1;
            }
            r => return r,
        }
    }
}
