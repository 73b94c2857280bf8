//! Signed permutations and the homomorphism θ from G(n) onto the rotational
//! hyperoctahedral group.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::group::{Element, GroupCtx, GroupError};
use crate::words::{PlaneLetter, Word};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("axis index out of range for n = {n}")]
    OutOfRange { n: usize },
    #[error("plane needs two distinct axes, got ({0},{0})")]
    SameAxis(usize),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("images {0:?} are not a signed permutation")]
    NotAPermutation(Vec<i32>),
}

/// A bijection of `{±1..±n}` commuting with negation; `images[i-1]` is the image of `+i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignedPerm {
    images: Vec<i32>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm {
            images: (1..=n as i32).collect(),
        }
    }

    pub fn new(images: Vec<i32>) -> Result<Self, PermError> {
        let n = images.len() as i32;
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let a = x.unsigned_abs() as usize;
            if x == 0 || x.abs() > n || seen[a - 1] {
                return Err(PermError::NotAPermutation(images));
            }
            seen[a - 1] = true;
        }
        Ok(SignedPerm { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[i32] {
        &self.images
    }

    /// Image of a signed point `x ∈ {±1..±n}`.
    pub fn apply(&self, x: i32) -> i32 {
        let y = self.images[x.unsigned_abs() as usize - 1];
        if x < 0 {
            -y
        } else {
            y
        }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut images = vec![0; self.n()];
        for (i, &y) in self.images.iter().enumerate() {
            let src = i as i32 + 1;
            images[y.unsigned_abs() as usize - 1] = if y < 0 { -src } else { src };
        }
        SignedPerm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &y)| y == i as i32 + 1)
    }

    /// `M e_i = sign · e_|image|`: column `i` carries the image of `+i`.
    pub fn matrix_entry(&self, row: usize, col: usize) -> i32 {
        let y = self.images[col];
        if y.unsigned_abs() as usize == row + 1 {
            y.signum()
        } else {
            0
        }
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A θ image together with its determinant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaImage {
    pub perm: SignedPerm,
    pub determinant: i32,
}

impl From<SignedPerm> for ThetaImage {
    fn from(perm: SignedPerm) -> Self {
        let determinant = determinant(&perm);
        ThetaImage { perm, determinant }
    }
}

/// θ(R_i): `i ↦ i+1`, `i+1 ↦ −i`, all else fixed.
pub fn theta_generator(i: usize, n: usize) -> Result<SignedPerm, PermError> {
    if i == 0 || i >= n {
        return Err(PermError::OutOfRange { n });
    }
    theta_plane(i, i + 1, n)
}

/// θ(R_{ij}): `i ↦ j`, `j ↦ −i`, all else fixed.
pub fn theta_plane(i: usize, j: usize, n: usize) -> Result<SignedPerm, PermError> {
    if i == 0 || j == 0 || i > n || j > n {
        return Err(PermError::OutOfRange { n });
    }
    if i == j {
        return Err(PermError::SameAxis(i));
    }
    let mut p = SignedPerm::identity(n);
    p.images[i - 1] = j as i32;
    p.images[j - 1] = -(i as i32);
    Ok(p)
}

/// `(a ∘ b)(x) = a(b(x))`.
pub fn compose(a: &SignedPerm, b: &SignedPerm) -> Result<SignedPerm, PermError> {
    if a.n() != b.n() {
        return Err(PermError::SizeMismatch(a.n(), b.n()));
    }
    Ok(SignedPerm {
        images: b.images.iter().map(|&y| a.apply(y)).collect(),
    })
}

/// θ of a word: generator images composed with the rightmost letter applied first.
pub fn theta_word(w: &Word, n: usize) -> Result<SignedPerm, PermError> {
    let mut p = SignedPerm::identity(n);
    for l in w.letters.iter().rev() {
        let g = theta_generator(l.index, n)?;
        let g = if l.exp < 0 { g.inverse() } else { g };
        p = compose(&g, &p)?;
    }
    Ok(p)
}

/// θ of a plane-letter word, rightmost letter applied first.
pub fn theta_plane_word(pw: &[PlaneLetter], n: usize) -> Result<SignedPerm, PermError> {
    let mut p = SignedPerm::identity(n);
    for l in pw.iter().rev() {
        p = compose(&theta_plane(l.i, l.j, n)?, &p)?;
    }
    Ok(p)
}

/// Sign of the underlying permutation times the product of the entry signs.
pub fn determinant(p: &SignedPerm) -> i32 {
    let n = p.n();
    let perm: Vec<usize> = p
        .images
        .iter()
        .map(|y| y.unsigned_abs() as usize - 1)
        .collect();
    let mut seen = vec![false; n];
    let mut sign = 1;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut c = start;
        while !seen[c] {
            seen[c] = true;
            c = perm[c];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    let neg = p.images.iter().filter(|&&y| y < 0).count();
    if neg % 2 == 1 {
        -sign
    } else {
        sign
    }
}

/// Every signed permutation of size `n` with determinant +1 (`2^(n-1) n!` of them).
pub fn rotational_group(n: usize) -> Vec<SignedPerm> {
    let mut out = Vec::new();
    let mut perm: Vec<i32> = (1..=n as i32).collect();
    permutations(&mut perm, 0, &mut |p| {
        for mask in 0u32..(1 << n) {
            let images: Vec<i32> = p
                .iter()
                .enumerate()
                .map(|(i, &x)| if mask >> i & 1 == 1 { -x } else { x })
                .collect();
            let sp = SignedPerm { images };
            if determinant(&sp) == 1 {
                out.push(sp);
            }
        }
    });
    out.sort();
    out
}

fn permutations(v: &mut Vec<i32>, k: usize, f: &mut impl FnMut(&[i32])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

/// θ of an element, evaluated on its canonical word.
pub fn theta_element(g: &GroupCtx, e: Element) -> Result<SignedPerm, GroupError> {
    let w = g.word(e)?;
    theta_word(&w, g.rank()).map_err(GroupError::from)
}

/// All elements whose canonical word maps to the identity signed permutation.
pub fn kernel(g: &GroupCtx) -> Result<Vec<Element>, GroupError> {
    let mut out = Vec::new();
    for e in g.elements() {
        if theta_element(g, e)?.is_identity() {
            out.push(e);
        }
    }
    Ok(out)
}

/// The set of θ images of all elements.
pub fn image(g: &GroupCtx) -> Result<BTreeSet<SignedPerm>, GroupError> {
    g.elements().map(|e| theta_element(g, e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    #[test]
    fn generator_examples() {
        assert_eq!(theta_generator(1, 4).unwrap().images(), &[2, -1, 3, 4]);
        assert_eq!(theta_generator(3, 4).unwrap().images(), &[1, 2, 4, -3]);
        assert!(theta_generator(1, 1).is_err());
    }

    #[test]
    fn plane_examples() {
        assert_eq!(
            theta_plane(1, 2, 5).unwrap(),
            theta_generator(1, 5).unwrap()
        );
        assert_eq!(
            theta_plane(2, 1, 3).unwrap(),
            theta_plane(1, 2, 3).unwrap().inverse()
        );
        assert_eq!(theta_plane(1, 3, 3).unwrap().images(), &[3, 2, -1]);
        assert!(theta_plane(2, 2, 3).is_err());
    }

    #[test]
    fn compose_examples() {
        let a = theta_generator(1, 3).unwrap();
        let id = SignedPerm::identity(3);
        assert_eq!(compose(&a, &id).unwrap(), a);
        let mut p = id.clone();
        for _ in 0..4 {
            p = compose(&a, &p).unwrap();
        }
        assert!(p.is_identity());
        let b = theta_generator(2, 3).unwrap();
        assert_ne!(compose(&a, &b).unwrap(), compose(&b, &a).unwrap());
        assert!(compose(&a, &SignedPerm::identity(4)).is_err());
    }

    #[test]
    fn word_examples() {
        assert!(theta_word(&parse_word("R1^4", 3).unwrap(), 3)
            .unwrap()
            .is_identity());
        assert_eq!(
            theta_word(&parse_word("R1^2", 3).unwrap(), 3)
                .unwrap()
                .images(),
            &[-1, -2, 3]
        );
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&SignedPerm::identity(4)), 1);
        for n in 2..=6 {
            for i in 1..n {
                assert_eq!(determinant(&theta_generator(i, n).unwrap()), 1);
            }
        }
        assert_eq!(determinant(&SignedPerm::new(vec![-1, 2, 3]).unwrap()), -1);
        assert_eq!(rotational_group(3).len(), 24);
        assert_eq!(rotational_group(4).len(), 192);
    }

    #[test]
    fn rejects_non_permutation() {
        assert!(SignedPerm::new(vec![1, -1]).is_err());
        assert!(SignedPerm::new(vec![0, 2]).is_err());
        assert!(SignedPerm::new(vec![3, 1]).is_err());
    }

    #[test]
    fn serializes_as_list() {
        let p = theta_generator(1, 3).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[2,-1,3]");
        assert_eq!(p.to_string(), "[2,-1,3]");
    }
}
