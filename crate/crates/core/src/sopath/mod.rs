//! Paths in SO(n): generating-path matrices, the path product, the distance
//! `D(X, Y) = tr(1 - XᵀY)`, the contraction flow, nearest-element snapping,
//! and symbolic reduction of local closed words.

pub mod flow;
pub mod reduce;
pub mod snap;
pub mod triangles;

use std::fmt::Write as _;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::hyperocta::{PermError, SignedPerm};
use crate::words::{PlaneLetter, WordError};

pub use flow::{contract, descent_step, stall_witness, Attempt, FlowParams, FlowResult, Verdict};
pub use reduce::{reduce_local_word, replay, Reduction, Rule, Step};
pub use snap::{nearest_element, snap_to_word, snap_to_word_refining};

pub type Mat = DMatrix<f64>;

/// Orthogonality tolerance on `‖XᵀX − 1‖_∞` for inputs.
pub const ORTHO_TOL: f64 = 1e-10;
/// Tolerance for a path to count as closed.
pub const CLOSED_TOL: f64 = 1e-8;

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum PathError {
    #[error("matrix is not orthogonal (deviation {0:.3e})")]
    NotOrthogonal(f64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("path is not closed (endpoint deviation {0:.3e})")]
    NotClosed(f64),
    #[error("path does not start at the identity")]
    BadStart,
    #[error("parameters must be strictly increasing in [0, 1]")]
    BadParams,
    #[error("path has no samples")]
    Empty,
    #[error("t = {0} outside [0, 1]")]
    BadT(f64),
    #[error("samples_per_letter must be at least 2")]
    TooFewSamples,
    #[error("endpoint is not a rotational hyperoctahedral element (distance {0:.3e})")]
    EndpointNotGroupElement(f64),
    #[error("sampling too coarse near t = {0:.6}: nearest element is not adjacent")]
    CoarseSampling(f64),
    #[error("word is not closed: its signed permutation is {0}")]
    WordNotClosed(String),
    #[error("word is not local")]
    WordNotLocal,
    #[error("letter {letter} reached the left end without cancelling")]
    LetterNotCancelled { letter: String },
    #[error("replay mismatch at step {0}")]
    ReplayMismatch(usize),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Rotation by `t·π/2` in the plane of axes `i, j` (1-based), sending `e_i` toward `e_j`.
pub fn generator_matrix(i: usize, j: usize, n: usize, t: f64) -> Result<Mat, PathError> {
    PlaneLetter::new(i, j, n)?;
    if !(0.0..=1.0).contains(&t) {
        return Err(PathError::BadT(t));
    }
    Ok(plane_rotation(i - 1, j - 1, n, t))
}

fn plane_rotation(i: usize, j: usize, n: usize, t: f64) -> Mat {
    let (s, c) = (t * std::f64::consts::FRAC_PI_2).sin_cos();
    let mut m = Mat::identity(n, n);
    m[(i, i)] = c;
    m[(j, i)] = s;
    m[(i, j)] = -s;
    m[(j, j)] = c;
    m
}

/// Matrix with column `i` equal to `sign · e_|image(i)|`.
pub fn perm_matrix(p: &SignedPerm) -> Mat {
    let n = p.n();
    Mat::from_fn(n, n, |r, c| f64::from(p.matrix_entry(r, c)))
}

/// `‖XᵀX − 1‖_∞` (largest absolute entry).
pub fn ortho_error(x: &Mat) -> f64 {
    let n = x.nrows();
    (x.transpose() * x - Mat::identity(n, n)).amax()
}

/// `D(X, Y)` without input validation.
pub fn dist(x: &Mat, y: &Mat) -> f64 {
    x.nrows() as f64 - x.dot(y)
}

/// `D(X, 1) = n − tr X`.
pub fn dist_id(x: &Mat) -> f64 {
    x.nrows() as f64 - x.trace()
}

/// `D(X, Y) = tr(1 − XᵀY)` for orthogonal inputs.
pub fn distance(x: &Mat, y: &Mat) -> Result<f64, PathError> {
    if x.shape() != y.shape() || !x.is_square() {
        return Err(PathError::DimensionMismatch(x.nrows(), y.nrows()));
    }
    for m in [x, y] {
        let e = ortho_error(m);
        if e > ORTHO_TOL {
            return Err(PathError::NotOrthogonal(e));
        }
    }
    Ok(dist(x, y).max(0.0))
}

/// Polar retraction `X (XᵀX)^{-1/2}`.
pub fn polar(x: &Mat) -> Mat {
    let eig = SymmetricEigen::new(x.transpose() * x);
    let inv_sqrt = eig.eigenvalues.map(|l| 1.0 / l.sqrt());
    let v = &eig.eigenvectors;
    x * (v * Mat::from_diagonal(&inv_sqrt) * v.transpose())
}

/// `(A − Aᵀ)/2`.
pub fn skew(a: &Mat) -> Mat {
    (a - a.transpose()) * 0.5
}

/// A sampled path in SO(n) with its parameter values.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationPath {
    samples: Vec<Mat>,
    params: Vec<f64>,
}

impl RotationPath {
    pub fn new(samples: Vec<Mat>, params: Vec<f64>) -> Result<Self, PathError> {
        if samples.is_empty() {
            return Err(PathError::Empty);
        }
        if samples.len() != params.len()
            || params[0] != 0.0
            || params.windows(2).any(|w| w[1] <= w[0])
            || params.iter().any(|&t| !(0.0..=1.0).contains(&t))
        {
            return Err(PathError::BadParams);
        }
        let n = samples[0].nrows();
        for x in &samples {
            if x.nrows() != n || x.ncols() != n {
                return Err(PathError::DimensionMismatch(n, x.nrows()));
            }
            let e = ortho_error(x);
            if e > ORTHO_TOL {
                return Err(PathError::NotOrthogonal(e));
            }
        }
        if (&samples[0] - Mat::identity(n, n)).amax() > ORTHO_TOL {
            return Err(PathError::BadStart);
        }
        Ok(RotationPath { samples, params })
    }

    /// The constant identity path with `k` samples.
    pub fn constant(n: usize, k: usize) -> Self {
        let k = k.max(1);
        let params = if k == 1 {
            vec![0.0]
        } else {
            (0..k).map(|i| i as f64 / (k - 1) as f64).collect()
        };
        RotationPath {
            samples: vec![Mat::identity(n, n); k],
            params,
        }
    }

    /// Geodesic-like path `polar((1-s)·1 + s·target)` with `k` segments.
    pub fn interpolate_to(target: &Mat, k: usize) -> Result<Self, PathError> {
        let n = target.nrows();
        let id = Mat::identity(n, n);
        let samples = (0..=k)
            .map(|l| {
                let s = l as f64 / k as f64;
                polar(&(&id * (1.0 - s) + target * s))
            })
            .collect();
        let params = (0..=k).map(|l| l as f64 / k as f64).collect();
        RotationPath::new(samples, params)
    }

    pub fn dim(&self) -> usize {
        self.samples[0].nrows()
    }

    pub fn samples(&self) -> &[Mat] {
        &self.samples
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn endpoint(&self) -> &Mat {
        self.samples.last().expect("nonempty path")
    }

    /// Largest entry of `X_last − 1`.
    pub fn closure_error(&self) -> f64 {
        let n = self.dim();
        (self.endpoint() - Mat::identity(n, n)).amax()
    }

    pub fn is_closed(&self) -> bool {
        self.closure_error() <= CLOSED_TOL
    }

    pub fn max_d(&self) -> f64 {
        self.samples.iter().map(dist_id).fold(0.0, f64::max)
    }

    /// Doubles the resolution by inserting retracted midpoints.
    pub fn refined(&self) -> RotationPath {
        let mut samples = vec![self.samples[0].clone()];
        let mut params = vec![self.params[0]];
        for k in 1..self.len() {
            let mid = polar(&((&self.samples[k - 1] + &self.samples[k]) * 0.5));
            samples.push(mid);
            params.push(0.5 * (self.params[k - 1] + self.params[k]));
            samples.push(self.samples[k].clone());
            params.push(self.params[k]);
        }
        RotationPath { samples, params }
    }

    /// CSV: `t` then the row-major matrix entries.
    pub fn to_csv(&self) -> String {
        let n = self.dim();
        let mut s = String::from("t");
        for r in 1..=n {
            for c in 1..=n {
                let _ = write!(s, ",m{r}{c}");
            }
        }
        s.push('\n');
        for (x, t) in self.samples.iter().zip(&self.params) {
            let _ = write!(s, "{t}");
            for r in 0..n {
                for c in 0..n {
                    let _ = write!(s, ",{}", x[(r, c)]);
                }
            }
            s.push('\n');
        }
        s
    }
}

/// Every sample keeps every vertex `e_i` in its closed half-space: all diagonals ≥ −1e-10.
pub fn is_local(p: &RotationPath) -> bool {
    p.samples.iter().all(is_local_matrix)
}

pub fn is_local_matrix(x: &Mat) -> bool {
    x.diagonal().iter().all(|&d| d >= -1e-10)
}

/// Compiles a plane-letter word into a sampled path.
///
/// Letters are traversed from the rightmost; each generating path is
/// multiplied on the right by the endpoint accumulated so far.
pub fn compile_path(
    pw: &[PlaneLetter],
    n: usize,
    samples_per_letter: usize,
) -> Result<RotationPath, PathError> {
    if samples_per_letter < 2 {
        return Err(PathError::TooFewSamples);
    }
    for l in pw {
        PlaneLetter::new(l.i, l.j, n)?;
    }
    let k = pw.len();
    let mut samples = vec![Mat::identity(n, n)];
    let mut params = vec![0.0];
    let mut acc = Mat::identity(n, n);
    for (seg, l) in pw.iter().rev().enumerate() {
        for s in 1..=samples_per_letter {
            let frac = s as f64 / samples_per_letter as f64;
            samples.push(plane_rotation(l.i - 1, l.j - 1, n, frac) * &acc);
            params.push((seg as f64 + frac) / k as f64);
        }
        acc = plane_rotation(l.i - 1, l.j - 1, n, 1.0) * &acc;
    }
    Ok(RotationPath { samples, params })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperocta::theta_plane;

    #[test]
    fn generator_examples() {
        let id = Mat::identity(3, 3);
        assert_eq!(generator_matrix(1, 2, 3, 0.0).unwrap(), id);
        let g = generator_matrix(1, 2, 3, 1.0).unwrap();
        assert!((g.column(0) - Mat::from_column_slice(3, 1, &[0., 1., 0.])).amax() < 1e-15);
        assert!((g.column(1) - Mat::from_column_slice(3, 1, &[-1., 0., 0.])).amax() < 1e-15);
        let p = perm_matrix(&theta_plane(1, 2, 3).unwrap());
        assert!((g - p).amax() < 1e-15);
        let h = generator_matrix(2, 3, 4, 0.5).unwrap();
        assert!((dist_id(&h) - (2.0 - 2f64.sqrt())).abs() < 1e-14);
        assert!(generator_matrix(1, 1, 3, 0.5).is_err());
        assert!(generator_matrix(1, 2, 3, 1.5).is_err());
    }

    #[test]
    fn distance_examples() {
        let g = generator_matrix(1, 2, 3, 1.0).unwrap();
        let id = Mat::identity(3, 3);
        assert_eq!(distance(&g, &g).unwrap(), 0.0);
        let pi = generator_matrix(1, 2, 3, 1.0).unwrap() * &g;
        assert!((distance(&id, &pi).unwrap() - 4.0).abs() < 1e-14);
        for n in 3..7 {
            let g = generator_matrix(1, n, n, 1.0).unwrap();
            assert!((distance(&Mat::identity(n, n), &g).unwrap() - 2.0).abs() < 1e-14);
        }
        let bad = &id * 1.1;
        assert!(matches!(
            distance(&id, &bad),
            Err(PathError::NotOrthogonal(_))
        ));
    }

    #[test]
    fn compile_single_letter() {
        let p = compile_path(&[PlaneLetter { i: 1, j: 2 }], 3, 16).unwrap();
        assert_eq!(p.len(), 17);
        assert!((p.endpoint() - generator_matrix(1, 2, 3, 1.0).unwrap()).amax() < 1e-15);
        assert!(compile_path(&[PlaneLetter { i: 1, j: 2 }], 3, 1).is_err());
    }

    #[test]
    fn locality_examples() {
        assert!(is_local(&RotationPath::constant(3, 5)));
        let r14: Vec<PlaneLetter> = vec![PlaneLetter { i: 1, j: 2 }; 4];
        assert!(!is_local(&compile_path(&r14, 3, 16).unwrap()));
    }

    #[test]
    fn polar_restores_orthogonality() {
        let g = generator_matrix(1, 3, 3, 0.3).unwrap();
        let noisy = &g + Mat::from_element(3, 3, 1e-3);
        assert!(ortho_error(&polar(&noisy)) < 1e-14);
    }

    #[test]
    fn path_validation() {
        let id = Mat::identity(3, 3);
        assert!(RotationPath::new(vec![id.clone(), id.clone()], vec![0.0, 0.0]).is_err());
        assert!(RotationPath::new(vec![], vec![]).is_err());
        let g = generator_matrix(1, 2, 3, 1.0).unwrap();
        assert!(matches!(
            RotationPath::new(vec![g], vec![0.0]),
            Err(PathError::BadStart)
        ));
        let csv = RotationPath::constant(3, 2).to_csv();
        assert!(csv.starts_with("t,m11,m12"));
        assert_eq!(csv.lines().count(), 3);
    }
}
