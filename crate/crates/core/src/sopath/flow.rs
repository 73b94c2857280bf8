//! Discrete homotopy flow that contracts closed paths in SO(n).
//!
//! Each interior sample `X_k` takes a tangential step along
//! `X skew(Xᵀ A_k)` followed by the polar retraction, where
//! `A_k = κ (X_{k-1} + X_{k+1}) + α 1`. The `α 1` part is the negated
//! gradient of `D(X, 1)`; the `κ` part is the negated gradient of the
//! path energy `Σ D(X_k, X_{k+1})`, which keeps neighbouring samples close
//! so the sampled path stays a path. The `α` attraction is applied only
//! while the whole path is local: on a local path no sample can reach a
//! fixed point of the pointwise flow other than the identity, so the
//! pointwise flow is itself a homotopy there. Elsewhere only the path
//! energy acts, which can untangle a contractible loop but has no way to
//! pull a loop across the rotations by π.
//!
//! The flow works on its own grid: the input samples are thinned so that
//! neighbours stay within `max_gap` of each other, and a retracted midpoint
//! is inserted whenever a gap grows beyond it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    dist, dist_id, is_local_matrix, polar, skew, Mat, PathError, RotationPath, CLOSED_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowParams {
    /// Gradient step size `h`.
    pub step: f64,
    pub max_iters: usize,
    /// Contracted once every sample is within this `D` of the identity.
    pub tol: f64,
    /// Iterations without relative progress before declaring a stall.
    pub stall_window: usize,
    /// Relative improvement of max-D or path length that counts as progress.
    pub progress: f64,
    /// Weight `κ` of the path energy.
    pub tension: f64,
    /// Weight `α` of the attraction to the identity on local paths.
    pub attraction: f64,
    /// Largest allowed `D` between neighbouring samples of the flow grid.
    pub max_gap: f64,
    /// Entry size of the random skew perturbation applied on retries.
    pub jitter: f64,
    /// Jittered retries after a stall.
    pub retries: usize,
    pub seed: u64,
}

impl Default for FlowParams {
    fn default() -> Self {
        FlowParams {
            step: 0.05,
            max_iters: 20_000,
            tol: 1e-6,
            stall_window: 500,
            progress: 1e-12,
            tension: 8.0,
            attraction: 1.0,
            max_gap: 0.06,
            jitter: 1e-3,
            retries: 10,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Contracted,
    Stalled,
    BudgetExhausted,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Contracted => "contracted",
            Verdict::Stalled => "stalled",
            Verdict::BudgetExhausted => "budget-exhausted",
        }
    }
}

/// Outcome of one run of the flow.
#[derive(Debug, Clone, PartialEq)]
pub struct Attempt {
    /// `None` for the unperturbed run.
    pub seed: Option<u64>,
    pub verdict: Verdict,
    pub iterations: usize,
    /// Final max over samples of `D(X, 1)`.
    pub max_d: f64,
    /// Final max of `D(X, 1)` along the retracted linear interpolation between samples.
    pub path_max_d: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowResult {
    pub verdict: Verdict,
    /// Iterations of the last attempt.
    pub iterations: usize,
    pub final_max_d: f64,
    pub final_path_max_d: f64,
    /// Max-D after each iteration of the last attempt; entry 0 is the start.
    pub trace: Vec<f64>,
    pub attempts: Vec<Attempt>,
    pub final_path: Vec<Mat>,
}

impl FlowResult {
    /// CSV `iteration,max_d` of the trace.
    pub fn trace_csv(&self) -> String {
        let mut s = String::from("iteration,max_d\n");
        for (i, d) in self.trace.iter().enumerate() {
            s.push_str(&format!("{i},{d}\n"));
        }
        s
    }
}

/// One step of the pointwise flow `X ← polar(X + h X skew(Xᵀ))`.
pub fn descent_step(x: &Mat, h: f64) -> Mat {
    polar(&(x + x * skew(&x.transpose()) * h))
}

fn decimate(samples: &[Mat], max_gap: f64) -> Vec<Mat> {
    let last = samples.len() - 1;
    let mut keep = vec![samples[0].clone()];
    for k in 1..samples.len() {
        if k == last || dist(keep.last().expect("nonempty"), &samples[k + 1]) > max_gap {
            keep.push(samples[k].clone());
        }
    }
    keep
}

fn refine(samples: &mut Vec<Mat>, max_gap: f64) {
    let mut k = 0;
    while k + 1 < samples.len() {
        if dist(&samples[k], &samples[k + 1]) > max_gap {
            let mid = polar(&((&samples[k] + &samples[k + 1]) * 0.5));
            samples.insert(k + 1, mid);
        } else {
            k += 1;
        }
    }
}

fn jitter(samples: &mut [Mat], size: f64, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = samples.len();
    if len < 3 {
        return;
    }
    for x in samples[1..len - 1].iter_mut() {
        let n = x.nrows();
        let g = Mat::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
        let k = skew(&g);
        let scale = k.amax();
        if scale > 0.0 {
            let k = k * (size / scale);
            *x = polar(&(&*x * (Mat::identity(n, n) + k)));
        }
    }
}

fn path_length(samples: &[Mat]) -> f64 {
    samples
        .windows(2)
        .map(|w| dist(&w[0], &w[1]).max(0.0).sqrt())
        .sum()
}

/// Max of `D(X, 1)` along `polar((1-s) X_k + s X_{k+1})`, `sub` points per segment.
pub fn interpolated_max_d(samples: &[Mat], sub: usize) -> f64 {
    let mut m = samples.iter().map(dist_id).fold(0.0, f64::max);
    for w in samples.windows(2) {
        for l in 1..sub {
            let s = l as f64 / sub as f64;
            m = m.max(dist_id(&polar(&(&w[0] * (1.0 - s) + &w[1] * s))));
        }
    }
    m
}

fn max_d(samples: &[Mat]) -> f64 {
    samples.iter().map(dist_id).fold(0.0, f64::max)
}

fn run(p: &RotationPath, fp: &FlowParams, seed: Option<u64>) -> (Attempt, Vec<f64>, Vec<Mat>) {
    let mut s = p.samples().to_vec();
    if let Some(seed) = seed {
        jitter(&mut s, fp.jitter, seed);
    }
    let mut s = decimate(&s, fp.max_gap);
    refine(&mut s, fp.max_gap);
    let n = p.dim();
    let id = Mat::identity(n, n);
    let mut m = max_d(&s);
    let mut trace = vec![m];
    let mut best_m = m;
    let mut best_len = path_length(&s);
    let mut last_progress = 0;
    let mut verdict = Verdict::BudgetExhausted;
    let mut iterations = fp.max_iters;
    if m < fp.tol {
        verdict = Verdict::Contracted;
        iterations = 0;
    } else {
        for it in 1..=fp.max_iters {
            let local = s.iter().all(is_local_matrix);
            let mut next = Vec::with_capacity(s.len());
            next.push(s[0].clone());
            for k in 1..s.len() - 1 {
                let mut a = (&s[k - 1] + &s[k + 1]) * fp.tension;
                if local {
                    a += &id * fp.attraction;
                }
                let x = &s[k];
                next.push(polar(&(x + x * skew(&(x.transpose() * a)) * fp.step)));
            }
            next.push(s[s.len() - 1].clone());
            s = next;
            refine(&mut s, fp.max_gap);
            m = max_d(&s);
            trace.push(m);
            if m < fp.tol {
                verdict = Verdict::Contracted;
                iterations = it;
                break;
            }
            let len = path_length(&s);
            if m < best_m * (1.0 - fp.progress) {
                best_m = m;
                last_progress = it;
            }
            if len < best_len * (1.0 - fp.progress) {
                best_len = len;
                last_progress = it;
            }
            if it - last_progress >= fp.stall_window {
                verdict = Verdict::Stalled;
                iterations = it;
                break;
            }
        }
    }
    let attempt = Attempt {
        seed,
        verdict,
        iterations,
        max_d: m,
        path_max_d: interpolated_max_d(&s, 8),
        samples: s.len(),
    };
    (attempt, trace, s)
}

/// Flows a closed path toward the constant identity path.
///
/// A stalled run is retried from the original path with a seeded random
/// perturbation, up to `retries` times.
pub fn contract(p: &RotationPath, fp: &FlowParams) -> Result<FlowResult, PathError> {
    if p.closure_error() > CLOSED_TOL {
        return Err(PathError::NotClosed(p.closure_error()));
    }
    let mut attempts = Vec::new();
    let mut seed = None;
    loop {
        let (a, trace, path) = run(p, fp, seed);
        let verdict = a.verdict;
        attempts.push(a);
        let retry = attempts.len() - 1;
        if verdict != Verdict::Stalled || retry >= fp.retries {
            let last = attempts.last().expect("one attempt").clone();
            return Ok(FlowResult {
                verdict,
                iterations: last.iterations,
                final_max_d: last.max_d,
                final_path_max_d: last.path_max_d,
                trace,
                attempts,
                final_path: path,
            });
        }
        seed = Some(fp.seed.wrapping_add(retry as u64));
    }
}

/// Runs [`contract`] and reports the outcome; a stall is a witness that the
/// flow is pinned at rotations by π, not a proof of non-contractibility.
pub fn stall_witness(p: &RotationPath, fp: &FlowParams) -> Result<FlowResult, PathError> {
    contract(p, fp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sopath::{compile_path, generator_matrix, ortho_error};
    use crate::words::PlaneLetter;

    #[test]
    fn constant_path_contracts_immediately() {
        let r = contract(&RotationPath::constant(3, 4), &FlowParams::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Contracted);
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn open_path_rejected() {
        let p = compile_path(&[PlaneLetter { i: 1, j: 2 }], 3, 16).unwrap();
        assert!(matches!(
            contract(&p, &FlowParams::default()),
            Err(PathError::NotClosed(_))
        ));
    }

    #[test]
    fn descent_decreases_distance() {
        let x = generator_matrix(1, 2, 3, 0.4).unwrap() * generator_matrix(2, 3, 3, 0.3).unwrap();
        let y = descent_step(&x, 0.01);
        assert!(dist_id(&y) < dist_id(&x));
        assert!(ortho_error(&y) < 1e-12);
    }

    #[test]
    fn triangle_contracts() {
        let w = [
            PlaneLetter { i: 2, j: 1 },
            PlaneLetter { i: 3, j: 2 },
            PlaneLetter { i: 1, j: 3 },
            PlaneLetter { i: 2, j: 3 },
        ];
        let p = compile_path(&w, 3, 16).unwrap();
        let r = contract(&p, &FlowParams::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Contracted);
        assert!(r.final_max_d < 1e-6);
        assert_eq!(r.attempts.len(), 1);
        assert!(r.final_path.iter().all(|x| ortho_error(x) < 1e-8));
    }

    #[test]
    fn trace_csv_shape() {
        let r = contract(&RotationPath::constant(3, 2), &FlowParams::default()).unwrap();
        assert_eq!(r.trace_csv(), "iteration,max_d\n0,0\n");
    }
}
