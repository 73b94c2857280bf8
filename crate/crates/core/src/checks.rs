//! The acceptance criteria as reports, one per criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coset::EnumLimits;
use crate::group::{expand, CanonicalForm, Descriptor, Element, GroupCtx, GroupError};
use crate::hyperocta::{
    compose, determinant, kernel, rotational_group, theta_element, theta_word, PermError,
    SignedPerm,
};
use crate::models::{
    extension_summaries, format_profile, stem_report, verify_2o, verify_matrix_model, Model,
    ModelError,
};
use crate::report::Report;
use crate::sopath::triangles::{random_local_words, triangular_words};
use crate::sopath::{
    compile_path, contract, is_local, reduce_local_word, replay, FlowParams, PathError, Verdict,
};
use crate::words::{format_plane_word, parse_word, presentation_for, Variant, WordError};

pub const CRITERIA: usize = 14;

#[derive(thiserror::Error, Debug)]
pub enum CheckError {
    #[error("no criterion {0}; valid criteria are 1 to {CRITERIA}")]
    UnknownCriterion(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Options shared by the randomized checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub seed: u64,
    /// Random pairs per rank in the sampled product checks.
    pub pairs: usize,
    /// Random local words in the reduction check.
    pub random_words: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            seed: 0,
            pairs: 10_000,
            random_words: 100,
        }
    }
}

/// Lazily built standard groups of rank 3 to 6, shared between criteria.
#[derive(Debug, Default)]
pub struct Groups {
    cells: [OnceLock<GroupCtx>; 7],
}

impl Groups {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, n: usize) -> Result<&GroupCtx, CheckError> {
        let cell = &self.cells[n];
        if let Some(g) = cell.get() {
            return Ok(g);
        }
        let g = GroupCtx::new(n, Variant::Standard)?;
        Ok(cell.get_or_init(|| g))
    }
}

fn elem(g: &GroupCtx, text: &str) -> Result<Element, CheckError> {
    Ok(g.element_from_word(&parse_word(text, g.rank())?)?)
}

fn labels(g: &GroupCtx, es: &[Element]) -> Result<String, CheckError> {
    let v: Result<Vec<String>, GroupError> = es.iter().map(|&e| g.label(e)).collect();
    Ok(format!("{{{}}}", v?.join(", ")))
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn title(k: usize) -> &'static str {
    match k {
        1 => "group orders",
        2 => "order formula",
        3 => "kernel of theta",
        4 => "generator orders",
        5 => "canonical forms",
        6 => "quotient structure",
        7 => "center structure",
        8 => "binary octahedral model",
        9 => "matrix models",
        10 => "twisted series",
        11 => "theta homomorphism",
        12 => "flow contraction",
        13 => "word reduction",
        14 => "oracle equivalence",
        _ => "unknown",
    }
}

/// Runs criterion `k`.
pub fn run_criterion(k: usize, groups: &Groups, opts: &CheckOptions) -> Result<Report, CheckError> {
    let mut r = match k {
        1 => group_orders(groups)?,
        2 => order_formula(groups)?,
        3 => kernels(groups)?,
        4 => generator_orders(groups)?,
        5 => canonical_forms(groups)?,
        6 => quotient_structure(groups)?,
        7 => centers(groups)?,
        8 => verify_2o()?,
        9 => matrix_models()?,
        10 => twisted_series()?,
        11 => theta_homomorphism(groups, opts)?,
        12 => flow_contraction(opts)?,
        13 => word_reduction(opts)?,
        14 => oracle_equivalence(groups, opts)?,
        _ => return Err(CheckError::UnknownCriterion(k)),
    };
    r.title = format!("criterion {k}: {}", title(k));
    Ok(r)
}

fn group_orders(groups: &Groups) -> Result<Report, CheckError> {
    let mut r = Report::new("");
    for (n, want) in [(3, 48), (4, 384), (5, 3840), (6, 46080)] {
        let got = groups.get(n)?.order();
        r.check(
            format!("n={n}"),
            got == want,
            format!("order {got}, expected {want}"),
        );
    }
    Ok(r)
}

fn order_formula(groups: &Groups) -> Result<Report, CheckError> {
    let mut r = Report::new("");
    for n in 3..=6 {
        let got = groups.get(n)?.order();
        let want = (1 << n) * factorial(n);
        r.check(
            format!("n={n}"),
            got == want,
            format!("order {got}, 2^n n! = {want}"),
        );
    }
    Ok(r)
}

fn kernels(groups: &Groups) -> Result<Report, CheckError> {
    let mut r = Report::new("");
    for n in 3..=6 {
        let g = groups.get(n)?;
        let ker = kernel(g)?;
        let want = [g.identity(), elem(g, "R1^4")?];
        let got: BTreeSet<usize> = ker.iter().map(|e| e.id()).collect();
        let expected: BTreeSet<usize> = want.iter().map(|e| e.id()).collect();
        r.check(
            format!("n={n}"),
            got == expected && ker.len() == 2,
            format!("kernel {}", labels(g, &ker)?),
        );
    }
    Ok(r)
}

fn generator_orders(groups: &Groups) -> Result<Report, CheckError> {
    let mut r = Report::new("");
    for n in 3..=6 {
        let g = groups.get(n)?;
        let z = elem(g, "R1^4")?;
        let mut orders = Vec::new();
        let mut fourth_equal = true;
        for i in 1..n {
            orders.push(g.element_order(elem(g, &format!("R{i}"))?)?);
            fourth_equal &= elem(g, &format!("R{i}^4"))? == z;
        }
        r.check(
            format!("n={n} orders"),
            orders.iter().all(|&o| o == 8),
            format!("R_i orders {orders:?}"),
        );
        r.check(
            format!("n={n} fourth powers"),
            fourth_equal,
            "R_i^4 = R1^4 for every i",
        );
        r.check(
            format!("n={n} central"),
            g.is_central(z)?,
            "R1^4 commutes with every generator",
        );
    }
    Ok(r)
}

fn family_sizes(g: &GroupCtx) -> Result<BTreeMap<Vec<Descriptor>, usize>, CheckError> {
    let mut sizes = BTreeMap::new();
    for e in g.elements() {
        *sizes.entry(g.canonical_form(e)?.family()).or_insert(0) += 1;
    }
    Ok(sizes)
}

fn canonical_forms(groups: &Groups) -> Result<Report, CheckError> {
    let mut r = Report::new("");
    for n in [3, 4] {
        let g = groups.get(n)?;
        let mut ok = 0;
        let mut image = BTreeSet::new();
        for cf in CanonicalForm::all(n) {
            let e = g.element_from_form(&cf)?;
            image.insert(e.id());
            if g.canonical_form(e)? == cf {
                ok += 1;
            }
        }
        let mut back = 0;
        for e in g.elements() {
            if g.element_from_form(&g.canonical_form(e)?)? == e {
                back += 1;
            }
        }
        r.check(
            format!("n={n} bijection"),
            ok == g.order() && back == g.order() && image.len() == g.order(),
            format!(
                "{ok} forms round-trip, {back} elements round-trip, {} distinct of {}",
                image.len(),
                g.order()
            ),
        );
    }
    let listed: [(usize, &[usize]); 2] = [
        (3, &[32, 8, 8]),
        (4, &[128, 32, 32, 32, 32, 32, 8, 8, 8, 8, 32, 8, 8, 8, 8]),
    ];
    for (n, want) in listed {
        let sizes: Vec<usize> = family_sizes(groups.get(n)?)?.into_values().collect();
        r.check(
            format!("n={n} family sizes"),
            sizes == want,
            format!("{sizes:?}, sum {}", sizes.iter().sum::<usize>()),
        );
    }
    Ok(r)
}

fn quotient_structure(groups: &Groups) -> Result<Report, CheckError> {
    let mut r = Report::new("");
    let g = groups.get(3)?;
    let q = g.quotient(elem(g, "R1^4")?, EnumLimits::default())?;
    let prof = q.order_profile()?;
    let want = BTreeMap::from([(1, 1), (2, 9), (3, 8), (4, 6)]);
    r.check("n=3 order", q.order() == 24, format!("{}", q.order()));
    r.check("n=3 profile", prof == want, format_profile(&prof));
    Ok(r)
}

fn centers(groups: &Groups) -> Result<Report, CheckError> {
    let mut r = Report::new("");
    for n in [3, 5] {
        let g = groups.get(n)?;
        let c = g.center();
        let want = [g.identity(), elem(g, "R1^4")?];
        r.check(
            format!("n={n}"),
            c == want,
            format!("center {}", labels(g, &c)?),
        );
    }
    let g = groups.get(4)?;
    let c = g.center();
    let a = elem(g, "R1^2 R3^2")?;
    r.check(
        "n=4 size",
        c.len() == 4,
        format!("center {}", labels(g, &c)?),
    );
    r.check("n=4 contains R1^2 R3^2", c.contains(&a), g.label(a)?);
    let lhs = elem(g, "R1 R2 R3 R1 R2 R3 R1 R2 R3 R1 R2 R3")?;
    let rhs = elem(g, "R1^2 R3^-2")?;
    r.check(
        "n=4 (R1 R2 R3)^4 = R1^2 R3^-2",
        lhs == rhs && g.is_central(rhs)?,
        format!("{} = {}", g.label(lhs)?, g.label(rhs)?),
    );
    let g = groups.get(6)?;
    let c = g.center();
    let a = elem(g, "R1^2 R3^2 R5^2")?;
    r.check(
        "n=6 contains R1^2 R3^2 R5^2",
        c.contains(&a),
        format!("center {}", labels(g, &c)?),
    );
    Ok(r)
}

fn matrix_models() -> Result<Report, CheckError> {
    let mut r = Report::new("");
    for m in [Model::Gl23, Model::Sl24] {
        let mut sub = verify_matrix_model(m)?;
        sub.title = m.name().to_string();
        r.extend(sub);
    }
    for m in [Model::BinaryOctahedral, Model::Gl23, Model::Sl24] {
        r.extend(stem_report(m)?);
    }
    Ok(r)
}

fn twisted_series() -> Result<Report, CheckError> {
    let mut r = Report::new("");
    let gl = extension_summaries()?
        .into_iter()
        .find(|e| e.model == Model::Gl23)
        .expect("GL(2,3) listed");
    let g3 = GroupCtx::new(3, Variant::Twisted)?;
    let prof = g3.order_profile()?;
    r.check(
        "n=3 order",
        g3.order() == 48,
        format!("{} (expected 48)", g3.order()),
    );
    r.check(
        "n=3 profile matches GL(2,3)",
        prof == gl.profile,
        format!(
            "twisted {} vs GL(2,3) {}",
            format_profile(&prof),
            format_profile(&gl.profile)
        ),
    );
    let z = g3.element_from_word(&parse_word("R1^4", 3)?)?;
    r.check(
        "info n=3 R1^4",
        true,
        format!(
            "order {}, central {}",
            g3.element_order(z)?,
            g3.is_central(z)?
        ),
    );
    let mut p = presentation_for(3, Variant::Twisted)?;
    p.relators.push(parse_word("R1^8", 3)?);
    p.variant = None;
    let aug = GroupCtx::from_presentation(p, EnumLimits::default())?;
    let aug_prof = aug.order_profile()?;
    r.check(
        "info n=3 with R1^8",
        true,
        format!(
            "order {}, profile {}, matches GL(2,3): {}",
            aug.order(),
            format_profile(&aug_prof),
            aug_prof == gl.profile
        ),
    );
    for n in [4, 5] {
        let g = GroupCtx::new(n, Variant::Twisted)?;
        r.check(format!("info n={n} order"), true, format!("{}", g.order()));
    }
    Ok(r)
}

fn theta_homomorphism(groups: &Groups, opts: &CheckOptions) -> Result<Report, CheckError> {
    let mut r = Report::new("");
    for n in 3..=6 {
        let p = presentation_for(n, Variant::Standard)?;
        let bad = p
            .relators
            .iter()
            .filter(|w| theta_word(w, n).map(|t| !t.is_identity()).unwrap_or(true))
            .count();
        r.check(
            format!("n={n} relators"),
            bad == 0,
            format!("{} relators, {bad} with nontrivial image", p.relators.len()),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for n in 3..=5 {
        let g = groups.get(n)?;
        let thetas: Vec<SignedPerm> = g
            .elements()
            .map(|e| theta_element(g, e))
            .collect::<Result<_, _>>()?;
        let ord = g.order();
        let pairs: Vec<(usize, usize)> = if n == 3 {
            (0..ord)
                .flat_map(|a| (0..ord).map(move |b| (a, b)))
                .collect()
        } else {
            (0..opts.pairs)
                .map(|_| (rng.random_range(0..ord), rng.random_range(0..ord)))
                .collect()
        };
        let els: Vec<Element> = g.elements().collect();
        let mut bad = 0;
        for &(a, b) in &pairs {
            let ab = g.multiply(els[a], els[b])?;
            if thetas[ab.index()] != compose(&thetas[a], &thetas[b])? {
                bad += 1;
            }
        }
        r.check(
            format!("n={n} products"),
            bad == 0,
            format!("{} pairs, {bad} mismatches", pairs.len()),
        );
        let image: BTreeSet<SignedPerm> = thetas.iter().cloned().collect();
        let want = (1 << (n - 1)) * factorial(n);
        let rot: BTreeSet<SignedPerm> = rotational_group(n).into_iter().collect();
        r.check(
            format!("n={n} image"),
            image.len() == want && image == rot,
            format!("{} images, 2^(n-1) n! = {want}", image.len()),
        );
        r.check(
            format!("n={n} determinants"),
            image.iter().all(|p| determinant(p) == 1),
            "every image has determinant +1",
        );
    }
    Ok(r)
}

fn flow_contraction(opts: &CheckOptions) -> Result<Report, CheckError> {
    let mut r = Report::new("");
    let fp = FlowParams {
        seed: opts.seed,
        ..FlowParams::default()
    };
    let mut worst = 0.0f64;
    let mut max_iters = 0;
    let mut bad = Vec::new();
    for w in triangular_words() {
        let p = compile_path(&w, 3, 16)?;
        let res = contract(&p, &fp)?;
        let ok = p.is_closed()
            && is_local(&p)
            && res.verdict == Verdict::Contracted
            && res.final_max_d < fp.tol
            && res.iterations <= fp.max_iters;
        if !ok {
            bad.push(format_plane_word(&w));
        }
        worst = worst.max(res.final_max_d);
        max_iters = max_iters.max(res.iterations);
    }
    r.check(
        "triangular words",
        bad.is_empty(),
        format!(
            "24 closed local paths, worst final max-D {worst:.3e}, at most {max_iters} iterations{}",
            if bad.is_empty() { String::new() } else { format!(", failed: {}", bad.join("; ")) }
        ),
    );
    let r12 = crate::words::PlaneLetter { i: 1, j: 2 };
    let p8 = compile_path(&[r12; 8], 3, 16)?;
    let res = contract(&p8, &fp)?;
    let last = res.attempts.last().expect("one attempt");
    r.check(
        "R1^8 contracts",
        res.verdict == Verdict::Contracted,
        format!(
            "{} after {} attempts, final max-D {:.3e} in {} iterations",
            res.verdict.as_str(),
            res.attempts.len(),
            res.final_max_d,
            last.iterations
        ),
    );
    let p4 = compile_path(&[r12; 4], 3, 16)?;
    let res = contract(&p4, &fp)?;
    let min_path = res
        .attempts
        .iter()
        .map(|a| a.path_max_d)
        .fold(f64::INFINITY, f64::min);
    let all_stalled = res.attempts.iter().all(|a| a.verdict == Verdict::Stalled);
    r.check(
        "R1^4 stalls",
        all_stalled && res.attempts.len() == fp.retries + 1 && min_path >= 4.0 - 1e-3,
        format!(
            "{} attempts all stalled: {all_stalled}, smallest path max-D {min_path:.12}",
            res.attempts.len()
        ),
    );
    Ok(r)
}

fn word_reduction(opts: &CheckOptions) -> Result<Report, CheckError> {
    let mut r = Report::new("");
    let mut check_all = |name: &str, words: &[Vec<crate::words::PlaneLetter>], n: usize| {
        let mut bad = 0;
        let mut steps = 0;
        let mut detours = 0;
        for w in words {
            match reduce_local_word(w, n) {
                Ok(red) => {
                    steps += red.steps.len();
                    detours += usize::from(red.detours > 0);
                    if !matches!(replay(w, &red.steps), Ok(ref e) if e.is_empty()) {
                        bad += 1;
                    }
                }
                Err(_) => bad += 1,
            }
        }
        r.check(
            name,
            bad == 0,
            format!(
                "{} words, {bad} failures, {steps} rewrite steps, {detours} needing the alternative rewrite",
                words.len()
            ),
        );
    };
    check_all("triangular words", &triangular_words(), 3);
    let words = random_local_words(4, opts.random_words, opts.seed)?;
    check_all("random local words n=4", &words, 4);
    Ok(r)
}

fn oracle_equivalence(groups: &Groups, opts: &CheckOptions) -> Result<Report, CheckError> {
    let mut r = Report::new("");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
    for n in 3..=5 {
        let g = groups.get(n)?;
        let els: Vec<Element> = g.elements().collect();
        let forms: Vec<_> = els
            .iter()
            .map(|&e| g.canonical_form(e).map(|cf| expand(&cf)))
            .collect::<Result<_, _>>()?;
        let schreier: Vec<_> = els
            .iter()
            .map(|&e| g.schreier_word(e))
            .collect::<Result<_, _>>()?;
        let ord = g.order();
        let pairs: Vec<(usize, usize)> = if n == 3 {
            (0..ord)
                .flat_map(|a| (0..ord).map(move |b| (a, b)))
                .collect()
        } else {
            (0..opts.pairs)
                .map(|_| (rng.random_range(0..ord), rng.random_range(0..ord)))
                .collect()
        };
        let mut bad = 0;
        for &(a, b) in &pairs {
            let via_forms = g.element_from_word(&forms[a].concat(&forms[b]))?;
            let via_table = g
                .table()
                .coset_action(1, &schreier[a].concat(&schreier[b]))
                .map_err(GroupError::from)?;
            if via_forms.id() != via_table || g.multiply(els[a], els[b])? != via_forms {
                bad += 1;
            }
        }
        r.check(
            format!("n={n}"),
            bad == 0,
            format!("{} pairs, {bad} mismatches", pairs.len()),
        );
    }
    Ok(r)
}
