//! Exact models of the three nontrivial central extensions of S4 by Z2:
//! the binary octahedral group 2O (unit quaternions), GL(2,3), and SL(2,Z/4).

pub mod dyadic;
pub mod matmod;
pub mod quaternion;

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;
use std::str::FromStr;

pub use dyadic::DyadicRt2;
pub use matmod::{mat_mul, MatMod};
pub use quaternion::{quat_mul, Quaternion};

use crate::group::{GroupCtx, GroupError};
use crate::report::Report;
use crate::words::{Letter, Variant};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("closure exceeds {max} elements")]
    ClosureTooLarge { max: usize },
    #[error("element {0} is not central")]
    NotCentral(String),
    #[error("element {0} is not in the group")]
    NotInGroup(String),
    #[error("unknown model `{0}` (expected `2o`, `gl23` or `sl24`)")]
    UnknownModel(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Breadth-first closure of `gens` under right multiplication, starting from `identity`.
pub fn generate_closure<T, F>(
    gens: &[T],
    identity: &T,
    mul: F,
    max: usize,
) -> Result<Vec<T>, ModelError>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut seen: HashSet<T> = HashSet::from([identity.clone()]);
    let mut out = vec![identity.clone()];
    let mut queue = VecDeque::from([identity.clone()]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mul(&x, g);
            if seen.insert(y.clone()) {
                if out.len() == max {
                    return Err(ModelError::ClosureTooLarge { max });
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

/// Least `k ≥ 1` with `x^k = identity`; `None` past `limit`.
pub fn element_order<T: Eq, F: Fn(&T, &T) -> T>(
    x: &T,
    identity: &T,
    mul: F,
    limit: usize,
) -> Option<usize> {
    let mut p = mul(x, identity);
    for k in 1..=limit {
        if p == *identity {
            return Some(k);
        }
        p = mul(&p, x);
    }
    None
}

pub fn power<T: Clone, F: Fn(&T, &T) -> T>(x: &T, identity: &T, mul: F, k: usize) -> T {
    (0..k).fold(identity.clone(), |acc, _| mul(&acc, x))
}

/// Multiset of element orders of a finite group given as a list.
pub fn order_profile<T: Eq, F: Fn(&T, &T) -> T>(
    group: &[T],
    identity: &T,
    mul: F,
) -> BTreeMap<usize, usize> {
    let mut prof = BTreeMap::new();
    for x in group {
        let k = element_order(x, identity, &mul, group.len()).expect("finite group");
        *prof.entry(k).or_insert(0) += 1;
    }
    prof
}

pub fn format_profile(p: &BTreeMap<usize, usize>) -> String {
    let parts: Vec<String> = p.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Whether central `c` lies in the commutator subgroup of `group`.
pub fn stem_test<T, F>(group: &[T], identity: &T, mul: F, central: &T) -> Result<bool, ModelError>
where
    T: Clone + Eq + Hash + Debug,
    F: Fn(&T, &T) -> T,
{
    if !group.contains(central) {
        return Err(ModelError::NotInGroup(format!("{central:?}")));
    }
    if group.iter().any(|g| mul(g, central) != mul(central, g)) {
        return Err(ModelError::NotCentral(format!("{central:?}")));
    }
    let inv: HashMap<&T, &T> = group
        .iter()
        .map(|a| {
            let b = group
                .iter()
                .find(|b| mul(a, b) == *identity)
                .expect("finite group has inverses");
            (a, b)
        })
        .collect();
    let mut commutators: Vec<T> = Vec::new();
    let mut seen = HashSet::new();
    for a in group {
        for b in group {
            let c = mul(&mul(&mul(a, b), inv[a]), inv[b]);
            if seen.insert(c.clone()) {
                commutators.push(c);
            }
        }
    }
    let derived = generate_closure(&commutators, identity, &mul, group.len())?;
    Ok(derived.contains(central))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    BinaryOctahedral,
    Gl23,
    Sl24,
}

impl FromStr for Model {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "2o" => Ok(Model::BinaryOctahedral),
            "gl23" => Ok(Model::Gl23),
            "sl24" => Ok(Model::Sl24),
            other => Err(ModelError::UnknownModel(other.to_string())),
        }
    }
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::BinaryOctahedral => "2O",
            Model::Gl23 => "GL(2,3)",
            Model::Sl24 => "SL(2,4)",
        }
    }
}

/// `u1 = (1 - k)/√2`, `u2 = (1 - j)/√2`.
pub fn quaternion_generators() -> (Quaternion, Quaternion) {
    let s = DyadicRt2::INV_SQRT2;
    let u1 = (Quaternion::one() + -Quaternion::k()).scale(s);
    let u2 = (Quaternion::one() + -Quaternion::j()).scale(s);
    (u1, u2)
}

/// The 24 Hurwitz units and the 24 quaternions `(±e_a ± e_b)/√2` for distinct basis units.
pub fn binary_octahedral_listing() -> (Vec<Quaternion>, Vec<Quaternion>) {
    let basis = [
        Quaternion::one(),
        Quaternion::i(),
        Quaternion::j(),
        Quaternion::k(),
    ];
    let mut hurwitz = Vec::new();
    for b in basis {
        hurwitz.push(b);
        hurwitz.push(-b);
    }
    let half = DyadicRt2::new(1, 0, 1);
    for mask in 0..16u32 {
        let s = |bit: u32| if mask >> bit & 1 == 1 { -half } else { half };
        hurwitz.push(Quaternion::new(s(0), s(1), s(2), s(3)));
    }
    let mut root2 = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            for (sa, sb) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let pick = |q: Quaternion, s: i64| if s < 0 { -q } else { q };
                root2.push((pick(basis[a], sa) + pick(basis[b], sb)).scale(DyadicRt2::INV_SQRT2));
            }
        }
    }
    (hurwitz, root2)
}

/// Generators of the matrix model: GL(2,3) or SL(2,Z/4).
pub fn matrix_generators(model: Model) -> (MatMod, MatMod) {
    match model {
        Model::Gl23 => (
            MatMod::new([[1, 1], [1, 0]], 3),
            MatMod::new([[1, 2], [2, 0]], 3),
        ),
        _ => (
            MatMod::new([[1, 0], [1, 1]], 4),
            MatMod::new([[3, 3], [0, 3]], 4),
        ),
    }
}

fn words<T: Clone, F: Fn(&T, &T) -> T>(mul: F) -> impl Fn(&[&T]) -> T {
    move |xs: &[&T]| {
        let mut acc = xs[0].clone();
        for x in &xs[1..] {
            acc = mul(&acc, x);
        }
        acc
    }
}

/// Checks the quaternion realization of G(3).
pub fn verify_2o() -> Result<Report, ModelError> {
    let mut r = Report::new("2O");
    let (u1, u2) = quaternion_generators();
    let one = Quaternion::one();
    let mul = |a: &Quaternion, b: &Quaternion| quat_mul(a, b);
    let prod = words(mul);
    let group = generate_closure(&[u1, u2], &one, mul, 1000)?;
    r.check(
        "closure size",
        group.len() == 48,
        format!("{} elements", group.len()),
    );

    let (hurwitz, root2) = binary_octahedral_listing();
    let closure: HashSet<Quaternion> = group.iter().copied().collect();
    let listed: HashSet<Quaternion> = hurwitz.iter().chain(&root2).copied().collect();
    r.check(
        "elements",
        closure == listed && listed.len() == 48,
        format!(
            "closure equals the 24 Hurwitz units plus the 24 (±a±b)/√2 quaternions: {}",
            closure == listed
        ),
    );
    let with_root2 = group
        .iter()
        .filter(|q| q.components().iter().any(|c| c.has_sqrt2()))
        .count();
    r.check(
        "norm types",
        with_root2 == 24 && group.len() - with_root2 == 24,
        format!("{} + {}", group.len() - with_root2, with_root2),
    );
    let hurwitz_closure = generate_closure(&hurwitz, &one, mul, 1000)?;
    r.check(
        "binary tetrahedral subgroup",
        hurwitz_closure.len() == 24,
        format!("Hurwitz units close to {} elements", hurwitz_closure.len()),
    );
    r.check(
        "braid relation",
        prod(&[&u2, &u1, &u2]) == prod(&[&u1, &u2, &u1]),
        "u2 u1 u2 = u1 u2 u1",
    );
    let u1sq = mul(&u1, &u1);
    r.check(
        "extra relation",
        u1sq == prod(&[&u2, &u1, &u1, &u2]),
        "u1^2 = u2 u1^2 u2",
    );
    r.check(
        "u1 squared",
        u1sq == -Quaternion::k(),
        format!("u1^2 = {u1sq}"),
    );
    let ord = element_order(&u1, &one, mul, 100);
    r.check(
        "generator order",
        ord == Some(8),
        format!("u1 order: {}", ord.unwrap_or(0)),
    );
    let unit = group
        .iter()
        .all(|q| q.norm2() == DyadicRt2::ONE && q.components().iter().all(|c| c.level() <= 1));
    r.check(
        "unit norm",
        unit,
        "every element has norm 1 and denominator level <= 1",
    );

    let g = GroupCtx::new(3, Variant::Standard)?;
    let iso = isomorphism_to_g3(&g, u1, u2, one, mul)?;
    r.check("isomorphism with G(3)", iso.0, iso.1);
    Ok(r)
}

/// Extends `R1 -> a`, `R2 -> b` along left multiplication in G(3) and checks every product.
pub fn isomorphism_to_g3<T, F>(
    g: &GroupCtx,
    a: T,
    b: T,
    identity: T,
    mul: F,
) -> Result<(bool, String), ModelError>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let gens = [(Letter::new(1), a), (Letter::new(2), b)];
    let mut phi: Vec<Option<T>> = vec![None; g.order()];
    phi[0] = Some(identity);
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(e) = queue.pop_front() {
        let pe = phi[e.index()].clone().expect("visited");
        for (l, img) in &gens {
            let f = g.left_letter(e, *l)?;
            let pf = mul(img, &pe);
            match &phi[f.index()] {
                Some(existing) if *existing != pf => {
                    return Ok((
                        false,
                        format!("generator map is not well defined at element {}", f.id()),
                    ));
                }
                Some(_) => {}
                None => {
                    phi[f.index()] = Some(pf);
                    queue.push_back(f);
                }
            }
        }
    }
    let phi: Vec<T> = match phi.into_iter().collect::<Option<Vec<T>>>() {
        Some(p) => p,
        None => return Ok((false, "generators do not reach every element".to_string())),
    };
    let distinct: HashSet<&T> = phi.iter().collect();
    if distinct.len() != g.order() {
        return Ok((
            false,
            format!("map is not injective: {} images", distinct.len()),
        ));
    }
    let mut pairs = 0;
    for x in g.elements() {
        for y in g.elements() {
            let xy = g.multiply(x, y)?;
            if phi[xy.index()] != mul(&phi[x.index()], &phi[y.index()]) {
                return Ok((
                    false,
                    format!("product of {} and {} not preserved", x.id(), y.id()),
                ));
            }
            pairs += 1;
        }
    }
    Ok((
        true,
        format!("bijective and preserves all {pairs} products"),
    ))
}

/// Checks one of the two matrix models against its presentation.
pub fn verify_matrix_model(model: Model) -> Result<Report, ModelError> {
    if model == Model::BinaryOctahedral {
        return verify_2o();
    }
    let mut r = Report::new(model.name());
    let (a, b) = matrix_generators(model);
    let m = a.m;
    let id = MatMod::identity(m);
    let mul = |x: &MatMod, y: &MatMod| mat_mul(x, y);
    let prod = words(mul);
    let pow = |x: &MatMod, k: usize| power(x, &id, mul, k);
    let group = generate_closure(&[a, b], &id, mul, 1000)?;
    r.check(
        "closure size",
        group.len() == 48,
        format!("{} elements", group.len()),
    );
    r.check(
        "braid relation",
        prod(&[&a, &b, &a]) == prod(&[&b, &a, &b]),
        "R1 R2 R1 = R2 R1 R2",
    );
    let ord = element_order(&a, &id, mul, 100).unwrap_or(0);
    let set: HashSet<MatMod> = group.iter().copied().collect();
    match model {
        Model::Gl23 => {
            let a2 = pow(&a, 2);
            let a6 = pow(&a, 6);
            r.check(
                "extra relation",
                a2 == prod(&[&b, &a6, &b]),
                "R1^2 = R2 R1^6 R2",
            );
            let a4 = pow(&a, 4);
            let central = group.iter().all(|g| mul(g, &a4) == mul(&a4, g));
            r.check("R1^4 central", central, format!("R1^4 = {a4}"));
            r.check("generator order", ord == 8, format!("R1 order: {ord}"));
            let all: HashSet<MatMod> = MatMod::all(3)
                .into_iter()
                .filter(|x| x.is_invertible())
                .collect();
            r.check(
                "whole group",
                set == all,
                format!("closure equals all {} invertible matrices mod 3", all.len()),
            );
        }
        _ => {
            r.check("R1^4 trivial", pow(&a, 4) == id, "R1^4 = 1");
            let ab = mul(&a, &b);
            r.check("(R1 R2)^6 trivial", pow(&ab, 6) == id, "(R1 R2)^6 = 1");
            r.check("generator order", ord == 4, format!("R1 order: {ord}"));
            let all: HashSet<MatMod> = MatMod::all(4)
                .into_iter()
                .filter(|x| x.det() == 1)
                .collect();
            r.check(
                "whole group",
                set == all,
                format!(
                    "closure equals all {} determinant-1 matrices mod 4",
                    all.len()
                ),
            );
        }
    }
    Ok(r)
}

/// Summary of one extension for [`extension_report`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionSummary {
    pub model: Model,
    pub order: usize,
    pub profile: BTreeMap<usize, usize>,
    pub generator_order: usize,
    pub stem: bool,
}

fn summarize<T, F>(
    model: Model,
    a: T,
    b: T,
    id: T,
    central: T,
    mul: F,
) -> Result<ExtensionSummary, ModelError>
where
    T: Clone + Eq + Hash + Debug,
    F: Fn(&T, &T) -> T,
{
    let group = generate_closure(&[a.clone(), b], &id, &mul, 1000)?;
    let profile = order_profile(&group, &id, &mul);
    let stem = stem_test(&group, &id, &mul, &central)?;
    Ok(ExtensionSummary {
        model,
        order: group.len(),
        profile,
        generator_order: element_order(&a, &id, &mul, 100).unwrap_or(0),
        stem,
    })
}

/// The element-order fingerprint and stem status of each of the three extensions.
pub fn extension_summaries() -> Result<Vec<ExtensionSummary>, ModelError> {
    let (u1, u2) = quaternion_generators();
    let q = summarize(
        Model::BinaryOctahedral,
        u1,
        u2,
        Quaternion::one(),
        -Quaternion::one(),
        quat_mul,
    )?;
    let mm = |x: &MatMod, y: &MatMod| mat_mul(x, y);
    let (a, b) = matrix_generators(Model::Gl23);
    let id3 = MatMod::identity(3);
    let gl = summarize(Model::Gl23, a, b, id3, power(&a, &id3, mm, 4), mm)?;
    let (a, b) = matrix_generators(Model::Sl24);
    let id4 = MatMod::identity(4);
    let z = power(&mat_mul(&a, &b), &id4, mm, 3);
    let sl = summarize(Model::Sl24, a, b, id4, z, mm)?;
    Ok(vec![q, gl, sl])
}

pub fn extension_report() -> Result<Report, ModelError> {
    let mut r = Report::new("extensions");
    let s = extension_summaries()?;
    for e in &s {
        r.check(
            format!("{} order", e.model.name()),
            e.order == 48,
            format!(
                "{} elements, orders {}",
                e.order,
                format_profile(&e.profile)
            ),
        );
    }
    let expected_stem = [true, true, false];
    for (e, want) in s.iter().zip(expected_stem) {
        r.check(
            format!("{} stem", e.model.name()),
            e.stem == want,
            format!("central generator in commutator subgroup: {}", e.stem),
        );
    }
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            r.check(
                format!("{} vs {}", s[i].model.name(), s[j].model.name()),
                s[i].profile != s[j].profile,
                "element-order multisets differ",
            );
        }
    }
    r.check(
        "generator orders",
        s[0].generator_order == 8 && s[1].generator_order == 8 && s[2].generator_order == 4,
        format!(
            "R1 order: {} / {} / {}",
            s[0].generator_order, s[1].generator_order, s[2].generator_order
        ),
    );
    Ok(r)
}

/// Stem status of a single model.
pub fn stem_report(model: Model) -> Result<Report, ModelError> {
    let s = extension_summaries()?;
    let e = s.iter().find(|e| e.model == model).expect("model listed");
    let mut r = Report::new(model.name());
    let want = model != Model::Sl24;
    r.check(
        "stem",
        e.stem == want,
        format!("central generator in commutator subgroup: {}", e.stem),
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u_generators() {
        let (u1, u2) = quaternion_generators();
        assert_eq!(quat_mul(&u1, &u1), -Quaternion::k());
        let lhs = quat_mul(&quat_mul(&u2, &u1), &u2);
        let rhs = quat_mul(&quat_mul(&u1, &u2), &u1);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn closures() {
        let (u1, u2) = quaternion_generators();
        let g = generate_closure(&[u1, u2], &Quaternion::one(), quat_mul, 100).unwrap();
        assert_eq!(g.len(), 48);
        assert!(matches!(
            generate_closure(&[u1, u2], &Quaternion::one(), quat_mul, 47),
            Err(ModelError::ClosureTooLarge { max: 47 })
        ));
        let (a, b) = matrix_generators(Model::Gl23);
        let g = generate_closure(&[a, b], &MatMod::identity(3), mat_mul, 100).unwrap();
        assert_eq!(g.len(), 48);
    }

    #[test]
    fn stem_results() {
        let s = extension_summaries().unwrap();
        assert_eq!(
            s.iter().map(|e| e.stem).collect::<Vec<_>>(),
            vec![true, true, false]
        );
    }

    #[test]
    fn stem_rejects_non_central() {
        let (u1, u2) = quaternion_generators();
        let one = Quaternion::one();
        let g = generate_closure(&[u1, u2], &one, quat_mul, 100).unwrap();
        assert!(matches!(
            stem_test(&g, &one, quat_mul, &u1),
            Err(ModelError::NotCentral(_))
        ));
    }

    #[test]
    fn reports_pass() {
        assert!(verify_2o().unwrap().pass);
        assert!(verify_matrix_model(Model::Gl23).unwrap().pass);
        let sl = verify_matrix_model(Model::Sl24).unwrap();
        assert!(sl.pass);
        assert!(sl.to_text().contains("R1 order: 4"));
        assert!(extension_report().unwrap().pass);
    }
}
