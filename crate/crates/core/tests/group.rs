use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spincover::coset::EnumLimits;
use spincover::group::{expand, CanonicalForm, GroupCtx};
use spincover::words::{parse_word, Variant};
use std::sync::OnceLock;

fn g(n: usize) -> &'static GroupCtx {
    static CELLS: [OnceLock<GroupCtx>; 7] = [const { OnceLock::new() }; 7];
    CELLS[n].get_or_init(|| GroupCtx::new(n, Variant::Standard).unwrap())
}

fn e(n: usize, w: &str) -> spincover::group::Element {
    g(n).element_from_word(&parse_word(w, n).unwrap()).unwrap()
}

#[test]
fn canonical_bijection_exhaustive_small_ranks() {
    for n in [3, 4] {
        let forms = CanonicalForm::all(n);
        assert_eq!(forms.len(), g(n).order());
        for cf in forms {
            let x = g(n).element_from_form(&cf).unwrap();
            assert_eq!(g(n).canonical_form(x).unwrap(), cf);
        }
    }
}

#[test]
fn canonical_bijection_sampled_large_ranks() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [5, 6] {
        let forms = CanonicalForm::all(n);
        for _ in 0..10_000 {
            let cf = &forms[rng.random_range(0..forms.len())];
            let x = g(n).element_from_word(&expand(cf)).unwrap();
            assert_eq!(&g(n).canonical_form(x).unwrap(), cf);
        }
    }
}

#[test]
fn generator_fourth_powers_agree() {
    for n in 3..=6 {
        let z = e(n, "R1^4");
        for i in 1..n {
            assert_eq!(e(n, &format!("R{i}^4")), z);
            assert_eq!(g(n).element_order(e(n, &format!("R{i}"))).unwrap(), 8);
        }
        assert_eq!(g(n).element_order(z).unwrap(), 2);
    }
}

#[test]
fn even_rank_centers_contain_square_products() {
    assert!(g(4).center().contains(&e(4, "R1^2 R3^2")));
    assert!(g(6).center().contains(&e(6, "R1^2 R3^2 R5^2")));
    assert_eq!(g(5).center(), vec![g(5).identity(), e(5, "R1^4")]);
}

#[test]
fn quotients() {
    let q = g(4).quotient(e(4, "R1^4"), EnumLimits::default()).unwrap();
    assert_eq!(q.order(), 192);
    assert!(g(3)
        .quotient(g(3).identity(), EnumLimits::default())
        .is_err());
    assert!(g(3).quotient(e(3, "R1"), EnumLimits::default()).is_err());
    let dot = g(3)
        .quotient(e(3, "R1^4"), EnumLimits::default())
        .unwrap()
        .cayley_dot()
        .unwrap();
    assert_eq!(dot.matches("[label=").count(), 24);
}

#[test]
fn cayley_graph_counts() {
    let dot = g(3).cayley_dot().unwrap();
    assert!(dot.starts_with("digraph cayley {"));
    assert_eq!(dot.matches(" -> ").count(), 96);
    assert_eq!(dot.matches("style=dotted").count(), 48);
}

#[test]
fn element_records_serialize_with_sorted_keys() {
    let recs = g(3).element_records().unwrap();
    assert_eq!(recs.len(), 48);
    let v = serde_json::to_string(&recs[0]).unwrap();
    assert!(v.starts_with("{\"canonical\":\"Id\",\"id\":1,\"order\":1,\"theta\":[1,2,3]}"));
}

proptest! {
    #[test]
    fn multiplication_associative(a in 1usize..=384, b in 1usize..=384, c in 1usize..=384) {
        let g = g(4);
        let (a, b, c) = (g.element(a).unwrap(), g.element(b).unwrap(), g.element(c).unwrap());
        let l = g.multiply(g.multiply(a, b).unwrap(), c).unwrap();
        let r = g.multiply(a, g.multiply(b, c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        prop_assert_eq!(g.multiply(a, g.inverse(a).unwrap()).unwrap(), g.identity());
    }

    #[test]
    fn words_equal_in_group_share_an_element(k in 1i64..16) {
        let g = g(3);
        let w = format!("R1^{k} R2 R1 R2");
        let v = format!("R1^{k} R1 R2 R1");
        prop_assert_eq!(
            g.element_from_word(&parse_word(&w, 3).unwrap()).unwrap(),
            g.element_from_word(&parse_word(&v, 3).unwrap()).unwrap()
        );
    }
}
