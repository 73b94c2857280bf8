use proptest::prelude::*;
use spincover::hyperocta::{compose, determinant, rotational_group, theta_word, SignedPerm};
use spincover::words::{Letter, Word};

fn word(rank: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..rank, any::<bool>()), 0..20).prop_map(move |v| Word {
        letters: v
            .into_iter()
            .map(|(i, p)| if p { Letter::new(i) } else { Letter::inv(i) })
            .collect(),
        rank,
    })
}

proptest! {
    #[test]
    fn theta_is_a_homomorphism_on_words(n in 3usize..7, a in word(6), b in word(6)) {
        let keep = |w: Word| Word { letters: w.letters.into_iter().filter(|l| l.index < n).collect(), rank: n };
        let (a, b) = (keep(a), keep(b));
        let lhs = theta_word(&a.concat(&b), n).unwrap();
        let rhs = compose(&theta_word(&a, n).unwrap(), &theta_word(&b, n).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(determinant(&lhs), 1);
        prop_assert!(compose(&lhs, &lhs.inverse()).unwrap().is_identity());
    }
}

#[test]
fn rotational_group_sizes() {
    for (n, size) in [(2, 4), (3, 24), (4, 192), (5, 1920)] {
        let g = rotational_group(n);
        assert_eq!(g.len(), size);
        assert!(g.iter().all(|p| determinant(p) == 1));
    }
}

#[test]
fn signed_perm_validation() {
    assert!(SignedPerm::new(vec![1, -1]).is_err());
    assert!(SignedPerm::new(vec![3, 1]).is_err());
    assert_eq!(
        SignedPerm::new(vec![2, -1, 3]).unwrap().to_string(),
        "[2,-1,3]"
    );
}
