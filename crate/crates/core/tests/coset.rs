use spincover::coset::{enumerate, group_order, EnumLimits, Strategy};
use spincover::words::{parse_word, presentation_for, Variant};

#[test]
fn strategies_agree_after_standardization() {
    for n in 3..=5 {
        let p = presentation_for(n, Variant::Standard).unwrap();
        let hlt = enumerate(&p, &[], EnumLimits::default()).unwrap();
        let felsch = enumerate(
            &p,
            &[],
            EnumLimits {
                strategy: Strategy::Felsch,
                ..EnumLimits::default()
            },
        )
        .unwrap();
        assert_eq!(hlt.to_text(), felsch.to_text(), "n = {n}");
    }
}

#[test]
fn tables_are_consistent_and_close_relators() {
    for n in 3..=4 {
        let p = presentation_for(n, Variant::Standard).unwrap();
        let t = enumerate(&p, &[], EnumLimits::default()).unwrap();
        assert!(t.is_consistent());
        for c in 0..t.len() {
            for r in &p.relators {
                assert!(t.closes(c, r));
            }
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    let p = presentation_for(4, Variant::Standard).unwrap();
    let a = enumerate(&p, &[], EnumLimits::default()).unwrap().to_text();
    let b = enumerate(&p, &[], EnumLimits::default()).unwrap().to_text();
    assert_eq!(a, b);
    assert!(a.starts_with("cosets: 384 rank: 4\n"));
}

#[test]
fn representatives_reach_their_cosets() {
    let p = presentation_for(3, Variant::Standard).unwrap();
    let t = enumerate(&p, &[], EnumLimits::default()).unwrap();
    for c in 1..=t.len() {
        let w = t.representative(c).unwrap();
        assert_eq!(t.coset_action(1, &w).unwrap(), c);
    }
}

#[test]
fn subgroup_cosets_and_limits() {
    let p = presentation_for(3, Variant::Standard).unwrap();
    let h = [parse_word("R1", 3).unwrap()];
    let t = enumerate(&p, &h, EnumLimits::default()).unwrap();
    assert_eq!(t.len(), 6);
    let tiny = EnumLimits {
        max_cosets: 10,
        ..EnumLimits::default()
    };
    assert!(group_order(&p, tiny).is_err());
}

#[test]
fn order_formula_for_every_rank() {
    for (n, want) in [(3, 48), (4, 384), (5, 3840), (6, 46080)] {
        let p = presentation_for(n, Variant::Standard).unwrap();
        assert_eq!(group_order(&p, EnumLimits::default()).unwrap(), want);
    }
}
