use hypercone::rational::int;
use hypercone::{
    decode_f10, find_builtin, parse_inequality, search_contraction, verify_contraction, ContractionMap, Error,
    RankStatus, SearchOptions, SearchOutcome, VerifyOptions,
};

fn verify(name: &str, k_max: usize, prune: bool) -> hypercone::ContractionReport {
    let e = find_builtin(name).unwrap();
    let opts = VerifyOptions { k_max, prune, ..Default::default() };
    verify_contraction(e.map.as_ref().unwrap(), &e.inequality, &opts).unwrap()
}

#[test]
fn ssa_map_is_fully_proved() {
    let r = verify("SSA", 2, true);
    assert!(r.all_verified());
    assert_eq!(r.beta_total, int(2));
    assert!(r.fully_proved);
}

#[test]
fn ssa_map_is_the_only_valid_one() {
    let ssa = &find_builtin("SSA").unwrap().inequality;
    let mut valid = Vec::new();
    for code in 0u64..256 {
        let images: Vec<u64> = (0..4).map(|i| (code >> (2 * i)) & 3).collect();
        let map = ContractionMap::new(2, 2, images.clone()).unwrap();
        match verify_contraction(&map, ssa, &VerifyOptions::default()) {
            Ok(r) if r.all_verified() => valid.push(images),
            Ok(_) | Err(Error::MapInvalid { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }
    assert_eq!(valid, vec![vec![0, 1, 1, 3]]);
}

#[test]
fn mmi_map_breaks_at_rank_four() {
    let r = verify("MMI", 4, true);
    assert_eq!(r.rank(2).unwrap().status, RankStatus::Verified);
    assert_eq!(r.rank(3).unwrap().status, RankStatus::Verified);
    let four = r.rank(4).unwrap();
    assert_eq!(four.status, RankStatus::Violated);
    let w = four.witness.as_ref().unwrap();
    assert_eq!((w.lhs.clone(), w.rhs.clone()), (int(3), int(4)));
    let domain: Vec<String> = w.domain.iter().map(|b| b.to_string()).collect();
    assert_eq!(domain, ["000", "011", "101", "110"]);
    assert!(!r.fully_proved);
}

#[test]
fn ingleton_map_is_fully_proved_at_rank_five() {
    let e = find_builtin("Ingleton").unwrap();
    assert_eq!(e.map.as_ref().unwrap().image(&e.inequality.occurrence_vectors().unwrap().lhs[0]).to_string(), "10011");
    let r = verify("Ingleton", 5, true);
    assert_eq!(r.verified_through(), 5);
    assert!(r.fully_proved);
    assert!(!verify("Ingleton", 4, true).fully_proved);
}

#[test]
fn pruning_never_changes_reports() {
    for name in ["SA", "SSA", "MMI", "Ingleton"] {
        let with = verify(name, 4, true);
        let without = verify(name, 4, false);
        for (a, b) in with.ranks.iter().zip(&without.ranks) {
            assert_eq!((a.k, a.status, &a.witness), (b.k, b.status, &b.witness), "{name}");
        }
        assert_eq!(with.ranks.len(), without.ranks.len());
    }
}

#[test]
fn tiny_budget_is_reported() {
    let e = find_builtin("Q1").unwrap();
    let opts = VerifyOptions { k_max: 4, budget: 1000, prune: true };
    let r = verify_contraction(e.map.as_ref().unwrap(), &e.inequality, &opts).unwrap();
    assert!(r.ranks.iter().any(|x| x.status == RankStatus::BudgetExceeded));
    assert!(!r.fully_proved);
}

#[test]
fn map_of_wrong_shape_is_rejected() {
    let ssa = &find_builtin("SSA").unwrap().inequality;
    let map = decode_f10(&[0, 1, 1, 1, 1, 1, 1, 1], 3, 2).unwrap();
    assert!(verify_contraction(&map, ssa, &VerifyOptions::default()).is_err());
    assert!(decode_f10(&[0, 1, 1], 2, 2).is_err());
}

#[test]
fn search_finds_ssa() {
    let ssa = parse_inequality("S(AB) + S(BC) >= S(B) + S(ABC)", 3).unwrap();
    match search_contraction(&ssa, &SearchOptions::default()).unwrap() {
        SearchOutcome::Found { map, report } => {
            assert_eq!(map.images(), &[0, 1, 1, 3]);
            assert!(report.all_verified());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn search_rejects_mmi_at_rank_four() {
    let mmi = &find_builtin("MMI").unwrap().inequality;
    let opts = SearchOptions { k_target: 4, ..Default::default() };
    match search_contraction(mmi, &opts).unwrap() {
        SearchOutcome::Unsatisfiable { k, witness } => {
            assert_eq!(k, 4);
            assert_eq!((witness.lhs, witness.rhs), (int(3), int(4)));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn search_finds_an_ingleton_map() {
    let e = find_builtin("Ingleton").unwrap();
    let opts = SearchOptions { k_target: 4, ..Default::default() };
    match search_contraction(&e.inequality, &opts).unwrap() {
        SearchOutcome::Found { map, .. } => {
            let r = verify_contraction(&map, &e.inequality, &VerifyOptions { k_max: 4, ..Default::default() }).unwrap();
            assert_eq!(r.verified_through(), 4);
        }
        other => panic!("{other:?}"),
    }
}
