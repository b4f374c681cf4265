use springer_core::hecke::HeckeAlgebra;
use springer_core::shift::{
    composition_check, fundamental_solution, intertwiner_check, rationality_check, shift_suite, Cocharacter,
    DeltaConvention,
};

fn s(l: i64, t: i64) -> Cocharacter {
    Cocharacter::new(vec![l], t)
}

#[test]
fn frobenius_and_identities_at_height_three() {
    let alg = HeckeAlgebra::new("A1".parse().unwrap()).unwrap();
    let fs = fundamental_solution(&alg, 3).unwrap();
    assert!(fs.residual_grades().iter().all(Vec::is_empty));
    for conv in [DeltaConvention::Shifted, DeltaConvention::Reciprocal] {
        for c in [s(1, 0), s(0, 1), s(-1, 0), s(1, 1)] {
            let rep = intertwiner_check(&fs, &c, conv).unwrap();
            assert!(rep.ok(), "{rep:?}");
        }
        for (a, b) in [(s(0, 1), s(0, 1)), (s(1, 0), s(0, 1)), (s(0, 1), s(1, 0)), (s(1, 0), s(-1, 0))] {
            let rep = composition_check(&fs, &a, &b, conv).unwrap();
            assert!(rep.holds, "{rep:?}");
            assert_eq!(rep.scalar.as_deref(), Some("1"));
        }
    }
    let printed = composition_check(&fs, &s(0, 1), &s(0, 1), DeltaConvention::Printed).unwrap();
    assert!(!printed.holds);
}

#[test]
fn reciprocal_entries_are_rational() {
    let alg = HeckeAlgebra::new("A1".parse().unwrap()).unwrap();
    let fs = fundamental_solution(&alg, 7).unwrap();
    for c in [s(1, 0), s(0, 1), s(-1, 1), s(0, -1)] {
        let rep = rationality_check(&fs, &c, DeltaConvention::Reciprocal, 2).unwrap();
        assert!(rep.ok(), "{rep:?}");
    }
    // S(0;1) has the double pole (1 - q)^2
    let rep = rationality_check(&fs, &s(0, 1), DeltaConvention::Reciprocal, 2).unwrap();
    let den = &rep.entries[1].as_ref().unwrap().denominator;
    assert_eq!(den, &vec!["1".to_string(), "-2".to_string(), "1".to_string()]);
    // S(1;0) is a Laurent polynomial
    let rep = rationality_check(&fs, &s(1, 0), DeltaConvention::Reciprocal, 2).unwrap();
    assert!(rep.entries.iter().flatten().all(|e| e.denominator.len() == 1));
    let shifted = rationality_check(&fs, &s(0, 1), DeltaConvention::Shifted, 2).unwrap();
    assert!(shifted.entries.iter().all(Option::is_none));
}

#[test]
fn suite_decides_the_convention() {
    let alg = HeckeAlgebra::new("A1".parse().unwrap()).unwrap();
    let rep = shift_suite(&alg, 3, 7, &DeltaConvention::ALL).unwrap();
    assert!(rep.ok());
    assert_eq!(rep.passing(), vec![DeltaConvention::Reciprocal]);
}
