use std::time::Instant;

use springer_core::hecke::HeckeAlgebra;
use springer_core::limits::{
    chevalley_check, etingof_limit_check, toda_casimir_check, toda_flatness, toda_limit_check, QuadraticForm,
};
use springer_core::qconn::unit_weight;

#[test]
fn toda_limit_through_height_three() {
    for t in ["A1", "A2", "B2", "G2"] {
        let s = Instant::now();
        let alg = HeckeAlgebra::new(t.parse().unwrap()).unwrap();
        let r = alg.rank();
        for k in 0..r {
            let rep = toda_limit_check(&alg, &unit_weight(r, k), 3);
            assert!(rep.ok(), "{t} {rep:?}");
        }
        let rho = vec![1; r];
        assert!(toda_limit_check(&alg, &rho, 3).ok(), "{t} rho");
        eprintln!("{t} toda limit: {:?}", s.elapsed());
    }
}

#[test]
fn toda_connection_is_flat() {
    for t in ["A2", "B2", "G2"] {
        let alg = HeckeAlgebra::new(t.parse().unwrap()).unwrap();
        assert!(toda_flatness(&alg, 4), "{t}");
    }
}

#[test]
fn quantum_chevalley_for_flags() {
    for t in ["A1", "A2", "B2"] {
        let alg = HeckeAlgebra::new(t.parse().unwrap()).unwrap();
        let rep = chevalley_check(&alg, 3).unwrap();
        assert!(rep.ok(), "{t} {rep:?}");
    }
}

#[test]
fn toda_casimir_rank_at_most_three() {
    for t in ["A1", "A2", "A3", "B2", "B3", "C3", "G2"] {
        let s = Instant::now();
        let alg = HeckeAlgebra::new(t.parse().unwrap()).unwrap();
        let form = QuadraticForm::killing(alg.root_system());
        let rep = toda_casimir_check(&alg, &form, 3);
        assert!(rep.ok(), "{t} {rep:?}");
        eprintln!("{t} casimir: {:?}", s.elapsed());
    }
}

#[test]
fn etingof_potential_survives_on_simple_roots() {
    for t in ["A1", "A2", "B2", "G2"] {
        let alg = HeckeAlgebra::new(t.parse().unwrap()).unwrap();
        let rs = alg.root_system();
        let rep = etingof_limit_check(rs, &QuadraticForm::killing(rs), 4).unwrap();
        assert!(rep.ok(), "{t} {rep:?}");
        assert!(rep.roots.iter().all(|row| row.survives == row.is_simple), "{t}");
    }
}
