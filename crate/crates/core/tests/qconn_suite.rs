use std::time::Instant;

use springer_core::hecke::HeckeAlgebra;
use springer_core::qconn::{flatness_check, unit_weight, w_equivariance_check};

#[test]
fn flat_through_height_four() {
    for t in ["A2", "B2", "G2"] {
        let s = Instant::now();
        let alg = HeckeAlgebra::new(t.parse().unwrap()).unwrap();
        let reports = flatness_check(&alg, 4);
        assert!(reports.iter().all(|r| r.flat()), "{t}: {reports:?}");
        eprintln!("{t} flatness: {:?}", s.elapsed());
    }
}

#[test]
fn equivariance_defect_is_the_rho_cocycle() {
    for t in ["A2", "B2"] {
        let alg = HeckeAlgebra::new(t.parse().unwrap()).unwrap();
        let g = alg.group();
        let mut elements: Vec<usize> = (0..alg.rank()).map(|i| g.simple(i)).collect();
        elements.push(g.from_word(&[0, 1]));
        for w in elements {
            for k in 0..alg.rank() {
                let rep = w_equivariance_check(&alg, w, &unit_weight(alg.rank(), k));
                assert!(rep.gauged, "{t} {rep:?}");
                assert_eq!(rep.scalar_defect, Some(rep.predicted_defect), "{t} {rep:?}");
                assert_eq!(rep.literal, rep.predicted_defect == 0, "{t} {rep:?}");
            }
        }
    }
}
