use std::time::Instant;

use springer_core::hecke::{check_relations, Flavor, HeckeAlgebra};

#[test]
fn relation_suite_timing() {
    let start = Instant::now();
    for t in ["A1", "A2", "A3", "B2", "B3", "C3", "G2"] {
        let alg = HeckeAlgebra::new(t.parse().unwrap()).unwrap();
        let d = 2 * alg.group().element(alg.group().longest()).length() as u32;
        for flavor in [Flavor::Ht, Flavor::Nil] {
            let s = Instant::now();
            let rel = check_relations(&alg, flavor, d).unwrap();
            assert!(rel.iter().all(|r| r.ok()), "{t} {flavor:?}");
            eprintln!("{t} {flavor:?} degree {d}: {:?}", s.elapsed());
        }
    }
    eprintln!("total {:?}", start.elapsed());
}
