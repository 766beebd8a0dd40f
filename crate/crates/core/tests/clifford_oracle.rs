mod common;

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use wres_core::clifford::CliffordWord;
use wres_core::Cl;

use common::{cl_word, gammas, gauss, k_to_gi};

fn random_gens(rng: &mut StdRng, n: u8) -> Vec<u8> {
    let len = rng.gen_range(0..=6);
    (0..len).map(|_| rng.gen_range(1..=n)).collect()
}

fn random_expr(rng: &mut StdRng, n: u8) -> Cl {
    let mut e = Cl::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let g = random_gens(rng, n);
        e = e.add(&cl_word(&g, gauss(rng.gen_range(-3..=3), rng.gen_range(-3..=3))));
    }
    e
}

#[test]
fn gamma_matrices_are_a_representation() {
    for n in [2u8, 3, 4, 6] {
        let g = gammas(n);
        for j in 0..n as usize {
            for k in 0..n as usize {
                let ac = g.c[j].mul(&g.c[k]).add(&g.c[k].mul(&g.c[j]));
                let want = if j == k { common::Mat::identity(g.dim).scale(common::GI::new(-2, 0)) } else { common::Mat::zero(g.dim) };
                assert_eq!(ac, want, "n={n} j={j} k={k}");
            }
        }
    }
}

#[test]
fn words_and_traces_match_matrices() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(11);
    for n in [2u8, 3, 4, 6] {
        let g = gammas(n);
        for _ in 0..1000 {
            let gens = random_gens(&mut rng, n);
            let (s, w) = CliffordWord::from_product(&gens);
            assert_eq!(g.product(&gens), g.word(&w).scale(common::GI::new(s as i64, 0)), "n={n} {gens:?}");
            let e = cl_word(&gens, gauss(1, 0));
            assert_eq!(k_to_gi(&e.spinor_trace(n)), g.trace(&g.product(&gens)), "trace n={n} {gens:?}");
        }
    }
    assert!(start.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn products_of_sums_match_matrices() {
    let mut rng = StdRng::seed_from_u64(12);
    for n in [2u8, 3, 4, 6] {
        let g = gammas(n);
        for _ in 0..300 {
            let (a, b) = (random_expr(&mut rng, n), random_expr(&mut rng, n));
            let ab = a.mul(&b, n).unwrap();
            assert_eq!(g.expr(&ab), g.expr(&a).mul(&g.expr(&b)), "n={n}");
            assert_eq!(k_to_gi(&ab.spinor_trace(n)), g.trace(&g.expr(&ab)));
        }
    }
}

#[test]
fn out_of_range_generator_is_rejected() {
    let a = cl_word(&[5], gauss(1, 0));
    assert!(a.mul(&a, 4).is_err());
}
