//! The divided differences `Δ_i` on words in the letters `[ij]` model the
//! BGG operators: `φ_id((A_w A_i) · x) = φ_id(A_w · Δ_i(x))`.

use affine_fk::fk_action::{FKExpr, FKLetter};
use affine_fk::nilcoxeter::NilCoxElement;
use affine_fk::perm::elements_up_to;
use affine_fk::rational::q;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_word(rng: &mut ChaCha8Rng, n: usize, len: usize) -> FKExpr {
    let ni = n as i64;
    let mut letters = Vec::with_capacity(len);
    while letters.len() < len {
        let i = rng.gen_range(-3..=3);
        let j = i + rng.gen_range(1..=5);
        if (j - i) % ni != 0 {
            letters.push(FKLetter::new(n, i, j).unwrap().0);
        }
    }
    FKExpr::word(n, letters, q(1))
}

#[test]
fn divided_differences_match_right_multiplication() {
    let n = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let words: Vec<FKExpr> = (1..=3)
        .flat_map(|d| (0..200).map(move |_| d))
        .map(|d| random_word(&mut rng, n, d))
        .collect();
    let mut nonzero = 0;
    for v in elements_up_to(n, 4) {
        let a = NilCoxElement::basis(v);
        for x in &words {
            for i in 0..n {
                let lhs = x.act(&a.mul_generator_right(i)).coeff_of_identity();
                let rhs = x
                    .divided_difference(i as i64, i as i64 + 1)
                    .unwrap()
                    .act(&a)
                    .coeff_of_identity();
                assert_eq!(lhs, rhs, "w = {a}, x = {x}, i = {i}");
                if lhs != q(0) {
                    nonzero += 1;
                }
            }
        }
    }
    assert!(nonzero > 50, "too few nontrivial cases ({nonzero})");
}
