//! The regular-octagon genus-2 group with exact surd entries.
//!
//! The octagon with all interior angles pi/4 is bounded by eight geodesics at
//! apothem r with cosh r = 1 + sqrt2. Opposite sides are paired by
//! translations of length 2r through the center; conjugating the vertical
//! translation by rotations in steps of pi/4 gives side pairings whose
//! entries lie in Q(sqrt2)[s], s = sqrt(2 + 2*sqrt2) = sinh r.

use crate::surd::{Q2, Rat, Surd, SurdMatrix};
use num_rational::Ratio;

/// Octagon side-pairing translation in direction k*pi/4, exact.
///
/// sigma_k = cosh(r) I + sinh(r) * [[cos phi, -sin phi], [-sin phi, -cos phi]]
/// with phi = k*pi/4, cosh r = 1+sqrt2, sinh r = s.
pub fn octagon_pairing(k: usize) -> SurdMatrix {
    assert!(k < 4);
    let ch = Surd::from_q2(Q2::from_ints(1, 1)); // 1 + sqrt2
    let half = Ratio::new(1i128, 2);
    // cos(k pi/4), sin(k pi/4) for k = 0..3 as Q(sqrt2) scalars
    let (c, s): (Q2, Q2) = match k {
        0 => (Q2::one(), Q2::zero()),
        1 => (Q2::new(Rat::from_integer(0), half), Q2::new(Rat::from_integer(0), half)),
        2 => (Q2::zero(), Q2::one()),
        3 => (
            Q2::new(Rat::from_integer(0), -half),
            Q2::new(Rat::from_integer(0), half),
        ),
        _ => unreachable!(),
    };
    let sh_c = Surd::new(Q2::zero(), c); // s * cos(phi)
    let sh_s = Surd::new(Q2::zero(), s); // s * sin(phi)
    SurdMatrix::new(ch + sh_c, -sh_s, -sh_s, ch - sh_c)
}

/// A word over the octagon pairings: positive index k means sigma_k,
/// negative -(k+1) means sigma_k^{-1}.
pub fn eval_octagon_word(word: &[i32]) -> SurdMatrix {
    let mut m = SurdMatrix::identity();
    for &l in word {
        let g = if l >= 0 {
            octagon_pairing(l as usize)
        } else {
            octagon_pairing((-l - 1) as usize).inv_unimodular()
        };
        m = m * g;
    }
    m
}

/// Canonical generators (a1, b1, a2, b2) with [a1,b1][a2,b2] = +/-I, as words
/// over the octagon pairings. The octagon vertex relator is
/// sigma_0 sigma_1^{-1} sigma_2 sigma_3^{-1} sigma_0^{-1} sigma_1 sigma_2^{-1} sigma_3;
/// this tuple was found by exhaustive search over short pairing words
/// (see `dev_search_canonical_words`) and is verified exactly in
/// `tests::canonical_words_are_valid`.
pub const CANONICAL_WORDS: [&[i32]; 4] = [
    &[0],         // a1 = sigma_0
    &[3],         // b1 = sigma_3
    &[2, -2],     // a2 = sigma_2 sigma_1^{-1}
    &[0, 3, -2],  // b2 = sigma_0 sigma_3 sigma_1^{-1}
];

/// The four canonical generator matrices, exact.
pub fn canonical_generators() -> [SurdMatrix; 4] {
    [
        eval_octagon_word(CANONICAL_WORDS[0]),
        eval_octagon_word(CANONICAL_WORDS[1]),
        eval_octagon_word(CANONICAL_WORDS[2]),
        eval_octagon_word(CANONICAL_WORDS[3]),
    ]
}

/// Exact relator product [a1,b1][a2,b2].
pub fn canonical_relator() -> SurdMatrix {
    let [a1, b1, a2, b2] = canonical_generators();
    let comm = |x: SurdMatrix, y: SurdMatrix| x * y * x.inv_unimodular() * y.inv_unimodular();
    comm(a1, b1) * comm(a2, b2)
}
