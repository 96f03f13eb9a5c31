//! The tableaux and covers that occur for the crossing functions.

use num_rational::Rational64;

use super::{hyper_psymbol_exact, BranchMap, Exponent, PSymbol};

fn symbol(line: &str) -> PSymbol {
    line.parse().expect("catalog tableau")
}

fn map(line: &str) -> BranchMap {
    line.parse().expect("catalog map")
}

/// `P_h` and the second-order operator: `0, 1/3` at each of `0, 1, inf`.
pub fn cardy() -> PSymbol {
    symbol("0: 0, 1/3 | 1: 0, 1/3 | inf: 0, 1/3; z")
}

/// `P_hv`, `P_h` and the third-order operator.
pub fn watts() -> PSymbol {
    symbol("0: 0, 1/3, 1 | 1: 0, 1/3, 1 | inf: 0, 1/3, 0; z")
}

/// The fifth-order operator annihilating `N_h`.
pub fn fifth_order() -> PSymbol {
    symbol("0: 0, 1/3, 0, 1, 2 | 1: 0, 1/3, 0, 1, 2 | inf: 0, 1/3, 0, 1, 2; z")
}

/// `P_surr` in the variable `-z^2`.
pub fn surround() -> PSymbol {
    symbol("0: 0, 1/2 | 1: 0, 1/3 | inf: 0, 1/6; -z^2")
}

/// `z = S(w)` on the equilateral triangle: vertices `A, B, C` go to `inf, 0, 1`,
/// each with multiplicity 3.
pub fn schwarz_map() -> BranchMap {
    map("[A] -> inf x3, [B] -> 0 x3, [C] -> 1 x3; w")
}

/// `-z^2` as a function of `z`.
pub fn quadratic_map() -> BranchMap {
    map("0 -> 0 x2, -i -> 1, i -> 1, inf -> inf x2; z")
}

/// `z = wp'(w)` on the isosceles triangle: vertices go to `inf, -i, i`.
pub fn surround_map() -> BranchMap {
    map("[A] -> inf x3, [B] -> -i x3, [C] -> i x3; w")
}

/// `z = -4w/(1-w)^2`.
pub fn whipple_map() -> BranchMap {
    map("0 -> 0, inf -> 0, 1 -> inf x2, -1 -> 1 x2; w")
}

/// `z = 4w(1-w)`.
pub fn whipple2_map() -> BranchMap {
    map("0 -> 0, 1 -> 0, 1/2 -> 1 x2, inf -> inf x2; w")
}

/// The symbol of `3F2(a-b-c+1, a/2, (a+1)/2; a-b+1, a-c+1 | z)`.
pub fn whipple_right() -> PSymbol {
    let (a, b, c) = (Exponent::a(), Exponent::b(), Exponent::c());
    let one = Exponent::int(1);
    let half = Rational64::new(1, 2);
    hyper_psymbol_exact(
        &[a - b - c + one, a * half, (a + one) * half],
        &[a - b + one, a - c + one],
    )
    .expect("three numerator and two denominator parameters")
}

/// `(1-w)^a 3F2(a, b, c; a-b+1, a-c+1 | w)`, as displayed.
pub fn whipple_left() -> PSymbol {
    symbol("0: 0, b-a, c-a | 1: a, a+1, 2(a-b-c+1) | inf: 0, b-a, c-a; w")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psymbol::{equals, Point};

    #[test]
    fn catalog_parses() {
        assert_eq!(cardy().order(), 2);
        assert_eq!(watts().order(), 3);
        assert_eq!(fifth_order().order(), 5);
        assert_eq!(surround().variable(), "-z^2");
        assert_eq!(schwarz_map().branch_points().len(), 3);
        assert_eq!(whipple2_map().branch_points()[2].preimage, Point::Finite(Rational64::new(1, 2)));
    }

    #[test]
    fn whipple_right_matches_display() {
        let shown = symbol("0: 0, b-a, c-a | 1: 0, 1, 1/2 | inf: a-b-c+1, a/2, (a+1)/2");
        assert!(equals(&whipple_right(), &shown));
    }

    #[test]
    fn fifth_order_contains_third_order_exponents() {
        for (small, big) in watts().columns().iter().zip(fifth_order().columns()) {
            assert_eq!(small.point, big.point);
            for e in &small.exponents {
                assert!(big.exponents.contains(e));
            }
        }
    }
}
