//! Closed-form sum formulas for specific shapes, written out term by term.
//! Each function returns the right-hand side for weight `w` as a mixed combination.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::mixed::{Atom, MixedCombo};
use crate::shapes::SkewShape;
use crate::words::WordCombo;

fn z(w: &[i64]) -> Atom {
    Atom::Combo(WordCombo::word(w.iter().map(|&x| x as u32).collect::<Vec<_>>()))
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn c2(n: i64) -> i64 {
    n * (n - 1) / 2
}

struct Builder(MixedCombo);

impl Builder {
    fn new() -> Self {
        Builder(MixedCombo::zero())
    }

    fn t(mut self, c: BigRational, factors: &[&[i64]]) -> Self {
        self.0.push(c, factors.iter().map(|f| z(f)).collect());
        self
    }

    fn i(self, c: i64, factors: &[&[i64]]) -> Self {
        self.t(q(c, 1), factors)
    }
}

/// S_w of the square (2,2), w ≥ 5.
pub fn square_22(w: u32) -> MixedCombo {
    let w = w as i64;
    Builder::new()
        .i(-(w - 2), &[&[1, w - 1]])
        .i(w - 4, &[&[2, w - 2]])
        .i(2, &[&[3, w - 3]])
        .i(-2, &[&[3], &[w - 3]])
        .i(w - 2, &[&[2], &[w - 2]])
        .0
}

/// S_w of the hook (3,1,1), w ≥ 7.
pub fn hook_311(w: u32) -> MixedCombo {
    let w = w as i64;
    Builder::new()
        .i(c2(w - 2), &[&[w]])
        .i(-(w - 3), &[&[2], &[w - 2]])
        .i(-(w - 5), &[&[3], &[w - 3]])
        .i(1, &[&[4], &[w - 4]])
        .i(-(w - 3), &[&[1, w - 1]])
        .i(-1, &[&[2, w - 2]])
        .i(-1, &[&[3, w - 3]])
        .i(-1, &[&[4, w - 4]])
        .0
}

/// S_w of (3,3)/(1), w ≥ 6.
pub fn example_i(w: u32) -> MixedCombo {
    let w = w as i64;
    Builder::new()
        .i(c2(w - 2), &[&[2], &[w - 2]])
        .t(q(-5, 4), &[&[4], &[w - 4]])
        .i(1, &[&[2], &[2, w - 4]])
        .i(-1, &[&[2], &[1, w - 3]])
        .i(-c2(w - 2), &[&[1, w - 1]])
        .i(c2(w - 3), &[&[2, w - 2]])
        .i(w - 3, &[&[3, w - 3]])
        .i(w - 3, &[&[1, 1, w - 2]])
        .i(-(w - 5), &[&[1, 2, w - 3]])
        .i(-2, &[&[1, 3, w - 4]])
        .i(1, &[&[2, 1, w - 3]])
        .i(-1, &[&[2, 2, w - 4]])
        .0
}

/// S_w of (2,2,2)/(1), w ≥ 6.
pub fn example_ii(w: u32) -> MixedCombo {
    let w = w as i64;
    Builder::new()
        .i(w - 2, &[&[2], &[w - 2]])
        .i(w - 5, &[&[3], &[w - 3]])
        .t(q(-5, 4), &[&[4], &[w - 4]])
        .i(-1, &[&[2], &[1, w - 3]])
        .i(1, &[&[2], &[2, w - 4]])
        .i(2 - w, &[&[1, w - 1]])
        .i(w - 4, &[&[2, w - 2]])
        .i(2, &[&[3, w - 3]])
        .i(w - 3, &[&[1, 1, w - 2]])
        .i(-(w - 5), &[&[1, 2, w - 3]])
        .i(-2, &[&[1, 3, w - 4]])
        .i(1, &[&[2, 1, w - 3]])
        .i(-1, &[&[2, 2, w - 4]])
        .0
}

/// The stair coefficients (w−8)(w−1)/2 for r = n = 2 and (w−9)(w−8)(w−1)/6 for r = 1, n = 3.
pub fn stair_examples(w: u32) -> (BigRational, BigRational) {
    let w = w as i64;
    (q((w - 8) * (w - 1), 2), q((w - 9) * (w - 8) * (w - 1), 6))
}

pub fn square_shape() -> SkewShape {
    SkewShape::from_parts(&[2, 2], &[]).unwrap()
}

pub fn example_i_shape() -> SkewShape {
    SkewShape::from_parts(&[3, 3], &[1]).unwrap()
}

pub fn example_ii_shape() -> SkewShape {
    SkewShape::from_parts(&[2, 2, 2], &[1]).unwrap()
}

/// The four-row shape (2,2,2,2)/(1,1) and the shapes, with coefficients, of its S_w relation.
pub fn four_row_relation() -> (SkewShape, Vec<(SkewShape, i64)>) {
    let base = SkewShape::from_parts(&[2, 2, 2, 2], &[1, 1]).unwrap();
    let terms = vec![
        (SkewShape::from_parts(&[3, 3, 3, 3], &[2, 2, 1]).unwrap(), 2),
        (SkewShape::from_parts(&[2, 2, 2, 2], &[1]).unwrap(), -1),
        (SkewShape::from_parts(&[2, 2, 2, 2, 2], &[1, 1, 1]).unwrap(), -4),
    ];
    (base, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{one_corner_sum, sw_relation_terms};
    use crate::numerics::eval_combo;

    #[test]
    fn displays_match_one_corner_sums() {
        for w in 6..=7 {
            for (shape, disp) in
                [(square_shape(), square_22(w)), (example_i_shape(), example_i(w)), (example_ii_shape(), example_ii(w))]
            {
                let a = eval_combo(&one_corner_sum(&shape, w).unwrap(), 1e-10).unwrap();
                let b = disp.eval(1e-10).unwrap();
                assert!(a.agrees(&b, 1e-9), "{shape} w={w}: {a:?} {b:?}");
            }
        }
    }

    #[test]
    fn four_row_terms() {
        let (base, expected) = four_row_relation();
        let mut got = sw_relation_terms(&base).unwrap();
        let mut expected = expected;
        got.sort_by_key(|t| t.1);
        expected.sort_by_key(|t| t.1);
        assert_eq!(got, expected);
    }
}
