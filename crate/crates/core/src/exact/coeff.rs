use num_traits::Zero;

use super::poly::MultiPoly;
use super::rational::Rational;

/// Ring elements the Lie and group machinery can carry as coefficients.
///
/// Implemented by plain rationals (numeric evaluation) and by polynomials
/// (symbolic evaluation with indeterminate coordinates). `zero_like` and
/// `constant_like` let generic code produce values over the same variable
/// list as an existing coefficient.
pub trait Coefficient: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn constant_like(&self, c: Rational) -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, c: &Rational) -> Self;

    fn add_assign_scaled(&mut self, other: &Self, c: &Rational) {
        *self = self.plus(&other.scaled(c));
    }
}

impl Coefficient for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn constant_like(&self, c: Rational) -> Self {
        c
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &Rational) -> Self {
        self * c
    }
    fn add_assign_scaled(&mut self, other: &Self, c: &Rational) {
        *self += other * c;
    }
}

impl Coefficient for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.vars())
    }
    fn constant_like(&self, c: Rational) -> Self {
        MultiPoly::constant(self.vars(), c)
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn add_assign_scaled(&mut self, other: &Self, c: &Rational) {
        self.add_scaled(other, c);
    }
}
