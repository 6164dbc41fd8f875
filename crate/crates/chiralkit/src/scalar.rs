//! Complex scalars with exact rational parts, and the tolerance policy for
//! comparisons: exact whenever the data is rational, absolute otherwise.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rat::{format_rat, rat_to_f64, Rat};

/// Complex number with exact rational real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ComplexRat {
    pub re: Rat,
    pub im: Rat,
}

impl ComplexRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        ComplexRat { re, im }
    }

    pub fn zero() -> Self {
        ComplexRat {
            re: Rat::zero(),
            im: Rat::zero(),
        }
    }

    pub fn one() -> Self {
        ComplexRat {
            re: Rat::one(),
            im: Rat::zero(),
        }
    }

    pub fn i() -> Self {
        ComplexRat {
            re: Rat::zero(),
            im: Rat::one(),
        }
    }

    pub fn from_rat(r: Rat) -> Self {
        ComplexRat {
            re: r,
            im: Rat::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `(i/2)^k`, the weight of a `k`-fold contraction.
    pub fn i_over_two_pow(k: usize) -> Self {
        let mag = Rat::new(1.into(), num_bigint::BigInt::from(2).pow(k as u32));
        match k % 4 {
            0 => ComplexRat {
                re: mag,
                im: Rat::zero(),
            },
            1 => ComplexRat {
                re: Rat::zero(),
                im: mag,
            },
            2 => ComplexRat {
                re: -mag,
                im: Rat::zero(),
            },
            _ => ComplexRat {
                re: Rat::zero(),
                im: -mag,
            },
        }
    }

    pub fn abs_f64(&self) -> f64 {
        let re = rat_to_f64(&self.re);
        let im = rat_to_f64(&self.im);
        (re * re + im * im).sqrt()
    }
}

impl Add for ComplexRat {
    type Output = ComplexRat;
    fn add(self, rhs: ComplexRat) -> ComplexRat {
        ComplexRat {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for ComplexRat {
    type Output = ComplexRat;
    fn sub(self, rhs: ComplexRat) -> ComplexRat {
        ComplexRat {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for ComplexRat {
    type Output = ComplexRat;
    fn mul(self, rhs: ComplexRat) -> ComplexRat {
        ComplexRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for ComplexRat {
    type Output = ComplexRat;
    fn neg(self) -> ComplexRat {
        ComplexRat {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl fmt::Display for ComplexRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", format_rat(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{} i", format_rat(&self.im))
        } else {
            write!(f, "{} + {} i", format_rat(&self.re), format_rat(&self.im))
        }
    }
}

/// Comparison policy: `Exact` for rational data, `Abs` for numeric paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    Exact,
    Abs(f64),
}

impl Tolerance {
    pub fn eq_f64(&self, a: f64, b: f64) -> bool {
        match self {
            Tolerance::Exact => a == b,
            Tolerance::Abs(eps) => (a - b).abs() <= *eps,
        }
    }

    pub fn eq_complex(&self, a: &ComplexRat, b: &ComplexRat) -> bool {
        match self {
            Tolerance::Exact => a == b,
            Tolerance::Abs(_) => {
                let d = a.clone() - b.clone();
                self.eq_f64(d.abs_f64(), 0.0)
            }
        }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::Abs(1e-9)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn contraction_weights_cycle() {
        assert_eq!(ComplexRat::i_over_two_pow(0), ComplexRat::one());
        assert_eq!(
            ComplexRat::i_over_two_pow(1),
            ComplexRat::new(rat(0, 1), rat(1, 2))
        );
        assert_eq!(
            ComplexRat::i_over_two_pow(2),
            ComplexRat::new(rat(-1, 4), rat(0, 1))
        );
        assert_eq!(
            ComplexRat::i_over_two_pow(3),
            ComplexRat::new(rat(0, 1), rat(-1, 8))
        );
        assert_eq!(
            ComplexRat::i_over_two_pow(4),
            ComplexRat::new(rat(1, 16), rat(0, 1))
        );
    }

    #[test]
    fn arithmetic_and_conjugation() {
        let z = ComplexRat::new(rat(1, 2), rat(-1, 3));
        let w = ComplexRat::new(rat(2, 1), rat(1, 6));
        assert_eq!(
            z.clone() * w,
            ComplexRat::new(rat(1, 1) + rat(1, 18), rat(1, 12) - rat(2, 3))
        );
        assert_eq!(z.clone() + z.conj(), ComplexRat::from_rat(rat(1, 1)));
        assert_eq!(
            format!("{}", ComplexRat::new(rat(0, 1), rat(-1, 4))),
            "-1/4 i"
        );
    }
}
