//! Dense polynomials with exact rational coefficients.

use num_traits::Zero;

use crate::rat::{int, Rat};

/// Coefficients in increasing degree, no trailing zeros; the zero
/// polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Poly(Vec<Rat>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.0.iter().rev() {
            acc = acc * x + crate::rat::rat_to_f64(c);
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).cloned().unwrap_or_else(Rat::zero);
            let b = other.0.get(i).cloned().unwrap_or_else(Rat::zero);
            out.push(a + b);
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly::zero();
        }
        Poly(
            self.0[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * int(i as i64 + 1))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.0.len() + 1);
        out.push(Rat::zero());
        for (i, c) in self.0.iter().enumerate() {
            out.push(c / int(i as i64 + 1));
        }
        Poly::from_coeffs(out)
    }

    /// Exact definite integral over `[a, b]`.
    pub fn integral_over(&self, a: &Rat, b: &Rat) -> Rat {
        let anti = self.antiderivative();
        anti.eval(b) - anti.eval(a)
    }

    /// Substitution `x -> a x + b`.
    pub fn compose_affine(&self, a: &Rat, b: &Rat) -> Poly {
        // Horner in the substituted variable
        let mut acc = Poly::zero();
        let lin = Poly::from_coeffs(vec![b.clone(), a.clone()]);
        for c in self.0.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Translation `x -> x + c`.
    pub fn shift(&self, c: &Rat) -> Poly {
        self.compose_affine(&int(1), c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn arithmetic_and_calculus() {
        let p = Poly::from_coeffs(vec![int(1), int(0), int(3)]); // 1 + 3x^2
        let q = Poly::from_coeffs(vec![int(0), int(2)]); // 2x
        assert_eq!(p.eval(&int(2)), int(13));
        assert_eq!(p.mul(&q).eval(&int(2)), int(52));
        assert_eq!(p.derivative(), Poly::from_coeffs(vec![int(0), int(6)]));
        assert_eq!(
            q.antiderivative(),
            Poly::from_coeffs(vec![int(0), int(0), int(1)])
        );
        assert_eq!(p.integral_over(&int(0), &int(1)), int(2));
        assert_eq!(p.sub(&p), Poly::zero());
    }

    #[test]
    fn affine_substitution() {
        let p = Poly::from_coeffs(vec![int(0), int(1)]); // x
        assert_eq!(
            p.compose_affine(&int(2), &int(5)),
            Poly::from_coeffs(vec![int(5), int(2)])
        );
        let sq = Poly::from_coeffs(vec![int(0), int(0), int(1)]); // x^2
                                                                  // (x - 1)^2 = 1 - 2x + x^2
        assert_eq!(
            sq.compose_affine(&int(1), &rat(-1, 1)),
            Poly::from_coeffs(vec![int(1), int(-2), int(1)])
        );
        assert_eq!(sq.shift(&int(3)).eval(&int(0)), int(9));
    }
}
