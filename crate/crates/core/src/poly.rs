//! Sparse polynomials over the six weight symbols.
//!
//! A [`Polynomial`] is itself a [`Scalar`], so the matching engine can
//! accumulate weighted dimer sums with the same code path it uses for
//! plain counts.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use crate::graph::WeightSymbol;
use crate::Scalar;

/// Exponent vector over `a, b, c, x, y, z`. Ordered lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [u32; 6]);

impl Monomial {
    pub const CONSTANT: Monomial = Monomial([0; 6]);

    pub fn of(symbol: WeightSymbol) -> Monomial {
        let mut exps = [0; 6];
        if let Some(i) = symbol.index() {
            exps[i] = 1;
        }
        Monomial(exps)
    }

    pub fn exponent(&self, symbol: WeightSymbol) -> u32 {
        symbol.index().map_or(0, |i| self.0[i])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0 == [0; 6]
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    // Multiplying monomials adds exponents.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Monomial) -> Monomial {
        let mut exps = self.0;
        for (a, b) in exps.iter_mut().zip(rhs.0) {
            *a += b;
        }
        Monomial(exps)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, &e) in WeightSymbol::VARIABLES.iter().zip(&self.0) {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{s}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Finite map from monomials to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> Polynomial<C> {
    pub fn constant(c: C) -> Self {
        Self::monomial(Monomial::CONSTANT, c)
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    /// The polynomial consisting of one weight symbol (`1` for `Unit`).
    pub fn symbol(s: WeightSymbol) -> Self {
        Self::monomial(Monomial::of(s), C::one())
    }

    /// Builds from `(monomial, coefficient)` pairs, combining duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(terms: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&m) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Repeated-squaring power; `p^0 = 1`.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base.clone();
            }
            k >>= 1;
            if k > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// Substitutes a value for every symbol.
    pub fn eval<F: Fn(WeightSymbol) -> C>(&self, value: F) -> C {
        let vals: Vec<C> = WeightSymbol::VARIABLES.iter().map(|&s| value(s)).collect();
        self.terms.iter().fold(C::zero(), |acc, (m, c)| {
            let mut term = c.clone();
            for (v, &e) in vals.iter().zip(&m.0) {
                term = term * num_traits::pow(v.clone(), e as usize);
            }
            acc + term
        })
    }

    /// Value with every symbol set to one: the sum of coefficients.
    pub fn eval_at_one(&self) -> C {
        self.terms
            .values()
            .fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn map_coefficients<D: Scalar, F: Fn(&C) -> D>(&self, f: F) -> Polynomial<D> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }
}

impl<C: Scalar> Zero for Polynomial<C> {
    fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Scalar> One for Polynomial<C> {
    fn one() -> Self {
        Polynomial::constant(C::one())
    }
}

impl<C: Scalar> Add for Polynomial<C> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        if self.terms.len() < rhs.terms.len() {
            return rhs + self;
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<C: Scalar> Mul for Polynomial<C> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(*ma * *mb, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Scalar + PartialEq + fmt::Display> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.is_constant() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::WeightPolynomial;
    use num_bigint::BigUint;
    use proptest::prelude::*;
    use WeightSymbol::*;

    fn sym(s: WeightSymbol) -> WeightPolynomial {
        WeightPolynomial::symbol(s)
    }

    fn k4_weight() -> WeightPolynomial {
        sym(A) * sym(X) + sym(B) * sym(Y) + sym(C) * sym(Z)
    }

    /// Naive double loop over a term list, independent of `Mul` and `pow`.
    fn naive_square(terms: &[(Monomial, u64)]) -> BTreeMap<Monomial, u64> {
        let mut out = BTreeMap::new();
        for (ma, ca) in terms {
            for (mb, cb) in terms {
                *out.entry(*ma * *mb).or_insert(0) += ca * cb;
            }
        }
        out
    }

    #[test]
    fn identity_power() {
        assert_eq!(k4_weight().pow(1), k4_weight());
        assert_eq!(k4_weight().pow(0), WeightPolynomial::one());
    }

    #[test]
    fn square_matches_hand_expansion() {
        let terms = [
            (Monomial::of(A) * Monomial::of(X), 1),
            (Monomial::of(B) * Monomial::of(Y), 1),
            (Monomial::of(C) * Monomial::of(Z), 1),
        ];
        let expected = naive_square(&terms);
        let got = k4_weight().pow(2);
        assert_eq!(got.term_count(), 6);
        for (m, c) in &expected {
            assert_eq!(got.coefficient(m), BigUint::from(*c));
        }
        // a^2 x^2 and 2 a b x y by hand.
        assert_eq!(got.coefficient(&Monomial([2, 0, 0, 2, 0, 0])), 1u32.into());
        assert_eq!(got.coefficient(&Monomial([1, 1, 0, 1, 1, 0])), 2u32.into());
    }

    #[test]
    fn zero_annihilates() {
        assert!((k4_weight() * WeightPolynomial::zero()).is_zero());
        assert!((WeightPolynomial::zero() * k4_weight()).is_zero());
    }

    #[test]
    fn unit_symbol_is_one() {
        assert_eq!(sym(Unit), WeightPolynomial::one());
    }

    #[test]
    fn display() {
        let p = sym(X).pow(2) * WeightPolynomial::constant(32u32.into()) + WeightPolynomial::one();
        assert_eq!(p.to_string(), "1 + 32*x^2");
    }

    fn arb_poly() -> impl Strategy<Value = WeightPolynomial> {
        prop::collection::vec((prop::array::uniform6(0u32..3), 0u32..5), 0..5).prop_map(|ts| {
            WeightPolynomial::from_terms(
                ts.into_iter().map(|(e, c)| (Monomial(e), BigUint::from(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_laws(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(p.clone() + q.clone(), q.clone() + p.clone());
            prop_assert_eq!(p.clone() * q.clone(), q.clone() * p.clone());
            prop_assert_eq!(
                p.clone() * (q.clone() * r.clone()),
                (p.clone() * q.clone()) * r.clone()
            );
            prop_assert_eq!(
                p.clone() * (q.clone() + r.clone()),
                p.clone() * q.clone() + p * r
            );
        }

        #[test]
        fn eval_at_one_is_a_homomorphism(p in arb_poly(), q in arb_poly()) {
            prop_assert_eq!(
                (p.clone() * q.clone()).eval_at_one(),
                p.eval_at_one() * q.eval_at_one()
            );
        }

        #[test]
        fn pow_matches_repeated_product(p in arb_poly(), k in 0u64..4) {
            let mut acc = WeightPolynomial::one();
            for _ in 0..k {
                acc = acc * p.clone();
            }
            prop_assert_eq!(p.pow(k), acc);
        }
    }
}
