//! Univariate polynomials over Q in the pencil variable, with rational root
//! extraction via the rational-root theorem.

use crate::rational::Rational;
use num::bigint::BigInt;
use num::{Integer, One, Zero};
use std::fmt;

/// Coefficients in ascending degree; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        QPoly::from_coeffs(vec![c])
    }

    /// The monomial c*v^k.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        QPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::from_coeffs((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::from_coeffs((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let p = a * b;
                    out[i + j] += &p;
                }
            }
        }
        QPoly::from_coeffs(out)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Exact division by (v - root); panics if the root is not a root.
    fn divide_out_root(&self, root: &Rational) -> QPoly {
        let n = self.coeffs.len();
        assert!(n >= 1);
        let mut out = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for k in (0..n).rev() {
            let c = &self.coeffs[k] + &(&carry * root);
            if k == 0 {
                assert!(c.is_zero(), "not a root");
            } else {
                out[k - 1] = c.clone();
                carry = c;
            }
        }
        QPoly::from_coeffs(out)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "v")?,
                (1, false) => write!(f, "{}v", mag)?,
                (_, true) => write!(f, "v^{}", k)?,
                (_, false) => write!(f, "{}v^{}", mag, k)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Rational roots with multiplicities. `complete` is true exactly when the
/// product of the returned linear factors (times the leading unit) equals the
/// input polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFactors {
    pub roots: Vec<(Rational, usize)>,
    pub complete: bool,
}

/// Divisor-enumeration cutoff for the rational-root search; integers whose
/// divisors would have to be listed beyond this bound abort the search with
/// `complete = false`.
pub const DEFAULT_DIVISOR_LIMIT: u64 = 1_000_000_000_000;

pub fn rational_linear_factors(p: &QPoly) -> LinearFactors {
    rational_linear_factors_with_limit(p, DEFAULT_DIVISOR_LIMIT)
}

pub fn rational_linear_factors_with_limit(p: &QPoly, limit: u64) -> LinearFactors {
    assert!(!p.is_zero(), "zero polynomial has no factorization");
    let mut roots: Vec<(Rational, usize)> = Vec::new();
    let mut cur = p.clone();

    // Roots at zero come from the trailing monomial gap.
    let zero_mult = cur
        .coeffs
        .iter()
        .take_while(|c| c.is_zero())
        .count()
        .min(cur.coeffs.len().saturating_sub(1));
    if zero_mult > 0 {
        roots.push((Rational::zero(), zero_mult));
        cur = QPoly::from_coeffs(cur.coeffs[zero_mult..].to_vec());
    }

    let mut complete = true;
    'outer: while cur.degree().unwrap_or(0) >= 1 {
        let prim = primitive_integer_coeffs(&cur);
        let c0 = prim.first().unwrap().magnitude().clone();
        let cl = prim.last().unwrap().magnitude().clone();
        let big_limit = num::BigUint::from(limit);
        if c0 > big_limit || cl > big_limit {
            complete = false;
            break;
        }
        let d0 = divisors(u64::try_from(&c0).unwrap());
        let dl = divisors(u64::try_from(&cl).unwrap());
        let mut candidates: Vec<Rational> = Vec::new();
        for num in &d0 {
            for den in &dl {
                if BigInt::from(*num).gcd(&BigInt::from(*den)).is_one() {
                    candidates.push(Rational::new(*num as i64, *den as i64));
                    candidates.push(Rational::new(-(*num as i64), *den as i64));
                }
            }
        }
        candidates.sort();
        candidates.dedup();
        for cand in candidates {
            if cur.eval(&cand).is_zero() {
                let mut mult = 0usize;
                while cur.degree().unwrap_or(0) >= 1 && cur.eval(&cand).is_zero() {
                    cur = cur.divide_out_root(&cand);
                    mult += 1;
                }
                roots.push((cand, mult));
                continue 'outer;
            }
        }
        break;
    }
    if cur.degree().unwrap_or(0) >= 1 {
        complete = false;
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    LinearFactors { roots, complete }
}

/// Clears denominators and content, preserving roots.
fn primitive_integer_coeffs(p: &QPoly) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.iter().map(|c| c / &g).collect()
    }
}

/// All positive divisors of n (n >= 1), ascending; divisors(0) = [1] by
/// convention so a zero coefficient never silently widens the search.
fn divisors(n: u64) -> Vec<u64> {
    if n == 0 {
        return vec![1];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}
