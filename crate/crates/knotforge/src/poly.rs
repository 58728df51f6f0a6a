//! Sparse Laurent polynomials with exact integer coefficients.
//!
//! Exponents are stored *doubled*: a stored exponent `2e` stands for the
//! monomial `v^e`. This keeps half-integer powers (which occur for the
//! Jones polynomial of even-component links when written in `t`) exact
//! without rationals. All arithmetic is over `BigInt`, so state sums never
//! overflow.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::diagram::DiagramError;

/// Variable tag carried by a polynomial. Mixing variables in arithmetic is
/// a programming error and panics in debug builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    /// Kauffman bracket variable.
    A,
    /// Jones variable, `q = t^(1/2)`.
    Q,
    /// Alexander variable.
    T,
}

impl Var {
    pub fn as_str(self) -> &'static str {
        match self {
            Var::A => "A",
            Var::Q => "q",
            Var::T => "t",
        }
    }

    pub fn from_str_tag(s: &str) -> Option<Var> {
        match s {
            "A" => Some(Var::A),
            "q" => Some(Var::Q),
            "t" => Some(Var::T),
            _ => None,
        }
    }
}

/// Sparse exact Laurent polynomial in one variable.
///
/// Invariant: no zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    var: Var,
    /// doubled exponent -> coefficient
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero(var: Var) -> Self {
        LaurentPoly { var, terms: BTreeMap::new() }
    }

    pub fn one(var: Var) -> Self {
        Self::monomial(var, 0, BigInt::one())
    }

    /// Single term `coeff * v^(doubled_exp / 2)`.
    pub fn monomial(var: Var, doubled_exp: i64, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(doubled_exp, coeff);
        }
        LaurentPoly { var, terms }
    }

    /// Build from integer powers of the variable (doubles them internally).
    pub fn from_int_powers(var: Var, powers: &[(i64, i64)]) -> Self {
        let mut p = Self::zero(var);
        for &(e, c) in powers {
            p.add_term(2 * e, BigInt::from(c));
        }
        p
    }

    /// Build from doubled exponents directly.
    pub fn from_doubled(var: Var, terms: &[(i64, i64)]) -> Self {
        let mut p = Self::zero(var);
        for &(e, c) in terms {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterate `(doubled_exp, coeff)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, doubled_exp: i64) -> BigInt {
        self.terms.get(&doubled_exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn min_doubled_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_doubled_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Highest minus lowest doubled exponent; 0 for constants and zero.
    pub fn doubled_span(&self) -> i64 {
        match (self.min_doubled_exp(), self.max_doubled_exp()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    pub fn add_term(&mut self, doubled_exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(doubled_exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&doubled_exp);
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        debug_assert_eq!(self.var, other.var);
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        debug_assert_eq!(self.var, other.var);
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        let mut out = Self::zero(self.var);
        for (e, c) in self.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        debug_assert_eq!(self.var, other.var);
        let mut out = Self::zero(self.var);
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Multiply in place by `coeff * v^(doubled_exp / 2)`.
    pub fn mul_monomial(&mut self, doubled_exp: i64, coeff: &BigInt) {
        if coeff.is_zero() {
            self.terms.clear();
            return;
        }
        let old = std::mem::take(&mut self.terms);
        for (e, c) in old {
            self.terms.insert(e + doubled_exp, c * coeff);
        }
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut out = Self::one(self.var);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Substitute `v -> v^(-1)`.
    pub fn invert_var(&self) -> LaurentPoly {
        let mut out = Self::zero(self.var);
        for (e, c) in self.terms() {
            out.add_term(-e, c.clone());
        }
        out
    }

    /// Exact division; `None` when `other` does not divide `self` exactly
    /// (including division by zero).
    pub fn div_exact(&self, other: &LaurentPoly) -> Option<LaurentPoly> {
        debug_assert_eq!(self.var, other.var);
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.var));
        }
        // Long division from the top; Laurent shifts are units so only the
        // coefficient arithmetic has to divide exactly.
        let mut rem = self.clone();
        let mut quot = Self::zero(self.var);
        let (dexp, dcoeff) = {
            let e = other.max_doubled_exp().unwrap();
            (e, other.coeff(e))
        };
        while !rem.is_zero() {
            let e = rem.max_doubled_exp().unwrap();
            let c = rem.coeff(e);
            let (q, r) = num_integer_div_rem(&c, &dcoeff);
            if !r.is_zero() {
                return None;
            }
            let qexp = e - dexp;
            quot.add_term(qexp, q.clone());
            let mut t = other.clone();
            t.mul_monomial(qexp, &q);
            rem = rem.sub(&t);
            if let Some(new_max) = rem.max_doubled_exp() {
                if new_max >= e {
                    return None; // no progress; not divisible
                }
            }
        }
        Some(quot)
    }

    /// Evaluate at an integer point. Requires every stored exponent to be
    /// even (integral powers).
    pub fn eval_int(&self, x: i64) -> Result<BigInt, DiagramError> {
        let mut acc = BigInt::zero();
        let big = BigInt::from(x);
        for (e, c) in self.terms() {
            if e % 2 != 0 {
                return Err(DiagramError::syntax(
                    "cannot evaluate half-integer power at an integer point",
                ));
            }
            let p = e / 2;
            if p < 0 && (x == 0) {
                return Err(DiagramError::syntax("evaluation at 0 with negative power"));
            }
            let term = if p >= 0 {
                c * big.pow(p as u32)
            } else {
                // only +-1 can be inverted exactly
                let inv = big.pow((-p) as u32);
                if inv.is_one() || inv == BigInt::from(-1) {
                    c * inv
                } else {
                    return Err(DiagramError::syntax(
                        "negative power at non-unit integer point",
                    ));
                }
            };
            acc += term;
        }
        Ok(acc)
    }

    /// Reinterpret a bracket polynomial in `A` as one in `q` via
    /// `q = A^(-2)`: the stored exponent `s` (an `A`-power `s/2`) becomes
    /// the `q`-power `-s/4`, i.e. stored `q` exponent `-s/2`.
    pub fn bracket_to_q(&self) -> LaurentPoly {
        debug_assert_eq!(self.var, Var::A);
        let mut out = Self::zero(Var::Q);
        for (e, c) in self.terms() {
            debug_assert!(e % 2 == 0, "bracket polynomials have integral A-powers");
            out.add_term(-e / 2, c.clone());
        }
        out
    }

    /// JSON value per the wire schema:
    /// `{"var":"q","terms":[[doubled_exp, coeff], ...]}` sorted by exponent.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(e, c)| {
                let n = serde_json::Number::from_string_unchecked(c.to_string());
                json!([e, Value::Number(n)])
            })
            .collect();
        json!({ "var": self.var.as_str(), "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<LaurentPoly, DiagramError> {
        let obj = v.as_object().ok_or_else(|| DiagramError::syntax("polynomial: expected object"))?;
        let var = obj
            .get("var")
            .and_then(|v| v.as_str())
            .and_then(Var::from_str_tag)
            .ok_or_else(|| DiagramError::syntax("polynomial: bad or missing var tag"))?;
        let terms = obj
            .get("terms")
            .and_then(|v| v.as_array())
            .ok_or_else(|| DiagramError::syntax("polynomial: missing terms"))?;
        let mut p = LaurentPoly::zero(var);
        for t in terms {
            let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                DiagramError::syntax("polynomial: term must be [exp, coeff]")
            })?;
            let e = pair[0]
                .as_i64()
                .ok_or_else(|| DiagramError::syntax("polynomial: bad exponent"))?;
            let c = match &pair[1] {
                Value::Number(n) => n
                    .to_string()
                    .parse::<BigInt>()
                    .map_err(|_| DiagramError::syntax("polynomial: bad coefficient"))?,
                _ => return Err(DiagramError::syntax("polynomial: bad coefficient")),
            };
            p.add_term(e, c);
        }
        Ok(p)
    }
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let q = a / b;
    let r = a - &q * b;
    (q, r)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest power first reads better
        for (&e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !abs.is_one() || e == 0;
            if show_coeff {
                write!(f, "{}", abs)?;
            }
            if e != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if e % 2 == 0 {
                    let p = e / 2;
                    if p == 1 {
                        write!(f, "{}", self.var.as_str())?;
                    } else {
                        write!(f, "{}^{}", self.var.as_str(), p)?;
                    }
                } else {
                    write!(f, "{}^({}/2)", self.var.as_str(), e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(var: Var, terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_powers(var, terms)
    }

    #[test]
    fn add_cancels_to_zero() {
        let a = p(Var::T, &[(1, 1), (0, -1)]);
        let b = p(Var::T, &[(1, -1), (0, 1)]);
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn mul_matches_hand_expansion() {
        // (t - 1)(t + 1) = t^2 - 1
        let a = p(Var::T, &[(1, 1), (0, -1)]);
        let b = p(Var::T, &[(1, 1), (0, 1)]);
        assert_eq!(a.mul(&b), p(Var::T, &[(2, 1), (0, -1)]));
    }

    #[test]
    fn div_exact_roundtrip() {
        let a = p(Var::T, &[(2, 3), (0, -1), (-1, 4)]);
        let b = p(Var::T, &[(1, 2), (0, 1), (-2, -5)]);
        let ab = a.mul(&b);
        assert_eq!(ab.div_exact(&b).unwrap(), a);
        assert_eq!(ab.div_exact(&a).unwrap(), b);
    }

    #[test]
    fn div_inexact_is_none() {
        let a = p(Var::T, &[(1, 1), (0, 1)]);
        let b = p(Var::T, &[(0, 2)]);
        assert!(a.div_exact(&b).is_none());
    }

    #[test]
    fn eval_at_minus_one() {
        // t - 1 + t^-1 at t = -1 -> -3
        let a = p(Var::T, &[(1, 1), (0, -1), (-1, 1)]);
        assert_eq!(a.eval_int(-1).unwrap(), BigInt::from(-3));
    }

    #[test]
    fn bracket_to_q_maps_delta() {
        // -A^2 - A^-2  ->  -q^-1 - q
        let d = p(Var::A, &[(2, -1), (-2, -1)]);
        assert_eq!(d.bracket_to_q(), p(Var::Q, &[(-1, -1), (1, -1)]));
    }

    #[test]
    fn json_roundtrip_preserves_terms() {
        let a = LaurentPoly::from_doubled(Var::Q, &[(-3, 2), (0, -7), (5, 1)]);
        let v = a.to_json();
        assert_eq!(LaurentPoly::from_json(&v).unwrap(), a);
        // terms are sorted ascending by exponent in the JSON
        let terms = v["terms"].as_array().unwrap();
        let exps: Vec<i64> = terms.iter().map(|t| t[0].as_i64().unwrap()).collect();
        assert_eq!(exps, vec![-3, 0, 5]);
    }

    #[test]
    fn display_reads_naturally() {
        let a = p(Var::T, &[(1, 1), (0, -1), (-1, 1)]);
        assert_eq!(a.to_string(), "t - 1 + t^-1");
    }
}
