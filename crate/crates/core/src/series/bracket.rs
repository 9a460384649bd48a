//! Symbolic derivatives of `[m, n]_p = cos_p^m(x) sin_p^n(x)`.
//!
//! Exponents are affine in `p` and coefficients are integer polynomials in
//! `p`, so one expression covers every `p` at once. Differentiation uses
//! `d/dx [m, n]_p = -m [m-1, n+p-1]_p + n [m+p-1, n-1]_p`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::IntPolynomial;

/// Exponent `a + b p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Affine {
    pub a: i64,
    pub b: i64,
}

impl Affine {
    pub const fn new(a: i64, b: i64) -> Self {
        Affine { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn at(self, p: i64) -> i64 {
        self.a + self.b * p
    }

    pub fn as_poly(self) -> IntPolynomial {
        IntPolynomial::affine(self.a, self.b)
    }

    fn shift(self, da: i64, db: i64) -> Self {
        Affine::new(self.a + da, self.b + db)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ptxt = match self.b {
            0 => String::new(),
            1 => "p".to_string(),
            -1 => "-p".to_string(),
            b => format!("{b}p"),
        };
        match (self.b, self.a) {
            (0, a) => write!(f, "{a}"),
            (_, 0) => f.write_str(&ptxt),
            (_, a) if a > 0 => write!(f, "{ptxt}+{a}"),
            (_, a) => write!(f, "{ptxt}{a}"),
        }
    }
}

/// `coefficient(p) · [m_affine, n_affine]_p`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketTerm {
    pub coefficient: IntPolynomial,
    pub m_affine: Affine,
    pub n_affine: Affine,
}

/// Sum of bracket terms with like terms merged and zero terms dropped,
/// ordered by `(m_affine, n_affine)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BracketExpr {
    terms: BTreeMap<(Affine, Affine), IntPolynomial>,
}

impl BracketExpr {
    pub fn new(terms: impl IntoIterator<Item = BracketTerm>) -> Self {
        let mut e = BracketExpr::default();
        for t in terms {
            e.add_term(t.m_affine, t.n_affine, t.coefficient);
        }
        e
    }

    /// The single bracket `[m, n]_p` with coefficient one.
    pub fn monomial(m_affine: Affine, n_affine: Affine) -> Self {
        BracketExpr::new([BracketTerm {
            coefficient: IntPolynomial::one(),
            m_affine,
            n_affine,
        }])
    }

    /// `sin_p x = [0, 1]_p`
    pub fn sin() -> Self {
        Self::monomial(Affine::new(0, 0), Affine::new(1, 0))
    }

    fn add_term(&mut self, m: Affine, n: Affine, c: IntPolynomial) {
        if c.is_zero() {
            return;
        }
        let key = (m, n);
        let merged = match self.terms.remove(&key) {
            Some(prev) => &prev + &c,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(key, merged);
        }
    }

    pub fn terms(&self) -> Vec<BracketTerm> {
        self.terms
            .iter()
            .map(|(&(m, n), c)| BracketTerm {
                coefficient: c.clone(),
                m_affine: m,
                n_affine: n,
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `[m, n]_p`, zero if absent.
    pub fn coefficient(&self, m_affine: Affine, n_affine: Affine) -> IntPolynomial {
        self.terms
            .get(&(m_affine, n_affine))
            .cloned()
            .unwrap_or_else(IntPolynomial::zero)
    }

    pub fn differentiate(&self) -> BracketExpr {
        let mut out = BracketExpr::default();
        for (&(m, n), c) in &self.terms {
            // -m [m-1, n+p-1]
            out.add_term(m.shift(-1, 0), n.shift(-1, 1), -(c * &m.as_poly()));
            // n [m+p-1, n-1]
            out.add_term(m.shift(-1, 1), n.shift(-1, 0), c * &n.as_poly());
        }
        out
    }

    /// Collapse to concrete integer exponents at a fixed `p`.
    pub fn specialize(&self, p: i64) -> BTreeMap<(i64, i64), BigInt> {
        let pb = BigInt::from(p);
        let mut out: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
        for (&(m, n), c) in &self.terms {
            let v = c.eval_int(&pb);
            if v.is_zero() {
                continue;
            }
            *out.entry((m.at(p), n.at(p))).or_insert_with(BigInt::zero) += v;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Value at `x = 0` for a concrete integer `p`, using `cos_p 0 = 1`,
    /// `sin_p 0 = 0` and `0^0 = 1`: only terms whose `sin_p` exponent
    /// vanishes at this `p` survive.
    pub fn value_at_zero(&self, p: i64) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for ((_, n), v) in self.specialize(p) {
            match n {
                0 => total += v,
                n if n < 0 => {
                    return Err(Error::domain(format!(
                        "term with sin_p exponent {n} is singular at x = 0 for p = {p}"
                    )))
                }
                _ => {}
            }
        }
        Ok(total)
    }

    /// Value at `x = 0` treating `p` as a symbol: the polynomial sum of
    /// coefficients whose `sin_p` exponent is identically zero.
    pub fn symbolic_value_at_zero(&self) -> IntPolynomial {
        self.terms
            .iter()
            .filter(|((_, n), _)| n.is_zero())
            .fold(IntPolynomial::zero(), |acc, (_, c)| &acc + c)
    }
}

impl fmt::Display for BracketExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(m, n), c)| format!("({})[{m}, {n}]_p", c.display_with("p")))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `[sin_p, sin_p', ..., sin_p^{(count-1)}]` as bracket expressions.
pub fn sin_derivatives(count: usize) -> Vec<BracketExpr> {
    let mut out = Vec::with_capacity(count);
    let mut cur = BracketExpr::sin();
    for _ in 0..count {
        let next = cur.differentiate();
        out.push(cur);
        cur = next;
    }
    out
}

/// `(-1)^{n-1} (p-1)_{n-1}`, the coefficient of `[p-n, (n-1)(p-1)]_p` in the
/// `n`-th derivative of `sin_p`.
pub fn first_term_coefficient(n: usize) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(Error::argument("first_term_coefficient needs n >= 1"));
    }
    // (p-1)_{n-1} = (p-1)(p-2)...(p-n+1)
    let falling = (1..n as i64).fold(IntPolynomial::one(), |acc, j| &acc * &IntPolynomial::affine(-j, 1));
    Ok(if n % 2 == 1 { falling } else { -falling })
}

/// Key `([p-n], [(n-1)(p-1)])` of the leading term of the `n`-th derivative.
pub fn first_term_key(n: usize) -> (Affine, Affine) {
    let n = n as i64;
    (Affine::new(-n, 1), Affine::new(-(n - 1), n - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_derivatives() {
        let d = sin_derivatives(4);
        assert_eq!(d[1], BracketExpr::monomial(Affine::new(-1, 1), Affine::new(0, 0)));
        assert_eq!(d[2].len(), 1);
        assert_eq!(
            d[2].coefficient(Affine::new(-2, 1), Affine::new(-1, 1)),
            IntPolynomial::affine(1, -1)
        );
        assert_eq!(d[3].len(), 2);
        assert_eq!(
            d[3].coefficient(Affine::new(-3, 1), Affine::new(-2, 2)),
            IntPolynomial::from_i64s(&[2, -3, 1])
        );
        assert_eq!(
            d[3].coefficient(Affine::new(-3, 2), Affine::new(-2, 1)),
            IntPolynomial::from_i64s(&[-1, 2, -1])
        );
    }

    #[test]
    fn display_matches_notation() {
        let d = sin_derivatives(4);
        assert_eq!(d[1].to_string(), "(1)[p-1, 0]_p");
        assert_eq!(
            d[3].to_string(),
            "(p^2 - 3p + 2)[p-3, 2p-2]_p + (-p^2 + 2p - 1)[2p-3, p-2]_p"
        );
    }

    #[test]
    fn first_terms() {
        assert_eq!(first_term_coefficient(1).unwrap(), IntPolynomial::one());
        assert_eq!(first_term_coefficient(3).unwrap(), IntPolynomial::from_i64s(&[2, -3, 1]));
        // (p-1)(p-2)(p-3)(p-4)
        assert_eq!(
            first_term_coefficient(5).unwrap(),
            IntPolynomial::from_i64s(&[24, -50, 35, -10, 1])
        );
        assert!(first_term_coefficient(0).is_err());
    }

    #[test]
    fn first_term_lemma_against_engine() {
        let d = sin_derivatives(9);
        for n in 1..=8 {
            let (m, s) = first_term_key(n);
            assert_eq!(d[n].coefficient(m, s), first_term_coefficient(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn classical_four_cycle_at_p2() {
        let d = sin_derivatives(9);
        let expected = [
            ((0, 1), 1),
            ((1, 0), 1),
            ((0, 1), -1),
            ((1, 0), -1),
        ];
        for (k, e) in d.iter().enumerate() {
            let spec = e.specialize(2);
            let (key, sign) = expected[k % 4];
            assert_eq!(spec.len(), 1, "derivative {k}: {spec:?}");
            assert_eq!(spec[&key], BigInt::from(sign), "derivative {k}");
        }
    }

    #[test]
    fn zero_terms_are_dropped() {
        let e = BracketExpr::new([
            BracketTerm {
                coefficient: IntPolynomial::affine(1, 1),
                m_affine: Affine::new(0, 0),
                n_affine: Affine::new(1, 0),
            },
            BracketTerm {
                coefficient: IntPolynomial::affine(-1, -1),
                m_affine: Affine::new(0, 0),
                n_affine: Affine::new(1, 0),
            },
        ]);
        assert!(e.is_empty());
        assert!(BracketExpr::monomial(Affine::new(3, 0), Affine::new(0, 0))
            .differentiate()
            .len()
            == 1);
    }
}
