//! Dense univariate polynomials over a finite field.

use std::fmt;

use crate::arith::prime_divisors;
use crate::error::{Error, Result};
use crate::gf::{same_field, Elem, FieldElement, FieldRef};
use crate::syntax;

/// A polynomial `c_0 + c_1 T + ... + c_k T^k`, stored constant term first
/// with no trailing zeros. The zero polynomial has no coefficients.
#[derive(Clone)]
pub struct Polynomial {
    field: FieldRef,
    coeffs: Vec<Elem>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl Polynomial {
    pub fn new(field: FieldRef, mut coeffs: Vec<Elem>) -> Polynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn zero(field: &FieldRef) -> Polynomial {
        Polynomial {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &FieldRef) -> Polynomial {
        Polynomial::constant(field, field.one())
    }

    pub fn constant(field: &FieldRef, c: Elem) -> Polynomial {
        Polynomial::new(field.clone(), vec![c])
    }

    /// `c·T^k`.
    pub fn monomial(field: &FieldRef, c: Elem, k: usize) -> Polynomial {
        let mut coeffs = vec![Elem::ZERO; k + 1];
        coeffs[k] = c;
        Polynomial::new(field.clone(), coeffs)
    }

    /// The variable `T`.
    pub fn var(field: &FieldRef) -> Polynomial {
        Polynomial::monomial(field, field.one(), 1)
    }

    /// Builds from small integers, constant term first.
    pub fn from_ints(field: &FieldRef, coeffs: &[i64]) -> Polynomial {
        Polynomial::new(field.clone(), coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    /// Coefficient of `T^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Polynomial) -> Polynomial {
        let k = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| k.add(self.coeff(i), other.coeff(i))).collect();
        Polynomial::new(k.clone(), coeffs)
    }

    pub(crate) fn sub_unchecked(&self, other: &Polynomial) -> Polynomial {
        let k = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| k.sub(self.coeff(i), other.coeff(i))).collect();
        Polynomial::new(k.clone(), coeffs)
    }

    pub(crate) fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.field);
        }
        let k = &self.field;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(a, b));
            }
        }
        Polynomial::new(k.clone(), out)
    }

    pub fn neg(&self) -> Polynomial {
        let k = &self.field;
        Polynomial {
            field: k.clone(),
            coeffs: self.coeffs.iter().map(|&c| k.neg(c)).collect(),
        }
    }

    pub fn scale(&self, c: Elem) -> Polynomial {
        let k = &self.field;
        Polynomial::new(k.clone(), self.coeffs.iter().map(|&a| k.mul(a, c)).collect())
    }

    /// Multiplies by `T^k`.
    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Elem::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn pow(&self, mut e: u64) -> Polynomial {
        let mut acc = Polynomial::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// `(quotient, remainder)` with `deg remainder < deg divisor`.
    pub fn divrem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let k = &self.field;
        let lead_inv = k.inv(divisor.leading_coefficient())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Polynomial::zero(k), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = k.mul(rem[i + dd], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = k.sub(rem[i + j], k.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Polynomial::new(k.clone(), quot), Polynomial::new(k.clone(), rem)))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Scales to leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.field.inv(self.leading_coefficient()) {
            Ok(inv) => self.scale(inv),
            Err(_) => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let k = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(k.zero(), |acc, &c| k.add(k.mul(acc, x), c))
    }

    pub fn eval_element(&self, x: &FieldElement) -> Result<FieldElement> {
        if !same_field(&self.field, x.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldElement::new(self.field.clone(), self.eval(x.value())))
    }

    pub fn derivative(&self) -> Polynomial {
        let k = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| k.mul(k.from_int((i as u64 % k.characteristic()) as i64), c))
            .collect();
        Polynomial::new(k.clone(), coeffs)
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Polynomial) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.field).rem(modulus)?;
        let mut base = self.rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base).rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// No repeated roots over the algebraic closure.
    pub fn is_squarefree(&self) -> Result<bool> {
        let deg = self
            .degree()
            .ok_or_else(|| Error::InvalidArgument("squarefree test of the zero polynomial".into()))?;
        if deg == 0 {
            return Ok(true);
        }
        let d = self.derivative();
        if d.is_zero() {
            // an ℓ-th power of a lower-degree polynomial
            return Ok(false);
        }
        Ok(self.gcd(&d)?.degree() == Some(0))
    }

    /// Rabin's test: `T^{q^n} ≡ T (mod f)` and `gcd(T^{q^{n/r}} - T, f) = 1`
    /// for every prime `r | n`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => {
                return Err(Error::InvalidArgument(
                    "irreducibility test needs degree >= 1".into(),
                ))
            }
        };
        let f = self.monic();
        let q = self.field.order();
        let t = Polynomial::var(&self.field);
        // frob[i] = T^{q^i} mod f
        let mut frob = Vec::with_capacity(n + 1);
        frob.push(t.rem(&f)?);
        for i in 0..n {
            let next = frob[i].pow_mod(q, &f)?;
            frob.push(next);
        }
        if frob[n] != t.rem(&f)? {
            return Ok(false);
        }
        for r in prime_divisors(n as u64) {
            let h = frob[n / r as usize].sub_unchecked(&t);
            if h.gcd(&f)?.degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every `h` with `h^m = self`.
    ///
    /// Writing `m = ℓ^s·m'` with `ℓ ∤ m'`, the `ℓ`-part is peeled off by inverse
    /// Frobenius on the coefficients (possible iff every occurring exponent is
    /// divisible by `ℓ`), and the `m'`-th root is then fixed coefficient by
    /// coefficient from the top. The answer is closed under multiplication by
    /// `μ_{m'}(F_q)`. Sorted by coefficient codes.
    pub fn mth_roots(&self, m: u64) -> Vec<Polynomial> {
        assert!(m >= 1, "root index must be positive");
        if self.is_zero() {
            return vec![self.clone()];
        }
        let k = &self.field;
        let ell = k.characteristic();
        let mut g = self.clone();
        let mut m_prime = m;
        while m_prime % ell == 0 {
            m_prime /= ell;
            if g.coeffs.iter().enumerate().any(|(i, c)| !c.is_zero() && i as u64 % ell != 0) {
                return Vec::new();
            }
            let coeffs = g
                .coeffs
                .iter()
                .step_by(ell as usize)
                .map(|&c| k.frobenius_inv(c))
                .collect();
            g = Polynomial::new(k.clone(), coeffs);
        }
        if m_prime == 1 {
            return vec![g];
        }
        let deg = g.degree().unwrap();
        if deg as u64 % m_prime != 0 {
            return Vec::new();
        }
        let d = deg / m_prime as usize;
        let Some(&c0) = k.nth_roots(g.leading_coefficient(), m_prime).first() else {
            return Vec::new();
        };
        // coefficient of T^{m'd-j} in h^{m'} is m'·c0^{m'-1}·h_{d-j} + (terms in h_{d-1..d-j+1})
        let denom = k.mul(k.from_int((m_prime % ell) as i64), k.pow(c0, m_prime - 1));
        let denom_inv = k.inv(denom).expect("m' is a unit and c0 is nonzero");
        let mut h = vec![Elem::ZERO; d + 1];
        h[d] = c0;
        for j in 1..=d {
            let partial = Polynomial::new(k.clone(), h.clone()).pow(m_prime);
            let target = m_prime as usize * d - j;
            let diff = k.sub(g.coeff(target), partial.coeff(target));
            h[d - j] = k.mul(diff, denom_inv);
        }
        let h = Polynomial::new(k.clone(), h);
        if h.pow(m_prime) != g {
            return Vec::new();
        }
        let mut roots: Vec<Polynomial> = k
            .nth_roots(k.one(), m_prime)
            .into_iter()
            .map(|w| h.scale(w))
            .collect();
        roots.sort_by(|a, b| a.coeffs.cmp(&b.coeffs));
        roots
    }

    /// Formats with the given variable name, highest degree first,
    /// e.g. `x^3+2*x+1`.
    pub fn format_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let k = &self.field;
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            terms.push(syntax::format_term(k, c, &[(var, i as u64)]));
        }
        terms.join("+")
    }

    /// Parses `c_k*T^k + ... + c_0`; the variable may be written `T` or `x`.
    pub fn parse(field: &FieldRef, s: &str) -> Result<Polynomial> {
        Polynomial::parse_vars(field, s, &["T", "x"])
    }

    /// Parses with an explicit set of accepted (interchangeable) variable names.
    pub fn parse_vars(field: &FieldRef, s: &str, vars: &[&str]) -> Result<Polynomial> {
        let terms = syntax::parse_terms(field, s, &[vars])?;
        let mut acc = Polynomial::zero(field);
        for t in terms {
            let e: u64 = t.exponents.iter().sum();
            acc = acc.add_unchecked(&Polynomial::monomial(field, t.coeff, e as usize));
        }
        Ok(acc)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("x"))
    }
}

/// All `h` with `h^m = g`; empty when `g` is not a perfect `m`-th power.
pub fn poly_mth_roots(g: &Polynomial, m: u64) -> Vec<Polynomial> {
    g.mth_roots(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn f5() -> FieldRef {
        make_field(5, 1).unwrap()
    }

    fn p(k: &FieldRef, c: &[i64]) -> Polynomial {
        Polynomial::from_ints(k, c)
    }

    #[test]
    fn gcd_is_monic() {
        let k = f5();
        let g = p(&k, &[-1, 0, 1]).gcd(&p(&k, &[-1, 1])).unwrap();
        assert_eq!(g, p(&k, &[4, 1]));
        let g = p(&k, &[-2, 0, 2]).gcd(&p(&k, &[3, 2])).unwrap();
        assert_eq!(g.leading_coefficient(), k.one());
    }

    #[test]
    fn evaluation_and_derivative() {
        let k = f5();
        assert_eq!(p(&k, &[1, 1, 0, 1]).eval(Elem(2)), Elem(1));
        assert!(p(&k, &[1, 0, 0, 0, 0, 1]).derivative().is_zero());
        assert_eq!(p(&k, &[1, 1, 0, 1]).derivative(), p(&k, &[1, 0, 3]));
    }

    #[test]
    fn divrem_reconstructs() {
        let k = f5();
        let f = p(&k, &[3, 0, 2, 4, 1, 1]);
        let d = p(&k, &[1, 2, 3]);
        let (q, r) = f.divrem(&d).unwrap();
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(q.mul(&d).unwrap().add(&r).unwrap(), f);
        assert_eq!(f.divrem(&Polynomial::zero(&k)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn squarefree_examples() {
        let k = f5();
        assert!(p(&k, &[1, 1, 0, 1]).is_squarefree().unwrap());
        assert!(!p(&k, &[1, 2, 1]).is_squarefree().unwrap());
        assert!(!p(&k, &[1, 0, 0, 0, 0, 1]).is_squarefree().unwrap());
        assert!(Polynomial::zero(&k).is_squarefree().is_err());
    }

    #[test]
    fn irreducible_examples() {
        let f3 = make_field(3, 1).unwrap();
        assert!(p(&f3, &[1, 0, 1]).is_irreducible().unwrap());
        assert!(!p(&f3, &[-1, 0, 1]).is_irreducible().unwrap());
        assert!(!p(&f5(), &[1, 0, 1]).is_irreducible().unwrap());
        assert!(p(&f5(), &[3]).is_irreducible().is_err());
        // x^4 + x + 1 over F_2 is irreducible; x^4 + x^2 + 1 = (x^2+x+1)^2 is not
        let f2 = make_field(2, 1).unwrap();
        assert!(p(&f2, &[1, 1, 0, 0, 1]).is_irreducible().unwrap());
        assert!(!p(&f2, &[1, 0, 1, 0, 1]).is_irreducible().unwrap());
    }

    #[test]
    fn irreducible_count_matches_necklace_formula() {
        // number of monic irreducible quartics over F_3 is (3^4 - 3^2)/4 = 18
        let f3 = make_field(3, 1).unwrap();
        let mut count = 0;
        for idx in 0..81i64 {
            let c: Vec<i64> = (0..4).map(|i| (idx / 3i64.pow(i)) % 3).chain([1]).collect();
            if p(&f3, &c).is_irreducible().unwrap() {
                count += 1;
            }
        }
        assert_eq!(count, 18);
    }

    #[test]
    fn mth_root_examples() {
        let k = f5();
        let roots = p(&k, &[1, 2, 1]).mth_roots(2);
        assert_eq!(roots, vec![p(&k, &[1, 1]), p(&k, &[4, 4])]);
        assert_eq!(p(&k, &[2, 0, 0, 0, 0, 1]).mth_roots(5), vec![p(&k, &[2, 1])]);
        assert!(p(&k, &[1, 0, 0, 1]).mth_roots(2).is_empty());
        // not a square although the degree is even
        assert!(p(&k, &[2, 0, 1]).mth_roots(2).is_empty());
        // leading coefficient 2 is not a square in F_5
        assert!(p(&k, &[0, 0, 2]).mth_roots(2).is_empty());
    }

    #[test]
    fn polynomial_syntax() {
        let k = f5();
        let f = Polynomial::parse(&k, "x^3 + x + 1").unwrap();
        assert_eq!(f, p(&k, &[1, 1, 0, 1]));
        assert_eq!(f.to_string(), "x^3+x+1");
        assert_eq!(Polynomial::parse(&k, "2*T^2 - 1").unwrap(), p(&k, &[4, 0, 2]));
        assert_eq!(Polynomial::parse(&k, "3T").unwrap(), p(&k, &[0, 3]));
        let f9 = make_field(3, 2).unwrap();
        let g = Polynomial::parse(&f9, "[1,2]*x^2+[0,1]").unwrap();
        assert_eq!(g.to_string(), "[1,2]*x^2+[0,1]");
        assert!(matches!(
            Polynomial::parse(&k, "x^ + 1"),
            Err(Error::Parse { pos: 3, .. })
        ));
        assert!(Polynomial::parse(&k, "x*y").is_err());
    }
}
