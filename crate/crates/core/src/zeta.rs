//! L-polynomials and class numbers.
//!
//! The zeta function of a curve of genus `g` over `F_q` is
//! `L(t) / ((1 - t)(1 - qt))` with `L(t) = ∏ (1 - α_i t)` of degree `2g`.
//! Point counts give the power sums `S_k = Σ α_i^k = q^k + 1 - N_k`, Newton's
//! identities turn `S_1..S_g` into `a_1..a_g`, and the functional equation
//! `a_{2g-i} = q^{g-i} a_i` supplies the rest. The divisor class number is
//! `L(1)`; over the degree-`n` constant extension it is
//! `∏ (1 - α_i^n) = Res(t^n - 1, L(t))`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{gcd, multiplicative_order_mod};
use crate::error::{Error, Result};
use crate::ffield::CurveModel;
use crate::par::Parallelism;

/// `L(t) = a_0 + a_1 t + ... + a_{2g} t^{2g}` with `a_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    q: u64,
    genus: usize,
    coeffs: Vec<BigInt>,
}

impl LPolynomial {
    /// Checks the shape and the functional equation.
    pub fn new(q: u64, genus: usize, coeffs: Vec<BigInt>) -> Result<LPolynomial> {
        if coeffs.len() != 2 * genus + 1 || !coeffs[0].is_one() {
            return Err(Error::InconsistentCounts(
                "L must have 2g+1 coefficients with a_0 = 1".into(),
            ));
        }
        let qb = BigInt::from(q);
        for i in 0..genus {
            if coeffs[2 * genus - i] != qb.pow((genus - i) as u32) * &coeffs[i] {
                return Err(Error::InconsistentCounts(format!(
                    "a_{} != q^{} a_{}",
                    2 * genus - i,
                    genus - i,
                    i
                )));
            }
        }
        Ok(LPolynomial { q, genus, coeffs })
    }

    /// `L = 1`, the genus-zero case.
    pub fn trivial(q: u64) -> LPolynomial {
        LPolynomial {
            q,
            genus: 0,
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// `a_0, ..., a_{2g}`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// `S_1, ..., S_upto` from the coefficients (Newton's identities run
    /// forward: `S_k = -k a_k - Σ_{i<k} S_i a_{k-i}`, with `a_k = 0` past `2g`).
    pub fn power_sums(&self, upto: usize) -> Vec<BigInt> {
        let a = |k: usize| self.coeffs.get(k).cloned().unwrap_or_default();
        let mut sums: Vec<BigInt> = Vec::with_capacity(upto);
        for k in 1..=upto {
            let mut s = -BigInt::from(k) * a(k);
            for i in 1..k {
                s -= &sums[i - 1] * a(k - i);
            }
            sums.push(s);
        }
        sums
    }

    /// `N_k = q^k + 1 - S_k` as predicted by this L-polynomial.
    pub fn predicted_count(&self, k: usize) -> BigInt {
        let s = self.power_sums(k).pop().unwrap_or_default();
        BigInt::from(self.q).pow(k as u32) + 1 - s
    }
}

/// Builds `L` from `N_1, N_2, ...` (at least `g` of them). Counts beyond the
/// `g`-th are checked against the prediction of the resulting `L`.
pub fn lpoly_from_counts(q: u64, genus: usize, counts: &[u64]) -> Result<LPolynomial> {
    if counts.len() < genus {
        return Err(Error::InvalidArgument(format!(
            "genus {genus} needs {genus} point counts, got {}",
            counts.len()
        )));
    }
    let qb = BigInt::from(q);
    let sums: Vec<BigInt> = counts
        .iter()
        .enumerate()
        .map(|(k, &n)| qb.pow(k as u32 + 1) + 1 - BigInt::from(n))
        .collect();
    // k a_k = -Σ_{i=1}^{k} S_i a_{k-i}
    let mut a: Vec<BigRational> = vec![BigRational::one()];
    for k in 1..=genus {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            acc -= BigRational::from_integer(sums[i - 1].clone()) * &a[k - i];
        }
        let ak = acc / BigRational::from_integer(BigInt::from(k));
        if !ak.is_integer() {
            return Err(Error::InconsistentCounts(format!("a_{k} = {ak} is not an integer")));
        }
        a.push(ak);
    }
    let mut coeffs: Vec<BigInt> = a.into_iter().map(|r| r.to_integer()).collect();
    for i in (0..genus).rev() {
        coeffs.push(qb.pow((genus - i) as u32) * &coeffs[i]);
    }
    let l = LPolynomial::new(q, genus, coeffs)?;
    for (k, &n) in counts.iter().enumerate().skip(genus) {
        let predicted = l.predicted_count(k + 1);
        if predicted != BigInt::from(n) {
            return Err(Error::InconsistentCounts(format!(
                "N_{} = {n} but L predicts {predicted}",
                k + 1
            )));
        }
    }
    if class_number(&l) < BigInt::one() {
        return Err(Error::InconsistentCounts("L(1) < 1".into()));
    }
    Ok(l)
}

/// `h = L(1)`.
pub fn class_number(l: &LPolynomial) -> BigInt {
    l.coeffs.iter().sum()
}

/// Degree of `κ(μ_p)` over `κ`: the order of `q` modulo `p`.
pub fn cyclotomic_degree(q: u64, p: u64) -> Result<u64> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!("invalid root-of-unity order {p}")));
    }
    if gcd(q, p) != 1 {
        return Err(Error::PEqualsCharacteristic(p));
    }
    Ok(multiplicative_order_mod(q, p))
}

/// Class number of the degree-`n` constant field extension,
/// `Res(t^n - 1, L(t))`.
pub fn constant_extension_class_number(l: &LPolynomial, n: u64) -> BigInt {
    assert!(n >= 1, "extension degree must be positive");
    let mut cyclo = vec![BigInt::zero(); n as usize + 1];
    cyclo[0] = -BigInt::one();
    cyclo[n as usize] = BigInt::one();
    resultant(&cyclo, &l.coeffs)
}

/// Resultant of two integer polynomials (coefficients constant term first,
/// no trailing zeros) as the Sylvester determinant, by Bareiss elimination.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    assert!(
        a.last().is_some_and(|c| !c.is_zero()) && b.last().is_some_and(|c| !c.is_zero()),
        "resultant of zero polynomial"
    );
    let n = a.len() - 1;
    let m = b.len() - 1;
    if n == 0 {
        return a[0].pow(m as u32);
    }
    if m == 0 {
        return b[0].pow(n as u32);
    }
    let size = n + m;
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    for r in 0..m {
        for (k, c) in a.iter().rev().enumerate() {
            rows[r][r + k] = c.clone();
        }
    }
    for r in 0..n {
        for (k, c) in b.iter().rev().enumerate() {
            rows[m + r][r + k] = c.clone();
        }
    }
    bareiss_determinant(rows)
}

/// Fraction-free Gaussian elimination; every division is exact.
fn bareiss_determinant(mut rows: Vec<Vec<BigInt>>) -> BigInt {
    let size = rows.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..size {
        if rows[k][k].is_zero() {
            match (k + 1..size).find(|&r| !rows[r][k].is_zero()) {
                Some(r) => {
                    rows.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = &rows[i][j] * &rows[k][k] - &rows[i][k] * &rows[k][j];
                let (quot, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero());
                rows[i][j] = quot;
            }
            rows[i][k] = BigInt::zero();
        }
        prev = rows[k][k].clone();
    }
    sign * &rows[size - 1][size - 1]
}

/// Point counts and L-polynomial of a curve.
#[derive(Clone, Debug)]
pub struct ZetaData {
    /// `N_1, N_2, ...`: all of `N_1..N_{2g}` when the budget allows, else `N_1..N_g`.
    pub counts: Vec<u64>,
    pub lpoly: LPolynomial,
}

impl ZetaData {
    pub fn class_number(&self) -> BigInt {
        class_number(&self.lpoly)
    }

    /// Whether `N_{g+1}..N_{2g}` were counted and matched the prediction.
    pub fn self_checked(&self) -> bool {
        self.counts.len() >= 2 * self.lpoly.genus
    }
}

/// Counts points and reconstructs `L`, re-counting up to `N_{2g}` as a
/// consistency check whenever `q^{2g}` fits the budget.
pub fn zeta_of_curve(curve: &CurveModel, budget: u64, par: Parallelism) -> Result<ZetaData> {
    let g = curve.genus() as usize;
    let q = curve.q();
    if g == 0 {
        return Ok(ZetaData {
            counts: vec![curve.count_points(1, budget, par)?],
            lpoly: LPolynomial::trivial(q),
        });
    }
    let fits = |k: usize| {
        (q as u128)
            .checked_pow(k as u32)
            .is_some_and(|v| v <= budget as u128)
    };
    let upto = if fits(2 * g) { 2 * g } else { g };
    let counts = (1..=upto)
        .map(|k| curve.count_points(k as u32, budget, par))
        .collect::<Result<Vec<_>>>()?;
    let lpoly = lpoly_from_counts(q, g, &counts)?;
    Ok(ZetaData { counts, lpoly })
}

/// Class numbers of constant extensions, memoized by degree.
#[derive(Clone, Debug)]
pub struct ClassNumbers {
    lpoly: LPolynomial,
    cache: std::collections::BTreeMap<u64, BigInt>,
}

impl ClassNumbers {
    pub fn new(lpoly: LPolynomial) -> ClassNumbers {
        ClassNumbers {
            lpoly,
            cache: Default::default(),
        }
    }

    pub fn lpoly(&self) -> &LPolynomial {
        &self.lpoly
    }

    /// `h` of the degree-`n` constant extension.
    pub fn at_degree(&mut self, n: u64) -> BigInt {
        self.cache
            .entry(n)
            .or_insert_with(|| constant_extension_class_number(&self.lpoly, n))
            .clone()
    }

    /// `h_{F(μ_p)}`.
    pub fn with_roots_of_unity(&mut self, p: u64) -> Result<BigInt> {
        let d = cyclotomic_degree(self.lpoly.q, p)?;
        Ok(self.at_degree(d))
    }
}

/// `|h|` reduced mod `p`, for divisibility tests.
pub(crate) fn divides(p: u64, h: &BigInt) -> bool {
    (h.abs() % BigInt::from(p)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn genus_one_from_one_count() {
        let l = lpoly_from_counts(5, 1, &[9]).unwrap();
        assert_eq!(l.coeffs(), big(&[1, 3, 5]).as_slice());
        assert_eq!(class_number(&l), BigInt::from(9));
        assert_eq!(l.predicted_count(2), BigInt::from(27));
        assert!(lpoly_from_counts(5, 1, &[9, 27]).is_ok());
        assert!(matches!(
            lpoly_from_counts(5, 1, &[9, 28]),
            Err(Error::InconsistentCounts(_))
        ));
    }

    #[test]
    fn genus_zero() {
        let l = lpoly_from_counts(5, 0, &[6]).unwrap();
        assert_eq!(class_number(&l), BigInt::one());
        assert_eq!(constant_extension_class_number(&l, 7), BigInt::one());
        assert!(lpoly_from_counts(5, 0, &[7]).is_err());
    }

    #[test]
    fn resultant_small_cases() {
        let l = LPolynomial::new(5, 1, big(&[1, 3, 5])).unwrap();
        assert_eq!(constant_extension_class_number(&l, 1), BigInt::from(9));
        assert_eq!(constant_extension_class_number(&l, 2), BigInt::from(27));
        // Res(x - 2, x - 3) = -1 ... with the Sylvester sign convention: Res(A,B) = Π B(α)
        assert_eq!(resultant(&big(&[-2, 1]), &big(&[-3, 1])), BigInt::from(-1));
        assert_eq!(resultant(&big(&[-1, 0, 1]), &big(&[4])), BigInt::from(16));
    }

    #[test]
    fn cyclotomic_degrees() {
        assert_eq!(cyclotomic_degree(5, 2).unwrap(), 1);
        assert_eq!(cyclotomic_degree(5, 3).unwrap(), 2);
        assert_eq!(cyclotomic_degree(5, 4).unwrap(), 1);
        assert_eq!(cyclotomic_degree(3, 4).unwrap(), 2);
        assert_eq!(cyclotomic_degree(25, 5), Err(Error::PEqualsCharacteristic(5)));
    }

    #[test]
    fn functional_equation_enforced() {
        assert!(LPolynomial::new(5, 1, big(&[1, 3, 4])).is_err());
        assert!(LPolynomial::new(5, 1, big(&[2, 3, 5])).is_err());
    }
}
