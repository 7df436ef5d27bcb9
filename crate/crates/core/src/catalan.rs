//! Catalan's equation `X^m - Y^n = 1` in `O_F`.
//!
//! [`check_theorem`] decides whether the class-number criterion rules out
//! non-constant solutions for `(F, m, n)`: some prime `p | m` and prime `q | n`
//! must satisfy
//!
//! 1. `p ≠ ℓ` and `q ≠ ℓ`;
//! 2. if `p ≠ q`: `q ∤ h_{F(μ_p)}` or `p ∤ h_{F(μ_q)}`;
//! 3. if `q = 2`, `p ≠ 2` and `2 | h_{F(μ_p)}`: `p ∤ h_{F(μ_4)}`.
//!
//! [`search`] checks the conclusion at bounded pole order, [`counterexample`]
//! builds the solutions that exist when the exponent equals the
//! characteristic, and [`verify_lemma2`] checks that `(Y + c_1)^p - Y^p = c_2`
//! forces `Y` to be constant.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use crate::arith::{gcd, prime_divisors};
use crate::error::{Error, Result};
use crate::ffield::{CurveModel, CurveRef, Monomial, RingElement};
use crate::gf::{same_field, Elem, FieldElement, FieldRef, PrimePowerField};
use crate::par::{chunk_ranges, Parallelism};
use crate::poly::Polynomial;
use crate::zeta::{divides, zeta_of_curve, ClassNumbers};
use crate::DEFAULT_BUDGET;

/// Outcome of [`check_theorem`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    /// Some prime pair satisfies all three conditions.
    TheoremApplies,
    /// Some pair avoids the characteristic, but none satisfies the
    /// class-number conditions.
    Inconclusive,
    /// Every pair involves the characteristic.
    CharDividesBothSidesImpossible,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::TheoremApplies => "THEOREM_APPLIES",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::CharDividesBothSidesImpossible => "CHAR_DIVIDES_BOTH_SIDES_IMPOSSIBLE",
        }
    }
}

/// Conditions evaluated for one prime pair. `None` means not evaluated
/// (condition 1 failed); vacuous conditions are `Some(true)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub p: u64,
    pub q: u64,
    pub c1: bool,
    pub c2: Option<bool>,
    pub c3: Option<bool>,
}

impl PairCheck {
    pub fn satisfied(&self) -> bool {
        self.c1 && self.c2 == Some(true) && self.c3 == Some(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub m: u64,
    pub n: u64,
    /// The first pair, in ascending `(p, q)` order, satisfying everything.
    pub pair: Option<(u64, u64)>,
    /// Every pair examined, in order.
    pub pairs: Vec<PairCheck>,
    /// Class numbers computed along the way, keyed `h(F(mu_k))`.
    pub h_values: BTreeMap<String, BigInt>,
    pub status: Status,
}

fn label(k: u64) -> String {
    format!("h(F(mu_{k}))")
}

/// Evaluates the criterion, computing the L-polynomial only if some pair
/// gets past condition 1.
pub fn check_theorem(
    curve: &CurveModel,
    m: u64,
    n: u64,
    budget: u64,
    par: Parallelism,
) -> Result<TheoremVerdict> {
    let mut classes: Option<ClassNumbers> = None;
    check_theorem_lazy(curve.field().characteristic(), m, n, |k| {
        if classes.is_none() {
            classes = Some(ClassNumbers::new(zeta_of_curve(curve, budget, par)?.lpoly));
        }
        classes.as_mut().unwrap().with_roots_of_unity(k)
    })
}

/// The criterion for a field of characteristic `ell` with known class numbers.
pub fn check_theorem_with(
    ell: u64,
    classes: &mut ClassNumbers,
    m: u64,
    n: u64,
) -> Result<TheoremVerdict> {
    check_theorem_lazy(ell, m, n, |k| classes.with_roots_of_unity(k))
}

fn check_theorem_lazy<F>(ell: u64, m: u64, n: u64, mut h_mu: F) -> Result<TheoremVerdict>
where
    F: FnMut(u64) -> Result<BigInt>,
{
    if m < 2 || n < 2 {
        return Err(Error::InvalidArgument("exponents must exceed 1".into()));
    }
    let mut verdict = TheoremVerdict {
        m,
        n,
        pair: None,
        pairs: Vec::new(),
        h_values: BTreeMap::new(),
        status: Status::CharDividesBothSidesImpossible,
    };
    for &p in &prime_divisors(m) {
        for &q in &prime_divisors(n) {
            let mut check = PairCheck {
                p,
                q,
                c1: p != ell && q != ell,
                c2: None,
                c3: None,
            };
            if check.c1 {
                verdict.status = Status::Inconclusive;
                if p == q {
                    check.c2 = Some(true);
                    check.c3 = Some(true);
                } else {
                    let hp = h_mu(p)?;
                    let hq = h_mu(q)?;
                    check.c2 = Some(!divides(q, &hp) || !divides(p, &hq));
                    verdict.h_values.insert(label(p), hp.clone());
                    verdict.h_values.insert(label(q), hq);
                    check.c3 = Some(true);
                    if q == 2 && p != 2 && divides(2, &hp) {
                        let h4 = h_mu(4)?;
                        check.c3 = Some(!divides(p, &h4));
                        verdict.h_values.insert(label(4), h4);
                    }
                }
            }
            verdict.pairs.push(check);
            if check.satisfied() {
                verdict.pair = Some((p, q));
                verdict.status = Status::TheoremApplies;
                return Ok(verdict);
            }
        }
    }
    Ok(verdict)
}

/// Limits for [`search`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of `Y` candidates.
    pub budget: u64,
    pub parallelism: Parallelism,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            parallelism: Parallelism::Sequential,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub x: RingElement,
    pub y: RingElement,
    /// Both coordinates lie in `κ`.
    pub constant: bool,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub curve: CurveRef,
    pub m: u64,
    pub n: u64,
    pub bound: u64,
    /// Right-hand side `g` of `X^m = g(Y)`.
    pub rhs: Polynomial,
    pub candidates_examined: u128,
    pub solutions: Vec<Solution>,
    pub elapsed: Duration,
}

impl SearchReport {
    pub fn has_nonconstant(&self) -> bool {
        self.solutions.iter().any(|s| !s.constant)
    }
}

/// Maximum number of points used to sieve candidates.
const SIEVE_POINTS: usize = 24;
const CHUNK: u128 = 1 << 13;

/// Pole orders `s` for which a non-constant `Y` with `d(Y) = s` can have a
/// partner: `m·d(X) = deg(g)·s` must be solvable with `d(X)` a pole number.
pub fn admissible_orders(curve: &CurveModel, m: u64, rhs_degree: u64, bound: u64) -> Vec<u64> {
    (1..=bound)
        .filter(|&s| curve.monomial_of_order(s).is_some())
        .filter(|&s| (rhs_degree * s) % m == 0)
        .filter(|&s| curve.monomial_of_order(rhs_degree * s / m).is_some())
        .collect()
}

/// All solutions of `X^m = g(Y)` (default `g(Y) = Y^n + 1`) with `Y` constant
/// or `d(Y) <= bound`.
///
/// Constant `Y` forces constant `X`, and a non-constant `Y` forces
/// `m·d(X) = deg(g)·d(Y)`, so only admissible pole orders are enumerated.
/// Each candidate `Y` is first sieved by requiring `g(Y(P))` to be an `m`-th
/// power in `κ` at rational points `P`; survivors get an exact `m`-th root
/// extraction of `g(Y)` in `O_F`. Every reported pair is re-verified.
pub fn search(
    curve: &CurveRef,
    m: u64,
    n: u64,
    bound: u64,
    rhs: Option<&Polynomial>,
    config: &SearchConfig,
) -> Result<SearchReport> {
    let start = Instant::now();
    if m < 2 || n < 2 {
        return Err(Error::InvalidArgument("exponents must exceed 1".into()));
    }
    let field = curve.field();
    let rhs = match rhs {
        Some(g) => {
            if !same_field(g.field(), field) {
                return Err(Error::FieldMismatch);
            }
            g.clone()
        }
        None => Polynomial::one(field).add_unchecked(&Polynomial::monomial(
            field,
            field.one(),
            n as usize,
        )),
    };
    let rhs_degree = match rhs.degree() {
        Some(d) if d >= 1 => d as u64,
        _ => {
            return Err(Error::InvalidArgument(
                "right-hand side must have positive degree in Y".into(),
            ))
        }
    };

    let orders = admissible_orders(curve, m, rhs_degree, bound);
    let candidates = orders
        .iter()
        .fold(field.order() as u128, |acc, &s| {
            acc.saturating_add(curve.count_with_pole_order(s))
        });
    if candidates > config.budget as u128 {
        return Err(Error::BudgetExceeded {
            candidates,
            budget: config.budget,
        });
    }

    let mut solutions = Vec::new();
    for y0 in field.elements() {
        let r = rhs.eval(y0);
        for x0 in field.nth_roots(r, m) {
            solutions.push(Solution {
                x: RingElement::constant(curve, x0),
                y: RingElement::constant(curve, y0),
                constant: true,
            });
        }
    }

    let points: Vec<(Elem, Elem)> = curve
        .rational_points()
        .into_iter()
        .take(SIEVE_POINTS)
        .collect();
    let sieve = gcd(m, field.order() - 1) > 1;
    for &s in &orders {
        let kernel = OrderKernel::new(curve, s, &points, &rhs, m, sieve);
        let ranges = chunk_ranges(curve.count_with_pole_order(s), CHUNK);
        let found = config
            .parallelism
            .map(ranges.len(), |c| kernel.run(ranges[c].0, ranges[c].1));
        for chunk in found {
            solutions.extend(chunk);
        }
    }

    for sol in &solutions {
        let lhs = sol.x.pow(m);
        let r = RingElement::compose(&rhs, &sol.y);
        assert_eq!(lhs, r, "emitted pair fails X^m = g(Y)");
    }

    Ok(SearchReport {
        curve: curve.clone(),
        m,
        n,
        bound,
        rhs,
        candidates_examined: candidates,
        solutions,
        elapsed: start.elapsed(),
    })
}

/// Candidate scan for a single pole order of `Y`.
struct OrderKernel<'a> {
    curve: &'a CurveRef,
    field: &'a PrimePowerField,
    lead: Monomial,
    /// Monomials below `lead`, ascending.
    lower: Vec<Monomial>,
    /// `values[t][p]`: monomial `t` (lower ones first, then `lead`) at point `p`.
    values: Vec<Vec<Elem>>,
    rhs: &'a Polynomial,
    m: u64,
    sieve: bool,
}

impl<'a> OrderKernel<'a> {
    fn new(
        curve: &'a CurveRef,
        s: u64,
        points: &[(Elem, Elem)],
        rhs: &'a Polynomial,
        m: u64,
        sieve: bool,
    ) -> OrderKernel<'a> {
        let field = curve.field().as_ref();
        let lead = curve.monomial_of_order(s).expect("admissible order");
        let lower = curve.monomials_up_to(s - 1);
        let values = lower
            .iter()
            .chain(std::iter::once(&lead))
            .map(|mono| {
                points
                    .iter()
                    .map(|&(x0, y0)| {
                        let xv = field.pow(x0, mono.j);
                        let yv = if curve.is_rational() {
                            field.one()
                        } else {
                            field.pow(y0, mono.i as u64)
                        };
                        field.mul(xv, yv)
                    })
                    .collect()
            })
            .collect();
        OrderKernel {
            curve,
            field,
            lead,
            lower,
            values,
            rhs,
            m,
            sieve,
        }
    }

    fn passes_sieve(&self, lead: Elem, digits: &[Elem]) -> bool {
        let k = self.field;
        let lead_values = &self.values[self.lower.len()];
        (0..lead_values.len()).all(|p| {
            let mut v = k.mul(lead, lead_values[p]);
            for (t, &c) in digits.iter().enumerate() {
                if !c.is_zero() {
                    v = k.add(v, k.mul(c, self.values[t][p]));
                }
            }
            k.is_nth_power(self.rhs.eval(v), self.m)
        })
    }

    fn build(&self, lead: Elem, digits: &[Elem]) -> RingElement {
        let e = self.curve.e() as usize;
        let mut parts: Vec<Vec<Elem>> = vec![Vec::new(); e];
        let mut put = |mono: &Monomial, c: Elem| {
            let part = &mut parts[mono.i as usize];
            if part.len() <= mono.j as usize {
                part.resize(mono.j as usize + 1, Elem::ZERO);
            }
            part[mono.j as usize] = c;
        };
        put(&self.lead, lead);
        for (mono, &c) in self.lower.iter().zip(digits) {
            put(mono, c);
        }
        let field = self.curve.field();
        let parts = parts
            .into_iter()
            .map(|c| Polynomial::new(field.clone(), c))
            .collect();
        RingElement::from_parts(self.curve, parts).expect("parts match the model")
    }

    fn roots(&self, y: &RingElement) -> Vec<RingElement> {
        let r = RingElement::compose(self.rhs, y);
        if self.curve.is_rational() {
            r.parts()[0]
                .mth_roots(self.m)
                .into_iter()
                .map(|h| RingElement::from_poly(self.curve, h))
                .collect()
        } else {
            r.mth_roots(self.m)
        }
    }

    /// Solutions among candidates with index in `lo..hi`.
    fn run(&self, lo: u128, hi: u128) -> Vec<Solution> {
        let q = self.field.order() as u128;
        let mut lead = 1 + (lo % (q - 1)) as u64;
        let mut rest = lo / (q - 1);
        let mut digits: Vec<Elem> = (0..self.lower.len())
            .map(|_| {
                let d = (rest % q) as u64;
                rest /= q;
                Elem(d)
            })
            .collect();
        let mut out = Vec::new();
        for _ in lo..hi {
            let lead_el = Elem(lead);
            if !self.sieve || self.passes_sieve(lead_el, &digits) {
                let y = self.build(lead_el, &digits);
                for x in self.roots(&y) {
                    out.push(Solution {
                        x,
                        y: y.clone(),
                        constant: false,
                    });
                }
            }
            lead += 1;
            if lead as u128 == q {
                lead = 1;
                for d in digits.iter_mut() {
                    d.0 += 1;
                    if d.0 as u128 == q {
                        d.0 = 0;
                    } else {
                        break;
                    }
                }
            }
        }
        out
    }
}

/// `X = 1 + z^n`, `Y = z^ℓ`: a non-constant solution of `X^ℓ - Y^n = 1`,
/// by `(1 + z^n)^ℓ = 1 + z^{nℓ}`.
pub fn counterexample(
    curve: &CurveRef,
    n: u64,
    z: &RingElement,
) -> Result<(RingElement, RingElement)> {
    let ell = curve.field().characteristic();
    if n < 2 || n % ell == 0 {
        return Err(Error::InvalidArgument(format!(
            "n must exceed 1 and be prime to the characteristic {ell}"
        )));
    }
    if z.curve() != curve && **z.curve() != **curve {
        return Err(Error::CurveMismatch);
    }
    if z.is_constant() {
        return Err(Error::ConstantWitness);
    }
    let one = RingElement::one(curve);
    let x = one.add_unchecked(&z.pow(n));
    let y = z.pow(ell);
    assert_eq!(x.pow(ell).sub_unchecked(&y.pow(n)), one);
    Ok((x, y))
}

/// `(z + c_1)^p - z^p - c_2` over `K`.
pub fn lemma2_polynomial(
    field: &FieldRef,
    p: u64,
    c1: &FieldElement,
    c2: &FieldElement,
) -> Polynomial {
    let shifted = Polynomial::new(field.clone(), vec![c1.value(), field.one()]);
    shifted
        .pow(p)
        .sub_unchecked(&Polynomial::var(field).pow(p))
        .sub_unchecked(&Polynomial::constant(field, c2.value()))
}

/// Constant solutions `Y ∈ K` of `(Y + c_1)^p - Y^p = c_2`.
pub fn lemma2_constant_solutions(
    field: &FieldRef,
    p: u64,
    c1: &FieldElement,
    c2: &FieldElement,
) -> Vec<Elem> {
    let f = lemma2_polynomial(field, p, c1, c2);
    field.elements().filter(|&z| f.eval(z).is_zero()).collect()
}

/// Whether every `Y ∈ K[T]` of degree `<= max_degree` with
/// `(Y + c_1)^p - Y^p = c_2` is constant.
///
/// The equation says `f(Y) = 0` for `f(z) = (z + c_1)^p - z^p - c_2`, which
/// has degree `p - 1` and leading coefficient `p·c_1 ≠ 0`; for `deg Y = k >= 1`
/// the leading coefficient of `f(Y)` is `p·c_1·lc(Y)^{p-1}`, so `f(Y)` has
/// degree `(p-1)k` and cannot vanish. Both facts are checked on the actual
/// polynomials for every `k <= max_degree`.
pub fn verify_lemma2(
    field: &FieldRef,
    p: u64,
    c1: &FieldElement,
    c2: &FieldElement,
    max_degree: u32,
) -> Result<bool> {
    let ell = field.characteristic();
    if p % ell == 0 {
        return Err(Error::PEqualsCharacteristic(p));
    }
    if p < 2 {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if !same_field(c1.field(), field) || !same_field(c2.field(), field) {
        return Err(Error::FieldMismatch);
    }
    if c1.is_zero() || c2.is_zero() {
        return Err(Error::InvalidArgument("c1 and c2 must be nonzero".into()));
    }
    let f = lemma2_polynomial(field, p, c1, c2);
    let expected_lead = field.mul(field.from_int((p % ell) as i64), c1.value());
    if f.degree() != Some(p as usize - 1) || f.leading_coefficient() != expected_lead {
        return Ok(false);
    }
    for k in 1..=max_degree as usize {
        // the leading form of a degree-k Y; lower terms cannot reach degree (p-1)k
        for lc in field.elements().skip(1).take(2) {
            let y = Polynomial::monomial(field, lc, k);
            let fy = f.coeffs().iter().rev().fold(Polynomial::zero(field), |acc, &c| {
                acc.mul_unchecked(&y)
                    .add_unchecked(&Polynomial::constant(field, c))
            });
            if fy.degree() != Some((p as usize - 1) * k) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
