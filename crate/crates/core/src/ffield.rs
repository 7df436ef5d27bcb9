//! Function fields given by superelliptic models `y^e = f(x)` and their
//! rings of integers.
//!
//! With `gcd(e, deg f) = 1`, `ℓ ∤ e` and `f` squarefree there is exactly one
//! place above `x = ∞`; it has degree one and plays the role of `P_∞`. The
//! ring of functions with no poles away from it is
//! `O_F = κ[x] ⊕ κ[x]·y ⊕ ... ⊕ κ[x]·y^{e-1}`, and the pole order at `P_∞` is
//! `d(x^j y^i) = e·j + deg(f)·i`. These orders are pairwise distinct for
//! `0 <= i < e`, so every nonzero element has a unique leading monomial and
//! `d` behaves like a degree: `d(gh) = d(g) + d(h)`, and
//! `d(g + h) = d(g)` whenever `d(h) < d(g)`.
//!
//! The base field is assumed to be the full constant field of the model.
//! `e = 1` gives the rational function field with `O_F = κ[x]`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::gf::{make_field, same_field, Elem, Embedding, FieldRef};
use crate::par::{chunk_ranges, Parallelism};
use crate::poly::Polynomial;
use crate::syntax;

pub type CurveRef = Arc<CurveModel>;

/// A validated superelliptic model over its constant field.
pub struct CurveModel {
    field: FieldRef,
    e: u32,
    f: Polynomial,
    deg_f: u64,
    genus: u64,
    /// `class_index[r]` is the `i < e` with `deg(f)·i ≡ r (mod e)`.
    class_index: Vec<u32>,
}

impl fmt::Debug for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CurveModel(y^{} = {} over F_{}^{})",
            self.e,
            self.f,
            self.field.characteristic(),
            self.field.degree()
        )
    }
}

impl PartialEq for CurveModel {
    fn eq(&self, other: &Self) -> bool {
        self.e == other.e && self.f == other.f
    }
}

impl Eq for CurveModel {}

/// Validates `y^e = f(x)` over `base` and computes its genus.
pub fn make_curve(base: &FieldRef, e: u32, f: Polynomial) -> Result<CurveRef> {
    CurveModel::new(base, e, f).map(Arc::new)
}

/// A basis monomial `x^j y^i` of `O_F` with its pole order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub order: u64,
    pub i: u32,
    pub j: u64,
}

impl CurveModel {
    pub fn new(base: &FieldRef, e: u32, f: Polynomial) -> Result<CurveModel> {
        if !same_field(base, f.field()) {
            return Err(Error::FieldMismatch);
        }
        if e == 0 {
            return Err(Error::InvalidArgument("e must be at least 1".into()));
        }
        let deg_f = f
            .degree()
            .ok_or_else(|| Error::InvalidArgument("f must be nonzero".into()))? as u64;
        let genus = if e == 1 {
            0
        } else {
            let g = gcd(e as u64, deg_f);
            if g != 1 {
                return Err(Error::NoRationalInfinitePlace(g));
            }
            if e as u64 % base.characteristic() == 0 {
                return Err(Error::WildlyRamified);
            }
            if !f.is_squarefree()? {
                return Err(Error::SingularModel);
            }
            (e as u64 - 1) * (deg_f - 1) / 2
        };
        let mut class_index = vec![0u32; e as usize];
        for i in 0..e {
            class_index[((deg_f * i as u64) % e as u64) as usize] = i;
        }
        Ok(CurveModel {
            field: base.clone(),
            e,
            f,
            deg_f,
            genus,
            class_index,
        })
    }

    /// The constant field `κ`.
    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn is_rational(&self) -> bool {
        self.e == 1
    }

    /// `|κ|`.
    pub fn q(&self) -> u64 {
        self.field.order()
    }

    /// The monomial `x^j y^i` with pole order `s`, if `s` is a pole number.
    pub fn monomial_of_order(&self, s: u64) -> Option<Monomial> {
        let e = self.e as u64;
        let i = self.class_index[(s % e) as usize];
        let base = if self.e == 1 { 0 } else { self.deg_f * i as u64 };
        (s >= base).then(|| Monomial {
            order: s,
            i,
            j: (s - base) / e,
        })
    }

    /// Basis monomials with pole order at most `bound`, in increasing order.
    pub fn monomials_up_to(&self, bound: u64) -> Vec<Monomial> {
        (0..=bound).filter_map(|s| self.monomial_of_order(s)).collect()
    }

    /// Number of elements with pole order exactly `s` (zero if `s` is a gap).
    pub fn count_with_pole_order(&self, s: u64) -> u128 {
        if self.monomial_of_order(s).is_none() {
            return 0;
        }
        let lower = (0..s).filter(|&t| self.monomial_of_order(t).is_some()).count() as u32;
        let q = self.q() as u128;
        (q - 1).saturating_mul(q.checked_pow(lower).unwrap_or(u128::MAX))
    }

    /// Number of nonzero elements with pole order at most `bound`:
    /// `q^N - 1` where `N` counts pole numbers `<= bound`.
    pub fn count_up_to(&self, bound: u64) -> u128 {
        let n = self.monomials_up_to(bound).len() as u32;
        (self.q() as u128)
            .checked_pow(n)
            .map(|v| v - 1)
            .unwrap_or(u128::MAX)
    }

    /// The `index`-th element of pole order exactly `s`.
    ///
    /// Within one pole order the leading coefficient runs fastest through the
    /// nonzero elements, then the coefficients of the lower monomials follow
    /// in odometer order (lowest pole order least significant).
    pub fn element_with_pole_order(self: &Arc<Self>, s: u64, index: u128) -> Result<RingElement> {
        let lead = self.monomial_of_order(s).ok_or_else(|| {
            Error::InvalidArgument(format!("{s} is not a pole order of this model"))
        })?;
        if index >= self.count_with_pole_order(s) {
            return Err(Error::InvalidArgument(format!("index {index} out of range")));
        }
        let q = self.q() as u128;
        let mut el = RingElement::zero(self);
        let lead_code = 1 + (index % (q - 1)) as u64;
        let mut rest = index / (q - 1);
        el.set_coeff(lead.i, lead.j, self.field.element(lead_code));
        for m in self.monomials_up_to(s.saturating_sub(1)) {
            if s == 0 {
                break;
            }
            let c = (rest % q) as u64;
            rest /= q;
            el.set_coeff(m.i, m.j, self.field.element(c));
        }
        el.normalize();
        Ok(el)
    }

    /// The affine points of the model over `κ`, sorted by `(x, y)` codes.
    pub fn rational_points(&self) -> Vec<(Elem, Elem)> {
        let k = &self.field;
        let mut out = Vec::new();
        for x0 in k.elements() {
            let v = self.f.eval(x0);
            if self.e == 1 {
                out.push((x0, v));
                continue;
            }
            for y0 in k.nth_roots(v, self.e as u64) {
                out.push((x0, y0));
            }
        }
        out
    }

    /// The same model over the degree-`k` constant extension.
    pub fn base_change(&self, k: u32) -> Result<CurveRef> {
        let small = &self.field;
        let large = make_field(small.characteristic(), small.degree() * k)?;
        let emb = Embedding::new(small, &large)?;
        let f = Polynomial::new(
            large.clone(),
            self.f.coeffs().iter().map(|&c| emb.apply(c)).collect(),
        );
        make_curve(&large, self.e, f)
    }

    /// `N_k`: points over `F_{q^k}` on the smooth projective model, i.e. affine
    /// solutions of `y^e = f(x)` plus the single point at infinity.
    pub fn count_points(&self, k: u32, budget: u64, par: Parallelism) -> Result<u64> {
        if k == 0 {
            return Err(Error::InvalidArgument("extension degree must be positive".into()));
        }
        let size = (self.q() as u128).checked_pow(k).unwrap_or(u128::MAX);
        if size > budget as u128 {
            return Err(Error::ExtensionTooLarge { size, budget });
        }
        let small = &self.field;
        let large = make_field(small.characteristic(), small.degree() * k)?;
        let emb = Embedding::new(small, &large)?;
        let f: Vec<Elem> = self.f.coeffs().iter().map(|&c| emb.apply(c)).collect();
        let n = large.order();
        let e = self.e as u64;
        let fiber = gcd(e, n - 1);
        let ranges = chunk_ranges(n as u128, 1 << 14);
        let partial = par.map(ranges.len(), |idx| {
            let (lo, hi) = ranges[idx];
            let mut count = 0u64;
            for code in lo as u64..hi as u64 {
                let x0 = large.element(code);
                let v = f
                    .iter()
                    .rev()
                    .fold(large.zero(), |acc, &c| large.add(large.mul(acc, x0), c));
                if v.is_zero() {
                    count += 1;
                } else if large.is_nth_power(v, e) {
                    count += fiber;
                }
            }
            count
        });
        Ok(partial.iter().sum::<u64>() + 1)
    }
}

/// An element `a_0(x) + a_1(x)·y + ... + a_{e-1}(x)·y^{e-1}` of `O_F`.
#[derive(Clone)]
pub struct RingElement {
    curve: CurveRef,
    parts: Vec<Polynomial>,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        same_curve(&self.curve, &other.curve) && self.parts == other.parts
    }
}

impl Eq for RingElement {}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement({self})")
    }
}

fn same_curve(a: &CurveRef, b: &CurveRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Leading monomial data of a nonzero element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeadingTerm {
    pub order: u64,
    pub i: u32,
    pub j: u64,
    pub coeff: Elem,
}

impl RingElement {
    pub fn zero(curve: &CurveRef) -> RingElement {
        RingElement {
            curve: curve.clone(),
            parts: vec![Polynomial::zero(&curve.field); curve.e as usize],
        }
    }

    pub fn constant(curve: &CurveRef, c: Elem) -> RingElement {
        let mut el = RingElement::zero(curve);
        el.parts[0] = Polynomial::constant(&curve.field, c);
        el
    }

    pub fn one(curve: &CurveRef) -> RingElement {
        RingElement::constant(curve, curve.field.one())
    }

    /// The coordinate function `x`.
    pub fn x(curve: &CurveRef) -> RingElement {
        RingElement::from_poly(curve, Polynomial::var(&curve.field))
    }

    /// The coordinate function `y` (equal to `f(x)` when `e = 1`).
    pub fn y(curve: &CurveRef) -> RingElement {
        if curve.e == 1 {
            return RingElement::from_poly(curve, curve.f.clone());
        }
        RingElement::monomial(curve, curve.field.one(), 1, 0)
    }

    /// `c·x^j·y^i` with `i < e`.
    pub fn monomial(curve: &CurveRef, c: Elem, i: u32, j: u64) -> RingElement {
        let mut el = RingElement::zero(curve);
        el.parts[i as usize] = Polynomial::monomial(&curve.field, c, j as usize);
        el
    }

    pub fn from_poly(curve: &CurveRef, a0: Polynomial) -> RingElement {
        let mut el = RingElement::zero(curve);
        el.parts[0] = a0;
        el
    }

    /// From the coordinate polynomials `a_0, ..., a_{e-1}`.
    pub fn from_parts(curve: &CurveRef, parts: Vec<Polynomial>) -> Result<RingElement> {
        if parts.len() != curve.e as usize {
            return Err(Error::InvalidArgument(format!(
                "expected {} parts, got {}",
                curve.e,
                parts.len()
            )));
        }
        if parts.iter().any(|p| !same_field(p.field(), &curve.field)) {
            return Err(Error::FieldMismatch);
        }
        Ok(RingElement {
            curve: curve.clone(),
            parts,
        })
    }

    pub fn curve(&self) -> &CurveRef {
        &self.curve
    }

    pub fn parts(&self) -> &[Polynomial] {
        &self.parts
    }

    fn set_coeff(&mut self, i: u32, j: u64, c: Elem) {
        let part = &mut self.parts[i as usize];
        let mut coeffs = part.coeffs().to_vec();
        if coeffs.len() <= j as usize {
            coeffs.resize(j as usize + 1, Elem::ZERO);
        }
        coeffs[j as usize] = c;
        *part = Polynomial::new(self.curve.field.clone(), coeffs);
    }

    fn normalize(&mut self) {
        for p in &mut self.parts {
            *p = Polynomial::new(p.field().clone(), p.coeffs().to_vec());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Polynomial::is_zero)
    }

    /// Lies in `κ`.
    pub fn is_constant(&self) -> bool {
        self.parts[0].is_constant() && self.parts[1..].iter().all(Polynomial::is_zero)
    }

    pub fn as_constant(&self) -> Option<Elem> {
        self.is_constant().then(|| self.parts[0].coeff(0))
    }

    fn check(&self, other: &RingElement) -> Result<()> {
        if same_curve(&self.curve, &other.curve) {
            Ok(())
        } else {
            Err(Error::CurveMismatch)
        }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &RingElement) -> RingElement {
        RingElement {
            curve: self.curve.clone(),
            parts: self
                .parts
                .iter()
                .zip(&other.parts)
                .map(|(a, b)| a.add_unchecked(b))
                .collect(),
        }
    }

    pub(crate) fn sub_unchecked(&self, other: &RingElement) -> RingElement {
        RingElement {
            curve: self.curve.clone(),
            parts: self
                .parts
                .iter()
                .zip(&other.parts)
                .map(|(a, b)| a.sub_unchecked(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> RingElement {
        RingElement {
            curve: self.curve.clone(),
            parts: self.parts.iter().map(Polynomial::neg).collect(),
        }
    }

    pub fn scale(&self, c: Elem) -> RingElement {
        RingElement {
            curve: self.curve.clone(),
            parts: self.parts.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Product, reducing `y^e ↦ f(x)`.
    pub(crate) fn mul_unchecked(&self, other: &RingElement) -> RingElement {
        let e = self.curve.e as usize;
        let field = &self.curve.field;
        let mut low = vec![Polynomial::zero(field); e];
        let mut high = vec![Polynomial::zero(field); e];
        for (i, a) in self.parts.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.parts.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a.mul_unchecked(b);
                if i + j < e {
                    low[i + j] = low[i + j].add_unchecked(&prod);
                } else {
                    high[i + j - e] = high[i + j - e].add_unchecked(&prod);
                }
            }
        }
        let parts = low
            .into_iter()
            .zip(high)
            .map(|(l, h)| {
                if h.is_zero() {
                    l
                } else {
                    l.add_unchecked(&h.mul_unchecked(&self.curve.f))
                }
            })
            .collect();
        RingElement {
            curve: self.curve.clone(),
            parts,
        }
    }

    /// Product with the monomial `c·x^j·y^i`.
    pub(crate) fn mul_monomial(&self, c: Elem, i: u32, j: u64) -> RingElement {
        let e = self.curve.e as usize;
        let field = &self.curve.field;
        let mut parts = vec![Polynomial::zero(field); e];
        for (p, a) in self.parts.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let shifted = a.scale(c).shift(j as usize);
            let k = p + i as usize;
            if k < e {
                parts[k] = shifted;
            } else {
                parts[k - e] = shifted.mul_unchecked(&self.curve.f);
            }
        }
        RingElement {
            curve: self.curve.clone(),
            parts,
        }
    }

    pub fn pow(&self, mut n: u64) -> RingElement {
        let mut acc = RingElement::one(&self.curve);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// The leading monomial at `P_∞`; `None` for zero.
    pub fn leading_term(&self) -> Option<LeadingTerm> {
        let e = self.curve.e as u64;
        let step = if self.curve.e == 1 { 0 } else { self.curve.deg_f };
        self.parts
            .iter()
            .enumerate()
            .filter_map(|(i, a)| {
                a.degree().map(|j| LeadingTerm {
                    order: e * j as u64 + step * i as u64,
                    i: i as u32,
                    j: j as u64,
                    coeff: a.leading_coefficient(),
                })
            })
            .max_by_key(|t| t.order)
    }

    /// `d(g) = -ord_{P_∞}(g)`.
    pub fn pole_order(&self) -> Result<u64> {
        self.leading_term()
            .map(|t| t.order)
            .ok_or(Error::PoleOrderOfZero)
    }

    /// Value at an affine point `(x0, y0)` of the model.
    pub fn eval_at(&self, x0: Elem, y0: Elem) -> Elem {
        let k = &self.curve.field;
        let mut acc = k.zero();
        let mut y_pow = k.one();
        for a in &self.parts {
            acc = k.add(acc, k.mul(a.eval(x0), y_pow));
            y_pow = k.mul(y_pow, y0);
        }
        acc
    }

    /// Evaluates a polynomial over `κ` at this element.
    pub fn compose(poly: &Polynomial, arg: &RingElement) -> RingElement {
        poly.coeffs()
            .iter()
            .rev()
            .fold(RingElement::zero(&arg.curve), |acc, &c| {
                acc.mul_unchecked(arg)
                    .add_unchecked(&RingElement::constant(&arg.curve, c))
            })
    }

    /// All `X ∈ O_F` with `X^m = self`, sorted.
    ///
    /// Leading terms multiply, so a root is recovered from the top: its
    /// leading monomial has pole order `d(self)/m`, and each correction term
    /// is read off the leading term of the remaining difference. The `ℓ`-part
    /// of `m` goes first (`(X + t)^ℓ = X^ℓ + t^ℓ`); the prime-to-`ℓ` part `m'`
    /// uses `(X + t)^{m'} - X^{m'} ≈ m'·X^{m'-1}·t`. Roots differ by `μ_{m'}(κ)`.
    pub fn mth_roots(&self, m: u64) -> Vec<RingElement> {
        assert!(m >= 1, "root index must be positive");
        if self.is_zero() {
            return vec![self.clone()];
        }
        let ell = self.curve.field.characteristic();
        let mut target = self.clone();
        let mut m_prime = m;
        while m_prime % ell == 0 {
            m_prime /= ell;
            match target.ell_root() {
                Some(r) => target = r,
                None => return Vec::new(),
            }
        }
        if m_prime == 1 {
            return vec![target];
        }
        let Some(h) = target.coprime_root(m_prime) else {
            return Vec::new();
        };
        let k = &self.curve.field;
        let mut roots: Vec<RingElement> = k
            .nth_roots(k.one(), m_prime)
            .into_iter()
            .map(|w| h.scale(w))
            .collect();
        roots.sort();
        roots
    }

    /// `lc(x^{jk} y^{ik})` after reduction: `lc(f)^{⌊ik/e⌋}`.
    fn monomial_power_lc(&self, i: u32, k: u64) -> Elem {
        let field = &self.curve.field;
        field.pow(
            self.curve.f.leading_coefficient(),
            i as u64 * k / self.curve.e as u64,
        )
    }

    fn ell_root(&self) -> Option<RingElement> {
        let field = &self.curve.field;
        let ell = field.characteristic();
        let mut root = RingElement::zero(&self.curve);
        let mut rest = self.clone();
        while let Some(lead) = rest.leading_term() {
            if lead.order % ell != 0 {
                return None;
            }
            let mono = self.curve.monomial_of_order(lead.order / ell)?;
            let scale = self.monomial_power_lc(mono.i, ell);
            let c = field.frobenius_inv(field.div(lead.coeff, scale).ok()?);
            let term = RingElement::monomial(&self.curve, c, mono.i, mono.j);
            rest = rest.sub_unchecked(&term.pow(ell));
            root = root.add_unchecked(&term);
        }
        Some(root)
    }

    /// One `m`-th root for `ℓ ∤ m` (the one whose leading coefficient is least).
    fn coprime_root(&self, m: u64) -> Option<RingElement> {
        let curve = &self.curve;
        let field = &curve.field;
        let lead = self.leading_term()?;
        if lead.order % m != 0 {
            return None;
        }
        let top = curve.monomial_of_order(lead.order / m)?;
        let scale = self.monomial_power_lc(top.i, m);
        let c0 = *field
            .nth_roots(field.div(lead.coeff, scale).ok()?, m)
            .first()?;
        let mut root = RingElement::monomial(curve, c0, top.i, top.j);
        // powers[k] = root^k for k <= m
        let mut powers: Vec<RingElement> = (0..=m).map(|k| root.pow(k)).collect();
        let deriv_order = (m - 1) * top.order;
        let deriv_lead = powers[m as usize - 1]
            .scale(field.from_int((m % field.characteristic()) as i64))
            .leading_term()?;
        let binom = binomials_mod(m, field.characteristic());
        let lc_f = curve.f.leading_coefficient();
        let mut last_order = top.order;
        loop {
            let rest = self.sub_unchecked(&powers[m as usize]);
            let Some(r) = rest.leading_term() else {
                return Some(root);
            };
            if r.order < deriv_order {
                return None;
            }
            let t_order = r.order - deriv_order;
            if t_order >= last_order {
                return None;
            }
            let mono = curve.monomial_of_order(t_order)?;
            let carry = (deriv_lead.i + mono.i) as usize >= curve.e as usize;
            let denom = if carry {
                field.mul(deriv_lead.coeff, lc_f)
            } else {
                deriv_lead.coeff
            };
            let c = field.div(r.coeff, denom).ok()?;
            // (root + t)^k = Σ_i C(k, i) root^{k-i} t^i
            let t_pows: Vec<RingElement> = (0..=m)
                .map(|k| RingElement::monomial(curve, c, mono.i, mono.j).pow(k))
                .collect();
            let mut next = Vec::with_capacity(powers.len());
            for k in 0..=m as usize {
                let mut acc = powers[k].clone();
                for i in 1..=k {
                    let b = binom[k][i];
                    if b.is_zero() {
                        continue;
                    }
                    let term = if i == 1 {
                        powers[k - 1].mul_monomial(c, mono.i, mono.j)
                    } else {
                        powers[k - i].mul_unchecked(&t_pows[i])
                    };
                    acc = acc.add_unchecked(&term.scale(b));
                }
                next.push(acc);
            }
            powers = next;
            root = powers[1].clone();
            last_order = t_order;
        }
    }

    /// Formats as a sum of terms `c*x^j*y^i`, highest pole order first.
    /// Elements of the rational function field are written in `T`.
    pub fn format(&self) -> String {
        let curve = &self.curve;
        let e = curve.e as u64;
        let var = if curve.e == 1 { "T" } else { "x" };
        let step = if curve.e == 1 { 0 } else { curve.deg_f };
        let mut terms: Vec<(u64, String)> = Vec::new();
        for (i, a) in self.parts.iter().enumerate() {
            for (j, &c) in a.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let order = e * j as u64 + step * i as u64;
                terms.push((
                    order,
                    syntax::format_term(&curve.field, c, &[(var, j as u64), ("y", i as u64)]),
                ));
            }
        }
        if terms.is_empty() {
            return "0".into();
        }
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        terms.into_iter().map(|t| t.1).collect::<Vec<_>>().join("+")
    }

    /// Parses a polynomial in `x` (or `T`) and `y`, reducing `y^e` to `f(x)`.
    pub fn parse(curve: &CurveRef, s: &str) -> Result<RingElement> {
        let terms = syntax::parse_terms(&curve.field, s, &[&["x", "T"], &["y"]])?;
        let mut acc = RingElement::zero(curve);
        let e = curve.e as u64;
        for t in terms {
            let (j, i) = (t.exponents[0], t.exponents[1]);
            let wraps = i / e;
            let mono = RingElement::monomial(curve, t.coeff, (i % e) as u32, j);
            let term = if wraps == 0 {
                mono
            } else {
                mono.mul_unchecked(&RingElement::from_poly(curve, curve.f.pow(wraps)))
            };
            acc = acc.add_unchecked(&term);
        }
        Ok(acc)
    }
}

impl PartialOrd for RingElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Pole order first (zero lowest), then coefficients from the lowest
/// monomial upward.
impl Ord for RingElement {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |r: &RingElement| r.leading_term().map(|t| t.order);
        key(self).cmp(&key(other)).then_with(|| {
            for (a, b) in self.parts.iter().zip(&other.parts) {
                let ord = a.coeffs().cmp(b.coeffs());
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            Ordering::Equal
        })
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

/// Pascal's triangle mod `ℓ` up to row `m`, as field elements.
fn binomials_mod(m: u64, ell: u64) -> Vec<Vec<Elem>> {
    let m = m as usize;
    let mut rows: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=m {
        let prev = &rows[k - 1];
        let mut row = vec![1u64; k + 1];
        for i in 1..k {
            row[i] = (prev[i - 1] + prev[i]) % ell;
        }
        rows.push(row);
    }
    rows.into_iter()
        .map(|r| r.into_iter().map(Elem).collect())
        .collect()
}

/// Every nonzero element with pole order at most `bound`, by pole order and
/// then in the index order of [`CurveModel::element_with_pole_order`].
pub fn enumerate_by_pole_order(
    curve: &CurveRef,
    bound: u64,
) -> impl Iterator<Item = RingElement> + '_ {
    curve.monomials_up_to(bound).into_iter().flat_map(move |m| {
        let count = curve.count_with_pole_order(m.order);
        (0..count).map(move |idx| {
            curve
                .element_with_pole_order(m.order, idx)
                .expect("index within range")
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn genus_one() -> CurveRef {
        let k = make_field(5, 1).unwrap();
        make_curve(&k, 2, Polynomial::from_ints(&k, &[1, 1, 0, 1])).unwrap()
    }

    fn rational(ell: u64) -> CurveRef {
        let k = make_field(ell, 1).unwrap();
        make_curve(&k, 1, Polynomial::var(&k)).unwrap()
    }

    #[test]
    fn model_validation() {
        let k = make_field(5, 1).unwrap();
        assert_eq!(genus_one().genus(), 1);
        assert_eq!(rational(5).genus(), 0);
        let bad = make_curve(&k, 2, Polynomial::from_ints(&k, &[1, 0, 0, 0, 1]));
        assert_eq!(bad.unwrap_err(), Error::NoRationalInfinitePlace(2));
        let singular = make_curve(&k, 2, Polynomial::from_ints(&k, &[0, 0, 1, 1, 0]));
        assert!(singular.is_err());
        let sing = make_curve(&k, 2, Polynomial::from_ints(&k, &[1, 2, 1]).mul(&Polynomial::var(&k)).unwrap());
        assert_eq!(sing.unwrap_err(), Error::SingularModel);
        let wild = make_curve(&k, 5, Polynomial::from_ints(&k, &[1, 1, 1]));
        assert_eq!(wild.unwrap_err(), Error::WildlyRamified);
        let g3 = make_curve(&make_field(7, 1).unwrap(), 3, Polynomial::from_ints(&make_field(7, 1).unwrap(), &[1, 0, 0, 0, 1]));
        assert_eq!(g3.unwrap().genus(), 3);
    }

    #[test]
    fn defining_relation() {
        let c = genus_one();
        let y = RingElement::y(&c);
        let x = RingElement::x(&c);
        assert_eq!(y.mul(&y).unwrap(), RingElement::from_poly(&c, c.f().clone()));
        let lhs = x.add(&y).unwrap().mul(&x.sub(&y).unwrap()).unwrap();
        let rhs = RingElement::from_poly(&c, Polynomial::var(c.field()).pow(2).sub(c.f()).unwrap());
        assert_eq!(lhs, rhs);
        assert_eq!(x.pow(3), RingElement::from_poly(&c, Polynomial::var(c.field()).pow(3)));
    }

    #[test]
    fn pole_orders_on_genus_one() {
        let c = genus_one();
        assert_eq!(RingElement::x(&c).pole_order().unwrap(), 2);
        assert_eq!(RingElement::y(&c).pole_order().unwrap(), 3);
        let g = RingElement::parse(&c, "x^2 + y").unwrap();
        assert_eq!(g.pole_order().unwrap(), 4);
        assert_eq!(RingElement::zero(&c).pole_order(), Err(Error::PoleOrderOfZero));
        assert_eq!(RingElement::one(&c).pole_order().unwrap(), 0);
    }

    #[test]
    fn enumeration_counts() {
        let c = genus_one();
        assert_eq!(enumerate_by_pole_order(&c, 0).count(), 4);
        assert_eq!(enumerate_by_pole_order(&c, 2).count(), 24);
        assert_eq!(enumerate_by_pole_order(&c, 3).count(), 124);
        assert_eq!(c.count_up_to(3), 124);
        let all: Vec<RingElement> = enumerate_by_pole_order(&c, 4).collect();
        assert_eq!(all.len() as u128, c.count_up_to(4));
        for w in all.windows(2) {
            assert!(w[0].pole_order().unwrap() <= w[1].pole_order().unwrap());
        }
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
        assert!(all.iter().all(|g| g.pole_order().unwrap() <= 4));
    }

    #[test]
    fn gaps_of_the_pole_number_semigroup() {
        let c = genus_one();
        assert!(c.monomial_of_order(1).is_none());
        assert_eq!(c.count_with_pole_order(1), 0);
        let k = make_field(7, 1).unwrap();
        let c3 = make_curve(&k, 3, Polynomial::from_ints(&k, &[1, 0, 0, 0, 1])).unwrap();
        // semigroup <3, 4> has gaps 1, 2, 5 (genus 3)
        let gaps: Vec<u64> = (0..12).filter(|&s| c3.monomial_of_order(s).is_none()).collect();
        assert_eq!(gaps, vec![1, 2, 5]);
    }

    #[test]
    fn point_counts() {
        let c = genus_one();
        assert_eq!(c.count_points(1, 1000, Parallelism::Sequential).unwrap(), 9);
        assert_eq!(c.count_points(2, 1000, Parallelism::Sequential).unwrap(), 27);
        assert_eq!(rational(5).count_points(1, 1000, Parallelism::Sequential).unwrap(), 6);
        assert!(matches!(
            c.count_points(5, 1000, Parallelism::Sequential),
            Err(Error::ExtensionTooLarge { .. })
        ));
    }

    #[test]
    fn ring_roots_examples() {
        let c = genus_one();
        let y = RingElement::y(&c);
        let x = RingElement::x(&c);
        let g = x.add(&y.scale(Elem(2))).unwrap().add(&RingElement::one(&c)).unwrap();
        let roots = g.pow(2).mth_roots(2);
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&g));
        assert!(roots.contains(&g.neg()));
        assert_eq!(g.pow(5).mth_roots(5), vec![g.clone()]);
        assert!(y.mth_roots(2).is_empty());
        assert!(x.mth_roots(2).is_empty());
        // x^3 + x + 1 = y^2 has exactly the roots ±y
        let f = RingElement::from_poly(&c, c.f().clone());
        assert_eq!(f.mth_roots(2).len(), 2);
    }

    #[test]
    fn ring_syntax() {
        let c = genus_one();
        let g = RingElement::parse(&c, "3*x*y + x^2 + 2").unwrap();
        assert_eq!(g.to_string(), "3*x*y+x^2+2");
        assert_eq!(RingElement::parse(&c, "y^2").unwrap(), RingElement::from_poly(&c, c.f().clone()));
        assert!(RingElement::parse(&c, "z").is_err());
    }
}
