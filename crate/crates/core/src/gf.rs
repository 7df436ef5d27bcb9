//! Finite fields `F_{ℓ^a}` in a polynomial basis.
//!
//! An element is stored as a compact code `c_0 + c_1 ℓ + ... + c_{a-1} ℓ^{a-1}`
//! where `c_0 + c_1 θ + ... + c_{a-1} θ^{a-1}` is its coordinate vector over
//! the prime field and `θ` is a root of the field's modulus. Enumerating codes
//! `0, 1, 2, ...` walks the coefficient sequences in odometer order (constant
//! coefficient turning fastest); every "least element" choice in the crate
//! refers to this order.
//!
//! Fields are interned: `make_field(ℓ, a)` always hands back the same shared
//! description, whose modulus is the lexicographically least monic irreducible
//! polynomial of degree `a` over `Z/ℓ` (coefficients compared from the
//! constant term up).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::arith::{gcd, inv_mod, is_prime, prime_divisors};
use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Shared handle to a field description.
pub type FieldRef = Arc<PrimePowerField>;

/// Fields up to this size get exp/log tables.
const TABLE_LIMIT: u64 = 1 << 22;
/// Elements codes must fit comfortably in a `u64`.
const MAX_ORDER: u64 = 1 << 62;

/// A raw field element: its odometer code. Only meaningful together with the
/// field it came from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub(crate) u64);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    /// The odometer code of this element.
    pub fn code(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
}

/// The finite field `F_{ℓ^a} = F_ℓ[θ]/(modulus)`.
pub struct PrimePowerField {
    characteristic: u64,
    degree: u32,
    order: u64,
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

impl fmt::Debug for PrimePowerField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PrimePowerField")
            .field("characteristic", &self.characteristic)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for PrimePowerField {
    fn eq(&self, other: &Self) -> bool {
        // The modulus is a function of (ℓ, a).
        self.characteristic == other.characteristic && self.degree == other.degree
    }
}

impl Eq for PrimePowerField {}

fn field_cache() -> &'static Mutex<HashMap<(u64, u32), FieldRef>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), FieldRef>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds (or fetches) `F_{ℓ^a}` with its canonical modulus.
pub fn make_field(characteristic: u64, degree: u32) -> Result<FieldRef> {
    if !is_prime(characteristic) {
        return Err(Error::CharacteristicNotPrime(characteristic));
    }
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    if characteristic >= 1 << 31 {
        return Err(Error::FieldTooLarge(format!("characteristic {characteristic} too large")));
    }
    let order = characteristic
        .checked_pow(degree)
        .filter(|&q| q <= MAX_ORDER)
        .ok_or_else(|| Error::FieldTooLarge(format!("{characteristic}^{degree}")))?;

    if let Some(k) = field_cache().lock().unwrap().get(&(characteristic, degree)) {
        return Ok(k.clone());
    }

    let modulus = if degree == 1 {
        vec![0, 1]
    } else {
        least_irreducible(characteristic, degree)?
    };
    let mut field = PrimePowerField {
        characteristic,
        degree,
        order,
        modulus,
        tables: None,
    };
    if order <= TABLE_LIMIT && order > 2 {
        field.tables = Some(field.build_tables());
    }
    let field = Arc::new(field);
    let mut cache = field_cache().lock().unwrap();
    Ok(cache
        .entry((characteristic, degree))
        .or_insert(field)
        .clone())
}

/// Lexicographically least monic irreducible of the given degree over `Z/ℓ`,
/// comparing coefficient sequences from the constant term up.
fn least_irreducible(ell: u64, degree: u32) -> Result<Vec<u64>> {
    let prime = make_field(ell, 1)?;
    let count = ell.pow(degree);
    for idx in 0..count {
        // c_0 is the most significant digit of idx.
        let mut coeffs = vec![0u64; degree as usize + 1];
        let mut rest = idx;
        for i in (0..degree as usize).rev() {
            coeffs[i] = rest % ell;
            rest /= ell;
        }
        coeffs[degree as usize] = 1;
        if coeffs[0] == 0 {
            continue;
        }
        let candidate =
            Polynomial::new(prime.clone(), coeffs.iter().map(|&c| Elem(c)).collect());
        if candidate.is_irreducible()? {
            return Ok(coeffs);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl PrimePowerField {
    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    /// Extension degree `a` over the prime field.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `q = ℓ^a`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn cardinality(&self) -> BigUint {
        BigUint::from(self.order)
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.degree == 1
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        Elem(1)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.characteristic as i64) as u64)
    }

    /// Element from prime-field coordinates (constant first); missing
    /// coordinates are zero, entries are reduced mod ℓ.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Elem> {
        if coeffs.len() > self.degree as usize {
            return Err(Error::InvalidArgument(format!(
                "{} coordinates given for a degree-{} field",
                coeffs.len(),
                self.degree
            )));
        }
        let mut code = 0u64;
        for &c in coeffs.iter().rev() {
            code = code * self.characteristic + c % self.characteristic;
        }
        Ok(Elem(code))
    }

    /// Prime-field coordinates, exactly `a` entries, constant first.
    pub fn coeffs(&self, x: Elem) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.degree as usize);
        let mut rest = x.0;
        for _ in 0..self.degree {
            out.push(rest % self.characteristic);
            rest /= self.characteristic;
        }
        out
    }

    /// The element with the given odometer code.
    pub fn element(&self, code: u64) -> Elem {
        debug_assert!(code < self.order);
        Elem(code)
    }

    /// All elements in odometer order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order).map(Elem)
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        let ell = self.characteristic;
        if self.degree == 1 {
            let s = x.0 + y.0;
            return Elem(if s >= ell { s - ell } else { s });
        }
        let (mut a, mut b) = (x.0, y.0);
        let (mut code, mut place) = (0u64, 1u64);
        while a > 0 || b > 0 {
            let d = (a % ell + b % ell) % ell;
            code += d * place;
            place = place.wrapping_mul(ell);
            a /= ell;
            b /= ell;
        }
        Elem(code)
    }

    pub fn neg(&self, x: Elem) -> Elem {
        let ell = self.characteristic;
        if self.degree == 1 {
            return Elem(if x.0 == 0 { 0 } else { ell - x.0 });
        }
        let mut a = x.0;
        let (mut code, mut place) = (0u64, 1u64);
        while a > 0 {
            let d = (ell - a % ell) % ell;
            code += d * place;
            place = place.wrapping_mul(ell);
            a /= ell;
        }
        Elem(code)
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x.0 == 0 || y.0 == 0 {
            return Elem(0);
        }
        if self.degree == 1 {
            return Elem(x.0 * y.0 % self.characteristic);
        }
        if let Some(t) = &self.tables {
            let s = t.log[x.0 as usize] + t.log[y.0 as usize];
            return Elem(t.exp[s as usize] as u64);
        }
        self.mul_slow(x, y)
    }

    /// Schoolbook product reduced by the modulus.
    fn mul_slow(&self, x: Elem, y: Elem) -> Elem {
        let ell = self.characteristic;
        let a = self.degree as usize;
        let xs = self.coeffs(x);
        let ys = self.coeffs(y);
        let mut prod = vec![0u64; 2 * a - 1];
        for (i, &xi) in xs.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in ys.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % ell;
            }
        }
        for k in (a..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..a {
                let m = self.modulus[i];
                if m != 0 {
                    prod[k - a + i] = (prod[k - a + i] + (ell - c) * m) % ell;
                }
            }
        }
        let mut code = 0u64;
        for &c in prod[..a].iter().rev() {
            code = code * ell + c;
        }
        Elem(code)
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.degree == 1 {
            return Ok(Elem(inv_mod(x.0, self.characteristic).expect("prime modulus")));
        }
        if let Some(t) = &self.tables {
            let n = self.order - 1;
            let l = t.log[x.0 as usize] as u64;
            return Ok(Elem(t.exp[((n - l) % n) as usize] as u64));
        }
        Ok(self.pow(x, self.order - 2))
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem(1);
        }
        if x.0 == 0 {
            return Elem(0);
        }
        let n = self.order - 1;
        let e = match e % n {
            0 => n,
            r => r,
        };
        if let Some(t) = &self.tables {
            let l = t.log[x.0 as usize] as u128 * e as u128 % n as u128;
            return Elem(t.exp[l as usize] as u64);
        }
        let (mut base, mut e, mut acc) = (x, e, Elem(1));
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x^e` for an arbitrary-precision exponent.
    pub fn pow_big(&self, x: Elem, e: &BigUint) -> Elem {
        if e == &BigUint::ZERO {
            return Elem(1);
        }
        if x.0 == 0 {
            return Elem(0);
        }
        let r = (e % BigUint::from(self.order - 1)).to_u64().unwrap();
        self.pow(x, if r == 0 { self.order - 1 } else { r })
    }

    /// `x ↦ x^ℓ`.
    pub fn frobenius(&self, x: Elem) -> Elem {
        self.pow(x, self.characteristic)
    }

    /// The inverse of Frobenius, `x ↦ x^{ℓ^{a-1}}`.
    pub fn frobenius_inv(&self, x: Elem) -> Elem {
        self.pow(x, self.characteristic.pow(self.degree - 1))
    }

    /// Discrete logarithm to the table generator, if tables exist.
    fn log(&self, x: Elem) -> Option<u64> {
        self.tables.as_ref().map(|t| t.log[x.0 as usize] as u64)
    }

    /// Is `x` an `m`-th power in this field?
    pub fn is_nth_power(&self, x: Elem, m: u64) -> bool {
        if x.0 == 0 {
            return true;
        }
        let n = self.order - 1;
        let g = gcd(m, n);
        if g == 1 {
            return true;
        }
        if let Some(l) = self.log(x) {
            return l % g == 0;
        }
        self.pow(x, n / g) == Elem(1)
    }

    /// All `c` with `c^m = x`, sorted by code.
    pub fn nth_roots(&self, x: Elem, m: u64) -> Vec<Elem> {
        assert!(m >= 1);
        if x.0 == 0 {
            return vec![Elem(0)];
        }
        let n = self.order - 1;
        let g = gcd(m, n);
        let mut roots = if let (Some(t), Some(l)) = (&self.tables, self.log(x)) {
            // m·k ≡ l (mod n)
            if l % g != 0 {
                return Vec::new();
            }
            let step = n / g;
            let k0 = if step == 1 {
                0
            } else {
                let inv = inv_mod((m / g) % step, step).expect("coprime after dividing by gcd");
                ((l / g) as u128 * inv as u128 % step as u128) as u64
            };
            (0..g)
                .map(|i| Elem(t.exp[(k0 + i * step) as usize] as u64))
                .collect::<Vec<_>>()
        } else if g == 1 {
            let inv = inv_mod(m % n, n).expect("coprime");
            vec![self.pow(x, inv)]
        } else {
            (1..self.order)
                .map(Elem)
                .filter(|&c| self.pow(c, m) == x)
                .collect()
        };
        roots.sort();
        roots
    }

    /// Least `k >= 1` with `x^k = 1`.
    pub fn multiplicative_order(&self, x: Elem) -> Result<u64> {
        if x.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut n = self.order - 1;
        for r in prime_divisors(n) {
            while n % r == 0 && self.pow(x, n / r) == Elem(1) {
                n /= r;
            }
        }
        Ok(n)
    }

    /// The least element (odometer order) of multiplicative order exactly `p`.
    pub fn primitive_root_of_unity(&self, p: u64) -> Result<Elem> {
        if p < 2 {
            return Err(Error::InvalidArgument(format!("root of unity order {p} < 2")));
        }
        if p % self.characteristic == 0 {
            return Err(Error::PEqualsCharacteristic(p));
        }
        let n = self.order - 1;
        if n % p != 0 {
            return Err(Error::RootsOfUnityMissing(p));
        }
        if let Some(t) = &self.tables {
            let step = n / p;
            return Ok((1..p)
                .filter(|&k| gcd(k, p) == 1)
                .map(|k| Elem(t.exp[(k * step) as usize] as u64))
                .min()
                .expect("φ(p) >= 1"));
        }
        for code in 1..self.order {
            let x = Elem(code);
            if self.pow(x, p) == Elem(1) && self.multiplicative_order(x)? == p {
                return Ok(x);
            }
        }
        unreachable!("cyclic group of order divisible by p")
    }

    fn build_tables(&self) -> Tables {
        let n = self.order - 1;
        let divisors = prime_divisors(n);
        let generator = (1..self.order)
            .map(Elem)
            .find(|&g| divisors.iter().all(|&r| self.pow_slow(g, n / r) != Elem(1)))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; self.order as usize];
        let mut x = Elem(1);
        for i in 0..n as usize {
            exp[i] = x.0 as u32;
            exp[i + n as usize] = x.0 as u32;
            log[x.0 as usize] = i as u32;
            x = if self.degree == 1 {
                Elem(x.0 * generator.0 % self.characteristic)
            } else {
                self.mul_slow(x, generator)
            };
        }
        Tables { exp, log }
    }

    fn pow_slow(&self, x: Elem, mut e: u64) -> Elem {
        let (mut base, mut acc) = (x, Elem(1));
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_untabled(acc, base);
            }
            base = self.mul_untabled(base, base);
            e >>= 1;
        }
        acc
    }

    fn mul_untabled(&self, x: Elem, y: Elem) -> Elem {
        if x.0 == 0 || y.0 == 0 {
            Elem(0)
        } else if self.degree == 1 {
            Elem(x.0 * y.0 % self.characteristic)
        } else {
            self.mul_slow(x, y)
        }
    }

    /// Textual form: a decimal residue in prime fields, `[c0,c1,...]` otherwise.
    pub fn format(&self, x: Elem) -> String {
        if self.degree == 1 {
            x.0.to_string()
        } else {
            let parts: Vec<String> = self.coeffs(x).iter().map(|c| c.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }

    /// Parses the textual element syntax. Decimal integers (optionally
    /// negative) land in the prime subfield.
    pub fn parse(&self, s: &str) -> Result<Elem> {
        self.parse_at(s, 0)
    }

    pub(crate) fn parse_at(&self, s: &str, offset: usize) -> Result<Elem> {
        let t = s.trim();
        let lead = s.len() - s.trim_start().len();
        let start = offset + lead;
        if let Some(body) = t.strip_prefix('[') {
            let body = body
                .strip_suffix(']')
                .ok_or_else(|| Error::parse(start + t.len(), "expected ']'"))?;
            let mut coeffs = Vec::new();
            let mut pos = start + 1;
            for piece in body.split(',') {
                let v = piece.trim().parse::<i64>().map_err(|_| {
                    Error::parse(pos, format!("invalid coefficient '{}'", piece.trim()))
                })?;
                coeffs.push(v.rem_euclid(self.characteristic as i64) as u64);
                pos += piece.len() + 1;
            }
            return self
                .from_coeffs(&coeffs)
                .map_err(|e| Error::parse(start, e.to_string()));
        }
        let v = t
            .parse::<i64>()
            .map_err(|_| Error::parse(start, format!("invalid field element '{t}'")))?;
        Ok(self.from_int(v))
    }
}

/// An element together with its field.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: FieldRef,
    value: Elem,
}

pub(crate) fn same_field(a: &FieldRef, b: &FieldRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.value == other.value
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    pub fn new(field: FieldRef, value: Elem) -> FieldElement {
        debug_assert!(value.0 < field.order);
        FieldElement { field, value }
    }

    pub fn from_int(field: &FieldRef, n: i64) -> FieldElement {
        FieldElement::new(field.clone(), field.from_int(n))
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    /// Prime-field coordinates, constant first.
    pub fn coeffs(&self) -> Vec<u64> {
        self.field.coeffs(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn wrap(&self, value: Elem) -> FieldElement {
        FieldElement::new(self.field.clone(), value)
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> FieldElement {
        self.wrap(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: &BigUint) -> FieldElement {
        self.wrap(self.field.pow_big(self.value, e))
    }

    pub fn multiplicative_order(&self) -> Result<u64> {
        self.field.multiplicative_order(self.value)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}

/// Least element of order exactly `p` in `field`.
pub fn primitive_root_of_unity(field: &FieldRef, p: u64) -> Result<FieldElement> {
    Ok(FieldElement::new(field.clone(), field.primitive_root_of_unity(p)?))
}

/// A fixed field embedding `F_{ℓ^a} → F_{ℓ^b}` (`a | b`), sending the
/// generator of the source to the least root of its modulus in the target.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: FieldRef,
    target: FieldRef,
    /// Images of `1, θ, ..., θ^{a-1}`.
    images: Vec<Elem>,
}

impl Embedding {
    pub fn new(source: &FieldRef, target: &FieldRef) -> Result<Embedding> {
        if source.characteristic != target.characteristic
            || !target.degree.is_multiple_of(source.degree)
        {
            return Err(Error::IncompatibleFields(format!(
                "F_{}^{} is not a subfield of F_{}^{}",
                source.characteristic, source.degree, target.characteristic, target.degree
            )));
        }
        let theta = if source.degree == 1 {
            target.zero()
        } else {
            let modulus: Vec<Elem> = source.modulus.iter().map(|&c| target.from_int(c as i64)).collect();
            target
                .elements()
                .find(|&x| {
                    let mut acc = target.zero();
                    for &c in modulus.iter().rev() {
                        acc = target.add(target.mul(acc, x), c);
                    }
                    acc.is_zero()
                })
                .expect("a subfield's modulus splits in the extension")
        };
        let mut images = Vec::with_capacity(source.degree as usize);
        let mut power = target.one();
        for _ in 0..source.degree {
            images.push(power);
            power = target.mul(power, theta);
        }
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn source(&self) -> &FieldRef {
        &self.source
    }

    pub fn target(&self) -> &FieldRef {
        &self.target
    }

    /// Image of a raw source element.
    pub fn apply(&self, x: Elem) -> Elem {
        let t = &self.target;
        self.source
            .coeffs(x)
            .iter()
            .zip(&self.images)
            .fold(t.zero(), |acc, (&c, &img)| {
                t.add(acc, t.mul(t.from_int(c as i64), img))
            })
    }

    pub fn embed(&self, x: &FieldElement) -> Result<FieldElement> {
        if !same_field(&x.field, &self.source) {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldElement::new(self.target.clone(), self.apply(x.value)))
    }
}

/// Embeds `x` into a field containing its parent.
pub fn embed(x: &FieldElement, target: &FieldRef) -> Result<FieldElement> {
    Embedding::new(&x.field, target)?.embed(x)
}
