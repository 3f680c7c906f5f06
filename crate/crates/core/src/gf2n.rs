//! Arithmetic in GF(2^n) for 1 <= n <= 24.
//!
//! Elements are stored as integers in `[0, 2^n)`: bit `j` is the coefficient of
//! `α^j` in the polynomial basis `{1, α, ..., α^(n-1)}`, where `α` is a root of
//! the modulus polynomial. Truth tables throughout the crate are indexed by the
//! same integers, so field addition is XOR on indices.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// A field element, as an integer in `[0, 2^n)`.
pub type Element = u32;

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 24;

/// One primitive polynomial per degree, bit `i` = coefficient of `t^i`.
const PRIMITIVE_MODULI: [u32; 25] = [
    0, 0x3, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11d, 0x211, 0x409, 0x805, 0x1053, 0x201b, 0x4443,
    0x8003, 0x1100b, 0x20009, 0x40081, 0x80027, 0x100009, 0x200005, 0x400003, 0x800021, 0x1000087,
];

/// The embedded primitive modulus for degree `n`.
pub fn standard_modulus(n: u32) -> Result<u32> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(n));
    }
    Ok(PRIMITIVE_MODULI[n as usize])
}

struct FieldInner {
    n: u32,
    modulus: u32,
    generator: Element,
    /// bit j = Tr(α^j)
    trace_mask: u32,
    /// a ↦ the mask of the linear form x ↦ Tr(a·x); built on first use
    trace_forms: OnceLock<Vec<u32>>,
}

/// A concrete model of GF(2^n): modulus polynomial and a primitive element.
///
/// Cheap to clone; lazily built lookup data is shared between clones.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<FieldInner>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("n", &self.n())
            .field("modulus", &format_args!("{:#x}", self.modulus()))
            .field("generator", &format_args!("{:#x}", self.generator()))
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.n() == other.n()
                && self.modulus() == other.modulus()
                && self.generator() == other.generator())
    }
}

impl Eq for FieldSpec {}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.n(), self.modulus(), self.generator()).hash(state);
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n:{} modulus:{:x} generator:{:x}",
            self.n(),
            self.modulus(),
            self.generator()
        )
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut n = None;
        let mut modulus = None;
        let mut generator = None;
        let mut column = 1;
        for token in s.split_whitespace() {
            let (key, value) = token.split_once(':').ok_or_else(|| {
                Error::parse(1, column, format!("expected key:value, got {token:?}"))
            })?;
            let bad = |what: &str| Error::parse(1, column, format!("invalid {what} {value:?}"));
            match key {
                "n" => n = Some(value.parse::<u32>().map_err(|_| bad("degree"))?),
                "modulus" => {
                    modulus = Some(u32::from_str_radix(value, 16).map_err(|_| bad("modulus"))?)
                }
                "generator" => {
                    generator = Some(u32::from_str_radix(value, 16).map_err(|_| bad("generator"))?)
                }
                _ => return Err(Error::parse(1, column, format!("unknown key {key:?}"))),
            }
            column += token.len() + 1;
        }
        let n = n.ok_or_else(|| Error::parse(1, 1, "missing n"))?;
        let modulus = modulus.ok_or_else(|| Error::parse(1, 1, "missing modulus"))?;
        match generator {
            Some(g) => FieldSpec::with_generator(n, modulus, g),
            None => FieldSpec::with_modulus(n, modulus),
        }
    }
}

fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= v {
        if v.is_multiple_of(p) {
            out.push(p);
            while v.is_multiple_of(p) {
                v /= p;
            }
        }
        p += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

fn mul_raw(n: u32, modulus: u32, a: u32, b: u32) -> u32 {
    let mut acc: u64 = 0;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= (a as u64) << shift;
        }
        b >>= 1;
        shift += 1;
    }
    let modulus = modulus as u64;
    let mut bit = 2 * n;
    while bit > n {
        bit -= 1;
        if acc >> bit & 1 == 1 {
            acc ^= modulus << (bit - n);
        }
    }
    acc as u32
}

fn pow_raw(n: u32, modulus: u32, mut a: u32, mut e: u64) -> u32 {
    let mut r = 1;
    while e != 0 {
        if e & 1 == 1 {
            r = mul_raw(n, modulus, r, a);
        }
        a = mul_raw(n, modulus, a, a);
        e >>= 1;
    }
    r
}

fn has_full_order(n: u32, modulus: u32, g: u32, factors: &[u64]) -> bool {
    let order = (1u64 << n) - 1;
    g != 0
        && pow_raw(n, modulus, g, order) == 1
        && factors
            .iter()
            .all(|&p| pow_raw(n, modulus, g, order / p) != 1)
}

impl FieldSpec {
    /// GF(2^n) over the embedded primitive modulus, generator `α`.
    pub fn standard(n: u32) -> Result<Self> {
        Self::with_modulus(n, standard_modulus(n)?)
    }

    /// GF(2^n) over a caller-supplied modulus; the generator is the least
    /// element of full multiplicative order. Finding one proves the modulus
    /// irreducible.
    pub fn with_modulus(n: u32, modulus: u32) -> Result<Self> {
        Self::check_modulus(n, modulus)?;
        let factors = prime_factors((1u64 << n) - 1);
        let size = 1u32 << n;
        let generator = (1..size)
            .find(|&g| has_full_order(n, modulus, g, &factors))
            .ok_or(Error::ReducibleModulus(modulus))?;
        Ok(Self::build(n, modulus, generator))
    }

    /// GF(2^n) with an explicit generator, which must be primitive.
    pub fn with_generator(n: u32, modulus: u32, generator: Element) -> Result<Self> {
        Self::check_modulus(n, modulus)?;
        if generator >> n != 0 {
            return Err(Error::ElementRange {
                n,
                value: generator,
            });
        }
        let factors = prime_factors((1u64 << n) - 1);
        if !has_full_order(n, modulus, generator, &factors) {
            return Err(Error::NotPrimitive { n, generator });
        }
        Ok(Self::build(n, modulus, generator))
    }

    fn check_modulus(n: u32, modulus: u32) -> Result<()> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(n));
        }
        if 32 - modulus.leading_zeros() != n + 1 {
            return Err(Error::ModulusDegree { n, modulus });
        }
        Ok(())
    }

    fn build(n: u32, modulus: u32, generator: Element) -> Self {
        let mut trace_mask = 0;
        for j in 0..n {
            // Tr(α^j) by repeated squaring
            let mut y = 1u32 << j;
            let mut acc = 0;
            for _ in 0..n {
                acc ^= y;
                y = mul_raw(n, modulus, y, y);
            }
            debug_assert!(acc <= 1);
            trace_mask |= (acc & 1) << j;
        }
        FieldSpec {
            inner: Arc::new(FieldInner {
                n,
                modulus,
                generator,
                trace_mask,
                trace_forms: OnceLock::new(),
            }),
        }
    }

    pub fn n(&self) -> u32 {
        self.inner.n
    }

    pub fn modulus(&self) -> u32 {
        self.inner.modulus
    }

    pub fn generator(&self) -> Element {
        self.inner.generator
    }

    /// Number of field elements, `2^n`.
    pub fn size(&self) -> usize {
        1usize << self.inner.n
    }

    /// Order of the multiplicative group, `2^n - 1`.
    pub fn group_order(&self) -> u64 {
        (1u64 << self.inner.n) - 1
    }

    pub fn contains(&self, a: Element) -> bool {
        a >> self.inner.n == 0
    }

    pub fn check(&self, a: Element) -> Result<Element> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::ElementRange {
                n: self.n(),
                value: a,
            })
        }
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        mul_raw(self.inner.n, self.inner.modulus, a, b)
    }

    #[inline]
    pub fn square(&self, a: Element) -> Element {
        self.mul(a, a)
    }

    /// `a^e`; the exponent is reduced mod `2^n - 1` for nonzero `a`, and
    /// `0^0 = 1` so that `x^0` evaluates to the constant term at `x = 0`.
    pub fn pow(&self, a: Element, e: u64) -> Element {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let mut e = e % self.group_order();
        if e == 0 {
            e = self.group_order();
        }
        pow_raw(self.inner.n, self.inner.modulus, a, e)
    }

    /// `a^(2^j)`.
    pub fn frobenius(&self, a: Element, j: u32) -> Element {
        (0..j).fold(a, |y, _| self.square(y))
    }

    pub fn inverse(&self, a: Element) -> Result<Element> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.group_order() - 1))
    }

    fn check_divisor(&self, m: u32) -> Result<()> {
        if m == 0 || !self.n().is_multiple_of(m) {
            return Err(Error::NotDivisor { m, n: self.n() });
        }
        Ok(())
    }

    /// Relative trace `Tr^n_m(a) = a + a^(2^m) + ... + a^(2^((n/m - 1)m))`.
    pub fn trace(&self, a: Element, m: u32) -> Result<Element> {
        self.check_divisor(m)?;
        let mut acc = 0;
        let mut y = a;
        for _ in 0..self.n() / m {
            acc ^= y;
            y = self.frobenius(y, m);
        }
        Ok(acc)
    }

    /// Absolute trace `Tr^n_1(a)` as a bit.
    #[inline]
    pub fn absolute_trace(&self, a: Element) -> u32 {
        (a & self.inner.trace_mask).count_ones() & 1
    }

    /// Mask with bit j = Tr(α^j).
    pub fn trace_mask(&self) -> u32 {
        self.inner.trace_mask
    }

    /// `Σ_{i<m} y^(2^i)`, i.e. `Tr^m_1` for `y` in the subfield GF(2^m).
    pub fn subfield_trace(&self, y: Element, m: u32) -> Element {
        let mut acc = 0;
        let mut z = y;
        for _ in 0..m {
            acc ^= z;
            z = self.square(z);
        }
        acc
    }

    /// Mask of the linear form `x ↦ Tr(a·x)`: bit j = Tr(a·α^j).
    pub fn trace_form(&self, a: Element) -> u32 {
        let mut mask = 0;
        let mut basis = a;
        for j in 0..self.n() {
            mask |= self.absolute_trace(basis) << j;
            // multiply by t; for n = 1 this reduces to multiplication by 1
            basis = self.mul(basis, 2);
        }
        mask
    }

    /// `trace_form(a)` for every `a`, indexed by `a`. The map is an F₂-linear
    /// bijection; it relates the Walsh character `Tr(a·x)` to the dot product.
    pub fn trace_forms(&self) -> &[u32] {
        self.inner.trace_forms.get_or_init(|| {
            let size = self.size();
            let mut forms = vec![0u32; size];
            let basis: Vec<u32> = (0..self.n()).map(|j| self.trace_form(1 << j)).collect();
            for a in 1..size {
                let low = a.trailing_zeros() as usize;
                forms[a] = forms[a & (a - 1)] ^ basis[low];
            }
            forms
        })
    }

    /// Mask that evaluates `Tr^m_1(λ·y)` as `parity(y & mask)` for `y` in GF(2^m).
    pub fn subfield_trace_form(&self, lambda: Element, m: u32) -> Result<u32> {
        self.check_divisor(m)?;
        let mut mask = 0;
        for j in 0..self.n() {
            let t = self.subfield_trace(self.mul(lambda, 1 << j), m);
            mask |= (t & 1) << j;
        }
        Ok(mask)
    }

    /// `x^d` for every `x`, indexed by `x`, walking powers of the generator.
    pub fn power_table(&self, d: u64) -> Vec<Element> {
        let size = self.size();
        let mut out = vec![0; size];
        out[0] = self.pow(0, d);
        let g = self.generator();
        let gd = self.pow(g, d);
        let (mut x, mut y) = (1u32, 1u32);
        for _ in 0..self.group_order() {
            out[x as usize] = y;
            x = self.mul(x, g);
            y = self.mul(y, gd);
        }
        out
    }

    /// The 2^m elements of the subfield GF(2^m), ascending.
    pub fn subfield_elements(&self, m: u32) -> Result<Vec<Element>> {
        self.check_divisor(m)?;
        let step = self.group_order() / ((1u64 << m) - 1);
        let h = self.pow(self.generator(), step);
        let mut out = Vec::with_capacity(1 << m);
        out.push(0);
        let mut y = 1;
        for _ in 0..(1u64 << m) - 1 {
            out.push(y);
            y = self.mul(y, h);
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn in_subfield(&self, a: Element, m: u32) -> bool {
        self.frobenius(a, m) == a
    }

    /// The unit circle `{x : x^(2^(n/2)+1) = 1}`, ascending.
    pub fn unit_circle(&self) -> Result<Vec<Element>> {
        self.unit_circle_in(self.n())
    }

    /// The unit circle of the subfield GF(2^m), `m` even: the `2^(m/2)+1`
    /// elements of GF(2^m) with `x^(2^(m/2)+1) = 1`, ascending.
    pub fn unit_circle_in(&self, m: u32) -> Result<Vec<Element>> {
        if !m.is_multiple_of(2) {
            return Err(Error::OddDegree(m));
        }
        self.check_divisor(m)?;
        let order = (1u64 << (m / 2)) + 1;
        let h = self.pow(self.generator(), self.group_order() / order);
        let mut out: Vec<Element> = Vec::with_capacity(order as usize);
        let mut y = 1;
        for _ in 0..order {
            out.push(y);
            y = self.mul(y, h);
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Least-value F₂-basis of the subfield GF(2^m): scan the subfield in
    /// ascending order, keeping every element independent of those kept.
    pub fn subfield_basis(&self, m: u32) -> Result<Vec<Element>> {
        let mut basis = Vec::new();
        let mut echelon = crate::linalg::Echelon::default();
        for x in self.subfield_elements(m)? {
            if echelon.insert(x) {
                basis.push(x);
                if basis.len() == m as usize {
                    break;
                }
            }
        }
        Ok(basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_table_modulus_is_primitive() {
        for n in 1..=MAX_DEGREE {
            let f = FieldSpec::standard(n).unwrap();
            if n > 1 {
                assert_eq!(f.generator(), 2, "n = {n}");
            }
        }
    }

    #[test]
    fn small_products() {
        let gf4 = FieldSpec::standard(2).unwrap();
        assert_eq!(gf4.mul(2, 2), 3);
        let gf16 = FieldSpec::standard(4).unwrap();
        assert_eq!(gf16.mul(2, 8), 3);
        for x in 0..16 {
            assert_eq!(gf16.mul(0, x), 0);
        }
    }

    #[test]
    fn powers() {
        let gf16 = FieldSpec::standard(4).unwrap();
        assert_eq!(gf16.pow(2, 5), 6);
        for a in 1..16 {
            assert_eq!(gf16.pow(a, 15), 1);
            assert_eq!(gf16.pow(a, 1), a);
        }
        assert_eq!(gf16.pow(0, 0), 1);
        assert_eq!(gf16.pow(0, 3), 0);
    }

    #[test]
    fn traces() {
        let gf4 = FieldSpec::standard(2).unwrap();
        assert_eq!(gf4.trace(2, 1).unwrap(), 1);
        assert_eq!(gf4.trace(0, 1).unwrap(), 0);
        let gf16 = FieldSpec::standard(4).unwrap();
        for x in 0..16 {
            assert!([0, 1, 6, 7].contains(&gf16.trace(x, 2).unwrap()));
            assert_eq!(gf16.trace(x, 1).unwrap(), gf16.absolute_trace(x));
        }
        assert_eq!(gf16.trace(3, 3), Err(Error::NotDivisor { m: 3, n: 4 }));
    }

    #[test]
    fn subfields_and_circle() {
        let gf16 = FieldSpec::standard(4).unwrap();
        assert_eq!(gf16.subfield_elements(2).unwrap(), vec![0, 1, 6, 7]);
        assert_eq!(gf16.subfield_elements(1).unwrap(), vec![0, 1]);
        assert_eq!(
            gf16.subfield_elements(4).unwrap(),
            (0..16).collect::<Vec<_>>()
        );
        let circle = gf16.unit_circle().unwrap();
        assert_eq!(circle.len(), 5);
        assert!(circle.contains(&1));
        // each is a power of generator^3
        let cubes: Vec<u32> = (0..5).map(|i| gf16.pow(2, 3 * i)).collect();
        for c in &circle {
            assert!(cubes.contains(c));
        }
        assert_eq!(
            FieldSpec::standard(5).unwrap().unit_circle(),
            Err(Error::OddDegree(5))
        );
    }

    #[test]
    fn inverses() {
        let gf4 = FieldSpec::standard(2).unwrap();
        assert_eq!(gf4.inverse(1).unwrap(), 1);
        assert_eq!(gf4.inverse(2).unwrap(), 3);
        assert_eq!(gf4.inverse(0), Err(Error::ZeroInverse));
        let f = FieldSpec::standard(8).unwrap();
        for a in 1..256 {
            let inv = f.inverse(a).unwrap();
            assert_eq!(f.mul(a, inv), 1);
            assert_eq!(f.inverse(inv).unwrap(), a);
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        // t^4 + t^2 + 1 = (t^2 + t + 1)^2
        assert_eq!(
            FieldSpec::with_modulus(4, 0x15),
            Err(Error::ReducibleModulus(0x15))
        );
        // t^4 + t^3 + t^2 + t + 1 is irreducible but not primitive; α has order 5
        let f = FieldSpec::with_modulus(4, 0x1f).unwrap();
        assert_ne!(f.generator(), 2);
        assert!(FieldSpec::with_generator(4, 0x1f, 2).is_err());
    }

    #[test]
    fn text_round_trip() {
        let f = FieldSpec::standard(8).unwrap();
        let s = f.to_string();
        assert_eq!(s, "n:8 modulus:11d generator:2");
        assert_eq!(s.parse::<FieldSpec>().unwrap(), f);
        assert!("n:8 modulus:zz".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn exhaustive_ring_laws_small() {
        for n in 1..=6 {
            let f = FieldSpec::standard(n).unwrap();
            let size = 1u32 << n;
            for a in 0..size {
                for b in 0..size {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..size {
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                        assert_eq!(f.mul(a, b ^ c), f.mul(a, b) ^ f.mul(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn trace_forms_match_definition() {
        let f = FieldSpec::standard(6).unwrap();
        let forms = f.trace_forms();
        for a in 0..64 {
            for x in 0..64 {
                let direct = f.absolute_trace(f.mul(a, x));
                let via = (forms[a as usize] & x).count_ones() & 1;
                assert_eq!(direct, via);
            }
        }
    }

    #[test]
    fn power_table_matches_pow() {
        let f = FieldSpec::standard(7).unwrap();
        for d in [0u64, 1, 3, 5, 22, 126, 127, 300] {
            let t = f.power_table(d);
            for x in 0..128 {
                assert_eq!(t[x as usize], f.pow(x, d), "x = {x}, d = {d}");
            }
        }
    }

    #[test]
    fn subfield_trace_form_matches() {
        let f = FieldSpec::standard(8).unwrap();
        let sub = f.subfield_elements(4).unwrap();
        for &lam in &sub {
            let mask = f.subfield_trace_form(lam, 4).unwrap();
            for &y in &sub {
                let direct = f.subfield_trace(f.mul(lam, y), 4);
                assert!(direct <= 1);
                assert_eq!(direct, (y & mask).count_ones() & 1);
            }
        }
    }

    #[test]
    fn subfield_basis_is_basis() {
        let f = FieldSpec::standard(12).unwrap();
        for m in [1, 2, 3, 4, 6, 12] {
            let b = f.subfield_basis(m).unwrap();
            assert_eq!(b.len(), m as usize);
            assert!(b.iter().all(|&x| f.in_subfield(x, m)));
        }
    }
}
