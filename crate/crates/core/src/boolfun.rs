//! Boolean functions on GF(2^n) as bit-sliced truth tables.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2n::{Element, FieldSpec};
use crate::walsh::{self, fwht_in_place, WalshSpectrum};

/// Masks selecting the positions whose bit `j` is clear, for `j < 6`.
const LOW_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// An n-variable Boolean function: bit `v` of the table is `f(v)`, where `v`
/// is read as a field element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    field: FieldSpec,
    words: Vec<u64>,
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction(n={}, ", self.n())?;
        if self.len() <= 64 {
            for x in 0..self.len() as u32 {
                write!(f, "{}", self.get(x) as u8)?;
            }
        } else {
            write!(f, "weight={}", self.weight())?;
        }
        write!(f, ")")
    }
}

fn word_count(n: u32) -> usize {
    (1usize << n).div_ceil(64)
}

fn tail_mask(n: u32) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

impl BooleanFunction {
    pub fn zero(field: &FieldSpec) -> Self {
        BooleanFunction {
            field: field.clone(),
            words: vec![0; word_count(field.n())],
        }
    }

    pub fn constant(field: &FieldSpec, value: bool) -> Self {
        let mut f = Self::zero(field);
        if value {
            f.words.fill(u64::MAX);
            f.normalize();
        }
        f
    }

    pub fn from_fn(field: &FieldSpec, mut eval: impl FnMut(Element) -> bool) -> Self {
        let mut f = Self::zero(field);
        for x in 0..field.size() as u32 {
            if eval(x) {
                f.words[x as usize >> 6] |= 1 << (x & 63);
            }
        }
        f
    }

    pub fn from_bits(field: &FieldSpec, bits: &[bool]) -> Result<Self> {
        if bits.len() != field.size() {
            return Err(Error::Arity {
                expected: field.size(),
                got: bits.len(),
            });
        }
        Ok(Self::from_fn(field, |x| bits[x as usize]))
    }

    /// Build from packed 64-bit words, low bit first.
    pub fn from_words(field: &FieldSpec, words: Vec<u64>) -> Result<Self> {
        if words.len() != word_count(field.n()) {
            return Err(Error::Arity {
                expected: word_count(field.n()),
                got: words.len(),
            });
        }
        let mut f = BooleanFunction {
            field: field.clone(),
            words,
        };
        f.normalize();
        Ok(f)
    }

    /// `x ↦ Tr(Σ c_i·x^(d_i))`.
    pub fn from_univariate(field: &FieldSpec, terms: &[(Element, u64)]) -> Result<Self> {
        let mut acc = vec![0u32; field.size()];
        for &(c, d) in terms {
            field.check(c)?;
            if c == 0 {
                continue;
            }
            for (slot, y) in acc.iter_mut().zip(field.power_table(d)) {
                *slot ^= field.mul(c, y);
            }
        }
        Ok(Self::from_fn(field, |x| {
            field.absolute_trace(acc[x as usize]) == 1
        }))
    }

    /// `x ↦ Tr(u·x)`.
    pub fn linear(field: &FieldSpec, u: Element) -> Self {
        let form = field.trace_form(u);
        Self::from_fn(field, |x| (x & form).count_ones() & 1 == 1)
    }

    fn normalize(&mut self) {
        if let Some(last) = self.words.last_mut() {
            *last &= tail_mask(self.field.n());
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> u32 {
        self.field.n()
    }

    /// Table length, `2^n`.
    pub fn len(&self) -> usize {
        self.field.size()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, x: Element) -> bool {
        self.words[x as usize >> 6] >> (x & 63) & 1 == 1
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len() as u32).map(move |x| self.get(x))
    }

    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// `Some(c)` if the function is the constant `c`.
    pub fn constant_value(&self) -> Option<bool> {
        if self.is_zero() {
            Some(false)
        } else if self.weight() == self.len() as u64 {
            Some(true)
        } else {
            None
        }
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Result<Self> {
        self.same_field(other)?;
        let mut f = BooleanFunction {
            field: self.field.clone(),
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        };
        f.normalize();
        Ok(f)
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn and(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn complement(&self) -> Self {
        let mut f = BooleanFunction {
            field: self.field.clone(),
            words: self.words.iter().map(|w| !w).collect(),
        };
        f.normalize();
        f
    }

    /// `x ↦ f(x + a)`, by block swaps inside words and word permutation across.
    pub fn shifted(&self, a: Element) -> Self {
        let n = self.n();
        let a = a & ((1u32 << n) - 1);
        let low = a & 63;
        let high = (a >> 6) as usize;
        let mut words: Vec<u64> = (0..self.words.len())
            .map(|i| self.words[i ^ high])
            .collect();
        if low != 0 {
            for w in words.iter_mut() {
                let mut v = *w;
                for (j, &mask) in LOW_MASKS.iter().enumerate() {
                    if low >> j & 1 == 1 {
                        let s = 1u32 << j;
                        v = ((v & mask) << s) | ((v >> s) & mask);
                    }
                }
                *w = v;
            }
        }
        let mut f = BooleanFunction {
            field: self.field.clone(),
            words,
        };
        f.normalize();
        f
    }

    /// `x ↦ f(δ·x)`.
    pub fn scaled(&self, delta: Element) -> Self {
        Self::from_fn(&self.field, |x| self.get(self.field.mul(delta, x)))
    }

    /// `D_a f(x) = f(x) + f(x + a)`.
    pub fn derivative(&self, a: Element) -> Self {
        self.xor(&self.shifted(a)).expect("same field")
    }

    /// `D_a D_b f(x) = f(x) + f(x+a) + f(x+b) + f(x+a+b)`.
    pub fn second_derivative(&self, a: Element, b: Element) -> Self {
        self.derivative(b).derivative(a)
    }

    /// `±1` sign vector `(-1)^f(x)`.
    pub fn signs(&self) -> Vec<i32> {
        self.bits().map(|b| if b { -1 } else { 1 }).collect()
    }

    /// Spectrum `W_f(a) = Σ_x (-1)^(f(x) + Tr(a·x))` by the fast transform.
    pub fn walsh_transform(&self) -> WalshSpectrum {
        let mut s = self.signs();
        fwht_in_place(&mut s);
        let forms = self.field.trace_forms();
        let values: Vec<i32> = forms.iter().map(|&w| s[w as usize]).collect();
        let spectrum = WalshSpectrum::from_values(self.n(), values);
        if walsh::spectrum_audit_enabled() {
            assert!(
                spectrum.satisfies_parseval(),
                "Parseval violated: energy {}",
                spectrum.energy()
            );
            let back = spectrum
                .inverse_signs(&self.field)
                .expect("invertible spectrum");
            assert!(
                back.iter().zip(self.bits()).all(|(&s, b)| (s == -1) == b),
                "inverse transform does not reproduce the function"
            );
            walsh::record_audit();
        }
        spectrum
    }

    pub fn from_spectrum(field: &FieldSpec, spectrum: &WalshSpectrum) -> Result<Self> {
        let signs = spectrum.inverse_signs(field)?;
        Ok(Self::from_fn(field, |x| signs[x as usize] == -1))
    }

    /// The dual `f*`, defined by `W_f(a) = 2^(n/2)·(-1)^f*(a)`.
    pub fn dual(&self) -> Result<Self> {
        self.dual_from(&self.walsh_transform())
    }

    pub(crate) fn dual_from(&self, spectrum: &WalshSpectrum) -> Result<Self> {
        let n = self.n();
        if !n.is_multiple_of(2) {
            let value = spectrum.at(0);
            return Err(Error::NotBent { point: 0, value });
        }
        let amp = 1i32 << (n / 2);
        if let Some((a, &v)) = spectrum
            .values()
            .iter()
            .enumerate()
            .find(|(_, v)| v.abs() != amp)
        {
            return Err(Error::NotBent {
                point: a as u32,
                value: v,
            });
        }
        Ok(Self::from_fn(&self.field, |a| spectrum.at(a) < 0))
    }

    /// ANF coefficients by the binary Möbius transform.
    pub fn anf(&self) -> Anf {
        let mut words = self.words.clone();
        for w in words.iter_mut() {
            for (j, &mask) in LOW_MASKS.iter().enumerate() {
                let s = 1u32 << j;
                *w ^= (*w & mask) << s;
            }
        }
        let mut h = 1;
        while h < words.len() {
            for i in 0..words.len() {
                if i & h == 0 {
                    words[i | h] ^= words[i];
                }
            }
            h *= 2;
        }
        if let Some(w) = words.last_mut() {
            *w &= tail_mask(self.n());
        }
        Anf { n: self.n(), words }
    }

    /// Algebraic degree; the zero function has degree 0.
    pub fn degree(&self) -> u32 {
        self.anf().degree()
    }
}

/// Algebraic normal form: bit `I` is the coefficient of `∏_{j ∈ I} X_(j+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anf {
    n: u32,
    words: Vec<u64>,
}

impl Anf {
    pub fn coefficient(&self, monomial: u32) -> bool {
        self.words[monomial as usize >> 6] >> (monomial & 63) & 1 == 1
    }

    /// Monomials with nonzero coefficient, as variable bitmasks, ascending.
    pub fn monomials(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (i, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros();
                out.push((i as u32) << 6 | b);
                w &= w - 1;
            }
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.monomials()
            .into_iter()
            .map(u32::count_ones)
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let monomials = self.monomials();
        if monomials.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<String> = monomials
            .iter()
            .map(|&m| {
                if m == 0 {
                    "1".to_string()
                } else {
                    (0..self.n)
                        .filter(|j| m >> j & 1 == 1)
                        .map(|j| format!("X{}", j + 1))
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect();
        // constant last, like the polynomial syntax
        if monomials[0] == 0 {
            terms.rotate_left(1);
        }
        write!(f, "{}", terms.join("+"))
    }
}
