//! Walsh spectra with respect to the trace character `(-1)^Tr(a·x)`.
//!
//! The butterfly computes the dot-product transform `S(w) = Σ_x (-1)^(f(x) + w·x)`.
//! Since `Tr(a·x) = w(a)·x` for the linear bijection `a ↦ w(a)` given by
//! [`FieldSpec::trace_forms`], the field spectrum is `W_f(a) = S(w(a))`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2n::FieldSpec;

static AUDIT: AtomicBool = AtomicBool::new(false);
static AUDITED: AtomicU64 = AtomicU64::new(0);

/// Turn on self-checking of every spectrum produced by
/// [`BooleanFunction::walsh_transform`](crate::BooleanFunction::walsh_transform):
/// Parseval's identity and the inverse round trip are asserted, and the
/// number of audited spectra is counted.
pub fn set_spectrum_audit(enabled: bool) {
    AUDIT.store(enabled, Ordering::SeqCst);
}

pub fn spectrum_audit_enabled() -> bool {
    AUDIT.load(Ordering::Relaxed)
}

/// Number of spectra that passed the audit so far.
pub fn audited_spectra() -> u64 {
    AUDITED.load(Ordering::SeqCst)
}

pub(crate) fn record_audit() {
    AUDITED.fetch_add(1, Ordering::SeqCst);
}

/// In-place fast Walsh–Hadamard butterfly, `O(len·log len)`; `len` must be
/// a power of two.
pub fn fwht_in_place(data: &mut [i32]) {
    let len = data.len();
    assert!(len.is_power_of_two(), "length {len} is not a power of two");
    let mut h = 1;
    while h < len {
        for block in data.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (a, b) = (*x, *y);
                *x = a + b;
                *y = a - b;
            }
        }
        h *= 2;
    }
}

/// Classification of a Walsh spectrum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SpectrumClass {
    /// Every `|W(a)| = 2^(n/2)`.
    Bent,
    /// Values in `{0, ±2^(n/2+1)}`, n even.
    SemiBent,
    /// Values in `{0, ±2^s}`.
    Plateaued { s: u32 },
    /// Anything else; carries the exact set of absolute values.
    Mixed { abs_values: Vec<u32> },
}

impl SpectrumClass {
    /// Classify a spectrum of an `n`-variable function: bent first, then a
    /// single amplitude (semi-bent being the named case `s = n/2 + 1`), else
    /// mixed.
    pub fn of(values: &[i32], n: u32) -> Self {
        let abs: BTreeSet<u32> = values.iter().map(|v| v.unsigned_abs()).collect();
        let nonzero: Vec<u32> = abs.iter().copied().filter(|&v| v != 0).collect();
        if nonzero.len() == 1 && nonzero[0].is_power_of_two() {
            let s = nonzero[0].trailing_zeros();
            if n.is_multiple_of(2) && s == n / 2 && !abs.contains(&0) {
                return SpectrumClass::Bent;
            }
            if n.is_multiple_of(2) && s == n / 2 + 1 {
                return SpectrumClass::SemiBent;
            }
            return SpectrumClass::Plateaued { s };
        }
        SpectrumClass::Mixed {
            abs_values: abs.into_iter().collect(),
        }
    }

    pub fn is_bent(&self) -> bool {
        matches!(self, SpectrumClass::Bent)
    }

    /// Bent, semi-bent and plateaued spectra all have a single amplitude.
    pub fn is_plateaued(&self) -> bool {
        !matches!(self, SpectrumClass::Mixed { .. })
    }

    /// `s` with amplitude `2^s`, if the spectrum has a single amplitude.
    pub fn amplitude_log2(&self, n: u32) -> Option<u32> {
        match self {
            SpectrumClass::Bent => Some(n / 2),
            SpectrumClass::SemiBent => Some(n / 2 + 1),
            SpectrumClass::Plateaued { s } => Some(*s),
            SpectrumClass::Mixed { .. } => None,
        }
    }
}

impl fmt::Display for SpectrumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumClass::Bent => write!(f, "bent"),
            SpectrumClass::SemiBent => write!(f, "semi-bent"),
            SpectrumClass::Plateaued { s } => write!(f, "plateaued(2^{s})"),
            SpectrumClass::Mixed { abs_values } => {
                let parts: Vec<String> = abs_values.iter().map(u32::to_string).collect();
                write!(f, "mixed{{{}}}", parts.join(","))
            }
        }
    }
}

impl Serialize for SpectrumClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The full Walsh spectrum `(W_f(a))_a` and its classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    n: u32,
    values: Vec<i32>,
    class: SpectrumClass,
}

impl WalshSpectrum {
    pub(crate) fn from_values(n: u32, values: Vec<i32>) -> Self {
        let class = SpectrumClass::of(&values, n);
        WalshSpectrum { n, values, class }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn at(&self, a: u32) -> i32 {
        self.values[a as usize]
    }

    pub fn class(&self) -> &SpectrumClass {
        &self.class
    }

    /// `Σ_a W(a)^2`; equals `2^(2n)` for every Boolean function.
    pub fn energy(&self) -> u64 {
        self.values
            .iter()
            .map(|&v| (v as i64 * v as i64) as u64)
            .sum()
    }

    pub fn satisfies_parseval(&self) -> bool {
        self.energy() == 1u64 << (2 * self.n)
    }

    /// Invert the spectrum back to a truth table over `field`, as a sign
    /// vector of `±1`. Fails if the values are not the spectrum of a Boolean
    /// function.
    pub fn inverse_signs(&self, field: &FieldSpec) -> Result<Vec<i8>> {
        if field.n() != self.n {
            return Err(Error::FieldMismatch);
        }
        let forms = field.trace_forms();
        let mut s = vec![0i32; self.values.len()];
        for (a, &v) in self.values.iter().enumerate() {
            s[forms[a] as usize] = v;
        }
        fwht_in_place(&mut s);
        let size = 1i32 << self.n;
        s.iter()
            .enumerate()
            .map(|(x, &v)| match v {
                v if v == size => Ok(1),
                v if v == -size => Ok(-1),
                v => Err(Error::InvalidSpectrum(format!(
                    "inverse transform gives {v} at {x:#x}, expected ±{size}"
                ))),
            })
            .collect()
    }
}
