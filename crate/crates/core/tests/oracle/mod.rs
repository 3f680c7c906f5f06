//! Slow reference computations used to check the library: shift-and-add field
//! multiplication, traces as sums of Frobenius powers, double-sum Walsh
//! spectra and a direct Möbius transform.

#![allow(dead_code)]

use vbent::{BooleanFunction, FieldSpec};

#[derive(Debug, Clone, Copy)]
pub struct RefField {
    pub n: u32,
    pub modulus: u32,
}

impl RefField {
    pub fn of(field: &FieldSpec) -> Self {
        RefField {
            n: field.n(),
            modulus: field.modulus(),
        }
    }

    pub fn size(&self) -> u32 {
        1 << self.n
    }

    pub fn mul(&self, mut a: u32, mut b: u32) -> u32 {
        let mut acc = 0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a >> self.n & 1 == 1 {
                a ^= self.modulus;
            }
        }
        acc
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn frob(&self, a: u32, j: u32) -> u32 {
        (0..j).fold(a, |y, _| self.mul(y, y))
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert_ne!(a, 0);
        self.pow(a, (1u64 << self.n) - 2)
    }

    /// `y + y^2 + ... + y^(2^(m-1))`.
    pub fn partial_trace(&self, y: u32, m: u32) -> u32 {
        let mut acc = 0;
        let mut z = y;
        for _ in 0..m {
            acc ^= z;
            z = self.mul(z, z);
        }
        acc
    }

    pub fn trace(&self, y: u32) -> u32 {
        let t = self.partial_trace(y, self.n);
        assert!(t <= 1);
        t
    }

    /// `Tr^n_m(y) = Σ_i y^(2^(im))`.
    pub fn relative_trace(&self, y: u32, m: u32) -> u32 {
        (0..self.n / m).fold(0, |acc, i| acc ^ self.frob(y, i * m))
    }

    pub fn in_subfield(&self, y: u32, m: u32) -> bool {
        self.frob(y, m) == y
    }

    pub fn subfield(&self, m: u32) -> Vec<u32> {
        (0..self.size())
            .filter(|&y| self.in_subfield(y, m))
            .collect()
    }

    pub fn trace_table(&self) -> Vec<u32> {
        (0..self.size()).map(|y| self.trace(y)).collect()
    }
}

pub fn table(f: &BooleanFunction) -> Vec<bool> {
    (0..f.len() as u32).map(|x| f.get(x)).collect()
}

/// `W(a) = Σ_x (-1)^(f(x) + Tr(a x))` by the double sum.
pub fn naive_walsh(f: &BooleanFunction) -> Vec<i32> {
    let r = RefField::of(f.field());
    let tr = r.trace_table();
    let bits = table(f);
    (0..r.size())
        .map(|a| {
            (0..r.size())
                .map(|x| {
                    if bits[x as usize] ^ (tr[r.mul(a, x) as usize] == 1) {
                        -1
                    } else {
                        1
                    }
                })
                .sum()
        })
        .collect()
}

/// Dual from the double-sum spectrum, `None` if not bent.
pub fn naive_dual(f: &BooleanFunction) -> Option<Vec<bool>> {
    let n = f.n();
    if !n.is_multiple_of(2) {
        return None;
    }
    let amp = 1i32 << (n / 2);
    let w = naive_walsh(f);
    w.iter()
        .all(|v| v.abs() == amp)
        .then(|| w.iter().map(|&v| v < 0).collect())
}

/// Algebraic degree via the subset-sum Möbius transform.
pub fn anf_degree(bits: &[bool]) -> u32 {
    let mut a: Vec<bool> = bits.to_vec();
    let len = a.len();
    let mut h = 1;
    while h < len {
        for i in 0..len {
            if i & h != 0 {
                a[i] ^= a[i ^ h];
            }
        }
        h <<= 1;
    }
    (0..len)
        .filter(|&i| a[i])
        .map(|i| i.count_ones())
        .max()
        .unwrap_or(0)
}

/// `Tr^m_1(λ y)` for every output `y` of a subfield-valued table.
pub fn component_table(r: &RefField, outputs: &[u32], lambda: u32, m: u32) -> Vec<bool> {
    outputs
        .iter()
        .map(|&y| r.partial_trace(r.mul(lambda, y), m) == 1)
        .collect()
}

/// Spectrum magnitudes of a bit table through the library transform.
pub fn spectrum_of(field: &FieldSpec, bits: &[bool]) -> Vec<i32> {
    BooleanFunction::from_bits(field, bits)
        .unwrap()
        .walsh_transform()
        .values()
        .to_vec()
}

pub fn is_bent_table(field: &FieldSpec, bits: &[bool]) -> bool {
    let amp = 1i32 << (field.n() / 2);
    field.n().is_multiple_of(2) && spectrum_of(field, bits).iter().all(|v| v.abs() == amp)
}

/// `Some(s)` when all nonzero magnitudes equal `2^s`.
pub fn plateau_of(field: &FieldSpec, bits: &[bool]) -> Option<u32> {
    let mut mags: Vec<u32> = spectrum_of(field, bits)
        .iter()
        .map(|v| v.unsigned_abs())
        .filter(|&v| v != 0)
        .collect();
    mags.sort_unstable();
    mags.dedup();
    (mags.len() == 1 && mags[0].is_power_of_two()).then(|| mags[0].trailing_zeros())
}
