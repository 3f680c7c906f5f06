//! (n, m)-functions with values in a subfield GF(2^m) of GF(2^n), optionally
//! augmented with `t` extra Boolean coordinates.
//!
//! Components are indexed by selectors `(λ, v)` with `λ ∈ GF(2^m)` and
//! `v ∈ F₂^t`, not both zero; the component is `Tr^m_1(λ·F(x)) + ⟨v, bits(x)⟩`.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};
use crate::gf2n::{Element, FieldSpec};
use crate::walsh::{SpectrumClass, WalshSpectrum};

/// Component selector `(λ, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Selector {
    pub lambda: Element,
    pub v: u32,
}

impl Selector {
    pub fn new(lambda: Element, v: u32) -> Self {
        Selector { lambda, v }
    }

    pub fn lambda(lambda: Element) -> Self {
        Selector { lambda, v: 0 }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(λ={:#x}, v={:#x})", self.lambda, self.v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorialFunction {
    field: FieldSpec,
    /// subfield degree; 0 means there is no subfield part
    m: u32,
    outputs: Vec<Element>,
    t: u32,
    /// bit i of `extra[x]` is the (i+1)-th appended coordinate at x
    extra: Vec<u32>,
}

/// Failing component and spectrum point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub selector: Selector,
    pub point: Element,
    pub value: i32,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "component {} has W({:#x}) = {}",
            self.selector, self.point, self.value
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BentVerdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlateauedVerdict {
    pub holds: bool,
    /// `(selector, s)` with amplitude `2^s`, or `None` for a mixed component
    pub amplitudes: Vec<(Selector, Option<u32>)>,
    /// first mixed component, if any
    pub witness: Option<Selector>,
}

impl PlateauedVerdict {
    /// Distinct amplitudes with multiplicities.
    pub fn amplitude_multiset(&self) -> Vec<(Option<u32>, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for (_, s) in &self.amplitudes {
            *counts.entry(*s).or_insert(0usize) += 1;
        }
        counts.into_iter().collect()
    }
}

/// Degree measured two ways.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeReport {
    pub by_coordinates: u32,
    pub by_components: u32,
}

impl VectorialFunction {
    /// A pure (n, m)-function; every output must lie in GF(2^m).
    pub fn new(field: &FieldSpec, m: u32, outputs: Vec<Element>) -> Result<Self> {
        if m == 0 || !field.n().is_multiple_of(m) {
            return Err(Error::NotDivisor { m, n: field.n() });
        }
        if outputs.len() != field.size() {
            return Err(Error::Arity {
                expected: field.size(),
                got: outputs.len(),
            });
        }
        for (x, &y) in outputs.iter().enumerate() {
            if !field.contains(y) || !field.in_subfield(y, m) {
                return Err(Error::NotInSubfield {
                    m,
                    input: x as u32,
                    value: y,
                });
            }
        }
        Ok(VectorialFunction {
            field: field.clone(),
            m,
            outputs,
            t: 0,
            extra: vec![0; field.size()],
        })
    }

    pub fn from_fn(field: &FieldSpec, m: u32, eval: impl Fn(Element) -> Element) -> Result<Self> {
        Self::new(field, m, (0..field.size() as u32).map(eval).collect())
    }

    /// `x ↦ Σ x^(d_i)`, required to land in GF(2^m).
    pub fn power_sum(field: &FieldSpec, m: u32, exponents: &[u64]) -> Result<Self> {
        let mut acc = vec![0u32; field.size()];
        for &d in exponents {
            for (slot, y) in acc.iter_mut().zip(field.power_table(d)) {
                *slot ^= y;
            }
        }
        Self::new(field, m, acc)
    }

    /// The (n, t)-function `(f_1, ..., f_t)` with no subfield part.
    pub fn from_coordinates(field: &FieldSpec, fs: &[BooleanFunction]) -> Result<Self> {
        let base = VectorialFunction {
            field: field.clone(),
            m: 0,
            outputs: vec![0; field.size()],
            t: 0,
            extra: vec![0; field.size()],
        };
        base.augment(fs)
    }

    /// Build from raw parts, as read from a table file.
    pub fn from_parts(
        field: &FieldSpec,
        m: u32,
        outputs: Vec<Element>,
        t: u32,
        extra: Vec<u32>,
    ) -> Result<Self> {
        if t > 31 {
            return Err(Error::Parameters(format!("t = {t} exceeds 31")));
        }
        if extra.len() != field.size() {
            return Err(Error::Arity {
                expected: field.size(),
                got: extra.len(),
            });
        }
        if let Some((x, &e)) = extra.iter().enumerate().find(|(_, &e)| e >> t != 0) {
            return Err(Error::Parameters(format!(
                "extra bits {e:#x} at input {x:#x} exceed t = {t}"
            )));
        }
        let mut f = if m == 0 {
            if let Some((x, &y)) = outputs.iter().enumerate().find(|(_, &y)| y != 0) {
                return Err(Error::NotInSubfield {
                    m,
                    input: x as u32,
                    value: y,
                });
            }
            VectorialFunction {
                field: field.clone(),
                m: 0,
                outputs,
                t: 0,
                extra: vec![0; field.size()],
            }
        } else {
            Self::new(field, m, outputs)?
        };
        f.t = t;
        f.extra = extra;
        Ok(f)
    }

    /// `Ĥ = (F, f_1, ..., f_t)`.
    pub fn augment(&self, fs: &[BooleanFunction]) -> Result<Self> {
        if self.t as usize + fs.len() > 31 {
            return Err(Error::Parameters(
                "more than 31 appended coordinates".into(),
            ));
        }
        if fs.iter().any(|f| f.field() != &self.field) {
            return Err(Error::FieldMismatch);
        }
        let mut out = self.clone();
        for (i, f) in fs.iter().enumerate() {
            let bit = self.t + i as u32;
            for (x, slot) in out.extra.iter_mut().enumerate() {
                *slot |= (f.get(x as u32) as u32) << bit;
            }
        }
        out.t += fs.len() as u32;
        Ok(out)
    }

    /// Drop the appended coordinates.
    pub fn base(&self) -> Self {
        VectorialFunction {
            t: 0,
            extra: vec![0; self.field.size()],
            ..self.clone()
        }
    }

    /// The appended coordinates alone, as an (n, t)-function.
    pub fn tail(&self) -> Self {
        VectorialFunction {
            m: 0,
            outputs: vec![0; self.field.size()],
            ..self.clone()
        }
    }

    /// `x ↦ F(x) + g(x)`, adding the bit `g(x)` as the field element 0 or 1.
    pub fn add_boolean(&self, g: &BooleanFunction) -> Result<Self> {
        if g.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if self.m == 0 {
            return Err(Error::Parameters("no subfield part to add to".into()));
        }
        let mut out = self.clone();
        for (x, y) in out.outputs.iter_mut().enumerate() {
            *y ^= g.get(x as u32) as u32;
        }
        Ok(out)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> u32 {
        self.field.n()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// Output dimension over F₂, `m + t`.
    pub fn output_dim(&self) -> u32 {
        self.m + self.t
    }

    pub fn outputs(&self) -> &[Element] {
        &self.outputs
    }

    pub fn extra_bits(&self) -> &[u32] {
        &self.extra
    }

    pub fn value(&self, x: Element) -> (Element, u32) {
        (self.outputs[x as usize], self.extra[x as usize])
    }

    fn lambdas(&self) -> Vec<Element> {
        if self.m == 0 {
            vec![0]
        } else {
            self.field.subfield_elements(self.m).expect("m divides n")
        }
    }

    /// All selectors, λ ascending then v ascending, the zero selector omitted.
    pub fn selectors(&self) -> Vec<Selector> {
        let mut out = Vec::new();
        for lambda in self.lambdas() {
            for v in 0..1u32 << self.t {
                if lambda != 0 || v != 0 {
                    out.push(Selector { lambda, v });
                }
            }
        }
        out
    }

    /// The component `Tr^m_1(λ·F(x)) + ⟨v, bits(x)⟩`.
    pub fn component(&self, sel: Selector) -> Result<BooleanFunction> {
        let lambda_ok = if self.m == 0 {
            sel.lambda == 0
        } else {
            self.field.contains(sel.lambda) && self.field.in_subfield(sel.lambda, self.m)
        };
        if !lambda_ok || sel.v >> self.t != 0 || (sel.lambda == 0 && sel.v == 0) {
            return Err(Error::InvalidSelector(sel));
        }
        let mask = if sel.lambda == 0 {
            0
        } else {
            self.field.subfield_trace_form(sel.lambda, self.m)?
        };
        Ok(BooleanFunction::from_fn(&self.field, |x| {
            let (y, e) = self.value(x);
            ((y & mask).count_ones() + (e & sel.v).count_ones()) & 1 == 1
        }))
    }

    /// Every component with its spectrum, in selector order.
    pub fn component_spectra(&self) -> Vec<(Selector, BooleanFunction, WalshSpectrum)> {
        self.selectors()
            .into_par_iter()
            .map(|sel| {
                let c = self.component(sel).expect("enumerated selector");
                let w = c.walsh_transform();
                (sel, c, w)
            })
            .collect()
    }

    fn require_even(&self) -> Result<()> {
        if !self.n().is_multiple_of(2) {
            Err(Error::OddDegree(self.n()))
        } else {
            Ok(())
        }
    }

    /// Every component bent; otherwise the first failing component (in
    /// selector order) and spectrum point.
    pub fn is_vectorial_bent(&self) -> Result<BentVerdict> {
        self.require_even()?;
        let amp = 1i32 << (self.n() / 2);
        let failures: Vec<Witness> = self
            .selectors()
            .into_par_iter()
            .filter_map(|sel| {
                let w = self
                    .component(sel)
                    .expect("enumerated selector")
                    .walsh_transform();
                w.values()
                    .iter()
                    .position(|v| v.abs() != amp)
                    .map(|a| Witness {
                        selector: sel,
                        point: a as u32,
                        value: w.values()[a],
                    })
            })
            .collect();
        let witness = failures.into_iter().next();
        Ok(BentVerdict {
            holds: witness.is_none(),
            witness,
        })
    }

    /// Every component plateaued (amplitudes may differ between components).
    pub fn is_vectorial_plateaued(&self) -> PlateauedVerdict {
        let n = self.n();
        let amplitudes: Vec<(Selector, Option<u32>)> = self
            .selectors()
            .into_par_iter()
            .map(|sel| {
                let w = self
                    .component(sel)
                    .expect("enumerated selector")
                    .walsh_transform();
                (sel, w.class().amplitude_log2(n))
            })
            .collect();
        let witness = amplitudes
            .iter()
            .find(|(_, s)| s.is_none())
            .map(|(sel, _)| *sel);
        PlateauedVerdict {
            holds: witness.is_none(),
            amplitudes,
            witness,
        }
    }

    /// Class of every component, in selector order.
    pub fn component_classes(&self) -> Vec<(Selector, SpectrumClass)> {
        self.selectors()
            .into_par_iter()
            .map(|sel| {
                let w = self
                    .component(sel)
                    .expect("enumerated selector")
                    .walsh_transform();
                (sel, w.class().clone())
            })
            .collect()
    }

    pub fn bent_component_count(&self) -> Result<u64> {
        self.require_even()?;
        Ok(self
            .component_classes()
            .iter()
            .filter(|(_, c)| c.is_bent())
            .count() as u64)
    }

    /// Maximum algebraic degree of the F₂ coordinate functions: the bits of
    /// the stored outputs and the appended coordinates.
    pub fn degree_by_coordinates(&self) -> u32 {
        let n = self.n();
        let bits = (0..n)
            .map(|j| {
                BooleanFunction::from_fn(&self.field, |x| self.outputs[x as usize] >> j & 1 == 1)
            })
            .chain((0..self.t).map(|i| {
                BooleanFunction::from_fn(&self.field, |x| self.extra[x as usize] >> i & 1 == 1)
            }))
            .collect::<Vec<_>>();
        bits.par_iter().map(|f| f.degree()).max().unwrap_or(0)
    }

    /// Maximum algebraic degree over all components.
    pub fn degree_by_components(&self) -> u32 {
        self.selectors()
            .into_par_iter()
            .map(|sel| self.component(sel).expect("enumerated selector").degree())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_report(&self) -> DegreeReport {
        DegreeReport {
            by_coordinates: self.degree_by_coordinates(),
            by_components: self.degree_by_components(),
        }
    }

    /// Algebraic degree; both routes are computed and must agree.
    pub fn degree(&self) -> u32 {
        let r = self.degree_report();
        assert_eq!(
            r.by_coordinates, r.by_components,
            "coordinate and component degrees disagree"
        );
        r.by_coordinates
    }
}

/// `2^m - 2^(m - n/2)`, the largest possible number of bent components of an
/// (n, m)-function with `m >= n/2`.
pub fn max_bent_components_bound(n: u32, m: u32) -> Result<u64> {
    if !n.is_multiple_of(2) {
        return Err(Error::OddDegree(n));
    }
    if m < n / 2 || m > 62 {
        return Err(Error::BoundRange { n, m });
    }
    Ok((1u64 << m) - (1u64 << (m - n / 2)))
}
