//! Bent functions from a bent `f` plus products of trace terms, with their
//! predicted spectrum class and dual.

use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};
use crate::gf2n::Element;
use crate::propp;
use crate::redpoly::{compose_traces, DefiningSet, ReducedPolynomial};
use crate::walsh::SpectrumClass;

/// A constructed function with its predicted and computed spectrum class and
/// dual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondaryOutcome {
    pub function: BooleanFunction,
    pub predicted: SpectrumClass,
    pub verified: SpectrumClass,
    pub predicted_dual: Option<BooleanFunction>,
    pub verified_dual: Option<BooleanFunction>,
}

impl SecondaryOutcome {
    fn verify(
        function: BooleanFunction,
        predicted: SpectrumClass,
        predicted_dual: Option<BooleanFunction>,
    ) -> Self {
        let spectrum = function.walsh_transform();
        let verified = spectrum.class().clone();
        let verified_dual = if verified.is_bent() {
            Some(function.dual_from(&spectrum).expect("bent spectrum"))
        } else {
            None
        };
        SecondaryOutcome {
            function,
            predicted,
            verified,
            predicted_dual,
            verified_dual,
        }
    }

    pub fn class_matches(&self) -> bool {
        self.predicted == self.verified
    }

    /// `None` when no dual was predicted.
    pub fn dual_matches(&self) -> Option<bool> {
        self.predicted_dual
            .as_ref()
            .map(|p| Some(p) == self.verified_dual.as_ref())
    }

    pub fn holds(&self) -> bool {
        self.class_matches() && self.dual_matches() != Some(false)
    }
}

fn require_bent(f: &BooleanFunction, name: &str) -> Result<BooleanFunction> {
    f.dual().map_err(|e| match e {
        Error::NotBent { point, value } => {
            Error::Precondition(format!("{name} is not bent: W({point:#x}) = {value}"))
        }
        other => other,
    })
}

/// Class forced by the sum `s` of the four duals: 0 gives bent, 1 gives
/// semi-bent, anything else the three magnitudes `0, 2^(n/2), 2^(n/2+1)`.
pub fn predicted_class(n: u32, dual_sum: &BooleanFunction) -> SpectrumClass {
    match dual_sum.constant_value() {
        Some(false) => SpectrumClass::Bent,
        Some(true) => SpectrumClass::of(&[0, 1 << (n / 2 + 1)], n),
        None => SpectrumClass::Mixed {
            abs_values: vec![0, 1 << (n / 2), 1 << (n / 2 + 1)],
        },
    }
}

fn maj(a: &BooleanFunction, b: &BooleanFunction, c: &BooleanFunction) -> BooleanFunction {
    let ab = a.and(b).expect("same field");
    let ac = a.and(c).expect("same field");
    let bc = b.and(c).expect("same field");
    ab.xor(&ac).and_then(|x| x.xor(&bc)).expect("same field")
}

/// `σ = f1·f2 + f1·f3 + f2·f3` for pairwise distinct bent `f1, f2, f3` whose
/// sum `f4` is bent as well.
pub fn sigma_combine(
    f1: &BooleanFunction,
    f2: &BooleanFunction,
    f3: &BooleanFunction,
) -> Result<SecondaryOutcome> {
    if f1.field() != f2.field() || f1.field() != f3.field() {
        return Err(Error::FieldMismatch);
    }
    if f1 == f2 || f1 == f3 || f2 == f3 {
        return Err(Error::Precondition(
            "f1, f2, f3 are not pairwise distinct".into(),
        ));
    }
    let f4 = f1.xor(f2)?.xor(f3)?;
    let d1 = require_bent(f1, "f1")?;
    let d2 = require_bent(f2, "f2")?;
    let d3 = require_bent(f3, "f3")?;
    let d4 = require_bent(&f4, "f4")?;
    let s = d1.xor(&d2)?.xor(&d3)?.xor(&d4)?;
    let predicted = predicted_class(f1.n(), &s);
    let predicted_dual = predicted.is_bent().then(|| maj(&d1, &d2, &d3));
    Ok(SecondaryOutcome::verify(
        maj(f1, f2, f3),
        predicted,
        predicted_dual,
    ))
}

/// `h(x) = f(x) + Tr(a·x)·Tr(b·x)`, classified by `D_a D_b f*`.
pub fn bent_plus_quadratic_trace(
    f: &BooleanFunction,
    a: Element,
    b: Element,
) -> Result<SecondaryOutcome> {
    if a == b {
        return Err(Error::Precondition(format!("a = b = {a:#x}")));
    }
    let field = f.field();
    field.check(a)?;
    field.check(b)?;
    let dual = require_bent(f, "f")?;
    let la = BooleanFunction::linear(field, a);
    let lb = BooleanFunction::linear(field, b);
    let h = f.xor(&la.and(&lb)?)?;
    let predicted = predicted_class(f.n(), &dual.second_derivative(a, b));
    let predicted_dual = predicted
        .is_bent()
        .then(|| maj(&dual, &dual.shifted(a), &dual.shifted(b)));
    Ok(SecondaryOutcome::verify(h, predicted, predicted_dual))
}

/// `f + F(Tr(u_1 x), ..., Tr(u_τ x))` with predicted dual
/// `f* + F(D_{u_1} f*, ..., D_{u_τ} f*)`; no cap on `τ`.
pub(crate) fn trace_composition_unchecked(
    g: &BooleanFunction,
    g_dual: &BooleanFunction,
    set: &DefiningSet,
    poly: &ReducedPolynomial,
) -> Result<SecondaryOutcome> {
    let f = g.xor(&compose_traces(poly, set, g.field())?)?;
    let predicted_dual = g_dual.xor(&derivative_substitution(g_dual, set, poly)?)?;
    Ok(SecondaryOutcome::verify(
        f,
        SpectrumClass::Bent,
        Some(predicted_dual),
    ))
}

/// `F(D_{u_1} h, ..., D_{u_τ} h)`.
pub(crate) fn derivative_substitution(
    h: &BooleanFunction,
    set: &DefiningSet,
    poly: &ReducedPolynomial,
) -> Result<BooleanFunction> {
    if poly.tau() as usize != set.len() {
        return Err(Error::Arity {
            expected: poly.tau() as usize,
            got: set.len(),
        });
    }
    if set.is_empty() {
        return Ok(BooleanFunction::constant(h.field(), poly.eval_bits(0)));
    }
    let derivs: Vec<BooleanFunction> = set.elements().iter().map(|&u| h.derivative(u)).collect();
    poly.substitute(&derivs)
}

fn require_property(dual: &BooleanFunction, set: &DefiningSet) -> Result<()> {
    match propp::satisfies_p(dual, set).failure {
        None => Ok(()),
        Some(p) => Err(Error::Precondition(format!(
            "D_{:#x} D_{:#x} of the dual is nonzero at {:#x}",
            set.elements()[p.i],
            set.elements()[p.j],
            p.witness
        ))),
    }
}

/// `f = g + F(Tr(u_1 x), ..., Tr(u_τ x))` for bent `g` whose dual has the
/// second-derivative property on `U`, `τ <= n/2`.
pub fn trace_composition_bent(
    g: &BooleanFunction,
    set: &DefiningSet,
    poly: &ReducedPolynomial,
) -> Result<SecondaryOutcome> {
    if set.len() > (g.n() / 2) as usize {
        return Err(Error::Parameters(format!(
            "tau = {} exceeds n/2 = {}",
            set.len(),
            g.n() / 2
        )));
    }
    let dual = require_bent(g, "g")?;
    require_property(&dual, set)?;
    trace_composition_unchecked(g, &dual, set, poly)
}

/// `σ = f + Tr(a x)·Tr(b x)·Tr(c x)`, bent when all three second
/// derivatives of `f*` along `a, b, c` vanish.
pub fn bent_plus_cubic_trace(
    f: &BooleanFunction,
    a: Element,
    b: Element,
    c: Element,
) -> Result<SecondaryOutcome> {
    let poly = ReducedPolynomial::from_terms(3, &[&[1, 2, 3]])?;
    bent_plus_three_trace_polynomial(f, a, b, c, &poly)
}

/// `f + F(Tr(a x), Tr(b x), Tr(c x))` for a 3-variable `F`, under the same
/// conditions as [`bent_plus_cubic_trace`].
pub fn bent_plus_three_trace_polynomial(
    f: &BooleanFunction,
    a: Element,
    b: Element,
    c: Element,
    poly: &ReducedPolynomial,
) -> Result<SecondaryOutcome> {
    if poly.tau() != 3 {
        return Err(Error::Arity {
            expected: 3,
            got: poly.tau() as usize,
        });
    }
    for x in [a, b, c] {
        f.field().check(x)?;
    }
    let set = DefiningSet::new(vec![a, b, c])
        .map_err(|_| Error::Precondition("a, b, c are not pairwise distinct".into()))?;
    let dual = require_bent(f, "f")?;
    require_property(&dual, &set)?;
    trace_composition_unchecked(f, &dual, &set, poly)
}
