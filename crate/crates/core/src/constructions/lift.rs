//! `H = G + F(Tr(u_1 x), ..., Tr(u_τ x))` and `Ĥ = (G, f_1, ..., f_t)` for a
//! vectorial bent `G`.

use rayon::prelude::*;

use super::report::{AugmentedReport, ConstructionReport};
use super::secondary::derivative_substitution;
use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};
use crate::gf2n::Element;
use crate::propp;
use crate::redpoly::{compose_traces, DefiningSet, ReducedPolynomial};
use crate::vectorial::{max_bent_components_bound, Selector, VectorialFunction};

/// Component `G_λ` of a pure function with its dual.
struct BentComponent {
    lambda: Element,
    function: BooleanFunction,
    dual: BooleanFunction,
}

fn hex_list(set: &DefiningSet) -> Vec<String> {
    set.elements().iter().map(|u| format!("{u:#x}")).collect()
}

fn base_report(g: &VectorialFunction, set: &DefiningSet, family: &str) -> ConstructionReport {
    ConstructionReport {
        family: family.into(),
        field: g.field().to_string(),
        n: g.n() as u64,
        tau: set.len() as u64,
        u: hex_list(set),
        ..Default::default()
    }
}

/// Checks that `G` is a pure vectorial bent function and returns the duals of
/// its components with `Tr^m_1(λ) = 1`, each having the property on `U`.
fn lift_preconditions(g: &VectorialFunction, set: &DefiningSet) -> Result<Vec<BentComponent>> {
    if g.t() != 0 || g.m() == 0 {
        return Err(Error::Parameters(
            "G must be a pure function into a subfield".into(),
        ));
    }
    for &u in set.elements() {
        g.field().check(u)?;
    }
    let verdict = g.is_vectorial_bent()?;
    if let Some(w) = verdict.witness {
        return Err(Error::Precondition(format!("G is not vectorial bent: {w}")));
    }
    let field = g.field();
    let lambdas: Vec<Element> = g
        .selectors()
        .into_iter()
        .map(|s| s.lambda)
        .filter(|&l| field.subfield_trace(l, g.m()) == 1)
        .collect();
    lambdas
        .into_par_iter()
        .map(|lambda| {
            let function = g.component(Selector::lambda(lambda))?;
            let dual = function.dual()?;
            if let Some(p) = propp::satisfies_p(&dual, set).failure {
                return Err(Error::ComponentPrecondition {
                    lambda,
                    reason: format!(
                        "D_{:#x} D_{:#x} of the dual is nonzero at {:#x}",
                        set.elements()[p.i],
                        set.elements()[p.j],
                        p.witness
                    ),
                });
            }
            Ok(BentComponent {
                lambda,
                function,
                dual,
            })
        })
        .collect()
}

/// `H(x) = G(x) + F(Tr(u_1 x), ..., Tr(u_τ x))`, the bit added as the
/// subfield element 0 or 1.
///
/// Requires `G` vectorial bent and, for every `λ` with `Tr^m_1(λ) = 1`, the
/// dual of `G_λ` to have the second-derivative property on `U`. The report
/// verifies every component of `H` and the dual of every component.
pub fn vec_bent_lift(
    g: &VectorialFunction,
    set: &DefiningSet,
    poly: &ReducedPolynomial,
) -> Result<(VectorialFunction, ConstructionReport)> {
    if poly.tau() as usize != set.len() {
        return Err(Error::Arity {
            expected: poly.tau() as usize,
            got: set.len(),
        });
    }
    let touched = lift_preconditions(g, set)?;
    let field = g.field();
    let added = compose_traces(poly, set, field)?;
    let h = g.add_boolean(&added)?;

    let mut report = base_report(g, set, "lift");
    report.k = Some(g.m() as u64);
    report.poly = poly.to_string();
    report.predicted_class = "vectorial bent".into();

    let spectra = h.component_spectra();
    let all_bent = spectra.iter().all(|(_, _, w)| w.class().is_bent());
    report.verified_class = if all_bent {
        "vectorial bent".into()
    } else {
        "not vectorial bent".into()
    };
    report.check("H vectorial bent", all_bent, "");

    // the touched components G_λ + g, computed from G and g separately
    let touched_bent = touched.par_iter().all(|c| {
        c.function
            .xor(&added)
            .expect("same field")
            .walsh_transform()
            .class()
            .is_bent()
    });
    report.check(
        "H bent iff every G_λ + g with Tr(λ) = 1 is bent",
        all_bent == touched_bent,
        "",
    );

    let duals: Vec<(Selector, bool)> = spectra
        .par_iter()
        .filter(|(_, _, w)| w.class().is_bent())
        .map(|(sel, hc, w)| {
            let actual = hc.dual_from(w).expect("bent");
            let predicted = match touched.iter().find(|c| c.lambda == sel.lambda) {
                Some(c) => c
                    .dual
                    .xor(&derivative_substitution(&c.dual, set, poly).expect("arity checked"))
                    .expect("same field"),
                None => g
                    .component(*sel)
                    .and_then(|c| c.dual())
                    .expect("G is vectorial bent"),
            };
            (*sel, predicted == actual)
        })
        .collect();
    for (sel, ok) in duals {
        report.add_dual("H", sel.to_string(), ok);
    }

    let count = spectra
        .iter()
        .filter(|(_, _, w)| w.class().is_bent())
        .count() as u64;
    report.measured_bent_components = count;
    report.predicted_bent_components = Some((1u64 << g.m()) - 1);
    report.check(
        "bent component count",
        count == (1u64 << g.m()) - 1,
        format!("{count} of {}", (1u64 << g.m()) - 1),
    );
    report.measured_degree = h.degree() as u64;
    Ok((h, report))
}

/// `Ĥ = (G, F_1(traces), ..., F_t(traces))`.
///
/// Under the preconditions of [`vec_bent_lift`], `Ĥ` is vectorial plateaued
/// exactly when its tail `(f_1, ..., f_t)` is; both sides are computed. When
/// every component dual of `G` has the property on `U`, the components with
/// `λ ≠ 0` are bent and the count `2^(m+t) - 2^t` is predicted.
pub fn vec_plateaued_lift(
    g: &VectorialFunction,
    set: &DefiningSet,
    polys: &[ReducedPolynomial],
) -> Result<(VectorialFunction, ConstructionReport)> {
    if polys.is_empty() {
        return Err(Error::Parameters(
            "at least one tail polynomial is needed".into(),
        ));
    }
    if let Some(p) = polys.iter().find(|p| p.tau() as usize != set.len()) {
        return Err(Error::Arity {
            expected: set.len(),
            got: p.tau() as usize,
        });
    }
    lift_preconditions(g, set)?;
    let field = g.field();
    let fs = polys
        .iter()
        .map(|p| compose_traces(p, set, field))
        .collect::<Result<Vec<_>>>()?;
    let hat = g.augment(&fs)?;
    let tail = hat.tail();
    let t = polys.len() as u32;
    let m = g.m();

    let mut report = base_report(g, set, "plateaued-lift");
    report.k = Some(m as u64);
    report.t = t as u64;
    report.poly = "0".into();
    report.predicted_class = "vectorial plateaued iff the tail is".into();

    let hat_verdict = hat.is_vectorial_plateaued();
    let tail_verdict = tail.is_vectorial_plateaued();
    report.verified_class = if hat_verdict.holds {
        "vectorial plateaued".into()
    } else {
        "not vectorial plateaued".into()
    };
    report.check(
        "H plateaued iff tail plateaued",
        hat_verdict.holds == tail_verdict.holds,
        format!("H: {}, tail: {}", hat_verdict.holds, tail_verdict.holds),
    );

    // the count prediction needs every component dual, not only Tr(λ) = 1
    let all_duals_ok = g.selectors().into_par_iter().all(|sel| {
        let dual = g
            .component(sel)
            .and_then(|c| c.dual())
            .expect("G is vectorial bent");
        propp::satisfies_p(&dual, set).holds
    });
    let n = g.n();
    let classes = hat.component_classes();
    let measured = classes.iter().filter(|(_, c)| c.is_bent()).count() as u64;
    let predicted = all_duals_ok.then(|| (1u64 << (m + t)) - (1u64 << t));
    if all_duals_ok {
        let pattern = classes
            .iter()
            .all(|(sel, c)| c.is_bent() == (sel.lambda != 0));
        report.check("component bent iff λ ≠ 0", pattern, "");
        report.check(
            "bent component count",
            Some(measured) == predicted,
            format!("{measured}"),
        );
    }
    let bound = max_bent_components_bound(n, m + t).ok();
    if let Some(b) = bound {
        report.check(
            "count within bound",
            measured <= b,
            format!("{measured} <= {b}"),
        );
    }
    report.measured_bent_components = measured;
    report.predicted_bent_components = predicted;
    report.bent_component_bound = bound;
    report.measured_degree = hat.degree() as u64;
    report.augmented = Some(AugmentedReport {
        t: t as u64,
        output_dim: (m + t) as u64,
        tails: polys.iter().map(|p| p.to_string()).collect(),
        plateaued: hat_verdict.holds,
        tail_plateaued: tail_verdict.holds,
        iff_agrees: hat_verdict.holds == tail_verdict.holds,
        amplitudes: hat_verdict
            .amplitude_multiset()
            .into_iter()
            .map(|(s, c)| {
                let key = s.map_or_else(|| "mixed".to_string(), |s| format!("2^{s}"));
                (key, c.to_string())
            })
            .collect(),
        predicted_bent_components: predicted,
        measured_bent_components: measured,
        bent_component_bound: bound,
    });
    Ok((hat, report))
}
