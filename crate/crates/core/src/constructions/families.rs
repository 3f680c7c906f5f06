//! Three infinite families of vectorial bent `(n, n/2)`-functions: the Gold
//! power `x^(2^k+1)`, a sum of Niho powers, and `Tr^n_k(ω x^(2^k+1))` with
//! `n = 4k`.

use num_integer::Integer;
use rayon::prelude::*;

use super::lift::{vec_bent_lift, vec_plateaued_lift};
use super::report::ConstructionReport;
use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};
use crate::gf2n::{Element, FieldSpec};
use crate::redpoly::{DefiningSet, ReducedPolynomial};
use crate::vectorial::{Selector, VectorialFunction};

/// How the defining set is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum USpec {
    /// The family's standard recipe, with `τ` taken from the polynomial.
    Auto,
    Explicit(DefiningSet),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KasamiParams {
    pub u: USpec,
    pub poly: ReducedPolynomial,
    /// Extra coordinates `F_i(traces)`; when present the output is
    /// `(G, f_1, ..., f_t)`.
    pub tails: Vec<ReducedPolynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NihoParams {
    pub r: u32,
    pub u: USpec,
    pub poly: ReducedPolynomial,
    pub tails: Vec<ReducedPolynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldParams {
    pub u: USpec,
    pub poly: ReducedPolynomial,
    pub tails: Vec<ReducedPolynomial>,
}

/// The base function `G`, the lifted `H`, the augmented `(G, f_1, ..., f_t)`
/// when tails were given, and the merged report.
#[derive(Debug, Clone)]
pub struct FamilyOutcome {
    pub g: VectorialFunction,
    pub h: VectorialFunction,
    pub augmented: Option<VectorialFunction>,
    pub report: ConstructionReport,
}

impl FamilyOutcome {
    /// The function a caller would write out: the augmented one if present.
    pub fn output(&self) -> &VectorialFunction {
        self.augmented.as_ref().unwrap_or(&self.h)
    }
}

/// `a^-1 mod m`, if it exists.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as u64)
}

fn half_degree(field: &FieldSpec) -> Result<u32> {
    if !field.n().is_multiple_of(2) {
        return Err(Error::OddDegree(field.n()));
    }
    Ok(field.n() / 2)
}

fn check_tau(tau: u32, k: u32) -> Result<()> {
    if tau > k {
        return Err(Error::Parameters(format!("tau = {tau} exceeds k = {k}")));
    }
    Ok(())
}

/// `u_i · u_j^(2^k) ∈ GF(2^k)*` for every `i < j`.
fn check_u_condition(field: &FieldSpec, set: &DefiningSet, k: u32, ambient: u32) -> Result<()> {
    let u = set.elements();
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            let p = field.mul(u[i], field.frobenius(u[j], k));
            if p == 0 || !field.in_subfield(p, k) || !field.in_subfield(u[i], ambient) {
                return Err(Error::UCondition { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(())
}

fn least_nontrivial(circle: &[Element]) -> Element {
    *circle
        .iter()
        .find(|&&c| c != 1)
        .expect("circle has more than one element")
}

/// `u_i = ρ_i · v`: `ρ` the least-value basis of `GF(2^k)`, `v` the least
/// element of the unit circle other than 1.
pub fn kasami_auto_u(field: &FieldSpec, tau: u32) -> Result<DefiningSet> {
    let k = half_degree(field)?;
    check_tau(tau, k)?;
    let basis = field.subfield_basis(k)?;
    let v = least_nontrivial(&field.unit_circle()?);
    DefiningSet::new(
        basis[..tau as usize]
            .iter()
            .map(|&r| field.mul(r, v))
            .collect(),
    )
}

/// The first `τ` elements of the least-value basis of `GF(2^k)`.
pub fn niho_auto_u(field: &FieldSpec, tau: u32) -> Result<DefiningSet> {
    let k = half_degree(field)?;
    check_tau(tau, k)?;
    DefiningSet::new(field.subfield_basis(k)?[..tau as usize].to_vec())
}

/// `u_i = v_i · ς`: `v` the least-value basis of `GF(2^k)`, `ς` the least
/// element other than 1 of the unit circle of `GF(2^(2k))`.
pub fn gold_auto_u(field: &FieldSpec, tau: u32) -> Result<DefiningSet> {
    let k = gold_k(field)?;
    check_tau(tau, k)?;
    let basis = field.subfield_basis(k)?;
    let s = least_nontrivial(&field.unit_circle_in(2 * k)?);
    DefiningSet::new(
        basis[..tau as usize]
            .iter()
            .map(|&v| field.mul(v, s))
            .collect(),
    )
}

fn resolve(
    choice: &USpec,
    tau: u32,
    auto: impl FnOnce() -> Result<DefiningSet>,
) -> Result<DefiningSet> {
    match choice {
        USpec::Auto => auto(),
        USpec::Explicit(set) => {
            if set.len() != tau as usize {
                return Err(Error::Arity {
                    expected: tau as usize,
                    got: set.len(),
                });
            }
            Ok(set.clone())
        }
    }
}

/// Compare closed-form duals with spectrum duals for every `λ ∈ GF(2^k)*`.
fn record_duals(
    report: &mut ConstructionReport,
    g: &VectorialFunction,
    closed_form: impl Fn(Element) -> BooleanFunction + Sync,
) {
    let results: Vec<(Selector, bool)> = g
        .selectors()
        .into_par_iter()
        .map(|sel| {
            let actual = g.component(sel).and_then(|c| c.dual());
            (sel, actual.is_ok_and(|d| d == closed_form(sel.lambda)))
        })
        .collect();
    for (sel, ok) in results {
        report.add_dual("G", sel.to_string(), ok);
    }
}

/// Shared tail: lift by `F`, verify, optionally augment by the tails.
fn finish(
    family: &str,
    g: VectorialFunction,
    set: &DefiningSet,
    poly: &ReducedPolynomial,
    tails: &[ReducedPolynomial],
    mut pre: ConstructionReport,
) -> Result<FamilyOutcome> {
    let (h, lifted) = vec_bent_lift(&g, set, poly)?;
    let mut report = lifted;
    report.family = family.into();
    report.k = pre.k;
    report.r = pre.r;
    report.checks.splice(0..0, pre.checks.drain(..));
    let mut duals = std::mem::take(&mut pre.duals);
    duals.append(&mut report.duals);
    report.duals = duals;
    report.duals_match = Some(report.duals.iter().all(|d| d.matches));
    report.predicted_degree = pre.predicted_degree;
    if let Some(d) = report.predicted_degree {
        report.check(
            "degree",
            d == report.measured_degree,
            format!("predicted {d}, measured {}", report.measured_degree),
        );
    }
    let augmented = if tails.is_empty() {
        None
    } else {
        let (hat, aug) = vec_plateaued_lift(&g, set, tails)?;
        report.t = tails.len() as u64;
        report.checks.extend(aug.checks.into_iter().map(|mut c| {
            c.name = format!("augmented: {}", c.name);
            c
        }));
        report.augmented = aug.augmented;
        Some(hat)
    };
    Ok(FamilyOutcome {
        g,
        h,
        augmented,
        report,
    })
}

/// Degree claim for a quadratic `G`: `max(2, d)` when `U` is independent.
fn quadratic_degree_claim(set: &DefiningSet, poly: &ReducedPolynomial) -> Option<u64> {
    set.is_independent().then(|| poly.degree().max(2) as u64)
}

/// `H(x) = x^(2^k+1) + F(Tr(u_1 x), ..., Tr(u_τ x))` as an `(n, k)`-function,
/// `n = 2k`, with `u_i · ū_j ∈ GF(2^k)*`.
///
/// The component duals of `G` are checked against
/// `Tr^k_1(λ^-1 x^(2^k+1)) + 1`.
pub fn kasami_family(field: &FieldSpec, params: &KasamiParams) -> Result<FamilyOutcome> {
    let k = half_degree(field)?;
    let tau = params.poly.tau();
    check_tau(tau, k)?;
    let set = resolve(&params.u, tau, || kasami_auto_u(field, tau))?;
    check_u_condition(field, &set, k, field.n())?;
    let e = (1u64 << k) + 1;
    let g = VectorialFunction::power_sum(field, k, &[e])?;

    let mut pre = ConstructionReport {
        k: Some(k as u64),
        predicted_degree: quadratic_degree_claim(&set, &params.poly),
        ..Default::default()
    };
    let powers = field.power_table(e);
    record_duals(&mut pre, &g, |lambda| {
        let inv = field.inverse(lambda).expect("nonzero");
        BooleanFunction::from_fn(field, |x| {
            field.subfield_trace(field.mul(inv, powers[x as usize]), k) == 0
        })
    });
    finish("kasami", g, &set, &params.poly, &params.tails, pre)
}

/// Exponents `(i·2^(k-r) + 1)(2^k - 1) + 1` for `i = 1, ..., 2^r - 1`,
/// reduced mod `2^n - 1`.
pub fn niho_exponents(n: u32, r: u32) -> Vec<u64> {
    let k = n / 2;
    let order = (1u64 << n) - 1;
    (1..1u64 << r)
        .map(|i| ((i << (k - r)) + 1) * ((1u64 << k) - 1) % order + 1)
        .map(|d| d % order)
        .collect()
}

fn check_niho_parameters(field: &FieldSpec, r: u32) -> Result<u32> {
    let k = half_degree(field)?;
    if !(1 < r && r < k) || r.gcd(&k) != 1 {
        return Err(Error::Parameters(format!(
            "need 1 < r < k and gcd(r, k) = 1 (r = {r}, k = {k})"
        )));
    }
    Ok(k)
}

/// The Niho sum `G` as an `(n, n/2)`-function; fails if some value leaves
/// the subfield.
pub fn niho_function(field: &FieldSpec, r: u32) -> Result<VectorialFunction> {
    let k = check_niho_parameters(field, r)?;
    let whole = VectorialFunction::power_sum(field, field.n(), &niho_exponents(field.n(), r))?;
    VectorialFunction::new(field, k, whole.outputs().to_vec()).map_err(|e| match e {
        Error::NotInSubfield { input, value, .. } => {
            Error::Verification(format!("G({input:#x}) = {value:#x} is outside GF(2^{k})"))
        }
        other => other,
    })
}

/// Closed-form dual of the `λ = 1` component:
/// `Tr^k_1((u(1 + x + x̄) + u^(2^(n-r)) + x̄)·(1 + x + x̄)^s)` with
/// `(2^r - 1)·s ≡ 1 mod 2^k - 1`, for a `u` with `u + ū = 1`. Here
/// `Tr^k_1(y) = y + y^2 + ... + y^(2^(k-1))` is applied as written; the
/// result is reported as a function only if every value is 0 or 1.
pub fn niho_dual_one(field: &FieldSpec, r: u32, u: Element) -> Result<BooleanFunction> {
    let k = check_niho_parameters(field, r)?;
    field.check(u)?;
    if u ^ field.frobenius(u, k) != 1 {
        return Err(Error::Parameters(format!("{u:#x} + conj({u:#x}) != 1")));
    }
    let s = mod_inverse((1u64 << r) - 1, (1u64 << k) - 1).expect("gcd(r, k) = 1");
    let ur = field.frobenius(u, field.n() - r);
    let mut bad = None;
    let f = BooleanFunction::from_fn(field, |x| {
        let xb = field.frobenius(x, k);
        let base = 1 ^ x ^ xb;
        let y = field.mul(field.mul(u, base) ^ ur ^ xb, field.pow(base, s));
        let t = field.subfield_trace(y, k);
        if t > 1 && bad.is_none() {
            bad = Some((x, t));
        }
        t == 1
    });
    match bad {
        None => Ok(f),
        Some((x, t)) => Err(Error::Verification(format!(
            "closed-form dual takes the value {t:#x} at {x:#x}"
        ))),
    }
}

/// Least `u` with `u + ū = 1`.
pub fn niho_default_u(field: &FieldSpec) -> Result<Element> {
    let k = half_degree(field)?;
    (0..field.size() as u32)
        .find(|&u| u ^ field.frobenius(u, k) == 1)
        .ok_or_else(|| Error::Parameters("no u with u + conj(u) = 1".into()))
}

/// `H = G + F(Tr(u_1 x), ..., Tr(u_τ x))` for the Niho sum `G`, `n = 2k`,
/// `1 < r < k`, `gcd(r, k) = 1`, and `U` part of a basis of `GF(2^k)`.
///
/// Component duals are checked as `G*_λ(x) = G*_1(δ^-1 x)` with
/// `λ = δ^(d_t)`, `d_t = (2^k - 1)(t·2^(k-r) + 1) + 1`, `t = 2^(r-1) - 1`.
pub fn niho_family(field: &FieldSpec, params: &NihoParams) -> Result<FamilyOutcome> {
    let r = params.r;
    let k = check_niho_parameters(field, r)?;
    let n = field.n();
    let tau = params.poly.tau();
    check_tau(tau, k)?;
    let set = resolve(&params.u, tau, || niho_auto_u(field, tau))?;
    if let Some(&u) = set.elements().iter().find(|&&u| !field.in_subfield(u, k)) {
        return Err(Error::Precondition(format!("{u:#x} is not in GF(2^{k})")));
    }
    if !set.is_independent() {
        return Err(Error::Precondition("U is not linearly independent".into()));
    }
    let g = niho_function(field, r)?;

    let mut pre = ConstructionReport {
        k: Some(k as u64),
        r: Some(r as u64),
        ..Default::default()
    };
    pre.check("G takes values in GF(2^k)", true, "");
    let order = (1u64 << n) - 1;
    let t = (1u64 << (r - 1)) - 1;
    let dt = ((1u64 << k) - 1) * ((t << (k - r)) + 1) + 1;
    let dt_inv = mod_inverse(dt % order, order);
    pre.check(
        "gcd(d_t, 2^n - 1) = 1",
        dt_inv.is_some(),
        format!("d_t = {dt}"),
    );
    let dt_inv = dt_inv.ok_or_else(|| Error::Verification(format!("gcd({dt}, {order}) != 1")))?;

    let u0 = niho_default_u(field)?;
    let one_dual = niho_dual_one(field, r, u0)?;
    let lambdas = field.subfield_elements(k)?;
    let deltas: Vec<(Element, Element)> = lambdas[1..]
        .iter()
        .map(|&l| (l, field.pow(l, dt_inv)))
        .collect();
    let delta_ok = deltas
        .iter()
        .all(|&(l, d)| field.in_subfield(d, k) && field.pow(d, dt) == l);
    pre.check("δ in GF(2^k) with δ^(d_t) = λ", delta_ok, "");
    record_duals(&mut pre, &g, |lambda| {
        let d = deltas
            .iter()
            .find(|(l, _)| *l == lambda)
            .expect("λ listed")
            .1;
        one_dual.scaled(field.inverse(d).expect("nonzero"))
    });

    let deg_g = g.degree() as u64;
    let d = params.poly.degree() as u64;
    pre.predicted_degree = (d != deg_g).then_some(deg_g.max(d));
    finish("niho", g, &set, &params.poly, &params.tails, pre)
}

fn gold_k(field: &FieldSpec) -> Result<u32> {
    let n = field.n();
    if !n.is_multiple_of(4) || n < 8 {
        return Err(Error::Parameters(format!(
            "need n = 4k with k >= 2, got n = {n}"
        )));
    }
    Ok(n / 4)
}

/// `ω = ϱ^((2^k - 1)(2^(2k) + 1))` for the field's primitive element `ϱ`.
pub fn gold_omega(field: &FieldSpec) -> Result<Element> {
    let k = gold_k(field)? as u64;
    Ok(field.pow(
        field.generator(),
        ((1u64 << k) - 1) * ((1u64 << (2 * k)) + 1),
    ))
}

/// `G(x) = Tr^n_k(ω x^(2^k+1))`, `n = 4k`, `k >= 2`, and the component
/// duals `G*_λ(x) = G_λ0(δ^-1 x)` where `λ0 = (ω + ω^(2^k))^-1` and
/// `δ^(2^k+1) = λ/λ0`; `G_λ0` is checked to be self-dual.
pub fn gold_like_family(field: &FieldSpec, params: &GoldParams) -> Result<FamilyOutcome> {
    let k = gold_k(field)?;
    let n = field.n();
    let tau = params.poly.tau();
    check_tau(tau, k)?;
    let set = resolve(&params.u, tau, || gold_auto_u(field, tau))?;
    check_u_condition(field, &set, k, 2 * k)?;

    let mut pre = ConstructionReport {
        k: Some(k as u64),
        predicted_degree: quadratic_degree_claim(&set, &params.poly),
        ..Default::default()
    };
    let omega = gold_omega(field)?;
    let e = (1u64 << k) + 1;
    let on_circle = omega != 1 && field.in_subfield(omega, 2 * k) && field.pow(omega, e) == 1;
    pre.check(
        "ω in the unit circle minus 1",
        on_circle,
        format!("ω = {omega:#x}"),
    );
    let order = (1u64 << n) - 1;
    let gcd = e.gcd(&order);
    pre.check(
        "ω outside the subgroup generated by ϱ^(2^k+1)",
        field.pow(omega, order / gcd) != 1,
        "",
    );
    let conj_sum = omega ^ field.frobenius(omega, k);
    pre.check("ω + ω^(2^k) ≠ 0", conj_sum != 0, "");
    let lambda0 = field
        .inverse(conj_sum)
        .map_err(|_| Error::Verification("ω + ω^(2^k) = 0".into()))?;
    pre.check(
        "λ0 in GF(2^k)* with Tr(λ0) = 1",
        field.in_subfield(lambda0, k) && field.subfield_trace(lambda0, k) == 1,
        format!("λ0 = {lambda0:#x}"),
    );

    let powers = field.power_table(e);
    let outputs: Vec<Element> = powers
        .iter()
        .map(|&p| field.trace(field.mul(omega, p), k).expect("k divides n"))
        .collect();
    let g = VectorialFunction::new(field, k, outputs)?;
    let g0 = g.component(Selector::lambda(lambda0))?;
    pre.check("G_λ0 self-dual", g0.dual().is_ok_and(|d| d == g0), "");

    let inv0 = field.inverse(lambda0)?;
    let root = mod_inverse(e, (1u64 << k) - 1).expect("gcd(2^k + 1, 2^k - 1) = 1");
    let mut delta_ok = true;
    let mut deltas = Vec::new();
    for &l in &field.subfield_elements(k)?[1..] {
        let ratio = field.mul(l, inv0);
        let d = field.pow(ratio, root);
        delta_ok &= field.in_subfield(d, k) && field.pow(d, e) == ratio;
        deltas.push((l, d));
    }
    pre.check("δ in GF(2^k) with δ^(2^k+1) = λ/λ0", delta_ok, "");
    record_duals(&mut pre, &g, |lambda| {
        let d = deltas
            .iter()
            .find(|(l, _)| *l == lambda)
            .expect("λ listed")
            .1;
        g0.scaled(field.inverse(d).expect("nonzero"))
    });
    finish("gold", g, &set, &params.poly, &params.tails, pre)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(22, 63), Some(43));
        assert_eq!(mod_inverse(2, 4), None);
    }

    #[test]
    fn niho_six() {
        assert_eq!(niho_exponents(6, 2), vec![22, 36, 50]);
        let field = FieldSpec::standard(6).unwrap();
        let g = niho_function(&field, 2).unwrap();
        assert!(g.is_vectorial_bent().unwrap().holds);
        let p = NihoParams {
            r: 2,
            u: USpec::Auto,
            poly: "X1*X2*X3+X2".parse().unwrap(),
            tails: vec![],
        };
        let out = niho_family(&field, &p).unwrap();
        assert!(out.report.passed(), "{:?}", out.report.failures());
        assert_eq!(out.report.duals.len(), 14);
    }

    #[test]
    fn niho_rejects_parameters() {
        let field = FieldSpec::standard(8).unwrap();
        let p = NihoParams {
            r: 2,
            u: USpec::Auto,
            poly: ReducedPolynomial::zero(1),
            tails: vec![],
        };
        assert!(matches!(niho_family(&field, &p), Err(Error::Parameters(_))));
    }

    #[test]
    fn kasami_four() {
        let field = FieldSpec::standard(4).unwrap();
        let p = KasamiParams {
            u: USpec::Auto,
            poly: "X1*X2".parse().unwrap(),
            tails: vec!["X1".parse::<ReducedPolynomial>().unwrap().widen(2).unwrap()],
        };
        let out = kasami_family(&field, &p).unwrap();
        assert!(out.report.passed(), "{:?}", out.report.failures());
        assert_eq!(out.report.predicted_degree, Some(2));
        assert_eq!(out.output().output_dim(), 3);
        let bad = KasamiParams {
            u: USpec::Explicit(DefiningSet::new(vec![1, 2]).unwrap()),
            ..p
        };
        assert_eq!(
            kasami_family(&field, &bad).unwrap_err(),
            Error::UCondition { i: 1, j: 2 }
        );
    }

    #[test]
    fn gold_eight() {
        let field = FieldSpec::standard(8).unwrap();
        assert_eq!(gold_omega(&field).unwrap(), field.pow(2, 51));
        let p = GoldParams {
            u: USpec::Auto,
            poly: "X1*X2".parse().unwrap(),
            tails: vec![],
        };
        let out = gold_like_family(&field, &p).unwrap();
        assert!(out.report.passed(), "{:?}", out.report.failures());
        assert_eq!(out.report.measured_degree, 2);
    }
}
