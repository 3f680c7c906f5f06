//! Vanishing second derivatives along a defining set.
//!
//! `g` has the property for `U = {u_1, ..., u_τ}` when `D_{u_i} D_{u_j} g = 0`
//! for every `i < j`. A single element (or none) satisfies it vacuously.

use rayon::prelude::*;

use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};
use crate::gf2n::Element;
use crate::linalg;
use crate::redpoly::DefiningSet;

/// Indices (0-based) of a pair with a nonvanishing second derivative, and a
/// point where it is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairFailure {
    pub i: usize,
    pub j: usize,
    pub witness: Element,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropertyVerdict {
    pub holds: bool,
    pub failure: Option<PairFailure>,
}

fn first_one(f: &BooleanFunction) -> Option<Element> {
    f.words()
        .iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| (i * 64) as u32 + w.trailing_zeros())
}

/// Check every pair `i < j`; the first failing pair in lexicographic order is
/// reported.
pub fn satisfies_p(g: &BooleanFunction, set: &DefiningSet) -> PropertyVerdict {
    let u = set.elements();
    let derivs: Vec<BooleanFunction> = u.iter().map(|&a| g.derivative(a)).collect();
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            let dd = derivs[j].derivative(u[i]);
            if let Some(x) = first_one(&dd) {
                return PropertyVerdict {
                    holds: false,
                    failure: Some(PairFailure { i, j, witness: x }),
                };
            }
        }
    }
    PropertyVerdict {
        holds: true,
        failure: None,
    }
}

fn require_property(g: &BooleanFunction, set: &DefiningSet) -> Result<()> {
    match satisfies_p(g, set).failure {
        None => Ok(()),
        Some(PairFailure { i, j, witness }) => Err(Error::Precondition(format!(
            "D_u{} D_u{} g is nonzero at {witness:#x}",
            i + 1,
            j + 1
        ))),
    }
}

/// `D_a D_b g = 0` for all `a, b` in the span of `U`. Fails when `g` does not
/// have the property for `U` to begin with.
pub fn span_closure(g: &BooleanFunction, set: &DefiningSet) -> Result<bool> {
    require_property(g, set)?;
    let span = set.span();
    let derivs: Vec<BooleanFunction> = span.iter().map(|&b| g.derivative(b)).collect();
    Ok(span
        .par_iter()
        .enumerate()
        .all(|(ia, &a)| derivs[ia + 1..].iter().all(|db| db.derivative(a).is_zero())))
}

/// First weight vector `w` (bit i is `w_i`) at which
/// `g(x + Σ w_i u_i) = g(x) + Σ w_i D_{u_i} g(x)` fails for some `x`.
pub fn shift_decomposition_failure(g: &BooleanFunction, set: &DefiningSet) -> Option<u32> {
    let u = set.elements();
    let derivs: Vec<BooleanFunction> = u.iter().map(|&a| g.derivative(a)).collect();
    let shifts = linalg::combinations(u);
    (1..shifts.len() as u32).find(|&w| {
        let mut rhs = g.clone();
        for (i, d) in derivs.iter().enumerate() {
            if w >> i & 1 == 1 {
                rhs = rhs.xor(d).expect("same field");
            }
        }
        g.shifted(shifts[w as usize]) != rhs
    })
}

/// Whether the shift identity holds for every weight vector and every `x`.
pub fn shift_decomposition(g: &BooleanFunction, set: &DefiningSet) -> bool {
    shift_decomposition_failure(g, set).is_none()
}

/// `h(x) = g(x)·g(x + b)` for `b` in the span of `U`; `h` keeps the property,
/// which is asserted before returning.
pub fn product_shift(
    g: &BooleanFunction,
    set: &DefiningSet,
    b: Element,
) -> Result<BooleanFunction> {
    require_property(g, set)?;
    if !set.in_span(b) {
        return Err(Error::Precondition(format!(
            "{b:#x} is not in the span of U"
        )));
    }
    let h = g.and(&g.shifted(b))?;
    assert!(
        satisfies_p(&h, set).holds,
        "product shift by {b:#x} lost the property"
    );
    Ok(h)
}

/// Search controls for [`find_defining_sets`].
#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Keep at most this many sets (all are still counted).
    pub limit: Option<usize>,
    /// Stop after visiting this many search nodes.
    pub node_budget: u64,
    /// Candidate pool; all nonzero elements when `None`.
    pub candidates: Option<Vec<Element>>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            limit: None,
            node_budget: 10_000_000,
            candidates: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Qualifying sets in lexicographic order, each sorted ascending.
    pub sets: Vec<DefiningSet>,
    /// Number of qualifying sets seen, including those beyond the limit.
    pub count: u64,
    pub truncated: bool,
    /// False when the node budget ran out before the search finished.
    pub complete: bool,
    pub nodes: u64,
}

/// All `τ`-subsets of the candidate pool with the property, found as
/// `τ`-cliques of the graph whose edges are the vanishing pairs.
pub fn find_defining_sets(
    g: &BooleanFunction,
    tau: usize,
    options: &SearchOptions,
) -> Result<SearchOutcome> {
    if tau < 2 {
        return Err(Error::Parameters(format!(
            "search needs tau >= 2, got {tau}"
        )));
    }
    let field = g.field();
    let mut pool: Vec<Element> = match &options.candidates {
        Some(c) => {
            for &u in c {
                field.check(u)?;
            }
            c.clone()
        }
        None => (1..field.size() as u32).collect(),
    };
    pool.sort_unstable();
    pool.dedup();
    let derivs: Vec<BooleanFunction> = pool.par_iter().map(|&a| g.derivative(a)).collect();
    // adj[i] holds the later candidates j > i forming a vanishing pair with i
    let adj: Vec<Vec<usize>> = (0..pool.len())
        .into_par_iter()
        .map(|i| {
            (i + 1..pool.len())
                .filter(|&j| derivs[j].derivative(pool[i]).is_zero())
                .collect()
        })
        .collect();
    let words = pool.len().div_ceil(64);
    let mut bits = vec![vec![0u64; words]; pool.len()];
    for (i, row) in adj.iter().enumerate() {
        for &j in row {
            bits[i][j / 64] |= 1 << (j % 64);
        }
    }

    let mut search = Clique {
        pool: &pool,
        bits: &bits,
        tau,
        limit: options.limit,
        budget: options.node_budget,
        nodes: 0,
        count: 0,
        sets: Vec::new(),
        stack: Vec::with_capacity(tau),
        exhausted: false,
    };
    for i in 0..pool.len() {
        if search.exhausted {
            break;
        }
        search.extend_from(i, adj[i].clone());
    }
    let truncated = options.limit.is_some_and(|l| search.count > l as u64);
    Ok(SearchOutcome {
        sets: search.sets,
        count: search.count,
        truncated,
        complete: !search.exhausted,
        nodes: search.nodes,
    })
}

struct Clique<'a> {
    pool: &'a [Element],
    bits: &'a [Vec<u64>],
    tau: usize,
    limit: Option<usize>,
    budget: u64,
    nodes: u64,
    count: u64,
    sets: Vec<DefiningSet>,
    stack: Vec<usize>,
    exhausted: bool,
}

impl Clique<'_> {
    fn extend_from(&mut self, v: usize, candidates: Vec<usize>) {
        if self.nodes >= self.budget {
            self.exhausted = true;
            return;
        }
        self.nodes += 1;
        self.stack.push(v);
        if self.stack.len() == self.tau {
            self.count += 1;
            if self.limit.is_none_or(|l| self.sets.len() < l) {
                let elements = self.stack.iter().map(|&i| self.pool[i]).collect();
                self.sets
                    .push(DefiningSet::new(elements).expect("distinct candidates"));
            }
        } else if candidates.len() + self.stack.len() >= self.tau {
            for (pos, &w) in candidates.iter().enumerate() {
                if self.exhausted {
                    break;
                }
                let next: Vec<usize> = candidates[pos + 1..]
                    .iter()
                    .copied()
                    .filter(|&x| self.bits[w][x / 64] >> (x % 64) & 1 == 1)
                    .collect();
                self.extend_from(w, next);
            }
        }
        self.stack.pop();
    }
}
