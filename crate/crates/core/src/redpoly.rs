//! Reduced (multilinear) polynomials over F₂ and their composition with
//! trace coordinates `x ↦ Tr(u_i·x)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};
use crate::gf2n::{Element, FieldSpec};
use crate::linalg;

/// Largest supported variable count.
pub const MAX_VARS: u32 = 31;

/// `F(X_1, ..., X_τ) = Σ_I ∏_{i ∈ I} X_i`, each monomial stored as the bitmask
/// of its variables (bit `i-1` for `X_i`; the empty mask is the constant 1).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedPolynomial {
    tau: u32,
    monomials: BTreeSet<u32>,
}

impl ReducedPolynomial {
    pub fn zero(tau: u32) -> Self {
        ReducedPolynomial {
            tau,
            monomials: BTreeSet::new(),
        }
    }

    pub fn one(tau: u32) -> Self {
        Self::from_monomials(tau, [0]).expect("constant fits")
    }

    /// Build from variable bitmasks; repeated monomials cancel.
    pub fn from_monomials(tau: u32, monomials: impl IntoIterator<Item = u32>) -> Result<Self> {
        if tau > MAX_VARS {
            return Err(Error::Parameters(format!("at most {MAX_VARS} variables")));
        }
        let mut set = BTreeSet::new();
        for m in monomials {
            if tau < 32 && m >> tau != 0 {
                return Err(Error::Arity {
                    expected: tau as usize,
                    got: 32 - m.leading_zeros() as usize,
                });
            }
            if !set.insert(m) {
                set.remove(&m);
            }
        }
        Ok(ReducedPolynomial {
            tau,
            monomials: set,
        })
    }

    /// Build from 1-based variable lists, e.g. `[[1, 2], [3]]` for `X1*X2 + X3`.
    pub fn from_terms(tau: u32, terms: &[&[u32]]) -> Result<Self> {
        let mut masks = Vec::with_capacity(terms.len());
        for term in terms {
            let mut mask = 0u32;
            for &i in term.iter() {
                if i == 0 || i > tau {
                    return Err(Error::Arity {
                        expected: tau as usize,
                        got: i as usize,
                    });
                }
                mask |= 1 << (i - 1);
            }
            masks.push(mask);
        }
        Self::from_monomials(tau, masks)
    }

    /// Parse with an explicit variable count.
    pub fn parse_with_arity(s: &str, tau: u32) -> Result<Self> {
        let parsed: ReducedPolynomial = s.parse()?;
        if parsed.tau > tau {
            return Err(Error::Arity {
                expected: tau as usize,
                got: parsed.tau as usize,
            });
        }
        Ok(ReducedPolynomial {
            tau,
            monomials: parsed.monomials,
        })
    }

    pub fn tau(&self) -> u32 {
        self.tau
    }

    pub fn monomials(&self) -> impl Iterator<Item = u32> + '_ {
        self.monomials.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Same monomials over `tau` variables.
    pub fn widen(&self, tau: u32) -> Result<Self> {
        Self::from_monomials(tau, self.monomials())
    }

    /// Evaluate at the point whose bit `i-1` is `X_i`.
    #[inline]
    pub fn eval_bits(&self, w: u32) -> bool {
        self.monomials.iter().filter(|&&m| m & w == m).count() & 1 == 1
    }

    pub fn eval(&self, point: &[bool]) -> Result<bool> {
        if point.len() != self.tau as usize {
            return Err(Error::Arity {
                expected: self.tau as usize,
                got: point.len(),
            });
        }
        let w = point
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &b)| acc | (b as u32) << i);
        Ok(self.eval_bits(w))
    }

    /// Largest monomial size; 0 for constants and the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.monomials
            .iter()
            .map(|m| m.count_ones())
            .max()
            .unwrap_or(0)
    }

    /// Sum over F₂: symmetric difference of the monomial sets.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.tau != other.tau {
            return Err(Error::Arity {
                expected: self.tau as usize,
                got: other.tau as usize,
            });
        }
        Ok(ReducedPolynomial {
            tau: self.tau,
            monomials: self
                .monomials
                .symmetric_difference(&other.monomials)
                .copied()
                .collect(),
        })
    }

    /// Pseudo-random polynomial of degree at most `max_degree`: each monomial
    /// of size `<= max_degree` is included with probability 1/2. Deterministic
    /// in `seed`.
    pub fn random(tau: u32, max_degree: u32, seed: u64) -> Result<Self> {
        if max_degree > tau || tau > 20 {
            return Err(Error::Parameters(format!(
                "random polynomial needs max_degree <= tau <= 20 (tau = {tau}, max_degree = {max_degree})"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let monomials = (0..1u32 << tau)
            .filter(|m| m.count_ones() <= max_degree)
            .filter(|_| rng.gen::<bool>())
            .collect::<Vec<_>>();
        Self::from_monomials(tau, monomials)
    }

    /// Replace each variable `X_i` by the Boolean function `args[i-1]`.
    pub fn substitute(&self, args: &[BooleanFunction]) -> Result<BooleanFunction> {
        if args.len() != self.tau as usize {
            return Err(Error::Arity {
                expected: self.tau as usize,
                got: args.len(),
            });
        }
        let field = match args.first() {
            Some(f) => f.field().clone(),
            None => return Err(Error::Parameters("no arguments to substitute".into())),
        };
        if args.iter().any(|a| a.field() != &field) {
            return Err(Error::FieldMismatch);
        }
        Ok(BooleanFunction::from_fn(&field, |x| {
            let w = args
                .iter()
                .enumerate()
                .fold(0u32, |acc, (i, f)| acc | (f.get(x) as u32) << i);
            self.eval_bits(w)
        }))
    }
}

impl fmt::Display for ReducedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        // degree-lexicographic, constant last
        let mut ms: Vec<u32> = self.monomials().collect();
        ms.sort_by_key(|&m| (m == 0, m.count_ones(), m.reverse_bits()));
        let terms: Vec<String> = ms
            .iter()
            .map(|&m| {
                if m == 0 {
                    "1".to_string()
                } else {
                    (0..32)
                        .filter(|i| m >> i & 1 == 1)
                        .map(|i| format!("X{}", i + 1))
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

impl FromStr for ReducedPolynomial {
    type Err = Error;

    /// `"X1*X3 + X2 + 1"`; `"0"` is the zero polynomial. Errors carry the
    /// 1-based column of the offending character.
    fn from_str(s: &str) -> Result<Self> {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
        .polynomial()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::parse(1, self.pos + 1, message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn polynomial(mut self) -> Result<ReducedPolynomial> {
        let mut monomials = Vec::new();
        let mut tau = 0;
        loop {
            self.skip_ws();
            let (mask, top) = self.monomial()?;
            tau = tau.max(top);
            monomials.extend(mask);
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => self.pos += 1,
                Some(c) => {
                    return Err(self.err(format!("expected '+' or end, found {:?}", c as char)))
                }
            }
        }
        ReducedPolynomial::from_monomials(tau, monomials)
    }

    /// A constant or a product of variables; `None` for the literal 0.
    fn monomial(&mut self) -> Result<(Option<u32>, u32)> {
        match self.peek() {
            Some(b'0') => {
                self.pos += 1;
                Ok((None, 0))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok((Some(0), 0))
            }
            Some(b'X') | Some(b'x') => {
                let mut mask = 0u32;
                let mut top = 0;
                loop {
                    let i = self.variable()?;
                    mask |= 1 << (i - 1);
                    top = top.max(i);
                    self.skip_ws();
                    if self.peek() == Some(b'*') {
                        self.pos += 1;
                        self.skip_ws();
                    } else {
                        break;
                    }
                }
                Ok((Some(mask), top))
            }
            Some(c) => Err(self.err(format!("expected a monomial, found {:?}", c as char))),
            None => Err(self.err("expected a monomial, found end of input")),
        }
    }

    fn variable(&mut self) -> Result<u32> {
        match self.peek() {
            Some(b'X') | Some(b'x') => self.pos += 1,
            _ => return Err(self.err("expected a variable X<i>")),
        }
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a variable index"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match text.parse::<u32>() {
            Ok(i) if (1..=MAX_VARS).contains(&i) => Ok(i),
            _ => {
                self.pos = start;
                Err(self.err(format!("variable index must be in 1..={MAX_VARS}")))
            }
        }
    }
}

/// The defining set `{u_1, ..., u_τ}`: pairwise distinct field elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DefiningSet {
    elements: Vec<Element>,
}

impl DefiningSet {
    pub fn new(elements: Vec<Element>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &u in &elements {
            if !seen.insert(u) {
                return Err(Error::RepeatedElement(u));
            }
        }
        Ok(DefiningSet { elements })
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Verified F₂-linear independence.
    pub fn is_independent(&self) -> bool {
        linalg::rank(&self.elements) == self.elements.len()
    }

    /// The distinct elements of the F₂-span, ascending.
    pub fn span(&self) -> Vec<Element> {
        let mut all = linalg::combinations(&self.elements);
        all.sort_unstable();
        all.dedup();
        all
    }

    pub fn in_span(&self, b: Element) -> bool {
        let mut e = linalg::Echelon::default();
        for &u in &self.elements {
            e.insert(u);
        }
        e.reduce(b) == 0
    }

    /// Elements in ascending order.
    pub fn canonical(&self) -> Self {
        let mut elements = self.elements.clone();
        elements.sort_unstable();
        DefiningSet { elements }
    }

    pub fn to_hex_list(&self) -> String {
        self.elements
            .iter()
            .map(|u| format!("{u:x}"))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parse a comma-separated hex list.
    pub fn parse_hex_list(s: &str) -> Result<Self> {
        let mut elements = Vec::new();
        let mut column = 1;
        for part in s.split(',') {
            let t = part.trim();
            let digits = t.strip_prefix("0x").unwrap_or(t);
            let v = u32::from_str_radix(digits, 16)
                .map_err(|_| Error::parse(1, column, format!("invalid hex element {t:?}")))?;
            elements.push(v);
            column += part.len() + 1;
        }
        Self::new(elements)
    }
}

/// `x ↦ F(Tr(u_1·x), ..., Tr(u_τ·x))`.
pub fn compose_traces(
    poly: &ReducedPolynomial,
    set: &DefiningSet,
    field: &FieldSpec,
) -> Result<BooleanFunction> {
    if set.len() != poly.tau() as usize {
        return Err(Error::Arity {
            expected: poly.tau() as usize,
            got: set.len(),
        });
    }
    for &u in set.elements() {
        field.check(u)?;
    }
    let forms: Vec<u32> = set
        .elements()
        .iter()
        .map(|&u| field.trace_form(u))
        .collect();
    // tabulate F once when it is small
    let table: Option<Vec<bool>> =
        (poly.tau() <= 16).then(|| (0..1u32 << poly.tau()).map(|w| poly.eval_bits(w)).collect());
    Ok(BooleanFunction::from_fn(field, |x| {
        let w = forms.iter().enumerate().fold(0u32, |acc, (i, &form)| {
            acc | ((x & form).count_ones() & 1) << i
        });
        match &table {
            Some(t) => t[w as usize],
            None => poly.eval_bits(w),
        }
    }))
}
