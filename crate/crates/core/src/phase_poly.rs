//! Phase polynomials of transversal T layers on CSS codes.
//!
//! For generators R_1..R_m (stabilizer rows, then logical X rows) the basis
//! state reached by the combination m is x(m) = ⊕ m_t R_t, and the layer
//! multiplies it by ω^{F(m)} with F(m) = Σ_v c_v x_v(m) mod 8. Expanding the
//! parity of a sum gives the multilinear form
//!
//! F = Σ W(t) m_t + 6 Σ W(t,t') m_t m_t' + 4 Σ W(t,t',t'') m_t m_t' m_t''
//!
//! where W(S) is the signed weight of the common support of the rows in S.
//! Terms of degree four and up carry a factor of 8.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::{Bipartition, Parity};
use crate::css::{logical_label, CssCode, LogicalBasis};
use crate::error::{Error, Result};
use crate::gf2::BitVec;

/// Exponents of the transversal layer: qubit v receives T^{c_v}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignVector {
    pub c: Vec<i8>,
}

impl SignVector {
    pub fn new(c: Vec<i8>) -> Self {
        SignVector { c }
    }

    /// c_v = +1 on even qubits and -1 on odd ones, read through the code's
    /// column map.
    pub fn from_bipartition(b: &Bipartition, qubit_map: &[usize]) -> Result<Self> {
        let mut c = Vec::with_capacity(qubit_map.len());
        for &q in qubit_map {
            let p = b.parity.get(q).ok_or(Error::DimensionMismatch {
                expected: q + 1,
                found: b.parity.len(),
            })?;
            c.push(if *p == Parity::Even { 1 } else { -1 });
        }
        Ok(SignVector { c })
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn negated(&self) -> SignVector {
        SignVector {
            c: self.c.iter().map(|x| -x).collect(),
        }
    }

    pub fn exponent(&self, v: usize) -> u8 {
        (self.c[v] as i32).rem_euclid(8) as u8
    }

    /// Σ_{v ∈ x} c_v mod 8.
    pub fn weight(&self, x: &BitVec) -> u8 {
        (x.iter_ones().map(|v| self.exponent(v) as u32).sum::<u32>() % 8) as u8
    }
}

// ---------------------------------------------------------------------------
// Variables and monomials.

/// Stabilizer variables sort before logical ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    B(usize),
    U(usize),
}

impl Var {
    pub fn is_stabilizer(self) -> bool {
        matches!(self, Var::B(_))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::B(i) => write!(f, "b{}", i + 1),
            Var::U(i) => write!(f, "u{}", i + 1),
        }
    }
}

impl FromStr for Var {
    type Err = Error;
    fn from_str(s: &str) -> Result<Var> {
        let bad = || Error::Malformed(format!("bad variable `{s}`"));
        let (kind, idx) = s.split_at(s.char_indices().nth(1).map(|(i, _)| i).ok_or_else(bad)?);
        let i: usize = idx.parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        match kind {
            "b" => Ok(Var::B(i - 1)),
            "u" => Ok(Var::U(i - 1)),
            _ => Err(bad()),
        }
    }
}

/// Sorted, duplicate-free product of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<Var>);

impl Monomial {
    pub fn new(mut vars: Vec<Var>) -> Self {
        vars.sort();
        vars.dedup();
        Monomial(vars)
    }

    pub fn vars(&self) -> &[Var] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn has_stabilizer(&self) -> bool {
        self.0.iter().any(|v| v.is_stabilizer())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.0.iter().map(Var::to_string).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    vars: Vec<String>,
    coeff: u8,
}

#[derive(Serialize, Deserialize)]
struct MonomialsJson {
    monomials: Vec<TermJson>,
}

fn terms_to_json(terms: &BTreeMap<Monomial, u8>) -> MonomialsJson {
    MonomialsJson {
        monomials: terms
            .iter()
            .map(|(m, &coeff)| TermJson {
                vars: m.0.iter().map(Var::to_string).collect(),
                coeff,
            })
            .collect(),
    }
}

fn terms_from_json(doc: MonomialsJson) -> Result<BTreeMap<Monomial, u8>> {
    let mut out = BTreeMap::new();
    for t in doc.monomials {
        let vars = t
            .vars
            .iter()
            .map(|v| v.parse())
            .collect::<Result<Vec<Var>>>()?;
        if vars.is_empty() {
            return Err(Error::Malformed("constant term in polynomial".into()));
        }
        let m = Monomial::new(vars);
        let c = (out.get(&m).copied().unwrap_or(0) + t.coeff % 8) % 8;
        out.insert(m, c);
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

// ---------------------------------------------------------------------------
// Phase polynomial.

/// Multilinear polynomial mod 8 over stabilizer variables b_1..b_r and
/// logical variables u_1..u_k, without constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhasePolynomial {
    pub num_b: usize,
    pub num_u: usize,
    /// Nonzero coefficients only.
    pub terms: BTreeMap<Monomial, u8>,
}

impl PhasePolynomial {
    pub fn zero(num_b: usize, num_u: usize) -> Self {
        PhasePolynomial {
            num_b,
            num_u,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        num_b: usize,
        num_u: usize,
        terms: impl IntoIterator<Item = (Vec<Var>, u8)>,
    ) -> Self {
        let mut p = PhasePolynomial::zero(num_b, num_u);
        for (vars, c) in terms {
            p.add(Monomial::new(vars), c);
        }
        p
    }

    fn add(&mut self, m: Monomial, c: u8) {
        let v = (self.terms.get(&m).copied().unwrap_or(0) + c % 8) % 8;
        if v == 0 {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, v);
        }
    }

    pub fn coefficient(&self, vars: &[Var]) -> u8 {
        self.terms
            .get(&Monomial::new(vars.to_vec()))
            .copied()
            .unwrap_or(0)
    }

    pub fn evaluate(&self, b: &[bool], u: &[bool]) -> u8 {
        let on = |v: &Var| match *v {
            Var::B(i) => b[i],
            Var::U(i) => u[i],
        };
        let s: u32 = self
            .terms
            .iter()
            .filter(|(m, _)| m.0.iter().all(on))
            .map(|(_, &c)| c as u32)
            .sum();
        (s % 8) as u8
    }

    pub fn negated(&self) -> PhasePolynomial {
        PhasePolynomial {
            num_b: self.num_b,
            num_u: self.num_u,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.clone(), (8 - c) % 8))
                .collect(),
        }
    }

    /// Multilinear interpolation of a function on {0,1}^{r+k}; bit i of the
    /// index is b_{i+1} for i < r and u_{i-r+1} after.
    pub fn interpolate(num_b: usize, num_u: usize, values: &[u8]) -> Result<Self> {
        let m = num_b + num_u;
        if values.len() != 1 << m {
            return Err(Error::DimensionMismatch {
                expected: 1 << m,
                found: values.len(),
            });
        }
        if !values[0].is_multiple_of(8) {
            return Err(Error::Malformed("nonzero constant term".into()));
        }
        let coeffs = mobius(values);
        let var = |i: usize| if i < num_b { Var::B(i) } else { Var::U(i - num_b) };
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(mask, &c)| (Monomial((0..m).filter(|i| mask >> i & 1 == 1).map(var).collect()), c))
            .collect();
        Ok(PhasePolynomial { num_b, num_u, terms })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&terms_to_json(&self.terms)).expect("polynomial serialization")
    }
}

/// In-place Möbius transform mod 8.
fn mobius(values: &[u8]) -> Vec<u8> {
    let mut a: Vec<u8> = values.iter().map(|v| v % 8).collect();
    let n = a.len();
    let mut h = 1;
    while h < n {
        for i in 0..n {
            if i & h != 0 {
                a[i] = (a[i] + 8 - a[i ^ h]) % 8;
            }
        }
        h <<= 1;
    }
    a
}

/// Masks of the qubits carrying each nonzero exponent.
fn exponent_masks(c: &SignVector) -> Vec<(u32, BitVec)> {
    let mut masks: BTreeMap<u8, Vec<usize>> = BTreeMap::new();
    for v in 0..c.len() {
        let e = c.exponent(v);
        if e != 0 {
            masks.entry(e).or_default().push(v);
        }
    }
    masks
        .into_iter()
        .map(|(e, s)| (e as u32, BitVec::from_support(c.len(), &s)))
        .collect()
}

fn signed_weight(masks: &[(u32, BitVec)], support: &BitVec) -> u32 {
    masks
        .iter()
        .map(|(e, m)| e * m.overlap(support) as u32)
        .sum::<u32>()
        % 8
}

/// Generator rows of the engine: independent Hx rows, then logical Xs.
/// Returns the rows and the Hx row index behind each b variable.
pub fn generator_rows(code: &CssCode, basis: &LogicalBasis) -> (Vec<BitVec>, Vec<usize>) {
    let b_rows = code.hx.independent_rows();
    let mut rows: Vec<BitVec> = b_rows.iter().map(|&i| code.hx.row(i).clone()).collect();
    rows.extend(basis.xs());
    (rows, b_rows)
}

/// Exact phase polynomial of the layer ∏ T^{c_v} on the code.
pub fn induced_phase_polynomial(
    code: &CssCode,
    basis: &LogicalBasis,
    c: &SignVector,
) -> Result<PhasePolynomial> {
    if c.len() != code.n {
        return Err(Error::DimensionMismatch {
            expected: code.n,
            found: c.len(),
        });
    }
    if basis.n != code.n {
        return Err(Error::DimensionMismatch {
            expected: code.n,
            found: basis.n,
        });
    }
    let (rows, b_rows) = generator_rows(code, basis);
    Ok(phase_polynomial_of_rows(&rows, b_rows.len(), c))
}

/// As [`induced_phase_polynomial`] for explicit rows; the first `num_b`
/// rows become stabilizer variables.
pub fn phase_polynomial_of_rows(rows: &[BitVec], num_b: usize, c: &SignVector) -> PhasePolynomial {
    let masks = exponent_masks(c);
    let var = |t: usize| if t < num_b { Var::B(t) } else { Var::U(t - num_b) };
    let m = rows.len();

    let per_row: Vec<Vec<(Monomial, u8)>> = (0..m)
        .into_par_iter()
        .map(|t| {
            let mut out = Vec::new();
            let w1 = signed_weight(&masks, &rows[t]);
            if w1 != 0 {
                out.push((Monomial(vec![var(t)]), w1 as u8));
            }
            for t2 in t + 1..m {
                let pair = rows[t].and(&rows[t2]);
                if pair.is_zero() {
                    continue;
                }
                let w2 = (6 * signed_weight(&masks, &pair)) % 8;
                if w2 != 0 {
                    out.push((Monomial(vec![var(t), var(t2)]), w2 as u8));
                }
                for t3 in t2 + 1..m {
                    let w3 = signed_weight(&masks, &pair.and(&rows[t3]));
                    if w3 % 2 == 1 {
                        out.push((Monomial(vec![var(t), var(t2), var(t3)]), 4));
                    }
                }
            }
            out
        })
        .collect();

    let mut terms = BTreeMap::new();
    for (mono, coeff) in per_row.into_iter().flatten() {
        terms.insert(mono, coeff);
    }
    PhasePolynomial {
        num_b,
        num_u: m - num_b,
        terms,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub monomial: Vec<String>,
    pub coeff: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodespaceVerdict {
    pub preserved: bool,
    pub witnesses: Vec<Witness>,
}

/// The layer preserves the codespace iff F is constant on every stabilizer
/// coset, i.e. iff every monomial containing a b variable vanishes.
pub fn preserves_codespace(f: &PhasePolynomial) -> CodespaceVerdict {
    let witnesses: Vec<Witness> = f
        .terms
        .iter()
        .filter(|(m, _)| m.has_stabilizer())
        .map(|(m, &coeff)| Witness {
            monomial: m.0.iter().map(Var::to_string).collect(),
            coeff,
        })
        .collect();
    CodespaceVerdict {
        preserved: witnesses.is_empty(),
        witnesses,
    }
}

// ---------------------------------------------------------------------------
// Logical action.

/// u-only part of a phase polynomial. Indices are 0-based logical qubits.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LogicalAction {
    pub k: usize,
    pub linear: BTreeMap<usize, u8>,
    pub quadratic: BTreeMap<(usize, usize), u8>,
    pub cubic: BTreeMap<(usize, usize, usize), u8>,
}

impl LogicalAction {
    pub fn identity(k: usize) -> Self {
        LogicalAction {
            k,
            ..Default::default()
        }
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_empty() && self.quadratic.is_empty() && self.cubic.is_empty()
    }

    /// Adds a term; indices must be distinct.
    pub fn add(&mut self, idx: &[usize], c: u8) -> Result<()> {
        let mut i = idx.to_vec();
        i.sort_unstable();
        i.dedup();
        if i.len() != idx.len() || i.iter().any(|&q| q >= self.k) {
            return Err(Error::Malformed(format!("bad logical term {idx:?}")));
        }
        fn bump<K: Ord>(m: &mut BTreeMap<K, u8>, key: K, c: u8) {
            let e = m.entry(key).or_insert(0);
            *e = (*e + c % 8) % 8;
        }
        match i.as_slice() {
            [a] => bump(&mut self.linear, *a, c),
            [a, b] => bump(&mut self.quadratic, (*a, *b), c),
            [a, b, d] => bump(&mut self.cubic, (*a, *b, *d), c),
            _ => {
                if !c.is_multiple_of(8) {
                    return Err(Error::Unclassifiable {
                        monomial: format!("{i:?}"),
                        coeff: c % 8,
                    });
                }
            }
        }
        self.linear.retain(|_, c| *c != 0);
        self.quadratic.retain(|_, c| *c != 0);
        self.cubic.retain(|_, c| *c != 0);
        Ok(())
    }

    pub fn evaluate(&self, u: &[bool]) -> u8 {
        let mut s = 0u32;
        for (&a, &c) in &self.linear {
            if u[a] {
                s += c as u32;
            }
        }
        for (&(a, b), &c) in &self.quadratic {
            if u[a] && u[b] {
                s += c as u32;
            }
        }
        for (&(a, b, d), &c) in &self.cubic {
            if u[a] && u[b] && u[d] {
                s += c as u32;
            }
        }
        (s % 8) as u8
    }

    /// Values on all 2^k inputs, bit i of the index = u_i.
    pub fn values(&self) -> Vec<u8> {
        (0..1usize << self.k)
            .map(|m| {
                let u: Vec<bool> = (0..self.k).map(|i| m >> i & 1 == 1).collect();
                self.evaluate(&u)
            })
            .collect()
    }

    /// Interpolates values indexed as in [`LogicalAction::values`].
    pub fn from_values(k: usize, values: &[u8]) -> Result<Self> {
        if values.len() != 1 << k {
            return Err(Error::DimensionMismatch {
                expected: 1 << k,
                found: values.len(),
            });
        }
        if !values[0].is_multiple_of(8) {
            return Err(Error::Malformed("nonzero constant term".into()));
        }
        let mut a = LogicalAction::identity(k);
        for (mask, c) in mobius(values).into_iter().enumerate() {
            if c != 0 {
                let idx: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
                a.add(&idx, c)?;
            }
        }
        Ok(a)
    }

    pub fn negated(&self) -> LogicalAction {
        let neg = |c: &u8| (8 - c) % 8;
        LogicalAction {
            k: self.k,
            linear: self.linear.iter().map(|(k, c)| (*k, neg(c))).collect(),
            quadratic: self.quadratic.iter().map(|(k, c)| (*k, neg(c))).collect(),
            cubic: self.cubic.iter().map(|(k, c)| (*k, neg(c))).collect(),
        }
    }

    fn terms(&self) -> BTreeMap<Monomial, u8> {
        let mut t = BTreeMap::new();
        for (&a, &c) in &self.linear {
            t.insert(Monomial(vec![Var::U(a)]), c);
        }
        for (&(a, b), &c) in &self.quadratic {
            t.insert(Monomial(vec![Var::U(a), Var::U(b)]), c);
        }
        for (&(a, b, d), &c) in &self.cubic {
            t.insert(Monomial(vec![Var::U(a), Var::U(b), Var::U(d)]), c);
        }
        t
    }
}

impl Serialize for LogicalAction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc {
            k: usize,
            monomials: Vec<TermJson>,
        }
        Doc {
            k: self.k,
            monomials: terms_to_json(&self.terms()).monomials,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LogicalAction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Doc {
            k: usize,
            monomials: Vec<TermJson>,
        }
        let doc = Doc::deserialize(d)?;
        let terms = terms_from_json(MonomialsJson {
            monomials: doc.monomials,
        })
        .map_err(serde::de::Error::custom)?;
        let mut a = LogicalAction::identity(doc.k);
        for (m, c) in terms {
            let idx = m
                .0
                .iter()
                .map(|v| match v {
                    Var::U(i) => Ok(*i),
                    Var::B(_) => Err(serde::de::Error::custom("stabilizer variable in logical action")),
                })
                .collect::<std::result::Result<Vec<usize>, D::Error>>()?;
            a.add(&idx, c).map_err(serde::de::Error::custom)?;
        }
        Ok(a)
    }
}

/// Restriction of F to the logical variables.
pub fn logical_action(f: &PhasePolynomial) -> Result<LogicalAction> {
    let verdict = preserves_codespace(f);
    if !verdict.preserved {
        let shown: Vec<String> = verdict
            .witnesses
            .iter()
            .take(5)
            .map(|w| format!("{{{}}}:{}", w.monomial.join(","), w.coeff))
            .collect();
        return Err(Error::CodespaceNotPreserved {
            witness: format!(
                "{} stabilizer monomial(s), e.g. {}",
                verdict.witnesses.len(),
                shown.join(" ")
            ),
        });
    }
    let mut a = LogicalAction::identity(f.num_u);
    for (m, &c) in &f.terms {
        let idx: Vec<usize> = m
            .0
            .iter()
            .map(|v| match v {
                Var::U(i) => *i,
                Var::B(_) => unreachable!("checked above"),
            })
            .collect();
        a.add(&idx, c)?;
    }
    Ok(a)
}

// ---------------------------------------------------------------------------
// Gate classification.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    T,
    S,
    Z,
    CS,
    CZ,
    CCZ,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<String>,
    pub power: i8,
}

impl Gate {
    fn coefficient(&self) -> u8 {
        let unit = match self.kind {
            GateKind::T => 1,
            GateKind::S | GateKind::CS => 2,
            GateKind::Z | GateKind::CZ | GateKind::CCZ => 4,
        };
        ((unit * self.power as i32).rem_euclid(8)) as u8
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = format!("{:?}", self.kind);
        match self.power {
            1 => write!(f, "{name}"),
            -1 => write!(f, "{name}†"),
            p => write!(f, "{name}^{p}"),
        }?;
        write!(f, " on ({})", self.qubits.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateClassification {
    pub gates: Vec<Gate>,
}

impl GateClassification {
    /// Rebuilds the coefficient maps; `labels` names the logical qubits.
    pub fn to_action(&self, labels: &[String]) -> Result<LogicalAction> {
        let mut a = LogicalAction::identity(labels.len());
        for g in &self.gates {
            let idx = g
                .qubits
                .iter()
                .map(|q| {
                    labels
                        .iter()
                        .position(|l| l == q)
                        .ok_or_else(|| Error::Malformed(format!("unknown logical `{q}`")))
                })
                .collect::<Result<Vec<usize>>>()?;
            a.add(&idx, g.coefficient())?;
        }
        Ok(a)
    }

    pub fn is_identity(&self) -> bool {
        self.gates.is_empty()
    }
}

impl fmt::Display for GateClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gates.is_empty() {
            return write!(f, "identity");
        }
        let parts: Vec<String> = self.gates.iter().map(Gate::to_string).collect();
        write!(f, "{}", parts.join(" · "))
    }
}

/// Names a logical diagonal action gate by gate. `labels` defaults to A, B, ...
pub fn classify_gate(a: &LogicalAction, labels: Option<&[String]>) -> Result<GateClassification> {
    let default: Vec<String> = (0..a.k).map(logical_label).collect();
    let labels = labels.unwrap_or(&default);
    if labels.len() < a.k {
        return Err(Error::DimensionMismatch {
            expected: a.k,
            found: labels.len(),
        });
    }
    let name = |i: &[usize]| i.iter().map(|&q| labels[q].clone()).collect::<Vec<_>>();
    let mut gates = Vec::new();
    for (&q, &c) in &a.linear {
        let (kind, power) = match c {
            4 => (GateKind::Z, 1),
            2 => (GateKind::S, 1),
            6 => (GateKind::S, -1),
            1 => (GateKind::T, 1),
            7 => (GateKind::T, -1),
            3 => (GateKind::T, 3),
            5 => (GateKind::T, -3),
            _ => unreachable!("zero coefficients are not stored"),
        };
        gates.push(Gate {
            kind,
            qubits: name(&[q]),
            power,
        });
    }
    for (&(p, q), &c) in &a.quadratic {
        let (kind, power) = match c {
            2 => (GateKind::CS, 1),
            6 => (GateKind::CS, -1),
            4 => (GateKind::CZ, 1),
            _ => {
                return Err(Error::Unclassifiable {
                    monomial: format!("{{u{},u{}}}", p + 1, q + 1),
                    coeff: c,
                })
            }
        };
        gates.push(Gate {
            kind,
            qubits: name(&[p, q]),
            power,
        });
    }
    for (&(p, q, r), &c) in &a.cubic {
        if c != 4 {
            return Err(Error::Unclassifiable {
                monomial: format!("{{u{},u{},u{}}}", p + 1, q + 1, r + 1),
                coeff: c,
            });
        }
        gates.push(Gate {
            kind: GateKind::CCZ,
            qubits: name(&[p, q, r]),
            power: 1,
        });
    }
    Ok(GateClassification { gates })
}

// ---------------------------------------------------------------------------
// State-vector oracle.

pub const ORACLE_MAX_N: usize = 22;
pub const ORACLE_MAX_RANK_X: usize = 16;

fn to_word(v: &BitVec) -> u64 {
    v.iter_ones().fold(0u64, |w, i| w | 1 << i)
}

/// Logical action obtained by building every codeword as an explicit
/// superposition of basis states and applying the layer to each.
pub fn statevector_logical_action(
    code: &CssCode,
    basis: &LogicalBasis,
    c: &SignVector,
) -> Result<LogicalAction> {
    if code.n > ORACLE_MAX_N {
        return Err(Error::BoundExceeded(format!("n = {} > {ORACLE_MAX_N}", code.n)));
    }
    if c.len() != code.n || basis.n != code.n {
        return Err(Error::DimensionMismatch {
            expected: code.n,
            found: c.len().min(basis.n),
        });
    }
    let gens: Vec<u64> = code
        .hx
        .independent_rows()
        .into_iter()
        .map(|i| to_word(code.hx.row(i)))
        .collect();
    if gens.len() > ORACLE_MAX_RANK_X {
        return Err(Error::BoundExceeded(format!(
            "rank(Hx) = {} > {ORACLE_MAX_RANK_X}",
            gens.len()
        )));
    }
    let exps: Vec<u32> = (0..code.n).map(|v| c.exponent(v) as u32).collect();
    let phase = |x: u64| -> u8 {
        let mut s = 0u32;
        let mut w = x;
        while w != 0 {
            let v = w.trailing_zeros() as usize;
            s += exps[v];
            w &= w - 1;
        }
        (s % 8) as u8
    };
    let logicals: Vec<u64> = basis.xs().iter().map(to_word).collect();
    let k = logicals.len();
    let mut values = Vec::with_capacity(1 << k);
    for u in 0..1usize << k {
        let base = (0..k)
            .filter(|i| u >> i & 1 == 1)
            .fold(0u64, |acc, i| acc ^ logicals[i]);
        // Gray-code walk over the stabilizer group.
        let mut x = base;
        let expected = phase(x);
        for g in 1..1u64 << gens.len() {
            x ^= gens[g.trailing_zeros() as usize];
            if phase(x) != expected {
                return Err(Error::CodespaceNotPreserved {
                    witness: format!(
                        "codeword u={} is not an eigenstate (basis states {:b} and {:b} differ in phase)",
                        (0..k).map(|i| if u >> i & 1 == 1 { '1' } else { '0' }).collect::<String>(),
                        base,
                        x
                    ),
                });
            }
        }
        values.push(expected);
    }
    LogicalAction::from_values(k, &values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitMatrix;

    fn bits(n: usize, s: &[usize]) -> BitVec {
        BitVec::from_support(n, s)
    }

    #[test]
    fn weight_eight_row_vanishes() {
        let rows = vec![bits(8, &[0, 1, 2, 3, 4, 5, 6, 7])];
        let f = phase_polynomial_of_rows(&rows, 1, &SignVector::new(vec![1; 8]));
        assert!(f.terms.is_empty());
    }

    #[test]
    fn two_overlapping_rows() {
        let rows = vec![bits(3, &[0, 1]), bits(3, &[1, 2])];
        let f = phase_polynomial_of_rows(&rows, 2, &SignVector::new(vec![1; 3]));
        let expect = PhasePolynomial::from_terms(
            2,
            0,
            [
                (vec![Var::B(0)], 2),
                (vec![Var::B(1)], 2),
                (vec![Var::B(0), Var::B(1)], 6),
            ],
        );
        assert_eq!(f, expect);
        // brute force
        for m in 0..4usize {
            let x = (0..2).filter(|t| m >> t & 1 == 1).fold(BitVec::zeros(3), |a, t| a.xor(&rows[t]));
            let b = [m & 1 == 1, m & 2 == 2];
            assert_eq!(f.evaluate(&b, &[]), x.count_ones() as u8 % 8);
        }
    }

    #[test]
    fn verdicts() {
        let f = PhasePolynomial::from_terms(0, 2, [(vec![Var::U(0), Var::U(1)], 2)]);
        assert!(preserves_codespace(&f).preserved);
        let a = logical_action(&f).unwrap();
        assert_eq!(a.quadratic.get(&(0, 1)), Some(&2));
        assert!(a.linear.is_empty() && a.cubic.is_empty());

        let g = PhasePolynomial::from_terms(1, 1, [(vec![Var::B(0), Var::U(0)], 4)]);
        let v = preserves_codespace(&g);
        assert!(!v.preserved);
        assert_eq!(
            v.witnesses,
            vec![Witness {
                monomial: vec!["b1".into(), "u1".into()],
                coeff: 4
            }]
        );
        assert!(matches!(logical_action(&g), Err(Error::CodespaceNotPreserved { .. })));

        let t = PhasePolynomial::from_terms(0, 1, [(vec![Var::U(0)], 1)]);
        assert_eq!(logical_action(&t).unwrap().linear.get(&0), Some(&1));
    }

    #[test]
    fn classification_texts() {
        let mut cs = LogicalAction::identity(2);
        cs.add(&[0, 1], 2).unwrap();
        let g = classify_gate(&cs, None).unwrap();
        assert_eq!(g.to_string(), "CS on (A,B)");
        assert_eq!(classify_gate(&cs.negated(), None).unwrap().to_string(), "CS† on (A,B)");
        assert_eq!(
            classify_gate(&LogicalAction::identity(2), None).unwrap().to_string(),
            "identity"
        );

        let mut zcz = LogicalAction::identity(2);
        zcz.add(&[0], 4).unwrap();
        zcz.add(&[0, 1], 4).unwrap();
        let g = classify_gate(&zcz, None).unwrap();
        assert_eq!(g.to_string(), "Z on (A) · CZ on (A,B)");
        let labels = vec!["A".to_string(), "B".to_string()];
        assert_eq!(g.to_action(&labels).unwrap(), zcz);
        // diag(1,1,-1,-1)·diag(1,1,1,-1) with index a + 2b read as (u_A, u_B)
        let expect = [0u8, 4, 0, 0];
        assert_eq!(zcz.values(), expect.to_vec());
    }

    #[test]
    fn odd_pair_coefficient_is_unclassifiable() {
        let mut a = LogicalAction::identity(2);
        a.add(&[0, 1], 3).unwrap();
        assert!(matches!(classify_gate(&a, None), Err(Error::Unclassifiable { coeff: 3, .. })));
        let mut b = LogicalAction::identity(3);
        b.add(&[0, 1, 2], 2).unwrap();
        assert!(matches!(classify_gate(&b, None), Err(Error::Unclassifiable { coeff: 2, .. })));
    }

    #[test]
    fn oracle_on_unencoded_qubit() {
        let code = CssCode::new(1, BitMatrix::new(1), BitMatrix::new(1), vec![0]).unwrap();
        let basis = LogicalBasis::from_vectors(1, vec![bits(1, &[0])], vec![bits(1, &[0])]);
        let a = statevector_logical_action(&code, &basis, &SignVector::new(vec![1])).unwrap();
        assert_eq!(a.linear.get(&0), Some(&1));
        let b = statevector_logical_action(&code, &basis, &SignVector::new(vec![-1])).unwrap();
        assert_eq!(b, a.negated());
    }

    #[test]
    fn oracle_bounds() {
        let n = 23;
        let code = CssCode::new(n, BitMatrix::new(n), BitMatrix::new(n), (0..n).collect()).unwrap();
        let basis = LogicalBasis::from_vectors(n, vec![], vec![]);
        assert!(matches!(
            statevector_logical_action(&code, &basis, &SignVector::new(vec![1; n])),
            Err(Error::BoundExceeded(_))
        ));
    }

    #[test]
    fn var_names_round_trip() {
        for v in [Var::B(0), Var::U(11)] {
            assert_eq!(v.to_string().parse::<Var>().unwrap(), v);
        }
        assert!("x1".parse::<Var>().is_err());
        assert!("b0".parse::<Var>().is_err());
    }

    #[test]
    fn action_json_round_trip() {
        let mut a = LogicalAction::identity(3);
        a.add(&[0], 1).unwrap();
        a.add(&[1, 2], 6).unwrap();
        a.add(&[0, 1, 2], 4).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert!(s.contains("{\"vars\":[\"u2\",\"u3\"],\"coeff\":6}"));
        assert_eq!(serde_json::from_str::<LogicalAction>(&s).unwrap(), a);
    }
}
