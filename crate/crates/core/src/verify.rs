//! End-to-end checks: build, assemble, project, bipartition, apply the signed
//! T layer, and read off the logical gate and its commutator phases.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{
    bipartition, build_cube, build_truncated_cube, validate, Bipartition, ColoredComplex, Parity,
    MIN_TRUNCATED_EXTENT,
};
use crate::css::{assemble, logical_basis, match_geometric_basis, CssCode, LogicalBasis};
use crate::error::{Error, Result};
use crate::fixtures::{random_case, tetrahedral15};
use crate::gf2::{BitVec, Echelon};
use crate::pauli::{
    commutator_diag_with_xpauli, commutator_slayer_with_xpauli, DiagonalGate, PauliWithPhase,
};
use crate::phase_poly::{
    classify_gate, induced_phase_polynomial, logical_action, preserves_codespace,
    statevector_logical_action, CodespaceVerdict, GateClassification, GateKind, LogicalAction,
    SignVector,
};

pub const SCHEMA: &str = "csreport/1";
pub const CONVENTION: &str =
    "commutators are P·D·P†·D†; phase exponents count powers of ω = exp(iπ/4) mod 8";
pub const FIXTURES: [&str; 4] = ["tetrahedral15", "cube", "truncated_cube_min", "unencoded_cs"];
pub const CUBE_FIXTURE_EXTENT: [usize; 3] = [2, 2, 2];
pub const THETA_REPRESENTATIVES: usize = 10;
const THETA_SEED: u64 = 0x7e7a;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexStats {
    pub qubits: usize,
    pub edges: usize,
    pub faces: usize,
    pub cells: usize,
    pub boundaries: usize,
    pub truncation_region: usize,
}

impl ComplexStats {
    pub fn of(c: &ColoredComplex) -> Self {
        ComplexStats {
            qubits: c.qubits.len(),
            edges: c.edges.len(),
            faces: c.faces.len(),
            cells: c.cells.len(),
            boundaries: c.boundaries.len(),
            truncation_region: c.truncation_region.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeStats {
    pub n: usize,
    pub r_x: usize,
    pub r_z: usize,
    pub k: usize,
}

impl CodeStats {
    pub fn of(code: &CssCode) -> Self {
        let r_x = code.rank_x();
        let r_z = code.rank_z();
        CodeStats {
            n: code.n,
            r_x,
            r_z,
            k: code.n - r_x - r_z,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartitionSummary {
    pub even: usize,
    pub odd: usize,
}

impl BipartitionSummary {
    pub fn of(b: &Bipartition) -> Self {
        BipartitionSummary {
            even: b.count(Parity::Even),
            odd: b.count(Parity::Odd),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicalSummary {
    pub label: String,
    pub x_weight: usize,
    pub z_weight: usize,
}

/// θ for one logical X: the global phase of its commutator with the layer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaRecord {
    pub operator: String,
    pub commutator: DiagonalGate,
    pub theta_exp: u8,
    /// θ of randomly chosen stabilizer-equivalent representatives.
    pub representative_theta_exps: Vec<u8>,
}

/// Decomposition of a Z-type operator as logical Zs times Hz rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub target: Vec<String>,
    pub logicals: Vec<String>,
    pub hz_rows: Vec<usize>,
    pub residual: Vec<usize>,
    pub matches_target: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseRecord {
    pub operator: PauliWithPhase,
    pub phase_exp: u8,
    pub membership: Membership,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorEvidence {
    /// M = Xbar_A·Ū·Xbar_A·Ū†, an S layer.
    pub m: DiagonalGate,
    pub phi: PhaseRecord,
    pub eta: PhaseRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: String,
    pub convention: String,
    pub fixture: String,
    pub extent: Option<[usize; 3]>,
    pub complex: Option<ComplexStats>,
    pub code: Option<CodeStats>,
    pub pre_projection_code: Option<CodeStats>,
    pub bipartition: Option<BipartitionSummary>,
    pub logicals: Vec<LogicalSummary>,
    pub basis_annotations: Vec<String>,
    pub codespace: Option<CodespaceVerdict>,
    pub logical_action: Option<LogicalAction>,
    pub classification: Option<GateClassification>,
    pub classification_text: Option<String>,
    pub oracle_action: Option<LogicalAction>,
    pub theta: Vec<ThetaRecord>,
    pub commutators: Option<CommutatorEvidence>,
    /// φ measured on random stabilizer-equivalent representatives of Xbar_A.
    pub phi_representative_exps: Vec<u8>,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl VerificationReport {
    fn new(fixture: &str) -> Self {
        VerificationReport {
            schema: SCHEMA.to_string(),
            convention: CONVENTION.to_string(),
            fixture: fixture.to_string(),
            extent: None,
            complex: None,
            code: None,
            pre_projection_code: None,
            bipartition: None,
            logicals: Vec::new(),
            basis_annotations: Vec::new(),
            codespace: None,
            logical_action: None,
            classification: None,
            classification_text: None,
            oracle_action: None,
            theta: Vec::new(),
            commutators: None,
            phi_representative_exps: Vec::new(),
            checks: Vec::new(),
            passed: false,
        }
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    fn finish(mut self) -> Self {
        self.passed = !self.checks.is_empty() && self.checks.iter().all(|c| c.passed);
        self
    }

    pub fn check_named(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn summary_text(&self) -> String {
        let mut out = format!("{} ({})\n", self.fixture, self.convention);
        if let Some(e) = self.extent {
            out += &format!("extent: {},{},{}\n", e[0], e[1], e[2]);
        }
        if let Some(c) = &self.code {
            out += &format!("code: n={} rank(Hx)={} rank(Hz)={} k={}\n", c.n, c.r_x, c.r_z, c.k);
        }
        if let Some(v) = &self.codespace {
            out += &format!(
                "codespace preserved: {} ({} witnesses)\n",
                v.preserved,
                v.witnesses.len()
            );
        }
        if let Some(t) = &self.classification_text {
            out += &format!("logical gate: {t}\n");
        }
        for t in &self.theta {
            out += &format!("theta_exp[{}] = {}\n", t.operator, t.theta_exp);
        }
        if let Some(c) = &self.commutators {
            out += &format!("phi_exp = {}\neta_exp = {}\n", c.phi.phase_exp, c.eta.phase_exp);
        }
        if !self.phi_representative_exps.is_empty() {
            out += &format!("phi_exp over representatives: {:?}\n", self.phi_representative_exps);
        }
        for c in &self.checks {
            out += &format!(
                "[{}] {}: {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        out += &format!("overall: {}\n", if self.passed { "PASS" } else { "FAIL" });
        out
    }
}

pub const CHECK_VALIDATORS: &str = "structural validators";
pub const CHECK_K: &str = "logical qubit count";
pub const CHECK_PRESERVED: &str = "codespace preserved";
pub const CHECK_CS: &str = "logical CS";
pub const CHECK_THETA: &str = "theta";
pub const CHECK_PHI: &str = "phi";
pub const CHECK_ETA: &str = "eta";
pub const CHECK_CROSS_PATH: &str = "eta matches f_L";
pub const CHECK_T: &str = "logical T";
pub const CHECK_ORACLE: &str = "engine matches oracle";
pub const CHECK_UNENCODED: &str = "unencoded CS commutators";

// ---------------------------------------------------------------------------
// Building blocks.

/// Global phase of Xbar·Ū·Xbar·Ū†, i.e. Σ_{v ∈ Xbar} c_v mod 8.
pub fn check_theta(code: &CssCode, c: &SignVector, xbar: &BitVec) -> Result<u8> {
    Ok(theta_commutator(code, c, xbar)?.global_exp)
}

fn theta_commutator(code: &CssCode, c: &SignVector, xbar: &BitVec) -> Result<DiagonalGate> {
    if c.len() != code.n || xbar.len() != code.n {
        return Err(Error::DimensionMismatch {
            expected: code.n,
            found: if c.len() != code.n { c.len() } else { xbar.len() },
        });
    }
    let u = DiagonalGate::transversal(&c.c);
    commutator_diag_with_xpauli(&u, &PauliWithPhase::x_type(xbar.clone()))
}

/// θ of `count` random representatives Xbar ⊕ (combination of Hx rows).
pub fn theta_of_representatives(
    code: &CssCode,
    c: &SignVector,
    xbar: &BitVec,
    count: usize,
    seed: u64,
) -> Result<Vec<u8>> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut x = xbar.clone();
        for row in code.hx.rows() {
            if rng.gen_bool(0.5) {
                x.xor_assign(row);
            }
        }
        out.push(check_theta(code, c, &x)?);
    }
    Ok(out)
}

fn membership(
    code: &CssCode,
    basis: &LogicalBasis,
    z: &BitVec,
    target: &[usize],
    operator: &str,
) -> Result<Membership> {
    let k = basis.k();
    let hz_count = code.hz.num_rows();
    let mut span = Echelon::new(code.n);
    for r in code.hz.rows() {
        span.insert(r.clone());
    }
    for p in &basis.pairs {
        span.insert(p.z.clone());
    }
    let red = span.reduce(z);
    let mut logicals: Vec<usize> = red
        .combination
        .iter()
        .filter(|&&g| g >= hz_count)
        .map(|g| g - hz_count)
        .collect();
    logicals.sort_unstable();
    let hz_rows: Vec<usize> = red.combination.iter().copied().filter(|&g| g < hz_count).collect();

    // Residual against the asserted coset.
    let mut shifted = z.clone();
    for &t in target {
        shifted.xor_assign(&basis.pairs[t].z);
    }
    let stab = Echelon::from_rows(code.n, code.hz.rows());
    let residual = stab.reduce(&shifted).residual.support();
    if !residual.is_empty() {
        return Err(Error::Membership {
            operator: operator.to_string(),
            residual,
        });
    }
    let mut want = target.to_vec();
    want.sort_unstable();
    let label = |i: &usize| basis.pairs[*i].label.clone();
    debug_assert!(logicals.iter().all(|&l| l < k));
    Ok(Membership {
        target: want.iter().map(label).collect(),
        matches_target: logicals == want,
        logicals: logicals.iter().map(label).collect(),
        hz_rows,
        residual,
    })
}

/// φ for `count` random representatives of Xbar_A.
pub fn phi_of_representatives(
    code: &CssCode,
    c: &SignVector,
    xa: &BitVec,
    count: usize,
    seed: u64,
) -> Result<Vec<u8>> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = DiagonalGate::transversal(&c.c);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut x = xa.clone();
        for row in code.hx.rows() {
            if rng.gen_bool(0.5) {
                x.xor_assign(row);
            }
        }
        let p = PauliWithPhase::x_type(x);
        let m = commutator_diag_with_xpauli(&u, &p)?;
        out.push(commutator_slayer_with_xpauli(&m, &p)?.phase_exp);
    }
    Ok(out)
}

/// Computes M from Ū and Xbar_A, then its commutators with Xbar_A (φ, against
/// Zbar_B) and with Xbar_B (η, against Zbar_A·Zbar_B).
pub fn check_commutators(
    code: &CssCode,
    basis: &LogicalBasis,
    c: &SignVector,
) -> Result<CommutatorEvidence> {
    if basis.k() < 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: basis.k(),
        });
    }
    let xa = PauliWithPhase::x_type(basis.pairs[0].x.clone());
    let xb = PauliWithPhase::x_type(basis.pairs[1].x.clone());
    let u = DiagonalGate::transversal(&c.c);
    let m = commutator_diag_with_xpauli(&u, &xa)?;

    let p_phi = commutator_slayer_with_xpauli(&m, &xa)?;
    let phi_member = membership(code, basis, &p_phi.z, &[1], "XA·M·XA·M†")?;
    let p_eta = commutator_slayer_with_xpauli(&m, &xb)?;
    let eta_member = membership(code, basis, &p_eta.z, &[0, 1], "XB·M·XB·M†")?;
    Ok(CommutatorEvidence {
        m,
        phi: PhaseRecord {
            phase_exp: p_phi.phase_exp,
            operator: p_phi,
            membership: phi_member,
        },
        eta: PhaseRecord {
            phase_exp: p_eta.phase_exp,
            operator: p_eta,
            membership: eta_member,
        },
    })
}

fn logical_summaries(basis: &LogicalBasis) -> Vec<LogicalSummary> {
    basis
        .pairs
        .iter()
        .map(|p| LogicalSummary {
            label: p.label.clone(),
            x_weight: p.x.count_ones(),
            z_weight: p.z.count_ones(),
        })
        .collect()
}

fn describe(a: &LogicalAction) -> String {
    serde_json::to_string(a).expect("action serialization")
}

// ---------------------------------------------------------------------------
// Protocols.

/// The full control-S pipeline on the truncated cube.
pub fn verify_cs_protocol(extent: [usize; 3]) -> Result<VerificationReport> {
    let complex = build_truncated_cube(extent)?;
    let mut report = VerificationReport::new("truncated_cube");
    report.extent = Some(extent);
    verify_cs_on_complex(&complex, &mut report)?;
    Ok(report.finish())
}

/// As [`verify_cs_protocol`] for an arbitrary complex with a truncation region.
pub fn verify_cs_complex(complex: &ColoredComplex, name: &str) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(name);
    verify_cs_on_complex(complex, &mut report)?;
    Ok(report.finish())
}

fn verify_cs_on_complex(complex: &ColoredComplex, report: &mut VerificationReport) -> Result<()> {
    report.complex = Some(ComplexStats::of(complex));
    let validation = validate(complex);
    let failed: Vec<String> = validation
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} ({:?})", c.name, c.witness))
        .collect();
    report.check(
        CHECK_VALIDATORS,
        failed.is_empty(),
        if failed.is_empty() { "all pass".to_string() } else { failed.join("; ") },
    );

    let full = assemble(complex)?;
    report.pre_projection_code = Some(CodeStats::of(&full));
    let code = if complex.truncation_region.is_empty() {
        full.clone()
    } else {
        full.project_z(&complex.truncation_region)?
    };
    let stats = CodeStats::of(&code);
    let pre_k = full.k();
    report.check(
        CHECK_K,
        pre_k == 3 && stats.k == 2,
        format!("k = {pre_k} before projection, {} after", stats.k),
    );
    report.code = Some(stats);

    let bip = bipartition(complex)?;
    report.bipartition = Some(BipartitionSummary::of(&bip));
    let signs = SignVector::from_bipartition(&bip, &code.qubit_map)?;

    let basis = logical_basis(&code)?;
    let basis = match_geometric_basis(complex, &code, &basis);
    report.logicals = logical_summaries(&basis);
    report.basis_annotations = basis.annotations.clone();

    let f = induced_phase_polynomial(&code, &basis, &signs)?;
    let verdict = preserves_codespace(&f);
    report.check(
        CHECK_PRESERVED,
        verdict.preserved,
        format!("{} stabilizer monomials with nonzero coefficient", verdict.witnesses.len()),
    );
    report.codespace = Some(verdict.clone());
    if !verdict.preserved {
        return Ok(());
    }
    let action = logical_action(&f)?;
    let quad = action.quadratic.get(&(0, 1)).copied().unwrap_or(0);
    let cs_ok = basis.k() == 2
        && (quad == 2 || quad == 6)
        && action.linear.is_empty()
        && action.cubic.is_empty();
    let mut detail = format!("f_L = {}", describe(&action));
    if !action.linear.is_empty() {
        let lin: Vec<String> = action
            .linear
            .iter()
            .map(|(q, c)| format!("{}:{}", basis.pairs[*q].label, c))
            .collect();
        detail += &format!("; linear terms {}", lin.join(", "));
    }
    report.check(CHECK_CS, cs_ok, detail);
    match classify_gate(&action, Some(&basis.labels())) {
        Ok(g) => {
            report.classification_text = Some(g.to_string());
            report.classification = Some(g);
        }
        Err(e) => report.classification_text = Some(format!("unclassifiable: {e}")),
    }
    report.logical_action = Some(action);

    let mut theta_ok = true;
    for (i, p) in basis.pairs.iter().enumerate() {
        let commutator = theta_commutator(&code, &signs, &p.x)?;
        let reps = theta_of_representatives(
            &code,
            &signs,
            &p.x,
            THETA_REPRESENTATIVES,
            THETA_SEED + i as u64,
        )?;
        theta_ok &= commutator.global_exp == 0 && reps.iter().all(|&t| t == 0);
        report.theta.push(ThetaRecord {
            operator: format!("Xbar_{}", p.label),
            theta_exp: commutator.global_exp,
            commutator,
            representative_theta_exps: reps,
        });
    }
    report.check(
        CHECK_THETA,
        theta_ok,
        format!(
            "theta_exp = {:?} plus {} representatives each",
            report.theta.iter().map(|t| t.theta_exp).collect::<Vec<_>>(),
            THETA_REPRESENTATIVES
        ),
    );

    match check_commutators(&code, &basis, &signs) {
        Ok(ev) => {
            let phi_ok = ev.phi.phase_exp == 0 && ev.phi.membership.matches_target;
            report.check(
                CHECK_PHI,
                phi_ok,
                format!(
                    "phi_exp = {}, coset {:?}",
                    ev.phi.phase_exp, ev.phi.membership.logicals
                ),
            );
            let eta = ev.eta.phase_exp;
            let eta_ok = (eta == 2 || eta == 6) && ev.eta.membership.matches_target;
            report.check(
                CHECK_ETA,
                eta_ok,
                format!("eta_exp = {}, coset {:?}", eta, ev.eta.membership.logicals),
            );
            report.check(
                CHECK_CROSS_PATH,
                eta == quad,
                format!("eta_exp = {eta}, f_L coefficient on (A,B) = {quad}"),
            );
            report.commutators = Some(ev);
            report.phi_representative_exps = phi_of_representatives(
                &code,
                &signs,
                &basis.pairs[0].x,
                THETA_REPRESENTATIVES,
                THETA_SEED + 100,
            )?;
        }
        Err(e) => {
            report.check(CHECK_PHI, false, e.to_string());
            report.check(CHECK_ETA, false, e.to_string());
            report.check(CHECK_CROSS_PATH, false, e.to_string());
        }
    }
    Ok(())
}

fn tetrahedral_report() -> Result<VerificationReport> {
    let mut report = VerificationReport::new("tetrahedral15");
    let complex = tetrahedral15()?;
    report.complex = Some(ComplexStats::of(&complex));
    let validation = validate(&complex);
    report.check(CHECK_VALIDATORS, validation.all_passed(), "tetrahedral complex");
    let code = assemble(&complex)?;
    let stats = CodeStats::of(&code);
    report.check(CHECK_K, stats.k == 1, format!("k = {}", stats.k));
    report.code = Some(stats);
    let bip = bipartition(&complex)?;
    report.bipartition = Some(BipartitionSummary::of(&bip));
    let signs = SignVector::from_bipartition(&bip, &code.qubit_map)?;
    let basis = logical_basis(&code)?;
    report.logicals = logical_summaries(&basis);

    let f = induced_phase_polynomial(&code, &basis, &signs)?;
    let verdict = preserves_codespace(&f);
    report.check(
        CHECK_PRESERVED,
        verdict.preserved,
        format!("{} stabilizer monomials", verdict.witnesses.len()),
    );
    report.codespace = Some(verdict.clone());
    let oracle = statevector_logical_action(&code, &basis, &signs);
    if verdict.preserved {
        let action = logical_action(&f)?;
        let lin = action.linear.get(&0).copied().unwrap_or(0);
        let t_ok = (lin == 1 || lin == 7) && action.quadratic.is_empty() && action.cubic.is_empty();
        report.check(CHECK_T, t_ok, format!("f_L = {}", describe(&action)));
        let g = classify_gate(&action, Some(&basis.labels()))?;
        report.classification_text = Some(g.to_string());
        report.classification = Some(g);
        match &oracle {
            Ok(o) => report.check(CHECK_ORACLE, *o == action, format!("oracle f_L = {}", describe(o))),
            Err(e) => report.check(CHECK_ORACLE, false, e.to_string()),
        }
        report.logical_action = Some(action);
    } else {
        report.check(CHECK_ORACLE, oracle.is_err(), "both verdicts negative expected");
    }
    report.oracle_action = oracle.ok();
    Ok(report.finish())
}

fn cube_report(extent: [usize; 3]) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("cube");
    report.extent = Some(extent);
    let complex = build_cube(extent)?;
    report.complex = Some(ComplexStats::of(&complex));
    let validation = validate(&complex);
    report.check(CHECK_VALIDATORS, validation.all_passed(), "generated cube");
    let code = assemble(&complex)?;
    let stats = CodeStats::of(&code);
    report.check(CHECK_K, stats.k == 3, format!("k = {}", stats.k));
    report.code = Some(stats);
    let bip = bipartition(&complex)?;
    report.bipartition = Some(BipartitionSummary::of(&bip));
    let signs = SignVector::from_bipartition(&bip, &code.qubit_map)?;
    let basis = logical_basis(&code)?;
    let basis = match_geometric_basis(&complex, &code, &basis);
    report.logicals = logical_summaries(&basis);
    report.basis_annotations = basis.annotations.clone();
    let f = induced_phase_polynomial(&code, &basis, &signs)?;
    let verdict = preserves_codespace(&f);
    report.check(
        CHECK_PRESERVED,
        verdict.preserved,
        format!("{} stabilizer monomials", verdict.witnesses.len()),
    );
    report.codespace = Some(verdict.clone());
    if verdict.preserved {
        // informational only
        let action = logical_action(&f)?;
        report.classification_text = Some(match classify_gate(&action, Some(&basis.labels())) {
            Ok(g) => {
                let t = g.to_string();
                report.classification = Some(g);
                t
            }
            Err(e) => format!("unclassifiable: {e}"),
        });
        report.logical_action = Some(action);
    }
    Ok(report.finish())
}

// Two-qubit phase functions for the unencoded check: index = a + 2b.
type PhaseTable = [u8; 4];

fn x_commutator(g: &PhaseTable, qubit: usize) -> PhaseTable {
    let mut out = [0u8; 4];
    for (u, o) in out.iter_mut().enumerate() {
        *o = (g[u ^ (1 << qubit)] + 8 - g[u]) % 8;
    }
    out
}

/// Reads a phase table as ω^c Z^z when it is one.
fn table_as_pauli(t: &PhaseTable) -> Option<PauliWithPhase> {
    let c = t[0];
    let za = (t[1] + 8 - c) % 8;
    let zb = (t[2] + 8 - c) % 8;
    if ![0, 4].contains(&za) || ![0, 4].contains(&zb) || (c + za + zb) % 8 != t[3] {
        return None;
    }
    let mut z = BitVec::zeros(2);
    z.set(0, za == 4);
    z.set(1, zb == 4);
    PauliWithPhase::new(BitVec::zeros(2), z, c).ok()
}

fn unencoded_report() -> Result<VerificationReport> {
    let mut report = VerificationReport::new("unencoded_cs");
    let mut cs = LogicalAction::identity(2);
    cs.add(&[0, 1], 2)?;
    let g: PhaseTable = cs.values().try_into().expect("two qubits");
    let v = x_commutator(&g, 0);
    let v_action = LogicalAction::from_values(2, &v)?;
    let v_gate = classify_gate(&v_action, None)?;
    let v_ok = v_gate.gates.len() == 2
        && v_gate.gates.iter().any(|x| x.kind == GateKind::S && x.qubits == ["B"] && x.power == 1)
        && v_gate.gates.iter().any(|x| x.kind == GateKind::CZ);
    report.check(CHECK_UNENCODED, v_ok, format!("X_A CS X_A CS† = {v_gate}"));

    let pa = table_as_pauli(&x_commutator(&v, 0));
    let pb = table_as_pauli(&x_commutator(&v, 1));
    let phi_ok = pa
        .as_ref()
        .map(|p| p.phase_exp == 0 && p.z.support() == [1])
        .unwrap_or(false);
    report.check(CHECK_PHI, phi_ok, format!("X_A V X_A V† = {pa:?}"));
    let eta_ok = pb
        .as_ref()
        .map(|p| p.phase_exp == 2 && p.z.support() == [0, 1])
        .unwrap_or(false);
    report.check(CHECK_ETA, eta_ok, format!("X_B V X_B V† = {pb:?}"));
    report.classification_text = Some(classify_gate(&cs, None)?.to_string());
    report.classification = Some(classify_gate(&cs, None)?);
    report.logical_action = Some(cs);
    Ok(report.finish())
}

pub fn run_fixture(name: &str) -> Result<VerificationReport> {
    match name {
        "tetrahedral15" => tetrahedral_report(),
        "cube" => cube_report(CUBE_FIXTURE_EXTENT),
        "truncated_cube_min" => {
            let mut r = verify_cs_protocol(MIN_TRUNCATED_EXTENT)?;
            r.fixture = name.to_string();
            Ok(r)
        }
        "unencoded_cs" => unencoded_report(),
        other => Err(Error::UnknownFixture(other.to_string())),
    }
}

// ---------------------------------------------------------------------------
// Engine versus oracle on random codes.

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub engine_preserved: bool,
    pub oracle_preserved: bool,
    pub engine_action: Option<LogicalAction>,
    pub oracle_action: Option<LogicalAction>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckSummary {
    pub seed: u64,
    pub trials: usize,
    pub agree: usize,
    pub preserved: usize,
    pub mismatches: Vec<TrialRecord>,
}

impl CrosscheckSummary {
    pub fn all_agree(&self) -> bool {
        self.agree == self.trials
    }
}

pub fn crosscheck_case(trial: usize, case: &crate::fixtures::RandomCase) -> Result<TrialRecord> {
    let f = induced_phase_polynomial(&case.code, &case.basis, &case.signs)?;
    let engine = logical_action(&f).ok();
    let oracle = match statevector_logical_action(&case.code, &case.basis, &case.signs) {
        Ok(a) => Some(a),
        Err(Error::CodespaceNotPreserved { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(TrialRecord {
        trial,
        family: case.family.to_string(),
        n: case.code.n,
        k: case.basis.k(),
        engine_preserved: engine.is_some(),
        oracle_preserved: oracle.is_some(),
        agree: engine == oracle,
        engine_action: engine,
        oracle_action: oracle,
    })
}

pub fn oracle_crosscheck(seed: u64, trials: usize) -> Result<CrosscheckSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = CrosscheckSummary {
        seed,
        trials,
        agree: 0,
        preserved: 0,
        mismatches: Vec::new(),
    };
    for t in 0..trials {
        let case = random_case(&mut rng);
        let rec = crosscheck_case(t, &case)?;
        if rec.engine_preserved {
            summary.preserved += 1;
        }
        if rec.agree {
            summary.agree += 1;
        } else {
            summary.mismatches.push(rec);
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_trivial_cases() {
        let code = CssCode::from_supports(2, &[], &[]).unwrap();
        let c = SignVector::new(vec![1, -1]);
        assert_eq!(check_theta(&code, &c, &BitVec::from_support(2, &[0, 1])).unwrap(), 0);
        assert_eq!(check_theta(&code, &c, &BitVec::zeros(2)).unwrap(), 0);
    }

    #[test]
    fn unknown_fixture() {
        assert!(matches!(run_fixture("unknown"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn unencoded_cs_fixture() {
        let r = run_fixture("unencoded_cs").unwrap();
        assert!(r.passed, "{}", r.summary_text());
    }

    #[test]
    fn tetrahedral_fixture() {
        let r = run_fixture("tetrahedral15").unwrap();
        assert!(r.passed, "{}", r.summary_text());
        let t = r.classification_text.unwrap();
        assert!(t == "T on (A)" || t == "T† on (A)", "{t}");
    }

    #[test]
    fn small_crosscheck() {
        let s = oracle_crosscheck(3, 20).unwrap();
        assert!(s.all_agree(), "{:?}", s.mismatches);
    }
}
