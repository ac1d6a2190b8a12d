//! Dense complex-matrix oracle for Pauli and diagonal operators on at most a
//! handful of qubits. Qubit v is bit v of the basis index.
#![allow(dead_code)]

use cscc::gf2::BitVec;
use cscc::pauli::{
    commutator_diag_with_xpauli, commutator_slayer_with_xpauli, DiagonalGate, PauliWithPhase,
};
use num_complex::Complex64;
use rand::Rng;

pub type Mat = Vec<Vec<Complex64>>;

const TOL: f64 = 1e-9;

pub fn omega(k: u32) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4 * (k % 8) as f64)
}

pub fn zeros(dim: usize) -> Mat {
    vec![vec![Complex64::new(0.0, 0.0); dim]; dim]
}

pub fn pauli_matrix(p: &PauliWithPhase) -> Mat {
    let n = p.n();
    let dim = 1usize << n;
    let x = bits(&p.x);
    let z = bits(&p.z);
    let mut m = zeros(dim);
    for j in 0..dim {
        let sign = if (z & j).count_ones() % 2 == 1 { 4 } else { 0 };
        m[j ^ x][j] = omega(p.phase_exp as u32 + sign);
    }
    m
}

pub fn diag_matrix(d: &DiagonalGate) -> Mat {
    let dim = 1usize << d.n();
    let mut m = zeros(dim);
    for (j, row) in m.iter_mut().enumerate() {
        let e: u32 = (0..d.n())
            .filter(|v| j >> v & 1 == 1)
            .map(|v| d.rot[v] as u32)
            .sum();
        row[j] = omega(d.global_exp as u32 + e);
    }
    m
}

fn bits(v: &BitVec) -> usize {
    v.iter_ones().map(|i| 1usize << i).sum()
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let dim = a.len();
    let mut c = zeros(dim);
    for i in 0..dim {
        for k in 0..dim {
            if a[i][k].norm() < TOL {
                continue;
            }
            for j in 0..dim {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

pub fn dagger(a: &Mat) -> Mat {
    let dim = a.len();
    let mut c = zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            c[j][i] = a[i][j].conj();
        }
    }
    c
}

pub fn product(ms: &[&Mat]) -> Mat {
    let mut acc = ms[0].clone();
    for m in &ms[1..] {
        acc = matmul(&acc, m);
    }
    acc
}

pub fn same(a: &Mat, b: &Mat) -> bool {
    a.iter()
        .zip(b)
        .all(|(r, s)| r.iter().zip(s).all(|(x, y)| (x - y).norm() < TOL))
}

/// P·D·P†·D† as a matrix.
pub fn group_commutator(p: &Mat, d: &Mat) -> Mat {
    product(&[p, d, &dagger(p), &dagger(d)])
}

pub fn random_bits<R: Rng>(rng: &mut R, n: usize) -> BitVec {
    let b: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    BitVec::from_bools(&b)
}

pub fn random_pauli<R: Rng>(rng: &mut R, n: usize) -> PauliWithPhase {
    let x = random_bits(rng, n);
    let z = random_bits(rng, n);
    PauliWithPhase::new(x, z, rng.gen_range(0..8)).unwrap()
}

pub fn random_x_pauli<R: Rng>(rng: &mut R, n: usize) -> PauliWithPhase {
    let mut p = PauliWithPhase::x_type(random_bits(rng, n));
    p.phase_exp = rng.gen_range(0..8);
    p
}

pub fn random_diag<R: Rng>(rng: &mut R, n: usize, s_layer: bool) -> DiagonalGate {
    let step = if s_layer { 2 } else { 1 };
    let rot = (0..n).map(|_| step * rng.gen_range(0..8 / step)).collect();
    DiagonalGate::new(rot, rng.gen_range(0..8))
}

/// One random operation on up to four qubits checked against matrices.
/// Returns a description of the case on disagreement.
pub fn pauli_oracle_case<R: Rng>(rng: &mut R) -> Result<(), String> {
    let n = rng.gen_range(1..=4);
    match rng.gen_range(0..6) {
        0 => {
            let p = random_pauli(rng, n);
            let q = random_pauli(rng, n);
            let pq = p.multiply(&q).map_err(|e| e.to_string())?;
            let ok = same(&matmul(&pauli_matrix(&p), &pauli_matrix(&q)), &pauli_matrix(&pq));
            check(ok, || format!("multiply {p:?} {q:?}"))
        }
        1 => {
            let d = random_diag(rng, n, false);
            let p = random_x_pauli(rng, n);
            let c = commutator_diag_with_xpauli(&d, &p).map_err(|e| e.to_string())?;
            let m = group_commutator(&pauli_matrix(&p), &diag_matrix(&d));
            check(same(&m, &diag_matrix(&c)), || format!("diag commutator {d:?} {p:?}"))
        }
        2 => {
            let d = random_diag(rng, n, true);
            let p = random_x_pauli(rng, n);
            let c = commutator_slayer_with_xpauli(&d, &p).map_err(|e| e.to_string())?;
            let m = group_commutator(&pauli_matrix(&p), &diag_matrix(&d));
            check(same(&m, &pauli_matrix(&c)), || format!("S-layer commutator {d:?} {p:?}"))
        }
        3 => {
            // nested commutator: D' = [P, D], then [P, D']
            let d = random_diag(rng, n, false);
            let p = random_x_pauli(rng, n);
            let d1 = commutator_diag_with_xpauli(&d, &p).map_err(|e| e.to_string())?;
            let d2 = commutator_diag_with_xpauli(&d1, &p).map_err(|e| e.to_string())?;
            let pm = pauli_matrix(&p);
            let m1 = group_commutator(&pm, &diag_matrix(&d));
            let m2 = group_commutator(&pm, &m1);
            check(same(&m2, &diag_matrix(&d2)), || format!("nested commutator {d:?} {p:?}"))
        }
        4 => {
            let a = random_diag(rng, n, false);
            let b = random_diag(rng, n, false);
            let ab = a.compose(&b).map_err(|e| e.to_string())?;
            let ok = same(&matmul(&diag_matrix(&a), &diag_matrix(&b)), &diag_matrix(&ab))
                && same(&diag_matrix(&a.inverse()), &dagger(&diag_matrix(&a)));
            check(ok, || format!("compose/inverse {a:?} {b:?}"))
        }
        _ => {
            let d = random_diag(rng, n, false);
            let x = random_bits(rng, n);
            let xm = pauli_matrix(&PauliWithPhase::x_type(x.clone()));
            let m = product(&[&xm, &diag_matrix(&d), &xm]);
            check(same(&m, &diag_matrix(&d.conjugate_by_x(&x))), || {
                format!("conjugate_by_x {d:?} {x:?}")
            })
        }
    }
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// X S X S† = iZ and X S† X S = −iZ, by matrices and by the library.
pub fn s_conjugation_identities() -> Result<(), String> {
    let x = PauliWithPhase::x_type(BitVec::from_support(1, &[0]));
    let xm = pauli_matrix(&x);
    for (rot, phase) in [(2u8, 2u8), (6, 6)] {
        let s = DiagonalGate::new(vec![rot], 0);
        let expect = PauliWithPhase::new(BitVec::zeros(1), BitVec::from_support(1, &[0]), phase)
            .unwrap();
        let lib = commutator_slayer_with_xpauli(&s, &x).map_err(|e| e.to_string())?;
        if lib != expect {
            return Err(format!("library gives {lib:?} for rot {rot}"));
        }
        if !same(&group_commutator(&xm, &diag_matrix(&s)), &pauli_matrix(&expect)) {
            return Err(format!("matrix disagrees for rot {rot}"));
        }
    }
    Ok(())
}
