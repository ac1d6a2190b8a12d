//! Pauli operators and diagonal gates with phases tracked as powers of
//! ω = e^{iπ/4}.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf2::BitVec;

/// ω^phase_exp · X^x · Z^z
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliWithPhase {
    pub x: BitVec,
    pub z: BitVec,
    pub phase_exp: u8,
}

impl PauliWithPhase {
    pub fn identity(n: usize) -> Self {
        PauliWithPhase {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            phase_exp: 0,
        }
    }

    pub fn new(x: BitVec, z: BitVec, phase_exp: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        Ok(PauliWithPhase {
            x,
            z,
            phase_exp: phase_exp % 8,
        })
    }

    pub fn x_type(x: BitVec) -> Self {
        let n = x.len();
        PauliWithPhase {
            x,
            z: BitVec::zeros(n),
            phase_exp: 0,
        }
    }

    pub fn z_type(z: BitVec) -> Self {
        let n = z.len();
        PauliWithPhase {
            x: BitVec::zeros(n),
            z,
            phase_exp: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn is_x_type(&self) -> bool {
        self.z.is_zero()
    }

    pub fn multiply(&self, other: &PauliWithPhase) -> Result<PauliWithPhase> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        // Z^z1 X^x2 = (-1)^{|z1 & x2|} X^x2 Z^z1
        let swaps = self.z.overlap(&other.x) as u32;
        let phase = (self.phase_exp as u32 + other.phase_exp as u32 + 4 * swaps) % 8;
        Ok(PauliWithPhase {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
            phase_exp: phase as u8,
        })
    }
}

pub fn multiply(p: &PauliWithPhase, q: &PauliWithPhase) -> Result<PauliWithPhase> {
    p.multiply(q)
}

/// ω^global_exp · ∏_v diag(1, ω^rot_v)
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalGate {
    pub rot: Vec<u8>,
    pub global_exp: u8,
}

impl DiagonalGate {
    pub fn identity(n: usize) -> Self {
        DiagonalGate {
            rot: vec![0; n],
            global_exp: 0,
        }
    }

    pub fn new(rot: Vec<u8>, global_exp: u8) -> Self {
        DiagonalGate {
            rot: rot.into_iter().map(|r| r % 8).collect(),
            global_exp: global_exp % 8,
        }
    }

    /// T^{c_v} on every qubit.
    pub fn transversal(signs: &[i8]) -> Self {
        DiagonalGate {
            rot: signs.iter().map(|&c| (c as i32).rem_euclid(8) as u8).collect(),
            global_exp: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.rot.len()
    }

    pub fn compose(&self, other: &DiagonalGate) -> Result<DiagonalGate> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(DiagonalGate {
            rot: self
                .rot
                .iter()
                .zip(&other.rot)
                .map(|(a, b)| (a + b) % 8)
                .collect(),
            global_exp: (self.global_exp + other.global_exp) % 8,
        })
    }

    pub fn inverse(&self) -> DiagonalGate {
        DiagonalGate {
            rot: self.rot.iter().map(|r| (8 - r) % 8).collect(),
            global_exp: (8 - self.global_exp) % 8,
        }
    }

    pub fn is_s_layer(&self) -> bool {
        self.rot.iter().all(|r| r % 2 == 0)
    }

    /// ω-exponent picked up by the computational basis state `x`.
    pub fn phase_on(&self, x: &BitVec) -> u8 {
        let s: u32 = x.iter_ones().map(|v| self.rot[v] as u32).sum();
        ((s + self.global_exp as u32) % 8) as u8
    }

    /// X^x · D · X^x.
    pub fn conjugate_by_x(&self, x: &BitVec) -> DiagonalGate {
        let mut rot = self.rot.clone();
        let mut global = self.global_exp as u32;
        for v in x.iter_ones() {
            global += self.rot[v] as u32;
            rot[v] = (8 - self.rot[v]) % 8;
        }
        DiagonalGate {
            rot,
            global_exp: (global % 8) as u8,
        }
    }
}

fn require_x_type(p: &PauliWithPhase, n: usize) -> Result<()> {
    if p.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.n(),
        });
    }
    match p.z.first_one() {
        Some(qubit) => Err(Error::NotXType { qubit }),
        None => Ok(()),
    }
}

/// P·D·P†·D† for an X-type P; on each v in supp(P),
/// X T^a X T^{-a} = ω^a diag(1, ω^{-2a}).
pub fn commutator_diag_with_xpauli(d: &DiagonalGate, p: &PauliWithPhase) -> Result<DiagonalGate> {
    require_x_type(p, d.n())?;
    let mut rot = vec![0u8; d.n()];
    let mut global = 0u32;
    for v in p.x.iter_ones() {
        rot[v] = ((16 - 2 * d.rot[v] as u32) % 8) as u8;
        global += d.rot[v] as u32;
    }
    Ok(DiagonalGate {
        rot,
        global_exp: (global % 8) as u8,
    })
}

/// P·D·P†·D† for an S-layer D and X-type P, returned as a Pauli.
pub fn commutator_slayer_with_xpauli(
    d: &DiagonalGate,
    p: &PauliWithPhase,
) -> Result<PauliWithPhase> {
    require_x_type(p, d.n())?;
    if let Some((qubit, &exp)) = d.rot.iter().enumerate().find(|(_, r)| *r % 2 == 1) {
        return Err(Error::OddRotation { qubit, exp });
    }
    let mut z = BitVec::zeros(d.n());
    let mut phase = 0u32;
    for v in p.x.iter_ones() {
        if (d.rot[v] / 2) % 2 == 1 {
            z.set(v, true);
        }
        phase += d.rot[v] as u32;
    }
    Ok(PauliWithPhase {
        x: BitVec::zeros(d.n()),
        z,
        phase_exp: (phase % 8) as u8,
    })
}

// ---------------------------------------------------------------------------
// Serialization.

#[derive(Serialize, Deserialize)]
struct PauliJson {
    n: usize,
    x: Vec<usize>,
    z: Vec<usize>,
    phase_exp: u8,
}

impl Serialize for PauliWithPhase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PauliJson {
            n: self.n(),
            x: self.x.support(),
            z: self.z.support(),
            phase_exp: self.phase_exp,
        }
        .serialize(s)
    }
}

fn checked_support<E: serde::de::Error>(n: usize, support: &[usize]) -> std::result::Result<BitVec, E> {
    match support.iter().find(|&&q| q >= n) {
        Some(q) => Err(E::custom(format!("index {q} out of range for n={n}"))),
        None => Ok(BitVec::from_support(n, support)),
    }
}

impl<'de> Deserialize<'de> for PauliWithPhase {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PauliJson::deserialize(d)?;
        Ok(PauliWithPhase {
            x: checked_support(j.n, &j.x)?,
            z: checked_support(j.n, &j.z)?,
            phase_exp: j.phase_exp % 8,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct RotJson {
    id: usize,
    exp: u8,
}

#[derive(Serialize, Deserialize)]
struct DiagJson {
    n: usize,
    rot: Vec<RotJson>,
    global_exp: u8,
}

impl Serialize for DiagonalGate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiagJson {
            n: self.n(),
            rot: self
                .rot
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(id, &exp)| RotJson { id, exp })
                .collect(),
            global_exp: self.global_exp,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiagonalGate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DiagJson::deserialize(d)?;
        let mut rot = vec![0u8; j.n];
        for r in &j.rot {
            if r.id >= j.n {
                return Err(serde::de::Error::custom(format!("index {} out of range", r.id)));
            }
            rot[r.id] = r.exp % 8;
        }
        Ok(DiagonalGate {
            rot,
            global_exp: j.global_exp % 8,
        })
    }
}
