//! Small reference codes and a seeded random CSS code generator.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::color::Color;
use crate::complex::{ColoredComplex, DualComplex, DualVertex, Position};
use crate::css::{logical_basis, CssCode, LogicalBasis};
use crate::error::Result;
use crate::gf2::{BitMatrix, BitVec};
use crate::phase_poly::SignVector;

/// The 15-qubit tetrahedral code as a colored complex: one qubit per
/// nonempty subset of the four corners of a tetrahedron, one cell per
/// corner and one boundary opposite each corner.
pub fn tetrahedral15() -> Result<ColoredComplex> {
    let one = |x: i64| num_rational::Rational64::from_integer(x);
    let corners: [Position; 4] = [
        [one(0), one(0), one(0)],
        [one(1), one(0), one(0)],
        [one(0), one(1), one(0)],
        [one(0), one(0), one(1)],
    ];
    let core = corners
        .iter()
        .enumerate()
        .map(|(i, p)| (*p, Color::from_index(i)))
        .collect();
    let outer = (0..4)
        .map(|j| (format!("opposite-{}", Color::from_index(j)), Color::from_index(j)))
        .collect();
    let tets = (1..16u8)
        .map(|s| {
            let mut t = [DualVertex::Core(0); 4];
            for (i, v) in t.iter_mut().enumerate() {
                *v = if s >> i & 1 == 1 {
                    DualVertex::Core(i)
                } else {
                    DualVertex::Outer(i)
                };
            }
            t
        })
        .collect();
    DualComplex { core, outer, tets }.into_primal()
}

/// One randomly drawn engine-versus-oracle instance.
#[derive(Clone, Debug)]
pub struct RandomCase {
    pub family: &'static str,
    pub code: CssCode,
    pub basis: LogicalBasis,
    pub signs: SignVector,
}

fn random_vec<R: Rng>(rng: &mut R, n: usize, density: f64) -> BitVec {
    let bits: Vec<bool> = (0..n).map(|_| rng.gen_bool(density)).collect();
    BitVec::from_bools(&bits)
}

fn random_signs<R: Rng>(rng: &mut R, n: usize) -> SignVector {
    SignVector::new((0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect())
}

/// Random Z checks drawn from the space orthogonal to the X checks.
fn random_hz<R: Rng>(rng: &mut R, hx: &BitMatrix, max_rows: usize) -> BitMatrix {
    let n = hx.num_cols();
    let null = hx.nullspace();
    let mut hz = BitMatrix::new(n);
    if null.is_empty() {
        return hz;
    }
    let rows = rng.gen_range(0..=max_rows.min(null.len().saturating_sub(1)));
    for _ in 0..rows {
        let mut v = BitVec::zeros(n);
        for b in &null {
            if rng.gen_bool(0.5) {
                v.xor_assign(b);
            }
        }
        if !v.is_zero() {
            hz.push(v);
        }
    }
    hz
}

fn general<R: Rng>(rng: &mut R) -> CssCode {
    let n = rng.gen_range(3..=14);
    let mut hx = BitMatrix::new(n);
    for _ in 0..rng.gen_range(1..=4usize.min(n - 1)) {
        let v = random_vec(rng, n, 0.5);
        if !v.is_zero() {
            hx.push(v);
        }
    }
    let hz = random_hz(rng, &hx, 4);
    CssCode::new(n, hx, hz, (0..n).collect()).expect("Hz drawn from the dual of Hx")
}

fn no_x_checks<R: Rng>(rng: &mut R) -> CssCode {
    let n = rng.gen_range(1..=10);
    let hx = BitMatrix::new(n);
    let hz = random_hz(rng, &hx, 3);
    CssCode::new(n, hx, hz, (0..n).collect()).expect("no X checks")
}

/// The [[8,3,2]] cube code with its columns permuted and padded by qubits
/// fixed to |0>. With bipartition signs it carries CCZ.
fn cube832<R: Rng>(rng: &mut R) -> (CssCode, SignVector) {
    let pad = rng.gen_range(0..=6);
    let n = 8 + pad;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let col = |v: usize| perm[v];
    let all: Vec<usize> = (0..8).map(col).collect();
    let mut hz: Vec<Vec<usize>> = Vec::new();
    for axis in 0..3 {
        let face: Vec<usize> = (0..8).filter(|v| v >> axis & 1 == 0).map(col).collect();
        hz.push(face);
    }
    hz.push((0..8).filter(|v| (v ^ v >> 1) & 1 == 0).map(col).collect());
    for p in 8..n {
        hz.push(vec![col(p)]);
    }
    let mut c = vec![1i8; n];
    for v in 0..8 {
        if (v as u32).count_ones() % 2 == 1 {
            c[col(v)] = -1;
        }
    }
    for p in 8..n {
        c[col(p)] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    // occasionally break the sign pattern
    if rng.gen_bool(0.25) {
        let v = col(rng.gen_range(0..8));
        c[v] = -c[v];
    }
    let code = CssCode::from_supports(n, &[all], &hz).expect("cube code commutes");
    (code, SignVector::new(c))
}

/// Draws a random CSS code with at least one logical qubit, a symplectic
/// basis and a ±1 sign vector.
pub fn random_case<R: Rng>(rng: &mut R) -> RandomCase {
    loop {
        let pick = rng.gen_range(0..10);
        let (family, code, signs) = match pick {
            0..=5 => {
                let code = general(rng);
                let s = random_signs(rng, code.n);
                ("general", code, s)
            }
            6..=7 => {
                let code = no_x_checks(rng);
                let s = random_signs(rng, code.n);
                ("no-x-checks", code, s)
            }
            _ => {
                let (code, s) = cube832(rng);
                ("cube832", code, s)
            }
        };
        if code.k() == 0 {
            continue;
        }
        let basis = logical_basis(&code).expect("k >= 1");
        return RandomCase {
            family,
            code,
            basis,
            signs,
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{bipartition, validate};
    use crate::css::assemble;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tetrahedral_code_parameters() {
        let c = tetrahedral15().unwrap();
        assert!(validate(&c).all_passed(), "{:?}", validate(&c));
        assert_eq!(c.faces.len(), 18);
        let code = assemble(&c).unwrap();
        assert_eq!((code.n, code.rank_x(), code.rank_z(), code.k()), (15, 4, 10, 1));
        assert!(c.cells.iter().all(|cell| cell.support.len() == 8));
        assert!(bipartition(&c).unwrap().separates(&c.edges));
    }

    #[test]
    fn random_cases_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let case = random_case(&mut rng);
            assert!(case.code.n <= 14);
            assert_eq!(case.basis.violation(&case.code), None);
            assert_eq!(case.signs.len(), case.code.n);
        }
    }
}
