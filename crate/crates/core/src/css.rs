//! CSS codes over GF(2): assembly from a complex, Pauli-Z projection and
//! symplectic logical bases.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::color::Color;
use crate::complex::{BoundaryLabel, ColoredComplex};
use crate::error::{Error, Result};
use crate::gf2::{invert, BitMatrix, BitVec, Echelon};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    pub n: usize,
    pub hx: BitMatrix,
    pub hz: BitMatrix,
    /// Code column -> originating complex qubit id.
    pub qubit_map: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct CodeJson {
    n: usize,
    hx: Vec<Vec<usize>>,
    hz: Vec<Vec<usize>>,
    #[serde(default)]
    qubit_map: Option<Vec<usize>>,
}

impl CssCode {
    /// Checks dimensions and commutation.
    pub fn new(n: usize, hx: BitMatrix, hz: BitMatrix, qubit_map: Vec<usize>) -> Result<Self> {
        for m in [&hx, &hz] {
            if m.num_cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.num_cols(),
                });
            }
        }
        if qubit_map.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: qubit_map.len(),
            });
        }
        if let Some((x_row, z_row)) = hx.orthogonal_to(&hz) {
            return Err(Error::Commutation { x_row, z_row });
        }
        Ok(CssCode { n, hx, hz, qubit_map })
    }

    pub fn from_supports(n: usize, hx: &[Vec<usize>], hz: &[Vec<usize>]) -> Result<Self> {
        for s in hx.iter().chain(hz) {
            if let Some(&q) = s.iter().find(|&&q| q >= n) {
                return Err(Error::Malformed(format!("support index {q} out of range for n={n}")));
            }
        }
        CssCode::new(
            n,
            BitMatrix::from_supports(n, hx),
            BitMatrix::from_supports(n, hz),
            (0..n).collect(),
        )
    }

    pub fn rank_x(&self) -> usize {
        self.hx.rank()
    }

    pub fn rank_z(&self) -> usize {
        self.hz.rank()
    }

    pub fn k(&self) -> usize {
        self.n - self.rank_x() - self.rank_z()
    }

    pub fn to_json(&self) -> String {
        let sorted = |m: &BitMatrix| {
            let mut s = m.supports();
            s.sort();
            s
        };
        let doc = CodeJson {
            n: self.n,
            hx: sorted(&self.hx),
            hz: sorted(&self.hz),
            qubit_map: Some(self.qubit_map.clone()),
        };
        serde_json::to_string_pretty(&doc).expect("code serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: CodeJson = serde_json::from_str(s)?;
        let mut code = CssCode::from_supports(doc.n, &doc.hx, &doc.hz)?;
        if let Some(map) = doc.qubit_map {
            if map.len() != doc.n {
                return Err(Error::DimensionMismatch {
                    expected: doc.n,
                    found: map.len(),
                });
            }
            code.qubit_map = map;
        }
        Ok(code)
    }

    /// Projects the given columns onto the +1 eigenstate of Z.
    pub fn project_z(&self, region: &[usize]) -> Result<CssCode> {
        if region.is_empty() {
            return Err(Error::EmptyRegion);
        }
        if let Some(&q) = region.iter().find(|&&q| q >= self.n) {
            return Err(Error::RegionOutOfRange(q));
        }
        let mut in_region = vec![false; self.n];
        for &q in region {
            in_region[q] = true;
        }
        let keep: Vec<usize> = (0..self.n).filter(|&q| !in_region[q]).collect();
        if keep.is_empty() {
            return Err(Error::EmptyProjection);
        }

        // X-group elements supported off the region.
        let mut rows: Vec<BitVec> = self.hx.rows().to_vec();
        for col in (0..self.n).filter(|&q| in_region[q]) {
            if let Some(p) = rows.iter().position(|r| r.get(col)) {
                let pivot = rows.remove(p);
                for r in rows.iter_mut().filter(|r| r.get(col)) {
                    r.xor_assign(&pivot);
                }
            }
        }
        let surviving = BitMatrix::from_rows(self.n, rows);
        let hx = BitMatrix::from_rows(
            keep.len(),
            surviving
                .independent_rows()
                .into_iter()
                .map(|i| surviving.row(i).select(&keep))
                .collect(),
        );

        let mut seen = std::collections::HashSet::new();
        let hz_rows: Vec<BitVec> = self
            .hz
            .rows()
            .iter()
            .map(|r| r.select(&keep))
            .filter(|r| !r.is_zero() && seen.insert(r.clone()))
            .collect();
        let hz = BitMatrix::from_rows(keep.len(), hz_rows);

        let qubit_map = keep.iter().map(|&q| self.qubit_map[q]).collect();
        CssCode::new(keep.len(), hx, hz, qubit_map)
    }

    /// Code column of each complex qubit id, if it survives.
    pub fn column_of(&self) -> BTreeMap<usize, usize> {
        self.qubit_map
            .iter()
            .enumerate()
            .map(|(col, &q)| (q, col))
            .collect()
    }
}

/// One Hx row per cell and one Hz row per face, columns in qubit-id order.
pub fn assemble(complex: &ColoredComplex) -> Result<CssCode> {
    let n = complex.qubits.len();
    let cells: Vec<Vec<usize>> = complex.cells.iter().map(|c| c.support.clone()).collect();
    let faces: Vec<Vec<usize>> = complex.faces.iter().map(|f| f.support.clone()).collect();
    for s in cells.iter().chain(&faces) {
        if let Some(&q) = s.iter().find(|&&q| q >= n) {
            return Err(Error::Malformed(format!("support references missing qubit {q}")));
        }
    }
    // Sparse commutation check through qubit incidence.
    let mut cells_of = vec![Vec::new(); n];
    for (i, c) in cells.iter().enumerate() {
        for &q in c {
            cells_of[q].push(i);
        }
    }
    let mut count = vec![0u32; cells.len()];
    for (j, f) in faces.iter().enumerate() {
        let mut touched = Vec::new();
        for &q in f {
            for &i in &cells_of[q] {
                if count[i] == 0 {
                    touched.push(i);
                }
                count[i] += 1;
            }
        }
        let odd = touched.iter().copied().find(|&i| count[i] % 2 == 1);
        for &i in &touched {
            count[i] = 0;
        }
        if let Some(x_row) = odd {
            return Err(Error::Commutation { x_row, z_row: j });
        }
    }
    Ok(CssCode {
        n,
        hx: BitMatrix::from_supports(n, &cells),
        hz: BitMatrix::from_supports(n, &faces),
        qubit_map: (0..n).collect(),
    })
}

// ---------------------------------------------------------------------------
// Logical bases.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalPair {
    pub label: String,
    pub x: BitVec,
    pub z: BitVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalBasis {
    pub n: usize,
    pub pairs: Vec<LogicalPair>,
    pub annotations: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct PairJson {
    label: String,
    x: Vec<usize>,
    z: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct BasisJson {
    n: usize,
    pairs: Vec<PairJson>,
    #[serde(default)]
    annotations: Vec<String>,
}

/// Label of the i-th logical qubit: A, B, ..., Z, A1, B1, ...
pub fn logical_label(i: usize) -> String {
    let letter = (b'A' + (i % 26) as u8) as char;
    match i / 26 {
        0 => letter.to_string(),
        r => format!("{letter}{r}"),
    }
}

impl LogicalBasis {
    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    pub fn xs(&self) -> Vec<BitVec> {
        self.pairs.iter().map(|p| p.x.clone()).collect()
    }

    pub fn zs(&self) -> Vec<BitVec> {
        self.pairs.iter().map(|p| p.z.clone()).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.pairs.iter().map(|p| p.label.clone()).collect()
    }

    /// Builds a basis from explicit representatives, labelled in order.
    pub fn from_vectors(n: usize, xs: Vec<BitVec>, zs: Vec<BitVec>) -> Self {
        LogicalBasis {
            n,
            pairs: xs
                .into_iter()
                .zip(zs)
                .enumerate()
                .map(|(i, (x, z))| LogicalPair {
                    label: logical_label(i),
                    x,
                    z,
                })
                .collect(),
            annotations: Vec::new(),
        }
    }

    /// First violated basis invariant, if any.
    pub fn violation(&self, code: &CssCode) -> Option<String> {
        if self.n != code.n {
            return Some(format!("basis has length {} but code has n={}", self.n, code.n));
        }
        let k = self.pairs.len();
        for (i, a) in self.pairs.iter().enumerate() {
            for (j, b) in self.pairs.iter().enumerate() {
                if a.x.dot(&b.z) != (i == j) {
                    return Some(format!("Xbar_{} and Zbar_{} pair wrongly", a.label, b.label));
                }
            }
            if let Some(r) = code.hz.rows().iter().position(|r| r.dot(&a.x)) {
                return Some(format!("Xbar_{} anticommutes with Hz row {r}", a.label));
            }
            if let Some(r) = code.hx.rows().iter().position(|r| r.dot(&a.z)) {
                return Some(format!("Zbar_{} anticommutes with Hx row {r}", a.label));
            }
        }
        let x_span = Echelon::from_rows(code.n, code.hx.rows());
        let z_span = Echelon::from_rows(code.n, code.hz.rows());
        for p in &self.pairs {
            if x_span.contains(&p.x) {
                return Some(format!("Xbar_{} is a stabilizer", p.label));
            }
            if z_span.contains(&p.z) {
                return Some(format!("Zbar_{} is a stabilizer", p.label));
            }
        }
        if k != code.k() {
            return Some(format!("basis has {k} pairs but code has k={}", code.k()));
        }
        None
    }

    pub fn to_json(&self) -> String {
        let doc = BasisJson {
            n: self.n,
            pairs: self
                .pairs
                .iter()
                .map(|p| PairJson {
                    label: p.label.clone(),
                    x: p.x.support(),
                    z: p.z.support(),
                })
                .collect(),
            annotations: self.annotations.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("basis serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: BasisJson = serde_json::from_str(s)?;
        let vec = |support: &[usize]| -> Result<BitVec> {
            match support.iter().find(|&&q| q >= doc.n) {
                Some(q) => Err(Error::Malformed(format!("logical support index {q} out of range"))),
                None => Ok(BitVec::from_support(doc.n, support)),
            }
        };
        let mut pairs = Vec::new();
        for p in &doc.pairs {
            pairs.push(LogicalPair {
                label: p.label.clone(),
                x: vec(&p.x)?,
                z: vec(&p.z)?,
            });
        }
        Ok(LogicalBasis {
            n: doc.n,
            pairs,
            annotations: doc.annotations,
        })
    }
}

/// Representatives of `kernel(check) / rowspace(stabilizers)`.
fn quotient_basis(check: &BitMatrix, stabilizers: &BitMatrix) -> Vec<BitVec> {
    let mut span = Echelon::from_rows(stabilizers.num_cols(), stabilizers.rows());
    check
        .nullspace()
        .into_iter()
        .filter(|v| span.insert(v.clone()))
        .collect()
}

/// Symplectic Gram-Schmidt over GF(2).
pub fn logical_basis(code: &CssCode) -> Result<LogicalBasis> {
    let mut xs = quotient_basis(&code.hz, &code.hx);
    let mut zs = quotient_basis(&code.hx, &code.hz);
    if xs.is_empty() {
        return Err(Error::NoLogicalQubits);
    }
    let mut out_x = Vec::new();
    let mut out_z = Vec::new();
    while !xs.is_empty() {
        let x = xs.remove(0);
        let p = zs
            .iter()
            .position(|z| x.dot(z))
            .ok_or_else(|| Error::Construction("logical X without a partner".into()))?;
        let z = zs.remove(p);
        for other in xs.iter_mut().filter(|o| o.dot(&z)) {
            other.xor_assign(&x);
        }
        for other in zs.iter_mut().filter(|o| x.dot(o)) {
            other.xor_assign(&z);
        }
        out_x.push(x);
        out_z.push(z);
    }
    Ok(LogicalBasis::from_vectors(code.n, out_x, out_z))
}

// ---------------------------------------------------------------------------
// Geometric matching.

pub const GEOMETRIC_NONE: &str = "geometric-match: none";
pub const GEOMETRIC_IDENTITY: &str = "geometric-match: identity";

type Exact = Ratio<i128>;
type Point = [Exact; 3];

fn exact_pos(complex: &ColoredComplex, q: usize) -> Point {
    complex.qubits[q]
        .pos
        .map(|c| Exact::new(*c.numer() as i128, *c.denom() as i128))
}

fn centroid(points: &[Point]) -> Option<Point> {
    if points.is_empty() {
        return None;
    }
    let mut s = [Exact::from_integer(0); 3];
    for p in points {
        for a in 0..3 {
            s[a] += p[a];
        }
    }
    let k = Exact::from_integer(points.len() as i128);
    Some(s.map(|c| c / k))
}

fn dot3(a: &Point, b: &Point) -> Exact {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn sub3(a: &Point, b: &Point) -> Point {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn segment_distance_sq(p: &Point, a: &Point, b: &Point) -> Exact {
    let ab = sub3(b, a);
    let ap = sub3(p, a);
    let len = dot3(&ab, &ab);
    let zero = Exact::from_integer(0);
    let one = Exact::from_integer(1);
    let t = if len == zero {
        zero
    } else {
        (dot3(&ap, &ab) / len).max(zero).min(one)
    };
    let foot = [a[0] + t * ab[0], a[1] + t * ab[1], a[2] + t * ab[2]];
    let d = sub3(p, &foot);
    dot3(&d, &d)
}

/// The unique nontrivial logical Z class supported near a segment, if any.
fn tube_logical(
    code: &CssCode,
    positions: &[Point],
    a: &Point,
    b: &Point,
    z_span: &Echelon,
) -> Option<BitVec> {
    for radius in [Exact::new(1, 4), Exact::new(3, 8), Exact::new(1, 2), Exact::new(3, 4), Exact::from_integer(1)] {
        let r2 = radius * radius;
        let tube: Vec<usize> = (0..code.n)
            .filter(|&q| segment_distance_sq(&positions[q], a, b) <= r2)
            .collect();
        if tube.is_empty() {
            continue;
        }
        let local = code.hx.select_columns(&tube);
        let mut span = z_span.clone();
        let classes: Vec<BitVec> = local
            .nullspace()
            .into_iter()
            .map(|v| v.scatter(&tube, code.n))
            .filter(|v| span.insert(v.clone()))
            .collect();
        match classes.len() {
            0 => continue,
            1 => return classes.into_iter().next(),
            _ => return None,
        }
    }
    None
}

fn edge_color_counts(code_edges: &[([usize; 2], Color)], z: &BitVec) -> BTreeMap<Color, usize> {
    let mut counts = BTreeMap::new();
    for (e, color) in code_edges {
        if z.get(e[0]) && z.get(e[1]) {
            *counts.entry(*color).or_insert(0) += 1;
        }
    }
    counts
}

/// Dominant edge color of a Z support after greedily adding Hz rows that
/// reduce the number of distinct edge colors it contains.
fn dominant_edge_color(
    code: &CssCode,
    code_edges: &[([usize; 2], Color)],
    z: &BitVec,
) -> Option<Color> {
    let mut cur = z.clone();
    let mut distinct = edge_color_counts(code_edges, &cur).len();
    for row in code.hz.rows() {
        let cand = cur.xor(row);
        let d = edge_color_counts(code_edges, &cand).len();
        if d < distinct || (d == distinct && cand.count_ones() < cur.count_ones()) {
            cur = cand;
            distinct = d;
        }
    }
    edge_color_counts(code_edges, &cur)
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .map(|(c, _)| c)
}

/// Re-expresses the basis so that Zbar_A runs between the two blue
/// boundaries, Zbar_B between the two red ones, and so on for any further
/// same-colored boundary pair. Falls back to the input with an annotation.
pub fn match_geometric_basis(
    complex: &ColoredComplex,
    code: &CssCode,
    basis: &LogicalBasis,
) -> LogicalBasis {
    let none = || {
        let mut b = basis.clone();
        b.annotations.push(GEOMETRIC_NONE.to_string());
        b
    };
    if basis.n != code.n || code.qubit_map.iter().any(|&q| q >= complex.qubits.len()) {
        return none();
    }
    let k = basis.k();
    let positions: Vec<Point> = code
        .qubit_map
        .iter()
        .map(|&q| exact_pos(complex, q))
        .collect();
    let column = code.column_of();

    // Same-colored boundary pairs, blue first then red, green, yellow.
    let mut pairs: Vec<(Color, Point, Point)> = Vec::new();
    for color in [Color::B, Color::R, Color::G, Color::Y] {
        let centres: Vec<Point> = complex
            .boundaries
            .iter()
            .filter(|b| b.label == BoundaryLabel::Color(color))
            .filter_map(|b| {
                let pts: Vec<Point> = b
                    .support
                    .iter()
                    .filter_map(|q| column.get(q))
                    .map(|&c| positions[c])
                    .collect();
                centroid(&pts)
            })
            .collect();
        for i in 0..centres.len() {
            for j in i + 1..centres.len() {
                pairs.push((color, centres[i], centres[j]));
            }
        }
    }

    let z_span = Echelon::from_rows(code.n, code.hz.rows());
    let mut found: Vec<(Color, BitVec)> = Vec::new();
    let mut found_span = z_span.clone();
    for (color, a, b) in &pairs {
        if found.len() == k {
            break;
        }
        if let Some(z) = tube_logical(code, &positions, a, b, &z_span) {
            if found_span.insert(z.clone()) {
                found.push((*color, z));
            }
        }
    }
    if found.is_empty() {
        return none();
    }

    // Coefficients of each new Z in the old basis, completed by old Zs.
    let xs = basis.xs();
    let zs = basis.zs();
    let coeffs = |z: &BitVec| BitVec::from_bools(&xs.iter().map(|x| x.dot(z)).collect::<Vec<_>>());
    let mut rows: Vec<BitVec> = found.iter().map(|(_, z)| coeffs(z)).collect();
    let mut new_z: Vec<BitVec> = found.iter().map(|(_, z)| z.clone()).collect();
    let mut rank = Echelon::from_rows(k, &rows);
    if rank.rank() != rows.len() {
        return none();
    }
    for (l, z) in zs.iter().enumerate() {
        if rows.len() == k {
            break;
        }
        let unit = BitVec::from_support(k, &[l]);
        if rank.insert(unit.clone()) {
            rows.push(unit);
            new_z.push(z.clone());
        }
    }
    if rows.len() != k {
        return none();
    }

    let is_identity = rows
        .iter()
        .enumerate()
        .all(|(j, r)| *r == BitVec::from_support(k, &[j]));
    let mut out = if is_identity {
        let mut b = basis.clone();
        b.annotations.push(GEOMETRIC_IDENTITY.to_string());
        b
    } else {
        // new X_j = sum_l (M^-T)_{jl} X_l
        let Some(inv) = invert(&rows) else {
            return none();
        };
        let new_x: Vec<BitVec> = (0..k)
            .map(|j| {
                let mut x = BitVec::zeros(code.n);
                for (l, xl) in xs.iter().enumerate() {
                    if inv[l].get(j) {
                        x.xor_assign(xl);
                    }
                }
                x
            })
            .collect();
        let mut b = LogicalBasis::from_vectors(code.n, new_x, new_z);
        b.annotations = basis.annotations.clone();
        b
    };

    let matched: Vec<String> = found
        .iter()
        .enumerate()
        .map(|(j, (color, _))| format!("{}-{} boundaries -> {}", color, color, logical_label(j)))
        .collect();
    out.annotations
        .push(format!("geometric-match: {}", matched.join(", ")));

    let code_edges: Vec<([usize; 2], Color)> = complex
        .edges
        .iter()
        .filter_map(|e| {
            let a = column.get(&e.support[0])?;
            let b = column.get(&e.support[1])?;
            Some(([*a, *b], e.color))
        })
        .collect();
    for p in &out.pairs {
        if let Some(c) = dominant_edge_color(code, &code_edges, &p.z) {
            out.annotations
                .push(format!("Zbar_{} dominant edge color: {}", p.label, c));
        }
    }
    for i in 0..out.pairs.len() {
        for j in i + 1..out.pairs.len() {
            let overlap = out.pairs[i].z.overlap(&out.pairs[j].z);
            out.annotations.push(format!(
                "Zbar overlap ({},{}): {}",
                out.pairs[i].label, out.pairs[j].label, overlap
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_cube, build_truncated_cube, MIN_TRUNCATED_EXTENT};

    #[test]
    fn labels() {
        assert_eq!(logical_label(0), "A");
        assert_eq!(logical_label(1), "B");
        assert_eq!(logical_label(27), "B1");
    }

    #[test]
    fn toy_bell_projection() {
        let code = CssCode::from_supports(2, &[vec![0, 1]], &[]).unwrap();
        let p = code.project_z(&[1]).unwrap();
        assert_eq!(p.n, 1);
        assert_eq!(p.hx.num_rows(), 0);
        assert_eq!(p.k(), 1);
        assert_eq!(p.qubit_map, vec![0]);
    }

    #[test]
    fn projection_errors() {
        let code = CssCode::from_supports(2, &[vec![0, 1]], &[]).unwrap();
        assert!(matches!(code.project_z(&[]), Err(Error::EmptyRegion)));
        assert!(matches!(code.project_z(&[2]), Err(Error::RegionOutOfRange(2))));
        assert!(matches!(code.project_z(&[0, 1]), Err(Error::EmptyProjection)));
    }

    #[test]
    fn projection_keeps_combinations_not_rows() {
        // rows 0,1 each touch qubit 0 but their sum avoids it
        let code = CssCode::from_supports(4, &[vec![0, 1, 2], vec![0, 3]], &[]).unwrap();
        let p = code.project_z(&[0]).unwrap();
        assert_eq!(p.hx.supports(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn anticommuting_input_rejected() {
        assert!(matches!(
            CssCode::from_supports(2, &[vec![0]], &[vec![0, 1]]),
            Err(Error::Commutation { x_row: 0, z_row: 0 })
        ));
    }

    #[test]
    fn no_logicals_is_an_error() {
        let code = CssCode::from_supports(1, &[vec![0]], &[]).unwrap();
        assert!(matches!(logical_basis(&code), Err(Error::NoLogicalQubits)));
    }

    #[test]
    fn cube_has_three_logicals() {
        let c = build_cube([1, 1, 1]).unwrap();
        let code = assemble(&c).unwrap();
        assert_eq!((code.n, code.rank_x(), code.rank_z(), code.k()), (148, 32, 113, 3));
        let basis = logical_basis(&code).unwrap();
        assert_eq!(basis.violation(&code), None);
    }

    #[test]
    fn truncated_projection_and_geometry() {
        let c = build_truncated_cube(MIN_TRUNCATED_EXTENT).unwrap();
        let code = assemble(&c).unwrap();
        assert_eq!(code.k(), 3);
        let p = code.project_z(&c.truncation_region).unwrap();
        assert_eq!(p.n, 341);
        assert_eq!(p.k(), 2);
        assert!(p.rank_z() <= code.rank_z());
        let basis = logical_basis(&p).unwrap();
        assert_eq!(basis.labels(), vec!["A", "B"]);
        let g = match_geometric_basis(&c, &p, &basis);
        assert_eq!(g.violation(&p), None);
        assert!(!g.annotations.iter().any(|a| a == GEOMETRIC_NONE), "{:?}", g.annotations);
        assert!(g.annotations.iter().any(|a| a == "Zbar_A dominant edge color: b"), "{:?}", g.annotations);
        assert!(g.annotations.iter().any(|a| a == "Zbar_B dominant edge color: r"), "{:?}", g.annotations);
        // matching an already matched basis is the identity
        let again = match_geometric_basis(&c, &p, &g);
        assert_eq!(again.pairs, g.pairs);
        assert!(again.annotations.iter().any(|a| a == GEOMETRIC_IDENTITY));
    }

    #[test]
    fn json_round_trip() {
        let code = CssCode::from_supports(4, &[vec![0, 1, 2, 3]], &[vec![0, 1], vec![2, 3]]).unwrap();
        let back = CssCode::from_json(&code.to_json()).unwrap();
        assert_eq!(back, code);
        let basis = logical_basis(&code).unwrap();
        assert_eq!(LogicalBasis::from_json(&basis.to_json()).unwrap(), basis);
    }
}
