//! Four-colorable 3D cell complexes for the color code.
//!
//! Complexes are built in the dual picture: a tetrahedralization whose
//! vertices carry one of four colors, one of each color per tetrahedron.
//! Qubits are tetrahedra, cells are non-outer dual vertices, faces are dual
//! edges with at least one non-outer endpoint and edges are dual triangles
//! shared by two tetrahedra.
//!
//! The cube uses the barycentric subdivision of the cubic lattice. Points are
//! kept in doubled integer coordinates; a point's color is fixed by how many
//! of its coordinates are odd (vertex r, edge centre y, face centre g, cell
//! centre b). The six facets are
//!
//! * `left`/`right`: integer planes x = 0, X, which avoid cell centres (blue),
//! * `front`/`back`: half-integer planes y = 1/2, Y + 1/2, which avoid lattice
//!   vertices (red),
//! * `top`: a crown surface through bottom corners, side-face centres and cell
//!   centres of the last layer, which avoids edge centres (yellow),
//! * `bottom`: inverted pyramids over the base faces of the first layer, which
//!   avoid face centres (green).
//!
//! Each facet is coned off with one outer vertex of its color.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Rational64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::color::{Color, ColorPair};
use crate::error::{Error, Result};

pub type Coord = Rational64;
pub type Position = [Coord; 3];

pub const LEFT: &str = "left";
pub const RIGHT: &str = "right";
pub const FRONT: &str = "front";
pub const BACK: &str = "back";
pub const TOP: &str = "top";
pub const BOTTOM: &str = "bottom";
pub const TRUNCATED: &str = "truncated";

/// Smallest extent accepted by [`build_truncated_cube`].
pub const MIN_TRUNCATED_EXTENT: [usize; 3] = [2, 2, 1];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Qubit {
    pub id: usize,
    #[serde(with = "position_serde")]
    pub pos: Position,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub support: [usize; 2],
    pub color: Color,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub support: Vec<usize>,
    pub color: ColorPair,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub support: Vec<usize>,
    pub color: Color,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundaryLabel {
    Color(Color),
    PauliZ,
}

impl BoundaryLabel {
    pub fn color(self) -> Option<Color> {
        match self {
            BoundaryLabel::Color(c) => Some(c),
            BoundaryLabel::PauliZ => None,
        }
    }
}

impl Serialize for BoundaryLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BoundaryLabel::Color(c) => c.serialize(s),
            BoundaryLabel::PauliZ => s.serialize_str("Z"),
        }
    }
}

impl<'de> Deserialize<'de> for BoundaryLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "Z" {
            return Ok(BoundaryLabel::PauliZ);
        }
        s.parse()
            .map(BoundaryLabel::Color)
            .map_err(serde::de::Error::custom)
    }
}

/// An exterior facet: its descriptor, label and the qubits lying on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Boundary {
    pub facet: String,
    pub label: BoundaryLabel,
    pub support: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredComplex {
    pub qubits: Vec<Qubit>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    pub cells: Vec<Cell>,
    pub boundaries: Vec<Boundary>,
    pub truncation_region: Vec<usize>,
}

impl ColoredComplex {
    pub fn num_qubits(&self) -> usize {
        self.qubits.len()
    }

    pub fn boundary(&self, facet: &str) -> Option<&Boundary> {
        self.boundaries.iter().find(|b| b.facet == facet)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("complex serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

mod position_serde {
    use super::{Coord, Position};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(pos: &Position, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(3))?;
        for c in pos {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Position, D::Error> {
        let raw = <[String; 3]>::deserialize(d)?;
        let mut out = [Coord::from_integer(0); 3];
        for (o, r) in out.iter_mut().zip(&raw) {
            *o = r
                .parse::<Coord>()
                .map_err(|e| serde::de::Error::custom(format!("bad rational `{r}`: {e}")))?;
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Dual description and translation to the primal complex.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum DualVertex {
    Core(usize),
    Outer(usize),
}

/// A four-colored tetrahedralization with outer (boundary) vertices.
pub(crate) struct DualComplex {
    pub core: Vec<(Position, Color)>,
    pub outer: Vec<(String, Color)>,
    pub tets: Vec<[DualVertex; 4]>,
}

impl DualComplex {
    fn color(&self, v: DualVertex) -> Color {
        match v {
            DualVertex::Core(i) => self.core[i].1,
            DualVertex::Outer(i) => self.outer[i].1,
        }
    }

    pub fn into_primal(self) -> Result<ColoredComplex> {
        // Canonical tetrahedra and their centroids over core vertices.
        let mut tets: Vec<(Position, [DualVertex; 4])> = Vec::with_capacity(self.tets.len());
        for t in &self.tets {
            let mut t = *t;
            t.sort();
            let colors: BTreeSet<Color> = t.iter().map(|&v| self.color(v)).collect();
            if colors.len() != 4 {
                return Err(Error::Construction(format!(
                    "tetrahedron {t:?} is not four-colored"
                )));
            }
            let core: Vec<&Position> = t
                .iter()
                .filter_map(|v| match v {
                    DualVertex::Core(i) => Some(&self.core[*i].0),
                    DualVertex::Outer(_) => None,
                })
                .collect();
            if core.is_empty() {
                return Err(Error::Construction(format!(
                    "tetrahedron {t:?} has no interior vertex"
                )));
            }
            let k = Coord::from_integer(core.len() as i64);
            let mut pos = [Coord::from_integer(0); 3];
            for p in &core {
                for a in 0..3 {
                    pos[a] += p[a];
                }
            }
            for c in &mut pos {
                *c /= k;
            }
            tets.push((pos, t));
        }
        tets.sort();
        if tets.windows(2).any(|w| w[0].1 == w[1].1) {
            return Err(Error::Construction("duplicate tetrahedron".into()));
        }

        let qubits: Vec<Qubit> = tets
            .iter()
            .enumerate()
            .map(|(id, (pos, _))| Qubit { id, pos: *pos })
            .collect();

        let mut vertex_support: BTreeMap<DualVertex, Vec<usize>> = BTreeMap::new();
        let mut edge_support: BTreeMap<(DualVertex, DualVertex), Vec<usize>> = BTreeMap::new();
        let mut tri_support: BTreeMap<[DualVertex; 3], Vec<usize>> = BTreeMap::new();
        for (q, (_, t)) in tets.iter().enumerate() {
            for i in 0..4 {
                vertex_support.entry(t[i]).or_default().push(q);
                for j in i + 1..4 {
                    edge_support.entry((t[i], t[j])).or_default().push(q);
                    for l in j + 1..4 {
                        tri_support.entry([t[i], t[j], t[l]]).or_default().push(q);
                    }
                }
            }
        }

        let mut cells: Vec<Cell> = vertex_support
            .iter()
            .filter_map(|(&v, s)| match v {
                DualVertex::Core(_) => Some(Cell {
                    support: s.clone(),
                    color: self.color(v),
                }),
                DualVertex::Outer(_) => None,
            })
            .collect();
        cells.sort_by(|a, b| a.support.cmp(&b.support));

        let mut faces: Vec<Face> = edge_support
            .iter()
            .filter(|((a, b), _)| {
                matches!(a, DualVertex::Core(_)) || matches!(b, DualVertex::Core(_))
            })
            .map(|(&(a, b), s)| Face {
                support: s.clone(),
                color: ColorPair::new(self.color(a), self.color(b))
                    .expect("tetrahedra are four-colored"),
            })
            .collect();
        faces.sort_by(|a, b| a.support.cmp(&b.support));

        let mut edges = Vec::new();
        for (tri, s) in &tri_support {
            match s.len() {
                1 => {}
                2 => {
                    let present: BTreeSet<Color> = tri.iter().map(|&v| self.color(v)).collect();
                    let missing = Color::ALL
                        .into_iter()
                        .find(|c| !present.contains(c))
                        .expect("triangle has three colors");
                    edges.push(Edge {
                        support: [s[0], s[1]],
                        color: missing,
                    });
                }
                n => {
                    return Err(Error::Construction(format!(
                        "triangle {tri:?} lies in {n} tetrahedra"
                    )))
                }
            }
        }
        edges.sort_by_key(|a| a.support);

        let boundaries = self
            .outer
            .iter()
            .enumerate()
            .map(|(i, (facet, color))| Boundary {
                facet: facet.clone(),
                label: BoundaryLabel::Color(*color),
                support: vertex_support
                    .get(&DualVertex::Outer(i))
                    .cloned()
                    .unwrap_or_default(),
            })
            .collect();

        Ok(ColoredComplex {
            qubits,
            edges,
            faces,
            cells,
            boundaries,
            truncation_region: Vec::new(),
        })
    }
}

// ---------------------------------------------------------------------------
// Cube construction.

type Point = [i64; 3];

fn dimension_color(p: Point) -> Color {
    match p.iter().filter(|c| c.rem_euclid(2) == 1).count() {
        0 => Color::R,
        1 => Color::Y,
        2 => Color::G,
        _ => Color::B,
    }
}

fn check_extent(extent: [usize; 3]) -> Result<()> {
    if extent.contains(&0) {
        return Err(Error::InvalidExtent(extent));
    }
    Ok(())
}

/// Flags (vertex, edge centre, face centre, cell centre) of the solid, in
/// doubled coordinates.
fn solid_tetrahedra(extent: [usize; 3]) -> Vec<[Point; 4]> {
    let [nx, ny, nz] = extent.map(|e| e as i64);
    let (y_lo, y_hi) = (1, 2 * ny + 1);
    let mut out = Vec::new();
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for cx in 0..nx {
        for cy in 0..=ny {
            for cz in 0..=nz {
                let c = [2 * cx + 1, 2 * cy + 1, 2 * cz + 1];
                for perm in PERMS {
                    for signs in 0..8u8 {
                        let s = |i: usize| if signs >> i & 1 == 1 { 1 } else { -1 };
                        let mut f = c;
                        f[perm[0]] += s(0);
                        let mut e = f;
                        e[perm[1]] += s(1);
                        let mut v = e;
                        v[perm[2]] += s(2);
                        let t = [v, e, f, c];
                        if t.iter().any(|p| p[1] < y_lo || p[1] > y_hi) {
                            continue;
                        }
                        // bottom: drop the pyramid under each base face
                        if cz == 0 && f[2] == 2 * cz {
                            continue;
                        }
                        // top: keep only what lies under the crown
                        if cz == nz && e[2] != 2 * cz {
                            continue;
                        }
                        out.push(t);
                    }
                }
            }
        }
    }
    out
}

fn missing_color(colors: impl IntoIterator<Item = Color>) -> Option<Color> {
    let present: BTreeSet<Color> = colors.into_iter().collect();
    if present.len() != 3 {
        return None;
    }
    Color::ALL.into_iter().find(|c| !present.contains(c))
}

/// Builds the color code complex on a rectangular solid with blue left/right,
/// red front/back, yellow top and green bottom boundaries.
pub fn build_cube(extent: [usize; 3]) -> Result<ColoredComplex> {
    check_extent(extent)?;
    let dual = cube_dual(extent)?;
    let complex = dual.into_primal()?;
    let report = validate(&complex);
    if let Some(c) = report.checks.iter().find(|c| !c.passed) {
        return Err(Error::Construction(format!(
            "validator `{}` failed: {:?}",
            c.name, c.witness
        )));
    }
    Ok(complex)
}

fn cube_dual(extent: [usize; 3]) -> Result<DualComplex> {
    let [nx, ny, _] = extent.map(|e| e as i64);
    let solid = solid_tetrahedra(extent);

    let mut index: BTreeMap<Point, usize> = BTreeMap::new();
    for t in &solid {
        for p in t {
            let next = index.len();
            index.entry(*p).or_insert(next);
        }
    }
    // Renumber core vertices in sorted point order.
    let points: Vec<Point> = index.keys().copied().collect();
    for (i, p) in points.iter().enumerate() {
        index.insert(*p, i);
    }
    let half = |x: i64| Coord::new(x, 2);
    let core: Vec<(Position, Color)> = points
        .iter()
        .map(|p| ([half(p[0]), half(p[1]), half(p[2])], dimension_color(*p)))
        .collect();

    let facets: [(&str, Color); 6] = [
        (LEFT, Color::B),
        (RIGHT, Color::B),
        (FRONT, Color::R),
        (BACK, Color::R),
        (TOP, Color::Y),
        (BOTTOM, Color::G),
    ];
    let outer: Vec<(String, Color)> = facets.iter().map(|(f, c)| (f.to_string(), *c)).collect();

    let mut tets: Vec<[DualVertex; 4]> = solid
        .iter()
        .map(|t| t.map(|p| DualVertex::Core(index[&p])))
        .collect();

    // Exterior triangles of the solid, each coned to its facet's outer vertex.
    let mut tri_count: BTreeMap<[usize; 3], usize> = BTreeMap::new();
    for t in &solid {
        let mut ids = t.map(|p| index[&p]);
        ids.sort();
        for skip in 0..4 {
            let tri: Vec<usize> = (0..4).filter(|&i| i != skip).map(|i| ids[i]).collect();
            *tri_count.entry([tri[0], tri[1], tri[2]]).or_default() += 1;
        }
    }
    let mut segment_outer: BTreeMap<[usize; 2], BTreeSet<usize>> = BTreeMap::new();
    for (tri, _) in tri_count.iter().filter(|(_, &n)| n == 1) {
        let pts = tri.map(|i| points[i]);
        let facet = if pts.iter().all(|p| p[0] == 0) {
            0
        } else if pts.iter().all(|p| p[0] == 2 * nx) {
            1
        } else if pts.iter().all(|p| p[1] == 1) {
            2
        } else if pts.iter().all(|p| p[1] == 2 * ny + 1) {
            3
        } else {
            match missing_color(pts.map(dimension_color)) {
                Some(Color::Y) => 4,
                Some(Color::G) => 5,
                other => {
                    return Err(Error::Construction(format!(
                        "exterior triangle {pts:?} missing {other:?} belongs to no facet"
                    )))
                }
            }
        };
        if missing_color(pts.map(dimension_color)) != Some(facets[facet].1) {
            return Err(Error::Construction(format!(
                "exterior triangle {pts:?} carries the color of facet `{}`",
                facets[facet].0
            )));
        }
        tets.push([
            DualVertex::Core(tri[0]),
            DualVertex::Core(tri[1]),
            DualVertex::Core(tri[2]),
            DualVertex::Outer(facet),
        ]);
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            segment_outer.entry([tri[a], tri[b]]).or_default().insert(facet);
        }
    }

    // Box edges: segments shared by two facets.
    let mut corner_outer: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (seg, fs) in &segment_outer {
        match fs.len() {
            1 => {}
            2 => {
                let f: Vec<usize> = fs.iter().copied().collect();
                tets.push([
                    DualVertex::Core(seg[0]),
                    DualVertex::Core(seg[1]),
                    DualVertex::Outer(f[0]),
                    DualVertex::Outer(f[1]),
                ]);
                for &p in seg {
                    corner_outer.entry(p).or_default().extend(fs.iter().copied());
                }
            }
            n => {
                return Err(Error::Construction(format!(
                    "segment {seg:?} lies on {n} facets"
                )))
            }
        }
    }
    for (p, fs) in &corner_outer {
        match fs.len() {
            2 => {}
            3 => {
                let f: Vec<usize> = fs.iter().copied().collect();
                tets.push([
                    DualVertex::Core(*p),
                    DualVertex::Outer(f[0]),
                    DualVertex::Outer(f[1]),
                    DualVertex::Outer(f[2]),
                ]);
            }
            n => {
                return Err(Error::Construction(format!(
                    "point {:?} lies on {n} facets",
                    points[*p]
                )))
            }
        }
    }

    Ok(DualComplex { core, outer, tets })
}

/// The cube with its rear vertical edge (where the right/blue and back/red
/// facets meet) marked for projection onto |0>. The marked strip is the set
/// of qubits within L1 distance 1 of that edge in the horizontal plane.
pub fn build_truncated_cube(extent: [usize; 3]) -> Result<ColoredComplex> {
    check_extent(extent)?;
    let mut complex = build_cube(extent)?;
    let region: Vec<usize> = complex
        .qubits
        .iter()
        .filter(|q| in_truncated_strip(extent, &q.pos))
        .map(|q| q.id)
        .collect();

    let touches = |facet: &str| {
        complex
            .boundary(facet)
            .map(|b| b.support.iter().any(|q| region.binary_search(q).is_ok()))
            .unwrap_or(false)
    };
    for facet in [LEFT, FRONT] {
        if touches(facet) {
            return Err(Error::ExtentTooSmall {
                extent,
                reason: format!("truncated strip reaches the {facet} facet"),
            });
        }
    }
    complex.boundaries.push(Boundary {
        facet: TRUNCATED.to_string(),
        label: BoundaryLabel::PauliZ,
        support: region.clone(),
    });
    complex.truncation_region = region;
    Ok(complex)
}

/// Whether a position lies in the strip removed by [`build_truncated_cube`].
pub fn in_truncated_strip(extent: [usize; 3], pos: &Position) -> bool {
    let x_max = Coord::from_integer(extent[0] as i64);
    let y_max = Coord::new(2 * extent[1] as i64 + 1, 2);
    (x_max - pos[0]) + (y_max - pos[1]) <= Coord::from_integer(1)
}

// ---------------------------------------------------------------------------
// Validation.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "id")]
pub enum Witness {
    Qubit(usize),
    Edge(usize),
    Face(usize),
    Cell(usize),
    CellFace([usize; 2]),
    Boundary(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const CHECK_WELL_FORMED: &str = "well-formed";
pub const CHECK_QUBIT_INCIDENCE: &str = "qubit incidence";
pub const CHECK_EDGE_CELL_COLOR: &str = "edge-cell color consistency";
pub const CHECK_FACE_CELL: &str = "face-cell incidence";
pub const CHECK_FACE_EDGES: &str = "face edge decomposition";
pub const CHECK_BOUNDARY_COLOR: &str = "boundary color exclusion";
pub const CHECK_EVEN_OVERLAP: &str = "(cell,face) even-overlap";
pub const CHECK_TRUNCATION: &str = "truncation region";

struct Incidence {
    cells: Vec<Vec<usize>>,
    faces: Vec<Vec<usize>>,
    edges: Vec<Vec<usize>>,
    colored_boundaries: Vec<Vec<usize>>,
}

impl Incidence {
    fn new(c: &ColoredComplex) -> Self {
        let n = c.qubits.len();
        let mut inc = Incidence {
            cells: vec![Vec::new(); n],
            faces: vec![Vec::new(); n],
            edges: vec![Vec::new(); n],
            colored_boundaries: vec![Vec::new(); n],
        };
        for (i, cell) in c.cells.iter().enumerate() {
            for &q in &cell.support {
                inc.cells[q].push(i);
            }
        }
        for (i, f) in c.faces.iter().enumerate() {
            for &q in &f.support {
                inc.faces[q].push(i);
            }
        }
        for (i, e) in c.edges.iter().enumerate() {
            for &q in &e.support {
                inc.edges[q].push(i);
            }
        }
        for (i, b) in c.boundaries.iter().enumerate() {
            if b.label.color().is_some() {
                for &q in &b.support {
                    inc.colored_boundaries[q].push(i);
                }
            }
        }
        inc
    }

    fn on_boundary_of_color(&self, c: &ColoredComplex, q: usize, color: Color) -> bool {
        self.colored_boundaries[q]
            .iter()
            .any(|&b| c.boundaries[b].label == BoundaryLabel::Color(color))
    }
}

fn well_formed(c: &ColoredComplex) -> Option<Witness> {
    let n = c.qubits.len();
    if let Some(q) = c.qubits.iter().enumerate().find(|(i, q)| q.id != *i) {
        return Some(Witness::Qubit(q.0));
    }
    let sorted_in_range = |s: &[usize]| !s.is_empty() && s.windows(2).all(|w| w[0] < w[1]) && s.iter().all(|&q| q < n);
    if let Some(i) = c.edges.iter().position(|e| !sorted_in_range(&e.support)) {
        return Some(Witness::Edge(i));
    }
    if let Some(i) = c.faces.iter().position(|f| !sorted_in_range(&f.support)) {
        return Some(Witness::Face(i));
    }
    if let Some(i) = c.cells.iter().position(|f| !sorted_in_range(&f.support)) {
        return Some(Witness::Cell(i));
    }
    if let Some(i) = c.boundaries.iter().position(|b| !b.support.is_empty() && !sorted_in_range(&b.support)) {
        return Some(Witness::Boundary(i));
    }
    None
}

/// Checks every structural rule of a color-code complex and reports a witness
/// for the first violation of each rule.
pub fn validate(c: &ColoredComplex) -> ValidationReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, witness: Option<Witness>| {
        checks.push(Check {
            name: name.to_string(),
            passed: witness.is_none(),
            witness,
        })
    };

    let wf = well_formed(c);
    let malformed = wf.is_some();
    push(CHECK_WELL_FORMED, wf);
    if malformed {
        for name in [
            CHECK_QUBIT_INCIDENCE,
            CHECK_EDGE_CELL_COLOR,
            CHECK_FACE_CELL,
            CHECK_FACE_EDGES,
            CHECK_BOUNDARY_COLOR,
            CHECK_EVEN_OVERLAP,
            CHECK_TRUNCATION,
        ] {
            push(name, wf);
        }
        return ValidationReport { checks };
    }

    let inc = Incidence::new(c);
    push(CHECK_QUBIT_INCIDENCE, check_qubit_incidence(c, &inc));
    push(CHECK_EDGE_CELL_COLOR, check_edge_colors(c, &inc));
    push(CHECK_FACE_CELL, check_face_cells(c, &inc));
    push(CHECK_FACE_EDGES, check_face_edges(c, &inc));
    push(CHECK_BOUNDARY_COLOR, check_boundary_exclusion(c));
    push(CHECK_EVEN_OVERLAP, check_even_overlap(c, &inc));
    push(CHECK_TRUNCATION, check_truncation(c));
    ValidationReport { checks }
}

fn check_qubit_incidence(c: &ColoredComplex, inc: &Incidence) -> Option<Witness> {
    for q in 0..c.qubits.len() {
        let cell_colors: Vec<Color> = inc.cells[q].iter().map(|&i| c.cells[i].color).collect();
        let edge_colors: Vec<Color> = inc.edges[q].iter().map(|&i| c.edges[i].color).collect();
        let face_colors: Vec<ColorPair> = inc.faces[q].iter().map(|&i| c.faces[i].color).collect();
        let distinct = |n: usize, set: usize| n == set;
        let cs: BTreeSet<_> = cell_colors.iter().collect();
        let es: BTreeSet<_> = edge_colors.iter().collect();
        let fs: BTreeSet<_> = face_colors.iter().collect();
        if !distinct(cell_colors.len(), cs.len())
            || !distinct(edge_colors.len(), es.len())
            || !distinct(face_colors.len(), fs.len())
        {
            return Some(Witness::Qubit(q));
        }
        let interior = inc.colored_boundaries[q].is_empty();
        if interior && (cs.len() != 4 || es.len() != 4 || fs.len() != 6) {
            return Some(Witness::Qubit(q));
        }
    }
    None
}

fn check_edge_colors(c: &ColoredComplex, inc: &Incidence) -> Option<Witness> {
    for (i, e) in c.edges.iter().enumerate() {
        let [a, b] = e.support;
        for (p, other) in [(a, b), (b, a)] {
            let own: Vec<usize> = inc.cells[p]
                .iter()
                .copied()
                .filter(|cell| !inc.cells[other].contains(cell))
                .collect();
            let ok = match own.as_slice() {
                [] => inc.on_boundary_of_color(c, p, e.color),
                [cell] => c.cells[*cell].color == e.color,
                _ => false,
            };
            if !ok {
                return Some(Witness::Edge(i));
            }
        }
        let shared_wrong = inc.cells[a]
            .iter()
            .any(|cell| inc.cells[b].contains(cell) && c.cells[*cell].color == e.color);
        if shared_wrong {
            return Some(Witness::Edge(i));
        }
    }
    None
}

fn contains_all(superset: &[usize], subset: &[usize]) -> bool {
    subset.iter().all(|q| superset.binary_search(q).is_ok())
}

fn check_face_cells(c: &ColoredComplex, inc: &Incidence) -> Option<Witness> {
    for (i, f) in c.faces.iter().enumerate() {
        let first = f.support[0];
        let containing: Vec<Color> = inc.cells[first]
            .iter()
            .filter(|&&cell| contains_all(&c.cells[cell].support, &f.support))
            .map(|&cell| c.cells[cell].color)
            .collect();
        if containing.is_empty() {
            return Some(Witness::Face(i));
        }
        for color in [f.color.first(), f.color.second()] {
            let n = containing.iter().filter(|&&x| x == color).count();
            let ok = match n {
                1 => true,
                0 => c.boundaries.iter().any(|b| {
                    b.label == BoundaryLabel::Color(color) && contains_all(&b.support, &f.support)
                }),
                _ => false,
            };
            if !ok {
                return Some(Witness::Face(i));
            }
        }
        if containing.iter().any(|&x| !f.color.contains(x)) {
            return Some(Witness::Face(i));
        }
    }
    None
}

fn check_face_edges(c: &ColoredComplex, inc: &Incidence) -> Option<Witness> {
    for (i, f) in c.faces.iter().enumerate() {
        for w in f.color.complement() {
            let mut covered = BTreeMap::new();
            for &q in &f.support {
                for &e in &inc.edges[q] {
                    let edge = &c.edges[e];
                    if edge.color == w && edge.support.iter().all(|p| f.support.binary_search(p).is_ok()) {
                        *covered.entry(q).or_insert(0usize) += 1;
                    }
                }
            }
            if f.support.iter().any(|q| covered.get(q) != Some(&1)) {
                return Some(Witness::Face(i));
            }
        }
    }
    None
}

fn check_boundary_exclusion(c: &ColoredComplex) -> Option<Witness> {
    for (i, cell) in c.cells.iter().enumerate() {
        for b in &c.boundaries {
            if b.label == BoundaryLabel::Color(cell.color)
                && cell.support.iter().any(|q| b.support.binary_search(q).is_ok())
            {
                return Some(Witness::Cell(i));
            }
        }
    }
    None
}

fn check_even_overlap(c: &ColoredComplex, inc: &Incidence) -> Option<Witness> {
    let mut count = vec![0u32; c.cells.len()];
    for (i, f) in c.faces.iter().enumerate() {
        let mut touched = Vec::new();
        for &q in &f.support {
            for &cell in &inc.cells[q] {
                if count[cell] == 0 {
                    touched.push(cell);
                }
                count[cell] += 1;
            }
        }
        let odd = touched.iter().copied().find(|&cell| count[cell] % 2 == 1);
        for &cell in &touched {
            count[cell] = 0;
        }
        if let Some(cell) = odd {
            return Some(Witness::CellFace([cell, i]));
        }
    }
    None
}

fn check_truncation(c: &ColoredComplex) -> Option<Witness> {
    let region = &c.truncation_region;
    let n = c.qubits.len();
    if let Some(&q) = region.iter().find(|&&q| q >= n) {
        return Some(Witness::Qubit(q));
    }
    if region.windows(2).any(|w| w[0] >= w[1]) {
        return Some(Witness::Qubit(region[0]));
    }
    let pauli = c
        .boundaries
        .iter()
        .position(|b| b.label == BoundaryLabel::PauliZ);
    match (region.is_empty(), pauli) {
        (true, None) => None,
        (false, Some(b)) if c.boundaries[b].support == *region => None,
        (_, Some(b)) => Some(Witness::Boundary(b)),
        (false, None) => Some(Witness::Qubit(region[0])),
    }
}

// ---------------------------------------------------------------------------
// Even/odd bipartition.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flipped(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub parity: Vec<Parity>,
}

impl Bipartition {
    pub fn count(&self, p: Parity) -> usize {
        self.parity.iter().filter(|&&x| x == p).count()
    }

    pub fn flipped(&self) -> Bipartition {
        Bipartition {
            parity: self.parity.iter().map(|p| p.flipped()).collect(),
        }
    }

    pub fn separates(&self, edges: &[Edge]) -> bool {
        edges
            .iter()
            .all(|e| self.parity[e.support[0]] != self.parity[e.support[1]])
    }
}

/// Two-colors the qubit adjacency graph; the lowest id in every connected
/// component is even.
pub fn bipartition(c: &ColoredComplex) -> Result<Bipartition> {
    let n = c.qubits.len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, e) in c.edges.iter().enumerate() {
        let [a, b] = e.support;
        if a >= n || b >= n {
            return Err(Error::Malformed(format!("edge {i} references a missing qubit")));
        }
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    let mut parity: Vec<Option<Parity>> = vec![None; n];
    let mut stack = Vec::new();
    for start in 0..n {
        if parity[start].is_some() {
            continue;
        }
        parity[start] = Some(Parity::Even);
        stack.push(start);
        while let Some(a) = stack.pop() {
            let pa = parity[a].unwrap();
            for &(b, e) in &adj[a] {
                match parity[b] {
                    None => {
                        parity[b] = Some(pa.flipped());
                        stack.push(b);
                    }
                    Some(pb) if pb == pa => return Err(Error::NotBipartite { edge: e }),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(Bipartition {
        parity: parity.into_iter().map(Option::unwrap).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colors_by_dimension() {
        assert_eq!(dimension_color([0, 2, 4]), Color::R);
        assert_eq!(dimension_color([1, 2, 4]), Color::Y);
        assert_eq!(dimension_color([1, -1, 4]), Color::G);
        assert_eq!(dimension_color([1, 3, 5]), Color::B);
    }

    #[test]
    fn solid_flags_are_four_colored() {
        for t in solid_tetrahedra([1, 1, 1]) {
            let cs: BTreeSet<Color> = t.iter().map(|&p| dimension_color(p)).collect();
            assert_eq!(cs.len(), 4);
        }
    }

    #[test]
    fn zero_extent_is_rejected() {
        assert!(matches!(build_cube([0, 1, 1]), Err(Error::InvalidExtent(_))));
        assert!(matches!(build_truncated_cube([1, 0, 1]), Err(Error::InvalidExtent(_))));
    }

    #[test]
    fn smallest_cube_validates() {
        let c = build_cube([1, 1, 1]).unwrap();
        let report = validate(&c);
        assert!(report.all_passed(), "{report:?}");
        assert!(c.truncation_region.is_empty());
    }

    #[test]
    fn every_cube_qubit_on_four_distinct_cells_when_interior() {
        let c = build_cube([1, 1, 1]).unwrap();
        let inc = Incidence::new(&c);
        let interior: Vec<usize> = (0..c.num_qubits())
            .filter(|&q| inc.colored_boundaries[q].is_empty())
            .collect();
        assert!(!interior.is_empty());
        for q in interior {
            let colors: BTreeSet<Color> = inc.cells[q].iter().map(|&i| c.cells[i].color).collect();
            assert_eq!(colors.len(), 4);
            assert_eq!(inc.cells[q].len(), 4);
        }
    }

    #[test]
    fn boundaries_exclude_their_color() {
        let c = build_cube([2, 2, 1]).unwrap();
        for b in &c.boundaries {
            let color = b.label.color().unwrap();
            for cell in c.cells.iter().filter(|cell| cell.color == color) {
                assert!(cell.support.iter().all(|q| b.support.binary_search(q).is_err()));
            }
        }
    }

    #[test]
    fn recolored_edge_is_caught() {
        let mut c = build_cube([1, 1, 1]).unwrap();
        let old = c.edges[5].color;
        c.edges[5].color = Color::ALL.into_iter().find(|&x| x != old).unwrap();
        let report = validate(&c);
        let check = report.check(CHECK_EDGE_CELL_COLOR).unwrap();
        assert!(!check.passed);
        assert_eq!(check.witness, Some(Witness::Edge(5)));
    }

    #[test]
    fn deleted_cell_qubit_breaks_even_overlap() {
        let mut c = build_cube([1, 1, 1]).unwrap();
        // remove a qubit that also sits on a face contained in this cell
        let cell = 3;
        let q = c.cells[cell].support[0];
        let face = c
            .faces
            .iter()
            .position(|f| f.support.contains(&q) && contains_all(&c.cells[cell].support, &f.support))
            .unwrap();
        c.cells[cell].support.retain(|&x| x != q);
        let overlap = c.cells[cell]
            .support
            .iter()
            .filter(|x| c.faces[face].support.contains(x))
            .count();
        assert_eq!(overlap % 2, 1);
        let report = validate(&c);
        assert!(!report.check(CHECK_EVEN_OVERLAP).unwrap().passed);
    }

    #[test]
    fn two_qubit_toy_bipartition() {
        let zero = Coord::from_integer(0);
        let c = ColoredComplex {
            qubits: vec![
                Qubit { id: 0, pos: [zero; 3] },
                Qubit { id: 1, pos: [Coord::from_integer(1), zero, zero] },
            ],
            edges: vec![Edge { support: [0, 1], color: Color::R }],
            faces: vec![],
            cells: vec![],
            boundaries: vec![],
            truncation_region: vec![],
        };
        let b = bipartition(&c).unwrap();
        assert_eq!(b.parity, vec![Parity::Even, Parity::Odd]);
    }

    #[test]
    fn odd_cycle_is_not_bipartite() {
        let zero = Coord::from_integer(0);
        let c = ColoredComplex {
            qubits: (0..3).map(|id| Qubit { id, pos: [zero; 3] }).collect(),
            edges: vec![
                Edge { support: [0, 1], color: Color::R },
                Edge { support: [1, 2], color: Color::G },
                Edge { support: [0, 2], color: Color::Y },
            ],
            faces: vec![],
            cells: vec![],
            boundaries: vec![],
            truncation_region: vec![],
        };
        assert!(matches!(bipartition(&c), Err(Error::NotBipartite { .. })));
    }

    #[test]
    fn cube_bipartition_and_its_flip() {
        let c = build_cube([1, 1, 1]).unwrap();
        let b = bipartition(&c).unwrap();
        assert!(b.separates(&c.edges));
        assert!(b.flipped().separates(&c.edges));
        assert_eq!(b.parity[0], Parity::Even);
    }

    #[test]
    fn truncation_rejects_small_extents() {
        assert!(matches!(
            build_truncated_cube([1, 1, 1]),
            Err(Error::ExtentTooSmall { .. })
        ));
        assert!(matches!(
            build_truncated_cube([2, 1, 1]),
            Err(Error::ExtentTooSmall { .. })
        ));
        assert!(build_truncated_cube(MIN_TRUNCATED_EXTENT).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let c = build_truncated_cube(MIN_TRUNCATED_EXTENT).unwrap();
        let s = c.to_json();
        let back = ColoredComplex::from_json(&s).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_json(), s);
    }
}
