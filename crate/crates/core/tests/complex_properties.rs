use cscc::complex::{bipartition, in_truncated_strip, MIN_TRUNCATED_EXTENT};
use cscc::css::assemble;
use cscc::gf2::{BitMatrix, Echelon};
use cscc::{build_cube, build_truncated_cube, validate, ColoredComplex, Error};
use proptest::prelude::*;

fn extent() -> impl Strategy<Value = [usize; 3]> {
    [1usize..=3, 1usize..=3, 1usize..=3]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cubes_validate_commute_and_split(e in extent()) {
        let c = build_cube(e).unwrap();
        prop_assert!(validate(&c).all_passed());
        let code = assemble(&c).unwrap();
        prop_assert_eq!(code.hx.orthogonal_to(&code.hz), None);
        let b = bipartition(&c).unwrap();
        prop_assert!(b.separates(&c.edges));
        prop_assert!(b.flipped().separates(&c.edges));
    }

    #[test]
    fn truncated_cubes_validate_or_are_rejected(e in extent()) {
        match build_truncated_cube(e) {
            Ok(c) => {
                prop_assert!(validate(&c).all_passed());
                prop_assert!(!c.truncation_region.is_empty());
                prop_assert!(bipartition(&c).unwrap().separates(&c.edges));
                let code = assemble(&c).unwrap();
                let p = code.project_z(&c.truncation_region).unwrap();
                prop_assert_eq!(p.n, code.n - c.truncation_region.len());
                prop_assert!(p.rank_z() <= code.rank_z());
            }
            Err(Error::ExtentTooSmall { .. }) => {}
            Err(other) => prop_assert!(false, "{}", other),
        }
    }

    #[test]
    fn construction_is_deterministic(e in extent()) {
        prop_assert_eq!(build_cube(e).unwrap().to_json(), build_cube(e).unwrap().to_json());
    }
}

#[test]
fn complex_json_round_trip() {
    let c = build_truncated_cube(MIN_TRUNCATED_EXTENT).unwrap();
    let back = ColoredComplex::from_json(&c.to_json()).unwrap();
    assert_eq!(back.to_json(), c.to_json());
}

#[test]
fn truncation_region_is_the_strip() {
    let e = MIN_TRUNCATED_EXTENT;
    let c = build_truncated_cube(e).unwrap();
    let region: Vec<usize> = c
        .qubits
        .iter()
        .filter(|q| in_truncated_strip(e, &q.pos))
        .map(|q| q.id)
        .collect();
    assert_eq!(region, c.truncation_region);
}

#[test]
fn region_carries_a_z_logical() {
    // some Z operator inside the region commutes with every X check and is
    // not a product of Z checks
    let c = build_truncated_cube(MIN_TRUNCATED_EXTENT).unwrap();
    let code = assemble(&c).unwrap();
    let region = &c.truncation_region;
    let local = code.hx.select_columns(region);
    let candidates: Vec<_> = local
        .nullspace()
        .into_iter()
        .map(|v| v.scatter(region, code.n))
        .collect();
    let stabilizers = Echelon::from_rows(code.n, code.hz.rows());
    let logical = candidates
        .iter()
        .find(|v| !stabilizers.contains(v))
        .expect("a Z logical lives on the truncation region");
    let commuting = BitMatrix::from_rows(code.n, vec![logical.clone()]);
    assert_eq!(code.hx.orthogonal_to(&commuting), None);
}
