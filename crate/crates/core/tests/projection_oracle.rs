//! Checks project_z against the codewords themselves: project every basis
//! codeword onto |0> on the region and compare the resulting space with the
//! code emitted by project_z.

use std::collections::BTreeMap;

use cscc::css::CssCode;
use cscc::fixtures::random_case;
use cscc::gf2::{BitVec, Echelon};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MAX_N: usize = 12;

fn bits(v: &BitVec) -> u32 {
    v.iter_ones().map(|i| 1u32 << i).sum()
}

/// Supports of the projected codewords, one set of surviving basis states
/// (restricted to the kept qubits) per coset of rowspace(Hx) in ker(Hz).
fn projected_codewords(code: &CssCode, region: &[usize], keep: &[usize]) -> Vec<Vec<u32>> {
    let n = code.n;
    let hz: Vec<u32> = code.hz.rows().iter().map(bits).collect();
    let hx = Echelon::from_rows(n, code.hx.rows());
    let region_mask: u32 = region.iter().map(|&q| 1u32 << q).sum();
    let mut cosets: BTreeMap<Vec<usize>, Vec<u32>> = BTreeMap::new();
    for x in 0u32..(1 << n) {
        if hz.iter().any(|r| (r & x).count_ones() % 2 == 1) {
            continue;
        }
        let v = BitVec::from_support(n, &(0..n).filter(|i| x >> i & 1 == 1).collect::<Vec<_>>());
        let key = hx.reduce(&v).residual.support();
        let entry = cosets.entry(key).or_default();
        if x & region_mask == 0 {
            let restricted: u32 = keep
                .iter()
                .enumerate()
                .filter(|(_, &q)| x >> q & 1 == 1)
                .map(|(j, _)| 1u32 << j)
                .sum();
            entry.push(restricted);
        }
    }
    cosets
        .into_values()
        .filter(|s| !s.is_empty())
        .map(|mut s| {
            s.sort_unstable();
            s
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn projected_codespace_matches_emitted_code(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let case = random_case(&mut rng);
        let code = case.code;
        prop_assume!(code.n <= MAX_N && code.n >= 2);
        let mut cols: Vec<usize> = (0..code.n).collect();
        cols.shuffle(&mut rng);
        let size = 1 + (seed as usize % (code.n - 1));
        let mut region = cols[..size].to_vec();
        region.sort_unstable();
        let keep: Vec<usize> = (0..code.n).filter(|q| !region.contains(q)).collect();

        let projected = code.project_z(&region).unwrap();
        prop_assert_eq!(projected.n, keep.len());
        prop_assert!(projected.rank_z() <= code.rank_z());
        prop_assert_eq!(projected.hx.orthogonal_to(&projected.hz), None);

        let words = projected_codewords(&code, &region, &keep);
        // distinct cosets have disjoint supports, so they are independent
        prop_assert_eq!(words.len(), 1usize << projected.k());
        let hx: Vec<u32> = projected.hx.rows().iter().map(bits).collect();
        let hz: Vec<u32> = projected.hz.rows().iter().map(bits).collect();
        for w in &words {
            for r in &hz {
                prop_assert!(w.iter().all(|x| (r & x).count_ones() % 2 == 0));
            }
            for r in &hx {
                let mut shifted: Vec<u32> = w.iter().map(|x| x ^ r).collect();
                shifted.sort_unstable();
                prop_assert_eq!(&shifted, w);
            }
        }
    }
}
