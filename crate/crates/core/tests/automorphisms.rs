use autgates::autengine::is_matrix_automorphism;
use autgates::binrep::DEFAULT_CODEWORD_CAP;
use autgates::{matrix_automorphisms, BlockRep, PermGroup, Permutation, RepKind, RowSource, SearchBudget, StabilizerCode};
use num_bigint::BigUint;

fn five() -> StabilizerCode {
    StabilizerCode::from_strings(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]).unwrap()
}

fn five_cyclic() -> StabilizerCode {
    StabilizerCode::from_strings(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ", "ZZXIX"]).unwrap()
}

fn order(code: &StabilizerCode, kind: RepKind, source: RowSource) -> BigUint {
    let rep = BlockRep::build(code, kind);
    let (m, colors) = rep.row_augmented_matrix(code, source, DEFAULT_CODEWORD_CAP).unwrap();
    let r = matrix_automorphisms(&m, &colors, SearchBudget::default());
    assert!(r.complete);
    for g in &r.generators {
        assert!(is_matrix_automorphism(&m, &colors, g));
    }
    r.group.order()
}

#[test]
fn five_qubit_hswap_codewords() {
    assert_eq!(order(&five(), RepKind::HSwap, RowSource::AllCodewords), BigUint::from(20u32));
}

#[test]
fn five_qubit_three_block_orders() {
    assert_eq!(order(&five(), RepKind::ThreeBlock, RowSource::StandardFormRows), BigUint::from(4u32));
    assert_eq!(order(&five(), RepKind::ThreeBlock, RowSource::AsGiven), BigUint::from(4u32));
    assert_eq!(order(&five_cyclic(), RepKind::ThreeBlock, RowSource::AsGiven), BigUint::from(20u32));
    assert_eq!(order(&five(), RepKind::ThreeBlock, RowSource::AllCodewords), BigUint::from(360u32));
}

#[test]
fn constraint_group_orders() {
    for (n, want) in [(1usize, 6u32), (2, 72), (3, 1296)] {
        let b = RepKind::ThreeBlock.constraint(n);
        let colors = vec![1; n];
        let r = matrix_automorphisms(&b, &colors, SearchBudget::default());
        assert_eq!(r.group.order(), BigUint::from(want), "n={n}");
        let b2 = RepKind::HSwap.constraint(n);
        let r2 = matrix_automorphisms(&b2, &colors, SearchBudget::default());
        let fact: u32 = (1..=n as u32).product();
        assert_eq!(r2.group.order(), BigUint::from(2u32.pow(n as u32) * fact));
    }
}

#[test]
fn constraint_group_matches_enumeration() {
    // All permutations of 6 columns preserving the row space of [I I I] for n = 2.
    let n = 2;
    let b = RepKind::ThreeBlock.constraint(n);
    let colors = vec![1; n];
    let r = matrix_automorphisms(&b, &colors, SearchBudget::default());
    let s6 = PermGroup::new(
        6,
        vec![Permutation::from_cycles(6, &[&[0, 1]]).unwrap(), Permutation::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]).unwrap()],
    )
    .unwrap();
    let brute: Vec<Permutation> = s6.elements().into_iter().filter(|p| is_matrix_automorphism(&b, &colors, p)).collect();
    assert_eq!(brute.len(), 72);
    for p in &brute {
        assert!(r.group.contains(p));
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Counts block-structured column permutations (a qubit permutation plus one
/// permutation of the three blocks per qubit) preserving the set of rows.
fn brute_force_structured(code: &StabilizerCode, source: RowSource) -> usize {
    let n = code.n();
    let rep = BlockRep::build(code, RepKind::ThreeBlock);
    let (m, _) = rep.row_augmented_matrix(code, source, DEFAULT_CODEWORD_CAP).unwrap();
    let rows: std::collections::HashSet<_> = m.rows()[..m.num_rows() - n].iter().cloned().collect();
    let s3 = permutations(3);
    let mut count = 0;
    for q in permutations(n) {
        for choice in 0..6usize.pow(n as u32) {
            let mut images = vec![0; 3 * n];
            let mut c = choice;
            for i in 0..n {
                let sigma = &s3[c % 6];
                c /= 6;
                for b in 0..3 {
                    images[b * n + i] = sigma[b] * n + q[i];
                }
            }
            if rows.iter().all(|r| rows.contains(&r.permuted(&images))) {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn five_qubit_three_block_orders_match_enumeration() {
    assert_eq!(brute_force_structured(&five(), RowSource::StandardFormRows), 4);
    assert_eq!(brute_force_structured(&five(), RowSource::AsGiven), 4);
    assert_eq!(brute_force_structured(&five_cyclic(), RowSource::AsGiven), 20);
}
