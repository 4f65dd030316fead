use photoncount::ldpc::{construct_code, decode, from_alist, to_alist, CodeSpec, LdpcCode, COLUMN_WEIGHT, DEFAULT_MAX_ITERS};
use photoncount::rng::stream_from_seed;
use photoncount::Llr;
use rand::Rng;

/// Exhaustive scan: any two distinct rows sharing two or more columns.
fn four_cycle_by_scan(code: &LdpcCode) -> bool {
    let rows = code.parity_check().rows();
    for a in 0..rows.len() {
        for b in (a + 1)..rows.len() {
            let shared = rows[a].iter().filter(|j| rows[b].contains(j)).count();
            if shared >= 2 {
                return true;
            }
        }
    }
    false
}

/// Dense GF(2) multiply of `H` (rebuilt from the column lists) with `bits`.
fn dense_syndrome(code: &LdpcCode, bits: &[u8]) -> Vec<u8> {
    let h = code.parity_check();
    let mut dense = vec![vec![0u8; h.n_cols()]; h.n_rows()];
    for (j, col) in h.cols().iter().enumerate() {
        for &i in col {
            dense[i][j] = 1;
        }
    }
    dense
        .iter()
        .map(|row| row.iter().zip(bits).map(|(a, b)| a & b).fold(0, |x, y| x ^ y))
        .collect()
}

fn random_bits<R: Rng>(rng: &mut R, n: usize) -> Vec<u8> {
    (0..n).map(|_| rng.random::<bool>() as u8).collect()
}

#[test]
fn standard_codes_are_well_formed() {
    for (label, spec) in CodeSpec::STANDARD {
        let code = construct_code(spec, 1).unwrap();
        let h = code.parity_check();
        assert_eq!(h.n_cols(), spec.block_len(), "{label}");
        assert_eq!(h.n_rows(), spec.parity_len);
        assert!(h.cols().iter().all(|c| c.len() == COLUMN_WEIGHT), "{label}");
        assert!(!four_cycle_by_scan(&code), "{label}");
        assert_eq!(h.gf2_rank(), spec.parity_len);
        assert_eq!(code.spec().rate(), spec.rate());
    }
}

#[test]
fn construction_is_deterministic() {
    let a = construct_code(CodeSpec::RATE_HALF, 77).unwrap();
    let b = construct_code(CodeSpec::RATE_HALF, 77).unwrap();
    let c = construct_code(CodeSpec::RATE_HALF, 78).unwrap();
    assert_eq!(a.parity_check(), b.parity_check());
    assert_ne!(a.parity_check(), c.parity_check());
}

#[test]
fn encoding_properties() {
    let code = construct_code(CodeSpec::RATE_061, 2).unwrap();
    let zero = code.encode(&[0; 252]).unwrap();
    assert!(zero.bits().iter().all(|&b| b == 0));

    let mut rng = stream_from_seed(10);
    for _ in 0..50 {
        let u = random_bits(&mut rng, 252);
        let v = random_bits(&mut rng, 252);
        let cu = code.encode(&u).unwrap();
        let cv = code.encode(&v).unwrap();
        assert_eq!(cu.info_bits(252), &u[..]);
        let sum: Vec<u8> = cu.bits().iter().zip(cv.bits()).map(|(a, b)| a ^ b).collect();
        assert!(dense_syndrome(&code, &sum).iter().all(|&s| s == 0));
        assert!(dense_syndrome(&code, cu.bits()).iter().all(|&s| s == 0));
    }
}

#[test]
fn syndrome_matches_dense_multiply() {
    let code = construct_code(CodeSpec::RATE_THREE_QUARTERS, 3).unwrap();
    let mut rng = stream_from_seed(4);
    for _ in 0..20 {
        let bits = random_bits(&mut rng, 1000);
        assert_eq!(code.syndrome(&bits).unwrap(), dense_syndrome(&code, &bits));
    }
    // single flip of a codeword gives the flipped column
    let mut cw = code.encode(&random_bits(&mut rng, 750)).unwrap().0;
    cw[17] ^= 1;
    let s = code.syndrome(&cw).unwrap();
    let expected: Vec<u8> = (0..250).map(|i| code.parity_check().col(17).contains(&i) as u8).collect();
    assert_eq!(s, expected);
}

#[test]
fn high_confidence_round_trip_never_fails() {
    for (label, spec) in CodeSpec::STANDARD {
        let code = construct_code(spec, 5).unwrap();
        let mut rng = stream_from_seed(6);
        for _ in 0..1000 {
            let info = random_bits(&mut rng, spec.info_len);
            let cw = code.encode(&info).unwrap();
            let llrs: Vec<Llr> = cw.bits().iter().map(|&b| Llr(if b == 1 { 12.0 } else { -12.0 })).collect();
            let out = decode(&code, &llrs, DEFAULT_MAX_ITERS).unwrap();
            assert!(out.converged, "{label}");
            assert_eq!(out.decided_bits, cw.0, "{label}");
        }
    }
}

#[test]
fn alist_export_import() {
    let code = construct_code(CodeSpec::RATE_061, 9).unwrap();
    let text = to_alist(code.parity_check());
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("408 156"));
    let h = from_alist(&text).unwrap();
    assert_eq!(&h, code.parity_check());
    // the imported matrix is already systematic: no reordering needed
    let again = LdpcCode::from_parity_check(h).unwrap();
    assert!(again.column_order().iter().enumerate().all(|(k, &c)| k == c));
    let mut rng = stream_from_seed(1);
    let info = random_bits(&mut rng, 252);
    assert_eq!(again.encode(&info).unwrap(), code.encode(&info).unwrap());
}
