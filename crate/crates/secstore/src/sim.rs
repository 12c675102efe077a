//! Operational simulator: encodes files onto nodes with fresh randomness,
//! retrieves them through the access structure, and decides the defining
//! properties (secrecy, recovery, erasure tolerance, load) by exact
//! enumeration at desk scale.

use crate::codes::combinations;
use crate::error::{Error, Result};
use crate::gf::FieldElement;
use crate::rng::SplitMix64;
use crate::secure::SecureStorageCode;

/// Enumeration budget for the exact secrecy oracle:
/// q^(k_d + k_s) * C(n, t) encodings.
pub const SECRECY_BUDGET: u128 = 100_000_000;
/// Enumeration budget for the erasure scan: C(n, n - d + 1) subsets.
pub const ERASURE_BUDGET: u128 = 10_000_000;
/// Full-space round-trip limit: q^(k_d) messages.
pub const ROUNDTRIP_FULL_LIMIT: u128 = 10_000;

/// One coded symbol per node, with per-node access accounting.
#[derive(Debug, Clone)]
pub struct NodeArray<'a> {
    code: &'a SecureStorageCode,
    symbols: Vec<u64>,
    access_counts: Vec<u64>,
}

impl<'a> NodeArray<'a> {
    pub fn code(&self) -> &'a SecureStorageCode {
        self.code
    }

    pub fn symbols(&self) -> &[u64] {
        &self.symbols
    }

    /// How many reads each node has served so far.
    pub fn access_counts(&self) -> &[u64] {
        &self.access_counts
    }

    /// Recovers one file by combining exactly the nodes in the support of
    /// its access row; only those nodes' counters are incremented.
    pub fn retrieve(&mut self, file_index: usize) -> Result<FieldElement> {
        let code = self.code;
        if file_index >= code.k_d() {
            return Err(Error::IndexOutOfRange {
                index: file_index,
                limit: code.k_d(),
            });
        }
        let field = code.field();
        let b = code.access_matrix();
        let mut acc = 0u64;
        for node in 0..code.n() {
            let coeff = b.get(file_index, node);
            if coeff == 0 {
                continue;
            }
            self.access_counts[node] += 1;
            acc = field.add_raw(acc, field.mul_raw(coeff, self.symbols[node]));
        }
        Ok(field.element(acc))
    }
}

/// Encodes the files with fresh seeded randomness: Y = (X | Z) * G.
pub fn encode<'a>(code: &'a SecureStorageCode, x: &[u64], seed: u64) -> Result<NodeArray<'a>> {
    let q = code.field().modulus();
    let mut rng = SplitMix64::new(seed);
    let z: Vec<u64> = (0..code.k_s()).map(|_| rng.next_below(q)).collect();
    encode_with_randomness(code, x, &z)
}

/// Encoding with caller-chosen randomness. This bypasses the security of
/// the scheme and exists for tests and reproducibility experiments only.
pub fn encode_with_randomness<'a>(
    code: &'a SecureStorageCode,
    x: &[u64],
    z: &[u64],
) -> Result<NodeArray<'a>> {
    if x.len() != code.k_d() {
        return Err(Error::DimensionMismatch(format!(
            "expected {} file symbols, got {}",
            code.k_d(),
            x.len()
        )));
    }
    if z.len() != code.k_s() {
        return Err(Error::DimensionMismatch(format!(
            "expected {} randomness symbols, got {}",
            code.k_s(),
            z.len()
        )));
    }
    let field = code.field();
    let q = field.modulus();
    let message: Vec<u64> = x.iter().chain(z.iter()).map(|&v| v % q).collect();
    let g = code.stacked_generator();
    let symbols: Vec<u64> = (0..code.n())
        .map(|node| {
            let mut acc = 0;
            for (row, &m) in message.iter().enumerate() {
                acc = field.add_raw(acc, field.mul_raw(m, g.get(row, node)));
            }
            acc
        })
        .collect();
    Ok(NodeArray {
        code,
        symbols,
        access_counts: vec![0; code.n()],
    })
}

/// A coalition and message pair witnessing a secrecy violation.
#[derive(Debug, Clone)]
pub struct SecrecyWitness {
    pub coalition: Vec<usize>,
    pub x_a: Vec<u64>,
    /// A second message whose coalition view differs from `x_a`'s; absent
    /// when the view for `x_a` is simply not uniform.
    pub x_b: Option<Vec<u64>>,
}

#[derive(Debug, Clone)]
pub struct SecrecyOutcome {
    pub passed: bool,
    pub coalitions_tested: u64,
    pub encodings_per_coalition: u64,
    pub witness: Option<SecrecyWitness>,
}

/// Exact secrecy oracle: for every coalition of at most `t` nodes and every
/// message, the coalition's view over uniform randomness must be the
/// uniform distribution, identical across messages. No sampling; the full
/// conditional distribution is enumerated.
pub fn secrecy_exhaustive(code: &SecureStorageCode, t: usize) -> Result<SecrecyOutcome> {
    let q = code.field().modulus();
    let n = code.n();
    if t > n {
        return Err(Error::BadParameters(format!("t = {t} exceeds n = {n}")));
    }
    let k_d = code.k_d();
    let k_s = code.k_s();
    let states = (q as u128)
        .checked_pow((k_d + k_s) as u32)
        .unwrap_or(u128::MAX);
    let coalition_count: u128 = (0..=t).map(|s| binomial_u128(n, s)).sum();
    if states.saturating_mul(coalition_count) > SECRECY_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "q^(k_d+k_s) * coalitions = {} * {} exceeds {}",
            states, coalition_count, SECRECY_BUDGET
        )));
    }
    let field = code.field();
    let g_d = code.data_generator();
    let g_s = code.secrecy_generator();
    let x_count = q.pow(k_d as u32);
    let z_count = q.pow(k_s as u32);
    let mut coalitions_tested = 0u64;
    for size in 0..=t {
        for coalition in combinations(n, size) {
            coalitions_tested += 1;
            if size == 0 {
                continue; // the empty view is vacuously uniform
            }
            let tuple_count = q.pow(size as u32);
            let mut reference: Option<(Vec<u64>, Vec<u64>)> = None;
            for xi in 0..x_count {
                let x = digits(xi, q, k_d);
                let x_view: Vec<u64> = coalition
                    .iter()
                    .map(|&node| {
                        let mut acc = 0;
                        for (row, &m) in x.iter().enumerate() {
                            acc = field.add_raw(acc, field.mul_raw(m, g_d.get(row, node)));
                        }
                        acc
                    })
                    .collect();
                let mut hist = vec![0u64; tuple_count as usize];
                for zi in 0..z_count {
                    let z = digits(zi, q, k_s);
                    let mut index = 0u64;
                    for (j, &node) in coalition.iter().enumerate() {
                        let mut acc = x_view[j];
                        for (row, &m) in z.iter().enumerate() {
                            acc = field.add_raw(acc, field.mul_raw(m, g_s.get(row, node)));
                        }
                        index = index * q + acc;
                    }
                    hist[index as usize] += 1;
                }
                match &reference {
                    None => reference = Some((x, hist)),
                    Some((x_ref, ref_hist)) => {
                        // A view that depends on the message is direct
                        // leakage; report the distinguishing pair.
                        if &hist != ref_hist {
                            return Ok(SecrecyOutcome {
                                passed: false,
                                coalitions_tested,
                                encodings_per_coalition: (x_count * z_count),
                                witness: Some(SecrecyWitness {
                                    coalition,
                                    x_a: x_ref.clone(),
                                    x_b: Some(x),
                                }),
                            });
                        }
                    }
                }
            }
            // Identical across messages; the view must also be uniform
            // over all q^|T| tuples.
            let (x_ref, ref_hist) = reference.expect("at least one message was enumerated");
            let target = z_count / tuple_count;
            let uniform = z_count >= tuple_count
                && z_count.is_multiple_of(tuple_count)
                && ref_hist.iter().all(|&c| c == target);
            if !uniform {
                return Ok(SecrecyOutcome {
                    passed: false,
                    coalitions_tested,
                    encodings_per_coalition: (x_count * z_count),
                    witness: Some(SecrecyWitness {
                        coalition,
                        x_a: x_ref,
                        x_b: None,
                    }),
                });
            }
        }
    }
    Ok(SecrecyOutcome {
        passed: true,
        coalitions_tested,
        encodings_per_coalition: (x_count * z_count),
        witness: None,
    })
}

#[derive(Debug, Clone)]
pub struct ErasureOutcome {
    pub passed: bool,
    pub subsets_tested: u64,
    /// A surviving-node set that fails to determine all files.
    pub witness: Option<Vec<usize>>,
}

/// Every set of n - d + 1 surviving nodes must determine the whole
/// codeword: the corresponding generator columns must have full rank.
pub fn erasure_check(code: &SecureStorageCode) -> Result<ErasureOutcome> {
    let n = code.n();
    let d = code.d();
    let keep = n + 1 - d;
    if binomial_u128(n, keep) > ERASURE_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "C({n}, {keep}) exceeds {ERASURE_BUDGET}"
        )));
    }
    let g = code.stacked_generator();
    let full = code.k_d() + code.k_s();
    let mut tested = 0u64;
    for subset in combinations(n, keep) {
        tested += 1;
        if g.restrict_columns(&subset).rank() != full {
            return Ok(ErasureOutcome {
                passed: false,
                subsets_tested: tested,
                witness: Some(subset),
            });
        }
    }
    Ok(ErasureOutcome {
        passed: true,
        subsets_tested: tested,
        witness: None,
    })
}

#[derive(Debug, Clone)]
pub struct LoadReport {
    /// Number of files whose retrieval touches each node.
    pub histogram: Vec<usize>,
    pub worst_gap: usize,
}

/// Per-node access counts over one retrieval of every file.
pub fn load_report(code: &SecureStorageCode) -> LoadReport {
    let access = code.access_structure();
    let histogram = access.column_weights();
    let worst_gap = access.worst_gap();
    LoadReport {
        histogram,
        worst_gap,
    }
}

#[derive(Debug, Clone)]
pub struct RoundTripOutcome {
    pub passed: bool,
    pub messages_tested: u64,
    /// True when the whole message space was enumerated.
    pub exhaustive: bool,
}

/// Encode/retrieve round trip: every retrieval must return the stored
/// file symbol exactly. Enumerates the full message space when it is small
/// enough, otherwise tests seeded samples.
pub fn recovery_roundtrip(code: &SecureStorageCode, seed: u64) -> Result<RoundTripOutcome> {
    let q = code.field().modulus();
    let k_d = code.k_d();
    let space = (q as u128).checked_pow(k_d as u32).unwrap_or(u128::MAX);
    let exhaustive = space <= ROUNDTRIP_FULL_LIMIT;
    let mut rng = SplitMix64::new(seed);
    let count = if exhaustive { space as u64 } else { 1000 };
    for i in 0..count {
        let x: Vec<u64> = if exhaustive {
            digits(i, q, k_d)
        } else {
            (0..k_d).map(|_| rng.next_below(q)).collect()
        };
        let mut nodes = encode(code, &x, seed ^ i)?;
        for (file, &expected) in x.iter().enumerate() {
            if nodes.retrieve(file)?.value() != expected {
                return Ok(RoundTripOutcome {
                    passed: false,
                    messages_tested: i + 1,
                    exhaustive,
                });
            }
        }
    }
    Ok(RoundTripOutcome {
        passed: true,
        messages_tested: count,
        exhaustive,
    })
}

fn digits(mut idx: u64, q: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for slot in out.iter_mut() {
        *slot = idx % q;
        idx /= q;
    }
    out
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::matrix::Matrix;
    use crate::secure::{construct_grs, SecureStorageCode};

    /// The three-node scheme storing two files: nodes hold X0+Z, X1+Z and
    /// X0+X1+Z; each file is read from two nodes.
    fn three_node_scheme(q: u64) -> SecureStorageCode {
        let f = Field::new(q).unwrap();
        let g_d = Matrix::from_rows(&f, &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let g_s = Matrix::from_rows(&f, &[vec![1, 1, 1]]).unwrap();
        let b = Matrix::from_rows(&f, &[vec![0, q - 1, 1], vec![q - 1, 0, 1]]).unwrap();
        SecureStorageCode::from_parts(f, g_d, g_s, b, 1, 1, 2).unwrap()
    }

    #[test]
    fn encode_matches_node_formulas() {
        let code = three_node_scheme(7);
        let nodes = encode_with_randomness(&code, &[3, 5], &[2]).unwrap();
        assert_eq!(nodes.symbols(), &[5, 0, 3]); // x0+z, x1+z, x0+x1+z
        // Forcing z = 0 exposes the raw data encoding.
        let plain = encode_with_randomness(&code, &[3, 5], &[0]).unwrap();
        assert_eq!(plain.symbols(), &[3, 5, 1]);
    }

    #[test]
    fn retrieve_reads_only_the_support() {
        let code = three_node_scheme(7);
        let mut nodes = encode(&code, &[4, 6], 9).unwrap();
        assert_eq!(nodes.retrieve(0).unwrap().value(), 4);
        assert_eq!(nodes.access_counts(), &[0, 1, 1]);
        assert_eq!(nodes.retrieve(1).unwrap().value(), 6);
        assert_eq!(nodes.access_counts(), &[1, 1, 2]);
        assert!(matches!(
            nodes.retrieve(2),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn roundtrip_over_full_message_space() {
        let code = three_node_scheme(3);
        let outcome = recovery_roundtrip(&code, 0).unwrap();
        assert!(outcome.passed);
        assert!(outcome.exhaustive);
        assert_eq!(outcome.messages_tested, 9);
    }

    #[test]
    fn worked_example_roundtrip_and_loads() {
        let f = Field::new(7).unwrap();
        let code = construct_grs(&f, 6, 2, 2, Some(&[1, 2, 3, 4, 5, 6])).unwrap();
        let outcome = recovery_roundtrip(&code, 1).unwrap();
        assert!(outcome.passed && outcome.exhaustive);
        // Each retrieval touches exactly three nodes.
        let mut nodes = encode(&code, &[2, 3], 4).unwrap();
        nodes.retrieve(0).unwrap();
        assert_eq!(nodes.access_counts().iter().sum::<u64>(), 3);
        let load = load_report(&code);
        assert_eq!(load.histogram, vec![1, 1, 2, 2, 0, 0]);
        assert_eq!(load.worst_gap, 2);
    }

    #[test]
    fn balanced_structure_has_flat_histogram() {
        let f = Field::new(7).unwrap();
        let code = construct_grs(&f, 6, 2, 2, Some(&[1, 2, 3, 4, 5, 6])).unwrap();
        let balanced = crate::secure::rebalance(&code, 0).unwrap();
        let load = load_report(&balanced);
        assert_eq!(load.histogram, vec![1; 6]);
        assert_eq!(load.worst_gap, 0);
    }

    #[test]
    fn secrecy_oracle_passes_at_one_fails_at_two() {
        for q in [3u64, 5, 7] {
            let code = three_node_scheme(q);
            let ok = secrecy_exhaustive(&code, 1).unwrap();
            assert!(ok.passed, "single nodes must learn nothing over GF({q})");
            let bad = secrecy_exhaustive(&code, 2).unwrap();
            assert!(!bad.passed, "two nodes determine a file over GF({q})");
            let witness = bad.witness.unwrap();
            assert_eq!(witness.coalition.len(), 2);
            assert!(witness.x_b.is_some());
        }
    }

    #[test]
    fn secrecy_vacuous_for_empty_coalitions() {
        let code = three_node_scheme(5);
        let outcome = secrecy_exhaustive(&code, 0).unwrap();
        assert!(outcome.passed);
        assert_eq!(outcome.coalitions_tested, 1);
    }

    #[test]
    fn secrecy_budget_is_loud() {
        let f = Field::new(13).unwrap();
        let code = construct_grs(&f, 12, 6, 5, None).unwrap();
        assert!(matches!(
            secrecy_exhaustive(&code, 5),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn erasure_scan_of_worked_example() {
        let f = Field::new(7).unwrap();
        let code = construct_grs(&f, 6, 2, 2, Some(&[1, 2, 3, 4, 5, 6])).unwrap();
        let outcome = erasure_check(&code).unwrap();
        assert!(outcome.passed);
        assert_eq!(outcome.subsets_tested, 15); // C(6, 4)
    }

    #[test]
    fn erasure_with_unit_distance_checks_full_rank_only() {
        let code = three_node_scheme(7);
        let outcome = erasure_check(&code).unwrap();
        assert!(outcome.passed);
        assert_eq!(outcome.subsets_tested, 1);
    }

    #[test]
    fn secrecy_equivalence_with_dual_distance() {
        // The oracle agrees with the algebraic criterion in both
        // directions on small instances.
        let f5 = Field::new(5).unwrap();
        let codes = vec![
            construct_grs(&f5, 4, 2, 1, None).unwrap(),
            construct_grs(&f5, 4, 3, 1, None).unwrap(),
            three_node_scheme(3),
            three_node_scheme(5),
        ];
        for code in codes {
            for t in 0..=code.n().min(3) {
                let oracle = secrecy_exhaustive(&code, t).unwrap().passed;
                let algebraic = crate::secure::secrecy_dual_distance(&code).unwrap() > t;
                assert_eq!(
                    oracle,
                    algebraic,
                    "oracle and dual distance disagree at t = {t}"
                );
            }
        }
    }

    #[test]
    fn erasure_check_tracks_the_true_distance() {
        // Claiming one more unit of distance than the code has must fail
        // the scan; the honest claim passes.
        let f = Field::new(7).unwrap();
        let honest = construct_grs(&f, 6, 2, 2, Some(&[1, 2, 3, 4, 5, 6])).unwrap();
        assert!(erasure_check(&honest).unwrap().passed);
        let overclaimed = SecureStorageCode::from_parts(
            f,
            honest.data_generator().clone(),
            honest.secrecy_generator().clone(),
            honest.access_matrix().clone(),
            honest.t(),
            honest.d() + 1,
            honest.r(),
        )
        .unwrap();
        let outcome = erasure_check(&overclaimed).unwrap();
        assert!(!outcome.passed);
        assert!(outcome.witness.is_some());
    }

    #[test]
    fn histogram_totals_match_row_weights() {
        let f = Field::new(7).unwrap();
        let code = construct_grs(&f, 6, 3, 2, None).unwrap();
        let load = load_report(&code);
        let row_total: usize = code.access_structure().row_weights().iter().sum();
        assert_eq!(load.histogram.iter().sum::<usize>(), row_total);
    }

    #[test]
    fn single_file_load_gap_is_at_most_one() {
        let f = Field::new(7).unwrap();
        let code = construct_grs(&f, 5, 1, 1, None).unwrap();
        assert!(load_report(&code).worst_gap <= 1);
    }
}
