//! Linear codes and the concrete families used by the constructions:
//! generalized Reed-Solomon (Vandermonde) codes, binary Reed-Muller codes,
//! duals, and exhaustive minimum-distance computation.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::matrix::{weight, Matrix};

/// Work bound for exhaustive codeword scans: q^k must stay below this.
pub const DISTANCE_SCAN_BOUND: u128 = 1 << 24;

/// A linear [n, k] code given by a full-rank generator matrix.
#[derive(Debug, Clone)]
pub struct LinearCode {
    generator: Matrix,
    distance: OnceLock<usize>,
}

impl LinearCode {
    /// Wraps a generator matrix, verifying it has full row rank.
    pub fn new(generator: Matrix) -> Result<Self> {
        if generator.rank() != generator.rows() {
            return Err(Error::BadParameters(
                "generator matrix does not have full row rank".into(),
            ));
        }
        Ok(LinearCode {
            generator,
            distance: OnceLock::new(),
        })
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn field(&self) -> &Field {
        self.generator.field()
    }

    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    /// A parity-check matrix: a nullspace basis of the generator.
    pub fn parity_check(&self) -> Matrix {
        self.generator.nullspace()
    }

    /// The dual code, generated by a deterministic nullspace basis.
    pub fn dual(&self) -> LinearCode {
        LinearCode::new(self.generator.nullspace()).expect("nullspace basis has full rank")
    }

    /// Exact minimum Hamming weight over all q^k - 1 nonzero codewords.
    ///
    /// The scan walks the message space depth-first, adding one generator
    /// row multiple at a time; the result is cached.
    pub fn minimum_distance(&self) -> Result<usize> {
        if let Some(&d) = self.distance.get() {
            return Ok(d);
        }
        let k = self.dimension();
        if k == 0 {
            return Err(Error::BadParameters(
                "the zero-dimensional code has no distance".into(),
            ));
        }
        let q = self.field().modulus() as u128;
        let states = q.checked_pow(k as u32).unwrap_or(u128::MAX);
        if states > DISTANCE_SCAN_BOUND {
            return Err(Error::TooLargeForExhaustive(format!(
                "q^k = {}^{} exceeds {}",
                q, k, DISTANCE_SCAN_BOUND
            )));
        }
        let n = self.length();
        let field = self.field().clone();
        let mut best = n + 1;
        let mut acc = vec![0u64; n];
        scan_rows(&field, &self.generator, 0, false, &mut acc, &mut best);
        let _ = self.distance.set(best);
        Ok(best)
    }

    /// Finds a codeword whose support is exactly `support`, if one exists.
    ///
    /// Candidates live in the nullspace of the parity check restricted to
    /// the support; they are enumerated in a fixed order and the first one
    /// with full support is returned, scaled so its first nonzero
    /// coordinate is 1.
    pub fn codeword_with_support(&self, support: &[usize]) -> Option<Vec<u64>> {
        let n = self.length();
        if support.is_empty() || support.iter().any(|&p| p >= n) {
            return None;
        }
        let mut support = support.to_vec();
        support.sort_unstable();
        support.dedup();
        let field = self.field().clone();
        let h = self.parity_check();
        let restricted = h.restrict_columns(&support);
        let basis = restricted.nullspace();
        let dim = basis.rows();
        if dim == 0 {
            return None;
        }
        let q = field.modulus();
        // Odometer over nonzero coefficient vectors, first digit fastest.
        let mut coeffs = vec![0u64; dim];
        loop {
            let mut p = 0;
            while p < dim && coeffs[p] == q - 1 {
                coeffs[p] = 0;
                p += 1;
            }
            if p == dim {
                return None;
            }
            coeffs[p] += 1;
            let candidate: Vec<u64> = (0..support.len())
                .map(|c| {
                    let mut acc = 0;
                    for (i, &co) in coeffs.iter().enumerate() {
                        acc = field.add_raw(acc, field.mul_raw(co, basis.get(i, c)));
                    }
                    acc
                })
                .collect();
            if candidate.iter().all(|&x| x != 0) {
                let scale = field
                    .inv_raw(candidate[0])
                    .expect("leading support entry is nonzero");
                let mut word = vec![0u64; n];
                for (j, &pos) in support.iter().enumerate() {
                    word[pos] = field.mul_raw(candidate[j], scale);
                }
                return Some(word);
            }
        }
    }
}

fn scan_rows(
    field: &Field,
    gen: &Matrix,
    row: usize,
    nonzero: bool,
    acc: &mut Vec<u64>,
    best: &mut usize,
) {
    if row == gen.rows() {
        if nonzero {
            *best = (*best).min(weight(acc));
        }
        return;
    }
    scan_rows(field, gen, row + 1, nonzero, acc, best);
    for _ in 1..field.modulus() {
        for (c, slot) in acc.iter_mut().enumerate() {
            *slot = field.add_raw(*slot, gen.get(row, c));
        }
        scan_rows(field, gen, row + 1, true, acc, best);
    }
    // Restore the accumulator: adding the row q-1 times cycled it back
    // after one more addition.
    for (c, slot) in acc.iter_mut().enumerate() {
        *slot = field.add_raw(*slot, gen.get(row, c));
    }
}

/// Vandermonde slice V_i^j: rows r = 0..=j-i with entry (r, c) = alpha^{c(i+r)}.
pub fn vandermonde(field: &Field, n: usize, i: usize, j: usize) -> Result<Matrix> {
    let q = field.modulus() as usize;
    if i > j || n > q - 1 || j - i + 1 > n {
        return Err(Error::BadParameters(format!(
            "invalid Vandermonde slice V_{i}^{j} of length {n} over GF({q})"
        )));
    }
    let rows: Vec<Vec<u64>> = (i..=j)
        .map(|e| {
            (0..n)
                .map(|c| field.exp((c * e) as u64).value())
                .collect()
        })
        .collect();
    Matrix::from_rows(field, &rows)
}

/// A [n, k] Reed-Solomon code in Vandermonde form on the given evaluation
/// points (defaults to alpha^0 .. alpha^{n-1}). The result is MDS with
/// distance n - k + 1.
pub fn grs_code(field: &Field, n: usize, k: usize, eval_points: Option<&[u64]>) -> Result<LinearCode> {
    let q = field.modulus();
    if k == 0 || k > n {
        return Err(Error::BadParameters(format!(
            "require 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    let points: Vec<u64> = match eval_points {
        Some(p) => {
            if p.len() != n {
                return Err(Error::BadParameters(format!(
                    "expected {n} evaluation points, got {}",
                    p.len()
                )));
            }
            let reduced: Vec<u64> = p.iter().map(|&x| x % q).collect();
            if reduced.contains(&0) {
                return Err(Error::BadParameters(
                    "evaluation points must be nonzero".into(),
                ));
            }
            let mut sorted = reduced.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEvaluationPoints);
            }
            reduced
        }
        None => {
            if n > (q - 1) as usize {
                return Err(Error::BadParameters(format!(
                    "length {n} exceeds q-1 = {} for default evaluation points",
                    q - 1
                )));
            }
            (0..n).map(|c| field.exp(c as u64).value()).collect()
        }
    };
    let rows: Vec<Vec<u64>> = (0..k)
        .map(|r| {
            points
                .iter()
                .map(|&p| field.element(p).pow(r as u64).value())
                .collect()
        })
        .collect();
    LinearCode::new(Matrix::from_rows(field, &rows)?)
}

/// Binary Reed-Muller code R(v, m) together with its monomial order.
///
/// Generator rows are evaluations of all monomials of degree <= v over
/// {0,1}^m, ordered by ascending degree and then lexicographically by
/// variable set; column c encodes the point whose i-th coordinate is bit i
/// of c. The returned list records which monomial each row evaluates.
pub fn reed_muller(m: usize, v: usize) -> Result<(LinearCode, Vec<Vec<usize>>)> {
    if v > m || m > 10 {
        return Err(Error::BadParameters(format!(
            "require 0 <= v <= m <= 10, got v={v}, m={m}"
        )));
    }
    let field = Field::new(2).expect("GF(2) exists");
    let n = 1usize << m;
    let monomials = monomials_up_to_degree(m, v);
    let rows: Vec<Vec<u64>> = monomials
        .iter()
        .map(|mono| {
            (0..n)
                .map(|c| mono.iter().map(|&var| (c >> var) & 1).product::<usize>() as u64)
                .collect()
        })
        .collect();
    let code = LinearCode::new(Matrix::from_rows(&field, &rows)?)?;
    Ok((code, monomials))
}

/// Monomials (as sorted variable lists) of degree <= v over m variables,
/// ordered by degree then lexicographically.
pub fn monomials_up_to_degree(m: usize, v: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for d in 0..=v {
        out.extend(combinations(m, d));
    }
    out
}

/// All d-element subsets of [0, n) in lexicographic order.
pub fn combinations(n: usize, d: usize) -> Vec<Vec<usize>> {
    if d > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut combo: Vec<usize> = (0..d).collect();
    loop {
        out.push(combo.clone());
        if d == 0 {
            return out;
        }
        // Advance to the next lexicographic combination.
        let mut i = d;
        let mut moved = false;
        while i > 0 {
            i -= 1;
            if combo[i] != i + n - d {
                combo[i] += 1;
                for j in i + 1..d {
                    combo[j] = combo[j - 1] + 1;
                }
                moved = true;
                break;
            }
        }
        if !moved {
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Field {
        Field::new(q).unwrap()
    }

    /// Independent distance oracle: iterate every message vector and take
    /// the minimum weight of its encoding.
    fn distance_by_full_enumeration(code: &LinearCode) -> usize {
        let q = code.field().modulus();
        let k = code.dimension();
        let g = code.generator();
        let mut best = code.length() + 1;
        let total = q.pow(k as u32);
        for idx in 1..total {
            let mut msg = vec![0u64; k];
            let mut x = idx;
            for slot in msg.iter_mut() {
                *slot = x % q;
                x /= q;
            }
            let word: Vec<u64> = (0..code.length())
                .map(|c| (0..k).map(|r| msg[r] * g.get(r, c)).sum::<u64>() % q)
                .collect();
            best = best.min(weight(&word));
        }
        best
    }

    #[test]
    fn grs_on_explicit_points_matches_worked_example() {
        let f = gf(7);
        let code = grs_code(&f, 6, 4, Some(&[1, 2, 3, 4, 5, 6])).unwrap();
        let g = code.generator();
        assert_eq!(g.row(0), &[1, 1, 1, 1, 1, 1]);
        assert_eq!(g.row(1), &[1, 2, 3, 4, 5, 6]);
        assert_eq!(g.row(2), &[1, 4, 2, 2, 4, 1]);
        assert_eq!(g.row(3), &[1, 1, 6, 1, 6, 6]);
    }

    #[test]
    fn grs_full_dimension_is_invertible() {
        let f = gf(7);
        let code = grs_code(&f, 6, 6, None).unwrap();
        assert!(code.generator().invert().is_ok());
        assert_eq!(code.minimum_distance().unwrap(), 1);
    }

    #[test]
    fn grs_distance_is_mds() {
        let f = gf(7);
        let code = grs_code(&f, 6, 4, Some(&[1, 2, 3, 4, 5, 6])).unwrap();
        assert_eq!(code.minimum_distance().unwrap(), 3);
        assert_eq!(distance_by_full_enumeration(&code), 3);
    }

    #[test]
    fn grs_rejects_bad_points() {
        let f = gf(7);
        assert_eq!(
            grs_code(&f, 3, 2, Some(&[1, 1, 2])).unwrap_err(),
            Error::DuplicateEvaluationPoints
        );
        assert!(matches!(
            grs_code(&f, 3, 2, Some(&[0, 1, 2])),
            Err(Error::BadParameters(_))
        ));
        assert!(matches!(grs_code(&f, 7, 2, None), Err(Error::BadParameters(_))));
    }

    #[test]
    fn grs_every_k_columns_independent() {
        // MDS property, exhaustive over all column subsets.
        let f = gf(7);
        for n in 1..=6usize {
            for k in 1..=n {
                let code = grs_code(&f, n, k, None).unwrap();
                for cols in combinations(n, k) {
                    let sub = code.generator().restrict_columns(&cols);
                    assert_eq!(sub.rank(), k, "n={n} k={k} cols={cols:?}");
                }
            }
        }
    }

    #[test]
    fn vandermonde_slices() {
        let f = gf(7);
        let v00 = vandermonde(&f, 6, 0, 0).unwrap();
        assert_eq!(v00.row_vecs(), vec![vec![1, 1, 1, 1, 1, 1]]);
        // alpha = 3: row exponents 0,1,2 on points 3^c.
        let v02 = vandermonde(&f, 6, 0, 2).unwrap();
        assert_eq!(
            v02.row_vecs(),
            vec![
                vec![1, 1, 1, 1, 1, 1],
                vec![1, 3, 2, 6, 4, 5],
                vec![1, 2, 4, 1, 2, 4],
            ]
        );
        assert!(vandermonde(&f, 8, 0, 1).is_err());
    }

    #[test]
    fn stacked_vandermonde_parity_blocks_have_full_rank() {
        // H_D = (V_{n-t}^{n-1}; V_0^{n-kd-t-1}) must have rank n - kd.
        let mut rng = crate::rng::SplitMix64::new(11);
        for _ in 0..20 {
            let q = [5u64, 7, 11, 13][rng.next_below(4) as usize];
            let f = gf(q);
            let n = (q - 1) as usize;
            let t = 1 + rng.next_below((n - 2) as u64) as usize;
            let kd_max = n - t - 1;
            if kd_max == 0 {
                continue;
            }
            let kd = 1 + rng.next_below(kd_max as u64) as usize;
            let top = vandermonde(&f, n, n - t, n - 1).unwrap();
            let stacked = if n - kd - t > 0 {
                top.vstack(&vandermonde(&f, n, 0, n - kd - t - 1).unwrap()).unwrap()
            } else {
                top
            };
            assert_eq!(stacked.rank(), n - kd, "q={q} n={n} t={t} kd={kd}");
        }
    }

    #[test]
    fn reed_muller_2_4_parameters() {
        let (code, monos) = reed_muller(4, 2).unwrap();
        assert_eq!(code.length(), 16);
        assert_eq!(code.dimension(), 11);
        assert_eq!(monos.len(), 11);
        assert_eq!(code.minimum_distance().unwrap(), 4);
        assert_eq!(distance_by_full_enumeration(&code), 4);
        // Degree-2 block is the contiguous tail.
        assert!(monos[..5].iter().all(|s| s.len() <= 1));
        assert!(monos[5..].iter().all(|s| s.len() == 2));
        assert_eq!(monos[5..].to_vec(), vec![
            vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]
        ]);
    }

    #[test]
    fn reed_muller_range_checks() {
        // Degenerate but in range: zero variables give the length-1 code.
        let (tiny, monos) = reed_muller(0, 0).unwrap();
        assert_eq!((tiny.length(), tiny.dimension()), (1, 1));
        assert_eq!(monos, vec![Vec::<usize>::new()]);
        assert!(reed_muller(11, 2).is_err());
        assert!(reed_muller(3, 4).is_err());
    }

    #[test]
    fn reed_muller_repetition_and_first_order() {
        let (rep, _) = reed_muller(2, 0).unwrap();
        assert_eq!((rep.length(), rep.dimension()), (4, 1));
        assert_eq!(rep.generator().row(0), &[1, 1, 1, 1]);
        assert_eq!(rep.minimum_distance().unwrap(), 4);

        let (rm13, _) = reed_muller(3, 1).unwrap();
        assert_eq!((rm13.length(), rm13.dimension()), (8, 4));
        assert_eq!(rm13.minimum_distance().unwrap(), 4);
        assert_eq!(rm13.dual().minimum_distance().unwrap(), 4);
    }

    #[test]
    fn reed_muller_dual_of_first_order_rm4() {
        let (rm14, _) = reed_muller(4, 1).unwrap();
        assert_eq!(rm14.dual().minimum_distance().unwrap(), 4);
    }

    #[test]
    fn reed_muller_nesting() {
        for m in 2..=4usize {
            for v in 1..=m {
                let (inner, _) = reed_muller(m, v - 1).unwrap();
                let (outer, _) = reed_muller(m, v).unwrap();
                let stacked = outer.generator().vstack(inner.generator()).unwrap();
                assert_eq!(stacked.rank(), outer.dimension());
            }
        }
    }

    #[test]
    fn dual_relations() {
        let f = gf(7);
        let code = grs_code(&f, 6, 4, Some(&[1, 2, 3, 4, 5, 6])).unwrap();
        let dual = code.dual();
        assert_eq!(dual.dimension(), 2);
        let prod = code.generator().mul(&dual.generator().transpose()).unwrap();
        assert!(prod.is_zero());
        // Involution up to basis.
        let back = dual.dual();
        let stacked = code.generator().vstack(back.generator()).unwrap();
        assert_eq!(stacked.rank(), code.dimension());
        // Dual of the full space is the zero-dimensional code.
        let full = grs_code(&f, 6, 6, None).unwrap();
        assert_eq!(full.dual().dimension(), 0);
        assert!(matches!(
            full.dual().minimum_distance(),
            Err(Error::BadParameters(_))
        ));
    }

    #[test]
    fn dual_of_secrecy_rows_has_distance_t_plus_one() {
        let f = gf(7);
        let gs = Matrix::from_rows(&f, &[vec![1, 4, 2, 2, 4, 1], vec![1, 1, 6, 1, 6, 6]]).unwrap();
        let cs = LinearCode::new(gs).unwrap();
        let dual = cs.dual();
        assert_eq!(dual.minimum_distance().unwrap(), 3);
        assert_eq!(distance_by_full_enumeration(&dual), 3);
    }

    #[test]
    fn codeword_with_support_reproduces_access_rows() {
        let f = gf(7);
        let gs = Matrix::from_rows(&f, &[vec![1, 4, 2, 2, 4, 1], vec![1, 1, 6, 1, 6, 6]]).unwrap();
        let dual = LinearCode::new(gs).unwrap().dual();
        assert_eq!(
            dual.codeword_with_support(&[0, 2, 3]).unwrap(),
            vec![1, 0, 2, 1, 0, 0]
        );
        assert_eq!(
            dual.codeword_with_support(&[1, 2, 3]).unwrap(),
            vec![0, 1, 3, 2, 0, 0]
        );
        // A bigger support is realized with exactly that support.
        let w = dual.codeword_with_support(&[0, 2, 3, 4]).unwrap();
        let supp: Vec<usize> = (0..6).filter(|&i| w[i] != 0).collect();
        assert_eq!(supp, vec![0, 2, 3, 4]);
        assert!(dual.codeword_with_support(&[]).is_none());
    }

    #[test]
    fn mds_dual_realizes_every_minimum_support() {
        // The dual of an [n, t] MDS code contains a codeword for every
        // support of size t + 1.
        let f = gf(7);
        let gs = Matrix::from_rows(&f, &[vec![1, 4, 2, 2, 4, 1], vec![1, 1, 6, 1, 6, 6]]).unwrap();
        let dual = LinearCode::new(gs).unwrap().dual();
        for support in combinations(6, 3) {
            let w = dual
                .codeword_with_support(&support)
                .unwrap_or_else(|| panic!("support {support:?} not realized"));
            let supp: Vec<usize> = (0..6).filter(|&i| w[i] != 0).collect();
            assert_eq!(supp, support);
            let first = supp[0];
            assert_eq!(w[first], 1, "leading coordinate is normalized");
        }
    }

    #[test]
    fn distance_scan_budget_enforced() {
        let f = gf(13);
        let code = grs_code(&f, 12, 8, None).unwrap();
        // 13^8 > 2^24.
        assert!(matches!(
            code.minimum_distance(),
            Err(Error::TooLargeForExhaustive(_))
        ));
    }
}
