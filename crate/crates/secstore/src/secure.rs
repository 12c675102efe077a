//! Collusion-secure storage codes: assembly of a data generator, secrecy
//! rows and an explicit access structure, plus the constructions that
//! produce them (Reed-Solomon based, load-balanced, cyclic, Reed-Muller,
//! and seeded random search) and the exhaustive verifier.

use std::collections::HashMap;

use crate::bounds;
use crate::codes::{combinations, grs_code, reed_muller, vandermonde, LinearCode};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::matrix::{weight, Matrix};
use crate::report::{Check, VerificationReport};
use crate::rng::SplitMix64;
use crate::sim;

/// Retry budget for seeded balanced-access searches.
pub const BALANCE_SEARCH_BUDGET: u64 = 10_000;
/// Cap on partial search states explored before giving up.
const BALANCE_SEARCH_NODE_CAP: u64 = 2_000_000;
/// Budget for the exhaustive secrecy oracle inside `verify`:
/// q^(k_d + k_s) * C(n, t) encodings.
pub const SECRECY_ORACLE_BUDGET: u128 = 100_000_000;

/// A t-collusion secure storage code over GF(q).
///
/// Nodes store one field symbol each: node j holds the j-th coordinate of
/// (X | Z) * G with G = [G_D; G_S], where X are the k_d files and Z are
/// k_s fresh random symbols. Row i of the access structure B recovers file
/// i by reading only the nodes in its support.
#[derive(Debug, Clone)]
pub struct SecureStorageCode {
    field: Field,
    n: usize,
    k_d: usize,
    k_s: usize,
    t: usize,
    d: usize,
    r: usize,
    g_d: Matrix,
    g_s: Matrix,
    b: Matrix,
    mixing: Matrix,
}

impl SecureStorageCode {
    /// Assembles a code from explicit parts, checking shapes and the
    /// full-rank invariant of the stacked generator. The mixing matrix of
    /// a code built this way is the identity (its own G_D is taken as the
    /// reference basis).
    pub fn from_parts(
        field: Field,
        g_d: Matrix,
        g_s: Matrix,
        b: Matrix,
        t: usize,
        d: usize,
        r: usize,
    ) -> Result<Self> {
        let n = g_d.cols();
        let k_d = g_d.rows();
        let k_s = g_s.rows();
        if g_s.cols() != n || b.cols() != n || b.rows() != k_d {
            return Err(Error::DimensionMismatch(
                "G_D, G_S and B must agree on n, and B must have k_d rows".into(),
            ));
        }
        if g_d.field() != &field || g_s.field() != &field || b.field() != &field {
            return Err(Error::FieldMismatch(field.modulus(), g_d.field().modulus()));
        }
        if k_d == 0 || k_d + k_s > n {
            return Err(Error::BadParameters(format!(
                "require 1 <= k_d and k_d + k_s <= n, got k_d={k_d}, k_s={k_s}, n={n}"
            )));
        }
        if d == 0 || d > n || r > n || t >= n {
            return Err(Error::BadParameters(format!(
                "parameters out of range: t={t}, d={d}, r={r}, n={n}"
            )));
        }
        let stacked = g_d.vstack(&g_s)?;
        if stacked.rank() != k_d + k_s {
            return Err(Error::BadParameters(
                "stacked generator [G_D; G_S] is rank deficient".into(),
            ));
        }
        let mixing = Matrix::identity(&field, k_d);
        Ok(SecureStorageCode {
            field,
            n,
            k_d,
            k_s,
            t,
            d,
            r,
            g_d,
            g_s,
            b,
            mixing,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Number of storage nodes.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored files.
    pub fn k_d(&self) -> usize {
        self.k_d
    }

    /// Number of fresh random symbols per encoding.
    pub fn k_s(&self) -> usize {
        self.k_s
    }

    /// Claimed collusion resistance.
    pub fn t(&self) -> usize {
        self.t
    }

    /// Claimed minimum distance of the stacked code.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Claimed access complexity (maximum access-row weight).
    pub fn r(&self) -> usize {
        self.r
    }

    /// Generator rows that carry the files (G_D, k_d x n).
    pub fn data_generator(&self) -> &Matrix {
        &self.g_d
    }

    /// Generator rows that carry the randomness (G_S, k_s x n).
    pub fn secrecy_generator(&self) -> &Matrix {
        &self.g_s
    }

    /// The access structure B (k_d x n); row i recovers file i.
    pub fn access_matrix(&self) -> &Matrix {
        &self.b
    }

    /// Mixing matrix M applied to the reference data rows during assembly.
    pub fn mixing_matrix(&self) -> &Matrix {
        &self.mixing
    }

    /// The stacked generator G = [G_D; G_S].
    pub fn stacked_generator(&self) -> Matrix {
        self.g_d
            .vstack(&self.g_s)
            .expect("stacked generator shapes agree")
    }

    /// The reference data rows G_D' with G_D = M * G_D'.
    pub fn reference_data_rows(&self) -> Matrix {
        self.mixing
            .invert()
            .expect("mixing matrix is invertible")
            .mul(&self.g_d)
            .expect("shapes agree")
    }

    /// Support of each access row: the node set read to recover each file.
    pub fn recovery_sets(&self) -> Vec<Vec<usize>> {
        (0..self.k_d)
            .map(|i| (0..self.n).filter(|&j| self.b.get(i, j) != 0).collect())
            .collect()
    }

    pub fn access_structure(&self) -> AccessStructure {
        AccessStructure {
            matrix: self.b.clone(),
        }
    }

    /// Exact storage rate k_d / n.
    pub fn rate(&self) -> bounds::Rational {
        bounds::Rational::new(self.k_d as i64, self.n as i64)
    }

    /// True iff G * B^T = [I_{k_d}; 0] holds exactly.
    pub fn recovery_identity_holds(&self) -> bool {
        let prod = match self.stacked_generator().mul(&self.b.transpose()) {
            Ok(p) => p,
            Err(_) => return false,
        };
        let mut expected = Matrix::zeros(&self.field, self.k_d + self.k_s, self.k_d);
        for i in 0..self.k_d {
            expected = {
                let mut rows = expected.row_vecs();
                rows[i][i] = 1;
                Matrix::from_rows(&self.field, &rows).expect("shape is fixed")
            };
        }
        prod == expected
    }
}

/// An access structure with its column-weight profile.
#[derive(Debug, Clone)]
pub struct AccessStructure {
    matrix: Matrix,
}

impl AccessStructure {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn row_weights(&self) -> Vec<usize> {
        (0..self.matrix.rows())
            .map(|i| weight(self.matrix.row(i)))
            .collect()
    }

    /// Number of files whose retrieval touches each node.
    pub fn column_weights(&self) -> Vec<usize> {
        let (rows, cols) = (self.matrix.rows(), self.matrix.cols());
        (0..cols)
            .map(|c| (0..rows).filter(|&r| self.matrix.get(r, c) != 0).count())
            .collect()
    }

    pub fn worst_gap(&self) -> usize {
        let w = self.column_weights();
        match (w.iter().max(), w.iter().min()) {
            (Some(&hi), Some(&lo)) => hi - lo,
            _ => 0,
        }
    }

    /// Every column weight lies within the floor/ceiling of the average
    /// total weight per node.
    pub fn is_balanced(&self) -> bool {
        let cols = self.matrix.cols();
        if cols == 0 {
            return true;
        }
        let total: usize = self.row_weights().iter().sum();
        let lo = total / cols;
        let hi = total.div_ceil(cols);
        self.column_weights().iter().all(|&w| w >= lo && w <= hi)
    }
}

/// Shared assembly step: given reference data rows G_D', secrecy rows G_S
/// and an access structure B inside the dual of the secrecy code, computes
/// M = (G_D' * B^T)^{-1} and G_D = M * G_D' so that G * B^T = [I; 0].
fn assemble(
    field: &Field,
    g_d_prime: Matrix,
    g_s: Matrix,
    b: Matrix,
    t: usize,
    d: usize,
    r: usize,
) -> Result<SecureStorageCode> {
    let mixing = g_d_prime.mul(&b.transpose())?.invert()?;
    let g_d = mixing.mul(&g_d_prime)?;
    let mut code = SecureStorageCode::from_parts(field.clone(), g_d, g_s, b, t, d, r)?;
    code.mixing = mixing;
    assert!(
        code.recovery_identity_holds(),
        "assembly must satisfy the recovery identity"
    );
    Ok(code)
}

/// Builds an optimal scheme from an [n, k_d + t] Reed-Solomon code: the
/// bottom t rows become the secrecy rows (an [n, t] MDS code), the access
/// rows are dual codewords supported on one data position plus the t
/// secrecy positions, and the data rows are remixed so that the recovery
/// identity holds. The result has r = t + 1 and d = n - k_d - t + 1.
pub fn construct_grs(
    field: &Field,
    n: usize,
    k_d: usize,
    t: usize,
    eval_points: Option<&[u64]>,
) -> Result<SecureStorageCode> {
    if k_d == 0 {
        return Err(Error::BadParameters("k_d must be at least 1".into()));
    }
    if t > k_d {
        return Err(Error::BadParameters(format!(
            "collusion resistance must satisfy t <= k_d, got t={t}, k_d={k_d}"
        )));
    }
    if k_d + t > n {
        return Err(Error::BadParameters(format!(
            "require k_d + t <= n, got k_d={k_d}, t={t}, n={n}"
        )));
    }
    let full = grs_code(field, n, k_d + t, eval_points)?;
    let gen = full.generator();
    // The construction indexes files on the leading positions; verify they
    // form an information set rather than silently permuting columns.
    let leading: Vec<usize> = (0..k_d + t).collect();
    if gen.restrict_columns(&leading).rank() != k_d + t {
        return Err(Error::InfoSetNotLeading);
    }
    let g_d_prime = gen.row_slice(0, k_d);
    let g_s = gen.row_slice(k_d, k_d + t);
    let dual_s = LinearCode::new(g_s.nullspace())?;
    let mut rows = Vec::with_capacity(k_d);
    for i in 0..k_d {
        let mut support = vec![i];
        support.extend(k_d..k_d + t);
        let row = dual_s.codeword_with_support(&support).ok_or_else(|| {
            Error::BadParameters(format!(
                "the secrecy dual realizes no codeword on support {support:?}"
            ))
        })?;
        rows.push(row);
    }
    let b = Matrix::from_rows(field, &rows)?;
    assemble(field, g_d_prime, g_s, b, t, n - k_d - t + 1, t + 1)
}

/// Replaces the access structure by a balanced one (column weights within
/// one of each other) drawn from the dual of the secrecy code, and remixes
/// the data rows accordingly. The search enumerates support assignments in
/// a seeded order and keeps the first one whose realized rows admit an
/// invertible mix.
pub fn rebalance(code: &SecureStorageCode, seed: u64) -> Result<SecureStorageCode> {
    if code.k_s != code.t {
        return Err(Error::BadParameters(
            "rebalance requires a scheme with k_s = t secrecy rows".into(),
        ));
    }
    if code.t + 1 > code.n {
        return Err(Error::BadParameters("t + 1 exceeds n".into()));
    }
    if code.t > 0 {
        // The support-by-support realization below is guaranteed only when
        // the secrecy rows form an [n, t] MDS code.
        let cs = LinearCode::new(code.g_s.clone())?;
        if cs.minimum_distance()? != code.n - code.t + 1 {
            return Err(Error::BadParameters(
                "rebalance requires the secrecy rows to form an [n, t] MDS code".into(),
            ));
        }
    }
    let dual_s = LinearCode::new(code.g_s.nullspace())?;
    let g_d_prime = code.reference_data_rows();
    let b = balanced_rows_search(
        &dual_s,
        code.t + 1,
        &g_d_prime,
        seed,
        BALANCE_SEARCH_BUDGET,
    )?;
    assemble(
        &code.field,
        g_d_prime,
        code.g_s.clone(),
        b,
        code.t,
        code.d,
        code.r,
    )
}

/// Seeded depth-first search for an access structure whose rows are
/// weight-`w` codewords of `source` with balanced column weights and an
/// invertible G_D' * B^T.
fn balanced_rows_search(
    source: &LinearCode,
    w: usize,
    g_d_prime: &Matrix,
    seed: u64,
    budget: u64,
) -> Result<Matrix> {
    let n = source.length();
    let k_d = g_d_prime.rows();
    let field = source.field().clone();
    let total = k_d * w;
    let lo = total / n;
    let hi = total.div_ceil(n);
    let supports = combinations(n, w);
    let mut rng = SplitMix64::new(seed);
    let orders: Vec<Vec<usize>> = (0..k_d)
        .map(|_| {
            let mut idx: Vec<usize> = (0..supports.len()).collect();
            rng.shuffle(&mut idx);
            idx
        })
        .collect();

    struct Search<'a> {
        supports: &'a [Vec<usize>],
        orders: &'a [Vec<usize>],
        source: &'a LinearCode,
        g_d_prime: &'a Matrix,
        field: Field,
        lo: usize,
        hi: usize,
        w: usize,
        k_d: usize,
        n: usize,
        col_weights: Vec<usize>,
        chosen: Vec<usize>,
        realized: HashMap<usize, Option<Vec<u64>>>,
        tested: u64,
        nodes: u64,
        budget: u64,
    }

    impl Search<'_> {
        fn run(&mut self, level: usize) -> Result<Option<Matrix>> {
            if level == self.k_d {
                self.tested += 1;
                if self.tested > self.budget {
                    return Err(Error::SearchExhausted { tries: self.budget });
                }
                let mut rows = Vec::with_capacity(self.k_d);
                for &s in &self.chosen {
                    let source = self.source;
                    let supports = self.supports;
                    let word = self
                        .realized
                        .entry(s)
                        .or_insert_with(|| source.codeword_with_support(&supports[s]));
                    match word {
                        Some(v) => rows.push(v.clone()),
                        None => return Ok(None),
                    }
                }
                let b = Matrix::from_rows(&self.field, &rows)?;
                return match self.g_d_prime.mul(&b.transpose())?.invert() {
                    Ok(_) => Ok(Some(b)),
                    Err(Error::SingularMatrix) => Ok(None),
                    Err(e) => Err(e),
                };
            }
            let remaining = (self.k_d - level - 1) * self.w;
            for pos in 0..self.orders[level].len() {
                let idx = self.orders[level][pos];
                self.nodes += 1;
                if self.nodes > BALANCE_SEARCH_NODE_CAP {
                    return Err(Error::SearchExhausted { tries: self.tested });
                }
                let support = &self.supports[idx];
                if support.iter().any(|&c| self.col_weights[c] + 1 > self.hi) {
                    continue;
                }
                for &c in support {
                    self.col_weights[c] += 1;
                }
                let deficit: usize = (0..self.n)
                    .map(|c| self.lo.saturating_sub(self.col_weights[c]))
                    .sum();
                let headroom: usize = (0..self.n).map(|c| self.hi - self.col_weights[c]).sum();
                if deficit <= remaining && headroom >= remaining {
                    self.chosen.push(idx);
                    if let Some(b) = self.run(level + 1)? {
                        return Ok(Some(b));
                    }
                    self.chosen.pop();
                }
                for &c in support {
                    self.col_weights[c] -= 1;
                }
            }
            Ok(None)
        }
    }

    let mut search = Search {
        supports: &supports,
        orders: &orders,
        source,
        g_d_prime,
        field,
        lo,
        hi,
        w,
        k_d,
        n,
        col_weights: vec![0; n],
        chosen: Vec::new(),
        realized: HashMap::new(),
        tested: 0,
        nodes: 0,
        budget,
    };
    match search.run(0)? {
        Some(b) => Ok(b),
        None => Err(Error::SearchExhausted {
            tries: search.tested,
        }),
    }
}

/// Validation outcome for a candidate access structure.
#[derive(Debug, Clone)]
pub struct AccessValidation {
    /// G_S * B^T = 0: the rows lie in the dual of the secrecy code.
    pub parity_ok: bool,
    /// G_D' * B^T is invertible, so a mixing matrix exists.
    pub mixable: bool,
    /// Coordinates (A_1, A_2) of B in the basis (H; B_ref) of the secrecy
    /// dual, present when `parity_ok`.
    pub decomposition: Option<(Matrix, Matrix)>,
}

impl AccessValidation {
    pub fn valid(&self) -> bool {
        self.parity_ok && self.mixable
    }
}

/// Checks whether `b` is a valid access structure for the scheme: its rows
/// must annihilate the secrecy rows and admit an invertible mix. Also
/// returns the coordinates of `b` in the basis formed by a parity check of
/// the full code and the scheme's own access rows; validity is equivalent
/// to the second coordinate block having full rank.
pub fn validate_access_structure(code: &SecureStorageCode, b: &Matrix) -> Result<AccessValidation> {
    if b.rows() != code.k_d || b.cols() != code.n {
        return Err(Error::DimensionMismatch(format!(
            "expected a {}x{} access structure",
            code.k_d, code.n
        )));
    }
    let parity_ok = code.g_s.mul(&b.transpose())?.is_zero();
    let mixable = code.g_d.mul(&b.transpose())?.invert().is_ok();
    let decomposition = if parity_ok {
        let h = code.stacked_generator().nullspace();
        let basis = h.vstack(&code.b)?;
        Matrix::express_in_rows(&basis, b)?.map(|x| {
            let h_cols: Vec<usize> = (0..h.rows()).collect();
            let b_cols: Vec<usize> = (h.rows()..h.rows() + code.k_d).collect();
            (x.restrict_columns(&h_cols), x.restrict_columns(&b_cols))
        })
    } else {
        None
    };
    Ok(AccessValidation {
        parity_ok,
        mixable,
        decomposition,
    })
}

/// High-rate balanced construction: the full code is the [n, k_d + t]
/// Reed-Solomon code dual to a low-order Vandermonde slice, and the access
/// rows are minimum-weight (n - k_d + 1) codewords of the Vandermonde
/// slice between the parity blocks, with supports balanced by a seeded
/// search. Worthwhile when r = n - k_d + 1 < k_d + t.
pub fn construction1(
    field: &Field,
    n: usize,
    k_d: usize,
    t: usize,
    seed: u64,
) -> Result<SecureStorageCode> {
    let q = field.modulus() as usize;
    if k_d == 0 || k_d + t > n || n > q - 1 {
        return Err(Error::BadParameters(format!(
            "require 1 <= k_d, k_d + t <= n <= q - 1, got k_d={k_d}, t={t}, n={n}, q={q}"
        )));
    }
    let h_s = vandermonde(field, n, 0, n - t - 1)?;
    let g_s = h_s.nullspace();
    // Full code: parity check V_0^{n - k_d - t - 1} (empty when n = k_d + t).
    let c_full = if n - k_d - t > 0 {
        vandermonde(field, n, 0, n - k_d - t - 1)?.nullspace()
    } else {
        Matrix::identity(field, n)
    };
    let g_d_prime = complete_basis(&g_s, &c_full, k_d)?;
    let row_source = LinearCode::new(vandermonde(field, n, n - k_d - t, n - t - 1)?)?;
    let b = balanced_rows_search(
        &row_source,
        n - k_d + 1,
        &g_d_prime,
        seed,
        BALANCE_SEARCH_BUDGET,
    )?;
    assemble(
        field,
        g_d_prime,
        g_s,
        b,
        t,
        n - t - k_d + 1,
        n - k_d + 1,
    )
}

/// Cyclic balanced construction over the full multiplicative group:
/// n = q - 1, k_d = a with a | n, t = n - n/a. The access rows are the
/// cyclic shifts of v = (1 ... 1) * H_S, each of weight exactly t + 1, and
/// the resulting columns all have weight a(t + 1)/n.
pub fn construction2(field: &Field, a: usize) -> Result<SecureStorageCode> {
    let q = field.modulus() as usize;
    let n = q - 1;
    if a < 2 || !n.is_multiple_of(a) {
        return Err(Error::BadParameters(format!(
            "require a >= 2 and a | q - 1, got a={a}, q={q}"
        )));
    }
    let block = n / a;
    if block < a {
        return Err(Error::BadParameters(format!(
            "distance n/a - a + 1 = {} must be at least 1",
            block as i64 - a as i64 + 1
        )));
    }
    let t = n - block;
    let k_d = a;
    let h_s = vandermonde(field, n, 0, n - t - 1)?;
    // Row j of B is the j-th cyclic right-shift of (1 ... 1) * H_S,
    // obtained as (1, alpha^{-j}, ..., alpha^{-(n-t-1)j}) * H_S.
    let mut rows = Vec::with_capacity(k_d);
    for j in 0..k_d {
        let coeff: Vec<u64> = (0..n - t)
            .map(|l| field.exp_signed(-((j * l) as i64)).value())
            .collect();
        let row: Vec<u64> = (0..n)
            .map(|c| {
                let mut acc = 0;
                for (l, &co) in coeff.iter().enumerate() {
                    acc = field.add_raw(acc, field.mul_raw(co, h_s.get(l, c)));
                }
                acc
            })
            .collect();
        rows.push(row);
    }
    let b = Matrix::from_rows(field, &rows)?;
    // With n = q - 1 the duality pairs consecutive exponent ranges:
    // G_S = V_1^t and the data rows complete it as V_{t+1}^{t+k_d}.
    let g_s = vandermonde(field, n, 1, t)?;
    let g_d_prime = vandermonde(field, n, t + 1, t + k_d)?;
    assemble(field, g_d_prime, g_s, b, t, block - a + 1, t + 1)
}

/// Small-field scheme from the binary Reed-Muller code R(v, m): the files
/// sit on the degree-v rows, the secrecy rows form R(v-1, m), and each
/// file is recovered by summing one of its 2^(m-v) disjoint evaluation
/// subcubes, assigned round-robin to spread the load.
pub fn construct_rm(m: usize, v: usize) -> Result<SecureStorageCode> {
    if v == 0 || v >= m || m > 10 {
        return Err(Error::BadParameters(format!(
            "require 1 <= v < m <= 10, got v={v}, m={m}"
        )));
    }
    let (code, monomials) = reed_muller(m, v)?;
    let field = code.field().clone();
    let n = code.length();
    let k = code.dimension();
    let k_d = monomials.iter().filter(|mono| mono.len() == v).count();
    let k_s = k - k_d;
    let gen = code.generator();
    let g_s = gen.row_slice(0, k_s);
    let g_d = gen.row_slice(k_s, k);
    let subcube_count = 1usize << (m - v);
    let mut rows = Vec::with_capacity(k_d);
    for (i, mono) in monomials[k_s..].iter().enumerate() {
        let cubes = rm_recovery_subcubes(m, v, mono);
        let support = &cubes[i % subcube_count];
        let mut row = vec![0u64; n];
        for &p in support {
            row[p] = 1;
        }
        rows.push(row);
    }
    let b = Matrix::from_rows(&field, &rows)?;
    let t = (1usize << v) - 1;
    let code = SecureStorageCode::from_parts(
        field,
        g_d,
        g_s,
        b,
        t,
        1usize << (m - v),
        1usize << v,
    )?;
    assert!(
        code.recovery_identity_holds(),
        "subcube sums must extract exactly the degree-v coefficients"
    );
    Ok(code)
}

/// The 2^(m-v) pairwise disjoint recovery sets of the file carried by the
/// degree-v monomial `mono`: one subcube per assignment of the other
/// m - v variables.
pub fn rm_recovery_subcubes(m: usize, v: usize, mono: &[usize]) -> Vec<Vec<usize>> {
    let others: Vec<usize> = (0..m).filter(|var| !mono.contains(var)).collect();
    let n = 1usize << m;
    (0..1usize << (m - v))
        .map(|assign| {
            (0..n)
                .filter(|&p| {
                    others
                        .iter()
                        .enumerate()
                        .all(|(j, &var)| (p >> var) & 1 == (assign >> j) & 1)
                })
                .collect()
        })
        .collect()
}

/// Outcome of the seeded random code search.
#[derive(Debug, Clone)]
pub struct RandomSearchOutcome {
    pub code: SecureStorageCode,
    /// Number of parity-check samples drawn, including the accepted one.
    pub tries: u64,
}

/// Random coding search: samples parity checks H_S of the secrecy dual
/// until one yields full rank, a secrecy dual of distance > t, and a full
/// code of distance at least `d_target` for some k_d >= 1 (the largest
/// such k_d is kept). Row-reducing H_S to its systematic form exposes an
/// access structure with rows of weight at most k_s + 1.
///
/// The secrecy dimension k_s is the smallest value >= t that the Hamming
/// bound does not exclude; over large fields this is t itself, while small
/// fields require more randomness per encoding.
pub fn construct_random(
    field: &Field,
    n: usize,
    d_target: usize,
    t: usize,
    seed: u64,
    max_tries: u64,
) -> Result<RandomSearchOutcome> {
    if n == 0 || n > 24 {
        return Err(Error::BadParameters(format!(
            "require 1 <= n <= 24, got n={n}"
        )));
    }
    if d_target == 0 {
        return Err(Error::BadParameters("d_target must be at least 1".into()));
    }
    let q = field.modulus();
    let k_s = minimal_secrecy_dimension(q, n, t)
        .ok_or_else(|| Error::BadParameters(format!("no k_s <= n admits t = {t} over GF({q})")))?;
    // Singleton with k_d = 1: the full code has dimension k_s + 1, so its
    // distance is at most n - k_s. A larger target can never be met.
    if d_target > n - k_s {
        return Err(Error::SearchExhausted { tries: 0 });
    }
    let scan_states = (q as u128)
        .checked_pow((n - k_s) as u32)
        .unwrap_or(u128::MAX);
    if scan_states > crate::codes::DISTANCE_SCAN_BOUND {
        return Err(Error::TooLargeForExhaustive(format!(
            "q^(n - k_s) = {q}^{} exceeds the distance scan budget",
            n - k_s
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let rows_hs = n - k_s;
    for tries in 1..=max_tries {
        let data: Vec<Vec<u64>> = (0..rows_hs)
            .map(|_| (0..n).map(|_| rng.next_below(q)).collect())
            .collect();
        let h_s = Matrix::from_rows(field, &data).expect("sampled shape is consistent");
        let (red, pivots) = h_s.rref();
        // Full rank with leading pivots, so the reduced form is
        // [I | A] and its tail rows read off as (0 I B~).
        if pivots.len() != rows_hs || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            continue;
        }
        // Secrecy: the code whose parity check is G_S is the row span of
        // H_S; its distance must exceed t.
        let dual_s = LinearCode::new(red.clone())?;
        match dual_s.minimum_distance() {
            Ok(dist) if dist > t => {}
            Ok(_) => continue,
            Err(e) => return Err(e),
        }
        // Largest k_d whose full code (parity check: the top sampled rows)
        // still meets the distance target; distances shrink as rows are
        // dropped, so scan upward and keep the last success.
        let mut accepted: Option<(usize, usize)> = None;
        for k_d in 1..=rows_hs {
            let top = h_s.row_slice(0, rows_hs - k_d);
            let c_full = LinearCode::new(if top.rows() == 0 {
                Matrix::identity(field, n)
            } else {
                top.nullspace()
            })?;
            match c_full.minimum_distance() {
                Ok(dist) if dist >= d_target => accepted = Some((k_d, dist)),
                Ok(_) => break,
                Err(e) => return Err(e),
            }
        }
        let Some((k_d, d_actual)) = accepted else {
            continue;
        };
        let b = red.row_slice(rows_hs - k_d, rows_hs);
        let g_s = if k_s > 0 {
            h_s.nullspace()
        } else {
            Matrix::zeros(field, 0, n)
        };
        let top = h_s.row_slice(0, rows_hs - k_d);
        let c_gen = if top.rows() == 0 {
            Matrix::identity(field, n)
        } else {
            top.nullspace()
        };
        let Ok(g_d_prime) = complete_basis(&g_s, &c_gen, k_d) else {
            continue;
        };
        let r = (0..k_d).map(|i| weight(b.row(i))).max().unwrap_or(0);
        match assemble(field, g_d_prime, g_s, b, t, d_actual, r) {
            Ok(code) => return Ok(RandomSearchOutcome { code, tries }),
            Err(Error::SingularMatrix) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SearchExhausted { tries: max_tries })
}

/// Smallest secrecy dimension k_s >= t that the Hamming bound allows for a
/// secrecy dual of length n and distance t + 1.
fn minimal_secrecy_dimension(q: u64, n: usize, t: usize) -> Option<usize> {
    if t == 0 {
        return Some(0);
    }
    if t >= n {
        return None;
    }
    let radius = t / 2;
    let ball = hamming_ball(q, n, radius)?;
    (t..=n).find(|&k_s| {
        (q as u128)
            .checked_pow(k_s as u32)
            .is_some_and(|cap| cap >= ball)
    })
}

fn hamming_ball(q: u64, n: usize, radius: usize) -> Option<u128> {
    let mut total: u128 = 0;
    for i in 0..=radius {
        let mut term: u128 = binomial(n, i)?;
        for _ in 0..i {
            term = term.checked_mul((q - 1) as u128)?;
        }
        total = total.checked_add(term)?;
    }
    Some(total)
}

fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc.checked_mul((n - i) as u128)?;
        acc /= (i + 1) as u128;
    }
    Some(acc)
}

/// Greedily extends `base` with rows of `candidates` until `extra` extra
/// dimensions are gained.
fn complete_basis(base: &Matrix, candidates: &Matrix, extra: usize) -> Result<Matrix> {
    let mut acc = base.clone();
    let mut rank = acc.rank();
    let mut chosen: Vec<Vec<u64>> = Vec::with_capacity(extra);
    for r in 0..candidates.rows() {
        if chosen.len() == extra {
            break;
        }
        let grown = acc.vstack(&candidates.row_slice(r, r + 1))?;
        let new_rank = grown.rank();
        if new_rank > rank {
            chosen.push(candidates.row(r).to_vec());
            acc = grown;
            rank = new_rank;
        }
    }
    if chosen.len() < extra {
        return Err(Error::BadParameters(
            "candidate rows do not span enough extra dimensions".into(),
        ));
    }
    Matrix::from_rows(base.field(), &chosen)
}

/// Exact access complexity per the subset definition: for each file, the
/// smallest node set whose restricted generator columns span the file's
/// unit vector; the result is the maximum over files. Also returns one
/// minimum recovery set per file together with its minimality flag.
pub fn access_complexity(code: &SecureStorageCode, r_max: usize) -> Result<AccessComplexityReport> {
    if code.n > 20 || r_max > code.n {
        return Err(Error::BadParameters(format!(
            "exhaustive access search requires n <= 20 and r_max <= n, got n={}, r_max={r_max}",
            code.n
        )));
    }
    let g = code.stacked_generator();
    let dim = code.k_d + code.k_s;
    let mut per_file = Vec::with_capacity(code.k_d);
    for file in 0..code.k_d {
        let mut unit = vec![0u64; dim];
        unit[file] = 1;
        let mut found: Option<Vec<usize>> = None;
        'sizes: for size in 1..=r_max {
            for subset in combinations(code.n, size) {
                if g.restrict_columns(&subset).column_span_contains(&unit)? {
                    found = Some(subset);
                    break 'sizes;
                }
            }
        }
        let Some(set) = found else {
            return Err(Error::ExceedsRMax { file, r_max });
        };
        let mut minimal = true;
        for drop in 0..set.len() {
            let reduced: Vec<usize> = set
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != drop)
                .map(|(_, &v)| v)
                .collect();
            if g.restrict_columns(&reduced).column_span_contains(&unit)? {
                minimal = false;
            }
        }
        per_file.push(FileAccess {
            recovery_set: set,
            minimal,
        });
    }
    let r = per_file
        .iter()
        .map(|f| f.recovery_set.len())
        .max()
        .unwrap_or(0);
    Ok(AccessComplexityReport { r, per_file })
}

#[derive(Debug, Clone)]
pub struct FileAccess {
    pub recovery_set: Vec<usize>,
    pub minimal: bool,
}

#[derive(Debug, Clone)]
pub struct AccessComplexityReport {
    pub r: usize,
    pub per_file: Vec<FileAccess>,
}

/// Runs the full verification battery on a code: algebraic secrecy (dual
/// distance), the exact coalition oracle (skipped above budget), the
/// recovery identity, erasure tolerance, and the rate/balance bookkeeping.
pub fn verify(code: &SecureStorageCode) -> VerificationReport {
    let access_struct = code.access_structure();

    let secrecy_algebraic = match secrecy_dual_distance(code) {
        Ok(dist) => {
            if dist > code.t {
                Check::pass(format!("dual distance {dist} > t = {}", code.t))
            } else {
                Check::fail(format!("dual distance {dist} <= t = {}", code.t))
            }
        }
        Err(e) => Check::skipped(format!("dual distance scan unavailable: {e}")),
    };

    let secrecy_exhaustive = match sim::secrecy_exhaustive(code, code.t) {
        Ok(outcome) if outcome.passed => Check::pass(format!(
            "{} coalitions, {} encodings each",
            outcome.coalitions_tested, outcome.encodings_per_coalition
        )),
        Ok(outcome) => Check::fail(format!(
            "coalition {:?} distinguishes messages",
            outcome
                .witness
                .as_ref()
                .map(|w| w.coalition.clone())
                .unwrap_or_default()
        )),
        Err(Error::BudgetExceeded(msg)) => Check::skipped(msg),
        Err(e) => Check::skipped(format!("oracle unavailable: {e}")),
    };

    let row_weights = access_struct.row_weights();
    let access = if !code.recovery_identity_holds() {
        Check::fail("G * B^T differs from [I; 0]")
    } else if row_weights.iter().any(|&w| w > code.r) {
        Check::fail(format!(
            "an access row has weight {} > r = {}",
            row_weights.iter().max().unwrap(),
            code.r
        ))
    } else {
        Check::pass(format!(
            "G * B^T = [I; 0], max row weight {} <= r",
            row_weights.iter().max().unwrap_or(&0)
        ))
    };

    let erasure = match sim::erasure_check(code) {
        Ok(outcome) if outcome.passed => Check::pass(format!(
            "{} column subsets of size {} have full rank",
            outcome.subsets_tested,
            code.n + 1 - code.d
        )),
        Ok(outcome) => Check::fail(format!(
            "columns {:?} do not span the code",
            outcome.witness.unwrap_or_default()
        )),
        Err(Error::BudgetExceeded(msg)) => Check::skipped(msg),
        Err(e) => Check::skipped(format!("erasure scan unavailable: {e}")),
    };

    let rate = code.rate();
    let capacity = bounds::capacity(code.k_d, code.t);
    let load = sim::load_report(code);

    VerificationReport {
        q: code.field.modulus(),
        n: code.n,
        k_d: code.k_d,
        k_s: code.k_s,
        t: code.t,
        d: code.d,
        r: code.r,
        secrecy_algebraic,
        secrecy_exhaustive,
        access,
        erasure,
        recovery_roundtrip: None,
        rate,
        capacity,
        capacity_gap: capacity.sub(&rate),
        balanced: access_struct.is_balanced(),
        load_histogram: load.histogram,
        worst_gap: load.worst_gap,
    }
}

/// Minimum distance of the code whose parity check is G_S (the dual of the
/// secrecy code); the scheme withstands coalitions below this weight.
pub fn secrecy_dual_distance(code: &SecureStorageCode) -> Result<usize> {
    if code.k_s == 0 {
        // No secrecy rows: the dual is the whole space.
        return Ok(1);
    }
    LinearCode::new(code.g_s.nullspace())?.minimum_distance()
}
