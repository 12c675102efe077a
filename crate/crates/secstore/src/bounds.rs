//! Capacity, finite-length converse bounds with pluggable classical
//! bounds, and the asymptotic rate curves (random-coding lower envelope
//! against the binary linear-programming upper envelope).

use std::fmt;

use crate::error::{Error, Result};

/// Exact reduced fraction used for rates and capacity gaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let sign = if (num < 0) ^ (den < 0) { -1 } else { 1 };
        let (n, d) = (num.unsigned_abs(), den.unsigned_abs());
        let g = gcd(n.max(1), d);
        Rational {
            num: sign * (n / g) as i64,
            den: (d / g) as i64,
        }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn sub(&self, other: &Rational) -> Rational {
        Rational::new(
            self.num * other.den - other.num * self.den,
            self.den * other.den,
        )
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// q-ary entropy h_q(x) = -x log_q x - (1-x) log_q(1-x) + x log_q(q-1),
/// with h_q(0) = 0 and h_q(1) = log_q(q-1).
pub fn entropy_q(q: u64, x: f64) -> Result<f64> {
    if q < 2 {
        return Err(Error::DomainError(format!("entropy needs q >= 2, got {q}")));
    }
    if !(0.0..=1.0).contains(&x) || x.is_nan() {
        return Err(Error::DomainError(format!("entropy argument {x} outside [0, 1]")));
    }
    let lq = (q as f64).ln();
    let mut h = 0.0;
    if x > 0.0 {
        h -= x * x.ln() / lq;
        h += x * ((q - 1) as f64).ln() / lq;
    }
    if x < 1.0 {
        h -= (1.0 - x) * (1.0 - x).ln() / lq;
    }
    Ok(h)
}

/// Capacity of an ideal scheme with minimum access: k_d / (k_d + t).
pub fn capacity(k_d: usize, t: usize) -> Rational {
    Rational::new(k_d as i64, (k_d + t) as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Singleton,
    Hamming,
    Plotkin,
}

impl BoundKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "singleton" => Ok(BoundKind::Singleton),
            "hamming" => Ok(BoundKind::Hamming),
            "plotkin" => Ok(BoundKind::Plotkin),
            other => Err(Error::BadParameters(format!("unknown bound kind '{other}'"))),
        }
    }
}

/// Upper bound on the distance of any t-collusion secure system:
/// the chosen classical bound evaluated on a q-ary code of length n - t
/// and size q^k_d.
pub fn distance_upper(q: u64, n: usize, t: usize, k_d: usize, kind: BoundKind) -> Result<usize> {
    if q < 2 || k_d == 0 || t >= n || n - t < k_d {
        return Err(Error::BadParameters(format!(
            "require q >= 2, k_d >= 1 and n - t >= k_d, got q={q}, n={n}, t={t}, k_d={k_d}"
        )));
    }
    let len = n - t;
    match kind {
        BoundKind::Singleton => Ok(len - k_d + 1),
        BoundKind::Hamming => {
            // Largest d with V_q(len, floor((d-1)/2)) <= q^(len - k_d).
            let cap = checked_pow(q, len - k_d)?;
            let mut best = 1;
            for d in 1..=len {
                let ball = hamming_ball(q, len, (d - 1) / 2)?;
                if ball <= cap {
                    best = d;
                } else {
                    break;
                }
            }
            Ok(best)
        }
        BoundKind::Plotkin => {
            // M <= d / (d - (1 - 1/q) len) for d above the Plotkin radius
            // rearranges to d <= (q-1) len M / (q (M - 1)).
            let m = checked_pow(q, k_d)?;
            let numer = (q - 1) as u128 * len as u128 * m;
            let denom = q as u128 * (m - 1);
            Ok(((numer / denom) as usize).min(len))
        }
    }
}

/// Upper bound on the storage dimension: floor(log_q M*) for the chosen
/// size bound M* on a q-ary code of length n - t and distance d.
pub fn dimension_upper(q: u64, n: usize, t: usize, d: usize, kind: BoundKind) -> Result<usize> {
    if q < 2 || t >= n || d == 0 || d > n - t {
        return Err(Error::BadParameters(format!(
            "require q >= 2, t < n and 1 <= d <= n - t, got q={q}, n={n}, t={t}, d={d}"
        )));
    }
    let len = n - t;
    match kind {
        BoundKind::Singleton => Ok(len - d + 1),
        BoundKind::Hamming => {
            // Largest k with V_q(len, floor((d-1)/2)) <= q^(len - k).
            let ball = hamming_ball(q, len, (d - 1) / 2)?;
            let mut k = 0;
            while k < len {
                let cap = checked_pow(q, len - (k + 1))?;
                if ball <= cap {
                    k += 1;
                } else {
                    break;
                }
            }
            Ok(k)
        }
        BoundKind::Plotkin => {
            let qd = q as u128 * d as u128;
            let radius = (q - 1) as u128 * len as u128;
            if qd <= radius {
                return Err(Error::BadParameters(
                    "the Plotkin size bound applies only for d > (1 - 1/q)(n - t)".into(),
                ));
            }
            let m_star = qd / (qd - radius);
            let mut k = 0;
            let mut power: u128 = 1;
            while power.saturating_mul(q as u128) <= m_star {
                power *= q as u128;
                k += 1;
            }
            Ok(k)
        }
    }
}

/// Best known distance of a binary length-13 code with 2^6 codewords,
/// from the standard code tables; tighter than any closed-form bound here.
pub const TABLE_BEST_D2_LEN13_K6: usize = 4;
/// Best known distance of a binary length-13 code with 2^8 codewords.
pub const TABLE_BEST_D2_LEN13_K8: usize = 4;

fn checked_pow(q: u64, e: usize) -> Result<u128> {
    (q as u128)
        .checked_pow(e as u32)
        .ok_or_else(|| Error::BadParameters(format!("q^{e} overflows exact arithmetic")))
}

fn hamming_ball(q: u64, n: usize, radius: usize) -> Result<u128> {
    let mut total: u128 = 0;
    for i in 0..=radius.min(n) {
        let mut term = binomial(n, i)
            .ok_or_else(|| Error::BadParameters("binomial overflow".into()))?;
        for _ in 0..i {
            term = term
                .checked_mul((q - 1) as u128)
                .ok_or_else(|| Error::BadParameters("ball volume overflow".into()))?;
        }
        total = total
            .checked_add(term)
            .ok_or_else(|| Error::BadParameters("ball volume overflow".into()))?;
    }
    Ok(total)
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

/// Asymptotic random-coding point: achievable rate and the access
/// complexity coefficient (access complexity grows like n times the
/// coefficient).
#[derive(Debug, Clone, Copy)]
pub struct RandomCodingPoint {
    pub rate: f64,
    pub access_coefficient: f64,
}

/// Random-coding achievable rate max(0, 1 - h_q(delta) - h_q(tau)).
pub fn random_coding_rate(q: u64, tau: f64, delta: f64) -> Result<RandomCodingPoint> {
    let h_tau = entropy_q(q, tau)?;
    let h_delta = entropy_q(q, delta)?;
    Ok(RandomCodingPoint {
        rate: (1.0 - h_delta - h_tau).max(0.0),
        access_coefficient: h_tau,
    })
}

/// Binary linear-programming upper envelope
/// (1 - tau) h_2(1/2 - sqrt(x (1 - x))) with x = delta / (1 - tau).
pub fn mrrw_upper_rate(tau: f64, delta: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&tau) {
        return Err(Error::DomainError(format!("tau = {tau} outside [0, 1)")));
    }
    if delta < 0.0 || delta > (1.0 - tau) / 2.0 {
        return Err(Error::DomainError(format!(
            "delta = {delta} outside [0, (1 - tau)/2]"
        )));
    }
    let x = delta / (1.0 - tau);
    let arg = 0.5 - (x * (1.0 - x)).sqrt();
    Ok((1.0 - tau) * entropy_q(2, arg.clamp(0.0, 0.5))?)
}

/// Inverse of the binary entropy on [0, 1/2], by bisection to 1e-12.
pub fn binary_entropy_inverse(y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::DomainError(format!("h2 inverse argument {y} outside [0, 1]")));
    }
    let mut lo = 0.0f64;
    let mut hi = 0.5f64;
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if entropy_q(2, mid)? < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy)]
pub struct CurveSample {
    pub delta: f64,
    pub rate_lower: f64,
    /// Present only for q = 2, where the upper envelope is available.
    pub rate_upper: Option<f64>,
}

/// The four analytic endpoints of the rate plot: the upper curve meets the
/// axes at A and C, the lower one at B and D.
#[derive(Debug, Clone, Copy)]
pub struct CurveEndpoints {
    pub a: (f64, f64),
    pub b: (f64, f64),
    pub c: (f64, f64),
    pub d: (f64, f64),
}

#[derive(Debug, Clone)]
pub struct BoundCurve {
    pub q: u64,
    pub tau: f64,
    pub samples: Vec<CurveSample>,
    pub endpoints: Option<CurveEndpoints>,
}

/// Samples both rate envelopes on a uniform grid over [0, (1 - tau)/2].
pub fn sample_curves(q: u64, tau: f64, steps: usize) -> Result<BoundCurve> {
    if steps < 2 {
        return Err(Error::BadParameters("need at least 2 grid points".into()));
    }
    if !(0.0..1.0).contains(&tau) {
        return Err(Error::DomainError(format!("tau = {tau} outside [0, 1)")));
    }
    let delta_max = (1.0 - tau) / 2.0;
    let mut samples = Vec::with_capacity(steps);
    for i in 0..steps {
        let delta = delta_max * i as f64 / (steps - 1) as f64;
        let lower = random_coding_rate(q, tau, delta)?.rate;
        let upper = if q == 2 {
            Some(mrrw_upper_rate(tau, delta)?)
        } else {
            None
        };
        samples.push(CurveSample {
            delta,
            rate_lower: lower,
            rate_upper: upper,
        });
    }
    let endpoints = if q == 2 {
        let h_tau = entropy_q(2, tau)?;
        Some(CurveEndpoints {
            a: (0.0, 1.0 - tau),
            b: (0.0, 1.0 - h_tau),
            c: (delta_max, 0.0),
            d: (binary_entropy_inverse(1.0 - h_tau)?, 0.0),
        })
    } else {
        None
    };
    Ok(BoundCurve {
        q,
        tau,
        samples,
        endpoints,
    })
}
