use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::distance::{all_pairs_distances, masks_histogram, DistanceMatrix};
use super::MetricsError;
use crate::exact::{self, Rational};
use crate::graph::Graph;

/// Wiener, hyper-Wiener and Harary indices with per-vertex transmissions.
///
/// Pair sums run over unordered pairs, so `wiener = ΣD_i / 2`,
/// `hyper_wiener = Σ(D_i + DD_i) / 4` and `harary = ΣD̃_i / 2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexReport {
    pub wiener: u64,
    pub hyper_wiener: u64,
    #[serde(with = "exact::big_str")]
    pub harary: BigRational,
    /// Convenience approximation of `harary`.
    pub harary_float: f64,
    pub transmissions: Vec<u64>,
    pub squared_transmissions: Vec<u64>,
    #[serde(with = "exact::big_vec_str")]
    pub reciprocal_transmissions: Vec<BigRational>,
    pub connected: bool,
}

/// The three indices without transmissions, in fixed-width exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexTriple {
    pub wiener: u64,
    pub hyper_wiener: u64,
    #[serde(with = "exact::ratio_str")]
    pub harary: Rational,
}

fn reciprocal_sum(counts: &[u64]) -> BigRational {
    let mut lcm = BigInt::from(1);
    for (d, &c) in counts.iter().enumerate().skip(1) {
        if c > 0 {
            lcm = lcm.lcm(&BigInt::from(d));
        }
    }
    let mut numer = BigInt::zero();
    for (d, &c) in counts.iter().enumerate().skip(1) {
        if c > 0 {
            numer += BigInt::from(c) * (&lcm / BigInt::from(d));
        }
    }
    BigRational::new(numer, lcm)
}

/// `Σ c_d / d` in `i128`, or `None` on overflow.
fn reciprocal_sum_small(counts: &[u64]) -> Option<Rational> {
    let mut lcm: i128 = 1;
    for (d, &c) in counts.iter().enumerate().skip(1) {
        if c > 0 {
            let d = d as i128;
            lcm = lcm.checked_mul(d / lcm.gcd(&d))?;
        }
    }
    let mut numer: i128 = 0;
    for (d, &c) in counts.iter().enumerate().skip(1) {
        if c > 0 {
            numer = numer.checked_add((c as i128).checked_mul(lcm / d as i128)?)?;
        }
    }
    Some(Rational::new(numer, lcm))
}

/// W and WW of a connected graph, with H carried separately because only
/// H can overflow fixed-width arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialTriple {
    pub wiener: u64,
    pub hyper_wiener: u64,
    pub harary: Result<Rational, MetricsError>,
}

impl PartialTriple {
    pub fn into_triple(self) -> Result<IndexTriple, MetricsError> {
        Ok(IndexTriple {
            wiener: self.wiener,
            hyper_wiener: self.hyper_wiener,
            harary: self.harary?,
        })
    }
}

fn partial_from_histogram(hist: &[u64]) -> PartialTriple {
    let mut wiener = 0u64;
    let mut hyper = 0u64;
    for (d, &c) in hist.iter().enumerate().skip(1) {
        let d = d as u64;
        wiener += c * d;
        hyper += c * (d * (d + 1) / 2);
    }
    let harary = match reciprocal_sum_small(hist) {
        Some(h) => Ok(h),
        None => exact::narrow(&reciprocal_sum(hist)).ok_or(MetricsError::Overflow),
    };
    PartialTriple {
        wiener,
        hyper_wiener: hyper,
        harary,
    }
}

/// Like [`index_triple`], but a connected graph whose H does not fit still
/// yields W and WW.
pub fn partial_index_triple(g: &Graph) -> Result<PartialTriple, MetricsError> {
    if let Some(masks) = g.masks() {
        let hist = masks_histogram(&masks).ok_or(MetricsError::DisconnectedGraph)?;
        return Ok(partial_from_histogram(&hist));
    }
    let d = all_pairs_distances(g);
    let (hist, unreachable) = d.pair_histogram();
    if unreachable > 0 {
        return Err(MetricsError::DisconnectedGraph);
    }
    Ok(partial_from_histogram(&hist))
}

/// W, WW and H of a connected graph, without materializing transmissions.
pub fn index_triple(g: &Graph) -> Result<IndexTriple, MetricsError> {
    partial_index_triple(g)?.into_triple()
}

/// Full index report of a connected graph.
pub fn indices(g: &Graph) -> Result<IndexReport, MetricsError> {
    indices_from_distances(&all_pairs_distances(g))
}

pub fn indices_from_distances(d: &DistanceMatrix) -> Result<IndexReport, MetricsError> {
    if !d.is_connected() {
        return Err(MetricsError::DisconnectedGraph);
    }
    let n = d.order();
    let mut transmissions = Vec::with_capacity(n);
    let mut squared = Vec::with_capacity(n);
    let mut reciprocal = Vec::with_capacity(n);
    let mut counts = Vec::new();
    for i in 0..n {
        counts.clear();
        let (mut t, mut t2) = (0u64, 0u64);
        for &dij in d.row(i) {
            let dij = dij as u64;
            t += dij;
            t2 += dij * dij;
            if counts.len() <= dij as usize {
                counts.resize(dij as usize + 1, 0u64);
            }
            counts[dij as usize] += 1;
        }
        transmissions.push(t);
        squared.push(t2);
        reciprocal.push(reciprocal_sum(&counts));
    }
    let total: u64 = transmissions.iter().sum();
    let total_sq: u64 = squared.iter().sum();
    let (hist, _) = d.pair_histogram();
    let harary = reciprocal_sum(&hist);
    debug_assert_eq!(total % 2, 0);
    debug_assert_eq!((total + total_sq) % 4, 0);
    Ok(IndexReport {
        wiener: total / 2,
        hyper_wiener: (total + total_sq) / 4,
        harary_float: exact::big_to_f64(&harary),
        harary,
        transmissions,
        squared_transmissions: squared,
        reciprocal_transmissions: reciprocal,
        connected: true,
    })
}
