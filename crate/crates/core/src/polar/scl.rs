//! CRC-aided successive-cancellation list decoding.
//!
//! All list paths walk the code tree in lockstep; at every information leaf
//! each path forks on the bit decision and the best `L` survive by path
//! metric. The final list is filtered by the CRC and the best-metric passing
//! path wins; an empty filtered list is a regular decoding failure, not a
//! fault. Min-sum check-node updates and the standard penalty path metric
//! (add `|llr|` when the decision disagrees with the LLR sign) are used.

use std::cmp::Ordering;

use super::crc::crc_check;
use super::{Message, PolarCodeSpec};

/// Inputs are clamped here so that infinite "noiseless" LLRs stay finite
/// through the g-node sums.
const LLR_CLAMP: f64 = 1e30;

/// One surviving list path: its information word and final path metric
/// (lower is better).
#[derive(Debug, Clone)]
pub struct DecodedPath {
    pub info: Vec<u8>,
    pub metric: f64,
}

#[derive(Clone)]
struct Path {
    /// alpha[l]: input LLRs of the active tree node at level l (len 2^l).
    alpha: Vec<Vec<f64>>,
    /// out[l]: partial-sum output of the active node at level l (len 2^l).
    out: Vec<Vec<u8>>,
    /// left[l]: stashed output of the most recent left child at level l.
    left: Vec<Vec<u8>>,
    /// Leaf decisions in natural u-domain order.
    u: Vec<u8>,
    metric: f64,
}

impl Path {
    fn new(m: usize, n: usize) -> Self {
        Path {
            alpha: (0..m).map(|l| vec![0.0; 1 << l]).collect(),
            out: (0..m).map(|l| vec![0u8; 1 << l]).collect(),
            left: (0..m).map(|l| vec![0u8; 1 << l]).collect(),
            u: Vec::with_capacity(n),
            metric: 0.0,
        }
    }
}

#[inline]
fn f_minsum(a: f64, b: f64) -> f64 {
    let mag = a.abs().min(b.abs());
    if (a < 0.0) != (b < 0.0) {
        -mag
    } else {
        mag
    }
}

#[inline]
fn g_node(a: f64, b: f64, left_bit: u8) -> f64 {
    if left_bit == 0 {
        b + a
    } else {
        b - a
    }
}

struct Scl<'a> {
    channel: &'a [f64],
    spec: &'a PolarCodeSpec,
    list_size: usize,
    m: usize,
}

impl Scl<'_> {
    fn run(&self) -> Vec<Path> {
        let mut paths = vec![Path::new(self.m, self.spec.blocklength())];
        self.node(self.m, 0, &mut paths);
        paths
    }

    fn node(&self, level: usize, first_leaf: usize, paths: &mut Vec<Path>) {
        if level == 0 {
            self.leaf(first_leaf, paths);
            return;
        }
        let half = 1usize << (level - 1);

        for p in paths.iter_mut() {
            let (lo, hi) = p.alpha.split_at_mut(level);
            let src: &[f64] = if level == self.m {
                self.channel
            } else {
                &hi[0]
            };
            let dst = &mut lo[level - 1];
            for i in 0..half {
                dst[i] = f_minsum(src[i], src[i + half]);
            }
        }
        self.node(level - 1, first_leaf, paths);

        for p in paths.iter_mut() {
            let (left_out, _) = p.out.split_at(level);
            p.left[level - 1].copy_from_slice(&left_out[level - 1]);
            let (lo, hi) = p.alpha.split_at_mut(level);
            let src: &[f64] = if level == self.m {
                self.channel
            } else {
                &hi[0]
            };
            let dst = &mut lo[level - 1];
            for i in 0..half {
                dst[i] = g_node(src[i], src[i + half], p.left[level - 1][i]);
            }
        }
        self.node(level - 1, first_leaf + half, paths);

        if level < self.m {
            for p in paths.iter_mut() {
                let (child, parent) = p.out.split_at_mut(level);
                let child = &child[level - 1];
                let stash = &p.left[level - 1];
                let dst = &mut parent[0];
                for i in 0..half {
                    dst[i] = stash[i] ^ child[i];
                    dst[i + half] = child[i];
                }
            }
        }
    }

    fn leaf(&self, idx: usize, paths: &mut Vec<Path>) {
        if self.spec.is_frozen(idx) {
            for p in paths.iter_mut() {
                let l = p.alpha[0][0];
                if l < 0.0 {
                    p.metric -= l;
                }
                p.u.push(0);
                p.out[0][0] = 0;
            }
            return;
        }

        // Fork every path on the bit decision, then keep the best list_size
        // candidates. Ties break by (metric, parent index, bit) so the list
        // is deterministic.
        let mut cands: Vec<(usize, u8, f64)> = Vec::with_capacity(2 * paths.len());
        for (pi, p) in paths.iter().enumerate() {
            let l = p.alpha[0][0];
            let (m0, m1) = if l >= 0.0 {
                (p.metric, p.metric + l)
            } else {
                (p.metric - l, p.metric)
            };
            cands.push((pi, 0, m0));
            cands.push((pi, 1, m1));
        }
        if cands.len() > self.list_size {
            cands.sort_unstable_by(|a, b| {
                a.2.total_cmp(&b.2)
                    .then_with(|| a.0.cmp(&b.0))
                    .then_with(|| a.1.cmp(&b.1))
            });
            cands.truncate(self.list_size);
        }

        let mut remaining = vec![0u8; paths.len()];
        for &(pi, _, _) in &cands {
            remaining[pi] += 1;
        }
        let mut old: Vec<Option<Path>> = paths.drain(..).map(Some).collect();
        for (pi, bit, metric) in cands {
            let mut path = if remaining[pi] > 1 {
                remaining[pi] -= 1;
                old[pi].as_ref().expect("path present").clone()
            } else {
                old[pi].take().expect("path present")
            };
            path.metric = metric;
            path.u.push(bit);
            path.out[0][0] = bit;
            paths.push(path);
        }
    }
}

/// Run SCL with an explicit list width and return every surviving path
/// (information word + metric), sorted best-first.
pub fn scl_decode_paths(
    llrs: &[f64],
    spec: &PolarCodeSpec,
    list_size: usize,
) -> Vec<DecodedPath> {
    let n = spec.blocklength();
    assert_eq!(llrs.len(), n, "LLR length must equal the blocklength");
    assert!(list_size >= 1);
    let channel: Vec<f64> = llrs
        .iter()
        .map(|&l| {
            assert!(!l.is_nan(), "NaN LLR");
            l.clamp(-LLR_CLAMP, LLR_CLAMP)
        })
        .collect();

    let scl = Scl {
        channel: &channel,
        spec,
        list_size,
        m: n.trailing_zeros() as usize,
    };
    let mut paths = scl.run();
    paths.sort_by(|a, b| {
        a.metric
            .total_cmp(&b.metric)
            .then_with(|| a.u.cmp(&b.u))
    });
    paths
        .into_iter()
        .map(|p| DecodedPath {
            info: spec.info_positions().map(|i| p.u[i]).collect(),
            metric: p.metric,
        })
        .collect()
}

/// SCL decode with an explicit list width; `None` is a decoding failure
/// (no path passed the CRC).
pub fn scl_decode_list(
    llrs: &[f64],
    spec: &PolarCodeSpec,
    list_size: usize,
) -> Option<Message> {
    let paths = scl_decode_paths(llrs, spec, list_size);
    let k = spec.payload_len();
    paths
        .iter()
        .find(|p| crc_check(&p.info, spec.crc()))
        .map(|p| Message::from_bits(p.info[..k].to_vec()))
}

/// SCL decode at the spec's configured list width.
pub fn scl_decode(llrs: &[f64], spec: &PolarCodeSpec) -> Option<Message> {
    scl_decode_list(llrs, spec, spec.list_size())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar::{crc_append, polar_encode, CrcPoly};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, Normal};

    /// Textbook recursive SC decoder used as an independent oracle for the
    /// L = 1 path. Same min-sum f/g, structurally different implementation.
    fn sc_oracle(llrs: &[f64], spec: &PolarCodeSpec) -> Vec<u8> {
        fn rec(llrs: &[f64], start: usize, spec: &PolarCodeSpec, u: &mut Vec<u8>) -> Vec<u8> {
            if llrs.len() == 1 {
                let d = if spec.is_frozen(start) {
                    0
                } else {
                    u8::from(llrs[0] < 0.0)
                };
                u.push(d);
                return vec![d];
            }
            let half = llrs.len() / 2;
            let f: Vec<f64> = (0..half)
                .map(|i| f_minsum(llrs[i], llrs[i + half]))
                .collect();
            let left = rec(&f, start, spec, u);
            let g: Vec<f64> = (0..half)
                .map(|i| g_node(llrs[i], llrs[i + half], left[i]))
                .collect();
            let right = rec(&g, start + half, spec, u);
            let mut out: Vec<u8> = left.iter().zip(&right).map(|(a, b)| a ^ b).collect();
            out.extend_from_slice(&right);
            out
        }
        let mut u = Vec::with_capacity(spec.blocklength());
        rec(llrs, 0, spec, &mut u);
        spec.info_positions().map(|i| u[i]).collect()
    }

    fn spec64() -> PolarCodeSpec {
        // n1 = 64, k = 20, CRC-11; an arbitrary deterministic frozen set is
        // fine for decoder-correctness tests.
        let crc = CrcPoly::default_for_len(11).unwrap();
        let frozen: Vec<usize> = (0..33).collect();
        PolarCodeSpec::new(64, 20, crc, frozen, 8).unwrap()
    }

    fn noiseless_llrs(cw: &crate::polar::Codeword) -> Vec<f64> {
        cw.coded_bits
            .iter()
            .map(|&b| if b == 0 { f64::INFINITY } else { f64::NEG_INFINITY })
            .collect()
    }

    #[test]
    fn noiseless_roundtrip() {
        let spec = spec64();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let payload: Vec<u8> = (0..20).map(|_| rng.random_range(0..2u8)).collect();
            let info = crc_append(&payload, spec.crc());
            let cw = polar_encode(&info, &spec, 1.0);
            let got = scl_decode(&noiseless_llrs(&cw), &spec).expect("decodes");
            assert_eq!(got.bits(), payload.as_slice());
        }
    }

    #[test]
    fn list_one_matches_sc_oracle_on_noisy_trials() {
        let spec = spec64();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let noise = Normal::new(0.0, 0.9).unwrap();
        for _ in 0..1000 {
            let payload: Vec<u8> = (0..20).map(|_| rng.random_range(0..2u8)).collect();
            let info = crc_append(&payload, spec.crc());
            let cw = polar_encode(&info, &spec, 1.0);
            let llrs: Vec<f64> = cw
                .bpsk
                .iter()
                .map(|&x| 2.0 * (x + noise.sample(&mut rng)) / 0.81)
                .collect();
            let scl = scl_decode_paths(&llrs, &spec, 1);
            assert_eq!(scl.len(), 1);
            assert_eq!(scl[0].info, sc_oracle(&llrs, &spec));
        }
    }

    #[test]
    fn all_zero_llrs_yield_empty() {
        let spec = spec64();
        assert_eq!(scl_decode(&vec![0.0; 64], &spec), None);
    }

    #[test]
    fn larger_lists_do_not_lose_frames() {
        // Same noise realizations for every list width; the comparison only
        // needs slack for the rare trials where a wider list reranks paths.
        let spec = spec64();
        let noise = Normal::new(0.0, 0.85).unwrap();
        let trials = 400;
        let mut failures = [0u32; 3]; // L = 1, 2, 4
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..trials {
            let payload: Vec<u8> = (0..20).map(|_| rng.random_range(0..2u8)).collect();
            let info = crc_append(&payload, spec.crc());
            let cw = polar_encode(&info, &spec, 1.0);
            let llrs: Vec<f64> = cw
                .bpsk
                .iter()
                .map(|&x| 2.0 * (x + noise.sample(&mut rng)) / (0.85 * 0.85))
                .collect();
            for (li, list) in [1usize, 2, 4].into_iter().enumerate() {
                let ok = scl_decode_list(&llrs, &spec, list)
                    .is_some_and(|m| m.bits() == payload.as_slice());
                if !ok {
                    failures[li] += 1;
                }
            }
        }
        assert!(failures[0] > 0, "operating point should show errors at L=1");
        let slack = 3.0 * (failures[0] as f64).sqrt();
        assert!(
            (failures[1] as f64) <= failures[0] as f64 + slack,
            "FER(L=2) {} vs FER(L=1) {}",
            failures[1],
            failures[0]
        );
        assert!(
            (failures[2] as f64) <= failures[1] as f64 + slack,
            "FER(L=4) {} vs FER(L=2) {}",
            failures[2],
            failures[1]
        );
    }

    #[test]
    fn decode_paths_returns_sorted_unique_width() {
        let spec = spec64();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let llrs: Vec<f64> = (0..64).map(|_| rng.random_range(-2.0..2.0)).collect();
        let paths = scl_decode_paths(&llrs, &spec, 8);
        assert_eq!(paths.len(), 8);
        for w in paths.windows(2) {
            assert!(w[0].metric <= w[1].metric);
        }
        for p in &paths {
            assert_eq!(p.info.len(), spec.info_len());
        }
    }
}
