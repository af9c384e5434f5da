//! Fixed inputs shared by the benchmarks in `benches/`.

use symdisc_core::rng::replica_rng;
use symdisc_core::symmat::goe_sample;
use symdisc_core::SymmetricMatrix;

/// `count` GOE(n) matrices from a fixed stream, so runs compare like with like.
pub fn goe_fixture(n: usize, count: usize) -> Vec<SymmetricMatrix> {
    let mut rng = replica_rng(0xBE7C, n as u64);
    (0..count).map(|_| goe_sample(n, &mut rng)).collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn fixture_is_deterministic() {
        assert_eq!(super::goe_fixture(5, 3), super::goe_fixture(5, 3));
    }
}
