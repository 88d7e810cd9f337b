//! Deterministic inputs shared by the benchmarks.

use ordlen::{FgModule, FinitePoset, ModuleComplex, Ordinal, RingContext, RingMatrix};

/// Every ordinal below `ω^(deg+1)` with coefficients up to `max_coeff`.
pub fn ordinals(deg: u32, max_coeff: u64) -> Vec<Ordinal> {
    let base = max_coeff + 1;
    let count = base.pow(deg + 1);
    (0..count)
        .map(|mut k| {
            let coeffs: Vec<u64> = (0..=deg)
                .map(|_| {
                    let c = k % base;
                    k /= base;
                    c
                })
                .collect();
            Ordinal::from_coefficients(&coeffs)
        })
        .collect()
}

/// The Boolean lattice on `n` atoms, `2^n` elements.
pub fn boolean_lattice(n: u32) -> FinitePoset {
    FinitePoset::from_order_fn(1 << n, |a, b| a & b == a)
}

/// An `n × n` integer matrix with entries from a fixed linear congruence,
/// small enough to keep Smith form coefficients bounded.
pub fn integer_matrix(n: usize) -> RingMatrix {
    let z = RingContext::Integers;
    let mut x: i64 = 7;
    let values: Vec<i64> = (0..n * n)
        .map(|_| {
            x = (x * 1_103_515_245 + 12_345) % 2_147_483_648;
            x % 19 - 9
        })
        .collect();
    RingMatrix::from_i64(z, n, n, &values)
}

/// `Z/p^k ⊕ …` with the given exponents, over `Z`.
pub fn p_group(p: i64, exponents: &[u32]) -> FgModule {
    let z = RingContext::Integers;
    let factors: Vec<_> = exponents.iter().map(|&e| z.from_i64(p.pow(e))).collect();
    FgModule::from_parts(z, 0, &factors)
}

/// The exact complex `0 → Z → Z² → Z → 0` of free modules repeated
/// `copies` times as a direct sum.
pub fn koszul_like(copies: usize) -> ModuleComplex {
    let z = RingContext::Integers;
    let block = |m: &RingMatrix| (1..copies).fold(m.clone(), |acc, _| acc.direct_sum(m));
    let d2 = block(&RingMatrix::from_i64(z, 2, 1, &[1, -1]));
    let d1 = block(&RingMatrix::from_i64(z, 1, 2, &[1, 1]));
    ModuleComplex::new(
        vec![FgModule::free(z, copies), FgModule::free(z, 2 * copies), FgModule::free(z, copies)],
        vec![d2, d1],
    )
    .expect("well-defined maps")
}
