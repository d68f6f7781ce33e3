//! Criterion benchmarks for `dqcalc`; see `benches/`.
