//! Criterion benchmarks for `t3ech-core`; see `benches/`.
