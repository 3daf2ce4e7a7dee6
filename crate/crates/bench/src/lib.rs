//! Criterion benchmarks for `qsw-core`; see `benches/`.
