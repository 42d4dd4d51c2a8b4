//! Criterion benchmarks for `rs-velocity-core`; see `benches/`.
