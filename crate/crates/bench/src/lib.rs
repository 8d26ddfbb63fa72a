//! Criterion benchmarks for the spinlie kernels live in `benches/`.
