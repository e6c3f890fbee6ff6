//! Benchmarks for the exfam kernels live in `benches/`.
