//! Benchmarks for `mbaa-core` live in `benches/`.
