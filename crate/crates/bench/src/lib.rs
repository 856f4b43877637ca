//! Criterion benchmarks for framing-census; see `benches/census.rs`.
