//! Benchmark-only crate; see `benches/certifiers.rs`.
