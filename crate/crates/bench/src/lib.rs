//! Benchmark-only crate; see `benches/tables.rs`. Run with `cargo bench`.
