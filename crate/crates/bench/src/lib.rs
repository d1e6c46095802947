//! Benchmarks for the flipflat kernel live in `benches/`; run them with
//! `cargo bench -p flipflat-bench`.
