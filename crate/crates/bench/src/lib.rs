//! Benchmark harness crate; see benches/hotpaths.rs.
