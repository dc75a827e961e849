//! Empty library; this crate exists for its Criterion benchmarks.
