//! Criterion benchmarks for the core kernels; run them with
//! `cargo bench -p ncproj-bench`. The library itself is empty.
