//! Criterion benchmark harness host; the benchmarks live in benches/.
