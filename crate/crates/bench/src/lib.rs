// SPDX-License-Identifier: Apache-2.0

//! Criterion benchmarks for the exact searches live in `benches/`.
