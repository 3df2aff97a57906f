//! Library side of the `skmap` binary: TOML job loading and the
//! line-oriented machine output format, exposed for integration tests and
//! for embedding.

pub mod job;
pub mod machine;
