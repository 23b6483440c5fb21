//! Support library for the `abtess` command-line tool: matrix file IO,
//! image encoding with the PSNR metric and watermark pipeline, and the
//! Toeplitz benchmark harness.

pub mod bench;
pub mod imaging;
pub mod matfile;
