//! Support code for the `cliffk` binary.

pub mod seqfile;
