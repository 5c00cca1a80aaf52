//! Error type shared across the crate.

use std::fmt;
use std::io;

#[derive(Debug)]
pub enum AntidictError {
    /// A non-whitespace input byte is not part of the alphabet.
    ByteOutsideAlphabet { position: usize, byte: u8 },
    /// Nothing remained after filtering the input stream.
    EmptyInput,
    /// FASTA input did not start with a `>` header line, or a record was empty.
    MalformedFasta(String),
    /// Requested block count is out of range for the data.
    BadBlockCount { requested: usize, data_len: usize },
    /// A tuple reference points outside its block.
    IndexOutOfRange { i1: usize, i2: usize, len: usize },
    /// A tuple reference was materialized against the wrong block.
    BlockIdMismatch { expected: u32, got: u32 },
    /// Alphabet construction failed (duplicate letters, or separator in letters).
    BadAlphabet(String),
    /// A weighted ancestor query asked for a depth deeper than the node.
    WeightOutOfRange { target: u32, node_depth: u32 },
    /// Underlying I/O failure while reading a block.
    Io(io::Error),
}

impl fmt::Display for AntidictError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AntidictError::ByteOutsideAlphabet { position, byte } => {
                write!(f, "byte 0x{byte:02x} at position {position} is not in the alphabet")
            }
            AntidictError::EmptyInput => write!(f, "input is empty after filtering"),
            AntidictError::MalformedFasta(msg) => write!(f, "malformed FASTA: {msg}"),
            AntidictError::BadBlockCount { requested, data_len } => {
                write!(f, "cannot split {data_len} bytes into {requested} blocks")
            }
            AntidictError::IndexOutOfRange { i1, i2, len } => {
                write!(f, "tuple range [{i1}, {i2}] out of range for block of length {len}")
            }
            AntidictError::BlockIdMismatch { expected, got } => {
                write!(f, "tuple refers to block {expected} but block {got} was supplied")
            }
            AntidictError::BadAlphabet(msg) => write!(f, "bad alphabet: {msg}"),
            AntidictError::WeightOutOfRange { target, node_depth } => {
                write!(f, "weighted ancestor target {target} exceeds node depth {node_depth}")
            }
            AntidictError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for AntidictError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            AntidictError::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<io::Error> for AntidictError {
    fn from(e: io::Error) -> Self {
        AntidictError::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, AntidictError>;
