//! File formats and output rendering for the `tambara` command-line tool.

pub mod encode;
pub mod input;
pub mod output;
pub mod random;

use tambara_core::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const VERIFICATION_FAILED: u8 = 1;
    pub const INPUT_ERROR: u8 = 2;
    pub const RESOURCE_BOUND: u8 = 3;
}

/// Exit code for a core error.
pub fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::ResourceBound { .. } => exit::RESOURCE_BOUND,
        Error::IsoNotFound(_) | Error::WitnessFailed(_) => exit::VERIFICATION_FAILED,
        _ => exit::INPUT_ERROR,
    }
}
