//! Text formats: the `.awa` input format, HOA output and size statistics.

mod awa_format;
mod hoa;
mod stats;

pub use awa_format::{
    parse_awa, parse_awa_with, print_awa, print_awa_named, AwaDocument, ParseError, ParseOptions,
};
pub use hoa::{parse_hoa, print_hoa, HoaError};
pub use stats::{stats_json, Stats};
