#![no_main]

use libfuzzer_sys::fuzz_target;
use musicmeta::validation::{parse_constant, parse_pattern_term};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_pattern_term(text);
        let _ = parse_constant(text);
    }
});
