#![no_main]

use libfuzzer_sys::fuzz_target;
use specgame::experiments::SweepSpec;
use specgame::io::{parse_document, DocFormat};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for format in [DocFormat::Json, DocFormat::Toml] {
        if let Ok(spec) = parse_document::<SweepSpec>(text, format) {
            // Validation expands the axes, which must not panic for any input.
            let _ = spec.validate();
        }
    }
});
