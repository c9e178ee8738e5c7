//! Game configs in JSON and TOML. Anything that parses and validates must
//! survive a JSON round trip unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;
use specgame::io::{parse_document, DocFormat};
use specgame::GameConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for format in [DocFormat::Json, DocFormat::Toml] {
        let Ok(config) = parse_document::<GameConfig>(text, format) else { continue };
        if config.validate().is_err() {
            continue;
        }
        let json = serde_json::to_string(&config).unwrap();
        let back: GameConfig = parse_document(&json, DocFormat::Json).unwrap();
        assert_eq!(back, config);
    }
});
