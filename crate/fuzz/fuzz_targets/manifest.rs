#![no_main]

use libfuzzer_sys::fuzz_target;
use specgame::io::Manifest;

fuzz_target!(|data: &[u8]| {
    if let Ok(m) = serde_json::from_slice::<Manifest>(data) {
        let json = serde_json::to_string(&m).unwrap();
        let _ = serde_json::from_str::<Manifest>(&json).unwrap();
    }
});
