//! Sample CSV ingestion, as used by `specgame fit`.

#![no_main]

use libfuzzer_sys::fuzz_target;
use specgame::io::{parse_samples, Column};

fuzz_target!(|data: &[u8]| {
    let Some((&sel, body)) = data.split_first() else { return };
    let column = if sel & 0x80 == 0 { Column::Index(usize::from(sel & 3)) } else { Column::Name("wealth".into()) };
    if let Ok(samples) = parse_samples(body, &column) {
        assert!(!samples.is_empty());
        assert!(samples.iter().all(|x| x.is_finite()));
    }
});
