//! Step, trade and wealth tables read back by `analyze` and `report`.

#![no_main]

use libfuzzer_sys::fuzz_target;
use specgame::engine::{StepRecord, TradeRecord};
use specgame::io::{read_table_from, WealthRow};

fuzz_target!(|data: &[u8]| {
    let Some((&sel, body)) = data.split_first() else { return };
    match sel % 3 {
        0 => {
            let _ = read_table_from::<_, StepRecord>(body);
        }
        1 => {
            if let Ok(trades) = read_table_from::<_, TradeRecord>(body) {
                for t in &trades {
                    let _ = t.horizon();
                }
            }
        }
        _ => {
            let _ = read_table_from::<_, WealthRow>(body);
        }
    }
});
