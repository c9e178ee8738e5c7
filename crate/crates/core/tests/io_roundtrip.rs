use specgame::engine::{run_with, CollectingRecorder, StepRecord, TradeRecord};
use specgame::io::{
    parse_document, read_document, read_table, read_wealths, write_table, write_wealths, CsvRecorder, DocFormat,
    IoError, Manifest, ManifestKind,
};
use specgame::GameConfig;

fn cfg() -> GameConfig {
    GameConfig { n_players: 40, n_steps: 800, memory: 3, seed: 4, ..GameConfig::default() }
}

#[test]
fn streamed_logs_match_collected_records() {
    let dir = tempfile::tempdir().unwrap();
    let (steps_path, trades_path) = (dir.path().join("steps.csv"), dir.path().join("trades.csv"));
    let mut csv = CsvRecorder::create(&steps_path, &trades_path).unwrap();
    let mut collect = CollectingRecorder::default();
    run_with(&cfg(), &mut (&mut csv, &mut collect)).unwrap();
    csv.finish().unwrap();

    let steps: Vec<StepRecord> = read_table(&steps_path).unwrap();
    let trades: Vec<TradeRecord> = read_table(&trades_path).unwrap();
    assert_eq!(steps, collect.steps);
    assert_eq!(trades, collect.trades);

    let header = std::fs::read_to_string(&steps_path).unwrap();
    assert!(header.starts_with("t,delta_p,price,h,cognitive_price,active_hold,passive_hold,buy,sell,"));
    let header = std::fs::read_to_string(&trades_path).unwrap();
    assert!(header.starts_with(
        "player_id,direction,open_time,close_time,quantity,strategy_gain,wealth_delta,caused_bankruptcy\n"
    ));
}

#[test]
fn logs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let mut bytes = Vec::new();
    for k in 0..2 {
        let s = dir.path().join(format!("s{k}.csv"));
        let t = dir.path().join(format!("t{k}.csv"));
        let mut rec = CsvRecorder::create(&s, &t).unwrap();
        run_with(&cfg(), &mut rec).unwrap();
        rec.finish().unwrap();
        bytes.push((std::fs::read(s).unwrap(), std::fs::read(t).unwrap()));
    }
    assert_eq!(bytes[0], bytes[1]);
}

#[test]
fn wealth_and_tables_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("wealth.csv");
    write_wealths(&p, &[10, 20, 3]).unwrap();
    assert_eq!(read_wealths(&p).unwrap(), vec![10, 20, 3]);
    assert_eq!(std::fs::read_to_string(&p).unwrap(), "player_id,wealth\n0,10\n1,20\n2,3\n");

    #[derive(Debug, PartialEq, serde::Serialize, serde::Deserialize)]
    struct Row {
        k: u32,
        x: f64,
    }
    let rows = vec![Row { k: 1, x: 0.5 }, Row { k: 2, x: -1e-300 }, Row { k: 3, x: 0.1 + 0.2 }];
    let q = dir.path().join("rows.csv");
    write_table(&q, &rows).unwrap();
    assert_eq!(read_table::<Row>(&q).unwrap(), rows);
}

#[test]
fn configs_parse_from_json_and_toml() {
    let json: GameConfig = parse_document(r#"{"memory": 7, "board_lot": 15}"#, DocFormat::Json).unwrap();
    let toml: GameConfig = parse_document("memory = 7\nboard_lot = 15\n", DocFormat::Toml).unwrap();
    assert_eq!(json, toml);
    assert_eq!(json.memory, 7);
    assert_eq!(json.n_players, 1000);
    assert!(parse_document::<GameConfig>("memroy = 7", DocFormat::Toml).is_err());

    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("c.toml");
    std::fs::write(&p, "mode = \"random_entry\"\n").unwrap();
    let c: GameConfig = read_document(&p).unwrap();
    assert_eq!(c.mode, specgame::Mode::RandomEntry);
    let bad = dir.path().join("c.json");
    std::fs::write(&bad, "{").unwrap();
    assert!(matches!(read_document::<GameConfig>(&bad), Err(IoError::Json { .. })));
}

#[test]
fn manifest_round_trip_and_missing() {
    let dir = tempfile::tempdir().unwrap();
    assert!(matches!(Manifest::read(dir.path()), Err(IoError::MissingManifest(_))));
    let mut m = Manifest::new(ManifestKind::Run);
    m.config = Some(cfg());
    m.files = vec!["steps.csv".into()];
    m.write(dir.path()).unwrap();
    let back = Manifest::read(dir.path()).unwrap();
    assert_eq!(back, m);
    assert!(back.prng.contains("ChaCha8"));
}
