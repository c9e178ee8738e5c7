use serde::{Deserialize, Serialize};

use super::EngineError;

/// How players obtain the history pattern and their real decisions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// The game as specified: endogenous history, strategy-driven trading.
    #[default]
    Standard,
    /// Players read a common i.i.d. uniform quinary history instead of the
    /// one generated by the price. Prices and cognitive prices are still
    /// endogenous.
    ExogenousHistory,
    /// Flat players open with probability `random_entry_prob` in a uniform
    /// direction, holders close with the same probability. No strategy
    /// lookup happens.
    RandomEntry,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Standard => "standard",
            Mode::ExogenousHistory => "exogenous_history",
            Mode::RandomEntry => "random_entry",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "standard" => Ok(Mode::Standard),
            "exogenous" | "exogenous_history" => Ok(Mode::ExogenousHistory),
            "random" | "random_entry" => Ok(Mode::RandomEntry),
            other => Err(format!(
                "unknown mode {other:?} (expected standard, exogenous or random_entry)"
            )),
        }
    }
}

/// Every parameter of a game. Defaults are the canonical setting
/// N=1000, S=2, M=5, B=9, C=3, T=50,000, p(0)=100.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GameConfig {
    pub n_players: usize,
    pub n_strategies: usize,
    pub memory: u32,
    pub board_lot: i64,
    pub cognitive_threshold: f64,
    pub n_steps: u64,
    pub initial_price: f64,
    pub seed: u64,
    pub mode: Mode,
    pub random_entry_prob: f64,
}

impl Default for GameConfig {
    fn default() -> Self {
        GameConfig {
            n_players: 1000,
            n_strategies: 2,
            memory: 5,
            board_lot: 9,
            cognitive_threshold: 3.0,
            n_steps: 50_000,
            initial_price: 100.0,
            seed: 1,
            mode: Mode::Standard,
            random_entry_prob: 0.5,
        }
    }
}

/// Largest memory whose pattern count 5^M fits in a `u64` index.
pub const MAX_MEMORY: u32 = 27;

impl GameConfig {
    pub fn validate(&self) -> Result<(), EngineError> {
        let invalid = |field: &'static str, reason: String| EngineError::InvalidConfig { field, reason };
        if self.n_players == 0 {
            return Err(invalid("n_players", "must be at least 1".into()));
        }
        if self.n_strategies == 0 {
            return Err(invalid("n_strategies", "must be at least 1".into()));
        }
        if self.memory == 0 || self.memory > MAX_MEMORY {
            return Err(invalid(
                "memory",
                format!("must be in 1..={MAX_MEMORY}, got {}", self.memory),
            ));
        }
        if self.board_lot < 1 {
            return Err(invalid("board_lot", format!("must be at least 1, got {}", self.board_lot)));
        }
        if !(self.cognitive_threshold.is_finite() && self.cognitive_threshold > 0.0) {
            return Err(invalid(
                "cognitive_threshold",
                format!("must be a positive finite number, got {}", self.cognitive_threshold),
            ));
        }
        if self.n_steps == 0 {
            return Err(invalid("n_steps", "must be at least 1".into()));
        }
        if !self.initial_price.is_finite() {
            return Err(invalid("initial_price", format!("must be finite, got {}", self.initial_price)));
        }
        if !(0.0..=1.0).contains(&self.random_entry_prob) {
            return Err(invalid(
                "random_entry_prob",
                format!("must be in [0, 1], got {}", self.random_entry_prob),
            ));
        }
        Ok(())
    }

    /// Number of distinct length-M quinary patterns.
    pub fn pattern_count(&self) -> u64 {
        5u64.pow(self.memory)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        GameConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_each_bad_field_by_name() {
        let cases: Vec<(&str, Box<dyn Fn(&mut GameConfig)>)> = vec![
            ("n_players", Box::new(|c| c.n_players = 0)),
            ("n_strategies", Box::new(|c| c.n_strategies = 0)),
            ("memory", Box::new(|c| c.memory = 0)),
            ("memory", Box::new(|c| c.memory = 28)),
            ("board_lot", Box::new(|c| c.board_lot = 0)),
            ("cognitive_threshold", Box::new(|c| c.cognitive_threshold = 0.0)),
            ("cognitive_threshold", Box::new(|c| c.cognitive_threshold = f64::NAN)),
            ("n_steps", Box::new(|c| c.n_steps = 0)),
            ("initial_price", Box::new(|c| c.initial_price = f64::INFINITY)),
            ("random_entry_prob", Box::new(|c| c.random_entry_prob = 1.5)),
        ];
        for (field, mutate) in cases {
            let mut c = GameConfig::default();
            mutate(&mut c);
            match c.validate() {
                Err(EngineError::InvalidConfig { field: f, .. }) => assert_eq!(f, field),
                other => panic!("expected error on {field}, got {other:?}"),
            }
        }
    }

    #[test]
    fn parses_partial_json_and_rejects_unknown_keys() {
        let c: GameConfig = serde_json::from_str(r#"{"memory": 7, "mode": "exogenous_history"}"#).unwrap();
        assert_eq!(c.memory, 7);
        assert_eq!(c.mode, Mode::ExogenousHistory);
        assert_eq!(c.n_players, 1000);
        assert!(serde_json::from_str::<GameConfig>(r#"{"memroy": 7}"#).is_err());
    }

    #[test]
    fn mode_from_str_aliases() {
        assert_eq!("exogenous".parse::<Mode>().unwrap(), Mode::ExogenousHistory);
        assert_eq!("random-entry".parse::<Mode>().unwrap(), Mode::RandomEntry);
        assert!("herding".parse::<Mode>().is_err());
    }
}
