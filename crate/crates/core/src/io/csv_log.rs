use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::IoError;
use crate::engine::{Recorder, StepRecord, TradeRecord};

/// Streams the step and trade logs to CSV as the game runs.
///
/// The first write error is kept and later records are dropped; it is
/// returned by [`CsvRecorder::finish`].
pub struct CsvRecorder<W: Write> {
    steps: csv::Writer<W>,
    trades: csv::Writer<W>,
    error: Option<csv::Error>,
}

impl CsvRecorder<BufWriter<File>> {
    pub fn create(steps: &Path, trades: &Path) -> Result<Self, IoError> {
        let open = |p: &Path| File::create(p).map(BufWriter::new).map_err(|e| IoError::io(p, e));
        Ok(CsvRecorder::new(open(steps)?, open(trades)?))
    }
}

impl<W: Write> CsvRecorder<W> {
    pub fn new(steps: W, trades: W) -> Self {
        CsvRecorder { steps: csv::Writer::from_writer(steps), trades: csv::Writer::from_writer(trades), error: None }
    }

    pub fn finish(mut self) -> Result<(W, W), csv::Error> {
        if let Some(e) = self.error.take() {
            return Err(e);
        }
        let steps = self.steps.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
        let trades = self.trades.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
        Ok((steps, trades))
    }

    fn keep(&mut self, r: Result<(), csv::Error>) {
        if let (Err(e), None) = (r, &self.error) {
            self.error = Some(e);
        }
    }
}

impl<W: Write> Recorder for CsvRecorder<W> {
    fn on_step(&mut self, step: &StepRecord) {
        if self.error.is_none() {
            let r = self.steps.serialize(step);
            self.keep(r);
        }
    }

    fn on_trade(&mut self, trade: &TradeRecord) {
        if self.error.is_none() {
            let r = self.trades.serialize(trade);
            self.keep(r);
        }
    }
}
