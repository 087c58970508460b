//! Price ingestion, returns and sample moments.
//!
//! Input is a two-column CSV (`date,price`); timestamps are validated for
//! strict ordering but otherwise informational — every downstream
//! computation works on row order alone.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SeriesError {
    #[error("row {row}: malformed field `{field}`")]
    MalformedRow { row: usize, field: String },
    #[error("row {row}: non-positive price {price}")]
    NonPositivePrice { row: usize, price: f64 },
    #[error("row {row}: timestamp not strictly increasing")]
    NonMonotoneTime { row: usize },
    #[error("series too short: need at least {need}, got {got}")]
    TooShort { need: usize, got: usize },
    #[error("zero variance: series is constant")]
    ZeroVariance,
}

/// Parsed ISO-8601 timestamp, kept lexical plus a sortable key.
///
/// Accepts `YYYY-MM-DD` with an optional `THH:MM:SS[.frac]` suffix
/// (space also accepted as the separator).
#[derive(Debug, Clone, PartialEq)]
pub struct Timestamp {
    pub raw: String,
    key: (i32, u8, u8, u8, u8, u8, u32),
}

impl Timestamp {
    pub fn parse(raw: &str) -> Option<Timestamp> {
        let (date, time) = match raw.split_once(['T', ' ']) {
            Some((d, t)) => (d, Some(t)),
            None => (raw, None),
        };
        let mut it = date.split('-');
        let year = it.next()?;
        let month = it.next()?;
        let day = it.next()?;
        if it.next().is_some() || year.len() != 4 || month.len() != 2 || day.len() != 2 {
            return None;
        }
        let y: i32 = year.parse().ok()?;
        let m: u8 = month.parse().ok()?;
        let d: u8 = day.parse().ok()?;
        if !(1..=12).contains(&m) || !(1..=31).contains(&d) {
            return None;
        }
        let (hh, mm, ss, frac) = match time {
            None => (0, 0, 0, 0),
            Some(t) => {
                let mut it = t.split(':');
                let hh: u8 = it.next()?.parse().ok()?;
                let mm: u8 = it.next()?.parse().ok()?;
                let (ss, frac) = match it.next() {
                    None => (0, 0),
                    Some(s) => match s.split_once('.') {
                        None => (s.parse().ok()?, 0),
                        Some((whole, f)) => {
                            // normalize fraction to nanoseconds for ordering
                            let digits: String = f.chars().take(9).collect();
                            if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
                                return None;
                            }
                            let pad = 9 - digits.len() as u32;
                            let frac: u32 = digits.parse().ok()?;
                            (whole.parse().ok()?, frac * 10u32.pow(pad))
                        }
                    },
                };
                if it.next().is_some() || hh > 23 || mm > 59 || ss > 60 {
                    return None;
                }
                (hh, mm, ss, frac)
            }
        };
        Some(Timestamp {
            raw: raw.to_string(),
            key: (y, m, d, hh, mm, ss, frac),
        })
    }
}

impl PartialOrd for Timestamp {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.key.cmp(&other.key))
    }
}

/// Ordered positive prices with strictly increasing timestamps.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceSeries {
    pub timestamps: Vec<Timestamp>,
    pub prices: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReturnKind {
    Log,
    Simple,
}

/// Per-period returns; length is one less than the generating price series.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnSeries {
    pub values: Vec<f64>,
    pub kind: ReturnKind,
}

/// Population (divide-by-N) moments of a return series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSummary {
    pub mean: f64,
    pub variance: f64,
    pub fourth_moment: f64,
    pub excess_kurtosis: f64,
}

impl PriceSeries {
    pub fn new(timestamps: Vec<Timestamp>, prices: Vec<f64>) -> Result<Self, SeriesError> {
        assert_eq!(timestamps.len(), prices.len());
        for (i, &p) in prices.iter().enumerate() {
            if !p.is_finite() || p <= 0.0 {
                return Err(SeriesError::NonPositivePrice { row: i + 1, price: p });
            }
        }
        for i in 1..timestamps.len() {
            if timestamps[i].key <= timestamps[i - 1].key {
                return Err(SeriesError::NonMonotoneTime { row: i + 1 });
            }
        }
        Ok(PriceSeries { timestamps, prices })
    }

    pub fn len(&self) -> usize {
        self.prices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prices.is_empty()
    }

    /// Inverse of [`parse_price_csv`]: `date,price` rows, shortest
    /// round-trip decimal rendering, no header.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        for (ts, p) in self.timestamps.iter().zip(&self.prices) {
            out.push_str(&ts.raw);
            out.push(',');
            out.push_str(&format!("{p:?}"));
            out.push('\n');
        }
        out
    }
}

/// Parse `date,price` rows. A single leading header row is tolerated and
/// detected by a non-numeric second field.
pub fn parse_price_csv(text: &str) -> Result<PriceSeries, SeriesError> {
    let mut timestamps = Vec::new();
    let mut prices = Vec::new();
    let mut first_data_row = true;
    for (idx, line) in text.lines().enumerate() {
        let row = idx + 1;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let (date, price) = match (fields.next(), fields.next(), fields.next()) {
            (Some(d), Some(p), None) => (d.trim(), p.trim()),
            _ => {
                return Err(SeriesError::MalformedRow {
                    row,
                    field: line.to_string(),
                })
            }
        };
        let price_val: Result<f64, _> = price.parse();
        if first_data_row && price_val.is_err() && Timestamp::parse(date).is_none() {
            // header row: non-numeric price and no parseable timestamp
            // (a valid date next to a garbage price is malformed data,
            // not a header)
            first_data_row = false;
            continue;
        }
        first_data_row = false;
        let price_val = price_val.map_err(|_| SeriesError::MalformedRow {
            row,
            field: price.to_string(),
        })?;
        let ts = Timestamp::parse(date).ok_or_else(|| SeriesError::MalformedRow {
            row,
            field: date.to_string(),
        })?;
        if !price_val.is_finite() || price_val <= 0.0 {
            return Err(SeriesError::NonPositivePrice {
                row,
                price: price_val,
            });
        }
        if let Some(prev) = timestamps.last() {
            let prev: &Timestamp = prev;
            if ts.key <= prev.key {
                return Err(SeriesError::NonMonotoneTime { row });
            }
        }
        timestamps.push(ts);
        prices.push(price_val);
    }
    PriceSeries::new(timestamps, prices)
}

/// Log price ratios: `values[t] = ln(p_{t+1}/p_t)`.
pub fn log_returns(series: &PriceSeries) -> Result<ReturnSeries, SeriesError> {
    if series.len() < 2 {
        return Err(SeriesError::TooShort {
            need: 2,
            got: series.len(),
        });
    }
    let values = series
        .prices
        .windows(2)
        .map(|w| (w[1] / w[0]).ln())
        .collect();
    Ok(ReturnSeries {
        values,
        kind: ReturnKind::Log,
    })
}

impl ReturnSeries {
    pub fn from_values(values: Vec<f64>, kind: ReturnKind) -> Self {
        ReturnSeries { values, kind }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// One decimal per line, 17 significant digits (lossless for f64).
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for v in &self.values {
            out.push_str(&format!("{v:.16e}\n"));
        }
        out
    }

    /// Parse the one-value-per-line format written by [`Self::to_lines`].
    pub fn parse_lines(text: &str, kind: ReturnKind) -> Result<Self, SeriesError> {
        let mut values = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let v: f64 = line.parse().map_err(|_| SeriesError::MalformedRow {
                row: idx + 1,
                field: line.to_string(),
            })?;
            if !v.is_finite() {
                return Err(SeriesError::MalformedRow {
                    row: idx + 1,
                    field: line.to_string(),
                });
            }
            values.push(v);
        }
        Ok(ReturnSeries { values, kind })
    }
}

/// Population moments. Kurtosis needs a nonconstant series of length ≥ 4.
pub fn moments(returns: &ReturnSeries) -> Result<MomentSummary, SeriesError> {
    let n = returns.len();
    if n < 4 {
        return Err(SeriesError::TooShort { need: 4, got: n });
    }
    let v = &returns.values;
    let (min, max) = v
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    if min == max {
        return Err(SeriesError::ZeroVariance);
    }
    let nf = n as f64;
    let mean = v.iter().sum::<f64>() / nf;
    let variance = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / nf;
    let fourth_moment = v.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / nf;
    if variance == 0.0 {
        return Err(SeriesError::ZeroVariance);
    }
    Ok(MomentSummary {
        mean,
        variance,
        fourth_moment,
        excess_kurtosis: fourth_moment / (variance * variance) - 3.0,
    })
}
