//! Battery capacity a location needs to run on its own panels alone.

use std::io::Write;

use thiserror::Error;

use crate::format::sig6;

#[derive(Debug, Error, PartialEq)]
pub enum StorageError {
    #[error("no solar production on the simulated day; the location cannot power itself")]
    ZeroProduction,
    #[error("profile has a negative or non-finite entry at hour {0}")]
    InvalidProfile(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StorageEstimate {
    /// m² of panel making daily production equal daily consumption.
    pub area: f64,
    /// MWh of storage needed.
    pub storage: f64,
}

/// Sizes local panels so the day's production matches the day's demand, then
/// returns the smallest lossless battery that keeps the location supplied
/// when the day repeats indefinitely.
///
/// With net flow `net[t] = prod_unit[t]*area - cons[t]` summing to zero, the
/// cumulative state of charge is periodic, so every peak is eventually
/// followed by every trough and the largest cyclic drawdown is simply the
/// range (max - min) of the running sum.
pub fn estimate_storage(cons: &[f64; 24], prod_unit: &[f64; 24]) -> Result<StorageEstimate, StorageError> {
    for (t, (&c, &p)) in cons.iter().zip(prod_unit).enumerate() {
        if !(c.is_finite() && c >= 0.0 && p.is_finite() && p >= 0.0) {
            return Err(StorageError::InvalidProfile(t));
        }
    }
    let total_cons: f64 = cons.iter().sum();
    let total_prod: f64 = prod_unit.iter().sum();
    if total_cons == 0.0 {
        return Ok(StorageEstimate {
            area: 0.0,
            storage: 0.0,
        });
    }
    if total_prod == 0.0 {
        return Err(StorageError::ZeroProduction);
    }
    let area = total_cons / total_prod;

    let mut level = 0.0f64;
    let (mut hi, mut lo) = (0.0f64, 0.0f64);
    for (&c, &p) in cons.iter().zip(prod_unit) {
        level += p * area - c;
        hi = hi.max(level);
        lo = lo.min(level);
    }
    let storage = (hi - lo).min(total_cons);
    Ok(StorageEstimate { area, storage })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StorageRow {
    pub location: String,
    pub daily_consumption_gwh: f64,
    /// `None` when the location has no production on the simulated day.
    pub estimate: Option<StorageEstimate>,
}

pub const STORAGE_HEADER: &str = "location,daily_consumption_gwh,required_storage_gwh,local_area_m2";

/// Writes `storage_report.csv`. Locations without production get `NA`.
pub fn write_storage_report<W: Write>(rows: &[StorageRow], out: W) -> std::io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(STORAGE_HEADER.split(','))?;
    for r in rows {
        let (storage, area) = match r.estimate {
            Some(e) => (sig6(e.storage / 1000.0), sig6(e.area)),
            None => ("NA".into(), "NA".into()),
        };
        w.write_record([r.location.clone(), sig6(r.daily_consumption_gwh), storage, area])?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn night_deficit() {
        let cons = [1.0; 24];
        let mut prod = [0.0; 24];
        for p in &mut prod[8..16] {
            *p = 3.0;
        }
        let e = estimate_storage(&cons, &prod).unwrap();
        assert_eq!(e.area, 1.0);
        assert_eq!(e.storage, 16.0);
    }

    #[test]
    fn balanced_day_needs_nothing() {
        let cons = [2.5; 24];
        let e = estimate_storage(&cons, &[0.5; 24]).unwrap();
        assert_eq!(e.area, 5.0);
        assert_eq!(e.storage, 0.0);
    }

    #[test]
    fn dark_day_is_an_error() {
        assert_eq!(
            estimate_storage(&[1.0; 24], &[0.0; 24]),
            Err(StorageError::ZeroProduction)
        );
    }

    #[test]
    fn zero_demand_needs_nothing() {
        let e = estimate_storage(&[0.0; 24], &[0.0; 24]).unwrap();
        assert_eq!(
            e,
            StorageEstimate {
                area: 0.0,
                storage: 0.0
            }
        );
    }

    #[test]
    fn csv_layout() {
        let rows = [
            StorageRow {
                location: "Los Angeles".into(),
                daily_consumption_gwh: 99.9,
                estimate: Some(StorageEstimate {
                    area: 1.25e8,
                    storage: 62_200.0,
                }),
            },
            StorageRow {
                location: "Nowhere, Dark".into(),
                daily_consumption_gwh: 1.0,
                estimate: None,
            },
        ];
        let mut buf = Vec::new();
        write_storage_report(&rows, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "location,daily_consumption_gwh,required_storage_gwh,local_area_m2\n\
             Los Angeles,99.9,62.2,1.25e+08\n\
             \"Nowhere, Dark\",1,NA,NA\n"
        );
    }
}
