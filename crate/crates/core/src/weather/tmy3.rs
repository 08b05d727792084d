use std::io::{Read, Write};
use std::path::Path;

use chrono::{Datelike, NaiveDate, Timelike};

use super::{StationHeader, WeatherError, WeatherRecord, WeatherYear, HOURS_PER_YEAR};

/// Column names the parser requires, in the order the writer emits them.
pub const REQUIRED_COLUMNS: [&str; 6] = [
    "Date (MM/DD/YYYY)",
    "Time (HH:MM)",
    "GHI (W/m^2)",
    "DNI (W/m^2)",
    "DHI (W/m^2)",
    "Dry-bulb (C)",
];

const DATE: usize = 0;
const TIME: usize = 1;
const GHI: usize = 2;
const DNI: usize = 3;
const DHI: usize = 4;
const DRY_BULB: usize = 5;

pub fn read_tmy3(path: impl AsRef<Path>) -> Result<WeatherYear, WeatherError> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| WeatherError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_tmy3(std::io::BufReader::new(file))
}

/// Parses a TMY3-style CSV: one station line, one column-name line, then
/// exactly 8760 hourly rows in calendar order. Columns other than
/// [`REQUIRED_COLUMNS`] are ignored.
pub fn parse_tmy3<R: Read>(input: R) -> Result<WeatherYear, WeatherError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(input);
    let mut rows = reader.records();

    let station_line = rows
        .next()
        .ok_or_else(|| WeatherError::MalformedHeader("empty file".into()))??;
    let station = parse_station(&station_line)?;

    let names = rows
        .next()
        .ok_or_else(|| WeatherError::MalformedHeader("missing column-name line".into()))??;
    let columns = locate_columns(&names)?;

    let data: Vec<csv::StringRecord> = rows.collect::<Result<_, _>>()?;
    if data.len() != HOURS_PER_YEAR {
        return Err(WeatherError::RowCountMismatch {
            expected: HOURS_PER_YEAR,
            found: data.len(),
        });
    }

    let records = data
        .iter()
        .enumerate()
        .map(|(k, row)| {
            let line = row.position().map_or(k + 3, |p| p.line() as usize);
            let rec = parse_row(row, &columns, line)?;
            if rec.hour_of_year() != Some(k) {
                return Err(WeatherError::MalformedRow {
                    line,
                    reason: format!("{} is out of calendar order", rec.timestamp),
                });
            }
            rec.check_ranges()
                .map_err(|(field, value)| WeatherError::ValueOutOfRange { line, field, value })?;
            Ok(rec)
        })
        .collect::<Result<Vec<_>, _>>()?;

    Ok(WeatherYear { station, records })
}

fn parse_station(rec: &csv::StringRecord) -> Result<StationHeader, WeatherError> {
    if rec.len() < 7 {
        return Err(WeatherError::MalformedHeader(format!(
            "station line has {} fields, expected 7",
            rec.len()
        )));
    }
    let num = |i: usize, what: &str| -> Result<Option<f64>, WeatherError> {
        let s = rec[i].trim();
        if s.is_empty() {
            return Ok(None);
        }
        s.parse()
            .map(Some)
            .map_err(|_| WeatherError::MalformedHeader(format!("station {what} {s:?} is not numeric")))
    };
    Ok(StationHeader {
        id: rec[0].trim().to_string(),
        name: rec[1].trim().to_string(),
        state: rec[2].trim().to_string(),
        tz_offset: num(3, "timezone")?,
        latitude: num(4, "latitude")?,
        longitude: num(5, "longitude")?,
        elevation: num(6, "elevation")?,
    })
}

fn locate_columns(names: &csv::StringRecord) -> Result<[usize; 6], WeatherError> {
    let mut idx = [usize::MAX; 6];
    for (slot, want) in idx.iter_mut().zip(REQUIRED_COLUMNS) {
        let mut hits = names.iter().enumerate().filter(|(_, n)| n.trim() == want);
        match (hits.next(), hits.next()) {
            (Some((i, _)), None) => *slot = i,
            (None, _) => return Err(WeatherError::MalformedHeader(format!("missing column {want:?}"))),
            (Some(_), Some(_)) => return Err(WeatherError::MalformedHeader(format!("duplicate column {want:?}"))),
        }
    }
    Ok(idx)
}

fn parse_row(row: &csv::StringRecord, cols: &[usize; 6], line: usize) -> Result<WeatherRecord, WeatherError> {
    let malformed = |reason: String| WeatherError::MalformedRow { line, reason };
    let field = |c: usize| -> Result<&str, WeatherError> {
        row.get(cols[c])
            .map(str::trim)
            .ok_or_else(|| malformed(format!("missing field {:?}", REQUIRED_COLUMNS[c])))
    };
    let number = |c: usize| -> Result<f64, WeatherError> {
        let s = field(c)?;
        let v: f64 = s
            .parse()
            .map_err(|_| malformed(format!("{:?} is not a number: {s:?}", REQUIRED_COLUMNS[c])))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(malformed(format!("{:?} is not finite", REQUIRED_COLUMNS[c])))
        }
    };

    let date_str = field(DATE)?;
    let date =
        NaiveDate::parse_from_str(date_str, "%m/%d/%Y").map_err(|_| malformed(format!("bad date {date_str:?}")))?;
    let time_str = field(TIME)?;
    let (hh, mm) = time_str
        .split_once(':')
        .and_then(|(h, m)| Some((h.parse::<u32>().ok()?, m.parse::<u32>().ok()?)))
        .ok_or_else(|| malformed(format!("bad time {time_str:?}")))?;
    if !(1..=24).contains(&hh) || mm != 0 {
        return Err(malformed(format!(
            "time {time_str:?} is not an hour-ending label 01:00..24:00"
        )));
    }
    let timestamp = date
        .and_hms_opt(hh - 1, 0, 0)
        .ok_or_else(|| malformed(format!("bad time {time_str:?}")))?;

    Ok(WeatherRecord {
        timestamp,
        ghi: number(GHI)?,
        dni: number(DNI)?,
        dhi: number(DHI)?,
        dry_bulb: number(DRY_BULB)?,
    })
}

/// Writes `year` in the layout [`parse_tmy3`] reads: the station line, the
/// six required columns, and one row per record. Values are written with
/// round-trip precision.
pub fn write_tmy3<W: Write>(year: &WeatherYear, out: W) -> Result<(), WeatherError> {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    let st = &year.station;
    w.write_record([
        st.id.clone(),
        st.name.clone(),
        st.state.clone(),
        opt(st.tz_offset),
        opt(st.latitude),
        opt(st.longitude),
        opt(st.elevation),
    ])?;
    w.write_record(REQUIRED_COLUMNS)?;
    for r in &year.records {
        let ts = r.timestamp;
        w.write_record([
            format!("{:02}/{:02}/{:04}", ts.month(), ts.day(), ts.year()),
            format!("{:02}:00", ts.hour() + 1),
            r.ghi.to_string(),
            r.dni.to_string(),
            r.dhi.to_string(),
            r.dry_bulb.to_string(),
        ])?;
    }
    w.flush().map_err(|source| WeatherError::Io {
        path: "<writer>".into(),
        source,
    })?;
    Ok(())
}
