use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::Serialize;

use super::{
    csv_header, DataError, Dataset, Feature, FeatureVector, Result, Row, Target, TargetRecord,
    TEMPERATURE_ENVELOPE, TIME_ENVELOPE,
};

/// A value outside the observed literature envelope. Not an error.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RangeWarning {
    /// 1-based data row.
    pub row: usize,
    pub column: &'static str,
    pub value: f64,
    pub envelope: (f64, f64),
}

impl std::fmt::Display for RangeWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "row {}: {} = {} outside observed range [{}, {}]",
            self.row, self.column, self.value, self.envelope.0, self.envelope.1
        )
    }
}

#[derive(Clone, Debug)]
pub struct LoadedDataset {
    pub dataset: Dataset,
    pub warnings: Vec<RangeWarning>,
}

pub fn load_csv(path: impl AsRef<Path>) -> Result<LoadedDataset> {
    read_csv(File::open(path)?)
}

pub fn read_csv<R: Read>(reader: R) -> Result<LoadedDataset> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers = rdr.headers()?.clone();

    // Map each schema column to its position in the file.
    let mut positions = Vec::with_capacity(21);
    for name in csv_header() {
        let pos = headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| DataError::MissingColumn(name.to_string()))?;
        positions.push(pos);
    }
    if let Some(extra) = headers.iter().find(|h| !csv_header().contains(&h.trim())) {
        return Err(DataError::UnexpectedColumn(extra.to_string()));
    }

    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        let row_no = i + 1;
        let cell = |col: usize| record.get(positions[col]).unwrap_or("").trim();

        let mut features = [0.0; Feature::COUNT];
        for f in Feature::ALL {
            let raw = cell(f.index());
            features[f.index()] = raw.parse::<f64>().map_err(|_| DataError::UnparseableCell {
                row: row_no,
                col: f.column().to_string(),
            })?;
        }
        let mut targets = TargetRecord::default();
        for t in Target::ALL {
            let raw = cell(Feature::COUNT + t.index());
            if raw.is_empty() {
                continue;
            }
            let v = raw.parse::<f64>().map_err(|_| DataError::UnparseableCell {
                row: row_no,
                col: t.column().to_string(),
            })?;
            targets.set(t, Some(v));
        }
        let features = FeatureVector::from_array(features);
        for (feature, envelope) in [
            (Feature::Temperature, TEMPERATURE_ENVELOPE),
            (Feature::Time, TIME_ENVELOPE),
        ] {
            let value = features.get(feature);
            if value < envelope.0 || value > envelope.1 {
                warnings.push(RangeWarning {
                    row: row_no,
                    column: feature.column(),
                    value,
                    envelope,
                });
            }
        }
        rows.push(Row { features, targets });
    }

    let dataset = Dataset::new(rows)?;
    Ok(LoadedDataset { dataset, warnings })
}

/// Writes the canonical 21-column CSV. Values use the shortest
/// representation that parses back to the identical `f64`.
pub fn write_csv_to<W: Write>(dataset: &Dataset, writer: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(csv_header())?;
    for row in dataset.rows() {
        let mut record: Vec<String> = row.features.to_array().iter().map(|v| v.to_string()).collect();
        record.extend(
            Target::ALL
                .iter()
                .map(|&t| row.targets.get(t).map(|v| v.to_string()).unwrap_or_default()),
        );
        wtr.write_record(&record)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_csv(dataset: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    write_csv_to(dataset, File::create(path)?)
}
