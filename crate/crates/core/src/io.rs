//! Solution-set files: a CSV of objective values (`f1,...,fm` header) plus
//! a JSON sidecar carrying the orientation and provenance.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{HvcError, Result};
use crate::generate::PfShape;
use crate::types::{ObjectiveVector, Orientation, SolutionSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetSidecar {
    pub shape: PfShape,
    pub m: usize,
    pub n: usize,
    pub seed: u64,
    pub orientation: Orientation,
}

pub fn write_set_csv<W: Write>(writer: W, set: &SolutionSet) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record((1..=set.dim()).map(|j| format!("f{j}")))?;
    for p in set.points() {
        w.serialize(p.as_slice())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_set_csv<R: Read>(reader: R, orientation: Orientation) -> Result<SolutionSet> {
    let mut r = csv::Reader::from_reader(reader);
    let headers = r.headers()?.clone();
    let dim = headers.len();
    for (j, h) in headers.iter().enumerate() {
        if h != format!("f{}", j + 1) {
            return Err(HvcError::InvalidArgument(format!(
                "unexpected column {h:?}, expected f{}",
                j + 1
            )));
        }
    }
    let mut points = Vec::new();
    for row in r.deserialize::<Vec<f64>>() {
        points.push(ObjectiveVector::new(row?)?);
    }
    SolutionSet::with_dim(orientation, dim, points)
}

/// Writes `<stem>.csv` and `<stem>.json` side by side.
pub fn save_set(dir: &Path, stem: &str, set: &SolutionSet, sidecar: &SetSidecar) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    write_set_csv(BufWriter::new(File::create(dir.join(format!("{stem}.csv")))?), set)?;
    let mut json = serde_json::to_string_pretty(sidecar)?;
    json.push('\n');
    std::fs::write(dir.join(format!("{stem}.json")), json)?;
    Ok(())
}

pub fn load_set(dir: &Path, stem: &str) -> Result<(SolutionSet, SetSidecar)> {
    let sidecar: SetSidecar =
        serde_json::from_slice(&std::fs::read(dir.join(format!("{stem}.json")))?)?;
    let set = read_set_csv(File::open(dir.join(format!("{stem}.csv")))?, sidecar.orientation)?;
    if set.dim() != sidecar.m || set.len() != sidecar.n {
        return Err(HvcError::InvalidArgument(format!(
            "{stem}: sidecar says {}x{}, csv holds {}x{}",
            sidecar.n,
            sidecar.m,
            set.len(),
            set.dim()
        )));
    }
    Ok((set, sidecar))
}
