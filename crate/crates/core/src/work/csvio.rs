use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::{CharFnSamples, DeltaComb, GridDensity};

fn csv_err(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::Config(format!("{}: malformed csv ({other:?})", path.display())),
    }
}

fn write_rows(path: &Path, header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_err(path, e))?;
    w.write_record(header).map_err(|e| csv_err(path, e))?;
    for row in rows {
        w.write_record(&row).map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn read_rows(path: &Path, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_err(path, e))?;
    let found: Vec<String> = r
        .headers()
        .map_err(|e| csv_err(path, e))?
        .iter()
        .map(str::to_owned)
        .collect();
    if found != header {
        return Err(Error::Config(format!(
            "{}: expected columns {header:?}, found {found:?}",
            path.display()
        )));
    }
    r.records()
        .map(|rec| {
            let rec = rec.map_err(|e| csv_err(path, e))?;
            rec.iter()
                .map(|f| {
                    f.trim().parse::<f64>().map_err(|_| {
                        Error::Config(format!("{}: `{f}` is not a number", path.display()))
                    })
                })
                .collect()
        })
        .collect()
}

/// Columns `u, re_g, im_g, shots`.
pub fn write_char_fn_csv(path: impl AsRef<Path>, samples: &CharFnSamples) -> Result<()> {
    let shots = samples.shots().to_string();
    write_rows(
        path.as_ref(),
        &["u", "re_g", "im_g", "shots"],
        samples.u().iter().zip(samples.values()).map(|(u, g)| {
            vec![
                u.to_string(),
                g.re.to_string(),
                g.im.to_string(),
                shots.clone(),
            ]
        }),
    )
}

/// Reads samples written by [`write_char_fn_csv`]. The seed is not stored and
/// comes back as 0.
pub fn read_char_fn_csv(path: impl AsRef<Path>) -> Result<CharFnSamples> {
    let rows = read_rows(path.as_ref(), &["u", "re_g", "im_g", "shots"])?;
    let shots = rows.first().map_or(0, |r| r[3] as u64);
    CharFnSamples::new(
        rows.iter().map(|r| r[0]).collect(),
        rows.iter().map(|r| Complex64::new(r[1], r[2])).collect(),
        shots,
        0,
    )
}

/// Columns `w, density`.
pub fn write_grid_density_csv(path: impl AsRef<Path>, dist: &GridDensity) -> Result<()> {
    write_rows(
        path.as_ref(),
        &["w", "density"],
        dist.grid()
            .iter()
            .zip(dist.density())
            .map(|(w, d)| vec![w.to_string(), d.to_string()]),
    )
}

pub fn read_grid_density_csv(path: impl AsRef<Path>) -> Result<GridDensity> {
    let rows = read_rows(path.as_ref(), &["w", "density"])?;
    GridDensity::new(
        rows.iter().map(|r| r[0]).collect(),
        rows.iter().map(|r| r[1]).collect(),
    )
}

/// Columns `w, weight`.
pub fn write_delta_comb_csv(path: impl AsRef<Path>, comb: &DeltaComb) -> Result<()> {
    write_rows(
        path.as_ref(),
        &["w", "weight"],
        comb.peaks()
            .iter()
            .map(|(w, p)| vec![w.to_string(), p.to_string()]),
    )
}

pub fn read_delta_comb_csv(path: impl AsRef<Path>) -> Result<DeltaComb> {
    let rows = read_rows(path.as_ref(), &["w", "weight"])?;
    DeltaComb::new(rows.iter().map(|r| (r[0], r[1])).collect())
}
