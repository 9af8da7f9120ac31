//! CSV emission. Floats are written in shortest round-trip form, so equal
//! runs produce byte-identical files.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::experiments::{ConvergenceReport, MassUptake};
use crate::ivp1d::Grid;
use crate::solver::RunRecord;

fn create(path: &Path) -> Result<csv::Writer<std::fs::File>> {
    csv::Writer::from_path(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// `t_star,Z_star,p,g`, one row per node per sample.
pub fn write_fields<W: Write>(out: W, record: &RunRecord) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t_star", "Z_star", "p", "g"])?;
    for ((t, p), g) in record.times.iter().zip(&record.p_fields).zip(&record.g_fields) {
        let grid = Grid::new(p.len())?;
        for i in 0..p.len() {
            w.serialize((t, grid.z(i), p[i], g[i]))?;
        }
    }
    w.flush()?;
    Ok(())
}

/// `t_star,mass_ratio,normalized_mass`.
pub fn write_mass<W: Write>(out: W, uptake: &MassUptake) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t_star", "mass_ratio", "normalized_mass"])?;
    for (m, &(t, nm)) in uptake.record.mass_curve.iter().zip(&uptake.curve) {
        w.serialize((t, m, nm))?;
    }
    w.flush()?;
    Ok(())
}

/// `grid,error`.
pub fn write_convergence<W: Write>(out: W, report: &ConvergenceReport) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["grid", "error"])?;
    for (g, e) in report.grids.iter().zip(&report.errors) {
        w.serialize((g, e))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_fields_file(path: &Path, record: &RunRecord) -> Result<()> {
    write_fields(create(path)?.into_inner().map_err(|e| Error::Io(e.to_string()))?, record)
}

pub fn write_mass_file(path: &Path, uptake: &MassUptake) -> Result<()> {
    write_mass(create(path)?.into_inner().map_err(|e| Error::Io(e.to_string()))?, uptake)
}

pub fn write_convergence_file(path: &Path, report: &ConvergenceReport) -> Result<()> {
    write_convergence(create(path)?.into_inner().map_err(|e| Error::Io(e.to_string()))?, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{normalize_record, read_curve};

    fn record() -> RunRecord {
        RunRecord {
            times: vec![0.0, 0.025],
            p_fields: vec![vec![1.0, 1.0, 1.0], vec![1.3, 1.0000000001, 1.3]],
            g_fields: vec![vec![1.0; 3], vec![1.0, 1.0, 0.1 + 0.2]],
            mass_curve: vec![1.0, 1.2],
            boundary_p: vec![1.3, 1.3],
            ..Default::default()
        }
    }

    #[test]
    fn fields_round_trip_exactly() {
        let mut buf = Vec::new();
        write_fields(&mut buf, &record()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("t_star,Z_star,p,g"));
        let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[4], vec![0.025, 0.0, 1.0000000001, 1.0]);
        assert_eq!(rows[5][3], 0.1 + 0.2);
        assert_eq!(rows[3][1], -1.0);
    }

    #[test]
    fn mass_csv_is_a_readable_curve() {
        let u = normalize_record(record(), false).unwrap();
        let mut buf = Vec::new();
        write_mass(&mut buf, &u).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("t_star,mass_ratio,normalized_mass\n"));
        assert_eq!(read_curve(buf.as_slice()).unwrap(), u.curve);
    }

    #[test]
    fn convergence_header() {
        let r = ConvergenceReport {
            grids: vec![5, 15],
            reference: 401,
            probe_z: 0.0,
            probe_t: 0.5,
            dt_star: 0.025,
            reference_value: 1.3,
            probe_values: vec![1.2, 1.29],
            errors: vec![0.1, 0.01],
            noise_band: 0.05,
            monotone: true,
        };
        let mut buf = Vec::new();
        write_convergence(&mut buf, &r).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "grid,error\n5,0.1\n15,0.01\n");
    }
}
