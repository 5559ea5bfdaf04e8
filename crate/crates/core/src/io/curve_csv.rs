use std::io::{Read, Write};

use crate::frenet::{reorthonormalize, CurveSample, FrenetFrame, Provenance, SampledCurve};
use crate::Vec3;

use super::IoError;

pub const CSV_HEADER: [&str; 15] = [
    "s", "x", "y", "z", "tx", "ty", "tz", "nx", "ny", "nz", "bx", "by", "bz", "kappa", "tau",
];

fn csv_error(e: csv::Error) -> IoError {
    IoError::Csv {
        line: e.position().map_or(0, |p| p.line()),
        message: e.to_string(),
    }
}

/// Writes one row per sample; floats carry 17 significant digits.
pub fn write_curve_csv<W: Write>(curve: &SampledCurve, out: W) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_error)?;
    for p in curve.samples() {
        let (t, n, b) = (p.frame.tangent(), p.frame.normal(), p.frame.binormal());
        let row = [
            p.s, p.position.x, p.position.y, p.position.z, t.x, t.y, t.z, n.x, n.y, n.z, b.x, b.y, b.z, p.kappa, p.tau,
        ];
        w.write_record(row.iter().map(|v| format!("{v:.16e}"))).map_err(csv_error)?;
    }
    w.flush().map_err(|e| IoError::Csv {
        line: 0,
        message: e.to_string(),
    })
}

/// Reads a curve written by [`write_curve_csv`] (or any file with the same header).
/// Frames slightly off orthonormal are repaired; the result is tagged `External`.
pub fn read_curve_csv<R: Read>(input: R) -> Result<SampledCurve, IoError> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let header = r.headers().map_err(csv_error)?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(IoError::Csv {
            line: 1,
            message: format!("expected header {}", CSV_HEADER.join(",")),
        });
    }
    let mut samples = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_error)?;
        let line = rec.position().map_or(0, |p| p.line());
        let mut v = [0.0; 15];
        for (i, field) in rec.iter().enumerate() {
            v[i] = field.parse().map_err(|_| IoError::Csv {
                line,
                message: format!("column `{}`: cannot parse `{field}`", CSV_HEADER[i]),
            })?;
        }
        let t = Vec3::new(v[4], v[5], v[6]);
        let n = Vec3::new(v[7], v[8], v[9]);
        let b = Vec3::new(v[10], v[11], v[12]);
        let frame = FrenetFrame::new(t, n, b).or_else(|_| reorthonormalize(t, n, b))?;
        samples.push(CurveSample {
            s: v[0],
            position: Vec3::new(v[1], v[2], v[3]),
            frame,
            kappa: v[13],
            tau: v[14],
        });
    }
    if samples.len() < 2 {
        return Err(IoError::Csv {
            line: 0,
            message: format!("need at least 2 samples, got {}", samples.len()),
        });
    }
    let step = (samples[samples.len() - 1].s - samples[0].s) / (samples.len() - 1) as f64;
    Ok(SampledCurve::new(step, samples, Provenance::External)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_general_helix;
    use crate::profiles::{Interval, ScalarField};

    #[test]
    fn round_trip_is_lossless() {
        let c = gen_general_helix(&ScalarField::sinusoid(1.0, 0.2, 3.0, 0.0).unwrap(), 0.6, Interval::new(0.0, 1.0).unwrap(), 0.01)
            .unwrap();
        let mut buf = Vec::new();
        write_curve_csv(&c, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("s,x,y,z,tx,ty,tz,nx,ny,nz,bx,by,bz,kappa,tau\n"));
        let back = read_curve_csv(buf.as_slice()).unwrap();
        assert_eq!(back.provenance(), Provenance::External);
        assert_eq!(back.len(), c.len());
        for (a, b) in c.samples().iter().zip(back.samples()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(read_curve_csv("a,b\n1,2\n".as_bytes()).is_err());
        let mut row = CSV_HEADER.join(",");
        row.push_str("\n0,0,0,0,1,0,0,0,1,0,0,0,1,1,0\n0.1,0,0,0,1,0,0,0,1,0,0,0,1,1,oops\n");
        match read_curve_csv(row.as_bytes()).unwrap_err() {
            IoError::Csv { line, .. } => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }
}
