//! Text format for sample sets, shared between the library and the CLI.
//!
//! Line 1 is `q,n`; every following line is one sample of `n`
//! comma-separated residues, each in `[0, q)`.

use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::ff::{FieldElement, PrimeModulus};

#[derive(Debug)]
pub enum SampleIoError {
    Io(io::Error),
    /// Malformed content, with the 1-based line number.
    Parse {
        line: usize,
        message: String,
    },
}

impl fmt::Display for SampleIoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleIoError::Io(e) => write!(f, "io error: {}", e),
            SampleIoError::Parse { line, message } => {
                write!(f, "parse error at line {}: {}", line, message)
            }
        }
    }
}

impl std::error::Error for SampleIoError {}

impl From<io::Error> for SampleIoError {
    fn from(e: io::Error) -> Self {
        SampleIoError::Io(e)
    }
}

/// A parsed sample file: modulus, arity, and raw residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSet {
    pub modulus: PrimeModulus,
    pub arity: usize,
    pub samples: Vec<Vec<u64>>,
}

impl SampleSet {
    pub fn to_field_elements(&self) -> Vec<Vec<FieldElement>> {
        self.samples
            .iter()
            .map(|s| s.iter().map(|&v| self.modulus.element(v)).collect())
            .collect()
    }
}

pub fn read_samples<R: BufRead>(reader: R) -> Result<SampleSet, SampleIoError> {
    let mut lines = reader.lines().enumerate();
    let (_, header) = lines.next().ok_or(SampleIoError::Parse {
        line: 1,
        message: "empty file".into(),
    })?;
    let header = header?;
    let mut parts = header.trim().split(',');
    let q: u64 = parse_field(parts.next(), 1, "q")?;
    let arity: usize = parse_field(parts.next(), 1, "n")?;
    if parts.next().is_some() {
        return Err(SampleIoError::Parse {
            line: 1,
            message: "header must be exactly `q,n`".into(),
        });
    }
    if arity == 0 {
        return Err(SampleIoError::Parse {
            line: 1,
            message: "n must be positive".into(),
        });
    }
    let modulus = PrimeModulus::new(q).map_err(|_| SampleIoError::Parse {
        line: 1,
        message: format!("q must be prime and below 2^62, got {}", q),
    })?;

    let mut samples = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            return Err(SampleIoError::Parse {
                line: line_no,
                message: "empty sample line".into(),
            });
        }
        let mut sample = Vec::with_capacity(arity);
        for token in trimmed.split(',') {
            let value: u64 = token.trim().parse().map_err(|_| SampleIoError::Parse {
                line: line_no,
                message: format!("invalid residue `{}`", token.trim()),
            })?;
            if value >= q {
                return Err(SampleIoError::Parse {
                    line: line_no,
                    message: format!("residue {} out of range for q = {}", value, q),
                });
            }
            sample.push(value);
        }
        if sample.len() != arity {
            return Err(SampleIoError::Parse {
                line: line_no,
                message: format!("expected {} residues, got {}", arity, sample.len()),
            });
        }
        samples.push(sample);
    }
    Ok(SampleSet {
        modulus,
        arity,
        samples,
    })
}

fn parse_field<T: std::str::FromStr>(
    token: Option<&str>,
    line: usize,
    name: &str,
) -> Result<T, SampleIoError> {
    token
        .map(str::trim)
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| SampleIoError::Parse {
            line,
            message: format!("missing or invalid `{}` in header", name),
        })
}

pub fn write_samples<W: Write>(mut writer: W, set: &SampleSet) -> io::Result<()> {
    writeln!(writer, "{},{}", set.modulus.get(), set.arity)?;
    for sample in &set.samples {
        debug_assert_eq!(sample.len(), set.arity);
        let joined: Vec<String> = sample.iter().map(u64::to_string).collect();
        writeln!(writer, "{}", joined.join(","))?;
    }
    Ok(())
}

pub fn read_samples_path<P: AsRef<Path>>(path: P) -> Result<SampleSet, SampleIoError> {
    let file = File::open(path)?;
    read_samples(BufReader::new(file))
}

pub fn write_samples_path<P: AsRef<Path>>(path: P, set: &SampleSet) -> io::Result<()> {
    let file = File::create(path)?;
    write_samples(BufWriter::new(file), set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_identity() {
        let set = SampleSet {
            modulus: PrimeModulus::new(7).unwrap(),
            arity: 2,
            samples: vec![vec![3, 4], vec![0, 6], vec![1, 1]],
        };
        let mut buf = Vec::new();
        write_samples(&mut buf, &set).unwrap();
        let parsed = read_samples(&buf[..]).unwrap();
        assert_eq!(parsed, set);
        // Writing the parse back is byte-identical.
        let mut buf2 = Vec::new();
        write_samples(&mut buf2, &parsed).unwrap();
        assert_eq!(buf, buf2);
    }

    #[test]
    fn rejects_out_of_range_residue() {
        let err = read_samples("7,2\n3,8\n".as_bytes()).unwrap_err();
        match err {
            SampleIoError::Parse { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("out of range"), "{}", message);
            }
            other => panic!("unexpected error {:?}", other),
        }
    }

    #[test]
    fn rejects_bad_header_and_shape() {
        assert!(matches!(
            read_samples("9,2\n".as_bytes()),
            Err(SampleIoError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            read_samples("7,2\n1\n".as_bytes()),
            Err(SampleIoError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            read_samples("7,2\n1,2,3\n".as_bytes()),
            Err(SampleIoError::Parse { line: 2, .. })
        ));
    }
}
