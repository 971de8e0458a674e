//! Citation tables: κ = N/h², h summaries and correlations.

mod fixtures;

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::scalar::{CompensatedSum, Scalar};

pub use fixtures::{Fixture, FixtureRow};

pub const CSV_HEADER: [&str; 4] = ["rank", "total_citations", "h_index", "max_paper_citations"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AuthorRecord {
    pub rank: u32,
    pub total_citations: u64,
    pub h_index: u64,
    pub max_paper_citations: u64,
}

impl AuthorRecord {
    /// Description of the first violated invariant, if any.
    pub fn violation(&self) -> Option<&'static str> {
        if self.rank == 0 {
            Some("rank must be at least 1")
        } else if self.h_index >= 1 && self.h_index.saturating_mul(self.h_index) > self.total_citations {
            Some("h_index² exceeds total_citations")
        } else if self.max_paper_citations > self.total_citations {
            Some("max_paper_citations exceeds total_citations")
        } else {
            None
        }
    }
}

#[derive(Debug, Clone)]
pub enum DatasetSource<'a> {
    Fixture(Fixture),
    Path(&'a Path),
}

pub fn fixture_records(f: Fixture) -> Vec<AuthorRecord> {
    f.rows()
        .iter()
        .map(|&(rank, total_citations, h_index, max_paper_citations, _)| AuthorRecord {
            rank,
            total_citations,
            h_index,
            max_paper_citations,
        })
        .collect()
}

pub fn load_dataset(source: DatasetSource<'_>) -> Result<Vec<AuthorRecord>> {
    match source {
        DatasetSource::Fixture(f) => Ok(fixture_records(f)),
        DatasetSource::Path(path) => {
            let file = std::fs::File::open(path).map_err(|e| ModelError::Io(format!("{}: {e}", path.display())))?;
            parse_csv(file)
        }
    }
}

/// Parses and validates CSV with header `rank,total_citations,h_index,max_paper_citations`.
pub fn parse_csv<R: Read>(input: R) -> Result<Vec<AuthorRecord>> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = reader.headers().map_err(|e| csv_error(&e, 1))?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(ModelError::Parse {
            line: 1,
            column: 1,
            detail: format!("header must be exactly {}", CSV_HEADER.join(",")),
        });
    }
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| csv_error(&e, 0))?;
        let line = row.position().map_or(0, |p| p.line());
        let field = |i: usize| -> Result<u64> {
            row[i].trim().parse::<u64>().map_err(|e| ModelError::Parse {
                line,
                column: i + 1,
                detail: format!("{}: '{}': {e}", CSV_HEADER[i], &row[i]),
            })
        };
        let rank = field(0)?;
        let rank = u32::try_from(rank).map_err(|_| ModelError::Parse {
            line,
            column: 1,
            detail: format!("rank {rank} out of range"),
        })?;
        records.push(AuthorRecord {
            rank,
            total_citations: field(1)?,
            h_index: field(2)?,
            max_paper_citations: field(3)?,
        });
    }
    validate(&records)?;
    Ok(records)
}

fn csv_error(e: &csv::Error, fallback_line: u64) -> ModelError {
    let line = e.position().map_or(fallback_line, |p| p.line());
    ModelError::Parse { line, column: 0, detail: e.to_string() }
}

/// Checks every record's invariants and reports all offending ranks.
pub fn validate(records: &[AuthorRecord]) -> Result<()> {
    let bad: Vec<(u32, &str)> = records.iter().filter_map(|r| r.violation().map(|v| (r.rank, v))).collect();
    if bad.is_empty() {
        return Ok(());
    }
    let mut detail: Vec<&str> = bad.iter().map(|b| b.1).collect();
    detail.dedup();
    Err(ModelError::InvalidRecord { ranks: bad.iter().map(|b| b.0).collect(), detail: detail.join("; ") })
}

/// N/h².
pub fn kappa<T: Scalar>(record: &AuthorRecord) -> Result<T> {
    if record.h_index == 0 {
        return Err(ModelError::domain("kappa", format!("rank {}: h_index is 0", record.rank)));
    }
    let h = T::of_u64(record.h_index);
    Ok(T::of_u64(record.total_citations) / (h * h))
}

/// (mean, sample sd with n − 1 denominator).
pub fn summary<T: Scalar>(values: &[T]) -> Result<(T, T)> {
    if values.len() < 2 {
        return Err(ModelError::TooFew { need: 2, got: values.len() });
    }
    let n = T::of_u64(values.len() as u64);
    let mean = values.iter().copied().collect::<CompensatedSum<T>>().value() / n;
    let ss = values.iter().map(|&v| (v - mean) * (v - mean)).collect::<CompensatedSum<T>>().value();
    Ok((mean, (ss / (n - T::one())).sqrt()))
}

/// Pearson sample correlation.
pub fn pearson<T: Scalar>(xs: &[T], ys: &[T]) -> Result<T> {
    if xs.len() != ys.len() {
        return Err(ModelError::domain("pearson", format!("lengths differ: {} vs {}", xs.len(), ys.len())));
    }
    if xs.len() < 2 {
        return Err(ModelError::TooFew { need: 2, got: xs.len() });
    }
    let (mx, _) = summary(xs)?;
    let (my, _) = summary(ys)?;
    let mut sxy = CompensatedSum::new();
    let mut sxx = CompensatedSum::new();
    let mut syy = CompensatedSum::new();
    for (&x, &y) in xs.iter().zip(ys) {
        sxy.add((x - mx) * (y - my));
        sxx.add((x - mx) * (x - mx));
        syy.add((y - my) * (y - my));
    }
    if sxx.value() == T::zero() {
        return Err(ModelError::DegenerateVariance("first sequence is constant"));
    }
    if syy.value() == T::zero() {
        return Err(ModelError::DegenerateVariance("second sequence is constant"));
    }
    let r = sxy.value() / (sxx.value() * syy.value()).sqrt();
    Ok(r.max(-T::one()).min(T::one()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportTable<T> {
    /// κ per record, in input order.
    pub kappa: Vec<T>,
    pub h_mean: T,
    pub h_sample_sd: T,
    /// Pearson(total_citations, h_index).
    pub rho1: T,
    /// Pearson(h_index, max_paper_citations).
    pub rho2: T,
    pub kappa_le_5_count: usize,
    /// Count with 5 < κ < 6.
    pub kappa_5_6_count: usize,
}

pub fn report<T: Scalar>(records: &[AuthorRecord]) -> Result<ReportTable<T>> {
    if records.len() < 2 {
        return Err(ModelError::TooFew { need: 2, got: records.len() });
    }
    let kappa: Vec<T> = records.iter().map(kappa).collect::<Result<_>>()?;
    let col = |f: fn(&AuthorRecord) -> u64| -> Vec<T> { records.iter().map(|r| T::of_u64(f(r))).collect() };
    let n = col(|r| r.total_citations);
    let h = col(|r| r.h_index);
    let m = col(|r| r.max_paper_citations);
    let (h_mean, h_sample_sd) = summary(&h)?;
    let five = T::lit(5.0);
    let six = T::lit(6.0);
    Ok(ReportTable {
        h_mean,
        h_sample_sd,
        rho1: pearson(&n, &h)?,
        rho2: pearson(&h, &m)?,
        kappa_le_5_count: kappa.iter().filter(|&&k| k <= five).count(),
        kappa_5_6_count: kappa.iter().filter(|&&k| k > five && k < six).count(),
        kappa,
    })
}

/// Largest over second-largest total citations.
pub fn top_citation_ratio<T: Scalar>(records: &[AuthorRecord]) -> Result<T> {
    if records.len() < 2 {
        return Err(ModelError::TooFew { need: 2, got: records.len() });
    }
    let mut n: Vec<u64> = records.iter().map(|r| r.total_citations).collect();
    n.sort_unstable_by(|a, b| b.cmp(a));
    if n[1] == 0 {
        return Err(ModelError::domain("top_citation_ratio", "second-largest total is 0"));
    }
    Ok(T::of_u64(n[0]) / T::of_u64(n[1]))
}

/// Rounds to two decimals for display.
pub fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rec(rank: u32, n: u64, h: u64, m: u64) -> AuthorRecord {
        AuthorRecord { rank, total_citations: n, h_index: h, max_paper_citations: m }
    }

    #[test]
    fn fixture_rows() {
        assert_eq!(fixture_records(Fixture::Mathematics)[0], rec(1, 448557, 270, 28303));
        assert_eq!(fixture_records(Fixture::Physics)[6], rec(7, 217495, 144, 35746));
        for f in Fixture::ALL {
            let r = fixture_records(f);
            assert_eq!(r.len(), 10);
            assert!(validate(&r).is_ok());
        }
        assert_eq!("physics".parse::<Fixture>().unwrap(), Fixture::Physics);
        assert!(matches!("chemistry".parse::<Fixture>(), Err(ModelError::UnknownFixture(_))));
    }

    #[test]
    fn kappa_values() {
        let m = fixture_records(Fixture::Mathematics);
        assert_eq!(format!("{:.2}", kappa::<f64>(&m[0]).unwrap()), "6.15");
        let b = fixture_records(Fixture::Biostatistics);
        assert_eq!(format!("{:.2}", kappa::<f64>(&b[3]).unwrap()), "4.69");
        assert_eq!(kappa::<f64>(&rec(1, 1, 1, 1)).unwrap(), 1.0);
        assert!(kappa::<f64>(&rec(1, 5, 0, 1)).is_err());
    }

    #[test]
    fn summaries() {
        let h: Vec<f64> = fixture_records(Fixture::Physics).iter().map(|r| r.h_index as f64).collect();
        let (mean, sd) = summary(&h).unwrap();
        assert!((mean - 198.2).abs() < 1e-12);
        assert_eq!(format!("{sd:.2}"), "21.73");
        let h: Vec<f64> = fixture_records(Fixture::Mathematics).iter().map(|r| r.h_index as f64).collect();
        let (mean, sd) = summary(&h).unwrap();
        assert!((mean - 99.3).abs() < 1e-12);
        assert_eq!(format!("{sd:.2}"), "66.45");
        assert_eq!(summary(&[3.0, 3.0, 3.0]).unwrap().1, 0.0);
        assert!(summary(&[1.0]).is_err());
    }

    #[test]
    fn correlations() {
        let xs = [1.0_f64, 2.0, 4.0, 7.0];
        let neg: Vec<f64> = xs.iter().map(|x| -x).collect();
        assert!((pearson(&xs, &xs).unwrap() - 1.0).abs() < 1e-15);
        assert!((pearson(&xs, &neg).unwrap() + 1.0).abs() < 1e-15);
        assert!(matches!(pearson(&xs, &[1.0; 4]), Err(ModelError::DegenerateVariance(_))));
        assert!(pearson(&xs, &[1.0, 2.0]).is_err());
    }

    #[test]
    fn reports() {
        let r: ReportTable<f64> = report(&fixture_records(Fixture::Mathematics)).unwrap();
        assert!((r.rho1 - 0.94).abs() < 0.01);
        assert!((r.rho2 + 0.23).abs() < 0.01);
        assert_eq!(r.kappa_le_5_count + r.kappa_5_6_count, 0);
        assert!(r.kappa.iter().all(|&k| k > 6.0));
        let r: ReportTable<f64> = report(&fixture_records(Fixture::Physics)).unwrap();
        assert!((r.rho1 - 0.36).abs() < 0.01);
        assert!((r.rho2 + 0.57).abs() < 0.01);
        assert_eq!(r.kappa_le_5_count, 1);
        assert_eq!(r.kappa_5_6_count, 6);
        let r: ReportTable<f64> = report(&fixture_records(Fixture::Biostatistics)).unwrap();
        assert_eq!(r.kappa_le_5_count, 1);
        assert_eq!(r.kappa_5_6_count, 2);
        let same = [rec(1, 100, 5, 10), rec(2, 100, 5, 10)];
        assert!(matches!(report::<f64>(&same), Err(ModelError::DegenerateVariance(_))));
    }

    #[test]
    fn top_ratios() {
        let m: f64 = top_citation_ratio(&fixture_records(Fixture::Mathematics)).unwrap();
        assert!((m - 2.76).abs() < 0.01);
        let b: f64 = top_citation_ratio(&fixture_records(Fixture::Biostatistics)).unwrap();
        assert!((b - 1.59).abs() < 0.01);
    }

    #[test]
    fn csv_parsing() {
        let ok = "rank,total_citations,h_index,max_paper_citations\r\n1,100,10,50\r\n2,50,7,20\r\n";
        let r = parse_csv(ok.as_bytes()).unwrap();
        assert_eq!(r, vec![rec(1, 100, 10, 50), rec(2, 50, 7, 20)]);

        let bad_header = "rank,total,h_index,max_paper_citations\n1,100,10,50\n";
        assert!(matches!(parse_csv(bad_header.as_bytes()), Err(ModelError::Parse { line: 1, .. })));

        let bad_cell = "rank,total_citations,h_index,max_paper_citations\n1,100,10,50\n2,abc,7,20\n";
        match parse_csv(bad_cell.as_bytes()) {
            Err(ModelError::Parse { line, column, .. }) => assert_eq!((line, column), (3, 2)),
            other => panic!("{other:?}"),
        }

        let violated = "rank,total_citations,h_index,max_paper_citations\n1,100,10,50\n2,50,8,20\n3,10,1,11\n";
        match parse_csv(violated.as_bytes()) {
            Err(ModelError::InvalidRecord { ranks, .. }) => assert_eq!(ranks, vec![2, 3]),
            other => panic!("{other:?}"),
        }
    }

    proptest! {
        #[test]
        fn report_permutation_invariant(seed in 0u64..1000) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            for f in Fixture::ALL {
                let recs = fixture_records(f);
                let mut shuffled = recs.clone();
                shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
                let a: ReportTable<f64> = report(&recs).unwrap();
                let b: ReportTable<f64> = report(&shuffled).unwrap();
                prop_assert!((a.h_mean - b.h_mean).abs() < 1e-9);
                prop_assert!((a.h_sample_sd - b.h_sample_sd).abs() < 1e-9);
                prop_assert!((a.rho1 - b.rho1).abs() < 1e-12);
                prop_assert!((a.rho2 - b.rho2).abs() < 1e-12);
                prop_assert_eq!(a.kappa_le_5_count, b.kappa_le_5_count);
                prop_assert_eq!(a.kappa_5_6_count, b.kappa_5_6_count);
            }
        }
    }
}
