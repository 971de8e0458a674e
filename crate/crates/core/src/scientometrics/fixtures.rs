//! Top-ten author tables (rank, total citations, h-index, most-cited paper,
//! printed N/h²) for three fields, snapshot of 16 February 2020.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fixture {
    Mathematics,
    Biostatistics,
    Physics,
}

/// (rank, total_citations, h_index, max_paper_citations, printed κ).
pub type FixtureRow = (u32, u64, u64, u64, &'static str);

const MATHEMATICS: [FixtureRow; 10] = [
    (1, 448557, 270, 28303, "6.15"),
    (2, 162457, 98, 44406, "16.92"),
    (3, 159123, 147, 26929, "7.36"),
    (4, 138820, 64, 110393, "33.89"),
    (5, 101662, 59, 35640, "29.20"),
    (6, 99206, 78, 41647, "16.31"),
    (7, 85288, 59, 55293, "24.50"),
    (8, 84918, 48, 18901, "36.86"),
    (9, 77319, 98, 11715, "8.05"),
    (10, 73989, 72, 17153, "14.27"),
];

const BIOSTATISTICS: [FixtureRow; 10] = [
    (1, 478691, 227, 66611, "9.29"),
    (2, 301786, 132, 59613, "17.32"),
    (3, 253221, 208, 26127, "5.85"),
    (4, 223038, 218, 10184, "4.69"),
    (5, 199143, 169, 23447, "6.97"),
    (6, 178855, 117, 39271, "13.07"),
    (7, 150695, 105, 42485, "13.67"),
    (8, 119199, 111, 20666, "9.67"),
    (9, 108648, 140, 20842, "5.54"),
    (10, 100491, 111, 30315, "8.16"),
];

const PHYSICS: [FixtureRow; 10] = [
    (1, 326718, 206, 25605, "7.70"),
    (2, 259321, 223, 7275, "5.21"),
    (3, 240376, 200, 15651, "6.01"),
    (4, 232057, 206, 26535, "5.47"),
    (5, 231746, 218, 15589, "4.88"),
    (6, 227530, 206, 15684, "5.36"),
    (7, 217495, 144, 35746, "10.49"),
    (8, 200565, 191, 11807, "5.50"),
    (9, 198735, 190, 7497, "5.50"),
    (10, 197679, 198, 25649, "5.04"),
];

impl Fixture {
    pub const ALL: [Fixture; 3] = [Fixture::Mathematics, Fixture::Biostatistics, Fixture::Physics];

    pub fn rows(self) -> &'static [FixtureRow; 10] {
        match self {
            Fixture::Mathematics => &MATHEMATICS,
            Fixture::Biostatistics => &BIOSTATISTICS,
            Fixture::Physics => &PHYSICS,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Mathematics => "mathematics",
            Fixture::Biostatistics => "biostatistics",
            Fixture::Physics => "physics",
        }
    }

    /// The κ column as printed.
    pub fn printed_kappa(self) -> Vec<&'static str> {
        self.rows().iter().map(|r| r.4).collect()
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fixture {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Fixture::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| ModelError::UnknownFixture(s.to_string()))
    }
}
