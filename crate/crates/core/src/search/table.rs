//! Exact maxima next to the known closed-form bounds.
//!
//! Counting conventions: the all-subsets universe includes `∅` and `X`; the
//! interval universe holds the nonempty proper cyclic intervals only.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::bnb::{max_cross_free, SearchOptions};
use crate::constructions::gen_cyclic_intervals;
use crate::error::{Error, Result};
use crate::family::{Family, GroundSet, Mode};

pub const MAX_N_ALL: usize = 5;
pub const MAX_N_INTERVALS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Universe {
    All,
    Intervals,
}

impl Universe {
    pub fn name(self) -> &'static str {
        match self {
            Universe::All => "all",
            Universe::Intervals => "intervals",
        }
    }

    pub fn family(self, n: usize) -> Result<Family> {
        match self {
            Universe::All => Family::power_set(GroundSet::new(n)?),
            Universe::Intervals => gen_cyclic_intervals(n, false),
        }
    }

    pub fn max_n(self) -> usize {
        match self {
            Universe::All => MAX_N_ALL,
            Universe::Intervals => MAX_N_INTERVALS,
        }
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Universe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Universe::All),
            "intervals" => Ok(Universe::Intervals),
            other => Err(Error::InvalidArgument(format!(
                "unknown universe '{other}' (expected all or intervals)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tightness {
    Tight,
    NotTight,
    NotApplicable,
}

impl Tightness {
    pub fn as_str(self) -> &'static str {
        match self {
            Tightness::Tight => "true",
            Tightness::NotTight => "false",
            Tightness::NotApplicable => "N/A",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub k: usize,
    pub universe: Universe,
    pub mode: Mode,
    pub exact: usize,
    pub proven_optimal: bool,
    pub formula: Option<i64>,
    pub formula_name: Option<String>,
    pub tight: Tightness,
}

fn binom2(m: i64) -> i64 {
    m * (m - 1) / 2
}

/// The closed form known for this setting, with whether optimality is claimed
/// at this `n`.
pub fn formula(n: usize, k: usize, universe: Universe, mode: Mode) -> Option<(i64, &'static str, bool)> {
    let (n, ki) = (n as i64, k as i64);
    match (universe, mode, k) {
        (Universe::All, Mode::Weak, 2) => Some((2 * n, "2n", true)),
        (Universe::All, Mode::Strict, 2) => Some((4 * n - 2, "4n-2", false)),
        (Universe::All, Mode::Strict, 3) => Some((8 * n - 20, "8n-20", false)),
        (Universe::Intervals, Mode::Strict, _) => Some((
            4 * (ki - 1) * n - 2 * binom2(2 * ki - 1),
            "4(k-1)n-2C(2k-1,2)",
            n >= 2 * ki,
        )),
        _ => None,
    }
}

pub fn table_row(n: usize, k: usize, universe: Universe, mode: Mode, opts: &SearchOptions) -> Result<TableRow> {
    let fam = universe.family(n)?;
    let r = max_cross_free(&fam, k, mode, opts)?;
    let f = formula(n, k, universe, mode);
    let tight = match f {
        Some((value, _, true)) if r.proven_optimal => {
            if value == r.size as i64 {
                Tightness::Tight
            } else {
                Tightness::NotTight
            }
        }
        _ => Tightness::NotApplicable,
    };
    Ok(TableRow {
        n,
        k,
        universe,
        mode,
        exact: r.size,
        proven_optimal: r.proven_optimal,
        formula: f.map(|(v, _, _)| v),
        formula_name: f.map(|(_, name, _)| name.to_string()),
        tight,
    })
}

pub fn bound_table(
    ns: RangeInclusive<usize>,
    ks: RangeInclusive<usize>,
    universe: Universe,
    mode: Mode,
    opts: &SearchOptions,
) -> Result<Vec<TableRow>> {
    let min_n = match universe {
        Universe::All => 1,
        Universe::Intervals => 2,
    };
    if ns.is_empty() || *ns.start() < min_n || *ns.end() > universe.max_n() {
        return Err(Error::InfeasibleRange(format!(
            "n range {}..{} outside {min_n}..{} for the {universe} universe",
            ns.start(),
            ns.end(),
            universe.max_n()
        )));
    }
    if ks.is_empty() || *ks.start() < 2 {
        return Err(Error::InfeasibleRange(format!(
            "k range {}..{} must start at 2 or more",
            ks.start(),
            ks.end()
        )));
    }
    let mut rows = Vec::new();
    for n in ns {
        for k in ks.clone() {
            rows.push(table_row(n, k, universe, mode, opts)?);
        }
    }
    Ok(rows)
}

pub const CSV_HEADER: &str = "n,k,universe,mode,exact,formula,formula_name,tight";

pub fn rows_to_csv(rows: &[TableRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.n,
            r.k,
            r.universe,
            r.mode,
            r.exact,
            r.formula.map(|v| v.to_string()).unwrap_or_default(),
            r.formula_name.as_deref().unwrap_or(""),
            r.tight.as_str()
        ));
    }
    out
}

pub fn rows_to_text(rows: &[TableRow]) -> String {
    let header = [
        "n",
        "k",
        "universe",
        "mode",
        "exact",
        "formula",
        "formula_name",
        "tight",
    ];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.k.to_string(),
                r.universe.to_string(),
                r.mode.to_string(),
                r.exact.to_string(),
                r.formula.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
                r.formula_name.clone().unwrap_or_else(|| "-".into()),
                r.tight.as_str().to_string(),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            cells
                .iter()
                .map(|row| row[c].len())
                .chain([header[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |row: Vec<&str>| {
        let padded: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for row in &cells {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formulas() {
        assert_eq!(
            formula(4, 2, Universe::Intervals, Mode::Strict),
            Some((10, "4(k-1)n-2C(2k-1,2)", true))
        );
        assert_eq!(formula(6, 3, Universe::Intervals, Mode::Strict).unwrap().0, 28);
        assert_eq!(formula(4, 3, Universe::All, Mode::Strict).unwrap().0, 12);
        assert_eq!(formula(4, 3, Universe::All, Mode::Weak), None);
    }

    #[test]
    fn small_rows() {
        let opts = SearchOptions::default();
        let r = table_row(3, 2, Universe::All, Mode::Weak, &opts).unwrap();
        assert_eq!((r.exact, r.formula, r.tight), (6, Some(6), Tightness::Tight));
        let r = table_row(4, 3, Universe::All, Mode::Strict, &opts).unwrap();
        assert_eq!((r.exact, r.formula, r.tight), (14, Some(12), Tightness::NotApplicable));
    }

    #[test]
    fn infeasible_ranges() {
        let opts = SearchOptions::default();
        assert!(matches!(
            bound_table(3..=6, 2..=2, Universe::All, Mode::Weak, &opts),
            Err(Error::InfeasibleRange(_))
        ));
        assert!(bound_table(3..=3, 1..=2, Universe::All, Mode::Weak, &opts).is_err());
    }

    #[test]
    fn csv_layout() {
        let rows = vec![TableRow {
            n: 3,
            k: 2,
            universe: Universe::All,
            mode: Mode::Weak,
            exact: 6,
            proven_optimal: true,
            formula: Some(6),
            formula_name: Some("2n".into()),
            tight: Tightness::Tight,
        }];
        assert_eq!(rows_to_csv(&rows), format!("{CSV_HEADER}\n3,2,all,weak,6,6,2n,true\n"));
    }
}
