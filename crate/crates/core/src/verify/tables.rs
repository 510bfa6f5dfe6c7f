//! Dimension and rank tables, rendered as aligned text or CSV.

use std::str::FromStr;

use rayon::prelude::*;

use super::config::SuiteConfig;
use crate::induced::vacuum_diamond;
use crate::zhu::{build_span, omega_n, QuotientView, SpanKind};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    OmegaDims,
    AnUpperBounds,
    ODaggerRanks,
    ODiamondRanks,
}

impl TableKind {
    pub const ALL: [TableKind; 4] = [
        TableKind::OmegaDims,
        TableKind::AnUpperBounds,
        TableKind::ODaggerRanks,
        TableKind::ODiamondRanks,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableKind::OmegaDims => "omega-dims",
            TableKind::AnUpperBounds => "an-upper-bounds",
            TableKind::ODaggerRanks => "odagger-ranks",
            TableKind::ODiamondRanks => "odiamond-ranks",
        }
    }

    /// CSV columns, as documented in the command-line help.
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            TableKind::OmegaDims => &["n", "cutoff", "bound", "dim"],
            TableKind::AnUpperBounds => &["n", "cutoff", "margin", "span_rank", "quotient_dim_bound"],
            TableKind::ODaggerRanks | TableKind::ODiamondRanks => &[
                "m",
                "n",
                "cutoff",
                "margin",
                "span_rank",
                "quotient_dim_bound",
                "dual_dim",
            ],
        }
    }
}

impl FromStr for TableKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TableKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            let names: Vec<&str> = TableKind::ALL.iter().map(|k| k.name()).collect();
            Error::Usage(format!("unknown table '{s}'; known: {}", names.join(", ")))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub kind: TableKind,
    pub rows: Vec<Vec<usize>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.kind.columns().join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let cols = self.kind.columns();
        let width: Vec<usize> = (0..cols.len())
            .map(|j| {
                self.rows
                    .iter()
                    .map(|r| r[j].to_string().len())
                    .chain([cols[j].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: Vec<String>| {
            cells
                .iter()
                .zip(&width)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let mut out = line(cols.iter().map(|c| c.to_string()).collect());
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r.iter().map(|x| x.to_string()).collect()));
            out.push('\n');
        }
        out
    }
}

/// Builds a table. Defaults: `n` in 0..2, `m` in 0..1, `D = 6`, `M = 6`.
/// `an-upper-bounds` sweeps the cutoff from 1 to `D`.
pub fn table(kind: TableKind, config: &SuiteConfig) -> Result<Table> {
    config.validate()?;
    let d = config.cutoff_or(6);
    let margin = config.margin_or(6);
    let ns: Vec<i64> = config.n_or((0, 2)).collect();
    let ms: Vec<i64> = config.m_or((0, 1)).collect();
    let rows: Vec<Vec<usize>> = match kind {
        TableKind::OmegaDims => {
            let bound = config.corpus_or(d);
            let voa = config.instance(d + bound)?;
            ns.par_iter()
                .map(|&n| {
                    Ok(vec![
                        n as usize,
                        d as usize,
                        bound as usize,
                        omega_n(&voa, n, d, bound)?.rank(),
                    ])
                })
                .collect::<Result<_>>()?
        }
        TableKind::AnUpperBounds => {
            let voa = config.instance(d + margin)?;
            let cells: Vec<(i64, u32)> = ns.iter().flat_map(|&n| (1..=d).map(move |dd| (n, dd))).collect();
            cells
                .par_iter()
                .map(|&(n, dd)| {
                    let span = build_span(&voa, SpanKind::On { n }, dd, margin)?;
                    let bound = QuotientView::new(&span, dd).dim_upper_bound()?;
                    Ok(vec![n as usize, dd as usize, margin as usize, span.rank(), bound])
                })
                .collect::<Result<_>>()?
        }
        TableKind::ODaggerRanks | TableKind::ODiamondRanks => {
            let voa = config.instance(d + margin)?;
            let cells: Vec<(i64, i64)> = ms.iter().flat_map(|&m| ns.iter().map(move |&n| (m, n))).collect();
            cells
                .par_iter()
                .map(|&(m, n)| {
                    let (span_kind, dual_dim) = if kind == TableKind::ODaggerRanks {
                        let vs = crate::zhu::vacuum_space_mn(&voa, m, n, d, margin)?;
                        (SpanKind::ODagger { n, m }, vs.dim())
                    } else {
                        (SpanKind::OPrime { n, m }, vacuum_diamond(&voa, m, n, d, margin)?.dim())
                    };
                    let span = build_span(&voa, span_kind, d, margin)?;
                    let bound = QuotientView::new(&span, d).dim_upper_bound()?;
                    Ok(vec![
                        m as usize,
                        n as usize,
                        d as usize,
                        margin as usize,
                        span.rank(),
                        bound,
                        dual_dim,
                    ])
                })
                .collect::<Result<_>>()?
        }
    };
    Ok(Table { kind, rows })
}
