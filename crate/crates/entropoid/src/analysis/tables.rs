use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::partition::{partition_xi, PartitionReport, PARTITION_LIMIT};
use crate::entropoid::{Element, EntropoidParams};
use crate::error::{Error, Result};
use crate::generators::{span, span2, DEFAULT_GUARD};

/// `(p, a3, a8, b2, b7)` of the small reference entropoids.
pub const SMALL_ENTROPOIDS: [(u64, u64, u64, u64, u64); 5] = [
    (7, 6, 3, 3, 4),
    (11, 9, 1, 8, 9),
    (13, 10, 2, 3, 9),
    (19, 18, 11, 14, 10),
    (23, 15, 13, 9, 14),
];

/// Reference entropoid for the even/odd base census.
pub const DICHOTOMY_ENTROPOID: (u64, u64, u64, u64, u64) = (49223, 33170, 13052, 12476, 19648);
pub const DICHOTOMY_GENERATOR: (u64, u64) = (21287, 34883);

pub fn small_entropoid(p: u64) -> Result<EntropoidParams<u64>> {
    let &(p, a3, a8, b2, b7) = SMALL_ENTROPOIDS
        .iter()
        .find(|c| c.0 == p)
        .ok_or_else(|| Error::Unsupported(format!("no reference entropoid for p = {p}")))?;
    EntropoidParams::from_u64(p, a3, a8, b2, b7)
}

pub fn dichotomy_entropoid() -> Result<(EntropoidParams<u64>, Element<u64>)> {
    let (p, a3, a8, b2, b7) = DICHOTOMY_ENTROPOID;
    let e = EntropoidParams::from_u64(p, a3, a8, b2, b7)?;
    let g = e.elem(DICHOTOMY_GENERATOR.0, DICHOTOMY_GENERATOR.1);
    Ok((e, g))
}

/// `|<x>_2|` and `|<x>|` for every `x`, indexed `[x1][x2]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderGrids {
    pub p: u64,
    pub span2: Vec<Vec<u64>>,
    pub span: Vec<Vec<u64>>,
    /// Components of the multiplicative zero; its row and column hold the
    /// non-invertible elements.
    pub zero: (u64, u64),
}

impl OrderGrids {
    /// Cells whose span is all of the unit quasigroup.
    pub fn full_order_cells(&self) -> Vec<(u64, u64)> {
        let n = (self.p - 1) * (self.p - 1);
        self.cells_where(|i, j| self.span[i][j] == n)
    }

    /// Cells reaching the largest possible binary-power orbit.
    pub fn full_span2_cells(&self) -> Vec<(u64, u64)> {
        let n = 2 * (self.p - 1);
        self.cells_where(|i, j| self.span2[i][j] == n)
    }

    pub fn cells_with_span(&self, size: u64) -> Vec<(u64, u64)> {
        self.cells_where(|i, j| self.span[i][j] == size)
    }

    fn cells_where(&self, f: impl Fn(usize, usize) -> bool) -> Vec<(u64, u64)> {
        let p = self.p as usize;
        (0..p)
            .flat_map(|i| (0..p).map(move |j| (i, j)))
            .filter(|&(i, j)| f(i, j))
            .map(|(i, j)| (i as u64, j as u64))
            .collect()
    }
}

pub fn order_grids(e: &EntropoidParams<u64>) -> Result<OrderGrids> {
    let p = e
        .p()
        .to_u64()
        .filter(|&p| p <= 64)
        .ok_or_else(|| Error::TooLarge(format!("order grid for p = {}", e.p())))?;
    let rows: Vec<Result<(Vec<u64>, Vec<u64>)>> = (0..p)
        .into_par_iter()
        .map(|i| {
            let mut r2 = Vec::with_capacity(p as usize);
            let mut r = Vec::with_capacity(p as usize);
            for j in 0..p {
                let x = e.elem(i, j);
                r2.push(span2(e, &x, DEFAULT_GUARD)?.len() as u64);
                r.push(span(e, &x, DEFAULT_GUARD)?.len() as u64);
            }
            Ok((r2, r))
        })
        .collect();
    let (mut s2, mut s) = (Vec::new(), Vec::new());
    for row in rows {
        let (a, b) = row?;
        s2.push(a);
        s.push(b);
    }
    Ok(OrderGrids {
        p,
        span2: s2,
        span: s,
        zero: e.pair_u64(e.zero_star()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(title: impl Into<String>, header: &[&str]) -> Self {
        Table {
            title: title.into(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols = self.header.len();
        let mut width = vec![0; cols];
        for r in std::iter::once(&self.header).chain(&self.rows) {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.len());
            }
        }
        writeln!(f, "# {}", self.title)?;
        for r in std::iter::once(&self.header).chain(&self.rows) {
            let line: Vec<String> = r.iter().zip(&width).map(|(c, w)| format!("{c:>w$}")).collect();
            writeln!(f, "{}", line.join(" ").trim_end())?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableSet {
    E7,
    E11,
    E13,
    E19,
    E23,
    /// Partition census over the 16-bit reference entropoid.
    Dichotomy,
}

impl TableSet {
    pub const ALL: [TableSet; 6] = [
        TableSet::E7,
        TableSet::E11,
        TableSet::E13,
        TableSet::E19,
        TableSet::E23,
        TableSet::Dichotomy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableSet::E7 => "e7",
            TableSet::E11 => "e11",
            TableSet::E13 => "e13",
            TableSet::E19 => "e19",
            TableSet::E23 => "e23",
            TableSet::Dichotomy => "dichotomy",
        }
    }

    fn prime(self) -> Option<u64> {
        match self {
            TableSet::E7 => Some(7),
            TableSet::E11 => Some(11),
            TableSet::E13 => Some(13),
            TableSet::E19 => Some(19),
            TableSet::E23 => Some(23),
            TableSet::Dichotomy => None,
        }
    }
}

impl FromStr for TableSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableSet::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unsupported(format!("table set '{s}'")))
    }
}

impl fmt::Display for TableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn reproduce_tables(which: TableSet) -> Result<Vec<Table>> {
    match which.prime() {
        Some(p) => grid_tables(&small_entropoid(p)?),
        None => dichotomy_tables(),
    }
}

fn grid_table(title: String, p: u64, grid: &[Vec<u64>]) -> Table {
    let head: Vec<String> = std::iter::once("x1\\x2".to_string())
        .chain((0..p).map(|j| j.to_string()))
        .collect();
    let mut t = Table::new(title, &[]);
    t.header = head;
    for (i, row) in grid.iter().enumerate() {
        t.rows.push(std::iter::once(i.to_string()).chain(row.iter().map(u64::to_string)).collect());
    }
    t
}

fn cell_list(cells: &[(u64, u64)]) -> String {
    cells.iter().map(|(a, b)| format!("({a} {b})")).collect::<Vec<_>>().join(" ")
}

fn grid_tables(e: &EntropoidParams<u64>) -> Result<Vec<Table>> {
    let g = order_grids(e)?;
    let p = g.p;
    let c = e.constants();
    let name = format!("E_{p}^2({}, {}, {}, {})", c[0], c[1], c[2], c[3]);
    let mut hl = Table::new(format!("{name}: highlighted cells"), &["class", "count", "cells"]);
    let zero_row: Vec<(u64, u64)> = (0..p).map(|j| (g.zero.0, j)).collect();
    let zero_col: Vec<(u64, u64)> = (0..p).map(|i| (i, g.zero.1)).collect();
    let full = g.full_order_cells();
    let full2 = g.full_span2_cells();
    for (class, cells) in [
        (format!("non-invertible row x1 = {}", g.zero.0), zero_row),
        (format!("non-invertible column x2 = {}", g.zero.1), zero_col),
        (format!("|<x>| = {}", (p - 1) * (p - 1)), full),
        (format!("|<x>_2| = {}", 2 * (p - 1)), full2),
    ] {
        hl.rows.push(vec![class, cells.len().to_string(), cell_list(&cells)]);
    }
    Ok(vec![
        grid_table(format!("{name}: |<x>_2|"), p, &g.span2),
        grid_table(format!("{name}: |<x>|"), p, &g.span),
        hl,
    ])
}

/// Levels of the census at `base` that fit the enumeration limit, capped at 9.
pub fn census_levels(base: u32) -> Vec<u32> {
    (2..=9)
        .take_while(|&i| ((base - 1) as u64).checked_pow(i).is_some_and(|t| t <= PARTITION_LIMIT))
        .collect()
}

fn detailed_table(e: &EntropoidParams<u64>, base: u32, reports: &[PartitionReport<u64>]) -> Table {
    let mut t = Table::new(
        format!("base {base}: classes of g^(b^(i-1), L(i), b)"),
        &["i", "r_i", "g_ij", "n_ij", "Hmin", "H2", "H1"],
    );
    for r in reports {
        for (k, c) in r.classes.iter().enumerate() {
            let (h, h2, h1) = if k == 0 {
                (format!("{:.3}", r.hmin), format!("{:.3}", r.h2), format!("{:.3}", r.h1))
            } else {
                Default::default()
            };
            t.rows.push(vec![
                r.level.to_string(),
                r.r().to_string(),
                e.show(&c.representative),
                c.size.to_string(),
                h,
                h2,
                h1,
            ]);
        }
    }
    t
}

fn summary_table(base: u32, reports: &[PartitionReport<u64>]) -> Table {
    let mut t = Table::new(
        format!("base {base}: summary"),
        &["i", "r_i", "min n_ij", "max n_ij", "Hmin", "H2", "H1"],
    );
    for r in reports {
        t.rows.push(vec![
            r.level.to_string(),
            r.r().to_string(),
            r.min_size().to_string(),
            r.max_size().to_string(),
            format!("{:.3}", r.hmin),
            format!("{:.3}", r.h2),
            format!("{:.3}", r.h1),
        ]);
    }
    t
}

/// Census reports for `base` at every level from [`census_levels`].
pub fn dichotomy_reports(base: u32) -> Result<Vec<PartitionReport<u64>>> {
    let (e, g) = dichotomy_entropoid()?;
    let levels = if base == 3 { vec![2, 3, 4] } else { census_levels(base) };
    levels.into_iter().map(|i| partition_xi(&e, &g, base, i)).collect()
}

fn dichotomy_tables() -> Result<Vec<Table>> {
    let (e, _) = dichotomy_entropoid()?;
    let mut out = vec![
        detailed_table(&e, 3, &dichotomy_reports(3)?),
        detailed_table(&e, 4, &dichotomy_reports(4)?),
    ];
    for base in 5..=8 {
        out.push(summary_table(base, &dichotomy_reports(base)?));
    }
    Ok(out)
}
