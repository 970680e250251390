//! Rectangular families of generator indices, decreasing along rows and
//! increasing down columns. Such a grid spells the same braid whether it is
//! read row by row or column by column, which is what the associativity
//! certificates are built from.

use crate::error::{Error, Result};
use crate::word::BraidWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    RowWise,
    ColumnWise,
}

/// `entry(i, j)` is the index of the generator in row `i`, column `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexGrid {
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl IndexGrid {
    /// Grid from explicit rows; every row must have the same length.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Grid("ragged rows".into()));
        }
        let grid = IndexGrid {
            rows: if cols == 0 { 0 } else { rows.len() },
            cols: if rows.is_empty() { 0 } else { cols },
            entries: rows.into_iter().flatten().collect(),
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> u32) -> Result<Self> {
        let entries = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| f(i, j));
        let grid = IndexGrid {
            rows: if cols == 0 { 0 } else { rows },
            cols: if rows == 0 { 0 } else { cols },
            entries: entries.collect(),
        };
        grid.validate()?;
        Ok(grid)
    }

    /// The unit-step grid written `[tl → tr; bl → br]`: entries drop by one
    /// along a row and grow by one down a column. Zero rows or columns give
    /// the empty grid; the four corners must be consistent.
    pub fn bracket(tl: i64, tr: i64, bl: i64, br: i64) -> Result<Self> {
        let cols = tl - tr + 1;
        let rows = bl - tl + 1;
        if cols < 0 || rows < 0 {
            return Err(Error::Grid(format!("bracket [{tl} -> {tr}; {bl} -> {br}] has negative size")));
        }
        if br != bl - tl + tr {
            return Err(Error::Grid(format!("bracket [{tl} -> {tr}; {bl} -> {br}] has inconsistent corners")));
        }
        if rows > 0 && cols > 0 && tr < 1 {
            return Err(Error::Grid(format!("bracket entry {tr} is not a positive index")));
        }
        let (rows, cols) = (rows as usize, cols as usize);
        Self::from_fn(rows, cols, |i, j| (tl + i as i64 - j as i64) as u32)
    }

    fn validate(&self) -> Result<()> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.entry(i, j);
                if v == 0 {
                    return Err(Error::Grid("index 0".into()));
                }
                if j + 1 < self.cols && self.entry(i, j + 1) >= v {
                    return Err(Error::Grid(format!("row {} is not decreasing", i + 1)));
                }
                if i + 1 < self.rows && self.entry(i + 1, j) <= v {
                    return Err(Error::Grid(format!("column {} is not increasing", j + 1)));
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    /// Row-wise reads `μ_1 ⋯ μ_g`, column-wise reads `λ_1 ⋯ λ_ℓ`.
    pub fn word(&self, order: Order) -> BraidWord {
        match order {
            Order::RowWise => BraidWord::positive(self.entries.iter().copied()),
            Order::ColumnWise => BraidWord::positive(
                (0..self.cols).flat_map(|j| (0..self.rows).map(move |i| (i, j))).map(|(i, j)| self.entry(i, j)),
            ),
        }
    }
}

pub fn grid_word(grid: &IndexGrid, order: Order) -> BraidWord {
    grid.word(order)
}
