//! The dotted-grid tree model: grids, validation of the tree conditions,
//! completeness, associated permutations, row statistics, labelled trees, and
//! exhaustive enumeration of all complete trees over a given leaf permutation.
//!
//! Grid convention: columns `1..=n` left to right, rows `1..=m` top to bottom.
//! Every dot other than the top-left one has exactly one parent: the nearest
//! dot above it in its column, or the nearest dot to its left in its row. In a
//! complete tree every internal dot has exactly two children (one below in its
//! column, one to its right in its row), and each row and column carries
//! exactly one leaf, so the leaves trace out a permutation.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::perm::Permutation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CnatError {
    #[error("grid dimensions must be at least 1x1")]
    ZeroSize,
    #[error("dot ({0}, {1}) outside the grid")]
    OutOfBounds(u32, u32),
    #[error("duplicate dot ({0}, {1})")]
    DuplicateDot(u32, u32),
    #[error("row {0} has no dot")]
    EmptyRow(u32),
    #[error("column {0} has no dot")]
    EmptyColumn(u32),
    #[error("dot ({0}, {1}) has both a dot above and a dot to its left")]
    AmbiguousParent(u32, u32),
    #[error("dot ({0}, {1}) has neither a dot above nor a dot to its left")]
    MissingParent(u32, u32),
    #[error("incomplete: dot ({0}, {1}) has only one child")]
    OnlyOneChild(u32, u32),
    #[error("associated permutation is not decreasing")]
    NotUpperDiagonal,
    #[error("expected {expected} labels, got {got}")]
    LabelCountMismatch { expected: usize, got: usize },
    #[error("labels must be strictly increasing")]
    LabelsNotIncreasing,
    #[error("bad grid text: {0}")]
    BadFormat(String),
}

/// A cell position, column first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(u32, u32)", into = "(u32, u32)")]
pub struct Dot {
    pub col: u32,
    pub row: u32,
}

impl Dot {
    pub fn new(col: u32, row: u32) -> Self {
        Dot { col, row }
    }

    /// Canonical dot order: by row, then column.
    fn key(&self) -> (u32, u32) {
        (self.row, self.col)
    }
}

impl From<(u32, u32)> for Dot {
    fn from((col, row): (u32, u32)) -> Self {
        Dot { col, row }
    }
}

impl From<Dot> for (u32, u32) {
    fn from(d: Dot) -> (u32, u32) {
        (d.col, d.row)
    }
}

impl PartialOrd for Dot {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dot {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

/// A rectangular grid with a set of dotted cells, before any tree validation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "GridData", into = "GridData")]
pub struct DotGrid {
    cols: u32,
    rows: u32,
    dots: Vec<Dot>, // sorted by (row, col)
}

#[derive(Serialize, Deserialize)]
struct GridData {
    cols: u32,
    rows: u32,
    dots: Vec<Dot>,
}

impl TryFrom<GridData> for DotGrid {
    type Error = CnatError;
    fn try_from(d: GridData) -> Result<Self, CnatError> {
        DotGrid::new(d.cols, d.rows, d.dots)
    }
}

impl From<DotGrid> for GridData {
    fn from(g: DotGrid) -> GridData {
        GridData {
            cols: g.cols,
            rows: g.rows,
            dots: g.dots,
        }
    }
}

impl DotGrid {
    pub fn new(cols: u32, rows: u32, mut dots: Vec<Dot>) -> Result<Self, CnatError> {
        if cols == 0 || rows == 0 {
            return Err(CnatError::ZeroSize);
        }
        for d in &dots {
            if d.col == 0 || d.col > cols || d.row == 0 || d.row > rows {
                return Err(CnatError::OutOfBounds(d.col, d.row));
            }
        }
        dots.sort_unstable();
        if let Some(w) = dots.windows(2).find(|w| w[0] == w[1]) {
            return Err(CnatError::DuplicateDot(w[0].col, w[0].row));
        }
        Ok(DotGrid { cols, rows, dots })
    }

    pub fn cols(&self) -> u32 {
        self.cols
    }

    pub fn rows(&self) -> u32 {
        self.rows
    }

    /// Dots sorted by (row, column).
    pub fn dots(&self) -> &[Dot] {
        &self.dots
    }

    pub fn contains(&self, col: u32, row: u32) -> bool {
        self.dots.binary_search(&Dot::new(col, row)).is_ok()
    }

    /// Text form: first line `m n` (rows, then columns), then one `c r` line
    /// per dot.
    pub fn from_text(text: &str) -> Result<Self, CnatError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| CnatError::BadFormat("missing header".into()))?;
        let mut it = header.split_whitespace();
        let rows: u32 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| CnatError::BadFormat("bad row count".into()))?;
        let cols: u32 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| CnatError::BadFormat("bad column count".into()))?;
        let mut dots = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace();
            let c: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| CnatError::BadFormat(format!("bad dot line `{line}`")))?;
            let r: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| CnatError::BadFormat(format!("bad dot line `{line}`")))?;
            dots.push(Dot::new(c, r));
        }
        DotGrid::new(cols, rows, dots)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.rows, self.cols);
        for d in &self.dots {
            let _ = writeln!(s, "{} {}", d.col, d.row);
        }
        s
    }
}

/// A validated complete non-ambiguous tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DotGrid", into = "DotGrid")]
pub struct Cnat {
    grid: DotGrid,
    col_rows: Vec<Vec<u32>>, // per column (0-based), the sorted rows of its dots
    row_cols: Vec<Vec<u32>>, // per row (0-based), the sorted columns of its dots
}

impl TryFrom<DotGrid> for Cnat {
    type Error = CnatError;
    fn try_from(grid: DotGrid) -> Result<Self, CnatError> {
        Cnat::validate(grid)
    }
}

impl From<Cnat> for DotGrid {
    fn from(t: Cnat) -> DotGrid {
        t.grid
    }
}

impl Cnat {
    /// Checks the tree conditions and completeness, reporting the first
    /// violation: an empty row or column, a dot with an ambiguous or missing
    /// parent, or an internal dot with a single child.
    pub fn validate(grid: DotGrid) -> Result<Cnat, CnatError> {
        let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); grid.cols as usize];
        let mut row_cols: Vec<Vec<u32>> = vec![Vec::new(); grid.rows as usize];
        for d in grid.dots() {
            col_rows[d.col as usize - 1].push(d.row);
            row_cols[d.row as usize - 1].push(d.col);
        }
        for rows in &mut col_rows {
            rows.sort_unstable();
        }
        // Dots are already (row, col)-sorted, so row_cols is sorted.

        for (r, cols) in row_cols.iter().enumerate() {
            if cols.is_empty() {
                return Err(CnatError::EmptyRow(r as u32 + 1));
            }
        }
        for (c, rows) in col_rows.iter().enumerate() {
            if rows.is_empty() {
                return Err(CnatError::EmptyColumn(c as u32 + 1));
            }
        }
        for d in grid.dots() {
            if d.col == 1 && d.row == 1 {
                continue;
            }
            let above = col_rows[d.col as usize - 1][0] < d.row;
            let left = row_cols[d.row as usize - 1][0] < d.col;
            match (above, left) {
                (true, true) => return Err(CnatError::AmbiguousParent(d.col, d.row)),
                (false, false) => return Err(CnatError::MissingParent(d.col, d.row)),
                _ => {}
            }
        }
        for d in grid.dots() {
            let below = *col_rows[d.col as usize - 1].last().unwrap() > d.row;
            let right = *row_cols[d.row as usize - 1].last().unwrap() > d.col;
            if below != right {
                return Err(CnatError::OnlyOneChild(d.col, d.row));
            }
        }
        // The conditions force one leaf per row and per column, hence a
        // square grid.
        debug_assert_eq!(grid.cols, grid.rows);
        Ok(Cnat {
            grid,
            col_rows,
            row_cols,
        })
    }

    pub fn from_dots(n: u32, dots: Vec<Dot>) -> Result<Cnat, CnatError> {
        Cnat::validate(DotGrid::new(n, n, dots)?)
    }

    pub fn single_dot() -> Cnat {
        Cnat::from_dots(1, vec![Dot::new(1, 1)]).unwrap()
    }

    pub fn grid(&self) -> &DotGrid {
        &self.grid
    }

    /// Number of leaf dots (one more than the number of internal dots).
    pub fn size(&self) -> u32 {
        self.grid.cols
    }

    pub fn dots(&self) -> &[Dot] {
        self.grid.dots()
    }

    pub fn is_leaf(&self, d: Dot) -> bool {
        *col_last(&self.col_rows, d.col) == d.row && *row_last(&self.row_cols, d.row) == d.col
    }

    /// Leaf dots: the bottom-most dot of each column, equivalently the
    /// right-most dot of each row.
    pub fn leaves(&self) -> Vec<Dot> {
        self.dots().iter().copied().filter(|&d| self.is_leaf(d)).collect()
    }

    pub fn internal_dots(&self) -> Vec<Dot> {
        self.dots().iter().copied().filter(|&d| !self.is_leaf(d)).collect()
    }

    /// The nearest dot below `d` in its column, which is `d`'s column child
    /// when `d` is internal.
    pub fn below_child(&self, d: Dot) -> Option<Dot> {
        let rows = &self.col_rows[d.col as usize - 1];
        let i = rows.partition_point(|&r| r <= d.row);
        rows.get(i).map(|&r| Dot::new(d.col, r))
    }

    /// The nearest dot to the right of `d` in its row.
    pub fn right_child(&self, d: Dot) -> Option<Dot> {
        let cols = &self.row_cols[d.row as usize - 1];
        let i = cols.partition_point(|&c| c <= d.col);
        cols.get(i).map(|&c| Dot::new(c, d.row))
    }

    /// All dots of the subtree rooted at `root` (inclusive).
    pub fn subtree_dots(&self, root: Dot) -> Vec<Dot> {
        let mut out = Vec::new();
        let mut stack = vec![root];
        while let Some(d) = stack.pop() {
            out.push(d);
            if !self.is_leaf(d) {
                stack.push(self.below_child(d).unwrap());
                stack.push(self.right_child(d).unwrap());
            }
        }
        out.sort_unstable();
        out
    }

    /// The permutation traced by the leaf dots: leaf of column `i` sits in row
    /// `p_i`.
    pub fn associated_permutation(&self) -> Permutation {
        let word: Vec<u32> = (1..=self.size())
            .map(|c| *col_last(&self.col_rows, c))
            .collect();
        let p = Permutation::new(word).expect("one leaf per row and column");
        debug_assert!(p.is_irreducible());
        p
    }

    pub fn is_upper_diagonal(&self) -> bool {
        self.associated_permutation() == Permutation::decreasing(self.size() as usize)
    }

    /// Columns of the internal dots in the top row, ascending.
    pub fn top_row_internal_cols(&self) -> Vec<u32> {
        self.row_cols[0]
            .iter()
            .copied()
            .filter(|&c| !self.is_leaf(Dot::new(c, 1)))
            .collect()
    }

    /// `empty_rows` counts rows whose only dot is their leaf.
    pub fn row_statistics(&self) -> RowStatistics {
        let empty_rows = self
            .row_cols
            .iter()
            .enumerate()
            .filter(|(r, cols)| {
                cols.len() == 1 && self.is_leaf(Dot::new(cols[0], *r as u32 + 1))
            })
            .count() as u32;
        RowStatistics {
            empty_rows,
            top_row_internal_columns: self.top_row_internal_cols(),
        }
    }
}

fn col_last(col_rows: &[Vec<u32>], col: u32) -> &u32 {
    col_rows[col as usize - 1].last().unwrap()
}

fn row_last(row_cols: &[Vec<u32>], row: u32) -> &u32 {
    row_cols[row as usize - 1].last().unwrap()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowStatistics {
    pub empty_rows: u32,
    pub top_row_internal_columns: Vec<u32>,
}

/// All complete trees on the `n x n` grid whose leaves trace exactly `p`, in
/// lexicographic order of their (row, column)-sorted dot sets. Reducible
/// permutations have none.
///
/// The search scans cells in column-major order, deciding internal-dot
/// placement cell by cell. Internal dots may only sit strictly above their
/// column's leaf and strictly left of their row's leaf; at that point the
/// parent rule ("nearest dot above, or nearest dot to the left, never both")
/// only involves cells already decided, so violations prune immediately.
pub fn enumerate_cnats(p: &Permutation) -> Vec<Cnat> {
    let n = p.len();
    if n == 0 || !p.is_irreducible() {
        return Vec::new();
    }
    if n == 1 {
        return vec![Cnat::single_dot()];
    }
    let leaf_row: Vec<u32> = p.word().to_vec(); // leaf of column x is at row p_x
    let mut leaf_col = vec![0u32; n]; // leaf of row y
    for (i, &v) in p.word().iter().enumerate() {
        leaf_col[v as usize - 1] = i as u32 + 1;
    }

    let mut search = CnatSearch {
        n,
        leaf_row,
        leaf_col,
        col_occupied: vec![false; n],
        row_occupied: vec![false; n],
        internals: Vec::with_capacity(n - 1),
        results: Vec::new(),
    };
    search.descend(0);

    let mut dot_sets = search.results;
    dot_sets.sort_unstable();
    dot_sets
        .into_iter()
        .map(|dots| Cnat::from_dots(n as u32, dots).expect("search output is a valid tree"))
        .collect()
}

struct CnatSearch {
    n: usize,
    leaf_row: Vec<u32>,
    leaf_col: Vec<u32>,
    col_occupied: Vec<bool>, // column has a dot in some already-scanned row
    row_occupied: Vec<bool>,
    internals: Vec<Dot>,
    results: Vec<Vec<Dot>>,
}

impl CnatSearch {
    fn descend(&mut self, cell: usize) {
        if cell == self.n * self.n {
            let mut dots = self.internals.clone();
            dots.extend(
                self.leaf_row
                    .iter()
                    .enumerate()
                    .map(|(i, &r)| Dot::new(i as u32 + 1, r)),
            );
            dots.sort_unstable();
            self.results.push(dots);
            return;
        }
        let x = cell / self.n; // 0-based column
        let y = cell % self.n; // 0-based row
        let has_above = self.col_occupied[x];
        let has_left = self.row_occupied[y];

        if self.leaf_row[x] == y as u32 + 1 {
            // Fixed leaf cell: its parent rule must already hold.
            if has_above ^ has_left {
                self.enter(x, y, cell);
            }
            return;
        }

        let is_root_cell = x == 0 && y == 0;
        if !is_root_cell {
            self.descend(cell + 1);
        }
        let admissible =
            (y as u32 + 1) < self.leaf_row[x] && (x as u32 + 1) < self.leaf_col[y];
        if admissible {
            let parent_ok = if is_root_cell {
                true
            } else {
                has_above ^ has_left
            };
            if parent_ok {
                self.internals.push(Dot::new(x as u32 + 1, y as u32 + 1));
                self.enter(x, y, cell);
                self.internals.pop();
            }
        }
    }

    fn enter(&mut self, x: usize, y: usize, cell: usize) {
        let (c0, r0) = (self.col_occupied[x], self.row_occupied[y]);
        self.col_occupied[x] = true;
        self.row_occupied[y] = true;
        self.descend(cell + 1);
        self.col_occupied[x] = c0;
        self.row_occupied[y] = r0;
    }
}

/// Number of complete trees associated with `p`: zero for reducible input,
/// otherwise the count of rooted acyclic orientations of the permutation
/// graph (with the lowest-labelled sink), which the enumeration matches.
pub fn cnat_count(p: &Permutation) -> u64 {
    if p.is_empty() || !p.is_irreducible() {
        return 0;
    }
    Graph::permutation_graph(p)
        .count_rooted_acyclic_orientations(1)
        .expect("permutation graph of an irreducible permutation is connected")
}

/// An upper-diagonal tree whose non-rightmost columns carry strictly
/// increasing labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LabelledCnatData", into = "LabelledCnatData")]
pub struct LabelledCnat {
    tree: Cnat,
    labels: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct LabelledCnatData {
    labels: Vec<u32>,
    cnat: DotGrid,
}

impl TryFrom<LabelledCnatData> for LabelledCnat {
    type Error = CnatError;
    fn try_from(d: LabelledCnatData) -> Result<Self, CnatError> {
        LabelledCnat::new(Cnat::validate(d.cnat)?, d.labels)
    }
}

impl From<LabelledCnat> for LabelledCnatData {
    fn from(t: LabelledCnat) -> LabelledCnatData {
        LabelledCnatData {
            labels: t.labels,
            cnat: t.tree.grid,
        }
    }
}

impl LabelledCnat {
    pub fn new(tree: Cnat, labels: Vec<u32>) -> Result<Self, CnatError> {
        if !tree.is_upper_diagonal() {
            return Err(CnatError::NotUpperDiagonal);
        }
        if labels.len() + 1 != tree.size() as usize {
            return Err(CnatError::LabelCountMismatch {
                expected: tree.size() as usize - 1,
                got: labels.len(),
            });
        }
        if !labels.windows(2).all(|w| w[0] < w[1]) {
            return Err(CnatError::LabelsNotIncreasing);
        }
        Ok(LabelledCnat { tree, labels })
    }

    /// Views an upper-diagonal tree of size `n` as labelled by `1..=n-1`.
    pub fn with_default_labels(tree: Cnat) -> Result<Self, CnatError> {
        let labels = (1..tree.size()).collect();
        LabelledCnat::new(tree, labels)
    }

    pub fn tree(&self) -> &Cnat {
        &self.tree
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn size(&self) -> u32 {
        self.tree.size()
    }

    /// Label of the (non-rightmost) column `col`.
    pub fn label_of_col(&self, col: u32) -> u32 {
        self.labels[col as usize - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(col: u32, row: u32) -> Dot {
        Dot::new(col, row)
    }

    /// The worked 5x5 complete tree with permutation 45312.
    fn example_cnat() -> Cnat {
        Cnat::from_dots(
            5,
            vec![
                d(1, 1),
                d(3, 1),
                d(1, 2),
                d(2, 2),
                d(1, 4),
                d(2, 5),
                d(3, 3),
                d(4, 1),
                d(5, 2),
            ],
        )
        .unwrap()
    }

    #[test]
    fn validates_the_worked_example() {
        let t = example_cnat();
        assert_eq!(t.size(), 5);
        assert_eq!(t.dots().len(), 9);
        assert_eq!(t.internal_dots().len(), 4);
        assert_eq!(t.associated_permutation(), "45312".parse().unwrap());
    }

    #[test]
    fn rejects_incomplete_grid() {
        // 5x4 grid where the dot (3,1) has a child below but none to its right.
        let grid = DotGrid::new(
            4,
            5,
            vec![
                d(1, 1),
                d(3, 1),
                d(1, 2),
                d(2, 2),
                d(1, 4),
                d(2, 5),
                d(3, 3),
                d(4, 2),
            ],
        )
        .unwrap();
        assert_eq!(Cnat::validate(grid), Err(CnatError::OnlyOneChild(3, 1)));
    }

    #[test]
    fn rejects_parent_violations() {
        // (2,2) has dots both above (2,1) and to the left (1,2).
        let grid = DotGrid::new(
            2,
            2,
            vec![d(1, 1), d(2, 1), d(1, 2), d(2, 2)],
        )
        .unwrap();
        assert_eq!(Cnat::validate(grid), Err(CnatError::AmbiguousParent(2, 2)));

        // (2,2) alone in its row and column below/right of everything.
        let grid = DotGrid::new(3, 3, vec![d(1, 1), d(3, 1), d(1, 3), d(2, 2)]).unwrap();
        assert_eq!(Cnat::validate(grid), Err(CnatError::MissingParent(2, 2)));

        let grid = DotGrid::new(2, 2, vec![d(1, 1), d(2, 1), d(1, 2)]).unwrap();
        assert!(Cnat::validate(grid).is_ok());
    }

    #[test]
    fn rejects_empty_rows_and_columns() {
        let grid = DotGrid::new(2, 2, vec![d(1, 1), d(2, 1)]).unwrap();
        assert_eq!(Cnat::validate(grid), Err(CnatError::EmptyRow(2)));
        let grid = DotGrid::new(2, 2, vec![d(1, 1), d(1, 2)]).unwrap();
        assert_eq!(Cnat::validate(grid), Err(CnatError::EmptyColumn(2)));
    }

    #[test]
    fn single_dot_tree() {
        let t = Cnat::single_dot();
        assert_eq!(t.size(), 1);
        assert_eq!(t.associated_permutation(), "1".parse().unwrap());
        let stats = t.row_statistics();
        assert_eq!(stats.empty_rows, 1);
        assert!(stats.top_row_internal_columns.is_empty());
    }

    #[test]
    fn children_and_subtrees() {
        let t = example_cnat();
        assert_eq!(t.below_child(d(1, 1)), Some(d(1, 2)));
        assert_eq!(t.right_child(d(1, 1)), Some(d(3, 1)));
        assert_eq!(t.below_child(d(3, 1)), Some(d(3, 3)));
        assert_eq!(t.right_child(d(3, 1)), Some(d(4, 1)));
        assert_eq!(t.subtree_dots(d(3, 1)), vec![d(3, 1), d(4, 1), d(3, 3)]);
        assert!(t.is_leaf(d(2, 5)));
        assert!(!t.is_leaf(d(2, 2)));
    }

    #[test]
    fn leaf_structure() {
        let t = example_cnat();
        for leaf in t.leaves() {
            // right-most of its row, bottom-most of its column
            assert!(t.right_child(leaf).is_none());
            assert!(t.below_child(leaf).is_none());
        }
        assert_eq!(t.leaves().len(), 5);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_cnats(&Permutation::decreasing(4)).len(), 6);
        assert_eq!(enumerate_cnats(&"3412".parse().unwrap()).len(), 3);
        assert!(enumerate_cnats(&"132".parse().unwrap()).is_empty());
        assert_eq!(enumerate_cnats(&"321".parse().unwrap()).len(), 2);
        assert_eq!(enumerate_cnats(&"312".parse().unwrap()).len(), 1);
        assert_eq!(enumerate_cnats(&"1".parse().unwrap()).len(), 1);
    }

    #[test]
    fn enumerated_trees_revalidate_with_the_right_permutation() {
        let p: Permutation = "45312".parse().unwrap();
        let trees = enumerate_cnats(&p);
        assert_eq!(trees.len() as u64, cnat_count(&p));
        for t in &trees {
            assert_eq!(t.associated_permutation(), p);
            assert_eq!(t.internal_dots().len() as u32, t.size() - 1);
            let again = Cnat::validate(t.grid().clone()).unwrap();
            assert_eq!(&again, t);
        }
        assert!(trees.contains(&example_cnat()));
    }

    #[test]
    fn count_matches_named_values() {
        assert_eq!(cnat_count(&"321".parse().unwrap()), 2);
        assert_eq!(cnat_count(&"132".parse().unwrap()), 0);
        for n in 1..=6 {
            let expected: u64 = (1..n as u64).product();
            assert_eq!(cnat_count(&Permutation::decreasing(n)), expected);
        }
    }

    #[test]
    fn row_statistics_of_sized_two_tree() {
        let t = Cnat::from_dots(2, vec![d(1, 1), d(1, 2), d(2, 1)]).unwrap();
        let stats = t.row_statistics();
        assert_eq!(stats.empty_rows, 1);
        assert_eq!(stats.top_row_internal_columns, vec![1]);
    }

    #[test]
    fn labelled_tree_validation() {
        let t = Cnat::from_dots(2, vec![d(1, 1), d(1, 2), d(2, 1)]).unwrap();
        assert!(LabelledCnat::new(t.clone(), vec![4]).is_ok());
        assert_eq!(
            LabelledCnat::new(t.clone(), vec![4, 5]),
            Err(CnatError::LabelCountMismatch {
                expected: 1,
                got: 2
            })
        );
        let not_upper = example_cnat();
        assert_eq!(
            LabelledCnat::new(not_upper, vec![1, 2, 3, 4]),
            Err(CnatError::NotUpperDiagonal)
        );
        // First-column chain of size 3, with permutation 321.
        let chain =
            Cnat::from_dots(3, vec![d(1, 1), d(1, 2), d(1, 3), d(2, 2), d(3, 1)]).unwrap();
        let labelled = LabelledCnat::with_default_labels(chain).unwrap();
        assert_eq!(labelled.labels(), &[1, 2]);
        assert_eq!(labelled.label_of_col(2), 2);
    }

    #[test]
    fn text_and_json_round_trips() {
        let t = example_cnat();
        let text = t.grid().to_text();
        assert!(text.starts_with("5 5\n"));
        let parsed = Cnat::validate(DotGrid::from_text(&text).unwrap()).unwrap();
        assert_eq!(parsed, t);

        let js = serde_json::to_string(&t).unwrap();
        let back: Cnat = serde_json::from_str(&js).unwrap();
        assert_eq!(back, t);
    }
}
