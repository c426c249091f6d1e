//! Permutation tableaux.
//!
//! A tableau is a Young diagram (rows of weakly decreasing length, trailing
//! zero-length rows allowed) with some boxes holding a dot, such that every
//! column has a dot and no empty box sees a dot both above it in its column
//! and to its left in its row. Its semiperimeter `rows + columns` is the size
//! of the permutation it encodes under [`phi`](PermutationTableau::phi).

mod diagram;
mod enumerate;
mod labeling;
mod text;

use std::fmt;

use thiserror::Error;

pub use diagram::{Diagram, Heading, Target, ZigzagPath};
pub use enumerate::{enumerate_tableaux, fillings, shapes, TableauStream};
pub use labeling::{BorderLabeling, Step, StepKind};
pub use text::ParseError;

/// A box position, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

/// Row lengths of a Young diagram, top to bottom.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shape {
    parts: Vec<usize>,
}

impl Shape {
    pub fn new(parts: Vec<usize>) -> Result<Self, TableauError> {
        if let Some(idx) = parts.windows(2).position(|w| w[0] < w[1]) {
            return Err(TableauError::NotPartition { row: idx + 2 });
        }
        Ok(Shape { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn row_count(&self) -> usize {
        self.parts.len()
    }

    pub fn column_count(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn semiperimeter(&self) -> usize {
        self.row_count() + self.column_count()
    }

    /// Length of row `row` (1-based).
    pub fn row_len(&self, row: usize) -> usize {
        self.parts[row - 1]
    }

    /// Number of boxes in column `col` (1-based).
    pub fn column_len(&self, col: usize) -> usize {
        self.parts.partition_point(|&len| len >= col)
    }

    pub fn box_count(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1
            && cell.row <= self.row_count()
            && cell.col >= 1
            && cell.col <= self.row_len(cell.row)
    }
}

/// A broken tableau rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Rule (1): the column holds no dot.
    ColumnWithoutDot { col: usize },
    /// Rule (2): the box is empty but has a dot above and a dot to its left.
    EmptyBoxBetweenDots { cell: Cell },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ColumnWithoutDot { col } => {
                write!(f, "rule (1): column {col} contains no dot")
            }
            Violation::EmptyBoxBetweenDots { cell } => write!(
                f,
                "rule (2): empty box {cell} has a dot above it and a dot to its left"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violations(pub Vec<Violation>);

impl fmt::Display for Violations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, v) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TableauError {
    #[error("row lengths must be weakly decreasing: row {row} is longer than the row above")]
    NotPartition { row: usize },
    #[error("dot grid has {found} boxes, shape needs {expected}")]
    GridSize { expected: usize, found: usize },
    #[error("cell {cell} is outside the shape")]
    OutsideShape { cell: Cell },
    #[error("invalid permutation tableau: {0}")]
    Invalid(Violations),
    #[error("row {row} is empty; expected a tableau with no empty rows")]
    EmptyRow { row: usize },
    #[error("label {label} is outside 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A shape together with a dot filling, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermutationTableau {
    shape: Shape,
    dots: Vec<bool>,
}

impl PermutationTableau {
    /// Pairs a shape with its row-major dot grid. Only the grid size is
    /// checked here; see [`validate`](Self::validate) for the tableau rules.
    pub fn new(shape: Shape, dots: Vec<bool>) -> Result<Self, TableauError> {
        let expected = shape.box_count();
        if dots.len() != expected {
            return Err(TableauError::GridSize {
                expected,
                found: dots.len(),
            });
        }
        Ok(PermutationTableau { shape, dots })
    }

    /// Builds a tableau from row lengths and the 1-based cells holding dots.
    pub fn from_cells(parts: Vec<usize>, cells: &[(usize, usize)]) -> Result<Self, TableauError> {
        let shape = Shape::new(parts)?;
        let mut t = PermutationTableau {
            dots: vec![false; shape.box_count()],
            shape,
        };
        for &(row, col) in cells {
            let cell = Cell::new(row, col);
            if !t.shape.contains(cell) {
                return Err(TableauError::OutsideShape { cell });
            }
            let idx = t.index(cell);
            t.dots[idx] = true;
        }
        Ok(t)
    }

    /// The tableau with `rows` zero-length rows and no columns.
    pub fn all_empty(rows: usize) -> Self {
        PermutationTableau {
            shape: Shape {
                parts: vec![0; rows],
            },
            dots: Vec::new(),
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn semiperimeter(&self) -> usize {
        self.shape.semiperimeter()
    }

    pub fn dots(&self) -> &[bool] {
        &self.dots
    }

    fn row_offset(&self, row: usize) -> usize {
        self.shape.parts[..row - 1].iter().sum()
    }

    fn index(&self, cell: Cell) -> usize {
        self.row_offset(cell.row) + cell.col - 1
    }

    /// Dots of row `row`, left to right, as a slice of booleans.
    pub fn row(&self, row: usize) -> &[bool] {
        let start = self.row_offset(row);
        &self.dots[start..start + self.shape.row_len(row)]
    }

    pub fn has_dot(&self, cell: Cell) -> bool {
        self.shape.contains(cell) && self.dots[self.index(cell)]
    }

    pub fn dot_cells(&self) -> Vec<Cell> {
        (1..=self.shape.row_count())
            .flat_map(|row| {
                self.row(row)
                    .iter()
                    .enumerate()
                    .filter(|(_, &d)| d)
                    .map(move |(c, _)| Cell::new(row, c + 1))
            })
            .collect()
    }

    /// Checks both tableau rules, reporting every violation.
    pub fn validate(&self) -> Result<(), Violations> {
        let mut violations = Vec::new();
        let mut dot_above = vec![false; self.shape.column_count()];
        let mut offset = 0;
        for (r, &len) in self.shape.parts.iter().enumerate() {
            let mut dot_left = false;
            for c in 0..len {
                if self.dots[offset + c] {
                    dot_left = true;
                    dot_above[c] = true;
                } else if dot_left && dot_above[c] {
                    violations.push(Violation::EmptyBoxBetweenDots {
                        cell: Cell::new(r + 1, c + 1),
                    });
                }
            }
            offset += len;
        }
        for (c, &seen) in dot_above.iter().enumerate() {
            if !seen {
                violations.push(Violation::ColumnWithoutDot { col: c + 1 });
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Violations(violations))
        }
    }

    pub(crate) fn require_valid(&self) -> Result<(), TableauError> {
        self.validate().map_err(TableauError::Invalid)
    }

    /// Rows without a dot, zero-length rows included.
    pub fn empty_rows(&self) -> Vec<usize> {
        (1..=self.shape.row_count())
            .filter(|&r| !self.row(r).contains(&true))
            .collect()
    }

    /// Deletes every empty row.
    pub fn psi_tab(&self) -> Result<PermutationTableau, TableauError> {
        self.require_valid()?;
        Ok(self.without_empty_rows())
    }

    pub(crate) fn without_empty_rows(&self) -> PermutationTableau {
        let mut parts = Vec::new();
        let mut dots = Vec::new();
        for r in 1..=self.shape.row_count() {
            let row = self.row(r);
            if row.contains(&true) {
                parts.push(row.len());
                dots.extend_from_slice(row);
            }
        }
        PermutationTableau {
            shape: Shape { parts },
            dots,
        }
    }

    /// Inserts the staircase of empty rows that turns a tableau with no
    /// empty rows (semiperimeter `n`) into one of semiperimeter `2n` whose
    /// permutation is alternating with `n` fixed points.
    ///
    /// Below row `i` go `λ_i - λ_{i+1} + 1` empty rows of lengths
    /// `λ_i, λ_i, λ_i - 1, ..., λ_{i+1} + 1`, treating `λ_{k+1}` as 0.
    pub fn theta(&self) -> Result<PermutationTableau, TableauError> {
        self.require_valid()?;
        if let Some(&row) = self.empty_rows().first() {
            return Err(TableauError::EmptyRow { row });
        }
        let parts = &self.shape.parts;
        let mut new_parts = Vec::with_capacity(2 * parts.len() + self.shape.column_count());
        let mut dots = Vec::with_capacity(self.dots.len() * 2);
        for (r, &len) in parts.iter().enumerate() {
            new_parts.push(len);
            dots.extend_from_slice(self.row(r + 1));
            let below = parts.get(r + 1).copied().unwrap_or(0);
            let inserted = std::iter::once(len).chain((below + 1..=len).rev());
            for empty_len in inserted {
                new_parts.push(empty_len);
                dots.extend(std::iter::repeat_n(false, empty_len));
            }
        }
        Ok(PermutationTableau {
            shape: Shape { parts: new_parts },
            dots,
        })
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::PermutationTableau;

    /// The 4x4x4x3 tableau whose permutation is 74836215.
    pub fn figure() -> PermutationTableau {
        PermutationTableau::from_cells(
            vec![4, 4, 4, 3],
            &[
                (1, 1),
                (1, 2),
                (2, 3),
                (3, 1),
                (3, 2),
                (3, 3),
                (3, 4),
                (4, 3),
            ],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::figure;
    use super::*;

    #[test]
    fn shape_basics() {
        let shape = Shape::new(vec![4, 4, 4, 3]).unwrap();
        assert_eq!(shape.semiperimeter(), 8);
        assert_eq!(shape.column_len(4), 3);
        assert_eq!(shape.column_len(1), 4);
        assert_eq!(shape.box_count(), 15);
        assert_eq!(
            Shape::new(vec![1, 2]),
            Err(TableauError::NotPartition { row: 2 })
        );
        assert!(Shape::new(vec![2, 0, 0]).is_ok());
        assert_eq!(Shape::new(vec![]).unwrap().semiperimeter(), 0);
    }

    #[test]
    fn validation() {
        assert_eq!(figure().validate(), Ok(()));
        let lonely = PermutationTableau::from_cells(vec![1], &[]).unwrap();
        assert_eq!(
            lonely.validate(),
            Err(Violations(vec![Violation::ColumnWithoutDot { col: 1 }]))
        );
        let ok = PermutationTableau::from_cells(vec![2, 2], &[(1, 1), (2, 2)]).unwrap();
        assert_eq!(ok.validate(), Ok(()));
        let bad = PermutationTableau::from_cells(vec![2, 2], &[(1, 2), (2, 1)]).unwrap();
        assert_eq!(
            bad.validate(),
            Err(Violations(vec![Violation::EmptyBoxBetweenDots {
                cell: Cell::new(2, 2)
            }]))
        );
        assert!(bad.validate().unwrap_err().to_string().contains("rule (2)"));
        assert_eq!(
            PermutationTableau::new(Shape::new(vec![2]).unwrap(), vec![true]),
            Err(TableauError::GridSize {
                expected: 2,
                found: 1
            })
        );
        assert!(matches!(
            PermutationTableau::from_cells(vec![1], &[(1, 2)]),
            Err(TableauError::OutsideShape { .. })
        ));
    }

    /// Independent check of rule (2) by brute force over all fillings of (2,2).
    #[test]
    fn fillings_of_two_by_two() {
        let mut valid = Vec::new();
        for bits in 0u8..16 {
            let dots: Vec<bool> = (0..4).map(|i| bits & (8 >> i) != 0).collect();
            let t = PermutationTableau::new(Shape::new(vec![2, 2]).unwrap(), dots.clone()).unwrap();
            let col_ok = (dots[0] || dots[2]) && (dots[1] || dots[3]);
            // only box (2,2) can have both a dot above and a dot to its left
            let hook_ok = dots[3] || !(dots[1] && dots[2]);
            assert_eq!(t.validate().is_ok(), col_ok && hook_ok, "{dots:?}");
            if col_ok && hook_ok {
                valid.push(bits);
            }
        }
        assert!(valid.contains(&0b1001));
    }

    #[test]
    fn empty_rows_and_psi_tab() {
        assert!(figure().empty_rows().is_empty());
        assert_eq!(PermutationTableau::all_empty(3).empty_rows(), vec![1, 2, 3]);
        let t = PermutationTableau::from_cells(vec![1, 1, 1], &[(1, 1)]).unwrap();
        assert_eq!(t.empty_rows(), vec![2, 3]);
        assert_eq!(
            t.psi_tab().unwrap(),
            PermutationTableau::from_cells(vec![1], &[(1, 1)]).unwrap()
        );
        assert_eq!(figure().psi_tab().unwrap(), figure());
        assert_eq!(
            PermutationTableau::all_empty(4).psi_tab().unwrap(),
            PermutationTableau::all_empty(0)
        );
    }

    #[test]
    fn theta_examples() {
        let single = PermutationTableau::from_cells(vec![1], &[(1, 1)]).unwrap();
        let lifted = single.theta().unwrap();
        assert_eq!(
            lifted,
            PermutationTableau::from_cells(vec![1, 1, 1], &[(1, 1)]).unwrap()
        );
        assert_eq!(lifted.empty_rows(), vec![2, 3]);

        let two_one = PermutationTableau::from_cells(vec![2, 1], &[(1, 2), (2, 1)]).unwrap();
        let lifted = two_one.theta().unwrap();
        assert_eq!(lifted.shape().parts(), &[2, 2, 2, 1, 1, 1]);
        assert_eq!(lifted.dot_cells(), vec![Cell::new(1, 2), Cell::new(4, 1)]);
        assert_eq!(lifted.semiperimeter(), 2 * two_one.semiperimeter());

        let empty = PermutationTableau::all_empty(0);
        assert_eq!(empty.theta().unwrap(), empty);

        assert_eq!(
            PermutationTableau::from_cells(vec![1, 0], &[(1, 1)])
                .unwrap()
                .theta(),
            Err(TableauError::EmptyRow { row: 2 })
        );
        assert!(matches!(
            PermutationTableau::from_cells(vec![1], &[])
                .unwrap()
                .theta(),
            Err(TableauError::Invalid(_))
        ));
    }
}
