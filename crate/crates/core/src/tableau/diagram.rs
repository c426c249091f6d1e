use super::{BorderLabeling, Cell, PermutationTableau, StepKind, TableauError};
use crate::perm::Permutation;

/// Where an edge of the diagram ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Dot(Cell),
    Label(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Heading {
    East,
    South,
}

impl Heading {
    fn turned(self) -> Self {
        match self {
            Heading::East => Heading::South,
            Heading::South => Heading::East,
        }
    }
}

/// Every dot sends one edge east and one edge south, each to the nearest
/// dot in that direction or, failing that, to the border label of its row
/// (east) or column (south).
#[derive(Clone, Debug)]
pub struct Diagram<'a> {
    tableau: &'a PermutationTableau,
    labels: BorderLabeling,
    // indexed like the tableau's dot grid; None for empty boxes
    east: Vec<Option<Target>>,
    south: Vec<Option<Target>>,
    row_start: Vec<usize>,
}

/// The route that decodes one label: the dots visited, starting with the
/// westernmost dot of a row or the topmost dot of a column and then turning
/// at every dot reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigzagPath {
    pub start: usize,
    pub vertices: Vec<Cell>,
    pub end: usize,
}

impl<'a> Diagram<'a> {
    pub(crate) fn build_unchecked(tableau: &'a PermutationTableau) -> Self {
        let shape = tableau.shape();
        let labels = shape.border_labels();
        let parts = shape.parts();
        let boxes = tableau.dots.len();
        let mut east = vec![None; boxes];
        let mut south = vec![None; boxes];
        let mut row_start = Vec::with_capacity(parts.len());
        let mut offset = 0;
        for &len in parts {
            row_start.push(offset);
            offset += len;
        }

        for (r, &len) in parts.iter().enumerate() {
            let mut next = Target::Label(labels.row_label(r + 1));
            for c in (0..len).rev() {
                let idx = row_start[r] + c;
                if tableau.dots[idx] {
                    east[idx] = Some(next);
                    next = Target::Dot(Cell::new(r + 1, c + 1));
                }
            }
        }
        for c in 0..shape.column_count() {
            let mut next = Target::Label(labels.col_label(c + 1));
            for r in (0..shape.column_len(c + 1)).rev() {
                let idx = row_start[r] + c;
                if tableau.dots[idx] {
                    south[idx] = Some(next);
                    next = Target::Dot(Cell::new(r + 1, c + 1));
                }
            }
        }
        Diagram {
            tableau,
            labels,
            east,
            south,
            row_start,
        }
    }

    pub fn labels(&self) -> &BorderLabeling {
        &self.labels
    }

    pub fn tableau(&self) -> &PermutationTableau {
        self.tableau
    }

    fn idx(&self, cell: Cell) -> usize {
        self.row_start[cell.row - 1] + cell.col - 1
    }

    /// Target of the east edge leaving `cell`, or `None` if `cell` holds no
    /// dot.
    pub fn east(&self, cell: Cell) -> Option<Target> {
        self.tableau
            .shape()
            .contains(cell)
            .then(|| self.east[self.idx(cell)])
            .flatten()
    }

    pub fn south(&self, cell: Cell) -> Option<Target> {
        self.tableau
            .shape()
            .contains(cell)
            .then(|| self.south[self.idx(cell)])
            .flatten()
    }

    /// All edges as `(dot, heading, target)`, dots in row-major order, east
    /// before south.
    pub fn edges(&self) -> Vec<(Cell, Heading, Target)> {
        let mut out = Vec::new();
        for cell in self.tableau.dot_cells() {
            let idx = self.idx(cell);
            if let Some(t) = self.east[idx] {
                out.push((cell, Heading::East, t));
            }
            if let Some(t) = self.south[idx] {
                out.push((cell, Heading::South, t));
            }
        }
        out
    }

    /// Follows the zig-zag route of `label`.
    ///
    /// A row label first runs west to the row's westernmost dot and heads
    /// south from there; a column label first runs north to the column's
    /// topmost dot and heads east. An empty row decodes to itself.
    pub fn zigzag(&self, label: usize) -> Result<ZigzagPath, TableauError> {
        let n = self.labels.n();
        if label == 0 || label > n {
            return Err(TableauError::LabelOutOfRange { label, n });
        }
        let shape = self.tableau.shape();
        let first = match self.labels.step(label).kind {
            StepKind::Vertical { row } => {
                let start = self.row_start[row - 1];
                self.tableau.dots[start..start + shape.row_len(row)]
                    .iter()
                    .position(|&d| d)
                    .map(|c| (Cell::new(row, c + 1), Heading::South))
            }
            StepKind::Horizontal { col } => (1..=shape.column_len(col))
                .find(|&r| self.tableau.dots[self.row_start[r - 1] + col - 1])
                .map(|r| (Cell::new(r, col), Heading::East)),
        };
        let Some((mut at, mut heading)) = first else {
            return Ok(ZigzagPath {
                start: label,
                vertices: Vec::new(),
                end: label,
            });
        };
        let mut vertices = vec![at];
        loop {
            let idx = self.idx(at);
            let edge = match heading {
                Heading::East => self.east[idx],
                Heading::South => self.south[idx],
            };
            match edge.expect("every dot has both edges") {
                Target::Dot(next) => {
                    vertices.push(next);
                    at = next;
                    heading = heading.turned();
                }
                Target::Label(end) => {
                    return Ok(ZigzagPath {
                        start: label,
                        vertices,
                        end,
                    })
                }
            }
        }
    }

    fn decode(&self) -> Permutation {
        let word = (1..=self.labels.n())
            .map(|label| self.zigzag(label).map(|path| path.end).unwrap())
            .collect();
        Permutation::from_word_unchecked(word)
    }
}

impl PermutationTableau {
    pub fn build_diagram(&self) -> Result<Diagram<'_>, TableauError> {
        self.require_valid()?;
        Ok(Diagram::build_unchecked(self))
    }

    /// Decodes the tableau into a permutation of its semiperimeter by
    /// following every label's zig-zag route.
    pub fn phi(&self) -> Result<Permutation, TableauError> {
        Ok(self.build_diagram()?.decode())
    }

    /// [`phi`](Self::phi) for tableaux already known to be valid.
    pub(crate) fn phi_unchecked(&self) -> Permutation {
        Diagram::build_unchecked(self).decode()
    }

    pub fn zigzag(&self, label: usize) -> Result<ZigzagPath, TableauError> {
        self.build_diagram()?.zigzag(label)
    }
}
