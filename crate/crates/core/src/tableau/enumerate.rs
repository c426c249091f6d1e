use std::collections::VecDeque;

use super::{PermutationTableau, Shape};
use crate::caps::{CapExceeded, Caps, StreamKind};

/// Every shape of semiperimeter `n`: row count `k` from `n` down to 0, first
/// part `n - k`, remaining parts in lexicographically decreasing order.
pub fn shapes(n: usize) -> Vec<Shape> {
    fn extend(prefix: &mut Vec<usize>, rows: usize, max: usize, out: &mut Vec<Shape>) {
        if prefix.len() == rows {
            out.push(Shape {
                parts: prefix.clone(),
            });
            return;
        }
        for len in (0..=max).rev() {
            prefix.push(len);
            extend(prefix, rows, len, out);
            prefix.pop();
        }
    }

    let mut out = Vec::new();
    for rows in (0..=n).rev() {
        let width = n - rows;
        if rows == 0 {
            if width == 0 {
                out.push(Shape::default());
            }
            continue;
        }
        let mut prefix = vec![width];
        extend(&mut prefix, rows, width, &mut out);
    }
    out
}

/// Every valid dot filling of `shape`, ordered by the row-major filling read
/// as a binary number (first box most significant).
///
/// Boxes are decided in row-major order. Leaving a box empty is refused when
/// it would sit below and right of dots, or when it is the last chance for
/// its column to get a dot, so every branch ends in a valid tableau.
pub fn fillings(shape: &Shape) -> Vec<PermutationTableau> {
    struct Search<'a> {
        parts: &'a [usize],
        col_len: Vec<usize>,
        dot_above: Vec<bool>,
        dots: Vec<bool>,
        out: Vec<PermutationTableau>,
        shape: &'a Shape,
    }

    impl Search<'_> {
        fn visit(&mut self, row: usize, col: usize, dot_left: bool) {
            if row == self.parts.len() {
                self.out.push(PermutationTableau {
                    shape: self.shape.clone(),
                    dots: self.dots.clone(),
                });
                return;
            }
            if col == self.parts[row] {
                self.visit(row + 1, 0, false);
                return;
            }
            let above = self.dot_above[col];
            let last_chance = !above && row + 1 == self.col_len[col];
            if !(above && dot_left) && !last_chance {
                self.dots.push(false);
                self.visit(row, col + 1, dot_left);
                self.dots.pop();
            }
            self.dots.push(true);
            self.dot_above[col] = true;
            self.visit(row, col + 1, true);
            self.dot_above[col] = above;
            self.dots.pop();
        }
    }

    let mut search = Search {
        parts: shape.parts(),
        col_len: (1..=shape.column_count())
            .map(|c| shape.column_len(c))
            .collect(),
        dot_above: vec![false; shape.column_count()],
        dots: Vec::with_capacity(shape.box_count()),
        out: Vec::new(),
        shape,
    };
    search.visit(0, 0, false);
    search.out
}

/// Every permutation tableau of a given semiperimeter, shape by shape in the
/// order of [`shapes`], fillings in the order of [`fillings`].
#[derive(Clone, Debug)]
pub struct TableauStream {
    pending: VecDeque<Shape>,
    current: std::vec::IntoIter<PermutationTableau>,
}

impl TableauStream {
    fn new(n: usize) -> Self {
        TableauStream {
            pending: shapes(n).into(),
            current: Vec::new().into_iter(),
        }
    }

    /// Shapes not yet expanded. Together with [`fillings`] this lets callers
    /// partition the stream by shape.
    pub fn remaining_shapes(&self) -> impl Iterator<Item = &Shape> {
        self.pending.iter()
    }
}

impl Iterator for TableauStream {
    type Item = PermutationTableau;

    fn next(&mut self) -> Option<PermutationTableau> {
        loop {
            if let Some(t) = self.current.next() {
                return Some(t);
            }
            let shape = self.pending.pop_front()?;
            self.current = fillings(&shape).into_iter();
        }
    }
}

impl Caps {
    pub fn tableaux(&self, n: usize) -> Result<TableauStream, CapExceeded> {
        self.check(StreamKind::Tableaux, n)?;
        Ok(TableauStream::new(n))
    }
}

/// [`Caps::tableaux`] with default caps.
pub fn enumerate_tableaux(n: usize) -> Result<TableauStream, CapExceeded> {
    Caps::default().tableaux(n)
}
