use super::Shape;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// The right edge of a row.
    Vertical { row: usize },
    /// The bottom edge of a column.
    Horizontal { col: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub label: usize,
    pub kind: StepKind,
}

/// Labels `1..=n` on the unit steps of the northeast border, walked from the
/// top-right corner down to the bottom-left one.
///
/// Each row owns one vertical step and each column one horizontal step, so
/// `n` is the semiperimeter. Zero-length rows give the final vertical steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorderLabeling {
    steps: Vec<Step>,
    row_labels: Vec<usize>,
    col_labels: Vec<usize>,
}

impl BorderLabeling {
    pub fn new(shape: &Shape) -> Self {
        let parts = shape.parts();
        let mut steps = Vec::with_capacity(shape.semiperimeter());
        let mut row_labels = vec![0; parts.len()];
        let mut col_labels = vec![0; shape.column_count()];
        for (r, &len) in parts.iter().enumerate() {
            row_labels[r] = steps.len() + 1;
            steps.push(Step {
                label: steps.len() + 1,
                kind: StepKind::Vertical { row: r + 1 },
            });
            let below = parts.get(r + 1).copied().unwrap_or(0);
            for col in (below + 1..=len).rev() {
                col_labels[col - 1] = steps.len() + 1;
                steps.push(Step {
                    label: steps.len() + 1,
                    kind: StepKind::Horizontal { col },
                });
            }
        }
        BorderLabeling {
            steps,
            row_labels,
            col_labels,
        }
    }

    pub fn n(&self) -> usize {
        self.steps.len()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// The step carrying `label` (1-based).
    pub fn step(&self, label: usize) -> Step {
        self.steps[label - 1]
    }

    pub fn row_label(&self, row: usize) -> usize {
        self.row_labels[row - 1]
    }

    pub fn col_label(&self, col: usize) -> usize {
        self.col_labels[col - 1]
    }

    pub fn vertical_labels(&self) -> Vec<usize> {
        self.row_labels.clone()
    }

    pub fn horizontal_labels(&self) -> Vec<usize> {
        let mut labels = self.col_labels.clone();
        labels.sort_unstable();
        labels
    }
}

impl Shape {
    pub fn border_labels(&self) -> BorderLabeling {
        BorderLabeling::new(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_shape() {
        let labels = Shape::new(vec![4, 4, 4, 3]).unwrap().border_labels();
        assert_eq!(labels.vertical_labels(), vec![1, 2, 3, 5]);
        assert_eq!(labels.horizontal_labels(), vec![4, 6, 7, 8]);
        assert_eq!(
            (1..=4).map(|c| labels.col_label(c)).collect::<Vec<_>>(),
            vec![8, 7, 6, 4]
        );
        assert_eq!(labels.step(4).kind, StepKind::Horizontal { col: 4 });
        assert_eq!(labels.step(5).kind, StepKind::Vertical { row: 4 });
    }

    #[test]
    fn degenerate_shapes() {
        let zeros = Shape::new(vec![0, 0, 0]).unwrap().border_labels();
        assert_eq!(zeros.vertical_labels(), vec![1, 2, 3]);
        assert!(zeros.horizontal_labels().is_empty());

        let one = Shape::new(vec![1]).unwrap().border_labels();
        assert_eq!(one.step(1).kind, StepKind::Vertical { row: 1 });
        assert_eq!(one.step(2).kind, StepKind::Horizontal { col: 1 });

        let trailing = Shape::new(vec![2, 0]).unwrap().border_labels();
        assert_eq!(trailing.row_label(2), 4);
        assert_eq!(trailing.horizontal_labels(), vec![2, 3]);
    }
}
