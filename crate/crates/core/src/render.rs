//! Text and SVG pictures of a tableau, its border labels, and zig-zag
//! routes.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::tableau::{Cell, Diagram, PermutationTableau, TableauError, ZigzagPath};

// ---- text -----------------------------------------------------------------

struct Canvas {
    grid: Vec<Vec<char>>,
    // marks cells drawn by a route: Some(true) horizontal, Some(false) vertical
    route: Vec<Vec<Option<bool>>>,
}

impl Canvas {
    fn new(width: usize, height: usize) -> Self {
        Canvas {
            grid: vec![vec![' '; width]; height],
            route: vec![vec![None; width]; height],
        }
    }

    fn put(&mut self, x: usize, y: usize, ch: char) {
        self.grid[y][x] = ch;
    }

    fn text(&mut self, x: usize, y: usize, s: &str) {
        for (i, ch) in s.chars().enumerate() {
            self.put(x + i, y, ch);
        }
    }

    fn route_mark(&mut self, x: usize, y: usize, horizontal: bool) {
        if self.grid[y][x] == '*' {
            return;
        }
        let ch = match self.route[y][x] {
            Some(h) if h != horizontal => '+',
            _ if horizontal => '-',
            _ => '|',
        };
        self.route[y][x] = Some(horizontal);
        self.grid[y][x] = ch;
    }

    /// Marks the cells strictly between two points on a line.
    fn route_between(&mut self, (x0, y0): (usize, usize), (x1, y1): (usize, usize)) {
        if y0 == y1 {
            for x in x0.min(x1) + 1..x0.max(x1) {
                self.route_mark(x, y0, true);
            }
        } else {
            debug_assert_eq!(x0, x1);
            for y in y0.min(y1) + 1..y0.max(y1) {
                self.route_mark(x0, y, false);
            }
        }
    }

    fn finish(self) -> String {
        let mut out = String::new();
        for row in self.grid {
            let line: String = row.into_iter().collect();
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

fn ascii_center(cell: Cell) -> (usize, usize) {
    (4 * (cell.col - 1) + 2, 2 * cell.row - 1)
}

/// Where a label sits on the text grid, as the point a route starts from or
/// ends at.
fn ascii_anchor(diagram: &Diagram<'_>, label: usize) -> (usize, usize) {
    use crate::tableau::StepKind;
    let shape = diagram.tableau().shape();
    match diagram.labels().step(label).kind {
        StepKind::Vertical { row } => (4 * shape.row_len(row), 2 * row - 1),
        StepKind::Horizontal { col } => (4 * (col - 1) + 2, 2 * shape.column_len(col)),
    }
}

fn draw_route(canvas: &mut Canvas, diagram: &Diagram<'_>, path: &ZigzagPath) {
    if path.vertices.is_empty() {
        return;
    }
    let mut points = vec![ascii_anchor(diagram, path.start)];
    points.extend(path.vertices.iter().map(|&c| ascii_center(c)));
    points.push(ascii_anchor(diagram, path.end));
    for pair in points.windows(2) {
        canvas.route_between(pair[0], pair[1]);
    }
}

/// Boxes as `+---+` cells with `*` for dots. Row labels sit right of each
/// row; column labels are written into the edge closing the column, e.g.
/// `-7-`. With `trace`, the route of that label is overlaid with `-`, `|`,
/// and `+` and a closing `trace: i -> j` line is added.
pub fn render_ascii(t: &PermutationTableau, trace: Option<usize>) -> Result<String, TableauError> {
    let diagram = t.build_diagram()?;
    let path = trace.map(|label| diagram.zigzag(label)).transpose()?;
    let shape = t.shape();
    let parts = shape.parts();
    let labels = diagram.labels();
    let label_width = labels.n().to_string().len();
    let width = 4 * shape.column_count() + 2 + label_width + 1;
    let height = 2 * parts.len() + 1;
    let mut canvas = Canvas::new(width, height);

    // horizontal edges: line 2i closes row i and opens row i + 1
    for i in 0..=parts.len() {
        let span = match i {
            0 => parts.first().copied().unwrap_or(0),
            _ => parts[i - 1],
        };
        for c in 0..span {
            canvas.text(4 * c, 2 * i, "+---+");
        }
    }
    for (r, &len) in parts.iter().enumerate() {
        let y = 2 * r + 1;
        for c in 0..=len {
            canvas.put(4 * c, y, '|');
        }
        for c in 0..len {
            if t.has_dot(Cell::new(r + 1, c + 1)) {
                canvas.put(4 * c + 2, y, '*');
            }
        }
    }

    if let Some(path) = &path {
        draw_route(&mut canvas, &diagram, path);
    }

    for r in 1..=parts.len() {
        let x = 4 * shape.row_len(r) + 2;
        canvas.text(x, 2 * r - 1, &labels.row_label(r).to_string());
    }
    for c in 1..=shape.column_count() {
        let tag = format!("{:-^3}", labels.col_label(c));
        canvas.text(4 * (c - 1) + 1, 2 * shape.column_len(c), &tag);
    }

    let mut out = canvas.finish();
    if let Some(path) = path {
        writeln!(out, "trace: {} -> {}", path.start, path.end).unwrap();
    }
    Ok(out)
}

// ---- SVG ------------------------------------------------------------------

const UNIT: usize = 36;
const MARGIN: usize = 24;

fn svg_center(cell: Cell) -> (usize, usize) {
    (
        MARGIN + UNIT * (cell.col - 1) + UNIT / 2,
        MARGIN + UNIT * (cell.row - 1) + UNIT / 2,
    )
}

fn svg_anchor(diagram: &Diagram<'_>, label: usize) -> (usize, usize) {
    use crate::tableau::StepKind;
    let shape = diagram.tableau().shape();
    match diagram.labels().step(label).kind {
        StepKind::Vertical { row } => (
            MARGIN + UNIT * shape.row_len(row),
            MARGIN + UNIT * (row - 1) + UNIT / 2,
        ),
        StepKind::Horizontal { col } => (
            MARGIN + UNIT * (col - 1) + UNIT / 2,
            MARGIN + UNIT * shape.column_len(col),
        ),
    }
}

/// A standalone SVG document: 36-unit boxes, dots as filled circles, the
/// border labels, and one arrowed polyline per traced label. Output depends
/// only on the input.
pub fn render_svg(
    t: &PermutationTableau,
    traces: &BTreeSet<usize>,
) -> Result<String, TableauError> {
    let diagram = t.build_diagram()?;
    let paths = traces
        .iter()
        .map(|&label| diagram.zigzag(label))
        .collect::<Result<Vec<_>, _>>()?;
    let shape = t.shape();
    let parts = shape.parts();
    let labels = diagram.labels();
    let width = 2 * MARGIN + UNIT * shape.column_count() + UNIT;
    let height = 2 * MARGIN + UNIT * parts.len() + UNIT / 2;

    let mut svg = String::new();
    let w = &mut svg;
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    w.push_str(concat!(
        "  <defs>\n",
        r#"    <marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" orient="auto-start-reverse">"#,
        "\n",
        r#"      <path d="M 0 0 L 10 5 L 0 10 z" fill="red"/>"#,
        "\n    </marker>\n  </defs>\n",
    ));
    writeln!(
        w,
        r#"  <g class="boxes" fill="none" stroke="black" stroke-width="1">"#
    )
    .unwrap();
    for (r, &len) in parts.iter().enumerate() {
        let y = MARGIN + UNIT * r;
        if len == 0 {
            writeln!(
                w,
                r#"    <line x1="{MARGIN}" y1="{y}" x2="{MARGIN}" y2="{}"/>"#,
                y + UNIT
            )
            .unwrap();
        }
        for c in 0..len {
            let x = MARGIN + UNIT * c;
            writeln!(
                w,
                r#"    <rect x="{x}" y="{y}" width="{UNIT}" height="{UNIT}"/>"#
            )
            .unwrap();
        }
    }
    w.push_str("  </g>\n");

    writeln!(w, r#"  <g class="dots" fill="black">"#).unwrap();
    for cell in t.dot_cells() {
        let (cx, cy) = svg_center(cell);
        writeln!(w, r#"    <circle cx="{cx}" cy="{cy}" r="5"/>"#).unwrap();
    }
    w.push_str("  </g>\n");

    writeln!(
        w,
        r#"  <g class="labels" font-family="sans-serif" font-size="14" font-weight="bold" fill="black">"#
    )
    .unwrap();
    for step in labels.steps() {
        let (x, y) = svg_anchor(&diagram, step.label);
        match step.kind {
            crate::tableau::StepKind::Vertical { .. } => writeln!(
                w,
                r#"    <text x="{}" y="{}" text-anchor="start">{}</text>"#,
                x + 6,
                y + 5,
                step.label
            ),
            crate::tableau::StepKind::Horizontal { .. } => writeln!(
                w,
                r#"    <text x="{x}" y="{}" text-anchor="middle">{}</text>"#,
                y + 16,
                step.label
            ),
        }
        .unwrap();
    }
    w.push_str("  </g>\n");

    for path in &paths {
        if path.vertices.is_empty() {
            continue;
        }
        let mut points = vec![svg_anchor(&diagram, path.start)];
        points.extend(path.vertices.iter().map(|&c| svg_center(c)));
        points.push(svg_anchor(&diagram, path.end));
        let points: Vec<String> = points.iter().map(|(x, y)| format!("{x},{y}")).collect();
        writeln!(
            w,
            r#"  <polyline class="trace" data-from="{}" data-to="{}" points="{}" fill="none" stroke="red" stroke-width="2" marker-end="url(#arrow)"/>"#,
            path.start,
            path.end,
            points.join(" ")
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
