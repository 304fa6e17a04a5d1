//! Plain-text string diagrams.
//!
//! Terms draw top to bottom in application order: the domain wires enter at
//! the top and each generator layer rewires them. Wire `i` (counted from 0)
//! sits at column `2 * i + 1`, so neighbouring wires are two columns apart
//! and a one-column slide takes two rows. Layers are separated by rows of
//! plain wire, generators render as small stencils (`/` and `\` for merges,
//! splits, and crossings, `o` for unit and counit endpoints, `[S]` for the
//! inversion box), and rows carry no trailing whitespace.

use crate::canonical::{flatten, Slice};
use crate::fcat::GenKind;
use crate::hterm::{HTerm, TermResult};

fn col(i: usize) -> usize {
    2 * i + 1
}

struct Row {
    cells: Vec<char>,
}

impl Row {
    fn new() -> Row {
        Row { cells: Vec::new() }
    }

    fn put(&mut self, col: usize, c: char) {
        if self.cells.len() <= col {
            self.cells.resize(col + 1, ' ');
        }
        self.cells[col] = c;
    }

    fn wires(&mut self, range: std::ops::Range<usize>) {
        for i in range {
            self.put(col(i), '|');
        }
    }

    fn finish(self) -> String {
        self.cells.into_iter().collect()
    }
}

fn wire_row(width: usize) -> String {
    let mut row = Row::new();
    row.wires(0..width);
    row.finish()
}

/// Two rows that keep wires `0..a` straight and slide wires `from..width`
/// sideways by one position, with `extra` marks overlaid per row.
fn slide(
    rows: &mut Vec<String>,
    a: usize,
    from: usize,
    width: usize,
    dir: char,
    extra: [&[(usize, char)]; 2],
) {
    for (step, marks) in extra.iter().enumerate() {
        let mut row = Row::new();
        row.wires(0..a);
        for i in from..width {
            let base = col(i);
            let shifted = match dir {
                '/' => base - 1 - step,
                _ => base + 1 + step,
            };
            row.put(shifted, dir);
        }
        for &(c, ch) in *marks {
            row.put(c, ch);
        }
        rows.push(row.finish());
    }
}

fn draw_gen(rows: &mut Vec<String>, kind: GenKind, a: usize, width_in: usize) {
    match kind {
        GenKind::Mu => {
            // two wires merge onto the left one; everything beyond slides in
            slide(
                rows,
                a,
                a + 2,
                width_in,
                '/',
                [
                    &[(col(a), '|'), (col(a) + 1, '/')],
                    &[(col(a), '|')],
                ],
            );
        }
        GenKind::Delta => {
            slide(
                rows,
                a,
                a + 1,
                width_in,
                '\\',
                [
                    &[(col(a), '|'), (col(a) + 1, '\\')],
                    &[(col(a), '|'), (col(a) + 2, '\\')],
                ],
            );
        }
        GenKind::Eta => {
            slide(
                rows,
                a,
                a,
                width_in,
                '\\',
                [&[], &[(col(a), 'o')]],
            );
        }
        GenKind::Eps => {
            slide(
                rows,
                a,
                a + 1,
                width_in,
                '/',
                [&[(col(a), 'o')], &[]],
            );
        }
        GenKind::Antipode => {
            let mut row = Row::new();
            row.wires(0..a);
            row.wires(a + 1..width_in);
            row.put(col(a) - 1, '[');
            row.put(col(a), 'S');
            row.put(col(a) + 1, ']');
            rows.push(row.finish());
        }
    }
}

fn draw_swap(rows: &mut Vec<String>, a: usize, c: usize, d: usize, width: usize) {
    // block exchange as adjacent transpositions, rightmost of the left
    // block first
    for i in 0..c {
        for j in 0..d {
            let k = a + c - 1 - i + j;
            let mut row = Row::new();
            row.wires(0..k);
            row.put(col(k) + 1, 'X');
            row.wires(k + 2..width);
            rows.push(row.finish());
        }
    }
}

/// Draw a well-typed term as a multi-line string. The same term always
/// renders to the same bytes.
pub fn render(t: &HTerm) -> TermResult<String> {
    let (dom, _) = t.infer_type()?;
    let mut slices = Vec::new();
    flatten(t, 0, &mut slices);
    let mut rows = vec![wire_row(dom)];
    let mut width = dom;
    for slice in &slices {
        match *slice {
            Slice::Gen { offset, kind } => {
                let (ins, outs) = kind.boundary();
                draw_gen(&mut rows, kind, offset, width);
                width = width - ins + outs;
            }
            Slice::Swap { offset, c, d } => {
                draw_swap(&mut rows, offset, c, d, width);
            }
        }
        rows.push(wire_row(width));
    }
    if slices.is_empty() {
        rows.push(wire_row(width));
    }
    Ok(rows.join("\n"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{decode, encode};
    use crate::fcat::bracket;
    use crate::parse::parse_term;
    use crate::words::{reduce, Letter};

    #[test]
    fn identity_is_plain_wires() {
        assert_eq!(render(&HTerm::Id(2)).unwrap(), " | |\n | |");
        assert_eq!(render(&HTerm::Id(0)).unwrap(), "\n");
    }

    #[test]
    fn merge_narrows_and_split_widens() {
        let mu = render(&HTerm::Gen(GenKind::Mu)).unwrap();
        assert_eq!(mu, " | |\n |/\n |\n |");
        let delta = render(&HTerm::Gen(GenKind::Delta)).unwrap();
        assert_eq!(delta, " |\n |\\\n | \\\n | |");
    }

    #[test]
    fn unit_and_counit_are_endpoints() {
        let eta = render(&HTerm::Gen(GenKind::Eta)).unwrap();
        assert_eq!(eta, "\n\n o\n |");
        let eps = render(&HTerm::Gen(GenKind::Eps)).unwrap();
        assert_eq!(eps, " |\n o\n\n");
    }

    #[test]
    fn inversion_is_a_box() {
        let s = render(&HTerm::Gen(GenKind::Antipode)).unwrap();
        assert_eq!(s, " |\n[S]\n |");
    }

    #[test]
    fn crossing_marks_swapped_wires() {
        let p = render(&HTerm::Sym(1, 1)).unwrap();
        assert_eq!(p, " | |\n  X\n | |");
        let wide = render(&HTerm::Sym(2, 1)).unwrap();
        assert!(wide.lines().filter(|l| l.contains('X')).count() == 2);
    }

    #[test]
    fn layers_compose_top_to_bottom() {
        let t = parse_term("mu . (id(1) x S) . delta").unwrap();
        let drawing = render(&t).unwrap();
        // one wire in, one wire out, with split, box, and merge in between
        assert!(drawing.starts_with(" |\n"));
        assert!(drawing.ends_with("\n |"));
        assert!(drawing.contains('\\'));
        assert!(drawing.contains("[S]"));
        assert!(drawing.contains('/'));
        let split_row = drawing.lines().position(|l| l.contains('\\')).unwrap();
        let box_row = drawing.lines().position(|l| l.contains('S')).unwrap();
        let merge_row = drawing.lines().position(|l| l.contains('/')).unwrap();
        assert!(split_row < box_row && box_row < merge_row);
    }

    #[test]
    fn no_trailing_whitespace_and_deterministic() {
        let w = reduce(
            2,
            [
                Letter { index: 1, inv: false },
                Letter { index: 2, inv: true },
            ],
        )
        .unwrap();
        let t = decode(&encode(&bracket(1, 2, vec![w]).unwrap()));
        let once = render(&t).unwrap();
        assert_eq!(once, render(&t).unwrap());
        for line in once.lines() {
            assert_eq!(line, line.trim_end());
        }
        assert!(once.contains('X') || once.contains('\\'));
    }

    #[test]
    fn rejects_ill_typed_terms() {
        let bad = HTerm::compose(HTerm::Gen(GenKind::Mu), HTerm::Gen(GenKind::Mu));
        assert!(render(&bad).is_err());
    }
}
