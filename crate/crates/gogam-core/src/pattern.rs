//! Shapes, pattern storage, GT validation, the entrywise lattice, and the
//! text/JSON serialisation formats.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The four supported cell-set shapes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum ShapeKind {
    /// All cells `n >= i >= j >= 1`.
    Triangle,
    /// Leftmost `k` columns of the triangle (`j <= k`).
    LeftTrapezoid,
    /// Rightmost `l` NW-SE diagonals of the triangle (`i - j <= l - 1`).
    RightTrapezoid,
    /// Intersection of a left trapezoid of width `k` and a right trapezoid
    /// of width `l`.
    Rectangle,
}

impl ShapeKind {
    /// Header token used by the text format.
    pub fn token(self) -> &'static str {
        match self {
            ShapeKind::Triangle => "triangle",
            ShapeKind::LeftTrapezoid => "left",
            ShapeKind::RightTrapezoid => "right",
            ShapeKind::Rectangle => "rect",
        }
    }

    fn from_token(tok: &str) -> Option<ShapeKind> {
        match tok {
            "triangle" => Some(ShapeKind::Triangle),
            "left" => Some(ShapeKind::LeftTrapezoid),
            "right" => Some(ShapeKind::RightTrapezoid),
            "rect" => Some(ShapeKind::Rectangle),
            _ => None,
        }
    }
}

/// A cell position; both coordinates are 1-based, `i` is the row counted
/// from the bottom and `j` the column.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Cell {
    pub i: usize,
    pub j: usize,
}

impl Cell {
    pub fn new(i: usize, j: usize) -> Cell {
        Cell { i, j }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// A validated shape: kind, size and the trapezoid widths that apply.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Shape {
    kind: ShapeKind,
    n: usize,
    k: Option<usize>,
    l: Option<usize>,
}

impl Shape {
    pub fn triangle(n: usize) -> Result<Shape> {
        if n == 0 {
            return Err(Error::InvalidShape("size n must be at least 1".into()));
        }
        Ok(Shape { kind: ShapeKind::Triangle, n, k: None, l: None })
    }

    pub fn left_trapezoid(n: usize, k: usize) -> Result<Shape> {
        if n == 0 || k == 0 || k > n {
            return Err(Error::InvalidShape(format!(
                "left trapezoid needs 1 <= k <= n, got n={n} k={k}"
            )));
        }
        Ok(Shape { kind: ShapeKind::LeftTrapezoid, n, k: Some(k), l: None })
    }

    pub fn right_trapezoid(n: usize, l: usize) -> Result<Shape> {
        if n == 0 || l == 0 || l > n {
            return Err(Error::InvalidShape(format!(
                "right trapezoid needs 1 <= l <= n, got n={n} l={l}"
            )));
        }
        Ok(Shape { kind: ShapeKind::RightTrapezoid, n, k: None, l: Some(l) })
    }

    pub fn rectangle(n: usize, k: usize, l: usize) -> Result<Shape> {
        if n == 0 || k == 0 || l == 0 || k + l > n + 1 {
            return Err(Error::InvalidShape(format!(
                "rectangle needs k, l >= 1 and k + l <= n + 1, got n={n} k={k} l={l}"
            )));
        }
        Ok(Shape { kind: ShapeKind::Rectangle, n, k: Some(k), l: Some(l) })
    }

    /// Build a shape from header pieces; `k`/`l` must be present exactly
    /// when the kind requires them.
    pub fn from_parts(
        kind: ShapeKind,
        n: usize,
        k: Option<usize>,
        l: Option<usize>,
    ) -> Result<Shape> {
        match (kind, k, l) {
            (ShapeKind::Triangle, None, None) => Shape::triangle(n),
            (ShapeKind::LeftTrapezoid, Some(k), None) => Shape::left_trapezoid(n, k),
            (ShapeKind::RightTrapezoid, None, Some(l)) => Shape::right_trapezoid(n, l),
            (ShapeKind::Rectangle, Some(k), Some(l)) => Shape::rectangle(n, k, l),
            _ => Err(Error::InvalidShape(format!("kind {} with k={k:?} l={l:?}", kind.token()))),
        }
    }

    pub fn kind(&self) -> ShapeKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> Option<usize> {
        self.k
    }

    pub fn l(&self) -> Option<usize> {
        self.l
    }

    /// Number of columns the shape can touch (`k`, or `n` when unbounded).
    pub fn left_width(&self) -> usize {
        self.k.unwrap_or(self.n)
    }

    /// Number of NW-SE diagonals the shape can touch (`l`, or `n`).
    pub fn right_width(&self) -> usize {
        self.l.unwrap_or(self.n)
    }

    /// First column present in row `i`.
    pub fn row_first_col(&self, i: usize) -> usize {
        (i + 1).saturating_sub(self.right_width()).max(1)
    }

    /// Last column present in row `i`; one less than `row_first_col` when
    /// the row is empty (tall rectangles).
    pub fn row_last_col(&self, i: usize) -> usize {
        i.min(self.left_width())
    }

    /// Columns present in row `i` (possibly empty).
    pub fn row_cols(&self, i: usize) -> std::ops::RangeInclusive<usize> {
        self.row_first_col(i)..=self.row_last_col(i)
    }

    pub fn row_width(&self, i: usize) -> usize {
        let first = self.row_first_col(i);
        let last = self.row_last_col(i);
        if last >= first {
            last - first + 1
        } else {
            0
        }
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        i >= 1 && i <= self.n && j >= 1 && j >= self.row_first_col(i) && j <= self.row_last_col(i)
    }

    /// All cells in row-major order, top row first, columns increasing.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for i in (1..=self.n).rev() {
            for j in self.row_cols(i) {
                out.push(Cell::new(i, j));
            }
        }
        out
    }

    pub fn cell_count(&self) -> usize {
        (1..=self.n).map(|i| self.row_width(i)).sum()
    }

    /// Rows of the shape top-down as in the text format.
    pub fn rows_top_down(&self) -> impl Iterator<Item = usize> {
        (1..=self.n).rev()
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind.token(), self.n)?;
        if let Some(k) = self.k {
            write!(f, " {k}")?;
        }
        if let Some(l) = self.l {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

impl Serialize for Shape {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ShapeRepr::from(*self).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Shape {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = ShapeRepr::deserialize(de)?;
        repr.into_shape().map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct ShapeRepr {
    kind: String,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    l: Option<usize>,
}

impl From<Shape> for ShapeRepr {
    fn from(s: Shape) -> ShapeRepr {
        ShapeRepr { kind: s.kind.token().to_string(), n: s.n, k: s.k, l: s.l }
    }
}

impl ShapeRepr {
    fn into_shape(self) -> Result<Shape> {
        let kind = ShapeKind::from_token(&self.kind)
            .ok_or_else(|| Error::Parse(format!("unknown shape kind {:?}", self.kind)))?;
        Shape::from_parts(kind, self.n, self.k, self.l)
    }
}

/// A pattern: a shape together with one positive integer per cell.
///
/// Rows are stored top row (`i = n`) first; within a row entries are listed
/// with `j` increasing. Entries well beyond `n` are representable so that
/// deliberately invalid inputs can be built and diagnosed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Pattern {
    shape: Shape,
    rows: Vec<Vec<u32>>,
}

impl Pattern {
    /// Validates row count, row widths and entry positivity.
    pub fn new(shape: Shape, rows: Vec<Vec<u32>>) -> Result<Pattern> {
        if rows.len() != shape.n() {
            return Err(Error::Malformed(format!(
                "expected {} rows, got {}",
                shape.n(),
                rows.len()
            )));
        }
        for (idx, i) in shape.rows_top_down().enumerate() {
            if rows[idx].len() != shape.row_width(i) {
                return Err(Error::Malformed(format!(
                    "row i={} expects {} entries, got {}",
                    i,
                    shape.row_width(i),
                    rows[idx].len()
                )));
            }
            if rows[idx].contains(&0) {
                return Err(Error::Malformed(format!("row i={i} has a zero entry")));
            }
        }
        Ok(Pattern { shape, rows })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    /// Entry at cell `(i, j)`. Panics when the cell is outside the shape;
    /// use [`Pattern::try_get`] for existence-dependent comparisons.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.try_get(i, j).unwrap_or_else(|| panic!("cell ({i}, {j}) outside shape {}", self.shape))
    }

    pub fn try_get(&self, i: usize, j: usize) -> Option<u32> {
        if !self.shape.contains(i, j) {
            return None;
        }
        let row = &self.rows[self.shape.n() - i];
        Some(row[j - self.shape.row_first_col(i)])
    }

    /// Rows top-down, as stored.
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Entries of row `i` with `j` increasing.
    pub fn row(&self, i: usize) -> &[u32] {
        &self.rows[self.shape.n() - i]
    }

    /// The bottom entry `X_{1,1}` (present in every shape).
    pub fn bottom_entry(&self) -> u32 {
        self.get(1, 1)
    }

    /// All cells where a GT inequality against an existing upper neighbour
    /// fails: `X_{i+1,j} <= X_{i,j}` or `X_{i,j} <= X_{i+1,j+1}`. Each
    /// offending cell is reported once, in row-major top-first order.
    pub fn validate_gt(&self) -> Vec<Cell> {
        let mut bad = Vec::new();
        for i in self.shape.rows_top_down() {
            for j in self.shape.row_cols(i) {
                let v = self.get(i, j);
                let left_ok = self.try_get(i + 1, j).is_none_or(|u| u <= v);
                let right_ok = self.try_get(i + 1, j + 1).is_none_or(|u| v <= u);
                if !left_ok || !right_ok {
                    bad.push(Cell::new(i, j));
                }
            }
        }
        bad
    }

    /// True when no GT inequality fails (short-circuiting).
    pub fn is_gt_valid(&self) -> bool {
        for i in self.shape.rows_top_down() {
            for j in self.shape.row_cols(i) {
                let v = self.get(i, j);
                if self.try_get(i + 1, j).is_some_and(|u| u > v) {
                    return false;
                }
                if self.try_get(i + 1, j + 1).is_some_and(|u| v > u) {
                    return false;
                }
            }
        }
        true
    }

    /// Entrywise order; errors when the shapes differ.
    pub fn leq(&self, other: &Pattern) -> Result<bool> {
        self.same_shape(other)?;
        Ok(self.rows.iter().zip(&other.rows).all(|(a, b)| a.iter().zip(b).all(|(x, y)| x <= y)))
    }

    /// Entrywise maximum; GT-validity is preserved.
    pub fn join(&self, other: &Pattern) -> Result<Pattern> {
        self.zip_with(other, u32::max)
    }

    /// Entrywise minimum; GT-validity is preserved.
    pub fn meet(&self, other: &Pattern) -> Result<Pattern> {
        self.zip_with(other, u32::min)
    }

    fn same_shape(&self, other: &Pattern) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch(self.shape, other.shape));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Pattern, f: impl Fn(u32, u32) -> u32) -> Result<Pattern> {
        self.same_shape(other)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect())
            .collect();
        Pattern::new(self.shape, rows)
    }

    /// Restrict to a sub-shape of the same size; every target cell must be
    /// present in this pattern.
    pub fn extract(&self, target: Shape) -> Result<Pattern> {
        if target.n() != self.n() {
            return Err(Error::InvalidShape(format!(
                "extract target size {} differs from source size {}",
                target.n(),
                self.n()
            )));
        }
        let mut rows = Vec::with_capacity(target.n());
        for i in target.rows_top_down() {
            let mut row = Vec::with_capacity(target.row_width(i));
            for j in target.row_cols(i) {
                match self.try_get(i, j) {
                    Some(v) => row.push(v),
                    None => {
                        return Err(Error::InvalidShape(format!(
                            "target cell ({i}, {j}) not present in source shape {}",
                            self.shape
                        )))
                    }
                }
            }
            rows.push(row);
        }
        Pattern::new(target, rows)
    }

    /// All entries in row-major top-first order; the canonical stream sort
    /// key.
    pub fn row_major_entries(&self) -> Vec<u32> {
        self.rows.iter().flatten().copied().collect()
    }

    /// Text format: header line, then one line per row top-down (empty rows
    /// serialise as empty lines), trailing newline included.
    pub fn serialize(&self) -> String {
        let mut out = self.shape.to_string();
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Strict inverse of [`Pattern::serialize`].
    pub fn parse(text: &str) -> Result<Pattern> {
        if !text.ends_with('\n') {
            return Err(Error::Parse("missing trailing newline".into()));
        }
        let mut lines = text.split('\n');
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.is_empty() {
            return Err(Error::Parse("empty header line".into()));
        }
        let kind = ShapeKind::from_token(toks[0])
            .ok_or_else(|| Error::Parse(format!("unknown shape kind {:?}", toks[0])))?;
        let nums: Vec<usize> = toks[1..]
            .iter()
            .map(|t| {
                t.parse::<usize>().map_err(|_| Error::Parse(format!("bad header number {t:?}")))
            })
            .collect::<Result<_>>()?;
        let shape = match (kind, nums.as_slice()) {
            (ShapeKind::Triangle, [n]) => Shape::triangle(*n)?,
            (ShapeKind::LeftTrapezoid, [n, k]) => Shape::left_trapezoid(*n, *k)?,
            (ShapeKind::RightTrapezoid, [n, l]) => Shape::right_trapezoid(*n, *l)?,
            (ShapeKind::Rectangle, [n, k, l]) => Shape::rectangle(*n, *k, *l)?,
            _ => {
                return Err(Error::Parse(format!(
                    "header {:?} has the wrong number of parameters",
                    header
                )))
            }
        };
        let mut rows = Vec::with_capacity(shape.n());
        for i in shape.rows_top_down() {
            let line =
                lines.next().ok_or_else(|| Error::Parse(format!("missing line for row i={i}")))?;
            let mut row = Vec::new();
            for tok in line.split_whitespace() {
                let v: u32 = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad entry {tok:?} in row i={i}")))?;
                if v == 0 {
                    return Err(Error::Parse(format!("zero entry in row i={i}")));
                }
                row.push(v);
            }
            rows.push(row);
        }
        match lines.next() {
            Some("") => {}
            Some(extra) => return Err(Error::Parse(format!("unexpected trailing line {extra:?}"))),
            None => return Err(Error::Parse("missing trailing newline".into())),
        }
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("unexpected trailing line {extra:?}")));
        }
        Pattern::new(shape, rows)
    }

    /// JSON object form `{"kind", "n", "k"?, "l"?, "rows"}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.shape.kind().token(),
            "n": self.shape.n(),
            "k": self.shape.k(),
            "l": self.shape.l(),
            "rows": self.rows,
        })
        .as_object()
        .map(|obj| {
            let mut obj = obj.clone();
            if self.shape.k().is_none() {
                obj.remove("k");
            }
            if self.shape.l().is_none() {
                obj.remove("l");
            }
            serde_json::Value::Object(obj)
        })
        .unwrap()
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }

    pub fn from_json_str(text: &str) -> Result<Pattern> {
        #[derive(Deserialize)]
        struct PatternRepr {
            kind: String,
            n: usize,
            #[serde(default)]
            k: Option<usize>,
            #[serde(default)]
            l: Option<usize>,
            rows: Vec<Vec<u32>>,
        }
        let repr: PatternRepr =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad JSON: {e}")))?;
        let shape = ShapeRepr { kind: repr.kind, n: repr.n, k: repr.k, l: repr.l }.into_shape()?;
        Pattern::new(shape, repr.rows)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(rows: Vec<Vec<u32>>) -> Pattern {
        let n = rows.len();
        Pattern::new(Shape::triangle(n).unwrap(), rows).unwrap()
    }

    #[test]
    fn shape_parameters_are_validated() {
        assert!(Shape::triangle(0).is_err());
        assert!(Shape::left_trapezoid(5, 0).is_err());
        assert!(Shape::left_trapezoid(5, 6).is_err());
        assert!(Shape::right_trapezoid(4, 5).is_err());
        assert!(Shape::rectangle(5, 3, 4).is_err());
        assert!(Shape::rectangle(5, 3, 3).is_ok());
    }

    #[test]
    fn rectangle_rows_can_be_empty() {
        let s = Shape::rectangle(5, 2, 2).unwrap();
        assert_eq!(s.row_width(5), 0);
        assert_eq!(s.row_width(4), 0);
        assert_eq!(s.row_width(3), 1);
        assert_eq!(s.row_cols(3), 2..=2);
        assert_eq!(s.row_width(2), 2);
        assert_eq!(s.row_width(1), 1);
        assert_eq!(s.cell_count(), 4);
    }

    #[test]
    fn right_trapezoid_rows() {
        let s = Shape::right_trapezoid(5, 2).unwrap();
        assert_eq!(s.row_cols(5), 4..=5);
        assert_eq!(s.row_cols(2), 1..=2);
        assert_eq!(s.row_cols(1), 1..=1);
    }

    #[test]
    fn single_cell_triangle_has_no_violations() {
        let p = tri(vec![vec![1]]);
        assert!(p.validate_gt().is_empty());
    }

    #[test]
    fn wrong_row_count_is_malformed() {
        let err = Pattern::new(Shape::triangle(1).unwrap(), vec![vec![1], vec![1]]);
        assert!(matches!(err, Err(Error::Malformed(_))));
    }

    #[test]
    fn zero_entries_rejected() {
        let err = Pattern::new(Shape::triangle(1).unwrap(), vec![vec![0]]);
        assert!(matches!(err, Err(Error::Malformed(_))));
    }

    #[test]
    fn gt_violation_reported_at_lower_cell() {
        // Bottom entry 3 exceeds its upper-right neighbour 2.
        let p = tri(vec![vec![1, 2], vec![3]]);
        assert_eq!(p.validate_gt(), vec![Cell::new(1, 1)]);
        assert!(!p.is_gt_valid());
    }

    #[test]
    fn gt_checks_skip_absent_neighbours() {
        // Right trapezoid (5,2): only pairs with both cells present count.
        let s = Shape::right_trapezoid(5, 2).unwrap();
        let rows = vec![vec![4, 5], vec![4, 5], vec![3, 4], vec![1, 3], vec![2]];
        let p = Pattern::new(s, rows).unwrap();
        assert!(p.validate_gt().is_empty());
    }

    #[test]
    fn leq_and_lattice_ops() {
        let a = tri(vec![vec![1, 2], vec![1]]);
        let b = tri(vec![vec![1, 2], vec![2]]);
        assert!(a.leq(&b).unwrap());
        assert!(!b.leq(&a).unwrap());
        let j = a.join(&b).unwrap();
        let m = a.meet(&b).unwrap();
        assert_eq!(j, b);
        assert_eq!(m, a);
        assert!(j.is_gt_valid() && m.is_gt_valid());
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a = tri(vec![vec![1]]);
        let b = tri(vec![vec![1, 2], vec![1]]);
        assert!(matches!(a.leq(&b), Err(Error::ShapeMismatch(_, _))));
        assert!(matches!(a.join(&b), Err(Error::ShapeMismatch(_, _))));
    }

    #[test]
    fn join_of_gt_patterns_is_gt_valid() {
        let a = tri(vec![vec![1, 2, 4], vec![2, 3], vec![3]]);
        let b = tri(vec![vec![1, 3, 4], vec![1, 4], vec![2]]);
        assert!(a.is_gt_valid() && b.is_gt_valid());
        assert!(a.join(&b).unwrap().is_gt_valid());
        assert!(a.meet(&b).unwrap().is_gt_valid());
    }

    #[test]
    fn serialize_left_trapezoid() {
        let s = Shape::left_trapezoid(5, 2).unwrap();
        let p =
            Pattern::new(s, vec![vec![1, 2], vec![1, 3], vec![2, 3], vec![2, 4], vec![4]]).unwrap();
        assert_eq!(p.serialize(), "left 5 2\n1 2\n1 3\n2 3\n2 4\n4\n");
        assert_eq!(Pattern::parse(&p.serialize()).unwrap(), p);
    }

    #[test]
    fn serialize_rectangle_with_empty_rows() {
        let s = Shape::rectangle(5, 2, 2).unwrap();
        let p = Pattern::new(s, vec![vec![], vec![], vec![4], vec![2, 4], vec![3]]).unwrap();
        assert_eq!(p.serialize(), "rect 5 2 2\n\n\n4\n2 4\n3\n");
        assert_eq!(Pattern::parse(&p.serialize()).unwrap(), p);
    }

    #[test]
    fn parse_rejects_bad_inputs() {
        assert!(Pattern::parse("triangle 1\n1").is_err()); // no trailing newline
        assert!(Pattern::parse("triangle 1\n1\n1\n").is_err()); // extra row
        assert!(Pattern::parse("triangle 2\n1 2\n").is_err()); // missing row
        assert!(Pattern::parse("triangle 1\n0\n").is_err()); // zero entry
        assert!(Pattern::parse("triangle 1\n-3\n").is_err()); // negative entry
        assert!(Pattern::parse("pyramid 1\n1\n").is_err()); // unknown kind
        assert!(Pattern::parse("left 5\n").is_err()); // missing k
        assert!(Pattern::parse("triangle 2 9\n1 2\n1\n").is_err()); // extra param
    }

    #[test]
    fn json_round_trip() {
        let s = Shape::rectangle(5, 2, 2).unwrap();
        let p = Pattern::new(s, vec![vec![], vec![], vec![4], vec![2, 4], vec![3]]).unwrap();
        let js = p.to_json_string();
        assert_eq!(Pattern::from_json_str(&js).unwrap(), p);
        let v: serde_json::Value = serde_json::from_str(&js).unwrap();
        assert_eq!(v["kind"], "rect");
        assert_eq!(v["n"], 5);
        assert_eq!(v["k"], 2);
        assert_eq!(v["l"], 2);

        let t = tri(vec![vec![1]]);
        let tv: serde_json::Value = serde_json::from_str(&t.to_json_string()).unwrap();
        assert!(tv.get("k").is_none() && tv.get("l").is_none());
    }

    #[test]
    fn extract_requires_contained_cells() {
        let p = tri(vec![vec![1, 2, 3], vec![1, 2], vec![1]]);
        let left = p.extract(Shape::left_trapezoid(3, 2).unwrap()).unwrap();
        assert_eq!(left.rows(), &[vec![1, 2], vec![1, 2], vec![1]]);
        // A right trapezoid is not contained in a left trapezoid of width 1.
        let narrow = p.extract(Shape::left_trapezoid(3, 1).unwrap()).unwrap();
        assert!(narrow.extract(Shape::right_trapezoid(3, 2).unwrap()).is_err());
    }

    #[test]
    fn entries_beyond_n_are_supported() {
        let p = tri(vec![vec![1, 12], vec![7]]);
        assert!(p.is_gt_valid());
        assert_eq!(Pattern::parse(&p.serialize()).unwrap(), p);
    }
}
