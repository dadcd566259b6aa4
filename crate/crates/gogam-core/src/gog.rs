//! Gog triangles and their trapezoids/rectangles: membership predicates,
//! extraction, the mirror involution, canonical completions, and the
//! correspondence with alternating sign matrices.

use std::collections::BTreeSet;
use std::fmt;

use crate::pattern::{Pattern, Shape, ShapeKind};
use crate::{Error, Result};

fn expect_kind(p: &Pattern, kind: ShapeKind, what: &str) {
    assert!(
        p.shape().kind() == kind,
        "{what} expects a {} pattern, got {}",
        kind.token(),
        p.shape()
    );
}

/// Rows strictly increase left to right on every row of the shape.
fn rows_strict(p: &Pattern) -> bool {
    p.rows().iter().all(|row| row.windows(2).all(|w| w[0] < w[1]))
}

/// GT-valid, strictly increasing rows, and top row `1, 2, ..., n`.
pub fn is_gog_triangle(p: &Pattern) -> bool {
    expect_kind(p, ShapeKind::Triangle, "is_gog_triangle");
    let n = p.n();
    (1..=n).all(|j| p.get(n, j) == j as u32) && rows_strict(p) && p.is_gt_valid()
}

/// Direct characterisation: GT-valid, strictly increasing rows, and the
/// diagonal bounds `X_{i,j} <= n - i + j`.
pub fn is_left_gog_trapezoid(p: &Pattern) -> bool {
    expect_kind(p, ShapeKind::LeftTrapezoid, "is_left_gog_trapezoid");
    let n = p.n();
    if !rows_strict(p) || !p.is_gt_valid() {
        return false;
    }
    for i in p.shape().rows_top_down() {
        for j in p.shape().row_cols(i) {
            if p.get(i, j) > (n - i + j) as u32 {
                return false;
            }
        }
    }
    true
}

/// Membership via the canonical completion: true iff filling `X_{i,j} = j`
/// on the missing upper-left cells yields a Gog triangle.
pub fn is_right_gog_trapezoid(p: &Pattern) -> bool {
    expect_kind(p, ShapeKind::RightTrapezoid, "is_right_gog_trapezoid");
    is_gog_triangle(&complete_right_gog(p))
}

/// Membership via the canonical completion chain rectangle -> left
/// trapezoid (filling `X_{i,j} = j` above the rectangle) -> triangle.
pub fn is_gog_rectangle(p: &Pattern) -> bool {
    expect_kind(p, ShapeKind::Rectangle, "is_gog_rectangle");
    is_left_gog_trapezoid(&complete_rectangle_left_gog(p))
}

/// Leftmost `k` columns of a triangle.
pub fn extract_left(p: &Pattern, k: usize) -> Result<Pattern> {
    expect_kind(p, ShapeKind::Triangle, "extract_left");
    p.extract(Shape::left_trapezoid(p.n(), k)?)
}

/// Rightmost `l` NW-SE diagonals of a triangle.
pub fn extract_right(p: &Pattern, l: usize) -> Result<Pattern> {
    expect_kind(p, ShapeKind::Triangle, "extract_right");
    p.extract(Shape::right_trapezoid(p.n(), l)?)
}

/// Intersection of the two trapezoids above.
pub fn extract_rectangle(p: &Pattern, k: usize, l: usize) -> Result<Pattern> {
    expect_kind(p, ShapeKind::Triangle, "extract_rectangle");
    p.extract(Shape::rectangle(p.n(), k, l)?)
}

/// The mirror involution `X~_{i,j} = n + 1 - X_{i,i+1-j}` on Gog triangles;
/// it exchanges left and right trapezoid extractions.
pub fn mirror(p: &Pattern) -> Result<Pattern> {
    expect_kind(p, ShapeKind::Triangle, "mirror");
    if !is_gog_triangle(p) {
        return Err(Error::InvalidInput("input fails is_gog_triangle".into()));
    }
    let n = p.n();
    let rows = (1..=n)
        .rev()
        .map(|i| (1..=i).map(|j| (n as u32 + 1) - p.get(i, i + 1 - j)).collect())
        .collect();
    Pattern::new(p.shape(), rows)
}

/// The mirror restricted to a left trapezoid: the right trapezoid with
/// entries `n + 1 - X_{i,i+1-j}`. Pure reindexing; no validity requirement.
pub fn mirror_left_to_right(p: &Pattern) -> Pattern {
    expect_kind(p, ShapeKind::LeftTrapezoid, "mirror_left_to_right");
    let n = p.n();
    let k = p.shape().k().unwrap();
    let shape = Shape::right_trapezoid(n, k).unwrap();
    let rows = shape
        .rows_top_down()
        .map(|i| shape.row_cols(i).map(|j| (n as u32 + 1) - p.get(i, i + 1 - j)).collect())
        .collect();
    Pattern::new(shape, rows).unwrap()
}

/// Inverse of [`mirror_left_to_right`].
pub fn mirror_right_to_left(p: &Pattern) -> Pattern {
    expect_kind(p, ShapeKind::RightTrapezoid, "mirror_right_to_left");
    let n = p.n();
    let l = p.shape().l().unwrap();
    let shape = Shape::left_trapezoid(n, l).unwrap();
    let rows = shape
        .rows_top_down()
        .map(|i| shape.row_cols(i).map(|j| (n as u32 + 1) - p.get(i, i + 1 - j)).collect())
        .collect();
    Pattern::new(shape, rows).unwrap()
}

/// Completion formula for left Gog trapezoids, applied without checking
/// membership first: added cells (`j > k`) receive
/// `max(X_{i,k} + j - k, X_{i-1,k} + j - k - 1, ..., X_{i-j+k,k})`.
pub fn complete_left_gog_unchecked(p: &Pattern) -> Pattern {
    expect_kind(p, ShapeKind::LeftTrapezoid, "complete_left_gog_unchecked");
    let n = p.n();
    let k = p.shape().k().unwrap();
    let rows = (1..=n)
        .rev()
        .map(|i| {
            (1..=i)
                .map(|j| {
                    if j <= k {
                        p.get(i, j)
                    } else {
                        (0..=(j - k)).map(|d| p.get(i - d, k) + (j - k - d) as u32).max().unwrap()
                    }
                })
                .collect()
        })
        .collect();
    Pattern::new(Shape::triangle(n).unwrap(), rows).unwrap()
}

/// The minimal Gog triangle extending a left Gog trapezoid.
pub fn complete_left_gog(p: &Pattern) -> Result<Pattern> {
    if !is_left_gog_trapezoid(p) {
        return Err(Error::InvalidInput("input fails is_left_gog_trapezoid".into()));
    }
    let out = complete_left_gog_unchecked(p);
    debug_assert!(is_gog_triangle(&out));
    Ok(out)
}

/// The unique filler for right Gog trapezoids: missing cells receive
/// `X_{i,j} = j`. Validity is checked downstream, not here.
pub fn complete_right_gog(p: &Pattern) -> Pattern {
    expect_kind(p, ShapeKind::RightTrapezoid, "complete_right_gog");
    let n = p.n();
    let rows = (1..=n)
        .rev()
        .map(|i| (1..=i).map(|j| p.try_get(i, j).unwrap_or(j as u32)).collect())
        .collect();
    Pattern::new(Shape::triangle(n).unwrap(), rows).unwrap()
}

/// Rectangle -> left trapezoid step of the canonical Gog completion chain:
/// missing cells above the rectangle receive `X_{i,j} = j`.
pub fn complete_rectangle_left_gog(p: &Pattern) -> Pattern {
    expect_kind(p, ShapeKind::Rectangle, "complete_rectangle_left_gog");
    let n = p.n();
    let k = p.shape().k().unwrap();
    let shape = Shape::left_trapezoid(n, k).unwrap();
    let rows = shape
        .rows_top_down()
        .map(|i| shape.row_cols(i).map(|j| p.try_get(i, j).unwrap_or(j as u32)).collect())
        .collect();
    Pattern::new(shape, rows).unwrap()
}

/// An alternating sign matrix: rows and columns sum to 1 and partial sums
/// from either end stay in `{0, 1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AsmMatrix {
    n: usize,
    rows: Vec<Vec<i8>>,
}

impl AsmMatrix {
    /// Validates the alternating sign conditions.
    pub fn new(rows: Vec<Vec<i8>>) -> Result<AsmMatrix> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Malformed("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed("matrix is not square".into()));
        }
        if rows.iter().flatten().any(|&v| !(-1..=1).contains(&v)) {
            return Err(Error::Malformed("entries must be in {-1, 0, 1}".into()));
        }
        for (r, row) in rows.iter().enumerate() {
            let mut sum = 0i32;
            for &v in row {
                sum += v as i32;
                if !(0..=1).contains(&sum) {
                    return Err(Error::Malformed(format!(
                        "row {} partial sums leave {{0,1}}",
                        r + 1
                    )));
                }
            }
            if sum != 1 {
                return Err(Error::Malformed(format!("row {} does not sum to 1", r + 1)));
            }
        }
        for c in 0..n {
            let mut sum = 0i32;
            for row in &rows {
                sum += row[c] as i32;
                if !(0..=1).contains(&sum) {
                    return Err(Error::Malformed(format!(
                        "column {} partial sums leave {{0,1}}",
                        c + 1
                    )));
                }
            }
            if sum != 1 {
                return Err(Error::Malformed(format!("column {} does not sum to 1", c + 1)));
            }
        }
        Ok(AsmMatrix { n, rows })
    }

    /// Permutation matrix from 1-based column positions, one per row.
    pub fn from_permutation(perm: &[usize]) -> Result<AsmMatrix> {
        let n = perm.len();
        let mut rows = vec![vec![0i8; n]; n];
        for (r, &c) in perm.iter().enumerate() {
            if c == 0 || c > n {
                return Err(Error::Malformed(format!("permutation value {c} out of range")));
            }
            rows[r][c - 1] = 1;
        }
        AsmMatrix::new(rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<i8>] {
        &self.rows
    }

    /// Text format: `asm <n>` header then the matrix rows, top row first.
    pub fn serialize(&self) -> String {
        let mut out = format!("asm {}\n", self.n);
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<AsmMatrix> {
        if !text.ends_with('\n') {
            return Err(Error::Parse("missing trailing newline".into()));
        }
        let mut lines = text.split('\n');
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 2 || toks[0] != "asm" {
            return Err(Error::Parse(format!("bad header {header:?}")));
        }
        let n: usize =
            toks[1].parse().map_err(|_| Error::Parse(format!("bad matrix size {:?}", toks[1])))?;
        let mut rows = Vec::with_capacity(n);
        for r in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing matrix row {}", r + 1)))?;
            let row: Vec<i8> = line
                .split_whitespace()
                .map(|t| t.parse::<i8>().map_err(|_| Error::Parse(format!("bad entry {t:?}"))))
                .collect::<Result<_>>()?;
            rows.push(row);
        }
        match lines.next() {
            Some("") => {}
            _ => return Err(Error::Parse("trailing content after matrix".into())),
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing content after matrix".into()));
        }
        AsmMatrix::new(rows)
    }
}

impl fmt::Display for AsmMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// Triangle row `i` lists the columns whose partial sums over the first `i`
/// matrix rows (top first) equal 1.
pub fn gog_from_asm(a: &AsmMatrix) -> Pattern {
    let n = a.n();
    let mut col_sums = vec![0i32; n];
    let mut rows_bottom_up: Vec<Vec<u32>> = Vec::with_capacity(n);
    for i in 1..=n {
        for c in 0..n {
            col_sums[c] += a.rows()[i - 1][c] as i32;
        }
        let row: Vec<u32> = (0..n).filter(|&c| col_sums[c] == 1).map(|c| c as u32 + 1).collect();
        debug_assert_eq!(row.len(), i);
        rows_bottom_up.push(row);
    }
    rows_bottom_up.reverse();
    let p = Pattern::new(Shape::triangle(n).unwrap(), rows_bottom_up).unwrap();
    debug_assert!(is_gog_triangle(&p));
    p
}

/// Inverse of [`gog_from_asm`]: matrix row `r` has `+1` on `S_r \ S_{r-1}`
/// and `-1` on `S_{r-1} \ S_r`, where `S_r` is triangle row `r` as a set.
pub fn asm_from_gog(p: &Pattern) -> Result<AsmMatrix> {
    expect_kind(p, ShapeKind::Triangle, "asm_from_gog");
    if !is_gog_triangle(p) {
        return Err(Error::InvalidInput("input fails is_gog_triangle".into()));
    }
    let n = p.n();
    let mut prev: BTreeSet<u32> = BTreeSet::new();
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        let cur: BTreeSet<u32> = p.row(i).iter().copied().collect();
        let mut row = vec![0i8; n];
        for &c in cur.difference(&prev) {
            row[c as usize - 1] = 1;
        }
        for &c in prev.difference(&cur) {
            row[c as usize - 1] = -1;
        }
        rows.push(row);
        prev = cur;
    }
    AsmMatrix::new(rows)
}
